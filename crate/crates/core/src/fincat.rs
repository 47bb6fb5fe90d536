//! Finite categories with explicit composition tables.
//!
//! Categories are validated once and immutable afterwards. All searches
//! (isomorphisms, retracts, functors, lifts) are exhaustive and enumerate in
//! lexicographic order of string ids, so reported witnesses are deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::limits::Budget;

pub type ObjId = String;
pub type MorId = String;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("missing composite for g=`{g}` after f=`{f}`")]
    MissingComposite { g: MorId, f: MorId },
    #[error("composite `{gf}` of g=`{g}`, f=`{f}` has wrong endpoints")]
    BadComposite { g: MorId, f: MorId, gf: MorId },
    #[error("composition table entry (`{g}`, `{f}`) is not composable")]
    NotComposable { g: MorId, f: MorId },
    #[error("associativity fails on h=`{h}`, g=`{g}`, f=`{f}`")]
    NonAssociative { h: MorId, g: MorId, f: MorId },
    #[error("bad identity for `{obj}`: {reason}")]
    BadIdentity { obj: ObjId, reason: String },
    #[error("unknown standard category `{0}`")]
    UnknownName(String),
    #[error("morphism `{0}` is not idempotent")]
    NotIdempotent(MorId),
    #[error("functor does not preserve {what} at `{at}`")]
    NotAFunctor { what: String, at: String },
    #[error("enumeration exceeded limit of {limit}")]
    LimitExceeded { limit: u64 },
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
}

/// A finite category: object and morphism ids, identity assignment and a
/// total composition table on composable pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<ObjId>,
    /// morphism id -> (dom, cod)
    morphisms: BTreeMap<MorId, (ObjId, ObjId)>,
    identity: BTreeMap<ObjId, MorId>,
    /// (g, f) -> g∘f, keyed on cod(f) = dom(g)
    compose: BTreeMap<(MorId, MorId), MorId>,
}

impl FinCategory {
    /// Validates the raw data and returns the category, or the first violated
    /// axiom in a fixed check order: ids, endpoints, identities, totality of
    /// composition, identity laws, associativity.
    pub fn new(
        objects: Vec<ObjId>,
        morphisms: Vec<(MorId, ObjId, ObjId)>,
        identity: BTreeMap<ObjId, MorId>,
        compose: BTreeMap<(MorId, MorId), MorId>,
    ) -> Result<Self, CatError> {
        let mut objs = BTreeSet::new();
        for o in &objects {
            if !objs.insert(o.clone()) {
                return Err(CatError::DuplicateId(o.clone()));
            }
        }
        let mut mors = BTreeMap::new();
        for (id, dom, cod) in &morphisms {
            if !objs.contains(dom) {
                return Err(CatError::UnknownObject(dom.clone()));
            }
            if !objs.contains(cod) {
                return Err(CatError::UnknownObject(cod.clone()));
            }
            if mors.insert(id.clone(), (dom.clone(), cod.clone())).is_some() {
                return Err(CatError::DuplicateId(id.clone()));
            }
        }
        let cat = FinCategory {
            objects: objs.into_iter().collect(),
            morphisms: mors,
            identity,
            compose,
        };
        cat.check()?;
        Ok(cat)
    }

    fn check(&self) -> Result<(), CatError> {
        for x in &self.objects {
            let id = self
                .identity
                .get(x)
                .ok_or_else(|| CatError::BadIdentity {
                    obj: x.clone(),
                    reason: "no identity assigned".into(),
                })?;
            let (d, c) = self
                .morphisms
                .get(id)
                .ok_or_else(|| CatError::UnknownMorphism(id.clone()))?;
            if d != x || c != x {
                return Err(CatError::BadIdentity {
                    obj: x.clone(),
                    reason: format!("identity `{id}` is not an endomorphism of `{x}`"),
                });
            }
        }
        // Composition total on composable pairs, endpoints correct, nothing spurious.
        for (g, (gd, gc)) in &self.morphisms {
            for (f, (fd, fc)) in &self.morphisms {
                let entry = self.compose.get(&(g.clone(), f.clone()));
                if fc == gd {
                    let gf = entry.ok_or_else(|| CatError::MissingComposite {
                        g: g.clone(),
                        f: f.clone(),
                    })?;
                    let (cd, cc) = self
                        .morphisms
                        .get(gf)
                        .ok_or_else(|| CatError::UnknownMorphism(gf.clone()))?;
                    if cd != fd || cc != gc {
                        return Err(CatError::BadComposite {
                            g: g.clone(),
                            f: f.clone(),
                            gf: gf.clone(),
                        });
                    }
                } else if entry.is_some() {
                    return Err(CatError::NotComposable {
                        g: g.clone(),
                        f: f.clone(),
                    });
                }
            }
        }
        // Identity laws.
        for (f, (fd, fc)) in &self.morphisms {
            let idd = &self.identity[fd];
            let idc = &self.identity[fc];
            if self.compose[&(f.clone(), idd.clone())] != *f {
                return Err(CatError::BadIdentity {
                    obj: fd.clone(),
                    reason: format!("`{f}` ∘ id ≠ `{f}`"),
                });
            }
            if self.compose[&(idc.clone(), f.clone())] != *f {
                return Err(CatError::BadIdentity {
                    obj: fc.clone(),
                    reason: format!("id ∘ `{f}` ≠ `{f}`"),
                });
            }
        }
        // Associativity on every composable triple.
        for (h, (hd, _)) in &self.morphisms {
            for (g, (gd, gc)) in &self.morphisms {
                if gc != hd {
                    continue;
                }
                for (f, (_, fc)) in &self.morphisms {
                    if fc != gd {
                        continue;
                    }
                    let hg = &self.compose[&(h.clone(), g.clone())];
                    let gf = &self.compose[&(g.clone(), f.clone())];
                    let left = &self.compose[&(hg.clone(), f.clone())];
                    let right = &self.compose[&(h.clone(), gf.clone())];
                    if left != right {
                        return Err(CatError::NonAssociative {
                            h: h.clone(),
                            g: g.clone(),
                            f: f.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> &[ObjId] {
        &self.objects
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = &MorId> {
        self.morphisms.keys()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn has_object(&self, x: &str) -> bool {
        self.objects.iter().any(|o| o == x)
    }

    pub fn dom(&self, f: &str) -> &ObjId {
        &self.morphisms[f].0
    }

    pub fn cod(&self, f: &str) -> &ObjId {
        &self.morphisms[f].1
    }

    pub fn endpoints(&self, f: &str) -> Option<&(ObjId, ObjId)> {
        self.morphisms.get(f)
    }

    pub fn id_of(&self, x: &str) -> &MorId {
        &self.identity[x]
    }

    /// g∘f; panics on non-composable input (the table is total by validation).
    pub fn comp(&self, g: &str, f: &str) -> &MorId {
        &self.compose[&(g.to_string(), f.to_string())]
    }

    /// Morphisms x → y in lexicographic id order.
    pub fn hom(&self, x: &str, y: &str) -> Vec<MorId> {
        self.morphisms
            .iter()
            .filter(|(_, (d, c))| d == x && c == y)
            .map(|(id, _)| id.clone())
            .collect()
    }

    pub fn is_identity(&self, f: &str) -> bool {
        let (d, _) = &self.morphisms[f];
        self.identity[d] == f
    }

    pub fn is_idempotent(&self, e: &str) -> bool {
        let (d, c) = &self.morphisms[e];
        d == c && self.comp(e, e) == e
    }

    pub fn idempotents(&self) -> Vec<MorId> {
        self.morphisms
            .keys()
            .filter(|e| self.is_idempotent(e))
            .cloned()
            .collect()
    }

    /// The formal dual: same ids, endpoints swapped, composition transposed.
    pub fn op(&self) -> FinCategory {
        FinCategory {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|(id, (d, c))| (id.clone(), (c.clone(), d.clone())))
                .collect(),
            identity: self.identity.clone(),
            compose: self
                .compose
                .iter()
                .map(|((g, f), gf)| ((f.clone(), g.clone()), gf.clone()))
                .collect(),
        }
    }

    /// Two-sided inverse search; the least inverse pair `(u, v)` with
    /// u: x → y, v: y → x, v∘u = id_x, u∘v = id_y.
    pub fn find_iso(&self, x: &str, y: &str) -> Option<(MorId, MorId)> {
        for u in self.hom(x, y) {
            for v in self.hom(y, x) {
                if self.comp(&v, &u) == self.id_of(x) && self.comp(&u, &v) == self.id_of(y) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// Least retraction pair exhibiting y as a retract of x:
    /// r: x → y, i: y → x with r∘i = id_y.
    pub fn find_retract(&self, x: &str, y: &str) -> Option<(MorId, MorId)> {
        for r in self.hom(x, y) {
            for i in self.hom(y, x) {
                if self.comp(&r, &i) == self.id_of(y) {
                    return Some((r, i));
                }
            }
        }
        None
    }
}

impl fmt::Display for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "category ({} objects, {} morphisms)",
            self.objects.len(),
            self.morphisms.len()
        )
    }
}

/// Builds the named standard category.
///
/// `Idem` is freely generated by one idempotent `e`; `Split` by a section /
/// retraction pair `r: 0 → 1`, `i: 1 → 0` with r∘i = id; `I` has a single
/// non-identity arrow, `P` two parallel arrows, `J` one isomorphism;
/// `linear(n)` is the free category on the chain 0 → 1 → ⋯ → n.
pub fn standard_category(name: &str) -> Result<FinCategory, CatError> {
    let cat = |objects: &[&str], morphisms: &[(&str, &str, &str)], compose: &[(&str, &str, &str)]| {
        let objs: Vec<ObjId> = objects.iter().map(|s| s.to_string()).collect();
        let mut mors: Vec<(MorId, ObjId, ObjId)> = Vec::new();
        let mut ids = BTreeMap::new();
        for o in objects {
            let id = format!("id{o}");
            mors.push((id.clone(), o.to_string(), o.to_string()));
            ids.insert(o.to_string(), id);
        }
        for (m, d, c) in morphisms {
            mors.push((m.to_string(), d.to_string(), c.to_string()));
        }
        let mut table = BTreeMap::new();
        // Identity composites are forced; list only the rest.
        for (g, gd, gc) in &mors {
            for (f, fd, fc) in &mors {
                if fc != gd {
                    continue;
                }
                if ids.values().any(|i| i == f) {
                    table.insert((g.clone(), f.clone()), g.clone());
                } else if ids.values().any(|i| i == g) {
                    table.insert((g.clone(), f.clone()), f.clone());
                } else {
                    let gf = compose
                        .iter()
                        .find(|(gg, ff, _)| gg == g && ff == f)
                        .map(|(_, _, r)| r.to_string());
                    if let Some(gf) = gf {
                        table.insert((g.clone(), f.clone()), gf);
                    }
                }
                let _ = (gd, gc, fd);
            }
        }
        FinCategory::new(objs, mors, ids, table)
    };
    match name {
        "Idem" => cat(&["0"], &[("e", "0", "0")], &[("e", "e", "e")]),
        "Split" => cat(
            &["0", "1"],
            &[("r", "0", "1"), ("i", "1", "0"), ("ir", "0", "0")],
            &[
                ("r", "i", "id1"),
                ("i", "r", "ir"),
                ("ir", "ir", "ir"),
                ("r", "ir", "r"),
                ("ir", "i", "i"),
            ],
        ),
        "I" => cat(&["0", "1"], &[("a", "0", "1")], &[]),
        "P" => cat(&["0", "1"], &[("a", "0", "1"), ("b", "0", "1")], &[]),
        "J" => cat(
            &["0", "1"],
            &[("u", "0", "1"), ("v", "1", "0")],
            &[("u", "v", "id1"), ("v", "u", "id0")],
        ),
        "terminal" => cat(&["0"], &[], &[]),
        _ => {
            if let Some(n) = name
                .strip_prefix("linear(")
                .and_then(|s| s.strip_suffix(')'))
                .and_then(|s| s.parse::<usize>().ok())
            {
                return linear_category(n);
            }
            Err(CatError::UnknownName(name.to_string()))
        }
    }
}

/// Free category on the chain 0 → 1 → ⋯ → n; `m{i}_{j}` is the unique arrow
/// i → j for i < j.
pub fn linear_category(n: usize) -> Result<FinCategory, CatError> {
    let objects: Vec<ObjId> = (0..=n).map(|i| i.to_string()).collect();
    let mut morphisms = Vec::new();
    let mut identity = BTreeMap::new();
    for i in 0..=n {
        let id = format!("id{i}");
        morphisms.push((id.clone(), i.to_string(), i.to_string()));
        identity.insert(i.to_string(), id);
    }
    let arrow = |i: usize, j: usize| {
        if i == j {
            format!("id{i}")
        } else {
            format!("m{i}_{j}")
        }
    };
    for i in 0..=n {
        for j in i + 1..=n {
            morphisms.push((arrow(i, j), i.to_string(), j.to_string()));
        }
    }
    let mut compose = BTreeMap::new();
    for i in 0..=n {
        for j in i..=n {
            for k in j..=n {
                compose.insert((arrow(j, k), arrow(i, j)), arrow(i, k));
            }
        }
    }
    FinCategory::new(objects, morphisms, identity, compose)
}

/// A functor between finite categories, validated to preserve endpoints,
/// identities and every composite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    pub source: FinCategory,
    pub target: FinCategory,
    pub obj_map: BTreeMap<ObjId, ObjId>,
    pub mor_map: BTreeMap<MorId, MorId>,
}

impl Functor {
    pub fn new(
        source: FinCategory,
        target: FinCategory,
        obj_map: BTreeMap<ObjId, ObjId>,
        mor_map: BTreeMap<MorId, MorId>,
    ) -> Result<Self, CatError> {
        let f = Functor {
            source,
            target,
            obj_map,
            mor_map,
        };
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<(), CatError> {
        for x in self.source.objects() {
            let fx = self
                .obj_map
                .get(x)
                .ok_or_else(|| CatError::UnknownObject(x.clone()))?;
            if !self.target.has_object(fx) {
                return Err(CatError::UnknownObject(fx.clone()));
            }
        }
        for m in self.source.morphism_ids() {
            let fm = self
                .mor_map
                .get(m)
                .ok_or_else(|| CatError::UnknownMorphism(m.clone()))?;
            let (fd, fc) = self
                .target
                .endpoints(fm)
                .ok_or_else(|| CatError::UnknownMorphism(fm.clone()))?;
            if fd != &self.obj_map[self.source.dom(m)] || fc != &self.obj_map[self.source.cod(m)] {
                return Err(CatError::NotAFunctor {
                    what: "endpoints".into(),
                    at: m.clone(),
                });
            }
        }
        for x in self.source.objects() {
            if self.mor_map[self.source.id_of(x)] != *self.target.id_of(&self.obj_map[x]) {
                return Err(CatError::NotAFunctor {
                    what: "identities".into(),
                    at: x.clone(),
                });
            }
        }
        for g in self.source.morphism_ids() {
            for f in self.source.morphism_ids() {
                if self.source.cod(f) != self.source.dom(g) {
                    continue;
                }
                let gf = self.source.comp(g, f);
                if self.target.comp(&self.mor_map[g], &self.mor_map[f]) != &self.mor_map[gf] {
                    return Err(CatError::NotAFunctor {
                        what: "composition".into(),
                        at: format!("({g}, {f})"),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn identity(cat: &FinCategory) -> Functor {
        Functor {
            source: cat.clone(),
            target: cat.clone(),
            obj_map: cat.objects().iter().map(|o| (o.clone(), o.clone())).collect(),
            mor_map: cat.morphism_ids().map(|m| (m.clone(), m.clone())).collect(),
        }
    }

    pub fn compose(g: &Functor, f: &Functor) -> Result<Functor, CatError> {
        Functor::new(
            f.source.clone(),
            g.target.clone(),
            f.obj_map
                .iter()
                .map(|(x, fx)| (x.clone(), g.obj_map[fx].clone()))
                .collect(),
            f.mor_map
                .iter()
                .map(|(m, fm)| (m.clone(), g.mor_map[fm].clone()))
                .collect(),
        )
    }

    pub fn op(&self) -> Functor {
        Functor {
            source: self.source.op(),
            target: self.target.op(),
            obj_map: self.obj_map.clone(),
            mor_map: self.mor_map.clone(),
        }
    }
}

/// The comparison functor Idem → Split sending the free idempotent to i∘r.
pub fn iota() -> Functor {
    let idem = standard_category("Idem").unwrap();
    let split = standard_category("Split").unwrap();
    Functor::new(
        idem,
        split,
        [("0".to_string(), "0".to_string())].into(),
        [
            ("id0".to_string(), "id0".to_string()),
            ("e".to_string(), "ir".to_string()),
        ]
        .into(),
    )
    .unwrap()
}

/// Splits an idempotent: the least pair (r, i) with r∘i = id and i∘r = e,
/// searching all intermediate objects in id order.
pub fn split_idempotent(cat: &FinCategory, e: &str) -> Result<Option<(MorId, MorId)>, CatError> {
    if cat.endpoints(e).is_none() {
        return Err(CatError::UnknownMorphism(e.to_string()));
    }
    if !cat.is_idempotent(e) {
        return Err(CatError::NotIdempotent(e.to_string()));
    }
    let x = cat.dom(e).clone();
    let mut best: Option<(MorId, MorId)> = None;
    for y in cat.objects() {
        for r in cat.hom(&x, y) {
            for i in cat.hom(y, &x) {
                if cat.comp(&r, &i) == cat.id_of(y) && cat.comp(&i, &r) == e {
                    let cand = (r.clone(), i.clone());
                    if best.as_ref().map_or(true, |b| cand < *b) {
                        best = Some(cand);
                    }
                }
            }
        }
    }
    Ok(best)
}

pub fn is_cauchy_complete(cat: &FinCategory) -> bool {
    cat.idempotents()
        .iter()
        .all(|e| matches!(split_idempotent(cat, e), Ok(Some(_))))
}

/// Structured view of a Karoubi envelope: the id of each object pair (x, e)
/// and of each morphism (g, dom-pair, cod-pair).
struct KaroubiData {
    envelope: FinCategory,
    /// (x, e) -> envelope object id
    object_ids: BTreeMap<(ObjId, MorId), ObjId>,
    /// (g, env dom, env cod) -> envelope morphism id
    morphism_ids: BTreeMap<(MorId, ObjId, ObjId), MorId>,
}

fn karoubi_data(cat: &FinCategory) -> KaroubiData {
    let obj_id = |x: &str, e: &str| format!("({x},{e})");
    let mor_id = |g: &str, d: &str, c: &str| format!("{g}:{d}=>{c}");

    let mut object_ids = BTreeMap::new();
    let mut idems = Vec::new();
    for e in cat.idempotents() {
        let x = cat.dom(&e).clone();
        object_ids.insert((x.clone(), e.clone()), obj_id(&x, &e));
        idems.push((x, e));
    }

    let mut morphisms = Vec::new();
    let mut morphism_ids = BTreeMap::new();
    let mut underlying = Vec::new(); // parallel to morphisms: (g, env dom, env cod)
    let mut identity = BTreeMap::new();
    for (x, e) in &idems {
        let o = &object_ids[&(x.clone(), e.clone())];
        for (x2, e2) in &idems {
            let o2 = &object_ids[&(x2.clone(), e2.clone())];
            for g in cat.hom(x, x2) {
                if cat.comp(&g, e) == &g && cat.comp(e2, &g) == &g {
                    let mid = mor_id(&g, o, o2);
                    morphisms.push((mid.clone(), o.clone(), o2.clone()));
                    morphism_ids.insert((g.clone(), o.clone(), o2.clone()), mid);
                    underlying.push((g.clone(), o.clone(), o2.clone()));
                }
            }
        }
        identity.insert(
            o.clone(),
            morphism_ids[&(e.clone(), o.clone(), o.clone())].clone(),
        );
    }

    let mut compose = BTreeMap::new();
    for (gi, (gid, gd, gc)) in morphisms.iter().enumerate() {
        for (fi, (fid, fd, fc)) in morphisms.iter().enumerate() {
            if fc != gd {
                continue;
            }
            let g = &underlying[gi].0;
            let f = &underlying[fi].0;
            let gf = cat.comp(g, f);
            compose.insert(
                (gid.clone(), fid.clone()),
                morphism_ids[&(gf.clone(), fd.clone(), gc.clone())].clone(),
            );
        }
    }

    let envelope = FinCategory::new(
        object_ids.values().cloned().collect(),
        morphisms,
        identity,
        compose,
    )
    .expect("envelope is a category");
    KaroubiData {
        envelope,
        object_ids,
        morphism_ids,
    }
}

/// Karoubi envelope: objects are pairs (x, e) of an object with an idempotent
/// on it, morphisms (x, e) → (x′, e′) are g: x → x′ with g∘e = g = e′∘g.
/// Returns the envelope and the canonical functor x ↦ (x, id_x).
pub fn karoubi_envelope(cat: &FinCategory) -> (FinCategory, Functor) {
    let data = karoubi_data(cat);
    let obj_map: BTreeMap<ObjId, ObjId> = cat
        .objects()
        .iter()
        .map(|x| {
            (
                x.clone(),
                data.object_ids[&(x.clone(), cat.id_of(x).clone())].clone(),
            )
        })
        .collect();
    let mor_map = cat
        .morphism_ids()
        .map(|g| {
            (
                g.clone(),
                data.morphism_ids[&(
                    g.clone(),
                    obj_map[cat.dom(g)].clone(),
                    obj_map[cat.cod(g)].clone(),
                )]
                    .clone(),
            )
        })
        .collect();
    let canonical = Functor::new(cat.clone(), data.envelope.clone(), obj_map, mor_map)
        .expect("canonical completion functor");
    (data.envelope, canonical)
}

/// The envelope is functorial: (x, e) ↦ (Fx, Fe), g ↦ Fg.
pub fn karoubi_functor(f: &Functor) -> Functor {
    let source = karoubi_data(&f.source);
    let target = karoubi_data(&f.target);
    let mut obj_map = BTreeMap::new();
    for ((x, e), id) in &source.object_ids {
        let image = &target.object_ids[&(f.obj_map[x].clone(), f.mor_map[e].clone())];
        obj_map.insert(id.clone(), image.clone());
    }
    let mut mor_map = BTreeMap::new();
    for ((g, d, c), id) in &source.morphism_ids {
        let image = &target.morphism_ids[&(
            f.mor_map[g].clone(),
            obj_map[d].clone(),
            obj_map[c].clone(),
        )];
        mor_map.insert(id.clone(), image.clone());
    }
    Functor::new(source.envelope, target.envelope, obj_map, mor_map).expect("envelope functor")
}

/// Per-object evidence for essential surjectivity (possibly up to retracts).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObjectWitness {
    /// (x, u, v): F(x) ≅ target object via inverse pair u, v.
    Iso(ObjId, MorId, MorId),
    /// (x, r, i): target object is a retract of F(x) via r∘i = id.
    Retract(ObjId, MorId, MorId),
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoritaReport {
    pub fully_faithful: bool,
    pub essentially_surjective: bool,
    pub essentially_surjective_up_to_retracts: bool,
    pub verdict: bool,
    pub witnesses: BTreeMap<ObjId, ObjectWitness>,
}

fn fully_faithful(f: &Functor) -> bool {
    for x in f.source.objects() {
        for y in f.source.objects() {
            let hom = f.source.hom(x, y);
            let image: BTreeSet<&MorId> = hom.iter().map(|m| &f.mor_map[m]).collect();
            if image.len() != hom.len() {
                return false;
            }
            let target_hom = f.target.hom(&f.obj_map[x], &f.obj_map[y]);
            if image.len() != target_hom.len() {
                return false;
            }
        }
    }
    true
}

/// Decides the Morita verdict directly from the definition: fully faithful and
/// essentially surjective up to retracts, with least witnesses per object.
pub fn morita_report(f: &Functor) -> MoritaReport {
    let ff = fully_faithful(f);
    let mut ess = true;
    let mut ess_retracts = true;
    let mut witnesses = BTreeMap::new();
    for d in f.target.objects() {
        let mut w = ObjectWitness::None;
        'iso: for x in f.source.objects() {
            if let Some((u, v)) = f.target.find_iso(&f.obj_map[x], d) {
                w = ObjectWitness::Iso(x.clone(), u, v);
                break 'iso;
            }
        }
        if matches!(w, ObjectWitness::None) {
            ess = false;
            'retract: for x in f.source.objects() {
                if let Some((r, i)) = f.target.find_retract(&f.obj_map[x], d) {
                    w = ObjectWitness::Retract(x.clone(), r, i);
                    break 'retract;
                }
            }
            if matches!(w, ObjectWitness::None) {
                ess_retracts = false;
            }
        }
        witnesses.insert(d.clone(), w);
    }
    MoritaReport {
        fully_faithful: ff,
        essentially_surjective: ess,
        essentially_surjective_up_to_retracts: ess_retracts,
        verdict: ff && ess_retracts,
        witnesses,
    }
}

/// Fully faithful and essentially surjective (on the nose, not up to retracts).
pub fn is_equivalence(f: &Functor) -> bool {
    if !fully_faithful(f) {
        return false;
    }
    f.target.objects().iter().all(|d| {
        f.source
            .objects()
            .iter()
            .any(|x| f.target.find_iso(&f.obj_map[x], d).is_some())
    })
}

/// Runs both Morita routes: the definitional verdict and equivalence of the
/// induced functor between Karoubi envelopes. They must agree; disagreement is
/// an implementation bug, never a valid state.
pub fn morita_cross_check(f: &Functor) -> Result<bool, CatError> {
    let definition = morita_report(f).verdict;
    let envelope = is_equivalence(&karoubi_functor(f));
    if definition != envelope {
        return Err(CatError::OracleDisagreement(format!(
            "definitional Morita verdict {definition} vs envelope equivalence {envelope}"
        )));
    }
    Ok(definition)
}

/// All functors C → D in canonical order: object assignments lexicographic in
/// the source object order, then morphism assignments. Fails with
/// `LimitExceeded` if more than `limit` functors exist or the search budget
/// runs out.
pub fn enumerate_functors(
    source: &FinCategory,
    target: &FinCategory,
    limit: u64,
) -> Result<Vec<Functor>, CatError> {
    let budget = Budget::standard();
    let mut out = Vec::new();
    let objs = source.objects().to_vec();
    let nonid: Vec<MorId> = source
        .morphism_ids()
        .filter(|m| !source.is_identity(m))
        .cloned()
        .collect();

    fn assign_mors(
        source: &FinCategory,
        target: &FinCategory,
        obj_map: &BTreeMap<ObjId, ObjId>,
        nonid: &[MorId],
        pos: usize,
        mor_map: &mut BTreeMap<MorId, MorId>,
        out: &mut Vec<Functor>,
        limit: u64,
        budget: &Budget,
    ) -> Result<(), CatError> {
        if pos == nonid.len() {
            // Full functoriality check (partial checks below already pruned).
            let cand = Functor {
                source: source.clone(),
                target: target.clone(),
                obj_map: obj_map.clone(),
                mor_map: mor_map.clone(),
            };
            if cand.check().is_ok() {
                if out.len() as u64 >= limit {
                    return Err(CatError::LimitExceeded { limit });
                }
                out.push(cand);
            }
            return Ok(());
        }
        let m = &nonid[pos];
        let (d, c) = (source.dom(m), source.cod(m));
        for fm in target.hom(&obj_map[d], &obj_map[c]) {
            if !budget.step() {
                return Err(CatError::LimitExceeded {
                    limit: budget.initial(),
                });
            }
            mor_map.insert(m.clone(), fm.clone());
            // Early pruning: check composites among assigned morphisms.
            let mut consistent = true;
            'check: for g in mor_map.keys() {
                for f in mor_map.keys() {
                    if source.cod(f) != source.dom(g) {
                        continue;
                    }
                    let gf = source.comp(g, f);
                    if let Some(fgf) = mor_map.get(gf) {
                        if target.comp(&mor_map[g], &mor_map[f]) != fgf {
                            consistent = false;
                            break 'check;
                        }
                    }
                }
            }
            if consistent {
                assign_mors(
                    source, target, obj_map, nonid, pos + 1, mor_map, out, limit, budget,
                )?;
            }
            mor_map.remove(m);
        }
        Ok(())
    }

    fn assign_objs(
        source: &FinCategory,
        target: &FinCategory,
        objs: &[ObjId],
        pos: usize,
        obj_map: &mut BTreeMap<ObjId, ObjId>,
        nonid: &[MorId],
        out: &mut Vec<Functor>,
        limit: u64,
        budget: &Budget,
    ) -> Result<(), CatError> {
        if pos == objs.len() {
            let mut mor_map: BTreeMap<MorId, MorId> = objs
                .iter()
                .map(|x| {
                    (
                        source.id_of(x).clone(),
                        target.id_of(&obj_map[x]).clone(),
                    )
                })
                .collect();
            return assign_mors(
                source, target, obj_map, nonid, 0, &mut mor_map, out, limit, budget,
            );
        }
        for t in target.objects() {
            obj_map.insert(objs[pos].clone(), t.clone());
            assign_objs(source, target, objs, pos + 1, obj_map, nonid, out, limit, budget)?;
        }
        obj_map.remove(&objs[pos]);
        Ok(())
    }

    assign_objs(
        source,
        target,
        &objs,
        0,
        &mut BTreeMap::new(),
        &nonid,
        &mut out,
        limit,
        &budget,
    )?;
    Ok(out)
}

/// Decides whether p has the right lifting property against i by exhausting
/// all commutative squares and searching diagonal fillers.
pub fn has_rlp_cat(p: &Functor, i: &Functor, limit: u64) -> Result<bool, CatError> {
    let tops = enumerate_functors(&i.source, &p.source, limit)?;
    let bottoms = enumerate_functors(&i.target, &p.target, limit)?;
    let fillers = enumerate_functors(&i.target, &p.source, limit)?;
    for u in &tops {
        for v in &bottoms {
            let pu = Functor::compose(p, u)?;
            let vi = Functor::compose(v, i)?;
            if pu.obj_map != vi.obj_map || pu.mor_map != vi.mor_map {
                continue;
            }
            let mut found = false;
            for w in &fillers {
                let wi = Functor::compose(w, i)?;
                let pw = Functor::compose(p, w)?;
                if wi.obj_map == u.obj_map
                    && wi.mor_map == u.mor_map
                    && pw.obj_map == v.obj_map
                    && pw.mor_map == v.mor_map
                {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exhaustive equivalence search; the first functor C → D that is an
/// equivalence, in canonical enumeration order.
pub fn find_equivalence(
    c: &FinCategory,
    d: &FinCategory,
    limit: u64,
) -> Result<Option<Functor>, CatError> {
    Ok(enumerate_functors(c, d, limit)?
        .into_iter()
        .find(is_equivalence))
}

/// The unique functor C → terminal.
pub fn to_terminal(cat: &FinCategory) -> Functor {
    let t = standard_category("terminal").unwrap();
    Functor::new(
        cat.clone(),
        t.clone(),
        cat.objects().iter().map(|o| (o.clone(), "0".into())).collect(),
        cat.morphism_ids().map(|m| (m.clone(), "id0".into())).collect(),
    )
    .unwrap()
}

/// The functor category Fun(A, C): objects are the given functors, morphisms
/// are all natural transformations. Returns the category, the object id of
/// each functor (`F0`, `F1`, … in the given order), and the component family
/// behind each transformation id.
pub type NatData = BTreeMap<MorId, (usize, usize, BTreeMap<ObjId, MorId>)>;

pub fn functor_category(
    a: &FinCategory,
    c: &FinCategory,
    functors: &[Functor],
) -> (FinCategory, Vec<ObjId>, NatData) {
    let obj_ids: Vec<ObjId> = (0..functors.len()).map(|k| format!("F{k}")).collect();

    // Natural transformations F ⇒ G: a component per object of A, natural in
    // every morphism of A.
    let nat_transformations = |f: &Functor, g: &Functor| -> Vec<BTreeMap<ObjId, MorId>> {
        let objs = a.objects();
        let mut out = Vec::new();
        let mut stack: Vec<BTreeMap<ObjId, MorId>> = vec![BTreeMap::new()];
        for x in objs {
            let mut next = Vec::new();
            for partial in &stack {
                for comp in c.hom(&f.obj_map[x], &g.obj_map[x]) {
                    let mut p = partial.clone();
                    p.insert(x.clone(), comp);
                    next.push(p);
                }
            }
            stack = next;
        }
        for alpha in stack {
            let natural = a.morphism_ids().all(|m| {
                let (x, y) = (a.dom(m), a.cod(m));
                c.comp(&g.mor_map[m], &alpha[x]) == c.comp(&alpha[y], &f.mor_map[m])
            });
            if natural {
                out.push(alpha);
            }
        }
        out
    };

    let mut morphisms = Vec::new();
    let mut mor_data: Vec<(usize, usize, BTreeMap<ObjId, MorId>)> = Vec::new();
    for (si, f) in functors.iter().enumerate() {
        for (ti, g) in functors.iter().enumerate() {
            for alpha in nat_transformations(f, g) {
                let mid = format!("t{}", mor_data.len());
                morphisms.push((mid, obj_ids[si].clone(), obj_ids[ti].clone()));
                mor_data.push((si, ti, alpha));
            }
        }
    }

    let find_mor = |si: usize, ti: usize, alpha: &BTreeMap<ObjId, MorId>| -> MorId {
        let k = mor_data
            .iter()
            .position(|(s, t, a)| *s == si && *t == ti && a == alpha)
            .expect("closed under composition");
        format!("t{k}")
    };

    let mut identity = BTreeMap::new();
    for (k, f) in functors.iter().enumerate() {
        let alpha: BTreeMap<ObjId, MorId> = a
            .objects()
            .iter()
            .map(|x| (x.clone(), c.id_of(&f.obj_map[x]).clone()))
            .collect();
        identity.insert(obj_ids[k].clone(), find_mor(k, k, &alpha));
    }

    let mut compose = BTreeMap::new();
    for (gk, (gs, gt, ga)) in mor_data.iter().enumerate() {
        for (fk, (fs, ft, fa)) in mor_data.iter().enumerate() {
            if ft != gs {
                continue;
            }
            let comp: BTreeMap<ObjId, MorId> = a
                .objects()
                .iter()
                .map(|x| (x.clone(), c.comp(&ga[x], &fa[x]).clone()))
                .collect();
            compose.insert(
                (format!("t{gk}"), format!("t{fk}")),
                find_mor(*fs, *gt, &comp),
            );
        }
    }

    let cat = FinCategory::new(obj_ids.clone(), morphisms, identity, compose)
        .expect("functor category");
    let nat_data: NatData = mor_data
        .into_iter()
        .enumerate()
        .map(|(k, d)| (format!("t{k}"), d))
        .collect();
    (cat, obj_ids, nat_data)
}

/// Maximal subgroupoid: same objects, only the isomorphisms.
pub fn maximal_subgroupoid(cat: &FinCategory) -> FinCategory {
    let isos: BTreeSet<MorId> = cat
        .morphism_ids()
        .filter(|m| {
            let (x, y) = (cat.dom(m), cat.cod(m));
            cat.hom(y, x)
                .iter()
                .any(|v| cat.comp(v, m) == cat.id_of(x) && cat.comp(m, v) == cat.id_of(y))
        })
        .cloned()
        .collect();
    let mut compose = BTreeMap::new();
    for g in &isos {
        for f in &isos {
            if cat.cod(f) == cat.dom(g) {
                compose.insert((g.clone(), f.clone()), cat.comp(g, f).clone());
            }
        }
    }
    FinCategory::new(
        cat.objects().to_vec(),
        isos.iter()
            .map(|m| (m.clone(), cat.dom(m).clone(), cat.cod(m).clone()))
            .collect(),
        cat.objects()
            .iter()
            .map(|x| (x.clone(), cat.id_of(x).clone()))
            .collect(),
        compose,
    )
    .expect("subgroupoid")
}

/// Locality against the idempotent-splitting comparison: builds the functor
/// categories Fun(Split, C) and Fun(Idem, C), restricts both to their maximal
/// subgroupoids, and decides whether restriction along `iota` is an
/// equivalence of groupoids. Agrees with `is_cauchy_complete` on every finite
/// category.
pub fn iota_locality_check(cat: &FinCategory, limit: u64) -> Result<bool, CatError> {
    let io = iota();
    let from_split = enumerate_functors(&io.target, cat, limit)?;
    let from_idem = enumerate_functors(&io.source, cat, limit)?;
    let (cat_split, split_ids, nat_split) = functor_category(&io.target, cat, &from_split);
    let (cat_idem, idem_ids, nat_idem) = functor_category(&io.source, cat, &from_idem);
    let gpd_split = maximal_subgroupoid(&cat_split);
    let gpd_idem = maximal_subgroupoid(&cat_idem);

    // Restriction on objects: F ↦ F∘iota.
    let mut obj_map = BTreeMap::new();
    let mut obj_idx = BTreeMap::new();
    for (k, f) in from_split.iter().enumerate() {
        let restricted = Functor::compose(f, &io)?;
        let pos = from_idem
            .iter()
            .position(|g| g.obj_map == restricted.obj_map && g.mor_map == restricted.mor_map)
            .expect("restriction lands in the enumeration");
        obj_map.insert(split_ids[k].clone(), idem_ids[pos].clone());
        obj_idx.insert(k, pos);
    }

    // Restriction on natural transformations: a transformation restricts to
    // its components at the objects hit by iota (the single object `0`).
    let mut mor_map = BTreeMap::new();
    for m in gpd_split.morphism_ids() {
        let (si, ti, alpha) = &nat_split[m];
        let restricted_alpha: BTreeMap<ObjId, MorId> =
            [("0".to_string(), alpha["0"].clone())].into();
        let (rs, rt) = (obj_idx[si], obj_idx[ti]);
        let target_m = nat_idem
            .iter()
            .find(|(_, (s, t, a))| *s == rs && *t == rt && *a == restricted_alpha)
            .map(|(id, _)| id.clone())
            .expect("restricted transformation exists");
        mor_map.insert(m.clone(), target_m);
    }

    let restriction = Functor::new(gpd_split, gpd_idem, obj_map, mor_map)?;
    Ok(is_equivalence(&restriction))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_object_monoid(table: &[(&str, &str, &str)]) -> Result<FinCategory, CatError> {
        let mut names: BTreeSet<String> = ["id0".to_string()].into();
        for (g, f, gf) in table {
            names.insert(g.to_string());
            names.insert(f.to_string());
            names.insert(gf.to_string());
        }
        let morphisms: Vec<(MorId, ObjId, ObjId)> = names
            .iter()
            .map(|m| (m.clone(), "0".to_string(), "0".to_string()))
            .collect();
        let mut compose = BTreeMap::new();
        for m in &names {
            compose.insert(("id0".to_string(), m.clone()), m.clone());
            compose.insert((m.clone(), "id0".to_string()), m.clone());
        }
        for (g, f, gf) in table {
            compose.insert((g.to_string(), f.to_string()), gf.to_string());
        }
        FinCategory::new(
            vec!["0".into()],
            morphisms,
            [("0".to_string(), "id0".to_string())].into(),
            compose,
        )
    }

    #[test]
    fn validates_idem_table() {
        let c = standard_category("Idem").unwrap();
        assert_eq!(c.objects().len(), 1);
        assert_eq!(c.morphism_count(), 2);
        assert_eq!(c.comp("e", "e"), "e");
    }

    #[test]
    fn missing_composite_is_reported() {
        let err = FinCategory::new(
            vec!["0".into()],
            vec![
                ("id0".into(), "0".into(), "0".into()),
                ("e".into(), "0".into(), "0".into()),
            ],
            [("0".to_string(), "id0".to_string())].into(),
            [
                (("id0".to_string(), "id0".to_string()), "id0".to_string()),
                (("id0".to_string(), "e".to_string()), "e".to_string()),
                (("e".to_string(), "id0".to_string()), "e".to_string()),
            ]
            .into(),
        )
        .unwrap_err();
        assert_eq!(
            err,
            CatError::MissingComposite {
                g: "e".into(),
                f: "e".into()
            }
        );
    }

    #[test]
    fn non_associative_table_is_reported() {
        // Hand-checked counterexample: a∘a = b, a∘b = b, b∘a = a, b∘b = b
        // gives (a∘a)∘a = a but a∘(a∘a) = b.
        let err = one_object_monoid(&[
            ("a", "a", "b"),
            ("a", "b", "b"),
            ("b", "a", "a"),
            ("b", "b", "b"),
        ])
        .unwrap_err();
        assert!(matches!(err, CatError::NonAssociative { .. }), "{err:?}");
    }

    #[test]
    fn standard_categories() {
        let split = standard_category("Split").unwrap();
        assert_eq!(split.objects().len(), 2);
        assert_eq!(split.morphism_count(), 5);
        assert_eq!(split.comp("r", "i"), "id1");
        assert_eq!(split.comp("i", "r"), "ir");

        let t = standard_category("terminal").unwrap();
        assert_eq!((t.objects().len(), t.morphism_count()), (1, 1));

        let lin = standard_category("linear(2)").unwrap();
        assert_eq!(lin.morphism_count(), 6);

        assert!(matches!(
            standard_category("nope"),
            Err(CatError::UnknownName(_))
        ));
    }

    #[test]
    fn split_idempotent_examples() {
        let split = standard_category("Split").unwrap();
        assert_eq!(
            split_idempotent(&split, "ir").unwrap(),
            Some(("r".into(), "i".into()))
        );

        let idem = standard_category("Idem").unwrap();
        assert_eq!(split_idempotent(&idem, "e").unwrap(), None);

        let t = standard_category("terminal").unwrap();
        assert_eq!(
            split_idempotent(&t, "id0").unwrap(),
            Some(("id0".into(), "id0".into()))
        );

        assert!(matches!(
            split_idempotent(&split, "r"),
            Err(CatError::NotIdempotent(_))
        ));
    }

    #[test]
    fn cauchy_completeness() {
        assert!(is_cauchy_complete(&standard_category("Split").unwrap()));
        assert!(!is_cauchy_complete(&standard_category("Idem").unwrap()));
        assert!(is_cauchy_complete(&standard_category("terminal").unwrap()));
    }

    #[test]
    fn karoubi_of_idem_is_split() {
        let idem = standard_category("Idem").unwrap();
        let (env, canonical) = karoubi_envelope(&idem);
        assert_eq!(env.objects().len(), 2);
        assert_eq!(env.morphism_count(), 5);
        let split = standard_category("Split").unwrap();
        assert!(find_equivalence(&env, &split, 1000).unwrap().is_some());
        // The canonical completion functor is a Morita equivalence but not an
        // equivalence: (0,e) is not isomorphic to (0,id0).
        assert!(morita_report(&canonical).verdict);
        assert!(!is_equivalence(&canonical));
    }

    #[test]
    fn karoubi_of_terminal_and_split() {
        let t = standard_category("terminal").unwrap();
        let (env, _) = karoubi_envelope(&t);
        assert_eq!((env.objects().len(), env.morphism_count()), (1, 1));

        let split = standard_category("Split").unwrap();
        let (env, canonical) = karoubi_envelope(&split);
        assert_eq!(env.objects().len(), 3);
        assert!(is_equivalence(&canonical));
    }

    #[test]
    fn morita_report_examples() {
        let report = morita_report(&iota());
        assert!(report.fully_faithful);
        assert!(!report.essentially_surjective);
        assert!(report.essentially_surjective_up_to_retracts);
        assert!(report.verdict);
        assert!(matches!(
            report.witnesses["1"],
            ObjectWitness::Retract(_, _, _)
        ));

        let split = standard_category("Split").unwrap();
        assert!(morita_report(&Functor::identity(&split)).verdict);

        // terminal → Split at object 0 is not fully faithful: hom(0,0) has 2
        // elements upstairs of the single morphism downstairs.
        let t = standard_category("terminal").unwrap();
        let f = Functor::new(
            t,
            split,
            [("0".to_string(), "0".to_string())].into(),
            [("id0".to_string(), "id0".to_string())].into(),
        )
        .unwrap();
        let report = morita_report(&f);
        assert!(!report.fully_faithful);
        assert!(!report.verdict);
    }

    #[test]
    fn equivalence_examples() {
        let idem = standard_category("Idem").unwrap();
        let (_, canonical) = karoubi_envelope(&idem);
        assert!(!is_equivalence(&canonical));
        assert!(is_equivalence(&karoubi_functor(&iota())));
        assert!(is_equivalence(&Functor::identity(&idem)));
    }

    #[test]
    fn cross_check_examples() {
        assert_eq!(morita_cross_check(&iota()).unwrap(), true);
        let split = standard_category("Split").unwrap();
        let t = standard_category("terminal").unwrap();
        let f = Functor::new(
            t,
            split.clone(),
            [("0".to_string(), "0".to_string())].into(),
            [("id0".to_string(), "id0".to_string())].into(),
        )
        .unwrap();
        assert_eq!(morita_cross_check(&f).unwrap(), false);
        assert_eq!(
            morita_cross_check(&Functor::identity(&split)).unwrap(),
            true
        );
    }

    #[test]
    fn functor_enumeration_counts() {
        let idem = standard_category("Idem").unwrap();
        let split = standard_category("Split").unwrap();
        // A functor out of Idem is an idempotent in the target.
        assert_eq!(enumerate_functors(&idem, &split, 100).unwrap().len(), 3);
        // A functor out of the terminal category is an object.
        let t = standard_category("terminal").unwrap();
        assert_eq!(
            enumerate_functors(&t, &split, 100).unwrap().len(),
            split.objects().len()
        );
        // Functors Split → Split: identity, constant 0, constant 1.
        assert_eq!(enumerate_functors(&split, &split, 100).unwrap().len(), 3);
        // Limit enforcement.
        assert!(matches!(
            enumerate_functors(&split, &split, 2),
            Err(CatError::LimitExceeded { .. })
        ));
    }

    #[test]
    fn rlp_examples() {
        let io = iota();
        let split = standard_category("Split").unwrap();
        let idem = standard_category("Idem").unwrap();
        assert!(has_rlp_cat(&to_terminal(&split), &io, 10_000).unwrap());
        assert!(!has_rlp_cat(&to_terminal(&idem), &io, 10_000).unwrap());
        // Lifting against an identity is trivial.
        let p = to_terminal(&idem);
        assert!(has_rlp_cat(&p, &Functor::identity(&split), 10_000).unwrap());
    }

    #[test]
    fn locality_examples() {
        assert!(iota_locality_check(&standard_category("Split").unwrap(), 10_000).unwrap());
        assert!(!iota_locality_check(&standard_category("Idem").unwrap(), 10_000).unwrap());
        assert!(iota_locality_check(&standard_category("terminal").unwrap(), 10_000).unwrap());
    }

    #[test]
    fn karoubi_is_idempotent_up_to_equivalence() {
        for name in ["Idem", "Split", "J", "P"] {
            let c = standard_category(name).unwrap();
            let (env, _) = karoubi_envelope(&c);
            let (_, canonical2) = karoubi_envelope(&env);
            assert!(is_equivalence(&canonical2), "{name}");
        }
    }

    #[test]
    fn splittings_unique_up_to_unique_iso() {
        // In J the identity of 0 splits both trivially and through the iso.
        let j = standard_category("J").unwrap();
        let mut splittings = Vec::new();
        for y in j.objects() {
            for r in j.hom("0", y) {
                for i in j.hom(y, "0") {
                    if j.comp(&r, &i) == j.id_of(y) && j.comp(&i, &r) == "id0" {
                        splittings.push((r.clone(), i.clone()));
                    }
                }
            }
        }
        assert_eq!(splittings.len(), 2);
        for (r1, i1) in &splittings {
            for (r2, i2) in &splittings {
                let u = j.comp(r2, i1);
                let v = j.comp(r1, i2);
                let y1 = j.cod(r1);
                let y2 = j.cod(r2);
                assert_eq!(j.comp(&v, &u), j.id_of(y1));
                assert_eq!(j.comp(&u, &v), j.id_of(y2));
            }
        }
    }

    #[test]
    fn morita_verdict_is_op_invariant() {
        let split = standard_category("Split").unwrap();
        let t = standard_category("terminal").unwrap();
        let inclusion = Functor::new(
            t,
            split.clone(),
            [("0".to_string(), "0".to_string())].into(),
            [("id0".to_string(), "id0".to_string())].into(),
        )
        .unwrap();
        for f in [iota(), inclusion, Functor::identity(&split)] {
            assert_eq!(morita_report(&f).verdict, morita_report(&f.op()).verdict);
        }
    }

    #[test]
    fn op_is_a_category_and_involutive() {
        for name in ["Idem", "Split", "J", "I", "P", "linear(3)"] {
            let c = standard_category(name).unwrap();
            let op = c.op();
            assert!(op.check().is_ok());
            assert_eq!(op.op(), c);
        }
    }
}
