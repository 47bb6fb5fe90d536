//! Dimension-truncated finite simplicial sets.
//!
//! Everything is truncated at a configurable dimension bound; no claim is ever
//! made above the bound. Simplices are string ids; standard cells use monotone
//! vertex tuples (`0.1.2`), nerves use composable chains of morphism ids
//! joined with `|`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::fincat::{FinCategory, Functor};
use crate::limits::Budget;

pub type SimplexId = String;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SsetError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("map ({n},{k}) is not total: missing `{id}`")]
    MissingValue { n: usize, k: usize, id: SimplexId },
    #[error("simplicial identity {identity} fails at level {n} on `{id}`")]
    IdentityViolation {
        identity: String,
        n: usize,
        id: SimplexId,
    },
    #[error("map does not commute with {what} at level {n} on `{id}`")]
    NotSimplicial {
        what: String,
        n: usize,
        id: SimplexId,
    },
    #[error("ill-formed quotient: {0}")]
    IllFormed(String),
    #[error("enumeration exceeded limit of {limit}")]
    LimitExceeded { limit: u64 },
}

/// A simplicial set truncated at dimension `dim`: levelwise-finite simplex
/// sets with face maps down to `dim` and degeneracies up to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSSet {
    dim: usize,
    levels: Vec<Vec<SimplexId>>,
    /// (n, k) with 1 ≤ n ≤ dim, 0 ≤ k ≤ n: level n → level n−1
    faces: BTreeMap<(usize, usize), BTreeMap<SimplexId, SimplexId>>,
    /// (n, k) with 0 ≤ n < dim, 0 ≤ k ≤ n: level n → level n+1
    degens: BTreeMap<(usize, usize), BTreeMap<SimplexId, SimplexId>>,
}

impl TruncSSet {
    pub fn new(
        dim: usize,
        levels: Vec<Vec<SimplexId>>,
        faces: BTreeMap<(usize, usize), BTreeMap<SimplexId, SimplexId>>,
        degens: BTreeMap<(usize, usize), BTreeMap<SimplexId, SimplexId>>,
    ) -> Result<Self, SsetError> {
        let mut levels = levels;
        levels.resize(dim + 1, Vec::new());
        for l in &mut levels {
            l.sort();
            l.dedup();
        }
        let s = TruncSSet {
            dim,
            levels,
            faces,
            degens,
        };
        s.check()?;
        Ok(s)
    }

    fn map_at<'a>(
        maps: &'a BTreeMap<(usize, usize), BTreeMap<SimplexId, SimplexId>>,
        n: usize,
        k: usize,
        id: &str,
    ) -> Result<&'a SimplexId, SsetError> {
        maps.get(&(n, k))
            .and_then(|m| m.get(id))
            .ok_or_else(|| SsetError::MissingValue {
                n,
                k,
                id: id.to_string(),
            })
    }

    fn check(&self) -> Result<(), SsetError> {
        // Totality and codomain membership.
        for n in 1..=self.dim {
            let level_set: BTreeSet<&SimplexId> = self.levels[n - 1].iter().collect();
            for k in 0..=n {
                for id in &self.levels[n] {
                    let v = Self::map_at(&self.faces, n, k, id)?;
                    if !level_set.contains(v) {
                        return Err(SsetError::IllFormed(format!(
                            "face ({n},{k}) of `{id}` is `{v}`, not a level-{} simplex",
                            n - 1
                        )));
                    }
                }
            }
        }
        for n in 0..self.dim {
            let level_set: BTreeSet<&SimplexId> = self.levels[n + 1].iter().collect();
            for k in 0..=n {
                for id in &self.levels[n] {
                    let v = Self::map_at(&self.degens, n, k, id)?;
                    if !level_set.contains(v) {
                        return Err(SsetError::IllFormed(format!(
                            "degeneracy ({n},{k}) of `{id}` is `{v}`, not a level-{} simplex",
                            n + 1
                        )));
                    }
                }
            }
        }
        // d_i d_j = d_{j−1} d_i for i < j
        for n in 2..=self.dim {
            for j in 1..=n {
                for i in 0..j {
                    for id in &self.levels[n] {
                        let a = self.face(n - 1, i, self.face(n, j, id));
                        let b = self.face(n - 1, j - 1, self.face(n, i, id));
                        if a != b {
                            return Err(SsetError::IdentityViolation {
                                identity: format!("d{i} d{j} = d{} d{i}", j - 1),
                                n,
                                id: id.clone(),
                            });
                        }
                    }
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i ≤ j
        for n in 0..self.dim {
            if n + 2 > self.dim {
                continue;
            }
            for j in 0..=n {
                for i in 0..=j {
                    for id in &self.levels[n] {
                        let a = self.degen(n + 1, i, self.degen(n, j, id));
                        let b = self.degen(n + 1, j + 1, self.degen(n, i, id));
                        if a != b {
                            return Err(SsetError::IdentityViolation {
                                identity: format!("s{i} s{j} = s{} s{i}", j + 1),
                                n,
                                id: id.clone(),
                            });
                        }
                    }
                }
            }
        }
        // d_i s_j relations
        for n in 0..self.dim {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    for id in &self.levels[n] {
                        let sj = self.degen(n, j, id);
                        let disj = self.face(n + 1, i, sj);
                        let expected: SimplexId = if i == j || i == j + 1 {
                            id.clone()
                        } else if i < j {
                            self.degen(n - 1, j - 1, self.face(n, i, id)).clone()
                        } else {
                            self.degen(n - 1, j, self.face(n, i - 1, id)).clone()
                        };
                        if *disj != expected {
                            return Err(SsetError::IdentityViolation {
                                identity: format!("d{i} s{j}"),
                                n,
                                id: id.clone(),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn level(&self, n: usize) -> &[SimplexId] {
        &self.levels[n]
    }

    pub fn level_counts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    pub fn face(&self, n: usize, k: usize, id: &str) -> &SimplexId {
        &self.faces[&(n, k)][id]
    }

    pub fn degen(&self, n: usize, k: usize, id: &str) -> &SimplexId {
        &self.degens[&(n, k)][id]
    }

    /// Simplices at level n not in the image of any degeneracy.
    pub fn nondegenerate(&self, n: usize) -> Vec<SimplexId> {
        if n == 0 {
            return self.levels[0].clone();
        }
        let mut degenerate = BTreeSet::new();
        for k in 0..n {
            for id in &self.levels[n - 1] {
                degenerate.insert(self.degen(n - 1, k, id).clone());
            }
        }
        self.levels[n]
            .iter()
            .filter(|id| !degenerate.contains(*id))
            .cloned()
            .collect()
    }

    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        (0..=self.dim)
            .map(|n| self.nondegenerate(n).len())
            .collect()
    }

    /// Connected components of the level-0/level-1 incidence graph.
    pub fn pi0(&self) -> Vec<BTreeSet<SimplexId>> {
        let mut uf = UnionFind::new(self.levels[0].clone());
        if self.dim >= 1 {
            for e in &self.levels[1] {
                uf.join(self.face(1, 0, e), self.face(1, 1, e));
            }
        }
        uf.classes()
    }
}

/// Plain string union-find; class representative is the least member.
pub(crate) struct UnionFind {
    parent: BTreeMap<String, String>,
}

impl UnionFind {
    pub fn new(items: Vec<String>) -> Self {
        UnionFind {
            parent: items.into_iter().map(|i| (i.clone(), i)).collect(),
        }
    }

    pub fn find(&self, x: &str) -> String {
        let p = self.parent[x].clone();
        if p == x {
            p
        } else {
            self.find(&p)
        }
    }

    pub fn join(&mut self, a: &str, b: &str) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        // Smaller string wins; keeps representatives lexicographically least.
        let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent.insert(drop, keep);
    }

    pub fn classes(&self) -> Vec<BTreeSet<String>> {
        let mut by_rep: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for x in self.parent.keys() {
            by_rep.entry(self.find(x)).or_default().insert(x.clone());
        }
        by_rep.into_values().collect()
    }
}

/// A level-preserving map of truncated simplicial sets, validated to commute
/// with all faces and degeneracies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpMap {
    pub source: TruncSSet,
    pub target: TruncSSet,
    pub levels: Vec<BTreeMap<SimplexId, SimplexId>>,
}

impl SimpMap {
    pub fn new(
        source: TruncSSet,
        target: TruncSSet,
        levels: Vec<BTreeMap<SimplexId, SimplexId>>,
    ) -> Result<Self, SsetError> {
        let m = SimpMap {
            source,
            target,
            levels,
        };
        m.check()?;
        Ok(m)
    }

    fn check(&self) -> Result<(), SsetError> {
        if self.source.dim != self.target.dim || self.levels.len() != self.source.dim + 1 {
            return Err(SsetError::BadParameters(
                "source/target truncation mismatch".into(),
            ));
        }
        for n in 0..=self.source.dim {
            for id in self.source.level(n) {
                let v = self.levels[n]
                    .get(id)
                    .ok_or_else(|| SsetError::MissingValue {
                        n,
                        k: 0,
                        id: id.clone(),
                    })?;
                if !self.target.level(n).contains(v) {
                    return Err(SsetError::IllFormed(format!(
                        "image `{v}` of `{id}` is not a level-{n} simplex"
                    )));
                }
            }
        }
        for n in 1..=self.source.dim {
            for k in 0..=n {
                for id in self.source.level(n) {
                    let a = &self.levels[n - 1][self.source.face(n, k, id)];
                    let b = self.target.face(n, k, &self.levels[n][id]);
                    if a != b {
                        return Err(SsetError::NotSimplicial {
                            what: format!("face d{k}"),
                            n,
                            id: id.clone(),
                        });
                    }
                }
            }
        }
        for n in 0..self.source.dim {
            for k in 0..=n {
                for id in self.source.level(n) {
                    let a = &self.levels[n + 1][self.source.degen(n, k, id)];
                    let b = self.target.degen(n, k, &self.levels[n][id]);
                    if a != b {
                        return Err(SsetError::NotSimplicial {
                            what: format!("degeneracy s{k}"),
                            n,
                            id: id.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(x: &TruncSSet) -> SimpMap {
        SimpMap {
            source: x.clone(),
            target: x.clone(),
            levels: (0..=x.dim)
                .map(|n| x.level(n).iter().map(|s| (s.clone(), s.clone())).collect())
                .collect(),
        }
    }

    pub fn compose(g: &SimpMap, f: &SimpMap) -> SimpMap {
        debug_assert_eq!(f.target, g.source);
        SimpMap {
            source: f.source.clone(),
            target: g.target.clone(),
            levels: (0..f.levels.len())
                .map(|n| {
                    f.levels[n]
                        .iter()
                        .map(|(a, b)| (a.clone(), g.levels[n][b].clone()))
                        .collect()
                })
                .collect(),
        }
    }

    /// Levelwise injectivity.
    pub fn is_mono(&self) -> bool {
        self.levels.iter().all(|m| {
            let images: BTreeSet<&SimplexId> = m.values().collect();
            images.len() == m.len()
        })
    }
}

fn tuple_id(t: &[usize]) -> SimplexId {
    t.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(".")
}

fn parse_tuple(id: &str) -> Vec<usize> {
    id.split('.').map(|v| v.parse().unwrap()).collect()
}

/// Monotone tuples of length m+1 over 0..=n.
fn monotone_tuples(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..=m {
        let mut next = Vec::new();
        for t in &out {
            let lo = *t.last().unwrap_or(&0);
            for v in lo..=n {
                let mut t2 = t.clone();
                t2.push(v);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

fn cells_from_tuples(dim: usize, keep: impl Fn(&[usize]) -> bool, n: usize) -> TruncSSet {
    let mut levels = Vec::new();
    for m in 0..=dim {
        levels.push(
            monotone_tuples(n, m)
                .into_iter()
                .filter(|t| keep(t))
                .map(|t| tuple_id(&t))
                .collect::<Vec<_>>(),
        );
    }
    let mut faces = BTreeMap::new();
    for m in 1..=dim {
        for k in 0..=m {
            let mut map = BTreeMap::new();
            for id in &levels[m] {
                let mut t = parse_tuple(id);
                t.remove(k);
                map.insert(id.clone(), tuple_id(&t));
            }
            faces.insert((m, k), map);
        }
    }
    let mut degens = BTreeMap::new();
    for m in 0..dim {
        for k in 0..=m {
            let mut map = BTreeMap::new();
            for id in &levels[m] {
                let mut t = parse_tuple(id);
                t.insert(k, t[k]);
                map.insert(id.clone(), tuple_id(&t));
            }
            degens.insert((m, k), map);
        }
    }
    TruncSSet::new(dim, levels, faces, degens).expect("standard cell")
}

/// The named standard cell truncated at `dim`: `simplex(n)`, `boundary(n)`
/// (simplices missing at least one vertex), or `horn(n,k)` (missing at least
/// one vertex other than k).
pub fn standard_cells(name: &str, dim: usize) -> Result<TruncSSet, SsetError> {
    let parse = |s: &str, prefix: &str| -> Option<Vec<usize>> {
        s.strip_prefix(prefix)?
            .strip_prefix('(')?
            .strip_suffix(')')?
            .split(',')
            .map(|p| p.trim().parse().ok())
            .collect()
    };
    if let Some(args) = parse(name, "simplex") {
        let [n] = args[..] else {
            return Err(SsetError::BadParameters(name.into()));
        };
        return Ok(cells_from_tuples(dim, |_| true, n));
    }
    if let Some(args) = parse(name, "boundary") {
        let [n] = args[..] else {
            return Err(SsetError::BadParameters(name.into()));
        };
        if n == 0 {
            return Err(SsetError::BadParameters(
                "boundary(0) has no simplices at level 0".into(),
            ));
        }
        let keep = move |t: &[usize]| (0..=n).any(|v| !t.contains(&v));
        return Ok(cells_from_tuples(dim, keep, n));
    }
    if let Some(args) = parse(name, "horn") {
        let [n, k] = args[..] else {
            return Err(SsetError::BadParameters(name.into()));
        };
        if n == 0 || k > n {
            return Err(SsetError::BadParameters(name.into()));
        }
        let keep = move |t: &[usize]| (0..=n).any(|v| v != k && !t.contains(&v));
        return Ok(cells_from_tuples(dim, keep, n));
    }
    Err(SsetError::BadParameters(name.into()))
}

/// Inclusion of one tuple-based cell into another (shared simplex ids).
pub fn cell_inclusion(sub: &TruncSSet, sup: &TruncSSet) -> Result<SimpMap, SsetError> {
    SimpMap::new(
        sub.clone(),
        sup.clone(),
        (0..=sub.dim())
            .map(|n| {
                sub.level(n)
                    .iter()
                    .map(|s| (s.clone(), s.clone()))
                    .collect()
            })
            .collect(),
    )
}

fn chain_id(chain: &[String]) -> SimplexId {
    chain.join("|")
}

fn parse_chain(id: &str) -> Vec<String> {
    id.split('|').map(|s| s.to_string()).collect()
}

/// Nerve of a finite category truncated at `dim`: level n is the set of
/// composable n-chains; faces compose or drop endpoints, degeneracies insert
/// identities.
pub fn nerve(cat: &FinCategory, dim: usize) -> TruncSSet {
    let mut levels: Vec<Vec<SimplexId>> = Vec::new();
    levels.push(cat.objects().to_vec());
    let mut ends: Vec<(Vec<String>, String)> = cat
        .objects()
        .iter()
        .map(|o| (vec![], o.clone()))
        .collect();
    for _n in 1..=dim {
        let mut next = Vec::new();
        let mut ids = Vec::new();
        for (chain, end) in &ends {
            for m in cat.morphism_ids() {
                if cat.dom(m) == end {
                    let mut c2 = chain.clone();
                    c2.push(m.clone());
                    ids.push(chain_id(&c2));
                    next.push((c2, cat.cod(m).clone()));
                }
            }
        }
        levels.push(ids);
        ends = next;
    }

    let object_at = |chain: &[String], i: usize| -> String {
        if i == 0 {
            cat.dom(&chain[0]).clone()
        } else {
            cat.cod(&chain[i - 1]).clone()
        }
    };

    let mut faces = BTreeMap::new();
    for n in 1..=dim {
        for k in 0..=n {
            let mut map = BTreeMap::new();
            for id in &levels[n] {
                let chain = parse_chain(id);
                let img: SimplexId = if n == 1 {
                    if k == 0 {
                        cat.cod(&chain[0]).clone()
                    } else {
                        cat.dom(&chain[0]).clone()
                    }
                } else if k == 0 {
                    chain_id(&chain[1..])
                } else if k == n {
                    chain_id(&chain[..n - 1])
                } else {
                    let mut c2: Vec<String> = chain[..k - 1].to_vec();
                    c2.push(cat.comp(&chain[k], &chain[k - 1]).clone());
                    c2.extend_from_slice(&chain[k + 1..]);
                    chain_id(&c2)
                };
                map.insert(id.clone(), img);
            }
            faces.insert((n, k), map);
        }
    }
    let mut degens = BTreeMap::new();
    for n in 0..dim {
        for k in 0..=n {
            let mut map = BTreeMap::new();
            for id in &levels[n] {
                let img = if n == 0 {
                    cat.id_of(id).clone()
                } else {
                    let chain = parse_chain(id);
                    let mut c2: Vec<String> = chain[..k].to_vec();
                    c2.push(cat.id_of(&object_at(&chain, k)).clone());
                    c2.extend_from_slice(&chain[k..]);
                    chain_id(&c2)
                };
                map.insert(id.clone(), img);
            }
            degens.insert((n, k), map);
        }
    }
    TruncSSet::new(dim, levels, faces, degens).expect("nerve is simplicial")
}

/// Nerve is functorial: the induced map N(F): N(C) → N(D).
pub fn nerve_map(f: &Functor, dim: usize) -> SimpMap {
    let src = nerve(&f.source, dim);
    let tgt = nerve(&f.target, dim);
    let mut levels = Vec::new();
    levels.push(
        src.level(0)
            .iter()
            .map(|o| (o.clone(), f.obj_map[o].clone()))
            .collect::<BTreeMap<_, _>>(),
    );
    for n in 1..=dim {
        levels.push(
            src.level(n)
                .iter()
                .map(|id| {
                    let img: Vec<String> = parse_chain(id)
                        .iter()
                        .map(|m| f.mor_map[m].clone())
                        .collect();
                    (id.clone(), chain_id(&img))
                })
                .collect(),
        );
    }
    SimpMap::new(src, tgt, levels).expect("nerve of a functor is simplicial")
}

/// Levelwise pushout of B ← A → C: the quotient of the tagged disjoint union
/// by the closure of f(a) ~ g(a). Returns the pushout with both legs.
pub fn pushout(f: &SimpMap, g: &SimpMap) -> Result<(TruncSSet, SimpMap, SimpMap), SsetError> {
    if f.source != g.source {
        return Err(SsetError::BadParameters("legs must share a source".into()));
    }
    let a = &f.source;
    let b = &f.target;
    let c = &g.target;
    let dim = a.dim();
    let tag_l = |s: &str| format!("l.{s}");
    let tag_r = |s: &str| format!("r.{s}");

    let mut ufs: Vec<UnionFind> = Vec::new();
    for n in 0..=dim {
        let mut items: Vec<String> = b.level(n).iter().map(|s| tag_l(s)).collect();
        items.extend(c.level(n).iter().map(|s| tag_r(s)));
        let mut uf = UnionFind::new(items);
        for s in a.level(n) {
            uf.join(&tag_l(&f.levels[n][s]), &tag_r(&g.levels[n][s]));
        }
        ufs.push(uf);
    }

    let levels: Vec<Vec<SimplexId>> = (0..=dim)
        .map(|n| {
            ufs[n]
                .classes()
                .into_iter()
                .map(|cl| cl.iter().next().unwrap().clone())
                .collect()
        })
        .collect();

    // Induced structure maps: apply on every member and check the class-level
    // result is constant (cannot fail for valid simplicial legs; defensive).
    let apply = |tagged: &str, on_b: &dyn Fn(&str) -> SimplexId, on_c: &dyn Fn(&str) -> SimplexId| {
        if let Some(s) = tagged.strip_prefix("l.") {
            tag_l(&on_b(s))
        } else {
            tag_r(&on_c(tagged.strip_prefix("r.").unwrap()))
        }
    };

    let induced = |n_from: usize,
                   n_to: usize,
                   what: &str,
                   on_b: &dyn Fn(&str) -> SimplexId,
                   on_c: &dyn Fn(&str) -> SimplexId|
     -> Result<BTreeMap<SimplexId, SimplexId>, SsetError> {
        let mut map = BTreeMap::new();
        for cl in ufs[n_from].classes() {
            let mut image: Option<String> = None;
            for member in &cl {
                let r = ufs[n_to].find(&apply(member, on_b, on_c));
                match &image {
                    Some(prev) if *prev != r => {
                        return Err(SsetError::IllFormed(format!(
                            "{what} not constant on the class of `{member}`"
                        )))
                    }
                    _ => image = Some(r),
                }
            }
            map.insert(cl.iter().next().unwrap().clone(), image.unwrap());
        }
        Ok(map)
    };

    let mut faces = BTreeMap::new();
    for n in 1..=dim {
        for k in 0..=n {
            faces.insert(
                (n, k),
                induced(
                    n,
                    n - 1,
                    &format!("face d{k}"),
                    &|s| b.face(n, k, s).clone(),
                    &|s| c.face(n, k, s).clone(),
                )?,
            );
        }
    }
    let mut degens = BTreeMap::new();
    for n in 0..dim {
        for k in 0..=n {
            degens.insert(
                (n, k),
                induced(
                    n,
                    n + 1,
                    &format!("degeneracy s{k}"),
                    &|s| b.degen(n, k, s).clone(),
                    &|s| c.degen(n, k, s).clone(),
                )?,
            );
        }
    }

    let po = TruncSSet::new(dim, levels, faces, degens)
        .map_err(|e| SsetError::IllFormed(format!("quotient broke simplicial identities: {e}")))?;
    let leg_b = SimpMap::new(
        b.clone(),
        po.clone(),
        (0..=dim)
            .map(|n| {
                b.level(n)
                    .iter()
                    .map(|s| (s.clone(), ufs[n].find(&tag_l(s))))
                    .collect()
            })
            .collect(),
    )?;
    let leg_c = SimpMap::new(
        c.clone(),
        po.clone(),
        (0..=dim)
            .map(|n| {
                c.level(n)
                    .iter()
                    .map(|s| (s.clone(), ufs[n].find(&tag_r(s))))
                    .collect()
            })
            .collect(),
    )?;
    Ok((po, leg_b, leg_c))
}

/// The walking retract: the pushout of Δ[0] ← Δ[1] → Δ[2] collapsing the long
/// edge of the triangle, together with the comparison map into N(Split)
/// classifying the canonical split idempotent: the collapsed vertex goes to
/// the object `1`, the surviving edges to `i` and `r`.
pub fn build_ret(dim: usize) -> Result<(TruncSSet, SimpMap), SsetError> {
    if dim < 2 {
        return Err(SsetError::BadParameters("need dimension at least 2".into()));
    }
    let d1 = standard_cells("simplex(1)", dim)?;
    let d2 = standard_cells("simplex(2)", dim)?;
    let d0 = standard_cells("simplex(0)", dim)?;
    // Long-edge inclusion Δ[1] → Δ[2]: vertices 0 ↦ 0, 1 ↦ 2.
    let vmap =
        |t: &[usize]| -> Vec<usize> { t.iter().map(|&v| if v == 0 { 0 } else { 2 }).collect() };
    let f = SimpMap::new(
        d1.clone(),
        d2.clone(),
        (0..=dim)
            .map(|n| {
                d1.level(n)
                    .iter()
                    .map(|s| (s.clone(), tuple_id(&vmap(&parse_tuple(s)))))
                    .collect()
            })
            .collect(),
    )?;
    let g = SimpMap::new(
        d1.clone(),
        d0.clone(),
        (0..=dim)
            .map(|n| {
                d1.level(n)
                    .iter()
                    .map(|s| (s.clone(), tuple_id(&vec![0; n + 1])))
                    .collect()
            })
            .collect(),
    )?;
    let (ret, leg_b, leg_c) = pushout(&f, &g)?;

    // Comparison into N(Split): the triangle maps to the 2-simplex (i, r)
    // with vertex images 1, 0, 1; composable since r∘i is the identity of 1.
    let split = crate::fincat::standard_category("Split").unwrap();
    let nsplit = nerve(&split, dim);
    let obj = |v: usize| -> &'static str {
        if v == 1 {
            "0"
        } else {
            "1"
        }
    };
    let arr = |a: usize, b: usize| -> &'static str {
        match (a, b) {
            (0, 0) | (2, 2) | (0, 2) => "id1",
            (1, 1) => "id0",
            (0, 1) => "i",
            (1, 2) => "r",
            _ => unreachable!("monotone tuple"),
        }
    };
    let triangle_image = |t: &[usize]| -> SimplexId {
        if t.len() == 1 {
            obj(t[0]).to_string()
        } else {
            let mors: Vec<String> = t.windows(2).map(|w| arr(w[0], w[1]).to_string()).collect();
            chain_id(&mors)
        }
    };
    let point_image = |n: usize| -> SimplexId {
        if n == 0 {
            "1".to_string()
        } else {
            chain_id(&vec!["id1".to_string(); n])
        }
    };

    let mut levels = Vec::new();
    for n in 0..=dim {
        let mut map: BTreeMap<SimplexId, SimplexId> = BTreeMap::new();
        let mut put = |repr: SimplexId, img: SimplexId| -> Result<(), SsetError> {
            match map.get(&repr) {
                Some(prev) if *prev != img => Err(SsetError::IllFormed(format!(
                    "comparison map not constant on class `{repr}`"
                ))),
                _ => {
                    map.insert(repr, img);
                    Ok(())
                }
            }
        };
        for s in d2.level(n) {
            put(leg_b.levels[n][s].clone(), triangle_image(&parse_tuple(s)))?;
        }
        for s in d0.level(n) {
            put(leg_c.levels[n][s].clone(), point_image(n))?;
        }
        levels.push(map);
    }
    let rho = SimpMap::new(ret.clone(), nsplit, levels)?;
    Ok((ret, rho))
}

/// All simplicial maps A → X in canonical order (levelwise lexicographic on
/// nondegenerate simplices; degenerate values are forced).
pub fn enumerate_simp_maps(
    a: &TruncSSet,
    x: &TruncSSet,
    limit: u64,
) -> Result<Vec<SimpMap>, SsetError> {
    let budget = Budget::standard();
    let dim = a.dim();
    if x.dim() != dim {
        return Err(SsetError::BadParameters("truncation mismatch".into()));
    }

    // Degeneracy witnesses: simplex -> (k, preimage) if degenerate.
    let mut witness: Vec<BTreeMap<SimplexId, (usize, SimplexId)>> = vec![BTreeMap::new()];
    for n in 1..=dim {
        let mut w = BTreeMap::new();
        for k in 0..n {
            for t in a.level(n - 1) {
                w.entry(a.degen(n - 1, k, t).clone())
                    .or_insert((k, t.clone()));
            }
        }
        witness.push(w);
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        a: &TruncSSet,
        x: &TruncSSet,
        witness: &[BTreeMap<SimplexId, (usize, SimplexId)>],
        n: usize,
        idx: usize,
        nondegen: &[SimplexId],
        partial: &mut Vec<BTreeMap<SimplexId, SimplexId>>,
        results: &mut Vec<Vec<BTreeMap<SimplexId, SimplexId>>>,
        budget: &Budget,
        limit: u64,
    ) -> Result<(), SsetError> {
        let dim = a.dim();
        if idx == nondegen.len() {
            // Force degenerate values at this level, then go one level up.
            let mut forced = Vec::new();
            for s in a.level(n) {
                if partial[n].contains_key(s) {
                    continue;
                }
                let (k, t) = &witness[n][s];
                let v = x.degen(n - 1, *k, &partial[n - 1][t]).clone();
                partial[n].insert(s.clone(), v);
                forced.push(s.clone());
            }
            if n == dim {
                if results.len() as u64 >= limit {
                    return Err(SsetError::LimitExceeded { limit });
                }
                results.push(partial.clone());
            } else {
                let next: Vec<SimplexId> = a.nondegenerate(n + 1);
                extend(
                    a, x, witness, n + 1, 0, &next, partial, results, budget, limit,
                )?;
            }
            for s in forced {
                partial[n].remove(&s);
            }
            return Ok(());
        }
        let s = &nondegen[idx];
        for cand in x.level(n) {
            if !budget.step() {
                return Err(SsetError::LimitExceeded {
                    limit: budget.initial(),
                });
            }
            let ok = (n == 0)
                || (0..=n).all(|k| partial[n - 1][a.face(n, k, s)] == *x.face(n, k, cand));
            if !ok {
                continue;
            }
            partial[n].insert(s.clone(), cand.clone());
            extend(
                a,
                x,
                witness,
                n,
                idx + 1,
                nondegen,
                partial,
                results,
                budget,
                limit,
            )?;
            partial[n].remove(s);
        }
        Ok(())
    }

    let mut results: Vec<Vec<BTreeMap<SimplexId, SimplexId>>> = Vec::new();
    let mut partial: Vec<BTreeMap<SimplexId, SimplexId>> = vec![BTreeMap::new(); dim + 1];
    let level0: Vec<SimplexId> = a.nondegenerate(0);
    extend(
        a,
        x,
        &witness,
        0,
        0,
        &level0,
        &mut partial,
        &mut results,
        &budget,
        limit,
    )?;
    results
        .into_iter()
        .map(|levels| SimpMap::new(a.clone(), x.clone(), levels))
        .collect()
}

/// Right lifting property within the truncation, by exhausting all squares
/// and searching diagonal fillers. The answer is only evidence up to the
/// truncation dimension, not a claim about the untruncated objects.
pub fn has_rlp_sset(p: &SimpMap, i: &SimpMap, limit: u64) -> Result<bool, SsetError> {
    let tops = enumerate_simp_maps(&i.source, &p.source, limit)?;
    let bottoms = enumerate_simp_maps(&i.target, &p.target, limit)?;
    let fillers = enumerate_simp_maps(&i.target, &p.source, limit)?;
    for u in &tops {
        for v in &bottoms {
            let pu = SimpMap::compose(p, u);
            let vi = SimpMap::compose(v, i);
            if pu.levels != vi.levels {
                continue;
            }
            let mut found = false;
            for w in &fillers {
                if SimpMap::compose(w, i).levels == u.levels
                    && SimpMap::compose(p, w).levels == v.levels
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

/// The unique map X → Δ[0].
pub fn to_point(x: &TruncSSet) -> SimpMap {
    let pt = standard_cells("simplex(0)", x.dim()).unwrap();
    SimpMap::new(
        x.clone(),
        pt,
        (0..=x.dim())
            .map(|n| {
                x.level(n)
                    .iter()
                    .map(|s| (s.clone(), tuple_id(&vec![0; n + 1])))
                    .collect()
            })
            .collect(),
    )
    .expect("terminal map")
}

/// Checks unique inner-horn filling at dimension 2: every Λ[2,1] → X admits
/// exactly one extension along the horn inclusion.
pub fn inner_horn2_fillers_unique(x: &TruncSSet, limit: u64) -> Result<bool, SsetError> {
    let horn = standard_cells("horn(2,1)", x.dim())?;
    let simplex = standard_cells("simplex(2)", x.dim())?;
    let inclusion = cell_inclusion(&horn, &simplex)?;
    let horn_maps = enumerate_simp_maps(&horn, x, limit)?;
    let simplex_maps = enumerate_simp_maps(&simplex, x, limit)?;
    for u in &horn_maps {
        let count = simplex_maps
            .iter()
            .filter(|w| SimpMap::compose(w, &inclusion).levels == u.levels)
            .count();
        if count != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{iota, standard_category, Functor};

    #[test]
    fn nerve_level_counts() {
        let split = standard_category("Split").unwrap();
        assert_eq!(nerve(&split, 2).level_counts(), vec![2, 5, 13]);
        let idem = standard_category("Idem").unwrap();
        assert_eq!(nerve(&idem, 2).level_counts(), vec![1, 2, 4]);
        let t = standard_category("terminal").unwrap();
        assert_eq!(nerve(&t, 3).level_counts(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn nerve_nondegenerate_counts() {
        let idem = standard_category("Idem").unwrap();
        assert_eq!(nerve(&idem, 2).nondegenerate_counts(), vec![1, 1, 1]);
    }

    #[test]
    fn standard_cell_counts() {
        let pt = standard_cells("simplex(0)", 3).unwrap();
        assert_eq!(pt.level_counts(), vec![1, 1, 1, 1]);
        assert_eq!(pt.nondegenerate_counts(), vec![1, 0, 0, 0]);

        let b2 = standard_cells("boundary(2)", 2).unwrap();
        assert_eq!(b2.nondegenerate(1).len(), 3);

        let horn = standard_cells("horn(2,1)", 2).unwrap();
        assert_eq!(horn.nondegenerate(1).len(), 2);
        assert!(!horn.level(1).contains(&"0.2".to_string()));

        assert!(matches!(
            standard_cells("wedge(2)", 2),
            Err(SsetError::BadParameters(_))
        ));
    }

    #[test]
    fn pushout_examples() {
        // Pushout along identity legs gives back the target.
        let d1 = standard_cells("simplex(1)", 2).unwrap();
        let idm = SimpMap::identity(&d1);
        let (po, _, _) = pushout(&idm, &idm).unwrap();
        assert_eq!(po.level_counts(), d1.level_counts());

        // Two points glued along nothing: use boundary(1) = two vertices.
        let b1 = standard_cells("boundary(1)", 1).unwrap();
        assert_eq!(b1.pi0().len(), 2);
    }

    #[test]
    fn ret_nondegenerate_counts() {
        let (ret, rho) = build_ret(4).unwrap();
        assert_eq!(ret.nondegenerate_counts(), vec![2, 2, 1, 0, 0]);
        assert!(rho.is_mono());
        // The two nondegenerate edge classes map to i and r.
        let edges = ret.nondegenerate(1);
        let images: Vec<&SimplexId> = edges.iter().map(|e| &rho.levels[1][e]).collect();
        assert_eq!(images, vec![&"i".to_string(), &"r".to_string()]);
        // The collapsed vertex maps to the object 1.
        let verts = ret.nondegenerate(0);
        let vimages: Vec<&SimplexId> = verts.iter().map(|v| &rho.levels[0][v]).collect();
        assert!(vimages.contains(&&"1".to_string()));
    }

    #[test]
    fn rho_injective_up_to_six() {
        for dim in 2..=6 {
            let (_, rho) = build_ret(dim).unwrap();
            assert!(rho.is_mono(), "dimension {dim}");
        }
    }

    #[test]
    fn pi0_queries() {
        let split = standard_category("Split").unwrap();
        assert_eq!(nerve(&split, 2).pi0().len(), 1);
        let b1 = standard_cells("boundary(1)", 2).unwrap();
        assert_eq!(b1.pi0().len(), 2);
    }

    #[test]
    fn nerve_is_functorial() {
        let split = standard_category("Split").unwrap();
        let io = iota();
        let composed = Functor::compose(&Functor::identity(&split), &io).unwrap();
        let lhs = nerve_map(&composed, 3);
        let rhs = SimpMap::compose(&nerve_map(&Functor::identity(&split), 3), &nerve_map(&io, 3));
        assert_eq!(lhs.levels, rhs.levels);
    }

    #[test]
    fn nerves_have_unique_inner_horn_fillers() {
        for name in ["Idem", "Split", "J", "linear(2)"] {
            let c = standard_category(name).unwrap();
            assert!(inner_horn2_fillers_unique(&nerve(&c, 2), 1_000_000).unwrap());
        }
    }

    #[test]
    fn rlp_examples() {
        let split = standard_category("Split").unwrap();
        let idem = standard_category("Idem").unwrap();
        let n_iota = nerve_map(&iota(), 3);
        assert!(has_rlp_sset(&to_point(&nerve(&split, 3)), &n_iota, 1_000_000).unwrap());
        assert!(!has_rlp_sset(&to_point(&nerve(&idem, 3)), &n_iota, 1_000_000).unwrap());
        // Against an identity, everything lifts.
        let idm = SimpMap::identity(&nerve(&split, 3));
        assert!(has_rlp_sset(&to_point(&nerve(&idem, 3)), &idm, 1_000_000).unwrap());
    }

    #[test]
    fn enumerate_maps_counts_functors() {
        // Maps N(Idem) → N(Split) at dimension 3 are exactly the functors.
        let idem = standard_category("Idem").unwrap();
        let split = standard_category("Split").unwrap();
        let maps = enumerate_simp_maps(&nerve(&idem, 3), &nerve(&split, 3), 1000).unwrap();
        assert_eq!(maps.len(), 3);
    }
}
