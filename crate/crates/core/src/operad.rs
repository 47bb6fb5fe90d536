//! Finite coloured symmetric operads in sets.
//!
//! "Finite" means finitely many operations in total, closed under the
//! composition law; the validator enforces closure, which keeps every axiom
//! check exhaustive. The symmetric action is a right action with
//! (c̄·σ)_i = c_{σ(i)}; all equivariance laws are stated against this
//! convention.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use thiserror::Error;

use crate::fincat::{CatError, FinCategory, Functor, MorId, ObjId};
use crate::limits::Budget;

pub type Colour = String;
pub type OpId = String;
pub type Perm = Vec<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperadError {
    #[error("unknown colour `{0}`")]
    UnknownColour(String),
    #[error("unknown operation `{0}`")]
    UnknownOp(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("composition not closed: γ({outer}; {inners:?}) missing")]
    NotClosed { outer: OpId, inners: Vec<OpId> },
    #[error("composition ill-typed at γ({outer}; {inners:?}): {reason}")]
    IllTyped {
        outer: OpId,
        inners: Vec<OpId>,
        reason: String,
    },
    #[error("associativity fails at γ({outer}; {inners:?}) with continuation {tail:?}")]
    NonAssociative {
        outer: OpId,
        inners: Vec<OpId>,
        tail: Vec<OpId>,
    },
    #[error("equivariance fails on op `{op}` with {what}")]
    NotEquivariant { op: OpId, what: String },
    #[error("unit law fails at `{0}`")]
    BadUnit(String),
    #[error("symmetric action invalid on `{op}`: {reason}")]
    BadAction { op: OpId, reason: String },
    #[error("operad map does not preserve {what} at `{at}`")]
    NotAMap { what: String, at: String },
    #[error("algebra violates {what} at `{at}`")]
    NotAnAlgebra { what: String, at: String },
    #[error("enumeration exceeded limit of {limit}")]
    LimitExceeded { limit: u64 },
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
    #[error("invalid tree: {0}")]
    BadTree(String),
    #[error(transparent)]
    Cat(#[from] CatError),
}

pub fn all_perms(n: usize) -> Vec<Perm> {
    if n == 0 {
        return vec![vec![]];
    }
    (0..n).permutations(n).collect()
}

pub fn identity_perm(n: usize) -> Perm {
    (0..n).collect()
}

/// (σ·τ)(i) = σ(τ(i)); the group product matching the right action
/// o·(σ·τ) = (o·σ)·τ.
pub fn perm_compose(sigma: &Perm, tau: &Perm) -> Perm {
    tau.iter().map(|&i| sigma[i]).collect()
}

pub fn perm_inverse(sigma: &Perm) -> Perm {
    let mut inv = vec![0; sigma.len()];
    for (i, &v) in sigma.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

/// The flat permutation relating γ(o·σ; q̄) to γ(o; q̄∘σ⁻¹): block j of the
/// concatenated input word moves to the slot σ(j) on the other side.
/// `sizes[j]` is the arity of q_j.
pub fn block_perm(sigma: &Perm, sizes: &[usize]) -> Perm {
    let n = sigma.len();
    let inv = perm_inverse(sigma);
    let mut off = vec![0; n];
    {
        let mut acc = 0;
        for j in 0..n {
            off[j] = acc;
            acc += sizes[j];
        }
    }
    let mut off_b = vec![0; n];
    {
        let mut acc = 0;
        for s in 0..n {
            off_b[s] = acc;
            acc += sizes[inv[s]];
        }
    }
    let total: usize = sizes.iter().sum();
    let mut pi = vec![0; total];
    for j in 0..n {
        for t in 0..sizes[j] {
            pi[off[j] + t] = off_b[sigma[j]] + t;
        }
    }
    pi
}

/// Block-diagonal sum of permutations.
pub fn perm_block_sum(taus: &[Perm]) -> Perm {
    let mut out = Vec::new();
    let mut off = 0;
    for tau in taus {
        out.extend(tau.iter().map(|&t| off + t));
        off += tau.len();
    }
    out
}

fn is_permutation(p: &Perm) -> bool {
    let mut seen = vec![false; p.len()];
    for &v in p {
        if v >= p.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// A finite coloured symmetric operad: signature-indexed operation sets, a
/// total right symmetric action, a total composition table and per-colour
/// identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymOperad {
    colours: Vec<Colour>,
    /// op id -> (inputs, output)
    ops: BTreeMap<OpId, (Vec<Colour>, Colour)>,
    /// (op, σ) -> op·σ, for every permutation of the op's arity
    action: BTreeMap<(OpId, Perm), OpId>,
    /// (outer, inners) -> composite, for every type-matching tuple
    compose: BTreeMap<(OpId, Vec<OpId>), OpId>,
    identities: BTreeMap<Colour, OpId>,
}

impl SymOperad {
    pub fn new(
        colours: Vec<Colour>,
        ops: Vec<(OpId, Vec<Colour>, Colour)>,
        action: BTreeMap<(OpId, Perm), OpId>,
        compose: BTreeMap<(OpId, Vec<OpId>), OpId>,
        identities: BTreeMap<Colour, OpId>,
    ) -> Result<Self, OperadError> {
        let mut cs = BTreeSet::new();
        for c in &colours {
            if !cs.insert(c.clone()) {
                return Err(OperadError::DuplicateId(c.clone()));
            }
        }
        let mut table = BTreeMap::new();
        for (id, inputs, output) in ops {
            for c in inputs.iter().chain([&output]) {
                if !cs.contains(c) {
                    return Err(OperadError::UnknownColour(c.clone()));
                }
            }
            if table.insert(id.clone(), (inputs, output)).is_some() {
                return Err(OperadError::DuplicateId(id));
            }
        }
        let operad = SymOperad {
            colours: cs.into_iter().collect(),
            ops: table,
            action,
            compose,
            identities,
        };
        operad.check()?;
        Ok(operad)
    }

    fn check(&self) -> Result<(), OperadError> {
        // Identities: one unary endo-operation per colour.
        for c in &self.colours {
            let id = self
                .identities
                .get(c)
                .ok_or_else(|| OperadError::BadUnit(format!("no identity for colour `{c}`")))?;
            let (ins, out) = self
                .ops
                .get(id)
                .ok_or_else(|| OperadError::UnknownOp(id.clone()))?;
            if ins.as_slice() != [c.clone()] || out != c {
                return Err(OperadError::BadUnit(format!(
                    "identity `{id}` of `{c}` has signature {ins:?} -> {out}"
                )));
            }
        }
        // Action: total, signature-correct, functorial.
        for (o, (ins, out)) in &self.ops {
            let n = ins.len();
            for sigma in all_perms(n) {
                let img = self
                    .action
                    .get(&(o.clone(), sigma.clone()))
                    .ok_or_else(|| OperadError::BadAction {
                        op: o.clone(),
                        reason: format!("no entry for {sigma:?}"),
                    })?;
                let (ins2, out2) = self
                    .ops
                    .get(img)
                    .ok_or_else(|| OperadError::UnknownOp(img.clone()))?;
                let expect: Vec<Colour> = sigma.iter().map(|&i| ins[i].clone()).collect();
                if *ins2 != expect || out2 != out {
                    return Err(OperadError::BadAction {
                        op: o.clone(),
                        reason: format!("{o}·{sigma:?} = {img} has the wrong signature"),
                    });
                }
            }
            if self.action[&(o.clone(), identity_perm(n))] != *o {
                return Err(OperadError::NotEquivariant {
                    op: o.clone(),
                    what: "o·id ≠ o".into(),
                });
            }
            for sigma in all_perms(n) {
                for tau in all_perms(n) {
                    let lhs = &self.action
                        [&(self.action[&(o.clone(), sigma.clone())].clone(), tau.clone())];
                    let rhs = &self.action[&(o.clone(), perm_compose(&sigma, &tau))];
                    if lhs != rhs {
                        return Err(OperadError::NotEquivariant {
                            op: o.clone(),
                            what: format!("(o·{sigma:?})·{tau:?} ≠ o·(στ)"),
                        });
                    }
                }
            }
        }
        // No spurious action entries.
        for (o, sigma) in self.action.keys() {
            let (ins, _) = self
                .ops
                .get(o)
                .ok_or_else(|| OperadError::UnknownOp(o.clone()))?;
            if sigma.len() != ins.len() || !is_permutation(sigma) {
                return Err(OperadError::BadAction {
                    op: o.clone(),
                    reason: format!("{sigma:?} is not a permutation of the arity"),
                });
            }
        }
        // Composition: total on matching tuples, signature-correct.
        for (o, (ins, out)) in &self.ops {
            for q in self.matching_tuples(ins) {
                let entry = self
                    .compose
                    .get(&(o.clone(), q.clone()))
                    .ok_or(OperadError::NotClosed {
                        outer: o.clone(),
                        inners: q.clone(),
                    })?;
                let (eins, eout) = self
                    .ops
                    .get(entry)
                    .ok_or_else(|| OperadError::UnknownOp(entry.clone()))?;
                let expect: Vec<Colour> =
                    q.iter().flat_map(|qi| self.ops[qi].0.clone()).collect();
                if *eins != expect || eout != out {
                    return Err(OperadError::IllTyped {
                        outer: o.clone(),
                        inners: q,
                        reason: format!("composite {entry} has the wrong signature"),
                    });
                }
            }
        }
        for (o, q) in self.compose.keys() {
            let (ins, _) = self
                .ops
                .get(o)
                .ok_or_else(|| OperadError::UnknownOp(o.clone()))?;
            if q.len() != ins.len()
                || q.iter()
                    .zip(ins)
                    .any(|(qi, c)| self.ops.get(qi).map(|s| &s.1) != Some(c))
            {
                return Err(OperadError::IllTyped {
                    outer: o.clone(),
                    inners: q.clone(),
                    reason: "entry is not type-matching".into(),
                });
            }
        }
        // Unit laws.
        for (o, (ins, out)) in &self.ops {
            let ids: Vec<OpId> = ins.iter().map(|c| self.identities[c].clone()).collect();
            if self.compose[&(o.clone(), ids)] != *o {
                return Err(OperadError::BadUnit(format!("γ({o}; identities) ≠ {o}")));
            }
            if self.compose[&(self.identities[out].clone(), vec![o.clone()])] != *o {
                return Err(OperadError::BadUnit(format!("γ(id; {o}) ≠ {o}")));
            }
        }
        // Associativity: γ(γ(o; q̄); r̄) = γ(o; γ(q_i; r̄_i)).
        for ((o, q), w) in &self.compose {
            let sizes: Vec<usize> = q.iter().map(|qi| self.ops[qi].0.len()).collect();
            for r in self.matching_tuples(&self.ops[w].0) {
                let lhs = &self.compose[&(w.clone(), r.clone())];
                let mut nested = Vec::new();
                let mut offset = 0;
                for (qi, &k) in q.iter().zip(&sizes) {
                    nested.push(self.compose[&(qi.clone(), r[offset..offset + k].to_vec())].clone());
                    offset += k;
                }
                let rhs = &self.compose[&(o.clone(), nested)];
                if lhs != rhs {
                    return Err(OperadError::NonAssociative {
                        outer: o.clone(),
                        inners: q.clone(),
                        tail: r,
                    });
                }
            }
        }
        // EQ1: γ(o·σ; q̄) = γ(o; q̄∘σ⁻¹)·block_perm(σ, arities).
        for (o, (ins, _)) in &self.ops {
            let n = ins.len();
            for sigma in all_perms(n) {
                let osig = self.action[&(o.clone(), sigma.clone())].clone();
                for q in self.matching_tuples(&self.ops[&osig].0) {
                    let inv = perm_inverse(&sigma);
                    let reordered: Vec<OpId> = (0..n).map(|j| q[inv[j]].clone()).collect();
                    let w = self.compose[&(o.clone(), reordered)].clone();
                    let sizes: Vec<usize> = q.iter().map(|qi| self.ops[qi].0.len()).collect();
                    let pi = block_perm(&sigma, &sizes);
                    let rhs = &self.action[&(w, pi)];
                    let lhs = &self.compose[&(osig.clone(), q.clone())];
                    if lhs != rhs {
                        return Err(OperadError::NotEquivariant {
                            op: o.clone(),
                            what: format!("outer action with σ={sigma:?}, q={q:?}"),
                        });
                    }
                }
            }
        }
        // EQ2: γ(o; q_i·τ_i) = γ(o; q̄)·(⊕τ_i).
        for ((o, q), w) in &self.compose {
            let arities: Vec<usize> = q.iter().map(|qi| self.ops[qi].0.len()).collect();
            if arities.is_empty() {
                continue;
            }
            let per_input: Vec<Vec<Perm>> = arities.iter().map(|&k| all_perms(k)).collect();
            for taus in per_input.iter().multi_cartesian_product() {
                let taus: Vec<Perm> = taus.into_iter().cloned().collect();
                let moved: Vec<OpId> = q
                    .iter()
                    .zip(&taus)
                    .map(|(qi, tau)| self.action[&(qi.clone(), tau.clone())].clone())
                    .collect();
                let lhs = &self.compose[&(o.clone(), moved)];
                let rhs = &self.action[&(w.clone(), perm_block_sum(&taus))];
                if lhs != rhs {
                    return Err(OperadError::NotEquivariant {
                        op: o.clone(),
                        what: format!("inner action with τ̄ on q={q:?}"),
                    });
                }
            }
        }
        Ok(())
    }

    /// All tuples (q_1, …, q_n) with output colours matching `inputs`.
    fn matching_tuples(&self, inputs: &[Colour]) -> Vec<Vec<OpId>> {
        if inputs.is_empty() {
            return vec![vec![]];
        }
        let per_slot: Vec<Vec<OpId>> = inputs.iter().map(|c| self.ops_with_output(c)).collect();
        per_slot
            .iter()
            .multi_cartesian_product()
            .map(|t| t.into_iter().cloned().collect())
            .collect()
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    pub fn op_ids(&self) -> impl Iterator<Item = &OpId> {
        self.ops.keys()
    }

    pub fn op_count(&self) -> usize {
        self.ops.len()
    }

    pub fn inputs(&self, o: &str) -> &[Colour] {
        &self.ops[o].0
    }

    pub fn output(&self, o: &str) -> &Colour {
        &self.ops[o].1
    }

    pub fn signature(&self, o: &str) -> Option<&(Vec<Colour>, Colour)> {
        self.ops.get(o)
    }

    pub fn arity(&self, o: &str) -> usize {
        self.ops[o].0.len()
    }

    pub fn identity_of(&self, c: &str) -> &OpId {
        &self.identities[c]
    }

    pub fn is_identity_op(&self, o: &str) -> bool {
        let (_, out) = &self.ops[o];
        self.identities[out] == o
    }

    pub fn act(&self, o: &str, sigma: &Perm) -> &OpId {
        &self.action[&(o.to_string(), sigma.clone())]
    }

    pub fn gamma(&self, o: &str, inners: &[OpId]) -> &OpId {
        &self.compose[&(o.to_string(), inners.to_vec())]
    }

    pub fn compose_entries(&self) -> impl Iterator<Item = (&(OpId, Vec<OpId>), &OpId)> {
        self.compose.iter()
    }

    /// Operations with the exact signature (inputs; output), in id order.
    pub fn ops_with_signature(&self, inputs: &[Colour], output: &str) -> Vec<OpId> {
        self.ops
            .iter()
            .filter(|(_, (ins, out))| ins.as_slice() == inputs && out == output)
            .map(|(id, _)| id.clone())
            .collect()
    }

    /// Operations with the given output colour, in id order.
    pub fn ops_with_output(&self, output: &str) -> Vec<OpId> {
        self.ops
            .iter()
            .filter(|(_, (_, out))| out == output)
            .map(|(id, _)| id.clone())
            .collect()
    }

    pub fn max_arity(&self) -> usize {
        self.ops.values().map(|(ins, _)| ins.len()).max().unwrap_or(0)
    }

    /// Unary composition g∘f = γ(g; f).
    pub fn unary_comp(&self, g: &str, f: &str) -> &OpId {
        self.gamma(g, &[f.to_string()])
    }

    /// Unary idempotents: e ∈ O(c; c) with e∘e = e.
    pub fn unary_idempotents(&self) -> Vec<OpId> {
        self.ops
            .iter()
            .filter(|(id, (ins, out))| {
                ins.len() == 1 && ins[0] == **out && self.unary_comp(id, id) == *id
            })
            .map(|(id, _)| id.clone())
            .collect()
    }
}

/// A morphism of coloured operads, validated to preserve identities, the
/// symmetric action and composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperadMap {
    pub source: SymOperad,
    pub target: SymOperad,
    pub colour_map: BTreeMap<Colour, Colour>,
    pub op_map: BTreeMap<OpId, OpId>,
}

impl OperadMap {
    pub fn new(
        source: SymOperad,
        target: SymOperad,
        colour_map: BTreeMap<Colour, Colour>,
        op_map: BTreeMap<OpId, OpId>,
    ) -> Result<Self, OperadError> {
        let f = OperadMap {
            source,
            target,
            colour_map,
            op_map,
        };
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<(), OperadError> {
        for c in self.source.colours() {
            let fc = self
                .colour_map
                .get(c)
                .ok_or_else(|| OperadError::UnknownColour(c.clone()))?;
            if !self.target.colours().contains(fc) {
                return Err(OperadError::UnknownColour(fc.clone()));
            }
        }
        for o in self.source.op_ids() {
            let fo = self
                .op_map
                .get(o)
                .ok_or_else(|| OperadError::UnknownOp(o.clone()))?;
            let (fins, fout) = self
                .target
                .signature(fo)
                .ok_or_else(|| OperadError::UnknownOp(fo.clone()))?;
            let expect: Vec<Colour> = self
                .source
                .inputs(o)
                .iter()
                .map(|c| self.colour_map[c].clone())
                .collect();
            if *fins != expect || fout != &self.colour_map[self.source.output(o)] {
                return Err(OperadError::NotAMap {
                    what: "signatures".into(),
                    at: o.clone(),
                });
            }
        }
        for c in self.source.colours() {
            if self.op_map[self.source.identity_of(c)]
                != *self.target.identity_of(&self.colour_map[c])
            {
                return Err(OperadError::NotAMap {
                    what: "identities".into(),
                    at: c.clone(),
                });
            }
        }
        for o in self.source.op_ids() {
            for sigma in all_perms(self.source.arity(o)) {
                if self.op_map[self.source.act(o, &sigma)]
                    != *self.target.act(&self.op_map[o], &sigma)
                {
                    return Err(OperadError::NotAMap {
                        what: "symmetric action".into(),
                        at: o.clone(),
                    });
                }
            }
        }
        for ((o, q), w) in &self.source.compose {
            let fq: Vec<OpId> = q.iter().map(|qi| self.op_map[qi].clone()).collect();
            if self.target.gamma(&self.op_map[o], &fq) != &self.op_map[w] {
                return Err(OperadError::NotAMap {
                    what: "composition".into(),
                    at: format!("γ({o}; {q:?})"),
                });
            }
        }
        Ok(())
    }

    pub fn identity(o: &SymOperad) -> OperadMap {
        OperadMap {
            source: o.clone(),
            target: o.clone(),
            colour_map: o.colours().iter().map(|c| (c.clone(), c.clone())).collect(),
            op_map: o.op_ids().map(|p| (p.clone(), p.clone())).collect(),
        }
    }

    pub fn compose(g: &OperadMap, f: &OperadMap) -> Result<OperadMap, OperadError> {
        OperadMap::new(
            f.source.clone(),
            g.target.clone(),
            f.colour_map
                .iter()
                .map(|(c, fc)| (c.clone(), g.colour_map[fc].clone()))
                .collect(),
            f.op_map
                .iter()
                .map(|(o, fo)| (o.clone(), g.op_map[fo].clone()))
                .collect(),
        )
    }
}

/// Underlying category j*(O): objects are the colours, morphisms the unary
/// operations with composition inherited from γ.
pub fn underlying_category(o: &SymOperad) -> FinCategory {
    let morphisms: Vec<(MorId, ObjId, ObjId)> = o
        .op_ids()
        .filter(|p| o.arity(p) == 1)
        .map(|p| (p.clone(), o.inputs(p)[0].clone(), o.output(p).clone()))
        .collect();
    let mut compose = BTreeMap::new();
    for (g, gd, _) in &morphisms {
        for (f, _, fc) in &morphisms {
            if fc == gd {
                compose.insert((g.clone(), f.clone()), o.unary_comp(g, f).clone());
            }
        }
    }
    FinCategory::new(
        o.colours().to_vec(),
        morphisms,
        o.colours()
            .iter()
            .map(|c| (c.clone(), o.identity_of(c).clone()))
            .collect(),
        compose,
    )
    .expect("underlying category")
}

/// j* on morphisms.
pub fn underlying_functor(f: &OperadMap) -> Functor {
    let src = underlying_category(&f.source);
    let tgt = underlying_category(&f.target);
    let mor_map: BTreeMap<MorId, MorId> = src
        .morphism_ids()
        .map(|m| (m.clone(), f.op_map[m].clone()))
        .collect();
    Functor::new(src, tgt, f.colour_map.clone(), mor_map).expect("underlying functor")
}

/// j_!(C): the operad with exactly the unary operations of C.
pub fn category_to_operad(cat: &FinCategory) -> SymOperad {
    let ops: Vec<(OpId, Vec<Colour>, Colour)> = cat
        .morphism_ids()
        .map(|m| (m.clone(), vec![cat.dom(m).clone()], cat.cod(m).clone()))
        .collect();
    let action: BTreeMap<(OpId, Perm), OpId> = cat
        .morphism_ids()
        .map(|m| ((m.clone(), vec![0]), m.clone()))
        .collect();
    let mut compose = BTreeMap::new();
    for g in cat.morphism_ids() {
        for f in cat.morphism_ids() {
            if cat.cod(f) == cat.dom(g) {
                compose.insert((g.clone(), vec![f.clone()]), cat.comp(g, f).clone());
            }
        }
    }
    SymOperad::new(
        cat.objects().to_vec(),
        ops,
        action,
        compose,
        cat.objects()
            .iter()
            .map(|x| (x.clone(), cat.id_of(x).clone()))
            .collect(),
    )
    .expect("unary operad")
}

/// j_! on functors.
pub fn functor_to_operad_map(f: &Functor) -> OperadMap {
    OperadMap::new(
        category_to_operad(&f.source),
        category_to_operad(&f.target),
        f.obj_map.clone(),
        f.mor_map.clone(),
    )
    .expect("unary operad map")
}

fn completion_colour(c: &str, e: &str) -> Colour {
    format!("({c},{e})")
}

fn completion_op(p: &str, inputs: &[Colour], output: &Colour) -> OpId {
    format!("{p}:{}->{}", inputs.join("&"), output)
}

/// Structured Cauchy completion data: completed colours are pairs (c, e) of a
/// colour with a unary idempotent; an operation of the completion is an
/// operation of O absorbed by the chosen idempotents on every side.
pub(crate) struct CompletionData {
    pub operad: SymOperad,
    pub colour_ids: BTreeMap<(Colour, OpId), Colour>,
    /// (underlying op, completed inputs, completed output) -> completed id
    pub op_ids: BTreeMap<(OpId, Vec<Colour>, Colour), OpId>,
}

pub(crate) fn completion_data(o: &SymOperad) -> CompletionData {
    let mut colour_ids = BTreeMap::new();
    let mut pairs = Vec::new();
    for e in o.unary_idempotents() {
        let c = o.inputs(&e)[0].clone();
        colour_ids.insert((c.clone(), e.clone()), completion_colour(&c, &e));
        pairs.push((c, e));
    }

    // members: (completed id, underlying op, input pairs, output pair)
    type Member = (OpId, OpId, Vec<(Colour, OpId)>, (Colour, OpId));
    let mut ops = Vec::new();
    let mut op_ids = BTreeMap::new();
    let mut members: Vec<Member> = Vec::new();

    for p in o.op_ids() {
        let ins = o.inputs(p);
        let out = o.output(p);
        let in_choices: Vec<Vec<(Colour, OpId)>> = ins
            .iter()
            .map(|c| pairs.iter().filter(|(pc, _)| pc == c).cloned().collect())
            .collect();
        let input_tuples: Vec<Vec<(Colour, OpId)>> = if ins.is_empty() {
            vec![vec![]]
        } else {
            in_choices
                .iter()
                .multi_cartesian_product()
                .map(|t| t.into_iter().cloned().collect())
                .collect()
        };
        let out_choices: Vec<(Colour, OpId)> =
            pairs.iter().filter(|(pc, _)| pc == out).cloned().collect();
        for in_pair in &input_tuples {
            let es: Vec<OpId> = in_pair.iter().map(|(_, e)| e.clone()).collect();
            let absorbed = if ins.is_empty() {
                p.clone()
            } else {
                o.gamma(p, &es).clone()
            };
            if &absorbed != p {
                continue;
            }
            for (oc, oe) in &out_choices {
                if o.gamma(oe, std::slice::from_ref(p)) != p {
                    continue;
                }
                let cin: Vec<Colour> = in_pair
                    .iter()
                    .map(|(c, e)| colour_ids[&(c.clone(), e.clone())].clone())
                    .collect();
                let cout = colour_ids[&(oc.clone(), oe.clone())].clone();
                let id = completion_op(p, &cin, &cout);
                ops.push((id.clone(), cin.clone(), cout.clone()));
                op_ids.insert((p.clone(), cin, cout), id.clone());
                members.push((id, p.clone(), in_pair.clone(), (oc.clone(), oe.clone())));
            }
        }
    }

    let pair_colour =
        |pr: &(Colour, OpId)| -> Colour { colour_ids[&(pr.0.clone(), pr.1.clone())].clone() };

    let mut action = BTreeMap::new();
    for (id, p, in_pair, out_pair) in &members {
        let n = in_pair.len();
        for sigma in all_perms(n) {
            let p2 = o.act(p, &sigma).clone();
            let in2: Vec<Colour> = sigma.iter().map(|&i| pair_colour(&in_pair[i])).collect();
            let key = (p2, in2, pair_colour(out_pair));
            action.insert((id.clone(), sigma), op_ids[&key].clone());
        }
    }

    let mut by_output: BTreeMap<Colour, Vec<usize>> = BTreeMap::new();
    for (k, (_, _, _, out_pair)) in members.iter().enumerate() {
        by_output.entry(pair_colour(out_pair)).or_default().push(k);
    }

    let mut compose = BTreeMap::new();
    for (oid, p, in_pair, out_pair) in &members {
        let slots: Vec<Vec<usize>> = in_pair
            .iter()
            .map(|pr| by_output.get(&pair_colour(pr)).cloned().unwrap_or_default())
            .collect();
        let tuples: Vec<Vec<usize>> = if in_pair.is_empty() {
            vec![vec![]]
        } else {
            slots
                .iter()
                .multi_cartesian_product()
                .map(|t| t.into_iter().copied().collect())
                .collect()
        };
        for idxs in tuples {
            let inner_ids: Vec<OpId> = idxs.iter().map(|&k| members[k].0.clone()).collect();
            let inner_unders: Vec<OpId> = idxs.iter().map(|&k| members[k].1.clone()).collect();
            let composite_under = if inner_unders.is_empty() {
                p.clone()
            } else {
                o.gamma(p, &inner_unders).clone()
            };
            let cin: Vec<Colour> = idxs
                .iter()
                .flat_map(|&k| members[k].2.iter().map(pair_colour).collect::<Vec<_>>())
                .collect();
            let key = (composite_under, cin, pair_colour(out_pair));
            let result = op_ids
                .get(&key)
                .expect("completion closed under composition")
                .clone();
            compose.insert((oid.clone(), inner_ids), result);
        }
    }

    let identities: BTreeMap<Colour, OpId> = pairs
        .iter()
        .map(|(c, e)| {
            let cc = colour_ids[&(c.clone(), e.clone())].clone();
            (
                cc.clone(),
                op_ids[&(e.clone(), vec![cc.clone()], cc.clone())].clone(),
            )
        })
        .collect();

    let operad = SymOperad::new(
        colour_ids.values().cloned().collect(),
        ops,
        action,
        compose,
        identities,
    )
    .expect("completion is an operad");
    CompletionData {
        operad,
        colour_ids,
        op_ids,
    }
}

/// Cauchy completion and the canonical morphism c ↦ (c, id_c).
pub fn cauchy_completion_operad(o: &SymOperad) -> (SymOperad, OperadMap) {
    let data = completion_data(o);
    let colour_map: BTreeMap<Colour, Colour> = o
        .colours()
        .iter()
        .map(|c| {
            (
                c.clone(),
                data.colour_ids[&(c.clone(), o.identity_of(c).clone())].clone(),
            )
        })
        .collect();
    let op_map: BTreeMap<OpId, OpId> = o
        .op_ids()
        .map(|p| {
            let cin: Vec<Colour> = o.inputs(p).iter().map(|c| colour_map[c].clone()).collect();
            let cout = colour_map[o.output(p)].clone();
            (p.clone(), data.op_ids[&(p.clone(), cin, cout)].clone())
        })
        .collect();
    let canonical = OperadMap::new(o.clone(), data.operad.clone(), colour_map, op_map)
        .expect("canonical completion morphism");
    (data.operad, canonical)
}

/// The completion is functorial: (c, e) ↦ (fc, fe).
pub fn cauchy_completion_map(f: &OperadMap) -> OperadMap {
    let src = completion_data(&f.source);
    let tgt = completion_data(&f.target);
    let colour_map: BTreeMap<Colour, Colour> = src
        .colour_ids
        .iter()
        .map(|((c, e), id)| {
            (
                id.clone(),
                tgt.colour_ids[&(f.colour_map[c].clone(), f.op_map[e].clone())].clone(),
            )
        })
        .collect();
    let op_map: BTreeMap<OpId, OpId> = src
        .op_ids
        .iter()
        .map(|((p, cin, cout), id)| {
            let tin: Vec<Colour> = cin.iter().map(|c| colour_map[c].clone()).collect();
            (
                id.clone(),
                tgt.op_ids[&(f.op_map[p].clone(), tin, colour_map[cout].clone())].clone(),
            )
        })
        .collect();
    OperadMap::new(src.operad, tgt.operad, colour_map, op_map).expect("completed morphism")
}

/// Least witness exhibiting c as a retract of c′: r ∈ O(c′; c), i ∈ O(c; c′)
/// with r∘i = id_c.
pub fn colour_retract_witness(o: &SymOperad, c: &str, c2: &str) -> Option<(OpId, OpId)> {
    for r in o.ops_with_signature(&[c2.to_string()], c) {
        for i in o.ops_with_signature(&[c.to_string()], c2) {
            if o.unary_comp(&r, &i) == o.identity_of(c) {
                return Some((r, i));
            }
        }
    }
    None
}

/// Least isomorphism pair between colours.
pub fn colour_iso(o: &SymOperad, c: &str, d: &str) -> Option<(OpId, OpId)> {
    for u in o.ops_with_signature(&[c.to_string()], d) {
        for v in o.ops_with_signature(&[d.to_string()], c) {
            if o.unary_comp(&v, &u) == o.identity_of(c)
                && o.unary_comp(&u, &v) == o.identity_of(d)
            {
                return Some((u, v));
            }
        }
    }
    None
}

/// Fully faithful: O(c̄; c) → P(f(c̄); f(c)) bijective for every signature
/// over the source colours, for all arities up to the larger maximal arity.
pub fn operad_fully_faithful(f: &OperadMap) -> bool {
    let max_arity = f.source.max_arity().max(f.target.max_arity());
    let colours = f.source.colours();
    for len in 0..=max_arity {
        let tuples: Vec<Vec<Colour>> = if len == 0 {
            vec![vec![]]
        } else {
            (0..len)
                .map(|_| colours.to_vec())
                .multi_cartesian_product()
                .collect()
        };
        for ins in tuples {
            for out in colours {
                let src = f.source.ops_with_signature(&ins, out);
                let image: BTreeSet<&OpId> = src.iter().map(|o| &f.op_map[o]).collect();
                if image.len() != src.len() {
                    return false;
                }
                let fins: Vec<Colour> = ins.iter().map(|c| f.colour_map[c].clone()).collect();
                let tgt = f.target.ops_with_signature(&fins, &f.colour_map[out]);
                if image.len() != tgt.len() {
                    return false;
                }
            }
        }
    }
    true
}

/// Equivalence of operads: fully faithful and essentially surjective on
/// colours.
pub fn is_operadic_equivalence(f: &OperadMap) -> bool {
    operad_fully_faithful(f)
        && f.target.colours().iter().all(|d| {
            f.source
                .colours()
                .iter()
                .any(|c| colour_iso(&f.target, &f.colour_map[c], d).is_some())
        })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperadMoritaReport {
    pub fully_faithful: bool,
    pub essentially_surjective_up_to_retracts: bool,
    pub verdict: bool,
    /// Per target colour: (source colour, r, i) with r∘i = id.
    pub witnesses: BTreeMap<Colour, Option<(Colour, OpId, OpId)>>,
}

/// Definitional Morita verdict for a morphism of operads, cross-checked
/// against equivalence of Cauchy completions. The two routes must agree;
/// disagreement is an implementation bug, never a valid state.
pub fn morita_report_op(f: &OperadMap) -> Result<OperadMoritaReport, OperadError> {
    let ff = operad_fully_faithful(f);
    let mut retracts = true;
    let mut witnesses = BTreeMap::new();
    for d in f.target.colours() {
        let mut w = None;
        'outer: for c in f.source.colours() {
            if let Some((r, i)) = colour_retract_witness(&f.target, d, &f.colour_map[c]) {
                w = Some((c.clone(), r, i));
                break 'outer;
            }
        }
        if w.is_none() {
            retracts = false;
        }
        witnesses.insert(d.clone(), w);
    }
    let verdict = ff && retracts;
    let completed = is_operadic_equivalence(&cauchy_completion_map(f));
    if verdict != completed {
        return Err(OperadError::OracleDisagreement(format!(
            "definitional Morita verdict {verdict} vs completed equivalence {completed}"
        )));
    }
    Ok(OperadMoritaReport {
        fully_faithful: ff,
        essentially_surjective_up_to_retracts: retracts,
        verdict,
        witnesses,
    })
}

/// Rooted trees in the operadic sense: edges, one root, and vertices with an
/// ordered input tuple and one output edge. Leaves are the edges that are not
/// the output of any vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    pub edges: Vec<String>,
    pub root: String,
    pub vertices: Vec<TreeVertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeVertex {
    pub inputs: Vec<String>,
    pub output: String,
}

impl Tree {
    pub fn new(
        edges: Vec<String>,
        root: String,
        vertices: Vec<TreeVertex>,
    ) -> Result<Self, OperadError> {
        let t = Tree {
            edges,
            root,
            vertices,
        };
        t.check()?;
        Ok(t)
    }

    fn check(&self) -> Result<(), OperadError> {
        let edge_set: BTreeSet<&String> = self.edges.iter().collect();
        if edge_set.len() != self.edges.len() {
            return Err(OperadError::BadTree("duplicate edge".into()));
        }
        if !edge_set.contains(&self.root) {
            return Err(OperadError::BadTree("root is not an edge".into()));
        }
        let mut output_of: BTreeMap<&String, usize> = BTreeMap::new();
        let mut input_of: BTreeMap<&String, usize> = BTreeMap::new();
        for (k, v) in self.vertices.iter().enumerate() {
            if !edge_set.contains(&v.output) {
                return Err(OperadError::BadTree(format!(
                    "bad output edge `{}`",
                    v.output
                )));
            }
            if output_of.insert(&v.output, k).is_some() {
                return Err(OperadError::BadTree(format!(
                    "edge `{}` is the output of two vertices",
                    v.output
                )));
            }
            let mut seen = BTreeSet::new();
            for e in &v.inputs {
                if !edge_set.contains(e) || !seen.insert(e) {
                    return Err(OperadError::BadTree(format!("bad input edge `{e}`")));
                }
                if input_of.insert(e, k).is_some() {
                    return Err(OperadError::BadTree(format!(
                        "edge `{e}` is an input of two vertices"
                    )));
                }
            }
        }
        // The root is the unique edge that is not an input; every edge must
        // reach the root by walking downward.
        for e in &self.edges {
            if input_of.contains_key(e) == (e == &self.root) {
                return Err(OperadError::BadTree(format!(
                    "edge `{e}` breaks the unique-root condition"
                )));
            }
        }
        for e in &self.edges {
            let mut cur = e.clone();
            let mut seen = BTreeSet::new();
            while cur != self.root {
                if !seen.insert(cur.clone()) {
                    return Err(OperadError::BadTree("cycle".into()));
                }
                let v = input_of
                    .get(&cur)
                    .ok_or_else(|| OperadError::BadTree(format!("edge `{cur}` is disconnected")))?;
                cur = self.vertices[*v].output.clone();
            }
        }
        Ok(())
    }

    /// The vertex producing this edge as its output, if any.
    fn producer(&self, e: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.output == e)
    }

    /// The vertex consuming this edge as an input, if any.
    fn consumer(&self, e: &str) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| v.inputs.iter().any(|i| i == e))
    }
}

/// The tree with one edge and no vertices.
pub fn eta_tree() -> Tree {
    Tree::new(vec!["e".into()], "e".into(), vec![]).unwrap()
}

/// The n-corolla: one vertex, leaves `l1..ln`, root `r`.
pub fn corolla(n: usize) -> Tree {
    let leaves: Vec<String> = (1..=n).map(|i| format!("l{i}")).collect();
    let mut edges = vec!["r".to_string()];
    edges.extend(leaves.clone());
    Tree::new(
        edges,
        "r".into(),
        vec![TreeVertex {
            inputs: leaves,
            output: "r".into(),
        }],
    )
    .unwrap()
}

/// The two-leaf corolla with leaf edges a, b and root r.
pub fn corolla_ab() -> Tree {
    Tree::new(
        vec!["r".into(), "a".into(), "b".into()],
        "r".into(),
        vec![TreeVertex {
            inputs: vec!["a".into(), "b".into()],
            output: "r".into(),
        }],
    )
    .unwrap()
}

/// The linear tree with n vertices and edges `e0..en`; `e0` is the root and
/// vertex i turns `e{i}` into `e{i-1}`.
pub fn linear_tree(n: usize) -> Tree {
    let edges: Vec<String> = (0..=n).map(|i| format!("e{i}")).collect();
    let vertices = (1..=n)
        .map(|i| TreeVertex {
            inputs: vec![format!("e{i}")],
            output: format!("e{}", i - 1),
        })
        .collect();
    Tree::new(edges, "e0".into(), vertices).unwrap()
}

/// A connected region of a tree: a vertex set with a unique top vertex such
/// that every member's path to the top stays inside.
#[derive(Debug, Clone)]
struct Region {
    top: usize,
    members: BTreeSet<usize>,
}

impl Region {
    /// Root edge and canonical depth-first leaf tuple.
    fn boundary(&self, tree: &Tree) -> (String, Vec<String>) {
        let root = tree.vertices[self.top].output.clone();
        let mut leaves = Vec::new();
        fn collect(tree: &Tree, members: &BTreeSet<usize>, v: usize, leaves: &mut Vec<String>) {
            for e in &tree.vertices[v].inputs {
                match tree.producer(e) {
                    Some(w) if members.contains(&w) => collect(tree, members, w, leaves),
                    _ => leaves.push(e.clone()),
                }
            }
        }
        collect(tree, &self.members, self.top, &mut leaves);
        (root, leaves)
    }
}

fn enumerate_regions(tree: &Tree) -> Vec<Region> {
    let n = tree.vertices.len();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let members: BTreeSet<usize> = (0..n).filter(|k| mask & (1 << k) != 0).collect();
        let tops: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&k| match tree.consumer(&tree.vertices[k].output) {
                Some(w) => !members.contains(&w),
                None => true,
            })
            .collect();
        if tops.len() != 1 {
            continue;
        }
        // Connectivity: every member's downward walk hits the top inside.
        let top = tops[0];
        let connected = members.iter().all(|&k| {
            let mut cur = k;
            loop {
                if cur == top {
                    return true;
                }
                match tree.consumer(&tree.vertices[cur].output) {
                    Some(w) if members.contains(&w) => cur = w,
                    _ => return false,
                }
            }
        });
        if connected {
            out.push(Region { top, members });
        }
    }
    out
}

fn free_op_id(root: &str, leaves: &[String]) -> OpId {
    format!("{root}({})", leaves.join(","))
}

/// Free operad data: the operad plus the region behind each non-identity op.
pub(crate) struct FreeOperadData {
    pub operad: SymOperad,
    /// op id -> (region members, top vertex, ordered leaves)
    pub region_of: BTreeMap<OpId, (BTreeSet<usize>, usize, Vec<String>)>,
}

pub(crate) fn free_operad_data(tree: &Tree) -> FreeOperadData {
    let mut ops: Vec<(OpId, Vec<Colour>, Colour)> = Vec::new();
    let mut region_of = BTreeMap::new();
    let mut identities = BTreeMap::new();
    let mut root_of: BTreeMap<OpId, String> = BTreeMap::new();
    for e in &tree.edges {
        let id = format!("id_{e}");
        ops.push((id.clone(), vec![e.clone()], e.clone()));
        identities.insert(e.clone(), id);
    }
    for region in enumerate_regions(tree) {
        let (root, canonical_leaves) = region.boundary(tree);
        for sigma in all_perms(canonical_leaves.len()) {
            let leaves: Vec<String> =
                sigma.iter().map(|&i| canonical_leaves[i].clone()).collect();
            let id = free_op_id(&root, &leaves);
            ops.push((id.clone(), leaves.clone(), root.clone()));
            root_of.insert(id.clone(), root.clone());
            region_of.insert(id, (region.members.clone(), region.top, leaves));
        }
    }

    let is_identity = |id: &str| id.starts_with("id_");

    let mut action = BTreeMap::new();
    for (id, inputs, _) in &ops {
        for sigma in all_perms(inputs.len()) {
            let img: Vec<Colour> = sigma.iter().map(|&i| inputs[i].clone()).collect();
            let target = if is_identity(id) {
                id.clone()
            } else {
                free_op_id(&root_of[id], &img)
            };
            action.insert((id.clone(), sigma), target);
        }
    }

    // Composition: graft regions. The composite is the op with the outer root
    // and the concatenation of the inner leaf tuples; identities pass through.
    let sig_of: BTreeMap<OpId, (Vec<Colour>, Colour)> = ops
        .iter()
        .map(|(id, ins, out)| (id.clone(), (ins.clone(), out.clone())))
        .collect();
    let mut by_output: BTreeMap<Colour, Vec<OpId>> = BTreeMap::new();
    for (id, _, out) in &ops {
        by_output.entry(out.clone()).or_default().push(id.clone());
    }
    let mut compose = BTreeMap::new();
    for (outer, (ins, out)) in &sig_of {
        let slots: Vec<&Vec<OpId>> = ins.iter().map(|c| &by_output[c]).collect();
        let tuples: Vec<Vec<OpId>> = if ins.is_empty() {
            vec![vec![]]
        } else {
            slots
                .iter()
                .map(|v| v.iter())
                .multi_cartesian_product()
                .map(|t| t.into_iter().cloned().collect())
                .collect()
        };
        for q in tuples {
            let result = if is_identity(outer) {
                q[0].clone()
            } else if q.iter().all(|qi| is_identity(qi)) {
                outer.clone()
            } else {
                let flat: Vec<Colour> = q.iter().flat_map(|qi| sig_of[qi].0.clone()).collect();
                free_op_id(out, &flat)
            };
            debug_assert!(sig_of.contains_key(&result), "grafting stays in the table");
            compose.insert((outer.clone(), q), result);
        }
    }

    let operad = SymOperad::new(tree.edges.clone(), ops, action, compose, identities)
        .expect("free operad on a tree");
    FreeOperadData { operad, region_of }
}

/// The free symmetric operad generated by a rooted tree: colours are the
/// edges; for each connected region there is exactly one operation per
/// ordering of its leaf tuple, plus identities.
pub fn free_operad_on_tree(tree: &Tree) -> SymOperad {
    free_operad_data(tree).operad
}

/// All operad morphisms Ω(T) → O for the free operad on a tree: an edge
/// colouring plus an operation of the matching signature per vertex, extended
/// to every region operation by freeness.
pub fn dendroidal_nerve_at(
    o: &SymOperad,
    tree: &Tree,
    limit: u64,
) -> Result<Vec<OperadMap>, OperadError> {
    let budget = Budget::standard();
    let free = free_operad_data(tree);
    let mut out = Vec::new();

    let colourings: Vec<Vec<Colour>> = if tree.edges.is_empty() {
        vec![vec![]]
    } else {
        tree.edges
            .iter()
            .map(|_| o.colours().to_vec())
            .multi_cartesian_product()
            .collect()
    };

    for lam in colourings {
        if !budget.step() {
            return Err(OperadError::LimitExceeded {
                limit: budget.initial(),
            });
        }
        let lam_map: BTreeMap<String, Colour> = tree
            .edges
            .iter()
            .cloned()
            .zip(lam.iter().cloned())
            .collect();
        let vertex_choices: Vec<Vec<OpId>> = tree
            .vertices
            .iter()
            .map(|v| {
                let ins: Vec<Colour> = v.inputs.iter().map(|e| lam_map[e].clone()).collect();
                o.ops_with_signature(&ins, &lam_map[&v.output])
            })
            .collect();
        if vertex_choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        let assignments: Vec<Vec<OpId>> = if vertex_choices.is_empty() {
            vec![vec![]]
        } else {
            vertex_choices
                .iter()
                .map(|v| v.iter())
                .multi_cartesian_product()
                .map(|t| t.into_iter().cloned().collect())
                .collect()
        };
        for assign in assignments {
            if !budget.step() {
                return Err(OperadError::LimitExceeded {
                    limit: budget.initial(),
                });
            }
            if out.len() as u64 >= limit {
                return Err(OperadError::LimitExceeded { limit });
            }
            fn image_of(
                tree: &Tree,
                o: &SymOperad,
                lam: &BTreeMap<String, Colour>,
                assign: &[OpId],
                members: &BTreeSet<usize>,
                v: usize,
            ) -> OpId {
                let args: Vec<OpId> = tree.vertices[v]
                    .inputs
                    .iter()
                    .map(|e| match tree.producer(e) {
                        Some(w) if members.contains(&w) => {
                            image_of(tree, o, lam, assign, members, w)
                        }
                        _ => o.identity_of(&lam[e]).clone(),
                    })
                    .collect();
                o.gamma(&assign[v], &args).clone()
            }
            let mut op_map: BTreeMap<OpId, OpId> = BTreeMap::new();
            for e in &tree.edges {
                op_map.insert(format!("id_{e}"), o.identity_of(&lam_map[e]).clone());
            }
            for (opid, (members, top, leaves)) in &free.region_of {
                let canonical = Region {
                    top: *top,
                    members: members.clone(),
                }
                .boundary(tree)
                .1;
                let base = image_of(tree, o, &lam_map, &assign, members, *top);
                let sigma: Perm = leaves
                    .iter()
                    .map(|l| canonical.iter().position(|c| c == l).unwrap())
                    .collect();
                op_map.insert(opid.clone(), o.act(&base, &sigma).clone());
            }
            out.push(OperadMap::new(
                free.operad.clone(),
                o.clone(),
                lam_map.clone(),
                op_map,
            )?);
        }
    }
    Ok(out)
}

/// All operad morphisms O → P in canonical order.
pub fn enumerate_operad_maps(
    source: &SymOperad,
    target: &SymOperad,
    limit: u64,
) -> Result<Vec<OperadMap>, OperadError> {
    let budget = Budget::standard();
    let mut out = Vec::new();
    let colours = source.colours().to_vec();
    let free_ops: Vec<OpId> = source
        .op_ids()
        .filter(|o| !source.is_identity_op(o))
        .cloned()
        .collect();

    let colour_assignments: Vec<Vec<Colour>> = if colours.is_empty() {
        vec![vec![]]
    } else {
        colours
            .iter()
            .map(|_| target.colours().to_vec())
            .multi_cartesian_product()
            .collect()
    };

    #[allow(clippy::too_many_arguments)]
    fn assign(
        source: &SymOperad,
        target: &SymOperad,
        colour_map: &BTreeMap<Colour, Colour>,
        free_ops: &[OpId],
        pos: usize,
        op_map: &mut BTreeMap<OpId, OpId>,
        out: &mut Vec<OperadMap>,
        limit: u64,
        budget: &Budget,
    ) -> Result<(), OperadError> {
        if pos == free_ops.len() {
            let cand = OperadMap {
                source: source.clone(),
                target: target.clone(),
                colour_map: colour_map.clone(),
                op_map: op_map.clone(),
            };
            if cand.check().is_ok() {
                if out.len() as u64 >= limit {
                    return Err(OperadError::LimitExceeded { limit });
                }
                out.push(cand);
            }
            return Ok(());
        }
        let o = &free_ops[pos];
        let fins: Vec<Colour> = source
            .inputs(o)
            .iter()
            .map(|c| colour_map[c].clone())
            .collect();
        for fo in target.ops_with_signature(&fins, &colour_map[source.output(o)]) {
            if !budget.step() {
                return Err(OperadError::LimitExceeded {
                    limit: budget.initial(),
                });
            }
            op_map.insert(o.clone(), fo);
            let consistent = source.compose.iter().all(|((p, q), w)| {
                let known = op_map.contains_key(p)
                    && q.iter().all(|qi| op_map.contains_key(qi))
                    && op_map.contains_key(w);
                if !known {
                    return true;
                }
                let fq: Vec<OpId> = q.iter().map(|qi| op_map[qi].clone()).collect();
                target.gamma(&op_map[p], &fq) == &op_map[w]
            });
            if consistent {
                assign(
                    source, target, colour_map, free_ops, pos + 1, op_map, out, limit, budget,
                )?;
            }
            op_map.remove(o);
        }
        Ok(())
    }

    for ca in colour_assignments {
        let colour_map: BTreeMap<Colour, Colour> =
            colours.iter().cloned().zip(ca.into_iter()).collect();
        let mut op_map: BTreeMap<OpId, OpId> = source
            .colours()
            .iter()
            .map(|c| {
                (
                    source.identity_of(c).clone(),
                    target.identity_of(&colour_map[c]).clone(),
                )
            })
            .collect();
        assign(
            source,
            target,
            &colour_map,
            &free_ops,
            0,
            &mut op_map,
            &mut out,
            limit,
            &budget,
        )?;
    }
    Ok(out)
}

/// Exhaustive search for an operadic equivalence O → P.
pub fn find_operadic_equivalence(
    o: &SymOperad,
    p: &SymOperad,
    limit: u64,
) -> Result<Option<OperadMap>, OperadError> {
    Ok(enumerate_operad_maps(o, p, limit)?
        .into_iter()
        .find(is_operadic_equivalence))
}

/// A finite algebra: a finite carrier per colour (canonically {0..k−1}) and a
/// structure map per operation, respecting identities, composition and the
/// symmetric action.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FiniteAlgebra {
    /// colour -> carrier size
    pub sizes: BTreeMap<Colour, usize>,
    /// op -> value table indexed by mixed-radix argument tuples (last
    /// argument fastest)
    pub act: BTreeMap<OpId, Vec<usize>>,
}

/// Row-major index of an argument tuple in the table of an op with the given
/// input sizes.
fn table_index(args: &[usize], sizes: &[usize]) -> usize {
    let mut idx = 0;
    for (a, s) in args.iter().zip(sizes) {
        idx = idx * s + a;
    }
    idx
}

fn table_len(sizes: &[usize]) -> usize {
    sizes.iter().product()
}

/// Argument tuples in table order.
fn arg_tuples(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &s in sizes {
        let mut next = Vec::new();
        for t in &out {
            for v in 0..s {
                let mut t2 = t.clone();
                t2.push(v);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

impl FiniteAlgebra {
    pub fn input_sizes(&self, o: &SymOperad, op: &str) -> Vec<usize> {
        o.inputs(op).iter().map(|c| self.sizes[c]).collect()
    }

    pub fn apply(&self, o: &SymOperad, op: &str, args: &[usize]) -> usize {
        let sizes = self.input_sizes(o, op);
        self.act[op][table_index(args, &sizes)]
    }

    pub fn check(&self, o: &SymOperad) -> Result<(), OperadError> {
        for c in o.colours() {
            if !self.sizes.contains_key(c) {
                return Err(OperadError::UnknownColour(c.clone()));
            }
        }
        for op in o.op_ids() {
            let table = self
                .act
                .get(op)
                .ok_or_else(|| OperadError::UnknownOp(op.clone()))?;
            let sizes = self.input_sizes(o, op);
            let out = self.sizes[o.output(op)];
            if table.len() != table_len(&sizes) || table.iter().any(|&v| v >= out) {
                return Err(OperadError::NotAnAlgebra {
                    what: "table shape".into(),
                    at: op.clone(),
                });
            }
        }
        for c in o.colours() {
            let id = o.identity_of(c);
            for v in 0..self.sizes[c] {
                if self.apply(o, id, &[v]) != v {
                    return Err(OperadError::NotAnAlgebra {
                        what: "identity action".into(),
                        at: c.clone(),
                    });
                }
            }
        }
        // Composition: act(γ(o; q̄)) = act(o) ∘ (act(q_i) on blocks).
        for ((op, q), w) in o.compose_entries() {
            let wsizes = self.input_sizes(o, w);
            for args in arg_tuples(&wsizes) {
                let mut mid = Vec::new();
                let mut off = 0;
                for qi in q {
                    let k = o.arity(qi);
                    mid.push(self.apply(o, qi, &args[off..off + k]));
                    off += k;
                }
                if self.apply(o, op, &mid) != self.apply(o, w, &args) {
                    return Err(OperadError::NotAnAlgebra {
                        what: "composition".into(),
                        at: format!("γ({op}; {q:?})"),
                    });
                }
            }
        }
        // Action: act(o·σ)(y) = act(o)(y ∘ σ⁻¹).
        for op in o.op_ids() {
            let n = o.arity(op);
            for sigma in all_perms(n) {
                let moved = o.act(op, &sigma);
                let msizes = self.input_sizes(o, moved);
                let inv = perm_inverse(&sigma);
                for args in arg_tuples(&msizes) {
                    let pulled: Vec<usize> = (0..n).map(|j| args[inv[j]]).collect();
                    if self.apply(o, moved, &args) != self.apply(o, op, &pulled) {
                        return Err(OperadError::NotAnAlgebra {
                            what: "equivariance".into(),
                            at: op.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Deterministic content encoding used for ordering and canonical forms.
    fn encode(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.sizes.values().copied().collect();
        for table in self.act.values() {
            out.push(usize::MAX); // separator
            out.extend(table);
        }
        out
    }

    /// Transport along per-colour bijections of the carriers.
    fn transport(&self, o: &SymOperad, perms: &BTreeMap<Colour, Perm>) -> FiniteAlgebra {
        let mut act = BTreeMap::new();
        for op in o.op_ids() {
            let sizes = self.input_sizes(o, op);
            let ins = o.inputs(op);
            let out_perm = &perms[o.output(op)];
            let mut table = vec![0; table_len(&sizes)];
            for args in arg_tuples(&sizes) {
                // args are in new labels; pull back through the inverses.
                let pulled: Vec<usize> = args
                    .iter()
                    .zip(ins)
                    .map(|(&a, c)| perm_inverse(&perms[c])[a])
                    .collect();
                table[table_index(&args, &sizes)] = out_perm[self.apply(o, op, &pulled)];
            }
            act.insert(op.clone(), table);
        }
        FiniteAlgebra {
            sizes: self.sizes.clone(),
            act,
        }
    }

    /// Least transport over all per-colour carrier bijections.
    pub fn canonical_form(&self, o: &SymOperad) -> FiniteAlgebra {
        let colour_perms: Vec<(Colour, Vec<Perm>)> = self
            .sizes
            .iter()
            .map(|(c, &s)| (c.clone(), all_perms(s)))
            .collect();
        let mut best: Option<FiniteAlgebra> = None;
        let choices: Vec<Vec<&Perm>> = colour_perms
            .iter()
            .map(|(_, ps)| ps.iter().collect::<Vec<_>>())
            .collect();
        for combo in choices.iter().map(|v| v.iter()).multi_cartesian_product() {
            let perms: BTreeMap<Colour, Perm> = colour_perms
                .iter()
                .zip(combo)
                .map(|((c, _), p)| (c.clone(), (*p).clone()))
                .collect();
            let cand = self.transport(o, &perms);
            if best
                .as_ref()
                .map_or(true, |b| cand.encode() < b.encode())
            {
                best = Some(cand);
            }
        }
        best.unwrap_or_else(|| self.clone())
    }
}

/// All algebras with the given carrier sizes, in deterministic order. Values
/// forced by identities, the action or composition from earlier operations
/// are not enumerated; every candidate is fully validated.
pub fn enumerate_algebras(
    o: &SymOperad,
    sizes: &BTreeMap<Colour, usize>,
    limit: u64,
) -> Result<Vec<FiniteAlgebra>, OperadError> {
    for c in o.colours() {
        if !sizes.contains_key(c) {
            return Err(OperadError::UnknownColour(c.clone()));
        }
    }
    let budget = Budget::standard();
    let ops: Vec<OpId> = o.op_ids().cloned().collect();

    // Forcing plan: identity | action of an earlier op | composite of earlier
    // ops | free.
    #[derive(Clone)]
    enum Plan {
        Identity(Colour),
        Action(OpId, Perm),
        Composite(OpId, Vec<OpId>),
        Free,
    }
    let earlier = |set: &BTreeSet<OpId>, id: &OpId| set.contains(id);
    let mut plans: Vec<Plan> = Vec::new();
    let mut known: BTreeSet<OpId> = BTreeSet::new();
    for op in &ops {
        let plan = if o.is_identity_op(op) {
            Plan::Identity(o.output(op).clone())
        } else if let Some(((p, sigma), _)) = o
            .action
            .iter()
            .find(|((p, _), img)| *img == op && p != op && earlier(&known, p))
        {
            Plan::Action(p.clone(), sigma.clone())
        } else if let Some(((p, q), _)) = o.compose.iter().find(|((p, q), img)| {
            *img == op
                && earlier(&known, p)
                && q.iter().all(|qi| earlier(&known, qi))
        }) {
            Plan::Composite(p.clone(), q.clone())
        } else {
            Plan::Free
        };
        plans.push(plan);
        known.insert(op.clone());
    }

    let mut results = Vec::new();
    let mut act: BTreeMap<OpId, Vec<usize>> = BTreeMap::new();

    #[allow(clippy::too_many_arguments)]
    fn fill(
        o: &SymOperad,
        sizes: &BTreeMap<Colour, usize>,
        ops: &[OpId],
        plans: &[Plan],
        pos: usize,
        act: &mut BTreeMap<OpId, Vec<usize>>,
        results: &mut Vec<FiniteAlgebra>,
        budget: &Budget,
        limit: u64,
    ) -> Result<(), OperadError> {
        if pos == ops.len() {
            let cand = FiniteAlgebra {
                sizes: sizes.clone(),
                act: act.clone(),
            };
            if cand.check(o).is_ok() {
                if results.len() as u64 >= limit {
                    return Err(OperadError::LimitExceeded { limit });
                }
                results.push(cand);
            }
            return Ok(());
        }
        let op = &ops[pos];
        let in_sizes: Vec<usize> = o.inputs(op).iter().map(|c| sizes[c]).collect();
        let out_size = sizes[o.output(op)];
        let tlen = table_len(&in_sizes);
        match &plans[pos] {
            Plan::Identity(_) => {
                act.insert(op.clone(), (0..out_size).collect());
                fill(o, sizes, ops, plans, pos + 1, act, results, budget, limit)?;
                act.remove(op);
            }
            Plan::Action(p, sigma) => {
                let inv = perm_inverse(sigma);
                let mut table = vec![0; tlen];
                let psizes: Vec<usize> = o.inputs(p).iter().map(|c| sizes[c]).collect();
                for args in arg_tuples(&in_sizes) {
                    let pulled: Vec<usize> = (0..args.len()).map(|j| args[inv[j]]).collect();
                    table[table_index(&args, &in_sizes)] =
                        act[p][table_index(&pulled, &psizes)];
                }
                act.insert(op.clone(), table);
                fill(o, sizes, ops, plans, pos + 1, act, results, budget, limit)?;
                act.remove(op);
            }
            Plan::Composite(p, q) => {
                let mut table = vec![0; tlen];
                let psizes: Vec<usize> = o.inputs(p).iter().map(|c| sizes[c]).collect();
                for args in arg_tuples(&in_sizes) {
                    let mut mid = Vec::new();
                    let mut off = 0;
                    for qi in q {
                        let k = o.arity(qi);
                        let qsizes: Vec<usize> =
                            o.inputs(qi).iter().map(|c| sizes[c]).collect();
                        mid.push(act[qi][table_index(&args[off..off + k], &qsizes)]);
                        off += k;
                    }
                    table[table_index(&args, &in_sizes)] = act[p][table_index(&mid, &psizes)];
                }
                act.insert(op.clone(), table);
                fill(o, sizes, ops, plans, pos + 1, act, results, budget, limit)?;
                act.remove(op);
            }
            Plan::Free => {
                if out_size == 0 {
                    if tlen == 0 {
                        act.insert(op.clone(), vec![]);
                        fill(o, sizes, ops, plans, pos + 1, act, results, budget, limit)?;
                        act.remove(op);
                    }
                    // Otherwise no function exists into an empty carrier.
                    return Ok(());
                }
                let mut table = vec![0usize; tlen];
                loop {
                    if !budget.step() {
                        return Err(OperadError::LimitExceeded {
                            limit: budget.initial(),
                        });
                    }
                    act.insert(op.clone(), table.clone());
                    fill(o, sizes, ops, plans, pos + 1, act, results, budget, limit)?;
                    act.remove(op);
                    // Odometer.
                    let mut k = tlen;
                    loop {
                        if k == 0 {
                            return Ok(());
                        }
                        k -= 1;
                        table[k] += 1;
                        if table[k] < out_size {
                            break;
                        }
                        table[k] = 0;
                    }
                }
            }
        }
        Ok(())
    }

    fill(
        o,
        sizes,
        &ops,
        &plans,
        0,
        &mut act,
        &mut results,
        &budget,
        limit,
    )?;
    Ok(results)
}

/// All algebras with every carrier size ≤ `bound` (including empty carriers),
/// optionally reduced to canonical representatives of isomorphism classes.
pub fn enumerate_algebras_up_to(
    o: &SymOperad,
    bound: usize,
    iso_classes: bool,
    limit: u64,
) -> Result<Vec<FiniteAlgebra>, OperadError> {
    let colours = o.colours().to_vec();
    let vectors: Vec<Vec<usize>> = if colours.is_empty() {
        vec![vec![]]
    } else {
        colours
            .iter()
            .map(|_| (0..=bound).collect::<Vec<usize>>())
            .multi_cartesian_product()
            .collect()
    };
    let mut out = Vec::new();
    for v in vectors {
        let sizes: BTreeMap<Colour, usize> =
            colours.iter().cloned().zip(v.into_iter()).collect();
        let algebras = enumerate_algebras(o, &sizes, limit)?;
        if iso_classes {
            let mut seen = BTreeSet::new();
            for a in algebras {
                let canon = a.canonical_form(o);
                if seen.insert(canon.encode()) {
                    out.push(canon);
                }
            }
        } else {
            out.extend(algebras);
        }
        if out.len() as u64 > limit {
            return Err(OperadError::LimitExceeded { limit });
        }
    }
    Ok(out)
}

/// Restriction of an algebra along an operad morphism: carrier and structure
/// maps are pulled back through f.
pub fn restrict_algebra(f: &OperadMap, a: &FiniteAlgebra) -> Result<FiniteAlgebra, OperadError> {
    a.check(&f.target)?;
    let restricted = FiniteAlgebra {
        sizes: f
            .source
            .colours()
            .iter()
            .map(|c| (c.clone(), a.sizes[&f.colour_map[c]]))
            .collect(),
        act: f
            .source
            .op_ids()
            .map(|o| (o.clone(), a.act[&f.op_map[o]].clone()))
            .collect(),
    };
    restricted.check(&f.source)?;
    Ok(restricted)
}

/// The two-colour operad with one binary operation m: (a, a) → b invariant
/// under the swap; the smallest genuinely symmetric test operad.
pub fn operad_b() -> SymOperad {
    let mut action = BTreeMap::new();
    action.insert(("id_a".to_string(), vec![0]), "id_a".to_string());
    action.insert(("id_b".to_string(), vec![0]), "id_b".to_string());
    action.insert(("m".to_string(), vec![0, 1]), "m".to_string());
    action.insert(("m".to_string(), vec![1, 0]), "m".to_string());
    let mut compose = BTreeMap::new();
    compose.insert(
        ("id_a".to_string(), vec!["id_a".to_string()]),
        "id_a".to_string(),
    );
    compose.insert(
        ("id_b".to_string(), vec!["id_b".to_string()]),
        "id_b".to_string(),
    );
    compose.insert(("id_b".to_string(), vec!["m".to_string()]), "m".to_string());
    compose.insert(
        ("m".to_string(), vec!["id_a".to_string(), "id_a".to_string()]),
        "m".to_string(),
    );
    SymOperad::new(
        vec!["a".into(), "b".into()],
        vec![
            ("id_a".into(), vec!["a".into()], "a".into()),
            ("id_b".into(), vec!["b".into()], "b".into()),
            ("m".into(), vec!["a".into(), "a".into()], "b".into()),
        ],
        action,
        compose,
        [
            ("a".to_string(), "id_a".to_string()),
            ("b".to_string(), "id_b".to_string()),
        ]
        .into(),
    )
    .expect("two-colour binary operad")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{iota, standard_category};

    #[test]
    fn b_operad_validates() {
        let b = operad_b();
        assert_eq!(b.colours(), ["a".to_string(), "b".to_string()]);
        assert_eq!(b.op_count(), 3);
        assert_eq!(b.act("m", &vec![1, 0]), "m");
    }

    #[test]
    fn bad_unit_is_reported() {
        // A unary table where γ(u; id) lands on the wrong op.
        let err = SymOperad::new(
            vec!["a".into()],
            vec![
                ("id_a".into(), vec!["a".into()], "a".into()),
                ("u".into(), vec!["a".into()], "a".into()),
            ],
            [
                (("id_a".to_string(), vec![0]), "id_a".to_string()),
                (("u".to_string(), vec![0]), "u".to_string()),
            ]
            .into(),
            [
                (("id_a".to_string(), vec!["id_a".to_string()]), "id_a".to_string()),
                (("id_a".to_string(), vec!["u".to_string()]), "u".to_string()),
                (("u".to_string(), vec!["id_a".to_string()]), "id_a".to_string()),
                (("u".to_string(), vec!["u".to_string()]), "u".to_string()),
            ]
            .into(),
            [("a".to_string(), "id_a".to_string())].into(),
        )
        .unwrap_err();
        assert!(matches!(err, OperadError::BadUnit(_)), "{err:?}");
    }

    #[test]
    fn broken_involution_is_reported() {
        // m·swap = m2 but m2·swap = m2 breaks functoriality.
        let err = SymOperad::new(
            vec!["a".into(), "b".into()],
            vec![
                ("id_a".into(), vec!["a".into()], "a".into()),
                ("id_b".into(), vec!["b".into()], "b".into()),
                ("m".into(), vec!["a".into(), "a".into()], "b".into()),
                ("m2".into(), vec!["a".into(), "a".into()], "b".into()),
            ],
            [
                (("id_a".to_string(), vec![0]), "id_a".to_string()),
                (("id_b".to_string(), vec![0]), "id_b".to_string()),
                (("m".to_string(), vec![0, 1]), "m".to_string()),
                (("m".to_string(), vec![1, 0]), "m2".to_string()),
                (("m2".to_string(), vec![0, 1]), "m2".to_string()),
                (("m2".to_string(), vec![1, 0]), "m2".to_string()),
            ]
            .into(),
            [
                (
                    ("id_a".to_string(), vec!["id_a".to_string()]),
                    "id_a".to_string(),
                ),
                (
                    ("id_b".to_string(), vec!["id_b".to_string()]),
                    "id_b".to_string(),
                ),
                (("id_b".to_string(), vec!["m".to_string()]), "m".to_string()),
                (("id_b".to_string(), vec!["m2".to_string()]), "m2".to_string()),
                (
                    ("m".to_string(), vec!["id_a".to_string(), "id_a".to_string()]),
                    "m".to_string(),
                ),
                (
                    ("m2".to_string(), vec!["id_a".to_string(), "id_a".to_string()]),
                    "m2".to_string(),
                ),
            ]
            .into(),
            [
                ("a".to_string(), "id_a".to_string()),
                ("b".to_string(), "id_b".to_string()),
            ]
            .into(),
        )
        .unwrap_err();
        assert!(
            matches!(err, OperadError::NotEquivariant { .. }),
            "{err:?}"
        );
    }

    #[test]
    fn underlying_category_examples() {
        let b = operad_b();
        let jb = underlying_category(&b);
        assert_eq!(jb.objects().len(), 2);
        assert_eq!(jb.morphism_count(), 2); // only identities

        let split = standard_category("Split").unwrap();
        let jsplit = category_to_operad(&split);
        assert_eq!(jsplit.colours().len(), 2);
        assert_eq!(jsplit.op_count(), 5);
        // Round trip j* ∘ j_! is the identity on finite data.
        assert_eq!(underlying_category(&jsplit), split);
    }

    #[test]
    fn completion_examples() {
        let b = operad_b();
        let (cb, canonical) = cauchy_completion_operad(&b);
        // No non-identity unary idempotents: the completion is equivalent.
        assert_eq!(cb.colours().len(), 2);
        assert!(is_operadic_equivalence(&canonical));

        let j_idem = category_to_operad(&standard_category("Idem").unwrap());
        let (c_idem, canonical) = cauchy_completion_operad(&j_idem);
        assert_eq!(c_idem.colours().len(), 2);
        assert_eq!(c_idem.op_count(), 5);
        assert!(!is_operadic_equivalence(&canonical));
        let j_split = category_to_operad(&standard_category("Split").unwrap());
        assert!(find_operadic_equivalence(&c_idem, &j_split, 10_000)
            .unwrap()
            .is_some());

        let j_term = category_to_operad(&standard_category("terminal").unwrap());
        let (c_term, _) = cauchy_completion_operad(&j_term);
        assert_eq!((c_term.colours().len(), c_term.op_count()), (1, 1));
    }

    #[test]
    fn morita_report_examples() {
        let b = operad_b();
        let (_, canonical) = cauchy_completion_operad(&b);
        assert!(morita_report_op(&canonical).unwrap().verdict);

        let j_iota = functor_to_operad_map(&iota());
        assert!(morita_report_op(&j_iota).unwrap().verdict);

        // Single-colour suboperad {a, id_a} of B: b is not a retract of a.
        let sub = SymOperad::new(
            vec!["a".into()],
            vec![("id_a".into(), vec!["a".into()], "a".into())],
            [(("id_a".to_string(), vec![0]), "id_a".to_string())].into(),
            [(
                ("id_a".to_string(), vec!["id_a".to_string()]),
                "id_a".to_string(),
            )]
            .into(),
            [("a".to_string(), "id_a".to_string())].into(),
        )
        .unwrap();
        let incl = OperadMap::new(
            sub,
            b,
            [("a".to_string(), "a".to_string())].into(),
            [("id_a".to_string(), "id_a".to_string())].into(),
        )
        .unwrap();
        let report = morita_report_op(&incl).unwrap();
        assert!(report.fully_faithful);
        assert!(!report.verdict);
    }

    #[test]
    fn retract_witness_examples() {
        let j_split = category_to_operad(&standard_category("Split").unwrap());
        assert_eq!(
            colour_retract_witness(&j_split, "1", "0"),
            Some(("r".to_string(), "i".to_string()))
        );
        let b = operad_b();
        assert_eq!(colour_retract_witness(&b, "b", "a"), None);
        assert_eq!(
            colour_retract_witness(&b, "a", "a"),
            Some(("id_a".to_string(), "id_a".to_string()))
        );
    }

    #[test]
    fn free_operad_examples() {
        let c2 = free_operad_on_tree(&corolla_ab());
        assert_eq!(c2.colours().len(), 3);
        assert_eq!(c2.op_count(), 5); // 3 identities + the two orderings
        assert_eq!(c2.act("r(a,b)", &vec![1, 0]), "r(b,a)");

        let eta = free_operad_on_tree(&eta_tree());
        assert_eq!((eta.colours().len(), eta.op_count()), (1, 1));

        let lin2 = free_operad_on_tree(&linear_tree(2));
        assert_eq!(lin2.op_count(), 6);
        // Isomorphic to the free category on a 2-chain, viewed as an operad.
        let j_lin = category_to_operad(&standard_category("linear(2)").unwrap());
        assert!(find_operadic_equivalence(&lin2, &j_lin, 100_000)
            .unwrap()
            .is_some());
    }

    #[test]
    fn dendroidal_nerve_examples() {
        let b = operad_b();
        // Over the bare edge: one morphism per colour.
        assert_eq!(
            dendroidal_nerve_at(&b, &eta_tree(), 1000).unwrap().len(),
            b.colours().len()
        );
        // Self-maps of the free two-corolla: the identity and the leaf swap.
        let omega_c2 = free_operad_on_tree(&corolla_ab());
        assert_eq!(
            dendroidal_nerve_at(&omega_c2, &corolla_ab(), 1000)
                .unwrap()
                .len(),
            2
        );
        // Over linear trees the nerve recovers chains in the underlying
        // category.
        let j_split = category_to_operad(&standard_category("Split").unwrap());
        for n in 0..=3 {
            let maps = dendroidal_nerve_at(&j_split, &linear_tree(n), 100_000).unwrap();
            let chains = crate::simpset::nerve(&underlying_category(&j_split), 3);
            assert_eq!(maps.len(), chains.level(n).len(), "n = {n}");
        }
    }

    #[test]
    fn algebra_enumeration_counts() {
        let b = operad_b();
        let sizes: BTreeMap<Colour, usize> =
            [("a".to_string(), 2), ("b".to_string(), 2)].into();
        // Symmetric binary maps from a 2-set to a 2-set: 3 unordered pairs,
        // 2 values each.
        let algebras = enumerate_algebras(&b, &sizes, 10_000).unwrap();
        assert_eq!(algebras.len(), 8);
        for a in &algebras {
            assert!(a.check(&b).is_ok());
        }

        // All carriers singletons: exactly one algebra.
        let singleton: BTreeMap<Colour, usize> =
            [("a".to_string(), 1), ("b".to_string(), 1)].into();
        assert_eq!(enumerate_algebras(&b, &singleton, 10).unwrap().len(), 1);

        // Idempotent endofunctions on a 2-element set: id and the two
        // constants.
        let j_idem = category_to_operad(&standard_category("Idem").unwrap());
        let sizes: BTreeMap<Colour, usize> = [("0".to_string(), 2)].into();
        assert_eq!(enumerate_algebras(&j_idem, &sizes, 100).unwrap().len(), 3);
    }

    #[test]
    fn restriction_examples() {
        let b = operad_b();
        let sizes: BTreeMap<Colour, usize> =
            [("a".to_string(), 2), ("b".to_string(), 2)].into();
        let algebras = enumerate_algebras(&b, &sizes, 10_000).unwrap();
        let idb = OperadMap::identity(&b);
        for a in &algebras {
            assert_eq!(&restrict_algebra(&idb, a).unwrap(), a);
        }

        // A Split-algebra restricted along j_!(iota) keeps the carrier and
        // the idempotent but forgets the splitting.
        let j_iota = functor_to_operad_map(&iota());
        let split_sizes: BTreeMap<Colour, usize> =
            [("0".to_string(), 2), ("1".to_string(), 1)].into();
        let split_algebras =
            enumerate_algebras(&j_iota.target, &split_sizes, 10_000).unwrap();
        assert!(!split_algebras.is_empty());
        for a in &split_algebras {
            let r = restrict_algebra(&j_iota, a).unwrap();
            assert_eq!(r.sizes["0"], 2);
            assert_eq!(r.act["e"], a.act["ir"]);
        }
    }

    #[test]
    fn iso_classes_of_idempotent_algebras() {
        // (set, idempotent endomap) with carrier exactly 2: three algebras,
        // two up to isomorphism (identity vs constant).
        let j_idem = category_to_operad(&standard_category("Idem").unwrap());
        let all = enumerate_algebras_up_to(&j_idem, 2, false, 10_000).unwrap();
        let classes = enumerate_algebras_up_to(&j_idem, 2, true, 10_000).unwrap();
        // sizes 0, 1, 2 give 1 + 1 + 3 algebras and 1 + 1 + 2 classes.
        assert_eq!(all.len(), 5);
        assert_eq!(classes.len(), 4);
    }
}
