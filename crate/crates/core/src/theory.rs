//! From symmetric operads to multi-sorted algebraic theories.
//!
//! The theory attached to an operad has words of colours as objects; an
//! arrow component from c̄ to a sort d is an orbit class [f, b̄, o] of an
//! ordered colour-preserving map f: b̄ → c̄ together with an operation
//! o ∈ O(b̄; d), taken modulo the fiber-fixing stabilizer Σ_f. Hom sets are
//! materialized lazily per word; the whole theory is never stored.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::operad::{
    all_perms, perm_compose, perm_inverse, Colour, OpId, OperadError, OperadMap, Perm, SymOperad,
};

pub type Word = Vec<Colour>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoryError {
    #[error("unknown colour `{0}`")]
    UnknownColour(String),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("word mismatch: expected {expected:?}, got {got:?}")]
    WordMismatch { expected: Word, got: Word },
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
    #[error("enumeration exceeded limit of {limit}")]
    LimitExceeded { limit: u64 },
    #[error(transparent)]
    Operad(#[from] OperadError),
}

pub fn word_id(w: &[Colour]) -> String {
    if w.is_empty() {
        "[-]".to_string()
    } else {
        w.join(",")
    }
}

/// All words over the colour set with length ≤ bound, ordered by length then
/// lexicographically.
pub fn enumerate_words(colours: &[Colour], max_len: usize) -> Vec<Word> {
    let mut out = vec![vec![]];
    let mut layer: Vec<Word> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for c in colours {
                let mut w2 = w.clone();
                w2.push(c.clone());
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// A monotone colour-preserving map of words: b_i = c_{map(i)} with map
/// weakly increasing (0-based positions).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrdMap {
    pub source: Word,
    pub target: Word,
    pub map: Vec<usize>,
}

impl OrdMap {
    pub fn new(source: Word, target: Word, map: Vec<usize>) -> Result<Self, TheoryError> {
        if map.len() != source.len() {
            return Err(TheoryError::IndexOutOfRange(map.len()));
        }
        for (i, &j) in map.iter().enumerate() {
            if j >= target.len() {
                return Err(TheoryError::IndexOutOfRange(j));
            }
            if source[i] != target[j] {
                return Err(TheoryError::WordMismatch {
                    expected: vec![target[j].clone()],
                    got: vec![source[i].clone()],
                });
            }
            if i > 0 && map[i - 1] > j {
                return Err(TheoryError::IndexOutOfRange(j));
            }
        }
        Ok(OrdMap {
            source,
            target,
            map,
        })
    }

    /// Fibers over target positions.
    fn fibers(&self) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::new(); self.target.len()];
        for (i, &j) in self.map.iter().enumerate() {
            fibers[j].push(i);
        }
        fibers
    }

    /// The fiber-fixing stabilizer Σ_f as explicit permutations of the source
    /// positions, in deterministic order.
    pub fn stabilizer(&self) -> Vec<Perm> {
        let fibers: Vec<Vec<usize>> = self
            .fibers()
            .into_iter()
            .filter(|f| !f.is_empty())
            .collect();
        let mut out: Vec<Perm> = vec![(0..self.source.len()).collect()];
        for fiber in fibers {
            let mut next = Vec::new();
            for base in &out {
                for assign in fiber.iter().permutations(fiber.len()) {
                    let mut p = base.clone();
                    for (slot, &&val) in fiber.iter().zip(assign.iter()) {
                        p[*slot] = val;
                    }
                    next.push(p);
                }
            }
            out = next;
        }
        out.sort();
        out.dedup();
        out
    }
}

/// All monotone colour-preserving maps b̄ → c̄ with their stabilizers.
pub fn ordered_colour_maps(source: &Word, target: &Word) -> Vec<(OrdMap, Vec<Perm>)> {
    fn go(
        source: &Word,
        target: &Word,
        pos: usize,
        lo: usize,
        map: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pos == source.len() {
            out.push(map.clone());
            return;
        }
        for j in lo..target.len() {
            if target[j] == source[pos] {
                map.push(j);
                go(source, target, pos + 1, j, map, out);
                map.pop();
            }
        }
    }
    let mut maps = Vec::new();
    go(source, target, 0, 0, &mut Vec::new(), &mut maps);
    maps.into_iter()
        .map(|m| {
            let om = OrdMap::new(source.clone(), target.clone(), m).expect("constructed monotone");
            let stab = om.stabilizer();
            (om, stab)
        })
        .collect()
}

/// An element of the theory hom into a single sort: the canonical
/// representative [f, b̄, o] of a Σ_f-orbit. The canonical operation is the
/// least id in the orbit {o·σ | σ ∈ Σ_f}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TheoryClass {
    pub f: OrdMap,
    pub op: OpId,
}

impl TheoryClass {
    pub fn canonicalize(o: &SymOperad, f: OrdMap, op: OpId) -> TheoryClass {
        let best = f
            .stabilizer()
            .into_iter()
            .map(|sigma| o.act(&op, &sigma).clone())
            .min()
            .expect("stabilizer contains the identity");
        TheoryClass { f, op: best }
    }

    /// The sort this class lands in.
    pub fn sort(&self, o: &SymOperad) -> Colour {
        o.output(&self.op).clone()
    }

    pub fn render(&self) -> String {
        format!(
            "[{};{};{}]",
            self.f
                .map
                .iter()
                .map(|j| (j + 1).to_string())
                .collect::<Vec<_>>()
                .join(","),
            word_id(&self.f.source),
            self.op
        )
    }
}

/// Representative selection for class-level computations: canonical, or a
/// seeded random Σ_f-translate (used to test representative independence).
pub enum RepSelect {
    Canonical,
    Seeded(ChaCha8Rng),
}

impl RepSelect {
    fn pick(&mut self, o: &SymOperad, class: &TheoryClass) -> (OrdMap, OpId) {
        match self {
            RepSelect::Canonical => (class.f.clone(), class.op.clone()),
            RepSelect::Seeded(rng) => {
                let stab = class.f.stabilizer();
                let sigma = &stab[rng.gen_range(0..stab.len())];
                (class.f.clone(), o.act(&class.op, sigma).clone())
            }
        }
    }
}

/// The hom set (p_!O)(c̄; d) as canonical classes, in deterministic order.
pub fn clone_hom(o: &SymOperad, word: &Word, sort: &str) -> Vec<TheoryClass> {
    let mut out = BTreeSet::new();
    for op in o.ops_with_output(sort) {
        let inputs: Word = o.inputs(&op).to_vec();
        for (f, _) in ordered_colour_maps(&inputs, word) {
            out.insert(TheoryClass::canonicalize(o, f, op.clone()));
        }
    }
    out.into_iter().collect()
}

/// Comma-category oracle for `clone_hom`: computes the same set as the
/// colimit over all (not necessarily ordered) colour-preserving maps,
/// quotiented by the zig-zag relation, and checks that the classes biject
/// with the connected components.
pub fn clone_hom_with_oracle(
    o: &SymOperad,
    word: &Word,
    sort: &str,
) -> Result<Vec<TheoryClass>, TheoryError> {
    let classes = clone_hom(o, word, sort);

    // Nodes: (op, colour map) over every op with this output sort.
    let mut nodes: BTreeSet<(OpId, Vec<usize>)> = BTreeSet::new();
    for op in o.ops_with_output(sort) {
        let inputs = o.inputs(&op);
        let slot_choices: Vec<Vec<usize>> = inputs
            .iter()
            .map(|c| {
                (0..word.len())
                    .filter(|&j| &word[j] == c)
                    .collect::<Vec<usize>>()
            })
            .collect();
        if slot_choices.iter().any(|s| s.is_empty()) && !inputs.is_empty() {
            continue;
        }
        let maps: Vec<Vec<usize>> = if inputs.is_empty() {
            vec![vec![]]
        } else {
            slot_choices
                .iter()
                .map(|v| v.iter().copied())
                .multi_cartesian_product()
                .collect()
        };
        for g in maps {
            nodes.insert((op.clone(), g));
        }
    }

    let key = |op: &OpId, g: &[usize]| -> String {
        format!(
            "{op}@{}",
            g.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(",")
        )
    };
    let mut uf = crate::simpset::UnionFind::new(
        nodes.iter().map(|(op, g)| key(op, g)).collect::<Vec<_>>(),
    );
    for (op, g) in &nodes {
        let m = g.len();
        for u in all_perms(m) {
            let inv = perm_inverse(&u);
            // (g, o) ~ (g∘u⁻¹, o·u⁻¹)
            let op2 = o.act(op, &inv).clone();
            let g2: Vec<usize> = (0..m).map(|j| g[inv[j]]).collect();
            uf.join(&key(op, g), &key(&op2, &g2));
        }
    }

    let mut components: BTreeSet<String> = BTreeSet::new();
    for (op, g) in &nodes {
        components.insert(uf.find(&key(op, g)));
    }

    // The classes must hit each component exactly once.
    let mut hit: BTreeMap<String, TheoryClass> = BTreeMap::new();
    for class in &classes {
        let comp = uf.find(&key(&class.op, &class.f.map));
        if let Some(other) = hit.get(&comp) {
            return Err(TheoryError::OracleDisagreement(format!(
                "classes {} and {} share a colimit component",
                other.render(),
                class.render()
            )));
        }
        hit.insert(comp, class.clone());
    }
    if hit.len() != components.len() {
        return Err(TheoryError::OracleDisagreement(format!(
            "{} classes vs {} colimit components for ({}; {sort})",
            classes.len(),
            components.len(),
            word_id(word),
        )));
    }
    Ok(classes)
}

/// An arrow c̄ → d̄ of the theory: one class per entry of the target word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TheoryArrow {
    pub source: Word,
    pub target: Word,
    pub components: Vec<TheoryClass>,
}

impl TheoryArrow {
    pub fn render(&self) -> String {
        format!(
            "{} -> {} : {}",
            word_id(&self.source),
            word_id(&self.target),
            self.components
                .iter()
                .map(|c| c.render())
                .collect::<Vec<_>>()
                .join(" ")
        )
    }
}

/// The full hom set 𝕋(O)(c̄, d̄) as the product of the per-sort clone homs.
pub fn theory_hom(o: &SymOperad, source: &Word, target: &Word) -> Vec<TheoryArrow> {
    let component_sets: Vec<Vec<TheoryClass>> = target
        .iter()
        .map(|d| clone_hom(o, source, d))
        .collect();
    if component_sets.iter().any(|s| s.is_empty()) && !target.is_empty() {
        return Vec::new();
    }
    if target.is_empty() {
        return vec![TheoryArrow {
            source: source.clone(),
            target: target.clone(),
            components: vec![],
        }];
    }
    component_sets
        .iter()
        .map(|v| v.iter())
        .multi_cartesian_product()
        .map(|combo| TheoryArrow {
            source: source.clone(),
            target: target.clone(),
            components: combo.into_iter().cloned().collect(),
        })
        .collect()
}

/// The identity arrow on a word: the i-th component picks position i with
/// the identity operation.
pub fn identity_arrow(o: &SymOperad, word: &Word) -> TheoryArrow {
    TheoryArrow {
        source: word.clone(),
        target: word.clone(),
        components: word
            .iter()
            .enumerate()
            .map(|(i, c)| {
                TheoryClass::canonicalize(
                    o,
                    OrdMap::new(vec![c.clone()], word.clone(), vec![i]).unwrap(),
                    o.identity_of(c).clone(),
                )
            })
            .collect(),
    }
}

/// Composite h∘g of theory arrows (g first). Per component of h: substitute
/// the g-components selected by the representative's index map through the
/// operad composition, concatenate the index maps, reorder to monotone by a
/// stable sort acting on the operation, and canonicalize. Independence of the
/// representative choice is a property, not an assumption; `sel` lets tests
/// re-run with random representatives.
pub fn compose_theory_with(
    o: &SymOperad,
    h: &TheoryArrow,
    g: &TheoryArrow,
    sel: &mut RepSelect,
) -> Result<TheoryArrow, TheoryError> {
    if g.target != h.source {
        return Err(TheoryError::WordMismatch {
            expected: h.source.clone(),
            got: g.target.clone(),
        });
    }
    let mut components = Vec::new();
    for comp in &h.components {
        let (f, op) = sel.pick(o, comp);
        // Substitute the selected g-components.
        let picked: Vec<(OrdMap, OpId)> = f
            .map
            .iter()
            .map(|&t| sel.pick(o, &g.components[t]))
            .collect();
        let inner_ops: Vec<OpId> = picked.iter().map(|(_, q)| q.clone()).collect();
        let composed = if inner_ops.is_empty() {
            op.clone()
        } else {
            o.gamma(&op, &inner_ops).clone()
        };
        // Concatenated index map into the source of g.
        let mut flat_word: Word = Vec::new();
        let mut flat_map: Vec<usize> = Vec::new();
        for (fi, _) in &picked {
            flat_word.extend(fi.source.iter().cloned());
            flat_map.extend(fi.map.iter().copied());
        }
        // Stable sort to monotone; the permutation acts on the operation.
        let mut order: Vec<usize> = (0..flat_map.len()).collect();
        order.sort_by_key(|&i| (flat_map[i], i));
        let pi: Perm = order;
        let sorted_map: Vec<usize> = pi.iter().map(|&i| flat_map[i]).collect();
        let sorted_word: Word = pi.iter().map(|&i| flat_word[i].clone()).collect();
        let moved = o.act(&composed, &pi).clone();
        let f2 = OrdMap::new(sorted_word, g.source.clone(), sorted_map)?;
        components.push(TheoryClass::canonicalize(o, f2, moved));
    }
    Ok(TheoryArrow {
        source: g.source.clone(),
        target: h.target.clone(),
        components,
    })
}

pub fn compose_theory(
    o: &SymOperad,
    h: &TheoryArrow,
    g: &TheoryArrow,
) -> Result<TheoryArrow, TheoryError> {
    compose_theory_with(o, h, g, &mut RepSelect::Canonical)
}

/// The action of an operad morphism on theory arrows: apply the colour map to
/// words, the op map to representatives, and recanonicalize.
pub fn induced_theory_map(f: &OperadMap, arrow: &TheoryArrow) -> TheoryArrow {
    let map_word = |w: &Word| -> Word { w.iter().map(|c| f.colour_map[c].clone()).collect() };
    TheoryArrow {
        source: map_word(&arrow.source),
        target: map_word(&arrow.target),
        components: arrow
            .components
            .iter()
            .map(|cl| {
                let f2 = OrdMap::new(
                    map_word(&cl.f.source),
                    map_word(&cl.f.target),
                    cl.f.map.clone(),
                )
                .expect("colour maps preserve monotone maps");
                TheoryClass::canonicalize(&f.target, f2, f.op_map[&cl.op].clone())
            })
            .collect(),
    }
}

/// Searches 𝕋(O)(c, d̄) × 𝕋(O)(d̄, c) for a pair composing to the identity on
/// the singleton word (c); returns the least witness (r, i) with r∘i = id.
pub fn is_retract_in_theory(
    o: &SymOperad,
    colour: &str,
    word: &Word,
) -> Result<Option<(TheoryArrow, TheoryArrow)>, TheoryError> {
    let c_word: Word = vec![colour.to_string()];
    let id = identity_arrow(o, &c_word);
    for r in theory_hom(o, word, &c_word) {
        for i in theory_hom(o, &c_word, word) {
            if compose_theory(o, &r, &i)? == id {
                return Ok(Some((r, i)));
            }
        }
    }
    Ok(None)
}

/// Word-indexed finite-set data with at least the projection actions: enough
/// to decide product preservation.
pub trait ProductData {
    fn size(&self, word: &Word) -> usize;
    /// The action of the i-th projection c̄ → (c_i) on an element of X(c̄).
    fn project(&self, word: &Word, i: usize, elem: usize) -> usize;
}

/// Product preservation: X(ā) → X(a_1) × … × X(a_n) must be a bijection for
/// every word within the bound.
pub fn is_product_preserving<P: ProductData>(
    o: &SymOperad,
    x: &P,
    word_bound: usize,
) -> bool {
    for w in enumerate_words(o.colours(), word_bound) {
        let total = x.size(&w);
        let expected: usize = w.iter().map(|c| x.size(&vec![c.clone()])).product();
        if total != expected {
            return false;
        }
        let mut seen = BTreeSet::new();
        for elem in 0..total {
            let tuple: Vec<usize> = (0..w.len()).map(|i| x.project(&w, i, elem)).collect();
            if !seen.insert(tuple) {
                return false;
            }
        }
    }
    true
}

/// Full functor data on the theory: sizes plus the action of arbitrary
/// arrows.
pub trait TheoryModule: ProductData {
    fn apply(&self, arrow: &TheoryArrow, elem: usize) -> usize;
}

/// The product-preserving functor induced by a finite algebra: X(c̄) is the
/// product of the carriers, and a class [f, b̄, o] acts by selecting the
/// arguments through f and applying the structure map of o.
pub struct AlgebraModel<'a> {
    pub operad: &'a SymOperad,
    pub algebra: &'a crate::operad::FiniteAlgebra,
}

impl<'a> AlgebraModel<'a> {
    pub fn new(operad: &'a SymOperad, algebra: &'a crate::operad::FiniteAlgebra) -> Self {
        AlgebraModel { operad, algebra }
    }

    fn word_sizes(&self, word: &Word) -> Vec<usize> {
        word.iter().map(|c| self.algebra.sizes[c]).collect()
    }

    pub fn decode(&self, word: &Word, elem: usize) -> Vec<usize> {
        let sizes = self.word_sizes(word);
        let mut rest = elem;
        let mut out = vec![0; sizes.len()];
        for i in (0..sizes.len()).rev() {
            out[i] = rest % sizes[i];
            rest /= sizes[i];
        }
        out
    }

    pub fn encode(&self, word: &Word, tuple: &[usize]) -> usize {
        let sizes = self.word_sizes(word);
        let mut idx = 0;
        for (t, s) in tuple.iter().zip(&sizes) {
            idx = idx * s + t;
        }
        idx
    }
}

impl ProductData for AlgebraModel<'_> {
    fn size(&self, word: &Word) -> usize {
        self.word_sizes(word).iter().product()
    }

    fn project(&self, word: &Word, i: usize, elem: usize) -> usize {
        self.decode(word, elem)[i]
    }
}

impl TheoryModule for AlgebraModel<'_> {
    fn apply(&self, arrow: &TheoryArrow, elem: usize) -> usize {
        let args = self.decode(&arrow.source, elem);
        let out: Vec<usize> = arrow
            .components
            .iter()
            .map(|cl| {
                let selected: Vec<usize> = cl.f.map.iter().map(|&j| args[j]).collect();
                self.algebra.apply(self.operad, &cl.op, &selected)
            })
            .collect();
        self.encode(&arrow.target, &out)
    }
}

/// Raw word-indexed data for negative product-preservation tests.
pub struct RawWordData {
    pub sizes: BTreeMap<Word, usize>,
    /// (word, position) -> forward map X(word) → X((word_i))
    pub projections: BTreeMap<(Word, usize), Vec<usize>>,
}

impl ProductData for RawWordData {
    fn size(&self, word: &Word) -> usize {
        *self.sizes.get(word).unwrap_or(&0)
    }

    fn project(&self, word: &Word, i: usize, elem: usize) -> usize {
        self.projections
            .get(&(word.clone(), i))
            .map(|v| v[elem])
            .unwrap_or(0)
    }
}

/// A theory morphism: the identity on 𝕋(O), or the map induced by an operad
/// morphism.
pub enum TheoryMor {
    Identity(SymOperad),
    Induced(OperadMap),
}

impl TheoryMor {
    pub fn source_operad(&self) -> &SymOperad {
        match self {
            TheoryMor::Identity(o) => o,
            TheoryMor::Induced(f) => &f.source,
        }
    }

    pub fn target_operad(&self) -> &SymOperad {
        match self {
            TheoryMor::Identity(o) => o,
            TheoryMor::Induced(f) => &f.target,
        }
    }

    pub fn word(&self, w: &Word) -> Word {
        match self {
            TheoryMor::Identity(_) => w.clone(),
            TheoryMor::Induced(f) => w.iter().map(|c| f.colour_map[c].clone()).collect(),
        }
    }

    pub fn arrow(&self, a: &TheoryArrow) -> TheoryArrow {
        match self {
            TheoryMor::Identity(_) => a.clone(),
            TheoryMor::Induced(f) => induced_theory_map(f, a),
        }
    }
}

/// Projection arrow c̄d̄ → c̄ (or → d̄ with `second`), with identity ops.
pub fn projection_arrow(o: &SymOperad, left: &Word, right: &Word, second: bool) -> TheoryArrow {
    let mut concat = left.clone();
    concat.extend(right.iter().cloned());
    let (word, offset) = if second {
        (right.clone(), left.len())
    } else {
        (left.clone(), 0)
    };
    TheoryArrow {
        source: concat.clone(),
        target: word.clone(),
        components: word
            .iter()
            .enumerate()
            .map(|(i, c)| {
                TheoryClass::canonicalize(
                    o,
                    OrdMap::new(vec![c.clone()], concat.clone(), vec![offset + i]).unwrap(),
                    o.identity_of(c).clone(),
                )
            })
            .collect(),
    }
}

/// Diagonal arrow w → ww with identity ops.
pub fn diagonal_arrow(o: &SymOperad, word: &Word) -> TheoryArrow {
    let mut doubled = word.clone();
    doubled.extend(word.iter().cloned());
    TheoryArrow {
        source: word.clone(),
        target: doubled,
        components: (0..2 * word.len())
            .map(|i| {
                let j = i % word.len();
                TheoryClass::canonicalize(
                    o,
                    OrdMap::new(vec![word[j].clone()], word.clone(), vec![j]).unwrap(),
                    o.identity_of(&word[j]).clone(),
                )
            })
            .collect(),
    }
}

/// Product of two arrows: (α × β): uv → u′v′ with β's index maps shifted past
/// u.
pub fn product_arrow(
    o: &SymOperad,
    alpha: &TheoryArrow,
    beta: &TheoryArrow,
) -> TheoryArrow {
    let mut source = alpha.source.clone();
    source.extend(beta.source.iter().cloned());
    let mut target = alpha.target.clone();
    target.extend(beta.target.iter().cloned());
    let shift = alpha.source.len();
    let mut components = Vec::new();
    for cl in &alpha.components {
        components.push(TheoryClass::canonicalize(
            o,
            OrdMap::new(cl.f.source.clone(), source.clone(), cl.f.map.clone()).unwrap(),
            cl.op.clone(),
        ));
    }
    for cl in &beta.components {
        let map: Vec<usize> = cl.f.map.iter().map(|&j| j + shift).collect();
        components.push(TheoryClass::canonicalize(
            o,
            OrdMap::new(cl.f.source.clone(), source.clone(), map).unwrap(),
            cl.op.clone(),
        ));
    }
    TheoryArrow {
        source,
        target,
        components,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::standard_category;
    use crate::operad::{
        category_to_operad, corolla_ab, enumerate_algebras, free_operad_on_tree, operad_b,
    };
    use rand::SeedableRng;

    fn w(s: &[&str]) -> Word {
        s.iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn ordered_maps_examples() {
        let maps = ordered_colour_maps(&w(&["a", "a"]), &w(&["a", "b"]));
        assert_eq!(maps.len(), 1);
        assert_eq!(maps[0].0.map, vec![0, 0]);
        assert_eq!(maps[0].1.len(), 2); // Σ₂

        let maps = ordered_colour_maps(&w(&["a", "b"]), &w(&["a", "b"]));
        assert_eq!(maps.len(), 1);
        assert_eq!(maps[0].0.map, vec![0, 1]);
        assert_eq!(maps[0].1.len(), 1);

        assert!(ordered_colour_maps(&w(&["b", "a"]), &w(&["a", "b"])).is_empty());
    }

    #[test]
    fn clone_hom_counts() {
        let b = operad_b();
        assert_eq!(clone_hom(&b, &w(&["a"]), "b").len(), 1);
        assert_eq!(clone_hom(&b, &w(&["a", "a"]), "b").len(), 3);
        let omega = free_operad_on_tree(&corolla_ab());
        assert_eq!(clone_hom(&omega, &w(&["a"]), "r").len(), 0);
    }

    #[test]
    fn clone_hom_oracle_agrees() {
        let b = operad_b();
        for word in enumerate_words(b.colours(), 3) {
            for sort in b.colours() {
                assert!(clone_hom_with_oracle(&b, &word, sort).is_ok());
            }
        }
        let omega = free_operad_on_tree(&corolla_ab());
        for word in enumerate_words(omega.colours(), 2) {
            for sort in omega.colours() {
                assert!(clone_hom_with_oracle(&omega, &word, sort).is_ok());
            }
        }
    }

    #[test]
    fn theory_hom_counts() {
        let b = operad_b();
        assert_eq!(theory_hom(&b, &w(&["a", "a"]), &w(&["b", "b"])).len(), 9);
        assert_eq!(theory_hom(&b, &w(&["a", "a"]), &w(&[])).len(), 1);
        let omega = free_operad_on_tree(&corolla_ab());
        assert_eq!(theory_hom(&omega, &w(&["a", "b"]), &w(&["r"])).len(), 1);
    }

    #[test]
    fn product_law_holds() {
        let b = operad_b();
        for src in enumerate_words(b.colours(), 2) {
            for tgt in enumerate_words(b.colours(), 2) {
                let product: usize = tgt
                    .iter()
                    .map(|d| clone_hom(&b, &src, d).len())
                    .product();
                assert_eq!(theory_hom(&b, &src, &tgt).len(), product);
            }
        }
    }

    #[test]
    fn compose_with_identity() {
        let b = operad_b();
        let src = w(&["a", "a"]);
        let tgt = w(&["b"]);
        for h in theory_hom(&b, &src, &tgt) {
            let composed = compose_theory(&b, &h, &identity_arrow(&b, &src)).unwrap();
            assert_eq!(composed, h);
            let composed = compose_theory(&b, &identity_arrow(&b, &tgt), &h).unwrap();
            assert_eq!(composed, h);
        }
    }

    #[test]
    fn compose_diagonal_then_m() {
        let b = operad_b();
        // diagonal (a) → (a,a), then the class of m at (a,a) → (b).
        let diag = diagonal_arrow(&b, &w(&["a"]));
        let homs = theory_hom(&b, &w(&["a", "a"]), &w(&["b"]));
        let m_class = homs
            .iter()
            .find(|h| h.components[0].f.map == vec![0, 1])
            .unwrap();
        let composed = compose_theory(&b, m_class, &diag).unwrap();
        let expected = &clone_hom(&b, &w(&["a"]), "b")[0];
        assert_eq!(&composed.components[0], expected);
    }

    #[test]
    fn compose_unary_reduces_to_category() {
        let js = category_to_operad(&standard_category("Split").unwrap());
        let r_arrow = theory_hom(&js, &w(&["0"]), &w(&["1"]))
            .into_iter()
            .find(|a| a.components[0].op == "r")
            .unwrap();
        let i_arrow = theory_hom(&js, &w(&["1"]), &w(&["0"]))
            .into_iter()
            .find(|a| a.components[0].op == "i")
            .unwrap();
        let composed = compose_theory(&js, &i_arrow, &r_arrow).unwrap();
        assert_eq!(composed.components[0].op, "ir");
    }

    #[test]
    fn compose_is_associative_and_rep_independent() {
        let b = operad_b();
        let words = [w(&["a"]), w(&["a", "a"]), w(&["b"])];
        for x in &words {
            for y in &words {
                for z in &words {
                    for f in theory_hom(&b, x, y) {
                        for g in theory_hom(&b, y, z) {
                            for tgt in [w(&["b"]), w(&["a"])] {
                                for h in theory_hom(&b, z, &tgt) {
                                    let hg = compose_theory(&b, &h, &g).unwrap();
                                    let gf = compose_theory(&b, &g, &f).unwrap();
                                    let left = compose_theory(&b, &hg, &f).unwrap();
                                    let right = compose_theory(&b, &h, &gf).unwrap();
                                    assert_eq!(left, right);
                                    // Random representatives give the same class.
                                    let mut sel = RepSelect::Seeded(
                                        ChaCha8Rng::seed_from_u64(7),
                                    );
                                    let left2 =
                                        compose_theory_with(&b, &hg, &f, &mut sel).unwrap();
                                    assert_eq!(left, left2);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn induced_map_examples() {
        let b = operad_b();
        let idm = crate::operad::OperadMap::identity(&b);
        for h in theory_hom(&b, &w(&["a", "a"]), &w(&["b"])) {
            assert_eq!(induced_theory_map(&idm, &h), h);
        }

        // The leaf-swap automorphism of the free two-corolla operad.
        let omega = free_operad_on_tree(&corolla_ab());
        let swaps = crate::operad::dendroidal_nerve_at(&omega, &corolla_ab(), 100).unwrap();
        let swap = swaps
            .iter()
            .find(|m| m.colour_map["a"] == "b")
            .expect("swap exists");
        let arrows = theory_hom(&omega, &w(&["a", "b"]), &w(&["r"]));
        assert_eq!(arrows.len(), 1);
        let image = induced_theory_map(swap, &arrows[0]);
        let expected = theory_hom(&omega, &w(&["b", "a"]), &w(&["r"]));
        assert_eq!(expected.len(), 1);
        assert_eq!(image, expected[0]);
    }

    #[test]
    fn retract_search_examples() {
        let js = category_to_operad(&standard_category("Split").unwrap());
        let witness = is_retract_in_theory(&js, "1", &w(&["0"])).unwrap();
        assert!(witness.is_some());

        let b = operad_b();
        assert!(is_retract_in_theory(&b, "b", &w(&["a", "a"]))
            .unwrap()
            .is_none());
        assert!(is_retract_in_theory(&b, "a", &w(&["a"])).unwrap().is_some());
    }

    #[test]
    fn product_preservation() {
        let b = operad_b();
        let sizes: BTreeMap<Colour, usize> =
            [("a".to_string(), 2), ("b".to_string(), 2)].into();
        let algebras = enumerate_algebras(&b, &sizes, 100).unwrap();
        let model = AlgebraModel::new(&b, &algebras[0]);
        assert!(is_product_preserving(&b, &model, 2));

        // X((a,a)) of size 3 while X((a)) has 2 elements: cardinality clash.
        let mut raw_sizes = BTreeMap::new();
        raw_sizes.insert(w(&["a"]), 2);
        raw_sizes.insert(w(&["b"]), 1);
        raw_sizes.insert(w(&[]), 1);
        raw_sizes.insert(w(&["a", "a"]), 3);
        for other in enumerate_words(b.colours(), 2) {
            raw_sizes.entry(other).or_insert(1);
        }
        let raw = RawWordData {
            sizes: raw_sizes,
            projections: BTreeMap::new(),
        };
        assert!(!is_product_preserving(&b, &raw, 2));
    }

    #[test]
    fn seq_helper_arrows_typecheck() {
        let b = operad_b();
        let u = w(&["a", "b"]);
        let diag = diagonal_arrow(&b, &u);
        assert_eq!(diag.target.len(), 4);
        let p1 = projection_arrow(&b, &u, &u, false);
        let p2 = projection_arrow(&b, &u, &u, true);
        // π₁ ∘ Δ = id = π₂ ∘ Δ.
        let id = identity_arrow(&b, &u);
        assert_eq!(compose_theory(&b, &p1, &diag).unwrap(), id);
        assert_eq!(compose_theory(&b, &p2, &diag).unwrap(), id);
    }
}
