//! Free Lie algebra combinatorics: bracket words, the tensor-algebra
//! expansion oracle, recursive generating sets, the distinguished
//! multilinear families indexed by vertex subsets, and the lifting
//! predicates for Whitehead words.
//!
//! Linear independence is always decided by expanding brackets into the
//! tensor algebra over the rationals ([a,b] ↦ ab − ba) and running exact
//! elimination; no basis theory is assumed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// A leaf of a bracket word: either a Lie generator `v_i` or a map symbol
/// used to label wedge summands of fiber decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Leaf {
    /// Lie generator `v_i`.
    Gen(usize),
    /// Wedge inclusion `s_i : Σ Y_i → ⋁ Σ Y_j`.
    S(usize),
    /// Composite `t_i = s_i ∘ ev : Σ Ω X_i → ⋁ X_j`.
    T(usize),
    /// Ganea-fibration inclusion of the base summand.
    IncBase,
    /// Ganea-fibration evaluation of the looped fiber summand.
    Ev,
}

impl Leaf {
    /// The wedge-summand index the leaf involves, if any.
    pub fn support_index(&self) -> Option<usize> {
        match self {
            Leaf::Gen(i) | Leaf::S(i) | Leaf::T(i) => Some(*i),
            Leaf::IncBase | Leaf::Ev => None,
        }
    }
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leaf::Gen(i) => write!(f, "v{i}"),
            Leaf::S(i) => write!(f, "s{i}"),
            Leaf::T(i) => write!(f, "t{i}"),
            Leaf::IncBase => write!(f, "i"),
            Leaf::Ev => write!(f, "ev"),
        }
    }
}

/// A binary bracket tree over labeled leaves.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum BracketWord {
    Leaf(Leaf),
    Bracket(Box<BracketWord>, Box<BracketWord>),
}

impl BracketWord {
    pub fn gen(i: usize) -> Self {
        BracketWord::Leaf(Leaf::Gen(i))
    }

    pub fn bracket(a: BracketWord, b: BracketWord) -> Self {
        BracketWord::Bracket(Box::new(a), Box::new(b))
    }

    /// `ad^k(x)(y) = [x, [x, ... [x, y]]]` with `k` copies of `x`.
    pub fn ad_power(x: &BracketWord, y: BracketWord, k: usize) -> Self {
        let mut w = y;
        for _ in 0..k {
            w = BracketWord::bracket(x.clone(), w);
        }
        w
    }

    /// Number of leaves.
    pub fn length(&self) -> usize {
        match self {
            BracketWord::Leaf(_) => 1,
            BracketWord::Bracket(a, b) => a.length() + b.length(),
        }
    }

    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<Leaf> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Leaf>) {
        match self {
            BracketWord::Leaf(l) => out.push(*l),
            BracketWord::Bracket(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    /// Set of summand indices the leaves involve.
    pub fn support(&self) -> BTreeSet<usize> {
        self.leaves()
            .iter()
            .filter_map(Leaf::support_index)
            .collect()
    }

    /// Multiset of summand indices (index → multiplicity).
    pub fn multidegree(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for l in self.leaves() {
            if let Some(i) = l.support_index() {
                *out.entry(i).or_insert(0) += 1;
            }
        }
        out
    }

    /// True iff every leaf index appears exactly once.
    pub fn is_multilinear(&self) -> bool {
        self.multidegree().values().all(|&c| c == 1)
            && self.leaves().iter().all(|l| l.support_index().is_some())
    }

    /// Rebuild the tree with each leaf replaced via `f`, preserving shape.
    pub fn map_leaves<F>(&self, f: &mut F) -> Self
    where
        F: FnMut(Leaf) -> Leaf,
    {
        match self {
            BracketWord::Leaf(l) => BracketWord::Leaf(f(*l)),
            BracketWord::Bracket(a, b) => {
                BracketWord::bracket(a.map_leaves(f), b.map_leaves(f))
            }
        }
    }

    /// Expand into the tensor algebra: `[a,b] ↦ ab − ba` recursively.
    /// Only generator leaves are expandable.
    pub fn expand(&self) -> Result<TensorPoly> {
        match self {
            BracketWord::Leaf(Leaf::Gen(i)) => Ok(TensorPoly::monomial(vec![*i])),
            BracketWord::Leaf(_) => Err(Error::UnexpandableLeaf),
            BracketWord::Bracket(a, b) => {
                let pa = a.expand()?;
                let pb = b.expand()?;
                let ab = pa.mul(&pb);
                let ba = pb.mul(&pa);
                Ok(ab.sub(&ba))
            }
        }
    }
}

impl fmt::Display for BracketWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketWord::Leaf(l) => write!(f, "{l}"),
            BracketWord::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// An exact noncommutative polynomial: monomials are index sequences.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorPoly {
    terms: BTreeMap<Vec<usize>, BigInt>,
}

impl TensorPoly {
    pub fn monomial(word: Vec<usize>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(word, BigInt::from(1));
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &BigInt)> {
        self.terms.iter()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = ma.clone();
                m.extend_from_slice(mb);
                let e = terms.entry(m).or_insert_with(BigInt::zero);
                *e += ca * cb;
                if e.is_zero() {
                    // drop cancelled terms lazily below
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert_with(BigInt::zero);
            *e -= c;
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert_with(BigInt::zero);
            *e += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    fn divide_by_content(&mut self) {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g == BigInt::from(1) {
                return;
            }
        }
        if g.abs() > BigInt::from(1) {
            for c in self.terms.values_mut() {
                *c = &*c / &g;
            }
        }
    }

    fn leading(&self) -> Option<(&Vec<usize>, &BigInt)> {
        self.terms.iter().next()
    }
}

/// Incremental exact rank oracle: feed polynomials, read off the rank of
/// the family over the rationals.
#[derive(Debug, Default)]
pub struct RankOracle {
    /// Echelon rows keyed by leading monomial.
    rows: BTreeMap<Vec<usize>, TensorPoly>,
}

impl RankOracle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduce `p` against the echelon; if a nonzero remainder survives,
    /// absorb it and return true (the family rank grew).
    pub fn insert(&mut self, mut p: TensorPoly) -> bool {
        loop {
            let Some((lead, coeff)) = p.leading() else {
                return false;
            };
            let Some(row) = self.rows.get(lead) else {
                break;
            };
            // Cross-multiply to stay over the integers: p ← p·rc − row·pc.
            let rc = row.leading().unwrap().1.clone();
            let pc = coeff.clone();
            let mut scaled_p = TensorPoly::default();
            for (m, c) in p.terms() {
                scaled_p.terms.insert(m.clone(), c * &rc);
            }
            let mut scaled_row = TensorPoly::default();
            for (m, c) in row.terms() {
                scaled_row.terms.insert(m.clone(), c * &pc);
            }
            p = scaled_p.sub(&scaled_row);
            p.divide_by_content();
        }
        let lead = p.leading().unwrap().0.clone();
        self.rows.insert(lead, p);
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Rank of a family of bracket words by tensor-algebra expansion.
pub fn rank_of(words: &[BracketWord]) -> Result<usize> {
    let mut oracle = RankOracle::new();
    for w in words {
        oracle.insert(w.expand()?);
    }
    Ok(oracle.rank())
}

/// One stage of the recursive generating-set construction, with the
/// provenance of each word.
#[derive(Debug, Clone)]
pub struct Stage {
    pub index: usize,
    pub words: Vec<StageWord>,
}

/// A generating word with the recursion data that produced it.
#[derive(Debug, Clone)]
pub struct StageWord {
    pub word: BracketWord,
    /// The `ad` exponent applied at this stage (0 means carried over).
    pub ad_power: usize,
}

/// All stages of the recursive generating-set construction on `m` letters,
/// truncated to bracket length at most `max_len`.
#[derive(Debug, Clone)]
pub struct GeneratingSet {
    pub m: usize,
    pub max_len: usize,
    pub stages: Vec<Stage>,
}

impl GeneratingSet {
    /// Words of the final stage.
    pub fn final_words(&self) -> Vec<BracketWord> {
        self.stages
            .last()
            .map(|s| s.words.iter().map(|w| w.word.clone()).collect())
            .unwrap_or_default()
    }

    /// Final-stage words that are multilinear of full length `m`.
    pub fn multilinear_full_length(&self) -> Vec<BracketWord> {
        self.final_words()
            .into_iter()
            .filter(|w| w.length() == self.m && w.is_multilinear())
            .collect()
    }
}

/// Build the stages `W_1, ..., W_m` on letters `v_1..v_m`:
///
///   W_0 = {v_1, ..., v_m},
///   W_i = { ad^k(v_i)(x) | x ∈ W_{i−1} ∖ {v_i}, k ≥ 0 },
///
/// truncated to length ≤ `max_len`. With this orientation the letters
/// `v_{i+1}, ..., v_m` survive to stage `i` (as the `k = 0` words) and
/// every stage-`i` word of length ≥ 2 lies in the commutator subalgebra,
/// which is what the stage sets are for.
pub fn recursive_generating_set(m: usize, max_len: usize) -> GeneratingSet {
    let mut current: Vec<StageWord> = (1..=m)
        .map(|i| StageWord {
            word: BracketWord::gen(i),
            ad_power: 0,
        })
        .collect();
    let mut stages = Vec::with_capacity(m);
    for i in 1..=m {
        let vi = BracketWord::gen(i);
        let mut next: Vec<StageWord> = Vec::new();
        let mut seen: BTreeSet<BracketWord> = BTreeSet::new();
        for sw in current.iter().filter(|sw| sw.word != vi) {
            let base_len = sw.word.length();
            let mut k = 0;
            while base_len + k <= max_len {
                let w = BracketWord::ad_power(&vi, sw.word.clone(), k);
                if seen.insert(w.clone()) {
                    next.push(StageWord { word: w, ad_power: k });
                }
                k += 1;
            }
        }
        stages.push(Stage {
            index: i,
            words: next.clone(),
        });
        current = next;
    }
    GeneratingSet {
        m,
        max_len,
        stages,
    }
}

/// The distinguished multilinear family for one vertex subset: the
/// `k − 1` full-length multilinear words of the stage recursion on `k`
/// letters, relabeled to the subset.
pub fn subset_family(subset: &[usize]) -> Vec<BracketWord> {
    let k = subset.len();
    let gens = recursive_generating_set(k, k);
    gens.multilinear_full_length()
        .into_iter()
        .map(|w| {
            w.map_leaves(&mut |l| match l {
                Leaf::Gen(j) => Leaf::Gen(subset[j - 1]),
                other => other,
            })
        })
        .collect()
}

/// The full distinguished family on `m` letters, grouped by subset: for
/// each subset of size `k ≥ 2`, its `k − 1` multilinear words.
pub fn enumerate_b(m: usize) -> Vec<(Vec<usize>, Vec<BracketWord>)> {
    let mut out = Vec::new();
    for mask in 1u64..(1 << m) {
        let subset: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        if subset.len() < 2 {
            continue;
        }
        out.push((subset.clone(), subset_family(&subset)));
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    out
}

/// Whether a labeled Whitehead word lifts through the wedge-into-thin-
/// product map: it must have length at least `m` and involve every wedge
/// summand `1..m`.
pub fn lifts_through_thin(w: &BracketWord, m: usize) -> bool {
    w.length() >= m && w.support() == (1..=m).collect::<BTreeSet<_>>()
}

/// Relabel a length-`t ≥ m` word on a single space into a word on the
/// `m`-fold wedge that folds back to it: the first `m` leaves (left to
/// right) get labels `1..m`, the remaining leaves get label `m`. The
/// result always passes [`lifts_through_thin`].
pub fn fold_lift(w: &BracketWord, m: usize) -> Result<BracketWord> {
    let t = w.length();
    if t < m {
        return Err(Error::WordTooShort { length: t, m });
    }
    let mut next = 0usize;
    Ok(w.map_leaves(&mut |l| {
        next += 1;
        let idx = next.min(m);
        match l {
            Leaf::Gen(_) => Leaf::Gen(idx),
            Leaf::S(_) => Leaf::S(idx),
            Leaf::T(_) => Leaf::T(idx),
            other => other,
        }
    }))
}

/// All bracket words of exactly `length` leaves over the given generator
/// indices (every shape, every labeling). Used by desk-scale exhaustive
/// rank checks.
pub fn all_bracket_words(letters: &[usize], length: usize) -> Vec<BracketWord> {
    if length == 0 {
        return Vec::new();
    }
    if length == 1 {
        return letters.iter().map(|&i| BracketWord::gen(i)).collect();
    }
    let mut out = Vec::new();
    for left_len in 1..length {
        let lefts = all_bracket_words(letters, left_len);
        let rights = all_bracket_words(letters, length - left_len);
        for l in &lefts {
            for r in &rights {
                out.push(BracketWord::bracket(l.clone(), r.clone()));
            }
        }
    }
    out
}

/// All bracket words of total length `length` whose leaves are drawn from
/// the given generating words (each generator used whole).
pub fn bracket_span(generators: &[BracketWord], length: usize) -> Vec<BracketWord> {
    let mut by_len: BTreeMap<usize, Vec<BracketWord>> = BTreeMap::new();
    for len in 1..=length {
        let mut words: Vec<BracketWord> = generators
            .iter()
            .filter(|g| g.length() == len)
            .cloned()
            .collect();
        for left_len in 1..len {
            let rights: Vec<BracketWord> = by_len
                .get(&(len - left_len))
                .cloned()
                .unwrap_or_default();
            let lefts: Vec<BracketWord> = by_len.get(&left_len).cloned().unwrap_or_default();
            for l in &lefts {
                for r in &rights {
                    words.push(BracketWord::bracket(l.clone(), r.clone()));
                }
            }
        }
        by_len.insert(len, words);
    }
    by_len.remove(&length).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> BracketWord {
        BracketWord::gen(i)
    }

    fn br(a: BracketWord, b: BracketWord) -> BracketWord {
        BracketWord::bracket(a, b)
    }

    #[test]
    fn expand_single_generator() {
        let p = v(1).expand().unwrap();
        assert_eq!(p, TensorPoly::monomial(vec![1]));
    }

    #[test]
    fn expand_simple_bracket() {
        let p = br(v(1), v(2)).expand().unwrap();
        let expected = TensorPoly::monomial(vec![1, 2]).sub(&TensorPoly::monomial(vec![2, 1]));
        assert_eq!(p, expected);
    }

    #[test]
    fn expand_left_normed_triple() {
        let p = br(br(v(1), v(2)), v(3)).expand().unwrap();
        let expected = TensorPoly::monomial(vec![1, 2, 3])
            .sub(&TensorPoly::monomial(vec![2, 1, 3]))
            .sub(&TensorPoly::monomial(vec![3, 1, 2]))
            .add(&TensorPoly::monomial(vec![3, 2, 1]));
        assert_eq!(p, expected);
    }

    #[test]
    fn antisymmetry_collapses_rank() {
        assert_eq!(rank_of(&[br(v(1), v(2))]).unwrap(), 1);
        assert_eq!(rank_of(&[br(v(1), v(2)), br(v(2), v(1))]).unwrap(), 1);
    }

    #[test]
    fn multilinear_triple_rank_is_two() {
        let words = all_bracket_words(&[1, 2, 3], 3);
        let multilinear: Vec<BracketWord> =
            words.into_iter().filter(|w| w.is_multilinear()).collect();
        assert_eq!(rank_of(&multilinear).unwrap(), 2);
    }

    #[test]
    fn stage_two_on_two_letters() {
        let gens = recursive_generating_set(2, 3);
        let final_words: BTreeSet<BracketWord> = gens.final_words().into_iter().collect();
        let expected: BTreeSet<BracketWord> = [
            br(v(1), v(2)),
            br(v(1), br(v(1), v(2))),
            br(v(2), br(v(1), v(2))),
        ]
        .into_iter()
        .collect();
        assert_eq!(final_words, expected);
    }

    #[test]
    fn later_letters_survive_each_stage() {
        let gens = recursive_generating_set(4, 5);
        for stage in &gens.stages {
            for j in stage.index + 1..=4 {
                assert!(
                    stage.words.iter().any(|sw| sw.word == v(j)),
                    "v{} missing from stage {}",
                    j,
                    stage.index
                );
            }
        }
    }

    #[test]
    fn final_stage_words_have_length_at_least_two() {
        for m in 2..=4 {
            let gens = recursive_generating_set(m, m + 1);
            assert!(gens.final_words().iter().all(|w| w.length() >= 2));
        }
    }

    #[test]
    fn multilinear_generator_count_matches_stage_count() {
        for m in 2..=5 {
            let gens = recursive_generating_set(m, m);
            let family = gens.multilinear_full_length();
            assert_eq!(family.len(), m - 1, "m = {m}");
            assert_eq!(rank_of(&family).unwrap(), m - 1, "m = {m}");
        }
    }

    #[test]
    fn subset_family_counts_and_independence() {
        for m in 2..=5 {
            let grouped = enumerate_b(m);
            let expected_total: usize =
                (2..=m).map(|k| binom(m, k) * (k - 1)).sum();
            let total: usize = grouped.iter().map(|(_, ws)| ws.len()).sum();
            assert_eq!(total, expected_total, "m = {m}");
            for (subset, words) in &grouped {
                assert_eq!(words.len(), subset.len() - 1);
                for w in words {
                    assert_eq!(w.support().into_iter().collect::<Vec<_>>(), *subset);
                    assert!(w.is_multilinear());
                }
                assert_eq!(rank_of(words).unwrap(), subset.len() - 1);
            }
        }
    }

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        let mut num = 1usize;
        for i in 0..k {
            num = num * (n - i) / (i + 1);
        }
        num
    }

    #[test]
    fn recursion_spans_all_brackets_small() {
        // Degree-d component of the subalgebra generated by the final
        // stage equals the span of all degree-d bracket words (d >= 2).
        for m in 2..=3 {
            let letters: Vec<usize> = (1..=m).collect();
            for d in 2..=4 {
                let gens = recursive_generating_set(m, d);
                let from_stages = bracket_span(&gens.final_words(), d);
                let direct = all_bracket_words(&letters, d);
                assert_eq!(
                    rank_of(&from_stages).unwrap(),
                    rank_of(&direct).unwrap(),
                    "m = {m}, d = {d}"
                );
            }
        }
    }

    #[test]
    fn multilinear_component_rank_is_factorial() {
        for m in 2..=4 {
            let letters: Vec<usize> = (1..=m).collect();
            let multilinear: Vec<BracketWord> = all_bracket_words(&letters, m)
                .into_iter()
                .filter(|w| w.is_multilinear())
                .collect();
            let expected: usize = (1..m).product();
            assert_eq!(rank_of(&multilinear).unwrap(), expected, "m = {m}");
        }
    }

    #[test]
    fn thin_lifting_predicate() {
        let w = br(BracketWord::Leaf(Leaf::S(1)), BracketWord::Leaf(Leaf::S(2)));
        assert!(lifts_through_thin(&w, 2));
        let w_bad = br(
            BracketWord::Leaf(Leaf::S(1)),
            br(BracketWord::Leaf(Leaf::S(1)), BracketWord::Leaf(Leaf::S(1))),
        );
        assert!(!lifts_through_thin(&w_bad, 2));
        let w3 = br(
            br(BracketWord::Leaf(Leaf::S(1)), BracketWord::Leaf(Leaf::S(2))),
            BracketWord::Leaf(Leaf::S(3)),
        );
        assert!(lifts_through_thin(&w3, 3));
        assert!(!lifts_through_thin(&w3, 4));
    }

    #[test]
    fn fold_lift_labels_leaves_in_order() {
        let w2 = br(v(1), v(1));
        let lifted = fold_lift(&w2, 2).unwrap();
        assert_eq!(
            lifted.leaves(),
            vec![Leaf::Gen(1), Leaf::Gen(2)]
        );
        let w3 = br(v(1), br(v(1), v(1)));
        let lifted = fold_lift(&w3, 2).unwrap();
        assert_eq!(
            lifted.leaves(),
            vec![Leaf::Gen(1), Leaf::Gen(2), Leaf::Gen(2)]
        );
        assert!(lifts_through_thin(&lifted, 2));
        assert!(fold_lift(&v(1), 2).is_err());
    }

    #[test]
    fn display_is_bracketed() {
        let w = br(v(1), br(v(1), v(2)));
        assert_eq!(w.to_string(), "[v1,[v1,v2]]");
    }
}
