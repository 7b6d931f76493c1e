//! Labeled wedge decompositions of classical fibers: the fiber of a wedge
//! into a product with Whitehead-word labels, the half-smash fiber of a
//! pinch map, the iterated pinch tower for wedges of suspensions, and the
//! fiber of a wedge into a thin product.
//!
//! Each summand carries a bracket word over map symbols recording which
//! iterated Whitehead product includes it. Labels are opaque trees: they
//! are never simplified, because the decompositions fix specific
//! bracketings. Summands arising from distinct ordered expansion tuples
//! are kept as distinct entries, so the container is a sequence, not a
//! multiset.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::freelie::{subset_family, BracketWord, Leaf};
use crate::series::PoincareSeries;
use crate::wedge::{Atom, FormalWedge, SmashWord, SpaceAssignment};

/// One summand: a suspended smash word plus its Whitehead-word label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledWord {
    pub word: SmashWord,
    pub label: BracketWord,
}

/// A finite wedge of labeled summands.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabeledWedge {
    pub cap: usize,
    pub entries: Vec<LabeledWord>,
}

impl LabeledWedge {
    pub fn new(cap: usize) -> Self {
        Self {
            cap,
            entries: Vec::new(),
        }
    }

    fn push(&mut self, word: SmashWord, label: BracketWord) {
        if word.min_degree() <= self.cap {
            self.entries.push(LabeledWord { word, label });
        }
    }

    /// Canonical entry order: by word, then by label.
    fn normalize(&mut self) {
        self.entries
            .sort_by(|a, b| a.word.cmp(&b.word).then_with(|| a.label.cmp(&b.label)));
    }

    /// Forget labels, keeping one multiplicity unit per entry.
    pub fn to_formal_wedge(&self) -> FormalWedge {
        let mut out = FormalWedge::empty(self.cap);
        for e in &self.entries {
            out.add_word(e.word.clone(), BigInt::one());
        }
        out
    }

    pub fn series(&self, assignment: &SpaceAssignment, reduced: bool) -> Result<PoincareSeries> {
        self.to_formal_wedge().series(assignment, reduced)
    }

    pub fn loop_series(&self, assignment: &SpaceAssignment) -> Result<PoincareSeries> {
        self.to_formal_wedge().loop_series(assignment)
    }

    /// Every entry's label multidegree must equal its word's atom support
    /// multidegree (one label leaf per indexed smash factor).
    pub fn labels_match_words(&self) -> bool {
        self.entries.iter().all(|e| {
            let mut word_multi = std::collections::BTreeMap::new();
            for a in e.word.atoms() {
                if let Some(i) = a.support_index() {
                    *word_multi.entry(i).or_insert(0usize) += 1;
                }
            }
            e.label.multidegree() == word_multi
        })
    }
}

/// The fiber of the inclusion of a wedge into a product, as a labeled
/// wedge: for every subset `i_1 < ... < i_k` of size `k ≥ 2` there are
/// `k − 1` summands `Σ(ΩX_{i_1} ∧ ... ∧ ΩX_{i_k})`, labeled by the
/// distinguished multilinear family of the subset with `v_j ↦ t_{i_j}`.
pub fn porter_fiber(m: usize, assignment: &SpaceAssignment) -> Result<LabeledWedge> {
    let mut out = LabeledWedge::new(assignment.cap);
    for mask in 1u64..(1 << m) {
        let subset: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        if subset.len() < 2 {
            continue;
        }
        let atoms: Vec<Atom> = subset.iter().map(|&i| Atom::LoopBase(i)).collect();
        let word = SmashWord::new(1, atoms, assignment)?;
        for lie_word in subset_family(&subset) {
            let label = lie_word.map_leaves(&mut |l| match l {
                Leaf::Gen(i) => Leaf::T(i),
                other => other,
            });
            out.push(word.clone(), label);
        }
    }
    out.normalize();
    Ok(out)
}

/// The fiber of the pinch map off a wedge summand, as a labeled wedge:
/// `B ∨ ⋁_{n ≥ 1} B ∧ (C')^{(n)}` for `C = Σ C'` a wedge of suspensions.
/// Bare summands keep the inclusion label; a summand with `n` smashed
/// copies of `C'` words gets the `n`-fold iterated bracket of the
/// evaluation symbol on the inclusion symbol.
pub fn ganea_fiber(b: &FormalWedge, c: &FormalWedge) -> Result<LabeledWedge> {
    if !b.is_suspension() {
        return Err(Error::NotASuspension);
    }
    let base: Vec<(SmashWord, BracketWord)> = b
        .words()
        .flat_map(|(w, mult)| {
            let copies = usize::try_from(mult.clone()).unwrap_or(usize::MAX);
            std::iter::repeat_n((w.clone(), BracketWord::Leaf(Leaf::IncBase)), copies)
        })
        .collect();
    let c_desusp: Vec<SmashWord> = c
        .words()
        .flat_map(|(w, mult)| {
            let copies = usize::try_from(mult.clone()).unwrap_or(usize::MAX);
            std::iter::repeat_n(w.clone(), copies)
        })
        .map(|w| w.desuspend())
        .collect::<Result<_>>()?;
    let ev = BracketWord::Leaf(Leaf::Ev);
    let mut out = LabeledWedge::new(b.cap.min(c.cap));
    let mut layer = base.clone();
    for (w, l) in &base {
        out.push(w.clone(), l.clone());
    }
    while !layer.is_empty() {
        let mut next = Vec::new();
        for (w, l) in &layer {
            for cw in &c_desusp {
                let smashed = w.smash(cw);
                if smashed.min_degree() > out.cap {
                    continue;
                }
                let label = BracketWord::bracket(ev.clone(), l.clone());
                out.push(smashed.clone(), label.clone());
                next.push((smashed, label));
            }
        }
        layer = next;
    }
    out.normalize();
    Ok(out)
}

/// Check that the assignment space at every index `1..=m` is a suspension
/// candidate usable as a `Y_i` atom (positive connectivity).
fn check_atoms(m: usize, assignment: &SpaceAssignment) -> Result<()> {
    for i in 1..=m {
        assignment.connectivity(Atom::Base(i))?;
    }
    Ok(())
}

/// The assignment whose space at each index is the suspension of the
/// given one (series shifted up by one degree). Used to compare a
/// decomposition in terms of the `Y_i` with one in terms of `X_i = Σ Y_i`.
pub fn suspended_assignment(assignment: &SpaceAssignment) -> SpaceAssignment {
    let mut out = SpaceAssignment::new(assignment.cap);
    for i in assignment.indices() {
        let base = assignment.base_reduced(i).unwrap().shift(1);
        out.assign_series(i, base);
    }
    out
}

/// The iterated pinch tower for a wedge of suspensions `⋁ Σ Y_i`, with
/// the spaces `Y_i` held by the assignment: at step `t` the bare summand
/// `Σ Y_t` is removed and every remaining summand is expanded by smash
/// powers of `Y_t`, each power bracketing the inclusion symbol `s_t` onto
/// the label from the left. The final stage decomposes the same fiber as
/// [`porter_fiber`] of the suspended spaces, and the two agree at the
/// series level.
pub fn dm_tower(m: usize, assignment: &SpaceAssignment) -> Result<LabeledWedge> {
    check_atoms(m, assignment)?;
    let cap = assignment.cap;
    let mut entries: Vec<(SmashWord, BracketWord)> = (1..=m)
        .map(|i| {
            Ok((
                SmashWord::new(1, vec![Atom::Base(i)], assignment)?,
                BracketWord::Leaf(Leaf::S(i)),
            ))
        })
        .collect::<Result<_>>()?;
    for t in 1..=m {
        let bare_word = SmashWord::new(1, vec![Atom::Base(t)], assignment)?;
        let bare_label = BracketWord::Leaf(Leaf::S(t));
        let y_t = SmashWord::new(0, vec![Atom::Base(t)], assignment)?;
        let s_t = BracketWord::Leaf(Leaf::S(t));
        let mut next = Vec::new();
        for (w, l) in entries
            .iter()
            .filter(|(w, l)| !(*w == bare_word && *l == bare_label))
        {
            let mut expanded = w.clone();
            let mut label = l.clone();
            loop {
                if expanded.min_degree() > cap {
                    break;
                }
                next.push((expanded.clone(), label.clone()));
                expanded = expanded.smash(&y_t);
                label = BracketWord::bracket(s_t.clone(), label);
            }
        }
        entries = next;
    }
    let mut out = LabeledWedge::new(cap);
    for (w, l) in entries {
        out.push(w, l);
    }
    out.normalize();
    Ok(out)
}

/// Which decomposition the thin-product fiber starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThinFlavor {
    /// Arbitrary spaces: start from the looped-space fiber decomposition
    /// (labels over the composites `t_j`).
    General,
    /// Spaces that are suspensions of the assigned ones: start from the
    /// pinch tower (labels over the inclusions `s_j`).
    Refined,
}

/// The fiber of the wedge of the `m` spaces mapping into their thin
/// product, as a labeled wedge. Every output word involves every index
/// and its label passes the thin-product lifting test (length at least
/// `m`, full support).
pub fn thin_fiber(
    m: usize,
    assignment: &SpaceAssignment,
    flavor: ThinFlavor,
) -> Result<LabeledWedge> {
    let start = match flavor {
        ThinFlavor::General => porter_fiber(m, assignment)?,
        ThinFlavor::Refined => dm_tower(m, assignment)?,
    };
    labeled_tower(start, m)
}

/// Run the vertex-by-vertex fiber tower on a labeled wedge: at each step
/// split off the summands not involving the vertex and expand the rest by
/// their smash powers, bracketing each split-off label onto the carried
/// label from the left.
fn labeled_tower(start: LabeledWedge, m: usize) -> Result<LabeledWedge> {
    let cap = start.cap;
    let mut entries: Vec<(SmashWord, BracketWord)> = start
        .entries
        .into_iter()
        .map(|e| (e.word, e.label))
        .collect();
    for j in 1..=m {
        let (b, c): (Vec<_>, Vec<_>) = entries
            .into_iter()
            .partition(|(w, _)| w.support().contains(&j));
        let c_desusp: Vec<(SmashWord, BracketWord)> = c
            .into_iter()
            .map(|(w, l)| Ok((w.desuspend()?, l)))
            .collect::<Result<_>>()?;
        let mut g = b.clone();
        let mut layer = b;
        while !layer.is_empty() {
            let mut next = Vec::new();
            for (w, l) in &layer {
                for (cw, cl) in &c_desusp {
                    let smashed = w.smash(cw);
                    if smashed.min_degree() > cap {
                        continue;
                    }
                    let label = BracketWord::bracket(cl.clone(), l.clone());
                    next.push((smashed, label));
                }
            }
            g.extend(next.iter().cloned());
            layer = next;
        }
        entries = g;
    }
    let mut out = LabeledWedge::new(cap);
    for (w, l) in entries {
        out.push(w, l);
    }
    out.normalize();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::lifts_through_thin;
    use crate::series::james_loop_series;

    fn spheres(m: usize, d: usize, cap: usize) -> SpaceAssignment {
        let mut a = SpaceAssignment::new(cap);
        for i in 1..=m {
            a.assign_sphere(i, d);
        }
        a
    }

    #[test]
    fn porter_two_spaces_single_summand() {
        let a = spheres(2, 2, 12);
        let fiber = porter_fiber(2, &a).unwrap();
        assert_eq!(fiber.entries.len(), 1);
        let e = &fiber.entries[0];
        assert_eq!(e.word.susp(), 1);
        assert_eq!(e.word.atoms(), &[Atom::LoopBase(1), Atom::LoopBase(2)]);
        assert_eq!(e.label.to_string(), "[t1,t2]");
    }

    #[test]
    fn porter_three_spaces_multiplicities() {
        let a = spheres(3, 2, 12);
        let fiber = porter_fiber(3, &a).unwrap();
        // 3 pair summands (one each) + 2 triple summands.
        assert_eq!(fiber.entries.len(), 5);
        let triples = fiber
            .entries
            .iter()
            .filter(|e| e.word.atoms().len() == 3)
            .count();
        assert_eq!(triples, 2);
        assert!(fiber.labels_match_words());
    }

    #[test]
    fn porter_series_identity_for_two_spheres() {
        // P(Ω(X1 ∨ X2)) = P(ΩX1) P(ΩX2) P(ΩΓ) for X_i = S^2.
        let a = spheres(2, 2, 24);
        let fiber = porter_fiber(2, &a).unwrap();
        let loop_gamma = fiber.loop_series(&a).unwrap();
        let loop_x = james_loop_series(&PoincareSeries::monomial(1, 24)).unwrap();
        let lhs = james_loop_series(&PoincareSeries::from_ints(&[0, 2], 24)).unwrap();
        let rhs = loop_x.mul(&loop_x).mul(&loop_gamma);
        assert_eq!(lhs.truncated(rhs.cap()), rhs);
    }

    #[test]
    fn ganea_fiber_james_expansion() {
        // B = ΣX (X = S^1), C = ΣY (Y = S^1): summands ΣX ∧ Y^(n) with
        // n-fold iterated bracket labels.
        let a = spheres(2, 1, 8);
        let mut b = FormalWedge::empty(8);
        b.add_word(
            SmashWord::new(1, vec![Atom::Base(1)], &a).unwrap(),
            BigInt::one(),
        );
        let mut c = FormalWedge::empty(8);
        c.add_word(
            SmashWord::new(1, vec![Atom::Base(2)], &a).unwrap(),
            BigInt::one(),
        );
        let fiber = ganea_fiber(&b, &c).unwrap();
        // min degrees 2,3,...,8: the bare ΣX plus n = 1..6.
        assert_eq!(fiber.entries.len(), 7);
        assert_eq!(fiber.entries[0].label.to_string(), "i");
        assert_eq!(fiber.entries[1].label.to_string(), "[ev,i]");
        assert_eq!(fiber.entries[2].label.to_string(), "[ev,[ev,i]]");
        // Series identity: P̃(fiber) = P̃(B) · P(ΩC).
        let lhs = fiber.series(&a, true).unwrap();
        let rhs = b
            .series(&a, true)
            .unwrap()
            .mul(&james_loop_series(&PoincareSeries::monomial(1, 8)).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ganea_fiber_with_trivial_cofactor_is_b() {
        let a = spheres(1, 3, 10);
        let mut b = FormalWedge::empty(10);
        b.add_word(
            SmashWord::new(1, vec![Atom::Base(1)], &a).unwrap(),
            BigInt::one(),
        );
        let fiber = ganea_fiber(&b, &FormalWedge::empty(10)).unwrap();
        assert_eq!(fiber.entries.len(), 1);
        assert_eq!(fiber.to_formal_wedge(), {
            let mut w = b.clone();
            w.ambient_susp = 0;
            w
        });
    }

    #[test]
    fn dm_tower_single_summand_is_empty() {
        let a = spheres(1, 1, 8);
        assert!(dm_tower(1, &a).unwrap().entries.is_empty());
    }

    #[test]
    fn dm_tower_two_circles_matches_porter_series() {
        let a = spheres(2, 1, 8);
        let d = dm_tower(2, &a).unwrap();
        // Words Σ Y1^(k1) ∧ Y2^(k2) with k1, k2 ≥ 1.
        for e in &d.entries {
            let multi = e.label.multidegree();
            assert!(multi.get(&1).copied().unwrap_or(0) >= 1);
            assert!(multi.get(&2).copied().unwrap_or(0) >= 1);
        }
        assert!(d.labels_match_words());
        let suspended = suspended_assignment(&a);
        let porter = porter_fiber(2, &suspended).unwrap();
        assert_eq!(
            d.series(&a, true).unwrap(),
            porter.series(&suspended, true).unwrap()
        );
    }

    #[test]
    fn dm_tower_three_circles_matches_porter_series() {
        let a = spheres(3, 1, 9);
        let d = dm_tower(3, &a).unwrap();
        let suspended = suspended_assignment(&a);
        let porter = porter_fiber(3, &suspended).unwrap();
        assert_eq!(
            d.series(&a, true).unwrap(),
            porter.series(&suspended, true).unwrap()
        );
    }

    #[test]
    fn thin_fiber_general_two_spaces() {
        let a = spheres(2, 2, 10);
        let fiber = thin_fiber(2, &a, ThinFlavor::General).unwrap();
        assert!(!fiber.entries.is_empty());
        for e in &fiber.entries {
            assert!(lifts_through_thin(&e.label, 2), "label {}", e.label);
            assert!(e.word.support().len() == 2);
        }
        assert!(fiber.labels_match_words());
        // The first summand is the base fiber summand itself.
        assert_eq!(fiber.entries[0].label.to_string(), "[t1,t2]");
    }

    #[test]
    fn thin_fiber_refined_labels_lift() {
        for m in 2..=3 {
            let a = spheres(m, 1, 8);
            let fiber = thin_fiber(m, &a, ThinFlavor::Refined).unwrap();
            assert!(!fiber.entries.is_empty(), "m = {m}");
            for e in &fiber.entries {
                assert!(lifts_through_thin(&e.label, m), "m = {m}, label {}", e.label);
            }
            assert!(fiber.labels_match_words());
        }
    }

    #[test]
    fn thin_fiber_series_matches_polyprod_tower() {
        // The labeled tower and the unlabeled one must produce the same
        // series for the same thin-product fiber.
        let a = spheres(2, 2, 10);
        let fiber = thin_fiber(2, &a, ThinFlavor::General).unwrap();
        let ts = crate::polyprod::thin_product_series(2, &a).unwrap();
        let fiber_loop = fiber.loop_series(&a).unwrap();
        assert_eq!(fiber_loop.truncated(ts.fiber.cap()), ts.fiber);
    }
}
