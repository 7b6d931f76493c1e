//! Formal wedges of suspended smash words.
//!
//! A homotopy type that is a wedge of suspensions of smash products is
//! modeled as a finite multiset of [`SmashWord`]s. Atoms are symbolic
//! (`Base(i)`, `LoopBase(i)`, `Sphere(d)`); their homology series live in a
//! separate [`SpaceAssignment`], so words stay cheap to copy, compare and
//! deduplicate. Every operation prunes words whose least possible degree
//! exceeds the cap, which keeps infinite James-style expansions finite.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::{james_loop_series, PoincareSeries};

/// A symbolic smash-factor atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Atom {
    /// The space assigned to index `i` (the `X_i` of an instance).
    Base(usize),
    /// The loop space of the space assigned to index `i`.
    LoopBase(usize),
    /// A fixed sphere `S^d`, `d >= 1`.
    Sphere(usize),
}

impl Atom {
    /// The index this atom contributes to a word's support, if any.
    pub fn support_index(&self) -> Option<usize> {
        match self {
            Atom::Base(i) | Atom::LoopBase(i) => Some(*i),
            Atom::Sphere(_) => None,
        }
    }
}

/// Homology data for the indexed atoms: per index, the reduced series of
/// the base space and (when needed) of its loop space.
#[derive(Debug, Clone, Default)]
pub struct SpaceAssignment {
    spaces: BTreeMap<usize, SpaceData>,
    pub cap: usize,
}

#[derive(Debug, Clone)]
struct SpaceData {
    base_reduced: PoincareSeries,
    loop_reduced: Option<PoincareSeries>,
}

impl SpaceAssignment {
    pub fn new(cap: usize) -> Self {
        Self {
            spaces: BTreeMap::new(),
            cap,
        }
    }

    /// Assign `X_i = S^d`.
    pub fn assign_sphere(&mut self, i: usize, d: usize) {
        self.spaces.insert(
            i,
            SpaceData {
                base_reduced: PoincareSeries::monomial(d, self.cap),
                loop_reduced: None,
            },
        );
    }

    /// Assign `X_i` by its reduced series.
    pub fn assign_series(&mut self, i: usize, reduced: PoincareSeries) {
        self.spaces.insert(
            i,
            SpaceData {
                base_reduced: reduced.truncated(self.cap),
                loop_reduced: None,
            },
        );
    }

    /// Supply the reduced series of `Ω X_i` explicitly (needed when `X_i`
    /// is not a suspension, e.g. infinite complex projective space).
    pub fn assign_loop_series(&mut self, i: usize, reduced: PoincareSeries) -> Result<()> {
        let data = self.spaces.get_mut(&i).ok_or(Error::MissingSpace(i))?;
        data.loop_reduced = Some(reduced.truncated(self.cap));
        Ok(())
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.spaces.keys().copied()
    }

    pub fn base_reduced(&self, i: usize) -> Result<&PoincareSeries> {
        self.spaces
            .get(&i)
            .map(|d| &d.base_reduced)
            .ok_or(Error::MissingSpace(i))
    }

    /// Reduced series of `Ω X_i`: explicit if supplied, otherwise derived
    /// from the James splitting when `X_i` is a suspension (its series is
    /// divisible by `t`).
    pub fn loop_reduced(&self, i: usize) -> Result<PoincareSeries> {
        let data = self.spaces.get(&i).ok_or(Error::MissingSpace(i))?;
        if let Some(s) = &data.loop_reduced {
            return Ok(s.clone());
        }
        let desusp = data
            .base_reduced
            .unshift(1)
            .map_err(|_| Error::MissingLoopSeries(i))?;
        let full = james_loop_series(&desusp)?;
        Ok(full.sub(&PoincareSeries::one(full.cap())))
    }

    /// Reduced series of an atom.
    pub fn atom_reduced(&self, atom: Atom) -> Result<PoincareSeries> {
        match atom {
            Atom::Sphere(d) => Ok(PoincareSeries::monomial(d, self.cap)),
            Atom::Base(i) => Ok(self.base_reduced(i)?.clone()),
            Atom::LoopBase(i) => self.loop_reduced(i),
        }
    }

    /// Least degree with nonzero reduced rank. Smash words require every
    /// atom to have connectivity at least 1.
    pub fn connectivity(&self, atom: Atom) -> Result<usize> {
        let series = self.atom_reduced(atom)?;
        match series.min_degree() {
            Some(0) | None => Err(Error::DisconnectedAtom(format!("{atom:?}"))),
            Some(c) => Ok(c),
        }
    }
}

/// A suspended smash product of atoms: `Σ^susp (a_1 ∧ ... ∧ a_k)`.
///
/// Atoms are kept sorted, so equal words compare equal regardless of how
/// they were built. `min_degree` caches `susp` plus the total atom
/// connectivity; the derived ordering therefore sorts by least possible
/// degree first, which is the canonical output order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SmashWord {
    min_degree: usize,
    susp: usize,
    atoms: Vec<Atom>,
}

impl SmashWord {
    pub fn new(susp: usize, mut atoms: Vec<Atom>, assignment: &SpaceAssignment) -> Result<Self> {
        atoms.sort_unstable();
        let mut min_degree = susp;
        for &a in &atoms {
            min_degree += assignment.connectivity(a)?;
        }
        Ok(Self {
            min_degree,
            susp,
            atoms,
        })
    }

    pub fn susp(&self) -> usize {
        self.susp
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn min_degree(&self) -> usize {
        self.min_degree
    }

    /// The set of assigned-space indices appearing among the atoms.
    pub fn support(&self) -> BTreeSet<usize> {
        self.atoms.iter().filter_map(Atom::support_index).collect()
    }

    /// `t^susp · Π series(atom)`, truncated at the assignment cap.
    pub fn series(&self, assignment: &SpaceAssignment) -> Result<PoincareSeries> {
        let mut s = PoincareSeries::monomial(self.susp, assignment.cap);
        for &a in &self.atoms {
            s = s.mul(&assignment.atom_reduced(a)?);
        }
        Ok(s)
    }

    /// Smash product: suspensions add, atoms merge.
    pub fn smash(&self, other: &Self) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        atoms.sort_unstable();
        Self {
            min_degree: self.min_degree + other.min_degree,
            susp: self.susp + other.susp,
            atoms,
        }
    }

    /// Remove one suspension.
    pub fn desuspend(&self) -> Result<Self> {
        if self.susp == 0 {
            return Err(Error::NotASuspension);
        }
        Ok(Self {
            min_degree: self.min_degree - 1,
            susp: self.susp - 1,
            atoms: self.atoms.clone(),
        })
    }
}

/// A finite multiset of smash words with exact multiplicities, truncated at
/// a cap: words whose least possible degree exceeds the cap are dropped.
///
/// `ambient_susp` records how many of each word's suspensions belong to an
/// ambient suspension of the whole wedge (used by the splitting that
/// produces `Σ`-level decompositions), so removing it is a checked
/// operation rather than a silent shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalWedge {
    pub cap: usize,
    pub ambient_susp: usize,
    words: BTreeMap<SmashWord, BigInt>,
}

impl FormalWedge {
    pub fn empty(cap: usize) -> Self {
        Self {
            cap,
            ambient_susp: 0,
            words: BTreeMap::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Add `mult` copies of a word, pruning past the cap.
    pub fn add_word(&mut self, word: SmashWord, mult: BigInt) {
        if word.min_degree() > self.cap || mult.is_zero() {
            return;
        }
        let entry = self.words.entry(word).or_insert_with(BigInt::zero);
        *entry += mult;
        if entry.is_zero() {
            // keep the multiset free of zero entries
            self.words.retain(|_, m| !m.is_zero());
        }
    }

    pub fn words(&self) -> impl Iterator<Item = (&SmashWord, &BigInt)> {
        self.words.iter()
    }

    /// Total number of words counted with multiplicity (multiplicities in
    /// this crate are nonnegative and small unless caps are large).
    pub fn word_count(&self) -> BigInt {
        self.words.values().sum()
    }

    /// True iff every word has at least one suspension.
    pub fn is_suspension(&self) -> bool {
        self.words.keys().all(|w| w.susp() >= 1)
    }

    /// Unreduced series: `1 + Σ mult · series(word)`. With `reduced` the
    /// leading 1 is omitted.
    pub fn series(&self, assignment: &SpaceAssignment, reduced: bool) -> Result<PoincareSeries> {
        let cap = self.cap.min(assignment.cap);
        let mut s = if reduced {
            PoincareSeries::zero(cap)
        } else {
            PoincareSeries::one(cap)
        };
        for (w, mult) in &self.words {
            let ws = w.series(assignment)?.truncated(cap);
            let scaled = PoincareSeries::from_coeffs(ws.coeffs().iter().map(|c| c * mult), cap);
            s = s.add(&scaled);
        }
        Ok(s)
    }

    /// Series of the loop space of this wedge, which must be a wedge of
    /// suspensions: James applied to the desuspended reduced series.
    ///
    /// A wedge truncated at `cap` (words of least degree beyond `cap` are
    /// pruned) determines its loop series only up to `cap − 1`: the pruned
    /// words desuspend into degree `cap`. The result is capped
    /// accordingly, so identities between loop series stay exact.
    pub fn loop_series(&self, assignment: &SpaceAssignment) -> Result<PoincareSeries> {
        let cap = self.cap.min(assignment.cap);
        let mut desusp = PoincareSeries::zero(cap);
        for (w, mult) in &self.words {
            let d = w.desuspend()?;
            let ws = d.series(assignment)?.truncated(cap);
            let scaled = PoincareSeries::from_coeffs(ws.coeffs().iter().map(|c| c * mult), cap);
            desusp = desusp.add(&scaled);
        }
        Ok(james_loop_series(&desusp)?.truncated(cap.saturating_sub(1)))
    }

    /// Re-truncate every word to a smaller cap.
    pub fn truncated(&self, new_cap: usize) -> Self {
        let mut out = Self::empty(new_cap.min(self.cap));
        out.ambient_susp = self.ambient_susp;
        for (w, m) in &self.words {
            out.add_word(w.clone(), m.clone());
        }
        out
    }

    /// Remove the ambient suspension from every word.
    pub fn desuspend_ambient(&self) -> Result<Self> {
        if self.ambient_susp == 0 {
            return Err(Error::NoAmbientSuspension);
        }
        let mut out = Self::empty(self.cap);
        out.ambient_susp = self.ambient_susp - 1;
        for (w, m) in &self.words {
            out.add_word(w.desuspend()?, m.clone());
        }
        Ok(out)
    }

    /// Split by a support test: `(words passing, words failing)`.
    pub fn partition<F>(&self, mut pred: F) -> (Self, Self)
    where
        F: FnMut(&SmashWord) -> bool,
    {
        let mut yes = Self::empty(self.cap);
        let mut no = Self::empty(self.cap);
        yes.ambient_susp = self.ambient_susp;
        no.ambient_susp = self.ambient_susp;
        for (w, m) in &self.words {
            if pred(w) {
                yes.add_word(w.clone(), m.clone());
            } else {
                no.add_word(w.clone(), m.clone());
            }
        }
        (yes, no)
    }
}

/// The half-smash expansion `B ⋊ Ω C` for a wedge `C = Σ C'` of
/// suspensions: `B ∨ ⋁_{n≥1} B ∧ (C')^{(n)}`, truncated at the cap.
///
/// Smash powers of `C'` expand over ordered tuples of its words, so a wedge
/// `C'` with several summands contributes multinomially. Pruning by least
/// possible degree terminates the expansion: every `C'` word has positive
/// connectivity.
pub fn half_smash_expand(b: &FormalWedge, c: &FormalWedge) -> Result<FormalWedge> {
    if !b.is_suspension() {
        return Err(Error::NotASuspension);
    }
    let cap = b.cap.min(c.cap);
    let c_desusp: Vec<(SmashWord, BigInt)> = c
        .words()
        .map(|(w, m)| Ok((w.desuspend()?, m.clone())))
        .collect::<Result<_>>()?;
    let mut out = FormalWedge::empty(cap);
    let mut layer: Vec<(SmashWord, BigInt)> = Vec::new();
    for (w, m) in b.words() {
        out.add_word(w.clone(), m.clone());
        layer.push((w.clone(), m.clone()));
    }
    while !layer.is_empty() {
        let mut next: Vec<(SmashWord, BigInt)> = Vec::new();
        for (w, m) in &layer {
            for (cw, cm) in &c_desusp {
                let smashed = w.smash(cw);
                if smashed.min_degree() > cap {
                    continue;
                }
                next.push((smashed, m * cm));
            }
        }
        for (w, m) in &next {
            out.add_word(w.clone(), m.clone());
        }
        layer = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use num_traits::One;

    use super::*;

    fn spheres(dims: &[(usize, usize)], cap: usize) -> SpaceAssignment {
        let mut a = SpaceAssignment::new(cap);
        for &(i, d) in dims {
            a.assign_sphere(i, d);
        }
        a
    }

    #[test]
    fn smash_adds_suspensions_and_merges_atoms() {
        let a = spheres(&[(1, 1), (2, 1)], 16);
        let w1 = SmashWord::new(1, vec![Atom::Base(1)], &a).unwrap();
        let w2 = SmashWord::new(0, vec![Atom::Base(2)], &a).unwrap();
        let s = w1.smash(&w2);
        assert_eq!(s.susp(), 1);
        assert_eq!(s.atoms(), &[Atom::Base(1), Atom::Base(2)]);
        assert_eq!(s.support().into_iter().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn smash_of_suspended_circles_has_degree_four_series() {
        let a = SpaceAssignment::new(16);
        let w = SmashWord::new(1, vec![Atom::Sphere(1)], &a).unwrap();
        let s = w.smash(&w);
        assert_eq!(s.susp(), 2);
        assert_eq!(s.series(&a).unwrap(), PoincareSeries::monomial(4, 16));
    }

    #[test]
    fn smash_is_commutative_and_associative() {
        let a = spheres(&[(1, 1), (2, 2), (3, 3)], 32);
        let w1 = SmashWord::new(1, vec![Atom::Base(1)], &a).unwrap();
        let w2 = SmashWord::new(2, vec![Atom::Base(2), Atom::Sphere(1)], &a).unwrap();
        let w3 = SmashWord::new(0, vec![Atom::LoopBase(3)], &a).unwrap();
        assert_eq!(w1.smash(&w2), w2.smash(&w1));
        assert_eq!(w1.smash(&w2).smash(&w3), w1.smash(&w2.smash(&w3)));
    }

    #[test]
    fn loop_base_series_derived_by_james() {
        // X = S^2, ΩX has series 1/(1-t); reduced: t + t^2 + ...
        let a = spheres(&[(1, 2)], 6);
        let got = a.loop_reduced(1).unwrap();
        assert_eq!(got, PoincareSeries::from_ints(&[0, 1, 1, 1, 1, 1, 1], 6));
    }

    #[test]
    fn half_smash_with_empty_c_is_b() {
        let a = SpaceAssignment::new(16);
        let mut b = FormalWedge::empty(16);
        b.add_word(SmashWord::new(3, vec![], &a).unwrap(), BigInt::from(1));
        let got = half_smash_expand(&b, &FormalWedge::empty(16)).unwrap();
        assert_eq!(got, b);
    }

    #[test]
    fn half_smash_expands_james_layers() {
        let a = spheres(&[(1, 1), (2, 1)], 6);
        let mut b = FormalWedge::empty(6);
        b.add_word(SmashWord::new(1, vec![Atom::Base(1)], &a).unwrap(), BigInt::one());
        let mut c = FormalWedge::empty(6);
        c.add_word(SmashWord::new(1, vec![Atom::Base(2)], &a).unwrap(), BigInt::one());
        let got = half_smash_expand(&b, &c).unwrap();
        // Words: ΣX1, ΣX1∧X2, ΣX1∧X2∧X2, ... pruned at cap 6 (min degrees 2,3,4,5,6).
        assert_eq!(got.words.len(), 5);
        for (w, m) in got.words() {
            assert_eq!(w.susp(), 1);
            assert!(m.is_one());
        }
        // Series identity: P̃(B ⋊ ΩΣC') = P̃(B) · P(ΩΣC').
        let lhs = got.series(&a, true).unwrap();
        let c_desusp = PoincareSeries::monomial(1, 6);
        let rhs = b
            .series(&a, true)
            .unwrap()
            .mul(&james_loop_series(&c_desusp).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn half_smash_rejects_unsuspended_c() {
        let a = spheres(&[(1, 1)], 8);
        let mut b = FormalWedge::empty(8);
        b.add_word(SmashWord::new(1, vec![Atom::Base(1)], &a).unwrap(), BigInt::one());
        let mut c = FormalWedge::empty(8);
        c.add_word(SmashWord::new(0, vec![Atom::Base(1)], &a).unwrap(), BigInt::one());
        assert!(half_smash_expand(&b, &c).is_err());
    }

    #[test]
    fn truncation_after_the_fact_matches_direct_small_cap() {
        let a32 = spheres(&[(1, 1), (2, 1)], 32);
        let a16 = spheres(&[(1, 1), (2, 1)], 16);
        let mk = |assignment: &SpaceAssignment, cap: usize| {
            let mut b = FormalWedge::empty(cap);
            b.add_word(
                SmashWord::new(1, vec![Atom::Base(1)], assignment).unwrap(),
                BigInt::from(2),
            );
            let mut c = FormalWedge::empty(cap);
            c.add_word(
                SmashWord::new(2, vec![Atom::Base(2)], assignment).unwrap(),
                BigInt::one(),
            );
            half_smash_expand(&b, &c).unwrap()
        };
        assert_eq!(mk(&a32, 32).truncated(16), mk(&a16, 16));
    }
}
