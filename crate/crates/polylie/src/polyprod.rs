//! Polyhedral-product computations over a simplicial complex: the
//! suspension splitting into full-subcomplex summands, its checked
//! desuspension, the vertex-by-vertex fiber tower whose last stage models
//! the top fiber, the subset-lattice factor table, and the derived
//! loop-series product identities (including dual and thin products).
//!
//! Homotopy types are carried as [`FormalWedge`] values; every identity is
//! asserted at the level of exact truncated Poincaré series.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::series::PoincareSeries;
use crate::simplicial::SimplicialComplex;
use crate::wedge::{half_smash_expand, Atom, FormalWedge, SmashWord, SpaceAssignment};

/// Which pair the polyhedral product is formed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    /// `(CX, X)`: cones over the spaces, as in moment-angle-type products.
    ConeOnBase,
    /// `(X, ∗)`: the spaces over their basepoints (wedge-like products).
    BaseOverPoint,
}

/// A polyhedral product to compute with: a complex, a pair kind, and the
/// homology data of the spaces `X_1..X_m`.
#[derive(Debug, Clone)]
pub struct PolyProdInstance {
    pub complex: SimplicialComplex,
    pub pair_kind: PairKind,
    pub assignment: SpaceAssignment,
    /// User assertion that the suspension splitting desuspends even though
    /// the complex is not shifted.
    pub fillable_asserted: bool,
    /// Use `Ω X_i` atoms instead of `X_i` (the instance obtained by
    /// replacing each space with its loops, which is how `(X, ∗)`-products
    /// split after looping).
    pub loop_atoms: bool,
    /// Primes used for the torsion-free certificate of subcomplex homology.
    pub torsion_primes: Vec<u64>,
}

impl PolyProdInstance {
    pub fn cone_on_base(complex: SimplicialComplex, assignment: SpaceAssignment) -> Self {
        Self {
            complex,
            pair_kind: PairKind::ConeOnBase,
            assignment,
            fillable_asserted: false,
            loop_atoms: false,
            torsion_primes: vec![2, 3, 5],
        }
    }

    pub fn base_over_point(complex: SimplicialComplex, assignment: SpaceAssignment) -> Self {
        Self {
            pair_kind: PairKind::BaseOverPoint,
            ..Self::cone_on_base(complex, assignment)
        }
    }

    fn cap(&self) -> usize {
        self.assignment.cap
    }

    /// The smash-word atom standing for the space at index `i`.
    fn atom(&self, i: usize) -> Atom {
        if self.loop_atoms {
            Atom::LoopBase(i)
        } else {
            Atom::Base(i)
        }
    }

    /// The looped instance over the same complex: `(CΩX, ΩX)`.
    pub fn looped_companion(&self) -> Self {
        Self {
            pair_kind: PairKind::ConeOnBase,
            loop_atoms: true,
            ..self.clone()
        }
    }

    /// The same instance restricted to the full subcomplex on `subset`.
    pub fn restricted(&self, subset: &[usize]) -> Result<Self> {
        Ok(Self {
            complex: self.complex.full_subcomplex(subset)?,
            ..self.clone()
        })
    }
}

/// Which gate allowed the desuspension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DesuspensionGate {
    Shifted,
    UserAsserted,
}

/// A desuspended splitting together with the gate that licensed it.
#[derive(Debug, Clone)]
pub struct Desuspension {
    pub wedge: FormalWedge,
    pub gate: DesuspensionGate,
}

/// One step of the fiber tower: the split of the previous stage by
/// "involves vertex `j`" and the resulting half-smash expansion.
#[derive(Debug, Clone)]
pub struct TowerStep {
    pub vertex: usize,
    pub b: FormalWedge,
    pub c: FormalWedge,
    pub g: FormalWedge,
}

/// The full fiber tower; `final_wedge` models the fiber over the whole
/// vertex set, every word of which involves every vertex.
#[derive(Debug, Clone)]
pub struct GroupedTower {
    pub start: FormalWedge,
    pub steps: Vec<TowerStep>,
    pub final_wedge: FormalWedge,
}

/// One entry of the subset-lattice factor table.
#[derive(Debug, Clone)]
pub enum FactorEntry {
    /// The fiber is contractible.
    Trivial,
    /// The fiber is the space at this index itself.
    Space(usize),
    /// The fiber is a wedge of suspensions from the tower.
    Wedge(FormalWedge),
    /// Gates failed for this subset; reason recorded.
    Unavailable(String),
}

/// Loop-space factors indexed by vertex subsets.
#[derive(Debug, Clone)]
pub struct FactorTable {
    pub entries: Vec<(Vec<usize>, FactorEntry)>,
}

impl FactorTable {
    pub fn get(&self, subset: &[usize]) -> Option<&FactorEntry> {
        self.entries
            .iter()
            .find(|(s, _)| s == subset)
            .map(|(_, e)| e)
    }

    /// Loop-space series of one factor.
    pub fn loop_series(
        entry: &FactorEntry,
        assignment: &SpaceAssignment,
    ) -> Result<PoincareSeries> {
        match entry {
            FactorEntry::Trivial => Ok(PoincareSeries::one(assignment.cap)),
            FactorEntry::Space(i) => {
                let reduced = assignment.loop_reduced(*i)?;
                Ok(PoincareSeries::one(assignment.cap).add(&reduced))
            }
            FactorEntry::Wedge(w) => w.loop_series(assignment),
            FactorEntry::Unavailable(reason) => Err(Error::GateFailed(reason.clone())),
        }
    }
}

/// Both sides of the subset-lattice loop-series identity.
#[derive(Debug, Clone)]
pub struct LatticeIdentity {
    /// Loop series of the polyhedral product itself.
    pub lhs: PoincareSeries,
    /// Product of loop series of all factors, `I ⊆ [m]`.
    pub rhs_all: PoincareSeries,
    /// Product over proper subsets only (the loop series of the dual).
    pub rhs_proper: PoincareSeries,
    /// Loop series of the top factor.
    pub top: PoincareSeries,
}

/// The three series of a thin-product computation.
#[derive(Debug, Clone)]
pub struct ThinSeries {
    /// Loop series of the thin product.
    pub thin: PoincareSeries,
    /// Loop series of the fiber of the wedge-into-thin-product map.
    pub fiber: PoincareSeries,
    /// Loop series of the wedge of the spaces; equals `thin · fiber`.
    pub wedge: PoincareSeries,
}

impl PolyProdInstance {
    /// The suspension splitting of the cone-pair product: one word per
    /// reduced-homology rank unit of each full subcomplex, smashed with
    /// the spaces of its subset and doubly suspended. The resulting wedge
    /// models the suspension of the product (one suspension is marked
    /// ambient).
    pub fn bbcg_suspension_splitting(&self) -> Result<FormalWedge> {
        if self.pair_kind != PairKind::ConeOnBase {
            return Err(Error::WrongPairKind("ConeOnBase"));
        }
        let cap = self.cap();
        let mut out = FormalWedge::empty(cap);
        out.ambient_susp = 1;
        let verts = self.complex.vertices().to_vec();
        let n = verts.len();
        for mask in 1u64..(1 << n) {
            let subset: Vec<usize> = (0..n)
                .filter(|&k| mask >> k & 1 == 1)
                .map(|k| verts[k])
                .collect();
            let sub = self.complex.full_subcomplex(&subset)?;
            let betti = sub.reduced_betti(crate::simplicial::FieldTag::Rational);
            for &(d, r) in &betti.ranks {
                let mut atoms: Vec<Atom> = subset.iter().map(|&i| self.atom(i)).collect();
                if d >= 1 {
                    atoms.push(Atom::Sphere(d));
                }
                let word = SmashWord::new(2, atoms, &self.assignment)?;
                out.add_word(word, BigInt::from(r));
            }
        }
        Ok(out)
    }

    /// Desuspend the suspension splitting after checking the gates: the
    /// complex must be shifted (or asserted fillable by the caller), and
    /// every full subcomplex must have torsion-free homology at the
    /// working primes.
    pub fn fillable_desuspension(&self) -> Result<Desuspension> {
        let gate = if self.complex.is_shifted() {
            DesuspensionGate::Shifted
        } else if self.fillable_asserted {
            DesuspensionGate::UserAsserted
        } else {
            let witness = self.complex.shifted_witness().unwrap();
            return Err(Error::GateFailed(format!(
                "complex is not shifted (face {:?} fails the exchange with {} -> {}) and no fillable assertion was given",
                witness.0, witness.1, witness.2
            )));
        };
        let verts = self.complex.vertices().to_vec();
        let n = verts.len();
        for mask in 1u64..(1 << n) {
            let subset: Vec<usize> = (0..n)
                .filter(|&k| mask >> k & 1 == 1)
                .map(|k| verts[k])
                .collect();
            let sub = self.complex.full_subcomplex(&subset)?;
            if let Err(e) = sub.wedge_of_spheres_profile(&self.torsion_primes) {
                return Err(Error::GateFailed(format!(
                    "full subcomplex on {subset:?}: {e}"
                )));
            }
        }
        let suspended = self.bbcg_suspension_splitting()?;
        Ok(Desuspension {
            wedge: suspended.desuspend_ambient()?,
            gate,
        })
    }

    /// Run the fiber tower: starting from the desuspended splitting, at
    /// each vertex `j` (in order) split the current wedge into the words
    /// involving `j` and the rest, and expand the half-smash of the former
    /// with the loops on the latter. The final wedge models the fiber over
    /// the full vertex set.
    pub fn fiber_tower(&self) -> Result<GroupedTower> {
        let start = self.fillable_desuspension()?.wedge;
        let mut current = start.clone();
        let mut steps = Vec::new();
        for &j in self.complex.vertices() {
            let (b, c) = current.partition(|w| w.support().contains(&j));
            let g = half_smash_expand(&b, &c)?;
            steps.push(TowerStep {
                vertex: j,
                b,
                c,
                g: g.clone(),
            });
            current = g;
        }
        Ok(GroupedTower {
            start,
            steps,
            final_wedge: current,
        })
    }

    /// The factor table over the subset lattice: for each subset `I`, the
    /// fiber of the product over the full subcomplex on `I`. Per-subset
    /// gate failures are recorded, not fatal.
    pub fn factor_table(&self) -> Result<FactorTable> {
        let verts = self.complex.vertices().to_vec();
        let n = verts.len();
        let subsets: Vec<Vec<usize>> = (0u64..(1 << n))
            .map(|mask| {
                (0..n)
                    .filter(|&k| mask >> k & 1 == 1)
                    .map(|k| verts[k])
                    .collect()
            })
            .collect();
        let entries: Vec<(Vec<usize>, FactorEntry)> = subsets
            .into_par_iter()
            .map(|subset| {
                let entry = self.factor_for(&subset);
                (subset, entry)
            })
            .collect();
        let mut entries = entries;
        entries.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        Ok(FactorTable { entries })
    }

    fn factor_for(&self, subset: &[usize]) -> FactorEntry {
        if subset.is_empty() {
            return FactorEntry::Trivial;
        }
        if subset.len() == 1 {
            return match self.pair_kind {
                // The fiber over a single cone pair is contractible.
                PairKind::ConeOnBase => FactorEntry::Trivial,
                // Over `(X_i, ∗)` the fiber is `X_i` itself.
                PairKind::BaseOverPoint => FactorEntry::Space(subset[0]),
            };
        }
        let instance = match self.pair_kind {
            PairKind::ConeOnBase => self.restricted(subset),
            // `(X, ∗)`-products split after looping through the looped
            // cone-pair instance; its tower computes the higher factors.
            PairKind::BaseOverPoint => {
                self.looped_companion().restricted(subset)
            }
        };
        let instance = match instance {
            Ok(i) => i,
            Err(e) => return FactorEntry::Unavailable(e.to_string()),
        };
        match instance.fiber_tower() {
            Ok(tower) => FactorEntry::Wedge(tower.final_wedge),
            Err(e) => FactorEntry::Unavailable(e.to_string()),
        }
    }

    /// The subset-lattice identity for a cone-pair product: the loop
    /// series of the product equals the product of the loop series of all
    /// lattice factors, and splitting off the top factor gives the loop
    /// series of the dual product. Errors on the full simplex, whose dual
    /// is undefined.
    pub fn loop_series_identity(&self) -> Result<LatticeIdentity> {
        if self.complex.non_faces().is_empty() {
            return Err(Error::DualOfSimplex);
        }
        let lhs = self.fillable_desuspension()?.wedge.loop_series(&self.assignment)?;
        let table = self.factor_table()?;
        let cap = self.cap();
        let mut rhs_all = PoincareSeries::one(cap);
        let mut rhs_proper = PoincareSeries::one(cap);
        let mut top = PoincareSeries::one(cap);
        let full: Vec<usize> = self.complex.vertices().to_vec();
        for (subset, entry) in &table.entries {
            let s = FactorTable::loop_series(entry, &self.assignment)?;
            rhs_all = rhs_all.mul(&s);
            if *subset == full {
                top = s;
            } else {
                rhs_proper = rhs_proper.mul(&s);
            }
        }
        // Loop series are only determined to cap − 1; normalize all sides.
        let out_cap = cap.saturating_sub(1);
        Ok(LatticeIdentity {
            lhs: lhs.truncated(out_cap),
            rhs_all: rhs_all.truncated(out_cap),
            rhs_proper: rhs_proper.truncated(out_cap),
            top: top.truncated(out_cap),
        })
    }

    /// The splitting of a `(X, ∗)`-product after looping: both sides share
    /// the factor `Π P(Ω X_i)`; the left side multiplies it by the loop
    /// series of the looped cone-pair product, the right side by the loop
    /// series of all its lattice factors of size at least two.
    pub fn djk_splitting_series(&self) -> Result<(PoincareSeries, PoincareSeries)> {
        if self.pair_kind != PairKind::BaseOverPoint {
            return Err(Error::WrongPairKind("BaseOverPoint"));
        }
        let cap = self.cap();
        let mut loops_product = PoincareSeries::one(cap);
        for &i in self.complex.vertices() {
            let reduced = self.assignment.loop_reduced(i)?;
            loops_product = loops_product.mul(&PoincareSeries::one(cap).add(&reduced));
        }
        let companion = self.looped_companion();
        let lhs = loops_product.mul(
            &companion
                .fillable_desuspension()?
                .wedge
                .loop_series(&self.assignment)?,
        );
        let table = companion.factor_table()?;
        let mut rhs = loops_product;
        for (subset, entry) in &table.entries {
            if subset.len() < 2 {
                continue;
            }
            rhs = rhs.mul(&FactorTable::loop_series(entry, &self.assignment)?);
        }
        let out_cap = cap.saturating_sub(1);
        Ok((lhs.truncated(out_cap), rhs.truncated(out_cap)))
    }
}

/// Loop series of the thin product of the spaces assigned to `1..m` (the
/// dual product over `m` disjoint points), of the fiber of the wedge into
/// it, and of the wedge itself. The wedge series always factors as
/// `thin · fiber`.
pub fn thin_product_series(
    m: usize,
    assignment: &SpaceAssignment,
) -> Result<ThinSeries> {
    let complex = SimplicialComplex::points(m);
    let instance = PolyProdInstance::base_over_point(complex, assignment.clone());
    let cap = assignment.cap;
    let companion = instance.looped_companion();
    let table = companion.factor_table()?;
    let full: Vec<usize> = (1..=m).collect();
    // Π P(ΩX_i) from the singleton factors of the (X, ∗)-lattice.
    let mut thin = PoincareSeries::one(cap);
    for i in 1..=m {
        let reduced = assignment.loop_reduced(i)?;
        thin = thin.mul(&PoincareSeries::one(cap).add(&reduced));
    }
    let mut fiber = PoincareSeries::one(cap);
    for (subset, entry) in &table.entries {
        if subset.len() < 2 {
            continue;
        }
        let s = FactorTable::loop_series(entry, assignment)?;
        if *subset == full {
            fiber = s;
        } else {
            thin = thin.mul(&s);
        }
    }
    let out_cap = cap.saturating_sub(1);
    let thin = thin.truncated(out_cap);
    let fiber = fiber.truncated(out_cap);
    let wedge = thin.mul(&fiber);
    Ok(ThinSeries { thin, fiber, wedge })
}

/// The telescoping check for a tower: the loop series of the starting
/// wedge against the product of the loop series of each split-off wedge
/// and of the final stage.
pub fn telescoping_series(
    tower: &GroupedTower,
    assignment: &SpaceAssignment,
) -> Result<(PoincareSeries, PoincareSeries)> {
    let lhs = tower.start.loop_series(assignment)?;
    let mut rhs = tower.final_wedge.loop_series(assignment)?;
    for step in &tower.steps {
        rhs = rhs.mul(&step.c.loop_series(assignment)?);
    }
    Ok((lhs, rhs))
}

/// Check that every word of the tower's final wedge involves every vertex.
pub fn full_support_holds(tower: &GroupedTower, vertices: &[usize]) -> bool {
    let all: BTreeSet<usize> = vertices.iter().copied().collect();
    tower
        .final_wedge
        .words()
        .all(|(w, _)| w.support().is_superset(&all))
}

#[cfg(test)]
mod tests {
    use num_traits::One;

    use super::*;
    use crate::series::james_loop_series;

    fn circles(m: usize, cap: usize) -> SpaceAssignment {
        let mut a = SpaceAssignment::new(cap);
        for i in 1..=m {
            a.assign_sphere(i, 1);
        }
        a
    }

    #[test]
    fn bbcg_on_two_points_is_a_join_of_circles() {
        let instance = PolyProdInstance::cone_on_base(SimplicialComplex::points(2), circles(2, 16));
        let wedge = instance.bbcg_suspension_splitting().unwrap();
        let words: Vec<_> = wedge.words().collect();
        assert_eq!(words.len(), 1);
        let (w, mult) = words[0];
        assert!(mult.is_one());
        assert_eq!(w.susp(), 2);
        assert_eq!(
            w.series(&instance.assignment).unwrap(),
            PoincareSeries::monomial(4, 16)
        );
        // Desuspended: the join of two circles, a 3-sphere.
        let desusp = wedge.desuspend_ambient().unwrap();
        assert_eq!(
            desusp.series(&instance.assignment, true).unwrap(),
            PoincareSeries::monomial(3, 16)
        );
    }

    #[test]
    fn bbcg_on_four_cycle_matches_suspended_product_of_spheres() {
        let complex =
            SimplicialComplex::from_facets(4, &[vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]])
                .unwrap();
        let instance = PolyProdInstance::cone_on_base(complex, circles(4, 16));
        let wedge = instance.bbcg_suspension_splitting().unwrap();
        let mut dims: Vec<usize> = Vec::new();
        for (w, mult) in wedge.words() {
            let s = w.series(&instance.assignment).unwrap();
            let d = s.min_degree().unwrap();
            for _ in 0..usize::try_from(mult.clone()).unwrap() {
                dims.push(d);
            }
            // each summand is a single sphere here
            assert!(s.coeff(d) == BigInt::one());
        }
        dims.sort_unstable();
        assert_eq!(dims, vec![4, 4, 7]);
    }

    #[test]
    fn bbcg_on_simplex_is_empty() {
        let instance = PolyProdInstance::cone_on_base(SimplicialComplex::simplex(3), circles(3, 16));
        assert!(instance.bbcg_suspension_splitting().unwrap().is_empty());
    }

    #[test]
    fn desuspension_gate_rejects_unshifted_without_assertion() {
        let complex =
            SimplicialComplex::from_facets(4, &[vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]])
                .unwrap();
        let instance = PolyProdInstance::cone_on_base(complex.clone(), circles(4, 16));
        assert!(matches!(
            instance.fillable_desuspension(),
            Err(Error::GateFailed(_))
        ));
        let mut asserted = PolyProdInstance::cone_on_base(complex, circles(4, 16));
        asserted.fillable_asserted = true;
        let d = asserted.fillable_desuspension().unwrap();
        assert_eq!(d.gate, DesuspensionGate::UserAsserted);
    }

    #[test]
    fn tower_on_two_points_is_a_single_sphere() {
        let instance = PolyProdInstance::cone_on_base(SimplicialComplex::points(2), circles(2, 16));
        let tower = instance.fiber_tower().unwrap();
        for step in &tower.steps {
            assert!(step.c.is_empty());
        }
        assert_eq!(tower.final_wedge, tower.start);
        assert!(full_support_holds(&tower, &[1, 2]));
    }

    #[test]
    fn tower_final_words_have_full_support() {
        for m in 2..=4 {
            let instance =
                PolyProdInstance::cone_on_base(SimplicialComplex::points(m), circles(m, 12));
            let tower = instance.fiber_tower().unwrap();
            let verts: Vec<usize> = (1..=m).collect();
            assert!(full_support_holds(&tower, &verts), "m = {m}");
        }
    }

    #[test]
    fn telescoping_holds_on_point_complexes() {
        for m in 2..=4 {
            let instance =
                PolyProdInstance::cone_on_base(SimplicialComplex::points(m), circles(m, 12));
            let tower = instance.fiber_tower().unwrap();
            let (lhs, rhs) = telescoping_series(&tower, &instance.assignment).unwrap();
            assert_eq!(lhs, rhs, "m = {m}");
        }
    }

    #[test]
    fn lattice_identity_two_points() {
        let instance = PolyProdInstance::cone_on_base(SimplicialComplex::points(2), circles(2, 16));
        let id = instance.loop_series_identity().unwrap();
        // The product is S^3; its loop series is 1/(1 - t^2).
        let expected = james_loop_series(&PoincareSeries::monomial(2, 16))
            .unwrap()
            .truncated(15);
        assert_eq!(id.lhs, expected);
        assert_eq!(id.rhs_all, expected);
        assert_eq!(id.rhs_proper, PoincareSeries::one(15));
        assert_eq!(id.top, expected);
    }

    #[test]
    fn lattice_identity_three_points() {
        let instance = PolyProdInstance::cone_on_base(SimplicialComplex::points(3), circles(3, 16));
        let id = instance.loop_series_identity().unwrap();
        assert_eq!(id.lhs, id.rhs_all);
        assert_eq!(id.lhs, id.rhs_proper.mul(&id.top));
    }

    #[test]
    fn lattice_identity_rejects_simplex() {
        let instance = PolyProdInstance::cone_on_base(SimplicialComplex::simplex(2), circles(2, 8));
        assert!(matches!(
            instance.loop_series_identity(),
            Err(Error::DualOfSimplex)
        ));
    }

    #[test]
    fn factor_table_singletons() {
        let cone = PolyProdInstance::cone_on_base(SimplicialComplex::points(2), circles(2, 8));
        let t = cone.factor_table().unwrap();
        assert!(matches!(t.get(&[1]), Some(FactorEntry::Trivial)));
        let point = PolyProdInstance::base_over_point(SimplicialComplex::points(2), circles(2, 8));
        let t = point.factor_table().unwrap();
        assert!(matches!(t.get(&[1]), Some(FactorEntry::Space(1))));
        assert!(matches!(t.get(&[]), Some(FactorEntry::Trivial)));
    }

    #[test]
    fn bott_samelson_series_for_wedge_of_spheres() {
        // (X, ∗) over m points is the wedge; its loop series is the
        // tensor-algebra series 1/(1 - m t) for X_i = S^2.
        for m in 2..=3 {
            let mut a = SpaceAssignment::new(14);
            for i in 1..=m {
                a.assign_sphere(i, 2);
            }
            let instance =
                PolyProdInstance::base_over_point(SimplicialComplex::points(m), a.clone());
            let (lhs, rhs) = instance.djk_splitting_series().unwrap();
            let expected = james_loop_series(&PoincareSeries::from_coeffs(
                std::iter::once(BigInt::from(0)).chain(std::iter::once(BigInt::from(m))),
                14,
            ))
            .unwrap()
            .truncated(lhs.cap());
            assert_eq!(lhs, expected, "m = {m}");
            assert_eq!(rhs, expected, "m = {m}");
        }
    }

    #[test]
    fn djk_splitting_for_single_point_is_loop_of_the_space() {
        let mut a = SpaceAssignment::new(10);
        a.assign_sphere(1, 2);
        let instance = PolyProdInstance::base_over_point(SimplicialComplex::points(1), a);
        let (lhs, rhs) = instance.djk_splitting_series().unwrap();
        let expected = james_loop_series(&PoincareSeries::monomial(1, 10))
            .unwrap()
            .truncated(lhs.cap());
        assert_eq!(lhs, expected);
        assert_eq!(rhs, expected);
    }

    #[test]
    fn thin_product_of_two_spaces_is_their_square() {
        for d in [2, 3] {
            let mut a = SpaceAssignment::new(16);
            a.assign_sphere(1, d);
            a.assign_sphere(2, d);
            let ts = thin_product_series(2, &a).unwrap();
            let loop_x = james_loop_series(&PoincareSeries::monomial(d - 1, 16)).unwrap();
            assert_eq!(ts.thin, loop_x.mul(&loop_x).truncated(ts.thin.cap()), "d = {d}");
            assert_eq!(ts.wedge, ts.thin.mul(&ts.fiber));
        }
    }

    #[test]
    fn thin_fiber_series_for_two_spheres() {
        // m = 2, X = S^2: the fiber is Σ ΩX ∧ ΩX, with loop series the
        // James series of t^2/(1-t)^2.
        let mut a = SpaceAssignment::new(16);
        a.assign_sphere(1, 2);
        a.assign_sphere(2, 2);
        let ts = thin_product_series(2, &a).unwrap();
        let omega = james_loop_series(&PoincareSeries::monomial(1, 16)).unwrap();
        let reduced = omega.sub(&PoincareSeries::one(16));
        let expected = james_loop_series(&reduced.mul(&reduced))
            .unwrap()
            .truncated(ts.fiber.cap());
        assert_eq!(ts.fiber, expected);
    }

    #[test]
    fn skeleton_instance_identity() {
        // 1-skeleton of the tetrahedron with circle atoms.
        let complex = SimplicialComplex::skeleton(4, 1);
        let instance = PolyProdInstance::cone_on_base(complex, circles(4, 12));
        let id = instance.loop_series_identity().unwrap();
        assert_eq!(id.lhs, id.rhs_all);
        assert_eq!(id.lhs, id.rhs_proper.mul(&id.top));
    }
}
