//! Abstract simplicial complexes on a labeled vertex set.
//!
//! Complexes are stored as explicit downward-closed face sets, which keeps
//! every operation (full subcomplexes, non-face enumeration, chain-level
//! homology) exact and simple at the vertex counts this crate targets
//! (m is small; the subset lattice is walked directly).

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// A sorted, duplicate-free set of vertex labels.
pub type VertexSubset = Vec<usize>;

/// Coefficient field for homology rank computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldTag {
    Rational,
    ModP(u64),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "Q"),
            FieldTag::ModP(p) => write!(f, "F{p}"),
        }
    }
}

/// Reduced homology ranks by degree, with the field they were computed over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiVector {
    pub field: FieldTag,
    /// `(degree, rank)` pairs with rank > 0, sorted by degree.
    pub ranks: Vec<(usize, usize)>,
}

impl BettiVector {
    pub fn rank(&self, d: usize) -> usize {
        self.ranks
            .iter()
            .find(|&&(deg, _)| deg == d)
            .map_or(0, |&(_, r)| r)
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn total(&self) -> usize {
        self.ranks.iter().map(|&(_, r)| r).sum()
    }
}

/// An abstract simplicial complex whose vertices keep their original labels.
///
/// `vertices` is the ambient vertex set; every singleton in it is a face
/// (no ghost vertices). The empty face is always present implicitly and is
/// not stored in `faces`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: VertexSubset,
    /// All nonempty faces, each a sorted vertex list.
    faces: BTreeSet<VertexSubset>,
}

fn check_subset(s: &[usize]) -> Result<()> {
    if s.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadSubset(s.to_vec()));
    }
    Ok(())
}

impl SimplicialComplex {
    /// Build from facets on vertex set `1..=m`, closing downward.
    ///
    /// Every vertex of `1..=m` must appear in some facet; an unused label is
    /// a ghost vertex and is rejected.
    pub fn from_facets(m: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let mut faces: BTreeSet<VertexSubset> = BTreeSet::new();
        for facet in facets {
            let mut f = facet.clone();
            f.sort_unstable();
            f.dedup();
            for &v in &f {
                if v < 1 || v > m {
                    return Err(Error::VertexOutOfRange { vertex: v, m });
                }
            }
            // Close downward: insert every nonempty subset of the facet.
            let n = f.len();
            for mask in 1u64..(1 << n) {
                let sub: VertexSubset = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                faces.insert(sub);
            }
        }
        for v in 1..=m {
            if !faces.contains(&vec![v]) {
                return Err(Error::GhostVertex(v));
            }
        }
        Ok(Self {
            vertices: (1..=m).collect(),
            faces,
        })
    }

    /// The complex of `m` disjoint points.
    pub fn points(m: usize) -> Self {
        Self::from_facets(m, &(1..=m).map(|v| vec![v]).collect::<Vec<_>>()).unwrap()
    }

    /// The full simplex on `1..=m`.
    pub fn simplex(m: usize) -> Self {
        Self::from_facets(m, &[(1..=m).collect()]).unwrap()
    }

    /// The k-skeleton of the full simplex on `1..=m` (faces of at most
    /// `k + 1` vertices).
    pub fn skeleton(m: usize, k: usize) -> Self {
        let full = Self::simplex(m);
        let faces: BTreeSet<VertexSubset> = full
            .faces
            .into_iter()
            .filter(|f| f.len() <= k + 1)
            .collect();
        Self {
            vertices: (1..=m).collect(),
            faces,
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of ambient vertices.
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// All nonempty faces in sorted order.
    pub fn faces(&self) -> impl Iterator<Item = &VertexSubset> {
        self.faces.iter()
    }

    pub fn is_face(&self, s: &[usize]) -> bool {
        s.is_empty() || self.faces.contains(&s.to_vec())
    }

    /// Largest face cardinality (0 for the empty complex).
    pub fn dimension_plus_one(&self) -> usize {
        self.faces.iter().map(|f| f.len()).max().unwrap_or(0)
    }

    /// True when some vertex lies in every facet (so the complex is a cone).
    pub fn is_cone(&self) -> bool {
        let facets: Vec<&VertexSubset> = self
            .faces
            .iter()
            .filter(|f| !self.faces.iter().any(|g| g.len() > f.len() && f.iter().all(|v| g.contains(v))))
            .collect();
        self.vertices
            .iter()
            .any(|v| !facets.is_empty() && facets.iter().all(|f| f.contains(v)))
    }

    /// The full subcomplex on `I`: faces of `self` contained in `I`.
    /// Vertices keep their original labels.
    pub fn full_subcomplex(&self, subset: &[usize]) -> Result<Self> {
        check_subset(subset)?;
        for &v in subset {
            if !self.vertices.contains(&v) {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    m: *self.vertices.last().unwrap_or(&0),
                });
            }
        }
        let iset: BTreeSet<usize> = subset.iter().copied().collect();
        let faces: BTreeSet<VertexSubset> = self
            .faces
            .iter()
            .filter(|f| f.iter().all(|v| iset.contains(v)))
            .cloned()
            .collect();
        Ok(Self {
            vertices: subset.to_vec(),
            faces,
        })
    }

    /// All nonempty subsets of the vertex set that are not faces, in
    /// size-then-lexicographic order.
    pub fn non_faces(&self) -> Vec<VertexSubset> {
        let n = self.vertices.len();
        let mut out: Vec<VertexSubset> = Vec::new();
        for mask in 1u64..(1 << n) {
            let sub: VertexSubset = (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| self.vertices[i])
                .collect();
            if !self.faces.contains(&sub) {
                out.push(sub);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Reduced homology ranks of the realization over the given field,
    /// computed from the simplicial chain complex by exact elimination.
    ///
    /// The augmentation map to the empty face is included, so a nonempty
    /// complex has no rank in degree -1 and a cone has all ranks zero.
    pub fn reduced_betti(&self, field: FieldTag) -> BettiVector {
        if self.faces.is_empty() {
            return BettiVector { field, ranks: Vec::new() };
        }
        // Faces by dimension d (d+1 vertices), with an index per face.
        let top = self.dimension_plus_one(); // max number of vertices in a face
        let mut by_dim: Vec<Vec<&VertexSubset>> = vec![Vec::new(); top];
        for f in &self.faces {
            by_dim[f.len() - 1].push(f);
        }
        // rank of boundary map C_d -> C_{d-1} for d = 0..top-1, where C_{-1}
        // is spanned by the empty face (augmentation).
        let mut bd_rank = vec![0usize; top + 1];
        bd_rank[0] = 1; // augmentation is onto for a nonempty complex
        for d in 1..top {
            let rows = &by_dim[d - 1];
            let cols = &by_dim[d];
            let row_index: std::collections::HashMap<&VertexSubset, usize> =
                rows.iter().enumerate().map(|(i, f)| (*f, i)).collect();
            // Dense signed incidence matrix, columns = d-faces.
            let mut mat: Vec<Vec<BigInt>> = Vec::with_capacity(cols.len());
            for face in cols {
                let mut col = vec![BigInt::zero(); rows.len()];
                for (k, _) in face.iter().enumerate() {
                    let mut sub = (*face).clone();
                    sub.remove(k);
                    let i = row_index[&sub];
                    col[i] = if k % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
                }
                mat.push(col);
            }
            bd_rank[d] = match field {
                FieldTag::Rational => rank_integer(mat),
                FieldTag::ModP(p) => rank_mod_p(mat, p),
            };
        }
        let mut ranks = Vec::new();
        for d in 0..top {
            let n_d = by_dim[d].len();
            let r = n_d - bd_rank[d] - bd_rank[d + 1];
            if r > 0 {
                ranks.push((d, r));
            }
        }
        BettiVector { field, ranks }
    }

    /// True iff the complex is shifted in the standard vertex order: for
    /// every face `F`, swapping any vertex for a smaller absent one yields a
    /// face. When false, [`shifted_witness`](Self::shifted_witness) reports
    /// a violating `(F, j, i)`.
    pub fn is_shifted(&self) -> bool {
        self.shifted_witness().is_none()
    }

    /// A witness `(face, j, i)` violating shiftedness, if any: `j ∈ face`,
    /// `i < j`, `i ∉ face`, and `(face ∖ {j}) ∪ {i}` is not a face.
    pub fn shifted_witness(&self) -> Option<(VertexSubset, usize, usize)> {
        for f in &self.faces {
            for &j in f {
                for &i in &self.vertices {
                    if i >= j || f.contains(&i) {
                        continue;
                    }
                    let mut g: VertexSubset =
                        f.iter().copied().filter(|&v| v != j).collect();
                    g.push(i);
                    g.sort_unstable();
                    if !self.faces.contains(&g) {
                        return Some((f.clone(), j, i));
                    }
                }
            }
        }
        None
    }

    /// Certify that the realization looks like a wedge of spheres at the
    /// homology level: ranks over the rationals and over each given prime
    /// must agree. Returns the rational Betti vector on success.
    pub fn wedge_of_spheres_profile(&self, primes: &[u64]) -> Result<BettiVector> {
        let over_q = self.reduced_betti(FieldTag::Rational);
        for &p in primes {
            let over_p = self.reduced_betti(FieldTag::ModP(p));
            if over_p.ranks != over_q.ranks {
                return Err(Error::PossibleTorsion(p));
            }
        }
        Ok(over_q)
    }
}

/// Rank of an integer matrix (columns as vectors) by fraction-free Gaussian
/// elimination; exact, so this is the rank over the rationals.
fn rank_integer(mut cols: Vec<Vec<BigInt>>) -> usize {
    let nrows = cols.first().map_or(0, |c| c.len());
    let mut rank = 0;
    let mut row = 0;
    while row < nrows && rank < cols.len() {
        // Find a column with a nonzero entry at `row`.
        let pivot = (rank..cols.len()).find(|&j| !cols[j][row].is_zero());
        let Some(pj) = pivot else {
            row += 1;
            continue;
        };
        cols.swap(rank, pj);
        let (head, tail) = cols.split_at_mut(rank + 1);
        let pcol = &head[rank];
        let pval = pcol[row].clone();
        for col in tail.iter_mut() {
            if col[row].is_zero() {
                continue;
            }
            let factor = col[row].clone();
            for i in 0..nrows {
                col[i] = &col[i] * &pval - &pcol[i] * &factor;
            }
            // Keep entries small-ish by dividing out the gcd of the column.
            let mut g = BigInt::zero();
            for v in col.iter() {
                g = num_integer::Integer::gcd(&g, v);
                if g == BigInt::from(1) {
                    break;
                }
            }
            if g.abs() > BigInt::from(1) {
                for v in col.iter_mut() {
                    *v = &*v / &g;
                }
            }
        }
        rank += 1;
        row += 1;
    }
    rank
}

/// Rank of a matrix over F_p (columns as vectors).
fn rank_mod_p(cols: Vec<Vec<BigInt>>, p: u64) -> usize {
    let pm = BigInt::from(p);
    let mut cols: Vec<Vec<u64>> = cols
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|v| {
                    let r = ((v % &pm) + &pm) % &pm;
                    // r < p fits in u64
                    u64::try_from(r).unwrap()
                })
                .collect()
        })
        .collect();
    let nrows = cols.first().map_or(0, |c| c.len());
    let inv = |a: u64| -> u64 {
        // Fermat inverse; p is prime and a != 0 mod p.
        let mut base = a % p;
        let mut exp = p - 2;
        let mut acc: u128 = 1;
        let mut b: u128 = base as u128;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p as u128;
            }
            b = b * b % p as u128;
            exp >>= 1;
        }
        base = acc as u64;
        base
    };
    let mut rank = 0;
    let mut row = 0;
    while row < nrows && rank < cols.len() {
        let pivot = (rank..cols.len()).find(|&j| cols[j][row] % p != 0);
        let Some(pj) = pivot else {
            row += 1;
            continue;
        };
        cols.swap(rank, pj);
        let pinv = inv(cols[rank][row]);
        let (head, tail) = cols.split_at_mut(rank + 1);
        let pcol = &head[rank];
        for col in tail.iter_mut() {
            if col[row] % p == 0 {
                continue;
            }
            let factor = (col[row] as u128 * pinv as u128 % p as u128) as u64;
            for i in 0..nrows {
                let sub = pcol[i] as u128 * factor as u128 % p as u128;
                col[i] = ((col[i] as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
        rank += 1;
        row += 1;
    }
    rank
}
