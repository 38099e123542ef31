//! Finite chain complexes with labeled bases.
//!
//! A complex stores, per degree, an ordered list of opaque cell labels and a
//! sparse integer boundary matrix into the degree below. `d . d = 0` is
//! checked, never assumed.

use crate::matrix::{Int, IntMatrix};
use crate::snf::{invariant_factors, smith_normal_form};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt::{Debug, Display};
use std::hash::Hash;
use thiserror::Error;

/// Requirements on cell labels.
pub trait CellLabel: Clone + Ord + Eq + Hash + Debug + Display {}
impl<T: Clone + Ord + Eq + Hash + Debug + Display> CellLabel for T {}

/// A formal integer combination of cells of a fixed degree. No zero
/// coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain<L: CellLabel> {
    degree: i64,
    terms: BTreeMap<L, Int>,
}

impl<L: CellLabel> Chain<L> {
    pub fn zero(degree: i64) -> Self {
        Chain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(degree: i64, terms: I) -> Self
    where
        I: IntoIterator<Item = (L, Int)>,
    {
        let mut chain = Chain::zero(degree);
        for (label, coeff) in terms {
            chain.add_term(label, coeff);
        }
        chain
    }

    pub fn single(degree: i64, label: L) -> Self {
        Chain::from_terms(degree, [(label, Int::one())])
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<L, Int> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, label: &L) -> Int {
        self.terms.get(label).cloned().unwrap_or_else(Int::zero)
    }

    pub fn add_term(&mut self, label: L, coeff: Int) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(label).or_insert_with(Int::zero);
        *slot += coeff;
        if slot.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .expect("zero slot present");
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Chain<L>) -> Chain<L> {
        assert_eq!(self.degree, other.degree, "degree mismatch in chain sum");
        let mut out = self.clone();
        for (l, v) in &other.terms {
            out.add_term(l.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Chain<L>) -> Chain<L> {
        self.add(&other.scale(&-Int::one()))
    }

    pub fn scale(&self, k: &Int) -> Chain<L> {
        if k.is_zero() {
            return Chain::zero(self.degree);
        }
        Chain {
            degree: self.degree,
            terms: self.terms.iter().map(|(l, v)| (l.clone(), v * k)).collect(),
        }
    }

    /// Applies `f` to every label, summing coefficients of collisions.
    pub fn map_labels<M: CellLabel>(&self, degree: i64, f: impl Fn(&L) -> M) -> Chain<M> {
        Chain::from_terms(
            degree,
            self.terms.iter().map(|(l, v)| (f(l), v.clone())),
        )
    }

    /// Mod-2 support of the chain.
    pub fn support_mod2(&self) -> Vec<L> {
        self.terms
            .iter()
            .filter(|(_, v)| v.mod_floor(&Int::from(2)).is_one())
            .map(|(l, _)| l.clone())
            .collect()
    }
}

/// Homology of a complex: Betti numbers, torsion invariant factors (> 1) per
/// degree, and the Euler characteristic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologySummary {
    pub betti: BTreeMap<i64, u64>,
    pub torsion: BTreeMap<i64, Vec<Int>>,
    pub euler: Int,
}

impl HomologySummary {
    pub fn betti_vec(&self, min_degree: i64, len: usize) -> Vec<u64> {
        (0..len)
            .map(|k| *self.betti.get(&(min_degree + k as i64)).unwrap_or(&0))
            .collect()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.values().all(|v| v.is_empty())
    }
}

/// Witness for a failing `d . d = 0` check.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("d.d != 0 from degree {degree}: entry ({row}, {col}) = {value}")]
pub struct D2Witness {
    /// Degree the composite starts from (`d_{degree-1} . d_degree != 0`).
    pub degree: i64,
    pub row: usize,
    pub col: usize,
    pub value: Int,
}

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("boundary of {label} has degree {got}, expected {expected}")]
    BoundaryDegree {
        label: String,
        expected: i64,
        got: i64,
    },
    #[error("boundary of {label} hits {target}, which is not a basis cell in degree {degree}")]
    UnknownCell {
        label: String,
        target: String,
        degree: i64,
    },
    #[error(transparent)]
    NotAComplex(#[from] D2Witness),
    #[error("chain in degree {degree} uses label {label} not in the basis")]
    ChainOffBasis { degree: i64, label: String },
    #[error("is_boundary requires a cycle, but d x = {boundary} is nonzero")]
    NotACycle { boundary: String },
}

/// A finite chain complex over `Z` with contiguous degree range.
#[derive(Debug, Clone)]
pub struct ChainComplex<L: CellLabel> {
    min_degree: i64,
    basis: Vec<Vec<L>>,
    index: Vec<HashMap<L, usize>>,
    /// `boundary[k]`: matrix of `d` from degree `min_degree + k` to the
    /// degree below, of shape `len(k-1) x len(k)` (zero rows at the bottom).
    boundary: Vec<IntMatrix>,
}

impl<L: CellLabel> ChainComplex<L> {
    /// Builds a complex from per-degree bases and a boundary function. The
    /// boundary of every basis cell must land in the basis one degree below.
    pub fn build(
        min_degree: i64,
        basis: Vec<Vec<L>>,
        d: impl Fn(&L) -> Chain<L>,
    ) -> Result<Self, ComplexError> {
        let index: Vec<HashMap<L, usize>> = basis
            .iter()
            .map(|cells| {
                cells
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (c.clone(), i))
                    .collect()
            })
            .collect();
        let mut boundary = Vec::with_capacity(basis.len());
        for (k, cells) in basis.iter().enumerate() {
            let deg = min_degree + k as i64;
            let below = if k == 0 { 0 } else { basis[k - 1].len() };
            let mut triplets = Vec::new();
            for (j, cell) in cells.iter().enumerate() {
                let dc = d(cell);
                if dc.is_zero() {
                    continue;
                }
                if dc.degree() != deg - 1 {
                    return Err(ComplexError::BoundaryDegree {
                        label: cell.to_string(),
                        expected: deg - 1,
                        got: dc.degree(),
                    });
                }
                for (target, coeff) in dc.terms() {
                    let row = if k == 0 { None } else { index[k - 1].get(target) };
                    match row {
                        Some(i) => triplets.push((*i, j, coeff.clone())),
                        None => {
                            return Err(ComplexError::UnknownCell {
                                label: cell.to_string(),
                                target: target.to_string(),
                                degree: deg - 1,
                            })
                        }
                    }
                }
            }
            boundary.push(
                IntMatrix::from_triplets(below, cells.len(), triplets).expect("boundary shape"),
            );
        }
        Ok(ChainComplex {
            min_degree,
            basis,
            index,
            boundary,
        })
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.basis.len() as i64 - 1
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.min_degree..=self.max_degree()
    }

    fn level(&self, degree: i64) -> Option<usize> {
        let k = degree.checked_sub(self.min_degree)?;
        (0..self.basis.len() as i64).contains(&k).then_some(k as usize)
    }

    pub fn basis(&self, degree: i64) -> &[L] {
        self.level(degree)
            .map(|k| self.basis[k].as_slice())
            .unwrap_or(&[])
    }

    pub fn basis_size(&self, degree: i64) -> usize {
        self.basis(degree).len()
    }

    pub fn total_cells(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }

    /// Boundary matrix from `degree` to `degree - 1`.
    pub fn boundary_matrix(&self, degree: i64) -> IntMatrix {
        match self.level(degree) {
            Some(k) => self.boundary[k].clone(),
            None => {
                let rows = self.basis_size(degree - 1);
                IntMatrix::zero(rows, 0)
            }
        }
    }

    /// Converts a chain to a coordinate vector in the stored basis order.
    pub fn vector_of(&self, chain: &Chain<L>) -> Result<Vec<Int>, ComplexError> {
        let k = self.level(chain.degree());
        let (cells, idx) = match k {
            Some(k) => (&self.basis[k], &self.index[k]),
            None if chain.is_zero() => return Ok(Vec::new()),
            None => {
                let (l, _) = chain.terms().iter().next().expect("nonzero chain");
                return Err(ComplexError::ChainOffBasis {
                    degree: chain.degree(),
                    label: l.to_string(),
                });
            }
        };
        let mut v = vec![Int::zero(); cells.len()];
        for (l, c) in chain.terms() {
            match idx.get(l) {
                Some(i) => v[*i] = c.clone(),
                None => {
                    return Err(ComplexError::ChainOffBasis {
                        degree: chain.degree(),
                        label: l.to_string(),
                    })
                }
            }
        }
        Ok(v)
    }

    pub fn chain_of(&self, degree: i64, v: &[Int]) -> Chain<L> {
        let cells = self.basis(degree);
        assert_eq!(cells.len(), v.len(), "vector length mismatch");
        Chain::from_terms(
            degree,
            cells.iter().cloned().zip(v.iter().cloned()),
        )
    }

    /// Applies the stored boundary to a chain.
    pub fn apply_boundary(&self, chain: &Chain<L>) -> Result<Chain<L>, ComplexError> {
        let v = self.vector_of(chain)?;
        let m = self.boundary_matrix(chain.degree());
        let w = m.mul_vec(&v).expect("boundary application");
        Ok(self.chain_of(chain.degree() - 1, &w))
    }

    /// Checks `d . d = 0` exactly, returning the first nonzero composite
    /// entry on failure.
    pub fn verify(&self) -> Result<(), D2Witness> {
        for k in 1..self.boundary.len() {
            let composite = self.boundary[k - 1]
                .mul(&self.boundary[k])
                .expect("boundary shapes");
            if let Some((r, c, v)) = composite.entries().first() {
                return Err(D2Witness {
                    degree: self.min_degree + k as i64,
                    row: *r,
                    col: *c,
                    value: v.clone(),
                });
            }
        }
        Ok(())
    }

    /// Integral homology. Rejects complexes that fail `d . d = 0`.
    pub fn homology(&self) -> Result<HomologySummary, ComplexError> {
        self.verify()?;
        let n = self.basis.len();
        // ranks[k] = rank of d from degree min+k; factors likewise
        let mut factors: Vec<Vec<Int>> = Vec::with_capacity(n);
        let mut ranks: Vec<usize> = Vec::with_capacity(n);
        for m in &self.boundary {
            let (f, r) = invariant_factors(m);
            factors.push(f);
            ranks.push(r);
        }
        let mut betti = BTreeMap::new();
        let mut torsion = BTreeMap::new();
        let mut euler = Int::zero();
        for k in 0..n {
            let deg = self.min_degree + k as i64;
            let rank_in = if k + 1 < n { ranks[k + 1] } else { 0 };
            let b = self.basis[k].len() - ranks[k] - rank_in;
            betti.insert(deg, b as u64);
            let tors: Vec<Int> = if k + 1 < n {
                factors[k + 1]
                    .iter()
                    .filter(|f| !f.magnitude().is_one())
                    .cloned()
                    .collect()
            } else {
                Vec::new()
            };
            torsion.insert(deg, tors);
            let sign = if (deg.rem_euclid(2)) == 0 { 1 } else { -1 };
            euler += Int::from(sign as i64 * b as i64);
        }
        // Euler characteristic cross-check against raw cell counts.
        let mut euler_cells = Int::zero();
        for k in 0..n {
            let deg = self.min_degree + k as i64;
            let sign = if (deg.rem_euclid(2)) == 0 { 1 } else { -1 };
            euler_cells += Int::from(sign as i64 * self.basis[k].len() as i64);
        }
        assert_eq!(euler, euler_cells, "Euler characteristic bookkeeping");
        Ok(HomologySummary {
            betti,
            torsion,
            euler,
        })
    }

    /// Mod-2 homology dimensions from an independent `F_2` rank computation.
    pub fn homology_f2(&self) -> Result<BTreeMap<i64, u64>, ComplexError> {
        self.verify()?;
        let n = self.basis.len();
        let ranks: Vec<usize> = self.boundary.iter().map(IntMatrix::rank_f2).collect();
        let mut out = BTreeMap::new();
        for k in 0..n {
            let deg = self.min_degree + k as i64;
            let rank_in = if k + 1 < n { ranks[k + 1] } else { 0 };
            out.insert(deg, (self.basis[k].len() - ranks[k] - rank_in) as u64);
        }
        Ok(out)
    }

    /// Universal-coefficient prediction for mod-2 homology from the integral
    /// summary: `dim H_k(F_2) = b_k + e_k + e_{k-1}` with `e_j` the number of
    /// even torsion factors in degree `j`.
    pub fn f2_prediction(summary: &HomologySummary) -> BTreeMap<i64, u64> {
        let even = |deg: i64| -> u64 {
            summary
                .torsion
                .get(&deg)
                .map(|v| v.iter().filter(|f| f.is_even()).count() as u64)
                .unwrap_or(0)
        };
        summary
            .betti
            .iter()
            .map(|(deg, b)| (*deg, b + even(*deg) + even(*deg - 1)))
            .collect()
    }

    /// Decides whether the cycle `x` is a boundary; returns a witness `w`
    /// with `d w = x` when it is. The input must be a cycle.
    pub fn is_boundary(&self, x: &Chain<L>) -> Result<Option<Chain<L>>, ComplexError> {
        let dx = self.apply_boundary(x)?;
        if !dx.is_zero() {
            return Err(ComplexError::NotACycle {
                boundary: format!("{:?}", dx.terms().keys().collect::<Vec<_>>()),
            });
        }
        if x.is_zero() {
            return Ok(Some(Chain::zero(x.degree() + 1)));
        }
        let m = self.boundary_matrix(x.degree() + 1);
        if m.cols() == 0 {
            return Ok(None);
        }
        let snf = smith_normal_form(&m);
        let xv = self.vector_of(x)?;
        let ux = snf.left.mul_vec(&xv).expect("left transform application");
        let mut z = vec![Int::zero(); m.cols()];
        for (i, u) in ux.iter().enumerate() {
            if i < snf.rank {
                let f = &snf.factors[i];
                let (q, r) = u.div_mod_floor(f);
                if !r.is_zero() {
                    return Ok(None);
                }
                z[i] = q;
            } else if !u.is_zero() {
                return Ok(None);
            }
        }
        let w = snf.right.mul_vec(&z).expect("right transform application");
        let witness = self.chain_of(x.degree() + 1, &w);
        debug_assert_eq!(&self.apply_boundary(&witness).unwrap(), x);
        Ok(Some(witness))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Circle as a CW complex: two vertices, two edges, d(e_i) = b - a.
    fn circle() -> ChainComplex<&'static str> {
        ChainComplex::build(
            0,
            vec![vec!["a", "b"], vec!["e1", "e2"]],
            |cell| match *cell {
                "e1" | "e2" => Chain::from_terms(
                    0,
                    [("b", Int::one()), ("a", -Int::one())],
                ),
                _ => Chain::zero(-1),
            },
        )
        .unwrap()
    }

    #[test]
    fn circle_homology() {
        let c = circle();
        assert!(c.verify().is_ok());
        let h = c.homology().unwrap();
        assert_eq!(h.betti_vec(0, 2), vec![1, 1]);
        assert!(h.is_torsion_free());
        assert_eq!(h.euler, Int::zero());
    }

    #[test]
    fn single_point() {
        let c = ChainComplex::build(0, vec![vec!["pt"]], |_| Chain::zero(-1)).unwrap();
        let h = c.homology().unwrap();
        assert_eq!(h.betti_vec(0, 1), vec![1]);
    }

    #[test]
    fn flipped_sign_fails_d2() {
        // Mobius-like sabotage: d(f) hits e1 twice with the same sign as the
        // composite of a deliberately flipped edge boundary.
        let c = ChainComplex::build(
            0,
            vec![vec!["a", "b"], vec!["e1", "e2"], vec!["f"]],
            |cell| match *cell {
                "e1" => Chain::from_terms(0, [("b", Int::one()), ("a", -Int::one())]),
                // flipped on purpose
                "e2" => Chain::from_terms(0, [("b", Int::one()), ("a", -Int::one())]),
                "f" => Chain::from_terms(1, [("e1", Int::one()), ("e2", -Int::one())]),
                _ => Chain::zero(-1),
            },
        )
        .unwrap();
        // d(f) = e1 - e2, d(e1 - e2) = 0: fine. Now flip one face sign:
        let bad = ChainComplex::build(
            0,
            vec![vec!["a", "b"], vec!["e1", "e2"], vec!["f"]],
            |cell| match *cell {
                "e1" => Chain::from_terms(0, [("b", Int::one()), ("a", -Int::one())]),
                "e2" => Chain::from_terms(0, [("b", Int::one()), ("a", -Int::one())]),
                "f" => Chain::from_terms(1, [("e1", Int::one()), ("e2", Int::one())]),
                _ => Chain::zero(-1),
            },
        )
        .unwrap();
        assert!(c.verify().is_ok());
        let err = bad.verify().unwrap_err();
        assert_eq!(err.degree, 2);
        assert!(!err.value.is_zero());
    }

    #[test]
    fn torsion_complex() {
        // One vertex, one edge (a loop), one face attached by degree 2:
        // homology Z, Z/2.
        let c = ChainComplex::build(
            0,
            vec![vec!["v"], vec!["e"], vec!["f"]],
            |cell| match *cell {
                "f" => Chain::from_terms(1, [("e", Int::from(2))]),
                _ => Chain::zero(if *cell == "e" { 0 } else { -1 }),
            },
        )
        .unwrap();
        let h = c.homology().unwrap();
        assert_eq!(h.betti_vec(0, 3), vec![1, 0, 0]);
        assert_eq!(h.torsion.get(&1).unwrap(), &vec![Int::from(2)]);
        // UCT: dim H_1(F2) = 0 + 1, dim H_2(F2) = 0 + 1.
        let f2 = c.homology_f2().unwrap();
        assert_eq!(f2, ChainComplex::<&str>::f2_prediction(&h));
        assert_eq!(f2.get(&1), Some(&1));
        assert_eq!(f2.get(&2), Some(&1));
    }

    #[test]
    fn boundary_witness_on_circle() {
        let c = circle();
        // b - a is a boundary, witnessed by a single edge.
        let x = Chain::from_terms(0, [("b", Int::one()), ("a", -Int::one())]);
        let w = c.is_boundary(&x).unwrap().expect("b - a bounds");
        assert_eq!(c.apply_boundary(&w).unwrap(), x);
        // The H_1 generator e1 - e2 is a cycle but not a boundary.
        let gen = Chain::from_terms(1, [("e1", Int::one()), ("e2", -Int::one())]);
        assert!(c.is_boundary(&gen).unwrap().is_none());
        // Zero chain bounds with zero witness.
        let z = Chain::<&str>::zero(0);
        assert!(c.is_boundary(&z).unwrap().unwrap().is_zero());
        // A single vertex is a cycle (degree-0 boundaries vanish) but no
        // boundary: H_0 = Z.
        let v = Chain::from_terms(0, [("b", Int::one())]);
        assert!(c.is_boundary(&v).unwrap().is_none());
        // Non-cycles are rejected.
        let nc = Chain::from_terms(1, [("e1", Int::one())]);
        assert!(matches!(
            c.is_boundary(&nc),
            Err(ComplexError::NotACycle { .. })
        ));
    }

    #[test]
    fn sphere_from_two_hemispheres() {
        // S^2: standard CW structure with two cells in each dimension 0..2.
        let c = ChainComplex::build(
            0,
            vec![vec!["n", "s"], vec!["e", "w"], vec!["u", "l"]],
            |cell| match *cell {
                "e" | "w" => Chain::from_terms(0, [("n", Int::one()), ("s", -Int::one())]),
                "u" => Chain::from_terms(1, [("e", Int::one()), ("w", -Int::one())]),
                "l" => Chain::from_terms(1, [("e", Int::one()), ("w", -Int::one())]),
                _ => Chain::zero(-1),
            },
        )
        .unwrap();
        let h = c.homology().unwrap();
        assert_eq!(h.betti_vec(0, 3), vec![1, 0, 1]);
        assert_eq!(h.euler, Int::from(2));
    }
}
