//! Smith normal form over `Z`.
//!
//! The elimination always pivots on a nonzero entry of smallest absolute
//! value, breaking ties by `(row, col)` order, so runs are reproducible.
//! Arbitrary-precision integers are used throughout; there is no machine-word
//! kernel.

use crate::matrix::{Int, IntMatrix};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Result of a Smith normal form computation: `left * m * right` is the
/// diagonal matrix of `factors` (padded with zeros), and both transforms are
/// unimodular.
#[derive(Debug, Clone)]
pub struct Snf {
    pub factors: Vec<Int>,
    pub rank: usize,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

struct Workspace {
    rows: Vec<BTreeMap<usize, Int>>,
    cols: Vec<BTreeSet<usize>>,
    // |value| -> positions, for smallest-pivot selection
    bucket: BTreeMap<BigUint, BTreeSet<(usize, usize)>>,
    row_active: Vec<bool>,
    col_active: Vec<bool>,
    // left transform rows (row ops applied), right transform columns (col ops applied)
    left: Option<Vec<BTreeMap<usize, Int>>>,
    right: Option<Vec<BTreeMap<usize, Int>>>,
}

impl Workspace {
    fn new(m: &IntMatrix, track: bool) -> Self {
        let mut ws = Workspace {
            rows: vec![BTreeMap::new(); m.rows()],
            cols: vec![BTreeSet::new(); m.cols()],
            bucket: BTreeMap::new(),
            row_active: vec![true; m.rows()],
            col_active: vec![true; m.cols()],
            left: track.then(|| {
                (0..m.rows())
                    .map(|i| BTreeMap::from([(i, Int::one())]))
                    .collect()
            }),
            right: track.then(|| {
                (0..m.cols())
                    .map(|j| BTreeMap::from([(j, Int::one())]))
                    .collect()
            }),
        };
        for (r, c, v) in m.entries() {
            ws.set(*r, *c, v.clone());
        }
        ws
    }

    fn get(&self, r: usize, c: usize) -> Int {
        self.rows[r].get(&c).cloned().unwrap_or_else(Int::zero)
    }

    fn set(&mut self, r: usize, c: usize, v: Int) {
        if let Some(old) = self.rows[r].get(&c) {
            let key = old.magnitude().clone();
            if let Some(set) = self.bucket.get_mut(&key) {
                set.remove(&(r, c));
                if set.is_empty() {
                    self.bucket.remove(&key);
                }
            }
        }
        if v.is_zero() {
            self.rows[r].remove(&c);
            self.cols[c].remove(&r);
        } else {
            self.bucket
                .entry(v.magnitude().clone())
                .or_default()
                .insert((r, c));
            self.rows[r].insert(c, v);
            self.cols[c].insert(r);
        }
    }

    /// row_target -= q * row_source
    fn row_sub(&mut self, target: usize, source: usize, q: &Int) {
        let src: Vec<(usize, Int)> = self.rows[source]
            .iter()
            .map(|(c, v)| (*c, v.clone()))
            .collect();
        for (c, v) in src {
            let new = self.get(target, c) - q * &v;
            self.set(target, c, new);
        }
        if let Some(left) = self.left.as_mut() {
            let src: Vec<(usize, Int)> =
                left[source].iter().map(|(c, v)| (*c, v.clone())).collect();
            for (c, v) in src {
                let cur = left[target].get(&c).cloned().unwrap_or_else(Int::zero);
                let new = cur - q * &v;
                if new.is_zero() {
                    left[target].remove(&c);
                } else {
                    left[target].insert(c, new);
                }
            }
        }
    }

    /// col_target -= q * col_source
    fn col_sub(&mut self, target: usize, source: usize, q: &Int) {
        let src: Vec<usize> = self.cols[source].iter().copied().collect();
        for r in src {
            let v = self.get(r, source);
            let new = self.get(r, target) - q * &v;
            self.set(r, target, new);
        }
        if let Some(right) = self.right.as_mut() {
            let src: Vec<(usize, Int)> = right[source]
                .iter()
                .map(|(r, v)| (*r, v.clone()))
                .collect();
            for (r, v) in src {
                let cur = right[target].get(&r).cloned().unwrap_or_else(Int::zero);
                let new = cur - q * &v;
                if new.is_zero() {
                    right[target].remove(&r);
                } else {
                    right[target].insert(r, new);
                }
            }
        }
    }

    /// Smallest active entry by |value|, ties by (row, col).
    fn select_pivot(&self) -> Option<(usize, usize)> {
        self.bucket
            .iter()
            .next()
            .and_then(|(_, set)| set.iter().next().copied())
    }

    /// First active entry (in (row, col) order) not divisible by `p`.
    fn first_nondivisible(&self, p: &Int) -> Option<(usize, usize)> {
        for (r, row) in self.rows.iter().enumerate() {
            if !self.row_active[r] {
                continue;
            }
            for (c, v) in row {
                if self.col_active[*c] && !v.mod_floor(p).is_zero() {
                    return Some((r, *c));
                }
            }
        }
        None
    }
}

fn eliminate(m: &IntMatrix, track: bool) -> (Vec<(usize, usize, Int)>, Workspace) {
    let mut ws = Workspace::new(m, track);
    let mut pivots: Vec<(usize, usize, Int)> = Vec::new();
    'outer: loop {
        let Some((pr, pc)) = ws.select_pivot() else {
            break;
        };
        let p = ws.get(pr, pc);
        // Clear the pivot column by row operations.
        let col_rows: Vec<usize> = ws.cols[pc].iter().copied().filter(|r| *r != pr).collect();
        for r in &col_rows {
            let q = ws.get(*r, pc).div_floor(&p);
            if !q.is_zero() {
                ws.row_sub(*r, pr, &q);
            }
        }
        if ws.cols[pc].len() > 1 {
            // Nonzero remainders are strictly smaller pivots; reselect.
            continue 'outer;
        }
        // Clear the pivot row by column operations.
        let row_cols: Vec<usize> = ws.rows[pr].keys().copied().filter(|c| *c != pc).collect();
        for c in &row_cols {
            let q = ws.get(pr, *c).div_floor(&p);
            if !q.is_zero() {
                ws.col_sub(*c, pc, &q);
            }
        }
        if ws.rows[pr].len() > 1 {
            continue 'outer;
        }
        // Enforce divisibility: the pivot must divide every remaining entry.
        if !p.magnitude().is_one() {
            // Temporarily hide the pivot from the scan.
            ws.row_active[pr] = false;
            ws.col_active[pc] = false;
            let offender = ws.first_nondivisible(&p);
            ws.row_active[pr] = true;
            ws.col_active[pc] = true;
            if let Some((r, _)) = offender {
                let minus_one = -Int::one();
                ws.row_sub(pr, r, &minus_one); // row_pr += row_r
                continue 'outer;
            }
        }
        // Pivot done: retire its row and column.
        ws.set(pr, pc, Int::zero());
        ws.row_active[pr] = false;
        ws.col_active[pc] = false;
        pivots.push((pr, pc, p));
    }
    (pivots, ws)
}

/// Invariant factors and rank only, without transform tracking.
pub fn invariant_factors(m: &IntMatrix) -> (Vec<Int>, usize) {
    let (pivots, _) = eliminate(m, false);
    let factors: Vec<Int> = pivots.iter().map(|(_, _, p)| p.abs()).collect();
    let rank = factors.len();
    (factors, rank)
}

/// Full Smith normal form with unimodular transforms: `left * m * right` is
/// diagonal with the invariant factors on the diagonal, each dividing the
/// next.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (pivots, ws) = eliminate(m, true);
    let rank = pivots.len();
    // Permute pivot rows/cols to the leading diagonal and fix signs.
    let mut row_perm: Vec<usize> = pivots.iter().map(|(r, _, _)| *r).collect();
    let mut used: BTreeSet<usize> = row_perm.iter().copied().collect();
    row_perm.extend((0..m.rows()).filter(|r| !used.contains(r)));
    let mut col_perm: Vec<usize> = pivots.iter().map(|(_, c, _)| *c).collect();
    used = col_perm.iter().copied().collect();
    col_perm.extend((0..m.cols()).filter(|c| !used.contains(c)));

    let left_rows = ws.left.expect("transforms tracked");
    let right_cols = ws.right.expect("transforms tracked");
    let mut left_triplets = Vec::new();
    for (new_r, old_r) in row_perm.iter().enumerate() {
        let negate = new_r < rank && pivots[new_r].2.is_negative();
        for (c, v) in &left_rows[*old_r] {
            left_triplets.push((new_r, *c, if negate { -v.clone() } else { v.clone() }));
        }
    }
    let mut right_triplets = Vec::new();
    for (new_c, old_c) in col_perm.iter().enumerate() {
        for (r, v) in &right_cols[*old_c] {
            right_triplets.push((*r, new_c, v.clone()));
        }
    }
    let left = IntMatrix::from_triplets(m.rows(), m.rows(), left_triplets).expect("left transform");
    let right =
        IntMatrix::from_triplets(m.cols(), m.cols(), right_triplets).expect("right transform");
    let factors: Vec<Int> = pivots.iter().map(|(_, _, p)| p.abs()).collect();
    Snf {
        factors,
        rank,
        left,
        right,
    }
}

impl Snf {
    /// The diagonal matrix `left * m * right` this decomposition asserts.
    pub fn diagonal(&self, rows: usize, cols: usize) -> IntMatrix {
        IntMatrix::from_triplets(
            rows,
            cols,
            self.factors
                .iter()
                .enumerate()
                .map(|(i, f)| (i, i, f.clone())),
        )
        .expect("diagonal")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, t: &[(usize, usize, i64)]) -> IntMatrix {
        IntMatrix::from_triplets(rows, cols, t.iter().map(|(r, c, v)| (*r, *c, Int::from(*v))))
            .unwrap()
    }

    fn check_roundtrip(a: &IntMatrix) -> Snf {
        let snf = smith_normal_form(a);
        let d = snf.left.mul(a).unwrap().mul(&snf.right).unwrap();
        assert_eq!(d, snf.diagonal(a.rows(), a.cols()), "U*m*V not diagonal");
        let du = snf.left.det_dense().unwrap();
        let dv = snf.right.det_dense().unwrap();
        assert!(du.magnitude().is_one(), "left not unimodular: det {du}");
        assert!(dv.magnitude().is_one(), "right not unimodular: det {dv}");
        for w in snf.factors.windows(2) {
            assert!(w[1].mod_floor(&w[0]).is_zero(), "divisibility chain");
        }
        snf
    }

    #[test]
    fn identity_case() {
        let a = IntMatrix::identity(2);
        let snf = check_roundtrip(&a);
        assert_eq!(snf.factors, vec![Int::one(), Int::one()]);
        assert_eq!(snf.rank, 2);
    }

    #[test]
    fn classic_2x2() {
        // |det| = 8, gcd of entries 2, so the factors are (2, 4).
        let a = m(2, 2, &[(0, 0, 2), (0, 1, 4), (1, 0, 6), (1, 1, 8)]);
        let snf = check_roundtrip(&a);
        assert_eq!(snf.factors, vec![Int::from(2), Int::from(4)]);
        assert_eq!(snf.rank, 2);
    }

    #[test]
    fn zero_matrix() {
        let a = IntMatrix::zero(3, 2);
        let snf = check_roundtrip(&a);
        assert!(snf.factors.is_empty());
        assert_eq!(snf.rank, 0);
    }

    #[test]
    fn empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (3, 0)] {
            let a = IntMatrix::zero(r, c);
            let snf = smith_normal_form(&a);
            assert_eq!(snf.rank, 0);
        }
    }

    #[test]
    fn torsion_diagonal() {
        let a = m(3, 3, &[(0, 0, 2), (1, 1, 6), (2, 2, 4)]);
        let snf = check_roundtrip(&a);
        assert_eq!(
            snf.factors,
            vec![Int::from(2), Int::from(2), Int::from(12)]
        );
    }

    #[test]
    fn factors_only_agrees_with_full() {
        let a = m(
            3,
            4,
            &[
                (0, 0, 4),
                (0, 1, -6),
                (0, 3, 2),
                (1, 1, 6),
                (1, 2, 12),
                (2, 0, 10),
                (2, 2, 4),
                (2, 3, 16),
            ],
        );
        let snf = check_roundtrip(&a);
        let (factors, rank) = invariant_factors(&a);
        assert_eq!(factors, snf.factors);
        assert_eq!(rank, snf.rank);
    }

    proptest::proptest! {
        #[test]
        fn random_roundtrip(entries in proptest::collection::vec(
            (0usize..5, 0usize..5, -9i64..10), 0..18)) {
            let a = IntMatrix::from_triplets(
                5, 5, entries.into_iter().map(|(r, c, v)| (r, c, Int::from(v)))).unwrap();
            check_roundtrip(&a);
        }
    }
}
