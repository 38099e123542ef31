//! Chain-level operad compositions for based and unbased cacti.
//!
//! The based composition inserts one cactus into a lobe of another. On cells
//! it is a sum over overlapping block decompositions: if the host lobe is
//! traversed `r` times and the inserted word has length `l`, every multiset
//! of `r - 1` cut positions in `{1..l}` splits the inserted word into `r`
//! consecutive blocks sharing their endpoint letters, and the blocks replace
//! the host letter occurrence by occurrence. Each summand keeps the combined
//! dimension, with the sign given by comparing orientations through the
//! (linear) coordinate change of the insertion.
//!
//! The unbased composition is defined through the transfer: the composite of
//! two transfers is the transfer of a unique chain, which is the result.

use crate::cells::{
    based_action, based_boundary, cut_at, enumerate_based_cells, enumerate_necklaces,
    necklace_action, necklace_boundary, transfer, transfer_chain, underlying_cut,
    BasedCactusCell, CellError, Letter, NecklaceCell, Perm,
};
use exact_homology::complex::Chain;
use exact_homology::Int;
use itertools::Itertools;
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OpsError {
    #[error("slot {slot} out of range for arity {arity}")]
    InvalidSlot { slot: u32, arity: u32 },
    #[error("transfer factorization failed: {0}")]
    TransferFactorization(String),
    #[error(transparent)]
    Cell(#[from] CellError),
}

// inherited from cells: orientation comparison of coordinate forms
use crate::cells::{orientation_positions, orientation_sign, tangent_basis};

/// Provenance of a position of a composite word.
#[derive(Clone, Copy)]
enum Src {
    /// position in the host word
    Host(usize),
    /// position in the inserted word, and the block (= host occurrence) index
    Insert(usize, usize),
}

/// Partial composition of based cells, `u o_slot v`, as a signed chain of
/// based cells of arity `n + m - 1` and dimension `dim u + dim v`.
pub fn compose_based(
    u: &BasedCactusCell,
    slot: u32,
    v: &BasedCactusCell,
) -> Result<Chain<BasedCactusCell>, OpsError> {
    let (chain, _) = compose_based_counted(u, slot, v)?;
    Ok(chain)
}

/// Same as [`compose_based`], also reporting the number of block
/// decompositions before any cancellation: `C(l + r - 2, r - 1)`.
pub fn compose_based_counted(
    u: &BasedCactusCell,
    slot: u32,
    v: &BasedCactusCell,
) -> Result<(Chain<BasedCactusCell>, usize), OpsError> {
    let n = u.arity();
    let m = v.arity();
    if slot == 0 || slot > n {
        return Err(OpsError::InvalidSlot { slot, arity: n });
    }
    let relabel_host = |x: Letter| if x <= slot { x } else { x + m - 1 };
    let relabel_insert = |y: Letter| y + slot - 1;
    let host_positions: Vec<usize> = u
        .word()
        .iter()
        .enumerate()
        .filter(|(_, &x)| x == slot)
        .map(|(q, _)| q)
        .collect();
    let r = host_positions.len();
    let l = v.len();
    let u_rows = orientation_positions(u.word());
    let v_rows = orientation_positions(v.word());
    let mut chain = Chain::zero(u.dim() + v.dim());
    let mut count = 0usize;
    for cuts in (0..l).combinations_with_replacement(r - 1) {
        count += 1;
        // blocks of v positions, consecutive and sharing cut endpoints
        let mut starts = vec![0usize];
        starts.extend(cuts.iter().copied());
        let mut ends = cuts.clone();
        ends.push(l - 1);
        // assemble the composite word with provenance
        let mut word: Vec<Letter> = Vec::with_capacity(u.len() + v.len() - 1);
        let mut src: Vec<Src> = Vec::with_capacity(word.capacity());
        let mut occurrence = 0usize;
        for (q, &x) in u.word().iter().enumerate() {
            if x != slot {
                word.push(relabel_host(x));
                src.push(Src::Host(q));
            } else {
                for p in starts[occurrence]..=ends[occurrence] {
                    word.push(relabel_insert(v.word()[p]));
                    src.push(Src::Insert(p, occurrence));
                }
                occurrence += 1;
            }
        }
        let cell = BasedCactusCell::new(word, n + m - 1)
            .expect("block substitution yields an admissible word");
        // orientation comparison: pull the composite tangent basis back to
        // the product of the two factor cells (host coordinates first)
        let u_len = u.len();
        let cols: Vec<Vec<i64>> = tangent_basis(cell.word())
            .into_iter()
            .map(|b| {
                let mut out = vec![0i64; u_len + v.len()];
                for (zq, val) in b.iter().enumerate() {
                    if *val == 0 {
                        continue;
                    }
                    match src[zq] {
                        Src::Host(q) => out[q] += val,
                        Src::Insert(p, block) => {
                            out[host_positions[block]] += val;
                            out[u_len + p] += val;
                        }
                    }
                }
                out
            })
            .collect();
        let rows: Vec<usize> = u_rows
            .iter()
            .copied()
            .chain(v_rows.iter().map(|p| p + u_len))
            .collect();
        let sign = orientation_sign(&rows, &cols);
        chain.add_term(cell, Int::from(sign));
    }
    Ok((chain, count))
}

/// Bilinear extension of the based composition to chains.
pub fn compose_based_chain(
    cu: &Chain<BasedCactusCell>,
    slot: u32,
    cv: &Chain<BasedCactusCell>,
) -> Result<Chain<BasedCactusCell>, OpsError> {
    let mut out = Chain::zero(cu.degree() + cv.degree());
    for (u, a) in cu.terms() {
        for (v, b) in cv.terms() {
            for (cell, c) in compose_based(u, slot, v)?.terms() {
                out.add_term(cell.clone(), a * b * c);
            }
        }
    }
    Ok(out)
}

/// Partial composition for the unbased (gravity) model, through the transfer
/// diagram: the unique chain `c` with `tau(c) = tau(a) o_slot tau(b)`. The
/// factorization is recomputed and checked on every call.
pub fn compose_grav(
    a: &NecklaceCell,
    slot: u32,
    b: &NecklaceCell,
) -> Result<Chain<NecklaceCell>, OpsError> {
    if a.arity() < 2 || b.arity() < 2 {
        return Err(OpsError::TransferFactorization(
            "gravity compositions need arity >= 2 on both sides".into(),
        ));
    }
    if slot == 0 || slot > a.arity() {
        return Err(OpsError::InvalidSlot {
            slot,
            arity: a.arity(),
        });
    }
    let composite = compose_based_chain(&transfer(a), slot, &transfer(b))?;
    let result = invert_transfer(&composite)?;
    debug_assert_eq!(transfer_chain(&result), composite);
    Ok(result)
}

/// Bilinear extension of the gravity composition to chains.
pub fn compose_grav_chain(
    ca: &Chain<NecklaceCell>,
    slot: u32,
    cb: &Chain<NecklaceCell>,
) -> Result<Chain<NecklaceCell>, OpsError> {
    let mut out = Chain::zero(ca.degree() + cb.degree() + 1);
    for (a, x) in ca.terms() {
        for (b, y) in cb.terms() {
            for (cell, c) in compose_grav(a, slot, b)?.terms() {
                out.add_term(cell.clone(), x * y * c);
            }
        }
    }
    Ok(out)
}

/// Writes a chain of based cells as `tau` of a necklace chain, failing
/// loudly if it is not in the image.
pub fn invert_transfer(
    composite: &Chain<BasedCactusCell>,
) -> Result<Chain<NecklaceCell>, OpsError> {
    let mut grouped: BTreeMap<NecklaceCell, BTreeMap<usize, Int>> = BTreeMap::new();
    for (cell, coeff) in composite.terms() {
        let Some((neck, k)) = underlying_cut(cell) else {
            return Err(OpsError::TransferFactorization(format!(
                "term {cell} is not a base-point insertion"
            )));
        };
        grouped.entry(neck).or_default().insert(k, coeff.clone());
    }
    let mut out = Chain::zero(composite.degree() - 1);
    for (neck, coeffs) in grouped {
        let tau = transfer(&neck);
        let mut lambda: Option<Int> = None;
        for k in 0..neck.len() {
            let eps = tau.coeff(&cut_at(&neck, k));
            let c = coeffs.get(&k).cloned().unwrap_or_else(Int::zero);
            let this = &c * &eps; // eps is a unit
            match &lambda {
                None => lambda = Some(this),
                Some(prev) if *prev == this => {}
                Some(prev) => {
                    return Err(OpsError::TransferFactorization(format!(
                        "coefficients around {neck} are not a multiple of the transfer: \
                         cut {k} gives {this}, earlier cuts gave {prev}"
                    )))
                }
            }
        }
        out.add_term(neck, lambda.expect("necklaces are nonempty"));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Axiom checking
// ---------------------------------------------------------------------------

/// Outcome of the exhaustive operad-axiom run.
#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(describe());
        }
    }
}

/// The block permutation `g o_i 1_m` induced on `{1..n+m-1}` by `g` acting
/// on the host arity.
pub fn induced_host_perm(g: &Perm, slot: u32, m: u32) -> Perm {
    let n = g.degree();
    let gi = g.apply(slot);
    let mut images = Vec::with_capacity((n + m - 1) as usize);
    let shift_target = |x: Letter| if x <= gi { x } else { x + m - 1 };
    for x in 1..=n + m - 1 {
        if x < slot {
            images.push(shift_target(g.apply(x)));
        } else if x < slot + m {
            images.push(gi + (x - slot));
        } else {
            images.push(shift_target(g.apply(x - m + 1)));
        }
    }
    Perm::new(images).expect("induced permutation is a bijection")
}

/// The block permutation `1_n o_i h` induced by `h` acting on the insert.
pub fn induced_insert_perm(h: &Perm, slot: u32, n: u32) -> Perm {
    let m = h.degree();
    let mut images = Vec::with_capacity((n + m - 1) as usize);
    for x in 1..=n + m - 1 {
        if x < slot {
            images.push(x);
        } else if x < slot + m {
            images.push(slot - 1 + h.apply(x - slot + 1));
        } else {
            images.push(x);
        }
    }
    Perm::new(images).expect("induced permutation is a bijection")
}

fn based_action_chain(g: &Perm, chain: &Chain<BasedCactusCell>) -> Chain<BasedCactusCell> {
    let mut out = Chain::zero(chain.degree());
    for (cell, coeff) in chain.terms() {
        let (image, sign) = based_action(g, cell).expect("arity match");
        out.add_term(image, coeff * Int::from(sign));
    }
    out
}

fn necklace_action_chain_x(g: &Perm, chain: &Chain<NecklaceCell>) -> Chain<NecklaceCell> {
    let mut out = Chain::zero(chain.degree());
    for (cell, coeff) in chain.terms() {
        let (image, sign) = necklace_action(g, cell).expect("arity match");
        out.add_term(image, coeff * Int::from(sign));
    }
    out
}

fn boundary_chain(chain: &Chain<BasedCactusCell>) -> Chain<BasedCactusCell> {
    let mut out = Chain::zero(chain.degree() - 1);
    for (cell, coeff) in chain.terms() {
        for (f, s) in based_boundary(cell).terms() {
            out.add_term(f.clone(), coeff * s);
        }
    }
    out
}

fn necklace_boundary_chain(chain: &Chain<NecklaceCell>) -> Chain<NecklaceCell> {
    let mut out = Chain::zero(chain.degree() - 1);
    for (cell, coeff) in chain.terms() {
        for (f, s) in necklace_boundary(cell).terms() {
            out.add_term(f.clone(), coeff * s);
        }
    }
    out
}

fn minus_one_pow(e: i64) -> Int {
    if e.rem_euclid(2) == 0 {
        Int::from(1)
    } else {
        Int::from(-1)
    }
}

/// Exhaustively checks unit laws, sequential associativity, parallel
/// commutation with Koszul signs, equivariance and the Leibniz rule for both
/// the based and the unbased composition, over all cells within the arity
/// budget (composite arities never exceed `budget`).
pub fn check_operad_axioms(budget: u32) -> Result<AxiomReport, OpsError> {
    let mut report = AxiomReport::default();
    let budget = budget.max(3);
    let based: Vec<Vec<BasedCactusCell>> = (0..=budget)
        .map(|n| {
            if n == 0 {
                Vec::new()
            } else {
                enumerate_based_cells(n, None)
            }
        })
        .collect();
    let necks: Vec<Vec<NecklaceCell>> = (0..=budget)
        .map(|n| {
            if n < 2 {
                Vec::new()
            } else {
                enumerate_necklaces(n, None)
            }
        })
        .collect();

    // Unit laws for the based model (the unbased model has no arity-1 space).
    let unit = BasedCactusCell::unit();
    for n in 1..=budget {
        for u in &based[n as usize] {
            for slot in 1..=n {
                let c = compose_based(u, slot, &unit)?;
                report.record(c == Chain::single(u.dim(), u.clone()), || {
                    format!("right unit law failed at {u} o_{slot} 1")
                });
            }
            let c = compose_based(&unit, 1, u)?;
            report.record(c == Chain::single(u.dim(), u.clone()), || {
                format!("left unit law failed at 1 o_1 {u}")
            });
        }
    }

    // Pairwise checks: Leibniz and equivariance.
    for n in 2..=budget {
        for m in 2..=budget {
            if n + m - 1 > budget {
                continue;
            }
            for u in &based[n as usize] {
                for v in &based[m as usize] {
                    for slot in 1..=n {
                        let uv = compose_based(u, slot, v)?;
                        // Leibniz: d(u o v) = du o v + (-1)^{dim u} u o dv
                        let lhs = boundary_chain(&uv);
                        let du_v =
                            compose_based_chain(&based_boundary(u), slot, &Chain::single(v.dim(), v.clone()))?;
                        let u_dv =
                            compose_based_chain(&Chain::single(u.dim(), u.clone()), slot, &based_boundary(v))?;
                        let rhs = du_v.add(&u_dv.scale(&minus_one_pow(u.dim())));
                        report.record(lhs == rhs, || {
                            format!("based Leibniz failed at {u} o_{slot} {v}")
                        });
                        // Equivariance in the host arity.
                        for g in Perm::all(n) {
                            let (gu, sign_u) = based_action(&g, u).unwrap();
                            let lhs =
                                compose_based(&gu, g.apply(slot), v)?.scale(&Int::from(sign_u));
                            let rhs = based_action_chain(&induced_host_perm(&g, slot, m), &uv);
                            report.record(lhs == rhs, || {
                                format!(
                                    "based host equivariance failed at {u} o_{slot} {v} under {g:?}"
                                )
                            });
                        }
                    }
                }
            }
            for a in &necks[n as usize] {
                for b in &necks[m as usize] {
                    for slot in 1..=n {
                        let ab = compose_grav(a, slot, b)?;
                        // dimensions: every summand has dim a + dim b + 1
                        report.record(
                            ab.terms().keys().all(|z| z.dim() == a.dim() + b.dim() + 1),
                            || format!("grav dimension additivity failed at {a} o_{slot} {b}"),
                        );
                        // Leibniz with shifted degrees:
                        // d(a o b) = da o b + (-1)^{dim a + 1} a o db
                        let lhs = necklace_boundary_chain(&ab);
                        let da_b = compose_grav_chain(
                            &necklace_boundary(a),
                            slot,
                            &Chain::single(b.dim(), b.clone()),
                        )?;
                        let a_db = compose_grav_chain(
                            &Chain::single(a.dim(), a.clone()),
                            slot,
                            &necklace_boundary(b),
                        )?;
                        let rhs = da_b.add(&a_db.scale(&minus_one_pow(a.dim() + 1)));
                        report.record(lhs == rhs, || {
                            format!("grav Leibniz failed at {a} o_{slot} {b}")
                        });
                        // Equivariance in the host and insert arities.
                        for g in Perm::all(n) {
                            let (ga, sign_a) = necklace_action(&g, a).unwrap();
                            let lhs = compose_grav(&ga, g.apply(slot), b)?
                                .scale(&Int::from(sign_a));
                            let rhs =
                                necklace_action_chain_x(&induced_host_perm(&g, slot, m), &ab);
                            report.record(lhs == rhs, || {
                                format!("grav host equivariance failed at {a} o_{slot} {b} under {g:?}")
                            });
                        }
                        for h in Perm::all(m) {
                            let (hb, sign_b) = necklace_action(&h, b).unwrap();
                            let lhs = compose_grav(a, slot, &hb)?.scale(&Int::from(sign_b));
                            let rhs =
                                necklace_action_chain_x(&induced_insert_perm(&h, slot, n), &ab);
                            report.record(lhs == rhs, || {
                                format!("grav insert equivariance failed at {a} o_{slot} {b} under {h:?}")
                            });
                        }
                    }
                }
            }
        }
    }

    // Triple checks: sequential associativity and parallel commutation.
    for n in 2..=budget {
        for m in 2..=budget {
            for p in 2..=budget {
                if n + m + p - 2 > budget {
                    continue;
                }
                for u in &based[n as usize] {
                    for v in &based[m as usize] {
                        for w in &based[p as usize] {
                            check_based_triples(&mut report, u, v, w)?;
                        }
                    }
                }
                for a in &necks[n as usize] {
                    for b in &necks[m as usize] {
                        for c in &necks[p as usize] {
                            check_grav_triples(&mut report, a, b, c)?;
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

fn check_based_triples(
    report: &mut AxiomReport,
    u: &BasedCactusCell,
    v: &BasedCactusCell,
    w: &BasedCactusCell,
) -> Result<(), OpsError> {
    let n = u.arity();
    let m = v.arity();
    let single =
        |c: &BasedCactusCell| -> Chain<BasedCactusCell> { Chain::single(c.dim(), c.clone()) };
    // sequential: (u o_i v) o_{i-1+j} w = u o_i (v o_j w)
    for i in 1..=n {
        for j in 1..=m {
            let lhs = compose_based_chain(&compose_based(u, i, v)?, i - 1 + j, &single(w))?;
            let rhs = compose_based_chain(&single(u), i, &compose_based(v, j, w)?)?;
            report.record(lhs == rhs, || {
                format!("based sequential associativity failed at ({u} o_{i} {v}) o_{} {w}", i - 1 + j)
            });
        }
    }
    // parallel: for j < i, (u o_i v) o_j w = (-1)^{dim v dim w} (u o_j w) o_{i+p-1} v
    let p = w.arity();
    for i in 2..=n {
        for j in 1..i {
            let lhs = compose_based_chain(&compose_based(u, i, v)?, j, &single(w))?;
            let rhs = compose_based_chain(&compose_based(u, j, w)?, i + p - 1, &single(v))?
                .scale(&minus_one_pow(v.dim() * w.dim()));
            report.record(lhs == rhs, || {
                format!("based parallel commutation failed at slots {j} < {i} of {u} with {v}, {w}")
            });
        }
    }
    Ok(())
}

fn check_grav_triples(
    report: &mut AxiomReport,
    a: &NecklaceCell,
    b: &NecklaceCell,
    c: &NecklaceCell,
) -> Result<(), OpsError> {
    let n = a.arity();
    let m = b.arity();
    let single = |x: &NecklaceCell| -> Chain<NecklaceCell> { Chain::single(x.dim(), x.clone()) };
    for i in 1..=n {
        for j in 1..=m {
            let lhs = compose_grav_chain(&compose_grav(a, i, b)?, i - 1 + j, &single(c))?;
            let rhs = compose_grav_chain(&single(a), i, &compose_grav(b, j, c)?)?;
            report.record(lhs == rhs, || {
                format!("grav sequential associativity failed at ({a} o_{i} {b}) o_{} {c}", i - 1 + j)
            });
        }
    }
    let p = c.arity();
    for i in 2..=n {
        for j in 1..i {
            let lhs = compose_grav_chain(&compose_grav(a, i, b)?, j, &single(c))?;
            let rhs = compose_grav_chain(&compose_grav(a, j, c)?, i + p - 1, &single(b))?
                .scale(&minus_one_pow((b.dim() + 1) * (c.dim() + 1)));
            report.record(lhs == rhs, || {
                format!("grav parallel commutation failed at slots {j} < {i} of {a} with {b}, {c}")
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn based(word: &[Letter], n: u32) -> BasedCactusCell {
        BasedCactusCell::new(word.to_vec(), n).unwrap()
    }

    fn neck(word: &[Letter], n: u32) -> NecklaceCell {
        NecklaceCell::new(word.to_vec(), n).unwrap()
    }

    #[test]
    fn single_block_composition() {
        // r = 1 forces one block: (1,2) o_2 (1,2) = (1,2,3)
        let c = compose_based(&based(&[1, 2], 2), 2, &based(&[1, 2], 2)).unwrap();
        assert_eq!(c, Chain::single(0, based(&[1, 2, 3], 3)));
    }

    #[test]
    fn three_cut_composition() {
        // (2,1,2) o_2 (1,2,1): the insert relabels to (2,3,2), r = 2, l = 3
        let (c, count) =
            compose_based_counted(&based(&[2, 1, 2], 2), 2, &based(&[1, 2, 1], 2)).unwrap();
        assert_eq!(count, 3);
        let support: Vec<_> = c.terms().keys().cloned().collect();
        assert_eq!(
            support,
            vec![
                based(&[2, 1, 2, 3, 2], 3),
                based(&[2, 3, 1, 3, 2], 3),
                based(&[2, 3, 2, 1, 2], 3)
            ]
        );
        assert!(c.terms().values().all(|v| v.magnitude().is_one()));
    }

    #[test]
    fn summand_count_formula() {
        // count before cancellation is C(l + r - 2, r - 1)
        fn binom(n: usize, k: usize) -> usize {
            if k > n {
                return 0;
            }
            let mut out = 1usize;
            for i in 0..k {
                out = out * (n - i) / (i + 1);
            }
            out
        }
        for u in enumerate_based_cells(3, None) {
            for v in enumerate_based_cells(2, None) {
                for slot in 1..=3u32 {
                    let (_, count) = compose_based_counted(&u, slot, &v).unwrap();
                    let r = u.word().iter().filter(|&&x| x == slot).count();
                    assert_eq!(count, binom(v.len() + r - 2, r - 1));
                }
            }
        }
    }

    #[test]
    fn unit_laws() {
        let unit = BasedCactusCell::unit();
        for n in 1..=3u32 {
            for u in enumerate_based_cells(n, None) {
                for slot in 1..=n {
                    let c = compose_based(&u, slot, &unit).unwrap();
                    assert_eq!(c, Chain::single(u.dim(), u.clone()));
                }
                let c = compose_based(&unit, 1, &u).unwrap();
                assert_eq!(c, Chain::single(u.dim(), u.clone()));
            }
        }
    }

    #[test]
    fn grav_composition_of_points() {
        // <1,2> o_2 <1,2> = +-<1,2,3,2> +- <1,3,2,3>; tau of it has 8 summands
        let c = compose_grav(&neck(&[1, 2], 2), 2, &neck(&[1, 2], 2)).unwrap();
        let support: Vec<_> = c.terms().keys().cloned().collect();
        assert_eq!(support, vec![neck(&[1, 2, 3, 2], 3), neck(&[1, 3, 2, 3], 3)]);
        assert!(c.terms().values().all(|v| v.magnitude().is_one()));
        let tau = transfer_chain(&c);
        assert_eq!(tau.terms().len(), 8);
        // only dimension-1 cells survive when composing two 0-cells
        assert!(c.terms().keys().all(|z| z.dim() == 1));
    }

    #[test]
    fn grav_paper_shape_example() {
        // a 0-cell composed into a 1-cell of arity three: four summands
        let c = compose_grav(&neck(&[1, 2], 2), 2, &neck(&[1, 2, 3, 2], 3)).unwrap();
        assert_eq!(c.terms().len(), 4);
        assert!(c.terms().keys().all(|z| z.dim() == 2 && z.arity() == 4));
        assert!(c.terms().values().all(|v| v.magnitude().is_one()));
    }

    #[test]
    fn grav_transfer_identity_exhaustive_small() {
        for (n, m) in [(2u32, 2u32), (2, 3), (3, 2)] {
            for a in enumerate_necklaces(n, None) {
                for b in enumerate_necklaces(m, None) {
                    for slot in 1..=n {
                        let c = compose_grav(&a, slot, &b).unwrap();
                        let lhs = transfer_chain(&c);
                        let rhs =
                            compose_based_chain(&transfer(&a), slot, &transfer(&b)).unwrap();
                        assert_eq!(lhs, rhs, "transfer identity at {a} o_{slot} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn axioms_within_budget_four() {
        let report = check_operad_axioms(4).unwrap();
        assert!(
            report.passed(),
            "violations: {:?}",
            &report.violations[..report.violations.len().min(5)]
        );
        assert!(report.checked > 1000);
    }
}
