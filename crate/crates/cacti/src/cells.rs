//! Cells of the based and unbased cacti spaces.
//!
//! A cell of the based space with `n` lobes is an admissible word over
//! `{1..n}`: every value appears, adjacent letters differ, and no scattered
//! subsequence reads `i, j, i, j` with `i != j`. The cell is a product of
//! simplices, one per lobe, whose coordinates are the arc lengths; its
//! dimension is `length - n`. Cells of the quotient by the circle action are
//! admissible cyclic words, stored as their lexicographically least rotation.
//!
//! All signs (boundary incidences, the projection to the quotient, the
//! transfer, relabelling) are orientation comparisons: each cell carries the
//! orientation of its arc-length coordinates grouped by lobe index and
//! ordered by occurrence, and every map between cells is linear in those
//! coordinates, so its sign is the sign of an integer determinant.

use exact_homology::complex::{Chain, ChainComplex};
use exact_homology::Int;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Lobe label, `1..=n`.
pub type Letter = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CellError {
    #[error("word is not an admissible based cactus cell for arity {arity}: {word:?}")]
    InadmissibleWord { word: Vec<Letter>, arity: u32 },
    #[error("word is not an admissible necklace for arity {arity}: {word:?}")]
    InadmissibleNecklace { word: Vec<Letter>, arity: u32 },
    #[error("permutation {0:?} is not a bijection of 1..={1}")]
    BadPermutation(Vec<Letter>, u32),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: u32, got: u32 },
}

/// A permutation of `{1..n}`, stored as the image list `g(1), ..., g(n)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<Letter>);

impl Perm {
    pub fn new(images: Vec<Letter>) -> Result<Self, CellError> {
        let n = images.len() as u32;
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x == 0 || x > n || seen[(x - 1) as usize] {
                return Err(CellError::BadPermutation(images, n));
            }
            seen[(x - 1) as usize] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(n: u32) -> Self {
        Perm((1..=n).collect())
    }

    /// Transposition `(a b)` inside `{1..n}`.
    pub fn transposition(n: u32, a: Letter, b: Letter) -> Self {
        let mut v: Vec<Letter> = (1..=n).collect();
        v.swap((a - 1) as usize, (b - 1) as usize);
        Perm(v)
    }

    pub fn degree(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn apply(&self, x: Letter) -> Letter {
        self.0[(x - 1) as usize]
    }

    /// `self . other`: first `other`, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&x| self.apply(x)).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            v[(x - 1) as usize] = i as Letter + 1;
        }
        Perm(v)
    }

    pub fn images(&self) -> &[Letter] {
        &self.0
    }

    /// All permutations of `{1..n}` in lexicographic order.
    pub fn all(n: u32) -> Vec<Perm> {
        fn rec(n: u32, current: &mut Vec<Letter>, out: &mut Vec<Perm>) {
            if current.len() == n as usize {
                out.push(Perm(current.clone()));
                return;
            }
            for x in 1..=n {
                if !current.contains(&x) {
                    current.push(x);
                    rec(n, current, out);
                    current.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut out);
        out
    }
}

// ---------------------------------------------------------------------------
// Admissibility
// ---------------------------------------------------------------------------

fn all_letters_appear(word: &[Letter], n: u32) -> bool {
    let mut seen = vec![false; n as usize];
    for &x in word {
        if x == 0 || x > n {
            return false;
        }
        seen[(x - 1) as usize] = true;
    }
    seen.iter().all(|&b| b)
}

/// Scattered pattern `x, y, x, y` (positions strictly increasing, `x != y`).
fn has_linear_crossing(word: &[Letter]) -> bool {
    let letters: Vec<Letter> = {
        let mut v = word.to_vec();
        v.sort_unstable();
        v.dedup();
        v
    };
    for &x in &letters {
        for &y in &letters {
            if x == y {
                continue;
            }
            let mut state = 0;
            for &c in word {
                state = match (state, c) {
                    (0, c) if c == x => 1,
                    (1, c) if c == y => 2,
                    (2, c) if c == x => 3,
                    (3, c) if c == y => return true,
                    _ => state,
                };
            }
        }
    }
    false
}

pub(crate) fn is_admissible_linear(word: &[Letter], n: u32) -> bool {
    !word.is_empty()
        && all_letters_appear(word, n)
        && word.windows(2).all(|w| w[0] != w[1])
        && !has_linear_crossing(word)
}

/// Cyclic admissibility: adjacent letters differ cyclically, and no two
/// letters interleave around the circle (each letter's occurrences must fit
/// in a single gap between consecutive occurrences of any other letter).
pub(crate) fn is_admissible_cyclic(word: &[Letter], n: u32) -> bool {
    let len = word.len();
    if len == 0 || !all_letters_appear(word, n) {
        return false;
    }
    if len > 1 && (0..len).any(|q| word[q] == word[(q + 1) % len]) {
        return false;
    }
    let mut occ: BTreeMap<Letter, Vec<usize>> = BTreeMap::new();
    for (q, &x) in word.iter().enumerate() {
        occ.entry(x).or_default().push(q);
    }
    for (&x, xs) in &occ {
        if xs.len() < 2 {
            continue;
        }
        for (&y, ys) in &occ {
            if x == y {
                continue;
            }
            // Cyclic gaps of x start at each occurrence; y must sit in one gap.
            let gap_of = |q: usize| -> usize {
                match xs.binary_search(&q) {
                    Ok(_) => unreachable!("distinct letters"),
                    Err(t) => (t + xs.len() - 1) % xs.len(),
                }
            };
            let g0 = gap_of(ys[0]);
            if ys.iter().any(|&q| gap_of(q) != g0) {
                return false;
            }
        }
    }
    true
}

fn canonical_rotation(word: &[Letter]) -> (Vec<Letter>, usize) {
    let len = word.len();
    let mut best = 0usize;
    for r in 1..len {
        for t in 0..len {
            let a = word[(best + t) % len];
            let b = word[(r + t) % len];
            match b.cmp(&a) {
                std::cmp::Ordering::Less => {
                    best = r;
                    break;
                }
                std::cmp::Ordering::Greater => break,
                std::cmp::Ordering::Equal => continue,
            }
        }
    }
    let rotated = (0..len).map(|t| word[(best + t) % len]).collect();
    (rotated, best)
}

// ---------------------------------------------------------------------------
// Cell types
// ---------------------------------------------------------------------------

/// A cell of the based cacti space: an admissible word over `{1..arity}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasedCactusCell {
    word: Vec<Letter>,
    arity: u32,
}

impl BasedCactusCell {
    pub fn new(word: Vec<Letter>, arity: u32) -> Result<Self, CellError> {
        if arity == 0 || !is_admissible_linear(&word, arity) {
            return Err(CellError::InadmissibleWord { word, arity });
        }
        Ok(BasedCactusCell { word, arity })
    }

    pub(crate) fn new_unchecked(word: Vec<Letter>, arity: u32) -> Self {
        debug_assert!(is_admissible_linear(&word, arity));
        BasedCactusCell { word, arity }
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Cell dimension: word length minus arity.
    pub fn dim(&self) -> i64 {
        self.word.len() as i64 - self.arity as i64
    }

    /// The operad unit: the unique cell of arity 1.
    pub fn unit() -> Self {
        BasedCactusCell {
            word: vec![1],
            arity: 1,
        }
    }
}

impl fmt::Display for BasedCactusCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.word
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

impl Serialize for BasedCactusCell {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.word.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BasedCactusCell {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let word = Vec::<Letter>::deserialize(deserializer)?;
        let arity = word.iter().copied().max().unwrap_or(0);
        BasedCactusCell::new(word, arity).map_err(D::Error::custom)
    }
}

/// A cell of the unbased cacti space: an admissible cyclic word stored as
/// its lexicographically least rotation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NecklaceCell {
    word: Vec<Letter>,
    arity: u32,
}

impl NecklaceCell {
    /// Builds from any rotation of an admissible cyclic word.
    pub fn new(word: Vec<Letter>, arity: u32) -> Result<Self, CellError> {
        if arity < 2 || !is_admissible_cyclic(&word, arity) {
            return Err(CellError::InadmissibleNecklace { word, arity });
        }
        let (canon, _) = canonical_rotation(&word);
        Ok(NecklaceCell { word: canon, arity })
    }

    pub(crate) fn new_unchecked(canonical: Vec<Letter>, arity: u32) -> Self {
        debug_assert!(is_admissible_cyclic(&canonical, arity));
        debug_assert_eq!(canonical_rotation(&canonical).1, 0);
        NecklaceCell {
            word: canonical,
            arity,
        }
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> i64 {
        self.word.len() as i64 - self.arity as i64
    }
}

impl fmt::Display for NecklaceCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{}>",
            self.word
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

#[derive(Serialize, Deserialize)]
struct NecklaceRepr {
    word: Vec<Letter>,
    cyclic: bool,
}

impl Serialize for NecklaceCell {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        NecklaceRepr {
            word: self.word.clone(),
            cyclic: true,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NecklaceCell {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = NecklaceRepr::deserialize(deserializer)?;
        if !repr.cyclic {
            return Err(D::Error::custom("necklace JSON requires \"cyclic\": true"));
        }
        let arity = repr.word.iter().copied().max().unwrap_or(0);
        NecklaceCell::new(repr.word, arity).map_err(D::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Orientation engine
// ---------------------------------------------------------------------------

/// Sign of the determinant of a small integer matrix by fraction-free
/// elimination; panics on zero, which would mean two orientation forms were
/// compared on mismatched spaces.
pub(crate) fn det_sign(mut m: Vec<Vec<i128>>) -> i64 {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let p = (k + 1..n)
                .find(|&r| m[r][k] != 0)
                .expect("orientation comparison degenerate");
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    let det = sign * m[n - 1][n - 1];
    assert!(det != 0, "orientation comparison degenerate");
    if det > 0 {
        1
    } else {
        -1
    }
}

/// Occurrence positions per letter, ascending letter order.
pub(crate) fn occurrences(word: &[Letter]) -> BTreeMap<Letter, Vec<usize>> {
    let mut occ: BTreeMap<Letter, Vec<usize>> = BTreeMap::new();
    for (q, &x) in word.iter().enumerate() {
        occ.entry(x).or_default().push(q);
    }
    occ
}

/// Reference basis of the cell's tangent space: per lobe in ascending order
/// with occurrences `p_1 < .. < p_m`, the vectors `e_{p_j} - e_{p_{j+1}}`.
pub(crate) fn tangent_basis(word: &[Letter]) -> Vec<Vec<i64>> {
    let mut basis = Vec::new();
    for (_, occ) in occurrences(word) {
        for w in occ.windows(2) {
            let mut v = vec![0i64; word.len()];
            v[w[0]] = 1;
            v[w[1]] = -1;
            basis.push(v);
        }
    }
    basis
}

/// The orientation form of a cell, as the ordered list of coordinate indices
/// whose differentials are wedged: per lobe ascending, all occurrences but
/// the last. Against `tangent_basis` of the same word this form is `+1`.
pub(crate) fn orientation_positions(word: &[Letter]) -> Vec<usize> {
    let mut rows = Vec::new();
    for (_, occ) in occurrences(word) {
        rows.extend_from_slice(&occ[..occ.len() - 1]);
    }
    rows
}

/// Sign of the form given by coordinate `rows` against the column vectors.
pub(crate) fn orientation_sign(rows: &[usize], cols: &[Vec<i64>]) -> i64 {
    assert_eq!(rows.len(), cols.len(), "orientation rank mismatch");
    let m: Vec<Vec<i128>> = rows
        .iter()
        .map(|&p| cols.iter().map(|v| v[p] as i128).collect())
        .collect();
    det_sign(m)
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

fn enumerate_words(n: u32, len: usize, collect: &mut dyn FnMut(&[Letter])) {
    // does appending x complete a scattered pattern y, x, y, x?
    fn crossing_at_end(word: &[Letter], x: Letter) -> bool {
        for y in word.iter().copied().filter(|&y| y != x) {
            let mut state = 0;
            for &c in word {
                state = match (state, c) {
                    (0, c) if c == y => 1,
                    (1, c) if c == x => 2,
                    (2, c) if c == y => 3,
                    _ => state,
                };
                if state == 3 {
                    break;
                }
            }
            if state == 3 {
                return true;
            }
        }
        false
    }
    fn rec(
        n: u32,
        len: usize,
        word: &mut Vec<Letter>,
        missing: u32,
        collect: &mut dyn FnMut(&[Letter]),
    ) {
        if word.len() == len {
            if missing == 0 {
                collect(word);
            }
            return;
        }
        let slots_left = (len - word.len()) as u32;
        for x in 1..=n {
            if word.last() == Some(&x) || crossing_at_end(word, x) {
                continue;
            }
            let new = !word.contains(&x);
            let new_missing = missing - u32::from(new);
            if new_missing + 1 > slots_left {
                continue;
            }
            word.push(x);
            rec(n, len, word, new_missing, collect);
            word.pop();
        }
    }
    rec(n, len, &mut Vec::with_capacity(len), n, collect);
}

/// All based cells of arity `n`, restricted to one dimension when given.
/// Ordered by dimension, then lexicographically by word.
pub fn enumerate_based_cells(n: u32, dim: Option<i64>) -> Vec<BasedCactusCell> {
    assert!(n >= 1, "based cacti need arity >= 1");
    let dims: Vec<i64> = match dim {
        Some(d) if (0..n as i64).contains(&d) => vec![d],
        Some(_) => return Vec::new(),
        None => (0..n as i64).collect(),
    };
    let mut out = Vec::new();
    for d in dims {
        let len = n as usize + d as usize;
        enumerate_words(n, len, &mut |w| {
            debug_assert!(is_admissible_linear(w, n));
            out.push(BasedCactusCell {
                word: w.to_vec(),
                arity: n,
            });
        });
    }
    out
}

/// All necklace cells of arity `n >= 2`, restricted to one dimension when
/// given. Ordered by dimension, then lexicographically by canonical word.
pub fn enumerate_necklaces(n: u32, dim: Option<i64>) -> Vec<NecklaceCell> {
    assert!(n >= 2, "unbased cacti need arity >= 2");
    let dims: Vec<i64> = match dim {
        Some(d) if (0..=(n as i64 - 2)).contains(&d) => vec![d],
        Some(_) => return Vec::new(),
        None => (0..=(n as i64 - 2)).collect(),
    };
    let mut out = Vec::new();
    for d in dims {
        let len = n as usize + d as usize;
        enumerate_words(n, len, &mut |w| {
            if w[0] != w[len - 1] && canonical_rotation(w).1 == 0 && is_admissible_cyclic(w, n) {
                out.push(NecklaceCell {
                    word: w.to_vec(),
                    arity: n,
                });
            }
        });
    }
    out
}

// ---------------------------------------------------------------------------
// Boundaries, projection, transfer, actions
// ---------------------------------------------------------------------------

/// Cellular boundary of a based cell: signed sum of single-letter deletions
/// at every position whose letter occurs at least twice. In an admissible
/// word no such deletion can create equal adjacent letters.
pub fn based_boundary(cell: &BasedCactusCell) -> Chain<BasedCactusCell> {
    let word = &cell.word;
    let mut chain = Chain::zero(cell.dim() - 1);
    if cell.dim() == 0 {
        return chain;
    }
    let occ = occurrences(word);
    let rows = orientation_positions(word);
    for (p, &x) in word.iter().enumerate() {
        let positions = &occ[&x];
        if positions.len() < 2 {
            continue;
        }
        let mut face: Vec<Letter> = word.clone();
        face.remove(p);
        // outward normal: decrease t_p inside the lobe simplex
        let other = positions.iter().copied().find(|&q| q != p).expect("mult >= 2");
        let mut normal = vec![0i64; word.len()];
        normal[p] = -1;
        normal[other] = 1;
        let mut cols = vec![normal];
        for v in tangent_basis(&face) {
            let mut lifted = vec![0i64; word.len()];
            for (q, val) in v.iter().enumerate() {
                let qq = if q < p { q } else { q + 1 };
                lifted[qq] = *val;
            }
            cols.push(lifted);
        }
        let sign = orientation_sign(&rows, &cols);
        chain.add_term(
            BasedCactusCell::new_unchecked(face, cell.arity),
            Int::from(sign),
        );
    }
    chain
}

/// Chain-level projection to the unbased quotient. Cells whose first and
/// last letters coincide map onto lower-dimensional cells and give zero;
/// otherwise the image is the canonical rotation with an orientation sign.
pub fn project(cell: &BasedCactusCell) -> Option<(NecklaceCell, i64)> {
    let word = &cell.word;
    let len = word.len();
    if len > 1 && word[0] == word[len - 1] {
        return None;
    }
    let (canon, offset) = canonical_rotation(word);
    debug_assert!(is_admissible_cyclic(&canon, cell.arity));
    let rho = |q: usize| (q + len - offset) % len;
    let rows = orientation_positions(&canon);
    let cols: Vec<Vec<i64>> = tangent_basis(word)
        .into_iter()
        .map(|v| {
            let mut out = vec![0i64; len];
            for (q, val) in v.iter().enumerate() {
                out[rho(q)] += *val;
            }
            out
        })
        .collect();
    let sign = orientation_sign(&rows, &cols);
    Some((
        NecklaceCell {
            word: canon,
            arity: cell.arity,
        },
        sign,
    ))
}

/// Projection extended to chains.
pub fn project_chain(chain: &Chain<BasedCactusCell>) -> Chain<NecklaceCell> {
    let mut out = Chain::zero(chain.degree());
    for (cell, coeff) in chain.terms() {
        if let Some((neck, sign)) = project(cell) {
            out.add_term(neck, coeff * Int::from(sign));
        }
    }
    out
}

/// The based word obtained by cutting the necklace at cyclic position `k`:
/// the letter at `k` is duplicated at both ends.
pub fn cut_at(neck: &NecklaceCell, k: usize) -> BasedCactusCell {
    let len = neck.word.len();
    let mut word: Vec<Letter> = Vec::with_capacity(len + 1);
    for q in 0..len {
        word.push(neck.word[(k + q) % len]);
    }
    word.push(neck.word[k]);
    BasedCactusCell::new_unchecked(word, neck.arity)
}

/// Recovers the necklace and the cut position from a based cell whose first
/// and last letters coincide. Admissible necklaces have no rotational
/// symmetry, so the cut is unique.
pub fn underlying_cut(cell: &BasedCactusCell) -> Option<(NecklaceCell, usize)> {
    let word = &cell.word;
    let len = word.len();
    if len < 2 || word[0] != word[len - 1] {
        return None;
    }
    let cyclic = &word[..len - 1];
    if !is_admissible_cyclic(cyclic, cell.arity) {
        return None;
    }
    let (canon, offset) = canonical_rotation(cyclic);
    // cyclic[q] = canon[(k + q) mod L] with k the cut position in canonical
    // coordinates; canon[t] = cyclic[(offset + t) mod L] forces k = L - offset.
    let l = cyclic.len();
    Some((
        NecklaceCell {
            word: canon,
            arity: cell.arity,
        },
        (l - offset) % l,
    ))
}

/// The transfer: signed sum over all base-point insertions, one per cyclic
/// position. A degree +1 map.
pub fn transfer(neck: &NecklaceCell) -> Chain<BasedCactusCell> {
    let len = neck.word.len();
    let mut chain = Chain::zero(neck.dim() + 1);
    let base_cols = tangent_basis(&neck.word);
    for k in 0..len {
        let cut = cut_at(neck, k);
        let rows = orientation_positions(cut.word());
        // lift the necklace tangent vectors: position p rides at (p - k) mod
        // len; the cut arc's weight rides entirely on the first piece
        let mut cols: Vec<Vec<i64>> = base_cols
            .iter()
            .map(|v| {
                let mut out = vec![0i64; len + 1];
                for (p, val) in v.iter().enumerate() {
                    out[(p + len - k) % len] += *val;
                }
                out
            })
            .collect();
        // fiber direction: the base point moves forward through arc k
        let mut fiber = vec![0i64; len + 1];
        fiber[0] = -1;
        fiber[len] = 1;
        cols.push(fiber);
        let sign = orientation_sign(&rows, &cols);
        chain.add_term(cut, Int::from(sign));
    }
    chain
}

/// Transfer extended to chains.
pub fn transfer_chain(chain: &Chain<NecklaceCell>) -> Chain<BasedCactusCell> {
    let mut out = Chain::zero(chain.degree() + 1);
    for (neck, coeff) in chain.terms() {
        for (cell, c) in transfer(neck).terms() {
            out.add_term(cell.clone(), coeff * c);
        }
    }
    out
}

/// Boundary of a necklace cell, induced from the based boundary through the
/// projection: `d(w) = project(based_boundary(u))` for the canonical lift
/// `u` of `w` (the canonical rotation read as a linear word, for which
/// `project(u) = +w`). Independence of the lift is covered by tests.
pub fn necklace_boundary(neck: &NecklaceCell) -> Chain<NecklaceCell> {
    if neck.dim() == 0 {
        return Chain::zero(-1);
    }
    let lift = BasedCactusCell::new_unchecked(neck.word.clone(), neck.arity);
    debug_assert_eq!(project(&lift), Some((neck.clone(), 1)));
    project_chain(&based_boundary(&lift))
}

/// Relabels the lobes of a based cell; returns the new cell and the
/// orientation sign of the relabelling.
pub fn based_action(g: &Perm, cell: &BasedCactusCell) -> Result<(BasedCactusCell, i64), CellError> {
    if g.degree() != cell.arity {
        return Err(CellError::ArityMismatch {
            expected: cell.arity,
            got: g.degree(),
        });
    }
    let word: Vec<Letter> = cell.word.iter().map(|&x| g.apply(x)).collect();
    let rows = orientation_positions(&word);
    let cols = tangent_basis(&cell.word);
    let sign = orientation_sign(&rows, &cols);
    Ok((BasedCactusCell::new_unchecked(word, cell.arity), sign))
}

/// Relabels the lobes of a necklace and recanonicalizes, tracking the
/// orientation sign.
pub fn necklace_action(g: &Perm, neck: &NecklaceCell) -> Result<(NecklaceCell, i64), CellError> {
    if g.degree() != neck.arity {
        return Err(CellError::ArityMismatch {
            expected: neck.arity,
            got: g.degree(),
        });
    }
    let relabeled: Vec<Letter> = neck.word.iter().map(|&x| g.apply(x)).collect();
    let len = relabeled.len();
    let (canon, offset) = canonical_rotation(&relabeled);
    let rho = |q: usize| (q + len - offset) % len;
    let rows = orientation_positions(&canon);
    let cols: Vec<Vec<i64>> = tangent_basis(&neck.word)
        .into_iter()
        .map(|v| {
            let mut out = vec![0i64; len];
            for (q, val) in v.iter().enumerate() {
                out[rho(q)] += *val;
            }
            out
        })
        .collect();
    let sign = orientation_sign(&rows, &cols);
    Ok((
        NecklaceCell {
            word: canon,
            arity: neck.arity,
        },
        sign,
    ))
}

/// Action on chains of necklaces.
pub fn necklace_action_chain(
    g: &Perm,
    chain: &Chain<NecklaceCell>,
) -> Result<Chain<NecklaceCell>, CellError> {
    let mut out = Chain::zero(chain.degree());
    for (neck, coeff) in chain.terms() {
        let (image, sign) = necklace_action(g, neck)?;
        out.add_term(image, coeff * Int::from(sign));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Chain complexes
// ---------------------------------------------------------------------------

/// The cellular chain complex of the based cacti space with `n` lobes.
pub fn based_complex(n: u32) -> ChainComplex<BasedCactusCell> {
    assert!(n >= 1);
    let basis: Vec<Vec<BasedCactusCell>> = (0..n as i64)
        .map(|d| enumerate_based_cells(n, Some(d)))
        .collect();
    ChainComplex::build(0, basis, based_boundary).expect("based complex is well-formed")
}

/// The cellular chain complex of the unbased cacti space with `n >= 2` lobes.
pub fn unbased_complex(n: u32) -> ChainComplex<NecklaceCell> {
    assert!(n >= 2);
    let basis: Vec<Vec<NecklaceCell>> = (0..=(n as i64 - 2))
        .map(|d| enumerate_necklaces(n, Some(d)))
        .collect();
    ChainComplex::build(0, basis, necklace_boundary).expect("unbased complex is well-formed")
}
