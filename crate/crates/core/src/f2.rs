//! Dense bit-packed linear algebra over GF(2).
//!
//! Vectors pack 64 coordinates per word; matrices are lists of row vectors.
//! Elimination pivots on the first row (in order) carrying the current column,
//! so every echelon form and every kernel basis is reproducible.

use std::fmt;
use std::sync::OnceLock;

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    /// Vector with the given coordinates set. Repeated indices toggle.
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Low `len` bits of `mask`; bit `i` of the mask is coordinate `i`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD);
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = if len == WORD {
                mask
            } else {
                mask & ((1u64 << len) - 1)
            };
        }
        v
    }

    /// Coordinates as a mask; only valid for `len <= 64`.
    pub fn to_mask(&self) -> u64 {
        assert!(
            self.len <= WORD,
            "vector of length {} does not fit a mask",
            self.len
        );
        self.words.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len, "index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        let bit = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= bit;
        } else {
            self.words[i / WORD] &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.len, other.len, "length mismatch");
        BitVector {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Size of the common support.
    pub fn overlap(&self, other: &BitVector) -> usize {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset_of(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    /// Indices of the set coordinates, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * WORD + b)
            })
        })
    }

    pub fn support_vec(&self) -> Vec<usize> {
        self.support().collect()
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for BitVector {
    type Err = String;

    /// Parses a string of `0`/`1` characters, coordinate 0 first.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format!("unexpected character {other:?}")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BitVector::from_bools(&bits))
    }
}

/// Reduced row echelon form of a row space.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    /// `(pivot column, row)`, pivots strictly increasing; every other row is
    /// zero in each pivot column.
    rows: Vec<(usize, BitVector)>,
}

impl Echelon {
    pub fn new(cols: usize, rows: &[BitVector]) -> Self {
        let mut work: Vec<BitVector> = rows.iter().filter(|r| !r.is_zero()).cloned().collect();
        let mut out: Vec<(usize, BitVector)> = Vec::new();
        let mut next = 0;
        for col in 0..cols {
            let Some(p) = (next..work.len()).find(|&r| work[r].get(col)) else {
                continue;
            };
            work.swap(next, p);
            let pivot = work[next].clone();
            for row in work.iter_mut().skip(next + 1) {
                if row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            for (_, row) in out.iter_mut() {
                if row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            out.push((col, pivot));
            next += 1;
            if next == work.len() {
                break;
            }
        }
        Self { cols, rows: out }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _)| *p)
    }

    pub fn basis(&self) -> impl Iterator<Item = &BitVector> {
        self.rows.iter().map(|(_, r)| r)
    }

    /// Residue of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols, "length mismatch");
        let mut r = v.clone();
        for (p, row) in &self.rows {
            if r.get(*p) {
                r.xor_assign(row);
            }
        }
        r
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the row space; returns false if it was already inside.
    pub fn insert(&mut self, v: &BitVector) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.first_one() else {
            return false;
        };
        for (_, row) in self.rows.iter_mut() {
            if row.get(p) {
                row.xor_assign(&r);
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, r));
        true
    }
}

/// A matrix over GF(2), stored by rows.
#[derive(Clone)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
    echelon: OnceLock<Echelon>,
}

impl PartialEq for BitMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.cols == other.cols && self.rows == other.rows
    }
}

impl Eq for BitMatrix {}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_rows(cols, vec![BitVector::zeros(cols); rows])
    }

    pub fn identity(n: usize) -> Self {
        Self::from_rows(
            n,
            (0..n).map(|i| BitVector::from_support(n, &[i])).collect(),
        )
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Self {
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(
                r.len(),
                cols,
                "row {i} has length {} but matrix has {cols} columns",
                r.len()
            );
        }
        Self {
            cols,
            rows,
            echelon: OnceLock::new(),
        }
    }

    pub fn from_supports(cols: usize, supports: &[Vec<usize>]) -> Self {
        Self::from_rows(
            cols,
            supports
                .iter()
                .map(|s| BitVector::from_support(cols, s))
                .collect(),
        )
    }

    /// Matrix with `rows` rows whose columns are `cols`.
    pub fn from_columns(rows: usize, cols: &[BitVector]) -> Self {
        let mut out = BitMatrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(
                c.len(),
                rows,
                "column {j} has length {} but matrix has {rows} rows",
                c.len()
            );
            for i in c.support() {
                out.rows[i].set(j, true);
            }
        }
        out
    }

    /// Parses rows written as `0`/`1` strings.
    pub fn from_strs(rows: &[&str]) -> Self {
        let rows: Vec<BitVector> = rows
            .iter()
            .map(|s| s.parse().expect("bit string"))
            .collect();
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
        self.echelon = OnceLock::new();
    }

    pub fn supports(&self) -> Vec<Vec<usize>> {
        self.rows.iter().map(|r| r.support_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.support() {
                out.rows[j].set(i, true);
            }
        }
        out
    }

    /// Column supports, i.e. the rows of the transpose.
    pub fn columns(&self) -> Vec<Vec<usize>> {
        let mut cols = vec![Vec::new(); self.cols];
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.support() {
                cols[j].push(i);
            }
        }
        cols
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.weight()).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for r in &self.rows {
            for j in r.support() {
                w[j] += 1;
            }
        }
        w
    }

    /// `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.nrows(), "inner dimensions differ");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVector::zeros(other.cols);
                for k in r.support() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        BitMatrix::from_rows(other.cols, rows)
    }

    /// `self · v`.
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(self.cols, v.len(), "length mismatch");
        let mut out = BitVector::zeros(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(v) {
                out.set(i, true);
            }
        }
        out
    }

    /// Stacks the rows of `other` below `self`.
    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols, "column counts differ");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        BitMatrix::from_rows(self.cols, rows)
    }

    /// Cached reduced row echelon form.
    pub fn echelon(&self) -> &Echelon {
        self.echelon
            .get_or_init(|| Echelon::new(self.cols, &self.rows))
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis of `{v : self · v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for p in ech.pivots() {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::zeros(self.cols);
                v.set(free, true);
                for (p, row) in &ech.rows {
                    if row.get(free) {
                        v.set(*p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Whether `v` is a GF(2) combination of the rows.
    pub fn in_rowspace(&self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.cols, "length mismatch");
        self.echelon().contains(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_strs(rows)
    }

    fn v(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(m(&["1111"]).rank(), 1);
        assert_eq!(m(&["1100", "1111"]).rank(), 2);
        assert_eq!(BitMatrix::zeros(3, 5).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        let k = m(&["1111"]).kernel_basis();
        assert_eq!(k.len(), 3);
        assert!(k.iter().all(|b| b.weight() % 2 == 0));
        assert!(BitMatrix::identity(3).kernel_basis().is_empty());
        assert_eq!(BitMatrix::zeros(2, 3).kernel_basis().len(), 3);
    }

    #[test]
    fn rowspace_examples() {
        assert!(m(&["1111"]).in_rowspace(&v("1111")));
        assert!(!m(&["1111"]).in_rowspace(&v("1100")));
        assert!(m(&["1100", "0011"]).in_rowspace(&v("1111")));
    }

    #[test]
    fn matrix_is_unchanged_by_rank() {
        let a = m(&["110", "011", "101"]);
        let before = a.clone();
        assert_eq!(a.rank(), 2);
        assert_eq!(a, before);
    }

    #[test]
    fn echelon_insert_tracks_rank() {
        let mut e = Echelon::new(4, &[]);
        assert!(e.insert(&v("0110")));
        assert!(e.insert(&v("1100")));
        assert!(!e.insert(&v("1010")));
        assert!(e.insert(&v("0001")));
        assert_eq!(e.rank(), 3);
        assert!(e.contains(&v("1011")));
        let pivots: Vec<_> = e.pivots().collect();
        assert!(pivots.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn long_vectors_cross_word_boundaries() {
        let mut a = BitVector::zeros(130);
        a.set(0, true);
        a.set(64, true);
        a.set(129, true);
        assert_eq!(a.support_vec(), vec![0, 64, 129]);
        assert_eq!(a.weight(), 3);
        let b = BitVector::from_support(130, &[64, 100]);
        assert!(a.dot(&b));
        assert_eq!(a.xor(&b).support_vec(), vec![0, 100, 129]);
    }

    fn arb_matrix() -> impl Strategy<Value = BitMatrix> {
        (1usize..12, 1usize..80).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(
                move |rows| {
                    BitMatrix::from_rows(c, rows.iter().map(|b| BitVector::from_bools(b)).collect())
                },
            )
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(a in arb_matrix()) {
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }

        #[test]
        fn kernel_basis_is_an_independent_kernel(a in arb_matrix()) {
            let basis = a.kernel_basis();
            prop_assert_eq!(basis.len(), a.ncols() - a.rank());
            for b in &basis {
                prop_assert!(a.mul_vec(b).is_zero());
            }
            let stacked = BitMatrix::from_rows(a.ncols(), basis.clone());
            prop_assert_eq!(stacked.rank(), basis.len());
        }

        #[test]
        fn rows_are_in_rowspace(a in arb_matrix()) {
            for r in a.rows() {
                prop_assert!(a.in_rowspace(r));
            }
            prop_assert!(a.in_rowspace(&BitVector::zeros(a.ncols())));
        }

        #[test]
        fn matrix_product_matches_vector_product(a in arb_matrix(), bits in proptest::collection::vec(any::<bool>(), 80)) {
            let x = BitVector::from_bools(&bits[..a.ncols()]);
            let col = BitMatrix::from_rows(1, (0..a.ncols()).map(|i| BitVector::from_bools(&[x.get(i)])).collect());
            let prod = a.mul(&col);
            let direct = a.mul_vec(&x);
            for i in 0..a.nrows() {
                prop_assert_eq!(prod.get(i, 0), direct.get(i));
            }
        }
    }
}
