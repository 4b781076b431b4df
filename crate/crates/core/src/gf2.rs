//! Dense bit-packed linear algebra over GF(2).
//!
//! Complexes handled by this crate are desk-scale, so everything here is a
//! plain `Vec<u64>` per row with word-wise XOR elimination.

use std::fmt;

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Vector with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, index: usize) -> bool {
        assert!(
            index < self.len,
            "bit index {index} out of range {}",
            self.len
        );
        (self.words[index / WORD] >> (index % WORD)) & 1 == 1
    }

    pub fn set(&mut self, index: usize, value: bool) {
        assert!(
            index < self.len,
            "bit index {index} out of range {}",
            self.len
        );
        let mask = 1u64 << (index % WORD);
        if value {
            self.words[index / WORD] |= mask;
        } else {
            self.words[index / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, index: usize) {
        assert!(
            index < self.len,
            "bit index {index} out of range {}",
            self.len
        );
        self.words[index / WORD] ^= 1u64 << (index % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest index holding a one.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD + bit)
            })
        })
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec[")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, "]")
    }
}

/// Row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length mismatch");
        }
        Self {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.data[r].ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        let mut out = BitVec::zeros(self.rows);
        for (r, row) in self.data.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        out
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for k in row.ones() {
                out.data[r].xor_assign(&other.data[k]);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut basis = RowBasis::new(self.cols);
        for row in &self.data {
            basis.insert(row.clone());
        }
        basis.rank()
    }

    /// Basis of `{ x : self * x = 0 }`, one vector per free column in ascending order.
    pub fn nullspace(&self) -> Vec<BitVec> {
        let mut basis = RowBasis::new(self.cols);
        for row in &self.data {
            basis.insert(row.clone());
        }
        let pivots: Vec<usize> = basis.pivots().collect();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = BitVec::unit(self.cols, free);
                for (p, row) in basis.iter() {
                    if row.get(free) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect()
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for row in &self.data {
            for c in 0..self.cols {
                write!(f, "{}", u8::from(row.get(c)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A subspace kept in fully reduced row echelon form.
///
/// Every stored row has a distinct pivot (its lowest set bit) and no other
/// stored row has a one in that pivot column, so `reduce` yields a canonical
/// representative of each coset.
#[derive(Clone, Debug)]
pub struct RowBasis {
    len: usize,
    /// Sorted by pivot.
    rows: Vec<(usize, BitVec)>,
}

impl RowBasis {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _)| *p)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BitVec)> {
        self.rows.iter().map(|(p, r)| (*p, r))
    }

    /// Canonical coset representative of `v` modulo the span.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (p, row) in &self.rows {
            if v.get(*p) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span, returning `false` if it was already a member.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.len, "length mismatch in RowBasis::insert");
        let v = self.reduce(&v);
        let Some(pivot) = v.first_one() else {
            return false;
        };
        for (_, row) in &mut self.rows {
            if row.get(pivot) {
                row.xor_assign(&v);
            }
        }
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, v));
        true
    }

    /// Indices that are not pivots; they coordinatize the quotient space.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.len];
        for (p, _) in &self.rows {
            is_pivot[*p] = true;
        }
        (0..self.len).filter(|&c| !is_pivot[c]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn random_matrix(rows: usize, cols: usize, bits: &[bool]) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, bits[(r * cols + c) % bits.len().max(1)]);
            }
        }
        m
    }

    #[test]
    fn identity_rank() {
        assert_eq!(Gf2Matrix::identity(70).rank(), 70);
        assert_eq!(Gf2Matrix::zeros(3, 5).rank(), 0);
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![
            BitVec::from_bools(&[true, true, false]),
            BitVec::from_bools(&[false, true, true]),
            BitVec::from_bools(&[true, false, true]),
        ];
        let m = Gf2Matrix::from_rows(3, rows);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).is_zero());
    }

    #[test]
    fn ones_iterates_across_words() {
        let v = BitVec::from_indices(200, [0, 63, 64, 130, 199]);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 63, 64, 130, 199]);
        assert_eq!(v.count_ones(), 5);
        assert_eq!(v.first_one(), Some(0));
    }

    #[test]
    fn reduce_is_canonical() {
        let mut b = RowBasis::new(4);
        b.insert(BitVec::from_bools(&[true, true, false, false]));
        b.insert(BitVec::from_bools(&[false, true, true, false]));
        let x = BitVec::from_bools(&[false, false, true, true]);
        let y = {
            let mut y = x.clone();
            y.xor_assign(&BitVec::from_bools(&[true, false, true, false]));
            y
        };
        assert_eq!(b.reduce(&x), b.reduce(&y));
        assert_eq!(b.free_columns(), vec![2, 3]);
    }

    proptest! {
        #[test]
        fn rank_bounded_and_transpose_invariant(rows in 1usize..12, cols in 1usize..12,
                                                bits in proptest::collection::vec(any::<bool>(), 1..144)) {
            let m = random_matrix(rows, cols, &bits);
            let r = m.rank();
            prop_assert!(r <= rows.min(cols));
            prop_assert_eq!(r, m.transpose().rank());
            let ns = m.nullspace();
            prop_assert_eq!(ns.len() + r, cols);
            for x in &ns {
                prop_assert!(m.mul_vec(x).is_zero());
            }
        }

        #[test]
        fn rank_invariant_under_row_operations(rows in 2usize..10, cols in 1usize..10,
                                               bits in proptest::collection::vec(any::<bool>(), 1..100),
                                               a in 0usize..10, b in 0usize..10) {
            let m = random_matrix(rows, cols, &bits);
            let (a, b) = (a % rows, b % rows);
            prop_assume!(a != b);
            let mut elim = Gf2Matrix::identity(rows);
            elim.set(a, b, true);
            prop_assert_eq!(elim.mul(&m).rank(), m.rank());
        }
    }
}
