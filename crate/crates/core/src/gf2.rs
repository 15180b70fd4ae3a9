//! Dense bit-packed linear algebra over the two-element field.
//!
//! All eliminations pick the leftmost available pivot so results are
//! reproducible.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GF2Vector {
    len: usize,
    words: Vec<u64>,
}

impl GF2Vector {
    pub fn zeros(len: usize) -> Self {
        GF2Vector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = GF2Vector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Unit vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = GF2Vector::zeros(len);
        v.set(i, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &GF2Vector) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn dot(&self, other: &GF2Vector) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    /// Position of the first set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (w, word) in self.words.iter().enumerate() {
            if *word != 0 {
                return Some(w * WORD + word.trailing_zeros() as usize);
            }
        }
        None
    }
}

impl fmt::Debug for GF2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, ")")
    }
}

impl Serialize for GF2Vector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let bits: Vec<u8> = (0..self.len).map(|i| u8::from(self.get(i))).collect();
        bits.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GF2Vector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let bits = Vec::<u8>::deserialize(d)?;
        if bits.iter().any(|b| *b > 1) {
            return Err(serde::de::Error::custom(
                "bit vector entries must be 0 or 1",
            ));
        }
        Ok(GF2Vector::from_bits(
            &bits.iter().map(|b| *b == 1).collect::<Vec<_>>(),
        ))
    }
}

/// Row-major dense bit matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct GF2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
    m: GF2Matrix,
    pivots: Vec<usize>,
}

impl GF2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        GF2Matrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = GF2Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Panics if rows have unequal lengths.
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = GF2Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &b) in r.iter().enumerate() {
                if b & 1 == 1 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a `rows × columns.len()` matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[GF2Vector]) -> Self {
        let mut m = GF2Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.stride + j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols);
        let w = &mut self.data[i * self.stride + j / WORD];
        let mask = 1u64 << (j % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn row(&self, i: usize) -> GF2Vector {
        GF2Vector {
            len: self.cols,
            words: self.data[i * self.stride..(i + 1) * self.stride].to_vec(),
        }
    }

    pub fn column(&self, j: usize) -> GF2Vector {
        let mut v = GF2Vector::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|w| *w == 0)
    }

    pub fn transpose(&self) -> GF2Matrix {
        let mut t = GF2Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &GF2Vector) -> GF2Vector {
        assert_eq!(v.len(), self.cols, "matrix/vector size mismatch");
        let mut out = GF2Vector::zeros(self.rows);
        for i in 0..self.rows {
            let row = &self.data[i * self.stride..(i + 1) * self.stride];
            let parity: u32 = row
                .iter()
                .zip(&v.words)
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            if parity % 2 == 1 {
                out.set(i, true);
            }
        }
        out
    }

    pub fn mul(&self, other: &GF2Matrix) -> GF2Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = GF2Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    out.xor_row_from(i, other, k);
                }
            }
        }
        out
    }

    fn xor_row_from(&mut self, dst: usize, src: &GF2Matrix, src_row: usize) {
        let (s, d) = (src_row * src.stride, dst * self.stride);
        for w in 0..self.stride {
            self.data[d + w] ^= src.data[s + w];
        }
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        let (s, d) = (src * self.stride, dst * self.stride);
        for w in 0..self.stride {
            self.data[d + w] ^= self.data[s + w];
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| m.get(i, c)) else {
                continue;
            };
            m.swap_rows(r, p);
            for i in 0..self.rows {
                if i != r && m.get(i, c) {
                    m.xor_rows(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column, in reduced
    /// echelon form.
    pub fn null_space(&self) -> Vec<GF2Vector> {
        let Echelon { m, pivots } = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = GF2Vector::unit(self.cols, free);
                for (r, &p) in pivots.iter().enumerate() {
                    if m.get(r, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Indices of the leftmost maximal set of linearly independent columns.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.echelon().pivots
    }

    /// Canonical representative of `v` modulo the column space.
    ///
    /// The column space is put in reduced echelon form; every pivot coordinate
    /// of the result is then cleared. The result is zero exactly when `v` lies
    /// in the column space.
    pub fn reduce_mod_image(&self, v: &GF2Vector) -> Result<GF2Vector> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against a matrix with {} rows",
                v.len(),
                self.rows
            )));
        }
        let Echelon { m: basis, pivots } = self.transpose().echelon();
        let mut out = v.clone();
        for (r, &p) in pivots.iter().enumerate() {
            if out.get(p) {
                out.xor_assign(&basis.row(r));
            }
        }
        Ok(out)
    }

    /// Some `x` with `M x = b`, or `None` when `b` is outside the column space.
    pub fn solve(&self, b: &GF2Vector) -> Result<Option<GF2Vector>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} against {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = GF2Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    aug.set(i, j, true);
                }
            }
            if b.get(i) {
                aug.set(i, self.cols, true);
            }
        }
        let Echelon { m, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = GF2Vector::zeros(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            if m.get(r, self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| u8::from(self.get(i, j))).collect())
            .collect()
    }
}

impl fmt::Debug for GF2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GF2Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{}", u8::from(self.get(i, j)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(GF2Matrix::identity(3).rank(), 3);
        assert_eq!(GF2Matrix::from_rows(&[vec![1, 1], vec![1, 1]]).rank(), 1);
        assert_eq!(GF2Matrix::zeros(4, 5).rank(), 0);
    }

    #[test]
    fn null_space_examples() {
        assert!(GF2Matrix::identity(3).null_space().is_empty());
        let ns = GF2Matrix::from_rows(&[vec![1, 1]]).null_space();
        assert_eq!(ns, vec![GF2Vector::from_bits(&[true, true])]);
        assert_eq!(GF2Matrix::zeros(2, 3).null_space().len(), 3);
    }

    #[test]
    fn reduce_mod_image_examples() {
        let v = GF2Vector::from_bits(&[true, false, true]);
        assert!(GF2Matrix::identity(3)
            .reduce_mod_image(&v)
            .unwrap()
            .is_zero());
        let e0 = GF2Vector::from_bits(&[true, false]);
        assert_eq!(GF2Matrix::zeros(2, 2).reduce_mod_image(&e0).unwrap(), e0);
        let m = GF2Matrix::from_rows(&[vec![1, 0], vec![1, 1], vec![0, 1]]);
        assert!(m.reduce_mod_image(&m.column(1)).unwrap().is_zero());
        assert!(matches!(
            m.reduce_mod_image(&e0),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn solve_finds_preimage_or_none() {
        let m = GF2Matrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let b = GF2Vector::from_bits(&[true, false]);
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let z = GF2Matrix::zeros(2, 2);
        assert!(z.solve(&b).unwrap().is_none());
    }

    #[test]
    fn wide_matrices_cross_word_boundaries() {
        let mut m = GF2Matrix::zeros(3, 130);
        m.set(0, 0, true);
        m.set(0, 129, true);
        m.set(1, 64, true);
        m.set(2, 129, true);
        assert_eq!(m.rank(), 3);
        assert_eq!(m.null_space().len(), 127);
    }

    fn matrix_strategy() -> impl Strategy<Value = GF2Matrix> {
        (0usize..9, 0usize..9).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(0u8..2, c), r).prop_map(
                move |rows| {
                    if rows.is_empty() {
                        GF2Matrix::zeros(0, c)
                    } else {
                        GF2Matrix::from_rows(&rows)
                    }
                },
            )
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in matrix_strategy()) {
            let ns = m.null_space();
            prop_assert_eq!(m.rank() + ns.len(), m.cols());
            prop_assert!(m.rank() <= m.rows().min(m.cols()));
            for v in &ns {
                prop_assert!(m.mul_vec(v).is_zero());
            }
        }

        #[test]
        fn coset_representative_is_canonical(m in matrix_strategy(), seed in any::<u64>()) {
            let mut state = seed;
            let mut bit = || { state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); state >> 63 == 1 };
            let v = GF2Vector::from_bits(&(0..m.rows()).map(|_| bit()).collect::<Vec<_>>());
            let x = GF2Vector::from_bits(&(0..m.cols()).map(|_| bit()).collect::<Vec<_>>());
            let mut shifted = v.clone();
            shifted.xor_assign(&m.mul_vec(&x));
            prop_assert_eq!(m.reduce_mod_image(&v).unwrap(), m.reduce_mod_image(&shifted).unwrap());
            prop_assert!(m.reduce_mod_image(&m.mul_vec(&x)).unwrap().is_zero());
        }

        #[test]
        fn transpose_preserves_rank(m in matrix_strategy()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }
    }
}
