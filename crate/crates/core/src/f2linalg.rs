//! Dense linear algebra over the two-element field.
//!
//! Vectors and matrix rows are packed 64 entries to a `u64` word and elimination
//! is plain row reduction with XOR as the only arithmetic. Every routine here is a
//! pure function of its inputs and gives bitwise identical results across runs.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector over GF(2) with a fixed ambient dimension.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vector {
    len: usize,
    words: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        F2Vector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds the vector with ones exactly at `support` (duplicates cancel).
    pub fn from_support(len: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in support {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn add_assign(&mut self, other: &F2Vector) {
        assert_eq!(self.len, other.len, "dimension mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn dot(&self, other: &F2Vector) -> bool {
        assert_eq!(self.len, other.len, "dimension mismatch");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// Indices of the nonzero entries, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * WORD + b);
                w &= w - 1;
            }
        }
        out
    }

    /// Lowest index holding a one.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, w)| wi * WORD + w.trailing_zeros() as usize)
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(f, "F2Vector({s})")
    }
}

/// Row-major bit-packed matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        F2Matrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from 0/1 rows; all rows must share one length.
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, &b) in row.iter().enumerate() {
                if b & 1 == 1 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn from_row_vectors(cols: usize, rows: &[F2Vector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has the wrong length");
            m.row_words_mut(i).copy_from_slice(&r.words);
        }
        m
    }

    /// Matrix whose j-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[F2Vector]) -> Self {
        Self::from_row_vectors(rows, columns).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        (self.row_words(i)[j / WORD] >> (j % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols);
        let mask = 1u64 << (j % WORD);
        let w = &mut self.row_words_mut(i)[j / WORD];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn row(&self, i: usize) -> F2Vector {
        F2Vector {
            len: self.cols,
            words: self.row_words(i).to_vec(),
        }
    }

    pub fn column(&self, j: usize) -> F2Vector {
        let mut v = F2Vector::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row(i).support() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn mul_vec(&self, v: &F2Vector) -> F2Vector {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        let mut out = F2Vector::zeros(self.rows);
        for i in 0..self.rows {
            let ones: u32 = self
                .row_words(i)
                .iter()
                .zip(&v.words)
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            if ones % 2 == 1 {
                out.set(i, true);
            }
        }
        out
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = F2Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in self.row(i).support() {
                let src = other.row_words(k).to_vec();
                for (a, b) in out.row_words_mut(i).iter_mut().zip(&src) {
                    *a ^= b;
                }
            }
        }
        out
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        let (s, st) = (src * self.stride, self.stride);
        let d = dst * self.stride;
        for k in 0..st {
            let w = self.data[s + k];
            self.data[d + k] ^= w;
        }
    }

    /// Reduces in place to reduced row echelon form; returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let (wi, mask) = (c / WORD, 1u64 << (c % WORD));
            let Some(p) = (r..self.rows).find(|&i| self.data[i * self.stride + wi] & mask != 0)
            else {
                continue;
            };
            if p != r {
                for k in 0..self.stride {
                    self.data.swap(p * self.stride + k, r * self.stride + k);
                }
            }
            for i in 0..self.rows {
                if i != r && self.data[i * self.stride + wi] & mask != 0 {
                    self.xor_rows(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (F2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let s: String = (0..self.cols)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

pub fn rank(m: &F2Matrix) -> usize {
    // Eliminating the shorter side keeps the work proportional to min(rows, cols).
    let mut work = if m.rows > m.cols {
        m.transpose()
    } else {
        m.clone()
    };
    let mut r = 0;
    for c in 0..work.cols {
        if r == work.rows {
            break;
        }
        let (wi, mask) = (c / WORD, 1u64 << (c % WORD));
        let Some(p) = (r..work.rows).find(|&i| work.data[i * work.stride + wi] & mask != 0) else {
            continue;
        };
        if p != r {
            for k in 0..work.stride {
                work.data.swap(p * work.stride + k, r * work.stride + k);
            }
        }
        for i in r + 1..work.rows {
            if work.data[i * work.stride + wi] & mask != 0 {
                work.xor_rows(i, r);
            }
        }
        r += 1;
    }
    r
}

/// Basis of `{ v : M v = 0 }`, one vector per free column.
pub fn kernel_basis(m: &F2Matrix) -> Vec<F2Vector> {
    let (reduced, pivots) = m.rref();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = F2Vector::zeros(m.cols);
        v.set(free, true);
        for (row, &p) in pivots.iter().enumerate() {
            if reduced.get(row, free) {
                v.set(p, true);
            }
        }
        basis.push(v);
    }
    basis
}

/// `dim ker(d_out) - rank(d_in)` for a composable pair with `d_out * d_in = 0`.
pub fn homology_dimension(d_in: &F2Matrix, d_out: &F2Matrix) -> Result<usize> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "d_in has {} rows but d_out has {} columns",
                d_in.rows(),
                d_out.cols()
            ),
        });
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(Error::CompositionNotZero);
    }
    let kernel = d_out.cols() - rank(d_out);
    Ok(kernel - rank(d_in))
}

/// Incrementally maintained echelon basis of a subspace of `F_2^len`.
///
/// Each stored vector has a distinct leading index (its lowest set bit), so
/// membership and reduction need one pass over the stored vectors.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    len: usize,
    rows: Vec<F2Vector>,
    leads: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        EchelonBasis {
            len,
            rows: Vec::new(),
            leads: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.len
    }

    pub fn reduce(&self, v: &F2Vector) -> F2Vector {
        let mut v = v.clone();
        for (row, &lead) in self.rows.iter().zip(&self.leads) {
            if v.get(lead) {
                v.add_assign(row);
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &F2Vector) -> bool {
        assert_eq!(v.len(), self.len, "dimension mismatch");
        let r = self.reduce(v);
        match r.first_one() {
            None => false,
            Some(lead) => {
                // Keep earlier rows free of the new lead so `reduce` stays single-pass.
                for row in self.rows.iter_mut() {
                    if row.get(lead) {
                        row.add_assign(&r);
                    }
                }
                self.rows.push(r);
                self.leads.push(lead);
                true
            }
        }
    }

    pub fn contains(&self, v: &F2Vector) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn basis(&self) -> &[F2Vector] {
        &self.rows
    }
}
