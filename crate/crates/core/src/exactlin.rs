//! Dense linear algebra over a prime field `F_p`.
//!
//! Matrices act on column vectors for [`Matrix::kernel_basis`], [`Matrix::solve`] and
//! [`Matrix::is_surjective`]. Module code in this crate uses the row-vector convention
//! instead and goes through [`Matrix::left_kernel`] / [`Matrix::solve_left`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Default field size.
pub const DEFAULT_PRIME: u32 = 10007;

/// Largest module dimension the default field is sized for (`p > 2 * cap`).
pub const DEFAULT_DIMENSION_CAP: usize = 1000;

/// A prime field `F_p`, `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self, Error> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::Field(format!("{p} is not a prime below 2^31")));
        }
        Ok(Fp { p })
    }

    /// Like [`Fp::new`] but also enforces `p > 2 * dimension_cap`.
    pub fn with_cap(p: u32, dimension_cap: usize) -> Result<Self, Error> {
        let f = Fp::new(p)?;
        if (p as u64) <= 2 * dimension_cap as u64 {
            return Err(Error::Field(format!(
                "p = {p} must exceed twice the dimension cap {dimension_cap}"
            )));
        }
        Ok(f)
    }

    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (if s >= self.p as u64 { s - self.p as u64 } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`, for display.
    pub fn signed(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Default for Fp {
    fn default() -> Self {
        Fp { p: DEFAULT_PRIME }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returned by [`Matrix::solve`] when the right-hand side is not in the image.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NoSolution;

impl fmt::Display for NoSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("right-hand side is not in the image")
    }
}

impl std::error::Error for NoSolution {}

/// Row-major dense matrix over `F_p`. Zero rows or zero columns are allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Fp,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<i64> = self.row(r).iter().map(|&x| self.field.signed(x)).collect();
            write!(f, "{row:?}")?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Scalar multiple of the identity.
    pub fn scalar(field: Fp, n: usize, c: u32) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    /// Builds from signed integer rows; entries are reduced mod `p`.
    /// `cols` is needed to shape matrices with zero rows.
    pub fn from_rows(field: Fp, cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix row {r}");
            for (c, &v) in row.iter().enumerate() {
                m.data[r * cols + c] = field.from_i64(v);
            }
        }
        m
    }

    pub fn from_residues(field: Fp, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&x| x < field.p()));
        Matrix {
            rows,
            cols,
            field,
            data,
        }
    }

    /// Single column from a vector.
    pub fn column(field: Fp, v: &[u32]) -> Self {
        Matrix::from_residues(field, v.len(), 1, v.to_vec())
    }

    /// Single row from a vector.
    pub fn row_vector(field: Fp, v: &[u32]) -> Self {
        Matrix::from_residues(field, 1, v.len(), v.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: u32) {
        let i = r * self.cols + c;
        self.data[i] = self.field.add(self.data[i], v);
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in product {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let f = self.field;
        let p = f.p() as u64;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (c, &a) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = a as u32;
            }
        }
        out
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0u32, |s, (&a, &b)| f.add(s, f.mul(a, b)))
            })
            .collect()
    }

    /// `v * self` for a row vector `v`.
    pub fn vec_mul(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.rows, v.len());
        let f = self.field;
        let mut out = vec![0u32; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(r)) {
                *o = f.add(*o, f.mul(a, b));
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Matrix::from_residues(f, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Matrix::from_residues(f, self.rows, self.cols, data)
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix::from_residues(f, self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.field.neg(1))
    }

    /// Horizontal concatenation; all parts must have `rows` rows.
    pub fn hstack(field: Fp, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows);
            for r in 0..rows {
                out.data[r * cols + off..r * cols + off + m.cols].copy_from_slice(m.row(r));
            }
            off += m.cols;
        }
        out
    }

    /// Vertical concatenation; all parts must have `cols` columns.
    pub fn vstack(field: Fp, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in parts {
            assert_eq!(m.cols, cols);
            data.extend_from_slice(&m.data);
        }
        Matrix::from_residues(field, rows, cols, data)
    }

    /// Block diagonal sum.
    pub fn block_diag(field: Fp, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            out.set_block(r0, c0, m);
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, m: &Matrix) {
        assert!(r0 + m.rows <= self.rows && c0 + m.cols <= self.cols);
        for r in 0..m.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + m.cols].copy_from_slice(m.row(r));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            out.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        out
    }

    /// Keeps the listed rows, in order.
    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Matrix::from_residues(self.field, idx.len(), self.cols, data)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(piv) = (lead..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            m.swap_rows(piv, lead);
            let inv = f.inv(m.get(lead, c));
            m.scale_row(lead, inv);
            for r in 0..m.rows {
                if r != lead {
                    let factor = m.get(r, c);
                    if factor != 0 {
                        m.axpy_row(r, lead, f.neg(factor), c);
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: u32) {
        let f = self.field;
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = f.mul(*x, s);
        }
    }

    /// row[dst] += s * row[src], starting at column `from`.
    fn axpy_row(&mut self, dst: usize, src: usize, s: u32, from: usize) {
        let f = self.field;
        let cols = self.cols;
        for c in from..cols {
            let v = self.data[src * cols + c];
            if v != 0 {
                let i = dst * cols + c;
                self.data[i] = f.add(self.data[i], f.mul(s, v));
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `self * x = b`.
    pub fn solve(&self, b: &[u32]) -> Result<Vec<u32>, NoSolution> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let aug = Matrix::hstack(self.field, self.rows, &[self, &Matrix::column(self.field, b)]);
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(NoSolution);
        }
        let mut x = vec![0u32; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols);
        }
        Ok(x)
    }

    /// True iff the column-convention map `F^cols -> F^rows` is onto.
    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    /// True iff the column-convention map is one-to-one.
    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::hstack(self.field, n, &[self, &Matrix::identity(self.field, n)]);
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Nonzero rows of the RREF: a basis of the row space.
    pub fn row_space_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        r.block(0, 0, pivots.len(), self.cols)
    }

    /// Rows `x` with `x * self = 0`, as a full-row-rank matrix.
    pub fn left_kernel(&self) -> Matrix {
        let basis = self.transpose().kernel_basis();
        let mut out = Matrix::zeros(self.field, basis.len(), self.rows);
        for (i, v) in basis.iter().enumerate() {
            out.data[i * self.rows..(i + 1) * self.rows].copy_from_slice(v);
        }
        out
    }

    /// Some `X` with `X * self = y`.
    pub fn solve_left(&self, y: &Matrix) -> Result<Matrix, NoSolution> {
        assert_eq!(y.cols, self.cols);
        let t = self.transpose();
        let mut out = Matrix::zeros(self.field, y.rows, self.rows);
        for r in 0..y.rows {
            let x = t.solve(y.row(r))?;
            out.data[r * self.rows..(r + 1) * self.rows].copy_from_slice(&x);
        }
        Ok(out)
    }

    /// `self^e` for square matrices.
    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Characteristic polynomial `det(x I - self)`, coefficients from degree 0 up.
    ///
    /// Faddeev-LeVerrier; needs `n < p`.
    pub fn char_poly(&self) -> Vec<u32> {
        assert!(self.is_square());
        let f = self.field;
        let n = self.rows;
        assert!((n as u64) < f.p() as u64);
        let mut coeffs = vec![0u32; n + 1];
        coeffs[n] = 1;
        let mut m = Matrix::zeros(f, n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k) / k
            let mut next = self.mul(&m);
            for i in 0..n {
                next.add_at(i, i, coeffs[n - k + 1]);
            }
            m = next;
            let am = self.mul(&m);
            let tr = (0..n).fold(0u32, |s, i| f.add(s, am.get(i, i)));
            coeffs[n - k] = f.neg(f.mul(tr, f.inv(k as u32 % f.p())));
        }
        coeffs
    }

    /// Flattened row-major residues as a vector.
    pub fn flatten(&self) -> Vec<u32> {
        self.data.clone()
    }

    /// Signed integer rows, for serialization.
    pub fn to_signed_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|&x| x as i64).collect())
            .collect()
    }
}

/// Evaluates a polynomial (coefficients from degree 0) at `x`.
pub fn poly_eval(field: Fp, coeffs: &[u32], x: u32) -> u32 {
    coeffs
        .iter()
        .rev()
        .fold(0u32, |acc, &c| field.add(field.mul(acc, x), c))
}

/// Rank of the span of a list of equal-length vectors.
pub fn span_rank(field: Fp, len: usize, vectors: &[Vec<u32>]) -> usize {
    if vectors.is_empty() || len == 0 {
        return 0;
    }
    let data = vectors.iter().flat_map(|v| v.iter().copied()).collect();
    Matrix::from_residues(field, vectors.len(), len, data).rank()
}
