//! Dense matrices over the rationals or over rational functions, with
//! fraction-free (Bareiss) determinant and inverse.
//!
//! Elimination never happens in the field itself: each row is first scaled
//! to clear denominators, elimination runs over the underlying integral
//! domain (`Z` resp. `Q[u]`) with exact divisions, and the scalings are
//! undone at the end.

use crate::poly::{UniPoly, Var};
use crate::ratfunc::RatFunc;
use crate::scalar::{format_q, ExactScalar};
use crate::{ExactError, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Ring used for fraction-free elimination.
pub trait IntegralDomain: Clone + PartialEq + fmt::Debug {
    fn is_zero_r(&self) -> bool;
    fn one_r() -> Self;
    fn mul_r(&self, o: &Self) -> Self;
    fn sub_r(&self, o: &Self) -> Self;
    fn neg_r(&self) -> Self;
    /// Division known to be exact.
    fn exact_div_r(&self, o: &Self) -> Self;
}

impl IntegralDomain for BigInt {
    fn is_zero_r(&self) -> bool {
        self.is_zero()
    }
    fn one_r() -> Self {
        BigInt::one()
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn neg_r(&self) -> Self {
        -self
    }
    fn exact_div_r(&self, o: &Self) -> Self {
        debug_assert!((self % o).is_zero());
        self / o
    }
}

impl IntegralDomain for UniPoly {
    fn is_zero_r(&self) -> bool {
        self.is_zero()
    }
    fn one_r() -> Self {
        UniPoly::one(Var::U)
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn neg_r(&self) -> Self {
        -self
    }
    fn exact_div_r(&self, o: &Self) -> Self {
        self.exact_div(o)
    }
}

/// A field element that can be stored in an [`ExactMatrix`].
pub trait Entry: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    type Ring: IntegralDomain;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero_e(&self) -> bool;
    fn add_e(&self, o: &Self) -> Self;
    fn sub_e(&self, o: &Self) -> Self;
    fn mul_e(&self, o: &Self) -> Self;
    fn div_e(&self, o: &Self) -> Self;
    fn neg_e(&self) -> Self;
    /// Scale a row into the ring: returns `(d * row, d)`.
    fn clear_row(row: &[Self]) -> (Vec<Self::Ring>, Self);
    fn from_ring(r: &Self::Ring) -> Self;
}

impl Entry for BigRational {
    type Ring = BigInt;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero_e(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_e(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_e(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_e(&self, o: &Self) -> Self {
        self * o
    }
    fn div_e(&self, o: &Self) -> Self {
        self / o
    }
    fn neg_e(&self) -> Self {
        -self
    }
    fn clear_row(row: &[Self]) -> (Vec<BigInt>, Self) {
        let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let v = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
        (v, BigRational::from_integer(l))
    }
    fn from_ring(r: &BigInt) -> Self {
        BigRational::from_integer(r.clone())
    }
}

impl Entry for RatFunc {
    type Ring = UniPoly;
    fn zero() -> Self {
        RatFunc::zero(Var::U)
    }
    fn one() -> Self {
        RatFunc::one(Var::U)
    }
    fn is_zero_e(&self) -> bool {
        self.is_zero()
    }
    fn add_e(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_e(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_e(&self, o: &Self) -> Self {
        self * o
    }
    fn div_e(&self, o: &Self) -> Self {
        self / o
    }
    fn neg_e(&self) -> Self {
        -self
    }
    fn clear_row(row: &[Self]) -> (Vec<UniPoly>, Self) {
        let var = row
            .iter()
            .find(|x| !x.is_zero())
            .map_or(Var::U, |x| x.var());
        let l = row.iter().fold(UniPoly::one(var), |acc, x| {
            let g = acc.gcd(x.den());
            (&acc * x.den()).exact_div(&g)
        });
        let v = row
            .iter()
            .map(|x| x.num() * &l.exact_div(x.den()))
            .collect();
        (v, RatFunc::from_poly(l))
    }
    fn from_ring(r: &UniPoly) -> Self {
        RatFunc::from_poly(r.clone())
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct ExactMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Entry> ExactMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(ExactError::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(ExactError::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Build from a closure over 0-based indices.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    /// Build from a closure over 1-based indices, matching the way the
    /// formulas are written.
    pub fn from_fn1(rows: usize, cols: usize, mut f: impl FnMut(i64, i64) -> T) -> Self {
        Self::from_fn(rows, cols, |i, j| f(i as i64 + 1, j as i64 + 1))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// 0-based access.
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    /// 1-based access.
    pub fn at(&self, a: usize, b: usize) -> &T {
        self.get(a - 1, b - 1)
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<S: Entry>(&self, f: impl Fn(&T) -> S) -> ExactMatrix<S> {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<S: Entry>(&self, f: impl Fn(&T) -> Result<S>) -> Result<ExactMatrix<S>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.mul_e(c))
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg_e())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).add_e(o.get(i, j))
        }))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).sub_e(o.get(i, j))
        }))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(ExactError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(Self::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = o.get(k, j);
                if !a.is_zero_e() && !b.is_zero_e() {
                    acc = acc.add_e(&a.mul_e(b));
                }
            }
            acc
        }))
    }

    /// Panicking product for shapes known to agree.
    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("matrix shape mismatch")
    }

    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("matrix shape mismatch")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.try_sub(o).expect("matrix shape mismatch")
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(ExactError::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    /// Rows/columns selected by 0-based index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Contiguous block starting at 0-based `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Self::from_fn(nr, nc, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(ExactError::Dimension("incompatible blocks".into()));
        }
        let (r1, c1) = (a.rows, a.cols);
        Ok(Self::from_fn(a.rows + c.rows, a.cols + b.cols, |i, j| {
            match (i < r1, j < c1) {
                (true, true) => a.get(i, j),
                (true, false) => b.get(i, j - c1),
                (false, true) => c.get(i - r1, j),
                (false, false) => d.get(i - r1, j - c1),
            }
            .clone()
        }))
    }

    pub fn block_diag(a: &Self, d: &Self) -> Self {
        let b = Self::zeros(a.rows, d.cols);
        let c = Self::zeros(d.rows, a.cols);
        Self::from_blocks(a, &b, &c, d).expect("block shapes agree by construction")
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero_e())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose().neg()
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(ExactError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    fn cleared(&self) -> (Vec<Vec<T::Ring>>, Vec<T>) {
        (0..self.rows).map(|i| T::clear_row(self.row(i))).unzip()
    }

    /// Exact determinant by Bareiss elimination (the empty matrix has
    /// determinant 1).
    pub fn det(&self) -> Result<T> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let (mut a, scales) = self.cleared();
        let mut prev = T::Ring::one_r();
        let mut negate = false;
        for k in 0..n {
            if a[k][k].is_zero_r() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero_r()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[k][k].mul_r(&a[i][j]).sub_r(&a[i][k].mul_r(&a[k][j]));
                    a[i][j] = v.exact_div_r(&prev);
                }
            }
            prev = a[k][k].clone();
        }
        let mut d = T::from_ring(&a[n - 1][n - 1]);
        if negate {
            d = d.neg_e();
        }
        Ok(scales.iter().fold(d, |acc, s| acc.div_e(s)))
    }

    /// Exact inverse by fraction-free Gauss-Jordan elimination on `[A | I]`.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let (rows, scales) = self.cleared();
        let mut a: Vec<Vec<T::Ring>> = rows
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                let zero = T::Ring::one_r().sub_r(&T::Ring::one_r());
                r.extend((0..n).map(|j| {
                    if i == j {
                        T::Ring::one_r()
                    } else {
                        zero.clone()
                    }
                }));
                r
            })
            .collect();
        let mut prev = T::Ring::one_r();
        for k in 0..n {
            if a[k][k].is_zero_r() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero_r()) {
                    Some(r) => a.swap(k, r),
                    None => return Err(ExactError::Singular { det: "0".into() }),
                }
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                for j in 0..2 * n {
                    if j == k {
                        continue;
                    }
                    let v = a[k][k].mul_r(&a[i][j]).sub_r(&a[i][k].mul_r(&a[k][j]));
                    a[i][j] = v.exact_div_r(&prev);
                }
                a[i][k] = T::Ring::one_r().sub_r(&T::Ring::one_r());
            }
            prev = a[k][k].clone();
        }
        // Every pivot now equals det of the scaled, row-permuted matrix; the
        // right half is that determinant times the inverse of the scaled matrix.
        Ok(Self::from_fn(n, n, |i, j| {
            let v = T::from_ring(&a[i][n + j]).div_e(&T::from_ring(&a[i][i]));
            v.mul_e(&scales[j])
        }))
    }
}

impl ExactMatrix<ExactScalar> {
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| crate::q(x)).collect())
                .collect(),
        )
        .expect("rectangular input")
    }

    /// Entries as canonical `num/den` strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(format_q).collect())
            .collect()
    }

    pub fn to_ratfunc(&self) -> ExactMatrix<RatFunc> {
        self.map(|x| RatFunc::constant(Var::U, x.clone()))
    }
}

impl ExactMatrix<RatFunc> {
    /// Evaluate every entry at `u0` (through removable singularities).
    pub fn eval(&self, u0: &ExactScalar) -> Result<ExactMatrix<ExactScalar>> {
        self.try_map(|f| f.value_or_limit(u0))
    }
}

impl<T: Entry> fmt::Display for ExactMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
