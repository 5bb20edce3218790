//! Dense matrices of `rug::Float`, just enough linear algebra for the
//! quadratic relations.

use brmatrices::QMatrix;
use rug::Float;
use std::fmt;

use crate::moment::q_to_float;

#[derive(Clone, Debug, PartialEq)]
pub struct NumMatrix {
    rows: usize,
    cols: usize,
    prec: u32,
    data: Vec<Float>,
}

impl NumMatrix {
    pub fn zeros(rows: usize, cols: usize, prec: u32) -> Self {
        NumMatrix {
            rows,
            cols,
            prec,
            data: vec![Float::new(prec); rows * cols],
        }
    }

    /// Build from a 1-based index function.
    pub fn from_fn1(
        rows: usize,
        cols: usize,
        prec: u32,
        mut f: impl FnMut(usize, usize) -> Float,
    ) -> Self {
        let mut m = Self::zeros(rows, cols, prec);
        for a in 1..=rows {
            for b in 1..=cols {
                m.set(a - 1, b - 1, f(a, b));
            }
        }
        m
    }

    pub fn from_q(q: &QMatrix, prec: u32) -> Self {
        Self::from_fn1(q.rows(), q.cols(), prec, |a, b| {
            q_to_float(q.at(a, b), prec)
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn get(&self, i: usize, j: usize) -> &Float {
        &self.data[i * self.cols + j]
    }

    /// 1-based access.
    pub fn at(&self, a: usize, b: usize) -> &Float {
        self.get(a - 1, b - 1)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Float) {
        self.data[i * self.cols + j] = Float::with_val(self.prec, v);
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn1(self.cols, self.rows, self.prec, |a, b| {
            self.at(b, a).clone()
        })
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let p = self.prec.max(o.prec);
        Self::from_fn1(self.rows, o.cols, p, |a, b| {
            let mut s = Float::new(p);
            for c in 1..=self.cols {
                s += Float::with_val(p, self.at(a, c) * o.at(c, b));
            }
            s
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (o.rows, o.cols),
            "shape mismatch in sum"
        );
        Self::from_fn1(self.rows, self.cols, self.prec, |a, b| {
            Float::with_val(self.prec, self.at(a, b) + o.at(a, b))
        })
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (o.rows, o.cols),
            "shape mismatch in difference"
        );
        Self::from_fn1(self.rows, self.cols, self.prec, |a, b| {
            Float::with_val(self.prec, self.at(a, b) - o.at(a, b))
        })
    }

    pub fn scale(&self, c: &Float) -> Self {
        Self::from_fn1(self.rows, self.cols, self.prec, |a, b| {
            Float::with_val(self.prec, self.at(a, b) * c)
        })
    }

    /// Sub-matrix by 1-based row and column lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn1(rows.len(), cols.len(), self.prec, |a, b| {
            self.at(rows[a - 1], cols[b - 1]).clone()
        })
    }

    pub fn max_abs(&self) -> Float {
        let mut m = Float::new(self.prec);
        for x in &self.data {
            let ax = Float::with_val(self.prec, x.abs_ref());
            if ax > m {
                m = ax;
            }
        }
        m
    }

    /// LU with partial pivoting; returns the permutation sign-adjusted
    /// factors in place.
    fn lu(&self) -> (Vec<Float>, Vec<usize>, i32) {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        let p = self.prec;
        let mut a = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1;
        for k in 0..n {
            let piv = (k..n)
                .max_by(|&i, &j| {
                    let x = Float::with_val(p, a[i * n + k].abs_ref());
                    let y = Float::with_val(p, a[j * n + k].abs_ref());
                    x.partial_cmp(&y).unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap_or(k);
            if piv != k {
                for j in 0..n {
                    a.swap(k * n + j, piv * n + j);
                }
                perm.swap(k, piv);
                sign = -sign;
            }
            if a[k * n + k].is_zero() {
                continue;
            }
            for i in k + 1..n {
                let f = Float::with_val(p, &a[i * n + k] / &a[k * n + k]);
                for j in k..n {
                    let d = Float::with_val(p, &f * &a[k * n + j]);
                    a[i * n + j] -= d;
                }
                a[i * n + k] = f;
            }
        }
        (a, perm, sign)
    }

    pub fn det(&self) -> Float {
        let n = self.rows;
        let (a, _, sign) = self.lu();
        let mut d = Float::with_val(self.prec, sign);
        for k in 0..n {
            d *= &a[k * n + k];
        }
        d
    }

    pub fn inverse(&self) -> Self {
        let n = self.rows;
        let p = self.prec;
        let (a, perm, _) = self.lu();
        let mut inv = Self::zeros(n, n, p);
        for col in 0..n {
            // Solve L U x = P e_col.
            let mut y: Vec<Float> = (0..n)
                .map(|i| Float::with_val(p, u32::from(perm[i] == col)))
                .collect();
            for i in 0..n {
                for j in 0..i {
                    let d = Float::with_val(p, &a[i * n + j] * &y[j]);
                    y[i] -= d;
                }
            }
            for i in (0..n).rev() {
                for j in i + 1..n {
                    let d = Float::with_val(p, &a[i * n + j] * &y[j]);
                    y[i] -= d;
                }
                y[i] /= &a[i * n + i];
            }
            for (i, v) in y.into_iter().enumerate() {
                inv.set(i, col, v);
            }
        }
        inv
    }
}

impl fmt::Display for NumMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        for a in 1..=self.rows {
            let row: Vec<String> = (1..=self.cols)
                .map(|b| self.at(a, b).to_string_radix(10, Some(digits)))
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let p = 128;
        let m = NumMatrix::from_fn1(3, 3, p, |a, b| {
            Float::with_val(p, (a * a + 2 * b + (a == b) as usize * 5) as u32)
        });
        let id = m.mul(&m.inverse());
        for a in 1..=3 {
            for b in 1..=3 {
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((id.at(a, b).to_f64() - want).abs() < 1e-30);
            }
        }
        let q = brmatrices::betti_odd(3);
        let d = NumMatrix::from_q(&q, p).det();
        let exact = q.det().unwrap();
        assert!((d - q_to_float(&exact, p)).abs().to_f64() < 1e-30);
    }
}
