//! Dense matrices over exact rationals and over complex doubles.
//!
//! The exact path does all elimination fraction-free: each row is cleared
//! to integers and forward elimination follows the two-step determinant
//! recurrence, so every intermediate entry is a minor of the cleared input
//! and the divisions are exact. Reduced row echelon form, nullspaces,
//! determinants, ranks, and linear solves all ride on that core. The
//! characteristic polynomial uses the Samuelson-Berkowitz recurrence, which
//! needs no division at all.
//!
//! The approximate path (complex doubles) exists only for computations
//! that leave the rationals; it decides rank by singular values with the
//! shared relative tolerance [`crate::cnum::EPS`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::cnum::{CNum, EPS};
use crate::rat::Rat;

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major flattening of the entries; the inverse of [`Matrix::from_flat`].
    pub fn into_flat(self) -> Vec<T> {
        self.data
    }

    pub fn flat(&self) -> &[T] {
        &self.data
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "flat data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T>,
{
    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self.get(i, k).clone() * rhs.get(k, j).clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self.get(i, k).clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, s: &T) -> Matrix<T> {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square(), "trace of non-square matrix");
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc + self.get(i, i).clone();
        }
        acc
    }
}

impl<T> Matrix<T>
where
    T: Clone + Add<Output = T>,
{
    pub fn add(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() + rhs.get(i, j).clone()
        })
    }
}

impl<T> Matrix<T>
where
    T: Clone + Sub<Output = T>,
{
    pub fn sub(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() - rhs.get(i, j).clone()
        })
    }
}

impl<T: Clone + Neg<Output = T>> Matrix<T> {
    pub fn neg(&self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(|x| x.to_string())
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Exact elimination
// ---------------------------------------------------------------------------

/// Outcome of exact reduction: the reduced row echelon form and its pivots.
pub struct Rref {
    pub matrix: Matrix<Rat>,
    pub pivot_cols: Vec<usize>,
}

/// Fraction-free forward elimination state over cleared integer rows.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivot_cols: Vec<usize>,
    /// Sign flip accumulated from row swaps.
    swap_sign: i8,
    /// Product of the per-row denominators cleared before elimination.
    clear_factor: BigInt,
}

fn clear_rows(m: &Matrix<Rat>) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut factor = BigInt::one();
    let rows = (0..m.rows())
        .map(|i| {
            let mut lcm = BigInt::one();
            for j in 0..m.cols() {
                lcm = lcm.lcm(m.get(i, j).denom());
            }
            factor *= &lcm;
            (0..m.cols())
                .map(|j| {
                    let r = m.get(i, j);
                    r.numer() * (&lcm / r.denom())
                })
                .collect()
        })
        .collect();
    (rows, factor)
}

/// Two-step fraction-free elimination: every division below is exact because
/// each produced entry is a minor of the cleared input matrix.
fn bareiss(m: &Matrix<Rat>) -> Echelon {
    let (mut rows, clear_factor) = clear_rows(m);
    let ncols = m.cols();
    let nrows = rows.len();
    let mut pivot_cols = Vec::new();
    let mut swap_sign = 1i8;
    let mut prev_pivot = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pivot_row) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        if pivot_row != r {
            rows.swap(pivot_row, r);
            swap_sign = -swap_sign;
        }
        let pivot = rows[r][c].clone();
        for i in r + 1..nrows {
            // Every row below is rescaled, even with a zero lead entry;
            // the minor structure that makes the division exact needs it.
            let lead = rows[i][c].clone();
            for j in c..ncols {
                let v = &pivot * &rows[i][j] - &lead * &rows[r][j];
                debug_assert!((&v % &prev_pivot).is_zero(), "inexact fraction-free step");
                rows[i][j] = v / &prev_pivot;
            }
        }
        prev_pivot = pivot;
        pivot_cols.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    Echelon {
        rows,
        pivot_cols,
        swap_sign,
        clear_factor,
    }
}

impl Matrix<Rat> {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::int(x)).collect())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        bareiss(self).pivot_cols.len()
    }

    /// Exact determinant via the fraction-free elimination.
    pub fn det(&self) -> Rat {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rat::one();
        }
        let ech = bareiss(self);
        if ech.pivot_cols.len() < n {
            return Rat::zero();
        }
        // The final pivot of a full-rank square elimination is the
        // determinant of the cleared matrix, up to the swap sign.
        let last = ech.rows[n - 1][n - 1].clone();
        let signed = if ech.swap_sign < 0 { -last } else { last };
        Rat::from_big(signed, ech.clear_factor)
    }

    /// Reduced row echelon form with leading ones and cleared pivot columns.
    pub fn rref(&self) -> Rref {
        let ech = bareiss(self);
        let nrank = ech.pivot_cols.len();
        let mut rows: Vec<Vec<Rat>> = ech
            .rows
            .iter()
            .take(nrank)
            .map(|r| {
                r.iter()
                    .map(|x| Rat::from_big(x.clone(), BigInt::one()))
                    .collect()
            })
            .collect();
        // Normalize pivots to one, then eliminate upward.
        for (k, &pc) in ech.pivot_cols.iter().enumerate() {
            let inv = rows[k][pc].recip();
            for x in rows[k].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
            for i in 0..k {
                let factor = rows[i][pc].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in pc..self.cols {
                    let delta = &factor * &rows[k][j];
                    let v = &rows[i][j] - &delta;
                    rows[i][j] = v;
                }
            }
        }
        rows.resize(self.rows, vec![Rat::zero(); self.cols]);
        Rref {
            matrix: Matrix::from_rows(rows),
            pivot_cols: ech.pivot_cols,
        }
    }

    /// Basis of the right nullspace, echelon-normalized: one vector per free
    /// column in ascending column order, with a one in its free slot and
    /// zeros in the other free slots.
    pub fn nullspace_basis(&self) -> Vec<Vec<Rat>> {
        let Rref { matrix, pivot_cols } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (k, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -matrix.get(k, f);
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `self * x = b`, if any, with free variables set to
    /// zero. Returns `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, b.len(), "right-hand side length mismatch");
        let augmented = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let Rref { matrix, pivot_cols } = augmented.rref();
        if pivot_cols.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (k, &pc) in pivot_cols.iter().enumerate() {
            x[pc] = matrix.get(k, self.cols).clone();
        }
        Some(x)
    }

    /// Full affine solution set of `self * x = b`: a particular solution
    /// plus a nullspace basis. `None` when inconsistent.
    pub fn solve_affine(&self, b: &[Rat]) -> Option<(Vec<Rat>, Vec<Vec<Rat>>)> {
        let particular = self.solve(b)?;
        Some((particular, self.nullspace_basis()))
    }

    pub fn inverse(&self) -> Option<Matrix<Rat>> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let augmented = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Rat::one()
            } else {
                Rat::zero()
            }
        });
        let Rref { matrix, pivot_cols } = augmented.rref();
        if pivot_cols.len() < n || pivot_cols[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| matrix.get(i, j + n).clone()))
    }

    /// Coefficients of `det(xI - self)`, monic, in descending powers:
    /// `[1, c_{n-1}, ..., c_0]`. Uses the Samuelson-Berkowitz recurrence,
    /// which is division-free and therefore exact on any commutative ring.
    pub fn charpoly(&self) -> Vec<Rat> {
        assert!(self.is_square(), "characteristic polynomial needs a square matrix");
        let n = self.rows;
        let mut coeffs = vec![Rat::one()];
        for k in 0..n {
            // Toeplitz column for the k+1 leading principal submatrix:
            // [1, -a_kk, -R S, -R M S, ..., -R M^{k-1} S] with M the leading
            // k x k block, R the row to its left, S the column above a_kk.
            let mut q = Vec::with_capacity(k + 2);
            q.push(Rat::one());
            q.push(-self.get(k, k));
            let r_row: Vec<Rat> = (0..k).map(|j| self.get(k, j).clone()).collect();
            let s_col: Vec<Rat> = (0..k).map(|i| self.get(i, k).clone()).collect();
            let mut w = r_row;
            for _ in 0..k {
                let dot = w
                    .iter()
                    .zip(&s_col)
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b);
                q.push(-dot);
                let next: Vec<Rat> = (0..k)
                    .map(|j| {
                        (0..k).fold(Rat::zero(), |acc, i| acc + &w[i] * self.get(i, j))
                    })
                    .collect();
                w = next;
            }
            let mut next_coeffs = vec![Rat::zero(); k + 2];
            for (i, nc) in next_coeffs.iter_mut().enumerate() {
                for (j, c) in coeffs.iter().enumerate() {
                    if i >= j && i - j < q.len() {
                        *nc += &(&q[i - j] * c);
                    }
                }
            }
            coeffs = next_coeffs;
        }
        coeffs
    }

    pub fn to_cnum(&self) -> Matrix<CNum> {
        self.map(CNum::from_rat)
    }
}

// ---------------------------------------------------------------------------
// Approximate path
// ---------------------------------------------------------------------------

impl Matrix<CNum> {
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(CNum::abs).fold(0.0, f64::max)
    }

    /// Singular values in descending order, by one-sided Jacobi: sweeps of
    /// plane rotations orthogonalize the columns in place, and the values
    /// are the final column norms. Forming the Gram matrix instead would
    /// square the condition number and drown every singular value below
    /// roughly `sqrt(machine eps) * sigma_max` in rounding noise, which is
    /// exactly the range the rank tolerance has to resolve.
    pub fn singular_values(&self) -> Vec<f64> {
        let k = self.cols;
        let norm_sq = |v: &[CNum]| v.iter().map(|z| z.re() * z.re() + z.im() * z.im()).sum::<f64>();
        let mut col: Vec<Vec<CNum>> = (0..k)
            .map(|j| (0..self.rows).map(|i| *self.get(i, j)).collect())
            .collect();
        for _sweep in 0..60 {
            let mut rotated = false;
            for p in 0..k {
                for q in p + 1..k {
                    let alpha = norm_sq(&col[p]);
                    let beta = norm_sq(&col[q]);
                    let mut gamma = CNum::zero();
                    for i in 0..self.rows {
                        gamma += col[p][i].conj() * col[q][i];
                    }
                    let g = gamma.abs();
                    if g <= 1e-15 * (alpha * beta).sqrt() {
                        continue;
                    }
                    rotated = true;
                    // Align the pair's inner product onto the real axis,
                    // then rotate by the angle that zeroes it.
                    let phase_conj = gamma.conj() * CNum::from_f64(1.0 / g);
                    let tau = (beta - alpha) / (2.0 * g);
                    let t = tau.signum() / (tau.abs() + (tau * tau + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for i in 0..self.rows {
                        let u = col[p][i];
                        let v = col[q][i] * phase_conj;
                        col[p][i] = u * CNum::from_f64(c) - v * CNum::from_f64(s);
                        col[q][i] = u * CNum::from_f64(s) + v * CNum::from_f64(c);
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        let mut svs: Vec<f64> = col.iter().map(|v| norm_sq(v).sqrt()).collect();
        svs.sort_by(|a, b| b.partial_cmp(a).unwrap());
        svs
    }

    /// Rank decided by the singular-value gap at the shared tolerance:
    /// singular values at or below `EPS * (1 + sigma_max)` count as zero.
    pub fn rank_approx(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let svs = if self.rows >= self.cols {
            self.singular_values()
        } else {
            self.transpose().map(|z| z.conj()).singular_values()
        };
        let sigma_max = svs.first().copied().unwrap_or(0.0);
        svs.iter().filter(|&&s| s > EPS * (1.0 + sigma_max)).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_i64_rows(rows)
    }

    /// Independent oracle: plain rational Gaussian elimination, no
    /// fraction-free tricks shared with the implementation under test.
    fn naive_rank(mat: &Matrix<Rat>) -> usize {
        let mut rows: Vec<Vec<Rat>> = (0..mat.rows()).map(|i| mat.row(i).to_vec()).collect();
        let mut rank = 0;
        for c in 0..mat.cols() {
            let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(p, rank);
            let inv = rows[rank][c].recip();
            for j in c..mat.cols() {
                let v = &rows[rank][j] * &inv;
                rows[rank][j] = v;
            }
            for i in 0..rows.len() {
                if i != rank && !rows[i][c].is_zero() {
                    let f = rows[i][c].clone();
                    for j in c..mat.cols() {
                        let delta = &f * &rows[rank][j];
                        let v = &rows[i][j] - &delta;
                        rows[i][j] = v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Independent oracle: cofactor expansion determinant.
    fn naive_det(mat: &Matrix<Rat>) -> Rat {
        let n = mat.rows();
        if n == 0 {
            return Rat::one();
        }
        if n == 1 {
            return mat.get(0, 0).clone();
        }
        let mut acc = Rat::zero();
        for j in 0..n {
            let minor = Matrix::from_fn(n - 1, n - 1, |r, c| {
                mat.get(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = mat.get(0, j) * &naive_det(&minor);
            if j % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        acc
    }

    #[test]
    fn nullspace_of_ones_row_is_echelon_normalized() {
        let basis = m(&[&[1, 1, 1]]).nullspace_basis();
        assert_eq!(
            basis,
            vec![
                vec![Rat::int(-1), Rat::int(1), Rat::int(0)],
                vec![Rat::int(-1), Rat::int(0), Rat::int(1)],
            ]
        );
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        assert!(Matrix::<Rat>::identity(4).nullspace_basis().is_empty());
    }

    #[test]
    fn nullspace_vectors_are_actual_kernel_elements() {
        let mat = m(&[&[2, 1, -1, 3], &[1, 0, 2, -1], &[3, 1, 1, 2]]);
        for v in mat.nullspace_basis() {
            assert!(mat.mul_vec(&v).iter().all(Rat::is_zero));
        }
        assert_eq!(mat.rank() + mat.nullspace_basis().len(), mat.cols());
    }

    #[test]
    fn rank_agrees_with_plain_elimination_oracle() {
        let cases = [
            m(&[&[1, 2], &[2, 4]]),
            m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]),
            m(&[&[0, 0], &[0, 0]]),
            m(&[&[1, 0, 2], &[0, 1, -1], &[1, 1, 1], &[2, 1, 3]]),
        ];
        for mat in cases {
            assert_eq!(mat.rank(), naive_rank(&mat));
        }
    }

    #[test]
    fn det_agrees_with_cofactor_oracle() {
        let cases = [
            m(&[&[3]]),
            m(&[&[1, 2], &[3, 4]]),
            m(&[&[2, 0, 1], &[-1, 3, 2], &[4, 1, 0]]),
            m(&[&[1, 2, 3, 4], &[0, -1, 2, 1], &[3, 0, 0, 2], &[1, 1, 1, 1]]),
        ];
        for mat in cases {
            assert_eq!(mat.det(), naive_det(&mat));
        }
    }

    #[test]
    fn det_with_rational_entries() {
        let mat = Matrix::from_rows(vec![
            vec![Rat::new(1, 2), Rat::new(1, 3)],
            vec![Rat::new(1, 4), Rat::new(1, 5)],
        ]);
        // 1/10 - 1/12 = 1/60.
        assert_eq!(mat.det(), Rat::new(1, 60));
        assert_eq!(mat.det(), naive_det(&mat));
    }

    #[test]
    fn rref_has_unit_pivots_and_cleared_columns() {
        let mat = m(&[&[2, 4, -2], &[4, 9, -3], &[-2, -3, 7]]);
        let Rref { matrix, pivot_cols } = mat.rref();
        assert_eq!(pivot_cols, vec![0, 1, 2]);
        assert_eq!(matrix, Matrix::<Rat>::identity(3));
    }

    #[test]
    fn solve_consistent_and_inconsistent_systems() {
        let mat = m(&[&[1, 1], &[1, -1]]);
        let x = mat.solve(&[Rat::int(3), Rat::int(1)]).unwrap();
        assert_eq!(x, vec![Rat::int(2), Rat::int(1)]);

        let singular = m(&[&[1, 1], &[2, 2]]);
        assert!(singular.solve(&[Rat::int(1), Rat::int(3)]).is_none());
        assert!(singular.solve(&[Rat::int(1), Rat::int(2)]).is_some());
    }

    #[test]
    fn inverse_round_trips() {
        let mat = m(&[&[2, 1, 0], &[1, 3, -1], &[0, 1, 1]]);
        let inv = mat.inverse().unwrap();
        assert_eq!(mat.mul(&inv), Matrix::<Rat>::identity(3));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn charpoly_of_identity_and_companion() {
        // (x - 1)^3 = x^3 - 3x^2 + 3x - 1.
        assert_eq!(
            Matrix::<Rat>::identity(3).charpoly(),
            vec![Rat::int(1), Rat::int(-3), Rat::int(3), Rat::int(-1)]
        );
        // Companion matrix of x^3 + 2x^2 - 5x + 7.
        let companion = m(&[&[0, 0, -7], &[1, 0, 5], &[0, 1, -2]]);
        assert_eq!(
            companion.charpoly(),
            vec![Rat::int(1), Rat::int(2), Rat::int(-5), Rat::int(7)]
        );
    }

    #[test]
    fn charpoly_satisfies_cayley_hamilton() {
        let mat = m(&[&[1, 2, 0], &[-1, 0, 3], &[2, 1, 1]]);
        let cp = mat.charpoly();
        let n = mat.rows();
        let mut acc = Matrix::<Rat>::zero(n, n);
        let mut power = Matrix::<Rat>::identity(n);
        // Horner from the constant term upward: acc = sum c_k M^k.
        for c in cp.iter().rev() {
            acc = acc.add(&power.scale(c));
            power = power.mul(&mat);
        }
        assert_eq!(acc, Matrix::<Rat>::zero(n, n));
    }

    #[test]
    fn charpoly_constant_term_matches_det() {
        let mat = m(&[&[1, 2, 3], &[0, -1, 2], &[3, 0, 1]]);
        let cp = mat.charpoly();
        let c0 = cp.last().unwrap().clone();
        // det(xI - M) at x = 0 is (-1)^n det(M).
        assert_eq!(c0, -mat.det());
    }

    #[test]
    fn singular_values_of_diagonal_matrix() {
        let mat = m(&[&[3, 0], &[0, -4]]).to_cnum();
        let sv = mat.singular_values();
        assert!((sv[0] - 4.0).abs() < 1e-9);
        assert!((sv[1] - 3.0).abs() < 1e-9);
    }

    #[test]
    fn approx_rank_sees_the_gap() {
        let mat = m(&[&[1, 2], &[2, 4]]).to_cnum();
        assert_eq!(mat.rank_approx(), 1);
        let full = m(&[&[1, 0], &[0, 1]]).to_cnum();
        assert_eq!(full.rank_approx(), 2);
        let wide = m(&[&[1, 2, 3], &[2, 4, 6]]).to_cnum();
        assert_eq!(wide.rank_approx(), 1);
    }

    #[test]
    fn tiny_singular_values_are_not_inflated() {
        // A float-residue entry of order 1e-13 in an otherwise rank-2
        // matrix must come back as a singular value of the same order.
        // An algorithm that squares the matrix first loses it under
        // rounding noise of order sqrt(eps) and overcounts the rank.
        let residue = 3.905528350394463e-13;
        let mat = Matrix::from_rows(vec![
            vec![CNum::zero(), CNum::from_f64(1.0), CNum::from_f64(-1.125)],
            vec![CNum::from_f64(-2.25), CNum::zero(), CNum::from_f64(residue)],
            vec![CNum::from_f64(2.0), CNum::zero(), CNum::zero()],
        ]);
        let sv = mat.singular_values();
        assert!((sv[0] - 3.010398644698069).abs() < 1e-9);
        assert!((sv[1] - 1.5051993223490347).abs() < 1e-9);
        assert!(sv[2] < 1e-12, "smallest singular value inflated: {}", sv[2]);
        assert_eq!(mat.rank_approx(), 2);
    }

    #[test]
    fn complex_singular_values_match_the_moduli() {
        // Unitary column phases do not change singular values.
        let mat = Matrix::from_rows(vec![
            vec![CNum::new(0.0, 3.0), CNum::zero()],
            vec![CNum::zero(), CNum::new(-4.0, 0.0)],
            vec![CNum::zero(), CNum::zero()],
        ]);
        let sv = mat.singular_values();
        assert!((sv[0] - 4.0).abs() < 1e-9);
        assert!((sv[1] - 3.0).abs() < 1e-9);
    }
}
