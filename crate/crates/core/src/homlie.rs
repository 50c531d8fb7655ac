//! Hom-Lie algebras: skew brackets with a twisted Jacobi identity.
//!
//! A Hom-Lie algebra is a vector space with a skew-symmetric bracket and a
//! linear twist `T` satisfying
//!
//! ```text
//! [T(x), [y, z]] + [T(y), [z, x]] + [T(z), [x, y]] = 0.
//! ```
//!
//! With `T` the identity this is the ordinary Jacobi identity. The central
//! construction here is [`extend_sl2`]: adjoining a one-dimensional span
//! of a twist-compatible derivation `D` to sl2, with `[x, D] = -D(x)` and
//! the twist negating the `D` axis, always yields a Hom-Lie algebra, even
//! though the bracket is usually not Lie.

use thiserror::Error;

use crate::lie::LieAlgebra;
use crate::matrix::Matrix;
use crate::rat::Rat;
use crate::sl2::GenDer5;

#[derive(Debug, Error, PartialEq)]
pub enum HomLieError {
    #[error("structure constant table has wrong shape at index {0}")]
    ShapeMismatch(usize),
    #[error("bracket is not skew-symmetric at basis pair ({i}, {j})")]
    SkewViolation { i: usize, j: usize },
    #[error("twist must be a square matrix of the algebra dimension")]
    TwistShape,
}

/// First basis triple where the twisted Jacobi identity fails, with the
/// nonzero defect vector. Produced by [`HomLieAlgebra::check_homlie_jacobi`];
/// a failure is data about the structure, not a program error.
#[derive(Clone, Debug, PartialEq)]
pub struct HomLieViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub defect: Vec<Rat>,
}

/// A finite-dimensional algebra with a skew bracket and a twist map.
///
/// Skewness is enforced at construction; the twisted Jacobi identity is
/// deliberately not, so the type can also represent near-miss structures
/// (for example a genuinely non-Lie bracket paired with the identity
/// twist) and report where they fail.
#[derive(Clone, Debug, PartialEq)]
pub struct HomLieAlgebra {
    dim: usize,
    names: Vec<String>,
    c: Vec<Vec<Vec<Rat>>>,
    twist: Matrix<Rat>,
}

impl HomLieAlgebra {
    /// Builds the algebra from structure constants `c[i][j]` (coordinates
    /// of the bracket of basis elements i and j) and a twist matrix.
    pub fn new(
        names: Vec<String>,
        c: Vec<Vec<Vec<Rat>>>,
        twist: Matrix<Rat>,
    ) -> Result<Self, HomLieError> {
        let dim = names.len();
        if c.len() != dim {
            return Err(HomLieError::ShapeMismatch(c.len()));
        }
        for (i, row) in c.iter().enumerate() {
            if row.len() != dim || row.iter().any(|v| v.len() != dim) {
                return Err(HomLieError::ShapeMismatch(i));
            }
        }
        for i in 0..dim {
            for j in i..dim {
                for s in 0..dim {
                    if c[i][j][s] != -&c[j][i][s] {
                        return Err(HomLieError::SkewViolation { i, j });
                    }
                }
            }
        }
        if twist.rows() != dim || twist.cols() != dim {
            return Err(HomLieError::TwistShape);
        }
        Ok(HomLieAlgebra { dim, names, c, twist })
    }

    /// Wraps an ordinary Lie algebra with the given twist.
    pub fn from_lie(g: &LieAlgebra, twist: Matrix<Rat>) -> Result<Self, HomLieError> {
        let dim = g.dim();
        let c = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| (0..dim).map(|k| g.constant(i, j, k).clone()).collect())
                    .collect()
            })
            .collect();
        HomLieAlgebra::new(g.names().to_vec(), c, twist)
    }

    /// The same algebra with a different twist.
    pub fn with_twist(&self, twist: Matrix<Rat>) -> Result<Self, HomLieError> {
        if twist.rows() != self.dim || twist.cols() != self.dim {
            return Err(HomLieError::TwistShape);
        }
        Ok(HomLieAlgebra { twist, ..self.clone() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn twist(&self) -> &Matrix<Rat> {
        &self.twist
    }

    pub fn constant(&self, i: usize, j: usize) -> &[Rat] {
        &self.c[i][j]
    }

    /// Bracket of coordinate vectors by bilinear extension.
    pub fn bracket(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        assert_eq!(u.len(), self.dim, "left argument has wrong dimension");
        assert_eq!(v.len(), self.dim, "right argument has wrong dimension");
        let mut out = vec![Rat::zero(); self.dim];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let scale = ui * vj;
                for (s, c) in self.c[i][j].iter().enumerate() {
                    out[s] += &(&scale * c);
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim];
        v[i] = Rat::one();
        v
    }

    /// Exhaustive twisted-Jacobi check over basis triples i < j < k; the
    /// skew bracket makes the defect alternating, so those triples decide
    /// all of them. Returns the first failing triple, or `None` on a pass.
    pub fn check_homlie_jacobi(&self) -> Option<HomLieViolation> {
        let twisted: Vec<Vec<Rat>> = (0..self.dim)
            .map(|i| self.twist.mul_vec(&self.basis_vector(i)))
            .collect();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    let mut defect = self.bracket(&twisted[i], &self.c[j][k]);
                    let term2 = self.bracket(&twisted[j], &self.c[k][i]);
                    let term3 = self.bracket(&twisted[k], &self.c[i][j]);
                    for s in 0..self.dim {
                        defect[s] += &term2[s];
                        defect[s] += &term3[s];
                    }
                    if defect.iter().any(|x| !x.is_zero()) {
                        return Some(HomLieViolation { i, j, k, defect });
                    }
                }
            }
        }
        None
    }
}

/// The 4-dimensional extension of sl2 by a twist-compatible derivation:
/// basis (H, E, F, D), bracket
///
/// ```text
/// [x + aD, y + bD] = [x, y] + a D(y) - b D(x)
/// ```
///
/// and twist fixing sl2 while negating D. The compatibility identity
/// `-D([x,y]) = [D(x),y] + [x,D(y)]` makes the twisted Jacobi identity
/// hold for every tuple `d`, which the constructor verifies exhaustively.
pub fn extend_sl2(d: &GenDer5<Rat>) -> HomLieAlgebra {
    let g = crate::lie::sl2();
    let m = d.to_matrix();
    let dim = 4;
    let mut c = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
    for i in 0..3 {
        for j in 0..3 {
            for s in 0..3 {
                c[i][j][s] = g.constant(i, j, s).clone();
            }
        }
        // [e_i, D] = -D(e_i); D(e_i) is column i of the derivation matrix.
        for s in 0..3 {
            c[i][3][s] = -m.get(s, i).clone();
            c[3][i][s] = m.get(s, i).clone();
        }
    }
    let mut twist = Matrix::<Rat>::identity(4);
    twist.set(3, 3, Rat::int(-1));
    let names = vec!["H".to_string(), "E".to_string(), "F".to_string(), "D".to_string()];
    let h = HomLieAlgebra::new(names, c, twist).expect("extension table is skew by construction");
    assert!(
        h.check_homlie_jacobi().is_none(),
        "twisted Jacobi must hold for every derivation extension"
    );
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::sl2;

    fn d5(z: i64, e: i64, s: i64, l: i64, m: i64) -> GenDer5<Rat> {
        GenDer5::of_ints(z, e, s, l, m)
    }

    #[test]
    fn zero_derivation_extension_is_a_central_extension() {
        let h = extend_sl2(&d5(0, 0, 0, 0, 0));
        assert_eq!(h.dim(), 4);
        // D is central and the sl2 block keeps its bracket.
        for i in 0..3 {
            assert!(h.constant(i, 3).iter().all(Rat::is_zero));
        }
        assert_eq!(h.constant(0, 1), &[Rat::zero(), Rat::int(2), Rat::zero(), Rat::zero()]);
        assert!(h.check_homlie_jacobi().is_none());
    }

    #[test]
    fn derivation_brackets_read_off_the_matrix_columns() {
        // For d on the lambda axis only D(F) = E survives.
        let h = extend_sl2(&d5(0, 0, 0, 1, 0));
        assert!(h.constant(0, 3).iter().all(Rat::is_zero));
        assert!(h.constant(1, 3).iter().all(Rat::is_zero));
        assert_eq!(
            h.constant(2, 3),
            &[Rat::zero(), Rat::int(-1), Rat::zero(), Rat::zero()]
        );
        assert!(h.check_homlie_jacobi().is_none());
    }

    #[test]
    fn every_extension_satisfies_the_twisted_identity() {
        let samples = [
            d5(1, 0, 0, 0, 0),
            d5(0, 1, 0, 0, 0),
            d5(1, 1, 1, 1, 1),
            d5(-2, 3, 5, -7, 11),
            GenDer5::new(
                Rat::new(1, 2),
                Rat::new(-2, 3),
                Rat::new(3, 5),
                Rat::new(-5, 7),
                Rat::new(7, 11),
            ),
        ];
        for d in &samples {
            // The constructor itself asserts the exhaustive check.
            let h = extend_sl2(d);
            assert!(h.check_homlie_jacobi().is_none());
        }
    }

    #[test]
    fn identity_twist_on_plain_sl2_passes() {
        let h = HomLieAlgebra::from_lie(&sl2(), Matrix::identity(3)).unwrap();
        assert!(h.check_homlie_jacobi().is_none());
    }

    #[test]
    fn identity_twist_fails_on_a_nonzero_extension() {
        // With the twist replaced by the identity the bracket would have
        // to be Lie, and it is not: the (H, E, D) triple leaves -4E.
        let h = extend_sl2(&d5(1, 0, 0, 0, 0));
        let flat = h.with_twist(Matrix::identity(4)).unwrap();
        let violation = flat.check_homlie_jacobi().expect("identity twist must fail");
        assert_eq!((violation.i, violation.j, violation.k), (0, 1, 3));
        assert_eq!(
            violation.defect,
            vec![Rat::zero(), Rat::int(-4), Rat::zero(), Rat::zero()]
        );
    }

    #[test]
    fn bracket_is_bilinear() {
        let h = extend_sl2(&d5(1, 2, 3, 4, 5));
        let u = [Rat::int(2), Rat::int(-1), Rat::zero(), Rat::int(3)];
        let v = [Rat::int(1), Rat::int(4), Rat::int(-2), Rat::zero()];
        let w = [Rat::zero(), Rat::int(1), Rat::int(1), Rat::int(-1)];
        let mut v_plus_w = Vec::new();
        for s in 0..4 {
            v_plus_w.push(&v[s] + &w[s]);
        }
        let lhs = h.bracket(&u, &v_plus_w);
        let uv = h.bracket(&u, &v);
        let uw = h.bracket(&u, &w);
        for s in 0..4 {
            assert_eq!(lhs[s], &uv[s] + &uw[s]);
        }
    }

    #[test]
    fn construction_rejects_non_skew_tables() {
        // [a, b] = a is not skew against [b, a] = 0.
        let mut c = vec![vec![vec![Rat::zero(); 2]; 2]; 2];
        c[0][1][0] = Rat::one();
        let err = HomLieAlgebra::new(
            vec!["a".to_string(), "b".to_string()],
            c,
            Matrix::identity(2),
        )
        .unwrap_err();
        assert_eq!(err, HomLieError::SkewViolation { i: 0, j: 1 });
    }

    #[test]
    fn twist_shape_is_checked() {
        let h = extend_sl2(&d5(0, 0, 0, 0, 0));
        assert_eq!(h.with_twist(Matrix::identity(3)).unwrap_err(), HomLieError::TwistShape);
    }
}
