//! Finite-dimensional Lie algebras given by structure constants.
//!
//! A [`LieAlgebra`] is a validated tensor `c[i][j][k]`: the coefficient of
//! the k-th basis element in the bracket of the i-th and j-th. Validation
//! is exhaustive, not sampled: skew-symmetry on every index pair and the
//! Jacobi identity on every basis triple. Everything downstream (adjoint
//! maps, the Killing form, derivation spaces) trusts those two invariants.
//!
//! The basis convention for `sl2` is fixed as (H, E, F) with
//! `[H,E] = 2E`, `[H,F] = -2F`, `[E,F] = H`. The classical families use
//! elementary-matrix bases documented on [`classical`].

use serde_json::{json, Value};
use std::fmt;
use thiserror::Error;

use crate::matrix::Matrix;
use crate::rat::Rat;

#[derive(Debug, Error, PartialEq)]
pub enum LieError {
    #[error("structure tensor has wrong shape at index {0}")]
    ShapeMismatch(usize),
    #[error("skew-symmetry fails at (i={i}, j={j}, k={k})")]
    SkewViolation { i: usize, j: usize, k: usize },
    #[error("Jacobi identity fails at basis triple (i={i}, j={j}, k={k})")]
    JacobiViolation { i: usize, j: usize, k: usize },
    #[error("basis indices do not satisfy the sl2 relations: {0}")]
    NotSl2(String),
    #[error("unsupported classical parameters: {0}")]
    UnsupportedClassical(String),
    #[error("invalid structure-constant file: {0}")]
    Format(String),
}

/// A Lie algebra over the rationals, fixed by structure constants.
#[derive(Clone, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    names: Vec<String>,
    /// `c[i][j][k]` is the `e_k` coefficient of `[e_i, e_j]`.
    c: Vec<Vec<Vec<Rat>>>,
}

impl LieAlgebra {
    /// Validates skew-symmetry on all index pairs and Jacobi on all basis
    /// triples. Skew plus bilinearity make the Jacobi expression
    /// alternating, so triples i < j < k decide it completely.
    pub fn new(names: Vec<String>, c: Vec<Vec<Vec<Rat>>>) -> Result<Self, LieError> {
        let dim = names.len();
        if c.len() != dim {
            return Err(LieError::ShapeMismatch(c.len()));
        }
        for (i, plane) in c.iter().enumerate() {
            if plane.len() != dim || plane.iter().any(|row| row.len() != dim) {
                return Err(LieError::ShapeMismatch(i));
            }
        }
        for i in 0..dim {
            for j in i..dim {
                for k in 0..dim {
                    if c[i][j][k] != -&c[j][i][k] {
                        return Err(LieError::SkewViolation { i, j, k });
                    }
                }
            }
        }
        let algebra = LieAlgebra { dim, names, c };
        for i in 0..dim {
            for j in i + 1..dim {
                for k in j + 1..dim {
                    if !algebra.jacobi_defect(i, j, k).iter().all(Rat::is_zero) {
                        return Err(LieError::JacobiViolation { i, j, k });
                    }
                }
            }
        }
        Ok(algebra)
    }

    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]` in coordinates.
    fn jacobi_defect(&self, i: usize, j: usize, k: usize) -> Vec<Rat> {
        let mut acc = vec![Rat::zero(); self.dim];
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for s in 0..self.dim {
                if self.c[a][b][s].is_zero() {
                    continue;
                }
                for (slot, x) in acc.iter_mut().zip(&self.c[s][c]) {
                    *slot += &(&self.c[a][b][s] * x);
                }
            }
        }
        acc
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.c[i][j][k]
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut acc = vec![Rat::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let scale = &x[i] * &y[j];
                for (slot, c) in acc.iter_mut().zip(&self.c[i][j]) {
                    *slot += &(&scale * c);
                }
            }
        }
        acc
    }

    /// The adjoint map `ad(x): y -> [x, y]` as a matrix on coordinates.
    pub fn ad(&self, x: &[Rat]) -> Matrix<Rat> {
        assert_eq!(x.len(), self.dim);
        Matrix::from_fn(self.dim, self.dim, |t, j| {
            let mut acc = Rat::zero();
            for i in 0..self.dim {
                if !x[i].is_zero() {
                    acc += &(&x[i] * &self.c[i][j][t]);
                }
            }
            acc
        })
    }

    pub fn ad_basis(&self, i: usize) -> Matrix<Rat> {
        Matrix::from_fn(self.dim, self.dim, |t, j| self.c[i][j][t].clone())
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim];
        v[i] = Rat::one();
        v
    }

    /// Gram matrix of the Killing form: `K[i][j] = tr(ad e_i . ad e_j)`.
    pub fn killing_matrix(&self) -> Matrix<Rat> {
        let ads: Vec<Matrix<Rat>> = (0..self.dim).map(|i| self.ad_basis(i)).collect();
        Matrix::from_fn(self.dim, self.dim, |i, j| ads[i].mul(&ads[j]).trace())
    }

    /// Abelian algebra: all brackets vanish.
    pub fn abelian(dim: usize) -> Self {
        let names = (0..dim).map(|i| format!("x{}", i + 1)).collect();
        let c = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
        LieAlgebra::new(names, c).expect("abelian constants are trivially valid")
    }

    /// Serializes to the interchange form: only nonzero constants with
    /// i < j, sorted by (i, j, k); skew completion is implied.
    pub fn to_json(&self) -> Value {
        let mut entries = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in 0..self.dim {
                    if !self.c[i][j][k].is_zero() {
                        entries.push(json!([i, j, k, self.c[i][j][k].to_string()]));
                    }
                }
            }
        }
        json!({
            "dim": self.dim,
            "basis": self.names,
            "c": entries,
        })
    }

    /// Loads the interchange form, applying skew completion, then re-runs
    /// full validation: a hand-edited file cannot skip the checks.
    pub fn from_json(value: &Value) -> Result<Self, LieError> {
        let obj = value
            .as_object()
            .ok_or_else(|| LieError::Format("top level must be an object".into()))?;
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| LieError::Format("missing integer field 'dim'".into()))?
            as usize;
        let names: Vec<String> = match obj.get("basis") {
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| {
                    v.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| LieError::Format("basis names must be strings".into()))
                })
                .collect::<Result<_, _>>()?,
            None => (0..dim).map(|i| format!("x{}", i + 1)).collect(),
            _ => return Err(LieError::Format("'basis' must be an array".into())),
        };
        if names.len() != dim {
            return Err(LieError::Format(format!(
                "dim is {} but basis lists {} names",
                dim,
                names.len()
            )));
        }
        let mut c = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
        let entries = obj
            .get("c")
            .and_then(Value::as_array)
            .ok_or_else(|| LieError::Format("missing array field 'c'".into()))?;
        for entry in entries {
            let parts = entry
                .as_array()
                .filter(|p| p.len() == 4)
                .ok_or_else(|| LieError::Format("each c entry must be [i, j, k, value]".into()))?;
            let idx = |v: &Value| -> Result<usize, LieError> {
                let n = v
                    .as_u64()
                    .ok_or_else(|| LieError::Format("indices must be non-negative integers".into()))?
                    as usize;
                if n >= dim {
                    return Err(LieError::Format(format!("index {n} out of range for dim {dim}")));
                }
                Ok(n)
            };
            let (i, j, k) = (idx(&parts[0])?, idx(&parts[1])?, idx(&parts[2])?);
            if i >= j {
                return Err(LieError::Format(format!(
                    "entry ({i},{j},{k}) must have i < j; skew completion is implied"
                )));
            }
            let text = parts[3]
                .as_str()
                .ok_or_else(|| LieError::Format("constant values must be strings".into()))?;
            let value = Rat::parse(text)
                .map_err(|e| LieError::Format(format!("bad rational {text:?}: {e}")))?;
            c[i][j][k] = value.clone();
            c[j][i][k] = -value;
        }
        LieAlgebra::new(names, c)
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim {}, basis {:?})", self.dim, self.names)
    }
}

/// Index positions of an (H, E, F) triple inside some algebra's basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sl2Basis {
    pub h: usize,
    pub e: usize,
    pub f: usize,
}

impl Sl2Basis {
    /// The fixed convention used everywhere here: H = 0, E = 1, F = 2.
    pub fn standard() -> Self {
        Sl2Basis { h: 0, e: 1, f: 2 }
    }

    /// Verifies `[H,E] = 2E`, `[H,F] = -2F`, `[E,F] = H` at these indices.
    pub fn check(&self, g: &LieAlgebra) -> Result<(), LieError> {
        let expect = |got: Vec<Rat>, want: Vec<Rat>, relation: &str| {
            if got == want {
                Ok(())
            } else {
                Err(LieError::NotSl2(relation.to_string()))
            }
        };
        let unit = |i: usize, s: i64| {
            let mut v = vec![Rat::zero(); g.dim()];
            v[i] = Rat::int(s);
            v
        };
        expect(
            g.bracket(&g.basis_vector(self.h), &g.basis_vector(self.e)),
            unit(self.e, 2),
            "[H,E] = 2E",
        )?;
        expect(
            g.bracket(&g.basis_vector(self.h), &g.basis_vector(self.f)),
            unit(self.f, -2),
            "[H,F] = -2F",
        )?;
        expect(
            g.bracket(&g.basis_vector(self.e), &g.basis_vector(self.f)),
            unit(self.h, 1),
            "[E,F] = H",
        )
    }
}

/// The rank-one simple algebra in its (H, E, F) basis.
pub fn sl2() -> LieAlgebra {
    let mut c = vec![vec![vec![Rat::zero(); 3]; 3]; 3];
    let mut set = |i: usize, j: usize, k: usize, v: i64| {
        c[i][j][k] = Rat::int(v);
        c[j][i][k] = Rat::int(-v);
    };
    set(0, 1, 1, 2); // [H,E] = 2E
    set(0, 2, 2, -2); // [H,F] = -2F
    set(1, 2, 0, 1); // [E,F] = H
    let names = vec!["H".into(), "E".into(), "F".into()];
    LieAlgebra::new(names, c).expect("sl2 constants are valid")
}

/// Classical matrix families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Series {
    Sl,
    Sp,
    So,
}

impl Series {
    pub fn parse(text: &str) -> Option<Series> {
        match text {
            "sl" => Some(Series::Sl),
            "sp" => Some(Series::Sp),
            "so" => Some(Series::So),
            _ => None,
        }
    }
}

fn elementary(n: usize, i: usize, j: usize) -> Matrix<Rat> {
    let mut m = Matrix::zero(n, n);
    m.set(i, j, Rat::one());
    m
}

/// Defining matrix bases for the classical families; deterministic order.
///
/// * `sl(n)`: Cartan elements `h_i = E_ii - E_(i+1)(i+1)` first, then the
///   off-diagonal `E_ij` in row-major order. For n = 2 this is exactly the
///   (H, E, F) convention.
/// * `so(n)`: `a_ij = E_ij - E_ji` for i < j, lexicographic.
/// * `sp(n)`, n = 2k: block form [[A, B], [C, -A^T]] with B, C symmetric;
///   basis: the k² maps `E_ij - E_(k+j)(k+i)` (row-major), then the
///   symmetric B-units, then the symmetric C-units (each i <= j, row-major).
pub fn classical_matrices(series: Series, n: usize) -> Result<(Vec<Matrix<Rat>>, Vec<String>), LieError> {
    let unsupported = |msg: &str| Err(LieError::UnsupportedClassical(format!("{series:?}({n}): {msg}")));
    match series {
        Series::Sl => {
            if n < 2 {
                return unsupported("need n >= 2");
            }
            let mut mats = Vec::new();
            let mut names = Vec::new();
            for i in 0..n - 1 {
                let mut m = Matrix::zero(n, n);
                m.set(i, i, Rat::one());
                m.set(i + 1, i + 1, Rat::int(-1));
                mats.push(m);
                names.push(if n == 2 { "H".to_string() } else { format!("h{}", i + 1) });
            }
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        mats.push(elementary(n, i, j));
                        names.push(match (n, i, j) {
                            (2, 0, 1) => "E".to_string(),
                            (2, 1, 0) => "F".to_string(),
                            _ => format!("e{}{}", i + 1, j + 1),
                        });
                    }
                }
            }
            Ok((mats, names))
        }
        Series::So => {
            if n < 5 {
                return unsupported("need n >= 5");
            }
            let mut mats = Vec::new();
            let mut names = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let mut m = elementary(n, i, j);
                    m.set(j, i, Rat::int(-1));
                    mats.push(m);
                    names.push(format!("a{}{}", i + 1, j + 1));
                }
            }
            Ok((mats, names))
        }
        Series::Sp => {
            if n < 4 || n % 2 != 0 {
                return unsupported("need even n >= 4");
            }
            let k = n / 2;
            let mut mats = Vec::new();
            let mut names = Vec::new();
            for i in 0..k {
                for j in 0..k {
                    let mut m = elementary(n, i, j);
                    m.set(k + j, k + i, Rat::int(-1));
                    mats.push(m);
                    names.push(format!("a{}{}", i + 1, j + 1));
                }
            }
            for i in 0..k {
                for j in i..k {
                    let mut m = elementary(n, i, k + j);
                    if i != j {
                        m.set(j, k + i, Rat::one());
                    }
                    mats.push(m);
                    names.push(format!("b{}{}", i + 1, j + 1));
                }
            }
            for i in 0..k {
                for j in i..k {
                    let mut m = elementary(n, k + i, j);
                    if i != j {
                        m.set(k + j, i, Rat::one());
                    }
                    mats.push(m);
                    names.push(format!("c{}{}", i + 1, j + 1));
                }
            }
            Ok((mats, names))
        }
    }
}

/// Builds a classical algebra from its matrix realization: structure
/// constants come from actual matrix commutators re-expressed in the basis,
/// then the result passes full validation like any other algebra.
pub fn classical(series: Series, n: usize) -> Result<LieAlgebra, LieError> {
    let (mats, names) = classical_matrices(series, n)?;
    let dim = mats.len();
    let span = Matrix::from_fn(n * n, dim, |flat, m| {
        mats[m].get(flat / n, flat % n).clone()
    });
    let mut c = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
    for i in 0..dim {
        for j in i + 1..dim {
            let comm = mats[i].mul(&mats[j]).sub(&mats[j].mul(&mats[i]));
            let rhs: Vec<Rat> = comm.flat().to_vec();
            let coords = span
                .solve(&rhs)
                .expect("classical families are closed under commutators");
            for (k, v) in coords.into_iter().enumerate() {
                c[i][j][k] = v.clone();
                c[j][i][k] = -v;
            }
        }
    }
    LieAlgebra::new(names, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::int(n)
    }

    #[test]
    fn sl2_relations_hold() {
        let g = sl2();
        assert_eq!(g.dim(), 3);
        let h = g.basis_vector(0);
        let e = g.basis_vector(1);
        let f = g.basis_vector(2);
        assert_eq!(g.bracket(&h, &e), vec![r(0), r(2), r(0)]);
        assert_eq!(g.bracket(&h, &f), vec![r(0), r(0), r(-2)]);
        assert_eq!(g.bracket(&e, &f), vec![r(1), r(0), r(0)]);
        assert!(Sl2Basis::standard().check(&g).is_ok());
    }

    #[test]
    fn sl2_adjoint_matrices() {
        let g = sl2();
        assert_eq!(
            g.ad_basis(0),
            Matrix::from_i64_rows(&[&[0, 0, 0], &[0, 2, 0], &[0, 0, -2]])
        );
        assert_eq!(
            g.ad_basis(1),
            Matrix::from_i64_rows(&[&[0, 0, 1], &[-2, 0, 0], &[0, 0, 0]])
        );
        assert_eq!(
            g.ad_basis(2),
            Matrix::from_i64_rows(&[&[0, -1, 0], &[0, 0, 0], &[2, 0, 0]])
        );
    }

    #[test]
    fn sl2_killing_matrix() {
        // Oracle: trace computations on the adjoint matrices above give
        // K(H,H) = 8, K(E,F) = 4, all other pairs 0.
        assert_eq!(
            sl2().killing_matrix(),
            Matrix::from_i64_rows(&[&[8, 0, 0], &[0, 0, 4], &[0, 4, 0]])
        );
    }

    #[test]
    fn skew_violation_is_reported() {
        let mut c = vec![vec![vec![Rat::zero(); 2]; 2]; 2];
        c[0][1][0] = r(1);
        c[1][0][0] = r(1); // should be -1
        let err = LieAlgebra::new(vec!["x".into(), "y".into()], c).unwrap_err();
        assert_eq!(err, LieError::SkewViolation { i: 0, j: 1, k: 0 });
    }

    #[test]
    fn jacobi_violation_is_reported() {
        // [H,E] = 2E, [H,F] = -2F, [E,F] = E: the cyclic sum on (H,E,F)
        // equals -2E, a genuine violation.
        let mut c = vec![vec![vec![Rat::zero(); 3]; 3]; 3];
        let mut set = |i: usize, j: usize, k: usize, v: i64| {
            c[i][j][k] = r(v);
            c[j][i][k] = r(-v);
        };
        set(0, 1, 1, 2);
        set(0, 2, 2, -2);
        set(1, 2, 1, 1);
        let err = LieAlgebra::new(vec!["H".into(), "E".into(), "F".into()], c).unwrap_err();
        assert_eq!(err, LieError::JacobiViolation { i: 0, j: 1, k: 2 });
    }

    #[test]
    fn rescaled_sl2_still_satisfies_jacobi() {
        // [E,F] = 2H instead of H is just a rescaled sl2; the validator
        // must accept it (Jacobi is basis-independent).
        let mut c = vec![vec![vec![Rat::zero(); 3]; 3]; 3];
        let mut set = |i: usize, j: usize, k: usize, v: i64| {
            c[i][j][k] = r(v);
            c[j][i][k] = r(-v);
        };
        set(0, 1, 1, 2);
        set(0, 2, 2, -2);
        set(1, 2, 0, 2);
        assert!(LieAlgebra::new(vec!["H".into(), "E".into(), "F".into()], c).is_ok());
    }

    #[test]
    fn abelian_is_valid_and_killing_vanishes() {
        let g = LieAlgebra::abelian(3);
        assert_eq!(g.killing_matrix(), Matrix::zero(3, 3));
    }

    #[test]
    fn classical_dimensions() {
        assert_eq!(classical(Series::Sl, 2).unwrap().dim(), 3);
        assert_eq!(classical(Series::Sl, 3).unwrap().dim(), 8);
        assert_eq!(classical(Series::Sp, 4).unwrap().dim(), 10);
        assert_eq!(classical(Series::So, 5).unwrap().dim(), 10);
    }

    #[test]
    fn classical_sl2_matches_the_fixed_convention() {
        let g = classical(Series::Sl, 2).unwrap();
        let reference = sl2();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(g.constant(i, j, k), reference.constant(i, j, k));
                }
            }
        }
    }

    #[test]
    fn sl3_bracket_matches_matrix_commutator() {
        // Oracle: [E_12, E_23] = E_13 as raw 3x3 matrices; the structure
        // constants must say the same in coordinates.
        let g = classical(Series::Sl, 3).unwrap();
        let names = g.names();
        let e12 = names.iter().position(|s| s == "e12").unwrap();
        let e23 = names.iter().position(|s| s == "e23").unwrap();
        let e13 = names.iter().position(|s| s == "e13").unwrap();
        let got = g.bracket(&g.basis_vector(e12), &g.basis_vector(e23));
        assert_eq!(got, g.basis_vector(e13));
    }

    #[test]
    fn unsupported_classical_parameters() {
        assert!(classical(Series::Sl, 1).is_err());
        assert!(classical(Series::Sp, 5).is_err());
        assert!(classical(Series::Sp, 2).is_err());
        assert!(classical(Series::So, 4).is_err());
    }

    #[test]
    fn killing_form_is_invariant_on_basis_triples() {
        // K([x,y],z) = K(x,[y,z]) for all basis triples of sl3.
        let g = classical(Series::Sl, 3).unwrap();
        let killing = g.killing_matrix();
        let form = |x: &[Rat], y: &[Rat]| -> Rat {
            let mut acc = Rat::zero();
            for i in 0..g.dim() {
                for j in 0..g.dim() {
                    acc += &(&(&x[i] * &y[j]) * killing.get(i, j));
                }
            }
            acc
        };
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                for k in 0..g.dim() {
                    let xy = g.bracket(&g.basis_vector(i), &g.basis_vector(j));
                    let yz = g.bracket(&g.basis_vector(j), &g.basis_vector(k));
                    assert_eq!(
                        form(&xy, &g.basis_vector(k)),
                        form(&g.basis_vector(i), &yz)
                    );
                }
            }
        }
    }

    #[test]
    fn json_round_trip_preserves_the_algebra() {
        for g in [sl2(), classical(Series::So, 5).unwrap()] {
            let encoded = g.to_json();
            let decoded = LieAlgebra::from_json(&encoded).unwrap();
            assert_eq!(decoded, g);
        }
    }

    #[test]
    fn json_loader_rejects_invalid_tables() {
        // A table violating Jacobi must not load even if well-formed.
        let bad = json!({
            "dim": 3,
            "basis": ["H", "E", "F"],
            "c": [
                [0, 1, 1, "2"],
                [0, 2, 2, "-2"],
                [1, 2, 1, "1"],
            ],
        });
        assert!(matches!(
            LieAlgebra::from_json(&bad),
            Err(LieError::JacobiViolation { .. })
        ));
        let malformed = json!({"dim": 2, "c": [[1, 0, 0, "1"]]});
        assert!(matches!(
            LieAlgebra::from_json(&malformed),
            Err(LieError::Format(_))
        ));
    }
}
