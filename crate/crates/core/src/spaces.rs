//! Linear spaces of structure maps on a Lie algebra.
//!
//! Two families are computed here, both as exact nullspaces of constraint
//! systems over the rationals:
//!
//! * [`gen_derivations`]: maps D with `a D([x,y]) = b [D(x),y] + c [x,D(y)]`
//!   for a fixed coefficient triple (a, b, c). The triple (1, 1, 1) gives
//!   ordinary derivations; (-1, 1, 1) and (2, 1, 1) give the other spaces
//!   that matter for twisted Jacobi structures.
//! * [`homlie_space`]: linear maps T making the twisted Jacobi identity
//!   `[T(x),[y,z]] + [T(y),[z,x]] + [T(z),[x,y]] = 0` hold on the algebra.
//!
//! Operators on the algebra are stored flattened row-major, so a subspace of
//! them lives in ambient dimension `dim * dim` and plugs directly into
//! [`SubspaceBasis`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::lie::LieAlgebra;
use crate::matrix::Matrix;
use crate::rat::Rat;
use crate::subspace::SubspaceBasis;

/// Coefficient triple (a, b, c) selecting a generalized-derivation equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationType {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl DerivationType {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Self {
        DerivationType { a, b, c }
    }

    pub fn of_ints(a: i64, b: i64, c: i64) -> Self {
        DerivationType::new(Rat::int(a), Rat::int(b), Rat::int(c))
    }
}

impl fmt::Display for DerivationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl FromStr for DerivationType {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = text.split(',').collect();
        if parts.len() != 3 {
            return Err(format!("expected three comma-separated rationals, got {text:?}"));
        }
        let parse = |s: &str| Rat::parse(s.trim()).map_err(|e| format!("bad rational {s:?}: {e}"));
        Ok(DerivationType::new(parse(parts[0])?, parse(parts[1])?, parse(parts[2])?))
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SpaceError {
    #[error("the identity map does not lie in the given space")]
    IdentityNotPresent,
    #[error("ad of the given element is not diagonal in this basis")]
    NonDiagonalizable,
    #[error("ad eigenvalue {0} is not an integer")]
    NonIntegerWeight(String),
    #[error("the space is not invariant under the commutator action")]
    NonInvariant,
}

fn reshape(flat: &[Rat], n: usize) -> Matrix<Rat> {
    Matrix::from_flat(n, n, flat.to_vec())
}

/// The identity operator, flattened row-major.
pub fn identity_flat(n: usize) -> Vec<Rat> {
    Matrix::<Rat>::identity(n).flat().to_vec()
}

/// Solves `a D([x,y]) = b [D(x), y] + c [x, D(y)]` over all basis pairs.
///
/// Bilinearity reduces the condition to basis pairs, and skew-symmetry of
/// the bracket makes the pair (q, p) equivalent to (p, q), so rows are
/// emitted for p < q only. Unknowns are the operator entries `D[t][s]`
/// (coefficient of `e_t` in `D(e_s)`), flattened row-major.
pub fn gen_derivations(g: &LieAlgebra, ty: &DerivationType) -> SubspaceBasis {
    let n = g.dim();
    let mut rows = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            for k in 0..n {
                let mut row = vec![Rat::zero(); n * n];
                for s in 0..n {
                    // a * D([e_p, e_q]) picks up D[k][s] per bracket component.
                    row[k * n + s] += &(&ty.a * g.constant(p, q, s));
                }
                for i in 0..n {
                    // -b * [D(e_p), e_q]
                    row[i * n + p] -= &(&ty.b * g.constant(i, q, k));
                }
                for j in 0..n {
                    // -c * [e_p, D(e_q)]
                    row[j * n + q] -= &(&ty.c * g.constant(p, j, k));
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(rows);
    SubspaceBasis::from_spanning(n * n, system.nullspace_basis())
}

/// Solves the twisted Jacobi identity for the unknown twist T.
///
/// The expression `[T(x),[y,z]] + [T(y),[z,x]] + [T(z),[x,y]]` is
/// alternating in (x, y, z) once the bracket is skew, so triples with a
/// repeated basis index vanish identically and p < q < r covers everything.
pub fn homlie_space(g: &LieAlgebra) -> SubspaceBasis {
    let n = g.dim();
    let mut rows = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            for r in q + 1..n {
                for k in 0..n {
                    let mut row = vec![Rat::zero(); n * n];
                    for (x, y, z) in [(p, q, r), (q, r, p), (r, p, q)] {
                        // [T(e_x), [e_y, e_z]]_k with T(e_x) = sum_i T[i][x] e_i
                        for s in 0..n {
                            if g.constant(y, z, s).is_zero() {
                                continue;
                            }
                            for i in 0..n {
                                row[i * n + x] += &(g.constant(y, z, s) * g.constant(i, s, k));
                            }
                        }
                    }
                    rows.push(row);
                }
            }
        }
    }
    let system = Matrix::from_rows(rows);
    SubspaceBasis::from_spanning(n * n, system.nullspace_basis())
}

/// Splits off the scalar line: given a space containing the identity,
/// returns its trace-zero part, so that `space = traceless + F.id` with the
/// sum direct (the identity has nonzero trace, so it cannot be traceless).
pub fn traceless_split(space: &SubspaceBasis) -> Result<SubspaceBasis, SpaceError> {
    let ambient = space.ambient();
    let n = isqrt(ambient);
    assert_eq!(n * n, ambient, "operator space ambient must be a square");
    if !space.contains(&identity_flat(n)) {
        return Err(SpaceError::IdentityNotPresent);
    }
    let traces: Vec<Rat> = space
        .vectors()
        .iter()
        .map(|v| reshape(v, n).trace())
        .collect();
    let coeff_space = Matrix::from_rows(vec![traces]).nullspace_basis();
    let vectors = combine(space, &coeff_space);
    Ok(SubspaceBasis::from_spanning(ambient, vectors))
}

/// Decomposes an operator space into eigenspaces of the commutator action
/// `T -> ad(x) T - T ad(x)` of a semisimple element x.
///
/// Requires `ad(x)` to be diagonal with integer entries in the chosen basis
/// and the space to be invariant under the action; candidate eigenvalues
/// are the pairwise differences of the diagonal. Returns weight -> subspace
/// for the nonzero subspaces; their dimensions always sum to the whole.
pub fn weight_decomposition(
    g: &LieAlgebra,
    x: &[Rat],
    space: &SubspaceBasis,
) -> Result<BTreeMap<i64, SubspaceBasis>, SpaceError> {
    let n = g.dim();
    assert_eq!(space.ambient(), n * n, "space must consist of operators on g");
    let ad = g.ad(x);
    for i in 0..n {
        for j in 0..n {
            if i != j && !ad.get(i, j).is_zero() {
                return Err(SpaceError::NonDiagonalizable);
            }
        }
    }
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        let d = ad.get(i, i);
        if !d.is_integer() {
            return Err(SpaceError::NonIntegerWeight(d.to_string()));
        }
        diag.push(d.numer().to_i64().ok_or_else(|| SpaceError::NonIntegerWeight(d.to_string()))?);
    }

    // Commutator action on each basis operator, checked to stay inside.
    let mut acted = Vec::with_capacity(space.dim());
    for v in space.vectors() {
        let m = reshape(v, n);
        let comm = ad.mul(&m).sub(&m.mul(&ad));
        let flat = comm.flat().to_vec();
        if !space.contains(&flat) {
            return Err(SpaceError::NonInvariant);
        }
        acted.push(flat);
    }

    let mut candidates: Vec<i64> = Vec::new();
    for &di in &diag {
        for &dj in &diag {
            if !candidates.contains(&(di - dj)) {
                candidates.push(di - dj);
            }
        }
    }
    candidates.sort_unstable();

    let mut result = BTreeMap::new();
    let mut total = 0;
    for w in candidates {
        // Coefficient vectors alpha with sum alpha_m ([ad,B_m] - w B_m) = 0.
        let cols = Matrix::from_fn(n * n, space.dim(), |row, m| {
            &acted[m][row] - &(&Rat::int(w) * &space.vectors()[m][row])
        });
        let coeffs = cols.nullspace_basis();
        if coeffs.is_empty() {
            continue;
        }
        let sub = SubspaceBasis::from_spanning(n * n, combine(space, &coeffs));
        total += sub.dim();
        result.insert(w, sub);
    }
    assert_eq!(
        total,
        space.dim(),
        "diagonal action must decompose the whole space"
    );
    Ok(result)
}

/// Maps coefficient vectors (relative to `space`'s basis) back to ambient.
fn combine(space: &SubspaceBasis, coeffs: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    coeffs
        .iter()
        .map(|alpha| {
            let mut v = vec![Rat::zero(); space.ambient()];
            for (a, basis_vec) in alpha.iter().zip(space.vectors()) {
                if a.is_zero() {
                    continue;
                }
                for (slot, b) in v.iter_mut().zip(basis_vec) {
                    *slot += &(a * b);
                }
            }
            v
        })
        .collect()
}

fn isqrt(n: usize) -> usize {
    let mut k = 0;
    while (k + 1) * (k + 1) <= n {
        k += 1;
    }
    k
}
