//! Finite-dimensional modules over twisted extensions of sl2.
//!
//! The irreducible sl2-module of highest weight `m` is realized on its
//! standard weight basis `v_0, ..., v_m`, and direct sums of such modules
//! keep explicit block offsets. A module action extends to the enlarged
//! algebra `sl2 + QD` exactly when some matrix `A` solves
//! `A r(x) + r(x) A = -r(D(x))` for `x` in `{H, E, F}`; the affine solution
//! set of that system is computed exactly. The compatible actions in turn
//! produce larger twisted algebras on `g + V`, and invariant subspaces of a
//! compatible action always admit invariant complements, found here by
//! highest-weight extraction inside each weight space.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::homlie::HomLieAlgebra;
use crate::matrix::Matrix;
use crate::rat::Rat;
use crate::sl2::GenDer5;
use crate::subspace::SubspaceBasis;

/// Why a module construction or extension request was rejected.
#[derive(Debug, Error, PartialEq)]
pub enum RepError {
    /// Irreducible modules are indexed by non-negative highest weights.
    #[error("highest weight must be non-negative, got {0}")]
    NegativeWeight(i64),
    /// A direct sum needs at least one summand.
    #[error("direct sum needs at least one summand")]
    EmptySum,
    /// The module-side twist has the wrong shape.
    #[error("module twist must be {expected}x{expected}")]
    TwistShape { expected: usize },
    /// Extension flows are only implemented for the identity module twist.
    #[error("only the identity module twist is supported")]
    UnsupportedTwist,
    /// One operator per basis element of the algebra being represented.
    #[error("expected {expected} operators, got {found}")]
    OperatorCount { expected: usize, found: usize },
    /// Every operator must act on the module's coordinate space.
    #[error("operator {index} is not {expected}x{expected}")]
    OperatorShape { index: usize, expected: usize },
    /// The operators violate the product rule a twisted representation
    /// must satisfy on the named basis pair.
    #[error("operators violate the twisted product rule on the pair ({left}, {right})")]
    ProductRule { left: String, right: String },
    /// A claimed submodule is not stable under the named operator.
    #[error("subspace is not invariant under the {operator} action")]
    NotInvariant { operator: &'static str },
    /// A subspace lives in the wrong coordinate space.
    #[error("expected a subspace of Q^{expected}, got ambient dimension {found}")]
    AmbientMismatch { expected: usize, found: usize },
}

/// The irreducible sl2-module of highest weight `m` on its standard basis:
/// `H v_k = (m - 2k) v_k`, `E v_k = (m - k + 1) v_(k-1)`, `F v_k = (k + 1) v_(k+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sl2Module {
    m: usize,
    h: Matrix<Rat>,
    e: Matrix<Rat>,
    f: Matrix<Rat>,
}

impl Sl2Module {
    fn standard(m: usize) -> Self {
        let n = m + 1;
        let h = Matrix::from_fn(n, n, |i, j| {
            if i == j {
                Rat::int(m as i64 - 2 * i as i64)
            } else {
                Rat::zero()
            }
        });
        let e = Matrix::from_fn(n, n, |i, j| {
            if j == i + 1 {
                Rat::int(m as i64 - j as i64 + 1)
            } else {
                Rat::zero()
            }
        });
        let f = Matrix::from_fn(n, n, |i, j| {
            if i == j + 1 {
                Rat::int(j as i64 + 1)
            } else {
                Rat::zero()
            }
        });
        let module = Sl2Module { m, h, e, f };
        module.validate_commutation();
        module
    }

    // The three defining bracket relations, checked exactly on construction.
    fn validate_commutation(&self) {
        let he = commutator(&self.h, &self.e);
        let hf = commutator(&self.h, &self.f);
        let ef = commutator(&self.e, &self.f);
        assert_eq!(he, self.e.scale(&Rat::int(2)), "[H, E] must equal 2E");
        assert_eq!(hf, self.f.scale(&Rat::int(-2)), "[H, F] must equal -2F");
        assert_eq!(ef, self.h, "[E, F] must equal H");
    }

    /// Highest weight of the module.
    pub fn highest_weight(&self) -> usize {
        self.m
    }

    /// Dimension `m + 1`.
    pub fn dim(&self) -> usize {
        self.m + 1
    }

    pub fn rho_h(&self) -> &Matrix<Rat> {
        &self.h
    }

    pub fn rho_e(&self) -> &Matrix<Rat> {
        &self.e
    }

    pub fn rho_f(&self) -> &Matrix<Rat> {
        &self.f
    }
}

/// Builds the irreducible module of highest weight `m`; rejects negative `m`.
pub fn irreducible_sl2_module(m: i64) -> Result<Sl2Module, RepError> {
    if m < 0 {
        return Err(RepError::NegativeWeight(m));
    }
    Ok(Sl2Module::standard(m as usize))
}

fn commutator(a: &Matrix<Rat>, b: &Matrix<Rat>) -> Matrix<Rat> {
    a.mul(b).sub(&b.mul(a))
}

/// A direct sum of irreducible sl2-modules with explicit block offsets.
#[derive(Debug, Clone, PartialEq)]
pub struct Sl2Rep {
    blocks: Vec<Sl2Module>,
    offsets: Vec<usize>,
    dim: usize,
    h: Matrix<Rat>,
    e: Matrix<Rat>,
    f: Matrix<Rat>,
}

impl Sl2Rep {
    /// A single irreducible summand.
    pub fn single(module: Sl2Module) -> Self {
        Sl2Rep::assemble(vec![module])
    }

    /// The direct sum of the irreducible modules with the given highest
    /// weights, laid out in order.
    pub fn direct_sum(weights: &[i64]) -> Result<Self, RepError> {
        if weights.is_empty() {
            return Err(RepError::EmptySum);
        }
        let blocks = weights
            .iter()
            .map(|&m| irreducible_sl2_module(m))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Sl2Rep::assemble(blocks))
    }

    fn assemble(blocks: Vec<Sl2Module>) -> Self {
        assert!(!blocks.is_empty(), "direct sum needs at least one summand");
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut dim = 0;
        for block in &blocks {
            offsets.push(dim);
            dim += block.dim();
        }
        let place = |pick: fn(&Sl2Module) -> &Matrix<Rat>| {
            let mut big = Matrix::zero(dim, dim);
            for (block, &at) in blocks.iter().zip(&offsets) {
                let small = pick(block);
                for i in 0..block.dim() {
                    for j in 0..block.dim() {
                        big.set(at + i, at + j, small.get(i, j).clone());
                    }
                }
            }
            big
        };
        let h = place(Sl2Module::rho_h);
        let e = place(Sl2Module::rho_e);
        let f = place(Sl2Module::rho_f);
        Sl2Rep {
            blocks,
            offsets,
            dim,
            h,
            e,
            f,
        }
    }

    /// The irreducible summands in block order.
    pub fn blocks(&self) -> &[Sl2Module] {
        &self.blocks
    }

    /// Starting coordinate of each block.
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho_h(&self) -> &Matrix<Rat> {
        &self.h
    }

    pub fn rho_e(&self) -> &Matrix<Rat> {
        &self.e
    }

    pub fn rho_f(&self) -> &Matrix<Rat> {
        &self.f
    }

    /// Diagonal of the `H` action; entry `i` is the weight of coordinate `i`.
    pub fn weights(&self) -> Vec<Rat> {
        (0..self.dim).map(|i| self.h.get(i, i).clone()).collect()
    }
}

/// A module together with the twist it is represented with respect to.
/// The shipped extension flows require the identity twist.
#[derive(Debug, Clone)]
pub struct RepSpec {
    rep: Sl2Rep,
    twist: Matrix<Rat>,
}

impl RepSpec {
    /// The module with the identity twist.
    pub fn new(rep: Sl2Rep) -> Self {
        let twist = Matrix::identity(rep.dim());
        RepSpec { rep, twist }
    }

    /// The module with an explicit twist; only the shape is checked here,
    /// and non-identity twists are rejected by the extension flows.
    pub fn with_twist(rep: Sl2Rep, twist: Matrix<Rat>) -> Result<Self, RepError> {
        if twist.rows() != rep.dim() || twist.cols() != rep.dim() {
            return Err(RepError::TwistShape { expected: rep.dim() });
        }
        Ok(RepSpec { rep, twist })
    }

    pub fn rep(&self) -> &Sl2Rep {
        &self.rep
    }

    pub fn twist(&self) -> &Matrix<Rat> {
        &self.twist
    }

    pub fn has_identity_twist(&self) -> bool {
        self.twist == Matrix::identity(self.rep.dim())
    }
}

fn require_identity_twist(spec: &RepSpec) -> Result<(), RepError> {
    if spec.has_identity_twist() {
        Ok(())
    } else {
        Err(RepError::UnsupportedTwist)
    }
}

/// Affine solution set of the extension equations
/// `A r(x) + r(x) A = -r(D(x))`, `x` in `{H, E, F}`.
#[derive(Debug, Clone)]
pub struct RepSolution {
    solvable: bool,
    particular: Option<Matrix<Rat>>,
    homogeneous: Vec<Matrix<Rat>>,
}

impl RepSolution {
    /// Whether any matrix satisfies all three equations.
    pub fn solvable(&self) -> bool {
        self.solvable
    }

    /// One solution, when the system is consistent.
    pub fn particular(&self) -> Option<&Matrix<Rat>> {
        self.particular.as_ref()
    }

    /// Basis of the homogeneous solutions `A r(x) + r(x) A = 0`; the full
    /// solution set is the particular solution plus their span.
    pub fn homogeneous(&self) -> &[Matrix<Rat>] {
        &self.homogeneous
    }
}

fn unflatten(n: usize, flat: &[Rat]) -> Matrix<Rat> {
    assert_eq!(flat.len(), n * n);
    Matrix::from_fn(n, n, |i, j| flat[i * n + j].clone())
}

/// Solves for the matrices `A` through which the standard sl2 action on the
/// module extends to `sl2 + QD`: `A` must satisfy
/// `A r(x) + r(x) A = -r(D(x))` for `x` in `{H, E, F}`, where `D(x)` is read
/// off the derivation's matrix. Every matrix reported back satisfies its
/// equations exactly.
pub fn solve_rep_extension(spec: &RepSpec, d: &GenDer5<Rat>) -> Result<RepSolution, RepError> {
    require_identity_twist(spec)?;
    let rep = spec.rep();
    let n = rep.dim();
    let nn = n * n;
    let ops = [rep.rho_h(), rep.rho_e(), rep.rho_f()];
    let dmat = d.to_matrix();

    // Right-hand sides: -r(D(x)) with D read column-wise off its matrix.
    let rhs_mats: Vec<Matrix<Rat>> = (0..3)
        .map(|t| {
            let mut acc = Matrix::zero(n, n);
            for (s, op) in ops.iter().enumerate() {
                acc = acc.add(&op.scale(dmat.get(s, t)));
            }
            acc.neg()
        })
        .collect();

    // One linear equation per (operator, entry); unknowns are the entries of
    // `A` in row-major order.
    let mut sys = Matrix::zero(3 * nn, nn);
    let mut rhs = vec![Rat::zero(); 3 * nn];
    for (t, x) in ops.iter().enumerate() {
        for a in 0..n {
            for b in 0..n {
                let row = t * nn + a * n + b;
                for s in 0..n {
                    let left = a * n + s;
                    sys.set(row, left, sys.get(row, left) + x.get(s, b));
                    let right = s * n + b;
                    sys.set(row, right, sys.get(row, right) + x.get(a, s));
                }
                rhs[row] = rhs_mats[t].get(a, b).clone();
            }
        }
    }

    let solved = sys.solve_affine(&rhs);
    let (solvable, particular, kernel) = match solved {
        Some((point, kernel)) => (true, Some(unflatten(n, &point)), kernel),
        None => (false, None, sys.nullspace_basis()),
    };
    let homogeneous: Vec<Matrix<Rat>> = kernel.iter().map(|v| unflatten(n, v)).collect();

    // Exactness guard: anything we hand back must solve its own equations.
    if let Some(a) = &particular {
        for (t, x) in ops.iter().enumerate() {
            let lhs = a.mul(x).add(&x.mul(a));
            assert_eq!(lhs, rhs_mats[t], "particular solution fails its equations");
        }
    }
    for a in &homogeneous {
        for x in &ops {
            let lhs = a.mul(x).add(&x.mul(a));
            assert_eq!(lhs, Matrix::zero(n, n), "kernel element fails its equations");
        }
    }

    Ok(RepSolution {
        solvable,
        particular,
        homogeneous,
    })
}

/// The unique compatible action of the derivation on the three-dimensional
/// irreducible module, written directly in the tuple's coordinates.
pub fn rho_d_closed_form(d: &GenDer5<Rat>) -> Matrix<Rat> {
    let [zeta, eta, sigma, lambda, mu] = d.slots();
    Matrix::from_rows(vec![
        vec![-zeta, -&Rat::int(2) * sigma, -lambda],
        vec![-eta, Rat::int(2) * zeta, sigma.clone()],
        vec![-mu, Rat::int(2) * eta, -zeta],
    ])
}

/// Basis of the linear maps `T` from the weight-`m` module to the
/// weight-`m2` module that anticommute with the sl2 action:
/// `r(x) T = -T r(x)` for `x` in `{H, E, F}`.
pub fn anti_intertwiners(m: i64, m2: i64) -> Result<Vec<Matrix<Rat>>, RepError> {
    let source = irreducible_sl2_module(m)?;
    let target = irreducible_sl2_module(m2)?;
    let p = source.dim();
    let q = target.dim();
    let pairs = [
        (target.rho_h(), source.rho_h()),
        (target.rho_e(), source.rho_e()),
        (target.rho_f(), source.rho_f()),
    ];
    // Unknown `T` is q x p, row-major; rows index (operator, entry).
    let mut sys = Matrix::zero(3 * q * p, q * p);
    for (t, (x2, x)) in pairs.iter().enumerate() {
        for a in 0..q {
            for b in 0..p {
                let row = t * q * p + a * p + b;
                for r in 0..q {
                    let col = r * p + b;
                    sys.set(row, col, sys.get(row, col) + x2.get(a, r));
                }
                for s in 0..p {
                    let col = a * p + s;
                    sys.set(row, col, sys.get(row, col) + x.get(s, b));
                }
            }
        }
    }
    Ok(sys
        .nullspace_basis()
        .into_iter()
        .map(|v| {
            assert_eq!(v.len(), q * p);
            Matrix::from_fn(q, p, |i, j| v[i * p + j].clone())
        })
        .collect())
}

// The action of an arbitrary algebra element, by linearity.
fn operator_of(rho: &[Matrix<Rat>], coeffs: &[Rat], n: usize) -> Matrix<Rat> {
    let mut acc = Matrix::zero(n, n);
    for (c, op) in coeffs.iter().zip(rho) {
        if !c.is_zero() {
            acc = acc.add(&op.scale(c));
        }
    }
    acc
}

// Product rule for a twisted representation on one pair of elements:
// r([x, y]) L = r(T x) r(y) - r(T y) r(x).
fn product_rule_holds(
    algebra: &HomLieAlgebra,
    rho: &[Matrix<Rat>],
    l: &Matrix<Rat>,
    x: &[Rat],
    y: &[Rat],
) -> bool {
    let n = l.rows();
    let lhs = operator_of(rho, &algebra.bracket(x, y), n).mul(l);
    let tx = algebra.twist().mul_vec(x);
    let ty = algebra.twist().mul_vec(y);
    let rhs = operator_of(rho, &tx, n)
        .mul(&operator_of(rho, y, n))
        .sub(&operator_of(rho, &ty, n).mul(&operator_of(rho, x, n)));
    lhs == rhs
}

/// Glues a twisted algebra to a compatible module: the result lives on
/// `g + V` with bracket `[x + u, y + v] = [x, y] + r(x)v - r(y)u` and twist
/// `T` on the algebra block, the module twist on `V`. `rho` lists the action
/// of each basis element of `g`; the product rule is validated on every
/// basis pair (plus one spot-checked non-basis pair) before gluing, and the
/// result always passes the twisted Jacobi check.
pub fn double_extension(
    algebra: &HomLieAlgebra,
    spec: &RepSpec,
    rho: &[Matrix<Rat>],
) -> Result<HomLieAlgebra, RepError> {
    require_identity_twist(spec)?;
    let gd = algebra.dim();
    let n = spec.rep().dim();
    if rho.len() != gd {
        return Err(RepError::OperatorCount {
            expected: gd,
            found: rho.len(),
        });
    }
    for (index, op) in rho.iter().enumerate() {
        if op.rows() != n || op.cols() != n {
            return Err(RepError::OperatorShape { index, expected: n });
        }
    }

    // The rule is bilinear, so basis pairs decide it; the extra pair with
    // mixed coefficients guards the assembly itself.
    for i in 0..gd {
        for j in (i + 1)..gd {
            let x = algebra.basis_vector(i);
            let y = algebra.basis_vector(j);
            if !product_rule_holds(algebra, rho, spec.twist(), &x, &y) {
                return Err(RepError::ProductRule {
                    left: algebra.names()[i].clone(),
                    right: algebra.names()[j].clone(),
                });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ab5);
    let x: Vec<Rat> = (0..gd).map(|_| Rat::int(rng.gen_range(-3..=3))).collect();
    let y: Vec<Rat> = (0..gd).map(|_| Rat::int(rng.gen_range(-3..=3))).collect();
    assert!(
        product_rule_holds(algebra, rho, spec.twist(), &x, &y),
        "product rule held on basis pairs but failed on a mixed pair"
    );

    let total = gd + n;
    let mut names: Vec<String> = algebra.names().to_vec();
    names.extend((0..n).map(|a| format!("v{a}")));

    let mut c = vec![vec![vec![Rat::zero(); total]; total]; total];
    for i in 0..gd {
        for j in 0..gd {
            for (k, value) in algebra.constant(i, j).iter().enumerate() {
                c[i][j][k] = value.clone();
            }
        }
    }
    for (i, op) in rho.iter().enumerate() {
        for a in 0..n {
            for b in 0..n {
                // [e_i, f_a] = r(e_i) f_a lands in the module block.
                c[i][gd + a][gd + b] = op.get(b, a).clone();
                c[gd + a][i][gd + b] = -op.get(b, a);
            }
        }
    }

    let mut twist = Matrix::zero(total, total);
    for i in 0..gd {
        for j in 0..gd {
            twist.set(i, j, algebra.twist().get(i, j).clone());
        }
    }
    for a in 0..n {
        for b in 0..n {
            twist.set(gd + a, gd + b, spec.twist().get(a, b).clone());
        }
    }

    let glued = HomLieAlgebra::new(names, c, twist)
        .expect("block assembly always produces a skew table");
    assert!(
        glued.check_homlie_jacobi().is_none(),
        "glued algebra failed the twisted Jacobi identity despite a valid product rule"
    );
    Ok(glued)
}

// Vectors of weight `w` killed by the raising action, inside the whole space.
fn highest_weight_space(rep: &Sl2Rep, w: &Rat) -> SubspaceBasis {
    let n = rep.dim();
    let weights = rep.weights();
    let mut rows: Vec<Vec<Rat>> = (0..n).map(|i| rep.rho_e().row(i).to_vec()).collect();
    for (j, weight) in weights.iter().enumerate() {
        if weight != w {
            let mut selector = vec![Rat::zero(); n];
            selector[j] = Rat::one();
            rows.push(selector);
        }
    }
    SubspaceBasis::from_spanning(n, Matrix::from_rows(rows).nullspace_basis())
}

// Same space intersected with a given subspace, by solving in coordinates
// of the subspace's basis.
fn highest_weight_space_within(
    rep: &Sl2Rep,
    w: &Rat,
    sub: &SubspaceBasis,
) -> SubspaceBasis {
    let n = rep.dim();
    let k = sub.dim();
    if k == 0 {
        return SubspaceBasis::zero(n);
    }
    let basis = Matrix::from_fn(n, k, |i, j| sub.vectors()[j][i].clone());
    let eb = rep.rho_e().mul(&basis);
    let weights = rep.weights();
    let mut rows: Vec<Vec<Rat>> = (0..n).map(|i| eb.row(i).to_vec()).collect();
    for (j, weight) in weights.iter().enumerate() {
        if weight != w {
            rows.push(basis.row(j).to_vec());
        }
    }
    let members = Matrix::from_rows(rows)
        .nullspace_basis()
        .into_iter()
        .map(|coeffs| basis.mul_vec(&coeffs))
        .collect();
    SubspaceBasis::from_spanning(n, members)
}

/// Finds a complement of an invariant subspace that is again invariant
/// under all four operators: the three module actions and the given action
/// of the extending element. The submodule's highest-weight vectors are
/// extended to a full set inside each weight space, the new vectors are
/// swept out with the lowering action, and the resulting complement is
/// verified exactly before being returned.
pub fn find_invariant_complement(
    spec: &RepSpec,
    rho_d: &Matrix<Rat>,
    submodule: &SubspaceBasis,
) -> Result<SubspaceBasis, RepError> {
    require_identity_twist(spec)?;
    let rep = spec.rep();
    let n = rep.dim();
    if rho_d.rows() != n || rho_d.cols() != n {
        return Err(RepError::OperatorShape {
            index: 3,
            expected: n,
        });
    }
    if submodule.ambient() != n {
        return Err(RepError::AmbientMismatch {
            expected: n,
            found: submodule.ambient(),
        });
    }
    let ops: [(&'static str, &Matrix<Rat>); 4] = [
        ("H", rep.rho_h()),
        ("E", rep.rho_e()),
        ("F", rep.rho_f()),
        ("D", rho_d),
    ];
    for (operator, op) in &ops {
        for v in submodule.vectors() {
            if !submodule.contains(&op.mul_vec(v)) {
                return Err(RepError::NotInvariant { operator });
            }
        }
    }

    // Distinct weights, highest first; only non-negative ones can carry
    // highest-weight vectors, but scanning all of them is harmless.
    let mut weights = rep.weights();
    weights.sort_by(|a, b| b.partial_cmp(a).unwrap());
    weights.dedup();

    let mut generated: Vec<Vec<Rat>> = Vec::new();
    for w in &weights {
        let inside_all = highest_weight_space(rep, w);
        if inside_all.dim() == 0 {
            continue;
        }
        let inside_sub = highest_weight_space_within(rep, w, submodule);
        for top in inside_sub.extension_from(inside_all.vectors()) {
            // Each new highest vector sweeps out one irreducible summand.
            let mut v = top;
            let mut steps = 0;
            while v.iter().any(|x| !x.is_zero()) {
                generated.push(v.clone());
                v = rep.rho_f().mul_vec(&v);
                steps += 1;
                assert!(steps <= n, "lowering chain failed to terminate");
            }
        }
    }
    let complement = SubspaceBasis::from_spanning(n, generated);

    assert_eq!(
        complement.dim() + submodule.dim(),
        n,
        "complement has the wrong dimension"
    );
    assert_eq!(
        submodule.sum(&complement).dim(),
        n,
        "complement is not transverse to the submodule"
    );
    for (operator, op) in &ops {
        for v in complement.vectors() {
            assert!(
                complement.contains(&op.mul_vec(v)),
                "derived complement is not stable under the {operator} action"
            );
        }
    }
    Ok(complement)
}
