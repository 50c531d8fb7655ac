//! Orbit analysis of twist-compatible derivations of sl2.
//!
//! The traceless maps satisfying `-D([x,y]) = [D(x),y] + [x,D(y)]` on sl2
//! form a 5-dimensional space, coordinatized here as tuples
//! `(zeta, eta, sigma, lambda, mu)` via the matrix
//!
//! ```text
//! | 2*zeta    eta     sigma  |
//! | 2*sigma  -zeta    lambda |
//! | 2*eta     mu     -zeta   |
//! ```
//!
//! Automorphisms of sl2 act by conjugation, and the induced action has
//! closed polynomial component formulas (the K, L, J maps). This module
//! implements both the closed forms and the raw matrix conjugation, a
//! staged reduction to the normal form with `zeta = mu = 0`, exact orbit
//! invariants (rank and characteristic polynomial), and an equivalence
//! test for pairs of derivations.
//!
//! Everything is generic over the scalar: exact rationals for the main
//! path, complex floating point when the reduction needs a root that does
//! not exist over the rationals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cnum::{CNum, EPS};
use crate::matrix::Matrix;
use crate::rat::Rat;
use crate::roots::{self, eval_poly_rat};

#[derive(Debug, Error, PartialEq)]
pub enum OrbitError {
    #[error("the zero map has no orbit data")]
    ZeroDerivation,
    #[error("automorphism parameter must be nonzero")]
    ZeroParameter,
    #[error("orbit reduction exceeded its move budget")]
    ReductionStalled,
}

/// Scalars the orbit machinery can run over: exact rationals or complex
/// floating point. `is_zero_scalar` is an exact test for `Rat` and a
/// tolerance test for `CNum`; `close_at` compares at a given magnitude
/// scale so large intermediate values do not fail spuriously.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn from_i64(n: i64) -> Self;
    fn is_zero_scalar(&self) -> bool;
    fn magnitude(&self) -> f64;
    fn close_at(&self, other: &Self, scale: f64) -> bool;
    /// Zero test relative to the magnitude of the data that produced the
    /// value; exact for `Rat`.
    fn is_zero_at(&self, scale: f64) -> bool;
    /// Representation-exact zero: for `CNum` this is bitwise 0.0, never a
    /// tolerance. The reduction relies on it to separate constructed zeros
    /// (killed or preserved slots) from live data of any magnitude.
    fn is_exact_zero(&self) -> bool;
}

impl Scalar for Rat {
    fn from_i64(n: i64) -> Self {
        Rat::int(n)
    }

    fn is_zero_scalar(&self) -> bool {
        self.is_zero()
    }

    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }

    fn close_at(&self, other: &Self, _scale: f64) -> bool {
        self == other
    }

    fn is_zero_at(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for CNum {
    fn from_i64(n: i64) -> Self {
        CNum::from_f64(n as f64)
    }

    fn is_zero_scalar(&self) -> bool {
        self.approx_zero()
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn close_at(&self, other: &Self, scale: f64) -> bool {
        (*self - *other).abs() <= EPS * (1.0 + scale)
    }

    fn is_zero_at(&self, scale: f64) -> bool {
        self.abs() <= EPS * (1.0 + scale)
    }

    fn is_exact_zero(&self) -> bool {
        self.re() == 0.0 && self.im() == 0.0
    }
}

/// A point of the 5-dimensional derivation space in tuple coordinates.
#[derive(Clone, PartialEq)]
pub struct GenDer5<S> {
    pub zeta: S,
    pub eta: S,
    pub sigma: S,
    pub lambda: S,
    pub mu: S,
}

impl<S: Scalar> GenDer5<S> {
    pub fn new(zeta: S, eta: S, sigma: S, lambda: S, mu: S) -> Self {
        GenDer5 { zeta, eta, sigma, lambda, mu }
    }

    pub fn slots(&self) -> [&S; 5] {
        [&self.zeta, &self.eta, &self.sigma, &self.lambda, &self.mu]
    }

    pub fn is_zero(&self) -> bool {
        self.slots().iter().all(|s| s.is_zero_scalar())
    }

    pub fn scale(&self, xi: &S) -> Self {
        self.map(|s| s.clone() * xi.clone())
    }

    pub fn map<T>(&self, mut f: impl FnMut(&S) -> T) -> GenDer5<T> {
        GenDer5 {
            zeta: f(&self.zeta),
            eta: f(&self.eta),
            sigma: f(&self.sigma),
            lambda: f(&self.lambda),
            mu: f(&self.mu),
        }
    }

    /// The 3x3 matrix of the derivation in the (H, E, F) basis.
    pub fn to_matrix(&self) -> Matrix<S> {
        let two = || S::from_i64(2);
        Matrix::from_rows(vec![
            vec![two() * self.zeta.clone(), self.eta.clone(), self.sigma.clone()],
            vec![two() * self.sigma.clone(), -self.zeta.clone(), self.lambda.clone()],
            vec![two() * self.eta.clone(), self.mu.clone(), -self.zeta.clone()],
        ])
    }

    /// Reads a tuple back from a matrix, verifying the membership pattern
    /// (entries (1,0) = 2*(0,2), (2,0) = 2*(0,1), and the diagonal shape).
    pub fn from_matrix(m: &Matrix<S>) -> Option<Self> {
        assert_eq!((m.rows(), m.cols()), (3, 3));
        let scale = m
            .flat()
            .iter()
            .map(Scalar::magnitude)
            .fold(0.0, f64::max);
        let two = S::from_i64(2);
        let d = GenDer5 {
            zeta: -m.get(1, 1).clone(),
            eta: m.get(0, 1).clone(),
            sigma: m.get(0, 2).clone(),
            lambda: m.get(1, 2).clone(),
            mu: m.get(2, 1).clone(),
        };
        let pattern = [
            (m.get(0, 0).clone(), two.clone() * d.zeta.clone()),
            (m.get(1, 0).clone(), two.clone() * d.sigma.clone()),
            (m.get(2, 0).clone(), two * d.eta.clone()),
            (m.get(2, 2).clone(), -d.zeta.clone()),
        ];
        if pattern.iter().all(|(got, want)| got.close_at(want, scale)) {
            Some(d)
        } else {
            None
        }
    }
}

impl GenDer5<Rat> {
    pub fn of_ints(zeta: i64, eta: i64, sigma: i64, lambda: i64, mu: i64) -> Self {
        GenDer5::new(
            Rat::int(zeta),
            Rat::int(eta),
            Rat::int(sigma),
            Rat::int(lambda),
            Rat::int(mu),
        )
    }

    pub fn to_cnum(&self) -> GenDer5<CNum> {
        self.map(CNum::from_rat)
    }
}

impl<S: fmt::Display> fmt::Display for GenDer5<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {}, {})",
            self.zeta, self.eta, self.sigma, self.lambda, self.mu
        )
    }
}

impl<S: fmt::Display> fmt::Debug for GenDer5<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GenDer5<Rat> {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = text.split(',').collect();
        if parts.len() != 5 {
            return Err(format!("expected five comma-separated rationals, got {text:?}"));
        }
        let parse = |s: &str| Rat::parse(s.trim()).map_err(|e| format!("bad rational {s:?}: {e}"));
        Ok(GenDer5::new(
            parse(parts[0])?,
            parse(parts[1])?,
            parse(parts[2])?,
            parse(parts[3])?,
            parse(parts[4])?,
        ))
    }
}

impl Serialize for GenDer5<Rat> {
    fn serialize<Se: Serializer>(&self, serializer: Se) -> Result<Se::Ok, Se::Error> {
        serializer.collect_seq(self.slots().iter().map(|r| r.to_string()))
    }
}

impl<'de> Deserialize<'de> for GenDer5<Rat> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = <[String; 5]>::deserialize(deserializer)?;
        let mut slots = Vec::with_capacity(5);
        for p in &parts {
            slots.push(Rat::parse(p).map_err(|e| D::Error::custom(format!("bad rational {p:?}: {e}")))?);
        }
        Ok(GenDer5::new(
            slots[0].clone(),
            slots[1].clone(),
            slots[2].clone(),
            slots[3].clone(),
            slots[4].clone(),
        ))
    }
}

/// One generator of the automorphism action, by parameter. `G` and `H` are
/// the one-parameter unipotent families (tuple actions `K_a`, `L_a`), `F`
/// the two-parameter family (tuple action `J_{a,c}`), `Diag` the torus
/// `H -> H, E -> nu E, F -> nu^{-1} F`.
#[derive(Clone, PartialEq)]
pub enum AutGen<S> {
    G { a: S },
    H { a: S },
    F { a: S, c: S },
    Diag { nu: S },
}

impl<S: Scalar> AutGen<S> {
    fn validate(&self) -> Result<(), OrbitError> {
        let bad = match self {
            AutGen::G { a } | AutGen::H { a } => a.is_zero_scalar(),
            AutGen::F { a, c } => a.is_zero_scalar() || c.is_zero_scalar(),
            AutGen::Diag { nu } => nu.is_zero_scalar(),
        };
        if bad {
            Err(OrbitError::ZeroParameter)
        } else {
            Ok(())
        }
    }

    /// The inverse generator: each family is closed under inversion.
    pub fn inverse(&self) -> AutGen<S> {
        match self {
            AutGen::G { a } => AutGen::G { a: -a.clone() },
            AutGen::H { a } => AutGen::H { a: -a.clone() },
            AutGen::F { a, c } => AutGen::F { a: -a.clone(), c: c.clone() },
            AutGen::Diag { nu } => AutGen::Diag { nu: S::one() / nu.clone() },
        }
    }

    pub fn map<T>(&self, mut f: impl FnMut(&S) -> T) -> AutGen<T> {
        match self {
            AutGen::G { a } => AutGen::G { a: f(a) },
            AutGen::H { a } => AutGen::H { a: f(a) },
            AutGen::F { a, c } => AutGen::F { a: f(a), c: f(c) },
            AutGen::Diag { nu } => AutGen::Diag { nu: f(nu) },
        }
    }
}

impl<S: fmt::Display> fmt::Debug for AutGen<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutGen::G { a } => write!(f, "G({a})"),
            AutGen::H { a } => write!(f, "H({a})"),
            AutGen::F { a, c } => write!(f, "F({a}, {c})"),
            AutGen::Diag { nu } => write!(f, "Diag({nu})"),
        }
    }
}

/// The 3x3 matrix of a generator in the (H, E, F) basis.
pub fn aut_matrix<S: Scalar>(gen: &AutGen<S>) -> Result<Matrix<S>, OrbitError> {
    gen.validate()?;
    let i = |n: i64| S::from_i64(n);
    let m = match gen {
        AutGen::G { a } => {
            let a2 = a.clone() * a.clone();
            Matrix::from_rows(vec![
                vec![i(1), i(0), a.clone()],
                vec![i(-2) * a.clone(), i(1), -a2],
                vec![i(0), i(0), i(1)],
            ])
        }
        AutGen::H { a } => {
            let a2 = a.clone() * a.clone();
            Matrix::from_rows(vec![
                vec![i(1), -a.clone(), i(0)],
                vec![i(0), i(1), i(0)],
                vec![i(2) * a.clone(), -a2, i(1)],
            ])
        }
        AutGen::F { a, c } => {
            let a2 = a.clone() * a.clone();
            let ci = S::one() / c.clone();
            let up = |k: i64| a.clone() + i(k); // a + k
            Matrix::from_rows(vec![
                vec![
                    i(1) - i(2) * a2.clone(),
                    (a.clone() + a2.clone()) * ci.clone(),
                    (a.clone() - a2.clone()) * c.clone(),
                ],
                vec![
                    i(-2) * (a.clone() + a2.clone()) * c.clone(),
                    up(1) * up(1),
                    -a2.clone() * c.clone() * c.clone(),
                ],
                vec![
                    (i(-2) * a.clone() + i(2) * a2.clone()) * ci.clone(),
                    -a2 * ci.clone() * ci,
                    (i(1) - a.clone()) * (i(1) - a.clone()),
                ],
            ])
        }
        AutGen::Diag { nu } => Matrix::from_rows(vec![
            vec![i(1), i(0), i(0)],
            vec![i(0), nu.clone(), i(0)],
            vec![i(0), i(0), S::one() / nu.clone()],
        ]),
    };
    Ok(m)
}

/// Closed-form component action of a single generator on a tuple.
///
/// These are the polynomial maps usually written `K_a`, `L_a`, `J_{a,c}`;
/// they agree with [`act_conj`] identically (the conjugation is the
/// definition, the closed form an evaluation of it).
pub fn act_closed<S: Scalar>(gen: &AutGen<S>, d: &GenDer5<S>) -> Result<GenDer5<S>, OrbitError> {
    gen.validate()?;
    let i = |n: i64| S::from_i64(n);
    let GenDer5 { zeta: z, eta: e, sigma: s, lambda: l, mu: m } = d.clone();
    let out = match gen {
        AutGen::G { a } => {
            let a2 = a.clone() * a.clone();
            let a3 = a2.clone() * a.clone();
            let a4 = a2.clone() * a2.clone();
            GenDer5 {
                zeta: z.clone() + i(2) * a.clone() * e.clone() + a2.clone() * m.clone(),
                eta: e.clone() + a.clone() * m.clone(),
                sigma: i(-3) * a.clone() * z.clone() - i(3) * a2.clone() * e.clone() + s.clone()
                    - a3.clone() * m.clone(),
                lambda: i(6) * a2 * z + i(4) * a3 * e - i(4) * a.clone() * s + l + a4 * m.clone(),
                mu: m,
            }
        }
        AutGen::H { a } => {
            let a2 = a.clone() * a.clone();
            let a3 = a2.clone() * a.clone();
            let a4 = a2.clone() * a2.clone();
            GenDer5 {
                zeta: z.clone() - i(2) * a.clone() * s.clone() + a2.clone() * l.clone(),
                eta: i(3) * a.clone() * z.clone() + e.clone() - i(3) * a2.clone() * s.clone()
                    + a3.clone() * l.clone(),
                sigma: s.clone() - a.clone() * l.clone(),
                lambda: l.clone(),
                mu: i(6) * a2 * z + i(4) * a.clone() * e - i(4) * a3 * s + a4 * l + m,
            }
        }
        AutGen::F { a, c } => {
            let a2 = a.clone() * a.clone();
            let a3 = a2.clone() * a.clone();
            let a4 = a2.clone() * a2.clone();
            let c2 = c.clone() * c.clone();
            let c3 = c2.clone() * c.clone();
            let c4 = c2.clone() * c2.clone();
            let ci = S::one() / c.clone();
            let ci2 = ci.clone() * ci.clone();
            let ci3 = ci2.clone() * ci.clone();
            let ci4 = ci2.clone() * ci2.clone();
            let am1 = a.clone() - i(1); // a - 1
            let ap1 = a.clone() + i(1); // a + 1
            let am1_2 = am1.clone() * am1.clone();
            let am1_3 = am1_2.clone() * am1.clone();
            let am1_4 = am1_2.clone() * am1_2.clone();
            let ap1_2 = ap1.clone() * ap1.clone();
            let ap1_3 = ap1_2.clone() * ap1.clone();
            let ap1_4 = ap1_2.clone() * ap1_2.clone();
            let q = i(2) * a2.clone() - i(1); // 2a^2 - 1
            let r = i(4) * a2.clone() - i(3); // 4a^2 - 3
            let w = (i(2) * a.clone() - i(1)) * (i(2) * a.clone() + i(1)); // 4a^2 - 1
            GenDer5 {
                zeta: (i(6) * a4.clone() - i(6) * a2.clone() + i(1)) * z.clone()
                    + i(2) * a.clone() * c.clone() * am1.clone() * q.clone() * e.clone()
                    - i(2) * a.clone() * ap1.clone() * q.clone() * ci.clone() * s.clone()
                    + a2.clone() * ap1_2.clone() * ci2.clone() * l.clone()
                    + a2.clone() * c2.clone() * am1_2.clone() * m.clone(),
                eta: i(-3) * a.clone() * am1.clone() * q.clone() * ci.clone() * z.clone()
                    - am1_2.clone() * w.clone() * e.clone()
                    + a2.clone() * r.clone() * ci2.clone() * s.clone()
                    - a3.clone() * ap1.clone() * ci3.clone() * l.clone()
                    - a.clone() * c.clone() * am1_3.clone() * m.clone(),
                sigma: i(3) * a.clone() * c.clone() * ap1.clone() * q * z.clone()
                    + a2.clone() * c2.clone() * r * e.clone()
                    - ap1_2.clone() * w * s.clone()
                    + a.clone() * ap1_3.clone() * ci.clone() * l.clone()
                    + a3.clone() * c3.clone() * am1.clone() * m.clone(),
                lambda: i(6) * a2.clone() * c2 * ap1_2 * z.clone()
                    + i(4) * a3.clone() * c3 * ap1.clone() * e.clone()
                    - i(4) * a.clone() * c.clone() * ap1_3 * s.clone()
                    + ap1_4 * l.clone()
                    + a4.clone() * c4 * m.clone(),
                mu: i(6) * a2.clone() * am1_2 * ci2 * z
                    + i(4) * a.clone() * am1_3 * ci.clone() * e
                    - i(4) * a3 * am1 * ci3 * s
                    + a4 * ci4 * l
                    + am1_4 * m,
            }
        }
        AutGen::Diag { nu } => {
            let ni = S::one() / nu.clone();
            GenDer5 {
                zeta: z,
                eta: ni.clone() * e,
                sigma: nu.clone() * s,
                lambda: nu.clone() * nu.clone() * l,
                mu: ni.clone() * ni * m,
            }
        }
    };
    Ok(out)
}

/// Action of a generator by raw matrix conjugation `M D M^{-1}`.
///
/// This is the defining form of the action and the authority whenever the
/// closed formulas are in question. The conjugate always stays in the
/// 5-dimensional space, so a failed tuple readback indicates a bug.
pub fn act_conj<S: Scalar>(gen: &AutGen<S>, d: &GenDer5<S>) -> Result<GenDer5<S>, OrbitError> {
    let m = aut_matrix(gen)?;
    let m_inv = aut_matrix(&gen.inverse())?;
    let conj = m.mul(&d.to_matrix()).mul(&m_inv);
    Ok(GenDer5::from_matrix(&conj).expect("conjugate left the derivation space"))
}

/// A recorded word in the generators together with a global scalar:
/// `apply(d) = xi * (g_k ... (g_1 d g_1^{-1}) ... g_k^{-1})` with the
/// generators applied left to right.
#[derive(Clone, PartialEq)]
pub struct GroupElement<S> {
    pub scale: S,
    pub gens: Vec<AutGen<S>>,
}

impl<S: fmt::Display> fmt::Debug for GroupElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * {:?}", self.scale, self.gens)
    }
}

impl<S: Scalar> GroupElement<S> {
    pub fn identity() -> Self {
        GroupElement { scale: S::one(), gens: Vec::new() }
    }

    pub fn from_gens(gens: Vec<AutGen<S>>) -> Self {
        GroupElement { scale: S::one(), gens }
    }

    /// Applies the element through the closed component formulas.
    pub fn apply_closed(&self, d: &GenDer5<S>) -> Result<GenDer5<S>, OrbitError> {
        let mut t = d.clone();
        for gen in &self.gens {
            t = act_closed(gen, &t)?;
        }
        Ok(t.scale(&self.scale))
    }

    /// Applies the element through matrix conjugation.
    pub fn apply_conj(&self, d: &GenDer5<S>) -> Result<GenDer5<S>, OrbitError> {
        let mut t = d.clone();
        for gen in &self.gens {
            t = act_conj(gen, &t)?;
        }
        Ok(t.scale(&self.scale))
    }
}

impl GroupElement<Rat> {
    pub fn to_cnum(&self) -> GroupElement<CNum> {
        GroupElement {
            scale: CNum::from_rat(&self.scale),
            gens: self.gens.iter().map(|g| g.map(CNum::from_rat)).collect(),
        }
    }
}

/// Exact class data of a nonzero derivation: rank plus the two free
/// coefficients of the characteristic polynomial x^3 + c1 x + c0, reported
/// through the normal-form parameters sigma = -c1/4 and lambda = -c0/2.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum ClassLabel {
    Rank1,
    Rank2A,
    Rank2B { sigma: Rat },
    Rank3A { lambda: Rat },
    Rank3B { sigma: Rat, lambda: Rat },
}

impl ClassLabel {
    pub fn kind(&self) -> &'static str {
        match self {
            ClassLabel::Rank1 => "RANK1",
            ClassLabel::Rank2A => "RANK2_A",
            ClassLabel::Rank2B { .. } => "RANK2_B",
            ClassLabel::Rank3A { .. } => "RANK3_A",
            ClassLabel::Rank3B { .. } => "RANK3_B",
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            ClassLabel::Rank1 => 1,
            ClassLabel::Rank2A | ClassLabel::Rank2B { .. } => 2,
            ClassLabel::Rank3A { .. } | ClassLabel::Rank3B { .. } => 3,
        }
    }
}

/// The coefficients (c1, c0) of the characteristic polynomial
/// x^3 + c1 x + c0 of the tuple matrix (the x^2 term vanishes: traceless).
pub fn charpoly_invariants(d: &GenDer5<Rat>) -> (Rat, Rat) {
    let cp = d.to_matrix().charpoly();
    debug_assert!(cp[1].is_zero(), "tuple matrices are traceless");
    (cp[2].clone(), cp[3].clone())
}

/// Classifies by exact invariants of the input itself. Conjugation
/// preserves rank and characteristic polynomial, so the label equals the
/// label of any reduced form without running the reduction.
pub fn classify(d: &GenDer5<Rat>) -> Result<ClassLabel, OrbitError> {
    if d.is_zero() {
        return Err(OrbitError::ZeroDerivation);
    }
    let m = d.to_matrix();
    let (c1, c0) = charpoly_invariants(d);
    let sigma = -&c1 / Rat::int(4);
    let lambda = -&c0 / Rat::int(2);
    Ok(match m.rank() {
        1 => ClassLabel::Rank1,
        2 => {
            debug_assert!(c0.is_zero(), "rank 2 forces zero determinant");
            if c1.is_zero() {
                ClassLabel::Rank2A
            } else {
                ClassLabel::Rank2B { sigma }
            }
        }
        3 => {
            if c1.is_zero() {
                ClassLabel::Rank3A { lambda }
            } else {
                ClassLabel::Rank3B { sigma, lambda }
            }
        }
        r => unreachable!("nonzero 3x3 matrix with rank {r}"),
    })
}

/// True when the matrix of `d` is semisimple with a repeated eigenvalue
/// (eigenvalue pattern 2t, -t, -t with a full eigenspace). These tuples
/// form a single orbit family that admits no zeta = mu = 0 representative:
/// every rank-3 normal-form matrix with a repeated eigenvalue has a
/// deficient eigenspace, and conjugation preserves both properties.
pub fn semisimple_double_eigenvalue(d: &GenDer5<Rat>) -> bool {
    let (c1, c0) = charpoly_invariants(d);
    if c1.is_zero() {
        return false;
    }
    let disc = Rat::int(-4) * c1.pow(3) + Rat::int(-27) * c0.pow(2);
    if !disc.is_zero() {
        return false;
    }
    // Double root of x^3 + c1 x + c0.
    let r = Rat::int(-3) * &c0 / (Rat::int(2) * &c1);
    let m = d.to_matrix();
    let id = Matrix::<Rat>::identity(3);
    let first = m.sub(&id.scale(&r));
    let second = m.add(&id.scale(&(Rat::int(2) * &r)));
    first.mul(&second).flat().iter().all(Rat::is_zero)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    Exact,
    Approximate,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Approximate => "approximate",
        }
    }
}

/// Result of the staged reduction: the reached representative, the group
/// element that carries the input onto it, the tuple after every step,
/// and the exact class label.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub label: ClassLabel,
    pub route: Route,
}

/// The exact or approximate reduction record. `trace[i]` is the tuple
/// after applying `element.gens[i]`, so the last entry (when any step was
/// taken) equals `canonical`.
#[derive(Clone, Debug)]
pub enum Route {
    Exact {
        canonical: GenDer5<Rat>,
        element: GroupElement<Rat>,
        trace: Vec<GenDer5<Rat>>,
    },
    Approximate {
        canonical: GenDer5<CNum>,
        element: GroupElement<CNum>,
        trace: Vec<GenDer5<CNum>>,
    },
}

impl CanonicalForm {
    pub fn mode(&self) -> Mode {
        match self.route {
            Route::Exact { .. } => Mode::Exact,
            Route::Approximate { .. } => Mode::Approximate,
        }
    }
}

enum ReduceFail {
    /// A required root is irrational; retry over CNum.
    NeedsApprox,
    Stalled,
}

/// Scalar-specific root steps of the reduction. Over the rationals a
/// missing root is the signal to switch to the approximate path; over
/// CNum roots always exist.
trait ReduceScalar: Scalar {
    /// A nonzero root of the quartic with the given descending
    /// coefficients (the constant term is nonzero by construction).
    fn quartic_nonzero_root(coeffs: &[Self; 5]) -> Option<Self>;

    /// A root `a` of p3 = l x^2 - 4 s x + 6 z with p2(a) != 0 where
    /// p2 = l x^2 - 3 s x + 3 z; such a root exists when 2s^2 - 3zl != 0.
    fn p3_root_with_p2_nonzero(z: &Self, s: &Self, l: &Self) -> Option<Self>;
}

impl ReduceScalar for Rat {
    fn quartic_nonzero_root(coeffs: &[Rat; 5]) -> Option<Rat> {
        roots::rational_root_nonzero(coeffs)
    }

    fn p3_root_with_p2_nonzero(z: &Rat, s: &Rat, l: &Rat) -> Option<Rat> {
        // p3 = l x^2 - 4 s x + 6 z, discriminant 16 s^2 - 24 z l.
        let disc = Rat::int(16) * s.pow(2) - Rat::int(24) * z * l;
        let root = disc.sqrt_exact()?;
        let two_l = Rat::int(2) * l;
        let mut candidates = [
            (Rat::int(4) * s - &root) / &two_l,
            (Rat::int(4) * s + &root) / &two_l,
        ];
        candidates.sort();
        let p2 = [l.clone(), Rat::int(-3) * s, Rat::int(3) * z];
        candidates
            .into_iter()
            .find(|a| !eval_poly_rat(&p2, a).is_zero())
    }
}

impl ReduceScalar for CNum {
    fn quartic_nonzero_root(coeffs: &[CNum; 5]) -> Option<CNum> {
        let all = roots::poly_roots(&coeffs[..]).ok()?;
        // Any root works mathematically (the constant term is a nonzero
        // rational of the input), but one negligible against its siblings
        // is the worst conditioned of the four; prefer the others.
        let top = all.iter().map(|r| r.abs()).fold(0.0, f64::max);
        all.iter()
            .copied()
            .find(|r| !r.is_zero_at(top))
            .or_else(|| {
                all.into_iter()
                    .max_by(|a, b| a.abs().total_cmp(&b.abs()))
            })
    }

    fn p3_root_with_p2_nonzero(z: &CNum, s: &CNum, l: &CNum) -> Option<CNum> {
        let four = CNum::from_f64(4.0);
        let p3 = [*l, -(four * *s), CNum::from_f64(6.0) * *z];
        let all = roots::poly_roots(&p3).ok()?;
        let p2 = |a: CNum| *l * a * a - CNum::from_f64(3.0) * *s * a + CNum::from_f64(3.0) * *z;
        let p2_scale = |a: CNum| {
            (*l * a * a).abs()
                + (CNum::from_f64(3.0) * *s * a).abs()
                + (CNum::from_f64(3.0) * *z).abs()
        };
        all.iter()
            .copied()
            .find(|a| !p2(*a).is_zero_at(p2_scale(*a)))
            .or_else(|| {
                all.into_iter()
                    .max_by(|a, b| p2(*a).abs().total_cmp(&p2(*b).abs()))
            })
    }
}

/// One pass of the staged reduction. Each iteration applies a single
/// generator through the closed forms; the stages are:
///
/// 1. mu != 0: kill it with `L_a` at a root of the quartic
///    `l x^4 - 4 s x^3 + 6 z x^2 + 4 e x + m` (or one `J(1,1)` when only
///    mu is nonzero).
/// 2. zeta != 0, eta != 0: one `K` zeroes zeta.
/// 3. zeta != 0, eta = 0: when 2 sigma^2 = 3 zeta lambda the tuple is a
///    conjugate of the diagonal pattern (zeta, 0, 0, 0, 0), which is the
///    terminal representative for its orbit (see
///    [`semisimple_double_eigenvalue`]); otherwise a `K` scan plus an `L`
///    at a root of p3 re-creates a nonzero eta and stage 2 finishes.
/// 4. zeta = mu = 0: normalization moves (kill lambda in the eta = 0
///    rank-2 shape, fold the eta-only shape onto the sigma axis, then a
///    `Diag` scaling pins eta = 1, or sigma = 1 when eta = 0).
fn reduce_loop<S: ReduceScalar>(
    start: GenDer5<S>,
) -> Result<(GenDer5<S>, Vec<AutGen<S>>, Vec<GenDer5<S>>), ReduceFail> {
    let one = S::one;
    let zero = S::zero;
    let i = S::from_i64;
    let mut t = start;
    let mut gens: Vec<AutGen<S>> = Vec::new();
    let mut trace: Vec<GenDer5<S>> = Vec::new();
    // Slots a move zeroes in exact arithmetic, in (zeta, eta, sigma,
    // lambda, mu) order. Forcing them after the move keeps float residue
    // from re-triggering the stage that just cleared them; untargeted
    // slots keep full precision, since mid-trace magnitudes spread far
    // enough that any blanket rounding destroys live data.
    const KEEP: [bool; 5] = [false; 5];
    const KILL_MU: [bool; 5] = [false, false, false, false, true];
    const KILL_ZETA: [bool; 5] = [true, false, false, false, false];
    const KILL_SIGMA_LAMBDA: [bool; 5] = [false, false, true, true, false];
    const KILL_LAMBDA: [bool; 5] = [false, false, false, true, false];
    const KILL_OFF_LAMBDA: [bool; 5] = [true, true, true, false, true];
    const KILL_OFF_SIGMA_LAMBDA: [bool; 5] = [true, true, false, false, true];
    for _ in 0..64 {
        // Branch tests are representation-exact: every honest zero in the
        // loop is a constructed one (a killed slot, a slot the move
        // preserves at zero, or a zero of the rational input), so bitwise
        // tests never misroute. Any tolerance here would sooner or later
        // swallow a live slot, since true slot values legitimately sit many
        // orders of magnitude below their neighbors mid-trace.
        let zeta0 = t.zeta.is_exact_zero();
        let eta0 = t.eta.is_exact_zero();
        let sigma0 = t.sigma.is_exact_zero();
        let lambda0 = t.lambda.is_exact_zero();
        let (mv, kills) = if !t.mu.is_exact_zero() {
            if zeta0 && eta0 && sigma0 && lambda0 {
                // (0, 0, 0, 0, mu) lands on (0, 0, 0, mu, 0).
                (AutGen::F { a: one(), c: one() }, KILL_OFF_LAMBDA)
            } else {
                let coeffs = [
                    t.lambda.clone(),
                    i(-4) * t.sigma.clone(),
                    i(6) * t.zeta.clone(),
                    i(4) * t.eta.clone(),
                    t.mu.clone(),
                ];
                let a = S::quartic_nonzero_root(&coeffs).ok_or(ReduceFail::NeedsApprox)?;
                (AutGen::H { a }, KILL_MU)
            }
        } else if !zeta0 {
            if !eta0 {
                (AutGen::G { a: -t.zeta.clone() / (i(2) * t.eta.clone()) }, KILL_ZETA)
            } else if sigma0 && lambda0 {
                // Diagonal-pattern representative; no further move exists.
                t.eta = zero();
                t.sigma = zero();
                t.lambda = zero();
                t.mu = zero();
                return Ok((t, gens, trace));
            } else {
                let quad_s = i(2) * t.sigma.clone() * t.sigma.clone();
                let quad_zl = i(3) * t.zeta.clone() * t.lambda.clone();
                let delta_scale = quad_s.magnitude() + quad_zl.magnitude();
                let delta = quad_s - quad_zl;
                if delta.is_zero_at(delta_scale) {
                    // Degenerate shape; this shift lands on the diagonal
                    // pattern itself.
                    (AutGen::G { a: t.sigma.clone() / (i(3) * t.zeta.clone()) }, KILL_SIGMA_LAMBDA)
                } else if sigma0 || lambda0 {
                    (AutGen::G { a: scan_parameter(&t) }, KEEP)
                } else {
                    // A root of p3 recreates a nonzero eta while keeping
                    // mu = 0 (the mu image is a^2 p3(a)).
                    let a = S::p3_root_with_p2_nonzero(&t.zeta, &t.sigma, &t.lambda)
                        .ok_or(ReduceFail::NeedsApprox)?;
                    (AutGen::H { a }, KILL_MU)
                }
            }
        } else {
            // zeta = mu = 0: normalization.
            if !eta0 && sigma0 && lambda0 {
                // (0, eta, 0, 0, 0) folds onto (0, 0, eta, 8 eta, 0).
                (AutGen::F { a: one(), c: one() }, KILL_OFF_SIGMA_LAMBDA)
            } else if eta0 && !sigma0 && !lambda0 {
                (AutGen::G { a: t.lambda.clone() / (i(4) * t.sigma.clone()) }, KILL_LAMBDA)
            } else if !eta0 && !t.eta.close_at(&one(), 1.0) {
                (AutGen::Diag { nu: t.eta.clone() }, KEEP)
            } else if eta0 && !sigma0 && !t.sigma.close_at(&one(), 1.0) {
                (AutGen::Diag { nu: one() / t.sigma.clone() }, KEEP)
            } else {
                t.zeta = zero();
                t.mu = zero();
                return Ok((t, gens, trace));
            }
        };
        t = act_closed(&mv, &t).map_err(|_| ReduceFail::Stalled)?;
        let slots = [&mut t.zeta, &mut t.eta, &mut t.sigma, &mut t.lambda, &mut t.mu];
        for (slot, kill) in slots.into_iter().zip(kills) {
            if kill {
                *slot = zero();
            }
        }
        gens.push(mv);
        trace.push(t.clone());
    }
    Err(ReduceFail::Stalled)
}

/// Picks the shift a' making both sigma' = sigma - 3a'zeta and
/// lambda' = 6a'^2 zeta - 4a' sigma + lambda nonzero. The conditions
/// exclude at most three integers, so small positive values suffice; the
/// fallback (relevant only to borderline approximate tests) maximizes the
/// smaller magnitude.
fn scan_parameter<S: Scalar>(t: &GenDer5<S>) -> S {
    let i = S::from_i64;
    let shifted = |ap: i64| {
        let a = i(ap);
        let s = t.sigma.clone() - i(3) * a.clone() * t.zeta.clone();
        let l = i(6) * a.clone() * a.clone() * t.zeta.clone() - i(4) * a * t.sigma.clone()
            + t.lambda.clone();
        (s, l)
    };
    for ap in 1..=8 {
        let (s, l) = shifted(ap);
        if !s.is_exact_zero() && !l.is_exact_zero() {
            return i(ap);
        }
    }
    let best = (1..=8)
        .max_by(|x, y| {
            let score = |ap: i64| {
                let (s, l) = shifted(ap);
                s.magnitude().min(l.magnitude())
            };
            score(*x).total_cmp(&score(*y))
        })
        .expect("nonempty scan range");
    i(best)
}

/// Staged orbit reduction. The representative has zeta = mu = 0 for every
/// orbit except the semisimple repeated-eigenvalue family, whose orbit
/// contains no such point; there the representative is the diagonal
/// pattern (zeta, 0, 0, 0, 0). Exact steps over the rationals whenever the
/// required roots are rational; otherwise the whole trace reruns over CNum
/// and the result is tagged approximate. The label always comes from exact
/// invariants of the input.
///
/// Conjugation moves act on the lambda-only axis by squares, so a
/// representative (0, 0, 0, lambda, 0) keeps its lambda rather than pinning
/// it to 1; the equivalence tests still see the whole axis as one class,
/// since scalar multiples close the square-class gap.
pub fn canonical_form(d: &GenDer5<Rat>) -> Result<CanonicalForm, OrbitError> {
    if d.is_zero() {
        return Err(OrbitError::ZeroDerivation);
    }
    let label = classify(d)?;
    match reduce_loop::<Rat>(d.clone()) {
        Ok((canonical, gens, trace)) => Ok(CanonicalForm {
            label,
            route: Route::Exact { canonical, element: GroupElement::from_gens(gens), trace },
        }),
        Err(ReduceFail::NeedsApprox) => {
            let (canonical, gens, trace) =
                reduce_loop::<CNum>(d.to_cnum()).map_err(|_| OrbitError::ReductionStalled)?;
            Ok(CanonicalForm {
                label,
                route: Route::Approximate {
                    canonical,
                    element: GroupElement::from_gens(gens),
                    trace,
                },
            })
        }
        Err(ReduceFail::Stalled) => Err(OrbitError::ReductionStalled),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Equivalent,
    Distinct,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport {
    pub verdict: Verdict,
    pub reason: String,
}

impl EquivalenceReport {
    fn new(verdict: Verdict, reason: &str) -> Self {
        EquivalenceReport { verdict, reason: reason.to_string() }
    }
}

/// Decides whether two derivations lie on the same orbit of the combined
/// conjugation-and-scaling action, using exact invariants plus explicit
/// rational certificates. `Equivalent` and `Distinct` are proofs;
/// `Inconclusive` means no rational certificate was found (the scaling
/// residue requires a square or cube root that may not be rational).
pub fn orbit_equivalent(
    d1: &GenDer5<Rat>,
    d2: &GenDer5<Rat>,
) -> Result<EquivalenceReport, OrbitError> {
    let l1 = classify(d1)?;
    let l2 = classify(d2)?;
    if l1.kind() != l2.kind() {
        return Ok(EquivalenceReport::new(Verdict::Distinct, "class labels differ"));
    }
    let report = match (&l1, &l2) {
        (ClassLabel::Rank1, ClassLabel::Rank1) | (ClassLabel::Rank2A, ClassLabel::Rank2A) => {
            EquivalenceReport::new(
                Verdict::Equivalent,
                "same class; scaling acts transitively on the remaining parameter",
            )
        }
        (ClassLabel::Rank2B { sigma: s1 }, ClassLabel::Rank2B { sigma: s2 }) => {
            // Residual action: sigma scales by xi^2.
            if (s2 / s1).sqrt_exact().is_some() {
                EquivalenceReport::new(Verdict::Equivalent, "parameters match under a rational square scaling")
            } else {
                EquivalenceReport::new(Verdict::Inconclusive, "no rational square scaling certificate")
            }
        }
        (ClassLabel::Rank3A { lambda: l1 }, ClassLabel::Rank3A { lambda: l2 }) => {
            // Residual action: lambda scales by xi^3.
            if (l2 / l1).cbrt_exact().is_some() {
                EquivalenceReport::new(Verdict::Equivalent, "parameters match under a rational cube scaling")
            } else {
                EquivalenceReport::new(Verdict::Inconclusive, "no rational cube scaling certificate")
            }
        }
        (
            ClassLabel::Rank3B { sigma: s1, lambda: m1 },
            ClassLabel::Rank3B { sigma: s2, lambda: m2 },
        ) => {
            let e1 = semisimple_double_eigenvalue(d1);
            let e2 = semisimple_double_eigenvalue(d2);
            if e1 != e2 {
                // Same charpoly data can carry different eigenspace
                // structure; conjugation and scaling preserve it.
                EquivalenceReport::new(Verdict::Distinct, "repeated-eigenvalue structure differs")
            } else if e1 {
                match (canonical_form(d1)?.route, canonical_form(d2)?.route) {
                    (Route::Exact { .. }, Route::Exact { .. }) => EquivalenceReport::new(
                        Verdict::Equivalent,
                        "both reduce exactly to the diagonal-pattern representative",
                    ),
                    _ => EquivalenceReport::new(
                        Verdict::Inconclusive,
                        "approximate reduction cannot certify the diagonal family",
                    ),
                }
            } else {
                // Need one xi with sigma2 = xi^2 sigma1 and lambda2 = xi^3 lambda1.
                let xi = (m2 * s1) / (m1 * s2);
                if &(&xi * &xi) * s1 == *s2 && &(&(&xi * &xi) * &xi) * m1 == *m2 {
                    EquivalenceReport::new(Verdict::Equivalent, "parameters match under a rational scaling")
                } else {
                    EquivalenceReport::new(Verdict::Inconclusive, "no rational scaling certificate")
                }
            }
        }
        _ => unreachable!("kinds already matched"),
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::sl2;

    fn d5(z: i64, e: i64, s: i64, l: i64, m: i64) -> GenDer5<Rat> {
        GenDer5::of_ints(z, e, s, l, m)
    }

    fn rational(p: i64, q: i64) -> Rat {
        Rat::new(p, q)
    }

    /// Checks M[x,y] = [Mx, My] over all basis pairs of sl2.
    fn preserves_bracket(m: &Matrix<Rat>) -> bool {
        let g = sl2();
        for i in 0..3 {
            for j in 0..3 {
                let lhs = m.mul_vec(&g.bracket(&g.basis_vector(i), &g.basis_vector(j)));
                let rhs = g.bracket(&m.mul_vec(&g.basis_vector(i)), &m.mul_vec(&g.basis_vector(j)));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn tuple_matrix_round_trip() {
        let d = GenDer5::new(
            rational(1, 2),
            rational(-3, 1),
            rational(5, 7),
            rational(0, 1),
            rational(11, 4),
        );
        let m = d.to_matrix();
        assert_eq!(GenDer5::from_matrix(&m), Some(d));
        // A matrix breaking the membership pattern reads back as None.
        let mut bad = m.clone();
        bad.set(1, 0, Rat::int(99));
        assert_eq!(GenDer5::from_matrix(&bad), None);
    }

    #[test]
    fn generator_matrices_are_automorphisms() {
        let gens = [
            AutGen::G { a: rational(3, 2) },
            AutGen::H { a: rational(-2, 5) },
            AutGen::F { a: rational(2, 1), c: rational(3, 2) },
            AutGen::Diag { nu: rational(-2, 1) },
        ];
        for gen in &gens {
            let m = aut_matrix(gen).unwrap();
            assert!(preserves_bracket(&m), "{gen:?} is not an automorphism");
            let m_inv = aut_matrix(&gen.inverse()).unwrap();
            assert_eq!(m.mul(&m_inv), Matrix::identity(3), "{gen:?} inverse fails");
        }
    }

    #[test]
    fn zero_parameters_are_rejected() {
        assert_eq!(
            aut_matrix(&AutGen::G { a: Rat::zero() }).unwrap_err(),
            OrbitError::ZeroParameter
        );
        assert_eq!(
            act_closed(&AutGen::F { a: Rat::one(), c: Rat::zero() }, &d5(1, 0, 0, 0, 0))
                .unwrap_err(),
            OrbitError::ZeroParameter
        );
    }

    #[test]
    fn k_action_worked_value() {
        // Oracle: conjugation by G(1) on (0,0,0,0,1), computed by hand.
        let got = act_closed(&AutGen::G { a: Rat::one() }, &d5(0, 0, 0, 0, 1)).unwrap();
        assert_eq!(got, d5(1, 1, -1, 1, 1));
    }

    #[test]
    fn closed_forms_agree_with_conjugation() {
        let tuples = [
            d5(1, 0, 0, 0, 0),
            d5(0, 1, -2, 3, 5),
            GenDer5::new(rational(1, 2), rational(-1, 3), rational(2, 7), rational(4, 1), rational(-5, 6)),
        ];
        let params = [rational(1, 1), rational(-2, 3), rational(5, 2)];
        for d in &tuples {
            for a in &params {
                for gen in [
                    AutGen::G { a: a.clone() },
                    AutGen::H { a: a.clone() },
                    AutGen::F { a: a.clone(), c: rational(3, 4) },
                    AutGen::Diag { nu: a.clone() },
                ] {
                    let closed = act_closed(&gen, d).unwrap();
                    let conj = act_conj(&gen, d).unwrap();
                    assert_eq!(closed, conj, "mismatch for {gen:?} on {d}");
                }
            }
        }
    }

    #[test]
    fn two_parameter_action_worked_values() {
        // Oracles: conjugation by F(1,c) evaluated symbolically.
        let c = rational(5, 3);
        let j = |d: &GenDer5<Rat>| act_closed(&AutGen::F { a: Rat::one(), c: c.clone() }, d).unwrap();

        let zeta_only = j(&d5(7, 0, 0, 0, 0));
        assert_eq!(
            zeta_only,
            GenDer5::new(
                Rat::int(7),
                Rat::zero(),
                Rat::int(6) * &c * Rat::int(7),
                Rat::int(24) * c.pow(2) * Rat::int(7),
                Rat::zero()
            )
        );

        let mu_only = j(&d5(0, 0, 0, 0, 11));
        assert_eq!(
            mu_only,
            GenDer5::new(Rat::zero(), Rat::zero(), Rat::zero(), c.pow(4) * Rat::int(11), Rat::zero())
        );

        let eta_only = j(&d5(0, 2, 0, 0, 0));
        assert_eq!(
            eta_only,
            GenDer5::new(
                Rat::zero(),
                Rat::zero(),
                c.pow(2) * Rat::int(2),
                Rat::int(8) * c.pow(3) * Rat::int(2),
                Rat::zero()
            )
        );
    }

    #[test]
    fn diag_conjugation_scales_slots() {
        let d = d5(0, 3, -2, 7, 0);
        let nu = rational(4, 3);
        let got = act_conj(&AutGen::Diag { nu: nu.clone() }, &d).unwrap();
        assert_eq!(
            got,
            GenDer5::new(
                Rat::zero(),
                Rat::int(3) / &nu,
                Rat::int(-2) * &nu,
                Rat::int(7) * nu.pow(2),
                Rat::zero()
            )
        );
    }

    #[test]
    fn group_element_application_orders_left_to_right() {
        let d = d5(0, 1, 2, 3, 4);
        let element = GroupElement {
            scale: rational(3, 1),
            gens: vec![AutGen::G { a: Rat::one() }, AutGen::H { a: rational(-1, 2) }],
        };
        let manual = {
            let step1 = act_closed(&AutGen::G { a: Rat::one() }, &d).unwrap();
            let step2 = act_closed(&AutGen::H { a: rational(-1, 2) }, &step1).unwrap();
            step2.scale(&rational(3, 1))
        };
        assert_eq!(element.apply_closed(&d).unwrap(), manual);
        assert_eq!(element.apply_conj(&d).unwrap(), manual);
    }

    #[test]
    fn classify_normal_forms() {
        assert_eq!(classify(&d5(0, 0, 0, 9, 0)).unwrap(), ClassLabel::Rank1);
        assert_eq!(classify(&d5(0, 0, 1, 0, 0)).unwrap(), ClassLabel::Rank2A);
        assert_eq!(classify(&d5(0, 1, 0, 0, 0)).unwrap(), ClassLabel::Rank2A);
        assert_eq!(
            classify(&d5(0, 1, 5, 0, 0)).unwrap(),
            ClassLabel::Rank2B { sigma: Rat::int(5) }
        );
        assert_eq!(
            classify(&d5(0, 1, 0, -3, 0)).unwrap(),
            ClassLabel::Rank3A { lambda: Rat::int(-3) }
        );
        assert_eq!(
            classify(&d5(0, 1, 5, -3, 0)).unwrap(),
            ClassLabel::Rank3B { sigma: Rat::int(5), lambda: Rat::int(-3) }
        );
        assert_eq!(classify(&GenDer5::of_ints(0, 0, 0, 0, 0)).unwrap_err(), OrbitError::ZeroDerivation);
    }

    #[test]
    fn classify_is_conjugation_invariant() {
        let d = d5(0, 1, 5, -3, 0);
        let g = GroupElement::from_gens(vec![
            AutGen::G { a: rational(2, 3) },
            AutGen::F { a: rational(-1, 2), c: rational(7, 4) },
            AutGen::H { a: rational(5, 1) },
        ]);
        let moved = g.apply_conj(&d).unwrap();
        assert_eq!(classify(&moved).unwrap(), classify(&d).unwrap());
    }

    #[test]
    fn canonical_form_of_mu_axis() {
        let out = canonical_form(&d5(0, 0, 0, 0, 1)).unwrap();
        assert_eq!(out.label, ClassLabel::Rank1);
        match out.route {
            Route::Exact { canonical, element, trace } => {
                assert_eq!(canonical, d5(0, 0, 0, 1, 0));
                assert_eq!(element.apply_conj(&d5(0, 0, 0, 0, 1)).unwrap(), canonical);
                // The trace records the tuple after every step.
                assert_eq!(trace.len(), element.gens.len());
                assert_eq!(trace.last(), Some(&canonical));
            }
            Route::Approximate { .. } => panic!("expected the exact route"),
        }
    }

    #[test]
    fn canonical_form_fixes_normal_forms() {
        let fixed = d5(0, 0, 1, 0, 0);
        let out = canonical_form(&fixed).unwrap();
        match out.route {
            Route::Exact { canonical, element, .. } => {
                assert_eq!(canonical, fixed);
                assert!(element.gens.is_empty());
            }
            Route::Approximate { .. } => panic!("expected the exact route"),
        }
    }

    #[test]
    fn canonical_form_undoes_conjugation_exactly() {
        // Scramble a normal form by rational automorphisms; the reducer
        // must land back on the same tuple (charpoly pins the parameters
        // once eta is normalized to 1).
        for target in [d5(0, 1, 5, 0, 0), d5(0, 1, 0, 2, 0), d5(0, 1, 5, 2, 0)] {
            let g = GroupElement::from_gens(vec![
                AutGen::G { a: rational(-2, 1) },
                AutGen::Diag { nu: rational(3, 1) },
            ]);
            let scrambled = g.apply_conj(&target).unwrap();
            let out = canonical_form(&scrambled).unwrap();
            match out.route {
                Route::Exact { canonical, element, .. } => {
                    assert_eq!(canonical, target, "from {scrambled}");
                    assert_eq!(element.apply_conj(&scrambled).unwrap(), canonical);
                }
                Route::Approximate { .. } => panic!("expected the exact route for {scrambled}"),
            }
        }
    }

    #[test]
    fn mu_killing_step_finds_the_rational_quartic_root() {
        // This scramble produces the tuple (4, -7/12, 12, 0, -1/18), whose
        // mu-killing cubic -48x^3 + 24x^2 - 7/3 x - 1/18 has the single
        // rational root 1/6; the whole reduction stays exact.
        let target = d5(0, 1, 5, 0, 0);
        let g = GroupElement::from_gens(vec![
            AutGen::H { a: rational(1, 2) },
            AutGen::G { a: rational(-2, 1) },
            AutGen::Diag { nu: rational(3, 1) },
        ]);
        let scrambled = g.apply_conj(&target).unwrap();
        assert_eq!(
            scrambled,
            GenDer5::new(Rat::int(4), rational(-7, 12), Rat::int(12), Rat::zero(), rational(-1, 18))
        );
        let out = canonical_form(&scrambled).unwrap();
        match out.route {
            Route::Exact { canonical, element, .. } => {
                assert_eq!(canonical, target);
                assert_eq!(element.gens[0], AutGen::H { a: rational(1, 6) });
                assert_eq!(element.apply_conj(&scrambled).unwrap(), canonical);
            }
            Route::Approximate { .. } => panic!("expected the exact route"),
        }
    }

    #[test]
    fn rank2a_eta_shape_normalizes_to_sigma_axis() {
        let out = canonical_form(&d5(0, 7, 0, 0, 0)).unwrap();
        assert_eq!(out.label, ClassLabel::Rank2A);
        match out.route {
            Route::Exact { canonical, element, .. } => {
                assert_eq!(canonical, d5(0, 0, 1, 0, 0));
                assert_eq!(element.apply_conj(&d5(0, 7, 0, 0, 0)).unwrap(), canonical);
            }
            Route::Approximate { .. } => panic!("expected the exact route"),
        }
    }

    #[test]
    fn diagonal_family_is_terminal() {
        let p = d5(1, 0, 0, 0, 0);
        assert!(semisimple_double_eigenvalue(&p));
        let out = canonical_form(&p).unwrap();
        assert_eq!(
            out.label,
            ClassLabel::Rank3B { sigma: rational(3, 4), lambda: Rat::one() }
        );
        match out.route {
            Route::Exact { canonical, element, .. } => {
                assert_eq!(canonical, p);
                assert!(element.gens.is_empty());
            }
            Route::Approximate { .. } => panic!("expected the exact route"),
        }
        // A scrambled member of the same family comes back to the pattern.
        let g = GroupElement::from_gens(vec![AutGen::G { a: rational(1, 3) }]);
        let moved = g.apply_conj(&p).unwrap();
        assert!(!moved.sigma.is_zero());
        let out = canonical_form(&moved).unwrap();
        match out.route {
            Route::Exact { canonical, .. } => assert_eq!(canonical, p),
            Route::Approximate { .. } => panic!("expected the exact route"),
        }
    }

    #[test]
    fn irrational_step_switches_to_approximate() {
        // The mu-killing quartic for this tuple is 6x^2 + 5: no rational
        // (or real) root, so the whole trace runs over CNum.
        let d = d5(1, 0, 0, 0, 5);
        assert!(!semisimple_double_eigenvalue(&d));
        let out = canonical_form(&d).unwrap();
        assert_eq!(out.mode(), Mode::Approximate);
        assert_eq!(
            out.label,
            ClassLabel::Rank3B { sigma: rational(3, 4), lambda: Rat::one() }
        );
        match out.route {
            Route::Approximate { canonical, element, .. } => {
                assert!(canonical.zeta.approx_zero());
                assert!(canonical.mu.approx_zero());
                // Invariants pin the normalized parameters.
                assert!(canonical.eta.approx_eq(&CNum::one()));
                assert!(canonical.sigma.approx_eq(&CNum::from_f64(0.75)));
                assert!(canonical.lambda.approx_eq(&CNum::one()));
                let replay = element.apply_conj(&d.to_cnum()).unwrap();
                assert!(replay.zeta.approx_zero() && replay.mu.approx_zero());
            }
            Route::Exact { .. } => panic!("expected the approximate route"),
        }
    }

    #[test]
    fn orbit_equivalence_verdicts() {
        // Scaling by 7 keeps the orbit.
        let d = d5(0, 1, 5, -3, 0);
        let scaled = d.scale(&Rat::int(7));
        assert_eq!(orbit_equivalent(&d, &scaled).unwrap().verdict, Verdict::Equivalent);

        // Different ranks are distinct.
        assert_eq!(
            orbit_equivalent(&d5(0, 0, 0, 1, 0), &d5(0, 0, 1, 0, 0)).unwrap().verdict,
            Verdict::Distinct
        );

        // Conjugation keeps the orbit.
        let moved = act_conj(&AutGen::G { a: Rat::int(3) }, &d).unwrap();
        assert_eq!(orbit_equivalent(&d, &moved).unwrap().verdict, Verdict::Equivalent);

        // 5 vs 20 = 2^2 * 5 is a square ratio; 5 vs 10 is not.
        assert_eq!(
            orbit_equivalent(&d5(0, 1, 5, 0, 0), &d5(0, 1, 20, 0, 0)).unwrap().verdict,
            Verdict::Equivalent
        );
        assert_eq!(
            orbit_equivalent(&d5(0, 1, 5, 0, 0), &d5(0, 1, 10, 0, 0)).unwrap().verdict,
            Verdict::Inconclusive
        );

        // Cube ratios for the lambda-only rank-3 family.
        assert_eq!(
            orbit_equivalent(&d5(0, 1, 0, 2, 0), &d5(0, 1, 0, 16, 0)).unwrap().verdict,
            Verdict::Equivalent
        );
        assert_eq!(
            orbit_equivalent(&d5(0, 1, 0, 2, 0), &d5(0, 1, 0, 4, 0)).unwrap().verdict,
            Verdict::Inconclusive
        );
    }

    #[test]
    fn eigenspace_structure_separates_equal_invariants() {
        // Both have charpoly x^3 - 3x - 2, but only the first is
        // semisimple; they lie on different orbits.
        let diag = d5(1, 0, 0, 0, 0);
        let generic = d5(1, 0, 0, 0, 5);
        assert_eq!(classify(&diag).unwrap(), classify(&generic).unwrap());
        let report = orbit_equivalent(&diag, &generic).unwrap();
        assert_eq!(report.verdict, Verdict::Distinct);
        assert!(report.reason.contains("repeated-eigenvalue"));

        // Two members of the diagonal family are equivalent.
        let other = d5(4, 0, 0, 0, 0);
        assert_eq!(orbit_equivalent(&diag, &other).unwrap().verdict, Verdict::Equivalent);
    }

    #[test]
    fn serde_round_trip() {
        let d = GenDer5::new(rational(1, 2), Rat::int(-3), Rat::zero(), rational(7, 5), Rat::int(9));
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"["1/2","-3","0","7/5","9"]"#);
        let back: GenDer5<Rat> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        let parsed: GenDer5<Rat> = "1/2, -3, 0, 7/5, 9".parse().unwrap();
        assert_eq!(parsed, d);
    }
}
