//! Root finding for the low-degree polynomials the reduction produces.
//!
//! Two layers, matching the two scalar worlds:
//!
//! * [`poly_roots`] finds all complex roots of a degree 1..=4 polynomial by
//!   simultaneous (Weierstrass) iteration and guarantees the residual bound
//!   `|p(root)| <= EPS * (1 + max |coeff|)` on every returned root.
//! * [`rational_root_nonzero`] recovers an exact nonzero rational root when
//!   one exists at reachable height: exact for degree <= 2 via discriminant
//!   square tests, and for degree 3..4 by reconstructing candidates from
//!   the float roots with continued fractions, every candidate verified by
//!   exact evaluation before it is accepted.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cnum::{CNum, EPS};
use crate::rat::Rat;

#[derive(Debug, Error, PartialEq)]
pub enum RootError {
    #[error("zero polynomial has every point as a root")]
    ZeroPolynomial,
    #[error("nonzero constant polynomial has no roots")]
    ConstantPolynomial,
    #[error("root iteration failed the residual bound")]
    ResidualBound,
}

/// Horner evaluation, coefficients in descending powers.
pub fn eval_poly(coeffs: &[CNum], z: CNum) -> CNum {
    coeffs
        .iter()
        .fold(CNum::zero(), |acc, c| acc * z + *c)
}

/// Horner evaluation over exact rationals, coefficients in descending powers.
pub fn eval_poly_rat(coeffs: &[Rat], x: &Rat) -> Rat {
    coeffs
        .iter()
        .fold(Rat::zero(), |acc, c| &(&acc * x) + c)
}

/// All complex roots (with multiplicity) of the polynomial with the given
/// descending coefficients, sorted by real part then imaginary part.
/// Every root satisfies `|p(root)| <= EPS * (1 + max |coeff|)`.
pub fn poly_roots(coeffs: &[CNum]) -> Result<Vec<CNum>, RootError> {
    let scale = coeffs.iter().map(CNum::abs).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(RootError::ZeroPolynomial);
    }
    // Degree trimming: drop leading coefficients that are zero at the
    // scale of the polynomial.
    let first = coeffs
        .iter()
        .position(|c| c.abs() > EPS * scale)
        .ok_or(RootError::ZeroPolynomial)?;
    let coeffs = &coeffs[first..];
    let n = coeffs.len() - 1;
    if n == 0 {
        return Err(RootError::ConstantPolynomial);
    }

    let lead = coeffs[0];
    let monic: Vec<CNum> = coeffs.iter().map(|c| *c / lead).collect();

    let mut roots = initial_guesses(&monic);
    for _ in 0..400 {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let num = eval_poly(&monic, roots[k]);
            let mut den = CNum::one();
            for j in 0..n {
                if j != k {
                    den = den * (roots[k] - roots[j]);
                }
            }
            if den.abs() == 0.0 {
                // Perturb a collision and keep iterating.
                roots[k] = roots[k] + CNum::new(1e-8, 1e-8);
                max_step = f64::MAX;
                continue;
            }
            let step = num / den;
            roots[k] = roots[k] - step;
            max_step = max_step.max(step.abs() / (1.0 + roots[k].abs()));
        }
        if max_step < 1e-15 {
            break;
        }
    }

    // A couple of Newton polish steps help simple roots reach full
    // precision; clustered (multiple) roots keep their iteration accuracy,
    // which is still far inside the residual bound below.
    let derivative: Vec<CNum> = monic[..n]
        .iter()
        .enumerate()
        .map(|(i, c)| *c * CNum::from_f64((n - i) as f64))
        .collect();
    for root in roots.iter_mut() {
        for _ in 0..3 {
            let d = eval_poly(&derivative, *root);
            if d.abs() < 1e-12 {
                break;
            }
            *root = *root - eval_poly(&monic, *root) / d;
        }
    }

    let bound = EPS * (1.0 + scale);
    for root in &roots {
        let residual = eval_poly(coeffs, *root).abs();
        if residual > bound {
            return Err(RootError::ResidualBound);
        }
    }

    roots.sort_by(|a, b| {
        a.re()
            .total_cmp(&b.re())
            .then_with(|| a.im().total_cmp(&b.im()))
    });
    Ok(roots)
}

fn initial_guesses(monic: &[CNum]) -> Vec<CNum> {
    let n = monic.len() - 1;
    // Cauchy bound: every root has modulus at most 1 + max |a_i|.
    let radius = 1.0
        + monic[1..]
            .iter()
            .map(CNum::abs)
            .fold(0.0, f64::max);
    let seed = CNum::new(0.4, 0.9);
    let mut guesses = Vec::with_capacity(n);
    let mut g = CNum::from_f64(radius);
    for _ in 0..n {
        g = g * seed;
        guesses.push(g);
    }
    guesses
}

/// Deterministic exact nonzero rational root, when one can be found:
/// the smallest (in the rational order) verified nonzero root. `None`
/// means no rational root was found; for degree <= 2 that is a proof
/// none exists, for higher degree a root of unreachable height may hide.
pub fn rational_root_nonzero(coeffs: &[Rat]) -> Option<Rat> {
    // Exact degree trimming.
    let first = coeffs.iter().position(|c| !c.is_zero())?;
    let mut coeffs = coeffs[first..].to_vec();
    // Factor out x^k so the constant term is nonzero; those roots are zero
    // and never wanted here.
    while coeffs.last().is_some_and(Rat::is_zero) {
        coeffs.pop();
    }
    if coeffs.len() <= 1 {
        return None;
    }
    let mut found: Vec<Rat> = match coeffs.len() {
        2 => vec![-&coeffs[1] / &coeffs[0]],
        3 => {
            let (a, b, c) = (&coeffs[0], &coeffs[1], &coeffs[2]);
            let disc = &(b * b) - &(&(a * c) * &Rat::int(4));
            let s = disc.sqrt_exact()?;
            let two_a = &Rat::int(2) * a;
            vec![&(&-b + &s) / &two_a, &(&-b - &s) / &two_a]
        }
        _ => {
            let float_coeffs: Vec<CNum> = coeffs.iter().map(CNum::from_rat).collect();
            let roots = poly_roots(&float_coeffs).ok()?;
            roots
                .iter()
                .filter(|z| z.im().abs() <= 1e-6 * (1.0 + z.re().abs()))
                .filter_map(|z| reconstruct_verified_root(&coeffs, z.re()))
                .collect()
        }
    };
    found.retain(|r| !r.is_zero() && eval_poly_rat(&coeffs, r).is_zero());
    found.sort();
    found.dedup();
    found.into_iter().next()
}

/// Walks the continued-fraction convergents of `x` and returns the first
/// one that is exactly a root. Exact evaluation is the acceptance gate, so
/// a wrong reconstruction can never leak through.
fn reconstruct_verified_root(coeffs: &[Rat], x: f64) -> Option<Rat> {
    if !x.is_finite() || x.abs() > 1e15 {
        return None;
    }
    let (mut h_prev, mut h) = (BigInt::one(), BigInt::from(x.floor() as i64));
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    let mut frac = x - x.floor();
    for _ in 0..64 {
        let candidate = Rat::from_big(h.clone(), k.clone());
        if eval_poly_rat(coeffs, &candidate).is_zero() {
            return Some(candidate);
        }
        if frac.abs() < 1e-15 || k.abs() > BigInt::from(1_000_000_000_000u64) {
            return None;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        frac = inv - a;
        let a_big = BigInt::from(a as i64);
        let h_next = &a_big * &h + &h_prev;
        let k_next = &a_big * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> CNum {
        CNum::from_f64(re)
    }

    #[test]
    fn quadratic_with_real_roots_sorted() {
        // x^2 - 1.
        let roots = poly_roots(&[c(1.0), c(0.0), c(-1.0)]).unwrap();
        assert!((roots[0] - c(-1.0)).abs() < 1e-9);
        assert!((roots[1] - c(1.0)).abs() < 1e-9);
    }

    #[test]
    fn cube_roots_of_unity() {
        // x^3 - 1.
        let roots = poly_roots(&[c(1.0), c(0.0), c(0.0), c(-1.0)]).unwrap();
        let expected = [
            CNum::new(-0.5, -(0.75f64.sqrt())),
            CNum::new(-0.5, 0.75f64.sqrt()),
            CNum::new(1.0, 0.0),
        ];
        for (r, e) in roots.iter().zip(&expected) {
            assert!((*r - *e).abs() < 1e-8, "{r} vs {e}");
        }
    }

    #[test]
    fn double_root_meets_residual_bound() {
        // (x - 1)^2 = x^2 - 2x + 1.
        let coeffs = [c(1.0), c(-2.0), c(1.0)];
        let roots = poly_roots(&coeffs).unwrap();
        for r in &roots {
            assert!((*r - c(1.0)).abs() < 1e-5);
            assert!(eval_poly(&coeffs, *r).abs() <= EPS * (1.0 + 2.0));
        }
    }

    #[test]
    fn quartic_residuals_within_bound() {
        // x^4 + x^3 + x^2 + x + 1 (primitive fifth roots of unity).
        let coeffs = [c(1.0); 5];
        let roots = poly_roots(&coeffs).unwrap();
        assert_eq!(roots.len(), 4);
        for r in &roots {
            assert!(eval_poly(&coeffs, *r).abs() <= EPS * 2.0);
            assert!((r.abs() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn degenerate_inputs_error() {
        assert_eq!(poly_roots(&[]), Err(RootError::ZeroPolynomial));
        assert_eq!(poly_roots(&[c(0.0)]), Err(RootError::ZeroPolynomial));
        assert_eq!(poly_roots(&[c(3.0)]), Err(RootError::ConstantPolynomial));
    }

    #[test]
    fn rational_root_linear_and_quadratic_are_exact() {
        // 3x + 2.
        assert_eq!(
            rational_root_nonzero(&[Rat::int(3), Rat::int(2)]),
            Some(Rat::new(-2, 3))
        );
        // 6x^2 - 5x + 1 = (2x - 1)(3x - 1); smallest root first.
        assert_eq!(
            rational_root_nonzero(&[Rat::int(6), Rat::int(-5), Rat::int(1)]),
            Some(Rat::new(1, 3))
        );
        // x^2 - 2 has no rational root, and degree 2 proves it.
        assert_eq!(rational_root_nonzero(&[Rat::int(1), Rat::int(0), Rat::int(-2)]), None);
    }

    #[test]
    fn rational_root_of_cubic_and_quartic_via_reconstruction() {
        // (3x - 2)(x^2 + x + 1) = 3x^3 + x^2 + x - 2.
        assert_eq!(
            rational_root_nonzero(&[Rat::int(3), Rat::int(1), Rat::int(1), Rat::int(-2)]),
            Some(Rat::new(2, 3))
        );
        // (2x - 1)(3x - 1)(x^2 + 1) = 6x^4 - 5x^3 + 7x^2 - 5x + 1.
        assert_eq!(
            rational_root_nonzero(&[
                Rat::int(6),
                Rat::int(-5),
                Rat::int(7),
                Rat::int(-5),
                Rat::int(1)
            ]),
            Some(Rat::new(1, 3))
        );
        // x^3 - 2 has no rational root.
        assert_eq!(
            rational_root_nonzero(&[Rat::int(1), Rat::int(0), Rat::int(0), Rat::int(-2)]),
            None
        );
    }

    #[test]
    fn zero_roots_are_never_returned() {
        // x^2 + x = x(x + 1): only -1 qualifies.
        assert_eq!(
            rational_root_nonzero(&[Rat::int(1), Rat::int(1), Rat::int(0)]),
            Some(Rat::int(-1))
        );
    }
}
