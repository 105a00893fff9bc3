//! Finite and infinite products with certified truncation.

use crate::error::{Error, Result};
use crate::geometry::Complex;
use serde::Serialize;

/// Largest admissible `|z|` for the Euler function.
pub const MAX_RADIUS: f64 = 0.999;
const MAX_TERMS: u64 = 10_000_000;

/// `(|prod(1+u_j) - 1|, prod(1+|u_j|) - 1, exp(sum |u_j|) - 1)`; always ordered.
pub fn rudin_chain(us: &[Complex]) -> (f64, f64, f64) {
    let one = Complex::new(1.0, 0.0);
    let prod = us.iter().fold(one, |acc, u| acc * (one + u));
    let mid = us.iter().fold(1.0, |acc, u| acc * (1.0 + u.norm())) - 1.0;
    let rhs = us.iter().map(|u| u.norm()).sum::<f64>().exp_m1();
    ((prod - one).norm(), mid, rhs)
}

/// `prod_{j=1}^n (1 - z^j)`.
pub fn euler_partial(z: Complex, n: u64) -> Complex {
    let one = Complex::new(1.0, 0.0);
    let mut zj = one;
    let mut acc = one;
    for _ in 0..n {
        zj *= z;
        acc *= one - zj;
    }
    acc
}

/// Natural log of the Cauchy tail bound `exp(r/(1-r)) (exp(r^{n+1}/(1-r)) - 1)`.
fn log_tail_bound(r: f64, n: u64) -> f64 {
    if r == 0.0 {
        return f64::NEG_INFINITY;
    }
    let log_x = (n as f64 + 1.0) * r.ln() - (1.0 - r).ln();
    let x = log_x.exp();
    let log_expm1 = if x < 1e-8 { log_x } else { x.exp_m1().ln() };
    r / (1.0 - r) + log_expm1
}

/// `exp(r/(1-r)) (exp(r^{n+1}/(1-r)) - 1)`: bounds `|P_{n+k}(z) - P_n(z)|` for `|z| <= r`.
pub fn tail_bound(r: f64, n: u64) -> f64 {
    log_tail_bound(r, n).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EulerEval {
    pub z: Complex,
    pub r: f64,
    pub n: u64,
    pub value: Complex,
    pub tail_bound: f64,
}

fn check_radius(z: Complex) -> Result<f64> {
    let r = z.norm();
    if !(r <= MAX_RADIUS) {
        return Err(Error::NotInDomain(r));
    }
    Ok(r)
}

/// `prod_{j>=1} (1 - z^j)` truncated at the smallest `n` whose tail bound is below `tol`.
pub fn euler_limit(z: Complex, tol: f64) -> Result<EulerEval> {
    let r = check_radius(z)?;
    if !(tol > 0.0) {
        return Err(Error::ParameterOutOfRange(format!("tol = {tol}")));
    }
    let log_tol = tol.ln();
    let ok = |n: u64| log_tail_bound(r, n) < log_tol;
    if !ok(MAX_TERMS) {
        return Err(Error::ParameterOutOfRange(format!(
            "tol = {tol} needs more than {MAX_TERMS} factors at r = {r}"
        )));
    }
    let (mut lo, mut hi) = (1u64, MAX_TERMS);
    if ok(1) {
        hi = 1;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let n = hi;
    Ok(EulerEval {
        z,
        r,
        n,
        value: euler_partial(z, n),
        tail_bound: tail_bound(r, n),
    })
}

/// `exp(-sum_j z^j / (j (1 - z^j)))`, truncated where the majorant
/// `r^{N+1} / ((N+1)(1-r)^2)` drops below `tol`.
pub fn euler_via_series(z: Complex, tol: f64) -> Result<Complex> {
    let r = check_radius(z)?;
    if !(tol > 0.0) {
        return Err(Error::ParameterOutOfRange(format!("tol = {tol}")));
    }
    let one = Complex::new(1.0, 0.0);
    let mut sum = Complex::new(0.0, 0.0);
    let mut zj = one;
    let mut rj = 1.0;
    let mut j = 1u64;
    loop {
        zj *= z;
        rj *= r;
        sum += zj / (j as f64 * (one - zj));
        let majorant = rj * r / ((j + 1) as f64 * (1.0 - r).powi(2));
        if majorant < tol || j >= MAX_TERMS {
            break;
        }
        j += 1;
    }
    Ok((-sum).exp())
}
