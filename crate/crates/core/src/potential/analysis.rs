//! Scalar analysis of a potential curve: minimum, curvature, B_e.

use super::Potential;
use crate::error::{Error, Result};
use crate::units::{amu_to_me, cm_to_hartree, hartree_to_cm};

const SCAN_POINTS: usize = 2000;
const X_TOL: f64 = 1e-7;
const FD_STEP: f64 = 1e-3;

/// Locate the global well minimum inside the potential's search range.
///
/// A coarse scan brackets the minimum, Brent's method (golden section with
/// parabolic steps) refines it. Returns (R_e in a₀, V(R_e) in cm⁻¹).
pub fn find_minimum(p: &dyn Potential) -> Result<(f64, f64)> {
    let (lo, hi) = p.search_range();
    if !(hi > lo) {
        return Err(Error::Analysis(format!("empty search range [{lo}, {hi}]")));
    }
    let step = (hi - lo) / SCAN_POINTS as f64;
    let (mut best, mut best_v) = (0usize, f64::INFINITY);
    for i in 0..=SCAN_POINTS {
        let v = p.value(lo + step * i as f64);
        if v < best_v {
            best = i;
            best_v = v;
        }
    }
    if !best_v.is_finite() || best_v >= 0.0 {
        return Err(Error::Analysis("curve has no bound well (minimum is not below the asymptote)".into()));
    }
    if best == 0 || best == SCAN_POINTS {
        return Err(Error::Analysis(format!(
            "no minimum bracketed in [{lo}, {hi}]; the curve is monotonic there"
        )));
    }
    let a = lo + step * (best - 1) as f64;
    let b = lo + step * (best + 1) as f64;
    let x = brent_minimize(|r| p.value(r), a, b, X_TOL)?;
    let (x, v) = if p.value(x) <= best_v { (x, p.value(x)) } else { (lo + step * best as f64, best_v) };
    Ok((x, v))
}

/// Brent's derivative-free minimization of a unimodal function on [a, b].
fn brent_minimize(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    const GOLDEN: f64 = 0.381_966_011_250_105_1;
    const MAX_ITER: usize = 200;
    let mut x = a + GOLDEN * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = f(x);
    let (mut fw, mut fv) = (fx, fx);
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;

    for _ in 0..MAX_ITER {
        let xm = 0.5 * (a + b);
        let tol1 = tol + 1e-12 * x.abs();
        let tol2 = 2.0 * tol1;
        if (x - xm).abs() <= tol2 - 0.5 * (b - a) {
            return Ok(x);
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let e_old = e;
            if p.abs() < (0.5 * q * e_old).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1.copysign(xm - x);
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= xm { a - x } else { b - x };
            d = GOLDEN * e;
        }
        let u = if d.abs() >= tol1 { x + d } else { x + tol1.copysign(d) };
        let fu = f(u);
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Err(Error::numerical("minimum search did not converge", MAX_ITER))
}

/// V″(R) in cm⁻¹/a₀² from the 5-point central stencil with step 1e-3 a₀.
pub fn second_derivative(p: &dyn Potential, r: f64) -> f64 {
    let h = FD_STEP;
    (-p.value(r + 2.0 * h) + 16.0 * p.value(r + h) - 30.0 * p.value(r) + 16.0 * p.value(r - h)
        - p.value(r - 2.0 * h))
        / (12.0 * h * h)
}

/// ω_e = √(V″(R_e)/μ), returned in cm⁻¹. `mu` in u.
pub fn harmonic_frequency(p: &dyn Potential, re: f64, mu: f64) -> Result<f64> {
    if !(mu > 0.0) {
        return Err(Error::Domain(format!("reduced mass must be positive, got {mu}")));
    }
    let k = cm_to_hartree(second_derivative(p, re));
    if !(k > 0.0) {
        return Err(Error::Analysis(format!("non-positive curvature {k} Eh/a0² at R = {re}")));
    }
    Ok(hartree_to_cm((k / amu_to_me(mu)).sqrt()))
}

/// B_e = ħ²/(2μR_e²), i.e. ħ/(4πcμR_e²) in cm⁻¹. `re` in a₀, `mu` in u.
pub fn rotational_constant(re: f64, mu: f64) -> Result<f64> {
    if !(re > 0.0 && mu > 0.0) {
        return Err(Error::Domain(format!("need positive R_e and mass, got {re}, {mu}")));
    }
    Ok(hartree_to_cm(1.0 / (2.0 * amu_to_me(mu) * re * re)))
}
