//! Bracketed scalar root finding.

use crate::error::{Error, Result};

/// Brent's method on a sign-changing bracket, falling back to bisection
/// whenever the interpolation step misbehaves.
///
/// Terminates when `|f(x)| <= f_tol` or the bracket is narrower than `x_tol`.
pub fn find_root<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    lo: f64,
    hi: f64,
    x_tol: f64,
    f_tol: f64,
) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if !fa.is_finite() || !fb.is_finite() {
        return Err(Error::NonFinite("root function at bracket end".into()));
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket { lo, hi });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..300 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * x_tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb.abs() <= f_tol {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b)?;
        if !fb.is_finite() {
            return Err(Error::NonFinite(format!("root function at x = {b}")));
        }
    }
    Err(Error::Convergence {
        iterations: 300,
        residual: fb.abs(),
    })
}

/// Widen `[lo, hi]` geometrically about its midpoint until `f` changes sign.
pub fn expand_bracket<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    max_steps: usize,
) -> Result<(f64, f64)> {
    let mut flo = f(lo)?;
    let mut fhi = f(hi)?;
    for _ in 0..max_steps {
        if flo.signum() != fhi.signum() || flo == 0.0 || fhi == 0.0 {
            return Ok((lo, hi));
        }
        let width = hi - lo;
        if flo.abs() < fhi.abs() {
            lo -= width;
            flo = f(lo)?;
        } else {
            hi += width;
            fhi = f(hi)?;
        }
    }
    Err(Error::Bracket { lo, hi })
}
