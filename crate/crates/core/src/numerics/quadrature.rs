//! Gauss-Legendre rules, composite panels, semi-infinite ladders and
//! globally adaptive integration.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
pub fn gauss_legendre_reference(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::Config("quadrature order must be positive".into()));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess for the i-th largest root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok((nodes, weights))
}

/// P_n(x) and P_n'(x) by the three-term recurrence.
pub(crate) fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = next;
    }
    let d = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, d)
}

/// A fixed set of nodes and weights on a (possibly unbounded) domain.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    lower: f64,
    upper: f64,
}

impl QuadratureRule {
    /// n-point Gauss-Legendre rule mapped to [a, b].
    pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Result<Self> {
        Self::composite(&[a, b], n)
    }

    /// Gauss-Legendre panels of the given order between consecutive breakpoints.
    pub fn composite(breaks: &[f64], order: usize) -> Result<Self> {
        if breaks.len() < 2 {
            return Err(Error::Config("need at least two breakpoints".into()));
        }
        if breaks.iter().any(|b| !b.is_finite()) || breaks.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config(
                "breakpoints must be finite and strictly increasing".into(),
            ));
        }
        let (rn, rw) = gauss_legendre_reference(order)?;
        let mut nodes = Vec::with_capacity(order * (breaks.len() - 1));
        let mut weights = Vec::with_capacity(nodes.capacity());
        for w in breaks.windows(2) {
            let half = 0.5 * (w[1] - w[0]);
            let mid = 0.5 * (w[1] + w[0]);
            for (x, wt) in rn.iter().zip(&rw) {
                nodes.push(mid + half * x);
                weights.push(half * wt);
            }
        }
        Ok(Self {
            nodes,
            weights,
            lower: breaks[0],
            upper: breaks[breaks.len() - 1],
        })
    }

    /// Rule for [a, inf) suited to integrands decaying like exp(-(x - a)/scale):
    /// panels [a, a+s], [a+s, a+2s], [a+2s, a+4s], ... up to a + 64s.
    pub fn exponential_tail(a: f64, scale: f64, order: usize) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() || !a.is_finite() {
            return Err(Error::Config(
                "tail rule needs finite start and positive scale".into(),
            ));
        }
        let mut breaks = vec![a];
        breaks.extend((0..7).map(|k| a + scale * f64::from(1u32 << k)));
        let mut rule = Self::composite(&breaks, order)?;
        rule.upper = f64::INFINITY;
        Ok(rule)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lower, self.upper)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Apply the rule to `f`; fails if any sample is non-finite.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> Result<f64> {
        let mut sum = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            let v = f(x);
            if !v.is_finite() {
                return Err(Error::NonFinite(format!("integrand at x = {x}")));
            }
            sum += w * v;
        }
        Ok(sum)
    }
}

/// Free-function form of [`QuadratureRule::integrate`].
pub fn integrate<F: FnMut(f64) -> f64>(f: F, rule: &QuadratureRule) -> Result<f64> {
    rule.integrate(f)
}

const ADAPT_ORDER: usize = 10;
const MAX_SEGMENTS: usize = 20_000;

struct Segment {
    a: f64,
    b: f64,
    left: f64,
    right: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

struct Panel<'a> {
    nodes: &'a [f64],
    weights: &'a [f64],
}

impl Panel<'_> {
    /// Returns (integral, integral of |f|).
    fn apply<F: FnMut(f64) -> f64>(&self, f: &mut F, a: f64, b: f64) -> Result<(f64, f64)> {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut s = 0.0;
        let mut m = 0.0;
        for (x, w) in self.nodes.iter().zip(self.weights) {
            let xv = mid + half * x;
            let v = f(xv);
            if !v.is_finite() {
                return Err(Error::NonFinite(format!("integrand at x = {xv}")));
            }
            s += w * v;
            m += w * v.abs();
        }
        Ok((half * s, half.abs() * m))
    }
}

fn make_segment<F: FnMut(f64) -> f64>(
    panel: &Panel,
    f: &mut F,
    a: f64,
    b: f64,
    whole: f64,
) -> Result<Segment> {
    let mid = 0.5 * (a + b);
    let (left, ml) = panel.apply(f, a, mid)?;
    let (right, mr) = panel.apply(f, mid, b)?;
    let mut err = (left + right - whole).abs();
    if err <= 4.0 * f64::EPSILON * (ml + mr) {
        err = 0.0;
    }
    Ok(Segment {
        a,
        b,
        left,
        right,
        err,
    })
}

/// Globally adaptive Gauss-Legendre integration of `f` over a finite [a, b].
///
/// Stops when the estimated error is below `max(abs_tol, rel_tol * |I|)`.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::Config(
            "adaptive integration needs finite limits".into(),
        ));
    }
    if a == b {
        return Ok(0.0);
    }
    let (rn, rw) = gauss_legendre_reference(ADAPT_ORDER)?;
    let panel = Panel {
        nodes: &rn,
        weights: &rw,
    };
    let (whole, _) = panel.apply(&mut f, a, b)?;
    let mut heap = BinaryHeap::new();
    let first = make_segment(&panel, &mut f, a, b, whole)?;
    let mut total = first.left + first.right;
    let mut total_err = first.err;
    heap.push(first);
    while total_err > abs_tol.max(rel_tol * total.abs()) {
        if heap.len() >= MAX_SEGMENTS {
            return Err(Error::Convergence {
                iterations: heap.len(),
                residual: total_err,
            });
        }
        let seg = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            // Cannot split further; accept what we have.
            total_err -= seg.err;
            heap.push(Segment { err: 0.0, ..seg });
            continue;
        }
        let l = make_segment(&panel, &mut f, seg.a, mid, seg.left)?;
        let r = make_segment(&panel, &mut f, mid, seg.b, seg.right)?;
        total += l.left + l.right + r.left + r.right - seg.left - seg.right;
        total_err += l.err + r.err - seg.err;
        heap.push(l);
        heap.push(r);
        if total_err < 0.0 {
            total_err = heap.iter().map(|s| s.err).sum();
        }
    }
    Ok(heap.iter().map(|s| s.left + s.right).sum())
}

/// Integrate `f` over [a, inf): adaptive on [a, a + scale], then panels of
/// doubling width until a panel contributes less than 1e-14 of the running total.
pub fn integrate_semi_infinite<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    scale: f64,
    rel_tol: f64,
) -> Result<f64> {
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::Config("decay scale must be positive".into()));
    }
    let mut total = integrate_adaptive(&mut f, a, a + scale, 0.0, rel_tol)?;
    let mut lo = a + scale;
    let mut width = scale;
    let mut quiet = 0;
    for _ in 0..400 {
        let hi = lo + width;
        let piece = integrate_adaptive(&mut f, lo, hi, 0.01 * rel_tol * total.abs(), rel_tol)?;
        total += piece;
        if piece.abs() <= 1e-14 * total.abs() {
            quiet += 1;
            if quiet >= 2 {
                return Ok(total);
            }
        } else {
            quiet = 0;
        }
        lo = hi;
        width *= 2.0;
        if !lo.is_finite() {
            break;
        }
    }
    Err(Error::Convergence {
        iterations: 400,
        residual: f64::NAN,
    })
}
