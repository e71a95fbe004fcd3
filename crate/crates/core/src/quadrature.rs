//! Adaptive Simpson quadrature.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Absolute tolerance for the whole closed curve.
    pub tolerance: f64,
    /// Maximum bisection depth per segment.
    pub max_depth: u32,
    /// Every segment is bisected at least this many times before the error
    /// estimate is trusted, so periodic integrands cannot fool the first
    /// three-point estimate.
    pub min_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            max_depth: 20,
            min_depth: 4,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

impl Panel {
    fn new<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fb: f64) -> Self {
        let fm = f(0.5 * (a + b));
        Self {
            a,
            b,
            fa,
            fm,
            fb,
            whole: (b - a) * (fa + 4.0 * fm + fb) / 6.0,
        }
    }
}

struct Outcome {
    value: f64,
    /// Largest unmet error estimate among panels that hit the depth limit.
    worst_excess: Option<f64>,
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Fails with [`Error::QuadratureNonConvergence`] when some panel still
/// misses its share of the tolerance at `max_depth`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, config: &QuadratureConfig) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let top = Panel::new(&f, a, b, f(a), f(b));
    let out = refine(&f, top, tol, 0, config);
    match out.worst_excess {
        None => Ok(out.value),
        Some(estimate) => Err(Error::QuadratureNonConvergence {
            start: a,
            end: b,
            estimate,
            tolerance: tol,
        }),
    }
}

fn refine<F: Fn(f64) -> f64>(f: &F, p: Panel, tol: f64, depth: u32, config: &QuadratureConfig) -> Outcome {
    let m = 0.5 * (p.a + p.b);
    let left = Panel::new(f, p.a, m, p.fa, p.fm);
    let right = Panel::new(f, m, p.b, p.fm, p.fb);
    let halves = left.whole + right.whole;
    let diff = halves - p.whole;
    let estimate = diff.abs() / 15.0;

    if !halves.is_finite() {
        return Outcome {
            value: halves,
            worst_excess: Some(f64::INFINITY),
        };
    }
    if depth >= config.min_depth && estimate <= tol {
        return Outcome {
            value: halves + diff / 15.0,
            worst_excess: None,
        };
    }
    if depth >= config.max_depth {
        return Outcome {
            value: halves + diff / 15.0,
            worst_excess: Some(estimate),
        };
    }
    let l = refine(f, left, 0.5 * tol, depth + 1, config);
    let r = refine(f, right, 0.5 * tol, depth + 1, config);
    Outcome {
        value: l.value + r.value,
        worst_excess: match (l.worst_excess, r.worst_excess) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, y) => x.or(y),
        },
    }
}

/// Fixed composite Simpson rule with `panels` equal panels (each using a midpoint).
pub fn composite_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut sum = f(a) + f(b);
    for k in 0..panels {
        let left = a + h * k as f64;
        sum += 4.0 * f(left + 0.5 * h);
        if k > 0 {
            sum += 2.0 * f(left);
        }
    }
    sum * h / 6.0
}
