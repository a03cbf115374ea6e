//! Root finding for the sampler's per-class weight cubic.
//!
//! The class envelope B_i(r) (see the sampler module) depends on the
//! Bernoulli odds r = p/q through
//!
//!   ln B_i(r) = const − e ln r + N ln(1+r) + M·[ln(r²+1) − 2 ln(1+r)],
//!
//! with N = C(n, 2) and M = i(2n−i−2)/4 ≥ 0. Setting the derivative to zero
//! and clearing denominators gives the stationarity cubic
//!
//!   N r (r²+1) − e (r+1)(r²+1) + 2M r (r−1) = 0,
//!
//! expanded to (N−e) r³ + (C−e) r² + (N−e−C) r − e with C = 2M. Because
//! ln B_i → ∞ at both r → 0⁺ and r → ∞, the cubic has one or three positive
//! roots (minimum, or minimum/maximum/minimum); the caller evaluates the
//! envelope at each and keeps the global minimizer. At i = 0 the cubic
//! factors as (r²+1)((N−e) r − e), giving exactly r = e/(N−e).
//!
//! Roots come from the closed-form solution of the depressed cubic (Cardano
//! for one real root, the trigonometric method for three), polished with a
//! few Newton steps on the original polynomial.

use crate::error::{Error, Result};

/// Tolerated relative residual after polishing.
const RESIDUAL_TOL: f64 = 1e-9;

/// All positive stationary points of the class envelope, ascending.
/// Always non-empty on success.
pub fn solve_weight_cubic(n: usize, e: usize, i: usize) -> Result<Vec<f64>> {
    let npairs = n * (n - 1) / 2;
    if e == 0 || e >= npairs {
        return Err(Error::range(
            "cubic edge count",
            format!("e={e} outside 0 < e < {npairs}"),
        ));
    }
    let nf = npairs as f64;
    let ef = e as f64;
    // C = 2M = i(2n−i−2)/2, the moved-pair count over two.
    let c = (i * (2 * n - i - 2)) as f64 / 2.0;
    let (c3, c2, c1, c0) = (nf - ef, c - ef, nf - ef - c, -ef);
    let f = |r: f64| ((c3 * r + c2) * r + c1) * r + c0;
    let df = |r: f64| (3.0 * c3 * r + 2.0 * c2) * r + c1;

    let mut roots = cubic_real_roots(c3, c2, c1, c0);
    // Polish with Newton; the closed forms lose a few digits when roots
    // nearly collide.
    for r in &mut roots {
        for _ in 0..3 {
            let d = df(*r);
            if d.abs() > 0.0 {
                let step = f(*r) / d;
                if step.is_finite() {
                    *r -= step;
                }
            }
        }
    }
    roots.retain(|&r| r > 0.0 && r.is_finite());
    roots.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * b.abs().max(1.0));
    let tol = RESIDUAL_TOL * c3.abs().max(c2.abs()).max(c1.abs()).max(c0.abs());
    roots.retain(|&r| f(r).abs() <= tol * (1.0 + r * r * r));
    if roots.is_empty() {
        return Err(Error::NoRoot { n, e, i });
    }
    Ok(roots)
}

/// Real roots of c3 x³ + c2 x² + c1 x + c0 (c3 ≠ 0), unpolished.
fn cubic_real_roots(c3: f64, c2: f64, c1: f64, c0: f64) -> Vec<f64> {
    // Depress: x = t − b/3 with monic coefficients b, c, d.
    let b = c2 / c3;
    let c = c1 / c3;
    let d = c0 / c3;
    let shift = b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let half_q = q / 2.0;
    let third_p = p / 3.0;
    let disc = half_q * half_q + third_p * third_p * third_p;
    if disc > 0.0 {
        // One real root (Cardano).
        let s = disc.sqrt();
        let t = (-half_q + s).cbrt() + (-half_q - s).cbrt();
        vec![t - shift]
    } else if disc == 0.0 {
        if q == 0.0 {
            vec![-shift]
        } else {
            // Double root and a simple root.
            let u = (-half_q).cbrt();
            vec![2.0 * u - shift, -u - shift]
        }
    } else {
        // Three distinct real roots (trigonometric method); p < 0 here.
        let rho = (-third_p).sqrt();
        let theta = (half_q / (rho * rho * rho)).clamp(-1.0, 1.0).acos() / 3.0;
        let tau = 2.0 * std::f64::consts::FRAC_PI_3;
        (0..3)
            .map(|k| -2.0 * rho * (theta - tau * k as f64).cos() - shift)
            .collect()
    }
}
