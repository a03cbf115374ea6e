//! Small statistics toolbox: log-gamma, regularized incomplete gamma,
//! chi-square tests, Wald intervals, and exact combinatorial counts.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Lanczos approximation (g = 7, 9 terms); |relative error| < 2e-10 on the
/// positive reals, far better away from the poles.
// The published coefficients carry more digits than f64 resolves; keep them
// verbatim so they can be checked against the standard tables.
#[allow(clippy::excessive_precision)]
pub fn ln_gamma(z: f64) -> f64 {
    const C: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if z < 0.5 {
        // Reflection; fine for the small positive arguments we see.
        return std::f64::consts::PI.ln()
            - (std::f64::consts::PI * z).sin().ln()
            - ln_gamma(1.0 - z);
    }
    let z = z - 1.0;
    let mut x = C[0];
    for (i, &c) in C.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
pub fn gamma_p(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0, "gamma_p domain: a={a}, x={x}");
    if x == 0.0 {
        return 0.0;
    }
    if x < a + 1.0 {
        gamma_p_series(a, x)
    } else {
        1.0 - gamma_q_contfrac(a, x)
    }
}

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
pub fn gamma_q(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0, "gamma_q domain: a={a}, x={x}");
    if x == 0.0 {
        return 1.0;
    }
    if x < a + 1.0 {
        1.0 - gamma_p_series(a, x)
    } else {
        gamma_q_contfrac(a, x)
    }
}

fn gamma_p_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut sum = 1.0 / a;
    let mut del = sum;
    for _ in 0..500 {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * 1e-16 {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma(a)).exp()
}

/// Modified Lentz continued fraction for Q(a, x), x >= a + 1.
fn gamma_q_contfrac(a: f64, x: f64) -> f64 {
    const FPMIN: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / FPMIN;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b + an / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x + a * x.ln() - ln_gamma(a)).exp() * h
}

/// Survival function of the chi-square distribution with `dof` degrees of
/// freedom (the p-value of statistic `x`).
pub fn chi_square_sf(x: f64, dof: usize) -> f64 {
    assert!(dof > 0, "chi_square_sf needs dof >= 1");
    gamma_q(dof as f64 / 2.0, x / 2.0)
}

#[derive(Clone, Copy, Debug)]
pub struct ChiSquare {
    pub stat: f64,
    pub dof: usize,
    pub p_value: f64,
}

impl ChiSquare {
    pub fn passes(&self, significance: f64) -> bool {
        self.p_value >= significance
    }
}

/// One-sample test of observed counts against expected *counts* (same total).
/// Cells with zero expectation must have zero observations.
pub fn chi_square_goodness_of_fit(observed: &[u64], expected: &[f64]) -> ChiSquare {
    assert_eq!(observed.len(), expected.len());
    let mut stat = 0.0;
    let mut cells = 0usize;
    for (&o, &e) in observed.iter().zip(expected) {
        if e <= 0.0 {
            assert_eq!(o, 0, "observation in a zero-probability cell");
            continue;
        }
        cells += 1;
        let d = o as f64 - e;
        stat += d * d / e;
    }
    // dof = 0 means a single possible cell: the test is vacuous, p = 1.
    let dof = cells.saturating_sub(1);
    let p_value = if dof == 0 { 1.0 } else { chi_square_sf(stat, dof) };
    ChiSquare { stat, dof, p_value }
}

/// Two-sample chi-square homogeneity test on parallel count vectors.
pub fn chi_square_two_sample(a: &[u64], b: &[u64]) -> ChiSquare {
    assert_eq!(a.len(), b.len());
    let ta: u64 = a.iter().sum();
    let tb: u64 = b.iter().sum();
    assert!(ta > 0 && tb > 0);
    let (ka, kb) = ((tb as f64 / ta as f64).sqrt(), (ta as f64 / tb as f64).sqrt());
    let mut stat = 0.0;
    let mut cells = 0usize;
    for (&x, &y) in a.iter().zip(b) {
        if x + y == 0 {
            continue;
        }
        cells += 1;
        let d = ka * x as f64 - kb * y as f64;
        stat += d * d / (x + y) as f64;
    }
    let dof = cells.saturating_sub(1);
    let p_value = if dof == 0 { 1.0 } else { chi_square_sf(stat, dof) };
    ChiSquare { stat, dof, p_value }
}

pub fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

pub fn ln_choose(n: usize, k: usize) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for j in 0..k {
        num *= BigUint::from(n - j);
        den *= BigUint::from(j + 1);
    }
    num / den
}

/// Number of fixed-point-free permutations of i elements.
pub fn derangements(i: usize) -> BigUint {
    match i {
        0 => BigUint::one(),
        1 => BigUint::zero(),
        _ => {
            let (mut a, mut b) = (BigUint::one(), BigUint::zero()); // D_0, D_1
            for k in 2..=i {
                let next = BigUint::from(k - 1) * (&a + &b);
                a = std::mem::replace(&mut b, next);
            }
            b
        }
    }
}

pub fn biguint_ln(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "ln of zero");
    // Values in this crate stay far below f64 overflow (<= 64! ~ e^297).
    x.to_f64().expect("BigUint out of f64 range").ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn ln_gamma_reference_values() {
        assert!(close(ln_gamma(1.0), 0.0, 1e-12));
        assert!(close(ln_gamma(2.0), 0.0, 1e-12));
        assert!(close(ln_gamma(5.0), 24f64.ln(), 1e-12));
        assert!(close(ln_gamma(0.5), std::f64::consts::PI.sqrt().ln(), 1e-12));
        assert!(close(ln_gamma(12.5), 18.734_347_511_936_445, 1e-9));
    }

    #[test]
    fn chi_square_sf_reference_values() {
        // Classic critical values (quantile tables).
        assert!(close(chi_square_sf(3.841_458_820_694_124, 1), 0.05, 1e-9));
        assert!(close(chi_square_sf(6.634_896_601_021_213, 1), 0.01, 1e-9));
        assert!(close(chi_square_sf(18.307_038_053_275_146, 10), 0.05, 1e-9));
        assert!(close(chi_square_sf(29.588_298_445_074_46, 10), 0.001, 1e-9));
        assert!(close(chi_square_sf(0.0, 5), 1.0, 1e-15));
        assert!(chi_square_sf(1000.0, 3) < 1e-100);
    }

    #[test]
    fn gamma_pq_complement() {
        for &a in &[0.5, 1.0, 2.5, 7.0, 30.0] {
            for &x in &[0.1, 1.0, 5.0, 29.0, 100.0] {
                let (p, q) = (gamma_p(a, x), gamma_q(a, x));
                assert!(close(p + q, 1.0, 1e-12), "a={a} x={x}");
                assert!((0.0..=1.0).contains(&p));
            }
        }
    }

    #[test]
    fn goodness_of_fit_behaviour() {
        // Perfect fit: p-value 1.
        let t = chi_square_goodness_of_fit(&[25, 25, 25, 25], &[25.0; 4]);
        assert!(close(t.stat, 0.0, 1e-12) && close(t.p_value, 1.0, 1e-12));
        assert_eq!(t.dof, 3);
        // Gross misfit: tiny p-value.
        let t = chi_square_goodness_of_fit(&[100, 0, 0, 0], &[25.0; 4]);
        assert!(t.p_value < 1e-10);
        // Single cell: vacuous.
        let t = chi_square_goodness_of_fit(&[7], &[7.0]);
        assert_eq!(t.dof, 0);
        assert!(close(t.p_value, 1.0, 0.0));
    }

    #[test]
    fn two_sample_behaviour() {
        let t = chi_square_two_sample(&[50, 50], &[500, 500]);
        assert!(close(t.stat, 0.0, 1e-9));
        let t = chi_square_two_sample(&[90, 10], &[100, 900]);
        assert!(t.p_value < 1e-10);
    }

    #[test]
    fn combinatorics() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(64, 32).to_string(), "1832624140942590534");
        assert_eq!(derangements(0), BigUint::one());
        assert_eq!(derangements(1), BigUint::zero());
        assert_eq!(derangements(2), BigUint::one());
        assert_eq!(derangements(3), BigUint::from(2u32));
        assert_eq!(derangements(4), BigUint::from(9u32));
        assert_eq!(derangements(5), BigUint::from(44u32));
        assert_eq!(derangements(10), BigUint::from(1_334_961u32));
        assert!(close(
            biguint_ln(&derangements(32)),
            ln_factorial(32) - 1.0,
            1e-9
        ));
        assert!(close(ln_choose(10, 3), 120f64.ln(), 1e-12));
    }
}
