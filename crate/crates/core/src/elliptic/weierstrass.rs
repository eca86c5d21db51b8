//! Numeric evaluation of the lemniscatic-type Weierstrass function with
//! invariants `g₂ = 4a², g₃ = 0`, i.e. `℘′² = 4℘(℘-a)(℘+a)`.
//!
//! Evaluation strategy: rescale to the unit cubic (`℘(z; a) = a ℘₁(z√a)`),
//! reflect into `(0, τ₊]` using evenness about the half-period, run the
//! Laurent seed through `z^18` inside `|z| ≤ 1/2`, and double back out with
//! the duplication formula `℘(2z) = ¼(℘″/℘′)² − 2℘`, `℘″ = 6℘² − 2`.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EllipticError {
    #[error("root parameter a must be positive, got {0}")]
    NonPositiveRoot(f64),
    #[error("argument {z} outside the fundamental interval (0, {upper})")]
    OutsideDomain { z: f64, upper: f64 },
    #[error("argument {z} within the pole-proximity threshold {threshold}")]
    PoleProximity { z: f64, threshold: f64 },
    #[error("quadrature failed to reach tolerance {0}")]
    QuadratureFailure(f64),
}

/// Scale-invariant pole guard: arguments with `z√a` below this are rejected.
const POLE_THRESHOLD: f64 = 1e-9;

/// Laurent coefficients of the unit cubic (`a = 1`):
/// `℘₁(z) = 1/z² + Σ_k c_k z^{2k}` with `c₁ = 1/5`, `c₂ = 0` and
/// `c_k = 3/((2k+3)(k-2)) Σ_{m=1}^{k-2} c_m c_{k-1-m}`.
fn unit_laurent_coeffs() -> [f64; 10] {
    let mut c = [0.0f64; 10];
    c[1] = 0.2;
    for k in 3..10 {
        let mut s = 0.0;
        for m in 1..(k - 1) {
            s += c[m] * c[k - 1 - m];
        }
        c[k] = 3.0 * s / (((2 * k + 3) * (k - 2)) as f64);
    }
    c
}

/// Series evaluation of `(℘₁, ℘₁′)` inside the seed disk.
fn wp_unit_seed(z: f64) -> (f64, f64) {
    let c = unit_laurent_coeffs();
    let z2 = z * z;
    let mut p = 1.0 / z2;
    let mut dp = -2.0 / (z2 * z);
    let mut zp = z2;
    for (k, ck) in c.iter().enumerate().skip(1) {
        p += ck * zp;
        dp += (2 * k) as f64 * ck * zp / z;
        zp *= z2;
    }
    (p, dp)
}

/// `(℘₁, ℘₁′)` for the unit cubic at `z ∈ (0, τ₊(1)]` via seed + doubling.
fn wp_unit(z: f64) -> (f64, f64) {
    let mut m = 0u32;
    let mut zz = z;
    while zz > 0.5 {
        zz *= 0.5;
        m += 1;
    }
    let (mut p, mut dp) = wp_unit_seed(zz);
    for _ in 0..m {
        let ppp = 6.0 * p * p - 2.0;
        let p2 = 0.25 * (ppp / dp) * (ppp / dp) - 2.0 * p;
        let dp2 = ppp * (12.0 * p * dp * dp - ppp * ppp) / (4.0 * dp * dp * dp) - dp;
        p = p2;
        dp = dp2;
    }
    (p, dp)
}

/// Adaptive Simpson quadrature to absolute tolerance `tol`.
fn adaptive_simpson(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<f64, EllipticError> {
    fn simpson(a: f64, b: f64, fa: f64, fm: f64, f_b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + f_b)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        f_b: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Option<f64> {
        if depth == 0 {
            return None;
        }
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(a, m, fa, flm, fm);
        let right = simpson(m, b, fm, frm, f_b);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol {
            Some(left + right + delta / 15.0)
        } else {
            let l = recurse(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1)?;
            let r = recurse(f, m, b, fm, frm, f_b, right, tol * 0.5, depth - 1)?;
            Some(l + r)
        }
    }
    let fa = f(a);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let fb = f(b);
    let whole = simpson(a, b, fa, fm, fb);
    recurse(&f, a, b, fa, fm, fb, whole, tol, 40).ok_or(EllipticError::QuadratureFailure(tol))
}

/// The real half-period `τ₊(a) = ∫_a^∞ dt / √(4t(t−a)(t+a))`.
///
/// The substitution `t = a/sin²θ` removes both endpoint singularities and
/// factors the scaling law out exactly:
/// `τ₊(a) = (1/√a) ∫_0^{π/2} dθ/√(1+sin²θ)`.
pub fn half_period(a: f64) -> Result<f64, EllipticError> {
    if a <= 0.0 || !a.is_finite() {
        return Err(EllipticError::NonPositiveRoot(a));
    }
    let unit = adaptive_simpson(
        &|theta: f64| {
            let s = theta.sin();
            1.0 / (1.0 + s * s).sqrt()
        },
        0.0,
        std::f64::consts::FRAC_PI_2,
        1e-12,
    )?;
    Ok(unit / a.sqrt())
}

/// Parameters of the cubic `℘′² = 4℘³ − g₂℘` with `g₂ = 4a², g₃ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeierstrassParams {
    a: f64,
    half_period: f64,
}

impl WeierstrassParams {
    pub fn new(a: f64) -> Result<Self, EllipticError> {
        Ok(Self {
            a,
            half_period: half_period(a)?,
        })
    }

    /// The positive cubic root `a` (`℘(τ₊) = a`).
    pub fn root(&self) -> f64 {
        self.a
    }

    pub fn g2(&self) -> f64 {
        4.0 * self.a * self.a
    }

    /// Real half-period `τ₊`.
    pub fn half_period(&self) -> f64 {
        self.half_period
    }

    /// Fundamental real interval between consecutive poles, `(0, 2τ₊)`.
    pub fn period(&self) -> f64 {
        2.0 * self.half_period
    }
}

/// One evaluation of `(℘, ℘′)` with its scaled cubic residual
/// `|℘′² − 4℘³ + 4a²℘| / (1 + |℘|³)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WpValue {
    pub z: f64,
    pub p: f64,
    pub dp: f64,
    pub residual: f64,
}

/// Evaluates `(℘(z), ℘′(z))` for `z` in the fundamental interval
/// `(0, 2τ₊)`; lattice-point neighborhoods are rejected explicitly.
pub fn wp_eval(z: f64, params: &WeierstrassParams) -> Result<WpValue, EllipticError> {
    let upper = params.period();
    if !(z > 0.0 && z < upper) {
        return Err(EllipticError::OutsideDomain { z, upper });
    }
    let a = params.a;
    let sqrt_a = a.sqrt();
    let threshold = POLE_THRESHOLD / sqrt_a;
    if z < threshold || upper - z < threshold {
        return Err(EllipticError::PoleProximity { z, threshold });
    }
    // evenness about the half-period: ℘(2τ₊ − z) = ℘(z), ℘′ flips sign
    let (zr, flip) = if z > params.half_period {
        (upper - z, -1.0)
    } else {
        (z, 1.0)
    };
    let (pu, dpu) = wp_unit(zr * sqrt_a);
    let p = a * pu;
    let dp = flip * a * sqrt_a * dpu;
    let residual = (dp * dp - (4.0 * p * p * p - params.g2() * p)).abs() / (1.0 + p.abs().powi(3));
    Ok(WpValue { z, p, dp, residual })
}

/// `℘″ = 6℘² − 2a²`.
pub fn wp_second_derivative(p: f64, params: &WeierstrassParams) -> f64 {
    6.0 * p * p - 0.5 * params.g2()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Arithmetic-geometric mean, the independent oracle for the lemniscatic
    /// half-period: `τ₊(1) = π / (2 · agm(1, √2))`.
    fn agm(mut x: f64, mut y: f64) -> f64 {
        for _ in 0..40 {
            let (nx, ny) = (0.5 * (x + y), (x * y).sqrt());
            if (nx - ny).abs() < 1e-17 * nx {
                return nx;
            }
            x = nx;
            y = ny;
        }
        x
    }

    /// Frozen from the quadrature oracle run to ten digits: 1.3110287771.
    const TAU_1: f64 = 1.311028777146059905232419794945559706841;

    #[test]
    fn half_period_matches_the_two_oracles() {
        let tau = half_period(1.0).unwrap();
        assert!((tau - TAU_1).abs() < 1e-10, "quadrature {tau}");
        let agm_value = std::f64::consts::PI / (2.0 * agm(1.0, std::f64::consts::SQRT_2));
        assert!((tau - agm_value).abs() < 1e-12, "agm {agm_value} vs {tau}");
    }

    #[test]
    fn half_period_scaling_law() {
        let t1 = half_period(1.0).unwrap();
        let t4 = half_period(4.0).unwrap();
        assert!((t4 - t1 / 2.0).abs() < 1e-10 * t1);
    }

    #[test]
    fn laurent_behavior_near_zero() {
        let params = WeierstrassParams::new(1.0).unwrap();
        let z = 1e-2;
        let v = wp_eval(z, &params).unwrap();
        assert!((v.p * z * z - 1.0).abs() < 1e-7);
        assert!(((v.p - 1.0 / (z * z)) / (z * z) - 0.2).abs() < 1e-6);
    }

    #[test]
    fn value_at_half_period_is_the_root() {
        for a in [1.0, 0.3, 4.0, 17.5] {
            let params = WeierstrassParams::new(a).unwrap();
            let v = wp_eval(params.half_period(), &params).unwrap();
            assert!(
                (v.p - a).abs() < 1e-9 * a.max(1.0),
                "wp(tau) = {} for a = {a}",
                v.p
            );
            assert!(v.dp.abs() < 1e-7 * a.max(1.0).powf(1.5));
        }
    }

    #[test]
    fn cubic_residual_on_a_grid() {
        for a in [1.0, 0.5, 9.0] {
            let params = WeierstrassParams::new(a).unwrap();
            let tau = params.half_period();
            let mut worst = 0.0f64;
            for i in 1..=200 {
                let z = tau * (0.02 + 1.96 * (i as f64) / 201.0);
                let v = wp_eval(z, &params).unwrap();
                worst = worst.max(v.residual);
            }
            assert!(worst < 1e-10, "worst residual {worst} at a = {a}");
        }
    }

    #[test]
    fn strictly_decreasing_to_the_root_and_even_about_it() {
        let params = WeierstrassParams::new(1.0).unwrap();
        let tau = params.half_period();
        let mut prev = f64::INFINITY;
        for i in 1..=60 {
            let z = tau * (i as f64) / 60.0;
            let v = wp_eval(z, &params).unwrap();
            assert!(v.p < prev, "wp must decrease on (0, tau]");
            assert!(v.p >= 1.0 - 1e-12, "wp stays above the root");
            prev = v.p;
        }
        for delta in [0.1, 0.3, 0.7] {
            let a = wp_eval(tau + delta, &params).unwrap();
            let b = wp_eval(tau - delta, &params).unwrap();
            assert!((a.p - b.p).abs() < 1e-9 * (1.0 + a.p.abs()));
            assert!((a.dp + b.dp).abs() < 1e-8 * (1.0 + a.dp.abs()));
        }
    }

    #[test]
    fn domain_and_pole_guards() {
        let params = WeierstrassParams::new(1.0).unwrap();
        assert!(matches!(
            wp_eval(-0.1, &params),
            Err(EllipticError::OutsideDomain { .. })
        ));
        assert!(matches!(
            wp_eval(params.period() + 0.1, &params),
            Err(EllipticError::OutsideDomain { .. })
        ));
        assert!(matches!(
            wp_eval(1e-12, &params),
            Err(EllipticError::PoleProximity { .. })
        ));
        assert!(matches!(
            WeierstrassParams::new(0.0),
            Err(EllipticError::NonPositiveRoot(_))
        ));
    }
}
