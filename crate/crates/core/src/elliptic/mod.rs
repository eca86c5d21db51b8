//! Numeric evaluation of the elliptic profile machinery.

mod profile;
mod weierstrass;

pub use profile::{
    verify_profile_pde_f64, verify_profile_pde_rational, DilatonJet, Profile, ProfileEquation,
    ProfileError,
};
pub use weierstrass::{
    half_period, wp_eval, wp_second_derivative, EllipticError, WeierstrassParams, WpValue,
};

#[cfg(test)]
mod tests {
    use num::Zero;

    use crate::scalar::{Param, ParamValues};
    use crate::{q, qi, Q};

    use super::*;

    #[test]
    fn inverse_square_spot_jet() {
        // at x − b = (1,0,0,0) with α' = 1/3: e^{2f} = 1, f₁ = −1, f₁₁ = 1,
        // f₂₂ = f₃₃ = f₄₄ = −1, and Δe^{-2f} = 8
        let profile = Profile::InverseSquare {
            alpha_prime: q(1, 3),
            center: [qi(0), qi(0), qi(0), qi(0)],
        };
        let jet = profile.jet_rational(&[qi(1), qi(0), qi(0), qi(0)]).unwrap();
        assert_eq!(jet.exp2f, qi(1));
        assert_eq!(jet.grad[0], qi(-1));
        assert_eq!(jet.hess[0][0], qi(1));
        assert_eq!(jet.hess[1][1], qi(-1));
        assert_eq!(jet.hess[2][2], qi(-1));
        assert_eq!(jet.hess[3][3], qi(-1));
        let lap = crate::scalar::ScalarExpr::exp_f(-2).laplacian();
        let v = lap
            .eval_rational(&jet.bindings(), &ParamValues::new())
            .unwrap();
        assert_eq!(v, qi(8));
    }

    #[test]
    fn quadratic_center_laplacian() {
        // Δe^{2f} = −8a²τ² everywhere; check at the center
        let profile = Profile::Quadratic { a: qi(2), d: qi(3) };
        let jet = profile.jet_rational(&[qi(0), qi(0), qi(0), qi(0)]).unwrap();
        let lap = crate::scalar::ScalarExpr::exp_f(2).laplacian();
        let v = lap
            .eval_rational(&jet.bindings(), &ParamValues::new())
            .unwrap();
        // a²τ² = 4·(1 + 1/18) = 38/9, so Δe^{2f} = −8·38/9 = −304/9
        assert_eq!(v, q(-304, 9));
    }

    #[test]
    fn constant_profile_has_zero_jets() {
        let profile = Profile::Constant { exp2f: q(9, 4) };
        let jet = profile.jet_rational(&[qi(0), qi(1), qi(0), qi(0)]).unwrap();
        assert!(jet.grad.iter().all(|g| g.is_zero()));
        assert!(jet.hess.iter().flatten().all(|h| h.is_zero()));
        assert!(matches!(
            Profile::Constant { exp2f: qi(-1) }.jet_rational(&std::array::from_fn(|_| qi(0))),
            Err(ProfileError::Parameter(_))
        ));
    }

    #[test]
    fn profile_domain_errors() {
        let q4 = |a: i64, b: i64, c: i64, d: i64| [qi(a), qi(b), qi(c), qi(d)];
        let quad = Profile::Quadratic { a: qi(1), d: qi(1) };
        assert!(matches!(
            quad.jet_rational(&q4(1, 1, 0, 0)),
            Err(ProfileError::Domain(_))
        ));
        let inv = Profile::InverseSquare {
            alpha_prime: qi(1),
            center: q4(1, 2, 0, 0),
        };
        assert!(matches!(
            inv.jet_rational(&q4(1, 2, 0, 0)),
            Err(ProfileError::Domain(_))
        ));
        let wp = Profile::Weierstrass {
            params: WeierstrassParams::new(1.0).unwrap(),
            alpha: 1.0,
        };
        assert!(matches!(
            wp.jet_rational(&q4(1, 0, 0, 0)),
            Err(ProfileError::NotRational)
        ));
    }

    /// Deterministic rational sample points inside the unit ball minus the
    /// center, usable by every rational profile check.
    fn rational_points(n: usize) -> Vec<[Q; 4]> {
        let mut pts = Vec::with_capacity(n);
        let mut k: i64 = 1;
        while pts.len() < n {
            // small rational 4-tuples with 0 < |x|² < 1
            let cand = [
                q(k % 5 - 2, 7),
                q((k / 2) % 5 - 2, 8),
                q((k / 4) % 3 - 1, 9),
                q((k / 8) % 3 - 1, 11),
            ];
            let norm2: Q = cand.iter().map(|v| v * v).sum();
            if !norm2.is_zero() && norm2 < qi(1) {
                pts.push(cand);
            }
            k += 1;
        }
        pts
    }

    #[test]
    fn inverse_square_satisfies_both_laplace_equations_exactly() {
        let profile = Profile::InverseSquare {
            alpha_prime: q(1, 3),
            center: [qi(2), qi(0), qi(0), qi(0)],
        };
        let params = ParamValues::new().set(Param::AlphaPrime, q(1, 3));
        let pts = rational_points(50);
        let r1 = verify_profile_pde_rational(&profile, ProfileEquation::HarmonicExp, &pts, &params)
            .unwrap();
        assert!(r1.is_zero(), "Δe^{{2f}} residual {r1}");
        let r2 =
            verify_profile_pde_rational(&profile, ProfileEquation::InverseLaplacian, &pts, &params)
                .unwrap();
        assert!(r2.is_zero(), "Δe^{{-2f}} residual {r2}");
    }

    #[test]
    fn quadratic_satisfies_the_gauge_instanton_equation_exactly() {
        let profile = Profile::Quadratic {
            a: q(3, 2),
            d: qi(2),
        };
        let params = ParamValues::new()
            .set(Param::AInst, q(3, 2))
            .set(Param::DInst, qi(2));
        let pts = rational_points(50);
        let r =
            verify_profile_pde_rational(&profile, ProfileEquation::GaugeInstanton, &pts, &params)
                .unwrap();
        assert!(r.is_zero(), "residual {r}");
    }

    #[test]
    fn weierstrass_profile_satisfies_the_first_integral_and_the_ode() {
        // t = 1, s = 1 → κ² = 3/2; α = 1 → a_W = √(3κ²) = √4.5
        let a_w = 4.5f64.sqrt();
        let params_wp = WeierstrassParams::new(a_w).unwrap();
        let tau = params_wp.half_period();
        let profile = Profile::Weierstrass {
            params: params_wp,
            alpha: 1.0,
        };
        let params = ParamValues::new()
            .set(Param::T, 1.0)
            .set(Param::S, 1.0)
            .set(Param::Alpha, 1.0);
        let grid: Vec<f64> = (0..=120)
            .map(|i| tau * (0.1 + 1.8 * (i as f64) / 120.0))
            .collect();
        let r_cubic = verify_profile_pde_f64(
            &profile,
            ProfileEquation::FirstIntegralCubic,
            &grid,
            &params,
        )
        .unwrap();
        assert!(r_cubic < 1e-9, "first-integral residual {r_cubic}");
        let r_ode =
            verify_profile_pde_f64(&profile, ProfileEquation::AnomalyOde, &grid, &params).unwrap();
        assert!(r_ode < 1e-8, "anomaly ODE residual {r_ode}");
    }

    #[test]
    fn v_slice_satisfies_the_descending_cubic_by_finite_differences() {
        // v(y) = a²/℘(y) solves (v')² = −4v(v−a)(v+a); checked with central
        // differences of step h = |z|·cbrt(eps)
        let params = WeierstrassParams::new(1.0).unwrap();
        let tau = params.half_period();
        let a = params.root();
        let mut worst = 0.0f64;
        for i in 1..=50 {
            let z = tau * (0.15 + 1.7 * (i as f64) / 51.0);
            let h = z * f64::EPSILON.cbrt();
            let v = |zz: f64| a * a / wp_eval(zz, &params).unwrap().p;
            let dv = (v(z + h) - v(z - h)) / (2.0 * h);
            let vz = v(z);
            let res = dv * dv + 4.0 * vz * (vz - a) * (vz + a);
            worst = worst.max(res.abs());
        }
        assert!(worst < 1e-6, "v-slice residual {worst}");
    }
}
