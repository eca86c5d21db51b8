//! The named verification suites behind `nilherm verify`.

use nilherm::elliptic::{
    verify_profile_pde_f64, verify_profile_pde_rational, wp_eval, Profile, ProfileEquation,
    WeierstrassParams,
};
use nilherm::exterior::{Basis, Form, FrameAlgebra};
use nilherm::geometry::{
    curvature, curvature_exchange_residual, d_torsion, gp_ansatz, instanton_residual, levi_civita,
    pontrjagin, pontrjagin_coefficient, strominger_residual, torsion, torsion_connection,
    Connection, CurvatureMatrix, Matrix6, SU3Structure, TorsionSign,
};
use nilherm::models::{
    a_lambda_symbolic, build_family, classify, contract_to_h3, h3_symbolic, h5_symbolic,
    ode_identity_checks, p1_difference, t2_kappa2, FamilySpec,
};
use nilherm::scalar::{Param, ParamValues, ScalarExpr};
use nilherm::{q, qi, reference, Q};
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;
use crate::report::{CheckResult, Kind, Report, Residual, Status};

pub const CHECK_IDS: &[&str] = &[
    "torsion",
    "d-torsion",
    "connection",
    "curvature",
    "pontrjagin",
    "p1-difference",
    "curvature-exchange",
    "instanton",
    "strominger",
    "classification",
    "weierstrass",
    "solutions",
    "reduction",
    "contraction",
];

struct Stack {
    alg: FrameAlgebra,
    structure: SU3Structure,
    t_bar: Form,
    lc: Connection,
    minus: Connection,
    r_minus: CurvatureMatrix,
}

fn stack(alg: FrameAlgebra) -> Stack {
    let structure = gp_ansatz(&alg).expect("adapted family");
    let t_bar = torsion(&structure, &alg);
    let lc = levi_civita(&alg);
    let minus = torsion_connection(&lc, &t_bar, TorsionSign::Minus);
    let r_minus = curvature(&minus, &alg);
    Stack {
        alg,
        structure,
        t_bar,
        lc,
        minus,
        r_minus,
    }
}

fn exact_form_check(id: &str, engine: &Form, expected: &Form) -> CheckResult {
    match engine.sub(expected) {
        Ok(residual) if residual.is_zero() => CheckResult::symbolic(id),
        Ok(residual) => CheckResult::fail_symbolic(id, residual.to_string(), Vec::new()),
        Err(e) => CheckResult::fail_symbolic(id, e.to_string(), Vec::new()),
    }
}

fn check_torsion(_: &RunConfig) -> CheckResult {
    let s = stack(h5_symbolic());
    exact_form_check("torsion", &s.t_bar, &reference::torsion_display())
}

fn check_d_torsion(_: &RunConfig) -> CheckResult {
    let s = stack(h5_symbolic());
    match d_torsion(&s.t_bar, &s.alg) {
        Ok(dt) => {
            let mut result = exact_form_check("d-torsion", &dt, &reference::d_torsion_display());
            let f0 = dt.at_zero_dilaton().coefficient(&[1, 2, 3, 4]);
            result = result.with_detail(format!("value at constant dilaton: ({f0})*e1234"));
            result
        }
        Err(e) => CheckResult::fail_symbolic("d-torsion", e.to_string(), Vec::new()),
    }
}

fn matrix_display_check(
    id: &str,
    engine: &dyn Fn(u8, u8) -> Form,
    golden: Vec<((u8, u8), Form)>,
    degree: u8,
) -> CheckResult {
    let table: std::collections::BTreeMap<(u8, u8), Form> = golden.into_iter().collect();
    let mut deviations = Vec::new();
    for (i, j) in Matrix6::<Form>::upper_pairs() {
        let expected = table
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| Form::zero(degree, Basis::Orthonormal));
        let got = engine(i, j);
        if got != expected {
            deviations.push(format!("[{i}][{j}]: engine {got}"));
        }
    }
    if deviations.is_empty() {
        CheckResult::symbolic(id).with_detail("all 15 upper-triangle entries exact")
    } else {
        CheckResult::fail_symbolic(
            id,
            format!("{} deviating entries", deviations.len()),
            deviations,
        )
    }
}

fn check_connection(_: &RunConfig) -> CheckResult {
    let s = stack(h5_symbolic());
    matrix_display_check(
        "connection",
        &|i, j| s.minus.entry(i, j).clone(),
        reference::connection_minus_display(),
        1,
    )
}

fn check_curvature(_: &RunConfig) -> CheckResult {
    let s = stack(h5_symbolic());
    matrix_display_check(
        "curvature",
        &|i, j| s.r_minus.entry(i, j).clone(),
        reference::curvature_minus_display(),
        2,
    )
}

fn check_pontrjagin(_: &RunConfig) -> CheckResult {
    let s = stack(h5_symbolic());
    let p_minus = match pontrjagin_coefficient(&pontrjagin(&s.r_minus)) {
        Ok(p) => p,
        Err(e) => return CheckResult::fail_symbolic("pontrjagin", e.to_string(), Vec::new()),
    };
    let c_norm = match p_minus.rational_multiple_of(&reference::p1_bracket()) {
        Some(c) => c,
        None => {
            return CheckResult::fail_symbolic(
                "pontrjagin",
                "no rational multiple of the bracket".into(),
                Vec::new(),
            )
        }
    };
    let gauge = a_lambda_symbolic()
        .build(&s.alg)
        .expect("abelian instanton");
    let p_gauge = pontrjagin(&curvature(&gauge, &s.alg)).to_basis(Basis::Invariant);
    let mut result = exact_form_check("pontrjagin", &p_gauge, &reference::p1_lambda_display());
    result = result.with_constant("c_norm", &c_norm);
    result.with_detail("bracket matched monomial-for-monomial; abelian display exact")
}

fn check_p1_difference(_: &RunConfig) -> CheckResult {
    let diff = match p1_difference(&h5_symbolic()) {
        Ok(d) => d,
        Err(e) => return CheckResult::fail_symbolic("p1-difference", e.to_string(), Vec::new()),
    };
    let engine_c = match diff.constant {
        Some(c) => c,
        None => {
            return CheckResult::fail_symbolic(
                "p1-difference",
                "difference does not factor through (t²κ² − a²τ²)Δe^{-2f}".into(),
                Vec::new(),
            )
        }
    };
    let claimed = reference::p1_difference_display().coefficient(&[1, 2, 3, 4]);
    let claimed_c = claimed
        .rational_multiple_of(&diff.factor)
        .expect("claimed display factors through the same product");
    let mut result = CheckResult::symbolic("p1-difference")
        .with_constant("difference_constant", &engine_c)
        .with_constant("claimed_constant", &claimed_c);
    if engine_c != claimed_c {
        result.status = Status::Discrepancy;
        result = result.with_detail(format!(
            "engine derives {engine_c}, claimed display carries {claimed_c}; \
             the engine value is internally consistent with its own curvature"
        ));
    }
    result
}

fn check_curvature_exchange(_: &RunConfig) -> CheckResult {
    let s = stack(h5_symbolic());
    let plus = torsion_connection(&s.lc, &s.t_bar, TorsionSign::Plus);
    let r_plus = curvature(&plus, &s.alg);
    let dt = match d_torsion(&s.t_bar, &s.alg) {
        Ok(dt) => dt,
        Err(e) => {
            return CheckResult::fail_symbolic("curvature-exchange", e.to_string(), Vec::new())
        }
    };
    let violations = curvature_exchange_residual(&r_plus, &s.r_minus, &dt);
    if violations.is_empty() {
        CheckResult::symbolic("curvature-exchange")
            .with_detail("1296 frame quadruples exactly zero")
    } else {
        let details = violations
            .iter()
            .take(8)
            .map(|(idx, r)| format!("{idx:?}: {r}"))
            .collect();
        CheckResult::fail_symbolic(
            "curvature-exchange",
            format!("{} violating quadruples", violations.len()),
            details,
        )
    }
}

fn check_instanton(_: &RunConfig) -> CheckResult {
    let s = stack(h5_symbolic());
    let mut details = Vec::new();

    let gauge = a_lambda_symbolic()
        .build(&s.alg)
        .expect("abelian instanton");
    let res_gauge = instanton_residual(&curvature(&gauge, &s.alg), &s.structure);
    if !res_gauge.is_zero() {
        return CheckResult::fail_symbolic(
            "instanton",
            "abelian instanton residual nonzero".into(),
            Vec::new(),
        );
    }
    details.push("abelian connection: residual exactly zero".into());

    let res_minus = instanton_residual(&s.r_minus, &s.structure);
    let closure =
        &(&ScalarExpr::exp_f(2).laplacian() + &t2_kappa2().scale_int(8)) * &ScalarExpr::exp_f(-4);
    let proportional = res_minus.j_invariance.entries().all(|(_, _, f)| {
        f.components()
            .all(|(_, c)| c.rational_multiple_of(&closure).is_some())
    }) && res_minus
        .trace
        .entries()
        .all(|(_, _, c)| c.is_zero() || c.rational_multiple_of(&closure).is_some());
    if !proportional || res_minus.is_zero() {
        return CheckResult::fail_symbolic(
            "instanton",
            "minus-connection residual not proportional to the torsion closure".into(),
            Vec::new(),
        );
    }
    details.push("minus connection: residual ∝ Δe^{2f} + 8t²κ²".into());

    let plus_zero_at_f0 = |alg: &FrameAlgebra| {
        let st = gp_ansatz(alg).expect("adapted");
        let tb = torsion(&st, alg);
        let lc = levi_civita(alg);
        let r = curvature(&torsion_connection(&lc, &tb, TorsionSign::Plus), alg);
        let res = instanton_residual(&r, &st);
        res.j_invariance
            .entries()
            .all(|(_, _, f)| f.at_zero_dilaton().is_zero())
            && res
                .trace
                .entries()
                .all(|(_, _, c)| c.at_zero_dilaton().is_zero())
    };
    if !plus_zero_at_f0(&h3_symbolic()) {
        return CheckResult::fail_symbolic(
            "instanton",
            "plus connection fails on the contracted family at constant dilaton".into(),
            Vec::new(),
        );
    }
    if plus_zero_at_f0(&h5_symbolic()) {
        return CheckResult::fail_symbolic(
            "instanton",
            "plus connection unexpectedly an instanton on h5".into(),
            Vec::new(),
        );
    }
    details.push(
        "plus connection: instanton exactly on the contracted family at constant dilaton".into(),
    );
    let mut result = CheckResult::symbolic("instanton");
    result.details = details;
    result
}

fn check_strominger(_: &RunConfig) -> CheckResult {
    let s = stack(h5_symbolic());
    let res = match strominger_residual(&s.structure, &s.alg) {
        Ok(r) => r,
        Err(e) => return CheckResult::fail_symbolic("strominger", e.to_string(), Vec::new()),
    };
    if !res.is_zero() {
        return CheckResult::fail_symbolic("strominger", res.to_string(), Vec::new());
    }
    let mut details = vec!["dilatino residual exactly zero (symbolic dilaton)".into()];
    let df = s.alg.d(s.structure.kaehler_form());
    let balanced = df
        .wedge(s.structure.kaehler_form())
        .map(|w| w.at_zero_dilaton().is_zero())
        .unwrap_or(false)
        && s.alg.d(s.structure.psi_plus()).at_zero_dilaton().is_zero()
        && s.alg.d(s.structure.psi_minus()).at_zero_dilaton().is_zero();
    if !balanced {
        return CheckResult::fail_symbolic(
            "strominger",
            "balance conditions fail at constant dilaton".into(),
            Vec::new(),
        );
    }
    details.push("balanced at constant dilaton: dF∧F = dΨ⁺ = dΨ⁻ = 0".into());
    let theta = match nilherm::geometry::lee_form(&s.structure, &s.alg) {
        Ok(t) => t,
        Err(e) => return CheckResult::fail_symbolic("strominger", e.to_string(), Vec::new()),
    };
    let expected = Form::parse(
        "2*f1*exp(-f)*eb1 + 2*f2*exp(-f)*eb2 + 2*f3*exp(-f)*eb3 + 2*f4*exp(-f)*eb4",
        Basis::Orthonormal,
    )
    .expect("static form");
    if theta != expected {
        return CheckResult::fail_symbolic(
            "strominger",
            format!("lee form {theta} differs from twice the dilaton gradient"),
            Vec::new(),
        );
    }
    details.push("lee form equals 2Σfᵢeⁱ".into());
    let mut result = CheckResult::symbolic("strominger");
    result.details = details;
    result
}

fn check_classification(cfg: &RunConfig) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11CE);
    let nonzero = |range: i64, rng: &mut ChaCha8Rng| loop {
        let v = rng.gen_range(-range..=range);
        if v != 0 {
            return qi(v);
        }
    };
    let mut checked = 0usize;
    while checked < cfg.draws {
        let pick: u8 = rng.gen_range(0..3);
        let (spec, rho) = match pick {
            0 => (
                FamilySpec::H5Real {
                    t: nonzero(9, &mut rng),
                },
                None,
            ),
            1 => {
                let rho = rng.gen_range(0..=1u8);
                (
                    FamilySpec::Fam1 {
                        rho,
                        b: q(rng.gen_range(-6..=6), rng.gen_range(1..=3)),
                        s: nonzero(9, &mut rng),
                        t: nonzero(9, &mut rng),
                    },
                    Some(rho),
                )
            }
            _ => {
                let rho = rng.gen_range(0..=1u8);
                let k = rng.gen_range(1..=4i64);
                (
                    FamilySpec::Fam2 {
                        rho,
                        b: q(rng.gen_range(-4..=4), rng.gen_range(1..=3)),
                        t: nonzero(9, &mut rng),
                        u1: q(3 * k, 5),
                        u2: q(4 * k, 5),
                        s: q(5 * (k + rng.gen_range(1..=3)), 4),
                    },
                    Some(rho),
                )
            }
        };
        let alg = match build_family(&spec) {
            Ok(a) => a,
            Err(_) => continue,
        };
        let c = classify(&alg);
        let expected_adapted = rho == Some(0);
        if c.asd != c.abelian || c.asd != expected_adapted {
            return CheckResult::fail_symbolic(
                "classification",
                format!("counterexample at {spec:?}: {c:?}"),
                Vec::new(),
            );
        }
        checked += 1;
    }
    CheckResult::symbolic("classification")
        .with_param("draws", checked)
        .with_detail("asd ⇔ abelian ⇔ ρ = 0 on every instance")
}

fn check_weierstrass(cfg: &RunConfig) -> CheckResult {
    let tol = cfg.tolerance.unwrap_or(1e-10);
    let params = match WeierstrassParams::new(1.0) {
        Ok(p) => p,
        Err(e) => return CheckResult::fail_symbolic("weierstrass", e.to_string(), Vec::new()),
    };
    let tau = params.half_period();
    let mut worst = 0.0f64;
    for i in 1..=200 {
        let z = tau * (0.02 + 1.96 * (i as f64) / 201.0);
        match wp_eval(z, &params) {
            Ok(v) => worst = worst.max(v.residual),
            Err(e) => return CheckResult::fail_symbolic("weierstrass", e.to_string(), Vec::new()),
        }
    }
    let mut result = CheckResult::numeric("weierstrass", worst, tol);
    let at_tau = wp_eval(tau, &params).expect("half period in range");
    if (at_tau.p - 1.0).abs() >= 1e-9 {
        result.status = Status::Fail;
        result = result.with_detail(format!("wp at the half period: {}", at_tau.p));
    }
    let z = 1e-2;
    let v = wp_eval(z, &params).expect("small z in range");
    let laurent = (v.p - 1.0 / (z * z)) / (z * z);
    if (laurent - 0.2).abs() >= 1e-6 {
        result.status = Status::Fail;
        result = result.with_detail(format!("laurent coefficient {laurent}"));
    }
    let tau4 = nilherm::elliptic::half_period(4.0).expect("valid root");
    if (tau4 - tau / 2.0).abs() >= 1e-10 {
        result.status = Status::Fail;
        result = result.with_detail("scaling law violated");
    }
    result
        .with_constant("half_period", format!("{tau:.12}"))
        .with_detail("cubic residual over a 200-point grid; half-period, series and scaling checks")
}

fn check_solutions(cfg: &RunConfig) -> CheckResult {
    let tol = cfg.tolerance.unwrap_or(1e-8);
    // elliptic profile against the engine-derived one-variable equation
    let kappa_sq = 1.0 + nilherm::scalar::q_to_f64(&(qi(1) / (&cfg.s * &cfg.s))) / 2.0;
    let tf = nilherm::scalar::q_to_f64(&cfg.t);
    let a_w = (3.0 * tf * tf * kappa_sq).sqrt();
    let wp_params = match WeierstrassParams::new(a_w) {
        Ok(p) => p,
        Err(e) => return CheckResult::fail_symbolic("solutions", e.to_string(), Vec::new()),
    };
    let tau = wp_params.half_period();
    let profile = Profile::Weierstrass {
        params: wp_params,
        alpha: 1.0,
    };
    let fparams = ParamValues::new()
        .set(Param::T, tf)
        .set(Param::S, nilherm::scalar::q_to_f64(&cfg.s))
        .set(Param::Alpha, 1.0);
    let grid: Vec<f64> = (0..200)
        .map(|i| tau * (0.1 + 1.8 * (i as f64) / 199.0))
        .collect();
    let r_ode = match verify_profile_pde_f64(&profile, ProfileEquation::AnomalyOde, &grid, &fparams)
    {
        Ok(r) => r,
        Err(e) => return CheckResult::fail_symbolic("solutions", e.to_string(), Vec::new()),
    };
    let mut result = CheckResult::numeric("solutions", r_ode, tol);
    result = result.with_detail(format!(
        "elliptic profile: anomaly ODE residual {r_ode:.3e}"
    ));

    // fundamental-solution profile: both Laplace equations, exact
    let inv = Profile::InverseSquare {
        alpha_prime: cfg.alpha_prime.clone(),
        center: [qi(2), qi(0), qi(0), qi(0)],
    };
    let qparams = ParamValues::new().set(Param::AlphaPrime, cfg.alpha_prime.clone());
    let points: Vec<[Q; 4]> = (0..50)
        .map(|k| {
            [
                q(k % 7 - 3, 5),
                q((k / 2) % 5 - 2, 4),
                q((k / 3) % 5 - 2, 7),
                q(k % 3, 8),
            ]
        })
        .collect();
    for eqn in [
        ProfileEquation::HarmonicExp,
        ProfileEquation::InverseLaplacian,
    ] {
        match verify_profile_pde_rational(&inv, eqn, &points, &qparams) {
            Ok(r) if r.is_zero() => {}
            Ok(r) => {
                result.status = Status::Fail;
                result = result.with_detail(format!("{}: exact residual {r}", eqn.name()));
            }
            Err(e) => {
                result.status = Status::Fail;
                result = result.with_detail(format!("{}: {e}", eqn.name()));
            }
        }
    }
    result = result.with_detail("inverse-square profile: Laplace pair exact at 50 rational points");

    // quadratic profile: twin instanton equation, exact
    let quad = Profile::Quadratic {
        a: cfg.a.clone(),
        d: cfg.d.clone(),
    };
    let qparams = ParamValues::new()
        .set(Param::AInst, cfg.a.clone())
        .set(Param::DInst, cfg.d.clone());
    let ball: Vec<[Q; 4]> = (0..50)
        .map(|k| {
            [
                q(k % 5 - 2, 9),
                q((k / 2) % 5 - 2, 8),
                q((k / 4) % 3 - 1, 7),
                q((k / 8) % 3 - 1, 11),
            ]
        })
        .collect();
    match verify_profile_pde_rational(&quad, ProfileEquation::GaugeInstanton, &ball, &qparams) {
        Ok(r) if r.is_zero() => {
            result = result.with_detail("quadratic profile: twin instanton equation exact");
        }
        Ok(r) => {
            result.status = Status::Fail;
            result = result.with_detail(format!("quadratic profile: exact residual {r}"));
        }
        Err(e) => {
            result.status = Status::Fail;
            result = result.with_detail(format!("quadratic profile: {e}"));
        }
    }
    result
}

fn check_reduction(_: &RunConfig) -> CheckResult {
    let report = match ode_identity_checks() {
        Ok(r) => r,
        Err(e) => return CheckResult::fail_symbolic("reduction", e.to_string(), Vec::new()),
    };
    let mut result = if report.all_passed() {
        CheckResult::symbolic("reduction")
    } else {
        let details = report
            .identities
            .iter()
            .filter(|i| !i.passed)
            .map(|i| format!("{}: {}", i.name, i.residual))
            .collect();
        CheckResult::fail_symbolic("reduction", "identity failures".into(), details)
    };
    if let Some(c) = &report.c_norm {
        result = result.with_constant("c_norm", c);
    }
    for id in &report.identities {
        if id.passed {
            result = result.with_detail(format!("{}: exact", id.name));
        }
    }
    result
}

fn check_contraction(_: &RunConfig) -> CheckResult {
    let h5 = h5_symbolic();
    let h3 = match contract_to_h3(&h5) {
        Ok(a) => a,
        Err(e) => return CheckResult::fail_symbolic("contraction", e.to_string(), Vec::new()),
    };
    let mut details = Vec::new();
    // structure equations of the contracted algebra
    if !h3.d_coframe_invariant(5).is_zero() {
        return CheckResult::fail_symbolic(
            "contraction",
            "de⁵ ≠ 0 after contraction".into(),
            Vec::new(),
        );
    }
    details.push("contracted structure equations: de⁵ = 0, de⁶ = -2t(e¹²-e³⁴)".into());
    // torsion commutes with the contraction
    let s5 = gp_ansatz(&h5).expect("adapted");
    let s3 = gp_ansatz(&h3).expect("adapted");
    let t5 = torsion(&s5, &h5);
    let t3 = torsion(&s3, &h3);
    let dropped = t5.map_coeffs(|c| {
        let mut out = ScalarExpr::zero();
        for (key, coeff) in c.terms() {
            if key.params.exponent(Param::S) == 0 {
                out = &out
                    + &ScalarExpr::term(
                        coeff.clone(),
                        key.params.clone(),
                        key.exp_pow,
                        key.jets.clone(),
                    );
            }
        }
        out
    });
    if t3 != dropped {
        return CheckResult::fail_symbolic(
            "contraction",
            "torsion does not commute with the contraction".into(),
            Vec::new(),
        );
    }
    details.push("torsion commutes with the contraction".into());
    // the closure constant degenerates to 8t²
    let dt = match d_torsion(&t3, &h3) {
        Ok(d) => d,
        Err(e) => return CheckResult::fail_symbolic("contraction", e.to_string(), Vec::new()),
    };
    let expected =
        -&(&ScalarExpr::exp_f(2).laplacian() + &ScalarExpr::param_pow(Param::T, 2).scale_int(8));
    if dt.coefficient(&[1, 2, 3, 4]) != expected {
        return CheckResult::fail_symbolic(
            "contraction",
            "contracted closure constant differs from 8t²".into(),
            Vec::new(),
        );
    }
    details.push("closure constant contracts to 8t² (κ² → 1)".into());
    let mut result = CheckResult::symbolic("contraction");
    result.details = details;
    result
}

type CheckFn = fn(&RunConfig) -> CheckResult;

fn lookup(id: &str) -> Option<CheckFn> {
    Some(match id {
        "torsion" => check_torsion,
        "d-torsion" => check_d_torsion,
        "connection" => check_connection,
        "curvature" => check_curvature,
        "pontrjagin" => check_pontrjagin,
        "p1-difference" => check_p1_difference,
        "curvature-exchange" => check_curvature_exchange,
        "instanton" => check_instanton,
        "strominger" => check_strominger,
        "classification" => check_classification,
        "weierstrass" => check_weierstrass,
        "solutions" => check_solutions,
        "reduction" => check_reduction,
        "contraction" => check_contraction,
        _ => return None,
    })
}

/// Runs the selected checks in a work pool; the report preserves the
/// requested order. `Err` carries the unknown id (a usage error).
pub fn run_checks(ids: &[String], cfg: &RunConfig) -> Result<Report, String> {
    let resolved: Vec<(String, CheckFn)> = ids
        .iter()
        .map(|id| {
            lookup(id)
                .map(|f| (id.clone(), f))
                .ok_or_else(|| id.clone())
        })
        .collect::<Result<_, _>>()?;
    use rayon::prelude::*;
    let mut checks: Vec<CheckResult> = resolved.par_iter().map(|(_, f)| f(cfg)).collect();
    // attach the run parameters once per check for the payload
    for c in &mut checks {
        for (k, v) in cfg.describe() {
            c.params.entry(k).or_insert(v);
        }
    }
    Ok(Report::new(checks))
}

/// Numeric `(z, ℘, ℘′, residual)` rows for the `wp` subcommand.
pub fn wp_table(a_w: f64, grid: usize) -> Result<Vec<(f64, f64, f64, f64)>, String> {
    let params = WeierstrassParams::new(a_w).map_err(|e| e.to_string())?;
    let tau = params.half_period();
    let mut rows = Vec::with_capacity(grid);
    for i in 1..=grid {
        let z = tau * (0.02 + 1.96 * (i as f64) / (grid as f64 + 1.0));
        let v = wp_eval(z, &params).map_err(|e| e.to_string())?;
        rows.push((v.z, v.p, v.dp, v.residual));
    }
    Ok(rows)
}

pub use crate::anomaly::run_anomaly;

/// Classification of the configured family instance (single draw).
pub fn run_classify(cfg: &RunConfig) -> Result<CheckResult, String> {
    let alg = cfg.build_family().map_err(|e| e.to_string())?;
    let c = classify(&alg);
    let mut result = CheckResult::symbolic("classify");
    result.kind = Kind::SymbolicExact;
    result.residual = Residual::exact_zero();
    if c.asd != c.abelian {
        result.status = Status::Fail;
    }
    Ok(result
        .with_detail(format!("family instance: {}", alg.name()))
        .with_detail(format!("asd: {}, abelian: {}", c.asd, c.abelian)))
}
