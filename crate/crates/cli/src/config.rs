//! Run configuration: defaults, key-value files, and flag overrides.
//!
//! Precedence, lowest to highest: built-in defaults, `--config` file,
//! `--params` pairs, dedicated flags. Rationals are written `p/q` or `p`.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use nilherm::scalar::{Param, ParamValues};
use nilherm::{q, qi, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyChoice {
    H5,
    H3,
    H5Real,
    Fam1,
    Fam2,
}

impl FamilyChoice {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "h5" => FamilyChoice::H5,
            "h3" => FamilyChoice::H3,
            "h5real" => FamilyChoice::H5Real,
            "fam1" => FamilyChoice::Fam1,
            "fam2" => FamilyChoice::Fam2,
            other => bail!("unknown family `{other}` (h5, h3, h5real, fam1, fam2)"),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyChoice::H5 => "h5",
            FamilyChoice::H3 => "h3",
            FamilyChoice::H5Real => "h5real",
            FamilyChoice::Fam1 => "fam1",
            FamilyChoice::Fam2 => "fam2",
        }
    }
}

/// Fully resolved run parameters.
///
/// Defaults: `t = 1, s = 1, a = 1, d = 1, l1 = l2 = l3 = 1, ap = 1/3`,
/// `exp2f = 1`, family `h5` with `rho = 0, b = 1`, `u = (9/5, 12/5)`,
/// 120 classification draws, tolerance `1e-8`.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub family: FamilyChoice,
    pub rho: u8,
    pub b: Q,
    pub u1: Q,
    pub u2: Q,
    pub t: Q,
    pub s: Q,
    pub a: Q,
    pub d: Q,
    pub lambda: [Q; 3],
    pub alpha_prime: Q,
    /// Constant-profile value of `e^{2f}`.
    pub exp2f: Q,
    pub tolerance: Option<f64>,
    pub draws: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            family: FamilyChoice::H5,
            rho: 0,
            b: qi(1),
            u1: q(9, 5),
            u2: q(12, 5),
            t: qi(1),
            s: qi(1),
            a: qi(1),
            d: qi(1),
            lambda: [qi(1), qi(1), qi(1)],
            alpha_prime: q(1, 3),
            exp2f: qi(1),
            tolerance: None,
            draws: 120,
        }
    }
}

fn parse_q(v: &str) -> Result<Q> {
    v.trim()
        .parse::<Q>()
        .with_context(|| format!("expected a rational `p/q`, got `{v}`"))
}

impl RunConfig {
    pub fn apply_pair(&mut self, key: &str, value: &str) -> Result<()> {
        match key.trim() {
            "family" => self.family = FamilyChoice::parse(value.trim())?,
            "rho" => self.rho = value.trim().parse::<u8>().context("rho must be 0 or 1")?,
            "b" => self.b = parse_q(value)?,
            "u1" => self.u1 = parse_q(value)?,
            "u2" => self.u2 = parse_q(value)?,
            "t" => self.t = parse_q(value)?,
            "s" => self.s = parse_q(value)?,
            "a" => self.a = parse_q(value)?,
            "d" => self.d = parse_q(value)?,
            "l1" => self.lambda[0] = parse_q(value)?,
            "l2" => self.lambda[1] = parse_q(value)?,
            "l3" => self.lambda[2] = parse_q(value)?,
            "ap" | "alpha-prime" => self.alpha_prime = parse_q(value)?,
            "exp2f" => self.exp2f = parse_q(value)?,
            "tolerance" => {
                self.tolerance = Some(
                    value
                        .trim()
                        .parse::<f64>()
                        .context("tolerance must be a float")?,
                )
            }
            "draws" => {
                self.draws = value
                    .trim()
                    .parse::<usize>()
                    .context("draws must be an integer")?
            }
            other => bail!("unknown parameter `{other}`"),
        }
        Ok(())
    }

    /// Applies a comma-separated `k=v` list.
    pub fn apply_params(&mut self, params: &str) -> Result<()> {
        for pair in params.split(',').filter(|p| !p.trim().is_empty()) {
            let (k, v) = pair
                .split_once('=')
                .with_context(|| format!("expected `key=value`, got `{pair}`"))?;
            self.apply_pair(k, v)?;
        }
        Ok(())
    }

    /// Reads a key-value configuration file (`key = value` lines, `#`
    /// comments).
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .with_context(|| format!("{}:{}: expected `key = value`", path.display(), n + 1))?;
            self.apply_pair(k, v)
                .with_context(|| format!("{}:{}", path.display(), n + 1))?;
        }
        Ok(())
    }

    /// Engine parameter assignment for exact evaluation.
    pub fn param_values(&self) -> ParamValues<Q> {
        ParamValues::new()
            .set(Param::T, self.t.clone())
            .set(Param::S, self.s.clone())
            .set(Param::AInst, self.a.clone())
            .set(Param::DInst, self.d.clone())
            .set(Param::L1, self.lambda[0].clone())
            .set(Param::L2, self.lambda[1].clone())
            .set(Param::L3, self.lambda[2].clone())
            .set(Param::AlphaPrime, self.alpha_prime.clone())
    }

    /// The same assignment as doubles.
    pub fn param_values_f64(&self) -> ParamValues<f64> {
        use nilherm::scalar::q_to_f64 as f;
        ParamValues::new()
            .set(Param::T, f(&self.t))
            .set(Param::S, f(&self.s))
            .set(Param::AInst, f(&self.a))
            .set(Param::DInst, f(&self.d))
            .set(Param::L1, f(&self.lambda[0]))
            .set(Param::L2, f(&self.lambda[1]))
            .set(Param::L3, f(&self.lambda[2]))
            .set(Param::AlphaPrime, f(&self.alpha_prime))
    }

    /// Key-value rendering of the run parameters for the report payload.
    pub fn describe(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("family".into(), self.family.name().into());
        m.insert("t".into(), self.t.to_string());
        m.insert("s".into(), self.s.to_string());
        m.insert("a".into(), self.a.to_string());
        m.insert("d".into(), self.d.to_string());
        m.insert(
            "lambda".into(),
            format!("({},{},{})", self.lambda[0], self.lambda[1], self.lambda[2]),
        );
        m.insert("ap".into(), self.alpha_prime.to_string());
        m
    }

    /// Builds the configured numeric family instance.
    pub fn build_family(&self) -> Result<nilherm::exterior::FrameAlgebra> {
        use nilherm::models::{build_family, FamilySpec};
        let spec = match self.family {
            FamilyChoice::H5 => FamilySpec::Fam1 {
                rho: 0,
                b: qi(1),
                s: self.s.clone(),
                t: self.t.clone(),
            },
            FamilyChoice::H3 => FamilySpec::Fam1 {
                rho: 0,
                b: qi(0),
                s: self.s.clone(),
                t: self.t.clone(),
            },
            FamilyChoice::H5Real => FamilySpec::H5Real { t: self.t.clone() },
            FamilyChoice::Fam1 => FamilySpec::Fam1 {
                rho: self.rho,
                b: self.b.clone(),
                s: self.s.clone(),
                t: self.t.clone(),
            },
            FamilyChoice::Fam2 => FamilySpec::Fam2 {
                rho: self.rho,
                b: self.b.clone(),
                t: self.t.clone(),
                u1: self.u1.clone(),
                u2: self.u2.clone(),
                s: self.s.clone(),
            },
        };
        Ok(build_family(&spec)?)
    }

    /// The symbolic algebra matching the `--family` choice, for the
    /// identity checks (`h5` unless the contracted family was selected).
    pub fn symbolic_algebra(&self) -> nilherm::exterior::FrameAlgebra {
        match self.family {
            FamilyChoice::H3 => nilherm::models::h3_symbolic(),
            _ => nilherm::models::h5_symbolic(),
        }
    }
}
