//! Metric connections, curvature and Pontrjagin forms.
//!
//! Index conventions: `ω^i_j(ē_k) = ḡ(∇_{ē_k} ē_j, ē_i)` in the orthonormal
//! frame, so the stored matrix satisfies `ω^i_j = -ω^j_i`. Curvature is
//! `Ω^i_j = dω^i_j + ω^i_k ∧ ω^k_j` and the (4,0)-curvature is read as
//! `R(ē_i,ē_j,ē_k,ē_l) = Ω^l_k(ē_i,ē_j)`.

use thiserror::Error;

use crate::exterior::{Basis, Form, FormError, FrameAlgebra, MultiIndex};
use crate::par;
use crate::scalar::ScalarExpr;

use super::su3::SU3Structure;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("matrix constructed with ω^{i}_{j} ≠ -ω^{j}_{i}")]
    NotAntisymmetric { i: u8, j: u8 },
    #[error("Pontrjagin form has components off e^1234: {components}")]
    PontrjaginSupport { components: String },
    #[error(transparent)]
    Form(#[from] FormError),
}

/// A 6×6 matrix of values indexed `1..=6`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix6<T> {
    data: Vec<T>,
}

impl<T: Clone> Matrix6<T> {
    pub fn from_fn(mut f: impl FnMut(u8, u8) -> T) -> Self {
        let mut data = Vec::with_capacity(36);
        for i in 1..=6u8 {
            for j in 1..=6u8 {
                data.push(f(i, j));
            }
        }
        Self { data }
    }

    pub fn entry(&self, i: u8, j: u8) -> &T {
        &self.data[(i as usize - 1) * 6 + (j as usize - 1)]
    }

    pub fn entries(&self) -> impl Iterator<Item = (u8, u8, &T)> {
        self.data
            .iter()
            .enumerate()
            .map(|(n, v)| ((n / 6 + 1) as u8, (n % 6 + 1) as u8, v))
    }

    /// Index pairs `i < j`.
    pub fn upper_pairs() -> Vec<(u8, u8)> {
        let mut v = Vec::with_capacity(15);
        for i in 1..=6u8 {
            for j in (i + 1)..=6u8 {
                v.push((i, j));
            }
        }
        v
    }
}

impl Matrix6<Form> {
    /// Builds an antisymmetric matrix from its strict upper triangle.
    pub fn antisymmetric_from_upper(
        degree: u8,
        basis: Basis,
        mut upper: impl FnMut(u8, u8) -> Form,
    ) -> Self {
        let mut rows: Vec<Form> = vec![Form::zero(degree, basis); 36];
        for (i, j) in Self::upper_pairs() {
            let f = upper(i, j);
            rows[(j as usize - 1) * 6 + (i as usize - 1)] = f.neg();
            rows[(i as usize - 1) * 6 + (j as usize - 1)] = f;
        }
        Self { data: rows }
    }

    pub fn verify_antisymmetry(&self) -> Result<(), GeometryError> {
        for (i, j) in Self::upper_pairs() {
            let sum = self.entry(i, j).add(self.entry(j, i))?;
            if !sum.is_zero() {
                return Err(GeometryError::NotAntisymmetric { i, j });
            }
        }
        Ok(())
    }

    pub fn map(&self, f: impl Fn(&Form) -> Form) -> Self {
        Self {
            data: self.data.iter().map(f).collect(),
        }
    }
}

/// Provenance label of a connection matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectionKind {
    LeviCivita,
    /// `∇⁺`, skew torsion `+T̄`.
    Plus,
    /// `∇⁻`, skew torsion `-T̄`.
    Minus,
    /// The abelian gauge connection with coefficient vector λ.
    InstantonLambda,
    /// The `(a, d)`-twin of `∇⁻` on the gauge bundle.
    InstantonTwin,
}

/// A metric connection as its matrix of 1-forms in the orthonormal coframe.
#[derive(Debug, Clone)]
pub struct Connection {
    pub kind: ConnectionKind,
    omega: Matrix6<Form>,
}

impl Connection {
    pub fn new(kind: ConnectionKind, omega: Matrix6<Form>) -> Result<Self, GeometryError> {
        omega.verify_antisymmetry()?;
        Ok(Self { kind, omega })
    }

    pub fn omega(&self) -> &Matrix6<Form> {
        &self.omega
    }

    pub fn entry(&self, i: u8, j: u8) -> &Form {
        self.omega.entry(i, j)
    }

    /// Renames parameters in every entry (used for the gauge-bundle twin).
    pub fn rename_params(
        &self,
        kind: ConnectionKind,
        renames: &[(crate::scalar::Param, crate::scalar::Param)],
    ) -> Self {
        let omega = self.omega.map(|f| {
            let mut g = f.clone();
            for &(from, to) in renames {
                g = g.rename_param(from, to);
            }
            g
        });
        Self { kind, omega }
    }
}

/// Curvature 2-forms `Ω^i_j` of a connection.
#[derive(Debug, Clone)]
pub struct CurvatureMatrix {
    pub kind: ConnectionKind,
    omega: Matrix6<Form>,
}

impl CurvatureMatrix {
    pub fn matrix(&self) -> &Matrix6<Form> {
        &self.omega
    }

    pub fn entry(&self, i: u8, j: u8) -> &Form {
        self.omega.entry(i, j)
    }

    /// `R(ē_i, ē_j, ē_k, ē_l) = Ω^l_k(ē_i, ē_j)`.
    pub fn riemann(&self, i: u8, j: u8, k: u8, l: u8) -> ScalarExpr {
        self.entry(l, k).evaluate_on_frame(&[i, j])
    }
}

/// Levi-Civita connection of the orthonormal coframe, from the Koszul
/// formula
/// `ω^i_j(ē_k) = ½( dē^i(ē_j,ē_k) − dē^k(ē_i,ē_j) + dē^j(ē_k,ē_i) )`.
pub fn levi_civita(alg: &FrameAlgebra) -> Connection {
    let omega = Matrix6::antisymmetric_from_upper(1, Basis::Orthonormal, |i, j| {
        let mut entry = Form::zero(1, Basis::Orthonormal);
        for k in 1..=6u8 {
            let di = alg.d_coframe_orthonormal(i).evaluate_on_frame(&[j, k]);
            let dk = alg.d_coframe_orthonormal(k).evaluate_on_frame(&[i, j]);
            let dj = alg.d_coframe_orthonormal(j).evaluate_on_frame(&[k, i]);
            let c = (&(&di - &dk) + &dj).scale_q(&crate::q(1, 2));
            entry = entry
                .add(&Form::monomial(Basis::Orthonormal, &[k], c))
                .expect("1-form accumulation");
        }
        entry
    });
    Connection {
        kind: ConnectionKind::LeviCivita,
        omega,
    }
}

/// Sign of the torsion added to the Levi-Civita connection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionSign {
    /// `∇⁺ = ∇ᵍ + ½T̄`, totally skew torsion `+T̄`.
    Plus,
    /// `∇⁻ = ∇ᵍ − ½T̄`, totally skew torsion `−T̄`.
    Minus,
}

/// The metric connection with totally skew torsion `±T̄`:
/// `ω^i_j(ē_k) = (ω^ḡ)^i_j(ē_k) ± ½ T̄(ē_k, ē_j, ē_i)`,
/// the torsion 3-form paired with the derivative direction in its first slot.
pub fn torsion_connection(lc: &Connection, t_bar: &Form, sign: TorsionSign) -> Connection {
    let half = match sign {
        TorsionSign::Plus => crate::q(1, 2),
        TorsionSign::Minus => crate::q(-1, 2),
    };
    let omega = Matrix6::antisymmetric_from_upper(1, Basis::Orthonormal, |i, j| {
        let mut entry = lc.entry(i, j).clone();
        for k in 1..=6u8 {
            let t = t_bar.evaluate_on_frame(&[k, j, i]).scale_q(&half);
            entry = entry
                .add(&Form::monomial(Basis::Orthonormal, &[k], t))
                .expect("1-form accumulation");
        }
        entry
    });
    Connection {
        kind: match sign {
            TorsionSign::Plus => ConnectionKind::Plus,
            TorsionSign::Minus => ConnectionKind::Minus,
        },
        omega,
    }
}

/// Curvature `Ω^i_j = dω^i_j + ω^i_k ∧ ω^k_j`; the independent entries are
/// computed in parallel.
pub fn curvature(c: &Connection, alg: &FrameAlgebra) -> CurvatureMatrix {
    let pairs = Matrix6::<Form>::upper_pairs();
    let entries = par::map_collect(pairs.clone(), |(i, j)| {
        let mut omega_ij = alg.d(c.entry(i, j));
        for k in 1..=6u8 {
            let w = c.entry(i, k).wedge(c.entry(k, j)).expect("same basis");
            omega_ij = omega_ij.add(&w).expect("2-form accumulation");
        }
        omega_ij
    });
    let mut table: std::collections::BTreeMap<(u8, u8), Form> =
        pairs.into_iter().zip(entries).collect();
    let omega = Matrix6::antisymmetric_from_upper(2, Basis::Orthonormal, |i, j| {
        table.remove(&(i, j)).expect("computed entry")
    });
    CurvatureMatrix {
        kind: c.kind,
        omega,
    }
}

/// `Σ_{i<j} Ω^i_j ∧ Ω^i_j`, the 4-form representing `8π² p₁` of the
/// connection, in the orthonormal coframe.
pub fn pontrjagin(r: &CurvatureMatrix) -> Form {
    let pieces = par::map_collect(Matrix6::<Form>::upper_pairs(), |(i, j)| {
        r.entry(i, j).wedge(r.entry(i, j)).expect("same basis")
    });
    let mut acc = Form::zero(4, Basis::Orthonormal);
    for p in pieces {
        acc = acc.add(&p).expect("4-form accumulation");
    }
    acc
}

/// The `e^{1234}` coefficient of a Pontrjagin 4-form, after conversion to
/// the invariant coframe; errors if any other component survives.
pub fn pontrjagin_coefficient(p: &Form) -> Result<ScalarExpr, GeometryError> {
    let inv = p.to_basis(Basis::Invariant);
    let e1234 = MultiIndex::new(&[1, 2, 3, 4]);
    let stray: Vec<String> = inv
        .components()
        .filter(|(idx, _)| **idx != e1234)
        .map(|(idx, c)| format!("({c})*e{idx}"))
        .collect();
    if !stray.is_empty() {
        return Err(GeometryError::PontrjaginSupport {
            components: stray.join(" + "),
        });
    }
    Ok(inv.coefficient(&[1, 2, 3, 4]))
}

/// Residuals of the SU(3)-instanton condition for a curvature matrix:
/// entrywise `F(J·,J·) − F(·,·)` and the Kähler trace `Σ_k F(ē_k, Jē_k)`.
/// Both vanish identically exactly when the connection is an instanton.
#[derive(Debug, Clone)]
pub struct InstantonResidual {
    pub j_invariance: Matrix6<Form>,
    pub trace: Matrix6<ScalarExpr>,
}

impl InstantonResidual {
    pub fn is_zero(&self) -> bool {
        self.j_invariance.entries().all(|(_, _, f)| f.is_zero())
            && self.trace.entries().all(|(_, _, c)| c.is_zero())
    }
}

pub fn instanton_residual(r: &CurvatureMatrix, s: &SU3Structure) -> InstantonResidual {
    let j = s.complex_structure();
    let j_invariance = Matrix6::from_fn(|i, jj| {
        let f = r.entry(i, jj);
        // (JF)(X,Y) = F(JX,JY) on 2-forms
        f.apply_j().sub(f).expect("same basis and degree")
    });
    let trace = Matrix6::from_fn(|i, jj| {
        let f = r.entry(i, jj);
        let mut acc = ScalarExpr::zero();
        for k in 1..=6u8 {
            let (jk, sign) = j.frame_vector(k);
            acc = &acc + &f.evaluate_on_frame(&[k, jk]).scale_int(sign as i64);
        }
        acc
    });
    InstantonResidual {
        j_invariance,
        trace,
    }
}

/// Frame-quadruple residuals of the curvature-exchange identity
/// `R⁺(X,Y,Z,U) − R⁻(Z,U,X,Y) = ½ dT̄(X,Y,Z,U)`.
///
/// Returns the quadruples where the residual is nonzero (empty = identity
/// holds); all 6⁴ quadruples are checked, in parallel.
pub fn curvature_exchange_residual(
    r_plus: &CurvatureMatrix,
    r_minus: &CurvatureMatrix,
    d_torsion: &Form,
) -> Vec<([u8; 4], ScalarExpr)> {
    let dt = d_torsion.to_basis(Basis::Orthonormal);
    let mut quads = Vec::with_capacity(1296);
    for i in 1..=6u8 {
        for j in 1..=6u8 {
            for k in 1..=6u8 {
                for l in 1..=6u8 {
                    quads.push([i, j, k, l]);
                }
            }
        }
    }
    let results = par::map_collect(quads, |[i, j, k, l]| {
        let lhs = &r_plus.riemann(i, j, k, l) - &r_minus.riemann(k, l, i, j);
        let half_dt = dt.evaluate_on_frame(&[i, j, k, l]).scale_q(&crate::q(1, 2));
        let res = &lhs - &half_dt;
        ([i, j, k, l], res)
    });
    results.into_iter().filter(|(_, r)| !r.is_zero()).collect()
}
