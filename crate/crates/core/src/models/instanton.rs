//! The two gauge-bundle connections used in the anomaly cancellation.

use num::Zero;

use crate::exterior::{Basis, Form, FrameAlgebra};
use crate::geometry::{
    gp_ansatz, levi_civita, torsion, torsion_connection, Connection, ConnectionKind, Matrix6,
    TorsionSign,
};
use crate::scalar::{Param, ScalarExpr};
use crate::Q;

use super::family::ModelError;

/// Specification of a gauge-bundle connection.
///
/// `Lambda` is the abelian connection whose nonzero entries are constant
/// multiples of `ē⁶`; `Twin` is the connection with the matrix of the
/// torsion connection `∇⁻` after the parameter renaming `t → a`, `s → d`.
/// `None` keeps a parameter symbolic.
#[derive(Debug, Clone, PartialEq)]
pub enum InstantonSpec {
    Lambda { lambda: Option<[Q; 3]> },
    Twin { a: Option<Q>, d: Option<Q> },
}

/// Symbolic abelian instanton `A_λ` with `λ = (l1, l2, l3)` left symbolic.
pub fn a_lambda_symbolic() -> InstantonSpec {
    InstantonSpec::Lambda { lambda: None }
}

/// Symbolic `(a, d)`-twin of `∇⁻`.
pub fn a_ad_symbolic() -> InstantonSpec {
    InstantonSpec::Twin { a: None, d: None }
}

impl InstantonSpec {
    /// Validated numeric twin; `d = 0` is rejected.
    pub fn twin(a: Q, d: Q) -> Result<Self, ModelError> {
        if d.is_zero() {
            return Err(ModelError::InvalidParameter {
                name: "d",
                reason: "must be nonzero".into(),
            });
        }
        Ok(InstantonSpec::Twin {
            a: Some(a),
            d: Some(d),
        })
    }

    pub fn lambda(lambda: [Q; 3]) -> Self {
        InstantonSpec::Lambda {
            lambda: Some(lambda),
        }
    }

    /// Builds the connection matrix on the given algebra. For `Twin` this is
    /// the algebra's own `∇⁻` with parameters renamed, so on a contracted
    /// algebra the ratio terms are absent, which is exactly the `a/d → 0`
    /// limit of the twin.
    pub fn build(&self, alg: &FrameAlgebra) -> Result<Connection, ModelError> {
        match self {
            InstantonSpec::Lambda { lambda } => Ok(build_a_lambda(lambda.as_ref())),
            InstantonSpec::Twin { a, d } => build_twin(alg, a.as_ref(), d.as_ref()),
        }
    }
}

/// `A_λ`: `ω^1_2 = -ω^2_1 = -ω^3_4 = ω^4_3 = -λ₁ ē⁶`, and likewise for the
/// other two anti-self-dual index pairs with `λ₂`, `λ₃`.
fn build_a_lambda(lambda: Option<&[Q; 3]>) -> Connection {
    let l = |n: usize| -> ScalarExpr {
        match lambda {
            None => ScalarExpr::param([Param::L1, Param::L2, Param::L3][n]),
            Some(v) => ScalarExpr::from_q(v[n].clone()),
        }
    };
    let e6 = Form::basis_elem(Basis::Orthonormal, &[6]);
    let zero = Form::zero(1, Basis::Orthonormal);
    let omega = Matrix6::antisymmetric_from_upper(1, Basis::Orthonormal, |i, j| match (i, j) {
        (1, 2) => e6.scale(&l(0)).neg(),
        (3, 4) => e6.scale(&l(0)),
        (1, 3) => e6.scale(&l(1)).neg(),
        (2, 4) => e6.scale(&l(1)).neg(),
        (1, 4) => e6.scale(&l(2)).neg(),
        (2, 3) => e6.scale(&l(2)),
        _ => zero.clone(),
    });
    Connection::new(ConnectionKind::InstantonLambda, omega).expect("antisymmetric by construction")
}

fn build_twin(alg: &FrameAlgebra, a: Option<&Q>, d: Option<&Q>) -> Result<Connection, ModelError> {
    // The twin's matrix comes from the symbolic template of the algebra's
    // shape (its fiber terms carry a, d in place of the structure constants;
    // the dilaton terms are shared). Building from a numeric instance would
    // collapse the renaming.
    let template = if alg.d_coframe_invariant(5).is_zero() {
        super::family::h3_symbolic()
    } else {
        super::family::h5_symbolic()
    };
    let lc = levi_civita(&template);
    let s = gp_ansatz(&template).map_err(|e| ModelError::InvalidParameter {
        name: "algebra",
        reason: e.to_string(),
    })?;
    let t_bar = torsion(&s, &template);
    let minus = torsion_connection(&lc, &t_bar, TorsionSign::Minus);
    let mut conn = minus.rename_params(
        ConnectionKind::InstantonTwin,
        &[(Param::T, Param::AInst), (Param::S, Param::DInst)],
    );
    if let Some(aq) = a {
        conn = substitute_connection(&conn, Param::AInst, aq)?;
    }
    if let Some(dq) = d {
        if dq.is_zero() {
            return Err(ModelError::InvalidParameter {
                name: "d",
                reason: "must be nonzero".into(),
            });
        }
        conn = substitute_connection(&conn, Param::DInst, dq)?;
    }
    Ok(conn)
}

fn substitute_connection(conn: &Connection, p: Param, value: &Q) -> Result<Connection, ModelError> {
    let repl = ScalarExpr::from_q(value.clone());
    let omega = conn.omega().map(|f| {
        f.map_coeffs(|c| {
            c.substitute_param(p, &repl)
                .expect("nonzero rational substitution")
        })
    });
    Connection::new(conn.kind, omega).map_err(|_| ModelError::InvalidParameter {
        name: "connection",
        reason: "substitution broke antisymmetry".into(),
    })
}
