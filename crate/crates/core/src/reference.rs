//! Closed-form reference displays that the engine re-derives.
//!
//! The golden files under `golden/` hold, in the documented text grammar,
//! the expected torsion, connection, curvature and Pontrjagin expressions of
//! the symbolic h5 family. Comparisons are algebraic (parse, normalize,
//! subtract), so the files can be written in readable, undistributed order.

use crate::exterior::{Basis, Form, FormError};
use crate::scalar::{parse_scalar, ScalarExpr};

pub const TORSION: &str = include_str!("../golden/torsion.golden");
pub const D_TORSION: &str = include_str!("../golden/d_torsion.golden");
pub const CONNECTION_MINUS: &str = include_str!("../golden/connection_minus.golden");
pub const CURVATURE_MINUS: &str = include_str!("../golden/curvature_minus.golden");
pub const P1_BRACKET: &str = include_str!("../golden/p1_bracket.golden");
pub const P1_LAMBDA: &str = include_str!("../golden/p1_lambda.golden");
pub const P1_DIFFERENCE: &str = include_str!("../golden/p1_difference.golden");

/// The torsion 3-form display, orthonormal basis.
pub fn torsion_display() -> Form {
    Form::parse(TORSION, Basis::Orthonormal).expect("golden torsion parses")
}

/// The `dT` display, invariant basis.
pub fn d_torsion_display() -> Form {
    Form::parse(D_TORSION, Basis::Invariant).expect("golden d_torsion parses")
}

/// The nonzero upper-triangle entries of the displayed torsion connection.
pub fn connection_minus_display() -> MatrixEntries {
    parse_matrix_entries(CONNECTION_MINUS, Basis::Orthonormal).expect("golden connection parses")
}

/// The nonzero upper-triangle entries of the displayed curvature matrix.
pub fn curvature_minus_display() -> MatrixEntries {
    parse_matrix_entries(CURVATURE_MINUS, Basis::Orthonormal).expect("golden curvature parses")
}

/// The expanded Pontrjagin bracket, parsed from the golden file.
pub fn p1_bracket_golden() -> ScalarExpr {
    parse_scalar(P1_BRACKET).expect("golden p1 bracket parses")
}

/// The Pontrjagin bracket built structurally:
/// `Σ_{i<j}( det₂(f,i,j) + ∂_j(f_i²f_j) + ∂_i(f_i f_j²) ) + Σ_i ∂_i(f_i³)
///  − (3/2) t²κ² Δe^{-2f}`,
/// where `det₂(f,i,j) = f_ii f_jj − f_ij²` is the 2×2 Hessian minor.
pub fn p1_bracket() -> ScalarExpr {
    let f = |i: u8| ScalarExpr::jet(&[i]);
    let ff = |i: u8, j: u8| ScalarExpr::jet(&[i, j]);
    let mut acc = ScalarExpr::zero();
    for i in 1..=4u8 {
        for j in (i + 1)..=4u8 {
            let minor = &(&ff(i, i) * &ff(j, j)) - &(&ff(i, j) * &ff(i, j));
            let grad1 = (&f(i).pow(2) * &f(j)).partial(j);
            let grad2 = (&f(i) * &f(j).pow(2)).partial(i);
            acc = &acc + &(&(&minor + &grad1) + &grad2);
        }
    }
    for i in 1..=4u8 {
        acc = &acc + &f(i).pow(3).partial(i);
    }
    let tail =
        &crate::models::t2_kappa2().scale_q(&crate::q(3, 2)) * &ScalarExpr::exp_f(-2).laplacian();
    &acc - &tail
}

/// The claimed ΣΩ∧Ω of the abelian instanton.
pub fn p1_lambda_display() -> Form {
    Form::parse(P1_LAMBDA, Basis::Invariant).expect("golden p1_lambda parses")
}

/// The claimed difference of Pontrjagin forms against the twin instanton
/// (carries the published constant, which the engine re-derives).
pub fn p1_difference_display() -> Form {
    Form::parse(P1_DIFFERENCE, Basis::Invariant).expect("golden p1_difference parses")
}

/// Indexed matrix entries as parsed from a golden file.
pub type MatrixEntries = Vec<((u8, u8), Form)>;

/// Parses `X[i][j] = <form>` entries; an entry may continue over several
/// lines until the next `X[` line. `#` comments and blank lines are skipped.
pub fn parse_matrix_entries(text: &str, basis: Basis) -> Result<MatrixEntries, FormError> {
    let mut entries: Vec<(u8, u8, String)> = Vec::new();
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(bracket) = line.find('[') {
            if bracket <= 2 && line.contains("=") {
                // header line: X[i][j] = ...
                let rest = &line[bracket..];
                let eq = rest.find('=').expect("checked above");
                let head: String = rest[..eq].chars().filter(|c| c.is_ascii_digit()).collect();
                assert_eq!(head.len(), 2, "matrix index must be two digits: {line}");
                let i = head.as_bytes()[0] - b'0';
                let j = head.as_bytes()[1] - b'0';
                entries.push((i, j, rest[eq + 1..].to_string()));
                continue;
            }
        }
        // continuation line
        if let Some(last) = entries.last_mut() {
            last.2.push(' ');
            last.2.push_str(line);
        }
    }
    entries
        .into_iter()
        .map(|(i, j, src)| Form::parse(&src, basis).map(|f| ((i, j), f)))
        .collect()
}
