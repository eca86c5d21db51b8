//! Differential forms on the six-dimensional coframe.

mod form;
mod frame;
mod multi_index;

pub use form::{j_index, Basis, ComplexStructure, Form, FormError};
pub use frame::{FrameAlgebra, FrameError};
pub use multi_index::MultiIndex;
