//! Concrete group models and the name registry used by the CLI.

mod axb;
mod complex_axb;
mod exoo;
mod gln;

pub use axb::RealAxB;
pub use complex_axb::ComplexAxB;
pub use exoo::ExOoNegative;
pub use gln::GlnR;

use std::sync::Arc;

use crate::model::ArcModel;

/// All registered model names, in registry order.
pub const MODEL_NAMES: [&str; 5] = ["axb", "gl1", "gl2", "complex-axb", "exoo-negative"];

/// Look up a model by registry name.
pub fn by_name(name: &str) -> Option<ArcModel> {
    match name {
        "axb" => Some(Arc::new(RealAxB)),
        "gl1" => Some(Arc::new(GlnR::new(1))),
        "gl2" => Some(Arc::new(GlnR::new(2))),
        "complex-axb" => Some(Arc::new(ComplexAxB)),
        "exoo-negative" => Some(Arc::new(ExOoNegative)),
        _ => None,
    }
}

/// The four models satisfying the dual orbit condition.
pub fn positive_models() -> Vec<ArcModel> {
    ["axb", "gl1", "gl2", "complex-axb"]
        .iter()
        .map(|n| by_name(n).expect("registered"))
        .collect()
}
