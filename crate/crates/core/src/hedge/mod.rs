//! Hedge-algebra primitives: label frames, semantic maps and inference lines.

mod frame;
mod line;
mod map;

pub use frame::{generate_sqsm, msi, sqm_size_reference, Label, LinguisticFrame, SIZE_LABELS};
pub use line::{build_inference_line, InferenceLine};
pub use map::{LinearMap, SemanticMap, SigmoidMap};
