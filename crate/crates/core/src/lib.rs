//! Eye-movement and textual features for sarcasm detection, the classifiers
//! trained on them, and the statistics used to evaluate both.

// Guards are written `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod corpus;
pub mod dataset;
pub mod eval;
pub mod gaze;
pub mod learn;
pub mod saliency;
pub mod stats;
pub mod textfeat;
pub mod svg;
pub mod synth;
