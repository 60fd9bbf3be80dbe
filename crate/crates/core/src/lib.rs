//! Human-computable password hashing: the schemes, a simulated memory to
//! drive them, and the tooling to measure and attack what they produce.
//!
//! Numeric code is generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix the common choices.

pub mod corpus;
pub mod keyboard;
pub mod memory;
pub mod metrics;
pub mod predictor;
pub mod scalar;
pub mod schemes;
pub mod security;
pub mod wizard;

pub use keyboard::{DiagonalPolicy, KeyboardError, KeyboardLayout, Side};
pub use memory::{MemoryError, MemoryModel, MemorySource, ScriptedAnswers, ScriptedSource};
pub use scalar::Real;
pub use schemes::{hash, PasswordOutput, SchemeContext, SchemeError, SchemeId, Trace};
pub use wizard::{Answer, Prompt, WizardError, WizardSession};

pub type Lstm = predictor::LstmModel<f64>;
pub type Lstm32 = predictor::LstmModel<f32>;
pub type EntropyEstimate64 = metrics::EntropyEstimate<f64>;
pub type EntropyEstimate32 = metrics::EntropyEstimate<f32>;
pub type SummaryRow64 = metrics::SummaryRow<f64>;
pub type RecallOutcome64 = metrics::RecallOutcome<f64>;
