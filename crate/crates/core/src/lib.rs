//! Cat-state generation by reflecting coherent light off a cavity containing
//! a Rydberg-EIT atomic ensemble, and the photon losses that degrade it.

pub mod catstate;
pub mod error;
pub mod fit;
pub mod fock;
pub mod model;
pub mod overlap;
pub mod semiclassical;
pub mod steady;

pub use catstate::{CatState, CoherentAmplitude, LossBudget};
pub use error::{Error, Result};
pub use model::{CavityParams, DetuningSet, OutputAmplitudes, QubitBranch, TwoPhotonDetuning};
