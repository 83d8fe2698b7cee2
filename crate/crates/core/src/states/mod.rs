//! Typed quantum and classical states, POVMs, random ensembles and the JSON
//! state-file format.

pub(crate) mod density;
mod ensemble;
mod io;
mod povm;
pub(crate) mod prob;
mod rng;

pub use density::DensityMatrix;
pub use ensemble::{haar_unitary, sample_state, EnsembleKind, EnsembleSpec};
pub use io::{read_state, state_from_json, state_to_json, write_state, StateFile};
pub use povm::{induced_distribution, projective_povm, Povm};
pub use prob::ProbDist;
pub use rng::{substream_seed, GaussianSource};
