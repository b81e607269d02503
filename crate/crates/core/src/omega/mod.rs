//! Games on countably infinite boards, played in symbolic batches.

pub mod frame;
pub mod play;
pub mod braided;
pub mod referee;
pub mod scorpion;
pub mod state;
pub mod template;
pub mod vset;

pub use frame::Frame;
pub use state::{Nbhd, Region, RegionSet, SymState, View};
pub use template::{Base, HiddenTemplate};
pub use vset::VSet;
pub use referee::{terminal_status, Objective};
pub use play::{play_omega, BatchRecord, OmegaConfig, OmegaGame, OmegaOutcome, OmegaSeeker, OmegaTranscript, RowOutcome};
pub use scorpion::{seeker_scorpion, ScorpionSeeker};
pub use braided::{seeker_braided_w, BraidedSeeker};
