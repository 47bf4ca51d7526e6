//! Shannon capacity of discrete memoryless channels.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`entropy`] | entropy, joint/conditional entropy, mutual information |
//! | [`channel`] | transition matrices, `I(p, Q)` and its gradient |
//! | [`muroga`] | explicit capacity for square invertible channels |
//! | [`binary`] | closed form for 2x2 channels |
//! | [`oracle`] | Blahut–Arimoto and grid search |
//! | [`linalg`] | small dense LU |
//!
//! ```rust
//! use capacity_core::{binary::{binary_capacity, BinaryChannel}, LogConfig};
//!
//! let z = BinaryChannel::new(0.0, 0.5).unwrap();
//! let c = binary_capacity(&z, &LogConfig::bits());
//! assert!((c - 1.25f64.log2()).abs() < 1e-12);
//! ```

pub mod binary;
pub mod channel;
pub mod entropy;
pub mod error;
pub mod linalg;
pub mod muroga;
pub mod oracle;

pub use channel::ChannelMatrix;
pub use entropy::{JointDist, LogConfig, ProbVector};
pub use error::{Error, Result};
pub use muroga::MurogaSolution;
pub use oracle::OracleConfig;
