//! Gaussian EPR steering for multimode optical states.
//!
//! States are zero-mean Gaussian and described by covariance matrices in
//! vacuum units with interleaved `(x, p)` ordering. The crate builds the
//! four-mode square cluster state and its lossy versions, quantifies
//! steerability between arbitrary groups of modes, audits the monogamy
//! relations of that quantifier, and reconstructs covariance matrices from
//! homodyne variance measurements.
//!
//! ```
//! use cvsteer::labels::{default_labels, parse_partition};
//! use cvsteer::states::{apply_loss, square_cluster, LossChannel};
//! use cvsteer::steering::gaussian_steering;
//!
//! let cluster = square_cluster(0.345).unwrap();
//! let lossy = apply_loss(&cluster, &LossChannel::new(0, 0.9).unwrap()).unwrap();
//! let part = parse_partition(&default_labels(4), "B->A").unwrap();
//! assert!(gaussian_steering(&lossy, &part).unwrap().steers());
//! ```

pub mod cli;
pub mod error;
pub mod labels;
pub mod states;
pub mod steering;
pub mod symplectic;
pub mod tomography;

pub use error::{Error, Result};
pub use symplectic::{CovarianceMatrix, ModePartition, SymplecticTransform};
