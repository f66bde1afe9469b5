//! Grauert-Remmert normalization chains for algebroid curves.
//!
//! Curves are given by branch parametrizations into
//! `K[[t_1]] x ... x K[[t_s]]` with `K = Q`. Every ring in the chain
//! `A = A_0 < A_1 < ... < A_n = Abar`, `A_{i+1} = End(rad A_i)`, is held
//! exactly as a finite basis below its conductor plus the conductor ideal.

pub mod ade;
pub mod chain;
pub mod diagram;
pub mod error;
pub mod lattice;
pub mod ring;
pub mod semigroup;
pub mod series;

pub use error::{Error, Result};
pub use lattice::{multiplicative_closure, FlatCoordinates, SubspaceBasis};
pub use ring::{AlgebroidCurve, FractionalIdealRep};
pub use semigroup::{attainable_valuations, conductor_vector, delta_intersects, is_symmetric, DeltaSet, ValueSemigroup};
pub use series::{BranchSeries, MultiElement, Precision, Scalar, Valuation, ValuationVector};
pub use ade::{make_ade, recognize, verify_ade, AdeType, Fingerprint, SingularityType};
pub use chain::{global_n, gr_chain, n_of, verify_gr_criterion, ChainReport, ChainStep};
pub use diagram::{render_chain_svg, render_chain_text, render_semigroup_text};
