//! Classification of the Dehn fillings on the outer torus of a 1-bridge braid
//! exterior that produce a solid torus.
//!
//! A 1-bridge braid `K(w, b, t)` in the solid torus `V` is the closure of
//! `σ_b ⋯ σ_1 (σ_{w-1} ⋯ σ_1)^t`. Filling the outer torus `∂V` of its
//! exterior along a `(p, q)` curve gives a solid torus exactly when one of
//! four arithmetic conditions on `(w, b, t, p, q)` holds; [`fillings_of`]
//! evaluates them. The [`oracle`] module rebuilds the same answer by brute
//! force from allowable 5-tuples, and [`census`] sweeps every triple up to a
//! bound.
//!
//! ```
//! use onebridge::{fillings_of, Braid};
//!
//! let knot = Braid::new(7, 2, 4).unwrap();
//! let slopes: Vec<String> = fillings_of(&knot).iter().map(|f| f.slope.to_string()).collect();
//! assert_eq!(slopes, ["3/2", "5/3", "8/5"]);
//! ```

pub mod braids;
pub mod census;
pub mod classify;
pub mod cli;
pub mod error;
pub mod oracle;
pub mod residues;

pub use braids::{
    braid_word, closure_permutation, is_canonical, is_knot, mirror, mirror_slope, AllowableTuple,
    Braid, MirrorImage, Permutation, Slope,
};
pub use census::{run_census, table1, Census, CensusRecord, CensusSummary};
pub use classify::{
    fillings_of, knots_for_slope, tuple_to_braid, Filling, FillingCase, FillingWitness, TupleImage,
};
pub use error::{Error, Result};
