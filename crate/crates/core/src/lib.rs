//! Mealy automata of rational power series over finite commutative rings.
//!
//! For a finite commutative ring `R` and `f = r(1 - at)/(1 - bt)` with `r` a
//! unit, the automaton `A_f` has one state per ring element. This crate
//! builds it, decides its (bi)reversibility, checks at finite depth that it
//! generates a lamplighter group `R ≀ Z`, and decides which finite abelian
//! groups admit a ring with units `a`, `b` whose difference is a unit.

pub mod automaton;
pub mod classify;
mod error;
pub mod group;
pub mod groupcheck;
pub mod ring;
pub mod series;

pub use automaton::{build_af, equivalent, minimize, AutomatonDocument, Mealy, Word};
pub use classify::{construct_witness, is_realizable, RealizabilityResult, Witness};
pub use error::{Error, Result, ENUMERATION_LIMIT};
pub use group::GroupSpec;
pub use groupcheck::{AffineMap, CheckReport, SuiteOptions};
pub use ring::{GaloisSpec, RingElem, RingSpec};
pub use series::{SeriesParams, TruncSeries};
