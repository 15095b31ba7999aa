//! Exhaustive small-scale verification of preference aggregation.
//!
//! The crate enumerates preference orders, checks the classical axioms on
//! social welfare functions (independence of irrelevant alternatives,
//! Pareto, dictatorship), computes decisive-coalition families and their
//! ultrafilter structure, factors welfare functions through boolean
//! algebra homomorphisms, verifies naturality of welfare-function families
//! under restriction and relabeling, and searches the entire space of
//! axiom-satisfying welfare functions at small sizes to confirm that only
//! dictatorships survive once there are at least three alternatives.
//!
//! Everything is exact: instance sizes are capped so that every
//! universally quantified claim is settled by complete enumeration, never
//! sampling. Failing checks return canonical least witnesses so reports
//! are reproducible byte for byte.

pub mod decisive;
pub mod factorization;
pub mod naturality;
pub mod orders;
pub mod profiles;
pub mod search;
pub mod swf;

pub use decisive::{CoalitionFamily, UltrafilterReport};
pub use factorization::BoolFn;
pub use naturality::{NatCandidate, SwfFamily};
pub use orders::{AlternativeSet, Injection, Relation, RelationProperty};
pub use profiles::{Coalition, Domain, DomainFamily, DomainKind, Profile, VoterSet};
pub use search::{SearchConfig, SearchReport};
pub use swf::Swf;
