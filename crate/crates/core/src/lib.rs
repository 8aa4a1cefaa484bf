//! Combinatorics of clutters (simple hypergraphs) and the square-free monomial
//! ideals they correspond to.
//!
//! The crate is organized around a small number of value types:
//!
//! * [`Clutter`] — a finite vertex set with an antichain of edges. Supports
//!   minimal vertex cover enumeration, height/unmixedness queries, Alexander
//!   duality, and perfect matchings of König type.
//! * [`GridStructure`] / [`AdmissibleInstance`] — color classes and a matching
//!   partition that make a clutter admissible, plus the cover transformations
//!   (raise the end, lower the front, consecutive interpolation) that produce
//!   new minimal vertex covers from known ones.
//! * [`SquareFreeIdeal`] — an antichain of monomial supports, with colon-step
//!   arithmetic, linear-quotient certification under explicit orderings for
//!   heights 2, 3 and 4, condition (*) detection, and an exhaustive ordering
//!   search.
//! * [`SimplicialComplex`] — facet-based complexes with reduced simplicial
//!   homology over a prime field, links, the Reisner criterion for
//!   Cohen-Macaulayness, Hochster-style Betti tables, and linear resolution
//!   checks, cross-validated through Eagon–Reiner duality.
//!
//! All operations are pure functions of immutable inputs; enumeration routines
//! carry explicit resource budgets ([`Limits`]) and return
//! [`Error::BudgetExceeded`] instead of running away on adversarial inputs.

pub mod clutter;
pub mod cm;
pub mod complex;
pub mod error;
pub mod field;
pub mod grid;
pub mod ideal;
pub mod limits;
pub mod linquot;
pub mod set;

pub use clutter::{Clutter, CoverList};
pub use cm::{
    betti_numbers, complement_graph, froberg_check, has_linear_resolution, independence_complex,
    is_chordal, is_cohen_macaulay, recover_structure_g2, search_not_cm_witness,
    stanley_reisner_complex, verify_elimination_ordering, verify_not_cm_witness,
    verify_off_strand_witness, BettiTable, CmStatus, CmVerdict, LinearResolutionVerdict,
    RecoveryReport,
};
pub use complex::{reduced_homology, HomologyProfile, SimplicialComplex};
pub use error::{Error, Result};
pub use field::PrimeField;
pub use grid::{
    check_admissible_instance, find_grid_structure, fixture_example_g3, gen_counterexample,
    gen_random_admissible, sample_unmixed, validate_grid, AdmissibleInstance, AdmissibleReport,
    ExponentVector, GridStructure, GridViolation,
};
pub use ideal::SquareFreeIdeal;
pub use limits::Limits;
pub use linquot::{
    check_linear_quotients, colon_step, exists_linear_quotients_ordering, order_g4,
    satisfies_condition_star, sort_by_named_ordering, BadPair, FailureWitness, G4Order,
    LinearQuotientReport, NamedOrdering,
};
pub use set::VertexSet;
