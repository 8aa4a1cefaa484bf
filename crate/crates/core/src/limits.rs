/// Resource budgets for the enumeration-heavy operations.
///
/// Exceeding a budget raises [`crate::Error::BudgetExceeded`] naming the
/// budget; it never silently truncates a definitive answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of covers recorded during minimal cover enumeration.
    pub max_covers: usize,
    /// Maximum number of search nodes visited by branch-and-bound and
    /// backtracking searches.
    pub max_nodes: usize,
    /// Maximum number of faces enumerated for a simplicial complex.
    pub max_faces: usize,
    /// Links larger than this are skipped (not decided) in witness-search
    /// mode.
    pub max_link_faces: usize,
    /// Links with more facets than this are skipped (not decided); bounds
    /// the quadratic connectivity screen.
    pub max_link_facets: usize,
    /// Maximum number of candidate faces examined in witness-search mode.
    pub max_witness_faces: usize,
    /// Maximum generator count for the linear-quotient ordering search
    /// (the search memoizes on 2^r generator subsets).
    pub max_search_generators: usize,
    /// Maximum ambient vertex count for a full Hochster scan over all 2^n
    /// vertex subsets.
    pub max_betti_vertices: usize,
    /// Retry budget for seed-searching generators (unmixedness filtering).
    pub max_retries: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_covers: 1_000_000,
            max_nodes: 1_000_000,
            max_faces: 1 << 20,
            max_link_faces: 1 << 16,
            max_link_facets: 2_048,
            max_witness_faces: 50_000,
            max_search_generators: 22,
            max_betti_vertices: 14,
            max_retries: 1_000,
        }
    }
}
