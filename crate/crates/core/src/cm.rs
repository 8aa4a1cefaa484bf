use std::collections::BTreeMap;

use crate::clutter::Clutter;
use crate::complex::{reduced_homology, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::grid::{check_admissible_instance, GridStructure};
use crate::ideal::SquareFreeIdeal;
use crate::limits::Limits;
use crate::set::{k_subsets, VertexSet};

/// The independence complex of a clutter: faces are the vertex subsets
/// containing no edge; facets are the complements of the minimal vertex
/// covers.
pub fn independence_complex(clutter: &Clutter, limits: &Limits) -> Result<SimplicialComplex> {
    let n = clutter.vertex_count();
    let covers = clutter.minimal_vertex_covers(limits)?;
    let facets: Vec<VertexSet> = covers.iter().map(|c| c.complement_within(n)).collect();
    SimplicialComplex::new(n, facets)
}

/// The Stanley–Reisner complex of a square-free ideal: faces are the subsets
/// containing no generator support.
pub fn stanley_reisner_complex(
    ideal: &SquareFreeIdeal,
    limits: &Limits,
) -> Result<SimplicialComplex> {
    independence_complex(&ideal.to_clutter()?, limits)
}

/// Outcome of a Cohen-Macaulayness decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CmStatus {
    CohenMacaulay,
    /// Some face has nonzero reduced link homology below the link dimension.
    NotCohenMacaulay {
        witness: VertexSet,
        degree: i64,
    },
    /// The search budget ran out before a definitive answer.
    Inconclusive {
        note: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmVerdict {
    pub status: CmStatus,
    pub characteristic: u64,
}

impl CmVerdict {
    pub fn is_cm(&self) -> bool {
        matches!(self.status, CmStatus::CohenMacaulay)
    }
}

/// Decide Cohen-Macaulayness of `R/I(clutter)` over `F_p` by the Reisner
/// criterion on the independence complex: every face's link must have
/// vanishing reduced homology below its dimension.
///
/// Only closed faces (intersections of facets) are examined: the link of any
/// other face is a cone over the gap to its closure and therefore acyclic.
/// The scan runs biggest faces first, so cheap small links come before
/// expensive large ones and negative witnesses surface early. A positive
/// verdict is returned only when every closed face was decided within the
/// budgets; otherwise the result is a re-verifiable witness or
/// `Inconclusive`.
pub fn is_cohen_macaulay(
    clutter: &Clutter,
    field: PrimeField,
    limits: &Limits,
) -> Result<CmVerdict> {
    let complex = independence_complex(clutter, limits)?;
    decide_reisner(&complex, field, limits, true)
}

/// Witness-search mode: identical scan, but never claims a positive verdict.
pub fn search_not_cm_witness(
    clutter: &Clutter,
    field: PrimeField,
    limits: &Limits,
) -> Result<CmVerdict> {
    let complex = independence_complex(clutter, limits)?;
    decide_reisner(&complex, field, limits, false)
}

enum CandidateOutcome {
    /// Vanishing homology below the link dimension, decided exactly.
    Clean,
    /// Nonzero reduced homology below the link dimension.
    Witness(VertexSet, i64),
    /// The link exceeds the per-link face budget; undecided.
    TooLarge,
}

fn decide_reisner(
    complex: &SimplicialComplex,
    field: PrimeField,
    limits: &Limits,
    may_claim_positive: bool,
) -> Result<CmVerdict> {
    let characteristic = field.characteristic();
    if complex.is_void() {
        return Ok(CmVerdict {
            status: CmStatus::CohenMacaulay,
            characteristic,
        });
    }
    match complex.closed_faces(limits) {
        Ok(mut closed) => {
            // Stable sort: sizes descending, canonical order within a size.
            closed.sort_by_key(|f| std::cmp::Reverse(f.len()));
            let mut skipped = 0usize;
            let mut capped = false;
            for (i, &face) in closed.iter().enumerate() {
                if i >= limits.max_witness_faces {
                    capped = true;
                    break;
                }
                match candidate_at(complex, face, field, limits)? {
                    CandidateOutcome::Clean => {}
                    CandidateOutcome::Witness(witness, degree) => {
                        return Ok(CmVerdict {
                            status: CmStatus::NotCohenMacaulay { witness, degree },
                            characteristic,
                        })
                    }
                    CandidateOutcome::TooLarge => skipped += 1,
                }
            }
            if may_claim_positive && !capped && skipped == 0 {
                return Ok(CmVerdict {
                    status: CmStatus::CohenMacaulay,
                    characteristic,
                });
            }
            Ok(CmVerdict {
                status: CmStatus::Inconclusive {
                    note: format!(
                        "no witness among {} closed faces ({} links over the size budget{})",
                        closed.len().min(limits.max_witness_faces),
                        skipped,
                        if capped { "; face budget reached" } else { "" }
                    ),
                },
                characteristic,
            })
        }
        Err(Error::BudgetExceeded { .. }) => ascending_witness_scan(complex, field, limits),
        Err(e) => Err(e),
    }
}

/// Fallback when even the closed faces cannot be enumerated: walk faces
/// ascending by size as subsets of facets, screening links by connectivity
/// before full homology. The candidate budget counts generated subsets
/// (duplicates included), so the scan is strictly bounded on monster
/// complexes. Never claims a positive verdict.
fn ascending_witness_scan(
    complex: &SimplicialComplex,
    field: PrimeField,
    limits: &Limits,
) -> Result<CmVerdict> {
    let characteristic = field.characteristic();
    let max_size = complex.facets().iter().map(|f| f.len()).max().unwrap_or(0);
    let mut generated = 0usize;
    let mut skipped = 0usize;
    for size in 0..=max_size {
        let mut seen = std::collections::HashSet::new();
        for facet in complex.facets() {
            if facet.len() < size || generated > limits.max_witness_faces {
                continue;
            }
            for face in k_subsets(&facet.to_vec(), size) {
                generated += 1;
                if generated > limits.max_witness_faces {
                    return Ok(CmVerdict {
                        status: CmStatus::Inconclusive {
                            note: format!(
                                "witness scan exhausted max_witness_faces = {} ({} links over the size budgets)",
                                limits.max_witness_faces, skipped
                            ),
                        },
                        characteristic,
                    });
                }
                if !seen.insert(face.bits()) {
                    continue;
                }
                match candidate_at(complex, face, field, limits)? {
                    CandidateOutcome::Clean => {}
                    CandidateOutcome::Witness(witness, degree) => {
                        return Ok(CmVerdict {
                            status: CmStatus::NotCohenMacaulay { witness, degree },
                            characteristic,
                        })
                    }
                    CandidateOutcome::TooLarge => skipped += 1,
                }
            }
        }
    }
    Ok(CmVerdict {
        status: CmStatus::Inconclusive {
            note: format!(
                "no witness among {generated} faces ({skipped} links over the size budgets)"
            ),
        },
        characteristic,
    })
}

/// Cone and dimension shortcuts are exact; a disconnected link of positive
/// dimension witnesses immediately; otherwise homology runs when the link
/// fits the per-link budgets. Links with too many facets for the quadratic
/// connectivity screen are left undecided.
fn candidate_at(
    complex: &SimplicialComplex,
    face: VertexSet,
    field: PrimeField,
    limits: &Limits,
) -> Result<CandidateOutcome> {
    // Cheap pre-gate before the link is materialized.
    let containing = complex
        .facets()
        .iter()
        .filter(|f| face.is_subset_of(**f))
        .count();
    if containing > limits.max_link_facets {
        return Ok(CandidateOutcome::TooLarge);
    }
    let link = complex.link(face)?;
    if link.cone_apex().is_some() {
        return Ok(CandidateOutcome::Clean);
    }
    let dim = link.dimension().expect("links of faces are nonvoid");
    if dim <= 0 {
        // dim -1: the face is a facet. dim 0: reduced homology below the
        // dimension is degree -1 only, which vanishes once a vertex exists.
        return Ok(CandidateOutcome::Clean);
    }
    if !link.is_connected() {
        return Ok(CandidateOutcome::Witness(face, 0));
    }
    if link.face_count_bound() > limits.max_link_faces {
        return Ok(CandidateOutcome::TooLarge);
    }
    let profile = reduced_homology(&link, field, limits)?;
    for k in -1..dim {
        if profile.dim(k) > 0 {
            return Ok(CandidateOutcome::Witness(face, k));
        }
    }
    Ok(CandidateOutcome::Clean)
}

/// Re-verify a stored non-CM witness: the reduced homology degree below the
/// link dimension that is nonzero, or `None` if the face does not witness
/// anything.
pub fn verify_not_cm_witness(
    clutter: &Clutter,
    face: VertexSet,
    field: PrimeField,
    limits: &Limits,
) -> Result<Option<i64>> {
    let complex = independence_complex(clutter, limits)?;
    if !complex.contains_face(face) {
        return Err(Error::invalid(
            "witness is not a face of the independence complex",
        ));
    }
    let link = complex.link(face)?;
    let Some(dim) = link.dimension() else {
        return Ok(None);
    };
    let profile = reduced_homology(&link, field, limits)?;
    for k in -1..dim {
        if profile.dim(k) > 0 {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Graded Betti numbers of a square-free ideal via the Hochster formula:
/// `β_{i,σ}` is the dimension of reduced homology of the Stanley–Reisner
/// complex restricted to `σ`, in degree `|σ| - i - 2`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    /// `(homological index i, support σ) -> β_{i,σ}` (nonzero entries only).
    pub fine: BTreeMap<(usize, VertexSet), usize>,
    /// `(homological index i, total degree j) -> β_{i,j}`.
    pub coarse: BTreeMap<(usize, usize), usize>,
}

impl BettiTable {
    /// Degrees `j` with a nonzero entry at homological index `i`.
    pub fn strands(&self) -> Vec<(usize, usize)> {
        self.coarse.keys().copied().collect()
    }
}

/// Compute `β_{i,σ}` for every `σ` (or just the given restriction). Without a
/// restriction the ambient size is capped by `limits.max_betti_vertices`.
pub fn betti_numbers(
    ideal: &SquareFreeIdeal,
    field: PrimeField,
    restriction: Option<&[VertexSet]>,
    limits: &Limits,
) -> Result<BettiTable> {
    let complex = stanley_reisner_complex(ideal, limits)?;
    let n = ideal.ambient_size();
    let sigmas: Vec<VertexSet> = match restriction {
        Some(list) => {
            for s in list {
                if let Some(i) = s.max_index() {
                    if i >= n {
                        return Err(Error::IndexOutOfRange { index: i, n });
                    }
                }
            }
            list.to_vec()
        }
        None => {
            if n > limits.max_betti_vertices {
                return Err(Error::BudgetExceeded {
                    budget: "max_betti_vertices",
                    limit: limits.max_betti_vertices,
                });
            }
            (0..(1u128 << n)).map(VertexSet::from_bits).collect()
        }
    };
    let mut table = BettiTable::default();
    for sigma in sigmas {
        accumulate_betti(&complex, sigma, field, limits, &mut table)?;
    }
    Ok(table)
}

fn accumulate_betti(
    complex: &SimplicialComplex,
    sigma: VertexSet,
    field: PrimeField,
    limits: &Limits,
    table: &mut BettiTable,
) -> Result<()> {
    let restricted = complex.induced(sigma);
    let profile = reduced_homology(&restricted, field, limits)?;
    for k in profile.nonzero_degrees() {
        let i = sigma.len() as i64 - k - 2;
        if i >= 0 {
            let d = profile.dim(k);
            *table.fine.entry((i as usize, sigma)).or_insert(0) += d;
            *table.coarse.entry((i as usize, sigma.len())).or_insert(0) += d;
        }
    }
    Ok(())
}

/// Outcome of a linear-resolution check for an equigenerated ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearResolutionVerdict {
    Linear,
    /// `σ` carries reduced homology off the linear strand.
    NotLinear {
        witness: VertexSet,
        degree: i64,
    },
    Inconclusive {
        note: String,
    },
}

impl LinearResolutionVerdict {
    pub fn is_linear(&self) -> bool {
        matches!(self, LinearResolutionVerdict::Linear)
    }
}

/// Does the ideal (equigenerated in degree `q`) have a linear resolution over
/// `F_p`: is the coarse Betti table supported on the single strand
/// `j = i + q`? Equivalently, every restriction of the Stanley–Reisner
/// complex may only carry reduced homology in degree `q - 2`.
///
/// Within `limits.max_betti_vertices` ambient vertices the scan over all
/// subsets is exhaustive; otherwise a bounded witness search runs, which can
/// return a witness or `Inconclusive`, never a definitive positive.
pub fn has_linear_resolution(
    ideal: &SquareFreeIdeal,
    field: PrimeField,
    limits: &Limits,
) -> Result<LinearResolutionVerdict> {
    if ideal.generator_count() == 0 {
        return Ok(LinearResolutionVerdict::Linear);
    }
    let q = ideal.equigenerated_degree().ok_or_else(|| {
        Error::invalid("linear resolutions are only checked for equigenerated ideals")
    })? as i64;
    let complex = stanley_reisner_complex(ideal, limits)?;
    let n = ideal.ambient_size();
    if n <= limits.max_betti_vertices {
        for bits in 0..(1u128 << n) {
            let sigma = VertexSet::from_bits(bits);
            if let Some((witness, degree)) = off_strand_at(&complex, sigma, q, field, limits)? {
                return Ok(LinearResolutionVerdict::NotLinear { witness, degree });
            }
        }
        return Ok(LinearResolutionVerdict::Linear);
    }
    // Witness search: subsets ascending by size, canonically enumerated,
    // bounded by the witness budget; oversized restrictions are skipped, so
    // a clean scan stays inconclusive rather than claiming linearity.
    let mut checked = 0usize;
    let all: Vec<usize> = (0..n).collect();
    for size in 0..=n {
        for sigma in k_subsets(&all, size) {
            checked += 1;
            if checked > limits.max_witness_faces {
                return Ok(LinearResolutionVerdict::Inconclusive {
                    note: format!(
                        "subset scan exhausted max_witness_faces = {}",
                        limits.max_witness_faces
                    ),
                });
            }
            let restricted = complex.induced(sigma);
            if restricted.face_count_bound() > limits.max_link_faces {
                continue;
            }
            if let Some((witness, degree)) =
                off_strand_restricted(&restricted, sigma, q, field, limits)?
            {
                return Ok(LinearResolutionVerdict::NotLinear { witness, degree });
            }
        }
    }
    Ok(LinearResolutionVerdict::Inconclusive {
        note: "subset scan incomplete".into(),
    })
}

fn off_strand_at(
    complex: &SimplicialComplex,
    sigma: VertexSet,
    q: i64,
    field: PrimeField,
    limits: &Limits,
) -> Result<Option<(VertexSet, i64)>> {
    off_strand_restricted(&complex.induced(sigma), sigma, q, field, limits)
}

fn off_strand_restricted(
    restricted: &SimplicialComplex,
    sigma: VertexSet,
    q: i64,
    field: PrimeField,
    limits: &Limits,
) -> Result<Option<(VertexSet, i64)>> {
    if restricted.cone_apex().is_some() {
        return Ok(None);
    }
    let profile = reduced_homology(restricted, field, limits)?;
    for k in profile.nonzero_degrees() {
        let i = sigma.len() as i64 - k - 2;
        if i >= 0 && k != q - 2 {
            return Ok(Some((sigma, k)));
        }
    }
    Ok(None)
}

/// Verify a stored off-strand witness for an equigenerated ideal: returns the
/// off-strand homology degree carried by `sigma`, if any.
pub fn verify_off_strand_witness(
    ideal: &SquareFreeIdeal,
    sigma: VertexSet,
    field: PrimeField,
    limits: &Limits,
) -> Result<Option<i64>> {
    let q = ideal
        .equigenerated_degree()
        .ok_or_else(|| Error::invalid("witness verification needs an equigenerated ideal"))?
        as i64;
    let complex = stanley_reisner_complex(ideal, limits)?;
    Ok(off_strand_at(&complex, sigma, q, field, limits)?.map(|(_, k)| k))
}

fn graph_adjacency(graph: &Clutter) -> Result<Vec<VertexSet>> {
    let n = graph.vertex_count();
    let mut adj = vec![VertexSet::EMPTY; n];
    for e in graph.edges() {
        if e.len() != 2 {
            return Err(Error::invalid(format!(
                "expected a graph (all edges of size 2), got an edge of size {}",
                e.len()
            )));
        }
        let mut it = e.iter();
        let (u, v) = (it.next().unwrap(), it.next().unwrap());
        adj[u] = adj[u].with(v);
        adj[v] = adj[v].with(u);
    }
    Ok(adj)
}

fn is_clique(adj: &[VertexSet], set: VertexSet) -> bool {
    set.iter().all(|v| set.without(v).is_subset_of(adj[v]))
}

/// Simplicial vertices of the graph restricted to `active`: vertices whose
/// active neighborhood is a clique.
fn simplicial_vertices(active: VertexSet, adj: &[VertexSet]) -> Vec<usize> {
    active
        .iter()
        .filter(|&v| is_clique(adj, adj[v].intersection(active)))
        .collect()
}

fn peel_order(mut active: VertexSet, adj: &[VertexSet]) -> Option<Vec<usize>> {
    let mut order = Vec::with_capacity(active.len());
    while !active.is_empty() {
        let v = active
            .iter()
            .find(|&v| is_clique(adj, adj[v].intersection(active)))?;
        order.push(v);
        active = active.without(v);
    }
    Some(order)
}

/// Independent check of a perfect elimination ordering: peeling in order,
/// each vertex's remaining neighborhood must be a clique.
pub fn verify_elimination_ordering(graph: &Clutter, order: &[usize]) -> Result<bool> {
    let adj = graph_adjacency(graph)?;
    let mut active = VertexSet::full(graph.vertex_count());
    for &v in order {
        if !active.contains(v) {
            return Ok(false);
        }
        if !is_clique(&adj, adj[v].intersection(active)) {
            return Ok(false);
        }
        active = active.without(v);
    }
    Ok(active.is_empty())
}

/// Chordality of a graph (2-uniform clutter) by repeated simplicial-vertex
/// peeling; returns a perfect elimination ordering when chordal, verified
/// independently before it is handed back.
pub fn is_chordal(graph: &Clutter) -> Result<Option<Vec<usize>>> {
    let adj = graph_adjacency(graph)?;
    let Some(order) = peel_order(VertexSet::full(graph.vertex_count()), &adj) else {
        return Ok(None);
    };
    if !verify_elimination_ordering(graph, &order)? {
        return Err(Error::InternalInvariant(
            "peeled elimination ordering failed independent verification".into(),
        ));
    }
    Ok(Some(order))
}

/// Complement graph on the same vertex set (isolated vertices included).
pub fn complement_graph(graph: &Clutter) -> Result<Clutter> {
    let adj = graph_adjacency(graph)?;
    let n = graph.vertex_count();
    let mut edges = Vec::new();
    for (u, neighbors) in adj.iter().enumerate() {
        for v in u + 1..n {
            if !neighbors.contains(v) {
                edges.push(VertexSet::from_indices([u, v]));
            }
        }
    }
    Clutter::new(graph.labels().to_vec(), edges)
}

/// Is the complement graph chordal? Equivalent to the edge ideal of the graph
/// having a linear resolution.
pub fn froberg_check(graph: &Clutter) -> Result<bool> {
    Ok(is_chordal(&complement_graph(graph)?)?.is_some())
}

/// Result of the height-2 structure recovery; the log records why recovery
/// returned nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveryReport {
    pub structure: Option<GridStructure>,
    pub log: Vec<String>,
}

/// Recover color classes and a two-block matching exhibiting a d-uniform,
/// height-2, Cohen-Macaulay clutter as admissible.
///
/// Follows the constructive route: find a perfect matching `e_1, e_2`; form
/// the dual graph (minimal covers, all of size 2); check that its complement
/// is chordal; peel a simplicial vertex together with the partner that makes
/// `{head, partner}` meet every edge exactly once; recurse on the clutter
/// with both vertices contracted away. The assembled structure is accepted
/// only if the full admissibility check passes.
pub fn recover_structure_g2(
    clutter: &Clutter,
    field: PrimeField,
    limits: &Limits,
) -> Result<RecoveryReport> {
    let Some(d) = clutter.uniform_size() else {
        return Err(Error::invalid(
            "structure recovery requires a uniform clutter",
        ));
    };
    let height = clutter.height(limits)?;
    if height != 2 {
        return Err(Error::invalid(format!(
            "structure recovery requires height 2, got {height}"
        )));
    }
    let mut log = Vec::new();
    let verdict = is_cohen_macaulay(clutter, field, limits)?;
    match verdict.status {
        CmStatus::CohenMacaulay => {}
        CmStatus::NotCohenMacaulay { witness, degree } => {
            log.push(format!(
                "not Cohen-Macaulay: witness face {} has homology in degree {degree}",
                clutter.format_set(witness)
            ));
            return Ok(RecoveryReport {
                structure: None,
                log,
            });
        }
        CmStatus::Inconclusive { note } => {
            log.push(format!("Cohen-Macaulay check inconclusive: {note}"));
            return Ok(RecoveryReport {
                structure: None,
                log,
            });
        }
    }
    let matchings = clutter.konig_perfect_matchings(limits)?;
    if matchings.is_empty() {
        log.push("no perfect matching of König type".into());
        return Ok(RecoveryReport {
            structure: None,
            log,
        });
    }
    for m in &matchings {
        let (a, b) = (clutter.edges()[m[0]], clutter.edges()[m[1]]);
        for (e1, e2) in [(a, b), (b, a)] {
            if let Some(colors) = attempt_recovery(clutter, e1, e2, d, limits, &mut log)? {
                let grid = GridStructure::new(clutter.vertex_count(), colors, vec![e1, e2])?;
                let report = check_admissible_instance(clutter, &grid)?;
                if report.is_admissible() {
                    return Ok(RecoveryReport {
                        structure: Some(grid),
                        log,
                    });
                }
                log.push("assembled structure failed the admissibility check".into());
            }
        }
    }
    log.push("all matchings and orientations exhausted".into());
    Ok(RecoveryReport {
        structure: None,
        log,
    })
}

fn attempt_recovery(
    clutter: &Clutter,
    e1: VertexSet,
    e2: VertexSet,
    d: usize,
    limits: &Limits,
    log: &mut Vec<String>,
) -> Result<Option<Vec<VertexSet>>> {
    let mut colors = Vec::with_capacity(d);
    let edges = clutter.edges().to_vec();
    if recover_step(clutter, edges, e1, e2, d, limits, &mut colors, log)? {
        Ok(Some(colors))
    } else {
        Ok(None)
    }
}

/// One peeling step; backtracks over candidate pairs.
#[allow(clippy::too_many_arguments)]
fn recover_step(
    clutter: &Clutter,
    edges: Vec<VertexSet>,
    rem1: VertexSet,
    rem2: VertexSet,
    remaining: usize,
    limits: &Limits,
    colors: &mut Vec<VertexSet>,
    log: &mut Vec<String>,
) -> Result<bool> {
    if remaining == 0 {
        return Ok(rem1.is_empty() && rem2.is_empty());
    }
    let n = clutter.vertex_count();
    let scratch = Clutter::new(clutter.labels().to_vec(), edges.clone())?;
    let covers = scratch.minimal_vertex_covers(limits)?;
    if covers.iter().any(|c| c.len() != 2) {
        log.push("contracted clutter is not unmixed of height 2".into());
        return Ok(false);
    }
    // Dual graph on the active vertices, and its complement.
    let active = rem1.union(rem2);
    let mut dual_adj = vec![VertexSet::EMPTY; n];
    for c in covers.iter() {
        let mut it = c.iter();
        let (u, v) = (it.next().unwrap(), it.next().unwrap());
        dual_adj[u] = dual_adj[u].with(v);
        dual_adj[v] = dual_adj[v].with(u);
    }
    let comp_adj: Vec<VertexSet> = (0..n)
        .map(|v| {
            if active.contains(v) {
                active.without(v).difference(dual_adj[v])
            } else {
                VertexSet::EMPTY
            }
        })
        .collect();
    if peel_order(active, &comp_adj).is_none() {
        log.push("complement of the dual graph is not chordal".into());
        return Ok(false);
    }
    // Candidate color classes: a simplicial head in the first block with a
    // partner in the second block such that every edge meets the pair once.
    let pair_ok = |z: usize, y: usize| {
        let pair = VertexSet::from_indices([z, y]);
        edges.iter().all(|e| e.intersection(pair).len() == 1)
    };
    let mut degree = vec![0usize; n];
    for e in &edges {
        for v in e.iter() {
            degree[v] += 1;
        }
    }
    let mut candidates: Vec<(usize, usize)> = Vec::new();
    for z in simplicial_vertices(active, &comp_adj) {
        if !rem1.contains(z) {
            continue;
        }
        for y in rem2.iter() {
            if pair_ok(z, y) {
                candidates.push((z, y));
            }
        }
    }
    // Prefer pairs whose partner is a free vertex, as in the constructive
    // argument; backtracking still covers the rest.
    candidates.sort_by_key(|&(z, y)| (degree[y] != 1, z, y));
    for (z, y) in candidates {
        let pair = VertexSet::from_indices([z, y]);
        let contracted: Vec<VertexSet> = if remaining == 1 {
            Vec::new()
        } else {
            crate::set::minimal_sets(edges.iter().map(|e| e.difference(pair)).collect())
        };
        colors.push(pair);
        if recover_step(
            clutter,
            contracted,
            rem1.without(z),
            rem2.without(y),
            remaining - 1,
            limits,
            colors,
            log,
        )? {
            return Ok(true);
        }
        colors.pop();
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::fixture_example_g3;

    fn lim() -> Limits {
        Limits::default()
    }

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn c4() -> Clutter {
        Clutter::from_edge_labels(
            &["a", "b", "c", "d"],
            &[&["a", "b"], &["b", "c"], &["c", "d"], &["a", "d"]],
        )
        .unwrap()
    }

    #[test]
    fn independence_complex_examples() {
        let c = Clutter::from_edge_labels(&["a", "b"], &[&["a", "b"]]).unwrap();
        let cx = independence_complex(&c, &lim()).unwrap();
        assert_eq!(
            cx.facets(),
            &[VertexSet::from_indices([0]), VertexSet::from_indices([1])]
        );

        let cx4 = independence_complex(&c4(), &lim()).unwrap();
        assert_eq!(
            cx4.facets(),
            &[
                VertexSet::from_indices([0, 2]),
                VertexSet::from_indices([1, 3])
            ]
        );

        let fixture = fixture_example_g3();
        let cxf = independence_complex(fixture.clutter(), &lim()).unwrap();
        assert_eq!(cxf.facets().len(), 19);
        assert!(cxf.facets().iter().all(|f| f.len() == 6));
    }

    #[test]
    fn c4_independence_link() {
        let cx4 = independence_complex(&c4(), &lim()).unwrap();
        let link = cx4.link(VertexSet::from_indices([0])).unwrap();
        assert_eq!(link.facets(), &[VertexSet::from_indices([2])]);
    }

    #[test]
    fn hypersurface_is_cm() {
        let c = Clutter::from_edge_labels(&["a", "b"], &[&["a", "b"]]).unwrap();
        assert!(is_cohen_macaulay(&c, f2(), &lim()).unwrap().is_cm());
    }

    #[test]
    fn fixture_is_cm() {
        let fixture = fixture_example_g3();
        assert!(is_cohen_macaulay(fixture.clutter(), f2(), &lim())
            .unwrap()
            .is_cm());
    }

    #[test]
    fn c4_graph_is_not_cm_and_witness_reverifies() {
        let verdict = is_cohen_macaulay(&c4(), f2(), &lim()).unwrap();
        let CmStatus::NotCohenMacaulay { witness, degree } = verdict.status else {
            panic!("the 4-cycle is not Cohen-Macaulay");
        };
        let recheck = verify_not_cm_witness(&c4(), witness, f2(), &lim()).unwrap();
        assert_eq!(recheck, Some(degree));
    }

    #[test]
    fn betti_principal_ideal() {
        let ideal = SquareFreeIdeal::new(
            vec!["a".into(), "b".into()],
            vec![VertexSet::from_indices([0, 1])],
        )
        .unwrap();
        let table = betti_numbers(&ideal, f2(), None, &lim()).unwrap();
        assert_eq!(table.fine.len(), 1);
        assert_eq!(table.fine[&(0, VertexSet::from_indices([0, 1]))], 1);
    }

    #[test]
    fn betti_two_variables() {
        // (a, b): Koszul resolution has β_{0,{a}} = β_{0,{b}} = 1 and
        // β_{1,{a,b}} = 1.
        let ideal = SquareFreeIdeal::new(
            vec!["a".into(), "b".into()],
            vec![VertexSet::from_indices([0]), VertexSet::from_indices([1])],
        )
        .unwrap();
        let table = betti_numbers(&ideal, f2(), None, &lim()).unwrap();
        assert_eq!(table.fine.len(), 3);
        assert_eq!(table.fine[&(0, VertexSet::from_indices([0]))], 1);
        assert_eq!(table.fine[&(0, VertexSet::from_indices([1]))], 1);
        assert_eq!(table.fine[&(1, VertexSet::from_indices([0, 1]))], 1);
    }

    #[test]
    fn linear_resolution_examples() {
        let principal = SquareFreeIdeal::new(
            vec!["a".into(), "b".into()],
            vec![VertexSet::from_indices([0, 1])],
        )
        .unwrap();
        assert!(has_linear_resolution(&principal, f2(), &lim())
            .unwrap()
            .is_linear());

        // The edge ideal of the 4-cycle has a linear resolution (its
        // complement is two disjoint edges, a chordal graph).
        let ideal = SquareFreeIdeal::edge_ideal(&c4());
        assert!(has_linear_resolution(&ideal, f2(), &lim())
            .unwrap()
            .is_linear());
        assert!(froberg_check(&c4()).unwrap());

        // Mixed degrees are rejected.
        let mixed = SquareFreeIdeal::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                VertexSet::from_indices([0]),
                VertexSet::from_indices([1, 2]),
            ],
        )
        .unwrap();
        assert!(has_linear_resolution(&mixed, f2(), &lim()).is_err());
    }

    #[test]
    fn chordality_examples() {
        let triangle =
            Clutter::from_edge_labels(&["a", "b", "c"], &[&["a", "b"], &["b", "c"], &["a", "c"]])
                .unwrap();
        let order = is_chordal(&triangle)
            .unwrap()
            .expect("triangles are chordal");
        assert!(verify_elimination_ordering(&triangle, &order).unwrap());

        assert!(is_chordal(&c4()).unwrap().is_none());

        let with_chord = Clutter::from_edge_labels(
            &["a", "b", "c", "d"],
            &[
                &["a", "b"],
                &["b", "c"],
                &["c", "d"],
                &["a", "d"],
                &["a", "c"],
            ],
        )
        .unwrap();
        assert!(is_chordal(&with_chord).unwrap().is_some());

        let non_graph = Clutter::from_edge_labels(&["a", "b", "c"], &[&["a", "b", "c"]]).unwrap();
        assert!(is_chordal(&non_graph).is_err());
    }

    #[test]
    fn froberg_on_complete_graph() {
        let k3 =
            Clutter::from_edge_labels(&["a", "b", "c"], &[&["a", "b"], &["b", "c"], &["a", "c"]])
                .unwrap();
        // Empty complement is chordal.
        assert!(froberg_check(&k3).unwrap());
        assert_eq!(complement_graph(&k3).unwrap().edge_count(), 0);
    }

    #[test]
    fn recovery_on_two_disjoint_edges() {
        let c = Clutter::from_edge_labels(
            &["a", "b", "c", "d", "e", "f"],
            &[&["a", "b", "c"], &["d", "e", "f"]],
        )
        .unwrap();
        let report = recover_structure_g2(&c, f2(), &lim()).unwrap();
        let grid = report
            .structure
            .expect("two disjoint edges are recoverable");
        assert_eq!(grid.d(), 3);
        assert!(check_admissible_instance(&c, &grid)
            .unwrap()
            .is_admissible());
    }

    #[test]
    fn recovery_rejects_non_cm_input() {
        // The 4-cycle: uniform of size 2, height 2, unmixed, not CM.
        let report = recover_structure_g2(&c4(), f2(), &lim()).unwrap();
        assert!(report.structure.is_none());
        assert!(report.log.iter().any(|l| l.contains("not Cohen-Macaulay")));
    }

    #[test]
    fn recovery_requires_height_two() {
        let fixture = fixture_example_g3();
        assert!(recover_structure_g2(fixture.clutter(), f2(), &lim()).is_err());
    }
}
