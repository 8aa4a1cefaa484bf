use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::grid::{AdmissibleInstance, ExponentVector, GridStructure};
use crate::ideal::SquareFreeIdeal;
use crate::limits::Limits;
use crate::set::{minimal_sets, VertexSet};

/// Minimal generators of the colon ideal `(prefix) : u`, as supports:
/// the inclusion-minimal elements of `{ v \ u : v in prefix }`.
pub fn colon_step(prefix: &[VertexSet], u: VertexSet) -> Vec<VertexSet> {
    minimal_sets(prefix.iter().map(|v| v.difference(u)).collect())
}

/// Verdict of a linear-quotient check for one generator ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearQuotientReport {
    /// The ordering checked, as indices into the ideal's generator list.
    pub ordering: Vec<usize>,
    pub success: bool,
    /// Minimal colon generators per position, up to and including the first
    /// failing position.
    pub steps: Vec<Vec<VertexSet>>,
    pub failure: Option<FailureWitness>,
}

/// A re-verifiable linear-quotient failure: at `position`, the quotient of
/// the generator at `earlier` has degree >= 2 and no previously listed
/// generator supplies a dividing linear quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailureWitness {
    /// Position in the ordering where the colon ideal is not linear.
    pub position: usize,
    /// Earlier position whose quotient witnesses the failure.
    pub earlier: usize,
    /// The offending quotient support (degree >= 2).
    pub quotient: VertexSet,
}

/// Check whether the ideal has linear quotients under the given ordering:
/// every colon ideal against the preceding prefix must be generated by
/// variables. The ordering must be a permutation of the generators with
/// nondecreasing degrees.
pub fn check_linear_quotients(
    ideal: &SquareFreeIdeal,
    ordering: &[usize],
) -> Result<LinearQuotientReport> {
    let r = ideal.generator_count();
    if ordering.len() != r {
        return Err(Error::invalid(format!(
            "ordering has {} entries for {} generators",
            ordering.len(),
            r
        )));
    }
    let mut seen = vec![false; r];
    for &i in ordering {
        if i >= r || seen[i] {
            return Err(Error::invalid(
                "ordering is not a permutation of the generators",
            ));
        }
        seen[i] = true;
    }
    let gens = ideal.generators();
    for w in ordering.windows(2) {
        if gens[w[0]].len() > gens[w[1]].len() {
            return Err(Error::invalid(
                "ordering must list generators in nondecreasing degree",
            ));
        }
    }

    let mut steps = Vec::with_capacity(r);
    let mut prefix: Vec<VertexSet> = Vec::with_capacity(r);
    for (pos, &gi) in ordering.iter().enumerate() {
        let u = gens[gi];
        let colon = colon_step(&prefix, u);
        let bad = colon.iter().any(|c| c.len() >= 2);
        steps.push(colon);
        if bad {
            // Witness: the earliest prefix member whose quotient has degree
            // >= 2 and contains no linear quotient from the prefix.
            let singletons: Vec<VertexSet> = prefix
                .iter()
                .map(|v| v.difference(u))
                .filter(|d| d.len() == 1)
                .collect();
            let witness = ordering[..pos]
                .iter()
                .enumerate()
                .find_map(|(earlier, &gj)| {
                    let diff = gens[gj].difference(u);
                    (diff.len() >= 2 && !singletons.iter().any(|s| s.is_subset_of(diff)))
                        .then_some((earlier, diff))
                })
                .expect("a non-linear colon step has an unreduced quotient");
            return Ok(LinearQuotientReport {
                ordering: ordering.to_vec(),
                success: false,
                steps,
                failure: Some(FailureWitness {
                    position: pos,
                    earlier: witness.0,
                    quotient: witness.1,
                }),
            });
        }
        prefix.push(u);
    }
    Ok(LinearQuotientReport {
        ordering: ordering.to_vec(),
        success: true,
        steps,
        failure: None,
    })
}

/// The explicit exponent-vector orderings, plus the lex/revlex baselines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedOrdering {
    /// Height 2: smaller first entry precedes; ties broken by larger last
    /// entry.
    PaperG2,
    /// Height 3: order the outer pair `(first, last)` as in `PaperG2`; ties
    /// broken by larger middle entry.
    PaperG3,
    /// The alternative height-3 ordering for three color classes, with the
    /// outer pairs ordered (1,3) < (1,2) < (2,3) < (2,2) < (1,1) < (2,1) <
    /// (3,3) < (3,2) < (3,1).
    PaperG3Alt,
    /// Lexicographic: at the first differing position, the smaller entry
    /// precedes.
    Lex,
    /// Reverse lexicographic: at the last differing position, the larger
    /// entry precedes.
    RevLex,
}

/// Height-2 comparator on exponent pairs.
pub fn cmp_g2(a: (usize, usize), b: (usize, usize)) -> Ordering {
    a.0.cmp(&b.0).then(b.1.cmp(&a.1))
}

/// Height-3 comparator.
pub fn cmp_g3(a: &[usize], b: &[usize]) -> Ordering {
    cmp_g2((a[0], a[2]), (b[0], b[2])).then(b[1].cmp(&a[1]))
}

const G3_ALT_PAIRS: [(usize, usize); 9] = [
    (1, 3),
    (1, 2),
    (2, 3),
    (2, 2),
    (1, 1),
    (2, 1),
    (3, 3),
    (3, 2),
    (3, 1),
];

fn g3_alt_rank(p: (usize, usize)) -> Option<usize> {
    G3_ALT_PAIRS.iter().position(|&q| q == p)
}

pub fn cmp_g3_alt(a: &[usize], b: &[usize]) -> Ordering {
    let ra = g3_alt_rank((a[0], a[2])).expect("entries validated to 1..=3");
    let rb = g3_alt_rank((b[0], b[2])).expect("entries validated to 1..=3");
    ra.cmp(&rb).then(b[1].cmp(&a[1]))
}

pub fn cmp_lex(a: &[usize], b: &[usize]) -> Ordering {
    a.iter().cmp(b.iter())
}

pub fn cmp_revlex(a: &[usize], b: &[usize]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl NamedOrdering {
    /// Compare two exponent vectors. The vectors must have the length the
    /// ordering is defined for, with entries in range (`1..=3` for
    /// `PaperG3Alt`); [`sort_by_named_ordering`] validates this up front,
    /// direct misuse panics.
    pub fn compare(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        let (a, b) = (a.entries(), b.entries());
        match self {
            NamedOrdering::PaperG2 => cmp_g2((a[0], a[1]), (b[0], b[1])),
            NamedOrdering::PaperG3 => cmp_g3(a, b),
            NamedOrdering::PaperG3Alt => cmp_g3_alt(a, b),
            NamedOrdering::Lex => cmp_lex(a, b),
            NamedOrdering::RevLex => cmp_revlex(a, b),
        }
    }

    fn check_applicable(&self, d: usize, g: usize) -> Result<()> {
        let need = match self {
            NamedOrdering::PaperG2 => Some(2),
            NamedOrdering::PaperG3 | NamedOrdering::PaperG3Alt => Some(3),
            _ => None,
        };
        if let Some(want) = need {
            if g != want {
                return Err(Error::invalid(format!(
                    "{self:?} orders length-{want} exponent vectors, but g = {g}"
                )));
            }
        }
        if matches!(self, NamedOrdering::PaperG3Alt) && d != 3 {
            return Err(Error::invalid(format!(
                "PaperG3Alt is defined for exactly 3 color classes, but d = {d}"
            )));
        }
        Ok(())
    }
}

/// Sort the ideal's generators by a named ordering on their exponent vectors
/// with respect to `grid`. Returns the permutation (indices into the ideal's
/// canonical generator list). Every generator must be a size-g transversal of
/// the matching; entries outside `1..=d` are an input error.
pub fn sort_by_named_ordering(
    grid: &GridStructure,
    ideal: &SquareFreeIdeal,
    ordering: NamedOrdering,
) -> Result<Vec<usize>> {
    ordering.check_applicable(grid.d(), grid.g())?;
    let vectors: Vec<ExponentVector> = ideal
        .generators()
        .iter()
        .map(|&s| grid.exponent_vector(s))
        .collect::<Result<_>>()?;
    let mut perm: Vec<usize> = (0..vectors.len()).collect();
    perm.sort_by(|&i, &j| ordering.compare(&vectors[i], &vectors[j]));
    Ok(perm)
}

/// Two size-4 covers sharing their first and last entries whose two
/// middle-swapped hybrids are both non-covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadPair {
    pub first: ExponentVector,
    pub second: ExponentVector,
}

impl fmt::Display for BadPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

fn g4_cover_vectors(
    instance: &AdmissibleInstance,
    limits: &Limits,
) -> Result<(Vec<ExponentVector>, HashSet<[usize; 4]>)> {
    if instance.grid().g() != 4 {
        return Err(Error::invalid(format!(
            "condition (*) is defined for height 4, got g = {}",
            instance.grid().g()
        )));
    }
    if instance.clutter().uniform_size() != Some(instance.grid().d()) {
        return Err(Error::invalid("condition (*) requires a uniform instance"));
    }
    if !instance.clutter().is_unmixed(limits)? {
        return Err(Error::invalid("condition (*) requires an unmixed instance"));
    }
    let covers = instance.clutter().minimal_vertex_covers(limits)?;
    let vectors: Vec<ExponentVector> = covers
        .iter()
        .map(|&c| instance.grid().exponent_vector(c))
        .collect::<Result<_>>()?;
    let index: HashSet<[usize; 4]> = vectors.iter().map(|v| key4(v.entries())).collect();
    Ok((vectors, index))
}

fn key4(e: &[usize]) -> [usize; 4] {
    [e[0], e[1], e[2], e[3]]
}

/// Scan all pairs of minimal covers sharing their first and last entries for
/// a bad vertex cover pair. Pairs are scanned in ascending lexicographic
/// order on (first, second); the first bad pair found is returned.
pub fn satisfies_condition_star(
    instance: &AdmissibleInstance,
    limits: &Limits,
) -> Result<Option<BadPair>> {
    let (vectors, index) = g4_cover_vectors(instance, limits)?;
    let mut sorted: Vec<[usize; 4]> = vectors.iter().map(|v| key4(v.entries())).collect();
    sorted.sort_unstable();
    for (pi, p) in sorted.iter().enumerate() {
        for q in &sorted[pi + 1..] {
            if p[0] != q[0] || p[3] != q[3] {
                continue;
            }
            let swap_pq = [p[0], p[1], q[2], p[3]];
            let swap_qp = [p[0], q[1], p[2], p[3]];
            if !index.contains(&swap_pq) && !index.contains(&swap_qp) {
                return Ok(Some(BadPair {
                    first: ExponentVector::new(p.to_vec()),
                    second: ExponentVector::new(q.to_vec()),
                }));
            }
        }
    }
    Ok(None)
}

/// The total order on the dual generators of a height-4 instance without
/// condition (*), built and audited up front.
#[derive(Debug, Clone)]
pub struct G4Order {
    vectors: Vec<ExponentVector>,
    matrix: Vec<Vec<Ordering>>,
    permutation: Vec<usize>,
}

impl G4Order {
    /// Indices into the canonical dual generator list, in order.
    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    /// Compare two generator exponent vectors.
    pub fn compare(&self, a: &ExponentVector, b: &ExponentVector) -> Result<Ordering> {
        let ia = self
            .vectors
            .iter()
            .position(|v| v == a)
            .ok_or_else(|| Error::invalid(format!("{a} is not a dual generator")))?;
        let ib = self
            .vectors
            .iter()
            .position(|v| v == b)
            .ok_or_else(|| Error::invalid(format!("{b} is not a dual generator")))?;
        Ok(self.matrix[ia][ib])
    }
}

/// Build the height-4 generator order:
///
/// 1. compare `(first, last)` as in the height-2 order;
/// 2. on ties, the larger third entry precedes;
/// 3. when only the second entries differ, `u` precedes `v` if some higher
///    third entry completes `u` to a cover but not `v`;
/// 4. otherwise the larger second entry precedes.
///
/// Requires condition (*) to be absent (the order is only well-defined then);
/// the failure carries the bad pair. Antisymmetry and transitivity are
/// verified exhaustively over all generator pairs and triples before the
/// order is returned.
pub fn order_g4(instance: &AdmissibleInstance, limits: &Limits) -> Result<G4Order> {
    if let Some(pair) = satisfies_condition_star(instance, limits)? {
        return Err(Error::ConditionStar(pair));
    }
    let (vectors, index) = g4_cover_vectors(instance, limits)?;
    let d = instance.grid().d();
    let r = vectors.len();

    let cmp_one = |u: &[usize], v: &[usize]| -> Result<Ordering> {
        if u == v {
            return Ok(Ordering::Equal);
        }
        let outer = cmp_g2((u[0], u[3]), (v[0], v[3]));
        if outer != Ordering::Equal {
            return Ok(outer);
        }
        if u[2] != v[2] {
            return Ok(if u[2] > v[2] {
                Ordering::Less
            } else {
                Ordering::Greater
            });
        }
        let t = u[2];
        let wit = |b: usize, s: usize| {
            (t + 1..=d).any(|c| {
                index.contains(&[u[0], b, c, u[3]]) && !index.contains(&[u[0], s, c, u[3]])
            })
        };
        match (wit(u[1], v[1]), wit(v[1], u[1])) {
            (true, false) => Ok(Ordering::Less),
            (false, true) => Ok(Ordering::Greater),
            (true, true) => Err(Error::InternalInvariant(
                "two-sided rule-3 witnesses found; condition (*) was not detected".into(),
            )),
            (false, false) => Ok(if u[1] > v[1] {
                Ordering::Less
            } else {
                Ordering::Greater
            }),
        }
    };

    let mut matrix = vec![vec![Ordering::Equal; r]; r];
    for i in 0..r {
        for j in 0..r {
            matrix[i][j] = cmp_one(vectors[i].entries(), vectors[j].entries())?;
        }
    }
    // Totality audit: antisymmetry on all pairs, transitivity on all triples.
    for i in 0..r {
        for j in 0..r {
            if matrix[i][j] != matrix[j][i].reverse() {
                return Err(Error::InternalInvariant(format!(
                    "order is not antisymmetric on ({}, {})",
                    vectors[i], vectors[j]
                )));
            }
            if i != j && matrix[i][j] == Ordering::Equal {
                return Err(Error::InternalInvariant(format!(
                    "distinct generators {} and {} compare equal",
                    vectors[i], vectors[j]
                )));
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            if matrix[i][j] != Ordering::Less {
                continue;
            }
            for k in 0..r {
                if matrix[j][k] == Ordering::Less && matrix[i][k] != Ordering::Less {
                    return Err(Error::InternalInvariant(format!(
                        "order is not transitive on ({}, {}, {})",
                        vectors[i], vectors[j], vectors[k]
                    )));
                }
            }
        }
    }
    let mut permutation: Vec<usize> = (0..r).collect();
    permutation.sort_by(|&i, &j| matrix[i][j]);
    Ok(G4Order {
        vectors,
        matrix,
        permutation,
    })
}

/// Search for some ordering with linear quotients, backtracking over prefixes
/// with memoization on the chosen-generator subset (the colon ideal of a
/// prefix depends only on its set). Returns a witness ordering, a definitive
/// `None`, or a budget error when the generator count exceeds the subset
/// budget.
pub fn exists_linear_quotients_ordering(
    ideal: &SquareFreeIdeal,
    limits: &Limits,
) -> Result<Option<Vec<usize>>> {
    let r = ideal.generator_count();
    if r == 0 {
        return Ok(Some(Vec::new()));
    }
    if ideal.equigenerated_degree().is_none() {
        return Err(Error::invalid(
            "the ordering search requires an equigenerated ideal",
        ));
    }
    if r > limits.max_search_generators {
        return Err(Error::BudgetExceeded {
            budget: "max_search_generators",
            limit: limits.max_search_generators,
        });
    }
    let gens = ideal.generators();
    let n = ideal.ambient_size();
    // diff[v][u] = support of gens[v] / gcd(gens[v], gens[u]).
    let diff: Vec<Vec<VertexSet>> = gens
        .iter()
        .map(|&v| gens.iter().map(|&u| v.difference(u)).collect())
        .collect();
    // linear_by[u][x] = generators whose quotient against u is exactly {x}.
    let mut linear_by = vec![vec![0u32; n]; r];
    for u in 0..r {
        for (w, diffs) in diff.iter().enumerate() {
            let dwu = diffs[u];
            if dwu.len() == 1 {
                linear_by[u][dwu.min_index().unwrap()] |= 1 << w;
            }
        }
    }

    let colon_linear = |set: u32, cand: usize| -> bool {
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let dvc = diff[v][cand];
            if dvc.len() >= 2 && !dvc.iter().any(|x| linear_by[cand][x] & set != 0) {
                return false;
            }
        }
        true
    };

    let mut dead = vec![false; 1usize << r];
    let mut order: Vec<usize> = Vec::with_capacity(r);

    fn dfs(
        set: u32,
        r: usize,
        order: &mut Vec<usize>,
        dead: &mut [bool],
        colon_linear: &dyn Fn(u32, usize) -> bool,
    ) -> bool {
        if order.len() == r {
            return true;
        }
        for cand in 0..r {
            if set & (1 << cand) != 0 {
                continue;
            }
            let next = set | (1 << cand);
            if dead[next as usize] || !colon_linear(set, cand) {
                continue;
            }
            order.push(cand);
            if dfs(next, r, order, dead, colon_linear) {
                return true;
            }
            order.pop();
            dead[next as usize] = true;
        }
        false
    }

    if dfs(0, r, &mut order, &mut dead, &colon_linear) {
        Ok(Some(order))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{fixture_example_g3, gen_counterexample, gen_random_admissible};

    fn lim() -> Limits {
        Limits::default()
    }

    fn ev(e: &[usize]) -> ExponentVector {
        ExponentVector::new(e.to_vec())
    }

    #[test]
    fn colon_step_examples() {
        assert!(colon_step(&[], VertexSet::from_indices([0])).is_empty());
        // (ab) : (bc) = (a)
        let ab = VertexSet::from_indices([0, 1]);
        let bc = VertexSet::from_indices([1, 2]);
        assert_eq!(colon_step(&[ab], bc), vec![VertexSet::from_indices([0])]);
    }

    #[test]
    fn colon_step_on_fixture_covers() {
        let inst = fixture_example_g3();
        let g = inst.grid();
        let x1z2y3 = g.vertex_set(&ev(&[1, 3, 2])).unwrap();
        let z1y2y3 = g.vertex_set(&ev(&[3, 2, 2])).unwrap();
        let colon = colon_step(&[x1z2y3], z1y2y3);
        // The quotient is x1 z2.
        let c = inst.clutter();
        let expected =
            VertexSet::from_indices([c.index_of("x1").unwrap(), c.index_of("z2").unwrap()]);
        assert_eq!(colon, vec![expected]);
    }

    #[test]
    fn g2_comparator_examples() {
        assert_eq!(cmp_g2((1, 3), (1, 2)), Ordering::Less);
        assert_eq!(cmp_g2((2, 3), (2, 1)), Ordering::Less);
        assert_eq!(cmp_g2((1, 1), (2, 3)), Ordering::Less);
        assert_eq!(cmp_g2((2, 2), (2, 2)), Ordering::Equal);
    }

    #[test]
    fn g3_comparator_examples() {
        let chain = [
            ev(&[1, 3, 3]),
            ev(&[1, 2, 3]),
            ev(&[1, 1, 3]),
            ev(&[1, 3, 2]),
        ];
        for w in chain.windows(2) {
            assert_eq!(NamedOrdering::PaperG3.compare(&w[0], &w[1]), Ordering::Less);
        }
        // (d,1,1) is the maximum over every vector for d = 3.
        let top = ev(&[3, 1, 1]);
        for a in 1..=3 {
            for b in 1..=3 {
                for c in 1..=3 {
                    let v = ev(&[a, b, c]);
                    if v != top {
                        assert_eq!(NamedOrdering::PaperG3.compare(&v, &top), Ordering::Less);
                    }
                }
            }
        }
        assert_eq!(
            NamedOrdering::PaperG3.compare(&ev(&[2, 1, 3]), &ev(&[2, 1, 3])),
            Ordering::Equal
        );
    }

    #[test]
    fn revlex_convention_matches_worked_example() {
        // x1 z2 y3 before z1 y2 y3: (1,3,2) < (3,2,2).
        assert_eq!(cmp_revlex(&[1, 3, 2], &[3, 2, 2]), Ordering::Less);
        // Larger entry at the last differing position precedes.
        assert_eq!(cmp_revlex(&[1, 1, 3], &[1, 1, 2]), Ordering::Less);
        assert_eq!(cmp_lex(&[1, 2, 3], &[1, 3, 1]), Ordering::Less);
    }

    fn total_order_audit<F: Fn(&[usize], &[usize]) -> Ordering>(vectors: &[Vec<usize>], cmp: F) {
        for a in vectors {
            for b in vectors {
                let ab = cmp(a, b);
                assert_eq!(ab, cmp(b, a).reverse(), "antisymmetry on {a:?}, {b:?}");
                if a != b {
                    assert_ne!(
                        ab,
                        Ordering::Equal,
                        "distinct vectors compare equal: {a:?} {b:?}"
                    );
                }
                for c in vectors {
                    if ab == Ordering::Less && cmp(b, c) == Ordering::Less {
                        assert_eq!(
                            cmp(a, c),
                            Ordering::Less,
                            "transitivity on {a:?},{b:?},{c:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn g2_and_g3_are_strict_total_orders_up_to_d5() {
        for d in 1..=5usize {
            let pairs: Vec<Vec<usize>> = (1..=d)
                .flat_map(|a| (1..=d).map(move |b| vec![a, b]))
                .collect();
            total_order_audit(&pairs, |a, b| cmp_g2((a[0], a[1]), (b[0], b[1])));
        }
        for d in 1..=5usize {
            let triples: Vec<Vec<usize>> = (1..=d)
                .flat_map(|a| (1..=d).flat_map(move |b| (1..=d).map(move |c| vec![a, b, c])))
                .collect();
            total_order_audit(&triples, cmp_g3);
        }
        let triples: Vec<Vec<usize>> = (1..=3)
            .flat_map(|a| (1..=3).flat_map(move |b| (1..=3).map(move |c| vec![a, b, c])))
            .collect();
        total_order_audit(&triples, cmp_g3_alt);
    }

    #[test]
    fn single_generator_always_has_linear_quotients() {
        let ideal = SquareFreeIdeal::new(
            vec!["a".into(), "b".into()],
            vec![VertexSet::from_indices([0, 1])],
        )
        .unwrap();
        let report = check_linear_quotients(&ideal, &[0]).unwrap();
        assert!(report.success);
        assert_eq!(report.steps, vec![vec![]]);
    }

    #[test]
    fn degree_decreasing_orderings_are_rejected() {
        let ideal = SquareFreeIdeal::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                VertexSet::from_indices([0]),
                VertexSet::from_indices([1, 2]),
            ],
        )
        .unwrap();
        assert!(check_linear_quotients(&ideal, &[1, 0]).is_err());
        assert!(check_linear_quotients(&ideal, &[0, 0]).is_err());
        assert!(check_linear_quotients(&ideal, &[0, 1]).unwrap().success);
    }

    #[test]
    fn fixture_dual_fails_under_revlex_with_the_known_witness() {
        let inst = fixture_example_g3();
        let dual = SquareFreeIdeal::cover_ideal(inst.clutter(), &lim()).unwrap();
        let perm = sort_by_named_ordering(inst.grid(), &dual, NamedOrdering::RevLex).unwrap();
        let report = check_linear_quotients(&dual, &perm).unwrap();
        assert!(!report.success);
        let w = report.failure.unwrap();
        let g = inst.grid();
        let failing = dual.generators()[report.ordering[w.position]];
        let earlier = dual.generators()[report.ordering[w.earlier]];
        assert_eq!(g.exponent_vector(failing).unwrap(), ev(&[3, 2, 2]));
        assert_eq!(g.exponent_vector(earlier).unwrap(), ev(&[1, 3, 2]));
        let c = inst.clutter();
        assert_eq!(
            w.quotient,
            VertexSet::from_indices([c.index_of("x1").unwrap(), c.index_of("z2").unwrap()])
        );
    }

    #[test]
    fn fixture_dual_succeeds_under_g3_orderings() {
        let inst = fixture_example_g3();
        let dual = SquareFreeIdeal::cover_ideal(inst.clutter(), &lim()).unwrap();
        for ord in [NamedOrdering::PaperG3, NamedOrdering::PaperG3Alt] {
            let perm = sort_by_named_ordering(inst.grid(), &dual, ord).unwrap();
            let report = check_linear_quotients(&dual, &perm).unwrap();
            assert!(report.success, "{ord:?} should certify linear quotients");
            // The first generator under the ordering has an empty colon step.
            assert!(report.steps[0].is_empty());
        }
    }

    #[test]
    fn failure_witnesses_reverify() {
        let inst = fixture_example_g3();
        let dual = SquareFreeIdeal::cover_ideal(inst.clutter(), &lim()).unwrap();
        let perm = sort_by_named_ordering(inst.grid(), &dual, NamedOrdering::RevLex).unwrap();
        let report = check_linear_quotients(&dual, &perm).unwrap();
        let w = report.failure.unwrap();
        let gens = dual.generators();
        let u = gens[report.ordering[w.position]];
        let vj = gens[report.ordering[w.earlier]];
        assert_eq!(vj.difference(u), w.quotient);
        assert!(w.quotient.len() >= 2);
        for &k in &report.ordering[..w.position] {
            let dk = gens[k].difference(u);
            assert!(!(dk.len() == 1 && dk.is_subset_of(w.quotient)));
        }
    }

    #[test]
    fn matching_only_g4_has_no_bad_pair() {
        let inst = gen_random_admissible(3, 4, 0, 0).unwrap();
        assert_eq!(satisfies_condition_star(&inst, &lim()).unwrap(), None);
    }

    #[test]
    fn condition_star_requires_g4() {
        let inst = fixture_example_g3();
        assert!(satisfies_condition_star(&inst, &lim()).is_err());
    }

    #[test]
    fn counterexample_g4_has_a_bad_pair() {
        let inst = gen_counterexample(4).unwrap();
        let pair = satisfies_condition_star(&inst, &lim())
            .unwrap()
            .expect("bad pair exists");
        // Re-verify the definition directly.
        let covers = inst.clutter().minimal_vertex_covers(&lim()).unwrap();
        let g = inst.grid();
        let as_set = |v: &ExponentVector| g.vertex_set(v).unwrap();
        assert!(covers.contains(as_set(&pair.first)));
        assert!(covers.contains(as_set(&pair.second)));
        let (p, q) = (pair.first.entries(), pair.second.entries());
        assert_eq!(p[0], q[0]);
        assert_eq!(p[3], q[3]);
        let swap1 = ev(&[p[0], p[1], q[2], p[3]]);
        let swap2 = ev(&[p[0], q[1], p[2], p[3]]);
        assert!(!inst.clutter().covers(as_set(&swap1)));
        assert!(!inst.clutter().covers(as_set(&swap2)));
    }

    #[test]
    fn order_g4_on_counterexample_reports_condition_star() {
        let inst = gen_counterexample(4).unwrap();
        assert!(matches!(
            order_g4(&inst, &lim()),
            Err(Error::ConditionStar(_))
        ));
    }

    #[test]
    fn order_g4_rules_on_matching_only_instance() {
        let inst = gen_random_admissible(3, 4, 0, 0).unwrap();
        let order = order_g4(&inst, &lim()).unwrap();
        // Rule 1: the first entry decides.
        assert_eq!(
            order
                .compare(&ev(&[1, 1, 1, 1]), &ev(&[2, 1, 1, 1]))
                .unwrap(),
            Ordering::Less
        );
        // Rule 1 tie-break: larger last entry precedes.
        assert_eq!(
            order
                .compare(&ev(&[1, 1, 1, 3]), &ev(&[1, 1, 1, 2]))
                .unwrap(),
            Ordering::Less
        );
        // Rule 2: larger third entry precedes.
        assert_eq!(
            order
                .compare(&ev(&[1, 1, 3, 1]), &ev(&[1, 1, 2, 1]))
                .unwrap(),
            Ordering::Less
        );
        // Rule 4 (no rule-3 witness on a complete transversal family):
        // the larger second entry precedes.
        assert_eq!(
            order
                .compare(&ev(&[1, 2, 2, 1]), &ev(&[1, 1, 2, 1]))
                .unwrap(),
            Ordering::Less
        );
        assert_eq!(
            order
                .compare(&ev(&[1, 2, 2, 1]), &ev(&[1, 2, 2, 1]))
                .unwrap(),
            Ordering::Equal
        );
        // The induced ordering certifies linear quotients.
        let dual = SquareFreeIdeal::cover_ideal(inst.clutter(), &lim()).unwrap();
        let report = check_linear_quotients(&dual, order.permutation()).unwrap();
        assert!(report.success);
    }

    #[test]
    fn search_finds_ordering_for_fixture_dual() {
        let inst = fixture_example_g3();
        let dual = SquareFreeIdeal::cover_ideal(inst.clutter(), &lim()).unwrap();
        assert_eq!(dual.generator_count(), 19);
        let order = exists_linear_quotients_ordering(&dual, &lim())
            .unwrap()
            .expect("an ordering exists");
        let report = check_linear_quotients(&dual, &order).unwrap();
        assert!(report.success);
    }

    #[test]
    fn search_on_counterexample_dual_hits_the_generator_budget() {
        let inst = gen_counterexample(4).unwrap();
        let dual = SquareFreeIdeal::cover_ideal(inst.clutter(), &lim()).unwrap();
        match exists_linear_quotients_ordering(&dual, &lim()) {
            Err(Error::BudgetExceeded {
                budget: "max_search_generators",
                ..
            }) => {}
            Ok(None) => {}
            other => panic!("expected none or a budget error, got {other:?}"),
        }
    }

    #[test]
    fn search_trivial_cases() {
        let single = SquareFreeIdeal::new(
            vec!["a".into(), "b".into()],
            vec![VertexSet::from_indices([0, 1])],
        )
        .unwrap();
        assert_eq!(
            exists_linear_quotients_ordering(&single, &lim()).unwrap(),
            Some(vec![0])
        );
        let empty = SquareFreeIdeal::new(vec!["a".into()], vec![]).unwrap();
        assert_eq!(
            exists_linear_quotients_ordering(&empty, &lim()).unwrap(),
            Some(vec![])
        );
    }
}
