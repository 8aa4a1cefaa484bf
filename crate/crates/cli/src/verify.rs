//! The built-in verification suite: twelve reproducible checks covering the
//! fixture reproduction, the explicit orderings at heights 2-4, the
//! counterexample family, duality cross-validations, the cover
//! transformations, disjoint-union composition, the Fröberg/chordality
//! equivalence, and height-2 structure recovery.
//!
//! Every check is deterministic (fixed seeds) and carries a wall-clock
//! budget; a check passes only if its assertions hold within the budget.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use clutters::{
    check_admissible_instance, check_linear_quotients, exists_linear_quotients_ordering,
    fixture_example_g3, froberg_check, gen_counterexample, gen_random_admissible,
    has_linear_resolution, is_cohen_macaulay, order_g4, recover_structure_g2, sample_unmixed,
    satisfies_condition_star, sort_by_named_ordering, verify_not_cm_witness, AdmissibleInstance,
    Clutter, CmStatus, Error, ExponentVector, Limits, NamedOrdering, PrimeField, SquareFreeIdeal,
    VertexSet,
};

/// Pinned regression constants, found once by the discovery runs in the
/// core crate's `offline_search` test target (documented one-time step).
mod pinned {
    /// Minimal vertex cover counts of the counterexample family, verified
    /// against the exhaustive subset oracle at height 4.
    pub const COVER_COUNTS: [(usize, usize); 3] = [(4, 273), (5, 1365), (6, 6825)];

    /// First bad vertex cover pair of the height-4 member in canonical scan
    /// order.
    pub const BAD_PAIR: ([usize; 4], [usize; 4]) = ([3, 2, 5, 1], [3, 3, 3, 1]);

    /// Face of the independence complex of the height-4 member whose link is
    /// disconnected (nonzero reduced homology in degree 0 below the link
    /// dimension), as grid cells (color, block). The same face witnesses the
    /// failure in characteristics 2, 3, and 32003.
    pub const REISNER_WITNESS_CELLS: [(usize, usize); 14] = [
        (1, 1),
        (1, 2),
        (1, 3),
        (1, 4),
        (2, 1),
        (2, 3),
        (2, 4),
        (3, 1),
        (3, 2),
        (3, 3),
        (3, 4),
        (4, 1),
        (5, 2),
        (5, 4),
    ];
    pub const REISNER_WITNESS_DEGREE: i64 = 0;
}

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
    pub budget_ms: u128,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {:02} [{}]: {} ({} ms, budget {} ms) - {}",
            self.id,
            self.title,
            if self.passed { "PASS" } else { "FAIL" },
            self.millis,
            self.budget_ms,
            self.detail
        )
    }
}

type CriterionBody = fn(&Limits) -> Result<String, String>;

const CRITERIA: [(usize, &str, u128, CriterionBody); 12] = [
    (1, "fixture reproduction", 1_000, c01_fixture),
    (
        2,
        "revlex failure and height-3 certificate",
        1_000,
        c02_orderings,
    ),
    (3, "height-2 suite", 60_000, c03_height2),
    (4, "height-3 suite", 300_000, c04_height3),
    (5, "height-4 equivalence suite", 600_000, c05_height4),
    (6, "counterexample family", 10_000, c06_counterexamples),
    (7, "duality cross-validation", 600_000, c07_eagon_reiner),
    (8, "duality involution", 30_000, c08_involution),
    (9, "cover transformation suite", 60_000, c09_transformations),
    (
        10,
        "disjoint union composition",
        300_000,
        c10_disjoint_unions,
    ),
    (11, "Fröberg/chordality agreement", 600_000, c11_froberg),
    (12, "height-2 structure recovery", 120_000, c12_recovery),
];

pub fn criterion_count() -> usize {
    CRITERIA.len()
}

pub fn run_criterion(id: usize, limits: &Limits) -> CriterionOutcome {
    let (cid, title, budget_ms, body) = CRITERIA
        .iter()
        .find(|(cid, ..)| *cid == id)
        .copied()
        .unwrap_or_else(|| panic!("no criterion {id}"));
    let start = Instant::now();
    let result = body(limits);
    let millis = start.elapsed().as_millis();
    let (mut passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if millis > budget_ms {
        passed = false;
    }
    CriterionOutcome {
        id: cid,
        title,
        passed,
        detail,
        millis,
        budget_ms,
    }
}

pub fn run_all(limits: &Limits) -> Vec<CriterionOutcome> {
    CRITERIA
        .iter()
        .map(|(id, ..)| run_criterion(*id, limits))
        .collect()
}

fn f2() -> PrimeField {
    PrimeField::new(2).unwrap()
}

fn ev(e: &[usize]) -> ExponentVector {
    ExponentVector::new(e.to_vec())
}

fn err(msg: impl Into<String>) -> String {
    msg.into()
}

fn c01_fixture(limits: &Limits) -> Result<String, String> {
    let inst = fixture_example_g3();
    let covers = inst
        .clutter()
        .minimal_vertex_covers(limits)
        .map_err(|e| e.to_string())?;
    if covers.len() != 19 {
        return Err(err(format!(
            "expected 19 minimal covers, got {}",
            covers.len()
        )));
    }
    if !covers.iter().all(|c| c.len() == 3) {
        return Err(err("some minimal cover does not have size 3"));
    }
    if !inst
        .clutter()
        .is_unmixed(limits)
        .map_err(|e| e.to_string())?
    {
        return Err(err("fixture is not unmixed"));
    }
    let report =
        check_admissible_instance(inst.clutter(), inst.grid()).map_err(|e| e.to_string())?;
    if !report.is_admissible() {
        return Err(err("fixture fails the admissibility check"));
    }
    Ok("19 minimal covers, all of size 3; unmixed; admissible".into())
}

fn c02_orderings(limits: &Limits) -> Result<String, String> {
    let inst = fixture_example_g3();
    let grid = inst.grid();
    let clutter = inst.clutter();
    let dual = SquareFreeIdeal::cover_ideal(clutter, limits).map_err(|e| e.to_string())?;

    let perm =
        sort_by_named_ordering(grid, &dual, NamedOrdering::RevLex).map_err(|e| e.to_string())?;
    let report = check_linear_quotients(&dual, &perm).map_err(|e| e.to_string())?;
    if report.success {
        return Err(err("reverse lexicographic ordering unexpectedly certified"));
    }
    let w = report.failure.as_ref().expect("failures carry a witness");
    let failing = grid
        .exponent_vector(dual.generators()[report.ordering[w.position]])
        .map_err(|e| e.to_string())?;
    let earlier = grid
        .exponent_vector(dual.generators()[report.ordering[w.earlier]])
        .map_err(|e| e.to_string())?;
    // The failure must sit at the cover {z1, y2, y3} against the earlier
    // {x1, z2, y3}, with quotient {x1, z2} of degree 2.
    if failing != ev(&[3, 2, 2]) {
        return Err(err(format!("failure at {failing}, expected (3,2,2)")));
    }
    if earlier != ev(&[1, 3, 2]) {
        return Err(err(format!("witness against {earlier}, expected (1,3,2)")));
    }
    let quotient = VertexSet::from_indices([
        clutter.index_of("x1").unwrap(),
        clutter.index_of("z2").unwrap(),
    ]);
    if w.quotient != quotient || w.quotient.len() != 2 {
        return Err(err(format!(
            "quotient {}, expected {{x1, z2}} of degree 2",
            clutter.format_set(w.quotient)
        )));
    }

    for ordering in [NamedOrdering::PaperG3, NamedOrdering::PaperG3Alt] {
        let perm = sort_by_named_ordering(grid, &dual, ordering).map_err(|e| e.to_string())?;
        let report = check_linear_quotients(&dual, &perm).map_err(|e| e.to_string())?;
        if !report.success {
            return Err(err(format!(
                "{ordering:?} failed to certify linear quotients"
            )));
        }
        if report.steps.len() != 19 || report.steps[1..].iter().any(|s| s.is_empty()) {
            return Err(err("certificate is incomplete"));
        }
    }
    Ok("revlex fails at (3,2,2) against (1,3,2) with quotient {x1, z2}; height-3 orderings certify".into())
}

/// Deterministic stream of unmixed admissible instances.
fn unmixed_instances(
    d_choices: &[usize],
    g: usize,
    count: usize,
    base_seed: u64,
    limits: &Limits,
) -> Result<Vec<AdmissibleInstance>, String> {
    let mut out = Vec::with_capacity(count);
    let mut k = 0u64;
    while out.len() < count {
        let d = d_choices[(k as usize) % d_choices.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(base_seed ^ k);
        let available = nonconstant_sequences(d, g);
        let extra = rng.random_range(0..=available.min(5));
        let (inst, _) = sample_unmixed(d, g, extra, base_seed.wrapping_add(1_000 * k), limits)
            .map_err(|e| e.to_string())?;
        out.push(inst);
        k += 1;
    }
    Ok(out)
}

fn nonconstant_sequences(d: usize, g: usize) -> usize {
    fn binom(n: usize, k: usize) -> usize {
        let mut acc = 1usize;
        for i in 0..k {
            acc = acc * (n - i) / (i + 1);
        }
        acc
    }
    binom(g + d - 1, d) - g
}

fn c03_height2(limits: &Limits) -> Result<String, String> {
    let instances = unmixed_instances(&[2, 3, 4], 2, 200, 0x0302, limits)?;
    for (k, inst) in instances.iter().enumerate() {
        let dual =
            SquareFreeIdeal::cover_ideal(inst.clutter(), limits).map_err(|e| e.to_string())?;
        let perm = sort_by_named_ordering(inst.grid(), &dual, NamedOrdering::PaperG2)
            .map_err(|e| e.to_string())?;
        let report = check_linear_quotients(&dual, &perm).map_err(|e| e.to_string())?;
        if !report.success {
            return Err(err(format!(
                "instance {k}: height-2 ordering failed to certify"
            )));
        }
        if inst.clutter().vertex_count() > 12 {
            return Err(err(format!("instance {k}: more than 12 vertices")));
        }
        let verdict = is_cohen_macaulay(inst.clutter(), f2(), limits).map_err(|e| e.to_string())?;
        if !verdict.is_cm() {
            return Err(err(format!(
                "instance {k}: not Cohen-Macaulay: {:?}",
                verdict.status
            )));
        }
    }
    Ok("200 unmixed height-2 instances: ordering certifies and all are Cohen-Macaulay".into())
}

fn c04_height3(limits: &Limits) -> Result<String, String> {
    let instances = unmixed_instances(&[2, 3], 3, 200, 0x0403, limits)?;
    for (k, inst) in instances.iter().enumerate() {
        let dual =
            SquareFreeIdeal::cover_ideal(inst.clutter(), limits).map_err(|e| e.to_string())?;
        let perm = sort_by_named_ordering(inst.grid(), &dual, NamedOrdering::PaperG3)
            .map_err(|e| e.to_string())?;
        let report = check_linear_quotients(&dual, &perm).map_err(|e| e.to_string())?;
        if !report.success {
            return Err(err(format!(
                "instance {k}: height-3 ordering failed to certify"
            )));
        }
        let verdict = is_cohen_macaulay(inst.clutter(), f2(), limits).map_err(|e| e.to_string())?;
        if !verdict.is_cm() {
            return Err(err(format!(
                "instance {k}: not Cohen-Macaulay: {:?}",
                verdict.status
            )));
        }
    }
    Ok("200 unmixed height-3 instances: ordering certifies and all are Cohen-Macaulay".into())
}

/// Unmixed height-4 instances within the generator filter that satisfy
/// condition (*) are rare (roughly one in several thousand random draws), so
/// three known parameter triples `(d, extra, seed)` are pinned into the
/// stream to exercise the negative direction of the equivalence.
const STAR_INSTANCES_G4: [(usize, usize, u64); 3] = [(3, 11, 2438), (3, 12, 168), (3, 12, 3479)];

fn c05_height4(limits: &Limits) -> Result<String, String> {
    let mut instances: Vec<AdmissibleInstance> = Vec::with_capacity(100);
    for (d, extra, seed) in STAR_INSTANCES_G4 {
        instances.push(gen_random_admissible(d, 4, extra, seed).map_err(|e| e.to_string())?);
    }
    let mut k = 0u64;
    while instances.len() < 100 {
        let d = [2usize, 3][(k as usize) % 2];
        let mut rng = ChaCha8Rng::seed_from_u64(0x0504 ^ k);
        let available = nonconstant_sequences(d, 4);
        let extra = rng.random_range(1..=available.min(10));
        k += 1;
        let Ok((inst, _)) = sample_unmixed(d, 4, extra, 0x0504_0000 + 1_000 * k, limits) else {
            continue;
        };
        let gens = inst
            .clutter()
            .minimal_vertex_covers(limits)
            .map_err(|e| e.to_string())?;
        if gens.len() > 20 {
            continue;
        }
        instances.push(inst);
    }

    let mut with_star = 0usize;
    for (idx, inst) in instances.iter().enumerate() {
        let dual =
            SquareFreeIdeal::cover_ideal(inst.clutter(), limits).map_err(|e| e.to_string())?;
        let star = satisfies_condition_star(inst, limits).map_err(|e| e.to_string())?;
        let found = exists_linear_quotients_ordering(&dual, limits).map_err(|e| e.to_string())?;
        match (&star, &found) {
            (None, Some(order)) => {
                let report = check_linear_quotients(&dual, order).map_err(|e| e.to_string())?;
                if !report.success {
                    return Err(err(format!(
                        "instance {idx}: search ordering failed to re-verify"
                    )));
                }
                // The explicit order must certify too; its construction runs
                // the totality audit.
                let g4 = order_g4(inst, limits).map_err(|e| e.to_string())?;
                let report =
                    check_linear_quotients(&dual, g4.permutation()).map_err(|e| e.to_string())?;
                if !report.success {
                    return Err(err(format!(
                        "instance {idx}: explicit height-4 order failed"
                    )));
                }
            }
            (Some(_), None) => {
                with_star += 1;
                match order_g4(inst, limits) {
                    Err(Error::ConditionStar(_)) => {}
                    other => {
                        return Err(err(format!(
                            "instance {idx}: expected a condition (*) failure, got {other:?}"
                        )))
                    }
                }
            }
            (star, found) => {
                return Err(err(format!(
                    "instance {idx}: equivalence violated: condition (*) = {}, ordering found = {}",
                    star.is_some(),
                    found.is_some()
                )));
            }
        }
    }
    if with_star == 0 {
        return Err(err("no instance with condition (*) was exercised"));
    }
    Ok(format!(
        "100 unmixed height-4 instances: ordering exists iff condition (*) absent ({with_star} with the condition); explicit order certified and audited"
    ))
}

fn c06_counterexamples(limits: &Limits) -> Result<String, String> {
    for (g, expected) in pinned::COVER_COUNTS {
        let inst = gen_counterexample(g).map_err(|e| e.to_string())?;
        if inst.clutter().uniform_size() != Some(5) {
            return Err(err(format!("g={g}: not uniform of size 5")));
        }
        let report =
            check_admissible_instance(inst.clutter(), inst.grid()).map_err(|e| e.to_string())?;
        if !report.is_admissible() {
            return Err(err(format!("g={g}: not admissible")));
        }
        let covers = inst
            .clutter()
            .minimal_vertex_covers(limits)
            .map_err(|e| e.to_string())?;
        if !covers.iter().all(|c| c.len() == g) {
            return Err(err(format!("g={g}: not unmixed")));
        }
        if covers.len() != expected {
            return Err(err(format!(
                "g={g}: {} covers, expected {expected}",
                covers.len()
            )));
        }
    }

    // Height 4: the pinned bad vertex cover pair.
    let inst = gen_counterexample(4).map_err(|e| e.to_string())?;
    let pair = satisfies_condition_star(&inst, limits)
        .map_err(|e| e.to_string())?
        .ok_or_else(|| err("no bad vertex cover pair found"))?;
    let (p, q) = pinned::BAD_PAIR;
    if pair.first != ev(&p) || pair.second != ev(&q) {
        return Err(err(format!(
            "bad pair {pair} differs from the pinned ({:?}, {:?})",
            p, q
        )));
    }

    // Non-CM certified by re-verifying the stored witness face, for every
    // family member: the witness extends across the extra blocks by dropping
    // their color-1 vertex.
    for (g, _) in pinned::COVER_COUNTS {
        let inst = gen_counterexample(g).map_err(|e| e.to_string())?;
        let grid = inst.grid();
        let mut cells: Vec<(usize, usize)> = pinned::REISNER_WITNESS_CELLS.to_vec();
        for j in 5..=g {
            for i in 2..=5 {
                cells.push((i, j));
            }
        }
        let face = VertexSet::from_indices(
            cells
                .iter()
                .map(|&(i, j)| grid.vertex_at(i, j).expect("grid cell")),
        );
        let degree = verify_not_cm_witness(inst.clutter(), face, f2(), limits)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| err(format!("g={g}: stored witness face does not re-verify")))?;
        if degree != pinned::REISNER_WITNESS_DEGREE {
            return Err(err(format!(
                "g={g}: witness degree {degree}, expected {}",
                pinned::REISNER_WITNESS_DEGREE
            )));
        }
    }
    Ok(format!(
        "heights 4-6 uniform, admissible, unmixed with {:?} covers; bad pair {}; stored non-CM witness re-verified",
        pinned::COVER_COUNTS.map(|(_, c)| c),
        ev(&pinned::BAD_PAIR.0)
    ))
}

/// Random antichain clutter with at least one edge, deterministic in the seed.
fn random_clutter(n: usize, max_edges: usize, seed: u64) -> Clutter {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    loop {
        let k = rng.random_range(1..=max_edges);
        let mut edges = Vec::new();
        for _ in 0..k {
            let size = rng.random_range(1..=3.min(n));
            let mut e = VertexSet::EMPTY;
            while e.len() < size {
                e = e.with(rng.random_range(0..n));
            }
            edges.push(e);
        }
        let (c, _) = Clutter::new_minimalized(labels.clone(), edges).unwrap();
        if c.edge_count() > 0 {
            return c;
        }
    }
}

fn c07_eagon_reiner(limits: &Limits) -> Result<String, String> {
    let mut checked = 0usize;
    let mut cm_count = 0usize;
    let mut seed = 0x0701u64;
    while checked < 100 {
        seed += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(4..=10usize);
        // Alternate between general clutters and graphs; unmixed graphs are
        // where the non-Cohen-Macaulay side of the equivalence shows up.
        let c = if seed.is_multiple_of(2) {
            random_clutter(n, 5, seed ^ 0xABCD)
        } else {
            random_graph_clutter(n, seed ^ 0xBEEF)
        };
        if !c.is_unmixed(limits).map_err(|e| e.to_string())? {
            continue;
        }
        checked += 1;
        let cm = is_cohen_macaulay(&c, f2(), limits).map_err(|e| e.to_string())?;
        if matches!(cm.status, CmStatus::Inconclusive { .. }) {
            return Err(err(format!(
                "seed {seed}: Cohen-Macaulay check inconclusive"
            )));
        }
        if cm.is_cm() {
            cm_count += 1;
        }
        let dual = SquareFreeIdeal::cover_ideal(&c, limits).map_err(|e| e.to_string())?;
        let lin = has_linear_resolution(&dual, f2(), limits).map_err(|e| e.to_string())?;
        let lin_bool = match lin {
            clutters::LinearResolutionVerdict::Linear => true,
            clutters::LinearResolutionVerdict::NotLinear { .. } => false,
            clutters::LinearResolutionVerdict::Inconclusive { note } => {
                return Err(err(format!(
                    "seed {seed}: linear-resolution check inconclusive: {note}"
                )))
            }
        };
        if cm.is_cm() != lin_bool {
            return Err(err(format!(
                "seed {seed}: Cohen-Macaulay = {} but dual linear resolution = {lin_bool}",
                cm.is_cm()
            )));
        }
    }
    if cm_count == 0 || cm_count == 100 {
        return Err(err(format!(
            "one-sided sample ({cm_count} of 100 Cohen-Macaulay); both verdicts must occur"
        )));
    }
    Ok(format!(
        "100 unmixed clutters ({cm_count} Cohen-Macaulay, {} not): verdicts match the dual's linear resolution",
        100 - cm_count
    ))
}

/// Random graph (all edges of size 2) with at least one edge.
fn random_graph_clutter(n: usize, seed: u64) -> Clutter {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    loop {
        let k = rng.random_range(2..=12usize);
        let mut edges = Vec::new();
        for _ in 0..k {
            let mut e = VertexSet::EMPTY;
            while e.len() < 2 {
                e = e.with(rng.random_range(0..n));
            }
            edges.push(e);
        }
        let (c, _) = Clutter::new_minimalized(labels.clone(), edges).unwrap();
        if c.edge_count() > 0 {
            return c;
        }
    }
}

fn c08_involution(limits: &Limits) -> Result<String, String> {
    for seed in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0801 ^ seed);
        let n = rng.random_range(2..=10usize);
        let c = random_clutter(n, 5, seed.wrapping_mul(0x9E37_79B9));
        let dual = c.alexander_dual(limits).map_err(|e| e.to_string())?;
        let double = dual.alexander_dual(limits).map_err(|e| e.to_string())?;
        if double != c {
            return Err(err(format!(
                "seed {seed}: double dual differs from the original"
            )));
        }
    }
    Ok("500 random antichain clutters: the double dual is the identity".into())
}

fn c09_transformations(limits: &Limits) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0901);
    let mut applications = 0usize;
    while applications < 500 {
        let d = rng.random_range(2..=4usize);
        let g = rng.random_range(2..=4usize);
        let extra = rng.random_range(0..=nonconstant_sequences(d, g).min(4));
        let Ok((inst, _)) = sample_unmixed(d, g, extra, rng.random(), limits) else {
            continue;
        };
        let covers = inst
            .clutter()
            .minimal_vertex_covers(limits)
            .map_err(|e| e.to_string())?;
        for &cover in covers.covers().iter().take(5) {
            for i in 1..=g {
                if let Ok(raised) = inst.raise_the_end(cover, i) {
                    if !inst
                        .clutter()
                        .is_minimal_cover(raised)
                        .map_err(|e| e.to_string())?
                    {
                        return Err(err("raise produced a non-minimal set"));
                    }
                    applications += 1;
                }
                if let Ok(lowered) = inst.lower_the_front(cover, i) {
                    if !inst
                        .clutter()
                        .is_minimal_cover(lowered)
                        .map_err(|e| e.to_string())?
                    {
                        return Err(err("lower produced a non-minimal set"));
                    }
                    applications += 1;
                }
            }
            let i = ((applications % g) + 1).min(g);
            let base = cover.difference(inst.grid().matching()[i - 1]);
            let completing: Vec<usize> = (1..=d)
                .filter(|&l| {
                    let v = inst.grid().vertex_at(l, i).unwrap();
                    inst.clutter()
                        .is_vertex_cover(base.with(v))
                        .unwrap_or(false)
                })
                .collect();
            if let (Some(&lo), Some(&hi)) = (completing.first(), completing.last()) {
                let family = inst
                    .consecutive_interpolation(base, i, lo, hi)
                    .map_err(|e| e.to_string())?;
                for member in family {
                    if !inst
                        .clutter()
                        .is_minimal_cover(member)
                        .map_err(|e| e.to_string())?
                    {
                        return Err(err("interpolation produced a non-minimal set"));
                    }
                }
                applications += 1;
            }
        }
    }
    Ok(format!(
        "{applications} transformation applications, all outputs minimal vertex covers"
    ))
}

fn c10_disjoint_unions(limits: &Limits) -> Result<String, String> {
    let mut both_cm = 0usize;
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x1001 ^ seed);
        let n1 = rng.random_range(2..=7usize);
        let n2 = rng.random_range(2..=7usize);
        let a = random_clutter(n1, 4, seed.wrapping_mul(31) + 1);
        let b = random_clutter(n2, 4, seed.wrapping_mul(37) + 2);
        // Disjoint union on relabeled vertices.
        let labels: Vec<String> = (0..n1)
            .map(|i| format!("a{i}"))
            .chain((0..n2).map(|i| format!("b{i}")))
            .collect();
        let edges: Vec<VertexSet> = a
            .edges()
            .iter()
            .copied()
            .chain(
                b.edges()
                    .iter()
                    .map(|e| VertexSet::from_indices(e.iter().map(|v| v + n1))),
            )
            .collect();
        let union = Clutter::new(labels, edges).map_err(|e| e.to_string())?;
        let cm_a = is_cohen_macaulay(&a, f2(), limits)
            .map_err(|e| e.to_string())?
            .is_cm();
        let cm_b = is_cohen_macaulay(&b, f2(), limits)
            .map_err(|e| e.to_string())?
            .is_cm();
        let cm_union = is_cohen_macaulay(&union, f2(), limits)
            .map_err(|e| e.to_string())?
            .is_cm();
        if cm_union != (cm_a && cm_b) {
            return Err(err(format!(
                "seed {seed}: union CM = {cm_union} but parts give {cm_a} and {cm_b}"
            )));
        }
        if cm_union {
            both_cm += 1;
        }
    }
    if both_cm == 0 || both_cm == 50 {
        return Err(err(format!(
            "one-sided sample ({both_cm} of 50 Cohen-Macaulay unions); both verdicts must occur"
        )));
    }
    Ok(format!(
        "50 disjoint unions ({both_cm} Cohen-Macaulay, {} not): the union is Cohen-Macaulay exactly when both parts are",
        50 - both_cm
    ))
}

/// All simple graphs on `n` vertices up to isomorphism, as edge bitmasks over
/// the pairs `(i, j)`, `i < j`.
fn graphs_up_to_iso(n: usize) -> Vec<u32> {
    assert!(n <= 7);
    let pair_count = n * (n - 1) / 2;
    let pair_index = |i: usize, j: usize| -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        // Row-major over the strict upper triangle.
        (0..i).map(|r| n - 1 - r).sum::<usize>() + (j - i - 1)
    };
    // Bit remap tables, one per permutation of the vertices.
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for k in 0..n {
        let mut next = Vec::new();
        for p in &perms {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, k);
                next.push(q);
            }
        }
        perms = next;
    }
    let remaps: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            let mut table = vec![0usize; pair_count];
            for i in 0..n {
                for j in i + 1..n {
                    table[pair_index(i, j)] = pair_index(p[i], p[j]);
                }
            }
            table
        })
        .collect();
    let canonical = |mask: u32| -> u32 {
        let mut best = u32::MAX;
        for table in &remaps {
            let mut mapped = 0u32;
            let mut bits = mask;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                mapped |= 1 << table[b];
            }
            best = best.min(mapped);
        }
        best
    };

    if n == 1 {
        return vec![0];
    }
    let smaller = graphs_up_to_iso(n - 1);
    // The (n-1)-vertex pair bits are not contiguous inside the n-vertex
    // indexing, so re-embed explicitly.
    let small_index =
        |i: usize, j: usize| -> usize { (0..i).map(|r| n - 2 - r).sum::<usize>() + (j - i - 1) };
    let mut reps = std::collections::HashSet::new();
    for g in smaller {
        // Re-embed the (n-1)-vertex mask into the n-vertex pair indexing.
        let mut base = 0u32;
        for i in 0..n - 1 {
            for j in i + 1..n - 1 {
                if g >> small_index(i, j) & 1 == 1 {
                    base |= 1 << pair_index(i, j);
                }
            }
        }
        for neighborhood in 0u32..(1 << (n - 1)) {
            let mut mask = base;
            for i in 0..n - 1 {
                if neighborhood >> i & 1 == 1 {
                    mask |= 1 << pair_index(i, n - 1);
                }
            }
            reps.insert(canonical(mask));
        }
    }
    let mut out: Vec<u32> = reps.into_iter().collect();
    out.sort_unstable();
    out
}

fn graph_from_mask(n: usize, mask: u64) -> Clutter {
    let labels: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
    let mut edges = Vec::new();
    let mut bit = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push(VertexSet::from_indices([i, j]));
            }
            bit += 1;
        }
    }
    Clutter::new(labels, edges).expect("graphs are antichains")
}

fn froberg_agrees(graph: &Clutter, limits: &Limits) -> Result<(), String> {
    let chordal_complement = froberg_check(graph).map_err(|e| e.to_string())?;
    let ideal = SquareFreeIdeal::edge_ideal(graph);
    let lin = has_linear_resolution(&ideal, f2(), limits).map_err(|e| e.to_string())?;
    let lin_bool = match lin {
        clutters::LinearResolutionVerdict::Linear => true,
        clutters::LinearResolutionVerdict::NotLinear { .. } => false,
        clutters::LinearResolutionVerdict::Inconclusive { note } => {
            return Err(format!("linear-resolution check inconclusive: {note}"))
        }
    };
    if chordal_complement != lin_bool {
        return Err(format!(
            "disagreement on a graph with {} edges: complement chordal = {chordal_complement}, linear resolution = {lin_bool}",
            graph.edge_count()
        ));
    }
    Ok(())
}

fn c11_froberg(limits: &Limits) -> Result<String, String> {
    // All labeled graphs up to 5 vertices.
    let mut labeled = 0usize;
    for n in 1..=5usize {
        let pair_count = n * (n - 1) / 2;
        for mask in 0u64..(1 << pair_count) {
            froberg_agrees(&graph_from_mask(n, mask), limits)
                .map_err(|e| format!("labeled n={n} mask={mask}: {e}"))?;
            labeled += 1;
        }
    }
    // All isomorphism classes at 6 and 7 vertices (the checks are
    // label-invariant).
    let mut classes = 0usize;
    for n in 6..=7usize {
        for mask in graphs_up_to_iso(n) {
            froberg_agrees(&graph_from_mask(n, mask as u64), limits)
                .map_err(|e| format!("class n={n} mask={mask}: {e}"))?;
            classes += 1;
        }
    }
    // A 200-graph random sample at 8 and 9 vertices.
    let mut sampled = 0usize;
    for seed in 0..200u64 {
        let n = if seed % 2 == 0 { 8 } else { 9 };
        let mut rng = ChaCha8Rng::seed_from_u64(0x1101 ^ seed);
        let pair_count = n * (n - 1) / 2;
        let mask = rng.random_range(0..(1u64 << pair_count));
        froberg_agrees(&graph_from_mask(n, mask), limits)
            .map_err(|e| format!("sample n={n} seed={seed}: {e}"))?;
        sampled += 1;
    }
    Ok(format!(
        "{labeled} labeled graphs (n <= 5), {classes} isomorphism classes (n = 6, 7), {sampled} samples (n = 8, 9): no disagreements"
    ))
}

fn c12_recovery(limits: &Limits) -> Result<String, String> {
    let mut done = 0usize;
    let mut k = 0u64;
    while done < 100 {
        let d = [2usize, 3, 4][(k as usize) % 3];
        let mut rng = ChaCha8Rng::seed_from_u64(0x1201 ^ k);
        let extra = rng.random_range(0..=nonconstant_sequences(d, 2).min(4));
        k += 1;
        let Ok((inst, _)) = sample_unmixed(d, 2, extra, 0x1201_0000 + 7 * k, limits) else {
            continue;
        };
        // Shuffle the vertex labels by permuting indices.
        let n = inst.clutter().vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let labels: Vec<String> = (0..n).map(|i| format!("u{i}")).collect();
        let edges: Vec<VertexSet> = inst
            .clutter()
            .edges()
            .iter()
            .map(|e| VertexSet::from_indices(e.iter().map(|v| perm[v])))
            .collect();
        let shuffled = Clutter::new(labels, edges).map_err(|e| e.to_string())?;
        let report = recover_structure_g2(&shuffled, f2(), limits).map_err(|e| e.to_string())?;
        let Some(grid) = report.structure else {
            return Err(err(format!(
                "instance {k}: recovery failed: {:?}",
                report.log
            )));
        };
        let admissible = check_admissible_instance(&shuffled, &grid).map_err(|e| e.to_string())?;
        if !admissible.is_admissible() {
            return Err(err(format!(
                "instance {k}: recovered structure is not admissible"
            )));
        }
        done += 1;
    }
    Ok("100 shuffled height-2 instances: structure recovered and admissible".into())
}
