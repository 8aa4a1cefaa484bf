use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::clutter::Clutter;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::set::VertexSet;

/// Color classes `X^1..X^d` and a matching `e_1..e_g`, both partitions of the
/// vertex set, with every block meeting every color class at most once.
///
/// The unique vertex of `e_j ∩ X^i` (when present) is addressed as the grid
/// cell `(i, j)`; colors `i` and blocks `j` are 1-based throughout the public
/// API.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridStructure {
    n: usize,
    colors: Vec<VertexSet>,
    matching: Vec<VertexSet>,
    color_of: Vec<usize>,
    block_of: Vec<usize>,
    /// cell[i][j] = vertex of color i+1 in block j+1, when it exists.
    cell: Vec<Vec<Option<usize>>>,
}

/// A violated grid invariant, reported rather than raised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridViolation {
    EmptyPart {
        kind: &'static str,
        index: usize,
    },
    NotAPartition {
        kind: &'static str,
        vertex: usize,
        times: usize,
    },
    CellTooLarge {
        color: usize,
        block: usize,
        size: usize,
    },
    OutOfRange {
        kind: &'static str,
        index: usize,
    },
}

impl fmt::Display for GridViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridViolation::EmptyPart { kind, index } => {
                write!(f, "{kind} part {index} is empty")
            }
            GridViolation::NotAPartition {
                kind,
                vertex,
                times,
            } => {
                write!(
                    f,
                    "not a partition: vertex {vertex} appears in {times} {kind} parts"
                )
            }
            GridViolation::CellTooLarge { color, block, size } => {
                write!(
                    f,
                    "block {block} meets color class {color} in {size} > 1 vertices"
                )
            }
            GridViolation::OutOfRange { kind, index } => {
                write!(f, "{kind} contains vertex index {index} out of range")
            }
        }
    }
}

/// Check the grid invariants for `n` ambient vertices: both families are
/// partitions of the vertex set and every block meets every color class at
/// most once. An empty report means the grid is valid.
pub fn validate_grid(n: usize, colors: &[VertexSet], matching: &[VertexSet]) -> Vec<GridViolation> {
    let mut out = Vec::new();
    for (kind, parts) in [("color class", colors), ("matching block", matching)] {
        let mut count = vec![0usize; n];
        for (idx, p) in parts.iter().enumerate() {
            if p.is_empty() {
                out.push(GridViolation::EmptyPart {
                    kind,
                    index: idx + 1,
                });
            }
            for v in p.iter() {
                if v >= n {
                    out.push(GridViolation::OutOfRange { kind, index: v });
                } else {
                    count[v] += 1;
                }
            }
        }
        for (v, &c) in count.iter().enumerate() {
            if c != 1 {
                out.push(GridViolation::NotAPartition {
                    kind,
                    vertex: v,
                    times: c,
                });
            }
        }
    }
    for (j, e) in matching.iter().enumerate() {
        for (i, x) in colors.iter().enumerate() {
            let size = e.intersection(*x).len();
            if size > 1 {
                out.push(GridViolation::CellTooLarge {
                    color: i + 1,
                    block: j + 1,
                    size,
                });
            }
        }
    }
    out
}

impl GridStructure {
    pub fn new(n: usize, colors: Vec<VertexSet>, matching: Vec<VertexSet>) -> Result<Self> {
        let report = validate_grid(n, &colors, &matching);
        if !report.is_empty() {
            let msgs: Vec<String> = report.iter().map(|v| v.to_string()).collect();
            return Err(Error::InvalidGrid(msgs.join("; ")));
        }
        let d = colors.len();
        let g = matching.len();
        let mut color_of = vec![usize::MAX; n];
        let mut block_of = vec![usize::MAX; n];
        for (i, x) in colors.iter().enumerate() {
            for v in x.iter() {
                color_of[v] = i;
            }
        }
        for (j, e) in matching.iter().enumerate() {
            for v in e.iter() {
                block_of[v] = j;
            }
        }
        let mut cell = vec![vec![None; g]; d];
        for v in 0..n {
            cell[color_of[v]][block_of[v]] = Some(v);
        }
        Ok(GridStructure {
            n,
            colors,
            matching,
            color_of,
            block_of,
            cell,
        })
    }

    /// Number of color classes.
    pub fn d(&self) -> usize {
        self.colors.len()
    }

    /// Number of matching blocks.
    pub fn g(&self) -> usize {
        self.matching.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn colors(&self) -> &[VertexSet] {
        &self.colors
    }

    pub fn matching(&self) -> &[VertexSet] {
        &self.matching
    }

    /// 1-based color of a vertex.
    pub fn color_of(&self, v: usize) -> usize {
        self.color_of[v] + 1
    }

    /// 1-based block of a vertex.
    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v] + 1
    }

    /// The unique vertex of color `i` in block `j` (both 1-based).
    pub fn vertex_at(&self, color: usize, block: usize) -> Option<usize> {
        if color == 0 || block == 0 || color > self.d() || block > self.g() {
            return None;
        }
        self.cell[color - 1][block - 1]
    }

    /// Every block meets every color class exactly once (so every grid cell
    /// is populated). Holds for every uniform admissible instance.
    pub fn is_total(&self) -> bool {
        self.cell.iter().all(|row| row.iter().all(|c| c.is_some()))
    }

    /// A set is admissible when it meets pairwise distinct color classes that
    /// are exactly `1..k` (`k` the set size) and the block indices, read in
    /// color order, are nondecreasing.
    pub fn is_admissible_set(&self, s: VertexSet) -> bool {
        let k = s.len();
        let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(k);
        for v in s.iter() {
            if v >= self.n {
                return false;
            }
            pairs.push((self.color_of[v], self.block_of[v]));
        }
        pairs.sort_unstable();
        for (l, &(color, _)) in pairs.iter().enumerate() {
            if color != l {
                return false; // repeated color or colors not exactly 1..k
            }
        }
        pairs.windows(2).all(|w| w[0].1 <= w[1].1)
    }

    /// Exponent vector of a size-`g` cover meeting every block exactly once:
    /// entry `j` is the color of the cover's vertex in block `j`.
    pub fn exponent_vector(&self, cover: VertexSet) -> Result<ExponentVector> {
        if let Some(i) = cover.max_index() {
            if i >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    n: self.n,
                });
            }
        }
        if cover.len() != self.g() {
            return Err(Error::invalid(format!(
                "expected a set of size g = {}, got size {}",
                self.g(),
                cover.len()
            )));
        }
        let mut entries = Vec::with_capacity(self.g());
        for (j, e) in self.matching.iter().enumerate() {
            let hits = cover.intersection(*e);
            if hits.len() != 1 {
                return Err(Error::invalid(format!(
                    "cover meets block {} in {} vertices, expected exactly 1",
                    j + 1,
                    hits.len()
                )));
            }
            let v = hits.min_index().unwrap();
            entries.push(self.color_of[v] + 1);
        }
        Ok(ExponentVector(entries))
    }

    /// Inverse of [`GridStructure::exponent_vector`].
    pub fn vertex_set(&self, vector: &ExponentVector) -> Result<VertexSet> {
        if vector.len() != self.g() {
            return Err(Error::invalid(format!(
                "exponent vector has length {}, expected g = {}",
                vector.len(),
                self.g()
            )));
        }
        let mut s = VertexSet::EMPTY;
        for (j, &i) in vector.entries().iter().enumerate() {
            if i == 0 || i > self.d() {
                return Err(Error::invalid(format!(
                    "exponent {} at block {} out of range 1..={}",
                    i,
                    j + 1,
                    self.d()
                )));
            }
            match self.vertex_at(i, j + 1) {
                Some(v) => s = s.with(v),
                None => {
                    return Err(Error::invalid(format!(
                        "no vertex of color {} in block {}",
                        i,
                        j + 1
                    )))
                }
            }
        }
        Ok(s)
    }
}

/// A tuple `(i_1, .., i_g)` of colors, one per matching block; entries are
/// 1-based and bounded by the number of color classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<usize>);

impl ExponentVector {
    pub fn new(entries: Vec<usize>) -> Self {
        ExponentVector(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Admissibility report: which matching blocks are missing from the edge set
/// and which edges fail the admissibility test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleReport {
    pub missing_matching_edges: Vec<usize>,
    pub offending_edges: Vec<VertexSet>,
}

impl AdmissibleReport {
    pub fn is_admissible(&self) -> bool {
        self.missing_matching_edges.is_empty() && self.offending_edges.is_empty()
    }
}

/// Is the clutter admissible with respect to the grid: all matching blocks
/// are edges, and every edge is an admissible set.
pub fn check_admissible_instance(
    clutter: &Clutter,
    grid: &GridStructure,
) -> Result<AdmissibleReport> {
    if grid.vertex_count() != clutter.vertex_count() {
        return Err(Error::invalid(format!(
            "grid is over {} vertices but the clutter has {}",
            grid.vertex_count(),
            clutter.vertex_count()
        )));
    }
    let missing: Vec<usize> = grid
        .matching()
        .iter()
        .enumerate()
        .filter(|(_, e)| !clutter.edges().contains(e))
        .map(|(j, _)| j + 1)
        .collect();
    let offending: Vec<VertexSet> = clutter
        .edges()
        .iter()
        .copied()
        .filter(|&e| !grid.is_admissible_set(e))
        .collect();
    Ok(AdmissibleReport {
        missing_matching_edges: missing,
        offending_edges: offending,
    })
}

/// A clutter together with a grid structure it is admissible for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleInstance {
    clutter: Clutter,
    grid: GridStructure,
}

impl AdmissibleInstance {
    pub fn new(clutter: Clutter, grid: GridStructure) -> Result<Self> {
        let report = check_admissible_instance(&clutter, &grid)?;
        if !report.is_admissible() {
            let mut parts = Vec::new();
            if !report.missing_matching_edges.is_empty() {
                parts.push(format!(
                    "matching blocks {:?} are not edges",
                    report.missing_matching_edges
                ));
            }
            for e in &report.offending_edges {
                parts.push(format!("edge {} is not admissible", clutter.format_set(*e)));
            }
            return Err(Error::invalid(parts.join("; ")));
        }
        Ok(AdmissibleInstance { clutter, grid })
    }

    pub fn clutter(&self) -> &Clutter {
        &self.clutter
    }

    pub fn grid(&self) -> &GridStructure {
        &self.grid
    }

    pub fn into_parts(self) -> (Clutter, GridStructure) {
        (self.clutter, self.grid)
    }

    fn require_uniform_total(&self) -> Result<()> {
        if self.clutter.uniform_size() != Some(self.grid.d()) || !self.grid.is_total() {
            return Err(Error::LemmaHypothesis(
                "cover transformations require a uniform instance with a total grid".into(),
            ));
        }
        Ok(())
    }

    fn require_size_g_cover(&self, cover: VertexSet) -> Result<ExponentVector> {
        if !self.clutter.is_vertex_cover(cover)? {
            return Err(Error::LemmaHypothesis(format!(
                "{} is not a vertex cover",
                self.clutter.format_set(cover)
            )));
        }
        self.grid.exponent_vector(cover).map_err(|e| match e {
            Error::InvalidInput(m) => Error::LemmaHypothesis(m),
            other => other,
        })
    }

    fn checked_replacement(
        &self,
        cover: VertexSet,
        block: usize,
        new_color: usize,
    ) -> Result<VertexSet> {
        let old = cover
            .intersection(self.grid.matching()[block - 1])
            .min_index()
            .expect("cover meets every block once");
        let new = self
            .grid
            .vertex_at(new_color, block)
            .expect("total grid has every cell");
        let replaced = cover.without(old).with(new);
        if !self.clutter.covers(replaced) {
            return Err(Error::InternalInvariant(format!(
                "guaranteed cover {} fails to cover; the instance is not genuinely admissible",
                self.clutter.format_set(replaced)
            )));
        }
        Ok(replaced)
    }

    /// Raise the exponent of a size-g minimal cover at block `i` (1-based)
    /// from `t` to `t+1`. Requires every later block to sit at one common
    /// color `l > t`; for `i = g` only `t < d` is required. The result is
    /// again a minimal vertex cover, checked before returning.
    pub fn raise_the_end(&self, cover: VertexSet, i: usize) -> Result<VertexSet> {
        self.require_uniform_total()?;
        let g = self.grid.g();
        let d = self.grid.d();
        if i == 0 || i > g {
            return Err(Error::invalid(format!(
                "block index {i} out of range 1..={g}"
            )));
        }
        let vector = self.require_size_g_cover(cover)?;
        let t = vector.entries()[i - 1];
        if t >= d {
            return Err(Error::LemmaHypothesis(format!(
                "exponent {t} at block {i} cannot be raised above d = {d}"
            )));
        }
        if i < g {
            let tail = &vector.entries()[i..];
            let l = tail[0];
            if tail.iter().any(|&x| x != l) {
                return Err(Error::LemmaHypothesis(format!(
                    "blocks {}..{} do not share a single color",
                    i + 1,
                    g
                )));
            }
            if l <= t {
                return Err(Error::LemmaHypothesis(format!(
                    "tail color {l} must exceed the raised exponent {t}"
                )));
            }
        }
        self.checked_replacement(cover, i, t + 1)
    }

    /// Mirror of [`AdmissibleInstance::raise_the_end`]: lower the exponent at
    /// block `i` from `t` to `t-1`. Requires every earlier block to sit at
    /// one common color `l < t`; for `i = 1` only `t > 1` is required.
    pub fn lower_the_front(&self, cover: VertexSet, i: usize) -> Result<VertexSet> {
        self.require_uniform_total()?;
        let g = self.grid.g();
        if i == 0 || i > g {
            return Err(Error::invalid(format!(
                "block index {i} out of range 1..={g}"
            )));
        }
        let vector = self.require_size_g_cover(cover)?;
        let t = vector.entries()[i - 1];
        if t <= 1 {
            return Err(Error::LemmaHypothesis(format!(
                "exponent {t} at block {i} cannot be lowered below 1"
            )));
        }
        if i > 1 {
            let head = &vector.entries()[..i - 1];
            let l = head[0];
            if head.iter().any(|&x| x != l) {
                return Err(Error::LemmaHypothesis(format!(
                    "blocks 1..{} do not share a single color",
                    i - 1
                )));
            }
            if l >= t {
                return Err(Error::LemmaHypothesis(format!(
                    "head color {l} must be below the lowered exponent {t}"
                )));
            }
        }
        self.checked_replacement(cover, i, t - 1)
    }

    /// If `base ∪ {x^c_i}` and `base ∪ {x^c2_i}` are both vertex covers, so is
    /// `base ∪ {x^l_i}` for every color `c ≤ l ≤ c2`. Returns the whole family
    /// (each member checked), in ascending color order.
    pub fn consecutive_interpolation(
        &self,
        base: VertexSet,
        i: usize,
        c: usize,
        c2: usize,
    ) -> Result<Vec<VertexSet>> {
        self.require_uniform_total()?;
        let g = self.grid.g();
        let d = self.grid.d();
        if i == 0 || i > g {
            return Err(Error::invalid(format!(
                "block index {i} out of range 1..={g}"
            )));
        }
        let (lo, hi) = if c <= c2 { (c, c2) } else { (c2, c) };
        if lo == 0 || hi > d {
            return Err(Error::invalid(format!(
                "colors {c}, {c2} out of range 1..={d}"
            )));
        }
        for endpoint in [lo, hi] {
            let v = self.grid.vertex_at(endpoint, i).expect("total grid");
            if !self.clutter.covers(base.with(v)) {
                return Err(Error::LemmaHypothesis(format!(
                    "{} is not a vertex cover",
                    self.clutter.format_set(base.with(v))
                )));
            }
        }
        let mut out = Vec::with_capacity(hi - lo + 1);
        for l in lo..=hi {
            let v = self.grid.vertex_at(l, i).expect("total grid");
            let cover = base.with(v);
            if !self.clutter.covers(cover) {
                return Err(Error::InternalInvariant(format!(
                    "interpolated set {} fails to cover; the instance is not genuinely admissible",
                    self.clutter.format_set(cover)
                )));
            }
            out.push(cover);
        }
        Ok(out)
    }
}

/// Conventional label for the vertex of color `i` in block `j`.
fn grid_label(i: usize, j: usize) -> String {
    format!("c{i}_b{j}")
}

fn grid_vertex_index(g: usize, color: usize, block: usize) -> usize {
    (color - 1) * g + (block - 1)
}

fn build_grid_instance(
    d: usize,
    g: usize,
    extra_edges: &[Vec<usize>],
) -> Result<AdmissibleInstance> {
    let mut labels = Vec::with_capacity(d * g);
    for i in 1..=d {
        for j in 1..=g {
            labels.push(grid_label(i, j));
        }
    }
    let mut edges: Vec<VertexSet> = (1..=g)
        .map(|j| VertexSet::from_indices((1..=d).map(|i| grid_vertex_index(g, i, j))))
        .collect();
    for seq in extra_edges {
        edges.push(VertexSet::from_indices(
            seq.iter()
                .enumerate()
                .map(|(i0, &j)| grid_vertex_index(g, i0 + 1, j)),
        ));
    }
    let clutter = Clutter::new(labels, edges)?;
    let colors: Vec<VertexSet> = (1..=d)
        .map(|i| VertexSet::from_indices((1..=g).map(|j| grid_vertex_index(g, i, j))))
        .collect();
    let matching: Vec<VertexSet> = (1..=g)
        .map(|j| VertexSet::from_indices((1..=d).map(|i| grid_vertex_index(g, i, j))))
        .collect();
    let grid = GridStructure::new(d * g, colors, matching)?;
    AdmissibleInstance::new(clutter, grid)
}

/// The height-`g` member of the counterexample family: five color classes,
/// blocks `e_1..e_g`, plus four fixed extra edges supported on the first four
/// blocks. Uniform of size 5, admissible, and unmixed for every `g >= 4`.
pub fn gen_counterexample(g: usize) -> Result<AdmissibleInstance> {
    if g < 4 {
        return Err(Error::invalid(format!(
            "the counterexample family needs g >= 4, got {g}"
        )));
    }
    let extras = [
        vec![1, 2, 3, 3, 4],
        vec![1, 1, 2, 2, 3],
        vec![1, 1, 3, 3, 3],
        vec![1, 2, 2, 2, 4],
    ];
    build_grid_instance(5, g, &extras)
}

/// All nondecreasing sequences of length `d` over `1..=g`.
fn nondecreasing_sequences(d: usize, g: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(d: usize, g: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for j in lo..=g {
            cur.push(j);
            rec(d, g, j, cur, out);
            cur.pop();
        }
    }
    rec(d, g, 1, &mut cur, &mut out);
    out
}

/// A random admissible instance: the matching blocks plus `extra` distinct
/// non-block admissible edges, sampled uniformly. Admissible edges of a
/// `d`-uniform grid correspond to nondecreasing block sequences of length `d`
/// over `1..=g`. Deterministic for a fixed seed. Unmixedness is not
/// guaranteed; see [`sample_unmixed`].
pub fn gen_random_admissible(
    d: usize,
    g: usize,
    extra: usize,
    seed: u64,
) -> Result<AdmissibleInstance> {
    if d == 0 || g == 0 {
        return Err(Error::invalid("d and g must be positive"));
    }
    if d * g > crate::set::MAX_VERTICES {
        return Err(Error::invalid(format!(
            "d*g = {} vertices exceeds the supported maximum",
            d * g
        )));
    }
    let mut candidates: Vec<Vec<usize>> = nondecreasing_sequences(d, g)
        .into_iter()
        .filter(|s| s.iter().any(|&j| j != s[0]))
        .collect();
    if extra > candidates.len() {
        return Err(Error::invalid(format!(
            "requested {extra} extra edges but only {} nonconstant admissible sequences exist",
            candidates.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    candidates.shuffle(&mut rng);
    candidates.truncate(extra);
    candidates.sort();
    build_grid_instance(d, g, &candidates)
}

/// Retry seeds `seed, seed+1, ..` until [`gen_random_admissible`] yields an
/// unmixed instance; returns the instance and the seed that produced it.
pub fn sample_unmixed(
    d: usize,
    g: usize,
    extra: usize,
    seed: u64,
    limits: &Limits,
) -> Result<(AdmissibleInstance, u64)> {
    for k in 0..limits.max_retries as u64 {
        let s = seed.wrapping_add(k);
        let inst = gen_random_admissible(d, g, extra, s)?;
        if inst.clutter().is_unmixed(limits)? {
            return Ok((inst, s));
        }
    }
    Err(Error::BudgetExceeded {
        budget: "max_retries",
        limit: limits.max_retries,
    })
}

/// The fixed 9-vertex, height-3 instance with blocks `x_i y_i z_i` and the
/// single extra edge `x1 y2 z3`. It has 19 minimal vertex covers, all of
/// size 3.
pub fn fixture_example_g3() -> AdmissibleInstance {
    let labels = ["x1", "x2", "x3", "y1", "y2", "y3", "z1", "z2", "z3"];
    let edges: &[&[&str]] = &[
        &["x1", "y1", "z1"],
        &["x2", "y2", "z2"],
        &["x3", "y3", "z3"],
        &["x1", "y2", "z3"],
    ];
    let clutter = Clutter::from_edge_labels(&labels, edges).expect("fixture is well-formed");
    let colors = vec![
        VertexSet::from_indices([0, 1, 2]),
        VertexSet::from_indices([3, 4, 5]),
        VertexSet::from_indices([6, 7, 8]),
    ];
    let matching = vec![
        VertexSet::from_indices([0, 3, 6]),
        VertexSet::from_indices([1, 4, 7]),
        VertexSet::from_indices([2, 5, 8]),
    ];
    let grid = GridStructure::new(9, colors, matching).expect("fixture grid is valid");
    AdmissibleInstance::new(clutter, grid).expect("fixture is admissible")
}

/// Search for a grid structure making the clutter admissible.
///
/// Enumerates perfect matchings of König type first, then block orders, then
/// propagates color constraints block by block, backtracking on conflicts.
/// Returns the first witness found (deterministic), `None` when the search
/// space is exhausted, and a budget error when the node budget runs out.
pub fn find_grid_structure(clutter: &Clutter, limits: &Limits) -> Result<Option<GridStructure>> {
    if clutter.edge_count() == 0 {
        return Err(Error::UndefinedHeight);
    }
    let matchings = clutter.konig_perfect_matchings(limits)?;
    let mut nodes = 0usize;
    for matching in &matchings {
        for order in permutations(matching) {
            if let Some(grid) = try_color_matching(clutter, &order, &mut nodes, limits)? {
                return Ok(Some(grid));
            }
        }
    }
    Ok(None)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut work = items.to_vec();
    fn heap(k: usize, work: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            out.push(work.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, work, out);
            if k.is_multiple_of(2) {
                work.swap(i, k - 1);
            } else {
                work.swap(0, k - 1);
            }
        }
    }
    if work.is_empty() {
        return vec![vec![]];
    }
    let k = work.len();
    heap(k, &mut work, &mut out);
    out.sort();
    out
}

/// Assign colors to the vertices of each ordered block in turn. The vertices
/// of block `j` must take colors exactly `1..=|e_j|`; every edge fully inside
/// assigned blocks must be admissible.
fn try_color_matching(
    clutter: &Clutter,
    block_edges: &[usize],
    nodes: &mut usize,
    limits: &Limits,
) -> Result<Option<GridStructure>> {
    let n = clutter.vertex_count();
    let blocks: Vec<Vec<usize>> = block_edges
        .iter()
        .map(|&ei| clutter.edges()[ei].to_vec())
        .collect();
    let d = blocks.iter().map(|b| b.len()).max().unwrap_or(0);
    let mut block_of = vec![usize::MAX; n];
    for (j, b) in blocks.iter().enumerate() {
        for &v in b {
            block_of[v] = j;
        }
    }
    let mut color_of = vec![usize::MAX; n];

    fn edge_ok(
        edge: VertexSet,
        color_of: &[usize],
        block_of: &[usize],
        assigned_blocks: usize,
    ) -> bool {
        // Only judge edges entirely inside already-colored blocks.
        if edge.iter().any(|v| block_of[v] >= assigned_blocks) {
            return true;
        }
        let mut pairs: Vec<(usize, usize)> =
            edge.iter().map(|v| (color_of[v], block_of[v])).collect();
        pairs.sort_unstable();
        if pairs.iter().enumerate().any(|(l, &(c, _))| c != l) {
            return false;
        }
        pairs.windows(2).all(|w| w[0].1 <= w[1].1)
    }

    fn rec(
        j: usize,
        clutter: &Clutter,
        blocks: &[Vec<usize>],
        block_of: &[usize],
        color_of: &mut Vec<usize>,
        nodes: &mut usize,
        limits: &Limits,
    ) -> Result<bool> {
        *nodes += 1;
        if *nodes > limits.max_nodes {
            return Err(Error::BudgetExceeded {
                budget: "max_nodes",
                limit: limits.max_nodes,
            });
        }
        if j == blocks.len() {
            return Ok(true);
        }
        let verts = &blocks[j];
        for perm in permutations(&(0..verts.len()).collect::<Vec<_>>()) {
            for (color0, &pos) in perm.iter().enumerate() {
                color_of[verts[pos]] = color0;
            }
            let consistent = clutter
                .edges()
                .iter()
                .all(|&e| edge_ok(e, color_of, block_of, j + 1));
            if consistent && rec(j + 1, clutter, blocks, block_of, color_of, nodes, limits)? {
                return Ok(true);
            }
            for &v in verts {
                color_of[v] = usize::MAX;
            }
        }
        Ok(false)
    }

    if !rec(0, clutter, &blocks, &block_of, &mut color_of, nodes, limits)? {
        return Ok(None);
    }
    let colors: Vec<VertexSet> = (0..d)
        .map(|i| VertexSet::from_indices((0..n).filter(|&v| color_of[v] == i)))
        .collect();
    let matching: Vec<VertexSet> = blocks
        .iter()
        .map(|b| VertexSet::from_indices(b.iter().copied()))
        .collect();
    let grid = GridStructure::new(n, colors, matching)?;
    let report = check_admissible_instance(clutter, &grid)?;
    if !report.is_admissible() {
        return Err(Error::InternalInvariant(
            "grid search produced a structure that fails the admissibility check".into(),
        ));
    }
    Ok(Some(grid))
}
