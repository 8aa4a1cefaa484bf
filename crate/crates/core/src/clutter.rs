use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::set::{VertexSet, MAX_VERTICES};

/// A clutter: a finite set of labelled vertices together with an antichain of
/// nonempty edges (a simple hypergraph).
///
/// Vertex labels are opaque strings mapped to dense indices `0..n-1` at
/// construction time; all set operations work on indices. Edges are kept
/// deduplicated and canonically sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clutter {
    labels: Vec<String>,
    edges: Vec<VertexSet>,
}

impl Clutter {
    /// Build a clutter, rejecting empty edges, out-of-range indices, and
    /// antichain violations. Exact duplicate edges are dropped; a proper
    /// containment between edges is an error (use [`Clutter::new_minimalized`]
    /// for explicit repair).
    pub fn new(labels: Vec<String>, edges: Vec<VertexSet>) -> Result<Self> {
        let clutter = Self::build(labels, edges, false)?;
        Ok(clutter.0)
    }

    /// Like [`Clutter::new`], but repairs antichain violations by keeping only
    /// the inclusion-minimal edges. Returns the number of edges dropped.
    pub fn new_minimalized(labels: Vec<String>, edges: Vec<VertexSet>) -> Result<(Self, usize)> {
        Self::build(labels, edges, true)
    }

    fn build(
        labels: Vec<String>,
        edges: Vec<VertexSet>,
        minimalize: bool,
    ) -> Result<(Self, usize)> {
        let n = labels.len();
        if n > MAX_VERTICES {
            return Err(Error::invalid(format!(
                "at most {MAX_VERTICES} vertices are supported, got {n}"
            )));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::invalid(format!("duplicate vertex label {l:?}")));
            }
        }
        let mut es = Vec::with_capacity(edges.len());
        for e in edges {
            if e.is_empty() {
                return Err(Error::invalid("edges must be nonempty"));
            }
            if let Some(i) = e.max_index() {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, n });
                }
            }
            es.push(e);
        }
        es.sort();
        es.dedup();
        let before = es.len();
        if minimalize {
            es = crate::set::minimal_sets(es);
        } else {
            for i in 0..es.len() {
                for j in 0..es.len() {
                    if i != j && es[i].is_subset_of(es[j]) {
                        let c = Self {
                            labels: labels.clone(),
                            edges: vec![],
                        };
                        return Err(Error::AntichainViolation {
                            contained: c.format_set(es[i]),
                            container: c.format_set(es[j]),
                        });
                    }
                }
            }
        }
        let dropped = before - es.len();
        Ok((Self { labels, edges: es }, dropped))
    }

    /// Convenience constructor from label lists, for tests and fixtures.
    pub fn from_edge_labels(labels: &[&str], edges: &[&[&str]]) -> Result<Self> {
        let owned: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let mut sets = Vec::new();
        for e in edges {
            let mut s = VertexSet::EMPTY;
            for v in *e {
                let i = labels
                    .iter()
                    .position(|l| l == v)
                    .ok_or_else(|| Error::invalid(format!("unknown vertex label {v:?}")))?;
                s = s.with(i);
            }
            sets.push(s);
        }
        Self::new(owned, sets)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Render a vertex set with this clutter's labels, e.g. `{x1, y2}`.
    pub fn format_set(&self, s: VertexSet) -> String {
        let names: Vec<&str> = s.iter().map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", names.join(", "))
    }

    fn check_set(&self, s: VertexSet) -> Result<()> {
        if let Some(i) = s.max_index() {
            if i >= self.labels.len() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    n: self.labels.len(),
                });
            }
        }
        Ok(())
    }

    /// Does `candidate` meet every edge?
    pub fn is_vertex_cover(&self, candidate: VertexSet) -> Result<bool> {
        self.check_set(candidate)?;
        Ok(self.covers(candidate))
    }

    pub(crate) fn covers(&self, s: VertexSet) -> bool {
        self.edges.iter().all(|e| e.intersects(s))
    }

    /// A cover is minimal iff every member has a private edge.
    pub fn is_minimal_cover(&self, s: VertexSet) -> Result<bool> {
        self.check_set(s)?;
        Ok(self.covers(s) && s.iter().all(|v| !self.covers(s.without(v))))
    }

    /// Enumerate all minimal vertex covers (minimal transversals of the edge
    /// family), canonically sorted. Complete: no minimal cover is missed.
    ///
    /// Branch-and-bound: pick the first uncovered edge and branch on its
    /// vertices. The branch that commits to a vertex excludes the edge's
    /// earlier vertices from the whole subtree, so each cover is reached
    /// along one path only; partial covers that already contain a recorded
    /// cover are pruned (their completions are duplicates or strict
    /// supersets).
    pub fn minimal_vertex_covers(&self, limits: &Limits) -> Result<CoverList> {
        let mut found: Vec<VertexSet> = Vec::new();
        let mut nodes = 0usize;
        self.enumerate_rec(
            VertexSet::EMPTY,
            VertexSet::EMPTY,
            &mut found,
            &mut nodes,
            limits,
        )?;
        found.sort();
        found.dedup();
        found.retain(|&c| c.iter().all(|v| !self.covers(c.without(v))));
        Ok(CoverList { covers: found })
    }

    fn enumerate_rec(
        &self,
        partial: VertexSet,
        excluded: VertexSet,
        found: &mut Vec<VertexSet>,
        nodes: &mut usize,
        limits: &Limits,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > limits.max_nodes {
            return Err(Error::BudgetExceeded {
                budget: "max_nodes",
                limit: limits.max_nodes,
            });
        }
        if found.iter().any(|c| c.is_subset_of(partial)) {
            return Ok(());
        }
        match self.edges.iter().find(|e| !e.intersects(partial)) {
            None => {
                if found.len() >= limits.max_covers {
                    return Err(Error::BudgetExceeded {
                        budget: "max_covers",
                        limit: limits.max_covers,
                    });
                }
                found.push(partial);
                Ok(())
            }
            Some(&e) => {
                let mut skip = excluded;
                for v in e.difference(excluded).iter() {
                    self.enumerate_rec(partial.with(v), skip, found, nodes, limits)?;
                    skip = skip.with(v);
                }
                Ok(())
            }
        }
    }

    /// The covering number: minimum cardinality of a minimal vertex cover.
    pub fn height(&self, limits: &Limits) -> Result<usize> {
        if self.edges.is_empty() {
            return Err(Error::UndefinedHeight);
        }
        let covers = self.minimal_vertex_covers(limits)?;
        Ok(covers.min_size().expect("a clutter with edges has a cover"))
    }

    /// All minimal vertex covers share one cardinality?
    pub fn is_unmixed(&self, limits: &Limits) -> Result<bool> {
        let covers = self.minimal_vertex_covers(limits)?;
        Ok(covers.min_size() == covers.max_size())
    }

    /// `Some(d)` when every edge has cardinality `d`; `None` when edge sizes
    /// differ or the clutter has no edges.
    pub fn uniform_size(&self) -> Option<usize> {
        let mut sizes = self.edges.iter().map(|e| e.len());
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(first)
    }

    /// The Alexander dual: the clutter on the same vertices whose edges are
    /// exactly the minimal vertex covers of this one.
    pub fn alexander_dual(&self, limits: &Limits) -> Result<Clutter> {
        if self.edges.is_empty() {
            return Err(Error::invalid(
                "the Alexander dual of a clutter with no edges is undefined",
            ));
        }
        let covers = self.minimal_vertex_covers(limits)?;
        Clutter::new(self.labels.clone(), covers.covers)
    }

    /// All perfect matchings of König type: collections of exactly
    /// `height` pairwise disjoint edges whose union is the whole vertex set.
    /// Returned as sorted lists of edge indices; empty when none exist.
    pub fn konig_perfect_matchings(&self, limits: &Limits) -> Result<Vec<Vec<usize>>> {
        if self.edges.is_empty() {
            return Ok(Vec::new());
        }
        let h = self.height(limits)?;
        let full = VertexSet::full(self.vertex_count());
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        let mut nodes = 0usize;
        self.matching_rec(
            0,
            VertexSet::EMPTY,
            h,
            full,
            &mut chosen,
            &mut out,
            &mut nodes,
            limits,
        )?;
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn matching_rec(
        &self,
        start: usize,
        used: VertexSet,
        h: usize,
        full: VertexSet,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        nodes: &mut usize,
        limits: &Limits,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > limits.max_nodes {
            return Err(Error::BudgetExceeded {
                budget: "max_nodes",
                limit: limits.max_nodes,
            });
        }
        if chosen.len() == h {
            if used == full {
                out.push(chosen.clone());
            }
            return Ok(());
        }
        for i in start..self.edges.len() {
            if self.edges[i].intersects(used) {
                continue;
            }
            chosen.push(i);
            self.matching_rec(
                i + 1,
                used.union(self.edges[i]),
                h,
                full,
                chosen,
                out,
                nodes,
                limits,
            )?;
            chosen.pop();
        }
        Ok(())
    }

    /// Vertices belonging to exactly one edge.
    pub fn free_vertices(&self) -> VertexSet {
        let mut once = VertexSet::EMPTY;
        let mut more = VertexSet::EMPTY;
        for &e in &self.edges {
            more = more.union(once.intersection(e));
            once = once.union(e);
        }
        once.difference(more)
    }
}

/// The minimal vertex covers of a clutter, canonically sorted (by size, then
/// lexicographically on index lists), duplicate-free, pairwise incomparable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverList {
    covers: Vec<VertexSet>,
}

impl CoverList {
    pub fn covers(&self) -> &[VertexSet] {
        &self.covers
    }

    pub fn len(&self) -> usize {
        self.covers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covers.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &VertexSet> {
        self.covers.iter()
    }

    pub fn contains(&self, s: VertexSet) -> bool {
        self.covers.binary_search(&s).is_ok()
    }

    pub fn min_size(&self) -> Option<usize> {
        self.covers.first().map(|c| c.len())
    }

    pub fn max_size(&self) -> Option<usize> {
        self.covers.last().map(|c| c.len())
    }

    pub fn into_vec(self) -> Vec<VertexSet> {
        self.covers
    }
}
