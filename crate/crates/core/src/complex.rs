use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::field::{rank, PrimeField, SparseMatrix};
use crate::limits::Limits;
use crate::set::{minimal_sets, VertexSet};

/// A simplicial complex given by its facets (maximal faces). Faces are all
/// subsets of facets and are never materialized unless homology needs them.
///
/// Two degenerate complexes are distinguished: the void complex (no faces at
/// all, empty facet list) and the empty complex `{∅}` (one empty facet).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<VertexSet>,
}

impl SimplicialComplex {
    /// Build a complex on `n` ambient vertices. The generating sets are
    /// reduced to their maximal members (facets of the generated complex).
    pub fn new(n: usize, generators: Vec<VertexSet>) -> Result<Self> {
        for s in &generators {
            if let Some(i) = s.max_index() {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, n });
                }
            }
        }
        // Keep maximal sets: reuse the minimal-set filter on complements.
        let complements: Vec<VertexSet> =
            generators.iter().map(|s| s.complement_within(n)).collect();
        let facets: Vec<VertexSet> = minimal_sets(complements)
            .into_iter()
            .map(|s| s.complement_within(n))
            .collect();
        let mut facets = facets;
        facets.sort();
        Ok(SimplicialComplex { n, facets })
    }

    pub fn void(n: usize) -> Self {
        SimplicialComplex { n, facets: vec![] }
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn ambient_size(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    /// Dimension: largest facet size minus one. `None` for the void complex;
    /// `-1` for the empty complex.
    pub fn dimension(&self) -> Option<i64> {
        self.facets.iter().map(|f| f.len() as i64 - 1).max()
    }

    /// Vertices that occur in some face.
    pub fn vertices(&self) -> VertexSet {
        self.facets
            .iter()
            .fold(VertexSet::EMPTY, |acc, f| acc.union(*f))
    }

    pub fn contains_face(&self, face: VertexSet) -> bool {
        self.facets.iter().any(|f| face.is_subset_of(*f))
    }

    /// The link of a face: `{ G \ face : face ⊆ G ∈ facets }`. Facets of the
    /// link inherit incomparability from the facet antichain, so no
    /// maximalization pass is needed.
    pub fn link(&self, face: VertexSet) -> Result<SimplicialComplex> {
        if !self.contains_face(face) {
            return Err(Error::invalid("link of a non-face"));
        }
        let mut facets: Vec<VertexSet> = self
            .facets
            .iter()
            .filter(|f| face.is_subset_of(**f))
            .map(|f| f.difference(face))
            .collect();
        facets.sort();
        Ok(SimplicialComplex { n: self.n, facets })
    }

    /// A cone apex: a vertex contained in every facet, when one exists. Cones
    /// are acyclic, so homology checks can skip them.
    pub fn cone_apex(&self) -> Option<usize> {
        let mut core = *self.facets.first()?;
        for f in &self.facets[1..] {
            core = core.intersection(*f);
            if core.is_empty() {
                return None;
            }
        }
        core.min_index()
    }

    /// Restriction to the faces contained in `sigma`.
    pub fn induced(&self, sigma: VertexSet) -> SimplicialComplex {
        let gens: Vec<VertexSet> = self.facets.iter().map(|f| f.intersection(sigma)).collect();
        SimplicialComplex::new(self.n, gens).expect("restriction stays in range")
    }

    /// An upper bound on the face count that needs no enumeration: the sum of
    /// `2^|facet|`, saturating.
    pub fn face_count_bound(&self) -> usize {
        let mut total = 0usize;
        for f in &self.facets {
            let size = f.len();
            if size >= usize::BITS as usize - 1 {
                return usize::MAX;
            }
            total = total.saturating_add(1usize << size);
        }
        total
    }

    /// Number of faces (including the empty face), or `None` once the count
    /// passes `cap`. Uses the arithmetic bound to skip the enumeration when
    /// the answer is already determined.
    pub fn count_faces(&self, cap: usize) -> Option<usize> {
        if self.face_count_bound() <= cap {
            return Some(self.count_faces_exact());
        }
        let mut seen: HashSet<u128> = HashSet::new();
        for f in &self.facets {
            let bits = f.bits();
            let mut s = bits;
            loop {
                if seen.insert(s) && seen.len() > cap {
                    return None;
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & bits;
            }
        }
        Some(seen.len())
    }

    fn count_faces_exact(&self) -> usize {
        let mut seen: HashSet<u128> = HashSet::new();
        for f in &self.facets {
            let bits = f.bits();
            let mut s = bits;
            loop {
                seen.insert(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & bits;
            }
        }
        seen.len()
    }

    /// All faces grouped by dimension: index `k` holds the `(k-1)`-faces, so
    /// index 0 is the empty face when the complex is nonvoid.
    fn faces_by_size(&self, limits: &Limits) -> Result<Vec<Vec<u128>>> {
        let mut seen: HashSet<u128> = HashSet::new();
        for f in &self.facets {
            let bits = f.bits();
            let mut s = bits;
            loop {
                if seen.insert(s) && seen.len() > limits.max_faces {
                    return Err(Error::BudgetExceeded {
                        budget: "max_faces",
                        limit: limits.max_faces,
                    });
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & bits;
            }
        }
        let max_size = self.facets.iter().map(|f| f.len()).max().unwrap_or(0);
        let mut by_size: Vec<Vec<u128>> = vec![Vec::new(); max_size + 1];
        for s in seen {
            by_size[s.count_ones() as usize].push(s);
        }
        for level in &mut by_size {
            level.sort_unstable();
        }
        Ok(by_size)
    }

    /// The distinct intersections of nonempty facet families (the closed
    /// faces). A face's link is a cone unless the face equals the
    /// intersection of all facets containing it, so homology vanishing needs
    /// to be checked on closed faces only.
    ///
    /// Budgeted twice: on the number of closed faces (`max_faces`) and on the
    /// intersection work (a fixed multiple of `max_faces`), since lattices
    /// with huge duplicate ratios would otherwise burn unbounded time before
    /// filling the set.
    pub fn closed_faces(&self, limits: &Limits) -> Result<Vec<VertexSet>> {
        let mut closed: HashSet<u128> = self.facets.iter().map(|f| f.bits()).collect();
        let mut frontier: Vec<u128> = closed.iter().copied().collect();
        let work_budget = limits.max_faces.saturating_mul(256);
        let mut work = 0usize;
        while let Some(s) = frontier.pop() {
            work += self.facets.len();
            if work > work_budget {
                return Err(Error::BudgetExceeded {
                    budget: "closed_face_work",
                    limit: work_budget,
                });
            }
            for f in &self.facets {
                let t = s & f.bits();
                if closed.insert(t) {
                    if closed.len() > limits.max_faces {
                        return Err(Error::BudgetExceeded {
                            budget: "max_faces",
                            limit: limits.max_faces,
                        });
                    }
                    frontier.push(t);
                }
            }
        }
        let mut out: Vec<VertexSet> = closed.into_iter().map(VertexSet::from_bits).collect();
        out.sort();
        Ok(out)
    }

    /// Is the complex connected? Decided on the facet overlap graph; valid
    /// because every facet is connected through its shared vertices.
    /// Complexes with at most one facet count as connected.
    pub fn is_connected(&self) -> bool {
        let m = self.facets.len();
        if m <= 1 {
            return true;
        }
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let root = find(parent, parent[i]);
                parent[i] = root;
            }
            parent[i]
        }
        for i in 0..m {
            for j in i + 1..m {
                if self.facets[i].intersects(self.facets[j]) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        // Isolated empty facets cannot occur here: an empty facet is the
        // whole complex by maximality.
        (0..m)
            .map(|i| find(&mut parent, i))
            .collect::<HashSet<_>>()
            .len()
            == 1
    }
}

/// Reduced homology dimensions over a prime field, indexed from `-1` up to
/// the dimension of the complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyProfile {
    /// `dims[k]` is the dimension of reduced homology in degree `k - 1`.
    dims: Vec<usize>,
}

impl HomologyProfile {
    /// Dimension of reduced homology in degree `k` (`k >= -1`).
    pub fn dim(&self, k: i64) -> usize {
        let idx = k + 1;
        if idx < 0 || idx as usize >= self.dims.len() {
            0
        } else {
            self.dims[idx as usize]
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Degrees `k` with nonzero homology.
    pub fn nonzero_degrees(&self) -> Vec<i64> {
        self.dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(i, _)| i as i64 - 1)
            .collect()
    }

    /// Largest degree tracked by the profile (the complex dimension).
    pub fn top_degree(&self) -> i64 {
        self.dims.len() as i64 - 2
    }
}

/// Reduced simplicial homology over `F_p` via ranks of boundary matrices.
///
/// For the void complex every group vanishes; for the empty complex `{∅}`
/// the degree `-1` group is one-dimensional.
pub fn reduced_homology(
    complex: &SimplicialComplex,
    field: PrimeField,
    limits: &Limits,
) -> Result<HomologyProfile> {
    if complex.is_void() {
        return Ok(HomologyProfile { dims: vec![] });
    }
    if let Some(apex) = complex.cone_apex() {
        // Cones are acyclic; skip the matrices but keep the shape.
        let _ = apex;
        let dim = complex.dimension().expect("nonvoid") as usize;
        return Ok(HomologyProfile {
            dims: vec![0; dim + 2],
        });
    }
    let by_size = complex.faces_by_size(limits)?;
    let f: Vec<usize> = by_size.iter().map(|l| l.len()).collect();
    let top = f.len() - 1; // largest face cardinality

    // boundary_rank[k] = rank of the boundary map from faces of size k to
    // faces of size k-1 (size 1 -> size 0 is the augmentation to ∅).
    let mut boundary_rank = vec![0usize; top + 2];
    for k in 1..=top {
        if f[k] == 0 || f[k - 1] == 0 {
            continue;
        }
        let row_index: HashMap<u128, usize> = by_size[k - 1]
            .iter()
            .enumerate()
            .map(|(i, &s)| (s, i))
            .collect();
        let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); f[k - 1]];
        for (col, &s) in by_size[k].iter().enumerate() {
            let set = VertexSet::from_bits(s);
            for (pos, v) in set.iter().enumerate() {
                let sub = set.without(v).bits();
                let row = row_index[&sub];
                let val = if pos % 2 == 0 { 1 } else { field.neg(1) };
                rows[row].push((col, val));
            }
        }
        boundary_rank[k] = rank(field, SparseMatrix { cols: f[k], rows });
    }

    // Reduced dimensions: h[k] = f[k] - rank ∂_k - rank ∂_{k+1}, with the
    // empty face contributing f[0] = 1 in degree -1.
    let mut dims = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let above = if k < top { boundary_rank[k + 1] } else { 0 };
        dims.push(f[k] - boundary_rank[k] - above);
    }

    // Independent consistency check: the alternating sum of homology
    // dimensions must match the reduced Euler characteristic from the face
    // counts alone.
    let hom_euler: i64 = dims
        .iter()
        .enumerate()
        .map(|(k, &d)| if k % 2 == 0 { -(d as i64) } else { d as i64 })
        .sum();
    let face_euler: i64 = f
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { -(c as i64) } else { c as i64 })
        .sum();
    if hom_euler != face_euler {
        return Err(Error::InternalInvariant(format!(
            "Euler characteristic mismatch: homology gives {hom_euler}, face counts give {face_euler}"
        )));
    }
    Ok(HomologyProfile { dims })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn cx(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::new(
            n,
            facets
                .iter()
                .map(|f| VertexSet::from_indices(f.iter().copied()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn facets_are_maximalized() {
        let c = cx(3, &[&[0, 1], &[0], &[1, 2]]);
        assert_eq!(c.facets().len(), 2);
        assert_eq!(c.dimension(), Some(1));
        assert!(c.contains_face(VertexSet::from_indices([0])));
        assert!(!c.contains_face(VertexSet::from_indices([0, 2])));
    }

    #[test]
    fn degenerate_complexes() {
        let void = SimplicialComplex::void(3);
        assert!(void.is_void());
        assert_eq!(void.dimension(), None);
        assert!(reduced_homology(&void, f2(), &lim()).unwrap().is_trivial());

        let empty = cx(3, &[&[]]);
        assert_eq!(empty.dimension(), Some(-1));
        let h = reduced_homology(&empty, f2(), &lim()).unwrap();
        assert_eq!(h.dim(-1), 1);
        assert!(h.nonzero_degrees() == vec![-1]);
    }

    #[test]
    fn full_simplex_is_acyclic() {
        let c = cx(3, &[&[0, 1, 2]]);
        let h = reduced_homology(&c, f2(), &lim()).unwrap();
        assert!(h.is_trivial());
    }

    #[test]
    fn two_points_have_reduced_h0() {
        let c = cx(2, &[&[0], &[1]]);
        let h = reduced_homology(&c, f2(), &lim()).unwrap();
        assert_eq!(h.dim(0), 1);
        assert_eq!(h.dim(-1), 0);
        assert!(!c.is_connected());
    }

    #[test]
    fn hollow_triangle_is_a_circle() {
        // Boundary matrix ranks by hand: three vertices, three edges,
        // rank ∂_1 = 2, so h_0 = 0 and h_1 = 3 - 2 = 1.
        let c = cx(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        for p in [2u64, 3, 5, 32003] {
            let h = reduced_homology(&c, PrimeField::new(p).unwrap(), &lim()).unwrap();
            assert_eq!(h.dim(0), 0);
            assert_eq!(h.dim(1), 1);
        }
    }

    #[test]
    fn sphere_boundary_of_tetrahedron() {
        let c = cx(4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        let h = reduced_homology(&c, f2(), &lim()).unwrap();
        assert_eq!(h.dim(0), 0);
        assert_eq!(h.dim(1), 0);
        assert_eq!(h.dim(2), 1);
    }

    #[test]
    fn projective_plane_detects_the_characteristic() {
        // Minimal 6-vertex triangulation of the real projective plane.
        let c = cx(
            6,
            &[
                &[0, 1, 2],
                &[0, 2, 3],
                &[0, 1, 4],
                &[0, 3, 5],
                &[0, 4, 5],
                &[1, 2, 5],
                &[1, 3, 4],
                &[1, 3, 5],
                &[2, 3, 4],
                &[2, 4, 5],
            ],
        );
        let h2 = reduced_homology(&c, f2(), &lim()).unwrap();
        assert_eq!(h2.dim(1), 1);
        assert_eq!(h2.dim(2), 1);
        let h3 = reduced_homology(&c, PrimeField::new(3).unwrap(), &lim()).unwrap();
        assert_eq!(h3.dim(1), 0);
        assert_eq!(h3.dim(2), 0);
    }

    #[test]
    fn cyclic_torus_triangulation() {
        // Seven vertices, triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7:
        // a triangulated torus on the complete graph K7.
        let mut facets = Vec::new();
        for i in 0..7usize {
            facets.push(VertexSet::from_indices([i, (i + 1) % 7, (i + 3) % 7]));
            facets.push(VertexSet::from_indices([i, (i + 2) % 7, (i + 3) % 7]));
        }
        let c = SimplicialComplex::new(7, facets).unwrap();
        assert_eq!(c.facets().len(), 14);
        for p in [2u64, 3, 7, 32003] {
            let h = reduced_homology(&c, PrimeField::new(p).unwrap(), &lim()).unwrap();
            assert_eq!(h.dim(0), 0, "char {p}");
            assert_eq!(h.dim(1), 2, "char {p}");
            assert_eq!(h.dim(2), 1, "char {p}");
        }
    }

    #[test]
    fn link_examples() {
        let c = cx(4, &[&[0, 2], &[1, 3]]);
        // Link of the empty face is the complex itself.
        assert_eq!(c.link(VertexSet::EMPTY).unwrap(), c);
        // Link of a facet is the empty complex.
        let l = c.link(VertexSet::from_indices([0, 2])).unwrap();
        assert_eq!(l.dimension(), Some(-1));
        // Link of one vertex of an edge is the other endpoint.
        let l = c.link(VertexSet::from_indices([0])).unwrap();
        assert_eq!(l.facets(), &[VertexSet::from_indices([2])]);
        // Non-faces are rejected.
        assert!(c.link(VertexSet::from_indices([0, 1])).is_err());
    }

    #[test]
    fn cone_detection() {
        let c = cx(3, &[&[0, 1], &[0, 2]]);
        assert_eq!(c.cone_apex(), Some(0));
        let h = reduced_homology(&c, f2(), &lim()).unwrap();
        assert!(h.is_trivial());
        assert_eq!(cx(3, &[&[0, 1], &[1, 2], &[0, 2]]).cone_apex(), None);
    }

    #[test]
    fn closed_faces_of_a_square() {
        let c = cx(4, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        let closed = c.closed_faces(&lim()).unwrap();
        // Facets, vertices, and the empty intersection.
        assert_eq!(closed.len(), 4 + 4 + 1);
    }

    #[test]
    fn face_budget_is_enforced() {
        let c = cx(20, &[&(0..20).collect::<Vec<_>>()]);
        let tight = Limits {
            max_faces: 100,
            ..Limits::default()
        };
        assert_eq!(c.count_faces(100), None);
        // Two disjoint big facets: not a cone, and far more than 100 faces.
        let c2 = cx(
            20,
            &[&(0..10).collect::<Vec<_>>(), &(10..20).collect::<Vec<_>>()],
        );
        assert!(matches!(
            reduced_homology(&c2, f2(), &tight),
            Err(Error::BudgetExceeded {
                budget: "max_faces",
                ..
            })
        ));
    }

    #[test]
    fn homology_is_label_invariant() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..100 {
            let n = rng.random_range(3..=10usize);
            let k = rng.random_range(1..=6usize);
            let facets: Vec<VertexSet> = (0..k)
                .map(|_| {
                    let sz = rng.random_range(1..=4usize);
                    VertexSet::from_indices((0..sz).map(|_| rng.random_range(0..n)))
                })
                .collect();
            let c = SimplicialComplex::new(n, facets.clone()).unwrap();
            // Random permutation of the vertex labels.
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.random_range(0..=i));
            }
            let relabeled: Vec<VertexSet> = facets
                .iter()
                .map(|f| VertexSet::from_indices(f.iter().map(|v| perm[v])))
                .collect();
            let c2 = SimplicialComplex::new(n, relabeled).unwrap();
            for p in [2u64, 3] {
                let field = PrimeField::new(p).unwrap();
                let h1 = reduced_homology(&c, field, &lim()).unwrap();
                let h2 = reduced_homology(&c2, field, &lim()).unwrap();
                assert_eq!(h1, h2);
            }
        }
    }
}
