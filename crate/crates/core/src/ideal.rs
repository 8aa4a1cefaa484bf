use crate::clutter::Clutter;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::set::{VertexSet, MAX_VERTICES};

/// A square-free monomial ideal, recorded by the supports of its minimal
/// generators: an antichain of subsets of the ambient vertex list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFreeIdeal {
    labels: Vec<String>,
    generators: Vec<VertexSet>,
}

impl SquareFreeIdeal {
    /// Generators must be nonempty, in range, and pairwise incomparable; they
    /// are deduplicated and canonically sorted.
    pub fn new(labels: Vec<String>, generators: Vec<VertexSet>) -> Result<Self> {
        if labels.len() > MAX_VERTICES {
            return Err(Error::invalid(format!(
                "at most {MAX_VERTICES} ambient vertices are supported"
            )));
        }
        let n = labels.len();
        let mut gens = Vec::with_capacity(generators.len());
        for s in generators {
            if s.is_empty() {
                return Err(Error::invalid("generators must be nonempty"));
            }
            if let Some(i) = s.max_index() {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, n });
                }
            }
            gens.push(s);
        }
        gens.sort();
        gens.dedup();
        for i in 0..gens.len() {
            for j in 0..gens.len() {
                if i != j && gens[i].is_subset_of(gens[j]) {
                    return Err(Error::AntichainViolation {
                        contained: format!("{:?}", gens[i]),
                        container: format!("{:?}", gens[j]),
                    });
                }
            }
        }
        Ok(SquareFreeIdeal {
            labels,
            generators: gens,
        })
    }

    /// The edge ideal of a clutter: one generator per edge.
    pub fn edge_ideal(clutter: &Clutter) -> Self {
        SquareFreeIdeal {
            labels: clutter.labels().to_vec(),
            generators: clutter.edges().to_vec(),
        }
    }

    /// The Alexander dual of a clutter's edge ideal: one generator per
    /// minimal vertex cover.
    pub fn cover_ideal(clutter: &Clutter, limits: &Limits) -> Result<Self> {
        let covers = clutter.minimal_vertex_covers(limits)?;
        Ok(SquareFreeIdeal {
            labels: clutter.labels().to_vec(),
            generators: covers.into_vec(),
        })
    }

    /// The clutter whose edges are this ideal's generators.
    pub fn to_clutter(&self) -> Result<Clutter> {
        Clutter::new(self.labels.clone(), self.generators.clone())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ambient_size(&self) -> usize {
        self.labels.len()
    }

    pub fn generators(&self) -> &[VertexSet] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// `Some(q)` when every generator has degree `q` (vacuously the ideal is
    /// equigenerated when it has no generators: returns `None` then).
    pub fn equigenerated_degree(&self) -> Option<usize> {
        let mut sizes = self.generators.iter().map(|s| s.len());
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(first)
    }

    pub fn format_set(&self, s: VertexSet) -> String {
        let names: Vec<&str> = s.iter().map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", names.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_and_cover_ideals() {
        let c = Clutter::from_edge_labels(&["a", "b", "c"], &[&["a", "b"], &["b", "c"]]).unwrap();
        let e = SquareFreeIdeal::edge_ideal(&c);
        assert_eq!(e.generator_count(), 2);
        assert_eq!(e.equigenerated_degree(), Some(2));
        let d = SquareFreeIdeal::cover_ideal(&c, &Limits::default()).unwrap();
        // Covers of a path: {b} and {a, c}.
        assert_eq!(d.generator_count(), 2);
        assert_eq!(d.equigenerated_degree(), None);
    }

    #[test]
    fn antichain_enforced() {
        let labels = vec!["a".into(), "b".into()];
        let gens = vec![
            VertexSet::from_indices([0]),
            VertexSet::from_indices([0, 1]),
        ];
        assert!(SquareFreeIdeal::new(labels, gens).is_err());
    }
}
