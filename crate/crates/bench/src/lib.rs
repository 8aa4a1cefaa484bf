//! Shared fixtures for the benchmark targets.

use clutters::{AdmissibleInstance, Clutter, Limits};

pub fn limits() -> Limits {
    Limits::default()
}

/// The 9-vertex height-3 fixture with 19 minimal covers.
pub fn small_instance() -> AdmissibleInstance {
    clutters::fixture_example_g3()
}

/// The height-4 member of the counterexample family: 20 vertices, 8 edges,
/// 273 minimal covers.
pub fn counterexample_g4() -> AdmissibleInstance {
    clutters::gen_counterexample(4).expect("4 >= 4")
}

/// An unmixed height-4 instance with 18 dual generators satisfying
/// condition (*): the ordering search proves a definitive `none`, its worst
/// case.
pub fn search_instance() -> AdmissibleInstance {
    clutters::gen_random_admissible(3, 4, 12, 168).expect("valid parameters")
}

/// A 12-vertex graph whose independence complex exercises the homology path.
pub fn homology_graph() -> Clutter {
    let labels: Vec<String> = (0..12).map(|i| format!("v{i}")).collect();
    let edges = (0..12)
        .map(|i| clutters::VertexSet::from_indices([i, (i + 1) % 12]))
        .collect();
    Clutter::new(labels, edges).expect("cycle graph")
}
