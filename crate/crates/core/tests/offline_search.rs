//! One-time discovery runs for the regression constants pinned in the
//! acceptance suite: the minimal-cover counts of the counterexample family,
//! its canonical bad vertex cover pair, a face of the independence complex
//! witnessing the Reisner failure, and a vertex subset carrying off-strand
//! homology for the dual ideal.
//!
//! These searches are deterministic but slow, so they stay behind `--ignored`:
//!
//! ```text
//! cargo test -p clutters --test offline_search -- --ignored --nocapture
//! ```

use clutters::{
    gen_counterexample, reduced_homology, satisfies_condition_star, Limits, PrimeField,
    SquareFreeIdeal,
};

mod support;

#[test]
#[ignore = "one-time discovery run; results are pinned in the acceptance suite"]
fn discover_counterexample_constants() {
    let limits = Limits::default();
    let inst = gen_counterexample(4).unwrap();
    let clutter = inst.clutter();

    // Exhaustive subset oracle over all 2^20 vertex subsets.
    let oracle = support::brute_force_minimal_covers(clutter);
    println!(
        "g=4 minimal covers (oracle over 2^20 subsets): {}",
        oracle.len()
    );
    let sizes: std::collections::BTreeSet<usize> = oracle.iter().map(|c| c.len()).collect();
    println!("g=4 cover sizes: {sizes:?}");

    let fast = clutter.minimal_vertex_covers(&limits).unwrap();
    assert_eq!(fast.covers().to_vec(), oracle);

    for g in [5usize, 6] {
        let inst = gen_counterexample(g).unwrap();
        let covers = inst.clutter().minimal_vertex_covers(&limits).unwrap();
        println!(
            "g={g} minimal covers (branch and bound): {} (sizes {:?})",
            covers.len(),
            covers
                .iter()
                .map(|c| c.len())
                .collect::<std::collections::BTreeSet<_>>()
        );
    }

    let pair = satisfies_condition_star(&inst, &limits)
        .unwrap()
        .expect("bad pair");
    println!("canonical bad pair: {pair}");
}

#[test]
#[ignore = "one-time discovery run; results are pinned in the acceptance suite"]
fn discover_reisner_witness() {
    let limits = Limits {
        max_faces: 1 << 22,
        ..Limits::default()
    };
    let inst = gen_counterexample(4).unwrap();
    let clutter = inst.clutter();
    let complex = clutters::independence_complex(clutter, &limits).unwrap();
    println!("facets: {}", complex.facets().len());

    // Closed faces descending by size: big faces have small links, so the
    // cheap homology computations come first.
    let mut closed = complex.closed_faces(&limits).unwrap();
    closed.sort_by_key(|f| std::cmp::Reverse(f.len()));
    println!("closed faces: {}", closed.len());

    for field_char in [2u64, 3, 32003] {
        let field = PrimeField::new(field_char).unwrap();
        let mut found = false;
        for &face in &closed {
            let link = complex.link(face).unwrap();
            if link.cone_apex().is_some() {
                continue;
            }
            let dim = link.dimension().unwrap();
            if dim <= 0 {
                continue;
            }
            if link.count_faces(1 << 14).is_none() {
                continue;
            }
            let profile = reduced_homology(&link, field, &limits).unwrap();
            for k in -1..dim {
                if profile.dim(k) > 0 {
                    println!(
                        "char {field_char}: witness face {} (size {}, link dim {dim}, H~_{k} = {})",
                        clutter.format_set(face),
                        face.len(),
                        profile.dim(k)
                    );
                    found = true;
                    break;
                }
            }
            if found {
                break;
            }
        }
        println!("char {field_char}: witness found = {found}");
    }
}

#[test]
#[ignore = "one-time discovery run; results are pinned in the acceptance suite"]
fn discover_off_strand_witness_for_dual() {
    let limits = Limits::default();
    let inst = gen_counterexample(4).unwrap();
    let clutter = inst.clutter();
    let n = clutter.vertex_count();
    let dual = SquareFreeIdeal::cover_ideal(clutter, &limits).unwrap();
    println!("dual generators: {}", dual.generator_count());
    let field = PrimeField::new(2).unwrap();

    // Start from the Reisner witness complements and shrink greedily.
    let complex = clutters::independence_complex(clutter, &limits).unwrap();
    let mut closed = complex.closed_faces(&limits).unwrap();
    closed.sort_by_key(|f| std::cmp::Reverse(f.len()));
    for &face in &closed {
        let sigma = face.complement_within(n);
        if let Some(k) = clutters::verify_off_strand_witness(&dual, sigma, field, &limits).unwrap()
        {
            println!(
                "off-strand witness sigma = {} (size {}, degree {k})",
                clutter.format_set(sigma),
                sigma.len()
            );
            // Greedy shrink while the witness property persists.
            let mut current = sigma;
            loop {
                let mut shrunk = None;
                for v in current.iter() {
                    let candidate = current.without(v);
                    if clutters::verify_off_strand_witness(&dual, candidate, field, &limits)
                        .unwrap()
                        .is_some()
                    {
                        shrunk = Some(candidate);
                        break;
                    }
                }
                match shrunk {
                    Some(c) => current = c,
                    None => break,
                }
            }
            let k = clutters::verify_off_strand_witness(&dual, current, field, &limits)
                .unwrap()
                .unwrap();
            println!(
                "minimal off-strand witness sigma = {} (size {}, degree {k})",
                clutter.format_set(current),
                current.len()
            );
            return;
        }
    }
    panic!("no off-strand witness found among closed-face complements");
}
