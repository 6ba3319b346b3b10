mod common;

use common::corpus;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vinbergkit::brauer::hasse_invariant;
use vinbergkit::classify::classify;
use vinbergkit::coxgraph::{load_graph, GramMatrix};
use vinbergkit::cycles::{simple_cycles, vinberg_field, vinberg_ring, DEFAULT_CYCLE_CAP, DEFAULT_WALK_LENGTH};
use vinbergkit::vform::{vinberg_form, BasisOptions};

struct Snapshot {
    field: vinbergkit::algnum::Subfield,
    ring: vinbergkit::cycles::VinbergRing,
    class: vinbergkit::classify::ArithKind,
    det: vinbergkit::vform::SquareClass,
    ram: Option<Vec<String>>,
}

fn snapshot(g: &GramMatrix, base: usize) -> Snapshot {
    let cs = simple_cycles(g, DEFAULT_CYCLE_CAP).unwrap();
    let field = vinberg_field(g, &cs);
    let class = classify(g, &field, &cs).value;
    let ring = vinberg_ring(g, &field, &cs, DEFAULT_WALK_LENGTH).unwrap().ring;
    let f = vinberg_form(g, &field, &BasisOptions { base, seed: None }).unwrap();
    let ram = hasse_invariant(&f.diagonal).ok().map(|h| h.ram.iter().map(|p| p.to_string()).collect());
    Snapshot { field, ring, class, det: f.det_class, ram }
}

#[test]
fn invariants_survive_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for p in corpus() {
        let (g, gm) = load_graph(&std::fs::read_to_string(&p).unwrap(), true).unwrap();
        let s0 = snapshot(&gm, 0);
        for _ in 0..20 {
            let mut perm: Vec<usize> = (0..g.rank).collect();
            perm.shuffle(&mut rng);
            let h = gm.relabel(&perm);
            assert_eq!(h.matrix(), g.relabel(&perm).gram_matrix().unwrap().matrix().coerce_to(gm.field()).as_ref().unwrap());
            // keep the base vertex on the same wall so the form is unchanged up to isometry
            let base = perm.iter().position(|&o| o == 0).unwrap();
            let s = snapshot(&h, base);
            let ctx = format!("{} {perm:?}", p.display());
            assert!(s.field.same_as(&s0.field), "{ctx}");
            assert_eq!(s.ring.same_as(&s0.ring), Some(true), "{ctx}");
            assert_eq!(s.class, s0.class, "{ctx}");
            assert!(s.det.same(&s0.det), "{ctx}");
            assert_eq!(s.ram, s0.ram, "{ctx}");
        }
    }
}
