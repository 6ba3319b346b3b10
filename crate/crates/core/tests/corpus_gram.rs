use std::path::PathBuf;
use vinbergkit::coxgraph::load_graph;

fn corpus() -> Vec<PathBuf> {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut out = Vec::new();
    for d in std::fs::read_dir(&root).unwrap() {
        for f in std::fs::read_dir(d.unwrap().path()).unwrap() {
            out.push(f.unwrap().path());
        }
    }
    out.sort();
    out
}

#[test]
fn every_corpus_graph_has_hyperbolic_signature() {
    for p in corpus() {
        let t = std::time::Instant::now();
        let text = std::fs::read_to_string(&p).unwrap();
        let (g, gm) = load_graph(&text, true).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
        eprintln!("{} deg {} {:?} {:?}", p.display(), gm.field().degree(), gm.signature(), t.elapsed());
        assert_eq!(gm.size(), g.rank);
    }
}
