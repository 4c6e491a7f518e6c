//! Rewrites a group document as left-regular permutation generators.
use brq::io::InputDoc;
fn main() {
    let text = std::fs::read_to_string(std::env::args().nth(1).expect("path")).unwrap();
    let g = InputDoc::parse(&text).unwrap().build_group().unwrap();
    let gens: Vec<Vec<usize>> = g
        .reduced_generators()
        .iter()
        .map(|&s| (0..g.order()).map(|x| g.mul(s, x)).collect())
        .collect();
    let doc = serde_json::json!({"group": {"kind": "permutation", "degree": g.order(), "generators": gens}});
    let g2 = InputDoc::from_value(doc.clone()).unwrap().build_group().unwrap();
    assert_eq!(g2.order(), g.order());
    let r = brq::brauer::bogomolov_multiplier(&g2).unwrap();
    eprintln!("B0 = {:?}, H2 = {:?}", r.unramified_factors(), r.h2_factors);
    println!("{}", serde_json::to_string(&doc).unwrap());
}
