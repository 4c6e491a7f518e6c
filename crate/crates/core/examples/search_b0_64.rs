//! Provenance of the order-64 fixture: every 2-group is an iterated central
//! extension by `Z/2`, so we grow groups level by level from `Z/2` using the
//! representatives of `H^2(Q, Z/2)`, deduplicate by a cheap invariant, and
//! stop at the first order-64 group with nonzero Bogomolov multiplier.

use std::collections::BTreeSet;

use brq::brauer::bogomolov_multiplier;
use brq::cohomology::{h2, GModule};
use brq::groups::FiniteGroup;
use brq::io::GroupSpec;

type Invariant = (Vec<(usize, usize)>, usize, usize);

fn invariant(g: &FiniteGroup) -> Invariant {
    let n = g.order();
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .map(|x| (g.element_order(x), (0..n).filter(|&y| g.commute(x, y)).count()))
        .collect();
    pairs.sort_unstable();
    (pairs, g.center().order(), g.derived_subgroup().order())
}

fn extensions(spec: &GroupSpec, limit: u64) -> Vec<GroupSpec> {
    let q = spec.build().unwrap();
    let h = h2(&q, &GModule::trivial_finite(&q, &[2]).unwrap()).unwrap();
    let k = h.invariant_factors().len();
    let n = q.order();
    let total = 1u64 << k;
    let step = (total / limit).max(1);
    (0..total)
        .step_by(step as usize)
        .map(|code| {
            let coords: Vec<u64> = (0..k).map(|i| code >> i & 1).collect();
            let c = h.cochain(&coords).unwrap();
            let cocycle: Vec<Vec<u64>> = (0..n)
                .map(|a| (0..n).map(|b| c.value2(a, b)[0].rem_euclid(2) as u64).collect())
                .collect();
            GroupSpec::CentralExtension { base: Box::new(spec.clone()), n: 2, cocycle }
        })
        .collect()
}

fn main() {
    let mut level = vec![GroupSpec::Cyclic { n: 2 }];
    for order in [4, 8, 16, 32] {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for spec in &level {
            for e in extensions(spec, 4096) {
                if seen.insert(invariant(&e.build().unwrap())) {
                    next.push(e);
                }
            }
        }
        eprintln!("order {order}: {} groups", next.len());
        level = next;
    }
    let mut seen = BTreeSet::new();
    let mut tested = 0;
    for spec in &level {
        for e in extensions(spec, 1024) {
            let g = e.build().unwrap();
            if !seen.insert(invariant(&g)) {
                continue;
            }
            tested += 1;
            let r = bogomolov_multiplier(&g).unwrap();
            if !r.unramified_factors().is_empty() {
                eprintln!("hit after {tested}: B0 = {:?}", r.unramified_factors());
                println!("{}", serde_json::to_string(&e).unwrap());
                return;
            }
        }
        eprintln!("tested {tested}");
    }
}
