//! Provenance of `fixtures/m06_a4.json`: the Picard lattice of `M̄_{0,6}`
//! as boundary divisors `D_I` modulo Keel's relations, with a free basis
//! read off the Smith normal form, and the induced action of the
//! nonstandard `A_4 ⊂ S_6`.

use std::collections::BTreeMap;

use brq::io::{InputDoc, ModuleSpec};
use brq::linalg::abelian::inverse_unimodular;
use brq::linalg::int::{smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde_json::json;

const N: usize = 6;

/// Canonical side of a partition: the 2-set, or the 3-set containing 0.
fn canon(mask: u32) -> u32 {
    let full = (1u32 << N) - 1;
    let c = full ^ mask;
    match mask.count_ones() {
        2 => mask,
        4 => c,
        _ => if mask & 1 == 1 { mask } else { c },
    }
}

fn main() {
    let full = (1u32 << N) - 1;
    let mut divisors: Vec<u32> = (0..=full)
        .filter(|m| (2..=4).contains(&m.count_ones()))
        .map(canon)
        .collect();
    divisors.sort_unstable();
    divisors.dedup();
    assert_eq!(divisors.len(), 25);
    let idx = |m: u32| divisors.binary_search(&canon(m)).unwrap();
    // Σ_{i,j ∈ I; k,l ∉ I} D_I
    let side = |i: usize, j: usize, k: usize, l: usize| -> Vec<i64> {
        let mut v = vec![0i64; 25];
        for &d in &divisors {
            for m in [d, full ^ d] {
                if m >> i & 1 == 1 && m >> j & 1 == 1 && m >> k & 1 == 0 && m >> l & 1 == 0 {
                    v[idx(d)] += 1;
                }
            }
        }
        v
    };
    let mut rels = Vec::new();
    for i in 0..N {
        for j in 0..N {
            for k in 0..N {
                for l in 0..N {
                    if [i, j, k, l].iter().collect::<std::collections::BTreeSet<_>>().len() < 4 {
                        continue;
                    }
                    let a = side(i, j, k, l);
                    let b = side(i, k, j, l);
                    rels.push(a.iter().zip(&b).map(|(x, y)| x - y).collect::<Vec<i64>>());
                }
            }
        }
    }
    let r = IntMatrix::from_i64(&rels).unwrap();
    let snf = smith_normal_form(&r);
    let diag = snf.diagonal();
    assert!(diag.iter().all(|d| d.is_one()), "Picard group has torsion");
    let rank = diag.len();
    assert_eq!(25 - rank, 16);
    let v = snf.v.clone();
    let vinv = inverse_unimodular(&v).unwrap();
    // row vectors: π(x) = (x V)[rank..], lift(f_j) = e_{rank+j} V^{-1}
    let perm_matrix = |p: &[usize]| -> Vec<Vec<i64>> {
        let mut cols = Vec::new();
        for j in 0..16 {
            let lift: Vec<BigInt> = vinv.row(rank + j).to_vec();
            let mut moved = vec![BigInt::from(0); 25];
            for (a, &d) in divisors.iter().enumerate() {
                let mut img = 0u32;
                for t in 0..N {
                    if d >> t & 1 == 1 {
                        img |= 1 << p[t];
                    }
                }
                moved[idx(img)] += &lift[a];
            }
            let proj: Vec<i64> = (rank..25)
                .map(|c| {
                    let s: BigInt = (0..25).map(|a| &moved[a] * v.get(a, c)).sum();
                    s.to_i64().unwrap()
                })
                .collect();
            cols.push(proj);
        }
        (0..16).map(|i| (0..16).map(|j| cols[j][i]).collect()).collect()
    };
    let gens: [[usize; 6]; 3] = [[2, 3, 4, 5, 0, 1], [1, 0, 3, 2, 4, 5], [1, 0, 2, 3, 5, 4]];
    let action: BTreeMap<String, Vec<Vec<i64>>> = gens
        .iter()
        .enumerate()
        .map(|(i, p)| (format!("g{i}"), perm_matrix(p)))
        .collect();
    let doc = json!({
        "group": {"kind": "permutation", "degree": 6, "generators": gens},
        "pic": {"kind": "lattice", "rank": 16, "action": action},
        "flags": {"fixed_point": true},
    });
    let parsed = InputDoc::from_value(doc.clone()).unwrap();
    let g = parsed.build_group().unwrap();
    assert_eq!(g.order(), 12);
    let pic = parsed.build_pic(&g).unwrap();
    assert!(matches!(parsed.pic, Some(ModuleSpec::Lattice { .. })));
    eprintln!("H1(A4, Pic) = {:?}", brq::cohomology::h1(&g, &pic).unwrap().invariant_factors());
    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
}
