//! Named groups and actions used by the verification suites.

use std::collections::BTreeMap;

use crate::io::{GroupSpec, InputDoc, ModuleSpec, ToricSpec};

fn cyc(n: usize) -> Box<GroupSpec> {
    Box::new(GroupSpec::Cyclic { n })
}

/// `Z/m ⋊ Z/k` with the generator acting by `x -> r x`.
pub fn metacyclic(m: usize, k: usize, r: usize) -> GroupSpec {
    GroupSpec::Semidirect {
        normal: cyc(m),
        acting: cyc(k),
        action: vec![vec![r % m]],
    }
}

fn abelian(factors: &[usize]) -> Box<GroupSpec> {
    Box::new(GroupSpec::Abelian {
        factors: factors.to_vec(),
    })
}

fn perm(degree: usize, generators: &[&[usize]]) -> GroupSpec {
    GroupSpec::Permutation {
        degree,
        generators: generators.iter().map(|p| p.to_vec()).collect(),
    }
}

fn bilinear(p: usize, rank: usize, forms: &[&[&[u64]]]) -> GroupSpec {
    GroupSpec::BilinearExtension {
        p,
        rank,
        forms: forms
            .iter()
            .map(|f| f.iter().map(|r| r.to_vec()).collect())
            .collect(),
    }
}

pub fn s4() -> GroupSpec {
    perm(4, &[&[1, 2, 3, 0], &[1, 0, 2, 3]])
}

pub fn a4() -> GroupSpec {
    perm(4, &[&[1, 2, 0, 3], &[1, 0, 3, 2]])
}

/// `A_4` inside `S_6` generated by `(024)(135)`, `(01)(23)`, `(01)(45)`.
pub fn a4_in_s6() -> GroupSpec {
    perm(6, &[&[2, 3, 4, 5, 0, 1], &[1, 0, 3, 2, 4, 5], &[1, 0, 2, 3, 5, 4]])
}

/// Groups of order at most 64 whose Bogomolov multiplier vanishes.
pub fn b0_corpus() -> Vec<(String, GroupSpec)> {
    let mut out: Vec<(String, GroupSpec)> = Vec::new();
    for n in 4..=16 {
        out.push((format!("D{n}"), GroupSpec::Dihedral { n }));
    }
    out.push(("Q8".into(), GroupSpec::Dicyclic { n: 2 }));
    out.push(("Q16".into(), GroupSpec::Dicyclic { n: 4 }));
    out.push(("Dic12".into(), GroupSpec::Dicyclic { n: 3 }));
    out.push(("Dic24".into(), GroupSpec::Dicyclic { n: 6 }));
    for (m, k, r) in [
        (4, 4, 3),
        (8, 2, 3),
        (8, 2, 5),
        (8, 4, 3),
        (8, 4, 5),
        (8, 4, 7),
        (7, 3, 2),
        (9, 3, 4),
        (5, 4, 2),
        (16, 2, 7),
        (16, 2, 9),
        (3, 8, 2),
    ] {
        out.push((format!("Z{m}:Z{k}[{r}]"), metacyclic(m, k, r)));
    }
    // (Z/3)^2 has generators g0 = (1,0) at index 3 and g1 = (0,1) at index 1
    out.push((
        "Z3^2:Z2".into(),
        GroupSpec::Semidirect {
            normal: abelian(&[3, 3]),
            acting: cyc(2),
            action: vec![vec![6, 2]],
        },
    ));
    out.push((
        "Z3^2:Z4".into(),
        GroupSpec::Semidirect {
            normal: abelian(&[3, 3]),
            acting: cyc(4),
            action: vec![vec![1, 6]],
        },
    ));
    out.push((
        "Z4^2:Z2".into(),
        GroupSpec::Semidirect {
            normal: abelian(&[4, 4]),
            acting: cyc(2),
            action: vec![vec![1, 4]],
        },
    ));
    out.push((
        "Z2^3:Z3".into(),
        GroupSpec::Semidirect {
            normal: abelian(&[2, 2, 2]),
            acting: cyc(3),
            action: vec![vec![2, 1, 4]],
        },
    ));
    out.push(("Heis27".into(), bilinear(3, 2, &[&[&[0, 1], &[0, 0]]])));
    out.push((
        "2^1+4_+".into(),
        bilinear(2, 4, &[&[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]]]),
    ));
    out.push((
        "2^1+4_-".into(),
        bilinear(2, 4, &[&[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]]]),
    ));
    out.push(("S4".into(), s4()));
    out.push(("A4".into(), a4()));
    out
}

/// Found by `examples/search_b0_64.rs`, stored in left-regular permutation
/// form.
pub const B0_64_FIXTURE: &str = include_str!("../fixtures/b0_64.json");

/// An order-64 group with `B_0 = Z/2`.
pub fn b0_nonzero_64() -> GroupSpec {
    InputDoc::parse(B0_64_FIXTURE).expect("bundled fixture parses").group
}

/// The nine conjugacy classes of bicyclic finite subgroups of `GL_2(Z)`,
/// as toric documents.
pub fn gl2z_bicyclic() -> Vec<(String, InputDoc)> {
    let m = |rows: [[i64; 2]; 2]| rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>();
    let classes: Vec<(&str, GroupSpec, Vec<Vec<Vec<i64>>>)> = vec![
        ("C1", GroupSpec::Cyclic { n: 1 }, vec![]),
        ("C2 -I", GroupSpec::Cyclic { n: 2 }, vec![m([[-1, 0], [0, -1]])]),
        ("C2 reflection", GroupSpec::Cyclic { n: 2 }, vec![m([[1, 0], [0, -1]])]),
        ("C2 swap", GroupSpec::Cyclic { n: 2 }, vec![m([[0, 1], [1, 0]])]),
        ("C3", GroupSpec::Cyclic { n: 3 }, vec![m([[0, -1], [1, -1]])]),
        ("C4", GroupSpec::Cyclic { n: 4 }, vec![m([[0, -1], [1, 0]])]),
        ("C6", GroupSpec::Cyclic { n: 6 }, vec![m([[1, -1], [1, 0]])]),
        (
            "K4 diagonal",
            GroupSpec::Abelian { factors: vec![2, 2] },
            vec![m([[-1, 0], [0, 1]]), m([[1, 0], [0, -1]])],
        ),
        (
            "K4 swap",
            GroupSpec::Abelian { factors: vec![2, 2] },
            vec![m([[-1, 0], [0, -1]]), m([[0, 1], [1, 0]])],
        ),
    ];
    classes
        .into_iter()
        .map(|(name, group, mats)| {
            let matrices: BTreeMap<String, Vec<Vec<i64>>> = mats
                .into_iter()
                .enumerate()
                .map(|(i, a)| (format!("g{i}"), a))
                .collect();
            let doc = InputDoc {
                group,
                module: None,
                projective: None,
                correlation: None,
                toric: Some(ToricSpec { rank: 2, matrices }),
                pic: None,
                flags: Default::default(),
                r: None,
                flag_type: None,
            };
            (name.to_string(), doc)
        })
        .collect()
}

/// `Pic(M̄_{0,6})`: the 25 boundary divisors modulo Keel's relations, in a
/// free basis of rank 16 (generated by `examples/gen_m06.rs`).
pub const M06_FIXTURE: &str = include_str!("../fixtures/m06_a4.json");

/// `A_4 ⊂ S_6` acting on the rank-16 Picard lattice of `M̄_{0,6}`.
pub fn m06_document() -> InputDoc {
    InputDoc::parse(M06_FIXTURE).expect("bundled fixture parses")
}

/// The Picard module of [`m06_document`].
pub fn m06_pic() -> Option<ModuleSpec> {
    m06_document().pic
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_builds_with_expected_orders() {
        let c = b0_corpus();
        assert!(c.len() >= 30);
        for (name, spec) in &c {
            let g = spec.build().unwrap();
            assert!(g.order() <= 64, "{name}");
            assert!(!g.is_abelian(), "{name}");
        }
        assert_eq!(b0_nonzero_64().build().unwrap().order(), 64);
        assert_eq!(a4_in_s6().build().unwrap().order(), 12);
    }

    #[test]
    fn gl2z_classes_are_faithful() {
        for (name, doc) in gl2z_bicyclic() {
            let g = doc.build_group().unwrap();
            assert!(doc.build_toric(&g).unwrap().is_some(), "{name}");
        }
    }
}
