use super::*;
use crate::cyclotomic::CycloMatrix;
use crate::groups::{cyclic, direct_product, from_permutation_generators};

fn k4() -> FiniteGroup {
    direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap()
}

fn perm(n: usize, gens: &[Vec<usize>]) -> FiniteGroup {
    from_permutation_generators(n, gens).unwrap()
}

fn int(rows: &[Vec<i64>]) -> CycloMatrix {
    CycloMatrix::from_int_rows(1, rows).unwrap()
}

fn pauli(g: &FiniteGroup) -> ProjectiveAction {
    let (a, b) = (g.generators()[0], g.generators()[1]);
    gamma_from_projective_action(
        g,
        2,
        &[(a, int(&[vec![0, 1], vec![1, 0]])), (b, int(&[vec![1, 0], vec![0, -1]]))],
    )
    .unwrap()
}

#[test]
fn small_bogomolov_multipliers_vanish() {
    let groups = [
        perm(4, &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]]),
        perm(8, &[vec![2, 3, 1, 0, 6, 7, 5, 4], vec![4, 5, 7, 6, 1, 0, 2, 3]]),
        perm(4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]]),
        perm(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]),
    ];
    for g in &groups {
        let r = bogomolov_multiplier(g).unwrap();
        assert!(r.unramified_factors().is_empty(), "order {}", g.order());
        assert!(recheck_bogomolov(g, &r).unwrap());
    }
}

#[test]
fn pauli_action_kills_everything() {
    let g = k4();
    let act = pauli(&g);
    let r = br_nr_projective(&g, &act, BrauerOptions::default()).unwrap();
    assert_eq!(r.am_generators, vec![vec![1]]);
    assert!(r.stack_factors().is_empty());
    assert!(r.unramified_factors().is_empty());
}

#[test]
fn tensor_adds_gamma_and_linear_is_zero() {
    let g = k4();
    let p = pauli(&g);
    let h = h2_qz(&g).unwrap();
    let pp = p.tensor(&p, &g).unwrap();
    assert_eq!(h.reduce_qz(&g, pp.cocycle()).unwrap(), vec![0]);
    let lin = gamma_from_projective_action(
        &g,
        2,
        &[(g.generators()[0], int(&[vec![-1, 0], vec![0, 1]])), (g.generators()[1], int(&[vec![1, 0], vec![0, -1]]))],
    )
    .unwrap();
    assert!(lin.cocycle().values.iter().all(|&v| v == 0));
}

#[test]
fn grassmannian_of_pauli_lift() {
    let g = k4();
    let p = pauli(&g);
    let id = gamma_from_projective_action(
        &g,
        2,
        &[(g.generators()[0], CycloMatrix::identity(1, 2)), (g.generators()[1], CycloMatrix::identity(1, 2))],
    )
    .unwrap();
    let lift = p.tensor(&id, &g).unwrap();
    let h = h2_qz(&g).unwrap();
    assert_eq!(h.reduce_qz(&g, lift.cocycle()).unwrap(), vec![1]);
    let beta = plucker_beta(&g, &Action::Projective(lift.clone()), 2).unwrap();
    assert_eq!(h.reduce_qz(&g, &beta).unwrap(), vec![0]);
    let r = br_nr_grassmannian(&g, &Action::Projective(lift), 2, BrauerOptions::default()).unwrap();
    assert_eq!(r.stack_factors(), &[2]);
    assert!(r.unramified_factors().is_empty());
}

#[test]
fn correlation_beta_is_two_torsion() {
    // K4 = <a, tau>, a a collineation, tau the correlation by the identity form
    let g = k4();
    let (a, tau) = (g.generators()[0], g.generators()[1]);
    let psi = int(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, -1, 0], vec![0, 0, 0, -1]]);
    let c = CorrelationAction::new(&g, 4, &[(a, psi)], CycloMatrix::identity(1, 4), tau).unwrap();
    assert!(c.commutes_with_collineations());
    let act = Action::Correlation(c);
    let beta = plucker_beta(&g, &act, 2).unwrap();
    let h = h2_qz(&g).unwrap();
    let coords = h.reduce_qz(&g, &beta).unwrap();
    assert!(coords.iter().zip(h.invariant_factors()).all(|(&x, &d)| 2 * x % d == 0));
    assert!(matches!(plucker_beta(&g, &act, 1), Err(Error::Dimension(_))));
    let r = br_nr_grassmannian(&g, &act, 2, BrauerOptions::default()).unwrap();
    assert!(r.unramified_factors().is_empty());
}

#[test]
fn stack_quotient_examples() {
    let g = k4();
    let h = h2_qz(&g).unwrap();
    assert_eq!(br_stack_quotient(&h, &[]).unwrap().invariant_factors(), &[2]);
    assert!(br_stack_quotient(&h, &[vec![1]]).unwrap().is_trivial());
    let g = direct_product(&k4(), &cyclic(2).unwrap()).unwrap();
    let h = h2_qz(&g).unwrap();
    assert_eq!(h.invariant_factors(), &[2, 2, 2]);
    assert_eq!(br_stack_quotient(&h, &[vec![1, 0, 0]]).unwrap().invariant_factors(), &[2, 2]);
}

#[test]
fn fixed_point_stack() {
    let g = k4();
    let z = GModule::trivial_lattice(&g, 1).unwrap();
    assert_eq!(br_stack_fixed_point(&g, &z, true).unwrap().invariant_factors(), &[2]);
    assert!(matches!(br_stack_fixed_point(&g, &z, false), Err(Error::Unsupported(_))));
    let t = cyclic(1).unwrap();
    let z = GModule::trivial_lattice(&t, 1).unwrap();
    assert!(br_stack_fixed_point(&t, &z, true).unwrap().is_trivial());
}

#[test]
fn toric_bicyclic_and_s3() {
    let g = k4();
    let (a, b) = (g.generators()[0], g.generators()[1]);
    let m = GModule::lattice(&g, 2, &[(a, vec![vec![-1, 0], vec![0, 1]]), (b, vec![vec![1, 0], vec![0, -1]])]).unwrap();
    let r = br_nr_toric(&g, &ToricAction::new(&g, m).unwrap(), BrauerOptions::default()).unwrap();
    assert!(r.unramified_factors().is_empty());
    // S3 on the root lattice of A2
    let s3 = perm(3, &[vec![1, 0, 2], vec![1, 2, 0]]);
    let (t, c) = (s3.generators()[0], s3.generators()[1]);
    let m = GModule::lattice(&s3, 2, &[(t, vec![vec![0, 1], vec![1, 0]]), (c, vec![vec![0, -1], vec![1, -1]])]).unwrap();
    let r = br_nr_toric(&s3, &ToricAction::new(&s3, m).unwrap(), BrauerOptions::default()).unwrap();
    assert!(r.unramified_factors().is_empty());
    let triv = GModule::trivial_lattice(&g, 1).unwrap();
    assert!(ToricAction::new(&g, triv).is_err());
}

#[test]
fn degenerate_formulas_agree() {
    let g = perm(4, &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]]);
    let lin = br_nr_linear(&g, BrauerOptions::default()).unwrap();
    let idm = gamma_from_projective_action(&g, 1, &[(g.generators()[0], CycloMatrix::identity(1, 1)), (g.generators()[1], CycloMatrix::identity(1, 1))]).unwrap();
    let proj = br_nr_projective(&g, &idm, BrauerOptions::default()).unwrap();
    assert_eq!(lin.unramified_group.witnesses(), proj.unramified_group.witnesses());
    let k = k4();
    let p = pauli(&k);
    let a = Action::Projective(p.clone());
    let pr = br_nr_projective(&k, &p, BrauerOptions::default()).unwrap();
    let gr = br_nr_grassmannian(&k, &a, 1, BrauerOptions::default()).unwrap();
    let fl = br_nr_flag(&k, &a, &[1], BrauerOptions::default()).unwrap();
    assert_eq!(pr.to_json(false)["stack_group"], gr.to_json(false)["stack_group"]);
    assert_eq!(gr.to_json(false)["unramified_group"], fl.to_json(false)["unramified_group"]);
}

#[test]
fn report_text_mentions_groups() {
    let g = k4();
    let r = bogomolov_multiplier(&g).unwrap();
    let t = r.to_text();
    assert!(t.contains("unramified group: []"));
    assert_eq!(r.to_json(true)["stack_group"]["invariant_factors"], serde_json::json!([2]));
}
