use super::*;
use crate::groups::{cyclic, direct_product, from_permutation_generators};

fn a4() -> FiniteGroup {
    from_permutation_generators(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap()
}

fn s3() -> FiniteGroup {
    from_permutation_generators(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap()
}

fn d8() -> FiniteGroup {
    from_permutation_generators(4, &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]]).unwrap()
}

fn q8() -> FiniteGroup {
    let i = vec![2, 3, 1, 0, 6, 7, 5, 4];
    let j = vec![4, 5, 7, 6, 1, 0, 2, 3];
    from_permutation_generators(8, &[i, j]).unwrap()
}

fn prod(a: u64, b: u64) -> FiniteGroup {
    direct_product(&cyclic(a as usize).unwrap(), &cyclic(b as usize).unwrap()).unwrap()
}

#[test]
fn schur_multipliers() {
    assert_eq!(h2_qz(&prod(6, 4)).unwrap().invariant_factors(), &[2]);
    assert_eq!(h2_qz(&a4()).unwrap().invariant_factors(), &[2]);
    assert_eq!(h2_qz(&prod(2, 2)).unwrap().invariant_factors(), &[2]);
    assert_eq!(h2_qz(&d8()).unwrap().invariant_factors(), &[2]);
    assert!(h2_qz(&q8()).unwrap().invariant_factors().is_empty());
    assert!(h2_qz(&s3()).unwrap().invariant_factors().is_empty());
    assert!(h2_qz(&cyclic(12).unwrap()).unwrap().invariant_factors().is_empty());
    assert!(h2_qz(&cyclic(1).unwrap()).unwrap().invariant_factors().is_empty());
}

#[test]
fn abelian_characters() {
    let g = s3();
    assert_eq!(h1(&g, &GModule::trivial_qz(&g)).unwrap().invariant_factors(), &[2]);
    let g = prod(2, 6);
    assert_eq!(h1(&g, &GModule::trivial_qz(&g)).unwrap().invariant_factors(), &[2, 6]);
}

#[test]
fn sign_lattice() {
    let g = cyclic(2).unwrap();
    let minus = GModule::lattice(&g, 1, &[(1, vec![vec![-1]])]).unwrap();
    let plus = GModule::trivial_lattice(&g, 1).unwrap();
    assert_eq!(h1(&g, &minus).unwrap().invariant_factors(), &[2]);
    assert!(h1(&g, &plus).unwrap().invariant_factors().is_empty());
    assert!(h2(&g, &minus).unwrap().invariant_factors().is_empty());
    assert_eq!(h2(&g, &plus).unwrap().invariant_factors(), &[2]);
}

#[test]
fn finite_coefficients() {
    let g = prod(2, 2);
    let m = GModule::trivial_finite(&g, &[2]).unwrap();
    assert_eq!(h2(&g, &m).unwrap().invariant_factors(), &[2, 2, 2]);
    assert_eq!(h1(&g, &m).unwrap().invariant_factors(), &[2, 2]);
    let z4 = cyclic(4).unwrap();
    let m = GModule::trivial_finite(&z4, &[2, 4]).unwrap();
    assert_eq!(h2(&z4, &m).unwrap().invariant_factors(), &[2, 4]);
}

#[test]
fn representatives_round_trip() {
    for g in [a4(), prod(2, 4), d8()] {
        let h = h2_qz(&g).unwrap();
        for (i, r) in h.representatives().iter().enumerate() {
            r.check_cocycle(&g, &GModule::trivial_qz(&g)).unwrap();
            let want: Vec<u64> = (0..h.representatives().len()).map(|j| u64::from(i == j)).collect();
            assert_eq!(h.reduce(r).unwrap(), want);
        }
    }
    let g = cyclic(2).unwrap();
    let z = GModule::trivial_lattice(&g, 1).unwrap();
    let h = h2(&g, &z).unwrap();
    let r = &h.representatives()[0];
    r.check_cocycle(&g, &z).unwrap();
    assert_eq!(h.reduce(r).unwrap(), vec![1]);
}

#[test]
fn bockstein_classes_vanish() {
    let g = prod(2, 4);
    let h = h2_qz(&g).unwrap();
    let n = g.order() as u64;
    // characters: element index a*4 + b -> b * (n/4)
    let chi: Vec<u64> = (0..8).map(|x| (x as u64 % 4) * (n / 4)).collect();
    let c = connecting_bockstein(&g, &chi, n).unwrap();
    assert!(h.reduce(&c).unwrap().iter().all(|&a| a == 0));
}

#[test]
fn oracle_agrees_on_bicyclic_groups() {
    for (a, b) in [(2u64, 2u64), (2, 4), (3, 3), (1, 6), (4, 4)] {
        let g = prod(a, b);
        let ea = if a == 1 { 0 } else { g.generators()[0] };
        let eb = *g.generators().last().unwrap();
        let (ea, eb) = if a == 1 { (eb, 0) } else { (ea, eb) };
        let qz = GModule::trivial_qz(&g);
        let small = small_complex_h(&g, ea, eb, &qz, 2).unwrap();
        assert_eq!(small.invariant_factors(), h2_qz(&g).unwrap().invariant_factors(), "{a}x{b}");
        let z2 = GModule::trivial_finite(&g, &[2]).unwrap();
        for d in [1, 2] {
            let small = small_complex_h(&g, ea, eb, &z2, d).unwrap();
            let bar = if d == 1 { h1(&g, &z2) } else { h2(&g, &z2) }.unwrap();
            assert_eq!(small.invariant_factors(), bar.invariant_factors(), "{a}x{b} deg {d}");
        }
    }
}

#[test]
fn oracle_agrees_with_twisted_lattice() {
    let g = prod(2, 2);
    let (a, b) = (g.generators()[0], g.generators()[1]);
    let m = GModule::lattice(
        &g,
        2,
        &[(a, vec![vec![-1, 0], vec![0, 1]]), (b, vec![vec![0, 1], vec![1, 0]])],
    );
    // these two matrices do not commute, so this is not a module
    assert!(m.is_err());
    let m = GModule::lattice(
        &g,
        2,
        &[(a, vec![vec![-1, 0], vec![0, -1]]), (b, vec![vec![0, 1], vec![1, 0]])],
    )
    .unwrap();
    for d in [1, 2] {
        let small = small_complex_h(&g, a, b, &m, d).unwrap();
        let bar = if d == 1 { h1(&g, &m) } else { h2(&g, &m) }.unwrap();
        assert_eq!(small.invariant_factors(), bar.invariant_factors(), "degree {d}");
    }
}

#[test]
fn corestriction_after_restriction_is_multiplication_by_index() {
    let g = a4();
    let h = h2_qz(&g).unwrap();
    let n = h.modulus().unwrap();
    let k4 = Subgroup::new(&g, &g.closure(&[g.generators()[1], g.conjugate(g.generators()[0], g.generators()[1])])).unwrap();
    assert_eq!(k4.order(), 4);
    let (kg, _) = k4.to_group(&g).unwrap();
    let hk = h2_qz_at(&kg, n).unwrap();
    let c = &h.representatives()[0];
    let res = restrict(c, &g, &k4).unwrap();
    // restriction to K4 is injective
    assert_eq!(hk.reduce(&res).unwrap(), vec![1]);
    let back = corestrict(&res, &g, &k4).unwrap();
    assert_eq!(h.reduce(&back).unwrap(), vec![1]); // index 3 = 1 mod 2
}

#[test]
fn finer_denominators_are_converted() {
    let g = prod(2, 2);
    let h = h2_qz(&g).unwrap();
    let fine = h.representatives()[0].with_modulus(12).unwrap();
    assert_eq!(h.reduce_qz(&g, &fine).unwrap(), vec![1]);
    // add the coboundary of b(x) = x/12
    let mut cob = fine.clone();
    for a in 0..4 {
        for b in 0..4 {
            let v = a as i64 + b as i64 - g.mul(a, b) as i64;
            cob.values[a * 4 + b] = (cob.values[a * 4 + b] + v).rem_euclid(12);
        }
    }
    assert_eq!(h.reduce_qz(&g, &cob).unwrap(), vec![1]);
    let c9 = Cochain::zero(2, 4, 1, Some(9));
    assert_eq!(h.reduce_qz(&g, &c9).unwrap(), vec![0]);
}

#[test]
fn restriction_is_functorial() {
    let g = d8();
    let h = h2_qz(&g).unwrap();
    let n = h.modulus().unwrap();
    let c = &h.representatives()[0];
    for a in crate::groups::bicyclic_subgroups(&g, false) {
        let (ag, _) = a.to_group(&g).unwrap();
        let ha = h2_qz_at(&ag, n).unwrap();
        let ca = restrict(c, &g, &a).unwrap();
        let via_a = ha.reduce(&ca).unwrap();
        assert_eq!(via_a.len(), ha.invariant_factors().len());
        for b in crate::groups::bicyclic_subgroups(&ag, false) {
            let (bg, _) = b.to_group(&ag).unwrap();
            let hb = h2_qz_at(&bg, n).unwrap();
            let direct_elems: Vec<usize> = b.elements().iter().map(|&x| a.elements()[x]).collect();
            let bsub = Subgroup::new(&g, &direct_elems).unwrap();
            let direct = hb.reduce(&restrict(c, &g, &bsub).unwrap()).unwrap();
            let two_step = hb.reduce(&restrict(&ca, &ag, &b).unwrap()).unwrap();
            assert_eq!(direct, two_step);
        }
    }
}
