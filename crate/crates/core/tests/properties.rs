use brq::brauer::{br_nr_projective, class_of, BrauerOptions};
use brq::cohomology::{h2, h2_qz, GModule};
use brq::cyclotomic::CycloNumber;
use brq::groups::from_permutation_generators;
use brq::io::GroupSpec;
use brq::linalg::abelian::{canonical_factors, AbelianStructure};
use brq::linalg::int::{smith_normal_form, IntMatrix};
use brq::linalg::modular::{howell_rows, reduce_by_howell};
use brq::verify::{clock_shift, expected_abelian_h2};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..10, c), r))
}

fn cyclo(m: u64) -> impl Strategy<Value = CycloNumber> {
    prop::collection::vec((-5i64..6, 1i64..4), m as usize).prop_map(move |pairs| {
        CycloNumber::from_fraction_pairs(m, &pairs).expect("valid pairs")
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn smith_form_is_canonical(rows in small_matrix()) {
        let m = IntMatrix::from_i64(&rows).unwrap();
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d.clone());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(diag.iter().all(|x| *x > BigInt::zero()));
        // the transpose has the same invariants
        let t = smith_normal_form(&m.transpose());
        prop_assert_eq!(t.diagonal(), diag);
    }

    #[test]
    fn canonical_factors_preserve_the_group(orders in prop::collection::vec(1u64..30, 0..6)) {
        let f = canonical_factors(&orders);
        prop_assert_eq!(f.iter().product::<u64>(), orders.iter().product::<u64>());
        prop_assert!(f.iter().all(|&d| d > 1));
        for w in f.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        prop_assert_eq!(canonical_factors(&f), f.clone());
        let s = AbelianStructure::from_cyclic_orders(&orders).unwrap();
        prop_assert_eq!(s.invariant_factors(), f.as_slice());
    }

    #[test]
    fn howell_span_contains_its_generators(
        n in 2u64..40,
        rows in prop::collection::vec(prop::collection::vec(0u64..40, 3), 1..5),
    ) {
        let rows: Vec<Vec<u64>> = rows.into_iter().map(|r| r.into_iter().map(|x| x % n).collect()).collect();
        let basis = howell_rows(rows.clone(), 3, n);
        for r in &rows {
            let (_, rem) = reduce_by_howell(&basis, r, n);
            prop_assert!(rem.iter().all(|&x| x == 0));
        }
        // idempotent
        prop_assert_eq!(howell_rows(basis.clone(), 3, n), basis);
    }

    #[test]
    fn cyclotomic_field_axioms(
        (m, a, b, c) in prop::sample::select(vec![1u64, 3, 4, 5, 8, 12])
            .prop_flat_map(|m| (Just(m), cyclo(m), cyclo(m), cyclo(m)))
    ) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
        }
        prop_assert!(CycloNumber::zeta(m, 1).pow(m as i64).unwrap().is_one());
    }

    #[test]
    fn cyclotomic_products_with_random_values(a in cyclo(5), b in cyclo(5)) {
        let p = a.mul(&b).unwrap();
        if !b.is_zero() {
            prop_assert_eq!(p.div(&b).unwrap(), a.clone());
        }
        prop_assert_eq!(a.sub(&a).unwrap(), CycloNumber::zero(5));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn bicyclic_h2_is_the_gcd(a in 1usize..10, b in 1usize..10) {
        let g = GroupSpec::Abelian { factors: vec![a, b] }.build().unwrap();
        let got = h2_qz(&g).unwrap().invariant_factors().to_vec();
        prop_assert_eq!(got, expected_abelian_h2(&[a as u64, b as u64]));
    }

    #[test]
    fn closure_order_ignores_generator_order(p in permutation(5), q in permutation(5)) {
        let g1 = from_permutation_generators(5, &[p.clone(), q.clone()]).unwrap();
        let g2 = from_permutation_generators(5, &[q, p]).unwrap();
        prop_assert_eq!(g1.order(), g2.order());
        prop_assert_eq!(g1.is_abelian(), g2.is_abelian());
        prop_assert_eq!(g1.exponent(), g2.exponent());
    }

    #[test]
    fn h2_representatives_reduce_to_unit_vectors(a in 2usize..7, b in 1usize..4, m in 2u64..7) {
        let g = GroupSpec::Abelian { factors: vec![a, b] }.build().unwrap();
        let module = GModule::trivial_finite(&g, &[m]).unwrap();
        let h = h2(&g, &module).unwrap();
        for (i, rep) in h.representatives().iter().enumerate() {
            rep.check_cocycle(&g, &module).unwrap();
            let coords = h.reduce(rep).unwrap();
            let unit: Vec<u64> = (0..coords.len()).map(|j| u64::from(i == j)).collect();
            prop_assert_eq!(coords, unit);
        }
    }

    #[test]
    fn tensor_powers_add_gamma(n in 2usize..6, k in 1usize..4) {
        let (g, p) = clock_shift(n, 1).unwrap();
        let h = h2_qz(&g).unwrap();
        let gamma = class_of(&h, &g, p.cocycle()).unwrap();
        let mut acc = p.clone();
        for _ in 1..k {
            acc = acc.tensor(&p, &g).unwrap();
        }
        let got = class_of(&h, &g, acc.cocycle()).unwrap();
        let want: Vec<i64> = gamma
            .iter()
            .zip(h.invariant_factors())
            .map(|(&x, &d)| (x * k as i64).rem_euclid(d as i64))
            .collect();
        prop_assert_eq!(got, want);
        // γ generates H^2 = Z/n, so the stack group is H^2 / <kγ> = Z/gcd(n, k)
        let rep = br_nr_projective(&g, &acc, BrauerOptions::default()).unwrap();
        let q = n.gcd(&k) as u64;
        let expected: Vec<u64> = if q > 1 { vec![q] } else { vec![] };
        prop_assert_eq!(rep.stack_factors(), expected.as_slice());
        prop_assert!(rep.unramified_factors().is_empty());
    }
}
