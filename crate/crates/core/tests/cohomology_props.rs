use permcx::cohomology::{
    cohomology_dims, e1_dimension_table, find_avoidance_pair, minimal_free_resolution,
    normalize_form, random_avoidance_instance, restrict_class, restrict_form, trivial_resolution,
    verify_avoidance_pair, AvoidanceCheck, AvoidanceWitness, LinearFormProduct, PolyClass,
};
use permcx::complexes::random_adds_complex;
use permcx::exactla::Field;
use permcx::gmod::GModule;
use permcx::groups::{all_subgroups, ElemAbGroup, Subgroup, SubgroupCollection};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim H^j(C_p^r, k)`: the Poincaré series is `1 / (1 - t)^r` for every `p`.
fn betti(r: usize, j: usize) -> usize {
    if r == 0 {
        usize::from(j == 0)
    } else {
        binomial((j + r - 1) as u64, (r - 1) as u64) as usize
    }
}

#[test]
fn betti_numbers_of_the_trivial_module() {
    for (p, r, top) in [
        (2u32, 1usize, 6usize),
        (3, 1, 6),
        (2, 2, 6),
        (3, 2, 5),
        (5, 2, 3),
        (2, 3, 5),
    ] {
        let g = ElemAbGroup::new(p, r).unwrap();
        let f = Field::prime(p).unwrap();
        let res = minimal_free_resolution(&GModule::trivial(&g, &f, 1).unwrap(), top).unwrap();
        assert!(res.is_complex().unwrap());
        assert!(res.is_minimal());
        let expected: Vec<usize> = (0..res.ranks.len()).map(|j| betti(r, j)).collect();
        assert_eq!(res.ranks, expected, "C_{p}^{r}");
    }
}

#[test]
fn cohomology_of_permutation_modules_is_cohomology_of_the_stabilizer() {
    for (p, r) in [(2u32, 3usize), (3, 2)] {
        let g = ElemAbGroup::new(p, r).unwrap();
        let f = Field::prime(p).unwrap();
        let res = trivial_resolution(&g, &f, 4).unwrap();
        for e in all_subgroups(&g, None).unwrap().iter() {
            let dims = res
                .cohomology_dims(&GModule::permutation(e, &f).unwrap())
                .unwrap();
            let expected: Vec<usize> = (0..dims.len()).map(|j| betti(e.rank(), j)).collect();
            assert_eq!(dims, expected);
        }
    }
}

#[test]
fn cohomology_is_additive() {
    let g = ElemAbGroup::new(3, 2).unwrap();
    let f = Field::prime(3).unwrap();
    let line = Subgroup::from_generators(&g, &[vec![1, 2]]).unwrap();
    let a = GModule::permutation(&line, &f).unwrap();
    let b = GModule::trivial(&g, &f, 2).unwrap();
    let sum = GModule::direct_sum(&[a.clone(), b.clone()]).unwrap();
    let (da, db, ds) = (
        cohomology_dims(&a, 3).unwrap(),
        cohomology_dims(&b, 3).unwrap(),
        cohomology_dims(&sum, 3).unwrap(),
    );
    for j in 0..ds.len() {
        assert_eq!(ds[j], da[j] + db[j]);
    }
    // free modules have no higher cohomology
    assert_eq!(
        cohomology_dims(&GModule::free(&g, &f, 2).unwrap(), 3).unwrap(),
        vec![2, 0, 0, 0]
    );
}

#[test]
fn alternating_sums_vanish_on_contractible_complexes() {
    for (p, seed) in [(2u32, 11u64), (3, 12), (2, 13)] {
        let g = ElemAbGroup::new(p, 2).unwrap();
        let f = Field::prime(p).unwrap();
        let h = all_subgroups(&g, None).unwrap();
        let mult: Vec<Vec<usize>> = (0..2)
            .map(|i| (0..h.len()).map(|j| (i + j + seed as usize) % 2).collect())
            .collect();
        let c = random_adds_complex(&h, &f, 2, &mult, seed).unwrap();
        let table = e1_dimension_table(&c, 3).unwrap();
        for row in &table {
            let alt: i64 = row
                .iter()
                .enumerate()
                .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
                .sum();
            assert_eq!(alt, 0, "{table:?}");
        }
    }
}

#[test]
fn split_example_has_expected_e1_page() {
    // 0 -> kG -> kG + k -> k -> 0
    let g = ElemAbGroup::new(2, 2).unwrap();
    let f = Field::prime(2).unwrap();
    let n = g.order() as usize;
    let kg = GModule::free(&g, &f, 1).unwrap();
    let k = GModule::trivial(&g, &f, 1).unwrap();
    let middle = GModule::direct_sum(&[kg.clone(), k.clone()]).unwrap();
    let d0 =
        permcx::exactla::Matrix::from_fn(
            &f,
            n + 1,
            n,
            |i, j| if i == n { 1 } else { u32::from(i == j) },
        );
    let d1 = permcx::exactla::Matrix::from_fn(&f, 1, n + 1, |_, _| 1);
    let c =
        permcx::complexes::BoundedComplex::new(&g, &f, vec![kg, middle, k], vec![d0, d1]).unwrap();
    let table = e1_dimension_table(&c, 2).unwrap();
    assert_eq!(table, vec![vec![1, 2, 1], vec![0, 2, 2], vec![0, 3, 3]]);
}

fn f2_group3() -> (ElemAbGroup, Field) {
    (ElemAbGroup::new(2, 3).unwrap(), Field::prime(2).unwrap())
}

fn form_strategy(p: u32, r: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..p, r)
}

proptest! {
    #[test]
    fn restriction_is_a_ring_homomorphism(
        a in form_strategy(2, 3), b in form_strategy(2, 3), c in form_strategy(2, 3),
        gens in prop::collection::vec(form_strategy(2, 3), 0..=3),
    ) {
        let (g, f) = f2_group3();
        let e = Subgroup::from_generators(&g, &gens).unwrap();
        let la = PolyClass::linear(&g, &f, &a).unwrap();
        let lb = PolyClass::linear(&g, &f, &b).unwrap();
        let lc = PolyClass::linear(&g, &f, &c).unwrap();
        let x = la.mul(&lb).unwrap();
        let y = lc.mul(&lc).unwrap();
        let res = |z: &PolyClass| restrict_class(z, &e).unwrap();
        prop_assert_eq!(res(&x.add(&y).unwrap()), res(&x).add(&res(&y)).unwrap());
        prop_assert_eq!(res(&x.mul(&y).unwrap()), res(&x).mul(&res(&y)).unwrap());
        prop_assert_eq!(res(&la), PolyClass::linear(res(&la).group(), &f, &restrict_form(&f, &a, &e)).unwrap());
    }

    #[test]
    fn normalized_forms_are_monic(a in form_strategy(5, 3), s in 1u32..5) {
        let f = Field::prime(5).unwrap();
        let scaled: Vec<u32> = a.iter().map(|&x| f.mul(x, s)).collect();
        prop_assert_eq!(normalize_form(&f, &a), normalize_form(&f, &scaled));
        if let Some(n) = normalize_form(&f, &a) {
            prop_assert_eq!(n.iter().find(|&&x| x != 0).copied(), Some(1));
        }
    }

    #[test]
    fn found_pairs_vanish_below_and_stay_coprime_above(seed in 0u64..400, odd in any::<bool>()) {
        let p = if odd { 3 } else { 2 };
        let g = ElemAbGroup::new(p, 3).unwrap();
        let f = Field::prime(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (upper, lower) = random_avoidance_instance(&g, &mut rng).unwrap();
        let pair = find_avoidance_pair(&upper, &lower, &f).unwrap();
        prop_assert!(verify_avoidance_pair(&pair.u, &pair.v, &upper, &lower).unwrap().is_ok());

        let field = pair.u.field.clone();
        for e in lower.iter().filter(|e| !e.is_trivial()) {
            prop_assert!(restrict_class(&pair.u.expand(&g).unwrap(), e).unwrap().is_zero());
            prop_assert!(restrict_class(&pair.v.expand(&g).unwrap(), e).unwrap().is_zero());
        }
        for e in upper.iter() {
            let us = pair.u.restricted_factors(e);
            let vs = pair.v.restricted_factors(e);
            let norm = |x: &Vec<u32>| normalize_form(&field, x);
            prop_assert!(us.iter().chain(&vs).all(|x| norm(x).is_some()));
            prop_assert!(us.iter().all(|x| vs.iter().all(|y| norm(x) != norm(y))));
        }
    }
}

#[test]
fn verification_names_the_failing_subgroup() {
    let (g, f) = f2_group3();
    let plane = Subgroup::from_generators(&g, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
    let upper = SubgroupCollection::new(&g, vec![plane.clone()]).unwrap();
    let lower = SubgroupCollection::new(
        &g,
        vec![Subgroup::from_generators(&g, &[vec![0, 0, 1]]).unwrap()],
    )
    .unwrap();
    let x1 = LinearFormProduct::new(&f, vec![vec![1, 0, 0]]).unwrap();
    let x3 = LinearFormProduct::new(&f, vec![vec![0, 0, 1]]).unwrap();
    let empty = SubgroupCollection::new(&g, vec![]).unwrap();
    match verify_avoidance_pair(&x3, &x1, &upper, &empty).unwrap() {
        AvoidanceCheck::Failed {
            witness: AvoidanceWitness::ZeroRestriction { subgroup, .. },
            ..
        } => {
            assert_eq!(subgroup, plane)
        }
        other => panic!("unexpected {other:?}"),
    }
    match verify_avoidance_pair(&x3, &x1, &upper, &lower).unwrap() {
        AvoidanceCheck::Failed {
            witness: AvoidanceWitness::NonVanishing { subgroup, .. },
            ..
        } => {
            assert_eq!(&subgroup, lower.iter().next().unwrap())
        }
        other => panic!("unexpected {other:?}"),
    }
    match verify_avoidance_pair(&x1, &x1, &upper, &lower).unwrap() {
        AvoidanceCheck::Failed { witness, .. } => {
            assert!(!matches!(witness, AvoidanceWitness::ZeroRestriction { .. }))
        }
        AvoidanceCheck::Ok => panic!("x1, x1 cannot be coprime"),
    }
}

#[test]
fn precondition_failures_are_errors() {
    let (g, f) = f2_group3();
    let plane = Subgroup::from_generators(&g, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
    let inside = Subgroup::from_generators(&g, &[vec![1, 0, 0]]).unwrap();
    let upper = SubgroupCollection::new(&g, vec![plane]).unwrap();
    let lower = SubgroupCollection::new(&g, vec![inside]).unwrap();
    assert!(find_avoidance_pair(&upper, &lower, &f).is_err());
    let f3 = Field::prime(3).unwrap();
    let empty = SubgroupCollection::new(&g, vec![]).unwrap();
    assert!(find_avoidance_pair(&upper, &empty, &f3).is_err());
}
