use permcx::exactla::{Field, Matrix};
use permcx::gmod::{hom_space, hom_space_direct, permutation_relabeling, GModule};
use permcx::groups::{all_subgroups, check_chain_condition, ElemAbGroup, Subgroup};
use proptest::prelude::*;

/// Number of `k`-dimensional subspaces of `F_p^n`.
fn gaussian_binomial(p: u64, n: u32, k: u32) -> u64 {
    let num: u64 = (0..k).map(|i| p.pow(n - i) - 1).product();
    let den: u64 = (0..k).map(|i| p.pow(i + 1) - 1).product();
    num / den
}

#[test]
fn subgroup_counts_match_gaussian_binomials() {
    for (p, r) in [(2u32, 2usize), (2, 3), (3, 2), (2, 4), (3, 3)] {
        let g = ElemAbGroup::new(p, r).unwrap();
        let all = all_subgroups(&g, None).unwrap();
        let expected: u64 = (0..=r as u32)
            .map(|k| gaussian_binomial(p as u64, r as u32, k))
            .sum();
        assert_eq!(all.len() as u64, expected, "C_{p}^{r}");
    }
}

#[test]
fn index_p_pair_counts() {
    // each rank-(k+1) subspace contains [k+1 choose k]_p subspaces of rank k
    for (p, r) in [(2u32, 3u32), (3, 2)] {
        let g = ElemAbGroup::new(p, r as usize).unwrap();
        let pairs = check_chain_condition(&all_subgroups(&g, None).unwrap())
            .violations
            .len() as u64;
        let expected: u64 = (0..r)
            .map(|k| gaussian_binomial(p as u64, r, k + 1) * gaussian_binomial(p as u64, k + 1, k))
            .sum();
        assert_eq!(pairs, expected);
    }
}

fn group_and_vectors(n: usize) -> impl Strategy<Value = (ElemAbGroup, Vec<Vec<u32>>)> {
    prop_oneof![
        Just((2u32, 3usize)),
        Just((3, 2)),
        Just((2, 4)),
        Just((5, 2))
    ]
    .prop_flat_map(move |(p, r)| {
        prop::collection::vec(prop::collection::vec(0..p, r), 0..=n)
            .prop_map(move |vs| (ElemAbGroup::new(p, r).unwrap(), vs))
    })
}

fn split(g: &ElemAbGroup, vs: &[Vec<u32>]) -> (Subgroup, Subgroup) {
    let mid = vs.len() / 2;
    (
        Subgroup::from_generators(g, &vs[..mid]).unwrap(),
        Subgroup::from_generators(g, &vs[mid..]).unwrap(),
    )
}

proptest! {
    #[test]
    fn lattice_dimension_formula((g, vs) in group_and_vectors(4)) {
        let (a, b) = split(&g, &vs);
        let sum = a.sum(&b).unwrap();
        let meet = a.intersection(&b).unwrap();
        prop_assert_eq!(sum.rank() + meet.rank(), a.rank() + b.rank());
        prop_assert!(sum.contains(&a).unwrap() && sum.contains(&b).unwrap());
        prop_assert!(a.contains(&meet).unwrap() && b.contains(&meet).unwrap());
    }

    #[test]
    fn coset_representatives_partition_the_group((g, vs) in group_and_vectors(3)) {
        let e = Subgroup::from_generators(&g, &vs).unwrap();
        let reps = e.coset_reps();
        prop_assert_eq!(reps.len() as u64, e.index());
        let mut hits = vec![0u64; reps.len()];
        for x in g.elements() {
            hits[e.coset_index(&x)] += 1;
        }
        prop_assert!(hits.iter().all(|&h| h == e.order()));
        for (i, r) in reps.iter().enumerate() {
            prop_assert_eq!(e.coset_index(r), i);
        }
    }

    #[test]
    fn permutation_module_hom_dimension_counts_double_cosets((g, vs) in group_and_vectors(3)) {
        if g.order() <= 16 {
            let f = Field::prime(g.p()).unwrap();
            let (a, b) = split(&g, &vs);
            let ma = GModule::permutation(&a, &f).unwrap();
            let mb = GModule::permutation(&b, &f).unwrap();
            let double_cosets = g.order() / a.sum(&b).unwrap().order();
            let homs = hom_space(&ma, &mb).unwrap();
            prop_assert_eq!(homs.len() as u64, double_cosets);
            prop_assert_eq!(hom_space_direct(&ma, &mb).unwrap().len() as u64, double_cosets);
        }
    }

    #[test]
    fn induction_of_trivial_module_is_canonical((g, vs) in group_and_vectors(3)) {
        let f = Field::prime(g.p()).unwrap();
        let e = Subgroup::from_generators(&g, &vs).unwrap();
        let sub = ElemAbGroup::new(g.p(), e.rank()).unwrap();
        let induced = GModule::trivial(&sub, &f, 1).unwrap().induce(&g, e.basis()).unwrap();
        let canonical = GModule::permutation(&e, &f).unwrap();
        prop_assert_eq!(induced.action(), canonical.action());
        prop_assert!(permutation_relabeling(&induced, &e).unwrap().is_identity());
    }

    #[test]
    fn restriction_of_free_module_is_free((g, vs) in group_and_vectors(3)) {
        if g.order() <= 81 {
            let f = Field::prime(g.p()).unwrap();
            let h = Subgroup::from_generators(&g, &vs).unwrap();
            let res = GModule::free(&g, &f, 1).unwrap().restrict(&h).unwrap();
            res.validate().unwrap();
            // fixed points of a free module have dimension equal to its rank
            prop_assert_eq!(res.fixed_points().unwrap().rows() as u64, h.index());
        }
    }
}

#[test]
fn inflation_along_coordinate_projection() {
    let g = ElemAbGroup::new(3, 2).unwrap();
    let f = Field::prime(3).unwrap();
    let c3 = ElemAbGroup::new(3, 1).unwrap();
    let q = Matrix::from_rows(&f, &[vec![1], vec![0]]).unwrap();
    let inflated = GModule::free(&c3, &f, 1).unwrap().inflate(&g, &q).unwrap();
    let kernel = Subgroup::from_generators(&g, &[vec![0, 1]]).unwrap();
    assert_eq!(
        inflated.action(),
        GModule::permutation(&kernel, &f).unwrap().action()
    );
    let bad = Matrix::from_rows(&f, &[vec![0], vec![0]]).unwrap();
    assert!(GModule::free(&c3, &f, 1)
        .unwrap()
        .inflate(&g, &bad)
        .is_err());
}
