use permcx::exactla::{Field, Matrix, Subspace};
use proptest::prelude::*;

fn fields() -> Vec<Field> {
    [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2)]
        .iter()
        .map(|&(p, e)| Field::standard(p, e).unwrap())
        .collect()
}

fn field_and_elems(n: usize) -> impl Strategy<Value = (Field, Vec<u32>)> {
    (0..fields().len()).prop_flat_map(move |i| {
        let f = fields()[i].clone();
        let q = f.order();
        prop::collection::vec(0..q, n).prop_map(move |v| (f.clone(), v))
    })
}

fn field_and_matrix(max: usize) -> impl Strategy<Value = (Field, Matrix)> {
    (0..fields().len(), 1..=max, 1..=max).prop_flat_map(|(i, r, c)| {
        let f = fields()[i].clone();
        let q = f.order();
        prop::collection::vec(0..q, r * c)
            .prop_map(move |v| (f.clone(), Matrix::from_vector(&f, r, c, v).unwrap()))
    })
}

/// Polynomial product modulo the field's modulus, computed from coefficient
/// vectors without the field's tables.
fn schoolbook_mul(f: &Field, a: u32, b: u32) -> u32 {
    let p = f.p();
    let (ca, cb) = (f.coefficients(a), f.coefficients(b));
    let modulus = &f.spec().modulus;
    let e = f.e() as usize;
    let mut prod = vec![0u32; 2 * e];
    for (i, &x) in ca.iter().enumerate() {
        for (j, &y) in cb.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (e..prod.len()).rev() {
        let c = prod[k];
        if c != 0 {
            for (i, &m) in modulus.iter().enumerate() {
                prod[k - e + i] = (prod[k - e + i] + p * p - c * m % p) % p;
            }
        }
    }
    f.from_coefficients(&prod[..e]).unwrap()
}

proptest! {
    #[test]
    fn field_axioms((f, v) in field_and_elems(3)) {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        prop_assert_eq!(f.pow(a, f.order() as u64), a);
    }

    #[test]
    fn multiplication_matches_polynomial_arithmetic((f, v) in field_and_elems(2)) {
        prop_assert_eq!(f.mul(v[0], v[1]), schoolbook_mul(&f, v[0], v[1]));
    }

    #[test]
    fn rank_nullity((_f, m) in field_and_matrix(6)) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.rows(), m.cols());
        for row in k.to_rows() {
            prop_assert!(m.apply(&row).unwrap().iter().all(|&x| x == 0));
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn rref_is_idempotent((_f, m) in field_and_matrix(6)) {
        let once = m.rref();
        prop_assert_eq!(once.matrix.rref().matrix, once.matrix.clone());
        prop_assert_eq!(Subspace::from_rows(&once.matrix).dim(), m.rank());
    }

    #[test]
    fn solve_is_correct((f, m) in field_and_matrix(5), seed in any::<u64>()) {
        let x: Vec<u32> = (0..m.cols()).map(|i| ((seed >> (i % 60)) % f.order() as u64) as u32).collect();
        let b = Matrix::column(&f, &m.apply(&x).unwrap());
        let sol = m.solve(&b).unwrap().expect("consistent by construction");
        prop_assert_eq!(m.mul(&sol).unwrap(), b);
    }

    #[test]
    fn inverse_when_full_rank((_f, m) in field_and_matrix(5)) {
        if m.is_square() {
            match m.inverse().unwrap() {
                Some(inv) => prop_assert!(m.mul(&inv).unwrap().is_identity()),
                None => prop_assert!(m.rank() < m.rows()),
            }
        }
    }
}
