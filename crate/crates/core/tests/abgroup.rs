mod common;

use common::*;
use flatepi::abgroup::{cokernel_structure, smith_normal_form, AbelianGroupPresentation, Order};
use flatepi::{BigInt, IntMatrix};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn is_unimodular(m: &IntMatrix) -> bool {
    m.determinant().is_ok_and(|d| d.abs().is_one())
}

#[test]
fn invariant_factors_agree_with_minors() {
    let mut r = rng(11);
    for _ in 0..300 {
        let m = random_matrix(&mut r, 4, 9);
        assert_eq!(smith_normal_form(&m).diagonal(), invariant_factors_by_minors(&m), "{m}");
    }
}

#[test]
fn cokernel_order_agrees_with_cosets() {
    let mut r = rng(12);
    let mut checked = 0;
    while checked < 100 {
        let m = random_matrix(&mut r, 3, 4);
        let Some(n) = cokernel_order_by_cosets(&m) else { continue };
        let s = cokernel_structure(&m);
        assert_eq!(s.free_rank, 0);
        assert_eq!(s.order(), Some(BigInt::from(n)), "{m}");
        checked += 1;
    }
}

#[test]
fn line_and_torsion_quotients() {
    let m = IntMatrix::from_i64_rows(2, &[&[1, 1]]).unwrap();
    let s = cokernel_structure(&m);
    assert_eq!((s.free_rank, s.invariant_factors.len()), (1, 0));

    let g = AbelianGroupPresentation::free(2)
        .with_relation(&[big(6), big(0)])
        .unwrap()
        .with_relation(&[big(0), big(3)])
        .unwrap();
    assert_eq!(g.structure().invariant_factors, vec![big(3), big(6)]);
    assert_eq!(g.element_order(&[big(1), big(1)]).unwrap(), Order::Finite(big(6)));
    assert_eq!(g.element_order(&[big(2), big(0)]).unwrap(), Order::Finite(big(3)));
}

proptest! {
    #[test]
    fn smith_form_is_a_certificate(seed in any::<u64>()) {
        let m = random_matrix(&mut rng(seed), 5, 20);
        let s = smith_normal_form(&m);
        prop_assert!(is_unimodular(&s.u) && is_unimodular(&s.w));
        prop_assert_eq!(&s.u.mul(&m).unwrap().mul(&s.w).unwrap(), &s.d);
        let diag = s.diagonal();
        for (i, x) in diag.iter().enumerate() {
            prop_assert!(!x.is_negative());
            if let Some(y) = diag.get(i + 1) {
                let divides = if x.is_zero() { y.is_zero() } else { (y % x).is_zero() };
                prop_assert!(divides);
            }
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                prop_assert!(i == j || s.d[(i, j)].is_zero());
            }
        }
    }

    #[test]
    fn relations_have_order_dividing_one(seed in any::<u64>()) {
        let m = random_matrix(&mut rng(seed), 4, 9);
        let g = AbelianGroupPresentation::new(m.cols(), m.clone()).unwrap();
        for i in 0..m.rows() {
            prop_assert!(g.is_zero_element(m.row(i)).unwrap());
        }
    }
}
