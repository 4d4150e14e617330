use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;
use torsion_tower_core::classifier::{classify, ClassifyOptions};
use torsion_tower_core::generator::{cube_normalized, gen_from_prime, gen_from_t, solve_form, split_prime, Eisenstein, Family, FormId, GenError};
use torsion_tower_core::torsion::TorsionGroup;

#[test]
fn split_prime_examples() {
    assert_eq!(split_prime(7).unwrap().norm(), 7);
    assert_eq!(split_prime(13).unwrap().norm(), 13);
    assert_eq!(split_prime(5), Err(GenError::NotSplit(5)));
    assert_eq!(cube_normalized(&Eisenstein::new(3, 1)), (19, 6));
}

#[test]
fn pinned_form_values() {
    assert_eq!(FormId::U27.eval(111, 1), FormId::U27.target(2, 7));
    assert_eq!(FormId::F3.eval(60, 17), FormId::F3.target(3, 7));
    let s = solve_form(FormId::F3, 3, 7).unwrap();
    assert_eq!(FormId::F3.eval(s.u, s.v), 9261);
    assert_eq!(s.u.gcd(&s.v), 1);
}

#[test]
fn seven_family_at_seven() {
    let c = gen_from_prime(Family::TrivToZ7, 7).unwrap();
    assert_eq!((c.expected_base, c.expected_tower), (TorsionGroup::trivial(), TorsionGroup::cyclic(7)));
    let r = classify(&c.curve, 3, &ClassifyOptions::default()).unwrap();
    assert_eq!((r.base, r.tower), (c.expected_base, c.expected_tower));
}

#[test]
fn full_two_torsion_family_at_three() {
    let c = gen_from_t(Family::Z2xZ2Over2, &BigRational::from_integer(3.into())).unwrap();
    assert_eq!((c.expected_base, c.expected_tower), (TorsionGroup::cyclic(2), TorsionGroup::full_two(1)));
    let r = classify(&c.curve, 2, &ClassifyOptions::default()).unwrap();
    assert_eq!((r.base, r.tower), (c.expected_base, c.expected_tower));
}

#[test]
fn prime_families_reject_parameters() {
    let t = BigRational::from_integer(2.into());
    assert!(matches!(gen_from_t(Family::Z3ToZ9, &t), Err(GenError::NeedsPrime(_))));
    assert!(matches!(gen_from_prime(Family::Z2xZ2Over2, 7), Err(GenError::NeedsParameter(_))));
}

fn eis() -> impl Strategy<Value = Eisenstein> {
    (-10_000i128..10_000, -10_000i128..10_000).prop_map(|(x, y)| Eisenstein::new(x, y))
}

proptest! {
    #[test]
    fn norm_is_multiplicative(a in eis(), b in eis()) {
        prop_assert_eq!(a.mul(&b).norm(), a.norm() * b.norm());
        prop_assert_eq!(a.conj().norm(), a.norm());
        prop_assert_eq!(a.mul(&a.conj()), Eisenstein::new(a.norm(), 0));
    }

    #[test]
    fn gcd_norm_divides_both(a in eis(), b in eis()) {
        let g = Eisenstein::gcd(&a, &b);
        let n = g.norm();
        if n != 0 {
            prop_assert_eq!(a.norm() % n, 0);
            prop_assert_eq!(b.norm() % n, 0);
        }
    }

    #[test]
    fn split_primes_have_norm_p(p in 7u64..20_000) {
        match split_prime(p) {
            Ok(pi) => {
                prop_assert_eq!(pi.norm(), p as i128);
                let (a, b) = cube_normalized(&pi);
                prop_assert_eq!(a * a - 3 * a * b + 9 * b * b, (p as i128).pow(3));
            }
            Err(_) => prop_assert!(p % 3 != 1 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0)),
        }
    }
}
