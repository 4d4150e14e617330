use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use torsion_tower_core::ec::{count_points, division_poly, exact_order_poly, psi_reduced, Curve, EcError, Point};
use torsion_tower_core::poly::{irreducible_factors_up_to, IntPoly};
use torsion_tower_core::torsion::{rational_torsion, TorsionGroup};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn pt(x: i64, y: i64) -> Point {
    Point::Affine(q(x), q(y))
}

fn short(a: i64, b: i64) -> Curve {
    Curve::short(BigInt::from(a), BigInt::from(b)).unwrap()
}

#[test]
fn j_invariants_and_singularity() {
    assert_eq!(*Curve::from_ints([0, 0, 0, 0, 1]).unwrap().j_invariant(), q(0));
    assert_eq!(*Curve::from_ints([0, 0, 0, 1, 0]).unwrap().j_invariant(), q(1728));
    assert_eq!(Curve::from_ints([0, 0, 0, 0, 0]), Err(EcError::SingularCurve));
}

#[test]
fn group_law_examples() {
    let e = short(0, 4);
    let p = pt(0, 2);
    assert_eq!(e.add(&p, &Point::Infinity), p);
    assert_eq!(e.add(&p, &e.neg(&p)), Point::Infinity);
    assert_eq!(e.scalar_mul(3, &p), Point::Infinity);
    assert_eq!(e.order_up_to(&p, 12), Some(3));
}

#[test]
fn twist_examples() {
    let e = short(-7, 11);
    assert!(e.quadratic_twist(&BigInt::from(1)).unwrap().is_isomorphic(&e));
    let t = e.quadratic_twist(&BigInt::from(-3)).unwrap();
    assert_eq!(t.a_invariants()[3], q(-7 * 9));
    assert_eq!(t.a_invariants()[4], q(11 * -27));
    assert_eq!(t.j_invariant(), e.j_invariant());
}

#[test]
fn point_count_examples() {
    assert_eq!(count_points(&short(1, 1), 5).unwrap().count, 9);
    assert_eq!(count_points(&short(0, 1), 5).unwrap().count, 6);
    assert_eq!(count_points(&short(5, 0), 5), Err(EcError::BadReduction(5)));
}

#[test]
fn division_polynomial_base_cases() {
    let (a, b) = (5i64, -3i64);
    let e = short(a, b);
    assert_eq!(psi_reduced(&e, 1), IntPoly::one());
    assert_eq!(division_poly(&e, 2), IntPoly::from_i64(&[b, a, 0, 1]));
    assert_eq!(psi_reduced(&e, 3), IntPoly::from_i64(&[-a * a, 12 * b, 6 * a, 0, 3]));
}

#[test]
fn psi3_roots_are_three_torsion() {
    // y^2 = x^3 + 16 has (0, ±4) of order 3
    let e = short(0, 16);
    assert!(psi_reduced(&e, 3).eval(&BigInt::from(0)) == BigInt::from(0));
    assert_eq!(e.order_up_to(&pt(0, 4), 10), Some(3));
}

#[test]
fn twenty_seven_division_factor_of_degree_nine() {
    // 27a4, j = -2^15 * 3 * 5^3
    let e = Curve::from_ints([0, 0, 1, -30, 63]).unwrap();
    assert_eq!(*e.j_invariant(), q(-(1 << 15) * 3 * 125));
    let f = exact_order_poly(&e, 27);
    let degs: Vec<usize> = irreducible_factors_up_to(&f, 9).unwrap().iter().map(IntPoly::deg).collect();
    assert!(degs.contains(&9), "{degs:?}");
}

#[test]
fn torsion_examples() {
    assert_eq!(rational_torsion(&Curve::from_ints([0, 0, 1, 0, 0]).unwrap()).group, TorsionGroup::cyclic(3));
    assert_eq!(rational_torsion(&short(1, 7)).group, TorsionGroup::trivial());
    assert_eq!(rational_torsion(&short(-1, 0)).group, TorsionGroup::full_two(1));
}

fn curve_strategy() -> impl Strategy<Value = Curve> {
    prop::array::uniform5(-30i64..=30).prop_filter_map("singular", |a| Curve::from_ints(a).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hasse_bound(a in -200i64..200, b in -200i64..200, qi in 0usize..8) {
        let q = [5u64, 7, 11, 13, 101, 257, 1009, 4099][qi];
        if let Ok(e) = Curve::short(BigInt::from(a), BigInt::from(b)) {
            if let Ok(c) = count_points(&e, q) {
                let t = (q as i64 + 1 - c.count as i64).abs() as f64;
                prop_assert!(t <= 2.0 * (q as f64).sqrt());
            }
        }
    }

    #[test]
    fn twisting_twice_is_trivial(e in curve_strategy(), d in prop_oneof![Just(-1i64), Just(2), Just(-3), Just(5), Just(-7), Just(10)]) {
        let d = BigInt::from(d);
        let tt = e.quadratic_twist(&d).unwrap().quadratic_twist(&d).unwrap();
        prop_assert!(tt.is_isomorphic(&e));
    }

    #[test]
    fn torsion_is_in_mazur_list(e in curve_strategy()) {
        let t = rational_torsion(&e);
        prop_assert!(t.group.in_mazur_list());
        prop_assert!(t.group.order() <= t.bound && t.bound.is_multiple_of(t.group.order()));
        for g in &t.generators {
            prop_assert!(e.contains(g));
        }
    }

    /// `(a + b)P = aP + bP` on a point of infinite order.
    #[test]
    fn scalar_multiplication_is_additive(a in -6i64..=6, b in -6i64..=6) {
        let e = short(0, -2);
        let p = pt(3, 5);
        prop_assert_eq!(e.scalar_mul(a + b, &p), e.add(&e.scalar_mul(a, &p), &e.scalar_mul(b, &p)));
    }
}
