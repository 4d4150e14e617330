use num_bigint::BigInt;
use proptest::prelude::*;
use torsion_tower_core::poly::IntPoly;
use torsion_tower_core::tower::{
    cubic_conductor, defines_layer, is_layer_cubic, reduce_cubic, Conductor, LayerField, LayerVerdict, DEFAULT_SAMPLE_SIZE,
};

fn b(n: i64) -> BigInt {
    BigInt::from(n)
}

#[test]
fn reduction_examples() {
    assert_eq!(reduce_cubic(&b(-108), &b(432)), (b(-3), b(2)));
    assert_eq!(reduce_cubic(&b(-3), &b(1)), (b(-3), b(1)));
    assert_eq!(reduce_cubic(&b(-4), &b(0)), (b(-1), b(0)));
}

#[test]
fn conductor_with_a_split_prime_in_the_gcd() {
    // x^3 - 7x + 7: disc 49, the field of conductor 7
    let d = cubic_conductor(&b(-7), &b(7)).unwrap();
    assert_eq!(d.conductor, Conductor::Cyclic(b(7)));
    assert!(!is_layer_cubic(&IntPoly::from_i64(&[7, -7, 0, 1])).unwrap());
    assert!(is_layer_cubic(&IntPoly::from_i64(&[1, -3, 0, 1])).unwrap());
    assert!(!is_layer_cubic(&IntPoly::from_i64(&[-2, 0, 0, 1])).unwrap());
}

#[test]
fn split_law_examples() {
    let l22 = LayerField::new(2, 2).unwrap();
    assert_eq!(l22.conductor(), 16);
    assert!(l22.splits(17).unwrap());
    assert!(!l22.splits(7).unwrap());
    assert!(LayerField::new(3, 1).unwrap().splits(17).unwrap());
}

#[test]
fn sixteenth_root_real_subfield_is_the_second_layer() {
    let f = IntPoly::from_i64(&[2, 0, -4, 0, 1]);
    let l22 = LayerField::new(2, 2).unwrap();
    assert!(defines_layer(&f, &l22, DEFAULT_SAMPLE_SIZE).unwrap().is_yes());
    let v = defines_layer(&IntPoly::from_i64(&[1, 0, 0, 0, 1]), &l22, DEFAULT_SAMPLE_SIZE).unwrap();
    assert!(matches!(v, LayerVerdict::No { .. }));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// The conductor of a cubic field does not depend on the model:
    /// `(A, B)` and `(A r^2, B r^3)` define the same field.
    #[test]
    fn conductor_is_scale_invariant(a in -60i64..60, bb in -60i64..60, r in 1i64..6) {
        if let Ok(d) = cubic_conductor(&b(a), &b(bb)) {
            let scaled = cubic_conductor(&b(a * r * r), &b(bb * r * r * r)).unwrap();
            prop_assert_eq!(d.conductor, scaled.conductor);
        }
    }

    /// Shifting `x` leaves the field unchanged.
    #[test]
    fn layer_cubic_is_shift_invariant(c0 in -40i64..40, c1 in -40i64..40, c2 in -40i64..40, s in -5i64..5) {
        let f = IntPoly::from_i64(&[c0, c1, c2, 1]);
        if let Ok(v) = is_layer_cubic(&f) {
            prop_assert_eq!(is_layer_cubic(&f.shift(&b(s))).unwrap(), v);
        }
    }

    /// In the first 3-layer the split primes are exactly `±1 mod 9`.
    #[test]
    fn first_three_layer_split_law(q in 5u64..5000) {
        if (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0) {
            let r = q % 9;
            prop_assert_eq!(LayerField::new(3, 1).unwrap().splits(q).unwrap(), r == 1 || r == 8);
        }
    }
}
