use proptest::prelude::*;
use torsion_tower_core::classifier::{admissible_degrees, classify, ClassifyOptions, Verdict};
use torsion_tower_core::ec::Curve;
use torsion_tower_core::torsion::TorsionGroup;

fn opts() -> ClassifyOptions {
    ClassifyOptions::default()
}

#[test]
fn degree_table_rows() {
    assert_eq!(admissible_degrees(2).unwrap(), [1, 2, 3]);
    assert_eq!(admissible_degrees(5).unwrap(), [1, 2, 4, 5, 8, 10, 16, 20, 24]);
    // no 11-torsion in any layer of the 2- or 3-tower
    let power_of = |mut d: u64, p: u64| {
        while d.is_multiple_of(p) {
            d /= p;
        }
        d == 1
    };
    assert!(admissible_degrees(11).unwrap().iter().all(|&d| !power_of(d, 2) && !power_of(d, 3)));
}

#[test]
fn table_rows_over_their_towers() {
    let cases: [([i64; 5], u64, TorsionGroup, TorsionGroup); 4] = [
        ([1, 0, 1, -36, -70], 2, TorsionGroup::cyclic(6), TorsionGroup::full_two(3)),
        ([0, 0, 1, -30, 63], 3, TorsionGroup::cyclic(3), TorsionGroup::cyclic(27)),
        ([1, -1, 1, -5, 5], 3, TorsionGroup::cyclic(3), TorsionGroup::cyclic(21)),
        ([0, 0, 0, -81, -243], 3, TorsionGroup::trivial(), TorsionGroup::full_two(1)),
    ];
    for (a, p, base, tower) in cases {
        let r = classify(&Curve::from_ints(a).unwrap(), p, &opts()).unwrap();
        assert_eq!((r.base, r.tower, r.verdict), (base, tower, Verdict::Resolved), "{a:?}");
        for e in &r.evidence {
            assert!(e.replay(opts().sample_size).unwrap(), "{e:?}");
        }
    }
}

fn curve_strategy() -> impl Strategy<Value = Curve> {
    prop::array::uniform5(-25i64..=25).prop_filter_map("singular", |a| Curve::from_ints(a).ok())
}

fn tower_universe(p: u64) -> Vec<TorsionGroup> {
    let mut v: Vec<TorsionGroup> = (1..=10).chain([12]).map(TorsionGroup::cyclic).collect();
    v.extend((1..=4).map(TorsionGroup::full_two));
    if p == 3 {
        v.extend([TorsionGroup::cyclic(21), TorsionGroup::cyclic(27)]);
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reports_are_consistent(e in curve_strategy(), pi in 0usize..4) {
        let p = [2u64, 3, 5, 7][pi];
        let r = classify(&e, p, &opts()).unwrap();
        prop_assert!(r.base.is_subgroup_of(&r.tower));
        prop_assert_eq!(r.layer_of_growth.is_some(), r.tower != r.base);
        if p >= 5 {
            prop_assert_eq!(r.tower, r.base);
        } else {
            prop_assert!(tower_universe(p).contains(&r.tower));
        }
        prop_assert!(r.tower.m() <= 2);
        prop_assert_eq!(classify(&e, p, &opts()).unwrap(), r);
    }

    /// Tate normal forms carry a rational point of order `n`, so the tower
    /// group contains `Z/n`.
    #[test]
    fn rational_points_survive(ni in 0usize..8, t in 2i64..12) {
        let n = [4u64, 5, 6, 7, 8, 9, 10, 12][ni];
        let tq = num_rational::BigRational::from_integer(t.into());
        if let Ok(e) = torsion_tower_core::generator::tate_normal_form(n, &tq) {
            for p in [2, 3] {
                let r = classify(&e, p, &opts()).unwrap();
                prop_assert_eq!(r.tower.n() % n, 0);
            }
        }
    }
}
