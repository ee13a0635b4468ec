use superweyl::atypical::{
    closed_form_coefficient, coefficient_oracle, partition_route, AtypicalContext, FormTag,
};
use superweyl::sampling::atypical_weights;
use superweyl::series::ZSeries;
use superweyl::RootDatum;

const T: u32 = 3;

fn check_family(d: &RootDatum, types: &[usize], bound: i64, special: bool, per_type: usize) -> usize {
    let mut checked = 0;
    for &g in types {
        let ws = atypical_weights(d, g, bound).unwrap();
        assert!(!ws.is_empty(), "{}: no weight of type {}", d.family(), d.odd_name(g));
        for w in ws.into_iter().take(per_type) {
            let ctx = AtypicalContext::new(d, w.clone(), special, T).unwrap();
            let o = coefficient_oracle(&ctx).unwrap();
            let c = closed_form_coefficient(&ctx).unwrap();
            let p = partition_route(&ctx).unwrap();
            assert_eq!(o.value, c.value, "{} {} {}: {}", d.family(), d.format_weight(&w), c.formula, special);
            assert_eq!(o.value, p.value, "{} {}", d.family(), d.format_weight(&w));
            if let FormTag::ASum { equal_counts, .. } = c.tag {
                assert!(equal_counts);
            }
            checked += 1;
        }
    }
    checked
}

fn all_types(d: &RootDatum) -> Vec<usize> {
    (0..d.positive_odd.len()).collect()
}

#[test]
fn sl_m1_all_types() {
    for m in 2..=4 {
        let d = RootDatum::sl(m, 1);
        check_family(&d, &all_types(&d), 2, false, 2);
    }
}

#[test]
fn osp2_types() {
    for n in 2..=3 {
        let d = RootDatum::osp2(n);
        let types: Vec<usize> = all_types(&d)
            .into_iter()
            .filter(|&g| !atypical_weights(&d, g, 2).unwrap().is_empty())
            .collect();
        assert!(types.len() >= 3, "osp(2,{}) realized types {:?}", 2 * n, types);
        check_family(&d, &types, 2, false, 2);
    }
}

#[test]
fn g3_generic_and_special() {
    let d = RootDatum::g3();
    let types: Vec<usize> =
        all_types(&d).into_iter().filter(|&g| !atypical_weights(&d, g, 2).unwrap().is_empty()).collect();
    assert!(!types.is_empty());
    check_family(&d, &types, 2, false, 2);
    check_family(&d, &types, 2, true, 1);
}

#[test]
fn f4_generic_and_special() {
    let d = RootDatum::f4();
    let types: Vec<usize> =
        all_types(&d).into_iter().filter(|&g| !atypical_weights(&d, g, 1).unwrap().is_empty()).collect();
    assert!(!types.is_empty());
    check_family(&d, &types[..1], 1, false, 1);
    check_family(&d, &types[..1], 1, true, 1);
}

#[test]
fn sl43_interior() {
    let d = RootDatum::sl(4, 3);
    // eps_2 - delta_2 and eps_3 - delta_2
    let interior: Vec<usize> = [(2, 2), (3, 2)]
        .iter()
        .map(|&(i, j)| {
            let mut w = superweyl::Weight::zero(7);
            w.0[i - 1] = superweyl::q(1);
            w.0[4 + j - 1] = superweyl::q(-1);
            d.odd_index(&w).unwrap()
        })
        .collect();
    let n = check_family(&d, &interior, 1, false, 1);
    assert_eq!(n, 2);
}

#[test]
fn z_zero_gives_partition_constant() {
    let d = RootDatum::sl(4, 1);
    let w = atypical_weights(&d, 0, 1).unwrap().remove(0);
    let ctx = AtypicalContext::new(&d, w, false, 0).unwrap();
    let c = closed_form_coefficient(&ctx).unwrap();
    let FormTag::KRatio { k } = c.tag.clone() else { panic!("tag") };
    assert_eq!(c.value, ZSeries::constant(ctx.zctx(), k));
}
