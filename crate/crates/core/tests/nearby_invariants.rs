use proptest::prelude::*;

use minexp_lab::derham::gr_dr_piece;
use minexp_lab::harness::catalog;
use minexp_lab::minexp::{psi_hodge_dim, thm22_check};
use minexp_lab::rational::{q, qi};
use minexp_lab::snc::jump_candidates;
use minexp_lab::table::TruncationBox;
use minexp_lab::{MonomialModel, MultiDegree};

fn model_strategy() -> impl Strategy<Value = MonomialModel> {
    let cat = catalog();
    (0..cat.len()).prop_map(move |i| cat[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psi_vanishes_off_candidates(model in model_strategy(), num in 1i64..60, p in -1i64..=3) {
        let alpha = q(num, 60);
        let cands = jump_candidates(&model.divisor(), &qi(0), &qi(1)).unwrap();
        prop_assume!(!cands.contains(&alpha));
        let t = psi_hodge_dim(p, &alpha, &TruncationBox::radius(model.n(), 3, 0), &model).unwrap();
        prop_assert!(t.is_empty());
    }

    #[test]
    fn dr_pieces_are_complexes(model in model_strategy(), k in -3i64..=2, seed in 0usize..1000, raw in prop::collection::vec(-3i64..=4, 3)) {
        let cands = jump_candidates(&model.divisor(), &qi(0), &qi(1)).unwrap();
        let alpha = &cands[seed % cands.len()];
        let d = MultiDegree(raw[..model.n()].to_vec());
        let pc = gr_dr_piece(&model, alpha, k, &d).unwrap();
        prop_assert!(pc.d_squared_zero);
        prop_assert_eq!(pc.euler_terms(), pc.euler_cohomology());
        prop_assert!(pc.term_dims.iter().all(|&x| x <= 1 << model.n()));
    }
}

#[test]
fn thm22_on_catalog() {
    for model in catalog() {
        let r = thm22_check(&model, 2).unwrap();
        assert!(r.passed(), "{model}: {:?}", r.witness);
    }
}
