use num::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use posauction::complete::nash_verify;
use posauction::complete::{
    gsp_support, random_instance, theorem1_proof_chain, three_position_thresholds, vcg_support,
    RandomInstanceConfig,
};
use posauction::rational::{int, ratio};
use posauction::{
    is_truthful_vcg_outcome, run_mechanism, truthful_vcg_payments, AuctionInstance, MechanismKind,
    MechanismSpec, QualityVector, Rational,
};

/// VCG prices from the definition: the welfare the others lose because the
/// agent is present, each group assigned efficiently.
fn brute_force_prices(beta: &[Rational], sorted: &[Rational]) -> Vec<Rational> {
    let welfare = |vals: &[Rational]| -> Rational {
        vals.iter()
            .zip(beta)
            .fold(Rational::zero(), |acc, (v, b)| acc + v * b)
    };
    (0..beta.len())
        .map(|pos| {
            if pos >= sorted.len() {
                return Rational::zero();
            }
            let mut without = sorted.to_vec();
            without.remove(pos);
            let others_with: Rational = sorted
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != pos)
                .map(|(i, v)| v * beta.get(i).cloned().unwrap_or_else(Rational::zero))
                .fold(Rational::zero(), |a, b| a + b);
            welfare(&without) - others_with
        })
        .collect()
}

fn weights(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(1i64..=20, 1..=max_len).prop_map(|mut w| {
        w.sort_unstable_by(|a, b| b.cmp(a));
        w
    })
}

fn to_q(w: &[i64]) -> QualityVector<Rational> {
    QualityVector::new(w.iter().map(|&x| ratio(x, 20)).collect()).unwrap()
}

fn instance_strategy() -> impl Strategy<Value = (Vec<i64>, Vec<i64>, Vec<i64>)> {
    (1usize..=5).prop_flat_map(|k| {
        (
            weights(k).prop_map(move |mut w| {
                w.resize(k, 1);
                w
            }),
            prop::collection::vec(1i64..=20, k).prop_map(|mut w| {
                w.sort_unstable_by(|a, b| b.cmp(a));
                w
            }),
            prop::collection::vec(0i64..=12, 1..=7),
        )
    })
}

proptest! {
    #[test]
    fn prices_match_definition((beta, _alpha, values) in instance_strategy()) {
        let inst = AuctionInstance::new(to_q(&beta), values.iter().map(|&v| int(v)).collect()).unwrap();
        let prices = truthful_vcg_payments(&inst);
        let sorted = inst.sorted_values();
        prop_assert_eq!(&prices, &brute_force_prices(inst.beta().entries(), &sorted));
        // non-negative, non-increasing, below the value of the position
        for (j, p) in prices.iter().enumerate() {
            prop_assert!(*p >= Rational::zero());
            let v = sorted.get(j).cloned().unwrap_or_else(Rational::zero);
            prop_assert!(*p <= inst.beta().weight(j + 1) * v);
        }
        prop_assert!(prices.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn prices_scale_and_ignore_order((beta, _alpha, values) in instance_strategy(), c in 1i64..5, rot in 0usize..7) {
        let vals: Vec<Rational> = values.iter().map(|&v| int(v)).collect();
        let inst = AuctionInstance::new(to_q(&beta), vals.clone()).unwrap();
        let mut rotated = vals.clone();
        let r = rot % rotated.len();
        rotated.rotate_left(r);
        let scaled: Vec<Rational> = vals.iter().map(|v| v * int(c)).collect();
        let p = truthful_vcg_payments(&inst);
        let p_rot = truthful_vcg_payments(&AuctionInstance::new(to_q(&beta), rotated).unwrap());
        let p_scaled = truthful_vcg_payments(&AuctionInstance::new(to_q(&beta), scaled).unwrap());
        prop_assert_eq!(&p, &p_rot);
        let expect: Vec<Rational> = p.iter().map(|x| x * int(c)).collect();
        prop_assert_eq!(p_scaled, expect);
    }

    #[test]
    fn vcg_payments_telescope((beta, alpha, values) in instance_strategy()) {
        // alpha-VCG payment differences equal step(j) * b_(j+1)
        let bids: Vec<Rational> = values.iter().map(|&v| int(v)).collect();
        let spec = MechanismSpec::new(MechanismKind::AlphaVcg, to_q(&alpha));
        let profile = posauction::BidProfile::new(bids.clone());
        let outcome = run_mechanism(&spec, &profile).unwrap();
        let _ = beta;
        let k = alpha.len();
        let pay_at = |j: usize| {
            outcome.agent_at(j).map(|a| outcome.payments[a].clone()).unwrap_or_else(Rational::zero)
        };
        for j in 1..k.min(bids.len()) {
            let diff = pay_at(j) - pay_at(j + 1);
            prop_assert_eq!(diff, spec.alpha.step(j) * profile.order_stat(j + 1));
        }
    }

    #[test]
    fn witnesses_are_sound((beta, alpha, values) in instance_strategy()) {
        let inst = AuctionInstance::new(to_q(&beta), values.iter().map(|&v| int(v)).collect())
            .unwrap()
            .canonicalized();
        let alpha = to_q(&alpha);
        for (kind, res) in [
            (MechanismKind::AlphaGsp, gsp_support(&alpha, &inst).unwrap()),
            (MechanismKind::AlphaVcg, vcg_support(&alpha, &inst).unwrap()),
        ] {
            prop_assert_eq!(res.supported, res.witness_bids.is_some());
            prop_assert_eq!(res.supported, res.failure.is_none());
            if let Some(bids) = res.witness_profile() {
                let spec = MechanismSpec::new(kind, alpha.clone());
                prop_assert!(nash_verify(&spec, &bids, &inst, &Rational::zero()).unwrap());
                let outcome = run_mechanism(&spec, &bids).unwrap();
                prop_assert!(is_truthful_vcg_outcome(&outcome, &inst, &Rational::zero()));
            }
        }
    }

    #[test]
    fn witnesses_are_sound_in_floats((beta, alpha, values) in instance_strategy()) {
        let f = |w: &[i64]| QualityVector::new(w.iter().map(|&x| x as f64 / 20.0).collect()).unwrap();
        let inst = AuctionInstance::new(f(&beta), values.iter().map(|&v| v as f64).collect())
            .unwrap()
            .canonicalized();
        let alpha = f(&alpha);
        if let Some(bids) = gsp_support(&alpha, &inst).unwrap().witness_profile() {
            let spec = MechanismSpec::new(MechanismKind::AlphaGsp, alpha.clone());
            prop_assert!(nash_verify(&spec, &bids, &inst, &1e-9).unwrap());
            let outcome = run_mechanism(&spec, &bids).unwrap();
            prop_assert!(is_truthful_vcg_outcome(&outcome, &inst, &1e-9));
        }
    }

    #[test]
    fn vcg_support_implies_gsp_support((beta, alpha, values) in instance_strategy()) {
        let inst = AuctionInstance::new(to_q(&beta), values.iter().map(|&v| int(v)).collect()).unwrap();
        let alpha = to_q(&alpha);
        if vcg_support(&alpha, &inst).unwrap().supported {
            prop_assert!(gsp_support(&alpha, &inst).unwrap().supported);
        }
    }

    #[test]
    fn random_generator_instances_satisfy_implication(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (alpha, inst) = random_instance(&mut rng, &RandomInstanceConfig::default());
        prop_assert!(inst.k() <= 6 && inst.n() <= 8);
        if vcg_support(&alpha, &inst).unwrap().supported {
            prop_assert!(gsp_support(&alpha, &inst).unwrap().supported);
        }
    }

    #[test]
    fn proof_chain_holds((beta, alpha, values) in instance_strategy()) {
        let inst = AuctionInstance::new(to_q(&beta), values.iter().map(|&v| int(v)).collect()).unwrap();
        let alpha = to_q(&alpha);
        if let Some(chain) = theorem1_proof_chain(&alpha, &inst).unwrap() {
            prop_assert!(!gsp_support(&alpha, &inst).unwrap().supported);
            if chain.intermediate_prices_equal {
                prop_assert!(chain.holds(), "{:?}", chain);
            } else {
                // VCG already fails at an equal-alpha position between i and j
                prop_assert!(!vcg_support(&alpha, &inst).unwrap().supported);
            }
        }
    }

    #[test]
    fn three_position_thresholds_are_minimal(
        b2 in 6i64..=20, v1 in 1i64..=30, v2 in 0i64..=30, v3 in 0i64..=30, a3 in 1i64..=6,
    ) {
        let a3 = ratio(a3, 20);
        let beta = QualityVector::new(vec![Rational::one(), ratio(b2, 20), a3.clone()]).unwrap();
        let inst = AuctionInstance::new(beta, vec![int(v1), int(v2), int(v3)]).unwrap();
        let t = three_position_thresholds(&Rational::one(), &a3, &inst).unwrap();
        let alpha = |x: &Rational| QualityVector::new(vec![Rational::one(), x.clone(), a3.clone()]).unwrap();
        let eps = ratio(1, 1_000_000);
        // GSP: feasible exactly from max(threshold, alpha_3) on
        let g = if t.gsp > a3 { t.gsp.clone() } else { a3.clone() };
        prop_assert!(gsp_support(&alpha(&g), &inst).unwrap().supported);
        if t.gsp - &eps > a3 {
            prop_assert!(!gsp_support(&alpha(&(g.clone() - &eps)), &inst).unwrap().supported);
        }
        // VCG: same below alpha_1; alpha_2 = alpha_1 needs p_1 = p_2
        let v = if t.vcg > a3 { t.vcg.clone() } else { a3.clone() };
        if v < Rational::one() {
            prop_assert!(vcg_support(&alpha(&v), &inst).unwrap().supported);
            if t.vcg.clone() - &eps > a3 {
                prop_assert!(!vcg_support(&alpha(&(v - &eps)), &inst).unwrap().supported);
            }
        }
    }

    #[test]
    fn gsp_feasibility_is_upward_closed(
        b2 in 6i64..=20, v1 in 1i64..=30, v2 in 0i64..=30, v3 in 0i64..=30, lo in 6i64..=20, hi in 6i64..=20,
    ) {
        let a3 = ratio(3, 10);
        let beta = QualityVector::new(vec![Rational::one(), ratio(b2, 20), a3.clone()]).unwrap();
        let inst = AuctionInstance::new(beta, vec![int(v1), int(v2), int(v3)]).unwrap();
        let (lo, hi) = (lo.min(hi), lo.max(hi));
        let alpha = |x: i64| QualityVector::new(vec![Rational::one(), ratio(x, 20), a3.clone()]).unwrap();
        if gsp_support(&alpha(lo), &inst).unwrap().supported {
            prop_assert!(gsp_support(&alpha(hi), &inst).unwrap().supported);
        }
    }

    #[test]
    fn zero_second_price_imposes_no_bound(a2 in 6i64..20, v1 in 1i64..=30) {
        // v_3 = 0 and beta_2 = alpha_3 give p_2 = 0
        let a3 = ratio(3, 10);
        let beta = QualityVector::new(vec![Rational::one(), a3.clone(), a3.clone()]).unwrap();
        let inst = AuctionInstance::new(beta, vec![int(v1), int(0), int(0)]).unwrap();
        prop_assert!(truthful_vcg_payments(&inst)[1].is_zero());
        let alpha = QualityVector::new(vec![Rational::one(), ratio(a2, 20), a3]).unwrap();
        prop_assert!(gsp_support(&alpha, &inst).unwrap().supported);
        prop_assert!(vcg_support(&alpha, &inst).unwrap().supported);
    }
}

#[test]
fn zero_second_price_at_alpha_one() {
    // equal alpha_1 = alpha_2 requires p_1 = p_2, which fails here
    let a3 = ratio(3, 10);
    let beta = QualityVector::new(vec![Rational::one(), a3.clone(), a3.clone()]).unwrap();
    let inst = AuctionInstance::new(beta, vec![int(20), int(10), int(0)]).unwrap();
    let prices = truthful_vcg_payments(&inst);
    assert!(prices[1].is_zero() && !prices[0].is_zero());
    let alpha = QualityVector::new(vec![Rational::one(), Rational::one(), a3]).unwrap();
    assert!(gsp_support(&alpha, &inst).unwrap().supported);
    assert!(!vcg_support(&alpha, &inst).unwrap().supported);
}
