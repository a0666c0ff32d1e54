mod common;

use common::*;
use house_alloc::ilp::{solve_types, type_profile};
use house_alloc::{envy_report, kernelize, lift_allocation, solve, Allocation, Instance, Kernelized, Objective};
use proptest::prelude::*;

fn binary_instance(max_n: usize, max_m: usize) -> impl Strategy<Value = Instance> {
    (1..=max_n)
        .prop_flat_map(move |n| (Just(n), n..=max_m))
        .prop_flat_map(|(n, m)| proptest::collection::vec(proptest::collection::vec(any::<bool>(), m), n))
        .prop_map(|rows| {
            let m = rows[0].len();
            Instance::binary(m, rows).unwrap()
        })
}

fn relabel(inst: &Instance, agents: &[usize], houses: &[usize]) -> Instance {
    let n = inst.n();
    let m = inst.m();
    let mut rows = vec![vec![false; m]; n];
    for a in 0..n {
        for h in 0..m {
            rows[agents[a]][houses[h]] = inst.values(a, h);
        }
    }
    Instance::binary(m, rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn solver_is_optimal(inst in binary_instance(5, 7)) {
        let truth = reference(&inst);
        for obj in Objective::ALL {
            let got = solve(&inst, obj).unwrap();
            prop_assert_eq!(got.value, truth.value(obj));
            prop_assert_eq!(value_of(&inst, &got.allocation, obj), got.value);
        }
    }

    #[test]
    fn optimum_ignores_labels(inst in binary_instance(5, 7), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut r = rng(seed);
        let mut agents: Vec<usize> = (0..inst.n()).collect();
        let mut houses: Vec<usize> = (0..inst.m()).collect();
        agents.shuffle(&mut r);
        houses.shuffle(&mut r);
        let other = relabel(&inst, &agents, &houses);
        for obj in Objective::ALL {
            prop_assert_eq!(solve(&inst, obj).unwrap().value, solve(&other, obj).unwrap().value);
        }
    }

    #[test]
    fn kernel_lift_keeps_aggregates(inst in binary_instance(6, 9)) {
        if let Kernelized::Reduced { instance, trace } = kernelize(&inst).unwrap() {
            prop_assert!(instance.m() <= 2 * (instance.n() - 1));
            let alloc = Allocation::new((0..instance.n()).collect());
            let lifted = lift_allocation(&trace, &alloc).unwrap();
            assert_valid(&inst, &lifted);
            let a = envy_report(&instance, &alloc).unwrap();
            let b = envy_report(&inst, &lifted).unwrap();
            prop_assert_eq!(
                (a.num_envious, a.max_envy, a.total_envy),
                (b.num_envious, b.max_envy, b.total_envy)
            );
        }
    }

    #[test]
    fn report_bounds(inst in binary_instance(6, 8), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut houses: Vec<usize> = (0..inst.m()).collect();
        houses.shuffle(&mut rng(seed));
        let alloc = Allocation::new(houses[..inst.n()].to_vec());
        let rep = envy_report(&inst, &alloc).unwrap();
        prop_assert!(rep.num_envious <= rep.total_envy);
        prop_assert!(rep.max_envy <= rep.total_envy);
        prop_assert!(rep.total_envy <= rep.num_envious * rep.max_envy);
        prop_assert_eq!(rep.per_agent, naive_envy(&inst, alloc.houses()));
    }

    #[test]
    fn type_search_agrees_with_solver(inst in binary_instance(5, 7)) {
        let p = type_profile(&inst).unwrap();
        for obj in Objective::ALL {
            prop_assert_eq!(solve_types(&p, obj).unwrap().0, solve(&inst, obj).unwrap().value);
        }
    }

    #[test]
    fn json_round_trip(inst in binary_instance(6, 8)) {
        prop_assert_eq!(Instance::from_json(&inst.to_json()).unwrap(), inst);
    }
}
