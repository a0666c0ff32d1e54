mod common;

use common::*;
use house_alloc::extremal::{
    detect_extremal, nested_envy, solve_extremal, solve_extremal_detailed, solve_nested, Side,
};
use house_alloc::{kernelize, Error, Instance, Kernelized, Method, Objective};
use itertools::Itertools;
use rand::Rng;

use Objective::{MaxEnvy, NumEnvious, TotalEnvy};

/// Every valued set is a prefix or suffix of some house order, by trying all orders.
fn extremal_by_search(inst: &Instance) -> bool {
    let m = inst.m();
    (0..m).permutations(m).any(|order| {
        let mut pos = vec![0; m];
        for (i, &h) in order.iter().enumerate() {
            pos[h] = i;
        }
        (0..inst.n()).all(|a| {
            let ps: Vec<usize> = inst.valued_houses(a).iter().map(|&h| pos[h]).collect();
            let k = ps.len();
            ps.iter().all(|&p| p < k) || ps.iter().all(|&p| p >= m - k)
        })
    })
}

#[test]
fn table2_decomposition() {
    let inst = table2();
    let dec = detect_extremal(&inst).unwrap().expect("extremal");
    assert!(dec.is_consistent(&inst));
    let sorted = |v: &[usize]| v.iter().copied().sorted().collect::<Vec<_>>();
    let (left, right) = if dec.left_agents.len() == 5 {
        (&dec.left_houses, &dec.right_houses)
    } else {
        (&dec.right_houses, &dec.left_houses)
    };
    assert_eq!(sorted(left), vec![0, 1, 2]);
    assert_eq!(sorted(right), vec![7, 8, 9]);
    assert_eq!(sorted(&dec.dummy_houses), vec![3, 4, 5, 6]);
    assert_eq!(dec.left_agents.len() + dec.right_agents.len(), 9);
    assert!([4, 5].contains(&dec.left_agents.len()));
    assert_eq!(dec.sigma.len(), 10);
}

#[test]
fn nested_agent_order() {
    let inst = table2();
    let dec = detect_extremal(&inst).unwrap().unwrap();
    for agents in [&dec.left_agents, &dec.right_agents] {
        for w in agents.windows(2) {
            let a = inst.valued_houses(w[0]);
            let b = inst.valued_houses(w[1]);
            assert!(a.iter().all(|h| b.contains(h)));
        }
    }
}

#[test]
fn all_dummy_agents_are_extremal() {
    let inst = Instance::binary(4, vec![vec![false; 4]; 3]).unwrap();
    let dec = detect_extremal(&inst).unwrap().unwrap();
    assert!(dec.side.iter().all(|&s| s == Side::Dummy));
    assert_eq!(dec.dummy_houses.len(), 4);
    for obj in Objective::ALL {
        assert_eq!(solve_extremal(&inst, obj).unwrap().value, 0);
    }
}

#[test]
fn three_pairwise_overlaps_are_not_extremal() {
    let inst = sets(4, &[&[0, 1], &[1, 2], &[2, 0], &[0, 1, 2]]);
    assert!(!extremal_by_search(&inst));
    assert!(detect_extremal(&inst).unwrap().is_none());
    assert_eq!(solve_extremal(&inst, NumEnvious).unwrap_err(), Error::NotExtremal);
}

#[test]
fn detection_matches_order_search() {
    let mut r = rng(31);
    let (mut yes, mut no) = (0, 0);
    for i in 0..400 {
        let m = r.random_range(3..=6);
        let n = r.random_range(1..=m.min(5));
        let inst = if i % 2 == 0 {
            random_extremal(&mut r, n, m)
        } else {
            random_binary(&mut r, n, m, 0.4)
        };
        let truth = extremal_by_search(&inst);
        match detect_extremal(&inst).unwrap() {
            Some(dec) => {
                assert!(truth, "{inst:?}");
                assert!(dec.is_consistent(&inst));
                let mut all = dec.sigma.clone();
                all.sort();
                assert_eq!(all, (0..m).collect::<Vec<_>>());
                yes += 1;
            }
            None => {
                assert!(!truth, "{inst:?}");
                no += 1;
            }
        }
    }
    assert!(yes > 100 && no > 50, "{yes} extremal, {no} not");
}

#[test]
fn detection_rejects_rankings() {
    assert!(detect_extremal(&intro_strict()).is_err());
}

#[test]
fn nested_small_example() {
    // Two agents want position 0, one wants 0 and 1.
    let prefix = [1, 1, 2];
    let s = solve_nested(&prefix, 3, NumEnvious).unwrap();
    assert_eq!(s.value, 1);
    assert_eq!(aggregate(&nested_envy(&prefix, &s.assignment), NumEnvious), 1);
    assert!(solve_nested(&[2, 1], 3, NumEnvious).is_err());
    assert!(solve_nested(&[1, 1, 1], 2, NumEnvious).is_err());
}

/// Nested optimum by enumerating every injection of agents into positions.
fn nested_brute(prefix: &[usize], positions: usize, obj: Objective) -> usize {
    (0..positions)
        .permutations(prefix.len())
        .map(|asg| aggregate(&nested_envy(prefix, &asg), obj))
        .min()
        .unwrap_or(0)
}

#[test]
fn nested_solvers_match_enumeration() {
    let mut r = rng(32);
    for _ in 0..300 {
        let positions = r.random_range(1..=7);
        let k = r.random_range(0..=positions.min(6));
        let mut prefix: Vec<usize> = (0..k).map(|_| r.random_range(0..=positions)).collect();
        prefix.sort();
        for obj in Objective::ALL {
            let s = solve_nested(&prefix, positions, obj).unwrap();
            assert!(s.assignment.iter().all_unique());
            assert!(s.assignment.iter().all(|&p| p < positions));
            assert_eq!(s.value, aggregate(&nested_envy(&prefix, &s.assignment), obj));
            assert_eq!(s.value, nested_brute(&prefix, positions, obj), "{obj} {prefix:?} {positions}");
        }
    }
}

#[test]
fn table2_optima() {
    let inst = table2();
    let truth = house_alloc::solvers::oracle_summary(
        &inst,
        house_alloc::solvers::OracleLimits { max_agents: 9, max_houses: 10 },
    )
    .unwrap();
    for obj in Objective::ALL {
        let got = solve_extremal(&inst, obj).unwrap();
        assert_eq!(got.method, Method::Extremal);
        assert_valid(&inst, &got.allocation);
        assert_eq!(value_of(&inst, &got.allocation, obj), got.value);
        assert_eq!(got.value, truth.value(obj));
    }
}

fn random_extremal_instance(r: &mut rand_chacha::ChaCha8Rng, i: usize) -> Instance {
    let n = r.random_range(1..=6);
    let m = r.random_range(n..=9);
    if i % 4 == 0 {
        random_left_extremal(r, n, m)
    } else {
        random_extremal(r, n, m)
    }
}

#[test]
fn random_extremal_instances_match_oracle() {
    let mut r = rng(33);
    for i in 0..300 {
        let inst = random_extremal_instance(&mut r, i);
        assert!(detect_extremal(&inst).unwrap().is_some());
        let truth = reference(&inst);
        for obj in Objective::ALL {
            let got = solve_extremal(&inst, obj).unwrap();
            assert_valid(&inst, &got.allocation);
            assert_eq!(value_of(&inst, &got.allocation, obj), got.value);
            assert_eq!(got.value, truth.value(obj), "{obj} on {inst:?}");
        }
    }
}

#[test]
fn envious_count_uses_a_window_on_each_side() {
    let mut r = rng(34);
    for i in 0..300 {
        let inst = random_extremal_instance(&mut r, i);
        let sol = solve_extremal_detailed(&inst, NumEnvious).unwrap();
        for side in &sol.sides {
            let mut used = side.solution.assignment.clone();
            used.sort();
            assert!(used.windows(2).all(|w| w[1] == w[0] + 1), "{used:?}");
        }
    }
}

#[test]
fn total_envy_sides_are_rogue_free_and_nice() {
    let mut r = rng(35);
    for i in 0..300 {
        let inst = random_extremal_instance(&mut r, i);
        let sol = solve_extremal_detailed(&inst, TotalEnvy).unwrap();
        for side in &sol.sides {
            let asg = &side.solution.assignment;
            let served: Vec<bool> = side.prefix.iter().zip(asg).map(|(&len, &p)| p < len).collect();
            for a in 0..served.len() {
                for b in a + 1..served.len() {
                    assert!(!(served[a] && !served[b]), "rogue pair ({a}, {b})");
                }
            }
            for a in (0..served.len()).filter(|&a| !served[a]) {
                for b in (0..served.len()).filter(|&b| !served[b]) {
                    assert!(asg[b] >= side.prefix[a], "unserved {a} envies unserved {b}");
                }
            }
            // Side houses really are prefixes in line order.
            for (idx, &agent) in side.agents.iter().enumerate() {
                let mut valued: Vec<usize> = side.houses[..side.prefix[idx]].to_vec();
                valued.sort();
                assert_eq!(valued, sol.reduced.valued_houses(agent));
            }
        }
    }
}

#[test]
fn reductions_keep_the_structure() {
    let mut r = rng(36);
    for i in 0..300 {
        let inst = random_extremal_instance(&mut r, i);
        if let Kernelized::Reduced { instance, .. } = kernelize(&inst).unwrap() {
            assert!(detect_extremal(&instance).unwrap().is_some(), "{inst:?}");
        }
        let sol = solve_extremal_detailed(&inst, MaxEnvy).unwrap();
        if sol.split.is_none() {
            continue;
        }
        let dec = detect_extremal(&sol.reduced).unwrap().expect("reduced instance stays extremal");
        for (agents, houses) in [
            (&dec.left_agents, &dec.left_houses),
            (&dec.right_agents, &dec.right_houses),
        ] {
            assert!(agents.is_empty() || houses.len() < agents.len());
        }
        let (nl, nr) = sol.split.unwrap();
        assert_eq!(nl + nr, dec.dummy_houses.len());
    }
}

#[test]
fn crowded_side_with_shared_dummy() {
    // Three agents fight over one house on the left; one agent likes two houses on the right.
    let inst = sets(4, &[&[0], &[0], &[0], &[2, 3]]);
    let truth = reference(&inst);
    for obj in Objective::ALL {
        assert_eq!(solve_extremal(&inst, obj).unwrap().value, truth.value(obj));
    }
}
