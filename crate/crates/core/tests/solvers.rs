mod common;

use proptest::prelude::*;
use viaphy::random::{random_instance, rng, RandomSpec};
use viaphy::solvers::{solve_enum_p, solve_exact, solve_faller, solve_greedy_from, solve_greedy_p};
use viaphy::{is_viable, solve, Algorithm, Error, Instance, PdOracle, SolverConfig, SpeciesSet};

use common::{brute_optimum, brute_viable, faller_trap, FIG1};

fn random(seed: u64, n: usize, k: usize) -> Instance<u64> {
    let spec = RandomSpec {
        species: n,
        budget: k,
        max_weight: 20,
        mean_prey: 1.5,
    };
    random_instance(&mut rng(seed), &spec).unwrap()
}

fn value(inst: &Instance<u64>, algorithm: Algorithm, p: usize) -> u64 {
    let r = solve(inst, &SolverConfig::new(algorithm).with_p(p)).unwrap();
    assert!(r.viable, "{algorithm} returned a non-viable set");
    assert!(r.chosen.len() <= inst.budget);
    assert!(brute_viable(&inst.web, r.chosen.as_slice()));
    r.value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn exact_matches_brute_force(seed in any::<u64>(), n in 2usize..10, k in 1usize..6) {
        let inst = random(seed, n, k);
        let r = solve(&inst, &SolverConfig::new(Algorithm::Exact)).unwrap();
        let (best, best_set) = brute_optimum(&inst, k);
        prop_assert_eq!(r.value, best);
        prop_assert_eq!(r.chosen.as_slice(), best_set.as_slice());
    }

    #[test]
    fn every_solver_is_viable_and_bounded(seed in any::<u64>(), n in 2usize..10, k in 1usize..6) {
        let inst = random(seed, n, k);
        let opt = value(&inst, Algorithm::Exact, 1);
        for (alg, p) in [(Algorithm::Faller, 1), (Algorithm::GreedyP, 1), (Algorithm::GreedyP, 2), (Algorithm::EnumP, 1)] {
            prop_assert!(value(&inst, alg, p) <= opt);
        }
    }

    #[test]
    fn large_p_is_exact(seed in any::<u64>(), n in 2usize..9, k in 1usize..4) {
        let inst = random(seed, n, k);
        prop_assert_eq!(value(&inst, Algorithm::GreedyP, k), value(&inst, Algorithm::Exact, 1));
    }

    #[test]
    fn enum_dominates_plain_greedy(seed in any::<u64>(), n in 2usize..10, k in 1usize..6, p in 1usize..3) {
        let inst = random(seed, n, k);
        let pd = PdOracle::new(&inst.tree);
        let cfg = SolverConfig::new(Algorithm::EnumP).with_p(p);
        let plain = solve_greedy_from(&inst.web, &pd, k, &cfg, &SpeciesSet::new()).unwrap();
        let en = solve_enum_p(&inst.web, &pd, k, &cfg).unwrap();
        prop_assert!(en.value >= plain.value);
    }
}

#[test]
fn faller_trap_family() {
    for c in [3u64, 10, 100] {
        let inst = Instance::<u64>::parse(&faller_trap(c)).unwrap();
        assert_eq!(value(&inst, Algorithm::Faller, 1), 2);
        assert_eq!(value(&inst, Algorithm::Exact, 1), c);
        assert_eq!(value(&inst, Algorithm::GreedyP, 1), c);
        assert_eq!(value(&inst, Algorithm::EnumP, 1), c);
    }
}

#[test]
fn faller_gap_grows_with_weight() {
    let ratios: Vec<u64> = [10u64, 20, 40]
        .iter()
        .map(|&c| {
            let inst = Instance::<u64>::parse(&faller_trap(c)).unwrap();
            value(&inst, Algorithm::Exact, 1) / value(&inst, Algorithm::Faller, 1)
        })
        .collect();
    assert_eq!(ratios, vec![5, 10, 20]);
}

#[test]
fn five_species_small_budgets() {
    let inst = Instance::<u64>::parse(FIG1).unwrap();
    let pd = PdOracle::new(&inst.tree);
    let cfg = SolverConfig::new(Algorithm::Faller);
    let r = solve_faller(&inst.web, &pd, 1, &cfg).unwrap();
    assert_eq!((inst.species().format_set(&r.chosen).as_str(), r.value), ("B", 3));
    for alg in [Algorithm::Faller, Algorithm::GreedyP, Algorithm::EnumP, Algorithm::Exact] {
        let cfg = SolverConfig::new(alg);
        let r = viaphy::solve_with(&inst.web, &pd, 1, &cfg).unwrap();
        assert_eq!(r.value, 3, "{alg}");
    }
    let exact = solve_exact(&inst.web, &pd, 2, &SolverConfig::new(Algorithm::Exact)).unwrap();
    let greedy = solve_greedy_p(&inst.web, &pd, 2, &SolverConfig::new(Algorithm::GreedyP).with_p(2)).unwrap();
    assert_eq!(exact.value, greedy.value);
}

#[test]
fn approximate_solvers_refuse_and_nodes() {
    let text = "[tree]\n(a:1,b:1,t:5)r;\n[web]\nt a\nt b\nAND t\n[budget]\n3\n[generalized]\n";
    let inst = Instance::<u64>::parse(text).unwrap();
    for alg in [Algorithm::Faller, Algorithm::GreedyP, Algorithm::EnumP] {
        let err = solve(&inst, &SolverConfig::new(alg)).unwrap_err();
        assert!(matches!(err, Error::Generalized(_)), "{alg}: {err}");
        assert!(err.is_resource_failure());
    }
    let r = solve(&inst, &SolverConfig::new(Algorithm::Exact)).unwrap();
    assert_eq!(r.value, 7);
    assert!(is_viable(&r.chosen, &inst.web).unwrap());
}

#[test]
fn reports_are_deterministic() {
    let inst = random(99, 11, 5);
    for alg in [Algorithm::Faller, Algorithm::GreedyP, Algorithm::EnumP, Algorithm::Exact] {
        let cfg = SolverConfig::new(alg).with_p(2);
        let a = solve(&inst, &cfg).unwrap();
        let b = solve(&inst, &cfg.clone().with_threads(3)).unwrap();
        assert_eq!((a.chosen, a.value, a.iterations, a.oracle_calls), (b.chosen, b.value, b.iterations, b.oracle_calls));
    }
}

#[test]
fn time_limit_is_enforced() {
    let inst = random(5, 16, 8);
    let mut cfg = SolverConfig::new(Algorithm::EnumP).with_p(2);
    cfg.limits.time_limit = Some(std::time::Duration::ZERO);
    cfg.limits.max_seeds = u64::MAX;
    assert!(matches!(solve(&inst, &cfg), Err(Error::TimeLimit(_))));
}
