use cubeplan::complex::{extract_pip, from_pip, is_cat0, realize};
use cubeplan::generate::random_pip;
use cubeplan::geodesic::{crossing_dag, geodesic, l1_geodesic, linf_geodesic, Metric};
use cubeplan::{Guard, Ideal, Pip};
use fixedbitset::FixedBitSet;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pip_from_seed(seed: u64, max_elements: usize) -> Pip {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rand::Rng::gen_range(&mut rng, 0..=max_elements);
    let p = rand::Rng::gen_range(&mut rng, 0.05..0.5);
    random_pip(&mut rng, n, p, n)
}

fn ideals(pip: &Pip) -> Vec<Ideal> {
    pip.consistent_ideals(Guard::default()).unwrap()
}

fn brute_force_count(pip: &Pip) -> u64 {
    let n = pip.len();
    (0u64..1 << n)
        .filter(|mask| {
            let mut bits = FixedBitSet::with_capacity(n);
            (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .for_each(|i| bits.insert(i));
            pip.is_consistent_ideal(&Ideal::from_bits(bits))
        })
        .count() as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn available_moves_stay_consistent(seed in any::<u64>()) {
        let pip = pip_from_seed(seed, 8);
        for i in ideals(&pip) {
            let moves = pip.available_moves(&i).unwrap();
            for &p in &moves.addable {
                prop_assert!(pip.is_consistent_ideal(&i.with(p)));
            }
            for &p in &moves.removable {
                prop_assert!(pip.is_consistent_ideal(&i.without(p)));
            }
            prop_assert_eq!(moves.all().len(), pip.len() - (0..pip.len()).filter(|&p| {
                !pip.can_add(&i, p) && !pip.can_remove(&i, p)
            }).count());
        }
    }

    #[test]
    fn closure_is_idempotent_and_monotone(
        n in 1usize..8,
        covers in proptest::collection::vec((0usize..8, 0usize..8), 0..10),
        pairs in proptest::collection::vec((0usize..8, 0usize..8), 0..4),
    ) {
        let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        // Forward pairs only, so the order is acyclic.
        let covers: Vec<(String, String)> = covers
            .into_iter()
            .filter(|&(a, b)| a < b && b < n)
            .map(|(a, b)| (names[a].clone(), names[b].clone()))
            .collect();
        let pairs: Vec<(String, String)> = pairs
            .into_iter()
            .filter(|&(a, b)| a < n && b < n)
            .map(|(a, b)| (names[a].clone(), names[b].clone()))
            .collect();
        let pip = Pip::new(&names, &covers, &pairs).unwrap();
        let closed = pip.close().unwrap();
        prop_assert!(closed.is_closed());
        prop_assert_eq!(closed.close().unwrap(), closed.clone());
        for (a, b) in pip.inconsistent_pairs() {
            prop_assert!(closed.inconsistent(a, b));
        }
        for (a, b) in closed.inconsistent_pairs() {
            for c in closed.strictly_above(a).ones().chain([a]) {
                for d in closed.strictly_above(b).ones().chain([b]) {
                    prop_assert!(closed.inconsistent(c, d));
                }
            }
        }
    }

    #[test]
    fn ideal_count_matches_subset_filtering(seed in any::<u64>()) {
        let pip = pip_from_seed(seed, 12);
        let count = pip.count_consistent_ideals(Guard::default()).unwrap();
        prop_assert_eq!(count, brute_force_count(&pip));
        prop_assert_eq!(ideals(&pip).len() as u64, count);
    }

    #[test]
    fn without_conflicts_ideals_form_a_lattice(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rand::Rng::gen_range(&mut rng, 0..=7);
        let pip = random_pip(&mut rng, n, 0.3, 0);
        prop_assert_eq!(pip.inconsistent_pairs().count(), 0);
        let all = ideals(&pip);
        let set: std::collections::HashSet<&Ideal> = all.iter().collect();
        for a in &all {
            for b in &all {
                prop_assert!(set.contains(&a.union(b)));
                prop_assert!(set.contains(&a.intersection(b)));
            }
        }
    }

    #[test]
    fn round_trip_recovers_the_pip(seed in any::<u64>()) {
        let pip = pip_from_seed(seed, 8);
        let x = from_pip(&pip, Guard::default()).unwrap();
        let cert = is_cat0(&x, 0).unwrap();
        prop_assert_eq!(cert.pip(), &pip);
        prop_assert_eq!(cert.hyperplane_count, pip.len());
        prop_assert_eq!(cert.euler_characteristic, 1);
    }

    #[test]
    fn rerooted_extraction_is_equivalent(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let pip = pip_from_seed(seed, 7);
        let x = from_pip(&pip, Guard::default()).unwrap();
        let root = pick.index(x.vertex_count());
        let extraction = extract_pip(&x, root).unwrap();
        let again = realize(&extraction.pip, Guard::default()).unwrap();
        prop_assert_eq!(again.complex.face_counts(), x.face_counts());
        prop_assert_eq!(extraction.pip.len(), pip.len());
        prop_assert!(is_cat0(&x, root).is_ok());
    }

    #[test]
    fn l1_paths_cross_each_separating_hyperplane_once(seed in any::<u64>(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let pip = pip_from_seed(seed, 9);
        let all = ideals(&pip);
        let (i, j) = (&all[a.index(all.len())], &all[b.index(all.len())]);
        let plan = l1_geodesic(&pip, i, j).unwrap();
        prop_assert_eq!(plan.distance, i.symmetric_difference_len(j));
        let mut crossed: Vec<usize> = plan.batches.iter().flatten().map(|c| c.element()).collect();
        crossed.sort_unstable();
        let mut expected = i.difference(j);
        expected.extend(j.difference(i));
        expected.sort_unstable();
        prop_assert_eq!(crossed, expected);
        for w in plan.vertex_trace.windows(2) {
            prop_assert_eq!(w[0].symmetric_difference_len(&w[1]), 1);
            prop_assert!(pip.is_consistent_ideal(&w[1]));
        }
        prop_assert_eq!(plan.vertex_trace.last(), Some(j));
    }

    #[test]
    fn distances_are_symmetric_and_satisfy_the_triangle_inequality(
        seed in any::<u64>(),
        picks in proptest::collection::vec(any::<prop::sample::Index>(), 3),
    ) {
        let pip = pip_from_seed(seed, 9);
        let all = ideals(&pip);
        let [i, j, k] = [0, 1, 2].map(|t| &all[picks[t].index(all.len())]);
        for metric in [Metric::L1, Metric::Linf] {
            let d = |u: &Ideal, v: &Ideal| geodesic(&pip, u, v, metric).unwrap().distance;
            prop_assert_eq!(d(i, j), d(j, i));
            prop_assert!(d(i, k) <= d(i, j) + d(j, k));
        }
        prop_assert!(
            geodesic(&pip, i, j, Metric::Linf).unwrap().distance
                <= geodesic(&pip, i, j, Metric::L1).unwrap().distance
        );
    }

    #[test]
    fn linf_batches_are_dag_levels(seed in any::<u64>(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let pip = pip_from_seed(seed, 9);
        let all = ideals(&pip);
        let (i, j) = (&all[a.index(all.len())], &all[b.index(all.len())]);
        let dag = crossing_dag(&pip, i, j).unwrap();
        let plan = linf_geodesic(&pip, i, j).unwrap();
        let levels = dag.levels();
        prop_assert_eq!(plan.distance, levels.iter().map(|&l| l + 1).max().unwrap_or(0));
        for (step, batch) in plan.batches.iter().enumerate() {
            let mut expected: Vec<_> = (0..dag.len()).filter(|&n| levels[n] == step).map(|n| dag.nodes[n]).collect();
            let mut got = batch.clone();
            expected.sort();
            got.sort();
            prop_assert_eq!(got, expected);
        }
    }
}
