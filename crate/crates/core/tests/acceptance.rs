//! Acceptance criteria, one line per criterion. Runs as a plain binary so
//! the verdict lines are always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cubeplan::arm::{build_complex, enumerate_states, is_valid, ArmPlanner, ArmSpec};
use cubeplan::complex::fixtures::squares_around_vertex;
use cubeplan::complex::{extract_pip, from_pip, is_cat0, link, Refutation};
use cubeplan::generate::random_pip;
use cubeplan::geodesic::{geodesic, l1_geodesic, linf_geodesic, spans_cube, Metric, Oracle};
use cubeplan::{Guard, Ideal, Pip};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn spec(m: usize, n: usize) -> ArmSpec {
    ArmSpec::new(m, n).expect("positive spec")
}

fn state_count(m: usize, n: usize) -> usize {
    enumerate_states(spec(m, n), Guard::default())
        .expect("within guard")
        .len()
}

fn within(started: Instant, limit: Duration) -> Outcome {
    let took = started.elapsed();
    if took < limit {
        Ok(format!("{:.2}s", took.as_secs_f64()))
    } else {
        Err(format!(
            "took {:.2}s, limit {}s",
            took.as_secs_f64(),
            limit.as_secs()
        ))
    }
}

fn fibonacci_growth() -> Outcome {
    let started = Instant::now();
    for n in 1..=2 {
        let words = (0..3usize.pow(n as u32)).map(|mut k| {
            (0..n)
                .map(|_| {
                    let c = ['D', 'R', 'U'][k % 3];
                    k /= 3;
                    c
                })
                .collect::<String>()
        });
        let filtered = words.filter(|w| is_valid(spec(1, n), w).unwrap()).count();
        ensure!(
            filtered == state_count(1, n),
            "c({n}) differs from word filtering"
        );
    }
    let counts: Vec<usize> = (0..=20)
        .map(|n| if n == 0 { 0 } else { state_count(1, n) })
        .collect();
    for n in 3..=20 {
        ensure!(
            counts[n] == counts[n - 1] + counts[n - 2],
            "c({n}) = {} but c({})+c({}) = {}",
            counts[n],
            n - 1,
            n - 2,
            counts[n - 1] + counts[n - 2]
        );
    }
    within(started, Duration::from_secs(10)).map(|t| format!("c(1..=20) = {:?}, {t}", &counts[1..]))
}

fn cat0_certification() -> Outcome {
    let started = Instant::now();
    let mut certified = 0;
    for m in 1..=8 {
        for n in 1.. {
            if state_count(m, n) > 2000 {
                break;
            }
            let x = build_complex(spec(m, n), Guard::default()).map_err(|e| e.to_string())?;
            let root = x.root().expect("rooted at the straight arm");
            let cert = is_cat0(&x, root).map_err(|r| format!("R_{{{m},{n}}}: {r}"))?;
            for v in 0..x.vertex_count() {
                ensure!(
                    link(&x, v).is_flag(),
                    "R_{{{m},{n}}}: link of {} not flag",
                    x.vertex_name(v)
                );
            }
            ensure!(
                cert.euler_characteristic == 1,
                "R_{{{m},{n}}}: χ = {}",
                cert.euler_characteristic
            );
            certified += 1;
        }
    }
    within(started, Duration::from_secs(60)).map(|t| format!("{certified} arms certified, {t}"))
}

fn chain_structure() -> Outcome {
    for n in 2..=12 {
        let cert = ArmPlanner::new(spec(1, n), Guard::default())
            .map_err(|e| e.to_string())?
            .certificate;
        let pip = cert.pip();
        ensure!(
            pip.inconsistent_pairs().count() == 0,
            "R_{{1,{n}}} has inconsistent pairs"
        );
        let ideals = pip
            .count_consistent_ideals(Guard::default())
            .map_err(|e| e.to_string())?;
        ensure!(
            ideals as usize == state_count(1, n),
            "R_{{1,{n}}}: {ideals} ideals"
        );
    }
    Ok("n = 2..=12".into())
}

fn all_pairs(metric: Metric) -> Outcome {
    let mut pairs = 0usize;
    for (m, n) in [(2, 4), (1, 10)] {
        let planner = ArmPlanner::new(spec(m, n), Guard::default()).map_err(|e| e.to_string())?;
        let x = &planner.complex;
        let ext = &planner.certificate.extraction;
        let pip = ext.pip.clone();
        let oracle = Oracle::new(x);
        for u in 0..x.vertex_count() {
            let bfs = oracle.distances_from(u, metric);
            for (w, d) in bfs.iter().enumerate() {
                let (i, j) = (&ext.ideals[u], &ext.ideals[w]);
                let expected = d.expect("connected") as usize;
                let plan = match metric {
                    Metric::L1 => l1_geodesic(&pip, i, j),
                    Metric::Linf => linf_geodesic(&pip, i, j),
                }
                .map_err(|e| format!("R_{{{m},{n}}}: {e}"))?;
                ensure!(
                    plan.distance == expected,
                    "R_{{{m},{n}}} {} -> {}: plan {} vs BFS {expected}",
                    x.vertex_name(u),
                    x.vertex_name(w),
                    plan.distance
                );
                match metric {
                    Metric::L1 => ensure!(
                        expected == i.symmetric_difference_len(j),
                        "R_{{{m},{n}}}: BFS differs from |I Δ J|"
                    ),
                    Metric::Linf => {
                        for (step, batch) in plan.batches.iter().enumerate() {
                            ensure!(
                                spans_cube(&pip, &plan.vertex_trace[step], batch),
                                "batch is not a cube"
                            );
                        }
                    }
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} ordered pairs on R_{{2,4}} and R_{{1,10}}"))
}

fn bijection_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut elements = 0;
    for trial in 0..500 {
        let n = rng.gen_range(0..=10);
        let p = rng.gen_range(0.05..0.6);
        let attempts = rng.gen_range(0..=2 * n);
        let pip = random_pip(&mut rng, n, p, attempts);
        let x = from_pip(&pip, Guard::default()).map_err(|e| e.to_string())?;
        let ext = extract_pip(&x, 0).map_err(|r| format!("trial {trial}: {r}"))?;
        ensure!(ext.pip == pip, "trial {trial}: extracted PIP differs");
        elements += n;
    }
    Ok(format!("500 PIPs, {elements} elements in total"))
}

fn gromov_controls() -> Outcome {
    let three = squares_around_vertex(3);
    match is_cat0(&three, 0) {
        Err(Refutation::NonFlagLink { vertex, clique }) => {
            ensure!(
                vertex == "c" && clique.len() == 3,
                "unexpected witness {vertex} {clique:?}"
            );
        }
        other => return Err(format!("three squares: expected a link witness, got {other:?}")),
    }
    let five = squares_around_vertex(5);
    for root in 0..five.vertex_count() {
        is_cat0(&five, root).map_err(|r| format!("five squares from {}: {r}", five.vertex_name(root)))?;
    }
    Ok("three squares refuted at c, five squares certified from every root".into())
}

fn plan_validity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xface);
    let mut pips: Vec<Pip> = [(2, 4), (1, 10), (3, 5), (2, 7)]
        .into_iter()
        .map(|(m, n)| ArmPlanner::new(spec(m, n), Guard::default()).map(|p| p.certificate.extraction.pip))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    while pips.len() < 10 {
        pips.push(random_pip(&mut rng, 10, 0.2, 8));
    }
    let ideals: Vec<Vec<Ideal>> = pips
        .iter()
        .map(|p| p.consistent_ideals(Guard::default()).unwrap())
        .collect();
    let mut triangles = 0;
    for trial in 0..1000 {
        let c = trial % pips.len();
        let (pip, all) = (&pips[c], &ideals[c]);
        let pick = |rng: &mut ChaCha8Rng| &all[rng.gen_range(0..all.len())];
        let (i, j, k) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        for metric in [Metric::L1, Metric::Linf] {
            let d = |a: &Ideal, b: &Ideal| geodesic(pip, a, b, metric).map_err(|e| e.to_string());
            let forward = geodesic(pip, i, j, metric).map_err(|e| e.to_string())?;
            ensure!(
                forward.vertex_trace.iter().all(|v| pip.is_consistent_ideal(v)),
                "trace leaves the complex"
            );
            ensure!(forward.vertex_trace.last() == Some(j), "trace misses the target");
            ensure!(
                forward.distance == d(j, i)?.distance,
                "asymmetric {metric} distance"
            );
            ensure!(
                d(i, k)?.distance <= forward.distance + d(j, k)?.distance,
                "triangle inequality fails for {metric}"
            );
            triangles += 1;
        }
    }
    Ok(format!(
        "1000 pairs over {} complexes, {triangles} triangle checks",
        pips.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 fibonacci growth", fibonacci_growth),
        ("2 CAT(0) certification", cat0_certification),
        ("3 chain structure for height 1", chain_structure),
        ("4 l1 oracle equivalence", || all_pairs(Metric::L1)),
        ("5 linf oracle equivalence", || all_pairs(Metric::Linf)),
        ("6 bijection round trip", bijection_round_trip),
        ("7 gromov controls", gromov_controls),
        ("8 plan validity", plan_validity),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL criterion {name}: {reason}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
