//! Acceptance criteria. Each test writes one `PASS`/`FAIL` line per check to
//! stderr (unbuffered, so it survives output capture) before asserting.

use std::collections::BTreeSet;
use std::io::Write;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spectra_factor::factors::{has_perfect_matching, tutte_witness, tutte_witness_bounded};
use spectra_factor::graph::{
    canonical_graph6, for_each_connected_mask, from_graph6, pair_count, rows_to_graph, to_graph6,
};
use spectra_factor::harness::{verify, verify_oracles, RecordMode, RunConfig, RunSummary};
use spectra_factor::quotient::{closed_form_matrix, verify_quotient_radius, MatrixId, MatrixParams, PartitionSpec};
use spectra_factor::spectra::{kappa, mu1, rho, wiener_index, MatrixKind};
use spectra_factor::theorems::{
    beta, check_fact_monotonicity, extremal_k2, extremal_star_cycle, fact_gap, h_size, size_threshold, Fact,
    FactParams, TheoremId, Verdict,
};
use spectra_factor::{FamilySpec, Graph};

fn line(criterion: &str, pass: bool, detail: impl AsRef<str>) -> bool {
    let status = if pass { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    writeln!(err, "[acceptance] {status} {criterion}: {}", detail.as_ref()).unwrap();
    pass
}

fn within(criterion: &str, what: &str, got: f64, want: f64, tol: f64) -> bool {
    let d = (got - want).abs();
    line(criterion, d <= tol, format!("{what} = {got:.12} vs {want:.12} (|diff| {d:.1e}, tol {tol:.0e})"))
}

fn timed(criterion: &str, budget: Duration, elapsed: Duration) -> bool {
    line(criterion, elapsed < budget, format!("runtime {elapsed:.2?} (budget {budget:?})"))
}

fn fam(hub: usize, parts: &[(usize, usize)]) -> Graph {
    FamilySpec::new(hub, parts.iter().copied()).unwrap().to_graph()
}

#[test]
fn criterion_1_extremal_spectral_radii() {
    let start = Instant::now();
    let mut ok = within("1", "rho(K(2; 5x1))", rho(&extremal_star_cycle(7).unwrap()).unwrap(), (1.0 + 41f64.sqrt()) / 2.0, 1e-9);
    // largest cubic roots, frozen from sympy nroots
    let roots = [
        (4, 1.7320508075688772),
        (5, 2.0),
        (6, 2.514136929335291),
        (8, 4.162277660168379),
        (9, 5.106449868035123),
        (10, 6.075035470324768),
        (11, 7.055721759828732),
        (12, 8.043021108800163),
    ];
    for (nu, root) in roots {
        let g = extremal_star_cycle(nu).unwrap();
        ok &= within("1", &format!("rho(extremal, nu={nu})"), rho(&g).unwrap(), root, 1e-8);
        ok &= within("1", &format!("beta({nu})"), beta(nu).unwrap(), root, 1e-8);
    }
    ok &= timed("1", Duration::from_secs(1), start.elapsed());
    assert!(ok);
}

#[test]
fn criterion_2_numeric_spot_values() {
    let start = Instant::now();
    let tol = 5e-4;
    let mut ok = within("2", "beta(7)", beta(7).unwrap(), 3.2731, tol);
    let cases: [(&str, Graph, f64); 6] = [
        ("mu1(K(2; 5x1))", fam(2, &[(5, 1)]), 9.2170),
        ("mu1(K(1; 3, 3x1))", fam(1, &[(1, 3), (3, 1)]), 9.6974),
        ("mu1(K(3; 7x1))", fam(3, &[(7, 1)]), 7.0 + 46f64.sqrt()),
        ("mu1(K(1; 6, 3x1))", fam(1, &[(1, 6), (3, 1)]), 13.6470),
        ("mu1(K(2; 6x1))", fam(2, &[(6, 1)]), 11.1789),
        ("mu1(K(1; 4, 3x1))", fam(1, &[(1, 4), (3, 1)]), 11.0715),
    ];
    for (what, g, want) in cases {
        ok &= within("2", what, mu1(&g).unwrap(), want, tol);
    }
    let h = h_size(7, 1).unwrap();
    ok &= line("2", h == 9, format!("h(7, 1) = {h}"));
    ok &= timed("2", Duration::from_secs(1), start.elapsed());
    assert!(ok);
}

fn run(orders: std::ops::RangeInclusive<usize>) -> (RunSummary, Duration) {
    let config = RunConfig {
        allow_large: *orders.end() >= 8,
        records: RecordMode::None,
        ..RunConfig::labeled(orders, TheoremId::STAR_CYCLE.to_vec())
    };
    let start = Instant::now();
    let summary = verify(&config, &mut |_| Ok(()), |_| {}).unwrap();
    (summary, start.elapsed())
}

/// One run per order, shared by criteria 3, 4 and 5.
fn order_run(nu: usize) -> &'static (RunSummary, Duration) {
    static RUNS: [OnceLock<(RunSummary, Duration)>; 9] = [const { OnceLock::new() }; 9];
    RUNS[nu].get_or_init(|| run(nu..=nu))
}

/// Zero violations, and the exceptional classes are exactly the extremal
/// graph when it meets the hypothesis, else none.
fn exhaustive(criterion: &str, id: TheoremId, nu: usize, extremal_meets: bool) -> bool {
    let (summary, elapsed) = order_run(nu);
    let t = &summary.theorems[&id];
    let extremal = canonical_graph6(&extremal_star_cycle(nu).unwrap()).unwrap();
    let want: Vec<String> = if extremal_meets { vec![extremal.clone()] } else { vec![] };
    let mut ok = line(
        criterion,
        t.count(Verdict::Violation) == 0,
        format!(
            "{id} nu={nu}: {} graphs, {} VIOLATION, classes {:?}, worst margin {:?}",
            summary.graphs,
            t.count(Verdict::Violation),
            t.violation_classes,
            t.worst_margin
        ),
    );
    ok &= line(
        criterion,
        t.extremal_classes == want,
        format!(
            "{id} nu={nu}: exceptional classes {:?} ({} graphs), expected {:?}",
            t.extremal_classes,
            t.count(Verdict::ExceptionalExtremal),
            want
        ),
    );
    let budget = Duration::from_secs(if nu <= 7 { 60 } else { 30 * 60 });
    ok & timed(criterion, budget, *elapsed)
}

fn size_extremal_meets(nu: usize) -> bool {
    extremal_star_cycle(nu).unwrap().size() as u64 >= size_threshold(nu).unwrap()
}

#[test]
fn criterion_3_size_orders_4_to_7() {
    let ok = (4..=7).fold(true, |ok, nu| exhaustive("3", TheoremId::ScSize, nu, size_extremal_meets(nu)) & ok);
    assert!(ok);
}

/// At ν = 8 the size bound is 13 and K(2; 6×1) also has 13 edges without a
/// star-cycle factor, so this fails.
#[test]
fn criterion_3_size_order_8() {
    let ok = exhaustive("3", TheoremId::ScSize, 8, size_extremal_meets(8));
    let k26 = fam(2, &[(6, 1)]);
    line(
        "3",
        true,
        format!("note: K(2; 6x1) = {} has {} edges, threshold {}", canonical_graph6(&k26).unwrap(), k26.size(), size_threshold(8).unwrap()),
    );
    assert!(ok);
}

#[test]
fn criterion_4_rho_orders_4_to_8() {
    let ok = (4..=8).fold(true, |ok, nu| exhaustive("4", TheoremId::ScRho, nu, true) & ok);
    assert!(ok);
}

#[test]
fn criterion_5_mu1_orders_4_to_8() {
    let ok = (4..=8).fold(true, |ok, nu| exhaustive("5", TheoremId::ScMu1, nu, true) & ok);
    assert!(ok);
}

#[test]
fn criterion_6a_matching_extremal_family() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut cases = BTreeSet::new();
    while cases.len() < 20 {
        let delta = rng.gen_range(1..=6);
        let nu = 2 * rng.gen_range(delta + 1..=20);
        cases.insert((delta, nu));
    }
    let mut ok = true;
    for (delta, nu) in cases {
        let g = extremal_k2(delta, nu).unwrap();
        let pm = has_perfect_matching(&g).exists;
        let w = if nu <= 16 { tutte_witness(&g) } else { tutte_witness_bounded(&g, delta) }.unwrap();
        let hub: Vec<usize> = (0..delta).collect();
        let witness_ok = w.as_ref().is_some_and(|w| w.subset == hub && w.counts.observed == delta + 2);
        ok &= line(
            "6a",
            !pm && witness_ok,
            format!("delta={delta} nu={nu}: matching {pm}, witness {}", w.map_or("none".into(), |w| w.to_string())),
        );
        let p = MatrixParams::new(Some(nu), None, Some(delta));
        let root = |id| closed_form_matrix(id, &p).unwrap().largest_root().unwrap();
        ok &= within("6a", &format!("kappa vs M2 (delta={delta}, nu={nu})"), kappa(&g).unwrap(), root(MatrixId::M2), 1e-8);
        let m = mu1(&g).unwrap();
        ok &= within("6a", &format!("mu1 vs M4 (delta={delta}, nu={nu})"), m, root(MatrixId::M4), 1e-8);
        ok &= within("6a", &format!("mu1 vs M6 (delta={delta}, nu={nu})"), m, root(MatrixId::M6), 1e-8);
    }
    assert!(ok);
}

fn random_fact_params(rng: &mut ChaCha8Rng) -> FactParams {
    loop {
        let x = rng.gen_range(1..=4);
        let r = rng.gen_range(1..=3);
        let s = rng.gen_range(2..=4);
        let mut parts: Vec<usize> = (0..s).map(|_| rng.gen_range(r..=r + 5)).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        // the precondition ν₁ < ν−|X|−r(s−1) needs some later part above r
        if parts[1..].iter().any(|&p| p > r) {
            return FactParams { x, r, parts };
        }
    }
}

#[test]
fn criterion_6b_facts() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let mut held = [0usize; 2];
    let mut ok = true;
    for _ in 0..50 {
        let p = random_fact_params(&mut rng);
        for (i, fact) in [Fact::KappaConcentration, Fact::Mu1Balance].into_iter().enumerate() {
            if check_fact_monotonicity(fact, &p).unwrap() {
                held[i] += 1;
            } else {
                ok &= line("6b", false, format!("{} fails at {p:?}: gap {}", fact.as_str(), fact_gap(fact, &p).unwrap()));
            }
        }
    }
    ok &= line("6b", ok, format!("kappa-concentration {}/50, mu1-balance {}/50", held[0], held[1]));
    assert!(ok);
}

#[test]
fn criterion_7_oracles_up_to_7() {
    let s = verify_oracles(1..=7, 1, false).unwrap();
    let ok = line(
        "7",
        s.failures() == 0 && s.parity_sets_checked > 0,
        format!(
            "{} graphs, {} non-matchable, {} without star-cycle factor, {} parity sets, {} discrepancies {:?}",
            s.graphs, s.non_matchable, s.no_star_cycle, s.parity_sets_checked, s.failures(), s.examples
        ),
    );
    assert!(ok);
}

#[test]
#[ignore = "order 8: about 1.2e8 connected labeled graphs"]
fn criterion_7_oracles_order_8() {
    let s = verify_oracles(8..=8, 1, true).unwrap();
    let ok = line("7", s.failures() == 0, format!("nu=8: {} graphs, {} discrepancies", s.graphs, s.failures()));
    assert!(ok);
}

/// Strict monotonicity under adding `uv`, and the Wiener lower bound.
fn lemma_checks(g: &Graph, failures: &mut Vec<String>) {
    let (r, k, m) = (rho(g).unwrap(), kappa(g).unwrap(), mu1(g).unwrap());
    let w = wiener_index(g).unwrap() as f64;
    if m < 2.0 * w / g.order() as f64 - 1e-9 {
        failures.push(format!("wiener bound {}", to_graph6(g).unwrap()));
    }
    let n = g.order();
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                continue;
            }
            let h = g.with_edge(u, v).unwrap();
            let margin = 1e-9;
            if !(mu1(&h).unwrap() < m - margin && kappa(&h).unwrap() > k + margin && rho(&h).unwrap() > r + margin) {
                failures.push(format!("edge {u}-{v} on {}", to_graph6(g).unwrap()));
            }
        }
    }
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    loop {
        let p = rng.gen_range(0.2..0.9);
        let edges: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

fn partitions(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for p in (1..=n.min(max)).rev() {
        prefix.push(p);
        partitions(n - p, p, prefix, out);
        prefix.pop();
    }
}

#[test]
fn criterion_8_spectral_lemmas() {
    let mut failures = Vec::new();
    let mut graphs = 0u64;
    for nu in 2..=6 {
        for_each_connected_mask(nu, 0..1u64 << pair_count(nu), |_, rows| {
            graphs += 1;
            lemma_checks(&rows_to_graph(rows), &mut failures);
        })
        .unwrap();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..300 {
        graphs += 1;
        lemma_checks(&random_connected(&mut rng, 7), &mut failures);
    }
    let mut ok = line(
        "8",
        failures.is_empty(),
        format!("monotonicity and wiener bound on {graphs} graphs: {} failures {:?}", failures.len(), &failures[..failures.len().min(5)]),
    );

    let mut checked = 0;
    let mut quotient_failures = Vec::new();
    for nu in 2..=10 {
        for hub in 1..nu {
            let mut parts = Vec::new();
            partitions(nu - hub, nu - hub, &mut Vec::new(), &mut parts);
            for sizes in parts {
                let spec = FamilySpec::with_sizes(hub, &sizes).unwrap();
                let g = spec.to_graph();
                let pi = PartitionSpec::new(nu, spec.natural_partition()).unwrap();
                for kind in MatrixKind::ALL {
                    checked += 1;
                    let c = verify_quotient_radius(&g, kind, &pi).unwrap();
                    if !c.agree || (c.full.value - c.quotient.value).abs() > 1e-8 {
                        quotient_failures.push(format!("{spec} {}", kind.symbol()));
                    }
                }
            }
        }
    }
    ok &= line(
        "8",
        quotient_failures.is_empty(),
        format!("quotient agreement on {checked} family/matrix pairs: {:?}", quotient_failures),
    );

    let mut bad = 0;
    for _ in 0..100 {
        let n = rng.gen_range(4..=10);
        let g = random_connected(&mut rng, n);
        let kind = MatrixKind::ALL[rng.gen_range(0..3)];
        let a = kind.matrix(&g).unwrap();
        let m = rng.gen_range(1..n);
        let mut idx: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            idx.swap(i, rng.gen_range(0..=i));
        }
        idx.truncate(m);
        idx.sort_unstable();
        let (ea, eb) = (a.eigenvalues(), a.principal_submatrix(&idx).unwrap().eigenvalues());
        if !(0..m).all(|j| ea[j] <= eb[j] + 1e-9 && eb[j] <= ea[j + n - m] + 1e-9) {
            bad += 1;
        }
    }
    ok &= line("8", bad == 0, format!("interlacing on 100 random principal submatrices: {bad} failures"));
    assert!(ok);
}

#[test]
fn criterion_9_graph6() {
    let mut mismatches = 0u64;
    let mut graphs = 0u64;
    for nu in 1..=6 {
        for_each_connected_mask(nu, 0..1u64 << pair_count(nu), |_, rows| {
            graphs += 1;
            let g = rows_to_graph(rows);
            if from_graph6(&to_graph6(&g).unwrap()).unwrap() != g {
                mismatches += 1;
            }
        })
        .unwrap();
    }
    let mut ok = line("9", mismatches == 0, format!("round trip on {graphs} connected graphs: {mismatches} mismatches"));

    // reference strings from networkx; edges {i<j : (i + 2j + ij) mod m < t}
    let vectors = include_str!("data/graph6_vectors.txt");
    let mut bad = Vec::new();
    let mut count = 0;
    for l in vectors.lines() {
        let f: Vec<&str> = l.splitn(4, ' ').collect();
        let (n, m, t): (usize, usize, usize) = (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap());
        let edges: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| (i + 2 * j + i * j) % m < t).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        count += 1;
        if to_graph6(&g).unwrap() != f[3] || from_graph6(f[3]).unwrap() != g {
            bad.push(n);
        }
    }
    ok &= line("9", bad.is_empty() && count == 20, format!("{count} reference vectors, mismatched orders {bad:?}"));
    assert!(ok);
}
