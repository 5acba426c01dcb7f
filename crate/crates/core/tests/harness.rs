use spectra_factor::harness::{sweep, verify, RecordMode, RunConfig, Source};
use spectra_factor::theorems::{TheoremId, VerdictRecord};
use spectra_factor::Error;

fn records(chunks: usize) -> (Vec<VerdictRecord>, spectra_factor::harness::RunSummary) {
    let config = RunConfig {
        chunks,
        records: RecordMode::All,
        ..RunConfig::labeled(4..=6, TheoremId::ALL.to_vec())
    };
    let mut out = Vec::new();
    let summary = verify(&config, &mut |r| {
        out.push(r.clone());
        Ok(())
    }, |_| {})
    .unwrap();
    (out, summary)
}

#[test]
fn chunk_count_does_not_change_output() {
    let (a, mut sa) = records(1);
    let (b, mut sb) = records(3);
    sa.wall_time = Default::default();
    sb.wall_time = Default::default();
    assert_eq!(a, b);
    assert_eq!(sa, sb);
}

#[test]
fn counts_sum_to_graphs() {
    let (recs, summary) = records(2);
    assert_eq!(summary.graphs, 38 + 728 + 26704);
    for (id, t) in &summary.theorems {
        assert_eq!(t.total(), summary.graphs, "{id}");
    }
    assert_eq!(recs.len() as u64, summary.graphs * TheoremId::ALL.len() as u64);
    // grouped by order, then graph6 within an order
    for w in recs.windows(2) {
        assert!((w[0].nu, &w[0].graph6) <= (w[1].nu, &w[1].graph6));
    }
    assert_eq!(summary.violations(), 0);
}

#[test]
fn matching_statements_are_never_met_at_desk_scale() {
    let (_, summary) = records(1);
    for id in [TheoremId::PmKappa, TheoremId::PmMu1] {
        let t = &summary.theorems[&id];
        assert_eq!(t.count(spectra_factor::theorems::Verdict::HypothesisUnmet), summary.graphs);
    }
}

#[test]
fn missing_corpus_is_an_io_error() {
    let config = RunConfig {
        source: Source::Corpus("/nonexistent/corpus.g6".into()),
        ..RunConfig::labeled(4..=4, vec![TheoremId::ScSize])
    };
    assert!(matches!(verify(&config, &mut |_| Ok(()), |_| {}), Err(Error::Io(_))));
}

#[test]
fn sweep_beta_column() {
    let rows = sweep(4..=12, Some(TheoremId::ScRho), None).unwrap();
    assert!((rows[0].beta.unwrap() - 3f64.sqrt()).abs() < 1e-10);
    assert!((rows[3].beta.unwrap() - 3.2731).abs() < 5e-5);
    assert!(rows.iter().all(|r| r.size_threshold.is_none()));
}
