use outerq::constructions::{path_join, PathExtremal, PathJoinSpec};
use outerq::harness::*;
use outerq::recognition::ForbiddenPattern;
use outerq::spectral::DEFAULT_SEP;
use outerq::{canonical_code, graph6, Error, Graph};

const SEP: f64 = DEFAULT_SEP;

/// Returns a path instead of the fan, so every cycle cell must be refuted.
struct BrokenCycle;

impl ConstructionProvider for BrokenCycle {
    fn cycle_extremal(&self, n: usize, _l: usize) -> outerq::Result<Graph> {
        Graph::path(n)
    }

    fn path_extremal(&self, n: usize, t: usize, l: usize) -> outerq::Result<PathExtremal> {
        StandardConstructions.path_extremal(n, t, l)
    }
}

fn same_class(a: &str, b: &Graph) -> bool {
    canonical_code(&graph6::decode(a).unwrap()) == canonical_code(b)
}

#[test]
fn cycle_cells_from_examples() {
    let r = verify_cycle_theorem(6, 3, SEP, &StandardConstructions).unwrap();
    assert_eq!(r.status, Status::Confirmed);
    assert!(same_class(&r.witness_graphs[0], &Graph::star(6).unwrap()));

    let r = verify_cycle_theorem(8, 4, SEP, &StandardConstructions).unwrap();
    assert_eq!(r.status, Status::Confirmed);
    let expected = path_join(&PathJoinSpec::new(vec![2, 2, 2, 1])).unwrap();
    assert!(same_class(&r.witness_graphs[0], &expected));

    let r = verify_cycle_theorem(5, 5, SEP, &StandardConstructions).unwrap();
    assert_eq!(r.status, Status::Confirmed);
    assert!(r.margin.unwrap() > SEP);
}

#[test]
fn cycle_domain_errors() {
    assert!(matches!(
        verify_cycle_theorem(5, 6, SEP, &StandardConstructions),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        verify_cycle_theorem(11, 4, SEP, &StandardConstructions),
        Err(Error::Capacity {
            requested: 11,
            max: 10
        })
    ));
}

#[test]
fn path_cells_from_examples() {
    let r = verify_path_theorem(9, 1, 4, SEP, &StandardConstructions).unwrap();
    assert_eq!(r.status, Status::Confirmed);
    assert!(same_class(&r.witness_graphs[0], &Graph::star(9).unwrap()));

    let r = verify_path_theorem(10, 2, 3, SEP, &StandardConstructions).unwrap();
    assert!(matches!(r.status, Status::Confirmed | Status::OutOfScope));
    assert_eq!(r.parameters["construction"], "K1 v (4P2 u P1)");
    assert!(r
        .notes
        .iter()
        .any(|n| n.starts_with("discrepancy_flag = true")));

    let r = verify_path_theorem(9, 1, 6, SEP, &StandardConstructions).unwrap();
    assert!(r.parameters.contains_key("printed"));
    assert!(r.parameters.contains_key("canonical_alpha"));
    assert!(r.notes.iter().any(|n| n.starts_with("alternative reading")));
}

#[test]
fn structural_cells_from_examples() {
    for (n, p) in [(7, "C4"), (8, "2P2"), (6, "C3")] {
        let r = structural_check(n, p.parse().unwrap(), SEP).unwrap();
        assert_eq!(r.status, Status::Confirmed, "{n} {p}");
    }
    let r = structural_check(6, "C3".parse().unwrap(), SEP).unwrap();
    assert!(same_class(&r.witness_graphs[0], &Graph::star(6).unwrap()));
    // 2P2 needs tk >= 4 and tk <= n - 1
    assert!(matches!(
        structural_check(4, "2P2".parse().unwrap(), SEP),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        structural_check(8, "P3".parse().unwrap(), SEP),
        Err(Error::Domain(_))
    ));
}

#[test]
fn bound_suites_from_examples() {
    let r = check_lemma(LemmaName::Qmu, Some(4..=7), SEP).unwrap();
    assert_eq!(r.status, Status::Confirmed);
    let r = check_lemma(LemmaName::Delta, Some(4..=7), SEP).unwrap();
    assert_eq!(r.status, Status::Confirmed);
    assert!(r.margin.unwrap() > SEP);
    assert!(matches!(
        "edgemove4".parse::<LemmaName>(),
        Err(Error::UnknownCheck(_))
    ));
}

#[test]
fn broken_construction_is_refuted_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let text = format!(
        "checks = cycle:6:4, cycle:7:5\nout = {}\n",
        dir.path().display()
    );
    let config = CampaignConfig::parse(&text).unwrap();
    let out = run_campaign_with(&config, &BrokenCycle).unwrap();
    assert_eq!(out.exit_code, 1);
    for r in &out.reports {
        assert_eq!(r.status, Status::Refuted);
        assert!(!r.witness_graphs.is_empty());
        // the true maximiser comes first, the broken prediction last
        assert!(same_class(
            r.witness_graphs.last().unwrap(),
            &Graph::path(r.parameters["n"].as_u64().unwrap() as usize).unwrap()
        ));
        let back =
            VerificationReport::read(&dir.path().join(format!("{}.json", r.check_id))).unwrap();
        assert_eq!(&back, r);
    }
    let summary = std::fs::read_to_string(&out.summary).unwrap();
    assert!(summary.lines().skip(1).all(|l| l.contains(",Refuted,")));
}

#[test]
fn campaign_reports_are_deterministic() {
    let text = "checks = cycle:7:4, star, path:2:2, structural:C5, lemma:delta\nn_range = 6..7\n";
    let run = || {
        let dir = tempfile::tempdir().unwrap();
        let mut config = CampaignConfig::parse(text).unwrap();
        config.out = dir.path().to_path_buf();
        config.jobs = 3;
        let out = run_campaign_with(&config, &StandardConstructions).unwrap();
        assert_eq!(out.exit_code, 0);
        out.reports
            .into_iter()
            .map(|mut r| {
                r.runtime_ms = 0;
                r
            })
            .collect::<Vec<_>>()
    };
    let (a, b) = (run(), run());
    assert_eq!(a, b);
    assert_eq!(a.len(), 1 + 6 + 2 + 2 + 1);
    for r in &a {
        if r.status == Status::Confirmed
            && r.check_id.starts_with(['c', 's'])
            && !r.check_id.starts_with("structural")
        {
            assert!(r.margin.unwrap() > SEP, "{}", r.check_id);
        }
    }
}

#[test]
fn run_campaign_reads_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.conf");
    std::fs::write(
        &cfg,
        format!(
            "checks = structural:C3\nn_range = 5..6\nout = {}\n",
            dir.path().join("r").display()
        ),
    )
    .unwrap();
    let out = run_campaign(&cfg).unwrap();
    assert_eq!(out.exit_code, 0);
    assert!(dir.path().join("r/structural_n5_C3.json").exists());
    assert!(matches!(
        run_campaign(&dir.path().join("missing.conf")),
        Err(Error::Io(_))
    ));
    let p: ForbiddenPattern = "3P2".parse().unwrap();
    assert_eq!(p.order(), 6);
}
