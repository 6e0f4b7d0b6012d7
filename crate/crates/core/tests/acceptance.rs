//! One line per acceptance criterion. Criterion 11 fails on the printed
//! branch series; the test pins that divergence instead of hiding it.

use maxcurve::workbench::{run_criterion, Cache, CriterionResult, RunConfig, Status, CRITERIA};

fn line(c: &CriterionResult) -> String {
    let mut s = format!("criterion {:>2} {:<7} {}", c.id, c.status.as_str().to_uppercase(), c.title);
    for k in c.checks.iter().filter(|k| !k.pass) {
        s.push_str(&format!("\n    {}: expected {}, got {}", k.name, k.expected, k.actual));
    }
    if let Some(n) = &c.note {
        s.push_str(&format!("\n    {n}"));
    }
    s
}

#[test]
fn acceptance() {
    let cfg = RunConfig {
        timings: false,
        ..RunConfig::default()
    };
    let cache = Cache::disabled();
    let results: Vec<CriterionResult> = CRITERIA
        .iter()
        .map(|c| run_criterion(c.0, &cfg, &cache).unwrap())
        .collect();
    for r in &results {
        println!("{}", line(r));
    }
    for r in &results {
        if r.id == 11 {
            continue;
        }
        assert_eq!(r.status, Status::Pass, "{}", line(r));
    }

    let c11 = results.iter().find(|r| r.id == 11).unwrap();
    assert_eq!(c11.status, Status::Fail);
    let failing: Vec<(&str, &str)> = c11
        .checks
        .iter()
        .filter(|k| !k.pass)
        .map(|k| (k.name.as_str(), k.actual.as_str()))
        .collect();
    assert_eq!(
        failing,
        vec![
            ("branch expansion at √q = 5 to order 120", "first nonzero term t^62"),
            ("branch expansion at √q = 7 to order 200", "first nonzero term t^114"),
        ]
    );
    assert!(c11
        .checks
        .iter()
        .filter(|k| !k.name.starts_with("branch"))
        .all(|k| k.pass));
}
