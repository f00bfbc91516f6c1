//! Acceptance run: one line per criterion, each backed by the suite checks
//! tagged with that criterion. Prints everything before asserting so a
//! failure still shows the full table.
//!
//! `cargo test -p selzet --test acceptance -- --nocapture`

use std::time::Instant;

use selzet::suite::{run_criterion, CheckOutcome};

struct Criterion {
    number: u8,
    title: &'static str,
    budget_s: f64,
}

const CRITERIA: [Criterion; 10] = [
    Criterion { number: 1, title: "special-function anchors", budget_s: 10.0 },
    Criterion { number: 2, title: "continuation cross-validation", budget_s: 60.0 },
    Criterion { number: 3, title: "shift and ladder identities", budget_s: 30.0 },
    Criterion { number: 4, title: "interpolation t = 0, 1, 2", budget_s: 30.0 },
    Criterion { number: 5, title: "Fourier-transform machinery", budget_s: 30.0 },
    Criterion { number: 6, title: "per-term reflection identity", budget_s: 10.0 },
    Criterion { number: 7, title: "derivative functional equation", budget_s: 30.0 },
    Criterion { number: 8, title: "identity-term consistency", budget_s: 60.0 },
    Criterion { number: 9, title: "spectrum enumeration", budget_s: 60.0 },
    Criterion { number: 10, title: "trace-formula reporter (degenerate cases)", budget_s: 30.0 },
];

fn detail(o: &CheckOutcome) -> String {
    let mut s = format!(
        "      {:<28} {} residual {:.2e} tol {:.0e} ({} pts, {:.1} ms)",
        o.id,
        if o.passed { "ok  " } else { "FAIL" },
        o.residual,
        o.tolerance,
        o.points,
        o.elapsed_ms
    );
    if let Some(n) = &o.note {
        s.push_str(&format!(" [{n}]"));
    }
    s
}

#[test]
fn acceptance() {
    let mut failures = Vec::new();
    for c in &CRITERIA {
        let start = Instant::now();
        let outcomes = run_criterion(c.number);
        let elapsed = start.elapsed().as_secs_f64();
        let all_passed = !outcomes.is_empty() && outcomes.iter().all(|o| o.passed);
        let in_time = elapsed <= c.budget_s;
        let worst = outcomes
            .iter()
            .map(|o| if o.tolerance > 0.0 { o.residual / o.tolerance } else if o.residual == 0.0 { 0.0 } else { f64::INFINITY })
            .fold(0.0, f64::max);
        let verdict = if all_passed && in_time { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {verdict}  {:<42} worst residual/tol {:.1e}  {:.2} s (budget {} s)",
            c.number, c.title, worst, elapsed, c.budget_s
        );
        for o in &outcomes {
            println!("{}", detail(o));
        }
        if !all_passed || !in_time {
            failures.push(c.number);
        }
    }
    assert!(failures.is_empty(), "failing criteria: {failures:?}");
}
