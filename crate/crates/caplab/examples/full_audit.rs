//! The whole claim suite, programmatically.
//!
//! Runs every audit over a small catalog, prints the per-claim summary and
//! writes the machine-readable report. Theorem-status claims (MY1, PIT1,
//! GS1, AO1, TV1) must pass; everything else is a finding.
//!
//! ```text
//! cargo run --release --example full_audit
//! ```

use caplab::report::SuiteConfig;
use caplab::suite::run_suite;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = SuiteConfig {
        primes: vec![2, 3],
        max_order: 81,
        seeds: 1,
        ..SuiteConfig::default()
    };
    let report = run_suite(&config);
    println!("{} claim rows", report.rows.len());
    for s in &report.summary {
        println!(
            "  {:<30} pass {:>4}  fail {:>4}  n/a {:>4}  error {:>4}{}",
            s.claim.as_str(),
            s.pass,
            s.fail,
            s.not_applicable,
            s.error,
            if s.claim.is_theorem_status() { "  [theorem-status]" } else { "" }
        );
    }
    println!(
        "exit contract: {}",
        if report.exit_ok() { "ok — all theorem-status claims pass" } else { "FAILED" }
    );

    let path = std::env::temp_dir().join("caplab-report.json");
    std::fs::write(&path, report.to_json())?;
    println!("report written to {}", path.display());

    // a finding worth reading: the complement-hypothesis gap
    for row in &report.rows {
        if row.claim == caplab::ClaimId::Cc1ComplementHypothesis
            && row.verdict == caplab::Verdict::Fail
        {
            println!(
                "finding: {} in {} has no complement (witness replays)",
                row.instance.detail.as_deref().unwrap_or("?"),
                row.instance.group
            );
        }
    }
    Ok(())
}
