//! Failure witnesses replay.
//!
//! Every failing claim row carries enough instance data to re-execute
//! exactly that check. The example runs a small suite, takes the
//! complement-hypothesis failure it finds, replays it, then tampers with
//! the witness and shows that the mismatch is detected.
//!
//! ```text
//! cargo run --example witness_replay
//! ```

use caplab::report::{ClaimId, SuiteConfig, Verdict};
use caplab::suite::{replay, run_suite};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = SuiteConfig { primes: vec![3], max_order: 81, seeds: 1, ..SuiteConfig::default() };
    let report = run_suite(&config);
    let gap = report
        .rows
        .iter()
        .find(|r| r.claim == ClaimId::Cc1ComplementHypothesis && r.verdict == Verdict::Fail)
        .expect("the catalog contains a hypothesis-gap group");
    println!(
        "recorded failure: {} on {} at {}",
        gap.claim,
        gap.instance.group,
        gap.instance.detail.as_deref().unwrap_or("?")
    );

    let outcome = replay(gap, &config)?;
    println!(
        "replay: recomputed {:?} — {}",
        outcome.recomputed,
        if outcome.reproduced { "reproduced" } else { "MISMATCH" }
    );

    // tamper with the witness: point it at a class that has a complement
    let mut tampered = gap.clone();
    tampered.instance.detail = Some("(0,1)".to_string());
    let outcome = replay(&tampered, &config)?;
    println!(
        "tampered replay: recomputed {:?} — {}",
        outcome.recomputed,
        if outcome.reproduced { "reproduced" } else { "mismatch flagged, as it should be" }
    );
    Ok(())
}
