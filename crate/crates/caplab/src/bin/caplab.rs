//! Thin command-line front end over the library.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use caplab::galois::ArtinIso;
use caplab::group::{elem_order, PGroupType};
use caplab::kummer::{maximal_orthogonal_set, KummerPairing};
use caplab::psi::{canonical_complement, PsiEngine, Strategy};
use caplab::report::{ClaimRow, SuiteConfig};
use caplab::suite::{replay, run_suite};
use caplab::transfer::{
    derived_subgroup, miyake_audit, named_group, pit_audit, transfer, AbelianQuotient,
    FiniteGroup, DEFAULT_GROUP_BOUND,
};

#[derive(Parser)]
#[command(name = "caplab", version, about = "exact capitulation-map laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    #[value(name = "adapted-basis")]
    AdaptedBasis,
    #[value(name = "pairing-annihilator")]
    PairingAnnihilator,
    Both,
}

impl StrategyArg {
    fn list(self) -> Vec<Strategy> {
        match self {
            StrategyArg::AdaptedBasis => vec![Strategy::AdaptedBasis],
            StrategyArg::PairingAnnihilator => vec![Strategy::PairingAnnihilator],
            StrategyArg::Both => Strategy::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full claim suite over the configured catalog.
    Check {
        /// primes of the abelian catalog, comma separated
        #[arg(long = "p", value_delimiter = ',', default_values_t = vec![2u64, 3, 5])]
        primes: Vec<u64>,
        /// maximum abelian group order
        #[arg(long, default_value_t = 81)]
        max_order: u64,
        #[arg(long, value_enum, default_value = "both")]
        strategy: StrategyArg,
        /// number of random pairing / relabeling seeds
        #[arg(long, default_value_t = 2)]
        seeds: u64,
        /// write the JSON report here (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// worker threads (0 = default); output bytes are unaffected
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// self-test: flip one theorem-status verdict
        #[arg(long, hide = true)]
        inject_fault: Option<u64>,
    },
    /// Export the subgroup/field lattice with psi edges.
    Lattice {
        /// group spec `p:e1,e2,...`
        spec: String,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        #[arg(long, value_enum, default_value = "adapted-basis")]
        strategy: StrategyArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the canonical complement of an element.
    Complement {
        /// group spec `p:e1,e2,...`
        spec: String,
        /// element coordinates, comma separated
        elem: String,
        #[arg(long, value_enum, default_value = "both")]
        strategy: StrategyArg,
    },
    /// Orthogonality report for a group: pair table, maximal orthogonal
    /// set, generator-set counterexample where applicable.
    Orth {
        /// group spec `p:e1,e2,...`
        spec: String,
        #[arg(long, value_enum, default_value = "adapted-basis")]
        strategy: StrategyArg,
    },
    /// Transfer audits for a catalog group, an abelian spec, or a
    /// permutation-generator file.
    Transfer {
        /// catalog name (D8, Q8, M16, Heis3, M27, Heis5), `p:e1,...`, or a
        /// file path
        source: String,
        /// audit one subgroup: abelianization elements `x1,..;y1,..`
        #[arg(long)]
        delta: Option<String>,
    },
    /// Re-execute one failing claim row from a witness file.
    Replay {
        /// JSON file holding a single claim row
        witness: PathBuf,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Check { primes, max_order, strategy, seeds, out, jobs, inject_fault } => {
            let config = SuiteConfig {
                primes,
                max_order,
                strategies: strategy.list().iter().map(|s| s.name().to_string()).collect(),
                seeds,
                jobs,
                inject_fault,
                ..SuiteConfig::default()
            };
            let report = run_suite(&config);
            let json = report.to_json();
            match out {
                Some(path) => std::fs::write(&path, json)?,
                None => print!("{json}"),
            }
            for s in &report.summary {
                eprintln!(
                    "{:<30} pass {:>4}  fail {:>4}  n/a {:>4}  error {:>4}",
                    s.claim.as_str(),
                    s.pass,
                    s.fail,
                    s.not_applicable,
                    s.error
                );
            }
            eprintln!(
                "exit contract: {}",
                if report.exit_ok() { "ok (theorem-status claims pass)" } else { "FAILED" }
            );
            Ok(if report.exit_ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Lattice { spec, format, strategy, out } => {
            let ty = PGroupType::from_spec(&spec)?;
            let strat = strategy.list()[0];
            let text = match format {
                Format::Dot => caplab::export::lattice_dot(&ty, strat)?,
                Format::Json => caplab::export::lattice_json(&ty, strat)?,
            };
            match out {
                Some(path) => std::fs::write(&path, text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Complement { spec, elem, strategy } => {
            let ty = PGroupType::from_spec(&spec)?;
            let coords = parse_coords(&elem)?;
            let a = ty.element(&coords)?;
            println!("group {} element {} order {}", ty, a, elem_order(&a));
            for strat in strategy.list() {
                match canonical_complement(&a, strat) {
                    Ok(c) => println!("  {:<20} -> {:?} (order {})", strat.name(), c, c.order()),
                    Err(e) => println!("  {:<20} -> error: {e}", strat.name()),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Orth { spec, strategy } => {
            let ty = PGroupType::from_spec(&spec)?;
            let artin = ArtinIso::identity(&ty);
            let strat = strategy.list()[0];
            let engine = PsiEngine::new(&artin, strat);
            let pairing = KummerPairing::standard(&ty);
            println!("orthogonality on {} [{}]", ty, strat.name());
            match caplab::kummer::orthogonality_properties(&pairing, &engine, &artin, &ty) {
                Ok(pairs) => {
                    for p in &pairs {
                        println!(
                            "  {} ⊥ {} : co={} co1={} agree={} sym={} L_a⊆L'_b={}",
                            p.a,
                            p.a_prime,
                            p.orth.co,
                            p.orth.co1,
                            p.orth.agree,
                            p.orth.co == p.orth_swapped.co,
                            p.field_containment
                        );
                    }
                }
                Err(e) => println!("  pair table unavailable: {e}"),
            }
            let set = maximal_orthogonal_set(&pairing, &engine, &artin, &ty);
            let members: Vec<String> = set.members.iter().map(|m| m.to_string()).collect();
            println!(
                "maximal orthogonal set: {{{}}} (size {}, p-rank {}, generates: {})",
                members.join(", "),
                set.members.len(),
                ty.rank(),
                set.generates
            );
            if ty.rank() == 2 && ty.exponents() == [1, 1] {
                let c = caplab::kummer::genset_counterexample(ty.p())?;
                println!(
                    "generator-set counterexample: a={} a'={} b={} : a⊥a'={} minimal={} a⊥b(co1)={}",
                    c.a, c.a_prime, c.b, c.a_orth_aprime.co, c.minimal_genset, c.a_orth_b.co1
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Transfer { source, delta } => {
            let group = load_group(&source)?;
            let whole = group.full_subgroup();
            let gamma_prime = derived_subgroup(&group, &whole);
            println!(
                "group {} (order {}), derived subgroup order {}",
                group.name(),
                group.order(),
                gamma_prime.order()
            );
            let ab = AbelianQuotient::new(&group, &whole, &gamma_prime)?;
            println!("abelianization {}", ab.ty);
            if let Some(delta_spec) = delta {
                let gens = parse_delta(&ab.ty, &delta_spec)?;
                let image = caplab::group::span(&ab.ty, &gens)?;
                let delta_sub = ab.preimage(&image);
                let map = transfer(&group, &delta_sub)?;
                println!(
                    "transfer to |Δ| = {} (index {}): target {}, matrix {:?}",
                    delta_sub.order(),
                    group.order() / delta_sub.order(),
                    map.target,
                    map.matrix
                );
                println!(
                    "kernel {:?} (order {}), transversal independent: {}",
                    map.kernel(),
                    map.kernel().order(),
                    map.transversal_independent
                );
            } else {
                let pit = pit_audit(&group)?;
                println!(
                    "principal-ideal audit: metabelian={} transfer-to-derived-trivial={}",
                    pit.metabelian, pit.transfer_trivial
                );
                let (rows, exhaustive) = miyake_audit(&group, 128)?;
                let all_ok = rows.iter().all(|r| r.ok);
                println!(
                    "divisibility audit over {} admissible subgroups ({}): {}",
                    rows.len(),
                    if exhaustive { "exhaustive" } else { "deterministic family" },
                    if all_ok { "all pass" } else { "FAILURES" }
                );
                for strat in Strategy::ALL {
                    let rows = caplab::transfer::psi_vs_transfer_audit(&group, strat)?;
                    for r in rows {
                        println!(
                            "  [{}] class {}: complement={} capitulates={} lift-order-preserved={}",
                            strat.name(),
                            r.class,
                            r.complement_defined,
                            r.capitulates,
                            r.lift_order_preserved
                        );
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Replay { witness } => {
            let text = std::fs::read_to_string(&witness)?;
            if text.trim().is_empty() {
                return Err("witness file is empty".into());
            }
            let row: ClaimRow = serde_json::from_str(&text)?;
            let outcome = replay(&row, &SuiteConfig::default())?;
            println!(
                "claim {} on {}: recorded {:?}, recomputed {:?} -> {}",
                row.claim,
                row.instance.group,
                outcome.expected,
                outcome.recomputed,
                if outcome.reproduced { "reproduced" } else { "MISMATCH" }
            );
            if outcome.reproduced {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
    }
}

fn parse_coords(text: &str) -> Result<Vec<u64>, Box<dyn std::error::Error>> {
    let trimmed = text.trim().trim_start_matches('(').trim_end_matches(')');
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    Ok(trimmed
        .split(',')
        .map(|t| t.trim().parse::<u64>())
        .collect::<Result<_, _>>()?)
}

fn parse_delta(
    ty: &PGroupType,
    text: &str,
) -> Result<Vec<caplab::group::GroupElement>, Box<dyn std::error::Error>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| Ok(ty.element(&parse_coords(s)?)?))
        .collect()
}

fn load_group(source: &str) -> Result<FiniteGroup, Box<dyn std::error::Error>> {
    if std::path::Path::new(source).exists() {
        let text = std::fs::read_to_string(source)?;
        let name = std::path::Path::new(source)
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("file-group");
        return Ok(FiniteGroup::from_perm_file(name, &text, DEFAULT_GROUP_BOUND)?);
    }
    Ok(named_group(source)?)
}
