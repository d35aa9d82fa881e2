//! Machine-readable claim reports.
//!
//! Every audited statement gets a claim id; every `(claim, instance)`
//! evaluation becomes one row with a verdict and, on failure, a witness
//! that replays. Serialization is canonical: rows are sorted by a total
//! key and the JSON layout is fixed, so identical runs produce identical
//! bytes.

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Claim identifiers.
///
/// Theorem-status claims are established mathematics: a failure is an
/// implementation bug and fails the run. Paper-status claims are the
/// audited novel assertions: their verdicts are findings and never gate
/// the exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClaimId {
    /// bijectivity of the subgroup-to-field map
    #[serde(rename = "TC1-bijectivity")]
    Tc1Bijectivity,
    /// compatibility with lattice meet and join
    #[serde(rename = "TC2-cint")]
    Tc2Cint,
    /// degree and generation properties of the cyclic values
    #[serde(rename = "TC3-degree-generation")]
    Tc3DegreeGeneration,
    /// capitulation of maximal classes in their canonical fields, through
    /// the transfer model
    #[serde(rename = "TC4-capitulation-transfer")]
    Tc4CapitulationTransfer,
    /// independence of the cyclic value from the chosen maximal root
    #[serde(rename = "LI1-lemma-int-independence")]
    Li1Independence,
    /// the complement hypothesis: p-indivisible is claimed sufficient
    #[serde(rename = "CC1-complement-hypothesis")]
    Cc1ComplementHypothesis,
    /// symmetry of the orthogonality relation
    #[serde(rename = "OC1-orth-symmetry")]
    Oc1OrthSymmetry,
    /// equivalence of the complement-membership and pairing tests
    #[serde(rename = "OC2-co-co1-equivalence")]
    Oc2CoCo1Equivalence,
    /// maximal orthogonal sets have p-rank many members
    #[serde(rename = "GS1-genset-size")]
    Gs1GensetSize,
    /// the minimal-generating-set counterexample reproduces
    #[serde(rename = "GS2-genset-counterexample")]
    Gs2GensetCounterexample,
    /// divisibility of the capitulation kernel by the degree
    #[serde(rename = "MY1-miyake")]
    My1Miyake,
    /// triviality of the transfer to the derived subgroup
    #[serde(rename = "PIT1-principal-ideal")]
    Pit1PrincipalIdeal,
    /// abelian transfer equals the index-power map
    #[serde(rename = "AO1-abelian-oracle")]
    Ao1AbelianOracle,
    /// transfer matrices are transversal-independent
    #[serde(rename = "TV1-transversal-independence")]
    Tv1TransversalIndependence,
    /// equivariance of the construction under relabeling, and agreement
    /// between the two complement strategies
    #[serde(rename = "CN1-canonicity")]
    Cn1Canonicity,
    /// exploratory capitulation-kernel quotient data
    #[serde(rename = "FR1-kernel-quotient")]
    Fr1KernelQuotient,
}

impl ClaimId {
    pub const ALL: [ClaimId; 16] = [
        ClaimId::Tc1Bijectivity,
        ClaimId::Tc2Cint,
        ClaimId::Tc3DegreeGeneration,
        ClaimId::Tc4CapitulationTransfer,
        ClaimId::Li1Independence,
        ClaimId::Cc1ComplementHypothesis,
        ClaimId::Oc1OrthSymmetry,
        ClaimId::Oc2CoCo1Equivalence,
        ClaimId::Gs1GensetSize,
        ClaimId::Gs2GensetCounterexample,
        ClaimId::My1Miyake,
        ClaimId::Pit1PrincipalIdeal,
        ClaimId::Ao1AbelianOracle,
        ClaimId::Tv1TransversalIndependence,
        ClaimId::Cn1Canonicity,
        ClaimId::Fr1KernelQuotient,
    ];

    /// The ledger ids whose presence the completeness check requires.
    pub const LEDGER: [ClaimId; 12] = [
        ClaimId::Tc1Bijectivity,
        ClaimId::Tc2Cint,
        ClaimId::Tc3DegreeGeneration,
        ClaimId::Tc4CapitulationTransfer,
        ClaimId::Li1Independence,
        ClaimId::Cc1ComplementHypothesis,
        ClaimId::Oc1OrthSymmetry,
        ClaimId::Oc2CoCo1Equivalence,
        ClaimId::Gs1GensetSize,
        ClaimId::Gs2GensetCounterexample,
        ClaimId::My1Miyake,
        ClaimId::Pit1PrincipalIdeal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Tc1Bijectivity => "TC1-bijectivity",
            ClaimId::Tc2Cint => "TC2-cint",
            ClaimId::Tc3DegreeGeneration => "TC3-degree-generation",
            ClaimId::Tc4CapitulationTransfer => "TC4-capitulation-transfer",
            ClaimId::Li1Independence => "LI1-lemma-int-independence",
            ClaimId::Cc1ComplementHypothesis => "CC1-complement-hypothesis",
            ClaimId::Oc1OrthSymmetry => "OC1-orth-symmetry",
            ClaimId::Oc2CoCo1Equivalence => "OC2-co-co1-equivalence",
            ClaimId::Gs1GensetSize => "GS1-genset-size",
            ClaimId::Gs2GensetCounterexample => "GS2-genset-counterexample",
            ClaimId::My1Miyake => "MY1-miyake",
            ClaimId::Pit1PrincipalIdeal => "PIT1-principal-ideal",
            ClaimId::Ao1AbelianOracle => "AO1-abelian-oracle",
            ClaimId::Tv1TransversalIndependence => "TV1-transversal-independence",
            ClaimId::Cn1Canonicity => "CN1-canonicity",
            ClaimId::Fr1KernelQuotient => "FR1-kernel-quotient",
        }
    }

    pub fn parse(s: &str) -> Option<ClaimId> {
        ClaimId::ALL.into_iter().find(|c| c.as_str() == s)
    }

    /// Whether a failing verdict should fail the whole run.
    pub fn is_theorem_status(self) -> bool {
        matches!(
            self,
            ClaimId::Gs1GensetSize
                | ClaimId::My1Miyake
                | ClaimId::Pit1PrincipalIdeal
                | ClaimId::Ao1AbelianOracle
                | ClaimId::Tv1TransversalIndependence
        )
    }
}

impl std::fmt::Display for ClaimId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
    Error,
}

/// Instance descriptor: which group, strategy and seeds a row refers to.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Instance {
    /// group spec (`p:e1,e2,...`) or catalog name (`D8`, ...)
    pub group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairing_seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub artin_seed: Option<u64>,
    /// audits tag p = 2 results separately
    pub p2: bool,
    /// sub-instance detail (an element, a subgroup, a field)
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Instance {
    pub fn group(group: &str, p2: bool) -> Instance {
        Instance {
            group: group.to_string(),
            strategy: None,
            pairing_seed: None,
            artin_seed: None,
            p2,
            detail: None,
        }
    }

    pub fn with_strategy(mut self, s: crate::psi::Strategy) -> Instance {
        self.strategy = Some(s.name().to_string());
        self
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Instance {
        self.detail = Some(d.into());
        self
    }

    pub fn with_pairing_seed(mut self, seed: u64) -> Instance {
        self.pairing_seed = Some(seed);
        self
    }

    pub fn with_artin_seed(mut self, seed: u64) -> Instance {
        self.artin_seed = Some(seed);
        self
    }
}

/// One evaluated `(claim, instance)` with verdict and optional witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimRow {
    pub claim: ClaimId,
    pub instance: Instance,
    pub verdict: Verdict,
    /// structured witness; present for failures, optional data otherwise
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl ClaimRow {
    pub fn new(claim: ClaimId, instance: Instance, verdict: Verdict) -> ClaimRow {
        ClaimRow { claim, instance, verdict, witness: None }
    }

    pub fn with_witness(mut self, w: Value) -> ClaimRow {
        self.witness = Some(w);
        self
    }

    fn sort_key(&self) -> (String, Instance) {
        (self.claim.as_str().to_string(), self.instance.clone())
    }
}

/// Suite configuration. All bounds are explicit so reports are
/// reproducible from their own config echo.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    /// primes of the abelian audit catalog
    pub primes: Vec<u64>,
    /// maximum group order of the abelian audit catalog
    pub max_order: u64,
    /// complement strategies to audit
    pub strategies: Vec<String>,
    /// number of random-pairing / relabeling seeds per audit
    pub seeds: u64,
    /// nonabelian catalog names for the transfer audits
    pub transfer_names: Vec<String>,
    /// abelian groups up to this order join the transfer catalog
    pub transfer_max_order: u64,
    /// admissible subgroups are enumerated exhaustively up to this
    /// abelianization order; beyond it a deterministic family is audited
    pub transfer_exhaustive_cap: u64,
    /// worker threads (0 = library default); an execution detail with no
    /// effect on the output, so it is not echoed into reports
    #[serde(skip, default)]
    pub jobs: usize,
    /// flip the n-th theorem-status verdict (fault-injection self-test)
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inject_fault: Option<u64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            primes: vec![2, 3, 5],
            max_order: 81,
            strategies: crate::psi::Strategy::ALL.iter().map(|s| s.name().to_string()).collect(),
            seeds: 2,
            transfer_names: crate::transfer::NAMED_GROUPS.iter().map(|s| s.to_string()).collect(),
            transfer_max_order: 64,
            transfer_exhaustive_cap: 128,
            jobs: 0,
        inject_fault: None,
        }
    }
}

/// A full report file: config echo plus rows in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: SuiteConfig,
    pub rows: Vec<ClaimRow>,
    pub summary: Vec<ClaimSummary>,
    /// exit contract: no errors and every theorem-status claim passes
    pub theorem_claims_pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimSummary {
    pub claim: ClaimId,
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub error: usize,
}

impl Report {
    pub fn assemble(config: SuiteConfig, mut rows: Vec<ClaimRow>) -> Report {
        rows.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        if let Some(seed) = config.inject_fault {
            let theorem_rows: Vec<usize> = rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.claim.is_theorem_status() && r.verdict == Verdict::Pass)
                .map(|(i, _)| i)
                .collect();
            if !theorem_rows.is_empty() {
                let target = theorem_rows[(seed as usize) % theorem_rows.len()];
                rows[target].verdict = Verdict::Fail;
                rows[target].witness =
                    Some(serde_json::json!({ "fault_injected": true, "seed": seed }));
            }
        }
        let mut summary: Vec<ClaimSummary> = Vec::new();
        for claim in ClaimId::ALL {
            let mut s = ClaimSummary {
                claim,
                pass: 0,
                fail: 0,
                not_applicable: 0,
                error: 0,
            };
            for row in rows.iter().filter(|r| r.claim == claim) {
                match row.verdict {
                    Verdict::Pass => s.pass += 1,
                    Verdict::Fail => s.fail += 1,
                    Verdict::NotApplicable => s.not_applicable += 1,
                    Verdict::Error => s.error += 1,
                }
            }
            if s.pass + s.fail + s.not_applicable + s.error > 0 {
                summary.push(s);
            }
        }
        let no_errors = rows.iter().all(|r| r.verdict != Verdict::Error);
        let theorems_ok = rows
            .iter()
            .filter(|r| r.claim.is_theorem_status())
            .all(|r| r.verdict != Verdict::Fail);
        Report {
            tool: "caplab".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            rows,
            summary,
            theorem_claims_pass: no_errors && theorems_ok,
        }
    }

    /// Exit-status contract: 0 iff no errors and all theorem-status
    /// claims pass; paper-status findings never gate.
    pub fn exit_ok(&self) -> bool {
        self.theorem_claims_pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(claim: ClaimId, group: &str, verdict: Verdict) -> ClaimRow {
        ClaimRow::new(claim, Instance::group(group, false), verdict)
    }

    #[test]
    fn report_round_trips() {
        let rows = vec![
            row(ClaimId::My1Miyake, "D8", Verdict::Pass),
            row(ClaimId::Tc1Bijectivity, "3:1,1", Verdict::Fail)
                .with_witness(serde_json::json!({"collision": ["a", "b"]})),
        ];
        let report = Report::assemble(SuiteConfig::default(), rows);
        let json = report.to_json();
        let back = Report::from_json(&json).unwrap();
        assert_eq!(report, back);
    }

    #[test]
    fn rows_are_sorted_canonically() {
        let rows = vec![
            row(ClaimId::Tc2Cint, "3:2", Verdict::Pass),
            row(ClaimId::Cc1ComplementHypothesis, "3:3,1", Verdict::Fail),
            row(ClaimId::Tc2Cint, "2:1,1", Verdict::Pass),
        ];
        let report = Report::assemble(SuiteConfig::default(), rows);
        let claims: Vec<&str> = report.rows.iter().map(|r| r.claim.as_str()).collect();
        assert_eq!(claims, vec!["CC1-complement-hypothesis", "TC2-cint", "TC2-cint"]);
        assert_eq!(report.rows[1].instance.group, "2:1,1");
    }

    #[test]
    fn exit_contract() {
        // paper-status failures do not gate
        let report = Report::assemble(
            SuiteConfig::default(),
            vec![
                row(ClaimId::Tc1Bijectivity, "3:1,1", Verdict::Fail),
                row(ClaimId::My1Miyake, "D8", Verdict::Pass),
            ],
        );
        assert!(report.exit_ok());
        // theorem-status failures gate
        let report = Report::assemble(
            SuiteConfig::default(),
            vec![row(ClaimId::My1Miyake, "D8", Verdict::Fail)],
        );
        assert!(!report.exit_ok());
        // errors gate
        let report = Report::assemble(
            SuiteConfig::default(),
            vec![row(ClaimId::Tc2Cint, "3:2", Verdict::Error)],
        );
        assert!(!report.exit_ok());
    }

    #[test]
    fn fault_injection_flips_one_theorem_row() {
        let rows = vec![
            row(ClaimId::My1Miyake, "D8", Verdict::Pass),
            row(ClaimId::Pit1PrincipalIdeal, "D8", Verdict::Pass),
            row(ClaimId::Tc2Cint, "3:2", Verdict::Pass),
        ];
        let mut config = SuiteConfig::default();
        config.inject_fault = Some(0);
        let report = Report::assemble(config, rows);
        assert!(!report.exit_ok());
        let flipped: Vec<_> =
            report.rows.iter().filter(|r| r.verdict == Verdict::Fail).collect();
        assert_eq!(flipped.len(), 1);
        assert!(flipped[0].claim.is_theorem_status());
    }

    #[test]
    fn claim_id_strings_parse_back() {
        for c in ClaimId::ALL {
            assert_eq!(ClaimId::parse(c.as_str()), Some(c));
        }
    }
}
