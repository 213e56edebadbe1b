//! Deterministic campaign reports: results are keyed by (input, n) and
//! emitted sorted, so identical configs produce byte-identical output.

use serde::Serialize;

use fareymul::ContinuedFraction;

#[derive(Serialize, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub input: String,
    pub n: u64,
    pub detail: String,
}

pub struct CampaignReport {
    claim: &'static str,
    passes: Vec<(String, u64, String)>,
    violations: Vec<Violation>,
}

impl CampaignReport {
    pub fn new(claim: &'static str) -> Self {
        Self { claim, passes: Vec::new(), violations: Vec::new() }
    }

    pub fn pass(&mut self, cf: &ContinuedFraction, n: u64, detail: &str) {
        self.passes.push((cf.to_string(), n, detail.to_string()));
    }

    pub fn fail(&mut self, cf: &ContinuedFraction, n: u64, detail: &str) {
        self.violations.push(Violation {
            input: cf.to_string(),
            n,
            detail: detail.to_string(),
        });
    }

    pub fn all_passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn emit(&mut self, json: bool) {
        self.passes.sort();
        self.violations.sort();
        if json {
            let value = serde_json::json!({
                "schema": "fareymul/verify/1",
                "claim": self.claim,
                "checked": self.passes.len() + self.violations.len(),
                "passed": self.passes.len(),
                "violations": self.violations,
            });
            println!("{value}");
        } else {
            println!(
                "claim: {} — {} checked, {} passed, {} failed",
                self.claim,
                self.passes.len() + self.violations.len(),
                self.passes.len(),
                self.violations.len()
            );
            for v in &self.violations {
                println!("FAIL {} n={}: {}", v.input, v.n, v.detail);
            }
        }
    }
}
