//! Parallel certification of every implemented descriptor up to an order bound.

use std::time::{Duration, Instant};

use pqham_core::engine::{instance, prove_instance, verify, FamilyDescriptor, Options};
use pqham_core::Error;
use rayon::prelude::*;

use crate::format::{aligned, csv};

/// Outcome for one descriptor.
#[derive(Clone, Debug)]
pub struct SurveyRow {
    pub descriptor: FamilyDescriptor,
    pub valency: Option<usize>,
    /// Strategy name on success.
    pub outcome: Result<&'static str, Error>,
    pub elapsed: Duration,
}

impl SurveyRow {
    pub fn certified(&self) -> bool {
        self.outcome.is_ok()
    }

    /// Certified, or shown non-hamiltonian by a completed search.
    pub fn settled(&self) -> bool {
        matches!(self.outcome, Ok(_) | Err(Error::NotHamiltonian))
    }
}

fn run_one(desc: &FamilyDescriptor, opts: &Options) -> SurveyRow {
    let start = Instant::now();
    let (valency, outcome) = match instance(desc) {
        Ok(inst) => {
            let outcome = match prove_instance(desc, &inst, opts) {
                Ok(cert) if verify(&inst.graph, &cert) => Ok(cert.strategy.name()),
                Ok(_) => Err(Error::BadCertificate(String::from("failed verification"))),
                Err(e) => Err(e),
            };
            (inst.graph.regular_valency(), outcome)
        }
        Err(e) => (None, Err(e)),
    };
    SurveyRow {
        descriptor: desc.clone(),
        valency,
        outcome,
        elapsed: start.elapsed(),
    }
}

/// Certifies each descriptor on `jobs` threads (0 picks the rayon default); rows keep input order.
pub fn run(
    descs: &[FamilyDescriptor],
    opts: &Options,
    jobs: usize,
) -> Result<Vec<SurveyRow>, rayon::ThreadPoolBuildError> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    Ok(pool.install(|| descs.par_iter().map(|d| run_one(d, opts)).collect()))
}

fn cells(r: &SurveyRow, timings: bool) -> [String; 7] {
    let (status, strategy) = match &r.outcome {
        Ok(s) => ("ok", *s),
        Err(_) => ("FAIL", "-"),
    };
    [
        r.descriptor.family().to_string(),
        r.descriptor.order().to_string(),
        r.valency.map_or(String::from("-"), |v| v.to_string()),
        status.to_string(),
        strategy.to_string(),
        if timings {
            r.elapsed.as_millis().to_string()
        } else {
            String::from("-")
        },
        r.descriptor.to_string(),
    ]
}

const HEADER: [&str; 7] = [
    "family",
    "order",
    "valency",
    "status",
    "strategy",
    "ms",
    "descriptor",
];

/// Aligned report with a summary and every failure listed. Runtimes appear only with `timings`,
/// so that the default report is reproducible byte for byte.
pub fn report_text(rows: &[SurveyRow], timings: bool) -> String {
    let table: Vec<[String; 7]> = rows.iter().map(|r| cells(r, timings)).collect();
    let mut out = aligned(HEADER, &table);
    let failed: Vec<&SurveyRow> = rows.iter().filter(|r| !r.certified()).collect();
    out.push_str(&format!(
        "certified {} of {}\n",
        rows.len() - failed.len(),
        rows.len()
    ));
    for r in failed {
        out.push_str(&format!(
            "failed {}: {}\n",
            r.descriptor,
            r.outcome.as_ref().unwrap_err()
        ));
    }
    out
}

/// CSV report; descriptor and message columns have commas replaced by spaces.
pub fn report_csv(rows: &[SurveyRow], timings: bool) -> String {
    let table: Vec<[String; 7]> = rows
        .iter()
        .map(|r| {
            let (status, detail) = match &r.outcome {
                Ok(s) => ("ok", s.to_string()),
                Err(e) => ("fail", e.to_string()),
            };
            [
                r.descriptor.family().to_string(),
                r.descriptor.order().to_string(),
                r.valency.map_or(String::new(), |v| v.to_string()),
                status.to_string(),
                detail.replace(',', " "),
                if timings {
                    r.elapsed.as_millis().to_string()
                } else {
                    String::new()
                },
                r.descriptor.to_string().replace(',', " "),
            ]
        })
        .collect();
    csv(
        [
            "family",
            "order",
            "valency",
            "status",
            "strategy",
            "ms",
            "descriptor",
        ],
        &table,
    )
}
