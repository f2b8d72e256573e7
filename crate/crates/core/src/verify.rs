//! Exhaustive verification oracles: syndrome distinctness, decoder
//! completeness, count cross-checks, and fault injection.
//!
//! These sweeps are the artifact's ground truth. They enumerate every
//! in-model error pattern, so a pass is a certificate for the given
//! parameters, not a sample. Failures always carry a concrete
//! counterexample.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds;
use crate::codes::{BurstCode, DecodeOutcome, SyndromeTable};
use crate::indexing::to_value;
use crate::models::{count_l1, count_linf, count_straight, visit_errors, BurstModel, ModelKind};
use crate::{Caps, Result};

/// Outcome of one verification sweep.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub counterexample: Option<String>,
    pub patterns: u64,
    pub wall: Duration,
}

impl CheckResult {
    fn new(name: &str, start: Instant, patterns: u64, counterexample: Option<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            pass: counterexample.is_none(),
            counterexample,
            patterns,
            wall: start.elapsed(),
        }
    }
}

/// A bundle of checks for one code, deterministic given (spec, seed).
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub label: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("verify {} (seed {})\n", self.label, self.seed);
        for c in &self.checks {
            out.push_str(&format!(
                "  {:<28} {}  patterns={} wall={:.3}s{}\n",
                c.name,
                if c.pass { "pass" } else { "FAIL" },
                c.patterns,
                c.wall.as_secs_f64(),
                c.counterexample
                    .as_deref()
                    .map(|ce| format!("  counterexample: {ce}"))
                    .unwrap_or_default()
            ));
        }
        out
    }

    pub fn render_csv(&self) -> String {
        let mut out = String::from("check,pass,patterns,wall_seconds,counterexample\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},{:.6},{}\n",
                c.name,
                c.pass,
                c.patterns,
                c.wall.as_secs_f64(),
                c.counterexample.as_deref().unwrap_or("")
            ));
        }
        out
    }
}

/// Every in-model pattern must map to a distinct syndrome.
pub fn verify_syndrome_distinctness(code: &BurstCode, caps: &Caps) -> Result<CheckResult> {
    let start = Instant::now();
    let model = code.model();
    let mut seen = HashMap::new();
    let mut counterexample = None;
    let patterns = visit_errors(
        code.side(),
        code.spec().d,
        &model,
        caps.max_cells,
        &mut |pat| {
            if counterexample.is_some() {
                return;
            }
            let syn = code.syndrome_of_pattern(pat);
            if let Some(prev) = seen.insert(syn, pat.clone()) {
                counterexample = Some(format!("{prev} and {pat} share a syndrome"));
            }
        },
    )?;
    Ok(CheckResult::new(
        "syndrome-distinctness",
        start,
        patterns,
        counterexample,
    ))
}

/// For every in-model pattern, the decoder must return exactly its support,
/// on the zero codeword and `samples` seeded random codewords.
pub fn verify_decoder(
    code: &BurstCode,
    samples: usize,
    seed: u64,
    caps: &Caps,
) -> Result<CheckResult> {
    let start = Instant::now();
    let model = code.model();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut words = vec![crate::codes::ArrayWord::zero(code.side(), code.spec().d)?];
    for _ in 0..samples {
        words.push(code.random_codeword(&mut rng));
    }
    let mut counterexample = None;
    let patterns = visit_errors(
        code.side(),
        code.spec().d,
        &model,
        caps.max_cells,
        &mut |pat| {
            if counterexample.is_some() {
                return;
            }
            let expected = DecodeOutcome::from_pattern(pat);
            for (wi, word) in words.iter().enumerate() {
                let mut received = word.clone();
                for pos in pat.positions() {
                    let cell = to_value(pos, code.side()).expect("in box") as usize;
                    received.flip(cell);
                }
                let got = code.decode(&received).expect("length matches");
                if got != expected {
                    counterexample =
                        Some(format!("pattern {pat} on codeword {wi} decoded as {got}"));
                    return;
                }
            }
        },
    )?;
    Ok(CheckResult::new(
        "decoder-completeness",
        start,
        patterns,
        counterexample,
    ))
}

/// The algorithmic decoder must agree with the syndrome-table decoder on
/// every in-model syndrome.
pub fn verify_table_agreement(code: &BurstCode, caps: &Caps) -> Result<CheckResult> {
    let start = Instant::now();
    let table = SyndromeTable::build(code, caps)?;
    let model = code.model();
    let mut counterexample = None;
    let patterns = visit_errors(
        code.side(),
        code.spec().d,
        &model,
        caps.max_cells,
        &mut |pat| {
            if counterexample.is_some() {
                return;
            }
            let syn = code.syndrome_of_pattern(pat);
            let algo = code.decode_syndrome(&syn);
            let tab = table.decode(&syn);
            if algo != tab {
                counterexample = Some(format!("{pat}: algorithmic {algo} vs table {tab}"));
            }
        },
    )?;
    Ok(CheckResult::new(
        "table-agreement",
        start,
        patterns,
        counterexample,
    ))
}

/// Enumerated pattern counts must match the closed forms and respect the
/// model nesting.
pub fn cross_check_counts(n: i64, b: i64, d: usize, caps: &Caps) -> Result<CheckResult> {
    let start = Instant::now();
    let mut counterexample = None;
    let mut patterns = 0u64;
    let mut enumerated = |kind: ModelKind| -> Result<u128> {
        let model = BurstModel::new(kind, b)?;
        let mut count = 0u128;
        patterns += visit_errors(n, d, &model, caps.max_cells, &mut |_| count += 1)?;
        Ok(count)
    };
    let e_linf = enumerated(ModelKind::Linf)?;
    let e_l1 = enumerated(ModelKind::L1)?;
    let e_str = enumerated(ModelKind::Straight)?;
    let f_linf = count_linf(n, b, d)?;
    let f_str = count_straight(n, b, d)?;
    let f_l1 = count_l1(n, b, d, caps.max_cells)?;
    if e_linf != f_linf {
        counterexample = Some(format!("Linf: enumerated {e_linf} vs formula {f_linf}"));
    } else if e_str != f_str {
        counterexample = Some(format!("straight: enumerated {e_str} vs formula {f_str}"));
    } else if e_l1 != f_l1 {
        counterexample = Some(format!("L1: enumerated {e_l1} vs count {f_l1}"));
    } else if !(e_str <= e_l1 && e_l1 <= e_linf) {
        counterexample = Some(format!("nesting violated: {e_str}, {e_l1}, {e_linf}"));
    }
    Ok(CheckResult::new(
        "count-cross-check",
        start,
        patterns,
        counterexample,
    ))
}

/// Ball-packing bound: the rank of H can never be below log2 of the pattern
/// count.
pub fn verify_ball_packing(code: &BurstCode, caps: &Caps) -> Result<CheckResult> {
    let start = Instant::now();
    let model = code.model();
    let mut count = 0u128;
    let patterns = visit_errors(
        code.side(),
        code.spec().d,
        &model,
        caps.max_cells,
        &mut |_| count += 1,
    )?;
    let needed = (count as f64).log2();
    let counterexample = if (code.rank() as f64) < needed - 1e-9 {
        Some(format!(
            "rank {} below log2(|E|) = {:.4}",
            code.rank(),
            needed
        ))
    } else {
        None
    };
    Ok(CheckResult::new(
        "ball-packing",
        start,
        patterns,
        counterexample,
    ))
}

/// Measured excess redundancy must not exceed the matching corollary bound.
pub fn verify_xi_bound(code: &BurstCode) -> Result<CheckResult> {
    let start = Instant::now();
    let (bound, label) = bounds::matching_upper_bound(code.spec());
    let xi = code.xi() as f64;
    let counterexample = if xi > bound + 1e-9 {
        Some(format!("measured xi {xi} exceeds {label} = {bound:.4}"))
    } else {
        None
    };
    Ok(CheckResult::new("xi-vs-bound", start, 0, counterexample))
}

/// Zero out each column of H in turn; every fault must be caught by the
/// distinctness or the decoder sweep. Returns (detected, columns).
pub fn fault_injection_sweep(
    code: &BurstCode,
    samples: usize,
    seed: u64,
    caps: &Caps,
) -> Result<(usize, usize)> {
    let mut detected = 0;
    for cell in 0..code.ncells() {
        let broken = code.with_zeroed_column(cell, caps);
        let caught = match broken {
            // a collision during any internal table rebuild is itself a catch
            Err(_) => true,
            Ok(broken) => {
                !verify_syndrome_distinctness(&broken, caps)?.pass
                    || !verify_decoder(&broken, samples, seed, caps)?.pass
            }
        };
        if caught {
            detected += 1;
        }
    }
    Ok((detected, code.ncells()))
}

/// The full per-code suite.
pub fn run_suite(code: &BurstCode, samples: usize, seed: u64, caps: &Caps) -> Result<VerifyReport> {
    let spec = code.spec();
    let label = format!(
        "{}/{} n={} b={} D={}",
        spec.model_kind().name(),
        spec.variant.name(),
        spec.n,
        spec.b,
        spec.d
    );
    let checks = vec![
        verify_syndrome_distinctness(code, caps)?,
        verify_decoder(code, samples, seed, caps)?,
        verify_table_agreement(code, caps)?,
        verify_ball_packing(code, caps)?,
        verify_xi_bound(code)?,
    ];
    Ok(VerifyReport {
        label,
        seed,
        checks,
    })
}
