//! Column extraction vs. elimination, per spectral class.

use std::time::{Duration, Instant};

use ch_eigen::oracle::{eigensolve_reference, generate_case, spans_equal};
use ch_eigen::{
    analyze, char_poly, eigenvalues_exact, verify_structure, ExactMatrix, ExactStructure,
    SpectralClass, TolerancePolicy,
};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub count: usize,
    pub classes: Vec<SpectralClass>,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            count: 10_000,
            classes: SpectralClass::ALL.to_vec(),
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Mismatch {
    pub class: SpectralClass,
    pub seed: u64,
    pub matrix: ExactMatrix,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct ClassReport {
    pub class: SpectralClass,
    pub count: usize,
    pub span_equal: usize,
    pub column_median: Duration,
    pub oracle_median: Duration,
}

impl ClassReport {
    /// Oracle time over column time; above 1 means the column method is faster.
    pub fn ratio(&self) -> f64 {
        self.oracle_median.as_secs_f64() / self.column_median.as_secs_f64().max(1e-12)
    }
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub classes: Vec<ClassReport>,
    pub mismatches: Vec<Mismatch>,
}

impl BenchReport {
    pub fn total(&self) -> usize {
        self.classes.iter().map(|c| c.count).sum()
    }

    pub fn span_equal(&self) -> usize {
        self.classes.iter().map(|c| c.span_equal).sum()
    }

    pub fn gate_passed(&self) -> bool {
        self.mismatches.is_empty() && self.span_equal() == self.total()
    }

    pub fn to_json(&self) -> Value {
        let gate = json!({
            "passed": self.gate_passed(),
            "span_equal": self.span_equal(),
            "total": self.total(),
            "mismatches": self.mismatches.iter().map(|m| json!({
                "class": m.class.to_string(),
                "seed": m.seed,
                "matrix": m.matrix.to_string(),
                "reason": m.reason,
            })).collect::<Vec<_>>(),
        });
        if !self.gate_passed() {
            return json!({ "gate": gate });
        }
        json!({
            "gate": gate,
            "classes": self.classes.iter().map(|c| json!({
                "class": c.class.to_string(),
                "count": c.count,
                "span_equal": c.span_equal,
                "column_median_ns": c.column_median.as_nanos() as u64,
                "oracle_median_ns": c.oracle_median.as_nanos() as u64,
                "ratio": c.ratio(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "correctness gate: {}/{} span-equal{}\n",
            self.span_equal(),
            self.total(),
            if self.gate_passed() { "" } else { " (FAILED)" }
        );
        for m in &self.mismatches {
            out.push_str(&format!(
                "  mismatch {} seed {}: {} {}\n",
                m.class, m.seed, m.matrix, m.reason
            ));
        }
        if !self.gate_passed() {
            out.push_str("timings withheld\n");
            return out;
        }
        out.push_str(&format!(
            "{:<24} {:>7} {:>10} {:>14} {:>14} {:>7}\n",
            "class", "count", "span-equal", "column median", "oracle median", "ratio"
        ));
        for c in &self.classes {
            out.push_str(&format!(
                "{:<24} {:>7} {:>10} {:>14} {:>14} {:>7.2}\n",
                c.class.to_string(),
                c.count,
                c.span_equal,
                format!("{:.2?}", c.column_median),
                format!("{:.2?}", c.oracle_median),
                c.ratio()
            ));
        }
        out
    }
}

pub fn case_seed(base: u64, class: SpectralClass, index: usize) -> u64 {
    let class_index = SpectralClass::ALL.iter().position(|c| *c == class).unwrap() as u64;
    base.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(class_index << 40)
        .wrapping_add(index as u64)
}

struct Sample {
    column: Duration,
    oracle: Duration,
    failure: Option<String>,
}

fn oracle_structure(a: &ExactMatrix) -> ch_eigen::Result<ExactStructure> {
    let spectrum = eigenvalues_exact(&char_poly(a))?;
    eigensolve_reference(a, &spectrum)
}

/// Checks that both structures agree eigenvalue by eigenvalue and that the
/// column result passes every exact identity.
pub fn compare(
    a: &ExactMatrix,
    column: &ExactStructure,
    oracle: &ExactStructure,
) -> Result<(), String> {
    if column.class != oracle.class {
        return Err(format!("class {} vs oracle {}", column.class, oracle.class));
    }
    let report = verify_structure(a, column, &TolerancePolicy::default());
    if let Some(check) = report.failures().next() {
        return Err(format!("check failed: {}", check.name));
    }
    if column.eigenspaces.len() != oracle.eigenspaces.len() {
        return Err("different number of eigenvalues".into());
    }
    for (c, o) in column.eigenspaces.iter().zip(&oracle.eigenspaces) {
        if c.eigenvalue != o.eigenvalue || c.algebraic != o.algebraic {
            return Err(format!(
                "eigenvalue {} vs oracle {}",
                c.eigenvalue, o.eigenvalue
            ));
        }
        if !spans_equal(&c.basis, &o.basis).map_err(|e| e.to_string())? {
            return Err(format!(
                "eigenspace for {} differs from oracle",
                c.eigenvalue
            ));
        }
    }
    Ok(())
}

fn run_one(a: &ExactMatrix) -> Sample {
    let tol = TolerancePolicy::default();
    let start = Instant::now();
    let column = analyze(a, &tol);
    let column_time = start.elapsed();
    let start = Instant::now();
    let oracle = oracle_structure(a);
    let oracle_time = start.elapsed();
    let failure = match (column, oracle) {
        (Ok(c), Ok(o)) => compare(a, &c, &o).err(),
        (Err(e), _) => Some(format!("column method: {e}")),
        (_, Err(e)) => Some(format!("oracle: {e}")),
    };
    Sample {
        column: column_time,
        oracle: oracle_time,
        failure,
    }
}

fn median(mut xs: Vec<Duration>) -> Duration {
    if xs.is_empty() {
        return Duration::ZERO;
    }
    xs.sort_unstable();
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2
    }
}

pub fn run_bench(config: &BenchConfig) -> BenchReport {
    let mut classes = Vec::new();
    let mut mismatches = Vec::new();
    for &class in &config.classes {
        let cases: Vec<(u64, ExactMatrix)> = (0..config.count)
            .into_par_iter()
            .map(|i| {
                let seed = case_seed(config.seed, class, i);
                (seed, generate_case(class, seed).1)
            })
            .collect();
        let samples: Vec<Sample> = cases.par_iter().map(|(_, a)| run_one(a)).collect();
        let mut span_equal = 0;
        for ((seed, a), s) in cases.iter().zip(&samples) {
            match &s.failure {
                None => span_equal += 1,
                Some(reason) => mismatches.push(Mismatch {
                    class,
                    seed: *seed,
                    matrix: a.clone(),
                    reason: reason.clone(),
                }),
            }
        }
        classes.push(ClassReport {
            class,
            count: config.count,
            span_equal,
            column_median: median(samples.iter().map(|s| s.column).collect()),
            oracle_median: median(samples.iter().map(|s| s.oracle).collect()),
        });
    }
    BenchReport {
        classes,
        mismatches,
    }
}
