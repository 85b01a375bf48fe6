//! Browser bindings: job reports and space-time diagrams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use wasm_bindgen::prelude::*;

use pexp_core::additive::{apply_additive, GroupConfig};
use pexp_core::job::{parse_job, run, Command, Format, JobKind, JobSpec};
use pexp_core::oracle::{step, FiniteConfig};

fn job_error(e: pexp_core::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Runs `command` (`decide`, `charpoly`, `invariants`, `oracle`, `embed`,
/// `crosscheck`) on a JSON job and returns the report.
#[wasm_bindgen]
pub fn report(command: &str, job: &str, structured: bool) -> Result<String, JsError> {
    let cmd: Command = command.parse().map_err(job_error)?;
    let spec = parse_job(job).map_err(job_error)?;
    let mut opts = spec.options.resolve().map_err(job_error)?;
    opts.format = if structured { Format::Structured } else { Format::Text };
    Ok(run(cmd, &spec, &opts).map_err(job_error)?.body)
}

/// Per-coordinate alphabet sizes of a cell.
fn alphabet(spec: &JobSpec) -> Vec<u64> {
    match &spec.kind {
        JobKind::Lca(r) => vec![r.modulus.get(); r.n],
        JobKind::Additive(r) => r.group().orders().to_vec(),
    }
}

fn encode(cell: Option<&[u64]>, radix: &[u64]) -> u64 {
    match cell {
        None => 0,
        Some(v) => v.iter().zip(radix).rev().fold(0, |acc, (&x, &b)| acc * b + x),
    }
}

/// Evolves a configuration for `steps` steps and returns JSON
/// `{"symbols": s, "width": w, "rows": [[...], ...]}` where each row lists
/// the cells at positions `-w/2 .. w - w/2` encoded as integers below `s`.
/// With `random` the initial cells in the middle quarter are drawn from
/// `seed`; otherwise a single `e_1` sits at position 0.
pub fn spacetime_json(job: &str, width: u32, steps: u32, seed: u32, random: bool) -> Result<String, String> {
    let spec = parse_job(job).map_err(|e| e.to_string())?;
    let radix = alphabet(&spec);
    let symbols: u64 = radix.iter().product();
    let lo = -(width as i64 / 2);
    let hi = lo + width as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed as u64);
    let init: Vec<(i64, Vec<u64>)> = if random {
        let quarter = (width as i64 / 8).max(1);
        (-quarter..quarter)
            .map(|p| (p, radix.iter().map(|&b| rng.gen_range(0..b)).collect()))
            .collect()
    } else {
        let mut e1 = vec![0; radix.len()];
        e1[0] = 1;
        vec![(0, e1)]
    };
    let mut rows = Vec::with_capacity(steps as usize + 1);
    match &spec.kind {
        JobKind::Lca(rule) => {
            let mut c = FiniteConfig::zero(rule.n, rule.modulus);
            for (p, v) in &init {
                c.set(*p, v);
            }
            for t in 0..=steps {
                rows.push((lo..hi).map(|p| encode(c.get(p), &radix)).collect::<Vec<_>>());
                if t < steps {
                    c = step(rule, &c);
                }
            }
        }
        JobKind::Additive(rule) => {
            let mut c = GroupConfig::new();
            for (p, v) in init {
                c.set(p, v);
            }
            for t in 0..=steps {
                rows.push((lo..hi).map(|p| encode(c.get(p), &radix)).collect::<Vec<_>>());
                if t < steps {
                    c = apply_additive(rule, &c);
                }
            }
        }
    }
    Ok(json!({"symbols": symbols, "width": width, "rows": rows}).to_string())
}

#[wasm_bindgen]
pub fn spacetime(job: &str, width: u32, steps: u32, seed: u32, random: bool) -> Result<String, JsError> {
    spacetime_json(job, width, steps, seed, random).map_err(|e| JsError::new(&e))
}
