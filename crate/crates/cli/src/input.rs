//! Reading JSON inputs and textual tuples.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use polyadic_core::io::BlockShiftJson;
use polyadic_core::scalar::TextScalar;
use polyadic_core::shiftdeform::{AdditiveGroup, ShiftTuple};
use polyadic_core::{BlockShiftMatrix, Domain};
use serde::de::DeserializeOwned;
use serde_json::Value;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("malformed JSON in {}", path.display()))
}

/// Reads a block-shift matrix, checking it against `--arity` when given.
pub fn read_blockshift<S: TextScalar>(
    path: &Path,
    domain: &Domain,
    arity: Option<usize>,
) -> Result<BlockShiftMatrix<S>> {
    let json: BlockShiftJson = read_json(path)?;
    let q = json
        .to_blockshift(domain)
        .with_context(|| format!("invalid block-shift matrix in {}", path.display()))?;
    if let Some(n) = arity {
        if n != q.arity() {
            bail!("--arity {n} contradicts arity {} in {}", q.arity(), path.display());
        }
    }
    Ok(q)
}

fn component_text(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => bail!("tuple component must be a string or number, got {other}"),
    }
}

/// Tuples from positional `a,b,c` arguments followed by those in a JSON file.
pub fn read_tuples<A: AdditiveGroup>(inline: &[String], path: Option<&Path>) -> Result<Vec<ShiftTuple<A>>> {
    let mut out = Vec::new();
    for (i, t) in inline.iter().enumerate() {
        let items: Vec<String> = t.split(',').map(|s| s.trim().to_string()).collect();
        out.push(ShiftTuple::parse(&items).with_context(|| format!("tuple {}: '{t}'", i + 1))?);
    }
    if let Some(p) = path {
        let raw: Vec<Vec<Value>> = read_json(p)?;
        for (i, t) in raw.iter().enumerate() {
            let items = t.iter().map(component_text).collect::<Result<Vec<_>>>()?;
            out.push(
                ShiftTuple::parse(&items)
                    .with_context(|| format!("tuple {} in {}", i + 1, p.display()))?,
            );
        }
    }
    if out.is_empty() {
        bail!("no tuples given");
    }
    Ok(out)
}
