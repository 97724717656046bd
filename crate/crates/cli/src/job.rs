//! Job files: a JSON description of one CLI invocation.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Parser;
use serde::Deserialize;
use serde_json::Value;

use crate::cli::{Cli, Command};
use crate::input::read_json;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    /// Subcommand words, e.g. `"verify"` or `"catalog gl2 quer"`.
    pub command: String,
    #[serde(default)]
    pub scalar: Option<String>,
    #[serde(default)]
    pub arity: Option<usize>,
    /// Input files, relative to the job file.
    #[serde(default)]
    pub inputs: Vec<PathBuf>,
    #[serde(default)]
    pub trials: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub parallel: bool,
    /// Positional arguments, such as shift-deformation tuples.
    #[serde(default)]
    pub args: Vec<String>,
    /// Command-specific flags by long name, e.g. `{"block-size": 2}`.
    #[serde(default)]
    pub options: BTreeMap<String, Value>,
}

impl JobSpec {
    /// The equivalent command line, with paths resolved against `base`.
    pub fn to_argv(&self, base: &Path) -> Result<Vec<OsString>> {
        let words: Vec<&str> = self.command.split_whitespace().collect();
        match words.first() {
            None => bail!("field \"command\" is empty"),
            Some(&"job") => bail!("field \"command\": jobs cannot start other jobs"),
            Some(_) => {}
        }
        let resolve = |p: &Path| if p.is_absolute() { p.to_path_buf() } else { base.join(p) };
        let mut argv: Vec<OsString> = vec!["polyadic".into()];
        argv.extend(words.iter().map(OsString::from));
        let mut flag = |name: &str, value: String| {
            argv.push(format!("--{name}").into());
            argv.push(value.into());
        };
        if let Some(s) = &self.scalar {
            flag("scalar", s.clone());
        }
        if let Some(n) = self.arity {
            flag("arity", n.to_string());
        }
        if let Some(t) = self.trials {
            flag("trials", t.to_string());
        }
        if let Some(s) = self.seed {
            flag("seed", s.to_string());
        }
        if let Some(o) = &self.output {
            flag("out", resolve(o).to_string_lossy().into_owned());
        }
        for p in &self.inputs {
            flag("input", resolve(p).to_string_lossy().into_owned());
        }
        for (key, value) in &self.options {
            let text = match value {
                Value::Bool(true) => {
                    argv.push(format!("--{key}").into());
                    continue;
                }
                Value::Bool(false) | Value::Null => continue,
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                Value::Array(items) => items
                    .iter()
                    .map(|v| match v {
                        Value::String(s) => Ok(s.clone()),
                        Value::Number(n) => Ok(n.to_string()),
                        other => bail!("field \"options.{key}\": unsupported list item {other}"),
                    })
                    .collect::<Result<Vec<_>>>()?
                    .join(","),
                Value::Object(_) => bail!("field \"options.{key}\": objects are not flags"),
            };
            argv.push(format!("--{key}").into());
            argv.push(text.into());
        }
        if self.parallel {
            argv.push("--parallel".into());
        }
        argv.extend(self.args.iter().map(OsString::from));
        Ok(argv)
    }
}

/// Parses a job file into the command line it stands for.
pub fn load(path: &Path) -> Result<Cli> {
    let spec: JobSpec = read_json(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let argv = spec.to_argv(base).with_context(|| format!("job {}", path.display()))?;
    let cli = Cli::try_parse_from(argv)
        .map_err(|e| anyhow::anyhow!("{}", e.render().to_string().trim_end()))
        .with_context(|| format!("invalid job {}", path.display()))?;
    if matches!(cli.command, Command::Job(_)) {
        bail!("job {}: jobs cannot start other jobs", path.display());
    }
    Ok(cli)
}
