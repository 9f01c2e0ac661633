use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use liftlab::category_kernel::library_entry;
use liftlab::measure_algebra::SetTransform;
use liftlab::partial_magma::PartialMagma;
use liftlab::{MSet, MeasureSpace, Rational};
use serde::Deserialize;

/// A parsed input file, tagged by `kind`.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputDocument {
    MeasureSpace {
        weights: Vec<String>,
        #[serde(default)]
        transform: Option<Vec<u64>>,
    },
    PartialMagma {
        n: usize,
        table: Vec<Vec<Option<usize>>>,
    },
    Category {
        n: usize,
        table: Vec<Vec<Option<usize>>>,
        #[serde(default)]
        check_regular: bool,
    },
    Scenario(Scenario),
}

/// A named pipeline with its parameters.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(tag = "pipeline", rename_all = "snake_case")]
pub enum Scenario {
    /// Natural transformations between functors `source → target`.
    Natequiv { source: MagmaRef, target: MagmaRef },
    /// Every pair `(|Z|, |X|)` from the two lists, with probe spaces of
    /// sizes `1..=max(|Z|, probe_max)`.
    YonedaRoundtrip {
        z: Vec<usize>,
        x: Vec<usize>,
        #[serde(default = "default_probe_max")]
        probe_max: usize,
    },
}

fn default_probe_max() -> usize {
    3
}

/// A magma given by library name or inline table.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum MagmaRef {
    Named(String),
    Table {
        n: usize,
        table: Vec<Vec<Option<usize>>>,
    },
}

impl MagmaRef {
    pub fn resolve(&self, max_elems: usize) -> Result<PartialMagma> {
        match self {
            MagmaRef::Named(name) => library_entry(name)
                .map(|e| e.magma)
                .ok_or_else(|| anyhow!("no library category named {name:?}")),
            MagmaRef::Table { n, table } => magma(*n, table, max_elems),
        }
    }
}

/// Reads a document from a path, or from stdin when the path is `-`.
pub fn read_document(path: &Path) -> Result<InputDocument> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_document(&text)
}

pub fn parse_document(text: &str) -> Result<InputDocument> {
    serde_json::from_str(text).context("input is not a valid document")
}

/// Parses `"3"`, `"-1"`, `"0.25"` or `"2/7"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let fraction = match t.split_once('.') {
        Some((int, frac)) => {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                bail!("malformed decimal {s:?}");
            }
            let int = if int.is_empty() || int == "-" || int == "+" {
                format!("{int}0")
            } else {
                int.to_string()
            };
            format!("{int}{frac}/1{}", "0".repeat(frac.len()))
        }
        None => t.to_string(),
    };
    let r = Rational::from_str(&fraction).map_err(|_| anyhow!("malformed number {s:?}"))?;
    Ok(r)
}

pub fn measure_space(weights: &[String], max_atoms: usize) -> Result<MeasureSpace> {
    if weights.len() > max_atoms {
        bail!(
            "{} atoms exceed the cap of {max_atoms} (raise it with --max-atoms)",
            weights.len()
        );
    }
    let weights = weights
        .iter()
        .map(|w| parse_rational(w))
        .collect::<Result<Vec<_>>>()?;
    Ok(MeasureSpace::new(weights)?)
}

pub fn transform(space: &MeasureSpace, table: &[u64]) -> Result<SetTransform> {
    Ok(SetTransform::new(
        space,
        table.iter().map(|&m| MSet(m)).collect(),
    )?)
}

pub fn magma(n: usize, table: &[Vec<Option<usize>>], max_elems: usize) -> Result<PartialMagma> {
    if n > max_elems {
        bail!("{n} elements exceed the cap of {max_elems} (raise it with --max-elems)");
    }
    Ok(PartialMagma::new(n, table)?)
}
