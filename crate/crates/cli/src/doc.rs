//! JSON documents exchanged by the command line tool.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use mv_core::bz::{self, BzDatum};
use mv_core::{sln, Family, RootSystem, Weight};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    pub family: Family,
    pub rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KeyFormat {
    #[default]
    Weight,
    Subset,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LusztigEntry {
    /// 1-based reduced word.
    pub word: Vec<usize>,
    pub n: Vec<i64>,
}

/// A polytope given by its hyperplane values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeDocument {
    pub group: Group,
    #[serde(default)]
    pub keys: KeyFormat,
    /// `M_gamma` keyed by chamber weight.
    pub m: BTreeMap<String, i64>,
    /// `mu_w` for every Weyl group element, in the engine's element order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valid: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lusztig: Vec<LusztigEntry>,
}

pub fn weight_key(w: &Weight) -> String {
    w.0.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn subset_key(subset: &[usize]) -> String {
    subset.iter().map(usize::to_string).collect()
}

pub fn chamber_key(sys: &RootSystem, chamber: usize, keys: KeyFormat) -> String {
    match keys {
        KeyFormat::Weight => weight_key(&sys.chambers()[chamber].weight),
        KeyFormat::Subset => subset_key(&sln::chamber_subset(sys, chamber)),
    }
}

pub fn parse_coords(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().with_context(|| format!("bad integer {t:?} in {s:?}")))
        .collect()
}

fn parse_key(sys: &RootSystem, key: &str, keys: KeyFormat) -> Result<usize> {
    match keys {
        KeyFormat::Weight => {
            let w = parse_coords(key)?;
            sys.chamber_by_weight(&w).ok_or_else(|| anyhow!("{key:?} is not a chamber weight"))
        }
        KeyFormat::Subset => {
            let subset: Vec<usize> = key
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| anyhow!("bad subset key {key:?}")))
                .collect::<Result<_>>()?;
            sln::subset_chamber(sys, &subset).ok_or_else(|| anyhow!("{key:?} is not a proper subset"))
        }
    }
}

pub fn check_keys(sys: &RootSystem, keys: KeyFormat) -> Result<()> {
    if keys == KeyFormat::Subset {
        if sys.cartan().family() != Some(Family::A) {
            bail!("subset keys are only available in type A");
        }
        if sys.rank() >= 9 {
            bail!("subset keys need single-digit labels");
        }
    }
    Ok(())
}

impl PolytopeDocument {
    pub fn new(sys: &RootSystem, group: Group, m: &BzDatum, keys: KeyFormat) -> Self {
        let values = (0..sys.num_chambers())
            .map(|c| (chamber_key(sys, c, keys), m.values[c]))
            .collect();
        PolytopeDocument {
            group,
            keys,
            m: values,
            vertices: None,
            valid: None,
            lusztig: Vec::new(),
        }
    }

    /// Fills in vertices, validity and Lusztig data for the given 0-based words.
    pub fn annotate(mut self, sys: &RootSystem, m: &BzDatum, words: &[Vec<usize>]) -> Self {
        let report = bz::check(sys, m);
        self.valid = Some(report.is_valid());
        if report.edges.is_empty() {
            self.vertices = bz::vertices(sys, m).ok().map(|v| v.into_iter().map(|c| c.0).collect());
        }
        for w in words {
            if let Ok(d) = bz::lusztig_datum(sys, m, w) {
                self.lusztig.push(LusztigEntry {
                    word: w.iter().map(|i| i + 1).collect(),
                    n: d.n,
                });
            }
        }
        self
    }

    pub fn datum(&self, sys: &RootSystem) -> Result<BzDatum> {
        check_keys(sys, self.keys)?;
        let mut values = vec![None; sys.num_chambers()];
        for (key, &v) in &self.m {
            let c = parse_key(sys, key, self.keys)?;
            if values[c].replace(v).is_some() {
                bail!("chamber weight {key:?} given twice");
            }
        }
        let missing: Vec<String> = values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_none())
            .map(|(c, _)| chamber_key(sys, c, self.keys))
            .collect();
        if !missing.is_empty() {
            bail!("missing chamber weights: {}", missing.join(" "));
        }
        Ok(BzDatum::new(sys, values.into_iter().flatten().collect())?)
    }
}

/// Reads one document, a JSON array of documents, or one document per line.
pub fn read_documents(text: &str) -> Result<Vec<PolytopeDocument>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        return serde_json::from_str(text).context("malformed JSON");
    }
    let mut out = Vec::new();
    let stream = serde_json::Deserializer::from_str(text).into_iter::<PolytopeDocument>();
    for doc in stream {
        out.push(doc.context("malformed JSON")?);
    }
    if out.is_empty() {
        bail!("no documents in input");
    }
    Ok(out)
}
