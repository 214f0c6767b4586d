//! On-disk shapes. Field names and column orders here are part of the
//! tool's stable interface.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;
use tmfg::{BuildStats, CliqueTree, FilterResult, Method, MoveCounts, VertexId, WeightedEdge};

use crate::manifest::RunManifest;
use crate::{CliError, Result};

/// A weight written with 17 significant digits, which is enough for any
/// `f64` to read back to the same bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weight(pub f64);

pub fn fmt_weight(x: f64) -> String {
    format!("{x:.16e}")
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return Err(serde::ser::Error::custom(format!("non-finite weight {}", self.0)));
        }
        RawValue::from_string(fmt_weight(self.0))
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        f64::deserialize(d).map(Weight)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResultFormat {
    #[default]
    Json,
    EdgeTsv,
    Dot,
}

impl ResultFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ResultFormat::Json => "json",
            ResultFormat::EdgeTsv => "tsv",
            ResultFormat::Dot => "dot",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableFormat {
    #[default]
    Json,
    Table,
}

impl TableFormat {
    pub fn extension(self) -> &'static str {
        match self {
            TableFormat::Json => "json",
            TableFormat::Table => "txt",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub id: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub i: u32,
    pub j: u32,
    pub weight: Weight,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct StatsRecord {
    pub score_evaluations: u64,
    pub planarity_tests: u64,
    pub base_fallback: bool,
}

/// A filtered graph as written by `tmfg filter`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDoc {
    pub method: Method,
    pub p: usize,
    pub nodes: Vec<Node>,
    pub edges: Vec<EdgeRecord>,
    pub total_weight: Weight,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cliques: Option<Vec<[u32; 4]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separators: Option<Vec<[u32; 3]>>,
    /// Parent clique index of each clique; `null` for the root.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parents: Option<Vec<Option<usize>>>,
    pub moves: MoveCounts,
    pub stats: StatsRecord,
    pub manifest: RunManifest,
}

fn ids<const N: usize>(vs: &[VertexId; N]) -> [u32; N] {
    vs.map(|v| v.0)
}

impl ResultDoc {
    pub fn new(r: &FilterResult, names: Option<&[String]>, manifest: RunManifest) -> Self {
        let ct = r.clique_tree.as_ref();
        ResultDoc {
            method: r.method,
            p: r.p,
            nodes: (0..r.p)
                .map(|i| Node {
                    id: i as u32,
                    name: names.map(|n| n[i].clone()),
                })
                .collect(),
            edges: r
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    i: e.i.0,
                    j: e.j.0,
                    weight: Weight(e.weight),
                })
                .collect(),
            total_weight: Weight(r.total_weight),
            cliques: ct.map(|t| t.cliques().iter().map(ids).collect()),
            separators: ct.map(|t| t.separators().iter().map(ids).collect()),
            parents: ct.map(|t| t.parents().to_vec()),
            moves: r.moves,
            stats: StatsRecord {
                score_evaluations: r.stats.score_evaluations,
                planarity_tests: r.stats.planarity_tests,
                base_fallback: r.stats.base_fallback,
            },
            manifest,
        }
    }

    /// Rebuilds the library value for validation. Timing and the face
    /// registry are not stored and come back empty.
    pub fn to_result(&self) -> Result<FilterResult> {
        let clique_tree = match (&self.cliques, &self.separators, &self.parents) {
            (Some(c), Some(s), Some(par)) => Some(CliqueTree::from_parts(
                c.iter().map(|q| q.map(VertexId)).collect(),
                s.iter().map(|q| q.map(VertexId)).collect(),
                par.clone(),
            )),
            (None, None, None) => None,
            _ => {
                return Err(CliError::Input(
                    "cliques, separators and parents must appear together".into(),
                ))
            }
        };
        if self.nodes.len() != self.p {
            return Err(CliError::Input(format!(
                "{} nodes listed for p = {}",
                self.nodes.len(),
                self.p
            )));
        }
        Ok(FilterResult {
            method: self.method,
            p: self.p,
            edges: self
                .edges
                .iter()
                .map(|e| WeightedEdge {
                    i: VertexId(e.i),
                    j: VertexId(e.j),
                    weight: e.weight.0,
                })
                .collect(),
            total_weight: self.total_weight.0,
            clique_tree,
            triangulation: None,
            elapsed: Default::default(),
            moves: self.moves,
            stats: BuildStats {
                score_evaluations: self.stats.score_evaluations,
                bookkeeping_total: None,
                planarity_tests: self.stats.planarity_tests,
                base_fallback: self.stats.base_fallback,
            },
        })
    }

    pub fn render(&self, format: ResultFormat) -> Vec<u8> {
        match format {
            ResultFormat::Json => json_bytes(self),
            ResultFormat::EdgeTsv => {
                let mut s = format!("# manifest {}\n# i\tj\tweight\n", self.manifest.to_line());
                for e in &self.edges {
                    let _ = writeln!(s, "{}\t{}\t{}", e.i, e.j, fmt_weight(e.weight.0));
                }
                s.into_bytes()
            }
            ResultFormat::Dot => {
                let mut s = format!("// manifest {}\ngraph {} {{\n", self.manifest.to_line(), dot_id(self.method));
                for n in &self.nodes {
                    let _ = writeln!(s, "  {};", n.id);
                }
                for e in &self.edges {
                    let _ = writeln!(s, "  {} -- {} [label=\"{}\"];", e.i, e.j, fmt_weight(e.weight.0));
                }
                s.push_str("}\n");
                s.into_bytes()
            }
        }
    }
}

fn dot_id(m: Method) -> String {
    m.name().replace('-', "_")
}

/// Pretty JSON with a trailing newline.
pub fn json_bytes(value: &impl Serialize) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("document serializes");
    out.push(b'\n');
    out
}

/// Finds the manifest in any output of the tool: the `manifest` field of a
/// JSON document, or a leading `# manifest` / `// manifest` line.
pub fn extract_manifest(bytes: &[u8]) -> Result<RunManifest> {
    let text = std::str::from_utf8(bytes).map_err(|e| CliError::Input(format!("not UTF-8: {e}")))?;
    let first = text.lines().next().unwrap_or_default();
    let line = first
        .strip_prefix("# manifest ")
        .or_else(|| first.strip_prefix("// manifest "));
    let parsed = match line {
        Some(json) => serde_json::from_str(json),
        None => serde_json::from_str::<serde_json::Value>(text).and_then(|mut v| {
            serde_json::from_value(v.get_mut("manifest").map(serde_json::Value::take).unwrap_or_default())
        }),
    };
    parsed.map_err(|e| CliError::Input(format!("no readable run manifest: {e}")))
}
