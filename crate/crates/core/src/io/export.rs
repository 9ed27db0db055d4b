//! JSON, Graphviz and plain-text renderings of an atlas.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::atlas::{build_atlas, Atlas};
use crate::coxeter::{format_word, WeylElement, WeylGroup};
use crate::error::{Error, Result};
use crate::io::case::CaseFile;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasDocument {
    pub metadata: Metadata,
    pub strata: Vec<StratumEntry>,
    /// Covering relations `(lower, upper)` of the closure order.
    pub poset_edges: Vec<(usize, usize)>,
    #[serde(default)]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub group: String,
    pub case: CaseFile,
    pub weyl_order: u64,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
    pub definition_degree: usize,
    pub moduli_dim: usize,
    pub double_coset_count: usize,
    pub mu_ordinary: bool,
    pub mu_ordinary_readings: BTreeMap<String, bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumEntry {
    pub id: usize,
    pub rep: Vec<usize>,
    pub orbit: Vec<Vec<usize>>,
    pub upper: Vec<usize>,
    pub dim: usize,
    pub codim: usize,
    pub eo_fiber: Vec<EoEntry>,
    pub single_eo: bool,
    pub closure: Vec<usize>,
    pub is_maximal: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub siegel_a: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EoEntry {
    pub word: Vec<usize>,
    pub length: usize,
}

impl AtlasDocument {
    pub fn from_atlas(atlas: &Atlas) -> Self {
        let group = atlas.group();
        let word = |w: &WeylElement| group.reduced_word(w);
        let strata = atlas
            .strata
            .iter()
            .map(|s| StratumEntry {
                id: s.id,
                rep: word(&s.rep),
                orbit: s.orbit.iter().map(word).collect(),
                upper: word(&s.upper),
                dim: s.dim,
                codim: s.codim,
                eo_fiber: s
                    .eo_fiber
                    .iter()
                    .map(|(w, length)| EoEntry { word: word(w), length: *length })
                    .collect(),
                single_eo: s.single_eo,
                closure: s.closure.clone(),
                is_maximal: s.is_maximal,
                siegel_a: s.siegel_a,
            })
            .collect();
        AtlasDocument {
            metadata: Metadata {
                group: group.spec().to_string(),
                case: CaseFile::from_case(&atlas.case),
                weyl_order: u64::try_from(group.order()).unwrap_or(u64::MAX),
                j: atlas.j.to_vec(),
                k: atlas.k.to_vec(),
                definition_degree: atlas.degree,
                moduli_dim: atlas.moduli_dim,
                double_coset_count: atlas.double_coset_count(),
                mu_ordinary: atlas.mu_ordinary.verdict(),
                mu_ordinary_readings: atlas
                    .mu_ordinary
                    .readings()
                    .iter()
                    .map(|(k, v)| (k.to_string(), *v))
                    .collect(),
            },
            strata,
            poset_edges: atlas.orbit_poset.hasse_edges(),
            notes: atlas.notes.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("atlas documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| Error::Case(format!("{}: {}", e.path(), e.inner())))
    }

    /// Turns every stored word back into a group element, rejecting words that
    /// are not reduced.
    pub fn resolve_words(&self, group: &WeylGroup) -> Result<Vec<Vec<WeylElement>>> {
        self.strata
            .iter()
            .map(|s| {
                s.orbit
                    .iter()
                    .map(|w| {
                        let element = group.from_word(w)?;
                        if element.length() != w.len() {
                            return Err(Error::Case(format!("word {} is not reduced", format_word(w))));
                        }
                        Ok(element)
                    })
                    .collect()
            })
            .collect()
    }

    /// Rebuilds the atlas from the embedded case and checks it reproduces
    /// this document.
    pub fn rebuild(&self) -> Result<Atlas> {
        let atlas = build_atlas(&self.metadata.case.to_case()?)?;
        self.resolve_words(atlas.group())?;
        if &AtlasDocument::from_atlas(&atlas) != self {
            return Err(Error::Case("document does not match the atlas of its case".into()));
        }
        Ok(atlas)
    }
}

/// Hasse diagram of the closure order, bottom to top.
pub fn emit_dot(atlas: &Atlas) -> String {
    let group = atlas.group();
    let mut out = String::from("digraph strata {\n  rankdir=BT;\n  node [shape=box];\n");
    for s in &atlas.strata {
        let _ = writeln!(
            out,
            "  s{} [label=\"{} / dim {} / #EO {}\"];",
            s.id,
            group.word_string(&s.rep),
            s.dim,
            s.eo_fiber.len()
        );
    }
    for (a, b) in atlas.orbit_poset.hasse_edges() {
        let _ = writeln!(out, "  s{a} -> s{b};");
    }
    out.push_str("}\n");
    out
}

fn set_string(ids: &[usize]) -> String {
    let inner: Vec<String> = ids.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn emit_table(atlas: &Atlas) -> String {
    let group = atlas.group();
    let siegel = atlas.strata.iter().any(|s| s.siegel_a.is_some());
    let mut out = String::new();
    let _ = writeln!(out, "group          {}", group.spec());
    let _ = writeln!(out, "frobenius      {:?}", atlas.case.phi.permutation());
    let _ = writeln!(out, "J              {}", atlas.j);
    let _ = writeln!(out, "K              {}", atlas.k);
    let _ = writeln!(out, "degree         {}", atlas.degree);
    let _ = writeln!(out, "moduli dim     {}", atlas.moduli_dim);
    let _ = writeln!(out, "mu-ordinary    {}", atlas.mu_ordinary.verdict());
    let _ = writeln!(out, "strata         {} ({} double cosets)", atlas.strata.len(), atlas.double_coset_count());
    for note in &atlas.notes {
        let _ = writeln!(out, "note           {note}");
    }
    out.push('\n');

    let rows: Vec<Vec<String>> = atlas
        .strata
        .iter()
        .map(|s| {
            let mut row = vec![
                s.id.to_string(),
                group.word_string(&s.rep),
                s.orbit.len().to_string(),
                s.dim.to_string(),
                s.codim.to_string(),
                s.eo_fiber.len().to_string(),
                if s.single_eo { "yes" } else { "no" }.to_string(),
                set_string(&s.closure),
            ];
            if siegel {
                row.push(s.siegel_a.map_or_else(|| "-".into(), |a| a.to_string()));
            }
            row
        })
        .collect();
    let mut header: Vec<String> = ["id", "rep", "orbit", "dim", "codim", "#EO", "single", "closure"]
        .iter()
        .map(|h| h.to_string())
        .collect();
    if siegel {
        header.push("a".into());
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|c| rows.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap_or(0))
        .collect();
    for row in std::iter::once(&header).chain(rows.iter()) {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(cell, w)| format!("{cell:<w$}")).collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::siegel_case;
    use crate::io::case::preset;

    #[test]
    fn document_round_trip() {
        for name in ["siegel:2", "hilbert:2", "gu:2,1:inert"] {
            let atlas = build_atlas(&preset(name).unwrap()).unwrap();
            let doc = AtlasDocument::from_atlas(&atlas);
            let back = AtlasDocument::from_json(&doc.to_json()).unwrap();
            assert_eq!(back, doc);
            back.rebuild().unwrap();
        }
    }

    #[test]
    fn tampered_document_is_rejected() {
        let atlas = build_atlas(&siegel_case(2).unwrap()).unwrap();
        let mut doc = AtlasDocument::from_atlas(&atlas);
        doc.strata[1].dim = 7;
        assert!(doc.rebuild().is_err());
        let mut doc = AtlasDocument::from_atlas(&atlas);
        doc.strata[1].orbit[0] = vec![1, 1];
        assert!(doc.resolve_words(atlas.group()).is_err());
    }

    #[test]
    fn dot_output() {
        let atlas = build_atlas(&siegel_case(2).unwrap()).unwrap();
        let dot = emit_dot(&atlas);
        assert!(dot.contains("s0 [label=\"e / dim 0 / #EO 1\"];"));
        assert!(dot.contains("s1 [label=\"s1 / dim 2 / #EO 2\"];"));
        assert!(dot.contains("s0 -> s1;") && dot.contains("s1 -> s2;"));
        assert!(!dot.contains("s0 -> s2;"));
    }

    #[test]
    fn single_stratum_dot() {
        let case = crate::io::case::parse_case(
            r#"{"group": {"factors": [{"type": "A", "rank": 3}]}, "mu": {"pairings": [0, 0, 0]}}"#,
        )
        .unwrap();
        let dot = emit_dot(&build_atlas(&case).unwrap());
        assert!(dot.contains("s0 [label=\"e / dim 0 / #EO 1\"];"));
        assert!(!dot.contains("->"));
    }

    #[test]
    fn table_output() {
        let atlas = build_atlas(&siegel_case(2).unwrap()).unwrap();
        let table = emit_table(&atlas);
        assert!(table.contains("moduli dim     3"));
        let last = table.lines().last().unwrap();
        let cells: Vec<&str> = last.split_whitespace().collect();
        assert_eq!(cells, vec!["2", "s1s0s1", "1", "3", "0", "1", "yes", "{0,1,2}", "0"]);
    }
}
