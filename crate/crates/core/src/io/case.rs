//! Case files and named presets.

use serde::{Deserialize, Serialize};

use crate::atlas::{siegel_case, CaseOptions, CocharSpec, ParabolicInput, PelCase};
use crate::coxeter::{TypeSubset, DEFAULT_ELEMENT_BOUND};
use crate::error::{Error, Result};
use crate::root_data::{DynkinSpec, Factor, FactorType};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseFile {
    pub group: GroupSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frobenius: Option<FrobeniusSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<MuSection>,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<usize>>,
    #[serde(default)]
    pub options: OptionsSection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    pub factors: Vec<FactorEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorEntry {
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrobeniusSection {
    pub permutation: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuSection {
    pub pairings: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSection {
    #[serde(default = "default_true")]
    pub minuscule_check: bool,
    #[serde(default = "default_bound")]
    pub element_bound: u64,
}

fn default_true() -> bool {
    true
}

fn default_bound() -> u64 {
    DEFAULT_ELEMENT_BOUND
}

impl Default for OptionsSection {
    fn default() -> Self {
        OptionsSection {
            minuscule_check: true,
            element_bound: DEFAULT_ELEMENT_BOUND,
        }
    }
}

impl CaseFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            if path == "." {
                Error::Case(inner.to_string())
            } else {
                Error::Case(format!("{path}: {inner}"))
            }
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("case files always serialize")
    }

    pub fn to_case(&self) -> Result<PelCase> {
        let factors = self
            .group
            .factors
            .iter()
            .map(|f| Ok(Factor { kind: FactorType::from_letter(&f.kind)?, rank: f.rank }))
            .collect::<Result<Vec<_>>>()?;
        let spec = DynkinSpec::new(factors)?;
        let parabolic = match (&self.mu, &self.j) {
            (Some(mu), None) => ParabolicInput::Cocharacter(CocharSpec::from_signed(&mu.pairings)?),
            (None, Some(j)) => ParabolicInput::Subset(TypeSubset::checked(j.iter().copied(), spec.rank())?),
            (Some(_), Some(_)) => return Err(Error::Case("give exactly one of `mu` and `J`, not both".into())),
            (None, None) => return Err(Error::Case("missing `mu` (or `J`)".into())),
        };
        let options = CaseOptions {
            minuscule_check: self.options.minuscule_check,
            element_bound: self.options.element_bound,
        };
        PelCase::new(spec, self.frobenius.as_ref().map(|f| f.permutation.clone()), parabolic, options)
    }

    pub fn from_case(case: &PelCase) -> Self {
        let factors = case
            .spec
            .factors()
            .iter()
            .map(|f| FactorEntry { kind: f.kind.letter().to_string(), rank: f.rank })
            .collect();
        let (mu, j) = match &case.parabolic {
            ParabolicInput::Cocharacter(mu) => (
                Some(MuSection { pairings: mu.pairings().iter().map(|&m| i64::from(m)).collect() }),
                None,
            ),
            ParabolicInput::Subset(j) => (None, Some(j.to_vec())),
        };
        CaseFile {
            group: GroupSection { factors },
            frobenius: (!case.phi.is_identity()).then(|| FrobeniusSection {
                permutation: case.phi.permutation().to_vec(),
            }),
            mu,
            j,
            options: OptionsSection {
                minuscule_check: case.options.minuscule_check,
                element_bound: case.options.element_bound,
            },
        }
    }
}

/// Parses a JSON case file.
pub fn parse_case(text: &str) -> Result<PelCase> {
    CaseFile::from_json(text)?.to_case()
}

fn parse_number(preset: &str, text: &str) -> Result<usize> {
    text.trim().parse().map_err(|_| Error::UnknownPreset(preset.to_string()))
}

/// Named cases: `siegel:g`, `hilbert:d`, `gu:r,s:inert` and `gu:r,s:split`.
pub fn preset(name: &str) -> Result<PelCase> {
    let unknown = || Error::UnknownPreset(name.to_string());
    let mut parts = name.split(':');
    let family = parts.next().unwrap_or_default();
    let args: Vec<&str> = parts.collect();
    match (family, args.as_slice()) {
        ("siegel", [g]) => siegel_case(parse_number(name, g)?),
        ("hilbert", [d]) => hilbert_case(parse_number(name, d)?),
        ("gu", [signature, kind]) => {
            let (r, s) = signature.split_once(',').ok_or_else(unknown)?;
            let inert = match *kind {
                "inert" => true,
                "split" => false,
                _ => return Err(unknown()),
            };
            unitary_case(parse_number(name, r)?, parse_number(name, s)?, inert)
        }
        _ => Err(unknown()),
    }
}

/// The preset names exercised by the test suite: Siegel up to genus 5,
/// Hilbert up to degree 4 and every unitary signature with `r + s <= 6`.
pub fn standard_presets() -> Vec<String> {
    let mut names: Vec<String> = (1..=5).map(|g| format!("siegel:{g}")).collect();
    names.extend((1..=4).map(|d| format!("hilbert:{d}")));
    for n in 2..=6 {
        for r in 0..=n {
            for kind in ["inert", "split"] {
                names.push(format!("gu:{r},{}:{kind}", n - r));
            }
        }
    }
    names
}

/// `A1^d` with Frobenius cycling the factors.
pub fn hilbert_case(d: usize) -> Result<PelCase> {
    if d == 0 {
        return Err(Error::Case("the Hilbert degree must be positive".into()));
    }
    let spec = DynkinSpec::new(vec![Factor { kind: FactorType::A, rank: 1 }; d])?;
    let perm = (0..d).map(|i| (i + 1) % d).collect();
    PelCase::new(
        spec,
        Some(perm),
        ParabolicInput::Cocharacter(CocharSpec::new(vec![1; d])),
        CaseOptions::default(),
    )
}

/// `GU(r, s)` on `A_{r+s-1}`, with `p` inert (diagram flip) or split.
pub fn unitary_case(r: usize, s: usize, inert: bool) -> Result<PelCase> {
    let n = r + s;
    if n < 2 {
        return Err(Error::Case(format!("GU({r},{s}) needs r + s >= 2")));
    }
    let rank = n - 1;
    let mut mu = vec![0; rank];
    if r > 0 && s > 0 {
        mu[r - 1] = 1;
    }
    let perm = inert.then(|| (0..rank).map(|i| rank - 1 - i).collect());
    PelCase::new(
        DynkinSpec::single(FactorType::A, rank)?,
        perm,
        ParabolicInput::Cocharacter(CocharSpec::new(mu)),
        CaseOptions::default(),
    )
}
