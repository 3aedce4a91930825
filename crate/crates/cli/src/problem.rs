//! JSON problem files.
//!
//! ```json
//! {
//!   "m": 6,
//!   "pomset": { "s": 2, "relations": [[2, 1]] },
//!   "labeling": [2, 1],
//!   "code": { "codewords": [[0, 0, 0], [3, 0, 0]] },
//!   "ideal": { "counts": [1, 3] },
//!   "radius": 4
//! }
//! ```
//!
//! Elements are numbered from 1 and `[a, b]` means `a < b`. The height is
//! always `floor(m/2)`.

use std::path::Path;

use pomset_core::codes::{Code, Origin};
use pomset_core::{Ideal, Pomset, Space, DEFAULT_SCAN_BUDGET};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub m: u32,
    pub pomset: PomsetSpec,
    pub labeling: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code: Option<CodeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<IdealSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PomsetSpec {
    pub s: usize,
    #[serde(default)]
    pub relations: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum CodeSpec {
    Codewords(Vec<Vec<i64>>),
    Generator(Vec<Vec<i64>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealSpec {
    pub counts: Vec<u32>,
}

/// A validated problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub space: Space,
    pub code: Option<Code>,
    pub ideal: Option<Ideal>,
    pub radius: Option<u32>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("problem file: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("plain data serializes");
        out.push('\n');
        out
    }

    /// Checks every cross-shape constraint and builds the problem.
    pub fn load(&self, budget: u64) -> Result<Problem, CliError> {
        let s = self.pomset.s;
        let mut relations = Vec::with_capacity(self.pomset.relations.len());
        for &[a, b] in &self.pomset.relations {
            if a == 0 || b == 0 || a > s || b > s {
                return Err(CliError::Input(format!("relation [{a}, {b}] outside 1..={s}")));
            }
            relations.push((a - 1, b - 1));
        }
        let pomset = Pomset::new(s, self.m / 2, &relations)?;
        if self.labeling.len() != s {
            return Err(CliError::Input(format!(
                "labeling has {} entries for {s} elements",
                self.labeling.len()
            )));
        }
        let space = Space::new(self.m, pomset, self.labeling.clone())?;
        let code = match &self.code {
            None => None,
            Some(CodeSpec::Codewords(rows)) => Some(Code::from_rows(space.clone(), rows)?),
            Some(CodeSpec::Generator(rows)) => Some(Code::span_generator(space.clone(), rows, budget)?),
        };
        let ideal = match &self.ideal {
            None => None,
            Some(spec) => Some(Ideal::from_counts(space.pomset(), &spec.counts)?),
        };
        if let Some(r) = self.radius {
            if r > space.max_weight() {
                return Err(CliError::Input(format!(
                    "radius {r} exceeds maximal weight {}",
                    space.max_weight()
                )));
            }
        }
        Ok(Problem { space, code, ideal, radius: self.radius })
    }

    /// `serialize(load(self))`.
    pub fn canonical(&self) -> Result<Self, CliError> {
        Ok(self.load(DEFAULT_SCAN_BUDGET)?.to_file())
    }
}

impl Problem {
    /// Canonical form: covering relations in order, residues reduced, and
    /// explicit codewords sorted without repeats.
    pub fn to_file(&self) -> ProblemFile {
        let s = &self.space;
        let code = self.code.as_ref().map(|c| match c.origin() {
            Origin::Generated(rows) => CodeSpec::Generator(widen(rows)),
            _ => CodeSpec::Codewords(c.codewords().iter().map(|v| v.iter().map(|&x| x as i64).collect()).collect()),
        });
        ProblemFile {
            m: s.modulus(),
            pomset: PomsetSpec {
                s: s.block_count(),
                relations: s.pomset().covering_relations().into_iter().map(|(a, b)| [a + 1, b + 1]).collect(),
            },
            labeling: s.labeling().to_vec(),
            code,
            ideal: self.ideal.as_ref().map(|i| IdealSpec { counts: i.counts().to_vec() }),
            radius: self.radius,
        }
    }
}

fn widen(rows: &[Vec<u32>]) -> Vec<Vec<i64>> {
    rows.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect()
}
