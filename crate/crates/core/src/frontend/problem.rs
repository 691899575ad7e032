use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyring::{Polynomial, VariableRing};

use super::parse::parse_polynomial;

/// A parsed problem file: a ring declaration, optional independent-block
/// declaration and per-file options, followed by one generator expression
/// per line. Lines starting with `#` are comments.
#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub ring: Arc<VariableRing>,
    pub generators: Vec<Polynomial>,
    /// Independent variables declared in the file (`indep:`), if any.
    pub declared_independent: Option<Vec<usize>>,
}

impl ProblemFile {
    pub fn load(path: &Path, ring: Option<&Arc<VariableRing>>) -> Result<ProblemFile> {
        let text = std::fs::read_to_string(path)?;
        Self::from_str(&text, ring)
    }

    /// Parse; when `ring` is supplied the file's `vars:` line must agree
    /// and the shared ring is reused.
    pub fn from_str(text: &str, ring: Option<&Arc<VariableRing>>) -> Result<ProblemFile> {
        let mut names: Option<Vec<String>> = None;
        let mut indep_names: Option<Vec<String>> = None;
        let mut gen_lines: Vec<String> = Vec::new();
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vars:") {
                names = Some(split_names(rest));
            } else if let Some(rest) = line.strip_prefix("indep:") {
                let rest = rest.trim();
                if rest.eq_ignore_ascii_case("auto") {
                    indep_names = None;
                } else {
                    indep_names = Some(split_names(rest));
                }
            } else {
                gen_lines.push(line.to_string());
            }
        }
        let ring = match (ring, names) {
            (Some(shared), declared) => {
                if let Some(names) = declared {
                    if names != shared.names() {
                        return Err(Error::InvalidInput(format!(
                            "file declares variables [{}], expected [{}]",
                            names.join(","),
                            shared.names().join(",")
                        )));
                    }
                }
                shared.clone()
            }
            (None, Some(names)) => {
                let mut seen = std::collections::BTreeSet::new();
                for n in &names {
                    if !seen.insert(n.clone()) {
                        return Err(Error::InvalidInput(format!("duplicate variable `{n}`")));
                    }
                }
                VariableRing::new(names)
            }
            (None, None) => {
                return Err(Error::InvalidInput(
                    "problem file is missing a `vars:` declaration".into(),
                ))
            }
        };
        let declared_independent = match indep_names {
            None => None,
            Some(ns) => {
                let mut idx = Vec::new();
                for n in &ns {
                    idx.push(
                        ring.index_of(n)
                            .ok_or_else(|| Error::UnknownVariable(n.clone()))?,
                    );
                }
                idx.sort_unstable();
                Some(idx)
            }
        };
        let generators = gen_lines
            .iter()
            .map(|l| parse_polynomial(l, &ring))
            .collect::<Result<Vec<_>>>()?;
        if generators.is_empty() {
            return Err(Error::InvalidInput("no generators in problem file".into()));
        }
        Ok(ProblemFile {
            ring,
            generators,
            declared_independent,
        })
    }
}

fn split_names(s: &str) -> Vec<String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(|p| p.to_string())
        .collect()
}
