//! Fixture files: the ingestion format for the verifier.
//!
//! A fixture is UTF-8 text with `#` comments, header lines of the form
//! `key: value`, and a polynomial expression spread over the remaining
//! lines:
//!
//! ```text
//! # the sharp example at d = 3, n = 3
//! vars: x0 x1 x2 x3
//! degree: 3
//! candidate_points: (1:0:0:0) (0:1:0:0)
//! hypothesis: no-line-of-mult-(d-1) finitely-many-mult-(d-1)
//! x0*x2^2 + 2*x1^2*x2 + x3^3
//! ```
//!
//! `candidate_points` lists rational points to analyze (the fixtures' known
//! singular points plus controls), `singular_lines` lists point pairs
//! spanning lines declared to be singular, and `hypothesis` gates the
//! conditional theorem checks.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use crate::parse::{parse_polynomial, ParseError, PolySource};
use crate::singular::ProjPoint;
use crate::MPoly;

/// Hypothesis flags a fixture may assert; conditional checks are skipped
/// without them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Hypothesis {
    /// The locus of points of multiplicity `d - 1` contains no line.
    NoLineOfMultDMinus1,
    /// Only finitely many points of multiplicity `d - 1`.
    FinitelyManyMultDMinus1,
}

impl Hypothesis {
    pub fn token(self) -> &'static str {
        match self {
            Hypothesis::NoLineOfMultDMinus1 => "no-line-of-mult-(d-1)",
            Hypothesis::FinitelyManyMultDMinus1 => "finitely-many-mult-(d-1)",
        }
    }

    fn from_token(tok: &str) -> Option<Self> {
        match tok {
            "no-line-of-mult-(d-1)" => Some(Hypothesis::NoLineOfMultDMinus1),
            "finitely-many-mult-(d-1)" => Some(Hypothesis::FinitelyManyMultDMinus1),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub id: String,
    pub variables: Vec<String>,
    pub declared_degree: Option<u32>,
    pub poly: MPoly,
    pub candidate_points: Vec<ProjPoint>,
    pub singular_lines: Vec<(ProjPoint, ProjPoint)>,
    pub hypotheses: BTreeSet<Hypothesis>,
}

impl Fixture {
    pub fn asserts(&self, h: Hypothesis) -> bool {
        self.hypotheses.contains(&h)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixtureError {
    Io(String),
    MissingVars,
    BadHeader { line: usize, message: String },
    Parse(ParseError),
}

impl fmt::Display for FixtureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureError::Io(msg) => write!(f, "{msg}"),
            FixtureError::MissingVars => write!(f, "fixture has no 'vars:' header"),
            FixtureError::BadHeader { line, message } => write!(f, "line {line}: {message}"),
            FixtureError::Parse(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FixtureError {}

impl From<ParseError> for FixtureError {
    fn from(e: ParseError) -> Self {
        FixtureError::Parse(e)
    }
}

fn parse_points(body: &str, line: usize) -> Result<Vec<ProjPoint>, FixtureError> {
    let mut out = Vec::new();
    for chunk in body.split_whitespace() {
        let p =
            ProjPoint::parse(chunk).map_err(|message| FixtureError::BadHeader { line, message })?;
        out.push(p);
    }
    Ok(out)
}

/// Parses fixture text. The `id` is normally the file stem.
pub fn parse_fixture(text: &str, id: &str) -> Result<Fixture, FixtureError> {
    let mut variables: Option<Vec<String>> = None;
    let mut declared_degree = None;
    let mut candidate_points = Vec::new();
    let mut singular_lines = Vec::new();
    let mut hypotheses = BTreeSet::new();
    let mut expression = String::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(colon) = trimmed.find(':') {
            // Expressions never contain ':' so any such line is a header.
            let key = trimmed[..colon].trim();
            let body = trimmed[colon + 1..].trim();
            match key {
                "vars" => {
                    variables = Some(body.split_whitespace().map(str::to_string).collect());
                }
                "degree" => {
                    let d = body.parse::<u32>().map_err(|e| FixtureError::BadHeader {
                        line: lineno,
                        message: format!("bad degree '{body}': {e}"),
                    })?;
                    declared_degree = Some(d);
                }
                "candidate_points" => {
                    candidate_points.extend(parse_points(body, lineno)?);
                }
                "singular_lines" => {
                    for chunk in body.split_whitespace() {
                        let Some((a, b)) = chunk.split_once(")-(") else {
                            return Err(FixtureError::BadHeader {
                                line: lineno,
                                message: format!("bad line pair '{chunk}', want (..)-(..)"),
                            });
                        };
                        let first = ProjPoint::parse(&format!("{a})")).map_err(|message| {
                            FixtureError::BadHeader {
                                line: lineno,
                                message,
                            }
                        })?;
                        let second = ProjPoint::parse(&format!("({b}")).map_err(|message| {
                            FixtureError::BadHeader {
                                line: lineno,
                                message,
                            }
                        })?;
                        singular_lines.push((first, second));
                    }
                }
                "hypothesis" => {
                    for tok in body.split_whitespace() {
                        let h =
                            Hypothesis::from_token(tok).ok_or_else(|| FixtureError::BadHeader {
                                line: lineno,
                                message: format!("unknown hypothesis '{tok}'"),
                            })?;
                        hypotheses.insert(h);
                    }
                }
                other => {
                    return Err(FixtureError::BadHeader {
                        line: lineno,
                        message: format!("unknown header '{other}'"),
                    });
                }
            }
        } else {
            if !expression.is_empty() {
                expression.push('\n');
            }
            expression.push_str(line);
        }
    }

    let variables = variables.ok_or(FixtureError::MissingVars)?;
    let poly = parse_polynomial(&PolySource {
        variables: variables.clone(),
        expression,
        declared_degree,
    })?;
    Ok(Fixture {
        id: id.to_string(),
        variables,
        declared_degree,
        poly,
        candidate_points,
        singular_lines,
        hypotheses,
    })
}

pub fn load_fixture(path: &Path) -> Result<Fixture, FixtureError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| FixtureError::Io(format!("{}: {e}", path.display())))?;
    let id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    parse_fixture(&text, &id)
}
