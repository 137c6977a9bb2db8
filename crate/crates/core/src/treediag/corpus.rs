use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{diagram_to_ratfun, parse_diagram, render, DiagramError, DiagramTree};
use crate::canonical::{omega_j, omega_rep, Report};
use crate::polyrat::{MultiIndex, RatFun, Var, Weight};
use crate::roots::{eta, LieType, RootKind, RootSystemData};

/// Transcribed pictures, one per line.
pub const CORPUS: &str = include_str!("../../data/corpus.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorpusTarget {
    Omega { k: Weight, j: MultiIndex },
    Eta { ty: LieType, root: RootKind },
    Rep { ty: LieType, k: Weight, key: Vec<Vec<u32>> },
    RatFun(RatFun),
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    /// 1-based line in [`CORPUS`].
    pub line: usize,
    pub target: CorpusTarget,
    pub source: String,
    pub diagram: DiagramTree,
}

fn numbers(s: &str) -> Option<Vec<u32>> {
    s.split(',').map(|n| n.trim().parse().ok()).collect()
}

fn parse_target(s: &str) -> Result<CorpusTarget, String> {
    let (kind, rest) = s.trim().split_once(' ').ok_or("missing target arguments")?;
    let args: Vec<&str> = rest.split_whitespace().collect();
    let err = |e: &dyn core::fmt::Display| e.to_string();
    match (kind, args.as_slice()) {
        ("omega", [k, j]) => Ok(CorpusTarget::Omega {
            k: k.parse().map_err(|e| err(&e))?,
            j: MultiIndex::new(numbers(j).ok_or("bad multi-index")?),
        }),
        ("eta", [ty, root]) => Ok(CorpusTarget::Eta {
            ty: ty.parse().map_err(|e| err(&e))?,
            root: root.parse().map_err(|e| err(&e))?,
        }),
        ("rep", [ty, k, key]) => Ok(CorpusTarget::Rep {
            ty: ty.parse().map_err(|e| err(&e))?,
            k: k.parse().map_err(|e| err(&e))?,
            key: key.split('|').map(|p| numbers(p).ok_or("bad key")).collect::<Result<_, _>>()?,
        }),
        ("ratfun", _) => Ok(CorpusTarget::RatFun(rest.parse().map_err(|e| err(&e))?)),
        _ => Err(format!("unknown target `{s}`")),
    }
}

impl CorpusTarget {
    /// The closed form the diagram should produce.
    pub fn value(&self) -> Result<RatFun, String> {
        match self {
            CorpusTarget::Omega { k, j } => Ok(omega_j(j, k, None)),
            CorpusTarget::Eta { ty, root } => {
                let data = RootSystemData::build(*ty);
                let index = data.index_of(*root).map_err(|e| e.to_string())?;
                Ok(eta(&data, index, None).into_fun())
            }
            CorpusTarget::Rep { ty, k, key } => {
                let data = RootSystemData::build(*ty);
                let anchors: Vec<Var> = (1..=key.len() as u32).map(Var::Z).collect();
                let form = omega_rep(&data, &anchors, k).map_err(|e| e.to_string())?;
                form.coeffs.get(key).cloned().ok_or_else(|| format!("no coefficient for {key:?}"))
            }
            CorpusTarget::RatFun(f) => Ok(f.clone()),
        }
    }
}

/// Parses a corpus text in the format of [`CORPUS`].
pub fn corpus(text: &str) -> Result<Vec<CorpusEntry>, DiagramError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (target, source) =
            trimmed.split_once(" | ").ok_or(DiagramError::Corpus { line, message: "missing ` | `".into() })?;
        let target = parse_target(target).map_err(|message| DiagramError::Corpus { line, message })?;
        let diagram = parse_diagram(source)
            .map_err(|e| DiagramError::Corpus { line, message: e.to_string() })?;
        out.push(CorpusEntry { line, target, source: source.into(), diagram });
    }
    Ok(out)
}

/// Checks that every entry renders back to its source and evaluates to its
/// target.
pub fn verify_corpus(text: &str) -> Result<Report, DiagramError> {
    let entries = corpus(text)?;
    let mut report = Report::new("corpus").param("entries", entries.len());
    for e in &entries {
        let case = format!("line {}: {}", e.line, e.source);
        let rendered = render(&e.diagram);
        if rendered != e.source {
            report.fail(&case, &e.source, rendered);
            continue;
        }
        let got = diagram_to_ratfun(&e.diagram);
        match (e.target.value(), got) {
            (Ok(expected), Ok(got)) => report.expect(&case, &expected, &got),
            (Err(msg), _) => report.fail(&case, "a target value", msg),
            (_, Err(err)) => report.fail(&case, "a diagram value", err),
        }
    }
    Ok(report)
}
