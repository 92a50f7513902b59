//! Reading facts from files, standard input and solver JSON documents.

use std::io::Read;
use std::path::PathBuf;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::parse::{parse_fact, parse_program};
use crate::term::Fact;

/// Where input text comes from.
#[derive(Debug, Clone)]
pub enum Source {
    Path(PathBuf),
    Text { name: String, text: String },
    Stdin,
}

impl Source {
    pub fn text(name: impl Into<String>, text: impl Into<String>) -> Source {
        Source::Text {
            name: name.into(),
            text: text.into(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Source::Path(p) => p.display().to_string(),
            Source::Text { name, .. } => name.clone(),
            Source::Stdin => "<stdin>".to_string(),
        }
    }

    pub fn read(&self) -> Result<String> {
        match self {
            Source::Path(p) => std::fs::read_to_string(p).map_err(|e| Error::io(p, e)),
            Source::Text { text, .. } => Ok(text.clone()),
            Source::Stdin => {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Error::io("<stdin>", e))?;
                Ok(s)
            }
        }
    }
}

impl From<PathBuf> for Source {
    fn from(p: PathBuf) -> Self {
        Source::Path(p)
    }
}

impl From<&std::path::Path> for Source {
    fn from(p: &std::path::Path) -> Self {
        Source::Path(p.to_path_buf())
    }
}

/// One stable model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    /// 0-based position in the solver output.
    pub index: usize,
    pub atoms: Vec<Fact>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverResult {
    pub models: Vec<Model>,
    pub satisfiable: bool,
}

impl SolverResult {
    /// Plain fact text has no model boundaries: it is one model.
    pub fn single(atoms: Vec<Fact>) -> SolverResult {
        SolverResult {
            models: vec![Model { index: 0, atoms }],
            satisfiable: true,
        }
    }
}

pub fn load_facts(sources: &[Source]) -> Result<Vec<Fact>> {
    let mut facts = Vec::new();
    for source in sources {
        let text = source.read()?;
        let parsed = parse_program(&text).map_err(|e| Error::syntax(source.name(), e))?;
        facts.extend(parsed);
    }
    Ok(facts)
}

#[derive(Deserialize)]
struct Document {
    #[serde(rename = "Call")]
    call: Vec<Call>,
    #[serde(rename = "Result")]
    result: String,
}

#[derive(Deserialize)]
struct Call {
    #[serde(rename = "Witnesses", default)]
    witnesses: Vec<Witness>,
}

#[derive(Deserialize)]
struct Witness {
    #[serde(rename = "Value")]
    value: Vec<String>,
}

pub fn load_solver_json(document: &str) -> Result<SolverResult> {
    let doc: Document = serde_json::from_str(document).map_err(|e| Error::Format(e.to_string()))?;
    let mut models = Vec::new();
    for witness in doc.call.into_iter().flat_map(|c| c.witnesses) {
        let index = models.len();
        let atoms = witness
            .value
            .iter()
            .map(|atom| parse_fact(atom).map_err(|e| Error::syntax(format!("model {index}"), e)))
            .collect::<Result<Vec<_>>>()?;
        models.push(Model { index, atoms });
    }
    if models.is_empty() && doc.result == "UNSATISFIABLE" {
        return Err(Error::Unsat);
    }
    Ok(SolverResult {
        satisfiable: !models.is_empty() || doc.result == "SATISFIABLE",
        models,
    })
}

/// The text of every input source, read once.
#[derive(Debug, Clone)]
pub struct RawInput {
    /// (source name, text) pairs in input order.
    pub texts: Vec<(String, String)>,
}

impl RawInput {
    pub fn read(sources: &[Source]) -> Result<RawInput> {
        let texts = sources
            .iter()
            .map(|s| Ok((s.name(), s.read()?)))
            .collect::<Result<_>>()?;
        Ok(RawInput { texts })
    }

    /// Whether the input is a solver JSON document. A JSON document must be
    /// the only source.
    pub fn is_json(&self) -> Result<bool> {
        let json = self
            .texts
            .iter()
            .any(|(_, t)| t.trim_start().starts_with('{'));
        if json && self.texts.len() != 1 {
            return Err(Error::Config(
                "a solver JSON document must be the only input".into(),
            ));
        }
        Ok(json)
    }

    /// All sources joined, one after the other.
    pub fn joined(&self) -> String {
        self.texts.iter().map(|(_, t)| format!("{t}\n")).collect()
    }

    /// Parses the input as solver JSON or as plain facts.
    pub fn parse(&self) -> Result<SolverResult> {
        if self.is_json()? {
            return load_solver_json(&self.texts[0].1);
        }
        let mut facts = Vec::new();
        for (name, text) in &self.texts {
            facts.extend(parse_program(text).map_err(|e| Error::syntax(name.clone(), e))?);
        }
        Ok(SolverResult::single(facts))
    }
}

/// Reads every source and decides between plain facts and a solver JSON
/// document. A JSON document must be the only source.
pub fn load_input(sources: &[Source]) -> Result<SolverResult> {
    RawInput::read(sources)?.parse()
}

/// Picks models by 0-based index; no selectors means all models.
pub fn select_models(result: &SolverResult, selectors: &[usize]) -> Result<Vec<Model>> {
    if selectors.is_empty() {
        return Ok(result.models.clone());
    }
    let mut wanted = selectors.to_vec();
    wanted.sort_unstable();
    wanted.dedup();
    wanted
        .into_iter()
        .map(|i| {
            result.models.get(i).cloned().ok_or_else(|| {
                Error::Range(format!(
                    "model {i} requested but only {} model(s) available",
                    result.models.len()
                ))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Term;

    fn witnesses(n: usize) -> String {
        let w: Vec<String> = (0..n)
            .map(|i| format!(r#"{{"Value":["node(n{i})"]}}"#))
            .collect();
        format!(
            r#"{{"Call":[{{"Witnesses":[{}]}}],"Result":"SATISFIABLE"}}"#,
            w.join(",")
        )
    }

    #[test]
    fn load_single_and_multiple_sources() {
        let facts = load_facts(&[Source::text("a", "node(a).")]).unwrap();
        assert_eq!(facts, vec![Fact::new("node", vec![Term::constant("a")])]);

        let facts = load_facts(&[
            Source::text("A", "graph(g)."),
            Source::text("B", "node(a,g)."),
        ])
        .unwrap();
        assert_eq!(facts[0].predicate, "graph");
        assert_eq!(facts[1].predicate, "node");
    }

    #[test]
    fn syntax_error_names_source() {
        let err = load_facts(&[Source::text("bad.lp", "1 {a} 1.")]).unwrap_err();
        match err {
            Error::Syntax { source_name, .. } => assert_eq!(source_name, "bad.lp"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_facts(&[Source::Path("/nonexistent/x.lp".into())]).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }

    #[test]
    fn json_one_model() {
        let doc = r#"{"Call":[{"Witnesses":[{"Value":["node(a)","edge((a,b))"]}]}],"Result":"SATISFIABLE"}"#;
        let r = load_solver_json(doc).unwrap();
        assert_eq!(r.models.len(), 1);
        assert_eq!(r.models[0].atoms.len(), 2);
        assert!(r.satisfiable);
    }

    #[test]
    fn json_trailing_periods_and_multiple_calls() {
        let doc = r#"{"Call":[{"Witnesses":[{"Value":["a."]}]},{"Witnesses":[{"Value":["b"]}]}],"Result":"SATISFIABLE"}"#;
        let r = load_solver_json(doc).unwrap();
        assert_eq!(r.models.len(), 2);
        assert_eq!(r.models[1].index, 1);
        assert_eq!(r.models[1].atoms[0].predicate, "b");
    }

    #[test]
    fn json_errors() {
        assert!(matches!(
            load_solver_json(r#"{"Call":[],"Result":"UNSATISFIABLE"}"#),
            Err(Error::Unsat)
        ));
        assert!(matches!(
            load_solver_json(r#"{"Calls":[]}"#),
            Err(Error::Format(_))
        ));
        assert!(matches!(
            load_solver_json(
                r#"{"Call":[{"Witnesses":[{"Value":["p(X)"]}]}],"Result":"SATISFIABLE"}"#
            ),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn ten_witnesses_indexed_from_zero() {
        let r = load_solver_json(&witnesses(10)).unwrap();
        let idx: Vec<usize> = r.models.iter().map(|m| m.index).collect();
        assert_eq!(idx, (0..10).collect::<Vec<_>>());

        let picked = select_models(&r, &[9, 0]).unwrap();
        assert_eq!(
            picked.iter().map(|m| m.index).collect::<Vec<_>>(),
            vec![0, 9]
        );
        assert_eq!(picked[1].atoms[0].to_string(), "node(n9).");
    }

    #[test]
    fn selection_defaults_and_range() {
        let r = load_solver_json(&witnesses(3)).unwrap();
        assert_eq!(select_models(&r, &[]).unwrap().len(), 3);
        assert_eq!(
            select_models(&r, &[0, 1, 2]).unwrap(),
            select_models(&r, &[]).unwrap()
        );
        assert_eq!(select_models(&r, &[1, 1]).unwrap().len(), 1);
        assert!(matches!(select_models(&r, &[5]), Err(Error::Range(_))));
    }

    #[test]
    fn input_detection() {
        let r = load_input(&[Source::text("x", "node(a). node(a).")]).unwrap();
        assert_eq!(r.models.len(), 1);
        assert_eq!(r.models[0].atoms.len(), 2);
        let r = load_input(&[Source::text("x", witnesses(2))]).unwrap();
        assert_eq!(r.models.len(), 2);
    }
}
