//! JSON graph files: `{"arguments": [{"id", "initial"}], "attacks": [[src, dst]], "supports": [[src, dst]]}`.

use serde::{Deserialize, Serialize};

use qbag::{build_qbag, Qbag, QbagError};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArgumentEntry {
    pub id: String,
    pub initial: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub arguments: Vec<ArgumentEntry>,
    #[serde(default)]
    pub attacks: Vec<(String, String)>,
    #[serde(default)]
    pub supports: Vec<(String, String)>,
}

#[derive(Debug)]
pub enum FileError {
    Parse(String),
    Graph(QbagError),
}

impl std::fmt::Display for FileError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FileError::Parse(m) => write!(f, "ParseError: {m}"),
            FileError::Graph(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FileError {}

impl GraphFile {
    pub fn from_qbag(g: &Qbag) -> GraphFile {
        let own = |v: Vec<(&str, &str)>| v.into_iter().map(|(s, d)| (s.to_string(), d.to_string())).collect();
        GraphFile {
            arguments: g
                .names()
                .iter()
                .zip(g.taus())
                .map(|(id, &initial)| ArgumentEntry { id: id.clone(), initial })
                .collect(),
            attacks: own(g.attack_pairs()),
            supports: own(g.support_pairs()),
        }
    }

    pub fn to_qbag(&self) -> Result<Qbag, QbagError> {
        let args: Vec<(&str, f64)> = self.arguments.iter().map(|a| (a.id.as_str(), a.initial)).collect();
        build_qbag(&args, &self.attacks, &self.supports)
    }
}

/// Parses and validates a graph document.
pub fn parse_graph(text: &str) -> Result<Qbag, FileError> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| FileError::Parse(e.to_string()))?;
    file.to_qbag().map_err(FileError::Graph)
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("strings and finite numbers serialize")
}

/// One argument or edge per line, trailing newline; strengths round-trip exactly.
pub fn serialize_graph(g: &Qbag) -> String {
    let file = GraphFile::from_qbag(g);
    let block = |key: &str, items: Vec<String>| {
        if items.is_empty() {
            format!("  \"{key}\": []")
        } else {
            format!("  \"{key}\": [\n    {}\n  ]", items.join(",\n    "))
        }
    };
    let args = file.arguments.iter().map(|a| format!("{{\"id\": {}, \"initial\": {}}}", json(&a.id), json(&a.initial))).collect();
    let edges = |list: &[(String, String)]| list.iter().map(|(s, d)| format!("[{}, {}]", json(s), json(d))).collect();
    format!(
        "{{\n{},\n{},\n{}\n}}\n",
        block("arguments", args),
        block("attacks", edges(&file.attacks)),
        block("supports", edges(&file.supports))
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scientific_notation_and_missing_relations() {
        let g = parse_graph(r#"{"arguments":[{"id":"a","initial":5e-1},{"id":"b","initial":1E-3}],"supports":[["b","a"]]}"#)
            .unwrap();
        assert_eq!(g.taus(), &[0.5, 0.001]);
        assert!(g.attack_edges().is_empty());
    }

    #[test]
    fn errors_are_classified() {
        let err = parse_graph(r#"{"arguments":[{"id":"a","initial":0.5}],"attacks":[["a","a"]]}"#).unwrap_err();
        assert!(err.to_string().starts_with("CyclicGraph"), "{err}");
        let err = parse_graph(r#"{"arguments":[{"id":"a","initial":2}]}"#).unwrap_err();
        assert!(err.to_string().starts_with("StrengthOutOfRange"), "{err}");
        let err = parse_graph("{\"arguments\": [").unwrap_err();
        assert!(err.to_string().starts_with("ParseError"), "{err}");
        let err = parse_graph(r#"{"arguments":[],"edges":[]}"#).unwrap_err();
        assert!(err.to_string().starts_with("ParseError"), "{err}");
    }

    #[test]
    fn round_trip_keeps_exact_strengths() {
        let g = build_qbag(&[("a", 0.1 + 0.2), ("b", 1.0 / 3.0)], &[("b", "a")], &[] as &[(&str, &str)]).unwrap();
        assert!(parse_graph(&serialize_graph(&g)).unwrap().same_structure(&g));
    }
}
