//! The plain-text complex format.
//!
//! ```text
//! # characteristic 0 1 2
//! dim 2 vertices 5 facets 6
//! v 0 τ:0|t:
//! ...
//! s 0 2 3
//! ```
//!
//! Vertices are listed in label order (plain string comparison), facets as
//! ascending index lists in lexicographic order. The optional
//! `# characteristic` line records the facet symbols needed to act on
//! `τ:` labels; every other comment is dropped on import.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use eqtri::simplicial::{Label, Simplex, SimplicialComplex};
use serde_json::json;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexFile {
    pub labels: Vec<String>,
    pub facets: Vec<Vec<usize>>,
    pub characteristic: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, msg: msg.into() })
}

impl ComplexFile {
    /// Canonical file of a complex whose vertices render through `label`.
    pub fn from_complex<V: Label>(
        k: &SimplicialComplex<V>,
        label: impl Fn(&V) -> String,
        characteristic: Option<Vec<usize>>,
    ) -> Self {
        let rendered: Vec<(String, &V)> = k.vertices().iter().map(|v| (label(v), v)).collect();
        let mut labels: Vec<String> = rendered.iter().map(|(s, _)| s.clone()).collect();
        labels.sort();
        let index: HashMap<&V, usize> = rendered
            .iter()
            .map(|(s, v)| (*v, labels.binary_search(s).expect("rendered label")))
            .collect();
        assert_eq!(index.len(), labels.len(), "distinct vertices must render to distinct labels");
        let mut facets: Vec<Vec<usize>> = k
            .facets()
            .iter()
            .map(|f| {
                let mut ix: Vec<usize> = f.vertices().iter().map(|v| index[v]).collect();
                ix.sort_unstable();
                ix
            })
            .collect();
        facets.sort();
        ComplexFile { labels, facets, characteristic }
    }

    pub fn dim(&self) -> usize {
        self.facets.iter().map(|f| f.len().saturating_sub(1)).max().unwrap_or(0)
    }

    /// The complex over label strings; facets contained in others are absorbed.
    pub fn to_complex(&self) -> SimplicialComplex<String> {
        let fs = self
            .facets
            .iter()
            .map(|f| Simplex::collapsed(f.iter().map(|&i| self.labels[i].clone()).collect()))
            .collect();
        SimplicialComplex::from_simplices_or_empty(fs)
    }

    /// Sorts labels and facets into canonical order.
    pub fn canonicalize(&self) -> Self {
        let mut order: Vec<usize> = (0..self.labels.len()).collect();
        order.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
        let mut new_index = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let labels = order.iter().map(|&i| self.labels[i].clone()).collect();
        let mut facets: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|f| {
                let mut g: Vec<usize> = f.iter().map(|&i| new_index[i]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        facets.sort();
        ComplexFile { labels, facets, characteristic: self.characteristic.clone() }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        if let Some(c) = &self.characteristic {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            writeln!(s, "# characteristic {}", parts.join(" ")).unwrap();
        }
        writeln!(s, "dim {} vertices {} facets {}", self.dim(), self.labels.len(), self.facets.len()).unwrap();
        for (i, l) in self.labels.iter().enumerate() {
            writeln!(s, "v {i} {l}").unwrap();
        }
        for f in &self.facets {
            let parts: Vec<String> = f.iter().map(|x| x.to_string()).collect();
            writeln!(s, "s {}", parts.join(" ")).unwrap();
        }
        s
    }

    pub fn render_json(&self) -> String {
        let v = json!({ "vertices": self.labels, "facets": self.facets });
        let mut s = serde_json::to_string_pretty(&v).expect("json");
        s.push('\n');
        s
    }

    pub fn render_facets_only(&self) -> String {
        let mut s = String::new();
        for f in &self.facets {
            let parts: Vec<&str> = f.iter().map(|&i| self.labels[i].as_str()).collect();
            writeln!(s, "{}", parts.join(" ")).unwrap();
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut header: Option<(usize, usize, usize, usize)> = None;
        let mut labels: Vec<String> = Vec::new();
        let mut facets: Vec<Vec<usize>> = Vec::new();
        let mut characteristic = None;
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.trim_end();
            if line.trim().is_empty() {
                continue;
            }
            if let Some(c) = line.strip_prefix('#') {
                if let Some(rest) = c.trim_start().strip_prefix("characteristic") {
                    let syms = rest
                        .split_whitespace()
                        .map(|t| t.parse::<usize>())
                        .collect::<Result<Vec<_>, _>>();
                    match syms {
                        Ok(v) => characteristic = Some(v),
                        Err(e) => return err(ln, format!("bad characteristic: {e}")),
                    }
                }
                continue;
            }
            let mut parts = line.splitn(2, ' ');
            let tag = parts.next().unwrap_or("");
            let rest = parts.next().unwrap_or("");
            match tag {
                "dim" => {
                    if header.is_some() {
                        return err(ln, "second header");
                    }
                    let toks: Vec<&str> = line.split_whitespace().collect();
                    if toks.len() != 6 || toks[2] != "vertices" || toks[4] != "facets" {
                        return err(ln, "header must be `dim <d> vertices <v> facets <f>`");
                    }
                    let num = |t: &str| t.parse::<usize>().or_else(|e| err(ln, format!("{t:?}: {e}")));
                    header = Some((num(toks[1])?, num(toks[3])?, num(toks[5])?, ln));
                }
                "v" => {
                    if header.is_none() {
                        return err(ln, "vertex before header");
                    }
                    let (idx, label) = rest.split_once(' ').unwrap_or((rest, ""));
                    let idx: usize = idx.parse().or_else(|e| err(ln, format!("vertex index: {e}")))?;
                    if idx != labels.len() {
                        return err(ln, format!("vertex index {idx}, expected {}", labels.len()));
                    }
                    let label = label.trim();
                    if label.is_empty() || label.contains(char::is_whitespace) {
                        return err(ln, "labels must be nonempty and contain no whitespace");
                    }
                    labels.push(label.to_string());
                }
                "s" => {
                    if header.is_none() {
                        return err(ln, "facet before header");
                    }
                    let f = rest
                        .split_whitespace()
                        .map(|t| t.parse::<usize>())
                        .collect::<Result<Vec<_>, _>>()
                        .or_else(|e| err(ln, format!("facet: {e}")))?;
                    if f.is_empty() {
                        return err(ln, "empty facet");
                    }
                    if let Some(&bad) = f.iter().find(|&&x| x >= labels.len()) {
                        return err(ln, format!("facet references undeclared vertex {bad}"));
                    }
                    let set: BTreeSet<usize> = f.iter().copied().collect();
                    if set.len() != f.len() {
                        return err(ln, "repeated vertex in facet");
                    }
                    facets.push(set.into_iter().collect());
                }
                _ => return err(ln, format!("unknown line tag {tag:?}")),
            }
        }
        let Some((d, nv, nf, hl)) = header else {
            return err(0, "missing header");
        };
        if nv != labels.len() || nf != facets.len() {
            return err(hl, format!("header declares {nv} vertices and {nf} facets, found {} and {}", labels.len(), facets.len()));
        }
        let file = ComplexFile { labels, facets, characteristic };
        if !file.facets.is_empty() && file.dim() != d {
            return err(hl, format!("header declares dimension {d}, facets have {}", file.dim()));
        }
        let distinct: BTreeSet<&String> = file.labels.iter().collect();
        if distinct.len() != file.labels.len() {
            return err(0, "duplicate vertex labels");
        }
        Ok(file)
    }
}
