//! Simple polytopes as vertex–facet incidence, their face lattices and
//! standard characteristic functions.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("polytope has no vertices")]
    Empty,
    #[error("dimension must be at least 1")]
    BadDimension,
    #[error("vertex {vertex}: facet index {index} out of range (m = {m})")]
    BadFacetIndex { vertex: usize, index: usize, m: usize },
    #[error("vertex {vertex} lies in {count} facets, expected {n}: not simple")]
    NotSimple { vertex: usize, count: usize, n: usize },
    #[error("vertices {0} and {1} have the same facet set")]
    DuplicateVertex(usize, usize),
    #[error("facet {0} contains no vertex")]
    EmptyFacet(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("characteristic function has {got} values for {m} facets")]
    CharLength { got: usize, m: usize },
    #[error("symbol e{symbol} out of range 0..={n}")]
    CharSymbol { symbol: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplePolytope {
    dim: usize,
    n_facets: usize,
    /// Sorted facet indices per vertex.
    vertices: Vec<Vec<usize>>,
}

/// A face, keyed by the facets whose intersection it is.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub facets: Vec<usize>,
    pub vertices: Vec<usize>,
}

impl Face {
    pub fn codim(&self) -> usize {
        self.facets.len()
    }

    /// True iff `self` ⊆ `other` as point sets.
    pub fn is_subface_of(&self, other: &Face) -> bool {
        other.facets.iter().all(|f| self.facets.binary_search(f).is_ok())
    }
}

impl SimplePolytope {
    pub fn new(dim: usize, n_facets: usize, incidence: &[Vec<usize>]) -> Result<Self, PolytopeError> {
        if dim < 1 {
            return Err(PolytopeError::BadDimension);
        }
        if incidence.is_empty() {
            return Err(PolytopeError::Empty);
        }
        let mut vertices = Vec::with_capacity(incidence.len());
        for (v, fs) in incidence.iter().enumerate() {
            let set: BTreeSet<usize> = fs.iter().copied().collect();
            if let Some(&bad) = set.iter().find(|&&f| f >= n_facets) {
                return Err(PolytopeError::BadFacetIndex { vertex: v, index: bad, m: n_facets });
            }
            if set.len() != dim || fs.len() != dim {
                return Err(PolytopeError::NotSimple { vertex: v, count: fs.len(), n: dim });
            }
            vertices.push(set.into_iter().collect::<Vec<_>>());
        }
        for a in 0..vertices.len() {
            for b in a + 1..vertices.len() {
                if vertices[a] == vertices[b] {
                    return Err(PolytopeError::DuplicateVertex(a, b));
                }
            }
        }
        for f in 0..n_facets {
            if !vertices.iter().any(|v| v.contains(&f)) {
                return Err(PolytopeError::EmptyFacet(f));
            }
        }
        Ok(SimplePolytope { dim, n_facets, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_facets(&self) -> usize {
        self.n_facets
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_facets(&self, v: usize) -> &[usize] {
        &self.vertices[v]
    }

    pub fn face_dim(&self, f: &Face) -> usize {
        self.dim - f.codim()
    }

    /// The face cut out by the given facets, if nonempty.
    pub fn face(&self, facets: &[usize]) -> Option<Face> {
        let mut facets = facets.to_vec();
        facets.sort_unstable();
        facets.dedup();
        let support: Vec<usize> = (0..self.vertices.len())
            .filter(|&v| facets.iter().all(|f| self.vertices[v].binary_search(f).is_ok()))
            .collect();
        if support.is_empty() {
            return None;
        }
        Some(Face { facets, vertices: support })
    }
}

/// Facet count is taken from the largest index used.
pub fn parse_polytope(incidence: &[Vec<usize>], n: usize) -> Result<SimplePolytope, PolytopeError> {
    let m = incidence.iter().flatten().max().map_or(0, |&x| x + 1);
    SimplePolytope::new(n, m, incidence)
}

/// Reads the text format: a header `n m`, then one line per vertex listing its
/// 0-based facet indices. Lines starting with `#` and blank lines are skipped.
pub fn read_polytope(text: &str) -> Result<SimplePolytope, PolytopeError> {
    let mut header: Option<(usize, usize)> = None;
    let mut incidence = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end();
        if line.trim_start().starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let nums = line
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| PolytopeError::Parse { line: i + 1, msg: e.to_string() })?;
        match header {
            None => {
                if nums.len() != 2 {
                    return Err(PolytopeError::Parse { line: i + 1, msg: "header must be `n m`".into() });
                }
                header = Some((nums[0], nums[1]));
            }
            Some(_) => incidence.push(nums),
        }
    }
    let (n, m) = header.ok_or(PolytopeError::Parse { line: 0, msg: "missing header".into() })?;
    SimplePolytope::new(n, m, &incidence)
}

pub fn write_polytope(q: &SimplePolytope) -> String {
    let mut s = format!("{} {}\n", q.dim, q.n_facets);
    for v in &q.vertices {
        let parts: Vec<String> = v.iter().map(|f| f.to_string()).collect();
        s.push_str(&parts.join(" "));
        s.push('\n');
    }
    s
}

/// All faces, by codimension and then facet set; Q itself comes first.
pub fn face_lattice(q: &SimplePolytope) -> Vec<Face> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut faces = Vec::new();
    for v in &q.vertices {
        for mask in 0u32..1 << v.len() {
            let subset: Vec<usize> = (0..v.len()).filter(|b| mask >> b & 1 == 1).map(|b| v[b]).collect();
            if !seen.insert(subset.clone()) {
                continue;
            }
            let face = q.face(&subset).expect("subset of a vertex's facets");
            // the facet set must be everything its support shares
            let shared: Vec<usize> = (0..q.n_facets)
                .filter(|f| face.vertices.iter().all(|&w| q.vertices[w].binary_search(f).is_ok()))
                .collect();
            if shared == face.facets {
                faces.push(face);
            }
        }
    }
    faces.sort_by(|a, b| (a.codim(), &a.facets).cmp(&(b.codim(), &b.facets)));
    faces
}

/// Δ^n: vertex v_i lies on every facet F_j with j ≠ i.
pub fn simplex_polytope(n: usize) -> Result<SimplePolytope, PolytopeError> {
    let inc: Vec<Vec<usize>> = (0..=n).map(|i| (0..=n).filter(|&j| j != i).collect()).collect();
    SimplePolytope::new(n, n + 1, &inc)
}

/// Assigns symbol e_s (s ∈ 0..=n) to each facet; e_0 stands for e_1 + … + e_n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharacteristicFunction {
    symbols: Vec<usize>,
}

impl CharacteristicFunction {
    pub fn new(q: &SimplePolytope, symbols: Vec<usize>) -> Result<Self, PolytopeError> {
        if symbols.len() != q.n_facets {
            return Err(PolytopeError::CharLength { got: symbols.len(), m: q.n_facets });
        }
        if let Some(&s) = symbols.iter().find(|&&s| s > q.dim) {
            return Err(PolytopeError::CharSymbol { symbol: s, n: q.dim });
        }
        Ok(CharacteristicFunction { symbols })
    }

    /// Without a polytope to check against, e.g. when read back from file metadata.
    pub fn from_symbols(symbols: Vec<usize>) -> Self {
        CharacteristicFunction { symbols }
    }

    /// ξ(F_i) = e_i on Δ^n.
    pub fn standard_simplex(n: usize) -> Self {
        CharacteristicFunction { symbols: (0..=n).collect() }
    }

    pub fn symbol(&self, facet: usize) -> usize {
        self.symbols[facet]
    }

    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    /// Bit mask of the symbols on the given facets.
    pub fn mask(&self, facets: &[usize]) -> u32 {
        facets.iter().fold(0, |m, &f| m | 1 << self.symbols[f])
    }
}

/// Reads whitespace-separated symbols, written `3` or `e3`; `#` starts a comment.
pub fn read_characteristic(text: &str, q: &SimplePolytope) -> Result<CharacteristicFunction, PolytopeError> {
    let mut symbols = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            let t = tok.strip_prefix('e').unwrap_or(tok);
            let s = t
                .parse::<usize>()
                .map_err(|e| PolytopeError::Parse { line: i + 1, msg: format!("{tok:?}: {e}") })?;
            symbols.push(s);
        }
    }
    CharacteristicFunction::new(q, symbols)
}

/// The symbols at every vertex are pairwise distinct.
pub fn validate_characteristic(q: &SimplePolytope, xi: &CharacteristicFunction) -> bool {
    xi.symbols.len() == q.n_facets
        && q.vertices.iter().all(|v| {
            let s: HashSet<usize> = v.iter().map(|&f| xi.symbols[f]).collect();
            s.len() == v.len()
        })
}
