//! Cubical subdivision of a simple polytope and the assembly of blocks into
//! Z_3^n-equivariant triangulations of M(Q, ξ), in particular CP^n.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::block::{build_block_with, from_frame, BlockError, FactorKind, FactorSpec, SymVertex, Tower};
use crate::simplicial::{ComplexError, GroupAction, Simplex, SimplicialComplex};
use crate::polytope::{
    face_lattice, simplex_polytope, validate_characteristic, CharacteristicFunction, Face, PolytopeError,
    SimplePolytope,
};
use crate::torus::GroupElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("dimension {0} out of range")]
    BadDimension(usize),
    #[error("characteristic function is not standard: {0}")]
    NonStandard(String),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("gluing mismatch: the block over face {outer:?} is not the restriction of the block over face {inner:?}")]
    Gluing { outer: Vec<usize>, inner: Vec<usize> },
    #[error("face {face:?} carries {got} vertices, expected 3^{dim}")]
    Stratum { face: Vec<usize>, dim: usize, got: usize },
    #[error("vertex count {got} differs from the expected {expected}")]
    VertexCount { expected: usize, got: usize },
    #[error("assembled complex is not invariant under the Z_3^n action")]
    NotEquivariant,
}

/// The cube I_σ: its corners are the centres of the faces τ ⊇ σ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicalCell {
    pub face: Face,
    /// Indices (into the face lattice) of the faces containing σ.
    pub corners: Vec<usize>,
}

impl CubicalCell {
    pub fn dim(&self) -> usize {
        self.face.codim()
    }
}

/// One cell per face, in face-lattice order.
pub fn cubical_subdivision(q: &SimplePolytope) -> Vec<CubicalCell> {
    let faces = face_lattice(q);
    faces
        .iter()
        .map(|s| CubicalCell {
            face: s.clone(),
            corners: (0..faces.len()).filter(|&t| s.is_subface_of(&faces[t])).collect(),
        })
        .collect()
}

/// I_τ is a face of I_σ exactly when σ ⊆ τ.
pub fn is_cell_face(tau: &CubicalCell, sigma: &CubicalCell) -> bool {
    sigma.face.is_subface_of(&tau.face)
}

/// A vertex of the assembled complex: a face τ and a point of the torus over its centre.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GlobalVertexLabel {
    facets: Vec<usize>,
    t: Vec<u8>,
    key: String,
}

impl GlobalVertexLabel {
    pub fn new(mut facets: Vec<usize>, t: Vec<u8>) -> Self {
        facets.sort_unstable();
        let fs: Vec<String> = facets.iter().map(|f| f.to_string()).collect();
        let ds: String = t.iter().map(|d| char::from(b'0' + d)).collect();
        let key = format!("τ:{}|t:{}", fs.join(","), ds);
        GlobalVertexLabel { facets, t, key }
    }

    /// Parses the canonical rendering `τ:<facets>|t:<digits>`.
    pub fn parse(s: &str) -> Option<Self> {
        let rest = s.strip_prefix("τ:")?;
        let (fs, ds) = rest.split_once("|t:")?;
        let facets = if fs.is_empty() {
            Vec::new()
        } else {
            fs.split(',').map(|x| x.parse().ok()).collect::<Option<Vec<usize>>>()?
        };
        let t = ds
            .chars()
            .map(|c| c.to_digit(3).map(|d| d as u8))
            .collect::<Option<Vec<u8>>>()?;
        let label = GlobalVertexLabel::new(facets, t);
        (label.key == s).then_some(label)
    }

    pub fn facets(&self) -> &[usize] {
        &self.facets
    }

    pub fn t(&self) -> &[u8] {
        &self.t
    }

    pub fn as_str(&self) -> &str {
        &self.key
    }
}

impl PartialOrd for GlobalVertexLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GlobalVertexLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key.cmp(&other.key)
    }
}

impl fmt::Display for GlobalVertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

/// Symmetric coordinates → global label over the face σ whose block contains it.
/// The face is cut out by the facets of σ whose symbols are collapsed; t lists
/// z over the surviving symbols, skipping the first (where z = 0).
pub fn global_label(xi: &CharacteristicFunction, sigma: &Face, v: &SymVertex) -> GlobalVertexLabel {
    let facets: Vec<usize> = sigma.facets.iter().copied().filter(|&f| !v.has(xi.symbol(f))).collect();
    let t: Vec<u8> = v.symbols().skip(1).map(|s| v.z[s]).collect();
    GlobalVertexLabel::new(facets, t)
}

/// Inverse of `global_label`.
pub fn label_to_sym(xi: &CharacteristicFunction, n: usize, label: &GlobalVertexLabel) -> Option<SymVertex> {
    let all = (1u32 << (n + 1)) - 1;
    if label.facets.iter().any(|&f| f >= xi.symbols().len()) {
        return None;
    }
    let present = all & !xi.mask(&label.facets);
    if present.count_ones() as usize != label.t.len() + 1 {
        return None;
    }
    let mut z = vec![0u8; n + 1];
    for (s, &d) in (0..=n).filter(|s| present >> s & 1 == 1).skip(1).zip(&label.t) {
        z[s] = d;
    }
    Some(SymVertex::new(present, z))
}

/// Action of g ∈ Z_3^n on global labels.
pub fn act_on_label(
    xi: &CharacteristicFunction,
    n: usize,
    g: &GroupElement,
    label: &GlobalVertexLabel,
) -> Option<GlobalVertexLabel> {
    let v = label_to_sym(xi, n, label)?.translate(g);
    let t: Vec<u8> = v.symbols().skip(1).map(|s| v.z[s]).collect();
    Some(GlobalVertexLabel::new(label.facets.clone(), t))
}

/// The block assigned to π^{-1}(I_σ): collapsed circles for the symbols on
/// σ's facets; e_0 becomes the coned-zero factor at the smallest free index.
pub fn block_spec_for_face(
    q: &SimplePolytope,
    xi: &CharacteristicFunction,
    sigma: &Face,
) -> Result<FactorSpec, ToricError> {
    let n = q.dim();
    let syms: Vec<usize> = sigma.facets.iter().map(|&f| xi.symbol(f)).collect();
    let distinct: HashSet<usize> = syms.iter().copied().collect();
    if distinct.len() != syms.len() {
        return Err(ToricError::NonStandard(format!("repeated symbols on face {:?}", sigma.facets)));
    }
    let own: Vec<usize> = syms.iter().copied().filter(|&s| s != 0).collect();
    let mut kinds = vec![FactorKind::Circle; n];
    for &j in &own {
        kinds[j - 1] = FactorKind::ConedOwn;
    }
    if distinct.contains(&0) {
        let k = (1..=n).find(|j| !own.contains(j)).ok_or_else(|| {
            ToricError::NonStandard(format!("no free factor for e0 on face {:?}", sigma.facets))
        })?;
        kinds[k - 1] = FactorKind::ConedZero;
    }
    Ok(FactorSpec::new(kinds)?)
}

/// A block instantiated over one face, in global labels.
#[derive(Debug, Clone)]
pub struct PlacedBlock {
    pub face: Face,
    pub spec: FactorSpec,
    pub complex: SimplicialComplex<GlobalVertexLabel>,
}

#[derive(Debug, Clone)]
pub struct AssembledComplex {
    pub polytope: SimplePolytope,
    pub xi: CharacteristicFunction,
    pub complex: SimplicialComplex<GlobalVertexLabel>,
    /// One entry per face, in face-lattice order.
    pub blocks: Vec<PlacedBlock>,
    /// Facet → index of the vertex block it came from.
    pub provenance: HashMap<Simplex<GlobalVertexLabel>, usize>,
}

impl AssembledComplex {
    pub fn n(&self) -> usize {
        self.polytope.dim()
    }

    pub fn action(&self) -> Result<GroupAction<GlobalVertexLabel>, ToricError> {
        let n = self.n();
        let xi = &self.xi;
        Ok(GroupAction::from_fn(self.complex.vertices(), n, |i, v| {
            let mut g = vec![0; n];
            g[i] = 1;
            act_on_label(xi, n, &GroupElement(g), v).expect("label of this complex")
        })?)
    }

    /// Number of vertices over each face.
    pub fn strata(&self) -> BTreeMap<Vec<usize>, usize> {
        let mut m = BTreeMap::new();
        for v in self.complex.vertices() {
            *m.entry(v.facets.clone()).or_default() += 1;
        }
        m
    }
}

pub fn assemble_toric(q: &SimplePolytope, xi: &CharacteristicFunction) -> Result<AssembledComplex, ToricError> {
    if !validate_characteristic(q, xi) {
        return Err(ToricError::NonStandard("two facets at a vertex share a symbol".into()));
    }
    let n = q.dim();
    let faces = face_lattice(q);
    let tower = Tower::new(n);
    let blocks: Vec<PlacedBlock> = faces
        .par_iter()
        .map(|sigma| {
            let spec = block_spec_for_face(q, xi, sigma)?;
            let block = build_block_with(&tower, &spec)?;
            let complex = block
                .complex
                .relabel(|b| global_label(xi, sigma, &from_frame(&spec, b)), true)?;
            Ok(PlacedBlock { face: sigma.clone(), spec, complex })
        })
        .collect::<Result<_, ToricError>>()?;

    // a larger face's block is exactly the restriction of a smaller face's block
    for inner in &blocks {
        for outer in &blocks {
            if inner.face == outer.face || !inner.face.is_subface_of(&outer.face) {
                continue;
            }
            let verts: HashSet<&GlobalVertexLabel> = outer.complex.vertices().iter().collect();
            if inner.complex.restrict(|v| verts.contains(v)) != outer.complex {
                return Err(ToricError::Gluing { outer: outer.face.facets.clone(), inner: inner.face.facets.clone() });
            }
        }
    }

    let mut all = Vec::new();
    for b in &blocks {
        all.extend(b.complex.facets().iter().cloned());
    }
    let complex = SimplicialComplex::from_simplices(all)?;

    let facet_set: HashSet<&Simplex<GlobalVertexLabel>> = complex.facets().iter().collect();
    let mut provenance = HashMap::new();
    for (i, b) in blocks.iter().enumerate().filter(|(_, b)| b.face.codim() == n) {
        for f in b.complex.facets() {
            if facet_set.contains(f) {
                provenance.insert(f.clone(), i);
            }
        }
    }

    let out = AssembledComplex { polytope: q.clone(), xi: xi.clone(), complex, blocks, provenance };

    let strata = out.strata();
    let mut expected = 0;
    for f in &faces {
        let d = q.face_dim(f);
        let got = strata.get(&f.facets).copied().unwrap_or(0);
        if got != 3usize.pow(d as u32) {
            return Err(ToricError::Stratum { face: f.facets.clone(), dim: d, got });
        }
        expected += got;
    }
    if out.complex.vertices().len() != expected {
        return Err(ToricError::VertexCount { expected, got: out.complex.vertices().len() });
    }
    if !out.complex.is_equivariant(&out.action()?)? {
        return Err(ToricError::NotEquivariant);
    }
    Ok(out)
}

pub fn assemble_cpn(n: usize) -> Result<AssembledComplex, ToricError> {
    if n < 1 {
        return Err(ToricError::BadDimension(n));
    }
    let q = simplex_polytope(n)?;
    let out = assemble_toric(&q, &CharacteristicFunction::standard_simplex(n))?;
    let expected = vertex_count_formula(n)?;
    if BigUint::from(out.complex.vertices().len()) != expected {
        return Err(ToricError::VertexCount {
            expected: usize::try_from(&expected).unwrap_or(usize::MAX),
            got: out.complex.vertices().len(),
        });
    }
    Ok(out)
}

/// (4^{n+1} − 1)/3, checked against Σ_k C(n+1, k+1)·3^k.
pub fn vertex_count_formula(n: usize) -> Result<BigUint, ToricError> {
    if n < 1 {
        return Err(ToricError::BadDimension(n));
    }
    let closed = (BigUint::from(4u32).pow(n as u32 + 1) - 1u32) / 3u32;
    let mut sum = BigUint::from(0u32);
    let mut binom = BigUint::from(n as u64 + 1); // C(n+1, 1)
    for k in 0..=n {
        sum += &binom * BigUint::from(3u32).pow(k as u32);
        // C(n+1, k+2) = C(n+1, k+1)·(n−k)/(k+2)
        binom = binom * BigUint::from((n - k) as u64) / BigUint::from(k as u64 + 2);
    }
    assert_eq!(closed, sum, "vertex count identity");
    Ok(closed)
}
