//! The cube triangulation ℐ^n on the grid {0, 1/3, 2/3, 1}^n and the
//! 3^n-vertex Z_3^n-equivariant torus 𝒯^n obtained by identifying opposite faces.
//!
//! Grid coordinates are stored in thirds (0..=3), torus coordinates as
//! residues mod 3.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::simplicial::{ComplexError, GroupAction, Simplex, SimplicialComplex, SimplicialMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("dimension {0} out of range")]
    BadDimension(usize),
    #[error("factor index {0} out of range 1..={1}")]
    BadIndex(usize, usize),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("construction mismatch: {0}")]
    Mismatch(String),
}

/// A point of the 1/3-grid in I^n, coordinates in thirds.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridVertex(pub Vec<u8>);

/// A vertex of 𝒯^n: residues mod 3.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusVertex(pub Vec<u8>);

/// An element of Z_3^n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<u8>);

impl TorusVertex {
    pub fn translate(&self, g: &GroupElement) -> TorusVertex {
        TorusVertex(self.0.iter().zip(&g.0).map(|(x, a)| (x + a) % 3).collect())
    }

    /// Digits, e.g. `012`.
    pub fn render(&self) -> String {
        self.0.iter().map(|d| char::from(b'0' + d)).collect()
    }
}

impl GroupElement {
    pub fn all(n: usize) -> Vec<GroupElement> {
        residue_vectors(n, 3).into_iter().map(GroupElement).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

/// All vectors of length `n` with entries in `0..base`, lexicographically.
pub fn residue_vectors(n: usize, base: u8) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u8>| {
                (0..base).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

/// Monotone chains from `base` adding one unit step per coordinate, in every order.
fn kuhn_chains(base: &[u8]) -> Vec<Vec<Vec<u8>>> {
    permutations(base.len())
        .into_iter()
        .map(|p| {
            let mut cur = base.to_vec();
            let mut chain = vec![cur.clone()];
            for i in p {
                cur[i] += 1;
                chain.push(cur.clone());
            }
            chain
        })
        .collect()
}

/// Freudenthal triangulation of the unit cube on its 2^n corners (n! facets).
pub fn freudenthal_cube(n: usize) -> Result<SimplicialComplex<Vec<u8>>, TorusError> {
    if n < 1 {
        return Err(TorusError::BadDimension(n));
    }
    Ok(SimplicialComplex::new(kuhn_chains(&vec![0; n]))?)
}

/// ℐ^n: the 3^n subcubes of side 1/3, each triangulated as `freudenthal_cube`.
pub fn triangulate_in(n: usize) -> Result<SimplicialComplex<GridVertex>, TorusError> {
    if n < 1 {
        return Err(TorusError::BadDimension(n));
    }
    let mut facets = Vec::new();
    for base in residue_vectors(n, 3) {
        for chain in kuhn_chains(&base) {
            facets.push(Simplex::new(chain.into_iter().map(GridVertex).collect())?);
        }
    }
    Ok(SimplicialComplex::from_simplices(facets)?)
}

/// 𝒯^n: ℐ^n with coordinates reduced mod 3, identified strictly.
pub fn torus_complex(n: usize) -> Result<SimplicialComplex<TorusVertex>, TorusError> {
    let cube = triangulate_in(n)?;
    Ok(cube.relabel(|v| TorusVertex(v.0.iter().map(|x| x % 3).collect()), true)?)
}

/// The torus for `n ≥ 1`, a single point for `n = 0`.
pub fn torus_or_point(n: usize) -> Result<SimplicialComplex<TorusVertex>, TorusError> {
    if n == 0 {
        return Ok(SimplicialComplex::new(vec![vec![TorusVertex(vec![])]])?);
    }
    torus_complex(n)
}

/// Generator `i` adds 1 to coordinate `i` (0-based here, factor `i + 1`).
pub fn z3n_action(n: usize) -> Result<GroupAction<TorusVertex>, TorusError> {
    let verts: Vec<TorusVertex> = residue_vectors(n, 3).into_iter().map(TorusVertex).collect();
    Ok(GroupAction::from_fn(&verts, n, |i, v| {
        let mut w = v.0.clone();
        w[i] = (w[i] + 1) % 3;
        TorusVertex(w)
    })?)
}

fn check_indices(n: usize, idx: &[usize]) -> Result<(), TorusError> {
    for (p, &i) in idx.iter().enumerate() {
        if i < 1 || i > n {
            return Err(TorusError::BadIndex(i, n));
        }
        if p > 0 && idx[p - 1] >= i {
            return Err(TorusError::Mismatch(format!("indices {idx:?} not strictly increasing")));
        }
    }
    Ok(())
}

/// 𝒯^k ↪ 𝒯^n on the selected (1-based, increasing) factors; other coordinates 0.
pub fn subtorus_inclusion(
    n: usize,
    idx: &[usize],
) -> Result<SimplicialMap<TorusVertex, TorusVertex>, TorusError> {
    check_indices(n, idx)?;
    let source = torus_or_point(idx.len())?;
    let target = torus_complex(n)?;
    Ok(SimplicialMap::new(&source, &target, |v| {
        let mut w = vec![0; n];
        for (p, &i) in idx.iter().enumerate() {
            w[i - 1] = v.0[p];
        }
        TorusVertex(w)
    })?)
}

/// 𝒯^n → 𝒯^k keeping the selected factors.
pub fn subtorus_projection(
    n: usize,
    idx: &[usize],
) -> Result<SimplicialMap<TorusVertex, TorusVertex>, TorusError> {
    check_indices(n, idx)?;
    let source = torus_complex(n)?;
    let target = torus_or_point(idx.len())?;
    Ok(SimplicialMap::new(&source, &target, |v| {
        TorusVertex(idx.iter().map(|&i| v.0[i - 1]).collect())
    })?)
}

/// 𝒯^n read with factor `k` as the diagonal circle S^1_0.
#[derive(Debug, Clone)]
pub struct TorusK {
    pub complex: SimplicialComplex<TorusVertex>,
    pub zero_factor: usize,
}

/// Builds 𝒯^n_k by cutting ℐ^n into the pieces A_σ − e_σ of the
/// parallelepiped spanned by e_1, …, e_0 (at k), …, e_n, translating them
/// back and identifying; the result must coincide with 𝒯^n.
pub fn torus_k_complex(n: usize, k: usize) -> Result<TorusK, TorusError> {
    if k < 1 || k > n {
        return Err(TorusError::BadIndex(k, n));
    }
    let cube = triangulate_in(n)?;
    let kk = k - 1;
    let others: Vec<usize> = (0..n).filter(|&i| i != kk).collect();
    let mut pieces: Vec<Simplex<TorusVertex>> = Vec::new();
    let mut covered: BTreeSet<&Simplex<GridVertex>> = BTreeSet::new();
    for mask in 0u32..(1 << others.len()) {
        let sigma: Vec<usize> = others.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i).collect();
        let inside = |y: &GridVertex| {
            others.iter().all(|&i| if sigma.contains(&i) { y.0[i] <= y.0[kk] } else { y.0[i] >= y.0[kk] })
        };
        for f in cube.facets() {
            if !f.vertices().iter().all(inside) {
                continue;
            }
            covered.insert(f);
            let mut img = Vec::with_capacity(f.len());
            for y in f.vertices() {
                let x: Vec<u8> = (0..n).map(|i| y.0[i] + if sigma.contains(&i) { 3 } else { 0 }).collect();
                // x must lie in the parallelepiped: x = Σ s_i e_i + s_k e_0, 0 ≤ s ≤ 3
                let sk = x[kk];
                if !others.iter().all(|&i| x[i] >= sk && x[i] - sk <= 3) {
                    return Err(TorusError::Mismatch(format!("{x:?} outside the parallelepiped")));
                }
                img.push(TorusVertex(x.iter().map(|c| c % 3).collect()));
            }
            let s = Simplex::collapsed(img);
            if s.len() != f.len() {
                return Err(TorusError::Mismatch("identification not simplicial".into()));
            }
            pieces.push(s);
        }
    }
    if covered.len() != cube.facets().len() {
        return Err(TorusError::Mismatch("pieces do not cover the cube".into()));
    }
    let via_pieces = SimplicialComplex::from_simplices(pieces)?;
    let direct = torus_complex(n)?;
    if via_pieces != direct {
        return Err(TorusError::Mismatch(format!("𝒯^{n}_{k} differs from 𝒯^{n}")));
    }
    Ok(TorusK { complex: direct, zero_factor: k })
}
