//! Abstract simplicial complexes over arbitrary totally ordered vertex labels.
//!
//! A complex is stored by its maximal simplices only; every other face is
//! implied. Vertices are ordered by the label type's `Ord`, which acts as the
//! global vertex order for staircase products and canonical output.

use std::cmp::Reverse;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

pub trait Label: Clone + Ord + Hash + Debug {}
impl<T: Clone + Ord + Hash + Debug> Label for T {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("empty facet list")]
    NoFacets,
    #[error("empty simplex")]
    EmptySimplex,
    #[error("duplicate vertex {0} within a simplex")]
    DuplicateVertex(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("cone apex {0} is already a vertex")]
    ApexCollision(String),
    #[error("relabelling collapses simplex {0}")]
    Collision(String),
    #[error("map undefined on vertex {0}")]
    Undefined(String),
    #[error("generator {0} is not a permutation of the vertex set")]
    NotPermutation(usize),
    #[error("generator {0} does not have order dividing 3")]
    BadOrder(usize),
    #[error("generators {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("image of {0} is not a simplex of the target")]
    NotSimplicial(String),
}

pub type Result<T> = std::result::Result<T, ComplexError>;

/// A nonempty, strictly increasing list of vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex<V>(Vec<V>);

impl<V: Label> Simplex<V> {
    pub fn new(mut vs: Vec<V>) -> Result<Self> {
        if vs.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        vs.sort();
        for w in vs.windows(2) {
            if w[0] == w[1] {
                return Err(ComplexError::DuplicateVertex(format!("{:?}", w[0])));
            }
        }
        Ok(Simplex(vs))
    }

    /// Sorts and removes repeated vertices instead of rejecting them.
    pub fn collapsed(mut vs: Vec<V>) -> Self {
        vs.sort();
        vs.dedup();
        Simplex(vs)
    }

    pub(crate) fn from_sorted(vs: Vec<V>) -> Self {
        debug_assert!(vs.windows(2).all(|w| w[0] < w[1]));
        Simplex(vs)
    }

    pub fn vertices(&self) -> &[V] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<V> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: &V) -> bool {
        self.0.binary_search(v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex<V>) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    /// Codimension-one faces, in order of the removed vertex.
    pub fn boundary(&self) -> impl Iterator<Item = Simplex<V>> + '_ {
        (0..self.0.len()).filter(|_| self.0.len() > 1).map(move |i| {
            let mut f = self.0.clone();
            f.remove(i);
            Simplex(f)
        })
    }

    /// All faces with exactly `k` vertices.
    pub fn faces_of_size(&self, k: usize) -> Vec<Simplex<V>> {
        let n = self.0.len();
        let mut out = Vec::new();
        if k == 0 || k > n {
            return out;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(Simplex(idx.iter().map(|&i| self.0[i].clone()).collect()));
            let mut i = k;
            while i > 0 && idx[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                return out;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    pub fn intersection(&self, keep: impl Fn(&V) -> bool) -> Vec<V> {
        self.0.iter().filter(|v| keep(v)).cloned().collect()
    }
}

/// Drops duplicates and every simplex that is a face of another one.
fn maximal<V: Label>(mut cands: Vec<Simplex<V>>) -> Vec<Simplex<V>> {
    cands.sort();
    cands.dedup();
    let mut order: Vec<usize> = (0..cands.len()).collect();
    order.sort_by_key(|&i| Reverse(cands[i].len()));
    let mut kept: Vec<usize> = Vec::new();
    let mut incidence: HashMap<&V, Vec<usize>> = HashMap::new();
    for &i in &order {
        let s = &cands[i];
        let mut best: Option<&Vec<usize>> = None;
        let mut uncovered = false;
        for v in s.vertices() {
            match incidence.get(v) {
                None => {
                    uncovered = true;
                    break;
                }
                Some(l) => {
                    if best.is_none_or(|b| l.len() < b.len()) {
                        best = Some(l);
                    }
                }
            }
        }
        let covered = !uncovered
            && best.is_some_and(|l| {
                l.iter().any(|&k| s.is_face_of(&cands[kept[k]]))
            });
        if !covered {
            let k = kept.len();
            kept.push(i);
            for v in s.vertices() {
                incidence.entry(v).or_default().push(k);
            }
        }
    }
    kept.sort_unstable();
    kept.into_iter().map(|i| cands[i].clone()).collect()
}

/// A finite abstract simplicial complex, stored by facets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex<V> {
    vertices: Vec<V>,
    facets: Vec<Simplex<V>>,
}

impl<V: Label> SimplicialComplex<V> {
    pub fn new<I, S>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<Vec<V>>,
    {
        let simplices = facets
            .into_iter()
            .map(|f| Simplex::new(f.into()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_simplices(simplices)
    }

    pub fn from_simplices(simplices: Vec<Simplex<V>>) -> Result<Self> {
        if simplices.is_empty() {
            return Err(ComplexError::NoFacets);
        }
        Ok(Self::from_simplices_or_empty(simplices))
    }

    /// Like `from_simplices` but an empty input gives the empty complex.
    pub fn from_simplices_or_empty(simplices: Vec<Simplex<V>>) -> Self {
        let facets = maximal(simplices);
        let vertices: BTreeSet<V> = facets.iter().flat_map(|f| f.0.iter().cloned()).collect();
        SimplicialComplex { vertices: vertices.into_iter().collect(), facets }
    }

    pub fn empty() -> Self {
        SimplicialComplex { vertices: Vec::new(), facets: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Simplex<V>] {
        &self.facets
    }

    pub fn has_vertex(&self, v: &V) -> bool {
        self.vertices.binary_search(v).is_ok()
    }

    /// Dimension of the largest facet; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.dim()).max()
    }

    /// Faces grouped by dimension, each group sorted.
    pub fn faces(&self) -> Vec<Vec<Simplex<V>>> {
        let d = match self.dim() {
            Some(d) => d,
            None => return Vec::new(),
        };
        let mut sets: Vec<HashSet<Simplex<V>>> = vec![HashSet::new(); d + 1];
        for f in &self.facets {
            for k in 1..=f.len() {
                for s in f.faces_of_size(k) {
                    sets[k - 1].insert(s);
                }
            }
        }
        sets.into_iter()
            .map(|s| {
                let mut v: Vec<_> = s.into_iter().collect();
                v.sort();
                v
            })
            .collect()
    }

    pub fn faces_of_dim(&self, k: usize) -> Vec<Simplex<V>> {
        let mut set = HashSet::new();
        for f in &self.facets {
            for s in f.faces_of_size(k + 1) {
                set.insert(s);
            }
        }
        let mut v: Vec<_> = set.into_iter().collect();
        v.sort();
        v
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces().iter().map(|l| l.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    fn incidence(&self) -> HashMap<&V, Vec<usize>> {
        let mut inc: HashMap<&V, Vec<usize>> = HashMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for v in f.vertices() {
                inc.entry(v).or_default().push(i);
            }
        }
        inc
    }

    pub fn contains_simplex(&self, s: &Simplex<V>) -> bool {
        self.facets.iter().any(|f| s.is_face_of(f))
    }

    pub fn star(&self, v: &V) -> Result<Self> {
        if !self.has_vertex(v) {
            return Err(ComplexError::UnknownVertex(format!("{v:?}")));
        }
        let fs = self.facets.iter().filter(|f| f.contains(v)).cloned().collect();
        Ok(Self::from_simplices_or_empty(fs))
    }

    /// The link of `v`; empty when `v` is an isolated vertex.
    pub fn link(&self, v: &V) -> Result<Self> {
        if !self.has_vertex(v) {
            return Err(ComplexError::UnknownVertex(format!("{v:?}")));
        }
        let fs = self
            .facets
            .iter()
            .filter(|f| f.contains(v) && f.len() > 1)
            .map(|f| Simplex(f.0.iter().filter(|w| *w != v).cloned().collect()))
            .collect();
        Ok(Self::from_simplices_or_empty(fs))
    }

    pub fn cone(&self, apex: V) -> Result<Self> {
        if self.has_vertex(&apex) {
            return Err(ComplexError::ApexCollision(format!("{apex:?}")));
        }
        if self.is_empty() {
            return Ok(Self::from_simplices_or_empty(vec![Simplex(vec![apex])]));
        }
        let fs = self
            .facets
            .iter()
            .map(|f| {
                let mut vs = f.0.clone();
                vs.push(apex.clone());
                Simplex::collapsed(vs)
            })
            .collect();
        Ok(Self::from_simplices_or_empty(fs))
    }

    /// Image under a vertex map. Collapsing simplices are allowed unless
    /// `strict`, in which case any collision inside a simplex is an error.
    pub fn relabel<W: Label>(&self, f: impl Fn(&V) -> W, strict: bool) -> Result<SimplicialComplex<W>> {
        let mut out = Vec::with_capacity(self.facets.len());
        for s in &self.facets {
            let img: Vec<W> = s.0.iter().map(&f).collect();
            let n = img.len();
            let t = Simplex::collapsed(img);
            if strict && t.len() != n {
                return Err(ComplexError::Collision(format!("{:?}", s.0)));
            }
            out.push(t);
        }
        Ok(SimplicialComplex::from_simplices_or_empty(out))
    }

    /// Like `relabel`, but partial maps are rejected.
    pub fn relabel_with<W: Label>(
        &self,
        f: impl Fn(&V) -> Option<W>,
        strict: bool,
    ) -> Result<SimplicialComplex<W>> {
        for v in &self.vertices {
            if f(v).is_none() {
                return Err(ComplexError::Undefined(format!("{v:?}")));
            }
        }
        self.relabel(|v| f(v).unwrap(), strict)
    }

    /// True iff every facet of `self` is a face of some facet of `other`.
    pub fn is_subcomplex(&self, other: &Self) -> bool {
        let inc = other.incidence();
        self.facets.iter().all(|s| {
            let mut best: Option<&Vec<usize>> = None;
            for v in s.vertices() {
                match inc.get(v) {
                    None => return false,
                    Some(l) => {
                        if best.is_none_or(|b| l.len() < b.len()) {
                            best = Some(l);
                        }
                    }
                }
            }
            best.is_some_and(|l| l.iter().any(|&i| s.is_face_of(&other.facets[i])))
        })
    }

    /// Induced subcomplex on the vertices satisfying `keep`.
    pub fn restrict(&self, keep: impl Fn(&V) -> bool) -> Self {
        let fs = self
            .facets
            .iter()
            .map(|f| f.intersection(&keep))
            .filter(|v| !v.is_empty())
            .map(Simplex)
            .collect();
        Self::from_simplices_or_empty(fs)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut fs = self.facets.clone();
        fs.extend(other.facets.iter().cloned());
        Self::from_simplices_or_empty(fs)
    }

    pub fn is_pure(&self) -> bool {
        let mut it = self.facets.iter().map(|f| f.len());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Ridges (codimension-one faces) with the number of facets containing each.
    pub fn ridge_degrees(&self) -> HashMap<Simplex<V>, usize> {
        let mut deg: HashMap<Simplex<V>, usize> = HashMap::new();
        for f in &self.facets {
            for r in f.boundary() {
                *deg.entry(r).or_default() += 1;
            }
        }
        deg
    }

    pub fn pseudomanifold_report(&self, allow_boundary: bool) -> PseudomanifoldReport<V> {
        let pure = self.is_pure();
        let deg = self.ridge_degrees();
        let mut bad: Vec<(Simplex<V>, usize)> = deg
            .iter()
            .filter(|(_, &c)| c > 2 || (c < 2 && !allow_boundary))
            .map(|(r, &c)| (r.clone(), c))
            .collect();
        bad.sort();
        let connected = self.strongly_connected();
        PseudomanifoldReport { pure, bad_ridge: bad.into_iter().next(), connected }
    }

    pub fn is_pseudomanifold(&self, allow_boundary: bool) -> bool {
        !self.is_empty() && self.pseudomanifold_report(allow_boundary).ok()
    }

    /// Facets connected through shared ridges form a single class.
    pub fn strongly_connected(&self) -> bool {
        let n = self.facets.len();
        if n <= 1 {
            return true;
        }
        let mut by_ridge: HashMap<Simplex<V>, Vec<usize>> = HashMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for r in f.boundary() {
                by_ridge.entry(r).or_default().push(i);
            }
        }
        let mut adj = vec![Vec::new(); n];
        for l in by_ridge.values() {
            for w in l.windows(2) {
                adj[w[0]].push(w[1]);
                adj[w[1]].push(w[0]);
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == n
    }

    /// Ridges lying in exactly one facet.
    pub fn boundary(&self) -> Self {
        let fs = self
            .ridge_degrees()
            .into_iter()
            .filter(|(r, c)| *c == 1 && !r.is_empty())
            .map(|(r, _)| r)
            .collect();
        Self::from_simplices_or_empty(fs)
    }

    /// True iff every generator maps every facet onto a facet.
    pub fn is_equivariant(&self, action: &GroupAction<V>) -> Result<bool> {
        for v in &self.vertices {
            if !action.acts_on(v) {
                return Err(ComplexError::Undefined(format!("{v:?}")));
            }
        }
        let facets: HashSet<&Simplex<V>> = self.facets.iter().collect();
        for g in &action.generators {
            for f in &self.facets {
                let img = Simplex::collapsed(f.0.iter().map(|v| g[v].clone()).collect());
                if !facets.contains(&img) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Checks every group element, not only the generators.
    pub fn is_equivariant_exhaustive(&self, action: &GroupAction<V>) -> Result<(bool, usize)> {
        for v in &self.vertices {
            if !action.acts_on(v) {
                return Err(ComplexError::Undefined(format!("{v:?}")));
            }
        }
        let facets: HashSet<&Simplex<V>> = self.facets.iter().collect();
        let elems = action.elements();
        for e in &elems {
            for f in &self.facets {
                let img = Simplex::collapsed(f.0.iter().map(|v| action.apply(e, v)).collect());
                if !facets.contains(&img) {
                    return Ok((false, elems.len()));
                }
            }
        }
        Ok((true, elems.len()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudomanifoldReport<V> {
    pub pure: bool,
    /// First offending ridge and the number of facets containing it.
    pub bad_ridge: Option<(Simplex<V>, usize)>,
    pub connected: bool,
}

impl<V> PseudomanifoldReport<V> {
    pub fn ok(&self) -> bool {
        self.pure && self.bad_ridge.is_none() && self.connected
    }
}

/// Step sequences of all monotone lattice paths through a box with the given
/// side lengths: each entry names the factor advanced at that step.
pub fn monotone_paths(lens: &[usize]) -> Vec<Vec<usize>> {
    fn go(rem: &mut [usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem.iter().all(|&r| r == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..rem.len() {
            if rem[i] > 0 {
                rem[i] -= 1;
                cur.push(i);
                go(rem, cur, out);
                cur.pop();
                rem[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut lens.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Staircase triangulation of |K| × |L| with vertex set V(K) × V(L).
pub fn staircase_product<V: Label, W: Label>(
    k: &SimplicialComplex<V>,
    l: &SimplicialComplex<W>,
) -> SimplicialComplex<(V, W)> {
    let mut out = Vec::new();
    for f in k.facets() {
        for g in l.facets() {
            for path in monotone_paths(&[f.dim(), g.dim()]) {
                let (mut i, mut j) = (0, 0);
                let mut chain = vec![(f.0[0].clone(), g.0[0].clone())];
                for step in path {
                    if step == 0 {
                        i += 1
                    } else {
                        j += 1
                    }
                    chain.push((f.0[i].clone(), g.0[j].clone()));
                }
                out.push(Simplex::from_sorted(chain));
            }
        }
    }
    SimplicialComplex::from_simplices_or_empty(out)
}

/// Staircase triangulation of a product of several complexes over one label type.
pub fn staircase_product_many<V: Label>(factors: &[SimplicialComplex<V>]) -> SimplicialComplex<Vec<V>> {
    let mut out = Vec::new();
    let mut choice: Vec<usize> = vec![0; factors.len()];
    if factors.iter().any(|f| f.is_empty()) {
        return SimplicialComplex::empty();
    }
    loop {
        let fs: Vec<&Simplex<V>> = choice.iter().zip(factors).map(|(&c, k)| &k.facets[c]).collect();
        let dims: Vec<usize> = fs.iter().map(|f| f.dim()).collect();
        for path in monotone_paths(&dims) {
            let mut pos = vec![0usize; fs.len()];
            let point = |pos: &[usize]| -> Vec<V> { pos.iter().zip(&fs).map(|(&p, f)| f.0[p].clone()).collect() };
            let mut chain = vec![point(&pos)];
            for step in path {
                pos[step] += 1;
                chain.push(point(&pos));
            }
            out.push(Simplex::from_sorted(chain));
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return SimplicialComplex::from_simplices_or_empty(out);
            }
            choice[i] += 1;
            if choice[i] < factors[i].facets.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// A group action given by generator permutations of a vertex set.
///
/// `new` only requires permutations; `new_z3` additionally demands the
/// generators to commute and have order dividing 3, i.e. an action of (Z_3)^k.
#[derive(Debug, Clone)]
pub struct GroupAction<V> {
    generators: Vec<HashMap<V, V>>,
}

impl<V: Label> GroupAction<V> {
    pub fn new(generators: Vec<HashMap<V, V>>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            let img: HashSet<&V> = g.values().collect();
            if img.len() != g.len() || g.values().any(|w| !g.contains_key(w)) {
                return Err(ComplexError::NotPermutation(i));
            }
        }
        Ok(GroupAction { generators })
    }

    pub fn new_z3(generators: Vec<HashMap<V, V>>) -> Result<Self> {
        let a = Self::new(generators)?;
        a.check_z3()?;
        Ok(a)
    }

    pub fn check_z3(&self) -> Result<()> {
        let generators = &self.generators;
        for (i, g) in generators.iter().enumerate() {
            if g.keys().any(|v| &g[&g[&g[v]]] != v) {
                return Err(ComplexError::BadOrder(i));
            }
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                let (a, b) = (&generators[i], &generators[j]);
                if a.len() != b.len() || a.keys().any(|v| !b.contains_key(v)) {
                    return Err(ComplexError::NotCommuting(i, j));
                }
                if a.keys().any(|v| a[&b[v]] != b[&a[v]]) {
                    return Err(ComplexError::NotCommuting(i, j));
                }
            }
        }
        Ok(())
    }

    /// Builds the (Z_3)^rank action with generator `i` given by `v ↦ f(i, v)`.
    pub fn from_fn(vertices: &[V], rank: usize, f: impl Fn(usize, &V) -> V) -> Result<Self> {
        let gens = (0..rank)
            .map(|i| vertices.iter().map(|v| (v.clone(), f(i, v))).collect())
            .collect();
        Self::new_z3(gens)
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[HashMap<V, V>] {
        &self.generators
    }

    pub fn acts_on(&self, v: &V) -> bool {
        self.generators.iter().all(|g| g.contains_key(v))
    }

    /// Applies the element with the given generator exponents.
    pub fn apply(&self, exps: &[u8], v: &V) -> V {
        let mut w = v.clone();
        for (g, &e) in self.generators.iter().zip(exps) {
            for _ in 0..e % 3 {
                w = g[&w].clone();
            }
        }
        w
    }

    /// All 3^k exponent vectors.
    pub fn elements(&self) -> Vec<Vec<u8>> {
        let k = self.generators.len();
        let mut out = vec![vec![]];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|e: Vec<u8>| {
                    (0..3u8).map(move |x| {
                        let mut e = e.clone();
                        e.push(x);
                        e
                    })
                })
                .collect();
        }
        out
    }

    pub fn orbit(&self, v: &V) -> BTreeSet<V> {
        self.elements().iter().map(|e| self.apply(e, v)).collect()
    }
}

/// A vertex map together with its source and target complexes.
#[derive(Debug, Clone)]
pub struct SimplicialMap<V, W> {
    map: HashMap<V, W>,
}

impl<V: Label, W: Label> SimplicialMap<V, W> {
    /// Builds the map and verifies that every source facet lands on a simplex.
    pub fn new(
        source: &SimplicialComplex<V>,
        target: &SimplicialComplex<W>,
        f: impl Fn(&V) -> W,
    ) -> Result<Self> {
        let map: HashMap<V, W> = source.vertices().iter().map(|v| (v.clone(), f(v))).collect();
        let m = SimplicialMap { map };
        for s in source.facets() {
            let img = m.image(s);
            if !target.contains_simplex(&img) {
                return Err(ComplexError::NotSimplicial(format!("{:?}", s.vertices())));
            }
        }
        Ok(m)
    }

    pub fn get(&self, v: &V) -> Option<&W> {
        self.map.get(v)
    }

    pub fn image(&self, s: &Simplex<V>) -> Simplex<W> {
        Simplex::collapsed(s.vertices().iter().map(|v| self.map[v].clone()).collect())
    }

    pub fn image_complex(&self, source: &SimplicialComplex<V>) -> SimplicialComplex<W> {
        SimplicialComplex::from_simplices_or_empty(source.facets().iter().map(|s| self.image(s)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hollow() -> SimplicialComplex<u32> {
        SimplicialComplex::new(vec![vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap()
    }

    #[test]
    fn make_complex_examples() {
        let t = SimplicialComplex::new(vec![vec![1u32, 2, 3]]).unwrap();
        assert_eq!(t.f_vector(), vec![3, 3, 1]);
        assert_eq!(hollow().f_vector(), vec![3, 3]);
        let a = SimplicialComplex::new(vec![vec![1u32, 2, 3], vec![2, 3]]).unwrap();
        assert_eq!(a, t);
        assert_eq!(SimplicialComplex::<u32>::new(Vec::<Vec<u32>>::new()), Err(ComplexError::NoFacets));
        assert!(matches!(
            SimplicialComplex::new(vec![vec![1u32, 1]]),
            Err(ComplexError::DuplicateVertex(_))
        ));
        assert_eq!(SimplicialComplex::new(vec![Vec::<u32>::new()]), Err(ComplexError::EmptySimplex));
    }

    #[test]
    fn euler() {
        assert_eq!(hollow().euler_characteristic(), 0);
        let t = SimplicialComplex::new(vec![vec![1u32, 2, 3]]).unwrap();
        assert_eq!(t.euler_characteristic(), 1);
    }

    #[test]
    fn star_link_cone() {
        let h = hollow();
        let l = h.link(&1).unwrap();
        assert_eq!(l.facets().len(), 2);
        assert_eq!(l.vertices(), &[2, 3]);
        assert_eq!(h.star(&1).unwrap().facets().len(), 2);
        assert!(h.link(&9).is_err());
        let c = h.cone(0).unwrap();
        assert_eq!(c.f_vector(), vec![4, 6, 3]);
        assert_eq!(c.euler_characteristic(), 1);
        assert_eq!(c.link(&0).unwrap(), h);
        assert!(h.cone(1).is_err());
        let p = SimplicialComplex::new(vec![vec![5u32]]).unwrap().cone(0).unwrap();
        assert_eq!(p.f_vector(), vec![2, 1]);
    }

    #[test]
    fn staircase_examples() {
        let e = SimplicialComplex::new(vec![vec![0u32, 1]]).unwrap();
        let t = SimplicialComplex::new(vec![vec![0u32, 1, 2]]).unwrap();
        assert_eq!(staircase_product(&e, &e).facets().len(), 2);
        let p = staircase_product(&t, &e);
        assert_eq!(p.facets().len(), 3);
        assert_eq!(p.vertices().len(), 6);
        assert_eq!(p.euler_characteristic(), 1);
    }

    #[test]
    fn relabel_quotient_path_to_circle() {
        let path = SimplicialComplex::new(vec![vec![0u32, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let c = path.relabel(|&v| v % 3, true).unwrap();
        assert_eq!(c, hollow().relabel(|&v| v - 1, true).unwrap());
        assert_eq!(path.relabel(|&v| v, true).unwrap(), path);
        assert!(matches!(path.relabel(|&v| v / 2, true), Err(ComplexError::Collision(_))));
        assert_eq!(path.relabel(|&v| v / 2, false).unwrap().facets().len(), 1);
    }

    #[test]
    fn subcomplex() {
        let h = hollow();
        assert!(h.is_subcomplex(&h.cone(0).unwrap()));
        let t = SimplicialComplex::new(vec![vec![1u32, 2, 3]]).unwrap();
        assert!(!t.is_subcomplex(&h));
        assert!(h.is_subcomplex(&t));
    }

    #[test]
    fn equivariance() {
        let h = hollow();
        let rot = GroupAction::from_fn(h.vertices(), 1, |_, &v| v % 3 + 1).unwrap();
        assert!(h.is_equivariant(&rot).unwrap());
        let (ok, n) = h.is_equivariant_exhaustive(&rot).unwrap();
        assert!(ok);
        assert_eq!(n, 3);
        let swap: HashMap<u32, u32> = [(1, 2), (2, 1), (3, 3)].into_iter().collect();
        assert_eq!(GroupAction::new_z3(vec![swap.clone()]).unwrap_err(), ComplexError::BadOrder(0));
        assert!(h.is_equivariant(&GroupAction::new(vec![swap]).unwrap()).unwrap());
        let squash: HashMap<u32, u32> = [(1, 1), (2, 1), (3, 3)].into_iter().collect();
        assert_eq!(GroupAction::new(vec![squash]).unwrap_err(), ComplexError::NotPermutation(0));
        let partial = GroupAction::from_fn(&[1u32, 2], 0, |_, &v| v).unwrap();
        assert!(h.is_equivariant(&partial).is_ok());
        let g: HashMap<u32, u32> = [(1, 1), (2, 2)].into_iter().collect();
        let partial = GroupAction::new(vec![g]).unwrap();
        assert!(matches!(h.is_equivariant(&partial), Err(ComplexError::Undefined(_))));
    }

    #[test]
    fn pseudomanifold() {
        let h = hollow();
        assert!(h.is_pure());
        assert!(h.is_pseudomanifold(false));
        let bow = SimplicialComplex::new(vec![vec![1u32, 2, 3], vec![3, 4, 5]]).unwrap();
        assert!(bow.is_pure());
        assert!(!bow.is_pseudomanifold(false));
        assert!(!bow.is_pseudomanifold(true));
        let disk = h.cone(0).unwrap();
        assert!(!disk.is_pseudomanifold(false));
        assert!(disk.is_pseudomanifold(true));
        assert_eq!(disk.boundary(), h);
        let mixed = SimplicialComplex::new(vec![vec![1u32, 2, 3], vec![3, 4]]).unwrap();
        assert!(!mixed.is_pure());
    }

    #[test]
    fn maximality_drops_nested_faces() {
        let k = SimplicialComplex::new(vec![vec![1u32, 2], vec![1, 2, 3, 4], vec![3], vec![2, 4, 5]]).unwrap();
        assert_eq!(k.facets().len(), 2);
        assert_eq!(k.vertices().len(), 5);
    }

    #[test]
    fn simplicial_map_checks_images() {
        let path = SimplicialComplex::new(vec![vec![0u32, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let h = hollow().relabel(|&v| v - 1, true).unwrap();
        let m = SimplicialMap::new(&path, &h, |&v| v % 3).unwrap();
        assert_eq!(m.image_complex(&path), h);
        let point = SimplicialComplex::new(vec![vec![0u32, 1]]).unwrap();
        assert!(SimplicialMap::new(&path, &point, |&v| v % 3).is_err());
    }

    #[test]
    fn monotone_path_counts() {
        assert_eq!(monotone_paths(&[2, 2]).len(), 6);
        assert_eq!(monotone_paths(&[1, 1, 1]).len(), 6);
        assert_eq!(monotone_paths(&[0, 3]).len(), 1);
    }
}
