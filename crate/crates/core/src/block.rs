//! Coned torus blocks B(k, i_1, …), C(i_1, …) and their triangulations.
//!
//! Blocks are built in symmetric coordinates: a vertex is a nonempty set A of
//! surviving symbols in {0, …, n} together with z ∈ Z_3^A modulo the diagonal.
//! Symbol j ≥ 1 is the circle of factor j; symbol 0 is the diagonal circle
//! S^1_0. Coning symbol s collapses its circle, i.e. forgets z_s.
//!
//! The block with coned symbol set T is the iterated mapping cylinder of
//! the projections that forget coordinates: it contains every block with a
//! smaller coned set, and is the cylinder of the projection from their union
//! onto the core torus on the surviving symbols. All choices depend only on
//! differences of coordinates, so everything is Z_3^n-invariant, and blocks
//! glue by label identity.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Mutex;

use thiserror::Error;

use crate::simplicial::{
    staircase_product_many, ComplexError, GroupAction, Simplex, SimplicialComplex,
};
use crate::torus::{residue_vectors, torus_complex, GroupElement, TorusError, TorusVertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockError {
    #[error("invalid factor spec: {0}")]
    BadSpec(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error("vertex order inconsistent on simplex {0}")]
    Order(String),
    #[error("facet {0} lies in no translate of the fundamental cell")]
    NotTiled(String),
    #[error("translates {g:?} and {h:?} induce different triangulations on their overlap near {face}")]
    Overlap { g: GroupElement, h: GroupElement, face: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    Circle,
    ConedOwn,
    ConedZero,
}

/// Per-factor kinds of a block; factors are numbered 1..=n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorSpec {
    kinds: Vec<FactorKind>,
}

impl FactorSpec {
    pub fn new(kinds: Vec<FactorKind>) -> Result<Self, BlockError> {
        if kinds.is_empty() {
            return Err(BlockError::BadSpec("no factors".into()));
        }
        if kinds.len() > 31 {
            return Err(BlockError::BadSpec("too many factors".into()));
        }
        if kinds.iter().filter(|&&k| k == FactorKind::ConedZero).count() > 1 {
            return Err(BlockError::BadSpec("more than one coned-zero factor".into()));
        }
        Ok(FactorSpec { kinds })
    }

    pub fn torus(n: usize) -> Result<Self, BlockError> {
        Self::new(vec![FactorKind::Circle; n])
    }

    /// C(i_1, …) with 1-based factor indices.
    pub fn c(n: usize, own: &[usize]) -> Result<Self, BlockError> {
        let mut kinds = vec![FactorKind::Circle; n];
        for &i in own {
            if i < 1 || i > n {
                return Err(BlockError::BadSpec(format!("factor {i} out of range")));
            }
            kinds[i - 1] = FactorKind::ConedOwn;
        }
        Self::new(kinds)
    }

    /// B(k, i_1, …) with 1-based factor indices.
    pub fn b(n: usize, k: usize, own: &[usize]) -> Result<Self, BlockError> {
        if own.contains(&k) || k < 1 || k > n {
            return Err(BlockError::BadSpec(format!("bad coned-zero position {k}")));
        }
        let mut s = Self::c(n, own)?;
        s.kinds[k - 1] = FactorKind::ConedZero;
        Ok(s)
    }

    /// One letter per factor: `s` circle, `c` coned-own, `z` coned-zero.
    pub fn parse(text: &str) -> Result<Self, BlockError> {
        let kinds = text
            .chars()
            .map(|ch| match ch {
                's' => Ok(FactorKind::Circle),
                'c' => Ok(FactorKind::ConedOwn),
                'z' => Ok(FactorKind::ConedZero),
                _ => Err(BlockError::BadSpec(format!("unknown factor letter {ch:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(kinds)
    }

    pub fn code(&self) -> String {
        self.kinds
            .iter()
            .map(|k| match k {
                FactorKind::Circle => 's',
                FactorKind::ConedOwn => 'c',
                FactorKind::ConedZero => 'z',
            })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.kinds.len()
    }

    pub fn kinds(&self) -> &[FactorKind] {
        &self.kinds
    }

    pub fn kind(&self, factor: usize) -> FactorKind {
        self.kinds[factor - 1]
    }

    /// The coned-zero position k, if any.
    pub fn zero_position(&self) -> Option<usize> {
        self.kinds.iter().position(|&k| k == FactorKind::ConedZero).map(|i| i + 1)
    }

    pub fn own_factors(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&j| self.kind(j) == FactorKind::ConedOwn).collect()
    }

    pub fn coned_count(&self) -> usize {
        self.kinds.iter().filter(|&&k| k != FactorKind::Circle).count()
    }

    /// Symbol carried by factor j: 0 for the coned-zero factor, j otherwise.
    pub fn symbol(&self, factor: usize) -> usize {
        if self.kind(factor) == FactorKind::ConedZero {
            0
        } else {
            factor
        }
    }

    /// The symbol all residues are measured from: k for B-blocks, 0 otherwise.
    pub fn host(&self) -> usize {
        self.zero_position().unwrap_or(0)
    }

    /// Bit mask of coned symbols.
    pub fn coned_mask(&self) -> u32 {
        (1..=self.n())
            .filter(|&j| self.kind(j) != FactorKind::Circle)
            .fold(0, |m, j| m | 1 << self.symbol(j))
    }

    /// Specs obtained by turning some coned-own factors back into circles.
    pub fn sub_specs(&self) -> Vec<FactorSpec> {
        let own = self.own_factors();
        (0u32..1 << own.len())
            .map(|mask| {
                let mut kinds = self.kinds.clone();
                for (b, &j) in own.iter().enumerate() {
                    if mask >> b & 1 == 0 {
                        kinds[j - 1] = FactorKind::Circle;
                    }
                }
                FactorSpec { kinds }
            })
            .collect()
    }

    /// Every valid spec in dimension n.
    pub fn all(n: usize) -> Vec<FactorSpec> {
        residue_vectors(n, 3)
            .into_iter()
            .filter_map(|v| {
                let kinds = v
                    .into_iter()
                    .map(|x| [FactorKind::Circle, FactorKind::ConedOwn, FactorKind::ConedZero][x as usize])
                    .collect();
                FactorSpec::new(kinds).ok()
            })
            .collect()
    }
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let own: Vec<String> = self.own_factors().iter().map(|j| j.to_string()).collect();
        match self.zero_position() {
            Some(k) if own.is_empty() => write!(f, "B({k})"),
            Some(k) => write!(f, "B({k},{})", own.join(",")),
            None if own.is_empty() => write!(f, "T^{}", self.n()),
            None => write!(f, "C({})", own.join(",")),
        }?;
        write!(f, " in n={}", self.n())
    }
}

/// Vertex in symmetric coordinates.
///
/// `present` is the bit set A of surviving symbols; `z[s]` is defined for
/// s ∈ A and normalized so that z at the smallest surviving symbol is 0.
/// Absent entries are 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymVertex {
    pub present: u32,
    pub z: Vec<u8>,
}

impl SymVertex {
    pub fn new(present: u32, mut z: Vec<u8>) -> Self {
        assert!(present != 0, "vertex without surviving symbols");
        let m = z[present.trailing_zeros() as usize];
        for (s, x) in z.iter_mut().enumerate() {
            *x = if present >> s & 1 == 1 { (*x + 3 - m) % 3 } else { 0 };
        }
        SymVertex { present, z }
    }

    pub fn from_torus(v: &TorusVertex) -> Self {
        let mut z = vec![0];
        z.extend_from_slice(&v.0);
        let all = (1u32 << z.len()) - 1;
        SymVertex::new(all, z)
    }

    pub fn n(&self) -> usize {
        self.z.len() - 1
    }

    pub fn has(&self, s: usize) -> bool {
        self.present >> s & 1 == 1
    }

    pub fn support_size(&self) -> u32 {
        self.present.count_ones()
    }

    pub fn symbols(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.z.len()).filter(|&s| self.has(s))
    }

    /// Restriction to the symbols in `keep` (which must meet `present`).
    pub fn project(&self, keep: u32) -> Self {
        SymVertex::new(self.present & keep, self.z.clone())
    }

    /// Action of g ∈ Z_3^n: factor i adds g_i to z_i; z_0 is fixed.
    pub fn translate(&self, g: &GroupElement) -> Self {
        let mut z = self.z.clone();
        for (i, a) in g.0.iter().enumerate() {
            z[i + 1] = (z[i + 1] + a) % 3;
        }
        SymVertex::new(self.present, z)
    }
}

/// u precedes w in the tower order: larger support first; on equal supports,
/// w − u is a 0/1 vector (the Freudenthal order relative to the first symbol).
fn precedes(u: &SymVertex, w: &SymVertex) -> Option<bool> {
    if u.present != w.present {
        if u.present & w.present == w.present {
            return Some(true);
        }
        if u.present & w.present == u.present {
            return Some(false);
        }
        return None;
    }
    Some(u.symbols().all(|s| (w.z[s] + 3 - u.z[s]) % 3 <= 1))
}

fn order_simplex(s: &Simplex<SymVertex>) -> Result<Vec<SymVertex>, BlockError> {
    let vs = s.vertices();
    let mut rank = vec![0usize; vs.len()];
    for i in 0..vs.len() {
        for j in 0..vs.len() {
            if i == j {
                continue;
            }
            let a = precedes(&vs[i], &vs[j]);
            let b = precedes(&vs[j], &vs[i]);
            match (a, b) {
                (Some(true), Some(false)) => rank[j] += 1,
                (Some(false), Some(true)) => {}
                _ => return Err(BlockError::Order(format!("{vs:?}"))),
            }
        }
    }
    let mut out: Vec<Option<SymVertex>> = vec![None; vs.len()];
    for (i, &r) in rank.iter().enumerate() {
        if out[r].is_some() {
            return Err(BlockError::Order(format!("{vs:?}")));
        }
        out[r] = Some(vs[i].clone());
    }
    Ok(out.into_iter().map(|v| v.unwrap()).collect())
}

/// Memoized tower blocks in one dimension, keyed by the coned symbol mask.
pub struct Tower {
    n: usize,
    cache: Mutex<HashMap<u32, SimplicialComplex<SymVertex>>>,
}

impl Tower {
    pub fn new(n: usize) -> Self {
        Tower { n, cache: Mutex::new(HashMap::new()) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn all(&self) -> u32 {
        (1u32 << (self.n + 1)) - 1
    }

    /// The block in which the symbols of `coned` are collapsed. At least one
    /// symbol must survive.
    pub fn block(&self, coned: u32) -> Result<SimplicialComplex<SymVertex>, BlockError> {
        if coned & !self.all() != 0 || coned == self.all() {
            return Err(BlockError::BadSpec(format!("cannot cone symbol set {coned:#b}")));
        }
        if let Some(k) = self.cache.lock().unwrap().get(&coned) {
            return Ok(k.clone());
        }
        let k = if coned == 0 {
            torus_complex(self.n)?.relabel(SymVertex::from_torus, true)?
        } else {
            let keep = self.all() & !coned;
            let mut bd: Vec<Simplex<SymVertex>> = Vec::new();
            for t in (0..=self.n).filter(|t| coned >> t & 1 == 1) {
                bd.extend(self.block(coned & !(1 << t))?.facets().iter().cloned());
            }
            let bd = SimplicialComplex::from_simplices(bd)?;
            let mut out = Vec::new();
            for s in bd.facets() {
                let vs = order_simplex(s)?;
                for i in 0..vs.len() {
                    let mut c: Vec<SymVertex> = vs[..=i].to_vec();
                    c.extend(vs[i..].iter().map(|v| v.project(keep)));
                    out.push(Simplex::collapsed(c));
                }
            }
            SimplicialComplex::from_simplices(out)?
        };
        self.cache.lock().unwrap().insert(coned, k.clone());
        Ok(k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    Res(u8),
    /// Cone apex ⊥; sorts after every residue.
    Apex,
}

/// Vertex of a block in its product frame: one coordinate per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockVertex(pub Vec<Coord>);

impl BlockVertex {
    pub fn translate(&self, g: &GroupElement) -> Self {
        BlockVertex(
            self.0
                .iter()
                .zip(&g.0)
                .map(|(c, a)| match c {
                    Coord::Res(x) => Coord::Res((x + a) % 3),
                    Coord::Apex => Coord::Apex,
                })
                .collect(),
        )
    }

    pub fn in_fundamental_region(&self) -> bool {
        self.0.iter().all(|c| !matches!(c, Coord::Res(2)))
    }

    /// e.g. `01*` with `*` for the apex.
    pub fn render(&self) -> String {
        self.0
            .iter()
            .map(|c| match c {
                Coord::Res(x) => char::from(b'0' + x),
                Coord::Apex => '*',
            })
            .collect()
    }
}

/// Symmetric coordinates → product frame of `spec`. Factor j carries
/// z_{symbol(j)} − z_host, or ⊥ when that symbol is collapsed.
pub fn to_frame(spec: &FactorSpec, v: &SymVertex) -> BlockVertex {
    let h = spec.host();
    debug_assert!(v.has(h));
    BlockVertex(
        (1..=spec.n())
            .map(|j| {
                let s = spec.symbol(j);
                if v.has(s) {
                    Coord::Res((v.z[s] + 3 - v.z[h]) % 3)
                } else {
                    Coord::Apex
                }
            })
            .collect(),
    )
}

pub fn from_frame(spec: &FactorSpec, b: &BlockVertex) -> SymVertex {
    let h = spec.host();
    let mut z = vec![0u8; spec.n() + 1];
    let mut present = 1u32 << h;
    for (j, c) in (1..).zip(&b.0) {
        if let Coord::Res(x) = c {
            let s = spec.symbol(j);
            present |= 1 << s;
            z[s] = *x;
        }
    }
    SymVertex::new(present, z)
}

/// The coned disk CS^1: boundary circle 0, 1, 2 and apex ⊥.
pub fn cone_circle() -> SimplicialComplex<Coord> {
    let circle = SimplicialComplex::new(vec![
        vec![Coord::Res(0), Coord::Res(1)],
        vec![Coord::Res(1), Coord::Res(2)],
        vec![Coord::Res(0), Coord::Res(2)],
    ])
    .unwrap();
    circle.cone(Coord::Apex).unwrap()
}

/// ∏ (3 per circle, 4 per coned factor).
pub fn block_vertex_count(spec: &FactorSpec) -> usize {
    spec.kinds().iter().map(|&k| if k == FactorKind::Circle { 3 } else { 4 }).product()
}

/// A built block together with its fundamental cell.
#[derive(Debug, Clone)]
pub struct Block {
    pub spec: FactorSpec,
    pub complex: SimplicialComplex<BlockVertex>,
    pub cell: SimplicialComplex<BlockVertex>,
}

impl Block {
    /// The block in symmetric coordinates.
    pub fn symmetric(&self) -> SimplicialComplex<SymVertex> {
        self.complex.relabel(|b| from_frame(&self.spec, b), true).unwrap()
    }

    pub fn action(&self) -> Result<GroupAction<BlockVertex>, BlockError> {
        let n = self.spec.n();
        Ok(GroupAction::from_fn(self.complex.vertices(), n, |i, v| {
            let mut g = vec![0; n];
            g[i] = 1;
            v.translate(&GroupElement(g))
        })?)
    }
}

fn translate_complex(k: &SimplicialComplex<BlockVertex>, g: &GroupElement) -> SimplicialComplex<BlockVertex> {
    k.relabel(|v| v.translate(g), true).unwrap()
}

/// The triangulated cell E: the part of the block spanned by residues 0, 1 and ⊥.
pub fn fundamental_cell(spec: &FactorSpec) -> Result<SimplicialComplex<BlockVertex>, BlockError> {
    fundamental_cell_with(&Tower::new(spec.n()), spec)
}

pub fn fundamental_cell_with(tower: &Tower, spec: &FactorSpec) -> Result<SimplicialComplex<BlockVertex>, BlockError> {
    let whole = block_in_frame(tower, spec)?;
    let fs = whole
        .facets()
        .iter()
        .filter(|f| f.vertices().iter().all(BlockVertex::in_fundamental_region))
        .cloned()
        .collect();
    Ok(SimplicialComplex::from_simplices(fs)?)
}

fn block_in_frame(tower: &Tower, spec: &FactorSpec) -> Result<SimplicialComplex<BlockVertex>, BlockError> {
    if tower.n() != spec.n() {
        return Err(BlockError::BadSpec("tower dimension differs from spec".into()));
    }
    let sym = tower.block(spec.coned_mask())?;
    Ok(sym.relabel(|v| to_frame(spec, v), true)?)
}

/// Staircase product of the per-factor cells: the edge {0, 1} for circles and
/// the triangle {0, 1, ⊥} for coned factors.
pub fn staircase_cell(spec: &FactorSpec) -> SimplicialComplex<BlockVertex> {
    let edge = SimplicialComplex::new(vec![vec![Coord::Res(0), Coord::Res(1)]]).unwrap();
    let tri = SimplicialComplex::new(vec![vec![Coord::Res(0), Coord::Res(1), Coord::Apex]]).unwrap();
    let factors: Vec<_> = spec
        .kinds()
        .iter()
        .map(|&k| if k == FactorKind::Circle { edge.clone() } else { tri.clone() })
        .collect();
    staircase_product_many(&factors).relabel(|v| BlockVertex(v.clone()), true).unwrap()
}

pub fn build_block(spec: &FactorSpec) -> Result<Block, BlockError> {
    build_block_with(&Tower::new(spec.n()), spec)
}

/// Unions the 3^n translates of the fundamental cell, checking that they
/// tile the tower block and agree pairwise on their overlaps.
pub fn build_block_with(tower: &Tower, spec: &FactorSpec) -> Result<Block, BlockError> {
    let n = spec.n();
    let whole = block_in_frame(tower, spec)?;
    let cell = fundamental_cell_with(tower, spec)?;
    let group = GroupElement::all(n);
    let translates: Vec<SimplicialComplex<BlockVertex>> = group.iter().map(|g| translate_complex(&cell, g)).collect();

    let mut tiled: HashSet<&Simplex<BlockVertex>> = HashSet::new();
    for t in &translates {
        tiled.extend(t.facets());
    }
    for f in whole.facets() {
        if !tiled.contains(f) {
            return Err(BlockError::NotTiled(format!("{:?}", f.vertices())));
        }
    }
    check_overlaps(&group, &translates)?;
    let mut union = Vec::new();
    for t in &translates {
        union.extend(t.facets().iter().cloned());
    }
    let complex = SimplicialComplex::from_simplices(union)?;
    debug_assert_eq!(complex, whole);
    Ok(Block { spec: spec.clone(), complex, cell })
}

fn check_overlaps(
    group: &[GroupElement],
    translates: &[SimplicialComplex<BlockVertex>],
) -> Result<(), BlockError> {
    let vsets: Vec<HashSet<&BlockVertex>> = translates.iter().map(|t| t.vertices().iter().collect()).collect();
    for a in 0..translates.len() {
        for b in a + 1..translates.len() {
            let common: HashSet<&BlockVertex> = vsets[a].intersection(&vsets[b]).copied().collect();
            if common.is_empty() {
                continue;
            }
            let ra = translates[a].restrict(|v| common.contains(v));
            let rb = translates[b].restrict(|v| common.contains(v));
            if ra != rb {
                let face = ra
                    .facets()
                    .iter()
                    .find(|f| !rb.facets().contains(f))
                    .or_else(|| rb.facets().iter().find(|f| !ra.facets().contains(f)))
                    .map(|f| format!("{:?}", f.vertices()))
                    .unwrap_or_default();
                return Err(BlockError::Overlap { g: group[a].clone(), h: group[b].clone(), face });
            }
        }
    }
    Ok(())
}

/// 𝒯^n in the frame of `spec` (for B(k) blocks this is 𝒯^n_k).
pub fn torus_in_frame(spec: &FactorSpec) -> Result<SimplicialComplex<BlockVertex>, BlockError> {
    Ok(torus_complex(spec.n())?.relabel(|v| BlockVertex(v.0.iter().map(|&x| Coord::Res(x)).collect()), true)?)
}

/// Facet counts per support size, useful in reports.
pub fn support_profile(k: &SimplicialComplex<SymVertex>) -> BTreeMap<u32, usize> {
    let mut m = BTreeMap::new();
    for v in k.vertices() {
        *m.entry(v.support_size()).or_default() += 1;
    }
    m
}
