//! Structural properties of every coned torus block up to n = 3.

use std::collections::HashSet;

use eqtri::block::{
    build_block, from_frame, torus_in_frame, block_vertex_count, BlockVertex, Coord, FactorKind, FactorSpec,
    SymVertex, Tower,
};
use eqtri::homology::homology;
use eqtri::simplicial::SimplicialComplex;
use eqtri::torus::{torus_complex, GroupElement};

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn specs() -> Vec<FactorSpec> {
    (1..=3).flat_map(FactorSpec::all).collect()
}

#[test]
fn spec_census() {
    // per n: torus, C(I) for nonempty I, B(k, I) with k ∉ I
    assert_eq!(FactorSpec::all(1).len(), 3);
    assert_eq!(FactorSpec::all(2).len(), 1 + 3 + 2 * 2);
    assert_eq!(FactorSpec::all(3).len(), 1 + 7 + 3 * 4);
}

#[test]
fn torus_is_the_apex_free_part() {
    for spec in specs() {
        let b = build_block(&spec).unwrap();
        let t = torus_in_frame(&spec).unwrap();
        assert!(t.is_subcomplex(&b.complex), "{spec}");
        let apex_free = b.complex.restrict(|v| v.0.iter().all(|c| *c != Coord::Apex));
        assert_eq!(apex_free, t, "{spec}");
        // in symmetric coordinates the frame torus is the standard one
        let sym = t.relabel(|v| from_frame(&spec, v), true).unwrap();
        let std = torus_complex(spec.n()).unwrap().relabel(SymVertex::from_torus, true).unwrap();
        assert_eq!(sym, std, "{spec}");
    }
}

#[test]
fn sub_blocks_are_subcomplexes() {
    for spec in specs() {
        let big = build_block(&spec).unwrap().symmetric();
        for sub in spec.sub_specs() {
            let small = build_block(&sub).unwrap().symmetric();
            assert!(small.is_subcomplex(&big), "{sub} in {spec}");
            let verts: HashSet<&SymVertex> = small.vertices().iter().collect();
            assert_eq!(big.restrict(|v| verts.contains(v)), small, "{sub} is not induced in {spec}");
        }
    }
}

#[test]
fn blocks_are_equivariant_under_every_element() {
    for spec in specs() {
        let b = build_block(&spec).unwrap();
        let (ok, count) = b.complex.is_equivariant_exhaustive(&b.action().unwrap()).unwrap();
        assert!(ok, "{spec}");
        assert_eq!(count, 3usize.pow(spec.n() as u32));
    }
}

fn translate(k: &SimplicialComplex<BlockVertex>, g: &GroupElement) -> SimplicialComplex<BlockVertex> {
    k.relabel(|v| v.translate(g), true).unwrap()
}

#[test]
fn cell_translates_tile_and_agree_on_overlaps() {
    for spec in specs() {
        let b = build_block(&spec).unwrap();
        let group = GroupElement::all(spec.n());
        let ts: Vec<_> = group.iter().map(|g| translate(&b.cell, g)).collect();
        let mut facets = HashSet::new();
        for t in &ts {
            facets.extend(t.facets().iter().cloned());
        }
        let all: HashSet<_> = b.complex.facets().iter().cloned().collect();
        assert_eq!(facets, all, "{spec}");
        for (i, a) in ts.iter().enumerate() {
            for c in &ts[i + 1..] {
                let va: HashSet<&BlockVertex> = a.vertices().iter().collect();
                let common: HashSet<&BlockVertex> = c.vertices().iter().filter(|v| va.contains(v)).collect();
                let ra = a.restrict(|v| common.contains(v));
                let rc = c.restrict(|v| common.contains(v));
                assert_eq!(ra, rc, "{spec}");
            }
        }
    }
}

#[test]
fn vertex_counts_and_pseudomanifold_with_boundary() {
    for spec in specs() {
        let b = build_block(&spec).unwrap();
        let circles = spec.kinds().iter().filter(|&&k| k == FactorKind::Circle).count();
        let expected = 3usize.pow(circles as u32) * 4usize.pow((spec.n() - circles) as u32);
        assert_eq!(b.complex.vertices().len(), expected, "{spec}");
        assert_eq!(block_vertex_count(&spec), expected);
        assert!(b.complex.is_pure());
        assert_eq!(b.complex.dim(), Some(spec.n() + spec.coned_count()));
        let allow_boundary = spec.coned_count() > 0;
        assert!(b.complex.is_pseudomanifold(allow_boundary), "{spec}");
    }
}

#[test]
fn blocks_have_the_homology_of_their_circle_factors() {
    for spec in specs().into_iter().filter(|s| s.n() <= 2 || s.coned_count() <= 1) {
        let b = build_block(&spec).unwrap();
        let circles = spec.n() - spec.coned_count();
        let h = homology(&b.complex);
        let mut expected: Vec<usize> = (0..=circles).map(|k| binom(circles, k)).collect();
        expected.resize(h.betti.len(), 0);
        assert_eq!(h.betti, expected, "{spec}");
        assert!(h.torsion_free());
    }
}

fn permute(v: &SymVertex, p: &[usize]) -> SymVertex {
    let mut present = 0u32;
    let mut z = vec![0u8; v.z.len()];
    for s in v.symbols() {
        present |= 1 << p[s];
        z[p[s]] = v.z[s];
    }
    SymVertex::new(present, z)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn blocks_without_diagonal_cone_are_symmetric_in_the_factors() {
    // the order is taken relative to the diagonal circle, so only permutations fixing it apply
    for n in 1..=3 {
        let tower = Tower::new(n);
        let full = (1u32 << (n + 1)) - 1;
        for mask in (0..full).filter(|m| m & 1 == 0) {
            let k = tower.block(mask).unwrap();
            for p in permutations(n + 1).into_iter().filter(|p| p[0] == 0) {
                let image = (0..=n).filter(|s| mask >> s & 1 == 1).fold(0u32, |m, s| m | 1 << p[s]);
                let moved = k.relabel(|v| permute(v, &p), true).unwrap();
                assert_eq!(moved, tower.block(image).unwrap(), "n={n} mask={mask:b} p={p:?}");
            }
        }
    }
}

#[test]
fn b2_cell_in_two_dimensions() {
    let spec = FactorSpec::b(2, 2, &[]).unwrap();
    let b = build_block(&spec).unwrap();
    assert_eq!(b.complex.vertices().len(), 12);
    assert_eq!(b.complex.facets().len(), 36);
    // one facet, {01, 0*, 11, 1*}, also lies in the translate by (0, 1)
    assert_eq!(b.cell.facets().len(), 5);
}
