//! Assembled complexes: CP^n and other toric manifolds over small polytopes.

use std::collections::HashSet;

use eqtri::homology::homology;
use eqtri::polytope::{face_lattice, read_polytope, simplex_polytope, CharacteristicFunction, SimplePolytope};
use eqtri::simplicial::SimplicialComplex;
use eqtri::toric::{assemble_cpn, assemble_toric, vertex_count_formula, GlobalVertexLabel};

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn polygon(m: usize) -> SimplePolytope {
    let mut text = format!("2 {m}\n");
    for i in 0..m {
        text.push_str(&format!("{} {}\n", i, (i + 1) % m));
    }
    read_polytope(&text).unwrap()
}

fn sphere_betti(d: usize) -> Vec<usize> {
    let mut b = vec![0; d + 1];
    b[0] = 1;
    b[d] = 1;
    b
}

fn links_are_spheres(k: &SimplicialComplex<GlobalVertexLabel>) {
    let d = k.dim().unwrap();
    for v in k.vertices() {
        let l = k.link(v).unwrap();
        assert!(l.is_pseudomanifold(false), "link of {v}");
        let h = homology(&l);
        assert_eq!(h.betti, sphere_betti(d - 1), "link of {v}");
        assert!(h.torsion_free());
    }
}

#[test]
fn cpn_vertex_counts() {
    for (n, count) in [(1, 5), (2, 21), (3, 85)] {
        let a = assemble_cpn(n).unwrap();
        assert_eq!(a.complex.vertices().len(), count);
        assert_eq!(vertex_count_formula(n).unwrap(), count.into());
        assert_eq!(a.complex.dim(), Some(2 * n));
    }
    // Σ_k C(n+1, k+1) 3^k, summed independently
    for n in 1..=8usize {
        let sum: usize = (0..=n).map(|k| binom(n + 1, k + 1) * 3usize.pow(k as u32)).sum();
        assert_eq!(vertex_count_formula(n).unwrap(), sum.into());
    }
}

#[test]
fn every_face_carries_three_to_its_dimension() {
    for n in 1..=3 {
        let a = assemble_cpn(n).unwrap();
        let strata = a.strata();
        let faces = face_lattice(&a.polytope);
        assert_eq!(strata.len(), faces.len());
        for f in &faces {
            assert_eq!(strata[&f.facets], 3usize.pow(a.polytope.face_dim(f) as u32), "n={n} face {:?}", f.facets);
        }
    }
}

#[test]
fn cpn_is_equivariant_under_the_whole_group() {
    for n in 1..=3 {
        let a = assemble_cpn(n).unwrap();
        let (ok, count) = a.complex.is_equivariant_exhaustive(&a.action().unwrap()).unwrap();
        assert!(ok);
        assert_eq!(count, 3usize.pow(n as u32));
    }
}

#[test]
fn cp1_and_cp2_homology_and_links() {
    for n in 1..=2 {
        let a = assemble_cpn(n).unwrap();
        let h = homology(&a.complex);
        let expected: Vec<usize> = (0..=2 * n).map(|k| usize::from(k % 2 == 0)).collect();
        assert_eq!(h.betti, expected);
        assert!(h.torsion_free());
        assert_eq!(a.complex.euler_characteristic(), n as i64 + 1);
        assert!(a.complex.is_pseudomanifold(false));
        links_are_spheres(&a.complex);
    }
    assert_eq!(assemble_cpn(1).unwrap().complex.f_vector(), vec![5, 9, 6]);
    assert_eq!(assemble_cpn(2).unwrap().complex.f_vector(), vec![21, 144, 396, 450, 180]);
}

#[test]
fn blocks_glue_along_faces() {
    let a = assemble_cpn(3).unwrap();
    for inner in &a.blocks {
        assert!(inner.complex.is_subcomplex(&a.complex));
        for outer in a.blocks.iter().filter(|b| inner.face.is_subface_of(&b.face)) {
            let verts: HashSet<&GlobalVertexLabel> = outer.complex.vertices().iter().collect();
            assert_eq!(inner.complex.restrict(|v| verts.contains(v)), outer.complex);
        }
    }
    // every facet comes from a block over a vertex of the simplex
    assert_eq!(a.provenance.len(), a.complex.facets().len());
}

#[test]
fn square_gives_s2_times_s2() {
    let q = polygon(4);
    let xi = CharacteristicFunction::new(&q, vec![1, 2, 1, 2]).unwrap();
    let a = assemble_toric(&q, &xi).unwrap();
    // 4 polytope vertices × 1 + 4 edges × 3 + the square × 9
    assert_eq!(a.complex.vertices().len(), 25);
    let h = homology(&a.complex);
    assert_eq!(h.betti, vec![1, 0, 2, 0, 1]);
    assert!(h.torsion_free());
    links_are_spheres(&a.complex);
}

#[test]
fn square_rejects_repeated_adjacent_symbols() {
    let q = polygon(4);
    let xi = CharacteristicFunction::new(&q, vec![1, 1, 2, 2]).unwrap();
    assert!(assemble_toric(&q, &xi).is_err());
}

#[test]
fn hexagon_has_four_two_cycles() {
    let q = polygon(6);
    let xi = CharacteristicFunction::new(&q, vec![1, 2, 0, 1, 2, 0]).unwrap();
    let a = assemble_toric(&q, &xi).unwrap();
    assert_eq!(a.complex.vertices().len(), 6 + 6 * 3 + 9);
    let h = homology(&a.complex);
    assert_eq!(h.betti, vec![1, 0, 4, 0, 1]);
    assert!(a.complex.is_pseudomanifold(false));
}

#[test]
fn simplex_with_standard_symbols_is_cp2() {
    let q = read_polytope("2 3\n1 2\n0 2\n0 1\n").unwrap();
    let xi = CharacteristicFunction::new(&q, vec![0, 1, 2]).unwrap();
    let a = assemble_toric(&q, &xi).unwrap();
    let b = assemble_cpn(2).unwrap();
    assert_eq!(q, simplex_polytope(2).unwrap());
    assert_eq!(a.complex, b.complex);
}
