use eqtri::homology::homology;
use eqtri::torus::{torus_complex, torus_k_complex, z3n_action, TorusVertex};

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn torus_certificates() {
    for n in 1..=3 {
        let t = torus_complex(n).unwrap();
        assert_eq!(t.vertices().len(), 3usize.pow(n as u32));
        assert!(t.is_pseudomanifold(false));
        let h = homology(&t);
        assert_eq!(h.betti, (0..=n).map(|k| binom(n, k)).collect::<Vec<_>>());
        assert!(h.torsion_free());
        let (ok, count) = t.is_equivariant_exhaustive(&z3n_action(n).unwrap()).unwrap();
        assert!(ok);
        assert_eq!(count, 3usize.pow(n as u32));
    }
}

#[test]
fn torus_facets_and_free_action() {
    // n! simplices per subcube, 3^n subcubes
    for (n, facets) in [(1, 3), (2, 18), (3, 162), (4, 1944)] {
        assert_eq!(torus_complex(n).unwrap().facets().len(), facets);
    }
    let act = z3n_action(2).unwrap();
    let v = TorusVertex(vec![0, 0]);
    assert_eq!(act.orbit(&v).len(), 9);
}

#[test]
fn rebased_tori_coincide() {
    for n in 1..=4 {
        for k in 1..=n {
            let tk = torus_k_complex(n, k).unwrap();
            assert_eq!(tk.complex, torus_complex(n).unwrap());
            assert_eq!(tk.zero_factor, k);
        }
    }
    assert!(torus_k_complex(2, 3).is_err());
}
