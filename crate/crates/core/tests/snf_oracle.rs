//! Smith normal form against determinantal divisors computed from all minors.

use eqtri::homology::{smith_normal_form, IntegerMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn det(m: &[Vec<i128>]) -> i128 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i128>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

/// Invariant factors from d_k = gcd of k×k minors, s_k = d_k / d_{k-1}.
fn minor_gcd_oracle(a: &[Vec<i64>]) -> Vec<i128> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| a[r][c] as i128).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

fn snf(a: &[Vec<i64>]) -> Vec<i128> {
    let m = IntegerMatrix::from_dense(a);
    smith_normal_form(&m).iter().map(|x: &BigInt| i128::try_from(x).unwrap()).collect()
}

#[test]
fn oracle_examples() {
    assert_eq!(minor_gcd_oracle(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
    assert_eq!(minor_gcd_oracle(&[vec![6, 0, 0], vec![0, 10, 0], vec![0, 0, 15]]), vec![1, 30, 30]);
    assert_eq!(minor_gcd_oracle(&[vec![0, 0], vec![0, 0]]), Vec::<i128>::new());
}

#[test]
fn matches_minor_gcd_on_random_matrices() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..1500 {
        let r = rng.gen_range(1..=4);
        let c = rng.gen_range(1..=4);
        let sparse = rng.gen_bool(0.3);
        let a: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| if sparse && rng.gen_bool(0.5) { 0 } else { rng.gen_range(-10..=10) }).collect())
            .collect();
        assert_eq!(snf(&a), minor_gcd_oracle(&a), "{a:?}");
    }
}

#[test]
fn divisibility_chain() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..300 {
        let a: Vec<Vec<i64>> = (0..4).map(|_| (0..4).map(|_| rng.gen_range(-10..=10)).collect()).collect();
        let d = snf(&a);
        assert!(d.iter().all(|&x| x > 0));
        assert!(d.windows(2).all(|w| w[1] % w[0] == 0), "{d:?}");
    }
}
