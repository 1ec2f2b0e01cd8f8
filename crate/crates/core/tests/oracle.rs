//! Intersection numbers computed straight from the fan by moving divisors
//! with linear equivalences, compared against ring integration.

use std::collections::BTreeMap;

use toric_chern::chern::{chern_numbers, partitions, total_chern_intrinsic};
use toric_chern::cohomology::build_ring;
use toric_chern::corpus;
use toric_chern::lattice::invert_unimodular;
use toric_chern::{BigInt, Fan, Poly};

/// `int prod D_r^{e_r}` for a monomial of degree `dim`.
fn intersect(f: &Fan, e: &[u32], depth: usize) -> BigInt {
    assert!(depth < 64, "divisor moving did not terminate");
    let support: Vec<usize> = (0..e.len()).filter(|&i| e[i] > 0).collect();
    let Some(sigma) = f.max_cones().iter().find(|c| support.iter().all(|i| c.contains(i))) else {
        return BigInt::from(0);
    };
    let Some(r) = (0..e.len()).find(|&i| e[i] > 1) else {
        return BigInt::from(1);
    };
    // m with <m, v_r> = 1 and <m, v_t> = 0 for the other rays t of sigma.
    let inv = invert_unimodular(&f.cone_matrix(sigma)).unwrap();
    let pos = sigma.iter().position(|&t| t == r).unwrap();
    let m = inv.row(pos);
    let mut total = BigInt::from(0);
    for t in 0..f.ray_count() {
        if sigma.contains(&t) {
            continue;
        }
        let coeff = m.dot(f.ray(t));
        if coeff == BigInt::from(0) {
            continue;
        }
        let mut next = e.to_vec();
        next[r] -= 1;
        next[t] += 1;
        total -= coeff * intersect(f, &next, depth + 1);
    }
    total
}

fn integrate_poly(f: &Fan, p: &Poly) -> BigInt {
    p.terms().map(|(e, c)| c * intersect(f, e, 0)).sum()
}

fn elementary(k: usize, n: usize) -> Poly {
    // e_k(x_0..x_{n-1}) via the expansion of prod (1 + x_i)
    let mut prod = Poly::one(n);
    for i in 0..n {
        prod = &prod * &(&Poly::one(n) + &Poly::var(n, i));
    }
    prod.weight_part(&vec![1; n], k)
}

fn oracle_numbers(f: &Fan) -> BTreeMap<Vec<usize>, BigInt> {
    let r = f.ray_count();
    partitions(f.dim())
        .into_iter()
        .map(|p| {
            let mut q = Poly::one(r);
            for &i in &p {
                q = &q * &elementary(i, r);
            }
            let v = integrate_poly(f, &q);
            (p, v)
        })
        .collect()
}

fn all_monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return if degree == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for k in 0..=degree {
        for mut rest in all_monomials(nvars - 1, degree - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

#[test]
fn hand_values() {
    // Rays (1,a),(-1,0),(0,1),(0,-1): the divisor of (0,1) is the negative
    // section, D^2 = -a, and the one of (0,-1) has D^2 = a.
    for a in 0..4 {
        let f = corpus::hirzebruch(a);
        assert_eq!(intersect(&f, &[0, 0, 2, 0], 0), BigInt::from(-a));
        assert_eq!(intersect(&f, &[0, 0, 0, 2], 0), BigInt::from(a));
        assert_eq!(intersect(&f, &[1, 0, 1, 0], 0), BigInt::from(1));
    }
    let p2 = corpus::projective_plane();
    assert_eq!(intersect(&p2, &[2, 0, 0], 0), BigInt::from(1));
}

#[test]
fn top_monomials_agree_with_ring() {
    for (name, f) in corpus::smooth_complete_fans() {
        if f.ray_count() > 8 {
            continue;
        }
        let ring = build_ring(&f).unwrap();
        for e in all_monomials(f.ray_count(), f.dim() as u32) {
            let class = ring.reduce(&Poly::monomial(e.clone(), BigInt::from(1)));
            assert_eq!(ring.integrate(&class).unwrap(), intersect(&f, &e, 0), "{name} {e:?}");
        }
    }
}

#[test]
fn chern_numbers_agree_with_oracle() {
    for (name, f) in corpus::smooth_complete_fans() {
        let ring = build_ring(&f).unwrap();
        let ours = chern_numbers(&ring, &total_chern_intrinsic(&ring)).unwrap();
        let theirs = oracle_numbers(&f);
        for c in ours {
            assert_eq!(&c.value, &theirs[&c.partition], "{name} {}", c.label);
        }
    }
}

#[test]
fn oracle_reference_values() {
    let get = |f: &Fan| oracle_numbers(f).into_values().collect::<Vec<_>>();
    let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    assert_eq!(get(&corpus::projective_plane()), ints(&[9, 3]));
    for a in 0..4 {
        assert_eq!(get(&corpus::hirzebruch(a)), ints(&[8, 4]));
    }
    assert_eq!(get(&corpus::p1_cubed()), ints(&[48, 24, 8]));
    assert_eq!(get(&corpus::hexagon()), ints(&[6, 6]));
}
