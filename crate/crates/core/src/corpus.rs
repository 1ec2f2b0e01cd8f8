//! Built-in example fans, fibered toric varieties and characteristic pairs.

use crate::error::Result;
use crate::fan::{product_fan, Fan};
use crate::lattice::IntVector;
use crate::twist::{twisted_fan, twisted_pair, CharacteristicPair, PiecewiseLinearMap, TwistDecomposition};

pub fn projective_line() -> Fan {
    Fan::from_i64(1, &[&[1], &[-1]], &[&[0], &[1]]).expect("valid fan")
}

/// `P^1` with only one of its two cones: not complete.
pub fn incomplete_projective_line() -> Fan {
    Fan::from_i64(1, &[&[1], &[-1]], &[&[0]]).expect("valid cone data")
}

/// Fan of `P^n`: rays `e_1, .., e_n, -(e_1 + .. + e_n)`; every `n`-subset is a cone.
pub fn projective_space(n: usize) -> Fan {
    let mut rays: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
    rays.push(IntVector::from_i64s(&vec![-1; n]));
    let cones = (0..=n).map(|skip| (0..=n).filter(|&i| i != skip).collect()).collect();
    Fan::new(n, rays, cones).expect("valid fan")
}

pub fn projective_plane() -> Fan {
    projective_space(2)
}

/// Rays `(1,a), (-1,0), (0,1), (0,-1)`: the twist of `P^1` over `P^1` by `a`.
pub fn hirzebruch(a: i64) -> Fan {
    Fan::from_i64(2, &[&[1, a], &[-1, 0], &[0, 1], &[0, -1]], &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]])
        .expect("valid fan")
}

/// `P^1 x P^1` with rays in cyclic order `(1,0), (0,1), (-1,0), (0,-1)`.
pub fn square() -> Fan {
    Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]])
        .expect("valid fan")
}

/// The del Pezzo surface of degree 6.
pub fn hexagon() -> Fan {
    Fan::from_i64(
        2,
        &[&[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[-1, -1], &[0, -1]],
        &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[0, 5]],
    )
    .expect("valid fan")
}

pub fn p1_cubed() -> Fan {
    let p1 = projective_line();
    product_fan(&product_fan(&p1, &p1), &p1)
}

pub fn p1_squared() -> Fan {
    let p1 = projective_line();
    product_fan(&p1, &p1)
}

/// A base fan, a fiber fan and a twisting map.
#[derive(Clone, Debug)]
pub struct FiberedInstance {
    pub name: String,
    pub base: Fan,
    pub fiber: Fan,
    pub phi: PiecewiseLinearMap,
}

impl FiberedInstance {
    pub fn new(name: &str, base: Fan, fiber: Fan, values: &[&[i64]]) -> Result<Self> {
        let phi = PiecewiseLinearMap::from_i64(&base, fiber.dim(), values)?;
        Ok(FiberedInstance { name: name.to_string(), base, fiber, phi })
    }

    pub fn decompose(&self) -> Result<TwistDecomposition> {
        twisted_fan(&self.base, &self.fiber, &self.phi)
    }
}

/// The fibered corpus: bases `P^1`, `P^2`, `P^1 x P^1`, fibers `P^1`, `P^2`.
pub fn fibered_instances() -> Vec<FiberedInstance> {
    let p1 = projective_line;
    let p2 = projective_plane;
    let sq = p1_squared;
    let specs: Vec<(&str, Fan, Fan, Vec<&[i64]>)> = vec![
        ("P1 over P1, a=0", p1(), p1(), vec![&[0], &[0]]),
        ("P1 over P1, a=1", p1(), p1(), vec![&[1], &[0]]),
        ("P1 over P1, a=2", p1(), p1(), vec![&[2], &[0]]),
        ("P1 over P1, a=3", p1(), p1(), vec![&[3], &[0]]),
        ("P1 over P1, (-2,1)", p1(), p1(), vec![&[-2], &[1]]),
        ("P2 over P1, (1,2)", p1(), p2(), vec![&[1, 2], &[0, 0]]),
        ("P1 over P2, zero", p2(), p1(), vec![&[0], &[0], &[0]]),
        ("P1 over P2, (1,0,0)", p2(), p1(), vec![&[1], &[0], &[0]]),
        ("P1 over P2, (2,0,3)", p2(), p1(), vec![&[2], &[0], &[3]]),
        ("P1 over P2, (-1,2,0)", p2(), p1(), vec![&[-1], &[2], &[0]]),
        ("P2 over P2", p2(), p2(), vec![&[1, 0], &[0, 2], &[3, -1]]),
        ("P1 over P1xP1, (1,0,2,0)", sq(), p1(), vec![&[1], &[0], &[2], &[0]]),
        ("P1 over P1xP1, (-1,3,0,2)", sq(), p1(), vec![&[-1], &[3], &[0], &[2]]),
        ("P2 over P1xP1", sq(), p2(), vec![&[1, 0], &[0, 0], &[0, 1], &[2, -1]]),
    ];
    specs
        .into_iter()
        .map(|(name, base, fiber, values)| {
            FiberedInstance::new(name, base, fiber, &values).expect("corpus map is well formed")
        })
        .collect()
}

/// Smooth complete fans of the corpus, including every twisted fan.
pub fn smooth_complete_fans() -> Vec<(String, Fan)> {
    let mut out: Vec<(String, Fan)> = vec![
        ("P1".into(), projective_line()),
        ("P2".into(), projective_plane()),
        ("P3".into(), projective_space(3)),
        ("P1xP1".into(), p1_squared()),
        ("square".into(), square()),
        ("(P1)^3".into(), p1_cubed()),
        ("hexagon".into(), hexagon()),
    ];
    for a in 0..4 {
        out.push((format!("F{a}"), hirzebruch(a)));
    }
    for inst in fibered_instances() {
        let d = inst.decompose().expect("corpus twist is smooth complete");
        out.push((inst.name, d.twisted));
    }
    out
}

/// `Lambda = (1,0), (0,1), (1,1), (0,1)` on the square: not the toric pair.
pub fn quasitoric_square() -> CharacteristicPair {
    let charmap = [[1, 0], [0, 1], [1, 1], [0, 1]].iter().map(|v| IntVector::from_i64s(v)).collect();
    CharacteristicPair::new(square(), charmap).expect("nonsingular pair")
}

/// Characteristic pairs: the toric pairs of the corpus fans, a non-toric
/// pair on the square, and twisted pairs built from both kinds.
pub fn characteristic_pairs() -> Vec<(String, CharacteristicPair)> {
    let mut out: Vec<(String, CharacteristicPair)> = vec![
        ("P1".into(), CharacteristicPair::toric(&projective_line()).expect("toric")),
        ("P2".into(), CharacteristicPair::toric(&projective_plane()).expect("toric")),
        ("hexagon".into(), CharacteristicPair::toric(&hexagon()).expect("toric")),
        ("(P1)^3".into(), CharacteristicPair::toric(&p1_cubed()).expect("toric")),
        ("quasitoric square".into(), quasitoric_square()),
    ];
    for inst in fibered_instances() {
        let base = CharacteristicPair::toric(&inst.base).expect("toric");
        let fiber = CharacteristicPair::toric(&inst.fiber).expect("toric");
        let pair = twisted_pair(&base, &fiber, &inst.phi).expect("twisted pair is nonsingular");
        out.push((format!("twisted {}", inst.name), pair));
    }
    let p1 = CharacteristicPair::toric(&projective_line()).expect("toric");
    let qs = quasitoric_square();
    let phi = PiecewiseLinearMap::from_i64(qs.complex(), 1, &[&[1], &[0], &[2], &[0]]).expect("map");
    out.push((
        "P1 over quasitoric square".into(),
        twisted_pair(&qs, &p1, &phi).expect("nonsingular"),
    ));
    let phi = PiecewiseLinearMap::from_i64(p1.complex(), 2, &[&[1, 1], &[0, 0]]).expect("map");
    out.push((
        "quasitoric square over P1".into(),
        twisted_pair(&p1, &qs, &phi).expect("nonsingular"),
    ));
    out
}
