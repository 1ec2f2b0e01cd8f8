//! Equivariant cohomology of characteristic pairs through the face ring.
//!
//! The face ring is the Stanley-Reisner ring without linear relations,
//! truncated at a degree bound. Restriction to the fixed point of a maximal
//! cone `s` sends `x_r` to 0 for `r` outside `s` and to the weight `u_r` for
//! `r` in `s`, where the `u_r` are the dual basis of `{charmap(r) : r in s}`.

use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::chern::total_chern_intrinsic;
use crate::cohomology::{cone_monomial_class, linear_relations_of, minimal_nonfaces, stanley_reisner_ring};
use crate::cohomology::{CohomologyClass, GradedQuotientRing};
use crate::error::{Error, Result};
use crate::fan::walls;
use crate::lattice::{invert_unimodular, IntVector};
use crate::poly::Poly;
use crate::twist::CharacteristicPair;

/// A polynomial in `t1, .., tn`, the degree-2 generators of `H*(BT)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightPolynomial(pub Poly);

impl WeightPolynomial {
    pub fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("t{i}")).collect()
    }

    /// The linear form `sum u_i t_i`.
    pub fn linear(u: &IntVector) -> Self {
        WeightPolynomial(Poly::linear(u.entries()))
    }

    pub fn one(n: usize) -> Self {
        WeightPolynomial(Poly::one(n))
    }

    pub fn poly(&self) -> &Poly {
        &self.0
    }

    /// Terms of total degree at most `degree` (cohomological).
    pub fn truncate(&self, degree: usize) -> Self {
        let n = self.0.nvars();
        let w = vec![1; n];
        let mut p = Poly::zero(n);
        for k in 0..=degree / 2 {
            p = &p + &self.0.weight_part(&w, k);
        }
        WeightPolynomial(p)
    }
}

impl fmt::Display for WeightPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = Self::names(self.0.nvars());
        write!(f, "{}", self.0.display_with(&names))
    }
}

impl Serialize for WeightPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Face ring of the pair, truncated above `degree_bound`.
pub fn face_ring(p: &CharacteristicPair, degree_bound: usize) -> Result<GradedQuotientRing> {
    let f = p.complex();
    stanley_reisner_ring(f.ray_count(), &minimal_nonfaces(f), &[], degree_bound)
}

/// `prod (1 + x_r)` in the face ring.
pub fn equivariant_total_chern(face: &GradedQuotientRing) -> CohomologyClass {
    total_chern_intrinsic(face)
}

/// `(ray, u_ray)` for the rays of the maximal cone `sigma`, in the cone's order.
pub fn fixed_point_weights(p: &CharacteristicPair, sigma: &[usize]) -> Result<Vec<(usize, IntVector)>> {
    let mut sorted = sigma.to_vec();
    sorted.sort_unstable();
    if p.complex().max_cone_index(&sorted).is_none() {
        return Err(Error::NotMaximal(sigma.to_vec()));
    }
    let inv = invert_unimodular(&p.charmap_matrix(&sorted)).map_err(|e| match e {
        Error::NotUnimodular { det } => Error::Singular { face: sorted.clone(), det },
        other => other,
    })?;
    Ok(sorted.iter().enumerate().map(|(i, &r)| (r, inv.row(i).clone())).collect())
}

/// Restriction of a face-ring class to the fixed point of `sigma`.
pub fn restrict_to_fixed_point(
    p: &CharacteristicPair,
    face: &GradedQuotientRing,
    c: &CohomologyClass,
    sigma: &[usize],
) -> Result<WeightPolynomial> {
    if c.ring_id() != face.id() {
        return Err(Error::RingMismatch);
    }
    let n = p.rank();
    let mut images = vec![Poly::zero(n); p.complex().ray_count()];
    for (r, u) in fixed_point_weights(p, sigma)? {
        images[r] = Poly::linear(u.entries());
    }
    Ok(WeightPolynomial(face.to_poly(c).substitute(&images)))
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedPointReport {
    pub cone: Vec<usize>,
    pub weights: Vec<WeightPolynomial>,
    pub restriction: WeightPolynomial,
    pub expected: WeightPolynomial,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MasudaReport {
    pub schema_version: u32,
    pub rank: usize,
    pub degree_bound: usize,
    pub fixed_points: Vec<FixedPointReport>,
    pub failures: Vec<Vec<usize>>,
    pub all_pass: bool,
}

/// Compares the restriction of the equivariant total Chern class at every
/// fixed point with `prod (1 + u_r)` over the rays of that cone.
pub fn masuda_check(p: &CharacteristicPair, degree_bound: usize) -> Result<MasudaReport> {
    let face = face_ring(p, degree_bound)?;
    let c = equivariant_total_chern(&face);
    let n = p.rank();
    let mut fixed_points = Vec::new();
    for sigma in p.complex().max_cones() {
        let weights = fixed_point_weights(p, sigma)?;
        let mut expected = Poly::one(n);
        for (_, u) in &weights {
            expected = &expected * &(&Poly::one(n) + &Poly::linear(u.entries()));
        }
        let expected = WeightPolynomial(expected).truncate(degree_bound);
        let restriction = restrict_to_fixed_point(p, &face, &c, sigma)?;
        fixed_points.push(FixedPointReport {
            cone: sigma.clone(),
            weights: weights.iter().map(|(_, u)| WeightPolynomial::linear(u)).collect(),
            pass: restriction == expected,
            restriction,
            expected,
        });
    }
    let failures: Vec<Vec<usize>> =
        fixed_points.iter().filter(|f| !f.pass).map(|f| f.cone.clone()).collect();
    Ok(MasudaReport {
        schema_version: 1,
        rank: n,
        degree_bound,
        all_pass: failures.is_empty(),
        failures,
        fixed_points,
    })
}

/// The ordinary cohomology ring of the pair: the face ring modulo
/// `sum <m, charmap(r)> x_r`, up to degree `2n`. It is oriented by the
/// maximal-cone monomials when they all reduce to the same class, which is
/// the case for toric pairs; otherwise it is left unoriented.
pub fn ordinary_ring(p: &CharacteristicPair) -> Result<GradedQuotientRing> {
    let f = p.complex();
    let n = p.rank();
    let linear = linear_relations_of(p.charmap(), n);
    let mut ring = stanley_reisner_ring(f.ray_count(), &minimal_nonfaces(f), &linear, 2 * n)?;
    let point = cone_monomial_class(&ring, &f.max_cones()[0]);
    if f.max_cones().iter().all(|s| cone_monomial_class(&ring, s) == point) {
        ring.set_orientation(&point, BigInt::from(1))?;
    }
    Ok(ring)
}

/// Image of a face-ring class in the ordinary ring, in degrees both rings share.
pub fn forget(
    face: &GradedQuotientRing,
    ordinary: &GradedQuotientRing,
    c: &CohomologyClass,
) -> Result<CohomologyClass> {
    if c.ring_id() != face.id() {
        return Err(Error::RingMismatch);
    }
    if face.generator_count() != ordinary.generator_count() {
        return Err(Error::DimensionMismatch("rings have different generators".into()));
    }
    Ok(ordinary.reduce(&face.to_poly(c)))
}

/// For every wall `W` shared by two maximal cones, the two fixed-point
/// restrictions of `c` agree on the span of `{charmap(w) : w in W}`.
pub fn gkm_consistent(p: &CharacteristicPair, face: &GradedQuotientRing, c: &CohomologyClass) -> Result<bool> {
    let n = p.rank();
    let cones = p.complex().max_cones();
    for wall in walls(p.complex()) {
        if wall.cones.len() != 2 {
            continue;
        }
        let a = restrict_to_fixed_point(p, face, c, &cones[wall.cones[0]])?;
        let b = restrict_to_fixed_point(p, face, c, &cones[wall.cones[1]])?;
        let diff = &a.0 - &b.0;
        // t_i -> sum_w s_w charmap(w)_i
        let images: Vec<Poly> = (0..n)
            .map(|i| Poly::linear(&wall.rays.iter().map(|&w| p.charmap()[w][i].clone()).collect::<Vec<_>>()))
            .collect();
        if !diff.substitute(&images).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
