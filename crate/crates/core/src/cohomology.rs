//! Graded quotient rings `Z[x_1..x_k] / I` computed degree by degree.
//!
//! The ideal `I` is given by monomial generators (the Stanley-Reisner part)
//! and homogeneous polynomial relations. In every degree the surviving
//! monomials are ordered lexicographically (descending, so `x0`-heavy
//! monomials come first). The quotient of their span by the degree piece of
//! the ideal is computed exactly with Hermite normal forms, and a set of
//! monomials whose classes form a Z-basis of it is chosen, preferring
//! monomials late in the order. Every surviving monomial gets a stored normal
//! form over that basis.
//!
//! Rings are immutable once built. Classes carry the id of their ring so that
//! mixing classes from different rings is caught.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{cokernel_basis, CokernelFailure, IntVector};
use crate::poly::{format_monomial, weighted_degree, Exponents, Poly};

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Debug)]
struct Piece {
    monomials: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
    /// Positions (in `monomials`) of the basis monomials.
    basis: Vec<usize>,
    /// Normal form of each surviving monomial over `basis`.
    normal_forms: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug)]
struct Orientation {
    point: Vec<BigInt>,
    value: BigInt,
}

#[derive(Clone, Debug)]
pub struct GradedQuotientRing {
    id: u64,
    names: Vec<String>,
    weights: Vec<usize>,
    killed: Vec<Exponents>,
    relations: Vec<Poly>,
    top_weight: usize,
    pieces: Vec<Piece>,
    orientation: Option<Orientation>,
}

/// An element of a [`GradedQuotientRing`], stored reduced: one coefficient
/// vector per even degree `0, 2, .., top_degree` over that degree's basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    ring: u64,
    parts: Vec<Vec<BigInt>>,
}

impl CohomologyClass {
    /// Coefficients of the degree-`degree` component (`degree` even).
    pub fn component(&self, degree: usize) -> &[BigInt] {
        &self.parts[degree / 2]
    }

    /// Coefficient vectors for degrees `0, 2, 4, ...`.
    pub fn components(&self) -> &[Vec<BigInt>] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().flatten().all(Zero::is_zero)
    }

    /// Same coefficient vectors, regardless of which ring instance they live in.
    pub fn same_coefficients(&self, other: &CohomologyClass) -> bool {
        self.parts == other.parts
    }

    /// Only the degree-`degree` component.
    pub fn homogeneous_part(&self, degree: usize) -> CohomologyClass {
        let parts = self
            .parts
            .iter()
            .enumerate()
            .map(|(k, p)| if 2 * k == degree { p.clone() } else { vec![BigInt::zero(); p.len()] })
            .collect();
        CohomologyClass { ring: self.ring, parts }
    }

    pub fn ring_id(&self) -> u64 {
        self.ring
    }
}

impl GradedQuotientRing {
    /// Builds the ring with generators of the given cohomological `degrees`
    /// (all even and positive), modulo the monomials in `killed` and the
    /// homogeneous `relations`, truncated above `top_degree`.
    pub fn new(
        names: Vec<String>,
        degrees: Vec<usize>,
        killed: Vec<Exponents>,
        relations: Vec<Poly>,
        top_degree: usize,
    ) -> Result<Self> {
        let k = names.len();
        if degrees.len() != k {
            return Err(Error::DimensionMismatch("one degree per generator required".into()));
        }
        if let Some(d) = degrees.iter().find(|&&d| d == 0 || d % 2 == 1) {
            return Err(Error::DegreeMismatch(format!("generator degree {d} is not even and positive")));
        }
        if top_degree % 2 == 1 {
            return Err(Error::DegreeMismatch(format!("top degree {top_degree} is odd")));
        }
        let weights: Vec<usize> = degrees.iter().map(|d| d / 2).collect();
        if killed.iter().chain(relations.iter().flat_map(|r| r.terms().map(|t| t.0))).any(|e| e.len() != k)
        {
            return Err(Error::DimensionMismatch("relation arity differs from generator count".into()));
        }
        let mut rel_weights = Vec::with_capacity(relations.len());
        for r in &relations {
            match r.homogeneous_weight(&weights) {
                Some(w) => rel_weights.push(w),
                None => {
                    return Err(Error::DegreeMismatch(format!(
                        "relation {} is not homogeneous",
                        r.display_with(&names)
                    )))
                }
            }
        }
        let top_weight = top_degree / 2;

        let mut pieces: Vec<Piece> = Vec::with_capacity(top_weight + 1);
        for w in 0..=top_weight {
            let monomials: Vec<Exponents> = monomials_of_weight(&weights, w)
                .into_iter()
                .filter(|e| !is_killed(e, &killed))
                .collect();
            let index: HashMap<Exponents, usize> =
                monomials.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
            let mut rows = Vec::new();
            for (rel, &rw) in relations.iter().zip(&rel_weights) {
                if rel.is_zero() || rw > w {
                    continue;
                }
                for m in &pieces[w - rw].monomials {
                    let mut row = vec![BigInt::zero(); monomials.len()];
                    let mut nonzero = false;
                    for (e, c) in rel.terms() {
                        let prod: Exponents = e.iter().zip(m).map(|(a, b)| a + b).collect();
                        if let Some(&j) = index.get(&prod) {
                            row[j] += c;
                            nonzero = true;
                        }
                    }
                    if nonzero {
                        rows.push(row);
                    }
                }
            }
            let cb = cokernel_basis(monomials.len(), &rows).map_err(|e| match e {
                CokernelFailure::Torsion => Error::Torsion { degree: 2 * w },
                CokernelFailure::NoCoordinateBasis => Error::NoMonomialBasis { degree: 2 * w },
            })?;
            let (basis, normal_forms) = (cb.basis, cb.images);
            pieces.push(Piece { monomials, index, basis, normal_forms });
        }

        Ok(GradedQuotientRing {
            id: NEXT_RING_ID.fetch_add(1, Ordering::Relaxed),
            names,
            weights,
            killed,
            relations,
            top_weight,
            pieces,
            orientation: None,
        })
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    /// Cohomological degree of each generator.
    pub fn generator_degrees(&self) -> Vec<usize> {
        self.weights.iter().map(|w| 2 * w).collect()
    }

    pub fn killed_monomials(&self) -> &[Exponents] {
        &self.killed
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn top_degree(&self) -> usize {
        2 * self.top_weight
    }

    /// Rank of the degree-`degree` piece.
    pub fn rank(&self, degree: usize) -> usize {
        if degree % 2 == 1 || degree / 2 > self.top_weight {
            return 0;
        }
        self.pieces[degree / 2].basis.len()
    }

    /// Ranks in degrees `0, 2, .., top_degree`.
    pub fn ranks(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.basis.len()).collect()
    }

    pub fn basis_monomials(&self, degree: usize) -> Vec<Exponents> {
        let p = &self.pieces[degree / 2];
        p.basis.iter().map(|&i| p.monomials[i].clone()).collect()
    }

    pub fn basis_labels(&self, degree: usize) -> Vec<String> {
        self.basis_monomials(degree)
            .iter()
            .map(|e| {
                let s = format_monomial(e, &self.names);
                if s.is_empty() {
                    "1".to_string()
                } else {
                    s
                }
            })
            .collect()
    }

    fn empty_parts(&self) -> Vec<Vec<BigInt>> {
        self.pieces.iter().map(|p| vec![BigInt::zero(); p.basis.len()]).collect()
    }

    pub fn zero(&self) -> CohomologyClass {
        CohomologyClass { ring: self.id, parts: self.empty_parts() }
    }

    pub fn one(&self) -> CohomologyClass {
        self.reduce(&Poly::one(self.generator_count()))
    }

    pub fn generator(&self, i: usize) -> CohomologyClass {
        self.reduce(&Poly::var(self.generator_count(), i))
    }

    /// Normal form of the monomial `e` (zero if killed or above the top).
    fn monomial_nf(&self, e: &[u32]) -> Option<&[BigInt]> {
        let w = weighted_degree(e, &self.weights);
        if w > self.top_weight {
            return None;
        }
        let p = &self.pieces[w];
        p.index.get(e).map(|&i| p.normal_forms[i].as_slice())
    }

    /// Normal form of an integer polynomial in the generators.
    pub fn reduce(&self, p: &Poly) -> CohomologyClass {
        assert_eq!(p.nvars(), self.generator_count(), "polynomial arity mismatch");
        let mut parts = self.empty_parts();
        for (e, c) in p.terms() {
            let w = weighted_degree(e, &self.weights);
            if let Some(nf) = self.monomial_nf(e) {
                for (t, v) in parts[w].iter_mut().zip(nf) {
                    if !v.is_zero() {
                        *t += c * v;
                    }
                }
            }
        }
        CohomologyClass { ring: self.id, parts }
    }

    /// The polynomial `sum coeff * basis monomial` representing `c`.
    pub fn to_poly(&self, c: &CohomologyClass) -> Poly {
        let mut p = Poly::zero(self.generator_count());
        for (piece, coeffs) in self.pieces.iter().zip(&c.parts) {
            for (&b, coeff) in piece.basis.iter().zip(coeffs) {
                p.add_term(piece.monomials[b].clone(), coeff.clone());
            }
        }
        p
    }

    fn check(&self, c: &CohomologyClass) -> Result<()> {
        if c.ring == self.id {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, a: &CohomologyClass, b: &CohomologyClass) -> Result<CohomologyClass> {
        self.check(a)?;
        self.check(b)?;
        let parts = a
            .parts
            .iter()
            .zip(&b.parts)
            .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect())
            .collect();
        Ok(CohomologyClass { ring: self.id, parts })
    }

    pub fn scale(&self, a: &CohomologyClass, s: &BigInt) -> Result<CohomologyClass> {
        self.check(a)?;
        let parts = a.parts.iter().map(|x| x.iter().map(|p| p * s).collect()).collect();
        Ok(CohomologyClass { ring: self.id, parts })
    }

    pub fn sub(&self, a: &CohomologyClass, b: &CohomologyClass) -> Result<CohomologyClass> {
        self.add(a, &self.scale(b, &BigInt::from(-1))?)
    }

    /// Reduced product; components above the top degree are dropped.
    pub fn multiply(&self, a: &CohomologyClass, b: &CohomologyClass) -> Result<CohomologyClass> {
        self.check(a)?;
        self.check(b)?;
        let mut parts = self.empty_parts();
        let mut prod: Exponents = vec![0; self.generator_count()];
        for (wa, ca) in a.parts.iter().enumerate() {
            for (wb, cb) in b.parts.iter().enumerate() {
                let w = wa + wb;
                if w > self.top_weight {
                    break;
                }
                let (pa, pb) = (&self.pieces[wa], &self.pieces[wb]);
                for (i, x) in ca.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let ma = &pa.monomials[pa.basis[i]];
                    for (j, y) in cb.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        let mb = &pb.monomials[pb.basis[j]];
                        for (t, (p, q)) in prod.iter_mut().zip(ma.iter().zip(mb)) {
                            *t = p + q;
                        }
                        if let Some(nf) = self.monomial_nf(&prod) {
                            let xy = x * y;
                            for (t, v) in parts[w].iter_mut().zip(nf) {
                                if !v.is_zero() {
                                    *t += &xy * v;
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(CohomologyClass { ring: self.id, parts })
    }

    /// Product of the given classes (the unit for an empty list).
    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a CohomologyClass>) -> Result<CohomologyClass> {
        let mut acc = self.one();
        for f in factors {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    /// `prod_i (1 + x_i)` over the given generators, reduced.
    pub fn total_product(&self, generators: impl IntoIterator<Item = usize>) -> Result<CohomologyClass> {
        let one = self.one();
        let mut acc = one.clone();
        for g in generators {
            let factor = self.add(&one, &self.generator(g))?;
            acc = self.multiply(&acc, &factor)?;
        }
        Ok(acc)
    }

    /// Fixes the fundamental class: `point` (a nonzero top-degree class)
    /// integrates to `value`.
    pub fn set_orientation(&mut self, point: &CohomologyClass, value: BigInt) -> Result<()> {
        self.check(point)?;
        let top = self.top_weight;
        if point.parts.iter().take(top).flatten().any(|c| !c.is_zero()) {
            return Err(Error::DegreeMismatch("point class must be of top degree".into()));
        }
        if self.pieces[top].basis.len() != 1 {
            return Err(Error::Inconsistent(format!(
                "top degree has rank {}, expected 1",
                self.pieces[top].basis.len()
            )));
        }
        if point.parts[top][0].is_zero() {
            return Err(Error::Inconsistent("point class reduces to zero".into()));
        }
        self.orientation = Some(Orientation { point: point.parts[top].clone(), value });
        Ok(())
    }

    pub fn is_oriented(&self) -> bool {
        self.orientation.is_some()
    }

    /// The class integrating to 1, when the orientation allows one.
    pub fn point_class(&self) -> Result<CohomologyClass> {
        let o = self.orientation.as_ref().ok_or(Error::NoOrientation)?;
        let mut parts = self.empty_parts();
        // point integrates to `value`; the unit-integral class is point / value.
        let (q, r) = o.point[0].div_rem(&o.value);
        if !r.is_zero() || q.is_zero() {
            return Err(Error::Inconsistent("fundamental class is not integral".into()));
        }
        parts[self.top_weight][0] = q;
        Ok(CohomologyClass { ring: self.id, parts })
    }

    /// Integral of a class of pure top degree.
    pub fn integrate(&self, c: &CohomologyClass) -> Result<BigInt> {
        self.check(c)?;
        if c.parts.iter().take(self.top_weight).flatten().any(|x| !x.is_zero()) {
            return Err(Error::DegreeMismatch(
                "class has components below the top degree; use integrate_top".into(),
            ));
        }
        self.integrate_top(c)
    }

    /// Integral of the top-degree component, ignoring lower degrees.
    pub fn integrate_top(&self, c: &CohomologyClass) -> Result<BigInt> {
        self.check(c)?;
        let o = self.orientation.as_ref().ok_or(Error::NoOrientation)?;
        let num = &c.parts[self.top_weight][0] * &o.value;
        let (q, r) = num.div_rem(&o.point[0]);
        if !r.is_zero() {
            return Err(Error::Inconsistent("top class is not an integral multiple of the point".into()));
        }
        Ok(q)
    }

    /// Human-readable rendering of a class over the chosen bases.
    pub fn format_class(&self, c: &CohomologyClass) -> String {
        self.to_poly(c).display_with(&self.names).to_string()
    }
}

/// Exponent vectors of weighted degree `w`, in descending lexicographic order.
fn monomials_of_weight(weights: &[usize], w: usize) -> Vec<Exponents> {
    fn rec(weights: &[usize], i: usize, left: usize, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if i == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let max = left / weights[i];
        for k in (0..=max).rev() {
            cur[i] = k as u32;
            rec(weights, i + 1, left - k * weights[i], cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; weights.len()];
    rec(weights, 0, w, &mut cur, &mut out);
    out
}

fn is_killed(e: &[u32], killed: &[Exponents]) -> bool {
    killed.iter().any(|g| g.iter().zip(e).all(|(a, b)| a <= b))
}

/// Inclusion-minimal ray sets that lie in no maximal cone, sorted.
pub fn minimal_nonfaces(f: &Fan) -> Vec<Vec<usize>> {
    let faces = f.faces_by_size();
    let r = f.ray_count();
    let mut out = Vec::new();
    for s in 1..=f.dim() + 1 {
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        if s == 1 {
            candidates.extend((0..r).map(|i| vec![i]));
        } else {
            for face in &faces[s - 1] {
                let last = *face.last().expect("nonempty face");
                for j in last + 1..r {
                    let mut c = face.clone();
                    c.push(j);
                    candidates.push(c);
                }
            }
        }
        for c in candidates {
            let is_face = faces.get(s).is_some_and(|fs| fs.contains(&c));
            if is_face {
                continue;
            }
            let all_sub_faces = (0..s).all(|skip| {
                let sub: Vec<usize> =
                    c.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &x)| x).collect();
                faces[s - 1].contains(&sub)
            });
            if all_sub_faces {
                out.push(c);
            }
        }
    }
    out.sort();
    out
}

/// For each standard dual basis element `m_i`, the vector `(<m_i, v_r>)_r`.
pub fn linear_relations(f: &Fan) -> Vec<IntVector> {
    linear_relations_of(f.rays(), f.dim())
}

/// The same for arbitrary vectors of length `n` attached to the generators.
pub fn linear_relations_of(values: &[IntVector], n: usize) -> Vec<IntVector> {
    (0..n).map(|i| IntVector::new(values.iter().map(|v| v[i].clone()).collect())).collect()
}

pub fn ray_names(count: usize) -> Vec<String> {
    (0..count).map(|i| format!("x{i}")).collect()
}

/// `Z[x_r] / (SR(nonfaces) + linear forms)`, truncated above `top_degree`.
pub fn stanley_reisner_ring(
    ray_count: usize,
    nonfaces: &[Vec<usize>],
    linear: &[IntVector],
    top_degree: usize,
) -> Result<GradedQuotientRing> {
    let killed = nonfaces
        .iter()
        .map(|s| {
            let mut e = vec![0u32; ray_count];
            for &i in s {
                e[i] = 1;
            }
            e
        })
        .collect();
    let relations = linear.iter().map(|l| Poly::linear(l.entries())).collect();
    GradedQuotientRing::new(ray_names(ray_count), vec![2; ray_count], killed, relations, top_degree)
}

/// Integral cohomology ring of the smooth complete toric variety of `f`,
/// oriented so that every maximal-cone monomial integrates to 1.
pub fn build_ring(f: &Fan) -> Result<GradedQuotientRing> {
    f.require_smooth_complete()?;
    let n = f.dim();
    let mut ring =
        stanley_reisner_ring(f.ray_count(), &minimal_nonfaces(f), &linear_relations(f), 2 * n)?;
    let ranks = ring.ranks();
    let total: usize = ranks.iter().sum();
    if total != f.max_cones().len() {
        return Err(Error::Inconsistent(format!(
            "total rank {total} differs from the number of maximal cones {}",
            f.max_cones().len()
        )));
    }
    if n > 0 && ranks[1] != f.ray_count() - n {
        return Err(Error::Inconsistent(format!("degree 2 rank {} != rays - dim", ranks[1])));
    }
    let point = cone_monomial_class(&ring, &f.max_cones()[0]);
    for cone in &f.max_cones()[1..] {
        if cone_monomial_class(&ring, cone) != point {
            return Err(Error::Inconsistent(format!(
                "maximal cone {cone:?} yields a different point class"
            )));
        }
    }
    ring.set_orientation(&point, BigInt::one())?;
    Ok(ring)
}

/// Reduced product of the generators of a cone.
pub fn cone_monomial_class(ring: &GradedQuotientRing, cone: &[usize]) -> CohomologyClass {
    let mut e = vec![0u32; ring.generator_count()];
    for &i in cone {
        e[i] += 1;
    }
    ring.reduce(&Poly::monomial(e, BigInt::one()))
}

/// Ranks per even degree.
pub fn betti(r: &GradedQuotientRing) -> Vec<usize> {
    r.ranks()
}

/// h-vector of the simplicial complex of maximal cones, from its face counts.
pub fn h_vector(f: &Fan) -> Vec<i64> {
    let n = f.dim();
    let faces = f.faces_by_size();
    let fv: Vec<i64> = faces.iter().map(|s| s.len() as i64).collect();
    (0..=n)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(n - i, k - i) * fv[i]
                })
                .sum()
        })
        .collect()
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::fan::product_fan;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn nonfaces() {
        assert_eq!(minimal_nonfaces(&corpus::projective_line()), vec![vec![0, 1]]);
        assert_eq!(minimal_nonfaces(&corpus::projective_plane()), vec![vec![0, 1, 2]]);
        let p1 = corpus::projective_line();
        assert_eq!(minimal_nonfaces(&product_fan(&p1, &p1)), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn linear_relation_vectors() {
        assert_eq!(linear_relations(&corpus::projective_line()), vec![IntVector::from_i64s(&[1, -1])]);
        assert_eq!(
            linear_relations(&corpus::projective_plane()),
            vec![IntVector::from_i64s(&[1, 0, -1]), IntVector::from_i64s(&[0, 1, -1])]
        );
        for a in 0..4 {
            assert_eq!(
                linear_relations(&corpus::hirzebruch(a)),
                vec![IntVector::from_i64s(&[1, -1, 0, 0]), IntVector::from_i64s(&[a, 0, 1, -1])]
            );
        }
    }

    #[test]
    fn ranks() {
        assert_eq!(build_ring(&corpus::projective_line()).unwrap().ranks(), vec![1, 1]);
        assert_eq!(build_ring(&corpus::projective_plane()).unwrap().ranks(), vec![1, 1, 1]);
        for a in 0..4 {
            assert_eq!(build_ring(&corpus::hirzebruch(a)).unwrap().ranks(), vec![1, 2, 1]);
        }
        assert!(build_ring(&Fan::from_i64(1, &[&[1], &[-1]], &[&[0]]).unwrap()).is_err());
    }

    #[test]
    fn reduction_on_p1() {
        let r = build_ring(&corpus::projective_line()).unwrap();
        let x0 = r.generator(0);
        assert_eq!(x0.component(2), &[int(1)]);
        assert_eq!(r.integrate(&x0).unwrap(), int(1));
        let sq = r.reduce(&Poly::monomial(vec![2, 0], int(1)));
        assert!(sq.is_zero());
        assert!(r.reduce(&Poly::zero(2)).is_zero());
        assert!(r.multiply(&r.generator(0), &r.generator(1)).unwrap().is_zero());
    }

    #[test]
    fn basis_monomials_reduce_to_themselves() {
        let r = build_ring(&corpus::hirzebruch(2)).unwrap();
        for d in [0, 2, 4] {
            for (i, e) in r.basis_monomials(d).into_iter().enumerate() {
                let c = r.reduce(&Poly::monomial(e, int(1)));
                let mut expected = vec![int(0); r.rank(d)];
                expected[i] = int(1);
                assert_eq!(c.component(d), &expected[..]);
            }
        }
    }

    #[test]
    fn p2_hyperplane_square() {
        let r = build_ring(&corpus::projective_plane()).unwrap();
        let h = r.generator(0);
        let h2 = r.multiply(&h, &h).unwrap();
        assert_eq!(r.integrate(&h2).unwrap(), int(1));
        let x0x1 = r.reduce(&Poly::monomial(vec![1, 1, 0], int(1)));
        assert_eq!(r.integrate(&x0x1).unwrap(), int(1));
        assert_eq!(r.multiply(&h, &r.one()).unwrap(), h);
    }

    #[test]
    fn integration_normalisation() {
        for (_, f) in corpus::smooth_complete_fans() {
            let r = build_ring(&f).unwrap();
            let pt = r.point_class().unwrap();
            assert_eq!(r.integrate(&pt).unwrap(), int(1));
            assert!(r.integrate(&r.add(&pt, &r.one()).unwrap()).is_err());
            assert_eq!(r.integrate_top(&r.add(&pt, &r.one()).unwrap()).unwrap(), int(1));
        }
    }

    #[test]
    fn ring_mismatch() {
        let a = build_ring(&corpus::projective_line()).unwrap();
        let b = build_ring(&corpus::projective_line()).unwrap();
        assert!(matches!(a.multiply(&a.one(), &b.one()), Err(Error::RingMismatch)));
        assert!(a.one().same_coefficients(&b.one()));
    }

    #[test]
    fn h_vectors() {
        assert_eq!(h_vector(&corpus::projective_plane()), vec![1, 1, 1]);
        let p1 = corpus::projective_line();
        assert_eq!(h_vector(&product_fan(&p1, &p1)), vec![1, 2, 1]);
        assert_eq!(h_vector(&p1), vec![1, 1]);
        assert_eq!(h_vector(&corpus::hexagon()), vec![1, 4, 1]);
    }

    #[test]
    fn face_ring_without_relations() {
        let p1 = corpus::projective_line();
        let r = stanley_reisner_ring(2, &minimal_nonfaces(&p1), &[], 6).unwrap();
        assert_eq!(r.ranks(), vec![1, 2, 2, 2]);
    }

    #[test]
    fn torsion_is_reported() {
        // Z[x]/(2x) has torsion in degree 2.
        let r = GradedQuotientRing::new(
            vec!["x".into()],
            vec![2],
            vec![],
            vec![Poly::monomial(vec![1], int(2))],
            2,
        );
        assert!(matches!(r, Err(Error::Torsion { degree: 2 })));
    }

    #[test]
    fn inhomogeneous_relation_rejected() {
        let r = GradedQuotientRing::new(
            vec!["x".into()],
            vec![2],
            vec![],
            vec![Poly::parse("x^2 + x", &["x".to_string()]).unwrap()],
            4,
        );
        assert!(matches!(r, Err(Error::DegreeMismatch(_))));
    }
}
