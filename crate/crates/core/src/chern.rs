//! Total Chern classes and Chern numbers.

use num_bigint::BigInt;
use serde::Serialize;

use crate::cohomology::{build_ring, CohomologyClass, GradedQuotientRing};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::poly::Poly;
use crate::twist::{twisted_fan, PiecewiseLinearMap, TwistDecomposition};

/// `prod (1 + x)` over all generators of a toric ring.
pub fn total_chern_intrinsic(r: &GradedQuotientRing) -> CohomologyClass {
    r.total_product(0..r.generator_count()).expect("classes of the same ring")
}

/// A ring map given by the images of the source generators, checked to send
/// every defining relation of the source into the ideal of the target.
#[derive(Clone, Debug)]
pub struct PullbackMap<'a> {
    source: &'a GradedQuotientRing,
    target: &'a GradedQuotientRing,
    images: Vec<Poly>,
}

impl<'a> PullbackMap<'a> {
    pub fn new(source: &'a GradedQuotientRing, target: &'a GradedQuotientRing, images: Vec<Poly>) -> Result<Self> {
        if images.len() != source.generator_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} generators",
                images.len(),
                source.generator_count()
            )));
        }
        let tw: Vec<usize> = target.generator_degrees().iter().map(|d| d / 2).collect();
        for (i, (img, d)) in images.iter().zip(source.generator_degrees()).enumerate() {
            if img.nvars() != target.generator_count() {
                return Err(Error::DimensionMismatch(format!("image of generator {i} has the wrong arity")));
            }
            if !img.is_zero() && img.homogeneous_weight(&tw) != Some(d / 2) {
                return Err(Error::DegreeMismatch(format!("image of generator {i} is not of degree {d}")));
            }
        }
        let map = PullbackMap { source, target, images };
        let killed = source.killed_monomials().iter().map(|e| Poly::monomial(e.clone(), BigInt::from(1)));
        for rel in source.relations().iter().cloned().chain(killed) {
            if !target.reduce(&rel.substitute(&map.images)).is_zero() {
                return Err(Error::Inconsistent(format!(
                    "relation {} does not map into the target ideal",
                    rel.display_with(source.names())
                )));
            }
        }
        Ok(map)
    }

    /// The map induced by `x_s -> x_{graph_ray_of(s)}`.
    pub fn from_decomposition(
        base: &'a GradedQuotientRing,
        twisted: &'a GradedQuotientRing,
        d: &TwistDecomposition,
    ) -> Result<Self> {
        let n = twisted.generator_count();
        let images = d.graph_ray_of.iter().map(|&t| Poly::var(n, t)).collect();
        Self::new(base, twisted, images)
    }

    pub fn apply(&self, c: &CohomologyClass) -> Result<CohomologyClass> {
        if c.ring_id() != self.source.id() {
            return Err(Error::RingMismatch);
        }
        Ok(self.target.reduce(&self.source.to_poly(c).substitute(&self.images)))
    }
}

/// Base ring, twisted ring and the pullback between them.
#[derive(Clone, Debug)]
pub struct FiberedToric {
    pub base: Fan,
    pub fiber: Fan,
    pub phi: PiecewiseLinearMap,
    pub decomposition: TwistDecomposition,
    pub base_ring: GradedQuotientRing,
    pub twisted_ring: GradedQuotientRing,
}

impl FiberedToric {
    pub fn new(base: &Fan, fiber: &Fan, phi: &PiecewiseLinearMap) -> Result<Self> {
        let decomposition = twisted_fan(base, fiber, phi)?;
        let base_ring = build_ring(base)?;
        let twisted_ring = build_ring(&decomposition.twisted)?;
        Ok(FiberedToric {
            base: base.clone(),
            fiber: fiber.clone(),
            phi: phi.clone(),
            decomposition,
            base_ring,
            twisted_ring,
        })
    }

    pub fn pullback(&self) -> Result<PullbackMap<'_>> {
        PullbackMap::from_decomposition(&self.base_ring, &self.twisted_ring, &self.decomposition)
    }

    /// `pullback(c(base)) * prod over fiber rays of (1 + x)`; never looks at
    /// the product over all twisted rays.
    pub fn total_chern_bundle_formula(&self) -> Result<CohomologyClass> {
        let r = &self.twisted_ring;
        let pulled = self.pullback()?.apply(&total_chern_intrinsic(&self.base_ring))?;
        let vertical = r.total_product(self.decomposition.fiber_ray_of.iter().copied())?;
        r.multiply(&pulled, &vertical)
    }

    pub fn total_chern_intrinsic(&self) -> CohomologyClass {
        total_chern_intrinsic(&self.twisted_ring)
    }
}

/// One Chern number `int c_{i1} ... c_{ik}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChernNumber {
    /// Parts in descending order.
    pub partition: Vec<usize>,
    pub label: String,
    #[serde(with = "crate::io::int")]
    pub value: BigInt,
}

/// Partitions of `n` with descending parts, in ascending lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in 1..=left.min(max) {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    if n == 0 {
        return vec![vec![]];
    }
    out.sort();
    out
}

/// Label such as `c1^2`, `c1*c2`, `c3`.
pub fn partition_label(p: &[usize]) -> String {
    if p.is_empty() {
        return "1".into();
    }
    let mut parts = p.to_vec();
    parts.sort_unstable();
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < parts.len() {
        let mut j = i;
        while j < parts.len() && parts[j] == parts[i] {
            j += 1;
        }
        let k = j - i;
        out.push(if k == 1 { format!("c{}", parts[i]) } else { format!("c{}^{}", parts[i], k) });
        i = j;
    }
    out.join("*")
}

/// All Chern numbers of the total Chern class `c` in an oriented ring.
pub fn chern_numbers(r: &GradedQuotientRing, c: &CohomologyClass) -> Result<Vec<ChernNumber>> {
    let n = r.top_degree() / 2;
    let comps: Vec<CohomologyClass> = (0..=n).map(|i| c.homogeneous_part(2 * i)).collect();
    partitions(n)
        .into_iter()
        .map(|p| {
            let prod = r.product(p.iter().map(|&i| &comps[i]))?;
            Ok(ChernNumber { label: partition_label(&p), value: r.integrate(&prod)?, partition: p })
        })
        .collect()
}

/// Looks up a Chern number by label.
pub fn chern_number<'a>(numbers: &'a [ChernNumber], label: &str) -> Option<&'a BigInt> {
    numbers.iter().find(|c| c.label == label).map(|c| &c.value)
}

pub fn euler_characteristic(f: &Fan) -> usize {
    f.max_cones().len()
}

/// `int c_top` of the intrinsic class equals the number of maximal cones.
pub fn verify_gauss_bonnet(f: &Fan) -> Result<bool> {
    let r = build_ring(f)?;
    let top = total_chern_intrinsic(&r).homogeneous_part(r.top_degree());
    Ok(r.integrate(&top)? == BigInt::from(euler_characteristic(f)))
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeComparison {
    pub degree: usize,
    #[serde(with = "crate::io::ints")]
    pub intrinsic: Vec<BigInt>,
    #[serde(with = "crate::io::ints")]
    pub bundle_formula: Vec<BigInt>,
    pub equal: bool,
}

/// Two-route comparison of the total Chern class of a fibered toric variety.
#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub schema_version: u32,
    pub dim: usize,
    pub ray_count: usize,
    pub max_cone_count: usize,
    pub basis: Vec<Vec<String>>,
    pub degrees: Vec<DegreeComparison>,
    pub intrinsic_numbers: Vec<ChernNumber>,
    pub bundle_numbers: Vec<ChernNumber>,
    pub euler_characteristic: usize,
    pub gauss_bonnet: bool,
    pub equal: bool,
}

pub fn compare(ft: &FiberedToric) -> Result<ComparisonReport> {
    let r = &ft.twisted_ring;
    let intrinsic = ft.total_chern_intrinsic();
    let bundle = ft.total_chern_bundle_formula()?;
    let degrees: Vec<DegreeComparison> = (0..=r.top_degree() / 2)
        .map(|k| {
            let (a, b) = (intrinsic.component(2 * k), bundle.component(2 * k));
            DegreeComparison { degree: 2 * k, intrinsic: a.to_vec(), bundle_formula: b.to_vec(), equal: a == b }
        })
        .collect();
    let intrinsic_numbers = chern_numbers(r, &intrinsic)?;
    let bundle_numbers = chern_numbers(r, &bundle)?;
    let f = &ft.decomposition.twisted;
    let chi = euler_characteristic(f);
    let top = intrinsic.homogeneous_part(r.top_degree());
    Ok(ComparisonReport {
        schema_version: 1,
        dim: f.dim(),
        ray_count: f.ray_count(),
        max_cone_count: f.max_cones().len(),
        basis: (0..=r.top_degree() / 2).map(|k| r.basis_labels(2 * k)).collect(),
        equal: degrees.iter().all(|d| d.equal),
        degrees,
        gauss_bonnet: r.integrate(&top)? == BigInt::from(chi),
        intrinsic_numbers,
        bundle_numbers,
        euler_characteristic: chi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::fan::product_fan;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn numbers(f: &Fan) -> Vec<(String, BigInt)> {
        let r = build_ring(f).unwrap();
        chern_numbers(&r, &total_chern_intrinsic(&r)).unwrap().into_iter().map(|c| (c.label, c.value)).collect()
    }

    #[test]
    fn partition_order() {
        assert_eq!(partitions(2), vec![vec![1, 1], vec![2]]);
        assert_eq!(partitions(3), vec![vec![1, 1, 1], vec![2, 1], vec![3]]);
        assert_eq!(partitions(4).len(), 5);
        let labels: Vec<String> = partitions(3).iter().map(|p| partition_label(p)).collect();
        assert_eq!(labels, vec!["c1^3", "c1*c2", "c3"]);
    }

    #[test]
    fn p1_total_chern() {
        let r = build_ring(&corpus::projective_line()).unwrap();
        let c = total_chern_intrinsic(&r);
        assert_eq!(c.component(0), &[int(1)]);
        assert_eq!(c.component(2), &[int(2)]);
    }

    #[test]
    fn p2_total_chern() {
        let r = build_ring(&corpus::projective_plane()).unwrap();
        let c = total_chern_intrinsic(&r);
        let h = r.generator(0);
        let expected = r.reduce(&Poly::parse("1 + 3*x0 + 3*x0^2", r.names()).unwrap());
        assert_eq!(c, expected);
        assert_eq!(r.integrate(&r.multiply(&h, &h).unwrap()).unwrap(), int(1));
        assert_eq!(numbers(&corpus::projective_plane()), vec![("c1^2".into(), int(9)), ("c2".into(), int(3))]);
    }

    #[test]
    fn p1xp1_total_chern() {
        let f = corpus::p1_squared();
        let r = build_ring(&f).unwrap();
        // rays (1,0),(-1,0),(0,1),(0,-1): a = x0, b = x2.
        let expected = r.reduce(&Poly::parse("1 + 2*x0 + 2*x2 + 4*x0*x2", r.names()).unwrap());
        assert_eq!(total_chern_intrinsic(&r), expected);
    }

    #[test]
    fn small_chern_numbers() {
        for a in 0..4 {
            assert_eq!(numbers(&corpus::hirzebruch(a)), vec![("c1^2".into(), int(8)), ("c2".into(), int(4))]);
        }
        let n = numbers(&corpus::p1_cubed());
        assert_eq!(n, vec![("c1^3".into(), int(48)), ("c1*c2".into(), int(24)), ("c3".into(), int(8))]);
        assert_eq!(numbers(&corpus::hexagon()), vec![("c1^2".into(), int(6)), ("c2".into(), int(6))]);
    }

    #[test]
    fn gauss_bonnet_small() {
        assert!(verify_gauss_bonnet(&corpus::projective_plane()).unwrap());
        assert_eq!(euler_characteristic(&corpus::projective_plane()), 3);
        assert!(verify_gauss_bonnet(&corpus::hirzebruch(3)).unwrap());
    }

    #[test]
    fn pullback_basics() {
        let p1 = corpus::projective_line();
        let phi = PiecewiseLinearMap::from_i64(&p1, 1, &[&[2], &[0]]).unwrap();
        let ft = FiberedToric::new(&p1, &p1, &phi).unwrap();
        let pb = ft.pullback().unwrap();
        assert_eq!(pb.apply(&ft.base_ring.one()).unwrap(), ft.twisted_ring.one());
        assert_eq!(pb.apply(&ft.base_ring.generator(0)).unwrap(), ft.twisted_ring.generator(0));
        assert!(pb.apply(&ft.twisted_ring.one()).is_err());
        // A map that breaks x0 - x1 = 0.
        let bad = vec![Poly::var(4, 0), Poly::var(4, 2)];
        assert!(PullbackMap::new(&ft.base_ring, &ft.twisted_ring, bad).is_err());
    }

    #[test]
    fn pulled_back_point_times_fiber_point() {
        let p2 = corpus::projective_plane();
        let p1 = corpus::projective_line();
        let ft = FiberedToric::new(&p2, &p1, &PiecewiseLinearMap::zero(&p2, 1)).unwrap();
        let pt = ft.pullback().unwrap().apply(&ft.base_ring.point_class().unwrap()).unwrap();
        let fiber_pt = ft.twisted_ring.generator(ft.decomposition.fiber_ray_of[0]);
        let prod = ft.twisted_ring.multiply(&pt, &fiber_pt).unwrap();
        assert_eq!(ft.twisted_ring.integrate(&prod).unwrap(), int(1));
    }

    #[test]
    fn comparisons() {
        let p1 = corpus::projective_line();
        let zero = FiberedToric::new(&p1, &p1, &PiecewiseLinearMap::zero(&p1, 1)).unwrap();
        let product = build_ring(&product_fan(&p1, &p1)).unwrap();
        let c = zero.total_chern_bundle_formula().unwrap();
        assert!(c.same_coefficients(&total_chern_intrinsic(&product)));

        let p2 = corpus::projective_plane();
        let phi = PiecewiseLinearMap::from_i64(&p2, 1, &[&[1], &[0], &[0]]).unwrap();
        let report = compare(&FiberedToric::new(&p2, &p1, &phi).unwrap()).unwrap();
        assert!(report.equal && report.gauss_bonnet);
        assert_eq!(report.euler_characteristic, 6);

        let phi = PiecewiseLinearMap::from_i64(&p1, 1, &[&[2], &[0]]).unwrap();
        let report = compare(&FiberedToric::new(&p1, &p1, &phi).unwrap()).unwrap();
        assert!(report.equal);
        let vals: Vec<BigInt> = report.bundle_numbers.iter().map(|c| c.value.clone()).collect();
        assert_eq!(vals, vec![int(8), int(4)]);
    }
}
