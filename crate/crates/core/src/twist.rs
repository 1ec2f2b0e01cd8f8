//! Twisted fans and twisted characteristic pairs.
//!
//! Coordinates in the total lattice are ordered `(base, fiber)`. The rays of
//! the twisted fan are the base rays lifted to the graph of `phi` followed by
//! the fiber rays embedded as `(0, v)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::{validate, Fan};
use crate::lattice::{determinant, IntMatrix, IntVector};

/// An integral map on the support of a simplicial base fan, linear on each
/// cone, recorded by its values on the base rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseLinearMap {
    fiber_rank: usize,
    values: Vec<IntVector>,
}

impl PiecewiseLinearMap {
    pub fn new(base: &Fan, fiber_rank: usize, values: Vec<IntVector>) -> Result<Self> {
        if values.len() != base.ray_count() {
            return Err(Error::InvalidMap(format!(
                "{} values given for {} base rays",
                values.len(),
                base.ray_count()
            )));
        }
        if let Some(i) = values.iter().position(|v| v.len() != fiber_rank) {
            return Err(Error::InvalidMap(format!(
                "value on base ray {i} has length {}, expected fiber rank {fiber_rank}",
                values[i].len()
            )));
        }
        Ok(PiecewiseLinearMap { fiber_rank, values })
    }

    pub fn zero(base: &Fan, fiber_rank: usize) -> Self {
        PiecewiseLinearMap {
            fiber_rank,
            values: vec![IntVector::zero(fiber_rank); base.ray_count()],
        }
    }

    pub fn from_i64(base: &Fan, fiber_rank: usize, values: &[&[i64]]) -> Result<Self> {
        Self::new(base, fiber_rank, values.iter().map(|v| IntVector::from_i64s(v)).collect())
    }

    pub fn fiber_rank(&self) -> usize {
        self.fiber_rank
    }

    pub fn base_ray_count(&self) -> usize {
        self.values.len()
    }

    /// Value on base ray `i`.
    pub fn value(&self, i: usize) -> &IntVector {
        &self.values[i]
    }

    pub fn values(&self) -> &[IntVector] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(IntVector::is_zero)
    }

    /// Post-composition with an automorphism `g` of the fiber lattice.
    pub fn transform(&self, g: &IntMatrix) -> Result<Self> {
        let values = self.values.iter().map(|v| g.mul_vec(v)).collect::<Result<Vec<_>>>()?;
        Ok(PiecewiseLinearMap { fiber_rank: self.fiber_rank, values })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistDecomposition {
    pub twisted: Fan,
    /// `graph_ray_of[i]` is the twisted ray lifting base ray `i`.
    pub graph_ray_of: Vec<usize>,
    /// `fiber_ray_of[j]` is the twisted ray embedding fiber ray `j`.
    pub fiber_ray_of: Vec<usize>,
}

fn twist_combinatorics(base: &Fan, fiber: &Fan, phi: &PiecewiseLinearMap) -> Result<TwistDecomposition> {
    if phi.base_ray_count() != base.ray_count() {
        return Err(Error::InvalidMap(format!(
            "map has {} values, base fan has {} rays",
            phi.base_ray_count(),
            base.ray_count()
        )));
    }
    if phi.fiber_rank() != fiber.dim() {
        return Err(Error::InvalidMap(format!(
            "map lands in rank {}, fiber lattice has rank {}",
            phi.fiber_rank(),
            fiber.dim()
        )));
    }
    let zero_base = IntVector::zero(base.dim());
    let mut rays: Vec<IntVector> =
        base.rays().iter().zip(phi.values()).map(|(v, p)| v.concat(p)).collect();
    rays.extend(fiber.rays().iter().map(|v| zero_base.concat(v)));
    let nb = base.ray_count();
    let graph_ray_of: Vec<usize> = (0..nb).collect();
    let fiber_ray_of: Vec<usize> = (nb..nb + fiber.ray_count()).collect();
    let mut cones = Vec::with_capacity(base.max_cones().len() * fiber.max_cones().len());
    for s in base.max_cones() {
        for t in fiber.max_cones() {
            let mut c: Vec<usize> = s.iter().map(|&i| graph_ray_of[i]).collect();
            c.extend(t.iter().map(|&j| fiber_ray_of[j]));
            cones.push(c);
        }
    }
    let twisted = Fan::new(base.dim() + fiber.dim(), rays, cones)?;
    Ok(TwistDecomposition { twisted, graph_ray_of, fiber_ray_of })
}

/// The twisted fan of the base `base`, the fiber `fiber` and the map `phi`.
pub fn twisted_fan(base: &Fan, fiber: &Fan, phi: &PiecewiseLinearMap) -> Result<TwistDecomposition> {
    base.require_smooth_complete()
        .map_err(|e| Error::NotSmoothComplete(format!("base fan: {e}")))?;
    fiber
        .require_smooth_complete()
        .map_err(|e| Error::NotSmoothComplete(format!("fiber fan: {e}")))?;
    let d = twist_combinatorics(base, fiber, phi)?;
    let report = validate(&d.twisted);
    if !(report.well_formed && report.smooth && report.complete) {
        return Err(Error::Inconsistent(format!(
            "twisted fan failed validation: {:?}",
            report.diagnostics
        )));
    }
    Ok(d)
}

/// For each fiber coordinate `i`, the coefficients `phi(v_s)_i` of the base
/// divisors `D_s`: the class `lambda(e_i^*)` of the principal torus bundle.
pub fn principal_classes(phi: &PiecewiseLinearMap) -> Vec<IntVector> {
    (0..phi.fiber_rank())
        .map(|i| IntVector::new(phi.values().iter().map(|v| v[i].clone()).collect()))
        .collect()
}

/// Simplicial combinatorics (carried by a fan with geometric rays) together
/// with a characteristic map that is unimodular on every maximal face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicPair {
    complex: Fan,
    charmap: Vec<IntVector>,
}

impl CharacteristicPair {
    pub fn new(complex: Fan, charmap: Vec<IntVector>) -> Result<Self> {
        if charmap.len() != complex.ray_count() {
            return Err(Error::DimensionMismatch(format!(
                "charmap has {} values for {} rays",
                charmap.len(),
                complex.ray_count()
            )));
        }
        let rank = complex.dim();
        if let Some(i) = charmap.iter().position(|v| v.len() != rank) {
            return Err(Error::DimensionMismatch(format!(
                "charmap[{i}] has length {}, expected {rank}",
                charmap[i].len()
            )));
        }
        let report = validate(&complex);
        if !(report.simplicial && report.complete) {
            return Err(Error::InvalidFan(format!(
                "characteristic pair needs a complete simplicial complex: {:?}",
                report.diagnostics
            )));
        }
        let pair = CharacteristicPair { complex, charmap };
        for cone in pair.complex.max_cones() {
            let det = determinant(&pair.charmap_matrix(cone))?;
            if !det.abs().is_one() {
                return Err(Error::Singular { face: cone.clone(), det });
            }
        }
        Ok(pair)
    }

    /// The tautological pair of a smooth complete fan: `charmap = rays`.
    pub fn toric(fan: &Fan) -> Result<Self> {
        fan.require_smooth_complete()?;
        Self::new(fan.clone(), fan.rays().to_vec())
    }

    pub fn complex(&self) -> &Fan {
        &self.complex
    }

    pub fn charmap(&self) -> &[IntVector] {
        &self.charmap
    }

    pub fn rank(&self) -> usize {
        self.complex.dim()
    }

    /// True iff the charmap agrees with the geometric rays.
    pub fn is_toric(&self) -> bool {
        self.charmap == self.complex.rays()
    }

    /// Matrix with columns `charmap(r)` for `r` in `cone`, in the given order.
    pub fn charmap_matrix(&self, cone: &[usize]) -> IntMatrix {
        let cols: Vec<IntVector> = cone.iter().map(|&i| self.charmap[i].clone()).collect();
        IntMatrix::from_columns(self.rank(), &cols).expect("charmap values have lattice rank")
    }
}

/// Twisted characteristic pair. Fiber rays map to `(0, fiber charmap)`; base
/// ray `r` with geometric generator `v_r` maps to `(base charmap(r), phi(v_r))`.
pub fn twisted_pair(
    base_pair: &CharacteristicPair,
    fiber_pair: &CharacteristicPair,
    phi: &PiecewiseLinearMap,
) -> Result<CharacteristicPair> {
    let d = twist_combinatorics(base_pair.complex(), fiber_pair.complex(), phi)?;
    let zero_base = IntVector::zero(base_pair.rank());
    let mut charmap = vec![IntVector::zero(0); d.twisted.ray_count()];
    for (i, &t) in d.graph_ray_of.iter().enumerate() {
        charmap[t] = base_pair.charmap()[i].concat(phi.value(i));
    }
    for (j, &t) in d.fiber_ray_of.iter().enumerate() {
        charmap[t] = zero_base.concat(&fiber_pair.charmap()[j]);
    }
    CharacteristicPair::new(d.twisted, charmap)
}

/// Block transformation `diag(I, g)` of the total lattice.
pub fn fiber_block(base_rank: usize, g: &IntMatrix) -> IntMatrix {
    let n = base_rank + g.nrows();
    let rows = (0..n)
        .map(|i| {
            IntVector::new(
                (0..n)
                    .map(|j| match (i < base_rank, j < base_rank) {
                        (true, true) if i == j => BigInt::from(1),
                        (false, false) => g.get(i - base_rank, j - base_rank).clone(),
                        _ => BigInt::zero(),
                    })
                    .collect(),
            )
        })
        .collect();
    IntMatrix::from_rows(n, rows).expect("square block matrix")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::fan::product_fan;

    #[test]
    fn zero_twist_is_product() {
        let p1 = corpus::projective_line();
        let d = twisted_fan(&p1, &p1, &PiecewiseLinearMap::zero(&p1, 1)).unwrap();
        assert_eq!(d.twisted, product_fan(&p1, &p1));

        let p2 = corpus::projective_plane();
        let d = twisted_fan(&p2, &p1, &PiecewiseLinearMap::zero(&p2, 1)).unwrap();
        assert_eq!((d.twisted.ray_count(), d.twisted.max_cones().len()), (5, 6));
    }

    #[test]
    fn hirzebruch_rays() {
        let p1 = corpus::projective_line();
        for a in 0..4 {
            let phi = PiecewiseLinearMap::from_i64(&p1, 1, &[&[a], &[0]]).unwrap();
            let d = twisted_fan(&p1, &p1, &phi).unwrap();
            let expected: Vec<IntVector> = [[1, a], [-1, 0], [0, 1], [0, -1]]
                .iter()
                .map(|r| IntVector::from_i64s(r))
                .collect();
            assert_eq!(d.twisted.rays(), &expected[..]);
            assert_eq!(d.twisted.max_cones().len(), 4);
            assert_eq!(d.graph_ray_of, vec![0, 1]);
            assert_eq!(d.fiber_ray_of, vec![2, 3]);
        }
    }

    #[test]
    fn map_arity_errors() {
        let p1 = corpus::projective_line();
        assert!(PiecewiseLinearMap::from_i64(&p1, 1, &[&[1]]).is_err());
        assert!(PiecewiseLinearMap::from_i64(&p1, 1, &[&[1, 2], &[0]]).is_err());
        let p2 = corpus::projective_plane();
        let phi = PiecewiseLinearMap::zero(&p1, 1);
        assert!(twisted_fan(&p1, &p2, &phi).is_err());
        let bad = Fan::from_i64(1, &[&[1], &[-1]], &[&[0]]).unwrap();
        assert!(matches!(
            twisted_fan(&bad, &p1, &PiecewiseLinearMap::zero(&bad, 1)),
            Err(Error::NotSmoothComplete(_))
        ));
    }

    #[test]
    fn principal_class_coefficients() {
        let p1 = corpus::projective_line();
        assert_eq!(
            principal_classes(&PiecewiseLinearMap::zero(&p1, 2)),
            vec![IntVector::zero(2), IntVector::zero(2)]
        );
        let phi = PiecewiseLinearMap::from_i64(&p1, 1, &[&[3], &[0]]).unwrap();
        assert_eq!(principal_classes(&phi), vec![IntVector::from_i64s(&[3, 0])]);
        let p2 = corpus::projective_plane();
        let phi = PiecewiseLinearMap::from_i64(&p2, 1, &[&[1], &[0], &[0]]).unwrap();
        assert_eq!(principal_classes(&phi), vec![IntVector::from_i64s(&[1, 0, 0])]);
    }

    #[test]
    fn tautological_pairs_reproduce_twisted_rays() {
        let p1 = corpus::projective_line();
        let p2 = corpus::projective_plane();
        let phi = PiecewiseLinearMap::from_i64(&p2, 1, &[&[1], &[2], &[0]]).unwrap();
        let pair = twisted_pair(
            &CharacteristicPair::toric(&p2).unwrap(),
            &CharacteristicPair::toric(&p1).unwrap(),
            &phi,
        )
        .unwrap();
        let d = twisted_fan(&p2, &p1, &phi).unwrap();
        assert_eq!(pair.charmap(), d.twisted.rays());
        assert!(pair.is_toric());

        let zero = twisted_pair(
            &CharacteristicPair::toric(&p1).unwrap(),
            &CharacteristicPair::toric(&p1).unwrap(),
            &PiecewiseLinearMap::zero(&p1, 1),
        )
        .unwrap();
        assert_eq!(zero.complex(), &product_fan(&p1, &p1));
    }

    #[test]
    fn hirzebruch_pair_is_unimodular() {
        let p1 = corpus::projective_line();
        let std = CharacteristicPair::toric(&p1).unwrap();
        let phi = PiecewiseLinearMap::from_i64(&p1, 1, &[&[1], &[0]]).unwrap();
        let pair = twisted_pair(&std, &std, &phi).unwrap();
        for cone in pair.complex().max_cones() {
            assert!(determinant(&pair.charmap_matrix(cone)).unwrap().abs() == BigInt::from(1));
        }
    }

    #[test]
    fn singular_charmap_is_rejected() {
        let p1 = corpus::projective_line();
        let err = CharacteristicPair::new(p1, vec![IntVector::from_i64s(&[2]), IntVector::from_i64s(&[-1])]);
        assert!(matches!(err, Err(Error::Singular { face, .. }) if face == vec![0]));
    }
}
