//! Toric bundles over a base given by a ring presentation.
//!
//! The bundle ring adjoins one degree-2 generator `y_r` per fiber ray to the
//! base ring and imposes the fiber Stanley-Reisner monomials together with
//! `sum_r <m, v_r> y_r + lambda(m) = 0` for every dual basis element `m`.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::chern::{total_chern_intrinsic, PullbackMap};
use crate::cohomology::{build_ring, h_vector, linear_relations, minimal_nonfaces, CohomologyClass, GradedQuotientRing};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{determinant, IntMatrix, IntVector};
use crate::poly::Poly;
use crate::twist::{principal_classes, PiecewiseLinearMap};

/// User-facing description of the cohomology of a base space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePresentation {
    pub name: String,
    pub generators: Vec<(String, usize)>,
    /// Polynomials that vanish in the ring (homogeneous).
    pub relations: Vec<Poly>,
    /// Basis per even degree `0, 2, .., 2m`.
    pub basis: Vec<Vec<Poly>>,
    /// Integrals of the top-degree basis elements (a single value).
    pub integration: Vec<BigInt>,
    /// Total Chern class as coefficients over `basis`, per degree.
    pub total_chern: Vec<Vec<BigInt>>,
}

impl BasePresentation {
    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.0.clone()).collect()
    }

    pub fn top_degree(&self) -> usize {
        2 * self.basis.len().saturating_sub(1)
    }

    /// The presentation of `H*(X_f)` for a smooth complete fan.
    pub fn from_toric(name: &str, f: &Fan) -> Result<Self> {
        let r = build_ring(f)?;
        let k = r.generator_count();
        let mut relations: Vec<Poly> = minimal_nonfaces(f)
            .iter()
            .map(|s| {
                let mut e = vec![0u32; k];
                for &i in s {
                    e[i] = 1;
                }
                Poly::monomial(e, BigInt::one())
            })
            .collect();
        relations.extend(linear_relations(f).iter().map(|l| Poly::linear(l.entries())));
        let basis: Vec<Vec<Poly>> = (0..=f.dim())
            .map(|d| r.basis_monomials(2 * d).into_iter().map(|e| Poly::monomial(e, BigInt::one())).collect())
            .collect();
        let top = &basis[f.dim()][0];
        let integration = vec![r.integrate(&r.reduce(top))?];
        let total_chern = total_chern_intrinsic(&r).components().to_vec();
        Ok(BasePresentation {
            name: name.to_string(),
            generators: r.names().iter().map(|n| (n.clone(), 2)).collect(),
            relations,
            basis,
            integration,
            total_chern,
        })
    }

    /// Builds the ring and runs the consistency checks.
    pub fn build(&self) -> Result<PresentedBase> {
        let bad = |m: String| Error::InvalidPresentation(format!("{}: {m}", self.name));
        let names = self.names();
        if self.basis.is_empty() {
            return Err(bad("basis list is empty".into()));
        }
        let top = self.top_degree();
        let degrees: Vec<usize> = self.generators.iter().map(|g| g.1).collect();
        let mut ring = GradedQuotientRing::new(names.clone(), degrees.clone(), vec![], self.relations.clone(), top)
            .map_err(|e| bad(e.to_string()))?;
        // Nothing may survive above the top degree; checking one generator
        // degree past it is enough, since higher monomials factor through it.
        let reach = top + degrees.iter().copied().max().unwrap_or(0);
        let above = GradedQuotientRing::new(names.clone(), degrees.clone(), vec![], self.relations.clone(), reach)
            .map_err(|e| bad(e.to_string()))?;
        if let Some(d) = (top + 2..=reach).step_by(2).find(|&d| above.rank(d) != 0) {
            return Err(bad(format!("relations leave classes in degree {d}, above the top degree {top}")));
        }
        let weights: Vec<usize> = degrees.iter().map(|d| d / 2).collect();
        for (k, polys) in self.basis.iter().enumerate() {
            if ring.rank(2 * k) != polys.len() {
                return Err(bad(format!(
                    "degree {} has rank {} but {} basis elements were given",
                    2 * k,
                    ring.rank(2 * k),
                    polys.len()
                )));
            }
            for p in polys {
                if !p.is_zero() && p.homogeneous_weight(&weights) != Some(k) {
                    return Err(bad(format!("basis element {} is not of degree {}", p.display_with(&names), 2 * k)));
                }
            }
            if !polys.is_empty() {
                let m = self.change_of_basis(&ring, k);
                let det = determinant(&m)?;
                if !det.abs().is_one() {
                    return Err(bad(format!("degree {} basis is not a Z-basis (det {det})", 2 * k)));
                }
            }
        }
        if self.basis[0].len() != 1 || ring.reduce(&self.basis[0][0]) != ring.one() {
            return Err(bad("the degree 0 basis must be the unit".into()));
        }
        if self.basis[top / 2].len() != 1 {
            return Err(bad("top degree must have rank 1".into()));
        }
        if self.integration.len() != 1 {
            return Err(bad(format!("expected one integration value, got {}", self.integration.len())));
        }
        let point = ring.reduce(&self.basis[top / 2][0]);
        ring.set_orientation(&point, self.integration[0].clone()).map_err(|e| bad(e.to_string()))?;
        if self.total_chern.len() != self.basis.len()
            || self.total_chern.iter().zip(&self.basis).any(|(c, b)| c.len() != b.len())
        {
            return Err(bad("total Chern class shape does not match the basis".into()));
        }
        let total_chern = ring.reduce(&self.total_chern_poly());
        if total_chern.component(0) != ring.one().component(0) {
            return Err(bad("total Chern class must start with 1".into()));
        }
        Ok(PresentedBase { presentation: self.clone(), ring, total_chern })
    }

    /// Matrix whose rows are the reduced user basis elements of weight `k`.
    fn change_of_basis(&self, ring: &GradedQuotientRing, k: usize) -> IntMatrix {
        let rows: Vec<IntVector> =
            self.basis[k].iter().map(|p| IntVector::new(ring.reduce(p).component(2 * k).to_vec())).collect();
        IntMatrix::from_rows(self.basis[k].len(), rows).expect("square")
    }

    pub fn total_chern_poly(&self) -> Poly {
        let mut out = Poly::zero(self.generators.len());
        for (coeffs, polys) in self.total_chern.iter().zip(&self.basis) {
            for (c, p) in coeffs.iter().zip(polys) {
                out = &out + &p.scale(c);
            }
        }
        out
    }
}

/// A validated presentation with its ring and total Chern class.
#[derive(Clone, Debug)]
pub struct PresentedBase {
    pub presentation: BasePresentation,
    pub ring: GradedQuotientRing,
    pub total_chern: CohomologyClass,
}

impl PresentedBase {
    pub fn dim(&self) -> usize {
        self.ring.top_degree() / 2
    }
}

/// `lambda_i` in `H^2(B)`, one per fiber-lattice coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistingClasses {
    pub classes: Vec<Poly>,
}

impl TwistingClasses {
    pub fn new(base: &PresentedBase, classes: Vec<Poly>) -> Result<Self> {
        let weights: Vec<usize> = base.ring.generator_degrees().iter().map(|d| d / 2).collect();
        for (i, c) in classes.iter().enumerate() {
            if c.nvars() != base.ring.generator_count() {
                return Err(Error::DimensionMismatch(format!("twisting class {i} has the wrong arity")));
            }
            if !c.is_zero() && c.homogeneous_weight(&weights) != Some(1) {
                return Err(Error::DegreeMismatch(format!("twisting class {i} is not of degree 2")));
            }
        }
        Ok(TwistingClasses { classes })
    }

    /// `lambda_i = sum_s phi(v_s)_i [D_s]` over a toric base whose generators
    /// are its ray divisors.
    pub fn from_principal(base: &PresentedBase, phi: &PiecewiseLinearMap) -> Result<Self> {
        if phi.base_ray_count() != base.ring.generator_count() {
            return Err(Error::InvalidMap("map and base presentation disagree on the rays".into()));
        }
        Self::new(base, principal_classes(phi).iter().map(|c| Poly::linear(c.entries())).collect())
    }

    pub fn parse(base: &PresentedBase, classes: &[String]) -> Result<Self> {
        let polys = classes
            .iter()
            .map(|s| Poly::parse(s, base.ring.names()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, polys)
    }

    pub fn rank(&self) -> usize {
        self.classes.len()
    }
}

/// The cohomology ring of the bundle together with its bookkeeping.
#[derive(Clone, Debug)]
pub struct BundleRing {
    pub ring: GradedQuotientRing,
    pub base_generators: usize,
    /// Generator index of each fiber ray.
    pub fiber_ray_of: Vec<usize>,
    pub fiber: Fan,
}

impl BundleRing {
    /// Lift of a base polynomial to the bundle ring's variables.
    pub fn lift(&self, p: &Poly) -> Poly {
        let map: Vec<usize> = (0..self.base_generators).collect();
        p.rename(&map, self.ring.generator_count())
    }
}

pub fn build_bundle_ring(base: &PresentedBase, lam: &TwistingClasses, fiber: &Fan) -> Result<BundleRing> {
    fiber.require_smooth_complete()?;
    let n = fiber.dim();
    if lam.rank() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} twisting classes for a fiber lattice of rank {n}",
            lam.rank()
        )));
    }
    let kb = base.ring.generator_count();
    let kf = fiber.ray_count();
    let total = kb + kf;
    let mut names: Vec<String> = base.ring.names().to_vec();
    for j in 0..kf {
        let name = format!("y{j}");
        if names.contains(&name) {
            return Err(Error::InvalidPresentation(format!("base generator name {name} is reserved for fiber rays")));
        }
        names.push(name);
    }
    let mut degrees = base.ring.generator_degrees();
    degrees.extend(std::iter::repeat_n(2, kf));
    let fiber_ray_of: Vec<usize> = (kb..total).collect();
    let base_map: Vec<usize> = (0..kb).collect();

    let killed: Vec<Vec<u32>> = minimal_nonfaces(fiber)
        .iter()
        .map(|s| {
            let mut e = vec![0u32; total];
            for &i in s {
                e[fiber_ray_of[i]] = 1;
            }
            e
        })
        .collect();
    let mut relations: Vec<Poly> = base.ring.relations().iter().map(|r| r.rename(&base_map, total)).collect();
    for m in base.ring.killed_monomials() {
        relations.push(Poly::monomial(m.clone(), BigInt::one()).rename(&base_map, total));
    }
    for (i, lin) in linear_relations(fiber).iter().enumerate() {
        let mut rel = lam.classes[i].rename(&base_map, total);
        for (j, c) in lin.entries().iter().enumerate() {
            let mut e = vec![0u32; total];
            e[fiber_ray_of[j]] = 1;
            rel.add_term(e, c.clone());
        }
        relations.push(rel);
    }
    let top = base.ring.top_degree() + 2 * n;
    let mut ring = GradedQuotientRing::new(names, degrees, killed, relations, top)?;

    let bundle = BundleRing { ring: ring.clone(), base_generators: kb, fiber_ray_of, fiber: fiber.clone() };
    check_leray_hirsch(base, &bundle)?;

    // Orientation: base top basis element times a fiber maximal-cone monomial.
    let pres = &base.presentation;
    let base_top = bundle.lift(&pres.basis[pres.basis.len() - 1][0]);
    let point_of = |cone: &[usize]| {
        let mut e = vec![0u32; total];
        for &i in cone {
            e[bundle.fiber_ray_of[i]] += 1;
        }
        ring.reduce(&(&base_top * &Poly::monomial(e, BigInt::one())))
    };
    let point = point_of(&fiber.max_cones()[0]);
    for cone in &fiber.max_cones()[1..] {
        if point_of(cone) != point {
            return Err(Error::Inconsistent(format!(
                "fiber cone {cone:?} gives a different fundamental class"
            )));
        }
    }
    ring.set_orientation(&point, pres.integration[0].clone())?;
    Ok(BundleRing { ring, ..bundle })
}

/// Ranks of a free base module with fiber basis counted by the fiber h-vector.
fn check_leray_hirsch(base: &PresentedBase, bundle: &BundleRing) -> Result<()> {
    let h = h_vector(&bundle.fiber);
    let top = bundle.ring.top_degree() / 2;
    for d in 0..=top {
        let expected: i64 = (0..=d)
            .filter(|&j| j < h.len())
            .map(|j| h[j] * base.ring.rank(2 * (d - j)) as i64)
            .sum();
        let got = bundle.ring.rank(2 * d) as i64;
        if got != expected {
            return Err(Error::Inconsistent(format!(
                "degree {} of the bundle ring has rank {got}, a free module over the base needs {expected}",
                2 * d
            )));
        }
    }
    Ok(())
}

/// `c(TB) * prod (1 + y_r)` in the bundle ring.
pub fn total_chern_general(bundle: &BundleRing, base: &PresentedBase) -> Result<CohomologyClass> {
    let r = &bundle.ring;
    let cb = r.reduce(&bundle.lift(&base.ring.to_poly(&base.total_chern)));
    let vertical = r.total_product(bundle.fiber_ray_of.iter().copied())?;
    r.multiply(&cb, &vertical)
}

/// Integral of a top-degree class over the total space.
pub fn integrate_bundle(bundle: &BundleRing, c: &CohomologyClass) -> Result<BigInt> {
    bundle.ring.integrate(c)
}

/// Restriction to a fiber: base classes of positive degree go to zero.
pub fn restrict_to_fiber(bundle: &BundleRing, fiber_ring: &GradedQuotientRing, c: &CohomologyClass) -> Result<CohomologyClass> {
    let kf = fiber_ring.generator_count();
    let mut images = vec![Poly::zero(kf); bundle.base_generators];
    images.extend((0..kf).map(|j| Poly::var(kf, j)));
    PullbackMap::new(&bundle.ring, fiber_ring, images)?.apply(c)
}
