//! Simplicial fans: construction, validation, products and walls.
//!
//! A [`Fan`] is stored by its primitive ray generators and its maximal cones
//! (sets of ray indices). Only simplicial, full-dimensional fans are admitted
//! downstream; [`validate`] decides the remaining properties exactly.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{determinant, is_primitive, IntMatrix, IntVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<IntVector>,
    max_cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Structural checks only: ray lengths and cone indices. Cones are stored
    /// with sorted indices.
    pub fn new(dim: usize, rays: Vec<IntVector>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        if let Some(i) = rays.iter().position(|r| r.len() != dim) {
            return Err(Error::InvalidFan(format!(
                "rays[{i}] has length {}, expected {dim}",
                rays[i].len()
            )));
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        for (c, cone) in max_cones.into_iter().enumerate() {
            if let Some(&bad) = cone.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::InvalidFan(format!(
                    "max_cones[{c}] references ray {bad}, but there are {} rays",
                    rays.len()
                )));
            }
            let mut cone = cone;
            cone.sort_unstable();
            cones.push(cone);
        }
        Ok(Fan { dim, rays, max_cones: cones })
    }

    pub fn from_i64(dim: usize, rays: &[&[i64]], max_cones: &[&[usize]]) -> Result<Fan> {
        Fan::new(
            dim,
            rays.iter().map(|r| IntVector::from_i64s(r)).collect(),
            max_cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    /// The fan of a point: dimension 0, no rays, one empty cone.
    pub fn point() -> Fan {
        Fan { dim: 0, rays: Vec::new(), max_cones: vec![Vec::new()] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &IntVector {
        &self.rays[i]
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// Index of a maximal cone given by its (unordered) ray set.
    pub fn max_cone_index(&self, cone: &[usize]) -> Option<usize> {
        let mut c = cone.to_vec();
        c.sort_unstable();
        self.max_cones.iter().position(|m| *m == c)
    }

    /// True iff `set` is contained in some maximal cone.
    pub fn is_face(&self, set: &[usize]) -> bool {
        self.max_cones.iter().any(|c| set.iter().all(|i| c.contains(i)))
    }

    /// Matrix whose columns are the generators of the given cone.
    pub fn cone_matrix(&self, cone: &[usize]) -> IntMatrix {
        let cols: Vec<IntVector> = cone.iter().map(|&i| self.rays[i].clone()).collect();
        IntMatrix::from_columns(self.dim, &cols).expect("rays have fan dimension")
    }

    /// Every face (subset of a maximal cone), grouped by size.
    pub fn faces_by_size(&self) -> Vec<BTreeSet<Vec<usize>>> {
        let mut out = vec![BTreeSet::new(); self.dim + 1];
        for cone in &self.max_cones {
            let k = cone.len();
            for mask in 0u64..(1u64 << k) {
                let face: Vec<usize> =
                    (0..k).filter(|b| mask & (1 << b) != 0).map(|b| cone[b]).collect();
                if face.len() < out.len() {
                    out[face.len()].insert(face);
                }
            }
        }
        out
    }

    /// The same fan with every ray (and so the lattice) transformed by `g`.
    pub fn transform(&self, g: &IntMatrix) -> Result<Fan> {
        let rays = self.rays.iter().map(|r| g.mul_vec(r)).collect::<Result<Vec<_>>>()?;
        Fan::new(self.dim, rays, self.max_cones.clone())
    }

    /// Validates and requires the smooth and complete flags.
    pub fn require_smooth_complete(&self) -> Result<ValidationReport> {
        let report = validate(self);
        if !(report.well_formed && report.smooth && report.complete) {
            let why = report.diagnostics.first().cloned().unwrap_or_default();
            return Err(Error::NotSmoothComplete(why));
        }
        Ok(report)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub simplicial: bool,
    pub smooth: bool,
    pub complete: bool,
    pub well_formed: bool,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Wall {
    /// Ray indices of the codimension-one face, sorted.
    pub rays: Vec<usize>,
    /// Indices of the maximal cones containing the wall.
    pub cones: Vec<usize>,
}

/// Codimension-one faces of the maximal cones, each with the maximal cones
/// that contain it. Sorted by ray set.
pub fn walls(f: &Fan) -> Vec<Wall> {
    let mut map: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (ci, cone) in f.max_cones.iter().enumerate() {
        for skip in 0..cone.len() {
            let wall: Vec<usize> =
                cone.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &r)| r).collect();
            let entry = map.entry(wall).or_default();
            if !entry.contains(&ci) {
                entry.push(ci);
            }
        }
    }
    map.into_iter().map(|(rays, cones)| Wall { rays, cones }).collect()
}

pub fn validate(f: &Fan) -> ValidationReport {
    let mut diagnostics = Vec::new();
    let n = f.dim;

    let mut rays_ok = true;
    for (i, r) in f.rays.iter().enumerate() {
        if !is_primitive(r) {
            rays_ok = false;
            diagnostics.push(format!("ray {i} {r} is not primitive"));
        }
    }
    let mut seen: BTreeMap<&IntVector, usize> = BTreeMap::new();
    for (i, r) in f.rays.iter().enumerate() {
        if let Some(j) = seen.insert(r, i) {
            rays_ok = false;
            diagnostics.push(format!("rays {j} and {i} coincide"));
        }
    }

    let mut simplicial = !f.max_cones.is_empty();
    if f.max_cones.is_empty() {
        diagnostics.push("fan has no maximal cones".into());
    }
    let mut dets: Vec<Option<BigInt>> = Vec::with_capacity(f.max_cones.len());
    for (ci, cone) in f.max_cones.iter().enumerate() {
        let distinct = cone.windows(2).all(|w| w[0] != w[1]);
        if cone.len() != n || !distinct {
            simplicial = false;
            diagnostics.push(format!(
                "cone {ci} {cone:?} does not have {n} distinct rays (not simplicial full-dimensional)"
            ));
            dets.push(None);
            continue;
        }
        let d = determinant(&f.cone_matrix(cone)).expect("square by construction");
        if d.is_zero() {
            simplicial = false;
            diagnostics.push(format!("cone {ci} {cone:?} has linearly dependent rays"));
            dets.push(None);
        } else {
            dets.push(Some(d));
        }
    }

    let mut smooth = simplicial;
    if simplicial {
        for (ci, d) in dets.iter().enumerate() {
            let d = d.as_ref().expect("simplicial");
            if !d.abs().is_one() {
                smooth = false;
                diagnostics.push(format!(
                    "cone {ci} {:?} is not smooth (determinant {d})",
                    f.max_cones[ci]
                ));
                break;
            }
        }
    }

    let mut complete = !f.max_cones.is_empty();
    if complete {
        for w in walls(f) {
            if w.cones.len() != 2 {
                complete = false;
                diagnostics.push(format!(
                    "wall {:?} lies in {} maximal cone(s), expected 2",
                    w.rays,
                    w.cones.len()
                ));
                break;
            }
        }
    }
    if complete && !adjacency_connected(f) {
        complete = false;
        diagnostics.push("maximal-cone adjacency graph is disconnected".into());
    }

    let mut meets_in_faces = true;
    let mut distinct_cones = true;
    if simplicial {
        'pairs: for a in 0..f.max_cones.len() {
            for b in a + 1..f.max_cones.len() {
                if f.max_cones[a] == f.max_cones[b] {
                    distinct_cones = false;
                    diagnostics.push(format!("maximal cones {a} and {b} coincide"));
                    break 'pairs;
                }
                if !cones_meet_in_face(f, a, dets[a].as_ref().expect("simplicial"), b) {
                    meets_in_faces = false;
                    diagnostics.push(format!(
                        "maximal cones {a} {:?} and {b} {:?} overlap beyond their common face",
                        f.max_cones[a], f.max_cones[b]
                    ));
                    break 'pairs;
                }
            }
        }
    }

    let well_formed = simplicial && rays_ok && distinct_cones && meets_in_faces;
    ValidationReport { simplicial, smooth, complete, well_formed, diagnostics }
}

fn adjacency_connected(f: &Fan) -> bool {
    let k = f.max_cones.len();
    let mut adj = vec![Vec::new(); k];
    for w in walls(f) {
        for &a in &w.cones {
            for &b in &w.cones {
                if a != b {
                    adj[a].push(b);
                }
            }
        }
    }
    let mut seen = vec![false; k];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(c) = queue.pop_front() {
        for &d in &adj[c] {
            if !seen[d] {
                seen[d] = true;
                queue.push_back(d);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Whether the cones `a` and `b` intersect exactly in the cone spanned by
/// their common rays.
///
/// A bad point is `p = T b` with `b >= 0` (so `p` in cone `b`) whose
/// coordinates in the basis of cone `a` are nonnegative and not all zero off
/// the common rays. Those coordinates are `adj(A) T b / det(A)`; feasibility
/// of the resulting system is decided by Fourier-Motzkin elimination.
fn cones_meet_in_face(f: &Fan, a: usize, det_a: &BigInt, b: usize) -> bool {
    let n = f.dim;
    let ca = &f.max_cones[a];
    let cb = &f.max_cones[b];
    let adj = adjugate(&f.cone_matrix(ca));
    let t = f.cone_matrix(cb);
    let mut coords = adj.mul(&t).expect("square");
    if det_a.is_negative() {
        coords = IntMatrix::from_rows(
            n,
            coords.rows().iter().map(IntVector::neg).collect(),
        )
        .expect("same shape");
    }

    let mut system: Vec<Inequality> = Vec::new();
    for j in 0..n {
        system.push(Inequality { coeffs: IntVector::unit(n, j).into_entries(), bound: BigInt::zero() });
    }
    for i in 0..n {
        system.push(Inequality { coeffs: coords.row(i).entries().to_vec(), bound: BigInt::zero() });
    }
    let mut outside = vec![BigInt::zero(); n];
    for (i, r) in ca.iter().enumerate() {
        if !cb.contains(r) {
            for (o, c) in outside.iter_mut().zip(coords.row(i).entries()) {
                *o += c;
            }
        }
    }
    system.push(Inequality { coeffs: outside, bound: BigInt::one() });
    !fourier_motzkin_feasible(system, n)
}

/// Adjugate matrix, so that `adj(m) * m = det(m) * I`.
fn adjugate(m: &IntMatrix) -> IntMatrix {
    let n = m.nrows();
    if n == 1 {
        return IntMatrix::identity(1);
    }
    let mut rows = vec![IntVector::zero(n); n];
    let mut out: Vec<Vec<BigInt>> = rows.drain(..).map(IntVector::into_entries).collect();
    for i in 0..n {
        for j in 0..n {
            let minor_rows: Vec<IntVector> = (0..n)
                .filter(|&r| r != i)
                .map(|r| {
                    IntVector::new(
                        (0..n).filter(|&c| c != j).map(|c| m.get(r, c).clone()).collect(),
                    )
                })
                .collect();
            let minor = IntMatrix::from_rows(n - 1, minor_rows).expect("square minor");
            let d = determinant(&minor).expect("square");
            let sign = if (i + j) % 2 == 0 { d } else { -d };
            // adj = transpose of the cofactor matrix
            out[j][i] = sign;
        }
    }
    IntMatrix::from_rows(n, out.into_iter().map(IntVector::new).collect()).expect("square")
}

/// `coeffs . x >= bound` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Inequality {
    coeffs: Vec<BigInt>,
    bound: BigInt,
}

impl Inequality {
    fn normalized(mut self) -> Inequality {
        let g = self.coeffs.iter().fold(self.bound.clone(), |g, c| g.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for c in self.coeffs.iter_mut() {
                *c = &*c / &g;
            }
            self.bound = &self.bound / &g;
        }
        self
    }
}

fn fourier_motzkin_feasible(mut system: Vec<Inequality>, nvars: usize) -> bool {
    for k in 0..nvars {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for ineq in system {
            if ineq.coeffs[k].is_positive() {
                pos.push(ineq);
            } else if ineq.coeffs[k].is_negative() {
                neg.push(ineq);
            } else {
                rest.push(ineq);
            }
        }
        for p in &pos {
            for q in &neg {
                let lp = -&q.coeffs[k];
                let lq = p.coeffs[k].clone();
                let coeffs = p
                    .coeffs
                    .iter()
                    .zip(&q.coeffs)
                    .map(|(a, b)| &lp * a + &lq * b)
                    .collect();
                let bound = &lp * &p.bound + &lq * &q.bound;
                rest.push(Inequality { coeffs, bound }.normalized());
            }
        }
        rest.sort();
        rest.dedup();
        system = rest;
    }
    system.iter().all(|ineq| !ineq.bound.is_positive())
}

/// Product fan in the direct sum lattice: rays of `f` (padded) then rays of
/// `g`; maximal cones are all unions.
pub fn product_fan(f: &Fan, g: &Fan) -> Fan {
    let zf = IntVector::zero(f.dim);
    let zg = IntVector::zero(g.dim);
    let mut rays: Vec<IntVector> = f.rays.iter().map(|r| r.concat(&zg)).collect();
    rays.extend(g.rays.iter().map(|r| zf.concat(r)));
    let off = f.ray_count();
    let mut cones = Vec::with_capacity(f.max_cones.len() * g.max_cones.len());
    for s in &f.max_cones {
        for t in &g.max_cones {
            let mut c = s.clone();
            c.extend(t.iter().map(|i| i + off));
            cones.push(c);
        }
    }
    Fan::new(f.dim + g.dim, rays, cones).expect("product of valid fans")
}
