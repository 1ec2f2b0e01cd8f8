//! The acceptance checks run by `toric-chern corpus`.
//!
//! Each check returns one [`CheckResult`]; tolerances are exact integer
//! equality throughout, and the compare check also has a wall-clock budget.

use std::time::{Duration, Instant};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use toric_chern::bundle::{build_bundle_ring, total_chern_general, BasePresentation, TwistingClasses};
use toric_chern::chern::{chern_number, chern_numbers, compare, total_chern_intrinsic, verify_gauss_bonnet, ChernNumber};
use toric_chern::cohomology::{betti, build_ring, h_vector};
use toric_chern::corpus::{self, FiberedInstance};
use toric_chern::equivariant::{equivariant_total_chern, face_ring, forget, masuda_check, ordinary_ring};
use toric_chern::lattice::random_unimodular;
use toric_chern::{io, BigInt, FiberedToric, Result};

use crate::{cmd_compare, Format};

/// Wall-clock budget for the whole compare run.
pub const COMPARE_BUDGET: Duration = Duration::from_secs(10);
/// Random fiber coordinate changes per fibered instance.
pub const INVARIANCE_TRIALS: usize = 10;
/// Elementary operations per random unimodular matrix.
pub const UNIMODULAR_STEPS: usize = 8;
pub const INVARIANCE_SEED: u64 = 0x7011c;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: u32,
    pub title: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(id: u32, title: &str, failures: Vec<String>, summary: String) -> Self {
        let pass = failures.is_empty();
        let detail = if pass { summary } else { failures.join("; ") };
        CheckResult { id, title: title.to_string(), pass, detail }
    }

    pub fn line(&self) -> String {
        format!("[{}] {}. {}: {}", if self.pass { "PASS" } else { "FAIL" }, self.id, self.title, self.detail)
    }
}

pub fn run_all() -> Vec<CheckResult> {
    vec![
        compare_corpus(),
        reference_chern_numbers(),
        gauss_bonnet(),
        ring_sanity(),
        masuda(),
        cross_mode(),
        isomorphism_invariance(),
    ]
}

/// Runs `compare` through the command layer on serialized inputs.
pub fn compare_corpus() -> CheckResult {
    let start = Instant::now();
    let instances = corpus::fibered_instances();
    let mut failures = Vec::new();
    for inst in &instances {
        let out = cmd_compare(
            &io::fan_to_json(&inst.base),
            &io::fan_to_json(&inst.fiber),
            &io::phi_to_json(&inst.phi),
            Format::Machine,
        );
        let verdict = serde_json::from_str::<Value>(&out.text).ok().and_then(|v| v["equal"].as_bool());
        if out.code != 0 || verdict != Some(true) {
            failures.push(format!("{}: exit {}, equal={:?}", inst.name, out.code, verdict));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= COMPARE_BUDGET {
        failures.push(format!("took {elapsed:?}, budget {COMPARE_BUDGET:?}"));
    }
    CheckResult::new(
        1,
        "bundle formula equals intrinsic total Chern class",
        failures,
        format!("{} instances equal in every degree, {:.2?}", instances.len(), elapsed),
    )
}

fn numbers_of(f: &toric_chern::Fan) -> Result<Vec<ChernNumber>> {
    let r = build_ring(f)?;
    chern_numbers(&r, &total_chern_intrinsic(&r))
}

/// A named fan with expected `(label, value)` Chern numbers.
pub type Reference = (String, toric_chern::Fan, Vec<(&'static str, i64)>);

pub fn reference_values() -> Vec<Reference> {
    let mut out = vec![
        ("P2".to_string(), corpus::projective_plane(), vec![("c1^2", 9), ("c2", 3)]),
        ("(P1)^3".to_string(), corpus::p1_cubed(), vec![("c1^3", 48), ("c1*c2", 24), ("c3", 8)]),
        ("hexagon".to_string(), corpus::hexagon(), vec![("c1^2", 6), ("c2", 6)]),
    ];
    for a in 0..4 {
        out.push((format!("F{a}"), corpus::hirzebruch(a), vec![("c1^2", 8), ("c2", 4)]));
    }
    out
}

pub fn reference_chern_numbers() -> CheckResult {
    let refs = reference_values();
    let mut failures = Vec::new();
    for (name, f, expected) in &refs {
        match numbers_of(f) {
            Ok(nums) => {
                for (label, want) in expected {
                    let got = chern_number(&nums, label);
                    if got != Some(&BigInt::from(*want)) {
                        failures.push(format!("{name}: {label} = {got:?}, expected {want}"));
                    }
                }
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    CheckResult::new(2, "reference Chern numbers", failures, format!("{} fans match", refs.len()))
}

pub fn gauss_bonnet() -> CheckResult {
    let fans = corpus::smooth_complete_fans();
    let mut failures = Vec::new();
    for (name, f) in &fans {
        match verify_gauss_bonnet(f) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("{name}: integral of c_top differs from the cone count")),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    CheckResult::new(3, "Gauss-Bonnet", failures, format!("{} fans", fans.len()))
}

pub fn ring_sanity() -> CheckResult {
    let fans = corpus::smooth_complete_fans();
    let mut failures = Vec::new();
    for (name, f) in &fans {
        let r = match build_ring(f) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("{name}: {e}"));
                continue;
            }
        };
        let b = betti(&r);
        let h = h_vector(f);
        if !b.iter().map(|&x| x as i64).eq(h.iter().copied()) {
            failures.push(format!("{name}: betti {b:?} vs h {h:?}"));
        }
        if !b.iter().eq(b.iter().rev()) {
            failures.push(format!("{name}: betti {b:?} not symmetric"));
        }
        if f.dim() > 0 && b[1] != f.ray_count() - f.dim() {
            failures.push(format!("{name}: degree-2 rank {} vs {}", b[1], f.ray_count() - f.dim()));
        }
    }
    CheckResult::new(4, "ring ranks", failures, format!("{} fans", fans.len()))
}

pub fn masuda() -> CheckResult {
    let pairs = corpus::characteristic_pairs();
    let mut failures = Vec::new();
    let mut fixed_points = 0;
    for (name, p) in &pairs {
        let mut run = || -> Result<Vec<String>> {
            let bound = 2 * p.rank();
            let mut bad = Vec::new();
            let report = masuda_check(p, bound)?;
            fixed_points += report.fixed_points.len();
            for cone in &report.failures {
                bad.push(format!("{name}: fixed point {cone:?}"));
            }
            let face = face_ring(p, bound)?;
            let ord = ordinary_ring(p)?;
            let forgotten = forget(&face, &ord, &equivariant_total_chern(&face))?;
            if forgotten != total_chern_intrinsic(&ord) {
                bad.push(format!("{name}: forget differs from the ordinary class"));
            }
            if p.is_toric() {
                let r = build_ring(p.complex())?;
                if r.reduce(&ord.to_poly(&forgotten)) != total_chern_intrinsic(&r) {
                    bad.push(format!("{name}: forget differs from the fan ring class"));
                }
            }
            Ok(bad)
        };
        match run() {
            Ok(bad) => failures.extend(bad),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    CheckResult::new(
        5,
        "equivariant restriction at fixed points",
        failures,
        format!("{} pairs, {} fixed points", pairs.len(), fixed_points),
    )
}

fn bundle_route(inst: &FiberedInstance) -> Result<Vec<ChernNumber>> {
    let base = BasePresentation::from_toric(&inst.name, &inst.base)?.build()?;
    let lam = TwistingClasses::from_principal(&base, &inst.phi)?;
    let b = build_bundle_ring(&base, &lam, &inst.fiber)?;
    chern_numbers(&b.ring, &total_chern_general(&b, &base)?)
}

pub fn cross_mode() -> CheckResult {
    let instances = corpus::fibered_instances();
    let mut failures = Vec::new();
    for inst in &instances {
        let direct = inst.decompose().and_then(|d| numbers_of(&d.twisted));
        match (direct, bundle_route(inst)) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(_), Ok(_)) => failures.push(format!("{}: Chern numbers differ", inst.name)),
            (Err(e), _) | (_, Err(e)) => failures.push(format!("{}: {e}", inst.name)),
        }
    }
    CheckResult::new(
        6,
        "presented-base route matches twisted fan",
        failures,
        format!("{} instances", instances.len()),
    )
}

pub fn isomorphism_invariance() -> CheckResult {
    let instances = corpus::fibered_instances();
    let mut rng = ChaCha8Rng::seed_from_u64(INVARIANCE_SEED);
    let mut failures = Vec::new();
    for inst in &instances {
        let reference = match FiberedToric::new(&inst.base, &inst.fiber, &inst.phi).and_then(|ft| compare(&ft)) {
            Ok(r) => r.intrinsic_numbers,
            Err(e) => {
                failures.push(format!("{}: {e}", inst.name));
                continue;
            }
        };
        for trial in 0..INVARIANCE_TRIALS {
            let g = random_unimodular(&mut rng, inst.fiber.dim(), UNIMODULAR_STEPS);
            let run = || -> Result<Vec<ChernNumber>> {
                let fiber = inst.fiber.transform(&g)?;
                let phi = inst.phi.transform(&g)?;
                let ft = FiberedToric::new(&inst.base, &fiber, &phi)?;
                Ok(compare(&ft)?.intrinsic_numbers)
            };
            match run() {
                Ok(n) if n == reference => {}
                Ok(_) => failures.push(format!("{} trial {trial}: numbers changed", inst.name)),
                Err(e) => failures.push(format!("{} trial {trial}: {e}", inst.name)),
            }
        }
    }
    CheckResult::new(
        7,
        "fiber coordinate changes preserve Chern numbers",
        failures,
        format!("{} instances x {} trials", instances.len(), INVARIANCE_TRIALS),
    )
}
