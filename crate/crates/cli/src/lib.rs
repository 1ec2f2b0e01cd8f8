//! Command implementations behind the `toric-chern` binary.
//!
//! Every command takes file contents (not paths) and returns the text to
//! print together with the process exit code: 0 on success, 1 when an input
//! fails to parse or validate, 2 when a mathematical consistency check fails.

pub mod checks;

use serde::Serialize;
use serde_json::{json, Value};

use toric_chern::bundle::{build_bundle_ring, integrate_bundle, total_chern_general, TwistingClasses};
use toric_chern::chern::{chern_numbers, compare, euler_characteristic, total_chern_intrinsic, ChernNumber};
use toric_chern::cohomology::{betti, build_ring, h_vector, CohomologyClass, GradedQuotientRing};
use toric_chern::equivariant::{equivariant_total_chern, face_ring, forget, gkm_consistent, masuda_check, ordinary_ring};
use toric_chern::io::{self, JsonInt};
use toric_chern::{validate, Error, FiberedToric};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

/// Exit code for a library error.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Inconsistent(_)
        | Error::NoMonomialBasis { .. }
        | Error::Torsion { .. }
        | Error::RingMismatch
        | Error::NoOrientation => 2,
        _ => 1,
    }
}

fn failure(e: Error, format: Format) -> Outcome {
    let code = error_code(&e);
    let text = match format {
        Format::Human => format!("error: {e}\n"),
        Format::Machine => {
            let v = json!({"schema_version": 1, "error": e.to_string(), "exit_code": code});
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
    };
    Outcome { text, code }
}

fn machine(command: &str, body: impl Serialize) -> String {
    let mut v = serde_json::to_value(body).expect("serializable report");
    if let Value::Object(m) = &mut v {
        m.insert("command".into(), json!(command));
        m.entry("schema_version").or_insert(json!(1));
    }
    format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
}

fn ints(v: &[toric_chern::BigInt]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

#[derive(Serialize)]
struct ClassReport {
    /// Basis labels per degree `0, 2, ..`.
    basis: Vec<Vec<String>>,
    coefficients: Vec<Vec<JsonInt>>,
    polynomial: String,
}

fn class_report(r: &GradedQuotientRing, c: &CohomologyClass) -> ClassReport {
    ClassReport {
        basis: (0..=r.top_degree() / 2).map(|k| r.basis_labels(2 * k)).collect(),
        coefficients: c.components().iter().map(|v| ints(v)).collect(),
        polynomial: r.format_class(c),
    }
}

fn join(v: &[toric_chern::BigInt]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn human_numbers(out: &mut String, title: &str, numbers: &[ChernNumber]) {
    out.push_str(&format!("{title}:"));
    for c in numbers {
        out.push_str(&format!(" {}={}", c.label, c.value));
    }
    out.push('\n');
}

pub fn cmd_validate(fan_src: &str, format: Format) -> Outcome {
    let fan = match io::parse_fan(fan_src) {
        Ok(f) => f,
        Err(e) => return failure(e, format),
    };
    let report = validate(&fan);
    let good = report.simplicial && report.smooth && report.complete && report.well_formed;
    let text = match format {
        Format::Machine => machine("validate", &report),
        Format::Human => {
            let mut s = format!(
                "dim: {}\nrays: {}\nmaximal cones: {}\nsimplicial: {}\nsmooth: {}\ncomplete: {}\nwell_formed: {}\n",
                fan.dim(),
                fan.ray_count(),
                fan.max_cones().len(),
                report.simplicial,
                report.smooth,
                report.complete,
                report.well_formed
            );
            for d in &report.diagnostics {
                s.push_str(&format!("  - {d}\n"));
            }
            s
        }
    };
    Outcome { text, code: if good { 0 } else { 1 } }
}

fn parse_twist_inputs(base: &str, fiber: &str, phi: &str) -> toric_chern::Result<FiberedToric> {
    let base = io::parse_fan(base)?;
    let fiber = io::parse_fan(fiber)?;
    let phi = io::parse_phi(phi, &base, fiber.dim())?;
    FiberedToric::new(&base, &fiber, &phi)
}

/// Writes the twisted fan as a fan file.
pub fn cmd_twist(base: &str, fiber: &str, phi: &str, format: Format) -> Outcome {
    let inputs = (|| {
        let b = io::parse_fan(base)?;
        let f = io::parse_fan(fiber)?;
        let p = io::parse_phi(phi, &b, f.dim())?;
        toric_chern::twisted_fan(&b, &f, &p)
    })();
    match inputs {
        Ok(d) => {
            let fan_json = io::fan_to_json(&d.twisted);
            let text = match format {
                Format::Human => format!("{fan_json}\n"),
                Format::Machine => machine(
                    "twist",
                    json!({
                        "fan": serde_json::from_str::<Value>(&fan_json).expect("json"),
                        "graph_ray_of": d.graph_ray_of,
                        "fiber_ray_of": d.fiber_ray_of,
                    }),
                ),
            };
            Outcome::ok(text)
        }
        Err(e) => failure(e, format),
    }
}

#[derive(Serialize)]
struct CohomologyReport {
    dim: usize,
    ray_count: usize,
    max_cone_count: usize,
    betti: Vec<usize>,
    h_vector: Vec<i64>,
    basis: Vec<Vec<String>>,
    betti_equals_h: bool,
    poincare_symmetric: bool,
    picard_rank_ok: bool,
}

pub fn cmd_cohomology(fan_src: &str, format: Format) -> Outcome {
    let run = || -> toric_chern::Result<CohomologyReport> {
        let fan = io::parse_fan(fan_src)?;
        let r = build_ring(&fan)?;
        let b = betti(&r);
        let h = h_vector(&fan);
        let rev: Vec<usize> = b.iter().rev().copied().collect();
        Ok(CohomologyReport {
            dim: fan.dim(),
            ray_count: fan.ray_count(),
            max_cone_count: fan.max_cones().len(),
            betti_equals_h: b.iter().map(|&x| x as i64).eq(h.iter().copied()),
            poincare_symmetric: b == rev,
            picard_rank_ok: fan.dim() == 0 || b[1] == fan.ray_count() - fan.dim(),
            basis: (0..=fan.dim()).map(|k| r.basis_labels(2 * k)).collect(),
            betti: b,
            h_vector: h,
        })
    };
    match run() {
        Ok(rep) => {
            let good = rep.betti_equals_h && rep.poincare_symmetric && rep.picard_rank_ok;
            let text = match format {
                Format::Machine => machine("cohomology", &rep),
                Format::Human => {
                    let mut s = format!("betti (degrees 0,2,..): {:?}\nh-vector: {:?}\n", rep.betti, rep.h_vector);
                    for (k, labels) in rep.basis.iter().enumerate() {
                        s.push_str(&format!("H^{}: {}\n", 2 * k, labels.join(", ")));
                    }
                    s.push_str(&format!(
                        "betti = h: {}\npoincare symmetry: {}\ndegree-2 rank = rays - dim: {}\n",
                        rep.betti_equals_h, rep.poincare_symmetric, rep.picard_rank_ok
                    ));
                    s
                }
            };
            Outcome { text, code: if good { 0 } else { 2 } }
        }
        Err(e) => failure(e, format),
    }
}

#[derive(Serialize)]
struct ChernReport {
    dim: usize,
    total_chern: ClassReport,
    chern_numbers: Vec<ChernNumber>,
    euler_characteristic: usize,
    gauss_bonnet: bool,
}

pub fn cmd_chern(fan_src: &str, format: Format) -> Outcome {
    let run = || -> toric_chern::Result<ChernReport> {
        let fan = io::parse_fan(fan_src)?;
        let r = build_ring(&fan)?;
        let c = total_chern_intrinsic(&r);
        let top = r.integrate(&c.homogeneous_part(r.top_degree()))?;
        let chi = euler_characteristic(&fan);
        Ok(ChernReport {
            dim: fan.dim(),
            total_chern: class_report(&r, &c),
            chern_numbers: chern_numbers(&r, &c)?,
            euler_characteristic: chi,
            gauss_bonnet: top == toric_chern::BigInt::from(chi),
        })
    };
    match run() {
        Ok(rep) => {
            let text = match format {
                Format::Machine => machine("chern", &rep),
                Format::Human => {
                    let mut s = format!("c = {}\n", rep.total_chern.polynomial);
                    human_numbers(&mut s, "chern numbers", &rep.chern_numbers);
                    s.push_str(&format!(
                        "euler characteristic: {}\ngauss-bonnet: {}\n",
                        rep.euler_characteristic, rep.gauss_bonnet
                    ));
                    s
                }
            };
            Outcome { text, code: if rep.gauss_bonnet { 0 } else { 2 } }
        }
        Err(e) => failure(e, format),
    }
}

pub fn cmd_compare(base: &str, fiber: &str, phi: &str, format: Format) -> Outcome {
    let report = parse_twist_inputs(base, fiber, phi).and_then(|ft| compare(&ft));
    match report {
        Ok(rep) => {
            let good = rep.equal && rep.gauss_bonnet;
            let text = match format {
                Format::Machine => machine("compare", &rep),
                Format::Human => {
                    let mut s = format!(
                        "twisted fan: dim {}, {} rays, {} maximal cones\n",
                        rep.dim, rep.ray_count, rep.max_cone_count
                    );
                    for d in &rep.degrees {
                        s.push_str(&format!(
                            "degree {}: intrinsic [{}] bundle formula [{}] {}\n",
                            d.degree,
                            join(&d.intrinsic),
                            join(&d.bundle_formula),
                            if d.equal { "equal" } else { "DIFFERENT" }
                        ));
                    }
                    human_numbers(&mut s, "chern numbers (intrinsic)", &rep.intrinsic_numbers);
                    human_numbers(&mut s, "chern numbers (bundle formula)", &rep.bundle_numbers);
                    s.push_str(&format!("verdict: {}\n", if rep.equal { "equal" } else { "NOT EQUAL" }));
                    s
                }
            };
            Outcome { text, code: if good { 0 } else { 2 } }
        }
        Err(e) => failure(e, format),
    }
}

#[derive(Serialize)]
struct EquivariantReport {
    masuda: toric_chern::MasudaReport,
    gkm_consistent: bool,
    forget_matches_ordinary: bool,
    /// For toric pairs: forget also matches the ring of the fan itself.
    forget_matches_fan_ring: Option<bool>,
}

pub fn cmd_equivariant(pair_src: &str, degree_bound: Option<usize>, format: Format) -> Outcome {
    let run = || -> toric_chern::Result<EquivariantReport> {
        let p = io::parse_pair(pair_src)?;
        let bound = degree_bound.unwrap_or(2 * p.rank());
        if bound % 2 == 1 {
            return Err(Error::DegreeMismatch(format!("degree bound {bound} is odd")));
        }
        let masuda = masuda_check(&p, bound)?;
        let face = face_ring(&p, bound)?;
        let ct = equivariant_total_chern(&face);
        let ord = ordinary_ring(&p)?;
        let forgotten = forget(&face, &ord, &ct)?;
        let ordinary = total_chern_intrinsic(&ord);
        // Compare in the degrees the truncation keeps.
        let kept = (0..=ord.top_degree() / 2).filter(|k| 2 * k <= bound);
        let forget_ok = kept.clone().all(|k| forgotten.component(2 * k) == ordinary.component(2 * k));
        let fan_ok = if p.is_toric() {
            let r = build_ring(p.complex())?;
            let c = total_chern_intrinsic(&r);
            let moved = r.reduce(&ord.to_poly(&forgotten));
            Some(kept.clone().all(|k| moved.component(2 * k) == c.component(2 * k)))
        } else {
            None
        };
        Ok(EquivariantReport {
            gkm_consistent: gkm_consistent(&p, &face, &ct)?,
            masuda,
            forget_matches_ordinary: forget_ok,
            forget_matches_fan_ring: fan_ok,
        })
    };
    match run() {
        Ok(rep) => {
            let good = rep.masuda.all_pass
                && rep.gkm_consistent
                && rep.forget_matches_ordinary
                && rep.forget_matches_fan_ring != Some(false);
            let text = match format {
                Format::Machine => machine("equivariant", &rep),
                Format::Human => {
                    let mut s = format!("degree bound: {}\n", rep.masuda.degree_bound);
                    for fp in &rep.masuda.fixed_points {
                        let w: Vec<String> = fp.weights.iter().map(|w| w.to_string()).collect();
                        s.push_str(&format!(
                            "fixed point {:?}: weights [{}] restriction {} {}\n",
                            fp.cone,
                            w.join(", "),
                            fp.restriction,
                            if fp.pass { "pass" } else { "FAIL" }
                        ));
                    }
                    s.push_str(&format!(
                        "fixed-point check: {}\ngkm consistency: {}\nforget = ordinary total Chern class: {}\n",
                        rep.masuda.all_pass, rep.gkm_consistent, rep.forget_matches_ordinary
                    ));
                    if let Some(b) = rep.forget_matches_fan_ring {
                        s.push_str(&format!("forget = fan ring total Chern class: {b}\n"));
                    }
                    s
                }
            };
            Outcome { text, code: if good { 0 } else { 2 } }
        }
        Err(e) => failure(e, format),
    }
}

#[derive(Serialize)]
struct BundleReport {
    base: String,
    dim: usize,
    ranks: Vec<usize>,
    total_chern: ClassReport,
    chern_numbers: Vec<ChernNumber>,
    euler_characteristic: JsonInt,
}

pub fn cmd_bundle(presentation: &str, lambda: &str, fiber: &str, format: Format) -> Outcome {
    let run = || -> toric_chern::Result<BundleReport> {
        let base = io::parse_presentation(presentation)?.build()?;
        let lam = TwistingClasses::parse(&base, &io::parse_lambda(lambda)?)?;
        let fiber = io::parse_fan(fiber)?;
        let b = build_bundle_ring(&base, &lam, &fiber)?;
        let c = total_chern_general(&b, &base)?;
        let chi = integrate_bundle(&b, &c.homogeneous_part(b.ring.top_degree()))?;
        Ok(BundleReport {
            base: base.presentation.name.clone(),
            dim: b.ring.top_degree() / 2,
            ranks: b.ring.ranks(),
            total_chern: class_report(&b.ring, &c),
            chern_numbers: chern_numbers(&b.ring, &c)?,
            euler_characteristic: JsonInt(chi),
        })
    };
    match run() {
        Ok(rep) => {
            let text = match format {
                Format::Machine => machine("bundle", &rep),
                Format::Human => {
                    let mut s = format!("base: {}\ntotal dimension: {}\nranks: {:?}\n", rep.base, rep.dim, rep.ranks);
                    s.push_str(&format!("c = {}\n", rep.total_chern.polynomial));
                    human_numbers(&mut s, "chern numbers", &rep.chern_numbers);
                    s.push_str(&format!("euler characteristic: {}\n", rep.euler_characteristic.0));
                    s
                }
            };
            Outcome::ok(text)
        }
        Err(e) => failure(e, format),
    }
}

/// Runs every acceptance check on the built-in corpus.
pub fn cmd_corpus(format: Format) -> Outcome {
    let results = checks::run_all();
    let good = results.iter().all(|r| r.pass);
    let text = match format {
        Format::Machine => machine("corpus", json!({ "checks": results, "all_pass": good })),
        Format::Human => results.iter().map(|r| format!("{}\n", r.line())).collect(),
    };
    Outcome { text, code: if good { 0 } else { 2 } }
}

/// Writes the corpus inputs as files under `dir`; returns the written paths.
pub fn export_corpus(dir: &std::path::Path) -> std::io::Result<Vec<std::path::PathBuf>> {
    let mut written = Vec::new();
    let mut put = |name: String, body: String| -> std::io::Result<()> {
        let path = dir.join(name);
        std::fs::write(&path, body + "\n")?;
        written.push(path);
        Ok(())
    };
    std::fs::create_dir_all(dir)?;
    for (name, f) in toric_chern::corpus::smooth_complete_fans() {
        put(format!("fan-{}.json", slug(&name)), io::fan_to_json(&f))?;
    }
    for inst in toric_chern::corpus::fibered_instances() {
        let s = slug(&inst.name);
        put(format!("twist-{s}-base.json"), io::fan_to_json(&inst.base))?;
        put(format!("twist-{s}-fiber.json"), io::fan_to_json(&inst.fiber))?;
        put(format!("twist-{s}-phi.json"), io::phi_to_json(&inst.phi))?;
    }
    for (name, p) in toric_chern::corpus::characteristic_pairs() {
        put(format!("pair-{}.json", slug(&name)), io::pair_to_json(&p))?;
    }
    Ok(written)
}

/// File-name friendly version of a corpus name.
pub fn slug(name: &str) -> String {
    let mut s = String::new();
    for c in name.chars() {
        if c.is_ascii_alphanumeric() {
            s.push(c.to_ascii_lowercase());
        } else if c == '-' {
            s.push('m');
        } else if !s.ends_with('_') {
            s.push('_');
        }
    }
    s.trim_matches('_').to_string()
}
