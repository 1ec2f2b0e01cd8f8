//! JSON file formats and report serialization.
//!
//! Integers are written as JSON numbers when they fit in an `i64` and as
//! decimal strings otherwise; on input both forms are accepted.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bundle::BasePresentation;
use crate::error::{Error, Result as CrateResult};
use crate::fan::Fan;
use crate::lattice::IntVector;
use crate::poly::Poly;
use crate::twist::{CharacteristicPair, PiecewiseLinearMap};

/// An arbitrary-precision integer with the JSON encoding described above.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
                v.trim().parse::<BigInt>().map(JsonInt).map_err(|_| E::custom(format!("not an integer: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

/// `#[serde(with)]` helpers for `BigInt` containers.
pub(crate) mod ints {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| JsonInt(x.clone())))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Ok(Vec::<JsonInt>::deserialize(d)?.into_iter().map(|x| x.0).collect())
    }
}

pub(crate) mod int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        JsonInt(v.clone()).serialize(s)
    }
}

fn parse_err(what: &str, e: impl fmt::Display) -> Error {
    Error::Parse(format!("{what}: {e}"))
}

fn to_vector(v: Vec<JsonInt>) -> IntVector {
    IntVector::new(v.into_iter().map(|x| x.0).collect())
}

fn from_vector(v: &IntVector) -> Vec<JsonInt> {
    v.entries().iter().cloned().map(JsonInt).collect()
}

/// Fan file; with `charmap` present it is a characteristic pair file.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FanFile {
    dim: usize,
    rays: Vec<Vec<JsonInt>>,
    max_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    charmap: Option<Vec<Vec<JsonInt>>>,
}

fn fan_from_file(f: FanFile, what: &str) -> CrateResult<Fan> {
    for (i, r) in f.rays.iter().enumerate() {
        if r.len() != f.dim {
            return Err(Error::Parse(format!(
                "{what}: field `rays[{i}]` has {} entries, expected dim = {}",
                r.len(),
                f.dim
            )));
        }
    }
    for (i, c) in f.max_cones.iter().enumerate() {
        if let Some(&bad) = c.iter().find(|&&j| j >= f.rays.len()) {
            return Err(Error::Parse(format!(
                "{what}: field `max_cones[{i}]` refers to ray {bad}, but only {} rays are given",
                f.rays.len()
            )));
        }
    }
    Fan::new(f.dim, f.rays.into_iter().map(to_vector).collect(), f.max_cones)
}

pub fn parse_fan(src: &str) -> CrateResult<Fan> {
    let f: FanFile = serde_json::from_str(src).map_err(|e| parse_err("fan", e))?;
    if f.charmap.is_some() {
        return Err(Error::Parse("fan: unexpected field `charmap` (this is a pair file)".into()));
    }
    fan_from_file(f, "fan")
}

fn fan_file(f: &Fan) -> FanFile {
    FanFile {
        dim: f.dim(),
        rays: f.rays().iter().map(from_vector).collect(),
        max_cones: f.max_cones().to_vec(),
        charmap: None,
    }
}

pub fn fan_to_json(f: &Fan) -> String {
    serde_json::to_string_pretty(&fan_file(f)).expect("serializable")
}

pub fn parse_pair(src: &str) -> CrateResult<CharacteristicPair> {
    let mut f: FanFile = serde_json::from_str(src).map_err(|e| parse_err("pair", e))?;
    let charmap = f.charmap.take().ok_or_else(|| Error::Parse("pair: missing field `charmap`".into()))?;
    let dim = f.dim;
    let fan = fan_from_file(f, "pair")?;
    if charmap.len() != fan.ray_count() {
        return Err(Error::Parse(format!(
            "pair: field `charmap` has {} entries for {} rays",
            charmap.len(),
            fan.ray_count()
        )));
    }
    if let Some(i) = charmap.iter().position(|v| v.len() != dim) {
        return Err(Error::Parse(format!("pair: field `charmap[{i}]` has length {}, expected {dim}", charmap[i].len())));
    }
    CharacteristicPair::new(fan, charmap.into_iter().map(to_vector).collect())
}

pub fn pair_to_json(p: &CharacteristicPair) -> String {
    let mut f = fan_file(p.complex());
    f.charmap = Some(p.charmap().iter().map(from_vector).collect());
    serde_json::to_string_pretty(&f).expect("serializable")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PhiFile {
    values: BTreeMap<String, Vec<JsonInt>>,
}

/// Parses a map file against its base fan; the fiber rank is `fiber_rank`.
pub fn parse_phi(src: &str, base: &Fan, fiber_rank: usize) -> CrateResult<PiecewiseLinearMap> {
    let f: PhiFile = serde_json::from_str(src).map_err(|e| parse_err("map", e))?;
    let mut values: Vec<Option<IntVector>> = vec![None; base.ray_count()];
    for (k, v) in f.values {
        let i: usize = k
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("map: key {k:?} in `values` is not a ray index")))?;
        if i >= base.ray_count() {
            return Err(Error::Parse(format!("map: `values.{k}` but the base fan has {} rays", base.ray_count())));
        }
        if v.len() != fiber_rank {
            return Err(Error::Parse(format!(
                "map: `values.{k}` has length {}, expected fiber rank {fiber_rank}",
                v.len()
            )));
        }
        values[i] = Some(to_vector(v));
    }
    let missing: Vec<usize> = values.iter().enumerate().filter(|(_, v)| v.is_none()).map(|(i, _)| i).collect();
    if !missing.is_empty() {
        return Err(Error::Parse(format!("map: `values` has no entry for base rays {missing:?}")));
    }
    PiecewiseLinearMap::new(base, fiber_rank, values.into_iter().map(|v| v.expect("checked")).collect())
}

pub fn phi_to_json(phi: &PiecewiseLinearMap) -> String {
    let values = phi.values().iter().enumerate().map(|(i, v)| (i.to_string(), from_vector(v))).collect();
    serde_json::to_string_pretty(&PhiFile { values }).expect("serializable")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorEntry {
    name: String,
    degree: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationFile {
    schema: u32,
    name: String,
    generators: Vec<GeneratorEntry>,
    relations: Vec<String>,
    basis: Vec<Vec<String>>,
    integration: Vec<JsonInt>,
    total_chern: Vec<Vec<JsonInt>>,
}

pub fn parse_presentation(src: &str) -> CrateResult<BasePresentation> {
    let f: PresentationFile = serde_json::from_str(src).map_err(|e| parse_err("presentation", e))?;
    if f.schema != 1 {
        return Err(Error::Parse(format!("presentation: unsupported `schema` {}", f.schema)));
    }
    let names: Vec<String> = f.generators.iter().map(|g| g.name.clone()).collect();
    for (i, g) in f.generators.iter().enumerate() {
        let ok = !g.name.is_empty()
            && g.name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && g.name.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::Parse(format!("presentation: `generators[{i}].name` {:?} is not an identifier", g.name)));
        }
        if names[..i].contains(&g.name) {
            return Err(Error::Parse(format!("presentation: generator {:?} is listed twice", g.name)));
        }
    }
    let poly = |s: &str, field: String| {
        Poly::parse(s, &names).map_err(|e| Error::Parse(format!("presentation: `{field}`: {e}")))
    };
    let relations = f
        .relations
        .iter()
        .enumerate()
        .map(|(i, s)| poly(s, format!("relations[{i}]")))
        .collect::<CrateResult<Vec<_>>>()?;
    let basis = f
        .basis
        .iter()
        .enumerate()
        .map(|(d, row)| {
            row.iter()
                .enumerate()
                .map(|(j, s)| poly(s, format!("basis[{d}][{j}]")))
                .collect::<CrateResult<Vec<_>>>()
        })
        .collect::<CrateResult<Vec<_>>>()?;
    Ok(BasePresentation {
        name: f.name,
        generators: f.generators.into_iter().map(|g| (g.name, g.degree)).collect(),
        relations,
        basis,
        integration: f.integration.into_iter().map(|x| x.0).collect(),
        total_chern: f.total_chern.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect(),
    })
}

pub fn presentation_to_json(p: &BasePresentation) -> String {
    let names = p.names();
    let show = |q: &Poly| q.display_with(&names).to_string();
    let f = PresentationFile {
        schema: 1,
        name: p.name.clone(),
        generators: p.generators.iter().map(|(n, d)| GeneratorEntry { name: n.clone(), degree: *d }).collect(),
        relations: p.relations.iter().map(show).collect(),
        basis: p.basis.iter().map(|r| r.iter().map(show).collect()).collect(),
        integration: p.integration.iter().cloned().map(JsonInt).collect(),
        total_chern: p.total_chern.iter().map(|r| r.iter().cloned().map(JsonInt).collect()).collect(),
    };
    serde_json::to_string_pretty(&f).expect("serializable")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LambdaFile {
    classes: Vec<String>,
}

/// The twisting classes as strings, to be parsed against a base presentation.
pub fn parse_lambda(src: &str) -> CrateResult<Vec<String>> {
    let f: LambdaFile = serde_json::from_str(src).map_err(|e| parse_err("lambda", e))?;
    Ok(f.classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn json_int_forms() {
        let v: Vec<JsonInt> = serde_json::from_str(r#"[1, -2, "123456789012345678901234567890"]"#).unwrap();
        assert_eq!(v[1].0, BigInt::from(-2));
        assert_eq!(v[2].0.to_string(), "123456789012345678901234567890");
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"[1,-2,"123456789012345678901234567890"]"#);
        assert!(serde_json::from_str::<JsonInt>("1.5").is_err());
        assert!(serde_json::from_str::<JsonInt>(r#""x""#).is_err());
    }

    #[test]
    fn fan_round_trip() {
        for (_, f) in corpus::smooth_complete_fans() {
            assert_eq!(parse_fan(&fan_to_json(&f)).unwrap(), f);
        }
    }

    #[test]
    fn fan_diagnostics() {
        let e = parse_fan(r#"{"dim":1,"rays":[[1],[-1,0]],"max_cones":[[0]]}"#).unwrap_err();
        assert!(e.to_string().contains("rays[1]"), "{e}");
        let e = parse_fan(r#"{"dim":1,"rays":[[1]],"max_cones":[[3]]}"#).unwrap_err();
        assert!(e.to_string().contains("max_cones[0]"), "{e}");
        let e = parse_fan("{\n\"dim\": 1,\n\"rays\": [[1]],\n\"cones\": []}").unwrap_err();
        assert!(e.to_string().contains("line"), "{e}");
    }

    #[test]
    fn pair_and_phi_round_trip() {
        let p = corpus::quasitoric_square();
        assert_eq!(parse_pair(&pair_to_json(&p)).unwrap(), p);
        let p2 = corpus::projective_plane();
        let phi = PiecewiseLinearMap::from_i64(&p2, 1, &[&[2], &[0], &[3]]).unwrap();
        assert_eq!(parse_phi(&phi_to_json(&phi), &p2, 1).unwrap(), phi);
        let e = parse_phi(r#"{"values":{"0":[1],"1":[0]}}"#, &p2, 1).unwrap_err();
        assert!(e.to_string().contains("[2]"), "{e}");
    }

    #[test]
    fn presentation_round_trip() {
        let p = BasePresentation::from_toric("F1", &corpus::hirzebruch(1)).unwrap();
        let q = parse_presentation(&presentation_to_json(&p)).unwrap();
        assert_eq!(p, q);
        let src = r#"{"schema":1,"name":"P2","generators":[{"name":"h","degree":2}],
            "relations":["h^3"],"basis":[["1"],["h"],["h^2"]],"integration":[1],
            "total_chern":[[1],[3],[3]]}"#;
        let b = parse_presentation(src).unwrap().build().unwrap();
        assert_eq!(b.ring.ranks(), vec![1, 1, 1]);
        let bad = src.replace("h^3", "k^3");
        assert!(parse_presentation(&bad).unwrap_err().to_string().contains("relations[0]"));
    }
}
