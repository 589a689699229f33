//! JSON instance files and the `check` pipeline with transforms.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coeff::{Algebra, BuiltinAlgebra, Vector};
use crate::constructions::{dorroh_unitize, embed_phi, quotient_regrade, restrict_to_subgroup, DorrohElement, DorrohGroupElement, DorrohRing};
use crate::graded::{DegreeWindow, GradedAlgebra, GradedElement};
use crate::group_ring::{GroupRing, GroupRingElement};
use crate::groups::{Closure, Group, GroupElement, GroupSpec};
use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};

use super::verify::{support_group_report, verify_group_ring, verify_theorems, Status, SupportGroupReport, VerificationReport};
use super::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldSpec {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Fp")]
    Prime { p: u64 },
}

impl FieldSpec {
    pub fn field(self) -> Result<Field, HarnessError> {
        match self {
            FieldSpec::Rational => Ok(Field::Rational),
            FieldSpec::Prime { p } => Ok(Field::prime(p)?),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    #[serde(default)]
    kind: Option<String>,
    #[serde(default)]
    name: Option<String>,
    field: FieldSpec,
    #[serde(default)]
    algebra: Option<Value>,
    #[serde(default)]
    coeff: Option<Value>,
    group: GroupSpec,
    #[serde(default)]
    degrees: Option<Vec<Value>>,
    #[serde(default)]
    window: Option<i64>,
    #[serde(default)]
    action: Option<BTreeMap<String, Vec<Vec<String>>>>,
    #[serde(default)]
    cocycle: Option<Vec<(Value, Value, Value)>>,
    #[serde(default)]
    elements: BTreeMap<String, Value>,
}

/// A loaded instance with its named elements.
#[derive(Clone, Debug)]
pub enum Instance {
    Graded {
        name: String,
        r: GradedAlgebra,
        elements: BTreeMap<String, GradedElement>,
    },
    GroupRing {
        name: String,
        ring: GroupRing,
        elements: BTreeMap<String, GroupRingElement>,
    },
}

impl Instance {
    pub fn name(&self) -> &str {
        match self {
            Instance::Graded { name, .. } | Instance::GroupRing { name, .. } => name,
        }
    }

    pub fn from_json(text: &str, default_name: &str) -> Result<Instance, HarnessError> {
        let raw: RawInstance = serde_json::from_str(text)?;
        build(raw, default_name)
    }

    pub fn load(path: &Path) -> Result<Instance, HarnessError> {
        let text = std::fs::read_to_string(path)?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("instance");
        Instance::from_json(&text, stem)
    }

    /// The graded algebra behind the instance, for finite group rings too.
    pub fn graded(&self) -> Result<GradedAlgebra, HarnessError> {
        match self {
            Instance::Graded { r, .. } => Ok(r.clone()),
            Instance::GroupRing { ring, .. } => Ok(ring.as_graded_algebra()?),
        }
    }
}

fn input(msg: impl Into<String>) -> HarnessError {
    HarnessError::Input(msg.into())
}

fn scalar(field: Field, v: &Value) -> Result<Scalar, HarnessError> {
    match v {
        Value::String(s) => Ok(field.parse(s)?),
        other => Err(input(format!("scalars must be strings, got {other}"))),
    }
}

fn vector(field: Field, v: &Value, dim: usize) -> Result<Vector, HarnessError> {
    let items = v
        .as_array()
        .ok_or_else(|| input(format!("expected an array of scalars, got {v}")))?;
    if items.len() != dim {
        return Err(input(format!("expected {dim} coordinates, got {}", items.len())));
    }
    items.iter().map(|x| scalar(field, x)).collect()
}

fn count(map: &serde_json::Map<String, Value>, key: &str) -> Result<usize, HarnessError> {
    map.get(key)
        .and_then(Value::as_u64)
        .map(|n| n as usize)
        .ok_or_else(|| input(format!("builtin algebra needs a non-negative integer `{key}`")))
}

pub fn parse_algebra(field: Field, v: &Value) -> Result<Algebra, HarnessError> {
    let map = v.as_object().ok_or_else(|| input("algebra must be an object"))?;
    if let Some(name) = map.get("builtin") {
        let spec = match name.as_str() {
            Some("matrix") => BuiltinAlgebra::Matrix(count(map, "n")?),
            Some("product") => BuiltinAlgebra::Product(count(map, "n")?),
            Some("truncated_poly") => BuiltinAlgebra::TruncatedPoly(count(map, "n")?),
            Some("group_algebra") => {
                let g = map
                    .get("group")
                    .ok_or_else(|| input("group_algebra needs a `group`"))?;
                let spec: GroupSpec = serde_json::from_value(g.clone())?;
                BuiltinAlgebra::GroupAlgebra(Group::from_spec(&spec)?)
            }
            _ => return Err(input(format!("unknown builtin algebra {name}"))),
        };
        return Ok(Algebra::builtin(field, &spec)?);
    }
    let dim = count(map, "dim")?;
    let constants = map
        .get("constants")
        .and_then(Value::as_array)
        .ok_or_else(|| input("algebra needs `builtin` or `dim` with `constants`"))?;
    let mut entries = Vec::with_capacity(constants.len());
    for c in constants {
        let row = c.as_array().filter(|r| r.len() == 4).ok_or_else(|| input(format!("bad constant {c}")))?;
        let idx = |k: usize| {
            row[k]
                .as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| input(format!("bad index in constant {c}")))
        };
        entries.push((idx(0)?, idx(1)?, idx(2)?, scalar(field, &row[3])?));
    }
    let labels = match map.get("labels") {
        Some(l) => Some(serde_json::from_value::<Vec<String>>(l.clone())?),
        None => None,
    };
    Ok(Algebra::from_constants(field, dim, &entries, labels)?)
}

fn group_key(group: &Group, key: &str) -> Result<GroupElement, HarnessError> {
    let as_string = Value::String(key.to_string());
    group.parse_literal(&as_string).or_else(|e| match serde_json::from_str::<Value>(key) {
        Ok(v) => Ok(group.parse_literal(&v)?),
        Err(_) => Err(e.into()),
    })
}

fn build(raw: RawInstance, default_name: &str) -> Result<Instance, HarnessError> {
    let field = raw.field.field()?;
    let group = Group::from_spec(&raw.group)?;
    let name = raw.name.unwrap_or_else(|| default_name.to_string());
    let kind = raw.kind.as_deref().unwrap_or("graded");
    match kind {
        "graded" => {
            let alg = parse_algebra(field, raw.algebra.as_ref().ok_or_else(|| input("graded instance needs `algebra`"))?)?;
            let degrees = raw
                .degrees
                .ok_or_else(|| input("graded instance needs `degrees`"))?
                .iter()
                .map(|d| group.parse_literal(d))
                .collect::<Result<Vec<_>, _>>()?;
            let mut r = GradedAlgebra::new(alg, group, degrees)?;
            if let Some(w) = raw.window {
                r = r.with_window(DegreeWindow { max_total_degree: w });
            }
            let mut elements = BTreeMap::new();
            for (k, v) in &raw.elements {
                elements.insert(k.clone(), r.element(&vector(field, v, r.dim())?));
            }
            Ok(Instance::Graded { name, r, elements })
        }
        "group_ring" | "crossed_product" => {
            let coeff = parse_algebra(field, raw.coeff.as_ref().ok_or_else(|| input("group ring instance needs `coeff`"))?)?;
            let d = coeff.dim();
            let ring = if kind == "group_ring" {
                if raw.action.is_some() || raw.cocycle.is_some() {
                    return Err(input("`action` and `cocycle` belong to crossed_product instances"));
                }
                GroupRing::new(coeff, group)?
            } else {
                let mut action: Vec<(GroupElement, Matrix)> = Vec::new();
                for (key, rows) in raw.action.iter().flatten() {
                    let g = group_key(&group, key)?;
                    let m = rows
                        .iter()
                        .map(|row| row.iter().map(|s| field.parse(s).map_err(HarnessError::from)).collect())
                        .collect::<Result<Matrix, _>>()?;
                    action.push((g, m));
                }
                let one = coeff.identity().cloned().ok_or_else(|| input("coefficient algebra must be unital"))?;
                let mut cocycle = Vec::new();
                for (g, h, v) in raw.cocycle.iter().flatten() {
                    let value = match v {
                        Value::String(_) => coeff.scale(&scalar(field, v)?, &one),
                        _ => vector(field, v, d)?,
                    };
                    cocycle.push((group.parse_literal(g)?, group.parse_literal(h)?, value));
                }
                GroupRing::crossed_product(coeff, group, &action, &cocycle)?
            };
            let mut elements = BTreeMap::new();
            for (k, v) in &raw.elements {
                let terms = v.as_array().ok_or_else(|| input(format!("element `{k}` must be a list of terms")))?;
                let mut parsed = Vec::new();
                for t in terms {
                    let g = t.get("g").ok_or_else(|| input(format!("term of `{k}` lacks `g`")))?;
                    let c = t.get("coeff").ok_or_else(|| input(format!("term of `{k}` lacks `coeff`")))?;
                    parsed.push((ring.group().parse_literal(g)?, vector(field, c, d)?));
                }
                elements.insert(k.clone(), ring.element(parsed)?);
            }
            Ok(Instance::GroupRing { name, ring, elements })
        }
        other => Err(input(format!("unknown instance kind `{other}`"))),
    }
}

/// A construction applied before checking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transform {
    Dorroh,
    Phi,
    Quotient(Vec<Value>),
    Restrict(Vec<Value>),
}

impl std::fmt::Display for Transform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let list = |v: &[Value]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";");
        match self {
            Transform::Dorroh => write!(f, "dorroh"),
            Transform::Phi => write!(f, "phi"),
            Transform::Quotient(v) => write!(f, "quotient:N={}", list(v)),
            Transform::Restrict(v) => write!(f, "restrict:H={}", list(v)),
        }
    }
}

/// Subgroup specs are generator lists: a JSON array of literals, or
/// `;`-separated tokens each read as JSON or else as a label.
fn parse_subgroup_spec(text: &str) -> Result<Vec<Value>, HarnessError> {
    let text = text.trim();
    if text.starts_with('[') {
        if let Ok(Value::Array(items)) = serde_json::from_str::<Value>(text) {
            return Ok(items);
        }
    }
    Ok(text
        .split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| serde_json::from_str(t).unwrap_or_else(|_| Value::String(t.to_string())))
        .collect())
}

impl std::str::FromStr for Transform {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Transform, HarnessError> {
        match s {
            "dorroh" => return Ok(Transform::Dorroh),
            "phi" => return Ok(Transform::Phi),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("quotient:N=") {
            return Ok(Transform::Quotient(parse_subgroup_spec(rest)?));
        }
        if let Some(rest) = s.strip_prefix("restrict:H=") {
            return Ok(Transform::Restrict(parse_subgroup_spec(rest)?));
        }
        Err(input(format!("unknown transform `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementReport {
    pub name: String,
    pub element: String,
    pub idempotent: bool,
    pub central: bool,
    pub support: Vec<String>,
    pub support_group: SupportGroupReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub instance: String,
    pub transforms: Vec<String>,
    pub stage: String,
    pub elements: Vec<ElementReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
    pub observations: Vec<String>,
    pub status: Status,
}

enum Stage {
    Graded(GradedAlgebra, BTreeMap<String, GradedElement>),
    GroupRing(GroupRing, BTreeMap<String, GroupRingElement>),
    Dorroh(DorrohRing, BTreeMap<String, DorrohElement>),
    DorrohPhi(DorrohRing, BTreeMap<String, DorrohGroupElement>),
}

fn closure_report(group: &Group, c: &Closure) -> SupportGroupReport {
    let elements = c.elements().map(|v| v.iter().map(|g| group.label(g)).collect::<Vec<_>>());
    SupportGroupReport {
        finite: c.is_finite(),
        order: elements.as_ref().map(Vec::len),
        elements,
    }
}

fn labels(group: &Group, v: &[GroupElement]) -> Vec<String> {
    v.iter().map(|g| group.label(g)).collect()
}

fn format_dorroh(d: &DorrohRing, x: &DorrohElement) -> String {
    format!("({}, {})", d.base().format(&x.r), x.n)
}

fn format_dorroh_phi(d: &DorrohRing, x: &DorrohGroupElement) -> String {
    if x.is_empty() {
        return "0".into();
    }
    x.iter()
        .map(|(g, c)| format!("{}*u_{}", format_dorroh(d, c), d.base().group().label(g)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn to_graded_stage(stage: Stage, observations: &mut Vec<String>) -> Result<(GradedAlgebra, BTreeMap<String, GradedElement>), HarnessError> {
    match stage {
        Stage::Graded(r, e) => Ok((r, e)),
        Stage::GroupRing(ring, elements) => {
            let r = ring.as_graded_algebra()?;
            let mut out = BTreeMap::new();
            for (k, x) in elements {
                out.insert(k, ring.to_graded(&x)?);
            }
            observations.push("group ring converted to its graded algebra".into());
            Ok((r, out))
        }
        Stage::Dorroh(..) | Stage::DorrohPhi(..) => Err(input("this transform needs a graded algebra over a field, not a Dorroh ring")),
    }
}

fn subgroup_elements(group: &Group, spec: &[Value], cap: usize) -> Result<Vec<GroupElement>, HarnessError> {
    let gens = spec.iter().map(|v| group.parse_literal(v)).collect::<Result<Vec<_>, _>>()?;
    match group.subgroup_closure(&gens, cap) {
        Closure::Finite(v) => Ok(v),
        Closure::ExceedsCap => Err(input("subgroup generated by the transform spec is not finite within the cap")),
    }
}

fn apply(stage: Stage, t: &Transform, cap: usize, observations: &mut Vec<String>) -> Result<Stage, HarnessError> {
    Ok(match t {
        Transform::Dorroh => {
            let (r, elements) = to_graded_stage(stage, observations)?;
            let d = dorroh_unitize(&r);
            let elements = elements.into_iter().map(|(k, x)| (k, d.psi(&x))).collect();
            Stage::Dorroh(d, elements)
        }
        Transform::Phi => match stage {
            Stage::Dorroh(d, elements) => {
                let elements = elements.into_iter().map(|(k, x)| (k, d.phi(&x))).collect();
                Stage::DorrohPhi(d, elements)
            }
            other => {
                let (r, elements) = to_graded_stage(other, observations)?;
                let phi = embed_phi(&r)?;
                let elements = elements.into_iter().map(|(k, x)| (k, phi.apply(&x))).collect();
                Stage::GroupRing(phi.target().clone(), elements)
            }
        },
        Transform::Quotient(spec) => {
            let (r, elements) = to_graded_stage(stage, observations)?;
            let normal = subgroup_elements(r.group(), spec, cap)?;
            let (q, _) = quotient_regrade(&r, &normal)?;
            // same basis, new degrees
            Stage::Graded(q, elements)
        }
        Transform::Restrict(spec) => {
            let (r, elements) = to_graded_stage(stage, observations)?;
            let sub = subgroup_elements(r.group(), spec, cap)?;
            let (rh, inclusion) = restrict_to_subgroup(&r, &sub)?;
            let keep: Vec<usize> = (0..r.dim()).filter(|&i| inclusion.contains(&r.degrees()[i])).collect();
            let mut kept = BTreeMap::new();
            for (k, x) in elements {
                if x.coords().keys().all(|i| keep.contains(i)) {
                    let dense: Vector = keep
                        .iter()
                        .map(|&i| x.coefficient(i).cloned().unwrap_or_else(|| r.field().zero()))
                        .collect();
                    kept.insert(k, rh.element(&dense));
                } else {
                    observations.push(format!("element `{k}` does not lie in the restricted ring and was dropped"));
                }
            }
            Stage::Graded(rh, kept)
        }
    })
}

fn element_reports(stage: &Stage, cap: usize) -> Vec<ElementReport> {
    match stage {
        Stage::Graded(r, elements) => elements
            .iter()
            .map(|(k, x)| ElementReport {
                name: k.clone(),
                element: r.format(x),
                idempotent: r.is_idempotent(x),
                central: r.is_central(x),
                support: labels(r.group(), &r.support(x)),
                support_group: support_group_report(r, &r.support_group(x, cap)),
            })
            .collect(),
        Stage::GroupRing(ring, elements) => elements
            .iter()
            .map(|(k, x)| ElementReport {
                name: k.clone(),
                element: ring.format(x),
                idempotent: ring.is_idempotent(x),
                central: ring.is_central(x),
                support: labels(ring.group(), &x.support()),
                support_group: closure_report(ring.group(), &ring.support_group(x, cap)),
            })
            .collect(),
        Stage::Dorroh(d, elements) => elements
            .iter()
            .map(|(k, x)| ElementReport {
                name: k.clone(),
                element: format_dorroh(d, x),
                idempotent: d.is_idempotent(x),
                central: d.is_central(x),
                support: labels(d.base().group(), &d.support(x)),
                support_group: closure_report(d.base().group(), &d.support_group(x, cap)),
            })
            .collect(),
        Stage::DorrohPhi(d, elements) => elements
            .iter()
            .map(|(k, x)| {
                let group = d.base().group();
                let support: Vec<GroupElement> = x.keys().cloned().collect();
                ElementReport {
                    name: k.clone(),
                    element: format_dorroh_phi(d, x),
                    idempotent: d.group_ring_mul(x, x) == *x,
                    central: d.group_ring_is_central(x),
                    support: labels(group, &support),
                    support_group: closure_report(group, &group.subgroup_closure(&support, cap)),
                }
            })
            .collect(),
    }
}

/// Loads nothing; runs transforms, element checks and theorem verification.
pub fn check_instance(instance: &Instance, transforms: &[Transform], cap: usize, budget: u64) -> Result<CheckReport, HarnessError> {
    let mut observations = Vec::new();
    let mut stage = match instance {
        Instance::Graded { r, elements, .. } => Stage::Graded(r.clone(), elements.clone()),
        Instance::GroupRing { ring, elements, .. } => Stage::GroupRing(ring.clone(), elements.clone()),
    };
    for t in transforms {
        stage = apply(stage, t, cap, &mut observations)?;
    }
    let elements = element_reports(&stage, cap);
    let name = instance.name();
    let (stage_name, verification) = match &stage {
        Stage::Graded(r, _) => ("graded", Some(verify_theorems(name, r, cap, budget))),
        Stage::GroupRing(ring, _) => {
            let v = verify_group_ring(name, ring, cap, budget);
            if v.is_none() {
                observations.push("group ring over an infinite group: only element checks were run".into());
            }
            ("group-ring", v)
        }
        Stage::Dorroh(..) => ("dorroh", None),
        Stage::DorrohPhi(..) => ("dorroh-group-ring", None),
    };
    let status = verification.as_ref().map_or(Status::Pass, |v| v.status);
    Ok(CheckReport {
        instance: name.to_string(),
        transforms: transforms.iter().map(|t| t.to_string()).collect(),
        stage: stage_name.into(),
        elements,
        verification,
        observations,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const DINF: &str = r#"{
        "kind": "graded",
        "field": {"kind": "Q"},
        "algebra": {"dim": 4, "labels": ["1", "a", "b", "c"], "constants": [
            [0,0,0,"1"],[0,1,1,"1"],[0,2,2,"1"],[0,3,3,"1"],
            [1,0,1,"1"],[1,1,0,"1"],[1,2,2,"1"],[1,3,3,"-1"],
            [2,0,2,"1"],[2,1,2,"1"],[2,2,0,"1/2"],[2,2,1,"1/2"],
            [3,0,3,"1"],[3,1,3,"-1"],[3,3,0,"1/2"],[3,3,1,"-1/2"]
        ]},
        "group": {"kind": "Dinf"},
        "degrees": ["e", "e", "s", {"n": 1, "flip": true}],
        "elements": {"f": ["1/2", "0", "1/2", "1/2"]}
    }"#;

    #[test]
    fn graded_instance_round_trip() {
        let inst = Instance::from_json(DINF, "dinf").unwrap();
        let report = check_instance(&inst, &[], 100, 1000).unwrap();
        let f = &report.elements[0];
        assert!(f.idempotent && f.central);
        assert_eq!(f.support, vec!["e", "s", "t"]);
        assert!(!f.support_group.finite);
    }

    #[test]
    fn dorroh_then_phi_over_nonabelian_group() {
        let inst = Instance::from_json(DINF, "dinf").unwrap();
        let report = check_instance(&inst, &[Transform::Dorroh], 100, 1000).unwrap();
        assert!(report.elements[0].central && report.elements[0].idempotent);
        let report = check_instance(&inst, &[Transform::Dorroh, Transform::Phi], 100, 1000).unwrap();
        assert_eq!(report.stage, "dorroh-group-ring");
        // phi is multiplicative but u_s does not commute past a nonabelian support
        assert!(report.elements[0].idempotent && !report.elements[0].central);
    }

    #[test]
    fn restrict_drops_outside_elements() {
        let inst = Instance::from_json(DINF, "dinf").unwrap();
        let t: Transform = "restrict:H=s".parse().unwrap();
        let report = check_instance(&inst, &[t], 100, 1000).unwrap();
        assert!(report.elements.is_empty());
        assert_eq!(report.observations.len(), 1);
    }

    #[test]
    fn group_ring_instance() {
        let text = r#"{"kind": "group_ring", "field": {"kind": "Q"},
            "coeff": {"builtin": "matrix", "n": 2}, "group": {"kind": "Zk", "k": 1},
            "elements": {"f": [{"g": [0], "coeff": ["1","0","0","0"]}, {"g": [1], "coeff": ["0","1","0","0"]}]}}"#;
        let inst = Instance::from_json(text, "m2").unwrap();
        let report = check_instance(&inst, &[], 1000, 1000).unwrap();
        assert!(report.verification.is_none());
        assert!(report.elements[0].idempotent && !report.elements[0].central);
    }

    #[test]
    fn crossed_product_instance() {
        let text = r#"{"kind": "crossed_product", "field": {"kind": "Fp", "p": 5},
            "coeff": {"builtin": "product", "n": 2}, "group": {"kind": "finite", "name": "Z2"},
            "action": {"1": [["0","1"],["1","0"]]}, "cocycle": [["1", "1", "2"]]}"#;
        let inst = Instance::from_json(text, "cp").unwrap();
        let report = check_instance(&inst, &[], 1000, 1_000_000).unwrap();
        assert_eq!(report.status, Status::Pass);
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(Instance::from_json("{", "x").is_err());
        let bad_scalar = DINF.replace("\"1/2\", \"0\"", "0.5, \"0\"");
        assert!(matches!(Instance::from_json(&bad_scalar, "x"), Err(HarnessError::Input(_))));
        assert!("rotate".parse::<Transform>().is_err());
    }

    #[test]
    fn subgroup_specs() {
        assert_eq!(
            parse_subgroup_spec("(123);e").unwrap(),
            vec![Value::String("(123)".into()), Value::String("e".into())]
        );
        assert_eq!(parse_subgroup_spec("[[1,0]]").unwrap(), vec![serde_json::json!([1, 0])]);
    }
}
