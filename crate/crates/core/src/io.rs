//! JSON files for spaces, maps, lax objects, families and descent reports.
//!
//! Space file:
//! `{"name": str, "points": [str], "topology": {"kind": "opens", "opens": [[str]]}}`
//! or with `{"kind": "order", "le": [[str, str]]}`.
//!
//! Map file: `{"source": space, "target": space, "map": {point: point}}`.
//! Lax object: `{"base": space, "space": space, "alpha": {point: base-point}}`.
//! Lax morphism: `{"source": object, "target": object, "map": {..}}`.
//! Family: `{"base": space, "index": [str], "values": {index: base-point}}`.
//!
//! Wherever a space, object or family is expected a string may appear
//! instead; it is handed to a caller-supplied resolver (the CLI reads it as
//! a path). Output always uses sorted keys.

use serde_json::{json, Map, Value};

use crate::descent::{DescentReport, Verdict, Witness};
use crate::error::{Error, Result};
use crate::famx::{FamMorphism, FamObject};
use crate::finspace::{CMap, FiniteSpace, Provenance};
use crate::laxcomma::{LaxMorphism, LaxObject};

/// Turns a string reference into the JSON value it names.
pub type Resolver<'a> = &'a dyn Fn(&str) -> Result<Value>;

/// A resolver that rejects every reference.
pub fn no_references(reference: &str) -> Result<Value> {
    Err(Error::Schema {
        field: reference.to_string(),
        message: "references are not supported here".into(),
    })
}

fn schema(field: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        field: field.to_string(),
        message: message.into(),
    }
}

/// Parses JSON text, reporting the position of syntax errors.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialise");
    s.push('\n');
    s
}

fn field<'v>(v: &'v Value, key: &str, path: &str) -> Result<&'v Value> {
    v.get(key)
        .ok_or_else(|| schema(&format!("{path}.{key}"), "missing field"))
}

fn as_str<'v>(v: &'v Value, path: &str) -> Result<&'v str> {
    v.as_str().ok_or_else(|| schema(path, "expected a string"))
}

fn str_list(v: &Value, path: &str) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| schema(path, "expected an array of strings"))?
        .iter()
        .enumerate()
        .map(|(i, x)| as_str(x, &format!("{path}[{i}]")).map(str::to_string))
        .collect()
}

fn as_object<'v>(v: &'v Value, path: &str) -> Result<&'v Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| schema(path, "expected an object"))
}

/// Follows a string reference, or returns the value itself.
fn deref(v: &Value, resolve: Resolver) -> Result<Value> {
    match v {
        Value::String(r) => resolve(r),
        other => Ok(other.clone()),
    }
}

// ---------------------------------------------------------------------------
// Spaces

pub fn space_from_value(v: &Value, path: &str) -> Result<FiniteSpace> {
    as_object(v, path)?;
    let name = match v.get("name") {
        Some(n) => as_str(n, &format!("{path}.name"))?.to_string(),
        None => "X".to_string(),
    };
    let points = str_list(field(v, "points", path)?, &format!("{path}.points"))?;
    let top_path = format!("{path}.topology");
    let topology = field(v, "topology", path)?;
    let kind = as_str(
        field(topology, "kind", &top_path)?,
        &format!("{top_path}.kind"),
    )?;
    match kind {
        "opens" => {
            let opens_path = format!("{top_path}.opens");
            let opens = field(topology, "opens", &top_path)?
                .as_array()
                .ok_or_else(|| schema(&opens_path, "expected an array of arrays"))?
                .iter()
                .enumerate()
                .map(|(i, o)| str_list(o, &format!("{opens_path}[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            FiniteSpace::from_opens(name, &points, &opens)
        }
        "order" => {
            let le_path = format!("{top_path}.le");
            let pairs = field(topology, "le", &top_path)?
                .as_array()
                .ok_or_else(|| schema(&le_path, "expected an array of pairs"))?
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let p_path = format!("{le_path}[{i}]");
                    match str_list(p, &p_path)?.as_slice() {
                        [lo, hi] => Ok((lo.clone(), hi.clone())),
                        _ => Err(schema(&p_path, "expected a pair")),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            FiniteSpace::from_order(name, &points, &pairs)
        }
        other => Err(schema(
            &format!("{top_path}.kind"),
            format!("unknown topology kind `{other}`"),
        )),
    }
}

pub fn parse_space(text: &str) -> Result<FiniteSpace> {
    space_from_value(&parse_json(text)?, "$")
}

/// Spaces read from opens are written back as opens, everything else as the
/// strict order pairs. Opens are listed by size, then by point order.
pub fn space_to_value(space: &FiniteSpace) -> Value {
    let topology = if space.provenance() == Provenance::Opens {
        let mut opens = space.open_sets();
        for o in &mut opens {
            o.sort_unstable();
        }
        opens.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let opens: Vec<Vec<String>> = opens.iter().map(|o| space.labels_of(o)).collect();
        json!({"kind": "opens", "opens": opens})
    } else {
        let le: Vec<[&str; 2]> = space
            .order_pairs()
            .into_iter()
            .filter(|(x, y)| x != y)
            .map(|(x, y)| [space.label(x), space.label(y)])
            .collect();
        json!({"kind": "order", "le": le})
    };
    json!({
        "name": space.name(),
        "points": space.labels(),
        "topology": topology,
    })
}

pub fn space_to_string(space: &FiniteSpace) -> String {
    to_pretty(&space_to_value(space))
}

fn space_field(v: &Value, key: &str, path: &str, resolve: Resolver) -> Result<FiniteSpace> {
    let inner = deref(field(v, key, path)?, resolve)?;
    space_from_value(&inner, &format!("{path}.{key}"))
}

fn assignment(v: &Value, path: &str) -> Result<Vec<(String, String)>> {
    as_object(v, path)?
        .iter()
        .map(|(k, x)| Ok((k.clone(), as_str(x, &format!("{path}.{k}"))?.to_string())))
        .collect()
}

fn assignment_value(source: &FiniteSpace, target: &FiniteSpace, table: &[usize]) -> Value {
    let map: Map<String, Value> = source
        .points()
        .map(|p| {
            (
                source.label(p).to_string(),
                Value::String(target.label(table[p]).to_string()),
            )
        })
        .collect();
    Value::Object(map)
}

// ---------------------------------------------------------------------------
// Maps

pub fn map_from_value(v: &Value, path: &str, resolve: Resolver) -> Result<CMap> {
    let source = space_field(v, "source", path, resolve)?;
    let target = space_field(v, "target", path, resolve)?;
    let pairs = assignment(field(v, "map", path)?, &format!("{path}.map"))?;
    CMap::from_labels(source, target, &pairs)
}

pub fn map_to_value(f: &CMap) -> Value {
    json!({
        "source": space_to_value(f.source()),
        "target": space_to_value(f.target()),
        "map": assignment_value(f.source(), f.target(), f.table()),
    })
}

// ---------------------------------------------------------------------------
// Lax objects and morphisms

/// Reads a lax object. `base` is used when the file has no `base` field.
pub fn lax_object_from_value(
    v: &Value,
    path: &str,
    base: Option<&FiniteSpace>,
    resolve: Resolver,
) -> Result<LaxObject> {
    as_object(v, path)?;
    let base = match (v.get("base"), base) {
        (Some(_), _) => space_field(v, "base", path, resolve)?,
        (None, Some(b)) => b.clone(),
        (None, None) => return Err(schema(&format!("{path}.base"), "missing field")),
    };
    let space = space_field(v, "space", path, resolve)?;
    let pairs = assignment(field(v, "alpha", path)?, &format!("{path}.alpha"))?;
    LaxObject::from_labels(space, base, &pairs)
}

pub fn lax_object_to_value(obj: &LaxObject) -> Value {
    json!({
        "base": space_to_value(obj.base()),
        "space": space_to_value(obj.space()),
        "alpha": assignment_value(obj.space(), obj.base(), obj.alpha().table()),
    })
}

pub fn lax_morphism_from_value(
    v: &Value,
    path: &str,
    base: Option<&FiniteSpace>,
    resolve: Resolver,
) -> Result<LaxMorphism> {
    let own_base = match v.get("base") {
        Some(_) => Some(space_field(v, "base", path, resolve)?),
        None => None,
    };
    let base = own_base.as_ref().or(base);
    let obj = |key: &str| {
        let inner = deref(field(v, key, path)?, resolve)?;
        lax_object_from_value(&inner, &format!("{path}.{key}"), base, resolve)
    };
    let source = obj("source")?;
    let target = obj("target")?;
    let pairs = assignment(field(v, "map", path)?, &format!("{path}.map"))?;
    let map = CMap::from_labels(source.space().clone(), target.space().clone(), &pairs)?;
    LaxMorphism::new(source, target, map)
}

pub fn lax_morphism_to_value(f: &LaxMorphism) -> Value {
    json!({
        "source": lax_object_to_value(f.source()),
        "target": lax_object_to_value(f.target()),
        "map": assignment_value(f.source().space(), f.target().space(), f.map().table()),
    })
}

// ---------------------------------------------------------------------------
// Families

pub fn family_from_value(
    v: &Value,
    path: &str,
    base: Option<&FiniteSpace>,
    resolve: Resolver,
) -> Result<FamObject> {
    as_object(v, path)?;
    let base = match (v.get("base"), base) {
        (Some(_), _) => space_field(v, "base", path, resolve)?,
        (None, Some(b)) => b.clone(),
        (None, None) => return Err(schema(&format!("{path}.base"), "missing field")),
    };
    let index = str_list(field(v, "index", path)?, &format!("{path}.index"))?;
    let values_path = format!("{path}.values");
    let values = as_object(field(v, "values", path)?, &values_path)?;
    let mut table = Vec::with_capacity(index.len());
    for i in &index {
        let x = values
            .get(i)
            .ok_or_else(|| schema(&format!("{values_path}.{i}"), "missing value"))?;
        table.push(base.index_of(as_str(x, &format!("{values_path}.{i}"))?)?);
    }
    if let Some(extra) = values.keys().find(|k| !index.contains(k)) {
        return Err(schema(
            &format!("{values_path}.{extra}"),
            "not a listed index",
        ));
    }
    FamObject::new(base, index, table)
}

pub fn family_to_value(obj: &FamObject) -> Value {
    let base = obj.base();
    let values: Map<String, Value> = obj
        .index()
        .iter()
        .zip(obj.values())
        .map(|(i, &x)| (i.clone(), Value::String(base.label(x).to_string())))
        .collect();
    json!({
        "base": space_to_value(base),
        "index": obj.index(),
        "values": values,
    })
}

pub fn fam_morphism_from_value(
    v: &Value,
    path: &str,
    base: Option<&FiniteSpace>,
    resolve: Resolver,
) -> Result<FamMorphism> {
    let own_base = match v.get("base") {
        Some(_) => Some(space_field(v, "base", path, resolve)?),
        None => None,
    };
    let base = own_base.as_ref().or(base);
    let fam = |key: &str| {
        let inner = deref(field(v, key, path)?, resolve)?;
        family_from_value(&inner, &format!("{path}.{key}"), base, resolve)
    };
    let source = fam("source")?;
    let target = fam("target")?;
    let map_path = format!("{path}.map");
    let pairs = assignment(field(v, "map", path)?, &map_path)?;
    let mut table = vec![usize::MAX; source.len()];
    for (i, j) in &pairs {
        let si = source
            .index()
            .iter()
            .position(|x| x == i)
            .ok_or_else(|| Error::UnknownLabel(i.clone()))?;
        let tj = target
            .index()
            .iter()
            .position(|x| x == j)
            .ok_or_else(|| Error::UnknownLabel(j.clone()))?;
        table[si] = tj;
    }
    if let Some(i) = table.iter().position(|&t| t == usize::MAX) {
        return Err(Error::NotTotal(source.index()[i].clone()));
    }
    FamMorphism::new(source, target, table)
}

// ---------------------------------------------------------------------------
// Descent reports

pub fn witness_to_value(w: &Witness) -> Value {
    match w {
        Witness::Pair { lo, hi } => json!({"kind": "pair", "lo": lo, "hi": hi}),
        Witness::Chain { points } => json!({"kind": "chain", "points": points}),
        Witness::Join { lo, hi, w } => json!({"kind": "join", "lo": lo, "hi": hi, "w": w}),
        Witness::JoinCover {
            lo,
            hi,
            expected,
            got,
        } => json!({"kind": "join_cover", "lo": lo, "hi": hi, "expected": expected, "got": got}),
        Witness::FilterLevel { u, v, lo, hi } => {
            json!({"kind": "filter_level", "u": u, "v": v, "lo": lo, "hi": hi})
        }
        Witness::FamIndex { index } => json!({"kind": "fam_index", "index": index}),
        Witness::FamJoin { index, w } => json!({"kind": "fam_join", "index": index, "w": w}),
        Witness::Theta { index, theta } => {
            json!({"kind": "theta", "index": index, "theta": theta})
        }
    }
}

pub fn verdict_to_value(v: &Verdict) -> Value {
    json!({
        "value": v.value.as_str(),
        "witness": v.witness.as_ref().map(witness_to_value),
    })
}

pub fn descent_report_to_value(r: &DescentReport) -> Value {
    json!({
        "category": r.category.as_str(),
        "is_descent": verdict_to_value(&r.is_descent),
        "is_effective": verdict_to_value(&r.is_effective),
        "preconditions_checked": r.preconditions_checked,
        "criterion": r.criterion,
        "notes": r.notes,
    })
}
