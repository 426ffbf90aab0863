//! JSON records for posets, elements, maps, higher derivations, transitive
//! maps and decompositions.
//!
//! Scalars are always strings. Segment keys are `"x,y"` and appear in the
//! poset's canonical segment order; only non-zero entries are written.
//! Top-level records carry `"format_version": 1` and a `"kind"` tag.

use hder::{
    AlgElement, Decomposition, HigherDerivation, IncidenceAlgebra, InnerData, LinMap, Poset, RingElem,
    TransitiveMap,
};
use serde_json::{json, Map, Value};

use crate::error::CliError;

pub const FORMAT_VERSION: u64 = 1;

pub const KIND_HD: &str = "higher_derivation";
pub const KIND_TM: &str = "transitive_map";
pub const KIND_DECOMPOSITION: &str = "decomposition";

fn format_err(msg: impl Into<String>) -> CliError {
    CliError::Format(msg.into())
}

/// Pretty-printed, newline-terminated text.
pub fn render(value: &Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    out.push('\n');
    out
}

pub fn parse_json(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| format_err(format!("invalid JSON: {e}")))
}

fn as_object<'a>(value: &'a Value, what: &str) -> Result<&'a Map<String, Value>, CliError> {
    value.as_object().ok_or_else(|| format_err(format!("{what} must be an object")))
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str, what: &str) -> Result<&'a Value, CliError> {
    obj.get(name).ok_or_else(|| format_err(format!("{what} is missing field `{name}`")))
}

fn check_header(obj: &Map<String, Value>, kind: &str) -> Result<(), CliError> {
    if let Some(v) = obj.get("format_version") {
        if v.as_u64() != Some(FORMAT_VERSION) {
            return Err(format_err(format!("unsupported format_version {v}")));
        }
    }
    if let Some(k) = obj.get("kind") {
        if k.as_str() != Some(kind) {
            return Err(format_err(format!("expected kind `{kind}`, found {k}")));
        }
    }
    Ok(())
}

fn header(kind: &str) -> Map<String, Value> {
    let mut obj = Map::new();
    obj.insert("format_version".into(), json!(FORMAT_VERSION));
    obj.insert("kind".into(), json!(kind));
    obj
}

fn order_field(obj: &Map<String, Value>, what: &str) -> Result<usize, CliError> {
    field(obj, "order", what)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| format_err(format!("{what}: `order` must be a non-negative integer")))
}

/// The record kind, from `"kind"` or, failing that, from the fields present.
pub fn record_kind(value: &Value) -> Result<&'static str, CliError> {
    let obj = as_object(value, "record")?;
    match obj.get("kind").and_then(Value::as_str) {
        Some(KIND_HD) => Ok(KIND_HD),
        Some(KIND_TM) => Ok(KIND_TM),
        Some(KIND_DECOMPOSITION) => Ok(KIND_DECOMPOSITION),
        Some(other) => Err(format_err(format!("unknown record kind `{other}`"))),
        None if obj.contains_key("maps") => Ok(KIND_HD),
        None if obj.contains_key("values") => Ok(KIND_TM),
        None if obj.contains_key("rho") => Ok(KIND_DECOMPOSITION),
        None => Err(format_err("cannot tell the record kind")),
    }
}

pub fn poset_to_json(poset: &Poset) -> Value {
    let covers: Vec<Value> = poset
        .hasse_covers()
        .into_iter()
        .map(|(a, b)| json!([poset.label(a), poset.label(b)]))
        .collect();
    json!({ "elements": poset.labels(), "covers": covers })
}

pub fn poset_from_json(value: &Value) -> Result<Poset, CliError> {
    let obj = as_object(value, "poset")?;
    let elements = field(obj, "elements", "poset")?
        .as_array()
        .ok_or_else(|| format_err("poset `elements` must be a list"))?
        .iter()
        .map(|v| v.as_str().map(str::to_string).ok_or_else(|| format_err("element labels must be strings")))
        .collect::<Result<Vec<String>, _>>()?;
    let covers = match obj.get("covers") {
        None => Vec::new(),
        Some(v) => v
            .as_array()
            .ok_or_else(|| format_err("poset `covers` must be a list"))?
            .iter()
            .map(|pair| match pair.as_array().map(Vec::as_slice) {
                Some([Value::String(a), Value::String(b)]) => Ok((a.clone(), b.clone())),
                _ => Err(format_err(format!("cover {pair} must be a 2-element list of strings"))),
            })
            .collect::<Result<Vec<(String, String)>, _>>()?,
    };
    Ok(Poset::from_covers(&elements, &covers)?)
}

pub fn element_to_json(x: &AlgElement) -> Value {
    let poset = x.algebra().poset();
    let obj: Map<String, Value> = x
        .terms()
        .map(|(s, c)| (poset.segment_key(s), Value::String(c.to_string())))
        .collect();
    Value::Object(obj)
}

fn scalar_from_json(alg: &IncidenceAlgebra, value: &Value) -> Result<RingElem, CliError> {
    let text = value
        .as_str()
        .ok_or_else(|| format_err(format!("scalar {value} must be a string")))?;
    Ok(RingElem::parse(alg.ring(), text)?)
}

pub fn element_from_json(alg: &IncidenceAlgebra, value: &Value) -> Result<AlgElement, CliError> {
    let obj = as_object(value, "element")?;
    let entries = obj
        .iter()
        .map(|(key, v)| Ok((alg.poset().parse_segment_key(key)?, scalar_from_json(alg, v)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(alg.element(entries)?)
}

pub fn linmap_to_json(f: &LinMap) -> Value {
    let poset = f.algebra().poset();
    let obj: Map<String, Value> = f
        .images()
        .iter()
        .enumerate()
        .filter(|(_, image)| !image.is_zero())
        .map(|(s, image)| (poset.segment_key(s), element_to_json(image)))
        .collect();
    Value::Object(obj)
}

pub fn linmap_from_json(alg: &IncidenceAlgebra, value: &Value) -> Result<LinMap, CliError> {
    let obj = as_object(value, "linear map")?;
    let mut images = vec![alg.zero(); alg.poset().segment_count()];
    for (key, v) in obj {
        images[alg.poset().parse_segment_key(key)?] = element_from_json(alg, v)?;
    }
    Ok(LinMap::from_images(alg, images)?)
}

/// Writes `d_1, …, d_N`; `d_0` is implied.
pub fn hd_to_json(d: &HigherDerivation) -> Value {
    let mut obj = header(KIND_HD);
    obj.insert("order".into(), json!(d.order()));
    let maps: Vec<Value> = d.maps()[1..].iter().map(linmap_to_json).collect();
    obj.insert("maps".into(), Value::Array(maps));
    Value::Object(obj)
}

/// Accepts `maps` holding either `d_1, …, d_N` or `d_0, …, d_N` with `d_0`
/// the identity.
pub fn hd_from_json(alg: &IncidenceAlgebra, value: &Value) -> Result<HigherDerivation, CliError> {
    let obj = as_object(value, "higher derivation")?;
    check_header(obj, KIND_HD)?;
    let order = order_field(obj, "higher derivation")?;
    let maps = field(obj, "maps", "higher derivation")?
        .as_array()
        .ok_or_else(|| format_err("`maps` must be a list"))?
        .iter()
        .map(|m| linmap_from_json(alg, m))
        .collect::<Result<Vec<_>, _>>()?;
    let components = if maps.len() == order + 1 {
        if maps[0] != LinMap::identity(alg) {
            return Err(hder::Error::NonIdentityLeadingMap.into());
        }
        maps[1..].to_vec()
    } else if maps.len() == order {
        maps
    } else {
        return Err(format_err(format!("order {order} needs {order} or {} maps, found {}", order + 1, maps.len())));
    };
    Ok(HigherDerivation::from_components(alg, components)?)
}

pub fn tm_to_json(sigma: &TransitiveMap) -> Value {
    let poset = sigma.algebra().poset();
    let mut obj = header(KIND_TM);
    obj.insert("order".into(), json!(sigma.order()));
    let values: Map<String, Value> = (1..=sigma.order())
        .map(|n| {
            let row: Map<String, Value> = (0..poset.segment_count())
                .map(|s| (s, sigma.value_at(n, s)))
                .filter(|(_, v)| !v.is_zero())
                .map(|(s, v)| (poset.segment_key(s), Value::String(v.to_string())))
                .collect();
            (n.to_string(), Value::Object(row))
        })
        .collect();
    obj.insert("values".into(), Value::Object(values));
    Value::Object(obj)
}

pub fn tm_from_json(alg: &IncidenceAlgebra, value: &Value) -> Result<TransitiveMap, CliError> {
    let obj = as_object(value, "transitive map")?;
    check_header(obj, KIND_TM)?;
    let order = order_field(obj, "transitive map")?;
    let count = alg.poset().segment_count();
    let mut table = vec![vec![alg.ring().zero(); count]; order];
    let values = match obj.get("values") {
        None => Map::new(),
        Some(v) => as_object(v, "`values`")?.clone(),
    };
    for (n_text, row) in &values {
        let n: usize = n_text
            .parse()
            .ok()
            .filter(|n| (1..=order).contains(n))
            .ok_or_else(|| format_err(format!("order index `{n_text}` outside 1..={order}")))?;
        for (key, v) in as_object(row, "transitive map row")? {
            table[n - 1][alg.poset().parse_segment_key(key)?] = scalar_from_json(alg, v)?;
        }
    }
    Ok(TransitiveMap::from_table(alg, table)?)
}

pub fn decomposition_to_json(dec: &Decomposition, verified: bool) -> Value {
    let mut obj = header(KIND_DECOMPOSITION);
    obj.insert("order".into(), json!(dec.order()));
    let rho: Vec<Value> = dec.rho.elements().iter().map(element_to_json).collect();
    obj.insert("rho".into(), Value::Array(rho));
    obj.insert("sigma".into(), tm_to_json(&dec.sigma));
    obj.insert("verified".into(), json!(verified));
    Value::Object(obj)
}

/// The decomposition and its recorded `verified` flag.
pub fn decomposition_from_json(alg: &IncidenceAlgebra, value: &Value) -> Result<(Decomposition, bool), CliError> {
    let obj = as_object(value, "decomposition")?;
    check_header(obj, KIND_DECOMPOSITION)?;
    let rho = field(obj, "rho", "decomposition")?
        .as_array()
        .ok_or_else(|| format_err("`rho` must be a list"))?
        .iter()
        .map(|v| element_from_json(alg, v))
        .collect::<Result<Vec<_>, _>>()?;
    let sigma = tm_from_json(alg, field(obj, "sigma", "decomposition")?)?;
    if let Some(order) = obj.get("order") {
        if order.as_u64() != Some(rho.len() as u64) {
            return Err(format_err(format!("`order` {order} disagrees with {} rho entries", rho.len())));
        }
    }
    if sigma.order() != rho.len() {
        return Err(format_err("`rho` and `sigma` have different orders"));
    }
    let verified = obj.get("verified").and_then(Value::as_bool).unwrap_or(false);
    Ok((Decomposition { rho: InnerData::new(alg, rho)?, sigma }, verified))
}
