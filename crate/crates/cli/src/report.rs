use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use artinsum::decompose::{DecompositionReport, SplitCheck};
use artinsum::quotient::ArtinAlgebra;
use artinsum::resolution::BettiData;

pub const SCHEMA: u64 = 1;

pub fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            h.update([0u8]);
        }
        h.update(p);
    }
    hex::encode(h.finalize())
}

/// Top-level object with the fields every command shares.
pub fn envelope(command: &str, digest: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m.insert("input_digest".into(), json!(digest));
    m
}

pub fn presentation(a: &ArtinAlgebra) -> Value {
    json!({
        "field": a.field().to_string(),
        "vars": a.ring().vars(),
        "ideal": a.reduced_basis().iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

pub fn invariants(a: &ArtinAlgebra) -> Value {
    json!({
        "length": a.length(),
        "embedding_dimension": a.embedding_dimension(),
        "loewy_length": a.loewy_length(),
        "type": a.socle_type(),
        "hilbert_function": a.hilbert_function(),
        "gorenstein": a.is_gorenstein(),
    })
}

pub fn betti(b: &BettiData) -> Value {
    json!({
        "betti": b.betti,
        "truncation": b.truncation,
        "epsilon1": b.epsilon1(),
        "epsilon2": b.epsilon2(),
        "minimal": b.minimal,
        "exact": b.exact,
        "inverse_poincare": b.poincare().reciprocal().map(|s| s.to_string()),
    })
}

pub fn decomposition(rep: &DecompositionReport) -> Value {
    let mut m = Map::new();
    m.insert("status".into(), json!(rep.status.as_str()));
    m.insert("trivial".into(), json!(rep.trivial));
    m.insert(
        "components".into(),
        match &rep.components {
            Some((r, s)) => json!({ "R": presentation(r), "S": presentation(s) }),
            None => Value::Null,
        },
    );
    m.insert("unit".into(), json!(rep.unit.as_ref().map(ToString::to_string)));
    m.insert(
        "coordinate_change".into(),
        match &rep.coordinate_change {
            Some(cc) => {
                let pairs = |names: &[String], polys: &[artinsum::Polynomial]| {
                    names
                        .iter()
                        .zip(polys)
                        .map(|(n, p)| (n.clone(), json!(p.to_string())))
                        .collect::<Map<_, _>>()
                };
                json!({
                    "forward": pairs(cc.new_ring.vars(), &cc.forward),
                    "linear": pairs(cc.new_ring.vars(), &cc.linear),
                    "inverse": pairs(cc.old_ring.vars(), &cc.inverse),
                })
            }
            None => Value::Null,
        },
    );
    m.insert("certificates".into(), json!(rep.certificates.iter().map(|c| c.name()).collect::<Vec<_>>()));
    m.insert(
        "verified_identities".into(),
        json!(rep.identities.iter().map(|i| json!({ "identity": i.name, "holds": i.holds })).collect::<Vec<_>>()),
    );
    m.insert("reasons".into(), json!(rep.reasons));
    Value::Object(m)
}

pub fn split(c: &SplitCheck) -> Value {
    json!({
        "status": if c.ok { "decomposed" } else { "inconclusive" },
        "ok": c.ok,
        "offending": c.offending.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "components": { "R": presentation(&c.r), "S": presentation(&c.s) },
        "component_types": { "R": c.r.socle_type(), "S": c.s.socle_type() },
        "unit": c.unit.as_ref().map(ToString::to_string),
        "length_identity": c.length_identity,
        "reconstructs": c.reconstructs,
        "reasons": c.reasons,
    })
}

/// Plain `key  value` lines for a JSON object, nested objects indented.
pub fn table(v: &Value, indent: usize, out: &mut String) {
    let Value::Object(m) = v else {
        return;
    };
    let width = m.keys().map(String::len).max().unwrap_or(0);
    for (k, val) in m {
        if matches!(k.as_str(), "schema") {
            continue;
        }
        match val {
            Value::Object(inner) if !inner.is_empty() => {
                out.push_str(&format!("{:indent$}{k}\n", ""));
                table(val, indent + 2, out);
            }
            _ => out.push_str(&format!("{:indent$}{k:<width$}  {}\n", "", scalar(val))),
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(a) => {
            let parts: Vec<String> = a.iter().map(scalar).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Object(m) => {
            let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}: {}", scalar(v))).collect();
            format!("{{{}}}", parts.join(", "))
        }
        other => other.to_string(),
    }
}
