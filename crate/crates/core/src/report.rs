//! JSON report assembly with deterministic serialization.
//!
//! Every verification command emits a report with a versioned schema. Rationals are
//! serialized as exact fraction strings (e.g. `"3/7"`, `"-2"`), partitions as arrays of
//! parts, and truncated series as coefficient lists, so reports are exact and
//! byte-identical for identical configuration and seed (`serde_json` maps are
//! key-sorted).

use serde_json::{json, Map, Value};

use crate::partitions::Partition;
use crate::scalar::Rat;
use crate::series::TruncSeries;

/// Current report schema version.
pub const SCHEMA: u64 = 1;

/// Exact fraction string for a rational: `"3/7"`, `"-2"`.
pub fn rat_string(r: &Rat) -> String {
    r.to_string()
}

/// A JSON array of exact fraction strings.
pub fn rats_value(rs: &[Rat]) -> Value {
    Value::Array(rs.iter().map(|r| Value::String(rat_string(r))).collect())
}

/// A partition as a JSON array of parts, e.g. `[3,1]`.
pub fn partition_value(p: &Partition) -> Value {
    Value::Array(p.parts().iter().map(|&v| json!(v)).collect())
}

/// A list of partitions.
pub fn partitions_value(ps: &[Partition]) -> Value {
    Value::Array(ps.iter().map(partition_value).collect())
}

/// A truncated series as its exact coefficient list `[c_0, …, c_D]`.
pub fn series_value(s: &TruncSeries) -> Value {
    rats_value(s.coeffs())
}

/// Assembles the standard report envelope:
/// `{schema, identity, parameters, truncation, contributing_partitions, pass}`.
///
/// `parameters` carries the seeded evaluation data (seed, rational draws, ranks);
/// `truncation` is the series order `D` when the check works modulo t^{D+1}, else null.
pub fn report(
    identity: &str,
    parameters: Value,
    truncation: Option<usize>,
    contributing: &[Partition],
    pass: bool,
) -> Value {
    json!({
        "schema": SCHEMA,
        "identity": identity,
        "parameters": parameters,
        "truncation": truncation,
        "contributing_partitions": partitions_value(contributing),
        "pass": pass,
    })
}

/// Renders a report as a JSON string (compact or pretty). Key order is deterministic.
pub fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v).expect("report serialization cannot fail")
    } else {
        serde_json::to_string(v).expect("report serialization cannot fail")
    }
}

/// Renders a report stream as CSV with one `name,pass,detail` row per check.
/// Each entry must be an object with `identity`/`pass` fields (extra fields allowed).
pub fn render_csv(reports: &[Value]) -> String {
    let mut out = String::from("check,pass,detail\n");
    for r in reports {
        let name = r
            .get("identity")
            .and_then(Value::as_str)
            .unwrap_or("unknown");
        let pass = r.get("pass").and_then(Value::as_bool).unwrap_or(false);
        let detail = r
            .get("detail")
            .and_then(Value::as_str)
            .unwrap_or("")
            .replace(',', ";");
        out.push_str(&format!("{name},{pass},{detail}\n"));
    }
    out
}

/// Convenience builder for extra key/value pairs in the `parameters` slot.
pub fn params(entries: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in entries {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratq};

    #[test]
    fn fraction_strings_are_exact() {
        assert_eq!(rat_string(&ratq(3, 7)), "3/7");
        assert_eq!(rat_string(&rat(-2)), "-2");
        assert_eq!(rat_string(&ratq(-6, 4)), "-3/2");
    }

    #[test]
    fn report_envelope_is_deterministic() {
        let p = Partition::new(vec![2, 1]).unwrap();
        let r1 = report(
            "cauchy",
            params(vec![("seed", json!(7)), ("q", json!(rat_string(&ratq(1, 2))))]),
            Some(8),
            &[p.clone()],
            true,
        );
        let r2 = report(
            "cauchy",
            params(vec![("seed", json!(7)), ("q", json!(rat_string(&ratq(1, 2))))]),
            Some(8),
            &[p],
            true,
        );
        assert_eq!(render(&r1, false), render(&r2, false));
        assert_eq!(r1["schema"], json!(1));
        assert_eq!(r1["contributing_partitions"], json!([[2, 1]]));
    }

    #[test]
    fn csv_rows_escape_commas() {
        let rows = vec![json!({"identity": "ybe", "pass": true, "detail": "a,b"})];
        assert_eq!(render_csv(&rows), "check,pass,detail\nybe,true,a;b\n");
    }
}
