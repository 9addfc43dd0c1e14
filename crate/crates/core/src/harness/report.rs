use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Summary of one run. Serializes to a flat JSON object with sorted keys.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub n: usize,
    pub updates_applied: usize,
    pub engine: String,
    pub verify_mode: String,
    pub verified: bool,
    pub final_matching_size: usize,
    pub elementary_ops_total: u64,
    pub elementary_ops_per_update: f64,
    pub wall_time_ns: u64,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let v = json!({
            "n": self.n,
            "updates_applied": self.updates_applied,
            "engine": self.engine,
            "verify_mode": self.verify_mode,
            "verified": self.verified,
            "final_matching_size": self.final_matching_size,
            "elementary_ops_total": self.elementary_ops_total,
            "elementary_ops_per_update": self.elementary_ops_per_update,
            "wall_time_ns": self.wall_time_ns,
        });
        v.to_string()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        let field = |k: &str| v.get(k).ok_or_else(|| Error::Parse { line: 1, msg: format!("missing key '{}'", k) });
        let uint = |k: &str| -> Result<u64> {
            field(k)?.as_u64().ok_or_else(|| Error::Parse { line: 1, msg: format!("'{}' is not an unsigned integer", k) })
        };
        let text = |k: &str| -> Result<String> {
            Ok(field(k)?
                .as_str()
                .ok_or_else(|| Error::Parse { line: 1, msg: format!("'{}' is not a string", k) })?
                .to_string())
        };
        Ok(RunReport {
            n: uint("n")? as usize,
            updates_applied: uint("updates_applied")? as usize,
            engine: text("engine")?,
            verify_mode: text("verify_mode")?,
            verified: field("verified")?
                .as_bool()
                .ok_or_else(|| Error::Parse { line: 1, msg: "'verified' is not a bool".into() })?,
            final_matching_size: uint("final_matching_size")? as usize,
            elementary_ops_total: uint("elementary_ops_total")?,
            elementary_ops_per_update: field("elementary_ops_per_update")?
                .as_f64()
                .ok_or_else(|| Error::Parse { line: 1, msg: "'elementary_ops_per_update' is not a number".into() })?,
            wall_time_ns: uint("wall_time_ns")?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunReport {
        RunReport {
            n: 64,
            updates_applied: 10,
            engine: "full".into(),
            verify_mode: "each".into(),
            verified: true,
            final_matching_size: 5,
            elementary_ops_total: 1234,
            elementary_ops_per_update: 123.4,
            wall_time_ns: 99,
        }
    }

    #[test]
    fn keys_are_sorted() {
        let s = sample().to_json();
        let keys = [
            "elementary_ops_per_update",
            "elementary_ops_total",
            "engine",
            "final_matching_size",
            "n",
            "updates_applied",
            "verified",
            "verify_mode",
            "wall_time_ns",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| s.find(&format!("\"{}\":", k)).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{}", s);
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        assert_eq!(RunReport::from_json(&r.to_json()).unwrap(), r);
    }
}
