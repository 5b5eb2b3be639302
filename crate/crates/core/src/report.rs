//! JSON records written by the command-line tool.
//!
//! Maps are ordered, floats use the shortest round-trip form and rationals
//! are `"p/q"` strings, so equal inputs give byte-equal output.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::cocycles::EvalReport;
use crate::config::{error_json, VERSION};
use crate::diffeo::{GeneratorJson, Word};
use crate::error::Error;
use crate::scalar::Scalar;

/// Identifies the run that produced a record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub config_hash: String,
    pub seed: u64,
}

impl Provenance {
    /// Adds `config_hash`, `seed` and `version` to a JSON object.
    pub fn stamp(&self, mut v: Value) -> Value {
        if let Value::Object(map) = &mut v {
            map.insert("config_hash".into(), json!(self.config_hash));
            map.insert("seed".into(), json!(self.seed));
            map.insert("version".into(), json!(VERSION));
        }
        v
    }

    pub fn stamp_serialize<T: Serialize>(&self, value: &T) -> Value {
        self.stamp(serde_json::to_value(value).expect("report serializes"))
    }
}

/// One line of `eval` output: the evaluation or the error it raised.
pub fn eval_record<G: GeneratorJson, S: Scalar>(
    index: usize,
    names: &[String],
    words: &[Word<G>],
    result: &Result<EvalReport<S>, Error>,
) -> Value {
    let mut map = Map::new();
    map.insert("index".into(), json!(index));
    map.insert("tuple".into(), json!(names));
    map.insert(
        "words".into(),
        json!(words.iter().map(Word::to_spec).collect::<Vec<_>>()),
    );
    match result {
        Ok(r) => {
            map.insert("kind".into(), json!(r.kind.to_string()));
            map.insert("k".into(), json!(r.k));
            map.insert("raw".into(), r.raw.to_json());
            map.insert(
                "snapped".into(),
                r.snapped.map_or(Value::Null, |s| s.to_json()),
            );
            map.insert("residual".into(), json!(r.residual));
        }
        Err(e) => {
            map.insert("error".into(), error_json(e));
        }
    }
    Value::Object(map)
}

/// Serializes a record as one line.
pub fn line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("json");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycles::{CocycleKind, SnappedValue};
    use crate::diffeo::CircleRotation;
    use crate::scalar::Q;

    #[test]
    fn eval_record_fields() {
        let words = vec![Word::rotation(Q::new(1, 2))];
        let r = Ok(EvalReport {
            kind: CocycleKind::B,
            k: 0,
            raw: Q::new(-1, 2),
            snapped: Some(SnappedValue::Circle(Q::new(1, 2))),
            residual: 0.0,
        });
        let p = Provenance {
            config_hash: "abc".into(),
            seed: 7,
        };
        let v = p.stamp(eval_record(0, &["a".to_string()], &words, &r));
        assert_eq!(v["snapped"], json!("1/2"));
        assert_eq!(v["raw"], json!("-1/2"));
        assert_eq!(v["words"][0][0]["turns"], json!("1/2"));
        assert_eq!(v["config_hash"], json!("abc"));
        assert_eq!(v["version"], json!(VERSION));
        assert!(line(&v).ends_with("}\n"));
    }

    #[test]
    fn error_record() {
        let v = eval_record::<CircleRotation, Q>(
            3,
            &[],
            &[],
            &Err(Error::AntipodalDegeneracy { gap: 0.0 }),
        );
        assert_eq!(v["error"]["kind"], json!("antipodal_degeneracy"));
        assert!(v.get("snapped").is_none());
    }
}
