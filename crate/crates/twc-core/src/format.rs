//! Reading and writing channel spec files.
//!
//! A spec file is a JSON object with integer alphabet sizes `r1, r2, s1, s2`,
//! an optional `name`, and the channel law as `joint` (nested arrays indexed
//! `[x1][x2][y1][y2]`), as `marginals` (`forward` indexed `[x2][x1][y2]`,
//! `backward` indexed `[x1][x2][y1]`), or both — in which case the marginals
//! must agree with the ones the joint induces. Probabilities may be JSON
//! numbers or fraction strings like `"1/3"`.

use std::path::Path;

use serde_json::Value;

use crate::channel::{Direction, JointTensor, MarginalFamily, TransitionMatrix, TwcSpec};
use crate::error::{Error, Result};
use crate::prob::ProbVec;

/// Parses a channel spec from JSON text.
pub fn parse_spec(text: &str) -> Result<TwcSpec> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let obj = root
        .as_object()
        .ok_or_else(|| Error::Parse("top level must be a JSON object".into()))?;

    for key in obj.keys() {
        if !matches!(key.as_str(), "name" | "r1" | "r2" | "s1" | "s2" | "joint" | "marginals") {
            return Err(Error::Parse(format!("unknown top-level field `{key}`")));
        }
    }

    let name = match obj.get("name") {
        None => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(Error::Parse("`name` must be a string".into())),
    };
    let size = |field: &str| -> Result<usize> {
        let v = obj
            .get(field)
            .ok_or_else(|| Error::Parse(format!("missing required field `{field}`")))?;
        let n = v
            .as_u64()
            .ok_or_else(|| Error::Parse(format!("`{field}` must be a positive integer")))?;
        if n == 0 || n > 1024 {
            return Err(Error::Parse(format!("`{field}` = {n} outside the supported range 1..=1024")));
        }
        Ok(n as usize)
    };
    let (r1, r2, s1, s2) = (size("r1")?, size("r2")?, size("s1")?, size("s2")?);

    let joint = obj
        .get("joint")
        .map(|v| parse_joint(v, r1, r2, s1, s2))
        .transpose()?;
    let marginals = obj
        .get("marginals")
        .map(|v| parse_marginals(v, r1, r2, s1, s2))
        .transpose()?;

    match (joint, marginals) {
        (None, None) => Err(Error::Parse(
            "spec must provide `joint`, `marginals`, or both".into(),
        )),
        (Some(joint), None) => TwcSpec::from_joint(name, joint),
        (None, Some((forward, backward))) => TwcSpec::from_marginals(name, forward, backward),
        (Some(joint), Some((forward, backward))) => {
            TwcSpec::from_parts(name, joint, forward, backward)
        }
    }
}

/// Reads and parses a channel spec file.
pub fn load_spec(path: impl AsRef<Path>) -> Result<TwcSpec> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_spec(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Serializes a spec to the JSON file format.
///
/// The marginal families are always written; the joint tensor is written when
/// the spec carries one. Reloading the output reproduces the spec exactly:
/// probabilities are emitted as shortest round-trip decimals.
pub fn spec_to_json(spec: &TwcSpec) -> String {
    let mut root = serde_json::Map::new();
    if !spec.name().is_empty() {
        root.insert("name".into(), Value::String(spec.name().to_string()));
    }
    root.insert("r1".into(), Value::from(spec.r1() as u64));
    root.insert("r2".into(), Value::from(spec.r2() as u64));
    root.insert("s1".into(), Value::from(spec.s1() as u64));
    root.insert("s2".into(), Value::from(spec.s2() as u64));

    if let Some(joint) = spec.joint() {
        let tensor: Vec<Value> = (0..spec.r1())
            .map(|x1| {
                Value::Array(
                    (0..spec.r2())
                        .map(|x2| {
                            Value::Array(
                                (0..spec.s1())
                                    .map(|y1| {
                                        Value::Array(
                                            (0..spec.s2())
                                                .map(|y2| {
                                                    Value::from(joint.prob(x1, x2, y1, y2))
                                                })
                                                .collect(),
                                        )
                                    })
                                    .collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect();
        root.insert("joint".into(), Value::Array(tensor));
    }

    let family_value = |family: &MarginalFamily| -> Value {
        Value::Array(
            (0..family.num_states())
                .map(|state| {
                    let m = family.state(state);
                    Value::Array(
                        (0..m.input_size())
                            .map(|x| {
                                Value::Array(
                                    m.row(x).masses().iter().map(|&p| Value::from(p)).collect(),
                                )
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    };
    let mut marginals = serde_json::Map::new();
    marginals.insert("forward".into(), family_value(spec.forward()));
    marginals.insert("backward".into(), family_value(spec.backward()));
    root.insert("marginals".into(), Value::Object(marginals));

    let mut text = serde_json::to_string_pretty(&Value::Object(root))
        .expect("spec values contain no non-serializable numbers");
    text.push('\n');
    text
}

/// Writes a spec to a file in the JSON format.
pub fn save_spec(spec: &TwcSpec, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, spec_to_json(spec)).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Parses one probability: a JSON number in [0, 1] or a fraction string.
fn parse_prob(value: &Value, path: &str) -> Result<f64> {
    match value {
        Value::Number(n) => {
            let p = n
                .as_f64()
                .ok_or_else(|| Error::Parse(format!("{path}: number out of f64 range")))?;
            Ok(p)
        }
        Value::String(s) => parse_fraction(s)
            .ok_or_else(|| Error::Parse(format!("{path}: cannot parse `{s}` as a fraction"))),
        _ => Err(Error::Parse(format!("{path}: expected a number or fraction string"))),
    }
}

/// Parses `"a/b"` (integer numerator and denominator) or a plain decimal.
fn parse_fraction(s: &str) -> Option<f64> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.trim().parse().ok()?;
        let den: i64 = den.trim().parse().ok()?;
        if den == 0 {
            return None;
        }
        Some(num as f64 / den as f64)
    } else {
        s.parse::<f64>().ok()
    }
}

fn parse_prob_array<'a>(value: &'a Value, len: usize, path: &str) -> Result<&'a [Value]> {
    let arr = value
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{path}: expected an array")))?;
    if arr.len() != len {
        return Err(Error::Parse(format!(
            "{path}: expected {len} entries, found {}",
            arr.len()
        )));
    }
    Ok(arr)
}

fn parse_joint(value: &Value, r1: usize, r2: usize, s1: usize, s2: usize) -> Result<JointTensor> {
    let mut probs = Vec::with_capacity(r1 * r2 * s1 * s2);
    for (x1, per_x1) in parse_prob_array(value, r1, "joint")?.iter().enumerate() {
        let path = format!("joint[{x1}]");
        for (x2, per_x2) in parse_prob_array(per_x1, r2, &path)?.iter().enumerate() {
            let path = format!("{path}[{x2}]");
            for (y1, per_y1) in parse_prob_array(per_x2, s1, &path)?.iter().enumerate() {
                let path = format!("{path}[{y1}]");
                for (y2, entry) in parse_prob_array(per_y1, s2, &path)?.iter().enumerate() {
                    probs.push(parse_prob(entry, &format!("{path}[{y2}]"))?);
                }
            }
        }
    }
    JointTensor::new(r1, r2, s1, s2, probs)
}

fn parse_family(
    value: &Value,
    direction: Direction,
    num_states: usize,
    sender: usize,
    outputs: usize,
    label: &str,
) -> Result<MarginalFamily> {
    let path = format!("marginals.{label}");
    let mut states = Vec::with_capacity(num_states);
    for (state, per_state) in parse_prob_array(value, num_states, &path)?.iter().enumerate() {
        let path = format!("{path}[{state}]");
        let mut rows = Vec::with_capacity(sender);
        for (x, per_row) in parse_prob_array(per_state, sender, &path)?.iter().enumerate() {
            let path = format!("{path}[{x}]");
            let mut row = Vec::with_capacity(outputs);
            for (y, entry) in parse_prob_array(per_row, outputs, &path)?.iter().enumerate() {
                row.push(parse_prob(entry, &format!("{path}[{y}]"))?);
            }
            rows.push(ProbVec::new(row).map_err(|e| {
                Error::Parse(format!("{path}: row is not a probability distribution: {e}"))
            })?);
        }
        states.push(TransitionMatrix::new(rows)?);
    }
    MarginalFamily::new(direction, states)
}

fn parse_marginals(
    value: &Value,
    r1: usize,
    r2: usize,
    s1: usize,
    s2: usize,
) -> Result<(MarginalFamily, MarginalFamily)> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("marginals: expected an object".into()))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "forward" | "backward") {
            return Err(Error::Parse(format!("marginals: unknown field `{key}`")));
        }
    }
    let forward_value = obj
        .get("forward")
        .ok_or_else(|| Error::Parse("marginals: missing `forward`".into()))?;
    let backward_value = obj
        .get("backward")
        .ok_or_else(|| Error::Parse("marginals: missing `backward`".into()))?;
    let forward = parse_family(forward_value, Direction::OneToTwo, r2, r1, s2, "forward")?;
    let backward = parse_family(backward_value, Direction::TwoToOne, r1, r2, s1, "backward")?;
    Ok((forward, backward))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{shannon_ptt, table2};

    #[test]
    fn parses_a_marginal_spec_with_fractions() {
        let text = r#"{
            "name": "fractions",
            "r1": 3, "r2": 3, "s1": 2, "s2": 2,
            "marginals": {
                "forward": [
                    [["1/2", "1/2"], [1, 0], [0, 1]],
                    [["1/2", "1/2"], ["1/2", "1/2"], ["1/2", "1/2"]],
                    [["1/2", "1/2"], ["1/2", "1/2"], ["1/2", "1/2"]]
                ],
                "backward": [
                    [["1/2", "1/2"], [1, 0], [0, 1]],
                    [["1/2", "1/2"], ["1/2", "1/2"], ["1/2", "1/2"]],
                    [["1/2", "1/2"], ["1/2", "1/2"], ["1/2", "1/2"]]
                ]
            }
        }"#;
        let spec = parse_spec(text).unwrap();
        assert_eq!(spec.name(), "fractions");
        assert_eq!((spec.r1(), spec.r2(), spec.s1(), spec.s2()), (3, 3, 2, 2));
        assert!(spec.joint().is_none());
        // Identical to the built-in classic channel's marginals.
        let reference = shannon_ptt();
        assert_eq!(spec.forward(), reference.forward());
        assert_eq!(spec.backward(), reference.backward());
    }

    #[test]
    fn parse_errors_carry_field_context() {
        let missing = r#"{"r1": 3, "r2": 3, "s1": 2}"#;
        let err = parse_spec(missing).unwrap_err();
        assert!(err.to_string().contains("s2"), "{err}");

        let no_law = r#"{"r1": 3, "r2": 3, "s1": 2, "s2": 2}"#;
        let err = parse_spec(no_law).unwrap_err();
        assert!(err.to_string().contains("joint"), "{err}");

        let short_row = r#"{
            "r1": 3, "r2": 3, "s1": 2, "s2": 2,
            "marginals": {
                "forward": [
                    [["1/2", "1/2"], [1], [0, 1]],
                    [["1/2", "1/2"], ["1/2", "1/2"], ["1/2", "1/2"]],
                    [["1/2", "1/2"], ["1/2", "1/2"], ["1/2", "1/2"]]
                ],
                "backward": [
                    [["1/2", "1/2"], [1, 0], [0, 1]],
                    [["1/2", "1/2"], ["1/2", "1/2"], ["1/2", "1/2"]],
                    [["1/2", "1/2"], ["1/2", "1/2"], ["1/2", "1/2"]]
                ]
            }
        }"#;
        let err = parse_spec(short_row).unwrap_err();
        assert!(
            err.to_string().contains("marginals.forward[0][1]"),
            "{err}"
        );

        let bad_fraction = r#"{
            "r1": 3, "r2": 3, "s1": 2, "s2": 2,
            "marginals": {
                "forward": [
                    [["1/2", "1/2"], ["1/o", "0"], [0, 1]],
                    [["1/2", "1/2"], ["1/2", "1/2"], ["1/2", "1/2"]],
                    [["1/2", "1/2"], ["1/2", "1/2"], ["1/2", "1/2"]]
                ],
                "backward": [
                    [["1/2", "1/2"], [1, 0], [0, 1]],
                    [["1/2", "1/2"], ["1/2", "1/2"], ["1/2", "1/2"]],
                    [["1/2", "1/2"], ["1/2", "1/2"], ["1/2", "1/2"]]
                ]
            }
        }"#;
        let err = parse_spec(bad_fraction).unwrap_err();
        assert!(err.to_string().contains("1/o"), "{err}");

        let not_json = "{ r1: 3";
        assert!(matches!(parse_spec(not_json), Err(Error::Parse(_))));
    }

    #[test]
    fn rejects_rows_that_do_not_sum_to_one() {
        let text = r#"{
            "r1": 3, "r2": 3, "s1": 2, "s2": 2,
            "marginals": {
                "forward": [
                    [["1/2", "1/2"], ["0.6", "0.5"], [0, 1]],
                    [["1/2", "1/2"], ["1/2", "1/2"], ["1/2", "1/2"]],
                    [["1/2", "1/2"], ["1/2", "1/2"], ["1/2", "1/2"]]
                ],
                "backward": [
                    [["1/2", "1/2"], [1, 0], [0, 1]],
                    [["1/2", "1/2"], ["1/2", "1/2"], ["1/2", "1/2"]],
                    [["1/2", "1/2"], ["1/2", "1/2"], ["1/2", "1/2"]]
                ]
            }
        }"#;
        let err = parse_spec(text).unwrap_err();
        assert!(err.to_string().contains("marginals.forward[0][1]"), "{err}");
    }

    #[test]
    fn round_trips_the_builtins_exactly() {
        for spec in [
            shannon_ptt(),
            table2(0.0, 0.15, 0.0, 0.15).unwrap(),
            table2(0.1, 0.0, 0.2, 0.05).unwrap(),
        ] {
            let text = spec_to_json(&spec);
            let reloaded = parse_spec(&text).unwrap();
            assert_eq!(reloaded, spec, "round trip changed the spec");
            // Serialization is idempotent, hence byte-stable.
            assert_eq!(spec_to_json(&reloaded), text);
        }
    }

    #[test]
    fn joint_and_marginals_cross_validate() {
        let spec = shannon_ptt();
        let mut root: Value = serde_json::from_str(&spec_to_json(&spec)).unwrap();
        // Rewriting one marginal row (keeping it a valid distribution) breaks
        // agreement with the joint tensor.
        root["marginals"]["forward"][0][1] = serde_json::json!([0.9, 0.1]);
        let err = parse_spec(&root.to_string()).unwrap_err();
        assert!(matches!(err, Error::Structure(_)), "{err}");
    }

    #[test]
    fn load_and_save_round_trip_through_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("channel.json");
        let spec = table2(0.1, 0.0, 0.0, 0.01).unwrap();
        save_spec(&spec, &path).unwrap();
        let reloaded = load_spec(&path).unwrap();
        assert_eq!(reloaded, spec);

        let err = load_spec("/nonexistent/channel.json").unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }
}
