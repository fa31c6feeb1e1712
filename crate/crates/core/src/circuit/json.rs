//! Circuit JSON schema:
//! `{"qubits": n, "clbits": m, "ops": [{"kind": "gate", "name": "H", "targets": [0]}, ...]}`.

use serde::{Deserialize, Serialize};

use super::{Circuit, CircuitOp};
use crate::error::Error;
use crate::gate::GateName;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitJson {
    pub qubits: usize,
    #[serde(default)]
    pub clbits: usize,
    pub ops: Vec<OpJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum OpJson {
    Gate { name: String, targets: Vec<usize> },
    Measure { qubit: usize, clbit: usize },
    Cond { name: String, targets: Vec<usize>, clbit: usize },
}

fn schema(path: String, err: impl ToString) -> Error {
    Error::Schema {
        path,
        message: err.to_string(),
    }
}

impl TryFrom<CircuitJson> for Circuit {
    type Error = Error;

    fn try_from(raw: CircuitJson) -> Result<Self, Error> {
        let mut circuit = Circuit::new(raw.qubits, raw.clbits).map_err(|e| schema("qubits".into(), e))?;
        for (i, op) in raw.ops.into_iter().enumerate() {
            let (op, field) = match op {
                OpJson::Gate { name, targets } => {
                    let gate = name.parse::<GateName>().map_err(|e| schema(format!("ops[{i}].name"), e))?;
                    (CircuitOp::Gate { gate, targets }, "targets")
                }
                OpJson::Measure { qubit, clbit } => (CircuitOp::Measure { qubit, clbit }, "qubit"),
                OpJson::Cond { name, targets, clbit } => {
                    let gate = name.parse::<GateName>().map_err(|e| schema(format!("ops[{i}].name"), e))?;
                    (CircuitOp::Conditional { gate, targets, clbit }, "targets")
                }
            };
            circuit.push(op).map_err(|e| {
                let field = match e {
                    Error::ClbitOutOfRange { .. } | Error::ClbitRewritten(_) | Error::UnwrittenClbit(_) => "clbit",
                    _ => field,
                };
                schema(format!("ops[{i}].{field}"), e)
            })?;
        }
        Ok(circuit)
    }
}

impl From<&Circuit> for CircuitJson {
    fn from(c: &Circuit) -> Self {
        let ops = c
            .ops()
            .iter()
            .map(|op| match op {
                CircuitOp::Gate { gate, targets } => OpJson::Gate {
                    name: gate.symbol().to_string(),
                    targets: targets.clone(),
                },
                CircuitOp::Measure { qubit, clbit } => OpJson::Measure {
                    qubit: *qubit,
                    clbit: *clbit,
                },
                CircuitOp::Conditional { gate, targets, clbit } => OpJson::Cond {
                    name: gate.symbol().to_string(),
                    targets: targets.clone(),
                    clbit: *clbit,
                },
            })
            .collect();
        CircuitJson {
            qubits: c.num_qubits(),
            clbits: c.num_clbits(),
            ops,
        }
    }
}

impl Serialize for Circuit {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CircuitJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Circuit {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = CircuitJson::deserialize(deserializer)?;
        Circuit::try_from(raw).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn parses_documented_shape() {
        let v = json!({"qubits": 4, "clbits": 2, "ops": [
            {"kind": "gate", "name": "H", "targets": [0]},
            {"kind": "measure", "qubit": 0, "clbit": 1},
            {"kind": "cond", "name": "Z", "targets": [3], "clbit": 1}
        ]});
        let c: Circuit = serde_json::from_value(v.clone()).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(serde_json::to_value(&c).unwrap(), v);
    }

    #[test]
    fn reports_offending_path() {
        let raw: CircuitJson = serde_json::from_value(json!({"qubits": 2, "clbits": 1, "ops": [
            {"kind": "gate", "name": "H", "targets": [0]},
            {"kind": "gate", "name": "CNOT", "targets": [0, 7]}
        ]}))
        .unwrap();
        match Circuit::try_from(raw) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "ops[1].targets"),
            other => panic!("unexpected {other:?}"),
        }
        let raw: CircuitJson = serde_json::from_value(json!({"qubits": 1, "clbits": 1, "ops": [
            {"kind": "cond", "name": "X", "targets": [0], "clbit": 0}
        ]}))
        .unwrap();
        match Circuit::try_from(raw) {
            Err(Error::Schema { path, message }) => {
                assert_eq!(path, "ops[0].clbit");
                assert!(message.contains("before"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let raw: CircuitJson = serde_json::from_value(json!({"qubits": 1, "ops": [
            {"kind": "gate", "name": "RX", "targets": [0]}
        ]}))
        .unwrap();
        assert!(matches!(Circuit::try_from(raw), Err(Error::Schema { path, .. }) if path == "ops[0].name"));
    }
}
