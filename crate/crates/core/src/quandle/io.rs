use serde::{Deserialize, Serialize};

use super::{AlexanderData, QuandleTable};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct QuandleJson {
    size: usize,
    table: Vec<Vec<u32>>,
    labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alexander: Option<AlexanderData>,
}

pub fn quandle_to_json(q: &QuandleTable) -> serde_json::Value {
    serde_json::to_value(QuandleJson {
        size: q.size(),
        table: q.table(),
        labels: q.labels().to_vec(),
        alexander: q.alexander.clone(),
    })
    .expect("quandle serializes")
}

/// Parses and validates a quandle; the axioms are checked.
pub fn quandle_from_json(v: &serde_json::Value) -> Result<QuandleTable> {
    let j: QuandleJson = serde_json::from_value(v.clone())?;
    if j.table.len() != j.size {
        return Err(Error::Invalid(format!("size {} but {} rows", j.size, j.table.len())));
    }
    let mut q = QuandleTable::new(j.table, Some(j.labels))?;
    q.check_axioms()?;
    if let Some(a) = j.alexander {
        let rebuilt = super::make_alexander(&a.moduli, &a.matrix)?;
        if rebuilt.table() != q.table() {
            return Err(Error::Invalid("alexander data does not match the table".into()));
        }
        q.alexander = Some(a);
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::make_dihedral;

    #[test]
    fn round_trip() {
        let q = make_dihedral(3).unwrap();
        let v = quandle_to_json(&q);
        assert_eq!(v["size"], 3);
        assert_eq!(quandle_from_json(&v).unwrap(), q);
    }

    #[test]
    fn rejects_non_quandle() {
        let v = serde_json::json!({"size": 2, "table": [[1, 1], [0, 0]], "labels": ["a", "b"]});
        assert!(quandle_from_json(&v).is_err());
    }
}
