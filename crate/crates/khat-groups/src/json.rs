//! The JSON interchange format for groups:
//!
//! ```json
//! { "ambient_dim": 2,
//!   "generators": [ { "vector": ["1", "0"], "primes": [2] },
//!                   { "vector": ["0", "1/3"], "primes": [5] } ] }
//! ```
//!
//! Vector entries are rationals in lowest terms, primes are sorted JSON
//! integers. Canonicalization runs on load; serialization always emits the
//! canonical presentation, so load/serialize round-trips are stable.

use crate::error::GroupError;
use crate::group::LocalizedGroup;
use crate::primes::PrimeSet;
use khat_linalg::{format_rational, parse_rational, QVector};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct GeneratorJson {
    primes: Vec<serde_json::Number>,
    vector: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    ambient_dim: usize,
    generators: Vec<GeneratorJson>,
}

fn prime_from_number(n: &serde_json::Number) -> Result<BigUint, GroupError> {
    let s = n.to_string();
    s.parse::<BigUint>()
        .map_err(|_| GroupError::InvalidData(format!("prime entry {s} is not a nonnegative integer")))
}

impl LocalizedGroup {
    pub fn to_json_value(&self) -> serde_json::Value {
        let gens = self
            .generators()
            .iter()
            .map(|g| GeneratorJson {
                primes: g
                    .primes()
                    .iter()
                    .map(|p| {
                        serde_json::Number::from_string_unchecked(p.to_string())
                    })
                    .collect(),
                vector: g.vector().iter().map(format_rational).collect(),
            })
            .collect();
        serde_json::to_value(GroupJson { ambient_dim: self.ambient_dim(), generators: gens })
            .expect("group serialization cannot fail")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serialization cannot fail")
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<LocalizedGroup, GroupError> {
        let parsed: GroupJson = serde_json::from_value(value.clone())
            .map_err(|e| GroupError::InvalidData(format!("malformed group JSON: {e}")))?;
        let mut raw = Vec::new();
        for (i, g) in parsed.generators.iter().enumerate() {
            let mut v: QVector = Vec::with_capacity(g.vector.len());
            for (j, s) in g.vector.iter().enumerate() {
                v.push(parse_rational(s).map_err(|e| {
                    GroupError::InvalidData(format!("generator {i}, coordinate {j}: {e}"))
                })?);
            }
            let mut primes = Vec::new();
            for n in &g.primes {
                primes.push(prime_from_number(n)?);
            }
            let primes = PrimeSet::new(primes).map_err(|e| {
                GroupError::InvalidData(format!("generator {i}: {e}"))
            })?;
            if v.len() != parsed.ambient_dim {
                return Err(GroupError::InvalidData(format!(
                    "generator {i}: vector length {} != ambient_dim {}",
                    v.len(),
                    parsed.ambient_dim
                )));
            }
            raw.push((v, primes));
        }
        LocalizedGroup::new(parsed.ambient_dim, raw)
    }

    pub fn from_json_str(s: &str) -> Result<LocalizedGroup, GroupError> {
        let value: serde_json::Value = serde_json::from_str(s)
            .map_err(|e| GroupError::InvalidData(format!("invalid JSON: {e}")))?;
        LocalizedGroup::from_json_value(&value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use khat_linalg::rat_int;

    #[test]
    fn round_trip_preserves_group() {
        let g = LocalizedGroup::new(
            2,
            vec![
                (vec![rat_int(2), rat_int(0)], PrimeSet::from_u64([2]).unwrap()),
                (vec![rat_int(0), rat_int(1)], PrimeSet::from_u64([3, 7]).unwrap()),
            ],
        )
        .unwrap();
        let s = g.to_json_string();
        let g2 = LocalizedGroup::from_json_str(&s).unwrap();
        assert_eq!(g, g2);
        assert!(g.equals_group(&g2).unwrap());
        // serialization is canonical, so a second round trip is byte-stable
        assert_eq!(s, g2.to_json_string());
    }

    #[test]
    fn loads_canonicalize() {
        let s = r#"{"ambient_dim":1,"generators":[{"primes":[2],"vector":["4/2"]}]}"#;
        let g = LocalizedGroup::from_json_str(s).unwrap();
        assert_eq!(g.generators()[0].vector(), &vec![rat_int(1)]);
    }

    #[test]
    fn rejects_bad_data() {
        assert!(LocalizedGroup::from_json_str("{").is_err());
        let not_prime = r#"{"ambient_dim":1,"generators":[{"primes":[4],"vector":["1"]}]}"#;
        assert!(LocalizedGroup::from_json_str(not_prime).is_err());
        let bad_dim = r#"{"ambient_dim":2,"generators":[{"primes":[2],"vector":["1"]}]}"#;
        assert!(LocalizedGroup::from_json_str(bad_dim).is_err());
        let bad_vec = r#"{"ambient_dim":1,"generators":[{"primes":[2],"vector":["1/0"]}]}"#;
        assert!(LocalizedGroup::from_json_str(bad_vec).is_err());
    }
}
