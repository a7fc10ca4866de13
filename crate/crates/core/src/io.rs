//! JSON formats for universes, matrices, densities and tables.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::classical::ClassicalDensity;
use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::incidence::IncidenceMatrix;
use crate::scalar::{fraction_string, ExactInt, Real};
use crate::statistics::DistributionTable;
use crate::universe::{Attribute, Subset, Universe};

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

/// A universe with its named attributes and subsets, in document order.
#[derive(Debug, Clone)]
pub struct UniverseDocument {
    pub universe: Arc<Universe>,
    pub attributes: Vec<Attribute>,
    pub subsets: Vec<(String, Subset)>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawUniverse {
    labels: Vec<String>,
    #[serde(default)]
    attributes: Map<String, Value>,
    #[serde(default)]
    subsets: Map<String, Value>,
}

fn scalar_label(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Bool(b) => Ok(if *b { "1" } else { "0" }.to_string()),
        other => Err(Error::Parse(format!("attribute value must be a scalar, got {other}"))),
    }
}

impl UniverseDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawUniverse = serde_json::from_str(text).map_err(parse_err)?;
        let universe = Universe::new(raw.labels)?;
        let attributes = raw
            .attributes
            .iter()
            .map(|(name, values)| {
                let values = values
                    .as_array()
                    .ok_or_else(|| Error::Parse(format!("attribute `{name}` must be an array")))?
                    .iter()
                    .map(scalar_label)
                    .collect::<Result<Vec<_>>>()?;
                Attribute::new(&universe, name.clone(), values)
            })
            .collect::<Result<Vec<_>>>()?;
        let subsets = raw
            .subsets
            .iter()
            .map(|(name, bits)| {
                let bits: Vec<u8> = serde_json::from_value(bits.clone()).map_err(parse_err)?;
                let members = bits
                    .iter()
                    .map(|&b| match b {
                        0 => Ok(false),
                        1 => Ok(true),
                        _ => Err(Error::Parse(format!("subset `{name}` must contain only 0 and 1"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((name.clone(), Subset::new(&universe, members)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { universe, attributes, subsets })
    }

    pub fn to_json(&self) -> Value {
        let attributes: Map<String, Value> =
            self.attributes.iter().map(|a| (a.name().to_string(), Value::from(a.values().to_vec()))).collect();
        let subsets: Map<String, Value> = self
            .subsets
            .iter()
            .map(|(name, s)| (name.clone(), Value::from(s.members().iter().map(|&m| u8::from(m)).collect::<Vec<_>>())))
            .collect();
        serde_json::json!({
            "labels": self.universe.labels(),
            "attributes": attributes,
            "subsets": subsets,
        })
    }

    pub fn attribute(&self, name: &str) -> Option<&Attribute> {
        self.attributes.iter().find(|a| a.name() == name)
    }

    pub fn subset(&self, name: &str) -> Option<&Subset> {
        self.subsets.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IncidenceJson {
    pub n: usize,
    pub rows: Vec<Vec<u8>>,
}

pub fn incidence_to_json(a: &IncidenceMatrix) -> IncidenceJson {
    IncidenceJson { n: a.n(), rows: a.rows().iter().map(|r| r.iter().map(|&b| u8::from(b)).collect()).collect() }
}

pub fn incidence_from_json(universe: &Arc<Universe>, text: &str) -> Result<IncidenceMatrix> {
    let raw: IncidenceJson = serde_json::from_str(text).map_err(parse_err)?;
    if raw.n != universe.len() {
        return Err(Error::DimensionMismatch { expected: universe.len(), actual: raw.n });
    }
    let rows = raw
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&b| match b {
                    0 => Ok(false),
                    1 => Ok(true),
                    _ => Err(Error::Parse("incidence entries must be 0 or 1".into())),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    IncidenceMatrix::from_rows(universe, &rows)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassicalDensityJson {
    pub n: usize,
    pub form: String,
    pub rows: Vec<Vec<String>>,
}

/// Rational entries as `num/den`, irrational ones as `sqrt(num/den)`.
pub fn classical_to_json<I: ExactInt>(rho: &ClassicalDensity<I>) -> ClassicalDensityJson {
    ClassicalDensityJson {
        n: rho.n(),
        form: rho.form().as_str().to_string(),
        rows: rho.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexMatrixJson {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

pub fn cmatrix_to_json<T: Real>(m: &CMatrix<T>) -> ComplexMatrixJson {
    let conv = |rows: Vec<Vec<T>>| -> Vec<Vec<f64>> {
        rows.into_iter().map(|r| r.into_iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()).collect()
    };
    ComplexMatrixJson { re: conv(m.re_parts()), im: conv(m.im_parts()) }
}

pub fn cmatrix_from_json<T: Real>(text: &str) -> Result<CMatrix<T>> {
    let raw: ComplexMatrixJson = serde_json::from_str(text).map_err(parse_err)?;
    let conv =
        |rows: &[Vec<f64>]| -> Vec<Vec<T>> { rows.iter().map(|r| r.iter().map(|&x| T::lit(x)).collect()).collect() };
    CMatrix::from_parts(&conv(&raw.re), &conv(&raw.im))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableRowJson {
    pub configuration: Vec<String>,
    pub probability: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableJson {
    pub statistics: String,
    pub states: Vec<String>,
    pub particles: usize,
    pub rows: Vec<TableRowJson>,
}

pub fn table_to_json<I: ExactInt>(t: &DistributionTable<I>) -> TableJson {
    TableJson {
        statistics: t.statistics().key().to_string(),
        states: t.states().to_vec(),
        particles: t.particles(),
        rows: t
            .rows()
            .iter()
            .map(|(c, p)| TableRowJson {
                configuration: c.occupancy().iter().map(|&s| t.states()[s].clone()).collect(),
                probability: fraction_string(p),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{rho_paradigm, PointDistribution};
    use crate::incidence::in_product;
    use crate::statistics::fd_distribution;

    const FIGURES: &str = r#"{
        "labels": ["u1", "u2", "u3", "u4"],
        "attributes": {"parity": ["odd", "even", "odd", "even"], "sides": [3, 4, 5, 6]},
        "subsets": {"solid": [0, 1, 1, 1]}
    }"#;

    #[test]
    fn loads_universe_document() {
        let doc = UniverseDocument::from_json(FIGURES).unwrap();
        assert_eq!(doc.universe.len(), 4);
        assert_eq!(doc.attribute("sides").unwrap().values(), ["3", "4", "5", "6"]);
        assert_eq!(doc.subset("solid").unwrap().to_string(), "{u2,u3,u4}");
        let again = UniverseDocument::from_json(&doc.to_json().to_string()).unwrap();
        assert_eq!(again.subset("solid"), doc.subset("solid"));
    }

    #[test]
    fn rejects_malformed_documents() {
        assert!(UniverseDocument::from_json(r#"{"labels": []}"#).is_err());
        assert!(UniverseDocument::from_json(r#"{"labels": ["a"], "subsets": {"s": [2]}}"#).is_err());
        assert!(UniverseDocument::from_json(r#"{"labels": ["a"], "subsets": {"s": [1, 0]}}"#).is_err());
        assert!(UniverseDocument::from_json(r#"{"labels": ["a"], "extra": 1}"#).is_err());
        assert!(UniverseDocument::from_json("not json").is_err());
    }

    #[test]
    fn incidence_json_round_trip() {
        let doc = UniverseDocument::from_json(FIGURES).unwrap();
        let a = in_product(doc.subset("solid").unwrap());
        let json = serde_json::to_string(&incidence_to_json(&a)).unwrap();
        assert_eq!(json, r#"{"n":4,"rows":[[0,0,0,0],[0,1,1,1],[0,1,1,1],[0,1,1,1]]}"#);
        assert_eq!(incidence_from_json(&doc.universe, &json).unwrap(), a);
        assert!(incidence_from_json(&doc.universe, r#"{"n":1,"rows":[[1]]}"#).is_err());
    }

    #[test]
    fn classical_json_uses_fraction_strings() {
        let doc = UniverseDocument::from_json(FIGURES).unwrap();
        let p = PointDistribution::<i64>::uniform(&doc.universe);
        let rho = rho_paradigm(doc.subset("solid").unwrap(), &p).unwrap();
        let json = classical_to_json(&rho);
        assert_eq!(json.form, "paradigm");
        assert_eq!(json.rows[1], ["0/1", "1/3", "1/3", "1/3"]);
    }

    #[test]
    fn complex_json_round_trip() {
        let h = CMatrix::<f64>::hadamard();
        let text = serde_json::to_string(&cmatrix_to_json(&h)).unwrap();
        assert_eq!(cmatrix_from_json::<f64>(&text).unwrap(), h);
        assert!(cmatrix_from_json::<f64>(r#"{"re":[[1.0]],"im":[]}"#).is_err());
    }

    #[test]
    fn table_json() {
        let t = fd_distribution::<i64, _>(&["A", "B", "C"], 2).unwrap();
        let json = table_to_json(&t);
        assert_eq!(json.statistics, "fd");
        assert_eq!(
            json.rows[0],
            TableRowJson { configuration: vec!["A".into(), "B".into()], probability: "1/3".into() }
        );
    }
}
