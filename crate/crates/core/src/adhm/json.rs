//! JSON form of an ADHM datum.
//!
//! ```json
//! {"n": 2, "r": 1,
//!  "B1": [[[0,0],[0,0]], [[1,0],[0,0]]],
//!  "B2": [[[0,0],[0,0]], [[0,0],[0,0]]],
//!  "i":  [[[1,0]], [[0,0]]],
//!  "j":  [[[0,0],[0,0]]]}
//! ```
//!
//! Each matrix is a list of rows and each entry a `[re, im]` pair. `i` has
//! `n` rows of length `r`, `j` has `r` rows of length `n`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::data::{AdhmData, C64};
use super::AdhmError;

type JsonMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdhmJson {
    pub n: usize,
    pub r: usize,
    #[serde(rename = "B1")]
    pub b1: JsonMatrix,
    #[serde(rename = "B2")]
    pub b2: JsonMatrix,
    pub i: JsonMatrix,
    pub j: JsonMatrix,
}

fn to_json(m: &DMatrix<C64>) -> JsonMatrix {
    m.row_iter()
        .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

fn from_json(
    name: &'static str,
    rows: &JsonMatrix,
    shape: (usize, usize),
) -> Result<DMatrix<C64>, AdhmError> {
    let bad = || AdhmError::Shape {
        name,
        got: (rows.len(), rows.first().map_or(0, Vec::len)),
        expected: shape,
    };
    if rows.len() != shape.0 || rows.iter().any(|row| row.len() != shape.1) {
        return Err(bad());
    }
    Ok(DMatrix::from_fn(shape.0, shape.1, |a, b| {
        let [re, im] = rows[a][b];
        C64::new(re, im)
    }))
}

impl From<&AdhmData<C64>> for AdhmJson {
    fn from(d: &AdhmData<C64>) -> Self {
        AdhmJson {
            n: d.n(),
            r: d.r(),
            b1: to_json(d.b1()),
            b2: to_json(d.b2()),
            i: to_json(d.i()),
            j: to_json(d.j()),
        }
    }
}

impl TryFrom<&AdhmJson> for AdhmData<C64> {
    type Error = AdhmError;

    fn try_from(js: &AdhmJson) -> Result<Self, AdhmError> {
        let (n, r) = (js.n, js.r);
        AdhmData::new(
            from_json("B1", &js.b1, (n, n))?,
            from_json("B2", &js.b2, (n, n))?,
            from_json("i", &js.i, (n, r))?,
            from_json("j", &js.j, (r, n))?,
        )
    }
}

impl AdhmData<C64> {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(AdhmJson::from(self)).expect("plain data serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&AdhmJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self, AdhmError> {
        let js: AdhmJson = serde_json::from_str(s).map_err(|e| AdhmError::Json(e.to_string()))?;
        AdhmData::try_from(&js)
    }
}
