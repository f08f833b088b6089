//! JSON form of a constructed hexagon.

use fricke::hexagon::HexagonResult;
use fricke::Region;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Construction {
    pub iterations: usize,
    pub translation_param: f64,
}

/// Everything a figure of the hexagon needs; vertices are in the disk model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HexagonDocument {
    pub t: f64,
    pub s: f64,
    pub region: Region,
    pub alpha: f64,
    pub a: f64,
    pub c: f64,
    pub d: f64,
    pub a1: f64,
    pub a2: f64,
    pub total: f64,
    pub area: f64,
    pub vertices: Vec<[f64; 2]>,
    pub construction: Construction,
}

impl From<&HexagonResult> for HexagonDocument {
    fn from(h: &HexagonResult) -> Self {
        Self {
            t: h.v.t(),
            s: h.v.s(),
            region: h.region,
            alpha: h.alpha,
            a: h.a,
            c: h.c,
            d: h.d,
            a1: h.a1,
            a2: h.a2,
            total: h.total_length(),
            area: h.area,
            vertices: h.vertices.iter().map(|p| p.to_disk().into()).collect(),
            construction: Construction {
                iterations: h.trace.bisection_iterations,
                translation_param: h.trace.translation_param,
            },
        }
    }
}

impl HexagonDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document has only finite numbers")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
