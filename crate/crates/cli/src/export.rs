//! JSON export.
//!
//! ```json
//! {
//!   "shape": { "lengths": [4, 4], "weights": [2, 2], "distance": 4 },
//!   "words": ["00110011", "..."],
//!   "certificate": {
//!     "size": 12, "distance": 4, "optimal": true,
//!     "bound": { "value": "12", "method": "w2d4", "exact": true },
//!     "provenance": "..."
//!   }
//! }
//! ```
//!
//! Words are the concatenated parts in file order. `certificate` and its
//! `bound` may be `null`; bound values are decimal strings.

use mcwc::constructions::ConstructionCertificate;
use mcwc::Code;
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ShapeDoc {
    pub lengths: Vec<usize>,
    pub weights: Vec<usize>,
    pub distance: usize,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BoundDoc {
    pub value: String,
    pub method: String,
    pub exact: bool,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertificateDoc {
    pub size: usize,
    pub distance: usize,
    pub optimal: bool,
    pub bound: Option<BoundDoc>,
    pub provenance: String,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ExportDoc {
    pub shape: ShapeDoc,
    pub words: Vec<String>,
    pub certificate: Option<CertificateDoc>,
}

impl ExportDoc {
    pub fn new(code: &Code, cert: Option<&ConstructionCertificate>) -> Self {
        let s = code.shape();
        ExportDoc {
            shape: ShapeDoc {
                lengths: s.lengths().to_vec(),
                weights: s.weights().to_vec(),
                distance: s.distance(),
            },
            words: code.iter().map(|w| w.to_string()).collect(),
            certificate: cert.map(|c| CertificateDoc {
                size: c.size,
                distance: c.distance,
                optimal: c.optimal,
                bound: c.bound.as_ref().map(|b| BoundDoc {
                    value: b.value.to_string(),
                    method: b.method.to_string(),
                    exact: b.exact,
                }),
                provenance: c.provenance.clone(),
            }),
        }
    }
}
