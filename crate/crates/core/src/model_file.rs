//! Model file format.
//!
//! ```json
//! { "dimension": 4,
//!   "components": [ { "indices": [1, 2, 2, 1], "value": 1.0 }, ... ],
//!   "generator": { "kind": "canonical", ... } }
//! ```
//!
//! Indices are 1-based. Unlisted components take the values forced by
//! symmetry, or zero. The writer emits one component per symmetry orbit:
//! `i<j`, `k<l`, `(i,j) ≤ (k,l)`, magnitude above `1e-15`, sorted.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::GeneratorSpec;
use crate::scalar::Scalar;
use crate::tensor::{CurvatureTensor, Entry};

/// Components at or below this magnitude are omitted on write.
pub const WRITE_CUTOFF: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentRecord {
    pub indices: [usize; 4],
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub dimension: usize,
    pub components: Vec<ComponentRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorSpec>,
}

impl ModelFile {
    pub fn from_tensor<S: Scalar>(
        r: &CurvatureTensor<S>,
        generator: Option<GeneratorSpec>,
    ) -> Self {
        let n = r.dim();
        let mut components = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in i..n {
                    for l in (k + 1)..n {
                        if (i, j) > (k, l) {
                            continue;
                        }
                        let value = r.get(i, j, k, l).as_f64();
                        if value.abs() > WRITE_CUTOFF {
                            components.push(ComponentRecord {
                                indices: [i + 1, j + 1, k + 1, l + 1],
                                value,
                            });
                        }
                    }
                }
            }
        }
        ModelFile {
            dimension: n,
            components,
            generator,
        }
    }

    /// Rebuilds the tensor; errors name the first offending component.
    pub fn to_tensor<S: Scalar>(&self) -> Result<CurvatureTensor<S>> {
        let n = self.dimension;
        let mut entries = Vec::with_capacity(self.components.len());
        for (index, c) in self.components.iter().enumerate() {
            if c.indices.iter().any(|&i| i == 0 || i > n) {
                return Err(Error::IndexOutOfRange {
                    index,
                    indices: c.indices,
                    dimension: n,
                });
            }
            let value = S::from_f64(c.value)
                .filter(|v| v.is_finite())
                .ok_or(Error::NonFiniteEntry { index })?;
            let [i, j, k, l] = c.indices.map(|i| i - 1);
            entries.push(Entry::new(i, j, k, l, value));
        }
        CurvatureTensor::canonicalize(n, &entries)
    }

    /// One component per line. Values use the shortest decimal that parses
    /// back to the same `f64`.
    pub fn to_json(&self) -> String {
        let mut out = format!(
            "{{\n  \"dimension\": {},\n  \"components\": [",
            self.dimension
        );
        for (k, c) in self.components.iter().enumerate() {
            let sep = if k + 1 < self.components.len() {
                ","
            } else {
                ""
            };
            out.push_str(&format!("\n    {}{sep}", compact(c)));
        }
        out.push_str(if self.components.is_empty() {
            "]"
        } else {
            "\n  ]"
        });
        if let Some(g) = &self.generator {
            out.push_str(&format!(",\n  \"generator\": {}", compact(g)));
        }
        out.push_str("\n}");
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }
}

fn compact<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("model file serializes")
}

pub fn write_model<S: Scalar>(r: &CurvatureTensor<S>, generator: Option<GeneratorSpec>) -> String {
    ModelFile::from_tensor(r, generator).to_json()
}

pub fn read_model<S: Scalar>(text: &str) -> Result<CurvatureTensor<S>> {
    ModelFile::from_json(text)?.to_tensor()
}
