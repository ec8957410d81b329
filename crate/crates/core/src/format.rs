// Copyright 2026 The levar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! The `levar-v1` JSON file format and deterministic test data.
//!
//! A document looks like
//!
//! ```json
//! {"data":[1,2,3],"format":"levar-v1","level":1,"shape":{"extents":[3],"inner":null}}
//! ```
//!
//! Keys are always written in sorted order with no insignificant whitespace,
//! so equal arrays serialize to identical bytes.

use std::io::{Read, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::array::{iota, Array};
use crate::error::{Error, Result};
use crate::shape::{make_shape, Shape, ShapeSpec};

pub const FORMAT_TAG: &str = "levar-v1";

/// Serialized form of an integer array. Field order is the on-disk key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrayDocument {
    pub data: Vec<i64>,
    pub format: String,
    pub level: usize,
    pub shape: Option<ShapeSpec>,
}

impl ArrayDocument {
    pub fn from_array(a: &Array<i64>) -> ArrayDocument {
        ArrayDocument {
            data: a.to_vec(),
            format: FORMAT_TAG.to_owned(),
            level: a.level(),
            shape: a.shape().to_spec(),
        }
    }

    pub fn into_array(self) -> Result<Array<i64>> {
        if self.format != FORMAT_TAG {
            return Err(Error::Format(format!(
                "unknown format tag {:?}",
                self.format
            )));
        }
        let shape = make_shape(self.level, self.shape.as_ref())?;
        Array::from_vec(shape, self.data)
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::Format(format!("io: {e}"))
}

pub fn to_bytes(a: &Array<i64>) -> Vec<u8> {
    serde_json::to_vec(&ArrayDocument::from_array(a)).expect("document always serializes")
}

pub fn to_string(a: &Array<i64>) -> String {
    String::from_utf8(to_bytes(a)).expect("json is utf-8")
}

pub fn write_array<W: Write>(a: &Array<i64>, mut sink: W) -> Result<()> {
    sink.write_all(&to_bytes(a)).map_err(io_error)?;
    sink.flush().map_err(io_error)
}

pub fn from_slice(bytes: &[u8]) -> Result<Array<i64>> {
    let doc: ArrayDocument =
        serde_json::from_slice(bytes).map_err(|e| Error::Format(e.to_string()))?;
    doc.into_array()
}

/// Reads a document and returns it as a materialized array.
pub fn read_array<R: Read>(mut source: R) -> Result<Array<i64>> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes).map_err(io_error)?;
    from_slice(&bytes)
}

/// How [`generate`] fills an array.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fill {
    /// Element at offset `k` is `k`.
    Iota,
    Const(i64),
    /// ChaCha8 seeded with `seed`, one draw per element in offset order,
    /// uniform in `[0, 2^31)`.
    Random(u64),
}

impl std::str::FromStr for Fill {
    type Err = String;

    /// `iota`, `const:V` or `rand:SEED`.
    fn from_str(s: &str) -> std::result::Result<Fill, String> {
        if s == "iota" {
            return Ok(Fill::Iota);
        }
        if let Some(v) = s.strip_prefix("const:") {
            return v
                .parse()
                .map(Fill::Const)
                .map_err(|e| format!("bad constant {v:?}: {e}"));
        }
        if let Some(v) = s.strip_prefix("rand:") {
            return v
                .parse()
                .map(Fill::Random)
                .map_err(|e| format!("bad seed {v:?}: {e}"));
        }
        Err(format!(
            "unknown fill {s:?}, expected iota, const:V or rand:SEED"
        ))
    }
}

pub fn generate(s: &Shape, fill: Fill) -> Array<i64> {
    match fill {
        Fill::Iota => iota(s.clone()),
        Fill::Const(v) => Array::from_vec(s.clone(), vec![v; s.prod()]).expect("length is prod"),
        Fill::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let data = (0..s.prod())
                .map(|_| rng.gen_range(0..1i64 << 31))
                .collect();
            Array::from_vec(s.clone(), data).expect("length is prod")
        }
    }
}
