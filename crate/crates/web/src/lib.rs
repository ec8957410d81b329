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

//! WebAssembly bindings for the levar browser demo (`www/index.html`).

use wasm_bindgen::prelude::*;

pub mod views;

fn js_err(e: levar::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Reshape a `rows × cols` iota matrix to the given shape JSON.
#[wasm_bindgen]
pub fn reshape(rows: usize, cols: usize, target: &str) -> Result<String, JsError> {
    views::reshape_view(rows, cols, target).map_err(js_err)
}

/// Cut and nest an iota array of the given shape.
#[wasm_bindgen]
pub fn cut(shape: &str, cut: &str) -> Result<String, JsError> {
    views::cut_view(shape, cut).map_err(js_err)
}

/// Average-pool a random `2m × 2n` matrix.
#[wasm_bindgen]
pub fn pool(m: usize, n: usize, seed: u32, direct: bool) -> Result<String, JsError> {
    views::pool_view(m, n, u64::from(seed), direct).map_err(js_err)
}
