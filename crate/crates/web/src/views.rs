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

//! Plain-Rust view builders behind the browser demo. Each returns a JSON
//! string the page renders; keeping them free of `wasm_bindgen` types lets
//! them run under `cargo test` on the host.

use levar::cli::{parse_cut, parse_shape};
use levar::format::{generate, Fill};
use levar::kernels::{avgp_direct, avgp_nested, pooling_shape};
use levar::nesting::{all_cuts, cut_count, nest, RankedCut, ShapeCut};
use levar::render::render;
use levar::{Array, Error, Result, Shape};
use serde_json::{json, Value};

fn shape_value(s: &Shape) -> Value {
    serde_json::to_value(s.to_spec()).expect("shape serializes")
}

fn rows(a: &Array<i64>) -> Vec<Vec<i64>> {
    let cols = a.shape().extents().get(1).copied().unwrap_or(1).max(1);
    a.to_vec().chunks(cols).map(<[i64]>::to_vec).collect()
}

/// Reshapes a `rows × cols` iota matrix to `target` (shape JSON) and reports
/// where each source element lands.
pub fn reshape_view(rows_n: usize, cols_n: usize, target: &str) -> Result<String> {
    let source = generate(&Shape::axes(&[rows_n, cols_n]), Fill::Iota);
    let target = parse_shape(target)?;
    let result = source.reshape(&target)?;
    let positions: Vec<String> = target.indices().map(|iv| iv.to_string()).collect();
    Ok(json!({
        "source": rows(&source),
        "target": shape_value(&target),
        "target_text": target.to_string(),
        "level": target.level(),
        "prod": target.prod(),
        "rendered": render(&result),
        "positions": positions,
        "data": result.to_vec(),
    })
    .to_string())
}

/// Cuts an iota array of `shape` and lists every inner block. With an empty
/// `cut` the first valid cut is used.
pub fn cut_view(shape: &str, cut: &str) -> Result<String> {
    let s = parse_shape(shape)?;
    let c = if cut.trim().is_empty() {
        *all_cuts(&s)
            .first()
            .ok_or_else(|| Error::CutMismatch(format!("{s} has no cuts")))?
    } else {
        parse_cut(&s, cut)?
    };
    let sc = ShapeCut::new(&s, c)?;
    let a = generate(&s, Fill::Iota);
    let nested = nest(&a, c)?;
    let blocks: Vec<Value> = nested
        .shape()
        .indices()
        .map(|ov| {
            let inner = nested.sel(&ov).expect("index of outer shape");
            json!({ "outer": ov.to_string(), "data": inner.to_vec(), "rendered": render(&inner) })
        })
        .collect();
    let cuts: Vec<Value> = all_cuts(&s)
        .iter()
        .map(|c| serde_json::to_value(c.to_spec()).expect("cut serializes"))
        .collect();
    Ok(json!({
        "shape": shape_value(&s),
        "shape_text": s.to_string(),
        "level": s.level(),
        "cut": serde_json::to_value(c.to_spec()).expect("cut serializes"),
        "cuts": cuts,
        "cut_count": cut_count(&s),
        "left": shape_value(sc.left()),
        "left_text": sc.left().to_string(),
        "right": shape_value(sc.right()),
        "right_text": sc.right().to_string(),
        "blocks": blocks,
    })
    .to_string())
}

/// Pools a random `2m × 2n` matrix and records, for every input cell, the
/// output cell whose block it was nested into.
pub fn pool_view(m: usize, n: usize, seed: u64, direct: bool) -> Result<String> {
    let input = generate(&Shape::axes(&[2 * m, 2 * n]), Fill::Random(seed)).map(|x| x % 100);
    let output = if direct {
        avgp_direct(&input)?
    } else {
        avgp_nested(&input)?
    };

    // nest the offsets themselves to see which block each element joins
    let s1 = pooling_shape(m, n);
    let offsets = generate(&Shape::axes(&[2 * m, 2 * n]), Fill::Iota).reshape(&s1)?;
    let blocks = nest(&offsets, RankedCut::slot(&s1, 1, 1)?)?;
    let mut owner = vec![0i64; 4 * m * n];
    for (k, block) in blocks.to_vec().iter().enumerate() {
        for off in block.to_vec() {
            owner[off as usize] = k as i64;
        }
    }
    let owner = Array::from_vec(input.shape().clone(), owner)?;
    Ok(json!({
        "input": rows(&input),
        "output": rows(&output),
        "owner": rows(&owner),
        "method": if direct { "direct" } else { "nested" },
    })
    .to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn reshape_tiles_rows_together() {
        let v = parse(&reshape_view(2, 4, "[2,2,2]").unwrap());
        assert_eq!(v["rendered"], "[[[0,1],[2,3]],[[4,5],[6,7]]]");
        assert_eq!(v["level"], 2);
        assert_eq!(
            reshape_view(2, 4, "[3,3]").unwrap_err().kind(),
            "ProdMismatch"
        );
    }

    #[test]
    fn cut_lists_blocks() {
        let v = parse(&cut_view("[2,3]", r#"{"slot":0,"split":1}"#).unwrap());
        assert_eq!(v["cut_count"], 3);
        assert_eq!(v["blocks"].as_array().unwrap().len(), 2);
        assert_eq!(v["blocks"][1]["data"], json!([3, 4, 5]));
        let default = parse(&cut_view("[2,3]", "").unwrap());
        assert_eq!(default["cut"], json!({"slot": 0, "split": 0}));
        assert_eq!(
            cut_view("[2,3]", r#"{"side":1}"#).unwrap_err().kind(),
            "CutMismatch"
        );
    }

    #[test]
    fn pool_blocks_are_2x2() {
        for direct in [false, true] {
            let v = parse(&pool_view(2, 3, 7, direct).unwrap());
            let owner = v["owner"].as_array().unwrap();
            for (r, row) in owner.iter().enumerate() {
                for (c, k) in row.as_array().unwrap().iter().enumerate() {
                    assert_eq!(k.as_u64().unwrap() as usize, (r / 2) * 3 + c / 2);
                }
            }
            assert_eq!(v["output"].as_array().unwrap().len(), 2);
        }
        let a = parse(&pool_view(3, 2, 1, false).unwrap());
        let b = parse(&pool_view(3, 2, 1, true).unwrap());
        assert_eq!(a["output"], b["output"]);
    }
}
