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

//! Human-readable rendering of integer arrays.

use crate::array::Array;
use crate::shape::Index;

/// Nested brackets for levels 0–2 (`42`, `[1,2]`, `[[2,6]]`); higher levels
/// print their shape followed by the flat row-major data.
pub fn render(a: &Array<i64>) -> String {
    let data = a.to_vec();
    match a.level() {
        0 => data[0].to_string(),
        1 | 2 => {
            let mut out = String::new();
            nested(&mut out, a.shape().extents(), &data);
            out
        }
        _ => format!("{} {}", a.shape(), flat(&data)),
    }
}

fn flat(data: &[i64]) -> String {
    let items: Vec<String> = data.iter().map(i64::to_string).collect();
    format!("[{}]", items.join(","))
}

fn nested(out: &mut String, axes: &[usize], data: &[i64]) {
    match axes {
        [] => out.push_str(&data[0].to_string()),
        [_] => out.push_str(&flat(data)),
        [n, rest @ ..] => {
            let stride: usize = rest.iter().product();
            out.push('[');
            for k in 0..*n {
                if k > 0 {
                    out.push(',');
                }
                nested(out, rest, &data[k * stride..(k + 1) * stride]);
            }
            out.push(']');
        }
    }
}

/// `(i,j)` style label for an index.
pub fn label(iv: &Index) -> String {
    iv.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::iota;
    use crate::shape::Shape;

    #[test]
    fn renders() {
        assert_eq!(render(&Array::scalar(42)), "42");
        assert_eq!(render(&iota(Shape::vector(3))), "[0,1,2]");
        assert_eq!(render(&iota(Shape::axes(&[2, 2]))), "[[0,1],[2,3]]");
        assert_eq!(render(&iota(Shape::axes(&[2, 1, 2]))), "[[[0,1]],[[2,3]]]");
        assert_eq!(render(&iota(Shape::axes(&[0, 2]))), "[]");
        assert_eq!(render(&iota(Shape::axes(&[]))), "0");
        let s3 = Shape::node(Shape::axes(&[1, 2]), vec![2, 1]).unwrap();
        assert_eq!(render(&iota(s3)), "()[2][1,2][2,1] [0,1]");
    }
}
