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

//! Integer kernels: element-wise addition, matrix product and 2×2 average
//! pooling, the latter both with explicit index arithmetic and as
//! reshape + nest + map.

use crate::array::Array;
use crate::error::{Error, Result};
use crate::nesting::{nest, RankedCut};
use crate::shape::{Index, Shape};

pub fn sum(a: &Array<i64>) -> i64 {
    a.reduce(0, |x, y| x + y)
}

pub fn plus(a: &Array<i64>, b: &Array<i64>) -> Result<Array<i64>> {
    a.zip_with(b, |x, y| x + y)
}

// (rows, cols) of a level-2 rank-2 array
fn matrix_dims(a: &Array<i64>) -> Result<(usize, usize)> {
    if a.level() != 2 {
        return Err(Error::LevelMismatch {
            expected: 2,
            found: a.level(),
        });
    }
    match *a.shape().extents() {
        [r, c] => Ok((r, c)),
        ref ext => Err(Error::ArityMismatch {
            expected: 2,
            found: ext.len(),
        }),
    }
}

fn at(a: &Array<i64>, i: usize, j: usize) -> i64 {
    a.sel_unchecked(&Index::new_unchecked(a.shape(), &[i, j]))
}

/// `(m × p) · (p × n)`; each entry sums a delayed vector of products.
pub fn matmul(a: &Array<i64>, b: &Array<i64>) -> Result<Array<i64>> {
    let (m, p) = matrix_dims(a)?;
    let (q, n) = matrix_dims(b)?;
    if p != q {
        return Err(Error::DimMismatch { left: p, right: q });
    }
    let (a, b) = (a.clone(), b.clone());
    Ok(Array::from_fn(Shape::axes(&[m, n]), move |iv| {
        let (i, j) = (iv.components()[0].value(), iv.components()[1].value());
        let (a, b) = (a.clone(), b.clone());
        let products = Array::from_fn(Shape::vector(p), move |kv| {
            let k = kv.components()[0].value();
            at(&a, i, k) * at(&b, k, j)
        });
        sum(&products)
    }))
}

fn pooling_dims(a: &Array<i64>) -> Result<(usize, usize)> {
    let (rows, cols) = matrix_dims(a)?;
    for (axis, extent) in [(0, rows), (1, cols)] {
        if extent % 2 != 0 {
            return Err(Error::OddExtent { axis, extent });
        }
    }
    Ok((rows / 2, cols / 2))
}

/// Average of each disjoint 2×2 block, with truncating division.
pub fn avgp_direct(a: &Array<i64>) -> Result<Array<i64>> {
    let (m, n) = pooling_dims(a)?;
    let a = a.clone();
    Ok(Array::from_fn(Shape::axes(&[m, n]), move |iv| {
        let (i, j) = (iv.components()[0].value(), iv.components()[1].value());
        let mut total = 0;
        for r in 0..2 {
            for c in 0..2 {
                total += at(&a, 2 * i + r, 2 * j + c);
            }
        }
        total / 4
    }))
}

/// The level-3 shape whose shape-of-shape is the 2×2 array `[[m, 2], [n, 2]]`.
pub fn pooling_shape(m: usize, n: usize) -> Shape {
    Shape::node(Shape::axes(&[2, 2]), vec![m, 2, n, 2]).expect("2×2 inner has 4 entries")
}

/// Average pooling without index arithmetic: reshape to the level-3 shape
/// `[[m, 2], [n, 2]]`, cut off its first column as the outer part, average
/// each inner block and reshape back to `m × n`.
pub fn avgp_nested(a: &Array<i64>) -> Result<Array<i64>> {
    let (m, n) = pooling_dims(a)?;
    let s1 = pooling_shape(m, n);
    let blocks = nest(&a.reshape(&s1)?, RankedCut::slot(&s1, 1, 1)?)?;
    blocks
        .map(|block| sum(&block) / 4)
        .reshape(&Shape::axes(&[m, n]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: usize, cols: usize, data: Vec<i64>) -> Array<i64> {
        Array::from_vec(Shape::axes(&[rows, cols]), data).unwrap()
    }

    fn figure() -> Array<i64> {
        mat(2, 4, vec![1, 2, 5, 6, 3, 4, 7, 8])
    }

    #[test]
    fn plus_examples() {
        let a = Array::from_vec(Shape::vector(2), vec![1, 2]).unwrap();
        let b = Array::from_vec(Shape::vector(2), vec![3, 4]).unwrap();
        assert_eq!(plus(&a, &b).unwrap().to_vec(), vec![4, 6]);
        let zeros = Array::from_fn(Shape::vector(2), |_| 0);
        assert!(plus(&a, &zeros).unwrap().elementwise_eq(&a));
        let sca = Array::from_fn(Shape::unit(), |_| 42);
        assert_eq!(plus(&sca, &sca).unwrap().to_vec(), vec![84]);
        assert!(matches!(plus(&a, &sca), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn matmul_examples() {
        let a = mat(2, 2, vec![1, 2, 3, 4]);
        let b = mat(2, 2, vec![5, 6, 7, 8]);
        assert_eq!(matmul(&a, &b).unwrap().to_vec(), vec![19, 22, 43, 50]);
        let id = mat(2, 2, vec![1, 0, 0, 1]);
        assert!(matmul(&id, &a).unwrap().elementwise_eq(&a));
        assert_eq!(
            matmul(&a, &mat(3, 1, vec![1, 2, 3])).unwrap_err(),
            Error::DimMismatch { left: 2, right: 3 }
        );
        let v = Array::from_vec(Shape::vector(2), vec![1, 2]).unwrap();
        assert_eq!(
            matmul(&v, &a).unwrap_err(),
            Error::LevelMismatch {
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn matmul_with_zero_inner_dimension() {
        let a = mat(2, 0, vec![]);
        let b = mat(0, 3, vec![]);
        assert_eq!(matmul(&a, &b).unwrap().to_vec(), vec![0; 6]);
    }

    #[test]
    fn pooling_figure() {
        assert_eq!(avgp_direct(&figure()).unwrap().to_vec(), vec![2, 6]);
        let nested = avgp_nested(&figure()).unwrap();
        assert_eq!(nested.shape(), &Shape::axes(&[1, 2]));
        assert_eq!(nested.to_vec(), vec![2, 6]);
    }

    #[test]
    fn pooling_constant_and_ones() {
        let c = Array::from_fn(Shape::axes(&[4, 6]), |_| 9);
        assert_eq!(avgp_direct(&c).unwrap().to_vec(), vec![9; 6]);
        assert_eq!(avgp_nested(&c).unwrap().to_vec(), vec![9; 6]);
        let ones = mat(2, 2, vec![1; 4]);
        assert_eq!(avgp_direct(&ones).unwrap().to_vec(), vec![1]);
        assert_eq!(avgp_nested(&ones).unwrap().to_vec(), vec![1]);
    }

    #[test]
    fn pooling_errors() {
        let odd = mat(3, 2, vec![0; 6]);
        assert_eq!(
            avgp_direct(&odd).unwrap_err(),
            Error::OddExtent { axis: 0, extent: 3 }
        );
        assert_eq!(
            avgp_nested(&odd).unwrap_err(),
            Error::OddExtent { axis: 0, extent: 3 }
        );
        let v = Array::from_vec(Shape::vector(4), vec![0; 4]).unwrap();
        assert!(matches!(avgp_nested(&v), Err(Error::LevelMismatch { .. })));
    }

    #[test]
    fn pooling_empty() {
        let e = mat(0, 4, vec![]);
        assert_eq!(avgp_nested(&e).unwrap().shape(), &Shape::axes(&[0, 2]));
        assert!(avgp_direct(&e).unwrap().to_vec().is_empty());
    }
}
