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

//! The leveled array type.
//!
//! An [`Array`] is a shape plus content. Content is either *delayed* (a pure
//! function from indices to elements) or *materialized* (a flat row-major
//! buffer). Delayed arrays are never cached: every [`Array::sel`] re-runs the
//! function, so call [`Array::tabulate`] before heavy reuse.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::shape::{offset_to_index_unchecked, Index, Shape};

type IndexFn<E> = dyn Fn(&Index) -> E + Send + Sync;

enum Content<E> {
    Delayed(Arc<IndexFn<E>>),
    Materialized(Arc<[E]>),
}

impl<E> Clone for Content<E> {
    fn clone(&self) -> Self {
        match self {
            Content::Delayed(f) => Content::Delayed(Arc::clone(f)),
            Content::Materialized(b) => Content::Materialized(Arc::clone(b)),
        }
    }
}

pub struct Array<E> {
    shape: Shape,
    content: Content<E>,
}

impl<E> Clone for Array<E> {
    fn clone(&self) -> Self {
        Array {
            shape: self.shape.clone(),
            content: self.content.clone(),
        }
    }
}

impl<E: fmt::Debug> fmt::Debug for Array<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("Array");
        d.field("shape", &self.shape);
        match &self.content {
            Content::Delayed(_) => d.field("content", &"<delayed>"),
            Content::Materialized(b) => d.field("content", b),
        };
        d.finish()
    }
}

fn check_shape(expected: &Shape, found: &Shape) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::ShapeMismatch {
            left: expected.to_string(),
            right: found.to_string(),
        })
    }
}

impl<E> Array<E>
where
    E: Clone + Send + Sync + 'static,
{
    /// A delayed array from an index function.
    pub fn from_fn<F>(shape: Shape, f: F) -> Array<E>
    where
        F: Fn(&Index) -> E + Send + Sync + 'static,
    {
        Array {
            shape,
            content: Content::Delayed(Arc::new(f)),
        }
    }

    /// A materialized array over a row-major buffer of exactly `prod(shape)` elements.
    pub fn from_vec(shape: Shape, data: Vec<E>) -> Result<Array<E>> {
        let expected = shape.prod();
        if data.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: data.len(),
            });
        }
        Ok(Array {
            shape,
            content: Content::Materialized(data.into()),
        })
    }

    /// Level-0 array holding a single element.
    pub fn scalar(x: E) -> Array<E> {
        Array {
            shape: Shape::unit(),
            content: Content::Materialized(vec![x].into()),
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn level(&self) -> usize {
        self.shape.level()
    }

    pub fn is_materialized(&self) -> bool {
        matches!(self.content, Content::Materialized(_))
    }

    /// The row-major buffer, if materialized.
    pub fn buffer(&self) -> Option<&[E]> {
        match &self.content {
            Content::Materialized(b) => Some(b),
            Content::Delayed(_) => None,
        }
    }

    pub fn sel(&self, iv: &Index) -> Result<E> {
        if iv.shape() != &self.shape {
            return Err(Error::BoundMismatch(format!(
                "index of shape {} used on array of shape {}",
                iv.shape(),
                self.shape
            )));
        }
        Ok(self.sel_unchecked(iv))
    }

    // `iv` must belong to `self.shape`.
    pub(crate) fn sel_unchecked(&self, iv: &Index) -> E {
        match &self.content {
            Content::Delayed(f) => f(iv),
            Content::Materialized(b) => b[iv.raw_offset()].clone(),
        }
    }

    /// Element at row-major position `offset`; panics past `prod(shape)`.
    pub(crate) fn at_offset(&self, offset: usize) -> E {
        match &self.content {
            Content::Materialized(b) => b[offset].clone(),
            Content::Delayed(f) => f(&offset_to_index_unchecked(offset, &self.shape)),
        }
    }

    /// Materializes the array. Materialized input is returned as is.
    pub fn tabulate(&self) -> Array<E> {
        match &self.content {
            Content::Materialized(_) => self.clone(),
            Content::Delayed(f) => {
                let data: Vec<E> = self.shape.indices().map(|iv| f(&iv)).collect();
                Array {
                    shape: self.shape.clone(),
                    content: Content::Materialized(data.into()),
                }
            }
        }
    }

    /// All elements in row-major order.
    pub fn to_vec(&self) -> Vec<E> {
        match &self.content {
            Content::Materialized(b) => b.to_vec(),
            Content::Delayed(f) => self.shape.indices().map(|iv| f(&iv)).collect(),
        }
    }

    pub fn map<F, G>(&self, f: G) -> Array<F>
    where
        F: Clone + Send + Sync + 'static,
        G: Fn(E) -> F + Send + Sync + 'static,
    {
        let a = self.clone();
        Array::from_fn(self.shape.clone(), move |iv| f(a.sel_unchecked(iv)))
    }

    pub fn zip_with<F, G>(&self, other: &Array<E>, f: G) -> Result<Array<F>>
    where
        F: Clone + Send + Sync + 'static,
        G: Fn(E, E) -> F + Send + Sync + 'static,
    {
        check_shape(&self.shape, &other.shape)?;
        let (a, b) = (self.clone(), other.clone());
        Ok(Array::from_fn(self.shape.clone(), move |iv| {
            f(a.sel_unchecked(iv), b.sel_unchecked(iv))
        }))
    }

    /// Folds every element with `op`, starting from `unit`.
    ///
    /// `op` must be associative and commutative with identity `unit`; the
    /// combination order is not part of the contract.
    pub fn reduce<G>(&self, unit: E, op: G) -> E
    where
        G: Fn(E, E) -> E,
    {
        match &self.content {
            Content::Materialized(b) => b.iter().cloned().fold(unit, op),
            Content::Delayed(f) => self.shape.indices().map(|iv| f(&iv)).fold(unit, op),
        }
    }

    /// Reinterprets the elements under `target`, keeping row-major order.
    /// The levels of source and target may differ.
    pub fn reshape(&self, target: &Shape) -> Result<Array<E>> {
        let (from, to) = (self.shape.prod(), target.prod());
        if from != to {
            return Err(Error::ProdMismatch { from, to });
        }
        match &self.content {
            Content::Materialized(b) => Ok(Array {
                shape: target.clone(),
                content: Content::Materialized(Arc::clone(b)),
            }),
            Content::Delayed(_) => {
                let a = self.clone();
                Ok(Array::from_fn(target.clone(), move |jv| {
                    a.at_offset(jv.raw_offset())
                }))
            }
        }
    }

    /// Prepends `x` to a level-1 array.
    pub fn cons(&self, x: E) -> Result<Array<E>> {
        if self.level() != 1 {
            return Err(Error::LevelMismatch {
                expected: 1,
                found: self.level(),
            });
        }
        let len = self.shape.extents()[0];
        let a = self.clone();
        Ok(Array::from_fn(Shape::vector(len + 1), move |iv| {
            match iv.components()[0].value() {
                0 => x.clone(),
                j => a.at_offset(j - 1),
            }
        }))
    }
}

impl<E> Array<E>
where
    E: Clone + PartialEq + Send + Sync + 'static,
{
    /// Same shape and the same elements in row-major order.
    pub fn elementwise_eq(&self, other: &Array<E>) -> bool {
        self.shape == other.shape && self.to_vec() == other.to_vec()
    }
}

pub fn from_fn<E, F>(s: Shape, f: F) -> Array<E>
where
    E: Clone + Send + Sync + 'static,
    F: Fn(&Index) -> E + Send + Sync + 'static,
{
    Array::from_fn(s, f)
}

pub fn sel<E: Clone + Send + Sync + 'static>(a: &Array<E>, iv: &Index) -> Result<E> {
    a.sel(iv)
}

pub fn tabulate<E: Clone + Send + Sync + 'static>(a: &Array<E>) -> Array<E> {
    a.tabulate()
}

pub fn map<E, F, G>(f: G, a: &Array<E>) -> Array<F>
where
    E: Clone + Send + Sync + 'static,
    F: Clone + Send + Sync + 'static,
    G: Fn(E) -> F + Send + Sync + 'static,
{
    a.map(f)
}

pub fn zip_with<E, F, G>(f: G, a: &Array<E>, b: &Array<E>) -> Result<Array<F>>
where
    E: Clone + Send + Sync + 'static,
    F: Clone + Send + Sync + 'static,
    G: Fn(E, E) -> F + Send + Sync + 'static,
{
    a.zip_with(b, f)
}

pub fn reduce<E, G>(op: G, unit: E, a: &Array<E>) -> E
where
    E: Clone + Send + Sync + 'static,
    G: Fn(E, E) -> E,
{
    a.reduce(unit, op)
}

pub fn reshape<E: Clone + Send + Sync + 'static>(a: &Array<E>, target: &Shape) -> Result<Array<E>> {
    a.reshape(target)
}

pub fn cons<E: Clone + Send + Sync + 'static>(x: E, a: &Array<E>) -> Result<Array<E>> {
    a.cons(x)
}

/// Level-`shape.level()` array whose element at offset `k` is `k`.
pub fn iota(shape: Shape) -> Array<i64> {
    let n = shape.prod();
    Array::from_vec(shape, (0..n as i64).collect()).expect("length is prod")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::make_index;

    fn sca() -> Array<i64> {
        Array::from_fn(Shape::unit(), |_| 42)
    }

    fn vec5() -> Array<i64> {
        Array::from_fn(
            Shape::vector(5),
            |iv| if iv.values() == [0] { 42 } else { 0 },
        )
    }

    fn mat() -> Array<i64> {
        Array::from_fn(Shape::axes(&[2, 2]), |iv| {
            if iv.values() == [1, 1] {
                42
            } else {
                0
            }
        })
    }

    fn sum(a: &Array<i64>) -> i64 {
        a.reduce(0, |x, y| x + y)
    }

    #[test]
    fn sel_on_examples() {
        assert_eq!(sca().sel(&Index::unit()).unwrap(), 42);
        let v = vec5();
        assert_eq!(v.sel(&make_index(v.shape(), &[0]).unwrap()).unwrap(), 42);
        assert_eq!(v.sel(&make_index(v.shape(), &[3]).unwrap()).unwrap(), 0);
        let m = mat();
        assert_eq!(m.sel(&make_index(m.shape(), &[1, 1]).unwrap()).unwrap(), 42);
    }

    #[test]
    fn sel_rejects_foreign_index() {
        let iv = make_index(&Shape::vector(4), &[0]).unwrap();
        assert!(matches!(vec5().sel(&iv), Err(Error::BoundMismatch(_))));
        assert!(matches!(
            mat().tabulate().sel(&Index::unit()),
            Err(Error::BoundMismatch(_))
        ));
    }

    #[test]
    fn tabulate_examples() {
        let t = Array::from_fn(Shape::axes(&[2, 2]), |iv| iv.raw_offset() as i64).tabulate();
        assert_eq!(t.buffer().unwrap(), &[0, 1, 2, 3]);
        assert_eq!(sca().tabulate().buffer().unwrap(), &[42]);
        let twice = t.tabulate();
        assert_eq!(twice.buffer(), t.buffer());
        assert_eq!(twice.shape(), t.shape());
    }

    #[test]
    fn map_examples() {
        let m = vec5().map(|x| x + 1);
        assert_eq!(m.to_vec(), vec![43, 1, 1, 1, 1]);
        assert_eq!(m.shape(), vec5().shape());
        assert!(mat().map(|x| x).elementwise_eq(&mat()));
    }

    #[test]
    fn zip_with_examples() {
        let a = Array::from_vec(Shape::vector(2), vec![1, 2]).unwrap();
        let b = Array::from_vec(Shape::vector(2), vec![3, 4]).unwrap();
        assert_eq!(a.zip_with(&b, |x, y| x + y).unwrap().to_vec(), vec![4, 6]);
        let z = Array::from_fn(Shape::vector(2), |_| 0);
        assert!(a.zip_with(&z, |x, y| x + y).unwrap().elementwise_eq(&a));
        assert!(matches!(
            a.zip_with(&vec5(), |x, y| x + y),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(sum(&mat()), 42);
        assert_eq!(sum(&iota(Shape::vector(5))), 10);
        assert_eq!(sum(&iota(Shape::axes(&[0, 3]))), 0);
    }

    #[test]
    fn reshape_figure_tiling() {
        let a = Array::from_vec(Shape::axes(&[2, 4]), vec![1, 2, 5, 6, 3, 4, 7, 8]).unwrap();
        let r = a.reshape(&Shape::axes(&[2, 2, 2])).unwrap();
        let block = |k| -> Vec<i64> {
            (0..2)
                .flat_map(|i| (0..2).map(move |j| (i, j)))
                .map(|(i, j)| r.sel(&make_index(r.shape(), &[k, i, j]).unwrap()).unwrap())
                .collect()
        };
        assert_eq!(block(0), vec![1, 2, 5, 6]);
        assert_eq!(block(1), vec![3, 4, 7, 8]);
        assert_ne!(block(0), vec![1, 2, 3, 4]);
    }

    #[test]
    fn reshape_rows_and_errors() {
        let r = iota(Shape::vector(6))
            .map(|x| x)
            .reshape(&Shape::axes(&[2, 3]))
            .unwrap();
        assert_eq!(r.to_vec(), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(r.sel(&make_index(r.shape(), &[1, 0]).unwrap()).unwrap(), 3);
        let same = mat().reshape(&Shape::axes(&[2, 2])).unwrap();
        assert!(same.elementwise_eq(&mat()));
        assert_eq!(
            mat().reshape(&Shape::vector(5)).unwrap_err(),
            Error::ProdMismatch { from: 4, to: 5 }
        );
    }

    #[test]
    fn cons_examples() {
        let a = Array::from_vec(Shape::vector(3), vec![1, 2, 3]).unwrap();
        let c = a.cons(9).unwrap();
        assert_eq!(c.to_vec(), vec![9, 1, 2, 3]);
        assert_eq!(c.shape().extents(), &[4]);
        let e = Array::<i64>::from_vec(Shape::vector(0), vec![]).unwrap();
        assert_eq!(e.cons(7).unwrap().to_vec(), vec![7]);
        assert_eq!(
            mat().cons(1).unwrap_err(),
            Error::LevelMismatch {
                expected: 1,
                found: 2
            }
        );
    }

    #[test]
    fn from_vec_checks_length() {
        assert_eq!(
            Array::from_vec(Shape::axes(&[2, 2]), vec![1, 2, 3]).unwrap_err(),
            Error::LengthMismatch {
                expected: 4,
                found: 3
            }
        );
    }
}
