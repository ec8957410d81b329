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

//! Leveled shapes, bounded naturals and indices.
//!
//! A level-0 shape is the unit shape. A level-(l+1) shape is a level-l
//! array of naturals: an inner shape together with a flat vector of
//! `prod(inner)` extents. The familiar `m × n` matrix shape is therefore the
//! level-2 shape whose inner shape is the level-1 shape `[2]` and whose
//! extents are `[m, n]`.
//!
//! Indices are linearised in row-major order: later components vary fastest.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A natural number together with a strict upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundedNat {
    value: usize,
    bound: usize,
}

impl BoundedNat {
    pub fn new(value: usize, bound: usize) -> Result<Self> {
        if value < bound {
            Ok(BoundedNat { value, bound })
        } else {
            Err(Error::OutOfBounds {
                axis: 0,
                value,
                bound,
            })
        }
    }

    pub fn value(self) -> usize {
        self.value
    }

    pub fn bound(self) -> usize {
        self.bound
    }
}

impl fmt::Display for BoundedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<{}", self.value, self.bound)
    }
}

/// Recursive shape description, used by the file format and the CLI.
///
/// `None` stands for the unit shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeSpec {
    pub extents: Vec<usize>,
    pub inner: Option<Box<ShapeSpec>>,
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct Node {
    inner: Shape,
    extents: Vec<usize>,
    level: usize,
}

/// A leveled shape. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Shape(Option<Arc<Node>>);

impl Shape {
    /// The level-0 shape.
    pub fn unit() -> Shape {
        Shape(None)
    }

    /// A shape one level above `inner`. Requires `extents.len() == inner.prod()`.
    pub fn node(inner: Shape, extents: Vec<usize>) -> Result<Shape> {
        let expected = inner.prod();
        if extents.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: extents.len(),
            });
        }
        let level = inner.level() + 1;
        Ok(Shape(Some(Arc::new(Node {
            inner,
            extents,
            level,
        }))))
    }

    /// Level-1 shape with a single extent.
    pub fn vector(len: usize) -> Shape {
        Shape::node(Shape::unit(), vec![len]).expect("unit has prod 1")
    }

    /// Level-2 shape with the given axes, i.e. a classical rank-`axes.len()` shape.
    pub fn axes(axes: &[usize]) -> Shape {
        Shape::node(Shape::vector(axes.len()), axes.to_vec()).expect("vector prod matches")
    }

    pub fn level(&self) -> usize {
        self.0.as_ref().map_or(0, |n| n.level)
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_none()
    }

    /// The shape of this shape, `None` at level 0.
    pub fn inner(&self) -> Option<&Shape> {
        self.0.as_ref().map(|n| &n.inner)
    }

    /// Flat extents; empty for the unit shape.
    pub fn extents(&self) -> &[usize] {
        self.0.as_ref().map_or(&[], |n| &n.extents)
    }

    /// Number of elements: 1 for the unit shape, otherwise the product of
    /// the extents (the empty product being 1).
    pub fn prod(&self) -> usize {
        self.extents().iter().product()
    }

    pub fn to_spec(&self) -> Option<ShapeSpec> {
        self.0.as_ref().map(|n| ShapeSpec {
            extents: n.extents.clone(),
            inner: n.inner.to_spec().map(Box::new),
        })
    }

    pub fn from_spec(spec: Option<&ShapeSpec>) -> Result<Shape> {
        match spec {
            None => Ok(Shape::unit()),
            Some(s) => Shape::node(Shape::from_spec(s.inner.as_deref())?, s.extents.clone()),
        }
    }

    /// Iterator over all valid indices in ascending offset order.
    pub fn indices(&self) -> Indices {
        Indices::new(self.clone())
    }
}

impl fmt::Debug for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Shape({self})")
    }
}

/// Nested extents, innermost first: `()` for unit, `()[3]` for a vector,
/// `()[2][2,3]` for a 2×3 matrix.
impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            None => f.write_str("()"),
            Some(n) => {
                write!(f, "{}[", n.inner)?;
                for (k, e) in n.extents.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str("]")
            }
        }
    }
}

fn spec_depth(spec: Option<&ShapeSpec>) -> usize {
    let mut depth = 0;
    let mut cur = spec;
    while let Some(s) = cur {
        depth += 1;
        cur = s.inner.as_deref();
    }
    depth
}

/// Builds a shape from a recursive description, checking its depth against `level`.
pub fn make_shape(level: usize, spec: Option<&ShapeSpec>) -> Result<Shape> {
    let depth = spec_depth(spec);
    if depth != level {
        return Err(Error::LevelMismatch {
            expected: level,
            found: depth,
        });
    }
    Shape::from_spec(spec)
}

pub fn prod(s: &Shape) -> usize {
    s.prod()
}

/// An index into a particular shape.
///
/// Equality is structural: same shape and the same component values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Index {
    shape: Shape,
    components: Vec<BoundedNat>,
}

impl Index {
    pub fn new(shape: &Shape, values: &[usize]) -> Result<Index> {
        let extents = shape.extents();
        if values.len() != extents.len() {
            return Err(Error::ArityMismatch {
                expected: extents.len(),
                found: values.len(),
            });
        }
        let components = values
            .iter()
            .zip(extents)
            .enumerate()
            .map(|(axis, (&value, &bound))| {
                BoundedNat::new(value, bound).map_err(|_| Error::OutOfBounds { axis, value, bound })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Index {
            shape: shape.clone(),
            components,
        })
    }

    /// The only index of the unit shape.
    pub fn unit() -> Index {
        Index {
            shape: Shape::unit(),
            components: Vec::new(),
        }
    }

    // Callers guarantee every value is below its extent.
    pub(crate) fn new_unchecked(shape: &Shape, values: &[usize]) -> Index {
        debug_assert_eq!(values.len(), shape.extents().len());
        let components = values
            .iter()
            .zip(shape.extents())
            .map(|(&value, &bound)| {
                debug_assert!(value < bound);
                BoundedNat { value, bound }
            })
            .collect();
        Index {
            shape: shape.clone(),
            components,
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn components(&self) -> &[BoundedNat] {
        &self.components
    }

    pub fn values(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.value).collect()
    }

    /// Row-major offset of this index within its shape.
    pub fn offset(&self) -> Result<BoundedNat> {
        index_to_offset(self)
    }

    // Offset without the emptiness check; an index exists, so prod > 0.
    pub(crate) fn raw_offset(&self) -> usize {
        self.components.iter().fold(0, |o, c| o * c.bound + c.value)
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", c.value)?;
        }
        f.write_str(")")
    }
}

pub fn make_index(s: &Shape, components: &[usize]) -> Result<Index> {
    Index::new(s, components)
}

/// Selects `v[i]`, requiring the bound of `i` to be exactly `v.len()`.
pub fn lookup_bounded<E>(v: &[E], i: BoundedNat) -> Result<&E> {
    if i.bound != v.len() {
        return Err(Error::BoundMismatch(format!(
            "index bound {} for a vector of length {}",
            i.bound,
            v.len()
        )));
    }
    Ok(&v[i.value])
}

/// Row-major offset of `iv`, bounded by `prod(shape(iv))`.
pub fn index_to_offset(iv: &Index) -> Result<BoundedNat> {
    let bound = iv.shape.prod();
    if bound == 0 {
        return Err(Error::EmptyShape);
    }
    Ok(BoundedNat {
        value: iv.raw_offset(),
        bound,
    })
}

/// Inverse of [`index_to_offset`].
pub fn offset_to_index(o: BoundedNat, s: &Shape) -> Result<Index> {
    let total = s.prod();
    if total == 0 {
        return Err(Error::EmptyShape);
    }
    if o.bound != total {
        return Err(Error::BoundMismatch(format!(
            "offset bound {} for shape {s} with {total} elements",
            o.bound
        )));
    }
    Ok(offset_to_index_unchecked(o.value, s))
}

pub(crate) fn offset_to_index_unchecked(offset: usize, s: &Shape) -> Index {
    let extents = s.extents();
    let mut values = vec![0; extents.len()];
    let mut rest = offset;
    for (v, &e) in values.iter_mut().zip(extents).rev() {
        *v = rest % e;
        rest /= e;
    }
    Index::new_unchecked(s, &values)
}

pub fn enumerate_indices(s: &Shape) -> Vec<Index> {
    s.indices().collect()
}

/// Odometer over the indices of a shape, last component fastest.
#[derive(Debug, Clone)]
pub struct Indices {
    shape: Shape,
    next: Option<Vec<usize>>,
    remaining: usize,
}

impl Indices {
    fn new(shape: Shape) -> Indices {
        let remaining = shape.prod();
        let next = (remaining > 0).then(|| vec![0; shape.extents().len()]);
        Indices {
            shape,
            next,
            remaining,
        }
    }
}

impl Iterator for Indices {
    type Item = Index;

    fn next(&mut self) -> Option<Index> {
        let cur = self.next.take()?;
        let item = Index::new_unchecked(&self.shape, &cur);
        self.remaining -= 1;
        if self.remaining > 0 {
            let mut succ = cur;
            for (v, &e) in succ.iter_mut().zip(self.shape.extents()).rev() {
                *v += 1;
                if *v < e {
                    break;
                }
                *v = 0;
            }
            self.next = Some(succ);
        }
        Some(item)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl ExactSizeIterator for Indices {}
