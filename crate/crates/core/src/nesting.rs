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

//! The generalized ranked operator.
//!
//! A [`RankedCut`] picks how the axes of a shape are divided into an outer
//! ("left") and an inner ("right") part. Nesting an array along a cut gives
//! an array of arrays with exactly the same elements.
//!
//! * level 0: the only cut gives `(unit, unit)`;
//! * level 1: side 0 nests `[a, b, c]` as `[[a, b, c]]`, side 1 as `[[a], [b], [c]]`;
//! * level ≥ 2: the extents form a level-(l-1) array (the shape of the
//!   shape). A cut chooses one coordinate `slot` of that array's index space
//!   and a split point; extents whose coordinate at `slot` is below the split
//!   go left, the rest go right, both keeping their row-major order.

use serde::{Deserialize, Serialize};

use crate::array::Array;
use crate::error::{Error, Result};
use crate::shape::{BoundedNat, Index, Shape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RankedCut {
    /// The only cut of a level-0 shape.
    Trivial,
    /// Level 1: 0 keeps the vector inside a singleton, 1 splits it into singletons.
    Side(BoundedNat),
    /// Level ≥ 2: split the shape-of-shape along coordinate `slot` at `split`.
    Slot { slot: BoundedNat, split: BoundedNat },
}

/// JSON form of a cut: `null`, `{"side":k}` or `{"slot":i,"split":j}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CutSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slot: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<usize>,
}

fn mismatch(msg: impl Into<String>) -> Error {
    Error::CutMismatch(msg.into())
}

impl RankedCut {
    pub fn side(side: usize) -> Result<RankedCut> {
        BoundedNat::new(side, 2)
            .map(RankedCut::Side)
            .map_err(|_| mismatch(format!("side {side} is not 0 or 1")))
    }

    /// A level ≥ 2 cut with bounds taken from `shape`.
    pub fn slot(shape: &Shape, slot: usize, split: usize) -> Result<RankedCut> {
        if shape.level() < 2 {
            return Err(mismatch(format!(
                "slot cut on level-{} shape",
                shape.level()
            )));
        }
        let sos = shape.inner().expect("level >= 2");
        let slots = sos.extents().len();
        let slot = BoundedNat::new(slot, slots)
            .map_err(|_| mismatch(format!("slot {slot} out of {slots}")))?;
        let extent = sos.extents()[slot.value()];
        let split = BoundedNat::new(split, extent + 1)
            .map_err(|_| mismatch(format!("split {split} exceeds extent {extent}")))?;
        Ok(RankedCut::Slot { slot, split })
    }

    pub fn from_spec(shape: &Shape, spec: Option<&CutSpec>) -> Result<RankedCut> {
        let cut = match spec {
            None
            | Some(CutSpec {
                side: None,
                slot: None,
                split: None,
            }) => RankedCut::Trivial,
            Some(CutSpec {
                side: Some(k),
                slot: None,
                split: None,
            }) => RankedCut::side(*k)?,
            Some(CutSpec {
                side: None,
                slot: Some(i),
                split: Some(j),
            }) => RankedCut::slot(shape, *i, *j)?,
            Some(other) => return Err(mismatch(format!("malformed cut {other:?}"))),
        };
        validate(shape, &cut)?;
        Ok(cut)
    }

    pub fn to_spec(&self) -> Option<CutSpec> {
        match self {
            RankedCut::Trivial => None,
            RankedCut::Side(s) => Some(CutSpec {
                side: Some(s.value()),
                ..CutSpec::default()
            }),
            RankedCut::Slot { slot, split } => Some(CutSpec {
                side: None,
                slot: Some(slot.value()),
                split: Some(split.value()),
            }),
        }
    }
}

/// Checks that `cut` belongs to `shape`.
pub fn validate(shape: &Shape, cut: &RankedCut) -> Result<()> {
    let level = shape.level();
    match cut {
        RankedCut::Trivial if level == 0 => Ok(()),
        RankedCut::Side(s) if level == 1 => {
            if s.bound() == 2 {
                Ok(())
            } else {
                Err(mismatch(format!("side bound {} is not 2", s.bound())))
            }
        }
        RankedCut::Slot { slot, split } if level >= 2 => {
            let sos = shape.inner().expect("level >= 2");
            if slot.bound() != sos.extents().len() {
                return Err(mismatch(format!(
                    "slot bound {} but shape has {} slots",
                    slot.bound(),
                    sos.extents().len()
                )));
            }
            let extent = sos.extents()[slot.value()];
            if split.bound() != extent + 1 {
                return Err(mismatch(format!(
                    "split bound {} but slot {} has extent {extent}",
                    split.bound(),
                    slot.value()
                )));
            }
            Ok(())
        }
        _ => Err(mismatch(format!(
            "{cut:?} does not apply to a level-{level} shape"
        ))),
    }
}

/// Every valid cut of `shape`, in a fixed order.
pub fn all_cuts(shape: &Shape) -> Vec<RankedCut> {
    match shape.level() {
        0 => vec![RankedCut::Trivial],
        1 => (0..2).map(|k| RankedCut::side(k).unwrap()).collect(),
        _ => {
            let sos = shape.inner().expect("level >= 2");
            let slots = sos.extents().len();
            sos.extents()
                .iter()
                .enumerate()
                .flat_map(|(i, &e)| {
                    (0..=e).map(move |j| RankedCut::Slot {
                        slot: BoundedNat::new(i, slots).unwrap(),
                        split: BoundedNat::new(j, e + 1).unwrap(),
                    })
                })
                .collect()
        }
    }
}

pub fn cut_count(shape: &Shape) -> usize {
    match shape.level() {
        0 => 1,
        1 => 2,
        _ => shape.inner().unwrap().extents().iter().map(|e| e + 1).sum(),
    }
}

/// A cut applied to a particular shape, with the routing of each axis
/// precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeCut {
    shape: Shape,
    cut: RankedCut,
    left: Shape,
    right: Shape,
    // for each component of `shape`: true if it goes to the left part
    to_left: Vec<bool>,
}

impl ShapeCut {
    pub fn new(shape: &Shape, cut: RankedCut) -> Result<ShapeCut> {
        validate(shape, &cut)?;
        let (left, right, to_left) = match cut {
            RankedCut::Trivial => (Shape::unit(), Shape::unit(), Vec::new()),
            RankedCut::Side(s) if s.value() == 0 => (Shape::vector(1), shape.clone(), vec![false]),
            RankedCut::Side(_) => (shape.clone(), Shape::vector(1), vec![true]),
            RankedCut::Slot { slot, split } => {
                let sos = shape.inner().expect("level >= 2");
                let sos_inner = sos.inner().expect("level >= 2").clone();
                let (slot, split) = (slot.value(), split.value());
                let to_left: Vec<bool> = sos
                    .indices()
                    .map(|p| p.components()[slot].value() < split)
                    .collect();
                let pick = |side: bool| -> Vec<usize> {
                    shape
                        .extents()
                        .iter()
                        .zip(&to_left)
                        .filter(|(_, &l)| l == side)
                        .map(|(&e, _)| e)
                        .collect()
                };
                let mut left_sos = sos.extents().to_vec();
                let mut right_sos = sos.extents().to_vec();
                left_sos[slot] = split;
                right_sos[slot] -= split;
                let left = Shape::node(Shape::node(sos_inner.clone(), left_sos)?, pick(true))?;
                let right = Shape::node(Shape::node(sos_inner, right_sos)?, pick(false))?;
                (left, right, to_left)
            }
        };
        Ok(ShapeCut {
            shape: shape.clone(),
            cut,
            left,
            right,
            to_left,
        })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn cut(&self) -> RankedCut {
        self.cut
    }

    /// Outer part.
    pub fn left(&self) -> &Shape {
        &self.left
    }

    /// Inner part.
    pub fn right(&self) -> &Shape {
        &self.right
    }

    pub fn split(&self, iv: &Index) -> Result<(Index, Index)> {
        if iv.shape() != &self.shape {
            return Err(mismatch(format!(
                "index of shape {} for cut of {}",
                iv.shape(),
                self.shape
            )));
        }
        Ok(self.split_unchecked(iv))
    }

    fn split_unchecked(&self, iv: &Index) -> (Index, Index) {
        let mut lv = Vec::with_capacity(self.left.extents().len());
        let mut rv = Vec::with_capacity(self.right.extents().len());
        for (c, &l) in iv.components().iter().zip(&self.to_left) {
            if l {
                lv.push(c.value())
            } else {
                rv.push(c.value())
            }
        }
        // level 1 pads the empty side with the singleton axis
        if lv.len() < self.left.extents().len() {
            lv.push(0);
        }
        if rv.len() < self.right.extents().len() {
            rv.push(0);
        }
        (
            Index::new_unchecked(&self.left, &lv),
            Index::new_unchecked(&self.right, &rv),
        )
    }

    pub fn merge(&self, ov: &Index, iv: &Index) -> Result<Index> {
        if ov.shape() != &self.left {
            return Err(Error::BoundMismatch(format!(
                "outer index of shape {} for left part {}",
                ov.shape(),
                self.left
            )));
        }
        if iv.shape() != &self.right {
            return Err(Error::BoundMismatch(format!(
                "inner index of shape {} for right part {}",
                iv.shape(),
                self.right
            )));
        }
        Ok(self.merge_unchecked(ov, iv))
    }

    fn merge_unchecked(&self, ov: &Index, iv: &Index) -> Index {
        let mut lc = ov.components().iter();
        let mut rc = iv.components().iter();
        let values: Vec<usize> = self
            .to_left
            .iter()
            .map(|&l| {
                if l { lc.next() } else { rc.next() }
                    .expect("arity")
                    .value()
            })
            .collect();
        Index::new_unchecked(&self.shape, &values)
    }
}

pub fn ranked_cut(s: &Shape, c: RankedCut) -> Result<(Shape, Shape)> {
    let sc = ShapeCut::new(s, c)?;
    Ok((sc.left, sc.right))
}

pub fn split_index(iv: &Index, c: RankedCut) -> Result<(Index, Index)> {
    ShapeCut::new(iv.shape(), c)?.split(iv)
}

pub fn merge_index(ov: &Index, iv: &Index, c: RankedCut, s: &Shape) -> Result<Index> {
    ShapeCut::new(s, c)?.merge(ov, iv)
}

/// Nests `a` along `c`: the outer array has the left shape, every inner
/// array the right shape, and no element is lost or duplicated.
pub fn nest<E>(a: &Array<E>, c: RankedCut) -> Result<Array<Array<E>>>
where
    E: Clone + Send + Sync + 'static,
{
    let sc = ShapeCut::new(a.shape(), c)?;
    let outer = sc.left.clone();
    let a = a.clone();
    Ok(Array::from_fn(outer, move |ov| {
        let (sc, a, ov) = (sc.clone(), a.clone(), ov.clone());
        let right = sc.right.clone();
        Array::from_fn(right, move |iv| {
            a.sel_unchecked(&sc.merge_unchecked(&ov, iv))
        })
    }))
}

/// Inverse of [`nest`]: flattens `n` back to shape `s`.
pub fn unnest<E>(n: &Array<Array<E>>, c: RankedCut, s: &Shape) -> Result<Array<E>>
where
    E: Clone + Send + Sync + 'static,
{
    let sc = ShapeCut::new(s, c)?;
    if n.shape() != &sc.left {
        return Err(Error::ShapeMismatch {
            left: sc.left.to_string(),
            right: n.shape().to_string(),
        });
    }
    let outer = n.tabulate();
    for inner in outer.buffer().expect("tabulated") {
        if inner.shape() != &sc.right {
            return Err(Error::ShapeMismatch {
                left: sc.right.to_string(),
                right: inner.shape().to_string(),
            });
        }
    }
    Ok(Array::from_fn(s.clone(), move |iv| {
        let (ov, riv) = sc.split_unchecked(iv);
        outer.sel_unchecked(&ov).sel_unchecked(&riv)
    }))
}
