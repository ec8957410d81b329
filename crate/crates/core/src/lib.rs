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

//! Arrays with levels.
//!
//! The shape of a level-(l+1) array is itself a level-l array of naturals.
//! Level 0 holds scalars, level 1 vectors, level 2 the classical
//! multi-dimensional arrays, and level 3 arrays whose extents are laid out as
//! a matrix. This crate provides bound-checked indexing, row-major
//! linearisation, reshape across levels and a ranked operator
//! ([`nesting::nest`]) that works at every level.
//!
//! ```
//! use levar::{Array, Shape, kernels};
//!
//! let a = Array::from_vec(Shape::axes(&[2, 4]), vec![1, 2, 5, 6, 3, 4, 7, 8]).unwrap();
//! assert_eq!(kernels::avgp_nested(&a).unwrap().to_vec(), vec![2, 6]);
//! ```

pub mod array;
pub mod cli;
pub mod error;
pub mod format;
pub mod kernels;
pub mod nesting;
pub mod render;
pub mod selftest;
pub mod shape;

pub use array::Array;
pub use error::{Error, Result};
pub use nesting::{RankedCut, ShapeCut};
pub use shape::{BoundedNat, Index, Shape, ShapeSpec};
