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

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// The `Display` form always starts with the variant name so that callers
/// (and the CLI) can match on it textually.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("LengthMismatch: expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("LevelMismatch: expected level {expected}, found {found}")]
    LevelMismatch { expected: usize, found: usize },

    #[error("OutOfBounds: component {axis} is {value}, bound is {bound}")]
    OutOfBounds {
        axis: usize,
        value: usize,
        bound: usize,
    },

    #[error("ArityMismatch: expected {expected} components, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("BoundMismatch: {0}")]
    BoundMismatch(String),

    #[error("EmptyShape: shape has no valid index")]
    EmptyShape,

    #[error("ShapeMismatch: {left} vs {right}")]
    ShapeMismatch { left: String, right: String },

    #[error("ProdMismatch: source has {from} elements, target has {to}")]
    ProdMismatch { from: usize, to: usize },

    #[error("CutMismatch: {0}")]
    CutMismatch(String),

    #[error("DimMismatch: inner dimension {left} does not match outer dimension {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("OddExtent: axis {axis} has odd extent {extent}")]
    OddExtent { axis: usize, extent: usize },

    #[error("FormatError: {0}")]
    Format(String),
}

impl Error {
    /// The variant name, as printed at the start of the message.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::LevelMismatch { .. } => "LevelMismatch",
            Error::OutOfBounds { .. } => "OutOfBounds",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::BoundMismatch(_) => "BoundMismatch",
            Error::EmptyShape => "EmptyShape",
            Error::ShapeMismatch { .. } => "ShapeMismatch",
            Error::ProdMismatch { .. } => "ProdMismatch",
            Error::CutMismatch(_) => "CutMismatch",
            Error::DimMismatch { .. } => "DimMismatch",
            Error::OddExtent { .. } => "OddExtent",
            Error::Format(_) => "FormatError",
        }
    }

    /// Whether this is a serialization problem rather than a shape/bounds one.
    pub fn is_format(&self) -> bool {
        matches!(self, Error::Format(_))
    }
}
