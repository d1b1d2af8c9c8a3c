//   Copyright 2026 The dca Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.

//! Exact discrete convex analysis on the integer lattice.
//!
//! The crate decides membership of finite sets and function tables in the
//! integrally convex, discrete midpoint convex, L♮-convex and separable
//! convex classes, applies the standard operations (projection, Minkowski
//! sum, infimal convolution, conjugation, penalties), and backs every
//! negative verdict with a witness that can be replayed from raw data.
//!
//! All arithmetic is over arbitrary-precision rationals; there is no
//! tolerance anywhere.

pub mod classify;
pub mod error;
pub mod function;
pub mod generators;
pub mod geometry;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod transforms;
pub mod value;

pub use classify::{CheckReport, ViolationWitness};
pub use error::{DcaError, Result};
pub use function::{basic_transform, DiscreteFunction, Transform};
pub use lattice::{
    decompose_difference, integral_neighborhood, rounded_midpoints, IntegerBox, LatticePoint,
    LatticeSet, RationalPoint, StepDecomposition, MAX_DIM,
};
pub use geometry::{ConvexCombination, Halfspace};
pub use value::{ExtendedValue, Rational};
