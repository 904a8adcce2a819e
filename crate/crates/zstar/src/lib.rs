// zstar - exact arithmetic for graphical calculi
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Exact-arithmetic toolkit for the algebra underlying graphical quantum
//! calculi (ZX, ZW, ZH and friends).
//!
//! The crate provides:
//!
//! * [`scalar`] - the number field Q(i, sqrt2) with canonical representations,
//!   so every check in the crate is an exact equality, never a tolerance.
//! * [`prop`] - morphisms of the matrix prop: dense matrices tagged with
//!   input/output arities and a wire dimension, with composition, Kronecker
//!   tensor and permutation builders.
//! * [`structures`] - monoids, comonoids, Frobenius algebras, compact
//!   structures, bialgebra laws and Z*-algebras, each with a checker that
//!   reports pass/fail per law together with the first differing entry.
//! * [`catalog`] - the concrete qubit structures: Z, X, H and W algebras,
//!   their phase families, the thirteen Z*-algebra families, the explicit
//!   generator tables of every tabulated calculus, and the qudit
//!   generalizations of ZX and ZW.
//! * [`classify`] - the mechanized classification searches: normalization of
//!   two-dimensional algebras, automorphism checks, the exhaustive
//!   bialgebra-pair scan and the per-family compatibility systems.
//! * [`linrel`] - the prop of linear relations over GF(p) and Q, with
//!   exhaustive monoid enumeration at small primes.
//! * [`diagram`] - open multigraphs with colored, phase-labelled nodes and an
//!   evaluator to matrices, used to exercise the "only topology matters"
//!   property of the catalog calculi.
//!
//! The `zstar` binary exposes verification, classification and diagram
//! evaluation as batch subcommands; see the README for usage.

pub mod catalog;
pub mod classify;
pub mod diagram;
pub mod linrel;
pub mod prop;
pub mod report;
pub mod scalar;
pub mod structures;

pub use prop::Morphism;
pub use report::{CheckReport, LawReport};
pub use scalar::{ExactScalar, Field};
pub use structures::{Comonoid, CompactStructure, Frobenius, Monoid, ZStarAlgebra};
