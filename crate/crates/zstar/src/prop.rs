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

//! Morphisms of the matrix prop over Q(i, sqrt2).
//!
//! A morphism `n -> m` on wires of dimension `d` is a dense `d^m x d^n`
//! matrix. Basis vectors of an `n`-wire space are ordered lexicographically
//! with wire 1 most significant, which pins down every Kronecker product and
//! permutation matrix bit-exactly. Equality demands equal arities, equal
//! dimension and equal entries: a `2 -> 0` and a `0 -> 2` morphism are never
//! equal even when their entry lists coincide.

use crate::scalar::{ExactScalar, ScalarError};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PropError {
    #[error("arity mismatch: cannot compose {f} after {g}")]
    ArityMismatch { f: String, g: String },
    #[error("wire dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("permutation is not a bijection on 1..={0}")]
    NotBijective(usize),
    #[error("matrix is not invertible")]
    NotInvertible,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MorphismParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Scalar {
        line: usize,
        #[source]
        source: ScalarError,
    },
    #[error("morphism would need {0} entries, refusing (limit {MAX_ENTRIES})")]
    TooLarge(u128),
}

/// Hard cap on parsed matrix sizes so untrusted headers cannot trigger huge
/// allocations.
pub const MAX_ENTRIES: u128 = 1 << 22;

/// A morphism of the matrix prop: `inputs -> outputs` on wires of dimension
/// `dim`, stored row-major with `dim^outputs` rows and `dim^inputs` columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    dim: usize,
    inputs: usize,
    outputs: usize,
    entries: Vec<ExactScalar>,
}

fn checked_pow(dim: usize, exp: usize) -> Option<usize> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(dim as u128)?;
        if acc > MAX_ENTRIES {
            return None;
        }
    }
    Some(acc as usize)
}

impl Morphism {
    /// Build from explicit rows. Panics on shape mismatch; matrices in code
    /// are literals, untrusted input goes through [`Morphism::from_str`].
    pub fn from_rows(dim: usize, inputs: usize, outputs: usize, rows: Vec<Vec<ExactScalar>>) -> Self {
        let r = dim.pow(outputs as u32);
        let c = dim.pow(inputs as u32);
        assert_eq!(rows.len(), r, "row count");
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "column count");
            entries.extend(row);
        }
        Morphism { dim, inputs, outputs, entries }
    }

    /// Integer literal matrices, the common case for the catalog tables.
    pub fn from_int_rows(dim: usize, inputs: usize, outputs: usize, rows: &[&[i64]]) -> Self {
        Self::from_rows(
            dim,
            inputs,
            outputs,
            rows.iter()
                .map(|r| r.iter().map(|&v| ExactScalar::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn zeros(dim: usize, inputs: usize, outputs: usize) -> Self {
        let r = dim.pow(outputs as u32);
        let c = dim.pow(inputs as u32);
        Morphism { dim, inputs, outputs, entries: vec![ExactScalar::zero(); r * c] }
    }

    /// The identity wire `1 -> 1`.
    pub fn identity(dim: usize) -> Self {
        Self::identity_wires(dim, 1)
    }

    /// `id^{tensor n}`.
    pub fn identity_wires(dim: usize, n: usize) -> Self {
        let mut m = Morphism::zeros(dim, n, n);
        let size = dim.pow(n as u32);
        for i in 0..size {
            m.entries[i * size + i] = ExactScalar::one();
        }
        m
    }

    /// The empty morphism `0 -> 0`, i.e. the scalar 1.
    pub fn empty(dim: usize) -> Self {
        Morphism::scalar(dim, ExactScalar::one())
    }

    /// A scalar as a `0 -> 0` morphism.
    pub fn scalar(dim: usize, value: ExactScalar) -> Self {
        Morphism { dim, inputs: 0, outputs: 0, entries: vec![value] }
    }

    /// The wire swap `2 -> 2`.
    pub fn symmetry(dim: usize) -> Self {
        Morphism::permutation(dim, &[2, 1]).expect("valid permutation")
    }

    /// The permutation `n+1 -> n+1` moving wire 1 past the following `n`
    /// wires: `|x v1 .. vn> -> |v1 .. vn x>`, with `sigma_0 = id`.
    pub fn sigma_n(dim: usize, n: usize) -> Self {
        // sigma_{n+1} = (id^{(x)n} (x) sigma) o (sigma_n (x) id)
        let mut acc = Morphism::identity(dim);
        for k in 0..n {
            let step = Morphism::identity_wires(dim, k)
                .tensor(&Morphism::symmetry(dim))
                .expect("same dim");
            let lifted = acc.tensor(&Morphism::identity(dim)).expect("same dim");
            acc = step.compose(&lifted).expect("arities match");
        }
        acc
    }

    /// Permutation of `k` tensor factors. `perm` is 1-based and read as
    /// "position `i` of the output carries input wire `perm[i-1]`", so
    /// `permutation(d, &[2, 3, 1])` maps `|abc> -> |bca>`.
    pub fn permutation(dim: usize, perm: &[usize]) -> Result<Self, PropError> {
        let k = perm.len();
        let mut seen = vec![false; k];
        for &p in perm {
            if p == 0 || p > k || seen[p - 1] {
                return Err(PropError::NotBijective(k));
            }
            seen[p - 1] = true;
        }
        let size = dim.pow(k as u32);
        let mut m = Morphism::zeros(dim, k, k);
        for col in 0..size {
            // digits of the input index, wire 1 most significant
            let mut digits = vec![0usize; k];
            let mut rest = col;
            for i in (0..k).rev() {
                digits[i] = rest % dim;
                rest /= dim;
            }
            let mut row = 0usize;
            for i in 0..k {
                row = row * dim + digits[perm[i] - 1];
            }
            m.entries[row * size + col] = ExactScalar::one();
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn inputs(&self) -> usize {
        self.inputs
    }
    pub fn outputs(&self) -> usize {
        self.outputs
    }
    pub fn rows(&self) -> usize {
        self.dim.pow(self.outputs as u32)
    }
    pub fn cols(&self) -> usize {
        self.dim.pow(self.inputs as u32)
    }

    pub fn get(&self, row: usize, col: usize) -> &ExactScalar {
        &self.entries[row * self.cols() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: ExactScalar) {
        let c = self.cols();
        self.entries[row * c + col] = value;
    }

    fn arity_str(&self) -> String {
        format!("{} -> {} (d={})", self.inputs, self.outputs, self.dim)
    }

    /// `self` after `g`: standard matrix product. Requires
    /// `self.inputs == g.outputs` and equal dimension.
    pub fn compose(&self, g: &Morphism) -> Result<Morphism, PropError> {
        if self.dim != g.dim {
            return Err(PropError::DimMismatch(self.dim, g.dim));
        }
        if self.inputs != g.outputs {
            return Err(PropError::ArityMismatch { f: self.arity_str(), g: g.arity_str() });
        }
        let mut out = Morphism::zeros(self.dim, g.inputs, self.outputs);
        let inner = self.cols();
        let oc = out.cols();
        for i in 0..self.rows() {
            for k in 0..inner {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..oc {
                    let b = g.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = &out.entries[i * oc + j] + &(a * b);
                    out.entries[i * oc + j] = cur;
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product with `self`'s wires first (most significant).
    pub fn tensor(&self, g: &Morphism) -> Result<Morphism, PropError> {
        if self.dim != g.dim {
            return Err(PropError::DimMismatch(self.dim, g.dim));
        }
        let mut out = Morphism::zeros(self.dim, self.inputs + g.inputs, self.outputs + g.outputs);
        let (gr, gc) = (g.rows(), g.cols());
        let oc = out.cols();
        for i1 in 0..self.rows() {
            for j1 in 0..self.cols() {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..gr {
                    for j2 in 0..gc {
                        let b = g.get(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        out.entries[(i1 * gr + i2) * oc + (j1 * gc + j2)] = a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &ExactScalar) -> Morphism {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = &*e * s;
        }
        out
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism, PropError> {
        if self.dim != other.dim || self.inputs != other.inputs || self.outputs != other.outputs {
            return Err(PropError::ArityMismatch { f: self.arity_str(), g: other.arity_str() });
        }
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e = &*e + o;
        }
        Ok(out)
    }

    /// Transpose, also swapping the arities: `n -> m` becomes `m -> n`.
    pub fn transpose(&self) -> Morphism {
        let mut out = Morphism::zeros(self.dim, self.outputs, self.inputs);
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.inputs == self.outputs && *self == Morphism::identity_wires(self.dim, self.inputs)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// The first position where two equally-shaped morphisms differ.
    pub fn first_difference(&self, other: &Morphism) -> Option<(usize, usize)> {
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                if self.get(i, j) != other.get(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Exact rank by fraction-free-ish Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<ExactScalar>> = (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut rank = 0;
        let cols = self.cols();
        for col in 0..cols {
            let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = rows[rank][col].inv().expect("nonzero pivot");
            for j in col..cols {
                rows[rank][j] = &rows[rank][j] * &inv;
            }
            for r in 0..rows.len() {
                if r != rank && !rows[r][col].is_zero() {
                    let factor = rows[r][col].clone();
                    for j in col..cols {
                        let v = &rows[r][j] - &(&factor * &rows[rank][j]);
                        rows[r][j] = v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Exact inverse of a square morphism (same input and output arity).
    pub fn inverse(&self) -> Result<Morphism, PropError> {
        if self.inputs != self.outputs {
            return Err(PropError::NotInvertible);
        }
        let n = self.rows();
        let mut aug: Vec<Vec<ExactScalar>> = (0..n)
            .map(|i| {
                let mut row: Vec<ExactScalar> =
                    (0..n).map(|j| self.get(i, j).clone()).collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        ExactScalar::one()
                    } else {
                        ExactScalar::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !aug[r][col].is_zero()) else {
                return Err(PropError::NotInvertible);
            };
            aug.swap(col, pivot);
            let inv = aug[col][col].inv().expect("nonzero pivot");
            for j in 0..2 * n {
                aug[col][j] = &aug[col][j] * &inv;
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let factor = aug[r][col].clone();
                    for j in 0..2 * n {
                        let v = &aug[r][j] - &(&factor * &aug[col][j]);
                        aug[r][j] = v;
                    }
                }
            }
        }
        let mut out = Morphism::zeros(self.dim, self.inputs, self.outputs);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug[i][n + j].clone());
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// Text form: a `morphism d=<d> n=<n> m=<m>` header followed by one line per
// row, entries in the exact-scalar text form separated by commas.
// ---------------------------------------------------------------------------

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "morphism d={} n={} m={}", self.dim, self.inputs, self.outputs)?;
        for i in 0..self.rows() {
            let row: Vec<String> = (0..self.cols()).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(", "))?;
        }
        Ok(())
    }
}

fn header_field(token: &str, key: &str, line: usize) -> Result<usize, MorphismParseError> {
    let rest = token
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| MorphismParseError::Malformed {
            line,
            msg: format!("expected `{key}=<int>`, got `{token}`"),
        })?;
    rest.parse::<usize>().map_err(|e| MorphismParseError::Malformed {
        line,
        msg: format!("bad integer in `{token}`: {e}"),
    })
}

impl FromStr for Morphism {
    type Err = MorphismParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hline, header) = lines.next().ok_or(MorphismParseError::Malformed {
            line: 1,
            msg: "empty input".into(),
        })?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 4 || toks[0] != "morphism" {
            return Err(MorphismParseError::Malformed {
                line: hline + 1,
                msg: "expected header `morphism d=<d> n=<n> m=<m>`".into(),
            });
        }
        let dim = header_field(toks[1], "d", hline + 1)?;
        let inputs = header_field(toks[2], "n", hline + 1)?;
        let outputs = header_field(toks[3], "m", hline + 1)?;
        if dim == 0 {
            return Err(MorphismParseError::Malformed {
                line: hline + 1,
                msg: "wire dimension must be at least 1".into(),
            });
        }
        let (rows, cols) = match (checked_pow(dim, outputs), checked_pow(dim, inputs)) {
            (Some(r), Some(c)) if (r as u128) * (c as u128) <= MAX_ENTRIES => (r, c),
            _ => {
                let approx = (dim as u128)
                    .saturating_pow(outputs.min(64) as u32)
                    .saturating_mul((dim as u128).saturating_pow(inputs.min(64) as u32));
                return Err(MorphismParseError::TooLarge(approx));
            }
        };
        let mut entries = Vec::with_capacity(rows * cols);
        let mut row_count = 0;
        for (lno, line) in lines {
            if row_count == rows {
                return Err(MorphismParseError::Malformed {
                    line: lno + 1,
                    msg: format!("expected exactly {rows} rows"),
                });
            }
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != cols {
                return Err(MorphismParseError::Malformed {
                    line: lno + 1,
                    msg: format!("expected {cols} entries, got {}", cells.len()),
                });
            }
            for cell in cells {
                let v: ExactScalar = cell
                    .trim()
                    .parse()
                    .map_err(|source| MorphismParseError::Scalar { line: lno + 1, source })?;
                entries.push(v);
            }
            row_count += 1;
        }
        if row_count != rows {
            return Err(MorphismParseError::Malformed {
                line: s.lines().count(),
                msg: format!("expected {rows} rows, got {row_count}"),
            });
        }
        Ok(Morphism { dim, inputs, outputs, entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sc(v: i64) -> ExactScalar {
        ExactScalar::from_int(v)
    }

    #[test]
    fn identity_axioms() {
        let f = Morphism::from_int_rows(2, 1, 1, &[&[1, 2], &[3, 4]]);
        let id = Morphism::identity(2);
        assert_eq!(id.compose(&f).unwrap(), f);
        assert_eq!(f.compose(&id).unwrap(), f);
        let e = Morphism::empty(2);
        assert_eq!(e.tensor(&f).unwrap(), f);
        assert_eq!(f.tensor(&e).unwrap(), f);
    }

    #[test]
    fn symmetry_swaps_basis_states() {
        let s = Morphism::symmetry(2);
        // |01> (column 1) must map to |10> (row 2)
        assert!(s.get(2, 1).is_one());
        assert!(s.get(1, 2).is_one());
        assert!(s.get(0, 0).is_one());
        assert!(s.get(3, 3).is_one());
        assert_eq!(s.compose(&s).unwrap(), Morphism::identity_wires(2, 2));
    }

    #[test]
    fn tensor_orders_wires_most_significant_first() {
        // eta_Z (x) eta_W = (1,1)^T (x) (1,0)^T = (1,0,1,0)^T
        let eta_z = Morphism::from_int_rows(2, 0, 1, &[&[1], &[1]]);
        let eta_w = Morphism::from_int_rows(2, 0, 1, &[&[1], &[0]]);
        let t = eta_z.tensor(&eta_w).unwrap();
        let expected = Morphism::from_int_rows(2, 0, 2, &[&[1], &[0], &[1], &[0]]);
        assert_eq!(t, expected);
    }

    #[test]
    fn arity_distinguishes_morphisms() {
        let cap = Morphism::from_int_rows(2, 2, 0, &[&[1, 0, 0, 1]]);
        let cup = Morphism::from_int_rows(2, 0, 2, &[&[1], &[0], &[0], &[1]]);
        assert_ne!(cap, cup);
        // cap o cup is the scalar 2; cup o cap is a legal 2 -> 2 morphism
        let loop_scalar = cap.compose(&cup).unwrap();
        assert_eq!(loop_scalar, Morphism::scalar(2, ExactScalar::from_int(2)));
        let proj = cup.compose(&cap).unwrap();
        assert_eq!(proj.inputs(), 2);
        assert_eq!(proj.outputs(), 2);
        // composing in mismatched arity really errors
        assert!(cap.compose(&proj).is_ok());
        assert!(cap.compose(&cap).is_err());
    }

    #[test]
    fn sigma_n_rotates_first_wire_to_last() {
        assert_eq!(Morphism::sigma_n(2, 0), Morphism::identity(2));
        assert_eq!(Morphism::sigma_n(2, 1), Morphism::symmetry(2));
        // oracle: |abc> -> |bca> is the permutation [2, 3, 1]
        let oracle = Morphism::permutation(2, &[2, 3, 1]).unwrap();
        assert_eq!(Morphism::sigma_n(2, 2), oracle);
        let oracle4 = Morphism::permutation(2, &[2, 3, 4, 1]).unwrap();
        assert_eq!(Morphism::sigma_n(2, 3), oracle4);
        // and at d = 3
        let oracle3 = Morphism::permutation(3, &[2, 3, 1]).unwrap();
        assert_eq!(Morphism::sigma_n(3, 2), oracle3);
    }

    #[test]
    fn permutations_compose_like_permutations() {
        let id = Morphism::permutation(2, &[1, 2, 3]).unwrap();
        assert!(id.is_identity());
        let c = Morphism::permutation(2, &[2, 3, 1]).unwrap();
        let c2 = c.compose(&c).unwrap();
        assert_eq!(c2, Morphism::permutation(2, &[3, 1, 2]).unwrap());
        assert!(c.compose(&c2).unwrap().is_identity());
        assert_eq!(Morphism::permutation(2, &[2, 1]).unwrap(), Morphism::symmetry(2));
        assert!(Morphism::permutation(2, &[1, 1]).is_err());
        assert!(Morphism::permutation(2, &[0, 1]).is_err());
    }

    #[test]
    fn inverse_and_rank() {
        let m = Morphism::from_int_rows(2, 1, 1, &[&[1, 1], &[0, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.compose(&inv).unwrap().is_identity());
        assert_eq!(m.rank(), 2);
        let sing = Morphism::from_int_rows(2, 1, 1, &[&[1, 1], &[1, 1]]);
        assert_eq!(sing.rank(), 1);
        assert!(sing.inverse().is_err());
    }

    #[test]
    fn text_round_trip() {
        let mut m = Morphism::from_int_rows(2, 1, 1, &[&[1, 0], &[0, 1]]);
        m.set(0, 1, "1/2 + i".parse().unwrap());
        let text = m.to_string();
        let back: Morphism = text.parse().unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_string(), text);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!("".parse::<Morphism>().is_err());
        assert!("morphism d=2 n=1".parse::<Morphism>().is_err());
        assert!("morphism d=0 n=1 m=1\n1\n".parse::<Morphism>().is_err());
        assert!("morphism d=2 n=1 m=1\n1, 0\n".parse::<Morphism>().is_err());
        assert!("morphism d=2 n=1 m=1\n1, 0\n0, 1\n0, 0\n".parse::<Morphism>().is_err());
        assert!("morphism d=2 n=1 m=1\n1, x\n0, 1\n".parse::<Morphism>().is_err());
        // oversized headers are rejected before any allocation happens
        assert!(matches!(
            "morphism d=9 n=99 m=99\n".parse::<Morphism>(),
            Err(MorphismParseError::TooLarge(_))
        ));
    }

    fn arb_matrix(inputs: usize, outputs: usize) -> impl Strategy<Value = Morphism> {
        let rows = 2usize.pow(outputs as u32);
        let cols = 2usize.pow(inputs as u32);
        proptest::collection::vec(-3i64..4, rows * cols).prop_map(move |vals| {
            let rows_vec: Vec<Vec<ExactScalar>> = vals
                .chunks(cols)
                .map(|ch| ch.iter().map(|&v| sc(v)).collect())
                .collect();
            Morphism::from_rows(2, inputs, outputs, rows_vec)
        })
    }

    fn arb_arity() -> impl Strategy<Value = (usize, usize)> {
        (0usize..3, 0usize..3)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn compose_associative(
            (a, b) in arb_arity(), (c, d) in arb_arity(),
            seed in any::<u64>(),
        ) {
            // build composable f: c->d after g: b->c after h: a->b
            let mut rng = seed;
            let mut next = move |lo: i64, hi: i64| {
                rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                lo + ((rng >> 33) as i64).rem_euclid(hi - lo)
            };
            let mk = |ins: usize, outs: usize, next: &mut dyn FnMut(i64, i64) -> i64| {
                let rows = 2usize.pow(outs as u32);
                let cols = 2usize.pow(ins as u32);
                Morphism::from_rows(2, ins, outs, (0..rows).map(|_| {
                    (0..cols).map(|_| sc(next(-3, 4))).collect()
                }).collect())
            };
            let h = mk(a, b, &mut next);
            let g = mk(b, c, &mut next);
            let f = mk(c, d, &mut next);
            let lhs = f.compose(&g).unwrap().compose(&h).unwrap();
            let rhs = f.compose(&g.compose(&h).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn tensor_associative_and_interchange(
            f in arb_matrix(1, 1), g in arb_matrix(1, 2),
            h in arb_matrix(2, 1), k in arb_matrix(1, 1),
        ) {
            let lhs = f.tensor(&g).unwrap().tensor(&h).unwrap();
            let rhs = f.tensor(&g.tensor(&h).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            // (f o h) (x) (g o k) = (f (x) g) o (h (x) k)
            let fo = f.compose(&h).unwrap();
            let gk = g.compose(&k).unwrap();
            let left = fo.tensor(&gk).unwrap();
            let right = f.tensor(&g).unwrap().compose(&h.tensor(&k).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn symmetry_naturality(f in arb_matrix(1, 1)) {
            let s = Morphism::symmetry(2);
            let id = Morphism::identity(2);
            let lhs = s.compose(&f.tensor(&id).unwrap()).unwrap();
            let rhs = id.tensor(&f).unwrap().compose(&s).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
