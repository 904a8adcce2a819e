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

//! Exact scalars in the number field Q(i, sqrt2).
//!
//! Every scalar appearing in the generator tables of the supported calculi
//! lives in this field: rationals for the Z/X/W data, sqrt2 for the Hadamard
//! instance of ZH, and i so that phase parameters can be sampled off the real
//! line. Elements are kept in a canonical form (four reduced rationals), so
//! structural equality *is* field equality and matrices of [`ExactScalar`]s
//! can be compared entrywise with zero tolerance.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use thiserror::Error;

/// Minimal field interface shared by [`ExactScalar`], the rationals and the
/// prime fields used by the linear-relation component.
pub trait Field:
    Clone + PartialEq + Eq + std::hash::Hash + fmt::Debug + fmt::Display + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid scalar literal at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// An element `c1 + ci*i + cr2*sqrt2 + cir2*i*sqrt2` of Q(i, sqrt2).
///
/// The four coordinates are reduced rationals with positive denominator
/// (enforced by `BigRational`), so two values are equal in the field iff they
/// are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    c1: BigRational,
    ci: BigRational,
    cr2: BigRational,
    cir2: BigRational,
}

fn brat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl ExactScalar {
    pub fn new(c1: BigRational, ci: BigRational, cr2: BigRational, cir2: BigRational) -> Self {
        ExactScalar { c1, ci, cr2, cir2 }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(n, 1)
    }

    /// Panics if `d == 0`; reserved for literals in code, not user input.
    pub fn from_rational(n: i64, d: i64) -> Self {
        ExactScalar::new(brat(n, d), BigRational::zero(), BigRational::zero(), BigRational::zero())
    }

    pub fn i() -> Self {
        ExactScalar::new(BigRational::zero(), BigRational::one(), BigRational::zero(), BigRational::zero())
    }

    pub fn sqrt2() -> Self {
        ExactScalar::new(BigRational::zero(), BigRational::zero(), BigRational::one(), BigRational::zero())
    }

    pub fn coords(&self) -> (&BigRational, &BigRational, &BigRational, &BigRational) {
        (&self.c1, &self.ci, &self.cr2, &self.cir2)
    }

    pub fn is_zero(&self) -> bool {
        self.c1.is_zero() && self.ci.is_zero() && self.cr2.is_zero() && self.cir2.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.c1.is_one() && self.ci.is_zero() && self.cr2.is_zero() && self.cir2.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.ci.is_zero() && self.cr2.is_zero() && self.cir2.is_zero()
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // Write x = u + v*sqrt2 with u, v in Q(i). Then
        // 1/x = (u - v*sqrt2) / (u^2 - 2 v^2), and the denominator is a
        // nonzero element of Q(i) because sqrt2 is not in Q(i).
        let u = Gauss(self.c1.clone(), self.ci.clone());
        let v = Gauss(self.cr2.clone(), self.cir2.clone());
        let den = u.mul(&u).sub(&v.mul(&v).scale2());
        let den_inv = den.inv().expect("nonzero by field degree argument");
        let a = u.mul(&den_inv);
        let b = v.neg().mul(&den_inv);
        Ok(ExactScalar::new(a.0, a.1, b.0, b.1))
    }

    /// A square root inside Q(i, sqrt2) when one exists, `None` otherwise.
    /// Absence is an answer, not an error: the field is fixed and is never
    /// extended by further radicals.
    pub fn sqrt_if_exact(&self) -> Option<Self> {
        let u = Gauss(self.c1.clone(), self.ci.clone());
        let v = Gauss(self.cr2.clone(), self.cir2.clone());
        let mut candidates: Vec<(Gauss, Gauss)> = Vec::new();
        if v.is_zero() {
            // y = z with z^2 = u, or y = w*sqrt2 with w^2 = u/2.
            if let Some(z) = u.sqrt() {
                candidates.push((z, Gauss::zero()));
            }
            if let Some(w) = u.half().sqrt() {
                candidates.push((Gauss::zero(), w));
            }
        } else {
            // y = z + w*sqrt2, z,w in Q(i), both nonzero. From y^2 = x:
            //   z^2 + 2 w^2 = u   and   2 z w = v,
            // so z^2 is a root of 2 T^2 - 2 u T + v^2, i.e. (u ± t)/2 with
            // t^2 = u^2 - 2 v^2.
            let disc = u.mul(&u).sub(&v.mul(&v).scale2());
            if let Some(t) = disc.sqrt() {
                for tt in [t.clone(), t.neg()] {
                    let z2 = u.add(&tt).half();
                    if let Some(z) = z2.sqrt() {
                        if !z.is_zero() {
                            let w = v.mul(&z.scale2().inv().expect("nonzero"));
                            candidates.push((z, w));
                        }
                    }
                }
            }
        }
        for (z, w) in candidates {
            let y = ExactScalar::new(z.0, z.1, w.0, w.1);
            if &(&y * &y) == self {
                return Some(y);
            }
        }
        None
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = ExactScalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for ExactScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Helper: elements of Q(i) as pairs (re, im).
#[derive(Clone, PartialEq)]
struct Gauss(BigRational, BigRational);

impl Gauss {
    fn zero() -> Self {
        Gauss(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero() && self.1.is_zero()
    }
    fn add(&self, o: &Gauss) -> Gauss {
        Gauss(&self.0 + &o.0, &self.1 + &o.1)
    }
    fn sub(&self, o: &Gauss) -> Gauss {
        Gauss(&self.0 - &o.0, &self.1 - &o.1)
    }
    fn mul(&self, o: &Gauss) -> Gauss {
        Gauss(&self.0 * &o.0 - &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
    }
    fn neg(&self) -> Gauss {
        Gauss(-self.0.clone(), -self.1.clone())
    }
    fn scale2(&self) -> Gauss {
        let two = BigRational::from(BigInt::from(2));
        Gauss(&self.0 * &two, &self.1 * &two)
    }
    fn half(&self) -> Gauss {
        let half = brat(1, 2);
        Gauss(&self.0 * &half, &self.1 * &half)
    }
    fn inv(&self) -> Option<Gauss> {
        if self.is_zero() {
            return None;
        }
        let n = &self.0 * &self.0 + &self.1 * &self.1;
        Some(Gauss(&self.0 / &n, -(&self.1 / &n)))
    }
    /// Square root inside Q(i), if any.
    fn sqrt(&self) -> Option<Gauss> {
        if self.1.is_zero() {
            let a = &self.0;
            if a.is_negative() {
                return rational_sqrt(&-a.clone()).map(|s| Gauss(BigRational::zero(), s));
            }
            return rational_sqrt(a).map(|s| Gauss(s, BigRational::zero()));
        }
        // (c + d i)^2 = a + b i with b != 0 forces |a+bi| rational:
        // c^2 = (a + N)/2 with N = sqrt(a^2 + b^2), then d = b / 2c.
        let norm = &self.0 * &self.0 + &self.1 * &self.1;
        let n = rational_sqrt(&norm)?;
        let c2 = (&self.0 + &n) * brat(1, 2);
        let c = rational_sqrt(&c2)?;
        if c.is_zero() {
            return None;
        }
        let d = &self.1 / (&c * BigRational::from(BigInt::from(2)));
        let cand = Gauss(c, d);
        if cand.mul(&cand) == *self {
            Some(cand)
        } else {
            None
        }
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer();
    let den = r.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar::new(
            &self.c1 + &rhs.c1,
            &self.ci + &rhs.ci,
            &self.cr2 + &rhs.cr2,
            &self.cir2 + &rhs.cir2,
        )
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar::new(
            &self.c1 - &rhs.c1,
            &self.ci - &rhs.ci,
            &self.cr2 - &rhs.cr2,
            &self.cir2 - &rhs.cir2,
        )
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        // Fast paths matter: structure matrices are mostly 0s and 1s.
        if self.is_zero() || rhs.is_zero() {
            return ExactScalar::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let (w1, x1, y1, z1) = (&self.c1, &self.ci, &self.cr2, &self.cir2);
        let (w2, x2, y2, z2) = (&rhs.c1, &rhs.ci, &rhs.cr2, &rhs.cir2);
        let two = BigRational::from(BigInt::from(2));
        ExactScalar::new(
            w1 * w2 - x1 * x2 + &two * (y1 * y2) - &two * (z1 * z2),
            w1 * x2 + x1 * w2 + &two * (y1 * z2) + &two * (z1 * y2),
            w1 * y2 + y1 * w2 - x1 * z2 - z1 * x2,
            w1 * z2 + z1 * w2 + x1 * y2 + y1 * x2,
        )
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::new(
            -self.c1.clone(),
            -self.ci.clone(),
            -self.cr2.clone(),
            -self.cir2.clone(),
        )
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                $trait::$method(self, &rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl Field for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn one() -> Self {
        ExactScalar::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        ExactScalar::inv(self).ok()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
}

// ---------------------------------------------------------------------------
// Text form
//
// `p/q + p/q*i + p/q*r2 + p/q*i*r2` with zero terms omitted, `0` for zero and
// unit coefficients contracted (`i`, `- r2`, ...). Parsing accepts arbitrary
// whitespace between tokens; serialize -> parse -> serialize is the identity.
// ---------------------------------------------------------------------------

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let units: [(&BigRational, Option<&str>); 4] = [
            (&self.c1, None),
            (&self.ci, Some("i")),
            (&self.cr2, Some("r2")),
            (&self.cir2, Some("i*r2")),
        ];
        let mut first = true;
        for (coeff, unit) in units {
            if coeff.is_zero() {
                continue;
            }
            let mag = coeff.abs();
            if first {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match unit {
                None => write!(f, "{}", fmt_rat(&mag))?,
                Some(u) => {
                    if mag.is_one() {
                        write!(f, "{u}")?;
                    } else {
                        write!(f, "{}*{u}", fmt_rat(&mag))?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer { bytes: s.as_bytes(), pos: 0 }
    }
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }
    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }
    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }
    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Parse { pos: self.pos, msg: msg.to_string() }
    }
    fn digits(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        s.parse::<BigInt>()
            .map_err(|e| self.err(&format!("bad integer: {e}")))
    }
    fn rational(&mut self) -> Result<BigRational, ScalarError> {
        let n = self.digits()?;
        if self.eat(b'/') {
            let d = self.digits()?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from(n))
        }
    }
    /// `i`, `r2`, `i*r2`; returns basis index 1..=3.
    fn unit(&mut self) -> Result<usize, ScalarError> {
        if self.eat(b'i') {
            let save = self.pos;
            if self.eat(b'*') {
                if self.eat(b'r') && self.eat(b'2') {
                    return Ok(3);
                }
                self.pos = save;
            }
            Ok(1)
        } else if self.eat(b'r') {
            if self.eat(b'2') {
                Ok(2)
            } else {
                Err(self.err("expected 'r2'"))
            }
        } else {
            Err(self.err("expected unit 'i', 'r2' or 'i*r2'"))
        }
    }
}

impl FromStr for ExactScalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lx = Lexer::new(s);
        let mut coeffs = [
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ];
        let mut first = true;
        loop {
            let b = match lx.peek() {
                Some(b) => b,
                None if first => return Err(lx.err("empty scalar")),
                None => break,
            };
            let sign = match b {
                b'+' if !first => {
                    lx.bump();
                    1
                }
                b'-' => {
                    lx.bump();
                    -1
                }
                b'+' => return Err(lx.err("unexpected leading '+'")),
                _ if first => 1,
                _ => return Err(lx.err("expected '+' or '-' between terms")),
            };
            let (coeff, idx) = match lx.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let r = lx.rational()?;
                    if lx.eat(b'*') {
                        (r, lx.unit()?)
                    } else {
                        (r, 0)
                    }
                }
                Some(_) => (BigRational::one(), lx.unit()?),
                None => return Err(lx.err("dangling sign")),
            };
            let signed = if sign < 0 { -coeff } else { coeff };
            coeffs[idx] = &coeffs[idx] + &signed;
            first = false;
        }
        let [c1, ci, cr2, cir2] = coeffs;
        Ok(ExactScalar::new(c1, ci, cr2, cir2))
    }
}
