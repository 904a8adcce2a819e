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

//! Algebraic structures inside the matrix prop and their exact checkers:
//! commutative monoids, cocommutative comonoids, phases and phase-shifts,
//! Frobenius algebras with their spiders and induced compact structures,
//! dualizers and compatibility, the four bialgebra laws, and Z*-algebras.
//!
//! All checks are exact. Checkers return a [`CheckReport`] listing each law
//! with a pass/fail verdict and the first differing matrix entry on failure.

use crate::prop::{Morphism, PropError};
use crate::report::{CheckReport, Counterexample, LawReport};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StructureError {
    #[error(transparent)]
    Prop(#[from] PropError),
    #[error("expected a {expected} morphism, got {got}")]
    WrongArity { expected: String, got: String },
    #[error("morphism is not a phase of the given structure")]
    NotAPhase,
}

/// A commutative monoid: product `2 -> 1` and unit `0 -> 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monoid {
    pub product: Morphism,
    pub unit: Morphism,
}

/// A cocommutative comonoid: coproduct `1 -> 2` and counit `1 -> 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comonoid {
    pub coproduct: Morphism,
    pub counit: Morphism,
}

/// A commutative Frobenius algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frobenius {
    pub monoid: Monoid,
    pub comonoid: Comonoid,
}

/// A compact structure: cup `0 -> 2` and cap `2 -> 0` satisfying the snake
/// equations; all compact structures here are symmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactStructure {
    pub cup: Morphism,
    pub cap: Morphism,
}

/// Two compatible Frobenius algebras whose white comonoid and black monoid
/// satisfy the bialgebra law (B). The dualizer is cached at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZStarAlgebra {
    pub white: Frobenius,
    pub black: Frobenius,
    dualizer: Morphism,
}

fn expect_arity(m: &Morphism, inputs: usize, outputs: usize, what: &str) -> Result<(), StructureError> {
    if m.inputs() != inputs || m.outputs() != outputs {
        return Err(StructureError::WrongArity {
            expected: format!("{what} ({inputs} -> {outputs})"),
            got: format!("{} -> {}", m.inputs(), m.outputs()),
        });
    }
    Ok(())
}

/// Compare two morphisms into a law report.
pub fn law_eq(law: &str, lhs: &Morphism, rhs: &Morphism) -> LawReport {
    if lhs == rhs {
        LawReport::pass(law)
    } else if let Some((row, col)) = lhs.first_difference(rhs) {
        LawReport::fail(
            law,
            Counterexample {
                row,
                col,
                lhs: lhs.get(row, col).clone(),
                rhs: rhs.get(row, col).clone(),
            },
        )
    } else {
        // same entries but different arity tags
        LawReport::fail_plain(law)
    }
}

impl Monoid {
    pub fn new(product: Morphism, unit: Morphism) -> Result<Self, StructureError> {
        expect_arity(&product, 2, 1, "product")?;
        expect_arity(&unit, 0, 1, "unit")?;
        if product.dim() != unit.dim() {
            return Err(PropError::DimMismatch(product.dim(), unit.dim()).into());
        }
        Ok(Monoid { product, unit })
    }

    pub fn dim(&self) -> usize {
        self.product.dim()
    }

    /// The n-ary product: `mu_0 = eta`, `mu_1 = id`,
    /// `mu_{n+1} = mu o (mu_n (x) id)`.
    pub fn nary(&self, n: usize) -> Morphism {
        match n {
            0 => self.unit.clone(),
            _ => {
                let id = Morphism::identity(self.dim());
                let mut acc = id.clone();
                for _ in 1..n {
                    acc = self.product.compose(&acc.tensor(&id).expect("dim")).expect("arity");
                }
                acc
            }
        }
    }
}

impl Comonoid {
    pub fn new(coproduct: Morphism, counit: Morphism) -> Result<Self, StructureError> {
        expect_arity(&coproduct, 1, 2, "coproduct")?;
        expect_arity(&counit, 1, 0, "counit")?;
        if coproduct.dim() != counit.dim() {
            return Err(PropError::DimMismatch(coproduct.dim(), counit.dim()).into());
        }
        Ok(Comonoid { coproduct, counit })
    }

    pub fn dim(&self) -> usize {
        self.coproduct.dim()
    }

    /// `delta_0 = epsilon`, `delta_1 = id`,
    /// `delta_{n+1} = (delta_n (x) id) o delta`.
    pub fn nary(&self, n: usize) -> Morphism {
        match n {
            0 => self.counit.clone(),
            _ => {
                let id = Morphism::identity(self.dim());
                let mut acc = id.clone();
                for _ in 1..n {
                    acc = acc.tensor(&id).expect("dim").compose(&self.coproduct).expect("arity");
                }
                acc
            }
        }
    }

    /// The transpose monoid (used by structure transport in tests).
    pub fn transpose(&self) -> Monoid {
        Monoid {
            product: self.coproduct.transpose(),
            unit: self.counit.transpose(),
        }
    }
}

pub fn check_monoid(m: &Monoid) -> CheckReport {
    let mut report = CheckReport::new("monoid");
    let d = m.dim();
    let id = Morphism::identity(d);
    let sym = Morphism::symmetry(d);
    let unit_left = m.product.compose(&m.unit.tensor(&id).unwrap()).unwrap();
    report.push(law_eq("unit-left", &unit_left, &id));
    let unit_right = m.product.compose(&id.tensor(&m.unit).unwrap()).unwrap();
    report.push(law_eq("unit-right", &unit_right, &id));
    let assoc_l = m.product.compose(&m.product.tensor(&id).unwrap()).unwrap();
    let assoc_r = m.product.compose(&id.tensor(&m.product).unwrap()).unwrap();
    report.push(law_eq("associativity", &assoc_l, &assoc_r));
    let comm = m.product.compose(&sym).unwrap();
    report.push(law_eq("commutativity", &comm, &m.product));
    report
}

pub fn check_comonoid(c: &Comonoid) -> CheckReport {
    let mut report = CheckReport::new("comonoid");
    let d = c.dim();
    let id = Morphism::identity(d);
    let sym = Morphism::symmetry(d);
    let counit_left = c.counit.tensor(&id).unwrap().compose(&c.coproduct).unwrap();
    report.push(law_eq("counit-left", &counit_left, &id));
    let counit_right = id.tensor(&c.counit).unwrap().compose(&c.coproduct).unwrap();
    report.push(law_eq("counit-right", &counit_right, &id));
    let coassoc_l = c.coproduct.tensor(&id).unwrap().compose(&c.coproduct).unwrap();
    let coassoc_r = id.tensor(&c.coproduct).unwrap().compose(&c.coproduct).unwrap();
    report.push(law_eq("coassociativity", &coassoc_l, &coassoc_r));
    let cocomm = sym.compose(&c.coproduct).unwrap();
    report.push(law_eq("cocommutativity", &cocomm, &c.coproduct));
    report
}

/// The phase equation for a monoid: `mu o (alpha (x) id) = alpha o mu`, with
/// `alpha` invertible.
pub fn is_phase_of_monoid(m: &Monoid, op: &Morphism) -> bool {
    if op.inputs() != 1 || op.outputs() != 1 || op.dim() != m.dim() {
        return false;
    }
    if op.inverse().is_err() {
        return false;
    }
    let id = Morphism::identity(m.dim());
    let lhs = m.product.compose(&op.tensor(&id).unwrap()).unwrap();
    let rhs = op.compose(&m.product).unwrap();
    lhs == rhs
}

/// Dual phase equation for a comonoid: `(alpha (x) id) o delta = delta o alpha`.
pub fn is_phase_of_comonoid(c: &Comonoid, op: &Morphism) -> bool {
    if op.inputs() != 1 || op.outputs() != 1 || op.dim() != c.dim() {
        return false;
    }
    if op.inverse().is_err() {
        return false;
    }
    let id = Morphism::identity(c.dim());
    let lhs = op.tensor(&id).unwrap().compose(&c.coproduct).unwrap();
    let rhs = c.coproduct.compose(op).unwrap();
    lhs == rhs
}

/// `(mu(alpha), eta(alpha^{-1}))`. Errors when `alpha` is not a phase.
pub fn phase_shift_monoid(m: &Monoid, alpha: &Morphism) -> Result<Monoid, StructureError> {
    if !is_phase_of_monoid(m, alpha) {
        return Err(StructureError::NotAPhase);
    }
    let inv = alpha.inverse().expect("phases are invertible");
    Ok(Monoid {
        product: alpha.compose(&m.product)?,
        unit: inv.compose(&m.unit)?,
    })
}

/// `(delta(alpha), epsilon(alpha^{-1}))`. Errors when `alpha` is not a phase.
pub fn phase_shift_comonoid(c: &Comonoid, alpha: &Morphism) -> Result<Comonoid, StructureError> {
    if !is_phase_of_comonoid(c, alpha) {
        return Err(StructureError::NotAPhase);
    }
    let inv = alpha.inverse().expect("phases are invertible");
    Ok(Comonoid {
        coproduct: c.coproduct.compose(alpha)?,
        counit: c.counit.compose(&inv)?,
    })
}

impl Frobenius {
    pub fn new(monoid: Monoid, comonoid: Comonoid) -> Result<Self, StructureError> {
        if monoid.dim() != comonoid.dim() {
            return Err(PropError::DimMismatch(monoid.dim(), comonoid.dim()).into());
        }
        Ok(Frobenius { monoid, comonoid })
    }

    pub fn dim(&self) -> usize {
        self.monoid.dim()
    }

    /// Shift the monoid half by a phase: `(mu(a), eta(a^{-1}), delta, eps)`.
    pub fn shift_monoid_side(&self, alpha: &Morphism) -> Result<Frobenius, StructureError> {
        Ok(Frobenius {
            monoid: phase_shift_monoid(&self.monoid, alpha)?,
            comonoid: self.comonoid.clone(),
        })
    }

    /// Shift the comonoid half by a phase: `(mu, eta, delta(b), eps(b^{-1}))`.
    pub fn shift_comonoid_side(&self, beta: &Morphism) -> Result<Frobenius, StructureError> {
        Ok(Frobenius {
            monoid: self.monoid.clone(),
            comonoid: phase_shift_comonoid(&self.comonoid, beta)?,
        })
    }
}

pub fn check_frobenius(f: &Frobenius) -> CheckReport {
    let mut report = CheckReport::new("frobenius");
    report.extend_from(check_monoid(&f.monoid));
    report.extend_from(check_comonoid(&f.comonoid));
    let d = f.dim();
    let id = Morphism::identity(d);
    let mid = f.comonoid.coproduct.compose(&f.monoid.product).unwrap();
    let left = id
        .tensor(&f.monoid.product)
        .unwrap()
        .compose(&f.comonoid.coproduct.tensor(&id).unwrap())
        .unwrap();
    let right = f
        .monoid
        .product
        .tensor(&id)
        .unwrap()
        .compose(&id.tensor(&f.comonoid.coproduct).unwrap())
        .unwrap();
    report.push(law_eq("frobenius-left", &left, &mid));
    report.push(law_eq("frobenius-right", &right, &mid));
    report
}

/// The decorated spider `S_{n,m}(alpha) = delta_m o alpha o mu_n`.
pub fn spider(
    f: &Frobenius,
    n: usize,
    m: usize,
    alpha: Option<&Morphism>,
) -> Result<Morphism, StructureError> {
    let merge = f.monoid.nary(n);
    let split = f.comonoid.nary(m);
    match alpha {
        None => Ok(split.compose(&merge)?),
        Some(op) => {
            if !is_phase_of_monoid(&f.monoid, op) {
                return Err(StructureError::NotAPhase);
            }
            Ok(split.compose(&op.compose(&merge)?)?)
        }
    }
}

/// The compact structure induced by a Frobenius algebra:
/// `cap = eps o mu`, `cup = delta o eta`.
pub fn induced_compact(f: &Frobenius) -> CompactStructure {
    CompactStructure {
        cap: f.comonoid.counit.compose(&f.monoid.product).unwrap(),
        cup: f.comonoid.coproduct.compose(&f.monoid.unit).unwrap(),
    }
}

pub fn check_compact(c: &CompactStructure) -> CheckReport {
    let mut report = CheckReport::new("compact");
    let d = c.cup.dim();
    let id = Morphism::identity(d);
    let snake_l = c.cap.tensor(&id).unwrap().compose(&id.tensor(&c.cup).unwrap()).unwrap();
    report.push(law_eq("snake-left", &snake_l, &id));
    let snake_r = id.tensor(&c.cap).unwrap().compose(&c.cup.tensor(&id).unwrap()).unwrap();
    report.push(law_eq("snake-right", &snake_r, &id));
    let sym = Morphism::symmetry(d);
    let twisted = c.cap.compose(&sym).unwrap();
    report.push(law_eq("cap-symmetric", &twisted, &c.cap));
    report
}

/// The dualizer of two compact structures: bend with `a`'s cap and `b`'s cup,
/// `(cap_a (x) id) o (id (x) cup_b)`.
pub fn dualizer(a: &CompactStructure, b: &CompactStructure) -> Result<Morphism, StructureError> {
    if a.cap.dim() != b.cup.dim() {
        return Err(PropError::DimMismatch(a.cap.dim(), b.cup.dim()).into());
    }
    let id = Morphism::identity(a.cap.dim());
    Ok(a.cap
        .tensor(&id)?
        .compose(&id.tensor(&b.cup)?)?)
}

/// The other bending, `(id (x) cap_b) o (cup_a (x) id)`; always the inverse of
/// [`dualizer`] thanks to the snake equations.
pub fn dualizer_inverse_composite(
    a: &CompactStructure,
    b: &CompactStructure,
) -> Result<Morphism, StructureError> {
    let id = Morphism::identity(a.cap.dim());
    Ok(id.tensor(&b.cap)?.compose(&a.cup.tensor(&id)?)?)
}

/// Compatibility of two Frobenius algebras: the dualizer of their induced
/// compact structures is an involution.
pub fn check_compatibility(a: &Frobenius, b: &Frobenius) -> bool {
    compatibility_report(a, b).passed()
}

pub fn compatibility_report(a: &Frobenius, b: &Frobenius) -> CheckReport {
    let mut report = CheckReport::new("compatibility");
    let ca = induced_compact(a);
    let cb = induced_compact(b);
    match dualizer(&ca, &cb) {
        Ok(d) => {
            let sq = d.compose(&d).unwrap();
            let id = Morphism::identity(d.dim());
            report.push(law_eq("dualizer-involution", &sq, &id));
        }
        Err(_) => report.push(LawReport::fail_plain("dualizer-involution")),
    }
    report
}

/// The four bialgebra laws between a comonoid and a monoid, reported
/// separately; a Z*-algebra needs only (B).
pub fn check_bialgebra(c: &Comonoid, m: &Monoid) -> CheckReport {
    let mut report = CheckReport::new("bialgebra");
    if c.dim() != m.dim() {
        report.push(LawReport::fail_plain("B"));
        return report;
    }
    let d = c.dim();
    let id = Morphism::identity(d);
    let sym = Morphism::symmetry(d);

    // (B): delta o mu = (mu (x) mu) o (id (x) sigma (x) id) o (delta (x) delta)
    let lhs = c.coproduct.compose(&m.product).unwrap();
    let mid = id.tensor(&sym).unwrap().tensor(&id).unwrap();
    let rhs = m
        .product
        .tensor(&m.product)
        .unwrap()
        .compose(&mid)
        .unwrap()
        .compose(&c.coproduct.tensor(&c.coproduct).unwrap())
        .unwrap();
    report.push(law_eq("B", &lhs, &rhs));

    // (C1): eps o mu = eps (x) eps
    let lhs = c.counit.compose(&m.product).unwrap();
    let rhs = c.counit.tensor(&c.counit).unwrap();
    report.push(law_eq("C1", &lhs, &rhs));

    // (C2): delta o eta = eta (x) eta
    let lhs = c.coproduct.compose(&m.unit).unwrap();
    let rhs = m.unit.tensor(&m.unit).unwrap();
    report.push(law_eq("C2", &lhs, &rhs));

    // (Id): eps o eta = empty diagram
    let lhs = c.counit.compose(&m.unit).unwrap();
    let rhs = Morphism::empty(d);
    report.push(law_eq("Id", &lhs, &rhs));

    report
}

impl ZStarAlgebra {
    /// Pair two Frobenius algebras; the dualizer is computed from their
    /// induced compact structures. No laws are checked here, use
    /// [`check_zstar`].
    pub fn new(white: Frobenius, black: Frobenius) -> Result<Self, StructureError> {
        let dual = dualizer(&induced_compact(&white), &induced_compact(&black))?;
        Ok(ZStarAlgebra { white, black, dualizer: dual })
    }

    pub fn dim(&self) -> usize {
        self.white.dim()
    }

    pub fn dualizer(&self) -> &Morphism {
        &self.dualizer
    }

    pub fn white_compact(&self) -> CompactStructure {
        induced_compact(&self.white)
    }

    pub fn black_compact(&self) -> CompactStructure {
        induced_compact(&self.black)
    }
}

/// All Z*-algebra axioms: both Frobenius structures, the bialgebra law (B)
/// for (white comonoid, black monoid), and compatibility.
pub fn check_zstar(z: &ZStarAlgebra) -> CheckReport {
    let mut report = CheckReport::new("zstar");
    let mut white = check_frobenius(&z.white);
    white.subject = "white".into();
    report.extend_from(white);
    let mut black = check_frobenius(&z.black);
    black.subject = "black".into();
    report.extend_from(black);
    let bial = check_bialgebra(&z.white.comonoid, &z.black.monoid);
    report.push(LawReport {
        law: "bigebra-B".into(),
        ..bial.law("B").expect("B law present").clone()
    });
    let compat = compatibility_report(&z.white, &z.black);
    report.push(LawReport {
        law: "compatibility-involution".into(),
        ..compat.laws[0].clone()
    });
    report
}

/// Build the phase-shifted candidate `A^alpha B_beta` and report whether the
/// compatibility relation survives (all other axioms do automatically).
pub fn phase_shift_zstar(
    z: &ZStarAlgebra,
    alpha: &Morphism,
    beta: &Morphism,
) -> Result<(ZStarAlgebra, bool), StructureError> {
    let white = z.white.shift_monoid_side(alpha)?;
    let black = z.black.shift_comonoid_side(beta)?;
    let shifted = ZStarAlgebra::new(white, black)?;
    let compatible = check_compatibility(&shifted.white, &shifted.black);
    Ok((shifted, compatible))
}

/// Recover the phase relating a Frobenius algebra's own comonoid to another
/// comonoid forming a Frobenius algebra with the same monoid:
/// `alpha = (eps (x) id) o delta'`. For `delta' = delta(alpha)` this returns
/// `alpha` exactly, and swapping the roles of the comonoids returns its
/// inverse.
pub fn extract_comonoid_phase(f: &Frobenius, other: &Comonoid) -> Result<Morphism, StructureError> {
    let id = Morphism::identity(f.dim());
    Ok(f.comonoid.counit.tensor(&id)?.compose(&other.coproduct)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{base_algebra, phase_of, BaseAlgebra};
    use crate::scalar::ExactScalar;

    fn z() -> Frobenius {
        base_algebra(BaseAlgebra::Z)
    }
    fn w() -> Frobenius {
        base_algebra(BaseAlgebra::W)
    }

    #[test]
    fn base_monoids_pass() {
        for which in [BaseAlgebra::Z, BaseAlgebra::X, BaseAlgebra::H, BaseAlgebra::W] {
            let f = base_algebra(which);
            assert!(check_monoid(&f.monoid).passed(), "{which:?} monoid");
            assert!(check_comonoid(&f.comonoid).passed(), "{which:?} comonoid");
            assert!(check_frobenius(&f).passed(), "{which:?} frobenius");
        }
    }

    #[test]
    fn broken_unit_is_reported() {
        // mu_Z with eta = (1,0)^T: the unit law fails and the report says where.
        let bad = Monoid::new(
            z().monoid.product.clone(),
            Morphism::from_int_rows(2, 0, 1, &[&[1], &[0]]),
        )
        .unwrap();
        let report = check_monoid(&bad);
        assert!(!report.passed());
        let unit = report.law("unit-left").unwrap();
        assert!(!unit.pass);
        assert!(unit.counterexample.is_some());
    }

    #[test]
    fn phases_of_z_and_w() {
        let a = ExactScalar::from_int(3);
        let b = ExactScalar::from_int(5);
        let zp = phase_of(BaseAlgebra::Z, &a, &b).unwrap();
        assert!(is_phase_of_monoid(&z().monoid, &zp));
        assert!(is_phase_of_comonoid(&z().comonoid, &zp));
        let wp = phase_of(BaseAlgebra::W, &a, &b).unwrap();
        assert!(is_phase_of_monoid(&w().monoid, &wp));
        // swap is invertible but not a phase of the copy monoid
        let swap = Morphism::from_int_rows(2, 1, 1, &[&[0, 1], &[1, 0]]);
        assert!(!is_phase_of_monoid(&z().monoid, &swap));
    }

    #[test]
    fn phase_shift_preserves_laws() {
        let alpha = phase_of(
            BaseAlgebra::Z,
            &ExactScalar::one(),
            &ExactScalar::from_int(-1),
        )
        .unwrap();
        let shifted = phase_shift_monoid(&z().monoid, &alpha).unwrap();
        assert!(check_monoid(&shifted).passed());
        assert_eq!(shifted.unit, Morphism::from_int_rows(2, 0, 1, &[&[1], &[-1]]));
        let wphase = phase_of(BaseAlgebra::W, &ExactScalar::one(), &ExactScalar::one()).unwrap();
        let wshift = phase_shift_monoid(&w().monoid, &wphase).unwrap();
        assert!(check_monoid(&wshift).passed());
        // identity phase is a no-op
        let idph = Morphism::identity(2);
        assert_eq!(phase_shift_monoid(&z().monoid, &idph).unwrap(), z().monoid);
        // non-phases are rejected
        let swap = Morphism::from_int_rows(2, 1, 1, &[&[0, 1], &[1, 0]]);
        assert!(phase_shift_monoid(&z().monoid, &swap).is_err());
    }

    #[test]
    fn nary_products() {
        let m = z().monoid;
        assert_eq!(m.nary(0), m.unit);
        assert_eq!(m.nary(1), Morphism::identity(2));
        // mu_3 |abc> = |a> if a=b=c else 0
        let m3 = m.nary(3);
        for col in 0..8 {
            let (a, b, c) = (col >> 2 & 1, col >> 1 & 1, col & 1);
            for row in 0..2 {
                let expect = a == b && b == c && row == a;
                assert_eq!(m3.get(row, col).is_one(), expect);
                assert_eq!(m3.get(row, col).is_zero(), !expect);
            }
        }
        // mu_{n+p} = mu o (mu_n (x) mu_p) for all splits
        for n in 0..4usize {
            for p in 0..4usize {
                if n + p == 0 {
                    continue;
                }
                let lhs = m.nary(n + p);
                let rhs = m
                    .product
                    .compose(&m.nary(n).tensor(&m.nary(p)).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs, "split {n}+{p}");
            }
        }
    }

    #[test]
    fn spiders() {
        let f = z();
        assert!(spider(&f, 1, 1, None).unwrap().is_identity());
        assert_eq!(spider(&f, 2, 1, None).unwrap(), f.monoid.product);
        let alpha = phase_of(BaseAlgebra::Z, &ExactScalar::from_int(2), &ExactScalar::from_int(3)).unwrap();
        let beta = phase_of(BaseAlgebra::Z, &ExactScalar::from_int(5), &ExactScalar::from_rational(1, 3)).unwrap();
        let ab = alpha.compose(&beta).unwrap();
        let lhs = spider(&f, 1, 1, Some(&alpha))
            .unwrap()
            .compose(&spider(&f, 1, 1, Some(&beta)).unwrap())
            .unwrap();
        assert_eq!(lhs, spider(&f, 1, 1, Some(&ab)).unwrap());
    }

    #[test]
    fn induced_compacts_match_tables() {
        let cz = induced_compact(&z());
        assert_eq!(cz.cap, Morphism::from_int_rows(2, 2, 0, &[&[1, 0, 0, 1]]));
        assert_eq!(cz.cup, Morphism::from_int_rows(2, 0, 2, &[&[1], &[0], &[0], &[1]]));
        let cw = induced_compact(&w());
        assert_eq!(cw.cap, Morphism::from_int_rows(2, 2, 0, &[&[0, 1, 1, 0]]));
        assert_eq!(cw.cup, Morphism::from_int_rows(2, 0, 2, &[&[0], &[1], &[1], &[0]]));
        let ch = induced_compact(&base_algebra(BaseAlgebra::H));
        assert_eq!(ch.cap, Morphism::from_int_rows(2, 2, 0, &[&[1, 1, 1, 2]]));
        assert_eq!(ch.cup, Morphism::from_int_rows(2, 0, 2, &[&[2], &[-1], &[-1], &[1]]));
        for c in [&cz, &cw, &ch] {
            assert!(check_compact(c).passed());
        }
    }

    #[test]
    fn dualizer_facts() {
        let cz = induced_compact(&z());
        let cw = induced_compact(&w());
        let ch = induced_compact(&base_algebra(BaseAlgebra::H));
        assert_eq!(
            dualizer(&cz, &cw).unwrap(),
            Morphism::from_int_rows(2, 1, 1, &[&[0, 1], &[1, 0]])
        );
        assert!(dualizer(&cz, &cz).unwrap().is_identity());
        assert_eq!(
            dualizer(&cz, &ch).unwrap(),
            Morphism::from_int_rows(2, 1, 1, &[&[2, -1], &[-1, 1]])
        );
        // inverse identity holds even for the incompatible pair (Z, H)
        for (a, b) in [(&cz, &cw), (&cz, &ch), (&ch, &cw), (&cz, &cz)] {
            let d = dualizer(a, b).unwrap();
            let u = dualizer_inverse_composite(a, b).unwrap();
            assert!(d.compose(&u).unwrap().is_identity());
            assert!(u.compose(&d).unwrap().is_identity());
        }
    }

    #[test]
    fn bialgebra_laws() {
        let x = base_algebra(BaseAlgebra::X);
        let rep = check_bialgebra(&z().comonoid, &x.monoid);
        assert!(rep.passed(), "Z/X satisfies all four laws: {rep}");
        let rep = check_bialgebra(&z().comonoid, &w().monoid);
        assert!(rep.law("B").unwrap().pass);
        let rep = check_bialgebra(&w().comonoid, &w().monoid);
        assert!(!rep.law("B").unwrap().pass);
    }

    #[test]
    fn special_law_for_the_copy_algebra() {
        let f = z();
        let special = f.monoid.product.compose(&f.comonoid.coproduct).unwrap();
        assert!(special.is_identity());
    }

    #[test]
    fn base_pair_compatibility_verdicts() {
        let zf = z();
        let wf = w();
        let hf = base_algebra(BaseAlgebra::H);
        assert!(check_compatibility(&zf, &wf));
        assert!(check_compatibility(&zf, &zf));
        // the unshifted (Z, H) pair is incompatible; only the shifted family is
        assert!(!check_compatibility(&zf, &hf));
    }

    #[test]
    fn phase_shifting_a_zstar_algebra() {
        // identity phases give back the original compatible algebra
        let zw = ZStarAlgebra::new(z(), w()).unwrap();
        let id = Morphism::identity(2);
        let (same, ok) = phase_shift_zstar(&zw, &id, &id).unwrap();
        assert!(ok);
        assert_eq!(same, zw);
        // the raw copy/xor pair is not compatible on its own (dualizer 1/2):
        // the right phase shift repairs it, the wrong one does not
        let base = ZStarAlgebra::new(z(), base_algebra(BaseAlgebra::X)).unwrap();
        let (_, raw_ok) = phase_shift_zstar(&base, &id, &id).unwrap();
        assert!(!raw_ok);
        // the (a, 1) / (2/a, 1) shift at a = 3 is compatible
        let a3 = phase_of(BaseAlgebra::Z, &ExactScalar::from_int(3), &ExactScalar::one()).unwrap();
        let b3 = phase_of(
            BaseAlgebra::X,
            &ExactScalar::from_rational(2, 3),
            &ExactScalar::one(),
        )
        .unwrap();
        let (shifted, ok) = phase_shift_zstar(&base, &a3, &b3).unwrap();
        assert!(ok);
        assert!(check_zstar(&shifted).passed());
        // the (1, 2) / (1, 1) shift is not
        let bad = phase_of(BaseAlgebra::Z, &ExactScalar::one(), &ExactScalar::from_int(2)).unwrap();
        let triv = phase_of(BaseAlgebra::X, &ExactScalar::one(), &ExactScalar::one()).unwrap();
        let (shifted, ok) = phase_shift_zstar(&base, &bad, &triv).unwrap();
        assert!(!ok);
        let rep = check_zstar(&shifted);
        assert!(!rep.law("compatibility-involution").unwrap().pass);
        assert!(rep.law("bigebra-B").unwrap().pass);
        // non-phases are rejected
        let swap = Morphism::from_int_rows(2, 1, 1, &[&[0, 1], &[1, 0]]);
        assert!(phase_shift_zstar(&base, &swap, &triv).is_err());
    }

    #[test]
    fn extracting_phases() {
        let f = z();
        let alpha = phase_of(BaseAlgebra::Z, &ExactScalar::from_int(2), &ExactScalar::from_int(-3)).unwrap();
        let shifted = phase_shift_comonoid(&f.comonoid, &alpha).unwrap();
        // the shifted comonoid still forms a Frobenius algebra with (mu, eta)
        let g = Frobenius::new(f.monoid.clone(), shifted.clone()).unwrap();
        assert!(check_frobenius(&g).passed());
        // and the extraction composite recovers alpha exactly
        assert_eq!(extract_comonoid_phase(&f, &shifted).unwrap(), alpha);
        let inv = extract_comonoid_phase(&g, &f.comonoid).unwrap();
        assert_eq!(inv, alpha.inverse().unwrap());
    }
}
