//! Exact scalars: arbitrary-precision rationals and simple algebraic
//! extensions ℚ[t]/(m(t)) with a monic squarefree modulus.
//!
//! All arithmetic routes through a [`FieldSpec`], which owns the modulus;
//! elements are plain coefficient vectors in canonical form (reduced modulo
//! the modulus, rationals in lowest terms). Two elements are equal exactly
//! when their stored vectors are identical.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Convenience constructor for small rational constants.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum FieldKind {
    Rationals,
    /// Dense coefficients `c_0 + c_1 t + ... + c_d t^d` of a monic modulus,
    /// `c_d = 1`, `d >= 1`.
    Extension { modulus: Vec<Rational> },
}

/// The ground field: ℚ, or ℚ[t]/(m(t)) for a monic squarefree m.
///
/// Irreducibility of the modulus is not verified; a squarefree modulus makes
/// the quotient a product of fields, and any attempt to invert a zero divisor
/// surfaces as [`Error::NotInvertible`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    kind: FieldKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    /// Length equals `FieldSpec::degree()`; index i holds the coefficient
    /// of t^i.
    residue: Vec<Rational>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[Rational] {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.iter().all(Rational::is_zero)
    }

    /// The element viewed as a rational, if it is one.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.residue[1..].iter().all(Rational::is_zero) {
            Some(&self.residue[0])
        } else {
            None
        }
    }
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec {
            kind: FieldKind::Rationals,
        }
    }

    /// Build ℚ[t]/(m) from dense modulus coefficients `c_0..c_d`.
    pub fn extension(modulus: Vec<Rational>) -> Result<Self> {
        let modulus = poly_trim(modulus);
        if modulus.len() < 2 {
            return Err(Error::InvalidArgument(
                "extension modulus must have degree at least 1".into(),
            ));
        }
        if !modulus.last().unwrap().is_one() {
            return Err(Error::InvalidArgument(
                "extension modulus must be monic".into(),
            ));
        }
        let deriv = poly_derivative(&modulus);
        let g = poly_gcd(&modulus, &deriv);
        if g.len() != 1 {
            return Err(Error::InvalidArgument(
                "extension modulus must be squarefree".into(),
            ));
        }
        Ok(FieldSpec {
            kind: FieldKind::Extension { modulus },
        })
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self.kind, FieldKind::Rationals)
    }

    /// Degree of the extension over ℚ (1 for ℚ itself).
    pub fn degree(&self) -> usize {
        match &self.kind {
            FieldKind::Rationals => 1,
            FieldKind::Extension { modulus } => modulus.len() - 1,
        }
    }

    pub fn modulus(&self) -> Option<&[Rational]> {
        match &self.kind {
            FieldKind::Rationals => None,
            FieldKind::Extension { modulus } => Some(modulus),
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            residue: vec![Rational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, r: Rational) -> FieldElement {
        let mut residue = vec![Rational::zero(); self.degree()];
        residue[0] = r;
        FieldElement { residue }
    }

    pub fn from_integer(&self, n: i64) -> FieldElement {
        self.from_rational(rat(n, 1))
    }

    /// The residue class of t. Errors over plain ℚ.
    pub fn generator(&self) -> Result<FieldElement> {
        if self.degree() < 2 {
            return Err(Error::InvalidArgument(
                "the rational field has no extension generator".into(),
            ));
        }
        let mut residue = vec![Rational::zero(); self.degree()];
        residue[1] = Rational::one();
        Ok(FieldElement { residue })
    }

    /// Canonicalize arbitrary dense polynomial coefficients into an element.
    pub fn element_from_poly(&self, coeffs: Vec<Rational>) -> FieldElement {
        match &self.kind {
            FieldKind::Rationals => {
                let coeffs = poly_trim(coeffs);
                if coeffs.len() > 1 {
                    // t has no meaning over plain QQ; treat as zero beyond
                    // the constant term only if explicitly reduced; callers
                    // guard this, so reaching here is a bug.
                    panic!("polynomial scalar over the rational field");
                }
                self.from_rational(coeffs.first().cloned().unwrap_or_else(Rational::zero))
            }
            FieldKind::Extension { modulus } => {
                let rem = poly_rem(&coeffs, modulus);
                let mut residue = vec![Rational::zero(); self.degree()];
                for (i, c) in rem.into_iter().enumerate() {
                    residue[i] = c;
                }
                FieldElement { residue }
            }
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            residue: a
                .residue
                .iter()
                .zip(&b.residue)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            residue: a
                .residue
                .iter()
                .zip(&b.residue)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement {
            residue: a.residue.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match &self.kind {
            FieldKind::Rationals => self.from_rational(&a.residue[0] * &b.residue[0]),
            FieldKind::Extension { .. } => {
                let prod = poly_mul(&a.residue, &b.residue);
                self.element_from_poly(prod)
            }
        }
    }

    /// Multiplicative inverse. `ZeroInverse` on zero; `NotInvertible` when
    /// the extended gcd with the modulus exposes a nontrivial factor.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        match &self.kind {
            FieldKind::Rationals => Ok(self.from_rational(a.residue[0].recip())),
            FieldKind::Extension { modulus } => {
                let (g, u, _) = poly_ext_gcd(&a.residue, modulus);
                if g.len() != 1 {
                    return Err(Error::NotInvertible(format!(
                        "gcd with the modulus is {}",
                        poly_to_string(&g)
                    )));
                }
                let ginv = g[0].recip();
                let scaled: Vec<Rational> = u.iter().map(|c| c * &ginv).collect();
                Ok(self.element_from_poly(scaled))
            }
        }
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Integer power, with negative exponents through the inverse.
    pub fn pow(&self, a: &FieldElement, e: i64) -> Result<FieldElement> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut out = self.one();
        for _ in 0..e.unsigned_abs() {
            out = self.mul(&out, &base);
        }
        Ok(out)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", poly_to_string(&poly_trim(self.residue.clone())))
    }
}

fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Render dense coefficients as a polynomial in t, highest power first,
/// e.g. `1/2*t + 3`. The zero polynomial prints as `0`.
pub(crate) fn poly_to_string(coeffs: &[Rational]) -> String {
    let mut parts: Vec<(bool, String)> = Vec::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let abs = c.abs();
        let body = match i {
            0 => rational_to_string(&abs),
            _ => {
                let var = if i == 1 {
                    "t".to_string()
                } else {
                    format!("t^{}", i)
                };
                if abs.is_one() {
                    var
                } else {
                    format!("{}*{}", rational_to_string(&abs), var)
                }
            }
        };
        parts.push((negative, body));
    }
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (negative, body)) in parts.iter().enumerate() {
        if idx == 0 {
            if *negative {
                out.push('-');
            }
        } else if *negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(body);
    }
    out
}

// --- dense univariate polynomial helpers over the rationals ---

fn poly_trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().map(Rational::is_zero).unwrap_or(false) {
        p.pop();
    }
    if p.is_empty() {
        p.push(Rational::zero());
    }
    p
}

fn poly_is_zero(p: &[Rational]) -> bool {
    p.iter().all(Rational::is_zero)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(out)
}

fn poly_scale(a: &[Rational], c: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * c).collect()
}

/// Remainder of a by b; b must be nonzero.
fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    poly_divmod(a, b).1
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = poly_trim(b.to_vec());
    assert!(!poly_is_zero(&b), "division by the zero polynomial");
    let mut rem = poly_trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    let mut quot = vec![Rational::zero(); rem.len().saturating_sub(db).max(1)];
    while !poly_is_zero(&rem) && rem.len() - 1 >= db {
        let dr = rem.len() - 1;
        let c = rem.last().unwrap() / &lead;
        quot[dr - db] = c.clone();
        let mut shifted = vec![Rational::zero(); dr - db];
        shifted.extend(poly_scale(&b, &c));
        rem = poly_sub(&rem, &shifted);
        if rem.len() - 1 == dr && !poly_is_zero(&rem) {
            // degree must strictly drop; guard against a non-trimmed head
            rem = poly_trim(rem);
        }
    }
    (poly_trim(quot), rem)
}

fn poly_derivative(p: &[Rational]) -> Vec<Rational> {
    if p.len() <= 1 {
        return vec![Rational::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from(BigInt::from(i)))
        .collect()
}

/// Monic gcd.
fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = poly_trim(a.to_vec());
    let mut y = poly_trim(b.to_vec());
    while !poly_is_zero(&y) {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    let lead = x.last().unwrap().clone();
    if lead.is_zero() {
        x
    } else {
        poly_scale(&x, &lead.recip())
    }
}

/// Extended gcd: returns (g, u, v) with u*a + v*b = g.
fn poly_ext_gcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
    let mut r0 = poly_trim(a.to_vec());
    let mut r1 = poly_trim(b.to_vec());
    let mut s0 = vec![Rational::one()];
    let mut s1 = vec![Rational::zero()];
    let mut t0 = vec![Rational::zero()];
    let mut t1 = vec![Rational::one()];
    while !poly_is_zero(&r1) {
        let (q, r) = poly_divmod(&r0, &r1);
        let new_s = poly_sub(&s0, &poly_mul(&q, &s1));
        let new_t = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = new_s;
        t0 = t1;
        t1 = new_t;
    }
    (r0, s0, t0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gauss() -> FieldSpec {
        // t^2 + 1
        FieldSpec::extension(vec![rat(1, 1), rat(0, 1), rat(1, 1)]).unwrap()
    }

    #[test]
    fn rational_reciprocal() {
        let f = FieldSpec::rationals();
        let x = f.from_rational(rat(2, 3));
        let inv = f.inv(&x).unwrap();
        assert_eq!(inv, f.from_rational(rat(3, 2)));
        assert_eq!(f.inv(&f.one()).unwrap(), f.one());
    }

    #[test]
    fn inverse_of_t_in_gaussian_field() {
        // extended Euclid: t * (-t) = -t^2 = 1 mod t^2 + 1
        let f = gauss();
        let t = f.generator().unwrap();
        let inv = f.inv(&t).unwrap();
        assert_eq!(inv, f.neg(&t));
        assert!(f.mul(&t, &inv) == f.one());
    }

    #[test]
    fn zero_inverse_is_an_error() {
        let f = gauss();
        assert_eq!(f.inv(&f.zero()), Err(Error::ZeroInverse));
    }

    #[test]
    fn non_invertible_in_split_quotient() {
        // t^2 - 1 is squarefree but splits; t - 1 is a zero divisor.
        let f = FieldSpec::extension(vec![rat(-1, 1), rat(0, 1), rat(1, 1)]).unwrap();
        let x = f.element_from_poly(vec![rat(-1, 1), rat(1, 1)]);
        match f.inv(&x) {
            Err(Error::NotInvertible(_)) => {}
            other => panic!("expected NotInvertible, got {:?}", other),
        }
    }

    #[test]
    fn squarefree_check_rejects_square() {
        // (t-1)^2 = t^2 - 2t + 1
        let res = FieldSpec::extension(vec![rat(1, 1), rat(-2, 1), rat(1, 1)]);
        assert!(res.is_err());
    }

    #[test]
    fn non_monic_modulus_rejected() {
        assert!(FieldSpec::extension(vec![rat(1, 1), rat(0, 1), rat(2, 1)]).is_err());
    }

    #[test]
    fn display_matches_expected_forms() {
        let f = gauss();
        let e = f.element_from_poly(vec![rat(3, 1), rat(1, 2)]);
        assert_eq!(e.to_string(), "1/2*t + 3");
        assert_eq!(f.zero().to_string(), "0");
        assert_eq!(f.neg(&f.generator().unwrap()).to_string(), "-t");
        let q = FieldSpec::rationals();
        assert_eq!(q.from_rational(rat(-2, 3)).to_string(), "-2/3");
    }

    proptest! {
        #[test]
        fn double_inverse_is_identity(n in -40i64..40, d in 1i64..40, m in -40i64..40) {
            let f = gauss();
            let x = f.element_from_poly(vec![rat(n, d), rat(m, 1)]);
            prop_assume!(!x.is_zero());
            let inv = f.inv(&x).unwrap();
            prop_assert_eq!(f.inv(&inv).unwrap(), x.clone());
            prop_assert_eq!(f.mul(&x, &inv), f.one());
        }

        #[test]
        fn field_laws_hold(a in -20i64..20, b in -20i64..20, c in -20i64..20) {
            let f = gauss();
            let t = f.generator().unwrap();
            let x = f.add(&f.from_integer(a), &t);
            let y = f.from_integer(b);
            let z = f.add(&f.from_integer(c), &f.mul(&t, &t));
            prop_assert_eq!(f.mul(&x, &f.add(&y, &z)),
                            f.add(&f.mul(&x, &y), &f.mul(&x, &z)));
            prop_assert_eq!(f.mul(&x, &y), f.mul(&y, &x));
        }
    }
}
