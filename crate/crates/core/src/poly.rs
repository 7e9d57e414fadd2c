//! Dense univariate polynomials over a [`FieldDesc`].
//!
//! The ring `A = F_q[T]` and its extensions `F_{q^s}[T]`. Coefficients are
//! ascending and trimmed; the zero polynomial has no coefficients. The
//! arithmetic operators panic on a field mismatch; the `checked_*` variants
//! report it as an error instead.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{format_dense, prime_factors, tower_var, FieldDesc, FieldElem};
use crate::parse::{parse_expr, Evaluator};

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldDesc,
    coeffs: Vec<FieldElem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({} over {:?})", self, self.field)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var('T'))
    }
}

fn trim(v: &mut Vec<FieldElem>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl Poly {
    pub fn new(field: FieldDesc, mut coeffs: Vec<FieldElem>) -> Poly {
        trim(&mut coeffs);
        Poly { field, coeffs }
    }

    pub fn zero(field: &FieldDesc) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FieldDesc) -> Poly {
        Poly::constant(field, FieldElem::ONE)
    }

    pub fn constant(field: &FieldDesc, c: FieldElem) -> Poly {
        Poly::new(field.clone(), vec![c])
    }

    /// `c·T^k`
    pub fn monomial(field: &FieldDesc, c: FieldElem, k: usize) -> Poly {
        let mut v = vec![FieldElem::ZERO; k + 1];
        v[k] = c;
        Poly::new(field.clone(), v)
    }

    /// The variable `T`.
    pub fn var(field: &FieldDesc) -> Poly {
        Poly::monomial(field, FieldElem::ONE, 1)
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElem {
        self.coeffs.get(k).copied().unwrap_or(FieldElem::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FieldElem::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FieldElem::ONE
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.field.describe(),
                other.field.describe()
            )))
        }
    }

    fn assert_same(&self, other: &Poly) {
        if let Err(e) = self.check_same(other) {
            panic!("{e}");
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: FieldElem) -> Poly {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn make_monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// `(quotient, remainder)` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_same(divisor)?;
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let f = &self.field;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let lc_inv = f.inv(divisor.leading())?;
        let mut q = vec![FieldElem::ZERO; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = r[k];
            if c.is_zero() {
                continue;
            }
            let t = f.mul(c, lc_inv);
            q[k - dd] = t;
            for (j, &dj) in divisor.coeffs.iter().enumerate() {
                if !dj.is_zero() {
                    r[k - dd + j] = f.sub(r[k - dd + j], f.mul(t, dj));
                }
            }
        }
        r.truncate(dd);
        Ok((Poly::new(f.clone(), q), Poly::new(f.clone(), r)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        // Specialised remainder without building the quotient.
        self.check_same(divisor)?;
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        if self.coeffs.len() <= dd {
            return Ok(self.clone());
        }
        let f = &self.field;
        let mut r = self.coeffs.clone();
        let lc_inv = f.inv(divisor.leading())?;
        let monic = lc_inv == FieldElem::ONE;
        for k in (dd..r.len()).rev() {
            let c = r[k];
            if c.is_zero() {
                continue;
            }
            let t = if monic { c } else { f.mul(c, lc_inv) };
            for (j, &dj) in divisor.coeffs[..dd].iter().enumerate() {
                if !dj.is_zero() {
                    r[k - dd + j] = f.sub(r[k - dd + j], f.mul(t, dj));
                }
            }
        }
        r.truncate(dd);
        Ok(Poly::new(f.clone(), r))
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Contract(format!("{divisor} does not divide {self}")));
        }
        Ok(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.make_monic())
    }

    pub fn eval(&self, x: FieldElem) -> FieldElem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(FieldElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| f.mul(f.from_int(k as i64), c))
            .collect();
        Poly::new(f.clone(), v)
    }

    /// Coefficient-wise `x ↦ x^p` together with `T ↦ T^p`, i.e. `self^p`.
    pub fn pth_power(&self) -> Poly {
        let f = &self.field;
        let p = f.p() as usize;
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![FieldElem::ZERO; (self.coeffs.len() - 1) * p + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            v[k * p] = f.pow(c, p as u64);
        }
        Poly::new(f.clone(), v)
    }

    /// Inverse of [`Poly::pth_power`]; `None` if some exponent is not a
    /// multiple of `p`.
    pub fn pth_root(&self) -> Option<Poly> {
        let f = &self.field;
        let p = f.p() as usize;
        // c^{1/p} = c^{q/p} since c^q = c
        let root_exp = f.cardinality() / p as u64;
        let mut v = Vec::with_capacity(self.coeffs.len() / p + 1);
        for (k, &c) in self.coeffs.iter().enumerate() {
            if k % p == 0 {
                v.push(f.pow(c, root_exp));
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(Poly::new(f.clone(), v))
    }

    /// `self^k` exactly. Base-`p` digits of `k` are handled with the
    /// Frobenius map so only digit-sized powers are ever multiplied.
    pub fn pow(&self, k: u64) -> Poly {
        let p = self.field.p() as u64;
        let mut acc = Poly::one(&self.field);
        let mut frob = self.clone();
        let mut k = k;
        while k > 0 {
            let digit = k % p;
            for _ in 0..digit {
                acc = &acc * &frob;
            }
            k /= p;
            if k > 0 {
                frob = frob.pth_power();
            }
        }
        acc
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Result<Poly> {
        (self * other).rem(m)
    }

    /// `self^k mod m` by square-and-multiply.
    pub fn pow_mod(&self, k: u64, m: &Poly) -> Result<Poly> {
        self.check_same(m)?;
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(&self.field).rem(m)?;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_mod(&base, m)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_mod(&base, m)?;
            }
        }
        Ok(acc)
    }

    /// Rabin's test: `a | T^{q^d} − T` and `gcd(T^{q^{d/r}} − T, a) = 1` for
    /// every prime `r | d`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let Some(d) = self.degree() else {
            return Err(Error::ConstantPolynomial(self.to_string()));
        };
        if d == 0 {
            return Err(Error::ConstantPolynomial(self.to_string()));
        }
        if d == 1 {
            return Ok(true);
        }
        let a = self.make_monic();
        let q = self.field.cardinality();
        let t = Poly::var(&self.field);
        let mut frob_powers = Vec::with_capacity(d + 1);
        let mut x = t.rem(&a)?;
        frob_powers.push(x.clone());
        for _ in 0..d {
            x = x.pow_mod(q, &a)?;
            frob_powers.push(x.clone());
        }
        if frob_powers[d] != t.rem(&a)? {
            return Ok(false);
        }
        for r in prime_factors(d as u64) {
            let h = &frob_powers[d / r as usize] - &t;
            if !h.gcd(&a)?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Reinterprets the coefficients in a field containing this one.
    pub fn lift(&self, to: &FieldDesc) -> Result<Poly> {
        if !to.contains_field(&self.field) {
            return Err(Error::FieldMismatch(format!(
                "{} does not contain {}",
                to.describe(),
                self.field.describe()
            )));
        }
        Ok(Poly { field: to.clone(), coeffs: self.coeffs.clone() })
    }

    /// Inverse of [`Poly::lift`]; fails unless every coefficient lies in `to`.
    pub fn descend(&self, to: &FieldDesc) -> Result<Poly> {
        if !self.field.contains_field(to) {
            return Err(Error::FieldMismatch(format!(
                "{} is not a subfield of {}",
                to.describe(),
                self.field.describe()
            )));
        }
        let card = to.cardinality();
        if let Some(c) = self.coeffs.iter().find(|c| c.index() as u64 >= card) {
            return Err(Error::Contract(format!(
                "coefficient {} of {} is not in {}",
                self.field.format(*c),
                self,
                to.describe()
            )));
        }
        Ok(Poly { field: to.clone(), coeffs: self.coeffs.clone() })
    }

    /// Canonical order: by degree, then coefficients compared from the top
    /// degree down by element index. Matches the enumeration order of
    /// [`enumerate_monic`].
    pub fn cmp_canonical(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    pub fn to_string_var(&self, var: char) -> String {
        format_dense(&self.field, &self.coeffs, var)
    }

    /// Parses the polynomial grammar in variable `var`; field variables of the
    /// coefficient tower (`y`, `z`) are accepted inside coefficients.
    pub fn parse(field: &FieldDesc, s: &str, var: char) -> Result<Poly> {
        parse_expr(s)?.eval(&PolyEval { field, var })
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_same(rhs);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|k| f.add(self.coeff(k), rhs.coeff(k))).collect();
        Poly::new(f.clone(), v)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_same(rhs);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|k| f.sub(self.coeff(k), rhs.coeff(k))).collect();
        Poly::new(f.clone(), v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_same(rhs);
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut v = vec![FieldElem::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        // Sparse-aware schoolbook: Frobenius images are mostly zero.
        let rhs_nz: Vec<(usize, FieldElem)> =
            rhs.coeffs.iter().copied().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &rhs_nz {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Poly::new(f.clone(), v)
    }
}

struct PolyEval<'a> {
    field: &'a FieldDesc,
    var: char,
}

impl Evaluator for PolyEval<'_> {
    type Value = Poly;
    fn int(&self, n: u64) -> Result<Poly> {
        Ok(Poly::constant(self.field, self.field.from_int((n % self.field.p() as u64) as i64)))
    }
    fn var(&self, name: char) -> Result<Poly> {
        if name == self.var {
            return Ok(Poly::var(self.field));
        }
        match tower_var(self.field, name) {
            Some(g) => Ok(Poly::constant(self.field, g)),
            None => Err(Error::Parse(format!(
                "unknown variable {name:?} (polynomial variable is {:?}, coefficients in {})",
                self.var,
                self.field.describe()
            ))),
        }
    }
    fn add(&self, a: Poly, b: Poly) -> Result<Poly> {
        Ok(&a + &b)
    }
    fn sub(&self, a: Poly, b: Poly) -> Result<Poly> {
        Ok(&a - &b)
    }
    fn mul(&self, a: Poly, b: Poly) -> Result<Poly> {
        Ok(&a * &b)
    }
    fn neg(&self, a: Poly) -> Result<Poly> {
        Ok(-&a)
    }
    fn pow(&self, a: Poly, k: u64) -> Result<Poly> {
        if k > 1 << 20 {
            return Err(Error::Parse(format!("exponent {k} too large")));
        }
        Ok(a.pow(k))
    }
}

/// Every monic polynomial of degree `i` over `field`, in canonical order
/// (lower coefficients counted like digits, constant term fastest).
pub fn enumerate_monic(field: &FieldDesc, i: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = field.cardinality();
    let count = q.checked_pow(i as u32).unwrap_or(u64::MAX);
    (0..count).map(move |mut idx| {
        let mut v = Vec::with_capacity(i + 1);
        for _ in 0..i {
            v.push(FieldElem::from_index((idx % q) as u32));
            idx /= q;
        }
        v.push(FieldElem::ONE);
        Poly::new(field.clone(), v)
    })
}

pub fn enumerate_monic_irreducible(field: &FieldDesc, d: usize) -> Result<Vec<Poly>> {
    if d == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for a in enumerate_monic(field, d) {
        if a.is_irreducible()? {
            out.push(a);
        }
    }
    Ok(out)
}
