//! Bernoulli-Goss polynomials.
//!
//! Base-`q` digit statistics and Gekeler's `ρ` map, the power sums
//! `s_i(n) = Σ_{a monic, deg a = i} a^n` (exactly, and modulo an irreducible
//! `m`), the generating polynomials `C_n(u)` and `B_n(u)`, the scalar `B_n`,
//! and the norms `B^α_n = Π_i B_n(α_i)` over the conjugates of a root of
//! `f(u) ∈ F_p[u]`.

use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};
use crate::field::{FieldDesc, FieldElem, Level};
use crate::poly::{enumerate_monic, Poly};
use crate::upoly::UPoly;

/// Default limit on the number of monic polynomials a power sum may visit.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitProfile {
    pub n: u64,
    pub q: u64,
    /// `a_0, a_1, ...` with `n = Σ a_j q^j`.
    pub digits: Vec<u64>,
    /// Digit sum `l(n)`.
    pub l: u64,
    /// `e_1 ≤ e_2 ≤ ...`: exponent `j` repeated `a_j` times.
    pub exponents: Vec<u32>,
}

pub fn digit_profile(n: u64, q: u64) -> Result<DigitProfile> {
    if n == 0 {
        return Err(Error::InvalidArgument("digit profile needs n >= 1".into()));
    }
    if q < 2 {
        return Err(Error::InvalidArgument(format!("base {q} < 2")));
    }
    let mut digits = Vec::new();
    let mut r = n;
    while r > 0 {
        digits.push(r % q);
        r /= q;
    }
    let l = digits.iter().sum();
    let exponents = digits
        .iter()
        .enumerate()
        .flat_map(|(j, &a)| std::iter::repeat_n(j as u32, a as usize))
        .collect();
    Ok(DigitProfile { n, q, digits, l, exponents })
}

/// Base-`q` digit sum; `l(0) = 0`.
pub fn digit_sum(n: u64, q: u64) -> u64 {
    let mut s = 0;
    let mut r = n;
    while r > 0 {
        s += r % q;
        r /= q;
    }
    s
}

/// Index of the last possibly nonzero power sum: `⌊l(n)/(q−1)⌋`.
pub fn cutoff(n: u64, q: u64) -> u64 {
    digit_sum(n, q) / (q - 1)
}

/// A non-negative integer or `−∞`. `−∞` absorbs addition and sorts first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Fin(u64),
}

impl Add for ExtInt {
    type Output = ExtInt;
    fn add(self, rhs: ExtInt) -> ExtInt {
        match (self, rhs) {
            (ExtInt::Fin(a), ExtInt::Fin(b)) => ExtInt::Fin(a + b),
            _ => ExtInt::NegInf,
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => f.write_str("-inf"),
            ExtInt::Fin(v) => write!(f, "{v}"),
        }
    }
}

/// Removes the `q−1` smallest base-`q` summands of `x`; `−∞` when fewer
/// than `q−1` remain.
pub fn rho(x: ExtInt, q: u64) -> ExtInt {
    let ExtInt::Fin(n) = x else {
        return ExtInt::NegInf;
    };
    let mut need = q - 1;
    let mut removed = 0u64;
    let mut place = 1u64;
    let mut r = n;
    while r > 0 && need > 0 {
        let take = (r % q).min(need);
        removed += take * place;
        need -= take;
        r /= q;
        place = place.saturating_mul(q);
    }
    if need > 0 {
        ExtInt::NegInf
    } else {
        ExtInt::Fin(n - removed)
    }
}

/// `ρ^{(i)}(n)`, with `ρ^{(0)}(n) = n`.
pub fn rho_iter(n: u64, i: u32, q: u64) -> ExtInt {
    (0..i).fold(ExtInt::Fin(n), |x, _| rho(x, q))
}

/// `ρ^{(1)}(n) + ... + ρ^{(i)}(n)`, the bound on `deg s_i(n)`.
pub fn degree_bound(n: u64, i: u32, q: u64) -> ExtInt {
    let mut x = ExtInt::Fin(n);
    let mut total = ExtInt::Fin(0);
    for _ in 0..i {
        x = rho(x, q);
        total = total + x;
    }
    total
}

/// `C(n, k) mod p` via Lucas' theorem.
pub fn binom_mod_p(n: u64, k: u64, p: u64) -> u64 {
    let mut n = n;
    let mut k = k;
    let mut acc = 1u64;
    while k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * small_binom_mod(nd, kd, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

fn small_binom_mod(n: u64, k: u64, p: u64) -> u64 {
    // n < p, so all factorials are invertible mod p
    let mut num = 1u64;
    let mut den = 1u64;
    for j in 0..k {
        num = num * ((n - j) % p) % p;
        den = den * ((j + 1) % p) % p;
    }
    let mut inv = 1u64;
    let mut b = den;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            inv = inv * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    num * inv % p
}

fn check_field(fq: &FieldDesc) -> Result<()> {
    if fq.level() == Level::Top {
        return Err(Error::InvalidArgument("power sums are taken over F_q, not over the top field".into()));
    }
    Ok(())
}

fn enum_count(q: u64, i: u64, cap: u64, what: &str) -> Result<u64> {
    match q.checked_pow(i as u32).filter(|_| i <= u32::MAX as u64) {
        Some(c) if c <= cap => Ok(c),
        _ => Err(Error::Capacity {
            what: what.to_string(),
            needed: (q as u128).saturating_pow(i.min(u32::MAX as u64) as u32),
            cap: cap as u128,
        }),
    }
}

/// Exact `s_i(n) ∈ A`, enumerating the `q^i` monic polynomials of degree `i`.
pub fn power_sum_exact(i: u64, n: u64, fq: &FieldDesc) -> Result<Poly> {
    power_sum_exact_capped(i, n, fq, DEFAULT_ENUM_CAP)
}

pub fn power_sum_exact_capped(i: u64, n: u64, fq: &FieldDesc, cap: u64) -> Result<Poly> {
    check_field(fq)?;
    if n == 0 {
        return Err(Error::InvalidArgument("power sums need n >= 1".into()));
    }
    let q = fq.cardinality();
    if i > cutoff(n, q) {
        return Ok(Poly::zero(fq));
    }
    enum_count(q, i, cap, "power sum enumeration")?;
    let mut acc = Poly::zero(fq);
    for a in enumerate_monic(fq, i as usize) {
        acc = &acc + &a.pow(n);
    }
    Ok(acc)
}

/// `s_i(n) mod m` for any nonzero `m`, with `n` up to `u64::MAX`.
///
/// For `i > deg m` each residue class is hit `q^{i−deg m}` times, so the sum
/// vanishes in characteristic `p`.
pub fn power_sum_mod(i: u64, n: u64, m: &Poly) -> Result<Poly> {
    power_sum_mod_capped(i, n, m, DEFAULT_ENUM_CAP)
}

pub fn power_sum_mod_capped(i: u64, n: u64, m: &Poly, cap: u64) -> Result<Poly> {
    let fq = m.field();
    check_field(fq)?;
    let Some(d) = m.degree() else {
        return Err(Error::DivisionByZero);
    };
    if n == 0 {
        return Err(Error::InvalidArgument("power sums need n >= 1".into()));
    }
    let q = fq.cardinality();
    if i > cutoff(n, q) || i > d as u64 {
        return Ok(Poly::zero(fq));
    }
    enum_count(q, i, cap, "modular power sum enumeration")?;
    let mut acc = Poly::zero(fq);
    for a in enumerate_monic(fq, i as usize) {
        acc = &acc + &a.pow_mod(n, m)?;
    }
    Ok(acc)
}

/// A monic irreducible `m ∈ A⁺`, validated once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulus {
    poly: Poly,
}

impl Modulus {
    pub fn new(m: Poly) -> Result<Modulus> {
        check_field(m.field())?;
        if m.is_constant() {
            return Err(Error::ConstantPolynomial(m.to_string()));
        }
        if !m.is_monic() {
            return Err(Error::NotMonic(m.to_string()));
        }
        if !m.is_irreducible()? {
            return Err(Error::NotIrreducible(m.to_string()));
        }
        Ok(Modulus { poly: m })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().expect("modulus is nonconstant")
    }

    pub fn field(&self) -> &FieldDesc {
        self.poly.field()
    }

    /// `|A/mA| = q^d`, if it fits.
    pub fn residue_card(&self) -> Option<u64> {
        self.field().cardinality().checked_pow(self.degree() as u32)
    }
}

/// `s_i(n) mod m` for irreducible `m`. At `i = deg m` the residues run over
/// the field `A/m` once, giving `Σ_x x^n = −[(q^d − 1) | n]`.
pub fn power_sum_residue(i: u64, n: u64, m: &Modulus) -> Result<Poly> {
    let fq = m.field();
    let d = m.degree() as u64;
    if n == 0 {
        return Err(Error::InvalidArgument("power sums need n >= 1".into()));
    }
    let q = fq.cardinality();
    if i > cutoff(n, q) || i > d {
        return Ok(Poly::zero(fq));
    }
    if i == d {
        let order = (q as u128).pow(d as u32) - 1;
        return Ok(if (n as u128).is_multiple_of(order) {
            Poly::constant(fq, fq.from_int(-1))
        } else {
            Poly::zero(fq)
        });
    }
    power_sum_mod(i, n, m.poly())
}

/// `C_n(u) = Σ_i s_i(n) u^i`.
pub fn cpoly(n: u64, fq: &FieldDesc) -> Result<UPoly> {
    check_field(fq)?;
    let q = fq.cardinality();
    let top = cutoff(n, q);
    let coeffs = (0..=top).map(|i| power_sum_exact(i, n, fq)).collect::<Result<Vec<_>>>()?;
    let c = UPoly::new(fq, coeffs);
    if n.is_multiple_of(q - 1) && !c.eval_at_one().is_zero() {
        return Err(Error::Contract(format!("C_{n}(1) != 0 although (q-1) | n")));
    }
    Ok(c)
}

/// Divides by `1 − u` via partial sums when `(q−1) | n`.
fn bpoly_from_c(n: u64, q: u64, c: UPoly, m: Option<&Poly>) -> Result<UPoly> {
    if !n.is_multiple_of(q - 1) {
        return Ok(c);
    }
    let fq = c.field().clone();
    let mut partial = Poly::zero(&fq);
    let mut out = Vec::with_capacity(c.coeffs().len());
    for s in c.coeffs() {
        partial = &partial + s;
        out.push(partial.clone());
    }
    if !partial.is_zero() {
        return Err(Error::Contract(format!("C_{n}(1) != 0{}", if m.is_some() { " mod m" } else { "" })));
    }
    Ok(UPoly::new(&fq, out))
}

/// `B_n(u)`: `C_n(u)` if `(q−1) ∤ n`, else `C_n(u)/(1−u)`.
pub fn bpoly(n: u64, fq: &FieldDesc) -> Result<UPoly> {
    let q = fq.cardinality();
    bpoly_from_c(n, q, cpoly(n, fq)?, None)
}

/// `B_n(u)` with coefficients in `A/m`, never materialising `s_i(n)`.
pub fn bpoly_residue(n: u64, m: &Modulus) -> Result<UPoly> {
    let fq = m.field();
    let q = fq.cardinality();
    let top = cutoff(n, q).min(m.degree() as u64);
    let coeffs = (0..=top).map(|i| power_sum_residue(i, n, m)).collect::<Result<Vec<_>>>()?;
    bpoly_from_c(n, q, UPoly::new(fq, coeffs), Some(m.poly()))
}

/// The scalar Bernoulli-Goss element: `Σ s_i(n)` if `(q−1) ∤ n`, otherwise
/// `Σ −i·s_i(n)`. Computed straight from the power sums, not via `B_n(u)`.
pub fn bgoss_scalar(n: u64, fq: &FieldDesc) -> Result<Poly> {
    check_field(fq)?;
    let q = fq.cardinality();
    let divisible = n.is_multiple_of(q - 1);
    let mut acc = Poly::zero(fq);
    for i in 0..=cutoff(n, q) {
        let s = power_sum_exact(i, n, fq)?;
        let term = if divisible { s.scale(fq.from_int(-(i as i64))) } else { s };
        acc = &acc + &term;
    }
    Ok(acc)
}

/// A root `α` of a monic irreducible `f(u) ∈ F_p[u]`, modelled inside
/// `E = F_q[z]/(g)` for `g` the canonically first irreducible factor of `f`
/// over `F_q`.
#[derive(Clone, Debug)]
pub struct AlphaContext {
    pub f: Poly,
    pub fq: FieldDesc,
    pub g: Poly,
    /// `[F_q(α) : F_q]`
    pub s: usize,
    pub top: FieldDesc,
    pub alpha: FieldElem,
    /// `α^{q^i}` for `i = 0..s`.
    pub conjugates: Vec<FieldElem>,
}

pub fn make_alpha_context(f: &Poly, fq: &FieldDesc) -> Result<AlphaContext> {
    check_field(fq)?;
    let fp = fq.prime_field();
    if *f.field() != fp {
        return Err(Error::FieldMismatch(format!(
            "f must have coefficients in F_{}, got {}",
            fp.p(),
            f.field().describe()
        )));
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial(f.to_string_var('u')));
    }
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string_var('u')));
    }
    if !f.is_irreducible()? {
        return Err(Error::NotIrreducible(f.to_string_var('u')));
    }
    let lifted = f.lift(fq)?;
    let fac = lifted.factor(0)?;
    let (g, _) = fac.factors.first().cloned().expect("nonconstant f has a factor");
    let s = g.degree().expect("irreducible factor is nonconstant");
    if fac.factors.iter().any(|(h, e)| *e != 1 || h.degree() != Some(s)) {
        return Err(Error::Contract(format!(
            "factors of {} over {} are not all simple of degree {s}",
            f.to_string_var('u'),
            fq.describe()
        )));
    }
    let (top, alpha) = if s == 1 {
        (fq.clone(), fq.neg(g.coeff(0)))
    } else {
        let e = FieldDesc::extension(fq, g.coeffs(), Level::Top)?;
        let z = e.generator().expect("extension has a generator");
        (e, z)
    };
    let q = fq.cardinality();
    let mut conjugates = Vec::with_capacity(s);
    let mut x = alpha;
    for _ in 0..s {
        conjugates.push(x);
        x = top.frobenius_q(x, q);
    }
    if x != alpha {
        return Err(Error::Contract("Frobenius orbit of alpha does not close after s steps".into()));
    }
    let f_top = f.lift(&top)?;
    for &c in &conjugates {
        if !f_top.eval(c).is_zero() {
            return Err(Error::Contract(format!("f({}) != 0", top.format(c))));
        }
    }
    Ok(AlphaContext { f: f.clone(), fq: fq.clone(), g, s, top, alpha, conjugates })
}

impl AlphaContext {
    /// `Π_i B(α_i)` in `E[T]`, descended to `A`. Errors if a coefficient
    /// fails to be Frobenius-fixed.
    pub fn norm(&self, b: &UPoly) -> Result<Poly> {
        let mut prod = Poly::one(&self.top);
        for &a in &self.conjugates {
            prod = &prod * &b.eval_in(&self.top, a)?;
        }
        let q = self.fq.cardinality();
        for &c in prod.coeffs() {
            if self.top.frobenius_q(c, q) != c {
                return Err(Error::Contract(format!(
                    "norm coefficient {} is not fixed by Frobenius",
                    self.top.format(c)
                )));
            }
        }
        prod.descend(&self.fq)
    }
}

/// `B^α_n = N(B_n(α)) ∈ A`.
pub fn b_alpha(n: u64, ctx: &AlphaContext) -> Result<Poly> {
    ctx.norm(&bpoly(n, &ctx.fq)?)
}

/// Result of evaluating `B_n(u) mod m` at the conjugates of `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaResidue {
    /// `B̄_n(α_i) ∈ E[T]/(m)`.
    pub conjugate_values: Vec<Poly>,
    /// `B^α_n mod m ∈ A/m`.
    pub norm: Poly,
    /// `m | B^α_n`.
    pub divisible: bool,
}

pub fn b_alpha_mod(n: u64, ctx: &AlphaContext, m: &Modulus) -> Result<AlphaResidue> {
    if *m.field() != ctx.fq {
        return Err(Error::FieldMismatch("modulus and alpha context use different F_q".into()));
    }
    let b = bpoly_residue(n, m)?;
    let m_top = m.poly().lift(&ctx.top)?;
    let mut conjugate_values = Vec::with_capacity(ctx.s);
    let mut prod = Poly::one(&ctx.top);
    for &a in &ctx.conjugates {
        let v = b.eval_in(&ctx.top, a)?.rem(&m_top)?;
        prod = prod.mul_mod(&v, &m_top)?;
        conjugate_values.push(v);
    }
    let norm = prod.descend(&ctx.fq)?;
    Ok(AlphaResidue { divisible: norm.is_zero(), conjugate_values, norm })
}
