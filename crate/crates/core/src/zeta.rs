//! Divisibility of the reduced zeta factors `Z̄_m^(±)(u)` by an irreducible
//! `f(u) ∈ F_p[u]`.
//!
//! `Z̄_m^(±)` is computed as the product of `B_n(u) mod m` over the
//! `n ∈ [1, q^d − 2]` of the matching class mod `q − 1`; its coefficients
//! must land in `F_p`. The criterion is decided twice: by dividing that
//! product by `f`, and by scanning for an `n` with `m | B^α_n`.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::bernoulli::{b_alpha, b_alpha_mod, bpoly_residue, make_alpha_context, AlphaContext, Modulus};
use crate::error::{Error, Result};
use crate::factor::Factorization;
use crate::field::{FieldDesc, FieldElem};
use crate::poly::{enumerate_monic_irreducible, Poly};
use crate::upoly::UPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Minus,
    Plus,
}

impl Part {
    /// Whether exponent `n` belongs to this part for field size `q`.
    pub fn contains(self, n: u64, q: u64) -> bool {
        let divisible = n.is_multiple_of(q - 1);
        match self {
            Part::Minus => !divisible,
            Part::Plus => divisible,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Part::Minus => "minus",
            Part::Plus => "plus",
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Part {
    type Err = Error;
    fn from_str(s: &str) -> Result<Part> {
        match s {
            "minus" | "-" => Ok(Part::Minus),
            "plus" | "+" => Ok(Part::Plus),
            _ => Err(Error::InvalidArgument(format!("unknown part {s:?} (minus|plus)"))),
        }
    }
}

/// Resource limits for the batch computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum `q^d − 2` for a reduced product or witness scan.
    pub product_cap: u64,
    /// Maximum exponent `n` for which `B^α_n` is computed exactly.
    pub exact_exponent_cap: u64,
    pub seed: u64,
    /// Use `d!` instead of `lcm(1..d)` in the constructive search.
    pub factorial_exponent: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { product_cap: 1_000_000, exact_exponent_cap: 200_000, seed: 0, factorial_exponent: false }
    }
}

fn scan_length(m: &Modulus, limits: &Limits) -> Result<u64> {
    let top = m
        .residue_card()
        .map(|c| c - 2)
        .filter(|&t| t <= limits.product_cap)
        .ok_or_else(|| Error::Capacity {
            what: format!("reduced product for m = {}", m.poly()),
            needed: (m.field().cardinality() as u128).saturating_pow(m.degree() as u32) - 2,
            cap: limits.product_cap as u128,
        })?;
    Ok(top)
}

/// `Z̄_m^(±)(u) ∈ F_p[u]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedZeta {
    pub modulus: Modulus,
    pub part: Part,
    /// Polynomial in `u` over the prime field.
    pub poly: Poly,
}

/// `Π B_n(u) mod m` over `n ∈ [1, q^d − 2]` selected by `keep`.
fn residue_product(m: &Modulus, limits: &Limits, keep: impl Fn(u64) -> bool + Sync) -> Result<UPoly> {
    let top = scan_length(m, limits)?;
    let fq = m.field();
    let factors = (1..=top)
        .into_par_iter()
        .filter(|&n| keep(n))
        .map(|n| bpoly_residue(n, m))
        .collect::<Result<Vec<_>>>()?;
    let mut acc = UPoly::one(fq);
    for b in &factors {
        if !b.is_one() {
            acc = acc.mul_reduced(b, Some(m.poly()))?;
        }
    }
    Ok(acc)
}

/// Product of all `B_n(u) mod m`, `1 ≤ n ≤ q^d − 2`, regardless of part.
pub fn full_residue_product(m: &Modulus, limits: &Limits) -> Result<UPoly> {
    residue_product(m, limits, |_| true)
}

/// Re-types a product in `(A/m)[u]` whose coefficients must lie in `F_p`.
pub fn to_prime_field(prod: &UPoly, m: &Modulus) -> Result<Poly> {
    let fq = m.field();
    let fp = fq.prime_field();
    let mut coeffs = Vec::with_capacity(prod.coeffs().len());
    for (k, c) in prod.coeffs().iter().enumerate() {
        let x = if c.is_zero() { FieldElem::ZERO } else { c.coeff(0) };
        if !c.is_constant() || !fq.in_prime_subfield(x) {
            return Err(Error::Contract(format!(
                "coefficient of u^{k} in the reduced product for m = {} is {c}, not in F_{}",
                m.poly(),
                fq.p()
            )));
        }
        coeffs.push(x);
    }
    Ok(Poly::new(fp, coeffs))
}

pub fn reduced_zeta(m: &Modulus, part: Part, limits: &Limits) -> Result<ReducedZeta> {
    let q = m.field().cardinality();
    let prod = residue_product(m, limits, |n| part.contains(n, q))?;
    let poly = to_prime_field(&prod, m)?;
    Ok(ReducedZeta { modulus: m.clone(), part, poly })
}

/// Outcome of one criterion check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityReport {
    pub q: u64,
    pub field: FieldDesc,
    pub f: Poly,
    pub m: Modulus,
    pub part: Part,
    pub verdict: bool,
    /// Smallest `n` of the part with `m | B^α_n`.
    pub witness_n: Option<u64>,
    pub reduced_zeta: ReducedZeta,
    pub note: Option<String>,
    pub elapsed: Duration,
}

const EMPTY_MINUS_NOTE: &str = "minus part is empty for q = 2 (K_m equals its maximal real subfield), so Z^(-) = 1";

/// Decides `f | Z̄_m^(part)` by division and by the witness scan, and fails
/// with a contract violation if the two disagree.
pub fn criterion_check(ctx: &AlphaContext, m: &Modulus, part: Part, limits: &Limits) -> Result<DivisibilityReport> {
    let start = Instant::now();
    if *m.field() != ctx.fq {
        return Err(Error::FieldMismatch("modulus and f use different F_q".into()));
    }
    let q = ctx.fq.cardinality();
    let zeta = reduced_zeta(m, part, limits)?;
    let by_division = zeta.poly.rem(&ctx.f)?.is_zero();

    let top = scan_length(m, limits)?;
    let hit = (1..=top)
        .into_par_iter()
        .filter(|&n| part.contains(n, q))
        .map(|n| b_alpha_mod(n, ctx, m).map(|r| (n, r.divisible)))
        .find_first(|r| matches!(r, Ok((_, true)) | Err(_)));
    let witness_n = match hit {
        Some(Ok((n, _))) => Some(n),
        Some(Err(e)) => return Err(e),
        None => None,
    };
    if by_division != witness_n.is_some() {
        return Err(Error::Contract(format!(
            "criterion paths disagree for f = {}, m = {}, {part}: division says {by_division}, witness scan found {witness_n:?}",
            ctx.f.to_string_var('u'),
            m.poly()
        )));
    }
    let note = (q == 2 && part == Part::Minus).then(|| EMPTY_MINUS_NOTE.to_string());
    Ok(DivisibilityReport {
        q,
        field: ctx.fq.clone(),
        f: ctx.f.clone(),
        m: m.clone(),
        part,
        verdict: by_division,
        witness_n,
        reduced_zeta: zeta,
        note,
        elapsed: start.elapsed(),
    })
}

/// `u − 1` over the prime field of `fq`.
pub fn unit_root_poly(fq: &FieldDesc) -> Poly {
    let fp = fq.prime_field();
    Poly::new(fp.clone(), vec![fp.from_int(-1), FieldElem::ONE])
}

/// `(p | h_m^−, p | h_m^+)`, i.e. the criterion with `f(u) = u − 1`.
pub fn class_number_divisibility(m: &Modulus, limits: &Limits) -> Result<(bool, bool)> {
    let ctx = make_alpha_context(&unit_root_poly(m.field()), m.field())?;
    let minus = criterion_check(&ctx, m, Part::Minus, limits)?;
    let plus = criterion_check(&ctx, m, Part::Plus, limits)?;
    Ok((minus.verdict, plus.verdict))
}

/// Every monic irreducible `m` of degree `1..=d_max`, each part in `parts`,
/// in order of degree, then canonical order of `m`, then part.
pub fn survey(ctx: &AlphaContext, d_max: usize, parts: &[Part], limits: &Limits) -> Result<Vec<DivisibilityReport>> {
    let q = ctx.fq.cardinality();
    let worst = (q as u128).saturating_pow(d_max as u32).saturating_sub(2);
    if worst > limits.product_cap as u128 {
        return Err(Error::Capacity { what: format!("survey up to degree {d_max}"), needed: worst, cap: limits.product_cap as u128 });
    }
    let mut cells = Vec::new();
    for d in 1..=d_max {
        for m in enumerate_monic_irreducible(&ctx.fq, d)? {
            let m = Modulus::new(m)?;
            for &part in parts {
                cells.push((m.clone(), part));
            }
        }
    }
    cells.par_iter().map(|(m, part)| criterion_check(ctx, m, *part, limits)).collect()
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    a / gcd(a, b) * b
}

/// Output of the constructive search for a modulus with `f | Z̄_m^(part)`.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub exponent: u64,
    /// `n = 1 + (q−1)q^L` (minus) or `(q−1) + (q−1)q^L` (plus).
    pub n: u64,
    pub b_alpha: Poly,
    pub factorization: Factorization,
    pub m: Modulus,
    /// `n mod (q^{deg m} − 1)`, a witness in `[1, q^{deg m} − 2]`.
    pub b: u64,
    pub report: DivisibilityReport,
    pub trace: Vec<String>,
}

/// Builds `n` from `L = lcm(1..d)` (or `d!`), factors `B^α_n`, takes its
/// first irreducible factor `m` and verifies `f | Z̄_m^(part)` end to end.
pub fn find_divisible_modulus(ctx: &AlphaContext, d: usize, part: Part, limits: &Limits) -> Result<SearchOutcome> {
    let q = ctx.fq.cardinality();
    if d < 2 {
        return Err(Error::InvalidArgument("search needs d >= 2".into()));
    }
    if part == Part::Minus && q == 2 {
        return Err(Error::InvalidArgument(EMPTY_MINUS_NOTE.into()));
    }
    let mut trace = Vec::new();
    let exponent = if limits.factorial_exponent {
        (1..=d as u64).product::<u64>()
    } else {
        (1..=d as u64).fold(1, lcm)
    };
    let too_big = || Error::Capacity {
        what: format!("exact B^alpha_n with exponent q^{exponent}"),
        needed: u128::MAX,
        cap: limits.exact_exponent_cap as u128,
    };
    let ql = u32::try_from(exponent).ok().and_then(|e| q.checked_pow(e)).ok_or_else(too_big)?;
    let n = match part {
        Part::Minus => (q - 1).checked_mul(ql).and_then(|x| x.checked_add(1)),
        Part::Plus => (q - 1).checked_mul(ql + 1),
    }
    .ok_or_else(too_big)?;
    if n > limits.exact_exponent_cap {
        return Err(Error::Capacity {
            what: format!("exact B^alpha_n for n = {n}"),
            needed: n as u128,
            cap: limits.exact_exponent_cap as u128,
        });
    }
    trace.push(format!("L = {exponent}, n = {n}"));

    let b_alpha_n = b_alpha(n, ctx)?;
    let deg = b_alpha_n.degree().unwrap_or(0);
    if b_alpha_n.is_zero() || deg == 0 {
        return Err(Error::Contract(format!("deg_T B^alpha_{n} = 0, expected > 0")));
    }
    trace.push(format!("deg_T B^alpha_n = {deg}"));

    let factorization = b_alpha_n.factor(limits.seed)?;
    trace.push(format!("B^alpha_n = {factorization}"));
    let m_poly = factorization.irreducibles().next().cloned().expect("positive degree has a factor");
    let m = Modulus::new(m_poly)?;
    let dm = m.degree();
    if dm <= d {
        return Err(Error::Contract(format!("first factor {} has degree {dm} <= d = {d}", m.poly())));
    }
    trace.push(format!("m = {} (degree {dm} > {d})", m.poly()));

    let order = q.checked_pow(dm as u32).map(|c| c - 1).ok_or_else(|| Error::Capacity {
        what: format!("q^{dm}"),
        needed: u128::MAX,
        cap: u64::MAX as u128,
    })?;
    let b = n % order;
    if b == 0 {
        return Err(Error::Contract(format!("reduced exponent b = 0 for n = {n}, deg m = {dm}")));
    }
    if !part.contains(b, q) {
        return Err(Error::Contract(format!("reduced exponent b = {b} is not in the {part} class")));
    }
    trace.push(format!("b = n mod (q^{dm} - 1) = {b}"));
    if !b_alpha_mod(b, ctx, &m)?.divisible {
        return Err(Error::Contract(format!("m does not divide B^alpha_b for b = {b}")));
    }
    trace.push(format!("m | B^alpha_{b} (congruence with B^alpha_n)"));

    let report = criterion_check(ctx, &m, part, limits)?;
    if !report.verdict {
        return Err(Error::Contract(format!("criterion check rejects m = {}", m.poly())));
    }
    let witness = report.witness_n.map_or("-".to_string(), |n| n.to_string());
    trace.push(format!("criterion: f | Z^({part})_m, smallest witness n = {witness}"));
    Ok(SearchOutcome { exponent, n, b_alpha: b_alpha_n, factorization, m, b, report, trace })
}
