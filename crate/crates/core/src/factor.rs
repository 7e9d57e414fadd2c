//! Complete factorization over a finite field: square-free decomposition
//! with p-th-root descent, distinct-degree splitting, then Cantor–Zassenhaus
//! equal-degree splitting driven by a seeded ChaCha generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldDesc, FieldElem};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub field: FieldDesc,
    pub unit: FieldElem,
    /// Monic irreducible factors with multiplicities, in canonical order.
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::constant(&self.field, self.unit);
        for (g, e) in &self.factors {
            acc = &acc * &g.pow(*e as u64);
        }
        acc
    }

    pub fn to_string_var(&self, var: char) -> String {
        let mut s = String::new();
        if self.unit != FieldElem::ONE || self.factors.is_empty() {
            let u = self.field.format(self.unit);
            if u.contains('+') && !self.factors.is_empty() {
                s.push_str(&format!("({u})"));
            } else {
                s.push_str(&u);
            }
        }
        for (g, e) in &self.factors {
            s.push('(');
            s.push_str(&g.to_string_var(var));
            s.push(')');
            if *e > 1 {
                s.push_str(&format!("^{e}"));
            }
        }
        s
    }

    /// Distinct irreducible factors, canonical order.
    pub fn irreducibles(&self) -> impl Iterator<Item = &Poly> {
        self.factors.iter().map(|(g, _)| g)
    }
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_string_var('T'))
    }
}

impl Poly {
    /// Canonical factorization. The seed only changes the internal splitting
    /// order; the result is sorted and therefore seed-independent.
    pub fn factor(&self, seed: u64) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let field = self.field().clone();
        let unit = self.leading();
        let monic = self.make_monic();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut factors: Vec<(Poly, u32)> = Vec::new();
        for (sqf, mult) in squarefree_decomposition(&monic)? {
            for (part, k) in distinct_degree(&sqf)? {
                let mut pieces = Vec::new();
                equal_degree(&part, k, &mut rng, &mut pieces)?;
                factors.extend(pieces.into_iter().map(|g| (g, mult)));
            }
        }
        factors.sort_by(|a, b| a.0.cmp_canonical(&b.0));
        let mut merged: Vec<(Poly, u32)> = Vec::with_capacity(factors.len());
        for (g, e) in factors {
            match merged.last_mut() {
                Some((h, m)) if *h == g => *m += e,
                _ => merged.push((g, e)),
            }
        }
        Ok(Factorization { field, unit, factors: merged })
    }
}

/// `f = Π g_i^{e_i}` with each `g_i` square-free and monic.
pub fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    let field = f.field();
    let p = field.p();
    let mut out = Vec::new();
    if f.is_constant() {
        return Ok(out);
    }
    let mut c = f.gcd(&f.derivative())?;
    let mut w = f.exact_div(&c)?;
    let mut i = 1u32;
    while !w.is_constant() {
        let y = w.gcd(&c)?;
        let fac = w.exact_div(&y)?;
        if !fac.is_constant() {
            out.push((fac.make_monic(), i));
        }
        w = y;
        c = c.exact_div(&w)?;
        i += 1;
    }
    if !c.is_constant() {
        let root = c
            .make_monic()
            .pth_root()
            .ok_or_else(|| Error::Contract(format!("{c} has zero derivative but is not a p-th power")))?;
        for (g, e) in squarefree_decomposition(&root)? {
            out.push((g, e * p));
        }
    }
    Ok(out)
}

/// Splits a square-free monic `f` into products of irreducibles of equal
/// degree: `(product, degree)`.
pub fn distinct_degree(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let field = f.field();
    let q = field.cardinality();
    let t = Poly::var(field);
    let mut out = Vec::new();
    let mut rest = f.make_monic();
    let mut h = t.rem(&rest)?;
    let mut k = 0usize;
    while let Some(d) = rest.degree() {
        if d < 2 * (k + 1) {
            if d > 0 {
                out.push((rest.clone(), d));
            }
            break;
        }
        k += 1;
        h = h.pow_mod(q, &rest)?;
        let g = (&h - &t).gcd(&rest)?;
        if !g.is_one() {
            rest = rest.exact_div(&g)?;
            h = h.rem(&rest)?;
            out.push((g, k));
        }
    }
    Ok(out)
}

fn random_poly(field: &FieldDesc, below: usize, rng: &mut ChaCha8Rng) -> Poly {
    let card = field.cardinality() as u32;
    let v = (0..below).map(|_| FieldElem::from_index(rng.gen_range(0..card))).collect();
    Poly::new(field.clone(), v)
}

/// Candidate splitter for a product of degree-`k` irreducibles.
fn splitter(a: &Poly, f: &Poly, k: usize) -> Result<Poly> {
    let field = f.field();
    let q = field.cardinality();
    if field.p() == 2 {
        // absolute trace to F_2 of a in F_{q^k}
        let steps = field.abs_degree() as usize * k;
        let mut acc = a.rem(f)?;
        let mut cur = acc.clone();
        for _ in 1..steps {
            cur = cur.mul_mod(&cur, f)?;
            acc = &acc + &cur;
        }
        Ok(acc)
    } else {
        // a^{(q^k-1)/2} = (a^{1+q+...+q^{k-1}})^{(q-1)/2}
        let mut norm = Poly::one(field);
        let mut cur = a.rem(f)?;
        for j in 0..k {
            norm = norm.mul_mod(&cur, f)?;
            if j + 1 < k {
                cur = cur.pow_mod(q, f)?;
            }
        }
        let b = norm.pow_mod((q - 1) / 2, f)?;
        Ok(&b - &Poly::one(field))
    }
}

fn equal_degree(f: &Poly, k: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) -> Result<()> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Ok(());
    }
    if n == k {
        out.push(f.make_monic());
        return Ok(());
    }
    loop {
        let a = random_poly(f.field(), n, rng);
        if a.is_constant() {
            continue;
        }
        let g = a.gcd(f)?;
        let g = if !g.is_one() { g } else { splitter(&a, f, k)?.gcd(f)? };
        if let Some(dg) = g.degree() {
            if dg > 0 && dg < n {
                let h = f.exact_div(&g)?;
                equal_degree(&g, k, rng, out)?;
                equal_degree(&h.make_monic(), k, rng, out)?;
                return Ok(());
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::field_of_order;
    use proptest::prelude::*;

    fn poly(q: u64, s: &str) -> Poly {
        Poly::parse(&field_of_order(q).unwrap(), s, 'T').unwrap()
    }

    #[test]
    fn inseparable_square() {
        let f = poly(2, "T^8+T^2+1").factor(7).unwrap();
        assert_eq!(f.to_string(), "(T^4+T+1)^2");
    }

    #[test]
    fn three_quadratics_over_f3() {
        let f = poly(3, "T^6+T^4+T^2+1").factor(1).unwrap();
        assert_eq!(f.to_string(), "(T^2+1)(T^2+T+2)(T^2+2T+2)");
    }

    #[test]
    fn units_and_zero() {
        let f = poly(3, "2").factor(0).unwrap();
        assert_eq!(f.unit, FieldElem::from_index(2));
        assert!(f.factors.is_empty());
        assert_eq!(f.to_string(), "2");
        assert_eq!(poly(3, "0").factor(0).unwrap_err(), Error::ZeroPolynomial);
        assert_eq!(poly(3, "2T^2+2").factor(0).unwrap().to_string(), "2(T^2+1)");
    }

    #[test]
    fn example_4_1_b5_factors() {
        let f = poly(2, "(T^4+T^3+1)(T^4+T^3+T^2+T+1)").factor(3).unwrap();
        assert_eq!(f.to_string(), "(T^4+T^3+1)(T^4+T^3+T^2+T+1)");
    }

    #[test]
    fn high_p_power_multiplicity() {
        let f = poly(3, "(T+1)^9 (T^2+1)^4 T").factor(11).unwrap();
        assert_eq!(f.to_string(), "(T)(T+1)^9(T^2+1)^4");
    }

    fn reconstructs(q: u64, coeffs: Vec<u32>, seed: u64) -> std::result::Result<(), TestCaseError> {
        let field = field_of_order(q).unwrap();
        let a = Poly::new(field, coeffs.into_iter().map(FieldElem::from_index).collect());
        if a.is_zero() {
            return Ok(());
        }
        let fac = a.factor(seed).unwrap();
        prop_assert_eq!(fac.expand(), a.clone());
        for (g, _) in &fac.factors {
            prop_assert!(g.is_monic());
            prop_assert!(g.is_irreducible().unwrap());
        }
        prop_assert_eq!(a.factor(seed ^ 0xdead_beef).unwrap(), fac);
        Ok(())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(340))]
        #[test]
        fn factor_round_trip_f2(c in prop::collection::vec(0u32..2, 0..14), seed: u64) {
            reconstructs(2, c, seed)?;
        }
        #[test]
        fn factor_round_trip_f3(c in prop::collection::vec(0u32..3, 0..14), seed: u64) {
            reconstructs(3, c, seed)?;
        }
        #[test]
        fn factor_round_trip_f4(c in prop::collection::vec(0u32..4, 0..14), seed: u64) {
            reconstructs(4, c, seed)?;
        }
    }
}
