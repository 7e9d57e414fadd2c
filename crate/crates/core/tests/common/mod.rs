//! Structural checks shared by the property tests and the acceptance runner.
//! Each returns the number of instances it verified, or a description of
//! the first counterexample.

#![allow(dead_code)]

use cyclozeta::bernoulli::{
    b_alpha, b_alpha_mod, binom_mod_p, bgoss_scalar, bpoly, cpoly, cutoff, degree_bound, make_alpha_context,
    power_sum_exact, rho_iter, AlphaContext, ExtInt, Modulus,
};
use cyclozeta::field::field_of_order;
use cyclozeta::poly::enumerate_monic_irreducible;
use cyclozeta::upoly::UPoly;
use cyclozeta::zeta::{criterion_check, full_residue_product, reduced_zeta, survey, to_prime_field, Limits, Part};
use cyclozeta::{FieldDesc, FieldElem, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<usize, String>;

pub fn fq(q: u64) -> FieldDesc {
    field_of_order(q).unwrap()
}

pub fn tpoly(q: u64, s: &str) -> Poly {
    Poly::parse(&fq(q), s, 'T').unwrap()
}

pub fn modulus(q: u64, s: &str) -> Modulus {
    Modulus::new(tpoly(q, s)).unwrap()
}

pub fn ctx(q: u64, f: &str) -> AlphaContext {
    let fq = fq(q);
    make_alpha_context(&Poly::parse(&fq.prime_field(), f, 'u').unwrap(), &fq).unwrap()
}

fn err<E: std::fmt::Display>(what: impl std::fmt::Display) -> impl FnOnce(E) -> String {
    move |e| format!("{what}: {e}")
}

/// Every alpha context over `F_q` for `f` monic irreducible over `F_p` of
/// degree `1..=max_deg`.
pub fn all_contexts(q: u64, max_deg: usize) -> Vec<AlphaContext> {
    let fq = fq(q);
    let fp = fq.prime_field();
    let mut out = Vec::new();
    for d in 1..=max_deg {
        for f in enumerate_monic_irreducible(&fp, d).unwrap() {
            out.push(make_alpha_context(&f, &fq).unwrap());
        }
    }
    out
}

pub fn moduli(q: u64, max_deg: usize) -> Vec<Modulus> {
    let fq = fq(q);
    (1..=max_deg)
        .flat_map(|d| enumerate_monic_irreducible(&fq, d).unwrap())
        .map(|m| Modulus::new(m).unwrap())
        .collect()
}

/// Power sums vanish past `l(n)/(q−1)`; below it their degree is at most
/// `Σ_{s≤i} ρ^{(s)}(n)`, with equality when every `C(n, ρ^{(s)}(n))` is a
/// unit mod `p`.
pub fn power_sum_vanishing_and_degrees(qs: &[u64], n_max: u64) -> Check {
    let mut count = 0;
    for &q in qs {
        let field = fq(q);
        let p = field.p() as u64;
        for n in 1..=n_max {
            let top = cutoff(n, q);
            for i in 0..=top + 2 {
                let s = power_sum_exact(i, n, &field).map_err(err(format!("s_{i}({n}) over F_{q}")))?;
                if i > top {
                    if !s.is_zero() {
                        return Err(format!("s_{i}({n}) over F_{q} = {s}, expected 0"));
                    }
                    count += 1;
                    continue;
                }
                let bound = degree_bound(n, i as u32, q);
                let deg = s.degree().map(|d| ExtInt::Fin(d as u64)).unwrap_or(ExtInt::NegInf);
                if deg > bound {
                    return Err(format!("deg s_{i}({n}) over F_{q} = {deg} exceeds bound {bound}"));
                }
                let lucas = (1..=i as u32).all(|k| match rho_iter(n, k, q) {
                    ExtInt::Fin(r) => binom_mod_p(n, r, p) != 0,
                    ExtInt::NegInf => false,
                });
                if lucas && deg != bound {
                    return Err(format!("deg s_{i}({n}) over F_{q} = {deg}, expected equality with {bound}"));
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `C_n(1) = 0` whenever `(q−1) | n`.
pub fn c_vanishes_at_one(qs: &[u64], n_max: u64) -> Check {
    let mut count = 0;
    for &q in qs {
        let field = fq(q);
        for n in (q - 1..=n_max).step_by((q - 1) as usize) {
            let c = cpoly(n, &field).map_err(err(format!("C_{n} over F_{q}")))?;
            if !c.eval_at_one().is_zero() {
                return Err(format!("C_{n}(1) over F_{q} = {}", c.eval_at_one()));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// `B_n(1)` agrees with the scalar `B_n` computed straight from the power sums.
pub fn b_at_one_is_scalar(qs: &[u64], n_max: u64) -> Check {
    let mut count = 0;
    for &q in qs {
        let field = fq(q);
        for n in 1..=n_max {
            let b = bpoly(n, &field).map_err(err(format!("B_{n} over F_{q}")))?;
            let s = bgoss_scalar(n, &field).map_err(err(format!("scalar B_{n} over F_{q}")))?;
            if b.eval_at_one() != s {
                return Err(format!("B_{n}(1) = {} but B_{n} = {s} over F_{q}", b.eval_at_one()));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// `deg_u B_n ≤ ⌊l(n)/(q−1)⌋`, one less when `(q−1) | n`.
pub fn b_degree_caps(qs: &[u64], n_max: u64) -> Check {
    let mut count = 0;
    for &q in qs {
        let field = fq(q);
        for n in 1..=n_max {
            let b = bpoly(n, &field).map_err(err(format!("B_{n} over F_{q}")))?;
            let cap = if n % (q - 1) == 0 { cutoff(n, q) - 1 } else { cutoff(n, q) };
            let deg = b.degree().ok_or_else(|| format!("B_{n} over F_{q} is zero"))? as u64;
            if deg > cap {
                return Err(format!("deg B_{n} over F_{q} = {deg} > {cap}"));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// `B^α_{n₁} ≡ B^α_{n₂} (mod m)` for random `n₁ ≡ n₂ mod q^{deg m} − 1`.
pub fn congruence_random_pairs(pairs: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let setups: Vec<(u64, Vec<AlphaContext>, Vec<Modulus>)> =
        [(2u64, 3usize), (3, 2), (4, 2), (5, 2)].iter().map(|&(q, d)| (q, all_contexts(q, 2), moduli(q, d))).collect();
    for k in 0..pairs {
        let (q, ctxs, ms) = &setups[k % setups.len()];
        let c = &ctxs[rng.gen_range(0..ctxs.len())];
        let m = &ms[rng.gen_range(0..ms.len())];
        let period = q.pow(m.degree() as u32) - 1;
        let n1 = rng.gen_range(1..1u64 << 20);
        let n2 = n1 + rng.gen_range(1..1u64 << 30) * period;
        let a = b_alpha_mod(n1, c, m).map_err(err(format!("B^alpha_{n1}")))?;
        let b = b_alpha_mod(n2, c, m).map_err(err(format!("B^alpha_{n2}")))?;
        if a.norm != b.norm {
            return Err(format!(
                "q={q} f={} m={}: B^alpha_{n1} = {} but B^alpha_{n2} = {} mod m",
                c.f.to_string_var('u'),
                m.poly(),
                a.norm,
                b.norm
            ));
        }
    }
    Ok(pairs)
}

/// `B^α_q = B^α_{2(q−1)} = 1` for every context, exactly and mod every `m`.
pub fn unit_values(qs: &[u64]) -> Check {
    let mut count = 0;
    for &q in qs {
        let ms = moduli(q, 2);
        for c in all_contexts(q, 3) {
            for n in [q, 2 * (q - 1)] {
                let b = b_alpha(n, &c).map_err(err(format!("B^alpha_{n}")))?;
                if !b.is_one() {
                    return Err(format!("q={q} f={}: B^alpha_{n} = {b}", c.f.to_string_var('u')));
                }
                for m in &ms {
                    let r = b_alpha_mod(n, &c, m).map_err(err(format!("B^alpha_{n} mod {}", m.poly())))?;
                    if !r.norm.is_one() {
                        return Err(format!("q={q} f={}: B^alpha_{n} mod {} = {}", c.f.to_string_var('u'), m.poly(), r.norm));
                    }
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Both reduced products lie in `F_p[u]`, and minus times plus equals the
/// product of every reduced `B_n(u)`.
pub fn reduced_products_in_prime_field(cases: &[(u64, usize)]) -> Check {
    let lim = Limits::default();
    let mut count = 0;
    for &(q, dmax) in cases {
        for m in moduli(q, dmax) {
            let minus = reduced_zeta(&m, Part::Minus, &lim).map_err(err(format!("Zbar^- for {}", m.poly())))?;
            let plus = reduced_zeta(&m, Part::Plus, &lim).map_err(err(format!("Zbar^+ for {}", m.poly())))?;
            let full = full_residue_product(&m, &lim).map_err(err("full product"))?;
            let full = to_prime_field(&full, &m).map_err(err("full product"))?;
            if &minus.poly * &plus.poly != full {
                return Err(format!("q={q} m={}: minus*plus != full product", m.poly()));
            }
            count += 2;
        }
    }
    Ok(count)
}

/// Survey verdicts agree with an independent recomputation: division of the
/// reduced product by `f`, and a smallest witness that really is one.
pub fn two_path_agreement(cases: &[(u64, usize)]) -> Check {
    let lim = Limits::default();
    let mut count = 0;
    for &(q, dmax) in cases {
        for c in all_contexts(q, 2) {
            let rows = survey(&c, dmax, &[Part::Minus, Part::Plus], &lim).map_err(err("survey"))?;
            for r in rows {
                let label = format!("q={q} f={} m={} {}", c.f.to_string_var('u'), r.m.poly(), r.part);
                let divides = r.reduced_zeta.poly.rem(&c.f).map_err(err(&label))?.is_zero();
                if divides != r.verdict || r.verdict != r.witness_n.is_some() {
                    return Err(format!("{label}: verdict {} witness {:?}", r.verdict, r.witness_n));
                }
                if let Some(w) = r.witness_n {
                    if !r.part.contains(w, q) || !b_alpha_mod(w, &c, &r.m).map_err(err(&label))?.divisible {
                        return Err(format!("{label}: witness {w} does not divide"));
                    }
                    for n in (1..w).filter(|&n| r.part.contains(n, q)) {
                        if b_alpha_mod(n, &c, &r.m).map_err(err(&label))?.divisible {
                            return Err(format!("{label}: smaller witness {n} < {w}"));
                        }
                    }
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `det B_n(C_g)` over `A`, with `C_g` the companion matrix of `g`: the norm
/// of `B_n(α)` computed without touching the extension field.
pub fn norm_by_determinant(b: &UPoly, g: &Poly) -> Poly {
    let field = g.field().clone();
    let s = g.degree().unwrap();
    let mut companion = vec![vec![field.zero(); s]; s];
    for i in 0..s {
        if i + 1 < s {
            companion[i + 1][i] = field.one();
        }
        companion[i][s - 1] = field.neg(g.coeff(i));
    }
    let matmul = |x: &Vec<Vec<_>>, y: &Vec<Vec<_>>| {
        let mut z = vec![vec![field.zero(); s]; s];
        for i in 0..s {
            for j in 0..s {
                for k in 0..s {
                    z[i][j] = field.add(z[i][j], field.mul(x[i][k], y[k][j]));
                }
            }
        }
        z
    };
    let mut power: Vec<Vec<FieldElem>> = (0..s).map(|i| (0..s).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect();
    let mut entries = vec![vec![Poly::zero(&field); s]; s];
    for coeff in b.coeffs() {
        for i in 0..s {
            for j in 0..s {
                entries[i][j] = &entries[i][j] + &coeff.scale(power[i][j]);
            }
        }
        power = matmul(&power, &companion);
    }
    det(&entries)
}

fn det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = Poly::zero(m[0][0].field());
    for col in 0..n {
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(j, _)| j != col).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][col] * &det(&minor);
        total = if col % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

/// Norms descend to `F_q[T]` and match the determinant oracle.
pub fn norms_match_determinant(qs: &[u64], n_max: u64) -> Check {
    let mut count = 0;
    for &q in qs {
        let field = fq(q);
        for c in all_contexts(q, 3) {
            for n in 1..=n_max {
                let b = bpoly(n, &field).map_err(err(format!("B_{n}")))?;
                let norm = b_alpha(n, &c).map_err(err(format!("B^alpha_{n}")))?;
                let oracle = norm_by_determinant(&b, &c.g);
                if norm != oracle {
                    return Err(format!("q={q} f={} n={n}: norm {norm} vs det {oracle}", c.f.to_string_var('u')));
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

/// The modular verdict agrees with reducing the exact norm.
pub fn modular_matches_exact(qs: &[u64], n_max: u64, dmax: usize) -> Check {
    let mut count = 0;
    for &q in qs {
        let ms = moduli(q, dmax);
        for c in all_contexts(q, 2) {
            for n in 1..=n_max {
                let exact = b_alpha(n, &c).map_err(err(format!("B^alpha_{n}")))?;
                for m in &ms {
                    let r = b_alpha_mod(n, &c, m).map_err(err(format!("B^alpha_{n} mod {}", m.poly())))?;
                    let reduced = exact.rem(m.poly()).unwrap();
                    if r.norm != reduced || r.divisible != reduced.is_zero() {
                        return Err(format!("q={q} f={} n={n} m={}: {} vs {reduced}", c.f.to_string_var('u'), m.poly(), r.norm));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Runs every check above at the sizes used by the acceptance suite.
pub fn full_property_suite() -> Vec<(&'static str, Check)> {
    vec![
        ("power sums vanish past l(n)/(q-1), degree bounds and equality", power_sum_vanishing_and_degrees(&[2, 3], 40)),
        ("C_n(1) = 0 when (q-1) | n", c_vanishes_at_one(&[2, 3, 4], 60)),
        ("B_n(1) equals the scalar B_n", b_at_one_is_scalar(&[2, 3, 4], 60)),
        ("degree caps on B_n(u)", b_degree_caps(&[2, 3, 4], 60)),
        ("congruence of B^alpha_n mod m on 200 random pairs", congruence_random_pairs(200, 0x5eed)),
        ("B^alpha_q = B^alpha_(2(q-1)) = 1", unit_values(&[2, 3, 4])),
        ("reduced products lie in F_p[u]", reduced_products_in_prime_field(&[(2, 3), (3, 2), (4, 2)])),
        ("two-path agreement on every survey cell", two_path_agreement(&[(2, 3), (3, 2), (4, 2)])),
        ("norms match the companion-matrix determinant", norms_match_determinant(&[2, 3, 4], 30)),
        ("modular verdict matches the exact norm", modular_matches_exact(&[2, 3], 30, 3)),
    ]
}

pub fn check_search(q: u64, f: &str, d: usize, part: Part) -> Result<cyclozeta::zeta::SearchOutcome, String> {
    let c = ctx(q, f);
    let lim = Limits::default();
    let out = cyclozeta::zeta::find_divisible_modulus(&c, d, part, &lim).map_err(err("search"))?;
    if out.m.degree() <= d {
        return Err(format!("deg m = {} is not > {d}", out.m.degree()));
    }
    let again = criterion_check(&c, &out.m, part, &lim).map_err(err("re-check"))?;
    if !again.verdict || again.reduced_zeta != out.report.reduced_zeta {
        return Err(format!("independent criterion check rejects m = {}", out.m.poly()));
    }
    if !b_alpha_mod(out.b, &c, &out.m).map_err(err("witness"))?.divisible || !part.contains(out.b, q) {
        return Err(format!("b = {} is not a witness for m = {}", out.b, out.m.poly()));
    }
    Ok(out)
}
