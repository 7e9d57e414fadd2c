//! Command-line front end. `run` renders everything into strings so the
//! binary stays a thin shim and the output can be checked byte for byte.

use std::ffi::OsString;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::bernoulli::{b_alpha, bgoss_scalar, bpoly, make_alpha_context, AlphaContext, Modulus};
use crate::error::{Error, Result};
use crate::field::{field_of_order, make_tower, FieldDesc};
use crate::golden::run_golden_checks;
use crate::poly::Poly;
use crate::report::{report_table, BalphaJson, BnJson, FactorJson, ReportJson, SearchJson, ZetabarJson};
use crate::zeta::{criterion_check, find_divisible_modulus, reduced_zeta, survey, Limits, Part};

#[derive(Debug, Parser)]
#[command(name = "cyclozeta", version, about = "Bernoulli-Goss polynomials and divisibility of reduced zeta factors")]
pub struct Cli {
    /// Field size q (a prime power; default modulus if --field-modulus is absent).
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Characteristic p.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Modulus of F_q over F_p, in y (e.g. "y^2+y+1").
    #[arg(long = "field-modulus", global = true)]
    pub field_modulus: Option<String>,
    /// Monic irreducible f(u) over F_p.
    #[arg(long, global = true)]
    pub f: Option<String>,
    /// Monic irreducible m(T) over F_q.
    #[arg(long, global = true)]
    pub m: Option<String>,
    /// Exponent n, or an inclusive range "a..b".
    #[arg(long, global = true)]
    pub n: Option<String>,
    /// minus | plus | both
    #[arg(long, global = true)]
    pub part: Option<String>,
    #[arg(long, global = true)]
    pub d: Option<usize>,
    #[arg(long, global = true)]
    pub dmax: Option<usize>,
    /// Cap on q^d - 2 for reduced products and witness scans.
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub json: bool,
    /// Include elapsed_ms in reports (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
    /// Use d! instead of lcm(1..d) as the search exponent.
    #[arg(long, global = true)]
    pub factorial: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// B_n(u) and the scalar B_n.
    Bn,
    /// B^alpha_n with its factorization.
    Balpha,
    /// Factor a polynomial over F_q.
    Factor {
        /// Polynomial in T (defaults to --m).
        poly: Option<String>,
    },
    /// Reduced zeta factor Zbar_m^(part)(u).
    Zetabar,
    /// Two-path divisibility check of Zbar_m^(part) by f.
    Criterion,
    /// Criterion for every irreducible m with deg m <= dmax.
    Survey,
    /// Constructive search for m with deg m > d and f | Zbar_m^(part).
    Search,
    /// Replay the golden examples.
    VerifyPaper,
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
    exit_code: i32,
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report types serialise")
}

impl Cli {
    fn field(&self) -> Result<FieldDesc> {
        let p = match (self.p, self.q) {
            (Some(p), _) => p,
            (None, Some(q)) => {
                if self.field_modulus.is_none() {
                    return field_of_order(q);
                }
                crate::field::prime_factors(q)
                    .first()
                    .copied()
                    .ok_or_else(|| Error::InvalidArgument(format!("bad q = {q}")))?
            }
            (None, None) => return Err(Error::InvalidArgument("one of --q or --p is required".into())),
        };
        let fp = FieldDesc::prime(p)?;
        let fq = match &self.field_modulus {
            Some(s) => make_tower(p, Some(&Poly::parse(&fp, s, 'y')?))?,
            None => fp,
        };
        if let Some(q) = self.q {
            if q != fq.cardinality() {
                return Err(Error::InvalidArgument(format!(
                    "--q {q} disagrees with the field {} of size {}",
                    fq.describe(),
                    fq.cardinality()
                )));
            }
        }
        Ok(fq)
    }

    fn limits(&self) -> Limits {
        let mut l = Limits { seed: self.seed, factorial_exponent: self.factorial, ..Limits::default() };
        if let Some(c) = self.cap {
            l.product_cap = c;
        }
        l
    }

    fn alpha(&self, fq: &FieldDesc) -> Result<AlphaContext> {
        let s = self.f.as_deref().ok_or_else(|| Error::InvalidArgument("--f is required".into()))?;
        make_alpha_context(&Poly::parse(&fq.prime_field(), s, 'u')?, fq)
    }

    fn modulus(&self, fq: &FieldDesc) -> Result<Modulus> {
        let s = self.m.as_deref().ok_or_else(|| Error::InvalidArgument("--m is required".into()))?;
        Modulus::new(Poly::parse(fq, s, 'T')?)
    }

    fn exponents(&self) -> Result<Vec<u64>> {
        let s = self.n.as_deref().ok_or_else(|| Error::InvalidArgument("--n is required".into()))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::InvalidArgument(format!("bad exponent {t:?}")))
        };
        match s.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (parse(a)?, parse(b)?);
                if a > b {
                    return Err(Error::InvalidArgument(format!("empty range {s}")));
                }
                Ok((a..=b).collect())
            }
            None => Ok(vec![parse(s)?]),
        }
    }

    fn parts(&self, default_both: bool) -> Result<Vec<Part>> {
        match self.part.as_deref() {
            None if default_both => Ok(vec![Part::Minus, Part::Plus]),
            None => Err(Error::InvalidArgument("--part is required".into())),
            Some("both") => Ok(vec![Part::Minus, Part::Plus]),
            Some(s) => Ok(vec![s.parse()?]),
        }
    }

    fn single_part(&self) -> Result<Part> {
        match self.parts(false)?.as_slice() {
            [p] => Ok(*p),
            _ => Err(Error::InvalidArgument("this command needs --part minus or --part plus".into())),
        }
    }

    fn execute(&self) -> Result<(String, i32)> {
        match &self.command {
            Command::Bn => {
                let fq = self.field()?;
                let mut text = Vec::new();
                let mut json = Vec::new();
                for n in self.exponents()? {
                    let b = bpoly(n, &fq)?;
                    let s = bgoss_scalar(n, &fq)?;
                    text.push(format!("B_{n}(u) = {b}\nB_{n} = {s}"));
                    json.push(BnJson::new(&fq, n, &b, &s));
                }
                Ok((if self.json { to_json(&json) } else { text.join("\n") }, 0))
            }
            Command::Balpha => {
                let fq = self.field()?;
                let ctx = self.alpha(&fq)?;
                let mut text = Vec::new();
                let mut json = Vec::new();
                for n in self.exponents()? {
                    let b = b_alpha(n, &ctx)?;
                    let fac = b.factor(self.seed)?;
                    text.push(format!("B^alpha_{n} = {fac}"));
                    json.push(BalphaJson::new(&fq, &ctx.f, n, &b, &fac));
                }
                Ok((if self.json { to_json(&json) } else { text.join("\n") }, 0))
            }
            Command::Factor { poly } => {
                let fq = self.field()?;
                let s = poly
                    .as_deref()
                    .or(self.m.as_deref())
                    .ok_or_else(|| Error::InvalidArgument("nothing to factor".into()))?;
                let a = Poly::parse(&fq, s, 'T')?;
                let fac = a.factor(self.seed)?;
                Ok((if self.json { to_json(&FactorJson::new(&a, &fac)) } else { fac.to_string() }, 0))
            }
            Command::Zetabar => {
                let fq = self.field()?;
                let m = self.modulus(&fq)?;
                let lim = self.limits();
                let mut text = Vec::new();
                let mut json = Vec::new();
                for part in self.parts(true)? {
                    let z = reduced_zeta(&m, part, &lim)?;
                    text.push(format!("Zbar^({part})_{{{}}}(u) = {}", m.poly(), z.poly.to_string_var('u')));
                    json.push(ZetabarJson::new(&fq, m.poly(), part, &z.poly));
                }
                Ok((if self.json { to_json(&json) } else { text.join("\n") }, 0))
            }
            Command::Criterion => {
                let fq = self.field()?;
                let ctx = self.alpha(&fq)?;
                let m = self.modulus(&fq)?;
                let lim = self.limits();
                let reports = self
                    .parts(true)?
                    .into_iter()
                    .map(|part| criterion_check(&ctx, &m, part, &lim))
                    .collect::<Result<Vec<_>>>()?;
                if self.json {
                    let js: Vec<_> = reports.iter().map(|r| ReportJson::new(r, self.timing)).collect();
                    return Ok((to_json(&js), 0));
                }
                let lines: Vec<String> = reports
                    .iter()
                    .map(|r| {
                        let mut s = format!(
                            "q={} f={} m={} part={} verdict={} witness_n={} Zbar={}",
                            r.q,
                            r.f.to_string_var('u'),
                            r.m.poly(),
                            r.part,
                            r.verdict,
                            r.witness_n.map_or("-".to_string(), |n| n.to_string()),
                            r.reduced_zeta.poly.to_string_var('u'),
                        );
                        if let Some(note) = &r.note {
                            s.push_str(&format!(" note=\"{note}\""));
                        }
                        if self.timing {
                            s.push_str(&format!(" elapsed_ms={}", r.elapsed.as_millis()));
                        }
                        s
                    })
                    .collect();
                Ok((lines.join("\n"), 0))
            }
            Command::Survey => {
                let fq = self.field()?;
                let ctx = self.alpha(&fq)?;
                let dmax = self.dmax.or(self.d).ok_or_else(|| Error::InvalidArgument("--dmax is required".into()))?;
                let rows = survey(&ctx, dmax, &self.parts(true)?, &self.limits())?;
                if self.json {
                    let js: Vec<_> = rows.iter().map(|r| ReportJson::new(r, self.timing)).collect();
                    return Ok((to_json(&js), 0));
                }
                Ok((report_table(&rows), 0))
            }
            Command::Search => {
                let fq = self.field()?;
                let ctx = self.alpha(&fq)?;
                let d = self.d.ok_or_else(|| Error::InvalidArgument("--d is required".into()))?;
                let part = self.single_part()?;
                let out = find_divisible_modulus(&ctx, d, part, &self.limits())?;
                if self.json {
                    return Ok((to_json(&SearchJson::new(&out, d, self.timing)), 0));
                }
                let mut lines = out.trace.clone();
                lines.push(format!("m = {}, b = {}", out.m.poly(), out.b));
                Ok((lines.join("\n"), 0))
            }
            Command::VerifyPaper => {
                let checks = run_golden_checks();
                let failed = checks.iter().filter(|c| !c.pass).count();
                let code = if failed == 0 { 0 } else { 4 };
                if self.json {
                    #[derive(Serialize)]
                    struct Summary<'a> {
                        passed: usize,
                        failed: usize,
                        checks: &'a [crate::golden::Check],
                    }
                    let s = Summary { passed: checks.len() - failed, failed, checks: &checks };
                    return Ok((to_json(&s), code));
                }
                let mut lines: Vec<String> = checks
                    .iter()
                    .map(|c| {
                        if c.pass {
                            format!("PASS  {}", c.name)
                        } else {
                            format!("FAIL  {}: expected {}, computed {}", c.name, c.expected, c.computed)
                        }
                    })
                    .collect();
                lines.push(if failed == 0 {
                    "all golden checks pass".to_string()
                } else {
                    format!("{failed} golden check(s) failed")
                });
                Ok((lines.join("\n"), code))
            }
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Output { stdout: rendered, stderr: String::new(), code }
            } else {
                Output { stdout: String::new(), stderr: rendered, code }
            };
        }
    };
    let result = match cli.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build() {
            Ok(pool) => pool.install(|| cli.execute()),
            Err(e) => Err(Error::InvalidArgument(format!("cannot start {j} workers: {e}"))),
        },
        None => cli.execute(),
    };
    match result {
        Ok((mut stdout, code)) => {
            stdout.push('\n');
            Output { stdout, stderr: String::new(), code }
        }
        Err(e) => {
            let code = e.exit_code();
            if cli.json {
                let body = ErrorJson { error: ErrorBody { kind: e.kind(), message: e.to_string(), exit_code: code } };
                Output { stdout: to_json(&body) + "\n", stderr: String::new(), code }
            } else {
                Output { stdout: String::new(), stderr: format!("error: {e}\n"), code }
            }
        }
    }
}
