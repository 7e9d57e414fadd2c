//! Polynomials in `u` whose coefficients are elements of `A = F_q[T]`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldDesc, FieldElem};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq)]
pub struct UPoly {
    field: FieldDesc,
    coeffs: Vec<Poly>,
}

impl UPoly {
    pub fn new(field: &FieldDesc, mut coeffs: Vec<Poly>) -> UPoly {
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        UPoly { field: field.clone(), coeffs }
    }

    pub fn one(field: &FieldDesc) -> UPoly {
        UPoly::new(field, vec![Poly::one(field)])
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Poly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Poly::zero(&self.field))
    }

    /// Degree in `u`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Value at `u = 1`.
    pub fn eval_at_one(&self) -> Poly {
        self.coeffs.iter().fold(Poly::zero(&self.field), |acc, c| &acc + c)
    }

    /// Value at `u = x` for `x` in a field `top` containing the coefficient
    /// field; the result lives in `top[T]`.
    pub fn eval_in(&self, top: &FieldDesc, x: FieldElem) -> Result<Poly> {
        let mut acc = Poly::zero(top);
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(x) + &c.lift(top)?;
        }
        Ok(acc)
    }

    /// Product with coefficients reduced modulo `m` when given.
    pub fn mul_reduced(&self, other: &UPoly, m: Option<&Poly>) -> Result<UPoly> {
        if self.field != other.field {
            return Err(Error::FieldMismatch("u-polynomials over different fields".into()));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(UPoly::new(&self.field, Vec::new()));
        }
        let mut out = vec![Poly::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        if let Some(m) = m {
            for c in &mut out {
                *c = c.rem(m)?;
            }
        }
        Ok(UPoly::new(&self.field, out))
    }

    pub fn reduce(&self, m: &Poly) -> Result<UPoly> {
        let v = self.coeffs.iter().map(|c| c.rem(m)).collect::<Result<Vec<_>>>()?;
        Ok(UPoly::new(&self.field, v))
    }

    /// Coefficient strings ascending in `u`.
    pub fn to_json(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

impl fmt::Display for UPoly {
    /// `1 + (T^4+T)*u + T^2*u^2`, ascending in `u`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let mono = match k {
                0 => String::new(),
                1 => "u".to_string(),
                _ => format!("u^{k}"),
            };
            let t = if k == 0 {
                if cs.contains('+') { format!("({cs})") } else { cs }
            } else if c.is_one() {
                mono
            } else if cs.contains('+') {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            terms.push(t);
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}
