//! Exact arithmetic in GF(q) for prime powers `q = p^n`.
//!
//! A [`Field`] is built once from `q` and carries full addition and
//! multiplication tables; elements are [`Fe`] handles whose integer value
//! is the base-`p` reading of the reduced coefficient vector (most
//! significant coefficient first). That integer order is the canonical
//! total order on elements, with zero minimal.
//!
//! The modulus of an extension field is the first monic irreducible
//! polynomial of degree `n` when candidates are scanned in ascending
//! coefficient order, constant term least significant. So `make_field(9)`
//! always uses `x^2 + 1`, `make_field(4)` uses `x^2 + x + 1`.

mod poly;
mod prime;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use prime::{is_prime, next_prime_geq, next_prime_power_geq, prime_power};

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} exceeds the supported maximum {MAX_FIELD_ORDER}")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field element: {0}")]
    InvalidElement(String),
    #[error("invalid field spec: {0}")]
    InvalidSpec(String),
}

/// Characteristic, degree and modulus of a finite field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub n: u32,
    /// Monic modulus, constant term first, `n + 1` coefficients.
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn order(&self) -> u32 {
        self.p.pow(self.n)
    }
}

/// A field element. Only meaningful together with the [`Field`] that made it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// Integer value of the coefficient vector; also the element's rank in
    /// the canonical order.
    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub(crate) fn from_raw(value: u32) -> Fe {
        Fe(value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Pow(u64),
}

/// GF(q) with precomputed operation tables.
#[derive(Clone)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("q", &self.q)
            .field("spec", &self.spec)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

/// Builds GF(q). Deterministic: the same `q` always yields the same modulus.
pub fn make_field(q: u64) -> Result<Field, GfError> {
    let (p, n) = prime_power(q).ok_or(GfError::NotPrimePower(q))?;
    if q > MAX_FIELD_ORDER {
        return Err(GfError::FieldTooLarge(q));
    }
    let modulus = poly::first_irreducible(n as usize, p as u32);
    Ok(Field::with_modulus(p as u32, n, modulus))
}

impl Field {
    /// Rebuilds a field from a serialized spec. Only the canonical modulus
    /// is accepted, so every `Field` satisfies the same invariants as one
    /// returned by [`make_field`].
    pub fn from_spec(spec: &FieldSpec) -> Result<Field, GfError> {
        if spec.n == 0 || !is_prime(spec.p as u64) {
            return Err(GfError::InvalidSpec(format!(
                "p = {} must be prime and n = {} at least 1",
                spec.p, spec.n
            )));
        }
        let q = (spec.p as u64)
            .checked_pow(spec.n)
            .ok_or_else(|| GfError::InvalidSpec(format!("{}^{} overflows", spec.p, spec.n)))?;
        let field = make_field(q)?;
        if field.spec.modulus != spec.modulus {
            return Err(GfError::InvalidSpec(format!(
                "modulus {:?} is not the canonical modulus {:?} for q = {q}",
                spec.modulus, field.spec.modulus
            )));
        }
        Ok(field)
    }

    fn with_modulus(p: u32, n: u32, modulus: Vec<u32>) -> Field {
        let q = p.pow(n);
        let qs = q as usize;
        let to_poly = |v: u32| -> Vec<u32> {
            let mut rest = v;
            (0..n)
                .map(|_| {
                    let c = rest % p;
                    rest /= p;
                    c
                })
                .collect()
        };
        let from_poly = |c: &[u32]| -> u32 { c.iter().rev().fold(0, |acc, &d| acc * p + d) };

        let polys: Vec<Vec<u32>> = (0..q).map(to_poly).collect();
        let mut add = vec![0u32; qs * qs];
        let mut mul = vec![0u32; qs * qs];
        for a in 0..qs {
            for b in a..qs {
                let sum: Vec<u32> = polys[a]
                    .iter()
                    .zip(&polys[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                let s = from_poly(&sum);
                add[a * qs + b] = s;
                add[b * qs + a] = s;

                let prod = poly::rem_monic(&poly::mul(&polys[a], &polys[b], p), &modulus, p);
                let m = from_poly(&prod);
                mul[a * qs + b] = m;
                mul[b * qs + a] = m;
            }
        }
        let mut neg = vec![0u32; qs];
        let mut inv = vec![0u32; qs];
        for a in 0..qs {
            neg[a] = (0..q).find(|&b| add[a * qs + b as usize] == 0).unwrap();
            if a != 0 {
                inv[a] = (1..q).find(|&b| mul[a * qs + b as usize] == 1).unwrap();
            }
        }
        Field {
            spec: FieldSpec { p, n, modulus },
            q,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.spec.n
    }

    /// Element with the given rank in the canonical order.
    pub fn element(&self, value: u32) -> Result<Fe, GfError> {
        if value < self.q {
            Ok(Fe(value))
        } else {
            Err(GfError::InvalidElement(format!(
                "{value} is out of range for GF({})",
                self.q
            )))
        }
    }

    /// Element from its reduced coefficient vector, constant term first.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe, GfError> {
        if coeffs.len() != self.spec.n as usize {
            return Err(GfError::InvalidElement(format!(
                "expected {} coefficients, got {}",
                self.spec.n,
                coeffs.len()
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.spec.p) {
            return Err(GfError::InvalidElement(format!(
                "coefficient {c} is not reduced mod {}",
                self.spec.p
            )));
        }
        Ok(Fe(coeffs
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * self.spec.p + d)))
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let mut rest = a.0;
        (0..self.spec.n)
            .map(|_| {
                let c = rest % self.spec.p;
                rest /= self.spec.p;
                c
            })
            .collect()
    }

    /// All `q` elements in canonical order, zero first.
    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Fe> + ExactSizeIterator + Clone {
        (0..self.q).map(Fe)
    }

    pub fn nonzero_elements(&self) -> impl DoubleEndedIterator<Item = Fe> + Clone {
        (1..self.q).map(Fe)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.add[(a.0 * self.q + b.0) as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.mul[(a.0 * self.q + b.0) as usize])
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.neg[a.0 as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, GfError> {
        if a.is_zero() {
            Err(GfError::DivisionByZero)
        } else {
            Ok(Fe(self.inv[a.0 as usize]))
        }
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, mut exp: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Uniform entry point over every supported operation. Unary operations
    /// ignore `b`.
    pub fn arith(&self, op: ArithOp, a: Fe, b: Fe) -> Result<Fe, GfError> {
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
            ArithOp::Neg => self.neg(a),
            ArithOp::Inv => self.inv(a)?,
            ArithOp::Pow(e) => self.pow(a, e),
        })
    }

    /// Human-readable polynomial form, e.g. `x+1` or `2x^2+1`.
    pub fn display(&self, a: Fe) -> String {
        if self.spec.n == 1 {
            return a.0.to_string();
        }
        let coeffs = self.coeffs(a);
        let terms: Vec<String> = coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let var = match i {
                    0 => String::new(),
                    1 => "x".to_string(),
                    _ => format!("x^{i}"),
                };
                match (c, i) {
                    (_, 0) => c.to_string(),
                    (1, _) => var,
                    _ => format!("{c}{var}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}
