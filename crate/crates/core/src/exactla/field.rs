//! Finite fields `F_q`, `q = p^e`.
//!
//! An element is stored as a `u32` code `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`
//! where `c_0 + c_1 t + ... + c_{e-1} t^{e-1}` is its residue modulo the
//! defining polynomial. Multiplication goes through discrete log tables built
//! once per field, so fields are shared behind an `Arc`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Coefficients are listed from the constant term upwards; the last entry is
/// the leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn new(p: u32, e: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidField(
                "extension degree must be positive".into(),
            ));
        }
        if modulus.len() != e as usize + 1 {
            return Err(Error::InvalidField(format!(
                "modulus has {} coefficients, expected {}",
                modulus.len(),
                e + 1
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(
                "modulus coefficient out of range".into(),
            ));
        }
        if modulus[e as usize] != 1 {
            return Err(Error::InvalidField("modulus is not monic".into()));
        }
        if e == 1 && modulus != [0, 1] {
            return Err(Error::InvalidField("prime fields use the modulus t".into()));
        }
        if !is_irreducible(p, &modulus) {
            return Err(Error::InvalidField(format!(
                "{modulus:?} is reducible over F_{p}"
            )));
        }
        Ok(FieldSpec { p, e, modulus })
    }

    /// The field `F_{p^e}` defined by [`find_irreducible`].
    pub fn standard(p: u32, e: u32) -> Result<Self> {
        let modulus = find_irreducible(p, e)?;
        Ok(FieldSpec { p, e, modulus })
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::standard(p, 1)
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.e)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(
                f,
                "F_{}^{}[{}]",
                self.p,
                self.e,
                poly_to_string(&self.modulus)
            )
        }
    }
}

fn poly_to_string(coeffs: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        parts.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

// Remainder of `a` modulo the monic polynomial `m` over F_p.
fn poly_rem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let shift = r.len() - dm;
        for (i, &mc) in m[..dm].iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + (p - lead) * mc % p) % p;
        }
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        // every monic polynomial of degree d
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                g.push((x % p as u64) as u32);
                x /= p as u64;
            }
            g.push(1);
            if poly_rem(p, f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `e` over
/// `F_p`, comparing coefficient lists from the constant term upwards. For
/// `e = 1` this is `t`.
pub fn find_irreducible(p: u32, e: u32) -> Result<Vec<u32>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Err(Error::InvalidField(
            "extension degree must be positive".into(),
        ));
    }
    let count = (p as u64)
        .checked_pow(e)
        .filter(|&c| c <= MAX_FIELD_ORDER)
        .ok_or(Error::FieldTooLarge { p, e })?;
    for idx in 0..count {
        let mut f = Vec::with_capacity(e as usize + 1);
        let mut x = idx;
        for _ in 0..e {
            f.push((x % p as u64) as u32);
            x /= p as u64;
        }
        f.push(1);
        if is_irreducible(p, &f) {
            return Ok(f);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

struct FieldData {
    spec: FieldSpec,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field with its arithmetic tables. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.spec)
    }
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        let q64 = spec.order();
        if q64 > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge {
                p: spec.p,
                e: spec.e,
            });
        }
        let q = q64 as u32;
        let slow = SlowArith {
            p: spec.p,
            e: spec.e as usize,
            modulus: &spec.modulus,
        };
        let gen = (1..q).find(|&g| slow.is_primitive(g, q)).unwrap_or(1);
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..q - 1 {
            exp.push(x);
            log[x as usize] = i;
            x = slow.mul(x, gen);
        }
        Ok(Field(Arc::new(FieldData { spec, q, exp, log })))
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::new(FieldSpec::prime(p)?)
    }

    pub fn standard(p: u32, e: u32) -> Result<Self> {
        Self::new(FieldSpec::standard(p, e)?)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn p(&self) -> u32 {
        self.0.spec.p
    }

    pub fn e(&self) -> u32 {
        self.0.spec.e
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    /// The image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p() as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.spec.p;
        if p == 2 {
            return a ^ b;
        }
        if self.0.spec.e == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.spec.p;
        if p == 2 || a == 0 {
            return a;
        }
        if self.0.spec.e == 1 {
            return p - a;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.0.spec.e == 1 {
            return a * b % self.0.spec.p;
        }
        let d = &*self.0;
        let n = d.q - 1;
        let s = d.log[a as usize] + d.log[b as usize];
        d.exp[(if s >= n { s - n } else { s }) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let d = &*self.0;
        let n = d.q - 1;
        Ok(d.exp[((n - d.log[a as usize]) % n) as usize])
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Residue coefficients `[c_0, ..., c_{e-1}]` of an element.
    pub fn coefficients(&self, a: u32) -> Vec<u32> {
        let p = self.p();
        let mut a = a;
        (0..self.e())
            .map(|_| {
                let c = a % p;
                a /= p;
                c
            })
            .collect()
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<u32> {
        if coeffs.len() != self.e() as usize {
            return Err(Error::DimensionMismatch(format!(
                "scalar has {} coefficients, field degree is {}",
                coeffs.len(),
                self.e()
            )));
        }
        let p = self.p();
        let mut code = 0;
        for &c in coeffs.iter().rev() {
            if c >= p {
                return Err(Error::Parse(format!(
                    "coefficient {c} is not reduced mod {p}"
                )));
            }
            code = code * p + c;
        }
        Ok(code)
    }

    pub fn is_valid(&self, a: u32) -> bool {
        a < self.0.q
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }

    pub fn format(&self, a: u32) -> String {
        if self.e() == 1 {
            a.to_string()
        } else {
            poly_to_string(&self.coefficients(a))
        }
    }
}

struct SlowArith<'a> {
    p: u32,
    e: usize,
    modulus: &'a [u32],
}

impl SlowArith<'_> {
    fn decode(&self, mut a: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.e);
        for _ in 0..self.e {
            v.push(a % self.p);
            a /= self.p;
        }
        v
    }

    fn encode(&self, v: &[u32]) -> u32 {
        v.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.decode(a), self.decode(b));
        let mut prod = vec![0u32; 2 * self.e];
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % self.p;
            }
        }
        let mut r = poly_rem(self.p, &prod, self.modulus);
        r.resize(self.e, 0);
        self.encode(&r)
    }

    fn pow(&self, a: u32, mut k: u32) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    fn is_primitive(&self, g: u32, q: u32) -> bool {
        let n = q - 1;
        let mut m = n;
        let mut d = 2;
        let mut factors = Vec::new();
        while d * d <= m {
            if m.is_multiple_of(d) {
                factors.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        factors.iter().all(|&l| self.pow(g, n / l) != 1)
    }
}

/// An element of a finite field that carries its field. Binary operations
/// report an error when the operands live in different fields.
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    field: Field,
    code: u32,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(self.code))
    }
}

impl Scalar {
    pub fn new(field: &Field, code: u32) -> Result<Self> {
        if !field.is_valid(code) {
            return Err(Error::InvalidField(format!(
                "{code} is not an element of {field:?}"
            )));
        }
        Ok(Scalar {
            field: field.clone(),
            code,
        })
    }

    pub fn from_coefficients(field: &Field, coeffs: &[u32]) -> Result<Self> {
        let code = field.from_coefficients(coeffs)?;
        Ok(Scalar {
            field: field.clone(),
            code,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn coefficients(&self) -> Vec<u32> {
        self.field.coefficients(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(Scalar {
            field: self.field.clone(),
            code: self.field.add(self.code, other.code),
        })
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(Scalar {
            field: self.field.clone(),
            code: self.field.mul(self.code, other.code),
        })
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            field: self.field.clone(),
            code: self.field.neg(self.code),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        Ok(Scalar {
            field: self.field.clone(),
            code: self.field.inv(self.code)?,
        })
    }

    pub fn pow(&self, k: u64) -> Scalar {
        Scalar {
            field: self.field.clone(),
            code: self.field.pow(self.code, k),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducible_examples() {
        assert_eq!(find_irreducible(2, 1).unwrap(), vec![0, 1]);
        assert_eq!(find_irreducible(2, 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(find_irreducible(3, 2).unwrap(), vec![1, 0, 1]);
        assert_eq!(find_irreducible(4, 2), Err(Error::NotPrime(4)));
    }

    #[test]
    fn irreducible_quadratics_over_f2_by_exhaustion() {
        // t^2, t^2+1, t^2+t, t^2+t+1: only the last has no root
        let irreducible: Vec<_> = (0..4u32)
            .map(|i| vec![i & 1, i >> 1, 1])
            .filter(|f| (0..2).all(|x| (f[0] + f[1] * x + x * x) % 2 != 0))
            .collect();
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn small_arithmetic() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.inv(2).unwrap(), 2);
        let f4 = Field::standard(2, 2).unwrap();
        // t is code 2, t + 1 is code 3
        assert_eq!(f4.mul(2, 2), 3);
        for a in f4.elements() {
            assert_eq!(f4.add(a, f4.neg(a)), 0);
        }
        assert_eq!(f3.inv(0), Err(Error::ZeroInverse));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(FieldSpec::new(2, 2, vec![1, 0, 1]).is_err()); // (t+1)^2
        assert!(FieldSpec::new(3, 2, vec![1, 0, 2]).is_err()); // not monic
        assert!(FieldSpec::new(6, 1, vec![0, 1]).is_err());
        assert!(FieldSpec::new(3, 2, vec![1, 0, 1]).is_ok());
    }

    #[test]
    fn scalar_field_mismatch() {
        let f3 = Field::prime(3).unwrap();
        let f9 = Field::standard(3, 2).unwrap();
        let a = Scalar::new(&f3, 1).unwrap();
        let b = Scalar::new(&f9, 1).unwrap();
        assert_eq!(a.add(&b), Err(Error::FieldMismatch));
        assert_eq!(Scalar::new(&f3, 0).unwrap().inv(), Err(Error::ZeroInverse));
    }
}
