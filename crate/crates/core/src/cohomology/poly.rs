use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::groups::{ElemAbGroup, Subgroup};

/// A homogeneous element of the polynomial part `k[x_1, ..., x_r]` of the
/// cohomology ring of `C_p^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyClass {
    group: ElemAbGroup,
    field: Field,
    /// Polynomial degree; the cohomological degree is this times
    /// [`PolyClass::generator_degree`].
    degree: usize,
    /// Exponent vector to nonzero coefficient.
    terms: BTreeMap<Vec<u32>, u32>,
}

impl PolyClass {
    pub fn zero(group: &ElemAbGroup, field: &Field, degree: usize) -> Self {
        PolyClass {
            group: group.clone(),
            field: field.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(group: &ElemAbGroup, field: &Field) -> Self {
        let mut c = Self::zero(group, field, 0);
        c.terms.insert(vec![0; group.rank()], 1);
        c
    }

    pub fn variable(group: &ElemAbGroup, field: &Field, i: usize) -> Result<Self> {
        let mut coeffs = vec![0; group.rank()];
        *coeffs.get_mut(i).ok_or_else(|| {
            Error::DimensionMismatch(format!("no variable x{} in rank {}", i + 1, group.rank()))
        })? = 1;
        Self::linear(group, field, &coeffs)
    }

    /// `Σ coeffs[i] x_{i+1}`.
    pub fn linear(group: &ElemAbGroup, field: &Field, coeffs: &[u32]) -> Result<Self> {
        check_form(group, field, coeffs)?;
        let mut c = Self::zero(group, field, 1);
        for (i, &a) in coeffs.iter().enumerate() {
            if a != 0 {
                let mut exps = vec![0; group.rank()];
                exps[i] = 1;
                c.terms.insert(exps, a);
            }
        }
        Ok(c)
    }

    /// Builds a class from `(coefficient, exponents)` pairs; like terms are
    /// combined and every monomial must have polynomial degree `degree`.
    pub fn from_terms(
        group: &ElemAbGroup,
        field: &Field,
        degree: usize,
        terms: &[(u32, Vec<u32>)],
    ) -> Result<Self> {
        let mut c = Self::zero(group, field, degree);
        for (coeff, exps) in terms {
            if !field.is_valid(*coeff) {
                return Err(Error::InvalidField(format!(
                    "{coeff} is not an element of the field"
                )));
            }
            if exps.len() != group.rank() {
                return Err(Error::DimensionMismatch(format!(
                    "monomial has {} exponents, expected {}",
                    exps.len(),
                    group.rank()
                )));
            }
            if exps.iter().map(|&x| x as usize).sum::<usize>() != degree {
                return Err(Error::Precondition(format!(
                    "monomial {exps:?} is not of degree {degree}"
                )));
            }
            c.add_term(exps.clone(), *coeff);
        }
        Ok(c)
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: u32) {
        let entry = self.terms.entry(exps).or_insert(0);
        *entry = self.field.add(*entry, coeff);
        if *entry == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn group(&self) -> &ElemAbGroup {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// 1 for `p = 2`, otherwise 2.
    pub fn generator_degree(&self) -> usize {
        if self.group.p() == 2 {
            1
        } else {
            2
        }
    }

    pub fn polynomial_degree(&self) -> usize {
        self.degree
    }

    /// Cohomological degree.
    pub fn degree(&self) -> usize {
        self.degree * self.generator_degree()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(exponents, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], u32)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    fn check_compatible(&self, other: &PolyClass) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyClass) -> Result<PolyClass> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::Precondition(format!(
                "cannot add classes of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &PolyClass) -> Result<PolyClass> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.group, &self.field, self.degree + other.degree);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let exps = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(exps, self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: u32) -> PolyClass {
        let mut out = Self::zero(&self.group, &self.field, self.degree);
        for (e, &a) in &self.terms {
            out.add_term(e.clone(), self.field.mul(a, c));
        }
        out
    }

    fn pow(&self, k: u32) -> Result<PolyClass> {
        let mut out = Self::one(&self.group, &self.field);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }
}

impl fmt::Display for PolyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(exps, &c)| {
                let mono: Vec<String> = exps
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(i, &x)| {
                        if x == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{x}", i + 1)
                        }
                    })
                    .collect();
                match (c, mono.is_empty()) {
                    (_, true) => self.field.format(c),
                    (1, false) => mono.join("*"),
                    _ => format!("{}*{}", self.field.format(c), mono.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn check_form(group: &ElemAbGroup, field: &Field, coeffs: &[u32]) -> Result<()> {
    if field.p() != group.p() {
        return Err(Error::FieldMismatch);
    }
    if coeffs.len() != group.rank() {
        return Err(Error::DimensionMismatch(format!(
            "linear form has {} coefficients, expected {}",
            coeffs.len(),
            group.rank()
        )));
    }
    if let Some(bad) = coeffs.iter().find(|&&c| !field.is_valid(c)) {
        return Err(Error::InvalidField(format!(
            "{bad} is not an element of the field"
        )));
    }
    Ok(())
}

/// Coefficients of the restriction of `Σ form[i] x_i` to `e`, in the
/// variables dual to `e`'s basis.
pub fn restrict_form(field: &Field, form: &[u32], e: &Subgroup) -> Vec<u32> {
    e.basis()
        .iter()
        .map(|b| {
            form.iter()
                .zip(b)
                .fold(0, |acc, (&a, &x)| field.add(acc, field.mul(a, x)))
        })
        .collect()
}

/// Scales a nonzero vector so its first nonzero entry is 1.
pub fn normalize_form(field: &Field, form: &[u32]) -> Option<Vec<u32>> {
    let lead = *form.iter().find(|&&c| c != 0)?;
    let inv = field.inv(lead).ok()?;
    Some(form.iter().map(|&c| field.mul(c, inv)).collect())
}

pub fn proportional(field: &Field, a: &[u32], b: &[u32]) -> bool {
    match (normalize_form(field, a), normalize_form(field, b)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

/// Restriction to `e`: `x_i` goes to `Σ_j e.basis()[j][i] y_j`.
pub fn restrict_class(c: &PolyClass, e: &Subgroup) -> Result<PolyClass> {
    if e.group() != &c.group {
        return Err(Error::GroupMismatch);
    }
    let sub = ElemAbGroup::new(c.group.p(), e.rank())?;
    let images: Vec<PolyClass> = (0..c.group.rank())
        .map(|i| {
            let coeffs: Vec<u32> = e.basis().iter().map(|b| b[i]).collect();
            PolyClass::linear(&sub, &c.field, &coeffs)
        })
        .collect::<Result<_>>()?;
    let mut out = PolyClass::zero(&sub, &c.field, c.degree);
    for (exps, &coeff) in &c.terms {
        let mut mono = PolyClass::one(&sub, &c.field).scale(coeff);
        for (img, &x) in images.iter().zip(exps) {
            if x > 0 {
                mono = mono.mul(&img.pow(x)?)?;
            }
        }
        out = out.add(&mono)?;
    }
    Ok(out)
}

/// A product of nonzero linear forms in `x_1, ..., x_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFormProduct {
    pub field: Field,
    pub factors: Vec<Vec<u32>>,
}

impl LinearFormProduct {
    pub fn new(field: &Field, factors: Vec<Vec<u32>>) -> Result<Self> {
        if let Some(first) = factors.first() {
            if factors.iter().any(|f| f.len() != first.len()) {
                return Err(Error::DimensionMismatch(
                    "linear forms of different lengths".into(),
                ));
            }
        }
        for f in &factors {
            if f.iter().all(|&c| c == 0) {
                return Err(Error::Precondition("zero linear form".into()));
            }
            if let Some(bad) = f.iter().find(|&&c| !field.is_valid(c)) {
                return Err(Error::InvalidField(format!(
                    "{bad} is not an element of the field"
                )));
            }
        }
        Ok(LinearFormProduct {
            field: field.clone(),
            factors,
        })
    }

    pub fn expand(&self, group: &ElemAbGroup) -> Result<PolyClass> {
        let mut out = PolyClass::one(group, &self.field);
        for f in &self.factors {
            out = out.mul(&PolyClass::linear(group, &self.field, f)?)?;
        }
        Ok(out)
    }

    pub fn restricted_factors(&self, e: &Subgroup) -> Vec<Vec<u32>> {
        self.factors
            .iter()
            .map(|f| restrict_form(&self.field, f, e))
            .collect()
    }
}

pub fn format_form(field: &Field, form: &[u32]) -> String {
    let parts: Vec<String> = form
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            if c == 1 {
                format!("x{}", i + 1)
            } else {
                format!("{}*x{}", field.format(c), i + 1)
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

impl fmt::Display for LinearFormProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| format!("({})", format_form(&self.field, x)))
            .collect();
        write!(f, "{}", parts.join(""))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restriction_examples() {
        let g = ElemAbGroup::new(2, 2).unwrap();
        let f = Field::prime(2).unwrap();
        let x1 = PolyClass::variable(&g, &f, 0).unwrap();
        let x2 = PolyClass::variable(&g, &f, 1).unwrap();
        let c = x1.mul(&x2).unwrap().add(&x1.mul(&x1).unwrap()).unwrap();
        assert_eq!(restrict_class(&c, &g.whole()).unwrap().terms().count(), 2);

        let diag = Subgroup::from_generators(&g, &[vec![1, 1]]).unwrap();
        let sub = ElemAbGroup::new(2, 1).unwrap();
        let y = PolyClass::variable(&sub, &f, 0).unwrap();
        assert_eq!(restrict_class(&x1, &diag).unwrap(), y);
        assert_eq!(restrict_class(&x2, &diag).unwrap(), y);
        // x1 x2 + x1^2 goes to y^2 + y^2 = 0
        assert!(restrict_class(&c, &diag).unwrap().is_zero());
        assert!(restrict_class(&c, &g.trivial_subgroup()).unwrap().is_zero());
    }

    #[test]
    fn odd_primes_double_the_degree() {
        let g = ElemAbGroup::new(3, 2).unwrap();
        let f = Field::prime(3).unwrap();
        let x = PolyClass::variable(&g, &f, 0).unwrap();
        assert_eq!(x.mul(&x).unwrap().degree(), 4);
    }

    #[test]
    fn inhomogeneous_terms_rejected() {
        let g = ElemAbGroup::new(2, 2).unwrap();
        let f = Field::prime(2).unwrap();
        assert!(PolyClass::from_terms(&g, &f, 2, &[(1, vec![2, 0]), (1, vec![1, 0])]).is_err());
        let c = PolyClass::from_terms(&g, &f, 2, &[(1, vec![1, 1]), (1, vec![1, 1])]).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn product_expansion_and_display() {
        let g = ElemAbGroup::new(2, 3).unwrap();
        let f = Field::prime(2).unwrap();
        let u = LinearFormProduct::new(&f, vec![vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        assert_eq!(u.to_string(), "(x1+x2)(x2+x3)");
        assert_eq!(u.expand(&g).unwrap().polynomial_degree(), 2);
        assert!(LinearFormProduct::new(&f, vec![vec![0, 0, 0]]).is_err());
    }
}
