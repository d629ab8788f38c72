use crate::complexes::BoundedComplex;
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::gmod::{hom_space_matrices, non_equivariant_generator};

/// Maps `h^i : C^i -> C^{i-1}` for `i = 1..=l`; `maps[i - 1]` is `h^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub maps: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractibilityReport {
    pub contractible: bool,
    pub certificate: Option<Homotopy>,
}

impl Homotopy {
    /// Block sum of certificates for `c` and `d`, matching
    /// [`BoundedComplex::direct_sum`].
    pub fn direct_sum(
        &self,
        other: &Homotopy,
        c: &BoundedComplex,
        d: &BoundedComplex,
    ) -> Result<Homotopy> {
        let n = c.terms().len().max(d.terms().len());
        let field = c.field();
        let dim = |x: &BoundedComplex, i: usize| x.terms().get(i).map_or(0, |t| t.dim());
        let get = |h: &Homotopy, x: &BoundedComplex, i: usize| -> Matrix {
            h.maps
                .get(i - 1)
                .cloned()
                .unwrap_or_else(|| Matrix::zeros(field, dim(x, i - 1), dim(x, i)))
        };
        let maps = (1..n)
            .map(|i| Matrix::block_diag(field, &[&get(self, c, i), &get(other, d, i)]))
            .collect::<Result<_>>()?;
        Ok(Homotopy { maps })
    }
}

/// Checks that every `h^i` is equivariant and `d^{i-1} h^i + h^{i+1} d^i = 1`
/// at every position.
pub fn verify_homotopy(c: &BoundedComplex, h: &Homotopy) -> Result<()> {
    let n = c.terms().len();
    if h.maps.len() != n.saturating_sub(1) {
        return Err(Error::InvalidComplex(format!(
            "homotopy has {} maps for a complex with {n} terms",
            h.maps.len()
        )));
    }
    let terms = c.terms();
    let d = c.differentials();
    for (k, hm) in h.maps.iter().enumerate() {
        let i = k + 1;
        if hm.shape() != (terms[i - 1].dim(), terms[i].dim()) {
            return Err(Error::InvalidComplex(format!("h^{i} has the wrong shape")));
        }
        if let Some(g) = non_equivariant_generator(&terms[i], &terms[i - 1], hm)? {
            return Err(Error::InvalidComplex(format!(
                "h^{i} does not commute with generator {g}"
            )));
        }
    }
    for i in 0..n {
        let dim = terms[i].dim();
        let mut total = Matrix::zeros(c.field(), dim, dim);
        if i > 0 {
            total = total.add(&d[i - 1].mul(&h.maps[i - 1])?)?;
        }
        if i + 1 < n {
            total = total.add(&h.maps[i].mul(&d[i])?)?;
        }
        if !total.is_identity() {
            return Err(Error::InvalidComplex(format!(
                "dh + hd differs from the identity at position {i}"
            )));
        }
    }
    Ok(())
}

/// Decides contractibility with one affine solve. The unknowns are the
/// coordinates of each `h^i` in a basis of `Hom_kG(C^i, C^{i-1})`, so
/// equivariance holds by construction; the equations are `dh + hd = 1`.
pub fn is_contractible(c: &BoundedComplex) -> Result<ContractibilityReport> {
    let terms = c.terms();
    let n = terms.len();
    let field = c.field();
    if n == 0 {
        return Ok(ContractibilityReport {
            contractible: true,
            certificate: Some(Homotopy { maps: vec![] }),
        });
    }
    let d = c.differentials();
    let bases: Vec<Vec<Matrix>> = (1..n)
        .map(|i| hom_space_matrices(&terms[i], &terms[i - 1]))
        .collect::<Result<_>>()?;
    let unknowns: usize = bases.iter().map(Vec::len).sum();
    let offsets: Vec<usize> = terms
        .iter()
        .scan(0, |acc, t| {
            let o = *acc;
            *acc += t.dim() * t.dim();
            Some(o)
        })
        .collect();
    let rows = terms.iter().map(|t| t.dim() * t.dim()).sum();
    let mut system = Matrix::zeros(field, rows, unknowns);
    let mut rhs = Matrix::zeros(field, rows, 1);
    for (i, t) in terms.iter().enumerate() {
        for j in 0..t.dim() {
            rhs.set(offsets[i] + j * t.dim() + j, 0, 1);
        }
    }
    let mut col = 0;
    for (k, basis) in bases.iter().enumerate() {
        let i = k + 1;
        for hb in basis {
            // d^{i-1} hb contributes at position i, hb d^{i-1} at position i - 1
            let at_i = d[i - 1].mul(hb)?;
            for (r, &v) in at_i.data().iter().enumerate() {
                system.set(offsets[i] + r, col, v);
            }
            let at_prev = hb.mul(&d[i - 1])?;
            for (r, &v) in at_prev.data().iter().enumerate() {
                system.set(offsets[i - 1] + r, col, v);
            }
            col += 1;
        }
    }
    let Some(sol) = system.solve(&rhs)? else {
        return Ok(ContractibilityReport {
            contractible: false,
            certificate: None,
        });
    };
    let mut maps = Vec::with_capacity(n - 1);
    let mut col = 0;
    for (k, basis) in bases.iter().enumerate() {
        let i = k + 1;
        let mut h = Matrix::zeros(field, terms[i - 1].dim(), terms[i].dim());
        for hb in basis {
            h.add_scaled(sol.get(col, 0), hb)?;
            col += 1;
        }
        maps.push(h);
    }
    let certificate = Homotopy { maps };
    verify_homotopy(c, &certificate)
        .map_err(|e| Error::Internal(format!("solver produced an invalid homotopy: {e}")))?;
    Ok(ContractibilityReport {
        contractible: true,
        certificate: Some(certificate),
    })
}
