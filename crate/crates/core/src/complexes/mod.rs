//! Bounded cochain complexes `0 -> C^0 -> C^1 -> ... -> C^l -> 0` of
//! `kG`-modules.

mod homotopy;
mod random;
mod theorem;

pub use homotopy::{is_contractible, verify_homotopy, ContractibilityReport, Homotopy};
pub use random::{random_adds_complex, random_multiplicities};
pub use theorem::{
    check_theorem31, split_via_rank_two_subgroup, Membership, SplitCertificate, TermMembership,
    Theorem31Report, Verdict,
};

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::gmod::{non_equivariant_generator, EquivariantMap, GModule};
use crate::groups::{ElemAbGroup, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedComplex {
    group: ElemAbGroup,
    field: Field,
    terms: Vec<GModule>,
    differentials: Vec<Matrix>,
}

/// A failed complex invariant, with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    InvalidTerm { position: usize, message: String },
    NotEquivariant { position: usize, generator: usize },
    NonZeroComposite { position: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::InvalidTerm { position, message } => {
                write!(f, "term {position} is invalid: {message}")
            }
            Violation::NotEquivariant {
                position,
                generator,
            } => {
                write!(
                    f,
                    "differential {position} does not commute with generator {generator}"
                )
            }
            Violation::NonZeroComposite { position } => {
                write!(f, "d^{} d^{position} is nonzero", position + 1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub exact: bool,
    /// `dim ker d^i - dim im d^{i-1}` at every position.
    pub homology_dims: Vec<usize>,
}

impl BoundedComplex {
    /// Builds a complex after checking shapes and the common group and field.
    /// The complex identities themselves are checked by
    /// [`BoundedComplex::validate`].
    pub fn new(
        group: &ElemAbGroup,
        field: &Field,
        terms: Vec<GModule>,
        differentials: Vec<Matrix>,
    ) -> Result<Self> {
        if differentials.len() + 1 != terms.len() && !(terms.is_empty() && differentials.is_empty())
        {
            return Err(Error::InvalidComplex(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (i, t) in terms.iter().enumerate() {
            if t.group() != group {
                return Err(Error::InvalidComplex(format!(
                    "term {i} lives over another group"
                )));
            }
            if t.field() != field {
                return Err(Error::InvalidComplex(format!(
                    "term {i} lives over another field"
                )));
            }
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.field() != field {
                return Err(Error::InvalidComplex(format!(
                    "differential {i} has another field"
                )));
            }
            if d.shape() != (terms[i + 1].dim(), terms[i].dim()) {
                return Err(Error::InvalidComplex(format!(
                    "differential {i} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    terms[i + 1].dim(),
                    terms[i].dim()
                )));
            }
        }
        Ok(BoundedComplex {
            group: group.clone(),
            field: field.clone(),
            terms,
            differentials,
        })
    }

    /// The complex with no terms.
    pub fn empty(group: &ElemAbGroup, field: &Field) -> Self {
        BoundedComplex {
            group: group.clone(),
            field: field.clone(),
            terms: vec![],
            differentials: vec![],
        }
    }

    /// `0 -> M --id--> M -> 0`.
    pub fn identity_on(m: &GModule) -> Self {
        BoundedComplex {
            group: m.group().clone(),
            field: m.field().clone(),
            terms: vec![m.clone(), m.clone()],
            differentials: vec![Matrix::identity(m.field(), m.dim())],
        }
    }

    pub fn group(&self) -> &ElemAbGroup {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &[GModule] {
        &self.terms
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.differentials
    }

    /// Index `l` of the last term; `None` for the empty complex.
    pub fn length(&self) -> Option<usize> {
        self.terms.len().checked_sub(1)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(GModule::dim).collect()
    }

    pub fn differential_map(&self, i: usize) -> EquivariantMap {
        EquivariantMap {
            source: self.terms[i].clone(),
            target: self.terms[i + 1].clone(),
            matrix: self.differentials[i].clone(),
        }
    }

    /// Every violated invariant: term validity, equivariance of each `d^i`
    /// and `d^{i+1} d^i = 0`.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (i, t) in self.terms.iter().enumerate() {
            if let Err(e) = t.validate() {
                out.push(Violation::InvalidTerm {
                    position: i,
                    message: e.to_string(),
                });
            }
        }
        for (i, d) in self.differentials.iter().enumerate() {
            if let Ok(Some(g)) = non_equivariant_generator(&self.terms[i], &self.terms[i + 1], d) {
                out.push(Violation::NotEquivariant {
                    position: i,
                    generator: g,
                });
            }
        }
        for i in 0..self.differentials.len().saturating_sub(1) {
            let comp = self.differentials[i + 1]
                .mul(&self.differentials[i])
                .expect("shapes checked");
            if !comp.is_zero() {
                out.push(Violation::NonZeroComposite { position: i });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Homology dimensions at every position; exact iff all vanish.
    pub fn is_exact(&self) -> ExactnessReport {
        let ranks: Vec<usize> = self.differentials.iter().map(Matrix::rank).collect();
        let homology_dims: Vec<usize> = (0..self.terms.len())
            .map(|i| {
                let out_rank = ranks.get(i).copied().unwrap_or(0);
                let in_rank = if i == 0 { 0 } else { ranks[i - 1] };
                self.terms[i].dim() - out_rank - in_rank
            })
            .collect();
        ExactnessReport {
            exact: homology_dims.iter().all(|&h| h == 0),
            homology_dims,
        }
    }

    /// Termwise direct sum; the shorter complex is padded with zero terms.
    pub fn direct_sum(&self, other: &BoundedComplex) -> Result<BoundedComplex> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let n = self.terms.len().max(other.terms.len());
        let a = self.padded(n)?;
        let b = other.padded(n)?;
        let terms = a
            .terms
            .iter()
            .zip(&b.terms)
            .map(|(x, y)| GModule::direct_sum(&[x.clone(), y.clone()]))
            .collect::<Result<Vec<_>>>()?;
        let differentials = a
            .differentials
            .iter()
            .zip(&b.differentials)
            .map(|(x, y)| Matrix::block_diag(&self.field, &[x, y]))
            .collect::<Result<Vec<_>>>()?;
        BoundedComplex::new(&self.group, &self.field, terms, differentials)
    }

    fn padded(&self, n: usize) -> Result<BoundedComplex> {
        let mut c = self.clone();
        let zero = GModule::zero(&self.group, &self.field)?;
        while c.terms.len() < n {
            let last_dim = c.terms.last().map_or(0, GModule::dim);
            if !c.terms.is_empty() {
                c.differentials
                    .push(Matrix::zeros(&self.field, 0, last_dim));
            }
            c.terms.push(zero.clone());
        }
        Ok(c)
    }

    /// Prepends `n` zero terms, so that `C^0` moves to position `n`.
    pub fn shift(&self, n: usize) -> Result<BoundedComplex> {
        if n == 0 || self.terms.is_empty() {
            return Ok(self.clone());
        }
        let zero = GModule::zero(&self.group, &self.field)?;
        let mut terms = vec![zero; n];
        terms.extend(self.terms.iter().cloned());
        let mut differentials: Vec<Matrix> = (0..n - 1)
            .map(|_| Matrix::zeros(&self.field, 0, 0))
            .collect();
        differentials.push(Matrix::zeros(&self.field, self.terms[0].dim(), 0));
        differentials.extend(self.differentials.iter().cloned());
        BoundedComplex::new(&self.group, &self.field, terms, differentials)
    }

    pub fn restrict(&self, h: &Subgroup) -> Result<BoundedComplex> {
        let sub = ElemAbGroup::new(self.group.p(), h.rank())?;
        let terms = self
            .terms
            .iter()
            .map(|t| t.restrict(h))
            .collect::<Result<Vec<_>>>()?;
        BoundedComplex::new(&sub, &self.field, terms, self.differentials.clone())
    }

    /// Induction to `group` along the embedding of this complex's group.
    pub fn induce(&self, group: &ElemAbGroup, embedding: &[Vec<u32>]) -> Result<BoundedComplex> {
        let terms = self
            .terms
            .iter()
            .map(|t| t.induce(group, embedding))
            .collect::<Result<Vec<_>>>()?;
        let index = (group.p() as usize).pow((group.rank() - self.group.rank()) as u32);
        let differentials = self
            .differentials
            .iter()
            .map(|d| Matrix::block_diag(&self.field, &vec![d; index]))
            .collect::<Result<Vec<_>>>()?;
        BoundedComplex::new(group, &self.field, terms, differentials)
    }

    pub fn inflate(&self, group: &ElemAbGroup, quotient_map: &Matrix) -> Result<BoundedComplex> {
        let terms = self
            .terms
            .iter()
            .map(|t| t.inflate(group, quotient_map))
            .collect::<Result<Vec<_>>>()?;
        BoundedComplex::new(group, &self.field, terms, self.differentials.clone())
    }

    /// Replaces each term by `new_terms[i]` via the isomorphism `bases[i]`
    /// (old coordinates to new), conjugating the differentials to match.
    pub fn change_basis(
        &self,
        new_terms: Vec<GModule>,
        bases: &[Matrix],
    ) -> Result<BoundedComplex> {
        if new_terms.len() != self.terms.len() || bases.len() != self.terms.len() {
            return Err(Error::InvalidComplex(
                "change_basis needs one basis per term".into(),
            ));
        }
        let inverses = bases
            .iter()
            .map(|b| {
                b.inverse()?
                    .ok_or_else(|| Error::Precondition("basis change is singular".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        for (i, ((b, inv), (old, new))) in bases
            .iter()
            .zip(&inverses)
            .zip(self.terms.iter().zip(&new_terms))
            .enumerate()
        {
            for (a_old, a_new) in old.action().iter().zip(new.action()) {
                if &b.mul(a_old)?.mul(inv)? != a_new {
                    return Err(Error::Precondition(format!(
                        "basis change {i} is not an isomorphism"
                    )));
                }
            }
        }
        let differentials = self
            .differentials
            .iter()
            .enumerate()
            .map(|(i, d)| bases[i + 1].mul(d)?.mul(&inverses[i]))
            .collect::<Result<Vec<_>>>()?;
        BoundedComplex::new(&self.group, &self.field, new_terms, differentials)
    }
}
