use crate::complexes::{is_contractible, BoundedComplex, ContractibilityReport, ExactnessReport};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Subspace};
use crate::gmod::{EquivariantMap, GModule, SummandKind};
use crate::groups::{check_chain_condition, ChainCondition, Subgroup, SubgroupCollection};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermMembership {
    /// Tags are valid and every summand is `k[G/E]` for some `E` in the collection.
    Certified,
    /// Tags are valid, but this summand is not of the allowed form.
    Outside(SummandKind),
    /// No tags, or tags that do not match the action.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub terms: Vec<TermMembership>,
}

impl Membership {
    pub fn is_certified(&self) -> bool {
        self.terms.iter().all(|t| *t == TermMembership::Certified)
    }

    pub fn is_unknown(&self) -> bool {
        self.terms.contains(&TermMembership::Unknown)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// All hypotheses hold and the complex is contractible.
    TheoremConfirmed,
    /// Some hypothesis fails, so the theorem makes no claim.
    HypothesisVoid,
    /// Membership could not be certified.
    Inconclusive,
    /// All hypotheses hold but no homotopy exists.
    TheoremViolationCandidate,
}

impl Verdict {
    pub fn is_consistent(self) -> bool {
        matches!(self, Verdict::TheoremConfirmed | Verdict::HypothesisVoid)
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::TheoremConfirmed | Verdict::HypothesisVoid => "CONSISTENT-WITH-THEOREM",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::TheoremViolationCandidate => "THEOREM-VIOLATION-CANDIDATE",
        }
    }

    pub fn reason(self) -> &'static str {
        match self {
            Verdict::TheoremConfirmed => "theorem-confirmed",
            Verdict::HypothesisVoid => "hypothesis-void",
            Verdict::Inconclusive => "membership-unknown",
            Verdict::TheoremViolationCandidate => "exact-but-not-contractible",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem31Report {
    pub membership: Membership,
    pub condition: ChainCondition,
    pub exactness: ExactnessReport,
    pub contractibility: ContractibilityReport,
    pub verdict: Verdict,
}

fn term_membership(term: &GModule, h: &SubgroupCollection) -> TermMembership {
    let Some(tags) = term.tags() else {
        return if term.dim() == 0 {
            TermMembership::Certified
        } else {
            TermMembership::Unknown
        };
    };
    if term.validate_tags().is_err() {
        return TermMembership::Unknown;
    }
    for t in tags.iter().filter(|t| t.multiplicity > 0) {
        if !h.contains(&t.kind.stabilizer(term.group())) {
            return TermMembership::Outside(t.kind.clone());
        }
    }
    TermMembership::Certified
}

/// Runs every check of the chain-condition theorem on `c` and classifies the
/// outcome.
pub fn check_theorem31(h: &SubgroupCollection, c: &BoundedComplex) -> Result<Theorem31Report> {
    if h.group() != c.group() {
        return Err(Error::GroupMismatch);
    }
    let violations = c.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidComplex(violations[0].to_string()));
    }
    let membership = Membership {
        terms: c.terms().iter().map(|t| term_membership(t, h)).collect(),
    };
    let condition = check_chain_condition(h);
    let exactness = c.is_exact();
    let contractibility = is_contractible(c)?;
    let verdict = if membership.is_unknown() {
        Verdict::Inconclusive
    } else if condition.ok && membership.is_certified() && exactness.exact {
        if contractibility.contractible {
            Verdict::TheoremConfirmed
        } else {
            Verdict::TheoremViolationCandidate
        }
    } else {
        Verdict::HypothesisVoid
    };
    Ok(Theorem31Report {
        membership,
        condition,
        exactness,
        contractibility,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCertificate {
    /// `G`-equivariant `psi : C^l -> C^{l-1}` with `d^{l-1} psi = 1`.
    pub psi: EquivariantMap,
    /// The `E`-equivariant splitting taken from the restricted homotopy.
    pub theta: Matrix,
    /// The free-summand part of `theta(C^l)` lies in the `E`-fixed points of
    /// the free part, and those lie in its radical.
    pub fixed_points_in_radical: bool,
}

fn coordinates_of(term: &GModule, kind: &SummandKind) -> Vec<usize> {
    term.tags()
        .unwrap_or(&[])
        .iter()
        .filter(|t| &t.kind == kind)
        .flat_map(|t| t.start..t.end)
        .collect()
}

/// Splits the last differential of an exact complex of trivial and free
/// modules using only a rank two subgroup `e`: take the `E`-equivariant
/// splitting `theta` from a homotopy of the restriction, then keep only its
/// component in the trivial summands of `C^{l-1}`.
pub fn split_via_rank_two_subgroup(c: &BoundedComplex, e: &Subgroup) -> Result<SplitCertificate> {
    let g = c.group();
    let field = c.field();
    if e.group() != g {
        return Err(Error::GroupMismatch);
    }
    if e.rank() != 2 {
        return Err(Error::Precondition(format!(
            "subgroup has rank {}, expected 2",
            e.rank()
        )));
    }
    let l = match c.length() {
        Some(l) if l >= 1 => l,
        _ => {
            return Err(Error::Precondition(
                "complex needs at least two terms".into(),
            ))
        }
    };
    let violations = c.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidComplex(violations[0].to_string()));
    }
    for (i, t) in c.terms().iter().enumerate() {
        let tags = t
            .tags()
            .ok_or_else(|| Error::Precondition(format!("term {i} has no decomposition tags")))?;
        t.validate_tags()
            .map_err(|err| Error::Precondition(format!("term {i}: {err}")))?;
        if tags
            .iter()
            .any(|tag| !matches!(tag.kind, SummandKind::Trivial | SummandKind::Free))
        {
            return Err(Error::Precondition(format!(
                "term {i} is not a sum of trivial and free modules"
            )));
        }
    }
    let last = &c.terms()[l];
    if last
        .tags()
        .unwrap()
        .iter()
        .any(|t| t.kind != SummandKind::Trivial && t.multiplicity > 0)
    {
        return Err(Error::Precondition(
            "terminal term must be a sum of trivial modules".into(),
        ));
    }

    let restricted = c.restrict(e)?;
    let report = is_contractible(&restricted)?;
    let homotopy = report.certificate.ok_or_else(|| {
        Error::Precondition("the restriction to the subgroup is not contractible".into())
    })?;
    let theta = homotopy.maps[l - 1].clone();
    let d = &c.differentials()[l - 1];

    let prev = &c.terms()[l - 1];
    let trivial_coords = coordinates_of(prev, &SummandKind::Trivial);
    let free_coords = coordinates_of(prev, &SummandKind::Free);
    let keep = |coords: &[usize]| {
        let mut m = theta.clone();
        for row in 0..m.rows() {
            if !coords.contains(&row) {
                for col in 0..m.cols() {
                    m.set(row, col, 0);
                }
            }
        }
        m
    };
    let psi = keep(&trivial_coords);
    let free_part = keep(&free_coords);

    // the free component of theta(C^l): E-fixed, hence in the radical, hence killed by d
    let free_module = GModule::free(g, field, free_coords.len() / g.order() as usize)?;
    let fixed = free_module.restrict(e)?.fixed_points()?;
    let radical = Subspace::from_rows(&free_module.radical()?);
    let fixed_space = Subspace::from_rows(&fixed);
    let image_in_fixed = (0..free_part.cols()).all(|col| {
        let v: Vec<u32> = free_coords.iter().map(|&r| free_part.get(r, col)).collect();
        fixed_space.contains(&v)
    });
    let fixed_in_radical = radical.contains_subspace(&fixed_space);
    if !image_in_fixed || !fixed_in_radical {
        return Err(Error::Internal(format!(
            "free component check failed (image in fixed points: {image_in_fixed}, fixed points in radical: {fixed_in_radical})"
        )));
    }
    if !d.mul(&free_part)?.is_zero() {
        return Err(Error::Internal(
            "free component of theta is not killed by the differential".into(),
        ));
    }
    if !d.mul(&psi)?.is_identity() {
        return Err(Error::Internal(
            "psi does not split the last differential".into(),
        ));
    }
    let psi = EquivariantMap::new(last, prev, psi)?;
    Ok(SplitCertificate {
        psi,
        theta,
        fixed_points_in_radical: fixed_in_radical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::groups::ElemAbGroup;

    #[test]
    fn identity_on_trivial_splits_with_identity() {
        let g = ElemAbGroup::new(2, 2).unwrap();
        let f = Field::prime(2).unwrap();
        let c = BoundedComplex::identity_on(&GModule::trivial(&g, &f, 1).unwrap());
        let cert = split_via_rank_two_subgroup(&c, &g.whole()).unwrap();
        assert!(cert.psi.matrix.is_identity());
    }

    #[test]
    fn free_terminal_term_is_rejected() {
        let g = ElemAbGroup::new(2, 2).unwrap();
        let f = Field::prime(2).unwrap();
        let c = BoundedComplex::identity_on(&GModule::free(&g, &f, 1).unwrap());
        let err = split_via_rank_two_subgroup(&c, &g.whole()).unwrap_err();
        assert!(err
            .to_string()
            .contains("terminal term must be a sum of trivial modules"));
    }
}
