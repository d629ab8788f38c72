use std::fmt;

use crate::cohomology::poly::{
    format_form, normalize_form, proportional, restrict_class, restrict_form, LinearFormProduct,
};
use crate::error::{Error, Result};
use crate::exactla::{Field, FieldSpec, MAX_FIELD_ORDER};
use crate::groups::{ElemAbGroup, Subgroup, SubgroupCollection};

/// Largest projective space searched for linear forms.
const FORM_SEARCH_BOUND: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvoidancePair {
    pub u: LinearFormProduct,
    pub v: LinearFormProduct,
    pub field_used: FieldSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassName {
    U,
    V,
}

impl fmt::Display for ClassName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassName::U => "u",
            ClassName::V => "v",
        })
    }
}

/// Why a pair fails to be an avoidance pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AvoidanceWitness {
    /// The class has nonzero restriction to a subgroup where it must vanish.
    NonVanishing {
        class: ClassName,
        subgroup: Subgroup,
    },
    /// The class restricts to zero on a subgroup where it must be regular.
    ZeroRestriction {
        class: ClassName,
        subgroup: Subgroup,
    },
    /// Factors of `u` and `v` with proportional restrictions.
    CommonFactor {
        subgroup: Subgroup,
        u_factor: Vec<u32>,
        v_factor: Vec<u32>,
        restricted: Vec<u32>,
    },
}

impl AvoidanceWitness {
    fn describe(&self, field: &Field) -> String {
        match self {
            AvoidanceWitness::NonVanishing { class, subgroup } => {
                format!(
                    "{class} does not restrict to zero on {:?}",
                    subgroup.basis()
                )
            }
            AvoidanceWitness::ZeroRestriction { class, subgroup } => {
                format!("{class} restricts to zero on {:?}", subgroup.basis())
            }
            AvoidanceWitness::CommonFactor {
                subgroup,
                u_factor,
                v_factor,
                restricted,
            } => format!(
                "common factor {} on {:?} (from u factor {} and v factor {})",
                format_form(field, restricted),
                subgroup.basis(),
                format_form(field, u_factor),
                format_form(field, v_factor)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AvoidanceCheck {
    Ok,
    Failed {
        witness: AvoidanceWitness,
        message: String,
    },
}

impl AvoidanceCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, AvoidanceCheck::Ok)
    }
}

/// Checks that `u` and `v` restrict to zero on every member of `lower` and
/// restrict to a regular sequence on every member of `upper`.
pub fn verify_avoidance_pair(
    u: &LinearFormProduct,
    v: &LinearFormProduct,
    upper: &SubgroupCollection,
    lower: &SubgroupCollection,
) -> Result<AvoidanceCheck> {
    let group = upper.group();
    if lower.group() != group {
        return Err(Error::GroupMismatch);
    }
    if u.field != v.field {
        return Err(Error::FieldMismatch);
    }
    let field = &u.field;
    let fail = |witness: AvoidanceWitness| {
        let message = witness.describe(field);
        Ok(AvoidanceCheck::Failed { witness, message })
    };
    let classes = [
        (ClassName::U, u.expand(group)?),
        (ClassName::V, v.expand(group)?),
    ];
    for e in lower.iter() {
        for (name, class) in &classes {
            if !restrict_class(class, e)?.is_zero() {
                return fail(AvoidanceWitness::NonVanishing {
                    class: *name,
                    subgroup: e.clone(),
                });
            }
        }
    }
    for e in upper.iter() {
        let ru = u.restricted_factors(e);
        let rv = v.restricted_factors(e);
        for (name, restricted) in [(ClassName::U, &ru), (ClassName::V, &rv)] {
            if restricted.iter().any(|f| f.iter().all(|&c| c == 0)) {
                return fail(AvoidanceWitness::ZeroRestriction {
                    class: name,
                    subgroup: e.clone(),
                });
            }
        }
        for (i, a) in ru.iter().enumerate() {
            for (j, b) in rv.iter().enumerate() {
                if proportional(field, a, b) {
                    return fail(AvoidanceWitness::CommonFactor {
                        subgroup: e.clone(),
                        u_factor: u.factors[i].clone(),
                        v_factor: v.factors[j].clone(),
                        restricted: normalize_form(field, a).expect("nonzero"),
                    });
                }
            }
        }
    }
    Ok(AvoidanceCheck::Ok)
}

/// Normalized nonzero vectors of `F_q^r`, ordered by `Σ c_i q^i`.
fn projective_forms(field: &Field, r: usize) -> Result<Vec<Vec<u32>>> {
    let q = field.order() as u64;
    let total = q
        .checked_pow(r as u32)
        .filter(|&t| t <= FORM_SEARCH_BOUND)
        .ok_or_else(|| Error::EnumerationBound {
            order: q.saturating_pow(r as u32),
            bound: FORM_SEARCH_BOUND,
        })?;
    let mut out = Vec::new();
    for code in 1..total {
        let mut c = code;
        let v: Vec<u32> = (0..r)
            .map(|_| {
                let d = (c % q) as u32;
                c /= q;
                d
            })
            .collect();
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    Ok(out)
}

fn vanishes_on(field: &Field, form: &[u32], e: &Subgroup) -> bool {
    restrict_form(field, form, e).iter().all(|&c| c == 0)
}

fn check_inputs(upper: &SubgroupCollection, lower: &SubgroupCollection) -> Result<()> {
    if upper.group() != lower.group() {
        return Err(Error::GroupMismatch);
    }
    let first = upper
        .iter()
        .next()
        .ok_or_else(|| Error::Precondition("the upper collection is empty".into()))?;
    let s = first.rank();
    if let Some(e) = upper.iter().find(|e| e.rank() != s) {
        return Err(Error::Precondition(format!(
            "upper subgroups must share one rank; {:?} has rank {} but {:?} has rank {s}",
            e.basis(),
            e.rank(),
            first.basis()
        )));
    }
    if s < 2 {
        return Err(Error::Precondition(
            "upper subgroups have rank 1; no regular sequence of length two exists on the cohomology of a cyclic group"
                .into(),
        ));
    }
    let p = upper.group().p() as u64;
    for lo in lower.iter() {
        if lo.rank() >= s {
            return Err(Error::Precondition(format!(
                "lower subgroup {:?} has rank {} >= {s}",
                lo.basis(),
                lo.rank()
            )));
        }
        for up in upper.iter() {
            if up.index_of(lo)? == Some(p) {
                return Err(Error::Precondition(format!(
                    "lower subgroup {:?} has index p in upper subgroup {:?}; restrictions of forms vanishing on it are all proportional",
                    lo.basis(),
                    up.basis()
                )));
            }
        }
    }
    Ok(())
}

type Forms = Vec<Vec<u32>>;

fn search(
    field: &Field,
    upper: &SubgroupCollection,
    lower: &[&Subgroup],
) -> Result<Option<(Forms, Forms)>> {
    let r = upper.group().rank();
    let forms = projective_forms(field, r)?;
    let nonvanishing = |f: &Vec<u32>| upper.iter().all(|e| !vanishes_on(field, f, e));
    let avoids = |f: &Vec<u32>, chosen: &[Vec<u32>]| {
        upper.iter().all(|e| {
            let rf = restrict_form(field, f, e);
            chosen
                .iter()
                .all(|c| !proportional(field, &rf, &restrict_form(field, c, e)))
        })
    };
    if lower.is_empty() {
        let Some(u) = forms.iter().find(|f| nonvanishing(f)).cloned() else {
            return Ok(None);
        };
        let chosen = [u.clone()];
        let Some(v) = forms
            .iter()
            .find(|f| nonvanishing(f) && avoids(f, &chosen))
            .cloned()
        else {
            return Ok(None);
        };
        return Ok(Some((vec![u], vec![v])));
    }
    let mut us = Vec::with_capacity(lower.len());
    for lo in lower {
        match forms
            .iter()
            .find(|f| vanishes_on(field, f, lo) && nonvanishing(f))
        {
            Some(f) => us.push(f.clone()),
            None => return Ok(None),
        }
    }
    let mut vs = Vec::with_capacity(lower.len());
    for lo in lower {
        match forms
            .iter()
            .find(|f| vanishes_on(field, f, lo) && nonvanishing(f) && avoids(f, &us))
        {
            Some(f) => vs.push(f.clone()),
            None => return Ok(None),
        }
    }
    Ok(Some((us, vs)))
}

/// Products `u = Π λ_E`, `v = Π μ_E` over the nontrivial `E` in `lower`, with
/// `λ_E, μ_E` vanishing on `E` and restricting to coprime products on every
/// member of `upper`. The field grows one degree at a time until such forms
/// exist; the result is verified before it is returned.
pub fn find_avoidance_pair(
    upper: &SubgroupCollection,
    lower: &SubgroupCollection,
    field: &Field,
) -> Result<AvoidancePair> {
    check_inputs(upper, lower)?;
    if field.p() != upper.group().p() {
        return Err(Error::FieldMismatch);
    }
    let nontrivial: Vec<&Subgroup> = lower.iter().filter(|e| !e.is_trivial()).collect();
    let mut field = field.clone();
    loop {
        if let Some((us, vs)) = search(&field, upper, &nontrivial)? {
            let u = LinearFormProduct::new(&field, us)?;
            let v = LinearFormProduct::new(&field, vs)?;
            if let AvoidanceCheck::Failed { message, .. } =
                verify_avoidance_pair(&u, &v, upper, lower)?
            {
                return Err(Error::Internal(format!(
                    "constructed pair fails verification: {message}"
                )));
            }
            return Ok(AvoidancePair {
                u,
                v,
                field_used: field.spec().clone(),
            });
        }
        let next = field.e() + 1;
        if (field.p() as u64).pow(next) > MAX_FIELD_ORDER {
            return Err(Error::Internal(
                "no avoidance pair found below the maximal field size".into(),
            ));
        }
        field = Field::standard(field.p(), next)?;
    }
}

/// Upper and lower collections for randomized tests: a few rank `s` subgroups
/// and a few subgroups of smaller rank, none of index `p` in an upper one.
pub fn random_avoidance_instance(
    group: &ElemAbGroup,
    rng: &mut impl rand::Rng,
) -> Result<(SubgroupCollection, SubgroupCollection)> {
    use crate::groups::all_subgroups;
    use rand::seq::SliceRandom;
    let all = all_subgroups(group, None)?;
    let s = rng.gen_range(2..=group.rank());
    let candidates: Vec<Subgroup> = all.iter().filter(|e| e.rank() == s).cloned().collect();
    let count = rng.gen_range(1..=candidates.len().min(3));
    let mut upper: Vec<Subgroup> = candidates.choose_multiple(rng, count).cloned().collect();
    upper.sort_by(|a, b| a.basis().cmp(b.basis()));
    let p = group.p() as u64;
    let allowed: Vec<Subgroup> = all
        .iter()
        .filter(|e| e.rank() < s)
        .filter(|e| {
            upper
                .iter()
                .all(|up| up.index_of(e).expect("same group") != Some(p))
        })
        .cloned()
        .collect();
    let count = rng.gen_range(0..=allowed.len().min(3));
    let mut lower: Vec<Subgroup> = allowed.choose_multiple(rng, count).cloned().collect();
    lower.sort_by(|a, b| (a.rank(), a.basis()).cmp(&(b.rank(), b.basis())));
    Ok((
        SubgroupCollection::new(group, upper)?,
        SubgroupCollection::new(group, lower)?,
    ))
}
