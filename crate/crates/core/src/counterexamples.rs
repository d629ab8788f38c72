//! Exact complexes that are not contractible: the periodicity complex of a
//! cyclic group, inflated and induced along an index-`p` pair `E ⊂ F`.

use crate::complexes::{is_contractible, BoundedComplex};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::gmod::{permutation_relabeling, GModule};
use crate::groups::{check_chain_condition, ElemAbGroup, Subgroup, SubgroupCollection};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub violating_pair: (Subgroup, Subgroup),
    pub complex: BoundedComplex,
    pub exact: bool,
    pub contractible: bool,
}

impl CounterexampleReport {
    pub fn is_certified(&self) -> bool {
        self.exact && !self.contractible
    }
}

/// `0 -> k -> kC_p -> kC_p -> k -> 0` with the norm, `g - 1` and the
/// augmentation as differentials.
pub fn periodicity_complex(p: u32, field: &Field) -> Result<BoundedComplex> {
    if field.p() != p {
        return Err(Error::FieldMismatch);
    }
    let g = ElemAbGroup::new(p, 1)?;
    let k = GModule::trivial(&g, field, 1)?;
    let kg = GModule::free(&g, field, 1)?;
    let n = p as usize;
    let norm = Matrix::from_fn(field, n, 1, |_, _| 1);
    let shift_minus_one = kg.action()[0].sub(&Matrix::identity(field, n))?;
    let augmentation = Matrix::from_fn(field, 1, n, |_, _| 1);
    BoundedComplex::new(
        &g,
        field,
        vec![k.clone(), kg.clone(), kg, k],
        vec![norm, shift_minus_one, augmentation],
    )
}

/// The functional on `F` (as an `rank F x 1` matrix over its basis rows) with
/// kernel `E`, taking the value 1 on the first basis row of `F` outside `E`.
fn quotient_functional(e: &Subgroup, f: &Subgroup) -> Result<Matrix> {
    let fp = f.group().prime_field();
    let complement = f
        .basis()
        .iter()
        .find(|v| !e.contains_vector(v))
        .ok_or_else(|| Error::Precondition("F does not strictly contain E".into()))?;
    let mut columns: Vec<Vec<u32>> = e.basis().to_vec();
    columns.push(complement.clone());
    let span = Matrix::from_rows_with_cols(fp, &columns, f.group().rank())?.transpose();
    let last = columns.len() - 1;
    let mut map = Matrix::zeros(fp, f.rank(), 1);
    for (i, row) in f.basis().iter().enumerate() {
        let coords = span
            .solve(&Matrix::column(fp, row))?
            .ok_or_else(|| Error::Internal("basis row of F outside E + complement".into()))?;
        map.set(i, 0, coords.get(last, 0));
    }
    Ok(map)
}

/// Inflates the periodicity complex from `F/E` to `F` and induces it to `G`,
/// giving `k[G/F] -> k[G/E] -> k[G/E] -> k[G/F]`, then certifies it with the
/// exactness check and the homotopy solver.
pub fn chain_pair_counterexample(
    e: &Subgroup,
    f: &Subgroup,
    field: &Field,
) -> Result<CounterexampleReport> {
    let g = e.group();
    if f.group() != g {
        return Err(Error::GroupMismatch);
    }
    if field.p() != g.p() {
        return Err(Error::FieldMismatch);
    }
    if f.index_of(e)? != Some(g.p() as u64) {
        return Err(Error::Precondition("expected E ⊂ F with [F:E] = p".into()));
    }
    let periodic = periodicity_complex(g.p(), field)?;
    let f_group = ElemAbGroup::new(g.p(), f.rank())?;
    let on_f = periodic.inflate(&f_group, &quotient_functional(e, f)?)?;
    let induced = on_f.induce(g, f.basis())?;

    let targets = [f, e, e, f];
    let mut new_terms = Vec::with_capacity(4);
    let mut bases = Vec::with_capacity(4);
    for (term, stabilizer) in induced.terms().iter().zip(targets) {
        bases.push(permutation_relabeling(term, stabilizer)?);
        new_terms.push(GModule::permutation(stabilizer, field)?);
    }
    let complex = induced.change_basis(new_terms, &bases)?;

    let violations = complex.validate();
    if let Some(v) = violations.first() {
        return Err(Error::Internal(format!(
            "constructed complex is invalid: {v}"
        )));
    }
    let exact = complex.is_exact().exact;
    let contractible = is_contractible(&complex)?.contractible;
    Ok(CounterexampleReport {
        violating_pair: (e.clone(), f.clone()),
        complex,
        exact,
        contractible,
    })
}

/// One certified counterexample per index-`p` pair in `h`; empty exactly
/// when `h` satisfies the chain condition.
pub fn necessity_report(
    h: &SubgroupCollection,
    field: &Field,
) -> Result<Vec<CounterexampleReport>> {
    let condition = check_chain_condition(h);
    let mut reports = Vec::with_capacity(condition.violations.len());
    for (e, f) in &condition.violations {
        let report = chain_pair_counterexample(e, f, field)?;
        if !report.is_certified() {
            return Err(Error::Internal(format!(
                "counterexample for pair {:?} ⊂ {:?} failed certification (exact {}, contractible {})",
                e.basis(),
                f.basis(),
                report.exact,
                report.contractible
            )));
        }
        reports.push(report);
    }
    Ok(reports)
}
