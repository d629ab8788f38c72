//! JSON wire formats.
//!
//! Field elements are written as integers over a prime field and as
//! coefficient vectors (constant term first) over an extension; both forms
//! are accepted on input. Every `*Json` type converts to and from the
//! in-memory value it mirrors.

use serde::{Deserialize, Serialize};

use crate::cohomology::{AvoidancePair, LinearFormProduct, PolyClass};
use crate::complexes::{BoundedComplex, Homotopy, TermMembership, Theorem31Report};
use crate::counterexamples::CounterexampleReport;
use crate::error::{Error, Result};
use crate::exactla::{Field, FieldSpec, Matrix};
use crate::gmod::{GModule, SummandKind, Tag};
use crate::groups::{ChainCondition, ElemAbGroup, Subgroup, SubgroupCollection};

fn context<T>(path: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{path}.{m}")),
        other => Error::Parse(format!("{path}: {other}")),
    })
}

/// Parses `text` as `T`, reporting line and column on failure.
pub fn from_str<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_string_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("wire types always serialize")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Integer(u32),
    Coefficients(Vec<u32>),
}

impl ScalarJson {
    pub fn from_code(field: &Field, code: u32) -> Self {
        if field.e() == 1 {
            ScalarJson::Integer(code)
        } else {
            ScalarJson::Coefficients(field.coefficients(code))
        }
    }

    pub fn to_code(&self, field: &Field) -> Result<u32> {
        match self {
            ScalarJson::Integer(c) if field.is_valid(*c) => Ok(*c),
            ScalarJson::Integer(c) => Err(Error::InvalidField(format!(
                "{c} is not an element of F_{}",
                field.order()
            ))),
            ScalarJson::Coefficients(cs) => field.from_coefficients(cs),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<ScalarJson>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &Matrix) -> Self {
        let f = m.field();
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows())
                .map(|i| {
                    m.row(i)
                        .iter()
                        .map(|&c| ScalarJson::from_code(f, c))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_matrix(&self, field: &Field) -> Result<Matrix> {
        if self.entries.len() != self.rows {
            return Err(Error::Parse(format!(
                "entries: {} rows, expected {}",
                self.entries.len(),
                self.rows
            )));
        }
        let mut m = Matrix::zeros(field, self.rows, self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.cols {
                return Err(Error::Parse(format!(
                    "entries[{i}]: {} columns, expected {}",
                    row.len(),
                    self.cols
                )));
            }
            for (j, s) in row.iter().enumerate() {
                m.set(
                    i,
                    j,
                    context(&format!("entries[{i}][{j}]"), s.to_code(field))?,
                );
            }
        }
        Ok(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupJson {
    pub p: u32,
    pub r: usize,
    pub basis: Vec<Vec<u32>>,
}

impl SubgroupJson {
    pub fn from_subgroup(s: &Subgroup) -> Self {
        SubgroupJson {
            p: s.group().p(),
            r: s.group().rank(),
            basis: s.basis().to_vec(),
        }
    }

    /// Parses against `group` when given, otherwise against `C_p^r` from the
    /// record itself.
    pub fn to_subgroup(&self, group: Option<&ElemAbGroup>) -> Result<Subgroup> {
        let g = match group {
            Some(g) if g.p() != self.p || g.rank() != self.r => {
                return Err(Error::Parse(format!(
                    "subgroup of C_{}^{} given for C_{}^{}",
                    self.p,
                    self.r,
                    g.p(),
                    g.rank()
                )))
            }
            Some(g) => g.clone(),
            None => ElemAbGroup::new(self.p, self.r)?,
        };
        let s = Subgroup::from_generators(&g, &self.basis)?;
        if s.rank() != self.basis.len() {
            return Err(Error::Parse(
                "basis: generators are linearly dependent".into(),
            ));
        }
        Ok(s)
    }
}

pub fn collection_to_json(h: &SubgroupCollection) -> Vec<SubgroupJson> {
    h.iter().map(SubgroupJson::from_subgroup).collect()
}

pub fn collection_from_json(
    group: &ElemAbGroup,
    items: &[SubgroupJson],
) -> Result<SubgroupCollection> {
    let members = items
        .iter()
        .enumerate()
        .map(|(i, s)| context(&format!("[{i}]"), s.to_subgroup(Some(group))))
        .collect::<Result<Vec<_>>>()?;
    SubgroupCollection::new(group, members)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TagJson {
    /// `trivial`, `free` or `permutation`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<Vec<u32>>>,
    pub multiplicity: usize,
    pub start: usize,
    pub end: usize,
}

impl TagJson {
    fn from_tag(t: &Tag) -> Self {
        let (kind, subgroup) = match &t.kind {
            SummandKind::Trivial => ("trivial", None),
            SummandKind::Free => ("free", None),
            SummandKind::Permutation(e) => ("permutation", Some(e.basis().to_vec())),
        };
        TagJson {
            kind: kind.into(),
            subgroup,
            multiplicity: t.multiplicity,
            start: t.start,
            end: t.end,
        }
    }

    fn to_tag(&self, group: &ElemAbGroup) -> Result<Tag> {
        let kind = match (self.kind.as_str(), &self.subgroup) {
            ("trivial", None) => SummandKind::Trivial,
            ("free", None) => SummandKind::Free,
            ("permutation", Some(basis)) => {
                SummandKind::for_subgroup(&Subgroup::from_generators(group, basis)?)
            }
            ("trivial" | "free", Some(_)) => {
                return Err(Error::Parse(
                    "subgroup: only allowed for permutation tags".into(),
                ))
            }
            ("permutation", None) => {
                return Err(Error::Parse(
                    "subgroup: missing for a permutation tag".into(),
                ))
            }
            (other, _) => {
                return Err(Error::Parse(format!(
                    "kind: unknown summand kind {other:?}"
                )))
            }
        };
        Ok(Tag {
            kind,
            multiplicity: self.multiplicity,
            start: self.start,
            end: self.end,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GModuleJson {
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
    pub r: usize,
    pub dim: usize,
    pub action: Vec<MatrixJson>,
    #[serde(default)]
    pub tags: Option<Vec<TagJson>>,
}

impl GModuleJson {
    pub fn from_module(m: &GModule) -> Self {
        let spec = m.field().spec();
        GModuleJson {
            p: spec.p,
            e: spec.e,
            modulus: spec.modulus.clone(),
            r: m.group().rank(),
            dim: m.dim(),
            action: m.action().iter().map(MatrixJson::from_matrix).collect(),
            tags: m
                .tags()
                .map(|ts| ts.iter().map(TagJson::from_tag).collect()),
        }
    }

    pub fn field(&self) -> Result<Field> {
        Field::new(FieldSpec::new(self.p, self.e, self.modulus.clone())?)
    }

    pub fn to_module(&self) -> Result<GModule> {
        let field = self.field()?;
        let group = ElemAbGroup::new(self.p, self.r)?;
        self.to_module_in(&group, &field)
    }

    fn to_module_in(&self, group: &ElemAbGroup, field: &Field) -> Result<GModule> {
        if self.p != group.p() || self.r != group.rank() {
            return Err(Error::Parse(format!(
                "module for C_{}^{} given for C_{}^{}",
                self.p,
                self.r,
                group.p(),
                group.rank()
            )));
        }
        if &self.field()? != field {
            return Err(Error::Parse(
                "field differs from the rest of the input".into(),
            ));
        }
        let action = self
            .action
            .iter()
            .enumerate()
            .map(|(i, a)| context(&format!("action[{i}]"), a.to_matrix(field)))
            .collect::<Result<Vec<_>>>()?;
        let tags = match &self.tags {
            Some(ts) => Some(
                ts.iter()
                    .enumerate()
                    .map(|(i, t)| context(&format!("tags[{i}]"), t.to_tag(group)))
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        GModule::new(group, field, self.dim, action, tags)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub modules: Vec<GModuleJson>,
    pub differentials: Vec<MatrixJson>,
}

impl ComplexJson {
    pub fn from_complex(c: &BoundedComplex) -> Self {
        ComplexJson {
            modules: c.terms().iter().map(GModuleJson::from_module).collect(),
            differentials: c
                .differentials()
                .iter()
                .map(MatrixJson::from_matrix)
                .collect(),
        }
    }

    /// Builds the complex; an empty module list needs `group` and `field`.
    pub fn to_complex(
        &self,
        group: Option<&ElemAbGroup>,
        field: Option<&Field>,
    ) -> Result<BoundedComplex> {
        let (group, field) = match self.modules.first() {
            Some(m) => (
                group
                    .cloned()
                    .map_or_else(|| ElemAbGroup::new(m.p, m.r), Ok)?,
                field
                    .cloned()
                    .map_or_else(|| context("modules[0]", m.field()), Ok)?,
            ),
            None => match (group, field) {
                (Some(g), Some(f)) => (g.clone(), f.clone()),
                _ => {
                    return Err(Error::Parse(
                        "modules: empty complex without a group and field".into(),
                    ))
                }
            },
        };
        let terms = self
            .modules
            .iter()
            .enumerate()
            .map(|(i, m)| context(&format!("modules[{i}]"), m.to_module_in(&group, &field)))
            .collect::<Result<Vec<_>>>()?;
        let differentials = self
            .differentials
            .iter()
            .enumerate()
            .map(|(i, d)| context(&format!("differentials[{i}]"), d.to_matrix(&field)))
            .collect::<Result<Vec<_>>>()?;
        BoundedComplex::new(&group, &field, terms, differentials)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionJson {
    pub ok: bool,
    pub violations: Vec<[SubgroupJson; 2]>,
}

impl ConditionJson {
    pub fn from_condition(c: &ChainCondition) -> Self {
        ConditionJson {
            ok: c.ok,
            violations: c
                .violations
                .iter()
                .map(|(e, f)| {
                    [
                        SubgroupJson::from_subgroup(e),
                        SubgroupJson::from_subgroup(f),
                    ]
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    /// Per term: `certified`, `unknown`, or `outside:<kind>`.
    pub membership: Vec<String>,
    pub condition: ConditionJson,
    pub exact: bool,
    pub homology_dims: Vec<usize>,
    pub contractible: bool,
    pub verdict: String,
    pub reason: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<MatrixJson>>,
}

fn kind_label(kind: &SummandKind) -> String {
    match kind {
        SummandKind::Trivial => "trivial".into(),
        SummandKind::Free => "free".into(),
        SummandKind::Permutation(e) => format!("permutation{:?}", e.basis()),
    }
}

impl ReportJson {
    pub fn from_report(r: &Theorem31Report) -> Self {
        ReportJson {
            membership: r
                .membership
                .terms
                .iter()
                .map(|t| match t {
                    TermMembership::Certified => "certified".into(),
                    TermMembership::Unknown => "unknown".into(),
                    TermMembership::Outside(k) => format!("outside:{}", kind_label(k)),
                })
                .collect(),
            condition: ConditionJson::from_condition(&r.condition),
            exact: r.exactness.exact,
            homology_dims: r.exactness.homology_dims.clone(),
            contractible: r.contractibility.contractible,
            verdict: r.verdict.label().into(),
            reason: r.verdict.reason().into(),
            certificate: r.contractibility.certificate.as_ref().map(homotopy_to_json),
        }
    }
}

pub fn homotopy_to_json(h: &Homotopy) -> Vec<MatrixJson> {
    h.maps.iter().map(MatrixJson::from_matrix).collect()
}

pub fn homotopy_from_json(field: &Field, maps: &[MatrixJson]) -> Result<Homotopy> {
    let maps = maps
        .iter()
        .enumerate()
        .map(|(i, m)| context(&format!("certificate[{i}]"), m.to_matrix(field)))
        .collect::<Result<_>>()?;
    Ok(Homotopy { maps })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleJson {
    pub pair: [SubgroupJson; 2],
    pub complex: ComplexJson,
    pub exact: bool,
    pub contractible: bool,
}

impl CounterexampleJson {
    pub fn from_report(r: &CounterexampleReport) -> Self {
        let (e, f) = &r.violating_pair;
        CounterexampleJson {
            pair: [
                SubgroupJson::from_subgroup(e),
                SubgroupJson::from_subgroup(f),
            ],
            complex: ComplexJson::from_complex(&r.complex),
            exact: r.exact,
            contractible: r.contractible,
        }
    }

    pub fn to_report(&self) -> Result<CounterexampleReport> {
        let complex = context("complex", self.complex.to_complex(None, None))?;
        let g = complex.group().clone();
        Ok(CounterexampleReport {
            violating_pair: (
                context("pair[0]", self.pair[0].to_subgroup(Some(&g)))?,
                context("pair[1]", self.pair[1].to_subgroup(Some(&g)))?,
            ),
            complex,
            exact: self.exact,
            contractible: self.contractible,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialJson {
    pub coeff: ScalarJson,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyClassJson {
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
    pub r: usize,
    pub generator_degree: usize,
    /// Cohomological degree; needed to type the zero class.
    pub degree: usize,
    pub terms: Vec<MonomialJson>,
}

impl PolyClassJson {
    pub fn from_class(c: &PolyClass) -> Self {
        let spec = c.field().spec();
        PolyClassJson {
            p: spec.p,
            e: spec.e,
            modulus: spec.modulus.clone(),
            r: c.group().rank(),
            generator_degree: c.generator_degree(),
            degree: c.degree(),
            terms: c
                .terms()
                .map(|(exps, coeff)| MonomialJson {
                    coeff: ScalarJson::from_code(c.field(), coeff),
                    exponents: exps.to_vec(),
                })
                .collect(),
        }
    }

    pub fn to_class(&self) -> Result<PolyClass> {
        let field = Field::new(FieldSpec::new(self.p, self.e, self.modulus.clone())?)?;
        let group = ElemAbGroup::new(self.p, self.r)?;
        let gen_degree = if self.p == 2 { 1 } else { 2 };
        if self.generator_degree != gen_degree {
            return Err(Error::Parse(format!(
                "generator_degree: expected {gen_degree} for p = {}",
                self.p
            )));
        }
        if !self.degree.is_multiple_of(gen_degree) {
            return Err(Error::Parse(format!(
                "degree: {} is not a multiple of {gen_degree}",
                self.degree
            )));
        }
        let terms = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                Ok((
                    context(&format!("terms[{i}].coeff"), t.coeff.to_code(&field))?,
                    t.exponents.clone(),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        PolyClass::from_terms(&group, &field, self.degree / gen_degree, &terms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormProductJson {
    pub factors: Vec<Vec<ScalarJson>>,
}

impl FormProductJson {
    pub fn from_product(u: &LinearFormProduct) -> Self {
        FormProductJson {
            factors: u
                .factors
                .iter()
                .map(|f| {
                    f.iter()
                        .map(|&c| ScalarJson::from_code(&u.field, c))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_product(&self, field: &Field) -> Result<LinearFormProduct> {
        let factors = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, f)| {
                f.iter()
                    .enumerate()
                    .map(|(j, s)| context(&format!("factors[{i}][{j}]"), s.to_code(field)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        LinearFormProduct::new(field, factors)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoidanceJson {
    pub u: FormProductJson,
    pub v: FormProductJson,
    pub field_used: FieldSpec,
}

impl AvoidanceJson {
    pub fn from_pair(pair: &AvoidancePair) -> Self {
        AvoidanceJson {
            u: FormProductJson::from_product(&pair.u),
            v: FormProductJson::from_product(&pair.v),
            field_used: pair.field_used.clone(),
        }
    }

    pub fn to_pair(&self) -> Result<AvoidancePair> {
        let field = Field::new(self.field_used.clone())?;
        Ok(AvoidancePair {
            u: context("u", self.u.to_product(&field))?,
            v: context("v", self.v.to_product(&field))?,
            field_used: self.field_used.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counterexamples::chain_pair_counterexample;

    #[test]
    fn extension_scalars_are_coefficient_vectors() {
        let f = Field::standard(2, 2).unwrap();
        let m = Matrix::from_rows(&f, &[vec![0, 3]]).unwrap();
        let j = MatrixJson::from_matrix(&m);
        assert_eq!(j.entries[0][1], ScalarJson::Coefficients(vec![1, 1]));
        assert_eq!(j.to_matrix(&f).unwrap(), m);
        let text = to_string_pretty(&j);
        assert_eq!(from_str::<MatrixJson>(&text).unwrap(), j);
    }

    #[test]
    fn counterexample_round_trip() {
        let g = ElemAbGroup::new(2, 2).unwrap();
        let f = Field::prime(2).unwrap();
        let l = Subgroup::from_generators(&g, &[vec![1, 0]]).unwrap();
        let r = chain_pair_counterexample(&l, &g.whole(), &f).unwrap();
        let j = CounterexampleJson::from_report(&r);
        let back: CounterexampleJson = from_str(&to_string_pretty(&j)).unwrap();
        assert_eq!(back.to_report().unwrap(), r);
    }

    #[test]
    fn parse_errors_name_the_field() {
        let text = r#"{"p":2,"e":1,"modulus":[0,1],"r":1,"dim":2,"action":[{"rows":2,"cols":2,"entries":[[0,1],[1,7]]}],"tags":null}"#;
        let j: GModuleJson = from_str(text).unwrap();
        let err = j.to_module().unwrap_err().to_string();
        assert!(err.contains("action[0].entries[1][1]"), "{err}");
        assert!(from_str::<GModuleJson>("{\"p\": 2,")
            .unwrap_err()
            .to_string()
            .contains("line 1"));
    }
}
