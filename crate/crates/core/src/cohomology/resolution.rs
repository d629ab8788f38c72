//! Minimal free resolutions over `kG` and cohomology dimensions read off
//! `Hom_kG(P_•, M)`.
//!
//! A free module `kG^b` uses the basis `e_{t,g}` at index `t |G| + index(g)`,
//! with `G` acting by translation on the second coordinate.

use crate::complexes::BoundedComplex;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Subspace};
use crate::gmod::GModule;
use crate::groups::ElemAbGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionSlice {
    pub group: ElemAbGroup,
    pub field: Field,
    /// `b_0, ..., b_J`.
    pub ranks: Vec<usize>,
    /// `P_0 -> M`.
    pub augmentation: Matrix,
    /// `differentials[j - 1] : P_j -> P_{j-1}`.
    pub differentials: Vec<Matrix>,
}

/// Translation table `sum[g][h] = index(g + h)`.
fn addition_table(group: &ElemAbGroup) -> Vec<Vec<usize>> {
    let elems: Vec<Vec<u32>> = group.elements().collect();
    elems
        .iter()
        .map(|g| {
            elems
                .iter()
                .map(|h| group.element_index(&group.add(g, h)) as usize)
                .collect()
        })
        .collect()
}

enum Ambient {
    Module(Vec<Matrix>),
    Free { sum: Vec<Vec<usize>> },
}

impl Ambient {
    fn act(&self, g: usize, v: &[u32]) -> Result<Vec<u32>> {
        match self {
            Ambient::Module(actions) => actions[g].apply(v),
            Ambient::Free { sum } => {
                let n = sum.len();
                let mut out = vec![0; v.len()];
                for (i, &x) in v.iter().enumerate() {
                    if x != 0 {
                        let (t, h) = (i / n, i % n);
                        out[t * n + sum[g][h]] = x;
                    }
                }
                Ok(out)
            }
        }
    }
}

/// Vectors of `basis` that span it modulo its radical, taken greedily in order.
fn minimal_generators(
    field: &Field,
    group: &ElemAbGroup,
    ambient: &Ambient,
    dim: usize,
    basis: &[Vec<u32>],
) -> Result<Vec<Vec<u32>>> {
    let mut span = Subspace::new(field, dim);
    for i in 0..group.rank() {
        let g = group.element_index(&group.basis_vector(i)) as usize;
        for v in basis {
            let moved = ambient.act(g, v)?;
            let diff: Vec<u32> = moved
                .iter()
                .zip(v)
                .map(|(&a, &b)| field.sub(a, b))
                .collect();
            span.insert(&diff);
        }
    }
    Ok(basis.iter().filter(|v| span.insert(v)).cloned().collect())
}

/// Minimal free resolution `P_J -> ... -> P_0 -> M` by repeated minimal
/// covers of kernels.
pub fn minimal_free_resolution(m: &GModule, top: usize) -> Result<ResolutionSlice> {
    let group = m.group();
    let field = m.field();
    let n = group.order() as usize;
    let sum = addition_table(group);
    let actions = group
        .elements()
        .map(|g| m.element_action(&g))
        .collect::<Result<Vec<_>>>()?;
    let mut ambient = Ambient::Module(actions);
    let mut dim = m.dim();
    let mut kernel: Vec<Vec<u32>> = Matrix::identity(field, dim).to_rows();
    let mut ranks = Vec::with_capacity(top + 1);
    let mut augmentation = None;
    let mut differentials = Vec::with_capacity(top);
    for j in 0..=top {
        let gens = minimal_generators(field, group, &ambient, dim, &kernel)?;
        let b = gens.len();
        let mut cover = Matrix::zeros(field, dim, b * n);
        for (t, gen) in gens.iter().enumerate() {
            for g in 0..n {
                for (row, &x) in ambient.act(g, gen)?.iter().enumerate() {
                    cover.set(row, t * n + g, x);
                }
            }
        }
        ranks.push(b);
        if j < top {
            kernel = cover.kernel_basis().to_rows();
        }
        if j == 0 {
            augmentation = Some(cover);
        } else {
            differentials.push(cover);
        }
        ambient = Ambient::Free { sum: sum.clone() };
        dim = b * n;
    }
    Ok(ResolutionSlice {
        group: group.clone(),
        field: field.clone(),
        ranks,
        augmentation: augmentation.expect("at least one step"),
        differentials,
    })
}

impl ResolutionSlice {
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Consecutive maps compose to zero and the augmentation is onto.
    pub fn is_complex(&self) -> Result<bool> {
        if self.augmentation.rank() != self.augmentation.rows() {
            return Ok(false);
        }
        let mut prev = &self.augmentation;
        for d in &self.differentials {
            if !prev.mul(d)?.is_zero() {
                return Ok(false);
            }
            prev = d;
        }
        Ok(true)
    }

    /// Every differential lands in the radical: each column has zero
    /// augmentation in every free summand.
    pub fn is_minimal(&self) -> bool {
        let n = self.group.order() as usize;
        let f = &self.field;
        self.differentials.iter().all(|d| {
            (0..d.cols()).all(|c| {
                (0..d.rows() / n)
                    .all(|t| (0..n).fold(0, |acc, g| f.add(acc, d.get(t * n + g, c))) == 0)
            })
        })
    }

    /// `Hom(P_j, M) -> Hom(P_{j+1}, M)` on `M^{b_j} -> M^{b_{j+1}}`.
    fn coboundary(&self, m: &GModule, actions: &[Matrix], j: usize) -> Result<Matrix> {
        let n = self.group.order() as usize;
        let d = &self.differentials[j];
        let (bj, bnext) = (self.ranks[j], self.ranks[j + 1]);
        let dim = m.dim();
        let mut out = Matrix::zeros(&self.field, bnext * dim, bj * dim);
        for s in 0..bnext {
            for t in 0..bj {
                let mut block = Matrix::zeros(&self.field, dim, dim);
                for (g, a) in actions.iter().enumerate() {
                    let c = d.get(t * n + g, s * n);
                    if c != 0 {
                        block.add_scaled(c, a)?;
                    }
                }
                out.set_block(s * dim, t * dim, &block);
            }
        }
        Ok(out)
    }

    /// `dim H^j(G, M)` for `j` up to one less than the resolution length.
    pub fn cohomology_dims(&self, m: &GModule) -> Result<Vec<usize>> {
        if m.group() != &self.group {
            return Err(Error::GroupMismatch);
        }
        if m.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let actions = self
            .group
            .elements()
            .map(|g| m.element_action(&g))
            .collect::<Result<Vec<_>>>()?;
        let top = self.differentials.len();
        let mut ranks = Vec::with_capacity(top);
        for j in 0..top {
            ranks.push(self.coboundary(m, &actions, j)?.rank());
        }
        Ok((0..top)
            .map(|j| {
                let cochains = self.ranks[j] * m.dim();
                let incoming = if j == 0 { 0 } else { ranks[j - 1] };
                cochains - ranks[j] - incoming
            })
            .collect())
    }
}

/// Resolution of the trivial module deep enough for degrees `0..=top`.
pub fn trivial_resolution(
    group: &ElemAbGroup,
    field: &Field,
    top: usize,
) -> Result<ResolutionSlice> {
    minimal_free_resolution(&GModule::trivial(group, field, 1)?, top + 1)
}

/// `dim H^j(G, M)` for `0 <= j <= top`.
pub fn cohomology_dims(m: &GModule, top: usize) -> Result<Vec<usize>> {
    trivial_resolution(m.group(), m.field(), top)?.cohomology_dims(m)
}

/// `table[j][i] = dim H^j(G, C^i)` for `0 <= j <= top`.
pub fn e1_dimension_table(c: &BoundedComplex, top: usize) -> Result<Vec<Vec<usize>>> {
    if let Some(v) = c.validate().first() {
        return Err(Error::InvalidComplex(v.to_string()));
    }
    let res = trivial_resolution(c.group(), c.field(), top)?;
    let columns = c
        .terms()
        .iter()
        .map(|t| res.cohomology_dims(t))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..=top)
        .map(|j| columns.iter().map(|col| col[j]).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counterexamples::periodicity_complex;
    use crate::groups::Subgroup;

    fn setup(p: u32, r: usize) -> (ElemAbGroup, Field) {
        (ElemAbGroup::new(p, r).unwrap(), Field::prime(p).unwrap())
    }

    #[test]
    fn betti_numbers_of_trivial_module() {
        for (p, r) in [(2, 2), (3, 2)] {
            let (g, f) = setup(p, r);
            let res = minimal_free_resolution(&GModule::trivial(&g, &f, 1).unwrap(), 5).unwrap();
            assert_eq!(res.ranks, vec![1, 2, 3, 4, 5, 6]);
            assert!(res.is_minimal());
            assert!(res.is_complex().unwrap());
        }
    }

    #[test]
    fn free_module_is_projective() {
        let (g, f) = setup(2, 2);
        let kg = GModule::free(&g, &f, 1).unwrap();
        assert_eq!(
            minimal_free_resolution(&kg, 3).unwrap().ranks,
            vec![1, 0, 0, 0]
        );
        assert_eq!(cohomology_dims(&kg, 3).unwrap(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn trivial_cohomology_and_shapiro() {
        let (g, f) = setup(2, 2);
        assert_eq!(
            cohomology_dims(&GModule::trivial(&g, &f, 1).unwrap(), 5).unwrap(),
            vec![1, 2, 3, 4, 5, 6]
        );
        let line = Subgroup::from_generators(&g, &[vec![1, 1]]).unwrap();
        let m = GModule::permutation(&line, &f).unwrap();
        assert_eq!(cohomology_dims(&m, 4).unwrap(), vec![1; 5]);
    }

    #[test]
    fn e1_table_of_periodicity_complex() {
        let f = Field::prime(2).unwrap();
        let c = periodicity_complex(2, &f).unwrap();
        let table = e1_dimension_table(&c, 3).unwrap();
        assert_eq!(table[0], vec![1, 1, 1, 1]);
        for row in &table[1..] {
            assert_eq!(row, &vec![1, 0, 0, 1]);
        }
        let zero = BoundedComplex::empty(c.group(), &f);
        assert!(e1_dimension_table(&zero, 2)
            .unwrap()
            .iter()
            .all(|r| r.is_empty()));
    }
}
