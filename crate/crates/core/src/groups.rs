//! Elementary abelian groups `C_p^r`, identified with `F_p^r`, and their
//! subgroup lattice. Subgroups are stored by the reduced row echelon basis
//! of the corresponding subspace, so equal subgroups compare equal.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Subspace};

/// Default limit on `|G|` for exhaustive subgroup enumeration.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 81;

#[derive(Clone)]
pub struct ElemAbGroup {
    p: u32,
    r: usize,
    fp: Field,
}

impl PartialEq for ElemAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r
    }
}

impl Eq for ElemAbGroup {}

impl std::hash::Hash for ElemAbGroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.r.hash(state);
    }
}

impl fmt::Debug for ElemAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{}^{}", self.p, self.r)
    }
}

impl ElemAbGroup {
    pub fn new(p: u32, r: usize) -> Result<Self> {
        let fp = Field::prime(p)?;
        Ok(ElemAbGroup { p, r, fp })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.r as u32)
    }

    /// The prime field `F_p` in which group elements have their coordinates.
    pub fn prime_field(&self) -> &Field {
        &self.fp
    }

    /// The `i`-th element in lexicographic order (first coordinate most
    /// significant).
    pub fn element(&self, mut index: u64) -> Vec<u32> {
        let mut v = vec![0; self.r];
        for slot in v.iter_mut().rev() {
            *slot = (index % self.p as u64) as u32;
            index /= self.p as u64;
        }
        v
    }

    pub fn element_index(&self, v: &[u32]) -> u64 {
        v.iter().fold(0, |acc, &c| acc * self.p as u64 + c as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.r];
        v[i] = 1;
        v
    }

    pub fn check_vector(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.r {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a group of rank {}",
                v.len(),
                self.r
            )));
        }
        if let Some(&c) = v.iter().find(|&&c| c >= self.p) {
            return Err(Error::Parse(format!(
                "coordinate {c} is not reduced mod {}",
                self.p
            )));
        }
        Ok(())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            group: self.clone(),
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn whole(&self) -> Subgroup {
        let basis = (0..self.r).map(|i| self.basis_vector(i)).collect();
        Subgroup {
            group: self.clone(),
            basis,
            pivots: (0..self.r).collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    group: ElemAbGroup,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .basis
            .iter()
            .map(|v| {
                format!(
                    "({})",
                    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

impl Subgroup {
    /// The span of `vectors`, in canonical form.
    pub fn from_generators(group: &ElemAbGroup, vectors: &[Vec<u32>]) -> Result<Self> {
        for v in vectors {
            group.check_vector(v)?;
        }
        let m = Matrix::from_rows_with_cols(group.prime_field(), vectors, group.rank())?;
        let rref = m.rref();
        let basis = rref
            .matrix
            .to_rows()
            .into_iter()
            .take(rref.rank())
            .collect();
        Ok(Subgroup {
            group: group.clone(),
            basis,
            pivots: rref.pivots,
        })
    }

    pub fn group(&self) -> &ElemAbGroup {
        &self.group
    }

    /// Canonical basis rows.
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows_with_cols(self.group.prime_field(), &self.basis, self.group.rank())
            .expect("canonical basis")
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self) -> u64 {
        (self.group.p as u64).pow(self.rank() as u32)
    }

    /// `[G : E]`.
    pub fn index(&self) -> u64 {
        (self.group.p as u64).pow((self.group.r - self.rank()) as u32)
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.rank() == self.group.r
    }

    fn check_same_group(&self, other: &Subgroup) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// The lexicographically smallest element of `v + E`: clear every pivot
    /// coordinate of the canonical basis.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.group.p;
        let mut w = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let x = w[pc];
            if x != 0 {
                for (a, &b) in w.iter_mut().zip(row) {
                    *a = (*a + (p - x) * b) % p;
                }
            }
        }
        w
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&c| c == 0)
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subgroup.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    pub fn contains(&self, other: &Subgroup) -> Result<bool> {
        self.check_same_group(other)?;
        Ok(other.basis.iter().all(|v| self.contains_vector(v)))
    }

    /// `[self : other]` when `other ⊆ self`.
    pub fn index_of(&self, other: &Subgroup) -> Result<Option<u64>> {
        Ok(self
            .contains(other)?
            .then(|| (self.group.p as u64).pow((self.rank() - other.rank()) as u32)))
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_same_group(other)?;
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Subgroup::from_generators(&self.group, &gens)
    }

    /// Intersection via the kernel of the stacked system `[E; -F]`.
    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_same_group(other)?;
        let fp = self.group.prime_field();
        let a = self.basis_matrix();
        let b = other.basis_matrix();
        // rows (x, y) of the kernel satisfy x E = y F
        let stacked = a.vstack(&b.neg())?;
        let ker = stacked.transpose().kernel_basis();
        let gens: Vec<Vec<u32>> = (0..ker.rows())
            .map(|i| {
                let x = &ker.row(i)[..self.rank()];
                Matrix::from_rows_with_cols(fp, &[x.to_vec()], self.rank())
                    .and_then(|xm| xm.mul(&a))
                    .map(|m| m.row(0).to_vec())
            })
            .collect::<Result<_>>()?;
        Subgroup::from_generators(&self.group, &gens)
    }

    /// One lexicographically minimal representative per coset, sorted.
    pub fn coset_reps(&self) -> Vec<Vec<u32>> {
        let free: Vec<usize> = (0..self.group.r)
            .filter(|c| !self.pivots.contains(c))
            .collect();
        let p = self.group.p as u64;
        let count = p.pow(free.len() as u32);
        (0..count)
            .map(|mut idx| {
                let mut v = vec![0; self.group.r];
                for &c in free.iter().rev() {
                    v[c] = (idx % p) as u32;
                    idx /= p;
                }
                v
            })
            .collect()
    }

    /// Position of the coset `v + E` in [`Subgroup::coset_reps`].
    pub fn coset_index(&self, v: &[u32]) -> usize {
        let w = self.reduce(v);
        let p = self.group.p as u64;
        let mut idx = 0u64;
        for (c, &x) in w.iter().enumerate() {
            if !self.pivots.contains(&c) {
                idx = idx * p + x as u64;
            }
        }
        idx as usize
    }

    pub fn elements(&self) -> Vec<Vec<u32>> {
        let p = self.group.p as u64;
        (0..self.order())
            .map(|mut idx| {
                let mut v = vec![0; self.group.r];
                for row in self.basis.iter().rev() {
                    let a = (idx % p) as u32;
                    idx /= p;
                    for (x, &b) in v.iter_mut().zip(row) {
                        *x = (*x + a * b) % self.group.p;
                    }
                }
                v
            })
            .collect()
    }

    pub fn as_subspace(&self) -> Subspace {
        Subspace::from_rows(&self.basis_matrix())
    }
}

/// Result of [`lattice_ops`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeRelation {
    pub contains: bool,
    pub index_if_contained: Option<u64>,
    pub sum: Subgroup,
    pub intersection: Subgroup,
}

/// Whether `e ⊆ f`, the index when it is, and `e + f`, `e ∩ f`.
pub fn lattice_ops(e: &Subgroup, f: &Subgroup) -> Result<LatticeRelation> {
    let index = f.index_of(e)?;
    Ok(LatticeRelation {
        contains: index.is_some(),
        index_if_contained: index,
        sum: e.sum(f)?,
        intersection: e.intersection(f)?,
    })
}

/// An ordered list of distinct subgroups of a common group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupCollection {
    group: ElemAbGroup,
    members: Vec<Subgroup>,
}

impl SubgroupCollection {
    pub fn new(group: &ElemAbGroup, members: Vec<Subgroup>) -> Result<Self> {
        for (i, s) in members.iter().enumerate() {
            if s.group() != group {
                return Err(Error::GroupMismatch);
            }
            if members[..i].contains(s) {
                return Err(Error::DuplicateSubgroup(i));
            }
        }
        Ok(SubgroupCollection {
            group: group.clone(),
            members,
        })
    }

    pub fn group(&self) -> &ElemAbGroup {
        &self.group
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subgroup> {
        self.members.iter()
    }

    pub fn contains(&self, s: &Subgroup) -> bool {
        self.members.contains(s)
    }
}

/// Every subgroup of `group`, optionally only those of one rank, ordered by
/// rank and then by canonical basis.
pub fn all_subgroups(
    group: &ElemAbGroup,
    rank_filter: Option<usize>,
) -> Result<SubgroupCollection> {
    all_subgroups_bounded(group, rank_filter, DEFAULT_ENUMERATION_BOUND)
}

pub fn all_subgroups_bounded(
    group: &ElemAbGroup,
    rank_filter: Option<usize>,
    bound: u64,
) -> Result<SubgroupCollection> {
    if group.order() > bound {
        return Err(Error::EnumerationBound {
            order: group.order(),
            bound,
        });
    }
    let r = group.rank();
    let p = group.p() as u64;
    let ranks: Vec<usize> = match rank_filter {
        Some(k) if k > r => Vec::new(),
        Some(k) => vec![k],
        None => (0..=r).collect(),
    };
    let mut out = Vec::new();
    for k in ranks {
        let mut found = Vec::new();
        for pivots in combinations(r, k) {
            // free slots: row i, columns after pivot i that are not pivots
            let slots: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(i, &pc)| {
                    let pivots = &pivots;
                    (pc + 1..r)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (i, c))
                })
                .collect();
            for mut idx in 0..p.pow(slots.len() as u32) {
                let mut basis = vec![vec![0u32; r]; k];
                for (i, &pc) in pivots.iter().enumerate() {
                    basis[i][pc] = 1;
                }
                for &(i, c) in slots.iter().rev() {
                    basis[i][c] = (idx % p) as u32;
                    idx /= p;
                }
                found.push(Subgroup {
                    group: group.clone(),
                    basis,
                    pivots: pivots.clone(),
                });
            }
        }
        found.sort_by(|a, b| a.basis.cmp(&b.basis));
        out.extend(found);
    }
    SubgroupCollection::new(group, out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCondition {
    pub ok: bool,
    /// Pairs `(E, F)` with `E ⊂ F` of index `p`.
    pub violations: Vec<(Subgroup, Subgroup)>,
}

/// Lists every ordered pair `(E, F)` in the collection with `E ⊆ F` of index
/// exactly `p`.
pub fn check_chain_condition(h: &SubgroupCollection) -> ChainCondition {
    let p = h.group().p() as u64;
    let mut violations = Vec::new();
    for e in h.iter() {
        for f in h.iter() {
            if e != f && f.index_of(e).expect("common group") == Some(p) {
                violations.push((e.clone(), f.clone()));
            }
        }
    }
    ChainCondition {
        ok: violations.is_empty(),
        violations,
    }
}
