//! Finite-dimensional `kG`-modules for `G = C_p^r`, given by the matrices of
//! the `r` distinguished generators.
//!
//! Over a `p`-group in characteristic `p` every one-dimensional module is
//! trivial: a `1 x 1` matrix `a` with `a^p = 1` satisfies `(a - 1)^p = 0`, so
//! `a = 1`. One-dimensional modules are therefore always built with
//! [`GModule::trivial`].

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Subspace};
use crate::groups::{ElemAbGroup, Subgroup};

/// The canonical summand named by a [`Tag`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SummandKind {
    Trivial,
    Free,
    /// `k[G/E]` for a proper nontrivial `E`.
    Permutation(Subgroup),
}

impl SummandKind {
    /// `k[G/E]`, normalised so that `E = G` is [`SummandKind::Trivial`] and
    /// `E = 1` is [`SummandKind::Free`].
    pub fn for_subgroup(e: &Subgroup) -> SummandKind {
        if e.is_whole() {
            SummandKind::Trivial
        } else if e.is_trivial() {
            SummandKind::Free
        } else {
            SummandKind::Permutation(e.clone())
        }
    }

    /// The point stabiliser of the summand.
    pub fn stabilizer(&self, group: &ElemAbGroup) -> Subgroup {
        match self {
            SummandKind::Trivial => group.whole(),
            SummandKind::Free => group.trivial_subgroup(),
            SummandKind::Permutation(e) => e.clone(),
        }
    }

    pub fn dim(&self, group: &ElemAbGroup) -> usize {
        self.stabilizer(group).index() as usize
    }

    pub fn module(&self, group: &ElemAbGroup, field: &Field) -> Result<GModule> {
        GModule::permutation(&self.stabilizer(group), field)
    }
}

/// `multiplicity` copies of the summand `kind` on the coordinates
/// `start..end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tag {
    pub kind: SummandKind,
    pub multiplicity: usize,
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    group: ElemAbGroup,
    field: Field,
    dim: usize,
    action: Vec<Matrix>,
    tags: Option<Vec<Tag>>,
}

impl GModule {
    /// Checks that the actions commute, have exponent `p`, and that the tags
    /// (if any) describe the actions exactly.
    pub fn new(
        group: &ElemAbGroup,
        field: &Field,
        dim: usize,
        action: Vec<Matrix>,
        tags: Option<Vec<Tag>>,
    ) -> Result<Self> {
        let m = GModule {
            group: group.clone(),
            field: field.clone(),
            dim,
            action,
            tags,
        };
        m.validate()?;
        Ok(m)
    }

    fn unchecked(group: &ElemAbGroup, field: &Field, action: Vec<Matrix>, dim: usize) -> Self {
        GModule {
            group: group.clone(),
            field: field.clone(),
            dim,
            action,
            tags: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.field.p() != self.group.p() {
            return Err(Error::InvalidModule(format!(
                "field characteristic {} differs from the group prime {}",
                self.field.p(),
                self.group.p()
            )));
        }
        if self.action.len() != self.group.rank() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for a group of rank {}",
                self.action.len(),
                self.group.rank()
            )));
        }
        for (i, a) in self.action.iter().enumerate() {
            if a.shape() != (self.dim, self.dim) {
                return Err(Error::InvalidModule(format!(
                    "action of generator {i} is {}x{}, expected {}x{}",
                    a.rows(),
                    a.cols(),
                    self.dim,
                    self.dim
                )));
            }
            if a.field() != &self.field {
                return Err(Error::FieldMismatch);
            }
        }
        for i in 0..self.action.len() {
            for j in i + 1..self.action.len() {
                if self.action[i].mul(&self.action[j])? != self.action[j].mul(&self.action[i])? {
                    return Err(Error::InvalidModule(format!(
                        "actions of generators {i} and {j} do not commute"
                    )));
                }
            }
            if !self.action[i].pow(self.group.p() as u64)?.is_identity() {
                return Err(Error::InvalidModule(format!(
                    "action of generator {i} does not have exponent {}",
                    self.group.p()
                )));
            }
        }
        self.validate_tags()
    }

    /// Re-checks every tag claim against the action matrices.
    pub fn validate_tags(&self) -> Result<()> {
        let Some(tags) = &self.tags else {
            return Ok(());
        };
        let mut covered = vec![false; self.dim];
        for (t, tag) in tags.iter().enumerate() {
            if tag.start > tag.end || tag.end > self.dim {
                return Err(Error::InvalidModule(format!(
                    "tag {t} has an invalid range"
                )));
            }
            if let SummandKind::Permutation(e) = &tag.kind {
                if e.group() != &self.group {
                    return Err(Error::InvalidModule(format!(
                        "tag {t} names a subgroup of another group"
                    )));
                }
            }
            let summand = tag.kind.module(&self.group, &self.field)?;
            if tag.end - tag.start != tag.multiplicity * summand.dim {
                return Err(Error::InvalidModule(format!(
                    "tag {t} covers {} coordinates, expected {} x {}",
                    tag.end - tag.start,
                    tag.multiplicity,
                    summand.dim
                )));
            }
            for c in &mut covered[tag.start..tag.end] {
                if *c {
                    return Err(Error::InvalidModule(format!(
                        "tag {t} overlaps another tag"
                    )));
                }
                *c = true;
            }
            for (i, a) in self.action.iter().enumerate() {
                for row in 0..self.dim {
                    for col in 0..self.dim {
                        let in_row = (tag.start..tag.end).contains(&row);
                        let in_col = (tag.start..tag.end).contains(&col);
                        let expected = match (in_row, in_col) {
                            (true, true) => {
                                let (r, c) = (row - tag.start, col - tag.start);
                                let d = summand.dim;
                                if r / d == c / d {
                                    summand.action[i].get(r % d, c % d)
                                } else {
                                    0
                                }
                            }
                            (false, false) => continue,
                            _ => 0,
                        };
                        if a.get(row, col) != expected {
                            return Err(Error::InvalidModule(format!(
                                "tag {t} ({:?}) does not match the action of generator {i} at ({row}, {col})",
                                tag.kind
                            )));
                        }
                    }
                }
            }
        }
        if covered.iter().any(|c| !c) {
            return Err(Error::InvalidModule(
                "tags do not cover every coordinate".into(),
            ));
        }
        Ok(())
    }

    pub fn group(&self) -> &ElemAbGroup {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn tags(&self) -> Option<&[Tag]> {
        self.tags.as_deref()
    }

    pub fn without_tags(mut self) -> Self {
        self.tags = None;
        self
    }

    /// Attaches tags after checking them.
    pub fn with_tags(mut self, tags: Vec<Tag>) -> Result<Self> {
        self.tags = Some(tags);
        self.validate_tags()?;
        Ok(self)
    }

    /// Action of the group element with coordinates `v`.
    pub fn element_action(&self, v: &[u32]) -> Result<Matrix> {
        self.group.check_vector(v)?;
        let mut acc = Matrix::identity(&self.field, self.dim);
        for (a, &k) in self.action.iter().zip(v) {
            if k != 0 {
                acc = acc.mul(&a.pow(k as u64)?)?;
            }
        }
        Ok(acc)
    }

    fn same_setting(&self, other: &GModule) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn zero(group: &ElemAbGroup, field: &Field) -> Result<Self> {
        Self::trivial(group, field, 0)
    }

    /// `k^m` with trivial action.
    pub fn trivial(group: &ElemAbGroup, field: &Field, m: usize) -> Result<Self> {
        if field.p() != group.p() {
            return Err(Error::InvalidModule(
                "field characteristic differs from p".into(),
            ));
        }
        let action = vec![Matrix::identity(field, m); group.rank()];
        let tags = vec![Tag {
            kind: SummandKind::Trivial,
            multiplicity: m,
            start: 0,
            end: m,
        }];
        Ok(GModule {
            group: group.clone(),
            field: field.clone(),
            dim: m,
            action,
            tags: Some(tags),
        })
    }

    /// The permutation module `k[G/E]` on the canonical coset representatives.
    pub fn permutation(e: &Subgroup, field: &Field) -> Result<Self> {
        let group = e.group();
        if field.p() != group.p() {
            return Err(Error::InvalidModule(
                "field characteristic differs from p".into(),
            ));
        }
        let reps = e.coset_reps();
        let n = reps.len();
        let action = (0..group.rank())
            .map(|i| {
                let gi = group.basis_vector(i);
                let mut m = Matrix::zeros(field, n, n);
                for (c, rep) in reps.iter().enumerate() {
                    m.set(e.coset_index(&group.add(rep, &gi)), c, 1);
                }
                m
            })
            .collect();
        let tags = vec![Tag {
            kind: SummandKind::for_subgroup(e),
            multiplicity: 1,
            start: 0,
            end: n,
        }];
        Ok(GModule {
            group: group.clone(),
            field: field.clone(),
            dim: n,
            action,
            tags: Some(tags),
        })
    }

    /// The free module `kG^m`.
    pub fn free(group: &ElemAbGroup, field: &Field, m: usize) -> Result<Self> {
        let one = Self::permutation(&group.trivial_subgroup(), field)?;
        Self::direct_sum_of(group, field, &vec![one; m])
    }

    pub fn direct_sum(modules: &[GModule]) -> Result<Self> {
        let first = modules
            .first()
            .ok_or_else(|| Error::InvalidModule("direct sum of an empty list".into()))?;
        Self::direct_sum_of(&first.group.clone(), &first.field.clone(), modules)
    }

    /// Block-diagonal sum; an empty list gives the zero module.
    pub fn direct_sum_of(group: &ElemAbGroup, field: &Field, modules: &[GModule]) -> Result<Self> {
        let mut tags = Some(Vec::new());
        let mut offset = 0;
        for m in modules {
            if &m.group != group {
                return Err(Error::GroupMismatch);
            }
            if &m.field != field {
                return Err(Error::FieldMismatch);
            }
            match (&mut tags, &m.tags) {
                (Some(acc), Some(ts)) => acc.extend(ts.iter().map(|t| Tag {
                    kind: t.kind.clone(),
                    multiplicity: t.multiplicity,
                    start: t.start + offset,
                    end: t.end + offset,
                })),
                _ => tags = None,
            }
            offset += m.dim;
        }
        let action = (0..group.rank())
            .map(|i| {
                let blocks: Vec<&Matrix> = modules.iter().map(|m| &m.action[i]).collect();
                Matrix::block_diag(field, &blocks)
            })
            .collect::<Result<_>>()?;
        Ok(GModule {
            group: group.clone(),
            field: field.clone(),
            dim: offset,
            action,
            tags,
        })
    }

    /// Restriction to `h`, whose canonical basis vectors become the generators.
    pub fn restrict(&self, h: &Subgroup) -> Result<GModule> {
        if h.group() != &self.group {
            return Err(Error::GroupMismatch);
        }
        let sub = ElemAbGroup::new(self.group.p(), h.rank())?;
        let action = h
            .basis()
            .iter()
            .map(|v| self.element_action(v))
            .collect::<Result<_>>()?;
        let mut out = GModule::unchecked(&sub, &self.field, action, self.dim);
        out.tags = match &self.tags {
            Some(ts) if h.is_whole() => Some(ts.clone()),
            Some(ts) if ts.iter().all(|t| t.kind == SummandKind::Trivial) => Some(ts.clone()),
            _ => None,
        };
        Ok(out)
    }

    /// Induction `kG ⊗_{kH} M` from `H = span(embedding)` to `group`, with
    /// `M` a module for `C_p^s` whose `j`-th generator is `embedding[j]`.
    ///
    /// The basis is ordered by (coset representative of `H`, basis vector of
    /// `M`).
    pub fn induce(&self, group: &ElemAbGroup, embedding: &[Vec<u32>]) -> Result<GModule> {
        let ind = Induction::new(group, &self.group, embedding)?;
        if self.field.p() != group.p() {
            return Err(Error::FieldMismatch);
        }
        let n = ind.reps.len();
        let d = self.dim;
        let mut action = Vec::with_capacity(group.rank());
        for i in 0..group.rank() {
            let mut m = Matrix::zeros(&self.field, n * d, n * d);
            for (c, carry) in ind.moves[i].iter() {
                let (target, coords) = carry;
                let block = self.element_action(coords)?;
                m.set_block(target * d, c * d, &block);
            }
            action.push(m);
        }
        let mut out = GModule::unchecked(group, &self.field, action, n * d);
        if d == 1 {
            let kind = SummandKind::for_subgroup(&ind.subgroup);
            out.tags = Some(vec![Tag {
                kind,
                multiplicity: 1,
                start: 0,
                end: n,
            }]);
        }
        Ok(out)
    }

    /// Inflation along `G -> Q`, where row `i` of `quotient_map` is the image
    /// of the `i`-th generator of `group` in `Q = C_p^s` (this module's group).
    pub fn inflate(&self, group: &ElemAbGroup, quotient_map: &Matrix) -> Result<GModule> {
        check_quotient_map(group, &self.group, quotient_map)?;
        let action = (0..group.rank())
            .map(|i| self.element_action(quotient_map.row(i)))
            .collect::<Result<_>>()?;
        let mut out = GModule::unchecked(group, &self.field, action, self.dim);
        let identity = quotient_map.is_identity();
        out.tags = match &self.tags {
            Some(ts) if identity => Some(ts.clone()),
            Some(ts) if ts.iter().all(|t| t.kind == SummandKind::Trivial) => Some(ts.clone()),
            _ => None,
        };
        Ok(out)
    }

    /// Basis (RREF rows) of the fixed points `M^G`.
    pub fn fixed_points(&self) -> Result<Matrix> {
        let id = Matrix::identity(&self.field, self.dim);
        let mut stacked = Matrix::zeros(&self.field, 0, self.dim);
        for a in &self.action {
            stacked = stacked.vstack(&a.sub(&id)?)?;
        }
        Ok(stacked.kernel_basis().row_space())
    }

    /// Basis (RREF rows) of the radical `sum_i im(g_i - 1)`.
    pub fn radical(&self) -> Result<Matrix> {
        let id = Matrix::identity(&self.field, self.dim);
        let mut joined = Matrix::zeros(&self.field, self.dim, 0);
        for a in &self.action {
            joined = joined.hstack(&a.sub(&id)?)?;
        }
        Ok(joined.column_space())
    }

    pub fn identity_map(&self) -> EquivariantMap {
        EquivariantMap {
            source: self.clone(),
            target: self.clone(),
            matrix: Matrix::identity(&self.field, self.dim),
        }
    }
}

pub(crate) fn check_quotient_map(
    group: &ElemAbGroup,
    quotient: &ElemAbGroup,
    map: &Matrix,
) -> Result<()> {
    if map.shape() != (group.rank(), quotient.rank()) {
        return Err(Error::DimensionMismatch(format!(
            "quotient map is {}x{}, expected {}x{}",
            map.rows(),
            map.cols(),
            group.rank(),
            quotient.rank()
        )));
    }
    if map.field() != group.prime_field() {
        return Err(Error::FieldMismatch);
    }
    if map.rank() != quotient.rank() {
        return Err(Error::Precondition("quotient map is not surjective".into()));
    }
    Ok(())
}

/// Target coset and the carried element's coordinates.
type CosetMove = (usize, (usize, Vec<u32>));

/// Coset bookkeeping for induction from `H = span(embedding)`.
pub(crate) struct Induction {
    pub subgroup: Subgroup,
    pub reps: Vec<Vec<u32>>,
    /// For each generator `g_i` and coset `c`: the coset of `g_i c` and the
    /// coordinates (w.r.t. the embedding) of the element of `H` carried along.
    pub moves: Vec<Vec<CosetMove>>,
}

impl Induction {
    pub fn new(group: &ElemAbGroup, sub: &ElemAbGroup, embedding: &[Vec<u32>]) -> Result<Self> {
        if group.p() != sub.p() {
            return Err(Error::GroupMismatch);
        }
        if embedding.len() != sub.rank() {
            return Err(Error::DimensionMismatch(format!(
                "embedding has {} rows for a group of rank {}",
                embedding.len(),
                sub.rank()
            )));
        }
        let h = Subgroup::from_generators(group, embedding)?;
        if h.rank() != embedding.len() {
            return Err(Error::Precondition(
                "embedding rows are linearly dependent".into(),
            ));
        }
        let fp = group.prime_field();
        // columns are the embedding vectors
        let emb_t = Matrix::from_rows_with_cols(fp, embedding, group.rank())?.transpose();
        let reps = h.coset_reps();
        let mut moves = Vec::with_capacity(group.rank());
        for i in 0..group.rank() {
            let gi = group.basis_vector(i);
            let mut row = Vec::with_capacity(reps.len());
            for (c, rep) in reps.iter().enumerate() {
                let moved = group.add(rep, &gi);
                let target = h.coset_index(&moved);
                let tr = &reps[target];
                let carried: Vec<u32> = moved
                    .iter()
                    .zip(tr)
                    .map(|(&a, &b)| (a + group.p() - b) % group.p())
                    .collect();
                let coords = emb_t
                    .solve(&Matrix::column(fp, &carried))?
                    .ok_or_else(|| Error::Internal("carried element outside subgroup".into()))?
                    .col(0);
                row.push((c, (target, coords)));
            }
            moves.push(row);
        }
        Ok(Induction {
            subgroup: h,
            reps,
            moves,
        })
    }
}

/// A `kG`-linear map, stored as a `target.dim x source.dim` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantMap {
    pub source: GModule,
    pub target: GModule,
    pub matrix: Matrix,
}

impl EquivariantMap {
    pub fn new(source: &GModule, target: &GModule, matrix: Matrix) -> Result<Self> {
        source.same_setting(target)?;
        if matrix.shape() != (target.dim, source.dim) {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim,
                source.dim
            )));
        }
        if let Some(i) = non_equivariant_generator(source, target, &matrix)? {
            return Err(Error::InvalidModule(format!(
                "map does not commute with generator {i}"
            )));
        }
        Ok(EquivariantMap {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    pub fn compose(&self, first: &EquivariantMap) -> Result<EquivariantMap> {
        Ok(EquivariantMap {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix)?,
        })
    }

    /// Induced map on `kG ⊗_{kH} -`: the same matrix on every coset block.
    pub fn induce(&self, group: &ElemAbGroup, embedding: &[Vec<u32>]) -> Result<EquivariantMap> {
        let source = self.source.induce(group, embedding)?;
        let target = self.target.induce(group, embedding)?;
        let n = (group.p() as usize).pow((group.rank() - self.source.group.rank()) as u32);
        let blocks = vec![&self.matrix; n];
        let matrix = Matrix::block_diag(self.matrix.field(), &blocks)?;
        Ok(EquivariantMap {
            source,
            target,
            matrix,
        })
    }
}

/// First generator `i` with `matrix * A_i != B_i * matrix`.
pub fn non_equivariant_generator(
    source: &GModule,
    target: &GModule,
    matrix: &Matrix,
) -> Result<Option<usize>> {
    for i in 0..source.action.len() {
        if matrix.mul(&source.action[i])? != target.action[i].mul(matrix)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Canonical basis of `Hom_kG(source, target)`: the kernel basis of the
/// system `X A_i = B_i X` in the row-major entries of `X`.
pub fn hom_space(source: &GModule, target: &GModule) -> Result<Vec<EquivariantMap>> {
    Ok(hom_space_matrices(source, target)?
        .into_iter()
        .map(|matrix| EquivariantMap {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
        .collect())
}

pub fn hom_space_matrices(source: &GModule, target: &GModule) -> Result<Vec<Matrix>> {
    source.same_setting(target)?;
    match (summand_blocks(source), summand_blocks(target)) {
        (Some(sb), Some(tb)) => hom_space_blockwise(source, target, &sb, &tb),
        _ => hom_space_direct(source, target),
    }
}

/// Solves the full commutation system at once, ignoring tags.
pub fn hom_space_direct(source: &GModule, target: &GModule) -> Result<Vec<Matrix>> {
    source.same_setting(target)?;
    let (basis, _) = hom_system(source, target)?.kernel_basis_with_free_columns();
    (0..basis.rows())
        .map(|k| Matrix::from_vector(&source.field, target.dim, source.dim, basis.row(k).to_vec()))
        .collect::<Result<_>>()
}

// Rows indexed by (generator, a, c), columns by the entry (a, b) of X at a * ns + b.
fn hom_system(source: &GModule, target: &GModule) -> Result<Matrix> {
    let (ns, nt) = (source.dim, target.dim);
    let f = &source.field;
    let r = source.action.len();
    let mut sys = Matrix::zeros(f, r * nt * ns, nt * ns);
    for i in 0..r {
        let (a_mat, b_mat) = (&source.action[i], &target.action[i]);
        for a in 0..nt {
            for c in 0..ns {
                let row = (i * nt + a) * ns + c;
                // (X A)_{ac} = sum_b x_{ab} A_{bc}
                for b in 0..ns {
                    let v = a_mat.get(b, c);
                    if v != 0 {
                        let col = a * ns + b;
                        sys.set(row, col, f.add(sys.get(row, col), v));
                    }
                }
                // (B X)_{ac} = sum_d B_{ad} x_{dc}
                for d in 0..nt {
                    let v = b_mat.get(a, d);
                    if v != 0 {
                        let col = d * ns + c;
                        sys.set(row, col, f.sub(sys.get(row, col), v));
                    }
                }
            }
        }
    }
    Ok(sys)
}

// One entry per canonical summand copy: (kind, start coordinate).
fn summand_blocks(m: &GModule) -> Option<Vec<(SummandKind, usize)>> {
    let tags = m.tags.as_ref()?;
    let mut out = Vec::new();
    for t in tags {
        if t.multiplicity == 0 {
            continue;
        }
        let d = (t.end - t.start) / t.multiplicity;
        for j in 0..t.multiplicity {
            out.push((t.kind.clone(), t.start + j * d));
        }
    }
    Some(out)
}

// The commutation system decouples over pairs of summands, and the canonical
// kernel basis of the whole system is the union of the per-block canonical
// bases ordered by free column.
fn hom_space_blockwise(
    source: &GModule,
    target: &GModule,
    sb: &[(SummandKind, usize)],
    tb: &[(SummandKind, usize)],
) -> Result<Vec<Matrix>> {
    let g = &source.group;
    let f = &source.field;
    type Block = (GModule, GModule, Vec<Matrix>, Vec<usize>);
    let mut cache: HashMap<(SummandKind, SummandKind), Block> = HashMap::new();
    let mut found: Vec<(usize, Matrix)> = Vec::new();
    for (tk, t0) in tb {
        for (sk, s0) in sb {
            let key = (tk.clone(), sk.clone());
            if !cache.contains_key(&key) {
                let sm = sk.module(g, f)?;
                let tm = tk.module(g, f)?;
                let (basis, free) = hom_system(&sm, &tm)?.kernel_basis_with_free_columns();
                let mats = (0..basis.rows())
                    .map(|k| Matrix::from_vector(f, tm.dim, sm.dim, basis.row(k).to_vec()))
                    .collect::<Result<Vec<_>>>()?;
                cache.insert(key.clone(), (sm, tm, mats, free));
            }
            let (sm, _, mats, free) = &cache[&key];
            for (mat, &fc) in mats.iter().zip(free) {
                let (a, b) = (fc / sm.dim, fc % sm.dim);
                let global = (t0 + a) * source.dim + (s0 + b);
                let mut full = Matrix::zeros(f, target.dim, source.dim);
                full.set_block(*t0, *s0, mat);
                found.push((global, full));
            }
        }
    }
    found.sort_by_key(|(c, _)| *c);
    Ok(found.into_iter().map(|(_, m)| m).collect())
}

/// For a module whose generators act by permutation matrices transitively
/// with point stabiliser `e`, the permutation matrix `P` with
/// `P A_i P^{-1}` equal to the action on `k[G/E]`.
pub fn permutation_relabeling(m: &GModule, e: &Subgroup) -> Result<Matrix> {
    let group = &m.group;
    let reps = e.coset_reps();
    if reps.len() != m.dim {
        return Err(Error::Precondition(format!(
            "module of dimension {} cannot be k[G/E] with [G:E] = {}",
            m.dim,
            reps.len()
        )));
    }
    let mut p = Matrix::zeros(&m.field, m.dim, m.dim);
    let mut seen = Subspace::new(&m.field, m.dim);
    for (idx, rep) in reps.iter().enumerate() {
        let image = m.element_action(rep)?.col(0);
        let support: Vec<usize> = (0..m.dim).filter(|&i| image[i] != 0).collect();
        if support.len() != 1 || image[support[0]] != 1 || !seen.insert(&image) {
            return Err(Error::Precondition(
                "not a transitive permutation module".into(),
            ));
        }
        p.set(idx, support[0], 1);
    }
    let canonical = GModule::permutation(e, &m.field)?;
    for (i, a) in m.action.iter().enumerate() {
        if p.mul(a)? != canonical.action[i].mul(&p)? {
            return Err(Error::Precondition(format!(
                "generator {i} does not match k[G/E] for E = {e:?} in {group:?}"
            )));
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(p: u32, r: usize) -> (ElemAbGroup, Field) {
        (ElemAbGroup::new(p, r).unwrap(), Field::prime(p).unwrap())
    }

    fn line(g: &ElemAbGroup, v: &[u32]) -> Subgroup {
        Subgroup::from_generators(g, &[v.to_vec()]).unwrap()
    }

    #[test]
    fn trivial_modules() {
        let (g, f) = setup(2, 2);
        let k = GModule::trivial(&g, &f, 1).unwrap();
        assert_eq!(k.dim(), 1);
        assert!(k.action().iter().all(Matrix::is_identity));
        assert_eq!(GModule::trivial(&g, &f, 0).unwrap().dim(), 0);
        let k3 = GModule::trivial(&g, &f, 3).unwrap();
        assert_eq!(
            k3.action(),
            &[Matrix::identity(&f, 3), Matrix::identity(&f, 3)]
        );
        k3.validate().unwrap();
    }

    #[test]
    fn one_dimensional_modules_are_trivial() {
        let (g, f) = setup(3, 1);
        for a in 0..3 {
            let m = Matrix::from_rows(&f, &[vec![a]]).unwrap();
            let res = GModule::new(&g, &f, 1, vec![m], None);
            assert_eq!(res.is_ok(), a == 1, "scalar {a}");
        }
    }

    #[test]
    fn permutation_examples() {
        let (g, f) = setup(2, 2);
        let triv = GModule::permutation(&g.whole(), &f).unwrap();
        assert_eq!(triv, GModule::trivial(&g, &f, 1).unwrap());

        let reg = GModule::permutation(&g.trivial_subgroup(), &f).unwrap();
        assert_eq!(reg.dim(), 4);
        for a in reg.action() {
            assert!((0..4).all(|i| a.get(i, i) == 0));
            assert!(a.mul(a).unwrap().is_identity());
        }

        let m = GModule::permutation(&line(&g, &[1, 0]), &f).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(m.action()[0].is_identity());
        assert_eq!(m.action()[1].to_rows(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn direct_sum_tags() {
        let (g, f) = setup(2, 2);
        let z = GModule::zero(&g, &f).unwrap();
        assert_eq!(GModule::direct_sum(&[z.clone(), z]).unwrap().dim(), 0);

        let s = GModule::direct_sum(&[
            GModule::trivial(&g, &f, 1).unwrap(),
            GModule::free(&g, &f, 1).unwrap(),
        ])
        .unwrap();
        assert_eq!(s.dim(), 5);
        let tags = s.tags().unwrap();
        assert_eq!(
            (tags[0].kind.clone(), tags[0].start, tags[0].end),
            (SummandKind::Trivial, 0, 1)
        );
        assert_eq!(
            (tags[1].kind.clone(), tags[1].start, tags[1].end),
            (SummandKind::Free, 1, 5)
        );
        s.validate().unwrap();
    }

    #[test]
    fn bad_tags_are_rejected() {
        let (g, f) = setup(2, 2);
        let m = GModule::permutation(&line(&g, &[1, 0]), &f).unwrap();
        let wrong = vec![Tag {
            kind: SummandKind::Permutation(line(&g, &[0, 1])),
            multiplicity: 1,
            start: 0,
            end: 2,
        }];
        assert!(m.without_tags().with_tags(wrong).is_err());
    }

    #[test]
    fn non_commuting_actions_rejected() {
        let (g, f) = setup(2, 2);
        let a = Matrix::from_rows(&f, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let b = Matrix::from_rows(&f, &[vec![1, 0, 0], vec![0, 1, 1], vec![0, 0, 1]]).unwrap();
        let err = GModule::new(&g, &f, 3, vec![a, b], None).unwrap_err();
        assert!(err.to_string().contains("commute"));
    }

    #[test]
    fn fixed_points_and_radical() {
        let (g, f) = setup(2, 2);
        let k2 = GModule::trivial(&g, &f, 2).unwrap();
        assert_eq!(k2.fixed_points().unwrap().rows(), 2);
        assert_eq!(k2.radical().unwrap().rows(), 0);

        let kg = GModule::free(&g, &f, 1).unwrap();
        let fix = kg.fixed_points().unwrap();
        assert_eq!(fix.to_rows(), vec![vec![1, 1, 1, 1]]);
        assert_eq!(kg.radical().unwrap().rows(), 3);
        assert_eq!(
            GModule::free(&g, &f, 2).unwrap().radical().unwrap().rows(),
            6
        );

        let perm = GModule::permutation(&line(&g, &[1, 0]), &f).unwrap();
        assert_eq!(perm.fixed_points().unwrap().rows(), 1);
    }

    #[test]
    fn hom_examples() {
        let (g, f) = setup(2, 2);
        let k = GModule::trivial(&g, &f, 1).unwrap();
        let kg = GModule::free(&g, &f, 1).unwrap();
        let homs = hom_space(&k, &kg).unwrap();
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0].matrix.col(0), vec![1, 1, 1, 1]);

        let e = line(&g, &[1, 0]);
        let perm = GModule::permutation(&e, &f).unwrap();
        assert_eq!(hom_space(&perm, &perm).unwrap().len(), 2);
        assert_eq!(hom_space(&kg, &perm).unwrap().len(), perm.dim());
    }

    #[test]
    fn blockwise_hom_matches_direct_solve() {
        let (g, f) = setup(2, 2);
        let e = line(&g, &[1, 1]);
        let a = GModule::direct_sum(&[
            GModule::trivial(&g, &f, 1).unwrap(),
            GModule::permutation(&e, &f).unwrap(),
            GModule::free(&g, &f, 1).unwrap(),
        ])
        .unwrap();
        let b = GModule::direct_sum(&[
            GModule::free(&g, &f, 1).unwrap(),
            GModule::trivial(&g, &f, 2).unwrap(),
        ])
        .unwrap();
        for (s, t) in [(&a, &b), (&b, &a), (&a, &a)] {
            let tagged = hom_space_matrices(s, t).unwrap();
            let direct = hom_space_direct(s, t).unwrap();
            assert_eq!(tagged, direct);
        }
    }

    #[test]
    fn restrict_examples() {
        let (g, f) = setup(2, 2);
        let kg = GModule::free(&g, &f, 1).unwrap();
        assert_eq!(kg.restrict(&g.whole()).unwrap(), kg);
        let res = kg.restrict(&line(&g, &[1, 0])).unwrap();
        assert_eq!(res.group().rank(), 1);
        let a = &res.action()[0];
        // product of two disjoint transpositions
        assert!((0..4).all(|i| a.get(i, i) == 0));
        assert!(a.mul(a).unwrap().is_identity());
        let k = GModule::trivial(&g, &f, 2).unwrap();
        let rk = k.restrict(&line(&g, &[1, 1])).unwrap();
        assert!(rk.action().iter().all(Matrix::is_identity));
    }

    #[test]
    fn induce_trivial_is_permutation_module() {
        for (p, r) in [(2, 2), (2, 3), (3, 2)] {
            let (g, f) = setup(p, r);
            for h in crate::groups::all_subgroups(&g, None).unwrap().iter() {
                let sub = ElemAbGroup::new(p, h.rank()).unwrap();
                let k = GModule::trivial(&sub, &f, 1).unwrap();
                let ind = k.induce(&g, h.basis()).unwrap();
                assert_eq!(ind, GModule::permutation(h, &f).unwrap(), "H = {h:?}");
            }
        }
    }

    #[test]
    fn induce_free_and_whole() {
        let (g, f) = setup(2, 2);
        let h = line(&g, &[0, 1]);
        let sub = ElemAbGroup::new(2, 1).unwrap();
        let free = GModule::free(&sub, &f, 1).unwrap();
        let ind = free.induce(&g, h.basis()).unwrap();
        assert_eq!(ind.dim(), 4);
        ind.validate().unwrap();
        assert_eq!(ind.fixed_points().unwrap().rows(), 1);
        assert_eq!(hom_space(&ind, &ind).unwrap().len(), 4);

        let m = GModule::permutation(&line(&g, &[1, 1]), &f).unwrap();
        let same = m.induce(&g, g.whole().basis()).unwrap();
        assert_eq!(same.action(), m.action());
        assert!(m.induce(&g, &[vec![1, 0], vec![1, 0]]).is_err());
    }

    #[test]
    fn inflate_examples() {
        let (g, f) = setup(3, 2);
        let q = ElemAbGroup::new(3, 1).unwrap();
        let fp = g.prime_field();
        let reg = GModule::free(&q, &f, 1).unwrap();
        let map = Matrix::from_rows(fp, &[vec![1], vec![0]]).unwrap();
        let inf = reg.inflate(&g, &map).unwrap();
        let expected = GModule::permutation(&line(&g, &[0, 1]), &f).unwrap();
        assert_eq!(inf.action(), expected.action());

        let k = GModule::trivial(&q, &f, 2).unwrap();
        assert!(k
            .inflate(&g, &map)
            .unwrap()
            .action()
            .iter()
            .all(Matrix::is_identity));

        let id = Matrix::identity(fp, 2);
        let m = GModule::permutation(&line(&g, &[1, 2]), &f).unwrap();
        assert_eq!(m.inflate(&g, &id).unwrap(), m);

        let zero_map = Matrix::zeros(fp, 2, 1);
        assert!(reg.inflate(&g, &zero_map).is_err());
    }

    #[test]
    fn relabeling_recovers_canonical_order() {
        let (g, f) = setup(2, 2);
        let h = line(&g, &[0, 1]);
        let sub = ElemAbGroup::new(2, 1).unwrap();
        let free = GModule::free(&sub, &f, 1).unwrap();
        let ind = free.induce(&g, h.basis()).unwrap();
        let p = permutation_relabeling(&ind, &g.trivial_subgroup()).unwrap();
        let kg = GModule::free(&g, &f, 1).unwrap();
        let pinv = p.transpose();
        for i in 0..2 {
            assert_eq!(
                p.mul(&ind.action()[i]).unwrap().mul(&pinv).unwrap(),
                kg.action()[i]
            );
        }
    }
}
