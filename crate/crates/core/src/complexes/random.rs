//! Contractible test complexes: direct sums of `0 -> M --id--> M -> 0` with
//! `M = k[G/E]`, conjugated by random automorphisms of each term.
//!
//! Every output is contractible, so the generator exercises the checkers but
//! cannot produce exact non-contractible complexes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexes::BoundedComplex;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::gmod::{hom_space_matrices, GModule};
use crate::groups::SubgroupCollection;

const AUTOMORPHISM_ATTEMPTS: usize = 256;

/// `multiplicities[i][j]` copies of `0 -> k[G/E_j] --id--> k[G/E_j] -> 0`
/// placed in positions `i, i + 1`, for `i < length`.
pub fn random_adds_complex(
    h: &SubgroupCollection,
    field: &Field,
    length: usize,
    multiplicities: &[Vec<usize>],
    seed: u64,
) -> Result<BoundedComplex> {
    let g = h.group();
    if multiplicities.len() != length || multiplicities.iter().any(|m| m.len() != h.len()) {
        return Err(Error::DimensionMismatch(format!(
            "multiplicities must be {length} x {} (positions x subgroups)",
            h.len()
        )));
    }
    let summands: Vec<GModule> = h
        .iter()
        .map(|e| GModule::permutation(e, field))
        .collect::<Result<_>>()?;
    let piece_list = |i: usize| -> Vec<GModule> {
        multiplicities
            .get(i)
            .into_iter()
            .flat_map(|row| {
                row.iter()
                    .enumerate()
                    .flat_map(|(j, &m)| std::iter::repeat_n(summands[j].clone(), m))
            })
            .collect()
    };
    // C^i = (pieces arriving from i - 1) ⊕ (pieces leaving towards i + 1)
    let mut terms = Vec::with_capacity(length + 1);
    let mut incoming_dims = Vec::with_capacity(length + 1);
    for i in 0..=length {
        let incoming = if i == 0 {
            Vec::new()
        } else {
            piece_list(i - 1)
        };
        let outgoing = piece_list(i);
        incoming_dims.push(incoming.iter().map(GModule::dim).sum::<usize>());
        let all: Vec<GModule> = incoming.into_iter().chain(outgoing).collect();
        terms.push(GModule::direct_sum_of(g, field, &all)?);
    }
    let mut differentials = Vec::with_capacity(length);
    for i in 0..length {
        let (src, tgt) = (&terms[i], &terms[i + 1]);
        let moving = src.dim() - incoming_dims[i];
        let mut d = Matrix::zeros(field, tgt.dim(), src.dim());
        for k in 0..moving {
            d.set(k, incoming_dims[i] + k, 1);
        }
        differentials.push(d);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut autos = Vec::with_capacity(terms.len());
    for t in &terms {
        autos.push(random_automorphism(t, &mut rng)?);
    }
    let mut conjugated = Vec::with_capacity(length);
    for (i, d) in differentials.iter().enumerate() {
        let (_, a_inv) = &autos[i];
        let (b, _) = &autos[i + 1];
        conjugated.push(b.mul(d)?.mul(a_inv)?);
    }
    BoundedComplex::new(g, field, terms, conjugated)
}

/// A random invertible element of `End_kG(m)` and its inverse; the identity
/// if no sample is invertible within the attempt budget.
fn random_automorphism(m: &GModule, rng: &mut ChaCha8Rng) -> Result<(Matrix, Matrix)> {
    let f = m.field();
    let id = Matrix::identity(f, m.dim());
    if m.dim() == 0 {
        return Ok((id.clone(), id));
    }
    let basis = hom_space_matrices(m, m)?;
    for _ in 0..AUTOMORPHISM_ATTEMPTS {
        let mut a = Matrix::zeros(f, m.dim(), m.dim());
        for b in &basis {
            a.add_scaled(rng.gen_range(0..f.order()), b)?;
        }
        if let Some(inv) = a.inverse()? {
            return Ok((a, inv));
        }
    }
    Ok((id.clone(), id))
}

/// Random multiplicities in `0..=max` for [`random_adds_complex`].
pub fn random_multiplicities(
    length: usize,
    subgroups: usize,
    max: usize,
    rng: &mut impl Rng,
) -> Vec<Vec<usize>> {
    (0..length)
        .map(|_| (0..subgroups).map(|_| rng.gen_range(0..=max)).collect())
        .collect()
}
