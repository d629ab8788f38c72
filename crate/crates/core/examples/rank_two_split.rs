//! Splitting the last differential of `0 -> kG -> kG + k -> k -> 0` using only
//! a homotopy over a rank two subgroup.

use permcx::complexes::{split_via_rank_two_subgroup, BoundedComplex};
use permcx::exactla::{Field, Matrix};
use permcx::gmod::GModule;
use permcx::groups::ElemAbGroup;

fn main() -> permcx::Result<()> {
    let g = ElemAbGroup::new(2, 2)?;
    let f = Field::prime(2)?;
    let n = g.order() as usize;
    let kg = GModule::free(&g, &f, 1)?;
    let k = GModule::trivial(&g, &f, 1)?;
    let middle = GModule::direct_sum(&[kg.clone(), k.clone()])?;

    // x -> (x, -e(x)) and (y, z) -> e(y) + z
    let d0 = Matrix::from_fn(&f, n + 1, n, |i, j| {
        if i == n {
            f.neg(1)
        } else {
            u32::from(i == j)
        }
    });
    let d1 = Matrix::from_fn(&f, 1, n + 1, |_, _| 1);
    let c = BoundedComplex::new(&g, &f, vec![kg, middle, k], vec![d0, d1.clone()])?;
    println!("exact: {}", c.is_exact().exact);

    let cert = split_via_rank_two_subgroup(&c, &g.whole())?;
    println!("psi = {:?}", cert.psi.matrix.to_rows());
    println!("d psi = {:?}", d1.mul(&cert.psi.matrix)?.to_rows());
    println!(
        "fixed points of the free part lie in its radical: {}",
        cert.fixed_points_in_radical
    );
    Ok(())
}
