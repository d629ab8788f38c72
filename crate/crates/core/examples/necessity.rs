//! Every index-p containment in a collection yields an exact complex that is
//! not contractible.

use permcx::counterexamples::necessity_report;
use permcx::exactla::Field;
use permcx::groups::{all_subgroups, check_chain_condition, ElemAbGroup};

fn main() -> permcx::Result<()> {
    let g = ElemAbGroup::new(2, 2)?;
    let f = Field::prime(2)?;
    let all = all_subgroups(&g, None)?;
    println!(
        "{} subgroups, {} index-2 pairs",
        all.len(),
        check_chain_condition(&all).violations.len()
    );

    for r in necessity_report(&all, &f)? {
        let (e, big) = &r.violating_pair;
        println!(
            "{:?} < {:?}: dims {:?}, exact {}, contractible {}",
            e.basis(),
            big.basis(),
            r.complex.dims(),
            r.exact,
            r.contractible
        );
    }
    Ok(())
}
