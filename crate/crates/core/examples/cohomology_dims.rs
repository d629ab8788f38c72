//! Betti numbers of the trivial module and cohomology of permutation modules.

use permcx::cohomology::{minimal_free_resolution, trivial_resolution};
use permcx::exactla::Field;
use permcx::gmod::GModule;
use permcx::groups::{all_subgroups, ElemAbGroup};

fn main() -> permcx::Result<()> {
    for (p, r) in [(2, 2), (3, 2), (2, 3)] {
        let g = ElemAbGroup::new(p, r)?;
        let f = Field::prime(p)?;
        let res = minimal_free_resolution(&GModule::trivial(&g, &f, 1)?, 6)?;
        println!(
            "C_{p}^{r}: Betti numbers {:?}, minimal {}",
            res.ranks,
            res.is_minimal()
        );
    }

    let g = ElemAbGroup::new(2, 3)?;
    let f = Field::prime(2)?;
    let res = trivial_resolution(&g, &f, 5)?;
    for e in all_subgroups(&g, None)?.iter() {
        let dims = res.cohomology_dims(&GModule::permutation(e, &f)?)?;
        println!("k[G/E], E = {:?} (rank {}): {dims:?}", e.basis(), e.rank());
    }
    Ok(())
}
