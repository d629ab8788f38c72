//! The periodicity complex of C_p: exact, not contractible.

use permcx::cohomology::e1_dimension_table;
use permcx::complexes::is_contractible;
use permcx::counterexamples::periodicity_complex;
use permcx::exactla::Field;

fn main() -> permcx::Result<()> {
    for p in [2, 3, 5] {
        let c = periodicity_complex(p, &Field::prime(p)?)?;
        let exact = c.is_exact();
        let report = is_contractible(&c)?;
        println!(
            "p = {p}: dims {:?}, homology {:?}, contractible {}",
            c.dims(),
            exact.homology_dims,
            report.contractible
        );
    }

    let c = periodicity_complex(2, &Field::prime(2)?)?;
    println!("dim H^j(C_2, C^i), j = 0..4:");
    for (j, row) in e1_dimension_table(&c, 4)?.iter().enumerate() {
        println!("  {j}: {row:?}");
    }
    Ok(())
}
