//! Random complexes built from `0 -> M -> M -> 0` pieces, run through the full
//! theorem check; the homotopy certificate is printed for the first one.

use permcx::complexes::{check_theorem31, random_adds_complex, verify_homotopy};
use permcx::exactla::Field;
use permcx::groups::{ElemAbGroup, SubgroupCollection};

fn main() -> permcx::Result<()> {
    let g = ElemAbGroup::new(3, 2)?;
    let f = Field::prime(3)?;
    let h = SubgroupCollection::new(&g, vec![g.trivial_subgroup(), g.whole()])?;

    for seed in 0..5 {
        let c = random_adds_complex(&h, &f, 2, &[vec![1, 1], vec![0, 2]], seed)?;
        let report = check_theorem31(&h, &c)?;
        println!(
            "seed {seed}: dims {:?}, verdict {}",
            c.dims(),
            report.verdict.label()
        );
        if seed == 0 {
            let cert = report.contractibility.certificate.expect("contractible");
            verify_homotopy(&c, &cert)?;
            for (i, m) in cert.maps.iter().enumerate() {
                println!("  h^{} is {}x{}", i + 1, m.rows(), m.cols());
            }
        }
    }
    Ok(())
}
