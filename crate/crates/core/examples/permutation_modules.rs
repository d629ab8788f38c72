//! Permutation modules, induction, inflation and spaces of equivariant maps.

use permcx::exactla::{Field, Matrix};
use permcx::gmod::{hom_space, GModule};
use permcx::groups::{all_subgroups, ElemAbGroup, Subgroup};

fn main() -> permcx::Result<()> {
    let g = ElemAbGroup::new(2, 2)?;
    let f = Field::prime(2)?;
    let line = Subgroup::from_generators(&g, &[vec![0, 1]])?;

    let m = GModule::permutation(&line, &f)?;
    println!(
        "k[G/E] for E = <(0,1)>: generator actions {:?}",
        m.action().iter().map(Matrix::to_rows).collect::<Vec<_>>()
    );

    // the regular module of C_2 pulled back along (a, b) -> a is the same module
    let c2 = ElemAbGroup::new(2, 1)?;
    let regular = GModule::free(&c2, &f, 1)?;
    let quotient = Matrix::from_rows(&f, &[vec![1], vec![0]])?;
    let inflated = regular.inflate(&g, &quotient)?;
    println!("inflation matches: {}", inflated.action() == m.action());

    let induced = GModule::trivial(&c2, &f, 1)?.induce(&g, line.basis())?;
    println!("induction matches: {}", induced.action() == m.action());

    for e in all_subgroups(&g, None)?.iter() {
        for e2 in all_subgroups(&g, None)?.iter() {
            let a = GModule::permutation(e, &f)?;
            let b = GModule::permutation(e2, &f)?;
            print!("{:>2}", hom_space(&a, &b)?.len());
        }
        println!();
    }
    Ok(())
}
