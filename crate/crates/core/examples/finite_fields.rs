//! Arithmetic in small extension fields.

use permcx::exactla::{find_irreducible, Field, Matrix};

fn main() -> permcx::Result<()> {
    for (p, e) in [(2, 2), (2, 3), (3, 2)] {
        println!("F_{}^{e}: modulus {:?}", p, find_irreducible(p, e)?);
    }

    let f4 = Field::standard(2, 2)?;
    let t = f4.from_coefficients(&[0, 1])?;
    println!("in F_4, t * t = {}", f4.format(f4.mul(t, t)));
    println!("in F_4, 1 / t = {}", f4.format(f4.inv(t)?));

    let f9 = Field::standard(3, 2)?;
    let a = Matrix::from_rows(&f9, &[vec![1, 3], vec![4, 2]])?;
    println!("rank over F_9: {}", a.rank());
    match a.inverse()? {
        Some(inv) => println!("inverse rows: {:?}", inv.to_rows()),
        None => println!("singular"),
    }
    Ok(())
}
