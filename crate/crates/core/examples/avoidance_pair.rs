//! Classes vanishing on lower-rank subgroups and regular on the top-rank ones.

use permcx::cohomology::{find_avoidance_pair, restrict_class, verify_avoidance_pair};
use permcx::exactla::Field;
use permcx::groups::{all_subgroups, ElemAbGroup, Subgroup, SubgroupCollection};

fn main() -> permcx::Result<()> {
    let g = ElemAbGroup::new(2, 3)?;
    let f = Field::prime(2)?;
    let plane = |a: [u32; 3], b: [u32; 3]| Subgroup::from_generators(&g, &[a.to_vec(), b.to_vec()]);
    let upper = SubgroupCollection::new(
        &g,
        vec![plane([1, 0, 0], [0, 1, 0])?, plane([0, 1, 0], [0, 0, 1])?],
    )?;
    let lower =
        SubgroupCollection::new(&g, vec![Subgroup::from_generators(&g, &[vec![1, 1, 1]])?])?;

    let pair = find_avoidance_pair(&upper, &lower, &f)?;
    println!(
        "u = {}, v = {} over F_{}^{}",
        pair.u, pair.v, pair.field_used.p, pair.field_used.e
    );
    for e in upper.iter() {
        let u = restrict_class(&pair.u.expand(&g)?, e)?;
        let v = restrict_class(&pair.v.expand(&g)?, e)?;
        println!("  on {:?}: u -> {u}, v -> {v}", e.basis());
    }
    println!(
        "verified: {}",
        verify_avoidance_pair(&pair.u, &pair.v, &upper, &lower)?.is_ok()
    );

    // all seven planes at once: no form over F_2 avoids them, so the field grows
    let planes = all_subgroups(&g, Some(2))?;
    let none = SubgroupCollection::new(&g, vec![])?;
    let pair = find_avoidance_pair(&planes, &none, &f)?;
    println!(
        "all planes: u = {}, v = {} over F_{}^{}",
        pair.u, pair.v, pair.field_used.p, pair.field_used.e
    );
    Ok(())
}
