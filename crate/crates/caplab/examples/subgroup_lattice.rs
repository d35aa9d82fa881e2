//! Exact subgroup lattices of finite abelian p-groups.
//!
//! Groups are written in the catalog form `p:e1,e2,...` (so `3:2,1` is
//! Z/9 x Z/3). Every subgroup has one canonical representation, so the
//! enumeration below is duplicate-free by construction.
//!
//! ```text
//! cargo run --example subgroup_lattice
//! ```

use caplab::group::{enumerate_subgroups, p_rank, PGroupType};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for spec in ["3:2", "2:1,1", "2:2,1", "3:3,1"] {
        let ty = PGroupType::from_spec(spec)?;
        let subs = enumerate_subgroups(&ty)?;
        println!(
            "{} = {} (order {}, p-rank {}): {} subgroups",
            spec,
            ty,
            ty.order(),
            p_rank(&ty),
            subs.len()
        );
        for s in &subs {
            println!(
                "  |S| = {:>3}  A/S = {:<12}  S = {:?}",
                s.order(),
                s.quotient_invariants().to_string(),
                s
            );
        }
        println!();
    }

    // the lattice operations are exact and canonical
    let ty = PGroupType::from_spec("2:2,1")?;
    let s = caplab::group::cyclic_span(&ty.element(&[1, 1])?);
    let t = caplab::group::cyclic_span(&ty.element(&[1, 0])?);
    let meet = caplab::intersect(&s, &t)?;
    let join = caplab::join(&s, &t)?;
    println!("in {}: {s:?} ∩ {t:?} = {meet:?},  {s:?} · {t:?} = {join:?}", ty);
    Ok(())
}
