//! Canonical complements of maximal cyclic subgroups — and the exact
//! point where the construction stops working.
//!
//! A maximal-order class always has a complement, and two deterministic
//! rules produce one: the adapted-basis projection and the annihilator
//! under the standard pairing. For merely p-indivisible classes the
//! guarantee evaporates: in Z/27 x Z/3 the class (3,1) is p-indivisible
//! yet an exhaustive search over all 14 subgroups certifies that no
//! complement of its span exists.
//!
//! ```text
//! cargo run --example canonical_complement
//! ```

use caplab::group::{cyclic_span, elem_order, enumerate_subgroups, p_height, PGroupType};
use caplab::psi::{canonical_complement, find_complement_exhaustive, Strategy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ty = PGroupType::from_spec("3:3,1")?;
    println!("A = {} with exponent {}", ty, ty.exponent());

    for coords in [[1u64, 0], [1, 1], [4, 2]] {
        let a = ty.element(&coords)?;
        println!("maximal class {a} (order {}):", elem_order(&a));
        for strategy in Strategy::ALL {
            match canonical_complement(&a, strategy) {
                Ok(c) => println!("  {:<20} c(a) = {c:?}", strategy.name()),
                Err(e) => println!("  {:<20} {e}", strategy.name()),
            }
        }
    }

    // the hypothesis gap: p-indivisible is weaker than maximal order
    let gap = ty.element(&[3, 1])?;
    println!(
        "\nclass {gap}: height {:?}, order {} < exponent {}",
        p_height(&gap),
        elem_order(&gap),
        ty.exponent()
    );
    println!("both rules refuse it:");
    for strategy in Strategy::ALL {
        println!("  {:<20} {}", strategy.name(), canonical_complement(&gap, strategy).unwrap_err());
    }
    let subs = enumerate_subgroups(&ty)?;
    match find_complement_exhaustive(&cyclic_span(&gap), &subs) {
        Some(c) => println!("unexpected complement {c:?}"),
        None => println!(
            "exhaustive search over all {} subgroups: no complement of <{gap}> exists,\n\
             because Z/9 is not a direct summand of Z/27 x Z/3",
            subs.len()
        ),
    }

    // a p = 2 wrinkle: the pairing rule can fail on isotropic classes
    let k4 = PGroupType::from_spec("2:1,1")?;
    let iso = k4.element(&[1, 1])?;
    println!(
        "\nin {}: pairing rule on {iso} -> {}",
        k4,
        canonical_complement(&iso, Strategy::PairingAnnihilator).unwrap_err()
    );
    println!(
        "adapted rule still works: c({iso}) = {:?}",
        canonical_complement(&iso, Strategy::AdaptedBasis)?
    );
    Ok(())
}
