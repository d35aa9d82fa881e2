//! The canonical map from subgroups to subfields, audited per instance.
//!
//! For cyclic groups the map is a perfect order isomorphism of lattices.
//! On (Z/3)^2 the two complement rules behave very differently: the
//! adapted-basis rule collapses three maximal cyclic subgroups onto one
//! field (so the inverse reports zero or three preimages), while the
//! pairing-annihilator rule is a bijection. The engine measures all of
//! this instead of assuming it.
//!
//! ```text
//! cargo run --example psi_lattice_map
//! ```

use caplab::galois::{ArtinIso, FieldNode};
use caplab::group::{cyclic_span, enumerate_subgroups, PGroupType};
use caplab::psi::{PsiEngine, PsiError, Strategy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // ground truth: a cyclic tower
    let z27 = PGroupType::from_spec("3:3")?;
    let artin = ArtinIso::identity(&z27);
    let engine = PsiEngine::new(&artin, Strategy::AdaptedBasis);
    println!("A = {} (cyclic): psi is an order isomorphism", z27);
    for s in enumerate_subgroups(&z27)? {
        let r = engine.psi_subgroup(&s);
        println!(
            "  psi({s:?}) = field of degree {:<3} degree-ok={} independent={}",
            r.field.degree(),
            r.degree_ok,
            r.independence_ok
        );
        assert_eq!(engine.psi_inverse(&r.field, z27.order())?, s);
    }

    // the rank-2 stress test
    let a = PGroupType::from_spec("3:1,1")?;
    let artin = ArtinIso::identity(&a);
    for strategy in Strategy::ALL {
        let engine = PsiEngine::new(&artin, strategy);
        println!("\nA = {} under {}:", a, strategy.name());
        for s in enumerate_subgroups(&a)? {
            let r = engine.psi_subgroup(&s);
            println!("  psi({s:?}) fixed by {:?}", r.field.fixing_group());
        }
        // probe the inverse at one degree-3 field
        let probe = FieldNode::fixed_field(cyclic_span(&a.element(&[0, 1])?));
        match engine.psi_inverse(&probe, a.order()) {
            Ok(s) => println!("  inverse at the probe field: unique preimage {s:?}"),
            Err(PsiError::NotBijectiveAt { count, preimages, .. }) => {
                println!("  inverse at the probe field: {count} preimages {preimages:?}")
            }
            Err(e) => return Err(e.into()),
        }
    }

    // a capitulation witness in the strengthened Hilbert 94 sense
    let engine = PsiEngine::new(&artin, Strategy::PairingAnnihilator);
    let field = engine.psi_max(&a.element(&[1, 0])?)?.field;
    let w = engine.hilbert94_witness(&field, a.order())?;
    println!(
        "\nwitness for the degree-{} field: class {:?} (order matches: {}, generates: {}, maximal cyclic: {})",
        field.degree(),
        w.witness,
        w.order_matches,
        w.generates,
        w.maximal_cyclic
    );
    Ok(())
}
