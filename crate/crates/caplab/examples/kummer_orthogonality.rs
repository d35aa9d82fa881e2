//! Kummer duality and the orthogonality relation it induces.
//!
//! The pairing takes values in Z/p^m written additively (the exponent of
//! the fixed root of unity), so "the pairing is trivial" reads "the
//! residue is 0" and everything stays exact. Orthogonality of two maximal
//! classes can be read off two ways — membership in the canonical
//! complement, or triviality of the pairing against the field's radical —
//! and the example shows where the two readings agree and where the
//! adapted rule breaks their symmetry.
//!
//! ```text
//! cargo run --example kummer_orthogonality
//! ```

use caplab::galois::ArtinIso;
use caplab::group::{enumerate_subgroups, PGroupType};
use caplab::kummer::{
    genset_counterexample, is_orthogonal, maximal_orthogonal_set, KummerPairing, Side,
};
use caplab::psi::{PsiEngine, Strategy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ty = PGroupType::from_spec("3:2,1")?;
    let pairing = KummerPairing::standard(&ty);
    println!("standard pairing on {} (values mod {}):", ty, pairing.modulus());
    for g in [[1u64, 0], [0, 1], [3, 1]] {
        for b in [[1u64, 0], [0, 1]] {
            let g = ty.element(&g)?;
            let b = ty.element(&b)?;
            println!("  <{g}, {b}> = {}", pairing.pair(&g, &b)?);
        }
    }

    // annihilators implement the duality: |S| · |ann(S)| = |G|
    for s in enumerate_subgroups(&ty)? {
        let ann = pairing.annihilator(&s, Side::Right);
        assert_eq!(s.order() * ann.order(), ty.order());
    }
    println!("|S| · |ann(S)| = |G| for all {} subgroups", enumerate_subgroups(&ty)?.len());

    // orthogonality on (Z/3)^2, both characterizations
    let a2 = PGroupType::from_spec("3:1,1")?;
    let artin = ArtinIso::identity(&a2);
    let pairing2 = KummerPairing::standard(&a2);
    for strategy in Strategy::ALL {
        let engine = PsiEngine::new(&artin, strategy);
        let a = a2.element(&[0, 1])?;
        let b = a2.element(&[2, 1])?;
        let fwd = is_orthogonal(&pairing2, &engine, &artin, &a, &b)?;
        let bwd = is_orthogonal(&pairing2, &engine, &artin, &b, &a)?;
        println!(
            "[{}] {a} ⊥ {b}: co={} co1={} | swapped: co={} co1={} (symmetric: {})",
            strategy.name(),
            fwd.co,
            fwd.co1,
            bwd.co,
            bwd.co1,
            fwd.co == bwd.co
        );
    }

    // maximal orthogonal sets always have p-rank many members
    for spec in ["3:1,1", "3:3,1", "2:2,1,1"] {
        let t = PGroupType::from_spec(spec)?;
        let artin = ArtinIso::identity(&t);
        let engine = PsiEngine::new(&artin, Strategy::AdaptedBasis);
        let pairing = KummerPairing::standard(&t);
        let set = maximal_orthogonal_set(&pairing, &engine, &artin, &t);
        let members: Vec<String> = set.members.iter().map(|m| m.to_string()).collect();
        println!(
            "{spec}: orthogonal set {{{}}} — size {} = p-rank {}, generates: {}",
            members.join(", "),
            set.members.len(),
            t.rank(),
            set.generates
        );
    }

    // not every minimal generating set is orthogonal
    for p in [2u64, 3, 5] {
        let c = genset_counterexample(p)?;
        println!(
            "p={p}: a={} a'={} b=a+a'={}: a⊥a' {}, {{a,b}} minimal generating set {}, a⊥b {}",
            c.a, c.a_prime, c.b, c.a_orth_aprime.co, c.minimal_genset, c.a_orth_b.co1
        );
    }
    Ok(())
}
