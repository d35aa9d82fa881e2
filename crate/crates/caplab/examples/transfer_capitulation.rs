//! Capitulation through the transfer homomorphism.
//!
//! A finite group Γ models the Galois group of the second Hilbert field;
//! subgroups between Γ' and Γ are the subfields of the first, and the
//! class-extension map is the Verlagerung Γ/Γ' -> Δ/Δ'. Two classical
//! statements act as sharp correctness tests: the divisibility
//! [Γ:Δ] | |ker Ver| and the triviality of the transfer to Γ' on
//! metabelian groups.
//!
//! ```text
//! cargo run --example transfer_capitulation
//! ```

use caplab::transfer::{
    capitulation_kernel, derived_subgroup, miyake_audit, named_group, pit_audit,
    psi_vs_transfer_audit, transfer, AbelianQuotient, SubgroupT,
};
use caplab::psi::Strategy;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["D8", "Q8", "M16", "Heis3", "M27", "Heis5"] {
        let g = named_group(name)?;
        let whole = g.full_subgroup();
        let derived = derived_subgroup(&g, &whole);
        let ab = AbelianQuotient::new(&g, &whole, &derived)?;
        let pit = pit_audit(&g)?;
        let (rows, _) = miyake_audit(&g, 128)?;
        println!(
            "{name}: order {}, Γ' of order {}, Γ/Γ' = {} | transfer to Γ' trivial: {} | divisibility on {} subgroups: {}",
            g.order(),
            derived.order(),
            ab.ty,
            pit.transfer_trivial,
            rows.len(),
            if rows.iter().all(|r| r.ok) { "pass" } else { "FAIL" }
        );
    }

    // an explicit kernel: D8 over its rotation subgroup
    let d8 = named_group("D8")?;
    let r = (1..8u16).find(|&x| d8.element_order(x) == 4).expect("a rotation of order 4");
    let rot = SubgroupT::generated(&d8, &[r]);
    let map = transfer(&d8, &rot)?;
    println!(
        "\nD8 -> rotation subgroup: transfer matrix {:?} (transversal-independent: {}), kernel order {}",
        map.matrix,
        map.transversal_independent,
        capitulation_kernel(&d8, &rot)?.order()
    );

    // the transfer-versus-psi comparison on the Heisenberg group
    println!("\nHeis3, class by class:");
    for row in psi_vs_transfer_audit(&named_group("Heis3")?, Strategy::AdaptedBasis)? {
        println!(
            "  class {}: capitulates in its canonical field: {}, lift to the splitting side preserves order: {}",
            row.class, row.capitulates, row.lift_order_preserved
        );
    }
    Ok(())
}
