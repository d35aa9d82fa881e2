//! The Galois correspondence as an order-reversing bijection.
//!
//! Intermediate fields of the abelian extension `H/K` carry no field data
//! at all: a field node is exactly its fixing subgroup of `G = Gal(H/K)`,
//! and degrees, inclusions, composita and intersections all come from the
//! subgroup lattice.
//!
//! ```text
//! cargo run --example galois_duality
//! ```

use caplab::galois::{field_join, field_meet, restriction_order, FieldNode};
use caplab::group::{cyclic_span, enumerate_subgroups, PGroupType};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = PGroupType::from_spec("3:1,1")?;
    println!("G = {} of order {}", g, g.order());

    // round trip: U -> H^U -> Gal(H/H^U) is the identity on subgroups
    for u in enumerate_subgroups(&g)? {
        let field = FieldNode::fixed_field(u.clone());
        assert_eq!(*field.fixing_group(), u);
        println!("  fixer {u:?} <-> field of degree {}", field.degree());
    }

    // order reversal: smaller fixing subgroups mean larger fields
    let l1 = FieldNode::fixed_field(cyclic_span(&g.element(&[1, 0])?));
    let l2 = FieldNode::fixed_field(cyclic_span(&g.element(&[0, 1])?));
    let h = FieldNode::fixed_field(g.trivial_subgroup());
    let k = FieldNode::fixed_field(g.whole());
    println!("compositum of the two degree-3 fields = H? {}", field_join(&l1, &l2)? == h);
    println!("intersection of the two degree-3 fields = K? {}", field_meet(&l1, &l2)? == k);

    // a Galois element generates Gal(L/K) when its restriction has full order
    let diag = g.element(&[1, 1])?;
    println!(
        "restriction of (1,1) to the field fixed by <(0,1)> has order {} = [L:K] {}",
        restriction_order(&diag, &l2),
        l2.degree()
    );
    Ok(())
}
