//! Lattice diagrams as DOT and JSON.
//!
//! The export is byte-stable: node order follows the canonical subgroup
//! enumeration and every psi edge carries its audit flag, so diagrams
//! double as regression goldens.
//!
//! ```text
//! cargo run --example lattice_export > lattice.dot
//! dot -Tsvg lattice.dot -o lattice.svg   # with graphviz installed
//! ```

use caplab::export::{lattice_dot, lattice_json};
use caplab::group::PGroupType;
use caplab::psi::Strategy;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ty = PGroupType::from_spec("3:1,1")?;
    print!("{}", lattice_dot(&ty, Strategy::AdaptedBasis)?);

    // same content as JSON, on stderr to keep stdout valid DOT
    eprint!("{}", lattice_json(&ty, Strategy::PairingAnnihilator)?);
    Ok(())
}
