//! Deterministic lattice diagrams: the subgroup lattice, the field
//! lattice, and the `psi` edges between them, as DOT or JSON.

use serde_json::json;

use crate::galois::{covers, ArtinIso};
use crate::group::{enumerate_subgroups_bounded, GroupError, PGroupType, Subgroup, DEFAULT_ENUM_BOUND};
use crate::psi::{PsiEngine, Strategy};

fn label(s: &Subgroup) -> String {
    format!("{s:?}")
}

struct LatticeData {
    subs: Vec<Subgroup>,
    /// psi value per subgroup: index of the fixing subgroup, or an error tag
    psi: Vec<Result<usize, String>>,
    degree_flags: Vec<Option<bool>>,
}

fn lattice_data(ty: &PGroupType, strategy: Strategy) -> Result<LatticeData, GroupError> {
    let subs = enumerate_subgroups_bounded(ty, DEFAULT_ENUM_BOUND)?;
    let artin = ArtinIso::identity(ty);
    let engine = PsiEngine::new(&artin, strategy);
    let index_of = |target: &Subgroup| subs.iter().position(|s| s == target).expect("enumerated");
    let mut psi = Vec::with_capacity(subs.len());
    let mut degree_flags = Vec::with_capacity(subs.len());
    for s in &subs {
        let r = engine.psi_subgroup(s);
        if r.defined_on_all {
            psi.push(Ok(index_of(r.field.fixing_group())));
            degree_flags.push(Some(r.degree_ok));
        } else {
            psi.push(Err(format!(
                "undefined at {}",
                r.undefined_at
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )));
            degree_flags.push(None);
        }
    }
    Ok(LatticeData { subs, psi, degree_flags })
}

/// DOT rendering: two clusters (subgroups and fields), Hasse edges inside
/// each, dashed `psi` edges across, every edge annotated with its audit
/// flag. Byte-stable across runs.
pub fn lattice_dot(ty: &PGroupType, strategy: Strategy) -> Result<String, GroupError> {
    let data = lattice_data(ty, strategy)?;
    let whole = ty.order();
    let mut out = String::new();
    out.push_str("digraph capitulation_lattice {\n");
    out.push_str(&format!(
        "  label=\"{} [{}]\";\n  rankdir=BT;\n",
        ty.spec_string(),
        strategy.name()
    ));
    out.push_str("  subgraph cluster_subgroups {\n    label=\"Sub(A)\";\n");
    for (i, s) in data.subs.iter().enumerate() {
        out.push_str(&format!("    s{} [label=\"{} |{}|\"];\n", i, label(s), s.order()));
    }
    out.push_str("  }\n");
    out.push_str("  subgraph cluster_fields {\n    label=\"Sub(H/K)\";\n");
    for (i, s) in data.subs.iter().enumerate() {
        out.push_str(&format!(
            "    f{} [label=\"deg {} fix {}\"];\n",
            i,
            whole / s.order(),
            label(s)
        ));
    }
    out.push_str("  }\n");
    for (i, a) in data.subs.iter().enumerate() {
        for (j, b) in data.subs.iter().enumerate() {
            if covers(a, b) {
                out.push_str(&format!("  s{i} -> s{j};\n"));
                // field inclusions reverse: the field of the BIGGER fixer
                // sits below
                out.push_str(&format!("  f{j} -> f{i};\n"));
            }
        }
    }
    for (i, value) in data.psi.iter().enumerate() {
        match value {
            Ok(f) => {
                let flag = match data.degree_flags[i] {
                    Some(true) => "ok",
                    Some(false) => "degree-mismatch",
                    None => "unknown",
                };
                out.push_str(&format!(
                    "  s{i} -> f{f} [style=dashed, label=\"psi {flag}\"];\n"
                ));
            }
            Err(reason) => {
                out.push_str(&format!("  // psi undefined at s{i}: {reason}\n"));
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

/// JSON rendering with the same content as the DOT export.
pub fn lattice_json(ty: &PGroupType, strategy: Strategy) -> Result<String, GroupError> {
    let data = lattice_data(ty, strategy)?;
    let whole = ty.order();
    let subgroups: Vec<_> = data
        .subs
        .iter()
        .enumerate()
        .map(|(i, s)| json!({ "id": i, "gens": label(s), "order": s.order() }))
        .collect();
    let fields: Vec<_> = data
        .subs
        .iter()
        .enumerate()
        .map(|(i, s)| json!({ "id": i, "fixing": label(s), "degree": whole / s.order() }))
        .collect();
    let mut covers_list = Vec::new();
    for (i, a) in data.subs.iter().enumerate() {
        for (j, b) in data.subs.iter().enumerate() {
            if covers(a, b) {
                covers_list.push(json!({ "from": i, "to": j }));
            }
        }
    }
    let psi_edges: Vec<_> = data
        .psi
        .iter()
        .enumerate()
        .map(|(i, v)| match v {
            Ok(f) => json!({
                "from": i,
                "to": f,
                "degree_ok": data.degree_flags[i],
            }),
            Err(reason) => json!({ "from": i, "to": null, "error": reason }),
        })
        .collect();
    let doc = json!({
        "group": ty.spec_string(),
        "strategy": strategy.name(),
        "subgroups": subgroups,
        "fields": fields,
        "covers": covers_list,
        "psi_edges": psi_edges,
    });
    Ok(serde_json::to_string_pretty(&doc).expect("serializes") + "\n")
}
