//! Graphviz DOT emission for the extension lattice.

use std::fmt::Write as _;

use quasilocal::{enumerate_extensions, norm_group, FieldSpec, FiniteExtension, SigmaClass};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LatticeFilter {
    All,
    ClassFields,
}

/// The extension lattice up to a degree bound as a DOT digraph: one
/// node per class in enumeration order, one edge per covering
/// embedding.  Class-field filtering keeps the representative classes
/// and adds their norm-subgroup index to the label.
pub fn lattice_dot(
    spec: &FieldSpec,
    max_degree: u64,
    filter: LatticeFilter,
) -> Result<String, String> {
    let classes = enumerate_extensions(spec, max_degree).map_err(|e| e.to_string())?;
    let nodes: Vec<&FiniteExtension> = classes
        .iter()
        .filter(|x| match filter {
            LatticeFilter::All => true,
            LatticeFilter::ClassFields => x.sigma_class(spec) != SigmaClass::Neither,
        })
        .collect();

    let strictly_below = |x: &FiniteExtension, y: &FiniteExtension| x != y && x.embeds_in(y);

    let mut out = String::from("digraph extension_lattice {\n");
    for (i, x) in nodes.iter().enumerate() {
        let reality = if x.reality().is_real() { "real" } else { "nonreal" };
        let mut label = format!("deg {} {} {}", x.degree(), reality, x.sigma_class(spec));
        if filter == LatticeFilter::ClassFields {
            write!(label, " idx {}", norm_group(spec, x).index()).expect("write to string");
        }
        writeln!(out, "  n{i} [label=\"{label}\"];").expect("write to string");
    }
    for (i, x) in nodes.iter().enumerate() {
        for (j, y) in nodes.iter().enumerate() {
            if !strictly_below(x, y) {
                continue;
            }
            let covering = !nodes
                .iter()
                .any(|z| strictly_below(x, z) && strictly_below(z, y));
            if covering {
                writeln!(out, "  n{i} -> n{j};").expect("write to string");
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}
