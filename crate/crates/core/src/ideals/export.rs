use std::fmt::Write;

use super::level_set::LevelSet;
use crate::error::{Error, Result};
use crate::farey::tree::{children, label_u64, width};

pub const DOT_DEPTH_LIMIT: u32 = 10;

/// Graphviz rendering of the diagram to the depth of `quotient`, with the
/// quotient vertices light and the ideal vertices dark.
pub fn to_dot(quotient: &LevelSet) -> Result<String> {
    if quotient.depth > DOT_DEPTH_LIMIT {
        return Err(Error::FloorTooLarge { floor: quotient.depth, limit: DOT_DEPTH_LIMIT });
    }
    let mut s = String::new();
    writeln!(s, "digraph G {{").unwrap();
    writeln!(s, "  rankdir=TB;").unwrap();
    writeln!(s, "  node [shape=circle, style=filled, fontsize=10];").unwrap();
    for n in 0..=quotient.depth {
        writeln!(s, "  subgraph floor{n} {{ rank=same;").unwrap();
        for k in 0..=width(n) {
            let (p, q) = label_u64(n, k)?;
            let (class, color) = if quotient.contains(n, k) {
                ("quotient", "lightgray")
            } else {
                ("ideal", "dimgray")
            };
            writeln!(
                s,
                "    v{n}_{k} [label=\"{p}/{q}\", class=\"{class}\", fillcolor=\"{color}\"];"
            )
            .unwrap();
        }
        writeln!(s, "  }}").unwrap();
    }
    for n in 0..quotient.depth {
        for k in 0..=width(n) {
            for c in children(n, k) {
                let inside = quotient.contains(n, k) && quotient.contains(n + 1, c);
                let style = if inside { "bold" } else { "solid" };
                writeln!(s, "  v{n}_{k} -> v{}_{c} [arrowhead=none, style={style}];", n + 1).unwrap();
            }
        }
    }
    writeln!(s, "}}").unwrap();
    Ok(s)
}
