//! CPLEX LP export for the covering-style variants.

use std::fmt::Write;

use snarkdom::graph::vertex_label;
use snarkdom::{FlowerSnark, Variant};

/// Variants with a plain 0/1 covering formulation.
pub const LP_VARIANTS: [Variant; 4] = [
    Variant::Domination,
    Variant::Independent,
    Variant::TwoDomination,
    Variant::Total,
];

const TERMS_PER_LINE: usize = 8;

/// `x_a3` for vertex `a^3`.
pub fn var_name(v: usize) -> String {
    format!("x_{}", vertex_label(v).replace('^', ""))
}

fn row_name(v: usize) -> String {
    vertex_label(v).replace('^', "")
}

/// Renders the model, or `None` for a variant without a covering
/// formulation.
pub fn render_lp(g: &FlowerSnark, variant: Variant) -> Option<String> {
    if !LP_VARIANTS.contains(&variant) {
        return None;
    }
    let nv = g.num_vertices();
    let mut out = String::new();
    writeln!(out, "\\ {variant} on the flower snark J_{}", g.n()).unwrap();
    writeln!(out, "Minimize").unwrap();
    let vars: Vec<String> = (0..nv).map(var_name).collect();
    for (i, chunk) in vars.chunks(TERMS_PER_LINE).enumerate() {
        let body = chunk.join(" + ");
        if i == 0 {
            writeln!(out, " obj: {body}").unwrap();
        } else {
            writeln!(out, "   + {body}").unwrap();
        }
    }
    writeln!(out, "Subject To").unwrap();
    for v in 0..nv {
        let nb: Vec<String> = g.neighbors(v).iter().map(|&u| var_name(u)).collect();
        let line = match variant {
            Variant::Total => format!(" cover_{}: {} >= 1", row_name(v), nb.join(" + ")),
            Variant::TwoDomination => format!(
                " cover_{}: {} + 2 {} >= 2",
                row_name(v),
                nb.join(" + "),
                var_name(v)
            ),
            _ => format!(
                " cover_{}: {} + {} >= 1",
                row_name(v),
                var_name(v),
                nb.join(" + ")
            ),
        };
        writeln!(out, "{line}").unwrap();
    }
    if variant == Variant::Independent {
        for (u, v) in g.edges() {
            writeln!(
                out,
                " edge_{}_{}: {} + {} <= 1",
                row_name(u),
                row_name(v),
                var_name(u),
                var_name(v)
            )
            .unwrap();
        }
    }
    writeln!(out, "Binary").unwrap();
    for name in &vars {
        writeln!(out, " {name}").unwrap();
    }
    writeln!(out, "End").unwrap();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use snarkdom::build_flower_snark;

    fn section<'a>(lp: &'a str, from: &str, to: &str) -> Vec<&'a str> {
        lp.lines()
            .skip_while(|l| *l != from)
            .skip(1)
            .take_while(|l| *l != to)
            .collect()
    }

    #[test]
    fn domination_rows_and_binaries() {
        let g = build_flower_snark(3).unwrap();
        let lp = render_lp(&g, Variant::Domination).unwrap();
        assert_eq!(section(&lp, "Binary", "End").len(), 12);
        let rows = section(&lp, "Subject To", "Binary");
        assert_eq!(rows.len(), 12);
        assert_eq!(rows[1], " cover_a1: x_a1 + x_b1 + x_c1 + x_d1 >= 1");
    }

    #[test]
    fn independent_adds_edge_rows() {
        let g = build_flower_snark(3).unwrap();
        let lp = render_lp(&g, Variant::Independent).unwrap();
        let rows = section(&lp, "Subject To", "Binary");
        assert_eq!(rows.iter().filter(|r| r.contains(">= 1")).count(), 12);
        assert_eq!(rows.iter().filter(|r| r.contains("<= 1")).count(), 18);
    }

    #[test]
    fn two_domination_and_total_rows() {
        let g = build_flower_snark(4).unwrap();
        let two = render_lp(&g, Variant::TwoDomination).unwrap();
        assert!(two.contains(" cover_b1: x_a1 + x_b2 + x_b4 + 2 x_b1 >= 2"));
        let total = render_lp(&g, Variant::Total).unwrap();
        assert!(total.contains(" cover_b1: x_a1 + x_b2 + x_b4 >= 1"));
    }

    #[test]
    fn objective_lists_every_variable_once() {
        let g = build_flower_snark(5).unwrap();
        let lp = render_lp(&g, Variant::Total).unwrap();
        let obj: String = section(&lp, "Minimize", "Subject To").join(" ");
        assert_eq!(obj.matches("x_").count(), 20);
    }

    #[test]
    fn refuses_non_covering_variants() {
        let g = build_flower_snark(3).unwrap();
        for v in [
            Variant::Connected,
            Variant::Secure,
            Variant::WeakRoman,
            Variant::Upper,
        ] {
            assert!(render_lp(&g, v).is_none());
        }
    }
}
