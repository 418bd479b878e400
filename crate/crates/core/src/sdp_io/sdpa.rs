//! SDPA sparse (`.dat-s`) writer.
//!
//! SDPA solves `max F₀•Y  s.t.  F_i•Y = c_i, Y ⪰ 0`, which is the primal
//! form here with `Y = diag(Q_1, …, Q_N, LP)`. SDPA has no free cone, so
//! each free `d_j` becomes `d_j⁺ − d_j⁻` in a trailing diagonal (LP) block
//! of size `2·nfree`, and the objective `min cᵀd` becomes
//! `max (−c)ᵀd⁺ + cᵀd⁻`.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_traits::{ToPrimitive, Zero};

use super::primal::{Column, PrimalSdpData};
use crate::poly::Coefficient;

/// Shortest round-trip decimal of the nearest `f64`.
pub fn format_real(c: &Coefficient) -> String {
    format!("{:?}", c.to_f64().unwrap_or(f64::NAN))
}

pub fn export_sdpa_sparse(data: &PrimalSdpData) -> String {
    let mut out = String::new();
    let lp_block = (data.nfree > 0).then_some(data.blocks.len() + 1);
    if let Some(b) = lp_block {
        let _ = writeln!(
            out,
            "* {} free variables split as d = d+ - d- in diagonal block {b} (d_j+ at 2j-1, d_j- at 2j)",
            data.nfree
        );
    }
    let _ = writeln!(out, "{}", data.rows.len());
    let _ = writeln!(out, "{}", data.blocks.len() + usize::from(lp_block.is_some()));
    let mut sizes: Vec<String> = data.blocks.iter().map(|m| m.to_string()).collect();
    if lp_block.is_some() {
        sizes.push(format!("-{}", 2 * data.nfree));
    }
    let _ = writeln!(out, "{}", sizes.join(" "));
    let _ = writeln!(out, "{}", data.rhs.iter().map(format_real).collect::<Vec<_>>().join(" "));

    // (matno, block, i, j) -> value, 1-based indices, i <= j
    let mut entries: BTreeMap<(usize, usize, usize, usize), Coefficient> = BTreeMap::new();
    if let Some(b) = lp_block {
        for (k, c) in data.cost.iter().enumerate() {
            if !c.is_zero() {
                entries.insert((0, b, 2 * k + 1, 2 * k + 1), -c);
                entries.insert((0, b, 2 * k + 2, 2 * k + 2), c.clone());
            }
        }
    }
    for (r, row) in data.rows.iter().enumerate() {
        let matno = r + 1;
        for e in row {
            match data.column(e.col) {
                Some(Column::Free(k)) => {
                    let b = lp_block.expect("free column implies LP block");
                    entries.insert((matno, b, 2 * k + 1, 2 * k + 1), e.value.clone());
                    entries.insert((matno, b, 2 * k + 2, 2 * k + 2), -&e.value);
                }
                Some(Column::Psd { block, row, col }) if row <= col => {
                    entries.insert((matno, block + 1, row + 1, col + 1), e.value.clone());
                }
                _ => {}
            }
        }
    }
    for ((m, b, i, j), v) in &entries {
        let _ = writeln!(out, "{m} {b} {i} {j} {}", format_real(v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sdp_io::RowEntry;

    fn int(v: i64) -> Coefficient {
        Coefficient::from_integer(v.into())
    }

    #[test]
    fn one_by_one() {
        let data = PrimalSdpData {
            nfree: 0,
            free_labels: vec![],
            blocks: vec![1],
            block_monomials: vec![vec![vec![0]]],
            rows: vec![vec![RowEntry { col: 0, value: int(1) }]],
            rhs: vec![int(1)],
            cost: vec![],
        };
        assert_eq!(export_sdpa_sparse(&data), "1\n1\n1\n1.0\n1 1 1 1 1.0\n");
    }

    #[test]
    fn free_variable_split() {
        // Q11 - d = 1, min 3d
        let data = PrimalSdpData {
            nfree: 1,
            free_labels: vec![1],
            blocks: vec![1],
            block_monomials: vec![vec![vec![1]]],
            rows: vec![vec![RowEntry { col: 0, value: int(-1) }, RowEntry { col: 1, value: int(1) }]],
            rhs: vec![int(1)],
            cost: vec![int(3)],
        };
        let text = export_sdpa_sparse(&data);
        let lines: Vec<_> = text.lines().collect();
        assert!(lines[0].starts_with('*'));
        assert_eq!(&lines[1..], ["1", "2", "1 -2", "1.0", "0 2 1 1 -3.0", "0 2 2 2 3.0", "1 1 1 1 1.0", "1 2 1 1 -1.0", "1 2 2 2 1.0"]);
    }

    #[test]
    fn reals() {
        assert_eq!(format_real(&Coefficient::new(1.into(), 2.into())), "0.5");
        assert_eq!(format_real(&int(-7)), "-7.0");
        assert_eq!(format_real(&Coefficient::new(1.into(), 3.into())), "0.3333333333333333");
    }
}
