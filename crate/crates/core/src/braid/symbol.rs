//! Cube symbols `S(λ, σ)`: one column per block of `λ`, each block's
//! elements stacked bottom to top in `σ`-order.

use crate::braid::partition::Partition;
use crate::error::{Error, Result};

/// Columns of the symbol, bottom entry first.
pub fn symbol_columns(lambda: &Partition, sigma: &Partition) -> Result<Vec<Vec<usize>>> {
    if sigma.rank() != 0 || !lambda.is_refined_by(sigma) {
        return Err(Error::NotSubdivision(sigma.to_string(), lambda.to_string()));
    }
    Ok(lambda
        .blocks()
        .into_iter()
        .map(|mut b| {
            b.sort_by_key(|&e| sigma.values()[e - 1]);
            b
        })
        .collect())
}

/// Box-drawing rendering; columns are bottom-aligned.
pub fn render_symbol(lambda: &Partition, sigma: &Partition) -> Result<String> {
    let columns = symbol_columns(lambda, sigma)?;
    let width = columns.iter().flatten().map(|e| e.to_string().len()).max().unwrap_or(1);
    let height = columns.iter().map(Vec::len).max().unwrap_or(0);
    let bar = "─".repeat(width);
    let blank = " ".repeat(width + 2);
    let mut lines = Vec::new();
    for row in (0..height).rev() {
        let mut top = Vec::new();
        let mut mid = Vec::new();
        let mut bottom = Vec::new();
        for col in &columns {
            match col.get(row) {
                Some(e) => {
                    top.push(format!("┌{bar}┐"));
                    mid.push(format!("│{e:>width$}│"));
                    bottom.push(format!("└{bar}┘"));
                }
                None => {
                    top.push(blank.clone());
                    mid.push(blank.clone());
                    bottom.push(blank.clone());
                }
            }
        }
        for l in [top, mid, bottom] {
            lines.push(l.join(" ").trim_end().to_string());
        }
    }
    Ok(lines.join("\n"))
}

/// Every `(λ, σ)` with `σ` a permutation subdividing `λ`.
pub fn all_symbols(k: usize) -> Vec<(Partition, Partition)> {
    let perms: Vec<Partition> = Partition::enumerate(k, 0, crate::braid::partition::Mode::All).expect("k >= 1");
    Partition::all(k)
        .into_iter()
        .flat_map(|l| {
            perms.iter().filter(|s| l.is_refined_by(s)).map(|s| (l.clone(), s.clone())).collect::<Vec<_>>()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn two_element_symbols() {
        assert_eq!(symbol_columns(&p("(1,2)"), &p("(1|2)")).unwrap(), vec![vec![1, 2]]);
        assert_eq!(symbol_columns(&p("(1,2)"), &p("(2|1)")).unwrap(), vec![vec![2, 1]]);
        assert_eq!(symbol_columns(&p("(1|2)"), &p("(1|2)")).unwrap(), vec![vec![1], vec![2]]);
        assert!(symbol_columns(&p("(1|2)"), &p("(2|1)")).is_err());
        let text = render_symbol(&p("(1,2)"), &p("(1|2)")).unwrap();
        assert_eq!(text, "┌─┐\n│2│\n└─┘\n┌─┐\n│1│\n└─┘");
        let text = render_symbol(&p("(1|2)"), &p("(1|2)")).unwrap();
        assert_eq!(text, "┌─┐ ┌─┐\n│1│ │2│\n└─┘ └─┘");
    }

    #[test]
    fn symbol_counts() {
        assert_eq!(all_symbols(2).len(), 4);
        assert_eq!(all_symbols(3).len(), 24);
        let text = render_symbol(&p("(1|2,3)"), &p("(1|3|2)")).unwrap();
        assert_eq!(text.lines().count(), 6);
    }
}
