//! Classification tables: for fixed ambient dimension `N`, codimension `l`,
//! and wedge power `s`, one cell per degree pair `(n, k)`.

use std::fmt::Write as _;

use serde::Serialize;
use wedgemap::classify::{classify, Classification};
use wedgemap::wedge::MapSpec;
use wedgemap::{Error, Result};

/// `None` marks a degree pair for which the map is not defined
/// (`n + s > N - l` or `k + s > N`).
pub type Cell = Option<Classification>;

/// The grid of cells, rows `n = 0..=N-l`, columns `k = 0..=N`.
pub fn table_cells(ambient_dim: u32, power: u32, codim: u32) -> Result<Vec<Vec<Cell>>> {
    if ambient_dim == 0 {
        return Err(Error::domain("ambient dimension N must be positive"));
    }
    if power == 0 {
        return Err(Error::domain("wedge power s must be at least 1"));
    }
    if codim >= ambient_dim {
        return Err(Error::domain(format!(
            "codimension l={codim} must satisfy l < N={ambient_dim}"
        )));
    }
    let rows = (0..=ambient_dim - codim)
        .map(|n| {
            (0..=ambient_dim)
                .map(|k| {
                    MapSpec::new(ambient_dim, codim, power, n, k)
                        .ok()
                        .map(|s| classify(&s))
                })
                .collect()
        })
        .collect();
    Ok(rows)
}

/// The arrow mark for one cell.
///
/// `>->` injective, `->>` surjective, `>->>` bijective, `-->` neither,
/// `.` not defined.
pub fn mark(cell: Cell) -> &'static str {
    match cell {
        None => ".",
        Some(c) => match (c.injective, c.surjective) {
            (true, true) => ">->>",
            (true, false) => ">->",
            (false, true) => "->>",
            (false, false) => "-->",
        },
    }
}

/// Fixed-width text rendering of the table, legend included.
pub fn render_ascii(ambient_dim: u32, power: u32, codim: u32) -> Result<String> {
    let cells = table_cells(ambient_dim, power, codim)?;
    let mut out = String::new();
    let _ = writeln!(out, "N={ambient_dim} s={power} l={codim}");
    let mut line = format!("{:<6}", "n\\k");
    for k in 0..=ambient_dim {
        let _ = write!(line, "{:<6}", format!("k={k}"));
    }
    out.push_str(line.trim_end());
    out.push('\n');
    for (n, row) in cells.iter().enumerate() {
        let mut line = format!("{:<6}", format!("n={n}"));
        for cell in row {
            let _ = write!(line, "{:<6}", mark(*cell));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out.push_str(
        "legend: >-> injective   ->> surjective   >->> bijective   --> neither   . undefined\n",
    );
    Ok(out)
}

/// JSON-friendly form of the same table: one record per admissible degree
/// pair (degree pairs where the map is not defined are omitted).
#[derive(Clone, Debug, Serialize)]
pub struct Table {
    #[serde(rename = "N")]
    pub ambient_dim: u32,
    pub s: u32,
    pub l: u32,
    pub cells: Vec<TableCell>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableCell {
    pub n: u32,
    pub k: u32,
    pub injective: bool,
    pub surjective: bool,
    pub label: &'static str,
    pub mark: &'static str,
}

pub fn table(ambient_dim: u32, power: u32, codim: u32) -> Result<Table> {
    let grid = table_cells(ambient_dim, power, codim)?;
    let mut cells = Vec::new();
    for (n, row) in grid.into_iter().enumerate() {
        for (k, cell) in row.into_iter().enumerate() {
            if let Some(c) = cell {
                cells.push(TableCell {
                    n: n as u32,
                    k: k as u32,
                    injective: c.injective,
                    surjective: c.surjective,
                    label: c.label(),
                    mark: mark(Some(c)),
                });
            }
        }
    }
    Ok(Table {
        ambient_dim,
        s: power,
        l: codim,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells_match_the_criterion_pointwise() {
        let cells = table_cells(4, 1, 0).unwrap();
        assert_eq!(cells.len(), 5); // n = 0..=4
        assert!(cells.iter().all(|r| r.len() == 5)); // k = 0..=4
        assert_eq!(mark(cells[0][0]), ">->");
        assert_eq!(mark(cells[0][3]), ">->>");
        assert_eq!(mark(cells[3][1]), "->>");
        assert_eq!(mark(cells[4][0]), "."); // n + s > N
        assert_eq!(mark(cells[0][4]), "."); // k + s > N
    }

    #[test]
    fn neither_mark_appears_only_at_positive_codim() {
        for l in 0..4 {
            let cells = table_cells(4, 1, l).unwrap();
            let has_neither = cells
                .iter()
                .flatten()
                .flatten()
                .any(|c| !c.injective && !c.surjective);
            assert_eq!(has_neither, l >= 2, "l={l}");
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(table_cells(0, 1, 0).is_err());
        assert!(table_cells(4, 0, 0).is_err());
        assert!(table_cells(4, 1, 4).is_err());
    }

    #[test]
    fn render_has_header_and_legend() {
        let text = render_ascii(4, 1, 2).unwrap();
        assert!(text.starts_with("N=4 s=1 l=2\n"));
        assert!(text.contains("-->")); // the neither mark shows up at l=2
        assert!(text.trim_end().ends_with(". undefined"));
        // rows n=0..=2 plus header, column header, legend
        assert_eq!(text.lines().count(), 6);
    }

    #[test]
    fn json_table_lists_only_admissible_cells() {
        let t = table(4, 1, 1).unwrap();
        // n in 0..=2, k in 0..=3 are admissible at N=4, s=1, l=1
        assert_eq!(t.cells.len(), 12);
        let c = t.cells.iter().find(|c| c.n == 0 && c.k == 3).unwrap();
        assert_eq!(c.label, "surjective");
        assert!(!c.injective && c.surjective);
        assert!(!t.cells.iter().any(|c| c.k == 4)); // undefined pair omitted
    }
}
