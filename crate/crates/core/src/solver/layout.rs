use crate::error::{Error, Result};
use crate::family::PolytopeGraph;

/// Column view of a banded cyclic graph: every row's neighbours as
/// `(row, column offset)` with offset in {-1, 0, 1}, identical in every
/// column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnLayout {
    pub rows: usize,
    pub n: usize,
    pub neighbors: Vec<Vec<(usize, i8)>>,
}

impl ColumnLayout {
    /// Fails if an edge spans more than one column or if columns differ.
    pub fn of(g: &PolytopeGraph) -> Result<Self> {
        let (rows, n) = (g.rows(), g.n());
        if n < 3 {
            return Err(Error::NotBanded(format!("n={n} leaves column offsets ambiguous")));
        }
        let mut neighbors: Vec<Vec<(usize, i8)>> = vec![Vec::new(); rows];
        for r in 0..rows {
            for col in 0..n {
                let idx = r * n + col;
                let mut pattern = Vec::with_capacity(g.neighbors(idx).len());
                for &j in g.neighbors(idx) {
                    let (r2, c2) = (j / n, j % n);
                    let off = if c2 == col {
                        0
                    } else if c2 == (col + 1) % n {
                        1
                    } else if (c2 + 1) % n == col {
                        -1
                    } else {
                        return Err(Error::NotBanded(format!(
                            "edge {} {} spans columns {col} and {c2}",
                            g.vertex(idx),
                            g.vertex(j)
                        )));
                    };
                    pattern.push((r2, off));
                }
                pattern.sort_unstable();
                if col == 0 {
                    neighbors[r] = pattern;
                } else if neighbors[r] != pattern {
                    return Err(Error::NotBanded(format!(
                        "row {r} neighbourhood at column {col} differs from column 0"
                    )));
                }
            }
        }
        Ok(ColumnLayout { rows, n, neighbors })
    }

    /// Canonical vertex index of column-major position `pos`.
    pub fn canonical(&self, pos: usize) -> usize {
        let (col, row) = (pos / self.rows, pos % self.rows);
        row * self.n + col
    }
}
