//! Young diagrams inside an `n_v × n_h` box, ordered by containment.

use std::fmt;
use std::str::FromStr;

use super::{FiniteDistributiveLattice, Generic};
use crate::error::{AmfError, Result};

/// Row lengths, weakly decreasing, with no trailing zero rows.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct YoungDiagram {
    rows: Vec<u32>,
}

impl YoungDiagram {
    pub fn new(mut rows: Vec<u32>) -> Result<Self> {
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(AmfError::Precondition(format!("rows {rows:?} are not weakly decreasing")));
        }
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Ok(YoungDiagram { rows })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Number of nonempty rows.
    pub fn height(&self) -> u32 {
        self.rows.len() as u32
    }

    /// Length of the first row.
    pub fn width(&self) -> u32 {
        self.rows.first().copied().unwrap_or(0)
    }

    pub fn cells(&self) -> u32 {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn row(&self, i: usize) -> u32 {
        self.rows.get(i).copied().unwrap_or(0)
    }

    pub fn contains(&self, other: &YoungDiagram) -> bool {
        other.rows.len() <= self.rows.len()
            && other.rows.iter().zip(&self.rows).all(|(o, s)| o <= s)
    }

    fn zip_rows(&self, other: &YoungDiagram, f: impl Fn(u32, u32) -> u32) -> YoungDiagram {
        let n = self.rows.len().max(other.rows.len());
        let rows = (0..n).map(|i| f(self.row(i), other.row(i))).collect();
        YoungDiagram::new(rows).expect("cellwise max/min keeps rows decreasing")
    }

    pub fn union(&self, other: &YoungDiagram) -> YoungDiagram {
        self.zip_rows(other, u32::max)
    }

    pub fn intersection(&self, other: &YoungDiagram) -> YoungDiagram {
        self.zip_rows(other, u32::min)
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.rows.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for YoungDiagram {
    type Err = AmfError;

    fn from_str(s: &str) -> Result<Self> {
        let mut offset = 0;
        let mut rows = Vec::new();
        for item in s.split(',') {
            let t = item.trim();
            rows.push(
                t.parse::<u32>()
                    .map_err(|_| AmfError::parse(offset, format!("expected a row length, found {t:?}")))?,
            );
            offset += item.len() + 1;
        }
        YoungDiagram::new(rows)
    }
}

/// The diagrams fitting in `rows × cols`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct YoungBox {
    rows: u32,
    cols: u32,
}

impl YoungBox {
    pub fn new(rows: u32, cols: u32) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(AmfError::Precondition("box dimensions must be positive".into()));
        }
        Ok(YoungBox { rows, cols })
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    pub fn cols(&self) -> u32 {
        self.cols
    }

    pub fn fits(&self, d: &YoungDiagram) -> bool {
        d.height() <= self.rows && d.width() <= self.cols
    }

    fn check(&self, i: u32, j: u32) -> Result<()> {
        if i == 0 || i > self.rows || j == 0 || j > self.cols {
            return Err(AmfError::Precondition(format!(
                "({i}, {j}) is outside 1..={} × 1..={}",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    /// The column `1^i`.
    pub fn vs(&self, i: u32) -> Result<YoungDiagram> {
        self.check(i, 1)?;
        YoungDiagram::new(vec![1; i as usize])
    }

    /// The row `(j)`.
    pub fn hs(&self, j: u32) -> Result<YoungDiagram> {
        self.check(1, j)?;
        YoungDiagram::new(vec![j])
    }

    /// `vs_i ∨ hs_j = (j, 1^{i−1})`.
    pub fn hook(&self, i: u32, j: u32) -> Result<YoungDiagram> {
        Ok(self.vs(i)?.union(&self.hs(j)?))
    }

    /// `(j^i)`.
    pub fn rectangle(&self, i: u32, j: u32) -> Result<YoungDiagram> {
        self.check(i, j)?;
        YoungDiagram::new(vec![j; i as usize])
    }
}

impl FiniteDistributiveLattice for YoungBox {
    type Elem = YoungDiagram;

    fn elements(&self) -> Vec<YoungDiagram> {
        // Rows chosen top to bottom, each at most the one above.
        fn extend(prefix: &mut Vec<u32>, rows_left: u32, cap: u32, out: &mut Vec<YoungDiagram>) {
            out.push(YoungDiagram::new(prefix.clone()).expect("built decreasing"));
            if rows_left == 0 {
                return;
            }
            for r in 1..=cap {
                prefix.push(r);
                extend(prefix, rows_left - 1, r, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        extend(&mut Vec::new(), self.rows, self.cols, &mut out);
        out
    }

    fn leq(&self, a: &YoungDiagram, b: &YoungDiagram) -> bool {
        b.contains(a)
    }

    fn meet(&self, a: &YoungDiagram, b: &YoungDiagram) -> YoungDiagram {
        a.intersection(b)
    }

    fn join(&self, a: &YoungDiagram, b: &YoungDiagram) -> YoungDiagram {
        a.union(b)
    }

    fn bottom(&self) -> YoungDiagram {
        YoungDiagram::empty()
    }

    fn top(&self) -> YoungDiagram {
        YoungDiagram::new(vec![self.cols; self.rows as usize]).expect("constant rows")
    }

    fn unit(&self) -> YoungDiagram {
        YoungDiagram::new(vec![1]).expect("single cell")
    }
}

/// Outcome of [`young_partition`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct YoungPartitionReport {
    pub diagrams: usize,
    pub cells: usize,
    /// Diagrams lying in no hook/rectangle cell or in more than one.
    pub violations: Vec<String>,
}

impl YoungPartitionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every nonempty diagram of the box lies in exactly one
/// interval `[hook(i, j), rectangle(i, j)]`, namely the one with `i` its
/// number of rows and `j` its first row.
pub fn young_partition(rows: u32, cols: u32) -> Result<YoungPartitionReport> {
    let bx = YoungBox::new(rows, cols)?;
    let mut cells = Vec::new();
    for i in 1..=rows {
        for j in 1..=cols {
            cells.push((i, j, bx.hook(i, j)?, bx.rectangle(i, j)?));
        }
    }
    let mut report = YoungPartitionReport {
        cells: cells.len(),
        ..Default::default()
    };
    for d in bx.elements().into_iter().filter(|d| !d.is_empty()) {
        report.diagrams += 1;
        let hits: Vec<(u32, u32)> = cells
            .iter()
            .filter(|(_, _, lo, hi)| d.contains(lo) && hi.contains(&d))
            .map(|&(i, j, _, _)| (i, j))
            .collect();
        if hits != [(d.height(), d.width())] {
            report.violations.push(format!("{d} lies in cells {hits:?}"));
        }
    }
    Ok(report)
}

/// Checks that for every smaller box, each of its diagrams falls in the same
/// cell as in the `rows × cols` box. Returns the violations.
pub fn young_stability(rows: u32, cols: u32) -> Result<Vec<String>> {
    let big = YoungBox::new(rows, cols)?;
    let cell_in = |bx: &YoungBox, d: &YoungDiagram| -> Result<Vec<(u32, u32)>> {
        let mut hits = Vec::new();
        for i in 1..=bx.rows {
            for j in 1..=bx.cols {
                if d.contains(&bx.hook(i, j)?) && bx.rectangle(i, j)?.contains(d) {
                    hits.push((i, j));
                }
            }
        }
        Ok(hits)
    };
    let mut out = Vec::new();
    for r in 1..=rows {
        for c in 1..=cols {
            let small = YoungBox::new(r, c)?;
            for d in small.elements().into_iter().filter(|d| !d.is_empty()) {
                let (a, b) = (cell_in(&small, &d)?, cell_in(&big, &d)?);
                if a != b {
                    out.push(format!("{d}: cells {a:?} in {r}×{c}, {b:?} in {rows}×{cols}"));
                }
            }
        }
    }
    Ok(out)
}

/// `(i, j)` pairs where the lattice product `vs_i × hs_j` is not the
/// rectangle `(j^i)`, with both values.
pub fn strip_product_divergence(g: &Generic<'_, YoungBox>) -> Result<Vec<(u32, u32, YoungDiagram, YoungDiagram)>> {
    let bx = *g.lattice();
    let mut out = Vec::new();
    for i in 1..=bx.rows {
        for j in 1..=bx.cols {
            let product = g.product(&bx.vs(i)?, &bx.hs(j)?);
            let rectangle = bx.rectangle(i, j)?;
            if product != rectangle {
                out.push((i, j, product, rectangle));
            }
        }
    }
    Ok(out)
}
