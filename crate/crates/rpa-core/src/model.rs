//! Domain types shared by every other module: array orders, corners and the
//! central `PermArray` grid together with its text and JSON encodings.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Side length of an array, with the odd-order midpoint `h = (n+1)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Order {
    n: usize,
}

impl Order {
    pub fn new(n: usize) -> Result<Self, ModelError> {
        if n == 0 {
            return Err(ModelError::ZeroOrder);
        }
        Ok(Order { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_odd(&self) -> bool {
        self.n % 2 == 1
    }

    /// `h = (n+1)/2`, defined only for odd orders.
    pub fn h(&self) -> Option<usize> {
        if self.is_odd() {
            Some((self.n + 1) / 2)
        } else {
            None
        }
    }
}

/// Which corner of the array a rectangle property is anchored to.
///
/// Types 1 through 4 in the usual naming: top left, top right, bottom left,
/// bottom right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Corner {
    TopLeft,
    TopRight,
    BottomLeft,
    BottomRight,
}

impl Corner {
    pub const ALL: [Corner; 4] = [
        Corner::TopLeft,
        Corner::TopRight,
        Corner::BottomLeft,
        Corner::BottomRight,
    ];

    /// Numeric type label (1..=4).
    pub fn type_number(&self) -> usize {
        match self {
            Corner::TopLeft => 1,
            Corner::TopRight => 2,
            Corner::BottomLeft => 3,
            Corner::BottomRight => 4,
        }
    }

    pub fn from_type_number(t: usize) -> Option<Corner> {
        match t {
            1 => Some(Corner::TopLeft),
            2 => Some(Corner::TopRight),
            3 => Some(Corner::BottomLeft),
            4 => Some(Corner::BottomRight),
            _ => None,
        }
    }

    /// Row and column ranges (1-based, inclusive) of the `r x c` rectangle
    /// anchored at this corner of an `n x n` array.
    pub fn region(&self, n: usize, r: usize, c: usize) -> (std::ops::RangeInclusive<usize>, std::ops::RangeInclusive<usize>) {
        match self {
            Corner::TopLeft => (1..=r, 1..=c),
            Corner::TopRight => (1..=r, n - c + 1..=n),
            Corner::BottomLeft => (n - r + 1..=n, 1..=c),
            Corner::BottomRight => (n - r + 1..=n, n - c + 1..=n),
        }
    }
}

impl std::fmt::Display for Corner {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "type-{}", self.type_number())
    }
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row {row} has {found} cells, expected {expected}")]
    RowLength { row: usize, expected: usize, found: usize },
    #[error("could not parse {text:?} as a cell value")]
    BadCell { text: String },
    #[error("missing order header line")]
    MissingHeader,
    #[error("invalid JSON grid: {0}")]
    Json(#[from] serde_json::Error),
}

/// An `n x n` array of symbols addressed 1-based by `(row, col)`.
///
/// Constructors only enforce the shape; whether rows (and columns) are
/// permutations is the verifier's business, so that malformed inputs can be
/// loaded and reported on rather than rejected at parse time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermArray {
    n: usize,
    cells: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GridJson {
    n: usize,
    rows: Vec<Vec<usize>>,
}

impl PermArray {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self, ModelError> {
        let n = rows.len();
        if n == 0 {
            return Err(ModelError::ZeroOrder);
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(ModelError::RowLength { row: i + 1, expected: n, found: row.len() });
            }
            cells.extend_from_slice(row);
        }
        Ok(PermArray { n, cells })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> Order {
        Order::new(self.n).expect("arrays are non-empty")
    }

    /// Symbol at 1-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> usize {
        assert!(row >= 1 && row <= self.n && col >= 1 && col <= self.n, "cell index out of range");
        self.cells[(row - 1) * self.n + (col - 1)]
    }

    pub fn row(&self, row: usize) -> &[usize] {
        assert!(row >= 1 && row <= self.n);
        &self.cells[(row - 1) * self.n..row * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.cells.chunks(self.n)
    }

    /// The array rotated by 180 degrees (symbols unchanged).
    pub fn rotated_180(&self) -> PermArray {
        let mut cells = self.cells.clone();
        cells.reverse();
        PermArray { n: self.n, cells }
    }

    /// Text format: first line `n`, then `n` lines of `n` space-separated symbols.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.n.to_string());
        out.push('\n');
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self, ModelError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or(ModelError::MissingHeader)?;
        let n: usize = header
            .trim()
            .parse()
            .map_err(|_| ModelError::BadCell { text: header.trim().to_string() })?;
        if n == 0 {
            return Err(ModelError::ZeroOrder);
        }
        let mut rows = Vec::with_capacity(n);
        for line in lines.by_ref().take(n) {
            let row: Result<Vec<usize>, ModelError> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| ModelError::BadCell { text: t.to_string() }))
                .collect();
            rows.push(row?);
        }
        if rows.len() != n {
            return Err(ModelError::RowCount { expected: n, found: rows.len() });
        }
        PermArray::from_rows(rows)
    }

    /// JSON format: `{"n": .., "rows": [[..], ..]}`.
    pub fn to_json(&self) -> String {
        let grid = GridJson { n: self.n, rows: self.rows().map(|r| r.to_vec()).collect() };
        serde_json::to_string(&grid).expect("grid serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let grid: GridJson = serde_json::from_str(text)?;
        if grid.rows.len() != grid.n {
            return Err(ModelError::RowCount { expected: grid.n, found: grid.rows.len() });
        }
        PermArray::from_rows(grid.rows)
    }
}
