//! Basic rectangles: the minimal set of corner rectangles that must be
//! checked to establish the full family of `i x ceil(n/i)` coverage
//! properties.

use crate::model::Order;

/// The `k`-th basic rectangle, `rows x cols` with `cols = ceil(n / rows)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasicRect {
    /// 1-based position in the ascending-by-rows list.
    pub index: usize,
    pub rows: usize,
    pub cols: usize,
}

/// All basic rectangles of an order, ascending in row count.
///
/// An `r x ceil(n/r)` rectangle is basic when no smaller `r' < r` attains the
/// same column count, so the list keeps exactly the first row count reaching
/// each distinct ceiling.
pub fn basic_rectangles(order: Order) -> Vec<BasicRect> {
    let n = order.n();
    let mut out = Vec::new();
    let mut last_cols = usize::MAX;
    for r in 1..=n {
        let c = n.div_ceil(r);
        if c < last_cols {
            out.push(BasicRect { index: out.len() + 1, rows: r, cols: c });
            last_cols = c;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rects(n: usize) -> Vec<(usize, usize)> {
        basic_rectangles(Order::new(n).unwrap())
            .iter()
            .map(|b| (b.rows, b.cols))
            .collect()
    }

    #[test]
    fn order_13_list() {
        assert_eq!(rects(13), vec![(1, 13), (2, 7), (3, 5), (4, 4), (5, 3), (7, 2), (13, 1)]);
    }

    #[test]
    fn order_1_is_single_cell() {
        assert_eq!(rects(1), vec![(1, 1)]);
    }

    #[test]
    fn order_11_list() {
        // Frozen from enumerating ceil(11/r) for r = 1..=11 and keeping the
        // first r attaining each ceiling.
        let mut expect = Vec::new();
        let mut seen = usize::MAX;
        for r in 1..=11usize {
            let c = 11usize.div_ceil(r);
            if c < seen {
                expect.push((r, c));
                seen = c;
            }
        }
        assert_eq!(expect, vec![(1, 11), (2, 6), (3, 4), (4, 3), (6, 2), (11, 1)]);
        assert_eq!(rects(11), expect);
    }

    #[test]
    fn extremes_and_monotonicity() {
        for n in 1..=200usize {
            let list = rects(n);
            assert_eq!(list.first().copied(), Some((1, n)));
            assert_eq!(list.last().copied(), Some((n, 1)));
            for pair in list.windows(2) {
                assert!(pair[0].0 < pair[1].0);
                assert!(pair[0].1 > pair[1].1);
            }
        }
    }

    #[test]
    fn basic_rectangles_dominate_all_sizes() {
        // For every i there is a listed (r, c) with r <= i and c <= ceil(n/i),
        // so checking the basic rectangles covers every rectangle size.
        for n in 1..=500usize {
            let list = rects(n);
            for i in 1..=n {
                let ci = n.div_ceil(i);
                assert!(
                    list.iter().any(|&(r, c)| r <= i && c <= ci),
                    "n={n} i={i} not dominated"
                );
            }
        }
    }
}
