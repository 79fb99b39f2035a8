//! Augmenting-path maximum bipartite matching with a König-style certificate
//! for failures: when no perfect matching exists the witness is an `r x s`
//! all-zero submatrix with `r + s = m + 1` in the underlying 0/1 matrix.

/// Result of matching left vertices `0..left` to right vertices `0..right`.
#[derive(Debug, Clone)]
pub struct Matching {
    /// `pair_left[u]` is the right vertex matched to left `u`.
    pub pair_left: Vec<Option<usize>>,
    /// `pair_right[v]` is the left vertex matched to right `v`.
    pub pair_right: Vec<Option<usize>>,
    pub size: usize,
}

/// Kuhn's algorithm; left vertices are scanned in ascending order and each
/// adjacency list is tried in the order given, so results are deterministic.
pub fn max_bipartite_matching(adj: &[Vec<usize>], right: usize) -> Matching {
    let left = adj.len();
    let mut pair_left = vec![None; left];
    let mut pair_right = vec![None; right];
    let mut size = 0;
    let mut visited = vec![false; right];
    for u in 0..left {
        visited.iter_mut().for_each(|v| *v = false);
        if try_augment(u, adj, &mut pair_left, &mut pair_right, &mut visited) {
            size += 1;
        }
    }
    Matching { pair_left, pair_right, size }
}

fn try_augment(
    u: usize,
    adj: &[Vec<usize>],
    pair_left: &mut Vec<Option<usize>>,
    pair_right: &mut Vec<Option<usize>>,
    visited: &mut Vec<bool>,
) -> bool {
    for &v in &adj[u] {
        if !visited[v] {
            visited[v] = true;
            let free = match pair_right[v] {
                None => true,
                Some(w) => try_augment(w, adj, pair_left, pair_right, visited),
            };
            if free {
                pair_left[u] = Some(v);
                pair_right[v] = Some(u);
                return true;
            }
        }
    }
    false
}

/// All-zero block certifying that no perfect matching exists on a square
/// instance (`left == right == m`). Row and column indices refer to the
/// matrix whose 1-entries are the edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroBlock {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// König certificate for a failed square matching: an `r x s` zero block
/// with `r + s = m + 1`.
///
/// Alternating reachability from the unmatched left vertices yields sets
/// `Z_L` and `Z_R` with every edge out of `Z_L` landing in `Z_R`; the block
/// `Z_L x (right \ Z_R)` is therefore all-zero and has `|Z_L| + m - |Z_R|
/// = 2m - matching >= m + 1` cells on the two sides. Extra rows are trimmed
/// to normalize the certificate size.
pub fn koenig_zero_block(adj: &[Vec<usize>], matching: &Matching) -> Option<ZeroBlock> {
    let m = adj.len();
    if matching.size >= m {
        return None;
    }
    let mut left_reached = vec![false; m];
    let mut right_reached = vec![false; matching.pair_right.len()];
    let mut stack: Vec<usize> =
        (0..m).filter(|&u| matching.pair_left[u].is_none()).collect();
    for &u in &stack {
        left_reached[u] = true;
    }
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !right_reached[v] {
                right_reached[v] = true;
                if let Some(w) = matching.pair_right[v] {
                    if !left_reached[w] {
                        left_reached[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
    }
    let mut rows: Vec<usize> = (0..m).filter(|&u| left_reached[u]).collect();
    let mut cols: Vec<usize> =
        (0..matching.pair_right.len()).filter(|&v| !right_reached[v]).collect();
    // Trim to r + s = m + 1 exactly.
    let excess = (rows.len() + cols.len()).saturating_sub(m + 1);
    let trim_rows = excess.min(rows.len().saturating_sub(1));
    rows.truncate(rows.len() - trim_rows);
    let trim_cols = (excess - trim_rows).min(cols.len().saturating_sub(1));
    cols.truncate(cols.len() - trim_cols);
    Some(ZeroBlock { rows, cols })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_matching_found() {
        let adj = vec![vec![0, 1], vec![1, 2], vec![0, 2]];
        let m = max_bipartite_matching(&adj, 3);
        assert_eq!(m.size, 3);
        assert!(koenig_zero_block(&adj, &m).is_none());
    }

    #[test]
    fn certificate_is_zero_block_of_right_size() {
        // Left 0, 1, 2 all only reach right 0 and 1.
        let adj = vec![vec![0, 1], vec![0], vec![1]];
        let m = max_bipartite_matching(&adj, 3);
        assert_eq!(m.size, 2);
        let block = koenig_zero_block(&adj, &m).unwrap();
        assert_eq!(block.rows.len() + block.cols.len(), 4);
        for &r in &block.rows {
            for &c in &block.cols {
                assert!(!adj[r].contains(&c), "({r},{c}) must be a zero entry");
            }
        }
    }

    #[test]
    fn empty_graph_certificate() {
        let adj: Vec<Vec<usize>> = vec![vec![], vec![]];
        let m = max_bipartite_matching(&adj, 2);
        assert_eq!(m.size, 0);
        let block = koenig_zero_block(&adj, &m).unwrap();
        assert_eq!(block.rows.len() + block.cols.len(), 3);
    }
}
