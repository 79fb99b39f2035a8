//! Stored reference arrays of orders 11 and 13. Both are latin and satisfy
//! the rectangle property in all four corners; the verifier confirms this in
//! the test suite rather than trusting the transcription.

use crate::model::PermArray;
use crate::staircase::Staircase;

/// Order-11 array, type-1,2,3,4 and latin.
pub const TEXT_11: &str = "11
6 2 3 4 5 1 7 8 9 10 11
7 11 8 9 10 6 2 3 4 1 5
10 5 1 11 3 4 8 9 6 7 2
4 9 11 1 7 5 6 2 10 3 8
3 8 5 7 6 10 1 11 2 4 9
1 7 10 2 9 8 3 4 5 11 6
9 4 6 10 11 2 5 1 7 8 3
8 3 2 6 4 9 11 7 1 5 10
2 1 7 5 8 3 10 6 11 9 4
5 6 4 3 1 11 9 10 8 2 7
11 10 9 8 2 7 4 5 3 6 1
";

/// Order-13 array, type-1,2,3,4 and latin.
pub const TEXT_13: &str = "13
7 2 3 4 5 6 1 8 9 10 11 12 13
8 13 12 11 10 9 7 5 4 3 2 1 6
9 6 1 2 3 4 10 11 12 13 7 8 5
10 5 6 1 2 3 11 7 13 12 8 9 4
11 4 5 6 1 2 12 13 8 7 9 10 3
12 3 4 5 7 13 9 1 6 8 10 11 2
1 8 9 12 6 10 2 3 11 5 4 13 7
2 11 10 13 8 7 5 4 1 9 6 3 12
3 10 7 9 13 8 6 12 2 1 5 4 11
4 9 13 8 11 12 3 2 5 6 1 7 10
5 1 8 7 12 11 4 10 3 2 13 6 9
6 7 2 3 4 1 13 9 10 11 12 5 8
13 12 11 10 9 5 8 6 7 4 3 2 1
";

/// Canonical witness prefix lengths of the top-left staircase in the stored
/// arrays (rows of the first `b - 1` basic rectangles).
pub const STAIR_LENGTHS_11: [usize; 6] = [11, 5, 3, 2, 2, 1];
pub const STAIR_LENGTHS_13: [usize; 7] = [13, 6, 3, 2, 2, 2, 1];

pub fn example_11() -> PermArray {
    PermArray::parse_text(TEXT_11).expect("stored order-11 array is well formed")
}

pub fn example_13() -> PermArray {
    PermArray::parse_text(TEXT_13).expect("stored order-13 array is well formed")
}

pub fn fixture(n: usize) -> Option<PermArray> {
    match n {
        11 => Some(example_11()),
        13 => Some(example_13()),
        _ => None,
    }
}

/// Top-left witness staircase of a stored array as a `Staircase` (left
/// prefixes only, no mirror).
pub(crate) fn fixture_staircase(n: usize) -> Option<Staircase> {
    let (array, lengths): (PermArray, &[usize]) = match n {
        11 => (example_11(), &STAIR_LENGTHS_11),
        13 => (example_13(), &STAIR_LENGTHS_13),
        _ => return None,
    };
    let mut stair = Staircase::new(array.order());
    for (i, &len) in lengths.iter().enumerate() {
        for col in 1..=len {
            stair.push_cell(i + 1, array.get(i + 1, col));
        }
    }
    Some(stair)
}
