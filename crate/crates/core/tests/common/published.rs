//! Published count tables, transcribed verbatim. `None` marks "no kolam".

pub const COLUMNS: [&str; 9] = ["1", "m-k", "m-l", "md", "2", "2mm", "2mdmd", "4", "4mmd"];

pub type Row = ((u32, u32), [Option<u64>; 9]);

const X: Option<u64> = None;

const fn e(v: u64) -> Option<u64> {
    Some(v)
}

pub const ONE_RECT: [Row; 9] = [
    ((1, 1), [e(0), e(0), e(0), e(0), e(0), e(0), e(0), e(0), e(0)]),
    ((1, 2), [e(1), e(1), e(1), X, e(1), e(1), X, X, X]),
    ((2, 2), [e(4), e(3), e(3), e(2), e(2), e(2), e(1), e(1), e(1)]),
    ((2, 3), [e(7), e(5), e(4), X, e(4), e(3), X, X, X]),
    ((3, 3), [e(12), e(7), e(7), e(6), e(6), e(4), e(3), e(3), e(2)]),
    ((3, 4), [e(17), e(10), e(10), X, e(8), e(6), X, X, X]),
    ((4, 4), [e(24), e(14), e(14), e(12), e(12), e(8), e(6), e(6), e(4)]),
    ((4, 5), [e(31), e(18), e(17), X, e(16), e(10), X, X, X]),
    ((5, 5), [e(40), e(22), e(22), e(20), e(20), e(12), e(10), e(10), e(6)]),
];

pub const TWO_RECT: [Row; 9] = [
    ((1, 1), [e(0), e(0), e(0), e(0), e(0), e(0), e(0), e(0), e(0)]),
    ((1, 2), [e(0), e(0), e(0), X, e(0), e(0), X, X, X]),
    ((2, 2), [e(4), e(2), e(2), e(3), e(2), e(1), e(2), e(1), e(1)]),
    ((2, 3), [e(8), e(4), e(4), X, e(4), e(2), X, X, X]),
    ((3, 3), [e(12), e(8), e(8), e(10), e(8), e(4), e(6), e(4), e(3)]),
    ((3, 4), [e(24), e(12), e(12), X, e(12), e(6), X, X, X]),
    ((4, 4), [e(28), e(18), e(18), e(21), e(18), e(9), e(12), e(9), e(6)]),
    ((4, 5), [e(40), e(24), e(24), X, e(24), e(12), X, X, X]),
    ((5, 5), [e(56), e(32), e(32), e(36), e(32), e(16), e(20), e(16), e(10)]),
];
