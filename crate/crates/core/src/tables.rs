//! Published counts for n ≤ 12, rows k = 2..=13, columns n = 1..=12.

use std::fmt;

use crate::enumerate::{Class, CountsTable};

/// Largest crossing count with reference data.
pub const MAX_N: usize = 12;

const PROJECTIONS: [[u64; 12]; 12] = [
    [1, 1, 2, 6, 19, 71, 293, 1348, 6568, 33701, 178706, 973085], // k = 2
    [0, 1, 2, 8, 29, 138, 638, 3237, 16805, 90239, 494151, 2756453], // k = 3
    [0, 0, 2, 8, 41, 210, 1125, 6138, 34112, 192278, 1096560, 6317363], // k = 4
    [0, 0, 0, 5, 31, 231, 1458, 9183, 56084, 340885, 2060224, 12446400], // k = 5
    [0, 0, 0, 0, 16, 161, 1406, 10572, 74331, 499902, 3276104, 21112641], // k = 6
    [0, 0, 0, 0, 0, 60, 840, 8818, 75747, 591091, 4327816, 30451898], // k = 7
    [0, 0, 0, 0, 0, 0, 261, 4702, 56199, 541570, 4628641, 36633417], // k = 8
    [0, 0, 0, 0, 0, 0, 0, 1243, 26753, 361106, 3846580, 35758786], // k = 9
    [0, 0, 0, 0, 0, 0, 0, 0, 6257, 155593, 2332512, 27199662], // k = 10
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 32721, 916595, 15123600], // k = 11
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 175760, 5464661], // k = 12
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 963900], // k = 13
];
const PROJECTIONS_TOTALS: [u64; 12] = [1, 2, 6, 27, 136, 871, 6021, 45241, 352856, 2839086, 23333649, 195201866];

const ALTERNATING: [[u64; 12]; 12] = [
    [1, 1, 2, 5, 13, 36, 111, 373, 1362, 5378, 22807, 102617], // k = 2
    [0, 1, 2, 7, 20, 77, 276, 1135, 4823, 21734, 101307, 488093], // k = 3
    [0, 0, 2, 8, 37, 157, 687, 3052, 13981, 65797, 317506, 1565163], // k = 4
    [0, 0, 0, 5, 31, 209, 1128, 5986, 30556, 155964, 795918, 4092027], // k = 5
    [0, 0, 0, 0, 16, 161, 1294, 8528, 51475, 294366, 1637855, 8979493], // k = 6
    [0, 0, 0, 0, 0, 60, 840, 8206, 62895, 428254, 2702902, 16313106], // k = 7
    [0, 0, 0, 0, 0, 0, 261, 4702, 52815, 460189, 3475551, 23979733], // k = 8
    [0, 0, 0, 0, 0, 0, 0, 1243, 26753, 341878, 3327424, 27625056], // k = 9
    [0, 0, 0, 0, 0, 0, 0, 0, 6257, 155593, 2221544, 23869621], // k = 10
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 32721, 916595, 14473275], // k = 11
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 175760, 5464661], // k = 12
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 963900], // k = 13
];
const ALTERNATING_TOTALS: [u64; 12] = [1, 2, 6, 25, 117, 700, 4597, 33225, 250917, 1961874, 15695169, 127916745];

const REDUCED: [[u64; 12]; 12] = [
    [1, 0, 0, 0, 1, 1, 3, 9, 26, 74, 238, 770], // k = 2
    [0, 1, 1, 1, 1, 4, 7, 24, 69, 226, 719, 2423], // k = 3
    [0, 0, 2, 2, 4, 7, 21, 58, 185, 596, 1998, 6753], // k = 4
    [0, 0, 0, 5, 9, 22, 49, 152, 458, 1545, 5188, 17990], // k = 5
    [0, 0, 0, 0, 16, 42, 126, 355, 1144, 3769, 13012, 45515], // k = 6
    [0, 0, 0, 0, 0, 60, 228, 799, 2586, 8850, 30754, 109843], // k = 7
    [0, 0, 0, 0, 0, 0, 261, 1288, 5164, 18745, 68142, 248891], // k = 8
    [0, 0, 0, 0, 0, 0, 0, 1243, 7525, 33856, 134834, 520884], // k = 9
    [0, 0, 0, 0, 0, 0, 0, 0, 6257, 44482, 222482, 962620], // k = 10
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 32721, 266270, 1464500], // k = 11
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 175760, 1607405], // k = 12
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 963900], // k = 13
];
const REDUCED_TOTALS: [u64; 12] = [1, 1, 3, 8, 31, 136, 695, 3928, 23414, 144864, 919397, 5951494];
fn grid(class: Class) -> Option<(&'static [[u64; 12]; 12], &'static [u64; 12])> {
    match class {
        Class::Projections => Some((&PROJECTIONS, &PROJECTIONS_TOTALS)),
        Class::Alternating => Some((&ALTERNATING, &ALTERNATING_TOTALS)),
        Class::Reduced => Some((&REDUCED, &REDUCED_TOTALS)),
        Class::WeakFilter => None,
    }
}

/// Reference count for `(n, k)`; zero outside `2 ≤ k ≤ n + 1`. `None` for
/// classes without reference data or `n` beyond [`MAX_N`].
pub fn expected(class: Class, n: usize, k: usize) -> Option<u64> {
    let (cells, _) = grid(class)?;
    if n == 0 || n > MAX_N {
        return None;
    }
    if !(2..=13).contains(&k) {
        return Some(0);
    }
    Some(cells[k - 2][n - 1])
}

pub fn expected_total(class: Class, n: usize) -> Option<u64> {
    let (_, totals) = grid(class)?;
    (1..=MAX_N).contains(&n).then(|| totals[n - 1])
}

/// Reference table restricted to `n ≤ n_max`.
pub fn reference(class: Class, n_max: usize) -> Option<CountsTable> {
    grid(class)?;
    let mut t = CountsTable::new(class);
    for n in 1..=n_max.min(MAX_N) {
        for k in 2..=n + 1 {
            t.add(n, k, expected(class, n, k)?);
        }
    }
    Some(t)
}

/// A cell where computed and published counts differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub class: Class,
    pub n: usize,
    pub k: usize,
    pub expected: u64,
    pub got: u64,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\texpected {}\tgot {}",
            self.class, self.n, self.k, self.expected, self.got
        )
    }
}

/// Cell-by-cell comparison of `got` with the reference for every
/// `n ≤ n_max` and `2 ≤ k ≤ n + 1`.
pub fn verify(got: &CountsTable, n_max: usize) -> Vec<Mismatch> {
    let mut out = Vec::new();
    for n in 1..=n_max.min(MAX_N) {
        for k in 2..=n + 1 {
            let Some(expected) = expected(got.class, n, k) else {
                continue;
            };
            let g = got.get(n, k);
            if g != expected {
                out.push(Mismatch {
                    class: got.class,
                    n,
                    k,
                    expected,
                    got: g,
                });
            }
        }
    }
    out
}
