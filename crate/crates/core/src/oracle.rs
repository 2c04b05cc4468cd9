//! Slow, independent ground truth for the tricolouring and its statistics.

use thiserror::Error;

use crate::tree::PlaneTree;
use crate::tricolour::Colour;

pub const MAX_COVER_N: usize = 24;
pub const MAX_NULLITY_N: usize = 512;
pub const MAX_ENUM_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} limited to n <= {max}, got {n}")]
    TooLarge { what: &'static str, n: usize, max: usize },
    #[error("integer overflow during elimination")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    InAll,
    InNone,
    InSome,
}

impl Membership {
    pub fn colour(self) -> Colour {
        match self {
            Membership::InAll => Colour::Green,
            Membership::InNone => Colour::Red,
            Membership::InSome => Colour::Orange,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub cover_size: usize,
    pub membership: Vec<Membership>,
    pub num_min_covers: u64,
}

impl CoverReport {
    pub fn colours(&self) -> Vec<Colour> {
        self.membership.iter().map(|m| m.colour()).collect()
    }
}

/// Next larger integer with the same popcount (Gosper's hack).
fn next_same_popcount(x: u32) -> u32 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// All minimum vertex covers by subset scan in order of increasing size.
pub fn enumerate_min_covers(t: &PlaneTree) -> Result<CoverReport, OracleError> {
    let n = t.len();
    if n > MAX_COVER_N {
        return Err(OracleError::TooLarge {
            what: "cover enumeration",
            n,
            max: MAX_COVER_N,
        });
    }
    let edge_masks: Vec<u32> = t.edges().map(|(a, b)| (1 << a) | (1 << b)).collect();
    let covers = |s: u32| edge_masks.iter().all(|&e| s & e != 0);

    for k in 0..=n {
        let mut hits = vec![0u64; n];
        let mut count = 0u64;
        if k == 0 {
            if covers(0) {
                count = 1;
            }
        } else {
            let limit: u64 = 1 << n;
            let mut s: u32 = (1 << k) - 1;
            while (s as u64) < limit {
                if covers(s) {
                    count += 1;
                    for (v, h) in hits.iter_mut().enumerate() {
                        *h += u64::from(s >> v & 1);
                    }
                }
                if k == n {
                    break;
                }
                s = next_same_popcount(s);
            }
        }
        if count > 0 {
            let membership = hits
                .iter()
                .map(|&h| {
                    if h == count {
                        Membership::InAll
                    } else if h == 0 {
                        Membership::InNone
                    } else {
                        Membership::InSome
                    }
                })
                .collect();
            return Ok(CoverReport {
                cover_size: k,
                membership,
                num_min_covers: count,
            });
        }
    }
    unreachable!("the full vertex set is always a cover")
}

/// Maximum matching by repeatedly matching a leaf with its parent.
pub fn max_matching(t: &PlaneTree) -> usize {
    let mut matched = vec![false; t.len()];
    let mut size = 0;
    // Reverse depth-first order visits every vertex after all its descendants,
    // so an unmatched vertex here is a leaf of the pruned tree.
    for v in (1..t.len()).rev() {
        let p = t.parent(v).expect("non-root");
        if !matched[v] && !matched[p] {
            matched[v] = true;
            matched[p] = true;
            size += 1;
        }
    }
    size
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_rank(mut a: Vec<Vec<i128>>) -> Result<usize, OracleError> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let p = a[rank][col];
        let (top, below) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below {
            let lead = row[col];
            for (x, &pj) in row[col + 1..cols].iter_mut().zip(&pivot_row[col + 1..cols]) {
                let y = x
                    .checked_mul(p)
                    .and_then(|u| pj.checked_mul(lead).and_then(|w| u.checked_sub(w)))
                    .ok_or(OracleError::Overflow)?;
                debug_assert_eq!(y % prev, 0);
                *x = y / prev;
            }
            row[col] = 0;
        }
        prev = p;
        rank += 1;
    }
    Ok(rank)
}

/// `n - rank(A)` for the 0/1 adjacency matrix, computed exactly.
pub fn nullity_exact(t: &PlaneTree) -> Result<usize, OracleError> {
    let n = t.len();
    if n > MAX_NULLITY_N {
        return Err(OracleError::TooLarge {
            what: "exact nullity",
            n,
            max: MAX_NULLITY_N,
        });
    }
    let mut a = vec![vec![0i128; n]; n];
    for (p, c) in t.edges() {
        a[p][c] = 1;
        a[c][p] = 1;
    }
    Ok(n - integer_rank(a)?)
}

/// Every plane tree with `n` vertices, in lexicographic order of the
/// outdegree sequence.
pub fn enumerate_plane_trees(n: usize) -> Result<impl Iterator<Item = PlaneTree>, OracleError> {
    if n == 0 || n > MAX_ENUM_N {
        return Err(OracleError::TooLarge {
            what: "plane tree enumeration",
            n,
            max: MAX_ENUM_N,
        });
    }
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(n);
    extend_excursions(n, 0, &mut seq, &mut out);
    Ok(out
        .into_iter()
        .map(|s| PlaneTree::from_outdegrees(s).expect("generated sequences are excursions")))
}

fn extend_excursions(n: usize, height: usize, seq: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let left = n - seq.len();
    if left == 1 {
        // the last vertex closes the walk at -1
        if height == 0 {
            seq.push(0);
            out.push(seq.clone());
            seq.pop();
        }
        return;
    }
    // stay >= 0 now, and still be able to come down to -1 with `left - 1` steps
    let lo = if height == 0 { 1 } else { 0 };
    let hi = (left - 1).saturating_sub(height);
    for d in lo..=hi {
        seq.push(d);
        extend_excursions(n, height + d - 1, seq, out);
        seq.pop();
    }
}

pub fn catalan(k: usize) -> u64 {
    (0..k).fold(1u64, |c, i| c * 2 * (2 * i as u64 + 1) / (i as u64 + 2))
}
