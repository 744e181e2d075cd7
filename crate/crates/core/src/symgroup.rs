//! The symmetric group `S_k` in one-line notation.
//!
//! Permutations act on `Z^k` by place permutation:
//! `act(w, x)[i] = x[w^{-1}(i)]`, so the entry at position `j` moves to
//! position `w(j)` and `act(v * w, x) = act(v, act(w, x))`.

use std::fmt;
use std::str::FromStr;

use crate::combinat::{check_len, IntTuple};
use crate::error::{Error, Result};

/// A permutation of `{1, .., k}`.
///
/// Stored 0-based; displayed and parsed 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Self { images: (0..k).collect() }
    }

    /// Build from 1-based one-line notation.
    pub fn from_one_line(one_line: &[usize]) -> Result<Self> {
        let k = one_line.len();
        let mut seen = vec![false; k];
        for &v in one_line {
            if v == 0 || v > k || seen[v - 1] {
                return Err(Error::InvalidPermutation(format!("{one_line:?} is not a permutation of 1..={k}")));
            }
            seen[v - 1] = true;
        }
        Ok(Self { images: one_line.iter().map(|v| v - 1).collect() })
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v)
        });
        Self { images }
    }

    /// The simple reflection `s_i` (1-based, swaps `i` and `i + 1`).
    pub fn simple(k: usize, i: usize) -> Self {
        assert!(i >= 1 && i < k, "s_{i} does not exist in S_{k}");
        let mut w = Self::identity(k);
        w.images.swap(i - 1, i);
        w
    }

    /// The longest element `w_0 = k k-1 .. 1`.
    pub fn longest(k: usize) -> Self {
        Self { images: (0..k).rev().collect() }
    }

    pub fn k(&self) -> usize {
        self.images.len()
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    pub(crate) fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self * other`, i.e. `i -> self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        check_len(self.k(), other.k())?;
        Ok(self.mul(other))
    }

    pub(crate) fn mul(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.k()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// Inversion count.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i32 {
        if self.length().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `l(s_i w) < l(w)`: the value `i + 1` sits to the left of `i`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let (mut pos_i, mut pos_next) = (0, 0);
        for (p, &v) in self.images.iter().enumerate() {
            if v == i - 1 {
                pos_i = p;
            } else if v == i {
                pos_next = p;
            }
        }
        pos_next < pos_i
    }

    /// `s_i * self`: swaps the values `i` and `i + 1`.
    pub fn left_mul_simple(&self, i: usize) -> Permutation {
        let images = self
            .images
            .iter()
            .map(|&v| {
                if v == i - 1 {
                    i
                } else if v == i {
                    i - 1
                } else {
                    v
                }
            })
            .collect();
        Permutation { images }
    }

    /// Smallest `i` with `l(s_i w) < l(w)`.
    pub fn first_left_descent(&self) -> Option<usize> {
        (1..self.k()).find(|&i| self.has_left_descent(i))
    }

    /// All of `S_k` in lexicographic order of one-line notation.
    pub fn all(k: usize) -> AllPermutations {
        AllPermutations { next: Some(Self::identity(k)) }
    }
}

/// Lexicographic enumeration of `S_k`.
pub struct AllPermutations {
    next: Option<Permutation>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.next.take()?;
        let mut succ = cur.images.clone();
        if let Some(i) = (0..succ.len().saturating_sub(1)).rev().find(|&i| succ[i] < succ[i + 1]) {
            let j = (i + 1..succ.len()).rev().find(|&j| succ[j] > succ[i]).unwrap();
            succ.swap(i, j);
            succ[i + 1..].reverse();
            self.next = Some(Permutation { images: succ });
        }
        Some(cur)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k() <= 9 {
            for v in &self.images {
                write!(f, "{}", v + 1)?;
            }
            Ok(())
        } else {
            write!(f, "[")?;
            for (i, v) in self.images.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", v + 1)?;
            }
            write!(f, "]")
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts compact digits (`231`) or a bracketed list (`[2,3,1]`).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let one_line: Vec<usize> = if t.starts_with('[') || t.contains(',') {
            crate::combinat::parse_paren_list(t)?
                .into_iter()
                .map(|v| usize::try_from(v).map_err(|_| Error::Parse(format!("negative entry in {s:?}"))))
                .collect::<Result<_>>()?
        } else {
            t.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad permutation {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        if one_line.is_empty() {
            return Err(Error::Parse(format!("empty permutation {s:?}")));
        }
        Permutation::from_one_line(&one_line).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Place permutation: `result[w(j)] = x[j]`.
pub fn act(w: &Permutation, x: &IntTuple) -> Result<IntTuple> {
    check_len(w.k(), x.k())?;
    let mut out = vec![0; x.k()];
    for (j, &v) in x.0.iter().enumerate() {
        out[w.images[j]] = v;
    }
    Ok(IntTuple(out))
}

/// `w * (x - x0) + x0`.
pub fn shifted_act(w: &Permutation, x: &IntTuple, x0: &IntTuple) -> Result<IntTuple> {
    act(w, &x.sub(x0)?)?.add(x0)
}

/// Bruhat order by the tableau criterion: for each prefix length `i`, the
/// sorted first `i` values of `x` are entrywise at most those of `w`.
pub fn bruhat_leq(x: &Permutation, w: &Permutation) -> Result<bool> {
    check_len(x.k(), w.k())?;
    Ok(bruhat_leq_unchecked(x, w))
}

pub(crate) fn bruhat_leq_unchecked(x: &Permutation, w: &Permutation) -> bool {
    let k = x.k();
    let mut xs = Vec::with_capacity(k);
    let mut ws = Vec::with_capacity(k);
    for i in 0..k {
        insert_sorted(&mut xs, x.images[i]);
        insert_sorted(&mut ws, w.images[i]);
        if xs.iter().zip(&ws).any(|(a, b)| a > b) {
            return false;
        }
    }
    true
}

fn insert_sorted(v: &mut Vec<usize>, x: usize) {
    let pos = v.partition_point(|&y| y < x);
    v.insert(pos, x);
}

/// The longest `w` with `act(w, x)` weakly decreasing.
///
/// `w^{-1}` lists the positions of `x` by decreasing value, and within a
/// block of equal values by decreasing position, which maximises inversions.
pub fn longest_sorter(x: &IntTuple) -> Permutation {
    let mut positions: Vec<usize> = (0..x.k()).collect();
    positions.sort_by(|&a, &b| x.0[b].cmp(&x.0[a]).then(b.cmp(&a)));
    Permutation { images: positions }.inverse()
}

/// The longest `w` with `act(w^{-1}, x)` weakly decreasing.
pub fn longest_with_sorted_image(x: &IntTuple) -> Permutation {
    longest_sorter(x).inverse()
}

/// Longest element of the left coset `c * W`, where `W` is the Young
/// subgroup permuting positions inside each block of equal entries of the
/// weakly decreasing tuple `blocks`.
pub(crate) fn longest_in_left_coset(c: &Permutation, blocks: &IntTuple) -> Permutation {
    debug_assert!(blocks.is_weakly_decreasing());
    let mut images = c.images.clone();
    let mut start = 0;
    while start < images.len() {
        let mut end = start + 1;
        while end < images.len() && blocks.0[end] == blocks.0[start] {
            end += 1;
        }
        images[start..end].sort_unstable_by(|a, b| b.cmp(a));
        start = end;
    }
    Permutation { images }
}
