//! Brute-force reference implementations.
//!
//! Nothing in here shares code with `lce-core`. Permutations are plain
//! one-line vectors with values `1..=k`, polynomials are `Vec<i64>` with the
//! constant term first, and partitions are `Vec<usize>`. Everything is slow on
//! purpose; the fast paths are checked against these on small inputs.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridTooLarge {
    pub cells: usize,
}

impl fmt::Display for GridTooLarge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "grid with {} cells exceeds the 24-cell enumeration limit", self.cells)
    }
}

impl std::error::Error for GridTooLarge {}

pub const MAX_GRID_CELLS: usize = 24;

/// Number of subsets `A` of the `k x l` grid whose row `i` holds `alpha[i]`
/// cells and whose column `j` holds `beta[j]` cells.
///
/// Enumerates every admissible row subset (as a bitmask) and checks the column
/// counts at the leaves.
pub fn oracle_count_01(alpha: &[usize], beta: &[usize]) -> Result<u64, GridTooLarge> {
    let cells = alpha.len() * beta.len();
    if cells > MAX_GRID_CELLS {
        return Err(GridTooLarge { cells });
    }
    if alpha.iter().sum::<usize>() != beta.iter().sum::<usize>() {
        return Ok(0);
    }
    let l = beta.len();
    let mut cols = vec![0usize; l];
    Ok(count_rows(alpha, beta, 0, &mut cols))
}

fn count_rows(alpha: &[usize], beta: &[usize], row: usize, cols: &mut [usize]) -> u64 {
    let l = beta.len();
    if row == alpha.len() {
        return u64::from(cols.iter().zip(beta).all(|(c, b)| c == b));
    }
    let mut total = 0;
    for mask in 0u32..(1u32 << l) {
        if mask.count_ones() as usize != alpha[row] {
            continue;
        }
        for (j, c) in cols.iter_mut().enumerate() {
            if mask >> j & 1 == 1 {
                *c += 1;
            }
        }
        total += count_rows(alpha, beta, row + 1, cols);
        for (j, c) in cols.iter_mut().enumerate() {
            if mask >> j & 1 == 1 {
                *c -= 1;
            }
        }
    }
    total
}

/// All permutations of `1..=k` in one-line notation.
pub fn all_perms(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v + 1);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(k), &mut vec![false; k], &mut out);
    out
}

pub fn inversions(w: &[usize]) -> usize {
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

/// `(a b)(i) = a(b(i))`.
fn mul(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i - 1]).collect()
}

fn simple(k: usize, i: usize) -> Vec<usize> {
    let mut s: Vec<usize> = (1..=k).collect();
    s.swap(i - 1, i);
    s
}

/// A reduced word `[i1, .., il]` with `w = s_{i1} ... s_{il}`.
pub fn reduced_word(w: &[usize]) -> Vec<usize> {
    let mut cur = w.to_vec();
    let mut rev = Vec::new();
    'outer: loop {
        for i in 0..cur.len().saturating_sub(1) {
            if cur[i] > cur[i + 1] {
                // cur = (cur s_i) s_i
                cur.swap(i, i + 1);
                rev.push(i + 1);
                continue 'outer;
            }
        }
        break;
    }
    rev.reverse();
    rev
}

/// Every product of a subword of one fixed reduced word of `w`.
pub fn subword_products(w: &[usize]) -> HashSet<Vec<usize>> {
    let k = w.len();
    let word = reduced_word(w);
    let gens: Vec<Vec<usize>> = word.iter().map(|&i| simple(k, i)).collect();
    let mut out = HashSet::new();
    for mask in 0u64..(1u64 << word.len()) {
        let mut p: Vec<usize> = (1..=k).collect();
        for (j, g) in gens.iter().enumerate() {
            if mask >> j & 1 == 1 {
                p = mul(&p, g);
            }
        }
        out.insert(p);
    }
    out
}

/// Bruhat order by the subword property.
pub fn oracle_bruhat(x: &[usize], w: &[usize]) -> bool {
    subword_products(w).contains(x)
}

fn poly_trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    poly_trim(out)
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

/// Kazhdan-Lusztig polynomials of `S_k` through R-polynomials.
///
/// R-polynomials follow their left-descent recursion; each column `P_{-,w}`
/// is then solved from `q^{l(w)-l(y)} P_{y,w}(1/q) - P_{y,w} = sum_{y<z<=w} R_{y,z} P_{z,w}`
/// by reading off the low-degree half.
pub struct RPolyOracle {
    k: usize,
    perms: Vec<Vec<usize>>,
    below: HashMap<Vec<usize>, HashSet<Vec<usize>>>,
    r: HashMap<(Vec<usize>, Vec<usize>), Vec<i64>>,
    columns: HashMap<Vec<usize>, HashMap<Vec<usize>, Vec<i64>>>,
}

impl RPolyOracle {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            perms: all_perms(k),
            below: HashMap::new(),
            r: HashMap::new(),
            columns: HashMap::new(),
        }
    }

    fn leq(&mut self, x: &[usize], w: &[usize]) -> bool {
        self.below
            .entry(w.to_vec())
            .or_insert_with(|| subword_products(w))
            .contains(x)
    }

    fn left_simple(&self, i: usize, w: &[usize]) -> Vec<usize> {
        mul(&simple(self.k, i), w)
    }

    pub fn r_poly(&mut self, x: &[usize], w: &[usize]) -> Vec<i64> {
        if let Some(p) = self.r.get(&(x.to_vec(), w.to_vec())) {
            return p.clone();
        }
        let out = if !self.leq(x, w) {
            Vec::new()
        } else if x == w {
            vec![1]
        } else {
            let lw = inversions(w);
            let i = (1..self.k)
                .find(|&i| inversions(&self.left_simple(i, w)) < lw)
                .expect("non-identity element has a left descent");
            let sw = self.left_simple(i, w);
            let sx = self.left_simple(i, x);
            if inversions(&sx) < inversions(x) {
                self.r_poly(&sx, &sw)
            } else {
                let a = poly_mul(&[-1, 1], &self.r_poly(x, &sw));
                let b = poly_mul(&[0, 1], &self.r_poly(&sx, &sw));
                poly_add(&a, &b)
            }
        };
        self.r.insert((x.to_vec(), w.to_vec()), out.clone());
        out
    }

    fn column(&mut self, w: &[usize]) -> HashMap<Vec<usize>, Vec<i64>> {
        if let Some(c) = self.columns.get(w) {
            return c.clone();
        }
        let lw = inversions(w);
        let mut interval: Vec<Vec<usize>> = self
            .perms
            .clone()
            .into_iter()
            .filter(|y| subword_set_contains(&mut self.below, w, y))
            .collect();
        interval.sort_by_key(|y| std::cmp::Reverse(inversions(y)));
        let mut col: HashMap<Vec<usize>, Vec<i64>> = HashMap::new();
        for y in &interval {
            if y.as_slice() == w {
                col.insert(y.clone(), vec![1]);
                continue;
            }
            let d = lw - inversions(y);
            let mut rhs = Vec::new();
            for (z, pz) in col.clone() {
                if z != *y && self.leq(y, &z) {
                    rhs = poly_add(&rhs, &poly_mul(&self.r_poly(y, &z), &pz));
                }
            }
            let keep = (d - 1) / 2 + 1;
            let p: Vec<i64> = rhs.iter().take(keep).map(|c| -c).collect();
            col.insert(y.clone(), poly_trim(p));
        }
        self.columns.insert(w.to_vec(), col.clone());
        col
    }

    pub fn kl(&mut self, x: &[usize], w: &[usize]) -> Vec<i64> {
        self.column(w).get(x).cloned().unwrap_or_default()
    }
}

fn subword_set_contains(
    below: &mut HashMap<Vec<usize>, HashSet<Vec<usize>>>,
    w: &[usize],
    y: &[usize],
) -> bool {
    below
        .entry(w.to_vec())
        .or_insert_with(|| subword_products(w))
        .contains(y)
}

/// One-shot convenience around [`RPolyOracle`].
pub fn oracle_kl(x: &[usize], w: &[usize]) -> Vec<i64> {
    RPolyOracle::new(w.len()).kl(x, w)
}

/// Partitions of `n`, each as a weakly decreasing vector.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Brute-force convolution for the multiplicative property of local
/// character expansions: loops over every tuple of partitions of the factor
/// sizes, zero-pads to length `n`, sums, sorts, and accumulates the product of
/// the looked-up coefficients.
pub fn oracle_product_c(factors: &[(usize, BTreeMap<Vec<usize>, i64>)]) -> BTreeMap<Vec<usize>, i64> {
    let n: usize = factors.iter().map(|(m, _)| m).sum();
    let choices: Vec<Vec<Vec<usize>>> = factors.iter().map(|(m, _)| partitions(*m)).collect();
    let mut out: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    let mut idx = vec![0usize; factors.len()];
    loop {
        let mut coeff = 1i64;
        let mut sum = vec![0usize; n];
        for (f, &i) in idx.iter().enumerate() {
            let beta = &choices[f][i];
            coeff *= factors[f].1.get(beta).copied().unwrap_or(0);
            for (j, b) in beta.iter().enumerate() {
                sum[j] += b;
            }
        }
        if coeff != 0 {
            sum.sort_unstable_by(|a, b| b.cmp(a));
            sum.retain(|&v| v > 0);
            *out.entry(sum).or_insert(0) += coeff;
        }
        // odometer
        let mut f = 0;
        loop {
            if f == idx.len() {
                out.retain(|_, v| *v != 0);
                return out;
            }
            idx[f] += 1;
            if idx[f] < choices[f].len() {
                break;
            }
            idx[f] = 0;
            f += 1;
        }
    }
}

/// Number of multisets of integer segments `[lo, hi]` with
/// `window_lo <= lo < hi <= window_hi` whose lengths add up to `n`.
pub fn oracle_multisegment_count(n: usize, window_lo: i64, window_hi: i64) -> u64 {
    // unbounded knapsack over segment types
    let mut ways = vec![0u64; n + 1];
    ways[0] = 1;
    for lo in window_lo..window_hi {
        for hi in lo + 1..=window_hi {
            let len = (hi - lo) as usize;
            for t in len..=n {
                ways[t] += ways[t - len];
            }
        }
    }
    ways[n]
}
