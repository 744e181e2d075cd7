//! Kazhdan-Lusztig polynomials of `S_k`.
//!
//! [`KlEngine`] memoises `P_{x,w}` under a read-write lock: lookups share the
//! lock, insertions take it exclusively, and no lock is held while recursing.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::symgroup::{bruhat_leq_unchecked, Permutation};
use crate::combinat::check_len;

/// Integer polynomial in `q`; index `i` holds the coefficient of `q^i`.
/// No trailing zeros, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct KLPolynomial {
    coeffs: Vec<BigInt>,
}

impl KLPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self { coeffs: vec![BigInt::one()] }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `self += factor * q^shift * other`
    fn add_scaled(&mut self, other: &KLPolynomial, factor: &BigInt, shift: usize) {
        if other.is_zero() || factor.is_zero() {
            return;
        }
        let need = other.coeffs.len() + shift;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, BigInt::zero());
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            self.coeffs[i + shift] += factor * c;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl fmt::Display for KLPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if i == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

type Key = (Permutation, Permutation);
type MuList = Arc<Vec<(Permutation, BigInt)>>;

/// Memoised Kazhdan-Lusztig engine for all `S_k` at once (keys carry `k`).
#[derive(Default)]
pub struct KlEngine {
    cache: RwLock<HashMap<Key, Arc<KLPolynomial>>>,
    // z < v with mu(z, v) != 0, per v
    mu: RwLock<HashMap<Permutation, MuList>>,
}

impl KlEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of memoised `(x, w)` pairs.
    pub fn cached_pairs(&self) -> usize {
        self.cache.read().unwrap().len()
    }

    pub fn kl(&self, x: &Permutation, w: &Permutation) -> Result<Arc<KLPolynomial>> {
        check_len(x.k(), w.k())?;
        Ok(self.p(x, w))
    }

    pub fn kl_at_one(&self, x: &Permutation, w: &Permutation) -> Result<BigInt> {
        Ok(self.kl(x, w)?.eval_at_one())
    }

    /// `mu(x, w)`: coefficient of `q^{(l(w)-l(x)-1)/2}` in `P_{x,w}`, zero
    /// when the length difference is even.
    pub fn mu(&self, x: &Permutation, w: &Permutation) -> Result<BigInt> {
        check_len(x.k(), w.k())?;
        let (lx, lw) = (x.length(), w.length());
        if lw <= lx || (lw - lx) % 2 == 0 {
            return Ok(BigInt::zero());
        }
        Ok(self.p(x, w).coeff((lw - lx - 1) / 2))
    }

    fn lookup(&self, key: &Key) -> Option<Arc<KLPolynomial>> {
        self.cache.read().unwrap().get(key).cloned()
    }

    fn p(&self, x: &Permutation, w: &Permutation) -> Arc<KLPolynomial> {
        let key = (x.clone(), w.clone());
        if let Some(hit) = self.lookup(&key) {
            return hit;
        }
        let value = Arc::new(self.compute(x, w));
        self.cache.write().unwrap().entry(key).or_insert(value).clone()
    }

    fn compute(&self, x: &Permutation, w: &Permutation) -> KLPolynomial {
        if x == w {
            return KLPolynomial::one();
        }
        if !bruhat_leq_unchecked(x, w) {
            return KLPolynomial::zero();
        }
        let (lx, lw) = (x.length(), w.length());
        // constant term 1 and degree <= (d-1)/2 leave nothing else when d <= 2
        if lw - lx <= 2 {
            return KLPolynomial::one();
        }
        let s = w.first_left_descent().expect("w > x has a left descent");
        let sx = x.left_mul_simple(s);
        if !x.has_left_descent(s) {
            // P_{x,w} = P_{sx,w} whenever sw < w
            return (*self.p(&sx, w)).clone();
        }
        let v = w.left_mul_simple(s);
        let mut out = (*self.p(&sx, &v)).clone();
        out.add_scaled(&self.p(x, &v), &BigInt::one(), 1);
        for (z, mu_zv) in self.mu_list(&v).iter() {
            if !z.has_left_descent(s) || !bruhat_leq_unchecked(x, z) {
                continue;
            }
            let shift = (lw - z.length()) / 2;
            out.add_scaled(&self.p(x, z), &-mu_zv, shift);
        }
        out
    }

    fn mu_list(&self, v: &Permutation) -> MuList {
        if let Some(hit) = self.mu.read().unwrap().get(v) {
            return hit.clone();
        }
        let lv = v.length();
        let mut list: Vec<(Permutation, BigInt)> = lower_interval(v)
            .into_iter()
            .filter(|z| (lv - z.length()) % 2 == 1)
            .filter_map(|z| {
                let m = self.p(&z, v).coeff((lv - z.length() - 1) / 2);
                (!m.is_zero()).then_some((z, m))
            })
            .collect();
        list.sort();
        let list = Arc::new(list);
        self.mu.write().unwrap().entry(v.clone()).or_insert(list).clone()
    }

    /// Writes every memoised pair, sorted, in the `klcache/1` format.
    pub fn save_cache<W: Write>(&self, mut out: W) -> Result<()> {
        let cache = self.cache.read().unwrap();
        let mut entries: Vec<(&Key, &Arc<KLPolynomial>)> = cache.iter().collect();
        entries.sort_by(|a, b| (a.0 .0.k(), a.0).cmp(&(b.0 .0.k(), b.0)));
        writeln!(out, "{CACHE_HEADER}")?;
        for ((x, w), p) in entries {
            let coeffs: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
            writeln!(out, "{}\t{}\t{}\t{}", x.k(), x, w, coeffs.join(","))?;
        }
        Ok(())
    }

    /// Merges entries from a `klcache/1` stream.
    pub fn load_cache<R: BufRead>(&self, input: R) -> Result<usize> {
        let mut lines = input.lines();
        match lines.next() {
            Some(Ok(h)) if h.trim_end() == CACHE_HEADER => {}
            Some(Ok(h)) => return Err(Error::Cache(format!("unexpected header {h:?}"))),
            Some(Err(e)) => return Err(e.into()),
            None => return Err(Error::Cache("empty cache file".into())),
        }
        let mut parsed = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            parsed.push(parse_cache_record(&line).map_err(|e| Error::Cache(format!("line {}: {e}", lineno + 2)))?);
        }
        let count = parsed.len();
        let mut cache = self.cache.write().unwrap();
        for (key, poly) in parsed {
            cache.entry(key).or_insert_with(|| Arc::new(poly));
        }
        Ok(count)
    }

    pub fn save_cache_file(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path)?;
        let mut w = std::io::BufWriter::new(file);
        self.save_cache(&mut w)?;
        w.flush()?;
        Ok(())
    }

    /// Loads `path` if it exists; a missing file is an empty cache.
    pub fn load_cache_file(&self, path: &Path) -> Result<usize> {
        match std::fs::File::open(path) {
            Ok(f) => self.load_cache(std::io::BufReader::new(f)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(0),
            Err(e) => Err(e.into()),
        }
    }
}

pub const CACHE_HEADER: &str = "klcache/1";

fn parse_cache_record(line: &str) -> Result<(Key, KLPolynomial)> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != 4 {
        return Err(Error::Cache(format!("expected 4 tab-separated fields, got {}", fields.len())));
    }
    let k: usize = fields[0].parse().map_err(|_| Error::Cache(format!("bad k {:?}", fields[0])))?;
    let x: Permutation = fields[1].parse()?;
    let w: Permutation = fields[2].parse()?;
    if x.k() != k || w.k() != k {
        return Err(Error::Cache(format!("permutation length does not match k = {k}")));
    }
    let coeffs = if fields[3].is_empty() {
        Vec::new()
    } else {
        fields[3]
            .split(',')
            .map(|c| c.trim().parse::<BigInt>().map_err(|_| Error::Cache(format!("bad coefficient {c:?}"))))
            .collect::<Result<Vec<_>>>()?
    };
    Ok(((x, w), KLPolynomial::new(coeffs)))
}

/// The Bruhat interval `[e, v]`, found by walking down along
/// length-decreasing transpositions.
fn lower_interval(v: &Permutation) -> Vec<Permutation> {
    let k = v.k();
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::from([v.clone()]);
    seen.insert(v.clone());
    while let Some(u) = queue.pop_front() {
        let img = u.images();
        for i in 0..k {
            for j in i + 1..k {
                if img[i] > img[j] {
                    let mut next = img.to_vec();
                    next.swap(i, j);
                    let next = Permutation::from_zero_based(next);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    let mut out: Vec<Permutation> = seen.into_iter().collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn trivial_cases() {
        let e = KlEngine::new();
        let w = perm("2413");
        assert_eq!(*e.kl(&w, &w).unwrap(), KLPolynomial::one());
        assert!(e.kl(&perm("321"), &perm("123")).unwrap().is_zero());
        assert_eq!(e.kl_at_one(&Permutation::simple(2, 1), &Permutation::identity(2)).unwrap(), BigInt::zero());
        assert!(e.kl(&perm("12"), &perm("123")).is_err());
    }

    #[test]
    fn singular_s4_pairs() {
        let e = KlEngine::new();
        let one_plus_q = KLPolynomial::from_i64(&[1, 1]);
        let id = Permutation::identity(4);
        assert_eq!(*e.kl(&id, &perm("3412")).unwrap(), one_plus_q);
        assert_eq!(*e.kl(&id, &perm("4231")).unwrap(), one_plus_q);
        assert_eq!(e.kl_at_one(&id, &perm("3412")).unwrap(), BigInt::from(2));
    }

    #[test]
    fn s3_is_all_ones() {
        let e = KlEngine::new();
        for x in Permutation::all(3) {
            for w in Permutation::all(3) {
                let p = e.kl(&x, &w).unwrap();
                let expected = if bruhat_leq_unchecked(&x, &w) { KLPolynomial::one() } else { KLPolynomial::zero() };
                assert_eq!(*p, expected, "P_{{{x},{w}}}");
            }
        }
    }

    #[test]
    fn lower_interval_matches_bruhat() {
        let v = perm("35142");
        let interval = lower_interval(&v);
        let expected: Vec<_> = Permutation::all(5).filter(|z| bruhat_leq_unchecked(z, &v)).collect();
        assert_eq!(interval, expected);
    }

    #[test]
    fn display() {
        assert_eq!(KLPolynomial::from_i64(&[1, 1]).to_string(), "1 + q");
        assert_eq!(KLPolynomial::from_i64(&[1, 0, 2]).to_string(), "1 + 2q^2");
        assert_eq!(KLPolynomial::from_i64(&[0, -1]).to_string(), "-q");
        assert_eq!(KLPolynomial::from_i64(&[1, 0, 0]).degree(), Some(0));
        assert_eq!(KLPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn cache_round_trip() {
        let e = KlEngine::new();
        e.kl(&Permutation::identity(4), &perm("3412")).unwrap();
        e.kl(&perm("321"), &perm("123")).unwrap();
        let mut buf = Vec::new();
        e.save_cache(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("klcache/1\n"));
        assert!(text.contains("4\t1234\t3412\t1,1\n"));
        assert!(text.contains("3\t321\t123\t\n"));

        let f = KlEngine::new();
        let n = f.load_cache(buf.as_slice()).unwrap();
        assert_eq!(n, e.cached_pairs());
        let mut again = Vec::new();
        f.save_cache(&mut again).unwrap();
        assert_eq!(buf, again);
    }

    #[test]
    fn cache_rejects_bad_input() {
        let e = KlEngine::new();
        assert!(e.load_cache("klcache/2\n".as_bytes()).is_err());
        assert!(e.load_cache("klcache/1\n3\t12\t123\t1\n".as_bytes()).is_err());
        assert!(e.load_cache("klcache/1\n2\t12\t21\tx\n".as_bytes()).is_err());
        assert!(e.load_cache("".as_bytes()).is_err());
    }
}
