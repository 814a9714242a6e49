//! Two-column tableaux. A standard tableau of shape `(n-k, k)` is identified
//! by its second column; the first column and row layout are derived.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linkpattern::Involution;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawTableau")]
pub struct TwoColumnTableau {
    n: usize,
    second_column: Vec<usize>,
}

#[derive(Deserialize)]
struct RawTableau {
    n: usize,
    second_column: Vec<usize>,
}

impl TryFrom<RawTableau> for TwoColumnTableau {
    type Error = Error;

    fn try_from(raw: RawTableau) -> Result<Self> {
        TwoColumnTableau::new(raw.n, &raw.second_column)
    }
}

fn is_standard_column(sorted: &[usize]) -> bool {
    sorted.iter().enumerate().all(|(p, &j)| j >= 2 * (p + 1))
}

impl TwoColumnTableau {
    /// Validates the second column of a standard tableau with `n` boxes. The
    /// entries may be given in any order.
    pub fn new(n: usize, second_column: &[usize]) -> Result<Self> {
        let k = second_column.len();
        if 2 * k > n {
            return Err(Error::BadShape { n, k });
        }
        let mut col = second_column.to_vec();
        col.sort_unstable();
        if let Some(&p) = col.iter().find(|&&p| p < 1 || p > n) {
            return Err(Error::OutOfRange { point: p, n });
        }
        if let Some(w) = col.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEndpoint(w[0]));
        }
        if !is_standard_column(&col) {
            return Err(Error::NotStandard(col));
        }
        Ok(TwoColumnTableau {
            n,
            second_column: col,
        })
    }

    /// The single-column tableau on `n` boxes.
    pub fn single_column(n: usize) -> Self {
        TwoColumnTableau {
            n,
            second_column: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.second_column.len()
    }

    pub fn second_column(&self) -> &[usize] {
        &self.second_column
    }

    pub fn first_column(&self) -> Vec<usize> {
        (1..=self.n)
            .filter(|p| self.second_column.binary_search(p).is_err())
            .collect()
    }

    /// `c_T(i)`.
    pub fn column_of(&self, i: usize) -> Result<u8> {
        if i < 1 || i > self.n {
            return Err(Error::OutOfRange { point: i, n: self.n });
        }
        Ok(if self.second_column.binary_search(&i).is_ok() { 2 } else { 1 })
    }

    fn in_second(&self, i: usize) -> bool {
        self.second_column.binary_search(&i).is_ok()
    }

    /// `τ*(T)`: the `i` with `i` in the first column and `i+1` in the second.
    pub fn tau_star(&self) -> Vec<usize> {
        (1..self.n)
            .filter(|&i| !self.in_second(i) && self.in_second(i + 1))
            .collect()
    }

    /// `σ_T`: each second-column entry, taken in increasing order, is joined
    /// to the largest still-unused first-column entry below it.
    pub fn sigma(&self) -> Involution {
        let mut used = vec![false; self.n + 1];
        let mut pairs = Vec::with_capacity(self.k());
        for &j in &self.second_column {
            let i = (1..j)
                .rev()
                .find(|&a| !self.in_second(a) && !used[a])
                .expect("standard tableau always has a free first-column entry below j");
            used[i] = true;
            pairs.push((i, j));
        }
        Involution::new(self.n, &pairs).expect("sigma_T pairs are disjoint and in range")
    }

    /// Inverse of [`TwoColumnTableau::sigma`] on noncrossing, bridge-free
    /// involutions.
    pub fn from_sigma(s: &Involution) -> Result<Self> {
        if s.crossings() + s.bridges() > 0 {
            return Err(Error::NotMaximal);
        }
        TwoColumnTableau::new(s.n(), &s.right_ends())
    }

    /// `T^S`, realized by mirroring `σ_T`.
    pub fn schuetzenberger(&self) -> Self {
        Self::from_sigma(&self.sigma().mirror()).expect("mirror of sigma_T is noncrossing and bridge-free")
    }

    /// `T_{n-1}`: drop the entry `n`.
    pub fn restrict(&self) -> Result<Self> {
        if self.n == 0 {
            return Err(Error::Empty);
        }
        let mut col = self.second_column.clone();
        if col.last() == Some(&self.n) {
            col.pop();
        }
        Ok(TwoColumnTableau {
            n: self.n - 1,
            second_column: col,
        })
    }

    /// `{4,6,7}`.
    pub fn label(&self) -> String {
        let entries: Vec<_> = self.second_column.iter().map(usize::to_string).collect();
        format!("{{{}}}", entries.join(","))
    }
}

impl fmt::Display for TwoColumnTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<_> = self.second_column.iter().map(usize::to_string).collect();
        write!(f, "n={}; col2={}", self.n, entries.join(","))
    }
}

impl fmt::Debug for TwoColumnTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a comma-separated list of points; an empty string is an empty list.
pub fn parse_point_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad point {v:?} in {s:?}")))
        })
        .collect()
}

/// Parses `n=8; col2=4,6,7`.
impl FromStr for TwoColumnTableau {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected 'n=<int>; col2=<list>' in {s:?}"));
        let (head, tail) = s.split_once(';').ok_or_else(bad)?;
        let n = head
            .trim()
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(bad)?;
        let col = tail.trim().strip_prefix("col2=").ok_or_else(bad)?;
        TwoColumnTableau::new(n, &parse_point_list(col)?)
    }
}

/// Standard tableaux of shape `(n-k, k)`, lexicographic on the second column.
pub fn enumerate_tableaux(n: usize, k: usize) -> Result<impl Iterator<Item = TwoColumnTableau>> {
    if 2 * k > n {
        return Err(Error::BadShape { n, k });
    }
    let mut out = Vec::new();
    let mut col = Vec::with_capacity(k);
    fill_column(n, k, 1, &mut col, &mut out);
    Ok(out.into_iter())
}

fn fill_column(n: usize, k: usize, start: usize, col: &mut Vec<usize>, out: &mut Vec<TwoColumnTableau>) {
    if col.len() == k {
        out.push(TwoColumnTableau {
            n,
            second_column: col.clone(),
        });
        return;
    }
    let p = col.len() + 1;
    let remaining = k - col.len();
    for j in start.max(2 * p)..=n + 1 - remaining {
        col.push(j);
        fill_column(n, k, j + 1, col, out);
        col.pop();
    }
}

/// Ballot number `C(n,k) - C(n,k-1)`.
pub fn tableau_count(n: usize, k: usize) -> usize {
    let binom = |n: usize, k: usize| -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    };
    if 2 * k > n {
        return 0;
    }
    binom(n, k) - if k == 0 { 0 } else { binom(n, k - 1) }
}

/// A filling of the `(n-k, k)` diagram by `1..n` with increasing rows.
///
/// Row `p < k` is `(first[p], second[p])`; rows `k..n-k` hold `first[p]` alone.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RowStandardTableau {
    first: Vec<usize>,
    second: Vec<usize>,
}

impl RowStandardTableau {
    pub fn new(first: Vec<usize>, second: Vec<usize>) -> Result<Self> {
        let n = first.len() + second.len();
        let k = second.len();
        if 2 * k > n {
            return Err(Error::BadShape { n, k });
        }
        let mut seen = vec![false; n + 1];
        for &e in first.iter().chain(&second) {
            if e < 1 || e > n {
                return Err(Error::OutOfRange { point: e, n });
            }
            if std::mem::replace(&mut seen[e], true) {
                return Err(Error::DuplicateEndpoint(e));
            }
        }
        if let Some(p) = (0..k).find(|&p| first[p] >= second[p]) {
            return Err(Error::BadParameters(format!(
                "row {} = ({},{}) is not increasing",
                p + 1,
                first[p],
                second[p]
            )));
        }
        Ok(RowStandardTableau { first, second })
    }

    pub fn n(&self) -> usize {
        self.first.len() + self.second.len()
    }

    pub fn k(&self) -> usize {
        self.second.len()
    }

    /// First-column entries, top to bottom.
    pub fn first_column(&self) -> &[usize] {
        &self.first
    }

    /// Second-column entries, top to bottom.
    pub fn second_column(&self) -> &[usize] {
        &self.second
    }

    /// `σ(τ)`: pair the two columns row by row.
    pub fn sigma(&self) -> Involution {
        let pairs: Vec<_> = self.first.iter().copied().zip(self.second.iter().copied()).collect();
        Involution::new(self.n(), &pairs).expect("row entries form a permutation")
    }

    fn position(&self, entry: usize) -> (u8, usize) {
        if let Some(p) = self.first.iter().position(|&e| e == entry) {
            (1, p)
        } else {
            (2, self.second.iter().position(|&e| e == entry).expect("entry present"))
        }
    }

    fn swapped(&self, a: usize, b: usize) -> Option<Self> {
        let mut out = self.clone();
        for (from, to) in [(a, b), (b, a)] {
            match self.position(from) {
                (1, p) => out.first[p] = to,
                (_, p) => out.second[p] = to,
            }
        }
        let standard = (0..out.k()).all(|p| out.first[p] < out.second[p]);
        standard.then_some(out)
    }
}

impl fmt::Display for RowStandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .first
            .iter()
            .enumerate()
            .map(|(p, a)| match self.second.get(p) {
                Some(b) => format!("({a},{b})"),
                None => format!("({a})"),
            })
            .collect();
        f.write_str(&rows.concat())
    }
}

/// `τ_0`: first column `1..n-k`, second column `n-k+1..n`, top to bottom.
pub fn tau0(n: usize, k: usize) -> Result<RowStandardTableau> {
    if 2 * k > n {
        return Err(Error::BadShape { n, k });
    }
    RowStandardTableau::new((1..=n - k).collect(), (n - k + 1..=n).collect())
}

/// `X(τ_0)` together with the transposed pair `(i, j)`, `i < j`, `i <= n-k`.
pub fn x_tau0_with_swaps(n: usize, k: usize) -> Result<Vec<((usize, usize), RowStandardTableau)>> {
    let base = tau0(n, k)?;
    let mut out = Vec::new();
    for i in 1..=n - k {
        for j in i + 1..=n {
            if let Some(t) = base.swapped(i, j) {
                out.push(((i, j), t));
            }
        }
    }
    Ok(out)
}

/// Row-standard tableaux one transposition away from `τ_0`.
pub fn x_tau0(n: usize, k: usize) -> Result<Vec<RowStandardTableau>> {
    Ok(x_tau0_with_swaps(n, k)?.into_iter().map(|(_, t)| t).collect())
}
