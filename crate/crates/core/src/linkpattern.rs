//! Involutions with `k` two-cycles viewed as link patterns: `n` points on a
//! line, with an arc joining `i < j` whenever the involution swaps them.
//!
//! All points in the public API are 1-based. Internally the pairing is a
//! 0-based array; [`to_index`] and [`to_point`] are the only conversions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[inline]
fn to_index(point: usize) -> usize {
    point - 1
}

#[inline]
fn to_point(index: usize) -> usize {
    index + 1
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Arc {
    pub left: usize,
    pub right: usize,
}

impl Arc {
    pub fn new(a: usize, b: usize) -> Self {
        Arc {
            left: a.min(b),
            right: a.max(b),
        }
    }

    /// `self` is over `other` when `other` sits strictly inside it.
    pub fn is_over(&self, other: &Arc) -> bool {
        self.left < other.left && other.right < self.right
    }

    pub fn crosses(&self, other: &Arc) -> bool {
        (self.left < other.left && other.left < self.right && self.right < other.right)
            || (other.left < self.left && self.left < other.right && other.right < self.right)
    }

    /// A bridge over `p` spans it strictly.
    pub fn spans(&self, p: usize) -> bool {
        self.left < p && p < self.right
    }

    pub fn contains_endpoint_in(&self, lo: usize, hi: usize) -> bool {
        (lo..=hi).contains(&self.left) || (lo..=hi).contains(&self.right)
    }

    pub fn mirror(&self, n: usize) -> Arc {
        Arc::new(n + 1 - self.right, n + 1 - self.left)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.left, self.right)
    }
}

/// An element of `S_n^2(k)`: a self-inverse pairing of `{1..n}`.
///
/// Equality is equality of pairings. The derived `Ord` is only a storage
/// order; enumeration order is lexicographic on [`Involution::arcs`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Involution {
    mate: Vec<usize>,
}

impl Involution {
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut mate: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for &(a, b) in pairs {
            for p in [a, b] {
                if p < 1 || p > n {
                    return Err(Error::OutOfRange { point: p, n });
                }
            }
            if a == b {
                return Err(Error::DegeneratePair(a));
            }
            for p in [a, b] {
                if std::mem::replace(&mut seen[to_index(p)], true) {
                    return Err(Error::DuplicateEndpoint(p));
                }
            }
            mate[to_index(a)] = to_index(b);
            mate[to_index(b)] = to_index(a);
        }
        Ok(Involution { mate })
    }

    pub fn from_arcs(n: usize, arcs: &[Arc]) -> Result<Self> {
        let pairs: Vec<_> = arcs.iter().map(|a| (a.left, a.right)).collect();
        Self::new(n, &pairs)
    }

    pub fn identity(n: usize) -> Self {
        Involution {
            mate: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.mate.len()
    }

    /// Number of arcs.
    pub fn k(&self) -> usize {
        self.mate.iter().enumerate().filter(|&(i, &m)| i < m).count()
    }

    pub fn partner(&self, p: usize) -> usize {
        to_point(self.mate[to_index(p)])
    }

    fn check_point(&self, p: usize) -> Result<()> {
        if p < 1 || p > self.n() {
            return Err(Error::OutOfRange { point: p, n: self.n() });
        }
        Ok(())
    }

    pub fn is_fixed(&self, p: usize) -> bool {
        self.partner(p) == p
    }

    pub fn is_end_point(&self, p: usize) -> bool {
        !self.is_fixed(p)
    }

    /// Arcs sorted by left end point.
    pub fn arcs(&self) -> Vec<Arc> {
        self.mate
            .iter()
            .enumerate()
            .filter(|&(i, &m)| i < m)
            .map(|(i, &m)| Arc {
                left: to_point(i),
                right: to_point(m),
            })
            .collect()
    }

    pub fn has_arc(&self, arc: &Arc) -> bool {
        arc.left >= 1 && arc.right <= self.n() && arc.left < arc.right && self.partner(arc.left) == arc.right
    }

    /// `P^0`.
    pub fn fixed_points(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&p| self.is_fixed(p)).collect()
    }

    /// `P^-`.
    pub fn left_ends(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&p| p < self.partner(p)).collect()
    }

    /// `P^+`.
    pub fn right_ends(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&p| p > self.partner(p)).collect()
    }

    pub fn crossings(&self) -> usize {
        let arcs = self.arcs();
        let mut count = 0;
        for (s, a) in arcs.iter().enumerate() {
            for b in &arcs[s + 1..] {
                // sorted by left end point, so a.left < b.left
                if b.left < a.right && a.right < b.right {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn bridges(&self) -> usize {
        // Sweep: the number of open arcs at a fixed point is its bridge count.
        let mut open = 0;
        let mut total = 0;
        for p in 1..=self.n() {
            let m = self.partner(p);
            if m == p {
                total += open;
            } else if p < m {
                open += 1;
            } else {
                open -= 1;
            }
        }
        total
    }

    /// `R_{a,b}`: arcs with both end points in `[a, b]`.
    pub fn arc_count_in(&self, a: usize, b: usize) -> Result<usize> {
        if a < 1 || a > b || b > self.n() {
            return Err(Error::BadInterval { a, b, n: self.n() });
        }
        Ok((a..=b)
            .filter(|&p| {
                let m = self.partner(p);
                p < m && m <= b
            })
            .count())
    }

    /// All `R_{a,b}` at once, as an `n * n` table indexed `(a-1) * n + (b-1)`.
    pub fn rank_table(&self) -> RankTable {
        let n = self.n();
        let mut cells = vec![0u8; n * n];
        for b in 0..n {
            let mut run = 0u8;
            for a in (0..=b).rev() {
                let m = self.mate[a];
                if a < m && m <= b {
                    run += 1;
                }
                cells[a * n + b] = run;
            }
        }
        RankTable { n, cells }
    }

    /// The closure order: `self ≼ other` iff every interval holds at least
    /// as many arcs of `other` as of `self`.
    pub fn precedes(&self, other: &Involution) -> Result<bool> {
        self.check_same_stratum(other)?;
        Ok(self.rank_table().dominated_by(&other.rank_table()))
    }

    pub(crate) fn check_same_stratum(&self, other: &Involution) -> Result<()> {
        let (n1, k1, n2, k2) = (self.n(), self.k(), other.n(), other.k());
        if n1 != n2 || k1 != k2 {
            return Err(Error::SizeMismatch { n1, k1, n2, k2 });
        }
        Ok(())
    }

    /// `σ*`: reflect the pattern through `i ↦ n+1-i`.
    pub fn mirror(&self) -> Involution {
        let n = self.n();
        let mut mate = vec![0; n];
        for i in 0..n {
            mate[n - 1 - i] = n - 1 - self.mate[i];
        }
        Involution { mate }
    }

    /// Arcs with no arc under them.
    pub fn minimal_arcs(&self) -> Vec<Arc> {
        let arcs = self.arcs();
        arcs.iter()
            .filter(|a| !arcs.iter().any(|b| a.is_over(b)))
            .copied()
            .collect()
    }

    /// Pairs `(outer, inner)` with `inner` under `outer` such that every other
    /// arc over `inner` is also over `outer`.
    pub fn concentric_pairs(&self) -> Vec<(Arc, Arc)> {
        let arcs = self.arcs();
        let mut out = Vec::new();
        for outer in &arcs {
            for inner in &arcs {
                if !outer.is_over(inner) {
                    continue;
                }
                let ok = arcs
                    .iter()
                    .filter(|q| *q != outer && q.is_over(inner))
                    .all(|q| q.is_over(outer));
                if ok {
                    out.push((*outer, *inner));
                }
            }
        }
        out
    }

    /// Pairs `(outer, inner)` with `inner` under `outer` and no third arc
    /// both under `outer` and over `inner`. Swapping their left end points
    /// adds exactly one crossing and changes nothing else. On noncrossing
    /// patterns this is the same set as [`Involution::concentric_pairs`].
    pub fn nested_swap_pairs(&self) -> Vec<(Arc, Arc)> {
        let arcs = self.arcs();
        let mut out = Vec::new();
        for outer in &arcs {
            for inner in &arcs {
                if outer.is_over(inner) && !arcs.iter().any(|q| outer.is_over(q) && q.is_over(inner)) {
                    out.push((*outer, *inner));
                }
            }
        }
        out
    }

    /// Pairs `(left, right)` with `left.right < right.left`, no fixed point in
    /// `[left.right, right.left]`, and no arc over either of them having an
    /// end point in that gap.
    pub fn consecutive_pairs(&self) -> Vec<(Arc, Arc)> {
        let arcs = self.arcs();
        let mut out = Vec::new();
        for s in &arcs {
            for t in &arcs {
                if s.right >= t.left {
                    continue;
                }
                let (lo, hi) = (s.right, t.left);
                if (lo..=hi).any(|p| self.is_fixed(p)) {
                    continue;
                }
                let blocked = arcs
                    .iter()
                    .filter(|q| q.is_over(s) || q.is_over(t))
                    .any(|q| q.contains_endpoint_in(lo, hi));
                if !blocked {
                    out.push((*s, *t));
                }
            }
        }
        out
    }

    fn check_arc(&self, arc: &Arc) -> Result<()> {
        if !self.has_arc(arc) {
            return Err(Error::NotAnArc(arc.left, arc.right));
        }
        Ok(())
    }

    /// The nearest fixed point left of `arc`, provided every arc over `arc`
    /// also spans it.
    pub fn next_point_left(&self, arc: &Arc) -> Result<Option<usize>> {
        self.check_arc(arc)?;
        let Some(p) = (1..arc.left).rev().find(|&p| self.is_fixed(p)) else {
            return Ok(None);
        };
        Ok(self.all_over_span(arc, p).then_some(p))
    }

    pub fn next_point_right(&self, arc: &Arc) -> Result<Option<usize>> {
        self.check_arc(arc)?;
        let Some(p) = (arc.right + 1..=self.n()).find(|&p| self.is_fixed(p)) else {
            return Ok(None);
        };
        Ok(self.all_over_span(arc, p).then_some(p))
    }

    fn all_over_span(&self, arc: &Arc, p: usize) -> bool {
        self.arcs()
            .iter()
            .filter(|q| q.is_over(arc))
            .all(|q| q.spans(p))
    }

    /// `σ_{i→p}`: the arc through `i` gets `p` in place of `i`.
    pub fn move_endpoint(&self, i: usize, p: usize) -> Result<Involution> {
        self.check_point(i)?;
        self.check_point(p)?;
        if self.is_fixed(i) {
            return Err(Error::NotEndPoint(i));
        }
        if !self.is_fixed(p) {
            return Err(Error::NotFixedPoint(p));
        }
        let (i, p) = (to_index(i), to_index(p));
        let j = self.mate[i];
        let mut mate = self.mate.clone();
        mate[i] = i;
        mate[p] = j;
        mate[j] = p;
        Ok(Involution { mate })
    }

    /// `σ_{i⇄j}`: `((i,p)),((j,q))` become `((j,p)),((i,q))`.
    pub fn swap_endpoints(&self, i: usize, j: usize) -> Result<Involution> {
        self.check_point(i)?;
        self.check_point(j)?;
        for x in [i, j] {
            if self.is_fixed(x) {
                return Err(Error::NotEndPoint(x));
            }
        }
        if i == j || self.partner(i) == j {
            return Err(Error::SameArc(i, j));
        }
        let (i, j) = (to_index(i), to_index(j));
        let (p, q) = (self.mate[i], self.mate[j]);
        let mut mate = self.mate.clone();
        mate[j] = p;
        mate[p] = j;
        mate[i] = q;
        mate[q] = i;
        Ok(Involution { mate })
    }

    /// Cycle notation, e.g. `(2,7)(3,4)(5,6)`; `()` when there are no arcs.
    pub fn cycles(&self) -> String {
        let arcs = self.arcs();
        if arcs.is_empty() {
            return "()".to_string();
        }
        arcs.iter().map(Arc::to_string).collect()
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}; {}", self.n(), self.cycles())
    }
}

impl fmt::Debug for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `n=8; (3,4)(5,6)(2,7)`. Arcs may come in any order; `()` or an
/// empty tail means the identity.
impl FromStr for Involution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
        let (head, tail) = s.split_once(';').ok_or_else(|| bad("missing ';'"))?;
        let n = head
            .trim()
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse::<usize>().ok())
            .ok_or_else(|| bad("expected n=<int>"))?;
        let tail = tail.trim();
        let mut pairs = Vec::new();
        if !tail.is_empty() && tail != "()" {
            let mut rest = tail;
            while !rest.is_empty() {
                let body = rest
                    .strip_prefix('(')
                    .ok_or_else(|| bad("expected '('"))?;
                let close = body.find(')').ok_or_else(|| bad("unclosed '('"))?;
                let (a, b) = body[..close]
                    .split_once(',')
                    .ok_or_else(|| bad("expected (i,j)"))?;
                let a = a.trim().parse().map_err(|_| bad("bad point"))?;
                let b = b.trim().parse().map_err(|_| bad("bad point"))?;
                pairs.push((a, b));
                rest = body[close + 1..].trim_start();
            }
        }
        Involution::new(n, &pairs)
    }
}

impl Serialize for Involution {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Involution {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Every `R_{a,b}` of one involution.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RankTable {
    n: usize,
    cells: Vec<u8>,
}

impl RankTable {
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.cells[to_index(a) * self.n + to_index(b)] as usize
    }

    /// Pointwise `<=` on the upper triangle. Cells below the diagonal are zero
    /// in both tables.
    pub fn dominated_by(&self, other: &RankTable) -> bool {
        self.n == other.n && self.cells.iter().zip(&other.cells).all(|(x, y)| x <= y)
    }
}

/// Every element of `S_n^2(k)`, lexicographic on the sorted arc list.
pub fn enumerate_involutions(n: usize, k: usize) -> Result<impl Iterator<Item = Involution>> {
    if 2 * k > n {
        return Err(Error::BadParameters(format!("2k={} exceeds n={n}", 2 * k)));
    }
    let mut out = Vec::new();
    let mut mate: Vec<usize> = (0..n).collect();
    fill_arcs(n, k, 0, &mut mate, &mut out);
    Ok(out.into_iter())
}

fn fill_arcs(n: usize, remaining: usize, start: usize, mate: &mut Vec<usize>, out: &mut Vec<Involution>) {
    if remaining == 0 {
        out.push(Involution { mate: mate.clone() });
        return;
    }
    for i in start..n {
        if mate[i] != i {
            continue;
        }
        let free_after = (i + 1..n).filter(|&x| mate[x] == x).count();
        if free_after + 1 < 2 * remaining {
            break;
        }
        for j in i + 1..n {
            if mate[j] != j {
                continue;
            }
            mate[i] = j;
            mate[j] = i;
            fill_arcs(n, remaining - 1, i + 1, mate, out);
            mate[i] = i;
            mate[j] = j;
        }
    }
}

/// `|S_n^2(k)| = C(n, 2k) (2k-1)!!`.
pub fn involution_count(n: usize, k: usize) -> usize {
    if 2 * k > n {
        return 0;
    }
    let mut binom = 1usize;
    for i in 0..2 * k {
        binom = binom * (n - i) / (i + 1);
    }
    let double_fact: usize = (1..2 * k).step_by(2).product();
    binom * double_fact
}
