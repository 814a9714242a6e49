//! The closure poset on `S_n^2(k)`: orbit codimensions, codimension-one
//! covers built from the four elementary moves, and the minimal element.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linkpattern::{enumerate_involutions, Involution, RankTable};

/// Default bound on `n` for exhaustive constructions.
pub const DEFAULT_LIMIT: usize = 12;

/// Above this `n`, [`build_poset`] skips the reachability check unless asked.
pub const EAGER_CHECK_MAX_N: usize = 8;

/// Column lengths `(n-k, k)` of the two-column diagram.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct ShapeParams {
    pub n: usize,
    pub k: usize,
}

impl ShapeParams {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if 2 * k > n {
            return Err(Error::BadShape { n, k });
        }
        Ok(ShapeParams { n, k })
    }

    /// Every valid shape with `n <= max_n`, ordered by `n` then `k`.
    pub fn all_up_to(max_n: usize) -> impl Iterator<Item = ShapeParams> {
        (0..=max_n).flat_map(|n| (0..=n / 2).map(move |k| ShapeParams { n, k }))
    }

    /// `½(n-k)(n-k-1) + ½k(k-1)`.
    pub fn fiber_dimension(&self) -> usize {
        let (n, k) = (self.n, self.k);
        (n - k) * (n - k).saturating_sub(1) / 2 + k * k.saturating_sub(1) / 2
    }

    /// Dimension of the minimal orbit: `½(n-2k)(n-2k-1) + ½k(k-1)`.
    pub fn d0(&self) -> usize {
        let m = self.n - 2 * self.k;
        m * m.saturating_sub(1) / 2 + self.k * self.k.saturating_sub(1) / 2
    }

    /// `σ_0 = (1,n-k+1)(2,n-k+2)...(k,n)`.
    pub fn sigma_min(&self) -> Involution {
        let pairs: Vec<_> = (1..=self.k).map(|p| (p, self.n - self.k + p)).collect();
        Involution::new(self.n, &pairs).expect("sigma_0 is well formed")
    }

    /// `k̄`: `k` when `2k = n`, else `k + 1`.
    pub fn kbar(&self) -> Result<usize> {
        if self.k == 0 {
            return Err(Error::BadParameters(
                "k-bar is undefined for k = 0 (single component)".into(),
            ));
        }
        Ok(if 2 * self.k == self.n { self.k } else { self.k + 1 })
    }

    pub fn of(s: &Involution) -> Self {
        ShapeParams { n: s.n(), k: s.k() }
    }
}

impl std::fmt::Display for ShapeParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.n, self.k)
    }
}

/// `c(σ) + b(σ)`.
pub fn orbit_codimension(s: &Involution) -> usize {
    s.crossings() + s.bridges()
}

pub fn orbit_dimension(s: &Involution) -> usize {
    ShapeParams::of(s).fiber_dimension() - orbit_codimension(s)
}

fn sort_by_arcs(v: &mut Vec<Involution>) {
    v.sort_by_cached_key(Involution::arcs);
    v.dedup();
}

/// `N(σ)`: involutions whose orbit has codimension one in the closure of
/// the orbit of `s`, deduplicated and sorted by arc list.
///
/// Moves: an end point slides to the next point on its side, the facing end
/// points of a consecutive pair swap, and the left end points of a nested
/// pair swap. Nested pairs come from [`Involution::nested_swap_pairs`], which
/// also admits pairs where a third arc crosses the outer one.
pub fn lower_covers(s: &Involution) -> Vec<Involution> {
    let mut out = Vec::new();
    for arc in s.arcs() {
        if let Some(p) = s.next_point_left(&arc).expect("arc of s") {
            out.push(s.move_endpoint(arc.left, p).expect("valid move"));
        }
        if let Some(p) = s.next_point_right(&arc).expect("arc of s") {
            out.push(s.move_endpoint(arc.right, p).expect("valid move"));
        }
    }
    for (left, right) in s.consecutive_pairs() {
        out.push(s.swap_endpoints(left.right, right.left).expect("valid swap"));
    }
    for (outer, inner) in s.nested_swap_pairs() {
        out.push(s.swap_endpoints(outer.left, inner.left).expect("valid swap"));
    }
    sort_by_arcs(&mut out);
    out
}

/// `P(σ)`, by inverting [`lower_covers`] over the stratum one codimension up.
pub fn upper_covers(s: &Involution) -> Vec<Involution> {
    let codim = orbit_codimension(s);
    if codim == 0 {
        return Vec::new();
    }
    enumerate_involutions(s.n(), s.k())
        .expect("s has a valid shape")
        .filter(|t| orbit_codimension(t) + 1 == codim)
        .filter(|t| lower_covers(t).contains(s))
        .collect()
}

/// `{σ' : σ' ≼ s}`, in enumeration order.
pub fn closure_ideal(s: &Involution) -> Vec<Involution> {
    let top = s.rank_table();
    enumerate_involutions(s.n(), s.k())
        .expect("s has a valid shape")
        .filter(|t| t.rank_table().dominated_by(&top))
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConsistencyCheck {
    /// Only when `n <= EAGER_CHECK_MAX_N`.
    Auto,
    Always,
    Never,
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub limit: usize,
    pub check: ConsistencyCheck,
    pub parallel: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            limit: DEFAULT_LIMIT,
            check: ConsistencyCheck::Auto,
            parallel: false,
        }
    }
}

/// All of `S_n^2(k)` with its codimension-one covers.
#[derive(Clone, Debug)]
pub struct OrbitPoset {
    shape: ShapeParams,
    elements: Vec<Involution>,
    codims: Vec<usize>,
    /// Indices into `elements`, sorted.
    covers: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    index: HashMap<Involution, usize>,
}

pub fn build_poset(shape: ShapeParams, options: BuildOptions) -> Result<OrbitPoset> {
    if shape.n > options.limit {
        return Err(Error::LimitExceeded {
            n: shape.n,
            limit: options.limit,
        });
    }
    let elements: Vec<_> = enumerate_involutions(shape.n, shape.k)?.collect();
    let index: HashMap<_, _> = elements.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let cover_lists: Vec<Vec<Involution>> = if options.parallel {
        elements.par_iter().map(lower_covers).collect()
    } else {
        elements.iter().map(lower_covers).collect()
    };
    let mut covers = Vec::with_capacity(elements.len());
    for (s, list) in elements.iter().zip(cover_lists) {
        let mut ids = Vec::with_capacity(list.len());
        for c in list {
            let id = *index.get(&c).ok_or_else(|| {
                Error::ConsistencyFailure(format!("cover {c} of {s} is not in S_n^2(k)"))
            })?;
            ids.push(id);
        }
        ids.sort_unstable();
        covers.push(ids);
    }
    let mut upper = vec![Vec::new(); elements.len()];
    for (i, ids) in covers.iter().enumerate() {
        for &c in ids {
            upper[c].push(i);
        }
    }
    let codims = elements.iter().map(orbit_codimension).collect();
    let poset = OrbitPoset {
        shape,
        elements,
        codims,
        covers,
        upper,
        index,
    };
    let run_check = match options.check {
        ConsistencyCheck::Auto => shape.n <= EAGER_CHECK_MAX_N,
        ConsistencyCheck::Always => true,
        ConsistencyCheck::Never => false,
    };
    if run_check {
        poset.check_consistency(options.parallel)?;
    }
    Ok(poset)
}

impl OrbitPoset {
    pub fn shape(&self) -> ShapeParams {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Involution] {
        &self.elements
    }

    pub fn index_of(&self, s: &Involution) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn codimension(&self, id: usize) -> usize {
        self.codims[id]
    }

    pub fn lower_cover_ids(&self, id: usize) -> &[usize] {
        &self.covers[id]
    }

    pub fn upper_cover_ids(&self, id: usize) -> &[usize] {
        &self.upper[id]
    }

    pub fn lower_covers(&self, s: &Involution) -> Option<Vec<&Involution>> {
        let id = self.index_of(s)?;
        Some(self.covers[id].iter().map(|&c| &self.elements[c]).collect())
    }

    pub fn upper_covers(&self, s: &Involution) -> Option<Vec<&Involution>> {
        let id = self.index_of(s)?;
        Some(self.upper[id].iter().map(|&c| &self.elements[c]).collect())
    }

    /// Reflexive-transitive closure of the covers, one bitset per element.
    pub fn reachability(&self) -> Vec<BitSet> {
        let len = self.len();
        let mut order: Vec<usize> = (0..len).collect();
        // covers sit one codimension deeper, so deepest first
        order.sort_by_key(|&i| std::cmp::Reverse(self.codims[i]));
        let mut reach: Vec<BitSet> = vec![BitSet::new(len); len];
        for &i in &order {
            let mut set = BitSet::new(len);
            set.insert(i);
            for &c in &self.covers[i] {
                set.union_with(&reach[c]);
            }
            reach[i] = set;
        }
        reach
    }

    /// `closure_ideal` of every element as bitsets.
    pub fn ideals(&self, parallel: bool) -> Vec<BitSet> {
        let tables: Vec<RankTable> = self.elements.iter().map(Involution::rank_table).collect();
        let ideal_of = |top: &RankTable| {
            let mut set = BitSet::new(tables.len());
            for (j, t) in tables.iter().enumerate() {
                if t.dominated_by(top) {
                    set.insert(j);
                }
            }
            set
        };
        if parallel {
            tables.par_iter().map(ideal_of).collect()
        } else {
            tables.iter().map(ideal_of).collect()
        }
    }

    /// Reachability under covers must equal the `≼` order ideal everywhere.
    pub fn check_consistency(&self, parallel: bool) -> Result<()> {
        let reach = self.reachability();
        let ideals = self.ideals(parallel);
        for (i, (r, d)) in reach.iter().zip(&ideals).enumerate() {
            if r != d {
                return Err(Error::ConsistencyFailure(format!(
                    "reachable set of {} differs from its order ideal ({} vs {} elements)",
                    self.elements[i],
                    r.len(),
                    d.len()
                )));
            }
        }
        Ok(())
    }

    /// `{"n":..,"k":..,"elements":[{"sigma":..,"codim":..,"covers":[..]}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let elements: Vec<_> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, s)| {
                serde_json::json!({
                    "sigma": s.cycles(),
                    "codim": self.codims[i],
                    "covers": self.covers[i].iter().map(|&c| self.elements[c].cycles()).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({ "n": self.shape.n, "k": self.shape.k, "elements": elements })
    }

    /// Hasse diagram, edges pointing from an element to the ones it covers.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph orbits_n{}_k{} {{", self.shape.n, self.shape.k);
        let _ = writeln!(out, "  rankdir=BT;");
        let _ = writeln!(out, "  node [shape=plaintext];");
        for (i, s) in self.elements.iter().enumerate() {
            let _ = writeln!(out, "  s{i} [label=\"{}\\ncodim {}\"];", s.cycles(), self.codims[i]);
        }
        for (i, ids) in self.covers.iter().enumerate() {
            for c in ids {
                let _ = writeln!(out, "  s{c} -> s{i};");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Fixed-size bitset over element indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(s: &str) -> Involution {
        s.parse().unwrap()
    }

    fn shape(n: usize, k: usize) -> ShapeParams {
        ShapeParams::new(n, k).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(shape(8, 3).fiber_dimension(), 13);
        assert_eq!(shape(6, 0).fiber_dimension(), 15);
        assert_eq!(shape(4, 2).fiber_dimension(), 2);
        assert_eq!(shape(0, 0).fiber_dimension(), 0);
        assert_eq!(shape(8, 3).d0(), 4);
        assert_eq!(shape(4, 2).d0(), 1);
        assert_eq!(shape(5, 0).d0(), 10);
        assert!(matches!(ShapeParams::new(3, 2), Err(Error::BadShape { .. })));
    }

    #[test]
    fn codimension_examples() {
        assert_eq!(orbit_codimension(&inv("n=7; (1,3)(2,6)(4,7)")), 4);
        for n in 2..=9 {
            for k in 1..=n / 2 {
                let p = shape(n, k);
                assert_eq!(
                    orbit_codimension(&p.sigma_min()),
                    k * (k - 1) / 2 + k * (n - 2 * k)
                );
                assert_eq!(orbit_dimension(&p.sigma_min()), p.d0());
            }
        }
    }

    #[test]
    fn sigma_min_examples() {
        assert_eq!(shape(8, 3).sigma_min(), inv("n=8; (1,6)(2,7)(3,8)"));
        assert_eq!(shape(4, 2).sigma_min(), inv("n=4; (1,3)(2,4)"));
        assert_eq!(shape(5, 0).sigma_min(), Involution::identity(5));
    }

    #[test]
    fn kbar_values() {
        assert_eq!(shape(8, 4).kbar().unwrap(), 4);
        assert_eq!(shape(8, 3).kbar().unwrap(), 4);
        assert_eq!(shape(7, 3).kbar().unwrap(), 4);
        assert!(matches!(shape(5, 0).kbar(), Err(Error::BadParameters(_))));
    }

    #[test]
    fn covers_small() {
        assert_eq!(
            lower_covers(&inv("n=4; (1,4)(2,3)")),
            vec![inv("n=4; (1,3)(2,4)")]
        );
        assert_eq!(lower_covers(&inv("n=7; (2,3)(4,5)(6,7)")).len(), 6);
        // S_2^2(1) = {(1,2)}: the minimum is also maximal
        assert!(upper_covers(&shape(2, 1).sigma_min()).is_empty());
        for n in 3..=8 {
            for k in 1..=n / 2 {
                let p = shape(n, k);
                assert!(lower_covers(&p.sigma_min()).is_empty());
                let expected = if 2 * k == n { k } else { k + 1 };
                assert_eq!(upper_covers(&p.sigma_min()).len(), expected, "n={n} k={k}");
            }
        }
        assert_eq!(
            upper_covers(&inv("n=4; (1,3)(2,4)")),
            vec![inv("n=4; (1,2)(3,4)"), inv("n=4; (1,4)(2,3)")]
        );
    }

    #[test]
    fn closure_ideals_small() {
        assert_eq!(
            closure_ideal(&inv("n=4; (1,4)(2,3)")),
            vec![inv("n=4; (1,3)(2,4)"), inv("n=4; (1,4)(2,3)")]
        );
        assert_eq!(
            closure_ideal(&inv("n=4; (1,2)(3,4)")),
            vec![inv("n=4; (1,2)(3,4)"), inv("n=4; (1,3)(2,4)")]
        );
        let s0 = shape(8, 3).sigma_min();
        assert_eq!(closure_ideal(&s0), vec![s0]);
    }

    #[test]
    fn poset_small_shapes() {
        let p = build_poset(shape(4, 2), BuildOptions::default()).unwrap();
        assert_eq!(p.len(), 3);
        let codims: Vec<_> = (0..3).map(|i| p.codimension(i)).collect();
        assert_eq!(codims, vec![0, 1, 0]);
        let minima: Vec<_> = (0..3).filter(|&i| p.lower_cover_ids(i).is_empty()).collect();
        assert_eq!(minima, vec![1]);
        assert_eq!(build_poset(shape(2, 1), BuildOptions::default()).unwrap().len(), 1);

        let p83 = build_poset(shape(8, 3), BuildOptions::default()).unwrap();
        assert_eq!(p83.len(), 420);
        let top_codim = shape(8, 3).fiber_dimension() - (shape(8, 3).d0() + 1);
        let count = (0..p83.len()).filter(|&i| p83.codimension(i) == top_codim).count();
        assert_eq!(count, 4);
    }

    #[test]
    fn limit_is_enforced() {
        let opts = BuildOptions {
            limit: 6,
            ..BuildOptions::default()
        };
        assert_eq!(
            build_poset(shape(7, 2), opts).unwrap_err(),
            Error::LimitExceeded { n: 7, limit: 6 }
        );
    }

    #[test]
    fn exports() {
        let p = build_poset(shape(4, 2), BuildOptions::default()).unwrap();
        let json = p.to_json();
        assert_eq!(json["elements"][0]["covers"][0], "(1,3)(2,4)");
        assert_eq!(json["elements"][1]["codim"], 1);
        let dot = p.to_dot();
        assert!(dot.contains("s1 -> s0;"));
        assert!(dot.contains("s1 -> s2;"));
    }

    #[test]
    fn bitset_ops() {
        let mut a = BitSet::new(130);
        a.insert(0);
        a.insert(129);
        let mut b = BitSet::new(130);
        b.insert(64);
        b.union_with(&a);
        assert!(b.contains(129) && b.contains(64) && !b.contains(1));
        assert_eq!(b.len(), 3);
    }
}
