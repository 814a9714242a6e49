//! Per-component analysis: codimension histograms, Poincaré polynomials,
//! the four singularity tests, `η(T)` and the codimension-one intersection
//! graph.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linkpattern::{enumerate_involutions, Arc, Involution, RankTable};
use crate::orbitposet::{lower_covers, orbit_codimension, ShapeParams};
use crate::polynomial::{q_factorial, IntPolynomial};
use crate::tableau::{enumerate_tableaux, x_tau0, TwoColumnTableau};

/// `I(x) = [k]_x! [n-2k]_x!`.
pub fn cell_polynomial(shape: ShapeParams) -> IntPolynomial {
    &q_factorial(shape.k) * &q_factorial(shape.n - 2 * shape.k)
}

/// `N^T(x^2) I(x^2)`, with `N^T` indexed by codimension.
pub fn poincare_from_histogram(histogram: &[usize], cells: &IntPolynomial) -> IntPolynomial {
    let n_poly = IntPolynomial::new(histogram.iter().map(|&c| c as u64).collect::<Vec<_>>());
    &n_poly.in_square() * &cells.in_square()
}

/// `n(T:m)` for `m = 0..=d-d_0`.
pub fn codim_histogram(t: &TwoColumnTableau) -> Vec<usize> {
    let top = t.sigma().rank_table();
    let shape = ShapeParams { n: t.n(), k: t.k() };
    let mut hist = vec![0; shape.fiber_dimension() - shape.d0() + 1];
    for s in enumerate_involutions(t.n(), t.k()).expect("tableau shape is valid") {
        if s.rank_table().dominated_by(&top) {
            hist[orbit_codimension(&s)] += 1;
        }
    }
    hist
}

pub fn poincare(t: &TwoColumnTableau) -> IntPolynomial {
    let shape = ShapeParams { n: t.n(), k: t.k() };
    poincare_from_histogram(&codim_histogram(t), &cell_polynomial(shape))
}

/// Pattern test on `|τ*(T)|` and the end points `1`, `n` of `σ_T`.
/// Always smooth when `k = 0`.
pub fn singular_by_pattern(t: &TwoColumnTableau) -> bool {
    let n = t.n();
    let s = t.sigma();
    match t.tau_star().len() {
        0 | 1 => false,
        2 => !(s.is_end_point(1) || s.is_end_point(n)),
        3 => !(s.is_end_point(1) && s.is_end_point(n) && !s.has_arc(&Arc::new(1, n))),
        _ => true,
    }
}

pub fn singular_by_poincare(t: &TwoColumnTableau) -> bool {
    !poincare(t).is_palindromic()
}

/// `|N(σ_T)|`.
pub fn eta(t: &TwoColumnTableau) -> usize {
    lower_covers(&t.sigma()).len()
}

pub fn singular_by_eta(t: &TwoColumnTableau) -> Result<bool> {
    let kbar = ShapeParams { n: t.n(), k: t.k() }.kbar()?;
    Ok(eta(t) > kbar)
}

/// Number of `τ ∈ X(τ_0)` with `σ(τ) ≼ σ_T`.
pub fn flag_count(t: &TwoColumnTableau) -> usize {
    let top = t.sigma().rank_table();
    x_tau0(t.n(), t.k())
        .expect("tableau shape is valid")
        .iter()
        .filter(|tau| tau.sigma().rank_table().dominated_by(&top))
        .count()
}

/// `½(n-k)(n-k-1)`.
pub fn flag_bound(shape: ShapeParams) -> usize {
    let m = shape.n - shape.k;
    m * m.saturating_sub(1) / 2
}

pub fn singular_by_flagcount(t: &TwoColumnTableau) -> bool {
    flag_count(t) > flag_bound(ShapeParams { n: t.n(), k: t.k() })
}

/// Components meeting `K^T` in codimension one.
pub fn neighbors(t: &TwoColumnTableau) -> Result<Vec<TwoColumnTableau>> {
    let ctx = ShapeContext::new(ShapeParams::new(t.n(), t.k())?, false)?;
    let id = ctx.tableau_index(t).expect("tableau belongs to its shape");
    Ok(ctx.neighbor_ids(id)?.into_iter().map(|i| ctx.tableaux[i].clone()).collect())
}

pub fn analyze(t: &TwoColumnTableau) -> Result<ComponentReport> {
    ShapeContext::new(ShapeParams::new(t.n(), t.k())?, false)?.analyze(t)
}

pub fn intersection_graph(shape: ShapeParams) -> Result<IntersectionGraph> {
    ShapeContext::new(shape, false)?.intersection_graph()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Verdicts {
    pub pattern: bool,
    pub poincare: bool,
    /// `None` when `k = 0`.
    pub eta: Option<bool>,
    /// `None` when `k = 0`.
    pub flagcount: Option<bool>,
}

impl Verdicts {
    pub fn agree(&self) -> bool {
        let p = self.pattern;
        self.poincare == p && self.eta.is_none_or(|v| v == p) && self.flagcount.is_none_or(|v| v == p)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ComponentReport {
    pub tableau: TwoColumnTableau,
    pub sigma: Involution,
    pub dim: usize,
    pub d0: usize,
    pub histogram: Vec<usize>,
    pub n_poly: IntPolynomial,
    pub poincare: IntPolynomial,
    pub palindromic: bool,
    pub verdicts: Verdicts,
    pub eta: usize,
    pub neighbors: Vec<TwoColumnTableau>,
    /// Raw `τ ∈ X(τ_0)` count behind the flag-count verdict.
    pub flag_count: usize,
}

impl ComponentReport {
    pub fn is_singular(&self) -> bool {
        self.verdicts.pattern
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let yes_no = |b: bool| if b { "singular" } else { "smooth" };
        let opt = |v: Option<bool>| v.map_or("n/a", yes_no);
        let _ = writeln!(out, "tableau      {}", self.tableau);
        let _ = writeln!(out, "sigma_T      {}", self.sigma.cycles());
        let _ = writeln!(out, "dim          {}", self.dim);
        let _ = writeln!(out, "d0           {}", self.d0);
        let _ = writeln!(out, "histogram    {:?}", self.histogram);
        let _ = writeln!(out, "N(x)         {}", self.n_poly);
        let _ = writeln!(out, "P(x)         {}", self.poincare);
        let _ = writeln!(out, "palindromic  {}", self.palindromic);
        let _ = writeln!(out, "eta          {}", self.eta);
        let _ = writeln!(out, "flag count   {}", self.flag_count);
        let labels: Vec<_> = self.neighbors.iter().map(TwoColumnTableau::label).collect();
        let _ = writeln!(out, "neighbors    {}", labels.join(" "));
        let _ = writeln!(out, "pattern      {}", yes_no(self.verdicts.pattern));
        let _ = writeln!(out, "poincare     {}", yes_no(self.verdicts.poincare));
        let _ = writeln!(out, "eta test     {}", opt(self.verdicts.eta));
        let _ = writeln!(out, "flag test    {}", opt(self.verdicts.flagcount));
        let _ = writeln!(out, "verdict      {}", yes_no(self.is_singular()));
        out
    }
}

/// Tableaux of one shape joined when their components meet in codimension one.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IntersectionGraph {
    pub shape: ShapeParams,
    pub vertices: Vec<TwoColumnTableau>,
    /// Index pairs `(a, b)` with `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl IntersectionGraph {
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Degree above `k̄`.
    pub fn is_singular_vertex(&self, v: usize) -> bool {
        let kbar = self.shape.kbar().expect("graph shapes have k >= 1");
        self.degree(v) > kbar
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("graph components_n{}_k{} {{\n", self.shape.n, self.shape.k);
        out.push_str("  node [shape=box];\n");
        for (i, t) in self.vertices.iter().enumerate() {
            if self.is_singular_vertex(i) {
                let _ = writeln!(out, "  t{i} [label=\"{}\", style=filled, fillcolor=salmon];", t.label());
            } else {
                let _ = writeln!(out, "  t{i} [label=\"{}\"];", t.label());
            }
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  t{a} -- t{b};");
        }
        out.push_str("}\n");
        out
    }

    /// Header line, then one `source<TAB>target` row per edge.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("source\ttarget\n");
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "{}\t{}", self.vertices[a].label(), self.vertices[b].label());
        }
        out
    }
}

/// Everything about one shape that analyses of its tableaux share.
pub struct ShapeContext {
    shape: ShapeParams,
    cells: IntPolynomial,
    stratum_tables: Vec<RankTable>,
    stratum_codims: Vec<usize>,
    flag_tables: Vec<RankTable>,
    tableaux: Vec<TwoColumnTableau>,
    index: HashMap<TwoColumnTableau, usize>,
    covers: Vec<Vec<Involution>>,
    /// For each codimension-one `σ`, the tableaux whose `N(σ_T)` contains it.
    owners: HashMap<Involution, Vec<usize>>,
}

impl ShapeContext {
    pub fn new(shape: ShapeParams, parallel: bool) -> Result<Self> {
        let ShapeParams { n, k } = ShapeParams::new(shape.n, shape.k)?;
        let stratum: Vec<Involution> = enumerate_involutions(n, k)?.collect();
        let tableaux: Vec<TwoColumnTableau> = enumerate_tableaux(n, k)?.collect();
        let (stratum_tables, covers): (Vec<RankTable>, Vec<Vec<Involution>>) = if parallel {
            (
                stratum.par_iter().map(Involution::rank_table).collect(),
                tableaux.par_iter().map(|t| lower_covers(&t.sigma())).collect(),
            )
        } else {
            (
                stratum.iter().map(Involution::rank_table).collect(),
                tableaux.iter().map(|t| lower_covers(&t.sigma())).collect(),
            )
        };
        let flag_tables = x_tau0(n, k)?.iter().map(|tau| tau.sigma().rank_table()).collect();
        let mut owners: HashMap<Involution, Vec<usize>> = HashMap::new();
        for (i, cov) in covers.iter().enumerate() {
            for s in cov {
                owners.entry(s.clone()).or_default().push(i);
            }
        }
        let index = tableaux.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        Ok(ShapeContext {
            shape,
            cells: cell_polynomial(shape),
            stratum_codims: stratum.iter().map(orbit_codimension).collect(),
            stratum_tables,
            flag_tables,
            tableaux,
            index,
            covers,
            owners,
        })
    }

    pub fn shape(&self) -> ShapeParams {
        self.shape
    }

    pub fn tableaux(&self) -> &[TwoColumnTableau] {
        &self.tableaux
    }

    pub fn tableau_index(&self, t: &TwoColumnTableau) -> Option<usize> {
        self.index.get(t).copied()
    }

    fn checked_index(&self, t: &TwoColumnTableau) -> Result<usize> {
        self.tableau_index(t).ok_or(Error::SizeMismatch {
            n1: t.n(),
            k1: t.k(),
            n2: self.shape.n,
            k2: self.shape.k,
        })
    }

    pub fn histogram(&self, t: &TwoColumnTableau) -> Result<Vec<usize>> {
        self.checked_index(t)?;
        let top = t.sigma().rank_table();
        let mut hist = vec![0; self.shape.fiber_dimension() - self.shape.d0() + 1];
        for (table, &c) in self.stratum_tables.iter().zip(&self.stratum_codims) {
            if table.dominated_by(&top) {
                hist[c] += 1;
            }
        }
        Ok(hist)
    }

    pub fn flag_count(&self, t: &TwoColumnTableau) -> Result<usize> {
        self.checked_index(t)?;
        let top = t.sigma().rank_table();
        Ok(self.flag_tables.iter().filter(|table| table.dominated_by(&top)).count())
    }

    pub fn eta(&self, t: &TwoColumnTableau) -> Result<usize> {
        Ok(self.covers[self.checked_index(t)?].len())
    }

    /// Indices of the tableaux meeting tableau `id` in codimension one, sorted.
    pub fn neighbor_ids(&self, id: usize) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(self.covers[id].len());
        for s in &self.covers[id] {
            let owners = &self.owners[s];
            if owners.len() != 2 {
                return Err(Error::ConsistencyFailure(format!(
                    "{s} lies below {} maximal orbits, expected 2",
                    owners.len()
                )));
            }
            out.push(if owners[0] == id { owners[1] } else { owners[0] });
        }
        out.sort_unstable();
        if out.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::ConsistencyFailure(format!(
                "{} meets another component along two codimension-one orbits",
                self.tableaux[id]
            )));
        }
        Ok(out)
    }

    pub fn analyze(&self, t: &TwoColumnTableau) -> Result<ComponentReport> {
        let id = self.checked_index(t)?;
        let histogram = self.histogram(t)?;
        let n_poly = IntPolynomial::new(histogram.iter().map(|&c| c as u64).collect::<Vec<_>>());
        let poincare = poincare_from_histogram(&histogram, &self.cells);
        let palindromic = poincare.is_palindromic();
        let eta = self.covers[id].len();
        let flag_count = self.flag_count(t)?;
        let verdicts = Verdicts {
            pattern: singular_by_pattern(t),
            poincare: !palindromic,
            eta: self.shape.kbar().ok().map(|kbar| eta > kbar),
            flagcount: (self.shape.k > 0).then(|| flag_count > flag_bound(self.shape)),
        };
        if !verdicts.agree() {
            return Err(Error::CriteriaDisagreement {
                n: t.n(),
                second_column: t.second_column().to_vec(),
                pattern: verdicts.pattern,
                poincare: verdicts.poincare,
                eta: verdicts.eta.unwrap_or(false),
                flagcount: verdicts.flagcount.unwrap_or(false),
            });
        }
        let neighbors = self
            .neighbor_ids(id)?
            .into_iter()
            .map(|i| self.tableaux[i].clone())
            .collect();
        Ok(ComponentReport {
            tableau: t.clone(),
            sigma: t.sigma(),
            dim: self.shape.fiber_dimension(),
            d0: self.shape.d0(),
            histogram,
            n_poly,
            poincare,
            palindromic,
            verdicts,
            eta,
            neighbors,
            flag_count,
        })
    }

    /// Reports for every tableau, in enumeration order.
    pub fn analyze_all(&self, parallel: bool) -> Result<Vec<ComponentReport>> {
        if parallel {
            self.tableaux.par_iter().map(|t| self.analyze(t)).collect()
        } else {
            self.tableaux.iter().map(|t| self.analyze(t)).collect()
        }
    }

    pub fn intersection_graph(&self) -> Result<IntersectionGraph> {
        if self.shape.k == 0 {
            return Err(Error::BadParameters(
                "the intersection graph needs k >= 1".into(),
            ));
        }
        let mut edges = Vec::new();
        for id in 0..self.tableaux.len() {
            for other in self.neighbor_ids(id)? {
                if id < other {
                    edges.push((id, other));
                }
            }
        }
        edges.sort_unstable();
        Ok(IntersectionGraph {
            shape: self.shape,
            vertices: self.tableaux.clone(),
            edges,
        })
    }
}
