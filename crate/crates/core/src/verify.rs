//! Exhaustive self-checks over every shape up to a bound on `n`.
//!
//! Shapes are visited by increasing `n`, then `k`, and tableaux in
//! enumeration order, so the first failure recorded for a check is a
//! smallest counterexample.

use std::fmt::Write as _;

use serde::Serialize;

use crate::components::{singular_by_pattern, ShapeContext};
use crate::error::{Error, Result};
use crate::orbitposet::{build_poset, BuildOptions, ConsistencyCheck, ShapeParams};
use crate::tableau::x_tau0;

pub const CHECK_NAMES: [&str; 9] = [
    "criteria-equivalence",
    "palindromic-symmetry",
    "poset-consistency",
    "minimal-orbit-covers",
    "codim-one-covers",
    "schuetzenberger-invariance",
    "x-tau0-cardinality",
    "smoothness-propagation",
    "singular-eta-bound",
];

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub counterexample: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ShapeSummary {
    pub shape: ShapeParams,
    pub orbits: usize,
    pub components: usize,
    pub singular: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub limit: usize,
    pub checks: Vec<CheckOutcome>,
    pub shapes: Vec<ShapeSummary>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.shapes {
            let _ = writeln!(
                out,
                "shape {:<7} orbits {:>5}  components {:>4}  singular {:>4}",
                s.shape.to_string(),
                s.orbits,
                s.components,
                s.singular
            );
        }
        for c in &self.checks {
            match &c.counterexample {
                None => {
                    let _ = writeln!(out, "PASS {:<28} {} cases", c.name, c.cases);
                }
                Some(why) => {
                    let _ = writeln!(out, "FAIL {:<28} {} cases; {}", c.name, c.cases, why);
                }
            }
        }
        out
    }
}

struct Tally {
    outcomes: Vec<CheckOutcome>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            outcomes: CHECK_NAMES
                .iter()
                .map(|&name| CheckOutcome { name, cases: 0, counterexample: None })
                .collect(),
        }
    }

    fn record(&mut self, name: &str, ok: bool, why: impl FnOnce() -> String) {
        let c = self
            .outcomes
            .iter_mut()
            .find(|c| c.name == name)
            .expect("known check name");
        c.cases += 1;
        if !ok && c.counterexample.is_none() {
            c.counterexample = Some(why());
        }
    }
}

/// Runs every check for all shapes with `n <= limit`.
pub fn run(limit: usize, parallel: bool) -> Result<VerifyReport> {
    let mut tally = Tally::new();
    let mut shapes = Vec::new();
    for shape in ShapeParams::all_up_to(limit) {
        shapes.push(check_shape(shape, parallel, &mut tally)?);
    }
    Ok(VerifyReport { limit, checks: tally.outcomes, shapes })
}

fn check_shape(shape: ShapeParams, parallel: bool, tally: &mut Tally) -> Result<ShapeSummary> {
    let options = BuildOptions { limit: usize::MAX, check: ConsistencyCheck::Never, parallel };
    let poset = build_poset(shape, options)?;
    let consistency = poset.check_consistency(parallel);
    tally.record("poset-consistency", consistency.is_ok(), || {
        format!("{shape}: {}", consistency.as_ref().unwrap_err())
    });

    let sigma0 = poset.index_of(&shape.sigma_min()).expect("sigma_0 is in its stratum");
    if shape.k >= 1 {
        let found = poset.upper_cover_ids(sigma0).len();
        let expected = if poset.len() == 1 { 0 } else { shape.kbar()? };
        tally.record("minimal-orbit-covers", found == expected, || {
            format!("{shape}: |P(sigma_0)| = {found}, expected {expected}")
        });
    }
    for id in 0..poset.len() {
        if poset.codimension(id) == 1 {
            let found = poset.upper_cover_ids(id).len();
            tally.record("codim-one-covers", found == 2, || {
                format!("{}: {found} upper covers", poset.elements()[id])
            });
        }
    }

    let x_len = x_tau0(shape.n, shape.k)?.len();
    let (n, k) = (shape.n, shape.k);
    let x_expected = k * (n - 2 * k) + k * k.saturating_sub(1) / 2 + (n - k) * (n - k).saturating_sub(1) / 2;
    tally.record("x-tau0-cardinality", x_len == x_expected, || {
        format!("{shape}: |X(tau_0)| = {x_len}, expected {x_expected}")
    });

    let ctx = ShapeContext::new(shape, parallel)?;
    let mut reports = Vec::with_capacity(ctx.tableaux().len());
    for t in ctx.tableaux() {
        let r = ctx.analyze(t);
        tally.record("criteria-equivalence", !matches!(r, Err(Error::CriteriaDisagreement { .. })), || {
            r.as_ref().unwrap_err().to_string()
        });
        reports.push(match r {
            Ok(r) => Some(r),
            Err(Error::CriteriaDisagreement { .. }) => None,
            Err(e) => return Err(e),
        });
    }
    let p_sigma0 = poset.upper_cover_ids(sigma0).len();
    for (t, r) in ctx.tableaux().iter().zip(&reports) {
        let Some(r) = r else { continue };
        let h = &r.histogram;
        let symmetric = h.iter().eq(h.iter().rev());
        tally.record("palindromic-symmetry", r.palindromic == symmetric, || {
            format!("{t}: palindromic={} but histogram {h:?}", r.palindromic)
        });

        let dual = t.schuetzenberger();
        let dual_report = ctx.analyze(&dual);
        let invariant = dual.schuetzenberger() == *t
            && dual.tau_star().len() == t.tau_star().len()
            && dual_report.as_ref().is_ok_and(|d| {
                d.histogram == r.histogram && d.poincare == r.poincare && d.verdicts == r.verdicts
            });
        tally.record("schuetzenberger-invariance", invariant, || format!("{t} vs {dual}"));

        if n >= 2 && t.column_of(n)? == 2 {
            let smaller = t.restrict()?;
            let ok = singular_by_pattern(&smaller) || !singular_by_pattern(t);
            tally.record("smoothness-propagation", ok, || {
                format!("{t} is singular but {smaller} is smooth")
            });
        }

        if singular_by_pattern(t) {
            tally.record("singular-eta-bound", r.eta > p_sigma0, || {
                format!("{t}: eta = {} <= |P(sigma_0)| = {p_sigma0}", r.eta)
            });
        }
    }

    Ok(ShapeSummary {
        shape,
        orbits: poset.len(),
        components: ctx.tableaux().len(),
        singular: reports.iter().flatten().filter(|r| r.is_singular()).count(),
    })
}
