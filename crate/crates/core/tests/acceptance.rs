//! Acceptance run: one PASS/FAIL line per criterion, with its time budget.
//! Exits nonzero on any failure not listed in `KNOWN_FAILURES`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use springer2col::components::{
    analyze, codim_histogram, eta, poincare, singular_by_eta, singular_by_flagcount,
    singular_by_pattern, singular_by_poincare,
};
use springer2col::linkpattern::{enumerate_involutions, Arc, Involution};
use springer2col::orbitposet::{
    build_poset, lower_covers, orbit_codimension, upper_covers, BuildOptions, ConsistencyCheck,
    ShapeParams,
};
use springer2col::polynomial::{q_factorial, IntPolynomial, REFERENCE_322_POINCARE};
use springer2col::tableau::{enumerate_tableaux, x_tau0, TwoColumnTableau};

type Check = fn() -> Result<String, String>;

/// Criteria that cannot hold as stated, with the exact report they produce.
const KNOWN_FAILURES: &[(u32, &str)] = &[(
    4,
    "counterexamples: (2,1) has |P(sigma_0)| = 0, expected 1",
)];

fn main() -> ExitCode {
    let criteria: [(u32, &str, u64, Check); 14] = [
        (1, "worked example n=8, col2={4,6,7}", 1, c1_worked_example),
        (2, "link-pattern statistics on 7 points", 1, c2_statistics),
        (3, "15-point arc structure", 1, c3_fifteen_points),
        (4, "minimal orbit and |P(sigma_0)|, n<=10", 60, c4_minimal_orbit),
        (5, "cover reachability = order ideal, n<=8", 60, c5_covering_consistency),
        (6, "codim-1 orbits have 2 upper covers, n<=9", 60, c6_codim_one),
        (7, "four criteria agree, k>=1, n<=10", 300, c7_criteria_equivalence),
        (8, "palindromic <=> symmetric histogram, n<=10", 300, c8_palindromic_symmetry),
        (9, "n=7 base case col2={3,5,7}", 1, c9_base_case),
        (10, "|X(tau_0)| formula, n<=10", 60, c10_x_tau0),
        (11, "Schuetzenberger duality, n<=10", 300, c11_schuetzenberger),
        (12, "k=0 full flag variety, n<=8", 1, c12_k_zero),
        (13, "reference (3,2,2) polynomial", 1, c13_reference),
        (14, "smoothness propagation under restrict, n<=10", 300, c14_propagation),
    ];
    let mut unexpected = 0;
    let mut failed = 0;
    for (id, title, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let budget = Duration::from_secs(budget);
        let result = match result {
            Ok(detail) if elapsed > budget => Err(format!("{detail}; over time budget")),
            other => other,
        };
        let timing = format!("{:.2}s/{}s", elapsed.as_secs_f64(), budget.as_secs());
        match result {
            Ok(detail) => println!("PASS  {id:>2}  {title:<46} {timing:>12}  {detail}"),
            Err(detail) => {
                failed += 1;
                let known = KNOWN_FAILURES.iter().any(|&(k, why)| k == id && why == detail);
                if !known {
                    unexpected += 1;
                }
                let tag = if known { " (known)" } else { "" };
                println!("FAIL  {id:>2}  {title:<46} {timing:>12}  {detail}{tag}");
            }
        }
    }
    println!("{} passed, {failed} failed, {unexpected} unexpected", 14 - failed);
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn tab(n: usize, col2: &[usize]) -> TwoColumnTableau {
    TwoColumnTableau::new(n, col2).expect("standard")
}

fn shapes_with_k(max_n: usize) -> impl Iterator<Item = ShapeParams> {
    ShapeParams::all_up_to(max_n).filter(|s| s.k >= 1)
}

fn all_tableaux(max_n: usize) -> impl Iterator<Item = TwoColumnTableau> {
    ShapeParams::all_up_to(max_n).flat_map(|s| enumerate_tableaux(s.n, s.k).unwrap())
}

/// `lo ≼ hi` straight from the definition: every interval holds at least as
/// many arcs of `hi` as of `lo`.
fn oracle_precedes(lo: &Involution, hi: &Involution) -> bool {
    let n = lo.n();
    let (la, ha) = (lo.arcs(), hi.arcs());
    let inside = |arcs: &[Arc], a: usize, b: usize| {
        arcs.iter().filter(|x| a <= x.left && x.right <= b).count()
    };
    (1..=n).all(|a| (a..=n).all(|b| inside(&la, a, b) <= inside(&ha, a, b)))
}

fn c1_worked_example() -> Result<String, String> {
    let t = tab(8, &[4, 6, 7]);
    let expected: Involution = "n=8; (3,4)(5,6)(2,7)".parse().unwrap();
    ensure(t.sigma() == expected, || format!("sigma_T = {}", t.sigma()))?;
    ensure(t.tau_star() == [3, 5], || format!("tau* = {:?}", t.tau_star()))?;
    let verdicts = [
        singular_by_pattern(&t),
        singular_by_poincare(&t),
        singular_by_eta(&t).map_err(|e| e.to_string())?,
        singular_by_flagcount(&t),
    ];
    ensure(verdicts.iter().all(|&v| v), || format!("verdicts {verdicts:?}"))?;
    Ok(format!("sigma_T = {}, tau* = {{3,5}}, all four singular", t.sigma().cycles()))
}

fn c2_statistics() -> Result<String, String> {
    let s = Involution::new(7, &[(1, 3), (2, 6), (4, 7)]).unwrap();
    ensure(s.crossings() == 2, || format!("c = {}", s.crossings()))?;
    ensure(s.bridges() == 2, || format!("b = {}", s.bridges()))?;
    ensure(s.fixed_points() == [5], || format!("P0 = {:?}", s.fixed_points()))?;
    ensure(s.left_ends() == [1, 2, 4], || format!("P- = {:?}", s.left_ends()))?;
    ensure(s.right_ends() == [3, 6, 7], || format!("P+ = {:?}", s.right_ends()))?;
    Ok("c=2, b=2, P0={5}, P-={1,2,4}, P+={3,6,7}".into())
}

fn c3_fifteen_points() -> Result<String, String> {
    let s: Involution = "n=15; (1,9)(2,6)(3,5)(4,7)(8,10)(11,12)(13,15)".parse().unwrap();
    let a = Arc::new;
    let minimal = vec![a(3, 5), a(4, 7), a(8, 10), a(11, 12), a(13, 15)];
    ensure(s.minimal_arcs() == minimal, || format!("minimal {:?}", s.minimal_arcs()))?;

    let concentric: BTreeSet<_> = s.concentric_pairs().into_iter().collect();
    let want: BTreeSet<_> = [(a(2, 6), a(3, 5)), (a(1, 9), a(2, 6)), (a(1, 9), a(4, 7))].into();
    ensure(concentric == want, || format!("concentric {concentric:?}"))?;

    let consecutive: BTreeSet<_> = s.consecutive_pairs().into_iter().collect();
    let want: BTreeSet<_> = [
        (a(1, 9), a(11, 12)),
        (a(1, 9), a(13, 15)),
        (a(2, 6), a(8, 10)),
        (a(4, 7), a(8, 10)),
        (a(8, 10), a(11, 12)),
        (a(8, 10), a(13, 15)),
        (a(11, 12), a(13, 15)),
    ]
    .into();
    ensure(consecutive == want, || format!("consecutive {consecutive:?}"))?;

    ensure(s.fixed_points() == [14], || format!("fixed {:?}", s.fixed_points()))?;
    for arc in s.arcs() {
        let left = s.next_point_left(&arc).map_err(|e| e.to_string())?;
        let right = s.next_point_right(&arc).map_err(|e| e.to_string())?;
        let want = [a(1, 9), a(8, 10), a(11, 12)].contains(&arc).then_some(14);
        ensure(left.is_none() && right == want, || {
            format!("next points of {arc}: {left:?}, {right:?}")
        })?;
    }
    Ok("5 minimal, 3 concentric, 7 consecutive, 14 next right of (1,9),(8,10),(11,12)".into())
}

fn c4_minimal_orbit() -> Result<String, String> {
    let mut failures = Vec::new();
    let mut shapes = 0;
    for shape in shapes_with_k(10) {
        shapes += 1;
        let s0 = shape.sigma_min();
        for s in enumerate_involutions(shape.n, shape.k).unwrap() {
            if !oracle_precedes(&s0, &s) || !s0.precedes(&s).unwrap() {
                return Err(format!("sigma_0 does not precede {s}"));
            }
        }
        let found = upper_covers(&s0).len();
        let expected = shape.kbar().unwrap();
        if found != expected {
            failures.push(format!("{shape} has |P(sigma_0)| = {found}, expected {expected}"));
        }
    }
    if failures.is_empty() {
        Ok(format!("{shapes} shapes"))
    } else {
        Err(format!("counterexamples: {}", failures.join("; ")))
    }
}

fn c5_covering_consistency() -> Result<String, String> {
    let mut elements = 0;
    for shape in ShapeParams::all_up_to(8) {
        let options = BuildOptions { limit: 8, check: ConsistencyCheck::Never, parallel: false };
        let poset = build_poset(shape, options).map_err(|e| e.to_string())?;
        let reach = poset.reachability();
        let all = poset.elements();
        for (i, top) in all.iter().enumerate() {
            for (j, s) in all.iter().enumerate() {
                let below = oracle_precedes(s, top);
                ensure(reach[i].contains(j) == below, || {
                    format!("{s} vs {top}: reachable={}, precedes={below}", reach[i].contains(j))
                })?;
            }
            for s in lower_covers(top) {
                ensure(orbit_codimension(&s) == orbit_codimension(top) + 1, || {
                    format!("{s} is not one codimension below {top}")
                })?;
            }
        }
        elements += all.len();
    }
    Ok(format!("{elements} elements"))
}

fn c6_codim_one() -> Result<String, String> {
    let mut count = 0;
    for shape in ShapeParams::all_up_to(9) {
        let stratum: Vec<_> = enumerate_involutions(shape.n, shape.k).unwrap().collect();
        let maximal: Vec<_> = stratum.iter().filter(|s| orbit_codimension(s) == 0).collect();
        for s in stratum.iter().filter(|s| orbit_codimension(s) == 1) {
            let above = maximal.iter().filter(|m| oracle_precedes(s, m)).count();
            let covers = upper_covers(s).len();
            ensure(above == 2 && covers == 2, || {
                format!("{s}: {covers} upper covers, {above} maximal orbits above")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} codimension-one orbits"))
}

fn c7_criteria_equivalence() -> Result<String, String> {
    let mut count = 0;
    let mut singular = 0;
    for t in all_tableaux(10).filter(|t| t.k() >= 1) {
        let v = [
            singular_by_pattern(&t),
            singular_by_poincare(&t),
            singular_by_eta(&t).map_err(|e| e.to_string())?,
            singular_by_flagcount(&t),
        ];
        ensure(v.iter().all(|&x| x == v[0]), || format!("{t}: {v:?}"))?;
        count += 1;
        singular += v[0] as usize;
    }
    Ok(format!("{count} tableaux, {singular} singular"))
}

fn c8_palindromic_symmetry() -> Result<String, String> {
    let mut count = 0;
    for t in all_tableaux(10) {
        let h = codim_histogram(&t);
        let p = poincare(&t);
        let symmetric = h.iter().eq(h.iter().rev());
        ensure(p.is_palindromic() == symmetric, || format!("{t}: {p} vs {h:?}"))?;
        count += 1;
    }
    Ok(format!("{count} tableaux"))
}

fn c9_base_case() -> Result<String, String> {
    let t = tab(7, &[3, 5, 7]);
    let e = eta(&t);
    let kbar = ShapeParams::new(7, 3).unwrap().kbar().unwrap();
    ensure(e == 6 && kbar == 4, || format!("eta = {e}, kbar = {kbar}"))?;
    let report = analyze(&t).map_err(|e| e.to_string())?;
    ensure(report.is_singular() && report.neighbors.len() == 6, || {
        format!("report {report:?}")
    })?;
    Ok("eta = 6 > kbar = 4, singular".into())
}

/// Row-standard swaps `(i,j)`, `i <= n-k`, of the tableau with first column
/// `1..n-k` and second column `n-k+1..n`.
fn oracle_x_tau0_count(n: usize, k: usize) -> usize {
    let mut count = 0;
    for i in 1..=n - k {
        for j in i + 1..=n {
            let apply = |v: usize| if v == i { j } else if v == j { i } else { v };
            if (1..=k).all(|r| apply(r) < apply(n - k + r)) {
                count += 1;
            }
        }
    }
    count
}

fn c10_x_tau0() -> Result<String, String> {
    let mut shapes = 0;
    for shape in ShapeParams::all_up_to(10) {
        let (n, k) = (shape.n, shape.k);
        let formula = k * (n - 2 * k) + k * k.saturating_sub(1) / 2
            + (n - k) * (n - k).saturating_sub(1) / 2;
        let found = x_tau0(n, k).map_err(|e| e.to_string())?.len();
        let brute = oracle_x_tau0_count(n, k);
        ensure(found == formula && brute == formula, || {
            format!("{shape}: {found} computed, {brute} brute force, {formula} formula")
        })?;
        shapes += 1;
    }
    Ok(format!("{shapes} shapes"))
}

fn c11_schuetzenberger() -> Result<String, String> {
    let mut count = 0;
    for t in all_tableaux(10) {
        let d = t.schuetzenberger();
        ensure(d.schuetzenberger() == t, || format!("{t} is not fixed by T -> T^S -> T^SS"))?;
        ensure(d.tau_star().len() == t.tau_star().len(), || format!("{t}: |tau*| changes"))?;
        ensure(codim_histogram(&d) == codim_histogram(&t), || format!("{t}: histogram changes"))?;
        ensure(poincare(&d) == poincare(&t), || format!("{t}: Poincare polynomial changes"))?;
        let verdicts = |x: &TwoColumnTableau| {
            (
                singular_by_pattern(x),
                singular_by_poincare(x),
                singular_by_eta(x).ok(),
                (x.k() >= 1).then(|| singular_by_flagcount(x)),
            )
        };
        ensure(verdicts(&d) == verdicts(&t), || format!("{t}: verdicts change"))?;
        count += 1;
    }
    Ok(format!("{count} tableaux"))
}

/// Inversion-count distribution over all permutations of `n` letters.
fn oracle_inversions(n: usize) -> IntPolynomial {
    fn walk(perm: &mut Vec<usize>, used: &mut Vec<bool>, counts: &mut Vec<u64>) {
        let n = used.len();
        if perm.len() == n {
            let inv = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            counts[inv] += 1;
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                perm.push(v);
                walk(perm, used, counts);
                perm.pop();
                used[v] = false;
            }
        }
    }
    let mut counts = vec![0; n * n.saturating_sub(1) / 2 + 1];
    walk(&mut Vec::new(), &mut vec![false; n], &mut counts);
    IntPolynomial::new(counts)
}

fn c12_k_zero() -> Result<String, String> {
    for n in 0..=8 {
        let t = TwoColumnTableau::single_column(n);
        let p = poincare(&t);
        let flags = oracle_inversions(n).in_square();
        ensure(p == flags && p == q_factorial(n).in_square(), || format!("n={n}: {p}"))?;
        ensure(p.is_palindromic(), || format!("n={n}: not palindromic"))?;
        let report = analyze(&t).map_err(|e| e.to_string())?;
        ensure(
            !report.is_singular()
                && !report.verdicts.poincare
                && report.verdicts.eta.is_none()
                && report.verdicts.flagcount.is_none(),
            || format!("n={n}: verdicts {:?}", report.verdicts),
        )?;
    }
    Ok("n = 0..8".into())
}

fn c13_reference() -> Result<String, String> {
    let p = IntPolynomial::new(REFERENCE_322_POINCARE.to_vec());
    ensure(!p.is_palindromic(), || format!("{p} reads as palindromic"))?;
    Ok(format!("{p} is not palindromic"))
}

fn c14_propagation() -> Result<String, String> {
    let mut count = 0;
    for t in all_tableaux(10).filter(|t| t.n() >= 1) {
        if t.column_of(t.n()).unwrap() != 2 {
            continue;
        }
        let r = t.restrict().unwrap();
        ensure(singular_by_pattern(&r) || !singular_by_pattern(&t), || {
            format!("{t} singular, {r} smooth")
        })?;
        count += 1;
    }
    Ok(format!("{count} tableaux with n in column 2"))
}
