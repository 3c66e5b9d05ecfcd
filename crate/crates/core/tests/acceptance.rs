//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Quotient norms are compared against an independent oracle that
//! enumerates breakpoints of the piecewise-linear objective with its own
//! elimination; the free-algebra counterexample is checked by brute force
//! over bitmask element sets.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use amalgam::banach::{quotient_norm, PolytopeSpace};
use amalgam::boolean::{generated_subalgebra, is_internal_pushout, AtomSet, FiniteBoolAlg, Subalgebra};
use amalgam::io::json::{from_qs, to_pretty};
use amalgam::suites::banach::QuotientCase;
use amalgam::suites::{instance_rng, run_suite, SuiteConfig, SuiteReport, SUITES};
use num::{BigRational, Zero};

struct Line {
    ok: bool,
    detail: String,
}

fn suite(name: &str, cfg: SuiteConfig) -> (SuiteReport, Duration) {
    let t = Instant::now();
    let r = run_suite(name, &cfg).expect("known suite");
    (r, t.elapsed())
}

fn stat(r: &SuiteReport, law: &str) -> usize {
    r.stats.get(law).copied().unwrap_or(0)
}

fn first_failure(r: &SuiteReport) -> String {
    r.failures
        .first()
        .map(|f| format!("; first failure #{} {}: {}", f.id, f.law, f.message))
        .unwrap_or_default()
}

fn cfg(seed: u64, instances: usize) -> SuiteConfig {
    SuiteConfig {
        seed,
        instances,
        ..SuiteConfig::default()
    }
}

fn pushout_laws() -> Line {
    let (r, t) = suite("boolean", cfg(1, 1000));
    let laws = ["construction", "chain_union", "enlarge_sides", "transitivity", "directed_union", "tower_composition", "amalgamation"];
    let exercised = laws.iter().all(|l| stat(&r, l) > 0);
    Line {
        ok: r.passed() && exercised && t < Duration::from_secs(60),
        detail: format!(
            "1000 instances, {} violations, {:.1}s, {}{}",
            r.violations,
            t.as_secs_f64(),
            laws.iter().map(|l| format!("{l}={}", stat(&r, l))).collect::<Vec<_>>().join(" "),
            first_failure(&r)
        ),
    }
}

fn posex() -> Line {
    let (r, _) = suite("posex", cfg(2, 500));
    let sound = stat(&r, "witness_is_pushout");
    let term = stat(&r, "closure_terminates");
    Line {
        ok: r.passed() && sound == 500 && term == 500,
        detail: format!(
            "500 instances, {} violations, witness checked {sound}, iterations ≤ |B| checked {term}{}",
            r.violations,
            first_failure(&r)
        ),
    }
}

// ---- brute-force Boolean oracle on 8 atoms ----

fn mask(e: AtomSet) -> u8 {
    e.indices().fold(0u8, |m, i| m | 1 << i)
}

/// All elements of the subalgebra generated by `gens`, closed under ∧ and ¬.
fn closure(gens: &[u8]) -> BTreeSet<u8> {
    let mut set: BTreeSet<u8> = [0u8, 0xff].into_iter().chain(gens.iter().copied()).collect();
    loop {
        let items: Vec<u8> = set.iter().copied().collect();
        let mut grew = false;
        for &x in &items {
            grew |= set.insert(!x);
            for &y in &items {
                grew |= set.insert(x & y);
            }
        }
        if !grew {
            return set;
        }
    }
}

/// `a ≤ s` (in `A`, `S`) with no `r ∈ A∩S` between them.
fn order_violations(s: &BTreeSet<u8>, a: &BTreeSet<u8>) -> Vec<(u8, u8)> {
    let r: Vec<u8> = s.intersection(a).copied().collect();
    let mut out = Vec::new();
    for &x in a {
        for &y in s {
            if x & !y == 0 && !r.iter().any(|&z| x & !z == 0 && z & !y == 0) {
                out.push((x, y));
            }
        }
    }
    out
}

fn is_pushout(s: &BTreeSet<u8>, a: &BTreeSet<u8>) -> bool {
    let all: Vec<u8> = s.union(a).copied().collect();
    closure(&all).len() == 256 && order_violations(s, a).is_empty()
}

fn counterexample() -> Line {
    // atom i carries the bits (x1, x2, y) = (i & 4, i & 2, i & 1)
    let b = FiniteBoolAlg::numbered(8).unwrap();
    let el = |f: fn(usize) -> bool| AtomSet::from_indices((0..8).filter(|&i| f(i)));
    let (x1, x2, y) = (el(|i| i & 4 != 0), el(|i| i & 2 != 0), el(|i| i & 1 != 0));
    let s = generated_subalgebra(&b, &[y]).unwrap();
    let a = generated_subalgebra(&b, &[x1, x2]).unwrap();
    let d = generated_subalgebra(&b, &[x1, x2, x1.meet(y), x2.meet(y)]).unwrap();

    let o_s = closure(&[mask(y)]);
    let o_a = closure(&[mask(x1), mask(x2)]);
    let o_d = closure(&[mask(x1), mask(x2), mask(x1.meet(y)), mask(x2.meet(y))]);

    let v_a = is_internal_pushout(&b, &s, &a).unwrap();
    let v_d = is_internal_pushout(&b, &s, &d).unwrap();
    let first = v_a.holds() && is_pushout(&o_s, &o_a);
    let bad = order_violations(&o_s, &o_d);
    let witness_ok = match v_d.order_violation {
        Some((p, q)) => bad.contains(&(mask(p), mask(q))),
        None => false,
    };
    let stated_pair = bad.contains(&(mask(x1.meet(y)), mask(y)));
    let second = !v_d.holds() && !is_pushout(&o_s, &o_d) && witness_ok && stated_pair;

    let regen: Subalgebra = s.meet(&d).join(&a);
    let o_sd: Vec<u8> = o_s.intersection(&o_d).chain(o_a.iter()).copied().collect();
    let third = regen != d && closure(&o_sd) != o_d;
    Line {
        ok: first && second && third,
        detail: format!(
            "PO[<y>,A] = {}, PO[<y>,D] = {} (witness {:?} valid: {witness_ok}; (x1∧y, y) violates: {stated_pair}), D = <(S∩D) ∪ A>: {}",
            v_a.holds(),
            v_d.holds(),
            v_d.order_violation.map(|(p, q)| (b.labels_of(p), b.labels_of(q))),
            regen == d
        ),
    }
}

fn stone() -> Line {
    let (r, _) = suite("stone", cfg(4, 500));
    let a = stat(&r, "pushout_iff_dual_pullback");
    let b = stat(&r, "pullback_iff_clopen_pushout");
    Line {
        ok: r.passed() && a == 500 && b == 500,
        detail: format!(
            "500 squares, algebra→space {a}, space→algebra {b}, {} violations (push-outs {}, pull-backs {}){}",
            r.violations,
            stat(&r, "verdict_pushout"),
            stat(&r, "verdict_pullback"),
            first_failure(&r)
        ),
    }
}

// ---- breakpoint oracle for quotient norms ----

type Q = BigRational;

/// Solves the square system `m x = rhs`; `None` unless it has a unique solution.
fn gauss(mut m: Vec<Vec<Q>>, mut rhs: Vec<Q>) -> Option<Vec<Q>> {
    let n = rhs.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        rhs.swap(c, p);
        let pivot = m[c].clone();
        let pivot_rhs = rhs[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != c && !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, p) in row.iter_mut().zip(&pivot).skip(c) {
                    *x -= &f * p;
                }
                rhs[r] -= &f * &pivot_rhs;
            }
        }
    }
    Some((0..n).map(|i| &rhs[i] / &m[i][i]).collect())
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// `min_λ max_f (c_f + d_f·λ)` with `c_f = f·y`, `d_f = Vᵀf`: the minimum of
/// a convex piecewise-linear function sits at a vertex where `k+1` pieces
/// are equal, so enumerate those breakpoints.
fn breakpoint_oracle(gens: &[Vec<Q>], v: &[Vec<Q>], y: &[Q]) -> Q {
    let k = v.len();
    let c: Vec<Q> = gens.iter().map(|f| dot(f, y)).collect();
    let d: Vec<Vec<Q>> = gens.iter().map(|f| v.iter().map(|b| dot(f, b)).collect()).collect();
    let value = |lambda: &[Q]| {
        (0..gens.len())
            .map(|i| &c[i] + dot(&d[i], lambda))
            .max()
            .expect("nonempty")
    };
    let mut best: Option<Q> = None;
    for pick in subsets(gens.len(), k + 1) {
        // unknowns (t, λ): t − d_f·λ = c_f
        let m: Vec<Vec<Q>> = pick
            .iter()
            .map(|&i| std::iter::once(Q::from_integer(1.into())).chain(d[i].iter().map(|x| -x)).collect())
            .collect();
        let rhs: Vec<Q> = pick.iter().map(|&i| c[i].clone()).collect();
        if let Some(sol) = gauss(m, rhs) {
            let val = value(&sol[1..]);
            if best.as_ref().is_none_or(|b| val < *b) {
                best = Some(val);
            }
        }
    }
    best.expect("a norm has a vertex")
}

fn quotient() -> Line {
    let config = SuiteConfig {
        seed: 5,
        instances: 200,
        max_dim: 3,
        max_gens: 12,
        ..SuiteConfig::default()
    };
    let t = Instant::now();
    let mut mismatches = Vec::new();
    let mut max_gens = 0;
    for id in 0..config.instances {
        let case = QuotientCase::generate(&mut instance_rng(config.seed, id), &config);
        let space: PolytopeSpace = case.space.build().unwrap();
        let v: Vec<Vec<Q>> = case.v_basis.iter().map(|b| from_qs(b)).collect();
        let y = from_qs(&case.y);
        max_gens = max_gens.max(space.dual_gens().len());
        let lp = quotient_norm(&space, &v, &y).unwrap().value;
        let oracle = breakpoint_oracle(space.dual_gens(), &v, &y);
        if lp != oracle {
            mismatches.push((id, lp, oracle));
        }
    }
    let el = t.elapsed();
    Line {
        ok: mismatches.is_empty() && el < Duration::from_secs(120),
        detail: format!(
            "200 instances (≤ {max_gens} dual generators), {} mismatches, {:.1}s{}",
            mismatches.len(),
            el.as_secs_f64(),
            mismatches.first().map(|(i, a, b)| format!("; #{i}: LP {a}, oracle {b}")).unwrap_or_default()
        ),
    }
}

fn banach() -> Line {
    let (r, _) = suite("banach", cfg(6, 100));
    let a = stat(&r, "internal_pushout");
    let b = stat(&r, "dual_ball_pullback");
    Line {
        ok: r.passed() && a == 100 && b == 100,
        detail: format!("100 push-outs, norm identity {a}, dual ball {b}, {} violations{}", r.violations, first_failure(&r)),
    }
}

fn sup() -> Line {
    let (r, _) = suite("sup", cfg(7, 100));
    let n = stat(&r, "norm_preserved");
    Line {
        ok: r.passed() && n == 100 * 100,
        detail: format!("100 spaces, {n} vectors checked, {} violations{}", r.violations, first_failure(&r)),
    }
}

fn towers() -> Line {
    let (r, _) = suite("tower", cfg(8, 100));
    let laws = ["iso_is_isomorphism", "transcript_replays", "deterministic", "pointed_maps_point", "pointed_replays"];
    let all = laws.iter().all(|l| stat(&r, l) == 100);
    Line {
        ok: r.passed() && all,
        detail: format!(
            "100 pairs, {} violations, {}{}",
            r.violations,
            laws.iter().map(|l| format!("{l}={}", stat(&r, l))).collect::<Vec<_>>().join(" "),
            first_failure(&r)
        ),
    }
}

fn skeleton() -> Line {
    let (r, t) = suite(
        "skeleton",
        SuiteConfig {
            max_atoms: 32,
            ..cfg(9, 0)
        },
    );
    Line {
        ok: r.passed() && stat(&r, "skeleton_posex") > 0,
        detail: format!(
            "all towers up to 32 atoms, {} towers, {} Γ checked, {} (Γ, Δ) checks, {} violations, {:.1}s{}",
            amalgam::suites::tower::skeleton_towers(32).len(),
            stat(&r, "idempotent"),
            stat(&r, "skeleton_posex"),
            r.violations,
            t.as_secs_f64(),
            first_failure(&r)
        ),
    }
}

fn determinism() -> Line {
    let mut differing = Vec::new();
    for name in SUITES {
        let c = SuiteConfig {
            max_atoms: if *name == "skeleton" { 16 } else { 8 },
            ..cfg(10, 40)
        };
        let a = to_pretty(&run_suite(name, &c).unwrap());
        let b = to_pretty(&run_suite(name, &c).unwrap());
        if a != b {
            differing.push(*name);
        }
    }
    Line {
        ok: differing.is_empty(),
        detail: format!("{} suites re-run with seed 10, differing: {differing:?}", SUITES.len()),
    }
}

type Criterion = (&'static str, fn() -> Line);

fn main() {
    let criteria: [Criterion; 10] = [
        ("push-out laws", pushout_laws),
        ("posex witness", posex),
        ("free-algebra counterexample", counterexample),
        ("duality", stone),
        ("quotient norm oracle", quotient),
        ("norm identity", banach),
        ("sup-space embedding", sup),
        ("back-and-forth", towers),
        ("skeleton", skeleton),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let line = f();
        println!("criterion {:>2} {:<28} {}  {}", i + 1, name, if line.ok { "PASS" } else { "FAIL" }, line.detail);
        failed += usize::from(!line.ok);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
