//! Bundled verification suites.
//!
//! Each suite returns per-case results; nothing here records timings, so a
//! suite report is a pure function of the code and the fixtures.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::brauer::{
    br_nr_flag, br_nr_grassmannian, br_nr_linear, br_nr_projective, br_nr_toric, class_of,
    gamma_from_projective_action, plucker_beta, plucker_vector, annihilator, proportional, recheck_bogomolov,
    bogomolov_multiplier, Action, BrauerOptions, BrauerReport, CorrelationAction, ProjectiveAction,
};
use crate::cohomology::{corestrict, h1, h2, h2_qz, restrict, small_complex_h, GModule};
use crate::commands::{run, RunOptions};
use crate::corpus;
use crate::cyclotomic::{CycloMatrix, CycloNumber};
use crate::error::{Error, Result};
use crate::groups::{subgroups_of_index_at_most, FiniteGroup};
use crate::io::{GroupSpec, InputDoc};
use crate::linalg::abelian::canonical_factors;

/// Suites required by the command line, in the order `verify all` runs them.
pub const SUITES: &[&str] = &[
    "abelian-sweep",
    "b0-corpus",
    "oracle-equivalence",
    "transfer",
    "plucker-oracle",
    "degeneracies",
    "toric",
    "fixtures",
];

/// Environment variable pointing at an alternative fixture directory.
pub const FIXTURES_ENV: &str = "BRQ_FIXTURES";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "passed": self.passed(),
            "total": self.cases.len(),
            "cases": self.cases,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.cases {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(s, "{mark} {}: {}", c.name, c.detail);
        }
        let _ = writeln!(s, "{}: {}/{} passed", self.suite, self.passed(), self.cases.len());
        s
    }
}

/// A case that passes when `check` returns `Ok(detail)`; errors fail it.
fn case(name: impl Into<String>, check: impl FnOnce() -> Result<(bool, String)>) -> CaseResult {
    let name = name.into();
    match check() {
        Ok((passed, detail)) => CaseResult { name, passed, detail },
        Err(e) => CaseResult {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

pub fn run_suite(name: &str) -> Result<SuiteReport> {
    let cases = match name {
        "abelian-sweep" => abelian_sweep(),
        "b0-corpus" => b0_corpus(),
        "oracle-equivalence" => oracle_equivalence(50),
        "transfer" => transfer(),
        "plucker-oracle" => plucker_oracle(25),
        "degeneracies" => degeneracies(),
        "toric" => toric(),
        "fixtures" => fixtures(&fixture_dir())?,
        other => {
            return Err(Error::Parse(format!(
                "unknown suite {other:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        cases,
    })
}

/// Invariant-factor chains `d_1 | d_2 | ...` (all `d_i >= 2`) with product at most `n`.
pub fn abelian_shapes(n: u64) -> Vec<Vec<u64>> {
    fn grow(prefix: &mut Vec<u64>, prod: u64, n: u64, out: &mut Vec<Vec<u64>>) {
        let start = prefix.last().copied().unwrap_or(2);
        let mut d = start;
        while prod * d <= n {
            if prefix.last().is_none_or(|&p| d % p == 0) {
                prefix.push(d);
                out.push(prefix.clone());
                grow(prefix, prod * d, n, out);
                prefix.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), 1, n, &mut out);
    out.sort_by_key(|f| (f.iter().product::<u64>(), f.clone()));
    out
}

/// `⊕_{i<j} Z/gcd(n_i, n_j)` in canonical form.
pub fn expected_abelian_h2(factors: &[u64]) -> Vec<u64> {
    let mut orders = Vec::new();
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            orders.push(factors[i].gcd(&factors[j]));
        }
    }
    canonical_factors(&orders)
}

fn abelian_sweep() -> Vec<CaseResult> {
    let mut out: Vec<CaseResult> = abelian_shapes(48)
        .into_iter()
        .map(|f| {
            case(format!("abelian {f:?}"), || {
                let g = GroupSpec::Abelian {
                    factors: f.iter().map(|&d| d as usize).collect(),
                }
                .build()?;
                let got = h2_qz(&g)?.invariant_factors().to_vec();
                let want = expected_abelian_h2(&f);
                Ok((got == want, format!("H2 = {got:?}, expected {want:?}")))
            })
        })
        .collect();
    // a non-canonical presentation of the same kind of group
    out.push(case("abelian [2, 3, 4] (non-canonical order)", || {
        let g = GroupSpec::Abelian { factors: vec![2, 3, 4] }.build()?;
        let got = h2_qz(&g)?.invariant_factors().to_vec();
        let want = expected_abelian_h2(&[2, 3, 4]);
        Ok((got == want, format!("H2 = {got:?}, expected {want:?}")))
    }));
    out.push(case("cyclic groups of order 1..=96", || {
        let mut bad = Vec::new();
        for n in 1..=96 {
            let g = GroupSpec::Cyclic { n }.build()?;
            if !h2_qz(&g)?.invariant_factors().is_empty() {
                bad.push(n);
            }
        }
        Ok((bad.is_empty(), format!("nonvanishing orders: {bad:?}")))
    }));
    out
}

fn b0_line(name: &str, g: &FiniteGroup, rep: &BrauerReport) -> Result<String> {
    let ok = recheck_bogomolov(g, rep)?;
    Ok(format!(
        "{name}: order {}, H2 = {:?}, B0 = {:?}, recheck on all bicyclic subgroups {}",
        g.order(),
        rep.h2_factors,
        rep.unramified_factors(),
        if ok { "agrees" } else { "DISAGREES" }
    ))
}

fn b0_corpus() -> Vec<CaseResult> {
    let mut out: Vec<CaseResult> = corpus::b0_corpus()
        .into_iter()
        .map(|(name, spec)| {
            case(format!("B0({name}) = []"), || {
                let g = spec.build()?;
                let rep = bogomolov_multiplier(&g)?;
                let ok = rep.unramified_factors().is_empty() && recheck_bogomolov(&g, &rep)?;
                Ok((ok, b0_line(&name, &g, &rep)?))
            })
        })
        .collect();
    out.push(case("B0(order-64 fixture) = [2]", || {
        let g = corpus::b0_nonzero_64().build()?;
        let rep = bogomolov_multiplier(&g)?;
        let ok = rep.unramified_factors() == [2] && recheck_bogomolov(&g, &rep)?;
        Ok((ok, b0_line("order-64 fixture", &g, &rep)?))
    }));
    out
}

/// A bicyclic group `Z/a x Z/b` with elements generating the two factors.
fn bicyclic(a: usize, b: usize) -> Result<(FiniteGroup, usize, usize)> {
    if b == 1 {
        let g = GroupSpec::Cyclic { n: a }.build()?;
        let x = g.generators().first().copied().unwrap_or(0);
        return Ok((g, x, 0));
    }
    let g = GroupSpec::Abelian { factors: vec![a, b] }.build()?;
    // (1, 0) sits at index b, (0, 1) at index 1
    Ok((g, b, 1))
}

fn mat_pow(m: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let n = m.len();
    let mut acc: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..k {
        acc = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|t| acc[i][t] * m[t][j]).sum()).collect())
            .collect();
    }
    acc
}

fn mat_order(m: &[Vec<i64>]) -> usize {
    let id = mat_pow(m, 0);
    (1..=12).find(|&k| mat_pow(m, k) == id).expect("pool matrices have finite order")
}

/// Finite-order integer matrices of rank `d`.
fn lattice_pool(d: usize) -> Vec<Vec<Vec<i64>>> {
    match d {
        1 => vec![vec![vec![1]], vec![vec![-1]]],
        2 => vec![
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![-1, 0], vec![0, -1]],
            vec![vec![1, 0], vec![0, -1]],
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, -1], vec![1, -1]],
            vec![vec![0, -1], vec![1, 0]],
            vec![vec![1, -1], vec![1, 0]],
        ],
        _ => vec![
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec![vec![-1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]],
            vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]],
            vec![vec![0, 0, -1], vec![-1, 0, 0], vec![0, -1, 0]],
            vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]],
            vec![vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, 1]],
        ],
    }
}

/// Description of a random oracle case.
#[derive(Clone, Debug)]
pub struct OracleCase {
    pub a: usize,
    pub b: usize,
    pub module: String,
    pub degree: usize,
}

/// Draws a module for `Z/a x Z/b` from the fixed pool.
fn random_module(
    rng: &mut ChaCha8Rng,
    g: &FiniteGroup,
    x: usize,
    y: usize,
    a: usize,
    b: usize,
) -> Result<(GModule, String)> {
    let lattice_ok = a * b <= 24;
    let choice = rng.gen_range(0..if lattice_ok { 4 } else { 2 });
    let gens = |mx: Vec<Vec<i64>>, my: Vec<Vec<i64>>| {
        let mut v = vec![(x, mx)];
        if y != 0 {
            v.push((y, my));
        }
        v
    };
    match choice {
        0 => Ok((GModule::trivial_qz(g), "Q/Z".into())),
        1 => {
            let m = [2u64, 3, 4, 6, 12][rng.gen_range(0..5)];
            // -1 is an automorphism of order dividing 2
            let sx = if a.is_multiple_of(2) && rng.gen_bool(0.5) { -1 } else { 1 };
            let sy = if b.is_multiple_of(2) && rng.gen_bool(0.5) { -1 } else { 1 };
            let module = GModule::finite(g, &[m], &gens(vec![vec![sx]], vec![vec![sy]]))?;
            Ok((module, format!("Z/{m} with signs ({sx}, {sy})")))
        }
        _ => {
            let d = rng.gen_range(1..=3);
            let pool = lattice_pool(d);
            let mx_opts: Vec<&Vec<Vec<i64>>> = pool.iter().filter(|m| a.is_multiple_of(mat_order(m))).collect();
            let mx = mx_opts[rng.gen_range(0..mx_opts.len())].clone();
            // powers of mx and -1 commute with mx
            let mut my_opts: Vec<Vec<Vec<i64>>> = (0..mat_order(&mx)).map(|k| mat_pow(&mx, k)).collect();
            my_opts.extend(my_opts.clone().into_iter().map(|m| {
                m.into_iter().map(|r| r.into_iter().map(|v| -v).collect()).collect()
            }));
            my_opts.retain(|m| b.is_multiple_of(mat_order(m)));
            my_opts.sort();
            my_opts.dedup();
            let my = my_opts[rng.gen_range(0..my_opts.len())].clone();
            let desc = format!("Z^{d} with x -> {mx:?}, y -> {my:?}");
            Ok((GModule::lattice(g, d, &gens(mx, my))?, desc))
        }
    }
}

fn oracle_equivalence(n: usize) -> Vec<CaseResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0062_7271);
    let shapes: Vec<(usize, usize)> = (2..=36usize)
        .flat_map(|a| (1..=a.min(36 / a)).map(move |b| (a, b)))
        .collect();
    (0..n)
        .map(|i| {
            let (a, b) = shapes[rng.gen_range(0..shapes.len())];
            let degree = rng.gen_range(1..=2usize);
            let setup = bicyclic(a, b).and_then(|(g, x, y)| {
                let (m, desc) = random_module(&mut rng, &g, x, y, a, b)?;
                Ok((g, x, y, m, desc))
            });
            case(format!("case {i}: Z/{a} x Z/{b}, H{degree}"), move || {
                let (g, x, y, m, desc) = setup?;
                let bar = if degree == 1 { h1(&g, &m)? } else { h2(&g, &m)? };
                let small = small_complex_h(&g, x, y, &m, degree)?;
                let ok = bar.invariant_factors() == small.invariant_factors();
                Ok((
                    ok,
                    format!(
                        "{desc}: bar {:?}, small complex {:?}",
                        bar.invariant_factors(),
                        small.invariant_factors()
                    ),
                ))
            })
        })
        .collect()
}

fn transfer() -> Vec<CaseResult> {
    corpus::b0_corpus()
        .into_iter()
        .map(|(name, spec)| {
            case(format!("cores o res on {name}"), || {
                let g = spec.build()?;
                let h = h2_qz(&g)?;
                let factors = h.invariant_factors().to_vec();
                let subs = subgroups_of_index_at_most(&g, 4)?;
                let mut checked = 0;
                for sub in &subs {
                    let index = (g.order() / sub.order()) as u64;
                    for (j, rep) in h.representatives().iter().enumerate() {
                        let back = corestrict(&restrict(rep, &g, sub)?, &g, sub)?;
                        let got = h.reduce_qz(&g, &back)?;
                        let want: Vec<u64> = factors
                            .iter()
                            .enumerate()
                            .map(|(i, &d)| if i == j { index % d } else { 0 })
                            .collect();
                        if got != want {
                            return Ok((
                                false,
                                format!("subgroup of order {}: generator {j} maps to {got:?}, expected {want:?}", sub.order()),
                            ));
                        }
                        checked += 1;
                    }
                }
                Ok((
                    true,
                    format!("H2 = {factors:?}; {} subgroups of index <= 4, {checked} class checks", subs.len()),
                ))
            })
        })
        .collect()
}

fn int_matrix(rows: &[Vec<i64>]) -> CycloMatrix {
    CycloMatrix::from_int_rows(1, rows).expect("integer rows")
}

/// Correlation actions on `Gr(2, 4)` used by the Plücker oracle.
pub fn correlation_examples() -> Result<Vec<(String, FiniteGroup, CorrelationAction)>> {
    let mut out = Vec::new();
    // K4 = <a, tau>
    let k4 = GroupSpec::Abelian { factors: vec![2, 2] }.build()?;
    let (a, tau) = (k4.generators()[0], k4.generators()[1]);
    let psi = int_matrix(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, -1, 0], vec![0, 0, 0, -1]]);
    let c = CorrelationAction::new(&k4, 4, &[(a, psi)], CycloMatrix::identity(1, 4), tau)?;
    out.push(("K4, phi = I".to_string(), k4, c));
    // Z/12 = <tau>: tau^2 must act by phi^{-T} phi, which has order 6 here
    let z12 = GroupSpec::Cyclic { n: 12 }.build()?;
    let t = z12.generators()[0];
    let phi = int_matrix(&[vec![1, 1, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
    let psi = phi.transpose().inverse()?.mul(&phi)?;
    let c = CorrelationAction::new(&z12, 4, &[(z12.mul(t, t), psi)], phi, t)?;
    out.push(("Z/12, phi unipotent".to_string(), z12, c));
    // Z/4 with a symplectic form: tau^2 acts by -I
    let z4 = GroupSpec::Cyclic { n: 4 }.build()?;
    let t = z4.generators()[0];
    let j = int_matrix(&[vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, -1, 0]]);
    let minus = int_matrix(&[vec![-1, 0, 0, 0], vec![0, -1, 0, 0], vec![0, 0, -1, 0], vec![0, 0, 0, -1]]);
    let c = CorrelationAction::new(&z4, 4, &[(z4.mul(t, t), minus)], j, t)?;
    out.push(("Z/4, phi symplectic".to_string(), z4, c));
    Ok(out)
}

/// Checks one plane against every element of one action; returns the number
/// of proportionality checks made.
fn plucker_check(g: &FiniteGroup, c: &CorrelationAction, plucker: &ProjectiveAction, sigma: &CycloMatrix) -> Result<usize> {
    let p = plucker_vector(sigma)?;
    let mut n = 0;
    for x in 0..g.order() {
        let m = plucker.lift(x).promote(plucker.conductor().lcm(&sigma.conductor()))?;
        let lhs = m.mul_vec(&p.iter().map(|v| v.promote(m.conductor())).collect::<Result<Vec<_>>>()?)?;
        let image = match c.subgroup().index_of(x) {
            Some(i) => c.base().lift(i).mul(sigma)?,
            None => annihilator(&c.correlation_matrix(g, x)?.mul(sigma)?)?,
        };
        let rhs = plucker_vector(&image)?;
        if !proportional(&lhs, &rhs)? {
            return Err(Error::Validation(format!("element {x} breaks proportionality")));
        }
        n += 1;
    }
    Ok(n)
}

fn random_plane(rng: &mut ChaCha8Rng) -> CycloMatrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..4).map(|_| (0..2).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let m = int_matrix(&rows);
        if plucker_vector(&m).is_ok_and(|p| p.iter().any(|v| !v.is_zero())) {
            return m;
        }
    }
}

fn plucker_oracle(n: usize) -> Vec<CaseResult> {
    let examples = match correlation_examples() {
        Ok(e) => e,
        Err(e) => return vec![case("correlation examples build", || Err(e))],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x706c_7563);
    let mut out: Vec<CaseResult> = (0..n)
        .map(|i| {
            let sigma = random_plane(&mut rng);
            case(format!("plane {i}"), || {
                let mut checks = 0;
                for (_, g, c) in &examples {
                    let plucker = c.plucker_action(g)?;
                    checks += plucker_check(g, c, &plucker, &sigma)?;
                }
                Ok((true, format!("{checks} proportionality checks across {} actions", examples.len())))
            })
        })
        .collect();
    for (name, g, c) in examples {
        out.push(case(format!("2 beta = 0 for {name}"), move || {
            let h = h2_qz(&g)?;
            let beta = class_of(&h, &g, &plucker_beta(&g, &Action::Correlation(c), 2)?)?;
            let ok = beta
                .iter()
                .zip(h.invariant_factors())
                .all(|(&x, &d)| (2 * x).rem_euclid(d as i64) == 0);
            Ok((ok, format!("H2 = {:?}, beta = {beta:?}", h.invariant_factors())))
        }));
    }
    out
}

/// Clock and shift matrices: a projective representation of `Z/n x Z/n`.
pub fn clock_shift(n: usize, tensor_identity: usize) -> Result<(FiniteGroup, ProjectiveAction)> {
    let g = GroupSpec::Abelian { factors: vec![n, n] }.build()?;
    let m = n as u64;
    let mut shift = CycloMatrix::zeros(m, n, n);
    let mut clock = CycloMatrix::zeros(m, n, n);
    for i in 0..n {
        shift.set((i + 1) % n, i, CycloNumber::one(m))?;
        clock.set(i, i, CycloNumber::zeta(m, i as i64))?;
    }
    let grow = |x: &CycloMatrix| -> Result<CycloMatrix> {
        let mut out = CycloMatrix::zeros(m, n * tensor_identity, n * tensor_identity);
        for t in 0..tensor_identity {
            for i in 0..n {
                for j in 0..n {
                    out.set(t * n + i, t * n + j, x.get(i, j).clone())?;
                }
            }
        }
        Ok(out)
    };
    let (x, y) = (g.generators()[0], g.generators()[1]);
    let act = gamma_from_projective_action(&g, n * tensor_identity, &[(x, grow(&shift)?), (y, grow(&clock)?)])?;
    Ok((g, act))
}

fn permutation_action(spec: &GroupSpec) -> Result<(FiniteGroup, ProjectiveAction)> {
    let GroupSpec::Permutation { degree, generators } = spec else {
        return Err(Error::Validation("not a permutation group".into()));
    };
    let g = spec.build()?;
    let mats: Vec<(usize, CycloMatrix)> = generators
        .iter()
        .zip(g.generators())
        .map(|(p, &e)| {
            let rows: Vec<Vec<i64>> = (0..*degree)
                .map(|i| (0..*degree).map(|j| i64::from(p[j] == i)).collect())
                .collect();
            (e, int_matrix(&rows))
        })
        .collect();
    let act = gamma_from_projective_action(&g, *degree, &mats)?;
    Ok((g, act))
}

fn identity_action(spec: &GroupSpec, dim: usize) -> Result<(FiniteGroup, ProjectiveAction)> {
    let g = spec.build()?;
    let mats: Vec<(usize, CycloMatrix)> = g
        .generators()
        .iter()
        .map(|&e| (e, CycloMatrix::identity(1, dim)))
        .collect();
    let act = gamma_from_projective_action(&g, dim, &mats)?;
    Ok((g, act))
}

/// Linear actions (`γ = 0`) of corpus groups.
pub fn linear_actions() -> Result<Vec<(String, FiniteGroup, ProjectiveAction)>> {
    let mut out = Vec::new();
    for (name, spec) in [("S4", corpus::s4()), ("A4", corpus::a4()), ("A4 in S6", corpus::a4_in_s6())] {
        let (g, a) = permutation_action(&spec)?;
        out.push((format!("{name} permutation"), g, a));
    }
    let s3 = GroupSpec::Permutation {
        degree: 3,
        generators: vec![vec![1, 0, 2], vec![1, 2, 0]],
    };
    let (g, a) = permutation_action(&s3)?;
    out.push(("S3 permutation".into(), g, a));
    for (name, spec) in corpus::b0_corpus().into_iter().take(6) {
        let (g, a) = identity_action(&spec, 2)?;
        out.push((format!("{name} trivial 2-dim"), g, a));
    }
    Ok(out)
}

/// Projective actions with a mix of zero and nonzero `γ`.
pub fn projective_actions() -> Result<Vec<(String, FiniteGroup, ProjectiveAction)>> {
    let mut out = Vec::new();
    for n in 2..=6 {
        let (g, a) = clock_shift(n, 1)?;
        out.push((format!("clock-shift n = {n}"), g, a));
    }
    for n in 2..=3 {
        let (g, a) = clock_shift(n, 2)?;
        out.push((format!("clock-shift n = {n} doubled"), g, a));
    }
    let mut lin = linear_actions()?;
    lin.truncate(3);
    out.extend(lin);
    Ok(out)
}

fn same_groups(a: &BrauerReport, b: &BrauerReport) -> bool {
    a.h2_factors == b.h2_factors
        && a.stack_group.invariant_factors() == b.stack_group.invariant_factors()
        && a.stack_group.witnesses() == b.stack_group.witnesses()
        && a.unramified_group.invariant_factors() == b.unramified_group.invariant_factors()
        && a.unramified_group.witnesses() == b.unramified_group.witnesses()
}

fn summary(r: &BrauerReport) -> String {
    format!("stack {:?}, unramified {:?}", r.stack_factors(), r.unramified_factors())
}

fn degeneracies() -> Vec<CaseResult> {
    let opts = BrauerOptions::default();
    let mut out = Vec::new();
    match linear_actions() {
        Ok(list) => {
            for (name, g, a) in list {
                out.push(case(format!("projective(gamma = 0) = linear: {name}"), || {
                    let p = br_nr_projective(&g, &a, opts)?;
                    let l = br_nr_linear(&g, opts)?;
                    Ok((same_groups(&p, &l), summary(&p)))
                }));
            }
        }
        Err(e) => out.push(case("linear actions build", || Err(e))),
    }
    match projective_actions() {
        Ok(list) => {
            for (name, g, a) in list {
                let act = Action::Projective(a.clone());
                out.push(case(format!("grassmannian(r = 1) = projective: {name}"), || {
                    let p = br_nr_projective(&g, &a, opts)?;
                    let gr = br_nr_grassmannian(&g, &act, 1, opts)?;
                    Ok((same_groups(&p, &gr), summary(&gr)))
                }));
                out.push(case(format!("flag(m = 1) = grassmannian: {name}"), || {
                    let r = (act.dimension() / 2).max(1);
                    let gr = br_nr_grassmannian(&g, &act, r, opts)?;
                    let fl = br_nr_flag(&g, &act, &[r], opts)?;
                    Ok((same_groups(&gr, &fl), format!("r = {r}: {}", summary(&fl))))
                }));
            }
        }
        Err(e) => out.push(case("projective actions build", || Err(e))),
    }
    out
}

fn toric() -> Vec<CaseResult> {
    corpus::gl2z_bicyclic()
        .into_iter()
        .map(|(name, doc)| {
            case(format!("Br_nr of the {name} torus = []"), || {
                let g = doc.build_group()?;
                let t = doc
                    .build_toric(&g)?
                    .ok_or_else(|| Error::Validation("missing toric action".into()))?;
                let r = br_nr_toric(&g, &t, BrauerOptions::default())?;
                Ok((r.unramified_factors().is_empty(), summary(&r)))
            })
        })
        .collect()
}

/// One stored report: a verb applied to an input document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureEntry {
    pub name: String,
    pub verb: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    /// Path relative to the fixture directory.
    pub input: String,
    #[serde(default)]
    pub witness: bool,
    #[serde(default)]
    pub diagnostics: bool,
}

/// The bundled fixture directory, or `$BRQ_FIXTURES` if set.
pub fn fixture_dir() -> PathBuf {
    std::env::var_os(FIXTURES_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures")))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn load_manifest(dir: &Path) -> Result<Vec<FixtureEntry>> {
    serde_json::from_str(&read(&dir.join("manifest.json"))?).map_err(|e| Error::Parse(format!("manifest: {e}")))
}

/// Computes the JSON and text bytes of one fixture.
pub fn render_fixture(dir: &Path, e: &FixtureEntry) -> Result<(String, String)> {
    let doc = InputDoc::parse(&read(&dir.join(&e.input))?)?;
    let opts = RunOptions {
        witness: e.witness,
        diagnostics: e.diagnostics,
        ..Default::default()
    };
    let rep = run(&e.verb, e.kind.as_deref(), &doc, &opts)?;
    Ok((rep.json_bytes(), rep.text))
}

fn report_paths(dir: &Path, name: &str) -> (PathBuf, PathBuf) {
    let base = dir.join("reports");
    (base.join(format!("{name}.json")), base.join(format!("{name}.txt")))
}

/// Rewrites every stored report from the current code.
pub fn bless_fixtures(dir: &Path) -> Result<usize> {
    let entries = load_manifest(dir)?;
    std::fs::create_dir_all(dir.join("reports")).map_err(|e| Error::Parse(e.to_string()))?;
    for e in &entries {
        let (json, text) = render_fixture(dir, e)?;
        let (pj, pt) = report_paths(dir, &e.name);
        std::fs::write(pj, json).map_err(|e| Error::Parse(e.to_string()))?;
        std::fs::write(pt, text).map_err(|e| Error::Parse(e.to_string()))?;
    }
    Ok(entries.len())
}

fn first_difference(a: &str, b: &str) -> String {
    match a.lines().zip(b.lines()).enumerate().find(|(_, (x, y))| x != y) {
        Some((i, (x, y))) => format!("line {}: got {x:?}, stored {y:?}", i + 1),
        None => format!("lengths differ: got {} bytes, stored {}", a.len(), b.len()),
    }
}

fn fixtures(dir: &Path) -> Result<Vec<CaseResult>> {
    let entries = load_manifest(dir)?;
    Ok(entries
        .iter()
        .map(|e| {
            case(format!("fixture {}", e.name), || {
                let (json, text) = render_fixture(dir, e)?;
                let (pj, pt) = report_paths(dir, &e.name);
                let (sj, st) = (read(&pj)?, read(&pt)?);
                if json != sj {
                    return Ok((false, format!("{}.json differs, {}", e.name, first_difference(&json, &sj))));
                }
                if text != st {
                    return Ok((false, format!("{}.txt differs, {}", e.name, first_difference(&text, &st))));
                }
                Ok((true, format!("{} + {} bytes identical", json.len(), text.len())))
            })
        })
        .collect())
}

/// Per-suite pass counts, keyed by suite name.
pub fn summarize(reports: &[SuiteReport]) -> BTreeMap<String, (usize, usize)> {
    reports
        .iter()
        .map(|r| (r.suite.clone(), (r.passed(), r.cases.len())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_and_gcd_formula() {
        let s = abelian_shapes(8);
        assert_eq!(
            s,
            vec![vec![2], vec![3], vec![2, 2], vec![4], vec![5], vec![6], vec![7], vec![2, 2, 2], vec![2, 4], vec![8]]
        );
        assert_eq!(expected_abelian_h2(&[2, 2, 2]), vec![2, 2, 2]);
        assert_eq!(expected_abelian_h2(&[2, 3, 4]), vec![2]);
        assert_eq!(expected_abelian_h2(&[6, 12]), vec![6]);
    }

    #[test]
    fn unknown_suite_is_a_parse_error() {
        assert!(matches!(run_suite("nope"), Err(Error::Parse(_))));
    }

    #[test]
    fn small_oracle_and_plucker_runs_pass() {
        for c in oracle_equivalence(8) {
            assert!(c.passed, "{c:?}");
        }
        for c in plucker_oracle(3) {
            assert!(c.passed, "{c:?}");
        }
    }
}
