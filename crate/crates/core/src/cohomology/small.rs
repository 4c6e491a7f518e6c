//! Cohomology of `Z/m x Z/n` from the tensor product of the two periodic
//! resolutions. Used as an independent oracle for the bar engine.

use num_traits::ToPrimitive;

use super::module::{GModule, ModuleKind};
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::linalg::abelian::{modular_subquotient, subquotient_structure, AbelianStructure, Ambient};
use crate::linalg::int::{self, IntMatrix};
use crate::linalg::modular::{kernel_rows, lcm};

/// `H^degree(G, M)` for `G = <a> x <b>` (take `b = 0` for a cyclic group).
///
/// The cochain complex has `C^i = M^(i+1)`, component `(p, q)` with
/// `p + q = i`, and differential `D_a(p) + (-1)^p D_b(q)` where `D(p)` is
/// `g - 1` for even `p` and the norm for odd `p`. `Q/Z` coefficients use
/// `H^i(G, Q/Z) = H^(i+1)(G, Z)`.
pub fn small_complex_h(
    g: &FiniteGroup,
    a: usize,
    b: usize,
    m: &GModule,
    degree: usize,
) -> Result<AbelianStructure> {
    m.check_group(g)?;
    if a >= g.order() || b >= g.order() {
        return Err(Error::Validation("element out of range".into()));
    }
    if !g.commute(a, b) {
        return Err(Error::NonCommuting { a, b });
    }
    let (oa, ob) = (g.element_order(a), g.element_order(b));
    if g.closure(&[a, b]).len() != g.order() || oa * ob != g.order() {
        return Err(Error::Validation(
            "elements do not split the group as a product of two cyclic groups".into(),
        ));
    }
    if degree == 0 {
        return Err(Error::Unsupported("degree 0".into()));
    }
    if let ModuleKind::TrivialQZ = m.kind() {
        let z = GModule::trivial_lattice(g, 1)?;
        return small_complex_h(g, a, b, &z, degree + 1);
    }
    let k = m.rank();
    let da = |p: usize| block(g, m, a, p);
    let db = |q: usize| block(g, m, b, q);
    let d_i = differential(k, degree, &da, &db);
    let d_prev = if degree == 0 {
        Vec::new()
    } else {
        differential(k, degree - 1, &da, &db)
    };
    let dim = (degree + 1) * k;
    // image generators are the columns of the previous differential
    let prev_cols = degree * k;
    let image: Vec<Vec<i64>> = (0..prev_cols)
        .map(|c| d_prev.iter().map(|row| row[c]).collect())
        .collect();
    match m.kind() {
        ModuleKind::Lattice(_) => {
            let mat = IntMatrix::from_rows(dim, &d_i)?;
            let kernel: Vec<Vec<i64>> = int::kernel(&mat)
                .into_iter()
                .map(|r| {
                    r.iter()
                        .map(|x| x.to_i64().ok_or_else(|| Error::Validation("overflow".into())))
                        .collect()
                })
                .collect::<Result<_>>()?;
            subquotient_structure(dim, Ambient::Free, &kernel, &image)
        }
        ModuleKind::Finite(f) => {
            let n = f.iter().fold(1, |acc, &d| lcm(acc, d));
            let coord = |r: usize| f[r % k];
            let red = |x: i64| x.rem_euclid(n as i64) as u64;
            let rows: Vec<Vec<u64>> = d_i
                .iter()
                .enumerate()
                .map(|(r, row)| {
                    let sc = n / coord(r);
                    row.iter().map(|&x| red(x) * sc % n).collect()
                })
                .collect();
            let kernel = kernel_rows(&rows, dim, n);
            let mut img: Vec<Vec<u64>> = image
                .iter()
                .map(|v| v.iter().enumerate().map(|(r, &x)| red(x) % coord(r)).collect())
                .collect();
            for r in 0..dim {
                if coord(r) != n {
                    let mut v = vec![0u64; dim];
                    v[r] = coord(r);
                    img.push(v);
                }
            }
            modular_subquotient(dim, n, kernel, img)
        }
        ModuleKind::TrivialQZ => unreachable!(),
    }
}

/// `rho(x) - 1` for even `p`, `Σ_t rho(x^t)` for odd `p`.
fn block(g: &FiniteGroup, m: &GModule, x: usize, p: usize) -> Vec<Vec<i64>> {
    let k = m.rank();
    if p.is_multiple_of(2) {
        let r = m.action(x);
        (0..k)
            .map(|i| (0..k).map(|j| r[i][j] - i64::from(i == j)).collect())
            .collect()
    } else {
        let mut acc = vec![vec![0i64; k]; k];
        let mut y = 0;
        for _ in 0..g.element_order(x) {
            let r = m.action(y);
            for i in 0..k {
                for j in 0..k {
                    acc[i][j] += r[i][j];
                }
            }
            y = g.mul(y, x);
        }
        acc
    }
}

/// Matrix of `d^i: M^(i+1) -> M^(i+2)` with block `p` for component `(p, i-p)`.
fn differential(
    k: usize,
    i: usize,
    da: &dyn Fn(usize) -> Vec<Vec<i64>>,
    db: &dyn Fn(usize) -> Vec<Vec<i64>>,
) -> Vec<Vec<i64>> {
    let rows = (i + 2) * k;
    let cols = (i + 1) * k;
    let mut out = vec![vec![0i64; cols]; rows];
    for p in 0..=i {
        let q = i - p;
        let a = da(p);
        let b = db(q);
        let sign = if p % 2 == 0 { 1 } else { -1 };
        for r in 0..k {
            for c in 0..k {
                out[(p + 1) * k + r][p * k + c] += a[r][c];
                out[p * k + r][p * k + c] += sign * b[r][c];
            }
        }
    }
    out
}
