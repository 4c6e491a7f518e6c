//! Linear algebra over `Z/N` in word-size arithmetic.
//!
//! Row spans are kept in Howell form: echelon rows whose pivots divide `N`,
//! entries above each pivot reduced below it, and the Howell property (the
//! rows with leading zeros in the first `k` columns span every vector of the
//! span with that shape). The Howell property is what makes greedy
//! membership tests and kernel extraction exact.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Moduli must keep products of two residues inside a `u64`.
pub const MAX_MODULUS: u64 = u32::MAX as u64;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Returns `(g, s, t)` with `g = s*a + t*b`, `g >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn inv_mod(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (g, s, _) = ext_gcd(a as i128, n as i128);
    (g == 1).then(|| s.rem_euclid(n as i128) as u64)
}

/// A unit `u` with `u * a == gcd(a, n) (mod n)`.
pub fn normalizing_unit(a: u64, n: u64) -> u64 {
    let g = gcd(a, n);
    if g == 0 || n == 1 {
        return 1 % n.max(1);
    }
    let np = n / g;
    let base = inv_mod((a / g) % np, np).unwrap_or(0);
    let mut u = base;
    while gcd(u, n) != 1 {
        u += np;
    }
    u % n
}

/// Unimodular `[[s, t], [u, w]]` sending `(x, y)` to `(g, 0)` over the integers,
/// using plain elimination when `x` already divides `y`.
fn elim(x: u64, y: u64, n: u64) -> (u64, u64, u64, u64) {
    if x != 0 && y.is_multiple_of(x) {
        return (1, 0, (n - (y / x) % n) % n, 1);
    }
    let ni = n as i128;
    let (g, s, t) = ext_gcd(x as i128, y as i128);
    (
        s.rem_euclid(ni) as u64,
        t.rem_euclid(ni) as u64,
        ((-(y as i128) / g).rem_euclid(ni)) as u64,
        (((x as i128) / g).rem_euclid(ni)) as u64,
    )
}

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    a * b % n
}

#[inline]
pub(crate) fn submod(a: u64, b: u64, n: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + n - b
    }
}

/// Dense matrix over `Z/N` with entries in `[0, N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(modulus: u64, rows: usize, cols: usize) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(ModMatrix {
            modulus,
            rows,
            cols,
            data: vec![0; rows * cols],
        })
    }

    pub fn identity(modulus: u64, n: usize) -> Result<Self> {
        let mut m = Self::zeros(modulus, n, n)?;
        for i in 0..n {
            m.data[i * n + i] = 1 % modulus;
        }
        Ok(m)
    }

    /// Builds a matrix from signed rows, reducing entries.
    pub fn from_rows(modulus: u64, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        check_modulus(modulus)?;
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r.iter().map(|&x| x.rem_euclid(modulus as i64) as u64));
        }
        Ok(ModMatrix {
            modulus,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub(crate) fn from_residue_rows(modulus: u64, cols: usize, rows: Vec<Vec<u64>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            debug_assert_eq!(r.len(), cols);
            data.extend(r);
        }
        ModMatrix {
            modulus,
            rows: n,
            cols,
            data,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, x: &[u64]) -> Result<Vec<u64>> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        let n = self.modulus;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| (acc + mulmod(a, b % n, n)) % n)
            })
            .collect())
    }
}

fn check_modulus(n: u64) -> Result<()> {
    if n == 0 || n > MAX_MODULUS {
        return Err(Error::Validation(format!(
            "modulus {n} outside [1, {MAX_MODULUS}]"
        )));
    }
    Ok(())
}

/// Howell form of the row span of `m`.
pub fn howell_form(m: &ModMatrix) -> ModMatrix {
    let rows = howell_rows(m.to_rows(), m.cols, m.modulus);
    ModMatrix::from_residue_rows(m.modulus, m.cols, rows)
}

/// Howell form of the span of `rows` (vectors of length `cols` mod `n`).
pub fn howell_rows(mut rows: Vec<Vec<u64>>, cols: usize, n: u64) -> Vec<Vec<u64>> {
    if n == 1 {
        return Vec::new();
    }
    rows.retain(|r| r.iter().any(|&x| x != 0));
    let mut r = 0;
    for j in 0..cols {
        let Some(first) = (r..rows.len()).find(|&i| rows[i][j] != 0) else {
            continue;
        };
        rows.swap(r, first);
        for i in r + 1..rows.len() {
            let b = rows[i][j];
            if b == 0 {
                continue;
            }
            let (s, t, u, v) = elim(rows[r][j], b, n);
            let (top, rest) = rows.split_at_mut(i);
            let pr = &mut top[r];
            let qr = &mut rest[0];
            for c in j..cols {
                let x = pr[c];
                let y = qr[c];
                if x == 0 && y == 0 {
                    continue;
                }
                pr[c] = (mulmod(s, x, n) + mulmod(t, y, n)) % n;
                qr[c] = (mulmod(u, x, n) + mulmod(v, y, n)) % n;
            }
        }
        let a = rows[r][j];
        let unit = normalizing_unit(a, n);
        if unit != 1 {
            for c in j..cols {
                rows[r][c] = mulmod(rows[r][c], unit, n);
            }
        }
        let p = rows[r][j];
        // annihilator row: (n/p) * pivot row vanishes in column j
        let ann = n / p;
        if ann != n {
            let extra: Vec<u64> = rows[r].iter().map(|&x| mulmod(x, ann, n)).collect();
            if extra.iter().any(|&x| x != 0) {
                rows.push(extra);
            }
        }
        for i in 0..r {
            let q = rows[i][j] / p;
            if q == 0 {
                continue;
            }
            let (top, rest) = rows.split_at_mut(r);
            let pr = &rest[0];
            let tr = &mut top[i];
            for c in j..cols {
                tr[c] = submod(tr[c], mulmod(q, pr[c], n), n);
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows.retain(|row| row.iter().any(|&x| x != 0));
    rows
}

fn pivot_of(row: &[u64]) -> Option<usize> {
    row.iter().position(|&x| x != 0)
}

/// Greedy reduction against a Howell basis. Returns `(coefficients, remainder)`;
/// the remainder is zero exactly when `x` lies in the span.
pub fn reduce_by_howell(basis: &[Vec<u64>], x: &[u64], n: u64) -> (Vec<u64>, Vec<u64>) {
    let mut rem: Vec<u64> = x.iter().map(|&v| v % n).collect();
    let mut coeffs = vec![0u64; basis.len()];
    for (k, row) in basis.iter().enumerate() {
        let Some(j) = pivot_of(row) else { continue };
        let p = row[j];
        let q = rem[j] / p;
        if q == 0 {
            continue;
        }
        for c in j..rem.len() {
            rem[c] = submod(rem[c], mulmod(q, row[c], n), n);
        }
        coeffs[k] = q;
    }
    (coeffs, rem)
}

/// Incremental row-span accumulator over `Z/N`.
///
/// Rows already in the span are discarded cheaply; the rest are batched and
/// merged into the Howell basis.
pub struct SpanBuilder {
    n: u64,
    cols: usize,
    basis: Vec<Vec<u64>>,
    pending: Vec<Vec<u64>>,
    batch: usize,
}

impl SpanBuilder {
    pub fn new(n: u64, cols: usize) -> Self {
        SpanBuilder {
            n,
            cols,
            basis: Vec::new(),
            pending: Vec::new(),
            batch: 48,
        }
    }

    pub fn push(&mut self, row: Vec<u64>) {
        debug_assert_eq!(row.len(), self.cols);
        let (_, rem) = reduce_by_howell(&self.basis, &row, self.n);
        if rem.iter().all(|&x| x == 0) {
            return;
        }
        self.pending.push(rem);
        if self.pending.len() >= self.batch {
            self.flush();
        }
    }

    fn flush(&mut self) {
        if self.pending.is_empty() {
            return;
        }
        let mut all = std::mem::take(&mut self.basis);
        all.append(&mut self.pending);
        self.basis = howell_rows(all, self.cols, self.n);
    }

    pub fn finish(mut self) -> Vec<Vec<u64>> {
        self.flush();
        self.basis
    }
}

/// Howell basis of `{x : m x = 0}` where `m` is given by constraint rows.
pub fn kernel_rows(constraints: &[Vec<u64>], cols: usize, n: u64) -> Vec<Vec<u64>> {
    let h = howell_rows(constraints.to_vec(), cols, n);
    kernel_of_howell(&h, cols, n)
}

pub(crate) fn kernel_of_howell(h: &[Vec<u64>], cols: usize, n: u64) -> Vec<Vec<u64>> {
    let q = h.len();
    let aug: Vec<Vec<u64>> = (0..cols)
        .map(|i| {
            let mut row: Vec<u64> = h.iter().map(|r| r[i]).collect();
            row.extend((0..cols).map(|c| u64::from(c == i) % n));
            row
        })
        .collect();
    let hf = howell_rows(aug, q + cols, n);
    hf.into_iter()
        .filter(|r| r[..q].iter().all(|&x| x == 0))
        .map(|r| r[q..].to_vec())
        .collect()
}

/// Kernel of a matrix as a Howell basis.
pub fn kernel(m: &ModMatrix) -> Vec<Vec<u64>> {
    kernel_rows(&m.to_rows(), m.cols, m.modulus)
}

/// Canonical solution of `m x = b` over `Z/N`, or `None`.
///
/// The returned solution is reduced against the Howell basis of the kernel,
/// which gives the smallest representative coordinate by coordinate.
pub fn solve(m: &ModMatrix, b: &[u64]) -> Result<Option<Vec<u64>>> {
    let n = m.modulus;
    let (q, p) = (m.rows, m.cols);
    if b.len() != q {
        return Err(Error::Dimension(format!(
            "right-hand side has length {}, matrix has {q} rows",
            b.len()
        )));
    }
    let aug: Vec<Vec<u64>> = (0..p)
        .map(|i| {
            let mut row: Vec<u64> = (0..q).map(|r| m.get(r, i)).collect();
            row.extend((0..p).map(|c| u64::from(c == i) % n));
            row
        })
        .collect();
    let h = howell_rows(aug, q + p, n);
    let mut target: Vec<u64> = b.iter().map(|&x| x % n).collect();
    target.extend(std::iter::repeat_n(0, p));
    let (_, rem) = reduce_by_howell(&h, &target, n);
    if rem[..q].iter().any(|&x| x != 0) {
        return Ok(None);
    }
    let x: Vec<u64> = rem[q..].iter().map(|&v| (n - v) % n).collect();
    let ker: Vec<Vec<u64>> = h
        .into_iter()
        .filter(|r| r[..q].iter().all(|&v| v == 0))
        .map(|r| r[q..].to_vec())
        .collect();
    let (_, red) = reduce_by_howell(&ker, &x, n);
    Ok(Some(red))
}

/// Smith form over `Z/N`: diagonal entries dividing `N` (zero read as `N`)
/// together with the column transform and its inverse.
pub(crate) struct ModSnf {
    pub diag: Vec<u64>,
    pub v: Vec<Vec<u64>>,
    pub v_inv: Vec<Vec<u64>>,
}

/// Smith form of the row module spanned by `a` inside `(Z/N)^m`.
pub(crate) fn mod_snf(mut a: Vec<Vec<u64>>, m: usize, n: u64) -> ModSnf {
    let mut v: Vec<Vec<u64>> = (0..m).map(|i| (0..m).map(|j| u64::from(i == j) % n).collect()).collect();
    let mut v_inv = v.clone();
    a.retain(|r| r.iter().any(|&x| x != 0));
    let rows = a.len();
    let mut diag = Vec::new();
    let col_op = |a: &mut Vec<Vec<u64>>,
                  v: &mut Vec<Vec<u64>>,
                  v_inv: &mut Vec<Vec<u64>>,
                  j: usize,
                  k: usize,
                  x: u64,
                  y: u64| {
        // columns (j, k) <- (s*cj + t*ck, u*cj + w*ck) with det 1
        let (s, t, u, w) = elim(x, y, n);
        for row in a.iter_mut().chain(v.iter_mut()) {
            let (p, q) = (row[j], row[k]);
            row[j] = (mulmod(s, p, n) + mulmod(t, q, n)) % n;
            row[k] = (mulmod(u, p, n) + mulmod(w, q, n)) % n;
        }
        // inverse acts on rows j, k of v_inv: [[w, -u], [-t, s]]
        let (rj, rk) = (v_inv[j].clone(), v_inv[k].clone());
        let mt = (n - t) % n;
        let mu = (n - u) % n;
        for c in 0..rj.len() {
            v_inv[j][c] = (mulmod(w, rj[c], n) + mulmod(mu, rk[c], n)) % n;
            v_inv[k][c] = (mulmod(mt, rj[c], n) + mulmod(s, rk[c], n)) % n;
        }
    };
    let mut t = 0;
    while t < rows.min(m) {
        // pivot: entry with the smallest gcd against n, first in row-major order
        let mut best: Option<(usize, usize, u64)> = None;
        for i in t..rows {
            for j in t..m {
                if a[i][j] == 0 {
                    continue;
                }
                let g = gcd(a[i][j], n);
                if best.is_none_or(|(_, _, bg)| g < bg) {
                    best = Some((i, j, g));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut().chain(v.iter_mut()) {
                row.swap(t, pj);
            }
            v_inv.swap(t, pj);
        }
        loop {
            for i in t + 1..rows {
                let y = a[i][t];
                if y == 0 {
                    continue;
                }
                let (s, tt, u, w) = elim(a[t][t], y, n);
                let (top, rest) = a.split_at_mut(i);
                let (pr, qr) = (&mut top[t], &mut rest[0]);
                for c in t..m {
                    let (p, q) = (pr[c], qr[c]);
                    pr[c] = (mulmod(s, p, n) + mulmod(tt, q, n)) % n;
                    qr[c] = (mulmod(u, p, n) + mulmod(w, q, n)) % n;
                }
            }
            if (t + 1..m).all(|j| a[t][j] == 0) {
                break;
            }
            for j in t + 1..m {
                let y = a[t][j];
                if y == 0 {
                    continue;
                }
                let x = a[t][t];
                col_op(&mut a, &mut v, &mut v_inv, t, j, x, y);
            }
            if (t + 1..rows).all(|i| a[i][t] == 0) {
                break;
            }
        }
        let p = gcd(a[t][t], n);
        let bad = (t + 1..rows).find(|&i| (t + 1..m).any(|j| !a[i][j].is_multiple_of(p)));
        if let Some(i) = bad {
            let (top, rest) = a.split_at_mut(i);
            for c in t..m {
                top[t][c] = (top[t][c] + rest[0][c]) % n;
            }
            continue;
        }
        diag.push(if p == n { n } else { p });
        t += 1;
    }
    while diag.len() < m {
        diag.push(n);
    }
    // zero pivots (p == n) can only appear once the block is exhausted
    ModSnf { diag, v, v_inv }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_its_own_howell_form() {
        let id = ModMatrix::identity(6, 3).unwrap();
        assert_eq!(howell_form(&id), id);
    }

    #[test]
    fn two_mod_four() {
        let m = ModMatrix::from_rows(4, 1, &[vec![2]]).unwrap();
        assert_eq!(howell_form(&m).to_rows(), vec![vec![2]]);
        assert!(solve(&m, &[1]).unwrap().is_none());
        assert_eq!(solve(&m, &[2]).unwrap(), Some(vec![1]));
    }

    #[test]
    fn howell_property_needs_annihilator_rows() {
        // span of (2, 1) mod 4 contains 2*(2,1) = (0, 2)
        let m = ModMatrix::from_rows(4, 2, &[vec![2, 1]]).unwrap();
        let h = howell_form(&m).to_rows();
        assert_eq!(h, vec![vec![2, 1], vec![0, 2]]);
        let (_, rem) = reduce_by_howell(&h, &[0, 2], 4);
        assert_eq!(rem, vec![0, 0]);
    }

    #[test]
    fn kernel_of_two_mod_four() {
        let m = ModMatrix::from_rows(4, 2, &[vec![2, 0]]).unwrap();
        let k = kernel(&m);
        assert_eq!(k, vec![vec![2, 0], vec![0, 1]]);
    }

    #[test]
    fn normalizing_unit_examples() {
        for n in 1..40u64 {
            for a in 0..n {
                let u = normalizing_unit(a, n);
                assert_eq!(gcd(u, n), 1, "unit for {a} mod {n}");
                if n > 1 {
                    assert_eq!(u * a % n, gcd(a, n) % n);
                }
            }
        }
    }
}
