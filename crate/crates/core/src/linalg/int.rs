//! Dense matrices over the integers with arbitrary-precision entries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(cols, rows)
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries as `i64`, failing if any entry does not fit.
    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| {
                        x.to_i64()
                            .ok_or_else(|| Error::Validation(format!("entry {x} overflows i64")))
                    })
                    .collect()
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Rows (a, b) <- (s*a + t*b, u*a + v*b).
    fn combine_rows(&mut self, a: usize, b: usize, [s, t, u, v]: &[BigInt; 4]) {
        for j in 0..self.cols {
            let x = self.data[a * self.cols + j].clone();
            let y = self.data[b * self.cols + j].clone();
            if x.is_zero() && y.is_zero() {
                continue;
            }
            self.data[a * self.cols + j] = s * &x + t * &y;
            self.data[b * self.cols + j] = u * &x + v * &y;
        }
    }

    /// Columns (a, b) <- (s*a + t*b, u*a + v*b).
    fn combine_cols(&mut self, a: usize, b: usize, [s, t, u, v]: &[BigInt; 4]) {
        for i in 0..self.rows {
            let x = self.data[i * self.cols + a].clone();
            let y = self.data[i * self.cols + b].clone();
            if x.is_zero() && y.is_zero() {
                continue;
            }
            self.data[i * self.cols + a] = s * &x + t * &y;
            self.data[i * self.cols + b] = u * &x + v * &y;
        }
    }
}

/// Unimodular 2x2 transform sending (a, b) to (gcd, 0).
fn gcd_transform(a: &BigInt, b: &BigInt) -> [BigInt; 4] {
    if b.is_zero() {
        return [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()];
    }
    if !a.is_zero() && (b % a).is_zero() {
        return [BigInt::one(), BigInt::zero(), -(b / a), BigInt::one()];
    }
    let eg = a.extended_gcd(b);
    let g = eg.gcd;
    [eg.x, eg.y, -(b / &g), a / &g]
}

/// Result of [`smith_normal_form`]: `u * m * v == d`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries in order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows.min(self.d.cols);
        (0..n)
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivots are chosen as the entry of smallest absolute value in the remaining
/// block (first in row-major order on ties).
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = d.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let tr = gcd_transform(d.get(t, t), d.get(i, t));
                d.combine_rows(t, i, &tr);
                u.combine_rows(t, i, &tr);
            }
            if (t + 1..cols).all(|j| d.get(t, j).is_zero()) {
                break;
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let tr = gcd_transform(d.get(t, t), d.get(t, j));
                d.combine_cols(t, j, &tr);
                v.combine_cols(t, j, &tr);
            }
            if (t + 1..rows).all(|i| d.get(i, t).is_zero()) {
                break;
            }
        }
        let p = d.get(t, t).clone();
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(d.get(i, j) % &p).is_zero()));
        if let Some(i) = bad {
            let one = BigInt::one();
            let tr = [one.clone(), one.clone(), BigInt::zero(), one];
            d.combine_rows(t, i, &tr);
            u.combine_rows(t, i, &tr);
            continue;
        }
        if p.is_negative() {
            for j in 0..cols {
                let x = -d.get(t, j).clone();
                d.set(t, j, x);
            }
            for j in 0..rows {
                let x = -u.get(t, j).clone();
                u.set(t, j, x);
            }
        }
        t += 1;
    }
    Snf { u, d, v }
}

/// Row Hermite normal form of the lattice spanned by `gens` (nonzero rows only).
///
/// Pivots are positive and entries above a pivot lie in `[0, pivot)`, so the
/// result is canonical for the lattice.
pub fn hermite_rows(gens: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = gens
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut r = 0;
    for j in 0..cols {
        let Some(first) = (r..rows.len()).find(|&i| !rows[i][j].is_zero()) else {
            continue;
        };
        rows.swap(r, first);
        for i in r + 1..rows.len() {
            if rows[i][j].is_zero() {
                continue;
            }
            let [s, t, u, v] = gcd_transform(&rows[r][j], &rows[i][j]);
            for c in j..cols {
                let x = rows[r][c].clone();
                let y = rows[i][c].clone();
                rows[r][c] = &s * &x + &t * &y;
                rows[i][c] = &u * &x + &v * &y;
            }
        }
        if rows[r][j].is_negative() {
            for c in j..cols {
                rows[r][c] = -rows[r][c].clone();
            }
        }
        let p = rows[r][j].clone();
        for i in 0..r {
            let q = rows[i][j].div_floor(&p);
            if q.is_zero() {
                continue;
            }
            for c in j..cols {
                let delta = &q * &rows[r][c];
                rows[i][c] -= delta;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    rows
}

/// Greedy reduction of `x` by a Hermite basis; returns the coefficients and
/// the remainder. The remainder is zero exactly when `x` is in the lattice.
pub fn reduce_by_hermite(basis: &[Vec<BigInt>], x: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut rem = x.to_vec();
    let mut coeffs = vec![BigInt::zero(); basis.len()];
    for (k, row) in basis.iter().enumerate() {
        let Some(j) = row.iter().position(|v| !v.is_zero()) else {
            continue;
        };
        let q = rem[j].div_floor(&row[j]);
        if q.is_zero() {
            continue;
        }
        for c in j..rem.len() {
            rem[c] -= &q * &row[c];
        }
        coeffs[k] = q;
    }
    (coeffs, rem)
}

/// Hermite basis of `{x : m x = 0}`.
pub fn kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (q, p) = (m.rows, m.cols);
    let aug: Vec<Vec<BigInt>> = (0..p)
        .map(|i| {
            let mut row: Vec<BigInt> = (0..q).map(|r| m.get(r, i).clone()).collect();
            row.extend((0..p).map(|c| if c == i { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let h = hermite_rows(&aug, q + p);
    let tail: Vec<Vec<BigInt>> = h
        .into_iter()
        .filter(|row| row[..q].iter().all(Zero::is_zero))
        .map(|row| row[q..].to_vec())
        .collect();
    hermite_rows(&tail, p)
}

/// Canonical integer solution of `m x = b`, or `None` if there is none.
///
/// The solution is reduced modulo the Hermite basis of the kernel.
pub fn solve(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    let (q, p) = (m.rows, m.cols);
    if b.len() != q {
        return Err(Error::Dimension(format!(
            "right-hand side has length {}, matrix has {q} rows",
            b.len()
        )));
    }
    let aug: Vec<Vec<BigInt>> = (0..p)
        .map(|i| {
            let mut row: Vec<BigInt> = (0..q).map(|r| m.get(r, i).clone()).collect();
            row.extend((0..p).map(|c| if c == i { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let h = hermite_rows(&aug, q + p);
    let mut target: Vec<BigInt> = b.to_vec();
    target.extend(std::iter::repeat_n(BigInt::zero(), p));
    let (_, rem) = reduce_by_hermite(&h, &target);
    if rem[..q].iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    let mut x: Vec<BigInt> = rem[q..].iter().map(|v| -v.clone()).collect();
    let ker = kernel(m);
    let (_, red) = reduce_by_hermite(&ker, &x);
    x = red;
    Ok(Some(x))
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn snf_of_identity() {
        let s = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(s.diagonal(), vec![b(1), b(1), b(1)]);
    }

    #[test]
    fn snf_two_by_two() {
        // gcd of entries is 2 and |det| = 8
        let m = IntMatrix::from_i64(&[vec![2, 4], vec![6, 8]]).unwrap();
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal(), vec![b(2), b(4)]);
        let prod = s.u.mul(&m).unwrap().mul(&s.v).unwrap();
        assert_eq!(prod, s.d);
    }

    #[test]
    fn snf_zero() {
        let s = smith_normal_form(&IntMatrix::zeros(2, 3));
        assert!(s.d.is_zero());
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn hermite_is_canonical() {
        let g1 = vec![to_big(&[2, 4]), to_big(&[0, 6])];
        let g2 = vec![to_big(&[2, -2]), to_big(&[2, 4]), to_big(&[4, 8])];
        assert_eq!(hermite_rows(&g1, 2), hermite_rows(&g2, 2));
    }

    #[test]
    fn kernel_and_solve() {
        let m = IntMatrix::from_i64(&[vec![1, 2, 3], vec![2, 4, 6]]).unwrap();
        let k = kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        let x = solve(&m, &to_big(&[5, 10])).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), to_big(&[5, 10]));
        assert!(solve(&m, &to_big(&[1, 1])).unwrap().is_none());
        let two = IntMatrix::from_i64(&[vec![2]]).unwrap();
        assert!(solve(&two, &to_big(&[1])).unwrap().is_none());
    }
}
