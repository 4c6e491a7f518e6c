use num_integer::Integer;
use serde_json::Value;

use super::CycloNumber;
use crate::error::{Error, Result};

/// A matrix over `Q(ζ_m)`; every entry carries the same conductor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloMatrix {
    m: u64,
    rows: usize,
    cols: usize,
    data: Vec<CycloNumber>,
}

impl CycloMatrix {
    pub fn zeros(m: u64, rows: usize, cols: usize) -> Self {
        CycloMatrix {
            m,
            rows,
            cols,
            data: vec![CycloNumber::zero(m); rows * cols],
        }
    }

    pub fn identity(m: u64, n: usize) -> Self {
        let mut a = Self::zeros(m, n, n);
        for i in 0..n {
            a.data[i * n + i] = CycloNumber::one(m);
        }
        a
    }

    /// Builds a matrix from rows of numbers of possibly different
    /// conductors, promoting everything to their lcm.
    pub fn from_rows(rows: Vec<Vec<CycloNumber>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        let m = rows.iter().flatten().fold(1u64, |acc, x| acc.lcm(&x.conductor()));
        let data = rows
            .into_iter()
            .flatten()
            .map(|x| x.promote(m))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycloMatrix {
            m,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_int_rows(m: u64, rows: &[Vec<i64>]) -> Result<Self> {
        let num: Vec<Vec<CycloNumber>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| CycloNumber::from_int(m, v)).collect())
            .collect();
        let mut a = Self::from_rows(num)?;
        a = a.promote(m)?;
        Ok(a)
    }

    pub fn diagonal(entries: Vec<CycloNumber>) -> Result<Self> {
        let n = entries.len();
        let m = entries.iter().fold(1u64, |acc, x| acc.lcm(&x.conductor()));
        let mut a = Self::zeros(m, n, n);
        for (i, e) in entries.into_iter().enumerate() {
            a.data[i * n + i] = e.promote(m)?;
        }
        Ok(a)
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNumber {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycloNumber) -> Result<()> {
        self.data[i * self.cols + j] = v.promote(self.m)?;
        Ok(())
    }

    pub fn promote(&self, l: u64) -> Result<Self> {
        if l == self.m {
            return Ok(self.clone());
        }
        Ok(CycloMatrix {
            m: l,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.promote(l)).collect::<Result<_>>()?,
        })
    }

    fn aligned(&self, o: &Self) -> Result<(Self, Self)> {
        let l = self.m.lcm(&o.m);
        Ok((self.promote(l)?, o.promote(l)?))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let (a, b) = self.aligned(o)?;
        let mut out = Self::zeros(a.m, a.rows, b.cols);
        for i in 0..a.rows {
            for k in 0..a.cols {
                let x = a.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..b.cols {
                    let y = b.get(k, j);
                    if !y.is_zero() {
                        let idx = i * b.cols + j;
                        out.data[idx] = out.data[idx].add_same(&x.mul_same(y));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &CycloNumber) -> Result<Self> {
        let l = self.m.lcm(&s.conductor());
        let a = self.promote(l)?;
        let s = s.promote(l)?;
        Ok(CycloMatrix {
            data: a.data.iter().map(|x| x.mul_same(&s)).collect(),
            ..a
        })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.m, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<CycloNumber>> = (0..n)
            .map(|i| {
                let mut r: Vec<CycloNumber> = (0..n).map(|j| self.get(i, j).clone()).collect();
                r.extend((0..n).map(|j| {
                    if i == j {
                        CycloNumber::one(self.m)
                    } else {
                        CycloNumber::zero(self.m)
                    }
                }));
                r
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::Singular)?;
            a.swap(col, piv);
            let p = a[col][col].inv()?;
            for x in a[col].iter_mut() {
                *x = x.mul_same(&p);
            }
            let prow = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    if !y.is_zero() {
                        *x = x.sub_same(&f.mul_same(y));
                    }
                }
            }
        }
        let data = a.into_iter().flat_map(|r| r.into_iter().skip(n)).collect();
        Ok(CycloMatrix {
            m: self.m,
            rows: n,
            cols: n,
            data,
        })
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn det(&self) -> Result<CycloNumber> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<CycloNumber>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut det = CycloNumber::one(self.m);
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(CycloNumber::zero(self.m));
            };
            if piv != col {
                a.swap(col, piv);
                det = det.neg();
            }
            let p = a[col][col].clone();
            det = det.mul_same(&p);
            let pinv = p.inv()?;
            let prow = a[col].clone();
            for row in a.iter_mut().skip(col + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let f = row[col].mul_same(&pinv);
                for (x, y) in row.iter_mut().zip(&prow).skip(col) {
                    if !y.is_zero() {
                        *x = x.sub_same(&f.mul_same(y));
                    }
                }
            }
        }
        Ok(det)
    }

    /// Matrix of `r x r` minors on lexicographically ordered `r`-subsets.
    pub fn exterior_power(&self, r: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("exterior power of a non-square matrix".into()));
        }
        let n = self.rows;
        if r == 0 || r > n {
            return Err(Error::Dimension(format!("exterior power {r} of a {n}x{n} matrix")));
        }
        let subsets = r_subsets(n, r);
        let k = subsets.len();
        let mut out = Self::zeros(self.m, k, k);
        for (i, rows) in subsets.iter().enumerate() {
            for (j, cols) in subsets.iter().enumerate() {
                let minor = CycloMatrix {
                    m: self.m,
                    rows: r,
                    cols: r,
                    data: rows
                        .iter()
                        .flat_map(|&a| cols.iter().map(move |&b| (a, b)))
                        .map(|(a, b)| self.get(a, b).clone())
                        .collect(),
                };
                out.data[i * k + j] = minor.det()?;
            }
        }
        Ok(out)
    }

    /// `λ` with `self = λ · other`, if it exists.
    pub fn scalar_ratio(&self, other: &Self) -> Result<Option<CycloNumber>> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("scalar ratio of differently shaped matrices".into()));
        }
        let (a, b) = self.aligned(other)?;
        let Some(pos) = b.data.iter().position(|x| !x.is_zero()) else {
            return Ok(a.data.iter().all(CycloNumber::is_zero).then(|| CycloNumber::zero(a.m)));
        };
        let lambda = a.data[pos].mul_same(&b.data[pos].inv()?);
        for (x, y) in a.data.iter().zip(&b.data) {
            if *x != lambda.mul_same(y) {
                return Ok(None);
            }
        }
        Ok(Some(lambda))
    }

    /// `λ` with `self = λ · I`, if it exists.
    pub fn as_scalar(&self) -> Option<CycloNumber> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let l = self.get(0, 0).clone();
        for i in 0..n {
            for j in 0..n {
                let x = self.get(i, j);
                if (i == j && *x != l) || (i != j && !x.is_zero()) {
                    return None;
                }
            }
        }
        Some(l)
    }

    /// Applies the matrix to a column vector.
    pub fn mul_vec(&self, v: &[CycloNumber]) -> Result<Vec<CycloNumber>> {
        let col = CycloMatrix::from_rows(v.iter().map(|x| vec![x.clone()]).collect())?;
        let r = self.mul(&col)?;
        Ok(r.data)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| Value::Array((0..self.cols).map(|j| self.get(i, j).to_json()).collect()))
                .collect(),
        )
    }

    /// Nested arrays of numbers (objects or bare integers).
    pub fn from_json(v: &Value) -> Result<Self> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
        let parsed = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                    .iter()
                    .map(CycloNumber::from_json)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed)
    }
}

/// All `r`-subsets of `{0..n-1}` in lexicographic order.
pub fn r_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut cur, &mut out);
    out
}

/// Hodge star from `r`-subsets to `(n-r)`-subsets: `e_S ↦ sign(S, S^c) e_{S^c}`,
/// as a `C(n, n-r) x C(n, r)` integer matrix acting on column vectors.
pub fn hodge_star(n: usize, r: usize) -> Result<Vec<Vec<i64>>> {
    if r > n {
        return Err(Error::Dimension(format!("hodge star with r = {r} > n = {n}")));
    }
    let src = r_subsets(n, r);
    let dst = r_subsets(n, n - r);
    let mut out = vec![vec![0i64; src.len()]; dst.len()];
    for (j, s) in src.iter().enumerate() {
        let comp: Vec<usize> = (0..n).filter(|x| !s.contains(x)).collect();
        let i = dst
            .iter()
            .position(|d| *d == comp)
            .expect("complement is an (n-r)-subset");
        // sign of the shuffle (S, S^c): count inversions
        let inversions: usize = s.iter().map(|&a| comp.iter().filter(|&&b| b < a).count()).sum();
        out[i][j] = if inversions.is_multiple_of(2) { 1 } else { -1 };
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u64, k: i64) -> CycloNumber {
        CycloNumber::zeta(m, k)
    }

    #[test]
    fn inverse_examples() {
        let id = CycloMatrix::identity(1, 3);
        assert_eq!(id.inverse().unwrap(), id);
        let d = CycloMatrix::diagonal(vec![z(3, 1), z(3, 2)]).unwrap();
        let di = CycloMatrix::diagonal(vec![z(3, 2), z(3, 1)]).unwrap();
        assert_eq!(d.inverse().unwrap(), di);
        let s = CycloMatrix::from_int_rows(1, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(s.inverse().unwrap(), s);
        let sing = CycloMatrix::from_int_rows(1, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(sing.inverse().unwrap_err(), Error::Singular);
    }

    #[test]
    fn exterior_power_examples() {
        let a = CycloNumber::from_int(1, 2);
        let b = CycloNumber::from_int(1, 3);
        let c = CycloNumber::from_int(1, 5);
        let d = CycloMatrix::diagonal(vec![a, b, c]).unwrap();
        assert_eq!(d.exterior_power(1).unwrap(), d);
        let e2 = d.exterior_power(2).unwrap();
        let want = CycloMatrix::from_int_rows(1, &[vec![6, 0, 0], vec![0, 10, 0], vec![0, 0, 15]]).unwrap();
        assert_eq!(e2, want);
        let top = d.exterior_power(3).unwrap();
        assert_eq!(*top.get(0, 0), CycloNumber::from_int(1, 30));
        assert!(d.exterior_power(4).is_err());
    }

    #[test]
    fn hodge_star_examples() {
        assert_eq!(hodge_star(2, 1).unwrap(), vec![vec![0, -1], vec![1, 0]]);
        let s = hodge_star(4, 2).unwrap();
        // e_{01} -> +e_{23}
        assert_eq!(s[5][0], 1);
        for (n, r) in [(4, 2), (5, 2), (3, 1), (6, 3)] {
            let a = hodge_star(n, r).unwrap();
            let b = hodge_star(n, n - r).unwrap();
            let sign = if (r * (n - r)) % 2 == 0 { 1 } else { -1 };
            for i in 0..a[0].len() {
                for j in 0..a[0].len() {
                    let v: i64 = (0..a.len()).map(|k| b[i][k] * a[k][j]).sum();
                    assert_eq!(v, if i == j { sign } else { 0 });
                }
            }
        }
    }

    #[test]
    fn scalar_ratio_detects_multiples() {
        let a = CycloMatrix::from_int_rows(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        let b = a.scale(&z(4, 1)).unwrap();
        assert_eq!(b.scalar_ratio(&a).unwrap(), Some(z(4, 1)));
        let c = CycloMatrix::identity(4, 2);
        assert_eq!(c.scalar_ratio(&a).unwrap(), None);
    }
}
