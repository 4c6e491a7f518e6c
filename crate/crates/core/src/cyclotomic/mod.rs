//! Exact arithmetic in cyclotomic fields `Q(ζ_m) = Q[x]/Φ_m(x)`.

mod matrix;

pub use matrix::{hodge_star, r_subsets, CycloMatrix};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Largest conductor accepted anywhere.
pub const MAX_CONDUCTOR: u64 = 10_000;

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of `Φ_m`, lowest degree first.
pub fn cyclotomic_polynomial(m: u64) -> Arc<Vec<i64>> {
    if let Some(p) = cyclotomic_cache().lock().expect("cache poisoned").get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    let p = Arc::new(num);
    cyclotomic_cache()
        .lock()
        .expect("cache poisoned")
        .insert(m, p.clone());
    p
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        q[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    q
}

/// Euler's totient.
pub fn totient(m: u64) -> u64 {
    crate::linalg::abelian::factorize(m)
        .into_iter()
        .fold(1, |acc, (p, e)| acc * (p - 1) * p.pow(e - 1))
}

/// An element of `Q(ζ_m)`, stored as a polynomial in `ζ_m` of degree below
/// `φ(m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloNumber {
    m: u64,
    c: Vec<BigRational>,
}

impl CycloNumber {
    fn check_conductor(m: u64) -> Result<()> {
        if m == 0 || m > MAX_CONDUCTOR {
            return Err(Error::Validation(format!(
                "conductor {m} outside [1, {MAX_CONDUCTOR}]"
            )));
        }
        Ok(())
    }

    pub fn zero(m: u64) -> Self {
        CycloNumber {
            m,
            c: vec![BigRational::zero(); totient(m) as usize],
        }
    }

    pub fn one(m: u64) -> Self {
        Self::from_rational(m, BigRational::one())
    }

    pub fn from_int(m: u64, v: i64) -> Self {
        Self::from_rational(m, BigRational::from_integer(v.into()))
    }

    pub fn from_rational(m: u64, v: BigRational) -> Self {
        let mut z = Self::zero(m);
        z.c[0] = v;
        z
    }

    /// `ζ_m^k`.
    pub fn zeta(m: u64, k: i64) -> Self {
        let k = k.rem_euclid(m as i64) as usize;
        let mut poly = vec![BigRational::zero(); k + 1];
        poly[k] = BigRational::one();
        Self::from_poly(m, poly)
    }

    /// Reduces an arbitrary polynomial in `ζ_m`.
    pub fn from_poly(m: u64, mut poly: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(m);
        let d = phi.len() - 1;
        while poly.len() > d {
            let top = poly.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let k = poly.len() - d;
            for (i, &p) in phi[..d].iter().enumerate() {
                if p != 0 {
                    poly[k + i] -= &top * BigRational::from_integer(p.into());
                }
            }
        }
        poly.resize(d, BigRational::zero());
        CycloNumber { m, c: poly }
    }

    /// Parses `(conductor, [[num, den], ...])` with validation.
    pub fn from_fraction_pairs(m: u64, pairs: &[(i64, i64)]) -> Result<Self> {
        Self::check_conductor(m)?;
        let mut poly = Vec::with_capacity(pairs.len());
        for &(n, d) in pairs {
            if d == 0 {
                return Err(Error::DivisionByZero);
            }
            poly.push(BigRational::new(n.into(), d.into()));
        }
        Ok(Self::from_poly(m, poly))
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c.first().is_some_and(One::is_one) && self.c[1..].iter().all(Zero::is_zero)
    }

    /// The same number at conductor `l`, a multiple of the current one.
    pub fn promote(&self, l: u64) -> Result<Self> {
        if !l.is_multiple_of(self.m) {
            return Err(Error::Validation(format!(
                "cannot promote conductor {} to {l}",
                self.m
            )));
        }
        if l == self.m {
            return Ok(self.clone());
        }
        Self::check_conductor(l)?;
        let step = (l / self.m) as usize;
        let mut poly = vec![BigRational::zero(); (self.c.len().max(1) - 1) * step + 1];
        for (i, a) in self.c.iter().enumerate() {
            poly[i * step] = a.clone();
        }
        Ok(Self::from_poly(l, poly))
    }

    /// Brings two numbers to their common conductor.
    pub fn align(a: &Self, b: &Self) -> Result<(Self, Self)> {
        if a.m == b.m {
            return Ok((a.clone(), b.clone()));
        }
        let l = a.m.lcm(&b.m);
        Ok((a.promote(l)?, b.promote(l)?))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let (a, b) = Self::align(self, o)?;
        Ok(a.add_same(&b))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        let (a, b) = Self::align(self, o)?;
        Ok(a.add_same(&b.neg()))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let (a, b) = Self::align(self, o)?;
        Ok(a.mul_same(&b))
    }

    pub(crate) fn add_same(&self, o: &Self) -> Self {
        debug_assert_eq!(self.m, o.m);
        CycloNumber {
            m: self.m,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub(crate) fn sub_same(&self, o: &Self) -> Self {
        self.add_same(&o.neg())
    }

    pub(crate) fn mul_same(&self, o: &Self) -> Self {
        debug_assert_eq!(self.m, o.m);
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.m);
        }
        let n = self.c.len();
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::from_poly(self.m, prod)
    }

    pub fn neg(&self) -> Self {
        CycloNumber {
            m: self.m,
            c: self.c.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloNumber {
            m: self.m,
            c: self.c.iter().map(|a| a * q).collect(),
        }
    }

    /// Multiplicative inverse, by solving `self * y = 1` over `Q`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.c.len();
        // column j of the multiplication matrix is self * ζ^j
        let cols: Vec<Vec<BigRational>> = (0..n)
            .map(|j| self.mul_same(&Self::zeta(self.m, j as i64)).c)
            .collect();
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..n).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        let sol = solve_rational(&mut a, n).ok_or(Error::DivisionByZero)?;
        Ok(CycloNumber { m: self.m, c: sol })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.mul(&o.inv()?)
    }

    /// `self^k`, with negative exponents through the inverse.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.m);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&b);
            }
            b = b.mul_same(&b);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicative order if this is a root of unity. Every torsion unit
    /// of `Q(ζ_m)` has order dividing `lcm(2, m)`.
    pub fn is_root_of_unity(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let l = self.m.lcm(&2);
        let mut divisors: Vec<u64> = (1..=l).filter(|t| l.is_multiple_of(*t)).collect();
        divisors.sort_unstable();
        let full = self.pow(l as i64).ok()?;
        if !full.is_one() {
            return None;
        }
        divisors
            .into_iter()
            .find(|&t| self.pow(t as i64).is_ok_and(|p| p.is_one()))
    }

    /// Rational value if the number lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.c[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.c[0].clone())
    }

    /// Wire form `{"m": m, "c": [[num, den], ...]}`. Integers that do not
    /// fit in an `i64` are written as decimal strings.
    pub fn to_json(&self) -> Value {
        let num = |x: &BigInt| match x.to_i64() {
            Some(v) => Value::from(v),
            None => Value::from(x.to_string()),
        };
        json!({
            "m": self.m,
            "c": self.c.iter().map(|q| json!([num(q.numer()), num(q.denom())])).collect::<Vec<_>>(),
        })
    }

    /// Parses the wire form; a bare integer is read as a rational constant
    /// at conductor 1.
    pub fn from_json(v: &Value) -> Result<Self> {
        if let Some(i) = v.as_i64() {
            return Ok(Self::from_int(1, i));
        }
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse(format!("expected a cyclotomic number, got {v}")))?;
        let m = obj
            .get("m")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("cyclotomic number needs a conductor \"m\"".into()))?;
        Self::check_conductor(m)?;
        let coeffs = obj
            .get("c")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("cyclotomic number needs coefficients \"c\"".into()))?;
        let mut poly = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            let pair = c
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Parse(format!("coefficient {c} is not [num, den]")))?;
            let n = parse_bigint(&pair[0])?;
            let d = parse_bigint(&pair[1])?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            poly.push(BigRational::new(n, d));
        }
        Ok(Self::from_poly(m, poly))
    }
}

fn parse_bigint(v: &Value) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(i.into());
    }
    v.as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad integer {v}")))
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let coef = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("({a})")
            };
            terms.push(match i {
                0 => coef,
                _ => {
                    let z = if i == 1 {
                        format!("z{}", self.m)
                    } else {
                        format!("z{}^{i}", self.m)
                    };
                    if a.is_one() {
                        z
                    } else if (-a).is_one() {
                        format!("-{z}")
                    } else {
                        format!("{coef}*{z}")
                    }
                }
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

/// Gauss-Jordan on an augmented `n x (n+1)` system; `None` if singular.
pub(crate) fn solve_rational(a: &mut [Vec<BigRational>], n: usize) -> Option<Vec<BigRational>> {
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            let pivot_row = a[col].clone();
            for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
    }
    Some(a.iter().map(|row| row[n].clone()).collect())
}

/// `n / d` as a big rational.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(12), 4);
    }

    #[test]
    fn spec_arithmetic_examples() {
        let i = CycloNumber::zeta(4, 1);
        assert_eq!(i.mul(&i).unwrap(), CycloNumber::from_int(4, -1));
        let z8 = CycloNumber::zeta(8, 1);
        assert_eq!(z8.inv().unwrap(), CycloNumber::zeta(8, 7));
        let a = CycloNumber::one(3).add(&CycloNumber::zeta(3, 1)).unwrap();
        assert!(a.add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(CycloNumber::one(5).is_root_of_unity(), Some(1));
        assert_eq!(CycloNumber::zeta(8, 3).is_root_of_unity(), Some(8));
        let x = CycloNumber::one(4).add(&CycloNumber::zeta(4, 1)).unwrap();
        assert_eq!(x.is_root_of_unity(), None);
        // -ζ_3 has order 6 inside Q(ζ_3)
        assert_eq!(CycloNumber::zeta(3, 1).neg().is_root_of_unity(), Some(6));
    }

    #[test]
    fn promotion_preserves_values() {
        let z3 = CycloNumber::zeta(3, 1);
        let p = z3.promote(12).unwrap();
        assert_eq!(p, CycloNumber::zeta(12, 4));
        assert_eq!(z3.mul(&CycloNumber::zeta(4, 1)).unwrap(), CycloNumber::zeta(12, 7));
    }

    #[test]
    fn json_round_trip() {
        let x = CycloNumber::from_fraction_pairs(5, &[(1, 2), (0, 1), (-3, 4)]).unwrap();
        let j = x.to_json();
        assert_eq!(j.to_string(), r#"{"c":[[1,2],[0,1],[-3,4],[0,1]],"m":5}"#);
        assert_eq!(CycloNumber::from_json(&j).unwrap(), x);
    }
}
