use serde::{Deserialize, Serialize};

use super::module::{GModule, ModuleKind};
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;

/// An inhomogeneous cochain of degree 1 or 2 stored as a full table.
///
/// Degree 2 values live at `((g * order) + h) * k + i`, degree 1 values at
/// `g * k + i`. With `modulus = Some(n)` values are residues mod `n`; for
/// `Q/Z` coefficients a value `a` stands for `a/n`. Lattice cochains have
/// `modulus = None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cochain {
    pub degree: usize,
    pub order: usize,
    pub k: usize,
    pub modulus: Option<u64>,
    pub values: Vec<i64>,
}

/// Degree-2 cochains are the common case.
pub type Cochain2 = Cochain;

impl Cochain {
    pub fn zero(degree: usize, order: usize, k: usize, modulus: Option<u64>) -> Self {
        let len = order.pow(degree as u32) * k;
        Cochain {
            degree,
            order,
            k,
            modulus,
            values: vec![0; len],
        }
    }

    /// A `Q/Z`-valued 2-cochain from a table of residues mod `n`.
    pub fn from_qz_table(order: usize, n: u64, table: &[Vec<u64>]) -> Result<Self> {
        if table.len() != order || table.iter().any(|r| r.len() != order) {
            return Err(Error::Dimension(format!("cochain table must be {order}x{order}")));
        }
        Ok(Cochain {
            degree: 2,
            order,
            k: 1,
            modulus: Some(n),
            values: table.iter().flatten().map(|&a| (a % n) as i64).collect(),
        })
    }

    pub fn value2(&self, g: usize, h: usize) -> &[i64] {
        let at = (g * self.order + h) * self.k;
        &self.values[at..at + self.k]
    }

    pub fn value1(&self, g: usize) -> &[i64] {
        &self.values[g * self.k..(g + 1) * self.k]
    }

    /// Vanishes whenever an argument is the identity.
    pub fn is_normalized(&self) -> bool {
        match self.degree {
            1 => self.value1(0).iter().all(|&a| self.reduce(a) == 0),
            _ => (0..self.order).all(|x| {
                self.value2(0, x).iter().chain(self.value2(x, 0)).all(|&a| self.reduce(a) == 0)
            }),
        }
    }

    fn reduce(&self, a: i64) -> i64 {
        match self.modulus {
            Some(n) => a.rem_euclid(n as i64),
            None => a,
        }
    }

    fn check_same_shape(&self, other: &Cochain) -> Result<()> {
        if self.degree != other.degree
            || self.order != other.order
            || self.k != other.k
            || self.modulus != other.modulus
        {
            return Err(Error::Dimension("cochains of different shapes".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_same_shape(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| self.reduce(a + b))
            .collect();
        Ok(Cochain {
            values,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: i64) -> Cochain {
        let values = self.values.iter().map(|&a| self.reduce(a * c)).collect();
        Cochain {
            values,
            ..self.clone()
        }
    }

    /// The same `Q/Z` values written with denominator `m`, a multiple of the
    /// current modulus.
    pub fn with_modulus(&self, m: u64) -> Result<Cochain> {
        let n = self
            .modulus
            .ok_or_else(|| Error::Validation("integral cochain has no modulus".into()))?;
        if !m.is_multiple_of(n) {
            return Err(Error::Validation(format!("modulus {m} is not a multiple of {n}")));
        }
        let f = (m / n) as i64;
        Ok(Cochain {
            modulus: Some(m),
            values: self.values.iter().map(|&a| a.rem_euclid(n as i64) * f).collect(),
            ..self.clone()
        })
    }

    /// Exhaustive check of the cocycle identity for a degree-2 cochain.
    pub fn check_cocycle(&self, g: &FiniteGroup, m: &GModule) -> Result<()> {
        m.check_group(g)?;
        if self.degree != 2 || self.order != g.order() || self.k != m.rank() {
            return Err(Error::Dimension("cochain does not match group and module".into()));
        }
        let k = self.k;
        let modulus: Vec<Option<i128>> = match m.kind() {
            ModuleKind::TrivialQZ => vec![self.modulus.map(i128::from)],
            ModuleKind::Finite(f) => f.iter().map(|&d| Some(d as i128)).collect(),
            ModuleKind::Lattice(_) => vec![None; k],
        };
        let n = g.order();
        for a in 0..n {
            let rho = m.action(a);
            for b in 0..n {
                let ab = g.mul(a, b);
                for c in 0..n {
                    let bc = g.mul(b, c);
                    let vbc = self.value2(b, c);
                    for i in 0..k {
                        let act: i128 = (0..k).map(|j| rho[i][j] as i128 * vbc[j] as i128).sum();
                        let lhs = act - self.value2(ab, c)[i] as i128 + self.value2(a, bc)[i] as i128
                            - self.value2(a, b)[i] as i128;
                        let ok = match modulus[i] {
                            Some(d) => lhs.rem_euclid(d) == 0,
                            None => lhs == 0,
                        };
                        if !ok {
                            return Err(Error::CocycleIdentity { g: a, h: b, k: c });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::cyclic;

    #[test]
    fn carry_cocycle_of_z2() {
        let g = cyclic(2).unwrap();
        let m = GModule::trivial_finite(&g, &[2]).unwrap();
        let c = Cochain {
            degree: 2,
            order: 2,
            k: 1,
            modulus: Some(2),
            values: vec![0, 0, 0, 1],
        };
        assert!(c.is_normalized());
        c.check_cocycle(&g, &m).unwrap();
    }

    #[test]
    fn non_cocycle_is_reported() {
        let g = cyclic(3).unwrap();
        let m = GModule::trivial_finite(&g, &[3]).unwrap();
        let mut c = Cochain::zero(2, 3, 1, Some(3));
        c.values[4] = 1; // c(1,1) = 1 only
        assert!(matches!(c.check_cocycle(&g, &m), Err(Error::CocycleIdentity { .. })));
    }
}
