//! Integer power series truncated at a fixed order.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::IntegerRing;

/// `Σ_{i ≤ N} c_i t^i`; every operation discards terms above `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries<T> {
    coefficients: Vec<T>,
}

impl<T: IntegerRing> TruncatedSeries<T> {
    pub fn new(mut coefficients: Vec<T>, order: usize) -> Self {
        coefficients.resize(order + 1, T::zero());
        Self { coefficients }
    }

    pub fn one(order: usize) -> Self {
        let mut c = vec![T::zero(); order + 1];
        c[0] = T::one();
        Self { coefficients: c }
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    pub fn coefficient(&self, i: usize) -> T {
        self.coefficients.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![T::zero(); n + 1];
        for (i, a) in self.coefficients.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self { coefficients: out }
    }

    /// Multiplicative inverse; the constant term must be a unit (±1).
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.coefficients[0].clone();
        if !(c0.is_one() || (-c0.clone()).is_one()) {
            return Err(Error::OutOfRange(format!("constant term {c0} is not a unit")));
        }
        let n = self.order();
        let mut inv = vec![T::zero(); n + 1];
        inv[0] = c0.clone();
        for m in 1..=n {
            let mut acc = T::zero();
            for j in 1..=m {
                acc = acc + self.coefficients[j].clone() * inv[m - j].clone();
            }
            // c0 = ±1 is its own inverse
            inv[m] = -(acc * c0.clone());
        }
        Ok(Self { coefficients: inv })
    }

    /// `(1 - t^e)^{-φ} = Σ_m C(φ+m-1, m) t^{em}`.
    pub fn inverse_binomial_power(e: usize, phi: &T, order: usize) -> Self {
        assert!(e >= 1, "exponent shift must be positive");
        let mut out = vec![T::zero(); order + 1];
        let mut c = T::one();
        let mut m = 0usize;
        while e * m <= order {
            out[e * m] = c.clone();
            m += 1;
            c = c * (phi.clone() + T::from(m as i64 - 1)) / T::from(m as i64);
        }
        Self { coefficients: out }
    }

    /// `(1 - t^e)^{φ} = Σ_m (-1)^m C(φ, m) t^{em}` for `φ ≥ 0`.
    pub fn binomial_power(e: usize, phi: &T, order: usize) -> Self {
        assert!(e >= 1, "exponent shift must be positive");
        let mut out = vec![T::zero(); order + 1];
        let mut c = T::one();
        let mut m = 0usize;
        while e * m <= order && !c.is_zero() {
            out[e * m] = if m % 2 == 0 { c.clone() } else { -c.clone() };
            c = c * (phi.clone() - T::from(m as i64)) / T::from(m as i64 + 1);
            m += 1;
        }
        Self { coefficients: out }
    }

    /// `(1 - d·t^e)^{-1} = Σ_m d^m t^{em}`.
    pub fn geometric(d: &T, e: usize, order: usize) -> Self {
        assert!(e >= 1, "exponent shift must be positive");
        let mut out = vec![T::zero(); order + 1];
        let mut c = T::one();
        let mut i = 0;
        while i <= order {
            out[i] = c.clone();
            c = c * d.clone();
            i += e;
        }
        Self { coefficients: out }
    }

    pub fn is_one(&self) -> bool {
        self.coefficients[0].is_one() && self.coefficients[1..].iter().all(T::is_zero)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "variable": "t",
            "truncation": self.order(),
            "coefficients": self.coefficients.iter().map(|c| Value::String(c.to_string())).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;

    #[test]
    fn geometric_times_one_minus() {
        let g = TruncatedSeries::<i64>::geometric(&3, 2, 10);
        assert_eq!(g.coefficients(), &[1, 0, 3, 0, 9, 0, 27, 0, 81, 0, 243]);
        let f = TruncatedSeries::new(vec![1, 0, -3], 10);
        assert!(g.mul(&f).is_one());
        assert_eq!(f.reciprocal().unwrap(), g);
    }

    #[test]
    fn binomials_are_mutual_inverses() {
        for phi in 0..6i64 {
            let a = TruncatedSeries::<Int>::inverse_binomial_power(3, &Int::from(phi), 30);
            let b = TruncatedSeries::<Int>::binomial_power(3, &Int::from(phi), 30);
            assert!(a.mul(&b).is_one(), "phi = {phi}");
        }
        // (1 - t)^{-2} = Σ (m+1) t^m
        let s = TruncatedSeries::<i64>::inverse_binomial_power(1, &2, 5);
        assert_eq!(s.coefficients(), &[1, 2, 3, 4, 5, 6]);
        // (1 - t)^0 = 1
        assert!(TruncatedSeries::<i64>::inverse_binomial_power(1, &0, 5).is_one());
    }

    #[test]
    fn reciprocal_requires_unit() {
        assert!(TruncatedSeries::<i64>::new(vec![2, 1], 4).reciprocal().is_err());
        let neg = TruncatedSeries::<i64>::new(vec![-1, 1], 4);
        assert!(neg.mul(&neg.reciprocal().unwrap()).is_one());
    }

    #[test]
    fn order_zero() {
        let s = TruncatedSeries::<i64>::geometric(&5, 1, 0);
        assert_eq!(s.coefficients(), &[1]);
        assert!(s.is_one());
    }
}
