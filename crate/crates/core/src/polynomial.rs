use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

/// Dense polynomial with nonnegative integer coefficients, lowest degree
/// first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<u64>", into = "Vec<u64>")]
pub struct IntPolynomial {
    coeffs: Vec<u64>,
}

impl From<Vec<u64>> for IntPolynomial {
    fn from(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }
}

impl From<IntPolynomial> for Vec<u64> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs
    }
}

impl IntPolynomial {
    pub fn new(coeffs: impl Into<Vec<u64>>) -> Self {
        coeffs.into().into()
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![1] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `len - 1`; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * x + c)
    }

    /// `p(x) ↦ p(x^2)`.
    pub fn in_square(&self) -> Self {
        let mut coeffs = vec![0; 2 * self.degree() + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c;
        }
        coeffs.into()
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::default();
        }
        let mut coeffs = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        coeffs.into()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `[p]_x = 1 + x + ... + x^{p-1}`.
pub fn q_integer(p: usize) -> IntPolynomial {
    IntPolynomial::new(vec![1; p])
}

/// `[p]_x! = [1]_x [2]_x ... [p]_x`, with `[0]_x! = 1`.
pub fn q_factorial(p: usize) -> IntPolynomial {
    (1..=p).fold(IntPolynomial::one(), |acc, i| &acc * &q_integer(i))
}

/// Betti numbers of the `(3,2,2)` singular component on seven points, from the
/// published cell count. Reference data only; nothing here computes it.
pub const REFERENCE_322_POINCARE: [u64; 7] = [1, 6, 18, 28, 22, 8, 1];
