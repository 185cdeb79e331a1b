use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Coeff = Complex<BigRational>;

/// A trigonometric polynomial in three angles, stored as a finite sum
/// `Σ c_n · exp(i(n₀α + n₁β + n₂γ))` with exact complex coefficients.
///
/// Writing `cos` and `sin` in the exponential basis makes equality of
/// trigonometric expressions structural: two polynomials agree as functions
/// iff their coefficient maps are equal.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TrigPoly {
    terms: BTreeMap<[i64; 3], Coeff>,
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

impl TrigPoly {
    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::default();
        p.insert([0; 3], Complex::new(c, BigRational::zero()));
        p
    }

    /// `cos(n₀α + n₁β + n₂γ)`.
    pub fn cos(freq: [i64; 3]) -> Self {
        let neg = freq.map(|x| -x);
        let mut p = Self::default();
        p.insert(freq, Complex::new(half(), BigRational::zero()));
        p.insert(neg, Complex::new(half(), BigRational::zero()));
        p
    }

    /// `sin(n₀α + n₁β + n₂γ)`.
    pub fn sin(freq: [i64; 3]) -> Self {
        let neg = freq.map(|x| -x);
        let mut p = Self::default();
        p.insert(freq, Complex::new(BigRational::zero(), -half()));
        p.insert(neg, Complex::new(BigRational::zero(), half()));
        p
    }

    /// `cos` of the single angle with index `var` (0 = α, 1 = β, 2 = γ).
    pub fn cos_of(var: usize) -> Self {
        Self::cos(unit(var))
    }

    pub fn sin_of(var: usize) -> Self {
        Self::sin(unit(var))
    }

    fn insert(&mut self, freq: [i64; 3], c: Coeff) {
        let entry = self.terms.entry(freq).or_insert_with(Coeff::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&freq);
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = Self::default();
        for (f, c) in &self.terms {
            out.insert(*f, c * Complex::new(k.clone(), BigRational::zero()));
        }
        out
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }
}

fn unit(var: usize) -> [i64; 3] {
    let mut f = [0; 3];
    f[var] = 1;
    f
}

impl Add for TrigPoly {
    type Output = TrigPoly;
    fn add(mut self, rhs: TrigPoly) -> TrigPoly {
        for (f, c) in rhs.terms {
            self.insert(f, c);
        }
        self
    }
}

impl Neg for TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        TrigPoly {
            terms: self.terms.into_iter().map(|(f, c)| (f, -c)).collect(),
        }
    }
}

impl Sub for TrigPoly {
    type Output = TrigPoly;
    fn sub(self, rhs: TrigPoly) -> TrigPoly {
        self + (-rhs)
    }
}

impl Mul for TrigPoly {
    type Output = TrigPoly;
    fn mul(self, rhs: TrigPoly) -> TrigPoly {
        let mut out = TrigPoly::default();
        for (f, a) in &self.terms {
            for (g, b) in &rhs.terms {
                out.insert([f[0] + g[0], f[1] + g[1], f[2] + g[2]], a * b);
            }
        }
        out
    }
}

impl Zero for TrigPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for TrigPoly {
    fn one() -> Self {
        Self::constant(BigRational::one())
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(n, c)| format!("({} + {}i)e^i{:?}", c.re, c.im, n))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
