use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An element `a + b√2 + c√3 + d√6` of `ℚ(√2, √3)`, the field holding
/// `cos` and `sin` of every multiple of 15°.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    c: [BigRational; 4],
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl Surd {
    pub fn new(one: BigRational, sqrt2: BigRational, sqrt3: BigRational, sqrt6: BigRational) -> Self {
        Self {
            c: [one, sqrt2, sqrt3, sqrt6],
        }
    }

    pub fn rational(x: BigRational) -> Self {
        Self::new(x, BigRational::zero(), BigRational::zero(), BigRational::zero())
    }

    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    /// `cos(2π·turns)`. The turn must have denominator 1, 2, 3, 4, 6, 8 or 12.
    pub fn cos_turn(turns: &BigRational) -> Result<Self> {
        let k = fifteen_degree_steps(turns)?;
        Ok(cos_steps(k))
    }

    /// `sin(2π·turns)`, with the same restriction as [`Surd::cos_turn`].
    pub fn sin_turn(turns: &BigRational) -> Result<Self> {
        let k = fifteen_degree_steps(turns)?;
        Ok(cos_steps((6 - k).rem_euclid(24)))
    }
}

fn fifteen_degree_steps(turns: &BigRational) -> Result<i64> {
    let t = turns - turns.floor();
    let denom = t.denom().clone();
    let ok = [1, 2, 3, 4, 6, 8, 12]
        .iter()
        .any(|&d| num_bigint::BigInt::from(d) == denom);
    if !ok {
        return Err(Error::UnsupportedDenominator(denom.to_string()));
    }
    let steps = (t * BigRational::from_integer(24.into())).to_integer();
    Ok(i64::try_from(steps).expect("0 <= steps < 24"))
}

/// `cos(k·15°)` for `0 ≤ k < 24`.
fn cos_steps(k: i64) -> Surd {
    let z = BigRational::zero;
    let first_quadrant = |k: i64| match k {
        0 => Surd::rational(r(1, 1)),
        1 => Surd::new(z(), r(1, 4), z(), r(1, 4)),
        2 => Surd::new(z(), z(), r(1, 2), z()),
        3 => Surd::new(z(), r(1, 2), z(), z()),
        4 => Surd::rational(r(1, 2)),
        5 => Surd::new(z(), r(-1, 4), z(), r(1, 4)),
        6 => Surd::zero(),
        _ => unreachable!(),
    };
    match k {
        0..=6 => first_quadrant(k),
        7..=12 => -first_quadrant(12 - k),
        13..=18 => -first_quadrant(k - 12),
        _ => first_quadrant(24 - k),
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, rhs: Surd) -> Surd {
        Surd {
            c: std::array::from_fn(|i| &self.c[i] + &rhs.c[i]),
        }
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        Surd {
            c: std::array::from_fn(|i| &self.c[i] - &rhs.c[i]),
        }
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { c: self.c.map(|x| -x) }
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        let [a0, a1, a2, a3] = &self.c;
        let [b0, b1, b2, b3] = &rhs.c;
        let two = r(2, 1);
        let three = r(3, 1);
        let six = r(6, 1);
        Surd {
            c: [
                a0 * b0 + &two * (a1 * b1) + &three * (a2 * b2) + &six * (a3 * b3),
                a0 * b1 + a1 * b0 + &three * (a2 * b3 + a3 * b2),
                a0 * b2 + a2 * b0 + &two * (a1 * b3 + a3 * b1),
                a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
            ],
        }
    }
}

impl Zero for Surd {
    fn zero() -> Self {
        Self::rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
}

impl One for Surd {
    fn one() -> Self {
        Self::rational(BigRational::one())
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "√2", "√3", "√6"];
        let terms: Vec<String> = self
            .c
            .iter()
            .zip(names)
            .filter(|(x, _)| !x.is_zero())
            .map(|(x, n)| format!("{x}{n}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}
