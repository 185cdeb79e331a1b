//! Octonions as pairs of quaternions, `𝕆 = ℍ + ℍl`, with basis
//! `1, i, j, k, l, il, jl, kl`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linalg::RatMatrix;

/// Products of imaginary basis elements: entry `[r-1][c-1] = (sign, k)` means
/// `e_r · e_c = sign · e_k`.
pub const BASIS_PRODUCTS: [[(i8, u8); 7]; 7] = [
    [(-1, 0), (1, 3), (-1, 2), (1, 5), (-1, 4), (-1, 7), (1, 6)],
    [(-1, 3), (-1, 0), (1, 1), (1, 6), (1, 7), (-1, 4), (-1, 5)],
    [(1, 2), (-1, 1), (-1, 0), (1, 7), (-1, 6), (1, 5), (-1, 4)],
    [(-1, 5), (-1, 6), (-1, 7), (-1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 4), (-1, 7), (1, 6), (-1, 1), (-1, 0), (-1, 3), (1, 2)],
    [(1, 7), (1, 4), (-1, 5), (-1, 2), (1, 3), (-1, 0), (-1, 1)],
    [(-1, 6), (1, 5), (1, 4), (-1, 3), (-1, 2), (1, 1), (-1, 0)],
];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Octonion {
    coeffs: [BigRational; 8],
}

type Quat = [BigRational; 4];

fn quat_mul(a: &Quat, b: &Quat) -> Quat {
    let [a0, a1, a2, a3] = a;
    let [b0, b1, b2, b3] = b;
    [
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ]
}

fn quat_conj(a: &Quat) -> Quat {
    [a[0].clone(), -&a[1], -&a[2], -&a[3]]
}

fn quat_sub(a: &Quat, b: &Quat) -> Quat {
    std::array::from_fn(|i| &a[i] - &b[i])
}

fn quat_add(a: &Quat, b: &Quat) -> Quat {
    std::array::from_fn(|i| &a[i] + &b[i])
}

impl Octonion {
    pub fn new(coeffs: [BigRational; 8]) -> Self {
        Self { coeffs }
    }

    pub fn from_i64(coeffs: [i64; 8]) -> Self {
        Self::new(coeffs.map(|c| BigRational::from_integer(c.into())))
    }

    pub fn zero() -> Self {
        Self::new(std::array::from_fn(|_| BigRational::zero()))
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    /// The basis element `e_i`, `0 ≤ i < 8`.
    pub fn basis(i: usize) -> Self {
        let mut x = Self::zero();
        x.coeffs[i] = BigRational::one();
        x
    }

    pub fn coeffs(&self) -> &[BigRational; 8] {
        &self.coeffs
    }

    fn halves(&self) -> (Quat, Quat) {
        let c = &self.coeffs;
        (
            [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()],
            [c[4].clone(), c[5].clone(), c[6].clone(), c[7].clone()],
        )
    }

    fn from_halves(a: Quat, b: Quat) -> Self {
        let [a0, a1, a2, a3] = a;
        let [b0, b1, b2, b3] = b;
        Self::new([a0, a1, a2, a3, b0, b1, b2, b3])
    }

    pub fn conjugate(&self) -> Self {
        let mut c = self.coeffs.clone();
        for x in &mut c[1..] {
            *x = -x.clone();
        }
        Self::new(c)
    }

    /// `⟨x, y⟩` with the basis orthonormal.
    pub fn inner(&self, other: &Self) -> BigRational {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum()
    }

    pub fn norm_squared(&self) -> BigRational {
        self.inner(self)
    }

    pub fn is_imaginary(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.clone().map(|c| c * k))
    }

    /// If `self = ±e_i`, returns `(sign, i)`.
    pub fn as_signed_basis(&self) -> Option<(i8, usize)> {
        let nonzero: Vec<usize> = (0..8).filter(|&i| !self.coeffs[i].is_zero()).collect();
        match nonzero.as_slice() {
            [i] if self.coeffs[*i].is_one() => Some((1, *i)),
            [i] if (-&self.coeffs[*i]).is_one() => Some((-1, *i)),
            _ => None,
        }
    }
}

/// `(a + bl)(c + dl) = (ac − d̄b) + (da + bc̄)l`.
pub fn oct_mul(x: &Octonion, y: &Octonion) -> Octonion {
    let (a, b) = x.halves();
    let (c, d) = y.halves();
    let real = quat_sub(&quat_mul(&a, &c), &quat_mul(&quat_conj(&d), &b));
    let imag = quat_add(&quat_mul(&d, &a), &quat_mul(&b, &quat_conj(&c)));
    Octonion::from_halves(real, imag)
}

impl Mul for &Octonion {
    type Output = Octonion;
    fn mul(self, rhs: Self) -> Octonion {
        oct_mul(self, rhs)
    }
}

impl Add for &Octonion {
    type Output = Octonion;
    fn add(self, rhs: Self) -> Octonion {
        Octonion::new(std::array::from_fn(|i| &self.coeffs[i] + &rhs.coeffs[i]))
    }
}

impl Sub for &Octonion {
    type Output = Octonion;
    fn sub(self, rhs: Self) -> Octonion {
        Octonion::new(std::array::from_fn(|i| &self.coeffs[i] - &rhs.coeffs[i]))
    }
}

impl Neg for &Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion::new(self.coeffs.clone().map(|c| -c))
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{c}e{i}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `L_x`: column `b` holds the coefficients of `x·e_b`.
pub fn left_mult_matrix(x: &Octonion) -> RatMatrix {
    let columns: Vec<Octonion> = (0..8).map(|b| oct_mul(x, &Octonion::basis(b))).collect();
    RatMatrix::from_fn(8, 8, |i, j| columns[j].coeffs[i].clone())
}

/// The Clifford embedding `x̂ = [[0, −L_x̄], [L_x, 0]]`.
pub fn clifford_hat(x: &Octonion) -> RatMatrix {
    let l = left_mult_matrix(x);
    let lbar = left_mult_matrix(&x.conjugate());
    let zero = RatMatrix::zeros(8, 8);
    let minus_lbar = lbar.scale(&-BigRational::one());
    RatMatrix::from_blocks(&zero, &minus_lbar, &l, &zero).expect("8x8 blocks")
}
