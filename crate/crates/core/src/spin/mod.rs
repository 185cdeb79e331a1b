//! `Spin(7)` inside `SO(8)` through the Clifford embedding of the octonions.
//!
//! For `n = 1, 2, 3` put `v = e_{2n-1}` and `w(t) = −(cos t·v + sin t·e_{2n})`.
//! The product `L_v L_w` is a one-parameter subgroup `A_n(t)` of `SO(8)`, the
//! three commute, and the fixed integer matrix `B` conjugates
//! `A₁(α)A₂(β)A₃(γ)` to the block rotation `R(θ₁, θ₂, θ₃, θ₄)` with
//! `θ = (α+β−γ, α−β−γ, α−β+γ, α+β+γ)`.
//!
//! Matrices are checked symbolically with [`TrigPoly`] entries and evaluated
//! exactly in [`Surd`] at angles that are multiples of 30° or 45°.

mod surd;
mod trig;

pub use surd::Surd;
pub use trig::TrigPoly;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Matrix, RatMatrix, TorusPoint};
use crate::octonion::{clifford_hat, left_mult_matrix, oct_mul, Octonion, BASIS_PRODUCTS};
use crate::Check;

pub type SurdMatrix = Matrix<Surd>;
pub type TrigMatrix = Matrix<TrigPoly>;

/// The integer matrix conjugating the `A_n` to block-diagonal rotations.
pub const CONJUGATOR_ROWS: [[i64; 8]; 8] = [
    [0, 0, 0, 1, 0, 0, 0, 1],
    [1, 0, 0, 0, -1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, -1],
    [1, 0, 0, 0, 1, 0, 0, 0],
    [0, 1, 0, 0, 0, -1, 0, 0],
    [0, 0, -1, 0, 0, 0, 1, 0],
    [0, 1, 0, 0, 0, 1, 0, 0],
    [0, 0, -1, 0, 0, 0, -1, 0],
];

/// Entry patterns of `A₁(α)`, `A₂(β)`, `A₃(γ)`: `c` = cos, `s` = sin,
/// `-s` = −sin, `.` = 0; rows separated by `;`.
pub const DISPLAYED_A: [&str; 3] = [
    "c . . s . . . .;. c s . . . . .;. -s c . . . . .;-s . . c . . . .;\
     . . . . c . . -s;. . . . . c s .;. . . . . -s c .;. . . . s . . c",
    "c . . . . . . s;. c . . . . s .;. . c . . -s . .;. . . c s . . .;\
     . . . -s c . . .;. . s . . c . .;. -s . . . . c .;-s . . . . . . c",
    "c . . -s . . . .;. c s . . . . .;. -s c . . . . .;s . . c . . . .;\
     . . . . c . . s;. . . . . c s .;. . . . . -s c .;. . . . -s . . c",
];

/// Weights of `(θ₁, θ₂, θ₃, θ₄)` in terms of `(α, β, γ)`.
pub const SPIN_TO_SO8: [[i64; 3]; 4] = [[1, 1, -1], [1, -1, -1], [1, -1, 1], [1, 1, 1]];

/// `(2α, 2β, 2γ) = (θ₁+θ₃, θ₁−θ₂, θ₃−θ₂)` on the torus `θ₁+θ₃ = θ₂+θ₄`.
pub const SO8_TO_SO7: [[i64; 4]; 3] = [[1, 0, 1, 0], [1, -1, 0, 0], [0, -1, 1, 0]];

/// The linear form cutting the `Spin(7)` torus out of the `SO(8)` torus.
pub const SPIN7_RELATION: [i64; 4] = [1, -1, 1, -1];

pub fn conjugator() -> IntMatrix {
    IntMatrix::from_rows(&CONJUGATOR_ROWS)
}

/// `(P, Q)` with `L_v L_{w(t)} = cos t · P + sin t · Q` for the `n`-th pair.
pub fn rotation_generator(n: usize) -> (RatMatrix, RatMatrix) {
    assert!((1..=3).contains(&n));
    let v = left_mult_matrix(&Octonion::basis(2 * n - 1));
    let u = left_mult_matrix(&Octonion::basis(2 * n));
    let minus = -BigRational::one();
    ((&v * &v).scale(&minus), (&v * &u).scale(&minus))
}

/// `A_n` as a matrix of trigonometric polynomials in `(α, β, γ)`, computed
/// from the left-multiplication products.
pub fn symbolic_a(n: usize) -> TrigMatrix {
    let (p, q) = rotation_generator(n);
    let (c, s) = (TrigPoly::cos_of(n - 1), TrigPoly::sin_of(n - 1));
    TrigMatrix::from_fn(8, 8, |i, j| {
        c.scale(p.get(i, j)) + s.scale(q.get(i, j))
    })
}

/// `A_n` read off the entry patterns in [`DISPLAYED_A`].
pub fn displayed_a(n: usize) -> TrigMatrix {
    parse_pattern(DISPLAYED_A[n - 1], n - 1)
}

fn parse_pattern(pattern: &str, var: usize) -> TrigMatrix {
    let rows: Vec<Vec<TrigPoly>> = pattern
        .split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|tok| match tok {
                    "c" => TrigPoly::cos_of(var),
                    "s" => TrigPoly::sin_of(var),
                    "-c" => -TrigPoly::cos_of(var),
                    "-s" => -TrigPoly::sin_of(var),
                    "." => TrigPoly::zero(),
                    other => panic!("bad pattern token {other}"),
                })
                .collect()
        })
        .collect();
    TrigMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j].clone())
}

/// `R(θ₁, …, θ_k)` with each `θ` a frequency vector in `(α, β, γ)`.
pub fn symbolic_rotation(thetas: &[[i64; 3]]) -> TrigMatrix {
    let blocks: Vec<TrigMatrix> = thetas
        .iter()
        .map(|&f| {
            let (c, s) = (TrigPoly::cos(f), TrigPoly::sin(f));
            TrigMatrix::from_fn(2, 2, |i, j| match (i, j) {
                (0, 0) | (1, 1) => c.clone(),
                (0, 1) => -s.clone(),
                _ => s.clone(),
            })
        })
        .collect();
    TrigMatrix::block_diagonal(&blocks)
}

fn to_trig(m: &RatMatrix) -> TrigMatrix {
    m.map(|x| TrigPoly::constant(x.clone()))
}

fn to_surd(m: &RatMatrix) -> SurdMatrix {
    m.map(|x| Surd::rational(x.clone()))
}

/// Parameters `(α, β, γ)` of the `Spin(7)` maximal torus, in turns mod 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpinTorusParams {
    point: TorusPoint,
}

impl SpinTorusParams {
    pub fn new(alpha: BigRational, beta: BigRational, gamma: BigRational) -> Self {
        Self {
            point: TorusPoint::new(vec![alpha, beta, gamma]),
        }
    }

    pub fn from_fractions(p: [(i64, i64); 3]) -> Self {
        Self {
            point: TorusPoint::from_fractions(&p),
        }
    }

    pub fn alpha(&self) -> &BigRational {
        &self.point.coords()[0]
    }

    pub fn beta(&self) -> &BigRational {
        &self.point.coords()[1]
    }

    pub fn gamma(&self) -> &BigRational {
        &self.point.coords()[2]
    }

    pub fn as_point(&self) -> &TorusPoint {
        &self.point
    }
}

/// A point `(θ₁, θ₂, θ₃, θ₄)` of the standard `SO(8)` torus, in turns mod 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct So8TorusPoint {
    theta: TorusPoint,
}

impl So8TorusPoint {
    pub fn new(theta: TorusPoint) -> Result<Self> {
        if theta.dim() != 4 {
            return Err(Error::Dimension {
                expected: 4,
                got: theta.dim(),
            });
        }
        Ok(Self { theta })
    }

    pub fn from_fractions(t: [(i64, i64); 4]) -> Self {
        Self {
            theta: TorusPoint::from_fractions(&t),
        }
    }

    pub fn theta(&self) -> &TorusPoint {
        &self.theta
    }

    /// `θ₁ + θ₃ ≡ θ₂ + θ₄ (mod 1)`.
    pub fn in_spin7_torus(&self) -> bool {
        self.theta.satisfies_relation(&SPIN7_RELATION)
    }
}

pub fn spin_to_so8_torus(p: &SpinTorusParams) -> So8TorusPoint {
    let theta = p
        .point
        .image_under(&IntMatrix::from_rows(&SPIN_TO_SO8))
        .expect("3 parameters");
    So8TorusPoint { theta }
}

/// The image `(2α, 2β, 2γ)` in the `SO(7)` torus.
pub fn so8_to_so7_torus(t: &So8TorusPoint) -> Result<TorusPoint> {
    if !t.in_spin7_torus() {
        return Err(Error::NotInSpin7Torus(t.theta.to_string()));
    }
    t.theta.image_under(&IntMatrix::from_rows(&SO8_TO_SO7))
}

/// `A_n(t)` evaluated exactly.
pub fn a_matrix(n: usize, t: &BigRational) -> Result<SurdMatrix> {
    let (p, q) = rotation_generator(n);
    let (c, s) = (Surd::cos_turn(t)?, Surd::sin_turn(t)?);
    Ok(SurdMatrix::from_fn(8, 8, |i, j| {
        c.clone() * Surd::rational(p.get(i, j).clone()) + s.clone() * Surd::rational(q.get(i, j).clone())
    }))
}

/// `A₁(α)·A₂(β)·A₃(γ) ∈ Spin(7) ⊂ SO(8)`, exactly. Every angle must have
/// denominator 1, 2, 3, 4, 6, 8 or 12.
pub fn spin_element(p: &SpinTorusParams) -> Result<SurdMatrix> {
    let a1 = a_matrix(1, p.alpha())?;
    let a2 = a_matrix(2, p.beta())?;
    let a3 = a_matrix(3, p.gamma())?;
    Ok(&(&a1 * &a2) * &a3)
}

/// `R(θ₁, …, θ_k)` evaluated exactly.
pub fn rotation_matrix(thetas: &[BigRational]) -> Result<SurdMatrix> {
    let blocks = thetas
        .iter()
        .map(|t| {
            let (c, s) = (Surd::cos_turn(t)?, Surd::sin_turn(t)?);
            Ok(SurdMatrix::from_fn(2, 2, |i, j| match (i, j) {
                (0, 0) | (1, 1) => c.clone(),
                (0, 1) => -s.clone(),
                _ => s.clone(),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SurdMatrix::block_diagonal(&blocks))
}

/// `B·X·B⁻¹` for an exactly evaluated `X`.
pub fn conjugate_by_b(x: &SurdMatrix) -> SurdMatrix {
    let b = conjugator().to_rational();
    let b_inv = b.inverse().expect("B is invertible");
    &(&to_surd(&b) * x) * &to_surd(&b_inv)
}

/// Runs every identity of the construction and reports one line per group
/// of checks.
pub fn verify_spin7() -> Vec<Check> {
    let mut out = Vec::new();

    let mismatched: Vec<String> = (1..8)
        .flat_map(|r| (1..8).map(move |c| (r, c)))
        .filter(|&(r, c)| {
            let (sign, k) = BASIS_PRODUCTS[r - 1][c - 1];
            oct_mul(&Octonion::basis(r), &Octonion::basis(c)).as_signed_basis()
                != Some((sign, k as usize))
        })
        .map(|(r, c)| format!("e{r}*e{c}"))
        .collect();
    out.push(Check::new(
        "octonion basis products (49)",
        mismatched.is_empty(),
        mismatched.join(", "),
    ));

    let hats: Vec<RatMatrix> = (0..8).map(|i| clifford_hat(&Octonion::basis(i))).collect();
    let mut bad = Vec::new();
    for i in 0..8 {
        for j in 0..8 {
            let lhs = (&hats[i] * &hats[j]).checked_add(&(&hats[j] * &hats[i])).unwrap();
            let ip = Octonion::basis(i).inner(&Octonion::basis(j));
            let rhs = RatMatrix::identity(16).scale(&(ip * BigRational::from_integer((-2).into())));
            if lhs != rhs {
                bad.push(format!("({i},{j})"));
            }
        }
    }
    out.push(Check::new(
        "Clifford anticommutation (64 pairs)",
        bad.is_empty(),
        bad.join(", "),
    ));

    let a: Vec<TrigMatrix> = (1..=3).map(symbolic_a).collect();
    let bad: Vec<String> = (1..=3)
        .filter(|&n| a[n - 1] != displayed_a(n))
        .map(|n| format!("A{n}"))
        .collect();
    out.push(Check::new(
        "A1, A2, A3 from left multiplication match the displayed matrices",
        bad.is_empty(),
        bad.join(", "),
    ));

    let bad: Vec<String> = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .filter(|&&(i, j)| &a[i] * &a[j] != &a[j] * &a[i])
        .map(|(i, j)| format!("A{}A{}", i + 1, j + 1))
        .collect();
    out.push(Check::new("A matrices commute", bad.is_empty(), bad.join(", ")));

    let b = conjugator().to_rational();
    let b_inv = b.inverse().expect("B is invertible");
    let product = &(&a[0] * &a[1]) * &a[2];
    let conjugated = &(&to_trig(&b) * &product) * &to_trig(&b_inv);
    let ok = conjugated == symbolic_rotation(&SPIN_TO_SO8);
    out.push(Check::new(
        "B A1 A2 A3 B^-1 = R(a+b-c, a-b-c, a-b+c, a+b+c)",
        ok,
        String::new(),
    ));

    let mut bad = Vec::new();
    for p in sample_params() {
        let theta = spin_to_so8_torus(&p);
        let x = spin_element(&p).expect("supported angles");
        let r = rotation_matrix(theta.theta().coords()).expect("supported angles");
        if conjugate_by_b(&x) != r {
            bad.push(p.as_point().to_string());
        }
        let doubled = TorusPoint::new(p.as_point().coords().iter().map(|c| c * BigRational::from_integer(2.into())).collect());
        if so8_to_so7_torus(&theta).ok() != Some(doubled) {
            bad.push(format!("projection at {}", p.as_point()));
        }
    }
    out.push(Check::new(
        "exact evaluation and projection to SO(7) at sample angles",
        bad.is_empty(),
        bad.join(", "),
    ));
    out
}

fn sample_params() -> Vec<SpinTorusParams> {
    // angles from one of the groups of twelfths or eighths, so that the
    // θ's stay evaluable
    let mut out = Vec::new();
    for d in [12, 8] {
        for i in 0..d {
            let (b, c) = ((5 * i + 1) % d, (7 * i + 3) % d);
            out.push(SpinTorusParams::from_fractions([(i, d), (b, d), (c, d)]));
        }
    }
    out
}

/// Weights `(θ₁, …, θ₄)` of an `SO(8)` torus point as an integer matrix.
pub fn spin_to_so8_weights() -> IntMatrix {
    IntMatrix::from_rows(&SPIN_TO_SO8)
}

pub fn so8_to_so7_weights() -> IntMatrix {
    IntMatrix::from_rows(&SO8_TO_SO7)
}
