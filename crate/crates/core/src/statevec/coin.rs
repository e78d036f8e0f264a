//! Parameterized coin operators.
//!
//! The single-walker coin is the three-angle U3 form
//!
//! ```text
//! C(θ, φ, λ) = [ cos(θ/2)            -e^{iλ} sin(θ/2)       ]
//!              [ e^{iφ} sin(θ/2)      e^{i(φ+λ)} cos(θ/2)   ]
//! ```
//!
//! The joint coin of the entangled two-walker walk is a local–interaction–local
//! product `(post_a ⊗ post_b) · exp(i(a·XX + b·YY + c·ZZ)) · (pre_a ⊗ pre_b)`,
//! which spans every two-qubit unitary up to a global phase.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub type Mat2 = [[C64; 2]; 2];
pub type Mat4 = [[C64; 4]; 4];

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Wraps an angle into `[0, 2π)`.
pub fn canonical_angle(angle: f64) -> f64 {
    let r = angle.rem_euclid(TAU);
    // rem_euclid rounds tiny negatives up to exactly TAU
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Angles of a single-qubit U3 coin, canonicalized into `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct CoinParams {
    theta: f64,
    phi: f64,
    lambda: f64,
}

impl CoinParams {
    pub fn new(theta: f64, phi: f64, lambda: f64) -> Result<Self> {
        if !(theta.is_finite() && phi.is_finite() && lambda.is_finite()) {
            return Err(invalid(format!(
                "coin angles must be finite, got ({theta}, {phi}, {lambda})"
            )));
        }
        Ok(Self {
            theta: canonical_angle(theta),
            phi: canonical_angle(phi),
            lambda: canonical_angle(lambda),
        })
    }

    pub fn identity() -> Self {
        Self { theta: 0.0, phi: 0.0, lambda: 0.0 }
    }

    pub fn hadamard() -> Self {
        Self { theta: PI / 2.0, phi: 0.0, lambda: PI }
    }

    pub fn bit_flip() -> Self {
        Self { theta: PI, phi: 0.0, lambda: PI }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.theta, self.phi, self.lambda]
    }
}

impl TryFrom<[f64; 3]> for CoinParams {
    type Error = Error;

    fn try_from(a: [f64; 3]) -> Result<Self> {
        Self::new(a[0], a[1], a[2])
    }
}

impl From<CoinParams> for [f64; 3] {
    fn from(p: CoinParams) -> Self {
        p.to_array()
    }
}

/// Interaction angles of the joint coin, the `(a, b, c)` of `exp(i(aXX + bYY + cZZ))`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Interaction {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Interaction {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite()
    }
}

/// The 15 angles of a joint 4×4 coin. Walker `a` owns the high coin bit (x axis),
/// walker `b` the low bit (y axis).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntangledCoinParams {
    pub pre_a: CoinParams,
    pub pre_b: CoinParams,
    pub interaction: Interaction,
    pub post_a: CoinParams,
    pub post_b: CoinParams,
}

impl EntangledCoinParams {
    pub const LEN: usize = 15;

    pub fn identity() -> Self {
        Self::product(CoinParams::identity(), CoinParams::identity())
    }

    /// A separable coin: `a ⊗ b` with no interaction and identity post-rotations.
    pub fn product(a: CoinParams, b: CoinParams) -> Self {
        Self {
            pre_a: a,
            pre_b: b,
            interaction: Interaction::default(),
            post_a: CoinParams::identity(),
            post_b: CoinParams::identity(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.interaction.is_finite()
    }

    /// Flat order: pre_a, pre_b, (a, b, c), post_a, post_b.
    pub fn to_array(&self) -> [f64; 15] {
        let mut out = [0.0; 15];
        out[0..3].copy_from_slice(&self.pre_a.to_array());
        out[3..6].copy_from_slice(&self.pre_b.to_array());
        out[6] = self.interaction.a;
        out[7] = self.interaction.b;
        out[8] = self.interaction.c;
        out[9..12].copy_from_slice(&self.post_a.to_array());
        out[12..15].copy_from_slice(&self.post_b.to_array());
        out
    }

    pub fn from_slice(v: &[f64]) -> Result<Self> {
        if v.len() != Self::LEN {
            return Err(Error::DimensionMismatch { expected: Self::LEN, actual: v.len() });
        }
        if !v.iter().all(|x| x.is_finite()) {
            return Err(invalid("entangled coin angles must be finite"));
        }
        Ok(Self {
            pre_a: CoinParams::new(v[0], v[1], v[2])?,
            pre_b: CoinParams::new(v[3], v[4], v[5])?,
            interaction: Interaction::new(v[6], v[7], v[8]),
            post_a: CoinParams::new(v[9], v[10], v[11])?,
            post_b: CoinParams::new(v[12], v[13], v[14])?,
        })
    }
}

/// The U3 coin matrix.
pub fn build_coin(p: &CoinParams) -> Mat2 {
    u3(p.theta, p.phi, p.lambda)
}

#[inline]
pub(crate) fn u3(theta: f64, phi: f64, lambda: f64) -> Mat2 {
    let (s, c) = (theta / 2.0).sin_cos();
    let e_phi = C64::from_polar(1.0, phi);
    let e_lambda = C64::from_polar(1.0, lambda);
    let e_both = C64::from_polar(1.0, phi + lambda);
    [[C64::new(c, 0.0), -e_lambda * s], [e_phi * s, e_both * c]]
}

/// `exp(i(a·XX + b·YY + c·ZZ))` in the `|00⟩, |01⟩, |10⟩, |11⟩` basis.
///
/// The three Pauli products commute, and the operator splits into the
/// `{|00⟩, |11⟩}` block (angle `a − b`, phase `c`) and the `{|01⟩, |10⟩}`
/// block (angle `a + b`, phase `−c`).
pub fn interaction_unitary(i: &Interaction) -> Mat4 {
    let even = C64::from_polar(1.0, i.c);
    let odd = C64::from_polar(1.0, -i.c);
    let (s_minus, c_minus) = (i.a - i.b).sin_cos();
    let (s_plus, c_plus) = (i.a + i.b).sin_cos();
    let j = C64::new(0.0, 1.0);
    let mut m = [[ZERO; 4]; 4];
    m[0][0] = even * c_minus;
    m[3][3] = even * c_minus;
    m[0][3] = even * j * s_minus;
    m[3][0] = even * j * s_minus;
    m[1][1] = odd * c_plus;
    m[2][2] = odd * c_plus;
    m[1][2] = odd * j * s_plus;
    m[2][1] = odd * j * s_plus;
    m
}

/// Kronecker product with `a` on the high bit.
pub fn kron2(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut m = [[ZERO; 4]; 4];
    for (i1, row_a) in a.iter().enumerate() {
        for (j1, &ea) in row_a.iter().enumerate() {
            for (i2, row_b) in b.iter().enumerate() {
                for (j2, &eb) in row_b.iter().enumerate() {
                    m[2 * i1 + i2][2 * j1 + j2] = ea * eb;
                }
            }
        }
    }
    m
}

pub fn matmul4(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut m = [[ZERO; 4]; 4];
    for i in 0..4 {
        for k in 0..4 {
            let aik = a[i][k];
            for j in 0..4 {
                m[i][j] += aik * b[k][j];
            }
        }
    }
    m
}

/// The joint 4×4 coin: pre-rotations act first, then the interaction, then the post-rotations.
pub fn build_entangled_coin(p: &EntangledCoinParams) -> Mat4 {
    let pre = kron2(&build_coin(&p.pre_a), &build_coin(&p.pre_b));
    let post = kron2(&build_coin(&p.post_a), &build_coin(&p.post_b));
    matmul4(&post, &matmul4(&interaction_unitary(&p.interaction), &pre))
}

/// A coin matrix sized for either coin register.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CoinMatrix {
    Single(Mat2),
    Joint(Mat4),
}

impl CoinMatrix {
    pub fn dim(&self) -> usize {
        match self {
            CoinMatrix::Single(_) => 2,
            CoinMatrix::Joint(_) => 4,
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        match self {
            CoinMatrix::Single(m) => m[row][col],
            CoinMatrix::Joint(m) => m[row][col],
        }
    }

    /// `max |(U†U − I)_{ij}|`.
    pub fn unitarity_defect(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let mut acc = ZERO;
                for k in 0..d {
                    acc += self.entry(k, i).conj() * self.entry(k, j);
                }
                if i == j {
                    acc -= ONE;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }
}

impl From<Mat2> for CoinMatrix {
    fn from(m: Mat2) -> Self {
        CoinMatrix::Single(m)
    }
}

impl From<Mat4> for CoinMatrix {
    fn from(m: Mat4) -> Self {
        CoinMatrix::Joint(m)
    }
}
