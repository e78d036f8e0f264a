use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::coin::CoinMatrix;
use crate::error::{invalid, Error, Result};

/// Norm tolerance accepted when a state is built from raw amplitudes.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Direction of a split-step half-shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Plus,
    Minus,
}

/// Dense amplitudes over `coin ⊗ x (⊗ y)`.
///
/// The layout is coin-major: the amplitude of coin `c` at position `x` (1D) is
/// `amps[c * N + x]`, and at `(x, y)` (2D) it is `amps[c * Nx * Ny + x * Ny + y]`.
/// Each coin branch is a contiguous block, so a coin is a strided block
/// multiply and every conditional shift is a rotation of a block.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    coin_dim: usize,
    dims: Vec<usize>,
    amps: Vec<C64>,
}

impl StateVector {
    pub fn from_amplitudes(coin_dim: usize, dims: &[usize], amps: Vec<C64>) -> Result<Self> {
        check_shape(coin_dim, dims)?;
        let expected = coin_dim * dims.iter().product::<usize>();
        if amps.len() != expected {
            return Err(Error::DimensionMismatch { expected, actual: amps.len() });
        }
        if !amps.iter().all(|a| a.re.is_finite() && a.im.is_finite()) {
            return Err(invalid("amplitudes must be finite"));
        }
        let state = Self { coin_dim, dims: dims.to_vec(), amps };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    /// `coin ⊗ |position⟩`.
    pub fn product(coin: &[C64], dims: &[usize], position: &[usize]) -> Result<Self> {
        let coin_dim = coin.len();
        check_shape(coin_dim, dims)?;
        if position.len() != dims.len() {
            return Err(Error::DimensionMismatch { expected: dims.len(), actual: position.len() });
        }
        if position.iter().zip(dims).any(|(p, d)| p >= d) {
            return Err(invalid(format!("position {position:?} outside grid {dims:?}")));
        }
        let coin_norm: f64 = coin.iter().map(|a| a.norm_sqr()).sum();
        if (coin_norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(coin_norm));
        }
        let n: usize = dims.iter().product();
        let offset = flat_position(dims, position);
        let mut amps = vec![C64::new(0.0, 0.0); coin_dim * n];
        for (c, &a) in coin.iter().enumerate() {
            amps[c * n + offset] = a;
        }
        Ok(Self { coin_dim, dims: dims.to_vec(), amps })
    }

    /// The computational basis state `|coin⟩ ⊗ |position⟩`.
    pub fn basis(coin_dim: usize, dims: &[usize], coin: usize, position: &[usize]) -> Result<Self> {
        if coin >= coin_dim {
            return Err(invalid(format!("coin index {coin} >= {coin_dim}")));
        }
        let mut c = vec![C64::new(0.0, 0.0); coin_dim];
        c[coin] = C64::new(1.0, 0.0);
        Self::product(&c, dims, position)
    }

    pub fn coin_dim(&self) -> usize {
        self.coin_dim
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn positions(&self) -> usize {
        self.amps.len() / self.coin_dim
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitude(&self, coin: usize, position: &[usize]) -> C64 {
        self.amps[coin * self.positions() + flat_position(&self.dims, position)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Multiplies every position's coin sub-vector by `coin`.
    pub fn apply_coin(&mut self, coin: &CoinMatrix) -> Result<()> {
        if coin.dim() != self.coin_dim {
            return Err(Error::DimensionMismatch { expected: self.coin_dim, actual: coin.dim() });
        }
        let n = self.positions();
        match coin {
            CoinMatrix::Single(m) => {
                let (b0, b1) = self.amps.split_at_mut(n);
                for (u, d) in b0.iter_mut().zip(b1.iter_mut()) {
                    let (a0, a1) = (*u, *d);
                    *u = m[0][0] * a0 + m[0][1] * a1;
                    *d = m[1][0] * a0 + m[1][1] * a1;
                }
            }
            CoinMatrix::Joint(m) => {
                let (b0, rest) = self.amps.split_at_mut(n);
                let (b1, rest) = rest.split_at_mut(n);
                let (b2, b3) = rest.split_at_mut(n);
                for (((e0, e1), e2), e3) in b0.iter_mut().zip(b1).zip(b2).zip(b3) {
                    let v = [*e0, *e1, *e2, *e3];
                    let row = |r: &[C64; 4]| r[0] * v[0] + r[1] * v[1] + r[2] * v[2] + r[3] * v[3];
                    *e0 = row(&m[0]);
                    *e1 = row(&m[1]);
                    *e2 = row(&m[2]);
                    *e3 = row(&m[3]);
                }
            }
        }
        Ok(())
    }

    /// DTQW shift: coin ↑ (index 0) steps to `x + 1`, coin ↓ (index 1) to `x − 1`, cyclically.
    pub fn shift_symmetric(&mut self) -> Result<()> {
        let (up, down) = self.split_1d()?;
        up.rotate_right(1);
        down.rotate_left(1);
        Ok(())
    }

    /// Split-step `S⁺`: ↑ steps to `x + 1`, ↓ holds.
    pub fn shift_plus(&mut self) -> Result<()> {
        let (up, _) = self.split_1d()?;
        up.rotate_right(1);
        Ok(())
    }

    /// Split-step `S⁻`: ↓ steps to `x − 1`, ↑ holds.
    pub fn shift_minus(&mut self) -> Result<()> {
        let (_, down) = self.split_1d()?;
        down.rotate_left(1);
        Ok(())
    }

    /// Joint conditional shift of the two-walker walk on coin `|c₁c₂⟩`.
    ///
    /// `Plus` moves x by +1 where `c₁ = 1` and y by +1 where `c₂ = 1`;
    /// `Minus` moves x by −1 where `c₁ = 0` and y by −1 where `c₂ = 0`.
    pub fn shift_2d(&mut self, direction: Direction) -> Result<()> {
        if self.dims.len() != 2 || self.coin_dim != 4 {
            return Err(invalid("2D shift needs a 4-dimensional coin and a 2D grid"));
        }
        let (nx, ny) = (self.dims[0], self.dims[1]);
        for (c, block) in self.amps.chunks_exact_mut(nx * ny).enumerate() {
            let (c1, c2) = (c >> 1, c & 1);
            match direction {
                Direction::Plus => {
                    if c1 == 1 {
                        block.rotate_right(ny);
                    }
                    if c2 == 1 {
                        block.chunks_exact_mut(ny).for_each(|row| row.rotate_right(1));
                    }
                }
                Direction::Minus => {
                    if c1 == 0 {
                        block.rotate_left(ny);
                    }
                    if c2 == 0 {
                        block.chunks_exact_mut(ny).for_each(|row| row.rotate_left(1));
                    }
                }
            }
        }
        Ok(())
    }

    /// Position marginal `P(x) = Σ_c |ψ(c, x)|²`, flattened x-major for 2D grids.
    pub fn position_probabilities(&self) -> Vec<f64> {
        let n = self.positions();
        let mut probs = vec![0.0; n];
        for block in self.amps.chunks_exact(n) {
            for (p, a) in probs.iter_mut().zip(block) {
                *p += a.norm_sqr();
            }
        }
        probs
    }

    fn split_1d(&mut self) -> Result<(&mut [C64], &mut [C64])> {
        if self.dims.len() != 1 || self.coin_dim != 2 {
            return Err(invalid("1D shift needs a 2-dimensional coin and a 1D grid"));
        }
        let n = self.dims[0];
        Ok(self.amps.split_at_mut(n))
    }
}

fn check_shape(coin_dim: usize, dims: &[usize]) -> Result<()> {
    if coin_dim == 0 || dims.is_empty() || dims.contains(&0) {
        return Err(invalid(format!("bad state shape: coin {coin_dim}, grid {dims:?}")));
    }
    Ok(())
}

pub(crate) fn flat_position(dims: &[usize], position: &[usize]) -> usize {
    dims.iter().zip(position).fold(0, |acc, (d, p)| acc * d + p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevec::coin::{build_coin, CoinParams};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn single(p: CoinParams) -> CoinMatrix {
        CoinMatrix::Single(build_coin(&p))
    }

    #[test]
    fn identity_coin_leaves_state() {
        let mut s = StateVector::product(&[c(0.6, 0.0), c(0.0, 0.8)], &[8], &[3]).unwrap();
        let before = s.clone();
        s.apply_coin(&single(CoinParams::identity())).unwrap();
        assert_eq!(s, before);
    }

    #[test]
    fn hadamard_on_up() {
        let mut s = StateVector::basis(2, &[4], 0, &[0]).unwrap();
        s.apply_coin(&single(CoinParams::hadamard())).unwrap();
        assert!((s.amplitude(0, &[0]) - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((s.amplitude(1, &[0]) - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn x_coin_swaps() {
        let (a, b) = (c(0.6, 0.0), c(0.0, 0.8));
        let mut s = StateVector::product(&[a, b], &[8], &[5]).unwrap();
        s.apply_coin(&single(CoinParams::bit_flip())).unwrap();
        assert!((s.amplitude(0, &[5]) - b).norm() < 1e-15);
        assert!((s.amplitude(1, &[5]) - a).norm() < 1e-15);
    }

    #[test]
    fn coin_dimension_mismatch() {
        let mut s = StateVector::basis(2, &[4], 0, &[0]).unwrap();
        let joint = CoinMatrix::Joint(crate::statevec::coin::build_entangled_coin(
            &crate::statevec::coin::EntangledCoinParams::identity(),
        ));
        assert!(matches!(s.apply_coin(&joint), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn symmetric_shift() {
        let mut s = StateVector::basis(2, &[16], 0, &[3]).unwrap();
        s.shift_symmetric().unwrap();
        assert_eq!(s.amplitude(0, &[4]), c(1.0, 0.0));

        let mut s = StateVector::basis(2, &[16], 1, &[0]).unwrap();
        s.shift_symmetric().unwrap();
        assert_eq!(s.amplitude(1, &[15]), c(1.0, 0.0));

        let r = c(FRAC_1_SQRT_2, 0.0);
        let mut s = StateVector::product(&[r, r], &[16], &[5]).unwrap();
        s.shift_symmetric().unwrap();
        assert_eq!(s.amplitude(0, &[6]), r);
        assert_eq!(s.amplitude(1, &[4]), r);
        assert_eq!(s.norm_sqr(), StateVector::product(&[r, r], &[16], &[5]).unwrap().norm_sqr());
    }

    #[test]
    fn split_shifts_hold_the_other_branch() {
        let mut s = StateVector::basis(2, &[16], 1, &[7]).unwrap();
        let before = s.clone();
        s.shift_plus().unwrap();
        assert_eq!(s, before);

        let mut s = StateVector::basis(2, &[16], 0, &[7]).unwrap();
        let before = s.clone();
        s.shift_minus().unwrap();
        assert_eq!(s, before);

        let r = c(FRAC_1_SQRT_2, 0.0);
        let mut s = StateVector::product(&[r, r], &[16], &[4]).unwrap();
        s.shift_plus().unwrap();
        s.shift_minus().unwrap();
        assert_eq!(s.amplitude(0, &[5]), r);
        assert_eq!(s.amplitude(1, &[3]), r);
    }

    #[test]
    fn shift_2d_rules() {
        let mut s = StateVector::basis(4, &[8, 8], 0b00, &[2, 3]).unwrap();
        let before = s.clone();
        s.shift_2d(Direction::Plus).unwrap();
        assert_eq!(s, before);

        let mut s = StateVector::basis(4, &[8, 8], 0b11, &[2, 3]).unwrap();
        s.shift_2d(Direction::Plus).unwrap();
        assert_eq!(s.amplitude(0b11, &[3, 4]), c(1.0, 0.0));

        let mut s = StateVector::basis(4, &[8, 8], 0b01, &[0, 5]).unwrap();
        s.shift_2d(Direction::Minus).unwrap();
        assert_eq!(s.amplitude(0b01, &[7, 5]), c(1.0, 0.0));
    }

    #[test]
    fn shift_on_wrong_dimensionality() {
        let mut s1 = StateVector::basis(2, &[8], 0, &[0]).unwrap();
        assert!(s1.shift_2d(Direction::Plus).is_err());
        let mut s2 = StateVector::basis(4, &[4, 4], 0, &[0, 0]).unwrap();
        assert!(s2.shift_plus().is_err());
        assert!(s2.shift_symmetric().is_err());
    }

    #[test]
    fn marginals() {
        let s = StateVector::basis(2, &[8], 0, &[3]).unwrap();
        let p = s.position_probabilities();
        assert_eq!(p[3], 1.0);
        assert_eq!(p.iter().sum::<f64>(), 1.0);

        let r = c(FRAC_1_SQRT_2, 0.0);
        let s = StateVector::product(&[r, r], &[8], &[1]).unwrap();
        let p = s.position_probabilities();
        assert!((p[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn construction_checks() {
        assert!(StateVector::product(&[c(1.0, 0.0), c(1.0, 0.0)], &[4], &[0]).is_err());
        assert!(StateVector::product(&[c(1.0, 0.0), c(0.0, 0.0)], &[4], &[4]).is_err());
        assert!(StateVector::from_amplitudes(2, &[2], vec![c(1.0, 0.0); 3]).is_err());
        assert!(StateVector::from_amplitudes(2, &[2], vec![c(0.5, 0.0); 4]).is_ok());
        assert!(StateVector::from_amplitudes(2, &[2], vec![c(f64::NAN, 0.0); 4]).is_err());
    }
}
