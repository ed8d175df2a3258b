use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{out_of_range, Error, Result};

const NORM_TOL: f64 = 1e-12;

/// Pure state of three `d`-level systems; amplitude of `|abc>` at `(a*d + b)*d + c`.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    d: usize,
    amps: Vec<Complex64>,
}

impl PureState {
    pub fn new(d: usize, amps: Vec<Complex64>) -> Result<Self> {
        if d < 2 {
            return Err(out_of_range("local dimension", format!("{d} < 2")));
        }
        if amps.len() != d.pow(3) {
            return Err(Error::Invalid(format!(
                "state with d={d} needs {} amplitudes, got {}",
                d.pow(3),
                amps.len()
            )));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Invalid(format!("state norm is {norm}, expected 1")));
        }
        Ok(PureState { d, amps })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(d: usize, mut amps: Vec<Complex64>) -> Result<Self> {
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) {
            return Err(Error::Invalid("cannot normalize the zero vector".into()));
        }
        for a in &mut amps {
            *a /= norm;
        }
        PureState::new(d, amps)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, a: usize, b: usize, c: usize) -> Complex64 {
        self.amps[(a * self.d + b) * self.d + c]
    }

    pub fn index(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.d + b) * self.d + c
    }

    /// `|abc>`.
    pub fn basis(d: usize, a: usize, b: usize, c: usize) -> Result<Self> {
        if a.max(b).max(c) >= d {
            return Err(out_of_range("basis label", format!("({a},{b},{c}) with d={d}")));
        }
        let mut amps = vec![Complex64::ZERO; d.pow(3)];
        amps[(a * d + b) * d + c] = Complex64::ONE;
        PureState::new(d, amps)
    }

    /// `d^{-1/2} sum_k |kkk>`.
    pub fn ghz(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(out_of_range("local dimension", format!("{d} < 2")));
        }
        let mut amps = vec![Complex64::ZERO; d.pow(3)];
        let w = 1.0 / (d as f64).sqrt();
        for k in 0..d {
            amps[(k * d + k) * d + k] = Complex64::new(w, 0.0);
        }
        PureState::new(d, amps)
    }

    /// `cos(xi)|000> + sin(xi)|111>` with `0 <= xi <= pi/2`.
    pub fn generalized_ghz(xi: f64) -> Result<Self> {
        check_angle("xi", xi)?;
        let mut amps = vec![Complex64::ZERO; 8];
        amps[0] = xi.cos().into();
        amps[7] = xi.sin().into();
        PureState::normalized(2, amps)
    }

    /// `sin(beta)cos(xi)|100> + sin(beta)sin(xi)|010> + cos(beta)|001>` with
    /// both angles in `[0, pi/2]`.
    pub fn generalized_w(beta: f64, xi: f64) -> Result<Self> {
        check_angle("beta", beta)?;
        check_angle("xi", xi)?;
        let mut amps = vec![Complex64::ZERO; 8];
        amps[0b100] = (beta.sin() * xi.cos()).into();
        amps[0b010] = (beta.sin() * xi.sin()).into();
        amps[0b001] = beta.cos().into();
        PureState::normalized(2, amps)
    }

    /// The symmetric W state `(|100> + |010> + |001>)/sqrt(3)`.
    pub fn w() -> Self {
        let beta = (1.0f64 / 3.0).sqrt().acos();
        PureState::generalized_w(beta, std::f64::consts::FRAC_PI_4).expect("angles in range")
    }

    /// `sqrt(mu0)|000> + sqrt(mu1)e^{i phi}|100> + sqrt(mu2)|101> +
    /// sqrt(mu3)|110> + sqrt(mu4)|111>`, with `mu >= 0`, `sum mu = 1` and
    /// `0 <= phi <= pi`.
    pub fn canonical(mu: [f64; 5], phi: f64) -> Result<Self> {
        if let Some(m) = mu.iter().find(|&&m| !(m >= 0.0)) {
            return Err(out_of_range("mu", format!("{m} is negative")));
        }
        let total: f64 = mu.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Invalid(format!("mu sums to {total}, expected 1")));
        }
        if !(0.0..=std::f64::consts::PI).contains(&phi) {
            return Err(out_of_range("phi", format!("{phi} not in [0, pi]")));
        }
        let mut amps = vec![Complex64::ZERO; 8];
        amps[0b000] = mu[0].sqrt().into();
        amps[0b100] = Complex64::from_polar(mu[1].sqrt(), phi);
        amps[0b101] = mu[2].sqrt().into();
        amps[0b110] = mu[3].sqrt().into();
        amps[0b111] = mu[4].sqrt().into();
        PureState::normalized(2, amps)
    }

    /// Unitarily invariant random state: normalized complex Gaussian vector.
    pub fn random(d: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let amps = (0..d.pow(3))
            .map(|_| {
                Complex64::new(
                    StandardNormal.sample(&mut rng),
                    StandardNormal.sample(&mut rng),
                )
            })
            .collect();
        PureState::normalized(d, amps)
    }

    /// `e^{i theta} |psi>`.
    pub fn with_global_phase(&self, theta: f64) -> Self {
        let z = Complex64::from_polar(1.0, theta);
        PureState {
            d: self.d,
            amps: self.amps.iter().map(|a| a * z).collect(),
        }
    }

    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: other.d,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

fn check_angle(what: &'static str, x: f64) -> Result<()> {
    if !(0.0..=FRAC_PI_2).contains(&x) {
        return Err(out_of_range(what, format!("{x} not in [0, pi/2]")));
    }
    Ok(())
}
