use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::state::PureState;
use crate::error::{out_of_range, Error, Result};
use crate::inequality::{Behavior, ModularTable, Party, Triple};

/// Phase vectors `phi[party][setting - 1]`, each of length `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseSettings {
    d: usize,
    phases: [[Vec<f64>; 2]; 3],
}

impl PhaseSettings {
    pub fn new(d: usize, phases: [[Vec<f64>; 2]; 3]) -> Result<Self> {
        if d < 2 {
            return Err(out_of_range("local dimension", format!("{d} < 2")));
        }
        for (p, pair) in phases.iter().enumerate() {
            for (s, v) in pair.iter().enumerate() {
                if v.len() != d {
                    return Err(Error::Invalid(format!(
                        "phase vector {}{} has length {}, expected {d}",
                        Party::from_index(p),
                        s + 1,
                        v.len()
                    )));
                }
            }
        }
        Ok(PhaseSettings { d, phases })
    }

    /// The same two vectors for every party.
    pub fn symmetric(first: Vec<f64>, second: Vec<f64>) -> Result<Self> {
        let d = first.len();
        PhaseSettings::new(
            d,
            [
                [first.clone(), second.clone()],
                [first.clone(), second.clone()],
                [first, second],
            ],
        )
    }

    pub fn zeros(d: usize) -> Result<Self> {
        PhaseSettings::symmetric(vec![0.0; d], vec![0.0; d])
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, party: Party, setting: u8) -> &[f64] {
        &self.phases[party.index()][usize::from(setting - 1)]
    }

    pub fn get_mut(&mut self, party: Party, setting: u8) -> &mut [f64] {
        &mut self.phases[party.index()][usize::from(setting - 1)]
    }

    /// `phi^l_A + phi^l_B + phi^l_C` for the settings of `t`.
    pub fn summed(&self, t: Triple) -> Vec<f64> {
        (0..self.d)
            .map(|l| Party::ALL.iter().map(|&p| self.get(p, t.setting(p))[l]).sum())
            .collect()
    }
}

/// `U_kl = d^{-1/2} alpha^{kl} e^{i phi_l}`, `alpha = e^{2 pi i / d}`, row-major.
pub fn multiport_unitary(d: usize, phi: &[f64]) -> Result<Vec<Complex64>> {
    if phi.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: phi.len(),
        });
    }
    let norm = 1.0 / (d as f64).sqrt();
    let mut u = Vec::with_capacity(d * d);
    for k in 0..d {
        for (l, &p) in phi.iter().enumerate() {
            let angle = 2.0 * PI * ((k * l) % d) as f64 / d as f64 + p;
            u.push(Complex64::from_polar(norm, angle));
        }
    }
    Ok(u)
}

/// Applies a `d x d` matrix to one tensor factor of a three-party state.
pub(crate) fn apply_local(d: usize, amps: &[Complex64], m: &[Complex64], party: Party) -> Vec<Complex64> {
    let stride = match party {
        Party::A => d * d,
        Party::B => d,
        Party::C => 1,
    };
    let mut out = vec![Complex64::ZERO; amps.len()];
    for (idx, slot) in out.iter_mut().enumerate() {
        let x = (idx / stride) % d;
        let rest = idx - x * stride;
        *slot = (0..d).map(|y| m[x * d + y] * amps[rest + y * stride]).sum();
    }
    out
}

/// `P(a,b,c) = |<abc| U_A x U_B x U_C |psi>|^2` for one setting triple, `c` fastest.
pub fn joint_distribution(state: &PureState, settings: &PhaseSettings, t: Triple) -> Result<Vec<f64>> {
    let d = state.d();
    if settings.d() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: settings.d(),
        });
    }
    let mut amps = state.amplitudes().to_vec();
    for p in Party::ALL {
        let u = multiport_unitary(d, settings.get(p, t.setting(p)))?;
        amps = apply_local(d, &amps, &u, p);
    }
    Ok(amps.iter().map(|a| a.norm_sqr()).collect())
}

/// All eight joint distributions, computed concurrently and stored in triple order.
pub fn joint_behavior(state: &PureState, settings: &PhaseSettings) -> Result<Behavior> {
    let blocks = Triple::ALL
        .par_iter()
        .map(|&t| joint_distribution(state, settings, t))
        .collect::<Result<Vec<_>>>()?;
    let mut behavior = Behavior::from_blocks(state.d(), &blocks);
    if behavior.is_err() {
        // Rounding can push a sum a few ulps past the tolerance; renormalize.
        let fixed: Vec<Vec<f64>> = blocks
            .into_iter()
            .map(|b| {
                let s: f64 = b.iter().sum();
                b.into_iter().map(|x| x / s).collect()
            })
            .collect();
        behavior = Behavior::from_blocks(state.d(), &fixed);
    }
    behavior
}

/// Modular table of the multiport statistics, by tensor contraction.
pub fn quantum_table(state: &PureState, settings: &PhaseSettings) -> Result<ModularTable> {
    joint_behavior(state, settings)?.modular_table(state.d())
}

/// Sequential contraction straight into residues; used inside optimizer loops
/// that are already parallel.
pub(crate) fn contract_table(state: &PureState, settings: &PhaseSettings) -> Result<ModularTable> {
    let d = state.d();
    let mut p = vec![0.0; 8 * d];
    for t in Triple::ALL {
        let joint = joint_distribution(state, settings, t)?;
        let row = &mut p[t.index() * d..(t.index() + 1) * d];
        for (idx, x) in joint.iter().enumerate() {
            row[(idx / (d * d) + (idx / d) % d + idx % d) % d] += x;
        }
    }
    Ok(ModularTable::from_raw(d, p))
}

/// `P(r) = d^{-2} [d + 2 sum_{m<l} cos(Phi_l - Phi_m + 2 pi (l-m) r / d)]` for
/// the qudit GHZ state, with `Phi` the summed phases.
pub fn ghz_closed_form_table(settings: &PhaseSettings) -> ModularTable {
    let d = settings.d();
    let df = d as f64;
    let mut p = vec![0.0; 8 * d];
    for t in Triple::ALL {
        let phi = settings.summed(t);
        for r in 0..d {
            let mut s = df;
            for l in 0..d {
                for m in 0..l {
                    s += 2.0 * (phi[l] - phi[m] + 2.0 * PI * ((l - m) * r) as f64 / df).cos();
                }
            }
            p[t.index() * d + r] = (s / (df * df)).max(0.0);
        }
    }
    ModularTable::from_raw(d, p)
}

/// White-noise admixture `F` in `[0, 1]`.
#[derive(Copy, Clone, Debug, PartialEq, PartialOrd)]
pub struct NoiseParameter(f64);

impl NoiseParameter {
    pub fn new(f: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&f) {
            return Err(out_of_range("noise parameter", format!("{f} not in [0, 1]")));
        }
        Ok(NoiseParameter(f))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `(1 - F) p + F / d`: the table of `(1 - F)|psi><psi| + F I/d^3`.
pub fn mix_white_noise(table: &ModularTable, f: NoiseParameter) -> ModularTable {
    table
        .mix(&ModularTable::uniform(table.d()), 1.0 - f.value())
        .expect("same dimension")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_settings(d: usize, rng: &mut impl Rng) -> PhaseSettings {
        let mut v = || (0..d).map(|_| rng.random_range(-PI..PI)).collect::<Vec<f64>>();
        PhaseSettings::new(d, [[v(), v()], [v(), v()], [v(), v()]]).unwrap()
    }

    #[test]
    fn qubit_hadamard() {
        let u = multiport_unitary(2, &[0.0, 0.0]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let want = [h, h, h, -h];
        for (z, w) in u.iter().zip(want) {
            assert!((z - Complex64::new(w, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn unitarity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for d in 2..=6 {
            let phi: Vec<f64> = (0..d).map(|_| rng.random_range(-PI..PI)).collect();
            let u = multiport_unitary(d, &phi).unwrap();
            for i in 0..d {
                for j in 0..d {
                    let z: Complex64 = (0..d).map(|k| u[i * d + k] * u[j * d + k].conj()).sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((z - Complex64::new(want, 0.0)).norm() < 1e-12);
                }
            }
        }
        assert!(multiport_unitary(3, &[0.0; 2]).is_err());
    }

    #[test]
    fn ghz_at_zero_phases_concentrates_on_residue_zero() {
        for d in [4, 5] {
            let t = quantum_table(&PureState::ghz(d).unwrap(), &PhaseSettings::zeros(d).unwrap()).unwrap();
            let c = ghz_closed_form_table(&PhaseSettings::zeros(d).unwrap());
            for tr in Triple::ALL {
                assert!((t.get(tr, 0) - 1.0).abs() < 1e-12);
                assert!((c.get(tr, 0) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn product_state_factorizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let d = 3;
        let s = random_settings(d, &mut rng);
        let state = PureState::basis(d, 0, 0, 0).unwrap();
        let p = joint_distribution(&state, &s, Triple([1, 2, 1])).unwrap();
        let marg = |axis: usize, x: usize| -> f64 {
            (0..d * d * d)
                .filter(|idx| [idx / (d * d), (idx / d) % d, idx % d][axis] == x)
                .map(|idx| p[idx])
                .sum()
        };
        for idx in 0..d * d * d {
            let (a, b, c) = (idx / (d * d), (idx / d) % d, idx % d);
            assert!((p[idx] - marg(0, a) * marg(1, b) * marg(2, c)).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_matches_contraction() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in 2..=6 {
            let ghz = PureState::ghz(d).unwrap();
            for _ in 0..20 {
                let s = random_settings(d, &mut rng);
                let a = quantum_table(&ghz, &s).unwrap();
                let b = ghz_closed_form_table(&s);
                assert!(a.max_abs_diff(&b) < 1e-12, "d={d}");
            }
        }
    }

    #[test]
    fn noise_endpoints() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let t = ghz_closed_form_table(&random_settings(4, &mut rng));
        assert_eq!(mix_white_noise(&t, NoiseParameter::new(0.0).unwrap()), t);
        let u = mix_white_noise(&t, NoiseParameter::new(1.0).unwrap());
        assert!(u.max_abs_diff(&ModularTable::uniform(4)) < 1e-15);
        assert!(NoiseParameter::new(1.5).is_err());
    }
}
