use num_complex::Complex64;

use super::multiport::apply_local;
use super::state::PureState;
use crate::error::{Error, Result};
use crate::inequality::correlation::{Correlator, CorrelationValues};
use crate::inequality::{Behavior, Party, Triple};

/// Dichotomic observable `n . sigma` with eigenvalue `+1` reported as outcome 0.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct QubitObservable {
    n: [f64; 3],
}

impl QubitObservable {
    pub fn new(n: [f64; 3]) -> Result<Self> {
        let norm = n.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::Invalid(format!("Bloch vector {n:?} has norm {norm}")));
        }
        Ok(QubitObservable { n })
    }

    /// Polar angle `theta` from the z axis, azimuth `phi`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        QubitObservable {
            n: [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()],
        }
    }

    pub fn z() -> Self {
        QubitObservable { n: [0.0, 0.0, 1.0] }
    }

    pub fn x() -> Self {
        QubitObservable { n: [1.0, 0.0, 0.0] }
    }

    pub fn bloch(&self) -> [f64; 3] {
        self.n
    }

    /// `(theta, phi)` with `theta` in `[0, pi]`.
    pub fn angles(&self) -> (f64, f64) {
        (self.n[2].clamp(-1.0, 1.0).acos(), self.n[1].atan2(self.n[0]))
    }

    /// Row-major `n . sigma`.
    pub fn matrix(&self) -> [Complex64; 4] {
        let [x, y, z] = self.n;
        [
            Complex64::new(z, 0.0),
            Complex64::new(x, -y),
            Complex64::new(x, y),
            Complex64::new(-z, 0.0),
        ]
    }

    /// Projector onto outcome `v` (0 for eigenvalue +1, 1 for -1).
    pub fn projector(&self, v: usize) -> [Complex64; 4] {
        let s = if v == 0 { 0.5 } else { -0.5 };
        let m = self.matrix();
        let id = [1.0, 0.0, 0.0, 1.0];
        std::array::from_fn(|i| Complex64::new(0.5 * id[i], 0.0) + m[i] * s)
    }

    /// The observable measured by a two-port device with phases `(phi0, phi1)`:
    /// `U^dagger Z U`, whose Bloch vector is `(cos D, -sin D, 0)` with
    /// `D = phi1 - phi0`.
    pub fn from_multiport(phi: [f64; 2]) -> Self {
        let delta = phi[1] - phi[0];
        QubitObservable {
            n: [delta.cos(), -delta.sin(), 0.0],
        }
    }
}

/// Two observables per party: `obs[party][setting - 1]`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct QubitSettings {
    pub obs: [[QubitObservable; 2]; 3],
}

impl QubitSettings {
    /// Twelve angles ordered `(theta, phi)` for A1, A2, B1, B2, C1, C2.
    pub fn from_angles(x: &[f64]) -> Result<Self> {
        if x.len() != 12 {
            return Err(Error::DimensionMismatch {
                expected: 12,
                found: x.len(),
            });
        }
        let o = |i: usize| QubitObservable::from_angles(x[2 * i], x[2 * i + 1]);
        Ok(QubitSettings {
            obs: [[o(0), o(1)], [o(2), o(3)], [o(4), o(5)]],
        })
    }

    pub fn to_angles(&self) -> Vec<f64> {
        self.obs
            .iter()
            .flatten()
            .flat_map(|o| {
                let (t, p) = o.angles();
                [t, p]
            })
            .collect()
    }

    pub fn get(&self, party: Party, setting: u8) -> QubitObservable {
        self.obs[party.index()][usize::from(setting - 1)]
    }
}

fn require_qubits(state: &PureState) -> Result<()> {
    if state.d() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: state.d(),
        });
    }
    Ok(())
}

/// One expectation `<psi| O_A x O_B x O_C |psi>`, identity on absent parties.
pub fn qubit_expectation(state: &PureState, settings: &QubitSettings, c: Correlator) -> Result<f64> {
    require_qubits(state)?;
    Ok(expectation(state.amplitudes(), settings, c))
}

/// `m` acting on the qubit with index stride `stride` (4 for A, 2 for B, 1 for C).
fn apply_qubit(m: &[Complex64; 4], v: &[Complex64; 8], stride: usize) -> [Complex64; 8] {
    std::array::from_fn(|idx| {
        let rest = idx & !stride;
        let x = usize::from(idx & stride != 0);
        m[2 * x] * v[rest] + m[2 * x + 1] * v[rest | stride]
    })
}

fn expectation(psi: &[Complex64], settings: &QubitSettings, c: Correlator) -> f64 {
    let psi: &[Complex64; 8] = psi.try_into().expect("three qubits");
    let mut v = *psi;
    for p in Party::ALL {
        if let Some(s) = c.setting(p) {
            v = apply_qubit(&settings.get(p, s).matrix(), &v, [4, 2, 1][p.index()]);
        }
    }
    psi.iter().zip(&v).map(|(a, b)| (a.conj() * b).re).sum()
}

/// Every `E` term: triples, pairs and singles, identity on absent parties.
pub fn qubit_expectations(state: &PureState, settings: &QubitSettings) -> Result<CorrelationValues> {
    require_qubits(state)?;
    Ok(CorrelationValues::from_fn(|c| expectation(state.amplitudes(), settings, c)))
}

/// Full binary-outcome behavior of projective qubit measurements.
pub fn qubit_behavior(state: &PureState, settings: &QubitSettings) -> Result<Behavior> {
    require_qubits(state)?;
    let psi = state.amplitudes();
    let mut blocks = Vec::with_capacity(8);
    for t in Triple::ALL {
        let mut block = vec![0.0; 8];
        for (idx, slot) in block.iter_mut().enumerate() {
            let outcome = [idx >> 2, (idx >> 1) & 1, idx & 1];
            let mut v = psi.to_vec();
            for p in Party::ALL {
                let proj = settings.get(p, t.setting(p)).projector(outcome[p.index()]);
                v = apply_local(2, &v, &proj, p);
            }
            *slot = v.iter().map(|z| z.norm_sqr()).sum::<f64>().max(0.0);
        }
        let s: f64 = block.iter().sum();
        blocks.push(block.into_iter().map(|x| x / s).collect());
    }
    Behavior::from_blocks(2, &blocks)
}

/// Entanglement of a three-qubit pure state across each single-party cut.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct EntanglementReport {
    /// Smallest eigenvalue of each single-party reduced state.
    pub min_eigenvalues: [f64; 3],
    /// `entangled_cuts[p]`: party `p` is entangled with the other two.
    pub entangled_cuts: [bool; 3],
}

impl EntanglementReport {
    /// Genuinely entangled: no cut is a product.
    pub fn is_entangled(&self) -> bool {
        self.entangled_cuts.iter().all(|&e| e)
    }

    pub fn is_fully_product(&self) -> bool {
        self.entangled_cuts.iter().all(|&e| !e)
    }

    pub fn product_cuts(&self) -> Vec<Party> {
        Party::ALL
            .into_iter()
            .filter(|p| !self.entangled_cuts[p.index()])
            .collect()
    }
}

pub const PRODUCT_EIGENVALUE_CUTOFF: f64 = 1e-10;

pub fn entanglement_check(state: &PureState) -> Result<EntanglementReport> {
    require_qubits(state)?;
    let mut min_eigenvalues = [0.0; 3];
    for p in Party::ALL {
        let stride = [4, 2, 1][p.index()];
        let mut rho = [Complex64::ZERO; 4];
        for idx in 0..8 {
            if (idx / stride) % 2 == 1 {
                continue;
            }
            let a0 = state.amplitudes()[idx];
            let a1 = state.amplitudes()[idx + stride];
            rho[0] += a0 * a0.conj();
            rho[1] += a0 * a1.conj();
            rho[2] += a1 * a0.conj();
            rho[3] += a1 * a1.conj();
        }
        let det = (rho[0] * rho[3] - rho[1] * rho[2]).re;
        let trace = (rho[0] + rho[3]).re;
        let disc = (trace * trace - 4.0 * det).max(0.0).sqrt();
        // Stable smaller root: det / larger root.
        let larger = 0.5 * (trace + disc);
        min_eigenvalues[p.index()] = if larger > 0.0 { (det / larger).max(0.0) } else { 0.0 };
    }
    Ok(EntanglementReport {
        min_eigenvalues,
        entangled_cuts: min_eigenvalues.map(|l| l >= PRODUCT_EIGENVALUE_CUTOFF),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn all_same(o: QubitObservable) -> QubitSettings {
        QubitSettings { obs: [[o; 2]; 3] }
    }

    #[test]
    fn z_on_all_zeros() {
        let s = PureState::basis(2, 0, 0, 0).unwrap();
        let e = qubit_expectations(&s, &all_same(QubitObservable::z())).unwrap();
        for c in Correlator::all() {
            assert!((e.get(c).unwrap() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn ghz_z_correlations() {
        let s = PureState::generalized_ghz(FRAC_PI_4).unwrap();
        let e = qubit_expectations(&s, &all_same(QubitObservable::z())).unwrap();
        for c in Correlator::all() {
            let want = if c.order() == 2 { 1.0 } else { 0.0 };
            assert!((e.get(c).unwrap() - want).abs() < 1e-12, "{c}");
        }
        let x = qubit_expectations(&s, &all_same(QubitObservable::x())).unwrap();
        assert!((x.get(Correlator::triple(1, 1, 1)).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn behavior_marginals_match_expectations() {
        let s = PureState::random(2, 11).unwrap();
        let settings = QubitSettings::from_angles(&[0.3, 0.1, 1.2, -0.4, 2.0, 0.7, 0.5, 3.0, 1.1, 1.9, 2.4, -2.2]).unwrap();
        let e = qubit_expectations(&s, &settings).unwrap();
        let b = qubit_behavior(&s, &settings).unwrap();
        let from_b = crate::inequality::correlation::expectations_from_joint(&b).unwrap();
        for c in Correlator::all() {
            assert!((e.get(c).unwrap() - from_b.get(c).unwrap()).abs() < 1e-12, "{c}");
        }
    }

    #[test]
    fn angles_round_trip() {
        let x = [0.3, 0.1, 1.2, -0.4, 2.0, 0.7, 0.5, 3.0, 1.1, 1.9, 2.4, -2.2];
        let s = QubitSettings::from_angles(&x).unwrap();
        let back = QubitSettings::from_angles(&s.to_angles()).unwrap();
        for (a, b) in s.obs.iter().flatten().zip(back.obs.iter().flatten()) {
            for k in 0..3 {
                assert!((a.bloch()[k] - b.bloch()[k]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn entanglement_classes() {
        let prod = entanglement_check(&PureState::basis(2, 0, 0, 0).unwrap()).unwrap();
        assert!(prod.is_fully_product() && !prod.is_entangled());
        let ghz = entanglement_check(&PureState::generalized_ghz(FRAC_PI_4).unwrap()).unwrap();
        assert!(ghz.is_entangled());
        for l in ghz.min_eigenvalues {
            assert!((l - 0.5).abs() < 1e-12);
        }
        let w = entanglement_check(&PureState::generalized_w(FRAC_PI_2, 0.6).unwrap()).unwrap();
        assert!(!w.is_entangled());
        assert_eq!(w.product_cuts(), vec![Party::C]);
        assert!(entanglement_check(&PureState::w()).unwrap().is_entangled());
    }
}
