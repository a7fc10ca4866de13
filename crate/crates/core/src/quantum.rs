//! Complex density matrices `ρ(ψ)` and `ρ(Δψ)`, the Lüders mixture,
//! Born-rule probabilities, seeded single-trial measurement and basis
//! changes.

use std::sync::Arc;

use num_complex::Complex;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::universe::{check_same, Partition, Universe};

/// Normalized state vector over an orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeVector<T: Real> {
    universe: Arc<Universe>,
    amps: Vec<Complex<T>>,
}

impl<T: Real> AmplitudeVector<T> {
    pub fn new(universe: &Arc<Universe>, amps: Vec<Complex<T>>) -> Result<Self> {
        if amps.len() != universe.len() {
            return Err(Error::DimensionMismatch { expected: universe.len(), actual: amps.len() });
        }
        let norm2 = amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr());
        if (norm2 - T::one()).abs() > T::IDENTITY_TOL {
            return Err(Error::NotNormalized(norm2.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self { universe: Arc::clone(universe), amps })
    }

    /// Rescales `amps` to unit norm first.
    pub fn normalized(universe: &Arc<Universe>, amps: Vec<Complex<T>>) -> Result<Self> {
        let norm = amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr()).sqrt();
        if norm.is_zero() || !norm.is_finite() {
            return Err(Error::NotNormalized(norm.to_f64().unwrap_or(f64::NAN)));
        }
        Self::new(universe, amps.into_iter().map(|a| a / norm).collect())
    }

    /// Basis vector `e_j`.
    pub fn basis(universe: &Arc<Universe>, j: usize) -> Self {
        let mut amps = vec![Complex::zero(); universe.len()];
        amps[j] = Complex::new(T::one(), T::zero());
        Self { universe: Arc::clone(universe), amps }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn amps(&self) -> &[Complex<T>] {
        &self.amps
    }

    /// Multiplies every amplitude by `e^{iθ}`.
    pub fn with_global_phase(&self, theta: T) -> Self {
        let phase = Complex::from_polar(T::one(), theta);
        Self { universe: Arc::clone(&self.universe), amps: self.amps.iter().map(|a| a * phase).collect() }
    }
}

/// Hermitian, trace-one, positive semidefinite complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumDensity<T: Real> {
    universe: Arc<Universe>,
    matrix: CMatrix<T>,
}

impl<T: Real> QuantumDensity<T> {
    pub fn new(universe: &Arc<Universe>, matrix: CMatrix<T>) -> Result<Self> {
        if matrix.n() != universe.len() {
            return Err(Error::DimensionMismatch { expected: universe.len(), actual: matrix.n() });
        }
        let rho = Self { universe: Arc::clone(universe), matrix };
        rho.check_invariants()?;
        Ok(rho)
    }

    pub fn check_invariants(&self) -> Result<()> {
        if !self.matrix.is_hermitian(T::IDENTITY_TOL) {
            return Err(Error::NotHermitian);
        }
        let tr = self.matrix.trace();
        if (tr.re - T::one()).abs() > T::IDENTITY_TOL || tr.im.abs() > T::IDENTITY_TOL {
            return Err(Error::TraceNotOne(tr.re.to_f64().unwrap_or(f64::NAN)));
        }
        if self.eigenvalues().first().is_some_and(|&e| e < -T::SPECTRAL_TOL) {
            return Err(Error::NotPositive);
        }
        Ok(())
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn get(&self, j: usize, k: usize) -> Complex<T> {
        self.matrix[(j, k)]
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        self.matrix.hermitian_eigenvalues()
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> T {
        self.matrix.matmul(&self.matrix).trace().re
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.matrix.max_abs_diff(&other.matrix)
    }

    fn with_matrix(&self, matrix: CMatrix<T>) -> Self {
        Self { universe: Arc::clone(&self.universe), matrix }
    }
}

/// Measured quantity: eigenvalue blocks of basis indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable<T: Real> {
    partition: Partition,
    eigenvalues: Vec<T>,
}

impl<T: Real> Observable<T> {
    /// One eigenvalue per block of `partition`, in block order.
    pub fn new(partition: Partition, eigenvalues: Vec<T>) -> Result<Self> {
        if eigenvalues.len() != partition.len() {
            return Err(Error::InvalidObservable);
        }
        for (i, a) in eigenvalues.iter().enumerate() {
            if !a.is_finite() || eigenvalues[..i].contains(a) {
                return Err(Error::InvalidObservable);
            }
        }
        Ok(Self { partition, eigenvalues })
    }

    /// Eigenvalue `i` for block `i`.
    pub fn indexed(partition: Partition) -> Self {
        let eigenvalues = (0..partition.len()).map(|i| T::from_usize(i).expect("index fits")).collect();
        Self { partition, eigenvalues }
    }

    /// Non-degenerate observable with eigenvalue `j` on basis state `j`.
    pub fn finest(universe: &Arc<Universe>) -> Self {
        Self::indexed(Partition::discrete(universe))
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    fn projector(&self, i: usize) -> CMatrix<T> {
        let n = self.partition.universe().len();
        let block = &self.partition.blocks()[i];
        CMatrix::from_fn(n, |j, k| {
            if j == k && block.contains(&j) {
                Complex::new(T::one(), T::zero())
            } else {
                Complex::zero()
            }
        })
    }
}

/// `ρ(ψ) = |ψ⟩⟨ψ|`.
pub fn rho_pure<T: Real>(psi: &AmplitudeVector<T>) -> QuantumDensity<T> {
    let a = &psi.amps;
    let matrix = CMatrix::from_fn(a.len(), |j, k| a[j] * a[k].conj());
    QuantumDensity { universe: Arc::clone(&psi.universe), matrix }
}

/// `ρ(Δψ)`: the squared moduli on the diagonal.
pub fn rho_decohered<T: Real>(psi: &AmplitudeVector<T>) -> QuantumDensity<T> {
    let a = &psi.amps;
    let matrix =
        CMatrix::from_fn(
            a.len(),
            |j, k| if j == k { Complex::new(a[j].norm_sqr(), T::zero()) } else { Complex::zero() },
        );
    QuantumDensity { universe: Arc::clone(&psi.universe), matrix }
}

/// Lüders mixture `Σ_i P_{B_i} ρ P_{B_i}`, cross-checked against zeroing the
/// cross-block entries.
pub fn luders<T: Real>(rho: &QuantumDensity<T>, obs: &Observable<T>) -> Result<QuantumDensity<T>> {
    check_same(&rho.universe, obs.partition.universe())?;
    let n = rho.n();
    let sandwich = (0..obs.partition.len()).fold(CMatrix::zeros(n), |acc, i| {
        let p = obs.projector(i);
        acc.add(&p.matmul(&rho.matrix).matmul(&p))
    });
    let mask =
        CMatrix::from_fn(n, |j, k| if obs.partition.same_block(j, k) { rho.matrix[(j, k)] } else { Complex::zero() });
    let diff = sandwich.max_abs_diff(&mask);
    if diff > T::IDENTITY_TOL {
        return Err(Error::InternalMismatch(format!("Lüders sandwich and block mask differ by {diff}")));
    }
    Ok(rho.with_matrix(sandwich))
}

fn block_prob<T: Real>(rho: &QuantumDensity<T>, block: &[usize]) -> T {
    block.iter().fold(T::zero(), |acc, &j| acc + rho.matrix[(j, j)].re)
}

/// `(φ_i, tr[P_{B_i} ρ])` for every block.
pub fn measure_prob<T: Real>(rho: &QuantumDensity<T>, obs: &Observable<T>) -> Result<Vec<(T, T)>> {
    check_same(&rho.universe, obs.partition.universe())?;
    Ok(obs.partition.blocks().iter().zip(&obs.eigenvalues).map(|(b, &phi)| (phi, block_prob(rho, b))).collect())
}

/// One seeded trial: picks block `i` with probability `tr[P_{B_i} ρ]` and
/// returns `(φ_i, P_{B_i} ρ P_{B_i} / tr[P_{B_i} ρ])`.
pub fn sample_measurement<T: Real>(
    rho: &QuantumDensity<T>,
    obs: &Observable<T>,
    seed: u64,
) -> Result<(T, QuantumDensity<T>)> {
    let probs = measure_prob(rho, obs)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = T::lit(rng.gen::<f64>());
    let mut chosen = None;
    let mut acc = T::zero();
    for (i, &(_, p)) in probs.iter().enumerate() {
        if p <= T::zero() {
            continue;
        }
        acc += p;
        chosen = Some(i);
        if draw < acc {
            break;
        }
    }
    let i = chosen.ok_or(Error::ZeroProbability)?;
    let p = obs.projector(i);
    let prob = probs[i].1;
    let post = p.matmul(&rho.matrix).matmul(&p);
    let post = CMatrix::from_fn(post.n(), |j, k| post[(j, k)] / prob);
    Ok((obs.eigenvalues[i], rho.with_matrix(post)))
}

/// `U ρ U†`.
pub fn change_basis<T: Real>(rho: &QuantumDensity<T>, u: &CMatrix<T>) -> Result<QuantumDensity<T>> {
    if u.n() != rho.n() {
        return Err(Error::DimensionMismatch { expected: rho.n(), actual: u.n() });
    }
    if !u.is_unitary(T::SPECTRAL_TOL) {
        return Err(Error::NotUnitary);
    }
    Ok(rho.with_matrix(u.matmul(&rho.matrix).matmul(&u.adjoint())))
}

/// Outcome distributions of `ρ(ψ)` and `ρ(Δψ)` measured in a rotated basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Distinguishability<T: Real> {
    pub pure: Vec<(T, T)>,
    pub decohered: Vec<(T, T)>,
    /// Largest absolute difference between the two outcome probabilities.
    pub gap: T,
}

/// Measures both `ρ(ψ)` and `ρ(Δψ)` in the basis rotated by `u` (finest
/// observable there) and reports how far apart the statistics are.
pub fn distinguish<T: Real>(psi: &AmplitudeVector<T>, u: &CMatrix<T>) -> Result<Distinguishability<T>> {
    let obs = Observable::finest(&psi.universe);
    let pure = measure_prob(&change_basis(&rho_pure(psi), u)?, &obs)?;
    let decohered = measure_prob(&change_basis(&rho_decohered(psi), u)?, &obs)?;
    let gap = pure.iter().zip(&decohered).fold(T::zero(), |m, (a, b)| m.max((a.1 - b.1).abs()));
    Ok(Distinguishability { pure, decohered, gap })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn spin() -> AmplitudeVector<f64> {
        let u = Universe::new(["up", "down"]).unwrap();
        let h = 0.5f64.sqrt();
        AmplitudeVector::new(&u, vec![c(h), c(h)]).unwrap()
    }

    fn close(a: &QuantumDensity<f64>, rows: &[&[f64]], tol: f64) -> bool {
        rows.iter().enumerate().all(|(j, r)| r.iter().enumerate().all(|(k, &v)| (a.get(j, k) - c(v)).norm() <= tol))
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn amplitude_validation() {
        let u = Universe::indexed(2).unwrap();
        assert!(matches!(AmplitudeVector::new(&u, vec![c(0.7071), c(0.7071)]), Err(Error::NotNormalized(_))));
        assert!(AmplitudeVector::new(&u, vec![c(1.0)]).is_err());
        let psi = AmplitudeVector::normalized(&u, vec![c(0.7071), c(0.7071)]).unwrap();
        assert!((psi.amps()[0].re - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(AmplitudeVector::<f64>::normalized(&u, vec![c(0.0), c(0.0)]).is_err());
    }

    #[test]
    fn pure_and_decohered() {
        let psi = spin();
        assert!(close(&rho_pure(&psi), &[&[0.5, 0.5], &[0.5, 0.5]], 1e-12));
        assert!(close(&rho_decohered(&psi), &[&[0.5, 0.0], &[0.0, 0.5]], 1e-12));

        let u = Universe::indexed(3).unwrap();
        let e1 = AmplitudeVector::<f64>::basis(&u, 1);
        assert_eq!(rho_pure(&e1), rho_decohered(&e1));
        assert!(close(&rho_pure(&e1), &[&[0.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 0.0]], 0.0));

        let h = 0.5f64.sqrt();
        let minus = AmplitudeVector::new(psi.universe(), vec![c(h), c(-h)]).unwrap();
        assert!(close(&rho_pure(&minus), &[&[0.5, -0.5], &[-0.5, 0.5]], 1e-12));

        let third =
            AmplitudeVector::new(psi.universe(), vec![c((1.0f64 / 3.0).sqrt()), c((2.0f64 / 3.0).sqrt())]).unwrap();
        assert!(close(&rho_decohered(&third), &[&[1.0 / 3.0, 0.0], &[0.0, 2.0 / 3.0]], 1e-12));
    }

    #[test]
    fn density_validation() {
        let u = Universe::indexed(2).unwrap();
        let not_herm = CMatrix::from_rows(vec![vec![c(0.5), c(0.5)], vec![c(0.0), c(0.5)]]).unwrap();
        assert_eq!(QuantumDensity::new(&u, not_herm).unwrap_err(), Error::NotHermitian);
        let bad_trace = CMatrix::from_rows(vec![vec![c(0.5), c(0.0)], vec![c(0.0), c(0.6)]]).unwrap();
        assert!(matches!(QuantumDensity::new(&u, bad_trace), Err(Error::TraceNotOne(_))));
        let negative = CMatrix::from_rows(vec![vec![c(0.5), c(1.0)], vec![c(1.0), c(0.5)]]).unwrap();
        assert_eq!(QuantumDensity::new(&u, negative).unwrap_err(), Error::NotPositive);
        rho_pure(&spin()).check_invariants().unwrap();
    }

    #[test]
    fn luders_on_spin() {
        let psi = spin();
        let obs = Observable::new(Partition::discrete(psi.universe()), vec![0.5, -0.5]).unwrap();
        let mixed = luders(&rho_pure(&psi), &obs).unwrap();
        assert!(mixed.max_abs_diff(&rho_decohered(&psi)) <= 1e-12);
        let trivial = Observable::indexed(Partition::indiscrete(psi.universe()));
        assert_eq!(luders(&rho_pure(&psi), &trivial).unwrap(), rho_pure(&psi));
    }

    #[test]
    fn luders_on_parity_blocks() {
        let u = Universe::indexed(4).unwrap();
        let psi = AmplitudeVector::new(&u, vec![c(0.5); 4]).unwrap();
        let rho = rho_pure(&psi);
        let parity = Observable::indexed(Partition::new(&u, vec![vec![1, 3], vec![0, 2]]).unwrap());
        let out = luders(&rho, &parity).unwrap();
        for j in 0..4 {
            for k in 0..4 {
                let expect = if j % 2 == k % 2 { 0.25 } else { 0.0 };
                assert!((out.get(j, k) - c(expect)).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn observable_validation() {
        let u = Universe::indexed(2).unwrap();
        assert_eq!(Observable::new(Partition::discrete(&u), vec![1.0, 1.0]).unwrap_err(), Error::InvalidObservable);
        assert_eq!(Observable::new(Partition::discrete(&u), vec![1.0]).unwrap_err(), Error::InvalidObservable);
    }

    #[test]
    fn born_probabilities() {
        let psi = spin();
        let obs = Observable::new(Partition::discrete(psi.universe()), vec![0.5, -0.5]).unwrap();
        let probs = measure_prob(&rho_pure(&psi), &obs).unwrap();
        assert_eq!(probs.len(), 2);
        assert_eq!(probs[0].0, 0.5);
        assert!((probs[0].1 - 0.5).abs() <= 1e-12 && (probs[1].1 - 0.5).abs() <= 1e-12);
        assert_eq!(probs, measure_prob(&rho_decohered(&psi), &obs).unwrap());

        let u = Universe::indexed(3).unwrap();
        let point = rho_pure(&AmplitudeVector::<f64>::basis(&u, 2));
        let obs = Observable::indexed(Partition::new(&u, vec![vec![0, 2], vec![1]]).unwrap());
        assert_eq!(measure_prob(&point, &obs).unwrap(), vec![(0.0, 1.0), (1.0, 0.0)]);
    }

    #[test]
    fn sampling_is_seeded() {
        let u = Universe::indexed(3).unwrap();
        let point = rho_pure(&AmplitudeVector::<f64>::basis(&u, 1));
        let obs = Observable::<f64>::finest(&u);
        for seed in 0..20 {
            let (phi, post) = sample_measurement(&point, &obs, seed).unwrap();
            assert_eq!(phi, 1.0);
            assert!(post.max_abs_diff(&point) <= 1e-15);
        }
        let psi = spin();
        let obs = Observable::finest(psi.universe());
        let a = sample_measurement(&rho_pure(&psi), &obs, 42).unwrap();
        let b = sample_measurement(&rho_pure(&psi), &obs, 42).unwrap();
        assert_eq!(a, b);
        a.1.check_invariants().unwrap();
    }

    #[test]
    fn basis_changes() {
        let psi = spin();
        let rho = rho_pure(&psi);
        assert!(change_basis(&rho, &CMatrix::identity(2)).unwrap().max_abs_diff(&rho) <= 1e-15);
        let rotated = change_basis(&rho, &CMatrix::hadamard()).unwrap();
        assert!(close(&rotated, &[&[1.0, 0.0], &[0.0, 0.0]], 1e-12));
        let mixed = change_basis(&rho_decohered(&psi), &CMatrix::hadamard()).unwrap();
        assert!(close(&mixed, &[&[0.5, 0.0], &[0.0, 0.5]], 1e-12));
        let not_unitary = CMatrix::from_rows(vec![vec![c(1.0), c(1.0)], vec![c(0.0), c(1.0)]]).unwrap();
        assert_eq!(change_basis(&rho, &not_unitary).unwrap_err(), Error::NotUnitary);
        assert!(change_basis(&rho, &CMatrix::identity(3)).is_err());
    }

    #[test]
    fn distinguishing_pure_from_mixed() {
        let psi = spin();
        let same = distinguish(&psi, &CMatrix::identity(2)).unwrap();
        assert!(same.gap <= 1e-12);
        let rotated = distinguish(&psi, &CMatrix::hadamard()).unwrap();
        assert!((rotated.pure[0].1 - 1.0).abs() <= 1e-10 && rotated.pure[1].1.abs() <= 1e-10);
        assert!((rotated.decohered[0].1 - 0.5).abs() <= 1e-10);
        assert!((rotated.gap - 0.5).abs() <= 1e-10);
        let e0 = AmplitudeVector::<f64>::basis(psi.universe(), 0);
        assert!(distinguish(&e0, &CMatrix::hadamard()).unwrap().gap <= 1e-12);
    }

    #[test]
    fn works_in_single_precision() {
        let u = Universe::indexed(2).unwrap();
        let h = 0.5f32.sqrt();
        let psi = AmplitudeVector::<f32>::new(&u, vec![Complex::new(h, 0.0); 2]).unwrap();
        let report = distinguish(&psi, &CMatrix::hadamard()).unwrap();
        assert!((report.gap - 0.5).abs() <= f32::SPECTRAL_TOL);
        rho_pure(&psi).check_invariants().unwrap();
    }
}
