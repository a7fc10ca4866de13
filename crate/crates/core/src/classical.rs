//! Exact classical density matrices: `ρ(ΔS)` for a set and `ρ(S)` for a
//! paradigm, with block probabilities and conditioning.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::incidence::IncidenceMatrix;
use crate::scalar::{fraction_string, q_int, ExactInt, Real, Q};
use crate::surd::Surd;
use crate::universe::{check_same, same_universe, Partition, Subset, Universe};

/// Point probabilities `p_j`, exact and summing to one.
#[derive(Debug, Clone)]
pub struct PointDistribution<I: ExactInt> {
    universe: Arc<Universe>,
    probs: Vec<Q<I>>,
}

impl<I: ExactInt> PointDistribution<I> {
    pub fn new(universe: &Arc<Universe>, probs: Vec<Q<I>>) -> Result<Self> {
        if probs.len() != universe.len() {
            return Err(Error::DimensionMismatch { expected: universe.len(), actual: probs.len() });
        }
        if probs.iter().any(Signed::is_negative) {
            return Err(Error::InvalidDistribution("negative probability".into()));
        }
        let total = probs.iter().fold(Q::<I>::zero(), |acc, p| acc + p.clone());
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {}", fraction_string(&total))));
        }
        Ok(Self { universe: Arc::clone(universe), probs })
    }

    pub fn uniform(universe: &Arc<Universe>) -> Self {
        let p = Q::<I>::one() / q_int::<I>(universe.len() as i64);
        Self { universe: Arc::clone(universe), probs: vec![p; universe.len()] }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn probs(&self) -> &[Q<I>] {
        &self.probs
    }

    /// `Pr(S) = Σ_{j∈S} p_j`.
    pub fn prob(&self, s: &Subset) -> Result<Q<I>> {
        check_same(&self.universe, s.universe())?;
        Ok(s.indices().fold(Q::zero(), |acc, j| acc + self.probs[j].clone()))
    }
}

/// Shape of a classical density's non-zero pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityForm {
    /// No off-diagonal mass: a statistical mixture over distinct elements.
    Diagonal,
    /// Rank one on a single support block: one indefinite paradigm.
    Paradigm,
    /// Several rank-one blocks, as left by sharpening a paradigm.
    Block,
}

impl DensityForm {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Diagonal => "diagonal",
            Self::Paradigm => "paradigm",
            Self::Block => "block",
        }
    }
}

/// Symmetric, trace-one, entrywise non-negative density with exact entries.
#[derive(Debug, Clone)]
pub struct ClassicalDensity<I: ExactInt> {
    universe: Arc<Universe>,
    entries: Vec<Surd<I>>,
}

impl<I: ExactInt> PartialEq for ClassicalDensity<I> {
    fn eq(&self, other: &Self) -> bool {
        same_universe(&self.universe, &other.universe) && self.entries == other.entries
    }
}

impl<I: ExactInt> ClassicalDensity<I> {
    fn from_fn(universe: &Arc<Universe>, f: impl Fn(usize, usize) -> Surd<I>) -> Self {
        let n = universe.len();
        let entries = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Self { universe: Arc::clone(universe), entries }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn n(&self) -> usize {
        self.universe.len()
    }

    pub fn get(&self, j: usize, k: usize) -> &Surd<I> {
        &self.entries[j * self.n() + k]
    }

    /// Diagonal entry `j`, always rational.
    pub fn diagonal(&self, j: usize) -> Q<I> {
        self.get(j, j).as_rational().expect("diagonal entries are rational")
    }

    pub fn rows(&self) -> Vec<Vec<Surd<I>>> {
        self.entries.chunks(self.n()).map(<[Surd<I>]>::to_vec).collect()
    }

    pub fn trace(&self) -> Q<I> {
        (0..self.n()).fold(Q::zero(), |acc, j| acc + self.diagonal(j))
    }

    pub fn to_real<T: Real>(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.n()).map(|row| row.iter().map(Surd::to_real).collect()).collect()
    }

    /// Connected components of the non-zero pattern, each sorted.
    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.get(start, start).is_zero() && (0..n).all(|k| self.get(start, k).is_zero()) {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(j) = stack.pop() {
                comp.push(j);
                for (k, s) in seen.iter_mut().enumerate() {
                    if !*s && !self.get(j, k).is_zero() {
                        *s = true;
                        stack.push(k);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn component_is_rank_one(&self, comp: &[usize]) -> bool {
        comp.iter().all(|&j| {
            comp.iter().all(|&k| {
                let e = self.get(j, k);
                *e.square() == self.diagonal(j) * self.diagonal(k) && !e.is_negative()
            })
        })
    }

    pub fn form(&self) -> DensityForm {
        let n = self.n();
        if (0..n).all(|j| (0..n).all(|k| j == k || self.get(j, k).is_zero())) {
            return DensityForm::Diagonal;
        }
        match self.components().as_slice() {
            [single] if self.component_is_rank_one(single) => DensityForm::Paradigm,
            _ => DensityForm::Block,
        }
    }

    /// Exact check of every density invariant. Positivity is certified by the
    /// non-zero pattern splitting into rank-one blocks with non-negative
    /// entries, which holds for everything this module constructs.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        for j in 0..n {
            for k in 0..n {
                if self.get(j, k) != self.get(k, j) {
                    return Err(Error::NotSymmetric);
                }
                if self.get(j, k).is_negative() {
                    return Err(Error::NotPositive);
                }
            }
        }
        if !self.trace().is_one() {
            return Err(Error::TraceNotOne(crate::scalar::ratio_to_real::<I, f64>(&self.trace())));
        }
        if self.components().iter().all(|c| self.component_is_rank_one(c)) {
            Ok(())
        } else {
            Err(Error::NotPositive)
        }
    }
}

impl<I: ExactInt> fmt::Display for ClassicalDensity<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> =
            self.entries.iter().map(|e| if e.is_zero() { "0".into() } else { e.to_string() }).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        for row in cells.chunks(self.n()) {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "{}", padded.join("  "))?;
        }
        Ok(())
    }
}

/// Normalizes an incidence matrix by its trace.
///
/// The matrix must be an equivalence relation on its diagonal support (a
/// union of all-ones blocks), which is exactly when a 0/1 matrix is PSD.
pub fn rho_from_incidence<I: ExactInt>(a: &IncidenceMatrix) -> Result<ClassicalDensity<I>> {
    let tr = a.trace();
    if tr == 0 {
        return Err(Error::ZeroTrace);
    }
    let n = a.n();
    for j in 0..n {
        for k in 0..n {
            if a.get(j, k) && !(a.get(j, j) && a.get(k, k)) {
                return Err(Error::NotPositive);
            }
            if a.get(j, k) && (0..n).any(|l| a.get(k, l) && !a.get(j, l)) {
                return Err(Error::NotPositive);
            }
        }
    }
    let value = Surd::from_rational(&(Q::<I>::one() / q_int::<I>(tr as i64)));
    Ok(ClassicalDensity::from_fn(a.universe(), |j, k| if a.get(j, k) { value.clone() } else { Surd::zero() }))
}

fn conditioning_mass<I: ExactInt>(s: &Subset, p: &PointDistribution<I>) -> Result<Q<I>> {
    let pr = p.prob(s)?;
    if pr.is_zero() {
        Err(Error::ZeroProbability)
    } else {
        Ok(pr)
    }
}

/// `ρ(ΔS)` with `(ρ)_{jj} = χ_S(u_j) p_j / Pr(S)`.
pub fn rho_diag<I: ExactInt>(s: &Subset, p: &PointDistribution<I>) -> Result<ClassicalDensity<I>> {
    let pr = conditioning_mass(s, p)?;
    Ok(ClassicalDensity::from_fn(s.universe(), |j, k| {
        if j == k && s.contains(j) {
            Surd::from_rational(&(p.probs[j].clone() / pr.clone()))
        } else {
            Surd::zero()
        }
    }))
}

/// `ρ(S)` with `(ρ)_{jk} = χ_S(u_j) χ_S(u_k) √(p_j p_k) / Pr(S)`.
pub fn rho_paradigm<I: ExactInt>(s: &Subset, p: &PointDistribution<I>) -> Result<ClassicalDensity<I>> {
    let pr = conditioning_mass(s, p)?;
    let pr2 = pr.clone() * pr;
    Ok(ClassicalDensity::from_fn(s.universe(), |j, k| {
        if s.contains(j) && s.contains(k) {
            let square = p.probs[j].clone() * p.probs[k].clone() / pr2.clone();
            Surd::sqrt_of(square).expect("probabilities are non-negative")
        } else {
            Surd::zero()
        }
    }))
}

/// `tr[P_B ρ]`.
pub fn prob_block<I: ExactInt>(rho: &ClassicalDensity<I>, b: &Subset) -> Result<Q<I>> {
    check_same(rho.universe(), b.universe())?;
    Ok(b.indices().fold(Q::zero(), |acc, j| acc + rho.diagonal(j)))
}

/// `In(indit(π)) ∧ ρ`: zeroes every entry linking different blocks.
pub fn sharpen_classical<I: ExactInt>(rho: &ClassicalDensity<I>, p: &Partition) -> Result<ClassicalDensity<I>> {
    check_same(rho.universe(), p.universe())?;
    Ok(ClassicalDensity::from_fn(
        rho.universe(),
        |j, k| {
            if p.same_block(j, k) {
                rho.get(j, k).clone()
            } else {
                Surd::zero()
            }
        },
    ))
}

/// Returns `(tr[P_B ρ], P_B ρ P_B / tr[P_B ρ])`.
pub fn project_conditional<I: ExactInt>(rho: &ClassicalDensity<I>, b: &Subset) -> Result<(Q<I>, ClassicalDensity<I>)> {
    let t = prob_block(rho, b)?;
    if t.is_zero() {
        return Err(Error::ZeroProbability);
    }
    let inv = Q::<I>::one() / t.clone();
    let post = ClassicalDensity::from_fn(rho.universe(), |j, k| {
        if b.contains(j) && b.contains(k) {
            rho.get(j, k).scale(&inv)
        } else {
            Surd::zero()
        }
    });
    Ok((t, post))
}
