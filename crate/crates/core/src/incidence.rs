//! Boolean incidence matrices for sets (`In(ΔS)`) and paradigms (`In(S×S)`),
//! the Boolean algebra of paradigms under blob-sum, and sharpening by
//! partitions.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::universe::{check_same, same_universe, Partition, Subset, Universe};

/// Symmetric n×n 0/1 matrix indexed by a universe.
#[derive(Debug, Clone)]
pub struct IncidenceMatrix {
    universe: Arc<Universe>,
    entries: Vec<bool>,
}

impl PartialEq for IncidenceMatrix {
    fn eq(&self, other: &Self) -> bool {
        same_universe(&self.universe, &other.universe) && self.entries == other.entries
    }
}

impl Eq for IncidenceMatrix {}

impl IncidenceMatrix {
    pub fn from_rows(universe: &Arc<Universe>, rows: &[Vec<bool>]) -> Result<Self> {
        let n = universe.len();
        if rows.len() != n {
            return Err(Error::DimensionMismatch { expected: n, actual: rows.len() });
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, actual: row.len() });
            }
            entries.extend_from_slice(row);
        }
        let m = Self { universe: Arc::clone(universe), entries };
        if !m.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(m)
    }

    fn from_fn(universe: &Arc<Universe>, f: impl Fn(usize, usize) -> bool) -> Self {
        let n = universe.len();
        let entries = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Self { universe: Arc::clone(universe), entries }
    }

    pub fn zeros(universe: &Arc<Universe>) -> Self {
        Self::from_fn(universe, |_, _| false)
    }

    pub fn identity(universe: &Arc<Universe>) -> Self {
        Self::from_fn(universe, |j, k| j == k)
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn n(&self) -> usize {
        self.universe.len()
    }

    pub fn get(&self, j: usize, k: usize) -> bool {
        self.entries[j * self.n() + k]
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        self.entries.chunks(self.n()).map(<[bool]>::to_vec).collect()
    }

    fn is_symmetric(&self) -> bool {
        let n = self.n();
        (0..n).all(|j| (j + 1..n).all(|k| self.get(j, k) == self.get(k, j)))
    }

    /// Number of ones on the diagonal.
    pub fn trace(&self) -> usize {
        (0..self.n()).filter(|&j| self.get(j, j)).count()
    }

    /// Diagonal read as a subset.
    pub fn diagonal_support(&self) -> Subset {
        let members = (0..self.n()).map(|j| self.get(j, j)).collect();
        Subset::new(&self.universe, members).expect("diagonal has universe length")
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.n();
        (0..n).all(|j| (0..n).all(|k| j == k || !self.get(j, k)))
    }

    /// Support `S` when the matrix is exactly `In(S×S)`.
    pub fn product_support(&self) -> Option<Subset> {
        let s = self.diagonal_support();
        let n = self.n();
        let ok = (0..n).all(|j| (0..n).all(|k| self.get(j, k) == (s.contains(j) && s.contains(k))));
        ok.then_some(s)
    }

    fn require_product(&self) -> Result<Subset> {
        self.product_support().ok_or(Error::NotProductForm)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(bool, bool) -> bool) -> Result<Self> {
        check_same(&self.universe, &other.universe)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { universe: Arc::clone(&self.universe), entries })
    }

    /// Entrywise disjunction.
    pub fn or(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a || b)
    }

    /// Entrywise conjunction.
    pub fn and(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a && b)
    }

    /// Reflexive, symmetric and transitive as a relation on the universe.
    pub fn is_equivalence(&self) -> bool {
        let n = self.n();
        (0..n).all(|j| self.get(j, j))
            && (0..n).all(|j| (0..n).all(|k| !self.get(j, k) || (0..n).all(|l| !self.get(k, l) || self.get(j, l))))
    }
}

impl fmt::Display for IncidenceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.n()) {
            let cells: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// `In(ΔS)`: `χ_S` laid along the diagonal.
pub fn in_diagonal(s: &Subset) -> IncidenceMatrix {
    IncidenceMatrix::from_fn(s.universe(), |j, k| j == k && s.contains(j))
}

/// `In(S×S)`: all ones on `S×S`.
pub fn in_product(s: &Subset) -> IncidenceMatrix {
    IncidenceMatrix::from_fn(s.universe(), |j, k| s.contains(j) && s.contains(k))
}

/// `In(S1×S2)`; not symmetric in general, so only used internally.
fn cross_terms(universe: &Arc<Universe>, s1: &Subset, s2: &Subset) -> Vec<bool> {
    let n = universe.len();
    (0..n * n).map(|i| s1.contains(i / n) && s2.contains(i % n)).collect()
}

/// Blob-sum `u_{S1} ⊞ u_{S2} = u_{S1 ∪ S2}` of two paradigms.
pub fn blob_sum(a: &IncidenceMatrix, b: &IncidenceMatrix) -> Result<IncidenceMatrix> {
    check_same(&a.universe, &b.universe)?;
    let s1 = a.require_product()?;
    let s2 = b.require_product()?;
    let u = &a.universe;
    let x12 = cross_terms(u, &s1, &s2);
    let x21 = cross_terms(u, &s2, &s1);
    let entries = (0..a.entries.len()).map(|i| a.entries[i] || b.entries[i] || x12[i] || x21[i]).collect();
    let sum = IncidenceMatrix { universe: Arc::clone(u), entries };
    debug_assert_eq!(sum, in_product(&s1.union(&s2)?));
    Ok(sum)
}

/// Meet of paradigms, `u_S ∧ u_T = u_{S∩T}`.
pub fn paradigm_meet(a: &IncidenceMatrix, b: &IncidenceMatrix) -> Result<IncidenceMatrix> {
    check_same(&a.universe, &b.universe)?;
    a.require_product()?;
    b.require_product()?;
    a.and(b)
}

/// Negation `¬u_S = u_{S^c}`.
pub fn paradigm_negate(a: &IncidenceMatrix) -> Result<IncidenceMatrix> {
    let s = a.require_product()?;
    Ok(in_product(&s.complement()))
}

/// Incidence matrix of the equivalence relation of `p`.
pub fn indit(p: &Partition) -> IncidenceMatrix {
    IncidenceMatrix::from_fn(p.universe(), |j, k| p.same_block(j, k))
}

/// Boolean matrix product (OR of ANDs) on raw row-major n×n data.
fn bool_matmul(n: usize, a: &[bool], b: &[bool]) -> Vec<bool> {
    let mut out = vec![false; n * n];
    for j in 0..n {
        for k in 0..n {
            out[j * n + k] = (0..n).any(|l| a[j * n + l] && b[l * n + k]);
        }
    }
    out
}

/// Sharpens `a` by the partition: `indit(p) ∧ a`, cross-checked against the
/// projection sandwich `Σ_B P_B a P_B`.
pub fn sharpen(a: &IncidenceMatrix, p: &Partition) -> Result<IncidenceMatrix> {
    check_same(&a.universe, p.universe())?;
    let masked = indit(p).and(a)?;
    let n = a.n();
    let mut sandwich = vec![false; n * n];
    for i in 0..p.len() {
        let proj = in_diagonal(&p.block_subset(i));
        let term = bool_matmul(n, &bool_matmul(n, &proj.entries, &a.entries), &proj.entries);
        for (acc, t) in sandwich.iter_mut().zip(term) {
            *acc |= t;
        }
    }
    if sandwich != masked.entries {
        return Err(Error::InternalMismatch("indit mask and projection sandwich disagree".into()));
    }
    Ok(masked)
}

/// Relabels by `perm`: entry `(j,k)` becomes `a[perm(j)][perm(k)]`.
pub fn permute_conjugate(a: &IncidenceMatrix, perm: &[usize]) -> Result<IncidenceMatrix> {
    let n = a.n();
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::InvalidPermutation(n));
    }
    for &g in perm {
        if g >= n || seen[g] {
            return Err(Error::InvalidPermutation(n));
        }
        seen[g] = true;
    }
    Ok(IncidenceMatrix::from_fn(&a.universe, |j, k| a.get(perm[j], perm[k])))
}
