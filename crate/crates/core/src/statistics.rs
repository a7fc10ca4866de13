//! Maxwell-Boltzmann, Bose-Einstein and Fermi-Dirac tables by exact
//! counting: equal weight on ordered tuples, on multisets, or on
//! repeat-free subsets respectively.

use std::cmp::Reverse;
use std::fmt::Write as _;
use std::sync::Arc;

use itertools::Itertools;
use num_traits::One;

use crate::error::{Error, Result};
use crate::incidence::{in_product, IncidenceMatrix};
use crate::scalar::{fraction_string, q_int, ExactInt, Q};
use crate::universe::{Subset, Universe};

const MAX_PARTICLES: usize = 8;
const MAX_TUPLES: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    MaxwellBoltzmann,
    BoseEinstein,
    FermiDirac,
}

impl Statistics {
    pub fn short_name(self) -> &'static str {
        match self {
            Self::MaxwellBoltzmann => "M-B",
            Self::BoseEinstein => "B-E",
            Self::FermiDirac => "F-D",
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            Self::MaxwellBoltzmann => "mb",
            Self::BoseEinstein => "be",
            Self::FermiDirac => "fd",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConfigurationKind {
    OrderedTuple,
    Multiset,
    Subset,
}

/// Occupied single-particle states, as indices into the state labels.
/// Multisets and subsets are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    kind: ConfigurationKind,
    occupancy: Vec<usize>,
}

impl Configuration {
    pub fn new(kind: ConfigurationKind, mut occupancy: Vec<usize>) -> Result<Self> {
        if kind != ConfigurationKind::OrderedTuple {
            occupancy.sort_unstable();
        }
        if kind == ConfigurationKind::Subset && occupancy.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::ExclusionViolation { particles: occupancy.len(), states: occupancy.len() - 1 });
        }
        Ok(Self { kind, occupancy })
    }

    pub fn kind(&self) -> ConfigurationKind {
        self.kind
    }

    pub fn occupancy(&self) -> &[usize] {
        &self.occupancy
    }

    pub fn distinct_states(&self) -> usize {
        self.occupancy.iter().unique().count()
    }

    /// All distinct orderings, in lexicographic order: the permutation
    /// orbit of ordered tuples sharing this occupancy.
    pub fn orbit(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> =
            self.occupancy.iter().copied().permutations(self.occupancy.len()).unique().collect();
        out.sort();
        out
    }

    pub fn label(&self, states: &[String]) -> String {
        let names: Vec<&str> = self.occupancy.iter().map(|&s| states[s].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

fn tuple_label(tuple: &[usize], states: &[String]) -> String {
    format!("({})", tuple.iter().map(|&s| states[s].as_str()).join(","))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistributionTable<I: ExactInt> {
    statistics: Statistics,
    states: Vec<String>,
    particles: usize,
    rows: Vec<(Configuration, Q<I>)>,
}

impl<I: ExactInt> DistributionTable<I> {
    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    pub fn rows(&self) -> &[(Configuration, Q<I>)] {
        &self.rows
    }

    pub fn total(&self) -> Q<I> {
        self.rows.iter().fold(Q::<I>::from_integer(I::zero()), |acc, (_, p)| acc + p.clone())
    }

    pub fn probability_of(&self, occupancy: &[usize]) -> Option<&Q<I>> {
        let mut key = occupancy.to_vec();
        key.sort_unstable();
        self.rows.iter().find(|(c, _)| c.occupancy == key).map(|(_, p)| p)
    }

    /// Two-column markdown table: configuration and probability.
    pub fn to_markdown(&self) -> String {
        let header = match self.statistics {
            Statistics::MaxwellBoltzmann => "Equivalence classes under permutation",
            Statistics::BoseEinstein | Statistics::FermiDirac => "Indefinite states",
        };
        let cells: Vec<(String, String)> = self
            .rows
            .iter()
            .map(|(c, p)| {
                let orbit = c.orbit().iter().map(|t| tuple_label(t, &self.states)).join(",");
                let label = match self.statistics {
                    Statistics::MaxwellBoltzmann => format!("{{{orbit}}}"),
                    _ => format!("u_{{{{{orbit}}}}}"),
                };
                (label, fraction_string(p))
            })
            .collect();
        let w0 = cells.iter().map(|c| c.0.chars().count()).chain([header.len()]).max().unwrap_or(0);
        let w1 = cells.iter().map(|c| c.1.len()).chain([3]).max().unwrap_or(3);
        let mut out = String::new();
        let _ = writeln!(out, "| {header:<w0$} | {:<w1$} |", self.statistics.short_name());
        let _ = writeln!(out, "|{}|{}|", "-".repeat(w0 + 2), "-".repeat(w1 + 2));
        for (label, p) in cells {
            let pad = w0 - label.chars().count();
            let _ = writeln!(out, "| {label}{} | {p:<w1$} |", " ".repeat(pad));
        }
        out
    }
}

fn check_guard(m: usize, n: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::SizeGuard("need at least one single-particle state".into()));
    }
    if !(1..=MAX_PARTICLES).contains(&n) {
        return Err(Error::SizeGuard(format!("particle count must be in 1..={MAX_PARTICLES}, got {n}")));
    }
    let tuples = (m as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if tuples > MAX_TUPLES {
        return Err(Error::SizeGuard(format!("{m}^{n} ordered tuples exceeds {MAX_TUPLES}")));
    }
    Ok(())
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Ordered tuples mapping onto the multiset: `n! / Π k_s!`.
fn multinomial(occupancy: &[usize]) -> u64 {
    let repeats: u64 = occupancy.iter().dedup_with_count().map(|(k, _)| factorial(k)).product();
    factorial(occupancy.len()) / repeats
}

fn build<I: ExactInt>(
    statistics: Statistics,
    states: &[String],
    n: usize,
    rows: Vec<(Vec<usize>, Q<I>)>,
) -> Result<DistributionTable<I>> {
    let kind = match statistics {
        Statistics::FermiDirac => ConfigurationKind::Subset,
        _ => ConfigurationKind::Multiset,
    };
    let mut rows =
        rows.into_iter().map(|(occ, p)| Ok((Configuration::new(kind, occ)?, p))).collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| {
        (Reverse(a.0.distinct_states()), &a.0.occupancy).cmp(&(Reverse(b.0.distinct_states()), &b.0.occupancy))
    });
    Ok(DistributionTable { statistics, states: states.to_vec(), particles: n, rows })
}

fn check_labels<S: AsRef<str>>(state_labels: &[S]) -> Result<Vec<String>> {
    let states: Vec<String> = state_labels.iter().map(|s| s.as_ref().to_string()).collect();
    if let Some((_, dup)) = states.iter().enumerate().find(|(i, s)| states[..*i].contains(s)) {
        return Err(Error::DuplicateLabel(dup.clone()));
    }
    Ok(states)
}

/// Equal weight `1/m^n` on ordered tuples, aggregated by multiset.
pub fn mb_distribution<I: ExactInt, S: AsRef<str>>(
    state_labels: &[S],
    n_particles: usize,
) -> Result<DistributionTable<I>> {
    let states = check_labels(state_labels)?;
    let m = states.len();
    check_guard(m, n_particles)?;
    let total = Q::<I>::one() / q_int::<I>((m as i64).pow(n_particles as u32));
    let rows = (0..m)
        .combinations_with_replacement(n_particles)
        .map(|occ| {
            let count = q_int::<I>(multinomial(&occ) as i64);
            (occ, count * total.clone())
        })
        .collect();
    build(Statistics::MaxwellBoltzmann, &states, n_particles, rows)
}

/// Equal weight `1/C(m+n-1, n)` on multisets.
pub fn be_distribution<I: ExactInt, S: AsRef<str>>(
    state_labels: &[S],
    n_particles: usize,
) -> Result<DistributionTable<I>> {
    let states = check_labels(state_labels)?;
    check_guard(states.len(), n_particles)?;
    let support: Vec<Vec<usize>> = (0..states.len()).combinations_with_replacement(n_particles).collect();
    let p = Q::<I>::one() / q_int::<I>(support.len() as i64);
    build(Statistics::BoseEinstein, &states, n_particles, support.into_iter().map(|occ| (occ, p.clone())).collect())
}

/// Equal weight `1/C(m, n)` on repeat-free subsets.
pub fn fd_distribution<I: ExactInt, S: AsRef<str>>(
    state_labels: &[S],
    n_particles: usize,
) -> Result<DistributionTable<I>> {
    let states = check_labels(state_labels)?;
    check_guard(states.len(), n_particles)?;
    if n_particles > states.len() {
        return Err(Error::ExclusionViolation { particles: n_particles, states: states.len() });
    }
    let support: Vec<Vec<usize>> = (0..states.len()).combinations(n_particles).collect();
    let p = Q::<I>::one() / q_int::<I>(support.len() as i64);
    build(Statistics::FermiDirac, &states, n_particles, support.into_iter().map(|occ| (occ, p.clone())).collect())
}

pub fn distribution<I: ExactInt, S: AsRef<str>>(
    statistics: Statistics,
    state_labels: &[S],
    n_particles: usize,
) -> Result<DistributionTable<I>> {
    match statistics {
        Statistics::MaxwellBoltzmann => mb_distribution(state_labels, n_particles),
        Statistics::BoseEinstein => be_distribution(state_labels, n_particles),
        Statistics::FermiDirac => fd_distribution(state_labels, n_particles),
    }
}

/// Universe of all `m^n` ordered tuples, labelled like `(A,B)`, in
/// lexicographic order.
pub fn tuple_universe<S: AsRef<str>>(state_labels: &[S], n_particles: usize) -> Result<Arc<Universe>> {
    let states = check_labels(state_labels)?;
    check_guard(states.len(), n_particles)?;
    let labels = (0..n_particles).map(|_| 0..states.len()).multi_cartesian_product().map(|t| tuple_label(&t, &states));
    Universe::new(labels)
}

/// Index of an ordered tuple inside [`tuple_universe`].
pub fn tuple_index(tuple: &[usize], m: usize) -> usize {
    tuple.iter().fold(0, |acc, &s| acc * m + s)
}

/// The indefinite state over a permutation orbit: `In(O×O)` for the orbit
/// `O` of the configuration inside the tuple universe.
pub fn orbit_paradigm(universe: &Arc<Universe>, m: usize, config: &Configuration) -> Result<IncidenceMatrix> {
    let s = Subset::from_indices(universe, config.orbit().iter().map(|t| tuple_index(t, m)))?;
    Ok(in_product(&s))
}
