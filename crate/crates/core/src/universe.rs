//! Finite universes of eigen-elements, their subsets, attributes and
//! partitions, plus DNF properties and the participation relation.
//!
//! Elements are identified by index; labels are only for display.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Universe {
    labels: Vec<String>,
}

impl Universe {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let mut seen = HashMap::with_capacity(labels.len());
        for label in &labels {
            if seen.insert(label.as_str(), ()).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Arc::new(Self { labels }))
    }

    /// Universe labelled `0..n`, used for bare basis indices.
    pub fn indexed(n: usize) -> Result<Arc<Self>> {
        Self::new((0..n).map(|j| j.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

pub(crate) fn same_universe(a: &Arc<Universe>, b: &Arc<Universe>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn check_same(a: &Arc<Universe>, b: &Arc<Universe>) -> Result<()> {
    if same_universe(a, b) {
        Ok(())
    } else {
        Err(Error::UniverseMismatch)
    }
}

/// Subset of a universe as a membership bit-vector (the characteristic function).
#[derive(Debug, Clone)]
pub struct Subset {
    universe: Arc<Universe>,
    members: Vec<bool>,
}

impl PartialEq for Subset {
    fn eq(&self, other: &Self) -> bool {
        same_universe(&self.universe, &other.universe) && self.members == other.members
    }
}

impl Eq for Subset {}

impl Subset {
    pub fn new(universe: &Arc<Universe>, members: Vec<bool>) -> Result<Self> {
        if members.len() != universe.len() {
            return Err(Error::DimensionMismatch { expected: universe.len(), actual: members.len() });
        }
        Ok(Self { universe: Arc::clone(universe), members })
    }

    pub fn from_indices(universe: &Arc<Universe>, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members = vec![false; universe.len()];
        for j in indices {
            if j >= members.len() {
                return Err(Error::DimensionMismatch { expected: universe.len(), actual: j + 1 });
            }
            members[j] = true;
        }
        Ok(Self { universe: Arc::clone(universe), members })
    }

    pub fn from_labels<'a>(universe: &Arc<Universe>, labels: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        let indices = labels
            .into_iter()
            .map(|l| universe.index_of(l).ok_or_else(|| Error::Parse(format!("unknown label `{l}`"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(universe, indices)
    }

    pub fn empty(universe: &Arc<Universe>) -> Self {
        Self { universe: Arc::clone(universe), members: vec![false; universe.len()] }
    }

    pub fn full(universe: &Arc<Universe>) -> Self {
        Self { universe: Arc::clone(universe), members: vec![true; universe.len()] }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members[index]
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().enumerate().filter(|(_, &m)| m).map(|(j, _)| j)
    }

    pub fn count(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&m| m)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(bool, bool) -> bool) -> Result<Self> {
        check_same(&self.universe, &other.universe)?;
        let members = self.members.iter().zip(&other.members).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { universe: Arc::clone(&self.universe), members })
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn complement(&self) -> Self {
        Self { universe: Arc::clone(&self.universe), members: self.members.iter().map(|m| !m).collect() }
    }

    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        check_same(&self.universe, &other.universe)?;
        Ok(self.members.iter().zip(&other.members).all(|(&a, &b)| !a || b))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.indices().map(|j| self.universe.label(j)).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

/// Total function from the universe to value labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Attribute {
    universe: Arc<Universe>,
    name: String,
    values: Vec<String>,
}

impl Attribute {
    pub fn new<S: Into<String>>(
        universe: &Arc<Universe>,
        name: impl Into<String>,
        values: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let values: Vec<String> = values.into_iter().map(Into::into).collect();
        if values.len() != universe.len() {
            return Err(Error::DimensionMismatch { expected: universe.len(), actual: values.len() });
        }
        Ok(Self { universe: Arc::clone(universe), name: name.into(), values })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[String] {
        &self.values
    }

    pub fn value(&self, index: usize) -> &str {
        &self.values[index]
    }

    /// Distinct values in order of first occurrence.
    pub fn distinct_values(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for v in &self.values {
            if !out.contains(&v.as_str()) {
                out.push(v);
            }
        }
        out
    }

    /// Truth values when every value is `0` or `1`.
    pub fn as_predicate(&self) -> Result<Vec<bool>> {
        self.values
            .iter()
            .map(|v| match v.as_str() {
                "1" => Ok(true),
                "0" => Ok(false),
                _ => Err(Error::NonBinaryPredicate(self.name.clone())),
            })
            .collect()
    }
}

/// Set of disjoint non-empty blocks covering the universe.
///
/// Blocks are kept sorted internally and ordered by their smallest index, so
/// two partitions are equal exactly when they have the same blocks.
#[derive(Debug, Clone)]
pub struct Partition {
    universe: Arc<Universe>,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        same_universe(&self.universe, &other.universe) && self.blocks == other.blocks
    }
}

impl Eq for Partition {}

impl Partition {
    pub fn new(universe: &Arc<Universe>, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n = universe.len();
        let mut block_of = vec![usize::MAX; n];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        for (i, block) in blocks.iter().enumerate() {
            for &j in block {
                if j >= n {
                    return Err(Error::InvalidPartition(format!("index {j} outside universe of size {n}")));
                }
                if block_of[j] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("element {j} appears in two blocks")));
                }
                block_of[j] = i;
            }
        }
        if let Some(j) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!("element {j} is not covered")));
        }
        Ok(Self { universe: Arc::clone(universe), blocks, block_of })
    }

    pub fn from_subsets(universe: &Arc<Universe>, blocks: &[Subset]) -> Result<Self> {
        for b in blocks {
            check_same(universe, b.universe())?;
        }
        Self::new(universe, blocks.iter().map(|b| b.indices().collect()).collect())
    }

    pub fn discrete(universe: &Arc<Universe>) -> Self {
        Self::new(universe, (0..universe.len()).map(|j| vec![j]).collect()).expect("singletons partition")
    }

    pub fn indiscrete(universe: &Arc<Universe>) -> Self {
        Self::new(universe, vec![(0..universe.len()).collect()]).expect("one block partitions")
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing element `j`.
    pub fn block_of(&self, j: usize) -> usize {
        self.block_of[j]
    }

    pub fn same_block(&self, j: usize, k: usize) -> bool {
        self.block_of[j] == self.block_of[k]
    }

    pub fn block_subset(&self, i: usize) -> Subset {
        Subset::from_indices(&self.universe, self.blocks[i].iter().copied()).expect("block indices are in range")
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// Join in the refinement sense: the non-empty pairwise intersections of blocks.
    pub fn join(&self, other: &Self) -> Result<Self> {
        check_same(&self.universe, &other.universe)?;
        let mut cells: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for j in 0..self.universe.len() {
            cells.entry((self.block_of[j], other.block_of[j])).or_default().push(j);
        }
        Self::new(&self.universe, cells.into_values().collect())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let labels: Vec<&str> = b.iter().map(|&j| self.universe.label(j)).collect();
                format!("{{{}}}", labels.join(","))
            })
            .collect();
        write!(f, "{{{}}}", blocks.join(","))
    }
}

/// Gives Table-1 style truth-table universes: `2^k` rows in descending
/// binary order, so the first element satisfies every predicate and the last
/// none.
pub fn truth_table_universe<S: AsRef<str>>(predicate_names: &[S]) -> Result<(Arc<Universe>, Vec<Attribute>)> {
    let k = predicate_names.len();
    if !(1..=20).contains(&k) {
        return Err(Error::SizeGuard(format!("truth table needs 1..=20 predicates, got {k}")));
    }
    let n = 1usize << k;
    let universe = Universe::new((1..=n).map(|j| format!("u{j}")))?;
    let attributes = predicate_names
        .iter()
        .enumerate()
        .map(|(p, name)| {
            let bit = k - 1 - p;
            let values = (0..n).map(|row| {
                let code = n - 1 - row;
                if (code >> bit) & 1 == 1 {
                    "1"
                } else {
                    "0"
                }
            });
            Attribute::new(&universe, name.as_ref(), values)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((universe, attributes))
}

/// Maximal constant-value sets of `a` (its inverse-image partition).
pub fn inverse_image_partition(a: &Attribute) -> Partition {
    let mut order: Vec<&str> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (j, v) in a.values.iter().enumerate() {
        match order.iter().position(|o| *o == v) {
            Some(i) => blocks[i].push(j),
            None => {
                order.push(v);
                blocks.push(vec![j]);
            }
        }
    }
    Partition::new(&a.universe, blocks).expect("inverse images partition the universe")
}

pub fn partition_join(p: &Partition, q: &Partition) -> Result<Partition> {
    p.join(q)
}

pub fn is_discrete(p: &Partition) -> bool {
    p.is_discrete()
}

fn join_all(attrs: &[Attribute]) -> Result<Partition> {
    let (first, rest) = attrs.split_first().ok_or(Error::EmptyAttributes)?;
    rest.iter().try_fold(inverse_image_partition(first), |acc, a| acc.join(&inverse_image_partition(a)))
}

/// True when the attributes jointly tell every pair of elements apart.
pub fn attributes_complete(attrs: &[Attribute]) -> Result<bool> {
    Ok(join_all(attrs)?.is_discrete())
}

/// Number of cells the attributes actually classify, with the product of
/// their value counts as the upper bound.
pub fn classifiable_cells(attrs: &[Attribute]) -> Result<(usize, usize)> {
    let join = join_all(attrs)?;
    let bound = attrs.iter().map(|a| a.distinct_values().len()).product();
    Ok((join.len(), bound))
}

/// Disjunction of conjunctions of possibly negated predicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnfFormula {
    predicates: Vec<String>,
    conjuncts: Vec<Vec<bool>>,
}

impl DnfFormula {
    pub fn new(predicates: Vec<String>, conjuncts: Vec<Vec<bool>>) -> Result<Self> {
        for (i, c) in conjuncts.iter().enumerate() {
            if c.len() != predicates.len() {
                return Err(Error::DimensionMismatch { expected: predicates.len(), actual: c.len() });
            }
            if conjuncts[..i].contains(c) {
                return Err(Error::Parse("duplicate conjunct in DNF".into()));
            }
        }
        Ok(Self { predicates, conjuncts })
    }

    pub fn predicates(&self) -> &[String] {
        &self.predicates
    }

    pub fn conjuncts(&self) -> &[Vec<bool>] {
        &self.conjuncts
    }

    /// Truth of the formula for one row of predicate values.
    pub fn evaluate(&self, row: &[bool]) -> bool {
        self.conjuncts.iter().any(|c| c.as_slice() == row)
    }
}

impl fmt::Display for DnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conjuncts.is_empty() {
            return write!(f, "⊥");
        }
        let terms: Vec<String> = self
            .conjuncts
            .iter()
            .map(|c| {
                let lits: Vec<String> = self
                    .predicates
                    .iter()
                    .zip(c)
                    .map(|(p, &pos)| if pos { p.clone() } else { format!("¬{p}") })
                    .collect();
                format!("[{}]", lits.join("∧"))
            })
            .collect();
        write!(f, "{}", terms.join(" ∨ "))
    }
}

/// DNF property true of exactly the elements of `s`, one conjunct per element
/// in index order.
pub fn dnf_of_subset(predicates: &[Attribute], s: &Subset) -> Result<DnfFormula> {
    if predicates.is_empty() {
        return Err(Error::EmptyAttributes);
    }
    let columns = predicates
        .iter()
        .map(|p| {
            check_same(p.universe(), s.universe())?;
            p.as_predicate()
        })
        .collect::<Result<Vec<_>>>()?;
    let join = join_all(predicates)?;
    if let Some(block) = join.blocks().iter().find(|b| b.len() > 1) {
        return Err(Error::IncompletePredicates(block[0], block[1]));
    }
    let conjuncts = s.indices().map(|j| columns.iter().map(|col| col[j]).collect()).collect();
    DnfFormula::new(predicates.iter().map(|p| p.name().to_string()).collect(), conjuncts)
}

/// Participation `u_T ⊲ u_S`, which holds exactly when `T ⊆ S` (reflexively).
pub fn participates(t: &Subset, s: &Subset) -> Result<bool> {
    t.is_subset_of(s)
}
