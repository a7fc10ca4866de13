//! Batch front-end: each invocation runs one operation and prints the result
//! as markdown (default) or JSON.
//!
//! Exit codes: 0 success, 1 domain or input error, 2 usage error.

mod args;
mod render;

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;
use std::sync::Arc;

use clap::Parser;
use num_complex::Complex;
use paradigms::classical::{
    prob_block, project_conditional, rho_diag, rho_paradigm, sharpen_classical, ClassicalDensity, PointDistribution,
};
use paradigms::cmatrix::CMatrix;
use paradigms::incidence::{blob_sum, in_diagonal, in_product, indit, paradigm_meet, paradigm_negate, sharpen};
use paradigms::io::{cmatrix_from_json, UniverseDocument};
use paradigms::quantum::{
    distinguish, luders, measure_prob, rho_decohered, rho_pure, sample_measurement, AmplitudeVector, Observable,
};
use paradigms::scalar::parse_fraction;
use paradigms::statistics::{distribution, Statistics};
use paradigms::universe::{
    attributes_complete, classifiable_cells, dnf_of_subset, inverse_image_partition, partition_join,
    truth_table_universe, Partition, Subset, Universe,
};
use paradigms::{ExactInt, ExactPointDistribution, Real};

pub use args::Cli;
use args::{DensityOp, Format, IncidenceOp, QuantumOp, RhoKind, StatsKind, Verb};
use render::Output;

type Int = paradigms::BigInt;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(String),
}

impl From<paradigms::Error> for CliError {
    fn from(e: paradigms::Error) -> Self {
        Self::Domain(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses `argv` (including the program name) and runs one command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return e.exit_code();
        }
    };
    match execute(&cli, err) {
        Ok(output) => {
            let _ = out.write_all(output.render(cli.format).as_bytes());
            0
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn execute(cli: &Cli, err: &mut dyn Write) -> CliResult<Output> {
    match &cli.verb {
        Verb::Universe(a) => universe_cmd(a),
        Verb::Incidence(a) => incidence_cmd(a),
        Verb::Density(a) => density_cmd(a),
        Verb::Quantum(a) => quantum_cmd(a, err),
        Verb::Stats(a) => stats_cmd(a),
    }
}

fn load_document(path: Option<&std::path::Path>) -> CliResult<UniverseDocument> {
    let path = path.ok_or_else(|| usage("--universe <file> is required"))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?;
    Ok(UniverseDocument::from_json(&text)?)
}

/// A named subset from the document, or a `0`/`1` string such as `0111`.
fn resolve_subset(doc: &UniverseDocument, text: &str) -> CliResult<(String, Subset)> {
    if let Some(s) = doc.subset(text) {
        return Ok((text.to_string(), s.clone()));
    }
    let n = doc.universe.len();
    if text.len() == n && text.chars().all(|c| c == '0' || c == '1') {
        let subset = Subset::new(&doc.universe, text.chars().map(|c| c == '1').collect())?;
        return Ok((text.to_string(), subset));
    }
    Err(CliError::Domain(format!("`{text}` is neither a named subset nor a {n}-bit string")))
}

/// Element token: a label, else a 0-based index.
fn resolve_element(universe: &Universe, token: &str) -> CliResult<usize> {
    let token = token.trim();
    universe
        .index_of(token)
        .or_else(|| token.parse::<usize>().ok().filter(|&j| j < universe.len()))
        .ok_or_else(|| CliError::Domain(format!("unknown element `{token}`")))
}

/// A partition with a display name per block.
struct NamedPartition {
    partition: Partition,
    names: Vec<String>,
}

/// An attribute name (inverse-image partition), `discrete`, `indiscrete`,
/// or explicit blocks like `u1,u3|u2,u4`.
fn resolve_partition(
    doc: Option<&UniverseDocument>,
    universe: &Arc<Universe>,
    text: &str,
) -> CliResult<NamedPartition> {
    if let Some(attr) = doc.and_then(|d| d.attribute(text)) {
        let partition = inverse_image_partition(attr);
        let names = partition.blocks().iter().map(|b| attr.value(b[0]).to_string()).collect();
        return Ok(NamedPartition { partition, names });
    }
    let partition = match text {
        "discrete" => Partition::discrete(universe),
        "indiscrete" => Partition::indiscrete(universe),
        _ => {
            let blocks = text
                .split('|')
                .map(|b| b.split(',').map(|t| resolve_element(universe, t)).collect::<CliResult<Vec<_>>>())
                .collect::<CliResult<Vec<_>>>()?;
            Partition::new(universe, blocks)?
        }
    };
    let names =
        partition.blocks().iter().map(|b| b.iter().map(|&j| universe.label(j)).collect::<Vec<_>>().join(",")).collect();
    Ok(NamedPartition { partition, names })
}

fn universe_cmd(a: &args::UniverseArgs) -> CliResult<Output> {
    let doc = match (&a.universe, &a.predicates) {
        (Some(path), None) => load_document(Some(path))?,
        (None, Some(list)) => {
            let names: Vec<&str> = list.split(',').map(str::trim).collect();
            let (universe, attributes) = truth_table_universe(&names)?;
            UniverseDocument { universe, attributes, subsets: Vec::new() }
        }
        _ => return Err(usage("give exactly one of --universe <file> or --predicates <P,Q,...>")),
    };
    let complete = if doc.attributes.is_empty() { None } else { Some(attributes_complete(&doc.attributes)?) };
    let cells = if doc.attributes.is_empty() { None } else { Some(classifiable_cells(&doc.attributes)?) };
    let join = doc
        .attributes
        .iter()
        .map(inverse_image_partition)
        .try_fold(Partition::indiscrete(&doc.universe), |acc, p| partition_join(&acc, &p))?;
    let mut subsets = Vec::new();
    let selected: Vec<(String, Subset)> = if a.subset.is_empty() {
        doc.subsets.clone()
    } else {
        a.subset.iter().map(|s| resolve_subset(&doc, s)).collect::<CliResult<_>>()?
    };
    for (name, s) in selected {
        let dnf = dnf_of_subset(&doc.attributes, &s).map(|f| f.to_string()).map_err(|e| e.to_string());
        subsets.push(render::SubsetSummary { name, members: s.to_string(), dnf });
    }
    Ok(Output::Universe(render::UniverseSummary { doc, complete, cells, join: join.to_string(), subsets }))
}

fn incidence_cmd(a: &args::IncidenceArgs) -> CliResult<Output> {
    let doc = load_document(a.universe.as_deref())?;
    let subsets = a.subset.iter().map(|s| resolve_subset(&doc, s).map(|p| p.1)).collect::<CliResult<Vec<_>>>()?;
    let one = || subsets.first().ok_or_else(|| usage("--subset is required"));
    let matrix = match a.op {
        IncidenceOp::Diag => in_diagonal(one()?),
        IncidenceOp::Product => in_product(one()?),
        IncidenceOp::Negate => paradigm_negate(&in_product(one()?))?,
        IncidenceOp::Blobsum | IncidenceOp::Meet => {
            if subsets.len() < 2 {
                return Err(usage("blobsum/meet need at least two --subset flags"));
            }
            let f = if a.op == IncidenceOp::Blobsum { blob_sum } else { paradigm_meet };
            subsets[1..].iter().try_fold(in_product(&subsets[0]), |acc, s| f(&acc, &in_product(s)))?
        }
        IncidenceOp::Indit => {
            let text = a.partition.first().ok_or_else(|| usage("--partition is required"))?;
            indit(&resolve_partition(Some(&doc), &doc.universe, text)?.partition)
        }
        IncidenceOp::Sharpen => {
            if a.partition.is_empty() {
                return Err(usage("--partition is required"));
            }
            let start = if a.diag { in_diagonal(one()?) } else { in_product(one()?) };
            a.partition.iter().try_fold(start, |acc, text| {
                let p = resolve_partition(Some(&doc), &doc.universe, text)?;
                Ok::<_, CliError>(sharpen(&acc, &p.partition)?)
            })?
        }
    };
    Ok(Output::Incidence(matrix))
}

fn parse_probs<I: ExactInt>(universe: &Arc<Universe>, text: Option<&str>) -> CliResult<PointDistribution<I>> {
    match text {
        None => Ok(PointDistribution::uniform(universe)),
        Some(list) => {
            let probs = list
                .split(',')
                .map(|t| parse_fraction::<I>(t).ok_or_else(|| CliError::Domain(format!("bad fraction `{t}`"))))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(PointDistribution::new(universe, probs)?)
        }
    }
}

fn density_cmd(a: &args::DensityArgs) -> CliResult<Output> {
    let doc = load_document(a.universe.as_deref())?;
    let text = a.subset.as_deref().ok_or_else(|| usage("--subset is required"))?;
    let (_, s) = resolve_subset(&doc, text)?;
    let p: ExactPointDistribution = parse_probs(&doc.universe, a.probs.as_deref())?;
    let build = |kind: RhoKind| -> CliResult<ClassicalDensity<Int>> {
        Ok(match kind {
            RhoKind::Diag => rho_diag(&s, &p)?,
            RhoKind::Paradigm => rho_paradigm(&s, &p)?,
        })
    };
    let partition = || -> CliResult<NamedPartition> {
        let text = a.partition.as_deref().ok_or_else(|| usage("--partition is required"))?;
        resolve_partition(Some(&doc), &doc.universe, text)
    };
    match a.op {
        DensityOp::Diag => Ok(Output::Classical(build(RhoKind::Diag)?)),
        DensityOp::Paradigm => Ok(Output::Classical(build(RhoKind::Paradigm)?)),
        DensityOp::Sharpen => Ok(Output::Classical(sharpen_classical(&build(a.rho)?, &partition()?.partition)?)),
        DensityOp::Prob => {
            let rho = build(a.rho)?;
            let np = partition()?;
            let rows = (0..np.partition.len())
                .map(|i| {
                    let b = np.partition.block_subset(i);
                    Ok(render::BlockProb {
                        block: np.names[i].clone(),
                        members: b.to_string(),
                        probability: prob_block(&rho, &b)?,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(Output::BlockProbs(rows))
        }
        DensityOp::Condition => {
            let rho = build(a.rho)?;
            let np = partition()?;
            let block = a.block.as_deref().ok_or_else(|| usage("--block is required"))?;
            let i = np
                .names
                .iter()
                .position(|n| n == block)
                .or_else(|| block.parse::<usize>().ok().filter(|&i| i < np.partition.len()))
                .ok_or_else(|| CliError::Domain(format!("no block `{block}` in the partition")))?;
            let (probability, posterior) = project_conditional(&rho, &np.partition.block_subset(i))?;
            Ok(Output::Conditioned { block: np.names[i].clone(), probability, posterior })
        }
    }
}

fn parse_psi(text: &str, err: &mut dyn Write) -> CliResult<AmplitudeVector<f64>> {
    let amps = text
        .split(',')
        .map(|t| Complex::<f64>::from_str(t.trim()).map_err(|_| CliError::Domain(format!("bad amplitude `{t}`"))))
        .collect::<CliResult<Vec<_>>>()?;
    let universe = Universe::indexed(amps.len())?;
    let norm2: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if (norm2 - 1.0).abs() > f64::IDENTITY_TOL {
        let _ = writeln!(err, "note: --psi has norm² {norm2}; rescaled to unit norm");
    }
    Ok(AmplitudeVector::normalized(&universe, amps)?)
}

fn observable(a: &args::QuantumArgs, universe: &Arc<Universe>) -> CliResult<Observable<f64>> {
    let partition = match &a.partition {
        Some(text) => resolve_partition(None, universe, text)?.partition,
        None => Partition::discrete(universe),
    };
    match &a.eigenvalues {
        None => Ok(Observable::indexed(partition)),
        Some(list) => {
            let values = list
                .split(',')
                .map(|t| t.trim().parse::<f64>().map_err(|_| CliError::Domain(format!("bad eigenvalue `{t}`"))))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(Observable::new(partition, values)?)
        }
    }
}

fn resolve_unitary(text: &str, n: usize) -> CliResult<CMatrix<f64>> {
    match text {
        "identity" => Ok(CMatrix::identity(n)),
        "hadamard" => Ok(CMatrix::hadamard()),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Domain(format!("{path}: {e}")))?;
            Ok(cmatrix_from_json(&text)?)
        }
    }
}

fn quantum_cmd(a: &args::QuantumArgs, err: &mut dyn Write) -> CliResult<Output> {
    let text = a.psi.as_deref().ok_or_else(|| usage("--psi is required"))?;
    let psi = parse_psi(text, err)?;
    let universe = Arc::clone(psi.universe());
    let state = || if a.decohered { rho_decohered(&psi) } else { rho_pure(&psi) };
    match a.op {
        QuantumOp::Rho => Ok(Output::Quantum(rho_pure(&psi))),
        QuantumOp::Decohere => Ok(Output::Quantum(rho_decohered(&psi))),
        QuantumOp::Luders => Ok(Output::Quantum(luders(&state(), &observable(a, &universe)?)?)),
        QuantumOp::Measure => Ok(Output::Outcomes(measure_prob(&state(), &observable(a, &universe)?)?)),
        QuantumOp::Sample => {
            let seed = a.seed.ok_or_else(|| usage("--seed is required for `quantum sample`"))?;
            let (eigenvalue, posterior) = sample_measurement(&state(), &observable(a, &universe)?, seed)?;
            Ok(Output::Sample { seed, eigenvalue, posterior })
        }
        QuantumOp::Distinguish => {
            let u = resolve_unitary(a.unitary.as_deref().unwrap_or("hadamard"), universe.len())?;
            Ok(Output::Distinguish(distinguish(&psi, &u)?))
        }
    }
}

fn stats_cmd(a: &args::StatsArgs) -> CliResult<Output> {
    let states: Vec<&str> = a.states.split(',').map(str::trim).collect();
    let kind = match a.kind {
        StatsKind::Mb => Statistics::MaxwellBoltzmann,
        StatsKind::Be => Statistics::BoseEinstein,
        StatsKind::Fd => Statistics::FermiDirac,
    };
    Ok(Output::Table(distribution::<Int, _>(kind, &states, a.particles)?))
}

impl Output {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Markdown => self.markdown(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json()).expect("values serialize");
                s.push('\n');
                s
            }
        }
    }
}
