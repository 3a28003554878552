//! Command-line front end for `crepanto-core`: argument parsing, the
//! commands themselves and plain/JSON rendering of their reports.

pub mod guards_env;
pub mod render;
pub mod report;

use std::fmt;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use crepanto_core::bundles::{
    build_hk_fan, canonical_self_intersection, e_divisor_self_intersection, ews_embedding_dimension,
    primitive_collections, DivisorKind,
};
use crepanto_core::cone::euler_characteristic;
use crepanto_core::hilbert::hilbert_basis_orthant;
use crepanto_core::lattice::{LatticePoint, WeightLattice};
use crepanto_core::polytope::{anticanonical_polytope, polytope_volume, self_intersection_via_volume};
use crepanto_core::quotient::{cohomology_cyclic, junior_points, necessary_criterion, CohomologyProfile, CyclicQuotientType};
use crepanto_core::series::{
    cohomology, cohomology_closed_form, divisor_kind_check, divisor_reports, divisor_reports_from_fan,
    expected_euler, factorize, residual_singularities, verify_uniqueness, FactorizationMode, SeriesType,
};
use crepanto_core::triangulation::{classify, coherence_certificate, fan_of, Coherence, LatticeTriangulation};
use crepanto_core::{Error, Guards};

use report::*;

#[derive(Debug, Parser)]
#[command(name = "crepanto", version, about = "Crepant resolutions of Gorenstein cyclic quotient singularities")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true, conflicts_with = "plain")]
    pub json: bool,
    /// Print the report as indented text (the default).
    #[arg(long, global = true)]
    pub plain: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Speedy,
    Stepwise,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Flags, normal form, junior points, criterion and cohomology of 1/l(w).
    Analyze { l: i64, weights: String },
    /// Hilbert basis of the positive orthant in the lattice of 1/l(w).
    Hilbert { l: i64, weights: String },
    /// Whether the Hilbert basis lies on the junior simplex.
    Criterion { l: i64, weights: String },
    /// Cohomology dimensions of a crepant resolution, by counting ages.
    Cohomology { l: i64, weights: String },
    /// The resolution of 1/l(1,…,1,l−r+1); with --scan, a range of l.
    ResolveSeries {
        /// `l r`, or just `r` together with --scan.
        #[arg(num_args = 1..=2, required = true)]
        args: Vec<i64>,
        /// Range `a..b` of l (inclusive) to scan.
        #[arg(long)]
        scan: Option<String>,
    },
    /// The resolution of a basic series member as a sequence of blow-ups.
    Factorize {
        l: i64,
        r: usize,
        #[arg(long, value_enum, default_value = "speedy")]
        mode: Mode,
    },
    /// The Hirzebruch–Kleinschmidt variety Y(r; λ_1,…,λ_k).
    Bundle { r: usize, twists: String },
    /// Classify a triangulation read from a JSON file.
    Triangulate {
        #[arg(long)]
        check: std::path::PathBuf,
    },
}

/// Failure of a command: bad input (exit 2) or a domain error (exit 1).
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain(m) => write!(f, "error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn usage(m: impl Into<String>) -> CliError {
    CliError::Usage(m.into())
}

pub fn parse_list(s: &str) -> CliResult<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| usage(format!("not an integer list: {s:?}"))))
        .collect()
}

fn parse_range(s: &str) -> CliResult<(i64, i64)> {
    let (a, b) = s.split_once("..").ok_or_else(|| usage(format!("expected a..b, got {s:?}")))?;
    let parse = |x: &str| x.trim().parse::<i64>().map_err(|_| usage(format!("bad range bound {x:?}")));
    let (a, b) = (parse(a)?, parse(b)?);
    if a > b {
        return Err(usage(format!("empty range {s}")));
    }
    Ok((a, b))
}

fn cyclic(l: i64, weights: &str) -> CliResult<CyclicQuotientType> {
    let w = parse_list(weights)?;
    CyclicQuotientType::new(l, &w).map_err(|e| usage(e.to_string()))
}

fn s<T: ToString>(x: T) -> String {
    x.to_string()
}

fn cohomology_result(c: &CohomologyProfile) -> CohomologyResult {
    CohomologyResult {
        dims: c.dims.iter().map(s).collect(),
        euler: s(c.euler),
    }
}

pub fn kind_name(k: &DivisorKind) -> String {
    match k {
        DivisorKind::HkBundle(p) if p.dim == 2 => format!("F_{}", p.twists[0]),
        DivisorKind::HkBundle(p) => {
            let tw: Vec<String> = p.twists.iter().map(s).collect();
            format!("Y({};{})", p.dim, tw.join(","))
        }
        DivisorKind::ProjectiveSpace(d) => format!("P^{d}"),
        DivisorKind::ProjectiveSpaceTimesLine(d) => format!("P^{d} x C"),
        DivisorKind::Other => s("other"),
    }
}

/// Runs a command and returns its report.
pub fn run(cli: &Cli, guards: &Guards) -> CliResult<Report> {
    let echo: Vec<String> = std::env::args().skip(1).collect();
    run_with_echo(cli, guards, echo)
}

pub fn run_with_echo(cli: &Cli, guards: &Guards, echo: Vec<String>) -> CliResult<Report> {
    match &cli.command {
        Command::Analyze { l, weights } => {
            let t = cyclic(*l, weights)?;
            Ok(Report::new(echo, t.to_string(), &analyze(&t, guards)?))
        }
        Command::Hilbert { l, weights } => {
            let t = cyclic(*l, weights)?;
            let lat = t.lattice_with(guards)?;
            let hb = hilbert_basis_orthant(&lat);
            let res = HilbertResult {
                count: s(hb.len()),
                elements: hb.elements().iter().map(s).collect(),
            };
            Ok(Report::new(echo, t.to_string(), &res))
        }
        Command::Criterion { l, weights } => {
            let t = cyclic(*l, weights)?;
            t.lattice_with(guards)?;
            let v = necessary_criterion(&t)?;
            let res = CriterionResult {
                passes: v.passes,
                violators: v.violators.iter().map(s).collect(),
            };
            Ok(Report::new(echo, t.to_string(), &res))
        }
        Command::Cohomology { l, weights } => {
            let t = cyclic(*l, weights)?;
            let c = cohomology_cyclic(&t)?;
            Ok(Report::new(echo, t.to_string(), &cohomology_result(&c)))
        }
        Command::ResolveSeries { args, scan } => match (scan, args.as_slice()) {
            (None, [l, r]) => {
                let t = series(*l, *r)?;
                Ok(Report::new(echo, t.cyclic_type().to_string(), &resolve_series(&t, guards)?))
            }
            (Some(range), [r]) => {
                let (a, b) = parse_range(range)?;
                let r = usize::try_from(*r).map_err(|_| usage("r must be positive"))?;
                let res = scan_series(a, b, r)?;
                Ok(Report::new(echo, format!("1/l(1,…,1,l−{}) for l in {a}..{b}", r - 1), &res))
            }
            _ => Err(usage("resolve-series takes `l r`, or `r` together with --scan a..b")),
        },
        Command::Factorize { l, r, mode } => {
            let t = series(*l, *r as i64)?;
            Ok(Report::new(echo, t.cyclic_type().to_string(), &factorization(&t, *mode)?))
        }
        Command::Bundle { r, twists } => {
            let tw = parse_list(twists)?;
            Ok(Report::new(echo, format!("Y({r};{twists})"), &bundle(*r, &tw, guards)?))
        }
        Command::Triangulate { check } => {
            let text = std::fs::read_to_string(check)
                .map_err(|e| usage(format!("cannot read {}: {e}", check.display())))?;
            let input: TriangulationInput =
                serde_json::from_str(&text).map_err(|e| usage(format!("bad triangulation file: {e}")))?;
            let (ty, res) = check_triangulation(&input, guards)?;
            Ok(Report::new(echo, ty, &res))
        }
    }
}

fn series(l: i64, r: i64) -> CliResult<SeriesType> {
    let r = usize::try_from(r).map_err(|_| usage("r must be positive"))?;
    SeriesType::new(l, r).map_err(|e| usage(e.to_string()))
}

pub fn analyze(t: &CyclicQuotientType, guards: &Guards) -> CliResult<AnalyzeResult> {
    t.lattice_with(guards)?;
    let gorenstein = t.is_gorenstein();
    let (junior, criterion, cohomology) = if gorenstein {
        let v = necessary_criterion(t)?;
        (
            Some(s(junior_points(t)?.len())),
            Some(CriterionResult {
                passes: v.passes,
                violators: v.violators.iter().map(s).collect(),
            }),
            Some(cohomology_result(&cohomology_cyclic(t)?)),
        )
    } else {
        (None, None, None)
    };
    Ok(AnalyzeResult {
        type_: t.to_string(),
        normal_form: t.normal_form().to_string(),
        gorenstein,
        isolated: t.is_isolated(),
        splitting_codimension: s(t.splitting_codimension()),
        junior_points: junior,
        criterion,
        cohomology,
    })
}

pub fn resolve_series(t: &SeriesType, guards: &Guards) -> CliResult<ResolutionResult> {
    let tri = t.build_triangulation()?;
    let coherence = coherence_certificate(&tri)?;
    let epsilon = match &coherence {
        Coherence::Coherent(h) => Some(s(&h.epsilon)),
        Coherence::Incoherent { .. } => None,
    };
    let (divisors, residual, closed) = if t.is_basic() {
        let closed = divisor_reports(t)?;
        let fan = divisor_reports_from_fan(t, guards)?;
        let mut out = Vec::with_capacity(closed.len());
        for (c, f) in closed.iter().zip(&fan) {
            let agrees = c.kind == f.kind
                && c.compact == f.compact
                && c.with_next == f.with_next
                && c.next_with == f.next_with
                && c.self_intersection == f.self_intersection;
            out.push(DivisorResult {
                index: s(c.index),
                point: s(t.series_point(c.index)?),
                kind: kind_name(&c.kind),
                kind_verified: divisor_kind_check(t, c.index, guards)?,
                compact: c.compact,
                with_next: c.with_next.as_ref().map(s),
                next_with: c.next_with.as_ref().map(s),
                self_intersection: s(&c.self_intersection),
                self_intersection_uncorrected: c.self_intersection_uncorrected.as_ref().map(s),
                fan_agrees: agrees,
            });
        }
        (out, None, Some(cohomology_closed_form(t).iter().map(s).collect()))
    } else {
        let res = residual_singularities(t)?;
        (
            Vec::new(),
            Some(ResidualResult {
                predicted: s(res.predicted.normal_form()),
                observed: s(res.observed.normal_form()),
                isolated: res.isolated,
                agrees: res.agrees(),
            }),
            None,
        )
    };
    Ok(ResolutionResult {
        type_: t.cyclic_type().to_string(),
        l: s(t.order()),
        r: s(t.dim()),
        nu: s(t.nu()),
        remainder: s(t.remainder()),
        basic: classify(&tri)?.is_basic,
        unique: verify_uniqueness(t)?,
        coherent: coherence.is_coherent(),
        epsilon,
        simplices: s(tri.simplices().len()),
        euler: s(euler_characteristic(&fan_of(&tri))),
        expected_euler: s(expected_euler(t)),
        cohomology: cohomology_result(&cohomology(t)?),
        cohomology_closed_form: closed,
        divisors,
        residual,
    })
}

fn scan_entry(l: i64, r: usize) -> CliResult<ScanEntry> {
    let t = series(l, r as i64)?;
    let tri = t.build_triangulation()?;
    Ok(ScanEntry {
        l: s(l),
        basic: classify(&tri)?.is_basic,
        remainder_predicts_basic: t.remainder() <= 1,
        unique: verify_uniqueness(&t)?,
        coherent: coherence_certificate(&tri)?.is_coherent(),
        euler: s(euler_characteristic(&fan_of(&tri))),
    })
}

/// Independent types are handled on separate threads; the entries come
/// back in order of `l`.
pub fn scan_series(a: i64, b: i64, r: usize) -> CliResult<ScanResult> {
    let a = a.max(r as i64);
    let ls: Vec<i64> = (a..=b).collect();
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(ls.len().max(1));
    let chunk = ls.len().div_ceil(threads).max(1);
    let results: Vec<CliResult<Vec<ScanEntry>>> = std::thread::scope(|sc| {
        let handles: Vec<_> = ls
            .chunks(chunk)
            .map(|part| sc.spawn(move || part.iter().map(|&l| scan_entry(l, r)).collect::<CliResult<Vec<_>>>()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
    });
    let mut entries = Vec::with_capacity(ls.len());
    for part in results {
        entries.extend(part?);
    }
    let all_match = entries.iter().all(|e| e.basic == e.remainder_predicts_basic && e.unique && e.coherent);
    Ok(ScanResult {
        r: s(r),
        entries,
        all_match,
    })
}

pub fn factorization(t: &SeriesType, mode: Mode) -> CliResult<FactorizationResult> {
    let m = match mode {
        Mode::Speedy => FactorizationMode::Speedy,
        Mode::Stepwise => FactorizationMode::Stepwise,
    };
    let plan = factorize(t, m)?;
    let steps = plan
        .steps
        .iter()
        .map(|st| StepResult {
            center: st.center.iter().map(s).collect(),
            simplices: s(st.result.simplices().len()),
            euler: s(euler_characteristic(&fan_of(&st.result))),
        })
        .collect();
    Ok(FactorizationResult {
        type_: t.cyclic_type().to_string(),
        mode: s(match mode {
            Mode::Speedy => "speedy",
            Mode::Stepwise => "stepwise",
        }),
        count: s(plan.steps.len()),
        steps,
        consistent: plan.is_consistent(t)?,
    })
}

pub fn bundle(r: usize, twists: &[i64], guards: &Guards) -> CliResult<BundleResult> {
    let y = build_hk_fan(r, twists).map_err(|e| usage(e.to_string()))?;
    let pcs = primitive_collections(&y.fan, guards)?;
    let single = twists.len() == 1 && twists[0] != 0;
    let (volume, self_int) = match anticanonical_polytope(&y.fan) {
        Ok(p) if (r as u64) <= guards.polytope_dim => {
            (Some(s(polytope_volume(&p, guards)?)), Some(s(self_intersection_via_volume(&p, guards)?)))
        }
        Ok(_) | Err(Error::NotAmple) => (None, None),
        Err(e) => return Err(e.into()),
    };
    let tw: Vec<String> = y.params.twists.iter().map(s).collect();
    Ok(BundleResult {
        params: format!("Y({r};{})", tw.join(",")),
        cones: s(y.fan.cones().len()),
        primitive_collections: pcs.iter().map(|c| c.iter().map(s).collect()).collect(),
        canonical_self_intersection: if single {
            Some(s(canonical_self_intersection(r as u32, twists[0])?))
        } else {
            None
        },
        e_self_intersection: single.then(|| s(e_divisor_self_intersection(r as u32, twists[0]))),
        embedding_dimension: s(ews_embedding_dimension(r, twists)?),
        anticanonical_volume: volume,
        anticanonical_self_intersection: self_int,
    })
}

pub fn check_triangulation(input: &TriangulationInput, guards: &Guards) -> CliResult<(String, CheckResult)> {
    let t = CyclicQuotientType::new(input.order, &input.weights).map_err(|e| usage(e.to_string()))?;
    let lat: Arc<WeightLattice> = Arc::new(t.lattice_with(guards)?);
    let mut simplices = Vec::with_capacity(input.simplices.len());
    for sx in &input.simplices {
        let pts: Vec<LatticePoint> = sx.iter().map(|num| lat.point(num.clone())).collect::<Result<_, _>>()?;
        simplices.push(pts);
    }
    let tri = LatticeTriangulation::from_point_simplices(lat, &simplices)?;
    let c = classify(&tri)?;
    Ok((
        t.to_string(),
        CheckResult {
            type_: t.to_string(),
            simplices: s(tri.simplices().len()),
            maximal: c.is_maximal,
            basic: c.is_basic,
            crepant: c.is_crepant,
            coherent: coherence_certificate(&tri)?.is_coherent(),
        },
    ))
}
