//! Commands behind the `trace-forge` binary. Each returns the text to print
//! and a JSON value; `main` decides where they go and maps errors to exit
//! codes (2 bad input, 3 workload guard, 4 theorem violation).

pub mod survey;

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;
use trace_forge_core::arith::{FieldElem, FieldSpec};
use trace_forge_core::artin::{ArtinAlgebra, ArtinError, SubIdeal};
use trace_forge_core::semigroup::{NumericalSemigroup, SemigroupError};
use trace_forge_core::series::IdealError;
use trace_forge_core::trace::{self, TraceError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("workload guard: {0}")]
    Workload(String),
    #[error("theorem violation: {0}")]
    Violation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Workload(_) => 3,
            CliError::Violation(_) => 4,
            CliError::Io(_) | CliError::Json(_) | CliError::Csv(_) => 1,
        }
    }
}

impl From<SemigroupError> for CliError {
    fn from(e: SemigroupError) -> CliError {
        CliError::Input(e.to_string())
    }
}

impl From<IdealError> for CliError {
    fn from(e: IdealError) -> CliError {
        CliError::Input(e.to_string())
    }
}

impl From<TraceError> for CliError {
    fn from(e: TraceError) -> CliError {
        match e {
            TraceError::WorkloadExceeded(msg) => CliError::Workload(msg),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ArtinError> for CliError {
    fn from(e: ArtinError) -> CliError {
        match e {
            ArtinError::WorkloadExceeded(msg) => CliError::Workload(msg),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub json: Value,
}

pub fn parse_semigroup(s: &str) -> Result<NumericalSemigroup, CliError> {
    Ok(s.parse::<NumericalSemigroup>()?)
}

pub fn parse_prime(p: u64) -> Result<FieldSpec, CliError> {
    FieldSpec::prime(p).map_err(|e| CliError::Input(e.to_string()))
}

/// Comma-separated rationals such as `0,1,-2,1/3`.
pub fn parse_samples(s: &str) -> Result<Vec<FieldElem>, CliError> {
    s.split(',')
        .map(|x| {
            FieldSpec::Rationals
                .parse_elem(x.trim())
                .map_err(|e| CliError::Input(format!("sample {x:?}: {e}")))
        })
        .collect()
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Serialize)]
struct SemigroupInfo {
    generators: Vec<u32>,
    genus: usize,
    gaps: Vec<u32>,
    frobenius: i64,
    conductor: u32,
    multiplicity: u32,
    embedding_dimension: usize,
    apery: Vec<u32>,
    kunz: Option<Vec<u32>>,
    kunz_class: Option<String>,
    canonical_value_set: String,
    cm_type: usize,
    gorenstein: bool,
    arf: bool,
    minimal_multiplicity: bool,
    lipman_chain: Vec<String>,
    value_set_condition: String,
}

pub fn info(h: &NumericalSemigroup) -> Output {
    let e = h.multiplicity();
    let kunz = (e >= 2).then(|| h.kunz_coordinates(e).expect("e is the multiplicity"));
    let report = SemigroupInfo {
        generators: h.generators().to_vec(),
        genus: h.genus(),
        gaps: h.gaps(),
        frobenius: h.frobenius(),
        conductor: h.conductor(),
        multiplicity: e,
        embedding_dimension: h.embedding_dimension(),
        apery: h.apery_set(e).expect("multiplicity is a member"),
        kunz: kunz.as_ref().map(|k| k.coords().to_vec()),
        kunz_class: kunz.as_ref().map(|k| k.classify().to_string()),
        canonical_value_set: h.canonical_value_set().to_string(),
        cm_type: h.cm_type(),
        gorenstein: h.is_symmetric(),
        arf: h.is_arf(),
        minimal_multiplicity: h.has_minimal_multiplicity(),
        lipman_chain: h.lipman_sequence().iter().map(ToString::to_string).collect(),
        value_set_condition: format!("{:?}", h.value_set_condition()),
    };

    let mut text = String::new();
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let _ = writeln!(text, "H = {h}");
    if h.is_natural_numbers() {
        let _ = writeln!(text, "H is all of N: K[[H]] = K[[t]] is a discrete valuation ring");
    }
    let _ = writeln!(text, "gaps: {{{}}} (genus {})", join(&report.gaps), report.genus);
    let _ = writeln!(text, "Frobenius number {}, conductor {}", report.frobenius, report.conductor);
    let _ = writeln!(
        text,
        "multiplicity {}, embedding dimension {}",
        report.multiplicity, report.embedding_dimension
    );
    let _ = writeln!(text, "Apery set w.r.t. {e}: {{{}}}", join(&report.apery));
    if let (Some(k), Some(class)) = (&report.kunz, &report.kunz_class) {
        let _ = writeln!(text, "Kunz coordinates: ({}) {class}", k.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
    }
    let _ = writeln!(
        text,
        "canonical value set K(H) = {} (type {})",
        report.canonical_value_set, report.cm_type
    );
    let _ = writeln!(text, "Gorenstein (symmetric): {}", yes_no(report.gorenstein));
    let _ = writeln!(text, "minimal multiplicity: {}", yes_no(report.minimal_multiplicity));
    let _ = writeln!(text, "Arf: {}", yes_no(report.arf));
    let _ = writeln!(text, "blowup chain: {}", report.lipman_chain.join(" -> "));
    let _ = writeln!(text, "value-set condition: {}", report.value_set_condition);
    Output {
        text,
        json: serde_json::to_value(&report).expect("plain data"),
    }
}

pub fn trace_enum(h: &NumericalSemigroup, field: FieldSpec) -> Result<Output, CliError> {
    let enumeration = trace::enumerate_trace_ideals(h, field)?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "trace ideals of K[[H]], H = {h}, K = {field}: {} (including 0)",
        enumeration.total_count()
    );
    let _ = writeln!(text, "  0  (zero ideal)");
    for entry in &enumeration.entries {
        let f = entry.flags;
        let mut tags = Vec::new();
        if f.is_conductor {
            tags.push("conductor");
        }
        if f.is_maximal_ideal {
            tags.push("maximal");
        }
        if f.is_unit_ideal {
            tags.push("unit");
        }
        if f.is_monomial {
            tags.push("monomial");
        }
        let _ = writeln!(
            text,
            "  {}  values {}  [{}]",
            entry.label,
            entry.ideal.value_set(),
            tags.join(", ")
        );
    }
    let c = &enumeration.census;
    let _ = writeln!(
        text,
        "examined {} ideals containing c ({} cyclic)",
        c.candidate_ideals, c.cyclic_ideals
    );
    let conductor_ok = h.is_natural_numbers() || enumeration.entries.iter().any(|e| e.flags.is_conductor);
    if !conductor_ok {
        return Err(CliError::Violation(format!("conductor of {h} is not a trace ideal")));
    }
    Ok(Output {
        text,
        json: serde_json::to_value(enumeration.to_json())?,
    })
}

pub fn bijection(h: &NumericalSemigroup, field: FieldSpec) -> Result<Output, CliError> {
    let report = trace::verify_bijection(h, field)?;
    let json = serde_json::to_value(&report)?;
    if !report.ok {
        return Err(CliError::Violation(format!(
            "I -> I/t^e is not a bijection Tr(R)\\{{R}} -> Tr(B) for {h}: {json}"
        )));
    }
    let text = format!(
        "bijection OK (|Tr(R)\\{{R}}| = |Tr(B)| = {}, B = K[[{}]], counting nonzero ideals)\n",
        report.left_count,
        h.blowup()
    );
    Ok(Output { text, json })
}

pub fn probe(h: &NumericalSemigroup, n: i64, samples: &[FieldElem]) -> Result<Output, CliError> {
    let report = trace::family_probe(h, n, samples)?;
    let verdict = match report.verdict {
        trace::ProbeVerdict::InfiniteFamilyWitness => "infinite family witness",
        trace::ProbeVerdict::NoSeparation => "no separation",
    };
    let mut text = format!(
        "{}/{} distinct: {verdict}\n",
        report.distinct_results,
        samples.len()
    );
    if !report.all_trace {
        return Err(CliError::Violation(format!(
            "some colon R : R[t^{n} + k t^{}] over {h} is not a trace ideal",
            n + 1
        )));
    }
    text.push_str("every colon is a trace ideal\n");
    Ok(Output {
        text,
        json: serde_json::to_value(&report)?,
    })
}

/// `sq0`, `gor`, `dvr<l>` (e.g. `dvr3`) or `sgp:<gens>`.
pub fn artin_preset(preset: &str, field: FieldSpec) -> Result<ArtinAlgebra, CliError> {
    let algebra = match preset {
        "sq0" => ArtinAlgebra::square_zero_two_vars(field),
        "gor" => ArtinAlgebra::gorenstein_preset(field),
        _ if preset.starts_with("dvr") => {
            let ell: usize = preset[3..]
                .parse()
                .map_err(|_| CliError::Input(format!("bad preset {preset:?}")))?;
            if ell == 0 {
                return Err(CliError::Input("dvr needs l >= 1".into()));
            }
            ArtinAlgebra::truncated_dvr(field, ell)
        }
        _ if preset.starts_with("sgp:") => {
            ArtinAlgebra::semigroup_quotient(field, &parse_semigroup(&preset[4..])?)?
        }
        _ => {
            return Err(CliError::Input(format!(
                "unknown preset {preset:?} (expected sq0, gor, dvr<l>, sgp:<gens>)"
            )))
        }
    };
    Ok(algebra)
}

fn name_ideal(a: &ArtinAlgebra, i: &SubIdeal) -> String {
    if i.is_zero() {
        "0".into()
    } else if *i == a.whole() {
        "R".into()
    } else if *i == a.maximal_ideal() {
        "m".into()
    } else {
        a.format_ideal(i)
    }
}

/// Ideals and trace ideals of a preset over a finite field, or the
/// Gorenstein separation count over ℚ when `samples` is given.
pub fn artin(
    preset: &str,
    field: FieldSpec,
    samples: Option<&[FieldElem]>,
) -> Result<Output, CliError> {
    let mut text = String::new();
    let mut json = serde_json::Map::new();
    if let Some(samples) = samples {
        let a = artin_preset(preset, FieldSpec::Rationals)?;
        let (u, v) = (a.basis_vec(1), a.basis_vec(2.min(a.dim() - 1)));
        let report = a.gorenstein_family_separation(&u, &v, samples)?;
        if !report.all_trace {
            return Err(CliError::Violation(
                "a cyclic ideal of a Gorenstein algebra is not a trace ideal".into(),
            ));
        }
        let _ = writeln!(
            text,
            "({} + a*{}) for {} samples over Q: {} distinct trace ideals",
            a.labels()[1],
            a.labels()[2.min(a.dim() - 1)],
            samples.len(),
            report.distinct
        );
        json.insert("separation_distinct".into(), json!(report.distinct));
        json.insert("algebra".into(), serde_json::to_value(a.to_json())?);
        return Ok(Output {
            text,
            json: Value::Object(json),
        });
    }

    let a = artin_preset(preset, field)?;
    let lattice = a.enumerate_ideals()?;
    let traces: Vec<&SubIdeal> = lattice.ideals.iter().filter(|i| a.is_trace_ideal(i)).collect();
    let socle = a.socle();
    if let Some(bad) = traces.iter().find(|t| !t.is_zero() && !socle.is_subset_of(t)) {
        return Err(CliError::Violation(format!(
            "trace ideal {} misses the socle",
            a.format_ideal(bad)
        )));
    }
    let names: Vec<String> = traces.iter().map(|t| name_ideal(&a, t)).collect();
    let _ = writeln!(text, "A = {preset} over {field}, dim {}", a.dim());
    let _ = writeln!(text, "socle: {}", a.format_ideal(&socle));
    let _ = writeln!(text, "ideals: {}", lattice.ideals.len());
    let _ = writeln!(text, "Tr = {{{}}}", names.join(", "));
    json.insert("algebra".into(), serde_json::to_value(a.to_json())?);
    json.insert("ideal_count".into(), json!(lattice.ideals.len()));
    json.insert("trace_ideals".into(), json!(names));
    json.insert("socle".into(), json!(a.format_ideal(&socle)));
    Ok(Output {
        text,
        json: Value::Object(json),
    })
}
