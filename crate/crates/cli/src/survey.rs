//! Batch survey over a corpus of semigroups: one JSON record per semigroup,
//! a fixed-column CSV summary, and a run record whose timing fields live
//! under `meta` so everything else is byte-identical for a given config.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use trace_forge_core::arith::{FieldElem, FieldSpec};
use trace_forge_core::semigroup::{enumerate_semigroups, KunzClass, NumericalSemigroup};
use trace_forge_core::series::FractionalIdeal;
use trace_forge_core::trace::{
    self, BijectionReport, FamilyProbeReport, ProbeVerdict, TraceSetClass,
};

use crate::{parse_prime, parse_semigroup, CliError};

pub const SCHEMA_VERSION: u32 = 1;
pub const MAX_SURVEY_GENUS: u32 = 10;

#[derive(Debug, Clone, Serialize)]
pub struct SurveyConfig {
    pub max_genus: Option<u32>,
    pub corpus: Option<PathBuf>,
    pub p: u64,
    pub seed: u64,
    /// Family-probe samples per semigroup.
    pub samples: usize,
    #[serde(skip)]
    pub out: PathBuf,
    #[serde(skip)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Checks {
    /// Every nonzero trace ideal contains `𝔠`, and `𝔠` is one.
    pub conductor_smallest: Option<bool>,
    /// `𝔪` is a trace ideal exactly when `H ≠ ℕ₀`.
    pub maximal_ideal: bool,
    /// `Σ I:I` over trace ideals is the normalization.
    pub normalization_union: Option<bool>,
    /// Arf implies the value-set condition holds.
    pub arf_value_set: Option<bool>,
    pub bijection: Option<bool>,
    /// `Tr(R) ⊆ {0, 𝔪, R}` exactly when `𝔪 ⊆ 𝔠`.
    pub minimal_trace_set: Option<bool>,
    /// Not exterior, and interior exactly for minimal multiplicity.
    pub kunz: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SurveyRecord {
    pub gens: String,
    pub genus: usize,
    pub multiplicity: u32,
    pub embedding_dimension: usize,
    pub frobenius: i64,
    pub arf: bool,
    pub minimal_multiplicity: bool,
    pub kunz_class: Option<String>,
    pub vs_condition: String,
    /// Trace ideals over 𝔽_p, counting the zero ideal.
    pub n_trace: Option<usize>,
    pub trace_ideals: Option<Vec<String>>,
    pub bijection: Option<BijectionReport>,
    pub family: Option<FamilyProbeReport>,
    pub checks: Checks,
    pub violations: Vec<String>,
    pub errors: Vec<String>,
}

#[derive(Debug, Serialize)]
struct SummaryRow<'a> {
    gens: &'a str,
    genus: usize,
    mult: u32,
    edim: usize,
    arf: bool,
    kunz_class: &'a str,
    vs_condition: &'a str,
    n_trace_p: Option<usize>,
    bijection_ok: Option<bool>,
    family_witness: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub gens: String,
    pub what: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub started_unix: u64,
    pub elapsed_ms: u128,
    pub threads: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    pub config: SurveyConfig,
    pub semigroups: usize,
    pub violations: Vec<Violation>,
    /// Semigroups whose value-set condition fails: candidates for study.
    pub value_set_failures: Vec<String>,
    pub errors: usize,
    pub meta: Meta,
}

pub struct SurveyOutcome {
    pub records: Vec<SurveyRecord>,
    pub run: RunRecord,
}

/// One semigroup per line as comma-separated generators; `#` starts a
/// comment.
pub fn read_corpus(path: &Path) -> Result<Vec<NumericalSemigroup>, CliError> {
    let text = fs::read_to_string(path)?;
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(parse_semigroup)
        .collect()
}

fn corpus(config: &SurveyConfig) -> Result<Vec<NumericalSemigroup>, CliError> {
    match (&config.corpus, config.max_genus) {
        (Some(path), None) => read_corpus(path),
        (None, Some(g)) if g <= MAX_SURVEY_GENUS => Ok(enumerate_semigroups(g)?.collect()),
        (None, Some(g)) => Err(CliError::Input(format!(
            "--max-genus {g} exceeds {MAX_SURVEY_GENUS}"
        ))),
        _ => Err(CliError::Input(
            "give exactly one of --max-genus and --corpus".into(),
        )),
    }
}

fn draw_samples(rng: &mut ChaCha8Rng, count: usize) -> Vec<FieldElem> {
    let mut picked: Vec<i64> = Vec::new();
    while picked.len() < count {
        let k = rng.gen_range(-20..=20);
        if !picked.contains(&k) {
            picked.push(k);
        }
    }
    picked.into_iter().map(|k| FieldSpec::Rationals.from_i64(k)).collect()
}

/// Runs every check on one semigroup. Workload and precondition failures
/// are recorded as errors; failed checks become violations.
pub fn survey_one(
    h: &NumericalSemigroup,
    field: FieldSpec,
    rng: &mut ChaCha8Rng,
    samples: usize,
) -> SurveyRecord {
    let e = h.multiplicity();
    let kunz = (e >= 2).then(|| h.kunz_coordinates(e).expect("e is the multiplicity").classify());
    let vs = h.value_set_condition();
    let mut checks = Checks::default();
    let mut errors = Vec::new();

    let maximal = FractionalIdeal::maximal_ideal(field, h);
    checks.maximal_ideal = trace::is_trace_ideal(&maximal) != h.is_natural_numbers();
    checks.kunz = kunz.map(|k| {
        k != KunzClass::Exterior && (k == KunzClass::Interior) == h.has_minimal_multiplicity()
    });
    checks.arf_value_set = h.is_arf().then(|| vs.holds());

    let mut n_trace = None;
    let mut trace_ideals = None;
    match trace::enumerate_trace_ideals(h, field) {
        Ok(en) => {
            let conductor = FractionalIdeal::conductor_ideal(field, h);
            checks.conductor_smallest = Some(
                en.contains(&conductor)
                    && en.ideals().all(|i| conductor.is_subset_of(i).expect("same ring")),
            );
            let mut union = FractionalIdeal::unit_ideal(field, h);
            for i in en.ideals() {
                union = union.add(&i.endomorphism_ring()).expect("same ring");
            }
            checks.normalization_union =
                Some(union == FractionalIdeal::integral_closure(field, h));
            let small = en
                .entries
                .iter()
                .all(|x| x.flags.is_maximal_ideal || x.flags.is_unit_ideal);
            checks.minimal_trace_set = Some(
                small
                    == (trace::minimal_trace_classification(h) == TraceSetClass::MinimalTraceSet),
            );
            n_trace = Some(en.total_count());
            trace_ideals = Some(en.entries.iter().map(|x| x.label.clone()).collect());
        }
        Err(err) => errors.push(format!("enumeration: {err}")),
    }

    let mut bijection = None;
    if h.has_minimal_multiplicity() && !h.is_natural_numbers() {
        match trace::verify_bijection(h, field) {
            Ok(report) => {
                checks.bijection = Some(report.ok);
                bijection = Some(report);
            }
            Err(err) => errors.push(format!("bijection: {err}")),
        }
    }

    let mut family = None;
    let c = h.conductor() as i64;
    if let Some(n) = (2..=c + 1).find(|&n| trace::family_probe_applies(h, n)) {
        let ks = draw_samples(rng, samples);
        match trace::family_probe(h, n, &ks) {
            Ok(report) => family = Some(report),
            Err(err) => errors.push(format!("family probe: {err}")),
        }
    }

    let mut violations = Vec::new();
    let mut flag = |ok: Option<bool>, what: &str| {
        if ok == Some(false) {
            violations.push(what.to_string());
        }
    };
    flag(checks.conductor_smallest, "a nonzero trace ideal misses the conductor");
    flag(Some(checks.maximal_ideal), "maximal ideal trace status disagrees with DVR test");
    flag(checks.normalization_union, "endomorphism rings of trace ideals do not cover R-bar");
    flag(checks.arf_value_set, "Arf semigroup fails the value-set condition");
    flag(checks.bijection, "blowup bijection fails");
    flag(checks.minimal_trace_set, "Tr(R) in {0,m,R} disagrees with m in c");
    flag(checks.kunz, "Kunz class disagrees with minimal multiplicity");
    if family.as_ref().is_some_and(|f| !f.all_trace) {
        violations.push("a family-probe colon is not a trace ideal".into());
    }

    SurveyRecord {
        gens: h.to_text(),
        genus: h.genus(),
        multiplicity: e,
        embedding_dimension: h.embedding_dimension(),
        frobenius: h.frobenius(),
        arf: h.is_arf(),
        minimal_multiplicity: h.has_minimal_multiplicity(),
        kunz_class: kunz.map(|k| k.to_string()),
        vs_condition: format!("{vs:?}"),
        n_trace,
        trace_ideals,
        bijection,
        family,
        checks,
        violations,
        errors,
    }
}

pub fn record_file_name(gens: &str) -> String {
    format!("H_{}.json", gens.replace(',', "_"))
}

/// Runs the survey and writes `H_*.json`, `summary.csv` and `run.json` into
/// `config.out`.
pub fn run_survey(config: &SurveyConfig) -> Result<SurveyOutcome, CliError> {
    let started = Instant::now();
    let started_unix = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs());
    let field = parse_prime(config.p)?;
    let semigroups = corpus(config)?;

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = config.threads {
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Input(format!("thread pool: {e}")))?;
    let threads = pool.current_num_threads();
    // One ChaCha stream per corpus position keeps sampling independent of
    // scheduling.
    let records: Vec<SurveyRecord> = pool.install(|| {
        semigroups
            .par_iter()
            .enumerate()
            .map(|(idx, h)| {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                rng.set_stream(idx as u64);
                survey_one(h, field, &mut rng, config.samples)
            })
            .collect()
    });

    fs::create_dir_all(&config.out)?;
    for r in &records {
        let path = config.out.join(record_file_name(&r.gens));
        fs::write(path, serde_json::to_string_pretty(r)? + "\n")?;
    }
    let mut csv = csv::Writer::from_path(config.out.join("summary.csv"))?;
    for r in &records {
        csv.serialize(SummaryRow {
            gens: &r.gens,
            genus: r.genus,
            mult: r.multiplicity,
            edim: r.embedding_dimension,
            arf: r.arf,
            kunz_class: r.kunz_class.as_deref().unwrap_or(""),
            vs_condition: &r.vs_condition,
            n_trace_p: r.n_trace,
            bijection_ok: r.bijection.as_ref().map(|b| b.ok),
            family_witness: r
                .family
                .as_ref()
                .map(|f| f.verdict == ProbeVerdict::InfiniteFamilyWitness),
        })?;
    }
    csv.flush()?;

    let violations = records
        .iter()
        .flat_map(|r| {
            r.violations.iter().map(|v| Violation {
                gens: r.gens.clone(),
                what: v.clone(),
            })
        })
        .collect();
    let run = RunRecord {
        schema_version: SCHEMA_VERSION,
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: config.clone(),
        semigroups: records.len(),
        violations,
        value_set_failures: records
            .iter()
            .filter(|r| r.vs_condition.starts_with("Fails"))
            .map(|r| r.gens.clone())
            .collect(),
        errors: records.iter().map(|r| r.errors.len()).sum(),
        meta: Meta {
            started_unix,
            elapsed_ms: started.elapsed().as_millis(),
            threads,
        },
    };
    fs::write(
        config.out.join("run.json"),
        serde_json::to_string_pretty(&run)? + "\n",
    )?;
    Ok(SurveyOutcome { records, run })
}
