//! Trace ideals of `R = K[[H]]`: `tr(I) = (R : I)·I`.
//!
//! Over a finite field every nonzero trace ideal contains the conductor, so
//! the ideals between `𝔠` and `R` (the ideals of the finite algebra `R/𝔠`)
//! are a complete candidate list. The zero ideal is always a trace ideal and
//! is reported as a flag, since [`FractionalIdeal`] is nonzero by
//! construction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{FieldElem, FieldSpec};
use crate::artin::{ArtinAlgebra, ArtinError, SubIdeal};
use crate::semigroup::NumericalSemigroup;
use crate::series::{adjoin, FractionalIdeal, IdealError, IdealJson, LaurentPoly};

/// Random scaled ideals checked by [`verify_smallest_regular_trace`].
pub const SCALED_PROBE_COUNT: usize = 50;
const PROBE_SEED: u64 = 0x7ace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("workload guard: {0}")]
    WorkloadExceeded(String),
    #[error("{0} does not have minimal multiplicity")]
    NotMinimalMultiplicity(NumericalSemigroup),
    #[error("R is a discrete valuation ring")]
    IsDvr,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("enumeration needs a finite field, got {0}")]
    InfiniteField(FieldSpec),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

impl From<ArtinError> for TraceError {
    fn from(e: ArtinError) -> TraceError {
        match e {
            ArtinError::WorkloadExceeded(msg) => TraceError::WorkloadExceeded(msg),
            ArtinError::InfiniteField(f) => TraceError::InfiniteField(f),
            other => unreachable!("semigroup quotients are valid algebras: {other}"),
        }
    }
}

pub fn trace(i: &FractionalIdeal) -> FractionalIdeal {
    let r = FractionalIdeal::unit_ideal(i.field(), i.semigroup());
    r.colon(i)
        .and_then(|dual| dual.multiply(i))
        .expect("R shares field and semigroup with I")
}

pub fn is_trace_ideal(i: &FractionalIdeal) -> bool {
    &trace(i) == i
}

/// `tr(I) = R`; for a rank-one module this means `I` is principal.
pub fn has_free_summand(i: &FractionalIdeal) -> bool {
    let free = trace(i) == FractionalIdeal::unit_ideal(i.field(), i.semigroup());
    debug_assert_eq!(free, i.minimal_generators().len() == 1);
    free
}

/// Short name relative to the conductor: `R`, `c`, or `c + (g1, g2)`.
pub fn describe_over_conductor(i: &FractionalIdeal) -> String {
    let (field, h) = (i.field(), i.semigroup());
    let c = FractionalIdeal::conductor_ideal(field, h);
    if *i == FractionalIdeal::unit_ideal(field, h) {
        return "R".to_string();
    }
    if *i == c {
        return "c".to_string();
    }
    if !c.is_subset_of(i).unwrap_or(false) {
        return i.to_string();
    }
    let gens: Vec<String> = i
        .minimal_generators()
        .into_iter()
        .filter(|g| !c.contains(g).unwrap_or(false))
        .map(|g| g.to_string())
        .collect();
    format!("c + ({})", gens.join(", "))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TraceFlags {
    pub is_conductor: bool,
    pub is_maximal_ideal: bool,
    pub is_unit_ideal: bool,
    pub is_monomial: bool,
}

#[derive(Debug, Clone)]
pub struct TraceEntry {
    pub ideal: FractionalIdeal,
    pub flags: TraceFlags,
    pub label: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    /// Ideals `𝔠 ⊆ I ⊆ R` examined.
    pub candidate_ideals: usize,
    pub cyclic_ideals: usize,
    pub vectors_scanned: u64,
}

#[derive(Debug, Clone)]
pub struct TraceEnumeration {
    pub field: FieldSpec,
    pub semigroup: NumericalSemigroup,
    /// Nonzero trace ideals, by `dim I/𝔠` and then by echelon rows.
    pub entries: Vec<TraceEntry>,
    pub census: Census,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceEntryJson {
    pub label: String,
    pub ideal: IdealJson,
    pub flags: TraceFlags,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceEnumerationJson {
    pub semigroup: String,
    pub field: String,
    pub zero_ideal: bool,
    pub trace_ideals: Vec<TraceEntryJson>,
    pub census: Census,
}

impl TraceEnumeration {
    pub fn ideals(&self) -> impl Iterator<Item = &FractionalIdeal> {
        self.entries.iter().map(|e| &e.ideal)
    }

    pub fn contains(&self, i: &FractionalIdeal) -> bool {
        self.ideals().any(|j| j == i)
    }

    /// Nonzero trace ideals plus the zero ideal.
    pub fn total_count(&self) -> usize {
        self.entries.len() + 1
    }

    pub fn to_json(&self) -> TraceEnumerationJson {
        TraceEnumerationJson {
            semigroup: self.semigroup.to_text(),
            field: self.field.to_string(),
            zero_ideal: true,
            trace_ideals: self
                .entries
                .iter()
                .map(|e| TraceEntryJson {
                    label: e.label.clone(),
                    ideal: e.ideal.to_json(),
                    flags: e.flags,
                })
                .collect(),
            census: self.census,
        }
    }
}

/// The ideal `𝔠 + (lifts of the rows of j)` of `R`.
fn lift(field: FieldSpec, h: &NumericalSemigroup, members: &[u32], j: &SubIdeal) -> FractionalIdeal {
    let gens: Vec<LaurentPoly> = j
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .zip(members)
                .filter(|(c, _)| !c.is_zero())
                .fold(LaurentPoly::zero(field), |p, (c, &m)| p.with_term(m as i64, c.clone()))
        })
        .collect();
    FractionalIdeal::from_generators(field, h, &gens, true).expect("conductor keeps it nonzero")
}

/// All ideals `𝔠 ⊆ I ⊆ R` over a finite field, smallest first.
pub fn candidate_ideals(
    field: FieldSpec,
    h: &NumericalSemigroup,
) -> Result<(Vec<FractionalIdeal>, Census), TraceError> {
    if !field.is_finite() {
        return Err(TraceError::InfiniteField(field));
    }
    if h.is_natural_numbers() {
        let census = Census {
            candidate_ideals: 1,
            ..Census::default()
        };
        return Ok((vec![FractionalIdeal::unit_ideal(field, h)], census));
    }
    let algebra = ArtinAlgebra::semigroup_quotient(field, h)?;
    let lattice = algebra.enumerate_ideals()?;
    let members = h.members_below(h.conductor() as i64);
    let ideals: Vec<FractionalIdeal> = lattice
        .ideals
        .iter()
        .map(|j| lift(field, h, &members, j))
        .collect();
    let census = Census {
        candidate_ideals: ideals.len(),
        cyclic_ideals: lattice.cyclic_count,
        vectors_scanned: lattice.vectors_scanned,
    };
    Ok((ideals, census))
}

pub fn enumerate_trace_ideals(
    h: &NumericalSemigroup,
    field: FieldSpec,
) -> Result<TraceEnumeration, TraceError> {
    let (candidates, census) = candidate_ideals(field, h)?;
    let conductor = FractionalIdeal::conductor_ideal(field, h);
    let maximal = FractionalIdeal::maximal_ideal(field, h);
    let unit = FractionalIdeal::unit_ideal(field, h);
    let entries = candidates
        .into_iter()
        .filter(is_trace_ideal)
        .map(|ideal| TraceEntry {
            flags: TraceFlags {
                is_conductor: ideal == conductor,
                is_maximal_ideal: ideal == maximal,
                is_unit_ideal: ideal == unit,
                is_monomial: ideal.is_monomial(),
            },
            label: describe_over_conductor(&ideal),
            ideal,
        })
        .collect();
    Ok(TraceEnumeration {
        field,
        semigroup: h.clone(),
        entries,
        census,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmallestTraceCheck {
    pub ok: bool,
    pub conductor_listed: bool,
    pub all_contain_conductor: bool,
    /// Scaled ideals `t^k·I` not containing `𝔠` that were tested.
    pub probes: usize,
    /// Probes that were trace ideals anyway (must be zero).
    pub probe_failures: usize,
}

/// Every nonzero trace ideal contains `𝔠`, and `𝔠` is one of them.
///
/// Also probes seeded random ideals `t^k·I` (`k ≥ 1`, `I` a candidate) that do
/// not contain `𝔠`: none of them may be a trace ideal.
pub fn verify_smallest_regular_trace(
    h: &NumericalSemigroup,
    field: FieldSpec,
) -> Result<SmallestTraceCheck, TraceError> {
    let enumeration = enumerate_trace_ideals(h, field)?;
    let conductor = FractionalIdeal::conductor_ideal(field, h);
    let conductor_listed = enumeration.contains(&conductor);
    let all_contain_conductor = enumeration
        .ideals()
        .all(|i| conductor.is_subset_of(i).expect("same ring"));

    let (candidates, _) = candidate_ideals(field, h)?;
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    let max_shift = (h.conductor() as i64).max(1);
    let mut probes = 0;
    let mut probe_failures = 0;
    for _ in 0..SCALED_PROBE_COUNT {
        let base = &candidates[rng.gen_range(0..candidates.len())];
        let scaled = base.shift(rng.gen_range(1..=max_shift));
        if conductor.is_subset_of(&scaled).expect("same ring") {
            continue;
        }
        probes += 1;
        if is_trace_ideal(&scaled) {
            probe_failures += 1;
        }
    }
    Ok(SmallestTraceCheck {
        ok: conductor_listed && all_contain_conductor && probe_failures == 0,
        conductor_listed,
        all_contain_conductor,
        probes,
        probe_failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub ok: bool,
    /// `|Tr(R) \ {R}|` counting nonzero ideals.
    pub left_count: usize,
    /// `|Tr(B)|` counting nonzero ideals.
    pub right_count: usize,
    /// `0 ↦ 0`; both sides always contain the zero ideal.
    pub zero_maps_to_zero: bool,
    pub injective: bool,
    /// `𝔪 : 𝔪` is the ring of the blowup semigroup.
    pub endomorphisms_match_blowup: bool,
    pub blowup: String,
}

/// Checks that `I ↦ t^{−e}·I` maps `Tr(R) \ {R}` onto `Tr(B)`, where
/// `B = 𝔪 : 𝔪 = K[[L(H)]]`.
pub fn verify_bijection(
    h: &NumericalSemigroup,
    field: FieldSpec,
) -> Result<BijectionReport, TraceError> {
    if h.is_natural_numbers() {
        return Err(TraceError::IsDvr);
    }
    if !h.has_minimal_multiplicity() {
        return Err(TraceError::NotMinimalMultiplicity(h.clone()));
    }
    let e = h.multiplicity() as i64;
    let blowup = h.blowup();
    let left = enumerate_trace_ideals(h, field)?;
    let right = enumerate_trace_ideals(&blowup, field)?;
    let unit = FractionalIdeal::unit_ideal(field, h);

    let mut images: Vec<FractionalIdeal> = Vec::new();
    let mut well_defined = true;
    for i in left.ideals().filter(|i| **i != unit) {
        match i.shift(-e).rebase(&blowup) {
            Ok(img) => images.push(img),
            Err(_) => well_defined = false,
        }
    }
    let injective = images
        .iter()
        .enumerate()
        .all(|(k, a)| images[..k].iter().all(|b| a != b));
    let onto = right.ideals().all(|j| images.contains(j));
    let into = images.iter().all(|i| right.contains(i));

    let maximal = FractionalIdeal::maximal_ideal(field, h);
    let endomorphisms_match_blowup = maximal
        .endomorphism_ring()
        .same_subset(&FractionalIdeal::unit_ideal(field, &blowup));

    Ok(BijectionReport {
        ok: well_defined && injective && onto && into && endomorphisms_match_blowup,
        left_count: images.len(),
        right_count: right.entries.len(),
        zero_maps_to_zero: true,
        injective,
        endomorphisms_match_blowup,
        blowup: blowup.to_text(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProbeVerdict {
    InfiniteFamilyWitness,
    NoSeparation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyProbeReport {
    pub semigroup: String,
    /// The elements probed are `t^n + k·t^{n+1}`.
    pub n: i64,
    pub samples: Vec<String>,
    pub distinct_results: usize,
    /// Every colon `R : R[t^n + k·t^{n+1}]` was a trace ideal.
    pub all_trace: bool,
    pub verdict: ProbeVerdict,
}

/// The template exponent `n` is usable when `1, n, n + 1 ∉ K(H)`.
pub fn family_probe_applies(h: &NumericalSemigroup, n: i64) -> bool {
    let k = h.canonical_value_set();
    n >= 1 && !k.contains(1) && !k.contains(n) && !k.contains(n + 1)
}

/// Computes `C_k = R : R[t^n + k·t^{n+1}]` over ℚ for each sample `k` and
/// counts the distinct ones. A witness needs at least two samples, all with
/// distinct colons.
pub fn family_probe(
    h: &NumericalSemigroup,
    n: i64,
    samples: &[FieldElem],
) -> Result<FamilyProbeReport, TraceError> {
    let q = FieldSpec::Rationals;
    if samples.iter().any(|s| s.field() != q) {
        return Err(TraceError::PreconditionViolated("samples must be rational".into()));
    }
    if !family_probe_applies(h, n) {
        return Err(TraceError::PreconditionViolated(format!(
            "need n >= 1 and 1, {n}, {} outside K(H) = {}",
            n + 1,
            h.canonical_value_set()
        )));
    }
    for (i, a) in samples.iter().enumerate() {
        if samples[..i].contains(a) {
            return Err(TraceError::PreconditionViolated(format!("repeated sample {a}")));
        }
    }
    let r = FractionalIdeal::unit_ideal(q, h);
    let mut colons: Vec<FractionalIdeal> = Vec::new();
    let mut all_trace = true;
    for k in samples {
        let g = LaurentPoly::monomial(q, n).with_term(n + 1, k.clone());
        let ring = adjoin(q, h, &g)?;
        let colon = r.colon(&ring)?;
        all_trace &= is_trace_ideal(&colon);
        if !colons.contains(&colon) {
            colons.push(colon);
        }
    }
    let distinct_results = colons.len();
    let verdict = if samples.len() >= 2 && distinct_results == samples.len() {
        ProbeVerdict::InfiniteFamilyWitness
    } else {
        ProbeVerdict::NoSeparation
    };
    Ok(FamilyProbeReport {
        semigroup: h.to_text(),
        n,
        samples: samples.iter().map(ToString::to_string).collect(),
        distinct_results,
        all_trace,
        verdict,
    })
}

/// `Σ_{I} (I : I)` over the nonzero trace ideals equals `R̄`.
pub fn verify_normalization_union(
    h: &NumericalSemigroup,
    field: FieldSpec,
) -> Result<bool, TraceError> {
    let enumeration = enumerate_trace_ideals(h, field)?;
    let mut union = FractionalIdeal::unit_ideal(field, h);
    for i in enumeration.ideals() {
        union = union.add(&i.endomorphism_ring())?;
    }
    Ok(union == FractionalIdeal::integral_closure(field, h))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TraceSetClass {
    /// `Tr(R) ⊆ {0, 𝔪, R}`.
    MinimalTraceSet,
    Larger,
}

/// `Tr(R) ⊆ {0, 𝔪, R}` exactly when `𝔪 ⊆ 𝔠`, i.e. `H = {0} ∪ [e, ∞)`, or
/// when `R` is a DVR.
pub fn minimal_trace_classification(h: &NumericalSemigroup) -> TraceSetClass {
    if h.is_natural_numbers() || h.conductor() == h.multiplicity() {
        TraceSetClass::MinimalTraceSet
    } else {
        TraceSetClass::Larger
    }
}

/// Whether an enumeration over `field` agrees with
/// [`minimal_trace_classification`].
pub fn cross_check_minimal_trace(
    h: &NumericalSemigroup,
    field: FieldSpec,
) -> Result<bool, TraceError> {
    let enumeration = enumerate_trace_ideals(h, field)?;
    let small = enumeration
        .entries
        .iter()
        .all(|e| e.flags.is_maximal_ideal || e.flags.is_unit_ideal);
    Ok(small == (minimal_trace_classification(h) == TraceSetClass::MinimalTraceSet))
}
