//! Numerical semigroups: membership, invariants, Apéry sets and Kunz
//! coordinates, the canonical value set, blowups and the Lipman chain, Arf
//! tests and closure, and the genus tree used to build corpora.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("no generators given")]
    EmptyGenerators,
    #[error("generators must be positive")]
    ZeroGenerator,
    #[error("not cofinite: generators have gcd {0}")]
    NotCofinite(u32),
    #[error("{0} is not a positive member of the semigroup")]
    NotAMember(i64),
    #[error("Kunz vector for e = {e} needs {expected} coordinates, got {got}")]
    KunzLength { e: u32, expected: usize, got: usize },
    #[error("genus bound {0} exceeds the supported maximum of {max}", max = MAX_ENUMERATION_GENUS)]
    BoundTooLarge(u32),
    #[error("cannot parse generator list {0:?}")]
    Parse(String),
    #[error("not a semigroup ideal: {0}")]
    NotAnIdeal(String),
}

pub const MAX_ENUMERATION_GENUS: u32 = 20;

struct SemigroupData {
    generators: Vec<u32>,
    frobenius: i64,
    /// Membership over `[0, 2·conductor + max generator]`.
    table: Vec<bool>,
}

/// A numerical semigroup `H ⊆ ℕ₀`. Cloning is cheap; the table is shared.
#[derive(Clone)]
pub struct NumericalSemigroup {
    inner: Arc<SemigroupData>,
}

impl NumericalSemigroup {
    pub fn from_generators(gens: &[u32]) -> Result<NumericalSemigroup, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::EmptyGenerators);
        }
        if gens.contains(&0) {
            return Err(SemigroupError::ZeroGenerator);
        }
        let g = gens.iter().fold(0u32, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(SemigroupError::NotCofinite(g));
        }
        let m = *gens.iter().min().unwrap();
        let apery = apery_by_shortest_paths(gens, m);
        let frobenius = *apery.iter().max().unwrap() as i64 - m as i64;
        let conductor = (frobenius + 1) as usize;
        let member = |x: usize| x as u64 >= apery[x % m as usize];

        // Minimal generators are the nonzero members that are not sums of two
        // nonzero members; all of them lie in [m, conductor + m].
        let limit = conductor + m as usize + 1;
        let members: Vec<usize> = (1..limit).filter(|&x| member(x)).collect();
        let generators: Vec<u32> = members
            .iter()
            .copied()
            .filter(|&x| {
                !members
                    .iter()
                    .take_while(|&&a| 2 * a <= x)
                    .any(|&a| member(x - a))
            })
            .map(|x| x as u32)
            .collect();
        let max_gen = *generators.iter().max().unwrap() as usize;
        let table = (0..=2 * conductor + max_gen).map(member).collect();
        Ok(NumericalSemigroup {
            inner: Arc::new(SemigroupData {
                generators,
                frobenius,
                table,
            }),
        })
    }

    /// ℕ₀, the semigroup of the power series ring itself.
    pub fn natural_numbers() -> NumericalSemigroup {
        NumericalSemigroup::from_generators(&[1]).unwrap()
    }

    /// Builds the semigroup whose members below `conductor` are given by
    /// `member`; everything at or above `conductor` is a member.
    pub fn from_membership(
        conductor: u32,
        member: impl Fn(u32) -> bool,
    ) -> Result<NumericalSemigroup, SemigroupError> {
        let c = conductor;
        let is_member = |x: u32| x == 0 || x >= c || member(x);
        let nonzero: Vec<u32> = (1..2 * c.max(1) + 1).filter(|&x| is_member(x)).collect();
        for &a in &nonzero {
            for &b in &nonzero {
                if a + b < c && !is_member(a + b) {
                    return Err(SemigroupError::NotAnIdeal(format!(
                        "{a} + {b} missing from membership set"
                    )));
                }
            }
        }
        let gens: Vec<u32> = nonzero
            .iter()
            .copied()
            .filter(|&x| !nonzero.iter().take_while(|&&a| 2 * a <= x).any(|&a| is_member(x - a)))
            .collect();
        NumericalSemigroup::from_generators(&gens)
    }

    pub fn generators(&self) -> &[u32] {
        &self.inner.generators
    }

    pub fn frobenius(&self) -> i64 {
        self.inner.frobenius
    }

    pub fn conductor(&self) -> u32 {
        (self.inner.frobenius + 1) as u32
    }

    pub fn table_bound(&self) -> u32 {
        self.inner.table.len() as u32 - 1
    }

    pub fn contains(&self, x: i64) -> bool {
        if x < 0 {
            return false;
        }
        if x >= self.conductor() as i64 {
            return true;
        }
        self.inner.table[x as usize]
    }

    pub fn is_natural_numbers(&self) -> bool {
        self.inner.frobenius == -1
    }

    pub fn multiplicity(&self) -> u32 {
        self.inner.generators[0]
    }

    pub fn embedding_dimension(&self) -> usize {
        self.inner.generators.len()
    }

    pub fn has_minimal_multiplicity(&self) -> bool {
        self.multiplicity() as usize == self.embedding_dimension()
    }

    pub fn gaps(&self) -> Vec<u32> {
        (1..self.conductor()).filter(|&x| !self.contains(x as i64)).collect()
    }

    pub fn genus(&self) -> usize {
        self.gaps().len()
    }

    /// Members strictly below `bound`, ascending.
    pub fn members_below(&self, bound: i64) -> Vec<u32> {
        (0..bound.max(0))
            .filter(|&x| self.contains(x))
            .map(|x| x as u32)
            .collect()
    }

    /// Symmetric (Gorenstein): `x ∈ H ⟺ F − x ∉ H` for all integers x.
    pub fn is_symmetric(&self) -> bool {
        let f = self.frobenius();
        (0..=f.max(0)).all(|x| self.contains(x) != self.contains(f - x))
    }

    /// Pseudo-Frobenius numbers: gaps x with x + h ∈ H for every nonzero h ∈ H.
    pub fn pseudo_frobenius(&self) -> Vec<i64> {
        if self.is_natural_numbers() {
            return vec![-1];
        }
        let gens = self.generators();
        (1..self.conductor() as i64)
            .filter(|&x| !self.contains(x) && gens.iter().all(|&g| self.contains(x + g as i64)))
            .collect()
    }

    /// Least member in each residue class mod `e`, sorted ascending.
    pub fn apery_set(&self, e: u32) -> Result<Vec<u32>, SemigroupError> {
        let mut w = self.apery_by_residue(e)?;
        w.sort_unstable();
        Ok(w)
    }

    /// Apéry elements indexed by residue: `w[i] ≡ i (mod e)`.
    pub fn apery_by_residue(&self, e: u32) -> Result<Vec<u32>, SemigroupError> {
        if e == 0 || !self.contains(e as i64) {
            return Err(SemigroupError::NotAMember(e as i64));
        }
        Ok((0..e)
            .map(|i| {
                (i..)
                    .step_by(e as usize)
                    .find(|&x| self.contains(x as i64))
                    .expect("every residue class meets H")
            })
            .collect())
    }

    pub fn kunz_coordinates(&self, e: u32) -> Result<KunzVector, SemigroupError> {
        if e < 2 {
            return Err(SemigroupError::NotAMember(e as i64));
        }
        let w = self.apery_by_residue(e)?;
        let coords = (1..e as usize).map(|i| (w[i] - i as u32) / e).collect();
        KunzVector::new(e, coords)
    }

    /// `K(H) = {x ∈ ℤ : F(H) − x ∉ H}`, the value set of the normalized canonical ideal.
    pub fn canonical_value_set(&self) -> SemigroupIdeal {
        let f = self.frobenius();
        SemigroupIdeal::from_predicate(self.clone(), 0, f + 1, |x| !self.contains(f - x))
            .expect("K(H) is an H-ideal")
    }

    /// Cohen–Macaulay type, the number of H-ideal generators of `K(H)`.
    pub fn cm_type(&self) -> usize {
        self.canonical_value_set().generators().len()
    }

    pub fn value_set_condition(&self) -> ValueSetCondition {
        let k = self.canonical_value_set();
        if k.contains(1) {
            return ValueSetCondition::ConditionI;
        }
        let top = self.frobenius() + 1;
        match (2..=top.max(2)).find(|&n| !k.contains(n) && !k.contains(n + 1)) {
            Some(n) => ValueSetCondition::Fails(n),
            None => ValueSetCondition::ConditionII,
        }
    }

    /// Value semigroup of `R[ω/a]`: the semigroup generated by `H ∪ K(H)`.
    pub fn canonical_ring_semigroup(&self) -> NumericalSemigroup {
        let k = self.canonical_value_set();
        let mut gens: Vec<u32> = self.generators().to_vec();
        gens.extend(k.generators().iter().filter(|&&x| x > 0).map(|&x| x as u32));
        NumericalSemigroup::from_generators(&gens).expect("contains H, hence cofinite")
    }

    pub fn cm_type_list_check(&self) -> CmTypeListing {
        let s = self.canonical_ring_semigroup();
        let gens = s.generators();
        let tag = match gens {
            [1] => Some(CmTypeTag::Trivial),
            [2, b] => Some(CmTypeTag::TwoGenerated { s: u32::div_ceil(*b, 2) }),
            [3, 4] => Some(CmTypeTag::ThreeFour),
            [3, 5] => Some(CmTypeTag::ThreeFive),
            [3, 5, 7] => Some(CmTypeTag::ThreeFiveSeven),
            [3, 4, 5] => Some(CmTypeTag::ThreeFourFive),
            _ => None,
        };
        match tag {
            Some(t) => CmTypeListing::Listed(t),
            None => CmTypeListing::NotListed(s),
        }
    }

    /// The Lipman semigroup `L(H) = ⟨e, g₂ − e, …, g_k − e⟩`, the value
    /// semigroup of `𝔪 : 𝔪` (equivalently of the first blowup).
    pub fn blowup(&self) -> NumericalSemigroup {
        let e = self.multiplicity();
        let mut gens = vec![e];
        gens.extend(self.generators().iter().filter(|&&g| g != e).map(|&g| g - e));
        NumericalSemigroup::from_generators(&gens).expect("same gcd as H")
    }

    /// `{0} ∪ {h − e : h ∈ H, h ≥ e}`; equals [`Self::blowup`] exactly when
    /// H has minimal multiplicity.
    pub fn shifted_maximal_ideal(&self) -> Option<NumericalSemigroup> {
        let e = self.multiplicity() as i64;
        let c = (self.conductor() as i64 - e).max(0) as u32;
        NumericalSemigroup::from_membership(c, |x| self.contains(x as i64 + e)).ok()
    }

    /// `H = H₀ ⊊ H₁ ⊊ … ⊊ ℕ₀` by repeated blowups.
    pub fn lipman_sequence(&self) -> Vec<NumericalSemigroup> {
        let mut chain = vec![self.clone()];
        while !chain.last().unwrap().is_natural_numbers() {
            let next = chain.last().unwrap().blowup();
            debug_assert!(next.genus() < chain.last().unwrap().genus());
            chain.push(next);
        }
        chain
    }

    /// Arf via the Lipman chain: every blowup has minimal multiplicity.
    pub fn is_arf(&self) -> bool {
        self.lipman_sequence()
            .iter()
            .all(NumericalSemigroup::has_minimal_multiplicity)
    }

    /// Arf via the closure condition: `x + y − z ∈ H` for members `x ≥ y ≥ z`
    /// up to twice the conductor.
    pub fn satisfies_arf_condition(&self) -> bool {
        let members = self.members_below(2 * self.conductor() as i64 + 1);
        for (i, &x) in members.iter().enumerate() {
            for (j, &y) in members[..=i].iter().enumerate() {
                for &z in &members[..=j] {
                    if !self.contains(x as i64 + y as i64 - z as i64) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The smallest Arf semigroup containing H.
    pub fn arf_closure(&self) -> NumericalSemigroup {
        let c = self.conductor() as usize;
        let mut member: Vec<bool> = (0..c).map(|x| self.contains(x as i64)).collect();
        loop {
            let current: Vec<usize> = (0..c).filter(|&x| member[x]).collect();
            let mut changed = false;
            for (i, &x) in current.iter().enumerate() {
                for (j, &y) in current[..=i].iter().enumerate() {
                    for &z in &current[..=j] {
                        let s = x + y - z;
                        if s < c && !member[s] {
                            member[s] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        NumericalSemigroup::from_membership(c as u32, |x| member[x as usize])
            .expect("closure contains all sums")
    }

    /// `H \ {g}` for a minimal generator `g`.
    pub fn remove_generator(&self, g: u32) -> Option<NumericalSemigroup> {
        if !self.generators().contains(&g) {
            return None;
        }
        let c = self.conductor().max(g + 1);
        NumericalSemigroup::from_membership(c, |x| x != g && self.contains(x as i64)).ok()
    }

    /// Children in the genus tree: remove each minimal generator above the
    /// Frobenius number.
    pub fn tree_children(&self) -> Vec<NumericalSemigroup> {
        let f = self.frobenius();
        self.generators()
            .iter()
            .filter(|&&g| g as i64 > f)
            .filter_map(|&g| self.remove_generator(g))
            .collect()
    }

    /// Comma-separated minimal generators, e.g. `4,5,11`.
    pub fn to_text(&self) -> String {
        self.generators()
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn apery_by_shortest_paths(gens: &[u32], m: u32) -> Vec<u64> {
    let m = m as usize;
    let mut dist = vec![u64::MAX; m];
    dist[0] = 0;
    let mut heap = BinaryHeap::from([Reverse((0u64, 0usize))]);
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for &g in gens {
            let nd = d + g as u64;
            let nr = (r + g as usize) % m;
            if nd < dist[nr] {
                dist[nr] = nd;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    dist
}

impl PartialEq for NumericalSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.generators() == other.generators()
    }
}

impl Eq for NumericalSemigroup {}

impl std::hash::Hash for NumericalSemigroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.generators().hash(state);
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.to_text())
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.to_text())
    }
}

impl FromStr for NumericalSemigroup {
    type Err = SemigroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches(['<', '⟨']).trim_end_matches(['>', '⟩']);
        let gens = trimmed
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| SemigroupError::Parse(s.to_string()))?;
        NumericalSemigroup::from_generators(&gens)
    }
}

/// A set `E ⊆ ℤ` with `E + H ⊆ E` that contains every integer from
/// `stable_bound` on.
#[derive(Clone, PartialEq, Eq)]
pub struct SemigroupIdeal {
    base: NumericalSemigroup,
    min: i64,
    stable_bound: i64,
    /// Membership over `[min, stable_bound)`.
    table: Vec<bool>,
}

impl SemigroupIdeal {
    /// Builds `E` from a membership predicate on `[lo, hi)`; every integer `≥ hi`
    /// is a member and nothing below `lo` is. Normalizes `min` and `stable_bound`.
    pub fn from_predicate(
        base: NumericalSemigroup,
        lo: i64,
        hi: i64,
        member: impl Fn(i64) -> bool,
    ) -> Result<SemigroupIdeal, SemigroupError> {
        let hi = hi.max(lo);
        let mut stable = hi;
        while stable > lo && member(stable - 1) {
            stable -= 1;
        }
        let min = (lo..stable).find(|&x| member(x)).unwrap_or(stable);
        let table = (min..stable).map(&member).collect();
        let ideal = SemigroupIdeal {
            base,
            min,
            stable_bound: stable,
            table,
        };
        ideal.check_closed()?;
        Ok(ideal)
    }

    /// `gens + H`.
    pub fn generated_by(
        base: NumericalSemigroup,
        gens: &[i64],
    ) -> Result<SemigroupIdeal, SemigroupError> {
        let lo = *gens.iter().min().ok_or(SemigroupError::EmptyGenerators)?;
        let hi = lo + base.conductor() as i64;
        let b = base.clone();
        SemigroupIdeal::from_predicate(base, lo, hi, |x| {
            gens.iter().any(|&g| b.contains(x - g))
        })
    }

    fn check_closed(&self) -> Result<(), SemigroupError> {
        for x in self.min..self.stable_bound {
            if !self.contains(x) {
                continue;
            }
            for &g in self.base.generators() {
                if !self.contains(x + g as i64) {
                    return Err(SemigroupError::NotAnIdeal(format!(
                        "{x} is a member but {} is not",
                        x + g as i64
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &NumericalSemigroup {
        &self.base
    }

    pub fn min(&self) -> i64 {
        self.min
    }

    pub fn stable_bound(&self) -> i64 {
        self.stable_bound
    }

    pub fn contains(&self, x: i64) -> bool {
        if x >= self.stable_bound {
            true
        } else if x < self.min {
            false
        } else {
            self.table[(x - self.min) as usize]
        }
    }

    /// Members below `stable_bound`.
    pub fn small_elements(&self) -> Vec<i64> {
        (self.min..self.stable_bound).filter(|&x| self.contains(x)).collect()
    }

    /// Minimal generators as an H-ideal: members `x` with `x − h ∉ E` for
    /// every nonzero `h ∈ H`.
    pub fn generators(&self) -> Vec<i64> {
        let top = self.stable_bound + self.base.multiplicity() as i64;
        (self.min..top)
            .filter(|&x| self.contains(x))
            .filter(|&x| {
                (1..=x - self.min)
                    .filter(|&h| self.base.contains(h))
                    .all(|h| !self.contains(x - h))
            })
            .collect()
    }

    pub fn shift(&self, k: i64) -> SemigroupIdeal {
        SemigroupIdeal {
            base: self.base.clone(),
            min: self.min + k,
            stable_bound: self.stable_bound + k,
            table: self.table.clone(),
        }
    }

    /// Is this ideal the semigroup itself?
    pub fn equals_base(&self) -> bool {
        self.min == 0 && (0..self.stable_bound.max(self.base.conductor() as i64))
            .all(|x| self.contains(x) == self.base.contains(x))
    }
}

impl fmt::Debug for SemigroupIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SemigroupIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let small: Vec<String> = self.small_elements().iter().map(i64::to_string).collect();
        if small.is_empty() {
            write!(f, "[{},∞)", self.stable_bound)
        } else {
            write!(f, "{{{}}} ∪ [{},∞)", small.join(","), self.stable_bound)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueSetCondition {
    /// `1 ∈ K(H)`.
    ConditionI,
    /// `1 ∉ K(H)` and every `n ≥ 2` has `n` or `n + 1` in `K(H)`.
    ConditionII,
    /// Least `n ≥ 2` with `n, n + 1 ∉ K(H)` (and `1 ∉ K(H)`).
    Fails(i64),
}

impl ValueSetCondition {
    pub fn holds(&self) -> bool {
        !matches!(self, ValueSetCondition::Fails(_))
    }
}

impl fmt::Display for ValueSetCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueSetCondition::ConditionI => write!(f, "I"),
            ValueSetCondition::ConditionII => write!(f, "II"),
            ValueSetCondition::Fails(n) => write!(f, "fails({n})"),
        }
    }
}

/// Entries of the finite-representation-type list for the value semigroup of
/// `R[ω/a]`. The published list repeats `⟨3,5,7⟩`; the second slot is read
/// as `⟨3,4,5⟩`, reported through [`CmTypeTag::is_substituted`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmTypeTag {
    Trivial,
    TwoGenerated { s: u32 },
    ThreeFour,
    ThreeFive,
    ThreeFiveSeven,
    ThreeFourFive,
}

impl CmTypeTag {
    pub fn is_substituted(&self) -> bool {
        matches!(self, CmTypeTag::ThreeFourFive)
    }
}

impl fmt::Display for CmTypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CmTypeTag::Trivial => write!(f, "<1>"),
            CmTypeTag::TwoGenerated { s } => write!(f, "<2,{}> (s={s})", 2 * s - 1),
            CmTypeTag::ThreeFour => write!(f, "<3,4>"),
            CmTypeTag::ThreeFive => write!(f, "<3,5>"),
            CmTypeTag::ThreeFiveSeven => write!(f, "<3,5,7>"),
            CmTypeTag::ThreeFourFive => write!(f, "<3,4,5> (substituted entry)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CmTypeListing {
    Listed(CmTypeTag),
    /// Carries the semigroup that was tested.
    NotListed(NumericalSemigroup),
}

/// Kunz coordinates `(μ₁, …, μ_{e−1})` with respect to `e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KunzVector {
    e: u32,
    coords: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KunzClass {
    Exterior,
    Boundary,
    Interior,
}

impl fmt::Display for KunzClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            KunzClass::Exterior => "exterior",
            KunzClass::Boundary => "boundary",
            KunzClass::Interior => "interior",
        };
        f.write_str(s)
    }
}

impl KunzVector {
    pub fn new(e: u32, coords: Vec<u32>) -> Result<KunzVector, SemigroupError> {
        let expected = e.saturating_sub(1) as usize;
        if e < 2 || coords.len() != expected {
            return Err(SemigroupError::KunzLength {
                e,
                expected,
                got: coords.len(),
            });
        }
        Ok(KunzVector { e, coords })
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// `μ_i` for `1 ≤ i ≤ e − 1`.
    pub fn mu(&self, i: usize) -> i64 {
        self.coords[i - 1] as i64
    }

    /// Position relative to the Kunz cone. For `i ≤ j`, `i + j ≠ e`:
    /// `μ_i + μ_j ≥ μ_{i+j}` when `i + j < e` and `μ_i + μ_j ≥ μ_{i+j−e} − 1`
    /// when `i + j > e`. Interior means every inequality is strict and every
    /// `μ_i ≥ 1`.
    pub fn classify(&self) -> KunzClass {
        let e = self.e as usize;
        let mut all_strict = true;
        for i in 1..e {
            for j in i..e {
                if i + j == e {
                    continue;
                }
                let lhs = self.mu(i) + self.mu(j);
                let rhs = if i + j < e {
                    self.mu(i + j)
                } else {
                    self.mu(i + j - e) - 1
                };
                if lhs < rhs {
                    return KunzClass::Exterior;
                }
                if lhs == rhs {
                    all_strict = false;
                }
            }
        }
        if all_strict && self.coords.iter().all(|&m| m >= 1) {
            KunzClass::Interior
        } else {
            KunzClass::Boundary
        }
    }
}

pub fn kunz_cone_classify(x: &KunzVector) -> KunzClass {
    x.classify()
}

/// Every numerical semigroup of genus at most `max_genus`, genus by genus,
/// each level ordered lexicographically by gap set.
pub fn enumerate_semigroups(max_genus: u32) -> Result<SemigroupTree, SemigroupError> {
    if max_genus > MAX_ENUMERATION_GENUS {
        return Err(SemigroupError::BoundTooLarge(max_genus));
    }
    Ok(SemigroupTree {
        max_genus,
        genus: 0,
        level: vec![NumericalSemigroup::natural_numbers()],
        pos: 0,
    })
}

/// Lazy level-by-level walk of the genus tree.
pub struct SemigroupTree {
    max_genus: u32,
    genus: u32,
    level: Vec<NumericalSemigroup>,
    pos: usize,
}

impl Iterator for SemigroupTree {
    type Item = NumericalSemigroup;

    fn next(&mut self) -> Option<NumericalSemigroup> {
        while self.pos == self.level.len() {
            if self.genus >= self.max_genus || self.level.is_empty() {
                return None;
            }
            let mut next: Vec<(Vec<u32>, NumericalSemigroup)> = self
                .level
                .iter()
                .flat_map(NumericalSemigroup::tree_children)
                .map(|h| (h.gaps(), h))
                .collect();
            next.sort_by(|a, b| a.0.cmp(&b.0));
            self.level = next.into_iter().map(|(_, h)| h).collect();
            self.genus += 1;
            self.pos = 0;
        }
        self.pos += 1;
        Some(self.level[self.pos - 1].clone())
    }
}
