//! Finite-dimensional commutative local algebras given by a multiplication
//! table, with ideals as echelon subspaces.
//!
//! Elements are coordinate vectors in the fixed basis. Trace ideals are
//! computed from the definition, as the sum of images of all `A`-linear maps
//! `I → A`, since colon ideals say nothing without non-zerodivisors.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{echelon_basis, FieldElem, FieldSpec, Matrix};
use crate::semigroup::NumericalSemigroup;

/// Largest `p^dim` for which ideals are enumerated.
pub const MAX_ENUMERATION_VECTORS: u64 = 10_000_000;

/// Largest ideal lattice an enumeration may build.
pub const MAX_IDEALS: usize = 20_000;

/// Largest `dim_K(R/𝔠)` accepted by [`ArtinAlgebra::semigroup_quotient`].
pub const MAX_QUOTIENT_DIM: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArtinError {
    #[error("multiplication table is not {0}x{0}x{0}")]
    BadTable(usize),
    #[error("basis elements {0} and {1} do not commute")]
    NotCommutative(usize, usize),
    #[error("basis elements {0}, {1}, {2} do not associate")]
    NotAssociative(usize, usize, usize),
    #[error("basis element {0} is not a multiplicative identity")]
    NoIdentity(usize),
    #[error("non-unit basis elements do not span a nilpotent ideal")]
    NotLocal,
    #[error("the conductor is the whole ring, so R/c is zero")]
    ZeroQuotient,
    #[error("ideal enumeration needs a finite field, got {0}")]
    InfiniteField(FieldSpec),
    #[error("workload guard: {0}")]
    WorkloadExceeded(String),
    #[error("socle has dimension {0}, not 1")]
    NotGorenstein(usize),
    #[error("elements are not independent modulo m^2")]
    DependentGenerators,
    #[error("vector of length {got} in an algebra of dimension {dim}")]
    DimensionMismatch { dim: usize, got: usize },
}

/// An ideal of an [`ArtinAlgebra`]: the nonzero rows of a reduced echelon
/// basis, with their pivot columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubIdeal {
    rows: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
}

impl SubIdeal {
    pub fn rows(&self) -> &[Vec<FieldElem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Coordinates of `v` in the row basis, if `v` lies in the span.
    fn coordinates(&self, v: &[FieldElem]) -> Option<Vec<FieldElem>> {
        let coords: Vec<FieldElem> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (row, c) in self.rows.iter().zip(&coords) {
            for (x, r) in rest.iter_mut().zip(row) {
                *x = &*x - &(c * r);
            }
        }
        rest.iter().all(FieldElem::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subset_of(&self, other: &SubIdeal) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }
}

/// All ideals of an algebra over a finite field, sorted by dimension and
/// then by echelon rows.
#[derive(Debug, Clone)]
pub struct IdealLattice {
    pub ideals: Vec<SubIdeal>,
    /// Distinct cyclic ideals `A·v`.
    pub cyclic_count: usize,
    /// Nonzero vectors (up to scalars) whose cyclic ideals were formed.
    pub vectors_scanned: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtinAlgebra {
    field: FieldSpec,
    labels: Vec<String>,
    /// `table[i][j]` is the coordinate vector of `b_i·b_j`.
    table: Vec<Vec<Vec<FieldElem>>>,
    unit: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub field: String,
    pub labels: Vec<String>,
    pub table: Vec<Vec<Vec<String>>>,
}

/// Outcome of [`ArtinAlgebra::gorenstein_family_separation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationReport {
    pub distinct: usize,
    pub all_trace: bool,
}

impl ArtinAlgebra {
    /// Validates commutativity, associativity, the identity and locality.
    pub fn from_table(
        field: FieldSpec,
        labels: Vec<String>,
        table: Vec<Vec<Vec<FieldElem>>>,
        unit: usize,
    ) -> Result<ArtinAlgebra, ArtinError> {
        let n = labels.len();
        let shape_ok = n >= 1
            && unit < n
            && table.len() == n
            && table
                .iter()
                .all(|row| row.len() == n && row.iter().all(|v| v.len() == n));
        if !shape_ok {
            return Err(ArtinError::BadTable(n));
        }
        let a = ArtinAlgebra {
            field,
            labels,
            table,
            unit,
        };
        for i in 0..n {
            for j in 0..n {
                if a.table[i][j] != a.table[j][i] {
                    return Err(ArtinError::NotCommutative(i, j));
                }
            }
            if a.table[unit][i] != a.basis_vec(i) {
                return Err(ArtinError::NoIdentity(unit));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = a.mul(&a.table[i][j], &a.basis_vec(k));
                    let right = a.mul(&a.basis_vec(i), &a.table[j][k]);
                    if left != right {
                        return Err(ArtinError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        if !a.maximal_ideal_is_nilpotent() {
            return Err(ArtinError::NotLocal);
        }
        Ok(a)
    }

    /// Builds a table from a product rule on basis indices: `rule(i, j)` is
    /// `Some((k, c))` for `b_i·b_j = c·b_k` and `None` for zero.
    fn from_monomial_rule(
        field: FieldSpec,
        labels: Vec<String>,
        rule: impl Fn(usize, usize) -> Option<(usize, i64)>,
    ) -> ArtinAlgebra {
        let n = labels.len();
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = vec![field.zero(); n];
                        if let Some((k, c)) = rule(i, j) {
                            v[k] = field.from_i64(c);
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        ArtinAlgebra::from_table(field, labels, table, 0).expect("monomial presets are valid")
    }

    /// `K[x]/(x^ℓ)`; `ℓ = 0` is treated as 1.
    pub fn truncated_dvr(field: FieldSpec, ell: usize) -> ArtinAlgebra {
        let ell = ell.max(1);
        let labels = (0..ell)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        ArtinAlgebra::from_monomial_rule(field, labels, |i, j| (i + j < ell).then_some((i + j, 1)))
    }

    /// `K[x,y]/(x,y)²` with basis `{1, x, y}`.
    pub fn square_zero_two_vars(field: FieldSpec) -> ArtinAlgebra {
        let labels = ["1", "x", "y"].map(String::from).to_vec();
        ArtinAlgebra::from_monomial_rule(field, labels, |i, j| match (i, j) {
            (0, k) | (k, 0) => Some((k, 1)),
            _ => None,
        })
    }

    /// `K[x,y]/(x² − y², xy)` with basis `{1, x, y, x²}`; Gorenstein with
    /// socle spanned by `x² = y²`.
    pub fn gorenstein_preset(field: FieldSpec) -> ArtinAlgebra {
        let labels = ["1", "x", "y", "x^2"].map(String::from).to_vec();
        ArtinAlgebra::from_monomial_rule(field, labels, |i, j| match (i, j) {
            (0, k) | (k, 0) => Some((k, 1)),
            (1, 1) | (2, 2) => Some((3, 1)),
            _ => None,
        })
    }

    /// `K[[H]]/𝔠` with basis the monomials `t^h`, `h ∈ H`, `h < c(H)`.
    pub fn semigroup_quotient(
        field: FieldSpec,
        h: &NumericalSemigroup,
    ) -> Result<ArtinAlgebra, ArtinError> {
        let c = h.conductor() as i64;
        if c == 0 {
            return Err(ArtinError::ZeroQuotient);
        }
        let members = h.members_below(c);
        if members.len() > MAX_QUOTIENT_DIM {
            return Err(ArtinError::WorkloadExceeded(format!(
                "dim R/c = {} exceeds {MAX_QUOTIENT_DIM}",
                members.len()
            )));
        }
        let labels = members
            .iter()
            .map(|&m| if m == 0 { "1".to_string() } else { format!("t^{m}") })
            .collect();
        let index_of = |x: u32| members.binary_search(&x).ok();
        Ok(ArtinAlgebra::from_monomial_rule(field, labels, |i, j| {
            index_of(members[i] + members[j]).map(|k| (k, 1))
        }))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn basis_vec(&self, i: usize) -> Vec<FieldElem> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    fn non_units(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(move |&i| i != self.unit)
    }

    pub fn mul(&self, u: &[FieldElem], v: &[FieldElem]) -> Vec<FieldElem> {
        let n = self.dim();
        let mut out = vec![self.field.zero(); n];
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] = &out[k] + &(&ab * t);
                    }
                }
            }
        }
        out
    }

    fn check_len(&self, v: &[FieldElem]) -> Result<(), ArtinError> {
        if v.len() != self.dim() {
            return Err(ArtinError::DimensionMismatch {
                dim: self.dim(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// The linear span of `vectors`, as an echelon subspace.
    fn span(&self, vectors: Vec<Vec<FieldElem>>) -> SubIdeal {
        let vectors: Vec<_> = vectors
            .into_iter()
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        if vectors.is_empty() {
            return SubIdeal {
                rows: Vec::new(),
                pivots: Vec::new(),
            };
        }
        let (rows, pivots) = echelon_basis(self.field, vectors, self.dim());
        SubIdeal { rows, pivots }
    }

    /// `A·gens`.
    pub fn ideal_generated(&self, gens: &[Vec<FieldElem>]) -> Result<SubIdeal, ArtinError> {
        let mut span = Vec::new();
        for g in gens {
            self.check_len(g)?;
            span.push(g.clone());
            span.extend(self.non_units().map(|i| self.mul(&self.basis_vec(i), g)));
        }
        Ok(self.span(span))
    }

    pub fn zero_ideal(&self) -> SubIdeal {
        self.span(Vec::new())
    }

    pub fn whole(&self) -> SubIdeal {
        self.span((0..self.dim()).map(|i| self.basis_vec(i)).collect())
    }

    pub fn maximal_ideal(&self) -> SubIdeal {
        self.span(self.non_units().map(|i| self.basis_vec(i)).collect())
    }

    /// Products `x·y` with `x ∈ I`, `y ∈ J` span `IJ`.
    pub fn product(&self, i: &SubIdeal, j: &SubIdeal) -> SubIdeal {
        let mut span = Vec::new();
        for a in &i.rows {
            for b in &j.rows {
                span.push(self.mul(a, b));
            }
        }
        self.span(span)
    }

    pub fn sum(&self, i: &SubIdeal, j: &SubIdeal) -> SubIdeal {
        self.span(i.rows.iter().chain(&j.rows).cloned().collect())
    }

    pub fn is_ideal(&self, i: &SubIdeal) -> bool {
        i.rows
            .iter()
            .all(|r| self.non_units().all(|k| i.contains(&self.mul(&self.basis_vec(k), r))))
    }

    fn maximal_ideal_is_nilpotent(&self) -> bool {
        let m = self.maximal_ideal();
        if !self.is_ideal(&m) {
            return false;
        }
        let mut power = m.clone();
        for _ in 0..self.dim() {
            if power.is_zero() {
                return true;
            }
            power = self.product(&power, &m);
        }
        power.is_zero()
    }

    /// `𝔪² = 0`.
    pub fn has_square_zero_maximal_ideal(&self) -> bool {
        let m = self.maximal_ideal();
        self.product(&m, &m).is_zero()
    }

    /// `(0 : 𝔪)`.
    pub fn socle(&self) -> SubIdeal {
        let n = self.dim();
        let mut rows = Vec::new();
        for i in self.non_units() {
            // row r of the multiplication map by b_i
            for r in 0..n {
                rows.push((0..n).map(|s| self.table[i][s][r].clone()).collect());
            }
        }
        if rows.is_empty() {
            return self.whole();
        }
        let kernel = Matrix::from_rows(self.field, rows, n).solve_homogeneous();
        self.span(kernel)
    }

    pub fn is_gorenstein(&self) -> bool {
        self.socle().dim() == 1
    }

    /// `Σ_{f ∈ Hom_A(I, A)} f(I)`.
    ///
    /// A map is a matrix `F` (`dim A × dim I`) sending the `j`-th basis row
    /// `v_j` of `I` to `F·e_j`; `A`-linearity means `F·[b_i v_j] = b_i·F e_j`
    /// for every non-unit basis element `b_i`.
    pub fn hom_trace(&self, ideal: &SubIdeal) -> SubIdeal {
        let n = self.dim();
        let k = ideal.dim();
        if k == 0 {
            return self.zero_ideal();
        }
        let var = |r: usize, j: usize| r * k + j;
        let mut rows: Vec<Vec<FieldElem>> = Vec::new();
        for i in self.non_units() {
            for (j, v) in ideal.rows.iter().enumerate() {
                let coords = ideal
                    .coordinates(&self.mul(&self.basis_vec(i), v))
                    .expect("ideals are closed under the action");
                for r in 0..n {
                    let mut eq = vec![self.field.zero(); n * k];
                    for (l, c) in coords.iter().enumerate() {
                        eq[var(r, l)] = &eq[var(r, l)] + c;
                    }
                    for s in 0..n {
                        let lrs = &self.table[i][s][r];
                        if !lrs.is_zero() {
                            eq[var(s, j)] = &eq[var(s, j)] - lrs;
                        }
                    }
                    if eq.iter().any(|x| !x.is_zero()) {
                        rows.push(eq);
                    }
                }
            }
        }
        let homs = if rows.is_empty() {
            (0..n * k)
                .map(|x| {
                    let mut v = vec![self.field.zero(); n * k];
                    v[x] = self.field.one();
                    v
                })
                .collect()
        } else {
            Matrix::from_rows(self.field, rows, n * k).solve_homogeneous()
        };
        let mut images = Vec::with_capacity(homs.len() * k);
        for f in &homs {
            for j in 0..k {
                images.push((0..n).map(|r| f[var(r, j)].clone()).collect());
            }
        }
        self.span(images)
    }

    pub fn is_trace_ideal(&self, ideal: &SubIdeal) -> bool {
        &self.hom_trace(ideal) == ideal
    }

    /// Every ideal, as sums of cyclic ideals closed to a fixed point.
    pub fn enumerate_ideals(&self) -> Result<IdealLattice, ArtinError> {
        let p = self
            .field
            .order()
            .ok_or(ArtinError::InfiniteField(self.field))?;
        let n = self.dim();
        let total = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if total > MAX_ENUMERATION_VECTORS as u128 {
            return Err(ArtinError::WorkloadExceeded(format!(
                "{p}^{n} vectors exceed {MAX_ENUMERATION_VECTORS}"
            )));
        }
        // Every subspace of the socle is an ideal, which bounds the lattice
        // from below before any work is done.
        let socle_dim = self.socle().dim();
        if subspace_count(p, socle_dim) > MAX_IDEALS as u128 {
            return Err(ArtinError::WorkloadExceeded(format!(
                "socle of dimension {socle_dim} over F{p} alone has more than {MAX_IDEALS} subspaces"
            )));
        }
        let elements = self.field.elements().expect("finite field");

        // Nonzero vectors with leading coordinate 1 represent every line once.
        let mut cyclics: BTreeSet<SubIdeal> = BTreeSet::new();
        let mut scanned = 0u64;
        for lead in 0..n {
            let free = n - lead - 1;
            let count = p.pow(free as u32);
            for code in 0..count {
                let mut v = vec![self.field.zero(); n];
                v[lead] = self.field.one();
                let mut rest = code;
                for slot in v.iter_mut().skip(lead + 1) {
                    *slot = elements[(rest % p) as usize].clone();
                    rest /= p;
                }
                scanned += 1;
                cyclics.insert(self.ideal_generated(&[v])?);
            }
        }

        let cyclic_list: Vec<SubIdeal> = cyclics.iter().cloned().collect();
        let mut all: BTreeSet<SubIdeal> = cyclics;
        all.insert(self.zero_ideal());
        let mut queue: Vec<SubIdeal> = cyclic_list.clone();
        while let Some(ideal) = queue.pop() {
            for c in &cyclic_list {
                if c.is_subset_of(&ideal) {
                    continue;
                }
                let s = self.sum(&ideal, c);
                if !all.contains(&s) {
                    all.insert(s.clone());
                    queue.push(s);
                    if all.len() > MAX_IDEALS {
                        return Err(ArtinError::WorkloadExceeded(format!(
                            "more than {MAX_IDEALS} ideals"
                        )));
                    }
                }
            }
        }
        let mut ideals: Vec<SubIdeal> = all.into_iter().collect();
        ideals.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        Ok(IdealLattice {
            ideals,
            cyclic_count: cyclic_list.len(),
            vectors_scanned: scanned,
        })
    }

    /// The trace ideals among all ideals; the zero ideal is always included.
    pub fn enumerate_trace_ideals(&self) -> Result<Vec<SubIdeal>, ArtinError> {
        Ok(self
            .enumerate_ideals()?
            .ideals
            .into_iter()
            .filter(|i| self.is_trace_ideal(i))
            .collect())
    }

    /// For each sample `a`, the cyclic ideal `(u + a·v)`: counts how many are
    /// pairwise distinct and whether all are trace ideals.
    pub fn gorenstein_family_separation(
        &self,
        u: &[FieldElem],
        v: &[FieldElem],
        samples: &[FieldElem],
    ) -> Result<SeparationReport, ArtinError> {
        self.check_len(u)?;
        self.check_len(v)?;
        let socle_dim = self.socle().dim();
        if socle_dim != 1 {
            return Err(ArtinError::NotGorenstein(socle_dim));
        }
        let m = self.maximal_ideal();
        let m2 = self.product(&m, &m);
        let with_pair = self.span(m2.rows.iter().cloned().chain([u.to_vec(), v.to_vec()]).collect());
        if !m.contains(u) || !m.contains(v) || with_pair.dim() != m2.dim() + 2 {
            return Err(ArtinError::DependentGenerators);
        }
        let mut seen = BTreeSet::new();
        let mut all_trace = true;
        for a in samples {
            let g: Vec<FieldElem> = u.iter().zip(v).map(|(x, y)| x + &(a * y)).collect();
            let ideal = self.ideal_generated(&[g])?;
            all_trace &= self.is_trace_ideal(&ideal);
            seen.insert(ideal);
        }
        Ok(SeparationReport {
            distinct: seen.len(),
            all_trace,
        })
    }

    /// Human-readable form of an element, e.g. `x + 2*y`.
    pub fn format_vec(&self, v: &[FieldElem]) -> String {
        let mut out = String::new();
        for (c, label) in v.iter().zip(&self.labels).filter(|(c, _)| !c.is_zero()) {
            let (neg, mag) = match c {
                FieldElem::Rational(q) if q < &num::BigRational::from_integer(0.into()) => {
                    (true, c.neg())
                }
                _ => (false, c.clone()),
            };
            if !out.is_empty() {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            match (mag.is_one(), label.as_str()) {
                (_, "1") => out.push_str(&mag.to_string()),
                (true, _) => out.push_str(label),
                (false, _) => out.push_str(&format!("{mag}*{label}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// `(r1, r2, …)` listing the echelon rows, or `0`.
    pub fn format_ideal(&self, ideal: &SubIdeal) -> String {
        if ideal.is_zero() {
            return "0".to_string();
        }
        let rows: Vec<String> = ideal.rows.iter().map(|r| self.format_vec(r)).collect();
        format!("({})", rows.join(", "))
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            dim: self.dim(),
            field: self.field.to_string(),
            labels: self.labels.clone(),
            table: self
                .table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| v.iter().map(|c| c.to_string()).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

/// Number of subspaces of `F_p^n`: the sum of Gaussian binomials, saturating.
pub fn subspace_count(p: u64, n: usize) -> u128 {
    // row[k] holds [m choose k]_p for the current m
    let p = p as u128;
    let mut row = vec![1u128];
    for m in 1..=n {
        let mut next = vec![1u128; m + 1];
        for k in 1..m {
            // [m, k] = [m-1, k-1] + p^k [m-1, k]
            let pk = p.saturating_pow(k as u32);
            next[k] = row[k - 1].saturating_add(pk.saturating_mul(row[k]));
        }
        row = next;
    }
    row.iter().fold(0u128, |a, &b| a.saturating_add(b))
}
