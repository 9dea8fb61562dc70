//! Fractional ideals of `R = K[[H]]` inside the Laurent series field `K((t))`.
//!
//! An ideal is stored as a finite window `[lo, tail)` plus the full tail
//! `t^tail·K[[t]]`. The window part is a reduced echelon basis whose pivots
//! are the leading (least) exponents, each with coefficient 1 and cleared
//! from every other row, and `tail` is as small as possible. Two ideals are
//! equal as sets exactly when their stored forms are equal.
//!
//! Every operation first fixes an exponent `N` with `t^N·K[[t]]` inside the
//! result and then works with finitely many vectors below `N`:
//!
//! * sum: `N = min(tail(I), tail(J))`;
//! * product: `N = min(tail(I) + lo(J), tail(J) + lo(I))`;
//! * colon `I : J`: unknowns live on `[lo(I) − lo(J), tail(I) − lo(J))`;
//!   coefficients from `tail(I) − lo(J)` on are free since they push `J`
//!   into `t^{tail(I)}·K[[t]]`, and only tail monomials `t^j` of `J` with
//!   `j < tail(I) − (lo(I) − lo(J))` constrain anything.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{echelon_basis, fmt_signed_term, ArithError, FieldElem, FieldSpec, Matrix};
use crate::semigroup::{NumericalSemigroup, SemigroupIdeal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("ideals over different fields ({0} vs {1})")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("ideals over different semigroup rings ({0} vs {1})")]
    SemigroupMismatch(NumericalSemigroup, NumericalSemigroup),
    #[error("the zero ideal is not a fractional ideal")]
    ZeroIdeal,
    #[error("element of negative valuation {0} is not integral over R")]
    NotIntegral(i64),
    #[error("not a module over {0}")]
    NotAModule(NumericalSemigroup),
    #[error("expected an inclusion of ideals")]
    NotContained,
    #[error("cannot parse polynomial {0:?}")]
    Parse(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A finite sum `Σ c_j t^j` with integer exponents.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    field: FieldSpec,
    terms: BTreeMap<i64, FieldElem>,
}

impl LaurentPoly {
    pub fn zero(field: FieldSpec) -> LaurentPoly {
        LaurentPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(field: FieldSpec, exp: i64) -> LaurentPoly {
        LaurentPoly::zero(field).with_term(exp, field.one())
    }

    /// `Σ c t^e` from integer coefficients.
    pub fn from_i64_terms(field: FieldSpec, terms: &[(i64, i64)]) -> LaurentPoly {
        terms
            .iter()
            .fold(LaurentPoly::zero(field), |p, &(e, c)| p.with_term(e, field.from_i64(c)))
    }

    /// Adds `c·t^exp`.
    pub fn with_term(mut self, exp: i64, c: FieldElem) -> LaurentPoly {
        assert_eq!(c.field(), self.field, "coefficient from another field");
        let sum = match self.terms.get(&exp) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&exp);
        } else {
            self.terms.insert(exp, sum);
        }
        self
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: i64) -> FieldElem {
        self.terms.get(&exp).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &FieldElem)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly {
            field: self.field,
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElem) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.field);
        }
        LaurentPoly {
            field: self.field,
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    /// Drops every term of exponent `≥ bound`.
    pub fn truncate(&self, bound: i64) -> LaurentPoly {
        LaurentPoly {
            field: self.field,
            terms: self.terms.range(..bound).map(|(&e, c)| (e, c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out = out.with_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.scale(&self.field.one().neg()))
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        self.mul_truncated(other, i64::MAX)
    }

    /// Product with every term of exponent `≥ bound` dropped.
    pub fn mul_truncated(&self, other: &LaurentPoly, bound: i64) -> LaurentPoly {
        let mut terms: BTreeMap<i64, FieldElem> = BTreeMap::new();
        for (&a, x) in &self.terms {
            for (&b, y) in &other.terms {
                if a + b >= bound {
                    break;
                }
                let prod = x * y;
                let slot = terms.entry(a + b).or_insert_with(|| self.field.zero());
                *slot = &*slot + &prod;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly {
            field: self.field,
            terms,
        }
    }

    /// Parses text such as `t^4 + 3*t^5`, `1 - t^2` or `1/2*t^-1`.
    pub fn parse(field: FieldSpec, s: &str) -> Result<LaurentPoly, IdealError> {
        let err = || IdealError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut pieces = Vec::new();
        let mut current = String::new();
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !current.is_empty() && !current.ends_with('^') {
                pieces.push(std::mem::take(&mut current));
            }
            current.push(ch);
        }
        pieces.push(current);

        let mut poly = LaurentPoly::zero(field);
        for piece in pieces {
            let (negative, body) = match piece.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            let (coeff_text, exp) = match body.find('t') {
                Some(pos) => {
                    let coeff_text = body[..pos].trim_end_matches('*');
                    let rest = &body[pos + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(err)?
                            .parse::<i64>()
                            .map_err(|_| err())?
                    };
                    (coeff_text, exp)
                }
                None => (body, 0),
            };
            let mut coeff = if coeff_text.is_empty() {
                field.one()
            } else {
                field.parse_elem(coeff_text).map_err(|_| err())?
            };
            if negative {
                coeff = coeff.neg();
            }
            poly = poly.with_term(exp, coeff);
        }
        Ok(poly)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let mono = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            fmt_signed_term(f, c, &mono, i == 0)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A nonzero finitely generated `R`-submodule of `K((t))` in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct FractionalIdeal {
    field: FieldSpec,
    semigroup: NumericalSemigroup,
    lo: i64,
    tail: i64,
    basis: Vec<LaurentPoly>,
}

impl FractionalIdeal {
    /// Canonical form of `span(gens) + t^tail·K[[t]]`. The caller guarantees
    /// the span is already closed under the `R`-action modulo the tail.
    fn canonical(
        field: FieldSpec,
        semigroup: NumericalSemigroup,
        gens: Vec<LaurentPoly>,
        tail: i64,
    ) -> FractionalIdeal {
        let gens: Vec<LaurentPoly> = gens
            .into_iter()
            .map(|g| g.truncate(tail))
            .filter(|g| !g.is_zero())
            .collect();
        let start = gens.iter().filter_map(LaurentPoly::valuation).min().unwrap_or(tail);
        let width = (tail - start) as usize;
        let dense: Vec<Vec<FieldElem>> = gens
            .iter()
            .map(|g| {
                let mut row = vec![field.zero(); width];
                for (e, c) in g.terms() {
                    row[(e - start) as usize] = c.clone();
                }
                row
            })
            .collect();
        let (rows, _) = if dense.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            echelon_basis(field, dense, width)
        };
        let mut basis: Vec<LaurentPoly> = rows
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .fold(LaurentPoly::zero(field), |p, (i, c)| p.with_term(start + i as i64, c))
            })
            .collect();

        // A row whose pivot sits right below the tail is a bare monomial (all
        // later pivots are cleared), so it can be absorbed into the tail.
        let mut tail = tail;
        while basis.last().and_then(LaurentPoly::valuation) == Some(tail - 1) {
            basis.pop();
            tail -= 1;
        }
        let lo = basis.first().and_then(LaurentPoly::valuation).unwrap_or(tail);
        FractionalIdeal {
            field,
            semigroup,
            lo,
            tail,
            basis,
        }
    }

    /// `R` itself.
    pub fn unit_ideal(field: FieldSpec, h: &NumericalSemigroup) -> FractionalIdeal {
        let c = h.conductor() as i64;
        let gens = h
            .members_below(c)
            .into_iter()
            .map(|x| LaurentPoly::monomial(field, x as i64))
            .collect();
        FractionalIdeal::canonical(field, h.clone(), gens, c)
    }

    /// The maximal ideal `𝔪` (for `H = ℕ₀` this is `t·K[[t]]`).
    pub fn maximal_ideal(field: FieldSpec, h: &NumericalSemigroup) -> FractionalIdeal {
        let c = (h.conductor() as i64).max(1);
        let gens = h
            .members_below(c)
            .into_iter()
            .filter(|&x| x > 0)
            .map(|x| LaurentPoly::monomial(field, x as i64))
            .collect();
        FractionalIdeal::canonical(field, h.clone(), gens, c)
    }

    /// The conductor `𝔠 = R : R̄ = t^c·K[[t]]`.
    pub fn conductor_ideal(field: FieldSpec, h: &NumericalSemigroup) -> FractionalIdeal {
        FractionalIdeal::canonical(field, h.clone(), Vec::new(), h.conductor() as i64)
    }

    /// The normalization `R̄ = K[[t]]` as an `R`-module.
    pub fn integral_closure(field: FieldSpec, h: &NumericalSemigroup) -> FractionalIdeal {
        FractionalIdeal::canonical(field, h.clone(), Vec::new(), 0)
    }

    /// The monomial module whose value set is `values`.
    pub fn monomial(field: FieldSpec, values: &SemigroupIdeal) -> FractionalIdeal {
        let gens = values
            .small_elements()
            .into_iter()
            .map(|x| LaurentPoly::monomial(field, x))
            .collect();
        FractionalIdeal::canonical(field, values.base().clone(), gens, values.stable_bound())
    }

    /// The `R`-module generated by `gens`, plus `𝔠` when `with_conductor`.
    pub fn from_generators(
        field: FieldSpec,
        h: &NumericalSemigroup,
        gens: &[LaurentPoly],
        with_conductor: bool,
    ) -> Result<FractionalIdeal, IdealError> {
        for g in gens {
            if g.field() != field {
                return Err(IdealError::FieldMismatch(field, g.field()));
            }
        }
        let gens: Vec<&LaurentPoly> = gens.iter().filter(|g| !g.is_zero()).collect();
        let c = h.conductor() as i64;
        // R·g contains 𝔠·g = t^{c + v(g)}·K[[t]].
        let mut tail = gens.iter().map(|g| g.valuation().unwrap() + c).min();
        if with_conductor {
            tail = Some(tail.map_or(c, |n| n.min(c)));
        }
        let tail = tail.ok_or(IdealError::ZeroIdeal)?;
        let members = h.members_below(tail - gens.iter().filter_map(|g| g.valuation()).min().unwrap_or(tail));
        let mut span = Vec::new();
        for g in gens {
            let v = g.valuation().unwrap();
            for &m in members.iter().take_while(|&&m| m as i64 + v < tail) {
                span.push(g.shift(m as i64).truncate(tail));
            }
        }
        Ok(FractionalIdeal::canonical(field, h.clone(), span, tail))
    }

    /// The principal ideal `R·g`.
    pub fn principal(
        field: FieldSpec,
        h: &NumericalSemigroup,
        g: &LaurentPoly,
    ) -> Result<FractionalIdeal, IdealError> {
        FractionalIdeal::from_generators(field, h, std::slice::from_ref(g), false)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    /// Least valuation of a nonzero element.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Least `N` with `t^N·K[[t]]` inside the ideal.
    pub fn tail(&self) -> i64 {
        self.tail
    }

    pub fn basis(&self) -> &[LaurentPoly] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<i64> {
        self.basis.iter().filter_map(LaurentPoly::valuation).collect()
    }

    pub fn is_monomial(&self) -> bool {
        self.basis.iter().all(LaurentPoly::is_monomial)
    }

    fn check_compatible(&self, other: &FractionalIdeal) -> Result<(), IdealError> {
        if self.field != other.field {
            return Err(IdealError::FieldMismatch(self.field, other.field));
        }
        if self.semigroup != other.semigroup {
            return Err(IdealError::SemigroupMismatch(
                self.semigroup.clone(),
                other.semigroup.clone(),
            ));
        }
        Ok(())
    }

    /// What is left of `f` (below the tail) after clearing every pivot.
    fn remainder(&self, f: &LaurentPoly) -> LaurentPoly {
        let f = f.truncate(self.tail);
        let mut r = f.clone();
        for b in &self.basis {
            let p = b.valuation().unwrap();
            let c = f.coeff(p);
            if !c.is_zero() {
                r = r.sub(&b.scale(&c));
            }
        }
        r
    }

    pub fn contains(&self, f: &LaurentPoly) -> Result<bool, IdealError> {
        if f.field() != self.field {
            return Err(IdealError::FieldMismatch(self.field, f.field()));
        }
        Ok(self.remainder(f).is_zero())
    }

    /// Checks that `t^g·b ∈ I` for every basis row `b` and generator `g` of `H`.
    pub fn is_closed_under(&self, h: &NumericalSemigroup) -> bool {
        self.basis.iter().all(|b| {
            h.generators()
                .iter()
                .all(|&g| self.remainder(&b.shift(g as i64)).is_zero())
        })
    }

    /// The same subset of `K((t))` viewed as a module over `K[[h]]`.
    pub fn rebase(&self, h: &NumericalSemigroup) -> Result<FractionalIdeal, IdealError> {
        if !self.is_closed_under(h) {
            return Err(IdealError::NotAModule(h.clone()));
        }
        Ok(FractionalIdeal {
            semigroup: h.clone(),
            ..self.clone()
        })
    }

    /// Set equality of the underlying subsets of `K((t))`, ignoring which
    /// semigroup ring they are viewed over.
    pub fn same_subset(&self, other: &FractionalIdeal) -> bool {
        self.field == other.field
            && self.lo == other.lo
            && self.tail == other.tail
            && self.basis == other.basis
    }

    pub fn add(&self, other: &FractionalIdeal) -> Result<FractionalIdeal, IdealError> {
        self.check_compatible(other)?;
        let tail = self.tail.min(other.tail);
        let gens = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(FractionalIdeal::canonical(self.field, self.semigroup.clone(), gens, tail))
    }

    pub fn multiply(&self, other: &FractionalIdeal) -> Result<FractionalIdeal, IdealError> {
        self.check_compatible(other)?;
        let tail = (self.tail + other.lo).min(other.tail + self.lo);
        let mut gens = Vec::with_capacity(self.basis.len() * other.basis.len());
        for a in &self.basis {
            for b in &other.basis {
                gens.push(a.mul_truncated(b, tail));
            }
        }
        Ok(FractionalIdeal::canonical(self.field, self.semigroup.clone(), gens, tail))
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> FractionalIdeal {
        FractionalIdeal {
            field: self.field,
            semigroup: self.semigroup.clone(),
            lo: self.lo + k,
            tail: self.tail + k,
            basis: self.basis.iter().map(|b| b.shift(k)).collect(),
        }
    }

    /// `I^n`, with `I^0 = R`.
    pub fn power(&self, n: u32) -> Result<FractionalIdeal, IdealError> {
        let mut acc = FractionalIdeal::unit_ideal(self.field, &self.semigroup);
        for _ in 0..n {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    /// `self : other = {α : α·other ⊆ self}`.
    pub fn colon(&self, other: &FractionalIdeal) -> Result<FractionalIdeal, IdealError> {
        self.check_compatible(other)?;
        let start = self.lo - other.lo;
        let end = self.tail - other.lo;
        let width = (end - start) as usize;
        if width == 0 {
            return Ok(FractionalIdeal::canonical(
                self.field,
                self.semigroup.clone(),
                Vec::new(),
                end,
            ));
        }

        let mut spanning: Vec<LaurentPoly> = other.basis.clone();
        spanning.extend((other.tail..self.tail - start).map(|j| LaurentPoly::monomial(self.field, j)));

        let pivots = self.pivots();
        let free_positions: Vec<i64> = (self.lo..self.tail)
            .filter(|x| pivots.binary_search(x).is_err())
            .collect();

        // Column x holds the remainders of t^{start+x}·y for every spanning y.
        let mut rows: Vec<Vec<FieldElem>> =
            vec![vec![self.field.zero(); width]; spanning.len() * free_positions.len()];
        #[allow(clippy::needless_range_loop)]
        for x in 0..width {
            let mono = start + x as i64;
            for (k, y) in spanning.iter().enumerate() {
                let r = self.remainder(&y.shift(mono));
                for (e, c) in r.terms() {
                    let q = free_positions
                        .binary_search(&e)
                        .expect("remainders live on non-pivot positions");
                    rows[k * free_positions.len() + q][x] = c.clone();
                }
            }
        }
        rows.retain(|row| row.iter().any(|c| !c.is_zero()));
        let solutions = if rows.is_empty() {
            (0..width)
                .map(|x| {
                    let mut v = vec![self.field.zero(); width];
                    v[x] = self.field.one();
                    v
                })
                .collect()
        } else {
            Matrix::from_rows(self.field, rows, width).solve_homogeneous()
        };
        let gens = solutions
            .into_iter()
            .map(|v| {
                v.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .fold(LaurentPoly::zero(self.field), |p, (x, c)| {
                        p.with_term(start + x as i64, c)
                    })
            })
            .collect();
        Ok(FractionalIdeal::canonical(self.field, self.semigroup.clone(), gens, end))
    }

    /// `I : I`, a ring between `R` and `R̄`.
    pub fn endomorphism_ring(&self) -> FractionalIdeal {
        self.colon(self).expect("an ideal is compatible with itself")
    }

    pub fn is_subset_of(&self, other: &FractionalIdeal) -> Result<bool, IdealError> {
        Ok(&other.add(self)? == other)
    }

    /// `dim_K(self / sub)` for `sub ⊆ self`, the number of values of `self`
    /// missing from `sub`.
    pub fn quotient_dim(&self, sub: &FractionalIdeal) -> Result<usize, IdealError> {
        if !sub.is_subset_of(self)? {
            return Err(IdealError::NotContained);
        }
        let mine = self.pivots();
        let theirs = sub.pivots();
        let in_self = |x: i64| x >= self.tail || mine.binary_search(&x).is_ok();
        let in_sub = |x: i64| x >= sub.tail || theirs.binary_search(&x).is_ok();
        Ok((self.lo.min(sub.lo)..self.tail.max(sub.tail))
            .filter(|&x| in_self(x) && !in_sub(x))
            .count())
    }

    /// `{v(f) : f ∈ I, f ≠ 0}`.
    pub fn value_set(&self) -> SemigroupIdeal {
        let pivots = self.pivots();
        SemigroupIdeal::from_predicate(self.semigroup.clone(), self.lo, self.tail, |x| {
            pivots.binary_search(&x).is_ok()
        })
        .expect("value sets of modules are semigroup ideals")
    }

    /// A minimal `R`-generating set, chosen greedily from the basis rows and
    /// the first tail monomials.
    pub fn minimal_generators(&self) -> Vec<LaurentPoly> {
        let m = FractionalIdeal::maximal_ideal(self.field, &self.semigroup);
        let e = self.semigroup.multiplicity() as i64;
        let mut covered = m.multiply(self).expect("same ring");
        let candidates = self
            .basis
            .iter()
            .cloned()
            .chain((self.tail..self.tail + e).map(|x| LaurentPoly::monomial(self.field, x)));
        let mut chosen = Vec::new();
        for cand in candidates {
            if !covered.remainder(&cand).is_zero() {
                let cyclic = FractionalIdeal::principal(self.field, &self.semigroup, &cand)
                    .expect("nonzero candidate");
                covered = covered.add(&cyclic).expect("same ring");
                chosen.push(cand);
            }
        }
        chosen
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            lo: self.lo,
            tail: self.tail,
            basis: self
                .basis
                .iter()
                .map(|b| b.terms().map(|(e, c)| (e, c.to_string())).collect())
                .collect(),
        }
    }
}

impl fmt::Display for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        if !self.basis.is_empty() {
            write!(f, "; ")?;
        }
        write!(f, "t^{}K[[t]]>", self.tail)
    }
}

impl fmt::Debug for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {}", self.semigroup)
    }
}

/// Serialized ideal: `{lo, tail, basis: [[[exp, coeff], …], …]}` with exact
/// coefficients written as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub lo: i64,
    pub tail: i64,
    pub basis: Vec<Vec<(i64, String)>>,
}

impl IdealJson {
    pub fn to_ideal(
        &self,
        field: FieldSpec,
        h: &NumericalSemigroup,
    ) -> Result<FractionalIdeal, IdealError> {
        let gens = self
            .basis
            .iter()
            .map(|row| {
                row.iter().try_fold(LaurentPoly::zero(field), |p, (e, c)| {
                    Ok::<_, IdealError>(p.with_term(*e, field.parse_elem(c)?))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let ideal = FractionalIdeal::canonical(field, h.clone(), gens, self.tail);
        if !ideal.is_closed_under(h) {
            return Err(IdealError::NotAModule(h.clone()));
        }
        Ok(ideal)
    }
}

/// `ω/a`: the monomial fractional ideal with value set `K(H)`, for
/// `ω = (t^{x + F + 1} : x ∈ K(H))` and `a = t^{F+1}`; together with the least
/// `n` such that `(ω/a)^{n+1} = (ω/a)^n`.
pub fn canonical_fractional_ideal(
    field: FieldSpec,
    h: &NumericalSemigroup,
) -> (FractionalIdeal, u32) {
    let w = FractionalIdeal::monomial(field, &h.canonical_value_set());
    let mut n = 0;
    let mut prev = FractionalIdeal::unit_ideal(field, h);
    loop {
        let next = prev.multiply(&w).expect("same ring");
        if next == prev {
            return (w, n);
        }
        prev = next;
        n += 1;
    }
}

/// `R[g]` as an `R`-module: `R + R·g + R·g² + …`.
pub fn adjoin(
    field: FieldSpec,
    h: &NumericalSemigroup,
    g: &LaurentPoly,
) -> Result<FractionalIdeal, IdealError> {
    if g.field() != field {
        return Err(IdealError::FieldMismatch(field, g.field()));
    }
    let unit = FractionalIdeal::unit_ideal(field, h);
    let Some(v) = g.valuation() else {
        return Ok(unit);
    };
    if v < 0 {
        return Err(IdealError::NotIntegral(v));
    }
    let principal = FractionalIdeal::principal(field, h, g)?;
    let bound = h.conductor() as usize + 1;
    let mut module = unit;
    for _ in 0..=bound {
        let next = module.add(&module.multiply(&principal)?)?;
        if next == module {
            debug_assert_eq!(module.multiply(&module).as_ref(), Ok(&module));
            return Ok(module);
        }
        module = next;
    }
    unreachable!("R[g] stabilizes within {bound} steps")
}
