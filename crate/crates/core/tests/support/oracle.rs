//! Brute-force reference computations. Nothing here calls into the library
//! except to read back its outputs for comparison.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

/// `x` is a non-negative integer combination of `gens` (coin-change table).
pub fn representable(gens: &[u32], x: u32) -> bool {
    let mut reach = vec![false; x as usize + 1];
    reach[0] = true;
    for v in 1..=x as usize {
        reach[v] = gens.iter().any(|&g| g as usize <= v && reach[v - g as usize]);
    }
    reach[x as usize]
}

/// Every gap set of a numerical semigroup of the given genus: `g`-subsets of
/// `[1, 2g − 1]` whose complement in ℕ is closed under addition.
pub fn gap_sets(genus: usize) -> Vec<Vec<u32>> {
    if genus == 0 {
        return vec![Vec::new()];
    }
    let top = 2 * genus as u32 - 1;
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    choose(1, top, genus, &mut chosen, &mut out);
    out.retain(|gaps| {
        let member = |x: u32| !gaps.contains(&x);
        (1..=top).all(|a| (1..=top - a).all(|b| !(member(a) && member(b)) || member(a + b)))
    });
    out
}

fn choose(next: u32, top: u32, left: usize, chosen: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if left == 0 {
        out.push(chosen.clone());
        return;
    }
    for x in next..=top {
        if ((top - x + 1) as usize) < left {
            break;
        }
        chosen.push(x);
        choose(x + 1, top, left - 1, chosen, out);
        chosen.pop();
    }
}

/// Minimal generators of the semigroup with the given gaps.
pub fn generators_from_gaps(gaps: &[u32]) -> Vec<u32> {
    let member = |x: u32| !gaps.contains(&x);
    let frob = gaps.iter().copied().max().unwrap_or(0);
    let limit = 2 * frob + 3;
    (1..limit)
        .filter(|&x| member(x))
        .filter(|&x| !(1..x).any(|a| member(a) && member(x - a)))
        .collect()
}

/// `x + y − z ∈ H` for all members `x ≥ y ≥ z` below `bound`.
pub fn arf_by_closure(member: impl Fn(u32) -> bool, bound: u32) -> bool {
    let members: Vec<u32> = (0..bound).filter(|&x| member(x)).collect();
    for (i, &x) in members.iter().enumerate() {
        for (j, &y) in members[..=i].iter().enumerate() {
            for &z in &members[..=j] {
                if !member(x + y - z) {
                    return false;
                }
            }
        }
    }
    true
}

/// A Laurent polynomial over 𝔽₂ as its set of exponents.
pub type F2Poly = BTreeSet<i64>;

pub fn f2_mul(a: &F2Poly, b: &F2Poly) -> F2Poly {
    let mut out = F2Poly::new();
    for &x in a {
        for &y in b {
            if !out.remove(&(x + y)) {
                out.insert(x + y);
            }
        }
    }
    out
}

fn f2_shift(a: &F2Poly, k: i64) -> F2Poly {
    a.iter().map(|&e| e + k).collect()
}

/// An 𝔽₂-submodule of `K((t))` containing `t^tail·K[[t]]`, stored as the
/// full set of its truncations below `tail`, each a bitmask over `[lo, tail)`.
pub struct F2Module {
    pub lo: i64,
    pub tail: i64,
    span: HashSet<u64>,
}

impl F2Module {
    /// `span{t^h·g : h ∈ H} + t^tail·K[[t]]`.
    pub fn generated(member: impl Fn(i64) -> bool, gens: &[F2Poly], tail: i64) -> F2Module {
        let lo = gens
            .iter()
            .filter_map(|g| g.iter().next().copied())
            .min()
            .unwrap_or(tail)
            .min(tail);
        assert!(tail - lo < 64, "window too wide for the oracle");
        let mut vectors = Vec::new();
        for g in gens {
            let Some(&v) = g.iter().next() else { continue };
            for h in (0..tail - v).filter(|&h| member(h)) {
                vectors.push(mask(&f2_shift(g, h), lo, tail));
            }
        }
        let mut span: HashSet<u64> = HashSet::from([0]);
        for v in vectors {
            let more: Vec<u64> = span.iter().map(|s| s ^ v).collect();
            span.extend(more);
        }
        F2Module { lo, tail, span }
    }

    pub fn contains(&self, p: &F2Poly) -> bool {
        if p.iter().any(|&e| e < self.lo) {
            return false;
        }
        self.span.contains(&mask(p, self.lo, self.tail))
    }

    /// `log₂ |M / t^tail·K[[t]]|`.
    pub fn dim(&self) -> u32 {
        self.span.len().trailing_zeros()
    }
}

/// Bits of `p` on `[lo, hi)`; terms at or above `hi` are dropped.
fn mask(p: &F2Poly, lo: i64, hi: i64) -> u64 {
    p.iter()
        .filter(|&&e| e < hi)
        .fold(0, |m, &e| {
            assert!(e >= lo, "term below the window");
            m | 1 << (e - lo)
        })
}

/// The colon `I : J` by testing every coefficient pattern on the window
/// `[lo_I − lo_J, tail_I − lo_J)`, where `J` is spanned by `t^h·g` and
/// `t^tail_J·K[[t]]`. Returns the window and the set of passing patterns as
/// polynomials.
pub fn f2_colon(
    member: impl Fn(i64) -> bool,
    i: &F2Module,
    j_gens: &[F2Poly],
    j_tail: i64,
) -> (i64, i64, Vec<F2Poly>) {
    let j_lo = j_gens
        .iter()
        .filter_map(|g| g.iter().next().copied())
        .min()
        .unwrap_or(j_tail)
        .min(j_tail);
    let start = i.lo - j_lo;
    let end = i.tail - j_lo;
    let bound = i.tail - start;
    let mut spanning: Vec<F2Poly> = Vec::new();
    for g in j_gens {
        let Some(&v) = g.iter().next() else { continue };
        for h in (0..bound - v).filter(|&h| member(h)) {
            spanning.push(f2_shift(g, h));
        }
    }
    spanning.extend((j_tail..bound).map(|x| F2Poly::from([x])));

    let width = (end - start) as u32;
    assert!(width <= 20, "window too wide for brute force");
    let mut passing = Vec::new();
    for bits in 0u64..1 << width {
        let alpha: F2Poly = (0..width as i64)
            .filter(|k| bits >> k & 1 == 1)
            .map(|k| start + k)
            .collect();
        if spanning.iter().all(|y| {
            let prod: F2Poly = f2_mul(&alpha, y).into_iter().filter(|&e| e < i.tail).collect();
            i.contains(&prod)
        }) {
            passing.push(alpha);
        }
    }
    (start, end, passing)
}
