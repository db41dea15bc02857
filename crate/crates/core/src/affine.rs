//! The affine algebra `sl(2) ⊗ C[t, t^-1] ⊕ Ck` and PBW monomials in its
//! negative part.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{q, Q};
use crate::sl2::Gen;

/// The element `g ⊗ t^mode`, written `g(mode)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineGenerator {
    pub label: Gen,
    pub mode: i64,
}

impl AffineGenerator {
    pub fn new(label: Gen, mode: i64) -> Self {
        AffineGenerator { label, mode }
    }

    /// Sort key of the PBW order: deeper modes first, then `e < h < f`.
    pub fn key(&self) -> (i64, Gen) {
        (self.mode, self.label)
    }
}

impl PartialOrd for AffineGenerator {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AffineGenerator {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for AffineGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.label, self.mode)
    }
}

/// Result of a bracket of two affine generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket {
    /// Generator part `c · g(m+n)`, absent when `[g,h] = 0`.
    pub term: Option<(Q, AffineGenerator)>,
    /// Multiple of the central element, already evaluated at the level.
    pub central: Q,
}

/// `[g(m), h(n)] = [g,h](m+n) + m <g,h> δ_{m+n,0} ℓ`.
pub fn bracket(x: AffineGenerator, y: AffineGenerator, level: &Q) -> Bracket {
    let term = x
        .label
        .bracket(y.label)
        .map(|(c, g)| (q(c), AffineGenerator::new(g, x.mode + y.mode)));
    let central = if x.mode + y.mode == 0 {
        q(x.mode * x.label.form(y.label)) * level
    } else {
        Q::zero()
    };
    Bracket { term, central }
}

/// A sorted product of negative-mode generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(Vec<AffineGenerator>);

impl Monomial {
    pub fn empty() -> Self {
        Monomial(Vec::new())
    }

    /// Wraps an already sorted sequence of negative-mode generators.
    pub fn from_sorted(gens: Vec<AffineGenerator>) -> Result<Self> {
        if gens.iter().any(|g| g.mode >= 0) {
            return Err(Error::Domain("PBW monomials only contain negative modes".into()));
        }
        if gens.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Domain("generators are not in PBW order".into()));
        }
        Ok(Monomial(gens))
    }

    pub fn factors(&self) -> &[AffineGenerator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.0.iter().map(|g| (-g.mode) as usize).sum()
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().map(|g| g.label.weight()).sum()
    }

    /// First factor and the remaining monomial.
    pub fn split_first(&self) -> Option<(AffineGenerator, Monomial)> {
        self.0.split_first().map(|(x, rest)| (*x, Monomial(rest.to_vec())))
    }

    fn prepend(&self, x: AffineGenerator) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(x);
        v.extend_from_slice(&self.0);
        Monomial(v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for g in &self.0 {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = Error;

    /// Parses the rendering produced by `Display`, e.g. `e(-2)h(-1)` or `1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Monomial::empty());
        }
        let mut gens = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let label: Gen = rest[..1].parse()?;
            let close = rest.find(')').ok_or_else(|| Error::Domain(format!("malformed monomial {s:?}")))?;
            let mode: i64 = rest[2..close]
                .parse()
                .map_err(|_| Error::Domain(format!("malformed mode in {s:?}")))?;
            gens.push(AffineGenerator::new(label, mode));
            rest = &rest[close + 1..];
        }
        Monomial::from_sorted(gens)
    }
}

/// Linear combination of PBW monomials.
pub type NegCombination = BTreeMap<Monomial, Q>;

fn add_into(acc: &mut NegCombination, m: Monomial, c: Q) {
    if c.is_zero() {
        return;
    }
    let entry = acc.entry(m.clone()).or_insert_with(Q::zero);
    *entry += c;
    if entry.is_zero() {
        acc.remove(&m);
    }
}

/// All sorted monomials of total depth `d`.
pub fn enumerate_pbw(d: usize) -> Vec<Monomial> {
    fn go(remaining: usize, min: Option<AffineGenerator>, cur: &mut Vec<AffineGenerator>, out: &mut Vec<Monomial>) {
        if remaining == 0 {
            out.push(Monomial(cur.clone()));
            return;
        }
        for depth in (1..=remaining).rev() {
            for label in Gen::ALL {
                let g = AffineGenerator::new(label, -(depth as i64));
                if min.is_some_and(|m| g < m) {
                    continue;
                }
                cur.push(g);
                go(remaining - depth, Some(g), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(d, None, &mut Vec::new(), &mut out);
    out
}

/// Coefficients of `∏_{n≥1} (1 - q^n)^{-3}` up to `q^max`.
pub fn pbw_series(max: usize) -> Vec<u64> {
    let mut c = vec![0u64; max + 1];
    c[0] = 1;
    for n in 1..=max {
        for _ in 0..3 {
            for d in n..=max {
                c[d] += c[d - n];
            }
        }
    }
    c
}

/// Normal-ordering engine for products in `U(ĝ_-)`, memoizing left
/// multiplication by a single generator.
#[derive(Debug, Default)]
pub struct Straightener {
    memo: HashMap<(AffineGenerator, Monomial), NegCombination>,
}

impl Straightener {
    pub fn new() -> Self {
        Self::default()
    }

    /// `x · m` rewritten in the PBW basis. Both must have negative modes.
    pub fn left_mul(&mut self, x: AffineGenerator, m: &Monomial) -> NegCombination {
        debug_assert!(x.mode < 0);
        let Some(&first) = m.0.first() else {
            return NegCombination::from([(m.prepend(x), q(1))]);
        };
        if x <= first {
            return NegCombination::from([(m.prepend(x), q(1))]);
        }
        if let Some(hit) = self.memo.get(&(x, m.clone())) {
            return hit.clone();
        }
        let rest = Monomial(m.0[1..].to_vec());
        let mut out = NegCombination::new();
        for (mono, c) in self.left_mul(x, &rest) {
            for (mono2, c2) in self.left_mul(first, &mono) {
                add_into(&mut out, mono2, c2 * &c);
            }
        }
        if let Some((c, g)) = bracket(x, first, &Q::zero()).term {
            for (mono, c2) in self.left_mul(g, &rest) {
                add_into(&mut out, mono, c2 * &c);
            }
        }
        self.memo.insert((x, m.clone()), out.clone());
        out
    }

    /// Rewrites an arbitrary product of negative-mode generators.
    pub fn straighten(&mut self, seq: &[AffineGenerator]) -> Result<NegCombination> {
        if seq.iter().any(|g| g.mode >= 0) {
            return Err(Error::Domain("straighten expects negative modes only".into()));
        }
        let mut acc = NegCombination::from([(Monomial::empty(), q(1))]);
        for &g in seq.iter().rev() {
            let mut next = NegCombination::new();
            for (mono, c) in &acc {
                for (m2, c2) in self.left_mul(g, mono) {
                    add_into(&mut next, m2, c2 * c);
                }
            }
            acc = next;
        }
        Ok(acc)
    }
}

/// Convenience wrapper around [`Straightener::straighten`]. The level never
/// enters because central terms require a zero total mode.
pub fn straighten(seq: &[AffineGenerator], _level: &Q) -> Result<NegCombination> {
    Straightener::new().straighten(seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(label: Gen, mode: i64) -> AffineGenerator {
        AffineGenerator::new(label, mode)
    }

    fn mono(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn bracket_examples() {
        let l = q(7);
        let b = bracket(g(Gen::E, 1), g(Gen::F, -1), &l);
        assert_eq!(b.term, Some((q(1), g(Gen::H, 0))));
        assert_eq!(b.central, l);
        let b = bracket(g(Gen::H, 2), g(Gen::H, -2), &l);
        assert_eq!(b.term, None);
        assert_eq!(b.central, q(4) * &l);
        let b = bracket(g(Gen::E, 3), g(Gen::E, -3), &l);
        assert_eq!(b, Bracket { term: None, central: q(0) });
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_pbw(0), vec![Monomial::empty()]);
        let d1: Vec<String> = enumerate_pbw(1).iter().map(|m| m.to_string()).collect();
        assert_eq!(d1, ["e(-1)", "h(-1)", "f(-1)"]);
        let series = pbw_series(7);
        assert_eq!(series, vec![1, 3, 9, 22, 51, 108, 221, 429]);
        for (d, &c) in series.iter().enumerate() {
            let ms = enumerate_pbw(d);
            assert_eq!(ms.len() as u64, c);
            assert!(ms.iter().all(|m| m.depth() == d));
        }
    }

    #[test]
    fn straighten_examples() {
        let l = q(1);
        let out = straighten(&[g(Gen::F, -1), g(Gen::E, -1)], &l).unwrap();
        assert_eq!(out, NegCombination::from([(mono("e(-1)f(-1)"), q(1)), (mono("h(-2)"), q(-1))]));
        let out = straighten(&[g(Gen::E, -1), g(Gen::E, -1)], &l).unwrap();
        assert_eq!(out, NegCombination::from([(mono("e(-1)e(-1)"), q(1))]));
        let out = straighten(&[g(Gen::H, -1), g(Gen::E, -2)], &l).unwrap();
        assert_eq!(out, NegCombination::from([(mono("e(-2)h(-1)"), q(1)), (mono("e(-3)"), q(2))]));
        assert!(straighten(&[g(Gen::H, 0)], &l).is_err());
    }

    #[test]
    fn display_round_trip() {
        for d in 0..=4 {
            for m in enumerate_pbw(d) {
                assert_eq!(mono(&m.to_string()), m);
            }
        }
        assert_eq!(Monomial::empty().to_string(), "1");
    }

    #[test]
    fn straighten_preserves_grading() {
        let mut s = Straightener::new();
        let seq = [g(Gen::F, -1), g(Gen::H, -2), g(Gen::E, -1), g(Gen::F, -3), g(Gen::E, -2)];
        let depth: usize = 9;
        let weight: i64 = seq.iter().map(|x| x.label.weight()).sum();
        for (m, _) in s.straighten(&seq).unwrap() {
            assert_eq!(m.depth(), depth);
            assert_eq!(m.weight(), weight);
        }
    }
}
