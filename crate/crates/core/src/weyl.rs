//! The affine Weyl group of sl(2) (infinite dihedral), its dot action on
//! weights, Bruhat order, and the resolution of standard modules by
//! generalized Verma modules.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::affine::pbw_series;
use crate::error::{Error, Result};
use crate::linalg::{q, Q};

/// Weight `a·α/2 + l·k' + d·d'`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineWeight {
    pub a: Q,
    pub l: Q,
    pub d: Q,
}

impl AffineWeight {
    pub fn new(a: Q, l: Q, d: Q) -> Self {
        AffineWeight { a, l, d }
    }

    pub fn from_ints(a: i64, l: i64, d: i64) -> Self {
        AffineWeight::new(q(a), q(l), q(d))
    }

    pub fn rho() -> Self {
        AffineWeight::from_ints(1, 2, 0)
    }

    /// `α_0 = -α + d'` and `α_1 = α`.
    pub fn simple_root(i: u8) -> Self {
        match i {
            0 => AffineWeight::from_ints(-2, 0, 1),
            _ => AffineWeight::from_ints(2, 0, 0),
        }
    }

    /// Evaluation on the simple coroots: `Λ(h_0) = l - a`, `Λ(h_1) = a`.
    pub fn coroot(&self, i: u8) -> Q {
        match i {
            0 => &self.l - &self.a,
            _ => self.a.clone(),
        }
    }

    fn add(&self, o: &AffineWeight) -> AffineWeight {
        AffineWeight::new(&self.a + &o.a, &self.l + &o.l, &self.d + &o.d)
    }

    fn sub(&self, o: &AffineWeight) -> AffineWeight {
        AffineWeight::new(&self.a - &o.a, &self.l - &o.l, &self.d - &o.d)
    }

    fn scale(&self, c: &Q) -> AffineWeight {
        AffineWeight::new(&self.a * c, &self.l * c, &self.d * c)
    }
}

impl fmt::Display for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.l, self.d)
    }
}

/// `r_i(Λ) = Λ - Λ(h_i) α_i`.
pub fn reflect(i: u8, w: &AffineWeight) -> AffineWeight {
    w.sub(&AffineWeight::simple_root(i).scale(&w.coroot(i)))
}

/// A reduced word in `r_0, r_1`; letters alternate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylWord(Vec<u8>);

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord(Vec::new())
    }

    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if letters.iter().any(|&l| l > 1) {
            return Err(Error::Domain("letters must be 0 or 1".into()));
        }
        if letters.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Domain("word is not reduced".into()));
        }
        Ok(WeylWord(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The reduced form of `r_i · self`.
    pub fn left_mul(&self, i: u8) -> WeylWord {
        match self.0.first() {
            Some(&x) if x == i => WeylWord(self.0[1..].to_vec()),
            _ => {
                let mut v = vec![i];
                v.extend_from_slice(&self.0);
                WeylWord(v)
            }
        }
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "r{l}")?;
        }
        Ok(())
    }
}

/// `w(Λ + ρ) - ρ`, where the rightmost letter of `w` acts first.
pub fn dot(w: &WeylWord, lambda: &AffineWeight) -> AffineWeight {
    let rho = AffineWeight::rho();
    let mut x = lambda.add(&rho);
    for &i in w.0.iter().rev() {
        x = reflect(i, &x);
    }
    x.sub(&rho)
}

/// The alternating word of length `j` starting with `r_0`.
pub fn w1_element(j: usize) -> WeylWord {
    WeylWord((0..j).map(|i| (i % 2) as u8).collect())
}

/// `m(j, n) = (ℓ+2)j + ℓ(1 - (-1)^j)/2 + (-1)^j n`.
pub fn m_of(j: usize, n: usize, level: usize) -> Result<usize> {
    if n > level {
        return Err(Error::Domain(format!("need 0 ≤ n ≤ ℓ, got n = {n}, ℓ = {level}")));
    }
    let base = (level + 2) * j;
    Ok(if j.is_multiple_of(2) { base + n } else { base + level - n })
}

/// Writes `r = m(j, n)` if possible.
pub fn representation(r: usize, level: usize) -> Option<(usize, usize)> {
    let period = level + 2;
    let (j, rem) = (r / period, r % period);
    if rem == level + 1 {
        return None;
    }
    Some(if j % 2 == 0 { (j, rem) } else { (j, level - rem) })
}

/// Bruhat order. In the infinite dihedral group `x ≤ y` iff `x = y` or `x` is shorter.
pub fn bruhat_leq(x: &WeylWord, y: &WeylWord) -> bool {
    x == y || x.len() < y.len()
}

/// `[V^{x·Λ} : L(y·Λ)]` for Verma modules.
pub fn verma_mult(x: &WeylWord, y: &WeylWord) -> usize {
    usize::from(bruhat_leq(x, y))
}

/// `[V^{M(x·Λ)} : L(y·Λ)]` for generalized Verma modules.
pub fn gvm_mult(x: &WeylWord, y: &WeylWord) -> usize {
    usize::from(bruhat_leq(x, y) && !bruhat_leq(&x.left_mul(1), y))
}

/// One term of the resolution: highest weight and grade shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionTerm {
    pub j: usize,
    pub weight: usize,
    pub shift: usize,
}

/// Terms `j = 0..=j_max` of the resolution of `L(n, ℓ)`.
pub fn resolution_weights(n: usize, level: usize, j_max: usize) -> Result<Vec<ResolutionTerm>> {
    let lambda = AffineWeight::from_ints(n as i64, level as i64, 0);
    (0..=j_max)
        .map(|j| {
            let w = dot(&w1_element(j), &lambda);
            let weight = m_of(j, n, level)?;
            debug_assert_eq!(w.a, q(weight as i64));
            let shift = -w.d;
            if !shift.is_integer() || shift < q(0) {
                return Err(Error::Domain(format!("unexpected grade shift {shift}")));
            }
            let shift = shift.to_integer().try_into().map_err(|_| Error::Domain("shift overflow".into()))?;
            Ok(ResolutionTerm { j, weight, shift })
        })
        .collect()
}

/// Alternating sum of the graded dimensions of the resolution at grade `d`,
/// which is the dimension of `L(n, ℓ)` at grade `d`.
pub fn euler_dims(n: usize, level: usize, d: usize) -> Result<i64> {
    let series = pbw_series(d);
    let mut total = 0i64;
    let mut j = 0;
    loop {
        let term = resolution_weights(n, level, j)?.pop().expect("nonempty");
        if term.shift > d {
            break;
        }
        let dim = (term.weight as i64 + 1) * series[d - term.shift] as i64;
        total += if j % 2 == 0 { dim } else { -dim };
        j += 1;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &[u8]) -> WeylWord {
        WeylWord::new(s.to_vec()).unwrap()
    }

    #[test]
    fn reflection_examples() {
        let w = AffineWeight::from_ints(3, 5, 7);
        assert_eq!(reflect(1, &w), AffineWeight::from_ints(-3, 5, 7));
        assert_eq!(reflect(0, &AffineWeight::from_ints(2, 0, 0)), AffineWeight::from_ints(-2, 0, 2));
        assert_eq!(reflect(0, &reflect(0, &w)), w);
    }

    #[test]
    fn dot_examples() {
        for l in 0..5i64 {
            for n in 0..=l {
                let lam = AffineWeight::from_ints(n, l, 0);
                assert_eq!(dot(&WeylWord::identity(), &lam), lam);
                assert_eq!(dot(&word(&[0]), &lam), AffineWeight::from_ints(2 * l + 2 - n, l, n - l - 1));
                assert_eq!(dot(&word(&[0, 1]), &lam).a, q(2 * (l + 2) + n));
            }
        }
    }

    #[test]
    fn m_examples() {
        assert_eq!(m_of(0, 1, 3).unwrap(), 1);
        assert_eq!(m_of(1, 1, 3).unwrap(), 7);
        assert_eq!(m_of(2, 0, 1).unwrap(), 6);
        assert_eq!(m_of(3, 0, 1).unwrap(), 10);
        assert!(m_of(0, 3, 2).is_err());
        assert_eq!(w1_element(1), word(&[0]));
        assert_eq!(w1_element(4), word(&[0, 1, 0, 1]));
    }

    #[test]
    fn representation_inverts_m() {
        for l in 0..5 {
            for j in 0..8 {
                for n in 0..=l {
                    assert_eq!(representation(m_of(j, n, l).unwrap(), l), Some((j, n)));
                }
            }
            assert_eq!(representation(l + 1, l), None);
        }
    }

    #[test]
    fn bruhat_examples() {
        assert!(bruhat_leq(&word(&[0]), &word(&[0, 1])));
        assert!(!bruhat_leq(&word(&[0]), &word(&[1])));
        assert!(bruhat_leq(&word(&[1, 0]), &word(&[0, 1, 0])));
        assert_eq!(verma_mult(&WeylWord::identity(), &word(&[0])), 1);
        assert_eq!(gvm_mult(&WeylWord::identity(), &word(&[1])), 0);
        assert_eq!(gvm_mult(&w1_element(1), &w1_element(2)), 1);
    }

    #[test]
    fn resolution_examples() {
        let t = resolution_weights(0, 1, 3).unwrap();
        assert_eq!(t.iter().map(|x| x.weight).collect::<Vec<_>>(), vec![0, 4, 6, 10]);
        for l in 0..4 {
            for n in 0..=l {
                let t = resolution_weights(n, l, 2).unwrap();
                assert_eq!((t[0].weight, t[0].shift), (n, 0));
                assert_eq!((t[1].weight, t[1].shift), (2 * (l + 1) - n, l + 1 - n));
                assert_eq!(t[2].shift, l + n + 3);
            }
        }
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_dims(2, 3, 0).unwrap(), 3);
        assert_eq!(euler_dims(0, 1, 1).unwrap(), 3);
        assert_eq!(euler_dims(0, 1, 2).unwrap(), 4);
        let dims: Vec<i64> = (0..5).map(|d| euler_dims(0, 1, d).unwrap()).collect();
        assert_eq!(dims, vec![1, 3, 4, 7, 13]);
    }
}
