//! The truncated simplex category: ordinals `[n] = {0, ..., n}` for
//! `n <= MAX_DIM` and the order-preserving maps between them.
//!
//! Maps are stored as value arrays. Composition is written in diagrammatic
//! order throughout the crate: `compose(f, g)` is "f, then g".

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest ordinal handled anywhere in the crate.
pub const MAX_DIM: usize = 4;

/// An order-preserving map `[src] -> [tgt]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonotoneMap {
    src: usize,
    tgt: usize,
    values: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(src: usize, tgt: usize, values: Vec<usize>) -> Result<Self> {
        if values.len() != src + 1 {
            return Err(Error::Malformed(format!(
                "map out of [{src}] needs {} values, got {}",
                src + 1,
                values.len()
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v > tgt) {
            return Err(Error::IndexOutOfRange {
                what: "monotone map value",
                index: v,
                bound: tgt,
            });
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Malformed(format!("values {values:?} are not weakly increasing")));
        }
        Ok(MonotoneMap { src, tgt, values })
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap {
            src: n,
            tgt: n,
            values: (0..=n).collect(),
        }
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.tgt && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && self.values[self.src] == self.tgt
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}](", self.src, self.tgt)?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// `f` then `g`: the result sends `i` to `g(f(i))`.
pub fn compose(f: &MonotoneMap, g: &MonotoneMap) -> Result<MonotoneMap> {
    if f.tgt != g.src {
        return Err(Error::EndpointMismatch(format!("cannot compose {f} with {g}")));
    }
    Ok(MonotoneMap {
        src: f.src,
        tgt: g.tgt,
        values: f.values.iter().map(|&v| g.values[v]).collect(),
    })
}

/// The coface `δⁱ : [n] -> [n+1]`, the injection whose image omits `i`.
pub fn delta(i: usize, n: usize) -> Result<MonotoneMap> {
    if i > n + 1 {
        return Err(Error::IndexOutOfRange {
            what: "coface",
            index: i,
            bound: n + 1,
        });
    }
    Ok(MonotoneMap {
        src: n,
        tgt: n + 1,
        values: (0..=n).map(|j| if j < i { j } else { j + 1 }).collect(),
    })
}

/// The codegeneracy `σⁱ : [n+1] -> [n]`, the surjection hitting `i` twice.
pub fn sigma(i: usize, n: usize) -> Result<MonotoneMap> {
    if i > n {
        return Err(Error::IndexOutOfRange {
            what: "codegeneracy",
            index: i,
            bound: n,
        });
    }
    Ok(MonotoneMap {
        src: n + 1,
        tgt: n,
        values: (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect(),
    })
}

/// All monotone maps `[m] -> [n]`, lexicographic in their value arrays.
pub fn enumerate(m: usize, n: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut values = Vec::with_capacity(m + 1);
    fn go(m: usize, n: usize, lo: usize, values: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
        if values.len() == m + 1 {
            out.push(MonotoneMap {
                src: m,
                tgt: n,
                values: values.clone(),
            });
            return;
        }
        for v in lo..=n {
            values.push(v);
            go(m, n, v, values, out);
            values.pop();
        }
    }
    go(m, n, 0, &mut values, &mut out);
    out
}

/// Canonical epi-mono factorization `f = compose(epi, mono)`.
///
/// `sigmas` lists the codegeneracy indices `j₁ < … < jₜ` (positions where
/// `f(j) = f(j+1)`) and `deltas` the coface indices `i₁ > … > iₛ` (values
/// missed by `f`), so that `f = δ^{i₁}∘…∘δ^{iₛ}∘σ^{j₁}∘…∘σ^{jₜ}` in
/// applicative notation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub epi: MonotoneMap,
    pub mono: MonotoneMap,
    pub sigmas: Vec<usize>,
    pub deltas: Vec<usize>,
}

pub fn epi_mono_factor(f: &MonotoneMap) -> Factorization {
    let sigmas: Vec<usize> = (0..f.src).filter(|&j| f.values[j] == f.values[j + 1]).collect();
    let mut image: Vec<usize> = f.values.clone();
    image.dedup();
    let mut deltas: Vec<usize> = (0..=f.tgt).filter(|v| image.binary_search(v).is_err()).collect();
    deltas.reverse();
    let r = image.len() - 1;
    let mut epi_values = Vec::with_capacity(f.src + 1);
    let mut k = 0;
    for (j, &v) in f.values.iter().enumerate() {
        if j > 0 && v != f.values[j - 1] {
            k += 1;
        }
        epi_values.push(k);
    }
    Factorization {
        epi: MonotoneMap {
            src: f.src,
            tgt: r,
            values: epi_values,
        },
        mono: MonotoneMap {
            src: r,
            tgt: f.tgt,
            values: image,
        },
        sigmas,
        deltas,
    }
}

/// Rebuilds a map from canonical generator lists; inverse of the index part
/// of [`epi_mono_factor`].
pub fn from_generators(src: usize, sigmas: &[usize], deltas: &[usize]) -> Result<MonotoneMap> {
    let mut acc = MonotoneMap::identity(src);
    // σ^{jₜ} acts first, so walk the codegeneracies from the largest index.
    for &j in sigmas.iter().rev() {
        let s = sigma(j, acc.tgt.checked_sub(1).ok_or(Error::Malformed(
            "codegeneracy out of [0]".into(),
        ))?)?;
        acc = compose(&acc, &s)?;
    }
    for &i in deltas.iter().rev() {
        let d = delta(i, acc.tgt)?;
        acc = compose(&acc, &d)?;
    }
    Ok(acc)
}

/// `n choose k` for the small arguments used in cardinality checks.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(src: usize, tgt: usize, v: &[usize]) -> MonotoneMap {
        MonotoneMap::new(src, tgt, v.to_vec()).unwrap()
    }

    #[test]
    fn codegeneracy_after_coface_is_identity() {
        let d0 = delta(0, 0).unwrap();
        let d1 = delta(1, 0).unwrap();
        let s0 = sigma(0, 0).unwrap();
        assert!(compose(&d0, &s0).unwrap().is_identity());
        assert!(compose(&d1, &s0).unwrap().is_identity());
    }

    #[test]
    fn compose_with_identity() {
        let f = m(1, 2, &[0, 2]);
        assert_eq!(compose(&MonotoneMap::identity(1), &f).unwrap(), f);
        assert_eq!(compose(&f, &MonotoneMap::identity(2)).unwrap(), f);
    }

    #[test]
    fn compose_two_cofaces() {
        // δ¹:[1]→[2] has values (0,2); δ⁰:[2]→[3] has values (1,2,3).
        // Pointwise: 0 ↦ 0 ↦ 1 and 1 ↦ 2 ↦ 3.
        let f = delta(1, 1).unwrap();
        let g = delta(0, 2).unwrap();
        assert_eq!(compose(&f, &g).unwrap(), m(1, 3, &[1, 3]));
    }

    #[test]
    fn compose_rejects_mismatch() {
        let f = delta(0, 0).unwrap();
        assert!(matches!(compose(&f, &f), Err(Error::EndpointMismatch(_))));
    }

    #[test]
    fn generator_values() {
        assert_eq!(delta(0, 0).unwrap().values(), &[1]);
        assert_eq!(delta(1, 1).unwrap().values(), &[0, 2]);
        assert_eq!(sigma(0, 0).unwrap().values(), &[0, 0]);
        assert!(delta(3, 1).is_err());
        assert!(sigma(2, 1).is_err());
    }

    #[test]
    fn cofaces_omit_their_index() {
        for n in 0..=3 {
            for i in 0..=n + 1 {
                let d = delta(i, n).unwrap();
                assert!(d.is_injective());
                let missing: Vec<usize> = (0..=n + 1).filter(|v| !d.values().contains(v)).collect();
                assert_eq!(missing, vec![i]);
            }
        }
    }

    #[test]
    fn codegeneracies_double_their_index() {
        for n in 0..=3 {
            for i in 0..=n {
                let s = sigma(i, n).unwrap();
                assert!(s.is_surjective());
                for v in 0..=n {
                    let pre = s.values().iter().filter(|&&x| x == v).count();
                    assert_eq!(pre, if v == i { 2 } else { 1 });
                }
            }
        }
    }

    #[test]
    fn enumerate_counts() {
        let total: usize = (0..=2)
            .flat_map(|a| (0..=2).map(move |b| enumerate(a, b).len()))
            .sum();
        assert_eq!(total, 31);
        for n in 0..=4 {
            assert_eq!(enumerate(0, n).len(), n + 1);
        }
        assert_eq!(enumerate(1, 2).len(), 6);
        for a in 0..=MAX_DIM {
            for b in 0..=MAX_DIM {
                assert_eq!(enumerate(a, b).len(), binomial(a + b + 1, a + 1));
            }
        }
    }

    #[test]
    fn enumerate_is_sorted_and_unique() {
        let maps = enumerate(2, 3);
        assert!(maps.windows(2).all(|w| w[0].values() < w[1].values()));
    }

    #[test]
    fn factor_identity_and_mono() {
        let f = epi_mono_factor(&MonotoneMap::identity(2));
        assert!(f.sigmas.is_empty() && f.deltas.is_empty());
        let f = epi_mono_factor(&delta(1, 1).unwrap());
        assert!(f.sigmas.is_empty());
        assert_eq!(f.deltas, vec![1]);
    }

    #[test]
    fn factorization_round_trips() {
        for a in 0..=3 {
            for b in 0..=3 {
                for f in enumerate(a, b) {
                    let fac = epi_mono_factor(&f);
                    assert!(fac.epi.is_surjective() && fac.mono.is_injective());
                    assert_eq!(compose(&fac.epi, &fac.mono).unwrap(), f);
                    assert!(fac.sigmas.windows(2).all(|w| w[0] < w[1]));
                    assert!(fac.deltas.windows(2).all(|w| w[0] > w[1]));
                    assert_eq!(from_generators(a, &fac.sigmas, &fac.deltas).unwrap(), f);
                }
            }
        }
    }

    // Cosimplicial identities, written diagrammatically on value arrays.
    #[test]
    fn cosimplicial_identities() {
        let c = |f: MonotoneMap, g: MonotoneMap| compose(&f, &g).unwrap();
        for n in 0..=2 {
            // δ^j δ^i = δ^i δ^{j-1} for i < j (applicative).
            for j in 0..=n + 2 {
                for i in 0..j {
                    let lhs = c(delta(j - 1, n).unwrap(), delta(i, n + 1).unwrap());
                    let rhs = c(delta(i, n).unwrap(), delta(j, n + 1).unwrap());
                    assert_eq!(lhs, rhs, "dd i={i} j={j} n={n}");
                }
            }
            // σ^j σ^i = σ^i σ^{j+1} for i <= j.
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = c(sigma(i, n + 1).unwrap(), sigma(j, n).unwrap());
                    let rhs = c(sigma(j + 1, n + 1).unwrap(), sigma(i, n).unwrap());
                    assert_eq!(lhs, rhs, "ss i={i} j={j} n={n}");
                }
            }
            // σ^j δ^i relations, maps [n+1] -> [n+1].
            for j in 0..=n + 1 {
                for i in 0..=n + 2 {
                    let lhs = c(delta(i, n + 1).unwrap(), sigma(j, n + 1).unwrap());
                    if i == j || i == j + 1 {
                        assert!(lhs.is_identity());
                    } else if i < j {
                        let rhs = c(sigma(j - 1, n).unwrap(), delta(i, n).unwrap());
                        assert_eq!(lhs, rhs);
                    } else {
                        let rhs = c(sigma(j, n).unwrap(), delta(i - 1, n).unwrap());
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}
