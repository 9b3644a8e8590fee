//! Monomials `y_1^a_1 ... y_m^a_m` of `R[y_1, ..., y_m]`.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vector `a` in `N^m`, ordered by total degree and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multidegree(Vec<u32>);

impl Multidegree {
    pub fn new(entries: Vec<u32>) -> Self {
        Multidegree(entries)
    }

    pub fn zero(m: usize) -> Self {
        Multidegree(vec![0; m])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn checked_add(&self, other: &Multidegree) -> Result<Multidegree> {
        same_arity(self.m(), other.m())?;
        Ok(Multidegree(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    /// `self + k * other`, unchecked arity.
    pub(crate) fn add_scaled(&mut self, other: &[u32], k: u32) {
        for (a, b) in self.0.iter_mut().zip(other) {
            *a += k * b;
        }
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Multidegree) -> bool {
        self.m() == other.m() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Every multidegree componentwise below `self`, in increasing canonical order.
    pub fn all_below(&self) -> Vec<Multidegree> {
        let mut out = vec![Vec::with_capacity(self.m())];
        for &bound in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=bound).map(move |e| {
                        let mut v = prefix.clone();
                        v.push(e);
                        v
                    })
                })
                .collect();
        }
        let mut out: Vec<Multidegree> = out.into_iter().map(Multidegree).collect();
        out.sort();
        out
    }

    /// Every multidegree of total degree at most `max_total` in `m` variables.
    pub fn up_to_total(m: usize, max_total: u32) -> Vec<Multidegree> {
        Multidegree(vec![max_total; m])
            .all_below()
            .into_iter()
            .filter(|a| a.total() <= max_total)
            .collect()
    }
}

impl Ord for Multidegree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.len().cmp(&other.0.len()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Multidegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// A monomial in `m` variables, stored as its exponent vector.
///
/// The canonical order is graded lexicographic with `y_1` heaviest. Values of
/// different arity still compare (by arity after degree) so they can live in
/// ordered maps, but every arithmetic entry point rejects mixed arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(m: usize) -> Self {
        Monomial(vec![0; m])
    }

    /// The variable `y_i`, 1-based.
    pub fn var(m: usize, i: usize) -> Self {
        let mut e = vec![0; m];
        e[i - 1] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn multidegree(&self) -> Multidegree {
        Multidegree(self.0.clone())
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        same_arity(self.m(), other.m())?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    pub fn try_cmp(&self, other: &Monomial) -> Result<Ordering> {
        same_arity(self.m(), other.m())?;
        Ok(self.cmp(other))
    }

    /// Writes `self = root^k` with `root` primitive; `k` is the gcd of the exponents.
    pub fn primitive_decompose(&self) -> Result<(Monomial, u32)> {
        let k = self.0.iter().fold(0u32, |g, &e| g.gcd(&e));
        if k == 0 {
            return Err(Error::ZeroMonomial);
        }
        Ok((Monomial(self.0.iter().map(|e| e / k).collect()), k))
    }

    /// Positive degree and not a proper power.
    pub fn is_primitive(&self) -> bool {
        self.0.iter().fold(0u32, |g, &e| g.gcd(&e)) == 1
    }

    /// All monomials of positive total degree at most `max_total` in `m` variables.
    pub fn positive_up_to(m: usize, max_total: u32) -> Vec<Monomial> {
        Multidegree::up_to_total(m, max_total)
            .into_iter()
            .filter(|a| !a.is_zero())
            .map(|a| Monomial(a.0))
            .collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.len().cmp(&other.0.len()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, v: &[u32]) -> fmt::Result {
    write!(f, "(")?;
    for (i, e) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{e}")?;
    }
    write!(f, ")")
}

pub(crate) fn same_arity(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::ArityMismatch(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn multiplication() {
        assert_eq!(mono(&[1, 0]).mul(&mono(&[0, 1])).unwrap(), mono(&[1, 1]));
        assert_eq!(mono(&[2, 1]).mul(&mono(&[0, 0])).unwrap(), mono(&[2, 1]));
        assert_eq!(mono(&[1, 2]).mul(&mono(&[1, 2])).unwrap(), mono(&[2, 4]));
        assert_eq!(
            mono(&[1, 2]).mul(&mono(&[1, 2, 0])),
            Err(Error::ArityMismatch(2, 3))
        );
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(
            mono(&[2, 4]).primitive_decompose().unwrap(),
            (mono(&[1, 2]), 2)
        );
        assert_eq!(
            mono(&[1, 0]).primitive_decompose().unwrap(),
            (mono(&[1, 0]), 1)
        );
        assert_eq!(
            mono(&[0, 6]).primitive_decompose().unwrap(),
            (mono(&[0, 1]), 6)
        );
        assert_eq!(
            mono(&[0, 0]).primitive_decompose(),
            Err(Error::ZeroMonomial)
        );
    }

    #[test]
    fn graded_lex_order() {
        assert!(mono(&[0, 1]) < mono(&[1, 0]));
        assert!(mono(&[1, 1]) < mono(&[2, 0]));
        assert!(mono(&[0, 1]) < mono(&[1, 1]));
        assert!(mono(&[0, 1]).try_cmp(&mono(&[0, 1, 0])).is_err());
    }

    #[test]
    fn primitive_decomposition_exhaustive() {
        for m in 1..=4 {
            for mu in Monomial::positive_up_to(m, 8) {
                let (root, k) = mu.primitive_decompose().unwrap();
                assert_eq!(root.pow(k), mu);
                assert!(root.is_primitive());
                assert!(k >= 1);
                // uniqueness: no other primitive root works
                for j in 1..=mu.total_degree() {
                    if j != k && mu.exponents().iter().all(|e| e % j == 0) {
                        let other = Monomial::new(mu.exponents().iter().map(|e| e / j).collect());
                        assert!(!other.is_primitive());
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        // monomials of degree 1..=3 in 2 variables: 2 + 3 + 4
        assert_eq!(Monomial::positive_up_to(2, 3).len(), 9);
        assert_eq!(Multidegree::new(vec![1, 2]).all_below().len(), 6);
    }

    fn mono3() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..5, 3).prop_map(Monomial::new)
    }

    proptest! {
        #[test]
        fn order_is_total(a in mono3(), b in mono3(), c in mono3()) {
            prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
            prop_assert_eq!(a.cmp(&b) == Ordering::Equal, a == b);
            if a <= b && b <= c {
                prop_assert!(a <= c);
            }
        }

        #[test]
        fn monoid_laws(a in mono3(), b in mono3(), c in mono3()) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.mul(&Monomial::one(3)).unwrap(), a.clone());
            prop_assert_eq!(
                a.mul(&b).unwrap().multidegree(),
                a.multidegree().checked_add(&b.multidegree()).unwrap()
            );
        }
    }
}
