//! The concrete rings `A_R(m) = R[y_1..y_m]` and `A_R(n,m) = R[x_i(j)]`.
//!
//! `NPoly` monomials are flattened exponent vectors of length `n*m` laid out
//! slot-major: the block for slot `j` holds the exponents of
//! `x_1(j), ..., x_m(j)`. The symmetric group acts by permuting blocks.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::Algebra;
use crate::coeffring::{format_coeff, is_negative, same_ring, Coeff, Ring};
use crate::error::{Error, Result};
use crate::monomial::{same_arity, Monomial, Multidegree};

type Terms = BTreeMap<Monomial, Coeff>;

fn add_term(ring: &Ring, terms: &mut Terms, mono: Monomial, c: Coeff) {
    if c.is_zero() {
        return;
    }
    match terms.entry(mono) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = ring.add(o.get(), &c);
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

fn add_maps(ring: &Ring, a: &Terms, b: &Terms) -> Terms {
    let mut out = a.clone();
    for (mono, c) in b {
        add_term(ring, &mut out, mono.clone(), c.clone());
    }
    out
}

fn mul_maps(ring: &Ring, a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            add_term(ring, &mut out, ma.mul_unchecked(mb), ring.mul(ca, cb));
        }
    }
    out
}

fn scale_map(ring: &Ring, a: &Terms, c: &Coeff) -> Terms {
    a.iter()
        .filter_map(|(m, x)| {
            let y = ring.mul(x, c);
            (!y.is_zero()).then(|| (m.clone(), y))
        })
        .collect()
}

/// An element of `A_R(m) = R[y_1, ..., y_m]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    ring: Ring,
    m: usize,
    terms: Terms,
}

impl MPoly {
    pub fn zero(ring: Ring, m: usize) -> Self {
        MPoly {
            ring,
            m,
            terms: Terms::new(),
        }
    }

    pub fn one(ring: Ring, m: usize) -> Self {
        Self::monomial(ring, Monomial::one(m), ring.one())
    }

    pub fn monomial(ring: Ring, mono: Monomial, c: Coeff) -> Self {
        let m = mono.m();
        let mut terms = Terms::new();
        add_term(&ring, &mut terms, mono, c);
        MPoly { ring, m, terms }
    }

    /// The variable `y_i`, 1-based.
    pub fn var(ring: Ring, m: usize, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(m, i), ring.one())
    }

    pub fn from_terms(
        ring: Ring,
        m: usize,
        terms: impl IntoIterator<Item = (Monomial, Coeff)>,
    ) -> Result<Self> {
        let mut out = Terms::new();
        for (mono, c) in terms {
            same_arity(m, mono.m())?;
            add_term(&ring, &mut out, mono, ring.coerce(&c)?);
        }
        Ok(MPoly {
            ring,
            m,
            terms: out,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Coeff> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Coeff {
        self.terms
            .get(&Monomial::one(self.m))
            .cloned()
            .unwrap_or_else(Coeff::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    fn check(&self, other: &MPoly) -> Result<()> {
        same_ring(&self.ring, &other.ring)?;
        same_arity(self.m, other.m)
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check(other)?;
        Ok(Algebra::add(self, other))
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check(other)?;
        Ok(Algebra::mul(self, other))
    }

    /// `f(j)`: replaces every `y_i` by `x_i(j)` inside `A_R(n,m)`.
    pub fn subst_slot(&self, j: usize, n: usize) -> Result<NPoly> {
        if j == 0 || j > n {
            return Err(Error::SlotOutOfRange { slot: j, n });
        }
        let m = self.m;
        let terms = self
            .terms
            .iter()
            .map(|(mono, c)| {
                let mut e = vec![0; n * m];
                e[(j - 1) * m..j * m].copy_from_slice(mono.exponents());
                (Monomial::new(e), c.clone())
            })
            .collect();
        Ok(NPoly {
            ring: self.ring,
            n,
            m,
            terms,
        })
    }

    /// Applies a variable permutation `y_i -> y_{perm(i)}`.
    pub fn permute_vars(&self, perm: &Perm) -> Result<MPoly> {
        if perm.len() != self.m {
            return Err(Error::InvalidPermutation(self.m));
        }
        let terms = self
            .terms
            .iter()
            .map(|(mono, c)| {
                let mut e = vec![0; self.m];
                for (i, &x) in mono.exponents().iter().enumerate() {
                    e[perm.image(i)] = x;
                }
                (Monomial::new(e), c.clone())
            })
            .collect();
        Ok(MPoly {
            ring: self.ring,
            m: self.m,
            terms,
        })
    }
}

impl Algebra for MPoly {
    fn ring(&self) -> Ring {
        self.ring
    }
    fn zero_like(&self) -> Self {
        MPoly::zero(self.ring, self.m)
    }
    fn one_like(&self) -> Self {
        MPoly::one(self.ring, self.m)
    }
    fn add(&self, other: &Self) -> Self {
        MPoly {
            ring: self.ring,
            m: self.m,
            terms: add_maps(&self.ring, &self.terms, &other.terms),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        MPoly {
            ring: self.ring,
            m: self.m,
            terms: mul_maps(&self.ring, &self.terms, &other.terms),
        }
    }
    fn scale(&self, c: &Coeff) -> Self {
        MPoly {
            ring: self.ring,
            m: self.m,
            terms: scale_map(&self.ring, &self.terms, c),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// An element of `A_R(n,m)`, the polynomial ring in the `x_i(j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NPoly {
    ring: Ring,
    n: usize,
    m: usize,
    terms: Terms,
}

impl NPoly {
    pub fn zero(ring: Ring, n: usize, m: usize) -> Self {
        NPoly {
            ring,
            n,
            m,
            terms: Terms::new(),
        }
    }

    pub fn one(ring: Ring, n: usize, m: usize) -> Self {
        let mut terms = Terms::new();
        terms.insert(Monomial::one(n * m), ring.one());
        NPoly { ring, n, m, terms }
    }

    /// The variable `x_i(j)`, both 1-based.
    pub fn var(ring: Ring, n: usize, m: usize, i: usize, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(Error::SlotOutOfRange { slot: j, n });
        }
        if i == 0 || i > m {
            return Err(Error::InvalidIndex(format!("variable x{i} with m = {m}")));
        }
        let mut e = vec![0; n * m];
        e[(j - 1) * m + (i - 1)] = 1;
        let mut terms = Terms::new();
        terms.insert(Monomial::new(e), ring.one());
        Ok(NPoly { ring, n, m, terms })
    }

    /// Builds a polynomial from flattened slot-major exponent vectors.
    pub fn from_terms(
        ring: Ring,
        n: usize,
        m: usize,
        terms: impl IntoIterator<Item = (Monomial, Coeff)>,
    ) -> Result<Self> {
        let mut out = Terms::new();
        for (mono, c) in terms {
            same_arity(n * m, mono.m())?;
            add_term(&ring, &mut out, mono, ring.coerce(&c)?);
        }
        Ok(NPoly {
            ring,
            n,
            m,
            terms: out,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Coeff> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &NPoly) -> Result<()> {
        same_ring(&self.ring, &other.ring)?;
        if (self.n, self.m) != (other.n, other.m) {
            return Err(Error::AmbientMismatch(
                format!("A({}, {})", self.n, self.m),
                format!("A({}, {})", other.n, other.m),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &NPoly) -> Result<NPoly> {
        self.check(other)?;
        Ok(Algebra::add(self, other))
    }

    pub fn checked_mul(&self, other: &NPoly) -> Result<NPoly> {
        self.check(other)?;
        Ok(Algebra::mul(self, other))
    }

    /// Splits a flattened monomial into its per-slot monomials `mu_1, ..., mu_n`
    /// with `mono = mu_1(1) ... mu_n(n)`.
    pub fn slots_of(&self, mono: &Monomial) -> Vec<Monomial> {
        split_slots(mono, self.m)
    }

    /// `mu_1(1) ... mu_n(n)` as a flattened monomial.
    pub fn monomial_from_slots(slots: &[Monomial]) -> Monomial {
        Monomial::new(
            slots
                .iter()
                .flat_map(|s| s.exponents().iter().copied())
                .collect(),
        )
    }

    /// Multidegree of a flattened monomial: `deg(x_i(j)) = deg(y_i)`.
    pub fn monomial_multidegree(mono: &Monomial, m: usize) -> Multidegree {
        let mut a = vec![0; m];
        for (k, e) in mono.exponents().iter().enumerate() {
            a[k % m] += e;
        }
        Multidegree::new(a)
    }

    /// The `S_n` action `x_i(j) -> x_i(sigma(j))`.
    pub fn sn_act(&self, sigma: &Perm) -> Result<NPoly> {
        if sigma.len() != self.n {
            return Err(Error::InvalidPermutation(self.n));
        }
        let terms = self
            .terms
            .iter()
            .map(|(mono, c)| (permute_slots(mono, sigma, self.m), c.clone()))
            .collect();
        Ok(NPoly {
            ring: self.ring,
            n: self.n,
            m: self.m,
            terms,
        })
    }

    /// The homogeneous component of multidegree `a`.
    pub fn multidegree_component(&self, a: &Multidegree) -> NPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(mono, _)| &Self::monomial_multidegree(mono, self.m) == a)
            .map(|(mono, c)| (mono.clone(), c.clone()))
            .collect();
        NPoly {
            ring: self.ring,
            n: self.n,
            m: self.m,
            terms,
        }
    }

    /// Multidegrees occurring in `self`, ascending.
    pub fn multidegrees(&self) -> Vec<Multidegree> {
        let mut out: Vec<Multidegree> = self
            .terms
            .keys()
            .map(|mono| Self::monomial_multidegree(mono, self.m))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// The slot-killing map `A(n,m) -> A(n-1,m)`, `x_i(n) -> 0`.
    pub fn kill_last_slot(&self) -> Result<NPoly> {
        if self.n == 0 {
            return Err(Error::SlotOutOfRange { slot: 0, n: 0 });
        }
        let keep = (self.n - 1) * self.m;
        let terms = self
            .terms
            .iter()
            .filter(|(mono, _)| mono.exponents()[keep..].iter().all(|&e| e == 0))
            .map(|(mono, c)| (Monomial::new(mono.exponents()[..keep].to_vec()), c.clone()))
            .collect();
        Ok(NPoly {
            ring: self.ring,
            n: self.n - 1,
            m: self.m,
            terms,
        })
    }

    /// Reads the textual form `3*x1(1)^2*x2(3) - x1(2) + 1`.
    pub fn parse(s: &str, ring: Ring, n: usize, m: usize) -> Result<NPoly> {
        let mut out = NPoly::zero(ring, n, m);
        for (sign, body) in split_signed_terms(s)? {
            let mut coeff = ring.embed(sign);
            let mut e = vec![0u32; n * m];
            for factor in body.split('*').map(str::trim) {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in `{body}`")));
                }
                if let Some(rest) = factor.strip_prefix('x') {
                    let (i, j, pow) = parse_variable(rest)?;
                    if i == 0 || i > m || j == 0 || j > n {
                        return Err(Error::Parse(format!(
                            "variable `{factor}` outside A({n}, {m})"
                        )));
                    }
                    e[(j - 1) * m + (i - 1)] += pow;
                } else {
                    coeff = ring.mul(&coeff, &ring.parse_coeff(factor)?);
                }
            }
            add_term(&ring, &mut out.terms, Monomial::new(e), coeff);
        }
        Ok(out)
    }
}

impl Algebra for NPoly {
    fn ring(&self) -> Ring {
        self.ring
    }
    fn zero_like(&self) -> Self {
        NPoly::zero(self.ring, self.n, self.m)
    }
    fn one_like(&self) -> Self {
        NPoly::one(self.ring, self.n, self.m)
    }
    fn add(&self, other: &Self) -> Self {
        NPoly {
            terms: add_maps(&self.ring, &self.terms, &other.terms),
            ..self.zero_like()
        }
    }
    fn mul(&self, other: &Self) -> Self {
        NPoly {
            terms: mul_maps(&self.ring, &self.terms, &other.terms),
            ..self.zero_like()
        }
    }
    fn scale(&self, c: &Coeff) -> Self {
        NPoly {
            terms: scale_map(&self.ring, &self.terms, c),
            ..self.zero_like()
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Coefficients `e_0(f), ..., e_n(f)` of `prod_{j=1..n} (1 + t f(j))`.
pub fn generating_product(f: &MPoly, n: usize) -> Result<Vec<NPoly>> {
    let one = NPoly::one(f.ring, n, f.m);
    let mut coeffs = vec![one.clone()];
    coeffs.resize(n + 1, one.zero_like());
    for j in 1..=n {
        let fj = f.subst_slot(j, n)?;
        for k in (1..=j).rev() {
            let step = coeffs[k - 1].mul(&fj);
            coeffs[k] = coeffs[k].add(&step);
        }
    }
    Ok(coeffs)
}

pub(crate) fn split_slots(mono: &Monomial, m: usize) -> Vec<Monomial> {
    mono.exponents()
        .chunks(m.max(1))
        .map(|c| Monomial::new(c.to_vec()))
        .collect()
}

pub(crate) fn permute_slots(mono: &Monomial, sigma: &Perm, m: usize) -> Monomial {
    let e = mono.exponents();
    let mut out = vec![0; e.len()];
    for j in 0..sigma.len() {
        let t = sigma.image(j);
        out[t * m..(t + 1) * m].copy_from_slice(&e[j * m..(j + 1) * m]);
    }
    Monomial::new(out)
}

/// A permutation of `{1, ..., n}`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    /// From 1-based images: `images[j-1] = sigma(j)`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::InvalidPermutation(n));
            }
            seen[i - 1] = true;
        }
        Ok(Perm(images.into_iter().map(|i| i - 1).collect()))
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// The transposition of `a` and `b` (1-based).
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::InvalidPermutation(n));
        }
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(a - 1, b - 1);
        Ok(Perm(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 0-based image of the 0-based point `j`.
    pub fn image(&self, j: usize) -> usize {
        self.0[j]
    }

    /// `(self . other)(j) = self(other(j))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&j| self.0[j]).collect())
    }

    /// Every element of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if current.len() == n {
                out.push(Perm(current.clone()));
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    current.push(i);
                    rec(n, current, used, out);
                    current.pop();
                    used[i] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }
}

fn parse_variable(rest: &str) -> Result<(usize, usize, u32)> {
    let bad = || Error::Parse(format!("bad variable `x{rest}`"));
    let (i, rest) = rest.split_once('(').ok_or_else(bad)?;
    let (j, rest) = rest.split_once(')').ok_or_else(bad)?;
    let pow = match rest.trim() {
        "" => 1,
        r => r
            .strip_prefix('^')
            .and_then(|p| p.trim().parse().ok())
            .ok_or_else(bad)?,
    };
    Ok((
        i.trim().parse().map_err(|_| bad())?,
        j.trim().parse().map_err(|_| bad())?,
        pow,
    ))
}

/// Splits `a - b + c` into signed term bodies, ignoring signs inside parentheses.
pub(crate) fn split_signed_terms(s: &str) -> Result<Vec<(i64, String)>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut sign = 1i64;
    let mut signed = false;
    let mut current = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '[' => {
                depth += 1;
                current.push(ch);
            }
            ')' | ']' => {
                depth -= 1;
                current.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if current.trim().is_empty() {
                    if signed || !out.is_empty() {
                        return Err(Error::Parse(format!("dangling sign in `{s}`")));
                    }
                } else {
                    out.push((sign, current.trim().to_string()));
                }
                sign = if ch == '-' { -1 } else { 1 };
                signed = true;
                current.clear();
            }
            _ => current.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in `{s}`")));
    }
    if current.trim().is_empty() {
        return Err(Error::Parse(format!("trailing sign in `{s}`")));
    }
    out.push((sign, current.trim().to_string()));
    Ok(out)
}

/// Writes terms largest first as `c*body`, collapsing unit coefficients.
pub(crate) fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (String, &'a Coeff)>,
{
    let mut first = true;
    for (body, c) in terms {
        let neg = is_negative(c);
        let abs = if neg { -c.clone() } else { c.clone() };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        match (body.is_empty(), abs.is_one()) {
            (true, _) => write!(f, "{}", format_coeff(&abs))?,
            (false, true) => write!(f, "{body}")?,
            (false, false) => write!(f, "{}*{body}", format_coeff(&abs))?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

fn power_suffix(e: u32) -> String {
    if e == 1 {
        String::new()
    } else {
        format!("^{e}")
    }
}

impl fmt::Display for NPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.m;
        let terms = self.terms.iter().rev().map(|(mono, c)| {
            let e = mono.exponents();
            let n = e.len() / m.max(1);
            let body: Vec<String> = (0..m)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| e[j * m + i] > 0)
                .map(|(i, j)| format!("x{}({}){}", i + 1, j + 1, power_suffix(e[j * m + i])))
                .collect();
            (body.join("*"), c)
        });
        write_terms(f, terms)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().rev().map(|(mono, c)| {
            let body: Vec<String> = mono
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| format!("y{}{}", i + 1, power_suffix(e)))
                .collect();
            (body.join("*"), c)
        });
        write_terms(f, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse(s: &str, n: usize, m: usize) -> NPoly {
        NPoly::parse(s, Ring::Z, n, m).unwrap()
    }

    #[test]
    fn substitution_into_slots() {
        let z = Ring::Z;
        let y1y2 = MPoly::monomial(z, Monomial::new(vec![1, 1]), z.one());
        assert_eq!(y1y2.subst_slot(3, 3).unwrap(), parse("x1(3)*x2(3)", 3, 2));
        let sum = MPoly::var(z, 2, 1).add(&MPoly::var(z, 2, 2));
        assert_eq!(sum.subst_slot(1, 2).unwrap(), parse("x1(1) + x2(1)", 2, 2));
        assert_eq!(
            MPoly::one(z, 2).subst_slot(2, 4).unwrap(),
            NPoly::one(z, 4, 2)
        );
        assert!(matches!(
            sum.subst_slot(3, 2),
            Err(Error::SlotOutOfRange { slot: 3, n: 2 })
        ));
        assert!(sum.subst_slot(0, 2).is_err());
    }

    #[test]
    fn symmetric_group_action() {
        let swap = Perm::new(vec![2, 1]).unwrap();
        assert_eq!(
            parse("x1(1)", 2, 1).sn_act(&swap).unwrap(),
            parse("x1(2)", 2, 1)
        );
        let p = parse("3*x1(1)^2*x2(2) - x2(1)", 2, 2);
        assert_eq!(p.sn_act(&Perm::identity(2)).unwrap(), p);
        let sym = parse("x1(1)*x1(2)", 2, 1);
        assert_eq!(sym.sn_act(&swap).unwrap(), sym);
        assert!(Perm::new(vec![1, 1]).is_err());
        assert!(Perm::new(vec![0, 1]).is_err());
        assert!(p.sn_act(&Perm::identity(3)).is_err());
    }

    #[test]
    fn arithmetic() {
        let a = parse("x1(1)", 2, 1);
        let b = parse("x1(2)", 2, 1);
        assert_eq!(a.checked_mul(&b).unwrap(), parse("x1(1)*x1(2)", 2, 1));
        let p = parse("2*x1(1)^3 - x1(2) + 5", 2, 1);
        assert!(p.add(&p.scale(&Ring::Z.embed(-1))).is_zero());
        let f2 = Ring::prime_field(2).unwrap();
        let q = NPoly::parse("x1(1)*x1(2) + x1(1)", f2, 2, 1).unwrap();
        assert!(q.add(&q).is_zero());
        assert!(a.checked_add(&parse("x1(1)", 3, 1)).is_err());
        assert!(a.checked_add(&q).is_err());
    }

    #[test]
    fn grading() {
        let p = parse("x1(1) + x2(1)", 1, 2);
        assert_eq!(
            p.multidegree_component(&Multidegree::new(vec![1, 0])),
            parse("x1(1)", 1, 2)
        );
        assert!(p
            .multidegree_component(&Multidegree::new(vec![2, 0]))
            .is_zero());
        let q = parse("x1(1)*x2(2)", 2, 2);
        assert_eq!(q.multidegree_component(&Multidegree::new(vec![1, 1])), q);
    }

    #[test]
    fn text_round_trip() {
        let s = "x1(1)*x2(2) + x1(2)*x2(1)";
        assert_eq!(parse(s, 2, 2).to_string(), s);
        let t = "-3*x1(1)^2*x2(2) + x2(1) - 7";
        assert_eq!(parse(t, 2, 2).to_string(), t);
        assert_eq!(NPoly::zero(Ring::Z, 2, 2).to_string(), "0");
        assert!(NPoly::parse("x3(1)", Ring::Z, 2, 2).is_err());
        assert!(NPoly::parse("x1(1) +", Ring::Z, 2, 2).is_err());
        assert!(NPoly::parse("", Ring::Z, 2, 2).is_err());
    }

    #[test]
    fn slot_killing() {
        let p = parse("x1(1)*x1(2) + x1(1) + x1(2)", 2, 1);
        assert_eq!(p.kill_last_slot().unwrap(), parse("x1(1)", 1, 1));
    }

    #[test]
    fn generating_product_is_elementary() {
        // prod (1 + t y(j)) over 3 slots gives e_0, e_1, e_2, e_3
        let y = MPoly::var(Ring::Z, 1, 1);
        let e = generating_product(&y, 3).unwrap();
        assert_eq!(e[1], parse("x1(1) + x1(2) + x1(3)", 3, 1));
        assert_eq!(e[2], parse("x1(1)*x1(2) + x1(1)*x1(3) + x1(2)*x1(3)", 3, 1));
        assert_eq!(e[3], parse("x1(1)*x1(2)*x1(3)", 3, 1));
    }

    fn npoly(n: usize, m: usize) -> impl Strategy<Value = NPoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, n * m), -5i64..5), 0..5).prop_map(
            move |terms| {
                NPoly::from_terms(
                    Ring::Z,
                    n,
                    m,
                    terms
                        .into_iter()
                        .map(|(e, c)| (Monomial::new(e), Coeff::from_integer(c.into()))),
                )
                .unwrap()
            },
        )
    }

    fn perm(n: usize) -> impl Strategy<Value = Perm> {
        prop::sample::select(Perm::all(n))
    }

    fn mpoly(m: usize) -> impl Strategy<Value = MPoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, m), -5i64..5), 0..4).prop_map(
            move |terms| {
                MPoly::from_terms(
                    Ring::Z,
                    m,
                    terms
                        .into_iter()
                        .map(|(e, c)| (Monomial::new(e), Coeff::from_integer(c.into()))),
                )
                .unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn action_is_a_ring_homomorphism(
            (p, q, s, t) in (1usize..=4).prop_flat_map(|n| (npoly(n, 2), npoly(n, 2), perm(n), perm(n)))
        ) {
            prop_assert_eq!(p.mul(&q).sn_act(&s).unwrap(), p.sn_act(&s).unwrap().mul(&q.sn_act(&s).unwrap()));
            prop_assert_eq!(p.add(&q).sn_act(&s).unwrap(), p.sn_act(&s).unwrap().add(&q.sn_act(&s).unwrap()));
            prop_assert_eq!(
                p.sn_act(&s.compose(&t)).unwrap(),
                p.sn_act(&t).unwrap().sn_act(&s).unwrap()
            );
            for a in p.multidegrees() {
                prop_assert_eq!(
                    p.multidegree_component(&a).sn_act(&s).unwrap(),
                    p.sn_act(&s).unwrap().multidegree_component(&a)
                );
            }
            let total = p.multidegrees().iter().fold(p.zero_like(), |acc, a| acc.add(&p.multidegree_component(a)));
            prop_assert_eq!(total, p.clone());
        }

        #[test]
        fn slot_substitution_is_a_homomorphism(f in mpoly(2), g in mpoly(2), j in 1usize..=3, s in perm(3)) {
            prop_assert_eq!(
                f.mul(&g).subst_slot(j, 3).unwrap(),
                f.subst_slot(j, 3).unwrap().mul(&g.subst_slot(j, 3).unwrap())
            );
            prop_assert_eq!(
                f.add(&g).subst_slot(j, 3).unwrap(),
                f.subst_slot(j, 3).unwrap().add(&g.subst_slot(j, 3).unwrap())
            );
            // sigma(f(j)) = f(sigma(j))
            prop_assert_eq!(
                f.subst_slot(j, 3).unwrap().sn_act(&s).unwrap(),
                f.subst_slot(s.image(j - 1) + 1, 3).unwrap()
            );
        }

        #[test]
        fn text_form_round_trips(p in npoly(3, 2)) {
            prop_assert_eq!(NPoly::parse(&p.to_string(), Ring::Z, 3, 2).unwrap(), p);
        }
    }
}
