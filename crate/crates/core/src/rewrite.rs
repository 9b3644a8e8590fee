//! Rewriting `e_alpha` as a polynomial in the generators `e_i(nu)`, and back.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Deref;

use num_traits::Zero;

use crate::algebra::Algebra;
use crate::coeffring::{same_ring, Coeff, Ring};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, Multidegree};
use crate::msf::{basis_product_with, AlphaIndex, Ambient, MsfElement};
use crate::polyring::{split_signed_terms, write_terms, NPoly};
use crate::symfun::plethysm_p;

/// The symbol `e_i(mu)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub i: u32,
    pub mu: Monomial,
}

impl Symbol {
    pub fn new(i: u32, mu: Monomial) -> Result<Self> {
        if i == 0 {
            return Err(Error::InvalidIndex("generator e_0".into()));
        }
        if mu.is_one() {
            return Err(Error::ZeroMonomial);
        }
        Ok(Symbol { i, mu })
    }

    /// `i * deg(mu)`.
    pub fn multidegree(&self) -> Multidegree {
        let mut d = Multidegree::zero(self.mu.m());
        d.add_scaled(self.mu.exponents(), self.i);
        d
    }

    pub fn total_degree(&self) -> u32 {
        self.i * self.mu.total_degree()
    }

    fn key(&self) -> (Reverse<u32>, &Monomial) {
        (Reverse(self.i), &self.mu)
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E[{};{}]", self.i, self.mu)
    }
}

/// A product of symbols, sorted, each with a positive exponent.
pub type SymMono = Vec<(Symbol, u32)>;

fn mono_mul(a: &SymMono, b: &SymMono) -> SymMono {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (a.iter().peekable(), b.iter().peekable());
    loop {
        match (x.peek(), y.peek()) {
            (Some((s, e)), Some((t, f))) => match s.cmp(t) {
                Ordering::Less => {
                    out.push((s.clone(), *e));
                    x.next();
                }
                Ordering::Greater => {
                    out.push((t.clone(), *f));
                    y.next();
                }
                Ordering::Equal => {
                    out.push((s.clone(), e + f));
                    x.next();
                    y.next();
                }
            },
            (Some(_), None) => {
                out.extend(x.cloned());
                return out;
            }
            (None, Some(_)) => {
                out.extend(y.cloned());
                return out;
            }
            (None, None) => return out,
        }
    }
}

/// A polynomial over `R` in symbols `e_i(mu)`, `mu` any positive-degree
/// monomial in `m` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolPoly {
    ring: Ring,
    m: usize,
    terms: BTreeMap<SymMono, Coeff>,
}

impl SymbolPoly {
    pub fn zero(ring: Ring, m: usize) -> Self {
        SymbolPoly {
            ring,
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: Ring, m: usize) -> Self {
        let mut p = Self::zero(ring, m);
        p.terms.insert(Vec::new(), ring.one());
        p
    }

    pub fn symbol(ring: Ring, sym: Symbol) -> Self {
        let mut p = Self::zero(ring, sym.mu.m());
        p.terms.insert(vec![(sym, 1)], ring.one());
        p
    }

    pub fn from_terms(
        ring: Ring,
        m: usize,
        terms: impl IntoIterator<Item = (SymMono, Coeff)>,
    ) -> Result<Self> {
        let mut out = Self::zero(ring, m);
        for (mono, c) in terms {
            let mut sorted: BTreeMap<Symbol, u32> = BTreeMap::new();
            for (s, e) in mono {
                if s.mu.m() != m {
                    return Err(Error::ArityMismatch(m, s.mu.m()));
                }
                if e > 0 {
                    *sorted.entry(s).or_insert(0) += e;
                }
            }
            let c = ring.coerce(&c)?;
            out.add_term(sorted.into_iter().collect(), c);
        }
        Ok(out)
    }

    fn add_term(&mut self, mono: SymMono, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.get(&mono) {
            Some(old) => self.ring.add(old, &c),
            None => c,
        };
        if s.is_zero() {
            self.terms.remove(&mono);
        } else {
            self.terms.insert(mono, s);
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<SymMono, Coeff> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every symbol occurring, ascending.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = self
            .terms
            .keys()
            .flat_map(|mono| mono.iter().map(|(s, _)| s.clone()))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Multidegrees of the terms, ascending.
    pub fn multidegrees(&self) -> Vec<Multidegree> {
        let mut out: Vec<Multidegree> = self
            .terms
            .keys()
            .map(|mono| {
                let mut d = Multidegree::zero(self.m);
                for (s, e) in mono {
                    d.add_scaled(s.mu.exponents(), s.i * e);
                }
                d
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Substitutes every symbol and multiplies out in `A`.
    pub fn substitute<A: Algebra>(&self, one: &A, mut gen: impl FnMut(&Symbol) -> A) -> A {
        let mut cache: HashMap<&Symbol, A> = HashMap::new();
        let mut acc = one.zero_like();
        for (mono, c) in &self.terms {
            let mut t = one.clone();
            for (s, e) in mono {
                let g = cache.entry(s).or_insert_with(|| gen(s));
                t = t.mul(&g.pow(*e));
                if t.is_zero() {
                    break;
                }
            }
            acc = acc.add(&t.scale(c));
        }
        acc
    }

    /// Maps each `e_i(mu)` to `e_i(mu)` in the given ambient and multiplies out.
    pub fn evaluate(&self, ambient: Ambient) -> MsfElement {
        let one = MsfElement::one(ambient, self.m, self.ring);
        self.substitute(&one, |s| {
            MsfElement::e_k(s.mu.clone(), s.i, ambient, self.ring)
                .expect("symbols carry positive-degree monomials")
        })
    }

    /// Like [`SymbolPoly::evaluate`] but multiplies the concrete orbit sums in
    /// `A_R(n,m)` directly.
    pub fn evaluate_expanded(&self, n: u32) -> NPoly {
        let ambient = Ambient::Finite(n);
        let one = NPoly::one(self.ring, n as usize, self.m);
        self.substitute(&one, |s| {
            MsfElement::e_k(s.mu.clone(), s.i, ambient, self.ring)
                .and_then(|e| e.expand())
                .expect("finite ambient")
        })
    }

    /// Reads the `E[i;(..)]` text form.
    pub fn parse(s: &str, ring: Ring, m: usize) -> Result<Self> {
        let mut terms = Vec::new();
        for (sign, body) in split_signed_terms(s)? {
            let mut c = ring.embed(sign);
            let mut mono = Vec::new();
            for factor in split_factors(&body) {
                let factor = factor.trim();
                if let Some(rest) = factor.strip_prefix("E[") {
                    let (inner, power) = rest
                        .split_once(']')
                        .ok_or_else(|| Error::Parse(format!("unclosed symbol `{factor}`")))?;
                    let e = match power.trim() {
                        "" => 1,
                        p => p
                            .strip_prefix('^')
                            .and_then(|p| p.trim().parse::<u32>().ok())
                            .ok_or_else(|| Error::Parse(format!("bad power in `{factor}`")))?,
                    };
                    let (i, mu) = inner
                        .split_once(';')
                        .ok_or_else(|| Error::Parse(format!("bad symbol `{factor}`")))?;
                    let i: u32 = i
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad index in `{factor}`")))?;
                    mono.push((Symbol::new(i, parse_tuple(mu, m)?)?, e));
                } else {
                    c = ring.mul(&c, &ring.parse_coeff(factor)?);
                }
            }
            terms.push((mono, c));
        }
        Self::from_terms(ring, m, terms)
    }
}

fn split_factors(body: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (idx, ch) in body.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '*' if depth == 0 => {
                out.push(&body[start..idx]);
                start = idx + 1;
            }
            _ => {}
        }
    }
    out.push(&body[start..]);
    out
}

fn parse_tuple(s: &str, m: usize) -> Result<Monomial> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected a tuple, got `{s}`")))?;
    let exps: Vec<u32> = inner
        .split(',')
        .map(|e| e.trim().parse::<u32>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse(format!("bad exponent in `{s}`")))?;
    if exps.len() != m {
        return Err(Error::ArityMismatch(m, exps.len()));
    }
    Ok(Monomial::new(exps))
}

impl Algebra for SymbolPoly {
    fn ring(&self) -> Ring {
        self.ring
    }

    fn zero_like(&self) -> Self {
        Self::zero(self.ring, self.m)
    }

    fn one_like(&self) -> Self {
        Self::one(self.ring, self.m)
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.add_term(mono.clone(), c.clone());
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = self.zero_like();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(mono_mul(a, b), self.ring.mul(ca, cb));
            }
        }
        out
    }

    fn scale(&self, c: &Coeff) -> Self {
        let mut out = self.zero_like();
        for (mono, x) in &self.terms {
            out.add_term(mono.clone(), self.ring.mul(x, c));
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for SymbolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bodies: Vec<(String, &Coeff)> = self
            .terms
            .iter()
            .map(|(mono, c)| {
                let body: Vec<String> = mono
                    .iter()
                    .map(|(s, e)| {
                        if *e == 1 {
                            s.to_string()
                        } else {
                            format!("{s}^{e}")
                        }
                    })
                    .collect();
                (body.join("*"), c)
            })
            .collect();
        write_terms(f, bodies)
    }
}

/// A polynomial in the free generators `e_{i,nu}`, `nu` primitive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenPoly(SymbolPoly);

impl GenPoly {
    pub fn zero(ring: Ring, m: usize) -> Self {
        GenPoly(SymbolPoly::zero(ring, m))
    }

    pub fn into_inner(self) -> SymbolPoly {
        self.0
    }

    pub fn parse(s: &str, ring: Ring, m: usize) -> Result<Self> {
        GenPoly::try_from(SymbolPoly::parse(s, ring, m)?)
    }
}

impl TryFrom<SymbolPoly> for GenPoly {
    type Error = Error;

    fn try_from(p: SymbolPoly) -> Result<Self> {
        match p.symbols().into_iter().find(|s| !s.mu.is_primitive()) {
            Some(s) => Err(Error::InvalidIndex(format!("{s} is not a generator"))),
            None => Ok(GenPoly(p)),
        }
    }
}

impl Deref for GenPoly {
    type Target = SymbolPoly;

    fn deref(&self) -> &SymbolPoly {
        &self.0
    }
}

impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Rewriting state for one `(ambient, m, ring)`; memoizes basis elements.
pub struct Rewriter {
    ambient: Ambient,
    m: usize,
    ring: Ring,
    memo: HashMap<AlphaIndex, SymbolPoly>,
    prim: HashMap<Symbol, SymbolPoly>,
}

impl Rewriter {
    pub fn new(ambient: Ambient, m: usize, ring: Ring) -> Self {
        Rewriter {
            ambient,
            m,
            ring,
            memo: HashMap::new(),
            prim: HashMap::new(),
        }
    }

    fn symbol(&self, i: u32, mu: &Monomial) -> SymbolPoly {
        if !self.ambient.admits(i) {
            return SymbolPoly::zero(self.ring, self.m);
        }
        SymbolPoly::symbol(self.ring, Symbol { i, mu: mu.clone() })
    }

    fn check(&self, x: &MsfElement) -> Result<()> {
        same_ring(&self.ring, &x.ring())?;
        if x.m() != self.m {
            return Err(Error::ArityMismatch(self.m, x.m()));
        }
        if x.ambient() != self.ambient {
            return Err(Error::AmbientMismatch(
                self.ambient.to_string(),
                x.ambient().to_string(),
            ));
        }
        Ok(())
    }

    /// `e_alpha` as a polynomial in the `e_i(mu)`.
    ///
    /// Peels the largest support monomial `a`:
    /// `e_alpha = e_k(a) e_rest - sum c_gamma e_gamma`, the sum over the
    /// product tables that match part of `a` against `rest`.
    pub fn reduce_basis(&mut self, alpha: &AlphaIndex) -> SymbolPoly {
        if let Some(p) = self.memo.get(alpha) {
            return p.clone();
        }
        let out = match alpha.support() {
            [] => SymbolPoly::one(self.ring, self.m),
            [(mu, k)] => self.symbol(*k, mu),
            support => {
                let (pivot, k) = support.last().expect("nonempty").clone();
                let rest = AlphaIndex::new(self.m, support[..support.len() - 1].iter().cloned())
                    .expect("subset of a valid index");
                let head = AlphaIndex::single(pivot.clone(), k).expect("positive degree");
                let mut acc = self.symbol(k, &pivot).mul(&self.reduce_basis(&rest));
                let corrections = basis_product_with(&head, &rest, self.ambient, &self.ring, |t| {
                    t.matched_in_row(1) > 0
                });
                for (gamma, c) in corrections {
                    let g = self.reduce_basis(&gamma);
                    acc = acc.sub(&g.scale(&c));
                }
                acc
            }
        };
        self.memo.insert(alpha.clone(), out.clone());
        out
    }

    pub fn reduce_to_monomial_es(&mut self, x: &MsfElement) -> Result<SymbolPoly> {
        self.check(x)?;
        let mut acc = SymbolPoly::zero(self.ring, self.m);
        for (alpha, c) in x.terms() {
            acc = acc.add(&self.reduce_basis(alpha).scale(c));
        }
        Ok(acc)
    }

    /// Replaces each `e_i(nu^k)`, `k >= 2`, by `P_{i,k}(e_{1,nu}, e_{2,nu}, ...)`.
    pub fn primitive_reduce(&mut self, p: &SymbolPoly) -> Result<GenPoly> {
        same_ring(&self.ring, &p.ring())?;
        let one = SymbolPoly::one(self.ring, self.m);
        let mut table: HashMap<Symbol, SymbolPoly> = HashMap::new();
        for s in p.symbols() {
            let image = self.primitive_symbol(&s)?;
            table.insert(s, image);
        }
        GenPoly::try_from(p.substitute(&one, |s| table[s].clone()))
    }

    fn primitive_symbol(&mut self, s: &Symbol) -> Result<SymbolPoly> {
        if let Some(p) = self.prim.get(s) {
            return Ok(p.clone());
        }
        let (nu, k) = s.mu.primitive_decompose()?;
        let out = if !self.ambient.admits(s.i) {
            SymbolPoly::zero(self.ring, self.m)
        } else if k == 1 {
            self.symbol(s.i, &nu)
        } else {
            let pk = plethysm_p(s.i as usize, k as usize)?;
            let one = SymbolPoly::one(self.ring, self.m);
            pk.substitute(&one, |j| self.symbol(j as u32, &nu))
        };
        self.prim.insert(s.clone(), out.clone());
        Ok(out)
    }

    pub fn rewrite(&mut self, x: &MsfElement) -> Result<GenPoly> {
        let p = self.reduce_to_monomial_es(x)?;
        self.primitive_reduce(&p)
    }
}

pub fn reduce_to_monomial_es(x: &MsfElement) -> SymbolPoly {
    Rewriter::new(x.ambient(), x.m(), x.ring())
        .reduce_to_monomial_es(x)
        .expect("rewriter built from x")
}

pub fn primitive_reduce(p: &SymbolPoly, ambient: Ambient) -> Result<GenPoly> {
    Rewriter::new(ambient, p.m(), p.ring()).primitive_reduce(p)
}

pub fn rewrite(x: &MsfElement) -> Result<GenPoly> {
    Rewriter::new(x.ambient(), x.m(), x.ring()).rewrite(x)
}

pub fn evaluate(g: &GenPoly, ambient: Ambient) -> MsfElement {
    g.evaluate(ambient)
}

/// Number of monomials of multidegree `a` in the free generators `e_{i,nu}`.
pub fn generator_monomial_count(a: &Multidegree) -> u64 {
    let m = a.m();
    let mut gens: Vec<Multidegree> = Vec::new();
    for b in a.all_below() {
        let mono = Monomial::new(b.entries().to_vec());
        if b.is_zero() || !mono.is_primitive() {
            continue;
        }
        for i in 1.. {
            let mut d = Multidegree::zero(m);
            d.add_scaled(b.entries(), i);
            if !d.divides(a) {
                break;
            }
            gens.push(d);
        }
    }
    // knapsack over generators, each usable any number of times
    let mut ways: HashMap<Vec<u32>, u64> = HashMap::new();
    ways.insert(vec![0; m], 1);
    let targets = a.all_below();
    for g in &gens {
        for t in &targets {
            let Some(prev) = t
                .entries()
                .iter()
                .zip(g.entries())
                .map(|(x, y)| x.checked_sub(*y))
                .collect::<Option<Vec<u32>>>()
            else {
                continue;
            };
            let add = ways.get(&prev).copied().unwrap_or(0);
            if add > 0 {
                *ways.entry(t.entries().to_vec()).or_insert(0) += add;
            }
        }
    }
    ways.get(a.entries()).copied().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::msf::{alpha_indices, basis_indices};
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn e_alpha(pairs: &[(&[u32], u32)], ambient: Ambient, ring: Ring) -> MsfElement {
        let m = pairs[0].0.len();
        MsfElement::e_alpha(
            pairs.iter().map(|(e, k)| (mono(e), *k)).collect(),
            m,
            ambient,
            ring,
        )
        .unwrap()
    }

    #[test]
    fn two_one_example_at_three() {
        let x = e_alpha(&[(&[1, 0], 2), (&[0, 1], 1)], Ambient::Finite(3), Ring::Z);
        let g = rewrite(&x).unwrap();
        assert_eq!(
            g.to_string(),
            "E[2;(1,0)]*E[1;(0,1)] - E[1;(1,0)]*E[1;(1,1)] + E[1;(2,1)]"
        );
        assert_eq!(reduce_to_monomial_es(&x).to_string(), g.to_string());
        assert_eq!(g.evaluate(Ambient::Finite(3)), x);
    }

    #[test]
    fn base_cases() {
        let x = e_alpha(&[(&[1, 1], 2)], Ambient::Finite(2), Ring::Z);
        assert_eq!(rewrite(&x).unwrap().to_string(), "E[2;(1,1)]");
        let y = e_alpha(&[(&[1, 2], 3)], Ambient::Infinite, Ring::Z);
        assert_eq!(rewrite(&y).unwrap().to_string(), "E[3;(1,2)]");
        let zero = MsfElement::zero(Ambient::Finite(2), 2, Ring::Z);
        assert_eq!(rewrite(&zero).unwrap().to_string(), "0");
    }

    #[test]
    fn pair_of_variables() {
        for n in [2, 3] {
            let x = e_alpha(&[(&[1, 0], 1), (&[0, 1], 1)], Ambient::Finite(n), Ring::Z);
            assert_eq!(
                rewrite(&x).unwrap().to_string(),
                "E[1;(0,1)]*E[1;(1,0)] - E[1;(1,1)]"
            );
        }
    }

    #[test]
    fn square_of_a_variable() {
        let x = e_alpha(&[(&[2], 1)], Ambient::Infinite, Ring::Z);
        assert_eq!(rewrite(&x).unwrap().to_string(), "-2*E[2;(1)] + E[1;(1)]^2");
        let x1 = e_alpha(&[(&[2], 1)], Ambient::Finite(1), Ring::Z);
        let g = rewrite(&x1).unwrap();
        assert_eq!(g.to_string(), "E[1;(1)]^2");
        assert_eq!(
            g.evaluate_expanded(1),
            NPoly::parse("x1(1)^2", Ring::Z, 1, 1).unwrap()
        );
    }

    #[test]
    fn evaluation_kills_heavy_terms() {
        let g = GenPoly::parse("E[1;(1,0)]*E[1;(0,1)]", Ring::Z, 2).unwrap();
        let at1 = g.evaluate(Ambient::Finite(1));
        assert_eq!(at1, e_alpha(&[(&[1, 1], 1)], Ambient::Finite(1), Ring::Z));
        assert_eq!(at1.expand().unwrap(), g.evaluate_expanded(1));
        let single = GenPoly::parse("E[2;(1,1)]", Ring::Z, 2).unwrap();
        assert_eq!(
            single.evaluate(Ambient::Finite(2)),
            e_alpha(&[(&[1, 1], 2)], Ambient::Finite(2), Ring::Z)
        );
        assert!(single.evaluate(Ambient::Finite(1)).is_zero());
    }

    #[test]
    fn text_round_trip_and_validation() {
        let s = "E[2;(1,0)]*E[1;(0,1)] - E[1;(1,0)]*E[1;(1,1)] + E[1;(2,1)]";
        let g = GenPoly::parse(s, Ring::Z, 2).unwrap();
        assert_eq!(g.to_string(), s);
        let q = GenPoly::parse("1/2*E[1;(1)]^2 - 3*E[2;(1)]", Ring::Q, 1).unwrap();
        assert_eq!(GenPoly::parse(&q.to_string(), Ring::Q, 1).unwrap(), q);
        assert!(GenPoly::parse("E[1;(2)]", Ring::Z, 1).is_err());
        assert!(SymbolPoly::parse("E[1;(2)]", Ring::Z, 1).is_ok());
        assert!(GenPoly::parse("E[0;(1)]", Ring::Z, 1).is_err());
        assert!(GenPoly::parse("E[1;(1,1)]", Ring::Z, 1).is_err());
        assert!(GenPoly::parse("E[1;(1)", Ring::Z, 1).is_err());
        assert!(GenPoly::parse("1/2*E[1;(1)]", Ring::Z, 1).is_err());
    }

    #[test]
    fn ambient_mismatch_is_reported() {
        let x = e_alpha(&[(&[1], 1)], Ambient::Finite(2), Ring::Z);
        let mut r = Rewriter::new(Ambient::Finite(3), 1, Ring::Z);
        assert!(matches!(r.rewrite(&x), Err(Error::AmbientMismatch(..))));
    }

    #[test]
    fn round_trip_exhaustive_small() {
        let p2 = Ring::prime_field(2).unwrap();
        for ring in [Ring::Z, p2] {
            for n in 1..=3u32 {
                for m in 1..=2 {
                    for a in Multidegree::up_to_total(m, 4) {
                        let mut r = Rewriter::new(Ambient::Finite(n), m, ring);
                        for idx in basis_indices(n, &a) {
                            let x = MsfElement::basis(idx, Ambient::Finite(n), ring).unwrap();
                            let g = r.rewrite(&x).unwrap();
                            assert_eq!(g.evaluate(Ambient::Finite(n)), x, "{x} at n={n}");
                            assert_eq!(g.evaluate_expanded(n), x.expand().unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn freeness_count() {
        for m in 1..=3 {
            for a in Multidegree::up_to_total(m, 6) {
                assert_eq!(
                    generator_monomial_count(&a),
                    alpha_indices(&a).len() as u64,
                    "multidegree {a}"
                );
            }
        }
        assert_eq!(generator_monomial_count(&Multidegree::new(vec![2])), 2);
    }

    #[test]
    fn generator_degree_bound() {
        for n in 1..=3u32 {
            for m in 1..=3usize {
                let bound = n * (m as u32 - 1);
                for a in Multidegree::up_to_total(m, 6) {
                    let mut r = Rewriter::new(Ambient::Finite(n), m, Ring::Z);
                    for idx in basis_indices(n, &a) {
                        let x = MsfElement::basis(idx, Ambient::Finite(n), Ring::Z).unwrap();
                        let g = r.rewrite(&x).unwrap();
                        for s in g.symbols() {
                            assert!(s.total_degree() <= a.total().max(bound));
                        }
                    }
                }
            }
        }
    }

    fn small_element() -> impl Strategy<Value = (u32, MsfElement)> {
        (1u32..=3, 1usize..=2).prop_flat_map(|(n, m)| {
            let indices: Vec<AlphaIndex> = Multidegree::up_to_total(m, 4)
                .iter()
                .flat_map(|a| basis_indices(n, a))
                .collect();
            prop::collection::vec((prop::sample::select(indices), -3i64..=3), 1..4).prop_map(
                move |terms| {
                    let x = MsfElement::from_terms(
                        Ambient::Finite(n),
                        m,
                        Ring::Z,
                        terms
                            .into_iter()
                            .map(|(i, c)| (i, Coeff::from_integer(c.into()))),
                    )
                    .unwrap();
                    (n, x)
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn round_trip_random((n, x) in small_element()) {
            let g = rewrite(&x).unwrap();
            prop_assert_eq!(g.evaluate(Ambient::Finite(n)), x.clone());
            prop_assert_eq!(GenPoly::parse(&g.to_string(), Ring::Z, x.m()).unwrap(), g.clone());
        }

        #[test]
        fn rewrite_preserves_multidegree((_n, x) in small_element()) {
            for a in x.multidegrees() {
                let part = x.homogeneous_component(&a);
                let g = rewrite(&part).unwrap();
                let degs = g.multidegrees();
                prop_assert!(degs.is_empty() || degs == vec![a.clone()]);
            }
        }
    }
}
