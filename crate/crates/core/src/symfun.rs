//! Classical symmetric functions in the elementary basis.
//!
//! Everything here is computed over `Z` and only specialized to a coefficient
//! ring where a result is substituted.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::Algebra;
use crate::coeffring::{Coeff, Ring, RingKind};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::polyring::{split_signed_terms, write_terms, MPoly, Perm};

/// A product `e_1^a_1 e_2^a_2 ...`, stored without trailing zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EMonomial(Vec<u32>);

impl EMonomial {
    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        EMonomial(exponents)
    }

    pub fn one() -> Self {
        EMonomial(Vec::new())
    }

    /// `e_i`, 1-based.
    pub fn gen(i: usize) -> Self {
        let mut e = vec![0; i];
        e[i - 1] = 1;
        EMonomial(e)
    }

    /// Exponent of `e_i` at index `i - 1`.
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Degree with `deg e_i = i`.
    pub fn degree(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, e)| (i as u32 + 1) * e)
            .sum()
    }

    fn mul(&self, other: &EMonomial) -> EMonomial {
        let len = self.0.len().max(other.0.len());
        EMonomial::new(
            (0..len)
                .map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0))
                .collect(),
        )
    }
}

impl Ord for EMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for EMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// An integer polynomial in the elementary symmetric functions `e_1, e_2, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct EPoly {
    terms: BTreeMap<EMonomial, BigInt>,
}

impl EPoly {
    pub fn zero() -> Self {
        EPoly::default()
    }

    pub fn one() -> Self {
        Self::term(EMonomial::one(), BigInt::one())
    }

    /// `e_i`; `e_0 = 1`.
    pub fn gen(i: usize) -> Self {
        if i == 0 {
            return Self::one();
        }
        Self::term(EMonomial::gen(i), BigInt::one())
    }

    pub fn term(mono: EMonomial, c: BigInt) -> Self {
        let mut p = EPoly::zero();
        p.add_term(mono, c);
        p
    }

    fn add_term(&mut self, mono: EMonomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn terms(&self) -> &BTreeMap<EMonomial, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &EPoly) -> EPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &EPoly) -> EPoly {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn mul(&self, other: &EPoly) -> EPoly {
        let mut out = EPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> EPoly {
        let mut out = EPoly::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    /// Degrees of the terms, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(EMonomial::degree).collect();
        d.dedup();
        d
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    /// Largest `i` with `e_i` occurring.
    pub fn max_generator(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    /// Replaces each `e_i` by `gen(i)` and multiplies out in `A`.
    ///
    /// Integer coefficients are embedded into `one.ring()`.
    pub fn substitute<A: Algebra>(&self, one: &A, mut gen: impl FnMut(usize) -> A) -> A {
        let ring = one.ring();
        let mut cache: Vec<Option<A>> = vec![None; self.max_generator() + 1];
        let mut acc = one.zero_like();
        for (mono, c) in &self.terms {
            let mut t = one.clone();
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let g = cache[i + 1].get_or_insert_with(|| gen(i + 1));
                t = t.mul(&g.pow(e));
            }
            acc = acc.add(&t.scale(&ring.embed(c.clone())));
        }
        acc
    }

    /// Reads `e1^2*e2 - 3*e4`.
    pub fn parse(s: &str) -> Result<EPoly> {
        let mut out = EPoly::zero();
        for (sign, body) in split_signed_terms(s)? {
            let mut c = BigInt::from(sign);
            let mut exps: Vec<u32> = Vec::new();
            for factor in body.split('*').map(str::trim) {
                if let Some(rest) = factor.strip_prefix('e') {
                    let (i, e) = match rest.split_once('^') {
                        Some((i, e)) => (i, e.trim().parse::<u32>()),
                        None => (rest, Ok(1)),
                    };
                    let i: usize = i
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad factor `{factor}`")))?;
                    let e = e.map_err(|_| Error::Parse(format!("bad factor `{factor}`")))?;
                    if i == 0 {
                        return Err(Error::Parse("e0 is not a generator".into()));
                    }
                    if exps.len() < i {
                        exps.resize(i, 0);
                    }
                    exps[i - 1] += e;
                } else {
                    let k: BigInt = factor
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad factor `{factor}`")))?;
                    c *= k;
                }
            }
            out.add_term(EMonomial::new(exps), c);
        }
        Ok(out)
    }
}

impl fmt::Display for EPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<(String, Coeff)> = self
            .terms
            .iter()
            .rev()
            .map(|(mono, c)| {
                let body: Vec<String> = mono
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("e{}", i + 1)
                        } else {
                            format!("e{}^{e}", i + 1)
                        }
                    })
                    .collect();
                (body.join("*"), Coeff::from_integer(c.clone()))
            })
            .collect();
        write_terms(f, coeffs.iter().map(|(b, c)| (b.clone(), c)))
    }
}

/// The power sum `p_k` in the elementary basis, by Newton's recurrence
/// `p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... + (-1)^{k-1} k e_k`.
pub fn newton_p(k: usize) -> Result<EPoly> {
    if k == 0 {
        return Err(Error::InvalidIndex(
            "p_0 depends on the number of variables".into(),
        ));
    }
    let mut p: Vec<EPoly> = vec![EPoly::zero()];
    for r in 1..=k {
        let sign = |i: usize| BigInt::from(if i % 2 == 1 { 1 } else { -1 });
        let mut acc = EPoly::gen(r).scale(&(sign(r) * BigInt::from(r)));
        for i in 1..r {
            acc = acc.add(&EPoly::gen(i).mul(&p[r - i]).scale(&sign(i)));
        }
        p.push(acc);
    }
    Ok(p.pop().expect("k >= 1"))
}

/// `e_i` in `vars` variables as a polynomial over `ring`.
pub fn elementary_mpoly(vars: usize, i: usize, ring: Ring) -> MPoly {
    let mut terms = Vec::new();
    let mut pick = Vec::with_capacity(i);
    fn rec(start: usize, vars: usize, i: usize, pick: &mut Vec<usize>, terms: &mut Vec<Monomial>) {
        if pick.len() == i {
            let mut e = vec![0; vars];
            for &p in pick.iter() {
                e[p] = 1;
            }
            terms.push(Monomial::new(e));
            return;
        }
        for v in start..vars {
            pick.push(v);
            rec(v + 1, vars, i, pick, terms);
            pick.pop();
        }
    }
    rec(0, vars, i, &mut pick, &mut terms);
    MPoly::from_terms(ring, vars, terms.into_iter().map(|t| (t, Coeff::one())))
        .expect("monomials have the right arity")
}

/// Partitions of `d` with at most `max_parts` parts, as weakly decreasing
/// vectors padded with zeros to length `max_parts`, in decreasing lex order.
pub fn partitions(d: u32, max_parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(left: u32, cap: u32, max_parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            let mut v = cur.clone();
            v.resize(max_parts, 0);
            out.push(v);
            return;
        }
        if cur.len() == max_parts {
            return;
        }
        for part in (1..=cap.min(left)).rev() {
            cur.push(part);
            rec(left - part, part, max_parts, cur, out);
            cur.pop();
        }
    }
    rec(d, d, max_parts, &mut cur, &mut out);
    out
}

/// Number of 0/1 matrices with the given row and column sums.
///
/// This is the coefficient of `x^cols` in `e_{rows_1} e_{rows_2} ...`.
pub fn count_01_matrices(rows: &[u32], cols: &[u32]) -> BigInt {
    if rows.iter().sum::<u32>() != cols.iter().sum::<u32>() {
        return BigInt::zero();
    }
    let mut memo = HashMap::new();
    let mut sorted = cols.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    count_rec(rows, sorted, &mut memo)
}

fn count_rec(
    rows: &[u32],
    cols: Vec<u32>,
    memo: &mut HashMap<(usize, Vec<u32>), BigInt>,
) -> BigInt {
    let Some((&r, rest)) = rows.split_first() else {
        return if cols.iter().all(|&c| c == 0) {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    };
    let key = (rows.len(), cols.clone());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    // group equal positive column sums: (value, multiplicity)
    let mut groups: Vec<(u32, u32)> = Vec::new();
    for &c in cols.iter().filter(|&&c| c > 0) {
        match groups.last_mut() {
            Some((v, k)) if *v == c => *k += 1,
            _ => groups.push((c, 1)),
        }
    }
    let mut total = BigInt::zero();
    let mut take = vec![0u32; groups.len()];
    fn choose(
        g: usize,
        left: u32,
        groups: &[(u32, u32)],
        take: &mut [u32],
        rest: &[u32],
        total: &mut BigInt,
        memo: &mut HashMap<(usize, Vec<u32>), BigInt>,
        zeros: usize,
    ) {
        if g == groups.len() {
            if left > 0 {
                return;
            }
            let mut ways = BigInt::one();
            let mut next = Vec::new();
            for (t, &(v, k)) in take.iter().zip(groups) {
                ways *= binomial(BigInt::from(k), BigInt::from(*t));
                next.extend(std::iter::repeat_n(v, (k - t) as usize));
                next.extend(std::iter::repeat_n(v - 1, *t as usize));
            }
            next.extend(std::iter::repeat_n(0, zeros));
            next.sort_unstable_by(|a, b| b.cmp(a));
            *total += ways * count_rec(rest, next, memo);
            return;
        }
        for t in 0..=groups[g].1.min(left) {
            take[g] = t;
            choose(g + 1, left - t, groups, take, rest, total, memo, zeros);
        }
        take[g] = 0;
    }
    let zeros = cols.iter().filter(|&&c| c == 0).count();
    choose(0, r, &groups, &mut take, rest, &mut total, memo, zeros);
    memo.insert(key, total.clone());
    total
}

/// Rewrites a symmetric polynomial in `N = s.m()` variables over `Z` into the
/// elementary basis by leading-term elimination.
///
/// The polynomial is tracked by its coefficients on the dominant monomials
/// `x^lambda`, `lambda` a partition. At each step the lex-leading `lambda`
/// with coefficient `c` is cancelled by `c e_{lambda'}`, where `lambda'` is
/// the conjugate partition; its other monomials are lex-smaller.
pub fn to_e_basis(s: &MPoly) -> Result<EPoly> {
    if s.ring().kind() != RingKind::Integers {
        return Err(Error::RingMismatch("Z".into(), s.ring().to_string()));
    }
    let vars = s.m();
    for i in 1..vars {
        let swap = Perm::transposition(vars, i, i + 1)?;
        if &s.permute_vars(&swap)? != s {
            return Err(Error::NotSymmetric);
        }
    }
    if let Some(d) = s.total_degree() {
        if d as usize > vars {
            return Err(Error::DegreeTooLarge { degree: d, vars });
        }
    }
    let mut dominant: BTreeMap<Vec<u32>, BigInt> = s
        .terms()
        .iter()
        .filter(|(mono, _)| mono.exponents().windows(2).all(|w| w[0] >= w[1]))
        .map(|(mono, c)| (mono.exponents().to_vec(), c.numer().clone()))
        .collect();
    let mut out = EPoly::zero();
    while let Some((lambda, c)) = dominant.pop_last() {
        let exps: Vec<u32> = (0..vars)
            .map(|i| lambda[i] - lambda.get(i + 1).copied().unwrap_or(0))
            .collect();
        let conj: Vec<u32> = exps
            .iter()
            .enumerate()
            .rev()
            .flat_map(|(i, &e)| std::iter::repeat_n(i as u32 + 1, e as usize))
            .collect();
        out.add_term(EMonomial::new(exps), c.clone());
        let d: u32 = lambda.iter().sum();
        for mu in partitions(d, vars) {
            if mu >= lambda {
                continue;
            }
            let k = count_01_matrices(&conj, &mu);
            if k.is_zero() {
                continue;
            }
            let slot = dominant.entry(mu.clone()).or_insert_with(BigInt::zero);
            *slot -= &c * k;
            if slot.is_zero() {
                dominant.remove(&mu);
            }
        }
    }
    Ok(out)
}

fn plethysm_cache() -> &'static Mutex<HashMap<(usize, usize), EPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), EPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `P_{h,k}`: the polynomial in the `e_i` equal to `e_h(x_1^k, x_2^k, ...)`.
///
/// Computed by expanding `e_h(x^k)` in `h*k` variables, where the elementary
/// basis is faithful up to degree `h*k`, and eliminating. Results are memoized.
pub fn plethysm_p(h: usize, k: usize) -> Result<EPoly> {
    if k == 0 {
        return Err(Error::InvalidIndex("plethysm by p_0".into()));
    }
    if h == 0 {
        return Ok(EPoly::one());
    }
    if let Some(p) = plethysm_cache()
        .lock()
        .expect("cache poisoned")
        .get(&(h, k))
    {
        return Ok(p.clone());
    }
    let vars = h * k;
    let eh = elementary_mpoly(vars, h, Ring::Z);
    let expanded = MPoly::from_terms(
        Ring::Z,
        vars,
        eh.terms()
            .iter()
            .map(|(mono, c)| (mono.pow(k as u32), c.clone())),
    )?;
    let result = to_e_basis(&expanded)?;
    plethysm_cache()
        .lock()
        .expect("cache poisoned")
        .insert((h, k), result.clone());
    Ok(result)
}

/// `e_k = sum_{lambda |- k} (-1)^{k - l(lambda)} p_lambda / z_lambda`.
///
/// Returns `(lambda, coefficient)` with `lambda` weakly decreasing.
pub fn e_in_power_sums(k: u32) -> Vec<(Vec<u32>, BigRational)> {
    partitions(k, k as usize)
        .into_iter()
        .map(|lambda| {
            let parts: Vec<u32> = lambda.into_iter().filter(|&p| p > 0).collect();
            let mut z = BigInt::one();
            let mut run = 0u32;
            for (idx, &p) in parts.iter().enumerate() {
                run += 1;
                z *= BigInt::from(p) * BigInt::from(run);
                if parts.get(idx + 1) != Some(&p) {
                    run = 0;
                }
            }
            let sign = if (k as usize - parts.len()).is_multiple_of(2) {
                1
            } else {
                -1
            };
            (parts, BigRational::new(BigInt::from(sign), z))
        })
        .collect()
}
