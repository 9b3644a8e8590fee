//! Multisymmetric functions in the orbit-sum basis `e_alpha`.
//!
//! An index `alpha` is a finitely supported multiplicity function on the
//! monomials of positive degree. In `A_R(n,m)^{S_n}` the element `e_alpha` is
//! the orbit sum of `mu_1(1)...mu_1(a_1) mu_2(a_1+1)...`, and the `e_alpha`
//! with `|alpha| <= n` form a basis. In the infinite ambient every `alpha` is
//! allowed and products are taken without the weight cutoff.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::Algebra;
use crate::coeffring::{same_ring, Coeff, Ring};
use crate::error::{Error, Result};
use crate::monomial::{same_arity, Monomial, Multidegree};
use crate::polyring::{write_terms, MPoly, NPoly};

/// The number of slots `n`, or the projective limit over all `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ambient {
    Finite(u32),
    Infinite,
}

impl Ambient {
    pub fn admits(&self, weight: u32) -> bool {
        match self {
            Ambient::Finite(n) => weight <= *n,
            Ambient::Infinite => true,
        }
    }

    pub fn finite(&self) -> Option<u32> {
        match self {
            Ambient::Finite(n) => Some(*n),
            Ambient::Infinite => None,
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Finite(n) => write!(f, "{n}"),
            Ambient::Infinite => write!(f, "inf"),
        }
    }
}

/// A multiplicity function `alpha` on positive-degree monomials.
///
/// The support is kept strictly increasing in the monomial order. Indices are
/// ordered by multidegree first, then by support.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlphaIndex {
    multidegree: Multidegree,
    support: Vec<(Monomial, u32)>,
}

impl AlphaIndex {
    /// The empty index; `e_0 = 1`.
    pub fn empty(m: usize) -> Self {
        AlphaIndex {
            multidegree: Multidegree::zero(m),
            support: Vec::new(),
        }
    }

    /// Builds an index from `(monomial, multiplicity)` pairs in any order.
    ///
    /// Monomials must be distinct, of positive degree and of equal arity, and
    /// multiplicities positive.
    pub fn new(m: usize, pairs: impl IntoIterator<Item = (Monomial, u32)>) -> Result<Self> {
        let mut support: Vec<(Monomial, u32)> = pairs.into_iter().collect();
        for (mu, k) in &support {
            same_arity(m, mu.m())?;
            if mu.is_one() {
                return Err(Error::InvalidIndex("monomial of degree zero".into()));
            }
            if *k == 0 {
                return Err(Error::InvalidIndex(format!("zero multiplicity at {mu}")));
            }
        }
        support.sort();
        if support.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidIndex("repeated monomial".into()));
        }
        Ok(Self::from_sorted(m, support))
    }

    /// `alpha = {mu: k}`, so `e_alpha = e_k(mu)`.
    pub fn single(mu: Monomial, k: u32) -> Result<Self> {
        Self::new(mu.m(), [(mu, k)])
    }

    fn from_sorted(m: usize, support: Vec<(Monomial, u32)>) -> Self {
        let mut multidegree = Multidegree::zero(m);
        for (mu, k) in &support {
            multidegree.add_scaled(mu.exponents(), *k);
        }
        AlphaIndex {
            multidegree,
            support,
        }
    }

    pub fn support(&self) -> &[(Monomial, u32)] {
        &self.support
    }

    pub fn m(&self) -> usize {
        self.multidegree.m()
    }

    /// `|alpha|`, the sum of the multiplicities.
    pub fn weight(&self) -> u32 {
        self.support.iter().map(|(_, k)| k).sum()
    }

    /// `sum alpha(mu) * deg(mu)`.
    pub fn multidegree(&self) -> &Multidegree {
        &self.multidegree
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// The single monomial and multiplicity when `e_alpha = e_k(mu)`.
    pub fn as_single(&self) -> Option<(&Monomial, u32)> {
        match self.support.as_slice() {
            [(mu, k)] => Some((mu, *k)),
            _ => None,
        }
    }

    /// Total degree of `e_alpha`.
    pub fn total_degree(&self) -> u32 {
        self.multidegree.total()
    }
}

impl fmt::Display for AlphaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "1");
        }
        let mults: Vec<String> = self
            .support
            .iter()
            .rev()
            .map(|(_, k)| k.to_string())
            .collect();
        let monos: Vec<String> = self
            .support
            .iter()
            .rev()
            .map(|(mu, _)| mu.to_string())
            .collect();
        write!(f, "e_{{({})}}({})", mults.join(","), monos.join(","))
    }
}

fn multinomial(parts: &[u32]) -> BigInt {
    let mut acc = BigInt::one();
    let mut total = 0u32;
    for &p in parts {
        for i in 1..=p {
            total += 1;
            acc = acc * BigInt::from(total) / BigInt::from(i);
        }
    }
    acc
}

/// Collapses repeated arguments of `e_(a_1,...,a_k)(f_1,...,f_k)`.
///
/// Equal monomials are merged into one entry whose multiplicity is the sum,
/// at the cost of the multinomial coefficient of the merged multiplicities.
/// Zero multiplicities are dropped. The coefficient is computed over `Z` and
/// then embedded, so it can vanish in positive characteristic.
pub fn merge_repeats(
    m: usize,
    args: &[(Monomial, u32)],
    ring: &Ring,
) -> Result<(AlphaIndex, Coeff)> {
    let mut groups: BTreeMap<Monomial, Vec<u32>> = BTreeMap::new();
    for (mu, k) in args {
        same_arity(m, mu.m())?;
        if *k == 0 {
            continue;
        }
        if mu.is_one() {
            return Err(Error::InvalidIndex("monomial of degree zero".into()));
        }
        groups.entry(mu.clone()).or_default().push(*k);
    }
    let mut scalar = BigInt::one();
    let support = groups
        .into_iter()
        .map(|(mu, ks)| {
            scalar *= multinomial(&ks);
            (mu, ks.iter().sum())
        })
        .collect();
    Ok((AlphaIndex::from_sorted(m, support), ring.embed(scalar)))
}

/// A margin table of the product formula.
///
/// Rows `1..=k` belong to the factors of the left index, columns `1..=h` to
/// the right index. Row 0 and column 0 hold the unmatched multiplicities;
/// `(0,0)` is unused and always zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarginTable {
    k: usize,
    h: usize,
    entries: Vec<u32>,
}

impl MarginTable {
    pub fn rows(&self) -> usize {
        self.k
    }

    pub fn cols(&self) -> usize {
        self.h
    }

    /// `gamma_{ij}` for `0 <= i <= k`, `0 <= j <= h`.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * (self.h + 1) + j]
    }

    /// `|gamma|`, the sum of all entries.
    pub fn weight(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn row_sum(&self, i: usize) -> u32 {
        (0..=self.h).map(|j| self.get(i, j)).sum()
    }

    pub fn col_sum(&self, j: usize) -> u32 {
        (0..=self.k).map(|i| self.get(i, j)).sum()
    }

    /// Sum of the matched entries `gamma_{i1}, ..., gamma_{ih}` of row `i`.
    pub fn matched_in_row(&self, i: usize) -> u32 {
        (1..=self.h).map(|j| self.get(i, j)).sum()
    }

    /// Every table with row sums `rows` and column sums `cols`, optionally with
    /// weight at most `max_weight`. Tables are produced in lexicographic order
    /// of the matched block, rows first.
    pub fn enumerate(rows: &[u32], cols: &[u32], max_weight: Option<u32>) -> Vec<MarginTable> {
        let (k, h) = (rows.len(), cols.len());
        let full: u32 = rows.iter().sum::<u32>() + cols.iter().sum::<u32>();
        let mut out = Vec::new();
        let mut inner = vec![0u32; k * h];
        let mut row_left = rows.to_vec();
        let mut col_left = cols.to_vec();

        #[allow(clippy::too_many_arguments)]
        fn rec(
            pos: usize,
            k: usize,
            h: usize,
            matched: u32,
            full: u32,
            max_weight: Option<u32>,
            inner: &mut [u32],
            row_left: &mut [u32],
            col_left: &mut [u32],
            out: &mut Vec<MarginTable>,
        ) {
            if pos == k * h {
                if max_weight.is_some_and(|w| full - matched > w) {
                    return;
                }
                let mut entries = vec![0u32; (k + 1) * (h + 1)];
                for i in 0..k {
                    entries[(i + 1) * (h + 1)] = row_left[i];
                    for j in 0..h {
                        entries[(i + 1) * (h + 1) + j + 1] = inner[i * h + j];
                    }
                }
                entries[1..=h].copy_from_slice(&col_left[..h]);
                out.push(MarginTable { k, h, entries });
                return;
            }
            let (i, j) = (pos / h, pos % h);
            let cap = row_left[i].min(col_left[j]);
            for g in 0..=cap {
                inner[pos] = g;
                row_left[i] -= g;
                col_left[j] -= g;
                rec(
                    pos + 1,
                    k,
                    h,
                    matched + g,
                    full,
                    max_weight,
                    inner,
                    row_left,
                    col_left,
                    out,
                );
                row_left[i] += g;
                col_left[j] += g;
            }
            inner[pos] = 0;
        }

        rec(
            0,
            k,
            h,
            0,
            full,
            max_weight,
            &mut inner,
            &mut row_left,
            &mut col_left,
            &mut out,
        );
        out
    }
}

/// `e_alpha * e_beta` expanded in the basis, keeping only the tables accepted
/// by `keep`.
pub fn basis_product_with(
    alpha: &AlphaIndex,
    beta: &AlphaIndex,
    ambient: Ambient,
    ring: &Ring,
    keep: impl Fn(&MarginTable) -> bool,
) -> BTreeMap<AlphaIndex, Coeff> {
    let m = alpha.m();
    let rows: Vec<u32> = alpha.support.iter().map(|(_, k)| *k).collect();
    let cols: Vec<u32> = beta.support.iter().map(|(_, k)| *k).collect();
    let products: Vec<Vec<Monomial>> = alpha
        .support
        .iter()
        .map(|(f, _)| {
            beta.support
                .iter()
                .map(|(g, _)| f.mul_unchecked(g))
                .collect()
        })
        .collect();
    let mut out = BTreeMap::new();
    let mut args = Vec::with_capacity(rows.len() * cols.len() + rows.len() + cols.len());
    for table in MarginTable::enumerate(&rows, &cols, ambient.finite()) {
        if !keep(&table) {
            continue;
        }
        args.clear();
        for (i, (f, _)) in alpha.support.iter().enumerate() {
            args.push((f.clone(), table.get(i + 1, 0)));
        }
        for (j, (g, _)) in beta.support.iter().enumerate() {
            args.push((g.clone(), table.get(0, j + 1)));
        }
        for (i, row) in products.iter().enumerate() {
            for (j, fg) in row.iter().enumerate() {
                args.push((fg.clone(), table.get(i + 1, j + 1)));
            }
        }
        let (idx, scalar) =
            merge_repeats(m, &args, ring).expect("arguments share the arity of alpha");
        accumulate(ring, &mut out, idx, scalar);
    }
    out
}

fn accumulate(ring: &Ring, terms: &mut BTreeMap<AlphaIndex, Coeff>, idx: AlphaIndex, c: Coeff) {
    if c.is_zero() {
        return;
    }
    match terms.entry(idx) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = ring.add(o.get(), &c);
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// A linear combination of basis elements `e_alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MsfElement {
    ambient: Ambient,
    m: usize,
    ring: Ring,
    terms: BTreeMap<AlphaIndex, Coeff>,
}

impl MsfElement {
    pub fn zero(ambient: Ambient, m: usize, ring: Ring) -> Self {
        MsfElement {
            ambient,
            m,
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient: Ambient, m: usize, ring: Ring) -> Self {
        let mut x = Self::zero(ambient, m, ring);
        x.terms.insert(AlphaIndex::empty(m), ring.one());
        x
    }

    /// The basis element with the given support.
    ///
    /// Fails with [`Error::WeightExceedsAmbient`] if the index vanishes in a
    /// finite ambient; see [`MsfElement::e_alpha_truncating`].
    pub fn e_alpha(
        support: Vec<(Monomial, u32)>,
        m: usize,
        ambient: Ambient,
        ring: Ring,
    ) -> Result<Self> {
        let idx = AlphaIndex::new(m, support)?;
        Self::basis(idx, ambient, ring)
    }

    /// Like [`MsfElement::e_alpha`] but returns zero when the weight exceeds `n`.
    pub fn e_alpha_truncating(
        support: Vec<(Monomial, u32)>,
        m: usize,
        ambient: Ambient,
        ring: Ring,
    ) -> Result<Self> {
        let idx = AlphaIndex::new(m, support)?;
        if !ambient.admits(idx.weight()) {
            return Ok(Self::zero(ambient, m, ring));
        }
        Self::basis(idx, ambient, ring)
    }

    pub fn basis(idx: AlphaIndex, ambient: Ambient, ring: Ring) -> Result<Self> {
        let m = idx.m();
        Self::from_terms(ambient, m, ring, [(idx, ring.one())])
    }

    /// `e_k(mu)` for a single monomial.
    pub fn e_k(mu: Monomial, k: u32, ambient: Ambient, ring: Ring) -> Result<Self> {
        let m = mu.m();
        if k == 0 {
            return Ok(Self::one(ambient, m, ring));
        }
        Self::e_alpha_truncating(vec![(mu, k)], m, ambient, ring)
    }

    pub fn from_terms(
        ambient: Ambient,
        m: usize,
        ring: Ring,
        terms: impl IntoIterator<Item = (AlphaIndex, Coeff)>,
    ) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (idx, c) in terms {
            same_arity(m, idx.m())?;
            if let Ambient::Finite(n) = ambient {
                if idx.weight() > n {
                    return Err(Error::WeightExceedsAmbient {
                        weight: idx.weight(),
                        n,
                    });
                }
            }
            accumulate(&ring, &mut out, idx, ring.coerce(&c)?);
        }
        Ok(MsfElement {
            ambient,
            m,
            ring,
            terms: out,
        })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<AlphaIndex, Coeff> {
        &self.terms
    }

    pub fn coeff(&self, idx: &AlphaIndex) -> Coeff {
        self.terms.get(idx).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multidegrees of the terms, ascending.
    pub fn multidegrees(&self) -> Vec<Multidegree> {
        let mut out: Vec<Multidegree> =
            self.terms.keys().map(|a| a.multidegree().clone()).collect();
        out.dedup();
        out
    }

    pub fn homogeneous_component(&self, a: &Multidegree) -> MsfElement {
        MsfElement {
            terms: self
                .terms
                .iter()
                .filter(|(idx, _)| idx.multidegree() == a)
                .map(|(i, c)| (i.clone(), c.clone()))
                .collect(),
            ..self.zero_like()
        }
    }

    pub fn same_space(&self, other: &MsfElement) -> Result<()> {
        same_ring(&self.ring, &other.ring)?;
        same_arity(self.m, other.m)?;
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(
                self.ambient.to_string(),
                other.ambient.to_string(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MsfElement) -> Result<MsfElement> {
        self.same_space(other)?;
        Ok(Algebra::add(self, other))
    }

    /// The product, via the margin-table formula applied to each pair of terms.
    pub fn product(&self, other: &MsfElement) -> Result<MsfElement> {
        self.same_space(other)?;
        Ok(self.product_unchecked(other))
    }

    fn product_unchecked(&self, other: &MsfElement) -> MsfElement {
        let ring = self.ring;
        let mut out = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let c = ring.mul(ca, cb);
                if a.is_empty() {
                    accumulate(&ring, &mut out, b.clone(), c);
                    continue;
                }
                if b.is_empty() {
                    accumulate(&ring, &mut out, a.clone(), c);
                    continue;
                }
                for (idx, s) in basis_product_with(a, b, self.ambient, &ring, |_| true) {
                    accumulate(&ring, &mut out, idx, ring.mul(&s, &c));
                }
            }
        }
        MsfElement {
            terms: out,
            ..self.zero_like()
        }
    }

    /// The orbit-sum expansion in `A_R(n,m)`.
    pub fn expand(&self) -> Result<NPoly> {
        let n = self.ambient.finite().ok_or(Error::InfiniteAmbient)? as usize;
        let mut out = NPoly::zero(self.ring, n, self.m);
        for (idx, c) in &self.terms {
            let orbit = expand_basis(idx, n, self.ring);
            out = out.add(&orbit.scale(c));
        }
        Ok(out)
    }

    /// Projects to `A_R(target, m)^{S_target}` by dropping every index of
    /// weight above `target`.
    pub fn truncate(&self, target: u32) -> Result<MsfElement> {
        if let Ambient::Finite(n) = self.ambient {
            if target > n {
                return Err(Error::TruncationTarget {
                    from: self.ambient.to_string(),
                    to: target,
                });
            }
        }
        Ok(MsfElement {
            ambient: Ambient::Finite(target),
            m: self.m,
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(idx, _)| idx.weight() <= target)
                .map(|(i, c)| (i.clone(), c.clone()))
                .collect(),
        })
    }

    /// Reinterprets the coefficients in another ring through `Z -> R`.
    ///
    /// Only meaningful from `Z`; fails if a coefficient cannot be coerced.
    pub fn change_ring(&self, ring: Ring) -> Result<MsfElement> {
        Self::from_terms(self.ambient, self.m, ring, self.terms.clone())
    }
}

/// The orbit sum `e_alpha` in `A_R(n,m)`: one monomial per assignment of slots
/// to the support, the remaining `n - |alpha|` slots receiving `1`.
pub fn expand_basis(idx: &AlphaIndex, n: usize, ring: Ring) -> NPoly {
    let m = idx.m();
    if idx.weight() as usize > n {
        return NPoly::zero(ring, n, m);
    }
    let mut remaining: Vec<u32> = idx.support.iter().map(|(_, k)| *k).collect();
    let blank = n as u32 - idx.weight();
    let mut exps = vec![0u32; n * m];
    let mut terms = Vec::new();

    fn rec(
        slot: usize,
        n: usize,
        m: usize,
        idx: &AlphaIndex,
        remaining: &mut [u32],
        blank: u32,
        exps: &mut [u32],
        terms: &mut Vec<Monomial>,
    ) {
        if slot == n {
            terms.push(Monomial::new(exps.to_vec()));
            return;
        }
        if blank > 0 {
            rec(slot + 1, n, m, idx, remaining, blank - 1, exps, terms);
        }
        for t in 0..remaining.len() {
            if remaining[t] == 0 {
                continue;
            }
            remaining[t] -= 1;
            exps[slot * m..(slot + 1) * m].copy_from_slice(idx.support[t].0.exponents());
            rec(slot + 1, n, m, idx, remaining, blank, exps, terms);
            exps[slot * m..(slot + 1) * m].fill(0);
            remaining[t] += 1;
        }
    }

    rec(0, n, m, idx, &mut remaining, blank, &mut exps, &mut terms);
    NPoly::from_terms(ring, n, m, terms.into_iter().map(|t| (t, Coeff::one())))
        .expect("orbit monomials have arity n*m")
}

/// `e_k(f)` for `f` in the augmentation ideal.
///
/// Writing `f = sum lambda_mu mu`, `e_k(f) = sum_{|alpha| = k} lambda^alpha e_alpha`
/// with `lambda^alpha = prod lambda_mu^{alpha(mu)}`; in a finite ambient the
/// sum is empty once `k > n`.
pub fn ek_of_f(f: &MPoly, k: u32, ambient: Ambient) -> Result<MsfElement> {
    if !f.constant_term().is_zero() {
        return Err(Error::NonZeroConstantTerm);
    }
    let ring = f.ring();
    let m = f.m();
    if k == 0 {
        return Ok(MsfElement::one(ambient, m, ring));
    }
    if !ambient.admits(k) {
        return Ok(MsfElement::zero(ambient, m, ring));
    }
    let support: Vec<(&Monomial, &Coeff)> = f.terms().iter().collect();
    let mut out = MsfElement::zero(ambient, m, ring);
    let mut choice = vec![0u32; support.len()];

    fn rec(
        pos: usize,
        left: u32,
        support: &[(&Monomial, &Coeff)],
        choice: &mut [u32],
        ring: &Ring,
        m: usize,
        out: &mut BTreeMap<AlphaIndex, Coeff>,
    ) {
        if pos == support.len() {
            if left > 0 {
                return;
            }
            let mut coeff = ring.one();
            let mut pairs = Vec::new();
            for (t, &a) in choice.iter().enumerate() {
                if a > 0 {
                    coeff = ring.mul(&coeff, &ring.pow(support[t].1, a));
                    pairs.push((support[t].0.clone(), a));
                }
            }
            let idx = AlphaIndex::new(m, pairs).expect("distinct positive-degree monomials");
            accumulate(ring, out, idx, coeff);
            return;
        }
        for a in 0..=left {
            choice[pos] = a;
            rec(pos + 1, left - a, support, choice, ring, m, out);
        }
        choice[pos] = 0;
    }

    rec(0, k, &support, &mut choice, &ring, m, &mut out.terms);
    Ok(out)
}

/// Every index `alpha` with `sum alpha(mu) deg(mu) = a`, ascending.
pub fn alpha_indices(a: &Multidegree) -> Vec<AlphaIndex> {
    let m = a.m();
    let mut candidates: Vec<Monomial> = a
        .all_below()
        .into_iter()
        .filter(|b| !b.is_zero())
        .map(|b| Monomial::new(b.entries().to_vec()))
        .collect();
    candidates.reverse();
    let mut out = Vec::new();
    let mut chosen: Vec<(Monomial, u32)> = Vec::new();

    fn rec(
        pos: usize,
        left: &mut Vec<u32>,
        candidates: &[Monomial],
        chosen: &mut Vec<(Monomial, u32)>,
        m: usize,
        out: &mut Vec<AlphaIndex>,
    ) {
        if left.iter().all(|&e| e == 0) {
            out.push(AlphaIndex::new(m, chosen.iter().cloned()).expect("distinct candidates"));
            return;
        }
        if pos == candidates.len() {
            return;
        }
        let mu = &candidates[pos];
        let max = mu
            .exponents()
            .iter()
            .zip(left.iter())
            .filter(|(e, _)| **e > 0)
            .map(|(e, l)| l / e)
            .min()
            .unwrap_or(0);
        for k in (1..=max).rev() {
            for (l, e) in left.iter_mut().zip(mu.exponents()) {
                *l -= k * e;
            }
            chosen.push((mu.clone(), k));
            rec(pos + 1, left, candidates, chosen, m, out);
            chosen.pop();
            for (l, e) in left.iter_mut().zip(mu.exponents()) {
                *l += k * e;
            }
        }
        rec(pos + 1, left, candidates, chosen, m, out);
    }

    let mut left = a.entries().to_vec();
    rec(0, &mut left, &candidates, &mut chosen, m, &mut out);
    out.sort();
    out
}

/// The basis `{e_alpha : |alpha| <= n, deg = a}` of `A_R(n,m,a)^{S_n}`.
pub fn basis_indices(n: u32, a: &Multidegree) -> Vec<AlphaIndex> {
    alpha_indices(a)
        .into_iter()
        .filter(|idx| idx.weight() <= n)
        .collect()
}

impl Algebra for MsfElement {
    fn ring(&self) -> Ring {
        self.ring
    }
    fn zero_like(&self) -> Self {
        MsfElement::zero(self.ambient, self.m, self.ring)
    }
    fn one_like(&self) -> Self {
        MsfElement::one(self.ambient, self.m, self.ring)
    }
    fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (idx, c) in &other.terms {
            accumulate(&self.ring, &mut terms, idx.clone(), c.clone());
        }
        MsfElement {
            terms,
            ..self.zero_like()
        }
    }
    fn mul(&self, other: &Self) -> Self {
        self.product_unchecked(other)
    }
    fn scale(&self, c: &Coeff) -> Self {
        MsfElement {
            terms: self
                .terms
                .iter()
                .filter_map(|(i, x)| {
                    let y = self.ring.mul(x, c);
                    (!y.is_zero()).then(|| (i.clone(), y))
                })
                .collect(),
            ..self.zero_like()
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for MsfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().rev().map(|(idx, c)| {
            let body = if idx.is_empty() {
                String::new()
            } else {
                idx.to_string()
            };
            (body, c)
        });
        write_terms(f, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn fin(n: u32) -> Ambient {
        Ambient::Finite(n)
    }

    #[test]
    fn constructors() {
        let z = Ring::Z;
        let e1 = MsfElement::e_alpha(vec![(mono(&[1]), 1)], 1, fin(2), z).unwrap();
        assert_eq!(e1.len(), 1);
        assert!(matches!(
            MsfElement::e_alpha(vec![(mono(&[1]), 3)], 1, fin(2), z),
            Err(Error::WeightExceedsAmbient { weight: 3, n: 2 })
        ));
        assert!(
            MsfElement::e_alpha_truncating(vec![(mono(&[1]), 3)], 1, fin(2), z)
                .unwrap()
                .is_zero()
        );
        let x = MsfElement::e_alpha(vec![(mono(&[1, 1]), 1), (mono(&[1, 0]), 1)], 2, fin(3), z)
            .unwrap();
        let idx = x.terms().keys().next().unwrap();
        assert_eq!(idx.weight(), 2);
        assert_eq!(idx.multidegree(), &Multidegree::new(vec![2, 1]));
        assert_eq!(idx.support()[0].0, mono(&[1, 0]));
        assert!(AlphaIndex::new(1, [(mono(&[1]), 1), (mono(&[1]), 2)]).is_err());
        assert!(AlphaIndex::new(1, [(mono(&[0]), 1)]).is_err());
        assert!(AlphaIndex::new(1, [(mono(&[2]), 0)]).is_err());
    }

    #[test]
    fn merging_repeated_arguments() {
        let z = Ring::Z;
        let y = mono(&[1]);
        let (idx, s) = merge_repeats(1, &[(y.clone(), 1), (y.clone(), 1)], &z).unwrap();
        assert_eq!(idx, AlphaIndex::single(y.clone(), 2).unwrap());
        assert_eq!(s, z.embed(2));
        let (idx, s) = merge_repeats(2, &[(mono(&[1, 0]), 2), (mono(&[0, 1]), 1)], &z).unwrap();
        assert_eq!(idx.weight(), 3);
        assert_eq!(s, z.one());
        let f2 = Ring::prime_field(2).unwrap();
        let (_, s) = merge_repeats(1, &[(y.clone(), 1), (y.clone(), 1)], &f2).unwrap();
        assert!(s.is_zero());
        // (3+2+1)!/(3!2!1!) = 60
        let (_, s) = merge_repeats(1, &[(y.clone(), 3), (y.clone(), 2), (y, 1)], &z).unwrap();
        assert_eq!(s, z.embed(60));
    }

    #[test]
    fn margin_tables_respect_margins() {
        let tables = MarginTable::enumerate(&[2, 1], &[1, 2], None);
        assert!(!tables.is_empty());
        for t in &tables {
            assert_eq!(t.row_sum(1), 2);
            assert_eq!(t.row_sum(2), 1);
            assert_eq!(t.col_sum(1), 1);
            assert_eq!(t.col_sum(2), 2);
            assert_eq!(t.get(0, 0), 0);
        }
        // matched blocks [[a,b],[c,d]] with a+b<=2, c+d<=1, a+c<=1, b+d<=2
        let brute = (0..=1u32)
            .flat_map(|a| {
                (0..=2u32).flat_map(move |b| {
                    (0..=1u32).flat_map(move |c| (0..=1u32).map(move |d| (a, b, c, d)))
                })
            })
            .filter(|&(a, b, c, d)| a + b <= 2 && c + d <= 1 && a + c <= 1 && b + d <= 2)
            .count();
        assert_eq!(tables.len(), brute);
        let capped = MarginTable::enumerate(&[2, 1], &[1, 2], Some(4));
        assert!(capped.iter().all(|t| t.weight() <= 4));
        assert_eq!(
            capped.len(),
            tables.iter().filter(|t| t.weight() <= 4).count()
        );
    }

    #[test]
    fn identity_product() {
        let x = MsfElement::e_alpha(vec![(mono(&[1, 2]), 2)], 2, fin(3), Ring::Z).unwrap();
        let one = x.one_like();
        assert_eq!(x.product(&one).unwrap(), x);
        assert_eq!(one.product(&x).unwrap(), x);
    }

    #[test]
    fn square_of_e1_in_two_slots() {
        // (x(1) + x(2))^2 = x(1)^2 + x(2)^2 + 2 x(1)x(2)
        let e1 = MsfElement::e_k(mono(&[1]), 1, fin(2), Ring::Z).unwrap();
        let sq = e1.product(&e1).unwrap();
        let expected = MsfElement::e_k(mono(&[1]), 2, fin(2), Ring::Z)
            .unwrap()
            .scale(&Ring::Z.embed(2))
            .add(&MsfElement::e_k(mono(&[2]), 1, fin(2), Ring::Z).unwrap());
        assert_eq!(sq, expected);
        assert_eq!(
            sq.expand().unwrap(),
            NPoly::parse("x1(1)^2 + x1(2)^2 + 2*x1(1)*x1(2)", Ring::Z, 2, 1).unwrap()
        );
    }

    #[test]
    fn ambient_mismatch_rejected() {
        let a = MsfElement::one(fin(2), 1, Ring::Z);
        let b = MsfElement::one(fin(3), 1, Ring::Z);
        assert!(matches!(a.product(&b), Err(Error::AmbientMismatch(_, _))));
        let c = MsfElement::one(fin(2), 1, Ring::Q);
        assert!(matches!(a.product(&c), Err(Error::RingMismatch(_, _))));
        let d = MsfElement::one(fin(2), 2, Ring::Z);
        assert!(matches!(a.product(&d), Err(Error::ArityMismatch(1, 2))));
        assert!(MsfElement::one(Ambient::Infinite, 1, Ring::Z)
            .expand()
            .is_err());
    }

    #[test]
    fn truncation() {
        let z = Ring::Z;
        let big = MsfElement::e_alpha(
            vec![(mono(&[1, 0]), 1), (mono(&[0, 1]), 1), (mono(&[1, 1]), 1)],
            2,
            Ambient::Infinite,
            z,
        )
        .unwrap();
        assert!(big.truncate(2).unwrap().is_zero());
        let two = MsfElement::e_alpha(vec![(mono(&[1, 0]), 2)], 2, fin(3), z).unwrap();
        let t = two.truncate(2).unwrap();
        assert_eq!(t.terms(), two.terms());
        assert_eq!(t.ambient(), fin(2));
        assert_eq!(two.truncate(3).unwrap(), two);
        assert!(two.truncate(4).is_err());
    }

    #[test]
    fn ek_of_f_expansion() {
        let z = Ring::Z;
        let mu = mono(&[1, 2]);
        let f = MPoly::monomial(z, mu.clone(), z.one());
        assert_eq!(
            ek_of_f(&f, 3, fin(4)).unwrap(),
            MsfElement::e_k(mu, 3, fin(4), z).unwrap()
        );
        let a = MPoly::var(z, 2, 1);
        let b = MPoly::var(z, 2, 2);
        let e2 = ek_of_f(&a.add(&b), 2, fin(2)).unwrap();
        let expected = [
            vec![(mono(&[1, 0]), 2)],
            vec![(mono(&[1, 0]), 1), (mono(&[0, 1]), 1)],
            vec![(mono(&[0, 1]), 2)],
        ]
        .into_iter()
        .fold(MsfElement::zero(fin(2), 2, z), |acc, s| {
            acc.add(&MsfElement::e_alpha(s, 2, fin(2), z).unwrap())
        });
        assert_eq!(e2, expected);
        assert_eq!(
            ek_of_f(&a, 0, fin(2)).unwrap(),
            MsfElement::one(fin(2), 2, z)
        );
        assert!(ek_of_f(&a, 3, fin(2)).unwrap().is_zero());
        assert_eq!(
            ek_of_f(&a.add(&MPoly::one(z, 2)), 1, fin(2)),
            Err(Error::NonZeroConstantTerm)
        );
    }

    #[test]
    fn alpha_enumeration_small_cases() {
        // multidegree (2): {y:2}, {y^2:1}
        assert_eq!(alpha_indices(&Multidegree::new(vec![2])).len(), 2);
        // multidegree (1,1): {y1:1,y2:1}, {y1y2:1}
        assert_eq!(alpha_indices(&Multidegree::new(vec![1, 1])).len(), 2);
        // multidegree (4): partitions of 4
        assert_eq!(alpha_indices(&Multidegree::new(vec![4])).len(), 5);
        // bipartite partitions of (2,2): 9
        assert_eq!(alpha_indices(&Multidegree::new(vec![2, 2])).len(), 9);
        assert_eq!(
            alpha_indices(&Multidegree::new(vec![0, 0])),
            vec![AlphaIndex::empty(2)]
        );
        for idx in alpha_indices(&Multidegree::new(vec![3, 2])) {
            assert_eq!(idx.multidegree(), &Multidegree::new(vec![3, 2]));
        }
    }

    fn alpha_strategy(m: usize, max_total: u32) -> impl Strategy<Value = AlphaIndex> {
        let all: Vec<AlphaIndex> = Multidegree::up_to_total(m, max_total)
            .iter()
            .flat_map(alpha_indices)
            .collect();
        prop::sample::select(all)
    }

    fn element(m: usize, ambient: Ambient, ring: Ring) -> impl Strategy<Value = MsfElement> {
        prop::collection::vec((alpha_strategy(m, 3), -3i64..4), 0..4).prop_map(move |terms| {
            let terms = terms
                .into_iter()
                .filter(|(a, _)| ambient.admits(a.weight()))
                .map(|(a, c)| (a, Coeff::from_integer(c.into())));
            MsfElement::from_terms(ambient, m, ring, terms).unwrap()
        })
    }

    fn ring_strategy() -> impl Strategy<Value = Ring> {
        prop_oneof![Just(Ring::Z), Just(Ring::prime_field(2).unwrap())]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn product_expands_to_polynomial_product(
            (x, y) in (1u32..=3, 1usize..=2, ring_strategy()).prop_flat_map(|(n, m, r)| {
                (element(m, fin(n), r), element(m, fin(n), r))
            })
        ) {
            let lhs = x.product(&y).unwrap().expand().unwrap();
            let rhs = x.expand().unwrap().mul(&y.expand().unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn product_is_commutative_and_associative(
            (x, y, w) in (1u32..=3, 1usize..=2).prop_flat_map(|(n, m)| {
                (element(m, fin(n), Ring::Z), element(m, fin(n), Ring::Z), element(m, fin(n), Ring::Z))
            })
        ) {
            prop_assert_eq!(x.product(&y).unwrap(), y.product(&x).unwrap());
            let l = x.product(&y).unwrap().product(&w).unwrap();
            let r = x.product(&y.product(&w).unwrap()).unwrap();
            prop_assert_eq!(l.expand().unwrap(), r.expand().unwrap());
            prop_assert_eq!(l, r);
        }

        #[test]
        fn projection_is_a_ring_map(
            (x, y, n) in (1usize..=2).prop_flat_map(|m| {
                (element(m, Ambient::Infinite, Ring::Z), element(m, Ambient::Infinite, Ring::Z), 1u32..=3)
            })
        ) {
            let lhs = x.product(&y).unwrap().truncate(n).unwrap();
            let rhs = x.truncate(n).unwrap().product(&y.truncate(n).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn truncation_matches_slot_killing(x in element(2, fin(3), Ring::Z)) {
            let killed = x.expand().unwrap().kill_last_slot().unwrap();
            prop_assert_eq!(x.truncate(2).unwrap().expand().unwrap(), killed);
        }

        #[test]
        fn products_of_homogeneous_elements_are_homogeneous(
            a in alpha_strategy(2, 3), b in alpha_strategy(2, 3)
        ) {
            let amb = Ambient::Infinite;
            let x = MsfElement::basis(a.clone(), amb, Ring::Z).unwrap();
            let y = MsfElement::basis(b.clone(), amb, Ring::Z).unwrap();
            let target = a.multidegree().checked_add(b.multidegree()).unwrap();
            for idx in x.product(&y).unwrap().terms().keys() {
                prop_assert_eq!(idx.multidegree(), &target);
            }
        }
    }
}
