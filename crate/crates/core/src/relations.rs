//! Relations among the generators: the kernel of `A(inf,m) -> A(n,m)^{S_n}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::coeffring::{Coeff, Ring, RingKind};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::monomial::{Monomial, Multidegree};
use crate::msf::{alpha_indices, ek_of_f, AlphaIndex, Ambient, MsfElement};
use crate::polyring::MPoly;
use crate::rewrite::{GenPoly, Rewriter, Symbol, SymbolPoly};
use crate::symfun::e_in_power_sums;

/// Every `alpha` of multidegree `a` with `|alpha| > n`.
pub fn kernel_basis(n: u32, a: &Multidegree) -> Vec<AlphaIndex> {
    alpha_indices(a)
        .into_iter()
        .filter(|idx| idx.weight() > n)
        .collect()
}

/// One relation: `e_alpha`, rewritten in the limit ring, vanishes at `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub alpha: AlphaIndex,
    pub poly: GenPoly,
}

impl Relation {
    /// Vanishing at ambient `n`, both in the orbit-sum basis and after
    /// multiplying out the concrete polynomials.
    pub fn vanishes_at(&self, n: u32) -> bool {
        self.poly.evaluate(Ambient::Finite(n)).is_zero() && self.poly.evaluate_expanded(n).is_zero()
    }
}

/// Relations of multidegree exactly `a`.
pub fn relations_in(n: u32, a: &Multidegree, ring: Ring) -> Result<Vec<Relation>> {
    let mut r = Rewriter::new(Ambient::Infinite, a.m(), ring);
    kernel_basis(n, a)
        .into_iter()
        .map(|alpha| {
            let x = MsfElement::basis(alpha.clone(), Ambient::Infinite, ring)?;
            Ok(Relation {
                poly: r.rewrite(&x)?,
                alpha,
            })
        })
        .collect()
}

/// Relations for every multidegree componentwise below `bound`, ordered by
/// multidegree and then index.
pub fn relation_polys(n: u32, bound: &Multidegree, ring: Ring) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    for a in bound.all_below() {
        out.extend(relations_in(n, &a, ring)?);
    }
    Ok(out)
}

/// Summary line for one multidegree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Manifest {
    pub n: u32,
    pub m: usize,
    pub multidegree: Multidegree,
    pub count: usize,
    pub verified: bool,
}

/// Per-multidegree manifests for `relation_polys(n, bound, ring)`.
pub fn manifests(n: u32, relations: &[Relation]) -> Vec<Manifest> {
    let mut by_degree: BTreeMap<Multidegree, (usize, bool)> = BTreeMap::new();
    for rel in relations {
        let slot = by_degree
            .entry(rel.alpha.multidegree().clone())
            .or_insert((0, true));
        slot.0 += 1;
        slot.1 &= rel.vanishes_at(n);
    }
    by_degree
        .into_iter()
        .map(|(a, (count, verified))| Manifest {
            n,
            m: a.m(),
            multidegree: a,
            count,
            verified,
        })
        .collect()
}

/// Re-expresses every `e_{k,nu}` through power sums, `p_j(nu) = e_1(nu^j)`.
///
/// Only meaningful over `Q`.
pub fn to_e1_alphabet(g: &SymbolPoly) -> Result<SymbolPoly> {
    if g.ring().kind() != RingKind::Rationals {
        return Err(Error::RingMismatch("Q".into(), g.ring().to_string()));
    }
    let one = SymbolPoly::one(Ring::Q, g.m());
    Ok(g.substitute(&one, |s| {
        let mut acc = one.zero_like();
        for (lambda, c) in e_in_power_sums(s.i) {
            let mut t = one.clone();
            for part in lambda {
                let p = SymbolPoly::symbol(
                    Ring::Q,
                    Symbol {
                        i: 1,
                        mu: s.mu.pow(part),
                    },
                );
                t = t.mul(&p);
            }
            acc = acc.add(&t.scale(&c));
        }
        acc
    }))
}

/// One generator `e_{n+1}(f)` of the relation ideal over `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealGenerator {
    pub f: MPoly,
    pub poly: SymbolPoly,
}

/// The `e_{n+1}(f)` with `f` a sum of distinct monomials `mu` with
/// `(n+1) deg(mu) <= degree_bound`, written in the symbols `e_1(mu)`.
///
/// Sums of more than `n+1` monomials are skipped: by inclusion-exclusion
/// their `e_{n+1}` is an integer combination of those of smaller sums.
pub fn char_zero_ideal_gens(
    n: u32,
    m: usize,
    degree_bound: u32,
    ring: Ring,
) -> Result<Vec<IdealGenerator>> {
    if ring.kind() != RingKind::Rationals {
        return Err(Error::RingMismatch("Q".into(), ring.to_string()));
    }
    let mut monos = Monomial::positive_up_to(m, degree_bound / (n + 1));
    monos.reverse();
    let mut rewriter = Rewriter::new(Ambient::Infinite, m, ring);
    let mut out = Vec::new();
    for subset in subsets_up_to(monos.len(), n as usize + 1) {
        let f = MPoly::from_terms(
            ring,
            m,
            subset.iter().map(|&i| (monos[i].clone(), ring.one())),
        )?;
        let x = ek_of_f(&f, n + 1, Ambient::Infinite)?;
        let g = rewriter.rewrite(&x)?;
        out.push(IdealGenerator {
            f,
            poly: to_e1_alphabet(&g)?,
        });
    }
    Ok(out)
}

fn subsets_up_to(len: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, len: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for i in start..len {
            cur.push(i);
            rec(i + 1, len, max, cur, out);
            cur.pop();
        }
    }
    rec(0, len, max, &mut cur, &mut out);
    out
}

/// The multidegree-`a` part of `e_k(f)` for `f = sum lambda_mu mu`, as
/// coefficients on `alpha_indices(a)`: `lambda^alpha` when `|alpha| = k`.
pub fn ek_component(lambda: &BTreeMap<Monomial, BigInt>, k: u32, a: &Multidegree) -> Vec<BigInt> {
    alpha_indices(a)
        .iter()
        .map(|idx| {
            if idx.weight() != k {
                return BigInt::zero();
            }
            idx.support()
                .iter()
                .map(|(mu, e)| lambda.get(mu).map_or(BigInt::zero(), |l| l.pow(*e)))
                .product()
        })
        .collect()
}

/// Rank over `Q` of the multidegree-`a` coefficients of `e_{n+k}(f)`,
/// `k = 1, ..., total(a) - n`, for `samples` pseudo-random `f` supported on
/// the monomials dividing `a`, next to the size of `kernel_basis(n, a)`.
pub fn coverage_rank(n: u32, a: &Multidegree, samples: usize, seed: u64) -> (usize, usize) {
    let expected = kernel_basis(n, a).len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let support: Vec<Monomial> = a
        .all_below()
        .into_iter()
        .filter(|b| !b.is_zero())
        .map(|b| Monomial::new(b.entries().to_vec()))
        .collect();
    let mut rows: Vec<Vec<Coeff>> = Vec::new();
    for _ in 0..samples {
        let lambda: BTreeMap<Monomial, BigInt> = support
            .iter()
            .map(|mu| (mu.clone(), BigInt::from(rng.gen_range(1..=1_000_000i64))))
            .collect();
        for k in n + 1..=a.total() {
            rows.push(
                ek_component(&lambda, k, a)
                    .into_iter()
                    .map(Coeff::from_integer)
                    .collect(),
            );
        }
    }
    (rank(&rows, &Ring::Q), expected)
}
