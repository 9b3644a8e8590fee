//! Differential test suites shared by the `verify` command and the test targets.
//!
//! Each suite compares an abstract computation with an independent concrete
//! one and reports how many cases it looked at.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::coeffring::{Coeff, Ring, RingKind};
use crate::linalg::{rank, spans_lattice};
use crate::monomial::{Monomial, Multidegree};
use crate::msf::{alpha_indices, basis_indices, ek_of_f, AlphaIndex, Ambient, MsfElement};
use crate::oracle::{invariant_basis, is_invariant, monomials_of_multidegree};
use crate::polyring::{MPoly, NPoly};
use crate::relations::{coverage_rank, kernel_basis, relations_in};
use crate::rewrite::{generator_monomial_count, Rewriter};
use crate::symfun::plethysm_p;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub property: String,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

impl Outcome {
    fn new(property: impl Into<String>) -> Self {
        Outcome {
            property: property.into(),
            passed: true,
            cases: 0,
            detail: String::new(),
        }
    }

    fn fail(&mut self, why: String) {
        if self.passed {
            self.detail = why;
        }
        self.passed = false;
    }

    fn check(&mut self, ok: bool, why: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(why());
        }
    }
}

fn positive_multidegrees(m: usize, max_total: u32) -> Vec<Multidegree> {
    Multidegree::up_to_total(m, max_total)
        .into_iter()
        .filter(|a| !a.is_zero())
        .collect()
}

/// `expand(x * y) = expand(x) expand(y)` for basis elements of positive
/// degree with `deg x + deg y <= max_total`.
pub fn homomorphism(n: u32, m: usize, max_total: u32, ring: Ring) -> Outcome {
    let mut out = Outcome::new("homomorphism");
    let ambient = Ambient::Finite(n);
    let elements: Vec<(u32, MsfElement, NPoly)> = positive_multidegrees(m, max_total)
        .iter()
        .flat_map(|a| basis_indices(n, a))
        .map(|idx| {
            let d = idx.total_degree();
            let x = MsfElement::basis(idx, ambient, ring).expect("weight within ambient");
            let e = x.expand().expect("finite ambient");
            (d, x, e)
        })
        .collect();
    for (i, (dx, x, ex)) in elements.iter().enumerate() {
        for (dy, y, ey) in &elements[i..] {
            if dx + dy > max_total {
                continue;
            }
            let lhs = x.product(y).and_then(|p| p.expand());
            let rhs = ex.checked_mul(ey);
            out.check(matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b), || {
                format!("n={n} {x} * {y}")
            });
        }
    }
    out
}

/// For each multidegree: the basis count matches the oracle's orbit count,
/// the expansions are exactly the oracle's orbit sums and are invariant, and
/// the expansion matrix has full rank over the field of `ring` (`Q` for `Z`).
pub fn basis_rank(n: u32, m: usize, max_total: u32, ring: Ring) -> Outcome {
    let mut out = Outcome::new("basis_rank");
    let ambient = Ambient::Finite(n);
    for a in Multidegree::up_to_total(m, max_total) {
        let indices = basis_indices(n, &a);
        let orbits = invariant_basis(n as usize, &a, ring);
        out.check(indices.len() == orbits.len(), || {
            format!(
                "n={n} a={a}: {} indices, {} orbits",
                indices.len(),
                orbits.len()
            )
        });
        let expansions: Vec<NPoly> = indices
            .iter()
            .map(|idx| {
                MsfElement::basis(idx.clone(), ambient, ring)
                    .and_then(|x| x.expand())
                    .expect("weight within ambient")
            })
            .collect();
        out.check(expansions.iter().all(is_invariant), || {
            format!("n={n} a={a}: non-invariant expansion")
        });
        let lhs: BTreeSet<String> = expansions.iter().map(NPoly::to_string).collect();
        let rhs: BTreeSet<String> = orbits.iter().map(NPoly::to_string).collect();
        out.check(lhs == rhs, || {
            format!("n={n} a={a}: expansions differ from orbit sums")
        });
        let coords = monomials_of_multidegree(n as usize, &a);
        let rows: Vec<Vec<Coeff>> = expansions
            .iter()
            .map(|p| {
                coords
                    .iter()
                    .map(|mu| p.terms().get(mu).cloned().unwrap_or_else(|| ring.zero()))
                    .collect()
            })
            .collect();
        let r = rank(&rows, &ring);
        out.check(r == indices.len(), || {
            format!("n={n} a={a}: rank {r} of {}", indices.len())
        });
    }
    out
}

/// `evaluate(rewrite(e_alpha), n) = e_alpha` for every basis element, and the
/// same after multiplying out the concrete generators.
pub fn round_trip(n: u32, m: usize, max_total: u32, ring: Ring) -> Outcome {
    let mut out = Outcome::new("round_trip");
    let ambient = Ambient::Finite(n);
    let mut r = Rewriter::new(ambient, m, ring);
    for a in Multidegree::up_to_total(m, max_total) {
        for idx in basis_indices(n, &a) {
            let x = MsfElement::basis(idx, ambient, ring).expect("weight within ambient");
            let ok = match r.rewrite(&x) {
                Ok(g) => {
                    g.evaluate(ambient) == x
                        && x.expand().is_ok_and(|e| e == g.evaluate_expanded(n))
                        && g.multidegrees().iter().all(|d| d == &a)
                }
                Err(_) => false,
            };
            out.check(ok, || format!("n={n} {x}"));
        }
    }
    out
}

/// Every relation vanishes at `n`, in the basis and fully expanded, and is
/// nonzero as a generator polynomial.
pub fn relation_vanishing(n: u32, m: usize, max_total: u32, ring: Ring) -> Outcome {
    let mut out = Outcome::new("relation_vanishing");
    for a in Multidegree::up_to_total(m, max_total) {
        match relations_in(n, &a, ring) {
            Ok(rels) => {
                for rel in rels {
                    out.check(!rel.poly.is_empty() && rel.vanishes_at(n), || {
                        format!("n={n} alpha={}", rel.alpha)
                    });
                }
            }
            Err(e) => out.fail(format!("n={n} a={a}: {e}")),
        }
    }
    out
}

/// Over `Q`, the coefficients of `e_{n+k}(f)` for generic `f` span the
/// kernel in each multidegree.
pub fn relation_coverage(n: u32, m: usize, max_total: u32, seed: u64) -> Outcome {
    let mut out = Outcome::new("relation_coverage");
    for a in Multidegree::up_to_total(m, max_total) {
        let size = kernel_basis(n, &a).len();
        let (r, expected) = coverage_rank(n, &a, size + 1, seed);
        out.check(r == expected, || {
            format!("n={n} a={a}: rank {r}, kernel {expected}")
        });
    }
    out
}

/// Monomials in the free generators versus indices `alpha`, per multidegree.
pub fn freeness(m: usize, max_total: u32) -> Outcome {
    let mut out = Outcome::new("freeness");
    for a in Multidegree::up_to_total(m, max_total) {
        let lhs = generator_monomial_count(&a);
        let rhs = alpha_indices(&a).len() as u64;
        out.check(lhs == rhs, || {
            format!("a={a}: {lhs} generator monomials, {rhs} indices")
        });
    }
    out
}

/// `expand(e_h(f^k)) = P_{h,k}(expand(e_1(f)), expand(e_2(f)), ...)` at
/// `n = hk`, for pseudo-random `f` over `Z` with at most three monomials.
pub fn plethysm_consistency(m: usize, per_pair: usize, seed: u64) -> Outcome {
    let mut out = Outcome::new("plethysm_consistency");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = Monomial::positive_up_to(m, 2);
    for h in 1..=6usize {
        for k in 1..=6usize {
            if h * k > 6 {
                continue;
            }
            let n = (h * k) as u32;
            let p = match plethysm_p(h, k) {
                Ok(p) => p,
                Err(e) => {
                    out.fail(format!("P_{h},{k}: {e}"));
                    continue;
                }
            };
            for _ in 0..per_pair {
                let count = rng.gen_range(1..=3);
                let mut f = MPoly::zero(Ring::Z, m);
                for _ in 0..count {
                    let mu = pool[rng.gen_range(0..pool.len())].clone();
                    let c = loop {
                        let c: i64 = rng.gen_range(-3..=3);
                        if c != 0 {
                            break c;
                        }
                    };
                    f = f.add(&MPoly::monomial(
                        Ring::Z,
                        mu,
                        Coeff::from_integer(BigInt::from(c)),
                    ));
                }
                if f.is_zero() {
                    continue;
                }
                let ambient = Ambient::Finite(n);
                let lhs = ek_of_f(&f.pow(k as u32), h as u32, ambient).and_then(|x| x.expand());
                let one = NPoly::one(Ring::Z, n as usize, m);
                let rhs = p.substitute(&one, |j| {
                    ek_of_f(&f, j as u32, ambient)
                        .and_then(|x| x.expand())
                        .expect("f has no constant term")
                });
                out.check(lhs.as_ref().is_ok_and(|l| *l == rhs), || {
                    format!("h={h} k={k} f={f}")
                });
            }
        }
    }
    out
}

/// Result of the generation spot check at one `(n, m, ring)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenerationReport {
    pub outcome: Outcome,
    /// Components of total degree at most `check_up_to` not spanned.
    pub unspanned: Vec<Multidegree>,
    /// Some component of degree at most the generator bound is not reached
    /// by the generators of strictly smaller degree.
    pub sharpness_observed: bool,
}

fn generators(n: u32, m: usize, max_degree: u32) -> Vec<(u32, Monomial)> {
    let mut out = Vec::new();
    for nu in Monomial::positive_up_to(m, max_degree) {
        if !nu.is_primitive() {
            continue;
        }
        for i in 1..=n {
            if i * nu.total_degree() <= max_degree {
                out.push((i, nu.clone()));
            }
        }
    }
    out
}

/// Whether the products of `gens` of multidegree `a` span `A_R(n,m,a)^{S_n}`.
fn spans_component(n: u32, a: &Multidegree, gens: &[(u32, Monomial)], ring: Ring) -> (bool, usize) {
    let ambient = Ambient::Finite(n);
    let m = a.m();
    let basis: Vec<AlphaIndex> = basis_indices(n, a);
    let dim = invariant_basis(n as usize, a, ring).len();
    let values: Vec<(Multidegree, MsfElement)> = gens
        .iter()
        .map(|(i, nu)| {
            let mut d = Multidegree::zero(m);
            d.add_scaled(nu.exponents(), *i);
            let x = MsfElement::e_k(nu.clone(), *i, ambient, ring).expect("positive degree");
            (d, x)
        })
        .collect();
    let mut products = Vec::new();
    fn rec(
        pos: usize,
        left: &Multidegree,
        acc: MsfElement,
        values: &[(Multidegree, MsfElement)],
        products: &mut Vec<MsfElement>,
    ) {
        if left.is_zero() {
            products.push(acc);
            return;
        }
        if pos == values.len() {
            return;
        }
        let (d, x) = &values[pos];
        if d.divides(left) {
            let rest = Multidegree::new(
                left.entries()
                    .iter()
                    .zip(d.entries())
                    .map(|(l, e)| l - e)
                    .collect(),
            );
            rec(pos, &rest, acc.mul(x), values, products);
        }
        rec(pos + 1, left, acc, values, products);
    }
    rec(
        0,
        a,
        MsfElement::one(ambient, m, ring),
        &values,
        &mut products,
    );
    let count = products.len();
    let ok = match ring.kind() {
        RingKind::Integers => {
            let rows: Vec<Vec<BigInt>> = products
                .iter()
                .map(|p| {
                    basis
                        .iter()
                        .map(|idx| p.coeff(idx).numer().clone())
                        .collect()
                })
                .collect();
            basis.len() == dim && spans_lattice(&rows, dim)
        }
        _ => {
            let rows: Vec<Vec<Coeff>> = products
                .iter()
                .map(|p| basis.iter().map(|idx| p.coeff(idx)).collect())
                .collect();
            basis.len() == dim && rank(&rows, &ring) == dim
        }
    };
    (ok, count)
}

/// The `e_i(nu)`, `nu` primitive, of total degree at most `bound` generate
/// every component of total degree at most `check_up_to`.
pub fn generation_with_bound(
    n: u32,
    m: usize,
    ring: Ring,
    bound: u32,
    check_up_to: u32,
) -> GenerationReport {
    let mut out = Outcome::new(format!("generation n={n} m={m} {ring} bound={bound}"));
    let gens = generators(n, m, bound);
    let mut unspanned = Vec::new();
    for a in Multidegree::up_to_total(m, check_up_to) {
        let (ok, _) = spans_component(n, &a, &gens, ring);
        if !ok {
            unspanned.push(a.clone());
        }
        out.check(ok, || format!("a={a} not spanned"));
    }
    if !unspanned.is_empty() {
        let list: Vec<String> = unspanned.iter().map(Multidegree::to_string).collect();
        out.detail = format!("not spanned: {}", list.join(" "));
    }
    let smaller = generators(n, m, bound.saturating_sub(1));
    let sharpness_observed = Multidegree::up_to_total(m, bound)
        .iter()
        .any(|a| !spans_component(n, a, &smaller, ring).0);
    GenerationReport {
        outcome: out,
        unspanned,
        sharpness_observed,
    }
}

/// Generation by degree `n(m-1)`, checked through degree `n(m-1) + 2`.
pub fn generation(n: u32, m: usize, ring: Ring) -> GenerationReport {
    let bound = n * (m as u32 - 1);
    generation_with_bound(n, m, ring, bound, bound + 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_at_small_scale() {
        let f2 = Ring::prime_field(2).unwrap();
        for ring in [Ring::Z, f2] {
            for o in [
                homomorphism(2, 2, 3, ring),
                basis_rank(2, 2, 3, ring),
                round_trip(2, 2, 3, ring),
                relation_vanishing(1, 2, 3, ring),
            ] {
                assert!(o.passed, "{o:?}");
                assert!(o.cases > 0);
            }
        }
        assert!(relation_coverage(1, 2, 3, 11).passed);
        assert!(freeness(2, 4).passed);
    }

    #[test]
    fn generation_small() {
        let r = generation(2, 2, Ring::Z);
        assert!(r.outcome.passed, "{:?}", r.outcome);
        let r = generation(2, 2, Ring::prime_field(2).unwrap());
        assert!(r.outcome.passed, "{:?}", r.outcome);
        assert!(r.sharpness_observed);
    }

    #[test]
    fn too_few_generators_fail() {
        // without e_2(y) nothing reaches e_2(y) in degree 2
        let gens = vec![(1, Monomial::new(vec![1]))];
        let (ok, count) = spans_component(2, &Multidegree::new(vec![2]), &gens, Ring::Z);
        assert!(!ok);
        assert_eq!(count, 1);
        // e_1(y)^2 = 2 e_2(y) + e_1(y^2): over Q it is reached with e_1(y^2)
        let q = vec![(1, Monomial::new(vec![1])), (1, Monomial::new(vec![2]))];
        assert!(spans_component(2, &Multidegree::new(vec![2]), &q, Ring::Q).0);
        assert!(
            !spans_component(
                2,
                &Multidegree::new(vec![2]),
                &q,
                Ring::prime_field(2).unwrap()
            )
            .0
        );
    }

    #[test]
    fn plethysm_small() {
        let o = plethysm_consistency(2, 1, 3);
        assert!(o.passed, "{o:?}");
    }
}
