//! Brute-force invariants of `A_R(n,m)` straight from the group action.
//!
//! Nothing here goes through the orbit-sum basis or the rewriting code, so it
//! can serve as an independent reference for both.

use std::collections::BTreeSet;

use crate::coeffring::Ring;
use crate::monomial::{Monomial, Multidegree};
use crate::polyring::{permute_slots, NPoly, Perm};

/// Sum of the distinct images of the flattened monomial `mu` under `S_n`.
pub fn orbit_sum(mu: &Monomial, n: usize, m: usize, ring: Ring) -> NPoly {
    let images: BTreeSet<Monomial> = Perm::all(n)
        .iter()
        .map(|sigma| permute_slots(mu, sigma, m))
        .collect();
    NPoly::from_terms(ring, n, m, images.into_iter().map(|t| (t, ring.one())))
        .expect("images keep the arity")
}

/// The smallest image of `mu` under `S_n`.
pub fn canonical_representative(mu: &Monomial, n: usize, m: usize) -> Monomial {
    Perm::all(n)
        .iter()
        .map(|sigma| permute_slots(mu, sigma, m))
        .min()
        .expect("S_n is nonempty")
}

/// Every flattened monomial of `A(n,m)` with multidegree `a`.
pub fn monomials_of_multidegree(n: usize, a: &Multidegree) -> Vec<Monomial> {
    let m = a.m();
    let mut out = vec![vec![0u32; n * m]];
    for (i, &ai) in a.entries().iter().enumerate() {
        let mut next = Vec::new();
        for base in &out {
            for comp in compositions(ai, n) {
                let mut e = base.clone();
                for (j, c) in comp.into_iter().enumerate() {
                    e[j * m + i] = c;
                }
                next.push(e);
            }
        }
        out = next;
    }
    out.into_iter().map(Monomial::new).collect()
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// One orbit sum per `S_n`-orbit of monomials of multidegree `a`, ordered by
/// canonical representative.
pub fn invariant_basis(n: usize, a: &Multidegree, ring: Ring) -> Vec<NPoly> {
    let m = a.m();
    let orbits: BTreeSet<Monomial> = monomials_of_multidegree(n, a)
        .iter()
        .map(|mu| canonical_representative(mu, n, m))
        .collect();
    orbits
        .into_iter()
        .map(|rep| orbit_sum(&rep, n, m, ring))
        .collect()
}

/// Invariance under the adjacent transpositions, which generate `S_n`.
pub fn is_invariant(p: &NPoly) -> bool {
    (1..p.n()).all(|j| {
        let swap = Perm::transposition(p.n(), j, j + 1).expect("in range");
        &p.sn_act(&swap).expect("matching n") == p
    })
}

/// Invariance checked against every element of `S_n`.
pub fn is_invariant_exhaustive(p: &NPoly) -> bool {
    Perm::all(p.n())
        .iter()
        .all(|sigma| &p.sn_act(sigma).expect("matching n") == p)
}
