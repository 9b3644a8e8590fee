//! Dense exact linear algebra for rank certificates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::coeffring::{Coeff, Ring, RingKind};

/// Rank of the row space over the fraction field of `ring` (`Q` for `Z`).
pub fn rank(rows: &[Vec<Coeff>], ring: &Ring) -> usize {
    let field = match ring.kind() {
        RingKind::Integers => Ring::Q,
        _ => *ring,
    };
    let mut a: Vec<Vec<Coeff>> = rows
        .iter()
        .map(|r| r.iter().map(|c| field.add(&field.zero(), c)).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = field.inv(&a[r][c]).expect("nonzero element of a field");
        let pivot: Vec<Coeff> = a[r].iter().map(|x| field.mul(x, &inv)).collect();
        for row in a.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot).skip(c) {
                *x = field.sub(x, &field.mul(&f, p));
            }
        }
        a[r] = pivot;
        r += 1;
    }
    r
}

/// Whether the integer rows generate all of `Z^dim`.
///
/// Euclidean row reduction to echelon form; the rows span `Z^dim` exactly when
/// every column gets a pivot and every pivot is a unit.
pub fn spans_lattice(rows: &[Vec<BigInt>], dim: usize) -> bool {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    if a.iter().any(|r| r.len() != dim) {
        return false;
    }
    let mut r = 0;
    for c in 0..dim {
        loop {
            let smallest = (r..a.len())
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(p) = smallest else {
                return false;
            };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let (pivot, row) = if r < i {
                    let (lo, hi) = a.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                } else {
                    let (lo, hi) = a.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                };
                for (x, y) in row[c..dim].iter_mut().zip(&pivot[c..dim]) {
                    *x -= &q * y;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !a[r][c].abs().is_one() {
            return false;
        }
        r += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Coeff>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Coeff::from_integer(x.into())).collect())
            .collect()
    }

    fn z(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| x.into()).collect())
            .collect()
    }

    #[test]
    fn ranks() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&m, &Ring::Q), 2);
        assert_eq!(rank(&m, &Ring::Z), 2);
        let m2 = q(&[&[1, 1], &[1, -1]]);
        assert_eq!(rank(&m2, &Ring::Q), 2);
        assert_eq!(rank(&m2, &Ring::prime_field(2).unwrap()), 1);
        assert_eq!(rank(&[], &Ring::Q), 0);
    }

    #[test]
    fn lattices() {
        assert!(spans_lattice(&z(&[&[2, 0], &[3, 1], &[0, 1]]), 2));
        assert!(!spans_lattice(&z(&[&[1, 1], &[1, -1]]), 2));
        assert!(spans_lattice(&z(&[&[2], &[3]]), 1));
        assert!(!spans_lattice(&z(&[&[2], &[4]]), 1));
        assert!(!spans_lattice(&z(&[&[1, 0]]), 2));
        assert!(spans_lattice(&[], 0));
    }
}
