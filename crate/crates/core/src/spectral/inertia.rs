//! Exact inertia of integer symmetric matrices.
//!
//! Symmetric elimination over the rationals. A nonzero diagonal pivot is
//! eliminated by a congruence (its sign is counted); when the remaining
//! diagonal is all zero but some off-diagonal `a_ij` is not, adding row and
//! column `j` to row and column `i` makes the new diagonal entry `2 a_ij`.
//! Both steps are congruences, so Sylvester's law carries the inertia through.
//! Arithmetic starts in `Ratio<i128>` and restarts in `BigRational` on overflow.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};

/// `(positive, negative, zero)` counts for the symmetric integer matrix
/// `entries` (row-major, `n * n`).
pub fn exact_inertia(n: usize, entries: &[i64]) -> (usize, usize, usize) {
    assert_eq!(entries.len(), n * n);
    let small: Vec<Ratio<i128>> = entries.iter().map(|&x| Ratio::from_integer(x as i128)).collect();
    if let Some(counts) = eliminate(n, small) {
        return counts;
    }
    let big: Vec<Ratio<BigInt>> = entries.iter().map(|&x| Ratio::from_integer(BigInt::from(x))).collect();
    eliminate(n, big).expect("big rational arithmetic cannot overflow")
}

fn eliminate<T>(n: usize, mut a: Vec<T>) -> Option<(usize, usize, usize)>
where
    T: Clone + Zero + Signed + CheckedAdd + CheckedSub + CheckedMul + CheckedDiv,
{
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    while !active.is_empty() {
        if let Some(at) = active.iter().position(|&k| !a[k * n + k].is_zero()) {
            let k = active.remove(at);
            let pivot = a[k * n + k].clone();
            if pivot.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for &i in &active {
                if a[i * n + k].is_zero() {
                    continue;
                }
                let factor = a[i * n + k].checked_div(&pivot)?;
                for &j in &active {
                    if a[k * n + j].is_zero() {
                        continue;
                    }
                    let delta = factor.checked_mul(&a[k * n + j])?;
                    a[i * n + j] = a[i * n + j].checked_sub(&delta)?;
                }
            }
        } else if let Some((i, j)) = first_nonzero_pair(n, &a, &active) {
            for &t in &active {
                a[i * n + t] = a[i * n + t].checked_add(&a[j * n + t])?;
            }
            for &t in &active {
                a[t * n + i] = a[t * n + i].checked_add(&a[t * n + j])?;
            }
        } else {
            break;
        }
    }
    Some((pos, neg, active.len()))
}

fn first_nonzero_pair<T: Zero>(n: usize, a: &[T], active: &[usize]) -> Option<(usize, usize)> {
    for (x, &i) in active.iter().enumerate() {
        for &j in &active[x + 1..] {
            if !a[i * n + j].is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        // C of a single m=3 edge: eigenvalues 1 and 3.
        assert_eq!(exact_inertia(2, &[2, -1, -1, 2]), (2, 0, 0));
        // C of K_3: eigenvalues 0, 3, 3.
        assert_eq!(exact_inertia(3, &[2, -1, -1, -1, 2, -1, -1, -1, 2]), (2, 0, 1));
        // Hyperbolic plane form with zero diagonal.
        assert_eq!(exact_inertia(2, &[0, 1, 1, 0]), (1, 1, 0));
        assert_eq!(exact_inertia(2, &[0, 0, 0, 0]), (0, 0, 2));
        assert_eq!(exact_inertia(0, &[]), (0, 0, 0));
    }

    #[test]
    fn zero_diagonal_with_later_pivots() {
        // [[0,1,0],[1,0,1],[0,1,0]] has eigenvalues sqrt2, 0, -sqrt2.
        assert_eq!(exact_inertia(3, &[0, 1, 0, 1, 0, 1, 0, 1, 0]), (1, 1, 1));
    }

    #[test]
    fn falls_back_to_big_rationals() {
        // Large entries overflow i128 during elimination.
        let big = 1i64 << 62;
        let m = [big, big - 1, 3, big - 1, big, 5, 3, 5, big];
        let (p, q, r) = exact_inertia(3, &m);
        assert_eq!(p + q + r, 3);
        assert_eq!((p, q, r), (3, 0, 0));
    }
}
