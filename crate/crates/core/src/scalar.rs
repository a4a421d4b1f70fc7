//! Integer scalars for characteristic matrices over Z.

use std::fmt::{Debug, Display};

use num_traits::{PrimInt, Signed};

/// Signed machine integers usable as characteristic-matrix entries.
pub trait IntScalar: PrimInt + Signed + Debug + Display + Send + Sync + 'static {}

impl<T> IntScalar for T where T: PrimInt + Signed + Debug + Display + Send + Sync + 'static {}

/// Fraction-free (Bareiss) determinant of a `k x k` row-major matrix.
/// Returns `None` if an intermediate value overflows `T`.
pub fn determinant<T: IntScalar>(mut a: Vec<T>, k: usize) -> Option<T> {
    assert_eq!(a.len(), k * k);
    if k == 0 {
        return Some(T::one());
    }
    let mut sign = T::one();
    let mut prev = T::one();
    for p in 0..k {
        if a[p * k + p].is_zero() {
            let Some(swap) = (p + 1..k).find(|&r| !a[r * k + p].is_zero()) else {
                return Some(T::zero());
            };
            for c in 0..k {
                a.swap(p * k + c, swap * k + c);
            }
            sign = -sign;
        }
        let pivot = a[p * k + p];
        for i in p + 1..k {
            for j in p + 1..k {
                let x = a[i * k + j].checked_mul(&pivot)?;
                let y = a[i * k + p].checked_mul(&a[p * k + j])?;
                a[i * k + j] = x.checked_sub(&y)?.checked_div(&prev)?;
            }
        }
        prev = pivot;
    }
    a[k * k - 1].checked_mul(&sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_determinants() {
        assert_eq!(determinant::<i64>(vec![], 0), Some(1));
        assert_eq!(determinant(vec![-1i64, 1, 1, 1], 2), Some(-2));
        assert_eq!(determinant(vec![0i32, 1, 1, 0], 2), Some(-1));
        assert_eq!(determinant(vec![2i128, 0, 0, 0, 3, 0, 0, 0, 4], 3), Some(24));
        assert_eq!(determinant(vec![1i64, 2, 3, 4, 5, 6, 7, 8, 9], 3), Some(0));
        assert_eq!(determinant(vec![0i64, 0, 1, 0], 2), Some(0));
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(determinant(vec![100i8, 1, 1, 100], 2), None);
    }
}
