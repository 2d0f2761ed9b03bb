//! Coefficient-level kernels shared by the real and complex series types.
//!
//! Every kernel produces exactly `len` output coefficients. Inputs shorter than
//! `len` are read as if padded with zeros; callers are responsible for choosing
//! a `len` that does not exceed what the inputs actually determine.

use num_traits::Num;
use std::ops::Neg;

pub trait Coeff: Copy + Num + Neg<Output = Self> {}

impl<T: Copy + Num + Neg<Output = T>> Coeff for T {}

#[inline]
fn at<T: Coeff>(v: &[T], j: usize) -> T {
    v.get(j).copied().unwrap_or_else(T::zero)
}

/// Cauchy product truncated to `len` terms.
pub fn mul<T: Coeff>(a: &[T], b: &[T], len: usize) -> Vec<T> {
    let mut out = vec![T::zero(); len];
    for (i, &ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j] + ai * bj;
        }
    }
    out
}

/// Reciprocal of a unit series (`a[0] != 0`).
///
/// `out[0] = 1/a0`, `out[j] = -(1/a0) * sum_{k+l=j, l>=1} out[k] a[l]`.
pub fn reciprocal<T: Coeff>(a: &[T], len: usize) -> Vec<T> {
    let a0 = at(a, 0);
    let inv = T::one() / a0;
    let mut out = vec![T::zero(); len];
    if len == 0 {
        return out;
    }
    out[0] = inv;
    for j in 1..len {
        let mut acc = T::zero();
        for l in 1..=j {
            let al = at(a, l);
            if !al.is_zero() {
                acc = acc + out[j - l] * al;
            }
        }
        out[j] = -(inv * acc);
    }
    out
}

/// `f(g(t))` by Horner's scheme, assuming `g[0] == 0`.
pub fn compose<T: Coeff>(f: &[T], g: &[T], len: usize) -> Vec<T> {
    let mut acc = vec![T::zero(); len];
    for &fk in f.iter().rev() {
        acc = mul(&acc, g, len);
        if len > 0 {
            acc[0] = acc[0] + fk;
        }
    }
    acc
}

/// Compositional inverse of `f` with `f[0] == 0`, `f[1] != 0`.
pub fn revert<T: Coeff>(f: &[T], len: usize) -> Vec<T> {
    let mut g = vec![T::zero(); len];
    if len < 2 {
        return g;
    }
    let f1 = at(f, 1);
    g[1] = T::one() / f1;
    for n in 2..len {
        // With g[n] still zero, [t^n] f(g) collects every contribution except f1*g[n].
        let c = compose(&f[..f.len().min(n + 1)], &g[..n], n + 1)[n];
        g[n] = -(c / f1);
    }
    g
}

/// Square root of a unit series with a chosen root `root0` of `a[0]`.
pub fn sqrt_unit<T: Coeff>(a: &[T], root0: T, len: usize) -> Vec<T> {
    let mut y = vec![T::zero(); len];
    if len == 0 {
        return y;
    }
    y[0] = root0;
    let two = T::one() + T::one();
    for n in 1..len {
        let mut acc = at(a, n);
        for k in 1..n {
            acc = acc - y[k] * y[n - k];
        }
        y[n] = acc / (two * root0);
    }
    y
}
