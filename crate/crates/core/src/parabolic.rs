//! Minimal coset representatives and the length bookkeeping attached to a
//! double coset `W_J x W_K`.

use crate::coxeter::{Side, TypeSubset, WeylElement, WeylGroup};
use crate::error::{Error, Result};

/// `w` has no left descent in `J`.
pub fn is_min_left(group: &WeylGroup, w: &WeylElement, j: &TypeSubset) -> bool {
    j.iter().all(|i| !group.is_descent(w, i, Side::Left))
}

/// `w` has no right descent in `K`.
pub fn is_min_right(group: &WeylGroup, w: &WeylElement, k: &TypeSubset) -> bool {
    k.iter().all(|i| !group.is_descent(w, i, Side::Right))
}

pub fn is_min_double(group: &WeylGroup, w: &WeylElement, j: &TypeSubset, k: &TypeSubset) -> bool {
    is_min_left(group, w, j) && is_min_right(group, w, k)
}

/// `^J W`, in breadth-first order.
pub fn min_left_reps(group: &WeylGroup, j: &TypeSubset, bound: u64) -> Result<Vec<WeylElement>> {
    Ok(group
        .elements(bound)?
        .iter()
        .filter(|w| is_min_left(group, w, j))
        .cloned()
        .collect())
}

/// `W^K`, in breadth-first order.
pub fn min_right_reps(group: &WeylGroup, k: &TypeSubset, bound: u64) -> Result<Vec<WeylElement>> {
    Ok(group
        .elements(bound)?
        .iter()
        .filter(|w| is_min_right(group, w, k))
        .cloned()
        .collect())
}

/// `^J W^K = ^J W ∩ W^K`, in breadth-first order.
pub fn min_double_reps(
    group: &WeylGroup,
    j: &TypeSubset,
    k: &TypeSubset,
    bound: u64,
) -> Result<Vec<WeylElement>> {
    Ok(group
        .elements(bound)?
        .iter()
        .filter(|w| is_min_double(group, w, j, k))
        .cloned()
        .collect())
}

/// The three coset-representative sets for a pair of types.
#[derive(Debug, Clone)]
pub struct CosetSystem {
    pub j: TypeSubset,
    pub k: TypeSubset,
    pub left: Vec<WeylElement>,
    pub right: Vec<WeylElement>,
    pub double: Vec<WeylElement>,
}

impl CosetSystem {
    pub fn new(group: &WeylGroup, j: TypeSubset, k: TypeSubset, bound: u64) -> Result<Self> {
        let left = min_left_reps(group, &j, bound)?;
        let right = min_right_reps(group, &k, bound)?;
        let double = left.iter().filter(|w| is_min_right(group, w, &k)).cloned().collect();
        Ok(CosetSystem { j, k, left, right, double })
    }
}

/// The minimal element of `w W_K`, for `w` in `^J W`.
pub fn project_to_double(
    group: &WeylGroup,
    w: &WeylElement,
    j: &TypeSubset,
    k: &TypeSubset,
) -> Result<WeylElement> {
    if !is_min_left(group, w, j) {
        return Err(Error::NotMinimal(format!(
            "{} is not of minimal length in its left W_J-coset (J = {j})",
            group.word_string(w)
        )));
    }
    let mut current = w.clone();
    while let Some(i) = k.iter().find(|&i| group.is_descent(&current, i, Side::Right)) {
        current = group.right_mul_simple(&current, i);
    }
    Ok(current)
}

fn require_double(group: &WeylGroup, x: &WeylElement, j: &TypeSubset, k: &TypeSubset) -> Result<()> {
    if is_min_double(group, x, j, k) {
        Ok(())
    } else {
        Err(Error::NotMinimal(format!(
            "{} is not a minimal (W_J, W_K) double coset representative (J = {j}, K = {k})",
            group.word_string(x)
        )))
    }
}

/// `J_x = K ∩ x^{-1} J x`: the `k` in `K` with `x s_k x^{-1} = s_j` for some `j` in `J`.
pub fn induced_subset(
    group: &WeylGroup,
    x: &WeylElement,
    j: &TypeSubset,
    k: &TypeSubset,
) -> Result<TypeSubset> {
    require_double(group, x, j, k)?;
    let x_inv = group.inverse(x);
    let targets: Vec<WeylElement> = j.iter().map(|i| group.simple(i)).collect();
    Ok(k.iter()
        .filter(|&kk| {
            let conj = group.compose(&group.compose(x, &group.simple(kk)), &x_inv);
            targets.contains(&conj)
        })
        .collect())
}

/// `x_{J,K}`: the longest element of `^{J_x} W_K`, equal to `w_{0,J_x} w_{0,K}`.
pub fn x_lower(group: &WeylGroup, x: &WeylElement, j: &TypeSubset, k: &TypeSubset) -> Result<WeylElement> {
    let jx = induced_subset(group, x, j, k)?;
    Ok(group.compose(&group.longest_element(&jx), &group.longest_element(k)))
}

/// `x^{J,K} = x x_{J,K}` and its length, with the length additivity checked.
pub fn x_upper(
    group: &WeylGroup,
    x: &WeylElement,
    j: &TypeSubset,
    k: &TypeSubset,
) -> Result<(WeylElement, usize)> {
    let lower = x_lower(group, x, j, k)?;
    let upper = group.compose(x, &lower);
    if upper.length() != x.length() + lower.length() {
        return Err(Error::Internal(format!(
            "length of x x_(J,K) is {} but l(x) + l(x_(J,K)) = {} for x = {}",
            upper.length(),
            x.length() + lower.length(),
            group.word_string(x)
        )));
    }
    if !is_min_left(group, &upper, j) {
        return Err(Error::Internal(format!(
            "x^(J,K) = {} is not in ^J W",
            group.word_string(&upper)
        )));
    }
    let length = upper.length();
    Ok((upper, length))
}

/// `l(x) + l(w_{0,K}) - l(w_{0,J_x})`.
pub fn ell_jk(group: &WeylGroup, x: &WeylElement, j: &TypeSubset, k: &TypeSubset) -> Result<usize> {
    let jx = induced_subset(group, x, j, k)?;
    Ok(x.length() + group.longest_element(k).length() - group.longest_element(&jx).length())
}
