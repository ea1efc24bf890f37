//! Sum and map helpers that run on the rayon pool when the `parallel` feature is on.
//!
//! Exact addition is associative and commutative, so the result never depends on how
//! rayon splits the work.

use std::ops::Add;

use num_traits::Zero;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub(crate) fn sum<I, T, F>(items: Vec<I>, f: F) -> T
where
    I: Send,
    T: Zero + Add<Output = T> + Send,
    F: Fn(I) -> T + Sync + Send,
{
    items.into_par_iter().map(f).reduce(T::zero, |a, b| a + b)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn sum<I, T, F>(items: Vec<I>, f: F) -> T
where
    T: Zero + Add<Output = T>,
    F: Fn(I) -> T,
{
    items.into_iter().map(f).fold(T::zero(), |a, b| a + b)
}

/// Order-preserving map.
#[cfg(feature = "parallel")]
pub(crate) fn map<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    F: Fn(I) -> T,
{
    items.into_iter().map(f).collect()
}
