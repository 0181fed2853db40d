//! Rayon-backed batch evaluation; results keep index order.

use rayon::prelude::*;
use ratiolab_core::theorem::IndexMap;

#[derive(Clone, Copy, Debug, Default)]
pub struct Parallel;

impl IndexMap for Parallel {
    fn map<T, F>(&self, n: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        (0..n).into_par_iter().map(f).collect()
    }
}
