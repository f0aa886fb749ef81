#![allow(dead_code)]

use framered::framecore::random::{
    gaussian, random_frame_from, rng_from_seed, smallest_singular_value,
};
use framered::framecore::Frame;
use framered::numkernel::{rank, DenseMatrix, HermitianOperator};
use framered::{Scalar, Tolerances};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn tol() -> Tolerances {
    Tolerances::default()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    rng_from_seed(seed)
}

/// A spanning Gaussian frame whose synthesis matrix is not nearly rank deficient.
pub fn well_conditioned_frame<S: Scalar<Real = f64>>(
    rng: &mut ChaCha8Rng,
    n: usize,
    count: usize,
) -> Frame<S> {
    loop {
        let f: Frame<S> = random_frame_from(rng, n, count).unwrap();
        if smallest_singular_value(&f.synthesis_matrix()).unwrap() >= 1e-3 {
            return f;
        }
    }
}

/// Frames with repeated, clustered and axis-aligned vectors, where Gaussian
/// draws would almost never produce linear dependencies.
pub fn structured_frame(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Frame<f64> {
    loop {
        let pool: Vec<Vec<f64>> = (0..n.max(2))
            .map(|_| (0..n).map(|_| rng.random_range(-2i32..=2) as f64).collect())
            .filter(|v: &Vec<f64>| v.iter().any(|&x| x != 0.0))
            .collect();
        if pool.is_empty() {
            continue;
        }
        let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(count);
        for _ in 0..count {
            let base = &pool[rng.random_range(0..pool.len())];
            let c = if rng.random_bool(0.5) { 1.0 } else { -2.0 };
            let mut v: Vec<f64> = base.iter().map(|x| x * c).collect();
            if rng.random_bool(0.3) {
                let axis = rng.random_range(0..n);
                v = vec![0.0; n];
                v[axis] = 1.0;
            }
            vectors.push(v);
        }
        let f = Frame::new(n, vectors).unwrap();
        if f.is_spanning() {
            return f;
        }
    }
}

pub fn dims(rng: &mut ChaCha8Rng, max_n: usize, max_count: usize) -> (usize, usize) {
    let n = rng.random_range(2..=max_n);
    let count = rng.random_range(n..=max_count);
    (n, count)
}

pub fn mercedes_benz() -> Frame<f64> {
    let s = 3f64.sqrt() / 2.0;
    Frame::new(2, vec![vec![0.0, 1.0], vec![-s, -0.5], vec![s, -0.5]]).unwrap()
}

/// A random Hermitian operator of dimension `n`.
pub fn random_hermitian<S: Scalar<Real = f64>>(
    rng: &mut ChaCha8Rng,
    n: usize,
) -> HermitianOperator<S> {
    let a = DenseMatrix::from_fn(n, n, |_, _| gaussian::<S>(rng));
    let h = DenseMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()).scale(0.5));
    HermitianOperator::new(h, &tol()).unwrap()
}

fn independent_masks<S: Scalar>(f: &Frame<S>) -> Vec<bool> {
    let total = f.len();
    (0..1usize << total)
        .map(|mask| {
            let cols: Vec<Vec<S>> = (0..total)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| f.vector(i).to_vec())
                .collect();
            if cols.is_empty() {
                return true;
            }
            if cols.len() > f.dim() {
                return false;
            }
            rank(&DenseMatrix::from_columns(f.dim(), &cols).unwrap(), None) == cols.len()
        })
        .collect()
}

/// Fewest independent sets covering every index, by dynamic programming over subsets.
pub fn brute_min_independent_cover<S: Scalar>(f: &Frame<S>) -> usize {
    let total = f.len();
    let indep = independent_masks(f);
    let full = (1usize << total) - 1;
    let mut best = vec![usize::MAX; full + 1];
    best[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut sub = rest;
        loop {
            let block = sub | low;
            if indep[block] && best[mask ^ block] != usize::MAX {
                best[mask] = best[mask].min(best[mask ^ block] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    best[full]
}

/// Most disjoint bases inside the index set, by dynamic programming over subsets.
pub fn brute_max_disjoint_bases<S: Scalar>(f: &Frame<S>) -> usize {
    let total = f.len();
    let n = f.dim();
    let indep = independent_masks(f);
    let full = (1usize << total) - 1;
    let mut best = vec![0usize; full + 1];
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut value = best[rest];
        let mut sub = rest;
        loop {
            let block = sub | low;
            if block.count_ones() as usize == n && indep[block] {
                value = value.max(best[mask ^ block] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        best[mask] = value;
    }
    best[full]
}
