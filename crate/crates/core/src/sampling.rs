//! Seeded generators for update streams and query sets.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lazy::UpdateEvent;
use crate::semiring::Semiring;
use crate::tensor::QuerySpec;

/// Independent generator for sub-stream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Length-`n` vector with integer entries drawn uniformly from `-2..=2`.
pub fn random_vector<S: Semiring, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<S> {
    (0..n)
        .map(|_| S::from_i64(rng.random_range(-2..=2)))
        .collect()
}

pub fn random_event<S: Semiring, R: Rng + ?Sized>(
    rng: &mut R,
    k: usize,
    n: usize,
) -> UpdateEvent<S> {
    UpdateEvent::new((0..k).map(|_| random_vector(rng, n)).collect())
}

/// Every nonempty subset of `0..k`, ascending, ordered by size then lexicographically.
pub fn mode_subsets(k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..(1 << k))
        .map(|mask| (0..k).filter(|m| mask & (1 << m) != 0).collect())
        .collect();
    out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// All `n^s` index tuples when there are at most `limit`, otherwise `limit`
/// distinct tuples sampled without replacement.
pub fn index_tuples<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    s: usize,
    limit: usize,
) -> Vec<Vec<usize>> {
    let total = n.pow(s as u32);
    let decode = |mut r: usize| {
        let mut t = vec![0; s];
        for slot in t.iter_mut().rev() {
            *slot = r % n;
            r /= n;
        }
        t
    };
    if total <= limit {
        return (0..total).map(decode).collect();
    }
    let mut ranks: Vec<usize> = (0..total).collect();
    ranks.shuffle(rng);
    ranks.truncate(limit);
    ranks.sort_unstable();
    ranks.into_iter().map(decode).collect()
}

/// Queries over every mode subset, with up to `per_subset` index tuples each.
pub fn queries<R: Rng + ?Sized>(
    rng: &mut R,
    k: usize,
    n: usize,
    per_subset: usize,
) -> Vec<QuerySpec> {
    let mut out = Vec::new();
    for modes in mode_subsets(k) {
        for idx in index_tuples(rng, n, modes.len(), per_subset) {
            out.push(QuerySpec::new(modes.clone(), idx).expect("subsets are sorted"));
        }
    }
    out
}

/// One query fixing `s` random modes at random indices.
pub fn random_query<R: Rng + ?Sized>(rng: &mut R, k: usize, n: usize, s: usize) -> QuerySpec {
    let mut modes: Vec<usize> = rand::seq::index::sample(rng, k, s).into_vec();
    modes.sort_unstable();
    let indices = (0..s).map(|_| rng.random_range(0..n)).collect();
    QuerySpec::new(modes, indices).expect("sampled modes are distinct")
}
