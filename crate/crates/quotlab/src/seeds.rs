//! Each task draws from its own ChaCha stream, keyed by the run seed and the
//! task index, so results do not depend on how tasks are scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub fn task_rng(seed: u64, task: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(task);
    rng
}

/// Runs `count` tasks on the rayon pool; results come back in task order.
pub fn run_tasks<T, F>(seed: u64, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, &mut ChaCha8Rng) -> T + Sync,
{
    (0..count as u64)
        .into_par_iter()
        .map(|task| f(task, &mut task_rng(seed, task)))
        .collect()
}
