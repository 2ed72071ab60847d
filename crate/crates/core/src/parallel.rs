//! Order-preserving map over independent work items.
//!
//! With the `parallel` feature (on by default) [`Schedule::Parallel`] fans the
//! work out over the rayon thread pool; without it every schedule runs on the
//! calling thread. Results always come back in input order, so downstream
//! reductions are bit-identical whatever the schedule.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Schedule {
    Sequential,
    Parallel,
}

impl Default for Schedule {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Schedule::Parallel
        } else {
            Schedule::Sequential
        }
    }
}

impl Schedule {
    /// Whether this schedule actually runs on more than one thread.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Schedule::Parallel
    }
}

pub fn map<T, U, F>(items: &[T], schedule: Schedule, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if schedule == Schedule::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = schedule;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedules_agree_and_keep_order() {
        let items: Vec<u64> = (0..10_000).collect();
        let seq = map(&items, Schedule::Sequential, |x| x * x + 1);
        let par = map(&items, Schedule::Parallel, |x| x * x + 1);
        assert_eq!(seq, par);
        assert_eq!(seq[17], 290);
    }
}
