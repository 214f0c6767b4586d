pub mod bench;
pub mod compare;
pub mod filter;
pub mod gen;
pub mod replay;
pub mod validate;

use tmfg::synth::Family;

use crate::{CliError, Result};

pub(crate) fn parse_family(s: &str) -> Result<Family> {
    Family::parse(s).map_err(|e| CliError::Input(e.to_string()))
}

/// File-name friendly form of a distribution label.
pub(crate) fn slug(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c.is_ascii_alphanumeric() || c == '.' { c } else { '_' })
        .collect::<String>()
        .trim_matches('_')
        .to_string()
}

/// Runs `f` over `0..n` on up to `jobs` threads and returns the results in
/// index order.
pub(crate) fn run_indexed<T: Send>(
    n: usize,
    jobs: usize,
    f: impl Fn(usize) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    use std::sync::atomic::{AtomicUsize, Ordering};
    use std::sync::Mutex;

    let jobs = jobs.clamp(1, n.max(1));
    if jobs == 1 {
        return (0..n).map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<T>>>> = Mutex::new((0..n).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= n {
                    break;
                }
                let out = f(k);
                slots.lock().expect("result slots poisoned")[k] = Some(out);
            });
        }
    });
    slots
        .into_inner()
        .expect("result slots poisoned")
        .into_iter()
        .map(|r| r.expect("every index ran"))
        .collect()
}

pub(crate) fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}
