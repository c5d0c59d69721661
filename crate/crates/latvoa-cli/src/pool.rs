//! A small worker pool: results come back in input order regardless of completion order.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// Maps `f` over `items` on `jobs` threads. Each worker builds its own state with `init`
/// (the vertex engine caches modes and is not shared between threads).
pub fn par_map<T, R, C, I, F>(items: &[T], jobs: usize, init: I, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    I: Fn() -> C + Sync,
    F: Fn(&mut C, &T) -> R + Sync,
{
    let jobs = jobs.clamp(1, items.len().max(1));
    if jobs == 1 {
        let mut st = init();
        return items.iter().map(|t| f(&mut st, t)).collect();
    }
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|sc| {
        for _ in 0..jobs {
            sc.spawn(|| {
                let mut st = init();
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= items.len() {
                        break;
                    }
                    let r = f(&mut st, &items[i]);
                    out.lock().expect("result slots")[i] = Some(r);
                }
            });
        }
    });
    out.into_inner().expect("result slots").into_iter().map(|r| r.expect("every item processed")).collect()
}
