//! Bounded concurrent map with index-stable results.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// Apply `f` to every input on up to `in_flight` worker threads and return
/// the results in input order. Aggregation order never depends on thread
/// scheduling, which keeps callers deterministic.
pub fn fan_out<T, R, F>(inputs: &[T], in_flight: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync,
{
    let in_flight = in_flight.max(1).min(inputs.len().max(1));
    if in_flight == 1 || inputs.len() <= 1 {
        return inputs.iter().enumerate().map(|(i, t)| f(i, t)).collect();
    }

    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<R>>> = inputs.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..in_flight {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= inputs.len() {
                    break;
                }
                let result = f(i, &inputs[i]);
                *slots[i].lock().expect("slot poisoned") = Some(result);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.into_inner().expect("slot poisoned").expect("slot filled"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn results_keep_input_order() {
        let inputs: Vec<u64> = (0..100).collect();
        let out = fan_out(&inputs, 8, |_, &x| x * 2);
        assert_eq!(out, (0..100).map(|x| x * 2).collect::<Vec<_>>());
    }

    #[test]
    fn single_worker_degenerates_to_sequential() {
        let inputs = vec!["a", "b", "c"];
        let out = fan_out(&inputs, 1, |i, s| format!("{i}{s}"));
        assert_eq!(out, vec!["0a", "1b", "2c"]);
    }

    #[test]
    fn empty_input_is_fine() {
        let out: Vec<i32> = fan_out(&Vec::<i32>::new(), 4, |_, &x| x);
        assert!(out.is_empty());
    }
}
