//! The memo tables promise idempotent concurrent fill: values never depend
//! on thread timing, and reads after construction are safe.

use std::thread;

use hhsum_core::exact::bernoulli_plus;
use hhsum_core::sequences::{coeff_table, harmonic, hyperharmonic};
use hhsum_core::{Engine, EngineConfig, SumSpec};

#[test]
fn concurrent_fill_is_idempotent() {
    let handles: Vec<_> = (0..8i32)
        .map(|t| {
            thread::spawn(move || {
                // Every thread walks the tables in a different order.
                let mut acc = Vec::new();
                for i in 0..40u64 {
                    let i = if t % 2 == 0 { i } else { 39 - i };
                    acc.push((
                        bernoulli_plus((i % 24) as u32),
                        harmonic(i * 3 + 1, t % 3 + 1),
                        hyperharmonic(i + 1, 2, (t % 4) as u32 + 1),
                        coeff_table((i % 6) as u32 + 1).get(0, 0),
                    ));
                }
                acc
            })
        })
        .collect();
    let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();

    // Recompute sequentially and compare against every thread's view.
    for (t, acc) in results.iter().enumerate() {
        let t = t as i32;
        for (j, (b, h, hh, c)) in acc.iter().enumerate() {
            let i = if t % 2 == 0 { j as u64 } else { 39 - j as u64 };
            assert_eq!(*b, bernoulli_plus((i % 24) as u32));
            assert_eq!(*h, harmonic(i * 3 + 1, t % 3 + 1));
            assert_eq!(*hh, hyperharmonic(i + 1, 2, (t % 4) as u32 + 1));
            assert_eq!(*c, coeff_table((i % 6) as u32 + 1).get(0, 0));
        }
    }
}

#[test]
fn engine_shared_across_threads() {
    let engine = Engine::new(EngineConfig {
        euler_truncation: 5_000,
        oracle_exact_terms: 64,
        ..EngineConfig::default()
    })
    .unwrap();
    let spec = SumSpec::linear(1, 2, 3, 2, true);
    let sequential = engine.theorem_value(&spec).unwrap();
    thread::scope(|s| {
        for _ in 0..4 {
            let engine = &engine;
            let spec = &spec;
            s.spawn(move || {
                let v = engine.theorem_value(spec).unwrap();
                assert_eq!(v.value, sequential.value);
            });
        }
    });
}
