use rpa_core::*;
use std::time::Instant;
fn main() {
    // Probe beyond the acceptance range: every order to 200.
    let t0 = Instant::now();
    let mut worst = (0usize, std::time::Duration::ZERO);
    for n in 1..=200usize {
        let order = Order::new(n).unwrap();
        let t1 = Instant::now();
        match build_lrpa12(order, 0) {
            Ok(a) => {
                assert!(verify_latin(&a).passed(), "n={n}");
                assert!(verify_rpa(&a, Corner::TopLeft).passed(), "n={n}");
                assert!(verify_rpa(&a, Corner::TopRight).passed(), "n={n}");
            }
            Err(e) => println!("  lrpa n={n}: FAILED {e}"),
        }
        if t1.elapsed() > worst.1 { worst = (n, t1.elapsed()); }
    }
    println!("lrpa 1..200: {:?} (worst n={} {:?})", t0.elapsed(), worst.0, worst.1);

    // Odd type-1,2,3,4 to 199, a couple of seeds.
    let t0 = Instant::now();
    for n in (15..=199).step_by(2) {
        for seed in [0u64, 1] {
            let a = build_type1234(Order::new(n).unwrap(), seed).unwrap();
            for corner in Corner::ALL {
                assert!(verify_rpa(&a, corner).passed(), "n={n} seed={seed}");
            }
        }
    }
    println!("t1234 odd 15..199 x 2 seeds: {:?}", t0.elapsed());
}
