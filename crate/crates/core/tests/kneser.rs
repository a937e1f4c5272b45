use std::time::{Duration, Instant};

use halllab_core::fractional::{chi_f_exact, verify_certificate};
use halllab_core::generators::{kneser, mycielski};
use halllab_core::invariants::hall_ratio;
use halllab_core::rational::ratio;
use halllab_core::Graph;

const LIMIT: Duration = Duration::from_secs(60);

fn check_kneser(a: usize, b: usize) {
    let g = kneser(a, b).unwrap();
    let start = Instant::now();
    let cert = chi_f_exact(&g).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(cert.value, ratio(a as i64, b as i64), "K_{{{a}:{b}}}");
    assert!(verify_certificate(&g, &cert).passed());
    assert!(elapsed < LIMIT, "K_{{{a}:{b}}} took {elapsed:?}");
}

#[test]
fn kneser_5_2() {
    check_kneser(5, 2);
}

#[test]
fn kneser_6_2() {
    check_kneser(6, 2);
}

#[test]
fn kneser_7_3() {
    check_kneser(7, 3);
}

#[test]
fn petersen_hall_ratio_matches_chi_f() {
    let g = kneser(5, 2).unwrap();
    let rho = hall_ratio(&g).unwrap();
    assert!(rho.exact);
    assert_eq!(rho.value, ratio(5, 2));
    assert_eq!(rho.value, chi_f_exact(&g).unwrap().value);
}

#[test]
fn grotzsch() {
    let g = mycielski(&Graph::cycle(5).unwrap()).unwrap();
    assert_eq!((g.n(), g.m()), (11, 20));
    assert_eq!(chi_f_exact(&g).unwrap().value, ratio(29, 10));
    // next step of the recurrence x + 1/x
    let h = mycielski(&g).unwrap();
    assert_eq!(chi_f_exact(&h).unwrap().value, ratio(29, 10) + ratio(10, 29));
}
