//! `motivic selfcheck`: seeded randomized consistency checks.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use motivic_core::measure_engine::{enumerate_integral, motivic_integral};
use motivic_core::resolution_analysis::{check_boundedness, ord_jac_f};
use motivic_core::{LaurentPoly, MotiveSeries};

use crate::random;

fn ring_case(rng: &mut ChaCha8Rng) -> bool {
    let a = random::laurent(rng, 5, 6);
    let b = random::laurent(rng, 5, 6);
    let c = random::laurent(rng, 5, 6);
    &(&a + &b) * &c == &(&a * &c) + &(&b * &c)
        && &(&a * &b) * &c == &a * &(&b * &c)
        && (&a * &b).is_zero() == (a.is_zero() || b.is_zero())
        && (&a + &c).cmp(&(&b + &c)) == a.cmp(&b)
}

fn integral_case(rng: &mut ChaCha8Rng) -> bool {
    let data = random::resolution(rng, 3);
    let alpha = data.zero_weights();
    match (motivic_integral(&data, &alpha, -12), enumerate_integral(&data, &alpha, -12, None)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

fn boundedness_case(rng: &mut ChaCha8Rng) -> bool {
    let d = random::diagram(rng, 3, 4);
    let v = check_boundedness(&d);
    let mut above = true;
    let mut below = true;
    for (k, (p, q)) in d.p_mults().iter().zip(d.q_mults()).enumerate() {
        let spread = p.0.iter().zip(&q.0).map(|(a, b)| a.abs_diff(*b)).max().unwrap_or(0);
        let side = 1 + p.len() as u32 * spread;
        let mut e = vec![1u32; p.len()];
        loop {
            let o = ord_jac_f(&d, k, &e).expect("valid contacts");
            above &= o >= 0;
            below &= o <= 0;
            match e.iter().position(|x| *x < side) {
                Some(i) => {
                    e[i] += 1;
                    e[..i].iter_mut().for_each(|x| *x = 1);
                }
                None => break,
            }
        }
    }
    v.bounded_above == above && v.bounded_below == below
}

fn text_case(rng: &mut ChaCha8Rng) -> bool {
    let p = random::laurent(rng, 6, 8);
    let s = MotiveSeries::from_laurent(&p, -5);
    p.to_string().parse::<LaurentPoly>().ok() == Some(p)
        && s.to_string().parse::<MotiveSeries>().ok() == Some(s)
}

type Check = fn(&mut ChaCha8Rng) -> bool;

pub fn run(seed: u64, cases: usize) -> (i32, String) {
    let checks: [(&str, Check); 4] = [
        ("ring_axioms", ring_case),
        ("closed_form_vs_enumeration", integral_case),
        ("boundedness_vs_sign_checks", boundedness_case),
        ("text_round_trip", text_case),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::new();
    let mut failed = 0;
    for (name, check) in checks {
        let failures = (0..cases).filter(|_| !check(&mut rng)).count();
        failed += failures;
        let _ = writeln!(out, "{name}: {cases} cases, {failures} failures");
    }
    (i32::from(failed > 0), out)
}
