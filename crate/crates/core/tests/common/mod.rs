#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use sorpfix::semirings::{MinMax, MinMaxValue, TropicalValue, UnitRational};
use sorpfix::{EquationSystem, Exponent, Monomial, Semiring, Sorp, SorpPolynomial};

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn tropical(rng: &mut ChaCha8Rng) -> TropicalValue {
    match rng.gen_range(0..10) {
        0 => TropicalValue::Infinity,
        1 | 2 => TropicalValue::from_integer(0),
        3..=6 => TropicalValue::from_integer(rng.gen_range(1..6)),
        _ => TropicalValue::ratio(rng.gen_range(1..7), rng.gen_range(2..4)),
    }
}

pub fn unit(rng: &mut ChaCha8Rng) -> UnitRational {
    match rng.gen_range(0..8) {
        0 => UnitRational::zero(),
        1 | 2 => UnitRational::one(),
        _ => {
            let d = *[2u64, 3, 4, 6].choose(rng).unwrap();
            UnitRational::ratio(rng.gen_range(0..=d), d)
        }
    }
}

pub fn boolean(rng: &mut ChaCha8Rng) -> bool {
    rng.gen()
}

pub fn chain3() -> MinMax {
    MinMax::new(["lo", "mid", "hi"]).unwrap()
}

pub fn minmax(rng: &mut ChaCha8Rng, m: &MinMax) -> MinMaxValue {
    MinMaxValue(rng.gen_range(0..m.labels().len()))
}

pub fn exponent(rng: &mut ChaCha8Rng, max_finite: u64, inf_weight: u32) -> Exponent {
    if rng.gen_ratio(inf_weight, 10) {
        Exponent::Infinite
    } else {
        Exponent::Finite(rng.gen_range(0..=max_finite))
    }
}

pub fn monomial(rng: &mut ChaCha8Rng, names: &[&str], max_finite: u64, inf_weight: u32) -> Monomial {
    names.iter().fold(Monomial::one(), |m, n| {
        if rng.gen_bool(0.5) {
            m.with(*n, exponent(rng, max_finite, inf_weight))
        } else {
            m
        }
    })
}

/// Up to `max_terms` random monomials, normalized.
pub fn sorp(rng: &mut ChaCha8Rng, names: &[&str], max_terms: usize) -> SorpPolynomial {
    let k = rng.gen_range(0..=max_terms);
    (0..k).map(|_| monomial(rng, names, 2, 2)).collect()
}

pub fn nonzero_sorp(rng: &mut ChaCha8Rng, names: &[&str], max_terms: usize) -> SorpPolynomial {
    loop {
        let p = sorp(rng, names, max_terms);
        if !p.is_zero() {
            return p;
        }
    }
}

pub const COEFF_NAMES: [&str; 3] = ["a", "b", "c"];

/// Shape parameters for random systems.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_vars: usize,
    pub max_terms: usize,
    pub max_exponent: u64,
    /// Upper bound on the total degree of each system monomial.
    pub max_degree: u64,
}

pub const SMALL: Shape = Shape { max_vars: 3, max_terms: 3, max_exponent: 2, max_degree: 6 };

fn sys_monomial(rng: &mut ChaCha8Rng, vars: &[String], shape: Shape) -> Monomial {
    let mut m = Monomial::one();
    let mut degree = 0;
    for x in vars {
        if degree >= shape.max_degree {
            break;
        }
        if rng.gen_bool(0.45) {
            let cap = shape.max_exponent.min(shape.max_degree - degree);
            let e = rng.gen_range(1..=cap);
            degree += e;
            m = m.with(x.clone(), e);
        }
    }
    m
}

/// A random well-formed system whose coefficients are drawn by `coeff`.
pub fn system<S, F>(rng: &mut ChaCha8Rng, semiring: S, shape: Shape, mut coeff: F) -> EquationSystem<S>
where
    S: Semiring,
    F: FnMut(&mut ChaCha8Rng) -> S::Elem,
{
    let l = rng.gen_range(1..=shape.max_vars);
    let vars: Vec<String> = (1..=l).map(|i| format!("X{i}")).collect();
    let equations: Vec<_> = vars
        .iter()
        .map(|x| {
            let k = rng.gen_range(0..=shape.max_terms);
            let mut terms: Vec<(S::Elem, Monomial)> = Vec::new();
            for _ in 0..k {
                let m = sys_monomial(rng, &vars, shape);
                if terms.iter().any(|(_, n)| *n == m) {
                    continue;
                }
                let c = loop {
                    let c = coeff(rng);
                    if !semiring.is_zero(&c) {
                        break c;
                    }
                };
                terms.push((c, m));
            }
            (x.clone(), terms)
        })
        .collect();
    EquationSystem::from_equations(semiring, equations).expect("generator builds valid systems")
}

/// Coefficients that are single monomials over `a, b, c`.
pub fn single_monomial_coeff(rng: &mut ChaCha8Rng) -> SorpPolynomial {
    loop {
        let m = monomial(rng, &COEFF_NAMES, 2, 1);
        if !m.is_one() || rng.gen_bool(0.2) {
            return SorpPolynomial::from(m);
        }
    }
}

pub fn sorp_system(rng: &mut ChaCha8Rng, shape: Shape) -> EquationSystem<Sorp> {
    system(rng, Sorp, shape, single_monomial_coeff)
}
