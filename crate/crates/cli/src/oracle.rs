//! Brute-force cross-checks of the solver on seeded random scenarios.

use privtrade_core::{
    classify_regime, oracle_grid_argmax, solve_tradeoff, Regime, Result, Scenario, ScenarioParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_GRID: usize = 1_000_000;

pub const REGIMES: [Regime; 5] = [
    Regime::NuLt1,
    Regime::NuEq1,
    Regime::SubcaseA,
    Regime::SubcaseB,
    Regime::NuEq1PlusTheta,
];

fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

/// Random scenario in the given regime.
///
/// `l_N` is drawn log-uniformly within a factor 20 of the loss at which the
/// marginal benefit `K α_N ν / l_N` meets the full breach risk, so that
/// interior, clamped and zero optima all occur.
pub fn random_scenario(rng: &mut impl Rng, regime: Regime) -> Scenario {
    let theta: f64 = rng.gen_range(0.05..0.95);
    let nu = match regime {
        Regime::NuLt1 => rng.gen_range(0.05..0.99),
        Regime::NuEq1 => 1.0,
        Regime::SubcaseA => 1.0 + theta * rng.gen_range(0.02..0.98),
        Regime::SubcaseB => 1.0 + theta + rng.gen_range(0.02..1.0),
        Regime::NuEq1PlusTheta => 1.0 + theta,
    };
    let p_star = log_uniform(rng, 0.1, 10.0);
    let q_star = log_uniform(rng, 10.0, 1e4);
    let price = p_star * rng.gen_range(0.0..0.95);
    let alpha_n = log_uniform(rng, 0.01, 2.0);
    let pi_s = log_uniform(rng, 1e-7, 1e-2);
    let pi_c_star = log_uniform(rng, 1e-7, 1e-2);
    let margin = 1.0 - price / p_star;
    let benefit = 0.5 * q_star * p_star * margin * margin * alpha_n * nu;
    let risk = pi_s + (1.0 - pi_s) * pi_c_star * (1.0 + theta);
    let s = Scenario::new(ScenarioParams {
        q_star,
        p_star,
        price,
        nu,
        theta,
        alpha_n,
        l_n: benefit / risk * log_uniform(rng, 0.05, 20.0),
        pi_s,
        pi_c_star,
    })
    .expect("sampled ranges are valid");
    debug_assert_eq!(classify_regime(&s), regime);
    s
}

/// `count` scenarios cycling through every regime, reproducible from `seed`.
pub fn stratified_scenarios(seed: u64, count: usize) -> Vec<Scenario> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| random_scenario(&mut rng, REGIMES[i % REGIMES.len()]))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Agreement {
    pub solver: f64,
    pub oracle: f64,
    /// Two grid steps of the nominal `l_N / grid` spacing.
    pub tolerance: f64,
}

impl Agreement {
    pub fn ok(&self) -> bool {
        (self.solver - self.oracle).abs() <= self.tolerance
    }

    pub fn ratio(&self) -> f64 {
        (self.solver - self.oracle).abs() / self.tolerance
    }
}

pub fn check(s: &Scenario, grid: usize) -> Result<Agreement> {
    Ok(Agreement {
        solver: solve_tradeoff(s)?.l_opt,
        oracle: oracle_grid_argmax(s, grid),
        tolerance: 2.0 * s.l_n() / grid as f64,
    })
}
