#![allow(dead_code)]

use gravcert_core::analytic::{build_reduced_choi, forced_alpha, forced_beta, minor_determinant_check};
use gravcert_core::channel::schrodinger_constraint_blocks;
use gravcert_core::linalg::basis::plus_plus;
use gravcert_core::linalg::is_psd;
use gravcert_core::sdp::{build_program, sample_haar_states, DEFAULT_SEED};
use gravcert_core::{Complex64, ConicProgram, PhaseVector, PhysicalConstants, Preset, TwoMassGeometry};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const C: PhysicalConstants = PhysicalConstants::CODATA_2018;

/// Collinear geometry with random masses, arm spacings, gaps and time.
pub fn random_geometry(rng: &mut ChaCha8Rng) -> TwoMassGeometry {
    let m1 = 10f64.powf(rng.random_range(-15.0..-13.0));
    let m2 = 10f64.powf(rng.random_range(-15.0..-13.0));
    let x_l = rng.random_range(-1e-3..0.0);
    let x_r = x_l + rng.random_range(50e-6..500e-6);
    let y_l = x_r + rng.random_range(50e-6..1e-3);
    let y_r = y_l + rng.random_range(50e-6..500e-6);
    let t = rng.random_range(0.0..5.0);
    TwoMassGeometry::new(m1, m2, (x_l, x_r), (y_l, y_r), t).expect("arms are separated")
}

pub fn random_phases(rng: &mut ChaCha8Rng) -> PhaseVector {
    PhaseVector::from_array(std::array::from_fn(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI)))
}

pub fn unit(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

#[derive(Debug, Default)]
pub struct SweepOutcome {
    pub cases: usize,
    pub counterexamples: usize,
    pub psd_cases: usize,
    pub largest_forced_minor: f64,
}

/// Checks PSD ⇔ both minors ≥ -1e-10 ⇔ (α, β) forced within 1e-6.
///
/// Besides uniform points on the bicircle, each phase vector contributes the
/// exact forced pair, pairs with one coordinate forced, and pairs displaced
/// from the forced values by 1e-3 to 0.1 rad.
pub fn uniqueness_sweep(rng: &mut ChaCha8Rng, phase_vectors: usize, pairs: usize) -> SweepOutcome {
    let mut out = SweepOutcome::default();
    let tau = std::f64::consts::TAU;
    for _ in 0..phase_vectors {
        let p = random_phases(rng);
        let (fa, fb) = (forced_alpha(&p), forced_beta(&p));
        for k in 0..pairs {
            let (alpha, beta) = if k == 0 {
                (fa, fb)
            } else {
                match k % 8 {
                1 => (fa, unit(rng.random_range(0.0..tau))),
                2 => (unit(rng.random_range(0.0..tau)), fb),
                3 => (fa * unit(signed(rng, 1e-3, 0.1)), fb),
                4 => (fa, fb * unit(signed(rng, 1e-3, 0.1))),
                _ => (unit(rng.random_range(0.0..tau)), unit(rng.random_range(0.0..tau))),
                }
            };
            let r = build_reduced_choi(&p, alpha, beta);
            let psd = is_psd(&r.matrix, 1e-9);
            let (db, da) = minor_determinant_check(&r);
            let minors = db >= -1e-10 && da >= -1e-10;
            let forced = (alpha - fa).norm() <= 1e-6 && (beta - fb).norm() <= 1e-6;
            out.cases += 1;
            if psd {
                out.psd_cases += 1;
            }
            if forced {
                out.largest_forced_minor = out.largest_forced_minor.max(db.abs()).max(da.abs());
            }
            if psd != minors || minors != forced {
                out.counterexamples += 1;
            }
        }
    }
    out
}

fn signed(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let m = rng.random_range(lo..hi);
    if rng.random_bool(0.5) { m } else { -m }
}

/// The two-interferometer instance at time `t` with the first `n` states of
/// the default seed (`n = 0` leaves only the partial-transpose cone).
pub fn instance(t: f64, n: usize) -> ConicProgram {
    instance_with_seed(t, n, DEFAULT_SEED)
}

pub fn instance_with_seed(t: f64, n: usize, seed: u64) -> ConicProgram {
    let g = Preset::Fig2Bose.two_mass_geometry(t).unwrap();
    let blocks = schrodinger_constraint_blocks(&g, &C).unwrap();
    let states = if n == 0 {
        gravcert_core::HaarStateSample::empty(seed)
    } else {
        sample_haar_states(seed, n).unwrap()
    };
    build_program(&blocks, &states, &plus_plus()).unwrap()
}
pub mod properties;
