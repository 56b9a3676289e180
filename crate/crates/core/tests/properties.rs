//! Structural properties of the scheme: the unperturbed limit, the Riccati
//! residual, certified roots, wavefunction shape, and order-by-order
//! behaviour of the energies.

use anharmonic::ratpoly::{int, rat};
use anharmonic::recursion::{
    residual_low_orders_vanish, riccati_residual, riccati_residual_symbolic, CoefficientTable,
};
use anharmonic::rootfind::{certify, positive_roots};
use anharmonic::spectrum::{energy_from_table, scan, RootRule, DEFAULT_DIGITS};
use anharmonic::wavefn::WavefunctionModel;
use anharmonic::{energy, BigRational, OscillatorProblem};
use num_traits::{ToPrimitive, Zero};

#[test]
fn unperturbed_limit_collapses() {
    for n in 0..5u32 {
        let table = CoefficientTable::build(n, int(0), 10);
        for (k, f) in table.eval_at(10, &int(1)).iter().enumerate() {
            assert!(f.is_zero(), "n={n} f_{} (1) = {f}", k + 1);
        }
        for order in 1..=10 {
            let est =
                energy_from_table(&table, order, DEFAULT_DIGITS, RootRule::default()).unwrap();
            assert!(est.energy.is_exact(), "n={n} N={order}");
            assert_eq!(est.energy.value, int(2 * i64::from(n) + 1));
        }
    }
}

#[test]
fn riccati_residual_vanishes_below_truncation() {
    for n in 0..=1u32 {
        for g in [int(1), rat(1, 10), rat(22, 7)] {
            for order in 1..=6 {
                let residual = riccati_residual_symbolic(n, &g, order).unwrap();
                assert!(
                    residual_low_orders_vanish(&residual, order),
                    "n={n} g={g} N={order}"
                );
                // The first surviving power carries the order-N constraint.
                let mut table = CoefficientTable::new(n, g.clone());
                assert_eq!(
                    residual[2 * order + 2],
                    table.constraint(order),
                    "n={n} N={order}"
                );
            }
        }
    }
}

#[test]
fn riccati_residual_at_solved_scale_starts_high() {
    // Once a = a*, the x^(2N+2) coefficient vanishes too (up to the refined
    // root's rounding), leaving x^(2N+4) as the leading truncation term.
    for n in 0..=1u32 {
        let order = 3;
        let est = energy(&OscillatorProblem::new(n, int(1), order).unwrap(), 30).unwrap();
        let r = riccati_residual(n, &int(1), order, &est.a_star.value).unwrap();
        for k in 0..2 * order + 2 {
            assert!(r.coeff(k).is_zero(), "n={n} x^{k}");
        }
        let at_root = r.coeff(2 * order + 2).to_f64().unwrap().abs();
        assert!(at_root < 1e-25, "n={n}: {at_root}");
        assert!(r.coeff(2 * order + 4).to_f64().unwrap().abs() > 1e-6);
    }
}

#[test]
fn every_refined_root_is_certified() {
    for n in 0..4u32 {
        for g in ["0.01", "1", "100"] {
            let g: BigRational = anharmonic::decimal::parse_decimal(g).unwrap();
            let mut table = CoefficientTable::new(n, g.clone());
            for order in 1..=8 {
                let p = table.constraint(order);
                for root in positive_roots(&p, 14).unwrap() {
                    assert!(
                        certify(&p, &root),
                        "n={n} g={g} N={order} root {}",
                        root.value
                    );
                    assert!(root.half_width <= rat(1, 100_000_000_000_000));
                }
            }
        }
    }
}

fn normalized(n: u32, g: &str, order: usize) -> WavefunctionModel {
    let problem = OscillatorProblem::parse(n, g, order).unwrap();
    let (model, _) = WavefunctionModel::from_problem(&problem, DEFAULT_DIGITS).unwrap();
    let half_width = model.default_half_width();
    model.normalize(half_width, 4001).unwrap()
}

#[test]
fn wavefunction_parity() {
    for n in 0..4u32 {
        let m = normalized(n, "1", 5);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        for i in 1..200 {
            let x = 0.02 * f64::from(i);
            let (l, r) = (m.psi(-x), m.psi(x));
            assert!(
                (l - sign * r).abs() <= 1e-14 * r.abs().max(1e-300),
                "n={n} x={x}"
            );
        }
    }
}

#[test]
fn wavefunction_node_count() {
    for n in 0..4u32 {
        let m = normalized(n, "0.5", 5);
        let half_width = m.default_half_width();
        let grid = m.grid(half_width, 4001);
        let peak = grid.iter().fold(0.0f64, |acc, p| acc.max(p.psi.abs()));
        // Ignore the numerically vanishing tails.
        let significant: Vec<f64> = grid
            .iter()
            .map(|p| p.psi)
            .filter(|v| v.abs() > 1e-10 * peak)
            .collect();
        let nodes = significant
            .windows(2)
            .filter(|w| w[0].signum() != w[1].signum())
            .count();
        assert_eq!(nodes, n as usize, "n={n}");
    }
}

#[test]
fn log_derivative_matches_total_superpotential() {
    let h = 1e-5;
    for n in 0..4u32 {
        let m = normalized(n, "1", 5);
        for i in 0..40 {
            let x = -1.95 + 0.1 * f64::from(i);
            let Ok(w) = m.total_superpotential(x) else {
                continue;
            };
            if m.psi(x).abs() < 1e-3 * m.norm {
                continue; // too close to a node for a stable finite difference
            }
            let numeric = -(m.psi(x + h) - m.psi(x - h)) / (2.0 * h) / m.psi(x);
            assert!((numeric - w).abs() < 1e-6, "n={n} x={x}: {numeric} vs {w}");
        }
    }
}

#[test]
fn wavefunction_normalizes_to_one() {
    let m = normalized(0, "1", 7);
    let half_width = m.default_half_width();
    let squares: Vec<f64> = m
        .grid(half_width, 4001)
        .iter()
        .map(|p| p.psi * p.psi)
        .collect();
    let h = 2.0 * half_width / 4000.0;
    assert!((anharmonic::wavefn::simpson(&squares, h) - 1.0).abs() < 1e-12);
}

#[test]
fn even_orders_do_not_decay() {
    let problem = OscillatorProblem::parse(0, "1", 8).unwrap();
    let (model, _) = WavefunctionModel::from_problem(&problem, DEFAULT_DIGITS).unwrap();
    assert!(model.f_values.last().unwrap() < &0.0);
    assert!(matches!(
        model.normalize(8.0, 2001),
        Err(anharmonic::Error::TailNotDecayed { .. })
    ));
}

#[test]
fn energy_increases_with_coupling() {
    let couplings = [
        "0.001", "0.01", "0.05", "0.1", "0.5", "1", "10", "100", "1000", "10000",
    ];
    for n in 0..=1u32 {
        for order in 1..=4 {
            let energies: Vec<BigRational> = couplings
                .iter()
                .map(|g| {
                    energy(
                        &OscillatorProblem::parse(n, g, order).unwrap(),
                        DEFAULT_DIGITS,
                    )
                    .unwrap()
                    .energy
                    .value
                })
                .collect();
            assert!(energies.windows(2).all(|w| w[0] < w[1]), "n={n} N={order}");
        }
    }
}

#[test]
fn large_order_differences_alternate() {
    for g in [int(1), int(10)] {
        let s = scan(0, g.clone(), 5, 24, DEFAULT_DIGITS).unwrap();
        let diffs: Vec<BigRational> = s
            .signed_differences()
            .into_iter()
            .skip(1)
            .map(Option::unwrap)
            .collect();
        // diffs[k] = E(6 + k) − E(5 + k)
        for w in diffs.windows(2) {
            assert!(w[0].clone() * w[1].clone() < BigRational::zero(), "g={g}");
        }
        assert_eq!(s.best_order, Some(24), "g={g}");
    }
}
