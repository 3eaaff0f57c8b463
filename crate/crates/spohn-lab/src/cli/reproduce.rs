//! Checks for the built-in 4-player example on two 2-cliques.

use num_traits::{FromPrimitive, One, Zero};
use serde_json::{json, Value};

use crate::cimodel::model_quadrics;
use crate::error::Result;
use crate::game::{Distribution, Game, Shape};
use crate::graph::{Graph, Partition};
use crate::numeric::{pareto_dominates, sample_ci_equilibria, solve_totally_mixed_nash, SolveConfig};
use crate::polyring::{ratio, Polynomial, Rational, VarTable};
use crate::spohnci::nash_ci_system;

/// One reproduced value.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }

    pub fn to_json(&self) -> Value {
        json!({"check": self.name, "status": if self.pass { "PASS" } else { "FAIL" }, "detail": self.detail})
    }
}

/// The linear and quadratic factors l_i, q_i as displayed for the example.
pub const DISPLAYED_FACTORS: [(&str, &str); 4] = [
    ("s34_11 - 2*s34_22", "2*s12_11*s12_21 + s12_21*s12_12 + 3*s12_11*s12_22 + 2*s12_12*s12_22"),
    ("s34_21 - 2*s34_12", "2*s12_11*s12_12 + s12_21*s12_12 + 3*s12_11*s12_22 + 2*s12_21*s12_22"),
    ("s12_11 - 2*s12_22", "2*s34_11*s34_21 + s34_21*s34_12 + 3*s34_11*s34_22 + 2*s34_12*s34_22"),
    ("s12_21 - 2*s12_12", "2*s34_11*s34_12 + s34_21*s34_12 + 3*s34_11*s34_22 + 2*s34_21*s34_22"),
];

/// l_i q_i over the torus of the (2,2) system.
pub fn displayed_product(torus: &VarTable, i: usize) -> Result<Polynomial> {
    let (l, q) = DISPLAYED_FACTORS[i];
    Polynomial::parse(torus, l)?.mul(&Polynomial::parse(torus, q)?)
}

/// Same product with the local indices 12 and 21 exchanged in the linear factor.
pub fn transposed_product(torus: &VarTable, i: usize) -> Result<Polynomial> {
    let swap = |s: &str| s.replace("_12", "_xx").replace("_21", "_12").replace("_xx", "_21");
    let (l, q) = DISPLAYED_FACTORS[i];
    Polynomial::parse(torus, &swap(l))?.mul(&Polynomial::parse(torus, q)?)
}

const Z_PROFILES: [[usize; 4]; 4] = [[1, 1, 1, 1], [1, 1, 1, 0], [1, 0, 1, 1], [1, 0, 1, 0]];

/// (z0, z1, z2, z3) = (p2222, p2221, p2122, p2121).
pub fn z_coordinates(p: &[f64]) -> [f64; 4] {
    let shape = Shape::binary(4);
    Z_PROFILES.map(|prof| p[shape.index(&prof)])
}

/// The point of the CI surface with the given z-coordinates; the other twelve
/// coordinates are fixed multiples (4, 2, 2) of them.
pub fn distribution_from_z<T: Clone + Zero + FromPrimitive + std::ops::Mul<Output = T>>(z: [T; 4]) -> Vec<T> {
    let shape = Shape::binary(4);
    let groups: [[&str; 4]; 4] = [
        ["2222", "1111", "1122", "2211"],
        ["2221", "1112", "1121", "2212"],
        ["2122", "1211", "2111", "1222"],
        ["2121", "1212", "1221", "2112"],
    ];
    let mut p = vec![T::zero(); 16];
    for (zk, names) in z.iter().zip(groups) {
        for (name, mult) in names.iter().zip([1, 4, 2, 2]) {
            let prof: Vec<usize> = name.bytes().map(|b| (b - b'1') as usize).collect();
            p[shape.index(&prof)] = zk.clone() * T::from_i32(mult).expect("small integer");
        }
    }
    p
}

/// φ(a, b) = (ab, a, b, 1) / (9(a+1)(b+1)).
pub fn phi(a: f64, b: f64) -> [f64; 4] {
    let d = 9.0 * (a + 1.0) * (b + 1.0);
    [a * b / d, a / d, b / d, 1.0 / d]
}

fn payoffs13(game: &Game, p: &[f64]) -> Result<[f64; 2]> {
    let v = game.payoff_map(&Distribution::new(p.to_vec())?)?;
    Ok([v[0], v[2]])
}

fn fmt_pair(v: [f64; 2]) -> String {
    format!("({:.12}, {:.12})", v[0], v[1])
}

/// Runs every check; `cfg` drives the numerical solvers.
pub fn example_4player(cfg: &SolveConfig) -> Result<Vec<Check>> {
    let game = Game::builtin("example-4player").expect("built-in game");
    let mut out = Vec::new();

    let sys = nash_ci_system(&Partition::from_sizes(&[2, 2])?, &game)?;
    for i in 0..4 {
        let shown = displayed_product(sys.torus(), i)?;
        let f = &sys.polys()[i];
        out.push(Check::new(format!("equation F{} ~ l{0}q{0}", i + 1), f.is_proportional(&shown), f.to_text()));
    }
    for i in [1, 3] {
        let shown = transposed_product(sys.torus(), i)?;
        out.push(Check::new(
            format!("equation F{} ~ l{0}q{0} with 12 and 21 exchanged in l{0}", i + 1),
            sys.polys()[i].is_proportional(&shown),
            shown.to_text(),
        ));
    }

    let nash = solve_totally_mixed_nash(&game, cfg)?;
    out.push(Check::new("unique totally mixed Nash point", nash.len() == 1, format!("{} found", nash.len())));
    if let Some(pt) = nash.first() {
        let z = z_coordinates(&pt.probabilities);
        let err = z.iter().map(|x| (x - 1.0 / 36.0).abs()).fold(0.0, f64::max);
        out.push(Check::new("Nash point z = (1/36, 1/36, 1/36, 1/36)", err <= 1e-8, format!("{z:?}")));
        let pay = payoffs13(&game, &pt.probabilities)?;
        let err = pay.iter().map(|x| (x - 4.0 / 3.0).abs()).fold(0.0, f64::max);
        out.push(Check::new("Nash payoff (4/3, 4/3)", err <= 1e-8, fmt_pair(pay)));
    }

    let square = 8.0 / 3.0;
    let g4 = Graph::builtin("g4-example").expect("built-in graph");
    let ci = sample_ci_equilibria(&g4, &game, 60, cfg)?;
    let zs: Vec<[f64; 4]> = ci.iter().map(|pt| z_coordinates(&pt.probabilities)).collect();
    let segre = zs.iter().map(|z| (z[0] * z[3] - z[1] * z[2]).abs()).fold(0.0, f64::max);
    let positive = ci.iter().all(|pt| pt.probabilities.iter().all(|&x| x > 0.0));
    out.push(Check::new(
        "at least 50 positive CI points on z0z3 = z1z2",
        ci.len() >= 50 && positive && segre <= 1e-9,
        format!("{} points, max |z0z3 - z1z2| = {segre:.3e}", ci.len()),
    ));
    let pays: Vec<[f64; 2]> = ci.iter().map(|pt| payoffs13(&game, &pt.probabilities)).collect::<Result<_>>()?;
    let inside = pays.iter().all(|v| v.iter().all(|&x| x > 0.0 && x < square));
    out.push(Check::new("CI payoffs inside (0, 8/3)^2", inside, format!("{} images", pays.len())));
    let formula = zs
        .iter()
        .zip(&pays)
        .map(|(z, v)| (v[0] - 24.0 * (z[0] + z[2])).abs().max((v[1] - 24.0 * (z[0] + z[1])).abs()))
        .fold(0.0, f64::max);
    out.push(Check::new("PX1 = 24(z0+z2), PX3 = 24(z0+z1) on samples", formula <= 1e-9, format!("max error {formula:.3e}")));
    let better = pays.iter().filter(|v| pareto_dominates(&v[..], &[4.0 / 3.0; 2])).count();
    out.push(Check::new("a sampled CI point Pareto-dominates the Nash payoff", better > 0, format!("{better} points")));

    let mut worst: f64 = 0.0;
    for u in (1..=26).map(|k| k as f64 / 10.0) {
        for v in (1..=26).map(|k| k as f64 / 10.0) {
            let (b, a) = (u / (square - u), v / (square - v));
            let got = payoffs13(&game, &distribution_from_z(phi(a, b)))?;
            worst = worst.max((got[0] - u).abs().max((got[1] - v).abs()));
        }
    }
    out.push(Check::new("0.1-grid of the payoff square reached through phi", worst <= 0.05, format!("max error {worst:.3e}")));

    // On each curve one payoff is 4/3 and the other is free; `spread` is the
    // largest free payoff seen.
    let mut on_line = true;
    let mut spread: f64 = 0.0;
    let mut curve_pts = 0;
    for edge in [(1, 2), (3, 4)] {
        let g = Graph::from_labeled_edges(4, &[edge])?;
        for pt in sample_ci_equilibria(&g, &game, 20, cfg)? {
            curve_pts += 1;
            let v = payoffs13(&game, &pt.probabilities)?;
            let fixed = if (v[0] - 4.0 / 3.0).abs() <= 1e-8 { Some(v[1]) } else if (v[1] - 4.0 / 3.0).abs() <= 1e-8 { Some(v[0]) } else { None };
            match fixed {
                Some(free) if free > 0.0 && free < square => spread = spread.max(free),
                _ => on_line = false,
            }
        }
    }
    out.push(Check::new(
        "Nash CI curve payoffs on {4/3}x(0,8/3) or (0,8/3)x{4/3}",
        on_line && curve_pts > 0,
        format!("{curve_pts} points"),
    ));
    out.push(Check::new(
        "Nash CI curve payoffs within the displayed intervals {4/3}x(0,4/3), (0,4/3)x{4/3}",
        on_line && curve_pts > 0 && spread < 4.0 / 3.0,
        format!("largest free payoff {spread:.6}"),
    ));

    let minors = game.spohn_minors();
    for z in [[3, 3, 1, 1], [3, 1, 3, 1]] {
        let p = distribution_from_z(z.map(|k| ratio(k, 72)));
        let total: Rational = p.iter().cloned().sum();
        let on_curve = [(1, 2), (3, 4)].iter().any(|&e| {
            let g = Graph::from_labeled_edges(4, &[e]).expect("valid edge");
            let quadrics = model_quadrics(&g, game.choices()).expect("binary");
            quadrics.iter().chain(&minors).all(|q| q.eval_exact(&p).is_zero())
        });
        let pay = game.payoff_map(&Distribution::new(p.clone())?)?;
        let nash = ratio(4, 3);
        let dominates = pay[0] >= nash && pay[2] >= nash && (pay[0] > nash || pay[2] > nash);
        out.push(Check::new(
            format!("z = ({}/72, {}/72, {}/72, {}/72) on a Nash CI curve and Pareto-better", z[0], z[1], z[2], z[3]),
            total.is_one() && on_curve && dominates,
            format!("payoff ({}, {})", pay[0], pay[2]),
        ));
    }
    Ok(out)
}
