use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spohn_lab::chow::{nash_ci_degree, ChowClass};
use spohn_lab::cimodel::{model_quadrics, param_map};
use spohn_lab::numeric::{jacobian_f64, sample_ci_equilibria, solve_totally_mixed_nash, SolveConfig};
use spohn_lab::polyring::{det2, ratio, Matrix2x2};
use spohn_lab::spohnci::{build_system, nash_ci_system};
use spohn_lab::universality::lift_game;
use spohn_lab::{Distribution, Game, Graph, Monomial, Partition, Polynomial, Rational, VarTable};

fn xyz() -> VarTable {
    VarTable::new(["x", "y", "z"]).unwrap()
}

fn poly_strategy(nvars: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64, i64)>> {
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), -5i64..=5, 1i64..=3), 0..5)
}

fn build(vars: &VarTable, raw: &[(Vec<u32>, i64, i64)]) -> Polynomial {
    Polynomial::from_terms(
        vars,
        raw.iter().map(|(e, n, d)| {
            let pairs = e.iter().enumerate().filter(|(_, &x)| x > 0).map(|(v, &x)| (v, x)).collect();
            (Monomial::from_pairs(pairs), ratio(*n, *d))
        }),
    )
}

fn point_strategy(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-6i64..=6, 1i64..=4), n).prop_map(|v| v.into_iter().map(|(a, b)| ratio(a, b)).collect())
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |w| (u, w))).collect();
            let edges: Vec<(usize, usize)> = pairs.into_iter().zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn game_for(n: usize, seed: u64) -> Game {
    Game::random_binary_in(n, 1000, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn product_distribution(marginals: &[Rational]) -> Distribution<Rational> {
    let n = marginals.len();
    let probs = (0..1usize << n)
        .map(|idx| {
            (0..n).fold(Rational::one(), |acc, i| {
                let first = idx >> (n - 1 - i) & 1 == 0;
                acc * if first { marginals[i].clone() } else { Rational::one() - &marginals[i] }
            })
        })
        .collect();
    Distribution::new(probs).unwrap()
}

fn marginal_strategy(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(1i64..=9, n).prop_map(|v| v.into_iter().map(|k| ratio(k, 10)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_strategy(3), b in poly_strategy(3), c in poly_strategy(3)) {
        let v = xyz();
        let (a, b, c) = (build(&v, &a), build(&v, &b), build(&v, &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_undoes_multiplication(a in poly_strategy(3), b in poly_strategy(3)) {
        let v = xyz();
        let (a, b) = (build(&v, &a), build(&v, &b));
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).divide_exact(&b).unwrap(), Some(a));
    }

    #[test]
    fn substitution_commutes_with_evaluation(
        p in poly_strategy(3),
        images in prop::collection::vec(poly_strategy(2), 3),
        pt in point_strategy(2),
    ) {
        let (v, uv) = (xyz(), VarTable::new(["u", "w"]).unwrap());
        let p = build(&v, &p);
        let images: Vec<Polynomial> = images.iter().map(|r| build(&uv, r)).collect();
        let values: Vec<Rational> = images.iter().map(|q| q.eval_exact(&pt)).collect();
        prop_assert_eq!(p.substitute(&uv, &images).unwrap().eval_exact(&pt), p.eval_exact(&values));
    }

    #[test]
    fn det2_is_alternating(e in prop::collection::vec(poly_strategy(3), 4)) {
        let v = xyz();
        let m: Vec<Polynomial> = e.iter().map(|r| build(&v, r)).collect();
        let d = det2(&Matrix2x2::new(m[0].clone(), m[1].clone(), m[2].clone(), m[3].clone()).unwrap());
        let swapped = det2(&Matrix2x2::new(m[2].clone(), m[3].clone(), m[0].clone(), m[1].clone()).unwrap());
        prop_assert_eq!(swapped, -&d);
    }

    #[test]
    fn expected_payoff_is_linear(seed in any::<u64>(), q1 in marginal_strategy(3), q2 in marginal_strategy(3), t in 0i64..=10) {
        let (x, y) = (game_for(3, seed), game_for(3, seed ^ 1));
        let sum = Game::new(vec![2; 3], (0..3).map(|i| x.tensor(i).iter().zip(y.tensor(i)).map(|(a, b)| a + b).collect()).collect()).unwrap();
        let (p, q) = (product_distribution(&q1), product_distribution(&q2));
        let t = ratio(t, 10);
        let mix = Distribution::new(p.probs().iter().zip(q.probs()).map(|(a, b)| &t * a + (Rational::one() - &t) * b).collect()).unwrap();
        for i in 0..3 {
            let lhs = x.expected_payoff(&mix, i).unwrap();
            let rhs = &t * x.expected_payoff(&p, i).unwrap() + (Rational::one() - &t) * x.expected_payoff(&q, i).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(sum.expected_payoff(&p, i).unwrap(), x.expected_payoff(&p, i).unwrap() + y.expected_payoff(&p, i).unwrap());
        }
    }

    #[test]
    fn minors_match_conditional_payoffs(seed in any::<u64>(), q in marginal_strategy(3)) {
        let game = game_for(3, seed);
        let p = product_distribution(&q);
        let minors = game.spohn_minors();
        for i in 0..3 {
            let w1 = q[i].clone();
            let w2 = Rational::one() - &q[i];
            let c1 = game.conditional_expected_payoff(&p, i, 0).unwrap();
            let c2 = game.conditional_expected_payoff(&p, i, 1).unwrap();
            prop_assert_eq!(minors[i].eval_exact(p.probs()), w1 * w2 * (c2 - c1));
        }
    }

    #[test]
    fn relabelling_players_commutes(seed in any::<u64>(), q in marginal_strategy(3), perm in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        let game = game_for(3, seed);
        let moved = game.relabel(&perm).unwrap();
        let q_moved: Vec<Rational> = perm.iter().map(|&o| q[o].clone()).collect();
        let (p, p_moved) = (product_distribution(&q), product_distribution(&q_moved));
        for t in 0..3 {
            prop_assert_eq!(moved.expected_payoff(&p_moved, t).unwrap(), game.expected_payoff(&p, perm[t]).unwrap());
        }
    }

    #[test]
    fn markov_statements_shrink_with_edges(g in graph_strategy(5), extra in prop::collection::vec((0usize..5, 0usize..5), 0..4)) {
        let mut bigger = g.clone();
        let n = g.vertex_count();
        for (u, w) in extra {
            if u % n != w % n {
                bigger.add_edge(u % n, w % n);
            }
        }
        let small = g.global_markov().unwrap();
        prop_assert!(bigger.global_markov().unwrap().is_subset(&small));
    }

    #[test]
    fn maximal_cliques_are_maximal_and_cover(g in graph_strategy(6)) {
        let cliques = g.maximal_cliques();
        let mut covered = spohn_lab::VertexSet::empty();
        for &c in &cliques {
            prop_assert!(g.is_clique(c));
            for v in 0..g.vertex_count() {
                if !c.contains(v) {
                    let mut grown = c;
                    grown.insert(v);
                    prop_assert!(!g.is_clique(grown));
                }
            }
            covered = covered.union(c);
        }
        prop_assert_eq!(covered, g.vertices());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn parametrization_kills_the_ideal(g in graph_strategy(5)) {
        let pm = param_map(&g);
        for q in model_quadrics(&g, &vec![2; g.vertex_count()]).unwrap() {
            prop_assert!(pm.apply(&q).unwrap().is_zero());
        }
    }

    #[test]
    fn submodels_satisfy_larger_models(g in graph_strategy(5), extra in prop::collection::vec((0usize..5, 0usize..5), 1..4), seed in any::<u64>()) {
        let mut bigger = g.clone();
        let n = g.vertex_count();
        for (u, w) in extra {
            if u % n != w % n {
                bigger.add_edge(u % n, w % n);
            }
        }
        let pm = param_map(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma: Vec<f64> = (0..pm.torus().len()).map(|_| rand::Rng::random_range(&mut rng, 0.2..2.0)).collect();
        let p = pm.push_forward(&sigma);
        let scale = p.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for q in model_quadrics(&bigger, &vec![2; n]).unwrap() {
            prop_assert!(q.eval_f64(&p).abs() <= 1e-12 * scale * scale);
        }
    }

    #[test]
    fn multidegree_law_and_reconstruction(g in graph_strategy(4), seed in any::<u64>()) {
        let n = g.vertex_count();
        let sys = build_system(&g, &game_for(n, seed)).unwrap();
        sys.verify_reconstruction().unwrap();
        let cliques = sys.param().cliques().to_vec();
        for i in 0..n {
            let comp = g.component_of(i);
            let want: Vec<u32> = cliques
                .iter()
                .map(|c| if g.is_isolated(i) && c.contains(i) { 0 } else if c.is_subset(comp) { 2 } else { 1 })
                .collect();
            prop_assert_eq!(sys.polys()[i].multidegree().unwrap(), want);
        }
    }

    #[test]
    fn partition_systems_have_one_equation_per_player(sizes in prop::collection::vec(1usize..=3, 1..=3), seed in any::<u64>()) {
        let part = Partition::from_sizes(&sizes).unwrap();
        prop_assume!(part.players() >= 2);
        let sys = nash_ci_system(&part, &game_for(part.players(), seed)).unwrap();
        prop_assert_eq!(sys.polys().len(), part.players());
    }

    #[test]
    fn chow_product_matches_untruncated_product(
        sizes in prop::collection::vec(1usize..=2, 1..=3),
        a in prop::collection::vec((prop::collection::vec(0u32..4, 3), -4i64..=4), 0..4),
        b in prop::collection::vec((prop::collection::vec(0u32..4, 3), -4i64..=4), 0..4),
    ) {
        let k = sizes.len();
        let bounds: Vec<u32> = sizes.iter().map(|&s| 1u32 << s).collect();
        let clip = |raw: &[(Vec<u32>, i64)]| -> Vec<(Vec<u32>, BigInt)> {
            raw.iter().map(|(e, c)| (e[..k].iter().zip(&bounds).map(|(x, b)| x % b).collect(), BigInt::from(*c))).collect()
        };
        let (ta, tb) = (clip(&a), clip(&b));
        let got = ChowClass::from_terms(&sizes, ta.clone()).mul(&ChowClass::from_terms(&sizes, tb.clone())).unwrap();
        let mut full: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (ea, ca) in &ta {
            for (eb, cb) in &tb {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *full.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        let want = ChowClass::from_terms(&sizes, full.into_iter().filter(|(e, _)| e.iter().zip(&bounds).all(|(x, b)| x < b)));
        prop_assert_eq!(got, want);
    }

    #[test]
    fn degree_ignores_size_order(sizes in prop::collection::vec(1usize..=3, 1..=3).prop_shuffle()) {
        let mut sorted = sizes.clone();
        sorted.sort();
        let a = nash_ci_degree(&Partition::from_sizes(&sizes).unwrap()).unwrap();
        let b = nash_ci_degree(&Partition::from_sizes(&sorted).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn finite_differences_match_the_jacobian(
        raw in prop::collection::vec(poly_strategy(3), 3),
        x in prop::collection::vec(-2.0f64..2.0, 3),
    ) {
        let v = xyz();
        let polys: Vec<Polynomial> = raw.iter().map(|r| build(&v, r)).collect();
        let jac = jacobian_f64(&polys, &x);
        let h = 1e-6;
        for (r, p) in polys.iter().enumerate() {
            for c in 0..3 {
                let (mut up, mut down) = (x.clone(), x.clone());
                up[c] += h;
                down[c] -= h;
                let fd = (p.eval_f64(&up) - p.eval_f64(&down)) / (2.0 * h);
                let exact = jac[(r, c)];
                prop_assert!((fd - exact).abs() <= 1e-4 * exact.abs().max(1.0), "{} vs {}", fd, exact);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn sampled_points_are_valid_equilibria(g in graph_strategy(4), seed in any::<u64>()) {
        let n = g.vertex_count();
        let game = game_for(n, seed);
        let cfg = SolveConfig::new(seed);
        for pt in sample_ci_equilibria(&g, &game, 3, &cfg).unwrap() {
            let scale = pt.probabilities.iter().fold(1.0f64, |m, x| m.max(x.abs()));
            prop_assert!(pt.quadric_residual <= cfg.tol * scale);
            prop_assert!(pt.minor_residual <= 1e2 * cfg.tol * scale);
            prop_assert!(pt.probabilities.iter().all(|&x| x > 0.0));
            prop_assert!((pt.probabilities.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn nash_points_lie_on_every_model(g in graph_strategy(3), seed in any::<u64>()) {
        let n = g.vertex_count();
        let game = game_for(n, seed);
        let sys = build_system(&g, &game).unwrap();
        let pm = sys.param();
        for pt in solve_totally_mixed_nash(&game, &SolveConfig::new(seed)).unwrap() {
            let shape = game.shape();
            let q: Vec<f64> = (0..n).map(|i| (0..shape.size()).filter(|&k| shape.strategy_of(k, i) == 0).map(|k| pt.probabilities[k]).sum()).collect();
            // Each vertex's marginal is carried by the first clique containing it.
            let owner: Vec<usize> = (0..n).map(|v| pm.cliques().iter().position(|c| c.contains(v)).unwrap()).collect();
            let mut sigma = vec![1.0; pm.torus().len()];
            for (c, clique) in pm.cliques().iter().enumerate() {
                let members = clique.to_vec();
                for local in 0..1usize << members.len() {
                    let idx: Vec<usize> = (0..members.len()).map(|t| local >> (members.len() - 1 - t) & 1).collect();
                    let value: f64 = members
                        .iter()
                        .zip(&idx)
                        .filter(|(v, _)| owner[**v] == c)
                        .map(|(v, &j)| if j == 0 { q[*v] } else { 1.0 - q[*v] })
                        .product();
                    sigma[pm.sigma(c, &idx)] = value;
                }
            }
            let p = pm.push_forward(&sigma);
            prop_assert!(p.iter().zip(&pt.probabilities).all(|(a, b)| (a - b).abs() <= 1e-9));
            for f in sys.polys() {
                prop_assert!(f.eval_f64(&sigma).abs() <= 1e-9 * f.terms().map(|(_, c)| c.to_string().parse::<f64>().unwrap_or(1.0).abs()).fold(1.0, f64::max));
            }
        }
    }

    #[test]
    fn lifts_reproduce_base_and_targets(n in 2usize..=3, l in 1usize..=2, seed in any::<u64>()) {
        let lifted = lift_game(&game_for(n, seed), l).unwrap();
        prop_assert!(lifted.report.passed());
        prop_assert_eq!(lifted.game.players(), n + 2 * l);
    }
}

#[test]
fn degrees_are_positive_beyond_one_player() {
    fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        (1..=n.min(max))
            .flat_map(|f| partitions(n - f, f).into_iter().map(move |mut r| {
                r.push(f);
                r
            }))
            .collect()
    }
    for n in 2..=5 {
        for sizes in partitions(n, n) {
            let d = nash_ci_degree(&Partition::from_sizes(&sizes).unwrap()).unwrap();
            assert!(d > BigInt::zero(), "{sizes:?}");
        }
    }
}

#[test]
fn complete_graph_face_count() {
    for n in 1..=8 {
        assert_eq!(Graph::complete(n).clique_complex_face_counts().1, (1 << n) - n - 1);
    }
}
