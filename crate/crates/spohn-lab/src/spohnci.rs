//! Spohn CI systems: the torus polynomials F_i for a graph, the Nash CI
//! polynomials for disjoint cliques, the W generators, and the inverse of the
//! payoff-to-divisor map.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cimodel::{param_map, ParamMap};
use crate::error::{Error, Result};
use crate::game::{Game, Shape};
use crate::graph::{Graph, Partition, VertexSet};
use crate::polyring::{det2, rational_to_string, Matrix2x2, Monomial, Polynomial, Rational, VarTable};

/// What was divided out of the raw minor: `raw = constant · ∏ factors · F`.
#[derive(Clone, Debug, PartialEq)]
pub struct StrippedFactors {
    pub constant: Rational,
    pub factors: Vec<Polynomial>,
}

impl StrippedFactors {
    pub fn product(&self, vars: &VarTable) -> Polynomial {
        let mut acc = Polynomial::constant(vars, self.constant.clone());
        for f in &self.factors {
            acc = &acc * f;
        }
        acc
    }
}

/// F_1,…,F_n on the clique torus of a graph, in primitive normal form.
#[derive(Clone, Debug)]
pub struct SpohnCISystem {
    game: Game,
    param: ParamMap,
    polys: Vec<Polynomial>,
    stripped: Vec<StrippedFactors>,
}

impl SpohnCISystem {
    pub fn graph(&self) -> &Graph {
        self.param.graph()
    }

    pub fn game(&self) -> &Game {
        &self.game
    }

    pub fn param(&self) -> &ParamMap {
        &self.param
    }

    pub fn torus(&self) -> &VarTable {
        self.param.torus()
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn stripped(&self) -> &[StrippedFactors] {
        &self.stripped
    }

    /// The Spohn minor of player `i` composed with the parametrization.
    pub fn raw_minor(&self, i: usize) -> Result<Polynomial> {
        let minors = self.game.spohn_minors();
        self.param.apply(&minors[i])
    }

    /// Checks `raw = constant · ∏ factors · F_i` exactly, and that the factors divide.
    pub fn verify_reconstruction(&self) -> Result<()> {
        let minors = self.game.spohn_minors();
        for (i, f) in self.polys.iter().enumerate() {
            let raw = self.param.apply(&minors[i])?;
            let rebuilt = &self.stripped[i].product(self.torus()) * f;
            if rebuilt != raw {
                return Err(Error::Internal(format!("reconstruction fails for player {}", i + 1)));
            }
            if raw.is_zero() {
                continue;
            }
            let divisor = StrippedFactors { constant: Rational::one(), factors: self.stripped[i].factors.clone() };
            match raw.divide_exact(&divisor.product(self.torus()))? {
                Some(q) if q.is_proportional(f) => {}
                _ => return Err(Error::Internal(format!("stripped factors do not divide the minor of player {}", i + 1))),
            }
        }
        Ok(())
    }

    /// Torus declaration followed by one F per line.
    pub fn export_text(&self) -> String {
        let mut s = self.torus().declaration();
        s.push('\n');
        for f in &self.polys {
            s.push_str(&f.to_text());
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> Value {
        let stripped: Vec<Value> = self
            .stripped
            .iter()
            .map(|s| {
                json!({
                    "constant": rational_to_string(&s.constant),
                    "factors": s.factors.iter().map(Polynomial::to_text).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "graph": self.graph().to_json(),
            "torus": self.torus().names(),
            "blocks": self.param.cliques().iter().map(|c| c.labels()).collect::<Vec<_>>(),
            "polynomials": self.polys.iter().map(Polynomial::to_text).collect::<Vec<_>>(),
            "multidegrees": self.polys.iter().map(|f| f.multidegree().ok()).collect::<Vec<_>>(),
            "stripped": stripped,
        })
    }
}

/// All 0-based assignments of `verts`; entry `v` of each vector is meaningful only for `v ∈ verts`.
fn assignments(verts: &[usize], n: usize) -> Vec<Vec<usize>> {
    (0..1usize << verts.len())
        .map(|mask| {
            let mut prof = vec![0; n];
            for (pos, &v) in verts.iter().enumerate() {
                prof[v] = (mask >> (verts.len() - 1 - pos)) & 1;
            }
            prof
        })
        .collect()
}

/// Σ_J X_J · image(J) over profiles with J_i = a, optionally divided by `strip`.
fn weighted_column(pm: &ParamMap, tensor: &[Rational], i: usize, a: usize, strip: Option<usize>) -> Polynomial {
    let shape = Shape::binary(pm.graph().vertex_count());
    let terms = (0..shape.size()).filter(|&k| shape.strategy_of(k, i) == a && !tensor[k].is_zero()).map(|k| {
        let m = pm.image(k);
        let m = match strip {
            Some(v) => m.div(&Monomial::var(v)).expect("σ of the isolated vertex divides the image"),
            None => m.clone(),
        };
        (m, tensor[k].clone())
    });
    Polynomial::from_terms(pm.torus(), terms)
}

fn normalize(f: Polynomial, factors: Vec<Polynomial>) -> (Polynomial, StrippedFactors) {
    if f.is_zero() {
        return (f, StrippedFactors { constant: Rational::one(), factors });
    }
    let prim = f.primitive();
    let constant = f.leading_term().expect("nonzero").1 / prim.leading_term().expect("nonzero").1;
    (prim, StrippedFactors { constant, factors })
}

/// Unnormalized structural F_i for a general graph, with the factors it omits.
fn structural_poly(pm: &ParamMap, tensor: &[Rational], i: usize) -> (Polynomial, Vec<Polynomial>) {
    let g = pm.graph();
    let n = g.vertex_count();
    let torus = pm.torus();
    let comp = g.component_of(i);
    let (inside, outside): (Vec<usize>, Vec<usize>) = (0..pm.cliques().len()).partition(|&c| pm.cliques()[c].is_subset(comp));

    let mut factors = Vec::new();
    if comp != g.vertices() {
        let rest = g.vertices().difference(comp).to_vec();
        let phi = Polynomial::from_terms(
            torus,
            assignments(&rest, n).into_iter().map(|prof| {
                let m = Monomial::from_pairs(outside.iter().map(|&c| (pm.sigma_of_profile(c, &prof), 1)).collect());
                (m, Rational::one())
            }),
        );
        factors.push(phi);
    }

    if g.is_isolated(i) {
        let s1 = pm.sigma(inside[0], &[0]);
        let s2 = pm.sigma(inside[0], &[1]);
        let r1 = weighted_column(pm, tensor, i, 0, Some(s1));
        let r2 = weighted_column(pm, tensor, i, 1, Some(s2));
        factors.push(Polynomial::monomial(torus, Monomial::from_pairs(vec![(s1, 1), (s2, 1)]), Rational::one()));
        return (&r2 - &r1, factors);
    }

    let comp_verts = comp.to_vec();
    let mut col1 = [Polynomial::zero(torus), Polynomial::zero(torus)];
    for prof in assignments(&comp_verts, n) {
        let m = Monomial::from_pairs(inside.iter().map(|&c| (pm.sigma_of_profile(c, &prof), 1)).collect());
        col1[prof[i]] = &col1[prof[i]] + &Polynomial::monomial(torus, m, Rational::one());
    }
    let col2 = [weighted_column(pm, tensor, i, 0, None), weighted_column(pm, tensor, i, 1, None)];
    let m = Matrix2x2::new(col1[0].clone(), col2[0].clone(), col1[1].clone(), col2[1].clone()).expect("one table");
    (det2(&m), factors)
}

/// Builds F_1,…,F_n of a binary game on graph `g`.
pub fn build_system(g: &Graph, game: &Game) -> Result<SpohnCISystem> {
    game.require_binary()?;
    if game.players() != g.vertex_count() {
        return Err(Error::Shape(format!("game has {} players, graph {} vertices", game.players(), g.vertex_count())));
    }
    let pm = param_map(g);
    let built: Vec<(Polynomial, StrippedFactors)> = (0..game.players())
        .into_par_iter()
        .map(|i| {
            let (f, factors) = structural_poly(&pm, game.tensor(i), i);
            normalize(f, factors)
        })
        .collect();
    let (polys, stripped): (Vec<_>, Vec<_>) = built.into_iter().unzip();
    for (i, f) in polys.iter().enumerate() {
        if !f.is_zero() && f.multidegree()? != expected_multidegree(g, i) {
            return Err(Error::Internal(format!("F_{} has the wrong multidegree", i + 1)));
        }
    }
    Ok(SpohnCISystem { game: game.clone(), param: pm, polys, stripped })
}

/// Prescribed multidegree of F_i, one entry per maximal clique.
pub fn expected_multidegree(g: &Graph, i: usize) -> Vec<u32> {
    let comp = g.component_of(i);
    let isolated = g.is_isolated(i);
    g.maximal_cliques()
        .iter()
        .map(|c| match () {
            _ if isolated && c.contains(i) => 0,
            _ if isolated => 1,
            _ if c.is_subset(comp) => 2,
            _ => 1,
        })
        .collect()
}

/// f_{≥2}: cliques with at least two vertices.
pub fn expected_spohn_ci_dimension(g: &Graph) -> usize {
    g.clique_complex_face_counts().1
}

/// Σ 2^{n_i} − k − n.
pub fn expected_nash_ci_dimension(part: &Partition) -> usize {
    let sizes = part.sizes();
    sizes.iter().map(|&s| (1usize << s) - 1 - s).sum()
}

fn partition_param(part: &Partition) -> ParamMap {
    param_map(&part.graph())
}

fn clique_index(pm: &ParamMap, block: VertexSet) -> usize {
    pm.cliques().iter().position(|c| *c == block).expect("blocks are the maximal cliques")
}

/// Unnormalized F for one player of a disjoint-clique game, read off the
/// reduced 2×2 matrix directly; linear in `tensor`.
fn nash_poly_with(pm: &ParamMap, part: &Partition, tensor: &[Rational], player: usize) -> Polynomial {
    let torus = pm.torus();
    let b = part.block_of(player).expect("player belongs to a block");
    let block = part.blocks()[b];
    let c = clique_index(pm, block);
    if block.len() == 1 {
        let s1 = pm.sigma(c, &[0]);
        let s2 = pm.sigma(c, &[1]);
        let r1 = weighted_column(pm, tensor, player, 0, Some(s1));
        let r2 = weighted_column(pm, tensor, player, 1, Some(s2));
        return &r2 - &r1;
    }
    let k = block.len();
    let pos = block.iter().position(|v| v == player).expect("player in block");
    let mut col1 = [Polynomial::zero(torus), Polynomial::zero(torus)];
    for idx in 0..1usize << k {
        let local: Vec<usize> = (0..k).map(|q| (idx >> (k - 1 - q)) & 1).collect();
        let v = Polynomial::var(torus, pm.sigma(c, &local));
        col1[local[pos]] = &col1[local[pos]] + &v;
    }
    let col2 = [weighted_column(pm, tensor, player, 0, None), weighted_column(pm, tensor, player, 1, None)];
    &(&col1[0] * &col2[1]) - &(&col1[1] * &col2[0])
}

fn check_partition_game(part: &Partition, game: &Game) -> Result<()> {
    game.require_binary()?;
    if game.players() != part.players() {
        return Err(Error::Shape(format!("game has {} players, partition {}", game.players(), part.players())));
    }
    Ok(())
}

/// Nash CI polynomials F_{(1,1)},…,F_{(k,n_k)}, listed by player.
pub fn nash_ci_system(part: &Partition, game: &Game) -> Result<SpohnCISystem> {
    check_partition_game(part, game)?;
    let pm = partition_param(part);
    let g = pm.graph().clone();
    let built: Vec<(Polynomial, StrippedFactors)> = (0..game.players())
        .into_par_iter()
        .map(|i| {
            let f = nash_poly_with(&pm, part, game.tensor(i), i);
            let b = part.block_of(i).expect("in a block");
            let mut factors = Vec::new();
            if part.num_blocks() > 1 {
                let mut phi = Polynomial::one(pm.torus());
                for (c, clique) in pm.cliques().iter().enumerate() {
                    if *clique != part.blocks()[b] {
                        let all: Vec<usize> = (0..1usize << clique.len()).map(|j| pm.sigma(c, &index_bits(j, clique.len()))).collect();
                        phi = &phi * &Polynomial::sum_of_vars(pm.torus(), all);
                    }
                }
                factors.push(phi);
            }
            if part.blocks()[b].len() == 1 {
                let c = clique_index(&pm, part.blocks()[b]);
                let m = Monomial::from_pairs(vec![(pm.sigma(c, &[0]), 1), (pm.sigma(c, &[1]), 1)]);
                factors.push(Polynomial::monomial(pm.torus(), m, Rational::one()));
            }
            normalize(f, factors)
        })
        .collect();
    let (polys, stripped): (Vec<_>, Vec<_>) = built.into_iter().unzip();
    for (i, f) in polys.iter().enumerate() {
        if !f.is_zero() && f.multidegree()? != expected_multidegree(&g, i) {
            return Err(Error::Internal(format!("F_{} has the wrong multidegree", i + 1)));
        }
    }
    Ok(SpohnCISystem { game: game.clone(), param: pm, polys, stripped })
}

fn index_bits(idx: usize, k: usize) -> Vec<usize> {
    (0..k).map(|q| (idx >> (k - 1 - q)) & 1).collect()
}

fn block_player(part: &Partition, block: usize, l: usize) -> Result<usize> {
    let b = part
        .blocks()
        .get(block)
        .ok_or_else(|| Error::InvalidPartition(format!("no block {}", block + 1)))?;
    b.iter()
        .nth(l)
        .ok_or_else(|| Error::InvalidPartition(format!("block {} has no position {}", block + 1, l + 1)))
}

/// Generators of W_{(i,l)}: `block` and `l` are 0-based.
pub fn w_system_generators(part: &Partition, block: usize, l: usize) -> Result<Vec<Polynomial>> {
    block_player(part, block, l)?;
    let set = part.blocks()[block];
    let k = set.len();
    if k < 2 {
        return Err(Error::InvalidPartition("a singleton block has a complete linear system; no W generators".into()));
    }
    let pm = partition_param(part);
    let torus = pm.torus();
    let c = clique_index(&pm, set);
    // σ with strategy `a` at position l and the other positions given by `rest`.
    let sig = |rest: usize, a: usize| {
        let mut local = index_bits(rest, k - 1);
        local.insert(l, a);
        Polynomial::var(torus, pm.sigma(c, &local))
    };
    let others = 1usize << (k - 1);
    let sum = |a: usize| (0..others).fold(Polynomial::zero(torus), |acc, r| &acc + &sig(r, a));
    let (sum1, sum2) = (sum(0), sum(1));
    let mut out = Vec::with_capacity(2 * others + 1);
    for r in 0..others {
        out.push(&sig(r, 0) * &sum2);
    }
    for r in 0..others {
        out.push(&sig(r, 1) * &sum1);
    }
    let mut last = &sig(0, 0) * &sig(0, 1);
    for r in 1..others {
        for s in 1..others {
            last = &last - &(&sig(r, 0) * &sig(s, 1));
        }
    }
    out.push(last);
    Ok(out)
}

/// Columns of the linear map X ↦ F_{(i,l)}(X): the (unnormalized) image of each unit tensor.
pub fn payoff_map_columns(part: &Partition, block: usize, l: usize) -> Result<Vec<Polynomial>> {
    let player = block_player(part, block, l)?;
    let pm = partition_param(part);
    let size = 1usize << part.players();
    Ok((0..size)
        .into_par_iter()
        .map(|k| {
            let mut unit = vec![Rational::zero(); size];
            unit[k] = Rational::one();
            nash_poly_with(&pm, part, &unit, player)
        })
        .collect())
}

/// Unnormalized F_{(i,l)} of a single payoff tensor.
pub fn nash_polynomial(part: &Partition, block: usize, l: usize, tensor: &[Rational]) -> Result<Polynomial> {
    let player = block_player(part, block, l)?;
    if tensor.len() != 1usize << part.players() {
        return Err(Error::Shape(format!("tensor has {} entries", tensor.len())));
    }
    Ok(nash_poly_with(&partition_param(part), part, tensor, player))
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let den = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter().map(|q| q.numer() * (&den / q.denom())).collect()
}

fn reduce_row(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// A payoff tensor X with F_{(i,l)}(X) = target exactly. Free variables are set to zero.
pub fn solve_payoff_preimage(part: &Partition, block: usize, l: usize, target: &Polynomial) -> Result<Vec<Rational>> {
    let columns = payoff_map_columns(part, block, l)?;
    let pm = partition_param(part);
    let torus = pm.torus();
    let target = if target.vars() == torus { target.clone() } else { target.rename(torus, |_| None)? };

    let mut monos: BTreeSet<Monomial> = BTreeSet::new();
    for col in &columns {
        monos.extend(col.terms().map(|(m, _)| m.clone()));
    }
    let outside: Vec<String> = target
        .terms()
        .filter(|(m, _)| !monos.contains(*m))
        .map(|(m, _)| Polynomial::monomial(torus, m.clone(), Rational::one()).to_text())
        .collect();
    if !outside.is_empty() {
        return Err(Error::NotInImage(outside));
    }
    let monos: Vec<Monomial> = monos.into_iter().collect();
    let ncols = columns.len();
    let mut rows: Vec<Vec<BigInt>> = monos
        .iter()
        .map(|m| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c.coefficient(m)).collect();
            row.push(target.coefficient(m));
            integer_row(&row)
        })
        .collect();
    let labels: Vec<String> = monos.iter().map(|m| Polynomial::monomial(torus, m.clone(), Rational::one()).to_text()).collect();
    let mut origin: Vec<usize> = (0..rows.len()).collect();

    // fraction-free Gauss–Jordan
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&s| !rows[s][c].is_zero()) else { continue };
        rows.swap(r, p);
        origin.swap(r, p);
        let pivot_row = rows[r].clone();
        for s in 0..rows.len() {
            if s == r || rows[s][c].is_zero() {
                continue;
            }
            let e = rows[s][c].clone();
            let row = &mut rows[s];
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &pivot_row[c] - &e * y;
            }
            reduce_row(row);
        }
        pivots.push((r, c));
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let inconsistent: Vec<String> = (r..rows.len()).filter(|&s| !rows[s][ncols].is_zero()).map(|s| labels[origin[s]].clone()).collect();
    if !inconsistent.is_empty() {
        return Err(Error::NotInImage(inconsistent));
    }
    let mut x = vec![Rational::zero(); ncols];
    for &(row, c) in &pivots {
        x[c] = Rational::new(rows[row][ncols].clone(), rows[row][c].clone());
    }
    let back = columns
        .iter()
        .zip(&x)
        .filter(|(_, v)| !v.is_zero())
        .fold(Polynomial::zero(torus), |acc, (col, v)| &acc + &col.scale(v));
    if back != target {
        return Err(Error::Internal("payoff preimage failed the round-trip check".into()));
    }
    Ok(x)
}

/// Number of distinct monomials with nonzero coefficient, per player; handy in reports.
pub fn term_counts(sys: &SpohnCISystem) -> BTreeMap<usize, usize> {
    sys.polys().iter().enumerate().map(|(i, f)| (i + 1, f.num_terms())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn empty_graph_gives_payoff_differences() {
        // 2×2 game: F_1 = (X_21 − X_11) σ2_1 + (X_22 − X_12) σ2_2
        let game = Game::new(vec![2, 2], vec![vec![rat(3), rat(0), rat(1), rat(2)], vec![rat(0); 4]]).unwrap();
        let sys = build_system(&Graph::empty(2), &game).unwrap();
        let expect = Polynomial::parse(sys.torus(), "-2*s2_1 + 2*s2_2").unwrap();
        assert!(sys.polys()[0].is_proportional(&expect));
        assert!(sys.polys()[1].is_zero());
        sys.verify_reconstruction().unwrap();
    }

    #[test]
    fn connected_graph_strips_nothing() {
        let game = Game::random_binary(3, &mut rng(3));
        let sys = build_system(&Graph::builtin("line:3").unwrap(), &game).unwrap();
        assert!(sys.stripped().iter().all(|s| s.factors.is_empty()));
        sys.verify_reconstruction().unwrap();
    }

    #[test]
    fn reconstruction_on_mixed_graphs() {
        let graphs = [
            Graph::from_labeled_edges(4, &[(1, 2)]).unwrap(),
            Graph::builtin("g4-example").unwrap(),
            Graph::from_labeled_edges(4, &[(1, 2), (2, 3)]).unwrap(),
            Graph::empty(3),
        ];
        for (s, g) in graphs.iter().enumerate() {
            let game = Game::random_binary(g.vertex_count(), &mut rng(s as u64));
            let sys = build_system(g, &game).unwrap();
            sys.verify_reconstruction().unwrap();
            for i in 0..g.vertex_count() {
                assert_eq!(sys.polys()[i].multidegree().unwrap(), expected_multidegree(g, i));
            }
        }
    }

    #[test]
    fn expected_dimensions() {
        let three = [
            Graph::empty(3),
            Graph::from_labeled_edges(3, &[(1, 2)]).unwrap(),
            Graph::from_labeled_edges(3, &[(1, 2), (2, 3)]).unwrap(),
            Graph::complete(3),
        ];
        let dims: Vec<usize> = three.iter().map(expected_spohn_ci_dimension).collect();
        assert_eq!(dims, vec![0, 1, 2, 4]);
        assert_eq!(expected_spohn_ci_dimension(&Graph::builtin("figure2").unwrap()), 24);
        assert_eq!(expected_spohn_ci_dimension(&Graph::complete(4)), 16 - 4 - 1);
        let d = |s: &[usize]| expected_nash_ci_dimension(&Partition::from_sizes(s).unwrap());
        assert_eq!(d(&[1, 1, 1]), 0);
        assert_eq!(d(&[1, 1, 2]), 1);
        assert_eq!(d(&[2, 2]), 2);
    }

    #[test]
    fn nash_system_agrees_with_graph_system() {
        for (s, sizes) in [vec![1, 1, 1], vec![1, 2], vec![2, 2], vec![1, 1, 2]].iter().enumerate() {
            let part = Partition::from_sizes(sizes).unwrap();
            let game = Game::random_binary(part.players(), &mut rng(10 + s as u64));
            let a = nash_ci_system(&part, &game).unwrap();
            let b = build_system(&part.graph(), &game).unwrap();
            for (f, g) in a.polys().iter().zip(b.polys()) {
                assert_eq!(f, &g.rename(f.vars(), |_| None).unwrap());
            }
            a.verify_reconstruction().unwrap();
        }
    }

    #[test]
    fn w_generators_count_and_degree() {
        let part = Partition::from_sizes(&[2, 2]).unwrap();
        let gens = w_system_generators(&part, 0, 0).unwrap();
        assert_eq!(gens.len(), 5);
        for g in &gens {
            assert_eq!(g.multidegree().unwrap(), vec![2, 0]);
        }
        let part3 = Partition::from_sizes(&[3]).unwrap();
        assert_eq!(w_system_generators(&part3, 0, 1).unwrap().len(), 9);
        assert!(w_system_generators(&Partition::from_sizes(&[1, 2]).unwrap(), 0, 0).is_err());
    }

    #[test]
    fn preimage_of_zero_and_of_a_game() {
        let part = Partition::from_sizes(&[1, 2]).unwrap();
        let pm = param_map(&part.graph());
        let x = solve_payoff_preimage(&part, 1, 0, &Polynomial::zero(pm.torus())).unwrap();
        assert!(x.iter().all(Zero::is_zero));
        let game = Game::random_binary(3, &mut rng(5));
        let target = nash_polynomial(&part, 1, 1, game.tensor(2)).unwrap();
        let x = solve_payoff_preimage(&part, 1, 1, &target).unwrap();
        assert_eq!(nash_polynomial(&part, 1, 1, &x).unwrap(), target);
    }

    #[test]
    fn preimage_rejects_forms_outside_the_image() {
        let part = Partition::from_sizes(&[1, 2]).unwrap();
        let pm = param_map(&part.graph());
        // σ22² has block-2 degree 2 but is no S_1·S_2 product
        let bad = Polynomial::parse(pm.torus(), "s1_2*s23_22^2").unwrap();
        assert!(matches!(solve_payoff_preimage(&part, 1, 0, &bad), Err(Error::NotInImage(_))));
        let single = Polynomial::parse(pm.torus(), "s1_2*s23_11*s23_22").unwrap();
        assert!(matches!(solve_payoff_preimage(&part, 1, 0, &single), Err(Error::NotInImage(_))));
        let half = Polynomial::parse(pm.torus(), "1/2*s1_2*s23_22*s23_11 + 1/2*s1_2*s23_22*s23_12").unwrap();
        let x = solve_payoff_preimage(&part, 1, 0, &half).unwrap();
        assert_eq!(nash_polynomial(&part, 1, 0, &x).unwrap(), half);
    }
}
