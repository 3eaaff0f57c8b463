//! Conditional-independence quadrics and the clique-monomial parametrization
//! of binary undirected graphical models.

use std::collections::BTreeSet;

use num_traits::{One, Signed};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::game::Shape;
use crate::graph::{CIStatement, Graph, VertexSet};
use crate::polyring::{Monomial, Polynomial, Rational, VarTable};

/// Marginal p_{a_A a_B a_C +} for fixed assignments of the listed vertices.
fn marginal(vars: &VarTable, shape: &Shape, fixed: &[(usize, usize)]) -> Polynomial {
    let idx = (0..shape.size()).filter(|&k| fixed.iter().all(|&(v, a)| shape.strategy_of(k, v) == a));
    Polynomial::sum_of_vars(vars, idx)
}

/// All assignments of `verts` with `choices`, first vertex slowest.
fn assignments(verts: &[usize], choices: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let mut out = vec![Vec::new()];
    for &v in verts {
        let mut next = Vec::with_capacity(out.len() * choices[v]);
        for partial in &out {
            for a in 0..choices[v] {
                let mut p = partial.clone();
                p.push((v, a));
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn positive_leading(q: Polynomial) -> Polynomial {
    match q.leading_term() {
        Some((_, c)) if c.is_negative() => -&q,
        _ => q,
    }
}

/// Quadrics p_{i_A i_B i_C+} p_{j_A j_B i_C+} − p_{i_A j_B i_C+} p_{j_A i_B i_C+} of one statement,
/// over the p-variables of `choices`.
pub fn ci_quadrics(stmt: &CIStatement, choices: &[usize]) -> Result<Vec<Polynomial>> {
    let n = choices.len();
    let all = VertexSet::range(n);
    if !stmt.a.union(stmt.b).union(stmt.c).is_subset(all) {
        return Err(Error::InvalidGraph(format!("statement {stmt} mentions a vertex outside 1..{n}")));
    }
    let shape = Shape::new(choices);
    let vars = shape.p_vars();
    let a_assign = assignments(&stmt.a.to_vec(), choices);
    let b_assign = assignments(&stmt.b.to_vec(), choices);
    let c_assign = assignments(&stmt.c.to_vec(), choices);
    let mut out = Vec::new();
    for ic in &c_assign {
        let cell = |ia: &[(usize, usize)], ib: &[(usize, usize)]| {
            let fixed: Vec<(usize, usize)> = ia.iter().chain(ib).chain(ic).copied().collect();
            marginal(&vars, &shape, &fixed)
        };
        for x in 0..a_assign.len() {
            for y in x + 1..a_assign.len() {
                for u in 0..b_assign.len() {
                    for w in u + 1..b_assign.len() {
                        let (ia, ja, ib, jb) = (&a_assign[x], &a_assign[y], &b_assign[u], &b_assign[w]);
                        let q = &(&cell(ia, ib) * &cell(ja, jb)) - &(&cell(ia, jb) * &cell(ja, ib));
                        out.push(q);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Union of the quadrics of every global Markov statement, deduplicated by
/// canonical form (leading coefficient positive).
pub fn model_quadrics(g: &Graph, choices: &[usize]) -> Result<Vec<Polynomial>> {
    if choices.len() != g.vertex_count() {
        return Err(Error::Shape(format!("{} choice counts for {} vertices", choices.len(), g.vertex_count())));
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for stmt in g.global_markov()? {
        for q in ci_quadrics(&stmt, choices)? {
            let q = positive_leading(q);
            if seen.insert(q.to_text()) {
                out.push(q);
            }
        }
    }
    Ok(out)
}

/// Torus name of σ^{(C)}_{j_C}: `s12_11`, or `s3_1` for a singleton clique.
/// Labels are `_`-joined once some vertex label has two digits.
pub fn sigma_name(clique: VertexSet, local: &[usize]) -> String {
    let labels = clique.labels();
    let wide = labels.iter().any(|&l| l >= 10);
    let sep = if wide { "_" } else { "" };
    let vs: Vec<String> = labels.iter().map(ToString::to_string).collect();
    let js: Vec<String> = local.iter().map(|j| (j + 1).to_string()).collect();
    format!("s{}_{}", vs.join(sep), js.join(""))
}

/// p_{j_1…j_n} ↦ ∏_C σ^{(C)}_{j_C} over the maximal cliques of a binary model.
#[derive(Clone, Debug)]
pub struct ParamMap {
    graph: Graph,
    cliques: Vec<VertexSet>,
    offsets: Vec<usize>,
    torus: VarTable,
    p_vars: VarTable,
    images: Vec<Monomial>,
}

impl ParamMap {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Maximal cliques in block order.
    pub fn cliques(&self) -> &[VertexSet] {
        &self.cliques
    }

    pub fn torus(&self) -> &VarTable {
        &self.torus
    }

    pub fn p_vars(&self) -> &VarTable {
        &self.p_vars
    }

    pub fn images(&self) -> &[Monomial] {
        &self.images
    }

    pub fn image(&self, p_index: usize) -> &Monomial {
        &self.images[p_index]
    }

    /// Torus variable of clique block `c` at the local index (0-based strategies,
    /// one per clique vertex in increasing order).
    pub fn sigma(&self, c: usize, local: &[usize]) -> usize {
        let k = local.len();
        self.offsets[c] + local.iter().enumerate().map(|(pos, &j)| j << (k - 1 - pos)).sum::<usize>()
    }

    /// σ^{(C)} restricted from a full (0-based) profile.
    pub fn sigma_of_profile(&self, c: usize, profile: &[usize]) -> usize {
        let local: Vec<usize> = self.cliques[c].iter().map(|v| profile[v]).collect();
        self.sigma(c, &local)
    }

    /// The all-2 variable σ^{(C)}_{2…2} of each block.
    pub fn chart_vars(&self) -> Vec<usize> {
        (0..self.cliques.len()).map(|c| self.offsets[c] + (1 << self.cliques[c].len()) - 1).collect()
    }

    /// Composes a polynomial in p-variables with the parametrization.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if *p.vars() != self.p_vars {
            return Err(Error::VarTableMismatch);
        }
        Ok(p.substitute_monomials(&self.torus, &self.images))
    }

    /// Unnormalized p-coordinates of a torus point.
    pub fn push_forward<T>(&self, sigma: &[T]) -> Vec<T>
    where
        T: Copy + One + std::ops::Mul<Output = T>,
    {
        self.images
            .iter()
            .map(|m| m.pairs().fold(T::one(), |acc, (v, e)| (0..e).fold(acc, |a, _| a * sigma[v])))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let images: Vec<Value> = (0..self.images.len())
            .map(|k| {
                let img = Polynomial::monomial(&self.torus, self.images[k].clone(), Rational::one());
                json!([self.p_vars.name(k), img.to_text()])
            })
            .collect();
        json!({
            "cliques": self.cliques.iter().map(|c| c.labels()).collect::<Vec<_>>(),
            "torus": self.torus.names(),
            "images": images,
        })
    }
}

/// Clique-monomial parametrization; binary models only.
pub fn param_map(g: &Graph) -> ParamMap {
    let n = g.vertex_count();
    let cliques = g.maximal_cliques();
    let mut names = Vec::new();
    let mut blocks = Vec::new();
    let mut offsets = Vec::with_capacity(cliques.len());
    for (c, clique) in cliques.iter().enumerate() {
        offsets.push(names.len());
        let k = clique.len();
        for idx in 0..1usize << k {
            let local: Vec<usize> = (0..k).map(|pos| (idx >> (k - 1 - pos)) & 1).collect();
            names.push(sigma_name(*clique, &local));
            blocks.push(c);
        }
    }
    let torus = VarTable::with_blocks(names, blocks).expect("clique names are unique");
    let shape = Shape::binary(n);
    let mut pm = ParamMap { graph: g.clone(), cliques, offsets, torus, p_vars: shape.p_vars(), images: Vec::new() };
    pm.images = (0..shape.size())
        .map(|k| {
            let prof = shape.profile(k);
            Monomial::from_pairs((0..pm.cliques.len()).map(|c| (pm.sigma_of_profile(c, &prof), 1)).collect())
        })
        .collect();
    pm
}

/// Checked variant of [`param_map`] for a choice vector.
pub fn param_map_checked(g: &Graph, choices: &[usize]) -> Result<ParamMap> {
    if let Some(i) = choices.iter().position(|&d| d != 2) {
        return Err(Error::NotBinary(i + 1, choices[i]));
    }
    if choices.len() != g.vertex_count() {
        return Err(Error::Shape(format!("{} choice counts for {} vertices", choices.len(), g.vertex_count())));
    }
    Ok(param_map(g))
}

/// Projective dimension n + f_{≥2} of the binary model.
pub fn model_dimension(g: &Graph) -> usize {
    let (f0, f_ge2) = g.clique_complex_face_counts();
    f0 + f_ge2
}

/// `vars …` line followed by one quadric per line.
pub fn export_ideal(quadrics: &[Polynomial], vars: &VarTable) -> String {
    let mut s = vars.declaration();
    s.push('\n');
    for q in quadrics {
        s.push_str(&q.to_text());
        s.push('\n');
    }
    s
}
