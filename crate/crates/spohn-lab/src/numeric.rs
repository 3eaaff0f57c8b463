//! Floating-point solving and validation: multistart Newton, slice-and-solve
//! sampling, Jacobian-rank dimension probes and payoff-region sampling.
//!
//! Torus charts fix σ^{(C)}_{2…2} = 1 in every block.

use std::collections::BTreeMap;

use log::{debug, warn};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cimodel::{model_quadrics, ParamMap};
use crate::error::{Error, Result};
use crate::game::{Distribution, Game};
use crate::graph::Graph;
use crate::polyring::{Monomial, Polynomial, Rational, VarTable};
use crate::spohnci::build_system;

/// Solver settings. Every stochastic routine is a function of `seed`.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveConfig {
    pub tol: f64,
    pub max_iter: usize,
    pub starts: usize,
    /// Starts per slice when sampling positive-dimensional sets.
    pub slice_starts: usize,
    pub start_box: (f64, f64),
    pub dedup: f64,
    pub seed: u64,
}

impl SolveConfig {
    pub fn new(seed: u64) -> Self {
        SolveConfig { tol: 1e-10, max_iter: 100, starts: 200, slice_starts: 16, start_box: (0.0, 1.0), dedup: 1e-6, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.dedup > 0.0) {
            return Err(Error::Invalid("tolerances must be positive".into()));
        }
        if !(self.start_box.0 < self.start_box.1) {
            return Err(Error::Invalid("empty start box".into()));
        }
        if self.starts == 0 || self.max_iter == 0 {
            return Err(Error::Invalid("starts and max_iter must be positive".into()));
        }
        Ok(())
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// A totally mixed (or boundary) point of V_{X,C} found numerically.
#[derive(Clone, Debug, PartialEq)]
pub struct EquilibriumPoint {
    pub torus: Vec<f64>,
    pub probabilities: Vec<f64>,
    pub quadric_residual: f64,
    pub minor_residual: f64,
    pub totally_mixed: bool,
    /// False when the square system's Jacobian is rank deficient there.
    pub nonsingular: bool,
}

impl EquilibriumPoint {
    pub fn distribution(&self) -> Result<Distribution<f64>> {
        Distribution::new(self.probabilities.clone())
    }

    pub fn to_json(&self, torus: &VarTable, p_vars: &VarTable) -> Value {
        let t: serde_json::Map<String, Value> =
            torus.names().iter().zip(&self.torus).map(|(n, x)| (n.clone(), json!(x))).collect();
        let p: serde_json::Map<String, Value> =
            p_vars.names().iter().zip(&self.probabilities).map(|(n, x)| (n.clone(), json!(x))).collect();
        json!({
            "torus": t,
            "probabilities": p,
            "quadric_residual": self.quadric_residual,
            "minor_residual": self.minor_residual,
            "totally_mixed": self.totally_mixed,
            "nonsingular": self.nonsingular,
        })
    }
}

/// Scalars Newton can run over.
pub trait Field: Copy + Num + From<f64> + Send + Sync {
    fn magnitude(self) -> f64;
}

impl Field for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Field for Complex64 {
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Polynomial flattened for float evaluation.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    terms: Vec<(f64, Vec<(usize, u32)>)>,
}

impl CompiledPoly {
    pub fn new(p: &Polynomial) -> Self {
        let terms = p
            .terms()
            .map(|(m, c)| (c.to_f64().unwrap_or(f64::NAN), m.pairs().collect()))
            .collect();
        CompiledPoly { terms }
    }

    pub fn eval<T: Field>(&self, x: &[T]) -> T {
        let mut acc = T::zero();
        for (c, pairs) in &self.terms {
            let mut t = T::from(*c);
            for &(v, e) in pairs {
                for _ in 0..e {
                    t = t * x[v];
                }
            }
            acc = acc + t;
        }
        acc
    }
}

/// Equations plus their symbolic Jacobian, compiled.
#[derive(Clone, Debug)]
pub struct CompiledSystem {
    nvars: usize,
    eqs: Vec<CompiledPoly>,
    jac: Vec<Vec<CompiledPoly>>,
}

impl CompiledSystem {
    pub fn new(polys: &[Polynomial], nvars: usize) -> Self {
        let eqs = polys.iter().map(CompiledPoly::new).collect();
        let jac = polys
            .iter()
            .map(|p| {
                let support = p.support_vars();
                (0..nvars)
                    .map(|v| {
                        if support.binary_search(&v).is_ok() {
                            CompiledPoly::new(&p.derivative(v))
                        } else {
                            CompiledPoly { terms: Vec::new() }
                        }
                    })
                    .collect()
            })
            .collect();
        CompiledSystem { nvars, eqs, jac }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.eqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eqs.is_empty()
    }

    pub fn eval<T: Field>(&self, x: &[T]) -> Vec<T> {
        self.eqs.iter().map(|e| e.eval(x)).collect()
    }

    pub fn jacobian<T: Field + nalgebra::Scalar>(&self, x: &[T]) -> DMatrix<T> {
        DMatrix::from_fn(self.eqs.len(), self.nvars, |r, c| self.jac[r][c].eval(x))
    }
}

fn max_modulus<T: Field>(v: &[T]) -> f64 {
    v.iter().map(|x| x.magnitude()).fold(0.0, f64::max)
}

/// Damped Newton from one start; `None` on divergence or non-convergence.
fn newton<T>(sys: &CompiledSystem, mut x: Vec<T>, cfg: &SolveConfig) -> Option<Vec<T>>
where
    T: Field + nalgebra::ComplexField<RealField = f64>,
{
    let mut f = sys.eval(&x);
    let mut r = max_modulus(&f);
    let mut converged_at = None;
    for it in 0..cfg.max_iter {
        if !r.is_finite() || max_modulus(&x) > 1e8 {
            return None;
        }
        if r <= cfg.tol {
            // a few polishing steps past the tolerance
            match converged_at {
                None => converged_at = Some(it),
                Some(k) if it >= k + 2 => break,
                _ => {}
            }
        }
        let j = sys.jacobian(&x);
        let rhs = DVector::from_iterator(f.len(), f.iter().map(|&v| -v));
        let step = match j.clone().lu().solve(&rhs) {
            Some(s) if s.iter().all(|v| v.magnitude().is_finite()) => s,
            _ => j.svd(true, true).solve(&rhs, 1e-14).ok()?,
        };
        let mut t = 1.0;
        let mut best: Option<(Vec<T>, Vec<T>, f64)> = None;
        while t > 1.0 / 64.0 {
            let cand: Vec<T> = x.iter().zip(step.iter()).map(|(&a, &d)| a + d * T::from(t)).collect();
            let fc = sys.eval(&cand);
            let rc = max_modulus(&fc);
            if rc.is_finite() && best.as_ref().is_none_or(|b| rc < b.2) {
                best = Some((cand, fc, rc));
            }
            if rc < r {
                break;
            }
            t /= 2.0;
        }
        let (nx, nf, nr) = best?;
        if converged_at.is_some() && nr >= r {
            break;
        }
        x = nx;
        f = nf;
        r = nr;
    }
    (r <= cfg.tol).then_some(x)
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
}

fn dedup_points(mut pts: Vec<Vec<f64>>, radius: f64) -> Vec<Vec<f64>> {
    pts.sort_by(|a, b| lex_cmp(a, b));
    let mut out: Vec<Vec<f64>> = Vec::new();
    for p in pts {
        if !out.iter().any(|q| p.iter().zip(q).all(|(a, b)| (a - b).abs() <= radius)) {
            out.push(p);
        }
    }
    out
}

/// Where random starts are drawn from.
#[derive(Clone, Copy)]
enum Starts {
    /// Uniform in `cfg.start_box`.
    Box,
    /// Log-uniform in [e^−3, e^3], for torus-chart coordinates.
    Positive,
}

fn real_multistart(sys: &CompiledSystem, cfg: &SolveConfig, stream_base: u64, starts: usize, first: Option<&[f64]>, kind: Starts) -> Vec<Vec<f64>> {
    let (lo, hi) = cfg.start_box;
    let found: Vec<Option<Vec<f64>>> = (0..starts)
        .into_par_iter()
        .map(|s| {
            let x0 = match (s, first) {
                (0, Some(f)) => f.to_vec(),
                _ => {
                    let mut rng = cfg.rng(stream_base + s as u64);
                    match kind {
                        Starts::Box => (0..sys.nvars()).map(|_| rng.random_range(lo..hi)).collect(),
                        Starts::Positive => (0..sys.nvars()).map(|_| rng.random_range(-3.0f64..3.0).exp()).collect(),
                    }
                }
            };
            newton(sys, x0, cfg)
        })
        .collect();
    dedup_points(found.into_iter().flatten().collect(), cfg.dedup)
}

/// Real solutions of a square system, deduplicated and sorted.
pub fn newton_solve(system: &[Polynomial], cfg: &SolveConfig) -> Result<Vec<Vec<f64>>> {
    cfg.validate()?;
    let Some(first) = system.first() else {
        return Ok(vec![Vec::new()]);
    };
    let vars = first.vars();
    if system.iter().any(|p| p.vars() != vars) {
        return Err(Error::VarTableMismatch);
    }
    if system.len() != vars.len() {
        return Err(Error::Invalid(format!("system is not square: {} equations in {} unknowns", system.len(), vars.len())));
    }
    let sys = CompiledSystem::new(system, vars.len());
    Ok(real_multistart(&sys, cfg, 0, cfg.starts, None, Starts::Box))
}

/// Symbolic Jacobian evaluated at a real point.
pub fn jacobian_f64(system: &[Polynomial], x: &[f64]) -> DMatrix<f64> {
    let n = system.first().map_or(0, |p| p.vars().len());
    CompiledSystem::new(system, n).jacobian(x)
}

/// Affine chart of a torus: the listed variables are fixed to 1.
#[derive(Clone, Debug)]
pub struct Chart {
    torus: VarTable,
    vars: VarTable,
    free: Vec<usize>,
}

impl Chart {
    pub fn new(torus: &VarTable, fixed: &[usize]) -> Result<Self> {
        let free: Vec<usize> = (0..torus.len()).filter(|v| !fixed.contains(v)).collect();
        let vars = VarTable::new(free.iter().map(|&v| torus.name(v).to_string()))?;
        Ok(Chart { torus: torus.clone(), vars, free })
    }

    /// The chart σ^{(C)}_{2…2} = 1 of a parametrization.
    pub fn standard(pm: &ParamMap) -> Self {
        Self::new(pm.torus(), &pm.chart_vars()).expect("torus names are valid")
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn torus(&self) -> &VarTable {
        &self.torus
    }

    pub fn restrict(&self, p: &Polynomial) -> Result<Polynomial> {
        let fixes: Vec<(usize, Rational)> =
            (0..self.torus.len()).filter(|v| self.free.binary_search(v).is_err()).map(|v| (v, Rational::from_integer(1.into()))).collect();
        p.specialize(&fixes).rename(&self.vars, |_| None)
    }

    pub fn lift<T: Copy + From<f64>>(&self, x: &[T]) -> Vec<T> {
        let mut out = vec![T::from(1.0); self.torus.len()];
        for (k, &v) in self.free.iter().enumerate() {
            out[v] = x[k];
        }
        out
    }
}

/// Dehomogenizes a system on the standard chart of `pm`.
pub fn dehomogenize(pm: &ParamMap, polys: &[Polynomial]) -> Result<(Chart, Vec<Polynomial>)> {
    let chart = Chart::standard(pm);
    let restricted = polys.iter().map(|p| chart.restrict(p)).collect::<Result<Vec<_>>>()?;
    Ok((chart, restricted))
}

/// Ambient checks: model quadrics and Spohn minors on normalized p.
struct Validator {
    quadrics: CompiledSystem,
    minors: CompiledSystem,
}

impl Validator {
    fn new(g: &Graph, game: &Game) -> Result<Self> {
        let size = 1usize << g.vertex_count();
        Ok(Validator {
            quadrics: CompiledSystem::new(&model_quadrics(g, game.choices())?, size),
            minors: CompiledSystem::new(&game.spohn_minors(), size),
        })
    }

    fn point(&self, pm: &ParamMap, torus: Vec<f64>, nonsingular: bool) -> EquilibriumPoint {
        let raw = pm.push_forward(&torus);
        let total: f64 = raw.iter().sum();
        let probabilities: Vec<f64> = raw.iter().map(|x| x / total).collect();
        EquilibriumPoint {
            quadric_residual: max_modulus(&self.quadrics.eval(&probabilities)),
            minor_residual: max_modulus(&self.minors.eval(&probabilities)),
            totally_mixed: probabilities.iter().all(|&x| x > 0.0),
            nonsingular,
            torus,
            probabilities,
        }
    }
}

fn singular_values<T>(m: DMatrix<T>) -> Vec<f64>
where
    T: nalgebra::ComplexField<RealField = f64>,
{
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Number of singular values above `1e-8 × largest`.
pub fn numerical_rank(sv: &[f64]) -> usize {
    let top = sv.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > 1e-8 * top).count()
}

fn is_nonsingular(sys: &CompiledSystem, x: &[f64]) -> bool {
    numerical_rank(&singular_values(sys.jacobian(x))) == sys.nvars()
}

/// Totally mixed Nash equilibria of a binary game.
pub fn solve_totally_mixed_nash(game: &Game, cfg: &SolveConfig) -> Result<Vec<EquilibriumPoint>> {
    sample_ci_equilibria(&Graph::empty(game.players()), game, usize::MAX, cfg)
}

/// Minimum-norm Gauss–Newton from `x` towards V(sys); returns `x` unchanged on failure.
fn project(sys: &CompiledSystem, x: Vec<f64>, cfg: &SolveConfig) -> Vec<f64> {
    let mut y = x.clone();
    for _ in 0..cfg.max_iter {
        let f = sys.eval(&y);
        let r = max_modulus(&f);
        if !r.is_finite() {
            return x;
        }
        if r <= cfg.tol {
            return y;
        }
        let rhs = DVector::from_iterator(f.len(), f.iter().map(|&v| -v));
        let Ok(step) = sys.jacobian(&y).svd(true, true).solve(&rhs, 1e-12) else { return x };
        for (a, d) in y.iter_mut().zip(step.iter()) {
            *a += d;
        }
    }
    x
}

fn to_rational(x: f64) -> Rational {
    BigRational::from_float(x).expect("finite")
}

/// Σ_v a_v x_v − b as an exact polynomial.
fn linear_form(vars: &VarTable, a: &[f64], b: f64) -> Polynomial {
    let mut terms: Vec<(Monomial, Rational)> = a.iter().enumerate().map(|(v, &c)| (Monomial::var(v), to_rational(c))).collect();
    terms.push((Monomial::one(), to_rational(-b)));
    Polynomial::from_terms(vars, terms)
}

/// Positive points of V_{X,C} by random affine slices through random positive points.
pub fn sample_ci_equilibria(g: &Graph, game: &Game, count: usize, cfg: &SolveConfig) -> Result<Vec<EquilibriumPoint>> {
    cfg.validate()?;
    let sys = build_system(g, game)?;
    let pm = sys.param();
    let (chart, eqs) = dehomogenize(pm, sys.polys())?;
    let nv = chart.vars().len();
    let slices = nv.saturating_sub(eqs.len());
    let validator = Validator::new(g, game)?;
    let base = CompiledSystem::new(&eqs, nv);
    let mut out: Vec<EquilibriumPoint> = Vec::new();
    let attempts = if slices == 0 { 1 } else { count.saturating_mul(10).max(10) };
    for attempt in 0..attempts {
        if out.len() >= count {
            break;
        }
        let stream = (attempt as u64 + 1) << 32;
        let mut rng = cfg.rng(stream);
        let x0: Vec<f64> = (0..nv).map(|_| rng.random_range(-3.0f64..3.0).exp()).collect();
        let x0 = if slices > 0 { project(&base, x0, cfg) } else { x0 };
        let mut full = eqs.clone();
        for _ in 0..slices {
            let a: Vec<f64> = (0..nv).map(|_| rng.random_range(-1.0..1.0)).collect();
            let b: f64 = a.iter().zip(&x0).map(|(u, v)| u * v).sum();
            full.push(linear_form(chart.vars(), &a, b));
        }
        let compiled = CompiledSystem::new(&full, nv);
        let starts = if slices == 0 { cfg.starts } else { cfg.slice_starts.max(1) };
        let sols = real_multistart(&compiled, cfg, stream + 1, starts, (slices > 0).then_some(x0.as_slice()), Starts::Positive);
        for x in sols {
            if x.iter().any(|&v| v <= 0.0) {
                continue;
            }
            let nonsingular = is_nonsingular(&compiled, &x);
            let pt = validator.point(pm, chart.lift(&x), nonsingular);
            let scale = 1.0f64.max(max_modulus(&pt.probabilities));
            if pt.quadric_residual > cfg.tol * scale || pt.minor_residual > cfg.tol * 1e2 * scale {
                debug!("dropping point with residuals {} / {}", pt.quadric_residual, pt.minor_residual);
                continue;
            }
            let dup = out.iter().any(|q| q.probabilities.iter().zip(&pt.probabilities).all(|(a, b)| (a - b).abs() <= cfg.dedup));
            if !dup {
                out.push(pt);
            }
        }
    }
    if out.iter().any(|p| !p.nonsingular) {
        warn!("some solutions are not isolated (rank-deficient Jacobian); the equilibrium set may be degenerate");
    }
    out.truncate(count);
    Ok(out)
}

/// Outcome of a rank probe.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    /// Modal local dimension over the sampled points.
    pub dimension: i64,
    pub local_dimensions: Vec<i64>,
    /// Singular-value profile per point, largest first.
    pub singular_values: Vec<Vec<f64>>,
}

impl ProbeReport {
    fn from_samples(samples: Vec<(i64, Vec<f64>)>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::NoPoints);
        }
        let mut freq: BTreeMap<i64, usize> = BTreeMap::new();
        for (d, _) in &samples {
            *freq.entry(*d).or_default() += 1;
        }
        let top = freq.values().copied().max().expect("non-empty");
        let dimension = *freq.iter().find(|(_, &c)| c == top).expect("non-empty").0;
        let (local_dimensions, singular_values) = samples.into_iter().unzip();
        Ok(ProbeReport { dimension, local_dimensions, singular_values })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dimension": self.dimension,
            "local_dimensions": self.local_dimensions,
            "singular_values": self.singular_values,
        })
    }
}

const PROBE_POINTS: usize = 5;

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Complex points of V(eqs) ∩ (random slices) in a chart, on the torus.
fn complex_samples(eqs: &[Polynomial], nv: usize, slices: usize, cfg: &SolveConfig, wanted: usize) -> Vec<Vec<Complex64>> {
    let base = CompiledSystem::new(eqs, nv);
    let mut out = Vec::new();
    for attempt in 0..wanted * 8 {
        if out.len() >= wanted {
            break;
        }
        let mut rng = cfg.rng(((attempt as u64) << 32) | 0xC0FFEE);
        let a: Vec<Vec<Complex64>> = (0..slices).map(|_| (0..nv).map(|_| random_complex(&mut rng)).collect()).collect();
        let b: Vec<Complex64> = (0..slices).map(|_| random_complex(&mut rng)).collect();
        let sliced = SlicedSystem { base: &base, a: &a, b: &b };
        let starts: Vec<Vec<Complex64>> = (0..cfg.slice_starts.max(1)).map(|_| (0..nv).map(|_| random_complex(&mut rng)).collect()).collect();
        let found = starts.into_par_iter().map(|x0| sliced.newton(x0, cfg)).collect::<Vec<_>>();
        if let Some(x) = found.into_iter().flatten().find(|x| x.iter().all(|z| z.norm() > 1e-6 && z.norm() < 1e6)) {
            out.push(x);
        }
    }
    out
}

/// Base equations plus complex affine slices.
struct SlicedSystem<'a> {
    base: &'a CompiledSystem,
    a: &'a [Vec<Complex64>],
    b: &'a [Complex64],
}

impl SlicedSystem<'_> {
    fn eval(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut f = self.base.eval(x);
        for (row, &b) in self.a.iter().zip(self.b) {
            f.push(row.iter().zip(x).map(|(u, v)| u * v).sum::<Complex64>() - b);
        }
        f
    }

    fn jacobian(&self, x: &[Complex64]) -> DMatrix<Complex64> {
        let j = self.base.jacobian(x);
        let n = self.base.nvars();
        DMatrix::from_fn(j.nrows() + self.a.len(), n, |r, c| if r < j.nrows() { j[(r, c)] } else { self.a[r - j.nrows()][c] })
    }

    fn newton(&self, mut x: Vec<Complex64>, cfg: &SolveConfig) -> Option<Vec<Complex64>> {
        let mut r = max_modulus(&self.eval(&x));
        for _ in 0..cfg.max_iter {
            if !r.is_finite() || max_modulus(&x) > 1e8 {
                return None;
            }
            if r <= cfg.tol {
                return Some(x);
            }
            let f = self.eval(&x);
            let j = self.jacobian(&x);
            let rhs = DVector::from_iterator(f.len(), f.iter().map(|&v| -v));
            let step = if j.nrows() == j.ncols() {
                j.clone().lu().solve(&rhs).or_else(|| j.svd(true, true).solve(&rhs, 1e-14).ok())?
            } else {
                j.svd(true, true).solve(&rhs, 1e-14).ok()?
            };
            let mut t = 1.0;
            loop {
                let cand: Vec<Complex64> = x.iter().zip(step.iter()).map(|(&a, &d)| a + d * t).collect();
                let rc = max_modulus(&self.eval(&cand));
                if rc < r || t < 1.0 / 64.0 {
                    x = cand;
                    r = rc;
                    break;
                }
                t /= 2.0;
            }
        }
        (r <= cfg.tol).then_some(x)
    }
}

/// Local dimension of the Spohn CI variety from the rank of the ambient Jacobian of
/// model quadrics ∪ Spohn minors at sampled points. Points are complex points of
/// V(F_1,…,F_n) on the torus, so the probe also works for games without real equilibria.
pub fn dimension_probe(g: &Graph, game: &Game, cfg: &SolveConfig) -> Result<ProbeReport> {
    cfg.validate()?;
    let sys = build_system(g, game)?;
    let pm = sys.param();
    let (chart, eqs) = dehomogenize(pm, sys.polys())?;
    let nv = chart.vars().len();
    let slices = nv.saturating_sub(eqs.len());
    let size = 1usize << g.vertex_count();
    let mut ambient = model_quadrics(g, game.choices())?;
    ambient.extend(game.spohn_minors());
    let amb = CompiledSystem::new(&ambient, size);
    let points = complex_samples(&eqs, nv, slices, cfg, PROBE_POINTS);
    let samples = points
        .into_iter()
        .map(|x| {
            let p = pm.push_forward(&chart.lift(&x));
            let scale = max_modulus(&p);
            let p: Vec<Complex64> = p.iter().map(|z| z / scale).collect();
            let sv = singular_values(amb.jacobian(&p));
            ((size as i64 - 1) - numerical_rank(&sv) as i64, sv)
        })
        .collect();
    ProbeReport::from_samples(samples)
}

/// Local dimension of V(polys) inside the standard chart of `pm`:
/// chart variables minus the rank of the chart Jacobian at sampled complex points.
pub fn chart_dimension_probe(pm: &ParamMap, polys: &[Polynomial], cfg: &SolveConfig) -> Result<ProbeReport> {
    cfg.validate()?;
    let (chart, eqs) = dehomogenize(pm, polys)?;
    let eqs: Vec<Polynomial> = eqs.into_iter().filter(|p| !p.is_zero()).collect();
    let nv = chart.vars().len();
    let slices = nv.saturating_sub(eqs.len());
    let compiled = CompiledSystem::new(&eqs, nv);
    let points = complex_samples(&eqs, nv, slices, cfg, PROBE_POINTS);
    let samples = points
        .into_iter()
        .map(|x| {
            let sv = singular_values(compiled.jacobian(&x));
            (nv as i64 - numerical_rank(&sv) as i64, sv)
        })
        .collect();
    ProbeReport::from_samples(samples)
}

/// Expected payoff vectors of sampled CI equilibria.
pub fn payoff_region_sample(g: &Graph, game: &Game, count: usize, cfg: &SolveConfig) -> Result<Vec<Vec<f64>>> {
    sample_ci_equilibria(g, game, count, cfg)?
        .iter()
        .map(|pt| game.payoff_map(&pt.distribution()?))
        .collect()
}

/// Coordinate-wise ≥ with at least one strict inequality.
pub fn pareto_dominates(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x >= y) && a.iter().zip(b).any(|(x, y)| x > y)
}
