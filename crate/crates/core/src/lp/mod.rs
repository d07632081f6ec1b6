//! Revised simplex over any [`Scalar`] with column generation.
//!
//! Problems have the form
//!
//! ```text
//! minimize   Σ_j (p_j x⁺_j + n_j x⁻_j)
//! subject to Σ_j (x⁺_j - x⁻_j) a_j = b,   x⁺, x⁻ ≥ 0
//! ```
//!
//! whose dual is `max bᵀy` subject to `-n_j ≤ a_jᵀy ≤ p_j`. A column without
//! `n_j` has no `x⁻` part. Columns come from a [`Model`]: an initial working
//! set plus a scan over the full column family, called whenever the working
//! set is optimal.
//!
//! The usual way to get an exact answer is [`solve_certified`]: run in `f64`,
//! then restart in exact rationals from the final float basis.

mod factor;

use std::collections::HashMap;

use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::scalar::Scalar;
use factor::{Factor, SparseCol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Up,
    Down,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Column<S> {
    /// Caller-defined identity, used to avoid adding a column twice and to
    /// transfer bases between scalar types.
    pub id: u64,
    /// `(row, value)` with rows ascending, values nonzero.
    pub entries: Vec<(usize, S)>,
    pub cost_up: S,
    pub cost_down: Option<S>,
}

impl<S: Scalar> Column<S> {
    pub fn dot(&self, y: &[S]) -> S {
        let mut s = S::zero();
        for (r, x) in &self.entries {
            s += x.clone() * &y[*r];
        }
        s
    }
}

/// A basic variable, in a form that survives a change of scalar type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasicVar {
    Col { id: u64, dir: Dir },
    Artificial { row: usize },
}

/// Result of a full pricing pass.
#[derive(Clone, Debug)]
pub struct Scan<S> {
    /// Columns outside the working set with negative reduced cost, most negative first.
    pub columns: Vec<Column<S>>,
    /// `max(1, max_j max(a_jᵀy / p_j, -a_jᵀy / n_j))` over every column of the
    /// model; `y / scale` is then dual feasible. `None` if not available.
    pub scale: Option<S>,
}

pub trait Model<S: Scalar>: Sync {
    fn rows(&self) -> usize;
    fn rhs(&self) -> Vec<S>;
    fn initial_columns(&self) -> Vec<Column<S>>;

    /// Materializes a column by id.
    fn column(&self, id: u64) -> Option<Column<S>>;

    /// Full pricing for duals `y`, with reduced costs `w·cost ∓ a_jᵀy`.
    /// Models whose initial columns are all the columns keep the default.
    fn scan(&self, _duals: &[S], _cost_weight: &S, _limit: usize) -> Scan<S> {
        Scan { columns: Vec::new(), scale: None }
    }

    /// Whether [`Model::scan`] covers columns beyond the initial ones.
    fn is_lazy(&self) -> bool {
        false
    }

    /// A feasible starting basis, if one is known.
    fn crash_basis(&self) -> Option<Vec<BasicVar>> {
        None
    }
}

#[derive(Clone, Debug)]
pub struct LpOptions {
    pub max_iterations: usize,
    /// Columns added per full scan.
    pub scan_limit: usize,
    /// Consecutive degenerate pivots before switching to Bland's rule.
    pub degenerate_switch: usize,
    /// Float runs refactorize this often.
    pub refactor_every: usize,
    /// Phase-2 iterations between weak-duality checkpoints.
    pub trace_every: usize,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions {
            max_iterations: 200_000,
            scan_limit: 400,
            degenerate_switch: 50,
            refactor_every: 100,
            trace_every: 200,
        }
    }
}

/// Primal objective and the weak-duality bound known at the same moment.
#[derive(Clone, Debug, PartialEq)]
pub struct Checkpoint<S> {
    pub primal: S,
    pub dual_bound: Option<S>,
}

#[derive(Clone, Debug)]
pub struct LpSolution<S> {
    pub objective: S,
    /// Optimal `y`, one per row.
    pub duals: Vec<S>,
    /// Nonzero `x⁺ - x⁻` by column id, ascending.
    pub primal: Vec<(u64, S)>,
    pub basis: Vec<BasicVar>,
    pub working_ids: Vec<u64>,
    pub trace: Vec<Checkpoint<S>>,
    pub iterations: usize,
    pub core_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("problem is infeasible")]
    Infeasible,
    #[error("problem is unbounded")]
    Unbounded,
    #[error("iteration limit {0} reached")]
    IterationLimit(usize),
    #[error("basis became singular")]
    Singular,
    #[error("starting basis is not usable: {0}")]
    BadStart(&'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Var {
    Col(usize, Dir),
    Art(usize),
}

struct Solver<'a, S: Scalar, M: Model<S>> {
    model: &'a M,
    opts: &'a LpOptions,
    m: usize,
    b: Vec<S>,
    cols: Vec<Column<S>>,
    id_index: HashMap<u64, usize>,
    art_sign: Vec<S>,
    basic: Vec<Var>,
    position: HashMap<Var, usize>,
    x: Vec<S>,
    factor: Factor<S>,
    phase: u8,
    iterations: usize,
    since_refactor: usize,
    degenerate_run: usize,
    bland: bool,
    trace: Vec<Checkpoint<S>>,
}

fn order_key(v: Var, ncols: usize) -> usize {
    match v {
        Var::Col(j, Dir::Up) => 2 * j,
        Var::Col(j, Dir::Down) => 2 * j + 1,
        Var::Art(r) => 2 * ncols + r,
    }
}

impl<'a, S: Scalar, M: Model<S>> Solver<'a, S, M> {
    fn new(model: &'a M, opts: &'a LpOptions, extra_ids: &[u64]) -> Self {
        let m = model.rows();
        let b = model.rhs();
        assert_eq!(b.len(), m, "rhs length must match row count");
        let art_sign = b.iter().map(|x| if x.is_neg() { -S::one() } else { S::one() }).collect();
        let mut s = Solver {
            model,
            opts,
            m,
            b,
            cols: Vec::new(),
            id_index: HashMap::new(),
            art_sign,
            basic: Vec::new(),
            position: HashMap::new(),
            x: Vec::new(),
            factor: Factor::new(0, Vec::new()).expect("empty basis"),
            phase: 1,
            iterations: 0,
            since_refactor: 0,
            degenerate_run: 0,
            bland: false,
            trace: Vec::new(),
        };
        for c in model.initial_columns() {
            s.add_column(c);
        }
        for &id in extra_ids {
            if !s.id_index.contains_key(&id) {
                if let Some(c) = model.column(id) {
                    s.add_column(c);
                }
            }
        }
        s
    }

    fn add_column(&mut self, c: Column<S>) -> bool {
        if self.id_index.contains_key(&c.id) || c.entries.is_empty() {
            return false;
        }
        self.id_index.insert(c.id, self.cols.len());
        self.cols.push(c);
        true
    }

    fn var_column(&self, v: Var) -> SparseCol<S> {
        match v {
            Var::Col(j, Dir::Up) => self.cols[j].entries.clone(),
            Var::Col(j, Dir::Down) => self.cols[j].entries.iter().map(|(r, x)| (*r, -x.clone())).collect(),
            Var::Art(r) => vec![(r, self.art_sign[r].clone())],
        }
    }

    fn cost(&self, v: Var) -> S {
        match (self.phase, v) {
            (1, Var::Art(_)) => S::one(),
            (1, _) | (_, Var::Art(_)) => S::zero(),
            (_, Var::Col(j, Dir::Up)) => self.cols[j].cost_up.clone(),
            (_, Var::Col(j, Dir::Down)) => self.cols[j].cost_down.clone().expect("down direction exists"),
        }
    }

    fn var_of(&mut self, bv: BasicVar) -> Option<Var> {
        match bv {
            BasicVar::Artificial { row } => (row < self.m).then_some(Var::Art(row)),
            BasicVar::Col { id, dir } => {
                if !self.id_index.contains_key(&id) {
                    let c = self.model.column(id)?;
                    self.add_column(c);
                }
                let j = *self.id_index.get(&id)?;
                if dir == Dir::Down && self.cols[j].cost_down.is_none() {
                    return None;
                }
                Some(Var::Col(j, dir))
            }
        }
    }

    fn install(&mut self, basic: Vec<Var>) -> Result<(), LpError> {
        let cols: Vec<SparseCol<S>> = basic.iter().map(|&v| self.var_column(v)).collect();
        self.factor = Factor::new(self.m, cols).map_err(|_| LpError::Singular)?;
        self.position = basic.iter().enumerate().map(|(p, &v)| (v, p)).collect();
        self.basic = basic;
        self.recompute_x();
        Ok(())
    }

    fn recompute_x(&mut self) {
        let rhs: Vec<(usize, S)> = self.b.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        self.x = self.factor.ftran(&rhs);
        if !S::EXACT {
            for x in &mut self.x {
                if x.is_negligible() {
                    *x = S::zero();
                }
            }
        }
        self.since_refactor = 0;
    }

    fn refactor(&mut self) -> Result<(), LpError> {
        let basic = self.basic.clone();
        self.install(basic)
    }

    fn basis_feasible(&self) -> bool {
        self.basic.iter().zip(&self.x).all(|(v, x)| match v {
            Var::Art(_) => x.is_negligible(),
            _ => !x.is_neg(),
        })
    }

    fn start(&mut self, warm: Option<&[BasicVar]>) -> Result<(), LpError> {
        if let Some(w) = warm {
            let basic: Option<Vec<Var>> = w.iter().map(|&bv| self.var_of(bv)).collect();
            let basic = basic.ok_or(LpError::BadStart("unknown column in basis"))?;
            self.install(basic)?;
            if !self.basis_feasible() {
                return Err(LpError::BadStart("basis is not primal feasible"));
            }
            self.clean_x();
            self.phase = 2;
            return Ok(());
        }
        if let Some(crash) = self.model.crash_basis() {
            let basic: Option<Vec<Var>> = crash.iter().map(|&bv| self.var_of(bv)).collect();
            if let Some(mut basic) = basic {
                // a two-sided column can enter the other way round, which negates its value
                if self.install(basic.clone()).is_ok() && !self.basis_feasible() {
                    let mut flipped = false;
                    for (p, v) in basic.iter_mut().enumerate() {
                        if let Var::Col(j, dir) = *v {
                            if self.x[p].is_neg() && self.cols[j].cost_down.is_some() {
                                *v = Var::Col(j, if dir == Dir::Up { Dir::Down } else { Dir::Up });
                                flipped = true;
                            }
                        }
                    }
                    if flipped {
                        let _ = self.install(basic.clone());
                    }
                }
                if !self.basic.is_empty() && self.basis_feasible() {
                    self.clean_x();
                    self.phase = 2;
                    return Ok(());
                }
            }
        }
        let basic: Vec<Var> = (0..self.m).map(Var::Art).collect();
        self.install(basic)?;
        self.phase = 1;
        Ok(())
    }

    fn clean_x(&mut self) {
        if !S::EXACT {
            for x in &mut self.x {
                if x.is_neg() || x.is_negligible() {
                    *x = S::zero();
                }
            }
        }
    }

    fn duals(&self) -> Vec<S> {
        let c: Vec<S> = self.basic.iter().map(|&v| self.cost(v)).collect();
        self.factor.btran(&c)
    }

    fn objective(&self) -> S {
        let mut total = S::zero();
        for (&v, x) in self.basic.iter().zip(&self.x) {
            if !x.is_zero() {
                total += self.cost(v) * x;
            }
        }
        total
    }

    /// Entering variable from the working set, if any has negative reduced cost.
    fn price(&self, y: &[S]) -> Option<Var> {
        let w = if self.phase == 1 { S::zero() } else { S::one() };
        let candidates = self
            .cols
            .par_iter()
            .enumerate()
            .filter_map(|(j, c)| {
                let dot = c.dot(y);
                let mut best: Option<(S, Var)> = None;
                let up = w.clone() * &c.cost_up - &dot;
                if up.is_neg() && !self.position.contains_key(&Var::Col(j, Dir::Up)) {
                    best = Some((up, Var::Col(j, Dir::Up)));
                }
                if let Some(cd) = &c.cost_down {
                    let down = w.clone() * cd + &dot;
                    if down.is_neg() && !self.position.contains_key(&Var::Col(j, Dir::Down)) {
                        let replace = match &best {
                            None => true,
                            Some((u, _)) => !self.bland && down < *u,
                        };
                        if replace {
                            best = Some((down, Var::Col(j, Dir::Down)));
                        }
                    }
                }
                best
            });
        if self.bland {
            candidates.min_by_key(|(_, v)| order_key(*v, self.cols.len())).map(|(_, v)| v)
        } else {
            let ncols = self.cols.len();
            candidates
                .reduce_with(|a, b| {
                    let ord = a.0.partial_cmp(&b.0).expect("comparable");
                    match ord {
                        std::cmp::Ordering::Less => a,
                        std::cmp::Ordering::Greater => b,
                        std::cmp::Ordering::Equal => {
                            if order_key(a.1, ncols) <= order_key(b.1, ncols) {
                                a
                            } else {
                                b
                            }
                        }
                    }
                })
                .map(|(_, v)| v)
        }
    }

    /// Weak-duality scale over the working set; `None` if some cost is not positive.
    fn working_scale(&self, y: &[S]) -> Option<S> {
        let mut scale = S::one();
        for c in &self.cols {
            if !c.cost_up.is_pos() || c.cost_down.as_ref().is_some_and(|n| !n.is_pos()) {
                return None;
            }
            let dot = c.dot(y);
            let up = dot.clone() / &c.cost_up;
            if up > scale {
                scale = up;
            }
            if let Some(n) = &c.cost_down {
                let down = -dot / n;
                if down > scale {
                    scale = down;
                }
            }
        }
        Some(scale)
    }

    fn checkpoint(&mut self, y: &[S], scan_scale: Option<Option<S>>) {
        let primal = self.objective();
        let global = match scan_scale {
            Some(s) => s,
            None if self.model.is_lazy() => self.model.scan(y, &S::one(), 0).scale,
            None => Some(S::one()),
        };
        let dual_bound = match (self.working_scale(y), global) {
            (Some(a), Some(g)) => {
                let scale = if a > g { a } else { g };
                let mut by = S::zero();
                for (bi, yi) in self.b.iter().zip(y) {
                    by += bi.clone() * yi;
                }
                Some(by / scale)
            }
            _ => None,
        };
        self.trace.push(Checkpoint { primal, dual_bound });
    }

    fn pivot(&mut self, enter: Var) -> Result<(), LpError> {
        let col = self.var_column(enter);
        let d = self.factor.ftran(&col);
        let tol = S::tolerance();
        let ncols = self.cols.len();
        let mut best: Option<(S, usize)> = None;
        for p in 0..self.m {
            let dp = &d[p];
            let forced = self.phase == 2 && matches!(self.basic[p], Var::Art(_)) && !dp.is_negligible();
            if !forced && *dp <= tol {
                continue;
            }
            let ratio = if forced { S::zero() } else { self.x[p].clone() / dp };
            let take = match &best {
                None => true,
                Some((r, q)) => {
                    let diff = ratio.clone() - r;
                    if diff.is_neg() {
                        true
                    } else if diff.is_pos() {
                        false
                    } else if self.bland {
                        order_key(self.basic[p], ncols) < order_key(self.basic[*q], ncols)
                    } else {
                        dp.abs() > d[*q].abs()
                    }
                }
            };
            if take {
                best = Some((ratio, p));
            }
        }
        let (theta, leave) = best.ok_or(LpError::Unbounded)?;
        let theta = if theta.is_neg() { S::zero() } else { theta };
        if !theta.is_zero() {
            for p in 0..self.m {
                if !d[p].is_zero() {
                    let t = theta.clone() * &d[p];
                    self.x[p] -= t;
                }
            }
        }
        self.x[leave] = theta.clone();
        if !S::EXACT {
            for x in &mut self.x {
                if x.is_negligible() {
                    *x = S::zero();
                }
            }
        }
        self.factor.replace(leave, col, &d).map_err(|_| LpError::Singular)?;
        let old = self.basic[leave];
        self.position.remove(&old);
        self.position.insert(enter, leave);
        self.basic[leave] = enter;
        self.iterations += 1;
        self.since_refactor += 1;
        if theta.is_zero() {
            self.degenerate_run += 1;
            if self.degenerate_run > self.opts.degenerate_switch {
                self.bland = true;
            }
        } else {
            self.degenerate_run = 0;
            self.bland = false;
        }
        if !S::EXACT && self.since_refactor >= self.opts.refactor_every {
            self.refactor()?;
            self.clean_x();
        }
        Ok(())
    }

    fn run(&mut self) -> Result<(), LpError> {
        loop {
            if self.iterations >= self.opts.max_iterations {
                return Err(LpError::IterationLimit(self.opts.max_iterations));
            }
            let y = self.duals();
            if self.phase == 2 && self.opts.trace_every > 0 && self.iterations.is_multiple_of(self.opts.trace_every) {
                self.checkpoint(&y, None);
            }
            if let Some(enter) = self.price(&y) {
                self.pivot(enter)?;
                continue;
            }
            let w = if self.phase == 1 { S::zero() } else { S::one() };
            let scan = if self.model.is_lazy() {
                self.model.scan(&y, &w, self.opts.scan_limit)
            } else {
                Scan { columns: Vec::new(), scale: None }
            };
            let mut added = false;
            for c in scan.columns {
                added |= self.add_column(c);
            }
            if self.phase == 2 {
                let global = if self.model.is_lazy() { scan.scale } else { Some(S::one()) };
                self.checkpoint(&y, Some(global));
            }
            if added {
                continue;
            }
            if self.phase == 1 {
                if self.objective().is_pos() {
                    return Err(LpError::Infeasible);
                }
                for (v, x) in self.basic.iter().zip(self.x.iter_mut()) {
                    if matches!(v, Var::Art(_)) {
                        *x = S::zero();
                    }
                }
                self.phase = 2;
                self.degenerate_run = 0;
                self.bland = false;
                continue;
            }
            return Ok(());
        }
    }

    fn solution(&self) -> LpSolution<S> {
        let y = self.duals();
        let mut primal: Vec<(u64, S)> = Vec::new();
        for (&v, x) in self.basic.iter().zip(&self.x) {
            if x.is_zero() {
                continue;
            }
            if let Var::Col(j, dir) = v {
                let val = if dir == Dir::Up { x.clone() } else { -x.clone() };
                primal.push((self.cols[j].id, val));
            }
        }
        primal.sort_by_key(|(id, _)| *id);
        let basis = self
            .basic
            .iter()
            .map(|&v| match v {
                Var::Col(j, dir) => BasicVar::Col { id: self.cols[j].id, dir },
                Var::Art(row) => BasicVar::Artificial { row },
            })
            .collect();
        LpSolution {
            objective: self.objective(),
            duals: y,
            primal,
            basis,
            working_ids: self.cols.iter().map(|c| c.id).collect(),
            trace: self.trace.clone(),
            iterations: self.iterations,
            core_size: self.factor.core_size(),
        }
    }
}

/// Solves a model, optionally from a given basis. Columns named in
/// `extra_ids` join the initial working set.
pub fn solve<S: Scalar, M: Model<S>>(
    model: &M,
    warm: Option<&[BasicVar]>,
    extra_ids: &[u64],
    opts: &LpOptions,
) -> Result<LpSolution<S>, LpError> {
    let mut s = Solver::new(model, opts, extra_ids);
    s.start(warm)?;
    s.run()?;
    Ok(s.solution())
}

/// How an exact solution was reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedStats {
    pub float_iterations: usize,
    pub exact_iterations: usize,
    /// True when the float basis could not be reused and the exact run started over.
    pub cold_exact_start: bool,
}

/// A float model with its right-hand side nudged off zero, so that the
/// simplex path is not degenerate.
struct Perturbed<'a, M> {
    inner: &'a M,
    rhs: Vec<f64>,
}

fn spread(k: u64) -> f64 {
    // deterministic, in [1, 2)
    1.0 + (k.wrapping_mul(2_654_435_761) % 1000) as f64 / 1000.0
}

impl<'a, M: Model<f64>> Perturbed<'a, M> {
    /// Pushes each entry of `b` away from zero.
    fn by_rows(inner: &'a M) -> Self {
        let rhs = inner
            .rhs()
            .into_iter()
            .enumerate()
            .map(|(i, b)| {
                let nudge = PERTURBATION * spread(i as u64);
                if b < 0.0 {
                    b - nudge
                } else {
                    b + nudge
                }
            })
            .collect();
        Perturbed { inner, rhs }
    }

    /// Moves `b` along a positive combination of the initial columns, which
    /// keeps it feasible when the constraint matrix is rank deficient.
    fn by_columns(inner: &'a M) -> Self {
        let mut rhs = inner.rhs();
        for c in inner.initial_columns() {
            for (r, a) in &c.entries {
                rhs[*r] += PERTURBATION * spread(c.id) * a;
            }
        }
        Perturbed { inner, rhs }
    }
}

impl<M: Model<f64>> Model<f64> for Perturbed<'_, M> {
    fn rows(&self) -> usize {
        self.inner.rows()
    }
    fn rhs(&self) -> Vec<f64> {
        self.rhs.clone()
    }
    fn initial_columns(&self) -> Vec<Column<f64>> {
        self.inner.initial_columns()
    }
    fn column(&self, id: u64) -> Option<Column<f64>> {
        self.inner.column(id)
    }
    fn scan(&self, duals: &[f64], cost_weight: &f64, limit: usize) -> Scan<f64> {
        self.inner.scan(duals, cost_weight, limit)
    }
    fn is_lazy(&self) -> bool {
        self.inner.is_lazy()
    }
    fn crash_basis(&self) -> Option<Vec<BasicVar>> {
        self.inner.crash_basis()
    }
}

/// Size of the right-hand-side nudge in the float pass.
const PERTURBATION: f64 = 1e-6;

/// Float pass on a perturbed right-hand side, then an exact pass
/// warm-started from the float basis. The returned solution is exact; it
/// does not depend on the float run being right. Row-wise perturbation is
/// tried first, then column-wise, then none; if no float basis can be
/// reused the exact pass starts cold.
pub fn solve_certified<MF: Model<f64>, MQ: Model<BigRational>>(
    float_model: &MF,
    exact_model: &MQ,
    opts: &LpOptions,
) -> Result<(LpSolution<BigRational>, CertifiedStats), LpError> {
    for perturbed in [Perturbed::by_rows(float_model), Perturbed::by_columns(float_model)] {
        let Ok(f) = solve::<f64, _>(&perturbed, None, &[], opts) else { continue };
        if let Ok(q) = solve::<BigRational, _>(exact_model, Some(&f.basis), &f.working_ids, opts) {
            let stats = CertifiedStats {
                float_iterations: f.iterations,
                exact_iterations: q.iterations,
                cold_exact_start: false,
            };
            return Ok((q, stats));
        }
    }
    let float = solve::<f64, _>(float_model, None, &[], opts);
    if let Ok(f) = &float {
        if let Ok(q) = solve::<BigRational, _>(exact_model, Some(&f.basis), &f.working_ids, opts) {
            let stats = CertifiedStats {
                float_iterations: f.iterations,
                exact_iterations: q.iterations,
                cold_exact_start: false,
            };
            return Ok((q, stats));
        }
    }
    let ids = float.as_ref().map(|f| f.working_ids.clone()).unwrap_or_default();
    let q = solve::<BigRational, _>(exact_model, None, &ids, opts)?;
    let stats = CertifiedStats {
        float_iterations: float.map(|f| f.iterations).unwrap_or(0),
        exact_iterations: q.iterations,
        cold_exact_start: true,
    };
    Ok((q, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    /// Dense model with all columns present.
    struct Dense<S> {
        b: Vec<S>,
        cols: Vec<Column<S>>,
    }

    impl<S: Scalar> Model<S> for Dense<S> {
        fn rows(&self) -> usize {
            self.b.len()
        }
        fn rhs(&self) -> Vec<S> {
            self.b.clone()
        }
        fn initial_columns(&self) -> Vec<Column<S>> {
            self.cols.clone()
        }
        fn column(&self, id: u64) -> Option<Column<S>> {
            self.cols.iter().find(|c| c.id == id).cloned()
        }
    }

    fn dense<S: Scalar>(b: &[i64], cols: &[(&[(usize, i64)], i64, Option<i64>)]) -> Dense<S> {
        Dense {
            b: b.iter().map(|&x| S::from_int(x)).collect(),
            cols: cols
                .iter()
                .enumerate()
                .map(|(id, (e, p, n))| Column {
                    id: id as u64,
                    entries: e.iter().map(|&(r, x)| (r, S::from_int(x))).collect(),
                    cost_up: S::from_int(*p),
                    cost_down: n.map(S::from_int),
                })
                .collect(),
        }
    }

    #[test]
    fn small_l1_problem() {
        // min |x0| + |x1| + 3|x2| s.t. x0 + x2 = 2, x1 + x2 = 3  -> x0=2, x1=3 (5) vs x2=2,x1=1 (7)
        let cols: &[(&[(usize, i64)], i64, Option<i64>)] =
            &[(&[(0, 1)], 1, Some(1)), (&[(1, 1)], 1, Some(1)), (&[(0, 1), (1, 1)], 3, Some(3))];
        let q: Dense<BigRational> = dense(&[2, 3], cols);
        let sol = solve(&q, None, &[], &LpOptions::default()).unwrap();
        assert_eq!(sol.objective, rat(5, 1));
        assert_eq!(sol.primal, vec![(0, rat(2, 1)), (1, rat(3, 1))]);
        // dual y must satisfy |a_j·y| <= cost and b·y = 5
        assert_eq!(sol.duals[0].clone() * rat(2, 1) + sol.duals[1].clone() * rat(3, 1), rat(5, 1));
    }

    #[test]
    fn fractional_optimum_and_certified_path() {
        // min x0 + x1 + x2 with x0+x1 = 1, x1+x2 = 1, x0+x2 = 1, x >= 0: x = 1/2 each
        let cols: &[(&[(usize, i64)], i64, Option<i64>)] =
            &[(&[(0, 1), (2, 1)], 1, None), (&[(0, 1), (1, 1)], 1, None), (&[(1, 1), (2, 1)], 1, None)];
        let f: Dense<f64> = dense(&[1, 1, 1], cols);
        let q: Dense<BigRational> = dense(&[1, 1, 1], cols);
        let (sol, stats) = solve_certified(&f, &q, &LpOptions::default()).unwrap();
        assert_eq!(sol.objective, rat(3, 2));
        assert!(sol.primal.iter().all(|(_, x)| *x == rat(1, 2)));
        assert!(!stats.cold_exact_start);
    }

    #[test]
    fn infeasible_detected() {
        let cols: &[(&[(usize, i64)], i64, Option<i64>)] = &[(&[(0, 1)], 1, None)];
        let q: Dense<BigRational> = dense(&[-1], cols);
        assert_eq!(solve(&q, None, &[], &LpOptions::default()).unwrap_err(), LpError::Infeasible);
    }

    #[test]
    fn trace_is_monotone_with_valid_bounds() {
        let cols: &[(&[(usize, i64)], i64, Option<i64>)] = &[
            (&[(0, 1)], 1, Some(1)),
            (&[(1, 1)], 1, Some(1)),
            (&[(2, 1)], 1, Some(1)),
            (&[(0, 1), (1, 1), (2, 1)], 1, Some(1)),
            (&[(0, 1), (1, -1)], 1, Some(1)),
        ];
        let q: Dense<BigRational> = dense(&[1, 1, 1], cols);
        let opts = LpOptions { trace_every: 1, ..LpOptions::default() };
        let sol = solve(&q, None, &[], &opts).unwrap();
        assert_eq!(sol.objective, rat(1, 1));
        assert!(!sol.trace.is_empty());
        for w in sol.trace.windows(2) {
            assert!(w[1].primal <= w[0].primal);
        }
        for c in &sol.trace {
            assert!(c.dual_bound.clone().unwrap() <= sol.objective);
        }
    }
}
