//! Exact linear optimization over the probability simplex of squared moduli,
//! and sampled payoff ranges for interior equilibria.
//!
//! The programs here have four variables `x = (|a|^2, |b|^2, |c|^2, |d|^2)`
//! and a handful of constraints, so every vertex of the feasible polytope is
//! found by solving each rank-4 subsystem of tight constraints in exact
//! rational arithmetic.

use std::fmt;

use itertools::Itertools;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::equilibrium::{corner_condition_rows, interior_crossing, Corner};
use crate::error::{Error, Result};
use crate::game::{bilinear_table, BilinearPayoff, PayoffMatrix2x2, Player};
use crate::rational::{self, dot, int, Rational};

/// Upper bound on the number of constraints (simplex constraints included).
pub const MAX_CONSTRAINTS: usize = 16;

/// `(x1, x2, x3, x4)` with nonnegative entries summing to exactly one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProbabilityVector([Rational; 4]);

impl ProbabilityVector {
    pub fn new(x: [Rational; 4]) -> Result<Self> {
        if x.iter().any(|xi| xi.is_negative()) {
            return Err(Error::InvalidProbabilityVector(format!("negative entry in {}", render(&x))));
        }
        let total = x.iter().fold(Rational::zero(), |acc, xi| acc + xi);
        if total != int(1) {
            return Err(Error::InvalidProbabilityVector(format!("entries of {} sum to {total}", render(&x))));
        }
        Ok(ProbabilityVector(x))
    }

    /// Exact decimal reading of each float, e.g. `0.45` is `9/20`.
    pub fn from_decimals(x: [f64; 4]) -> Result<Self> {
        let converted: Vec<Rational> = x.iter().map(|v| rational::from_f64(*v)).collect::<Result<_>>()?;
        ProbabilityVector::new(std::array::from_fn(|i| converted[i].clone()))
    }

    pub fn components(&self) -> &[Rational; 4] {
        &self.0
    }

    pub fn to_f64(&self) -> [f64; 4] {
        std::array::from_fn(|i| rational::to_f64(&self.0[i]))
    }
}

fn render(x: &[Rational; 4]) -> String {
    format!("({}, {}, {}, {})", x[0], x[1], x[2], x[3])
}

impl fmt::Display for ProbabilityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

/// `coeffs . x (>= | =) rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearConstraint {
    pub label: String,
    pub coeffs: [Rational; 4],
    pub sense: Sense,
    pub rhs: Rational,
}

impl LinearConstraint {
    pub fn ge(label: impl Into<String>, coeffs: [Rational; 4], rhs: Rational) -> Self {
        LinearConstraint { label: label.into(), coeffs, sense: Sense::Ge, rhs }
    }

    pub fn eq(label: impl Into<String>, coeffs: [Rational; 4], rhs: Rational) -> Self {
        LinearConstraint { label: label.into(), coeffs, sense: Sense::Eq, rhs }
    }

    pub fn lhs(&self, x: &[Rational; 4]) -> Rational {
        dot(&self.coeffs, x)
    }

    pub fn is_satisfied(&self, x: &[Rational; 4]) -> bool {
        let lhs = self.lhs(x);
        match self.sense {
            Sense::Ge => lhs >= self.rhs,
            Sense::Eq => lhs == self.rhs,
        }
    }

    pub fn is_tight(&self, x: &[Rational; 4]) -> bool {
        self.lhs(x) == self.rhs
    }
}

/// Maximize `objective . x` over the simplex intersected with extra constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    objective: [Rational; 4],
    constraints: Vec<LinearConstraint>,
}

fn unit(i: usize) -> [Rational; 4] {
    std::array::from_fn(|k| if k == i { int(1) } else { int(0) })
}

pub fn zeros() -> [Rational; 4] {
    std::array::from_fn(|_| int(0))
}

fn simplex_constraints() -> Vec<LinearConstraint> {
    let mut out: Vec<LinearConstraint> =
        (0..4).map(|i| LinearConstraint::ge(format!("x{} >= 0", i + 1), unit(i), int(0))).collect();
    out.push(LinearConstraint::eq("x1 + x2 + x3 + x4 = 1", [int(1), int(1), int(1), int(1)], int(1)));
    out
}

impl LinearProgram {
    /// The simplex constraints occupy indices 0..5 (four nonnegativity rows,
    /// then normalization); `extra` follows in order.
    pub fn new(objective: [Rational; 4], extra: Vec<LinearConstraint>) -> Result<Self> {
        let mut constraints = simplex_constraints();
        constraints.extend(extra);
        if constraints.len() > MAX_CONSTRAINTS {
            return Err(Error::TooManyConstraints { count: constraints.len(), max: MAX_CONSTRAINTS });
        }
        if let Some(c) = constraints.iter().find(|c| c.coeffs.iter().all(Zero::is_zero)) {
            return Err(Error::InfeasibleProgram(format!("constraint {:?} has no nonzero coefficient", c.label)));
        }
        Ok(LinearProgram { objective, constraints })
    }

    pub fn objective(&self) -> &[Rational; 4] {
        &self.objective
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn with_objective(&self, objective: [Rational; 4]) -> LinearProgram {
        LinearProgram { objective, constraints: self.constraints.clone() }
    }

    pub fn is_feasible(&self, x: &[Rational; 4]) -> bool {
        self.constraints.iter().all(|c| c.is_satisfied(x))
    }

    pub fn constraint_index(&self, label: &str) -> Option<usize> {
        self.constraints.iter().position(|c| c.label == label)
    }

    pub fn active_constraints(&self, x: &[Rational; 4]) -> Vec<usize> {
        (0..self.constraints.len()).filter(|&i| self.constraints[i].is_tight(x)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub optimum: Rational,
    pub witness: ProbabilityVector,
    /// Indices into [`LinearProgram::constraints`] that are tight at the witness.
    pub active_constraints: Vec<usize>,
}

/// Solves the square system `rows . x = rhs` exactly; `None` if singular.
fn solve4(rows: &[[Rational; 4]], rhs: &[Rational]) -> Option<[Rational; 4]> {
    let mut m: Vec<Vec<Rational>> =
        rows.iter().zip(rhs).map(|(r, b)| r.iter().cloned().chain(std::iter::once(b.clone())).collect()).collect();
    for col in 0..4 {
        let pivot = (col..4).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let lead = m[col][col].clone();
        for entry in m[col].iter_mut() {
            *entry = &*entry / &lead;
        }
        for r in 0..4 {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &factor * y;
                }
            }
        }
    }
    Some(std::array::from_fn(|i| m[i][4].clone()))
}

fn rank(rows: &[[Rational; 4]]) -> usize {
    let mut m: Vec<[Rational; 4]> = rows.to_vec();
    let mut rank = 0;
    for col in 0..4 {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = &m[r][col] / &m[rank][col];
                let pivot_row = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// All vertices of the feasible polytope, in discovery order.
pub fn enumerate_vertices(program: &LinearProgram) -> Result<Vec<ProbabilityVector>> {
    let constraints = program.constraints();

    // Keep a linearly independent subset of the equalities; any dependent one
    // is still enforced by the feasibility check below.
    let mut equalities: Vec<usize> = Vec::new();
    for (i, c) in constraints.iter().enumerate().filter(|(_, c)| c.sense == Sense::Eq) {
        let mut rows: Vec<[Rational; 4]> = equalities.iter().map(|&j| constraints[j].coeffs.clone()).collect();
        rows.push(c.coeffs.clone());
        if rank(&rows) == rows.len() {
            equalities.push(i);
        }
    }
    if equalities.len() > 4 {
        return Err(Error::InfeasibleProgram("more than four independent equalities".into()));
    }
    let inequalities: Vec<usize> = (0..constraints.len()).filter(|&i| constraints[i].sense == Sense::Ge).collect();

    let mut vertices: Vec<ProbabilityVector> = Vec::new();
    for chosen in inequalities.iter().copied().combinations(4 - equalities.len()) {
        let tight: Vec<usize> = equalities.iter().copied().chain(chosen).collect();
        let rows: Vec<[Rational; 4]> = tight.iter().map(|&i| constraints[i].coeffs.clone()).collect();
        let rhs: Vec<Rational> = tight.iter().map(|&i| constraints[i].rhs.clone()).collect();
        let Some(x) = solve4(&rows, &rhs) else { continue };
        if program.is_feasible(&x) {
            let v = ProbabilityVector::new(x)?;
            if !vertices.contains(&v) {
                vertices.push(v);
            }
        }
    }
    if vertices.is_empty() {
        return Err(Error::InfeasibleProgram("feasible region is empty".into()));
    }
    Ok(vertices)
}

/// Maximum of the objective, attained at the first vertex reaching it.
pub fn maximize_linear(program: &LinearProgram) -> Result<OptimizationResult> {
    let vertices = enumerate_vertices(program)?;
    let mut best: Option<(Rational, ProbabilityVector)> = None;
    for v in vertices {
        let value = dot(program.objective(), v.components());
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, v));
        }
    }
    let (optimum, witness) = best.expect("enumerate_vertices never returns an empty list");
    let active_constraints = program.active_constraints(witness.components());
    Ok(OptimizationResult { optimum, witness, active_constraints })
}

pub fn minimize_linear(program: &LinearProgram) -> Result<OptimizationResult> {
    let negated = program.with_objective(program.objective().clone().map(|c| -c));
    let mut result = maximize_linear(&negated)?;
    result.optimum = -result.optimum;
    Ok(result)
}

/// Which payoff an objective measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PayoffTarget {
    A,
    B,
    Joint,
}

impl PayoffTarget {
    pub const ALL: [PayoffTarget; 3] = [PayoffTarget::A, PayoffTarget::B, PayoffTarget::Joint];
}

/// Payoff matrix with exact entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix {
    pub payoffs_a: [Rational; 4],
    pub payoffs_b: [Rational; 4],
}

impl ExactMatrix {
    pub fn from_matrix(matrix: &PayoffMatrix2x2) -> Result<Self> {
        let convert = |player| -> Result<[Rational; 4]> {
            let v: Vec<Rational> =
                matrix.for_player(player).iter().map(|x| rational::from_f64(*x)).collect::<Result<_>>()?;
            Ok(std::array::from_fn(|i| v[i].clone()))
        };
        Ok(ExactMatrix { payoffs_a: convert(Player::A)?, payoffs_b: convert(Player::B)? })
    }

    fn payoffs(&self, player: Player) -> &[Rational; 4] {
        match player {
            Player::A => &self.payoffs_a,
            Player::B => &self.payoffs_b,
        }
    }

    /// Coefficient vector over `x` of `player`'s payoff at the pure profile
    /// `(p, q)` or any rational mix.
    pub fn payoff_vector(&self, player: Player, p: &Rational, q: &Rational) -> [Rational; 4] {
        let t = bilinear_table(self.payoffs(player));
        std::array::from_fn(|k| &t[0][k] * p * q + &t[1][k] * p + &t[2][k] * q + &t[3][k])
    }

    pub fn target_vector(&self, target: PayoffTarget, p: &Rational, q: &Rational) -> [Rational; 4] {
        match target {
            PayoffTarget::A => self.payoff_vector(Player::A, p, q),
            PayoffTarget::B => self.payoff_vector(Player::B, p, q),
            PayoffTarget::Joint => {
                let a = self.payoff_vector(Player::A, p, q);
                let b = self.payoff_vector(Player::B, p, q);
                std::array::from_fn(|k| &a[k] + &b[k])
            }
        }
    }

    /// Coefficient vector of `player`'s own-mix slope at the opponent's mix.
    fn slope_vector(&self, player: Player, opponent_mix: &Rational) -> [Rational; 4] {
        let t = bilinear_table(self.payoffs(player));
        let constant = match player {
            Player::A => &t[1],
            Player::B => &t[2],
        };
        std::array::from_fn(|k| &t[0][k] * opponent_mix + &constant[k])
    }

    fn corner_vector(&self, target: PayoffTarget, corner: Corner) -> [Rational; 4] {
        let (p, q) = corner.coordinates();
        self.target_vector(target, &int(p as i64), &int(q as i64))
    }
}

/// The simplex plus the two conditions making `corner` an equilibrium.
pub fn corner_program(
    matrix: &ExactMatrix,
    corner: Corner,
    objective: [Rational; 4],
    extra: Vec<LinearConstraint>,
) -> Result<LinearProgram> {
    let [row_a, row_b] = corner_condition_rows(&matrix.payoffs_a, &matrix.payoffs_b, corner);
    let mut constraints = vec![
        LinearConstraint::ge(format!("A keeps p at corner {corner}"), row_a, int(0)),
        LinearConstraint::ge(format!("B keeps q at corner {corner}"), row_b, int(0)),
    ];
    constraints.extend(extra);
    LinearProgram::new(objective, constraints)
}

/// Exact range of a payoff over the states where `corner` is an equilibrium.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffRange {
    pub min: Rational,
    pub max: Rational,
    pub argmin: ProbabilityVector,
    pub argmax: ProbabilityVector,
}

pub fn payoff_range_for_corner(matrix: &PayoffMatrix2x2, corner: Corner, target: PayoffTarget) -> Result<PayoffRange> {
    let exact = ExactMatrix::from_matrix(matrix)?;
    let program = corner_program(&exact, corner, exact.corner_vector(target, corner), Vec::new())?;
    let lo = minimize_linear(&program)?;
    let hi = maximize_linear(&program)?;
    Ok(PayoffRange { min: lo.optimum, max: hi.optimum, argmin: lo.witness, argmax: hi.witness })
}

pub const FLOOR_A_LABEL: &str = "payoff A >= floor";
pub const FLOOR_B_LABEL: &str = "payoff B >= floor";

/// Joint-payoff maximization at `corner` with both payoffs held at or above
/// their floors.
pub fn pareto_program(
    matrix: &PayoffMatrix2x2,
    corner: Corner,
    floor_a: &Rational,
    floor_b: &Rational,
) -> Result<LinearProgram> {
    let exact = ExactMatrix::from_matrix(matrix)?;
    let floors = vec![
        LinearConstraint::ge(FLOOR_A_LABEL, exact.corner_vector(PayoffTarget::A, corner), floor_a.clone()),
        LinearConstraint::ge(FLOOR_B_LABEL, exact.corner_vector(PayoffTarget::B, corner), floor_b.clone()),
    ];
    corner_program(&exact, corner, exact.corner_vector(PayoffTarget::Joint, corner), floors)
}

pub fn pareto_improvement_max(
    matrix: &PayoffMatrix2x2,
    corner: Corner,
    floor_a: &Rational,
    floor_b: &Rational,
) -> Result<OptimizationResult> {
    maximize_linear(&pareto_program(matrix, corner, floor_a, floor_b)?)
}

/// Exact payoffs of both players at `corner` for the given squared moduli.
pub fn corner_payoffs(matrix: &PayoffMatrix2x2, corner: Corner, x: &ProbabilityVector) -> Result<(Rational, Rational)> {
    let exact = ExactMatrix::from_matrix(matrix)?;
    Ok((
        dot(&exact.corner_vector(PayoffTarget::A, corner), x.components()),
        dot(&exact.corner_vector(PayoffTarget::B, corner), x.components()),
    ))
}

/// Equilibria on an edge of the square where one player mixes strictly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeFamily {
    /// `(p*, 0)`
    MixedPWorkerZero,
    /// `(p*, 1)`
    MixedPWorkerOne,
    /// `(0, q*)`
    EmployerZeroMixedQ,
    /// `(1, q*)`
    EmployerOneMixedQ,
}

impl EdgeFamily {
    pub const ALL: [EdgeFamily; 4] = [
        EdgeFamily::MixedPWorkerZero,
        EdgeFamily::MixedPWorkerOne,
        EdgeFamily::EmployerZeroMixedQ,
        EdgeFamily::EmployerOneMixedQ,
    ];

    pub fn label(self) -> &'static str {
        match self {
            EdgeFamily::MixedPWorkerZero => "(p*,0)",
            EdgeFamily::MixedPWorkerOne => "(p*,1)",
            EdgeFamily::EmployerZeroMixedQ => "(0,q*)",
            EdgeFamily::EmployerOneMixedQ => "(1,q*)",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeFamilyResult {
    pub family: EdgeFamily,
    /// Mixing grid resolution: mixes `k/grid` for `0 < k < grid`.
    pub grid: usize,
    /// Best joint payoff over the grid with the mix and LP solution attaining it;
    /// `None` when no grid mix admits a feasible state.
    pub best: Option<(Rational, OptimizationResult)>,
}

/// Floor-constrained joint-payoff maximization over one edge family, solved
/// exactly for every mix on a rational grid.
///
/// For a fixed mix the conditions are linear in `x`: the mixing player must
/// be indifferent at the other player's pure strategy (an equality) and the
/// pure player must weakly prefer their strategy (an inequality).
pub fn edge_family_pareto_max(
    matrix: &PayoffMatrix2x2,
    family: EdgeFamily,
    floor_a: &Rational,
    floor_b: &Rational,
    grid: usize,
) -> Result<EdgeFamilyResult> {
    let exact = ExactMatrix::from_matrix(matrix)?;
    let mut best: Option<(Rational, OptimizationResult)> = None;
    for k in 1..grid.max(2) {
        let mix = rational::ratio(k as i64, grid as i64);
        let (zero, one) = (int(0), int(1));
        let (p, q, indifferent, preferring) = match family {
            EdgeFamily::MixedPWorkerZero => (
                mix.clone(),
                zero.clone(),
                exact.slope_vector(Player::A, &zero),
                exact.slope_vector(Player::B, &mix).map(|c| -c),
            ),
            EdgeFamily::MixedPWorkerOne => {
                (mix.clone(), one.clone(), exact.slope_vector(Player::A, &one), exact.slope_vector(Player::B, &mix))
            }
            EdgeFamily::EmployerZeroMixedQ => (
                zero.clone(),
                mix.clone(),
                exact.slope_vector(Player::B, &zero),
                exact.slope_vector(Player::A, &mix).map(|c| -c),
            ),
            EdgeFamily::EmployerOneMixedQ => {
                (one.clone(), mix.clone(), exact.slope_vector(Player::B, &one), exact.slope_vector(Player::A, &mix))
            }
        };
        if indifferent.iter().all(Zero::is_zero) || preferring.iter().all(Zero::is_zero) {
            // The condition holds identically; keeping it would leave an empty row.
            continue;
        }
        let constraints = vec![
            LinearConstraint::eq("mixing player indifferent", indifferent, int(0)),
            LinearConstraint::ge("pure player keeps strategy", preferring, int(0)),
            LinearConstraint::ge(FLOOR_A_LABEL, exact.payoff_vector(Player::A, &p, &q), floor_a.clone()),
            LinearConstraint::ge(FLOOR_B_LABEL, exact.payoff_vector(Player::B, &p, &q), floor_b.clone()),
        ];
        let program = LinearProgram::new(exact.target_vector(PayoffTarget::Joint, &p, &q), constraints)?;
        match maximize_linear(&program) {
            Ok(result) => {
                if best.as_ref().is_none_or(|(_, b)| result.optimum > b.optimum) {
                    best = Some((mix, result));
                }
            }
            Err(Error::InfeasibleProgram(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(EdgeFamilyResult { family, grid, best })
}

/// Sampling configuration for [`interior_payoff_range`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SamplingOptions {
    pub samples: usize,
    pub refinement_steps: usize,
    pub seed: u64,
}

pub const DEFAULT_SEED: u64 = 20_150_601;

impl Default for SamplingOptions {
    fn default() -> Self {
        SamplingOptions { samples: 100_000, refinement_steps: 400, seed: DEFAULT_SEED }
    }
}

/// Sampled range of one payoff with the states attaining the extremes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampledInterval {
    pub min: f64,
    pub max: f64,
    pub argmin: [f64; 4],
    pub argmax: [f64; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InteriorRange {
    pub payoff_a: SampledInterval,
    pub payoff_b: SampledInterval,
    pub joint: SampledInterval,
    /// Samples that admitted an interior equilibrium.
    pub feasible_samples: usize,
    pub total_samples: usize,
    pub note: String,
}

/// Coefficients of both players as linear functions of `x`.
struct FloatGame {
    table_a: [[f64; 4]; 4],
    table_b: [[f64; 4]; 4],
}

impl FloatGame {
    fn new(matrix: &PayoffMatrix2x2) -> Self {
        FloatGame {
            table_a: bilinear_table(&matrix.for_player(Player::A)),
            table_b: bilinear_table(&matrix.for_player(Player::B)),
        }
    }

    fn bilinear(table: &[[f64; 4]; 4], x: &[f64; 4]) -> BilinearPayoff {
        let [alpha, beta, gamma, delta] = table.map(|row| row.iter().zip(x).map(|(c, xi)| c * xi).sum());
        BilinearPayoff { alpha, beta, gamma, delta }
    }

    /// `(payoff_a, payoff_b)` at the interior equilibrium, if there is one.
    fn interior_payoffs(&self, x: &[f64; 4]) -> Option<(f64, f64)> {
        if x.iter().any(|xi| *xi < 0.0) {
            return None;
        }
        let a = Self::bilinear(&self.table_a, x);
        let b = Self::bilinear(&self.table_b, x);
        let ne = interior_crossing(&a, &b)?;
        Some((a.eval_at(ne), b.eval_at(ne)))
    }
}

/// Latin-hypercube draws of three uniforms mapped to the simplex by sorted
/// spacings, which is uniform on the simplex.
fn stratified_simplex_samples(n: usize, rng: &mut ChaCha8Rng) -> Vec<[f64; 4]> {
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(3);
    for _ in 0..3 {
        let mut strata: Vec<usize> = (0..n).collect();
        strata.shuffle(rng);
        columns.push(strata.into_iter().map(|s| (s as f64 + rng.gen::<f64>()) / n as f64).collect());
    }
    (0..n)
        .map(|i| {
            let mut u = [columns[0][i], columns[1][i], columns[2][i]];
            u.sort_by(|a, b| a.partial_cmp(b).unwrap());
            [u[0], u[1] - u[0], u[2] - u[1], 1.0 - u[2]]
        })
        .collect()
}

/// Pattern search along the simplex edge directions `e_i - e_j`, stepping to
/// the boundary when a full step would leave it.
fn refine(start: [f64; 4], steps: usize, score: &dyn Fn(&[f64; 4]) -> Option<f64>) -> ([f64; 4], f64) {
    let mut x = start;
    let mut best = score(&x).expect("refinement starts from a feasible point");
    let mut step: f64 = 0.05;
    for _ in 0..steps {
        let mut improved = false;
        for i in 0..4 {
            for j in 0..4 {
                if i == j {
                    continue;
                }
                let h = step.min(x[j]);
                if h <= 0.0 {
                    continue;
                }
                let mut y = x;
                y[i] += h;
                y[j] -= h;
                if let Some(v) = score(&y) {
                    if v > best {
                        best = v;
                        x = y;
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            step *= 0.5;
            if step < 1e-13 {
                break;
            }
        }
    }
    (x, best)
}

/// Estimates the payoff ranges at interior equilibria over all states that
/// admit one, by stratified sampling followed by local refinement of the best
/// and worst samples of each payoff.
pub fn interior_payoff_range(matrix: &PayoffMatrix2x2, options: SamplingOptions) -> InteriorRange {
    const STARTS: usize = 8;
    let game = FloatGame::new(matrix);
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut candidates = stratified_simplex_samples(options.samples, &mut rng);
    candidates.extend((0..4).map(|i| std::array::from_fn(|k| if k == i { 1.0 } else { 0.0 })));

    let feasible: Vec<([f64; 4], (f64, f64))> =
        candidates.iter().filter_map(|x| game.interior_payoffs(x).map(|v| (*x, v))).collect();

    let pick = |v: (f64, f64), target: PayoffTarget| match target {
        PayoffTarget::A => v.0,
        PayoffTarget::B => v.1,
        PayoffTarget::Joint => v.0 + v.1,
    };

    let interval_for = |target: PayoffTarget| -> SampledInterval {
        let mut out = SampledInterval { min: f64::NAN, max: f64::NAN, argmin: [f64::NAN; 4], argmax: [f64::NAN; 4] };
        if feasible.is_empty() {
            return out;
        }
        for sign in [1.0, -1.0] {
            let mut ranked: Vec<&([f64; 4], (f64, f64))> = feasible.iter().collect();
            ranked.sort_by(|a, b| (sign * pick(b.1, target)).partial_cmp(&(sign * pick(a.1, target))).unwrap());
            let score = |x: &[f64; 4]| game.interior_payoffs(x).map(|v| sign * pick(v, target));
            let (x, value) = ranked
                .iter()
                .take(STARTS)
                .map(|(x, _)| refine(*x, options.refinement_steps, &score))
                .fold(([f64::NAN; 4], f64::NEG_INFINITY), |acc, r| if r.1 > acc.1 { r } else { acc });
            if sign > 0.0 {
                out.max = value;
                out.argmax = x;
            } else {
                out.min = -value;
                out.argmin = x;
            }
        }
        out
    };

    let payoff_a = interval_for(PayoffTarget::A);
    let payoff_b = interval_for(PayoffTarget::B);
    let joint = interval_for(PayoffTarget::Joint);
    InteriorRange {
        payoff_a,
        payoff_b,
        joint,
        feasible_samples: feasible.len(),
        total_samples: candidates.len(),
        note: "sampled estimate over states with an interior equilibrium; endpoints are approached from \
               inside the open feasible set and may be unattained suprema/infima"
            .to_string(),
    }
}
