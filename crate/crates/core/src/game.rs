//! The classical inspection game and general 2x2 bilinear payoffs.

use std::fmt;

use num_traits::Num;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The two players: the employer chooses rows, the worker chooses columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    /// Employer (inspect / not inspect).
    A,
    /// Worker (work / shirk).
    B,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::A => Player::B,
            Player::B => Player::A,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::A => f.write_str("A"),
            Player::B => f.write_str("B"),
        }
    }
}

/// Pure outcomes in the fixed basis order `IW, IS, NW, NS`.
///
/// The employer's choice is the high bit of the index and the worker's the
/// low bit, so flipping the employer's qubit is `index ^ 2` and flipping the
/// worker's is `index ^ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    IW = 0,
    IS = 1,
    NW = 2,
    NS = 3,
}

impl Outcome {
    pub const ALL: [Outcome; 4] = [Outcome::IW, Outcome::IS, Outcome::NW, Outcome::NS];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Outcome {
        Outcome::ALL[index & 3]
    }

    pub fn flip_employer(self) -> Outcome {
        Outcome::from_index(self.index() ^ 2)
    }

    pub fn flip_worker(self) -> Outcome {
        Outcome::from_index(self.index() ^ 1)
    }

    pub fn label(self) -> &'static str {
        match self {
            Outcome::IW => "IW",
            Outcome::IS => "IS",
            Outcome::NW => "NW",
            Outcome::NS => "NS",
        }
    }
}

/// Parameters of the inspection game: created wealth `v`, work cost `g`,
/// inspection cost `h` and wage `w`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInspectionParams")]
pub struct InspectionParams {
    v: f64,
    g: f64,
    h: f64,
    w: f64,
}

#[derive(Deserialize)]
struct RawInspectionParams {
    v: f64,
    g: f64,
    h: f64,
    w: f64,
}

impl TryFrom<RawInspectionParams> for InspectionParams {
    type Error = Error;

    fn try_from(raw: RawInspectionParams) -> Result<Self> {
        InspectionParams::new(raw.v, raw.g, raw.h, raw.w)
    }
}

impl InspectionParams {
    /// Validates positivity and `v > g`, `w > h`, `w > g`.
    pub fn new(v: f64, g: f64, h: f64, w: f64) -> Result<Self> {
        let named = [("v", v), ("g", g), ("h", h), ("w", w)];
        for (name, value) in named {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidParameters(format!("{name} must be a finite positive number, got {value}")));
            }
        }
        if v <= g {
            return Err(Error::InvalidParameters(format!("require v > g, got v={v}, g={g}")));
        }
        if w <= h {
            return Err(Error::InvalidParameters(format!("require w > h, got w={w}, h={h}")));
        }
        if w <= g {
            return Err(Error::InvalidParameters(format!("require w > g, got w={w}, g={g}")));
        }
        Ok(InspectionParams { v, g, h, w })
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn w(&self) -> f64 {
        self.w
    }
}

/// Both players' payoffs over the four pure outcomes, in basis order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[[f64; 2]; 4]", into = "[[f64; 2]; 4]")]
pub struct PayoffMatrix2x2 {
    cells: [[f64; 2]; 4],
}

impl TryFrom<[[f64; 2]; 4]> for PayoffMatrix2x2 {
    type Error = Error;

    fn try_from(cells: [[f64; 2]; 4]) -> Result<Self> {
        PayoffMatrix2x2::new(cells)
    }
}

impl From<PayoffMatrix2x2> for [[f64; 2]; 4] {
    fn from(m: PayoffMatrix2x2) -> Self {
        m.cells
    }
}

impl PayoffMatrix2x2 {
    /// `cells[k] = [payoff_a, payoff_b]` for outcome `k` in `IW, IS, NW, NS` order.
    pub fn new(cells: [[f64; 2]; 4]) -> Result<Self> {
        if cells.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameters("payoff entries must be finite".into()));
        }
        Ok(PayoffMatrix2x2 { cells })
    }

    pub fn zero() -> Self {
        PayoffMatrix2x2 { cells: [[0.0; 2]; 4] }
    }

    pub fn cells(&self) -> [[f64; 2]; 4] {
        self.cells
    }

    pub fn payoff(&self, outcome: Outcome, player: Player) -> f64 {
        self.cells[outcome.index()][player as usize]
    }

    /// One player's payoffs in basis order.
    pub fn for_player(&self, player: Player) -> [f64; 4] {
        let col = player as usize;
        [self.cells[0][col], self.cells[1][col], self.cells[2][col], self.cells[3][col]]
    }
}

/// Builds the inspection-game payoff matrix:
///
/// ```text
///          W               S
///   I  (v-w-h, w-g)    (-h, 0)
///   N  (v-w,   w-g)    (-w, w)
/// ```
pub fn build_inspection_matrix(params: &InspectionParams) -> PayoffMatrix2x2 {
    let InspectionParams { v, g, h, w } = *params;
    PayoffMatrix2x2 { cells: [[v - w - h, w - g], [-h, 0.0], [v - w, w - g], [-w, w]] }
}

/// Mixed strategy profile: `p` is the probability the employer inspects
/// (leaves their qubit untouched), `q` the probability the worker works.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawProfile")]
pub struct StrategyProfile {
    pub p: f64,
    pub q: f64,
}

#[derive(Deserialize)]
struct RawProfile {
    p: f64,
    q: f64,
}

impl TryFrom<RawProfile> for StrategyProfile {
    type Error = Error;

    fn try_from(raw: RawProfile) -> Result<Self> {
        StrategyProfile::new(raw.p, raw.q)
    }
}

impl StrategyProfile {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        for (name, x) in [("p", p), ("q", q)] {
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::InvalidProfile(format!("{name} must lie in [0, 1], got {x}")));
            }
        }
        Ok(StrategyProfile { p, q })
    }

    /// The mix of `player` in this profile.
    pub fn mix(&self, player: Player) -> f64 {
        match player {
            Player::A => self.p,
            Player::B => self.q,
        }
    }
}

/// A player's expected payoff written as `alpha*p*q + beta*p + gamma*q + delta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BilinearPayoff {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl BilinearPayoff {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        BilinearPayoff { alpha, beta, gamma, delta }
    }

    /// Coefficients of the classical expected payoff of `player`.
    pub fn classical(matrix: &PayoffMatrix2x2, player: Player) -> Self {
        let [alpha, beta, gamma, delta] =
            bilinear_table(&matrix.for_player(player)).map(|row| row[Outcome::IW.index()]);
        BilinearPayoff { alpha, beta, gamma, delta }
    }

    pub fn eval(&self, p: f64, q: f64) -> f64 {
        self.alpha * p * q + self.beta * p + self.gamma * q + self.delta
    }

    pub fn eval_at(&self, profile: StrategyProfile) -> f64 {
        self.eval(profile.p, profile.q)
    }

    /// Derivative of the payoff with respect to `player`'s own mix, given the
    /// opponent's mix. For A this is `alpha*q + beta`, for B `alpha*p + gamma`.
    pub fn own_slope(&self, player: Player, opponent_mix: f64) -> f64 {
        match player {
            Player::A => self.alpha * opponent_mix + self.beta,
            Player::B => self.alpha * opponent_mix + self.gamma,
        }
    }

    /// Largest gain `player` can obtain by deviating unilaterally from `profile`.
    pub fn deviation_gain(&self, player: Player, profile: StrategyProfile) -> f64 {
        let own = profile.mix(player);
        let slope = self.own_slope(player, profile.mix(player.other()));
        ((1.0 - own) * slope).max(-own * slope).max(0.0)
    }

    pub fn is_zero(&self, tolerance: f64) -> bool {
        [self.alpha, self.beta, self.gamma, self.delta].iter().all(|c| c.abs() <= tolerance)
    }
}

/// Per-basis-state contributions to `(alpha, beta, gamma, delta)`.
///
/// `table[c][k]` is the contribution of basis state `k` (weighted by its
/// probability) to coefficient `c`. When the shared state is basis state `k`
/// the realized outcome is `k` with weight `pq`, `k` with the worker's bit
/// flipped with weight `p(1-q)`, the employer's bit flipped with `(1-p)q`, and
/// both flipped with `(1-p)(1-q)`.
pub fn bilinear_table<T: Num + Clone>(payoffs: &[T; 4]) -> [[T; 4]; 4] {
    let e = |k: usize| payoffs[k].clone();
    let column = |k: usize| {
        let (stay, worker, employer, both) = (e(k), e(k ^ 1), e(k ^ 2), e(k ^ 3));
        [stay - worker.clone() - employer.clone() + both.clone(), worker - both.clone(), employer - both.clone(), both]
    };
    let cols = [column(0), column(1), column(2), column(3)];
    std::array::from_fn(|c| std::array::from_fn(|k| cols[k][c].clone()))
}

/// Expected payoff of `player` under independent mixing, summing over the
/// four pure outcomes.
pub fn classical_expected_payoff(matrix: &PayoffMatrix2x2, profile: StrategyProfile, player: Player) -> f64 {
    let StrategyProfile { p, q } = profile;
    let e = |o: Outcome| matrix.payoff(o, player);
    p * q * e(Outcome::IW)
        + p * (1.0 - q) * e(Outcome::IS)
        + (1.0 - p) * q * e(Outcome::NW)
        + (1.0 - p) * (1.0 - q) * e(Outcome::NS)
}

/// The unique mixed equilibrium `(g/w, 1 - h/w)`.
pub fn classical_mixed_ne(params: &InspectionParams) -> StrategyProfile {
    StrategyProfile { p: params.g / params.w, q: 1.0 - params.h / params.w }
}

/// Equilibrium payoffs of the classical game.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalPayoffs {
    pub payoff_a: f64,
    pub payoff_b: f64,
    pub joint: f64,
}

/// `(v - w - hv/w, w - g, v - g - hv/w)`.
pub fn classical_ne_payoffs(params: &InspectionParams) -> ClassicalPayoffs {
    let InspectionParams { v, g, h, w } = *params;
    let payoff_a = v - w - h * v / w;
    let payoff_b = w - g;
    ClassicalPayoffs { payoff_a, payoff_b, joint: payoff_a + payoff_b }
}

/// Checks that neither player gains more than `tolerance` by a unilateral
/// deviation. Payoffs are affine in each player's own mix, so the best
/// deviation is always to a pure strategy.
pub fn verify_classical_ne(matrix: &PayoffMatrix2x2, candidate: StrategyProfile, tolerance: f64) -> bool {
    [Player::A, Player::B]
        .into_iter()
        .all(|player| BilinearPayoff::classical(matrix, player).deviation_gain(player, candidate) <= tolerance)
}
