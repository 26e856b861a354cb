//! Nash equilibria of the bilinear 2x2 game induced by a shared state.
//!
//! Player A's payoff is affine in `p` with slope `alpha_A*q + beta_A`; player
//! B's is affine in `q` with slope `alpha_B*p + gamma_B`. Each slope line
//! determines a best-response correspondence whose graph is a union of
//! axis-aligned segments (or the whole square when the line vanishes), and the
//! equilibrium set is the intersection of the two graphs.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use num_traits::Num;
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{bilinear_table, BilinearPayoff, PayoffMatrix2x2, Player, StrategyProfile};
use crate::quantum::{bilinear_coefficients, QuantumState};

/// Slope values within this distance of zero count as indifference.
pub const ZERO_TOLERANCE: f64 = 1e-9;

/// Geometric tolerance used when intersecting and merging pieces.
const GEOMETRY_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BestResponse {
    Zero,
    One,
    Any,
}

/// Best pure response of `player` when the opponent mixes with `opponent_mix`.
pub fn best_response(bilinear: &BilinearPayoff, player: Player, opponent_mix: f64) -> BestResponse {
    let slope = bilinear.own_slope(player, opponent_mix);
    if slope > ZERO_TOLERANCE {
        BestResponse::One
    } else if slope < -ZERO_TOLERANCE {
        BestResponse::Zero
    } else {
        BestResponse::Any
    }
}

/// The largest unilateral-deviation gain available to either player.
pub fn max_deviation_gain(bilinear_a: &BilinearPayoff, bilinear_b: &BilinearPayoff, profile: StrategyProfile) -> f64 {
    bilinear_a.deviation_gain(Player::A, profile).max(bilinear_b.deviation_gain(Player::B, profile))
}

/// A segment of equilibria along which one player's mix is fixed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub fixed_player: Player,
    pub fixed_value: f64,
    /// Closed range of the other player's mix.
    pub free_from: f64,
    pub free_to: f64,
}

impl Segment {
    /// Whether this is a full edge of the strategy square.
    pub fn is_edge(&self) -> bool {
        (self.fixed_value == 0.0 || self.fixed_value == 1.0) && self.free_from == 0.0 && self.free_to == 1.0
    }

    /// The profile at fraction `t` along the free range.
    pub fn at(&self, t: f64) -> StrategyProfile {
        let free = self.free_from + t * (self.free_to - self.free_from);
        match self.fixed_player {
            Player::A => StrategyProfile { p: self.fixed_value, q: free },
            Player::B => StrategyProfile { p: free, q: self.fixed_value },
        }
    }

    pub fn contains(&self, profile: StrategyProfile, tolerance: f64) -> bool {
        let fixed = profile.mix(self.fixed_player);
        let free = profile.mix(self.fixed_player.other());
        (fixed - self.fixed_value).abs() <= tolerance
            && free >= self.free_from - tolerance
            && free <= self.free_to + tolerance
    }
}

/// One connected piece of an equilibrium set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NeComponent {
    Point(StrategyProfile),
    Segment(Segment),
    FullSquare,
}

impl NeComponent {
    pub fn contains(&self, profile: StrategyProfile, tolerance: f64) -> bool {
        match self {
            NeComponent::Point(pt) => (pt.p - profile.p).abs() <= tolerance && (pt.q - profile.q).abs() <= tolerance,
            NeComponent::Segment(seg) => seg.contains(profile, tolerance),
            NeComponent::FullSquare => true,
        }
    }

    /// Profiles spread over the component, endpoints included.
    pub fn sample(&self, per_axis: usize) -> Vec<StrategyProfile> {
        let n = per_axis.max(2);
        let t = |i: usize| i as f64 / (n - 1) as f64;
        match self {
            NeComponent::Point(pt) => vec![*pt],
            NeComponent::Segment(seg) => (0..n).map(|i| seg.at(t(i))).collect(),
            NeComponent::FullSquare => {
                (0..n).flat_map(|i| (0..n).map(move |j| StrategyProfile { p: t(i), q: t(j) })).collect()
            }
        }
    }

    pub fn representative(&self) -> StrategyProfile {
        match self {
            NeComponent::Point(pt) => *pt,
            NeComponent::Segment(seg) => seg.at(0.5),
            NeComponent::FullSquare => StrategyProfile { p: 0.5, q: 0.5 },
        }
    }

    fn order_key(&self) -> (u8, f64, f64, f64) {
        let is_unit = |x: f64| x == 0.0 || x == 1.0;
        match self {
            NeComponent::Point(pt) => {
                if let Some(corner) = Corner::from_profile(*pt) {
                    (0, corner as u8 as f64, 0.0, 0.0)
                } else if is_unit(pt.p) || is_unit(pt.q) {
                    (3, pt.p, pt.q, 0.0)
                } else {
                    (4, pt.p, pt.q, 0.0)
                }
            }
            NeComponent::Segment(seg) => {
                let rank = if is_unit(seg.fixed_value) { 1 } else { 2 };
                let player = if seg.fixed_player == Player::A { 0.0 } else { 1.0 };
                (rank, player, seg.fixed_value, seg.free_from)
            }
            NeComponent::FullSquare => (0, -1.0, 0.0, 0.0),
        }
    }
}

/// Every Nash equilibrium of a bilinear game, as a union of components in
/// canonical order: corners, then edge segments, then other segments, then
/// edge points, then interior points.
#[derive(Debug, Clone, PartialEq)]
pub struct NashEquilibriumSet {
    components: Vec<NeComponent>,
}

impl NashEquilibriumSet {
    pub fn components(&self) -> &[NeComponent] {
        &self.components
    }

    /// The only component, when the set is connected.
    pub fn single(&self) -> Option<&NeComponent> {
        match self.components.as_slice() {
            [only] => Some(only),
            _ => None,
        }
    }

    pub fn is_union(&self) -> bool {
        self.components.len() > 1
    }

    pub fn contains(&self, profile: StrategyProfile, tolerance: f64) -> bool {
        self.components.iter().any(|c| c.contains(profile, tolerance))
    }
}

impl fmt::Display for NashEquilibriumSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| match c {
                NeComponent::Point(pt) => format!("({}, {})", pt.p, pt.q),
                NeComponent::Segment(s) => match s.fixed_player {
                    Player::A => format!("{{({}, q) | q in [{}, {}]}}", s.fixed_value, s.free_from, s.free_to),
                    Player::B => format!("{{(p, {}) | p in [{}, {}]}}", s.fixed_value, s.free_from, s.free_to),
                },
                NeComponent::FullSquare => "[0,1]x[0,1]".to_string(),
            })
            .collect();
        f.write_str(&parts.join(" U "))
    }
}

impl Serialize for NashEquilibriumSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.single() {
            Some(only) => only.serialize(serializer),
            None => {
                let mut s = serializer.serialize_struct("NashEquilibriumSet", 2)?;
                s.serialize_field("kind", "union")?;
                s.serialize_field("components", &self.components)?;
                s.end()
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Rect {
    p: (f64, f64),
    q: (f64, f64),
}

fn intersect_interval(a: (f64, f64), b: (f64, f64)) -> Option<(f64, f64)> {
    let lo = a.0.max(b.0);
    let hi = a.1.min(b.1);
    (lo <= hi + GEOMETRY_EPS).then_some((lo, hi.max(lo)))
}

fn sign_with_tolerance(x: f64) -> i8 {
    if x > ZERO_TOLERANCE {
        1
    } else if x < -ZERO_TOLERANCE {
        -1
    } else {
        0
    }
}

/// Graph of `player`'s best-response correspondence as (own range, opponent
/// range) boxes.
fn best_response_graph(bilinear: &BilinearPayoff, player: Player) -> Vec<((f64, f64), (f64, f64))> {
    let at0 = bilinear.own_slope(player, 0.0);
    let at1 = bilinear.own_slope(player, 1.0);
    let pure = |s: i8| if s > 0 { (1.0, 1.0) } else { (0.0, 0.0) };
    let full = (0.0, 1.0);
    match (sign_with_tolerance(at0), sign_with_tolerance(at1)) {
        (0, 0) => vec![(full, full)],
        (s0, s1) if s0 == s1 => vec![(pure(s0), full)],
        (0, s1) => vec![(pure(s1), full), (full, (0.0, 0.0))],
        (s0, 0) => vec![(pure(s0), full), (full, (1.0, 1.0))],
        (s0, s1) => {
            let root = (-at0 / (at1 - at0)).clamp(0.0, 1.0);
            vec![(pure(s0), (0.0, root)), (pure(s1), (root, 1.0)), (full, (root, root))]
        }
    }
}

fn snap(x: f64) -> f64 {
    if x.abs() <= GEOMETRY_EPS {
        0.0
    } else if (x - 1.0).abs() <= GEOMETRY_EPS {
        1.0
    } else {
        x
    }
}

fn classify(rect: Rect) -> NeComponent {
    let p = (snap(rect.p.0), snap(rect.p.1));
    let q = (snap(rect.q.0), snap(rect.q.1));
    let p_fixed = p.1 - p.0 <= GEOMETRY_EPS;
    let q_fixed = q.1 - q.0 <= GEOMETRY_EPS;
    match (p_fixed, q_fixed) {
        (true, true) => NeComponent::Point(StrategyProfile { p: p.0, q: q.0 }),
        (true, false) => {
            NeComponent::Segment(Segment { fixed_player: Player::A, fixed_value: p.0, free_from: q.0, free_to: q.1 })
        }
        (false, true) => {
            NeComponent::Segment(Segment { fixed_player: Player::B, fixed_value: q.0, free_from: p.0, free_to: p.1 })
        }
        (false, false) => NeComponent::FullSquare,
    }
}

fn canonicalize(raw: Vec<NeComponent>) -> Vec<NeComponent> {
    if raw.iter().any(|c| matches!(c, NeComponent::FullSquare)) {
        return vec![NeComponent::FullSquare];
    }

    let mut segments: Vec<Segment> = Vec::new();
    for seg in raw.iter().filter_map(|c| match c {
        NeComponent::Segment(s) => Some(*s),
        _ => None,
    }) {
        let overlapping = segments.iter_mut().find(|s| {
            s.fixed_player == seg.fixed_player
                && (s.fixed_value - seg.fixed_value).abs() <= GEOMETRY_EPS
                && s.free_from <= seg.free_to + GEOMETRY_EPS
                && seg.free_from <= s.free_to + GEOMETRY_EPS
        });
        match overlapping {
            Some(s) => {
                s.free_from = s.free_from.min(seg.free_from);
                s.free_to = s.free_to.max(seg.free_to);
            }
            None => segments.push(seg),
        }
    }

    let mut points: Vec<StrategyProfile> = Vec::new();
    for pt in raw.iter().filter_map(|c| match c {
        NeComponent::Point(p) => Some(*p),
        _ => None,
    }) {
        let covered = segments.iter().any(|s| s.contains(pt, GEOMETRY_EPS))
            || points.iter().any(|o| (o.p - pt.p).abs() <= GEOMETRY_EPS && (o.q - pt.q).abs() <= GEOMETRY_EPS);
        if !covered {
            points.push(pt);
        }
    }

    let mut out: Vec<NeComponent> =
        segments.into_iter().map(NeComponent::Segment).chain(points.into_iter().map(NeComponent::Point)).collect();
    out.sort_by(|x, y| x.order_key().partial_cmp(&y.order_key()).unwrap_or(Ordering::Equal));
    out
}

/// Complete equilibrium set of the game with the given payoff coefficients.
pub fn find_equilibria(bilinear_a: &BilinearPayoff, bilinear_b: &BilinearPayoff) -> NashEquilibriumSet {
    let graph_a: Vec<Rect> =
        best_response_graph(bilinear_a, Player::A).into_iter().map(|(own, opp)| Rect { p: own, q: opp }).collect();
    let graph_b: Vec<Rect> =
        best_response_graph(bilinear_b, Player::B).into_iter().map(|(own, opp)| Rect { p: opp, q: own }).collect();

    let mut raw = Vec::new();
    for a in &graph_a {
        for b in &graph_b {
            if let (Some(p), Some(q)) = (intersect_interval(a.p, b.p), intersect_interval(a.q, b.q)) {
                raw.push(classify(Rect { p, q }));
            }
        }
    }
    NashEquilibriumSet { components: canonicalize(raw) }
}

/// Equilibria of the quantum game played from `state`.
pub fn equilibria_for_state(matrix: &PayoffMatrix2x2, state: &QuantumState) -> NashEquilibriumSet {
    find_equilibria(&bilinear_coefficients(matrix, state, Player::A), &bilinear_coefficients(matrix, state, Player::B))
}

/// Point where both slope lines vanish, when it lies strictly inside the square.
pub fn interior_crossing(bilinear_a: &BilinearPayoff, bilinear_b: &BilinearPayoff) -> Option<StrategyProfile> {
    if bilinear_a.alpha.abs() <= GEOMETRY_EPS || bilinear_b.alpha.abs() <= GEOMETRY_EPS {
        return None;
    }
    let q = -bilinear_a.beta / bilinear_a.alpha;
    let p = -bilinear_b.gamma / bilinear_b.alpha;
    let open = |x: f64| x > 0.0 && x < 1.0;
    (open(p) && open(q)).then_some(StrategyProfile { p, q })
}

/// Interior equilibrium of the inspection instance `v=60, g=15, h=8, w=20`
/// written directly in the squared moduli:
///
/// ```text
/// p* = (3|a|^2 - 3|b|^2 - |c|^2 + |d|^2) / (4(|a|^2 - |b|^2 - |c|^2 + |d|^2))
/// q* = (3|a|^2 - 2|b|^2 - 3|c|^2 + 2|d|^2) / (5(|a|^2 - |b|^2 - |c|^2 + |d|^2))
/// ```
pub fn interior_ne(state: &QuantumState) -> Option<StrategyProfile> {
    let [a, b, c, d] = state.probabilities();
    let den = a - b - c + d;
    if den.abs() <= GEOMETRY_EPS {
        return None;
    }
    let p = (3.0 * a - 3.0 * b - c + d) / (4.0 * den);
    let q = (3.0 * a - 2.0 * b - 3.0 * c + 2.0 * d) / (5.0 * den);
    let open = |x: f64| x > 0.0 && x < 1.0;
    (open(p) && open(q)).then_some(StrategyProfile { p, q })
}

/// Closed range of a payoff over a component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PayoffSpan {
    pub min: f64,
    pub max: f64,
}

impl PayoffSpan {
    fn of(values: impl Iterator<Item = f64>) -> PayoffSpan {
        values.fold(PayoffSpan { min: f64::INFINITY, max: f64::NEG_INFINITY }, |s, v| PayoffSpan {
            min: s.min.min(v),
            max: s.max.max(v),
        })
    }

    pub fn width(&self) -> f64 {
        self.max - self.min
    }
}

/// Payoffs over one equilibrium component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComponentPayoffs {
    pub component: NeComponent,
    pub representative: StrategyProfile,
    pub payoff_a: f64,
    pub payoff_b: f64,
    pub joint: f64,
    pub span_a: PayoffSpan,
    pub span_b: PayoffSpan,
    pub span_joint: PayoffSpan,
    /// Both payoffs vary by at most [`ZERO_TOLERANCE`] over the sampled members.
    pub constant: bool,
}

/// Evaluates both payoffs over every component of `ne`.
pub fn ne_payoffs(state: &QuantumState, matrix: &PayoffMatrix2x2, ne: &NashEquilibriumSet) -> Vec<ComponentPayoffs> {
    let bil_a = bilinear_coefficients(matrix, state, Player::A);
    let bil_b = bilinear_coefficients(matrix, state, Player::B);
    ne.components()
        .iter()
        .map(|component| {
            let members = component.sample(21);
            let span_a = PayoffSpan::of(members.iter().map(|m| bil_a.eval_at(*m)));
            let span_b = PayoffSpan::of(members.iter().map(|m| bil_b.eval_at(*m)));
            let span_joint = PayoffSpan::of(members.iter().map(|m| bil_a.eval_at(*m) + bil_b.eval_at(*m)));
            let representative = component.representative();
            let payoff_a = bil_a.eval_at(representative);
            let payoff_b = bil_b.eval_at(representative);
            ComponentPayoffs {
                component: *component,
                representative,
                payoff_a,
                payoff_b,
                joint: payoff_a + payoff_b,
                span_a,
                span_b,
                span_joint,
                constant: span_a.width() <= ZERO_TOLERANCE && span_b.width() <= ZERO_TOLERANCE,
            }
        })
        .collect()
}

/// Pure-strategy corners of the strategy square, in the order the four
/// corner cases are usually listed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    /// `(p, q) = (1, 1)`
    OneOne = 0,
    /// `(0, 0)`
    ZeroZero = 1,
    /// `(1, 0)`
    OneZero = 2,
    /// `(0, 1)`
    ZeroOne = 3,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::OneOne, Corner::ZeroZero, Corner::OneZero, Corner::ZeroOne];

    /// `(p, q)` as integers.
    pub fn coordinates(self) -> (u8, u8) {
        match self {
            Corner::OneOne => (1, 1),
            Corner::ZeroZero => (0, 0),
            Corner::OneZero => (1, 0),
            Corner::ZeroOne => (0, 1),
        }
    }

    pub fn profile(self) -> StrategyProfile {
        let (p, q) = self.coordinates();
        StrategyProfile { p: p as f64, q: q as f64 }
    }

    pub fn from_profile(profile: StrategyProfile) -> Option<Corner> {
        Corner::ALL.into_iter().find(|c| c.profile() == profile)
    }

    /// Case number 1-4.
    pub fn case_number(self) -> usize {
        self as usize + 1
    }

    pub fn label(self) -> String {
        let (p, q) = self.coordinates();
        format!("({p},{q})")
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for Corner {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !"() ".contains(*c)).collect();
        match cleaned.as_str() {
            "1,1" | "11" => Ok(Corner::OneOne),
            "0,0" | "00" => Ok(Corner::ZeroZero),
            "1,0" | "10" => Ok(Corner::OneZero),
            "0,1" | "01" => Ok(Corner::ZeroOne),
            _ => Err(Error::ConfigParse(format!("unknown corner {s:?}, expected e.g. \"(1,0)\""))),
        }
    }
}

impl Serialize for Corner {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.label())
    }
}

impl<'de> Deserialize<'de> for Corner {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Corner conditions for the inspection instance, as printed: each row is a
/// coefficient vector over `(|a|^2, |b|^2, |c|^2, |d|^2)` that must be
/// nonnegative.
fn printed_conditions(corner: Corner) -> [([i8; 4], &'static str); 2] {
    match corner {
        Corner::OneOne => [
            ([-2, 3, 2, -3], "-2|a|^2 + 3|b|^2 + 2|c|^2 - 3|d|^2 >= 0"),
            ([1, -1, -3, 3], "|a|^2 - |b|^2 - 3|c|^2 + 3|d|^2 >= 0"),
        ],
        Corner::ZeroZero => [
            ([-3, 2, 3, -2], "-3|a|^2 + 2|b|^2 + 3|c|^2 - 2|d|^2 >= 0"),
            ([3, -3, -1, 1], "3|a|^2 - 3|b|^2 - |c|^2 + |d|^2 >= 0"),
        ],
        Corner::OneZero => [
            ([3, -2, -3, 2], "3|a|^2 - 2|b|^2 - 3|c|^2 + 2|d|^2 >= 0"),
            ([-1, 1, 3, -3], "-|a|^2 + |b|^2 + 3|c|^2 - 3|d|^2 >= 0"),
        ],
        Corner::ZeroOne => [
            ([2, -3, -2, 3], "2|a|^2 - 3|b|^2 - 2|c|^2 + 3|d|^2 >= 0"),
            ([-3, 3, 1, -1], "-3|a|^2 + 3|b|^2 + |c|^2 - |d|^2 >= 0"),
        ],
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub description: String,
    pub lhs: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CornerConditionReport {
    pub corner: Corner,
    pub inequalities: Vec<ConditionCheck>,
    pub satisfied: bool,
}

/// Evaluates the two inequalities under which `corner` is an equilibrium of
/// the inspection instance.
pub fn corner_conditions(state: &QuantumState, corner: Corner) -> CornerConditionReport {
    let x = state.probabilities();
    let inequalities: Vec<ConditionCheck> = printed_conditions(corner)
        .iter()
        .map(|(coeffs, description)| {
            let lhs: f64 = coeffs.iter().zip(x).map(|(c, xi)| *c as f64 * xi).sum();
            ConditionCheck { description: description.to_string(), lhs, satisfied: lhs >= -ZERO_TOLERANCE }
        })
        .collect();
    let satisfied = inequalities.iter().all(|c| c.satisfied);
    CornerConditionReport { corner, inequalities, satisfied }
}

/// The corner conditions for an arbitrary payoff matrix, as two coefficient
/// vectors over the squared moduli that must be nonnegative: the first for
/// player A, the second for player B.
///
/// At `p = 1` player A needs `alpha_A*q + beta_A >= 0`, at `p = 0` the
/// opposite sign; likewise for B with `alpha_B*p + gamma_B`.
pub fn corner_condition_rows<T>(payoffs_a: &[T; 4], payoffs_b: &[T; 4], corner: Corner) -> [[T; 4]; 2]
where
    T: Num + Clone + Neg<Output = T>,
{
    let (p, q) = corner.coordinates();
    let table_a = bilinear_table(payoffs_a);
    let table_b = bilinear_table(payoffs_b);
    let row_a: [T; 4] = std::array::from_fn(|k| {
        let slope = if q == 1 { table_a[0][k].clone() + table_a[1][k].clone() } else { table_a[1][k].clone() };
        if p == 1 {
            slope
        } else {
            -slope
        }
    });
    let row_b: [T; 4] = std::array::from_fn(|k| {
        let slope = if p == 1 { table_b[0][k].clone() + table_b[2][k].clone() } else { table_b[2][k].clone() };
        if q == 1 {
            slope
        } else {
            -slope
        }
    });
    [row_a, row_b]
}

fn render_row(coeffs: &[f64; 4]) -> String {
    let names = ["|a|^2", "|b|^2", "|c|^2", "|d|^2"];
    let mut out = String::new();
    for (c, name) in coeffs.iter().zip(names) {
        if *c == 0.0 {
            continue;
        }
        let sign = if *c < 0.0 { "-" } else { "+" };
        let magnitude = c.abs();
        let term = if magnitude == 1.0 { name.to_string() } else { format!("{magnitude}{name}") };
        if out.is_empty() {
            out = if *c < 0.0 { format!("-{term}") } else { term };
        } else {
            out.push_str(&format!(" {sign} {term}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    format!("{out} >= 0")
}

/// Corner conditions derived from an arbitrary payoff matrix.
pub fn corner_conditions_for_matrix(
    matrix: &PayoffMatrix2x2,
    state: &QuantumState,
    corner: Corner,
) -> CornerConditionReport {
    let x = state.probabilities();
    let rows = corner_condition_rows(&matrix.for_player(Player::A), &matrix.for_player(Player::B), corner);
    let inequalities: Vec<ConditionCheck> = rows
        .iter()
        .map(|row| {
            let lhs: f64 = row.iter().zip(x).map(|(c, xi)| c * xi).sum();
            ConditionCheck { description: render_row(row), lhs, satisfied: lhs >= -ZERO_TOLERANCE }
        })
        .collect();
    let satisfied = inequalities.iter().all(|c| c.satisfied);
    CornerConditionReport { corner, inequalities, satisfied }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{build_inspection_matrix, InspectionParams};

    #[test]
    fn rendered_generic_rows() {
        let s = QuantumState::from_probabilities([0.6, 0.4, 0.0, 0.0]).unwrap();
        let report = corner_conditions_for_matrix(&matrix(), &s, Corner::OneOne);
        assert_eq!(report.inequalities[0].description, "-8|a|^2 + 12|b|^2 + 8|c|^2 - 12|d|^2 >= 0");
        assert!(report.satisfied);
        assert_eq!(render_row(&[0.0, 1.0, -1.0, 0.0]), "|b|^2 - |c|^2 >= 0");
    }

    fn matrix() -> PayoffMatrix2x2 {
        build_inspection_matrix(&InspectionParams::new(60.0, 15.0, 8.0, 20.0).unwrap())
    }

    fn state(x: [f64; 4]) -> QuantumState {
        QuantumState::from_probabilities(x).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn best_responses() {
        let classical = BilinearPayoff::new(-20.0, 12.0, 60.0, -20.0);
        assert_eq!(best_response(&classical, Player::A, 0.6), BestResponse::Any);
        assert_eq!(best_response(&classical, Player::A, 0.0), BestResponse::One);
        assert_eq!(best_response(&classical, Player::A, 1.0), BestResponse::Zero);

        let a = bilinear_coefficients(&matrix(), &state([0.5, 0.5, 0.0, 0.0]), Player::A);
        for q in [0.0, 0.3, 1.0] {
            assert_eq!(best_response(&a, Player::A, q), BestResponse::One);
        }
    }

    #[test]
    fn classical_embedding_has_unique_mixed_equilibrium() {
        let ne = equilibria_for_state(&matrix(), &state([1.0, 0.0, 0.0, 0.0]));
        match ne.single() {
            Some(NeComponent::Point(pt)) => assert!(close(pt.p, 0.75) && close(pt.q, 0.6)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bell_states() {
        for x in [[0.5, 0.0, 0.0, 0.5], [0.0, 0.5, 0.5, 0.0]] {
            let ne = equilibria_for_state(&matrix(), &state(x));
            match ne.single() {
                Some(NeComponent::Point(pt)) => assert!(close(pt.p, 0.5) && close(pt.q, 0.5)),
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn edge_and_square_examples() {
        let edge = |x, player, value| {
            let ne = equilibria_for_state(&matrix(), &state(x));
            assert_eq!(
                ne.single(),
                Some(&NeComponent::Segment(Segment {
                    fixed_player: player,
                    fixed_value: value,
                    free_from: 0.0,
                    free_to: 1.0
                })),
                "state {x:?}"
            );
        };
        edge([0.5, 0.5, 0.0, 0.0], Player::A, 1.0);
        edge([0.0, 0.0, 0.5, 0.5], Player::A, 0.0);
        edge([0.5, 0.0, 0.5, 0.0], Player::B, 0.0);
        edge([0.0, 0.5, 0.0, 0.5], Player::B, 1.0);

        let ne = equilibria_for_state(&matrix(), &state([0.25; 4]));
        assert_eq!(ne.single(), Some(&NeComponent::FullSquare));
    }

    #[test]
    fn partial_segments_and_unions() {
        // A's slope crosses zero at q = 0.4, B is indifferent everywhere.
        let a = BilinearPayoff::new(5.0, -2.0, 0.0, 0.0);
        let b = BilinearPayoff::new(0.0, 1.0, 0.0, 3.0);
        let ne = find_equilibria(&a, &b);
        assert_eq!(ne.components().len(), 3);
        assert!(ne.is_union());
        assert!(ne.contains(StrategyProfile { p: 1.0, q: 0.9 }, 1e-12));
        assert!(ne.contains(StrategyProfile { p: 0.0, q: 0.1 }, 1e-12));
        assert!(ne.contains(StrategyProfile { p: 0.3, q: 0.4 }, 1e-12));
        assert!(!ne.contains(StrategyProfile { p: 1.0, q: 0.1 }, 1e-12));

        // Coordination game: two pure equilibria and one interior.
        let a = BilinearPayoff::new(2.0, -1.0, 0.0, 0.0);
        let b = BilinearPayoff::new(2.0, 0.0, -1.0, 0.0);
        let ne = find_equilibria(&a, &b);
        let kinds: Vec<_> = ne.components().to_vec();
        assert_eq!(
            kinds,
            vec![
                NeComponent::Point(StrategyProfile { p: 1.0, q: 1.0 }),
                NeComponent::Point(StrategyProfile { p: 0.0, q: 0.0 }),
                NeComponent::Point(StrategyProfile { p: 0.5, q: 0.5 }),
            ]
        );
        let json = serde_json::to_string(&ne).unwrap();
        assert!(json.starts_with(r#"{"kind":"union","components":[{"kind":"point","p":1.0"#), "{json}");
    }

    #[test]
    fn corner_condition_examples() {
        assert!(corner_conditions(&state([0.6, 0.4, 0.0, 0.0]), Corner::OneOne).satisfied);
        assert!(corner_conditions(&state([0.4375, 0.375, 0.1875, 0.0]), Corner::ZeroZero).satisfied);
        assert!(corner_conditions(&state([0.75, 0.0, 0.25, 0.0]), Corner::OneZero).satisfied);
        assert!(corner_conditions(&state([0.0, 0.5, 0.0, 0.5]), Corner::ZeroOne).satisfied);

        let report = corner_conditions(&state([1.0, 0.0, 0.0, 0.0]), Corner::OneOne);
        assert!(!report.satisfied);
        assert_eq!(report.inequalities[0].lhs, -2.0);
        assert!(!report.inequalities[0].satisfied);
    }

    #[test]
    fn generic_rows_are_positive_multiples_of_printed_rows() {
        let m = matrix();
        for corner in Corner::ALL {
            let rows = corner_condition_rows(&m.for_player(Player::A), &m.for_player(Player::B), corner);
            let printed = printed_conditions(corner);
            for (idx, (row, scale)) in rows.iter().zip([4.0, 5.0]).enumerate() {
                let expected = printed[idx].0.map(|c| c as f64 * scale);
                assert_eq!(*row, expected, "corner {corner}");
            }
        }
    }

    #[test]
    fn interior_formulas() {
        let pt = interior_ne(&state([1.0, 0.0, 0.0, 0.0])).unwrap();
        assert!(close(pt.p, 0.75) && close(pt.q, 0.6));
        let pt = interior_ne(&state([0.5, 0.0, 0.0, 0.5])).unwrap();
        assert!(close(pt.p, 0.5) && close(pt.q, 0.5));
        assert!(interior_ne(&state([0.25; 4])).is_none());
    }

    #[test]
    fn payoffs_over_components() {
        let m = matrix();
        let check = |x: [f64; 4], a: f64, b: f64| {
            let s = state(x);
            let ne = equilibria_for_state(&m, &s);
            let pays = ne_payoffs(&s, &m, &ne);
            assert_eq!(pays.len(), 1);
            assert!(pays[0].constant, "{x:?}");
            assert!(close(pays[0].payoff_a, a) && close(pays[0].payoff_b, b), "{x:?}: {:?}", pays[0]);
        };
        check([1.0, 0.0, 0.0, 0.0], 16.0, 5.0);
        check([0.5, 0.0, 0.0, 0.5], 11.0, 7.5);
        check([0.5, 0.5, 0.0, 0.0], 12.0, 2.5);
        check([0.0, 0.0, 0.5, 0.5], 12.0, 2.5);
        check([0.5, 0.0, 0.5, 0.0], -14.0, 10.0);
        check([0.0, 0.5, 0.0, 0.5], -14.0, 10.0);
        check([0.25; 4], 11.0, 7.5);
    }

    #[test]
    fn corner_parsing() {
        assert_eq!("(1,0)".parse::<Corner>().unwrap(), Corner::OneZero);
        assert_eq!("0, 1".parse::<Corner>().unwrap(), Corner::ZeroOne);
        assert!("(2,0)".parse::<Corner>().is_err());
        assert_eq!(serde_json::to_string(&Corner::OneOne).unwrap(), "\"(1,1)\"");
    }
}
