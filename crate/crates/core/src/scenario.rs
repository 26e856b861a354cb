//! JSON scenarios and reports, and the built-in reproduction battery.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::equilibrium::{
    corner_conditions, corner_conditions_for_matrix, equilibria_for_state, find_equilibria, interior_crossing,
    max_deviation_gain, ne_payoffs, ComponentPayoffs, ConditionCheck, Corner, NashEquilibriumSet, NeComponent, Segment,
    ZERO_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::game::{
    build_inspection_matrix, classical_mixed_ne, classical_ne_payoffs, BilinearPayoff, ClassicalPayoffs,
    InspectionParams, Outcome, PayoffMatrix2x2, Player, StrategyProfile,
};
use crate::polytope::{
    edge_family_pareto_max, interior_payoff_range, maximize_linear, pareto_program, payoff_range_for_corner,
    EdgeFamily, InteriorRange, PayoffTarget, ProbabilityVector, SamplingOptions, FLOOR_A_LABEL, FLOOR_B_LABEL,
};
use crate::quantum::{
    bilinear_coefficients, final_density, payoff_operator, trace_payoff, QuantumState, NORMALIZATION_TOLERANCE,
};
use crate::rational::{self, dot, int, Rational, RationalJson};

/// Default grid resolution for edge-mixed Pareto checks.
pub const DEFAULT_EDGE_GRID: usize = 100;

/// Default tolerance for float comparisons in reports.
pub const DEFAULT_COMPARISON_TOLERANCE: f64 = 1e-9;

/// Which analyses a scenario runs.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisFlags {
    pub classical: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantum_payoff: Option<StrategyProfile>,
    pub find_ne: bool,
    pub corner_cases: bool,
    pub pareto: bool,
    pub interior_range: bool,
}

/// Payoff floors for the Pareto test, usually the classical equilibrium payoffs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Floors {
    pub a: f64,
    pub b: f64,
}

/// A scenario: a game (inspection parameters or an explicit matrix), a shared
/// state given as `[re, im]` pairs in `IW, IS, NW, NS` order, and the analyses
/// to run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inspection: Option<InspectionParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<PayoffMatrix2x2>,
    pub state: [[f64; 2]; 4],
    #[serde(default)]
    pub analysis: AnalysisFlags,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub floors: Option<Floors>,
    #[serde(default)]
    pub sampling: SamplingOptions,
    #[serde(default = "default_edge_grid")]
    pub edge_grid: usize,
}

fn default_edge_grid() -> usize {
    DEFAULT_EDGE_GRID
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: ScenarioConfig = serde_json::from_str(text).map_err(|e| Error::ConfigParse(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn new(game: GameSpec, state: [[f64; 2]; 4], analysis: AnalysisFlags) -> Self {
        let (inspection, matrix) = match game {
            GameSpec::Inspection(p) => (Some(p), None),
            GameSpec::Matrix(m) => (None, Some(m)),
        };
        ScenarioConfig {
            inspection,
            matrix,
            state,
            analysis,
            floors: None,
            sampling: SamplingOptions::default(),
            edge_grid: DEFAULT_EDGE_GRID,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match (&self.inspection, &self.matrix) {
            (Some(_), Some(_)) => {
                return Err(Error::ConfigParse("give either `inspection` or `matrix`, not both".into()))
            }
            (None, None) => return Err(Error::ConfigParse("missing game: give `inspection` or `matrix`".into())),
            _ => {}
        }
        if self.edge_grid < 2 {
            return Err(Error::ConfigParse("`edge_grid` must be at least 2".into()));
        }
        self.quantum_state().map(|_| ())
    }

    pub fn payoff_matrix(&self) -> PayoffMatrix2x2 {
        match (&self.inspection, &self.matrix) {
            (Some(p), _) => build_inspection_matrix(p),
            (None, Some(m)) => *m,
            (None, None) => PayoffMatrix2x2::zero(),
        }
    }

    pub fn quantum_state(&self) -> Result<QuantumState> {
        QuantumState::from_pairs(self.state)
    }

    /// Explicit floors, or the payoffs of the unique classical equilibrium.
    pub fn pareto_floors(&self) -> Result<Floors> {
        if let Some(f) = self.floors {
            return Ok(f);
        }
        if let Some(params) = &self.inspection {
            let pay = classical_ne_payoffs(params);
            return Ok(Floors { a: pay.payoff_a, b: pay.payoff_b });
        }
        let matrix = self.payoff_matrix();
        let classical = QuantumState::basis(Outcome::IW);
        let ne = equilibria_for_state(&matrix, &classical);
        match ne.single() {
            Some(NeComponent::Point(pt)) => {
                let a = BilinearPayoff::classical(&matrix, Player::A).eval_at(*pt);
                let b = BilinearPayoff::classical(&matrix, Player::B).eval_at(*pt);
                Ok(Floors { a, b })
            }
            _ => Err(Error::ConfigParse("classical game has no unique equilibrium; give explicit `floors`".into())),
        }
    }
}

pub enum GameSpec {
    Inspection(InspectionParams),
    Matrix(PayoffMatrix2x2),
}

fn rational_vec(x: &[Rational]) -> Vec<RationalJson> {
    x.iter().map(RationalJson::from).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances {
    pub normalization: f64,
    pub zero_slope: f64,
    pub comparison: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedFormClassical {
    pub equilibrium: StrategyProfile,
    pub payoffs: ClassicalPayoffs,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassicalSection {
    pub matrix: PayoffMatrix2x2,
    pub coefficients_a: BilinearPayoff,
    pub coefficients_b: BilinearPayoff,
    pub equilibria: NashEquilibriumSet,
    pub payoffs: Vec<ComponentPayoffs>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<ClosedFormClassical>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantumPayoffSection {
    pub profile: StrategyProfile,
    pub coefficients_a: BilinearPayoff,
    pub coefficients_b: BilinearPayoff,
    pub payoff_a: f64,
    pub payoff_b: f64,
    pub joint: f64,
    /// The same payoffs from the density-matrix trace.
    pub trace_payoff_a: f64,
    pub trace_payoff_b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumSection {
    pub probabilities: [f64; 4],
    pub coefficients_a: BilinearPayoff,
    pub coefficients_b: BilinearPayoff,
    pub equilibria: NashEquilibriumSet,
    pub payoffs: Vec<ComponentPayoffs>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interior_crossing: Option<StrategyProfile>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactRange {
    pub min: RationalJson,
    pub max: RationalJson,
    pub argmin: Vec<RationalJson>,
    pub argmax: Vec<RationalJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CornerCaseSection {
    pub corner: Corner,
    pub equilibrium_for_state: bool,
    pub conditions: Vec<ConditionCheck>,
    pub range_a: ExactRange,
    pub range_b: ExactRange,
    pub range_joint: ExactRange,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParetoCorner {
    pub corner: Corner,
    pub optimum: RationalJson,
    pub witness: Vec<RationalJson>,
    pub payoff_a: RationalJson,
    pub payoff_b: RationalJson,
    pub active_constraints: Vec<String>,
    pub floors_active: bool,
    pub improvement: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParetoEdgeFamily {
    pub family: EdgeFamily,
    pub label: String,
    pub grid: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_mix: Option<RationalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimum: Option<RationalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<RationalJson>>,
    pub improvement: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParetoSection {
    pub floor_a: RationalJson,
    pub floor_b: RationalJson,
    pub corners: Vec<ParetoCorner>,
    pub edge_families: Vec<ParetoEdgeFamily>,
    pub improvement_found: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Output of [`run_scenario`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub config: ScenarioConfig,
    pub tolerances: Tolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classical: Option<ClassicalSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantum_payoff: Option<QuantumPayoffSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equilibria: Option<EquilibriumSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corner_cases: Option<Vec<CornerCaseSection>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pareto: Option<ParetoSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interior_range: Option<InteriorRange>,
    pub checks: Vec<ConsistencyCheck>,
    pub pass: bool,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

fn exact_range(matrix: &PayoffMatrix2x2, corner: Corner, target: PayoffTarget) -> Result<ExactRange> {
    let r = payoff_range_for_corner(matrix, corner, target)?;
    Ok(ExactRange {
        min: RationalJson::from(&r.min),
        max: RationalJson::from(&r.max),
        argmin: rational_vec(r.argmin.components()),
        argmax: rational_vec(r.argmax.components()),
    })
}

fn check_deviations(
    name: &str,
    a: &BilinearPayoff,
    b: &BilinearPayoff,
    ne: &NashEquilibriumSet,
    tolerance: f64,
) -> ConsistencyCheck {
    let worst =
        ne.components().iter().flat_map(|c| c.sample(11)).map(|pt| max_deviation_gain(a, b, pt)).fold(0.0f64, f64::max);
    ConsistencyCheck {
        name: name.to_string(),
        pass: worst <= tolerance,
        detail: format!("largest unilateral gain over sampled members: {worst:e}"),
    }
}

fn classical_section(
    config: &ScenarioConfig,
    matrix: &PayoffMatrix2x2,
    checks: &mut Vec<ConsistencyCheck>,
) -> ClassicalSection {
    let coefficients_a = BilinearPayoff::classical(matrix, Player::A);
    let coefficients_b = BilinearPayoff::classical(matrix, Player::B);
    let equilibria = find_equilibria(&coefficients_a, &coefficients_b);
    let payoffs = ne_payoffs(&QuantumState::basis(Outcome::IW), matrix, &equilibria);
    checks.push(check_deviations(
        "classical equilibria are stable",
        &coefficients_a,
        &coefficients_b,
        &equilibria,
        ZERO_TOLERANCE,
    ));
    let closed_form = config.inspection.as_ref().map(|params| ClosedFormClassical {
        equilibrium: classical_mixed_ne(params),
        payoffs: classical_ne_payoffs(params),
    });
    ClassicalSection { matrix: *matrix, coefficients_a, coefficients_b, equilibria, payoffs, closed_form }
}

fn pareto_section(config: &ScenarioConfig, matrix: &PayoffMatrix2x2) -> Result<ParetoSection> {
    let floors = config.pareto_floors()?;
    let floor_a = rational::from_f64(floors.a)?;
    let floor_b = rational::from_f64(floors.b)?;
    let classical_joint = &floor_a + &floor_b;

    let mut corners = Vec::new();
    for corner in Corner::ALL {
        let program = pareto_program(matrix, corner, &floor_a, &floor_b)?;
        let result = match maximize_linear(&program) {
            Ok(r) => r,
            Err(Error::InfeasibleProgram(msg)) => {
                return Err(Error::InfeasibleProgram(format!("Pareto program at corner {corner}: {msg}")))
            }
            Err(e) => return Err(e),
        };
        let exact = crate::polytope::ExactMatrix::from_matrix(matrix)?;
        let (p, q) = corner.coordinates();
        let (p, q) = (int(p as i64), int(q as i64));
        let payoff_a = dot(&exact.payoff_vector(Player::A, &p, &q), result.witness.components());
        let payoff_b = dot(&exact.payoff_vector(Player::B, &p, &q), result.witness.components());
        let active =
            |label: &str| program.constraint_index(label).is_some_and(|i| result.active_constraints.contains(&i));
        corners.push(ParetoCorner {
            corner,
            optimum: RationalJson::from(&result.optimum),
            witness: rational_vec(result.witness.components()),
            payoff_a: RationalJson::from(&payoff_a),
            payoff_b: RationalJson::from(&payoff_b),
            active_constraints: result
                .active_constraints
                .iter()
                .map(|&i| program.constraints()[i].label.clone())
                .collect(),
            floors_active: active(FLOOR_A_LABEL) && active(FLOOR_B_LABEL),
            improvement: result.optimum > classical_joint,
        });
    }

    let mut edge_families = Vec::new();
    for family in EdgeFamily::ALL {
        let r = edge_family_pareto_max(matrix, family, &floor_a, &floor_b, config.edge_grid)?;
        let entry = match &r.best {
            Some((mix, best)) => ParetoEdgeFamily {
                family,
                label: family.label().to_string(),
                grid: r.grid,
                best_mix: Some(RationalJson::from(mix)),
                optimum: Some(RationalJson::from(&best.optimum)),
                witness: Some(rational_vec(best.witness.components())),
                improvement: best.optimum > classical_joint,
            },
            None => ParetoEdgeFamily {
                family,
                label: family.label().to_string(),
                grid: r.grid,
                best_mix: None,
                optimum: None,
                witness: None,
                improvement: false,
            },
        };
        edge_families.push(entry);
    }
    let improvement_found = corners.iter().any(|c| c.improvement) || edge_families.iter().any(|e| e.improvement);
    Ok(ParetoSection {
        floor_a: RationalJson::from(&floor_a),
        floor_b: RationalJson::from(&floor_b),
        corners,
        edge_families,
        improvement_found,
    })
}

/// Runs every analysis requested by `config`.
pub fn run_scenario(config: &ScenarioConfig, comparison_tolerance: f64) -> Result<ReportDocument> {
    config.validate()?;
    let matrix = config.payoff_matrix();
    let state = config.quantum_state()?;
    let flags = &config.analysis;
    let mut checks = Vec::new();

    let classical = flags.classical.then(|| classical_section(config, &matrix, &mut checks));

    let quantum_payoff = flags.quantum_payoff.map(|profile| {
        let coefficients_a = bilinear_coefficients(&matrix, &state, Player::A);
        let coefficients_b = bilinear_coefficients(&matrix, &state, Player::B);
        let rho = final_density(&state, profile);
        let trace_payoff_a = trace_payoff(&rho, &payoff_operator(&matrix, Player::A));
        let trace_payoff_b = trace_payoff(&rho, &payoff_operator(&matrix, Player::B));
        let payoff_a = coefficients_a.eval_at(profile);
        let payoff_b = coefficients_b.eval_at(profile);
        let gap = (payoff_a - trace_payoff_a).abs().max((payoff_b - trace_payoff_b).abs());
        checks.push(ConsistencyCheck {
            name: "trace and closed-form payoffs agree".into(),
            pass: gap <= 1e-10,
            detail: format!("largest difference {gap:e}"),
        });
        QuantumPayoffSection {
            profile,
            coefficients_a,
            coefficients_b,
            payoff_a,
            payoff_b,
            joint: payoff_a + payoff_b,
            trace_payoff_a,
            trace_payoff_b,
        }
    });

    let equilibria = flags.find_ne.then(|| {
        let coefficients_a = bilinear_coefficients(&matrix, &state, Player::A);
        let coefficients_b = bilinear_coefficients(&matrix, &state, Player::B);
        let set = find_equilibria(&coefficients_a, &coefficients_b);
        checks.push(check_deviations(
            "quantum equilibria are stable",
            &coefficients_a,
            &coefficients_b,
            &set,
            ZERO_TOLERANCE,
        ));
        EquilibriumSection {
            probabilities: state.probabilities(),
            payoffs: ne_payoffs(&state, &matrix, &set),
            interior_crossing: interior_crossing(&coefficients_a, &coefficients_b),
            coefficients_a,
            coefficients_b,
            equilibria: set,
        }
    });

    let corner_cases = if flags.corner_cases {
        let ne = equilibria_for_state(&matrix, &state);
        let mut sections = Vec::new();
        for corner in Corner::ALL {
            let report = corner_conditions_for_matrix(&matrix, &state, corner);
            let in_set = ne.contains(corner.profile(), 1e-12);
            checks.push(ConsistencyCheck {
                name: format!("corner {corner} conditions match equilibrium set"),
                pass: report.satisfied == in_set,
                detail: format!("conditions satisfied: {}, corner in set: {in_set}", report.satisfied),
            });
            sections.push(CornerCaseSection {
                corner,
                equilibrium_for_state: in_set,
                conditions: report.inequalities,
                range_a: exact_range(&matrix, corner, PayoffTarget::A)?,
                range_b: exact_range(&matrix, corner, PayoffTarget::B)?,
                range_joint: exact_range(&matrix, corner, PayoffTarget::Joint)?,
            });
        }
        Some(sections)
    } else {
        None
    };

    let pareto = if flags.pareto {
        let section = pareto_section(config, &matrix)?;
        checks.push(ConsistencyCheck {
            name: "no Pareto improvement over the classical equilibrium".into(),
            pass: !section.improvement_found,
            detail: "floor-constrained joint maxima at corners and on edge families".into(),
        });
        Some(section)
    } else {
        None
    };

    let interior_range = flags.interior_range.then(|| interior_payoff_range(&matrix, config.sampling));

    let pass = checks.iter().all(|c| c.pass);
    Ok(ReportDocument {
        config: config.clone(),
        tolerances: Tolerances {
            normalization: NORMALIZATION_TOLERANCE,
            zero_slope: ZERO_TOLERANCE,
            comparison: comparison_tolerance,
        },
        classical,
        quantum_payoff,
        equilibria,
        corner_cases,
        pareto,
        interior_range,
        checks,
        pass,
    })
}

/// One comparison against a reference value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GoldenItem {
    pub id: String,
    pub description: String,
    pub expected: Value,
    pub observed: Value,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReproduceOptions {
    pub sampling: SamplingOptions,
    pub edge_grid: usize,
    /// Tolerance for float items that have no printed-precision tolerance of their own.
    pub tolerance: f64,
}

impl Default for ReproduceOptions {
    fn default() -> Self {
        ReproduceOptions {
            sampling: SamplingOptions::default(),
            edge_grid: DEFAULT_EDGE_GRID,
            tolerance: DEFAULT_COMPARISON_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReproduceReport {
    pub options: ReproduceOptions,
    pub items: Vec<GoldenItem>,
    pub pass: bool,
}

impl ReproduceReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn item(&self, id: &str) -> Option<&GoldenItem> {
        self.items.iter().find(|i| i.id == id)
    }

    /// Fixed-width plain-text table, one line per item.
    pub fn summary_table(&self) -> String {
        let width = self.items.iter().map(|i| i.id.len()).max().unwrap_or(2).max(4);
        let mut out = format!("{:<width$}  {:<4}  {}\n", "item", "ok", "description");
        for item in &self.items {
            let status = if item.pass { "pass" } else { "FAIL" };
            out.push_str(&format!("{:<width$}  {:<4}  {}\n", item.id, status, item.description));
            if !item.pass {
                out.push_str(&format!("{:<width$}        expected {}\n", "", item.expected));
                out.push_str(&format!("{:<width$}        observed {}\n", "", item.observed));
            }
        }
        let verdict = if self.pass { "all items pass" } else { "some items FAIL" };
        let passed = self.items.iter().filter(|i| i.pass).count();
        out.push_str(&format!("{passed}/{} items pass: {verdict}\n", self.items.len()));
        out
    }
}

fn close_all(expected: &[f64], observed: &[f64], tolerance: f64) -> bool {
    expected.len() == observed.len() && expected.iter().zip(observed).all(|(e, o)| (e - o).abs() <= tolerance)
}

fn numeric_item(id: &str, description: &str, expected: &[f64], observed: &[f64], tolerance: f64) -> GoldenItem {
    GoldenItem {
        id: id.to_string(),
        description: description.to_string(),
        expected: json!(expected),
        observed: json!(observed),
        tolerance,
        pass: close_all(expected, observed, tolerance),
    }
}

fn coefficients(b: &BilinearPayoff) -> [f64; 4] {
    [b.alpha, b.beta, b.gamma, b.delta]
}

fn reference_state(x: [f64; 4]) -> QuantumState {
    QuantumState::from_probabilities(x).expect("built-in state is normalized")
}

/// Expected equilibrium shape of a built-in example.
enum ExpectedSet {
    Point(f64, f64),
    Edge(Player, f64),
    Square,
}

/// Id, description, squared moduli, expected set and payoffs.
type Example = (&'static str, &'static str, [f64; 4], ExpectedSet, [f64; 2]);

fn matches_expected(set: &NashEquilibriumSet, expected: &ExpectedSet, tolerance: f64) -> bool {
    match (set.single(), expected) {
        (Some(NeComponent::Point(pt)), ExpectedSet::Point(p, q)) => {
            (pt.p - p).abs() <= tolerance && (pt.q - q).abs() <= tolerance
        }
        (Some(NeComponent::Segment(seg)), ExpectedSet::Edge(player, value)) => {
            seg.is_edge() && seg.fixed_player == *player && seg.fixed_value == *value
        }
        (Some(NeComponent::FullSquare), ExpectedSet::Square) => true,
        _ => false,
    }
}

fn expected_set_json(expected: &ExpectedSet) -> Value {
    match expected {
        ExpectedSet::Point(p, q) => json!({"kind": "point", "p": p, "q": q}),
        ExpectedSet::Edge(player, value) => json!(NeComponent::Segment(Segment {
            fixed_player: *player,
            fixed_value: *value,
            free_from: 0.0,
            free_to: 1.0,
        })),
        ExpectedSet::Square => json!({"kind": "full_square"}),
    }
}

fn r2f(x: &Rational) -> f64 {
    rational::to_f64(x)
}

/// Runs the built-in reproduction battery for the inspection instance
/// `v=60, g=15, h=8, w=20`.
pub fn reproduce_reference(options: ReproduceOptions) -> ReproduceReport {
    let tol = options.tolerance;
    let mut items = Vec::new();
    let params = InspectionParams::new(60.0, 15.0, 8.0, 20.0).expect("built-in parameters are valid");
    let matrix = build_inspection_matrix(&params);

    let cells: Vec<f64> = matrix.cells().iter().flatten().copied().collect();
    items.push(numeric_item(
        "classical.matrix",
        "payoff matrix for v=60, g=15, h=8, w=20",
        &[32.0, 5.0, -8.0, 0.0, 40.0, 5.0, -20.0, 20.0],
        &cells,
        0.0,
    ));
    let ne = classical_mixed_ne(&params);
    items.push(numeric_item("classical.ne", "classical mixed equilibrium (p, q)", &[0.75, 0.6], &[ne.p, ne.q], tol));
    let pay = classical_ne_payoffs(&params);
    items.push(numeric_item(
        "classical.payoffs",
        "classical equilibrium payoffs (A, B, joint)",
        &[16.0, 5.0, 21.0],
        &[pay.payoff_a, pay.payoff_b, pay.joint],
        tol,
    ));

    let iw = QuantumState::basis(Outcome::IW);
    let ca = bilinear_coefficients(&matrix, &iw, Player::A);
    let cb = bilinear_coefficients(&matrix, &iw, Player::B);
    let observed: Vec<f64> = coefficients(&ca).into_iter().chain(coefficients(&cb)).collect();
    items.push(numeric_item(
        "quantum.embedding_coefficients",
        "state |IW> reproduces 12p + 60q - 20pq - 20 and 20pq - 15q - 20p + 20",
        &[-20.0, 12.0, 60.0, -20.0, 20.0, -20.0, -15.0, 20.0],
        &observed,
        0.0,
    ));

    let condition_examples = [
        (Corner::OneOne, [0.6, 0.4, 0.0, 0.0]),
        (Corner::ZeroZero, [0.4375, 0.375, 0.1875, 0.0]),
        (Corner::OneZero, [0.75, 0.0, 0.25, 0.0]),
        (Corner::ZeroOne, [0.0, 0.5, 0.0, 0.5]),
    ];
    for (corner, x) in condition_examples {
        let state = reference_state(x);
        let report = corner_conditions(&state, corner);
        let in_set = equilibria_for_state(&matrix, &state).contains(corner.profile(), 1e-12);
        items.push(GoldenItem {
            id: format!("corner.C{}.example", corner.case_number()),
            description: format!(
                "example state {x:?} satisfies C{} and {corner} is an equilibrium",
                corner.case_number()
            ),
            expected: json!({"satisfied": true, "corner_in_set": true}),
            observed: json!({"satisfied": report.satisfied, "corner_in_set": in_set}),
            tolerance: ZERO_TOLERANCE,
            pass: report.satisfied && in_set,
        });
    }

    const PRINTED: f64 = 5e-4;
    for corner in Corner::ALL {
        let ranges: Result<Vec<_>> =
            PayoffTarget::ALL.iter().map(|t| payoff_range_for_corner(&matrix, corner, *t)).collect();
        let id = format!("corner.C{}.ranges", corner.case_number());
        let description = format!("payoff ranges at corner {corner}: A, B, joint (printed to 3 decimals)");
        let expected = [-14.0, 19.333, 2.5, 10.625, -6.0, 22.667];
        match ranges {
            Ok(r) => {
                let observed: Vec<f64> = r.iter().flat_map(|x| [r2f(&x.min), r2f(&x.max)]).collect();
                let exact = r[0].min == int(-14)
                    && r[0].max == rational::ratio(58, 3)
                    && r[1].min == rational::ratio(5, 2)
                    && r[1].max == rational::ratio(85, 8)
                    && r[2].min == int(-6)
                    && r[2].max == rational::ratio(68, 3);
                let mut item = numeric_item(&id, &description, &expected, &observed, PRINTED);
                item.pass &= exact;
                items.push(item);
            }
            Err(e) => items.push(GoldenItem {
                id,
                description,
                expected: json!(expected),
                observed: json!(e.to_string()),
                tolerance: PRINTED,
                pass: false,
            }),
        }
    }

    let witnesses = [
        (Corner::OneOne, [0.45, 0.3, 0.15, 0.1]),
        (Corner::ZeroZero, [0.1, 0.15, 0.3, 0.45]),
        (Corner::OneZero, [0.3, 0.45, 0.1, 0.15]),
        (Corner::ZeroOne, [0.15, 0.1, 0.45, 0.3]),
    ];
    for (corner, witness) in witnesses {
        let id = format!("pareto.C{}", corner.case_number());
        let description = format!("max joint payoff at corner {corner} with A >= 16, B >= 5: 21, both floors active");
        let outcome = (|| -> Result<(Rational, bool, bool)> {
            let program = pareto_program(&matrix, corner, &int(16), &int(5))?;
            let result = maximize_linear(&program)?;
            let active =
                |label: &str| program.constraint_index(label).is_some_and(|i| result.active_constraints.contains(&i));
            let w = ProbabilityVector::from_decimals(witness)?;
            let witness_ok =
                program.is_feasible(w.components()) && dot(program.objective(), w.components()) == result.optimum;
            Ok((result.optimum, active(FLOOR_A_LABEL) && active(FLOOR_B_LABEL), witness_ok))
        })();
        items.push(match outcome {
            Ok((optimum, floors_active, witness_ok)) => GoldenItem {
                id,
                description,
                expected: json!({"optimum": "21", "floors_active": true, "witness_attains": true}),
                observed: json!({
                    "optimum": RationalJson::from(&optimum).fraction,
                    "floors_active": floors_active,
                    "witness_attains": witness_ok,
                }),
                tolerance: 0.0,
                pass: optimum == int(21) && floors_active && witness_ok,
            },
            Err(e) => GoldenItem {
                id,
                description,
                expected: json!({"optimum": "21"}),
                observed: json!(e.to_string()),
                tolerance: 0.0,
                pass: false,
            },
        });
    }

    let mut family_max: Option<Rational> = None;
    let mut family_error = None;
    for family in EdgeFamily::ALL {
        match edge_family_pareto_max(&matrix, family, &int(16), &int(5), options.edge_grid) {
            Ok(r) => {
                if let Some((_, best)) = r.best {
                    if family_max.as_ref().is_none_or(|m| best.optimum > *m) {
                        family_max = Some(best.optimum);
                    }
                }
            }
            Err(e) => family_error = Some(e.to_string()),
        }
    }
    items.push(GoldenItem {
        id: "pareto.edge_families".into(),
        description: "edge-mixed equilibria (p*,0), (p*,1), (0,q*), (1,q*) never beat joint payoff 21 under the floors"
            .into(),
        expected: json!({"max_joint_at_most": "21"}),
        observed: match (&family_error, &family_max) {
            (Some(e), _) => json!(e),
            (None, Some(m)) => json!({"max_joint": RationalJson::from(m).fraction}),
            (None, None) => json!({"max_joint": null}),
        },
        tolerance: 0.0,
        pass: family_error.is_none() && family_max.as_ref().is_some_and(|m| *m <= int(21)),
    });

    const ATTAINMENT: f64 = 0.05;
    const VIOLATION: f64 = 1e-6;
    let interior = interior_payoff_range(&matrix, options.sampling);
    let expected = [11.0, 16.0, 5.0, 7.5, 18.5, 21.0];
    let observed = [
        interior.payoff_a.min,
        interior.payoff_a.max,
        interior.payoff_b.min,
        interior.payoff_b.max,
        interior.joint.min,
        interior.joint.max,
    ];
    let within_bounds =
        observed.chunks(2).zip(expected.chunks(2)).all(|(o, e)| o[0] >= e[0] - VIOLATION && o[1] <= e[1] + VIOLATION);
    items.push(GoldenItem {
        id: "interior.ranges".into(),
        description: "interior-equilibrium payoff ranges A in [11,16], B in [5,7.5], joint in [18.5,21]".into(),
        expected: json!(expected),
        observed: json!(observed),
        tolerance: ATTAINMENT,
        pass: close_all(&expected, &observed, ATTAINMENT) && within_bounds,
    });

    let examples: [Example; 8] = [
        (
            "example.1",
            "|IW>: unique equilibrium (0.75, 0.6) with payoffs (16, 5)",
            [1.0, 0.0, 0.0, 0.0],
            ExpectedSet::Point(0.75, 0.6),
            [16.0, 5.0],
        ),
        (
            "example.2a",
            "Bell state (|IW>+|NS>)/sqrt2: unique equilibrium (0.5, 0.5), payoffs (11, 7.5)",
            [0.5, 0.0, 0.0, 0.5],
            ExpectedSet::Point(0.5, 0.5),
            [11.0, 7.5],
        ),
        (
            "example.2b",
            "Bell state (|IS>+|NW>)/sqrt2: unique equilibrium (0.5, 0.5), payoffs (11, 7.5)",
            [0.0, 0.5, 0.5, 0.0],
            ExpectedSet::Point(0.5, 0.5),
            [11.0, 7.5],
        ),
        (
            "example.3",
            "(|IW>+|IS>)/sqrt2: equilibria {(1,q)}, payoffs (12, 2.5)",
            [0.5, 0.5, 0.0, 0.0],
            ExpectedSet::Edge(Player::A, 1.0),
            [12.0, 2.5],
        ),
        (
            "example.4",
            "(|NW>+|NS>)/sqrt2: equilibria {(0,q)}, payoffs (12, 2.5)",
            [0.0, 0.0, 0.5, 0.5],
            ExpectedSet::Edge(Player::A, 0.0),
            [12.0, 2.5],
        ),
        (
            "example.5",
            "(|IW>+|NW>)/sqrt2: equilibria {(p,0)}, payoffs (-14, 10)",
            [0.5, 0.0, 0.5, 0.0],
            ExpectedSet::Edge(Player::B, 0.0),
            [-14.0, 10.0],
        ),
        (
            "example.6",
            "(|IS>+|NS>)/sqrt2: equilibria {(p,1)}, payoffs (-14, 10)",
            [0.0, 0.5, 0.0, 0.5],
            ExpectedSet::Edge(Player::B, 1.0),
            [-14.0, 10.0],
        ),
        (
            "example.7",
            "uniform state: every profile is an equilibrium, payoffs (11, 7.5)",
            [0.25; 4],
            ExpectedSet::Square,
            [11.0, 7.5],
        ),
    ];
    for (id, description, x, expected_set, expected_payoffs) in examples {
        let state = reference_state(x);
        let set = equilibria_for_state(&matrix, &state);
        let pays = ne_payoffs(&state, &matrix, &set);
        let structure_ok = matches_expected(&set, &expected_set, tol);
        let payoff_ok = pays.len() == 1
            && pays[0].constant
            && close_all(&expected_payoffs, &[pays[0].payoff_a, pays[0].payoff_b], tol);
        items.push(GoldenItem {
            id: id.to_string(),
            description: description.to_string(),
            expected: json!({
                "equilibria": expected_set_json(&expected_set),
                "payoffs": expected_payoffs,
                "constant": true,
            }),
            observed: json!({
                "equilibria": set,
                "payoffs": pays.iter().map(|p| [p.payoff_a, p.payoff_b]).collect::<Vec<_>>(),
                "constant": pays.iter().all(|p| p.constant),
            }),
            tolerance: tol,
            pass: structure_ok && payoff_ok,
        });
    }

    let quantum_check = {
        let bell = reference_state([0.5, 0.0, 0.0, 0.5]);
        let profile = StrategyProfile { p: 0.5, q: 0.5 };
        let rho = final_density(&bell, profile);
        [
            trace_payoff(&rho, &payoff_operator(&matrix, Player::A)),
            trace_payoff(&rho, &payoff_operator(&matrix, Player::B)),
        ]
    };
    items.push(numeric_item(
        "quantum.trace_payoff_bell",
        "density-matrix trace payoffs of the Bell state at p = q = 0.5",
        &[11.0, 7.5],
        &quantum_check,
        tol,
    ));

    let pass = items.iter().all(|i| i.pass);
    ReproduceReport { options, items, pass }
}
