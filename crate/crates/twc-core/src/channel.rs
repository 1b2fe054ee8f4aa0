//! Channel data model: transition matrices, per-state marginal families, the
//! optional joint transition tensor, and the push-to-talk structural checks.
//!
//! A two-way channel here couples user 1 (alphabet `{0,...,r1-1}`, receiving
//! outputs from an alphabet of size `s1`) with user 2 (alphabet
//! `{0,...,r2-1}`, outputs of size `s2`). Symbol 0 is the idle / "listen"
//! symbol on both sides. The behaviour seen by one user is described per
//! *state*: the symbol currently held by the other user.

use crate::error::{Error, Result};
use crate::prob::ProbVec;

/// Tolerance for structural checks on channels: uniform idle rows, weak
/// symmetry, equality of per-state capacities, and joint/marginal agreement.
pub const STRUCTURE_TOLERANCE: f64 = 1e-9;

/// A row-stochastic matrix: one output distribution per input symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    rows: Vec<ProbVec>,
    output_size: usize,
}

impl TransitionMatrix {
    /// Wraps validated rows; all rows must share one output alphabet.
    pub fn new(rows: Vec<ProbVec>) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::InvalidArgument("transition matrix has no rows".into()))?;
        let output_size = first.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != output_size {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} outputs but row 0 has {output_size}",
                    row.len()
                )));
            }
        }
        Ok(Self { rows, output_size })
    }

    /// Builds a matrix from raw row slices, validating each as a distribution.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| ProbVec::new(r.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    /// Number of input symbols.
    pub fn input_size(&self) -> usize {
        self.rows.len()
    }

    /// Number of output symbols.
    pub fn output_size(&self) -> usize {
        self.output_size
    }

    /// The output distribution for input symbol `x`.
    pub fn row(&self, x: usize) -> &ProbVec {
        &self.rows[x]
    }

    /// `P(y | x)`.
    pub fn prob(&self, x: usize, y: usize) -> f64 {
        self.rows[x].mass(y)
    }

    /// The matrix restricted to input symbols `1, ...` (idle row dropped).
    pub fn nonzero_rows(&self) -> Result<TransitionMatrix> {
        if self.input_size() < 2 {
            return Err(Error::InvalidArgument(
                "matrix needs at least two rows to drop the idle row".into(),
            ));
        }
        TransitionMatrix::new(self.rows[1..].to_vec())
    }

    /// Output distribution induced by `input` (raw masses).
    pub fn output_distribution(&self, input: &ProbVec) -> Result<Vec<f64>> {
        if input.len() != self.input_size() {
            return Err(Error::DimensionMismatch(format!(
                "input distribution has {} symbols but the channel expects {}",
                input.len(),
                self.input_size()
            )));
        }
        let mut out = vec![0.0; self.output_size];
        for (x, row) in self.rows.iter().enumerate() {
            let px = input.mass(x);
            if px > 0.0 {
                for (y, &pyx) in row.masses().iter().enumerate() {
                    out[y] += px * pyx;
                }
            }
        }
        Ok(out)
    }
}

/// Transmission direction between the two users.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// User 1 transmits, user 2 receives.
    OneToTwo,
    /// User 2 transmits, user 1 receives.
    TwoToOne,
}

impl Direction {
    /// The opposite direction.
    pub fn reverse(self) -> Direction {
        match self {
            Direction::OneToTwo => Direction::TwoToOne,
            Direction::TwoToOne => Direction::OneToTwo,
        }
    }
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Direction::OneToTwo => write!(f, "1->2"),
            Direction::TwoToOne => write!(f, "2->1"),
        }
    }
}

/// One direction of a two-way channel, described per state: `state(x)` is the
/// transition matrix from the sender's alphabet to the receiver's output
/// alphabet while the receiver holds symbol `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalFamily {
    direction: Direction,
    states: Vec<TransitionMatrix>,
}

impl MarginalFamily {
    /// Wraps per-state matrices; all states must share input and output sizes.
    pub fn new(direction: Direction, states: Vec<TransitionMatrix>) -> Result<Self> {
        let first = states
            .first()
            .ok_or_else(|| Error::InvalidArgument("marginal family has no states".into()))?;
        let (inputs, outputs) = (first.input_size(), first.output_size());
        for (i, m) in states.iter().enumerate() {
            if m.input_size() != inputs || m.output_size() != outputs {
                return Err(Error::DimensionMismatch(format!(
                    "state {i} is {}x{} but state 0 is {inputs}x{outputs}",
                    m.input_size(),
                    m.output_size()
                )));
            }
        }
        Ok(Self { direction, states })
    }

    /// Which way this family transmits.
    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Number of states, i.e. the receiver's alphabet size.
    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    /// Sender alphabet size.
    pub fn sender_alphabet(&self) -> usize {
        self.states[0].input_size()
    }

    /// Receiver output alphabet size.
    pub fn output_alphabet(&self) -> usize {
        self.states[0].output_size()
    }

    /// The state matrix while the receiver holds symbol `x`.
    pub fn state(&self, x: usize) -> &TransitionMatrix {
        &self.states[x]
    }
}

/// The full joint transition law `P(y1, y2 | x1, x2)`, stored flat and indexed
/// `[x1][x2][y1][y2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTensor {
    r1: usize,
    r2: usize,
    s1: usize,
    s2: usize,
    probs: Vec<f64>,
}

impl JointTensor {
    /// Validates a flat probability tensor of length `r1 * r2 * s1 * s2` in
    /// which every `(x1, x2)` slice is a distribution over `(y1, y2)`.
    pub fn new(r1: usize, r2: usize, s1: usize, s2: usize, probs: Vec<f64>) -> Result<Self> {
        if r1 == 0 || r2 == 0 || s1 == 0 || s2 == 0 {
            return Err(Error::InvalidArgument("joint tensor alphabets must be nonempty".into()));
        }
        let expected = r1 * r2 * s1 * s2;
        if probs.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "joint tensor has {} entries but {r1}x{r2}x{s1}x{s2} = {expected} were expected",
                probs.len()
            )));
        }
        let tensor = Self { r1, r2, s1, s2, probs };
        for x1 in 0..r1 {
            for x2 in 0..r2 {
                ProbVec::new(tensor.slice(x1, x2).to_vec()).map_err(|e| {
                    Error::InvalidProbVec(format!(
                        "joint tensor slice at (x1={x1}, x2={x2}) is not a distribution: {e}"
                    ))
                })?;
            }
        }
        Ok(tensor)
    }

    /// `P(y1, y2 | x1, x2)`.
    pub fn prob(&self, x1: usize, x2: usize, y1: usize, y2: usize) -> f64 {
        self.probs[((x1 * self.r2 + x2) * self.s1 + y1) * self.s2 + y2]
    }

    /// The `(y1, y2)` slice for a fixed input pair, flattened with `y1` major.
    pub fn slice(&self, x1: usize, x2: usize) -> &[f64] {
        let base = (x1 * self.r2 + x2) * self.s1 * self.s2;
        &self.probs[base..base + self.s1 * self.s2]
    }

    /// Alphabet sizes `(r1, r2, s1, s2)`.
    pub fn dims(&self) -> (usize, usize, usize, usize) {
        (self.r1, self.r2, self.s1, self.s2)
    }

    /// Marginal law of `y2` given `(x1, x2)`, arranged as the family of
    /// forward state matrices (one per `x2`, rows indexed by `x1`).
    pub fn marginal_forward(&self) -> Result<MarginalFamily> {
        let mut states = Vec::with_capacity(self.r2);
        for x2 in 0..self.r2 {
            let mut rows = Vec::with_capacity(self.r1);
            for x1 in 0..self.r1 {
                let mut row = vec![0.0; self.s2];
                for y1 in 0..self.s1 {
                    for y2 in 0..self.s2 {
                        row[y2] += self.prob(x1, x2, y1, y2);
                    }
                }
                rows.push(ProbVec::new(row)?);
            }
            states.push(TransitionMatrix::new(rows)?);
        }
        MarginalFamily::new(Direction::OneToTwo, states)
    }

    /// Marginal law of `y1` given `(x1, x2)`, arranged as the family of
    /// backward state matrices (one per `x1`, rows indexed by `x2`).
    pub fn marginal_backward(&self) -> Result<MarginalFamily> {
        let mut states = Vec::with_capacity(self.r1);
        for x1 in 0..self.r1 {
            let mut rows = Vec::with_capacity(self.r2);
            for x2 in 0..self.r2 {
                let mut row = vec![0.0; self.s1];
                for y1 in 0..self.s1 {
                    for y2 in 0..self.s2 {
                        row[y1] += self.prob(x1, x2, y1, y2);
                    }
                }
                rows.push(ProbVec::new(row)?);
            }
            states.push(TransitionMatrix::new(rows)?);
        }
        MarginalFamily::new(Direction::TwoToOne, states)
    }
}

/// A complete two-way channel description.
///
/// The two marginal families are always present and are what every capacity
/// computation consumes; the joint tensor is optional because the marginals
/// alone determine all quantities computed by this crate, and a physical
/// channel need not factor into a product of its marginals.
#[derive(Debug, Clone, PartialEq)]
pub struct TwcSpec {
    name: String,
    r1: usize,
    r2: usize,
    s1: usize,
    s2: usize,
    joint: Option<JointTensor>,
    forward: MarginalFamily,
    backward: MarginalFamily,
}

impl TwcSpec {
    /// Builds a spec from a joint tensor, deriving both marginal families.
    pub fn from_joint(name: impl Into<String>, joint: JointTensor) -> Result<Self> {
        let forward = joint.marginal_forward()?;
        let backward = joint.marginal_backward()?;
        let (r1, r2, s1, s2) = joint.dims();
        Ok(Self { name: name.into(), r1, r2, s1, s2, joint: Some(joint), forward, backward })
    }

    /// Builds a spec from the two marginal families alone.
    pub fn from_marginals(
        name: impl Into<String>,
        forward: MarginalFamily,
        backward: MarginalFamily,
    ) -> Result<Self> {
        if forward.direction() != Direction::OneToTwo {
            return Err(Error::InvalidArgument("forward family must transmit 1->2".into()));
        }
        if backward.direction() != Direction::TwoToOne {
            return Err(Error::InvalidArgument("backward family must transmit 2->1".into()));
        }
        let r1 = forward.sender_alphabet();
        let r2 = backward.sender_alphabet();
        if forward.num_states() != r2 {
            return Err(Error::DimensionMismatch(format!(
                "forward family has {} states but user 2 has {r2} symbols",
                forward.num_states()
            )));
        }
        if backward.num_states() != r1 {
            return Err(Error::DimensionMismatch(format!(
                "backward family has {} states but user 1 has {r1} symbols",
                backward.num_states()
            )));
        }
        let s2 = forward.output_alphabet();
        let s1 = backward.output_alphabet();
        Ok(Self { name: name.into(), r1, r2, s1, s2, joint: None, forward, backward })
    }

    /// Builds a spec carrying both the joint tensor and explicitly supplied
    /// marginals, verifying entrywise (within [`STRUCTURE_TOLERANCE`]) that
    /// the marginals are the ones the tensor induces.
    pub fn from_parts(
        name: impl Into<String>,
        joint: JointTensor,
        forward: MarginalFamily,
        backward: MarginalFamily,
    ) -> Result<Self> {
        let spec = Self::from_joint(name, joint)?;
        check_family_agreement(&spec.forward, &forward, "forward")?;
        check_family_agreement(&spec.backward, &backward, "backward")?;
        Ok(spec)
    }

    /// Human-readable channel name carried through reports and sweep results.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// User 1 input alphabet size.
    pub fn r1(&self) -> usize {
        self.r1
    }

    /// User 2 input alphabet size.
    pub fn r2(&self) -> usize {
        self.r2
    }

    /// User 1 output alphabet size.
    pub fn s1(&self) -> usize {
        self.s1
    }

    /// User 2 output alphabet size.
    pub fn s2(&self) -> usize {
        self.s2
    }

    /// The joint tensor, when one was supplied or derived.
    pub fn joint(&self) -> Option<&JointTensor> {
        self.joint.as_ref()
    }

    /// Marginal family for user 1 transmitting to user 2.
    pub fn forward(&self) -> &MarginalFamily {
        &self.forward
    }

    /// Marginal family for user 2 transmitting to user 1.
    pub fn backward(&self) -> &MarginalFamily {
        &self.backward
    }

    /// The family transmitting in `direction`.
    pub fn family(&self, direction: Direction) -> &MarginalFamily {
        match direction {
            Direction::OneToTwo => &self.forward,
            Direction::TwoToOne => &self.backward,
        }
    }

    /// Re-derives both marginal families from the joint tensor.
    ///
    /// Fails when the spec was built from marginals only.
    pub fn marginalize(&self) -> Result<(MarginalFamily, MarginalFamily)> {
        let joint = self.joint.as_ref().ok_or_else(|| {
            Error::Unsupported("channel was specified by marginals only; no joint tensor".into())
        })?;
        Ok((joint.marginal_forward()?, joint.marginal_backward()?))
    }
}

fn check_family_agreement(
    derived: &MarginalFamily,
    supplied: &MarginalFamily,
    label: &str,
) -> Result<()> {
    if supplied.direction() != derived.direction() {
        return Err(Error::InvalidArgument(format!(
            "{label} family must transmit {}",
            derived.direction()
        )));
    }
    if supplied.num_states() != derived.num_states()
        || supplied.sender_alphabet() != derived.sender_alphabet()
        || supplied.output_alphabet() != derived.output_alphabet()
    {
        return Err(Error::DimensionMismatch(format!(
            "{label} family dimensions do not match the joint tensor"
        )));
    }
    for state in 0..derived.num_states() {
        for x in 0..derived.sender_alphabet() {
            for y in 0..derived.output_alphabet() {
                let d = derived.state(state).prob(x, y);
                let s = supplied.state(state).prob(x, y);
                if (d - s).abs() > STRUCTURE_TOLERANCE {
                    return Err(Error::Structure(format!(
                        "{label} marginal disagrees with the joint tensor at state {state}, \
                         input {x}, output {y}: supplied {s}, derived {d}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Outcome of the push-to-talk structural validation.
#[derive(Debug, Clone)]
pub struct StructureReport {
    /// `r1, r2 >= 3` and `s1, s2 >= 2`.
    pub alphabets_ok: bool,
    /// Every state matrix's idle row (sender symbol 0) is uniform.
    pub idle_rows_ok: bool,
    /// One entry per violated constraint, naming the offending object.
    pub violations: Vec<String>,
}

impl StructureReport {
    /// True when no constraint was violated.
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the defining structure of a generalized push-to-talk two-way
/// channel: input alphabets of size at least 3, output alphabets of size at
/// least 2, and — in every state, in both directions — a uniform output
/// distribution when the sender holds the idle symbol 0 (within
/// [`STRUCTURE_TOLERANCE`]).
pub fn validate_ptt_structure(spec: &TwcSpec) -> StructureReport {
    let mut violations = Vec::new();

    let mut alphabets_ok = true;
    for (label, size, min) in [
        ("r1", spec.r1(), 3),
        ("r2", spec.r2(), 3),
        ("s1", spec.s1(), 2),
        ("s2", spec.s2(), 2),
    ] {
        if size < min {
            alphabets_ok = false;
            violations.push(format!("alphabet {label} has {size} symbols; at least {min} required"));
        }
    }

    let mut idle_rows_ok = true;
    for family in [spec.forward(), spec.backward()] {
        let uniform = 1.0 / family.output_alphabet() as f64;
        for state in 0..family.num_states() {
            let row = family.state(state).row(0);
            for (y, &p) in row.masses().iter().enumerate() {
                if (p - uniform).abs() > STRUCTURE_TOLERANCE {
                    idle_rows_ok = false;
                    violations.push(format!(
                        "direction {}, state {state}: idle row entry for output {y} is {p}, \
                         expected uniform {uniform}",
                        family.direction()
                    ));
                    break;
                }
            }
        }
    }

    StructureReport { alphabets_ok, idle_rows_ok, violations }
}

/// The classic ternary-input push-to-talk channel: each direction is noiseless
/// binary signalling when the listener idles and pure noise otherwise.
///
/// Both users have input alphabet `{0, 1, 2}` and binary outputs. The joint
/// law is the product of the two marginal laws.
pub fn shannon_ptt() -> TwcSpec {
    let uniform = ProbVec::uniform(2);
    let listening_state = TransitionMatrix::new(vec![
        uniform.clone(),
        ProbVec::delta(2, 0),
        ProbVec::delta(2, 1),
    ])
    .expect("static matrix is well-formed");
    let talking_state =
        TransitionMatrix::new(vec![uniform.clone(), uniform.clone(), uniform.clone()])
            .expect("static matrix is well-formed");

    let states = vec![listening_state, talking_state.clone(), talking_state];
    let forward = MarginalFamily::new(Direction::OneToTwo, states.clone())
        .expect("static family is well-formed");
    let backward =
        MarginalFamily::new(Direction::TwoToOne, states).expect("static family is well-formed");

    // The joint law factors: P(y1, y2 | x1, x2) = P(y1 | x1, x2) P(y2 | x1, x2).
    let (r, s) = (3usize, 2usize);
    let mut probs = Vec::with_capacity(r * r * s * s);
    for x1 in 0..r {
        for x2 in 0..r {
            for y1 in 0..s {
                for y2 in 0..s {
                    probs.push(
                        backward.state(x1).prob(x2, y1) * forward.state(x2).prob(x1, y2),
                    );
                }
            }
        }
    }
    let joint = JointTensor::new(r, r, s, s, probs).expect("static tensor is well-formed");
    TwcSpec::from_parts("shannon-ptt", joint, forward, backward)
        .expect("static channel is well-formed")
}

/// Largest admissible value of each noise parameter of [`table2`].
pub const TABLE2_PARAM_MAX: f64 = 2.0 / 3.0;

/// The four-parameter ternary family with binary feedback-free outputs per
/// direction: in every state the idle row is uniform on three outputs and the
/// two active rows are `(2/3 - t, t, 1/3)` and `(t, 2/3 - t, 1/3)` for a
/// state-dependent noise parameter `t`.
///
/// `a` governs direction 1->2 while user 2 idles, `b` while user 2 talks;
/// `c` governs direction 2->1 while user 1 idles, `d` while user 1 talks.
/// Each parameter must lie in `[0, 2/3]`.
pub fn table2(a: f64, b: f64, c: f64, d: f64) -> Result<TwcSpec> {
    for (label, t) in [("a", a), ("b", b), ("c", c), ("d", d)] {
        if !(0.0..=TABLE2_PARAM_MAX).contains(&t) {
            return Err(Error::InvalidArgument(format!(
                "parameter {label} = {t} outside [0, {TABLE2_PARAM_MAX}]"
            )));
        }
    }
    let state = |t: f64| -> Result<TransitionMatrix> {
        TransitionMatrix::new(vec![
            ProbVec::uniform(3),
            ProbVec::new(vec![2.0 / 3.0 - t, t, 1.0 / 3.0])?,
            ProbVec::new(vec![t, 2.0 / 3.0 - t, 1.0 / 3.0])?,
        ])
    };
    let forward =
        MarginalFamily::new(Direction::OneToTwo, vec![state(a)?, state(b)?, state(b)?])?;
    let backward =
        MarginalFamily::new(Direction::TwoToOne, vec![state(c)?, state(d)?, state(d)?])?;
    TwcSpec::from_marginals(format!("table2(a={a},b={b},c={c},d={d})"), forward, backward)
}
