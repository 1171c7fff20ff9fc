//! The pinned robotic arm `R_{m,n}`: `n` unit links, each facing up, down or
//! right, based at the lower left corner of a tunnel of height `m`.
//!
//! A state is its direction word. The induced lattice path must stay inside
//! `0 ≤ y ≤ m` and visit `n + 1` distinct lattice points. The tunnel is open
//! to the right; links never face left.
//!
//! Local moves are corner flips (two consecutive, differently oriented links
//! swap directions) and 90° rotations of the last link.

mod planner;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use planner::ArmPlanner;

use crate::complex::{is_cat0, Certificate, ComplexError, CubeComplex, Refutation};
use crate::geodesic::GeodesicError;
use crate::Guard;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArmError {
    #[error("tunnel height and arm length must be positive (got height {height}, length {length})")]
    InvalidSpec { height: usize, length: usize },
    #[error("`{0}` is not a direction (expected U, D or R)")]
    BadDirection(char),
    #[error("state `{word}` has {got} links, expected {expected}")]
    WrongLength {
        word: String,
        expected: usize,
        got: usize,
    },
    #[error("`{0}` is not a valid position of the arm")]
    InvalidState(String),
    #[error("move {mv} does not apply to `{state}`")]
    InapplicableMove { mv: ArmMove, state: String },
    #[error("more than {limit} arm states")]
    GuardExceeded { limit: u64 },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("configuration space is not CAT(0): {0}")]
    NotCat0(Refutation),
    #[error(transparent)]
    Geodesic(#[from] GeodesicError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    D,
    R,
    U,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::D, Direction::R, Direction::U];

    pub fn as_char(self) -> char {
        match self {
            Direction::D => 'D',
            Direction::R => 'R',
            Direction::U => 'U',
        }
    }

    pub fn step(self) -> (i32, i32) {
        match self {
            Direction::D => (0, -1),
            Direction::R => (1, 0),
            Direction::U => (0, 1),
        }
    }

    /// Whether turning `self` into `other` is a quarter turn.
    pub fn quarter_turn(self, other: Direction) -> bool {
        (self == Direction::R) != (other == Direction::R)
    }
}

impl TryFrom<char> for Direction {
    type Error = ArmError;

    fn try_from(c: char) -> Result<Self, ArmError> {
        match c {
            'D' => Ok(Direction::D),
            'R' => Ok(Direction::R),
            'U' => Ok(Direction::U),
            other => Err(ArmError::BadDirection(other)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArmSpec {
    /// Tunnel height `m`: lattice rows `0..=m`.
    pub height: usize,
    /// Number of links `n`.
    pub length: usize,
}

impl ArmSpec {
    pub fn new(height: usize, length: usize) -> Result<Self, ArmError> {
        if height == 0 || length == 0 {
            return Err(ArmError::InvalidSpec { height, length });
        }
        Ok(ArmSpec { height, length })
    }

    /// The straight arm `R…R`, valid for every spec.
    pub fn straight(&self) -> ArmState {
        ArmState(vec![Direction::R; self.length])
    }

    /// Parses and validates a direction word for this arm.
    pub fn state(&self, word: &str) -> Result<ArmState, ArmError> {
        let state: ArmState = word.parse()?;
        if state.len() != self.length {
            return Err(ArmError::WrongLength {
                word: word.to_owned(),
                expected: self.length,
                got: state.len(),
            });
        }
        if !self.admits(&state) {
            return Err(ArmError::InvalidState(word.to_owned()));
        }
        Ok(state)
    }

    /// Stays in the tunnel and never revisits a lattice point.
    pub fn admits(&self, state: &ArmState) -> bool {
        state.len() == self.length && self.admits_prefix(&state.0)
    }

    fn admits_prefix(&self, links: &[Direction]) -> bool {
        let mut visited = Vec::with_capacity(links.len() + 1);
        let (mut x, mut y) = (0i32, 0i32);
        visited.push((x, y));
        for d in links {
            let (dx, dy) = d.step();
            x += dx;
            y += dy;
            if y < 0 || y > self.height as i32 || visited.contains(&(x, y)) {
                return false;
            }
            visited.push((x, y));
        }
        true
    }
}

/// Checks a raw word against a spec. Errors on a bad alphabet or length.
pub fn is_valid(spec: ArmSpec, word: &str) -> Result<bool, ArmError> {
    match spec.state(word) {
        Ok(_) => Ok(true),
        Err(ArmError::InvalidState(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArmState(Vec<Direction>);

impl ArmState {
    pub fn links(&self) -> &[Direction] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Lattice points from the base `(0, 0)` to the tip.
    pub fn points(&self) -> Vec<(i32, i32)> {
        let mut pts = Vec::with_capacity(self.len() + 1);
        let (mut x, mut y) = (0, 0);
        pts.push((x, y));
        for d in &self.0 {
            let (dx, dy) = d.step();
            x += dx;
            y += dy;
            pts.push((x, y));
        }
        pts
    }

    /// Applies a move without checking the result.
    fn applied(&self, mv: ArmMove) -> ArmState {
        let mut links = self.0.clone();
        match mv {
            ArmMove::Flip(i) => links.swap(i - 1, i),
            ArmMove::Rotate(d) => *links.last_mut().expect("non-empty arm") = d,
        }
        ArmState(links)
    }
}

impl fmt::Display for ArmState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{}", d.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for ArmState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArmState({self})")
    }
}

impl FromStr for ArmState {
    type Err = ArmError;

    fn from_str(s: &str) -> Result<Self, ArmError> {
        s.chars()
            .map(Direction::try_from)
            .collect::<Result<_, _>>()
            .map(ArmState)
    }
}

/// A local move. Flips name the first of the two links by its 1-based
/// position; rotations name the new direction of the last link.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArmMove {
    Flip(usize),
    Rotate(Direction),
}

impl fmt::Display for ArmMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArmMove::Flip(i) => write!(f, "Flip({i})"),
            ArmMove::Rotate(d) => write!(f, "Rotate({})", d.as_char()),
        }
    }
}

impl ArmMove {
    /// Links touched, 1-based.
    pub fn support(&self, length: usize) -> [usize; 2] {
        match *self {
            ArmMove::Flip(i) => [i, i + 1],
            ArmMove::Rotate(_) => [length, length],
        }
    }

    /// Edge label in the configuration space, the same from both ends:
    /// `f<i>` for flips, `rU`/`rD` for rotations between R and U/D.
    pub fn label(&self, at: &ArmState) -> String {
        match *self {
            ArmMove::Flip(i) => format!("f{i}"),
            ArmMove::Rotate(d) => {
                let last = *at.links().last().expect("non-empty arm");
                let vertical = if d == Direction::R { last } else { d };
                format!("r{}", vertical.as_char())
            }
        }
    }

    /// Inverse of [`ArmMove::label`] at a given state.
    pub fn from_label(label: &str, at: &ArmState) -> Option<ArmMove> {
        if let Some(i) = label.strip_prefix('f') {
            return i.parse().ok().map(ArmMove::Flip);
        }
        let vertical = Direction::try_from(label.strip_prefix('r')?.chars().next()?).ok()?;
        let last = *at.links().last()?;
        Some(if last == Direction::R {
            ArmMove::Rotate(vertical)
        } else {
            ArmMove::Rotate(Direction::R)
        })
    }

    /// The result of the move, when it is legal at `at`.
    pub fn apply(&self, spec: ArmSpec, at: &ArmState) -> Result<ArmState, ArmError> {
        let inapplicable = || ArmError::InapplicableMove {
            mv: *self,
            state: at.to_string(),
        };
        let shape_ok = match *self {
            ArmMove::Flip(i) => i >= 1 && i < at.len() && at.0[i - 1] != at.0[i],
            ArmMove::Rotate(d) => at.0.last().is_some_and(|&last| last.quarter_turn(d)),
        };
        if !shape_ok {
            return Err(inapplicable());
        }
        let next = at.applied(*self);
        if spec.admits(&next) {
            Ok(next)
        } else {
            Err(inapplicable())
        }
    }
}

/// All valid states, in lexicographic order with `D < R < U`.
pub fn enumerate_states(spec: ArmSpec, guard: Guard) -> Result<Vec<ArmState>, ArmError> {
    let mut out = Vec::new();
    let mut links = Vec::with_capacity(spec.length);
    let mut points = vec![(0i32, 0i32)];
    extend(spec, guard, &mut links, &mut points, &mut out)?;
    Ok(out)
}

fn extend(
    spec: ArmSpec,
    guard: Guard,
    links: &mut Vec<Direction>,
    points: &mut Vec<(i32, i32)>,
    out: &mut Vec<ArmState>,
) -> Result<(), ArmError> {
    if links.len() == spec.length {
        if !guard.allows(out.len() as u64 + 1) {
            return Err(ArmError::GuardExceeded {
                limit: guard.max_states,
            });
        }
        out.push(ArmState(links.clone()));
        return Ok(());
    }
    let (x, y) = *points.last().expect("base point");
    for d in Direction::ALL {
        let (dx, dy) = d.step();
        let next = (x + dx, y + dy);
        if next.1 < 0 || next.1 > spec.height as i32 || points.contains(&next) {
            continue;
        }
        links.push(d);
        points.push(next);
        let result = extend(spec, guard, links, points, out);
        links.pop();
        points.pop();
        result?;
    }
    Ok(())
}

/// Legal moves at `at`: flips by position, then rotations by direction.
pub fn moves(spec: ArmSpec, at: &ArmState) -> Result<Vec<ArmMove>, ArmError> {
    if !spec.admits(at) {
        return Err(ArmError::InvalidState(at.to_string()));
    }
    let flips = (1..spec.length).map(ArmMove::Flip);
    let rotations = Direction::ALL.into_iter().map(ArmMove::Rotate);
    Ok(flips
        .chain(rotations)
        .filter(|m| m.apply(spec, at).is_ok())
        .collect())
}

/// Whether `set` can be performed at once: the moves touch disjoint links
/// and every one of the `2^k` partial combinations is a valid state.
pub fn simultaneous(spec: ArmSpec, at: &ArmState, set: &[ArmMove]) -> Result<bool, ArmError> {
    for m in set {
        m.apply(spec, at)?;
    }
    let mut touched = vec![false; spec.length + 1];
    for m in set {
        let [a, b] = m.support(spec.length);
        if touched[a] || touched[b] {
            return Ok(false);
        }
        touched[a] = true;
        touched[b] = true;
    }
    let k = set.len();
    for mask in 1usize..(1 << k) {
        let corner = (0..k)
            .filter(|b| mask & (1 << b) != 0)
            .fold(at.clone(), |s, b| s.applied(set[b]));
        if !spec.admits(&corner) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The configuration space: one vertex per state (named by its word), one
/// edge per move, one cube per set of simultaneous moves.
pub fn build_complex(spec: ArmSpec, guard: Guard) -> Result<CubeComplex, ArmError> {
    let states = enumerate_states(spec, guard)?;
    let index: std::collections::HashMap<&ArmState, usize> =
        states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut edges = Vec::new();
    for (v, s) in states.iter().enumerate() {
        for m in moves(spec, s)? {
            let t = m.apply(spec, s)?;
            let w = index[&t];
            if v < w {
                edges.push((v, w, m.label(s)));
            }
        }
    }
    let names = states.iter().map(ToString::to_string).collect();
    let root = index[&spec.straight()];
    drop(index);
    let skeleton = CubeComplex::new(names, edges, Vec::new(), Some(root))?;
    Ok(skeleton.fill_cubes(|x, v, labels| {
        let state = &states[v];
        let set: Vec<ArmMove> = labels
            .iter()
            .map(|&l| ArmMove::from_label(x.label_name(l), state).expect("arm labels parse"))
            .collect();
        simultaneous(spec, state, &set).unwrap_or(false)
    }))
}

/// The PIP of the configuration space rooted at `root`, with its CAT(0)
/// certificate. A refutation here would be a bug: the space is always CAT(0).
pub fn arm_pip(spec: ArmSpec, root: &ArmState, guard: Guard) -> Result<Certificate, ArmError> {
    let x = build_complex(spec, guard)?;
    arm_pip_of(&x, root)
}

pub(crate) fn arm_pip_of(x: &CubeComplex, root: &ArmState) -> Result<Certificate, ArmError> {
    let r = x
        .vertex_id(&root.to_string())
        .ok_or_else(|| ArmError::InvalidState(root.to_string()))?;
    is_cat0(x, r).map_err(ArmError::NotCat0)
}
