//! Cascade codes: one crossing per level, each level described by a
//! pattern and a shift relative to the previous level's reference strand.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::map::PlanarMap;

/// Level pattern. The start pattern (four strands down) is implicit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    /// Two strands in, two out.
    X,
    /// One strand in, three out.
    P,
    /// Three strands in, one out.
    Q,
}

impl Pattern {
    pub const ALL: [Pattern; 3] = [Pattern::X, Pattern::P, Pattern::Q];

    pub fn up_degree(self) -> usize {
        match self {
            Pattern::X => 2,
            Pattern::P => 1,
            Pattern::Q => 3,
        }
    }

    pub fn down_degree(self) -> usize {
        4 - self.up_degree()
    }

    pub fn width_delta(self) -> isize {
        self.down_degree() as isize - self.up_degree() as isize
    }

    /// Pattern of a crossing with `up` edges towards the rest of the map.
    pub fn from_up_degree(up: usize) -> Option<Pattern> {
        match up {
            1 => Some(Pattern::P),
            2 => Some(Pattern::X),
            3 => Some(Pattern::Q),
            _ => None,
        }
    }

    /// Offset of the reference strand among the pattern's down strands:
    /// the left one for X, the middle one for P, the only one for Q.
    pub fn reference_offset(self) -> usize {
        match self {
            Pattern::X | Pattern::Q => 0,
            Pattern::P => 1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pattern::X => 'X',
            Pattern::P => 'P',
            Pattern::Q => 'Q',
        }
    }
}

/// One level of a cascade code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub pattern: Pattern,
    pub shift: usize,
}

impl Step {
    pub fn new(pattern: Pattern, shift: usize) -> Self {
        Step { pattern, shift }
    }
}

/// Ordered list of levels below the start crossing. Ordering is
/// lexicographic with `X < P < Q`, then by shift.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CascadeCode {
    pub steps: Vec<Step>,
}

impl CascadeCode {
    pub fn new(steps: Vec<Step>) -> Self {
        CascadeCode { steps }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Shorthand for tests and fixtures: `from_pairs(&[(Pattern::X, 0)])`.
    pub fn from_pairs(pairs: &[(Pattern, usize)]) -> Self {
        CascadeCode::new(pairs.iter().map(|&(p, m)| Step::new(p, m)).collect())
    }

    pub fn crossing_count(&self) -> usize {
        self.steps.len() + 1
    }

    pub fn pushed(&self, step: Step) -> Self {
        let mut steps = Vec::with_capacity(self.steps.len() + 1);
        steps.extend_from_slice(&self.steps);
        steps.push(step);
        CascadeCode { steps }
    }

    /// The code with its last level removed.
    pub fn prefix(&self, len: usize) -> Self {
        CascadeCode::new(self.steps[..len].to_vec())
    }

    /// Widths between levels: `w_1 = 4`, then one entry per level.
    pub fn validate(&self) -> Result<Vec<usize>> {
        let mut widths = Vec::with_capacity(self.steps.len() + 1);
        let mut w = 4usize;
        widths.push(w);
        for (i, s) in self.steps.iter().enumerate() {
            let level = i + 2;
            if i == 0 && s.shift != 0 {
                return Err(Error::NonzeroFirstShift(s.shift));
            }
            if s.shift >= w {
                return Err(Error::ShiftOutOfRange {
                    level,
                    shift: s.shift,
                    width: w,
                });
            }
            let up = s.pattern.up_degree();
            if w < up {
                return Err(Error::WidthUnderflow {
                    level,
                    width: w,
                    needed: up,
                });
            }
            w = w - up + s.pattern.down_degree();
            if w < 2 {
                return Err(Error::WidthUnderflow {
                    level,
                    width: w,
                    needed: 2,
                });
            }
            widths.push(w);
        }
        Ok(widths)
    }

    pub fn width_profile(&self) -> Result<Vec<usize>> {
        self.validate()
    }

    /// Draws the code. See [`expand_with_reference`].
    pub fn expand(&self) -> Result<PlanarMap> {
        Ok(expand_with_reference(self)?.0)
    }
}

/// Expands a code into its map, also returning the leg position of the last
/// level's reference strand. Each level glues its up strands to the legs
/// starting at `(reference + shift) mod width`.
pub fn expand_with_reference(code: &CascadeCode) -> Result<(PlanarMap, usize)> {
    code.validate()?;
    let mut map = PlanarMap::single_crossing();
    let mut reference = 0;
    for s in &code.steps {
        let w = map.leg_count();
        let (next, first) = map.attach(s.pattern.up_degree(), (reference + s.shift) % w);
        reference = first + s.pattern.reference_offset();
        map = next;
    }
    Ok((map, reference))
}

impl fmt::Display for CascadeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.crossing_count())?;
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{} {}", s.pattern.symbol(), s.shift)?;
        }
        Ok(())
    }
}

impl FromStr for CascadeCode {
    type Err = Error;

    /// Parses `n;α m;α m;...`, e.g. `6;X 0;X 0;P 1;X 5;X 2` or `1;`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("missing ';' in {s:?}")))?;
        let n: usize = head
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad crossing count {head:?}")))?;
        let mut steps = Vec::new();
        if !rest.trim().is_empty() {
            for part in rest.split(';') {
                let mut it = part.split_whitespace();
                let pattern = match it.next() {
                    Some("X") => Pattern::X,
                    Some("P") => Pattern::P,
                    Some("Q") => Pattern::Q,
                    other => return Err(Error::Parse(format!("bad pattern {other:?}"))),
                };
                let shift = it
                    .next()
                    .and_then(|m| m.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad shift in {part:?}")))?;
                if it.next().is_some() {
                    return Err(Error::Parse(format!("trailing input in {part:?}")));
                }
                steps.push(Step::new(pattern, shift));
            }
        }
        if steps.len() + 1 != n {
            return Err(Error::Parse(format!(
                "header says {n} crossings but {} levels follow",
                steps.len()
            )));
        }
        Ok(CascadeCode::new(steps))
    }
}
