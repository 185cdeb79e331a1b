//! Text descriptors of homomorphisms.
//!
//! ```text
//! spec     := "trivial" | label | sum | "proj" factor ":" su2
//! label    := "A" | … | "F"
//! sum      := term (("+" | ",") term)*
//! term     := [count] ("phi" | "φ") digit [digit]
//! factor   := "1" | "2"
//! ```
//!
//! One index digit names an `SU(2)` irreducible, two digits an `SU(2)²`
//! irreducible; a sum may not mix the two.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::reps::{
    projection_map, su2_name, torus_weights, Label, Su2Irrep, Su2Rep, Su2xSu2Irrep, Su2xSu2Rep,
    TorusMap,
};
use crate::weyl::GroupKind;

/// A homomorphism from `SU(2)` or `SU(2)²`, up to equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MapDescriptor {
    Trivial,
    Su2(Su2Rep),
    /// `ρ ∘ proj_k` with `factor` 0 or 1.
    Projection { factor: usize, rep: Su2Rep },
    Su2xSu2(Su2xSu2Rep),
}

impl MapDescriptor {
    /// Source torus dimension, or `None` for the trivial map.
    pub fn params(&self) -> Option<usize> {
        match self {
            MapDescriptor::Trivial => None,
            MapDescriptor::Su2(_) => Some(1),
            MapDescriptor::Su2xSu2(_) | MapDescriptor::Projection { .. } => Some(2),
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            MapDescriptor::Trivial => true,
            MapDescriptor::Su2(r) | MapDescriptor::Projection { rep: r, .. } => r.is_trivial(),
            MapDescriptor::Su2xSu2(r) => r.is_trivial(),
        }
    }

    /// Torus weights into `group`, with `params` source parameters (used
    /// only by the trivial map).
    pub fn torus_map(&self, group: GroupKind, params: usize) -> Result<TorusMap> {
        let check = |p: usize| {
            if p == params {
                Ok(())
            } else {
                Err(Error::ParamMismatch {
                    left: p,
                    right: params,
                })
            }
        };
        match self {
            MapDescriptor::Trivial => Ok(TorusMap::trivial(group, params)),
            MapDescriptor::Su2(r) => {
                check(1)?;
                torus_weights(r, group)
            }
            MapDescriptor::Su2xSu2(r) => {
                check(2)?;
                torus_weights(r, group)
            }
            MapDescriptor::Projection { factor, rep } => {
                check(2)?;
                projection_map(&torus_weights(rep, group)?, *factor)
            }
        }
    }

    /// The same map with the two `SU(2)` factors interchanged.
    pub fn factor_swapped(&self) -> Self {
        match self {
            MapDescriptor::Su2xSu2(r) => MapDescriptor::Su2xSu2(r.swapped()),
            MapDescriptor::Projection { factor, rep } => MapDescriptor::Projection {
                factor: 1 - factor,
                rep: rep.clone(),
            },
            other => other.clone(),
        }
    }
}

/// Labelled maps come first, in label order.
fn su2_key(r: &Su2Rep) -> (usize, &Su2Rep) {
    (Label::of_rep(r).map_or(Label::ALL.len(), |l| l as usize), r)
}

impl Ord for MapDescriptor {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use MapDescriptor::*;
        let rank = |d: &Self| match d {
            Trivial => 0,
            Su2(_) => 1,
            Projection { .. } => 2,
            Su2xSu2(_) => 3,
        };
        match (self, other) {
            (Su2(a), Su2(b)) => su2_key(a).cmp(&su2_key(b)),
            (Projection { factor: f, rep: a }, Projection { factor: g, rep: b }) => {
                (f, su2_key(a)).cmp(&(g, su2_key(b)))
            }
            (Su2xSu2(a), Su2xSu2(b)) => a.cmp(b),
            _ => rank(self).cmp(&rank(other)),
        }
    }
}

impl PartialOrd for MapDescriptor {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MapDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapDescriptor::Trivial => write!(f, "trivial"),
            MapDescriptor::Su2(r) => write!(f, "{}", su2_name(r)),
            MapDescriptor::Su2xSu2(r) => write!(f, "{r}"),
            MapDescriptor::Projection { factor, rep } => {
                write!(f, "proj{}:{}", factor + 1, su2_name(rep))
            }
        }
    }
}

impl Serialize for MapDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for MapDescriptor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_descriptor(s)
    }
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

pub fn parse_descriptor(input: &str) -> Result<MapDescriptor> {
    let s = input.trim();
    let offset = input.len() - input.trim_start().len();
    if s.is_empty() {
        return Err(err(offset, "empty descriptor"));
    }
    if s == "trivial" {
        return Ok(MapDescriptor::Trivial);
    }
    if let Some(rest) = s.strip_prefix("proj") {
        let factor = match rest.chars().next() {
            Some('1') => 0,
            Some('2') => 1,
            _ => return Err(err(offset + 4, "expected factor 1 or 2 after `proj`")),
        };
        if !rest[1..].starts_with(':') {
            return Err(err(offset + 5, "expected `:`"));
        }
        let inner_at = offset + 6;
        let rep = match parse_descriptor(&rest[2..]).map_err(|e| shift(e, inner_at))? {
            MapDescriptor::Su2(r) => r,
            MapDescriptor::Trivial => Su2Rep::new([]),
            _ => return Err(err(inner_at, "projection needs an SU(2) representation")),
        };
        return Ok(MapDescriptor::Projection { factor, rep });
    }
    if let Ok(l) = s.parse::<Label>() {
        return Ok(MapDescriptor::Su2(l.rep()));
    }
    parse_sum(s, offset)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}

enum Term {
    One(u32),
    Two(u32, u32),
}

fn parse_sum(s: &str, offset: usize) -> Result<MapDescriptor> {
    let mut one = Vec::new();
    let mut two = Vec::new();
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut i = 0;
    while i <= chars.len() {
        let start = chars.get(i).map_or(s.len(), |c| c.0);
        let mut j = i;
        while j < chars.len() && chars[j].1 != '+' && chars[j].1 != ',' {
            j += 1;
        }
        let end = chars.get(j).map_or(s.len(), |c| c.0);
        let (count, term) = parse_term(&s[start..end], offset + start)?;
        match term {
            Term::One(a) => one.push((Su2Irrep(a), count)),
            Term::Two(a, b) => two.push((Su2xSu2Irrep(a, b), count)),
        }
        if !one.is_empty() && !two.is_empty() {
            return Err(err(offset + start, "mixes SU(2) and SU(2)xSU(2) irreducibles"));
        }
        i = j + 1;
    }
    if two.is_empty() {
        Ok(MapDescriptor::Su2(Su2Rep::new(one)))
    } else {
        Ok(MapDescriptor::Su2xSu2(Su2xSu2Rep::new(two)))
    }
}

fn parse_term(t: &str, at: usize) -> Result<(u32, Term)> {
    let t_trim = t.trim_start();
    let at = at + (t.len() - t_trim.len());
    let t = t_trim.trim_end();
    if t.is_empty() {
        return Err(err(at, "expected a term"));
    }
    let digits = t.chars().take_while(char::is_ascii_digit).count();
    let count = if digits == 0 {
        1
    } else {
        t[..digits]
            .parse::<u32>()
            .map_err(|_| err(at, "multiplicity out of range"))?
    };
    if count == 0 {
        return Err(err(at, "zero multiplicity"));
    }
    let rest = &t[digits..];
    let name_len = if rest.starts_with("phi") {
        3
    } else if rest.starts_with('φ') {
        'φ'.len_utf8()
    } else {
        return Err(err(at + digits, "expected `phi`"));
    };
    let idx_at = at + digits + name_len;
    let idx = &rest[name_len..];
    if idx.is_empty() || !idx.chars().all(|c| c.is_ascii_digit()) {
        return Err(err(idx_at, "expected one or two index digits"));
    }
    let d: Vec<u32> = idx.chars().map(|c| c.to_digit(10).expect("digit")).collect();
    match d.as_slice() {
        [a] => Ok((count, Term::One(*a))),
        [a, b] => Ok((count, Term::Two(*a, *b))),
        _ => Err(err(idx_at, "expected one or two index digits")),
    }
}
