//! Pregroup types and ε-only type reductions.
//!
//! A [`PregroupType`] is a word of [`SimpleType`]s, each a basic type with an
//! integer adjoint exponent (`-1` for `x^l`, `+1` for `x^r`). A [`Reduction`]
//! is a planar set of cups contracting adjacent pairs `x^z x^(z+1)`, together
//! with the uncontracted survivors that make up the target type.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A generator of the grammar, such as `n` or `s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BasicType(String);

impl BasicType {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(Error::TypeSyntax {
                token: name,
                reason: "basic type names are non-empty and use letters, digits or `_`".into(),
            });
        }
        Ok(BasicType(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for BasicType {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        BasicType::new(value)
    }
}

impl From<BasicType> for String {
    fn from(value: BasicType) -> Self {
        value.0
    }
}

impl fmt::Display for BasicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A basic type with an adjoint exponent: `0` plain, negative for iterated
/// left adjoints, positive for iterated right adjoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    pub base: BasicType,
    pub adjoint: i32,
}

impl SimpleType {
    pub fn new(base: BasicType, adjoint: i32) -> Self {
        SimpleType { base, adjoint }
    }

    pub fn plain(base: BasicType) -> Self {
        SimpleType { base, adjoint: 0 }
    }

    pub fn left_adjoint(&self) -> Self {
        SimpleType::new(self.base.clone(), self.adjoint - 1)
    }

    pub fn right_adjoint(&self) -> Self {
        SimpleType::new(self.base.clone(), self.adjoint + 1)
    }

    /// True when `self · other` is contracted by a cup, i.e. `other` is the
    /// right adjoint of `self`.
    pub fn contracts_with(&self, other: &SimpleType) -> bool {
        self.base == other.base && self.adjoint + 1 == other.adjoint
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        if self.adjoint != 0 {
            let mark = if self.adjoint < 0 { "l" } else { "r" };
            write!(f, "^{}", mark.repeat(self.adjoint.unsigned_abs() as usize))?;
        }
        Ok(())
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(token: &str) -> Result<Self> {
        let bad = |reason: &str| Error::TypeSyntax {
            token: token.to_string(),
            reason: reason.to_string(),
        };
        let (name, suffix) = match token.split_once('^') {
            Some((name, suffix)) => (name, Some(suffix)),
            None => (token, None),
        };
        let base = BasicType::new(name).map_err(|_| bad("missing or invalid basic type name"))?;
        let adjoint = match suffix {
            None => 0,
            Some(s) if !s.is_empty() && s.chars().all(|c| c == 'l') => -(s.len() as i32),
            Some(s) if !s.is_empty() && s.chars().all(|c| c == 'r') => s.len() as i32,
            Some(_) => return Err(bad("adjoint suffix must be `^` followed by only `l`s or only `r`s")),
        };
        Ok(SimpleType::new(base, adjoint))
    }
}

/// A word of simple types. The empty word is the monoidal unit `I`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PregroupType(Vec<SimpleType>);

impl PregroupType {
    pub fn new(simples: Vec<SimpleType>) -> Self {
        PregroupType(simples)
    }

    pub fn unit() -> Self {
        PregroupType(Vec::new())
    }

    pub fn basic(base: BasicType) -> Self {
        PregroupType(vec![SimpleType::plain(base)])
    }

    pub fn simples(&self) -> &[SimpleType] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Same as [`is_unit`](Self::is_unit).
    pub fn is_empty(&self) -> bool {
        self.is_unit()
    }

    pub fn tensor(&self, other: &PregroupType) -> PregroupType {
        let mut simples = self.0.clone();
        simples.extend(other.0.iter().cloned());
        PregroupType(simples)
    }

    /// `(g·h)^l = h^l·g^l`.
    pub fn left_adjoint(&self) -> PregroupType {
        PregroupType(self.0.iter().rev().map(SimpleType::left_adjoint).collect())
    }

    /// `(g·h)^r = h^r·g^r`.
    pub fn right_adjoint(&self) -> PregroupType {
        PregroupType(self.0.iter().rev().map(SimpleType::right_adjoint).collect())
    }

    /// The `z`-fold adjoint: right adjoints for positive `z`, left for negative.
    pub fn adjoint_power(&self, z: i32) -> PregroupType {
        let mut simples: Vec<SimpleType> = self
            .0
            .iter()
            .map(|s| SimpleType::new(s.base.clone(), s.adjoint + z))
            .collect();
        if z % 2 != 0 {
            simples.reverse();
        }
        PregroupType(simples)
    }

    /// Basic types occurring in the word, without repetition.
    pub fn basic_types(&self) -> BTreeSet<&BasicType> {
        self.0.iter().map(|s| &s.base).collect()
    }

    /// Checks every basic type against a generator set.
    pub fn check_generators(&self, generators: &BTreeSet<BasicType>) -> Result<()> {
        match self.0.iter().find(|s| !generators.contains(&s.base)) {
            Some(s) => Err(Error::UnknownBasicType(s.base.to_string())),
            None => Ok(()),
        }
    }
}

impl From<Vec<SimpleType>> for PregroupType {
    fn from(simples: Vec<SimpleType>) -> Self {
        PregroupType(simples)
    }
}

impl fmt::Display for PregroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Parses the type syntax without checking basic types against a generator set.
impl FromStr for PregroupType {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        text.split_whitespace()
            .map(SimpleType::from_str)
            .collect::<Result<Vec<_>>>()
            .map(PregroupType)
    }
}

impl Serialize for PregroupType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PregroupType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a whitespace-separated type, rejecting basic types outside `generators`.
pub fn parse_type(text: &str, generators: &BTreeSet<BasicType>) -> Result<PregroupType> {
    let ty: PregroupType = text.parse()?;
    ty.check_generators(generators)?;
    Ok(ty)
}

pub fn tensor_types(g: &PregroupType, h: &PregroupType) -> PregroupType {
    g.tensor(h)
}

/// A contraction between positions `i < j` of a reduction's source.
pub type Cup = (usize, usize);

/// An ε-only morphism `source → target` of the grammar.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawReduction")]
pub struct Reduction {
    source: PregroupType,
    target: PregroupType,
    cups: Vec<Cup>,
    survivors: Vec<usize>,
}

impl Reduction {
    /// Builds a reduction from its cups; survivors and target are derived.
    pub fn from_cups(source: PregroupType, mut cups: Vec<Cup>) -> Result<Self> {
        cups.sort_unstable();
        let n = source.len();
        let mut used = vec![false; n];
        for &(i, j) in &cups {
            if i >= j || j >= n {
                return Err(Error::InvalidReduction(format!(
                    "cup ({i},{j}) is out of range for a source of length {n}"
                )));
            }
            for k in [i, j] {
                if std::mem::replace(&mut used[k], true) {
                    return Err(Error::InvalidReduction(format!(
                        "position {k} appears in more than one cup"
                    )));
                }
            }
        }
        let survivors: Vec<usize> = (0..n).filter(|&k| !used[k]).collect();
        let target = PregroupType(survivors.iter().map(|&k| source.0[k].clone()).collect());
        let r = Reduction {
            source,
            target,
            cups,
            survivors,
        };
        r.validate()?;
        Ok(r)
    }

    /// Like [`Reduction::from_cups`], additionally requiring a given target.
    pub fn new(source: PregroupType, target: PregroupType, cups: Vec<Cup>) -> Result<Self> {
        let r = Reduction::from_cups(source, cups)?;
        if r.target != target {
            return Err(Error::TypeMismatch {
                expected: target.to_string(),
                found: r.target.to_string(),
            });
        }
        Ok(r)
    }

    pub fn identity(g: PregroupType) -> Self {
        let survivors = (0..g.len()).collect();
        Reduction {
            target: g.clone(),
            source: g,
            cups: Vec::new(),
            survivors,
        }
    }

    pub fn source(&self) -> &PregroupType {
        &self.source
    }

    pub fn target(&self) -> &PregroupType {
        &self.target
    }

    pub fn cups(&self) -> &[Cup] {
        &self.cups
    }

    pub fn survivors(&self) -> &[usize] {
        &self.survivors
    }

    pub fn is_identity(&self) -> bool {
        self.cups.is_empty()
    }

    /// Checks every structural invariant by eliminating cups innermost-first.
    ///
    /// Scanning left to right with a stack, the right end of each cup must
    /// find its left end on top: anything else is a crossing or a survivor
    /// trapped under a cup.
    pub fn validate(&self) -> Result<()> {
        let n = self.source.len();
        let mut partner: Vec<Option<usize>> = vec![None; n];
        for &(i, j) in &self.cups {
            if i >= j || j >= n {
                return Err(Error::InvalidReduction(format!("cup ({i},{j}) out of range")));
            }
            if partner[i].is_some() || partner[j].is_some() {
                return Err(Error::InvalidReduction(format!("cup ({i},{j}) overlaps another cup")));
            }
            partner[i] = Some(j);
            partner[j] = Some(i);
        }

        let mut stack: Vec<usize> = Vec::new();
        let mut survivors = Vec::new();
        for (k, &p) in partner.iter().enumerate() {
            match p {
                Some(left) if left < k => {
                    if stack.pop() != Some(left) {
                        return Err(Error::InvalidReduction(format!(
                            "cup ({left},{k}) crosses another cup or encloses a survivor"
                        )));
                    }
                    let (a, b) = (&self.source.0[left], &self.source.0[k]);
                    if !a.contracts_with(b) {
                        return Err(Error::InvalidReduction(format!(
                            "cup ({left},{k}) joins `{a}` and `{b}`, which do not contract"
                        )));
                    }
                }
                Some(_) => stack.push(k),
                None => {
                    if !stack.is_empty() {
                        return Err(Error::InvalidReduction(format!("survivor {k} lies under a cup")));
                    }
                    survivors.push(k);
                }
            }
        }
        if !stack.is_empty() {
            return Err(Error::InvalidReduction("unclosed cup".into()));
        }
        if survivors != self.survivors {
            return Err(Error::InvalidReduction(format!(
                "survivors {:?} do not match the uncupped positions {:?}",
                self.survivors, survivors
            )));
        }
        let kept: Vec<&SimpleType> = survivors.iter().map(|&k| &self.source.0[k]).collect();
        if kept.len() != self.target.len() || kept.iter().zip(&self.target.0).any(|(a, b)| *a != b) {
            return Err(Error::InvalidReduction(format!(
                "survivors do not spell the target `{}`",
                self.target
            )));
        }
        Ok(())
    }

    /// Monoidal product `self ⊗ other`, placing `other`'s wires to the right.
    pub fn tensor(&self, other: &Reduction) -> Reduction {
        let offset = self.source.len();
        let mut cups = self.cups.clone();
        cups.extend(other.cups.iter().map(|&(i, j)| (i + offset, j + offset)));
        cups.sort_unstable();
        let mut survivors = self.survivors.clone();
        survivors.extend(other.survivors.iter().map(|&k| k + offset));
        Reduction {
            source: self.source.tensor(&other.source),
            target: self.target.tensor(&other.target),
            cups,
            survivors,
        }
    }
}

#[derive(Deserialize)]
struct RawReduction {
    source: PregroupType,
    target: PregroupType,
    cups: Vec<Cup>,
    survivors: Vec<usize>,
}

impl TryFrom<RawReduction> for Reduction {
    type Error = Error;

    fn try_from(mut raw: RawReduction) -> Result<Self> {
        raw.cups.sort_unstable();
        let r = Reduction {
            source: raw.source,
            target: raw.target,
            cups: raw.cups,
            survivors: raw.survivors,
        };
        r.validate()?;
        Ok(r)
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("cups=[")?;
        for (k, (i, j)) in self.cups.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "({i},{j})")?;
        }
        f.write_str("] survivors=[")?;
        for (k, s) in self.survivors.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

/// `r2 ∘ r1`: first `r1`, then `r2` on its survivors.
pub fn compose_reductions(r2: &Reduction, r1: &Reduction) -> Result<Reduction> {
    if r1.target != r2.source {
        return Err(Error::TypeMismatch {
            expected: r2.source.to_string(),
            found: r1.target.to_string(),
        });
    }
    let relabel = &r1.survivors;
    let mut cups = r1.cups.clone();
    cups.extend(r2.cups.iter().map(|&(i, j)| (relabel[i], relabel[j])));
    cups.sort_unstable();
    let survivors = r2.survivors.iter().map(|&k| relabel[k]).collect();
    let composite = Reduction {
        source: r1.source.clone(),
        target: r2.target.clone(),
        cups,
        survivors,
    };
    debug_assert!(composite.validate().is_ok());
    Ok(composite)
}

/// All reductions `source → target`, at most `max_results` of them.
///
/// Results are ordered leftmost-cup-first: at each position, cupping it with
/// a partner (nearest partner first) is tried before keeping it as a survivor.
pub fn reduce_search(source: &PregroupType, target: &PregroupType, max_results: usize) -> Vec<Reduction> {
    let mut search = Search {
        word: source.simples(),
        target: target.simples(),
        closed: HashMap::new(),
        viable: HashMap::new(),
    };
    let mut found = Vec::new();
    let mut cups = Vec::new();
    if max_results > 0 {
        search.walk(0, 0, &mut cups, &mut found, max_results);
    }
    found
        .into_iter()
        .map(|cups| Reduction::new(source.clone(), target.clone(), cups).expect("search yields valid reductions"))
        .collect()
}

struct Search<'a> {
    word: &'a [SimpleType],
    target: &'a [SimpleType],
    /// Every way the half-open interval `[i, j)` contracts to the unit.
    closed: HashMap<(usize, usize), Rc<Vec<Vec<Cup>>>>,
    /// Whether `word[i..]` can reduce to `target[k..]`.
    viable: HashMap<(usize, usize), bool>,
}

impl Search<'_> {
    fn closings(&mut self, i: usize, j: usize) -> Rc<Vec<Vec<Cup>>> {
        if let Some(hit) = self.closed.get(&(i, j)) {
            return hit.clone();
        }
        let mut out = Vec::new();
        if i == j {
            out.push(Vec::new());
        } else if (j - i).is_multiple_of(2) {
            for m in (i + 1..j).step_by(2) {
                if !self.word[i].contracts_with(&self.word[m]) {
                    continue;
                }
                let inner = self.closings(i + 1, m);
                if inner.is_empty() {
                    continue;
                }
                let rest = self.closings(m + 1, j);
                for a in inner.iter() {
                    for b in rest.iter() {
                        let mut cups = Vec::with_capacity(1 + a.len() + b.len());
                        cups.push((i, m));
                        cups.extend_from_slice(a);
                        cups.extend_from_slice(b);
                        out.push(cups);
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.closed.insert((i, j), out.clone());
        out
    }

    /// Cup partners `m` for position `i` such that `[i, m]` closes.
    fn partners(&mut self, i: usize) -> Vec<usize> {
        let n = self.word.len();
        (i + 1..n)
            .step_by(2)
            .filter(|&m| self.word[i].contracts_with(&self.word[m]))
            .filter(|&m| !self.closings(i + 1, m).is_empty())
            .collect()
    }

    fn is_viable(&mut self, i: usize, k: usize) -> bool {
        let (n, t) = (self.word.len(), self.target.len());
        if i == n {
            return k == t;
        }
        if n - i < t - k || !(n - i - (t - k)).is_multiple_of(2) {
            return false;
        }
        if let Some(&v) = self.viable.get(&(i, k)) {
            return v;
        }
        let keep = k < t && self.word[i] == self.target[k] && self.is_viable(i + 1, k + 1);
        let v = keep || self.partners(i).into_iter().any(|m| self.is_viable(m + 1, k));
        self.viable.insert((i, k), v);
        v
    }

    fn walk(&mut self, i: usize, k: usize, cups: &mut Vec<Cup>, found: &mut Vec<Vec<Cup>>, max: usize) {
        if found.len() >= max || !self.is_viable(i, k) {
            return;
        }
        if i == self.word.len() {
            found.push(cups.clone());
            return;
        }
        for m in self.partners(i) {
            if !self.is_viable(m + 1, k) {
                continue;
            }
            let inner = self.closings(i + 1, m);
            for closing in inner.iter() {
                let mark = cups.len();
                cups.push((i, m));
                cups.extend_from_slice(closing);
                self.walk(m + 1, k, cups, found, max);
                cups.truncate(mark);
                if found.len() >= max {
                    return;
                }
            }
        }
        if k < self.target.len() && self.word[i] == self.target[k] {
            self.walk(i + 1, k + 1, cups, found, max);
        }
    }
}
