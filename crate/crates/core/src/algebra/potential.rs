use std::collections::BTreeMap;
use std::fmt;

use super::{Path, Quiver};
use crate::{Error, Result};

/// A closed word of arrows stored as its lexicographically least rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord(Vec<String>);

impl CyclicWord {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(arrows: I) -> Result<Self> {
        let word: Vec<String> = arrows.into_iter().map(Into::into).collect();
        if word.is_empty() {
            return Err(Error::InvalidPotential("empty cyclic word".into()));
        }
        Ok(CyclicWord(least_rotation(&word)))
    }

    pub fn arrows(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of distinct rotations of the word (its smallest period).
    pub fn distinct_rotations(&self) -> usize {
        let n = self.0.len();
        (1..=n)
            .find(|&p| n.is_multiple_of(p) && (0..n).all(|i| self.0[i] == self.0[(i + p) % n]))
            .unwrap_or(n)
    }
}

fn least_rotation(word: &[String]) -> Vec<String> {
    let n = word.len();
    (0..n)
        .map(|r| word[r..].iter().chain(&word[..r]).cloned().collect::<Vec<_>>())
        .min()
        .expect("nonempty word")
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.concat())
    }
}

/// Integer combination of cyclic words; no zero coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Superpotential {
    terms: BTreeMap<CyclicWord, i64>,
}

impl Superpotential {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Merges `(word, coefficient)` pairs; rotations of one word are added together.
    pub fn from_terms<I, W>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (W, i64)>,
        W: IntoIterator,
        W::Item: Into<String>,
    {
        let mut out = Self::zero();
        for (w, c) in terms {
            out.add(CyclicWord::new(w)?, c);
        }
        Ok(out)
    }

    pub fn add(&mut self, word: CyclicWord, c: i64) {
        let entry = self.terms.entry(word.clone()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&word);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CyclicWord, i64)> {
        self.terms.iter().map(|(w, c)| (w, *c))
    }

    pub fn coeff(&self, word: &CyclicWord) -> i64 {
        self.terms.get(word).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Parses text such as `BCAD - ACBD` or `a1 b2 c3 - 2*X^3`.
    ///
    /// Arrow ids are matched greedily against the quiver, so separators between
    /// arrows (`*`, `.`, whitespace) are optional.
    pub fn parse(q: &Quiver, text: &str) -> Result<Self> {
        let mut ids: Vec<&str> = q.arrows().iter().map(|a| a.id.as_str()).collect();
        ids.sort_by_key(|s| std::cmp::Reverse(s.len()));
        let chars: Vec<char> = text.chars().collect();
        let mut out = Self::zero();
        let mut i = 0;
        let skip_ws = |i: &mut usize| {
            while *i < chars.len() && chars[*i].is_whitespace() {
                *i += 1;
            }
        };
        skip_ws(&mut i);
        if i == chars.len() || (chars.len() - i == 1 && chars[i] == '0') {
            return Ok(out);
        }
        while i < chars.len() {
            let mut sign = 1i64;
            skip_ws(&mut i);
            while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                if chars[i] == '-' {
                    sign = -sign;
                }
                i += 1;
                skip_ws(&mut i);
            }
            let mut coeff = 1i64;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i > start {
                let digits: String = chars[start..i].iter().collect();
                coeff = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("coefficient `{digits}` out of range")))?;
                skip_ws(&mut i);
                if i < chars.len() && chars[i] == '*' {
                    i += 1;
                }
            }
            let mut word: Vec<String> = Vec::new();
            loop {
                skip_ws(&mut i);
                if i < chars.len() && (chars[i] == '*' || chars[i] == '.') {
                    i += 1;
                    continue;
                }
                if i >= chars.len() || chars[i] == '+' || chars[i] == '-' {
                    break;
                }
                let rest: String = chars[i..].iter().collect();
                let id = ids
                    .iter()
                    .find(|id| rest.starts_with(*id))
                    .ok_or_else(|| Error::Parse(format!("no arrow matches at `{rest}`")))?;
                i += id.chars().count();
                let mut power = 1usize;
                skip_ws(&mut i);
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let s = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let digits: String = chars[s..i].iter().collect();
                    power = digits
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent after `{id}`")))?;
                }
                for _ in 0..power {
                    word.push(id.to_string());
                }
            }
            if word.is_empty() {
                return Err(Error::Parse(format!("term without arrows in `{text}`")));
            }
            out.add(CyclicWord::new(word)?, sign * coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for Superpotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.terms.iter().map(|(w, c)| (w.to_string(), *c)))
    }
}

fn write_combination<I: Iterator<Item = (String, i64)>>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result {
    let mut first = true;
    for (word, c) in terms {
        let abs = c.unsigned_abs();
        match (first, c < 0) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        if abs != 1 {
            write!(f, "{abs}*")?;
        }
        write!(f, "{word}")?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Integer combination of paths with arbitrary endpoints.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathAlgebraElement {
    terms: BTreeMap<Path, i64>,
}

impl PathAlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add(&mut self, p: Path, c: i64) {
        let entry = self.terms.entry(p.clone()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, i64)> {
        self.terms.iter().map(|(p, c)| (p, *c))
    }

    pub fn coeff(&self, p: &Path) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for PathAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().map(|(p, c)| (p.arrows().concat(), *c)).collect();
        terms.sort_by_key(|(_, c)| *c < 0);
        write_combination(f, terms.into_iter())
    }
}

/// `d_a W`: each occurrence of `a` is rotated to the front and deleted.
pub fn cyclic_derivative(q: &Quiver, w: &Superpotential, a: &str) -> Result<PathAlgebraElement> {
    let arrow = q.arrow(a)?;
    let mut out = PathAlgebraElement::zero();
    for (word, c) in w.terms() {
        let n = word.len();
        for (pos, id) in word.arrows().iter().enumerate() {
            if id != a {
                continue;
            }
            let rest: Vec<String> = (1..n).map(|k| word.arrows()[(pos + k) % n].clone()).collect();
            out.add(Path::from_parts(rest, arrow.head.clone(), arrow.tail.clone()), c);
        }
    }
    Ok(out)
}

/// The relation `d_a W = 0` attached to one arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub arrow: String,
    pub element: PathAlgebraElement,
}

/// One relation per arrow with a nonzero derivative, ordered by arrow id.
pub fn relations_from_potential(q: &Quiver, w: &Superpotential) -> Vec<Relation> {
    let mut ids: Vec<&str> = q.arrows().iter().map(|a| a.id.as_str()).collect();
    ids.sort_unstable();
    ids.into_iter()
        .filter_map(|id| {
            let element = cyclic_derivative(q, w, id).expect("arrow of q");
            (!element.is_zero()).then(|| Relation { arrow: id.to_string(), element })
        })
        .collect()
}
