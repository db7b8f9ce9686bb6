//! Permutations of `{0, .., n-1}` written in 1-based cycle notation.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation stored by its image list: `self.apply(i) == images[i]`.
///
/// Products compose right to left, `(p * q)(i) = p(q(i))`, matching the
/// convention where `(1423)(1423) = (12)(34)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(12)(34)`, `(1 10 3)` or `()`.
    /// Without separators inside a cycle every digit is its own point.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self> {
        let bad = |why: &str| Error::InvalidPermutation(format!("`{text}`: {why}"));
        let mut images: Vec<usize> = (0..n).collect();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(bad("empty"));
        }
        let mut moved = vec![false; n];
        while !rest.is_empty() {
            let Some(stripped) = rest.strip_prefix('(') else { return Err(bad("expected `(`")) };
            let Some(close) = stripped.find(')') else { return Err(bad("unclosed cycle")) };
            let body = stripped[..close].trim();
            rest = stripped[close + 1..].trim_start();
            let points: Vec<usize> = if body.contains([' ', ',']) {
                body.split([' ', ','])
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<usize>().map_err(|_| bad("non-numeric point")))
                    .collect::<Result<_>>()?
            } else {
                body.chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| bad("non-numeric point")))
                    .collect::<Result<_>>()?
            };
            if points.is_empty() {
                continue;
            }
            for &p in &points {
                if p == 0 || p > n {
                    return Err(bad(&format!("point {p} outside 1..={n}")));
                }
                if moved[p - 1] {
                    return Err(bad(&format!("point {p} repeated")));
                }
                moved[p - 1] = true;
            }
            for (k, &p) in points.iter().enumerate() {
                images[p - 1] = points[(k + 1) % points.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn compose(&self, inner: &Permutation) -> Permutation {
        assert_eq!(self.degree(), inner.degree());
        Permutation { images: inner.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: usize) -> Permutation {
        (0..k).fold(Permutation::identity(self.degree()), |acc, _| acc.compose(self))
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    /// Nontrivial cycles, each starting at its smallest point (0-based).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        let spaced = self.degree() > 9;
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(if spaced { " " } else { "" }))?;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Closure of a set of permutations under composition, identity first,
/// in breadth-first order over the given generators.
pub fn generated_group(gens: &[Permutation], degree: usize) -> Vec<Permutation> {
    let mut elems = vec![Permutation::identity(degree)];
    let mut seen: std::collections::HashSet<Permutation> = elems.iter().cloned().collect();
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let next = elems[i].compose(g);
            if seen.insert(next.clone()) {
                elems.push(next);
            }
        }
        i += 1;
    }
    elems
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let p = Permutation::parse_cycles("(12)(34)", 4).unwrap();
        assert_eq!(p.images(), &[1, 0, 3, 2]);
        assert_eq!(p.to_string(), "(12)(34)");
        let q = Permutation::parse_cycles("(1 10 3)", 10).unwrap();
        assert_eq!(q.to_string(), "(1 10 3)");
        assert!(Permutation::parse_cycles("()", 3).unwrap().is_identity());
        assert!(Permutation::parse_cycles("(15)", 4).is_err());
        assert!(Permutation::parse_cycles("(121)", 4).is_err());
    }

    #[test]
    fn composition_is_right_to_left() {
        let s = Permutation::parse_cycles("(1423)", 4).unwrap();
        assert_eq!(s.compose(&s).to_string(), "(12)(34)");
        let a = Permutation::parse_cycles("(1324)", 4).unwrap();
        let b = Permutation::parse_cycles("(12)", 4).unwrap();
        assert_eq!(a.pow(4), Permutation::identity(4));
        assert_eq!(&a.pow(3) * &b, &b * &a);
        assert_eq!(generated_group(&[a, b], 4).len(), 8);
    }
}
