//! Permutations of `{0, …, n−1}` (printed 1-based).
//!
//! Products follow the right-action convention: `x^(g·h) = (x^g)^h`, so
//! [`Permutation::then`] applies `self` first. Cycle notation uses 1-based
//! points, e.g. `(2,12)(3,8)`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u32).collect())
    }

    /// From a 0-based image array.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            let v = v as usize;
            if v >= n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[v] = true;
        }
        Ok(Permutation(images))
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(images: &[u32]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation("one-line notation is 1-based".into()));
        }
        Self::from_images(images.iter().map(|&v| v - 1).collect())
    }

    /// Parses 1-based cycle notation such as `(1,2,3)(4,5)` on `n` points.
    /// `()` and the empty string give the identity.
    pub fn from_cycles(text: &str, n: usize) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut seen = vec![false; n];
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = text.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.find(')').map(|end| (&r[..end], &r[end + 1..])))
                .ok_or_else(|| Error::InvalidPermutation(format!("malformed cycle notation {text:?}")))?;
            rest = body.1;
            if body.0.is_empty() {
                continue;
            }
            let points = body
                .0
                .split(',')
                .map(|t| match t.parse::<usize>() {
                    Ok(p) if p >= 1 && p <= n => Ok(p - 1),
                    _ => Err(Error::InvalidPermutation(format!("bad point {t:?} for degree {n}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            for (k, &p) in points.iter().enumerate() {
                if seen[p] {
                    return Err(Error::InvalidPermutation(format!("point {} repeated", p + 1)));
                }
                seen[p] = true;
                images[p] = points[(k + 1) % points.len()] as u32;
            }
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn one_line(&self) -> Vec<u32> {
        self.0.iter().map(|&v| v + 1).collect()
    }

    /// The product `self · other`: apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation(inv)
    }

    /// `b⁻¹ · self · b`, the conjugation-quandle product `self * b`.
    pub fn conjugate_by(&self, b: &Permutation) -> Permutation {
        b.inverse().then(self).then(b)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            acc = acc.then(&base);
        }
        acc
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Non-trivial cycles, each starting at its least point (0-based).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

/// JSON form: 1-based one-line array.
impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Permutation::from_one_line(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation_round_trip() {
        let s = "(2,12)(3,8)(5,15)(6,11)(9,14)";
        let p = Permutation::from_cycles(s, 15).unwrap();
        assert_eq!(p.to_string(), s);
        assert_eq!(p.apply(1), 11);
        assert_eq!(p.order(), 2);
        assert_eq!(Permutation::from_cycles("()", 3).unwrap(), Permutation::identity(3));
        assert!(Permutation::from_cycles("(1,2", 3).is_err());
        assert!(Permutation::from_cycles("(1,4)", 3).is_err());
        assert!(Permutation::from_cycles("(1,2)(2,3)", 3).is_err());
    }

    #[test]
    fn right_action_product() {
        let a = Permutation::from_cycles("(1,2)", 3).unwrap();
        let b = Permutation::from_cycles("(2,3)", 3).unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.then(&b).apply(0), 2);
        assert_eq!(a.then(&b).then(&a.then(&b).inverse()), Permutation::identity(3));
        assert_eq!(a.conjugate_by(&b), Permutation::from_cycles("(1,3)", 3).unwrap());
        assert_eq!(b.pow(-1), b);
    }

    #[test]
    fn one_line_json() {
        let p = Permutation::from_cycles("(1,2,3)", 3).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "[2,3,1]");
        let back: Permutation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Permutation>("[1,1,2]").is_err());
    }
}
