//! Permutations on `{0, …, n-1}` and the textual group-input grammar.
//!
//! Products follow the left-action convention used throughout the crate:
//! `a.mul(&b)` is the permutation `x ↦ a(b(x))`, so `b` acts first.
//! Text I/O uses 1-based points, e.g. `(1,2,3)(4,5)` or the image list `[2,3,1]`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of the given degree from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(Error::OutOfRange(format!(
                        "point {} exceeds degree {degree}",
                        a + 1
                    )));
                }
                if touched[a] {
                    return Err(Error::NotAPermutation(format!(
                        "point {} repeated in cycles",
                        a + 1
                    )));
                }
                touched[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other
                .images
                .iter()
                .map(|&j| self.images[j as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: u64) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        result
    }

    /// `x⁻¹ · self · x`
    pub fn conjugate_by(&self, x: &Permutation) -> Permutation {
        x.inverse().mul(self).mul(x)
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &j)| *i as u32 == j)
            .count()
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &j)| *i as u32 != j)
            .map(|(i, _)| i)
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// Sorted cycle lengths including fixed points, longest first.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.extend(std::iter::repeat_n(1, self.fixed_points()));
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
                format!("({})", inner.join(","))
            })
            .collect()
    }

    /// Extends the permutation to a larger degree, fixing the new points.
    pub fn extended(&self, degree: usize) -> Permutation {
        assert!(degree >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

enum RawGenerator {
    Cycles(Vec<Vec<usize>>),
    Images(Vec<usize>),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a point number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let value: usize = text.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "number too large".into(),
        })?;
        if value == 0 {
            return Err(Error::Parse {
                pos: start,
                msg: "points are 1-based".into(),
            });
        }
        Ok(value - 1)
    }

    fn list(&mut self, open: u8, close: u8) -> Result<Vec<usize>> {
        self.expect(open)?;
        let mut out = Vec::new();
        if self.peek() == Some(close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.number()?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(c) if c == close => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return self.err(format!("expected `,` or `{}`", close as char)),
            }
        }
    }

    fn generator(&mut self) -> Result<RawGenerator> {
        match self.peek() {
            Some(b'[') => Ok(RawGenerator::Images(self.list(b'[', b']')?)),
            Some(b'(') => {
                let mut cycles = Vec::new();
                while self.peek() == Some(b'(') {
                    let c = self.list(b'(', b')')?;
                    if !c.is_empty() {
                        cycles.push(c);
                    }
                }
                Ok(RawGenerator::Cycles(cycles))
            }
            _ => self.err("expected `(` or `[`"),
        }
    }
}

/// Parses a comma-separated generator list such as `(1,2,3),(1,2),(4,5)`.
///
/// When `degree` is `None` the degree is the largest point mentioned.
pub fn parse_generators(text: &str, degree: Option<usize>) -> Result<Vec<Permutation>> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut raw = Vec::new();
    if p.peek().is_none() {
        return p.err("empty generator list");
    }
    loop {
        raw.push((p.pos, p.generator()?));
        match p.peek() {
            None => break,
            Some(b',') => p.pos += 1,
            Some(_) => return p.err("expected `,` between generators"),
        }
    }
    let max_point = raw
        .iter()
        .map(|(_, g)| match g {
            RawGenerator::Cycles(cs) => cs.iter().flatten().map(|&x| x + 1).max().unwrap_or(0),
            RawGenerator::Images(im) => im.len(),
        })
        .max()
        .unwrap_or(0);
    let n = match degree {
        Some(d) if d < max_point => {
            return Err(Error::OutOfRange(format!(
                "point {max_point} exceeds degree {d}"
            )));
        }
        Some(d) => d,
        None => max_point.max(1),
    };
    raw.into_iter()
        .map(|(pos, g)| {
            let perm = match g {
                RawGenerator::Cycles(cs) => Permutation::from_cycles(n, &cs),
                RawGenerator::Images(im) => {
                    let mut images: Vec<u32> = im.iter().map(|&x| x as u32).collect();
                    images.extend(images.len() as u32..n as u32);
                    Permutation::from_images(images)
                }
            };
            perm.map_err(|e| Error::Parse {
                pos,
                msg: e.to_string(),
            })
        })
        .collect()
}

/// Parses a single permutation (one generator).
pub fn parse_permutation(text: &str, degree: usize) -> Result<Permutation> {
    let mut gens = parse_generators(text, Some(degree))?;
    if gens.len() != 1 {
        return Err(Error::Parse {
            pos: 0,
            msg: "expected exactly one permutation".into(),
        });
    }
    Ok(gens.pop().unwrap())
}
