//! Peisert-type graphs: Cayley graphs on the additive group of `F_{q²}` whose
//! connection set is a union of `m` cosets of `F_q^×` containing `F_q^×`.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::clique::{adjacency_from_fn, maximum_cliques, BitSet, SearchBudget};
use crate::error::{Error, Result};
use crate::linalg::{indicator, is_prime, RowSpace};

/// `F_{p^d}` as `F_p[x]/(g)`; an element is the integer `Σ a_i p^i` of its coordinates.
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    d: u32,
    size: u32,
    /// Coefficients of `g` below the leading 1.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn digits(x: u32, p: u32, d: u32) -> Vec<u32> {
    let mut x = x;
    (0..d)
        .map(|_| {
            let r = x % p;
            x /= p;
            r
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic polynomial `b` over `F_p`; coefficient vectors low to high.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - db;
            for (i, &c) in b[..db].iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - lead) * c) % p;
            }
        }
    }
    r
}

/// Trial division by every monic polynomial of degree at most half.
fn is_irreducible(g: &[u32], p: u32) -> bool {
    let d = g.len() - 1;
    (1..=d / 2).all(|e| {
        (0..p.pow(e as u32)).all(|code| {
            let mut h = digits(code, p, e as u32);
            h.push(1);
            poly_rem(g, &h, p).iter().any(|&c| c != 0)
        })
    })
}

impl Field {
    /// `F_{p^d}` over the monic irreducible of least integer encoding, with the least
    /// primitive element as generator.
    pub fn new(p: u32, d: u32) -> Result<Self> {
        if !is_prime(p as u64) || d == 0 {
            return Err(Error::InvalidField(format!("{p}^{d} is not a prime power")));
        }
        let size = p.checked_pow(d).filter(|&s| s <= 1 << 20).ok_or_else(|| {
            Error::InvalidField(format!("{p}^{d} exceeds the supported field size"))
        })?;
        let modulus = (0..size)
            .map(|code| digits(code, p, d))
            .find(|low| {
                let mut g = low.clone();
                g.push(1);
                is_irreducible(&g, p)
            })
            .expect("irreducible polynomials exist in every degree");
        let mut field = Field {
            p,
            d,
            size,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let n = size - 1;
        let generator = (1..size)
            .find(|&c| {
                let mut x = c;
                let mut k = 1;
                while x != 1 {
                    x = field.mul(x, c);
                    k += 1;
                }
                k == n
            })
            .expect("the multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![0; size as usize];
        let mut x = 1;
        for i in 0..n {
            exp.push(x);
            log[x as usize] = i;
            x = field.mul(x, generator);
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Coefficients of the defining polynomial, low to high, including the leading 1.
    pub fn modulus(&self) -> Vec<u32> {
        let mut g = self.modulus.clone();
        g.push(1);
        g
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (digits(a, self.p, self.d), digits(b, self.p, self.d));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        undigits(&s, self.p)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let s: Vec<u32> = digits(a, self.p, self.d)
            .iter()
            .map(|x| (self.p - x) % self.p)
            .collect();
        undigits(&s, self.p)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if !self.exp.is_empty() {
            let n = self.size - 1;
            return self.exp[((self.log[a as usize] + self.log[b as usize]) % n) as usize];
        }
        let (da, db) = (digits(a, self.p, self.d), digits(b, self.p, self.d));
        let mut prod = vec![0u32; 2 * self.d as usize - 1];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        undigits(&poly_rem(&prod, &self.modulus(), self.p), self.p)
    }

    /// `γ^k` for the stored generator `γ`.
    pub fn gen_pow(&self, k: u64) -> u32 {
        self.exp[(k % (self.size as u64 - 1)) as usize]
    }

    /// Discrete logarithm base `γ` of a nonzero element.
    pub fn log(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no logarithm");
        self.log[a as usize]
    }

    /// Absolute trace to `F_p`, as an integer below `p`.
    pub fn trace(&self, a: u32) -> u32 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.d {
            acc = self.add(acc, x);
            x = self.frobenius(x);
        }
        debug_assert!(acc < self.p);
        acc
    }

    pub fn frobenius(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.gen_pow(self.log(a) as u64 * self.p as u64)
        }
    }
}

/// `(p, k)` with `q = p^k`.
fn prime_power(q: u64) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut x = q;
    while x.is_multiple_of(p) {
        x /= p;
        k += 1;
    }
    (x == 1).then_some((p as u32, k))
}

#[derive(Clone, Debug)]
pub struct PeisertGraph {
    q: u32,
    m: u32,
    field: Field,
    /// Exponents `e` with coset representative `γ^e`, each below `q+1`.
    reps: Vec<u32>,
    in_connection_set: Vec<bool>,
}

/// Parses `g^3` or `3`.
fn parse_rep(s: &str) -> Result<u64> {
    let t = s.trim();
    let t = t.strip_prefix("g^").unwrap_or(t);
    t.parse().map_err(|_| Error::Parse {
        pos: 0,
        msg: format!("bad coset representative `{s}`, expected g^k"),
    })
}

pub fn parse_reps(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_rep)
        .collect()
}

/// Builds the Peisert-type graph of type `(m, q)`; `reps` are exponents of the field generator.
///
/// Default representatives are `γ^0, …, γ^{m−1}`.
pub fn build_peisert(q: u64, m: u64, reps: Option<&[u64]>) -> Result<PeisertGraph> {
    let (p, k) = prime_power(q)
        .filter(|&(p, _)| p != 2)
        .ok_or_else(|| Error::InvalidField(format!("q = {q} is not an odd prime power")))?;
    if m == 0 || m > q + 1 {
        return Err(Error::OutOfRange(format!(
            "m = {m} must lie in 1..={}",
            q + 1
        )));
    }
    let field = Field::new(p, 2 * k)?;
    let cosets = q as u32 + 1;
    let exps: Vec<u32> = match reps {
        None => (0..m as u32).collect(),
        Some(r) => {
            if r.len() as u64 != m {
                return Err(Error::SizeMismatch {
                    expected: m as usize,
                    found: r.len(),
                });
            }
            r.iter().map(|&e| (e % cosets as u64) as u32).collect()
        }
    };
    let mut sorted = exps.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != exps.len() {
        return Err(Error::OutOfRange(
            "coset representatives repeat a coset of F_q^×".into(),
        ));
    }
    if !sorted.contains(&0) {
        return Err(Error::OutOfRange(
            "connection set must contain F_q^×".into(),
        ));
    }
    let n = field.size() as usize;
    // γ^e lies in c_i F_q^× iff e ≡ c_i mod q+1
    let in_connection_set = (0..n as u32)
        .map(|x| x != 0 && sorted.contains(&(field.log(x) % cosets)))
        .collect();
    Ok(PeisertGraph {
        q: q as u32,
        m: m as u32,
        field,
        reps: exps,
        in_connection_set,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub value: i64,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueReport {
    pub max_clique_size: usize,
    pub cliques: Vec<Vec<u32>>,
    pub canonical: Vec<Vec<u32>>,
    pub exhaustive: bool,
    /// Whether every maximum clique satisfies the `(q−m)`-eigenvector identity.
    pub eigenvector_property: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanReport {
    pub span_rank: usize,
    pub expected_rank: usize,
    pub members: Vec<bool>,
    pub ekr_module: bool,
}

impl PeisertGraph {
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.field.size() as usize
    }

    pub fn degree(&self) -> usize {
        self.in_connection_set.iter().filter(|&&b| b).count()
    }

    pub fn reps(&self) -> Vec<String> {
        self.reps.iter().map(|e| format!("g^{e}")).collect()
    }

    pub fn is_degenerate(&self) -> bool {
        self.m == 1 || self.m == self.q + 1
    }

    pub fn adjacent(&self, x: u32, y: u32) -> bool {
        self.in_connection_set[self.field.sub(x, y) as usize]
    }

    pub fn adjacency(&self) -> Vec<BitSet> {
        adjacency_from_fn(self.order(), |i, j| self.adjacent(i as u32, j as u32))
    }

    /// Elements of `F_q`, the fixed field of `x ↦ x^q`.
    pub fn subfield(&self) -> Vec<u32> {
        let step = self.q as u64 + 1;
        let mut out: Vec<u32> = (0..self.q as u64 - 1)
            .map(|j| self.field.gen_pow(j * step))
            .collect();
        out.push(0);
        out.sort_unstable();
        out
    }

    /// Sets `c_i F_q + x`, sorted and deduplicated.
    pub fn canonical_cliques(&self) -> Vec<Vec<u32>> {
        let fq = self.subfield();
        let mut out: Vec<Vec<u32>> = Vec::new();
        for &e in &self.reps {
            let c = self.field.gen_pow(e as u64);
            let line: Vec<u32> = fq.iter().map(|&t| self.field.mul(c, t)).collect();
            for x in 0..self.field.size() {
                let mut clique: Vec<u32> = line.iter().map(|&y| self.field.add(y, x)).collect();
                clique.sort_unstable();
                out.push(clique);
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Eigenvalue on the additive character `x ↦ ω^{Tr(ax)}`, by the trace-kernel test.
    pub fn character_eigenvalue(&self, a: u32) -> i64 {
        let (q, m) = (self.q as i64, self.m as i64);
        if a == 0 {
            return m * (q - 1);
        }
        let fq = self.subfield();
        let in_kernel = self.reps.iter().any(|&e| {
            let ac = self.field.mul(a, self.field.gen_pow(e as u64));
            fq.iter()
                .all(|&t| self.field.trace(self.field.mul(ac, t)) == 0)
        });
        if in_kernel {
            q - m
        } else {
            -m
        }
    }

    /// Distinct eigenvalues in decreasing order with multiplicities.
    pub fn spectrum(&self) -> Vec<Eigenvalue> {
        let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
        for a in 0..self.field.size() {
            *counts.entry(self.character_eigenvalue(a)).or_default() += 1;
        }
        counts
            .into_iter()
            .rev()
            .map(|(value, multiplicity)| Eigenvalue {
                value,
                multiplicity,
            })
            .collect()
    }

    /// `1 − k/s` with `s = −m` the least eigenvalue.
    pub fn delsarte_bound(&self) -> Result<u64> {
        if self.m == self.q + 1 {
            return Err(Error::Degenerate(
                "complete graph: the least eigenvalue is −1 and the bound is q²".into(),
            ));
        }
        let k = (self.m * (self.q - 1)) as u64;
        Ok(1 + k / self.m as u64)
    }

    /// Whether `A(q·v_C − 1) = (q−m)(q·v_C − 1)`, which is the eigenvector identity scaled by `q`.
    pub fn eigenvector_identity(&self, clique: &[u32]) -> bool {
        let n = self.order();
        let (q, m) = (self.q as i64, self.m as i64);
        let mut w = vec![-1i64; n];
        for &c in clique {
            w[c as usize] += q;
        }
        (0..n).all(|x| {
            let aw: i64 = (0..n)
                .filter(|&y| self.adjacent(x as u32, y as u32))
                .map(|y| w[y])
                .sum();
            aw == (q - m) * w[x]
        })
    }

    pub fn max_cliques(&self, vertex_limit: usize, budget: SearchBudget) -> Result<CliqueReport> {
        if self.order() > vertex_limit {
            return Err(Error::Budget {
                what: "Peisert vertex count",
                limit: vertex_limit as u64,
            });
        }
        let search = maximum_cliques(&self.adjacency(), self.q as usize, budget);
        if !search.exhaustive {
            return Err(Error::Budget {
                what: "search node",
                limit: budget.node_limit,
            });
        }
        let cliques: Vec<Vec<u32>> = search
            .cliques
            .iter()
            .map(|c| c.iter().map(|&v| v as u32).collect())
            .collect();
        if !self.is_degenerate() && search.max_size != self.q as usize {
            return Err(Error::Defect(format!(
                "maximum clique size {} differs from the Delsarte bound {}",
                search.max_size, self.q
            )));
        }
        let eigenvector_property =
            self.m == self.q + 1 || cliques.iter().all(|c| self.eigenvector_identity(c));
        Ok(CliqueReport {
            max_clique_size: search.max_size,
            cliques,
            canonical: self.canonical_cliques(),
            exhaustive: true,
            eigenvector_property,
        })
    }

    /// Span of canonical cliques and membership of every maximum clique.
    pub fn ekr_module_check(&self, report: &CliqueReport) -> SpanReport {
        let n = self.order();
        let to_vec = |c: &[u32]| -> Vec<BigRational> {
            indicator(n, &c.iter().map(|&v| v as usize).collect::<Vec<_>>())
        };
        let mut space = RowSpace::new();
        for c in &report.canonical {
            space.insert(&to_vec(c));
        }
        let members: Vec<bool> = report
            .cliques
            .iter()
            .map(|c| space.contains(&to_vec(c)))
            .collect();
        SpanReport {
            span_rank: space.rank(),
            expected_rank: 1 + (self.m * (self.q - 1)) as usize,
            ekr_module: members.iter().all(|&b| b),
            members,
        }
    }

    /// Eigenvalues of the dense adjacency matrix, ascending.
    pub fn numeric_spectrum(&self) -> Vec<f64> {
        let n = self.order();
        let a = DMatrix::from_fn(n, n, |i, j| {
            if self.adjacent(i as u32, j as u32) {
                1.0
            } else {
                0.0
            }
        });
        let mut ev: Vec<f64> = SymmetricEigen::new(a).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

/// Ascending eigenvalue list with multiplicities expanded.
pub fn expand_spectrum(spectrum: &[Eigenvalue]) -> Vec<f64> {
    let mut out: Vec<f64> = spectrum
        .iter()
        .flat_map(|e| std::iter::repeat_n(e.value as f64, e.multiplicity as usize))
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// `{m(q−1): 1; q−m: m(q−1); −m: q²−1−m(q−1)}`, merged and without empty entries.
pub fn predicted_spectrum(q: u64, m: u64) -> Vec<Eigenvalue> {
    let (q, m) = (q as i64, m as i64);
    let k = m * (q - 1);
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    *counts.entry(k).or_default() += 1;
    *counts.entry(q - m).or_default() += k as u64;
    *counts.entry(-m).or_default() += (q * q - 1 - k) as u64;
    counts
        .into_iter()
        .rev()
        .filter(|&(_, c)| c > 0)
        .map(|(value, multiplicity)| Eigenvalue {
            value,
            multiplicity,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeisertReport {
    pub q: u64,
    pub m: u64,
    pub reps: Vec<String>,
    pub degenerate: bool,
    pub spectrum: Vec<Eigenvalue>,
    pub spectrum_matches_formula: bool,
    pub numeric_max_deviation: Option<f64>,
    pub delsarte_bound: Option<u64>,
    pub max_clique_size: usize,
    pub num_max_cliques: usize,
    pub num_canonical_cliques: usize,
    pub eigenvector_property: bool,
    pub span_rank: usize,
    pub ekr_module: bool,
}

/// Runs every check; the dense cross-check only when `q² ≤ numeric_limit`.
pub fn peisert_report(
    graph: &PeisertGraph,
    vertex_limit: usize,
    numeric_limit: usize,
    budget: SearchBudget,
) -> Result<PeisertReport> {
    let spectrum = graph.spectrum();
    let numeric_max_deviation = (graph.order() <= numeric_limit).then(|| {
        graph
            .numeric_spectrum()
            .iter()
            .zip(expand_spectrum(&spectrum))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    });
    let cliques = graph.max_cliques(vertex_limit, budget)?;
    let span = graph.ekr_module_check(&cliques);
    Ok(PeisertReport {
        q: graph.q as u64,
        m: graph.m as u64,
        reps: graph.reps(),
        degenerate: graph.is_degenerate(),
        spectrum_matches_formula: spectrum == predicted_spectrum(graph.q as u64, graph.m as u64),
        spectrum,
        numeric_max_deviation,
        delsarte_bound: graph.delsarte_bound().ok(),
        max_clique_size: cliques.max_clique_size,
        num_max_cliques: cliques.cliques.len(),
        num_canonical_cliques: cliques.canonical.len(),
        eigenvector_property: cliques.eigenvector_property,
        span_rank: span.span_rank,
        ekr_module: span.ekr_module,
    })
}
