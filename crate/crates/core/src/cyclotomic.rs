//! Exact arithmetic in cyclotomic fields `Q(ζₙ)`.
//!
//! Values are stored at their minimal conductor in a fixed reduced basis, so
//! equal numbers have identical representations and equality is structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn prime_powers(n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut q = 1;
            while m.is_multiple_of(p) {
                m /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, m));
    }
    out
}

/// Whether exponent `k` belongs to the reduced basis of `Q(ζₙ)`.
fn is_basis_exponent(k: u64, n: u64) -> bool {
    prime_powers(n).iter().all(|&(p, q)| {
        let top = (k % q) / (q / p);
        if p == 2 {
            top != 1
        } else {
            top != 0
        }
    })
}

/// Rewrites a raw coefficient vector on `ζₙ^0..ζₙ^{n-1}` into the reduced basis.
fn reduce(n: u64, mut raw: Vec<Rational>) -> Vec<Rational> {
    for (p, q) in prime_powers(n) {
        let step = n / p;
        for k in 0..n {
            let top = (k % q) / (q / p);
            let bad = if p == 2 { top == 1 } else { top == 0 };
            if !bad || raw[k as usize].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut raw[k as usize], Rational::zero());
            for i in 1..p {
                let j = ((k + i * step) % n) as usize;
                raw[j] -= &c;
            }
        }
    }
    raw
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    /// `ζₙ^k`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n > 0, "root of unity of order 0");
        let mut raw = vec![Rational::zero(); n as usize];
        raw[k.rem_euclid(n as i64) as usize] = Rational::one();
        Self::normalize(n, raw)
    }

    /// Builds `Σ c_k ζₙ^k` from arbitrary exponent/coefficient pairs.
    pub fn from_terms(n: u64, terms: &[(i64, Rational)]) -> Self {
        assert!(n > 0, "conductor 0");
        let mut raw = vec![Rational::zero(); n as usize];
        for (k, c) in terms {
            raw[k.rem_euclid(n as i64) as usize] += c;
        }
        Self::normalize(n, raw)
    }

    fn normalize(n: u64, raw: Vec<Rational>) -> Self {
        let coeffs = reduce(n, raw);
        let x = Cyclotomic {
            conductor: n,
            coeffs,
        };
        x.minimize_conductor()
    }

    fn minimize_conductor(self) -> Self {
        let n = self.conductor;
        if n == 1 {
            return self;
        }
        if self.coeffs.iter().all(Zero::is_zero) {
            return Self::zero();
        }
        let units: Vec<u64> = (1..n).filter(|a| a.gcd(&n) == 1).collect();
        for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
            let fixed = units
                .iter()
                .filter(|&&a| a % d == 1 % d && a != 1)
                .all(|&a| self.galois_raw(a) == self.coeffs);
            if fixed {
                return self.descend(d);
            }
        }
        self
    }

    /// Coordinates of a value known to lie in `Q(ζ_d)` with respect to the basis at `d`.
    fn descend(&self, d: u64) -> Self {
        let n = self.conductor;
        let basis: Vec<u64> = (0..d).filter(|&j| is_basis_exponent(j, d)).collect();
        let columns: Vec<Vec<Rational>> = basis
            .iter()
            .map(|&j| {
                let mut raw = vec![Rational::zero(); n as usize];
                raw[(j * (n / d)) as usize] = Rational::one();
                reduce(n, raw)
            })
            .collect();
        let solution = crate::linalg::solve_rational(&columns, &self.coeffs)
            .expect("value lies in the subfield");
        let mut coeffs = vec![Rational::zero(); d as usize];
        for (j, c) in basis.iter().zip(solution) {
            coeffs[*j as usize] = c;
        }
        Cyclotomic {
            conductor: d,
            coeffs,
        }
    }

    /// Reduced coefficients of `σ_a(self)` at the current conductor.
    fn galois_raw(&self, a: u64) -> Vec<Rational> {
        let n = self.conductor;
        let mut raw = vec![Rational::zero(); n as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[((k as u64 * a) % n) as usize] += c;
            }
        }
        reduce(n, raw)
    }

    /// `σ_a : ζ ↦ ζ^a`; `a` is reduced modulo the conductor and must be a unit.
    pub fn galois(&self, a: i64) -> Self {
        let n = self.conductor;
        let a = a.rem_euclid(n as i64) as u64;
        assert!(n == 1 || a.gcd(&n) == 1, "Galois exponent must be a unit");
        Cyclotomic {
            conductor: n,
            coeffs: self.galois_raw(a),
        }
    }

    /// Complex conjugate, `ζ ↦ ζ⁻¹`.
    pub fn conjugate(&self) -> Self {
        self.galois(-1)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Nonzero `(exponent, coefficient)` pairs in the reduced basis.
    pub fn terms(&self) -> Vec<(u64, Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u64, c.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    pub fn is_real(&self) -> bool {
        *self == self.conjugate()
    }

    fn embed(&self, m: u64) -> Vec<Rational> {
        let mut raw = vec![Rational::zero(); m as usize];
        let step = m / self.conductor;
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[k * step as usize] += c;
            }
        }
        raw
    }

    /// Reduced-basis coordinates at level `m`, a multiple of the conductor.
    pub fn coordinates_at(&self, m: u64) -> Vec<Rational> {
        assert_eq!(
            m % self.conductor,
            0,
            "level must be a multiple of the conductor"
        );
        reduce(m, self.embed(m))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> Rational {
        self.galois_product().1
    }

    /// Returns `(Π_{a≠1} σ_a(self), N(self))`.
    fn galois_product(&self) -> (Self, Rational) {
        let n = self.conductor;
        let mut others = Self::one();
        for a in 2..n.max(2) {
            if a.gcd(&n) == 1 {
                others = &others * &self.galois(a as i64);
            }
        }
        let norm = (self * &others).to_rational().expect("norm is rational");
        (others, norm)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (others, norm) = self.galois_product();
        Ok(others.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// Sum of the Galois conjugates, a rational number.
    pub fn trace(&self) -> Rational {
        let n = self.conductor;
        let mut acc = Self::zero();
        for a in 1..=n {
            if a.gcd(&n) == 1 {
                acc = &acc + &self.galois(a as i64);
            }
        }
        acc.to_rational().expect("trace is rational")
    }

    /// Floating-point value `(re, im)` for previews.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold((0.0, 0.0), |(re, im), (k, c)| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / n;
                let c = c.to_f64().unwrap_or(f64::NAN);
                (re + c * t.cos(), im + c * t.sin())
            })
    }

    pub fn to_f64(&self) -> f64 {
        self.to_complex_f64().0
    }

    /// Decimal preview; complex values print as `a+bi`.
    pub fn preview(&self) -> String {
        let (re, im) = self.to_complex_f64();
        let clean = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
        if self.is_real() {
            format!("{:.6}", clean(re))
        } else {
            format!("{:.6}{:+.6}i", clean(re), clean(im))
        }
    }

    /// Enclosing interval `[lo, hi]` with `hi − lo ≤ 2^-precision`.
    pub fn to_real_interval(&self, precision: u32) -> Result<(Rational, Rational)> {
        if !self.is_real() {
            return Err(Error::NotReal);
        }
        if let Some(r) = self.to_rational() {
            return Ok((r.clone(), r));
        }
        let abs_sum: Rational = self.coeffs.iter().map(|c| c.abs()).sum();
        let mut guard = 32 + abs_sum.to_integer().bits() as u32;
        loop {
            let w = precision + guard;
            let cos = CosTable::new(self.conductor, w);
            let mut mid = Rational::zero();
            for (k, c) in self.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    mid += c * Rational::from_integer(cos.value(k as u64).clone());
                }
            }
            let scale = Rational::from_integer(BigInt::one() << w);
            let mid = mid / &scale;
            let err = &abs_sum * Rational::from_integer(BigInt::from(cos.error_ulps)) / &scale;
            let width_ok = (&err + &err) * Rational::from_integer(BigInt::one() << precision)
                <= Rational::one();
            if width_ok {
                return Ok((&mid - &err, &mid + &err));
            }
            guard += 16;
        }
    }

    /// Exact sign of a real value.
    pub fn signum(&self) -> Result<Ordering> {
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        let mut precision = 32;
        loop {
            let (lo, hi) = self.to_real_interval(precision)?;
            if lo.is_positive() {
                return Ok(Ordering::Greater);
            }
            if hi.is_negative() {
                return Ok(Ordering::Less);
            }
            precision *= 2;
        }
    }

    /// `⌊x⌋` of a real value.
    pub fn floor(&self) -> Result<BigInt> {
        if let Some(r) = self.to_rational() {
            return Ok(r.floor().to_integer());
        }
        let mut precision = 32;
        loop {
            let (lo, hi) = self.to_real_interval(precision)?;
            let (a, b) = (lo.floor().to_integer(), hi.floor().to_integer());
            if a == b {
                return Ok(a);
            }
            precision *= 2;
        }
    }

    /// Exact comparison of real values.
    pub fn cmp_real(&self, other: &Self) -> Result<Ordering> {
        (self - other).signum()
    }

    /// `√v` for an integer `v`, via quadratic Gauss sums.
    pub fn sqrt_int(v: i64) -> Self {
        if v == 0 {
            return Self::zero();
        }
        let mut acc = if v < 0 {
            Self::root_of_unity(4, 1)
        } else {
            Self::one()
        };
        let mut m = v.unsigned_abs();
        for (p, _) in prime_powers(m) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            acc = acc.scale(&Rational::from_integer(BigInt::from(p).pow(e / 2)));
            if e % 2 == 1 {
                acc = &acc * &sqrt_prime(p);
            }
        }
        acc
    }
}

fn sqrt_prime(p: u64) -> Cyclotomic {
    if p == 2 {
        return &Cyclotomic::root_of_unity(8, 1) + &Cyclotomic::root_of_unity(8, -1);
    }
    let residues: Vec<bool> = {
        let mut r = vec![false; p as usize];
        for a in 1..p {
            r[((a * a) % p) as usize] = true;
        }
        r
    };
    let terms: Vec<(i64, Rational)> = (1..p)
        .map(|a| {
            (
                a as i64,
                Rational::from_integer(BigInt::from(if residues[a as usize] { 1 } else { -1 })),
            )
        })
        .collect();
    let gauss = Cyclotomic::from_terms(p, &terms);
    if p % 4 == 1 {
        gauss
    } else {
        // g² = -p, so √p = -i·g
        -(&Cyclotomic::root_of_unity(4, 1) * &gauss)
    }
}

/// Fixed-point values of `cos(2πk/n)` scaled by `2^w`, each within `error_ulps`.
struct CosTable {
    values: Vec<BigInt>,
    error_ulps: u64,
}

impl CosTable {
    fn new(n: u64, w: u32) -> Self {
        let one = BigInt::one() << w;
        let (pi, pi_err) = fixed_pi(w);
        let mut values = Vec::with_capacity(n as usize);
        let mut worst = 0;
        for k in 0..n {
            let kk = k.min(n - k);
            // θ = 2π·kk/n ∈ [0, π]
            let theta = (&pi * BigInt::from(2 * kk)) / BigInt::from(n);
            let theta_err = 2 * pi_err + 1;
            let theta2 = (&theta * &theta) >> w;
            let mut term = one.clone();
            let mut sum = one.clone();
            let mut i: u64 = 1;
            while !term.is_zero() {
                term = (&term * &theta2) >> w;
                term = -(term / BigInt::from((2 * i - 1) * (2 * i)));
                sum += &term;
                i += 1;
            }
            worst = worst.max(50 * i + 2200 * (theta_err + 1));
            values.push(sum);
        }
        CosTable {
            values,
            error_ulps: worst,
        }
    }

    fn value(&self, k: u64) -> &BigInt {
        &self.values[k as usize]
    }
}

/// `π·2^w` rounded, with an error bound in units of `2^-w`.
fn fixed_pi(w: u32) -> (BigInt, u64) {
    fn atan_inv(x: u64, w: u32) -> (BigInt, u64) {
        let one = BigInt::one() << w;
        let x2 = BigInt::from(x * x);
        let mut power = one / BigInt::from(x);
        let mut sum = BigInt::zero();
        let mut k: u64 = 0;
        while !power.is_zero() {
            let term = &power / BigInt::from(2 * k + 1);
            if k.is_multiple_of(2) {
                sum += term;
            } else {
                sum -= term;
            }
            power /= &x2;
            k += 1;
        }
        (sum, 2 * k + 2)
    }
    let (a, ea) = atan_inv(5, w);
    let (b, eb) = atan_inv(239, w);
    (a * 16 - b * 4, 16 * ea + 4 * eb)
}

fn combine(
    a: &Cyclotomic,
    b: &Cyclotomic,
    f: impl Fn(&mut Vec<Rational>, Vec<Rational>, u64),
) -> Cyclotomic {
    let m = a.conductor.lcm(&b.conductor);
    let mut x = a.embed(m);
    f(&mut x, b.embed(m), m);
    Cyclotomic::normalize(m, x)
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor == rhs.conductor && self.conductor == 1 {
            return Cyclotomic::from_rational(&self.coeffs[0] + &rhs.coeffs[0]);
        }
        combine(self, rhs, |x, y, _| {
            x.iter_mut().zip(y).for_each(|(a, b)| *a += b)
        })
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.is_rational() {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.is_rational() {
            return self.scale(&rhs.coeffs[0]);
        }
        combine(self, rhs, |x, y, m| {
            let mut out = vec![Rational::zero(); m as usize];
            for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                    out[(i + j) % m as usize] += a * b;
                }
            }
            *x = out;
        })
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $f(self, rhs: Cyclotomic) -> Cyclotomic { (&self).$f(&rhs) }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $f(self, rhs: &Cyclotomic) -> Cyclotomic { (&self).$f(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self + rhs;
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| a + b)
    }
}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Cyclotomic::from_int(v)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Cyclotomic::from_rational(r)
    }
}

impl fmt::Display for Cyclotomic {
    /// `cyc(n; k:c, …)`; rationals print plainly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        write!(f, "cyc({};", self.conductor)?;
        for (i, (k, c)) in self.terms().iter().enumerate() {
            write!(f, "{}{k}:{c}", if i == 0 { " " } else { ", " })?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} ≈ {}", self.preview())
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("invalid rational `{s}`"),
    };
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for Cyclotomic {
    type Err = Error;

    /// Accepts `cyc(n; k:c, …)` or a plain rational.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let Some(body) = t.strip_prefix("cyc(").and_then(|b| b.strip_suffix(')')) else {
            return parse_rational(t).map(Cyclotomic::from_rational);
        };
        let (n, rest) = body.split_once(';').ok_or(Error::Parse {
            pos: 4,
            msg: "expected `;`".into(),
        })?;
        let n: u64 = n
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or(Error::Parse {
                pos: 4,
                msg: format!("invalid conductor `{}`", n.trim()),
            })?;
        let mut terms = Vec::new();
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, c) = part.split_once(':').ok_or(Error::Parse {
                pos: 0,
                msg: format!("expected `k:c`, got `{part}`"),
            })?;
            let k: i64 = k.trim().parse().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("invalid exponent `{k}`"),
            })?;
            terms.push((k, parse_rational(c)?));
        }
        Ok(Cyclotomic::from_terms(n, &terms))
    }
}

impl serde::Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
