//! Weighted derangement-graph spectra, the ratio bound, and certificates for
//! maximum intersecting sets with the module property.

use std::cmp::Ordering;

use minilp::{ComparisonOp, OptimizationDirection, Problem};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{Cyclotomic, Rational};
use crate::ekr::ActionAnalysis;
use crate::error::{Error, Result};
use crate::linalg::solve_rational;
use crate::perm::Permutation;

/// A real class function supported on derangements with `f(d) = f(d⁻¹)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibleClassFunction {
    /// One weight per conjugacy class of the faithful group; zero off derangements.
    pub weights: Vec<Rational>,
}

impl CompatibleClassFunction {
    pub fn new(analysis: &ActionAnalysis, weights: Vec<Rational>) -> Result<Self> {
        let classes = analysis.classes();
        if weights.len() != classes.len() {
            return Err(Error::SizeMismatch {
                expected: classes.len(),
                found: weights.len(),
            });
        }
        for c in analysis.action().fixer_classes() {
            if !weights[c].is_zero() {
                return Err(Error::Incompatible(format!(
                    "nonzero weight on the fixing class of {}",
                    classes.representatives()[c]
                )));
            }
        }
        for c in 0..classes.len() {
            if weights[c] != weights[classes.inverse_class(c)] {
                return Err(Error::Incompatible(format!(
                    "weights differ on the class of {} and its inverse",
                    classes.representatives()[c]
                )));
            }
        }
        Ok(CompatibleClassFunction { weights })
    }

    /// Weights given on representatives of the original group; unnamed classes get 0.
    pub fn from_representatives(
        analysis: &ActionAnalysis,
        entries: &[(Permutation, Rational)],
    ) -> Result<Self> {
        let mut weights = vec![Rational::zero(); analysis.classes().len()];
        let perms: Vec<Permutation> = entries.iter().map(|(p, _)| p.clone()).collect();
        for (i, (_, w)) in analysis.indices_of(&perms)?.into_iter().zip(entries) {
            weights[analysis.classes().class_of_index(i)] = w.clone();
        }
        Self::new(analysis, weights)
    }

    /// Weight 1 on every derangement.
    pub fn uniform(analysis: &ActionAnalysis) -> Result<Self> {
        let mut weights = vec![Rational::zero(); analysis.classes().len()];
        for c in analysis.derangement_classes() {
            weights[c] = Rational::from_integer(1.into());
        }
        Self::new(analysis, weights)
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        CompatibleClassFunction {
            weights: self.weights.iter().map(|w| w * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedSpectrum {
    /// `λ_{χ,f}` per irreducible, in table order.
    pub eigenvalues: Vec<Cyclotomic>,
    pub d: Cyclotomic,
    pub tau: Cyclotomic,
    /// Irreducibles attaining `τ`.
    pub tight: Vec<usize>,
}

/// `λ_χ = (1/χ(1)) Σ_c |c| f(c) χ(c)`.
pub fn weighted_spectrum(
    analysis: &ActionAnalysis,
    f: &CompatibleClassFunction,
) -> WeightedSpectrum {
    let table = analysis.table();
    let sizes = analysis.classes().sizes();
    let eigenvalues: Vec<Cyclotomic> = table
        .irreducibles()
        .iter()
        .zip(table.degrees())
        .map(|(chi, &deg)| {
            let s: Cyclotomic = chi
                .values
                .iter()
                .zip(&f.weights)
                .zip(sizes)
                .filter(|((_, w), _)| !w.is_zero())
                .map(|((v, w), &size)| v.scale(&(w * BigInt::from(size))))
                .sum();
            s.scale(&BigRational::new(1.into(), BigInt::from(deg)))
        })
        .collect();
    let mut tau = eigenvalues[0].clone();
    for e in &eigenvalues[1..] {
        if e.cmp_real(&tau)
            .expect("eigenvalues of a symmetric weighting are real")
            == Ordering::Less
        {
            tau = e.clone();
        }
    }
    let tight = (0..eigenvalues.len())
        .filter(|&i| eigenvalues[i] == tau)
        .collect();
    WeightedSpectrum {
        d: eigenvalues[0].clone(),
        eigenvalues,
        tau,
        tight,
    }
}

/// `|G|(−τ)/(d−τ)`.
pub fn ratio_bound(spectrum: &WeightedSpectrum, group_order: u64) -> Result<Cyclotomic> {
    if spectrum.tau.signum()? != Ordering::Less {
        return Err(Error::NoRatioBound(format!(
            "least eigenvalue {} is not negative",
            spectrum.tau
        )));
    }
    let num = (-&spectrum.tau).scale(&Rational::from_integer(BigInt::from(group_order)));
    num.checked_div(&(&spectrum.d - &spectrum.tau))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassWeight {
    pub representative: String,
    pub weight: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub weights: Vec<ClassWeight>,
    pub d: Cyclotomic,
    pub tau: Cyclotomic,
    pub bound: Cyclotomic,
    pub tight_set_size: u64,
    pub tight_characters: Vec<usize>,
    pub verified: bool,
}

fn certify(
    analysis: &ActionAnalysis,
    f: &CompatibleClassFunction,
    size: u64,
) -> Result<Certificate> {
    let spectrum = weighted_spectrum(analysis, f);
    let bound = ratio_bound(&spectrum, analysis.classes().group_order())?;
    if bound != Cyclotomic::from_int(size as i64) {
        return Err(Error::CertificateRejected(format!(
            "ratio bound {bound} ≠ {size}"
        )));
    }
    if let Some(&chi) = spectrum
        .tight
        .iter()
        .find(|c| !analysis.support().contains(c))
    {
        return Err(Error::CertificateRejected(format!(
            "character {chi} of degree {} attains τ but vanishes on H",
            analysis.table().degrees()[chi]
        )));
    }
    let reps = analysis.classes().representatives();
    let weights = f
        .weights
        .iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .map(|(c, w)| ClassWeight {
            representative: reps[c].to_cycle_string(),
            weight: w.to_string(),
        })
        .collect();
    Ok(Certificate {
        weights,
        d: spectrum.d,
        tau: spectrum.tau,
        bound,
        tight_set_size: size,
        tight_characters: spectrum.tight,
        verified: true,
    })
}

/// Checks that `f` certifies `set` as a maximum intersecting set with the module property.
pub fn verify_certificate(
    analysis: &ActionAnalysis,
    f: &CompatibleClassFunction,
    set: &[usize],
) -> Result<Certificate> {
    if !analysis.is_intersecting(set) {
        return Err(Error::NotIntersecting(format!("{} elements", set.len())));
    }
    certify(analysis, f, set.len() as u64)
}

/// Simplest rational within `tol` of `x`.
fn simplest_rational(x: f64, tol: f64) -> Rational {
    let (lo, hi) = (x - tol, x + tol);
    if lo <= 0.0 && hi >= 0.0 {
        return Rational::zero();
    }
    let negative = x < 0.0;
    let (lo, hi) = if negative { (-hi, -lo) } else { (lo, hi) };
    // Stern–Brocot descent towards the interval [lo, hi]
    let (mut a, mut b, mut c, mut d) = (0i128, 1i128, 1i128, 0i128);
    for _ in 0..10_000 {
        let (p, q) = (a + c, b + d);
        let m = p as f64 / q as f64;
        if m < lo {
            let k = ((lo * b as f64 - a as f64) / (c as f64 - lo * d as f64))
                .floor()
                .max(1.0) as i128;
            a += k * c;
            b += k * d;
        } else if m > hi {
            let k = ((c as f64 - hi * d as f64) / (hi * b as f64 - a as f64))
                .floor()
                .max(1.0) as i128;
            c += k * a;
            d += k * b;
        } else {
            let r = BigRational::new(BigInt::from(p), BigInt::from(q));
            return if negative { -r } else { r };
        }
    }
    BigRational::from_float(x).unwrap_or_default()
}

/// Searches for a compatible class function whose ratio bound equals `target_size`
/// with all tight characters in `Y_H`.
pub fn search_certificate(analysis: &ActionAnalysis, target_size: u64) -> Result<Certificate> {
    let order = analysis.classes().group_order();
    let classes = analysis.classes();
    let table = analysis.table();
    if target_size == 0 || target_size >= order {
        return Err(Error::Infeasible(format!(
            "row sum |G|/{target_size} − 1 is not positive"
        )));
    }
    let row_sum = BigRational::new(BigInt::from(order), BigInt::from(target_size))
        - BigRational::from_integer(1.into());

    let mut pairs: Vec<Vec<usize>> = Vec::new();
    for c in analysis.derangement_classes() {
        let inv = classes.inverse_class(c);
        if c <= inv {
            pairs.push(if c == inv { vec![c] } else { vec![c, inv] });
        }
    }
    if pairs.is_empty() {
        return Err(Error::Infeasible("no derangements".into()));
    }
    let size_of = |p: &Vec<usize>| -> u64 { p.iter().map(|&c| classes.sizes()[c]).sum() };
    let sum_coeffs: Vec<Rational> = pairs
        .iter()
        .map(|p| Rational::from_integer(BigInt::from(size_of(p))))
        .collect();

    // one real row per distinct nontrivial eigenvalue functional
    let mut rows: Vec<(Vec<Cyclotomic>, Vec<usize>)> = Vec::new();
    for chi in 1..table.len() {
        let deg = BigRational::new(1.into(), BigInt::from(table.degrees()[chi]));
        let coeffs: Vec<Cyclotomic> = pairs
            .iter()
            .map(|p| {
                let s: Cyclotomic = p
                    .iter()
                    .map(|&c| {
                        table
                            .value(chi, c)
                            .scale(&Rational::from_integer(BigInt::from(classes.sizes()[c])))
                    })
                    .sum();
                s.scale(&deg)
            })
            .collect();
        match rows.iter_mut().find(|(r, _)| *r == coeffs) {
            Some((_, chars)) => chars.push(chi),
            None => rows.push((coeffs, vec![chi])),
        }
    }
    let float_rows: Vec<Vec<f64>> = rows
        .iter()
        .map(|(r, _)| r.iter().map(Cyclotomic::to_f64).collect())
        .collect();
    let in_c = |chars: &Vec<usize>| chars.iter().any(|c| analysis.vanishing().contains(c));
    let d_float = row_sum.to_f64().unwrap();
    let bound = 1000.0 * (d_float + 1.0);

    let solve = |objective: Option<usize>, eps: f64| -> Option<Vec<f64>> {
        let mut lp = Problem::new(OptimizationDirection::Maximize);
        let vars: Vec<_> = (0..pairs.len())
            .map(|j| {
                let obj = objective.map_or(0.0, |r| float_rows[r][j]);
                lp.add_var(obj, (-bound, bound))
            })
            .collect();
        let sum: Vec<_> = vars
            .iter()
            .zip(&sum_coeffs)
            .map(|(&v, c)| (v, c.to_f64().unwrap()))
            .collect();
        lp.add_constraint(&sum, ComparisonOp::Eq, d_float);
        for (r, (_, chars)) in rows.iter().enumerate() {
            let expr: Vec<_> = vars
                .iter()
                .zip(&float_rows[r])
                .map(|(&v, &c)| (v, c))
                .collect();
            let rhs = if in_c(chars) { -1.0 + eps } else { -1.0 };
            lp.add_constraint(&expr, ComparisonOp::Ge, rhs);
        }
        let sol = lp.solve().ok()?;
        Some(vars.iter().map(|&v| *sol.var_value(v)).collect())
    };

    let mut last_reason = String::from("linear program infeasible");
    for eps in [1e-3, 1e-6, 1e-9] {
        let Some(start) = solve(None, eps) else {
            continue;
        };
        let value =
            |w: &[f64], r: usize| -> f64 { float_rows[r].iter().zip(w).map(|(a, b)| a * b).sum() };
        let mut points = vec![start];
        let mut forced = Vec::new();
        for r in 0..rows.len() {
            match solve(Some(r), eps) {
                Some(w) if value(&w, r) > -1.0 + 1e-7 => points.push(w),
                Some(_) => forced.push(r),
                None => {}
            }
        }
        if let Some(&r) = forced.iter().find(|&&r| in_c(&rows[r].1)) {
            return Err(Error::Infeasible(format!(
                "characters {:?} outside Y_H are always tight",
                rows[r].1
            )));
        }
        let centre: Vec<f64> = (0..pairs.len())
            .map(|j| points.iter().map(|p| p[j]).sum::<f64>() / points.len() as f64)
            .collect();

        // exact constraints {row sum = D, λ_χ = −1 for forced χ}
        let mut equations: Vec<(Vec<Rational>, Rational)> =
            vec![(sum_coeffs.clone(), row_sum.clone())];
        for &r in &forced {
            let level = rows[r]
                .0
                .iter()
                .fold(1u64, |acc, c| acc.lcm(&c.conductor()));
            let coords: Vec<Vec<Rational>> =
                rows[r].0.iter().map(|c| c.coordinates_at(level)).collect();
            let rhs = Cyclotomic::from_int(-1).coordinates_at(level);
            for k in 0..level as usize {
                let eq: Vec<Rational> = coords.iter().map(|c| c[k].clone()).collect();
                if eq.iter().any(|x| !x.is_zero()) || !rhs[k].is_zero() {
                    equations.push((eq, rhs[k].clone()));
                }
            }
        }
        let gram_columns: Vec<Vec<Rational>> = equations
            .iter()
            .map(|(aj, _)| {
                equations
                    .iter()
                    .map(|(ai, _)| ai.iter().zip(aj).map(|(x, y)| x * y).sum::<Rational>())
                    .collect()
            })
            .collect();
        // coarse roundings first so that simple weights win
        for point in [&points[0], &centre] {
            for tol in [1e-2, 1e-4, 1e-6, 1e-9] {
                let guess: Vec<Rational> =
                    point.iter().map(|&x| simplest_rational(x, tol)).collect();
                let residual: Vec<Rational> = equations
                    .iter()
                    .map(|(a, b)| b - a.iter().zip(&guess).map(|(x, y)| x * y).sum::<Rational>())
                    .collect();
                // minimum-norm correction Δ = Aᵀy with (AAᵀ)y = residual
                let Some(y) = solve_rational(&gram_columns, &residual) else {
                    last_reason = "tight equations are inconsistent".into();
                    continue;
                };
                let mut weights = vec![Rational::zero(); classes.len()];
                for (j, p) in pairs.iter().enumerate() {
                    let w = &guess[j]
                        + equations
                            .iter()
                            .zip(&y)
                            .map(|((a, _), yi)| &a[j] * yi)
                            .sum::<Rational>();
                    for &c in p {
                        weights[c] = w.clone();
                    }
                }
                let f = CompatibleClassFunction::new(analysis, weights)?;
                match certify(analysis, &f, target_size) {
                    Ok(cert) => return Ok(cert),
                    Err(e) => last_reason = e.to_string(),
                }
            }
        }
    }
    Err(Error::Infeasible(last_reason))
}

/// Which index convention to use for the dense matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// `M_{g,h} = f(g⁻¹h)`
    LeftQuotient,
    /// `M_{g,h} = f(gh⁻¹)`
    RightQuotient,
}

pub fn dense_matrix(
    analysis: &ActionAnalysis,
    f: &CompatibleClassFunction,
    convention: Convention,
    limit: u64,
) -> Result<nalgebra::DMatrix<f64>> {
    let t = analysis.action().table();
    let n = t.len();
    if n as u64 > limit {
        return Err(Error::Budget {
            what: "dense matrix order",
            limit,
        });
    }
    let weights: Vec<f64> = f.weights.iter().map(|w| w.to_f64().unwrap()).collect();
    let classes = analysis.classes();
    Ok(nalgebra::DMatrix::from_fn(n, n, |g, h| {
        let x = match convention {
            Convention::LeftQuotient => t.mul(t.inverse(g), h),
            Convention::RightQuotient => t.mul(g, t.inverse(h)),
        };
        weights[classes.class_of_index(x)]
    }))
}

/// Sorted numeric eigenvalues of `M^f`.
pub fn dense_matrix_oracle(
    analysis: &ActionAnalysis,
    f: &CompatibleClassFunction,
    limit: u64,
) -> Result<Vec<f64>> {
    let m = dense_matrix(analysis, f, Convention::LeftQuotient, limit)?;
    let mut ev: Vec<f64> = nalgebra::SymmetricEigen::new(m)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// The eigenvalue multiset predicted by the character formula, sorted.
pub fn predicted_multiset(analysis: &ActionAnalysis, spectrum: &WeightedSpectrum) -> Vec<f64> {
    let mut out: Vec<f64> = spectrum
        .eigenvalues
        .iter()
        .zip(analysis.table().degrees())
        .flat_map(|(l, &d)| std::iter::repeat_n(l.to_f64(), (d * d) as usize))
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::rational;
    use crate::ekr::AnalysisBudget;
    use crate::group::{named, SubgroupSpec};
    use crate::perm::parse_generators;

    fn a5_analysis(h: &str) -> ActionAnalysis {
        let g = named::alternating(5).unwrap();
        let sub = SubgroupSpec::new(&g, &parse_generators(h, Some(5)).unwrap()).unwrap();
        ActionAnalysis::new(&g, &sub, AnalysisBudget::default()).unwrap()
    }

    fn perm(s: &str) -> Permutation {
        parse_generators(s, Some(5)).unwrap().remove(0)
    }

    #[test]
    fn f1_spectrum_and_bound() {
        let a = a5_analysis("(1,2,3,4,5)");
        let f = CompatibleClassFunction::from_representatives(
            &a,
            &[
                (perm("(1,2)(3,4)"), rational(1, 1)),
                (perm("(1,2,3)"), rational(2, 1)),
            ],
        )
        .unwrap();
        let s = weighted_spectrum(&a, &f);
        assert_eq!(s.d, Cyclotomic::from_int(55));
        assert_eq!(s.tau, Cyclotomic::from_int(-5));
        let mut ev: Vec<i64> = s
            .eigenvalues
            .iter()
            .map(|e| e.to_integer().unwrap().try_into().unwrap())
            .collect();
        ev.sort_unstable();
        assert_eq!(ev, vec![-5, -5, -5, 10, 55]);
        assert_eq!(ratio_bound(&s, 60).unwrap(), Cyclotomic::from_int(5));

        let dense = dense_matrix_oracle(&a, &f, 400).unwrap();
        let predicted = predicted_multiset(&a, &s);
        assert!(dense
            .iter()
            .zip(&predicted)
            .all(|(x, y)| (x - y).abs() < 1e-8));
        let left = dense_matrix(&a, &f, Convention::LeftQuotient, 400).unwrap();
        let right = dense_matrix(&a, &f, Convention::RightQuotient, 400).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn incompatible_weights_are_rejected() {
        let a = a5_analysis("(1,2,3,4,5)");
        let bad = CompatibleClassFunction::from_representatives(
            &a,
            &[(perm("(1,2,3,4,5)"), rational(1, 1))],
        );
        assert!(matches!(bad, Err(Error::Incompatible(_))));
    }

    #[test]
    fn zero_function_has_no_bound() {
        let a = a5_analysis("(1,2,3,4,5)");
        let f = CompatibleClassFunction::new(&a, vec![Rational::zero(); 5]).unwrap();
        let s = weighted_spectrum(&a, &f);
        assert!(s.eigenvalues.iter().all(Cyclotomic::is_zero));
        assert!(matches!(ratio_bound(&s, 60), Err(Error::NoRatioBound(_))));
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_rational(1.5000000001, 1e-6), rational(3, 2));
        assert_eq!(simplest_rational(-0.3333333333, 1e-6), rational(-1, 3));
        assert_eq!(simplest_rational(1e-12, 1e-6), rational(0, 1));
        assert_eq!(simplest_rational(7.0, 1e-9), rational(7, 1));
    }

    #[test]
    fn searches_find_certificates() {
        let a = a5_analysis("(1,2,3,4,5)");
        let cert = search_certificate(&a, 5).unwrap();
        assert_eq!(cert.bound, Cyclotomic::from_int(5));
        assert!(matches!(
            search_certificate(&a, 60),
            Err(Error::Infeasible(_))
        ));
    }
}
