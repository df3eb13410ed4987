//! Complex character tables by Dixon's method, and character sums over sets.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::action::CosetAction;
use crate::cyclotomic::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::ConjugacyClasses;
use crate::linalg::{is_prime, mod_inv, mod_pow, nullspace_mod_p, primitive_root};
use crate::perm::Permutation;

/// One value per conjugacy class, in class order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClassFunction {
    pub values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(values: Vec<Cyclotomic>) -> Self {
        ClassFunction { values }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        ClassFunction {
            values: values.iter().map(|&v| Cyclotomic::from_int(v)).collect(),
        }
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    /// `⟨χ, ψ⟩ = (1/|G|) Σ_c |c| χ(c) conj(ψ(c))`.
    pub fn inner_product(&self, other: &ClassFunction, classes: &ConjugacyClasses) -> Cyclotomic {
        let sum: Cyclotomic = self
            .values
            .iter()
            .zip(&other.values)
            .zip(classes.sizes())
            .map(|((a, b), &s)| {
                (a * &b.conjugate()).scale(&Rational::from_integer(BigInt::from(s)))
            })
            .sum();
        sum.scale(&BigRational::new(
            BigInt::one(),
            BigInt::from(classes.group_order()),
        ))
    }
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    classes: Arc<ConjugacyClasses>,
    irreducibles: Vec<ClassFunction>,
    degrees: Vec<u64>,
    prime: u64,
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2√|G|`.
fn dixon_prime(exponent: u64, order: u64) -> u64 {
    let mut p = exponent + 1;
    while !(is_prime(p) && (p as u128) * (p as u128) > 4 * order as u128) {
        p += exponent;
    }
    p
}

impl CharacterTable {
    pub fn compute(classes: Arc<ConjugacyClasses>) -> Result<Self> {
        let r = classes.len();
        let order = classes.group_order();
        let e = classes.exponent();
        let p = dixon_prime(e, order);
        let table = classes.elements().clone();

        // coeffs[i][j][k] = #{x ∈ C_i : x⁻¹ z_k ∈ C_j}
        let mut coeffs = vec![vec![vec![0u64; r]; r]; r];
        for k in 0..r {
            let z = table
                .index_of(&classes.representatives()[k])
                .expect("representative in table");
            for x in 0..table.len() {
                let y = table.mul(table.inverse(x), z);
                coeffs[classes.class_of_index(x)][classes.class_of_index(y)][k] += 1;
            }
        }

        let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
            .map(|i| {
                let mut v = vec![0u64; r];
                v[i] = 1;
                v
            })
            .collect()];
        for m in coeffs.iter().skip(1) {
            if spaces.iter().all(|s| s.len() == 1) {
                break;
            }
            let mut next = Vec::new();
            for basis in spaces {
                if basis.len() == 1 {
                    next.push(basis);
                    continue;
                }
                let d = basis.len();
                let mb: Vec<Vec<u64>> = (0..r)
                    .map(|row| {
                        (0..d)
                            .map(|col| {
                                (0..r)
                                    .map(|t| m[row][t] % p * basis[col][t] % p)
                                    .sum::<u64>()
                                    % p
                            })
                            .collect()
                    })
                    .collect();
                let mut found = 0;
                for lambda in 0..p {
                    let shifted: Vec<Vec<u64>> = (0..r)
                        .map(|row| {
                            (0..d)
                                .map(|col| {
                                    (mb[row][col] + p * p - lambda * basis[col][row] % p) % p
                                })
                                .collect()
                        })
                        .collect();
                    let ns = nullspace_mod_p(&shifted, d, p);
                    if ns.is_empty() {
                        continue;
                    }
                    found += ns.len();
                    next.push(
                        ns.iter()
                            .map(|c| {
                                (0..r)
                                    .map(|t| {
                                        (0..d).map(|j| c[j] * basis[j][t] % p).sum::<u64>() % p
                                    })
                                    .collect()
                            })
                            .collect(),
                    );
                    if found == d {
                        break;
                    }
                }
                if found != d {
                    return Err(Error::Defect(format!(
                        "class-algebra eigenspace split failed mod {p}"
                    )));
                }
            }
            spaces = next;
        }
        if spaces.len() != r {
            return Err(Error::Defect(format!(
                "found {} of {r} central characters mod {p}",
                spaces.len()
            )));
        }

        let z = mod_pow(primitive_root(p), (p - 1) / e, p);
        let mut rows = Vec::with_capacity(r);
        for space in &spaces {
            let v = &space[0];
            let inv0 = mod_inv(v[0], p);
            let omega: Vec<u64> = v.iter().map(|x| x * inv0 % p).collect();
            let sum = (0..r).fold(0u64, |acc, k| {
                let size = classes.sizes()[k] % p;
                (acc + omega[k] * omega[classes.inverse_class(k)] % p * mod_inv(size, p)) % p
            });
            let d2 = order % p * mod_inv(sum, p) % p;
            let degree = (1..)
                .take_while(|d| d * d <= order)
                .find(|d| d * d % p == d2)
                .ok_or_else(|| {
                    Error::Defect(format!("no character degree squares to {d2} mod {p}"))
                })?;
            let chi_p: Vec<u64> = (0..r)
                .map(|k| omega[k] * degree % p * mod_inv(classes.sizes()[k] % p, p) % p)
                .collect();
            let values = (0..r)
                .map(|k| {
                    let o = classes.element_order(k);
                    let step = e / o;
                    let inv_o = mod_inv(o % p, p);
                    let terms: Vec<(i64, Rational)> = (0..o)
                        .map(|l| {
                            let s = (0..o).fold(0u64, |acc, j| {
                                let val = chi_p[classes.power_class(k, j as i64)];
                                let root =
                                    mod_pow(z, (p - 1 - (step * l * j) % (p - 1)) % (p - 1), p);
                                (acc + val * root) % p
                            });
                            let m = s * inv_o % p;
                            (l as i64, Rational::from_integer(BigInt::from(m)))
                        })
                        .collect();
                    Cyclotomic::from_terms(o, &terms)
                })
                .collect();
            rows.push((degree, ClassFunction::new(values)));
        }

        rows.sort_by(|(da, a), (db, b)| {
            let trivial = |c: &ClassFunction| c.values.iter().all(|v| *v == Cyclotomic::one());
            da.cmp(db)
                .then(trivial(b).cmp(&trivial(a)))
                .then_with(|| a.cmp(b))
        });
        let degrees = rows.iter().map(|(d, _)| *d).collect();
        let irreducibles = rows.into_iter().map(|(_, c)| c).collect();
        let table = CharacterTable {
            classes,
            irreducibles,
            degrees,
            prime: p,
        };
        table.verify_orthogonality()?;
        Ok(table)
    }

    /// Exact row orthogonality, degree sum and column orthogonality.
    pub fn verify_orthogonality(&self) -> Result<()> {
        let n = self.irreducibles.len();
        for i in 0..n {
            for j in i..n {
                let ip = self.irreducibles[i].inner_product(&self.irreducibles[j], &self.classes);
                let expect = if i == j {
                    Cyclotomic::one()
                } else {
                    Cyclotomic::zero()
                };
                if ip != expect {
                    return Err(Error::Defect(format!("⟨χ{i}, χ{j}⟩ = {ip}")));
                }
            }
        }
        let order = self.classes.group_order();
        if self.degrees.iter().map(|d| d * d).sum::<u64>() != order {
            return Err(Error::Defect("degree squares do not sum to |G|".into()));
        }
        for a in 0..n {
            for b in 0..n {
                let s: Cyclotomic = self
                    .irreducibles
                    .iter()
                    .map(|chi| &chi.values[a] * &chi.values[b].conjugate())
                    .sum();
                let expect = if a == b {
                    Cyclotomic::from_rational(BigRational::new(
                        BigInt::from(order),
                        BigInt::from(self.classes.sizes()[a]),
                    ))
                } else {
                    Cyclotomic::zero()
                };
                if s != expect {
                    return Err(Error::Defect(format!(
                        "column orthogonality fails at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn classes(&self) -> &Arc<ConjugacyClasses> {
        &self.classes
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    /// The prime used for the modular computation.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn value(&self, chi: usize, class: usize) -> &Cyclotomic {
        &self.irreducibles[chi].values[class]
    }

    /// Index of the irreducible with exactly these values.
    pub fn find(&self, values: &ClassFunction) -> Option<usize> {
        self.irreducibles.iter().position(|c| c == values)
    }

    /// Multiplicities `⟨f, χ⟩` of every irreducible.
    pub fn decompose(&self, f: &ClassFunction) -> Vec<Cyclotomic> {
        self.irreducibles
            .iter()
            .map(|chi| f.inner_product(chi, &self.classes))
            .collect()
    }

    /// The sign character, `None` unless all class representatives are permutations of the group's own points.
    pub fn sign_character(&self) -> Option<usize> {
        let values: Vec<i64> = self
            .classes
            .representatives()
            .iter()
            .map(|g| if g.is_even() { 1 } else { -1 })
            .collect();
        self.find(&ClassFunction::from_integers(&values))
    }

    pub fn export(&self) -> TableExport {
        let classes = (0..self.classes.len())
            .map(|c| ClassExport {
                representative: self.classes.representatives()[c].to_cycle_string(),
                size: self.classes.sizes()[c],
                order: self.classes.element_order(c),
            })
            .collect();
        let rows = self
            .irreducibles
            .iter()
            .zip(&self.degrees)
            .map(|(chi, &degree)| RowExport {
                degree,
                values: chi.values.clone(),
                preview: chi.values.iter().map(Cyclotomic::preview).collect(),
            })
            .collect();
        TableExport {
            order: self.classes.group_order(),
            classes,
            rows,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassExport {
    pub representative: String,
    pub size: u64,
    pub order: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowExport {
    pub degree: u64,
    pub values: Vec<Cyclotomic>,
    pub preview: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableExport {
    pub order: u64,
    pub classes: Vec<ClassExport>,
    pub rows: Vec<RowExport>,
}

impl TableExport {
    /// Aligned plain-text table with decimal previews.
    pub fn to_text(&self) -> String {
        let mut grid: Vec<Vec<String>> = vec![
            std::iter::once("class".to_string())
                .chain(self.classes.iter().map(|c| c.representative.clone()))
                .collect(),
            std::iter::once("size".to_string())
                .chain(self.classes.iter().map(|c| c.size.to_string()))
                .collect(),
            std::iter::once("order".to_string())
                .chain(self.classes.iter().map(|c| c.order.to_string()))
                .collect(),
        ];
        for (i, r) in self.rows.iter().enumerate() {
            grid.push(
                std::iter::once(format!("χ{}", i + 1))
                    .chain(r.preview.iter().cloned())
                    .collect(),
            );
        }
        let widths: Vec<usize> = (0..grid[0].len())
            .map(|j| {
                grid.iter()
                    .map(|row| row[j].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for row in &grid {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

/// Fixed-point counts of class representatives on `Ω`.
pub fn permutation_character(action: &CosetAction) -> ClassFunction {
    let classes = action.classes();
    let table = action.table();
    let values = classes
        .representatives()
        .iter()
        .map(|g| Cyclotomic::from_int(action.fixed_point_count(table.index_of(g).unwrap()) as i64))
        .collect();
    ClassFunction::new(values)
}

/// `χ(v_A) = Σ_c counts[c]·χ(c)`.
pub fn char_sum(chi: &ClassFunction, counts: &[u64]) -> Cyclotomic {
    chi.values
        .iter()
        .zip(counts)
        .filter(|(_, &n)| n > 0)
        .map(|(v, &n)| v.scale(&Rational::from_integer(BigInt::from(n))))
        .sum()
}

/// `χ(v_A)` for a list of permutations, each of which must lie in the group.
pub fn char_sum_elements(
    chi: &ClassFunction,
    classes: &ConjugacyClasses,
    elements: &[Permutation],
) -> Result<Cyclotomic> {
    let idx = elements
        .iter()
        .map(|g| {
            classes
                .elements()
                .index_of(g)
                .ok_or_else(|| Error::NotASubgroup(g.to_cycle_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(char_sum(chi, &classes.class_counts(&idx)))
}

/// `(C, Y_H)`: irreducibles whose sum over `H` vanishes, and the rest.
pub fn vanishing_and_support_sets(
    table: &CharacterTable,
    subgroup_indices: &[usize],
) -> (Vec<usize>, Vec<usize>) {
    let counts = table.classes().class_counts(subgroup_indices);
    (0..table.len()).partition(|&i| char_sum(&table.irreducibles()[i], &counts).is_zero())
}

/// `Σ_{χ ∈ Y_H} χ(1)²`.
pub fn ideal_dimension(table: &CharacterTable, subgroup_indices: &[usize]) -> u64 {
    let (_, support) = vanishing_and_support_sets(table, subgroup_indices);
    support.iter().map(|&i| table.degrees()[i].pow(2)).sum()
}
