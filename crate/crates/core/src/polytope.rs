//! Polyhedra `{x >= 0 : A x <= b}` over named coordinates with exact rational data.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::lp::{maximize, LpOutcome};
use crate::rational::{format_exact, Rational};

/// One inequality `coeffs . x <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Row {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl Row {
    pub fn new(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Row { coeffs, rhs }
    }

    pub fn lhs(&self, point: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(point)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, x)| c * x)
            .sum()
    }

    pub fn holds_at(&self, point: &[Rational]) -> bool {
        self.lhs(point) <= self.rhs
    }

    /// Scales so the first nonzero coefficient has magnitude one.
    fn normalized(&self) -> Row {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(lead) => {
                let s = lead.abs();
                Row {
                    coeffs: self.coeffs.iter().map(|c| c / &s).collect(),
                    rhs: &self.rhs / &s,
                }
            }
            None => self.clone(),
        }
    }

    /// Satisfied by every nonnegative point.
    fn is_trivial(&self) -> bool {
        !self.rhs.is_negative() && self.coeffs.iter().all(|c| !c.is_positive())
    }

    /// `self` follows from `other` on the nonnegative orthant without scaling.
    fn dominated_by(&self, other: &Row) -> bool {
        other.rhs <= self.rhs && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a <= b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    variables: Vec<String>,
    rows: Vec<Row>,
}

impl Polytope {
    pub fn new(variables: Vec<String>) -> Self {
        Polytope { variables, rows: Vec::new() }
    }

    pub fn from_rows(variables: Vec<String>, rows: Vec<Row>) -> Result<Self> {
        let mut p = Polytope::new(variables);
        for row in rows {
            p.push_row(row)?;
        }
        Ok(p)
    }

    pub fn push_row(&mut self, row: Row) -> Result<()> {
        if row.coeffs.len() != self.variables.len() {
            return Err(Error::VariableMismatch(format!(
                "row has {} coefficients for {} variables",
                row.coeffs.len(),
                self.variables.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.variables.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// Coefficient of `name` in every row.
    pub fn column(&self, name: &str) -> Option<Vec<Rational>> {
        let j = self.index_of(name)?;
        Some(self.rows.iter().map(|r| r.coeffs[j].clone()).collect())
    }

    /// Membership: nonnegativity plus every row.
    pub fn contains(&self, point: &[Rational]) -> Result<bool> {
        if point.len() != self.dim() {
            return Err(Error::VariableMismatch(format!(
                "point of dimension {} for {} variables",
                point.len(),
                self.dim()
            )));
        }
        Ok(point.iter().all(|x| !x.is_negative()) && self.rows.iter().all(|r| r.holds_at(point)))
    }

    /// Substitutes a fixed value for `name` and drops the coordinate.
    pub fn fix_variable(&self, name: &str, value: &Rational) -> Result<Polytope> {
        let j = self
            .index_of(name)
            .ok_or_else(|| Error::VariableMismatch(format!("unknown variable {name}")))?;
        let mut variables = self.variables.clone();
        variables.remove(j);
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut coeffs = r.coeffs.clone();
                let c = coeffs.remove(j);
                Row { coeffs, rhs: &r.rhs - c * value }
            })
            .collect();
        Ok(Polytope { variables, rows })
    }

    /// Same set, coordinates permuted into `order`.
    pub fn reordered(&self, order: &[String]) -> Result<Polytope> {
        let mine: BTreeSet<&String> = self.variables.iter().collect();
        let theirs: BTreeSet<&String> = order.iter().collect();
        if mine != theirs || order.len() != self.variables.len() {
            return Err(Error::VariableMismatch(format!(
                "cannot reorder {:?} into {:?}",
                self.variables, order
            )));
        }
        let perm: Vec<usize> = order.iter().map(|v| self.index_of(v).unwrap()).collect();
        let rows = self
            .rows
            .iter()
            .map(|r| Row { coeffs: perm.iter().map(|&j| r.coeffs[j].clone()).collect(), rhs: r.rhs.clone() })
            .collect();
        Ok(Polytope { variables: order.to_vec(), rows })
    }

    pub fn maximize(&self, objective: &[Rational]) -> LpOutcome {
        let a: Vec<Vec<Rational>> = self.rows.iter().map(|r| r.coeffs.clone()).collect();
        let b: Vec<Rational> = self.rows.iter().map(|r| r.rhs.clone()).collect();
        maximize(&a, &b, objective)
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.maximize(&vec![Rational::zero(); self.dim()]), LpOutcome::Infeasible)
    }

    /// LP certificate that every point of `self` satisfies `row`.
    pub fn implies(&self, row: &Row) -> bool {
        match self.maximize(&row.coeffs) {
            LpOutcome::Infeasible => true,
            LpOutcome::Unbounded => false,
            LpOutcome::Optimal { value, .. } => value <= row.rhs,
        }
    }

    /// Whether `self` is a subset of `other`, certified row by row.
    pub fn is_subset_of(&self, other: &Polytope) -> Result<bool> {
        let other = other.reordered(&self.variables)?;
        Ok(other.rows.iter().all(|r| self.implies(r)))
    }

    /// Syntactic cleanup: normalizes rows, drops trivial and duplicate rows and
    /// rows dominated by a single other row.
    pub fn simplified(&self) -> Polytope {
        let mut rows: Vec<Row> = self.rows.iter().map(Row::normalized).filter(|r| !r.is_trivial()).collect();
        rows.sort();
        rows.dedup();
        let mut keep = vec![true; rows.len()];
        for i in 0..rows.len() {
            for j in 0..rows.len() {
                if i != j && keep[j] && rows[i].dominated_by(&rows[j]) {
                    keep[i] = false;
                    break;
                }
            }
        }
        let rows = rows.into_iter().zip(keep).filter(|(_, k)| *k).map(|(r, _)| r).collect();
        Polytope { variables: self.variables.clone(), rows }
    }

    /// Removes every row implied by the remaining rows (LP certified).
    pub fn without_redundant_rows(&self) -> Polytope {
        let mut current = self.simplified();
        let mut i = 0;
        while i < current.rows.len() {
            let mut others = current.clone();
            let row = others.rows.remove(i);
            if others.implies(&row) {
                current = others;
            } else {
                i += 1;
            }
        }
        current
    }

    /// Vertices of the polytope, by brute force over `dim`-subsets of active
    /// constraints (rows and coordinate hyperplanes). Only for small systems.
    pub fn vertices(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let mut planes: Vec<Row> = self.rows.clone();
        for j in 0..n {
            let mut coeffs = vec![Rational::zero(); n];
            coeffs[j] = -Rational::from_integer(1.into());
            planes.push(Row::new(coeffs, Rational::zero()));
        }
        let indices: Vec<usize> = (1..=planes.len()).collect();
        let mut found: BTreeSet<Vec<Rational>> = BTreeSet::new();
        for subset in crate::combinatorics::subsets_of(&indices, n) {
            let chosen: Vec<&Row> = subset.members().iter().map(|&i| &planes[i - 1]).collect();
            if let Some(x) = solve_square(&chosen) {
                if x.iter().all(|v| !v.is_negative()) && self.rows.iter().all(|r| r.holds_at(&x)) {
                    found.insert(x);
                }
            }
        }
        found.into_iter().collect()
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                serde_json::json!({
                    "coeffs": r.coeffs.iter().map(rational_json).collect::<Vec<_>>(),
                    "rhs": rational_json(&r.rhs),
                })
            })
            .collect();
        serde_json::json!({ "variables": self.variables, "rows": rows })
    }

    pub fn from_json(value: &Value) -> Result<Polytope> {
        let dump: RegionDump =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let rows = dump
            .rows
            .into_iter()
            .map(|r| {
                Ok(Row {
                    coeffs: r.coeffs.iter().map(rational_from_json).collect::<Result<_>>()?,
                    rhs: rational_from_json(&r.rhs)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Polytope::from_rows(dump.variables, rows)
    }
}

#[derive(Deserialize, Serialize)]
struct RowDump {
    coeffs: Vec<Value>,
    rhs: Value,
}

#[derive(Deserialize, Serialize)]
struct RegionDump {
    variables: Vec<String>,
    rows: Vec<RowDump>,
}

fn bigint_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

/// `[numerator, denominator]`.
fn rational_json(x: &Rational) -> Value {
    Value::Array(vec![bigint_json(x.numer()), bigint_json(x.denom())])
}

fn rational_from_json(v: &Value) -> Result<Rational> {
    let bad = || Error::Parse(format!("expected [numerator, denominator], got {v}"));
    let pair = v.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
    let part = |p: &Value| -> Result<BigInt> {
        match p {
            Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(bad),
            Value::String(s) => s.parse().map_err(|_| bad()),
            _ => Err(bad()),
        }
    };
    let den = part(&pair[1])?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(part(&pair[0])?, den))
}

/// Solves the square system `rows` (as equalities) by Gauss-Jordan elimination.
fn solve_square(rows: &[&Row]) -> Option<Vec<Rational>> {
    let n = rows.len();
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            let mut v = r.coeffs.clone();
            v.push(r.rhs.clone());
            v
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v /= &p;
        }
        let pivot_row = m[col].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Projects `poly` onto the coordinates not in `vars_to_drop`, eliminating in
/// the given order. Nonnegativity of each dropped coordinate takes part in the
/// elimination; the result is pruned of LP-redundant rows.
pub fn fourier_motzkin_eliminate(poly: &Polytope, vars_to_drop: &[&str]) -> Result<Polytope> {
    let mut current = poly.simplified();
    for name in vars_to_drop {
        let j = current
            .index_of(name)
            .ok_or_else(|| Error::VariableMismatch(format!("unknown variable {name}")))?;
        let mut upper = Vec::new();
        let mut lower = Vec::new();
        let mut rest = Vec::new();
        for row in &current.rows {
            if row.coeffs[j].is_positive() {
                upper.push(row.clone());
            } else if row.coeffs[j].is_negative() {
                lower.push(row.clone());
            } else {
                rest.push(row.clone());
            }
        }
        let mut bound = vec![Rational::zero(); current.dim()];
        bound[j] = -Rational::from_integer(1.into());
        lower.push(Row::new(bound, Rational::zero()));

        for up in &upper {
            for lo in &lower {
                let a = up.coeffs[j].clone();
                let b = -lo.coeffs[j].clone();
                let coeffs = up.coeffs.iter().zip(&lo.coeffs).map(|(u, l)| u * &b + l * &a).collect();
                rest.push(Row::new(coeffs, &up.rhs * &b + &lo.rhs * &a));
            }
        }
        let mut variables = current.variables.clone();
        variables.remove(j);
        let rows = rest
            .into_iter()
            .map(|mut r| {
                r.coeffs.remove(j);
                r
            })
            .collect();
        current = Polytope { variables, rows }.simplified();
    }
    Ok(current.without_redundant_rows())
}

/// Set equality certified by mutual row implication.
pub fn polytopes_equal(a: &Polytope, b: &Polytope) -> Result<bool> {
    let b = b.reordered(a.variables())?;
    Ok(a.is_subset_of(&b)? && b.is_subset_of(a)?)
}

impl fmt::Display for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let mut terms = Vec::new();
            for (c, v) in row.coeffs.iter().zip(&self.variables) {
                if c.is_zero() {
                    continue;
                }
                let term = if c == &Rational::from_integer(1.into()) {
                    v.clone()
                } else if c == &-Rational::from_integer(1.into()) {
                    format!("-{v}")
                } else {
                    format!("{}*{v}", format_exact(c))
                };
                terms.push(term);
            }
            let lhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ").replace("+ -", "- ") };
            writeln!(f, "{lhs} <= {}", format_exact(&row.rhs))?;
        }
        Ok(())
    }
}
