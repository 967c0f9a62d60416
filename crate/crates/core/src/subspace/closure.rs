//! K-family operators and their closure on a basis.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::basis::{Basis, Expansion, Slot};
use super::poly::Poly;
use super::scalar::{primitive_integer_vector, Scalar};
use crate::error::{Error, Result};
use crate::tolerances::MAX_POWER;

/// `ν ∂⁵(uᵖ) + β ∂³(uⁿ) + γ ∂(uᵐ)`, optionally plus `δ ∂(u ∂²u)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KOperator {
    pub nu: Scalar,
    pub beta: Scalar,
    pub gamma_c: Scalar,
    pub p: u32,
    pub n: u32,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convective: Option<Scalar>,
}

impl KOperator {
    pub fn new(nu: Scalar, beta: Scalar, gamma_c: Scalar, p: u32, n: u32, m: u32) -> Result<Self> {
        let op = KOperator { nu, beta, gamma_c, p, n, m, convective: None };
        op.validate()?;
        Ok(op)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, k) in [("p", self.p), ("n", self.n), ("m", self.m)] {
            if k == 0 || k > MAX_POWER {
                return Err(Error::domain(format!(
                    "power {name}={k} outside 1..={MAX_POWER}"
                )));
            }
        }
        let all_zero = self.nu.is_zero()
            && self.beta.is_zero()
            && self.gamma_c.is_zero()
            && self.convective.as_ref().map_or(true, Scalar::is_zero);
        if all_zero {
            return Err(Error::domain("operator has no nonzero coefficient"));
        }
        Ok(())
    }

    /// `∂³(u²/2)`
    pub fn third_order() -> Self {
        KOperator {
            nu: Scalar::zero(),
            beta: Scalar::ratio(1, 2),
            gamma_c: Scalar::zero(),
            p: 2,
            n: 2,
            m: 2,
            convective: None,
        }
    }

    /// `ν ∂⁵(u²) + β ∂³(u²) + γ ∂(u²)`
    pub fn quintic(nu: Scalar, beta: Scalar, gamma_c: Scalar) -> Result<Self> {
        KOperator::new(nu, beta, gamma_c, 2, 2, 2)
    }

    /// `∂³(u²) + ∂(u²)`
    pub fn rosenau_hyman() -> Self {
        KOperator {
            nu: Scalar::zero(),
            beta: Scalar::one(),
            gamma_c: Scalar::one(),
            p: 2,
            n: 2,
            m: 2,
            convective: None,
        }
    }

    /// Right-hand side of `Dᵅu + a ∂(u²) + ∂(u ∂²u) = 0`.
    pub fn odibat(a: Scalar) -> Result<Self> {
        if !(a.to_f64() > 0.0) {
            return Err(Error::domain(format!("a must be positive, got {a}")));
        }
        Ok(KOperator {
            nu: Scalar::zero(),
            beta: Scalar::zero(),
            gamma_c: -a,
            p: 2,
            n: 2,
            m: 2,
            convective: Some(Scalar::int(-1)),
        })
    }

    /// `16ν − 4β + γ`: vanishes exactly when the quadratic quintic operator
    /// leaves `{1, cos x, sin x}` invariant.
    pub fn trig_condition_value(&self) -> Scalar {
        Scalar::int(16) * self.nu.clone() - Scalar::int(4) * self.beta.clone() + self.gamma_c.clone()
    }

    /// `2(ν − β + γ)`
    pub fn mu(&self) -> Scalar {
        Scalar::int(2) * (self.nu.clone() - self.beta.clone() + self.gamma_c.clone())
    }

    fn params(&self) -> Vec<(&'static str, Scalar)> {
        let mut v = vec![
            ("nu", self.nu.clone()),
            ("beta", self.beta.clone()),
            ("gamma", self.gamma_c.clone()),
        ];
        if let Some(d) = &self.convective {
            v.push(("delta", d.clone()));
        }
        v
    }

    /// Each term of the operator with unit coefficient, applied to `u`.
    fn unit_terms(&self, u: &Expansion) -> Result<Vec<Expansion>> {
        let mut out = vec![
            u.pow(self.p)?.derivative_n(5),
            u.pow(self.n)?.derivative_n(3),
            u.pow(self.m)?.derivative_n(1),
        ];
        if self.convective.is_some() {
            out.push(u.mul(&u.derivative_n(2))?.derivative());
        }
        Ok(out)
    }
}

impl fmt::Display for KOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (c, d, k) in [(&self.nu, 5, self.p), (&self.beta, 3, self.n), (&self.gamma_c, 1, self.m)] {
            if !c.is_zero() {
                let dx = if d == 1 { "d/dx".to_string() } else { format!("d^{d}/dx^{d}") };
                parts.push(format!("({c}) {dx}(u^{k})"));
            }
        }
        if let Some(c) = &self.convective {
            parts.push(format!("({c}) d/dx(u u_xx)"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `F[Σ Cᵢ fᵢ]` in the extended space with symbolic `C`.
pub fn apply_operator(op: &KOperator, basis: &Basis) -> Result<Expansion> {
    let u = basis.symbolic();
    combine(op, basis, &op.unit_terms(&u)?)
}

fn combine(op: &KOperator, basis: &Basis, terms: &[Expansion]) -> Result<Expansion> {
    let mut total = Expansion::zero(basis, basis.dim());
    for ((_, coef), term) in op.params().iter().zip(terms) {
        total.add_scaled(term, coef)?;
    }
    Ok(total)
}

/// `(Σ Cᵢ fᵢ)ᵏ` in the extended space with symbolic `C`.
pub fn expand_power(basis: &Basis, k: u32) -> Result<Expansion> {
    basis.symbolic().pow(k)
}

/// One coordinate `Φᵢ(C)` of the closure map.
#[derive(Debug, Clone, PartialEq)]
pub struct Form {
    pub label: String,
    pub poly: Poly,
    names: Vec<String>,
}

#[derive(Serialize)]
struct TermRecord<'a> {
    coeff: &'a Scalar,
    powers: &'a [u16],
}

#[derive(Serialize)]
struct PolyRecord<'a> {
    function: &'a str,
    expr: String,
    variables: &'a [String],
    terms: Vec<TermRecord<'a>>,
}

fn poly_record<'a>(function: &'a str, p: &'a Poly, names: &'a [String]) -> PolyRecord<'a> {
    PolyRecord {
        function,
        expr: p.display_with(names).to_string(),
        variables: names,
        terms: p.terms().map(|(e, c)| TermRecord { coeff: c, powers: e }).collect(),
    }
}

impl Serialize for Form {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        poly_record(&self.label, &self.poly, &self.names).serialize(s)
    }
}

impl Form {
    pub fn eval(&self, c: &[f64]) -> f64 {
        self.poly.eval(c)
    }

    pub fn eval_scalar(&self, c: &[Scalar]) -> Scalar {
        self.poly.eval_scalar(c)
    }

    /// Symmetric matrix Q with `Φ(C) = Cᵀ Q C`, if the form is quadratic.
    pub fn quadratic(&self) -> Option<QuadraticForm> {
        let n = self.poly.nvars();
        let mut q = vec![vec![Scalar::zero(); n]; n];
        let half = Scalar::ratio(1, 2);
        for (e, c) in self.poly.terms() {
            let idx: Vec<usize> = e
                .iter()
                .enumerate()
                .flat_map(|(i, &k)| std::iter::repeat(i).take(k as usize))
                .collect();
            match idx[..] {
                [i, j] if i == j => q[i][i] = c.clone(),
                [i, j] => {
                    q[i][j] = c * &half;
                    q[j][i] = c * &half;
                }
                _ => return None,
            }
        }
        Some(QuadraticForm { matrix: q })
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly.display_with(&self.names))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticForm {
    pub matrix: Vec<Vec<Scalar>>,
}

impl QuadraticForm {
    pub fn eval(&self, c: &[f64]) -> f64 {
        let mut s = 0.0;
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, q) in row.iter().enumerate() {
                s += c[i] * q.to_f64() * c[j];
            }
        }
        s
    }
}

/// `Σ coefficients[i]·params[i] = 0`
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearCondition {
    pub params: Vec<String>,
    pub coefficients: Vec<Scalar>,
}

impl LinearCondition {
    pub fn eval(&self, op: &KOperator) -> Scalar {
        op.params()
            .iter()
            .zip(&self.coefficients)
            .fold(Scalar::zero(), |acc, ((_, v), c)| acc + v * c)
    }
}

impl fmt::Display for LinearCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, p) in self.coefficients.iter().zip(&self.params) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                _ => write!(f, " {sign} ")?,
            }
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "{p}")?;
            } else {
                write!(f, "{mag}*{p}")?;
            }
            first = false;
        }
        write!(f, " = 0")
    }
}

#[derive(Debug, Clone)]
pub struct ResidualTerm {
    pub function: String,
    pub coefficient: Poly,
    names: Vec<String>,
}

impl Serialize for ResidualTerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        poly_record(&self.function, &self.coefficient, &self.names).serialize(s)
    }
}

impl fmt::Display for ResidualTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.coefficient.display_with(&self.names), self.function)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosureReport {
    pub operator: KOperator,
    pub basis: Basis,
    pub invariant: bool,
    pub phi: Option<Vec<Form>>,
    pub residual_terms: Vec<ResidualTerm>,
    /// Single linear constraint on the operator coefficients under which the
    /// out-of-span part vanishes for every `C`.
    pub condition: Option<LinearCondition>,
    /// Number of independent constraints; 0 means invariant for all
    /// coefficient values.
    pub constraint_rank: usize,
}

impl ClosureReport {
    /// The condition's left-hand side at the report's operator.
    pub fn condition_value(&self) -> Option<Scalar> {
        self.condition.as_ref().map(|c| c.eval(&self.operator))
    }
}

impl fmt::Display for ClosureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "operator: {}", self.operator)?;
        writeln!(f, "basis: {} = {{{}}}", self.basis, self.basis.labels().join(", "))?;
        writeln!(f, "invariant: {}", if self.invariant { "yes" } else { "no" })?;
        if let Some(phi) = &self.phi {
            for (name, form) in self.basis.var_names().iter().zip(phi) {
                writeln!(f, "  Phi[{name}] ({}) = {form}", form.label)?;
            }
        }
        if !self.residual_terms.is_empty() {
            writeln!(f, "remainder outside the span:")?;
            for t in &self.residual_terms {
                writeln!(f, "  {t}")?;
            }
        }
        match &self.condition {
            Some(c) => {
                let v = self.condition_value().unwrap_or_default();
                writeln!(f, "condition: {c} (value here: {v})")?;
            }
            None if self.constraint_rank == 0 => {
                writeln!(f, "condition: none (invariant for all coefficients)")?
            }
            None => writeln!(f, "condition: {} independent constraints", self.constraint_rank)?,
        }
        Ok(())
    }
}

/// Rank and reduced rows of a small dense matrix (Gaussian elimination).
fn row_reduce(mut rows: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        // exact pivots are nonzero; for floats take the largest
        let pivot = (rank..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .max_by(|&a, &b| {
                rows[a][col].to_f64().abs().total_cmp(&rows[b][col].to_f64().abs())
            });
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let lead = rows[rank][col].clone();
        let pivot_row: Vec<Scalar> = rows[rank].iter().map(|v| v / &lead).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v = &*v - &(&f * pv);
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

pub fn check_invariance(op: &KOperator, basis: &Basis) -> Result<ClosureReport> {
    let names = basis.var_names();
    let u = basis.symbolic();
    let params = op.params();
    let terms = op.unit_terms(&u)?;

    let (span, rest) = combine(op, basis, &terms)?.project();

    // One row per (out-of-span function, monomial in C): the coefficient
    // multiplying each operator parameter.
    let mut keys: Vec<(Slot, Vec<u16>)> = Vec::new();
    let mut unit_rest = Vec::new();
    for term in &terms {
        let (_, r) = term.project();
        for (s, p) in &r {
            for (e, _) in p.terms() {
                if !keys.iter().any(|(ks, ke)| ks == s && ke == e) {
                    keys.push((*s, e.clone()));
                }
            }
        }
        unit_rest.push(r);
    }
    let rows: Vec<Vec<Scalar>> = keys
        .iter()
        .map(|(s, e)| {
            unit_rest
                .iter()
                .map(|r| {
                    r.iter()
                        .find(|(rs, _)| rs == s)
                        .map(|(_, p)| p.coeff(e))
                        .unwrap_or_default()
                })
                .collect()
        })
        .collect();
    let reduced = row_reduce(rows);
    let condition = match reduced.as_slice() {
        [row] => {
            let coefficients = primitive_integer_vector(row).unwrap_or_else(|| {
                let lead = row.iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(Scalar::one);
                let lead = if lead.is_negative() { -lead } else { lead };
                row.iter().map(|c| c / &lead).collect()
            });
            Some(LinearCondition {
                params: params.iter().map(|(n, _)| n.to_string()).collect(),
                coefficients,
            })
        }
        _ => None,
    };

    let invariant = rest.is_empty();
    let labels = basis.labels();
    let phi = invariant.then(|| {
        span.into_iter()
            .zip(labels)
            .map(|(poly, label)| Form { label, poly, names: names.clone() })
            .collect()
    });
    let residual_terms = rest
        .into_iter()
        .map(|(s, p)| ResidualTerm {
            function: basis.slot_label(s),
            coefficient: p,
            names: names.clone(),
        })
        .collect();
    Ok(ClosureReport {
        operator: op.clone(),
        basis: basis.clone(),
        invariant,
        phi,
        residual_terms,
        condition,
        constraint_rank: reduced.len(),
    })
}

/// Closure map `Φ` as evaluable forms, one per basis element.
pub fn reduce_to_system(op: &KOperator, basis: &Basis) -> Result<Vec<Form>> {
    let report = check_invariance(op, basis)?;
    match report.phi {
        Some(phi) => Ok(phi),
        None => {
            let rest: Vec<String> = report.residual_terms.iter().map(|t| t.to_string()).collect();
            Err(Error::NotInvariant(format!(
                "{op} leaves {basis}; remainder {}",
                rest.join(" + ")
            )))
        }
    }
}
