//! Differential forms on `ℤ[q][x_1, .., x_d]` and the q-differential.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::ring_core::{monomial::fmt_exp, Exp, Monomial, SparsePoly};

/// `x^weight · dlog x_I`. For polynomial forms `weight_i ≥ 1` whenever `i ∈ I`,
/// so this is `x^{weight - 1_I} dx_I`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormBasisElement {
    pub weight: Vec<Exp>,
    /// Strictly increasing, 1-based.
    pub wedge: Vec<usize>,
}

impl FormBasisElement {
    pub fn degree(&self) -> usize {
        self.wedge.len()
    }

    /// The coefficient monomial of `dx_I`.
    pub fn coefficient(&self) -> Monomial {
        let mut exps = vec![Exp::from_integer(0)];
        for (i, w) in self.weight.iter().enumerate() {
            let shift = if self.wedge.contains(&(i + 1)) { 1 } else { 0 };
            exps.push(*w - shift);
        }
        Monomial::from_exps(exps)
    }

    pub fn to_form(&self) -> Form {
        Form::term(self.wedge.clone(), SparsePoly::monomial(1.into(), self.coefficient()))
    }
}

impl fmt::Display for FormBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coefficient();
        write!(f, "{c}")?;
        for i in &self.wedge {
            write!(f, " dx{i}")?;
        }
        Ok(())
    }
}

/// Weight as display strings, e.g. `["3/4"]`.
pub fn weight_strings(weight: &[Exp]) -> Vec<String> {
    weight.iter().map(|e| fmt_exp(e).trim_matches(|c| c == '(' || c == ')').to_string()).collect()
}

/// Sign of `dx_i ∧ dx_I` rewritten in increasing order.
pub fn wedge_sign(i: usize, set: &[usize]) -> Option<i64> {
    if set.contains(&i) {
        return None;
    }
    let before = set.iter().filter(|&&j| j < i).count();
    Some(if before % 2 == 0 { 1 } else { -1 })
}

fn insert_sorted(set: &[usize], i: usize) -> Vec<usize> {
    let mut out = set.to_vec();
    let pos = out.partition_point(|&j| j < i);
    out.insert(pos, i);
    out
}

/// A polynomial differential form `Σ_I f_I dx_I`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Form {
    pub terms: BTreeMap<Vec<usize>, SparsePoly>,
}

impl Form {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(wedge: Vec<usize>, coeff: SparsePoly) -> Self {
        let mut f = Self::zero();
        f.add_term(wedge, &coeff);
        f
    }

    pub fn function(f: SparsePoly) -> Self {
        Self::term(Vec::new(), f)
    }

    pub fn add_term(&mut self, wedge: Vec<usize>, coeff: &SparsePoly) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(wedge.clone()).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&wedge);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, wedge: &[usize]) -> SparsePoly {
        self.terms.get(wedge).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &SparsePoly) -> Form {
        let mut out = Form::zero();
        for (w, f) in &self.terms {
            out.add_term(w.clone(), &(f * c));
        }
        out
    }

    /// Decomposes into `(basis element, q-coefficient)` pairs.
    pub fn to_basis(&self, d: usize) -> Vec<(FormBasisElement, SparsePoly)> {
        let mut out: BTreeMap<FormBasisElement, SparsePoly> = BTreeMap::new();
        for (wedge, f) in &self.terms {
            for (xm, qc) in f.split_x_parts() {
                let weight: Vec<Exp> = (1..=d)
                    .map(|i| xm.exp(i) + if wedge.contains(&i) { 1 } else { 0 })
                    .collect();
                *out.entry(FormBasisElement { weight, wedge: wedge.clone() }).or_default() += &qc;
            }
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let dx: Vec<String> = w.iter().map(|i| format!("dx{i}")).collect();
                if w.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c}) {}", dx.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `∇_q f = Σ_i (γ_i(f) - f)/((q - 1) x_i) dx_i`, with each division certified.
pub fn nabla_q(f: &SparsePoly, d: usize) -> Result<Vec<SparsePoly>> {
    let qm1 = &SparsePoly::q() - &SparsePoly::one();
    (1..=d)
        .map(|i| {
            let num = &f.twist(i, Exp::from_integer(1)) - f;
            num.div_exact(&(&qm1 * &SparsePoly::x(i)))
        })
        .collect()
}

/// `d(Σ f_I dx_I) = Σ ∇_q(f_I) ∧ dx_I`.
pub fn d_form(omega: &Form, d: usize) -> Result<Form> {
    let mut out = Form::zero();
    for (wedge, f) in &omega.terms {
        let grad = nabla_q(f, d)?;
        for (i, g) in grad.iter().enumerate() {
            if let Some(sign) = wedge_sign(i + 1, wedge) {
                out.add_term(insert_sorted(wedge, i + 1), &g.scale(&sign.into()));
            }
        }
    }
    Ok(out)
}

/// `ω ↦ (q - 1)·dω`.
pub fn d_twisted(omega: &Form, d: usize) -> Result<Form> {
    Ok(d_form(omega, d)?.scale(&(&SparsePoly::q() - &SparsePoly::one())))
}
