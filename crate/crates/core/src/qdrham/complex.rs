//! Cochain complexes of free modules with `ℤ[q]`-polynomial differentials, and
//! the weight-graded q-de Rham complex of `ℤ[q][x_1, .., x_d]`.

use std::fmt;

use serde::Serialize;

use super::forms::{wedge_sign, FormBasisElement};
use crate::error::{Error, Result};
use crate::ring_core::{q_int, Exp, SparsePoly, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<SparsePoly>>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![vec![SparsePoly::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i][i] = SparsePoly::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<SparsePoly>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        Ok(Self { rows: rows.len(), cols, entries: rows })
    }

    /// Parses `[[a, b], [c, d]]`-style rows of polynomial literals.
    pub fn from_literals(rows: &[&[&str]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| s.parse::<SparsePoly>()).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Vec<SparsePoly>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &SparsePoly {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: SparsePoly) {
        self.entries[i][j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(SparsePoly::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.entries[k][j];
                    if !b.is_zero() {
                        out.entries[i][j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("matrix difference of unequal shapes".into()));
        }
        Ok(self.map(|i, j, a| a - &other.entries[i][j]))
    }

    /// Applies `f(i, j, entry)` entrywise.
    pub fn map<F: Fn(usize, usize, &SparsePoly) -> SparsePoly>(&self, f: F) -> Self {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().enumerate().map(|(j, e)| f(i, j, e)).collect())
            .collect();
        Self { rows: self.rows, cols: self.cols, entries }
    }

    pub fn try_map<F: Fn(usize, usize, &SparsePoly) -> Result<SparsePoly>>(&self, f: F) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().enumerate().map(|(j, e)| f(i, j, e)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, c: &SparsePoly) -> Self {
        self.map(|_, _, e| e * c)
    }

    /// `[[a, 0], [0, b]]`.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let mut out = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        out.paste(0, 0, a);
        out.paste(a.rows, a.cols, b);
        out
    }

    /// Copies `m` into the block starting at `(r, c)`.
    pub fn paste(&mut self, r: usize, c: usize, m: &Self) {
        for (i, row) in m.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                self.entries[r + i][c + j] = e.clone();
            }
        }
    }

    /// Kronecker product, rows and columns ordered with `self` outermost.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    out.paste(i * other.rows, j * other.cols, &other.scale(a));
                }
            }
        }
        out
    }

    /// The submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows.iter().map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect()).collect();
        Self { rows: rows.len(), cols: cols.len(), entries }
    }

    /// Entrywise `q ↦ value`.
    pub fn eval_q(&self, value: i64) -> Result<Self> {
        self.try_map(|_, _, e| e.eval_var(Q, value))
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// `C^start → C^{start+1} → ..`, with `diffs[k]: C^{start+k} → C^{start+k+1}`
/// acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    start: i64,
    dims: Vec<usize>,
    diffs: Vec<PolyMatrix>,
    basis: Option<Vec<Vec<FormBasisElement>>>,
}

impl CochainComplex {
    /// Checks the shapes and that every `D ∘ D` vanishes.
    pub fn new(start: i64, dims: Vec<usize>, diffs: Vec<PolyMatrix>) -> Result<Self> {
        if dims.is_empty() || diffs.len() + 1 != dims.len() {
            return Err(Error::Shape(format!("{} terms need {} differentials", dims.len(), dims.len().max(1) - 1)));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows() != dims[k + 1] || d.cols() != dims[k] {
                return Err(Error::Shape(format!(
                    "differential out of degree {} is {}x{}, expected {}x{}",
                    start + k as i64,
                    d.rows(),
                    d.cols(),
                    dims[k + 1],
                    dims[k]
                )));
            }
        }
        for k in 0..diffs.len().saturating_sub(1) {
            if !diffs[k + 1].mul(&diffs[k])?.is_zero() {
                return Err(Error::Invalid(format!("D∘D ≠ 0 out of degree {}", start + k as i64)));
            }
        }
        Ok(Self { start, dims, diffs, basis: None })
    }

    pub fn with_basis(mut self, basis: Vec<Vec<FormBasisElement>>) -> Result<Self> {
        if basis.len() != self.dims.len() || basis.iter().zip(&self.dims).any(|(b, &n)| b.len() != n) {
            return Err(Error::Shape("basis labels do not match the ranks".into()));
        }
        self.basis = Some(basis);
        Ok(self)
    }

    /// Parses a complex given by its differentials as polynomial literals.
    pub fn from_literals(start: i64, diffs: &[&[&[&str]]]) -> Result<Self> {
        let mats: Vec<PolyMatrix> = diffs.iter().map(|m| PolyMatrix::from_literals(m)).collect::<Result<_>>()?;
        let mut dims: Vec<usize> = mats.iter().map(PolyMatrix::cols).collect();
        dims.push(mats.last().map_or(0, PolyMatrix::rows));
        Self::new(start, dims, mats)
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn end(&self) -> i64 {
        self.start + self.dims.len() as i64 - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Rank of `C^degree`, zero outside the range.
    pub fn dim(&self, degree: i64) -> usize {
        self.index(degree).map_or(0, |k| self.dims[k])
    }

    fn index(&self, degree: i64) -> Option<usize> {
        let k = degree - self.start;
        (k >= 0 && (k as usize) < self.dims.len()).then_some(k as usize)
    }

    pub fn diffs(&self) -> &[PolyMatrix] {
        &self.diffs
    }

    /// `D: C^degree → C^{degree+1}`, a zero matrix at the ends.
    pub fn diff(&self, degree: i64) -> PolyMatrix {
        match self.index(degree) {
            Some(k) if k < self.diffs.len() => self.diffs[k].clone(),
            _ => PolyMatrix::zeros(self.dim(degree + 1), self.dim(degree)),
        }
    }

    pub fn basis(&self) -> Option<&[Vec<FormBasisElement>]> {
        self.basis.as_deref()
    }

    pub fn basis_in(&self, degree: i64) -> Option<&[FormBasisElement]> {
        let k = self.index(degree)?;
        self.basis.as_ref().map(|b| b[k].as_slice())
    }

    /// Same ranks and labels, new differentials.
    pub fn with_diffs(&self, diffs: Vec<PolyMatrix>) -> Result<Self> {
        let out = Self::new(self.start, self.dims.clone(), diffs)?;
        Ok(Self { basis: self.basis.clone(), ..out })
    }

    /// Re-indexes the degrees to cover `start..=end`, padding with zero modules.
    pub fn widen(&self, start: i64, end: i64) -> Result<Self> {
        if start > self.start || end < self.end() {
            return Err(Error::Shape("widening cannot drop degrees".into()));
        }
        let dims: Vec<usize> = (start..=end).map(|k| self.dim(k)).collect();
        let diffs: Vec<PolyMatrix> = (start..end).map(|k| self.diff(k)).collect();
        let out = Self::new(start, dims, diffs)?;
        let basis = self.basis.as_ref().map(|_| {
            (start..=end).map(|k| self.basis_in(k).map(<[_]>::to_vec).unwrap_or_default()).collect()
        });
        Ok(Self { basis, ..out })
    }

    /// The same complex with each basis listed in the order of `order`.
    pub fn reordered(&self, order: &[Vec<FormBasisElement>]) -> Result<Self> {
        let basis = self.basis.as_ref().ok_or_else(|| Error::Invalid("complex has no basis labels".into()))?;
        if order.len() != basis.len() {
            return Err(Error::Shape("reordering covers a different number of degrees".into()));
        }
        let perms: Vec<Vec<usize>> = order
            .iter()
            .zip(basis)
            .map(|(want, have)| {
                if want.len() != have.len() {
                    return Err(Error::Shape("reordering changes a rank".into()));
                }
                want.iter()
                    .map(|e| have.iter().position(|h| h == e).ok_or_else(|| Error::Shape(format!("no basis element {e}"))))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let diffs = self.diffs.iter().enumerate().map(|(k, d)| d.select(&perms[k + 1], &perms[k])).collect();
        Self::new(self.start, self.dims.clone(), diffs)?.with_basis(order.to_vec())
    }

    /// The subcomplex on basis elements of the given weight. Requires labels
    /// and a complex that is graded by weight.
    pub fn weight_summand(&self, weight: &[Exp]) -> Result<Self> {
        let basis = self.basis.as_ref().ok_or_else(|| Error::Invalid("complex has no basis labels".into()))?;
        let picks: Vec<Vec<usize>> = basis
            .iter()
            .map(|b| b.iter().enumerate().filter(|(_, e)| e.weight == weight).map(|(i, _)| i).collect())
            .collect();
        let diffs = self.diffs.iter().enumerate().map(|(k, d)| d.select(&picks[k + 1], &picks[k])).collect();
        let dims = picks.iter().map(Vec::len).collect();
        let labels = picks.iter().zip(basis).map(|(p, b)| p.iter().map(|&i| b[i].clone()).collect()).collect();
        Self::new(self.start, dims, diffs)?.with_basis(labels)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ComplexKind {
    /// `d(x^β dlog x_I) = Σ_{i ∉ I} [β_i]_q x^β dlog x_i ∧ dlog x_I`.
    QOmega,
    /// The same differential multiplied by `q - 1`.
    Twisted,
}

impl std::str::FromStr for ComplexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qOmega" | "q-omega" | "qomega" => Ok(Self::QOmega),
            "twisted" | "Twisted" => Ok(Self::Twisted),
            _ => Err(Error::Invalid(format!("unknown complex kind {s:?}"))),
        }
    }
}

fn subsets(support: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (pos, &i) in support.iter().enumerate() {
        for mut rest in subsets(&support[pos + 1..], k - 1) {
            rest.insert(0, i);
            out.push(rest);
        }
    }
    out
}

fn integral_weight(weight: &[Exp]) -> Result<Vec<i64>> {
    weight
        .iter()
        .map(|w| {
            if w.is_integer() && *w >= Exp::from_integer(0) {
                Ok(w.to_integer())
            } else {
                Err(Error::Invalid(format!("weight entry {w} is not a non-negative integer")))
            }
        })
        .collect()
}

/// The weight-`β` summand: a Koszul complex on `([β_i]_q)_{β_i ≥ 1}`, with
/// basis `x^β dlog x_I` in each degree ordered lexicographically in `I`.
pub fn weight_piece(kind: ComplexKind, weight: &[Exp]) -> Result<CochainComplex> {
    let beta = integral_weight(weight)?;
    let support: Vec<usize> = (1..=beta.len()).filter(|&i| beta[i - 1] >= 1).collect();
    let scale = match kind {
        ComplexKind::QOmega => SparsePoly::one(),
        ComplexKind::Twisted => &SparsePoly::q() - &SparsePoly::one(),
    };
    let wedges: Vec<Vec<Vec<usize>>> = (0..=support.len()).map(|k| subsets(&support, k)).collect();
    let mut diffs = Vec::new();
    for k in 0..support.len() {
        let mut m = PolyMatrix::zeros(wedges[k + 1].len(), wedges[k].len());
        for (c, set) in wedges[k].iter().enumerate() {
            for &i in &support {
                if let Some(sign) = wedge_sign(i, set) {
                    let mut target = set.clone();
                    target.insert(target.partition_point(|&j| j < i), i);
                    let r = wedges[k + 1].iter().position(|t| *t == target).expect("subset present");
                    let entry = &q_int(beta[i - 1], 1)? * &scale;
                    m.set(r, c, entry.scale(&sign.into()));
                }
            }
        }
        diffs.push(m);
    }
    let dims = wedges.iter().map(Vec::len).collect();
    let basis = wedges
        .iter()
        .map(|ws| ws.iter().map(|w| FormBasisElement { weight: weight.to_vec(), wedge: w.clone() }).collect())
        .collect();
    CochainComplex::new(0, dims, diffs)?.with_basis(basis)
}

/// All `β ∈ ℕ^d` with `|β| ≤ max_weight`, by total weight then lexicographically.
pub fn weights(d: usize, max_weight: u32) -> Vec<Vec<Exp>> {
    fn rec(d: usize, left: u32, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == d {
            out.push(prefix.clone());
            return;
        }
        for v in 0..=left {
            prefix.push(v as i64);
            rec(d, left - v, prefix, out);
            prefix.pop();
        }
    }
    let mut all = Vec::new();
    rec(d, max_weight, &mut Vec::new(), &mut all);
    all.sort_by_key(|b| (b.iter().sum::<i64>(), b.clone()));
    all.into_iter().map(|b| b.into_iter().map(Exp::from_integer).collect()).collect()
}

/// The q-de Rham complex of `ℤ[q][x_1, .., x_d]` truncated to total weight
/// `≤ max_weight`, assembled block-diagonally from [`weight_piece`]s.
pub fn build_complex(kind: ComplexKind, d: usize, max_weight: u32) -> Result<CochainComplex> {
    build_complex_on(kind, d, &weights(d, max_weight))
}

/// The direct sum of the weight summands for the listed weights, in order.
pub fn build_complex_on(kind: ComplexKind, d: usize, weights: &[Vec<Exp>]) -> Result<CochainComplex> {
    let pieces: Vec<CochainComplex> = weights
        .iter()
        .map(|w| weight_piece(kind, w)?.widen(0, d as i64))
        .collect::<Result<_>>()?;
    let dims: Vec<usize> = (0..=d).map(|k| pieces.iter().map(|p| p.dims[k]).sum()).collect();
    let mut diffs: Vec<PolyMatrix> = (0..d).map(|k| PolyMatrix::zeros(dims[k + 1], dims[k])).collect();
    let mut basis: Vec<Vec<FormBasisElement>> = vec![Vec::new(); d + 1];
    let mut offsets = vec![0usize; d + 1];
    for piece in &pieces {
        for k in 0..d {
            diffs[k].paste(offsets[k + 1], offsets[k], &piece.diffs[k]);
        }
        for k in 0..=d {
            basis[k].extend(piece.basis_in(k as i64).unwrap_or_default().iter().cloned());
            offsets[k] += piece.dims[k];
        }
    }
    CochainComplex::new(0, dims, diffs)?.with_basis(basis)
}

/// `(C ⊗ C')^n = ⊕_{i+j=n} C^i ⊗ C'^j` with `d(a ⊗ b) = da ⊗ b + (-1)^i a ⊗ db`.
/// When both factors carry form labels, weights are concatenated and the
/// wedge indices of the second factor are shifted past the first.
pub fn tensor(a: &CochainComplex, b: &CochainComplex) -> Result<CochainComplex> {
    let start = a.start + b.start;
    let end = a.end() + b.end();
    // block layout of each total degree: pairs (i, j) with i ascending
    let blocks = |n: i64| -> Vec<(i64, i64)> {
        (a.start..=a.end()).filter_map(|i| {
            let j = n - i;
            (j >= b.start && j <= b.end()).then_some((i, j))
        }).collect()
    };
    let offset = |n: i64, pair: (i64, i64)| -> usize {
        blocks(n).iter().take_while(|&&p| p != pair).map(|&(i, j)| a.dim(i) * b.dim(j)).sum()
    };
    let dims: Vec<usize> = (start..=end).map(|n| blocks(n).iter().map(|&(i, j)| a.dim(i) * b.dim(j)).sum()).collect();
    let mut diffs = Vec::new();
    for n in start..end {
        let mut m = PolyMatrix::zeros(dims[(n + 1 - start) as usize], dims[(n - start) as usize]);
        for (i, j) in blocks(n) {
            let col = offset(n, (i, j));
            if i < a.end() {
                let da = a.diff(i).kron(&PolyMatrix::identity(b.dim(j)));
                m.paste(offset(n + 1, (i + 1, j)), col, &da);
            }
            if j < b.end() {
                let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
                let db = PolyMatrix::identity(a.dim(i)).kron(&b.diff(j)).scale(&SparsePoly::constant(sign));
                m.paste(offset(n + 1, (i, j + 1)), col, &db);
            }
        }
        diffs.push(m);
    }
    let out = CochainComplex::new(start, dims, diffs)?;
    match (&a.basis, &b.basis) {
        (Some(_), Some(_)) => {
            let shift = a.basis.iter().flatten().flatten().next().map_or(0, |e| e.weight.len());
            let labels = (start..=end)
                .map(|n| {
                    let mut v = Vec::new();
                    for (i, j) in blocks(n) {
                        for ea in a.basis_in(i).unwrap_or_default() {
                            for eb in b.basis_in(j).unwrap_or_default() {
                                let mut weight = ea.weight.clone();
                                weight.extend(eb.weight.iter().cloned());
                                let mut wedge = ea.wedge.clone();
                                wedge.extend(eb.wedge.iter().map(|k| k + shift));
                                v.push(FormBasisElement { weight, wedge });
                            }
                        }
                    }
                    v
                })
                .collect();
            out.with_basis(labels)
        }
        _ => Ok(out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Vec<Exp> {
        v.iter().map(|&x| Exp::from_integer(x)).collect()
    }

    #[test]
    fn one_variable_pieces() {
        let c = weight_piece(ComplexKind::QOmega, &w(&[3])).unwrap();
        assert_eq!(c.dims(), &[1, 1]);
        assert_eq!(c.diffs()[0].get(0, 0).to_string(), "1 + q + q^2");
        let c = weight_piece(ComplexKind::QOmega, &w(&[0])).unwrap();
        assert_eq!(c.dims(), &[1]);
        let t = weight_piece(ComplexKind::Twisted, &w(&[2])).unwrap();
        assert_eq!(t.diffs()[0].get(0, 0).to_string(), "-1 + q^2");
    }

    #[test]
    fn koszul_squares_to_zero() {
        let c = weight_piece(ComplexKind::QOmega, &w(&[2, 1, 3])).unwrap();
        assert_eq!(c.dims(), &[1, 3, 3, 1]);
    }

    #[test]
    fn bounded_complex_shape() {
        let c = build_complex(ComplexKind::QOmega, 2, 2).unwrap();
        // weights: 00 01 10 02 11 20
        assert_eq!(c.dims(), &[6, 6, 1]);
        let s = c.weight_summand(&w(&[1, 1])).unwrap();
        assert_eq!(s, weight_piece(ComplexKind::QOmega, &w(&[1, 1])).unwrap());
    }

    #[test]
    fn tensor_of_pieces_is_koszul() {
        let a = weight_piece(ComplexKind::QOmega, &w(&[2])).unwrap();
        let b = weight_piece(ComplexKind::QOmega, &w(&[3])).unwrap();
        let t = tensor(&a, &b).unwrap();
        let k = weight_piece(ComplexKind::QOmega, &w(&[2, 3])).unwrap();
        assert_eq!(t.reordered(k.basis().unwrap()).unwrap(), k);
    }

    #[test]
    fn non_complex_rejected() {
        let err = CochainComplex::from_literals(0, &[&[&["1"]], &[&["1"]]]);
        assert!(err.is_err());
    }
}
