use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::albert::{triple_power_norm, AlbertMatrix, ALBERT_DIM};
use super::clifford::clifford_generators;
use super::element::Element;
use super::traits::JordanStar;
use crate::error::{Error, Result};
use crate::linalg::{operator_norm, CMatrix};

/// Structural description of a model; two models are isomorphic-by-construction
/// iff their specs are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModelSpec {
    Matrix { n: usize },
    Spin { k: usize },
    Albert,
    DirectSum { summands: Vec<ModelSpec> },
}

impl ModelSpec {
    /// Complex dimension.
    pub fn dim(&self) -> usize {
        match self {
            ModelSpec::Matrix { n } => n * n,
            ModelSpec::Spin { k } => k + 1,
            ModelSpec::Albert => ALBERT_DIM,
            ModelSpec::DirectSum { summands } => summands.iter().map(ModelSpec::dim).sum(),
        }
    }

    pub fn contains_albert(&self) -> bool {
        match self {
            ModelSpec::Albert => true,
            ModelSpec::DirectSum { summands } => summands.iter().any(ModelSpec::contains_albert),
            _ => false,
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpec::Matrix { n } => write!(f, "matrix:{n}"),
            ModelSpec::Spin { k } => write!(f, "spin:{k}"),
            ModelSpec::Albert => write!(f, "albert"),
            ModelSpec::DirectSum { summands } => {
                for (i, s) in summands.iter().enumerate() {
                    if i > 0 {
                        write!(f, "⊕")?;
                    }
                    match s {
                        ModelSpec::DirectSum { .. } => write!(f, "({s})")?,
                        _ => write!(f, "{s}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl FromStr for ModelSpec {
    type Err = Error;

    /// Accepts `matrix:3`, `spin:2`, `albert`, `a⊕b` (or `a+b`),
    /// `direct-sum(a,b)` and parenthesized groups.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty model spec".into()));
        }
        let parts = split_top_level(s, |c| c == '⊕' || c == '+')?;
        if parts.len() > 1 {
            let summands = parts.iter().map(|p| p.parse()).collect::<Result<Vec<_>>>()?;
            return Ok(ModelSpec::DirectSum { summands });
        }
        if let Some(inner) = s.strip_prefix("direct-sum(").and_then(|r| r.strip_suffix(')')) {
            let summands = split_top_level(inner, |c| c == ',')?
                .iter()
                .map(|p| p.parse())
                .collect::<Result<Vec<_>>>()?;
            if summands.is_empty() {
                return Err(Error::Parse("empty direct sum".into()));
            }
            return Ok(ModelSpec::DirectSum { summands });
        }
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            return inner.parse();
        }
        if s.eq_ignore_ascii_case("albert") {
            return Ok(ModelSpec::Albert);
        }
        let (kind, size) = s.split_once(':').ok_or_else(|| Error::Parse(format!("unknown model '{s}'")))?;
        let size: usize = size.trim().parse().map_err(|_| Error::Parse(format!("bad size in '{s}'")))?;
        match kind.trim() {
            "matrix" => Ok(ModelSpec::Matrix { n: size }),
            "spin" => Ok(ModelSpec::Spin { k: size }),
            other => Err(Error::Parse(format!("unknown model kind '{other}'"))),
        }
    }
}

fn split_top_level(s: &str, is_sep: impl Fn(char) -> bool) -> Result<Vec<String>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in '{s}'")));
        }
        if depth == 0 && is_sep(ch) {
            parts.push(std::mem::take(&mut cur).trim().to_string());
        } else {
            cur.push(ch);
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in '{s}'")));
    }
    parts.push(cur.trim().to_string());
    if parts.iter().any(String::is_empty) {
        return Err(Error::Parse(format!("empty component in '{s}'")));
    }
    Ok(parts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormStrategy {
    EmbeddedOperatorNorm,
    TriplePowerIteration,
    /// ℓ∞ combination of the summand norms.
    SummandMax,
}

/// Structure constants: `rows[i]` lists `(j, k, c)` with `e_i∘e_j ∋ c·e_k`.
#[derive(Clone)]
struct Table {
    rows: Vec<Vec<(u32, u32, C64)>>,
}

impl Table {
    fn new(dim: usize) -> Self {
        Table { rows: vec![Vec::new(); dim] }
    }

    fn push(&mut self, i: usize, j: usize, k: usize, c: C64) {
        self.rows[i].push((j as u32, k as u32, c));
    }

    fn product(&self, a: &[C64], b: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); a.len()];
        for (i, &ai) in a.iter().enumerate() {
            if ai == C64::new(0.0, 0.0) {
                continue;
            }
            for &(j, k, c) in &self.rows[i] {
                out[k as usize] += c * ai * b[j as usize];
            }
        }
        out
    }

    fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }
}

/// A summand of a direct-sum model and its coordinate offset.
#[derive(Clone, Debug)]
pub struct Summand {
    pub offset: usize,
    pub model: AlgebraModel,
}

/// A concrete finite-dimensional JB*-algebra.
#[derive(Clone)]
pub struct AlgebraModel {
    spec: ModelSpec,
    dim: usize,
    table: Table,
    star_perm: Vec<usize>,
    unit: Element,
    norm_strategy: NormStrategy,
    embedding: Option<Vec<CMatrix>>,
    summands: Vec<Summand>,
    center: OnceLock<Vec<Element>>,
}

impl fmt::Debug for AlgebraModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraModel")
            .field("spec", &self.spec.to_string())
            .field("dim", &self.dim)
            .field("structure_constants", &self.table.nnz())
            .field("norm_strategy", &self.norm_strategy)
            .finish()
    }
}

impl AlgebraModel {
    /// `M_n(C)` with `a∘b = ½(ab + ba)`, coordinates `e_ij` in row-major order.
    pub fn matrix(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("matrix model needs n >= 1".into()));
        }
        let dim = n * n;
        let idx = |i: usize, j: usize| i * n + j;
        let mut table = Table::new(dim);
        let half = C64::new(0.5, 0.0);
        // e_ij ∘ e_kl = ½(δ_jk e_il + δ_li e_kj)
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        if j == k && l == i {
                            if idx(i, l) == idx(k, j) {
                                table.push(idx(i, j), idx(k, l), idx(i, l), C64::new(1.0, 0.0));
                            } else {
                                table.push(idx(i, j), idx(k, l), idx(i, l), half);
                                table.push(idx(i, j), idx(k, l), idx(k, j), half);
                            }
                        } else if j == k {
                            table.push(idx(i, j), idx(k, l), idx(i, l), half);
                        } else if l == i {
                            table.push(idx(i, j), idx(k, l), idx(k, j), half);
                        }
                    }
                }
            }
        }
        let star_perm = (0..dim).map(|t| idx(t % n, t / n)).collect();
        let mut unit = Element::zeros(dim);
        for i in 0..n {
            unit.coords_mut()[idx(i, i)] = C64::new(1.0, 0.0);
        }
        let embedding = (0..dim)
            .map(|t| {
                let mut m = CMatrix::zeros(n, n);
                m[(t / n, t % n)] = C64::new(1.0, 0.0);
                m
            })
            .collect();
        Ok(AlgebraModel {
            spec: ModelSpec::Matrix { n },
            dim,
            table,
            star_perm,
            unit,
            norm_strategy: NormStrategy::EmbeddedOperatorNorm,
            embedding: Some(embedding),
            summands: Vec::new(),
            center: OnceLock::new(),
        })
    }

    /// Spin factor spanned by `1` and `k` anticommuting symmetries.
    pub fn spin(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter("spin factor needs k >= 2".into()));
        }
        let dim = k + 1;
        let mut table = Table::new(dim);
        let one = C64::new(1.0, 0.0);
        for j in 0..dim {
            table.push(0, j, j, one);
            if j > 0 {
                table.push(j, 0, j, one);
                table.push(j, j, 0, one);
            }
        }
        let gens = clifford_generators(k);
        let size = gens[0].rows();
        let mut embedding = vec![CMatrix::identity(size)];
        embedding.extend(gens);
        Ok(AlgebraModel {
            spec: ModelSpec::Spin { k },
            dim,
            table,
            star_perm: (0..dim).collect(),
            unit: Element::basis(dim, 0),
            norm_strategy: NormStrategy::EmbeddedOperatorNorm,
            embedding: Some(embedding),
            summands: Vec::new(),
            center: OnceLock::new(),
        })
    }

    /// The 27-dimensional exceptional model.
    pub fn albert() -> Self {
        let dim = ALBERT_DIM;
        let basis: Vec<AlbertMatrix> = (0..dim)
            .map(|i| AlbertMatrix::from_coords(Element::basis(dim, i).coords()))
            .collect();
        let mut table = Table::new(dim);
        for i in 0..dim {
            for j in i..dim {
                let c = basis[i].jordan(&basis[j]).to_coords();
                for (k, &v) in c.iter().enumerate() {
                    if v.norm() > 1e-14 {
                        table.push(i, j, k, v);
                        if i != j {
                            table.push(j, i, k, v);
                        }
                    }
                }
            }
        }
        let mut unit = Element::zeros(dim);
        for i in 0..3 {
            unit.coords_mut()[i] = C64::new(1.0, 0.0);
        }
        AlgebraModel {
            spec: ModelSpec::Albert,
            dim,
            table,
            star_perm: (0..dim).collect(),
            unit,
            norm_strategy: NormStrategy::TriplePowerIteration,
            embedding: None,
            summands: Vec::new(),
            center: OnceLock::new(),
        }
    }

    /// ℓ∞ direct sum of models.
    pub fn direct_sum(models: Vec<AlgebraModel>) -> Result<Self> {
        if models.is_empty() {
            return Err(Error::InvalidParameter("direct sum needs at least one summand".into()));
        }
        let dim: usize = models.iter().map(|m| m.dim).sum();
        let mut table = Table::new(dim);
        let mut star_perm = Vec::with_capacity(dim);
        let mut unit = Vec::with_capacity(dim);
        let mut summands = Vec::with_capacity(models.len());
        let mut offset = 0;
        for m in &models {
            for (i, row) in m.table.rows.iter().enumerate() {
                for &(j, k, c) in row {
                    table.push(offset + i, offset + j as usize, offset + k as usize, c);
                }
            }
            star_perm.extend(m.star_perm.iter().map(|p| p + offset));
            unit.extend_from_slice(m.unit.coords());
            summands.push(Summand { offset, model: m.clone() });
            offset += m.dim;
        }
        let embedding = if models.iter().all(|m| m.embedding.is_some()) {
            let sizes: Vec<usize> = models.iter().map(|m| m.embedding.as_ref().unwrap()[0].rows()).collect();
            let mut basis = Vec::with_capacity(dim);
            for (s, m) in models.iter().enumerate() {
                for b in m.embedding.as_ref().unwrap() {
                    let blocks: Vec<CMatrix> = sizes
                        .iter()
                        .enumerate()
                        .map(|(t, &sz)| if t == s { b.clone() } else { CMatrix::zeros(sz, sz) })
                        .collect();
                    basis.push(CMatrix::block_diag(&blocks));
                }
            }
            Some(basis)
        } else {
            None
        };
        Ok(AlgebraModel {
            spec: ModelSpec::DirectSum { summands: models.iter().map(|m| m.spec.clone()).collect() },
            dim,
            table,
            star_perm,
            unit: Element::new(unit),
            norm_strategy: NormStrategy::SummandMax,
            embedding,
            summands,
            center: OnceLock::new(),
        })
    }

    pub fn from_spec(spec: &ModelSpec) -> Result<Self> {
        match spec {
            ModelSpec::Matrix { n } => Self::matrix(*n),
            ModelSpec::Spin { k } => Self::spin(*k),
            ModelSpec::Albert => Ok(Self::albert()),
            ModelSpec::DirectSum { summands } => {
                Self::direct_sum(summands.iter().map(Self::from_spec).collect::<Result<Vec<_>>>()?)
            }
        }
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn norm_strategy(&self) -> NormStrategy {
        self.norm_strategy
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    /// Number of stored structure constants.
    pub fn structure_constant_count(&self) -> usize {
        self.table.nnz()
    }

    pub fn has_embedding(&self) -> bool {
        self.embedding.is_some()
    }

    /// Associative-matrix image of `a` for JC*-models.
    pub fn embed(&self, a: &Element) -> Option<CMatrix> {
        let basis = self.embedding.as_ref()?;
        let n = basis[0].rows();
        let mut out = CMatrix::zeros(n, n);
        for (b, &c) in basis.iter().zip(a.coords()) {
            if c == C64::new(0.0, 0.0) {
                continue;
            }
            out = &out + &b.scale(c);
        }
        Some(out)
    }

    /// Inverse of [`embed`](Self::embed) on the span of the basis images.
    pub fn from_embedded(&self, x: &CMatrix) -> Result<Element> {
        let basis = self
            .embedding
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter(format!("{} has no matrix embedding", self.spec)))?;
        if x.rows() != basis[0].rows() || x.cols() != basis[0].cols() {
            return Err(Error::InvalidParameter("embedded matrix has the wrong size".into()));
        }
        let coords = basis
            .iter()
            .map(|b| {
                let num: C64 = b.data().iter().zip(x.data()).map(|(p, q)| p.conj() * q).sum();
                let den: f64 = b.data().iter().map(|p| p.norm_sqr()).sum();
                num / den
            })
            .collect();
        Ok(Element::new(coords))
    }

    /// Coordinates of summand `idx` of a direct-sum element.
    pub fn summand_part(&self, a: &Element, idx: usize) -> Element {
        let s = &self.summands[idx];
        Element::new(a.coords()[s.offset..s.offset + s.model.dim].to_vec())
    }

    /// Places a summand element into the full direct sum (zeros elsewhere).
    pub fn inject(&self, idx: usize, part: &Element) -> Element {
        let s = &self.summands[idx];
        let mut out = Element::zeros(self.dim);
        out.coords_mut()[s.offset..s.offset + s.model.dim].copy_from_slice(part.coords());
        out
    }

    /// Real orthonormal basis of the self-adjoint part for `Re⟨x, y⟩`.
    pub fn self_adjoint_basis(&self) -> Vec<Element> {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mut out = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let j = self.star_perm[i];
            if j == i {
                out.push(Element::basis(self.dim, i));
            } else if i < j {
                let mut a = Element::zeros(self.dim);
                a.coords_mut()[i] = C64::new(r, 0.0);
                a.coords_mut()[j] = C64::new(r, 0.0);
                let mut b = Element::zeros(self.dim);
                b.coords_mut()[i] = C64::new(0.0, r);
                b.coords_mut()[j] = C64::new(0.0, -r);
                out.push(a);
                out.push(b);
            }
        }
        out
    }

    /// Central projections, computed once and cached.
    pub fn central_projections(&self) -> &[Element] {
        self.center.get_or_init(|| crate::calculus::compute_central_projections(self))
    }

    /// Matrix of `x ↦ a∘x` in the model basis.
    pub fn mult_matrix(&self, a: &Element) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for (i, &ai) in a.coords().iter().enumerate() {
            if ai == C64::new(0.0, 0.0) {
                continue;
            }
            for &(j, k, c) in &self.table.rows[i] {
                m[(k as usize, j as usize)] += c * ai;
            }
        }
        m
    }
}

impl JordanStar for AlgebraModel {
    fn dim(&self) -> usize {
        self.dim
    }

    fn jordan(&self, a: &Element, b: &Element) -> Element {
        assert_eq!(a.dim(), self.dim, "jordan: model mismatch");
        assert_eq!(b.dim(), self.dim, "jordan: model mismatch");
        Element::new(self.table.product(a.coords(), b.coords()))
    }

    fn star(&self, a: &Element) -> Element {
        assert_eq!(a.dim(), self.dim, "star: model mismatch");
        let mut out = vec![C64::new(0.0, 0.0); self.dim];
        for (i, z) in a.coords().iter().enumerate() {
            out[self.star_perm[i]] = z.conj();
        }
        Element::new(out)
    }

    fn one(&self) -> Element {
        self.unit.clone()
    }

    fn norm(&self, a: &Element) -> f64 {
        assert_eq!(a.dim(), self.dim, "norm: model mismatch");
        match self.norm_strategy {
            NormStrategy::EmbeddedOperatorNorm => operator_norm(&self.embed(a).expect("embedded model")),
            NormStrategy::TriplePowerIteration => triple_power_norm(self, a).value,
            NormStrategy::SummandMax => (0..self.summands.len())
                .map(|i| self.summands[i].model.norm(&self.summand_part(a, i)))
                .fold(0.0, f64::max),
        }
    }
}

pub fn build_matrix_model(n: usize) -> Result<AlgebraModel> {
    AlgebraModel::matrix(n)
}

pub fn build_spin_model(k: usize) -> Result<AlgebraModel> {
    AlgebraModel::spin(k)
}

pub fn build_albert_model() -> AlgebraModel {
    AlgebraModel::albert()
}

pub fn build_direct_sum(models: Vec<AlgebraModel>) -> Result<AlgebraModel> {
    AlgebraModel::direct_sum(models)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn mat(m: &AlgebraModel, rows: &[&[f64]]) -> Element {
        m.from_embedded(&CMatrix::from_real_rows(rows).unwrap()).unwrap()
    }

    #[test]
    fn scalar_model() {
        let m = AlgebraModel::matrix(1).unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(m.one().coords(), &[c(1.0)]);
        let a = Element::new(vec![C64::new(2.0, 1.0)]);
        let b = Element::new(vec![C64::new(0.0, 3.0)]);
        assert_eq!(m.jordan(&a, &b).coords()[0], C64::new(2.0, 1.0) * C64::new(0.0, 3.0));
        assert!((m.norm(&a) - 5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn matrix_products_match_embedding() {
        let m = AlgebraModel::matrix(2).unwrap();
        let a = mat(&m, &[&[0.0, 1.0], &[1.0, 0.0]]);
        let b = mat(&m, &[&[1.0, 0.0], &[0.0, -1.0]]);
        assert!(m.jordan(&a, &b).coord_norm() < 1e-15);
        // {e11, e11, e12} = ½ e12
        let e11 = Element::basis(4, 0);
        let e12 = Element::basis(4, 1);
        let t = m.triple(&e11, &e11, &e12);
        assert!((&t - &e12.scale_re(0.5)).coord_norm() < 1e-15);
        // involution is the conjugate transpose
        let z = Element::new(vec![C64::new(1.0, 2.0), C64::new(3.0, 4.0), C64::new(5.0, 6.0), C64::new(7.0, 8.0)]);
        let zs = m.embed(&m.star(&z)).unwrap();
        assert_eq!(zs, m.embed(&z).unwrap().adjoint());
        assert!((m.norm(&mat(&m, &[&[2.0, 0.0], &[0.0, 1.0]])) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn spin_generators_anticommute() {
        let s = AlgebraModel::spin(3).unwrap();
        assert_eq!(s.dim(), 4);
        let s1 = Element::basis(4, 1);
        let s2 = Element::basis(4, 2);
        assert!(s.jordan(&s1, &s2).coord_norm() < 1e-15);
        assert_eq!(s.jordan(&s1, &s1), s.one());
        // spin:3 lives in 2x2 matrices and spans all of them
        assert_eq!(s.embed(&s.one()).unwrap().rows(), 2);
        assert!(AlgebraModel::spin(1).is_err());
    }

    #[test]
    fn albert_shape() {
        let a = AlgebraModel::albert();
        assert_eq!(a.dim(), 27);
        assert_eq!(a.norm_strategy(), NormStrategy::TriplePowerIteration);
        assert_eq!(a.jordan(&a.one(), &Element::basis(27, 10)), Element::basis(27, 10));
        assert!((a.norm(&a.one().scale_re(3.0)) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn direct_sum_layout() {
        let m = AlgebraModel::direct_sum(vec![AlgebraModel::matrix(2).unwrap(), AlgebraModel::spin(2).unwrap()]).unwrap();
        assert_eq!(m.dim(), 7);
        assert_eq!(m.summands()[1].offset, 4);
        let x = m.inject(1, &Element::basis(3, 1).scale_re(5.0));
        assert!((m.norm(&x) - 5.0).abs() < 1e-12);
        assert!(m.has_embedding());
    }

    #[test]
    fn spec_parsing() {
        let cases = [
            ("matrix:3", ModelSpec::Matrix { n: 3 }),
            ("spin:2", ModelSpec::Spin { k: 2 }),
            ("albert", ModelSpec::Albert),
            (
                "matrix:2⊕matrix:2",
                ModelSpec::DirectSum { summands: vec![ModelSpec::Matrix { n: 2 }, ModelSpec::Matrix { n: 2 }] },
            ),
            (
                "direct-sum(matrix:2, spin:3)",
                ModelSpec::DirectSum { summands: vec![ModelSpec::Matrix { n: 2 }, ModelSpec::Spin { k: 3 }] },
            ),
        ];
        for (text, spec) in cases {
            assert_eq!(text.parse::<ModelSpec>().unwrap(), spec, "{text}");
            assert_eq!(spec.to_string().parse::<ModelSpec>().unwrap(), spec);
        }
        let nested: ModelSpec = "matrix:1+(spin:2+albert)".parse().unwrap();
        assert_eq!(nested.to_string(), "matrix:1⊕(spin:2⊕albert)");
        for bad in ["", "matrix", "matrix:x", "cube:3", "matrix:2+", "(matrix:2"] {
            assert!(bad.parse::<ModelSpec>().is_err(), "{bad}");
        }
    }
}
