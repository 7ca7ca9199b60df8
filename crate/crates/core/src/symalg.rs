//! The symmetric algebra `SV` truncated at a total degree `N`, its canonical
//! inner product, creators/annihilators, the antidual side with its
//! convolution product, the number operator, and coherent vectors.
//!
//! Elements of `SV` are stored on the monomial basis `e^α` (multi-indices
//! over `d` variables, graded-lexicographic order); on that basis the
//! canonical inner product is diagonal, `⟨e^α|e^β⟩ = δ_{αβ} α!`.
//!
//! Antilinear functionals `Φ ∈ SV′` are stored as evaluation tables
//! `Φ(e^α)`; evaluation on a polynomial conjugates the coefficients,
//! `Φ(ψ) = Σ_α conj(ψ[α]) Φ(e^α)`.

use std::collections::{BTreeMap, HashMap};
use std::cmp::Ordering;

use itertools::Itertools;

use crate::error::{FockError, FockResult};
use crate::hilbert::{inner, HVector};
use crate::{C64, MAX_TRUNC};

/// Exponent vector `α` of a monomial `e^α`; total degree `|α| = Σ α_j`.
///
/// Ordered by degree first, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn zero(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    /// `δ_j`: exponent 1 at position `j` (0-indexed), else 0.
    pub fn unit(nvars: usize, j: usize) -> Self {
        let mut e = vec![0; nvars];
        e[j] = 1;
        Self(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// `α + δ_j`.
    pub fn bumped(&self, j: usize) -> Self {
        let mut e = self.0.clone();
        e[j] += 1;
        Self(e)
    }

    /// `α − δ_j`, or `None` when `α_j = 0`.
    pub fn lowered(&self, j: usize) -> Option<Self> {
        if self.0[j] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[j] -= 1;
        Some(Self(e))
    }

    /// `α! = Π α_j!`.
    pub fn factorial(&self) -> f64 {
        self.0.iter().map(|&a| factorial(a)).product()
    }

    /// `binom(α, β) = Π binom(α_j, β_j)`; zero unless `β ≤ α` componentwise.
    pub fn binomial(&self, beta: &Self) -> f64 {
        self.0
            .iter()
            .zip(beta.0.iter())
            .map(|(&a, &b)| binomial(a, b))
            .product()
    }

    /// Concatenate exponent vectors; used to form doubled indices.
    pub fn join(&self, other: &Self) -> Self {
        let mut e = self.0.clone();
        e.extend_from_slice(&other.0);
        Self(e)
    }

    /// Split a `2d`-variable index into its first and last `d` variables.
    pub fn split(&self, d: usize) -> (Self, Self) {
        (
            Self(self.0[..d].to_vec()),
            Self(self.0[d..].to_vec()),
        )
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `n!` as f64, exact through the u128 range (n ≤ 34), floating beyond.
pub fn factorial(n: u32) -> f64 {
    if n <= 34 {
        let mut acc: u128 = 1;
        for k in 2..=n as u128 {
            acc *= k;
        }
        acc as f64
    } else {
        (2..=n as u64).map(|k| k as f64).product()
    }
}

/// `binom(n, k)` as f64; exact integer arithmetic for n within u128 range.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    if n <= 64 {
        let mut acc: u128 = 1;
        for i in 1..=k as u128 {
            acc = acc * (n as u128 - k as u128 + i) / i;
        }
        acc as f64
    } else {
        let mut acc = 1.0f64;
        for i in 1..=k {
            acc = acc * (n - k + i) as f64 / i as f64;
        }
        acc
    }
}

/// All multi-indices over `nvars` variables of exact degree `deg`, in
/// lexicographic order.
pub fn indices_of_degree(nvars: usize, deg: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<MultiIndex>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(MultiIndex::new(cur.clone()));
            return;
        }
        for a in 0..=left {
            cur[pos] = a;
            rec(cur, pos + 1, left - a, out);
        }
    }
    rec(&mut cur, 0, deg, &mut out);
    out
}

/// All multi-indices of degree ≤ `trunc`, graded-lexicographic.
pub fn indices_up_to(nvars: usize, trunc: u32) -> Vec<MultiIndex> {
    (0..=trunc)
        .flat_map(|n| indices_of_degree(nvars, n))
        .collect()
}

/// The graded-lexicographic monomial basis of the truncated algebra, with
/// position lookup; used wherever operators are flattened to matrices.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    nvars: usize,
    trunc: u32,
    indices: Vec<MultiIndex>,
    pos: HashMap<MultiIndex, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, trunc: u32) -> Self {
        let indices = indices_up_to(nvars, trunc);
        let pos = indices
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        Self {
            nvars,
            trunc,
            indices,
            pos,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn index(&self, i: usize) -> &MultiIndex {
        &self.indices[i]
    }

    pub fn position(&self, idx: &MultiIndex) -> Option<usize> {
        self.pos.get(idx).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &MultiIndex> {
        self.indices.iter()
    }
}

fn check_trunc(trunc: u32) -> FockResult<()> {
    if trunc > MAX_TRUNC {
        return Err(FockError::TruncationOutOfRange {
            got: trunc,
            max: MAX_TRUNC,
        });
    }
    Ok(())
}

fn check_compat(nv_a: usize, nv_b: usize, tr_a: u32, tr_b: u32) -> FockResult<()> {
    if nv_a != nv_b {
        return Err(FockError::DimensionMismatch {
            expected: nv_a,
            got: nv_b,
        });
    }
    if tr_a != tr_b {
        return Err(FockError::TruncationMismatch {
            expected: tr_a,
            got: tr_b,
        });
    }
    Ok(())
}

/// An element of the truncated symmetric algebra: `Σ_α c_α e^α` with
/// `|α| ≤ trunc`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyVector {
    nvars: usize,
    trunc: u32,
    coeffs: BTreeMap<MultiIndex, C64>,
}

impl PolyVector {
    pub fn new(nvars: usize, trunc: u32) -> FockResult<Self> {
        if nvars == 0 {
            return Err(FockError::ZeroDimension);
        }
        check_trunc(trunc)?;
        Ok(Self {
            nvars,
            trunc,
            coeffs: BTreeMap::new(),
        })
    }

    /// The algebra unit `1 ∈ S⁰V`.
    pub fn one(nvars: usize, trunc: u32) -> FockResult<Self> {
        let mut p = Self::new(nvars, trunc)?;
        p.set_coeff(MultiIndex::zero(nvars), C64::new(1.0, 0.0))?;
        Ok(p)
    }

    pub fn monomial(idx: MultiIndex, coeff: C64, trunc: u32) -> FockResult<Self> {
        let mut p = Self::new(idx.nvars(), trunc)?;
        p.set_coeff(idx, coeff)?;
        Ok(p)
    }

    /// The degree-1 element `Σ_j v_j e_j`.
    pub fn from_hvector(v: &HVector, trunc: u32) -> FockResult<Self> {
        let mut p = Self::new(v.dim(), trunc)?;
        for j in 0..v.dim() {
            p.set_coeff(MultiIndex::unit(v.dim(), j), v.get(j))?;
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn coeff(&self, idx: &MultiIndex) -> C64 {
        self.coeffs.get(idx).copied().unwrap_or_default()
    }

    pub fn set_coeff(&mut self, idx: MultiIndex, c: C64) -> FockResult<()> {
        if idx.nvars() != self.nvars {
            return Err(FockError::DimensionMismatch {
                expected: self.nvars,
                got: idx.nvars(),
            });
        }
        if idx.degree() > self.trunc {
            return Err(FockError::TruncationOverflow { trunc: self.trunc });
        }
        if c == C64::default() {
            self.coeffs.remove(&idx);
        } else {
            self.coeffs.insert(idx, c);
        }
        Ok(())
    }

    pub fn add_to_coeff(&mut self, idx: MultiIndex, c: C64) -> FockResult<()> {
        let cur = self.coeff(&idx);
        self.set_coeff(idx, cur + c)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &C64)> {
        self.coeffs.iter()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    /// Highest total degree with a nonzero coefficient (0 for the zero
    /// element).
    pub fn degree(&self) -> u32 {
        self.coeffs
            .keys()
            .map(|a| a.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: C64) -> Self {
        let coeffs = self.coeffs.iter().map(|(a, v)| (a.clone(), v * c)).collect();
        Self {
            coeffs,
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> FockResult<Self> {
        check_compat(self.nvars, other.nvars, self.trunc, other.trunc)?;
        let mut out = self.clone();
        for (a, v) in other.iter() {
            out.add_to_coeff(a.clone(), *v)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> FockResult<Self> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, v) in self.iter() {
            worst = worst.max((v - other.coeff(a)).norm());
        }
        for (a, v) in other.iter() {
            worst = worst.max((v - self.coeff(a)).norm());
        }
        worst
    }

    /// `Σ_α |c_α|² α!`.
    pub fn canonical_norm_sq(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|(a, c)| c.norm_sqr() * a.factorial())
            .sum()
    }

    /// Product in the symmetric algebra; errors if any nonzero term lands
    /// past the truncation degree.
    pub fn mul(&self, other: &Self) -> FockResult<Self> {
        self.mul_impl(other, false)
    }

    /// Product that silently drops terms past the truncation degree.
    pub fn mul_dropping(&self, other: &Self) -> Self {
        self.mul_impl(other, true).expect("dropping product cannot overflow")
    }

    fn mul_impl(&self, other: &Self, dropping: bool) -> FockResult<Self> {
        check_compat(self.nvars, other.nvars, self.trunc, other.trunc)?;
        let mut out = Self::new(self.nvars, self.trunc)?;
        for (a, ca) in self.iter() {
            for (b, cb) in other.iter() {
                if a.degree() + b.degree() > self.trunc {
                    if dropping {
                        continue;
                    }
                    return Err(FockError::TruncationOverflow { trunc: self.trunc });
                }
                out.add_to_coeff(a.join_add(b), ca * cb)?;
            }
        }
        Ok(out)
    }

    /// Copy with a different truncation degree; errors if support would be
    /// cut.
    pub fn with_trunc(&self, trunc: u32) -> FockResult<Self> {
        check_trunc(trunc)?;
        if self.degree() > trunc {
            return Err(FockError::TruncationOverflow { trunc });
        }
        Ok(Self {
            nvars: self.nvars,
            trunc,
            coeffs: self.coeffs.clone(),
        })
    }
}

impl MultiIndex {
    /// Componentwise sum `α + β` (exponent addition = monomial product).
    pub fn join_add(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

/// An antilinear functional on the truncated algebra, stored as the
/// evaluation table `α ↦ Φ(e^α)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualTable {
    nvars: usize,
    trunc: u32,
    values: BTreeMap<MultiIndex, C64>,
}

impl DualTable {
    pub fn new(nvars: usize, trunc: u32) -> FockResult<Self> {
        if nvars == 0 {
            return Err(FockError::ZeroDimension);
        }
        check_trunc(trunc)?;
        Ok(Self {
            nvars,
            trunc,
            values: BTreeMap::new(),
        })
    }

    /// The functional `⟨·|1⟩`: value 1 at the zero index. Unit of the
    /// convolution product.
    pub fn unit(nvars: usize, trunc: u32) -> FockResult<Self> {
        let mut t = Self::new(nvars, trunc)?;
        t.set_value(MultiIndex::zero(nvars), C64::new(1.0, 0.0))?;
        Ok(t)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn value(&self, idx: &MultiIndex) -> C64 {
        self.values.get(idx).copied().unwrap_or_default()
    }

    pub fn set_value(&mut self, idx: MultiIndex, v: C64) -> FockResult<()> {
        if idx.nvars() != self.nvars {
            return Err(FockError::DimensionMismatch {
                expected: self.nvars,
                got: idx.nvars(),
            });
        }
        if idx.degree() > self.trunc {
            return Err(FockError::TruncationOverflow { trunc: self.trunc });
        }
        if v == C64::default() {
            self.values.remove(&idx);
        } else {
            self.values.insert(idx, v);
        }
        Ok(())
    }

    pub fn add_to_value(&mut self, idx: MultiIndex, v: C64) -> FockResult<()> {
        let cur = self.value(&idx);
        self.set_value(idx, cur + v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &C64)> {
        self.values.iter()
    }

    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    pub fn degree(&self) -> u32 {
        self.values.keys().map(|a| a.degree()).max().unwrap_or(0)
    }

    /// `Φ(ψ) = Σ_α conj(ψ[α]) Φ(e^α)` — antilinear in `ψ`.
    pub fn evaluate(&self, psi: &PolyVector) -> FockResult<C64> {
        if psi.nvars() != self.nvars {
            return Err(FockError::DimensionMismatch {
                expected: self.nvars,
                got: psi.nvars(),
            });
        }
        if psi.degree() > self.trunc {
            return Err(FockError::TruncationMismatch {
                expected: self.trunc,
                got: psi.degree(),
            });
        }
        Ok(psi
            .iter()
            .map(|(a, c)| c.conj() * self.value(a))
            .sum())
    }

    pub fn scale(&self, c: C64) -> Self {
        let values = self.values.iter().map(|(a, v)| (a.clone(), v * c)).collect();
        Self {
            values,
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> FockResult<Self> {
        check_compat(self.nvars, other.nvars, self.trunc, other.trunc)?;
        let mut out = self.clone();
        for (a, v) in other.iter() {
            out.add_to_value(a.clone(), *v)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> FockResult<Self> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    /// Max-entry difference over degrees ≤ `up_to` (entries outside either
    /// support count as zero).
    pub fn max_abs_diff_up_to(&self, other: &Self, up_to: u32) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, v) in self.iter() {
            if a.degree() <= up_to {
                worst = worst.max((v - other.value(a)).norm());
            }
        }
        for (a, v) in other.iter() {
            if a.degree() <= up_to {
                worst = worst.max((v - self.value(a)).norm());
            }
        }
        worst
    }

    /// Max-entry difference over the common truncation range.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.max_abs_diff_up_to(other, self.trunc.min(other.trunc))
    }

    /// Max-entry difference measured against normalized monomials
    /// (entry deviations divided by `√α!`); the scale on which functional
    /// identities are meaningful uniformly in the degree.
    pub fn max_normalized_diff_up_to(&self, other: &Self, up_to: u32) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, v) in self.iter() {
            if a.degree() <= up_to {
                worst = worst.max((v - other.value(a)).norm() / a.factorial().sqrt());
            }
        }
        for (a, v) in other.iter() {
            if a.degree() <= up_to {
                worst = worst.max((v - self.value(a)).norm() / a.factorial().sqrt());
            }
        }
        worst
    }

    /// The Fock pairing of two tables, `Σ_α conj(A[α]) B[α] / α!`; for
    /// embedded polynomials this reproduces the canonical inner product.
    pub fn pairing(&self, other: &Self) -> FockResult<C64> {
        if self.nvars != other.nvars {
            return Err(FockError::DimensionMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        let up_to = self.trunc.min(other.trunc);
        Ok(self
            .iter()
            .filter(|(a, _)| a.degree() <= up_to)
            .map(|(a, v)| v.conj() * other.value(a) / a.factorial())
            .sum())
    }

    /// `Σ_α |Φ(e^α)|² / α!` over the stored support.
    pub fn norm_sq(&self) -> f64 {
        self.values
            .iter()
            .map(|(a, v)| v.norm_sqr() / a.factorial())
            .sum()
    }

    pub fn with_trunc(&self, trunc: u32) -> FockResult<Self> {
        check_trunc(trunc)?;
        if self.degree() > trunc {
            return Err(FockError::TruncationOverflow { trunc });
        }
        Ok(Self {
            nvars: self.nvars,
            trunc,
            values: self.values.clone(),
        })
    }
}

/// Canonical inner product `⟨ψ|φ⟩ = Σ_α conj(ψ[α]) φ[α] α!` — the
/// permanent-type pairing specialized to an orthonormal basis.
pub fn canonical_inner(psi: &PolyVector, phi: &PolyVector) -> FockResult<C64> {
    check_compat(psi.nvars(), phi.nvars(), psi.trunc(), phi.trunc())?;
    Ok(psi
        .iter()
        .map(|(a, c)| c.conj() * phi.coeff(a) * a.factorial())
        .sum())
}

/// Permutation-sum evaluation of `⟨x_1⋯x_n | y_1⋯y_n⟩ = Σ_p Π ⟨x_j|y_{p(j)}⟩`.
///
/// Independent of the multi-index machinery; cost is n!, intended for n ≤ 8.
pub fn inner_permanent_oracle(xs: &[HVector], ys: &[HVector]) -> FockResult<C64> {
    if xs.len() != ys.len() {
        return Err(FockError::DimensionMismatch {
            expected: xs.len(),
            got: ys.len(),
        });
    }
    let n = xs.len();
    if n == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    let mut gram = vec![vec![C64::default(); n]; n];
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            gram[i][j] = inner(x, y)?;
        }
    }
    let mut total = C64::default();
    for perm in (0..n).permutations(n) {
        let mut prod = C64::new(1.0, 0.0);
        for (j, &pj) in perm.iter().enumerate() {
            prod *= gram[j][pj];
        }
        total += prod;
    }
    Ok(total)
}

/// The product `x_1 ⋯ x_n` expanded on the monomial basis.
pub fn product_of_vectors(vs: &[HVector], nvars: usize, trunc: u32) -> FockResult<PolyVector> {
    let mut p = PolyVector::one(nvars, trunc)?;
    for v in vs {
        p = creator(v, &p)?;
    }
    Ok(p)
}

/// Creation operator `c(v)ψ = (Σ_j v_j e_j)·ψ`; errors if a nonzero term
/// would exceed the truncation degree.
pub fn creator(v: &HVector, psi: &PolyVector) -> FockResult<PolyVector> {
    creator_impl(v, psi, false)
}

/// Creation operator that silently drops overflowing terms; this is the
/// compression of `c(v)` to the truncated algebra.
pub fn creator_dropping(v: &HVector, psi: &PolyVector) -> PolyVector {
    creator_impl(v, psi, true).expect("dropping creator cannot overflow")
}

fn creator_impl(v: &HVector, psi: &PolyVector, dropping: bool) -> FockResult<PolyVector> {
    if v.dim() != psi.nvars() {
        return Err(FockError::DimensionMismatch {
            expected: psi.nvars(),
            got: v.dim(),
        });
    }
    let mut out = PolyVector::new(psi.nvars(), psi.trunc())?;
    for (a, c) in psi.iter() {
        for j in 0..v.dim() {
            let vj = v.get(j);
            if vj == C64::default() {
                continue;
            }
            if a.degree() + 1 > psi.trunc() {
                if dropping {
                    continue;
                }
                return Err(FockError::TruncationOverflow { trunc: psi.trunc() });
            }
            out.add_to_coeff(a.bumped(j), vj * c)?;
        }
    }
    Ok(out)
}

/// Annihilation operator: `a(v) e^α = Σ_j conj(v_j) α_j e^{α−δ_j}`;
/// antilinear in `v`.
pub fn annihilator(v: &HVector, psi: &PolyVector) -> FockResult<PolyVector> {
    if v.dim() != psi.nvars() {
        return Err(FockError::DimensionMismatch {
            expected: psi.nvars(),
            got: v.dim(),
        });
    }
    let mut out = PolyVector::new(psi.nvars(), psi.trunc())?;
    for (a, c) in psi.iter() {
        for j in 0..v.dim() {
            if let Some(lower) = a.lowered(j) {
                let w = v.get(j).conj() * (a.get(j) as f64) * c;
                out.add_to_coeff(lower, w)?;
            }
        }
    }
    Ok(out)
}

/// Dual creator `[c(v)Φ](ψ) = Φ[a(v)ψ]`; on tables
/// `[c(v)Φ][α] = Σ_j v_j α_j Φ[α−δ_j]`. The result is valid one degree
/// higher than the input.
pub fn dual_creator(v: &HVector, table: &DualTable) -> FockResult<DualTable> {
    if v.dim() != table.nvars() {
        return Err(FockError::DimensionMismatch {
            expected: table.nvars(),
            got: v.dim(),
        });
    }
    let mut out = DualTable::new(table.nvars(), table.trunc() + 1)?;
    for (a, val) in table.iter() {
        for j in 0..v.dim() {
            let vj = v.get(j);
            if vj == C64::default() {
                continue;
            }
            let up = a.bumped(j);
            // coefficient α_j of the *target* index
            out.add_to_value(up.clone(), vj * (up.get(j) as f64) * val)?;
        }
    }
    Ok(out)
}

/// Dual annihilator `[a(v)Φ](ψ) = Φ[c(v)ψ]`; on tables
/// `[a(v)Φ][α] = Σ_j conj(v_j) Φ[α+δ_j]`. Top-degree information is lost,
/// so the result is truncated one degree lower.
pub fn dual_annihilator(v: &HVector, table: &DualTable) -> FockResult<DualTable> {
    if v.dim() != table.nvars() {
        return Err(FockError::DimensionMismatch {
            expected: table.nvars(),
            got: v.dim(),
        });
    }
    let out_trunc = table.trunc().saturating_sub(1);
    let mut out = DualTable::new(table.nvars(), out_trunc)?;
    for (a, val) in table.iter() {
        if a.degree() == 0 {
            continue;
        }
        for j in 0..v.dim() {
            if a.get(j) == 0 {
                continue;
            }
            let down = a.lowered(j).expect("nonzero exponent");
            out.add_to_value(down, v.get(j).conj() * val)?;
        }
    }
    Ok(out)
}

/// The canonical embedding `SV → SV′`, `φ ↦ ⟨·|φ⟩`; on tables
/// `values[α] = α!·φ[α]`.
pub fn embed(phi: &PolyVector) -> DualTable {
    let mut out = DualTable::new(phi.nvars(), phi.trunc()).expect("valid source");
    for (a, c) in phi.iter() {
        out.set_value(a.clone(), c * a.factorial()).expect("within truncation");
    }
    out
}

/// The commutative convolution product on the antidual:
/// `[ΦΨ][α] = Σ_{β≤α} binom(α,β) Φ[β] Ψ[α−β]`.
pub fn functional_product(phi: &DualTable, psi: &DualTable) -> FockResult<DualTable> {
    if phi.nvars() != psi.nvars() {
        return Err(FockError::DimensionMismatch {
            expected: phi.nvars(),
            got: psi.nvars(),
        });
    }
    let trunc = phi.trunc().min(psi.trunc());
    let mut out = DualTable::new(phi.nvars(), trunc)?;
    for (b, vb) in phi.iter() {
        for (g, vg) in psi.iter() {
            if b.degree() + g.degree() > trunc {
                continue;
            }
            let a = b.join_add(g);
            let w = a.binomial(b) * vb * vg;
            out.add_to_value(a, w)?;
        }
    }
    Ok(out)
}

/// Number operator on polynomials: scales the degree-n component by n.
pub fn number_apply(psi: &PolyVector) -> PolyVector {
    let mut out = PolyVector::new(psi.nvars(), psi.trunc()).expect("valid source");
    for (a, c) in psi.iter() {
        out.set_coeff(a.clone(), c * (a.degree() as f64))
            .expect("within truncation");
    }
    out
}

/// Number operator on the antidual, `[NΦ](ψ) = Φ[Nψ]`; same degree scaling.
pub fn number_dual(table: &DualTable) -> DualTable {
    let mut out = DualTable::new(table.nvars(), table.trunc()).expect("valid source");
    for (a, v) in table.iter() {
        out.set_value(a.clone(), v * (a.degree() as f64))
            .expect("within truncation");
    }
    out
}

/// Truncated coherent vector `Σ_{n≤N} xⁿ/n!`; coefficient at `α` is
/// `Π_j x_j^{α_j} / α_j!`.
pub fn coherent(x: &HVector, trunc: u32) -> FockResult<PolyVector> {
    let d = x.dim();
    let mut out = PolyVector::new(d, trunc)?;
    for a in indices_up_to(d, trunc) {
        let mut c = C64::new(1.0, 0.0);
        for j in 0..d {
            let k = a.get(j);
            if k > 0 {
                c *= x.get(j).powu(k) / factorial(k);
            }
        }
        if c != C64::default() {
            out.set_coeff(a, c)?;
        }
    }
    Ok(out)
}
