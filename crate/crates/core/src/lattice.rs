//! Exact integer lattice arithmetic.
//!
//! Everything here works over arbitrary-precision integers. Matrices are used
//! as cocharacter maps of split tori: a square matrix `A` with nonzero
//! determinant describes an isogeny `T -> G_m^n`, and its kernel is the
//! diagonalizable group read off from the Smith normal form of `A`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("matrix has {got} entries, expected {rows}x{cols}")]
    Shape { rows: usize, cols: usize, got: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("not an isogeny: determinant is zero")]
    NotAnIsogeny,
    #[error("divisor chain entries must be positive, got {0}")]
    NonPositive(i64),
    #[error("{0} does not divide {1} in divisor chain")]
    NotAChain(u64, u64),
    #[error("invariant factor {0} does not fit in 64 bits")]
    Overflow(String),
    #[error("cannot parse matrix: {0}")]
    ParseMatrix(String),
    #[error("cannot parse abelian group: {0}")]
    ParseGroup(String),
    #[error("census is inconsistent with an abelian group of order {0}")]
    Census(u64),
}

pub type Result<T> = std::result::Result<T, LatticeError>;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(LatticeError::Shape { rows, cols, got: entries.len() });
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Builds a matrix from nested rows. Panics on ragged input.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let entries = rows.iter().flat_map(|r| r.iter().map(|&x| BigInt::from(x))).collect();
        IntMatrix { rows: rows.len(), cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn diagonal(diag: &[i64]) -> Self {
        let n = diag.len();
        let mut m = Self::zero(n, n);
        for (i, &x) in diag.iter().enumerate() {
            m.entries[i * n + i] = BigInt::from(x);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Matrix product. Panics on mismatched shapes.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(LatticeError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        Ok(sign * &m[n - 1][n - 1])
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += k * row[src]
    fn add_row_multiple(&mut self, target: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let delta = k * self.get(src, j);
            self.entries[target * self.cols + j] += delta;
        }
    }

    /// col[target] += k * col[src]
    fn add_col_multiple(&mut self, target: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let delta = k * self.get(i, src);
            self.entries[i * self.cols + target] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.entries[idx] = -&self.entries[idx];
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

impl FromStr for IntMatrix {
    type Err = LatticeError;

    /// Parses `"2,1;0,3"`: rows separated by `;`, entries by `,`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(LatticeError::ParseMatrix("empty matrix".into()));
        }
        let mut entries = Vec::new();
        let mut cols = None;
        let mut rows = 0;
        for row in s.split(';') {
            let parsed: Vec<BigInt> = row
                .split(',')
                .map(|e| {
                    e.trim()
                        .parse::<BigInt>()
                        .map_err(|_| LatticeError::ParseMatrix(format!("bad entry {:?}", e.trim())))
                })
                .collect::<Result<_>>()?;
            match cols {
                None => cols = Some(parsed.len()),
                Some(c) if c != parsed.len() => {
                    return Err(LatticeError::ParseMatrix(format!(
                        "row {} has {} entries, expected {}",
                        rows,
                        parsed.len(),
                        c
                    )))
                }
                _ => {}
            }
            entries.extend(parsed);
            rows += 1;
        }
        IntMatrix::new(rows, cols.unwrap_or(0), entries)
    }
}

/// An ordered tuple `r_1 | r_2 | ... | r_k` of positive integers.
///
/// Equality ignores leading 1s, so `(1, 2)` and `(2)` describe the same
/// group `Z/2`; use [`DivisorChain::moduli`] when the length matters.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct DivisorChain {
    moduli: Vec<u64>,
}

impl DivisorChain {
    /// Validates an already normalized chain.
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        for &m in &moduli {
            if m == 0 {
                return Err(LatticeError::NonPositive(0));
            }
        }
        for w in moduli.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(LatticeError::NotAChain(w[0], w[1]));
            }
        }
        Ok(DivisorChain { moduli })
    }

    pub fn empty() -> Self {
        DivisorChain { moduli: Vec::new() }
    }

    /// The invariant factor chain of `Z/m_1 x ... x Z/m_k`, of the same
    /// length `k` (padded in front with 1s).
    pub fn normalize(moduli: &[i64]) -> Result<Self> {
        let mut positive = Vec::with_capacity(moduli.len());
        for &m in moduli {
            if m <= 0 {
                return Err(LatticeError::NonPositive(m));
            }
            positive.push(m as u64);
        }
        Ok(Self::normalize_positive(&positive))
    }

    pub(crate) fn normalize_positive(moduli: &[u64]) -> Self {
        // prime -> exponents of that prime across the inputs
        let mut powers: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &m in moduli {
            for (p, e) in factorize(m) {
                powers.entry(p).or_default().push(e);
            }
        }
        let k = moduli.len();
        let mut out = vec![1u64; k];
        for (p, mut exps) in powers {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            for (i, e) in exps.into_iter().enumerate() {
                out[k - 1 - i] *= p.pow(e);
            }
        }
        DivisorChain { moduli: out }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    /// The chain with its trivial factors dropped.
    pub fn nontrivial(&self) -> &[u64] {
        let first = self.moduli.iter().position(|&m| m != 1).unwrap_or(self.moduli.len());
        &self.moduli[first..]
    }

    /// Product of the moduli: the order of `Z/r_1 x ... x Z/r_k`.
    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.moduli.last().copied().unwrap_or(1)
    }
}

impl PartialEq for DivisorChain {
    fn eq(&self, other: &Self) -> bool {
        self.nontrivial() == other.nontrivial()
    }
}

impl Eq for DivisorChain {}

impl std::hash::Hash for DivisorChain {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.nontrivial().hash(state);
    }
}

impl TryFrom<Vec<u64>> for DivisorChain {
    type Error = LatticeError;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        DivisorChain::new(v)
    }
}

impl From<DivisorChain> for Vec<u64> {
    fn from(c: DivisorChain) -> Self {
        c.moduli
    }
}

impl fmt::Display for DivisorChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.moduli.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
    }
}

/// Finitely generated abelian group `Z^k x Z/a_1 x ... x Z/a_m`, `a_i | a_{i+1}`,
/// with trivial factors removed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FinAbGroup {
    free_rank: usize,
    torsion: DivisorChain,
}

impl FinAbGroup {
    pub fn new(free_rank: usize, torsion: &[u64]) -> Result<Self> {
        let chain = DivisorChain::new(torsion.iter().copied().filter(|&t| t != 1).collect())?;
        Ok(FinAbGroup { free_rank, torsion: chain })
    }

    /// Product of cyclic groups of the given orders, in canonical form.
    pub fn from_cyclic_factors(free_rank: usize, orders: &[u64]) -> Result<Self> {
        if orders.contains(&0) {
            return Err(LatticeError::NonPositive(0));
        }
        let chain = DivisorChain::normalize_positive(orders);
        Self::new(free_rank, chain.nontrivial())
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &DivisorChain {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        (self.free_rank == 0).then(|| self.torsion.order())
    }

    /// Recovers the structure of a finite abelian group of order `order`
    /// from its torsion census `k -> #{x : kx = 0}`.
    ///
    /// The census is only queried at prime powers dividing `order`.
    pub fn from_torsion_census(order: u64, mut census: impl FnMut(u64) -> u64) -> Result<Self> {
        if order == 0 {
            return Err(LatticeError::Census(0));
        }
        let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
        for (p, e) in factorize(order) {
            // logs[j] = log_p #{x : p^j x = 0}
            let mut logs = vec![0u32];
            for j in 1..=e {
                let c = census(p.pow(j));
                let l = exact_log(c, p).ok_or(LatticeError::Census(order))?;
                logs.push(l);
            }
            if logs[e as usize] != e {
                return Err(LatticeError::Census(order));
            }
            // factors of exponent >= j: logs[j] - logs[j-1]
            let mut exps = Vec::new();
            for j in 1..=e as usize {
                let at_least_j = logs[j].checked_sub(logs[j - 1]).ok_or(LatticeError::Census(order))?;
                let at_least_next = if j < e as usize { logs[j + 1].saturating_sub(logs[j]) } else { 0 };
                let exactly = at_least_j.checked_sub(at_least_next).ok_or(LatticeError::Census(order))?;
                exps.extend(std::iter::repeat_n(j as u32, exactly as usize));
            }
            per_prime.push((p, exps));
        }
        let orders: Vec<u64> = per_prime.iter().flat_map(|(p, exps)| exps.iter().map(move |&e| p.pow(e))).collect();
        Self::from_cyclic_factors(0, &orders)
    }

    /// Renders the group multiplicatively as a diagonalizable group, e.g. `mu_2 x mu_4`.
    pub fn to_mu_string(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "G_m".into() } else { format!("G_m^{}", self.free_rank) });
        }
        parts.extend(self.torsion.nontrivial().iter().map(|a| format!("mu_{a}")));
        if parts.is_empty() {
            "trivial".into()
        } else {
            parts.join(" x ")
        }
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.torsion.nontrivial().iter().map(|a| format!("Z/{a}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}

impl FromStr for FinAbGroup {
    type Err = LatticeError;

    /// Accepts `"0"`, `"Z"`, `"Z^2 x Z/2 x Z/4"`; cyclic factors may come in
    /// any order and are normalized.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s == "1" {
            return Ok(Self::trivial());
        }
        let mut free = 0usize;
        let mut orders = Vec::new();
        for part in s.split(['x', '*']) {
            let part = part.trim();
            let bad = || LatticeError::ParseGroup(format!("bad factor {part:?}"));
            if part == "Z" {
                free += 1;
            } else if let Some(k) = part.strip_prefix("Z^") {
                free += k.trim().parse::<usize>().map_err(|_| bad())?;
            } else if let Some(n) = part.strip_prefix("Z/") {
                let n: u64 = n.trim().parse().map_err(|_| bad())?;
                if n == 0 {
                    return Err(bad());
                }
                orders.push(n);
            } else {
                return Err(bad());
            }
        }
        Self::from_cyclic_factors(free, &orders)
    }
}

/// Result of [`smith_normal_form`]: `U * A * V = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// The `min(rows, cols)` diagonal entries of `D`, including 1s and trailing 0s.
    pub factors: Vec<BigInt>,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries that exceed 1, as a chain.
    pub fn torsion_chain(&self) -> Result<DivisorChain> {
        let nontrivial = self
            .factors
            .iter()
            .filter(|f| !f.is_zero() && !f.is_one())
            .map(|f| f.to_u64().ok_or_else(|| LatticeError::Overflow(f.to_string())))
            .collect::<Result<Vec<_>>>()?;
        DivisorChain::new(nontrivial)
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|f| !f.is_zero()).count()
    }
}

/// Smith normal form by elementary row and column operations.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    'diag: for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = min_abs_entry(&d, t) else {
                break 'diag;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = d.get(i, t).div_floor(&pivot);
                if !q.is_zero() {
                    let neg = -q;
                    d.add_row_multiple(i, t, &neg);
                    u.add_row_multiple(i, t, &neg);
                }
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = d.get(t, j).div_floor(&pivot);
                if !q.is_zero() {
                    let neg = -q;
                    d.add_col_multiple(j, t, &neg);
                    v.add_col_multiple(j, t, &neg);
                }
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the remaining block
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    let factors = (0..m.min(n)).map(|i| d.get(i, i).clone()).collect();
    SmithDecomposition { u, d, v, factors }
}

fn min_abs_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                best = Some(((i, j), ax));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// Kernel of the torus homomorphism `T -> G_m^n` with cocharacter matrix `a`.
pub fn torus_kernel(a: &IntMatrix) -> Result<FinAbGroup> {
    if !a.is_square() {
        return Err(LatticeError::NotSquare { rows: a.rows, cols: a.cols });
    }
    let snf = smith_normal_form(a);
    if snf.rank() < a.rows {
        return Err(LatticeError::NotAnIsogeny);
    }
    Ok(FinAbGroup { free_rank: 0, torsion: snf.torsion_chain()? })
}

/// Cokernel of `a: Z^cols -> Z^rows`.
pub fn coker_structure(a: &IntMatrix) -> Result<FinAbGroup> {
    let snf = smith_normal_form(a);
    Ok(FinAbGroup { free_rank: a.rows - snf.rank(), torsion: snf.torsion_chain()? })
}

/// Brute-force count of `{x in (Z/m)^n : a x = 0 mod m}`, returned as an
/// abelian group. Independent of [`smith_normal_form`]: solutions are
/// enumerated exhaustively (the last coordinate through a lookup table) and
/// the structure is recovered from the torsion census.
pub fn torus_points_kernel_oracle(a: &IntMatrix, m: u64) -> Result<FinAbGroup> {
    if !a.is_square() {
        return Err(LatticeError::NotSquare { rows: a.rows, cols: a.cols });
    }
    assert!(m >= 1, "modulus must be positive");
    let n = a.rows;
    if n == 0 {
        return Ok(FinAbGroup::trivial());
    }
    let modulus = BigInt::from(m);
    let reduced: Vec<u64> =
        a.entries.iter().map(|x| x.mod_floor(&modulus).to_u64().expect("reduced entry fits")).collect();
    let entry = |i: usize, j: usize| reduced[i * n + j] as u128;
    let m128 = m as u128;

    // residue of last column times x_last -> all such x_last
    let mut last: HashMap<Vec<u64>, Vec<u64>> = HashMap::new();
    for x in 0..m {
        let key: Vec<u64> = (0..n).map(|i| ((entry(i, n - 1) * x as u128) % m128) as u64).collect();
        last.entry(key).or_default().push(x);
    }

    let mut solutions: Vec<Vec<u64>> = Vec::new();
    let prefix_len = n - 1;
    let mut prefix = vec![0u64; prefix_len];
    loop {
        let need: Vec<u64> = (0..n)
            .map(|i| {
                let s: u128 = (0..prefix_len).map(|j| entry(i, j) * prefix[j] as u128).sum::<u128>() % m128;
                ((m128 - s) % m128) as u64
            })
            .collect();
        if let Some(xs) = last.get(&need) {
            for &x in xs {
                let mut sol = prefix.clone();
                sol.push(x);
                solutions.push(sol);
            }
        }
        // odometer
        let mut k = 0;
        while k < prefix_len {
            prefix[k] += 1;
            if prefix[k] < m {
                break;
            }
            prefix[k] = 0;
            k += 1;
        }
        if k == prefix_len {
            break;
        }
    }

    let order = solutions.len() as u64;
    FinAbGroup::from_torsion_census(order, |k| {
        solutions.iter().filter(|x| x.iter().all(|&c| (c as u128 * k as u128).is_multiple_of(m128))).count() as u64
    })
}

/// Prime factorization by trial division, ascending primes.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn exact_log(mut c: u64, p: u64) -> Option<u32> {
    if c == 0 {
        return None;
    }
    let mut l = 0;
    while c > 1 {
        if !c.is_multiple_of(p) {
            return None;
        }
        c /= p;
        l += 1;
    }
    Some(l)
}
