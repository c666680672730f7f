//! Finite-field flag enumeration and convolution-fiber point counting.
//!
//! The ground-truth engine behind every structure constant in the crate:
//! partial flags over F_p are enumerated explicitly (canonical echelon
//! encodings, deterministic order), orbits of flag pairs are identified by
//! their intersection profile, convolution fibers are counted by constrained
//! enumeration, and counts sampled over a pool of primes are interpolated to
//! exact integer polynomials in q.
//!
//! Large unconstrained enumerations are refused via a configurable work
//! budget; fiber enumeration walks only the subspaces compatible with the
//! prescribed profile column by column, so its cost tracks the fiber size
//! rather than the ambient flag variety.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{GfMat, Subspace};
use crate::laurent::LaurentPoly;
use crate::matrix::ProfileMatrix;

/// Default pool of sample primes.
pub const DEFAULT_PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];

/// Default per-count work budget.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Extra primes sampled beyond the interpolation degree bound.
pub const INTERP_MARGIN: usize = 2;

/// Largest prime accepted by the enumeration routines.
pub const PRIME_CEILING: u64 = 64;

/// A nondecreasing step sequence nu_1 <= ... <= nu_N <= d of flag dimensions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct FlagType {
    steps: Vec<u32>,
    d: u32,
}

impl FlagType {
    pub fn new(steps: Vec<u32>, d: u32) -> Result<Self> {
        let mut prev = 0u32;
        for &s in &steps {
            if s < prev {
                return Err(Error::domain("flag type must be nondecreasing"));
            }
            prev = s;
        }
        if prev > d {
            return Err(Error::domain("flag type exceeds ambient dimension"));
        }
        Ok(FlagType { steps, d })
    }

    /// Rebuild from step increments (d_1, ..., d_{N+1}); d is their sum.
    pub fn from_increments(incr: &[u32]) -> FlagType {
        let mut steps = Vec::with_capacity(incr.len() - 1);
        let mut acc = 0;
        for &v in &incr[..incr.len() - 1] {
            acc += v;
            steps.push(acc);
        }
        FlagType { steps, d: acc + incr[incr.len() - 1] }
    }

    pub fn steps(&self) -> &[u32] {
        &self.steps
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.steps.len()
    }

    /// nu_a with the boundary conventions nu_0 = 0, nu_{N+1} = d.
    pub fn level(&self, a: usize) -> u32 {
        if a == 0 {
            0
        } else if a <= self.steps.len() {
            self.steps[a - 1]
        } else {
            self.d
        }
    }

    /// Increments (nu_1 - nu_0, ..., nu_{N+1} - nu_N).
    pub fn increments(&self) -> Vec<u32> {
        (1..=self.n() + 1)
            .map(|a| self.level(a) - self.level(a - 1))
            .collect()
    }

    /// Dimension of the partial flag variety of this type.
    pub fn flag_dim(&self) -> usize {
        (1..=self.n() + 1)
            .map(|a| (self.level(a - 1) * (self.level(a) - self.level(a - 1))) as usize)
            .sum()
    }

    /// Exact number of F_p-points of the flag variety (Gaussian product).
    pub fn flag_count(&self, p: u64) -> BigInt {
        let mut acc = BigInt::one();
        for a in 1..=self.n() + 1 {
            let k = self.level(a) - self.level(a - 1);
            let n = self.d - self.level(a - 1);
            acc *= gaussian_binomial_count(n as u64, k as u64, p);
        }
        acc
    }

    /// All flag types with N steps in ambient dimension d.
    pub fn all(n: usize, d: u32) -> Vec<FlagType> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        fn rec(n: usize, d: u32, lo: u32, cur: &mut Vec<u32>, out: &mut Vec<FlagType>) {
            if cur.len() == n {
                out.push(FlagType { steps: cur.clone(), d });
                return;
            }
            for v in lo..=d {
                cur.push(v);
                rec(n, d, v, cur, out);
                cur.pop();
            }
        }
        rec(n, d, 0, &mut cur, &mut out);
        out
    }
}

/// Number of k-dimensional subspaces of F_q^n, exactly.
pub fn gaussian_binomial_count(n: u64, k: u64, q: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let qb = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= qb.pow((n - i) as u32) - 1;
        den *= qb.pow((i + 1) as u32) - 1;
    }
    num / den
}

fn check_prime(p: u64) -> Result<()> {
    if p < 2 || p > PRIME_CEILING {
        return Err(Error::domain(format!("prime {p} outside supported range 2..={PRIME_CEILING}")));
    }
    for f in 2..p {
        if f * f > p {
            break;
        }
        if p % f == 0 {
            return Err(Error::domain(format!("{p} is not prime")));
        }
    }
    Ok(())
}

/// A partial flag, stored as the chain of canonical subspaces.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Flag {
    p: u64,
    d: u32,
    chain: Vec<Subspace>,
}

impl Flag {
    pub fn new(p: u64, d: u32, chain: Vec<Subspace>) -> Result<Self> {
        for w in chain.windows(2) {
            if !w[1].contains(&w[0]) {
                return Err(Error::domain("flag levels must be nested"));
            }
        }
        Ok(Flag { p, d, chain })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn flag_type(&self) -> FlagType {
        FlagType {
            steps: self.chain.iter().map(|s| s.dim() as u32).collect(),
            d: self.d,
        }
    }

    /// Level a with boundary conventions (0 -> zero space, N+1 -> all of D).
    pub fn level(&self, a: usize) -> Subspace {
        if a == 0 {
            Subspace::zero(self.p, self.d as usize)
        } else if a <= self.chain.len() {
            self.chain[a - 1].clone()
        } else {
            Subspace::full(self.p, self.d as usize)
        }
    }

    pub fn chain(&self) -> &[Subspace] {
        &self.chain
    }

    /// Apply an invertible ambient matrix to every level.
    pub fn translate(&self, g: &GfMat) -> Flag {
        let gt = g.transpose();
        let chain = self
            .chain
            .iter()
            .map(|s| Subspace::from_span(s.basis().mul(&gt)))
            .collect();
        Flag { p: self.p, d: self.d, chain }
    }
}

/// Every k-dimensional subspace of F_p^d exactly once, in pivot-pattern
/// lexicographic order.
pub fn enumerate_subspaces(p: u64, d: u32, k: u32, budget: u128) -> Result<Vec<Subspace>> {
    check_prime(p)?;
    if k > d {
        return Err(Error::domain("subspace dimension exceeds ambient"));
    }
    let projected = gaussian_binomial_count(d as u64, k as u64, p);
    guard_budget(&projected, budget)?;
    let mut out = Vec::new();
    let d = d as usize;
    let k = k as usize;
    if k == 0 {
        out.push(Subspace::zero(p, d));
        return Ok(out);
    }
    // iterate pivot-column patterns lexicographically
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free positions: (row, col) with col > pivot(row), col not a pivot
        let mut free = Vec::new();
        for (i, &pv) in pivots.iter().enumerate() {
            for c in (pv + 1)..d {
                if !pivots.contains(&c) {
                    free.push((i, c));
                }
            }
        }
        let mut vals = vec![0u64; free.len()];
        loop {
            let mut m = GfMat::zero(p, k, d);
            for (i, &pv) in pivots.iter().enumerate() {
                m.set(i, pv, 1);
            }
            for (t, &(i, c)) in free.iter().enumerate() {
                m.set(i, c, vals[t]);
            }
            out.push(Subspace::from_span(m));
            // increment mixed-radix counter
            let mut t = free.len();
            loop {
                if t == 0 {
                    break;
                }
                t -= 1;
                vals[t] += 1;
                if vals[t] < p {
                    break;
                }
                vals[t] = 0;
                if t == 0 {
                    t = usize::MAX;
                    break;
                }
            }
            if free.is_empty() || t == usize::MAX {
                break;
            }
        }
        // next pivot pattern
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if pivots[i] < d - (k - i) {
                pivots[i] += 1;
                for j in (i + 1)..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn guard_budget(projected: &BigInt, budget: u128) -> Result<()> {
    let over = projected.to_u128().map(|v| v > budget).unwrap_or(true);
    if over {
        return Err(Error::Capacity {
            projected: projected.to_u128().unwrap_or(u128::MAX),
            budget,
        });
    }
    Ok(())
}

/// Extensions of `prev` to a k-dimensional subspace inside `within`,
/// each exactly once (parametrized by subspaces of within/prev).
fn extensions_within(prev: &Subspace, within: &Subspace, k: u32, p: u64) -> Vec<Subspace> {
    let add = k as usize - prev.dim();
    if add == 0 {
        return vec![prev.clone()];
    }
    let comp = prev.complement_in(within);
    let c = comp.len();
    if add > c {
        return Vec::new();
    }
    let quotient_subs =
        enumerate_subspaces(p, c as u32, add as u32, u128::MAX).expect("small quotient");
    let mut out = Vec::with_capacity(quotient_subs.len());
    for y in quotient_subs {
        let lifted: Vec<Vec<u64>> = (0..y.dim())
            .map(|i| {
                let mut v = vec![0u64; within.ambient()];
                for (j, cv) in comp.iter().enumerate() {
                    let coef = y.basis().get(i, j);
                    if coef != 0 {
                        for (t, &x) in cv.iter().enumerate() {
                            v[t] = (v[t] + coef * x) % p;
                        }
                    }
                }
                v
            })
            .collect();
        out.push(prev.extend_with(&lifted));
    }
    out
}

/// Stream of all flags of the given type, deterministic order.
pub fn enumerate_flags(p: u64, ty: &FlagType, budget: u128) -> Result<Vec<Flag>> {
    check_prime(p)?;
    guard_budget(&ty.flag_count(p), budget)?;
    let d = ty.d();
    let full = Subspace::full(p, d as usize);
    let mut partial: Vec<Vec<Subspace>> = vec![Vec::new()];
    for a in 1..=ty.n() {
        let mut next = Vec::new();
        for chain in &partial {
            let prev = chain.last().cloned().unwrap_or_else(|| Subspace::zero(p, d as usize));
            for ext in extensions_within(&prev, &full, ty.level(a), p) {
                let mut c = chain.clone();
                c.push(ext);
                next.push(c);
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|chain| Flag::new(p, d, chain))
        .collect()
}

/// Intersection-increment profile of a flag pair (rows from the first flag).
pub fn profile(f: &Flag, g: &Flag) -> Result<ProfileMatrix> {
    if f.p != g.p || f.d != g.d {
        return Err(Error::domain("profile: mismatched ambient spaces"));
    }
    let n = f.chain.len();
    if g.chain.len() != n {
        return Err(Error::domain("profile: flags must have the same number of steps"));
    }
    let mut m = vec![vec![0i64; n + 2]; n + 2];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, val) in row.iter_mut().enumerate() {
            *val = f.level(i).intersection_dim(&g.level(j)) as i64;
        }
    }
    let entries = (1..=n + 1)
        .map(|i| {
            (1..=n + 1)
                .map(|j| (m[i][j] - m[i - 1][j] - m[i][j - 1] + m[i - 1][j - 1]) as u32)
                .collect()
        })
        .collect();
    ProfileMatrix::new(entries)
}

/// Deterministic coordinate-subspace flag pair realizing the profile C:
/// basis vectors are assigned to cells (i, j) in lexicographic order, the
/// first flag collects cells by row, the second by column.
pub fn standard_pair(c: &ProfileMatrix, p: u64) -> Result<(Flag, Flag)> {
    check_prime(p)?;
    let n = c.size();
    let d = c.total();
    let mut cells = vec![vec![Vec::new(); n]; n];
    let mut idx = 0usize;
    for i in 0..n {
        for j in 0..n {
            for _ in 0..c.get(i, j) {
                cells[i][j].push(idx);
                idx += 1;
            }
        }
    }
    let level = |pred: &dyn Fn(usize, usize) -> bool| -> Subspace {
        let mut m = GfMat::zero(p, 0, d as usize);
        for i in 0..n {
            for j in 0..n {
                if pred(i, j) {
                    for &t in &cells[i][j] {
                        let mut row = vec![0u64; d as usize];
                        row[t] = 1;
                        m.push_row(&row);
                    }
                }
            }
        }
        Subspace::from_span(m)
    };
    let f = Flag::new(p, d, (1..n).map(|a| level(&|i, _| i < a)).collect())?;
    let g = Flag::new(p, d, (1..n).map(|a| level(&|_, j| j < a)).collect())?;
    debug_assert_eq!(profile(&f, &g)?, *c);
    Ok((f, g))
}

/// Enumerate the first-projection fiber of the orbit labelled A over `base`:
/// all flags G with profile(base, G) = A. Work is metered against `budget`.
pub fn enumerate_fiber(base: &Flag, a: &ProfileMatrix, budget: u128) -> Result<Vec<Flag>> {
    let p = base.p;
    let d = base.d;
    let n = a.n();
    if base.flag_type() != a.row_type() {
        return Err(Error::domain("enumerate_fiber: base flag type must match row margins"));
    }
    // partial-sum table of prescribed intersections
    let ps = |i: usize, j: usize| -> u32 {
        let mut s = 0;
        for r in 0..i {
            for c in 0..j {
                s += a.get(r, c);
            }
        }
        s
    };
    let mut work: u128 = 0;
    // states are chains (levels of G so far)
    let mut states: Vec<Vec<Subspace>> = vec![Vec::new()];
    for l in 1..=n {
        let mut next = Vec::new();
        for chain in &states {
            let gprev = chain
                .last()
                .cloned()
                .unwrap_or_else(|| Subspace::zero(p, d as usize));
            // build U_1 <= U_2 <= ... <= U_{N+1} with U_k = F_k cap G_l
            let mut layer: Vec<(Vec<Subspace>, Subspace)> = vec![(Vec::new(), gprev.clone())];
            for k in 1..=n + 1 {
                let fk = base.level(k);
                let fkm1 = base.level(k - 1);
                let target = ps(k, l);
                let mut grown = Vec::new();
                for (us, _) in &layer {
                    let ukm1 = us
                        .last()
                        .cloned()
                        .unwrap_or_else(|| Subspace::zero(p, d as usize));
                    // seed: U_{k-1} + (G_{l-1} cap F_k)
                    let seed = sum_with_intersection(&ukm1, &gprev, &fk);
                    if seed.dim() as u32 > target {
                        continue;
                    }
                    for u in extensions_within(&seed, &fk, target, p) {
                        work += 1;
                        if work > budget {
                            return Err(Error::Capacity { projected: work, budget });
                        }
                        if u.intersection_dim(&fkm1) as u32 == ps(k - 1, l) {
                            let mut v = us.clone();
                            v.push(u);
                            grown.push((v, gprev.clone()));
                        }
                    }
                }
                layer = grown;
            }
            for (us, _) in layer {
                let gl = us.last().unwrap().clone();
                let mut c = chain.clone();
                c.push(gl);
                next.push(c);
            }
        }
        states = next;
    }
    let mut out = Vec::with_capacity(states.len());
    for chain in states {
        let g = Flag::new(p, d, chain)?;
        debug_assert_eq!(profile(base, &g).unwrap(), *a);
        out.push(g);
    }
    Ok(out)
}

/// Subspace U + (W cap T): computed by intersecting W with T exactly.
fn sum_with_intersection(u: &Subspace, w: &Subspace, t: &Subspace) -> Subspace {
    let inter = intersect(w, t);
    let rows: Vec<Vec<u64>> = (0..inter.dim()).map(|i| inter.basis().row(i).to_vec()).collect();
    u.extend_with(&rows)
}

/// Exact intersection of two subspaces via the kernel of the stacked system.
fn intersect(a: &Subspace, b: &Subspace) -> Subspace {
    let p = a.p();
    let amb = a.ambient();
    if a.dim() == 0 || b.dim() == 0 {
        return Subspace::zero(p, amb);
    }
    // solve x*Ab = y*Bb: rows of [A; B] with kernel combination
    let da = a.dim();
    let db = b.dim();
    let mut m = GfMat::zero(p, da + db, amb);
    for i in 0..da {
        for j in 0..amb {
            m.set(i, j, a.basis().get(i, j));
        }
    }
    for i in 0..db {
        for j in 0..amb {
            m.set(da + i, j, (p - b.basis().get(i, j)) % p);
        }
    }
    // kernel of m^T applied from the left: find combinations (x,y) with x A = y B.
    // Compute kernel of the (da+db) x amb matrix acting by left multiplication:
    // kernel vectors give intersection elements x*A.
    let kernel = left_kernel(&m);
    if kernel.is_empty() {
        return Subspace::zero(p, amb);
    }
    let mut span = GfMat::zero(p, 0, amb);
    for k in &kernel {
        let mut v = vec![0u64; amb];
        for (i, &coef) in k.iter().take(da).enumerate() {
            if coef != 0 {
                for j in 0..amb {
                    v[j] = (v[j] + coef * a.basis().get(i, j)) % p;
                }
            }
        }
        span.push_row(&v);
    }
    Subspace::from_span(span)
}

/// Basis of the left kernel {x : x M = 0}.
fn left_kernel(m: &GfMat) -> Vec<Vec<u64>> {
    let p = m.p;
    let rows = m.rows;
    let cols = m.cols;
    // RREF of transpose, tracking: kernel of M^T x^T = 0 over row space
    let mut t = GfMat::zero(p, cols, rows);
    for i in 0..rows {
        for j in 0..cols {
            t.set(j, i, m.get(i, j));
        }
    }
    let pivots = t.rref();
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut out = Vec::new();
    for free in 0..rows {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; rows];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - t.get(r, free)) % p;
        }
        out.push(v);
    }
    out
}

/// Number of flags G' with profile(F, G') = A and profile(G', G) = B, where
/// (F, G) is the standard pair of C. Margins must be compatible.
pub fn count_convolution(
    a: &ProfileMatrix,
    b: &ProfileMatrix,
    c: &ProfileMatrix,
    p: u64,
    budget: u128,
) -> Result<u64> {
    if a.col_sums() != b.row_sums() {
        return Err(Error::domain("count_convolution: co(A) != ro(B)"));
    }
    if a.row_sums() != c.row_sums() || b.col_sums() != c.col_sums() {
        return Err(Error::domain("count_convolution: outer margins must match C"));
    }
    let (f, g) = standard_pair(c, p)?;
    count_convolution_on(a, b, &f, &g, budget)
}

/// Same count against an explicit base pair (used by the transitivity audit).
pub fn count_convolution_on(
    a: &ProfileMatrix,
    b: &ProfileMatrix,
    f: &Flag,
    g: &Flag,
    budget: u128,
) -> Result<u64> {
    // enumerate from the cheaper side
    let bt = b.transpose();
    let (from_left, fiber_label, base, other) = if a.fiber_dim_formula() <= bt.fiber_dim_formula()
    {
        (true, a.clone(), f, g)
    } else {
        (false, bt, g, f)
    };
    let mut count = 0u64;
    for mid in enumerate_fiber(base, &fiber_label, budget)? {
        let ok = if from_left {
            profile(&mid, other)? == *b
        } else {
            profile(other, &mid)? == *a
        };
        if ok {
            count += 1;
        }
    }
    Ok(count)
}

/// Exact interpolation of integer samples (prime, count) to a polynomial in
/// q. Requires degree_bound + 1 + margin samples at distinct primes; the
/// margin samples must be fitted exactly and all coefficients must be
/// integers, else the degree bound or the count is wrong.
pub fn interpolate(samples: &[(u64, u64)], degree_bound: usize, margin: usize) -> Result<LaurentPoly> {
    if margin < 1 {
        return Err(Error::domain("interpolate: margin must be at least 1"));
    }
    let need = degree_bound + 1 + margin;
    if samples.len() < need {
        return Err(Error::domain(format!(
            "interpolate: need {need} samples, got {}",
            samples.len()
        )));
    }
    {
        let mut xs: Vec<u64> = samples.iter().map(|s| s.0).collect();
        xs.sort_unstable();
        xs.dedup();
        if xs.len() != samples.len() {
            return Err(Error::domain("interpolate: sample points must be distinct"));
        }
    }
    let fit = &samples[..degree_bound + 1];
    // Lagrange over exact rationals, accumulated in the monomial basis
    let mut coeffs = vec![BigRational::zero(); degree_bound + 1];
    for (i, &(xi, yi)) in fit.iter().enumerate() {
        let mut num = vec![BigRational::zero(); degree_bound + 1];
        num[0] = BigRational::one();
        let mut deg = 0usize;
        let mut den = BigRational::one();
        for (j, &(xj, _)) in fit.iter().enumerate() {
            if i == j {
                continue;
            }
            let xjr = BigRational::from_integer(BigInt::from(xj));
            for k in (0..=deg).rev() {
                let t = num[k].clone();
                num[k + 1] += &t;
                num[k] = -t * &xjr;
            }
            deg += 1;
            den *= BigRational::from_integer(BigInt::from(xi)) - xjr;
        }
        let scale = BigRational::from_integer(BigInt::from(yi)) / den;
        for k in 0..=degree_bound {
            coeffs[k] += &num[k] * &scale;
        }
    }
    let mut poly = LaurentPoly::zero();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !c.denom().is_one() {
            return Err(Error::consistency(format!(
                "interpolate: non-integer coefficient {c} at degree {k}"
            )));
        }
        poly = poly.add(&LaurentPoly::monomial(k as i64, c.numer().clone()));
    }
    if poly.min_exp().unwrap_or(0) < 0 {
        return Err(Error::consistency("interpolate: negative exponent".to_string()));
    }
    for &(x, y) in &samples[degree_bound + 1..] {
        let val = poly.eval_uint(x)?;
        if val != BigInt::from(y) {
            return Err(Error::consistency(format!(
                "interpolate: margin sample at q={x} gives {y}, polynomial predicts {val}"
            )));
        }
    }
    Ok(poly)
}

/// First-projection fiber cardinality of the orbit of A over F_p, by
/// constrained enumeration.
pub fn fiber_count(a: &ProfileMatrix, p: u64, budget: u128) -> Result<u64> {
    let (f, _) = standard_pair(a, p)?;
    Ok(enumerate_fiber(&f, a, budget)?.len() as u64)
}

/// Number of flag pairs over F_p with profile A: |F_{ro(A)}| times the
/// first-projection fiber count.
pub fn orbit_size(a: &ProfileMatrix, p: u64, budget: u128) -> Result<BigInt> {
    let base_count = a.row_type().flag_count(p);
    let fc = fiber_count(a, p, budget)?;
    Ok(base_count * BigInt::from(fc))
}

/// Interpolated fiber polynomial in q; degree bounded by dim of the
/// column-type flag variety.
pub fn fiber_poly(a: &ProfileMatrix, primes: &[u64], budget: u128) -> Result<LaurentPoly> {
    let bound = a.col_type().flag_dim();
    let need = bound + 1 + INTERP_MARGIN;
    if primes.len() < need {
        return Err(Error::capability(format!(
            "fiber_poly: need {need} primes for degree bound {bound}, pool has {}",
            primes.len()
        )));
    }
    let samples: Vec<(u64, u64)> = primes[..need]
        .iter()
        .map(|&p| fiber_count(a, p, budget).map(|c| (p, c)))
        .collect::<Result<_>>()?;
    interpolate(&samples, bound, INTERP_MARGIN)
}

/// Degree in q of the interpolated orbit-size polynomial.
pub fn orbit_dim(a: &ProfileMatrix, primes: &[u64], budget: u128) -> Result<usize> {
    let fiber = fiber_poly(a, primes, budget)?;
    let fiber_deg = fiber.max_exp().unwrap_or(0) as usize;
    Ok(a.row_type().flag_dim() + fiber_deg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pm(rows: &[&[u32]]) -> ProfileMatrix {
        ProfileMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn subspace_enumeration_counts() {
        assert_eq!(enumerate_subspaces(2, 3, 1, 1 << 20).unwrap().len(), 7);
        assert_eq!(enumerate_subspaces(3, 4, 0, 1 << 20).unwrap().len(), 1);
        // derived: brute-force count equals the Gaussian binomial at q = 3
        let subs = enumerate_subspaces(3, 4, 2, 1 << 20).unwrap();
        assert_eq!(subs.len(), 130);
        assert_eq!(
            BigInt::from(subs.len()),
            gaussian_binomial_count(4, 2, 3)
        );
        // uniqueness of canonical encodings
        let mut sorted = subs.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), subs.len());
    }

    #[test]
    fn flag_enumeration_counts() {
        let t = FlagType::new(vec![1, 2], 3).unwrap();
        let flags = enumerate_flags(2, &t, 1 << 20).unwrap();
        assert_eq!(flags.len(), 21); // (q^2+q+1)(q+1) at q=2
        assert_eq!(BigInt::from(flags.len()), t.flag_count(2));

        let degenerate = FlagType::new(vec![0, 0], 3).unwrap();
        assert_eq!(enumerate_flags(3, &degenerate, 1 << 20).unwrap().len(), 1);
        let full = FlagType::new(vec![3], 3).unwrap();
        assert_eq!(enumerate_flags(2, &full, 1 << 20).unwrap().len(), 1);
    }

    #[test]
    fn capacity_guard_trips() {
        let t = FlagType::new(vec![2, 4], 8).unwrap();
        let err = enumerate_flags(29, &t, 1000).unwrap_err();
        match err {
            Error::Capacity { projected, budget } => {
                assert_eq!(budget, 1000);
                assert!(projected > 1000);
            }
            other => panic!("expected capacity error, got {other}"),
        }
    }

    #[test]
    fn profile_basics() {
        let p = 3;
        let t = FlagType::new(vec![1, 2], 4).unwrap();
        let flags = enumerate_flags(p, &t, 1 << 22).unwrap();
        let f = &flags[0];
        // self-profile is the diagonal of increments
        let selfp = profile(f, f).unwrap();
        assert_eq!(selfp, ProfileMatrix::diagonal(&[1, 1, 2]));
        // transpose symmetry
        let g = flags.last().unwrap();
        let a = profile(f, g).unwrap();
        let at = profile(g, f).unwrap();
        assert_eq!(a.transpose(), at);
        // margins
        assert_eq!(a.row_sums(), vec![1, 1, 2]);
        assert_eq!(a.col_sums(), vec![1, 1, 2]);
    }

    #[test]
    fn profile_is_translation_invariant() {
        let p = 5;
        let t = FlagType::new(vec![1, 3], 4).unwrap();
        let flags = enumerate_flags(p, &t, 1 << 22).unwrap();
        let f = &flags[2];
        let g = &flags[17 % flags.len()];
        let a = profile(f, g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..5 {
            let m = GfMat::random_invertible(p, 4, &mut rng);
            assert_eq!(profile(&f.translate(&m), &g.translate(&m)).unwrap(), a);
        }
    }

    #[test]
    fn e_type_profile_placement() {
        // explicit echelon models: F c F' with dim F'_i/F_i = n delta_{ij}
        // puts the off-diagonal unit at row i+1, column i
        let p = 3;
        let d = 3;
        let f = Flag::new(
            p,
            d,
            vec![Subspace::from_span(GfMat::from_rows(p, 3, &[vec![1, 0, 0]]))],
        )
        .unwrap();
        let g = Flag::new(
            p,
            d,
            vec![Subspace::from_span(GfMat::from_rows(
                p,
                3,
                &[vec![1, 0, 0], vec![0, 1, 0]],
            ))],
        )
        .unwrap();
        let a = profile(&f, &g).unwrap();
        assert_eq!(a, pm(&[&[1, 0], &[1, 1]]));
    }

    #[test]
    fn fiber_enumeration_matches_profiles() {
        let a = pm(&[&[1, 1], &[1, 1]]);
        for p in [2u64, 3] {
            let (f, _) = standard_pair(&a, p).unwrap();
            let fiber = enumerate_fiber(&f, &a, 1 << 22).unwrap();
            for g in &fiber {
                assert_eq!(profile(&f, g).unwrap(), a);
            }
            // cross-check against filtering the full flag variety
            let all = enumerate_flags(p, &a.col_type(), 1 << 22).unwrap();
            let brute = all
                .iter()
                .filter(|g| profile(&f, g).unwrap() == a)
                .count();
            assert_eq!(fiber.len(), brute);
        }
    }

    #[test]
    fn convolution_trivial_units() {
        let diag = ProfileMatrix::diagonal(&[1, 2]);
        assert_eq!(count_convolution(&diag, &diag, &diag, 3, 1 << 22).unwrap(), 1);
        let a = pm(&[&[1, 0], &[1, 1]]);
        let dro = ProfileMatrix::diagonal(&[1, 2]);
        assert_eq!(count_convolution(&dro, &a, &a, 3, 1 << 22).unwrap(), 1);
    }

    #[test]
    fn convolution_ef_fiber_is_q() {
        // N=1, d=2: E then F around nu=(1): the middle flag is a line in the
        // plane containing both; count is q at each prime
        let e = pm(&[&[1, 0], &[1, 0]]);
        let f = pm(&[&[1, 1], &[0, 0]]);
        let c = pm(&[&[0, 1], &[1, 0]]);
        for p in [2u64, 3, 5] {
            assert_eq!(count_convolution(&e, &f, &c, p, 1 << 22).unwrap(), p);
        }
    }

    #[test]
    fn convolution_transitivity_audit() {
        // the count must not depend on the base pair chosen inside the orbit
        let e = pm(&[&[1, 0], &[1, 0]]);
        let f = pm(&[&[1, 1], &[0, 0]]);
        let c = pm(&[&[0, 1], &[1, 0]]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2u64, 3] {
            let (f0, g0) = standard_pair(&c, p).unwrap();
            let reference = count_convolution_on(&e, &f, &f0, &g0, 1 << 22).unwrap();
            for _ in 0..5 {
                let m = GfMat::random_invertible(p, 2, &mut rng);
                let cnt =
                    count_convolution_on(&e, &f, &f0.translate(&m), &g0.translate(&m), 1 << 22)
                        .unwrap();
                assert_eq!(cnt, reference);
            }
        }
    }

    #[test]
    fn interpolation_examples() {
        let one = interpolate(&[(2, 1), (3, 1), (5, 1)], 0, 2).unwrap();
        assert!(one.is_one());
        let q = interpolate(&[(2, 2), (3, 3), (5, 5), (7, 7)], 1, 2).unwrap();
        assert_eq!(q, LaurentPoly::v_pow(1));
        // flags of type (1) in d=2 are counted by q+1
        let samples: Vec<(u64, u64)> = [2u64, 3, 5]
            .iter()
            .map(|&p| {
                let t = FlagType::new(vec![1], 2).unwrap();
                (p, enumerate_flags(p, &t, 1 << 20).unwrap().len() as u64)
            })
            .collect();
        let poly = interpolate(&samples, 1, 1).unwrap();
        assert_eq!(poly, LaurentPoly::v_pow(1).add(&LaurentPoly::one()));
    }

    #[test]
    fn interpolation_detects_bad_bound() {
        // quadratic data with a linear bound must fail the margin check
        let samples: Vec<(u64, u64)> = vec![(2, 4), (3, 9), (5, 25), (7, 49)];
        assert!(interpolate(&samples, 1, 2).is_err());
    }

    #[test]
    fn orbit_sizes_partition_the_product() {
        // sum of orbit sizes over all A with fixed margins = |F_nu| * |F_nu'|
        for (n, d) in [(1usize, 3u32), (2, 3)] {
            for p in [2u64, 3] {
                for nu in FlagType::all(n, d) {
                    for nup in FlagType::all(n, d) {
                        let total: BigInt = ProfileMatrix::with_margins(
                            &nu.increments(),
                            &nup.increments(),
                        )
                        .iter()
                        .map(|a| orbit_size(a, p, 1 << 24).unwrap())
                        .sum();
                        assert_eq!(total, nu.flag_count(p) * nup.flag_count(p));
                    }
                }
            }
        }
    }

    #[test]
    fn orbit_dim_examples() {
        let primes = DEFAULT_PRIMES.to_vec();
        // single pair of point flags
        let trivial = pm(&[&[1, 0], &[0, 0]]);
        // need a genuinely 1-step case: N=1, d=1, nu=(1): diag(1,0)
        assert_eq!(orbit_dim(&trivial, &primes, 1 << 24).unwrap(), 0);
        // open orbit dimension = dim F_ro + dim F_co (transverse lines in d=2)
        let open = pm(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            orbit_dim(&open, &primes, 1 << 24).unwrap(),
            open.row_type().flag_dim() + open.col_type().flag_dim()
        );
        // symmetry under transpose
        let a = pm(&[&[1, 1], &[1, 1]]);
        assert_eq!(
            orbit_dim(&a, &primes, 1 << 24).unwrap(),
            orbit_dim(&a.transpose(), &primes, 1 << 24).unwrap()
        );
    }

    #[test]
    fn fiber_degree_matches_closed_form() {
        let primes = DEFAULT_PRIMES.to_vec();
        for r in 0..=3u32 {
            for c in 0..=3u32 {
                for a in ProfileMatrix::with_margins(&[r, 3 - r], &[c, 3 - c]) {
                    let poly = fiber_poly(&a, &primes, 1 << 24).unwrap();
                    let deg = poly.max_exp().unwrap_or(0) as usize;
                    assert_eq!(deg, a.fiber_dim_formula(), "matrix {a:?}");
                }
            }
        }
    }
}
