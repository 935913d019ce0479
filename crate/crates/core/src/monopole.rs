//! Monopole-formula Hilbert series, the twisted formula for folded quivers,
//! the folding bijection ψ and the homological/loop-rotation degree shift.

use crate::error::{CbxError, Result};
use crate::quiverdata::{dressing_from_multiplicities, multiplicities, twice_delta, Coweight, QuiverTheory};
use crate::ratfield::{qf, Q};
use rayon::prelude::*;
use serde::ser::{Serialize, SerializeSeq, Serializer};
use std::collections::HashMap;
use std::fmt;

/// Power series in `t` with integer coefficients, truncated after `t^order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    order: i64,
    coeffs: Vec<i64>,
}

fn checked(v: Option<i64>) -> i64 {
    v.expect("series coefficient overflows i64")
}

impl Series {
    pub fn zero(order: i64) -> Self {
        assert!(order >= 0, "truncation order must be nonnegative");
        Series { order, coeffs: vec![0; order as usize + 1] }
    }

    pub fn one(order: i64) -> Self {
        Self::monomial(0, 1, order)
    }

    /// `c·t^exp`, or zero when `exp` exceeds the order.
    pub fn monomial(exp: i64, c: i64, order: i64) -> Self {
        let mut s = Self::zero(order);
        if (0..=order).contains(&exp) {
            s.coeffs[exp as usize] = c;
        }
        s
    }

    /// `1/(1 − t^step)` for `step ≥ 1`.
    pub fn geometric(step: i64, order: i64) -> Self {
        assert!(step >= 1, "geometric step must be positive");
        let mut s = Self::zero(order);
        for e in (0..=order).step_by(step as usize) {
            s.coeffs[e as usize] = 1;
        }
        s
    }

    /// Builds a series from `(exponent, coefficient)` pairs; repeated
    /// exponents accumulate.
    pub fn from_pairs(pairs: &[(i64, i64)], order: i64) -> Self {
        let mut s = Self::zero(order);
        for &(e, c) in pairs {
            if (0..=order).contains(&e) {
                s.coeffs[e as usize] = checked(s.coeffs[e as usize].checked_add(c));
            }
        }
        s
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        if (0..=self.order).contains(&exp) {
            self.coeffs[exp as usize]
        } else {
            0
        }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Nonzero `(exponent, coefficient)` pairs by increasing exponent.
    pub fn to_pairs(&self) -> Vec<(i64, i64)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| **c != 0).map(|(e, c)| (e as i64, *c)).collect()
    }

    pub fn truncate(&self, order: i64) -> Self {
        let mut s = Self::zero(order.min(self.order));
        let n = s.coeffs.len();
        s.coeffs.copy_from_slice(&self.coeffs[..n]);
        s
    }

    fn common(&self, other: &Series) -> i64 {
        self.order.min(other.order)
    }

    pub fn add(&self, other: &Series) -> Series {
        let mut s = Self::zero(self.common(other));
        for (e, c) in s.coeffs.iter_mut().enumerate() {
            *c = checked(self.coeffs[e].checked_add(other.coeffs[e]));
        }
        s
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Series {
        Series { order: self.order, coeffs: self.coeffs.iter().map(|c| checked(c.checked_mul(k))).collect() }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let mut s = Self::zero(self.common(other));
        let n = s.coeffs.len();
        for (i, a) in self.coeffs.iter().enumerate().take(n).filter(|(_, a)| **a != 0) {
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                s.coeffs[i + j] = checked(s.coeffs[i + j].checked_add(checked(a.checked_mul(*b))));
            }
        }
        s
    }

    pub fn pow(&self, k: u32) -> Series {
        (0..k).fold(Series::one(self.order), |acc, _| acc.mul(self))
    }

    /// `f(t) ↦ f(t^k)`.
    pub fn dilate(&self, k: i64) -> Series {
        let mut s = Self::zero(self.order);
        for (e, c) in self.coeffs.iter().enumerate() {
            let target = e as i64 * k;
            if target > self.order {
                break;
            }
            s.coeffs[target as usize] = *c;
        }
        s
    }

    /// `f(t) ↦ t^k f(t)`.
    pub fn shift(&self, k: i64) -> Series {
        let mut s = Self::zero(self.order);
        for (e, c) in self.coeffs.iter().enumerate() {
            let target = e as i64 + k;
            if (0..=self.order).contains(&target) {
                s.coeffs[target as usize] = *c;
            }
        }
        s
    }

    /// Smallest exponent where the two series differ, up to the shorter order.
    pub fn first_difference(&self, other: &Series) -> Option<i64> {
        (0..=self.common(other)).find(|&e| self.coeffs[e as usize] != other.coeffs[e as usize])
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.to_pairs() {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (e, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => {}
                _ => write!(f, "{a}")?,
            }
            match e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order + 1)
    }
}

impl Serialize for Series {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs = self.to_pairs();
        let mut seq = serializer.serialize_seq(Some(pairs.len()))?;
        for p in pairs {
            seq.serialize_element(&[p.0, p.1])?;
        }
        seq.end()
    }
}

/// Non-increasing integer tuples of length `n` with entries in `[−b, b]`.
pub fn dominant_tuples(n: usize, b: i64) -> Vec<Vec<i64>> {
    fn rec(n: usize, hi: i64, b: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in (-b..=hi).rev() {
            cur.push(v);
            rec(n, v, b, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, b, b, &mut Vec::new(), &mut out);
    out
}

/// Dominant coweights of `∏ GL(dims[i])` with entries in `[−b, b]`.
pub fn dominant_box(dims: &[usize], b: i64) -> Vec<Coweight> {
    let mut out = vec![Vec::<Vec<i64>>::new()];
    for &a in dims {
        let tuples = dominant_tuples(a, b);
        out = out.into_iter().flat_map(|pre| tuples.iter().map(move |t| {
            let mut p = pre.clone();
            p.push(t.clone());
            p
        })).collect();
    }
    out.into_iter().map(Coweight).collect()
}

/// `Σ t^{e(λ)} P(t; λ)` over a finite list of coweights, with `e` given as
/// an integer exponent function. Negative exponents are reported as
/// instability at the box size `box_size`.
fn monopole_sum<F>(coweights: &[Coweight], order: i64, box_size: i64, exponent: F) -> Result<Series>
where
    F: Fn(&Coweight) -> i64 + Sync,
{
    let terms: Vec<(i64, Vec<usize>)> = coweights.par_iter().map(|l| (exponent(l), multiplicities(l))).collect();
    if let Some((e, _)) = terms.iter().find(|(e, _)| *e < 0) {
        return Err(CbxError::TruncationUnstable { box_size, exponent: *e });
    }
    let mut buckets: HashMap<Vec<usize>, Vec<i64>> = HashMap::new();
    for (e, mut m) in terms.into_iter().filter(|(e, _)| *e <= order) {
        m.sort_unstable();
        buckets.entry(m).or_insert_with(|| vec![0; order as usize + 1])[e as usize] += 1;
    }
    let mut total = Series::zero(order);
    for (m, counts) in buckets {
        let pairs: Vec<(i64, i64)> = counts.iter().enumerate().map(|(e, c)| (e as i64, *c)).collect();
        total = total.add(&Series::from_pairs(&pairs, order).mul(&dressing_from_multiplicities(&m, order)));
    }
    Ok(total)
}

fn stable_sum<F>(dims: &[usize], order: i64, box_size: i64, exponent: F) -> Result<Series>
where
    F: Fn(&Coweight) -> i64 + Sync,
{
    if order < 0 || box_size < 1 {
        return Err(CbxError::schema(None, "order must be nonnegative and box at least 1"));
    }
    let small = monopole_sum(&dominant_box(dims, box_size), order, box_size, &exponent)?;
    let large = monopole_sum(&dominant_box(dims, box_size + 1), order, box_size + 1, &exponent)?;
    match small.first_difference(&large) {
        Some(e) => Err(CbxError::TruncationUnstable { box_size, exponent: e }),
        None => Ok(small),
    }
}

/// Monopole formula `Σ_λ t^{2Δ(λ)} P(t; λ)` over dominant coweights with
/// entries in `[−box, box]`, checked against the same sum over `box + 1`.
pub fn hilbert_series(q: &QuiverTheory, order: i64, box_size: i64) -> Result<Series> {
    stable_sum(&q.dim, order, box_size, |l| twice_delta(q, l))
}

/// A quiver with a diagram automorphism given by vertex cycles.
#[derive(Clone, Debug)]
pub struct FoldedTheory {
    pub base: QuiverTheory,
    /// Orbits of the automorphism in the order used by the chain condition.
    pub orbits: Vec<Vec<usize>>,
    /// Folded vertex of each base vertex.
    pub orbit_of: Vec<usize>,
    /// Folded edges `(a, b, multiplier, count)` contributing
    /// `count · |multiplier·θ^a_r − θ^b_s|`.
    pub edges: Vec<(usize, usize, i64, i64)>,
}

impl FoldedTheory {
    /// Validates that the cycles define an automorphism preserving the
    /// dimension and flavor vectors and the arrow multiset.
    pub fn new(base: QuiverTheory, cycles: &[Vec<usize>]) -> Result<Self> {
        let n = base.n_vertices();
        let mut sigma: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (k, &v) in c.iter().enumerate() {
                if v >= n {
                    return Err(CbxError::schema(Some("fold".into()), "cycle vertex out of range"));
                }
                sigma[v] = c[(k + 1) % c.len()];
            }
        }
        let bad = |m: &str| CbxError::schema(Some("fold".into()), m.to_string());
        if (0..n).any(|v| base.dim[v] != base.dim[sigma[v]] || base.flavor[v] != base.flavor[sigma[v]]) {
            return Err(bad("automorphism must preserve dimensions and flavors"));
        }
        let mut arrows = base.arrows.clone();
        let mut moved: Vec<_> = arrows.iter().map(|&(a, b)| (sigma[a], sigma[b])).collect();
        arrows.sort_unstable();
        moved.sort_unstable();
        if arrows != moved {
            return Err(bad("automorphism must map the arrow set to itself"));
        }
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut orbit_of = vec![usize::MAX; n];
        for v in 0..n {
            if orbit_of[v] != usize::MAX {
                continue;
            }
            let mut orbit = vec![v];
            let mut w = sigma[v];
            while w != v {
                orbit.push(w);
                w = sigma[w];
            }
            if let Some(c) = cycles.iter().find(|c| c.contains(&v)) {
                orbit = c.clone();
            }
            for &w in &orbit {
                orbit_of[w] = orbits.len();
            }
            orbits.push(orbit);
        }
        let mut counts: HashMap<(usize, usize), i64> = HashMap::new();
        for &(a, b) in &base.arrows {
            *counts.entry((orbit_of[a], orbit_of[b])).or_insert(0) += 1;
        }
        let mut edges = Vec::new();
        let mut keys: Vec<_> = counts.into_iter().collect();
        keys.sort_unstable();
        for ((a, b), cnt) in keys {
            let (p, r) = (orbits[a].len() as i64, orbits[b].len() as i64);
            if p % r != 0 && r % p != 0 {
                return Err(bad("orbit sizes along an edge must divide each other"));
            }
            let (small, big, d) = if p <= r { (a, b, r / p) } else { (b, a, p / r) };
            edges.push((small, big, d, cnt / p.max(r)));
        }
        Ok(FoldedTheory { base, orbits, orbit_of, edges })
    }

    pub fn identity(base: QuiverTheory) -> Self {
        Self::new(base, &[]).expect("identity is an automorphism")
    }

    /// Dimension vector of the folded gauge group.
    pub fn folded_dims(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| self.base.dim[o[0]]).collect()
    }

    /// Twisted `2Δ(θ)` for a coweight of the folded gauge group.
    pub fn twice_delta_twisted(&self, theta: &Coweight) -> i64 {
        let l = &theta.0;
        let mut acc = 0i64;
        for v in l {
            for r in 0..v.len() {
                for s in r + 1..v.len() {
                    acc -= 2 * (v[r] - v[s]).abs();
                }
            }
        }
        for &(a, b, d, cnt) in &self.edges {
            for x in &l[a] {
                for y in &l[b] {
                    acc += cnt * (d * x - y).abs();
                }
            }
        }
        for (k, o) in self.orbits.iter().enumerate() {
            acc += self.base.flavor[o[0]] as i64 * l[k].iter().map(|x| x.abs()).sum::<i64>();
        }
        acc
    }

    /// Whether `λ̂` is dominant and satisfies the chain condition
    /// `λ̂^{c_1}_r ≥ … ≥ λ̂^{c_q}_r ≥ λ̂^{c_1}_r − 1` along every orbit.
    pub fn in_y_prime(&self, lhat: &Coweight) -> bool {
        lhat.matches(&self.base)
            && lhat.is_dominant()
            && self.orbits.iter().all(|o| {
                (0..self.base.dim[o[0]]).all(|r| {
                    o.windows(2).all(|w| lhat.0[w[0]][r] >= lhat.0[w[1]][r])
                        && lhat.0[o[o.len() - 1]][r] >= lhat.0[o[0]][r] - 1
                })
            })
    }

    /// `ψ(λ̂)`: sums the coweights along each orbit.
    pub fn fold_psi(&self, lhat: &Coweight) -> Result<Coweight> {
        if !self.in_y_prime(lhat) {
            return Err(CbxError::NotInYPrime);
        }
        Ok(Coweight(
            self.orbits
                .iter()
                .map(|o| (0..self.base.dim[o[0]]).map(|r| o.iter().map(|&v| lhat.0[v][r]).sum()).collect())
                .collect(),
        ))
    }

    /// Inverse of ψ on dominant folded coweights.
    pub fn fold_psi_inverse(&self, theta: &Coweight) -> Coweight {
        let mut out: Vec<Vec<i64>> = self.base.dim.iter().map(|&a| vec![0; a]).collect();
        for (k, o) in self.orbits.iter().enumerate() {
            let qn = o.len() as i64;
            for (r, &s) in theta.0[k].iter().enumerate() {
                for (j, &v) in o.iter().enumerate() {
                    out[v][r] = (s + qn - 1 - j as i64).div_euclid(qn);
                }
            }
        }
        Coweight(out)
    }
}

/// `Σ_θ t^{2Δ_twisted(θ)} P_{GL(V_Q)}(t; θ)` over dominant folded coweights.
pub fn twisted_hilbert_series(f: &FoldedTheory, order: i64, box_size: i64) -> Result<Series> {
    stable_sum(&f.folded_dims(), order, box_size, |t| f.twice_delta_twisted(t))
}

/// Exponent of the character `det 𝐍` on `det V_i`:
/// `l_i + Σ_{h: in = i} a_out − Σ_{h: out = i} a_in`.
pub fn det_n_exponents(q: &QuiverTheory) -> Vec<i64> {
    (0..q.n_vertices())
        .map(|i| {
            let inc: i64 = q.arrows_in(i).map(|(a, _)| q.dim[a] as i64).sum();
            let out: i64 = q.arrows_out(i).map(|(_, b)| q.dim[b] as i64).sum();
            q.flavor[i] as i64 + inc - out
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeVariant {
    /// `deg_r = deg_h − νᵗ·√det 𝐍 + ½νᵗ·C·α`.
    Zastava,
    /// `deg_r = Δ + νᵗ·√det 𝐍_vert + ½νᵗ·C·α`.
    Slice,
}

/// Converts a homological degree (or `Δ` for the slice variant) on the
/// component `ν` into the loop-rotation degree.
pub fn degree_shift(q: &QuiverTheory, nu: &[i64], deg: &Q, variant: DegreeVariant) -> Result<Q> {
    if nu.len() != q.n_vertices() {
        return Err(CbxError::IndexOutOfRange(format!("component has {} entries, theory has {} vertices", nu.len(), q.n_vertices())));
    }
    let c = q.cartan();
    let c_alpha: i64 = (0..nu.len())
        .map(|i| nu[i] * (0..nu.len()).map(|j| c[i][j] * q.dim[j] as i64).sum::<i64>())
        .sum();
    let twice_root: i64 = match variant {
        DegreeVariant::Zastava => -det_n_exponents(q).iter().zip(nu).map(|(e, n)| e * n).sum::<i64>(),
        DegreeVariant::Slice => q.flavor.iter().zip(nu).map(|(l, n)| *l as i64 * n).sum(),
    };
    Ok(deg + qf(twice_root + c_alpha, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::q;

    #[test]
    fn series_arithmetic() {
        let g = Series::geometric(2, 8);
        assert_eq!(g.mul(&Series::one(8).sub(&Series::monomial(2, 1, 8))), Series::one(8));
        assert_eq!(g.dilate(2), Series::geometric(4, 8));
        assert_eq!(Series::from_pairs(&[(0, 1), (3, -2)], 4).to_string(), "1 - 2t^3 + O(t^5)");
        assert_eq!(serde_json::to_string(&Series::geometric(3, 6)).unwrap(), "[[0,1],[3,1],[6,1]]");
    }

    #[test]
    fn tuples_counted() {
        assert_eq!(dominant_tuples(2, 1).len(), 6);
        assert_eq!(dominant_tuples(0, 3), vec![Vec::<i64>::new()]);
    }

    #[test]
    fn trivial_and_divergent() {
        let t = QuiverTheory::type_a(&[0], &[3]);
        assert_eq!(hilbert_series(&t, 6, 2).unwrap(), Series::one(6));
        let u = QuiverTheory::type_a(&[1], &[0]);
        assert!(matches!(hilbert_series(&u, 6, 4), Err(CbxError::TruncationUnstable { exponent: 0, .. })));
    }

    #[test]
    fn degree_shift_examples() {
        let a1 = QuiverTheory::type_a(&[1], &[0]);
        assert_eq!(degree_shift(&a1, &[1], &q(0), DegreeVariant::Zastava).unwrap(), q(1));
        assert_eq!(degree_shift(&a1, &[0], &qf(3, 2), DegreeVariant::Slice).unwrap(), qf(3, 2));
    }

    #[test]
    fn psi_inverse_is_chain() {
        let d4 = QuiverTheory::new(&["0", "1", "2a", "2b", "2c"], &[(1, 0), (1, 2), (1, 3), (1, 4)], &[1, 2, 1, 1, 1], &[1, 0, 0, 0, 0]).unwrap();
        let f = FoldedTheory::new(d4, &[vec![2, 3, 4]]).unwrap();
        assert_eq!(f.folded_dims(), vec![1, 2, 1]);
        assert_eq!(f.edges, vec![(1, 0, 1, 1), (1, 2, 3, 1)]);
        let theta = Coweight(vec![vec![0], vec![1, 0], vec![1]]);
        let lhat = f.fold_psi_inverse(&theta);
        assert_eq!(lhat.0[2..], [vec![1], vec![0], vec![0]]);
        assert_eq!(f.fold_psi(&lhat).unwrap(), theta);
    }
}
