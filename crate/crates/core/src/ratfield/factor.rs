//! Trial factorization of a polynomial into affine-linear factors.
//!
//! A linear factor is located by restricting the polynomial to a line
//! parallel to one coordinate axis, finding a rational root `q` of the
//! restriction, and reading the hyperplane through `q` off the gradient of a
//! suitable derivative at `q`. Every candidate is confirmed by exact division,
//! so a failed search only ever reports "not a product of linear forms".

use super::linform::{Affine, LinForm};
use super::poly::MPoly;
use super::{q, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

const ATTEMPTS: u64 = 12;

/// Writes `p = c · ∏ forms`, or returns `None` if `p` is not a product of
/// affine-linear forms over the rationals.
pub fn factor_linear(p: &MPoly) -> Option<(Q, Vec<LinForm>)> {
    let mut rest = p.clone();
    let mut forms = Vec::new();
    loop {
        if let Some(c) = rest.as_constant() {
            return (!c.is_zero()).then_some((c, forms));
        }
        let form = find_factor(&rest)?;
        rest = rest.div_linear(form.lead_slot(), &form.rest_mpoly(rest.nvars()))?;
        forms.push(form);
    }
}

fn find_factor(p: &MPoly) -> Option<LinForm> {
    let nvars = p.nvars();
    if p.total_degree() == Some(1) {
        let mut a = Affine::default();
        for (m, c) in p.terms() {
            match m.exps().iter().position(|&e| e == 1) {
                Some(s) => a = a + Affine::term(s, c.clone()),
                None => a = a + c.clone(),
            }
        }
        return a.canonical().ok().map(|(_, f)| f);
    }
    let x = (0..nvars).find(|&s| p.contains(s))?;
    let mut seed = 0x9e37_79b9_7f4a_7c15u64;
    for attempt in 0..ATTEMPTS {
        let mut point: Vec<Q> = (0..nvars)
            .map(|_| {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407 + attempt);
                q(((seed >> 33) % 19) as i64 - 9)
            })
            .collect();
        let mut line = p.clone();
        for (s, v) in point.iter().enumerate() {
            if s != x {
                line = line.eval_slot(s, v);
            }
        }
        let uni: Vec<Q> = line
            .split_in(x)
            .iter()
            .map(|c| c.as_constant().expect("restriction to a line is univariate"))
            .collect();
        for r in rational_roots(&uni) {
            point[x] = r;
            if let Some(f) = hyperplane_through(p, x, &point) {
                if p.div_linear(f.lead_slot(), &f.rest_mpoly(nvars)).is_some() {
                    return Some(f);
                }
            }
        }
    }
    None
}

fn hyperplane_through(p: &MPoly, x: usize, point: &[Q]) -> Option<LinForm> {
    let nvars = p.nvars();
    let mut h = p.clone();
    for _ in 0..=p.degree_in(x) {
        let grad: Vec<Q> = (0..nvars).map(|s| h.derivative(s).eval(point)).collect();
        if grad.iter().any(|g| !g.is_zero()) {
            let mut a = Affine::default();
            for (s, g) in grad.iter().enumerate() {
                if !g.is_zero() {
                    a = a + Affine::term(s, g.clone()) + (-(g * &point[s]));
                }
            }
            return a.canonical().ok().map(|(_, f)| f);
        }
        h = h.derivative(x);
    }
    None
}

fn eval_uni(c: &[Q], x: &Q) -> Q {
    c.iter().rev().fold(Q::zero(), |acc, k| acc * x + k)
}

/// Exact rational roots of a univariate polynomial (coefficients by
/// ascending power), each listed once.
pub fn rational_roots(coeffs: &[Q]) -> Vec<Q> {
    let mut c: Vec<Q> = coeffs.to_vec();
    while c.last().map(|k| k.is_zero()).unwrap_or(false) {
        c.pop();
    }
    let mut roots: Vec<Q> = Vec::new();
    while c.len() > 1 {
        if c[0].is_zero() {
            if !roots.contains(&Q::zero()) {
                roots.push(Q::zero());
            }
            c.remove(0);
            continue;
        }
        let Some(r) = find_one_root(&c) else { break };
        if !roots.contains(&r) {
            roots.push(r.clone());
        }
        c = deflate(&c, &r);
    }
    roots
}

fn deflate(c: &[Q], r: &Q) -> Vec<Q> {
    let n = c.len() - 1;
    let mut out = vec![Q::zero(); n];
    let mut carry = Q::zero();
    for k in (1..=n).rev() {
        carry = &c[k] + carry * r;
        out[k - 1] = carry.clone();
    }
    out
}

/// Laguerre iteration from above the Cauchy bound; converges for polynomials
/// with only real roots. The floating-point estimate is turned into exact
/// candidates through its continued-fraction convergents.
fn find_one_root(c: &[Q]) -> Option<Q> {
    let f: Vec<f64> = c.iter().map(|k| k.to_f64().unwrap_or(f64::NAN)).collect();
    let n = f.len() - 1;
    let lead = f[n];
    let bound = 1.0 + f[..n].iter().map(|k| (k / lead).abs()).fold(0.0, f64::max);
    let mut x = bound;
    for _ in 0..500 {
        let (mut p, mut dp, mut d2p) = (f[n], 0.0, 0.0);
        for k in (0..n).rev() {
            d2p = d2p * x + 2.0 * dp;
            dp = dp * x + p;
            p = p * x + f[k];
        }
        if p == 0.0 {
            break;
        }
        let g = dp / p;
        let h = g * g - d2p / p;
        let nf = n as f64;
        let disc = ((nf - 1.0) * (nf * h - g * g)).max(0.0).sqrt();
        let denom = if g >= 0.0 { g + disc } else { g - disc };
        if denom == 0.0 {
            break;
        }
        let step = nf / denom;
        x -= step;
        if step.abs() <= 1e-15 * x.abs().max(1.0) {
            break;
        }
    }
    if !x.is_finite() {
        return None;
    }
    convergents(x).into_iter().find(|r| eval_uni(c, r).is_zero())
}

fn convergents(x: f64) -> Vec<Q> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        out.push(Q::new(h2.clone(), k2.clone()));
        if k2.abs() > BigInt::from(10_000_000_000i64) {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_products() {
        let c = vec![q(6), q(-5), q(1)];
        let mut r = rational_roots(&c);
        r.sort();
        assert_eq!(r, vec![q(2), q(3)]);
        let c = vec![Q::new(1.into(), 4.into()), q(-1), q(1)];
        assert_eq!(rational_roots(&c), vec![Q::new(1.into(), 2.into())]);
    }

    #[test]
    fn factors_product_of_forms() {
        let n = 4;
        let l1 = Affine::var(1) - Affine::var(2) + q(1);
        let l2 = Affine::var(1) + Affine::var(3) * q(2);
        let l3 = Affine::var(0);
        let p = l1.to_mpoly(n).mul(&l1.to_mpoly(n)).mul(&l2.to_mpoly(n)).mul(&l3.to_mpoly(n)).scale(&q(7));
        let (c, forms) = factor_linear(&p).unwrap();
        let mut back = MPoly::constant(n, c);
        for f in &forms {
            back = back.mul(&f.to_mpoly(n));
        }
        assert_eq!(back, p);
        assert_eq!(forms.len(), 4);
    }

    #[test]
    fn rejects_irreducible_quadratic() {
        let n = 2;
        let p = MPoly::var(n, 0).pow(2).add(&MPoly::var(n, 1).pow(2)).add(&MPoly::one(n));
        assert!(factor_linear(&p).is_none());
    }
}
