//! Binary forms over the rationals: gcd and exact rational roots.
//!
//! The rank-one pencil solver and the per-line quasi-vertex count both
//! reduce to finding the common projective zeros of a family of homogeneous
//! binary forms. Over `Q[s, t]` that common zero set is the zero set of the
//! gcd, and rational roots of forms of degree at most 2 come out exactly;
//! higher degrees (only reachable through the degenerate-line fallback) use
//! the rational root theorem.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::{q, Q};

/// Homogeneous binary form `sum_i coeffs[i] * s^i * t^(degree - i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinForm {
    coeffs: Vec<Q>,
}

/// Exact root report for a binary form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootReport {
    /// Rational projective roots `(s : t)`, canonicalized, deduplicated.
    pub rational: Vec<(Q, Q)>,
    /// Number of conjugate non-rational roots (counted over the complex
    /// numbers, with multiplicity).
    pub irrational_count: usize,
    /// For an irreducible quadratic factor: its coefficients `[c, b, a]`
    /// with `a u^2 + b u + c` in the affine parameter `u = s/t`.
    pub quadratic_minpoly: Option<[Q; 3]>,
    /// Discriminant of that quadratic factor.
    pub discriminant: Option<Q>,
}

impl BinForm {
    pub fn new(coeffs: Vec<Q>) -> Self {
        let mut f = BinForm { coeffs };
        f.trim();
        f
    }

    /// The quadratic `a s^2 + b s t + c t^2`.
    pub fn quadratic(a: Q, b: Q, c: Q) -> Self {
        BinForm::new(vec![c, b, a])
    }

    fn trim(&mut self) {
        // High-end zeros are meaningful (they encode divisibility by t), so
        // only the identically-zero form collapses.
        if self.coeffs.iter().all(Zero::is_zero) {
            self.coeffs.clear();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Multiplicity of the root `(1 : 0)`, i.e. the power of `t` dividing.
    fn t_multiplicity(&self) -> usize {
        let mut k = self.coeffs.len();
        while k > 0 && self.coeffs[k - 1].is_zero() {
            k -= 1;
        }
        self.coeffs.len() - k
    }

    /// Coefficients of the dehomogenization `p(u) = f(u, 1)`, low to high,
    /// trimmed of leading zeros.
    fn affine(&self) -> Vec<Q> {
        let mut v = self.coeffs.clone();
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    }

    pub fn eval(&self, s: &Q, t: &Q) -> Q {
        let deg = self.coeffs.len().saturating_sub(1);
        let mut acc = q(0);
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut term = c.clone();
            for _ in 0..i {
                term *= s.clone();
            }
            for _ in 0..(deg - i) {
                term *= t.clone();
            }
            acc += term;
        }
        acc
    }
}

fn poly_is_zero(p: &[Q]) -> bool {
    p.iter().all(Zero::is_zero)
}

fn poly_trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Remainder of univariate division, coefficients low to high.
fn poly_rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let b = poly_trim(b.to_vec());
    assert!(!poly_is_zero(&b));
    let mut r = poly_trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let factor = r[dr].clone() / lead.clone();
        for (i, bc) in b.iter().enumerate() {
            let idx = dr - db + i;
            let v = r[idx].clone() - factor.clone() * bc.clone();
            r[idx] = v;
        }
        r = poly_trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Monic gcd of univariate rational polynomials (low-to-high coefficients).
fn poly_gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut x = poly_trim(a.to_vec());
    let mut y = poly_trim(b.to_vec());
    while !poly_is_zero(&y) {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    if poly_is_zero(&x) {
        return x;
    }
    let lead = x.last().unwrap().clone();
    x.iter().map(|c| c.clone() / lead.clone()).collect()
}

/// Gcd of a family of binary forms. Zero forms are ignored; returns `None`
/// when every form is zero.
pub fn binform_gcd(forms: &[BinForm]) -> Option<BinForm> {
    let nonzero: Vec<&BinForm> = forms.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return None;
    }
    let t_mult = nonzero.iter().map(|f| f.t_multiplicity()).min().unwrap();
    let mut g: Vec<Q> = nonzero[0].affine();
    for f in &nonzero[1..] {
        g = poly_gcd(&g, &f.affine());
        if g.len() == 1 {
            break;
        }
    }
    // Re-homogenize; the shared t^k factor appears as k high-end zeros in
    // the s-power encoding.
    let mut coeffs = g;
    for _ in 0..t_mult {
        coeffs.push(q(0));
    }
    Some(BinForm { coeffs })
}

fn bigint_is_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let mag: BigUint = n.magnitude().clone();
    let root = mag.sqrt();
    if &root * &root == mag {
        Some(BigInt::from(root))
    } else {
        None
    }
}

/// Exact rational square root, if one exists.
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let num = bigint_is_square(x.numer())?;
    let den = bigint_is_square(x.denom())?;
    Some(Q::new(num, den))
}

fn canonical_projective_pair(s: Q, t: Q) -> (Q, Q) {
    if !t.is_zero() {
        (s / t.clone(), q(1))
    } else {
        (q(1), q(0))
    }
}

/// Positive divisors of a nonzero integer by trial division. Fixture
/// coefficients are small, so this stays cheap.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(1);
    loop {
        let dd = &d * &d;
        if dd > n {
            break;
        }
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// All rational projective roots of a binary form, with a count of the
/// remaining non-rational ones.
pub fn rational_roots(form: &BinForm) -> RootReport {
    let mut report = RootReport {
        rational: Vec::new(),
        irrational_count: 0,
        quadratic_minpoly: None,
        discriminant: None,
    };
    if form.is_zero() {
        return report;
    }
    if form.t_multiplicity() > 0 {
        report.rational.push((q(1), q(0)));
    }
    let p = form.affine();
    if p.len() <= 1 {
        return report;
    }
    // Factor out u^k (roots at (0 : 1)).
    let low = p.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        report.rational.push((q(0), q(1)));
    }
    let p = &p[low..];
    match p.len() - 1 {
        0 => {}
        1 => {
            let u = -p[0].clone() / p[1].clone();
            report.rational.push(canonical_projective_pair(u, q(1)));
        }
        2 => {
            let (c, b, a) = (p[0].clone(), p[1].clone(), p[2].clone());
            let disc = b.clone() * b.clone() - q(4) * a.clone() * c.clone();
            match rational_sqrt(&disc) {
                Some(root) => {
                    let two_a = q(2) * a.clone();
                    let u1 = (-b.clone() + root.clone()) / two_a.clone();
                    let u2 = (-b - root) / two_a;
                    report.rational.push(canonical_projective_pair(u1, q(1)));
                    if !disc.is_zero() {
                        report.rational.push(canonical_projective_pair(u2, q(1)));
                    }
                }
                None => {
                    report.irrational_count = 2;
                    report.quadratic_minpoly = Some([c, b, a]);
                    report.discriminant = Some(disc);
                }
            }
        }
        _ => {
            // Rational root theorem on the primitive integer model.
            let mut den_lcm = BigInt::from(1);
            for c in p {
                den_lcm = den_lcm.lcm(c.denom());
            }
            let ints: Vec<BigInt> = p
                .iter()
                .map(|c| c.numer() * (&den_lcm / c.denom()))
                .collect();
            let a0 = ints.first().unwrap().clone();
            let an = ints.last().unwrap().clone();
            let mut found = Vec::new();
            for num in divisors(&a0) {
                for den in divisors(&an) {
                    for sign in [1i64, -1] {
                        let cand = Q::new(&num * BigInt::from(sign), den.clone());
                        let mut acc = q(0);
                        for c in p.iter().rev() {
                            acc = acc * cand.clone() + c.clone();
                        }
                        if acc.is_zero() && !found.contains(&cand) {
                            found.push(cand);
                        }
                    }
                }
            }
            report.irrational_count = p.len() - 1 - found.len();
            for u in found {
                report.rational.push(canonical_projective_pair(u, q(1)));
            }
        }
    }
    report.rational.sort();
    report.rational.dedup();
    report
}
