//! Roots of cubics in the base field.
//!
//! Over the rationals the cubic is cleared to a monic integer cubic whose
//! integer roots are located exactly by bisection on its monotone pieces.
//! Over a prime field the distinct roots are split out of
//! `gcd(f, x^p − x)` by equal-degree factorization with deterministic shifts.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{FieldSpec, Scalar};

/// Distinct roots of `c[3]·x³ + c[2]·x² + c[1]·x + c[0]` in its field,
/// each with a flag telling whether it is a repeated root.
///
/// Panics if the leading coefficient is zero.
pub fn cubic_roots(c: &[Scalar; 4]) -> Vec<(Scalar, bool)> {
    assert!(!c[3].is_zero(), "cubic has zero leading coefficient");
    let field = c[3].field();
    let roots = match field {
        FieldSpec::Rationals => {
            let q: Vec<&BigRational> = c.iter().map(|s| s.as_rational().expect("rational field")).collect();
            rational_cubic_roots([q[0], q[1], q[2], q[3]]).into_iter().map(Scalar::Rational).collect::<Vec<_>>()
        }
        FieldSpec::PrimeField(_) => {
            let mut r = field_poly_roots(c.to_vec());
            r.sort_by_key(residue_key);
            r
        }
    };
    let three = field.int(3);
    let two = field.int(2);
    roots
        .into_iter()
        .map(|r| {
            let derivative = &(&(&three * &c[3]) * &r.square()) + &(&(&two * &c[2]) * &r) + c[1].clone();
            let repeated = derivative.is_zero();
            (r, repeated)
        })
        .collect()
}

fn residue_key(s: &Scalar) -> u64 {
    match s {
        Scalar::Residue(r) => r.value(),
        Scalar::Rational(_) => 0,
    }
}

fn rational_cubic_roots(c: [&BigRational; 4]) -> Vec<BigRational> {
    let lcm = c.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let a: Vec<BigInt> = c.iter().map(|q| (*q * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    // λ = μ / a₃ turns a₃λ³ + a₂λ² + a₁λ + a₀ into a monic integer cubic in μ.
    let b = a[2].clone();
    let cc = &a[1] * &a[3];
    let d = &a[0] * &a[3] * &a[3];
    integer_roots_monic_cubic(&b, &cc, &d).into_iter().map(|mu| BigRational::new(mu, a[3].clone())).collect()
}

/// Integer roots of `μ³ + b·μ² + c·μ + d`, in increasing order.
pub fn integer_roots_monic_cubic(b: &BigInt, c: &BigInt, d: &BigInt) -> Vec<BigInt> {
    let eval = |m: &BigInt| ((m + b) * m + c) * m + d;
    let bound = BigInt::one() + b.abs().max(c.abs()).max(d.abs());
    let lo = -&bound;
    let hi = bound;
    let mut found = BTreeSet::new();
    let disc = b * b - BigInt::from(3) * c;
    if !disc.is_positive() {
        monotone_search(&eval, lo, hi, &mut found);
    } else {
        // Critical points (−b ∓ √disc)/3 lie in windows of a few integers.
        let s = disc.sqrt();
        let three = BigInt::from(3);
        let one = BigInt::one();
        let minus_b = -b;
        let w1 = ((&minus_b - &s - &one).div_floor(&three) - &one, ceil_div(&(&minus_b - &s), &three) + &one);
        let w2 = ((&minus_b + &s).div_floor(&three) - &one, ceil_div(&(&minus_b + &s + &one), &three) + &one);
        for window in [&w1, &w2] {
            let mut m = window.0.clone();
            while m <= window.1 {
                if eval(&m).is_zero() {
                    found.insert(m.clone());
                }
                m += 1;
            }
        }
        monotone_search(&eval, lo, w1.0.clone(), &mut found);
        monotone_search(&eval, w1.1.clone(), w2.0.clone(), &mut found);
        monotone_search(&eval, w2.1, hi, &mut found);
    }
    found.into_iter().collect()
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// Finds the root of a strictly monotone function on `[lo, hi]`, if integral.
fn monotone_search(eval: &impl Fn(&BigInt) -> BigInt, mut lo: BigInt, mut hi: BigInt, found: &mut BTreeSet<BigInt>) {
    if lo > hi {
        return;
    }
    let mut f_lo = eval(&lo);
    let f_hi = eval(&hi);
    if f_lo.is_zero() {
        found.insert(lo.clone());
    }
    if f_hi.is_zero() {
        found.insert(hi.clone());
    }
    if f_lo.is_zero() || f_hi.is_zero() || f_lo.signum() == f_hi.signum() {
        return;
    }
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
        let f_mid = eval(&mid);
        if f_mid.is_zero() {
            found.insert(mid);
            return;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
}

// Dense polynomials over a prime field, lowest degree first, no trailing zeros.

type Poly = Vec<Scalar>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    p
}

fn monic(p: Poly) -> Poly {
    let inv = p.last().and_then(Scalar::inv).expect("nonzero polynomial");
    p.iter().map(|c| c * &inv).collect()
}

fn poly_rem(a: &Poly, m: &Poly) -> Poly {
    let mut r = trim(a.clone());
    let lead_inv = m.last().and_then(Scalar::inv).expect("nonzero modulus");
    while r.len() >= m.len() && !r.is_empty() {
        let shift = r.len() - m.len();
        let factor = r.last().expect("nonempty") * &lead_inv;
        for (i, mc) in m.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&factor * mc);
        }
        r = trim(r);
    }
    r
}

fn poly_div(a: &Poly, m: &Poly) -> Poly {
    let mut r = trim(a.clone());
    let field = m[0].field();
    let lead_inv = m.last().and_then(Scalar::inv).expect("nonzero divisor");
    if r.len() < m.len() {
        return Vec::new();
    }
    let mut quot = vec![field.zero(); r.len() - m.len() + 1];
    while r.len() >= m.len() && !r.is_empty() {
        let shift = r.len() - m.len();
        let factor = r.last().expect("nonempty") * &lead_inv;
        for (i, mc) in m.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&factor * mc);
        }
        quot[shift] = factor;
        r = trim(r);
    }
    trim(quot)
}

fn poly_mul_mod(a: &Poly, b: &Poly, m: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let field = m[0].field();
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    poly_rem(&out, m)
}

fn poly_pow_mod(base: &Poly, mut exp: u64, m: &Poly) -> Poly {
    let field = m[0].field();
    let mut acc = poly_rem(&vec![field.one()], m);
    let mut b = poly_rem(base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, m);
        }
        b = poly_mul_mod(&b, &b, m);
        exp >>= 1;
    }
    acc
}

fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        monic(a)
    }
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let field = a.first().or(b.first()).expect("nonempty").field();
    let n = a.len().max(b.len());
    let get = |p: &Poly, i: usize| p.get(i).cloned().unwrap_or_else(|| field.zero());
    trim((0..n).map(|i| &get(a, i) - &get(b, i)).collect())
}

/// Distinct roots of a polynomial over a prime field.
fn field_poly_roots(f: Poly) -> Vec<Scalar> {
    let f = monic(trim(f));
    let field = f[0].field();
    let p = field.modulus().expect("prime field");
    let x = vec![field.zero(), field.one()];
    let xp = poly_pow_mod(&x, p, &f);
    let split = poly_gcd(&f, &poly_sub(&xp, &x));
    let mut roots = Vec::new();
    split_linear(split, p, &mut roots);
    roots
}

/// `g` is squarefree and a product of distinct linear factors.
fn split_linear(g: Poly, p: u64, out: &mut Vec<Scalar>) {
    match g.len() {
        0 | 1 => {}
        2 => out.push(-&g[0]),
        _ => {
            let field = g[0].field();
            // Brute force when shifts could fail to separate roots in tiny fields.
            if p < 64 {
                out.extend(
                    field
                        .elements()
                        .expect("prime field")
                        .filter(|r| g.iter().rev().fold(field.zero(), |acc, c| &(&acc * r) + c).is_zero()),
                );
                return;
            }
            let one = vec![field.one()];
            for a in 0..p {
                let shifted = vec![field.int(a as i64), field.one()];
                let h = poly_pow_mod(&shifted, (p - 1) / 2, &g);
                let d = poly_gcd(&g, &poly_sub(&h, &one));
                if d.len() > 1 && d.len() < g.len() {
                    let rest = poly_div(&g, &d);
                    split_linear(d, p, out);
                    split_linear(rest, p, out);
                    return;
                }
            }
            unreachable!("some shift separates distinct roots");
        }
    }
}
