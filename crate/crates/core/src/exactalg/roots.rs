//! Real root location for univariate polynomials.
//!
//! Float mode isolates roots by recursion on the derivative: between
//! consecutive critical points the polynomial is monotone, so each interval
//! holds at most one simple root (found by bisection) and a multiple root
//! shows up as a critical point where the value vanishes.
//!
//! Exact mode works on the square-free part with a Sturm sequence. Each
//! isolated root is then tested against every rational `k / q` whose
//! denominator `q` divides the leading coefficient of the primitive integer
//! form; roots found that way are returned exactly, the rest as rational
//! approximations of width at most [`ROOT_TOLERANCE`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::poly::Poly;
use super::scalar::{Rat, Scalar};
use crate::error::{Error, Result};

/// Bisection stops once a bracket is narrower than this.
pub const ROOT_TOLERANCE: f64 = 1e-12;

/// Leading coefficients above this bound are not factored for the rational
/// root search.
const MAX_FACTOR: u128 = 1 << 50;

/// All real roots of `p` in `[lo, hi]`, ascending, each listed once.
pub fn poly_real_roots<S: Scalar>(p: &Poly<S>, lo: S, hi: S) -> Result<Vec<S>> {
    if lo >= hi {
        return Err(Error::DegenerateInterval {
            lo: lo.to_f64(),
            hi: hi.to_f64(),
        });
    }
    if p.degree().unwrap_or(0) < 1 {
        return Err(Error::ConstantPolynomial);
    }
    if S::EXACT {
        let exact = p.map(|c| c.to_rat().expect("exact coefficient"));
        let lo = lo.to_rat().expect("exact bound");
        let hi = hi.to_rat().expect("exact bound");
        Ok(exact_roots(&exact, &lo, &hi)
            .iter()
            .map(S::from_rat)
            .collect())
    } else {
        let fp = p.to_f64();
        Ok(float_roots(&fp, lo.to_f64(), hi.to_f64())
            .into_iter()
            .map(S::from_f64)
            .collect())
    }
}

fn float_roots(p: &Poly<f64>, lo: f64, hi: f64) -> Vec<f64> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        let root = -p.coeff(0) / p.coeff(1);
        return if (lo..=hi).contains(&root) {
            vec![root]
        } else {
            Vec::new()
        };
    }
    let critical = float_roots(&p.derivative(), lo, hi);
    let mut knots = Vec::with_capacity(critical.len() + 2);
    knots.push(lo);
    knots.extend(critical.iter().copied().filter(|c| *c > lo && *c < hi));
    knots.push(hi);

    // Measured against the size of p on a unit neighbourhood: scaling at x
    // alone is homogeneous near 0 and hides a multiple root there.
    let vanishes =
        |x: f64| p.eval(&x).abs() <= 1e-9 * p.eval_scale(x.abs().max(1.0)).max(f64::MIN_POSITIVE);
    let zero_at: Vec<bool> = knots.iter().map(|&k| vanishes(k)).collect();
    let mut roots: Vec<f64> = knots
        .iter()
        .zip(&zero_at)
        .filter(|(_, &z)| z)
        .map(|(&k, _)| k)
        .collect();
    // A vanishing knot already accounts for the root next to it; bisecting
    // the adjacent window would only chase rounding noise.
    for (i, pair) in knots.windows(2).enumerate() {
        if zero_at[i] || zero_at[i + 1] {
            continue;
        }
        let (a, b) = (pair[0], pair[1]);
        let (fa, fb) = (eval_compensated(p, a), eval_compensated(p, b));
        if fa.signum() == fb.signum() {
            continue;
        }
        roots.push(bisect_f64(p, a, b, fa));
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * (1.0 + b.abs()));
    roots
}

fn bisect_f64(p: &Poly<f64>, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    while b - a > ROOT_TOLERANCE * 0.1 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = eval_compensated(p, mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// Horner's scheme with error-free transformations: the result is as
/// accurate as plain Horner run in twice the working precision, which keeps
/// bisection signs reliable next to clustered or multiple roots.
fn eval_compensated(p: &Poly<f64>, x: f64) -> f64 {
    let mut coeffs = p.coeffs().iter().rev();
    let Some(&lead) = coeffs.next() else {
        return 0.0;
    };
    let (mut s, mut c) = (lead, 0.0f64);
    for &a in coeffs {
        let prod = s * x;
        let prod_err = s.mul_add(x, -prod);
        let sum = prod + a;
        let back = sum - prod;
        let sum_err = (prod - (sum - back)) + (a - back);
        s = sum;
        c = c.mul_add(x, prod_err + sum_err);
    }
    s + c
}

fn exact_roots(p: &Poly<Rat>, lo: &Rat, hi: &Rat) -> Vec<Rat> {
    let sf = primitive_integer_form(&p.square_free());
    let sturm = sturm_chain(&sf);
    let lead = num_traits::Signed::abs(sf.leading().expect("nonzero").numer());
    let denominators = lead.to_u128().filter(|&l| l <= MAX_FACTOR).map(divisors);

    let mut roots = Vec::new();
    if sf.eval(lo).is_zero() {
        roots.push(lo.clone());
    }
    // Sturm counts roots in half-open intervals (a, b].
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let count = sign_variations(&sturm, &a) - sign_variations(&sturm, &b);
        match count {
            0 => {}
            1 => roots.push(refine_exact(&sf, a, b, denominators.as_deref())),
            _ => {
                let mid = (&a + &b) / Rat::from_i64(2);
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Exactly one root lies in `(a, b]`.
fn refine_exact(p: &Poly<Rat>, mut a: Rat, mut b: Rat, denominators: Option<&[u128]>) -> Rat {
    if p.eval(&b).is_zero() {
        return b;
    }
    let two = Rat::from_i64(2);
    let tol = Rat::from_f64(ROOT_TOLERANCE);
    let sign_a = p.eval(&a).is_positive();
    let lead = denominators.and_then(|d| d.last().copied()).unwrap_or(0);
    let search_width = (lead > 0).then(|| Rat::new(BigInt::one(), BigInt::from(lead) * 2));
    let mut searched = false;
    loop {
        if !searched {
            if let Some(width) = &search_width {
                if &b - &a <= *width {
                    searched = true;
                    if let Some(r) = rational_candidate(p, &a, &b, denominators.unwrap_or(&[])) {
                        return r;
                    }
                }
            }
        }
        if &b - &a <= tol && (searched || search_width.is_none()) {
            return (a + b) / two;
        }
        let mid = (&a + &b) / &two;
        let fm = p.eval(&mid);
        if fm.is_zero() {
            return mid;
        }
        if fm.is_positive() == sign_a {
            a = mid;
        } else {
            b = mid;
        }
    }
}

fn rational_candidate(p: &Poly<Rat>, a: &Rat, b: &Rat, denominators: &[u128]) -> Option<Rat> {
    for &q in denominators {
        let q = BigInt::from(q);
        let qa = a * Rat::from_integer(q.clone());
        let qb = b * Rat::from_integer(q.clone());
        let mut k = qa.ceil().to_integer();
        let last = qb.floor().to_integer();
        while k <= last {
            let cand = Rat::new(k.clone(), q.clone());
            if &cand > a && &cand <= b && p.eval(&cand).is_zero() {
                return Some(cand);
            }
            k += 1;
        }
    }
    None
}

/// Scales to integer coefficients with unit content and positive leading term.
fn primitive_integer_form(p: &Poly<Rat>) -> Poly<Rat> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut content = ints.iter().fold(BigInt::from(0), |acc, c| acc.gcd(c));
    if ints.last().is_some_and(num_traits::Signed::is_negative) {
        content = -content;
    }
    Poly::new(
        ints.into_iter()
            .map(|c| Rat::from_integer(c / &content))
            .collect(),
    )
}

fn sturm_chain(p: &Poly<Rat>) -> Vec<Poly<Rat>> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2]
            .div_rem(&chain[n - 1])
            .expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        chain.push(-r);
    }
    chain
}

fn sign_variations(chain: &[Poly<Rat>], x: &Rat) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|q| q.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Divisors of `n`, ascending.
fn divisors(n: u128) -> Vec<u128> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
