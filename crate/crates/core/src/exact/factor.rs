//! Rational roots and rational linear factors of forms.
//!
//! Only what the special-configuration checks need: linear forms with
//! rational coefficients dividing a ternary form, and ruling forms dividing
//! a bihomogeneous form. Anything whose rational-root candidates would need
//! factoring an integer beyond `MAX_FACTOR` is reported as undecided (`None`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Polynomial;
use super::rational::Rational;

const MAX_FACTOR: u64 = 1_000_000_000_000;

fn positive_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let mut n = n.abs().to_u64()?;
    if n > MAX_FACTOR {
        return None;
    }
    let mut primes: Vec<(u64, u32)> = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            primes.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        primes.push((n, 1));
    }
    let mut divs = vec![1u64];
    for (p, k) in primes {
        let mut next = Vec::with_capacity(divs.len() * (k as usize + 1));
        for d in &divs {
            let mut q = *d;
            for _ in 0..=k {
                next.push(q);
                q *= p;
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    Some(divs)
}

fn horner(coeffs: &[Rational], z: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * z + c)
}

/// Distinct rational roots (sorted) of `Σ coeffs[k] z^k`. The zero
/// polynomial has no well-defined root set and yields `Some(vec![])`.
pub fn rational_roots(coeffs: &[Rational]) -> Option<Vec<Rational>> {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let Some(top) = ints.iter().rposition(|c| !c.is_zero()) else {
        return Some(Vec::new());
    };
    let low = ints.iter().position(|c| !c.is_zero()).expect("nonzero exists");
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(Rational::zero());
    }
    if top > low {
        let trimmed: Vec<Rational> = coeffs[low..=top].to_vec();
        let ps = positive_divisors(&ints[low])?;
        let qs = positive_divisors(&ints[top])?;
        for p in &ps {
            for q in &qs {
                if p.gcd(q) != 1 {
                    continue;
                }
                for sign in [1i64, -1] {
                    let z = Rational::new(BigInt::from(*p) * sign, BigInt::from(*q));
                    if horner(&trimmed, &z).is_zero() {
                        roots.push(z);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Some(roots)
}

fn linear_form(nvars: usize, coeffs: &[(usize, Rational)]) -> Polynomial {
    Polynomial::from_terms(
        nvars,
        coeffs.iter().map(|(i, c)| {
            let mut e = vec![0; nvars];
            e[*i] = 1;
            (e, c.clone())
        }),
    )
}

/// Linear factors (normalized) of a binary form in variables `a`, `b`.
pub fn binary_linear_factors(f: &Polynomial, a: usize, b: usize) -> Option<Vec<Polynomial>> {
    let n = f.nvars();
    let mut out = Vec::new();
    if f.is_zero() {
        return Some(out);
    }
    if f.terms().keys().all(|e| e[a] > 0) {
        out.push(linear_form(n, &[(a, Rational::one())]));
    }
    // f(1, z) with a = 1, b = z
    let deg = f.degree_in(b).unwrap_or(0) as usize;
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (e, c) in f.terms() {
        coeffs[e[b] as usize] += c;
    }
    for z in rational_roots(&coeffs)? {
        // b − z·a vanishes at (1, z)
        out.push(linear_form(n, &[(b, Rational::one()), (a, -z)]).normalize());
    }
    out.sort_by(|x, y| x.terms().keys().cmp(y.terms().keys()).then_with(|| x.terms().values().cmp(y.terms().values())));
    out.dedup();
    Some(out)
}

/// Exponent `k` with `l^k | f` and `l^{k+1} ∤ f`.
pub fn multiplicity_of(f: &Polynomial, l: &Polynomial) -> u32 {
    let mut k = 0;
    let mut g = f.clone();
    while let Some(q) = g.div_exact(l) {
        if g.is_zero() {
            break;
        }
        g = q;
        k += 1;
    }
    k
}

fn univariate_in(f: &Polynomial, var: usize, fixed: &[(usize, Rational)]) -> Vec<Rational> {
    let mut g = f.clone();
    for (v, value) in fixed {
        g = g.specialize(*v, value);
    }
    let deg = g.degree_in(var).unwrap_or(0) as usize;
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (e, c) in g.terms() {
        coeffs[e[var] as usize] += c;
    }
    coeffs
}

/// All rational lines dividing a ternary form, with multiplicities.
pub fn linear_factors_p2(f: &Polynomial) -> Option<Vec<(Polynomial, u32)>> {
    assert_eq!(f.nvars(), 3);
    let mut candidates: Vec<Polynomial> = Vec::new();
    let x0 = linear_form(3, &[(0, Rational::one())]);
    let x1 = linear_form(3, &[(1, Rational::one())]);
    let mut reduced = f.clone();
    for l in [&x0, &x1] {
        let k = multiplicity_of(f, l);
        if k > 0 {
            candidates.push(l.clone());
            reduced = reduced.div_exact(&l.pow(k)).expect("divides");
        }
    }
    // lines without x2: they divide every x2-coefficient of f
    if let Some(g) = f.coefficients_in(2).into_iter().find(|g| !g.is_zero()) {
        candidates.extend(binary_linear_factors(&g, 0, 1)?);
    }
    // lines x2 + a x0 + b x1: −a and −b are roots of reduced(1,0,z), reduced(0,1,z)
    let ra = rational_roots(&univariate_in(&reduced, 2, &[(0, Rational::one()), (1, Rational::zero())]))?;
    let rb = rational_roots(&univariate_in(&reduced, 2, &[(0, Rational::zero()), (1, Rational::one())]))?;
    if reduced.degree_in(2).unwrap_or(0) > 0 {
        for za in &ra {
            for zb in &rb {
                candidates.push(
                    linear_form(3, &[(2, Rational::one()), (0, -za.clone()), (1, -zb.clone())]).normalize(),
                );
            }
        }
    }
    let mut out: Vec<(Polynomial, u32)> = Vec::new();
    for l in candidates {
        let l = l.normalize();
        if out.iter().any(|(m, _)| *m == l) {
            continue;
        }
        let k = multiplicity_of(f, &l);
        if k > 0 {
            out.push((l, k));
        }
    }
    Some(out)
}

/// Rational ruling forms dividing a bihomogeneous form on `(x0,x1;y0,y1)`:
/// `(x-forms, y-forms)` with multiplicities.
#[allow(clippy::type_complexity)]
pub fn ruling_factors_quadric(f: &Polynomial) -> Option<(Vec<(Polynomial, u32)>, Vec<(Polynomial, u32)>)> {
    assert_eq!(f.nvars(), 4);
    let mut result = (Vec::new(), Vec::new());
    for (side, (a, b), (c, d)) in [(0, (0, 1), (2, 3)), (1, (2, 3), (0, 1))] {
        // an x-form divides each coefficient of f in the y-monomials
        let mut coeff_forms: std::collections::BTreeMap<(u32, u32), Polynomial> = Default::default();
        for (e, v) in f.terms() {
            let mut pe = e.clone();
            pe[c] = 0;
            pe[d] = 0;
            coeff_forms.entry((e[c], e[d])).or_insert_with(|| Polynomial::zero(4)).add_term(pe, v.clone());
        }
        let Some(g) = coeff_forms.values().next() else {
            continue;
        };
        let mut found = Vec::new();
        for l in binary_linear_factors(g, a, b)? {
            let k = multiplicity_of(f, &l);
            if k > 0 {
                found.push((l, k));
            }
        }
        if side == 0 {
            result.0 = found;
        } else {
            result.1 = found;
        }
    }
    Some(result)
}
