//! Naive counters used as oracles. They share no code with the counting
//! routines under test beyond field arithmetic.

#![allow(dead_code)]

use sextics::curves::PlaneCurve;
use sextics::gf::{ExtField, FiniteField, PrimeField};
use sextics::split::LegendreCubic;
use sextics::Poly;

/// `squares[v]` = number of `y` with `y^2 = v`, for a field whose elements
/// are indexed `0..order`.
pub fn square_multiplicities_prime(p: u64) -> Vec<u64> {
    let mut sq = vec![0u64; p as usize];
    for y in 0..p {
        sq[(y * y % p) as usize] += 1;
    }
    sq
}

pub fn square_multiplicities_ext(field: &ExtField) -> Vec<u64> {
    let mut sq = vec![0u64; field.order() as usize];
    for i in 0..field.order() {
        let y = field.element(i);
        sq[field.index_of(field.mul(y, y)) as usize] += 1;
    }
    sq
}

fn infinity(f: &Poly, leading_is_square: bool) -> u64 {
    match f.degree() {
        Some(d) if d % 2 == 1 => 1,
        _ => 2 * leading_is_square as u64,
    }
}

/// Smooth-model count of `y^2 = f(x)` over F_p by counting solutions.
pub fn naive_hyperelliptic_prime(f: &Poly) -> u64 {
    let p = f.modulus();
    let sq = square_multiplicities_prime(p);
    let affine: u64 = (0..p).map(|x| sq[f.eval_raw(x) as usize]).sum();
    let lc = f.leading_coeff().value();
    affine + infinity(f, sq[lc as usize] > 0)
}

/// Smooth-model count of `y^2 = f(x)` over an extension field.
pub fn naive_hyperelliptic_ext(f: &Poly, field: &ExtField, sq: &[u64]) -> u64 {
    let affine: u64 = (0..field.order())
        .map(|i| sq[field.index_of(f.eval_in(field, field.element(i))) as usize])
        .sum();
    let lc = field.index_of(field.from_base(f.leading_coeff().value()));
    affine + infinity(f, sq[lc as usize] > 0)
}

pub fn naive_legendre_prime(e: &LegendreCubic) -> u64 {
    naive_hyperelliptic_prime(&e.rhs())
}

/// Projective zeros of a form over F_p by trying every `[x:y:z]`.
pub fn naive_plane_prime(c: &PlaneCurve) -> u64 {
    let p = c.modulus();
    let field = PrimeField::new(p).unwrap();
    let mut n = 0;
    for x in 0..p {
        for y in 0..p {
            n += (c.eval(&field, [x, y, 1]) == 0) as u64;
        }
        n += (c.eval(&field, [x, 1, 0]) == 0) as u64;
    }
    n + (c.eval(&field, [1, 0, 0]) == 0) as u64
}
