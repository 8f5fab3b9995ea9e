mod common;

use common::*;
use sextics::curves::{
    count_hyperelliptic, count_legendre_cubic, count_plane_projective, count_plane_projective_fp,
    PlaneCurve,
};
use sextics::families::{classify_bound, genus10_ok, genus6_ok, BoundClass, FamilyContext};
use sextics::gf::{make_ext_field, FieldElement, PrimeField};
use sextics::poly::{build_f_ab, build_w_components};
use sextics::split::{admissible_splits, find_split, quotient_curves};

#[test]
fn character_sums_match_solution_counts() {
    for p in [7u64, 11, 13, 31] {
        let field = PrimeField::new(p).unwrap();
        for a in 0..p {
            for b in 0..p {
                let f = build_f_ab(field.elem(a), field.elem(b));
                if f.degree() == Some(6) && f.is_squarefree() {
                    assert_eq!(
                        count_hyperelliptic(&f, &field).unwrap(),
                        naive_hyperelliptic_prime(&f),
                        "p={p} a={a} b={b}"
                    );
                }
            }
        }
    }
}

#[test]
fn split_identity_over_prime_field() {
    for p in [11u64, 17, 19, 23] {
        let field = PrimeField::new(p).unwrap();
        for a in 0..p {
            for b in 0..p {
                if !genus6_ok(a, b, p) {
                    continue;
                }
                let f = build_f_ab(field.elem(a), field.elem(b));
                let d = naive_hyperelliptic_prime(&f) as i64;
                for sr in admissible_splits(&f) {
                    let (es, et) = quotient_curves(&sr);
                    let e = naive_legendre_prime(&es) as i64 + naive_legendre_prime(&et) as i64;
                    assert_eq!(
                        d,
                        e - p as i64 - 1,
                        "p={p} a={a} b={b} ordering {:?}",
                        sr.ordering()
                    );
                }
            }
        }
    }
}

#[test]
fn split_identity_over_quadratic_extension() {
    for p in [7u64, 11, 13] {
        let base = PrimeField::new(p).unwrap();
        let f2 = make_ext_field(p, 2).unwrap();
        let sq = square_multiplicities_ext(&f2);
        for a in 0..p {
            for b in 0..p {
                if !genus6_ok(a, b, p) {
                    continue;
                }
                let f = build_f_ab(base.elem(a), base.elem(b));
                let Ok(sr) = find_split(&f) else { continue };
                let (es, et) = quotient_curves(&sr);
                let q = (p * p) as i64;
                let d = naive_hyperelliptic_ext(&f, &f2, &sq) as i64;
                let e =
                    count_legendre_cubic(&es, &f2) as i64 + count_legendre_cubic(&et, &f2) as i64;
                assert_eq!(d, e - q - 1, "p={p} a={a} b={b}");
            }
        }
    }
}

#[test]
fn published_elliptic_counts() {
    let cases = [
        (11, 30, 59, 60),
        (20, 21, 23, 24),
        (247, 811, 1327, 1400),
        (247, 1084, 1327, 1400),
    ];
    for (a, lh, p, n) in cases {
        let e =
            sextics::LegendreCubic::new(FieldElement::new(a, p), FieldElement::new(lh, p)).unwrap();
        assert_eq!(naive_legendre_prime(&e), n);
        assert_eq!(count_legendre_cubic(&e, &PrimeField::new(p).unwrap()), n);
    }
}

#[test]
fn genus_two_count_for_444_469() {
    let field = PrimeField::new(1327).unwrap();
    let f = build_f_ab(field.elem(444), field.elem(469));
    assert_eq!(naive_hyperelliptic_prime(&f), 1472);
    assert_eq!(3 * 1472 - 2 * 1327 - 2, 1760);
}

#[test]
fn fast_plane_count_matches_enumeration() {
    for p in [7u64, 13, 19, 23] {
        let field = PrimeField::new(p).unwrap();
        for (a, b) in [(0, 0), (1, 1), (5, 17 % p), (p - 1, 2), (3, p - 3)] {
            let w = PlaneCurve::wiman_sextic(field.elem(a), field.elem(b));
            let n = naive_plane_prime(&w);
            assert_eq!(count_plane_projective(&w, &field), n);
            assert_eq!(count_plane_projective_fp(&w, &field), n);
        }
    }
}

#[test]
fn w_two_models_agree() {
    for p in [7u64, 11, 13, 19, 23] {
        let ctx = FamilyContext::new(p).unwrap();
        for a in 0..p {
            for b in 0..p {
                if !genus10_ok(a, b, p) {
                    continue;
                }
                let r = ctx.count_w(a, b, 1).unwrap().report;
                let w = PlaneCurve::wiman_sextic(ctx.field().elem(a), ctx.field().elem(b));
                assert_eq!(
                    r.count,
                    Some(naive_plane_prime(&w) as i128),
                    "p={p} a={a} b={b}"
                );
            }
        }
    }
}

#[test]
fn w_components_of_5_17() {
    let p = 23;
    let field = PrimeField::new(p).unwrap();
    let w = build_w_components(field.elem(5), field.elem(17));
    assert_eq!(naive_hyperelliptic_prime(&w.v1_rhs), 24);
    assert_eq!(naive_plane_prime(&w.v2), 24);
    let f2 = make_ext_field(p, 2).unwrap();
    let sq = square_multiplicities_ext(&f2);
    // Jac(V3) is supersingular too: its F_{p^2} count is maximal for genus 2
    assert_eq!(
        naive_hyperelliptic_ext(&w.v3_rhs, &f2, &sq),
        529 + 1 + 4 * 23
    );
}

#[test]
fn table_rows_are_below_serre() {
    for (p, n) in [(19u128, 72i128), (29, 102), (97, 246)] {
        assert_eq!(classify_bound(n, p, 10).unwrap(), BoundClass::Below);
    }
}
