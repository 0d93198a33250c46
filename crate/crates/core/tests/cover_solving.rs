//! End-to-end solving of the catalog cover problems.

use hypertrans::algebra::poly::Poly;
use hypertrans::algebra::ratfunc::RationalFunction;
use hypertrans::algebra::QuadExt;
use hypertrans::covers::problems::*;
use hypertrans::covers::{is_belyi, ramification_profile, riemann_hurwitz, solve_cover, Fiber, FieldSpec};

fn expected_quintic_a() -> RationalFunction {
    // 64 z (1-z-z^2)^5 / ((1-z^2)(1+4z-z^2)^5)
    let num = &Poly::from_ints(&[0, 64]) * &Poly::from_ints(&[1, -1, -1]).pow(5);
    let den = &Poly::from_ints(&[1, 0, -1]) * &Poly::from_ints(&[1, 4, -1]).pow(5);
    RationalFunction::new(num, den)
}

fn expected_quintic_b() -> RationalFunction {
    // -64 z (1+z-z^2)^5 / ((1-z^2)(1-4z-z^2)^5)
    let num = &Poly::from_ints(&[0, -64]) * &Poly::from_ints(&[1, 1, -1]).pow(5);
    let den = &Poly::from_ints(&[1, 0, -1]) * &Poly::from_ints(&[1, -4, -1]).pow(5);
    RationalFunction::new(num, den)
}

#[test]
fn quintic_pair_solves_to_both_maps() {
    let t0 = std::time::Instant::now();
    let problem = quintic_pair_problem();
    let out = solve_cover(&problem).unwrap();
    eprintln!("quintic: {} solutions, {} notices in {:?}", out.solutions.len(), out.notices.len(), t0.elapsed());
    for n in &out.notices {
        eprintln!("  notice: {n}");
    }
    for s in &out.solutions {
        eprintln!("  solution: {:?}", s.assignment);
        eprintln!("  map: {}", s.map);
    }
    let maps: Vec<&RationalFunction> = out.solutions.iter().map(|s| &s.map).collect();
    assert!(maps.contains(&&expected_quintic_a()), "first quintic map found");
    assert!(maps.contains(&&expected_quintic_b()), "second quintic map found");
    assert_eq!(maps.len(), 2, "exactly the two quintic maps");
}

#[test]
fn cubic_symmetric_unique_solution() {
    let out = solve_cover(&cubic_symmetric_problem()).unwrap();
    eprintln!("cubic symmetric: {} solutions", out.solutions.len());
    for s in &out.solutions {
        eprintln!("  {:?}", s.assignment);
    }
    assert_eq!(out.solutions.len(), 1);
    let a = &out.solutions[0].assignment;
    let get = |n: &str| a.iter().find(|(k, _)| k == n).unwrap().1.clone();
    assert_eq!(get("A"), QuadExt::from_rational(hypertrans::algebra::rational::rat(16, 27)));
    assert_eq!(get("a"), QuadExt::from_rational(hypertrans::algebra::rational::rat(1, 3)));
    assert_eq!(get("b"), QuadExt::from_rational(hypertrans::algebra::rational::rat(-1, 3)));
    // map = 16 z^3 / ((1+z)(3-z)^3)
    let num = Poly::from_ints(&[0, 0, 0, 16]);
    let den = &Poly::from_ints(&[1, 1]) * &Poly::from_ints(&[3, -1]).pow(3);
    assert_eq!(out.solutions[0].map, RationalFunction::new(num, den));
}

#[test]
fn triple_cover_map() {
    let out = solve_cover(&triple_cover_problem()).unwrap();
    eprintln!("triple: {} solutions", out.solutions.len());
    for s in &out.solutions {
        eprintln!("  {:?}  map {}", s.assignment, s.map);
    }
    assert_eq!(out.solutions.len(), 1);
    // -27 z^2 (1-z) / (1-9z)
    let num = &Poly::from_ints(&[0, 0, -27]) * &Poly::from_ints(&[1, -1]);
    let den = Poly::from_ints(&[1, -9]);
    assert_eq!(out.solutions[0].map, RationalFunction::new(num, den));
}

#[test]
fn quadruple_cover_map() {
    let out = solve_cover(&quadruple_cover_problem()).unwrap();
    eprintln!("quadruple: {} solutions, notices:", out.solutions.len());
    for n in &out.notices {
        eprintln!("  notice: {n}");
    }
    for s in &out.solutions {
        eprintln!("  {:?}  map {}", s.assignment, s.map);
    }
    assert_eq!(out.solutions.len(), 1);
    // -64 z^3 / ((1-z)^3 (1-9z))
    let num = Poly::from_ints(&[0, 0, 0, -64]);
    let den = &Poly::from_ints(&[1, -1]).pow(3) * &Poly::from_ints(&[1, -9]);
    assert_eq!(out.solutions[0].map, RationalFunction::new(num, den));
}

#[test]
fn rotation_cubic_conjugate_pair() {
    let out = solve_cover(&rotation_cubic_problem()).unwrap();
    eprintln!("rotation cubic: {} solutions", out.solutions.len());
    for s in &out.solutions {
        eprintln!("  {:?}", s.assignment);
    }
    assert_eq!(out.solutions.len(), 2);
    let alpha = QuadExt::sqrt_d(-3).unwrap();
    let scaled = &QuadExt::from_i64(3) * &alpha;
    let avals: Vec<QuadExt> = out
        .solutions
        .iter()
        .map(|s| s.assignment.iter().find(|(k, _)| k == "A").unwrap().1.clone())
        .collect();
    assert!(avals.contains(&scaled));
    assert!(avals.contains(&-&scaled));
}

#[test]
fn quotient_cubic_normalisation() {
    let out = solve_cover(&quotient_cubic_problem()).unwrap();
    eprintln!("quotient cubic: {} solutions", out.solutions.len());
    for s in &out.solutions {
        eprintln!("  {:?}", s.assignment);
    }
    // both cube roots of unity appear; c = 3(g - g^2) for each
    assert_eq!(out.solutions.len(), 2);
    for s in &out.solutions {
        let get = |n: &str| s.assignment.iter().find(|(k, _)| k == n).unwrap().1.clone();
        let g = get("g");
        let c = get("c");
        let g2 = &g * &g;
        let expect = &QuadExt::from_i64(3) * &(&g - &g2);
        assert_eq!(c, expect, "normalisation constant is 3(g - g^2)");
        assert_eq!(get("K"), QuadExt::one());
    }
}

#[test]
fn degree_ten_pair_over_sqrt_minus_two() {
    let t0 = std::time::Instant::now();
    let out = solve_cover(&degree_ten_problem()).unwrap();
    eprintln!("degree ten: {} solutions in {:?}", out.solutions.len(), t0.elapsed());
    for n in &out.notices {
        eprintln!("  notice: {n}");
    }
    for s in &out.solutions {
        eprintln!("  {:?}", s.assignment);
        eprintln!("  map {}", s.map);
    }
    // expected map: -4(1+B)^4 z (1+(-7+4B)z^2/3)^4 / ((1+z)(1-3z)(1+(4+2B)z-(1+2B)z^2)^4)
    let beta = QuadExt::sqrt_d(-2).unwrap();
    let expected = |beta: &QuadExt| -> RationalFunction {
        let third = QuadExt::from_rational(hypertrans::algebra::rational::rat(1, 3));
        let c_quad = &(&QuadExt::from_i64(-7) + &(&QuadExt::from_i64(4) * beta)) * &third;
        let p1 = Poly::new(vec![QuadExt::one(), QuadExt::zero(), c_quad]);
        let minus4_1pb4 = {
            let b1 = &QuadExt::one() + beta;
            &QuadExt::from_i64(-4) * &b1.powi(4).unwrap()
        };
        let num = &Poly::new(vec![QuadExt::zero(), minus4_1pb4]) * &p1.pow(4);
        let q = Poly::new(vec![
            QuadExt::one(),
            &QuadExt::from_i64(4) + &(&QuadExt::from_i64(2) * beta),
            -&(&QuadExt::one() + &(&QuadExt::from_i64(2) * beta)),
        ]);
        let den = &(&Poly::from_ints(&[1, 1]) * &Poly::from_ints(&[1, -3])) * &q.pow(4);
        RationalFunction::new(num, den)
    };
    let maps: Vec<&RationalFunction> = out.solutions.iter().map(|s| &s.map).collect();
    assert!(maps.contains(&&expected(&beta)), "principal-branch map found");
    assert!(maps.contains(&&expected(&-&beta)), "conjugate-branch map found");
}

#[test]
fn degree_ten_rejected_candidate_has_no_solutions() {
    let t0 = std::time::Instant::now();
    let out = solve_cover(&degree_ten_rejected_problem()).unwrap();
    eprintln!(
        "degree ten rejected: {} solutions, {} notices in {:?}",
        out.solutions.len(),
        out.notices.len(),
        t0.elapsed()
    );
    for n in &out.notices {
        eprintln!("  notice: {n}");
    }
    assert!(out.solutions.is_empty());
}
