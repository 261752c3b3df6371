use semiglue::gluing::{build_rho, can_glue, verify_gluing, Gluability, GluingProblem, Verdict};
use semiglue::groebner::{buchberger, ideal_equal, minimal_generators, toric_ideal, Binomial, MonomialOrder};
use semiglue::GeneratorSet;

fn gens(rows: &[&[u64]]) -> GeneratorSet {
    GeneratorSet::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn point(b: &[u64]) -> GeneratorSet {
    GeneratorSet::new(b.len(), vec![b.to_vec()]).unwrap()
}

fn binomial(p: &GluingProblem, x: &[u64], y: &[u64]) -> Binomial {
    p.binomial(x, y).unwrap()
}

fn ex_cm() -> GeneratorSet {
    gens(&[&[5, 3, 2, 0], &[0, 2, 3, 5]])
}

fn line() -> GeneratorSet {
    gens(&[&[11, 17, 25, 19], &[11, 17, 25, 19]])
}

#[test]
fn d6_example_extra_generators() {
    let a = gens(&[&[7, 6, 3, 0], &[0, 2, 8, 9]]);
    let p = GluingProblem::new(a.clone(), point(&[3, 4]), 1, 1).unwrap();
    let rho = binomial(&p, &[0, 3, 0, 2], &[6]);
    let cert = verify_gluing(&p, &rho).unwrap();
    assert_eq!(cert.verdict, Verdict::NotGluing);
    let gb_c = cert.gb_c.as_ref().unwrap();
    let order = gb_c.order().clone();
    let n = p.p() + p.q();
    let ia = toric_ideal(&a, &MonomialOrder::grevlex(4)).unwrap();
    let mut sum: Vec<Binomial> = ia.elements().iter().map(|e| e.embed(0, n)).collect();
    sum.push(rho.clone());
    let sum_gb = buchberger(&sum, &order);
    // x2 x4^2 y - x3^3, x1^3 x4^2 y - x2^3 x3^2, x3^2 y^5 - x1^3 x4^4
    let mk = |plus: [u32; 5], minus: [u32; 5]| Binomial::from_exponents(&plus, &minus).unwrap();
    let extra = [
        mk([0, 1, 0, 2, 1], [0, 0, 3, 0, 0]),
        mk([3, 0, 0, 2, 1], [0, 3, 2, 0, 0]),
        mk([0, 0, 2, 0, 5], [3, 0, 0, 4, 0]),
    ];
    for e in &extra {
        assert!(gb_c.contains(e), "{e:?} not in I_C");
        assert!(!sum_gb.contains(e), "{e:?} already in I_A + <rho>");
    }
    let mut all = sum.clone();
    all.extend(extra.iter().cloned());
    assert!(ideal_equal(&all, gb_c.elements(), &order));
    assert!(cert.extra_generators.iter().any(|e| e.format(&p.names()) == "x2*x4^2*y1 - x3^3"
        || e.format(&p.names()) == "x3^3 - x2*x4^2*y1"));

    let p6 = GluingProblem::new(a, point(&[3, 4]), 1, 6).unwrap();
    let rho6 = build_rho(&p6).unwrap().rho;
    assert_eq!(verify_gluing(&p6, &rho6).unwrap().verdict, Verdict::Gluing);
}

#[test]
fn iterated_line_k1_2() {
    let p = GluingProblem::new(ex_cm(), line(), 2, 5).unwrap();
    // 2 is not in <11, 17, 25, 19>
    assert!(build_rho(&p).is_err());
    let rho1 = binomial(&p, &[11, 0, 0, 11], &[2, 0, 0, 0]);
    let cert = verify_gluing(&p, &rho1).unwrap();
    assert_eq!(cert.verdict, Verdict::NotGluing);
    let gb_c = cert.gb_c.unwrap();
    let rhos = [
        binomial(&p, &[11, 0, 0, 11], &[2, 0, 0, 0]),
        Binomial::from_exponents(&[0, 0, 0, 0, 0, 1, 0, 0], &[3, 0, 0, 3, 1, 0, 0, 0]).unwrap(),
        Binomial::from_exponents(&[0, 0, 0, 0, 0, 0, 1, 0], &[4, 0, 0, 4, 0, 1, 0, 0]).unwrap(),
        Binomial::from_exponents(&[0, 0, 0, 0, 0, 0, 0, 1], &[1, 0, 0, 1, 0, 1, 0, 0]).unwrap(),
    ];
    for r in &rhos {
        assert!(gb_c.contains(r), "{r:?}");
    }
    let n = 8;
    let ia = toric_ideal(&ex_cm(), &MonomialOrder::grevlex(4)).unwrap();
    let mut gens: Vec<Binomial> = ia.elements().iter().map(|e| e.embed(0, n)).collect();
    gens.extend(rhos.iter().cloned());
    assert!(ideal_equal(&gens, gb_c.elements(), gb_c.order()));
}

#[test]
fn iterated_line_k1_26() {
    let p = GluingProblem::new(ex_cm(), line(), 26, 5).unwrap();
    let rho = binomial(&p, &[2, 0, 0, 2], &[3, 0, 0, 1]);
    let cert = verify_gluing(&p, &rho).unwrap();
    assert_eq!(cert.verdict, Verdict::NotGluing);
    let gb_c = cert.gb_c.unwrap();
    let c = p.c().unwrap();
    let mins = minimal_generators(gb_c.elements(), &c.column_sums()).unwrap();
    assert_eq!(mins.len(), 13);
    let special = rho;
    assert!(gb_c.contains(&special));
    // not generated by elements of strictly smaller degree
    let w = c.column_sums();
    let deg = special.plus.weighted_degree(&w);
    let lower: Vec<Binomial> = gb_c.elements().iter().filter(|e| e.plus.weighted_degree(&w) < deg).cloned().collect();
    assert!(!buchberger(&lower, gb_c.order()).contains(&special));
}

#[test]
fn twisted_cubic_pair() {
    let a = gens(&[&[4, 3, 2, 1], &[0, 1, 2, 3], &[0, 0, 0, 0]]);
    let b = gens(&[&[3, 3, 3, 3], &[3, 2, 1, 0], &[0, 1, 2, 3]]);
    let p = GluingProblem::new(a.clone(), b.clone(), 1, 1).unwrap();
    let rho = binomial(&p, &[1, 0, 0, 2], &[2, 0, 0, 0]);
    let cert = verify_gluing(&p, &rho).unwrap();
    assert_eq!(cert.verdict, Verdict::Gluing);
    assert!(cert.checks.iter().all(|c| c.passed), "{:?}", cert.checks);
    let cubic = toric_ideal(&gens(&[&[3, 2, 1, 0], &[0, 1, 2, 3]]), &MonomialOrder::grevlex(4)).unwrap();
    assert_eq!(cubic.len(), 3);
    for side in [&a, &b] {
        assert_eq!(toric_ideal(side, &MonomialOrder::grevlex(4)).unwrap(), cubic);
    }
    assert!(matches!(can_glue(&a, &b).unwrap(), Gluability::Unknown(_)));
}
