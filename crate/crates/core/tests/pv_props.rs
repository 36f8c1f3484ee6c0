use num_traits::{One, Zero};
use orbitcalc::linalg::{Mat, Subspace};
use orbitcalc::nilpotent::*;
use orbitcalc::orbitind::*;
use orbitcalc::pvspace::*;
use orbitcalc::rat::{is_rational_square, qf, qi, Q};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pv_of(name: &str) -> (MatrixLieAlgebra, Mat, PVSpace) {
    let (alg, x) = catalog_element(name).unwrap();
    let cd = canonical_data(&x, &alg).unwrap();
    let pv = build_pv(&cd, &alg).unwrap();
    (alg, x, pv)
}

/// Cayley transform of a random element of g_0: an element of L.
fn random_levi_element<R: Rng>(pv: &PVSpace, rng: &mut R) -> Mat {
    let n = pv.alg.n;
    let id = Mat::identity(n);
    loop {
        let mut w = Mat::zeros(n, n);
        for b in pv.levi_basis() {
            w = w.add(&b.scale(&qf(rng.gen_range(-2..=2), 3)));
        }
        let g = id.add(&w);
        if let (Some(inv), false) = (id.sub(&w).inverse(), g.det().is_zero()) {
            return inv.mul(&g);
        }
    }
}

fn act(pv: &PVSpace, g: &Mat, xi: &[Q]) -> Vec<Q> {
    let n = pv.alg.n;
    let mut z = Mat::zeros(n, n);
    for (c, b) in xi.iter().zip(&pv.levi.basis) {
        z = z.add(&Mat::unflatten(n, b).scale(c));
    }
    pv.project(&g.mul(&z).mul(&g.inverse().unwrap())).unwrap()
}

#[test]
fn dimensions_and_representation() {
    for (name, d) in [("gl3", 1), ("sp4-split", 3), ("sp4-aniso", 3), ("gl4", 4), ("sp6-split", 5), ("sp6-aniso", 5)] {
        let (_, _, pv) = pv_of(name);
        assert_eq!(pv.dim(), d, "{name}");
        assert!(pv.levi.is_representation(), "{name}");
        assert!(pv.unipotent.matrices.iter().all(|m| m.is_zero()), "{name}");
    }
}

#[test]
fn dense_orbit_examples() {
    for name in CATALOG {
        let (_, _, pv) = pv_of(name);
        let zero = vec![Q::zero(); pv.dim()];
        assert!(!dense_orbit_check(&pv, &zero).generic, "{name}");
        let c = dense_orbit_check(&pv, &pv.x_point().unwrap());
        assert!(c.generic, "{name}");
        assert_eq!(c.rank, pv.dim());
    }
    // a degenerate quadratic form in Quad(V0)
    let (_, _, pv) = pv_of("sp4-split");
    let disc = &catalog_invariants(&pv).unwrap()[0].poly;
    let mut found = 0;
    for i in 0..3 {
        let mut e = vec![Q::zero(); 3];
        e[i] = Q::one();
        if disc.eval(&e).is_zero() {
            assert!(!dense_orbit_check(&pv, &e).generic);
            found += 1;
        }
    }
    assert!(found > 0);
}

#[test]
fn catalog_invariant_counts_and_characters() {
    let expect = [
        ("gl3", vec!["coordinate"]),
        ("gl4", vec!["composition"]),
        ("sp4-split", vec!["discriminant"]),
        ("sp4-aniso", vec!["discriminant"]),
        ("sp6-split", vec!["discriminant", "composition"]),
        ("sp6-aniso", vec!["discriminant", "composition"]),
    ];
    for (name, names) in expect {
        let (_, _, pv) = pv_of(name);
        let inv = catalog_invariants(&pv).unwrap();
        assert_eq!(inv.iter().map(|i| i.name.as_str()).collect::<Vec<_>>(), names, "{name}");
        for i in &inv {
            assert_eq!(pv.levi.character_of(&i.poly).unwrap(), i.character, "{name}");
            assert!(i.character.iter().any(|c| !c.is_zero()), "{name}: trivial character");
        }
    }
    let (_, _, pv) = pv_of("gl3");
    let p = &catalog_invariants(&pv).unwrap()[0].poly;
    assert_eq!((p.degree(), p.terms.len()), (1, 1));
}

#[test]
fn invariance_integrates_to_the_group() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for name in CATALOG {
        let (_, _, pv) = pv_of(name);
        let x0 = pv.x_point().unwrap();
        for inv in catalog_invariants(&pv).unwrap() {
            for _ in 0..3 {
                let g = random_levi_element(&pv, &mut rng);
                let chi = inv.poly.eval(&act(&pv, &g, &x0)) / inv.poly.eval(&x0);
                for _ in 0..3 {
                    let xi: Vec<Q> = (0..pv.dim()).map(|_| qi(rng.gen_range(-4..=4))).collect();
                    assert_eq!(inv.poly.eval(&act(&pv, &g, &xi)), &chi * inv.poly.eval(&xi), "{name} {}", inv.name);
                }
            }
        }
    }
}

#[test]
fn regularity() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for name in ["gl3", "gl4", "sp4-split", "sp4-aniso"] {
        let (_, _, pv) = pv_of(name);
        for inv in catalog_invariants(&pv).unwrap() {
            assert!(regularity_check(&pv, &inv.poly, &mut rng).unwrap(), "{name}");
        }
    }
    for name in ["sp6-split", "sp6-aniso"] {
        let (_, _, pv) = pv_of(name);
        let inv = catalog_invariants(&pv).unwrap();
        let prod = product_invariant(&inv).unwrap();
        assert!(regularity_check(&pv, &prod.poly, &mut rng).unwrap(), "{name}");
        // neither factor alone has a dominant dp/p
        for i in &inv {
            assert!(!regularity_check(&pv, &i.poly, &mut rng).unwrap(), "{name} {}", i.name);
        }
    }
    let (_, _, pv) = pv_of("gl3");
    assert!(regularity_check(&pv, &orbitcalc::poly::Poly::zero(1), &mut rng).is_err());
}

#[test]
fn generic_tori() {
    for (name, d) in [("gl3", 1), ("sp4-split", 1), ("sp4-aniso", 0), ("gl4", 1), ("sp6-split", 0), ("sp6-aniso", 0)] {
        let (_, _, pv) = pv_of(name);
        let t = generic_torus(&pv, &pv.x_point().unwrap()).unwrap();
        assert_eq!(t.dim, d, "{name}");
        assert_eq!(t.action.len(), d);
    }
    let (_, _, pv) = pv_of("gl3");
    let t = generic_torus(&pv, &pv.x_point().unwrap()).unwrap();
    // V+/V- is the weight 0 space
    let w0 = t.action[0].iter().find(|w| w.weight == 0).unwrap();
    assert!(w0.homothety);
    let (_, _, pv) = pv_of("sp4-split");
    let t = generic_torus(&pv, &pv.x_point().unwrap()).unwrap();
    for w in &t.action[0] {
        assert_eq!(w.eigenvalues.len(), 2);
        assert!(!w.homothety);
    }
    assert!(generic_torus(&pv, &[Q::zero(), Q::zero(), Q::zero()]).is_err());
}

#[test]
fn modular_characters() {
    let (alg, x) = catalog_element("gl3").unwrap();
    let cd = canonical_data(&x, &alg).unwrap();
    let h = &cd.triple.h;
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                assert!(h.get(i, j).is_zero());
            }
        }
    }
    let du = modular_character(&alg, &cd, 1, None).unwrap();
    let n = alg.n;
    for (w, val) in cd.levi.basis().iter().zip(&du) {
        let w = Mat::unflatten(n, w);
        let mut expect = Q::zero();
        for i in 0..n {
            for j in 0..n {
                if h.get(i, i) > h.get(j, j) {
                    expect += w.get(i, i) - w.get(j, j);
                }
            }
        }
        assert_eq!(val, &expect);
    }
    for name in CATALOG {
        let (alg, x) = catalog_element(name).unwrap();
        let cd = canonical_data(&x, &alg).unwrap();
        let zero = modular_character(&alg, &cd, 2, Some(2)).unwrap();
        assert!(zero.iter().all(|c| c.is_zero()));
        let a = modular_character(&alg, &cd, 1, Some(2)).unwrap();
        let b = modular_character(&alg, &cd, 2, Some(3)).unwrap();
        let ab = modular_character(&alg, &cd, 1, Some(3)).unwrap();
        for ((x, y), z) in a.iter().zip(&b).zip(&ab) {
            assert_eq!(x + y, z.clone(), "{name}");
        }
        assert!(modular_character(&alg, &cd, 0, None).is_err());
    }
    // not stable under g_0
    let (alg, x) = catalog_element("gl4").unwrap();
    let cd = canonical_data(&x, &alg).unwrap();
    let one = Subspace::span(16, &cd.u1.basis()[..1]);
    assert!(modular_character_of(&alg, &cd, &one, &Subspace::zero(16)).is_err());
}

#[test]
fn sp4_discriminant_character_is_proportional_to_delta() {
    for name in ["sp4-split", "sp4-aniso"] {
        let (alg, x, pv) = pv_of(name);
        let chi = &catalog_invariants(&pv).unwrap()[0].character;
        let delta = modular_character(&alg, &pv.cd, 2, None).unwrap();
        let k = delta.iter().position(|d| !d.is_zero()).unwrap();
        let c = &chi[k] / &delta[k];
        assert_eq!(c, qf(2, 3), "{name}");
        for (a, b) in chi.iter().zip(&delta) {
            assert_eq!(a.clone(), &c * b);
        }
        let _ = x;
    }
}

#[test]
fn dense_class_projects_to_generic_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for name in CATALOG {
        let (alg, x, pv) = pv_of(name);
        let part = jordan_type(&x).unwrap();
        let mut hits = 0;
        for _ in 0..200 {
            let mut z = Mat::zeros(alg.n, alg.n);
            for b in pv.cd.u1.basis() {
                z = z.add(&Mat::unflatten(alg.n, b).scale(&qi(rng.gen_range(-3..=3))));
            }
            if jordan_type(&z).unwrap() == part {
                assert!(dense_orbit_check(&pv, &pv.project(&z).unwrap()).generic, "{name}");
                hits += 1;
                if hits == 20 {
                    break;
                }
            }
        }
        assert_eq!(hits, 20, "{name}");
    }
}

#[test]
fn invariants_vanish_off_the_dense_orbit() {
    for name in CATALOG {
        let (_, _, pv) = pv_of(name);
        let p = product_invariant(&catalog_invariants(&pv).unwrap()).unwrap().poly;
        let d = pv.dim();
        let mut non_generic = 0;
        for k in 0..3usize.pow(d as u32) {
            let xi: Vec<Q> = (0..d).map(|i| qi((k / 3usize.pow(i as u32) % 3) as i64 - 1)).collect();
            let generic = dense_orbit_check(&pv, &xi).generic;
            if !generic {
                non_generic += 1;
                assert!(p.eval(&xi).is_zero(), "{name} {xi:?}");
            } else {
                assert!(!p.eval(&xi).is_zero(), "{name} {xi:?}");
            }
        }
        assert!(non_generic >= 1, "{name}");
    }
}

#[test]
fn splitting_dimensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for name in CATALOG {
        let (alg, x, pv) = pv_of(name);
        let d = min_infl(&alg, &x, 50, DEFAULT_SEED).unwrap().diagram;
        let mut tested = 0;
        for v in &d.vertices {
            let np = match &v.ngamma {
                NGamma::Nilradical { target } => d.vertices[*target].parabolic.nilradical(&alg),
                NGamma::Explicit { space, .. } => space.clone(),
            };
            if !pv.cd.u1.contains_space(&np) {
                assert!(splitting_check(&pv, &np, &mut rng).is_err());
                continue;
            }
            let s = splitting_check(&pv, &np, &mut rng).unwrap();
            assert_eq!(s.dim_sub + s.dim_quot, pv.dim(), "{name} {}", v.label());
            assert!(s.sub_prehomogeneous && s.quot_prehomogeneous, "{name} {}", v.label());
            tested += 1;
        }
        assert!(tested > 0, "{name}");
    }
}

#[test]
fn tangent_spaces_of_gl4_maximal_parabolics_are_not_special() {
    let (alg, x) = catalog_element("gl4").unwrap();
    let d = enumerate_p_infl(&alg, &x, 0, DEFAULT_SEED).unwrap();
    for names in [["Ker X"], ["Im X"]] {
        let v = &d.vertices[d.find(&names).unwrap()];
        assert!(matches!(v.ngamma, NGamma::Nilradical { target } if d.vertices[target].names.is_empty()));
        let t = tangent_action(&alg, &v.parabolic, &Subspace::zero(16)).unwrap();
        assert_eq!(t.dim(), 4);
        assert!(t.is_representation());
        assert!(!t.special_test(4).unwrap());
        assert_eq!(t.relative_invariants(2).unwrap().len(), 1);
    }
}

#[test]
fn standard_representation_of_sl2_is_special() {
    let e = |i, j| Mat::unit(3, i, j);
    let acting = vec![e(0, 1), e(1, 0), e(0, 0).sub(&e(1, 1))];
    let top = Subspace::span(9, &[e(0, 2).flatten(), e(1, 2).flatten()]);
    let a = quotient_action(3, &acting, &top, &Subspace::zero(9), None).unwrap();
    assert!(a.is_representation());
    assert!(a.special_test(4).unwrap());
    let mut with_scalars = acting.clone();
    with_scalars.push(e(0, 0).add(&e(1, 1)));
    let b = quotient_action(3, &with_scalars, &top, &Subspace::zero(9), None).unwrap();
    assert!(b.special_test(4).unwrap());
}

#[test]
fn b_forms_domain() {
    let (alg, x) = catalog_element("gl3").unwrap();
    assert!(b_forms(&x, &alg).is_err());
    let (x, j) = sp_representative(&[4], &[1]).unwrap();
    let alg = MatrixLieAlgebra::sp(j).unwrap();
    assert!(b_forms(&x, &alg).is_err());
    for (name, split) in [("sp4-split", true), ("sp4-aniso", false), ("sp6-split", true), ("sp6-aniso", false)] {
        let (alg, x) = catalog_element(name).unwrap();
        let b = b_forms(&x, &alg).unwrap();
        assert_eq!(is_rational_square(&b.discriminant()), split, "{name}");
        assert_eq!(b.minus_gram.transpose(), b.minus_gram);
    }
}

#[test]
fn rational_root_test() {
    // (t - 1/2)(t + 3)(t^2 + 1)
    let p = vec![qf(-3, 2), qf(5, 2), qf(-1, 2), qf(5, 2), qi(1)];
    assert_eq!(rational_roots(&p).unwrap(), vec![qi(-3), qf(1, 2)]);
    let m = Mat::from_i64(2, 2, &[0, -1, 1, 0]);
    assert_eq!(minimal_polynomial(&m), vec![qi(1), qi(0), qi(1)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sp4_torus_splits_with_the_discriminant(c in prop::collection::vec(-5i64..=5, 3)) {
        let (_, _, pv) = pv_of("sp4-split");
        let xi: Vec<Q> = c.iter().map(|&v| qi(v)).collect();
        let disc = catalog_invariants(&pv).unwrap()[0].poly.eval(&xi);
        prop_assume!(!disc.is_zero());
        prop_assert!(dense_orbit_check(&pv, &xi).generic);
        let t = generic_torus(&pv, &xi).unwrap();
        prop_assert_eq!(t.dim == 1, is_rational_square(&disc));
    }

    #[test]
    fn gl_tori_are_one_dimensional(c in prop::collection::vec(-4i64..=4, 4)) {
        let (_, _, pv) = pv_of("gl4");
        let xi: Vec<Q> = c.iter().map(|&v| qi(v)).collect();
        prop_assume!(dense_orbit_check(&pv, &xi).generic);
        prop_assert_eq!(generic_torus(&pv, &xi).unwrap().dim, 1);
    }

    #[test]
    fn invariance_along_random_levi_elements(seed in 0u64..10_000, c in prop::collection::vec(-3i64..=3, 5)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for name in ["gl4", "sp6-split"] {
            let (_, _, pv) = pv_of(name);
            let xi: Vec<Q> = c[..pv.dim()].iter().map(|&v| qi(v)).collect();
            let x0 = pv.x_point().unwrap();
            let g = random_levi_element(&pv, &mut rng);
            for inv in catalog_invariants(&pv).unwrap() {
                let chi = inv.poly.eval(&act(&pv, &g, &x0)) / inv.poly.eval(&x0);
                prop_assert_eq!(inv.poly.eval(&act(&pv, &g, &xi)), &chi * inv.poly.eval(&xi));
            }
        }
    }
}
