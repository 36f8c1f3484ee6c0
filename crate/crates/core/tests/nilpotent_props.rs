use orbitcalc::linalg::{Mat, Subspace};
use orbitcalc::nilpotent::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn conj(g: &Mat, x: &Mat) -> Mat {
    g.mul(x).mul(&g.inverse().unwrap())
}

#[test]
fn catalog_flags_match_formulas() {
    for name in CATALOG {
        let (alg, x) = catalog_element(name).unwrap();
        let r = flag_formula_check(&x, &alg).unwrap();
        assert!(r.passed(), "{name}: {:?}", r.checks);
    }
}

#[test]
fn catalog_grading_dimensions() {
    // (dim u, dim u', dim u'')
    let expect = [("gl3", (3, 1, 0)), ("sp4-split", (3, 3, 0)), ("sp4-aniso", (3, 3, 0))];
    for (name, (du, du1, du2)) in expect {
        let (alg, x) = catalog_element(name).unwrap();
        let cd = canonical_data(&x, &alg).unwrap();
        assert_eq!((cd.u.dim(), cd.u1.dim(), cd.u2.dim()), (du, du1, du2), "{name}");
    }
    for (name, pv) in [("gl3", 1), ("sp4-split", 3), ("gl4", 4), ("sp6-split", 5), ("sp6-aniso", 5)] {
        let (alg, x) = catalog_element(name).unwrap();
        let cd = canonical_data(&x, &alg).unwrap();
        assert_eq!(cd.u1.dim() - cd.u2.dim(), pv, "{name}");
    }
}

#[test]
fn grading_structure() {
    for name in CATALOG {
        let (alg, x) = catalog_element(name).unwrap();
        let n = alg.n;
        let cd = canonical_data(&x, &alg).unwrap();
        assert!(cd.grading[&2].contains(&x.flatten()), "{name}: X ∉ g_2");
        let uu = bracket_space(n, &cd.u, &cd.u);
        let uu1 = bracket_space(n, &cd.u, &cd.u1);
        assert!(cd.u1.contains_space(&uu), "{name}");
        assert!(cd.u2.contains_space(&uu1), "{name}");
        if cd.grading.contains_key(&1) {
            assert_eq!(uu, cd.u1, "{name}: [u,u] = u'");
            assert_eq!(uu1, cd.u2, "{name}: [u,u'] = u''");
        } else {
            // even grading: u = u', and [u,u] only reaches the degrees above 2
            assert_eq!(cd.u, cd.u1, "{name}");
            assert_eq!(uu, cd.u2, "{name}: [u,u] = u''");
        }
        if let Some(j) = alg.form() {
            let f = &cd.flag;
            for i in 0..f.len() {
                assert_eq!(f[i].perp(j), f[f.len() - 1 - i], "{name}: self-duality");
            }
        }
    }
}

#[test]
fn triples_valid_on_random_conjugates() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for name in CATALOG {
        let (alg, x) = catalog_element(name).unwrap();
        for _ in 0..50 {
            let g = alg.random_group_element(&mut rng);
            assert!(alg.preserves_form(&g));
            let xg = conj(&g, &x);
            let t = jm_triple(&xg, &alg).unwrap();
            assert!(t.is_valid());
            assert!(alg.contains(&t.h) && alg.contains(&t.y));
        }
    }
}

#[test]
fn canonical_data_independent_of_triple() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for name in CATALOG {
        let (alg, x) = catalog_element(name).unwrap();
        let base = canonical_data(&x, &alg).unwrap();
        for _ in 0..5 {
            let t = jm_triple_with(&x, &alg, Some(&mut rng)).unwrap();
            let cd = canonical_data_from(t, &alg).unwrap();
            assert_eq!(cd.q, base.q);
            assert_eq!(cd.u, base.u);
            assert_eq!(cd.u1, base.u1);
            assert_eq!(cd.u2, base.u2);
            assert_eq!(cd.flag, base.flag);
        }
    }
}

#[test]
fn canonical_data_equivariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for name in CATALOG {
        let (alg, x) = catalog_element(name).unwrap();
        let base = canonical_data(&x, &alg).unwrap();
        for _ in 0..20 {
            let g = alg.random_group_element(&mut rng);
            let cd = canonical_data(&conj(&g, &x), &alg).unwrap();
            let c = conjugation_map(&g);
            assert_eq!(cd.q, base.q.image(&c));
            assert_eq!(cd.u, base.u.image(&c));
            assert_eq!(cd.u1, base.u1.image(&c));
            assert_eq!(cd.u2, base.u2.image(&c));
            let moved: Vec<Subspace> = base.flag.iter().map(|s| s.image(&g)).collect();
            assert_eq!(cd.flag, moved);
        }
    }
}

#[test]
fn weight_filtration_matches_h_filtration() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let gl_parts: Vec<Vec<usize>> = vec![vec![2, 1], vec![3, 1], vec![2, 2], vec![3, 2, 1], vec![4, 1, 1], vec![2, 2, 2]];
    for p in gl_parts {
        let n: usize = p.iter().sum();
        let alg = MatrixLieAlgebra::gl(n);
        let x = gl_representative(&p);
        let g = alg.random_group_element(&mut rng);
        let xg = conj(&g, &x);
        assert_eq!(canonical_data(&xg, &alg).unwrap().flag, weight_filtration(&xg), "{p:?}");
    }
    for p in [vec![2, 1, 1], vec![4, 2], vec![3, 3], vec![2, 2, 1, 1], vec![6]] {
        let (x, j) = sp_representative(&p, &[]).unwrap();
        let alg = MatrixLieAlgebra::sp(j).unwrap();
        assert_eq!(jordan_type(&x).unwrap(), p);
        assert_eq!(canonical_data(&x, &alg).unwrap().flag, weight_filtration(&x), "{p:?}");
    }
}

#[test]
fn gl3_and_sp4_examples() {
    let alg = MatrixLieAlgebra::gl(3);
    let t = jm_triple(&gl_representative(&[2, 1]), &alg).unwrap();
    let mut ev: Vec<i64> = integer_eigenspaces(&t.h, 6).unwrap().iter().flat_map(|(k, s)| std::iter::repeat_n(*k, s.dim())).collect();
    ev.sort();
    assert_eq!(ev, vec![-1, 0, 1]);
    let (alg, x) = catalog_element("sp4-split").unwrap();
    assert_eq!(jordan_type(&x).unwrap(), vec![2, 2]);
    let t = jm_triple(&x, &alg).unwrap();
    assert!(alg.contains(&t.h));
    let ev = integer_eigenspaces(&t.h, 8).unwrap();
    assert_eq!(ev.keys().copied().collect::<Vec<_>>(), vec![-1, 1]);
    assert_eq!(ev[&1].dim(), 2);
}
