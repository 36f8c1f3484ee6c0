use orbitcalc::cones::*;
use orbitcalc::gqfam::*;
use orbitcalc::rat::{dot, qf, qi, to_f64, vscale, vsub, Q};
use orbitcalc::rootspace::{Par, RootDatum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

const GROUPS: [&str; 6] = ["a1", "a2", "a3", "c1", "c2", "c3"];

fn positive_x(rd: &RootDatum, rng: &mut ChaCha8Rng, q: Par) -> Vec<Q> {
    // positive combination of the coweights of a_Q^G: the open positive chamber
    let fd = rd.fundamental_data(q, rd.g()).unwrap();
    let mut x = vec![qi(0); rd.dim];
    for c in &fd.coweights {
        let k = qf(rand::Rng::gen_range(rng, 1..=6), rand::Rng::gen_range(rng, 1..=3));
        for t in 0..rd.dim {
            x[t] += &k * &c[t];
        }
    }
    x
}

#[test]
fn langlands_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for g in GROUPS {
        let rd = RootDatum::from_label(g).unwrap();
        for q in rd.all_parabolics() {
            for _ in 0..100 {
                let l = rd.random_regular(&mut rng, q, 7, 5);
                let mut s1 = 0.0;
                let mut s2 = 0.0;
                let mut scale: f64 = 1.0;
                for p in rd.containing(q) {
                    let e = rd.eps(p) as f64;
                    let t1 = e / (hat_theta(&rd, q, p, &l).unwrap() * theta(&rd, p, rd.g(), &l).unwrap());
                    let t2 = e / (theta(&rd, q, p, &l).unwrap() * hat_theta(&rd, p, rd.g(), &l).unwrap());
                    scale = scale.max(t1.abs()).max(t2.abs());
                    s1 += t1;
                    s2 += t2;
                }
                let expect = if q == rd.g() { 1.0 } else { 0.0 };
                assert!((s1 - expect).abs() < 1e-9 * scale, "{g} {q:?}");
                assert!((s2 - expect).abs() < 1e-9 * scale, "{g} {q:?}");
            }
        }
    }
}

#[test]
fn gamma_dprime_reflection() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for g in GROUPS {
        let rd = RootDatum::from_label(g).unwrap();
        for q in rd.all_parabolics() {
            let mut n = 0;
            while n < 1000 {
                let x = rd.random_in(&mut rng, q, 4, 3);
                let h = rd.random_in(&mut rng, q, 6, 5);
                if !off_walls(&rd, q, &h, &x) {
                    continue;
                }
                n += 1;
                let lhs = gamma_dprime(&rd, q, &h, &x);
                let rhs = rd.eps_rel(q, rd.g()) * gamma_prime(&rd, q, &vsub(&x, &h), &x);
                assert_eq!(lhs, rhs, "{g} {q:?} H={h:?} X={x:?}");
            }
        }
    }
}

#[test]
fn gamma_prime_zero_at_x_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for g in ["a2", "c2", "a3"] {
        let rd = RootDatum::from_label(g).unwrap();
        let z = vec![qi(0); rd.dim];
        for q in rd.all_parabolics().into_iter().filter(|&q| q != rd.g()) {
            for _ in 0..1000 {
                let h = rd.random_regular(&mut rng, q, 6, 5);
                assert_eq!(gamma_prime(&rd, q, &h, &z), 0);
            }
        }
    }
}

#[test]
fn compact_support_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for g in GROUPS {
        let rd = RootDatum::from_label(g).unwrap();
        let maxcw = rd.fundamental_coweights().iter().map(|c| to_f64(&dot(c, c)).sqrt()).fold(0.0, f64::max);
        for q in rd.all_parabolics().into_iter().filter(|&q| q != rd.g()) {
            let x = rd.random_in(&mut rng, q, 3, 2);
            let bound = to_f64(&dot(&x, &x)).sqrt() * (rd.rank as f64 + 1.0) * maxcw;
            let mut n = 0;
            while n < 10_000 / 8 {
                let h = rd.random_in(&mut rng, q, 40, 1);
                if to_f64(&dot(&h, &h)).sqrt() <= bound {
                    continue;
                }
                n += 1;
                assert_eq!(gamma_prime(&rd, q, &h, &x), 0);
            }
        }
    }
}

#[test]
fn v_weight_examples() {
    let rd = RootDatum::from_label("a1").unwrap();
    assert_eq!(v_weight(&rd, rd.g(), &[qi(0), qi(0)]).unwrap(), 1.0);
    let ac = rd.simple_coroots[0].clone();
    for t in [qf(1, 3), qi(1), qi(5)] {
        let v = v_weight(&rd, rd.p0(), &vscale(&ac, &t)).unwrap();
        assert!((v - to_f64(&t) * 2f64.sqrt()).abs() < 1e-12);
    }
    let rd = RootDatum::from_label("a2").unwrap();
    let x: Vec<Q> = rd.simple_coroots[0].iter().zip(&rd.simple_coroots[1]).map(|(a, b)| a + b).collect();
    let v = v_weight(&rd, rd.p0(), &x).unwrap();
    let mc = mc_v_weight(&rd, rd.p0(), &x, 1_000_000, 11);
    assert!((v - mc).abs() < 0.01 * v, "{v} vs {mc}");
}

#[test]
fn v_weight_matches_monte_carlo() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for g in GROUPS {
        let rd = RootDatum::from_label(g).unwrap();
        for q in rd.all_parabolics().into_iter().filter(|&q| q != rd.g()) {
            for i in 0..20 {
                let x = positive_x(&rd, &mut rng, q);
                let v = v_weight(&rd, q, &x).unwrap();
                let mc = mc_v_weight(&rd, q, &x, 1_000_000, 100 + i);
                assert!(v > 0.0);
                assert!((v - mc).abs() <= 0.01 * v, "{g} {q:?} X={x:?}: {v} vs {mc}");
            }
            // arbitrary X: the integrand changes sign, so compare on the scale of the support
            for i in 0..5 {
                let x = rd.random_in(&mut rng, q, 4, 3);
                let v = v_weight(&rd, q, &x).unwrap();
                let mc = mc_v_weight(&rd, q, &x, 1_000_000, 200 + i);
                let scale = v.abs().max(support_volume(&rd, q, &x));
                assert!((v - mc).abs() <= 0.01 * scale, "{g} {q:?} X={x:?}: {v} vs {mc}");
            }
        }
    }
}

fn support_volume(rd: &RootDatum, q: Par, x: &[Q]) -> f64 {
    let fd = rd.fundamental_data(q, rd.g()).unwrap();
    support_box(rd, q, x).iter().map(|(a, b)| b - a).product::<f64>() / fd.eta_hat()
}

#[test]
fn w_factor_formulas_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for g in GROUPS {
        let rd = RootDatum::from_label(g).unwrap();
        for p in rd.all_parabolics() {
            for _ in 0..100 / rd.all_parabolics().len() + 1 {
                let t = TruncationParam::new(rd.random_in(&mut rng, rd.p0(), 6, 3));
                let h = rd.random_in(&mut rng, p, 6, 3);
                let w = w_factor(&rd, p, &t, &h, 1e-9).unwrap();
                if p == rd.g() {
                    assert_eq!(w.direct, 1.0);
                }
            }
        }
    }
    let rd = RootDatum::from_label("a1").unwrap();
    let ac = rd.simple_coroots[0].clone();
    let t = TruncationParam::new(vscale(&ac, &qi(2)));
    let w = w_factor(&rd, rd.p0(), &t, &ac, 1e-9).unwrap();
    assert!((w.direct - 2f64.sqrt()).abs() < 1e-12);
    let z = TruncationParam::new(vec![qi(0); 2]);
    assert!(w_factor(&rd, rd.p0(), &z, &[qi(0), qi(0)], 1e-9).unwrap().direct.abs() < 1e-12);
}

#[test]
fn rank_one_fourier_transform() {
    // ∫_{H = s α̌, s > 0} e^{⟨λ,H⟩} dH = -1/θ(λ) for ⟨λ, α̌⟩ < 0
    let rd = RootDatum::from_label("a1").unwrap();
    let ac = rd.simple_coroots[0].clone();
    let len = to_f64(&dot(&ac, &ac)).sqrt();
    for c in [qf(-1, 2), qi(-1), qi(-3)] {
        let lam = vscale(&ac, &(c.clone() / qi(2)));
        let a = to_f64(&dot(&lam, &ac));
        let n = 200_000;
        let smax = 60.0 / a.abs();
        let h = smax / n as f64;
        let integral: f64 = (0..n).map(|i| (a * (i as f64 + 0.5) * h).exp() * h * len).sum();
        let th = theta(&rd, rd.p0(), rd.g(), &lam).unwrap();
        assert!((integral + 1.0 / th).abs() < 1e-6, "{integral} {th}");
    }
}

#[test]
fn recursion_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for g in ["a1", "a2", "c2", "a3", "c3"] {
        let rd = RootDatum::from_label(g).unwrap();
        for q in rd.all_parabolics() {
            let c = constant_family(&rd, q);
            assert!(c.check_recursion(&rd, Mode::Frugal, 20, &mut rng).unwrap().passes(1e-8));
            assert!(c.check_recursion(&rd, Mode::Cofrugal, 20, &mut rng).unwrap().passes(1e-8));
            let f = make_frugal(&rd, &random_exppoly(&rd, &mut rng, q, rd.g(), 2), q);
            let r = f.check_recursion(&rd, Mode::Frugal, 100, &mut rng).unwrap();
            assert!(r.passes(1e-8), "{g} {q:?} {r:?}");
            let h = make_cofrugal(&rd, &random_exppoly(&rd, &mut rng, q, rd.g(), 2), q);
            let r = h.check_recursion(&rd, Mode::Cofrugal, 100, &mut rng).unwrap();
            assert!(r.passes(1e-8), "{g} {q:?} {r:?}");
        }
    }
}

#[test]
fn splitting_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for g in ["a1", "a2", "c2", "a3", "c3"] {
        let rd = RootDatum::from_label(g).unwrap();
        for q in rd.all_parabolics() {
            let x = rd.random_in(&mut rng, q, 3, 2);
            let y = rd.random_in(&mut rng, q, 3, 2);
            let c = make_cofrugal(&rd, &ExpPoly::exp(x), q);
            let d = make_frugal(&rd, &ExpPoly::exp(y), q);
            let r = product_split(&rd, &c, &d, 100, &mut rng).unwrap();
            assert!(r.passes(1e-8), "{g} {q:?} {r:?}");
            let c = make_cofrugal(&rd, &random_exppoly(&rd, &mut rng, q, rd.g(), 2), q);
            let d = random_family(&rd, &mut rng, q);
            let r = product_split(&rd, &c, &d, 30, &mut rng).unwrap();
            assert!(r.passes(1e-8), "{g} {q:?} {r:?}");
            let one = constant_family(&rd, q);
            assert!(product_split(&rd, &c, &one, 30, &mut rng).unwrap().passes(1e-8));
        }
    }
}

#[test]
fn splitting_rejects_bad_precondition() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let rd = RootDatum::from_label("a2").unwrap();
    let q = rd.p0();
    let c = make_frugal(&rd, &ExpPoly::exp(rd.random_regular(&mut rng, q, 3, 1)), q);
    let d = make_cofrugal(&rd, &ExpPoly::exp(rd.random_regular(&mut rng, q, 3, 1)), q);
    assert!(product_split(&rd, &c, &d, 5, &mut rng).is_err());
}

#[test]
fn families_holomorphic_and_ray_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for g in GROUPS {
        let rd = RootDatum::from_label(g).unwrap();
        for q in rd.all_parabolics() {
            let f = random_family(&rd, &mut rng, q);
            f.check_compatible(&rd).unwrap();
            let mut first = None;
            for _ in 0..20 {
                let ray = rd.random_regular(&mut rng, q, 6, 4);
                let v = f.c_prime(&rd, &ray, 0, 1e-9).unwrap().value;
                let a = *first.get_or_insert(v);
                assert!((a - v).abs() < 1e-9 * a.abs().max(1.0), "{g} {q:?} {a} {v}");
            }
        }
    }
}

#[test]
fn restriction_and_descent() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for g in GROUPS {
        let rd = RootDatum::from_label(g).unwrap();
        for q in rd.all_parabolics() {
            let f = make_frugal(&rd, &random_exppoly(&rd, &mut rng, q, rd.g(), 2), q);
            let x = rd.random_in(&mut rng, q, 3, 2);
            let e = exp_family(&rd, q, rd.g(), &x);
            for p in rd.containing(q) {
                let r = f.restrict_to(&rd, p).unwrap();
                r.check_compatible(&rd).unwrap();
                assert!(r.is_frugal(&rd));
                let d = e.descend_to(&rd, p).unwrap();
                d.check_compatible(&rd).unwrap();
                let xp = rd.rel_proj(q, p).mul_vec(&x);
                let expect = exp_family(&rd, q, p, &xp);
                for r in rd.between(q, p) {
                    let pr = rd.proj(q);
                    // agree as functions of λ^P, the variables seen by the Levi of P
                    let lp = rd.rel_proj(q, p);
                    assert_eq!(d.get(r).compose(&lp), expect.get(r).compose(&lp).compose(pr));
                }
            }
            assert_eq!(f.descend_to(&rd, rd.g()).unwrap(), f);
            assert_eq!(f.restrict_to(&rd, q).unwrap(), f);
        }
    }
}

#[test]
fn theta_inversion_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for g in ["a2", "c2", "a3", "c3"] {
        let rd = RootDatum::from_label(g).unwrap();
        for q in rd.all_parabolics() {
            let vals: BTreeMap<Par, ExpPoly> =
                rd.containing(q).into_iter().map(|p| (p, random_exppoly(&rd, &mut rng, q, p, 2))).collect();
            let f = values_from_exppolys(&vals);
            let fwd = |p: Par, mu: &[Q]| theta_forward(&rd, q, &f, p, mu);
            let inv = |p: Par, mu: &[Q]| theta_inverse(&rd, q, &f, p, mu);
            let n = if g == "a2" { 100 } else { 10 };
            for _ in 0..n {
                let l = rd.random_regular(&mut rng, q, 5, 4);
                let direct = f(rd.g(), &l);
                assert_eq!(theta_inverse(&rd, q, &fwd, rd.g(), &l), direct, "{g}");
                assert_eq!(theta_forward(&rd, q, &inv, rd.g(), &l), direct, "{g}");
            }
            let zero = |_: Par, _: &[Q]| SymVal::zero();
            let l = rd.random_regular(&mut rng, q, 5, 4);
            assert_eq!(theta_forward(&rd, q, &zero, rd.g(), &l), SymVal::zero());
        }
    }
}

#[test]
fn measure_compatibility() {
    for g in GROUPS {
        let rd = RootDatum::from_label(g).unwrap();
        for q in rd.all_parabolics() {
            for p in rd.containing(q) {
                let (e1, h1) = rd.measure_constants(q, p).unwrap();
                let (e2, h2) = rd.measure_constants(p, rd.g()).unwrap();
                let (e3, h3) = rd.measure_constants(q, rd.g()).unwrap();
                assert_eq!(h1 * h2, h3, "{g}");
                assert_eq!(e1 * e2, e3, "{g}");
            }
        }
    }
}
