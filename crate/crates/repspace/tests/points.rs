mod common;

use common::*;
use models::{build_g1r0, build_multiplicative, QuiverSpec};
use nalgebra::DMatrix;
use ncalg::{parse_element, Letter};
use repspace::*;

#[test]
fn cotangent_loop_orthogonal_point() {
    let q = loop_quiver(O).lambda("x", 1);
    let ctx = cotangent(&q);
    let p = sample_point(&ctx, &twisted(&[3], &[O]), 11).unwrap();
    let alg = ctx.alg();
    let x = p.matrix(alg.gen_id("x").unwrap());
    assert_eq!((x.nrows(), x.ncols()), (3, 3));
    let phi_x = p.eval(ctx.phi.as_ref().unwrap().image(alg.gen_id("x").unwrap())).unwrap();
    assert!(max_abs(&(phi_x - x.transpose())) < 1e-15);
    assert!(p.twist_error(ctx.phi.as_ref().unwrap()).unwrap().0 < 1e-15);
}

#[test]
fn groupoid_symplectic_point() {
    let ctx = one_arrow(Sp, Sp);
    let p = sample_point(&ctx, &twisted(&[4, 4], &[Sp, Sp]), 5).unwrap();
    let alg = ctx.alg();
    let a = p.matrix(alg.gen_id("a").unwrap());
    let block = a.view((0, 4), (4, 4)).into_owned();
    let om = omega(4);
    let err = max_abs(&(&block * &om * block.transpose() * om.transpose() - DMatrix::identity(4, 4)));
    assert!(err < 1e-12, "{err}");
    assert!(p.twist_error(ctx.phi.as_ref().unwrap()).unwrap().0 < 1e-12);
}

#[test]
fn groupoid_orthogonal_point_is_orthogonal() {
    let ctx = one_arrow(O, O);
    let p = sample_point(&ctx, &twisted(&[3, 3], &[O, O]), 5).unwrap();
    for (g, at) in [(0, (0, 3)), (1, (3, 0))] {
        let m = p.matrix(g).view(at, (3, 3)).into_owned();
        assert!(max_abs(&(&m * m.transpose() - DMatrix::identity(3, 3))) < 1e-12);
    }
}

#[test]
fn sampling_is_deterministic() {
    let ctx = cotangent(&a2_quiver(O, Sp));
    let dims = twisted(&[3, 2], &[O, Sp]);
    let (p, q) = (sample_point(&ctx, &dims, 42).unwrap(), sample_point(&ctx, &dims, 42).unwrap());
    for (a, b) in p.matrices().iter().zip(q.matrices()) {
        assert!(a.iter().zip(b.iter()).all(|(x, y)| x.to_bits() == y.to_bits()));
    }
    let r = sample_point(&ctx, &dims, 43).unwrap();
    assert_ne!(p.matrices(), r.matrices());
}

#[test]
fn gl_mode_sampling() {
    let ctx = build_g1r0().unwrap();
    let p = sample_point(&ctx, &TypedDims::gl(vec![3]), 1).unwrap();
    for m in p.matrices() {
        assert!(cond(m) < 1e8);
    }
}

#[test]
fn idempotents_and_inverses() {
    let ctx = one_arrow(O, O);
    let p = sample_point(&ctx, &twisted(&[2, 3], &[O, O]), 3);
    // invertible arrow between blocks of different sizes
    assert!(matches!(p, Err(RepError::Unsupported(_))));

    let p = sample_point(&ctx, &twisted(&[3, 3], &[O, O]), 3).unwrap();
    let alg = ctx.alg();
    let e1 = p.eval(&alg.idem(0)).unwrap();
    let mut expected = DMatrix::zeros(6, 6);
    for i in 0..3 {
        expected[(i, i)] = 1.0;
    }
    assert_eq!(e1, expected);
    let aa = parse_element(alg, "a*a^-1").unwrap();
    assert!(max_abs(&(p.eval(&aa).unwrap() - &expected)) < 1e-12);
}

#[test]
fn evaluation_is_multiplicative_and_traces_cycle() {
    let ctx = build_g1r0().unwrap();
    let p = sample_point(&ctx, &twisted(&[4], &[Sp]), 9).unwrap();
    let alg = ctx.alg();
    let x = parse_element(alg, "x*y^-1 + 2*x").unwrap();
    let y = parse_element(alg, "y*x*y - x^-1").unwrap();
    let lhs = p.eval(&(&x * &y)).unwrap();
    let rhs = p.eval(&x).unwrap() * p.eval(&y).unwrap();
    assert!(max_abs(&(lhs - rhs)) < 1e-10);
    let (a, b) = (p.trace(&(&x * &y)).unwrap(), p.trace(&(&y * &x)).unwrap());
    assert!((a - b).abs() < 1e-10 * a.abs().max(1.0));
}

#[test]
fn unassigned_and_bad_imports() {
    let ctx = one_arrow(O, O);
    let dims = twisted(&[2, 2], &[O, O]);
    let err = RepPoint::from_matrices(ctx.alg(), dims.clone(), vec![DMatrix::zeros(4, 4)], 0).unwrap_err();
    assert!(matches!(err, RepError::Unassigned(ref g) if g == "a^*"));
    let mut m = DMatrix::zeros(4, 4);
    m[(0, 0)] = 1.0;
    let err = RepPoint::from_matrices(ctx.alg(), dims, vec![m.clone(), m], 0).unwrap_err();
    assert!(matches!(err, RepError::Import(_)));

    let other = build_multiplicative(&QuiverSpec::new(&["1", "2", "3"]).arrow("a", "1", "2").arrow("b", "2", "3")).unwrap();
    let p = sample_point(&ctx, &twisted(&[2, 2], &[O, O]), 0).unwrap();
    let b = other.alg().letter(Letter::new(3)).unwrap();
    assert!(matches!(p.eval(&ncalg::Element::from_word(b)), Err(RepError::Unassigned(_))));
}

#[test]
fn json_round_trip() {
    let ctx = cotangent(&a2_quiver(Sp, O));
    let p = sample_point(&ctx, &twisted(&[2, 3], &[Sp, O]), 77).unwrap();
    let text = serde_json::to_string(&p.to_json()).unwrap();
    let back = RepPoint::from_json(ctx.alg(), &serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back.seed(), 77);
    assert_eq!(back.dims(), p.dims());
    for (a, b) in p.matrices().iter().zip(back.matrices()) {
        assert!(max_abs(&(a - b)) < 1e-15);
    }
    assert!(back.twist_error(ctx.phi.as_ref().unwrap()).unwrap().0 < 1e-12);
    // A complex entry cannot be imported into the real representation.
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["generators"]["a"][0] = serde_json::json!([0.0, 1.0]);
    assert!(RepPoint::from_json(ctx.alg(), &v).is_err());
}

#[test]
fn structure_group_action_preserves_twist() {
    use rand::SeedableRng;
    let ctx = cotangent(&a2_quiver(O, Sp));
    let p = sample_point(&ctx, &twisted(&[3, 4], &[O, Sp]), 2).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    let g = sample_structure_group(&mut rng, p.tables());
    let theta = p.tables().theta_matrix_f64();
    assert!(max_abs(&(&g * &theta * g.transpose() * theta.transpose() - DMatrix::identity(7, 7))) < 1e-10);
    let q = p.acted(&g).unwrap();
    assert!(q.twist_error(ctx.phi.as_ref().unwrap()).unwrap().0 < 1e-10);
}
