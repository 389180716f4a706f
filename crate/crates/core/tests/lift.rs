use sl2jets::equiv::{check_points, IsoTable};
use sl2jets::exactnum::{falling, GaussianRational, Poly, RatFun};
use sl2jets::jets::FlatConnectionSpec;
use sl2jets::liftop::{
    apply, as_jet_functional, check_lift_naturality, compose_functional, lift_composite, lift_symbol, symbol,
    verify_symbol_model, DiffOperator,
};
use sl2jets::moebius::Sampler;
use sl2jets::Error;

fn q(s: &str) -> GaussianRational {
    s.parse().unwrap()
}

fn p(cs: &[i64]) -> Poly {
    Poly::from_ints(cs)
}

fn as_ratfuns(m: &[Vec<Poly>]) -> Vec<Vec<RatFun>> {
    m.iter().map(|r| r.iter().cloned().map(RatFun::from_poly).collect()).collect()
}

#[test]
fn scalar_lift_has_prescribed_symbol() {
    let table = IsoTable::new();
    let triv = FlatConnectionSpec::trivial(1);
    for (k, n, l) in [(1, -1, -1), (1, 2, 3), (2, -1, -2), (2, 3, 2), (3, -2, 4)] {
        let theta = vec![vec![p(&[1, 2, 0, 1])]];
        let d = lift_symbol(&table, &theta, k, n, l, &triv).unwrap();
        assert_eq!(d.order(), k);
        let s = symbol(&d);
        assert_eq!(s.entries, as_ratfuns(&theta), "k={k} n={n} l={l}");
        assert_eq!(s.weight, l);
        assert_eq!(d.target_weight(), l + n - 2 * k as i64);
    }
}

#[test]
fn composite_symbol_is_scaled_by_falling_factorial() {
    let table = IsoTable::new();
    let triv = FlatConnectionSpec::trivial(1);
    let (k, n, l) = (2, -1, -1);
    let theta = vec![vec![p(&[3, 1])]];
    let d = lift_composite(&table, &theta, k, n, l, &triv).unwrap();
    let expected = RatFun::from_poly(p(&[3, 1])).scale(&falling(n, k).inv().unwrap());
    assert_eq!(symbol(&d).entries[0][0], expected);
}

#[test]
fn lift_with_nontrivial_connection() {
    let table = IsoTable::new();
    let a = vec![vec![p(&[0]), p(&[1])], vec![p(&[0, 1]), p(&[0])]];
    let spec = FlatConnectionSpec::new(a).unwrap();
    let theta = vec![vec![p(&[1]), p(&[0, 1])], vec![p(&[2]), p(&[1, 1])]];
    for (k, n, l) in [(1, -1, -1), (2, 2, 2)] {
        let d = lift_symbol(&table, &theta, k, n, l, &spec).unwrap();
        assert_eq!(symbol(&d).entries, as_ratfuns(&theta));
    }
}

#[test]
fn lift_is_chart_natural() {
    let table = IsoTable::new();
    let a = vec![vec![p(&[1]), p(&[0, 1])], vec![p(&[0]), p(&[2])]];
    let spec = FlatConnectionSpec::new(a).unwrap();
    let theta = vec![vec![p(&[1, 1]), p(&[0])], vec![p(&[0, 0, 1]), p(&[3])]];
    let mut s = Sampler::with_stream(7, 1);
    for (k, n, l) in [(1, -1, -2), (2, 2, 3), (2, -2, 2)] {
        for _ in 0..2 {
            let g = s.moebius(3, false);
            let z0 = s.base_point(3, false, &[&g]);
            assert!(check_lift_naturality(&table, &theta, k, n, l, &spec, &g, &z0).unwrap(), "k={k} n={n} l={l}");
        }
    }
}

#[test]
fn lift_rejects_split_range() {
    let table = IsoTable::new();
    let triv = FlatConnectionSpec::trivial(1);
    let theta = vec![vec![p(&[1])]];
    assert!(matches!(lift_symbol(&table, &theta, 2, 1, 3, &triv), Err(Error::Usage(_))));
    assert!(matches!(lift_symbol(&table, &theta, 2, 3, 1, &triv), Err(Error::Usage(_))));
}

#[test]
fn lift_functional_agrees_with_application() {
    let table = IsoTable::new();
    let triv = FlatConnectionSpec::trivial(1);
    let d = lift_symbol(&table, &[vec![p(&[0, 1])]], 2, -1, -1, &triv).unwrap();
    let z0 = q("1/3+i");
    let sec = Poly::from_ints(&[2, -1, 0, 5, 1]).to_series(&z0, 2);
    let direct = apply(&d, std::slice::from_ref(&sec), 0).unwrap()[0].coeff(0).clone();
    let f = as_jet_functional(&d, &z0).unwrap();
    let jet: Vec<GaussianRational> = (0..=2).map(|j| sec.derivative_at_base(j)).collect();
    let via: GaussianRational = f.row(0).iter().zip(&jet).map(|(a, b)| a * b).sum();
    assert_eq!(direct, via);
}

#[test]
fn symbol_model_matches_on_grid() {
    let table = IsoTable::new();
    for k in 0..=3usize {
        for n in -3..=4 {
            assert!(verify_symbol_model(&table, k, n, 5).unwrap().passed(), "k={k} n={n}");
        }
    }
}

#[test]
fn symbols_multiply_under_composition() {
    let c = |cs: &[i64]| RatFun::from_poly(p(cs));
    let d1 = DiffOperator::scalar(-2, -6, vec![c(&[1]), c(&[0, 1]), c(&[2, 0, 1])]).unwrap();
    let d2 = DiffOperator::scalar(0, -2, vec![c(&[3]), c(&[1, 1])]).unwrap();
    for z0 in check_points(3, 3) {
        let f = compose_functional(&d1, &d2, &z0).unwrap();
        let top = f[(0, 3)].clone();
        let expected = &symbol(&d1).entries[0][0].eval(&z0).unwrap() * &symbol(&d2).entries[0][0].eval(&z0).unwrap();
        assert_eq!(top, expected);
    }
}
