use proptest::prelude::*;
use sl2jets::equiv::{Cocycle, JetCocycle};
use sl2jets::exactnum::{GaussianRational, Poly, RatFun};
use sl2jets::jets::jet_of_series;
use sl2jets::liftop::{apply, as_jet_functional, DiffOperator};
use sl2jets::moebius::Sampler;
use sl2jets::rep::{clebsch_compose, clebsch_decompose, SymVector};

fn gauss(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
    &GaussianRational::from_ratio(re.0, re.1) + &(&GaussianRational::from_ratio(im.0, im.1) * &GaussianRational::i())
}

fn small() -> impl Strategy<Value = (i64, i64)> {
    (-6i64..=6, 1i64..=5)
}

fn int_poly(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 1..=max_deg + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn functional_matches_apply(
        cs in prop::collection::vec(int_poly(3), 1..=4),
        s in int_poly(6),
        re in small(),
        im in small(),
    ) {
        let z0 = gauss(re, im);
        let d = DiffOperator::scalar(0, 0, cs.iter().map(|c| RatFun::from_poly(Poly::from_ints(c))).collect()).unwrap();
        let k = d.order();
        let series = Poly::from_ints(&s).to_series(&z0, k);
        let direct = apply(&d, std::slice::from_ref(&series), 0).unwrap()[0].coeff(0).clone();
        let jet = jet_of_series(&series, k).unwrap();
        let f = as_jet_functional(&d, &z0).unwrap();
        let via: GaussianRational = f.row(0).iter().zip(jet.values()).map(|(a, b)| a * b).sum();
        prop_assert_eq!(direct, via);
    }

    #[test]
    fn jet_cocycle_identity(seed in 0u64..1_000, k in 0usize..=4, n in -3i64..=4) {
        let mut s = Sampler::new(seed);
        let g1 = s.moebius(4, false);
        let g2 = s.moebius(4, false);
        let z = s.base_point(4, false, &[&g1, &g2.compose(&g1)]);
        prop_assume!(g2.act(&g1.act(&z).unwrap()).is_ok());
        let c = JetCocycle { k, n };
        let lhs = c.eval(&g2.compose(&g1), &z).unwrap();
        let rhs = c.eval(&g1, &z).unwrap().mul(&c.eval(&g2, &g1.act(&z).unwrap()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn clebsch_round_trip(f in int_poly(4), g in int_poly(4)) {
        let (f, g) = (SymVector::from_ints(&f), SymVector::from_ints(&g));
        let (m, n) = (f.degree(), g.degree());
        let t = sl2jets::rep::tensor(&f, &g);
        let parts = clebsch_decompose(m, n, &t).unwrap();
        prop_assert_eq!(clebsch_compose(m, n, &parts).unwrap(), t);
    }
}
