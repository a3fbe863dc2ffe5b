use flatepi::poly::Poly;
use flatepi::segre::{case1_normal_form, classify_segre, embed, to_xyuv, BihomogPoly, SegrePrime, ST, XYUV};
use flatepi::verdict::{Tri, Witness};
use flatepi::{BigInt, Rational};
use proptest::prelude::*;

fn segre_relation() -> Poly<BigInt> {
    Poly::parse("X*U - Y*V", &XYUV).unwrap()
}

#[test]
fn psi_table() {
    for (ideal, psi) in [("(X,V)", (1, 0)), ("(Y,U)", (1, 0)), ("(X,Y)", (0, 1)), ("(U,V)", (0, 1))] {
        assert_eq!(SegrePrime::<BigInt>::parse_ideal(ideal).unwrap().psi(), psi, "{ideal}");
    }
}

#[test]
fn three_branches() {
    let v = |f: &str| classify_segre(&SegrePrime::<BigInt>::parse_poly(f).unwrap()).unwrap();
    assert_eq!(v("S0").answers(), [Tri::No; 3]);
    assert_eq!(v("S0*T0^2+S1*T1^2").answers(), [Tri::Yes, Tri::No, Tri::No]);
    let c = v("S0*T0+S1*T1");
    assert_eq!(c.answers(), [Tri::Yes; 3]);
    let Witness::PrincipalElement { generator, .. } = c.witness() else { panic!() };
    assert_eq!(generator, "X + U");
}

/// Pulls `g(X,Y,U,V)` back along the Segre map.
fn pull_back(g: &Poly<BigInt>) -> Poly<BigInt> {
    let s = |t: &str| Poly::parse(t, &ST).unwrap();
    g.substitute(&[s("S0*T0"), s("S1*T0"), s("S1*T1"), s("S0*T1")]).unwrap()
}

proptest! {
    #[test]
    fn preimage_pulls_back(cs in proptest::collection::vec(-4i64..=4, 4), d in 1u32..3) {
        // f = sum c_i S^(...) T^(...) of bidegree (d, d)
        let mut terms = Vec::new();
        for (k, c) in cs.iter().enumerate() {
            let s0 = (k as u32).min(d);
            let t0 = ((k as u32) / 2).min(d);
            terms.push((vec![s0, d - s0, t0, d - t0], Rational::from_integer((*c).into())));
        }
        let f = Poly::from_terms(&ST, terms).unwrap();
        prop_assume!(!f.is_zero());
        let g = to_xyuv(&BihomogPoly::new(f.clone()).unwrap()).unwrap();
        prop_assert_eq!(pull_back(&g), f);
        prop_assert_eq!(embed(&g).unwrap(), pull_back(&g));
    }

    #[test]
    fn normal_forms_preserve_the_quadric(a in -6i64..=6, b in -6i64..=6, flip in any::<bool>()) {
        prop_assume!(a != 0 || b != 0);
        let orientation = if flip {
            flatepi::segre::Orientation::XvYu
        } else {
            flatepi::segre::Orientation::XyVu
        };
        let p = SegrePrime::linear_pair(Rational::from_integer(a.into()), Rational::from_integer(b.into()), orientation).unwrap();
        let nf = case1_normal_form(&p).unwrap();
        prop_assert!(nf.verify());
        let image = segre_relation().substitute(&nf.substitution).unwrap();
        prop_assert_eq!(image, segre_relation().scale(&nf.det));
    }
}
