use proptest::prelude::*;

use fixfree::arith::{Field, Rational};
use fixfree::poly::{p2_vars, Monomial, MultiPoly};
use fixfree::proj::{degree_report, topological_degree, ProjMap, ProjPoint, Space};

fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

/// Form of degree `d` in `z0, z1, z2` with small integer coefficients.
fn form(d: u16) -> impl Strategy<Value = MultiPoly<Rational>> {
    let monomials: Vec<[u16; 3]> = (0..=d).flat_map(|a| (0..=d - a).map(move |b| [a, b, d - a - b])).collect();
    prop::collection::vec(-3i64..=3, monomials.len()).prop_map(move |cs| {
        MultiPoly::from_terms(
            &p2_vars(),
            monomials.iter().zip(cs).filter(|(_, c)| *c != 0).map(|(e, c)| (Monomial::from_exps(e), q(c))),
        )
    })
}

fn p2_map(d: u16) -> impl Strategy<Value = ProjMap<Rational>> {
    (form(d), form(d), form(d)).prop_filter_map("degenerate map", move |(a, b, c)| {
        let f = ProjMap::new(Space::P2, Space::P2, vec![a, b, c]).ok()?;
        (f.algebraic_degree() == d as u32).then_some(f)
    })
}

fn point() -> impl Strategy<Value = ProjPoint<Rational>> {
    (-6i64..=6, -6i64..=6, -6i64..=6)
        .prop_filter_map("zero vector", |(a, b, c)| ProjPoint::new(Space::P2, vec![q(a), q(b), q(c)]).ok())
}

fn det3(m: &[[Rational; 3]; 3]) -> Rational {
    let minor = |r: usize, c: usize| {
        let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        m[rows[0]][cols[0]].times(&m[rows[1]][cols[1]]).minus(&m[rows[0]][cols[1]].times(&m[rows[1]][cols[0]]))
    };
    (0..3).fold(Rational::zero(), |acc, j| {
        let t = m[0][j].times(&minor(0, j));
        if j % 2 == 0 {
            acc.plus(&t)
        } else {
            acc.minus(&t)
        }
    })
}

fn inverse3(m: &[[Rational; 3]; 3]) -> [[Rational; 3]; 3] {
    let d = det3(m).inverse().expect("invertible");
    let mut out: [[Rational; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()));
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let minor =
                m[rows[0]][cols[0]].times(&m[rows[1]][cols[1]]).minus(&m[rows[0]][cols[1]].times(&m[rows[1]][cols[0]]));
            let cof = if (i + j) % 2 == 0 { minor } else { minor.negated() };
            *entry = cof.times(&d);
        }
    }
    out
}

/// Unimodular integer matrix: a product of elementary row operations.
fn unimodular() -> impl Strategy<Value = [[Rational; 3]; 3]> {
    prop::collection::vec((0usize..3, 0usize..3, -3i64..=3), 1..6).prop_map(|ops| {
        let mut m: [[i64; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        for (i, j, k) in ops {
            if i != j {
                for c in 0..3 {
                    m[i][c] += k * m[j][c];
                }
            } else {
                m.swap(i, (i + 1) % 3);
            }
        }
        m.map(|row| row.map(q))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_matches_evaluation(f in p2_map(2), g in p2_map(1), p in point()) {
        let gf = g.compose(&f).unwrap();
        if let (Ok(fp), Ok(whole)) = (f.evaluate(&p), gf.evaluate(&p)) {
            if let Ok(gfp) = g.evaluate(&fp) {
                prop_assert_eq!(whole, gfp);
            }
        }
    }

    #[test]
    fn topological_degree_is_invariant_under_automorphisms(f in p2_map(2), a in unimodular(), b in unimodular()) {
        let d = topological_degree(&f, 1).unwrap();
        let la = ProjMap::linear_p2(&a).unwrap();
        let lb = ProjMap::linear_p2(&b).unwrap();
        let g = la.compose(&f).unwrap().compose(&lb).unwrap();
        prop_assert_eq!(topological_degree(&g, 1).unwrap(), d);
        let back = ProjMap::linear_p2(&inverse3(&a)).unwrap().compose(&la).unwrap();
        prop_assert_eq!(back, ProjMap::identity(Space::P2));
    }

    #[test]
    fn volume_identity(f in p2_map(2)) {
        let r = degree_report(&f, 3).unwrap();
        let (s, v) = (r.skew_degree.unwrap(), r.graph_volume.unwrap());
        prop_assert_eq!(v - 1 - 2 * s, r.topological_degree);
        prop_assert_eq!(Some(s), r.algebraic_degree);
    }

    #[test]
    fn normalization_is_idempotent(f in p2_map(2), c in form(1)) {
        prop_assume!(!c.is_zero());
        let scaled: Vec<_> = f.components().iter().map(|p| p * &c).collect();
        let g = ProjMap::new(Space::P2, Space::P2, scaled).unwrap();
        prop_assert_eq!(&g, &f);
        prop_assert_eq!(ProjMap::new(Space::P2, Space::P2, g.components().to_vec()).unwrap(), g);
    }
}
