use proptest::prelude::*;

use gitstab::algebra::{apply_change, Field};
use gitstab::geometry::{base_points, common_zeros, intersection_multiplicity_at, multiplicity_at, ProjPoint};
use gitstab::nets::{discriminant_cubic, NetOfConics};
use gitstab::random::random_case;
use gitstab::weights::{omega_system_greedy, omega_system_oracle};
use gitstab::{LinearSystem, Poly, ProjChange, Rat, SparsePoly};

fn r(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn linear(c: &[i64]) -> Option<Poly> {
    let terms = vec![(vec![1, 0, 0], r(c[0])), (vec![0, 1, 0], r(c[1])), (vec![0, 0, 1], r(c[2]))];
    Poly::new(SparsePoly::from_terms(3, terms)).ok()
}

fn cross(a: &[i64], b: &[i64]) -> Vec<i64> {
    vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn product(lines: &[Poly]) -> Poly {
    lines.iter().skip(1).fold(lines[0].clone(), |acc, l| acc.mul(l))
}

fn small_vec() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 3)
}

/// Lines through `p`, one per entry of `others` not equal to `p` up to scale.
fn lines_through(p: &[i64], others: &[Vec<i64>]) -> Vec<Poly> {
    others.iter().filter_map(|q| linear(&cross(p, q))).collect()
}

fn random_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 3)
}

fn change(m: &[Vec<i64>]) -> Option<ProjChange> {
    ProjChange::new(m.iter().map(|row| row.iter().map(|&v| r(v)).collect()).collect()).ok()
}

fn conic(entries: &[i64]) -> Option<Poly> {
    let exps: [[u32; 3]; 6] = [[2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [1, 0, 1], [0, 1, 1]];
    let terms: Vec<_> = exps.iter().zip(entries).map(|(e, &c)| (e.to_vec(), r(c))).collect();
    Poly::new(SparsePoly::from_terms(3, terms)).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplicity_is_additive(
        p in small_vec(),
        through_f in prop::collection::vec(small_vec(), 1..3),
        through_g in prop::collection::vec(small_vec(), 1..3),
        extra in small_vec(),
    ) {
        prop_assume!(p.iter().any(|&v| v != 0));
        let mut f_lines = lines_through(&p, &through_f);
        let g_lines = lines_through(&p, &through_g);
        prop_assume!(!f_lines.is_empty() && !g_lines.is_empty());
        if let Some(l) = linear(&extra) {
            f_lines.push(l);
        }
        let (f, g) = (product(&f_lines), product(&g_lines));
        let pt = ProjPoint::rational(&p.iter().map(|&v| r(v)).collect::<Vec<_>>()).unwrap();
        let (mf, mg, mfg) = (
            multiplicity_at(&f, &pt).unwrap(),
            multiplicity_at(&g, &pt).unwrap(),
            multiplicity_at(&f.mul(&g), &pt).unwrap(),
        );
        prop_assert_eq!(mf + mg, mfg);
        prop_assert!(mg as usize == g_lines.len());
    }

    #[test]
    fn intersection_is_symmetric_and_bezout_holds(
        fl in prop::collection::vec(small_vec(), 1..3),
        gl in prop::collection::vec(small_vec(), 1..3),
    ) {
        let f_lines: Vec<Poly> = fl.iter().filter_map(|c| linear(c)).collect();
        let g_lines: Vec<Poly> = gl.iter().filter_map(|c| linear(c)).collect();
        prop_assume!(!f_lines.is_empty() && !g_lines.is_empty());
        let (f, g) = (product(&f_lines), product(&g_lines));
        let scan = common_zeros(&[f.as_sparse().clone(), g.as_sparse().clone()]);
        prop_assume!(scan.is_ok());
        let scan = scan.unwrap();
        prop_assert!(scan.complete);
        let mut total = 0;
        for pt in &scan.points {
            prop_assert!(pt.is_rational());
            let a = intersection_multiplicity_at(&f, &g, pt).unwrap();
            let b = intersection_multiplicity_at(&g, &f, pt).unwrap();
            prop_assert_eq!(a, b);
            prop_assert!(a >= 1);
            total += a;
        }
        prop_assert_eq!(total, f.degree() * g.degree());
    }

    #[test]
    fn base_points_lie_on_every_generator(
        a in prop::collection::vec(small_vec(), 2),
        b in prop::collection::vec(small_vec(), 2),
        c in prop::collection::vec(small_vec(), 2),
    ) {
        let gens: Vec<Poly> = [a, b, c]
            .iter()
            .filter_map(|ls| Some(product(&[linear(&ls[0])?, linear(&ls[1])?])))
            .collect();
        prop_assume!(gens.len() >= 2);
        let Ok(sys) = LinearSystem::new(gens) else { return Ok(()) };
        let Ok(scan) = base_points(&sys) else { return Ok(()) };
        for pt in &scan.points {
            for g in sys.generators() {
                prop_assert!(g.eval(pt.coords()).is_zero(), "{} at {:?}", g, pt);
            }
        }
    }

    #[test]
    fn discriminant_is_covariant(
        entries in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 3),
        m in random_matrix(),
    ) {
        let conics: Vec<Poly> = entries.iter().filter_map(|e| conic(e)).collect();
        prop_assume!(conics.len() == 3);
        let Ok(net) = NetOfConics::new(conics[0].clone(), conics[1].clone(), conics[2].clone()) else {
            return Ok(());
        };
        let Some(g) = change(&m) else { return Ok(()) };
        let moved: Vec<Poly> = conics.iter().map(|c| apply_change(c, &g).unwrap()).collect();
        let moved = NetOfConics::new(moved[0].clone(), moved[1].clone(), moved[2].clone()).unwrap();
        match (discriminant_cubic(&net), discriminant_cubic(&moved)) {
            (None, None) => {}
            (Some(a), Some(b)) => prop_assert!(a.is_proportional(&b), "{} vs {}", a, b),
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn omega_ignores_the_choice_of_basis(seed in 0u64..5000, m in random_matrix()) {
        let (sys, lambdas) = random_case(seed, 2);
        let n = sys.k() + 1;
        let coeffs: Vec<Vec<Rat>> = m.iter().take(n).map(|row| row.iter().take(n).map(|&v| r(v)).collect()).collect();
        let mixed: Option<Vec<Poly>> = coeffs
            .iter()
            .map(|row| {
                let mut acc: Option<Poly> = None;
                for (c, f) in row.iter().zip(sys.generators()) {
                    acc = match acc {
                        None => f.scale(c),
                        Some(a) => a.combine(&r(1), f, c).or(Some(a)),
                    };
                }
                acc
            })
            .collect();
        let Some(mixed) = mixed else { return Ok(()) };
        let Ok(other) = LinearSystem::new(mixed) else { return Ok(()) };
        for l in &lambdas {
            let a = omega_system_greedy(&sys, l, None).unwrap().0.omega;
            let b = omega_system_greedy(&other, l, None).unwrap().0.omega;
            prop_assert_eq!(a, b);
            prop_assert_eq!(b, omega_system_oracle(&other, l).unwrap().omega);
        }
    }
}

