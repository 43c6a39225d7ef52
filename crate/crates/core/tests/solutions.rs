use mhd_blowup::algebra::{AffineExp, Exp, ParamRational, SymField, Symbol, Q};
use mhd_blowup::ansatz::{solve_radial, solve_theta, solve_theta_at, AnsatzParams};
use mhd_blowup::catalog::{self, kbar, symbolic, Family, FamilyParams, Form};
use mhd_blowup::mhd::{cartesian_equations, curl, scale_solution, SolutionBundle, VecField3};
use mhd_blowup::numeric::{sample_residual, SampleDomain};
use mhd_blowup::verify::{verify, VERIFY_ENTRIES};
use mhd_blowup::Error;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn substitute(f: &SymField, subs: &[(Symbol, ParamRational)]) -> SymField {
    subs.iter()
        .fold(f.clone(), |g, (s, v)| g.substitute_symbol(*s, v).unwrap())
}

fn substitute_bundle(b: &SolutionBundle, subs: &[(Symbol, ParamRational)]) -> SolutionBundle {
    let vec = |v: &VecField3| v.map(|c| substitute(c, subs));
    let mut out = b.clone();
    out.v = vec(&b.v);
    out.h = vec(&b.h);
    out.p = substitute(&b.p, subs);
    out.tstar = subs.iter().fold(b.tstar.clone(), |c, (s, v)| {
        c.substitute_expr(*s, v).unwrap()
    });
    out
}

#[test]
fn verify_reports_have_twelve_entries() {
    for fam in Family::ALL {
        for nse in [false, true] {
            assert_eq!(verify(fam, nse).unwrap().entries.len(), VERIFY_ENTRIES);
        }
    }
    assert!(verify(Family::One, false).unwrap().all_symbolic_zero());
}

#[test]
fn family_one_scaling_maps_to_family_one() {
    let b = symbolic(Family::One, Form::Cartesian);
    let scaled = scale_solution(&b, &q(2, 1), &Exp::from_integer(1)).unwrap();
    let subs = [
        (Symbol::Abar, ParamRational::abar().scale(&q(4, 1))),
        (Symbol::Tstar, ParamRational::tstar().scale(&q(1, 4))),
    ];
    let expected = substitute_bundle(&b, &subs);
    assert_eq!(scaled.v, expected.v);
    assert_eq!(scaled.h, expected.h);
    assert_eq!(scaled.p, expected.p);
    assert_eq!(scaled.tstar, expected.tstar);
    for eq in cartesian_equations(&scaled).unwrap() {
        assert!(eq.residual().is_zero(), "{}", eq.id);
    }
}

#[test]
fn family_one_vorticity_vanishes() {
    let b = symbolic(Family::One, Form::Cartesian);
    assert!(curl(&b.v).unwrap().is_zero());
}

#[test]
fn family_two_vorticity_is_axial() {
    let b = symbolic(Family::Two, Form::Cartesian);
    let w = curl(&b.v).unwrap();
    assert!(w.c[0].is_zero() && w.c[1].is_zero());
    // The swirl runs along the clockwise azimuthal direction, so the axial
    // vorticity is negative.
    let two_k = SymField::constant(ParamRational::k().scale(&q(-2, 1)));
    let s2a = SymField::s_pow(AffineExp::affine(0, 2));
    assert_eq!(w.c[2], two_k.mul(&s2a));
}

#[test]
fn ansatz_family_one_reproduces_the_twist() {
    let r = solve_radial(Family::One).unwrap();
    assert_eq!(r.alpha_h, 0.into());
    let t = solve_theta(Family::One).unwrap();
    assert_eq!((t.p, t.q), ((-1).into(), 0.into()));
    assert_eq!(t.beta, AffineExp::int(-1));
    assert_eq!(t.kbar, kbar(Family::One));
}

#[test]
fn ansatz_degenerate_value_is_rejected() {
    let p = AnsatzParams::exact(q(-1, 2), q(1, 1), q(1, 1));
    match solve_theta_at(Family::One, &p) {
        Err(Error::NoSolution(msg)) => assert!(msg.contains("2*a + 1"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn ansatz_family_two_has_no_twist_solution() {
    match solve_theta(Family::Two) {
        Err(Error::NoSolution(msg)) => assert!(msg.contains("p = 1, q = 0"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn bound_family_one_samples_to_roundoff() {
    let b = catalog::family(&FamilyParams::new(
        Family::One,
        q(3, 2),
        q(-1, 3),
        q(2, 1),
        q(1, 1),
    ))
    .unwrap();
    let r = sample_residual(&b, &SampleDomain::default().with_n(200).with_seed(11), 0.3).unwrap();
    assert!(r.max_rel().unwrap() <= 1e-10, "{}", r.to_json());
}

#[test]
fn exclusions_are_enforced_before_computation() {
    let bad = FamilyParams::new(Family::One, q(-1, 2), q(1, 1), q(1, 1), q(1, 1));
    assert!(matches!(catalog::family(&bad), Err(Error::Param(_))));
    let bad = FamilyParams::new(Family::Two, q(-1, 4), q(1, 1), q(1, 1), q(1, 1));
    assert!(matches!(catalog::family(&bad), Err(Error::Param(_))));
    let bad = FamilyParams::new(Family::Two, q(1, 1), q(0, 1), q(1, 1), q(1, 1));
    assert!(matches!(catalog::family(&bad), Err(Error::Param(_))));
    let nse = FamilyParams::new(Family::Two, q(1, 1), q(0, 1), q(1, 1), q(1, 1));
    assert!(catalog::nse_family(Family::Two, &nse).is_ok());
    let neg_t = FamilyParams::new(Family::One, q(1, 1), q(1, 1), q(1, 1), q(-1, 1));
    assert!(matches!(catalog::family(&neg_t), Err(Error::Param(_))));
}
