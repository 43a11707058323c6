use std::collections::BTreeMap;

use rand::Rng;

use opring::gen;
use opring::laws::{centralize, homog_decomp, instance_poly, polarize, polarize_var, structure_ops};
use opring::parse::parse_law;
use opring::rat::{factorial, int};
use opring::terms::{abelianize, star_pattern, substitute, Monomial, Symbol};
use opring::{BracketWord, CoeffStructure, LawExpr, Mode, OpLabel, Poly, Result, Var};

const MODES: [Mode; 2] = [Mode::Noncommutative, Mode::Commutative];

fn labels() -> Vec<OpLabel> {
    vec![OpLabel::der(), OpLabel::int(), OpLabel::new("P")]
}

fn vars(names: &[&str]) -> Vec<Var> {
    names.iter().map(|n| Var::new(*n)).collect()
}

#[test]
fn star_pattern_refills_to_the_word() {
    let mut rng = gen::rng(21);
    let y = Var::new("y");
    for mode in MODES {
        let mut seen = 0;
        while seen < 100 {
            let m = gen::random_monomial(&mut rng, &vars(&["y", "z"]), &labels(), 3, 3);
            let u = BracketWord::new(mode, m.normalized(mode));
            if u.deg_in(&y) == 0 {
                continue;
            }
            let q = star_pattern(&u, &y).unwrap();
            let back: BTreeMap<Symbol, LawExpr> =
                (1..=u.deg_in(&y)).map(|j| (Symbol::Star(j), LawExpr::var(mode, "y"))).collect();
            assert_eq!(substitute(&q.body, mode, &back).unwrap(), u.to_law());
            seen += 1;
        }
    }
}

#[test]
fn abelianization_is_multiplicative_on_words() {
    let mut rng = gen::rng(22);
    let xs = vars(&["a", "b", "c"]);
    for _ in 0..100 {
        let u = LawExpr::monomial(Mode::Noncommutative, gen::random_monomial(&mut rng, &xs, &labels(), 2, 3), int(1));
        let v = LawExpr::monomial(Mode::Noncommutative, gen::random_monomial(&mut rng, &xs, &labels(), 2, 3), int(1));
        let lhs = abelianize(&u.mul(&v)).unwrap();
        let rhs = abelianize(&u).unwrap().mul(&abelianize(&v).unwrap());
        assert_eq!(lhs, rhs, "{u} · {v}");
    }
}

#[test]
fn commutative_normalization_is_idempotent() {
    let mut rng = gen::rng(23);
    for _ in 0..100 {
        let m = gen::random_monomial(&mut rng, &vars(&["a", "b", "y"]), &labels(), 3, 3);
        let once = m.normalized(Mode::Commutative);
        assert_eq!(once.normalized(Mode::Commutative), once);
    }
}

#[test]
fn centralization_recovers_factorial_multiple() {
    let mut rng = gen::rng(24);
    let y = Var::new("y");
    for mode in MODES {
        let mut seen = 0;
        while seen < 100 {
            let m = gen::random_monomial(&mut rng, &vars(&["y", "z"]), &labels(), 3, 2);
            let n = m.deg_in(&y);
            if n == 0 || n > 4 {
                continue;
            }
            let l = LawExpr::monomial(mode, m, int(1));
            let fresh: Vec<Var> = (1..=n).map(|i| Var::new(format!("y#{i}"))).collect();
            let collapse = fresh.iter().map(|v| (v.clone(), y.clone())).collect();
            let back = centralize(&polarize_var(&l, &y, &fresh).unwrap(), &collapse);
            assert_eq!(back, l.scale(&factorial(n as u32)), "{l}");
            seen += 1;
        }
    }
}

fn random_homogeneous(rng: &mut impl Rng, mode: Mode) -> LawExpr {
    let m = gen::random_monomial(rng, &vars(&["y", "z"]), &labels(), 2, 3);
    LawExpr::monomial(mode, m, gen::random_rat(rng))
}

#[test]
fn polarization_is_multilinear() {
    let mut rng = gen::rng(25);
    for mode in MODES {
        for _ in 0..50 {
            let l = random_homogeneous(&mut rng, mode);
            if l.is_zero() || l.vars().iter().any(|v| l.deg_in(v) > 4) {
                continue;
            }
            let p = polarize(&l).unwrap();
            assert!(p.is_multilinear(), "{l} polarizes to {p}");
            for v in p.vars() {
                assert_eq!(p.homogeneous_degree(&v), Some(1), "{v} in {p}");
            }
        }
    }
}

#[test]
fn homogeneous_parts_sum_to_the_law() {
    let mut rng = gen::rng(26);
    let y = Var::new("y");
    for n in 0..100 {
        let mode = MODES[n % 2];
        let l = gen::random_law(&mut rng, mode, &vars(&["y", "z"]), &labels(), 4, 2);
        let parts = homog_decomp(&l, &y);
        let total = parts.iter().fold(LawExpr::zero(mode), |acc, (_, p)| acc.add(p));
        assert_eq!(total, l);
        for (d, p) in &parts {
            if !p.is_zero() {
                assert_eq!(p.homogeneous_degree(&y), Some(*d));
            }
        }
    }
}

fn broken_ops(label: &OpLabel, p: &Poly) -> Result<Poly> {
    assert_eq!(label.name(), "I");
    Ok(&Poly::x() * p)
}

#[test]
fn rb_square_instances_vanish_with_their_polarization() {
    let law = parse_law("I{y}*I{y} - 2*I{y*I{y}}", Mode::Commutative).unwrap();
    let polar = polarize(&law).unwrap();
    assert_eq!(polar.vars().len(), 2);
    let fresh: Vec<Var> = polar.vars().into_iter().collect();
    let structure = CoeffStructure::point(int(0));
    let ops = structure_ops(&structure);
    let mut rng = gen::rng(27);
    let (mut law_broken, mut polar_broken) = (false, false);
    for _ in 0..100 {
        let f = gen::random_poly(&mut rng, 4, false);
        let g = gen::random_poly(&mut rng, 4, false);
        let theta = BTreeMap::from([(Var::new("y"), f.clone())]);
        let pair = BTreeMap::from([(fresh[0].clone(), f), (fresh[1].clone(), g)]);
        assert!(instance_poly(&law, &theta, &ops).unwrap().is_zero());
        assert!(instance_poly(&polar, &pair, &ops).unwrap().is_zero());
        law_broken |= !instance_poly(&law, &theta, &broken_ops).unwrap().is_zero();
        polar_broken |= !instance_poly(&polar, &pair, &broken_ops).unwrap().is_zero();
    }
    assert!(law_broken && polar_broken);
}

#[test]
fn polarization_is_the_mixed_part_of_a_sum() {
    let mode = Mode::Noncommutative;
    let l = parse_law("D{y*D{y}}", mode).unwrap();
    let y = Var::new("y");
    let q = star_pattern(&BracketWord::new(mode, l.terms().next().unwrap().0.clone()), &y).unwrap();
    let sum = parse_law("z1 + z2", mode).unwrap();
    let both: BTreeMap<Symbol, LawExpr> = (1..=2).map(|j| (Symbol::Star(j), sum.clone())).collect();
    let expanded = substitute(&q.body, mode, &both).unwrap();
    let mixed = homog_decomp(&expanded, &Var::new("z1"))
        .into_iter()
        .find(|(d, _)| *d == 1)
        .map(|(_, p)| p)
        .unwrap();
    let mixed = homog_decomp(&mixed, &Var::new("z2")).into_iter().find(|(d, _)| *d == 1).unwrap().1;
    let polar = polarize_var(&l, &y, &vars(&["z1", "z2"])).unwrap();
    assert_eq!(mixed, polar);
    assert_eq!(mixed.len(), 2);
}

#[test]
fn monomial_degrees() {
    let m = Monomial::var("y").times(&Monomial::var("y").bracket(&OpLabel::der()));
    assert_eq!(m.deg_in(&Var::new("y")), 2);
    assert_eq!(m.depth(), 1);
}
