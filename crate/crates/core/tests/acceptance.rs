//! Acceptance suite: one line per criterion, then a single assertion.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::Rng;

use opring::action::oracle_check;
use opring::gen;
use opring::isoms::{self, EmbeddingContext};
use opring::laws::{centralize, polarize, polarize_var};
use opring::opring::{
    classify, drb_evaluation, normal_form, overlaps, project_drb_to_id, spoly_check, Component, OpExpr, OpLetter,
    RingSpec, Variety,
};
use opring::parse::parse_law;
use opring::rat::{factorial, frac, int};
use opring::weyl::{self, commutator, convert, weyl_mul, Basis, WeylElt, WeylWord};
use opring::{CoeffStructure, LawExpr, Mode, Mono, Poly, Rat, Var};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict, Option<Duration>);

const WEIGHTS: [i64; 3] = [0, 1, -1];

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spec(v: Variety, w: i64) -> RingSpec {
    RingSpec::with_weight(v, int(w))
}

fn op(letters: &[OpLetter]) -> OpExpr {
    OpExpr::product(letters)
}

fn c(p: &Poly) -> OpExpr {
    OpExpr::poly(p)
}

// ---- criterion 1 ----

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

fn same_up_to_renaming(got: &LawExpr, want: &LawExpr) -> bool {
    let from: Vec<Var> = got.vars().into_iter().collect();
    let to: Vec<Var> = want.vars().into_iter().collect();
    from.len() == to.len()
        && permutations(&to).into_iter().any(|image| {
            let map: BTreeMap<Var, Var> = from.iter().cloned().zip(image).collect();
            got.rename(&map) == *want
        })
}

fn polarization_golden() -> Verdict {
    let nc = Mode::Noncommutative;
    let cm = Mode::Commutative;
    let law = |s: &str, m: Mode| parse_law(s, m).unwrap();
    let y = Var::new("y");
    let cases: [(&str, LawExpr, LawExpr); 5] = [
        ("nc (1)", polarize(&law("D{y*D{y}}", nc)).unwrap(), law("D{y1*D{y2}} + D{y2*D{y1}}", nc)),
        (
            "nc (2)",
            polarize(&law("x^2*y^2", nc)).unwrap(),
            law("y3*y4*y1*y2 + y4*y3*y1*y2 + y3*y4*y2*y1 + y4*y3*y2*y1", nc),
        ),
        (
            "nc (3)",
            polarize(&law("D{y^2} - 2*D{y}*y", nc)).unwrap(),
            law("D{y1*y2} + D{y2*y1} - 2*D{y1}*y2 - 2*D{y2}*y1", nc),
        ),
        ("comm (1)", polarize(&law("x^2*y^2", cm)).unwrap(), law("4*y1*y2*y3*y4", cm)),
        (
            "comm (2)",
            polarize(&law("D{y^2} - 2*D{y}*y", cm)).unwrap(),
            law("2*D{y1*y2} - 2*D{y1}*y2 - 2*y1*D{y2}", cm),
        ),
    ];
    for (name, got, want) in &cases {
        check(same_up_to_renaming(got, want), || format!("example {name}: got {got}, want {want}"))?;
    }
    let collapse = |names: &[&str], to: &str| -> BTreeMap<Var, Var> {
        names.iter().map(|n| (Var::new(*n), Var::new(to))).collect()
    };
    let l = law("D{y*D{y}}", nc);
    let fresh = [Var::new("y#1"), Var::new("y#2")];
    let back = centralize(&polarize_var(&l, &y, &fresh).unwrap(), &collapse(&["y#1", "y#2"], "y"));
    check(back == l.scale(&int(2)), || format!("centralization gave {back}"))?;
    for mode in [nc, cm] {
        let l = law("x^2*y^2", mode);
        let mut map = collapse(&["x#1", "x#2"], "x");
        map.extend(collapse(&["y#1", "y#2"], "y"));
        let back = centralize(&polarize(&l).unwrap(), &map);
        check(back == l.scale(&int(4)), || format!("{mode:?} centralization of x^2*y^2 gave {back}"))?;
    }
    Ok("5 worked examples up to variable bijection; centralization returns n!·l".into())
}

// ---- criterion 2 ----

/// `(f(x+λ) − f(x)) / λ`, or `f'` at `λ = 0`.
fn diff_oracle(f: &Poly, w: &Rat) -> Poly {
    if w.is_zero() {
        Poly::from_terms(f.terms().filter(|(m, _)| m.x > 0).map(|(m, c)| (Mono::new(m.x - 1, m.eps), c * int(m.x as i64))))
    } else {
        (&f.translate(w) - f).scale(&(Rat::one() / w))
    }
}

fn interpolate(points: &[(Rat, Rat)]) -> Poly {
    let mut out = Poly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = Poly::constant(yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                let factor = (&Poly::x() - &Poly::constant(xj.clone())).scale(&(Rat::one() / (xi - xj)));
                basis = &basis * &factor;
            }
        }
        out += &basis;
    }
    out
}

/// The right inverse of the weight-λ derivation vanishing at 0: an
/// antiderivative at `λ = 0`, `Σ_{t<m} f(t)` at `λ = 1`, `Σ_{0<t≤m} f(t)` at
/// `λ = −1`, recovered by interpolation.
fn int_oracle(f: &Poly, w: i64) -> Poly {
    if w == 0 {
        let anti = Poly::from_terms(f.terms().map(|(m, c)| (Mono::new(m.x + 1, m.eps), c / int(m.x as i64 + 1))));
        return &anti - &anti.at_x(&Rat::zero());
    }
    let deg = f.degree_x().unwrap_or(0) as i64 + 2;
    let points: Vec<(Rat, Rat)> = (0..=deg)
        .map(|m| {
            let ts: Vec<i64> = if w == 1 { (0..m).collect() } else { (1..=m).collect() };
            let sum = ts.into_iter().fold(Rat::zero(), |acc, t| acc + f.at_x(&int(t)).constant_term());
            (int(m), sum)
        })
        .collect();
    interpolate(&points)
}

fn rule_fidelity() -> Verdict {
    let d = || OpExpr::letter(OpLetter::Der);
    let ev = || OpExpr::letter(OpLetter::Ev);
    let mut cases = 0;
    for w in WEIGHTS {
        let lam = int(w);
        // the stated instance ∂x → x∂ + λ∂ + 1
        let stated = &(&c(&Poly::x()) * &d()) + &(&d().scale(&lam) + &OpExpr::one());
        let got = normal_form(&op(&[OpLetter::Der, OpLetter::Coeff(Mono::new(1, 0))]), &spec(Variety::Diff, w)).unwrap();
        check(got == stated, || format!("λ={w}: ∂x gave {got}"))?;
        for n in 0..=3 {
            let f = Poly::x_pow(n);
            let df = diff_oracle(&f, &lam);
            let jf = int_oracle(&f, w);
            let under = f.translate(&-lam.clone());
            for v in [Variety::Diff, Variety::Drb, Variety::Id] {
                let s = spec(v, w);
                let want = &(&c(&(&f + &df.scale(&lam))) * &d()) + &c(&df);
                let got = normal_form(&(&d() * &c(&f)), &s).unwrap();
                check(got == want, || format!("{v} λ={w} ∂·{f}: got {got}, want {want}"))?;
                cases += 1;
            }
            for v in [Variety::Rb, Variety::Drb, Variety::Id] {
                let s = spec(v, w);
                let i = OpExpr::letter(v.integral().unwrap());
                let want = &(&(&c(&jf) * &i) - &(&i * &c(&jf))) - &(&i * &c(&f)).scale(&lam);
                let got = normal_form(&(&(&i * &c(&f)) * &i), &s).unwrap();
                check(got == want, || format!("{v} λ={w} ∫{f}∫: got {got}, want {want}"))?;
                cases += 1;
            }
            let drb = spec(Variety::Drb, w);
            let got = normal_form(&(&(&d() * &OpExpr::letter(OpLetter::VInt)) * &c(&f)), &drb).unwrap();
            check(got == c(&f), || format!("drb λ={w} ∂⨛{f} gave {got}"))?;
            let id = spec(Variety::Id, w);
            let i = OpExpr::letter(OpLetter::Int);
            let want = &(&c(&under) - &(&i * &c(&diff_oracle(&under, &lam)))) - &(&c(&under.at_x(&Rat::zero())) * &ev());
            let got = normal_form(&(&(&i * &c(&f)) * &d()), &id).unwrap();
            check(got == want, || format!("id λ={w} ∫{f}∂: got {got}, want {want}"))?;
            let got = normal_form(&(&ev() * &c(&f)), &id).unwrap();
            let want = &c(&f.at_x(&Rat::zero())) * &ev();
            check(got == want, || format!("id λ={w} e·{f}: got {got}"))?;
            cases += 3;
        }
    }
    Ok(format!("{cases} rule instances at f ∈ {{1, x, x², x³}}, λ ∈ {{0, 1, −1}}"))
}

// ---- criterion 3 ----

fn confluence() -> Verdict {
    let mut rng = gen::rng(3);
    let mut cases = 0;
    for v in Variety::ALL {
        for w in WEIGHTS {
            let s = spec(v, w);
            for _ in 0..100 {
                let f = gen::random_poly(&mut rng, gen::MAX_COEFF_DEGREE, false);
                let g = gen::random_poly(&mut rng, gen::MAX_COEFF_DEGREE, false);
                for name in overlaps(v) {
                    let ok = spoly_check(&s, name, &f, &g).map_err(|e| e.to_string())?;
                    check(ok, || format!("{v} λ={w} overlap {name} fails at f = {f}, g = {g}"))?;
                    cases += 1;
                }
            }
        }
    }
    for v in [Variety::Rb, Variety::Drb, Variety::Id] {
        let s = RingSpec::new(v, Rat::zero(), CoeffStructure::generic());
        for _ in 0..100 {
            let f = gen::random_poly(&mut rng, gen::MAX_COEFF_DEGREE, true);
            let g = gen::random_poly(&mut rng, gen::MAX_COEFF_DEGREE, true);
            for name in overlaps(v) {
                let ok = spoly_check(&s, name, &f, &g).map_err(|e| e.to_string())?;
                check(ok, || format!("{v} generic overlap {name} fails at f = {f}, g = {g}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} overlap instances resolve over k[x] and k[x,ε], zero failures"))
}

// ---- criterion 4 ----

fn action_oracle() -> Verdict {
    let mut rng = gen::rng(4);
    for v in Variety::ALL {
        let s = RingSpec::standard(v);
        for n in 0..500 {
            let t = gen::random_word(&mut rng, &s, gen::MAX_WORD_LEN, gen::MAX_COEFF_DEGREE);
            let report = oracle_check(&t, &s, 2, 1000 + n).map_err(|e| e.to_string())?;
            if let Some(cx) = report.counterexample {
                return Err(format!("{v}: {t} on {} gives {} but its normal form gives {}", cx.input, cx.direct, cx.reduced));
            }
        }
    }
    Ok("500 random words per variety act as their normal forms".into())
}

// ---- criterion 5 ----

fn weyl_identities() -> Verdict {
    let mul = |a: &WeylElt, b: &WeylElt| weyl_mul(a, b).unwrap();
    let (x, l, d) = (WeylElt::x(), WeylElt::ell(), WeylElt::der());
    check(commutator(&d, &x).unwrap() == WeylElt::one(), || "∂x − x∂ ≠ 1".into())?;
    check(commutator(&x, &l).unwrap() == WeylElt::triple(0, 2, 0), || "xℓ − ℓx ≠ ℓ²".into())?;
    for i in 1..=6u32 {
        let xi = WeylElt::triple(i, 0, 0);
        let want = mul(&mul(&l, &WeylElt::triple(i - 1, 0, 0)), &l).scale(&int(i as i64));
        check(commutator(&xi, &l).unwrap() == want, || format!("[x^{i}, ℓ] mismatch"))?;
        let lj = WeylElt::triple(0, i, 0);
        let want = WeylElt::triple(0, i + 1, 0).scale(&int(i as i64));
        check(commutator(&x, &lj).unwrap() == want, || format!("[x, ℓ^{i}] mismatch"))?;
    }
    let mut rng = gen::rng(5);
    for _ in 0..100 {
        let a = gen::random_weyl(&mut rng, 3, 4);
        let b = gen::random_weyl(&mut rng, 3, 4);
        let e = gen::random_weyl(&mut rng, 3, 4);
        check(mul(&mul(&a, &b), &e) == mul(&a, &mul(&b, &e)), || format!("associativity fails at {a}, {b}, {e}"))?;
    }
    Ok("defining relations, 12 commutator identities, 100 associativity triples".into())
}

// ---- criterion 6 ----

fn basis_words(bound: u32) -> Vec<(Basis, WeylWord)> {
    let mut out = Vec::new();
    for i in 0..=bound {
        for j in 0..=bound {
            for k in 0..=bound {
                out.push((Basis::B2, WeylWord::Triple { i, j, k }));
                out.push((Basis::B1, WeylWord::Eval { i, j, k }));
                if k > 0 {
                    out.push((Basis::B3, WeylWord::Rung { i, j, k }));
                }
            }
            out.push((Basis::B1, WeylWord::Diff { i, k: j }));
            out.push((Basis::B3, WeylWord::Diff { i, k: j }));
            out.push((Basis::B3, WeylWord::Mid { i, j }));
            if j > 0 {
                out.push((Basis::B1, WeylWord::Right { i, j }));
            }
        }
    }
    out
}

fn basis_transitions() -> Verdict {
    let words = basis_words(4);
    for (basis, w) in &words {
        let a = WeylElt::word(*basis, *w).unwrap();
        let via: &[Basis] = match basis {
            Basis::B1 | Basis::B3 => &[Basis::B2],
            Basis::B2 => &[Basis::B1, Basis::B3],
        };
        for to in via {
            check(convert(&convert(&a, *to), *basis) == a, || format!("{w} in {basis} does not survive {to}"))?;
        }
    }
    let drb = RingSpec::standard(Variety::Drb);
    let mut rng = gen::rng(6);
    for _ in 0..100 {
        let a = gen::random_weyl(&mut rng, 3, 3);
        let b = gen::random_weyl(&mut rng, 3, 3);
        let direct = weyl_mul(&a, &b).unwrap();
        let product = &weyl::to_opexpr(&a) * &weyl::to_opexpr(&b);
        let nf = normal_form(&product, &drb).map_err(|e| e.to_string())?;
        let bridged = convert(&weyl::from_opexpr(&nf).map_err(|e| e.to_string())?, Basis::B2);
        check(bridged == direct, || format!("bridge disagrees on {a} · {b}"))?;
    }
    Ok(format!("{} basis words round-trip exactly; 100 bridged products agree", words.len()))
}

// ---- criterion 7 ----

fn ev_rung() -> Verdict {
    let generic = EmbeddingContext::new().target().clone();
    let targets = [isoms::point_spec(&Rat::zero()), generic];
    let mut rng = gen::rng(7);
    let mut cases = 0;
    for target in &targets {
        let eps = target.coeff().is_generic();
        let mut fs: Vec<Poly> = (0..=4).map(Poly::x_pow).collect();
        fs.extend((0..5).map(|_| gen::random_poly(&mut rng, 4, eps)));
        for f in &fs {
            for k in 1..=4 {
                let closed = isoms::ev_rung_expand(f, k, target).map_err(|e| e.to_string())?;
                let word = &(&OpExpr::letter(OpLetter::Int) * &c(f)) * &OpExpr::letter(OpLetter::Der).pow(k);
                let nf = normal_form(&word, target).map_err(|e| e.to_string())?;
                check(closed == nf, || format!("k={k}, f={f} over {}: {closed} vs {nf}", target.coeff()))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} expansions equal the rewrite normal form"))
}

// ---- criterion 8 ----

fn embedding() -> Verdict {
    let ctx = EmbeddingContext::new();
    let drb = RingSpec::standard(Variety::Drb);
    let err = |e: opring::Error| e.to_string();
    let mut rng = gen::rng(8);
    for _ in 0..100 {
        let a = gen::random_expr(&mut rng, &drb, 2, 4, 4);
        let b = gen::random_expr(&mut rng, &drb, 2, 4, 4);
        let lhs = isoms::embed_drb(&normal_form(&(&a * &b), &drb).map_err(err)?, &ctx).map_err(err)?;
        let ea = isoms::embed_drb(&a, &ctx).map_err(err)?;
        let eb = isoms::embed_drb(&b, &ctx).map_err(err)?;
        let rhs = normal_form(&(&ea * &eb), ctx.target()).map_err(err)?;
        check(lhs == rhs, || format!("embedding is not multiplicative on {a}, {b}"))?;
    }
    for bound in 1..=3 {
        let r = isoms::injectivity_witness(bound, &ctx).map_err(err)?;
        check(r.injective(), || format!("rank {} of {} at bound {bound}: {:?}", r.rank, r.words, r.dependency))?;
    }
    for i in 0..=3 {
        for j in 0..=3 {
            for k in 0..=3 {
                let t = weyl::to_opexpr(&WeylElt::word(Basis::B1, WeylWord::Eval { i, j, k }).unwrap());
                let shifted = (&Poly::x() - &Poly::eps()).pow(j).scale(&(Rat::one() / factorial(j)));
                let head = c(&shifted.times_mono(&Mono::new(i, 0)));
                let want = &(&head * &OpExpr::letter(OpLetter::Ev)) * &OpExpr::letter(OpLetter::Der).pow(k);
                let want = normal_form(&want, ctx.target()).map_err(err)?;
                check(isoms::embed_drb(&t, &ctx).map_err(err)? == want, || format!("image of x^{i}ℓ^{j}e∂^{k}"))?;
            }
        }
    }
    let points = [int(0), int(1), int(-2), frac(1, 2), frac(-3, 4)];
    for n in 0..100 {
        let t = gen::random_expr(&mut rng, &drb, 2, 5, 4);
        let at = &points[n % points.len()];
        let generic = isoms::embed_drb(&t, &ctx).map_err(err)?.eps_at(at);
        let special = isoms::specialize(&t, at).map_err(err)?;
        check(generic == special, || format!("ε := {at} on {t}: {generic} vs {special}"))?;
    }
    Ok("homomorphism on 100 pairs, full rank at bounds 1-3, 64 evaluation images, 100 coherent specializations".into())
}

// ---- criterion 9 ----

fn quotient() -> Verdict {
    let err = |e: opring::Error| e.to_string();
    let mut rng = gen::rng(9);
    let points = [int(0), int(1), int(-2), frac(1, 3)];
    let x = c(&Poly::x());
    for n in 0..20 {
        let at = &points[n % points.len()];
        let drb = RingSpec::new(Variety::Drb, Rat::zero(), CoeffStructure::point(at.clone()));
        let e = drb_evaluation();
        let generator = &(&e * &x) - &e.scale(at);
        let a = gen::random_word(&mut rng, &drb, 3, 3);
        let b = gen::random_word(&mut rng, &drb, 3, 3);
        let t = &(&a * &generator) * &b;
        let image = project_drb_to_id(&t, &drb).map_err(err)?;
        check(image.is_zero(), || format!("generator at c = {at} survives as {image}"))?;
    }
    let drb = RingSpec::standard(Variety::Drb);
    for _ in 0..100 {
        let t = gen::random_expr(&mut rng, &drb, 2, 5, 4);
        let p = project_drb_to_id(&t, &drb).map_err(err)?;
        let s = isoms::specialize(&t, &Rat::zero()).map_err(err)?;
        check(p == s, || format!("projection and specialization differ on {t}"))?;
    }
    Ok("20 generator instances vanish; projection = specialization on 100 inputs".into())
}

// ---- criterion 10 ----

fn rung_element(rng: &mut impl Rng) -> OpExpr {
    let mut out = OpExpr::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let f = gen::random_sparse_poly(rng, 3, false);
        let g = gen::random_sparse_poly(rng, 3, false);
        let k = rng.gen_range(1..=3);
        let word = &(&(&c(&f) * &OpExpr::letter(OpLetter::VInt)) * &c(&g)) * &OpExpr::letter(OpLetter::Der).pow(k);
        out = &out + &word.scale(&gen::random_rat(rng));
    }
    out
}

fn decomposition() -> Verdict {
    let err = |e: opring::Error| e.to_string();
    let mut rng = gen::rng(10);
    let specs = [RingSpec::standard(Variety::Drb), RingSpec::standard(Variety::Id)];
    for n in 0..300 {
        let s = &specs[n % 2];
        let t = normal_form(&gen::random_expr(&mut rng, s, 3, 6, 4), s).map_err(err)?;
        let parts = classify(&t, s).map_err(err)?;
        let total = parts.values().fold(OpExpr::zero(), |acc, p| &acc + p);
        check(total == t, || format!("summands of {t} do not add up"))?;
        let words: usize = parts.values().map(OpExpr::len).sum();
        check(words == t.len(), || format!("a word of {t} lands in two summands"))?;
    }
    let drb = RingSpec::standard(Variety::Drb);
    let e = drb_evaluation();
    for _ in 0..100 {
        let a = rung_element(&mut rng);
        let b = rung_element(&mut rng);
        let ab = normal_form(&(&a * &b), &drb).map_err(err)?;
        let parts = classify(&ab, &drb).map_err(err)?;
        check(parts.keys().all(|k| *k == Component::Rung), || format!("rung product leaves the rung: {ab}"))?;
        let ae = normal_form(&(&a * &e), &drb).map_err(err)?;
        check(ae.is_zero(), || format!("{a} · e = {ae}"))?;
    }
    Ok("300 normal forms classify without residue; rung closed and right-annihilated by e on 100 samples".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("polarization golden tests", polarization_golden, Some(Duration::from_secs(1))),
        ("rewrite-rule fidelity", rule_fidelity, None),
        ("confluence suite", confluence, Some(Duration::from_secs(30))),
        ("action oracle", action_oracle, Some(Duration::from_secs(60))),
        ("weyl identities", weyl_identities, None),
        ("basis transitions", basis_transitions, None),
        ("ev-rung expansion", ev_rung, None),
        ("embedding", embedding, None),
        ("quotient", quotient, None),
        ("decomposition classification", decomposition, None),
    ];
    let mut failed = Vec::new();
    for (n, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let elapsed = start.elapsed();
        let verdict = match (verdict, limit) {
            (Ok(_), Some(limit)) if elapsed > *limit => {
                Err(format!("took {:.2} s, limit {} s", elapsed.as_secs_f64(), limit.as_secs()))
            }
            (v, _) => v,
        };
        let timing = match limit {
            Some(limit) => format!("{:.2} s, limit {} s", elapsed.as_secs_f64(), limit.as_secs()),
            None => format!("{:.2} s", elapsed.as_secs_f64()),
        };
        match verdict {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({timing}, exact)", n + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why} ({timing})", n + 1);
                failed.push(n + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
