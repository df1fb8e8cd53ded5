//! Acceptance run: one PASS/FAIL line per criterion, then a nonzero exit if
//! anything failed. All identities are exact; the only tolerances are the
//! wall-clock limits printed next to each timed criterion.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use ksbicat::algebra::{center, primitive_idempotents, Algebra, CayleyTable};
use ksbicat::bimodule::{is_equivalence, Word};
use ksbicat::io::scramble;
use ksbicat::kstheory::{
    adjointify, associated_idempotent, cut_down_summand, equivalence_from_idempotents, frobenius_from_splitting,
    ks_decompose, ks_decompose_seeded, match_decompositions, split_by_idempotent, split_by_idempotent_in_basis,
    strong_indecomposability_report, verify_direct_sum, verify_raw_direct_sum, verify_splitting_datum, MatchStrategy,
    RawDirectSum, SplittingDatum, SplittingOutcome, Twist,
};
use ksbicat::linalg::matrix::{random_invertible, random_scalar};
use ksbicat::linalg::{Field, Poly, Scalar};
use ksbicat::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LIMIT_1: Duration = Duration::from_secs(60);
const LIMIT_6: Duration = Duration::from_secs(120);

type Check = Result<String, String>;

fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn ints(f: Field, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| f.from_i64(x)).collect()
}

fn group(f: Field, g: &CayleyTable) -> Algebra {
    Algebra::group_algebra(f, g).unwrap()
}

fn zentrum(a: &Algebra) -> Algebra {
    center(a).unwrap().algebra
}

fn quotient(f: Field, coeffs: &[i64]) -> Algebra {
    Algebra::polynomial_quotient(&Poly::from_i64(f, coeffs)).unwrap()
}

fn cross(a: &Algebra, b: &Algebra) -> Algebra {
    Algebra::product(&[a, b]).unwrap()
}

/// Commutative algebras over prime fields, small enough to enumerate.
fn curated() -> Vec<(&'static str, Algebra)> {
    let c = CayleyTable::cyclic;
    let c2c2 = CayleyTable::direct_product(&c(2), &c(2));
    vec![
        ("F2[x]/(x^2)", Algebra::truncated_polynomial(gf(2), 2).unwrap()),
        ("F2[x]/(x^3)", Algebra::truncated_polynomial(gf(2), 3).unwrap()),
        ("F2[x]/(x^3+x+1)", quotient(gf(2), &[1, 1, 0, 1])),
        ("F3[x]/(x^2+1)", quotient(gf(3), &[1, 0, 1])),
        ("F5[x]/(x^2-1)", quotient(gf(5), &[-1, 0, 1])),
        ("F7[x]/(x^3-1)", quotient(gf(7), &[-1, 0, 0, 1])),
        ("F3C3", group(gf(3), &c(3))),
        ("F5C4", group(gf(5), &c(4))),
        ("F3C2", group(gf(3), &c(2))),
        ("F7C3", group(gf(7), &c(3))),
        ("F2C4", group(gf(2), &c(4))),
        ("F3C6", group(gf(3), &c(6))),
        ("F2C2xC2", group(gf(2), &c2c2)),
        ("F5C2xC2", group(gf(5), &c2c2)),
        ("F13C4", group(gf(13), &c(4))),
        ("F2^3", Algebra::product_of_fields(gf(2), 3)),
        ("F3 x F3[x]/(x^2)", cross(&Algebra::ground(gf(3)), &Algebra::truncated_polynomial(gf(3), 2).unwrap())),
        ("Z(M2(F3))", zentrum(&Algebra::matrix(gf(3), 2).unwrap())),
        ("Z(M3(F2))", zentrum(&Algebra::matrix(gf(2), 3).unwrap())),
        ("Z(M2(F5) x F5)", zentrum(&cross(&Algebra::matrix(gf(5), 2).unwrap(), &Algebra::ground(gf(5))))),
        ("Z(F2S3)", zentrum(&group(gf(2), &CayleyTable::symmetric(3)))),
        ("Z(F3S3)", zentrum(&group(gf(3), &CayleyTable::symmetric(3)))),
        ("Z(F7S3)", zentrum(&group(gf(7), &CayleyTable::symmetric(3)))),
        ("Z(F3D4)", zentrum(&group(gf(3), &CayleyTable::dihedral(4)))),
        ("Z(F2Q8)", zentrum(&group(gf(2), &CayleyTable::quaternion()))),
        ("Z(F5A4)", zentrum(&group(gf(5), &CayleyTable::alternating(4)))),
        ("Z(F7D6)", zentrum(&group(gf(7), &CayleyTable::dihedral(6)))),
    ]
}

fn residues(v: &[Scalar]) -> Vec<u64> {
    v.iter().map(|s| s.residue().expect("prime field")).collect()
}

/// Primitive idempotents by brute force over all `p^n` elements, in plain
/// machine arithmetic.
fn enumerate_primitive(a: &Algebra) -> BTreeSet<Vec<u64>> {
    let p = a.field().characteristic();
    let n = a.dim();
    let sc: Vec<Vec<Vec<u64>>> = a
        .structure_constants()
        .iter()
        .map(|r| r.iter().map(|v| residues(v)).collect())
        .collect();
    let mul = |x: &[u64], y: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; n];
        for i in (0..n).filter(|&i| x[i] != 0) {
            for j in (0..n).filter(|&j| y[j] != 0) {
                let c = x[i] * y[j] % p;
                for (k, o) in out.iter_mut().enumerate() {
                    *o = (*o + c * sc[i][j][k]) % p;
                }
            }
        }
        out
    };
    let total = p.pow(n as u32);
    let mut idem = Vec::new();
    let mut x = vec![0u64; n];
    for idx in 1..total {
        let mut r = idx;
        for c in x.iter_mut() {
            *c = r % p;
            r /= p;
        }
        if mul(&x, &x) == x {
            idem.push(x.clone());
        }
    }
    idem.iter()
        .filter(|e| !idem.iter().any(|f| f != *e && mul(e, f) == **f))
        .cloned()
        .collect()
}

fn criterion_1(algebras: &[(&str, Algebra)]) -> Check {
    if algebras.len() < 20 {
        return Err(format!("only {} algebras", algebras.len()));
    }
    for (name, a) in algebras {
        if !a.is_commutative() {
            return Err(format!("{name} is not commutative"));
        }
        let bound = a.field().characteristic().checked_pow(a.dim() as u32);
        if bound.is_none_or(|b| b > 1_000_000) {
            return Err(format!("{name} too large to enumerate"));
        }
        let d = primitive_idempotents(a).map_err(|e| format!("{name}: {e}"))?;
        if !d.complete {
            return Err(format!("{name}: factorization reported partial"));
        }
        let got: BTreeSet<Vec<u64>> = d.idempotents.iter().map(|e| residues(e)).collect();
        if got.len() != d.idempotents.len() || got != enumerate_primitive(a) {
            return Err(format!("{name}: idempotents differ from enumeration"));
        }
    }
    Ok(format!("{} algebras, exact set equality", algebras.len()))
}

/// `(1/6) Σ g`, `(1/6) Σ sgn(g) g` and the rest; group elements in
/// lexicographic permutation order.
fn qs3_oracle() -> (Arc<Algebra>, BTreeSet<Vec<Scalar>>) {
    let q = Field::Rationals;
    let x = Arc::new(group(q, &CayleyTable::symmetric(3)));
    let sixth = q.parse("1/6").unwrap();
    let triv: Vec<Scalar> = vec![sixth.clone(); 6];
    let sgn: Vec<Scalar> = [1, -1, -1, 1, 1, -1].iter().map(|&s| &q.from_i64(s) * &sixth).collect();
    let rest: Vec<Scalar> = (0..6)
        .map(|i| &(&x.unit()[i] - &triv[i]) - &sgn[i])
        .collect();
    (x, [triv, sgn, rest].into_iter().collect())
}

fn criterion_2(algebras: &[(&str, Algebra)], data: &mut Vec<(String, SplittingDatum)>) -> Check {
    let mut cases: Vec<(String, Arc<Algebra>, Vec<Scalar>)> = Vec::new();
    for (name, a) in algebras {
        let x = Arc::new(a.clone());
        for e in primitive_idempotents(a).map_err(|e| e.to_string())?.idempotents {
            cases.push((name.to_string(), x.clone(), e));
        }
    }
    let (qs3, expected) = qs3_oracle();
    let d = ks_decompose(&qs3).map_err(|e| e.to_string())?;
    let got: BTreeSet<Vec<Scalar>> = d.idempotents.iter().cloned().collect();
    if got != expected {
        return Err("central idempotents of QS3 differ from the character formulas".into());
    }
    for e in expected {
        cases.push(("QS3".into(), qs3.clone(), e));
    }
    for (name, x, e) in cases {
        let (s, _) = split_by_idempotent(&x, &e).map_err(|err| format!("{name}: {err}"))?;
        let r = verify_splitting_datum(&s).map_err(|err| err.to_string())?;
        if !r.passed() {
            return Err(format!("{name}: {}", r.failures().join(", ")));
        }
        if associated_idempotent(&s).map_err(|err| err.to_string())? != e {
            return Err(format!("{name}: idempotent does not round-trip"));
        }
        data.push((name, s));
    }
    Ok(format!("{} splitting data, 0 failed identities", data.len()))
}

/// A random central unit of `a`.
fn central_unit(a: &Algebra, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    let z = center(a).unwrap();
    loop {
        let c: Vec<Scalar> = (0..z.algebra.dim()).map(|_| random_scalar(a.field(), rng)).collect();
        let u = z.embed(&c);
        if a.left_mult(&u).is_invertible() {
            return u;
        }
    }
}

fn criterion_3() -> Check {
    let q = Field::Rationals;
    let algebras: Vec<(&str, Algebra)> = vec![
        ("Q^3", Algebra::product_of_fields(q, 3)),
        ("Q x Q[x]/(x^2)", cross(&Algebra::ground(q), &Algebra::truncated_polynomial(q, 2).unwrap())),
        ("M2(F3) x F3", cross(&Algebra::matrix(gf(3), 2).unwrap(), &Algebra::ground(gf(3)))),
        ("F5C4", group(gf(5), &CayleyTable::cyclic(4))),
        ("F2[x]/(x^2) x F2", cross(&Algebra::truncated_polynomial(gf(2), 2).unwrap(), &Algebra::ground(gf(2)))),
        ("F3C3 x F3", cross(&group(gf(3), &CayleyTable::cyclic(3)), &Algebra::ground(gf(3)))),
    ];
    let mut runs = 0;
    let mut broken = 0;
    for (a_idx, (name, a)) in algebras.iter().enumerate() {
        let x = Arc::new(a.clone());
        let d = ks_decompose(&x).map_err(|e| format!("{name}: {e}"))?;
        let plain = RawDirectSum::from_diagram(&d.diagram);
        let fixed = adjointify(&plain).map_err(|e| format!("{name}: {e}"))?;
        for (s, t) in d.diagram.summands.iter().zip(&fixed.summands) {
            if s.eta != t.eta || s.eps != t.eps || s.eta_bar != t.eta_bar || s.eps_bar != t.eps_bar {
                return Err(format!("{name}: adjoint input was changed"));
            }
        }
        for trial in 0..10u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 * a_idx as u64 + trial);
            let mut raw = plain.clone();
            for _ in 0..rng.gen_range(1..=3) {
                let k = rng.gen_range(0..raw.summands.len());
                let y = raw.summands[k].y.clone();
                let tw = match rng.gen_range(0..4) {
                    0 => Twist::Counit(central_unit(&y, &mut rng)),
                    1 => Twist::Unit(central_unit(&x, &mut rng)),
                    2 => Twist::Middle(central_unit(&y, &mut rng)),
                    _ => {
                        // a plain nonzero scalar
                        let mut c = random_scalar(x.field(), &mut rng);
                        while c.is_zero() {
                            c = random_scalar(x.field(), &mut rng);
                        }
                        Twist::Counit(y.unit().iter().map(|u| &c * u).collect())
                    }
                };
                raw.twist(k, &tw).map_err(|e| format!("{name}: {e}"))?;
            }
            let pre = verify_raw_direct_sum(&raw).map_err(|e| e.to_string())?;
            if !pre.passed() {
                return Err(format!("{name}: twist broke the plain relations"));
            }
            if !verify_direct_sum(&raw.as_diagram().map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?
                .passed()
            {
                broken += 1;
            }
            let out = adjointify(&raw).map_err(|e| format!("{name}: {e}"))?;
            let r = verify_direct_sum(&out).map_err(|e| e.to_string())?;
            if !r.passed() {
                return Err(format!("{name} trial {trial}: {}", r.failures().join(", ")));
            }
            runs += 1;
        }
    }
    Ok(format!(
        "{runs} perturbations over {} algebras ({broken} non-adjoint before correction), adjoint input bit-identical",
        algebras.len()
    ))
}

fn criterion_4(data: &[(String, SplittingDatum)]) -> Check {
    let mut checked = 0;
    for (name, s) in data {
        let f = frobenius_from_splitting(s).map_err(|e| format!("{name}: {e}"))?;
        if !f.report.passed() {
            return Err(format!("{name}: {}", f.report.failures().join(", ")));
        }
        checked += f.report.len();
    }
    Ok(format!("{} splitting data, {checked} identities exact", data.len()))
}

fn criterion_5() -> Check {
    let q = Field::Rationals;
    let algebras: Vec<Algebra> = vec![
        cross(&Algebra::matrix(q, 2).unwrap(), &Algebra::ground(q)),
        Algebra::product_of_fields(q, 3),
        group(gf(5), &CayleyTable::cyclic(4)),
        cross(&Algebra::matrix(gf(3), 2).unwrap(), &Algebra::ground(gf(3))),
        group(gf(3), &CayleyTable::symmetric(3)),
        cross(&Algebra::truncated_polynomial(gf(2), 2).unwrap(), &Algebra::ground(gf(2))),
    ];
    let (mut accepted, mut refused) = (0, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for a in &algebras {
        let x = Arc::new(a.clone());
        let es = ks_decompose(&x).map_err(|e| e.to_string())?.idempotents;
        // primitive ones and one partial sum
        let mut ids = es.clone();
        if es.len() >= 2 {
            ids.push(es[0].iter().zip(&es[1]).map(|(u, v)| u + v).collect());
        }
        for e in &ids {
            let (s, _) = split_by_idempotent(&x, e).map_err(|e| e.to_string())?;
            let d = x.left_mult(e).rank();
            let t = split_by_idempotent_in_basis(&x, e, &random_invertible(x.field(), d, &mut rng))
                .map_err(|e| e.to_string())?;
            match equivalence_from_idempotents(&s, &t).map_err(|e| e.to_string())? {
                SplittingOutcome::Equivalent(eq) if eq.report.passed() => accepted += 1,
                SplittingOutcome::Equivalent(eq) => return Err(eq.report.failures().join(", ")),
                SplittingOutcome::NotEquivalent { .. } => return Err("equal idempotents refused".into()),
            }
        }
        for (i, e) in ids.iter().enumerate() {
            for f in ids.iter().skip(i + 1) {
                let (s, _) = split_by_idempotent(&x, e).map_err(|e| e.to_string())?;
                let (t, _) = split_by_idempotent(&x, f).map_err(|e| e.to_string())?;
                match equivalence_from_idempotents(&s, &t).map_err(|e| e.to_string())? {
                    SplittingOutcome::NotEquivalent { .. } => refused += 1,
                    SplittingOutcome::Equivalent(_) => return Err("distinct idempotents accepted".into()),
                }
            }
        }
    }
    if accepted < 10 || refused < 10 {
        return Err(format!("only {accepted} accepted, {refused} refused"));
    }
    Ok(format!("{accepted} rebased pairs equivalent, {refused} distinct pairs refused"))
}

fn criterion_6() -> Check {
    let q = Field::Rationals;
    let named: Vec<(String, Algebra, usize)> = vec![
        ("QS3".into(), group(q, &CayleyTable::symmetric(3)), 3),
        ("F5C4".into(), group(gf(5), &CayleyTable::cyclic(4)), 4),
        ("Q^3".into(), Algebra::product_of_fields(q, 3), 3),
        ("M2(F3)+F3".into(), cross(&Algebra::matrix(gf(3), 2).unwrap(), &Algebra::ground(gf(3))), 2),
    ];
    let mut all = named.clone();
    let bases: Vec<(&str, Algebra, usize)> = vec![
        ("F5C4", named[1].1.clone(), 4),
        ("Q^3", named[2].1.clone(), 3),
        ("M2(F3)+F3", named[3].1.clone(), 2),
        // the normal 3-Sylow is self-centralizing, so a single block
        ("F3S3", group(gf(3), &CayleyTable::symmetric(3)), 1),
        ("F7C3", group(gf(7), &CayleyTable::cyclic(3)), 3),
        ("Q x Q[x]/(x^2)", cross(&Algebra::ground(q), &Algebra::truncated_polynomial(q, 2).unwrap()), 2),
    ];
    for (name, a, n) in &bases {
        for seed in [11u64, 12] {
            all.push((format!("scrambled {name} #{seed}"), scramble(a, seed).map_err(|e| e.to_string())?, *n));
        }
    }
    for (k, (name, a, n)) in all.iter().enumerate() {
        let x = Arc::new(a.clone());
        let d1 = ks_decompose(&x).map_err(|e| format!("{name}: {e}"))?;
        let d2 = ks_decompose_seeded(&x, 100 + k as u64).map_err(|e| format!("{name}: {e}"))?;
        if d1.len() != *n || d2.len() != *n || !d1.complete || !d2.complete {
            return Err(format!("{name}: expected {n} summands"));
        }
        let m = match_decompositions(&d1, &d2, MatchStrategy::Both).map_err(|e| format!("{name}: {e}"))?;
        if !m.report.passed() {
            return Err(format!("{name}: {}", m.report.failures().join(", ")));
        }
        let eqs = m.idempotent.as_ref().map_or(0, |v| v.len());
        let steps = m.recursive.as_ref().map_or(0, |v| v.len());
        if eqs != *n || steps != *n {
            return Err(format!("{name}: {eqs} idempotent and {steps} recursive equivalences"));
        }
        // the permutation must carry idempotents to equal idempotents
        if (0..*n).any(|i| d1.idempotents[i] != d2.idempotents[m.permutation[i]]) {
            return Err(format!("{name}: permutation does not match idempotents"));
        }
    }
    Ok(format!("{} algebras ({} scrambled), both strategies agree", all.len(), all.len() - named.len()))
}

fn criterion_7() -> Check {
    let q = Field::Rationals;
    let x = Arc::new(Algebra::product_of_fields(q, 3));
    let split = |v: &[i64]| split_by_idempotent(&x, &ints(q, v)).map(|p| p.0).map_err(|e| e.to_string());
    let y = split(&[1, 0, 0])?;
    let z = split(&[1, 1, 0])?;
    let other = split(&[0, 1, 0])?;
    let c = cut_down_summand(&y, &z).map_err(|e| e.to_string())?;
    if !c.report.passed() {
        return Err(c.report.failures().join(", "));
    }
    let rest = c.complement().ok_or("complement missing")?;
    if c.summand().y.dim() != 1 || rest.y.dim() != 1 {
        return Err("wrong dimensions".into());
    }
    // Y'' -> Z -> X -> (the e_2 factor) must be a Morita equivalence
    let w = Word::new(vec![other.p.clone(), z.i.clone(), rest.i.clone()]).map_err(|e| e.to_string())?;
    if is_equivalence(w.bimodule()).map_err(|e| e.to_string())?.is_none() {
        return Err("complement is not the expected factor".into());
    }
    let same = cut_down_summand(&y, &y).map_err(|e| e.to_string())?;
    if !same.complement_is_zero() || !same.report.passed() {
        return Err("Y = Z should leave a zero complement".into());
    }
    let disjoint = split(&[0, 0, 1])?;
    match cut_down_summand(&y, &disjoint) {
        Err(Error::Precondition(_)) => {}
        _ => return Err("zero composite was not refused".into()),
    }
    Ok("Z = Y + Y'' with Y'' equivalent to the complementary factor; zero-complement and zero-composite cases ok".into())
}

fn criterion_8(algebras: &[(&str, Algebra)]) -> Check {
    let q = Field::Rationals;
    let mut all: Vec<(String, Algebra)> = algebras.iter().map(|(n, a)| (n.to_string(), a.clone())).collect();
    all.push(("QS3".into(), group(q, &CayleyTable::symmetric(3))));
    all.push(("M2(F3)+F3".into(), cross(&Algebra::matrix(gf(3), 2).unwrap(), &Algebra::ground(gf(3)))));
    all.push(("M2(F2)".into(), Algebra::matrix(gf(2), 2).unwrap()));
    all.push(("F2S3".into(), group(gf(2), &CayleyTable::symmetric(3))));
    let (mut exhaustive, mut summands) = (0, 0);
    for (name, a) in &all {
        let x = Arc::new(a.clone());
        let r = strong_indecomposability_report(&x).map_err(|e| format!("{name}: {e}"))?;
        if !r.report.passed() {
            return Err(format!("{name}: {}", r.report.failures().join(", ")));
        }
        if r.method == "exhaustive" {
            exhaustive += 1;
        }
        let d = ks_decompose(&x).map_err(|e| format!("{name}: {e}"))?;
        if d.complete {
            for s in d.summands() {
                let sr = strong_indecomposability_report(&s.y).map_err(|e| e.to_string())?;
                if !sr.strongly_indecomposable || !sr.report.passed() {
                    return Err(format!("{name}: a summand is not strongly indecomposable"));
                }
                summands += 1;
            }
        }
    }
    Ok(format!(
        "{} algebras ({exhaustive} by exhaustive count), {summands} summands strongly indecomposable",
        all.len()
    ))
}

fn report(n: usize, limit: Option<Duration>, f: impl FnOnce() -> Check) -> bool {
    let t = Instant::now();
    let result = f();
    let el = t.elapsed();
    let (ok, msg) = match (result, limit) {
        (Ok(m), Some(l)) if el >= l => (false, format!("{m}; too slow")),
        (Ok(m), _) => (true, m),
        (Err(m), _) => (false, m),
    };
    let limit = limit.map_or(String::new(), |l| format!(", limit {}s", l.as_secs()));
    println!(
        "criterion {n}: {} ({msg}; tolerance exact; {:.2}s{limit})",
        if ok { "PASS" } else { "FAIL" },
        el.as_secs_f64()
    );
    ok
}

fn main() {
    // `cargo test` passes harness flags such as `--nocapture`; listing must stay quiet.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let algebras = curated();
    let mut data = Vec::new();
    let results = [
        report(1, Some(LIMIT_1), || criterion_1(&algebras)),
        report(2, None, || criterion_2(&algebras, &mut data)),
        report(3, None, criterion_3),
        report(4, None, || criterion_4(&data)),
        report(5, None, criterion_5),
        report(6, Some(LIMIT_6), criterion_6),
        report(7, None, criterion_7),
        report(8, None, || criterion_8(&algebras)),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
