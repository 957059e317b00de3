//! One line per acceptance criterion; every budget and count is pinned here.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qhnorm_core::abcoh::{h2_inv_formula, sweedler_bruteforce, torsor_decompose, twist_classes_bruteforce};
use qhnorm_core::formats::write_datum;
use qhnorm_core::normalize::{identify_fpdim2, normalize, verify_final_form, Fpdim2Label, Phase};
use qhnorm_core::quasihopf::{
    alpha2, apply_twist, category_d, check_axioms, deformed_d, divided_power, function_algebra, group_algebra,
    jacobson_radical, random_pseudotwist, TwistKind,
};
use qhnorm_core::tensorops::{
    beta_cocycle, cartier_d_unchecked, normalized_cochain_basis, solve_coboundary, Structure, SymDecomposition,
};
use qhnorm_core::witt::{coker_p, doubling_identity_check, ker_p};
use qhnorm_core::{AbelianPGroup, FieldSpec, GroupPresentation, TensorElement, WittRing};

const SECOND: Duration = Duration::from_secs(1);
const BUDGET_1: Duration = SECOND;
const BUDGET_2: Duration = Duration::from_secs(30);
const BUDGET_3: Duration = Duration::from_secs(60);
const BUDGET_5: Duration = Duration::from_secs(120);
const BUDGET_6: Duration = Duration::from_secs(120);
const BUDGET_10: Duration = Duration::from_secs(300);
const SCRAMBLES_PER_FAMILY: usize = 100;
const COCHAINS_PER_ALGEBRA: usize = 500;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field(q: u32) -> FieldSpec {
    FieldSpec::with_order(q).unwrap()
}

fn cyclic(order: u64) -> GroupPresentation {
    GroupPresentation::new(vec![order])
}

fn c1_witt_modular() -> Outcome {
    for (p, n) in [(2u32, 1usize), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let ring = WittRing::over(&field(p), n).unwrap();
        let m = (p as u64).pow(n as u32);
        // k·1 by repeated addition.
        let mut image = vec![ring.zero()];
        for k in 1..m as usize {
            image.push(image[k - 1].add(&ring.one()).unwrap());
        }
        let mut seen: Vec<u64> = image.iter().map(|x| x.index()).collect();
        seen.sort_unstable();
        seen.dedup();
        ensure(seen.len() as u64 == m && Some(m) == ring.size(), || format!("W_{n}(F_{p}): k ↦ k·1 is not bijective"))?;
        ensure(image[m as usize - 1].add(&ring.one()).unwrap().is_zero(), || format!("W_{n}(F_{p}): 1 has order ≠ {m}"))?;
        for a in 0..m {
            for b in 0..m {
                let (x, y) = (&image[a as usize], &image[b as usize]);
                ensure(x.add(y).unwrap() == image[((a + b) % m) as usize], || format!("W_{n}(F_{p}): {a}+{b}"))?;
                ensure(x.mul(y).unwrap() == image[((a * b) % m) as usize], || format!("W_{n}(F_{p}): {a}*{b}"))?;
            }
        }
    }
    Ok("5 rings, full tables".into())
}

fn c2_witt_axioms() -> Outcome {
    let mut triples = 0u64;
    for (q, n) in [(2u32, 2usize), (4, 2), (2, 3), (3, 2)] {
        let ring = WittRing::over(&field(q), n).unwrap();
        let els: Vec<_> = (0..ring.size().unwrap()).map(|i| ring.from_index(i)).collect();
        let (zero, one) = (ring.zero(), ring.one());
        for x in &els {
            ensure(x.add(&zero).unwrap() == *x && x.mul(&one).unwrap() == *x, || format!("identity at {x}"))?;
            ensure(x.add(&x.neg()).unwrap().is_zero(), || format!("negation at {x}"))?;
            for y in &els {
                ensure(x.add(y).unwrap() == y.add(x).unwrap(), || format!("x+y at {x},{y}"))?;
                ensure(x.mul(y).unwrap() == y.mul(x).unwrap(), || format!("xy at {x},{y}"))?;
                for z in &els {
                    triples += 1;
                    let s = |a: &_, b: &_| qhnorm_core::WittVector::add(a, b).unwrap();
                    let m = |a: &_, b: &_| qhnorm_core::WittVector::mul(a, b).unwrap();
                    ensure(s(&s(x, y), z) == s(x, &s(y, z)), || format!("(x+y)+z at {x},{y},{z}"))?;
                    ensure(m(&m(x, y), z) == m(x, &m(y, z)), || format!("(xy)z at {x},{y},{z}"))?;
                    ensure(m(x, &s(y, z)) == s(&m(x, y), &m(x, z)), || format!("x(y+z) at {x},{y},{z}"))?;
                }
            }
        }
    }
    Ok(format!("{triples} triples"))
}

fn c3_cokernel_law() -> Outcome {
    let grid: [(u32, &[u32], &[usize]); 2] = [(2, &[2, 4, 8], &[1, 2, 3]), (3, &[3, 9], &[1, 2])];
    let mut cases = 0;
    for (p, qs, ns) in grid {
        for &q in qs {
            for &n in ns {
                let ring = WittRing::over(&field(q), n).unwrap();
                let want = cyclic((p as u64).pow(n as u32));
                let coker = coker_p(&ring).unwrap();
                ensure(*coker.presentation() == want, || format!("coker on W_{n}(F_{q}) is {}", coker.presentation()))?;
                let ker = ker_p(&ring).unwrap();
                ensure(ker.presentation == want, || format!("ker on W_{n}(F_{q}) is {}", ker.presentation))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} rings"))
}

fn c4_doubling() -> Outcome {
    let mut checked = 0;
    for q in [4, 8] {
        let rep = doubling_identity_check(&field(q)).unwrap();
        ensure(rep.passed(), || format!("W_2(F_{q}) fails at {:?}", rep.failures.first()))?;
        checked += rep.checked;
    }
    Ok(format!("{checked} elements"))
}

fn c5_formula_vs_bruteforce() -> Outcome {
    for (orders, q) in [(&[2u64][..], 2u32), (&[2], 4), (&[4], 2)] {
        let (a, f) = (AbelianPGroup::parse_orders(orders).unwrap(), field(q));
        let formula = h2_inv_formula(&a, &f).unwrap();
        let brute = twist_classes_bruteforce(&a, &f).unwrap();
        ensure(brute.presentation == formula && brute.class_count() as u64 == formula.order(), || {
            format!("({a}, F_{q}): brute {} vs formula {formula}", brute.presentation)
        })?;
    }
    Ok("3 cases".into())
}

fn c6_sweedler_h3() -> Outcome {
    let a = AbelianPGroup::parse_orders(&[2]).unwrap();
    let h = sweedler_bruteforce(&a, &field(2), 3).unwrap();
    ensure(h[2].presentation.is_trivial(), || format!("H^3 = {}", h[2].presentation))?;
    Ok(format!("{} cocycles, {} coboundaries", h[2].cocycles, h[2].coboundaries))
}

fn c7_torsor_degrees() -> Outcome {
    let f2 = field(2);
    let z2 = AbelianPGroup::parse_orders(&[2]).unwrap();
    let z4 = AbelianPGroup::parse_orders(&[4]).unwrap();
    let c2 = twist_classes_bruteforce(&z2, &f2).unwrap();
    let c4 = twist_classes_bruteforce(&z4, &f2).unwrap();
    let trivial = torsor_decompose(&z2, &f2, &c2.representatives[0]).unwrap();
    ensure(trivial == [1, 1], || format!("trivial class gives {trivial:?}"))?;
    let k = c2.class_orders.iter().position(|&o| o == 2).ok_or("no order-2 class")?;
    let nontrivial = torsor_decompose(&z2, &f2, &c2.representatives[k]).unwrap();
    ensure(nontrivial == [2], || format!("order-2 class gives {nontrivial:?}"))?;
    let k = c4.class_orders.iter().position(|&o| o == 4).ok_or("no order-4 class")?;
    let order4 = torsor_decompose(&z4, &f2, &c4.representatives[k]).unwrap();
    ensure(order4 == [4], || format!("order-4 class gives {order4:?}"))?;
    Ok("[1,1] [2] [4]".into())
}

fn random_cochain(h: &Structure, i: usize, rng: &mut ChaCha8Rng) -> TensorElement {
    let q = h.ring().size() as u32;
    normalized_cochain_basis(h, i)
        .iter()
        .fold(h.zero(i), |acc, b| acc.add(&b.scale(rng.gen_range(0..q))))
}

fn c8_beta_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for r in 1..=3u32 {
        let (h, beta) = beta_cocycle(r).unwrap();
        ensure(cartier_d_unchecked(&h, &beta).is_zero(), || format!("dβ ≠ 0 in D_{r}"))?;
        let cands = normalized_cochain_basis(&h, 1);
        ensure(solve_coboundary(&h, &beta, &cands).is_none(), || format!("β is a coboundary in D_{r}"))?;
        let sd = SymDecomposition::new(h.ring(), h.dim()).unwrap();
        let mut y = vec![0; h.dim()];
        y[1 << (r - 1)] = 1;
        ensure(sd.pi_apply(&beta).unwrap() == y, || format!("π(β) ≠ y^(2^(r-1)) in D_{r}"))?;
        for k in 0..COCHAINS_PER_ALGEBRA {
            let i = 1 + k % 2;
            let x = random_cochain(&h, i, &mut rng);
            let ddx = cartier_d_unchecked(&h, &cartier_d_unchecked(&h, &x));
            ensure(ddx.is_zero(), || format!("d² ≠ 0 on a degree-{i} cochain in D_{r}"))?;
        }
    }
    Ok(format!("r = 1,2,3; {COCHAINS_PER_ALGEBRA} cochains each"))
}

fn c9_deformation() -> Outcome {
    let rep = check_axioms(&deformed_d(2).unwrap());
    ensure(rep.passed(), || format!("over F2[h]/(h^2):\n{rep}"))?;
    let qh = deformed_d(3).unwrap();
    let rep = check_axioms(&qh);
    ensure(rep.passed_except(&["pentagon"]), || format!("over F2[h]/(h^3):\n{rep}"))?;
    let ring = qh.ring();
    let h2 = ring.mul(ring.h(), ring.h());
    let want = TensorElement::basis(ring, 2, &[1, 1, 1, 1]).scale(h2);
    let got = rep.get("pentagon").and_then(|c| c.residual.clone()).ok_or("no pentagon residual")?;
    ensure(got == want, || format!("pentagon residual {}", qh.format(&got)))?;
    Ok("residual h^2·d⊗d⊗d⊗d".into())
}

struct RoundTrips {
    runs: usize,
    phi_steps: usize,
    failures: Vec<String>,
    diagnostic_failures: Vec<String>,
}

fn round_trips() -> RoundTrips {
    let f2 = field(2);
    let families = [
        ("category_D", category_d(), false),
        ("alpha2", alpha2(), true),
        ("group_algebra(Z/2)", group_algebra(&[2], &f2).unwrap(), true),
        ("divided_power(2)", divided_power(2).unwrap(), true),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut out = RoundTrips { runs: 0, phi_steps: 0, failures: vec![], diagnostic_failures: vec![] };
    for (name, qh, tannakian) in families {
        let filt = jacobson_radical(&qh).unwrap();
        let base = normalize(&qh).unwrap();
        for k in 0..SCRAMBLES_PER_FAMILY {
            out.runs += 1;
            let kind = if k % 2 == 0 { TwistKind::Pseudo } else { TwistKind::Normalized };
            let j = random_pseudotwist(&qh, &filt, kind, &mut rng).unwrap();
            let input = apply_twist(&qh, &j).unwrap();
            let res = match normalize(&input) {
                Ok(res) => res,
                Err(e) => {
                    let msg = format!("{name} #{k}: {e}");
                    if e.to_string().contains("corruption") {
                        out.diagnostic_failures.push(msg.clone());
                    }
                    out.failures.push(msg);
                    continue;
                }
            };
            out.phi_steps += res.transcript.iter().filter(|e| e.phase == Phase::Phi).count();
            let replayed = res.certificate.replay(&input).map(|d| write_datum(&d));
            let checks = [
                (verify_final_form(&res.datum, &res.d).is_ok(), "final form"),
                (replayed.as_deref() == Ok(write_datum(&res.datum).as_str()), "replay"),
                (res.degree == base.degree && res.delta == base.delta, "δ"),
                (res.d.is_zero() == tannakian, "d = 0 iff Tannakian"),
            ];
            for (ok, what) in checks {
                if !ok {
                    out.failures.push(format!("{name} #{k}: {what}"));
                }
            }
        }
    }
    out
}

fn c10_round_trips(rt: &RoundTrips) -> Outcome {
    ensure(rt.failures.is_empty(), || rt.failures.join("; "))?;
    Ok(format!("{} scrambles", rt.runs))
}

fn c11_diagnostics(rt: &RoundTrips) -> Outcome {
    ensure(rt.diagnostic_failures.is_empty(), || rt.diagnostic_failures.join("; "))?;
    ensure(rt.phi_steps > 0, || "the Φ loop never ran".into())?;
    Ok(format!("{} Φ steps checked", rt.phi_steps))
}

fn c12_fpdim2() -> Outcome {
    let f2 = field(2);
    let got = [
        identify_fpdim2(&function_algebra(&[2], &f2).unwrap()),
        identify_fpdim2(&group_algebra(&[2], &f2).unwrap()),
        identify_fpdim2(&alpha2()),
        identify_fpdim2(&category_d()),
    ];
    let want = [Fpdim2Label::VecZ2, Fpdim2Label::RepZ2, Fpdim2Label::RepAlpha2, Fpdim2Label::D];
    for (g, w) in got.iter().zip(want) {
        ensure(g.as_ref().ok() == Some(&w), || format!("expected {w}, got {g:?}"))?;
    }
    Ok(want.map(|l| l.to_string()).join(", "))
}

fn report(n: u32, name: &str, budget: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let over = budget.is_some_and(|b| elapsed > b);
    let pass = outcome.is_ok() && !over;
    let detail = match (&outcome, budget) {
        (Err(e), _) => e.clone(),
        (Ok(s), Some(b)) if over => format!("{s}; over budget {:.0} s", b.as_secs_f64()),
        (Ok(s), _) => s.clone(),
    };
    println!(
        "criterion {n:>2}  {}  {name:<32} {:>8.2} s  {detail}",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    pass
}

fn main() {
    let mut results = vec![
        report(1, "witt modular isomorphism", Some(BUDGET_1), c1_witt_modular),
        report(2, "witt ring axioms", Some(BUDGET_2), c2_witt_axioms),
        report(3, "cokernel and kernel law", Some(BUDGET_3), c3_cokernel_law),
        report(4, "doubling identity", None, c4_doubling),
        report(5, "formula vs brute force", Some(BUDGET_5), c5_formula_vs_bruteforce),
        report(6, "sweedler H^3 vanishing", Some(BUDGET_6), c6_sweedler_h3),
        report(7, "torsor degrees", None, c7_torsor_degrees),
        report(8, "beta cocycle suite", None, c8_beta_suite),
        report(9, "deformation obstruction", None, c9_deformation),
    ];
    let mut rt = None;
    results.push(report(10, "normalization round trips", Some(BUDGET_10), || {
        let r = round_trips();
        let outcome = c10_round_trips(&r);
        rt = Some(r);
        outcome
    }));
    let rt = rt.expect("round trips ran");
    results.push(report(11, "per-step diagnostics silent", None, || c11_diagnostics(&rt)));
    results.push(report(12, "fpdim 2 classification", None, c12_fpdim2));
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, &ok)| !ok).map(|(i, _)| i + 1).collect();
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria pass", results.len());
}
