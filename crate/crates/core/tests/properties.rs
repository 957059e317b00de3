use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qhnorm_core::normalize::{normalize, trivialize_r, Phase, TwistCertificate};
use qhnorm_core::quasihopf::{
    alpha2, alpha2_squared, apply_twist, category_d, check_axioms, divided_power, group_algebra, jacobson_radical,
    primitives, random_pseudotwist, TwistKind,
};
use qhnorm_core::tensorops::{
    beta_cocycle, cartier_d_unchecked, normalized_cochain_basis, solve_coboundary, Structure, SymDecomposition,
};
use qhnorm_core::witt::{coker_p, ker_p};
use qhnorm_core::{FieldSpec, QuasiHopfDatum, RadicalFiltration, TensorElement, WittRing};

fn f2() -> FieldSpec {
    FieldSpec::prime(2).unwrap()
}

fn braided_families() -> Vec<QuasiHopfDatum> {
    vec![category_d(), alpha2_squared()]
}

fn all_families() -> Vec<QuasiHopfDatum> {
    vec![
        category_d(),
        alpha2(),
        alpha2_squared(),
        group_algebra(&[2], &f2()).unwrap(),
        group_algebra(&[4], &f2()).unwrap(),
        divided_power(2).unwrap(),
    ]
}

fn random_tensor(ring_size: u64, dim: usize, arity: usize, template: &TensorElement, rng: &mut ChaCha8Rng) -> TensorElement {
    let coeffs = (0..dim.pow(arity as u32)).map(|_| rng.gen_range(0..ring_size as u32)).collect();
    TensorElement::from_coeffs(template.ring(), dim, arity, coeffs).unwrap()
}

/// `1 + X` with every adapted component of `X` in filtration degree `≥ n ≥ 1`.
fn pseudotwist_above(qh: &QuasiHopfDatum, filt: &RadicalFiltration, n: u32, rng: &mut ChaCha8Rng) -> TensorElement {
    let dim = qh.dim();
    let deg = filt.degrees();
    let mut x = TensorElement::zeros(qh.ring(), dim, 2);
    for i in 0..dim {
        for j in 0..dim {
            if deg[i] + deg[j] >= n && rng.gen_bool(0.5) {
                x.set(&[i, j], 1);
            }
        }
    }
    qh.one(2).add(&filt.from_adapted(&x))
}

fn random_cochain(h: &Structure, i: usize, rng: &mut ChaCha8Rng) -> TensorElement {
    let q = h.ring().size() as u32;
    normalized_cochain_basis(h, i).iter().fold(h.zero(i), |acc, b| acc.add(&b.scale(rng.gen_range(0..q))))
}

fn witt_rings() -> Vec<WittRing> {
    [(8u32, 3usize), (9, 2), (16, 2), (4, 3), (27, 1), (5, 2)]
        .iter()
        .map(|&(q, n)| WittRing::over(&FieldSpec::with_order(q).unwrap(), n).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witt_ring_axioms_on_larger_rings(k in 0usize..6, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let ring = &witt_rings()[k];
        let size = ring.size().unwrap();
        let (x, y, z) = (ring.from_index(a % size), ring.from_index(b % size), ring.from_index(c % size));
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(x.add(&y).unwrap().add(&z).unwrap(), x.add(&y.add(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(
            x.mul(&y.add(&z).unwrap()).unwrap(),
            x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap()
        );
        prop_assert!(x.add(&x.neg()).unwrap().is_zero());
        // F^m = id on W_n(F_{p^m}).
        let m = ring.field().m();
        let mut fx = x.clone();
        for _ in 0..m {
            fx = fx.frobenius();
        }
        prop_assert_eq!(fx, x);
    }

    #[test]
    fn d_squared_vanishes(k in 0usize..9, i in 1usize..3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = if k < 6 {
            all_families()[k].structure().clone()
        } else {
            beta_cocycle(k as u32 - 5).unwrap().0
        };
        let x = random_cochain(&h, i, &mut rng);
        prop_assert!(cartier_d_unchecked(&h, &cartier_d_unchecked(&h, &x)).is_zero());
    }

    #[test]
    fn transposition_invariant_tensors_have_zero_alt(seed in any::<u64>(), s in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = category_d().one(3);
        let x = random_tensor(2, 3, 3, &t, &mut rng);
        let swap = [[1, 0, 2], [0, 2, 1], [2, 1, 0]][s];
        let sym = x.add(&x.permute_legs(&swap).unwrap());
        prop_assert!(sym.alt3().is_zero());
        let y = x.add(&x.permute_legs(&[2, 1, 0]).unwrap()).cyc3();
        prop_assert_eq!(y.permute_legs(&[2, 1, 0]).unwrap(), y);
        let v = random_tensor(2, 3, 2, &t, &mut rng);
        let once = v.add(&v.flip());
        prop_assert!(once.add(&once.flip()).is_zero());
    }

    #[test]
    fn twisting_is_an_action(k in 0usize..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let qh = &all_families()[k];
        let filt = jacobson_radical(qh).unwrap();
        let j = random_pseudotwist(qh, &filt, TwistKind::Pseudo, &mut rng).unwrap();
        let first = apply_twist(qh, &j).unwrap();
        let kk = random_pseudotwist(&first, &filt, TwistKind::Pseudo, &mut rng).unwrap();
        let mut cert = TwistCertificate::new();
        cert.push(qh, j.clone());
        cert.push(&first, kk.clone());
        let composite = first.structure().mul(&kk, &j);
        prop_assert_eq!(cert.replay(qh).unwrap(), apply_twist(qh, &composite).unwrap());
    }

    #[test]
    fn twisting_preserves_axioms(k in 0usize..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let qh = &all_families()[k];
        let dim = qh.dim();
        // Arbitrary J; only invertible ones are kept.
        let j = random_tensor(qh.ring().size(), dim, 2, &qh.one(2), &mut rng);
        if let Ok(t) = apply_twist(qh, &j) {
            let rep = check_axioms(&t);
            prop_assert!(rep.passed(), "{}", rep);
        }
    }

    #[test]
    fn high_degree_twists_move_r_only_in_high_degree(k in 0usize..2, n in 1u32..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let qh = &braided_families()[k];
        let filt = jacobson_radical(qh).unwrap();
        let j = pseudotwist_above(qh, &filt, n, &mut rng);
        let t = apply_twist(qh, &j).unwrap();
        let moved = filt.degree(&t.r().sub(qh.r()));
        prop_assert!(moved.is_none_or(|m| m >= n), "R moved in degree {moved:?} < {n}");
    }

    #[test]
    fn trivialized_d_is_close_to_a_correct_guess(k in 0usize..2, n in 1u32..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let qh = &braided_families()[k];
        let filt = jacobson_radical(qh).unwrap();
        let guess = qh.basis_vector(1);
        prop_assert_eq!(qh.r(), &qh.one(2).add(&guess.tensor(&guess)));
        let t = apply_twist(qh, &pseudotwist_above(qh, &filt, n, &mut rng)).unwrap();
        let st = trivialize_r(&t, &filt).unwrap();
        let gap = filt.degree(&st.d.sub(&guess));
        prop_assert!(gap.is_none_or(|g| 2 * g >= n), "d − d' has degree {gap:?} < {n}/2");
    }

    #[test]
    fn leading_part_is_rigid(k in 0usize..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let qh = &all_families()[k];
        let filt = jacobson_radical(qh).unwrap();
        let base = normalize(qh).unwrap();
        let kind = if seed % 2 == 0 { TwistKind::Pseudo } else { TwistKind::Normalized };
        let j = random_pseudotwist(qh, &filt, kind, &mut rng).unwrap();
        let res = normalize(&apply_twist(qh, &j).unwrap()).unwrap();
        prop_assert_eq!(res.degree, base.degree);
        prop_assert_eq!(&res.delta, &base.delta);
        let handled: Vec<u32> = res.transcript.iter().filter(|e| e.phase == Phase::Phi).map(|e| e.degree).collect();
        prop_assert!(handled.windows(2).all(|w| w[0] < w[1]));
        let bound = 3 * filt.nilpotency() as u32;
        prop_assert!(handled.iter().all(|&l| l < bound), "{handled:?} exceeds {bound}");
    }
}

#[test]
fn witt_kernel_times_image_is_everything() {
    for ring in witt_rings() {
        let coker = coker_p(&ring).unwrap();
        let ker = ker_p(&ring).unwrap();
        assert_eq!(ker.elements.len() as u64 * coker.image_size(), ring.size().unwrap());
    }
}

#[test]
fn delta_of_radical_has_no_pi_part_in_gr() {
    let mut data = vec![divided_power(2).unwrap(), divided_power(3).unwrap()];
    for r in 1..=3 {
        data.push(group_algebra(&[1 << r], &f2()).unwrap());
    }
    for qh in data {
        let filt = jacobson_radical(&qh).unwrap();
        let gr = filt.gr_structure(qh.structure()).unwrap();
        let sd = SymDecomposition::new(gr.ring(), gr.dim()).unwrap();
        for (i, &deg) in filt.degrees().iter().enumerate() {
            if deg == 0 {
                continue;
            }
            let delta = gr.delta(&gr.basis_vector(i));
            assert_eq!(delta, delta.flip());
            assert!(sd.pi_apply(&delta).unwrap().iter().all(|&c| c == 0), "{:?} basis {i}", qh.names());
        }
    }
    // In H itself the statement fails: Δ(1+g) = 1⊗y + y⊗1 + y⊗y with y = 1+g.
    let qh = group_algebra(&[2], &f2()).unwrap();
    let y = qh.one(1).add(&qh.basis_vector(1));
    let sd = SymDecomposition::new(qh.ring(), 2).unwrap();
    assert_ne!(sd.pi_apply(&qh.delta(&y)).unwrap(), vec![0, 0]);
}

/// Direct symmetric solve versus solving over all 2-cochains and then
/// symmetrizing with products of primitives.
#[test]
fn symmetric_solve_agrees_with_constructive_symmetrization() {
    let qh = alpha2_squared();
    let h = qh.structure();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let all = normalized_cochain_basis(h, 2);
    let sym: Vec<TensorElement> = all.iter().map(|b| b.add(&b.flip())).chain(all.iter().map(|b| {
        let mut diag = h.zero(2);
        for (t, c) in b.support() {
            let (i, j) = (t / h.dim(), t % h.dim());
            if i == j {
                diag.add_at(t, c);
            }
        }
        diag
    })).filter(|b| !b.is_zero()).collect();
    let prims = primitives(&qh).unwrap();
    for _ in 0..20 {
        let f = sym.iter().fold(h.zero(2), |acc, b| acc.add(&b.scale(rng.gen_range(0..2))));
        let phi = cartier_d_unchecked(h, &f);
        let direct = solve_coboundary(h, &phi, &sym).expect("symmetric solution");
        let f_sym = sym.iter().zip(&direct).fold(h.zero(2), |acc, (b, &c)| acc.add(&b.scale(c)));
        assert_eq!(cartier_d_unchecked(h, &f_sym), phi);
        assert_eq!(f_sym, f_sym.flip());

        let general = solve_coboundary(h, &phi, &all).expect("solution");
        let f_gen = all.iter().zip(&general).fold(h.zero(2), |acc, (b, &c)| acc.add(&b.scale(c)));
        let anti = f_gen.add(&f_gen.flip());
        let mut corrected = f_gen.clone();
        for (a, p) in prims.iter().enumerate() {
            for q in &prims[a + 1..] {
                let pq = p.tensor(q);
                let c = anti.coeffs().iter().zip(pq.coeffs()).find(|(_, &y)| y != 0).map(|(&x, _)| x).unwrap();
                corrected = corrected.add(&pq.scale(c));
            }
        }
        assert_eq!(corrected, corrected.flip());
        assert_eq!(cartier_d_unchecked(h, &corrected), phi);
    }
}
