mod common;

use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::field;
use linrank::{apps, dickson, gen, subres, FieldCtx, FieldPoly, LinearizedPoly};

/// (p, n) pairs small enough to enumerate.
const FIELDS: [(u64, u32); 6] = [(2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)];

fn map_for(seed: u64, stride: u32, ctx: &Arc<FieldCtx>) -> LinearizedPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = ctx.n();
    if rng.gen_bool(0.5) {
        LinearizedPoly::random(ctx, n, stride, &mut rng).unwrap()
    } else {
        let dim = rng.gen_range(0..=n);
        gen::planted_map(ctx, dim, rng.gen_range(1..=n), stride, &mut rng).unwrap()
    }
}

fn field_strategy() -> impl Strategy<Value = Arc<FieldCtx>> {
    (0..FIELDS.len()).prop_map(|i| field(FIELDS[i].0, FIELDS[i].1))
}

/// x^{q^n} − x as a q-polynomial.
fn field_equation(ctx: &Arc<FieldCtx>) -> LinearizedPoly {
    let n = ctx.n();
    let mut coeffs = vec![ctx.zero(); n + 1];
    coeffs[0] = ctx.neg(&ctx.one());
    coeffs[n] = ctx.one();
    LinearizedPoly::new(ctx.clone(), coeffs, 1).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minor_chain_gives_kernel_dimension(ctx in field_strategy(), seed in any::<u64>()) {
        let f = map_for(seed, 1, &ctx);
        let cert = dickson::rank_via_minor_chain(&f).unwrap();
        let dim = common::kernel_dim(&f);
        prop_assert_eq!(cert.mu, dim);
        prop_assert_eq!(cert.rank, ctx.n() - dim);
        prop_assert_eq!(dickson::dickson_matrix(&f).unwrap().rank(), ctx.n() - dim);
        prop_assert!(cert.det_chain[..cert.mu].iter().all(|d| d.is_zero()));
        prop_assert!(!cert.det_chain[cert.mu].is_zero());
    }

    #[test]
    fn dickson_matrix_matches_formula(ctx in field_strategy(), seed in any::<u64>()) {
        let f = map_for(seed, 1, &ctx);
        prop_assert_eq!(dickson::dickson_matrix(&f).unwrap(), common::dickson_by_formula(&f));
    }

    #[test]
    fn dickson_and_subresultant_minors_are_equal(ctx in field_strategy(), seed in any::<u64>()) {
        // exact equality, odd characteristic included
        let f = map_for(seed, 1, &ctx);
        for m in 0..ctx.n() {
            prop_assert_eq!(
                dickson::dickson_minor(&f, m).unwrap().det().unwrap(),
                subres::build_subresultant_padded(&f, m).unwrap().det().unwrap(),
                "m = {}", m
            );
        }
    }

    #[test]
    fn padded_chain_gives_kernel_dimension(ctx in field_strategy(), seed in any::<u64>()) {
        let f = map_for(seed, 1, &ctx);
        prop_assert_eq!(subres::rank_via_subres_padded(&f).unwrap().mu, common::kernel_dim(&f));
    }

    #[test]
    fn vanishing_top_coefficient_changes_at_most_sign(ctx in field_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = ctx.n();
        let k = rng.gen_range(0..n - 1);
        let f = LinearizedPoly::random_of_degree(&ctx, k, 1, &mut rng).unwrap();
        let g = field_equation(&ctx);
        for m in 0..=k {
            let padded = subres::build_subresultant_padded(&f, m).unwrap().det().unwrap();
            let exact = subres::build_subresultant_q(&f, &g, m).unwrap().det().unwrap();
            prop_assert!(padded == exact || padded == ctx.neg(&exact));
        }
    }

    #[test]
    fn subresultant_chain_gives_gcd_degree(ctx in field_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let deg_f = rng.gen_range(0..=4);
        let deg_g = rng.gen_range(0..=4);
        let deg_w = rng.gen_range(0..=deg_f.min(deg_g));
        let (f, g) = gen::common_right_factor(&ctx, deg_f, deg_g, deg_w, 1, &mut rng).unwrap();
        let chain = subres::gcd_qdeg_via_subres(&f, &g).unwrap();
        prop_assert_eq!(Some(chain.mu), f.gcrd(&g).unwrap().degree());
        for (i, size) in chain.sizes.iter().enumerate() {
            prop_assert_eq!(*size, deg_f + deg_g - 2 * i);
        }
        for m in 0..=chain.mu {
            prop_assert_eq!(subres::subres_nullity(&f, &g, m).unwrap(), chain.mu - m);
        }
        for m in 0..deg_f.min(deg_g) {
            prop_assert!(subres::structural_shrink_check(&f, &g, m).unwrap());
        }
    }

    #[test]
    fn gcd_with_field_equation_has_degree_q_to_the_nullity(seed in any::<u64>()) {
        let ctx = field(2, 4);
        let f = map_for(seed, 1, &ctx);
        prop_assume!(!f.is_zero());
        let g = field_equation(&ctx);
        let dim = common::kernel_dim(&f);
        prop_assert_eq!(f.ordinary_gcd_oracle(&g).unwrap().degree(), Some(1usize << dim));
        let d = f.reduce_mod().gcrd(&g).unwrap();
        let kd: Vec<_> = ctx.elements().unwrap().filter(|x| d.eval(x).unwrap().is_zero()).collect();
        let kf: Vec<_> = ctx.elements().unwrap().filter(|x| f.eval(x).unwrap().is_zero()).collect();
        prop_assert_eq!(kd, kf);
    }

    #[test]
    fn sigma_chain_and_consecutive_minors(seed in any::<u64>(), case in 0usize..3) {
        let (ctx, stride) = [(field(2, 5), 2), (field(2, 5), 3), (field(3, 4), 3)][case].clone();
        let f = map_for(seed, stride, &ctx);
        let cert = dickson::rank_via_minor_chain_sigma(&f).unwrap();
        prop_assert_eq!(cert.mu, common::kernel_dim(&f));
        let d = dickson::dickson_sigma(&f).unwrap();
        prop_assert_eq!(&d, &common::dickson_by_formula(&f));
        prop_assert_eq!(d.rank(), dickson::dickson_matrix(&f.expand_plain()).unwrap().rank());
        let n = ctx.n();
        for m in 0..=cert.mu {
            let reference = dickson::dickson_minor_sigma(&f, m).unwrap().det().unwrap().is_zero();
            for j in 0..n {
                for k in 0..n {
                    let rows = dickson::consecutive_run(j, m, n);
                    let cols = dickson::consecutive_run(k, m, n);
                    let det = dickson::minor_mjk(&f, &rows, &cols).unwrap().det().unwrap();
                    prop_assert_eq!(det.is_zero(), reference);
                }
            }
        }
    }

    #[test]
    fn transpose_and_shift_relations(seed in any::<u64>(), stride in 1u32..5, t in 0usize..7) {
        let ctx = field(2, 5);
        let f = map_for(seed, stride, &ctx);
        let hat = dickson::hat(&f);
        prop_assert_eq!(
            dickson::dickson_sigma(&f).unwrap().transpose(),
            common::dickson_by_formula(&hat)
        );
        let rank = 5 - common::kernel_dim(&f);
        prop_assert_eq!(5 - common::kernel_dim(&hat), rank);
        prop_assert_eq!(5 - common::kernel_dim(&dickson::frobenius_shift(&f, t)), rank);
    }

    #[test]
    fn weights_match_enumeration(ctx in field_strategy(), seed in any::<u64>()) {
        let f = map_for(seed, 1, &ctx);
        let spectrum = apps::weight_spectrum(&f).unwrap();
        prop_assert_eq!(&spectrum.counts, &common::point_weights(&f));
        prop_assert_eq!(spectrum.vector_total(ctx.q()), (ctx.order() - 1) as u128);
        let scattered = apps::scattered_check(&f).unwrap().scattered;
        prop_assert_eq!(scattered, spectrum.is_scattered());
        prop_assert_eq!(
            scattered,
            apps::direction_count_brute(&f).unwrap() == (ctx.order() - 1) / (ctx.q() - 1)
        );
    }

    #[test]
    fn h0_roots_are_shifted_directions(ctx in field_strategy(), seed in any::<u64>()) {
        let f = map_for(seed, 1, &ctx);
        let a0 = f.folded(ctx.n())[0].clone();
        let roots: std::collections::BTreeSet<u64> = ctx
            .elements()
            .unwrap()
            .filter(|y| apps::h_eval(&f, y, 0).unwrap().is_zero())
            .map(|y| ctx.encode(&y))
            .collect();
        let shifted: std::collections::BTreeSet<u64> = ctx
            .elements()
            .unwrap()
            .skip(1)
            .map(|x| {
                let slope = ctx.div(&common::eval(&f, &x), &x).unwrap();
                ctx.encode(&ctx.sub(&a0, &slope))
            })
            .collect();
        prop_assert_eq!(roots, shifted);
    }

    #[test]
    fn classical_subresultants_give_gcd_degree(seed in any::<u64>(), p in prop_oneof![Just(2u64), Just(3), Just(5), Just(7)]) {
        let ctx = field(p, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let deg_f = rng.gen_range(0..=7);
        let deg_g = rng.gen_range(0..=7);
        let deg_w = rng.gen_range(0..=deg_f.min(deg_g));
        let (f, g): (FieldPoly, FieldPoly) = gen::common_factor_pair(&ctx, deg_f, deg_g, deg_w, &mut rng);
        let euclid = common::euclid_gcd_degree(f.encodings(), g.encodings(), p);
        prop_assert_eq!(Some(subres::classical_gcd_deg(&f, &g).unwrap()), euclid);
    }
}

#[test]
fn gcrd_equals_ordinary_gcd_exhaustively_over_f4() {
    let ctx = field(2, 2);
    let polys: Vec<LinearizedPoly> = (0..64u64)
        .map(|v| LinearizedPoly::from_encodings(ctx.clone(), &[v % 4, (v / 4) % 4, v / 16], 1).unwrap())
        .collect();
    for f in &polys {
        for g in &polys {
            if f.is_zero() && g.is_zero() {
                continue;
            }
            let gcrd = f.gcrd(g).unwrap().to_ordinary().unwrap();
            assert_eq!(gcrd, f.ordinary_gcd_oracle(g).unwrap(), "{f:?} {g:?}");
        }
    }
}

#[test]
fn zero_map_certificate() {
    for (p, n) in FIELDS {
        let ctx = field(p, n);
        let zero = LinearizedPoly::zero(ctx.clone(), 1).unwrap();
        let cert = dickson::rank_via_minor_chain(&zero).unwrap();
        assert!(cert.zero_map);
        assert_eq!((cert.mu, cert.rank), (n as usize, 0));
        assert_eq!(cert.det_chain.last(), Some(&ctx.one()));
        let padded = subres::rank_via_subres_padded(&zero).unwrap();
        assert_eq!(padded, cert);
    }
}
