use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rinfty_core::polyring::{aut_group_enumerate, fixed_element_s};
use rinfty_core::twist::twist_step;
use rinfty_core::witness::{
    explicit_conjugator, obstruction_report, trace_certificate, Verdict, WitnessConfig,
    WitnessFamily,
};
use rinfty_core::{
    fq_make, Family, FqDescriptor, GraphAut, GroupAut, GroupCtx, GroupKind, GrpElem, Poly, RatFrac,
    RingAut, RingDesc, Scalar, ScalarDomain,
};

fn group<D: ScalarDomain>(family: Family, n: usize, dom: D) -> GroupCtx<D> {
    GroupCtx::new(GroupKind::new(family, n).unwrap(), dom).unwrap()
}

struct Sampler {
    ctx: GroupCtx<FqDescriptor>,
    gens: Vec<GrpElem<FqDescriptor>>,
    rng: ChaCha8Rng,
}

impl Sampler {
    fn new(family: Family, n: usize, p: u32, e: u32, seed: u64) -> Self {
        let ctx = group(family, n, fq_make(p, e).unwrap());
        let gens = ctx.generators().unwrap();
        Sampler {
            ctx,
            gens,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn elem(&mut self) -> GrpElem<FqDescriptor> {
        self.ctx.random_element(&self.gens, &mut self.rng, 10)
    }

    fn aut(&mut self, frob: u32, graph: bool) -> GroupAut<FqDescriptor> {
        let graph = match (self.ctx.kind().family(), graph) {
            (Family::SL | Family::PSL, true) => GraphAut::TransposeInverse,
            (Family::SOeven | Family::PSOeven, true) => GraphAut::ConjByB,
            _ => GraphAut::None,
        };
        let field = self.ctx.domain().field().clone();
        let x = self.elem();
        GroupAut::new(
            &self.ctx,
            Some(x),
            Some(RingAut::frobenius(&field, frob)),
            graph,
        )
        .unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn twist_step_is_an_action(seed in any::<u64>(), frob in 0u32..2, graph in any::<bool>()) {
        let mut s = Sampler::new(Family::SL, 2, 3, 2, seed);
        let sigma = s.aut(frob, graph);
        let (g, h, x) = (s.elem(), s.elem(), s.elem());
        let lhs = twist_step(&g.mul(&h), &x, &sigma).unwrap();
        let rhs = twist_step(&g, &twist_step(&h, &x, &sigma).unwrap(), &sigma).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_matches_sequential_application(
        seed in any::<u64>(),
        which in 0usize..2,
        graphs in any::<(bool, bool)>(),
    ) {
        let mut s = match which {
            0 => Sampler::new(Family::SL, 3, 3, 1, seed),
            _ => Sampler::new(Family::SOeven, 3, 3, 1, seed),
        };
        let sigma = s.aut(0, graphs.0);
        let tau = s.aut(0, graphs.1);
        let g = s.elem();
        let composed = sigma.compose(&tau).unwrap();
        prop_assert_eq!(composed.apply(&g).unwrap(), sigma.apply(&tau.apply(&g).unwrap()).unwrap());
    }

    #[test]
    fn graph_maps_are_homomorphisms(seed in any::<u64>(), which in 0usize..2) {
        let (family, n, eps) = match which {
            0 => (Family::SL, 3, GraphAut::TransposeInverse),
            _ => (Family::SOeven, 3, GraphAut::ConjByB),
        };
        let mut s = Sampler::new(family, n, 3, 1, seed);
        let eps = GroupAut::graph(&s.ctx, eps).unwrap();
        let (g, h) = (s.elem(), s.elem());
        let image = eps.apply(&g.mul(&h)).unwrap();
        prop_assert_eq!(image.clone(), eps.apply(&g).unwrap().mul(&eps.apply(&h).unwrap()));
        prop_assert!(s.ctx.membership(image.matrix()).unwrap());
    }

    #[test]
    fn projective_classes_ignore_the_center(seed in any::<u64>()) {
        let mut s = Sampler::new(Family::Sp, 2, 3, 1, seed);
        let psp = group(Family::PSp, 2, fq_make(3, 1).unwrap());
        let g = s.elem();
        let a = psp.element(g.matrix().clone()).unwrap();
        let b = psp.element(g.matrix().neg()).unwrap();
        prop_assert_eq!(a.matrix(), b.matrix());
    }

    #[test]
    fn trace_law_on_random_indices(p in prop::sample::select(vec![3u32, 5]), m in 1u32..=4, r in 1u32..=6) {
        let field = fq_make(p, 1).unwrap();
        let ring = RingDesc::polynomial(&field);
        let s = fixed_element_s(&Poly::t(&field), &ring).unwrap();
        let cfg = WitnessConfig::new(ring, s.clone(), WitnessFamily::AXm, 2).unwrap();
        let c = trace_certificate(m, r, &cfg).unwrap();
        prop_assert!(c.passed());
        prop_assert_eq!(c.deg_t, 2 * (r * m) as usize * s.num().degree().unwrap());
        if m > 1 {
            let smaller = trace_certificate(m - 1, r, &cfg).unwrap();
            prop_assert!(smaller.deg_t < c.deg_t);
        }
    }

    #[test]
    fn obstruction_soundness(
        k in 1u64..6,
        k2 in 1u64..6,
        a in 1i64..3,
        j in -3i64..=3,
        rank in 2usize..=3,
    ) {
        let field = fq_make(3, 1).unwrap();
        let ring = RingDesc::parse(&field, "t").unwrap();
        let s = fixed_element_s(&Poly::parse(&field, "t+1").unwrap(), &ring).unwrap();
        let rep = obstruction_report(&s.pow(k), &s.pow(k2), &ring).unwrap();
        prop_assert_eq!(rep.verdict == Verdict::Separated, k != k2);
        let c = RatFrac::t(&field).powi(j).mul(&RatFrac::constant(&field.from_int(a)));
        let lam = s.pow(k);
        let ctx = group(Family::SOodd, rank, ring.clone());
        explicit_conjugator(&lam, &c, &ctx).unwrap();
        let moved = lam.mul(&c).mul(&c);
        prop_assert_eq!(obstruction_report(&lam, &moved, &ring).unwrap().verdict, Verdict::NotSeparated);
    }

    #[test]
    fn fixed_elements_are_fixed_non_units(coeffs in prop::collection::vec(0i64..3, 2..4)) {
        let field = fq_make(3, 1).unwrap();
        let ring = RingDesc::polynomial(&field);
        let f = Poly::from_ints(&field, &coeffs);
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let s = fixed_element_s(&f, &ring).unwrap();
        prop_assert!(!ring.is_unit(&s).unwrap());
        for rho in aut_group_enumerate(&ring).unwrap() {
            prop_assert_eq!(rho.apply_frac(&s).unwrap(), s.clone());
        }
    }
}
