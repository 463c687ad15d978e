//! Group automorphisms in the normal form `i_x ∘ ρ ∘ ε`: an inner part, an
//! entrywise ring automorphism and a graph automorphism, applied in the order
//! graph, ring, inner.

use std::fmt;

use crate::error::{Error, Result};
use crate::groups::{Family, GroupCtx, GrpElem};
use crate::matrix::Matrix;
use crate::polyring::RingAut;
use crate::scalar::{Scalar, ScalarDomain};
use crate::text::split_top_level;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphAut {
    None,
    /// `g -> g^{-T}`, type A only.
    TransposeInverse,
    /// `g -> B g B^{-1}`, type D only.
    ConjByB,
}

impl GraphAut {
    pub fn compose(self, other: GraphAut) -> Result<GraphAut> {
        match (self, other) {
            (GraphAut::None, g) | (g, GraphAut::None) => Ok(g),
            (a, b) if a == b => Ok(GraphAut::None),
            (a, b) => Err(Error::IncompatibleKind(format!("{a:?} with {b:?}"))),
        }
    }

    fn admissible(self, family: Family) -> bool {
        match self {
            GraphAut::None => true,
            GraphAut::TransposeInverse => family.is_special_linear(),
            GraphAut::ConjByB => family.linear() == Family::SOeven,
        }
    }

    fn token(self) -> &'static str {
        match self {
            GraphAut::None => "none",
            GraphAut::TransposeInverse => "tinv",
            GraphAut::ConjByB => "B",
        }
    }
}

/// The permutation matrix of `SO_2n` exchanging the coordinates `n` and `2n`
/// (counting from 1); conjugation by it realizes the diagram symmetry of `D_n`.
pub fn b_matrix<S: Scalar>(n: usize, like: &S) -> Result<Matrix<S>> {
    if n < 3 {
        return Err(Error::BadRank(n));
    }
    let dim = 2 * n;
    let one = like.one_like();
    let mut b = Matrix::zero(dim, dim, like);
    let swap = |i: usize| match i {
        i if i == n - 1 => dim - 1,
        i if i == dim - 1 => n - 1,
        i => i,
    };
    for i in 0..dim {
        b.set(i, swap(i), one.clone());
    }
    Ok(b)
}

/// An automorphism `i_x ∘ ρ ∘ ε` of a group from [`GroupCtx`].
pub struct GroupAut<D: ScalarDomain> {
    ctx: GroupCtx<D>,
    inner: Option<GrpElem<D>>,
    ring: Option<RingAut>,
    graph: GraphAut,
    b: Option<Matrix<D::Elem>>,
}

impl<D: ScalarDomain> Clone for GroupAut<D> {
    fn clone(&self) -> Self {
        GroupAut {
            ctx: self.ctx.clone(),
            inner: self.inner.clone(),
            ring: self.ring.clone(),
            graph: self.graph,
            b: self.b.clone(),
        }
    }
}

impl<D: ScalarDomain> PartialEq for GroupAut<D> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx
            && self.inner == other.inner
            && self.ring == other.ring
            && self.graph == other.graph
    }
}

impl<D: ScalarDomain> GroupAut<D> {
    pub fn new(
        ctx: &GroupCtx<D>,
        inner: Option<GrpElem<D>>,
        ring: Option<RingAut>,
        graph: GraphAut,
    ) -> Result<Self> {
        let family = ctx.kind().family();
        if !graph.admissible(family) {
            return Err(Error::IncompatibleKind(format!(
                "{graph:?} on {}",
                ctx.kind()
            )));
        }
        if let Some(rho) = &ring {
            if !ctx.domain().stabilized_by(rho) {
                return Err(Error::NotStabilizing(format!(
                    "{rho} on {}",
                    ctx.domain().describe()
                )));
            }
        }
        if let Some(x) = &inner {
            if x.ctx() != ctx {
                return Err(Error::IncompatibleKind(format!(
                    "inner part from {}",
                    x.ctx()
                )));
            }
        }
        let b = (graph == GraphAut::ConjByB)
            .then(|| b_matrix(ctx.kind().rank(), &ctx.domain().one()))
            .transpose()?;
        Ok(GroupAut {
            ctx: ctx.clone(),
            inner: inner.filter(|x| !x.is_identity()),
            ring: ring.filter(|r| !r.is_identity()),
            graph,
            b,
        })
    }

    pub fn identity(ctx: &GroupCtx<D>) -> Self {
        Self::new(ctx, None, None, GraphAut::None).expect("identity is admissible")
    }

    pub fn inner(x: &GrpElem<D>) -> Self {
        Self::new(x.ctx(), Some(x.clone()), None, GraphAut::None).expect("inner is admissible")
    }

    pub fn ring(ctx: &GroupCtx<D>, rho: RingAut) -> Result<Self> {
        Self::new(ctx, None, Some(rho), GraphAut::None)
    }

    pub fn graph(ctx: &GroupCtx<D>, graph: GraphAut) -> Result<Self> {
        Self::new(ctx, None, None, graph)
    }

    pub fn ctx(&self) -> &GroupCtx<D> {
        &self.ctx
    }

    pub fn inner_part(&self) -> Option<&GrpElem<D>> {
        self.inner.as_ref()
    }

    pub fn ring_part(&self) -> Option<&RingAut> {
        self.ring.as_ref()
    }

    pub fn graph_part(&self) -> GraphAut {
        self.graph
    }

    pub fn is_identity(&self) -> bool {
        self.inner.is_none() && self.ring.is_none() && self.graph == GraphAut::None
    }

    /// `ρ(ε(m))`, without the inner part.
    fn apply_outer(&self, m: &Matrix<D::Elem>) -> Result<Matrix<D::Elem>> {
        let m = match self.graph {
            GraphAut::None => m.clone(),
            GraphAut::TransposeInverse => self.ctx.inverse_matrix(m).transpose(),
            GraphAut::ConjByB => {
                let b = self.b.as_ref().expect("B built with the automorphism");
                b.mul(m).mul(b)
            }
        };
        match &self.ring {
            None => Ok(m),
            Some(rho) => m.try_map(|x| self.ctx.domain().apply_ring_aut(rho, x)),
        }
    }

    pub fn apply(&self, g: &GrpElem<D>) -> Result<GrpElem<D>> {
        if g.ctx() != &self.ctx {
            return Err(Error::IncompatibleKind(format!(
                "{} element under {} automorphism",
                g.ctx(),
                self.ctx
            )));
        }
        let m = self.apply_outer(g.matrix())?;
        let m = match &self.inner {
            None => m,
            Some(x) => x.matrix().mul(&m).mul(x.inv().matrix()),
        };
        Ok(self.ctx.element_unchecked(m))
    }

    /// `self ∘ other`, pushing `other`'s inner part to the left through
    /// `σ ∘ i_x = i_{σ(x)} ∘ σ`.
    pub fn compose(&self, other: &GroupAut<D>) -> Result<GroupAut<D>> {
        if self.ctx != other.ctx {
            return Err(Error::IncompatibleKind(format!(
                "{} with {}",
                self.ctx, other.ctx
            )));
        }
        let moved = match &other.inner {
            None => None,
            Some(y) => Some(self.ctx.element_unchecked(self.apply_outer(y.matrix())?)),
        };
        let inner = match (&self.inner, moved) {
            (Some(x), Some(y)) => Some(x.mul(&y)),
            (x, y) => x.clone().or(y),
        };
        let ring = match (&self.ring, &other.ring) {
            (Some(a), Some(b)) => Some(a.compose(b)),
            (a, b) => a.clone().or_else(|| b.clone()),
        };
        GroupAut::new(&self.ctx, inner, ring, self.graph.compose(other.graph)?)
    }

    pub fn pow(&self, k: u32) -> Result<GroupAut<D>> {
        let mut acc = GroupAut::identity(&self.ctx);
        for _ in 0..k {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// The same automorphism on another group with matrices of the same size.
    pub fn transfer(&self, ctx: &GroupCtx<D>) -> Result<GroupAut<D>> {
        let inner = self.inner.as_ref().map(|x| x.transfer(ctx)).transpose()?;
        GroupAut::new(ctx, inner, self.ring.clone(), self.graph)
    }

    /// Parse `inner=<matrix>;ring=frob^r,mobius(a,b,c,d);graph=none|tinv|B`
    /// or `id`. Segments are optional; a segment without `=` continues the
    /// rows of the preceding inner matrix.
    pub fn parse(ctx: &GroupCtx<D>, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "id" {
            return Ok(Self::identity(ctx));
        }
        let mut inner_rows: Vec<String> = Vec::new();
        let mut ring = None;
        let mut graph = GraphAut::None;
        let mut in_inner = false;
        for (_, seg) in split_top_level(s, &[';'])? {
            let seg = seg.trim();
            match seg.split_once('=') {
                Some(("inner", m)) => {
                    inner_rows.push(m.to_string());
                    in_inner = true;
                }
                Some(("ring", r)) => {
                    ring = Some(parse_ring_aut(ctx.domain(), r)?);
                    in_inner = false;
                }
                Some(("graph", g)) => {
                    graph = match g.trim() {
                        "none" => GraphAut::None,
                        "tinv" => GraphAut::TransposeInverse,
                        "B" => GraphAut::ConjByB,
                        "sigma" | "sigma^2" | "sigma2" => return Err(Error::TrialityUnsupported),
                        other => return Err(Error::Parse(format!("unknown graph part `{other}`"))),
                    };
                    in_inner = false;
                }
                None if in_inner => inner_rows.push(seg.to_string()),
                _ => return Err(Error::Parse(format!("unexpected segment `{seg}`"))),
            }
        }
        let inner = if inner_rows.is_empty() {
            None
        } else {
            Some(ctx.parse_element(&inner_rows.join(";"))?)
        };
        Self::new(ctx, inner, ring, graph)
    }
}

fn parse_ring_aut<D: ScalarDomain>(dom: &D, s: &str) -> Result<RingAut> {
    let field = dom.field();
    let mut frob = 0;
    let mut mobius = [field.one(), field.zero(), field.zero(), field.one()];
    for (_, part) in split_top_level(s, &[','])? {
        let part = part.trim();
        if let Some(r) = part.strip_prefix("frob^") {
            frob = r
                .parse()
                .map_err(|e| Error::Parse(format!("Frobenius power `{r}`: {e}")))?;
        } else if part == "frob" {
            frob = 1;
        } else if let Some(body) = part
            .strip_prefix("mobius(")
            .and_then(|b| b.strip_suffix(')'))
        {
            let entries: Vec<_> = body
                .split(',')
                .map(|e| field.parse(e.trim()))
                .collect::<Result<_>>()?;
            mobius = entries
                .try_into()
                .map_err(|_| Error::Parse(format!("mobius needs four entries, got `{body}`")))?;
        } else {
            return Err(Error::Parse(format!("unknown ring part `{part}`")));
        }
    }
    RingAut::new(field, frob, mobius)
}

impl<D: ScalarDomain> fmt::Display for GroupAut<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("id");
        }
        let mut parts = Vec::new();
        if let Some(x) = &self.inner {
            parts.push(format!("inner={x}"));
        }
        if let Some(r) = &self.ring {
            parts.push(format!("ring={r}"));
        }
        if self.graph != GraphAut::None {
            parts.push(format!("graph={}", self.graph.token()));
        }
        f.write_str(&parts.join(";"))
    }
}

impl<D: ScalarDomain> fmt::Debug for GroupAut<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn aut_apply<D: ScalarDomain>(sigma: &GroupAut<D>, g: &GrpElem<D>) -> Result<GrpElem<D>> {
    sigma.apply(g)
}

pub fn aut_compose<D: ScalarDomain>(sigma: &GroupAut<D>, tau: &GroupAut<D>) -> Result<GroupAut<D>> {
    sigma.compose(tau)
}

/// Least `r <= cap` with `σ^r` fixing every element of `elems`; `None` once
/// the cap is passed.
pub fn aut_order_on<D: ScalarDomain>(
    sigma: &GroupAut<D>,
    elems: &[GrpElem<D>],
    cap: u32,
) -> Result<Option<u32>> {
    let mut images = elems.to_vec();
    for r in 1..=cap {
        images = images
            .iter()
            .map(|g| sigma.apply(g))
            .collect::<Result<_>>()?;
        if images == elems {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{fq_make, FqDescriptor};
    use crate::groups::{form_matrix, GroupKind, DEFAULT_ENUMERATION_CAP};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ctx(f: Family, n: usize, p: u32, e: u32) -> GroupCtx<FqDescriptor> {
        GroupCtx::new(GroupKind::new(f, n).unwrap(), fq_make(p, e).unwrap()).unwrap()
    }

    #[test]
    fn b_is_an_involution_preserving_the_form() {
        let f = fq_make(3, 1).unwrap();
        for n in [3, 4] {
            let b = b_matrix(n, &f.one()).unwrap();
            let a = form_matrix(GroupKind::new(Family::SOeven, n).unwrap(), &f.one()).unwrap();
            assert!(b.mul(&b).is_identity());
            assert_eq!(b.transpose().mul(&a).mul(&b), a);
            assert_eq!(b.det(), f.from_int(-1));
        }
        assert_eq!(b_matrix(2, &f.one()).unwrap_err(), Error::BadRank(2));
        let b3 = b_matrix(3, &f.one()).unwrap();
        assert_eq!(b3.get(2, 5), &f.one());
        assert_eq!(b3.get(5, 2), &f.one());
    }

    #[test]
    fn swapping_n_plus_1_with_2n_breaks_the_form() {
        // exchanging coordinates n+1 and 2n does not preserve [[0,I],[I,0]]
        let f = fq_make(3, 1).unwrap();
        let n = 3;
        let a = form_matrix(GroupKind::new(Family::SOeven, n).unwrap(), &f.one()).unwrap();
        let mut wrong = Matrix::identity(2 * n, &f.one());
        for (i, j) in [(n, n), (2 * n - 1, 2 * n - 1)] {
            wrong.set(i, j, f.zero());
        }
        wrong.set(n, 2 * n - 1, f.one());
        wrong.set(2 * n - 1, n, f.one());
        assert_ne!(wrong.transpose().mul(&a).mul(&wrong), a);
    }

    #[test]
    fn graph_parts_respect_kind() {
        let sp = ctx(Family::Sp, 2, 3, 1);
        assert!(matches!(
            GroupAut::graph(&sp, GraphAut::TransposeInverse),
            Err(Error::IncompatibleKind(_))
        ));
        let so5 = ctx(Family::SOodd, 2, 3, 1);
        assert!(matches!(
            GroupAut::graph(&so5, GraphAut::ConjByB),
            Err(Error::IncompatibleKind(_))
        ));
        let sl = ctx(Family::SL, 3, 3, 1);
        assert!(matches!(
            GroupAut::graph(&sl, GraphAut::ConjByB),
            Err(Error::IncompatibleKind(_))
        ));
        let so8 = ctx(Family::SOeven, 4, 3, 1);
        assert_eq!(
            GroupAut::parse(&so8, "graph=sigma").unwrap_err(),
            Error::TrialityUnsupported
        );
        assert!(GroupAut::parse(&so8, "graph=B").is_ok());
    }

    #[test]
    fn mobius_parts_rejected_on_finite_fields() {
        let sl = ctx(Family::SL, 2, 3, 2);
        assert!(GroupAut::parse(&sl, "ring=frob^1").is_ok());
        assert!(matches!(
            GroupAut::parse(&sl, "ring=frob^0,mobius(1,1,0,1)"),
            Err(Error::NotStabilizing(_))
        ));
    }

    #[test]
    fn grammar_round_trip() {
        let sl = ctx(Family::SL, 3, 3, 2);
        let s = "inner=1,w,0;0,1,0;0,0,1;ring=frob^1,mobius(1,0,0,1);graph=tinv";
        let a = GroupAut::parse(&sl, s).unwrap();
        assert_eq!(a.inner_part().unwrap().to_string(), "1,w,0;0,1,0;0,0,1");
        assert_eq!(a.graph_part(), GraphAut::TransposeInverse);
        assert_eq!(GroupAut::parse(&sl, &a.to_string()).unwrap(), a);
        assert!(GroupAut::parse(&sl, "id").unwrap().is_identity());
        assert!(GroupAut::parse(&sl, "graph=none").unwrap().is_identity());
        assert!(matches!(
            GroupAut::parse(&sl, "inner=2,0,0;0,1,0;0,0,1"),
            Err(Error::NotMember(_))
        ));
    }

    #[test]
    fn transpose_inverse_is_an_involutive_automorphism() {
        let sl = ctx(Family::SL, 3, 3, 1);
        let eps = GroupAut::graph(&sl, GraphAut::TransposeInverse).unwrap();
        let gens = sl.generators().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let g = sl.random_element(&gens, &mut rng, 15);
            let h = sl.random_element(&gens, &mut rng, 15);
            assert_eq!(eps.apply(&eps.apply(&g).unwrap()).unwrap(), g);
            assert_eq!(
                eps.apply(&g.mul(&h)).unwrap(),
                eps.apply(&g).unwrap().mul(&eps.apply(&h).unwrap())
            );
        }
        assert!(eps.compose(&eps).unwrap().is_identity());
    }

    #[test]
    fn inner_parts_compose_by_product() {
        let sl = ctx(Family::SL, 3, 3, 1);
        let gens = sl.generators().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = sl.random_element(&gens, &mut rng, 9);
        let y = sl.random_element(&gens, &mut rng, 9);
        let g = sl.random_element(&gens, &mut rng, 9);
        let ix = GroupAut::inner(&x);
        assert_eq!(ix.apply(&g).unwrap(), x.mul(&g).mul(&x.inv()));
        assert_eq!(
            ix.compose(&GroupAut::inner(&y)).unwrap(),
            GroupAut::inner(&x.mul(&y))
        );
        let eps = GroupAut::graph(&sl, GraphAut::TransposeInverse).unwrap();
        let lhs = eps.compose(&ix).unwrap();
        let rhs = GroupAut::inner(&eps.apply(&x).unwrap())
            .compose(&eps)
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    fn random_aut(
        ctx: &GroupCtx<FqDescriptor>,
        gens: &[crate::groups::GrpElem<FqDescriptor>],
        graph: GraphAut,
        rng: &mut ChaCha8Rng,
    ) -> GroupAut<FqDescriptor> {
        use rand::Rng;
        let inner = rng.gen_bool(0.7).then(|| ctx.random_element(gens, rng, 8));
        let graph = if rng.gen_bool(0.5) {
            graph
        } else {
            GraphAut::None
        };
        let e = ctx.domain().e();
        let ring = RingAut::frobenius(ctx.domain(), rng.gen_range(0..e));
        GroupAut::new(ctx, inner, Some(ring), graph).unwrap()
    }

    #[test]
    fn normal_form_matches_sequential_application() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for (c, graph) in [
            (ctx(Family::SL, 3, 3, 2), GraphAut::TransposeInverse),
            (ctx(Family::SOeven, 3, 3, 1), GraphAut::ConjByB),
            (ctx(Family::PSL, 3, 7, 1), GraphAut::TransposeInverse),
        ] {
            let gens = c.generators().unwrap();
            for _ in 0..15 {
                let s = random_aut(&c, &gens, graph, &mut rng);
                let t = random_aut(&c, &gens, graph, &mut rng);
                let st = s.compose(&t).unwrap();
                for _ in 0..4 {
                    let g = c.random_element(&gens, &mut rng, 12);
                    let seq = s.apply(&t.apply(&g).unwrap()).unwrap();
                    assert_eq!(st.apply(&g).unwrap(), seq);
                    assert!(c.membership(seq.matrix()).unwrap());
                }
            }
        }
    }

    #[test]
    fn orders_on_full_groups() {
        let sl9 = ctx(Family::SL, 2, 3, 2);
        let all = sl9.enumerate(DEFAULT_ENUMERATION_CAP).unwrap();
        let frob = GroupAut::ring(&sl9, RingAut::frobenius(sl9.domain(), 1)).unwrap();
        assert_eq!(aut_order_on(&frob, &all, 10).unwrap(), Some(2));
        assert_eq!(
            aut_order_on(&GroupAut::identity(&sl9), &all, 10).unwrap(),
            Some(1)
        );
        let sl3 = ctx(Family::SL, 3, 3, 1);
        let all3 = sl3.enumerate(DEFAULT_ENUMERATION_CAP).unwrap();
        let eps = GroupAut::graph(&sl3, GraphAut::TransposeInverse).unwrap();
        assert_eq!(aut_order_on(&eps, &all3, 10).unwrap(), Some(2));
        assert_eq!(aut_order_on(&eps, &all3, 1).unwrap(), None);
    }

    #[test]
    fn conjugation_by_b_preserves_membership() {
        let so6 = ctx(Family::SOeven, 3, 5, 1);
        let tau = GroupAut::graph(&so6, GraphAut::ConjByB).unwrap();
        let gens = so6.generators().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..30 {
            let g = so6.random_element(&gens, &mut rng, 10);
            let img = tau.apply(&g).unwrap();
            assert!(so6.membership(img.matrix()).unwrap());
            assert_eq!(tau.apply(&img).unwrap(), g);
        }
    }
}
