//! Matrix realizations of the classical groups `SL_n`, `Sp_2n`, `SO_2n+1`,
//! `SO_2n` and their projective quotients over a [`ScalarDomain`].

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use indexmap::IndexSet;
use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Scalar, ScalarDomain};

/// Default bound on the number of elements produced by enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    SL,
    PSL,
    Sp,
    PSp,
    SOodd,
    SOeven,
    PSOeven,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::SL => "SL",
            Family::PSL => "PSL",
            Family::Sp => "Sp",
            Family::PSp => "PSp",
            Family::SOodd => "SOodd",
            Family::SOeven => "SOeven",
            Family::PSOeven => "PSOeven",
        }
    }

    pub fn is_projective(self) -> bool {
        matches!(self, Family::PSL | Family::PSp | Family::PSOeven)
    }

    /// The linear group whose cosets a projective family models.
    pub fn linear(self) -> Family {
        match self {
            Family::PSL => Family::SL,
            Family::PSp => Family::Sp,
            Family::PSOeven => Family::SOeven,
            f => f,
        }
    }

    /// The projective quotient, if the family has one.
    pub fn projective(self) -> Option<Family> {
        match self.linear() {
            Family::SL => Some(Family::PSL),
            Family::Sp => Some(Family::PSp),
            Family::SOeven => Some(Family::PSOeven),
            _ => None,
        }
    }

    pub fn is_special_linear(self) -> bool {
        self.linear() == Family::SL
    }

    pub fn is_symplectic(self) -> bool {
        self.linear() == Family::Sp
    }

    pub fn is_orthogonal(self) -> bool {
        matches!(self.linear(), Family::SOodd | Family::SOeven)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "SL" => Family::SL,
            "PSL" => Family::PSL,
            "Sp" => Family::Sp,
            "PSp" => Family::PSp,
            "SOodd" | "SO_odd" => Family::SOodd,
            "SOeven" | "SO_even" => Family::SOeven,
            "PSOeven" | "PSO_even" => Family::PSOeven,
            _ => return Err(Error::InvalidKind(s.to_string())),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A family together with its rank parameter `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupKind {
    family: Family,
    n: usize,
}

impl GroupKind {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        let min = match family {
            Family::SL | Family::PSL | Family::Sp | Family::PSp | Family::SOodd => 2,
            Family::SOeven | Family::PSOeven => 3,
        };
        if n < min {
            return Err(Error::BadRank(n));
        }
        Ok(GroupKind { family, n })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Matrix size: `n`, `2n` or `2n+1`.
    pub fn dim(&self) -> usize {
        match self.family {
            Family::SL | Family::PSL => self.n,
            Family::Sp | Family::PSp | Family::SOeven | Family::PSOeven => 2 * self.n,
            Family::SOodd => 2 * self.n + 1,
        }
    }

    pub fn has_form(&self) -> bool {
        !self.family.is_special_linear()
    }

    pub fn is_projective(&self) -> bool {
        self.family.is_projective()
    }

    /// `PSL_2` is accepted for small experiments but lies outside the rank
    /// range where the twisted-conjugacy results apply.
    pub fn below_theory_range(&self) -> bool {
        self.family == Family::PSL && self.n < 3
    }

    pub fn with_family(&self, family: Family) -> Result<Self> {
        GroupKind::new(family, self.n)
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.n)
    }
}

/// The Gram matrix `A` with `g^T A g = A` defining the form groups.
pub fn form_matrix<S: Scalar>(kind: GroupKind, like: &S) -> Result<Matrix<S>> {
    let n = kind.rank();
    let dim = kind.dim();
    let zero = like.zero_like();
    let one = like.one_like();
    let mut a = Matrix::zero(dim, dim, &zero);
    match kind.family().linear() {
        Family::SL => return Err(Error::NoForm(kind.to_string())),
        Family::Sp => {
            for i in 0..n {
                a.set(i, n + i, one.clone());
                a.set(n + i, i, one.neg());
            }
        }
        Family::SOeven | Family::SOodd => {
            for i in 0..n {
                a.set(i, n + i, one.clone());
                a.set(n + i, i, one.clone());
            }
            if dim == 2 * n + 1 {
                a.set(2 * n, 2 * n, one.clone());
            }
        }
        _ => unreachable!("linear families only"),
    }
    Ok(a)
}

struct CtxInner<D: ScalarDomain> {
    kind: GroupKind,
    dom: D,
    form: Option<Matrix<D::Elem>>,
    /// Constants `λ` with `λI` in the linear group.
    central_scalars: Vec<D::Elem>,
}

/// A matrix group `G(R)` of a given kind over a scalar domain.
pub struct GroupCtx<D: ScalarDomain>(Arc<CtxInner<D>>);

impl<D: ScalarDomain> Clone for GroupCtx<D> {
    fn clone(&self) -> Self {
        GroupCtx(Arc::clone(&self.0))
    }
}

impl<D: ScalarDomain> fmt::Debug for GroupCtx<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.0.kind, self.0.dom.describe())
    }
}

impl<D: ScalarDomain> fmt::Display for GroupCtx<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl<D: ScalarDomain> PartialEq for GroupCtx<D> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.kind == other.0.kind && self.0.dom.describe() == other.0.dom.describe())
    }
}

impl<D: ScalarDomain> GroupCtx<D> {
    pub fn new(kind: GroupKind, dom: D) -> Result<Self> {
        if dom.characteristic() == 2 {
            return Err(Error::Unsupported("characteristic 2".into()));
        }
        let one = dom.one();
        let form = kind
            .has_form()
            .then(|| form_matrix(kind, &one))
            .transpose()?;
        let dim = kind.dim() as u64;
        let central_scalars = dom
            .field()
            .nonzero()
            .into_iter()
            .filter(|c| c.pow(dim).is_one() && (!kind.has_form() || c.pow(2).is_one()))
            .map(|c| dom.constant(&c))
            .collect();
        Ok(GroupCtx(Arc::new(CtxInner {
            kind,
            dom,
            form,
            central_scalars,
        })))
    }

    pub fn kind(&self) -> GroupKind {
        self.0.kind
    }

    pub fn domain(&self) -> &D {
        &self.0.dom
    }

    pub fn form(&self) -> Option<&Matrix<D::Elem>> {
        self.0.form.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.0.kind.dim()
    }

    pub fn is_projective(&self) -> bool {
        self.0.kind.is_projective()
    }

    /// Constant scalar matrices of the linear group, as their diagonal entry.
    pub fn central_scalars(&self) -> &[D::Elem] {
        &self.0.central_scalars
    }

    /// The same kind with the projective family replaced by its linear one.
    pub fn linear(&self) -> Result<GroupCtx<D>> {
        if !self.is_projective() {
            return Ok(self.clone());
        }
        let kind = self.kind().with_family(self.kind().family().linear())?;
        GroupCtx::new(kind, self.0.dom.clone())
    }

    /// The projective quotient of a linear group with a projective model.
    pub fn projective(&self) -> Result<GroupCtx<D>> {
        let family = self
            .kind()
            .family()
            .projective()
            .ok_or_else(|| Error::NotProjective(self.kind().to_string()))?;
        GroupCtx::new(self.kind().with_family(family)?, self.0.dom.clone())
    }

    /// `det(m) = 1` and, for form groups, `m^T A m = A`.
    pub fn membership(&self, m: &Matrix<D::Elem>) -> Result<bool> {
        let dim = self.dim();
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::SizeMismatch {
                expected: dim,
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if !m.entries().iter().all(|x| self.0.dom.contains(x)) {
            return Ok(false);
        }
        if !m.det().is_one() {
            return Ok(false);
        }
        Ok(match &self.0.form {
            Some(a) => m.transpose().mul(a).mul(m) == *a,
            None => true,
        })
    }

    /// Canonical coset representative; the identity map for linear kinds.
    pub(crate) fn canonical(&self, m: Matrix<D::Elem>) -> Matrix<D::Elem> {
        if !self.is_projective() || self.0.central_scalars.len() <= 1 {
            return m;
        }
        let Some(lead) = m.first_nonzero().cloned() else {
            return m;
        };
        let best = self
            .0
            .central_scalars
            .iter()
            .min_by(|a, b| lead.mul(a).total_cmp(&lead.mul(b)))
            .expect("1 is central");
        if best.is_one() {
            m
        } else {
            m.scale(best)
        }
    }

    /// Wrap a matrix as a group element, checking membership.
    pub fn element(&self, m: Matrix<D::Elem>) -> Result<GrpElem<D>> {
        if !self.membership(&m)? {
            return Err(Error::NotMember(format!("{self}: {m}")));
        }
        Ok(self.element_unchecked(m))
    }

    pub(crate) fn element_unchecked(&self, m: Matrix<D::Elem>) -> GrpElem<D> {
        GrpElem {
            ctx: self.clone(),
            mat: self.canonical(m),
        }
    }

    pub fn identity(&self) -> GrpElem<D> {
        GrpElem {
            ctx: self.clone(),
            mat: Matrix::identity(self.dim(), &self.0.dom.one()),
        }
    }

    pub fn parse_element(&self, s: &str) -> Result<GrpElem<D>> {
        let m = Matrix::parse_with(s, |e| self.0.dom.parse_elem(e))?;
        self.element(m)
    }

    /// Inverse of a member matrix, using the form when there is one.
    pub(crate) fn inverse_matrix(&self, m: &Matrix<D::Elem>) -> Matrix<D::Elem> {
        match &self.0.form {
            // A^{-1} = A^T up to sign, and A^{-1} m^T A inverts m
            Some(a) => {
                let a_inv = if self.kind().family().is_symplectic() {
                    a.neg()
                } else {
                    a.clone()
                };
                a_inv.mul(&m.transpose()).mul(a)
            }
            None => m.inverse().expect("members are invertible"),
        }
    }

    /// Root-subgroup generators (plus a torus element for orthogonal kinds).
    pub fn generators(&self) -> Result<Vec<GrpElem<D>>> {
        let Some(_) = self.0.dom.elements() else {
            return Err(Error::Unsupported(format!(
                "generators need finite scalars, got {}",
                self.0.dom.describe()
            )));
        };
        let field = self.0.dom.field();
        let alphas: Vec<D::Elem> = field
            .nonzero()
            .iter()
            .map(|c| self.0.dom.constant(c))
            .collect();
        let n = self.kind().rank();
        let dim = self.dim();
        let one = self.0.dom.one();
        let unit = |terms: &[(usize, usize, D::Elem)]| {
            let mut m = Matrix::identity(dim, &one);
            for (i, j, x) in terms {
                let v = m.get(*i, *j).add(x);
                m.set(*i, *j, v);
            }
            m
        };
        let mut mats = Vec::new();
        match self.kind().family().linear() {
            Family::SL => {
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            for a in &alphas {
                                mats.push(unit(&[(i, j, a.clone())]));
                            }
                        }
                    }
                }
            }
            Family::Sp => {
                for a in &alphas {
                    for i in 0..n {
                        for j in 0..n {
                            if i != j {
                                mats.push(unit(&[(i, j, a.clone()), (n + j, n + i, a.neg())]));
                            }
                        }
                    }
                    for i in 0..n {
                        for j in i..n {
                            if i == j {
                                mats.push(unit(&[(i, n + i, a.clone())]));
                                mats.push(unit(&[(n + i, i, a.clone())]));
                            } else {
                                mats.push(unit(&[(i, n + j, a.clone()), (j, n + i, a.clone())]));
                                mats.push(unit(&[(n + i, j, a.clone()), (n + j, i, a.clone())]));
                            }
                        }
                    }
                }
            }
            Family::SOeven | Family::SOodd => {
                let half = self.0.dom.from_int(2).inv().expect("odd characteristic");
                for a in &alphas {
                    for i in 0..n {
                        for j in 0..n {
                            if i != j {
                                mats.push(unit(&[(i, j, a.clone()), (n + j, n + i, a.neg())]));
                            }
                            if i < j {
                                mats.push(unit(&[(i, n + j, a.clone()), (j, n + i, a.neg())]));
                                mats.push(unit(&[(n + i, j, a.clone()), (n + j, i, a.neg())]));
                            }
                        }
                    }
                    if dim == 2 * n + 1 {
                        let z = 2 * n;
                        let sq = a.mul(a).mul(&half).neg();
                        for i in 0..n {
                            mats.push(unit(&[
                                (i, z, a.clone()),
                                (z, n + i, a.neg()),
                                (i, n + i, sq.clone()),
                            ]));
                            mats.push(unit(&[
                                (n + i, z, a.clone()),
                                (z, i, a.neg()),
                                (n + i, i, sq.clone()),
                            ]));
                        }
                    }
                }
                // the root subgroups generate the spinor kernel; a torus
                // element of non-square spinor norm supplies the rest of SO
                let nu = field.primitive_element();
                let mut diag = vec![one.clone(); dim];
                diag[0] = self.0.dom.constant(&nu);
                diag[n] = self.0.dom.constant(&nu.inv().expect("nonzero"));
                mats.push(Matrix::diagonal(&diag));
            }
            _ => unreachable!("linear families only"),
        }
        let mut out: IndexSet<GrpElem<D>> = IndexSet::new();
        for m in mats {
            if !self.membership(&m)? {
                return Err(Error::Invariant(format!("generator {m} is not in {self}")));
            }
            out.insert(self.element_unchecked(m));
        }
        Ok(out.into_iter().collect())
    }

    /// Every element, in breadth-first order from the identity over the
    /// generators.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<GrpElem<D>>> {
        let gens = self.generators()?;
        let mut seen: IndexSet<Matrix<D::Elem>> = IndexSet::new();
        seen.insert(self.identity().mat);
        let mut i = 0;
        while i < seen.len() {
            let cur = seen[i].clone();
            for g in &gens {
                let next = self.canonical(cur.mul(&g.mat));
                if !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded(format!(
                            "{self} has more than {cap} elements"
                        )));
                    }
                    seen.insert(next);
                }
            }
            i += 1;
        }
        Ok(seen
            .into_iter()
            .map(|mat| GrpElem {
                ctx: self.clone(),
                mat,
            })
            .collect())
    }

    pub fn order(&self, cap: usize) -> Result<usize> {
        Ok(self.enumerate(cap)?.len())
    }

    /// Elements commuting with every generator, from the null space of the
    /// joint commutation system `m g - g m = 0` filtered by membership.
    ///
    /// For projective kinds, `m g m^{-1} = ζ g` with `g` unipotent forces
    /// `ζ = 1`, so the same system describes the center of the quotient.
    pub fn center(&self, cap: usize) -> Result<Vec<GrpElem<D>>> {
        let gens = self.generators()?;
        let dim = self.dim();
        let zero = self.0.dom.zero();
        let mut rows = Vec::new();
        for g in &gens {
            let g = &g.mat;
            for i in 0..dim {
                for j in 0..dim {
                    let mut row = vec![zero.clone(); dim * dim];
                    for k in 0..dim {
                        row[i * dim + k] = row[i * dim + k].add(g.get(k, j));
                        row[k * dim + j] = row[k * dim + j].sub(g.get(i, k));
                    }
                    rows.push(row);
                }
            }
        }
        let system = Matrix::from_rows(rows)?;
        let basis = system.kernel();
        let consts: Vec<D::Elem> = self.0.dom.elements().expect("finite scalars");
        let total = (consts.len() as f64).powi(basis.len() as i32);
        if total > cap as f64 {
            return Err(Error::CapExceeded(format!(
                "commutant of {self} has {total} elements"
            )));
        }
        let mut found: IndexSet<GrpElem<D>> = IndexSet::new();
        let mut digits = vec![0usize; basis.len()];
        loop {
            let mut v = vec![zero.clone(); dim * dim];
            for (d, b) in digits.iter().zip(&basis) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = x.add(&consts[*d].mul(y));
                }
            }
            let m = Matrix::new(dim, dim, v)?;
            if self.membership(&m)? {
                found.insert(self.element_unchecked(m));
            }
            // odometer over coefficient tuples
            let mut k = 0;
            while k < digits.len() {
                digits[k] += 1;
                if digits[k] < consts.len() {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == digits.len() {
                break;
            }
        }
        let mut out: Vec<GrpElem<D>> = found.into_iter().collect();
        out.sort_by(|a, b| a.mat.total_cmp(&b.mat));
        Ok(out)
    }

    /// Product of `len` uniformly chosen generators.
    pub fn random_element(
        &self,
        gens: &[GrpElem<D>],
        rng: &mut impl Rng,
        len: usize,
    ) -> GrpElem<D> {
        let mut acc = self.identity();
        for _ in 0..len {
            acc = acc.mul(&gens[rng.gen_range(0..gens.len())]);
        }
        acc
    }
}

/// Canonical coset representative of a projective group element.
pub fn projective_canonicalize<D: ScalarDomain>(g: &GrpElem<D>) -> Result<GrpElem<D>> {
    if !g.ctx.is_projective() {
        return Err(Error::NotProjective(g.ctx.kind().to_string()));
    }
    Ok(g.ctx.element_unchecked(g.mat.clone()))
}

pub fn membership<D: ScalarDomain>(ctx: &GroupCtx<D>, m: &Matrix<D::Elem>) -> Result<bool> {
    ctx.membership(m)
}

/// An element of a [`GroupCtx`]; projective elements always hold their
/// canonical representative, so equality is coset equality.
pub struct GrpElem<D: ScalarDomain> {
    ctx: GroupCtx<D>,
    mat: Matrix<D::Elem>,
}

impl<D: ScalarDomain> Clone for GrpElem<D> {
    fn clone(&self) -> Self {
        GrpElem {
            ctx: self.ctx.clone(),
            mat: self.mat.clone(),
        }
    }
}

impl<D: ScalarDomain> PartialEq for GrpElem<D> {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

impl<D: ScalarDomain> Eq for GrpElem<D> {}

impl<D: ScalarDomain> Hash for GrpElem<D> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mat.hash(state);
    }
}

impl<D: ScalarDomain> fmt::Display for GrpElem<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.mat)
    }
}

impl<D: ScalarDomain> fmt::Debug for GrpElem<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.mat)
    }
}

impl<D: ScalarDomain> GrpElem<D> {
    pub fn ctx(&self) -> &GroupCtx<D> {
        &self.ctx
    }

    pub fn matrix(&self) -> &Matrix<D::Elem> {
        &self.mat
    }

    pub fn mul(&self, rhs: &GrpElem<D>) -> GrpElem<D> {
        self.ctx.element_unchecked(self.mat.mul(&rhs.mat))
    }

    pub fn inv(&self) -> GrpElem<D> {
        self.ctx
            .element_unchecked(self.ctx.inverse_matrix(&self.mat))
    }

    pub fn pow(&self, k: u64) -> GrpElem<D> {
        self.ctx.element_unchecked(self.mat.pow(k))
    }

    pub fn conj_by(&self, x: &GrpElem<D>) -> GrpElem<D> {
        x.mul(self).mul(&x.inv())
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }

    pub fn trace(&self) -> D::Elem {
        self.mat.trace()
    }

    /// Move the element to another context with the same matrix size.
    pub fn transfer(&self, ctx: &GroupCtx<D>) -> Result<GrpElem<D>> {
        ctx.element(self.mat.clone())
    }
}
