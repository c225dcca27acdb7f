//! Rational polyhedra `{x : <u_i, x> >= c_i}` and the lattice spanned by
//! their lattice points.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::linalg::{
    clear_denominators, dot_mixed, primitive_from_rat, sup_norm, sup_norm_rat, to_rat, IntVec,
    LatticeFrame, RatVec, Sublattice,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    ambient: usize,
    /// `(a, b)` meaning `<a, x> >= b`, integral after clearing denominators.
    ineqs: Vec<(IntVec, BigInt)>,
    vertices: Vec<RatVec>,
    rays: Vec<IntVec>,
    lineality: Vec<IntVec>,
}

fn integral_constraint(u: &[BigRational], c: &BigRational) -> (IntVec, BigInt) {
    let mut all = u.to_vec();
    all.push(c.clone());
    let (mut a, _) = clear_denominators(&all);
    let b = a.pop().expect("nonempty");
    (a, b)
}

impl Polyhedron {
    /// `{x : <u, x> >= c for (u, c) in ineqs}`.
    pub fn new(n: usize, ineqs: &[(RatVec, BigRational)]) -> Polyhedron {
        let ineqs: Vec<(IntVec, BigInt)> = ineqs
            .iter()
            .map(|(u, c)| {
                assert_eq!(u.len(), n, "length mismatch");
                integral_constraint(u, c)
            })
            .collect();
        // homogenize: (x, t) with <a, x> - b t >= 0 and t >= 0
        let mut lifted: Vec<IntVec> = ineqs
            .iter()
            .map(|(a, b)| {
                let mut r = a.clone();
                r.push(-b);
                r
            })
            .collect();
        let mut t = vec![BigInt::zero(); n + 1];
        t[n] = BigInt::one();
        lifted.push(t);
        let hom = Cone::from_inequalities(n + 1, &lifted, &[]);
        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for r in hom.rays() {
            if r[n].is_zero() {
                rays.push(r[..n].to_vec());
            } else {
                let t = BigRational::from_integer(r[n].clone());
                vertices.push(
                    r[..n]
                        .iter()
                        .map(|x| BigRational::from_integer(x.clone()) / &t)
                        .collect(),
                );
            }
        }
        let lineality = hom.lineality().iter().map(|l| l[..n].to_vec()).collect();
        vertices.sort();
        Polyhedron {
            ambient: n,
            ineqs,
            vertices,
            rays,
            lineality,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IntVec] {
        &self.lineality
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.ineqs
            .iter()
            .all(|(a, b)| dot_mixed(x, a) >= BigRational::from_integer(b.clone()))
    }

    /// Membership through the V-description: `x ∈ conv(V) + cone(R) + lin(L)`.
    pub fn contains_by_generators(&self, x: &[BigRational]) -> bool {
        if self.is_empty() {
            return false;
        }
        let n = self.ambient;
        // (x, 1) in the cone over (v, 1), (r, 0), ±(l, 0)
        let lift = |v: &[BigRational], t: i64| -> IntVec {
            let mut w: RatVec = v.to_vec();
            w.push(BigRational::from_integer(t.into()));
            clear_denominators(&w).0
        };
        let gens: Vec<IntVec> = self
            .vertices
            .iter()
            .map(|v| lift(v, 1))
            .chain(self.rays.iter().map(|r| lift(&to_rat(r), 0)))
            .collect();
        let lin: Vec<IntVec> = self.lineality.iter().map(|l| lift(&to_rat(l), 0)).collect();
        let c = Cone::from_generators_with_lineality(n + 1, &gens, &lin);
        let mut p = x.to_vec();
        p.push(BigRational::one());
        c.contains(&p)
    }

    /// Same polyhedron in coordinates `y` with `x = y·B` for the rows `B` of `frame`.
    fn in_frame(&self, frame: &LatticeFrame) -> Polyhedron {
        let ineqs: Vec<(RatVec, BigRational)> = self
            .ineqs
            .iter()
            .map(|(a, b)| {
                let u = frame.basis().iter().map(|row| dot_mixed(row, a)).collect();
                (u, BigRational::from_integer(b.clone()))
            })
            .collect();
        Polyhedron::new(self.ambient, &ineqs)
    }

    /// Lattice points with sup-norm at most `radius`, in lexicographic order.
    pub fn integer_points(&self, radius: &BigInt) -> Vec<IntVec> {
        let mut out = Vec::new();
        self.for_each_integer_point(radius, |p| {
            out.push(p.to_vec());
            true
        });
        out
    }

    /// Visits the integer points in the box in lexicographic order until `visit` returns false.
    fn for_each_integer_point(&self, radius: &BigInt, mut visit: impl FnMut(&[BigInt]) -> bool) {
        let n = self.ambient;
        let mut cons: Vec<(IntVec, BigInt)> = self.ineqs.clone();
        for j in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            cons.push((e.clone(), -radius));
            e[j] = -BigInt::one();
            cons.push((e, -radius));
        }
        // levels[k] constrains the first k+1 coordinates
        let mut levels = vec![Vec::new(); n];
        let mut cur = normalize(cons);
        for k in (0..n).rev() {
            let Some(c) = cur else { return };
            levels[k] = c.clone();
            cur = if k > 0 { eliminate(c, k) } else { None };
        }
        if n == 0 {
            visit(&[]);
            return;
        }
        let mut point = Vec::with_capacity(n);
        descend(&levels, &mut point, &mut visit);
    }
}

/// Divides each constraint by the content of its normal, rounding the bound
/// up (valid for integer points), and keeps the tightest bound per normal.
/// `None` when some constraint `0 >= b` with `b > 0` appears.
fn normalize(cons: Vec<(IntVec, BigInt)>) -> Option<Vec<(IntVec, BigInt)>> {
    let mut best: BTreeMap<IntVec, BigInt> = BTreeMap::new();
    for (a, b) in cons {
        let g = a.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            if b.is_positive() {
                return None;
            }
            continue;
        }
        let a: IntVec = a.iter().map(|x| x / &g).collect();
        let b = Integer::div_ceil(&b, &g);
        match best.get_mut(&a) {
            Some(cur) if *cur >= b => {}
            Some(cur) => *cur = b,
            None => {
                best.insert(a, b);
            }
        }
    }
    Some(best.into_iter().collect())
}

/// Fourier–Motzkin: drops coordinate `k` (the last live one).
fn eliminate(cons: Vec<(IntVec, BigInt)>, k: usize) -> Option<Vec<(IntVec, BigInt)>> {
    let (mut pos, mut negs, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for c in cons {
        match c.0[k].sign() {
            num_bigint::Sign::Plus => pos.push(c),
            num_bigint::Sign::Minus => negs.push(c),
            num_bigint::Sign::NoSign => rest.push(c),
        }
    }
    for (pa, pb) in &pos {
        for (na, nb) in &negs {
            let s = -&na[k];
            let t = &pa[k];
            let a: IntVec = pa.iter().zip(na).map(|(x, y)| x * &s + y * t).collect();
            rest.push((a, pb * &s + nb * t));
        }
    }
    normalize(rest)
}

fn descend(
    levels: &[Vec<(IntVec, BigInt)>],
    point: &mut Vec<BigInt>,
    visit: &mut impl FnMut(&[BigInt]) -> bool,
) -> bool {
    let k = point.len();
    if k == levels.len() {
        return visit(point);
    }
    let mut lo: Option<BigInt> = None;
    let mut hi: Option<BigInt> = None;
    for (a, b) in &levels[k] {
        let rhs: BigInt = b - a[..k]
            .iter()
            .zip(point.iter())
            .map(|(x, y)| x * y)
            .sum::<BigInt>();
        let ak = &a[k];
        if ak.is_zero() {
            if rhs.is_positive() {
                return true;
            }
        } else if ak.is_positive() {
            let l = Integer::div_ceil(&rhs, ak);
            if lo.as_ref().is_none_or(|x| &l > x) {
                lo = Some(l);
            }
        } else {
            let h = Integer::div_floor(&rhs, ak);
            if hi.as_ref().is_none_or(|x| &h < x) {
                hi = Some(h);
            }
        }
    }
    let (Some(lo), Some(hi)) = (lo, hi) else {
        unreachable!("box constraints bound every coordinate")
    };
    let mut v = lo;
    while v <= hi {
        point.push(v.clone());
        let go_on = descend(levels, point, visit);
        point.pop();
        if !go_on {
            return false;
        }
        v += 1;
    }
    true
}

/// `Z`-span of the lattice points of `p` in the full-rank lattice `m`.
///
/// Points are enumerated in `m`-coordinates inside a box of radius
/// `B0 = ceil(max vertex sup-norm) + Σ ray sup-norms + Σ lineality sup-norms`,
/// and the box is doubled until the span has not changed over three
/// consecutive doublings. Enumeration stops early once the span reaches the
/// lattice points of the linear span of `p`, which bounds it from above.
pub fn lattice_points_span(p: &Polyhedron, m: &Sublattice) -> Result<Sublattice> {
    if p.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    let n = p.ambient;
    let frame = LatticeFrame::new(m)?;
    let q = p.in_frame(&frame);
    let mut hull: Vec<IntVec> = q.vertices.iter().map(|v| primitive_from_rat(v)).collect();
    hull.extend(q.rays.iter().cloned());
    hull.extend(q.lineality.iter().cloned());
    let upper = Sublattice::span(n, &hull).saturation();

    let vmax = q
        .vertices
        .iter()
        .map(|v| sup_norm_rat(v))
        .max()
        .unwrap_or_else(BigRational::zero);
    let mut radius: BigInt = vmax.ceil().to_integer()
        + q.rays.iter().map(|r| sup_norm(r)).sum::<BigInt>()
        + q.lineality.iter().map(|l| sup_norm(l)).sum::<BigInt>();
    if radius < BigInt::one() {
        radius = BigInt::one();
    }

    let span_in_box = |radius: &BigInt| {
        let mut span = Sublattice::zero(n);
        q.for_each_integer_point(radius, |pt| {
            if !span.contains_int(pt) {
                span = span.with_vector(&to_rat(pt));
            }
            !span.contains_lattice(&upper)
        });
        span
    };
    let mut span = span_in_box(&radius);
    let mut stable = 0;
    while stable < 3 && !span.contains_lattice(&upper) {
        radius *= 2;
        let next = span_in_box(&radius);
        if next == span {
            stable += 1;
        } else {
            stable = 0;
            span = next;
        }
    }
    let ambient_rows: Vec<RatVec> = span.basis().iter().map(|y| frame.from_coords(y)).collect();
    Ok(Sublattice::span_rat(n, &ambient_rows))
}
