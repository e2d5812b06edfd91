use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::CechError;

/// A circle covered by `count` open arcs `(a/count - overlap, (a+1)/count + overlap)`.
///
/// Arcs only meet their cyclic neighbours, so the cover is good whenever
/// `count >= 3` and `overlap < 1 / (2 count)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcCover {
    count: usize,
    overlap: f64,
}

impl ArcCover {
    pub fn new(count: usize) -> Result<Self, CechError> {
        Self::with_overlap(count, 0.36 / count as f64)
    }

    pub fn with_overlap(count: usize, overlap: f64) -> Result<Self, CechError> {
        if count < 3 {
            return Err(CechError::InvalidCover("a circle needs at least 3 arcs"));
        }
        if !(overlap > 0.0 && overlap < 0.5 / count as f64) {
            return Err(CechError::InvalidCover("arc overlap must lie in (0, 1/(2 count))"));
        }
        Ok(Self { count, overlap })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn overlap(&self) -> f64 {
        self.overlap
    }

    /// The arc with index `a` as an interval of ℝ (its canonical lift).
    pub fn interval(&self, a: usize) -> (f64, f64) {
        let n = self.count as f64;
        (a as f64 / n - self.overlap, (a + 1) as f64 / n + self.overlap)
    }

    /// Lift of the circle point `t` into the canonical interval of arc `a`.
    ///
    /// Points of the circle that are covered twice by the same canonical
    /// interval cannot occur since arcs are shorter than one turn; ties at
    /// the wrap-around resolve to the lower branch.
    pub fn section(&self, a: usize, t: f64) -> f64 {
        let (lo, _) = self.interval(a);
        let base = t - libm::floor(t);
        let k = libm::ceil(lo - base);
        base + k
    }

    /// A point in the common intersection of the listed arcs, if any.
    pub fn common_point(&self, arcs: &[usize]) -> Option<f64> {
        let intervals: Vec<(f64, f64)> = arcs.iter().map(|&a| self.interval(a)).collect();
        intersect_intervals(&intervals).map(|(lo, hi)| frac_point(0.5 * (lo + hi)))
    }
}

fn frac_point(x: f64) -> f64 {
    x - libm::floor(x)
}

/// Intersection of open arcs given by their lifts, each shorter than half a turn.
fn intersect_intervals(intervals: &[(f64, f64)]) -> Option<(f64, f64)> {
    let (mut lo, mut hi) = *intervals.first()?;
    for &(l, r) in &intervals[1..] {
        let mut hit = None;
        for k in [-1.0, 0.0, 1.0] {
            let a = if l + k > lo { l + k } else { lo };
            let b = if r + k < hi { r + k } else { hi };
            if a < b {
                hit = Some((a, b));
                break;
            }
        }
        let (a, b) = hit?;
        lo = a;
        hi = b;
    }
    Some((lo, hi))
}

/// Open-star-style cover given by an explicit list of nonempty intersections.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitCover {
    vertex_count: usize,
    simplices: BTreeSet<Vec<usize>>,
}

impl ExplicitCover {
    /// Takes the listed simplices verbatim; downward closure is checked when the nerve is built.
    pub fn from_simplices(vertex_count: usize, simplices: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut set: BTreeSet<Vec<usize>> = simplices.into_iter().collect();
        for v in 0..vertex_count {
            set.insert(vec![v]);
        }
        Self { vertex_count, simplices: set }
    }

    /// Closes the given maximal simplices under taking faces.
    pub fn from_maximal(vertex_count: usize, maximal: &[Vec<usize>]) -> Self {
        let mut set = BTreeSet::new();
        for s in maximal {
            let mut s = s.clone();
            s.sort_unstable();
            let k = s.len();
            for mask in 1u32..(1u32 << k) {
                let face: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
                set.insert(face);
            }
        }
        for v in 0..vertex_count {
            set.insert(vec![v]);
        }
        Self { vertex_count, simplices: set }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub(crate) fn simplices(&self) -> &BTreeSet<Vec<usize>> {
        &self.simplices
    }
}

/// A finite open cover together with the rule deciding which intersections are nonempty.
#[derive(Debug, Clone, PartialEq)]
pub enum Cover {
    /// Arcs on a circle.
    Arcs(ArcCover),
    /// Six caps around `±x, ±y, ±z` on S²; index `2k` is the `+` cap of axis `k`.
    Octahedral,
    /// Products `U_i × V_j`, indexed by `i * |V| + j`.
    Product(Box<Cover>, Box<Cover>),
    Explicit(ExplicitCover),
}

impl Cover {
    pub fn circle(count: usize) -> Result<Self, CechError> {
        Ok(Cover::Arcs(ArcCover::new(count)?))
    }

    /// Product-of-arcs cover of T³ with `count³` boxes; box `(a, b, c)` has index `a count² + b count + c`.
    pub fn torus3(count: usize) -> Result<Self, CechError> {
        Self::torus3_with_overlap(count, 0.36 / count as f64)
    }

    pub fn torus3_with_overlap(count: usize, overlap: f64) -> Result<Self, CechError> {
        let arcs = || ArcCover::with_overlap(count, overlap).map(Cover::Arcs);
        Ok(Cover::product(arcs()?, Cover::product(arcs()?, arcs()?)))
    }

    pub fn product(a: Cover, b: Cover) -> Self {
        Cover::Product(Box::new(a), Box::new(b))
    }

    pub fn index_count(&self) -> usize {
        match self {
            Cover::Arcs(a) => a.count,
            Cover::Octahedral => 6,
            Cover::Product(a, b) => a.index_count() * b.index_count(),
            Cover::Explicit(e) => e.vertex_count,
        }
    }

    pub fn geometry_tag(&self) -> &'static str {
        match self {
            Cover::Arcs(_) => "arcs",
            Cover::Octahedral => "octahedral",
            Cover::Product(..) if self.all_arcs() => "product-of-arcs",
            Cover::Product(..) => "product",
            Cover::Explicit(_) => "abstract",
        }
    }

    fn all_arcs(&self) -> bool {
        match self {
            Cover::Arcs(_) => true,
            Cover::Product(a, b) => a.all_arcs() && b.all_arcs(),
            _ => false,
        }
    }

    /// Split a product index into its two factor indices.
    pub fn split(&self, index: usize) -> Option<(usize, usize)> {
        match self {
            Cover::Product(_, b) => {
                let m = b.index_count();
                Some((index / m, index % m))
            }
            _ => None,
        }
    }

    /// Whether the intersection of the sets with the given indices is nonempty.
    pub fn intersects(&self, indices: &[usize]) -> bool {
        let mut idx: Vec<usize> = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if idx.iter().any(|&i| i >= self.index_count()) {
            return false;
        }
        match self {
            Cover::Arcs(a) => {
                let iv: Vec<_> = idx.iter().map(|&i| a.interval(i)).collect();
                intersect_intervals(&iv).is_some()
            }
            Cover::Octahedral => !idx.windows(2).any(|w| w[0] / 2 == w[1] / 2),
            Cover::Product(a, b) => {
                let m = b.index_count();
                let left: Vec<usize> = idx.iter().map(|&i| i / m).collect();
                let right: Vec<usize> = idx.iter().map(|&i| i % m).collect();
                a.intersects(&left) && b.intersects(&right)
            }
            Cover::Explicit(e) => e.simplices.contains(&idx),
        }
    }

    /// Whether `∩ self[a] ∩ other[b]` is nonempty, for two covers of the same base.
    pub fn joint_intersects(&self, other: &Cover, a: &[usize], b: &[usize]) -> Result<bool, CechError> {
        match (self, other) {
            (Cover::Arcs(x), Cover::Arcs(y)) => {
                let mut iv: Vec<_> = a.iter().map(|&i| x.interval(i)).collect();
                iv.extend(b.iter().map(|&j| y.interval(j)));
                Ok(intersect_intervals(&iv).is_some())
            }
            (Cover::Product(x1, x2), Cover::Product(y1, y2)) => {
                let (m, n) = (x2.index_count(), y2.index_count());
                let a1: Vec<usize> = a.iter().map(|&i| i / m).collect();
                let a2: Vec<usize> = a.iter().map(|&i| i % m).collect();
                let b1: Vec<usize> = b.iter().map(|&j| j / n).collect();
                let b2: Vec<usize> = b.iter().map(|&j| j % n).collect();
                Ok(x1.joint_intersects(y1, &a1, &b1)? && x2.joint_intersects(y2, &a2, &b2)?)
            }
            (Cover::Octahedral, Cover::Octahedral) => Ok(self.intersects(&[a, b].concat())),
            (Cover::Explicit(x), Cover::Explicit(y)) if x == y => Ok(self.intersects(&[a, b].concat())),
            _ => Err(CechError::IncompatibleCovers),
        }
    }

    /// For each set of `self`, the index of a set of `coarse` containing it.
    pub fn refinement_map(&self, coarse: &Cover) -> Result<Vec<usize>, CechError> {
        match (self, coarse) {
            (Cover::Arcs(f), Cover::Arcs(c)) => (0..f.count)
                .map(|i| {
                    let (l, r) = f.interval(i);
                    (0..c.count)
                        .find(|&j| {
                            let (cl, cr) = c.interval(j);
                            [-1.0, 0.0, 1.0].iter().any(|k| cl + k <= l && r <= cr + k)
                        })
                        .ok_or(CechError::NotARefinement(i))
                })
                .collect(),
            (Cover::Product(f1, f2), Cover::Product(c1, c2)) => {
                let m1 = f1.refinement_map(c1)?;
                let m2 = f2.refinement_map(c2)?;
                let n = c2.index_count();
                let mut out = Vec::with_capacity(m1.len() * m2.len());
                for &i in &m1 {
                    for &j in &m2 {
                        out.push(i * n + j);
                    }
                }
                Ok(out)
            }
            (Cover::Octahedral, Cover::Octahedral) => Ok((0..6).collect()),
            (Cover::Explicit(x), Cover::Explicit(y)) if x == y => Ok((0..x.vertex_count).collect()),
            _ => Err(CechError::IncompatibleCovers),
        }
    }

    /// Oriented fundamental cycle of the underlying closed manifold, as ordered
    /// vertex tuples with integer coefficients. `None` for abstract covers.
    pub fn fundamental_cycle(&self) -> Option<Vec<(Vec<usize>, i64)>> {
        match self {
            Cover::Arcs(a) => Some((0..a.count).map(|i| (vec![i, (i + 1) % a.count], 1)).collect()),
            Cover::Octahedral => {
                let mut out = Vec::new();
                for sx in 0..2 {
                    for sy in 0..2 {
                        for sz in 0..2 {
                            let sign = if (sx + sy + sz) % 2 == 0 { 1 } else { -1 };
                            out.push((vec![sx, 2 + sy, 4 + sz], sign));
                        }
                    }
                }
                Some(out)
            }
            Cover::Product(a, b) => {
                let za = a.fundamental_cycle()?;
                let zb = b.fundamental_cycle()?;
                let n = b.index_count();
                let mut out = Vec::new();
                for (s, cs) in &za {
                    for (t, ct) in &zb {
                        for (tuple, sign) in shuffle_product(s, t, n) {
                            out.push((tuple, sign * cs * ct));
                        }
                    }
                }
                Some(out)
            }
            Cover::Explicit(_) => None,
        }
    }
}

/// Eilenberg-Zilber shuffle product of two ordered simplices, with product
/// vertex `(v, w)` encoded as `v * n + w`.
pub(crate) fn shuffle_product(s: &[usize], t: &[usize], n: usize) -> Vec<(Vec<usize>, i64)> {
    let p = s.len() - 1;
    let q = t.len() - 1;
    let mut out = Vec::new();
    // step masks: bit set means a step in the second factor
    for mask in 0u32..(1u32 << (p + q)) {
        if mask.count_ones() as usize != q {
            continue;
        }
        let (mut i, mut j) = (0, 0);
        let mut tuple = vec![s[0] * n + t[0]];
        let mut inversions = 0;
        let mut seconds = 0;
        for step in 0..(p + q) {
            if mask & (1 << step) != 0 {
                j += 1;
                seconds += 1;
            } else {
                i += 1;
                inversions += seconds;
            }
            tuple.push(s[i] * n + t[j]);
        }
        out.push((tuple, if inversions % 2 == 0 { 1 } else { -1 }));
    }
    out
}
