use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{CechError, Chain, Cover};
use crate::homology::SparseMatrix;
use crate::util::sort_sign;

/// Enough for checks that reach `Y^[4]`-level associativity.
pub const DEFAULT_MAX_DEGREE: usize = 4;

/// Ordered simplices of nonempty intersections up to a degree cap.
#[derive(Debug, Clone, PartialEq)]
pub struct Nerve {
    vertex_count: usize,
    /// Flat storage per degree, `p + 1` vertices per simplex, lexicographic.
    simplices: Vec<Vec<usize>>,
    /// `faces[p]` holds, per degree-`p` simplex, the indices of its `p + 1`
    /// faces; face `k` omits vertex `k`. Empty for `p = 0`.
    faces: Vec<Vec<usize>>,
    lookup: Vec<BTreeMap<Vec<usize>, usize>>,
}

/// All simplices of degree `<= max_degree` of the nerve of `cover`.
pub fn build_nerve(cover: &Cover, max_degree: usize) -> Result<Nerve, CechError> {
    if max_degree < 3 {
        return Err(CechError::CapTooSmall(max_degree));
    }
    let n = cover.index_count();
    if n == 0 {
        return Err(CechError::InvalidCover("a cover needs at least one set"));
    }
    if let Cover::Explicit(e) = cover {
        let mut by_degree: Vec<Vec<Vec<usize>>> = vec![Vec::new(); max_degree + 1];
        for s in e.simplices() {
            if s.is_empty() {
                continue;
            }
            if s.len() <= max_degree + 1 {
                by_degree[s.len() - 1].push(s.clone());
            }
        }
        return Nerve::from_simplices(n, by_degree, max_degree);
    }
    let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|v| vec![v]).collect()];
    for p in 0..max_degree {
        let mut next = Vec::new();
        for s in &levels[p] {
            let last = *s.last().unwrap();
            for v in (last + 1)..n {
                let mut t = s.clone();
                t.push(v);
                if cover.intersects(&t) {
                    next.push(t);
                }
            }
        }
        levels.push(next);
    }
    Nerve::from_simplices(n, levels, max_degree)
}

impl Nerve {
    /// Assemble a nerve from explicit simplex lists (index = degree).
    ///
    /// Lists are sorted lexicographically; every face of every simplex must be present.
    pub fn from_simplices(
        vertex_count: usize,
        mut by_degree: Vec<Vec<Vec<usize>>>,
        max_degree: usize,
    ) -> Result<Self, CechError> {
        if max_degree < 3 {
            return Err(CechError::CapTooSmall(max_degree));
        }
        if by_degree.len() > max_degree + 1 {
            let extra = by_degree.iter().skip(max_degree + 1).find(|l| !l.is_empty());
            if let Some(l) = extra {
                return Err(CechError::DegreeOverflow { degree: l[0].len() - 1, cap: max_degree });
            }
        }
        by_degree.resize(max_degree + 1, Vec::new());
        if by_degree[0].is_empty() {
            by_degree[0] = (0..vertex_count).map(|v| vec![v]).collect();
        }
        let mut lookup = Vec::with_capacity(max_degree + 1);
        let mut simplices = Vec::with_capacity(max_degree + 1);
        for (p, list) in by_degree.iter_mut().enumerate() {
            for s in list.iter() {
                let ok = s.len() == p + 1
                    && s.windows(2).all(|w| w[0] < w[1])
                    && s.iter().all(|&v| v < vertex_count);
                if !ok {
                    return Err(CechError::BadSimplex(s.clone()));
                }
            }
            list.sort();
            list.dedup();
            let mut map = BTreeMap::new();
            let mut flat = Vec::with_capacity(list.len() * (p + 1));
            for (i, s) in list.iter().enumerate() {
                map.insert(s.clone(), i);
                flat.extend_from_slice(s);
            }
            lookup.push(map);
            simplices.push(flat);
        }
        let mut faces = vec![Vec::new()];
        for p in 1..=max_degree {
            let mut table = Vec::with_capacity(by_degree[p].len() * (p + 1));
            for s in &by_degree[p] {
                for k in 0..=p {
                    let mut f = s.clone();
                    f.remove(k);
                    match lookup[p - 1].get(&f) {
                        Some(&i) => table.push(i),
                        None => return Err(CechError::NotDownwardClosed(s.clone())),
                    }
                }
            }
            faces.push(table);
        }
        Ok(Self { vertex_count, simplices, faces, lookup })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn max_degree(&self) -> usize {
        self.simplices.len() - 1
    }

    /// Number of degree-`p` simplices (0 beyond the cap).
    pub fn count(&self, p: usize) -> usize {
        self.simplices.get(p).map_or(0, |s| s.len() / (p + 1))
    }

    pub fn simplex(&self, p: usize, i: usize) -> &[usize] {
        &self.simplices[p][i * (p + 1)..(i + 1) * (p + 1)]
    }

    pub fn simplices(&self, p: usize) -> impl Iterator<Item = &[usize]> {
        self.simplices[p].chunks_exact(p + 1)
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        let p = simplex.len().checked_sub(1)?;
        self.lookup.get(p)?.get(simplex).copied()
    }

    /// Face indices (in degree `p - 1`) of simplex `i` of degree `p >= 1`.
    pub fn faces(&self, p: usize, i: usize) -> &[usize] {
        &self.faces[p][i * (p + 1)..(i + 1) * (p + 1)]
    }

    /// Matrix of `δ: C^p → C^{p+1}`, rows indexed by `(p+1)`-simplices.
    pub fn coboundary_matrix(&self, p: usize) -> Result<SparseMatrix, CechError> {
        if p + 1 > self.max_degree() {
            return Err(CechError::DegreeOverflow { degree: p + 1, cap: self.max_degree() });
        }
        let mut m = SparseMatrix::new(self.count(p + 1), self.count(p));
        for r in 0..self.count(p + 1) {
            let row = self
                .faces(p + 1, r)
                .iter()
                .enumerate()
                .map(|(k, &f)| (f, if k % 2 == 0 { 1 } else { -1 }));
            m.set_row(r, row.collect());
        }
        Ok(m)
    }

    /// Turn ordered vertex tuples with coefficients into an oriented chain.
    ///
    /// Tuples with a repeated vertex are degenerate and dropped.
    pub fn chain_from_tuples(&self, degree: usize, terms: &[(Vec<usize>, i64)]) -> Result<Chain, CechError> {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for (t, c) in terms {
            if t.len() != degree + 1 {
                return Err(CechError::BadSimplex(t.clone()));
            }
            let mut s = t.clone();
            let sign = sort_sign(&mut s);
            if s.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            let i = self.index_of(&s).ok_or_else(|| CechError::BadSimplex(s.clone()))?;
            *acc.entry(i).or_insert(0) += sign * c;
        }
        Ok(Chain::new(degree, acc.into_iter().filter(|&(_, c)| c != 0).collect()))
    }

    /// Fundamental cycle of the cover's base, when the geometry provides one.
    pub fn fundamental_cycle(&self, cover: &Cover) -> Result<Option<Chain>, CechError> {
        match cover.fundamental_cycle() {
            None => Ok(None),
            Some(terms) => {
                let degree = terms.first().map_or(0, |(t, _)| t.len() - 1);
                self.chain_from_tuples(degree, &terms).map(Some)
            }
        }
    }

    /// Boundary of a chain of degree `p >= 1`.
    pub fn boundary(&self, chain: &Chain) -> Chain {
        let p = chain.degree();
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for &(i, c) in chain.terms() {
            for (k, &f) in self.faces(p, i).iter().enumerate() {
                let s = if k % 2 == 0 { c } else { -c };
                *acc.entry(f).or_insert(0) += s;
            }
        }
        Chain::new(p - 1, acc.into_iter().filter(|&(_, c)| c != 0).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::ExplicitCover;

    fn brute_force_counts(cover: &Cover, max_degree: usize) -> Vec<usize> {
        let n = cover.index_count();
        let mut counts = vec![0; max_degree + 1];
        for mask in 1u64..(1u64 << n) {
            let k = mask.count_ones() as usize;
            if k > max_degree + 1 {
                continue;
            }
            let s: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if cover.intersects(&s) {
                counts[k - 1] += 1;
            }
        }
        counts
    }

    #[test]
    fn circle_of_three_arcs() {
        let n = build_nerve(&Cover::circle(3).unwrap(), 4).unwrap();
        assert_eq!((n.count(0), n.count(1), n.count(2)), (3, 3, 0));
    }

    #[test]
    fn single_set_cover() {
        let c = Cover::Explicit(ExplicitCover::from_simplices(1, []));
        let n = build_nerve(&c, 3).unwrap();
        assert_eq!((n.count(0), n.count(1)), (1, 0));
    }

    #[test]
    fn torus_nerve_counts_match_enumeration() {
        let cover = Cover::torus3(3).unwrap();
        let n = build_nerve(&cover, 4).unwrap();
        assert_eq!(n.count(0), 27);
        // every pair of boxes overlaps when each circle has three arcs
        assert_eq!(n.count(1), 27 * 26 / 2);
        let counts: Vec<usize> = (0..=4).map(|p| n.count(p)).collect();
        assert_eq!(counts, vec![27, 351, 1188, 1809, 1512]);
    }

    #[test]
    fn small_products_match_subset_enumeration() {
        let cover = Cover::product(Cover::Octahedral, Cover::circle(3).unwrap());
        let n = build_nerve(&cover, 4).unwrap();
        let counts: Vec<usize> = (0..=4).map(|p| n.count(p)).collect();
        assert_eq!(counts, brute_force_counts(&cover, 4));
    }

    #[test]
    fn rejects_missing_faces() {
        let c = Cover::Explicit(ExplicitCover::from_simplices(3, [vec![0, 1, 2]]));
        assert!(matches!(build_nerve(&c, 3), Err(CechError::NotDownwardClosed(_))));
    }

    #[test]
    fn stored_faces_exist() {
        let n = build_nerve(&Cover::product(Cover::Octahedral, Cover::circle(3).unwrap()), 4).unwrap();
        for p in 1..=4 {
            for i in 0..n.count(p) {
                for (k, &f) in n.faces(p, i).iter().enumerate() {
                    let mut s = n.simplex(p, i).to_vec();
                    s.remove(k);
                    assert_eq!(n.simplex(p - 1, f), &s[..]);
                }
            }
        }
    }

    #[test]
    fn fundamental_cycles_are_cycles() {
        for cover in [
            Cover::circle(3).unwrap(),
            Cover::Octahedral,
            Cover::torus3(3).unwrap(),
            Cover::product(Cover::Octahedral, Cover::circle(3).unwrap()),
        ] {
            let n = build_nerve(&cover, 4).unwrap();
            let z = n.fundamental_cycle(&cover).unwrap().unwrap();
            assert!(!z.terms().is_empty());
            assert!(n.boundary(&z).terms().is_empty());
        }
    }
}
