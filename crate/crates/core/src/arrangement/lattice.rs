use super::ArrangementError;

/// Largest arrangement accepted by [`lattice_isomorphic`].
pub const LATTICE_SEARCH_MAX_LINES: usize = 12;

/// Point–line incidences of an arrangement, restricted to points of
/// multiplicity at least two. Every pair of lines meets in exactly one of
/// the listed points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    d: usize,
    points: Vec<Vec<usize>>,
    /// `meet[i][j]` is the index of the point on lines `i` and `j`.
    meet: Vec<Vec<usize>>,
}

impl Incidence {
    pub fn new(d: usize, points: Vec<Vec<usize>>) -> Self {
        let mut meet = vec![vec![usize::MAX; d]; d];
        for (p, lines) in points.iter().enumerate() {
            for &i in lines {
                for &j in lines {
                    if i != j {
                        meet[i][j] = p;
                    }
                }
            }
        }
        Incidence { d, points, meet }
    }

    pub fn num_lines(&self) -> usize {
        self.d
    }

    pub fn points(&self) -> &[Vec<usize>] {
        &self.points
    }

    fn multiplicity(&self, p: usize) -> usize {
        self.points[p].len()
    }

    /// Sorted multiplicities of the points on line `i`.
    fn signature(&self, i: usize) -> Vec<usize> {
        let mut s: Vec<usize> = self.points.iter().filter(|p| p.contains(&i)).map(Vec::len).collect();
        s.sort_unstable();
        s
    }
}

/// Searches for a bijection of lines carrying the incidence structure of `a`
/// onto that of `b`. Returns the map `line of a -> line of b` if one exists.
pub fn lattice_isomorphic(a: &Incidence, b: &Incidence) -> Result<Option<Vec<usize>>, ArrangementError> {
    for inc in [a, b] {
        if inc.d > LATTICE_SEARCH_MAX_LINES {
            return Err(ArrangementError::TooLarge {
                d: inc.d,
                max: LATTICE_SEARCH_MAX_LINES,
            });
        }
    }
    if a.d != b.d || a.points.len() != b.points.len() {
        return Ok(None);
    }
    let mut ma: Vec<usize> = a.points.iter().map(Vec::len).collect();
    let mut mb: Vec<usize> = b.points.iter().map(Vec::len).collect();
    ma.sort_unstable();
    mb.sort_unstable();
    if ma != mb {
        return Ok(None);
    }
    let sig_a: Vec<_> = (0..a.d).map(|i| a.signature(i)).collect();
    let sig_b: Vec<_> = (0..b.d).map(|i| b.signature(i)).collect();
    let mut sa = sig_a.clone();
    let mut sb = sig_b.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return Ok(None);
    }
    // Lines on many high-multiplicity points first: they constrain the most.
    let mut order: Vec<usize> = (0..a.d).collect();
    order.sort_by_key(|&i| {
        let weight: usize = sig_a[i].iter().map(|m| m * m).sum();
        (std::cmp::Reverse(weight), i)
    });
    let mut search = Search {
        a,
        b,
        sig_a: &sig_a,
        sig_b: &sig_b,
        order,
        line_map: vec![usize::MAX; a.d],
        used: vec![false; b.d],
        point_map: vec![usize::MAX; a.points.len()],
        point_inv: vec![usize::MAX; b.points.len()],
    };
    Ok(search.extend(0).then(|| search.line_map.clone()))
}

struct Search<'a> {
    a: &'a Incidence,
    b: &'a Incidence,
    sig_a: &'a [Vec<usize>],
    sig_b: &'a [Vec<usize>],
    order: Vec<usize>,
    line_map: Vec<usize>,
    used: Vec<bool>,
    point_map: Vec<usize>,
    point_inv: Vec<usize>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let k = self.order[depth];
        for cand in 0..self.b.d {
            if self.used[cand] || self.sig_a[k] != self.sig_b[cand] {
                continue;
            }
            let mut touched = Vec::new();
            if self.assign(depth, k, cand, &mut touched) {
                self.line_map[k] = cand;
                self.used[cand] = true;
                if self.extend(depth + 1) {
                    return true;
                }
                self.line_map[k] = usize::MAX;
                self.used[cand] = false;
            }
            for p in touched {
                let q = self.point_map[p];
                self.point_map[p] = usize::MAX;
                self.point_inv[q] = usize::MAX;
            }
        }
        false
    }

    /// Extends the point map with the meets of `k` against every already
    /// placed line; records newly mapped points in `touched`.
    fn assign(&mut self, depth: usize, k: usize, cand: usize, touched: &mut Vec<usize>) -> bool {
        for &i in &self.order[..depth] {
            let pa = self.a.meet[i][k];
            let pb = self.b.meet[self.line_map[i]][cand];
            if self.a.multiplicity(pa) != self.b.multiplicity(pb) {
                return false;
            }
            match (self.point_map[pa], self.point_inv[pb]) {
                (usize::MAX, usize::MAX) => {
                    self.point_map[pa] = pb;
                    self.point_inv[pb] = pa;
                    touched.push(pa);
                }
                (q, _) if q == pb => {}
                _ => return false,
            }
        }
        true
    }
}
