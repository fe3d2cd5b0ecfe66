//! Unlabeled function tables: the shared kernel beneath the labeled types.

/// All functions `n -> m` as tables, in lexicographic order.
#[derive(Debug, Clone)]
pub struct Tables {
    m: usize,
    cur: Option<Vec<usize>>,
}

impl Tables {
    pub fn new(n: usize, m: usize) -> Self {
        let cur = if n > 0 && m == 0 {
            None
        } else {
            Some(vec![0; n])
        };
        Tables { m, cur }
    }
}

impl Iterator for Tables {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.take()?;
        let mut next = out.clone();
        let mut i = next.len();
        while i > 0 {
            i -= 1;
            if next[i] + 1 < self.m {
                next[i] += 1;
                next[i + 1..].iter_mut().for_each(|v| *v = 0);
                self.cur = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}

/// Relabels arbitrary ids so that they appear in first-occurrence order.
pub fn canonical_ids(ids: &[usize]) -> Vec<usize> {
    let mut seen: Vec<(usize, usize)> = Vec::new();
    ids.iter()
        .map(|&id| match seen.iter().find(|(old, _)| *old == id) {
            Some(&(_, new)) => new,
            None => {
                let new = seen.len();
                seen.push((id, new));
                new
            }
        })
        .collect()
}

pub fn class_count(ids: &[usize]) -> usize {
    ids.iter().map(|&c| c + 1).max().unwrap_or(0)
}

/// `g ∘ f` on tables.
pub fn compose(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&x| g[x]).collect()
}

pub fn is_injective(t: &[usize], m: usize) -> bool {
    let mut hit = vec![false; m];
    t.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
}

pub fn is_surjective(t: &[usize], m: usize) -> bool {
    let mut hit = vec![false; m];
    t.iter().for_each(|&y| hit[y] = true);
    hit.into_iter().all(|h| h)
}

/// Equal-image pairs `(x, y)` with `f(x) = g(y)`, lexicographically ordered.
pub fn pullback_pairs(f: &[usize], g: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (x, &fx) in f.iter().enumerate() {
        for (y, &gy) in g.iter().enumerate() {
            if fx == gy {
                out.push((x, y));
            }
        }
    }
    out
}

/// Canonical class ids on a carrier of `m` elements for the smallest
/// equivalence identifying `f(x)` with `g(x)`.
pub fn coequalizer_ids(f: &[usize], g: &[usize], m: usize) -> Vec<usize> {
    let mut dsu = Dsu::new(m);
    for (&a, &b) in f.iter().zip(g) {
        dsu.union(a, b);
    }
    dsu.canonical()
}

/// Union-find with path halving.
#[derive(Debug, Clone)]
pub struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // the smaller root wins so representatives are least indices
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn canonical(&mut self) -> Vec<usize> {
        let roots: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        canonical_ids(&roots)
    }
}

/// Given a surjective `q: n -> k` and any `h: n -> m`, the unique `u` with
/// `u ∘ q = h`, if one exists.
pub fn factor_surjective(q: &[usize], k: usize, h: &[usize]) -> Option<Vec<usize>> {
    let mut u: Vec<Option<usize>> = vec![None; k];
    for (&c, &v) in q.iter().zip(h) {
        match u[c] {
            Some(w) if w != v => return None,
            _ => u[c] = Some(v),
        }
    }
    u.into_iter().collect()
}
