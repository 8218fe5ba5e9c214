use super::Diagram;

/// A limit of a finite-set-valued diagram. Each apex element is the tuple of
/// its components, one per shape object; the legs are the projections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitResult {
    pub apex: Vec<Vec<usize>>,
}

impl LimitResult {
    pub fn len(&self) -> usize {
        self.apex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.apex.is_empty()
    }

    pub fn leg(&self, object: usize) -> Vec<usize> {
        self.apex.iter().map(|t| t[object]).collect()
    }

    pub fn position(&self, tuple: &[usize]) -> Option<usize> {
        self.apex.binary_search_by(|t| t.as_slice().cmp(tuple)).ok()
    }
}

/// A limit problem over a graph: `sizes[o]` is the set at node `o` and each
/// edge `(src, dst, map)` asks `map[x_src] = x_dst`. The limit over a category
/// equals the limit over any generating graph of its morphisms.
#[derive(Clone, Debug, Default)]
pub struct GraphLimit {
    pub sizes: Vec<usize>,
    pub edges: Vec<(usize, usize, usize)>,
    pub maps: Vec<Vec<usize>>,
}

impl GraphLimit {
    pub fn new(sizes: Vec<usize>) -> Self {
        GraphLimit { sizes, edges: Vec::new(), maps: Vec::new() }
    }

    /// Registers a function and returns its id, for sharing between edges.
    pub fn add_map(&mut self, map: Vec<usize>) -> usize {
        self.maps.push(map);
        self.maps.len() - 1
    }

    pub fn add_edge(&mut self, src: usize, dst: usize, map: usize) {
        debug_assert_eq!(self.maps[map].len(), self.sizes[src]);
        self.edges.push((src, dst, map));
    }

    pub fn from_diagram(d: &Diagram) -> Self {
        let mut g = GraphLimit::new(d.sizes.clone());
        for (f, m) in d.shape.morphisms().iter().enumerate() {
            if !d.shape.is_identity(f) {
                let id = g.add_map(d.actions[f].clone());
                g.add_edge(m.src, m.dst, id);
            }
        }
        g
    }

    /// Compatible families, sorted.
    pub fn solve(&self) -> Vec<Vec<usize>> {
        let steps = self.plan();
        let mut values = vec![usize::MAX; self.sizes.len()];
        let mut out = Vec::new();
        self.search(&steps, 0, &mut values, &mut out);
        out.sort_unstable();
        out
    }

    fn plan(&self) -> Vec<Step> {
        let n = self.sizes.len();
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for (e, &(s, d, _)) in self.edges.iter().enumerate() {
            outgoing[s].push(e);
            incoming[d].push(e);
        }
        let mut assigned = vec![false; n];
        let mut steps: Vec<Step> = Vec::with_capacity(n);
        // nodes reachable from an assigned node, in discovery order
        let mut frontier: std::collections::VecDeque<usize> = Default::default();
        for _ in 0..n {
            let mut choice = None;
            while let Some(o) = frontier.pop_front() {
                if assigned[o] {
                    continue;
                }
                let e = *incoming[o].iter().find(|&&e| assigned[self.edges[e].0]).expect("frontier node");
                choice = Some((o, Some(e)));
                break;
            }
            let (o, forced) = match choice {
                Some(c) => c,
                None => {
                    let o = (0..n)
                        .filter(|&o| !assigned[o])
                        .max_by_key(|&o| {
                            let reach = outgoing[o].iter().filter(|&&e| !assigned[self.edges[e].1]).count();
                            (reach, usize::MAX - self.sizes[o], usize::MAX - o)
                        })
                        .expect("an unassigned node remains");
                    (o, None)
                }
            };
            assigned[o] = true;
            for &e in &outgoing[o] {
                let d = self.edges[e].1;
                if !assigned[d] {
                    frontier.push_back(d);
                }
            }
            let mut checks: Vec<usize> = outgoing[o]
                .iter()
                .chain(incoming[o].iter())
                .copied()
                .filter(|&e| Some(e) != forced && assigned[self.edges[e].0] && assigned[self.edges[e].1])
                .collect();
            checks.sort_unstable();
            checks.dedup();
            steps.push(Step { object: o, forced, checks });
        }
        steps
    }

    fn consistent(&self, step: &Step, values: &[usize]) -> bool {
        step.checks.iter().all(|&e| {
            let (s, d, m) = self.edges[e];
            self.maps[m][values[s]] == values[d]
        })
    }

    fn search(&self, steps: &[Step], depth: usize, values: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if depth == steps.len() {
            out.push(values.clone());
            return;
        }
        let step = &steps[depth];
        match step.forced {
            Some(e) => {
                let (s, _, m) = self.edges[e];
                values[step.object] = self.maps[m][values[s]];
                if self.consistent(step, values) {
                    self.search(steps, depth + 1, values, out);
                }
            }
            None => {
                for x in 0..self.sizes[step.object] {
                    values[step.object] = x;
                    if self.consistent(step, values) {
                        self.search(steps, depth + 1, values, out);
                    }
                }
            }
        }
        values[step.object] = usize::MAX;
    }
}

struct Step {
    object: usize,
    // edge whose map determines this node from an assigned one
    forced: Option<usize>,
    // edges to check once this node is assigned
    checks: Vec<usize>,
}

/// The limit as the set of compatible families, found by backtracking with
/// forced propagation along morphisms out of already chosen objects.
pub fn limit(d: &Diagram) -> LimitResult {
    LimitResult { apex: GraphLimit::from_diagram(d).solve() }
}

/// Reference limit: filter the full product. Only for small diagrams.
pub fn limit_bruteforce(d: &Diagram) -> LimitResult {
    let n = d.shape.object_count();
    let mut apex = Vec::new();
    let mut cur = vec![0usize; n];
    if d.sizes.contains(&0) {
        return LimitResult { apex };
    }
    loop {
        let ok = d.shape.morphisms().iter().enumerate().all(|(f, m)| d.actions[f][cur[m.src]] == cur[m.dst]);
        if ok {
            apex.push(cur.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return LimitResult { apex };
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < d.sizes[i] {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// A cone over `d`: an apex of size `size` with a leg per object.
#[derive(Clone, Debug)]
pub struct Cone {
    pub size: usize,
    pub legs: Vec<Vec<usize>>,
}

pub fn is_cone(d: &Diagram, cone: &Cone) -> bool {
    d.shape
        .morphisms()
        .iter()
        .enumerate()
        .all(|(f, m)| (0..cone.size).all(|x| d.actions[f][cone.legs[m.src][x]] == cone.legs[m.dst][x]))
}

/// Checks that the limit's legs form a cone and that `cone` factors through
/// it uniquely.
pub fn factors_uniquely(d: &Diagram, lim: &LimitResult, cone: &Cone) -> bool {
    let legs: Vec<Vec<usize>> = (0..d.shape.object_count()).map(|o| lim.leg(o)).collect();
    if !is_cone(d, &Cone { size: lim.len(), legs }) || !is_cone(d, cone) {
        return false;
    }
    (0..cone.size).all(|x| {
        let tuple: Vec<usize> = cone.legs.iter().map(|leg| leg[x]).collect();
        lim.apex.iter().filter(|t| **t == tuple).count() == 1
    })
}

/// Colimit as connected components of the category of elements, with
/// component representatives ordered canonically.
pub fn colimit(d: &Diagram) -> Vec<Vec<(usize, usize)>> {
    let mut uf = UnionFind::new(&d.sizes);
    for (f, m) in d.shape.morphisms().iter().enumerate() {
        for x in 0..d.sizes[m.src] {
            uf.union((m.src, x), (m.dst, d.actions[f][x]));
        }
    }
    uf.classes()
}

/// Union-find over a disjoint union of finite sets.
pub(crate) struct UnionFind {
    offsets: Vec<usize>,
    parent: Vec<usize>,
    labels: Vec<(usize, usize)>,
}

impl UnionFind {
    pub(crate) fn new(sizes: &[usize]) -> Self {
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut labels = Vec::new();
        for (block, &s) in sizes.iter().enumerate() {
            offsets.push(labels.len());
            labels.extend((0..s).map(|x| (block, x)));
        }
        let parent = (0..labels.len()).collect();
        UnionFind { offsets, parent, labels }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub(crate) fn union(&mut self, a: (usize, usize), b: (usize, usize)) {
        let ra = self.find(self.offsets[a.0] + a.1);
        let rb = self.find(self.offsets[b.0] + b.1);
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub(crate) fn classes(&mut self) -> Vec<Vec<(usize, usize)>> {
        let n = self.labels.len();
        let mut by_root: std::collections::BTreeMap<usize, Vec<(usize, usize)>> = Default::default();
        for i in 0..n {
            let r = self.find(i);
            by_root.entry(r).or_default().push(self.labels[i]);
        }
        by_root.into_values().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{FinCategory, Morphism};

    fn cospan(x: usize, y: usize, z: usize, f: Vec<usize>, g: Vec<usize>) -> Diagram {
        // objects 0 -> 2 <- 1
        let shape = FinCategory::new(
            3,
            vec![
                Morphism { src: 0, dst: 0 },
                Morphism { src: 1, dst: 1 },
                Morphism { src: 2, dst: 2 },
                Morphism { src: 0, dst: 2 },
                Morphism { src: 1, dst: 2 },
            ],
            vec![0, 1, 2],
            &[(0, 0, 0), (1, 1, 1), (2, 2, 2), (3, 0, 3), (2, 3, 3), (4, 1, 4), (2, 4, 4)],
        )
        .unwrap();
        let id = |n: usize| (0..n).collect::<Vec<_>>();
        Diagram::new(shape, vec![x, y, z], vec![id(x), id(y), id(z), f, g]).unwrap()
    }

    #[test]
    fn product_over_a_point() {
        let d = cospan(2, 3, 1, vec![0, 0], vec![0, 0, 0]);
        assert_eq!(limit(&d).len(), 6);
    }

    #[test]
    fn pullback_example() {
        // A = {a1, a2}, B = {b}, C = {c1, c2}, f = (c1, c2), g = (c1)
        let d = cospan(2, 1, 2, vec![0, 1], vec![0]);
        let lim = limit(&d);
        assert_eq!(lim.apex, vec![vec![0, 0, 0]]);
        assert_eq!(lim, limit_bruteforce(&d));
    }

    #[test]
    fn empty_shape_gives_singleton() {
        let d = Diagram::new(FinCategory::discrete(0), vec![], vec![]).unwrap();
        assert_eq!(limit(&d).len(), 1);
    }

    #[test]
    fn colimit_of_cospan_glues() {
        let d = cospan(2, 1, 2, vec![0, 1], vec![0]);
        let classes = colimit(&d);
        assert_eq!(classes.len(), 2);
    }
}
