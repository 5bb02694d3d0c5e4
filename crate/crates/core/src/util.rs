//! Small shared helpers.

/// Union-find with path compression and union by size.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns true if the two elements were in distinct classes.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    #[cfg_attr(not(test), allow(dead_code))]
    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Class ids renumbered by first occurrence: element 0's class is 0, the
    /// next class discovered is 1, and so on.
    pub fn canonical_ids(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut ids = vec![usize::MAX; n];
        let mut by_root = vec![usize::MAX; n];
        let mut next = 0;
        for x in 0..n {
            let root = self.find(x);
            if by_root[root] == usize::MAX {
                by_root[root] = next;
                next += 1;
            }
            ids[x] = by_root[root];
        }
        ids
    }
}

/// Canonical class ids for an arbitrary equivalence given as a predicate.
pub(crate) fn canonical_ids_by(n: usize, equiv: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let mut ids = vec![usize::MAX; n];
    let mut next = 0;
    for i in 0..n {
        if ids[i] != usize::MAX {
            continue;
        }
        ids[i] = next;
        for j in i + 1..n {
            if ids[j] == usize::MAX && equiv(i, j) {
                ids[j] = next;
            }
        }
        next += 1;
    }
    ids
}

/// Group elements by class id, classes ordered by id, members ascending.
pub(crate) fn blocks_from_ids(ids: &[usize]) -> Vec<Vec<usize>> {
    let count = ids.iter().copied().max().map_or(0, |m| m + 1);
    let mut blocks = vec![Vec::new(); count];
    for (x, &c) in ids.iter().enumerate() {
        blocks[c].push(x);
    }
    blocks
}
