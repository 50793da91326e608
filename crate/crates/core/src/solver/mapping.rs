use std::fmt;

/// Assignment of streams (by position) to platforms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mapping(pub Vec<usize>);

impl Mapping {
    pub fn platform_of(&self, stream: usize) -> usize {
        self.0[stream]
    }

    /// Streams bound to each platform, in stream order.
    pub fn platform_lists(&self, k: usize) -> Vec<Vec<usize>> {
        let mut lists = vec![Vec::new(); k];
        for (i, &p) in self.0.iter().enumerate() {
            lists[p].push(i);
        }
        lists
    }

    /// Streams per platform.
    pub fn loads(&self, k: usize) -> Vec<usize> {
        let mut loads = vec![0; k];
        for &p in &self.0 {
            loads[p] += 1;
        }
        loads
    }
}

impl fmt::Display for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

/// Which interchangeabilities the enumeration may exploit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Symmetry {
    /// Platforms are identical.
    pub platform: bool,
    /// Streams of the same type are identical.
    pub stream: bool,
}

impl Default for Symmetry {
    fn default() -> Self {
        Symmetry {
            platform: true,
            stream: true,
        }
    }
}

/// Number of functions from `n` streams to `k` platforms with at most `cap` streams each.
pub fn count_mappings(n: usize, k: usize, cap: usize) -> u128 {
    let mut binom = vec![vec![0u128; n + 1]; n + 1];
    for i in 0..=n {
        binom[i][0] = 1;
        for j in 1..=i {
            binom[i][j] = binom[i - 1][j - 1] + binom[i - 1][j];
        }
    }
    // ways[m]: assignments of m labelled streams to the platforms seen so far.
    let mut ways = vec![0u128; n + 1];
    ways[0] = 1;
    for _ in 0..k {
        let mut next = vec![0u128; n + 1];
        for (m, slot) in next.iter_mut().enumerate() {
            for j in 0..=m.min(cap) {
                *slot += binom[m][j] * ways[m - j];
            }
        }
        ways = next;
    }
    ways[n]
}

/// Dense class ids: streams with equal keys share a class, numbered by first occurrence.
pub fn type_classes<T: PartialEq>(streams: &[T]) -> Vec<usize> {
    let mut reps: Vec<&T> = Vec::new();
    streams
        .iter()
        .map(|s| match reps.iter().position(|r| *r == s) {
            Some(i) => i,
            None => {
                reps.push(s);
                reps.len() - 1
            }
        })
        .collect()
}

struct Enumerator<'a> {
    classes: &'a [usize],
    class_count: usize,
    k: usize,
    cap: usize,
    sym: Symmetry,
    assign: Vec<usize>,
    loads: Vec<usize>,
    out: Vec<Mapping>,
}

impl Enumerator<'_> {
    fn allowed(&self, i: usize, p: usize) -> bool {
        if self.loads[p] >= self.cap {
            return false;
        }
        if self.sym.stream {
            let c = self.classes[i];
            if let Some(j) = (0..i).rev().find(|&j| self.classes[j] == c) {
                if p < self.assign[j] {
                    return false;
                }
            }
        }
        if self.sym.platform && !self.sym.stream {
            let used = self.assign.iter().max().map_or(0, |m| m + 1);
            if p > used {
                return false;
            }
        }
        true
    }

    /// With both symmetries, platforms must be sorted by their per-class load vectors.
    fn canonical(&self) -> bool {
        if !(self.sym.platform && self.sym.stream) {
            return true;
        }
        let mut vecs = vec![vec![0usize; self.class_count]; self.k];
        for (i, &p) in self.assign.iter().enumerate() {
            vecs[p][self.classes[i]] += 1;
        }
        vecs.windows(2).all(|w| w[0] >= w[1])
    }

    fn run(&mut self, i: usize) {
        if i == self.classes.len() {
            if self.canonical() {
                self.out.push(Mapping(self.assign.clone()));
            }
            return;
        }
        for p in 0..self.k {
            if self.allowed(i, p) {
                self.assign.push(p);
                self.loads[p] += 1;
                self.run(i + 1);
                self.loads[p] -= 1;
                self.assign.pop();
            }
        }
    }
}

/// Mappings in lexicographic order, one per symmetry orbit where symmetry applies.
///
/// `classes[i]` is the type class of stream `i`, as produced by [`type_classes`].
pub fn enumerate_mappings(classes: &[usize], k: usize, cap: usize, sym: Symmetry) -> Vec<Mapping> {
    let mut e = Enumerator {
        classes,
        class_count: classes.iter().max().map_or(0, |m| m + 1),
        k,
        cap,
        sym,
        assign: Vec::with_capacity(classes.len()),
        loads: vec![0; k],
        out: Vec::new(),
    };
    e.run(0);
    e.out
}
