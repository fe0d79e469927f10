use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A strict partial order on `{1..n}`, stored transitively closed as an
/// `n × n` relation matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    less: Vec<bool>,
}

impl Poset {
    pub fn antichain(n: usize) -> Self {
        Self {
            n,
            less: vec![false; n * n],
        }
    }

    /// The chain `π(1) < π(2) < ... < π(n)`.
    pub fn chain(p: &Permutation) -> Self {
        let mut poset = Self::antichain(p.len());
        let img = p.images();
        for a in 0..img.len() {
            for b in a + 1..img.len() {
                poset.set(img[a], img[b]);
            }
        }
        poset
    }

    /// Transitive closure of the given `(i, j)` pairs meaning `i < j`.
    pub fn from_relations(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut poset = Self::antichain(n);
        for &(i, j) in relations {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::InvalidParameter(format!(
                    "relation ({i}, {j}) outside 1..{n}"
                )));
            }
            poset.set(i, j);
        }
        // Warshall
        for k in 1..=n {
            for i in 1..=n {
                if poset.lt(i, k) {
                    for j in 1..=n {
                        if poset.lt(k, j) {
                            poset.set(i, j);
                        }
                    }
                }
            }
        }
        if let Some(i) = (1..=n).find(|&i| poset.lt(i, i)) {
            return Err(Error::CyclicRelation(i));
        }
        Ok(poset)
    }

    /// Disjoint union of chains; each chain lists its elements bottom-up.
    pub fn disjoint_chains(n: usize, chains: &[Vec<usize>]) -> Result<Self> {
        let mut relations = Vec::new();
        for chain in chains {
            for w in chain.windows(2) {
                relations.push((w[0], w[1]));
            }
        }
        Self::from_relations(n, &relations)
    }

    fn set(&mut self, i: usize, j: usize) {
        self.less[(i - 1) * self.n + (j - 1)] = true;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `i <_P j`.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.less[(i - 1) * self.n + (j - 1)]
    }

    pub fn relations(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.n).flat_map(move |i| (1..=self.n).filter(move |&j| self.lt(i, j)).map(move |j| (i, j)))
    }

    /// Pairs `i < j` with nothing strictly between them.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.relations()
            .filter(|&(i, j)| !(1..=self.n).any(|k| self.lt(i, k) && self.lt(k, j)))
            .collect()
    }

    /// `true` if every relation of `self` also holds in `other`.
    pub fn is_refined_by(&self, other: &Poset) -> bool {
        self.n == other.n && self.relations().all(|(i, j)| other.lt(i, j))
    }

    /// Chains `π` with `i <_P j ⇒ π⁻¹(i) < π⁻¹(j)`, in lexicographic order.
    pub fn linear_extensions(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(self.n);
        let mut used = vec![false; self.n + 1];
        self.extend(&mut prefix, &mut used, &mut out);
        out
    }

    fn extend(&self, prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if prefix.len() == self.n {
            out.push(Permutation::from_images_unchecked(prefix.clone()));
            return;
        }
        for j in 1..=self.n {
            if used[j] || (1..=self.n).any(|i| !used[i] && self.lt(i, j)) {
                continue;
            }
            used[j] = true;
            prefix.push(j);
            self.extend(prefix, used, out);
            prefix.pop();
            used[j] = false;
        }
    }
}

/// Every labeled poset on `{1..n}`.
///
/// Built by adding element `n` to each poset on `{1..n-1}` with a chosen
/// down-set `D` and up-set `U`: `D` an order ideal, `U` a filter, and
/// `d < u` already holding for all `d ∈ D`, `u ∈ U`.
pub fn all_posets(n: usize) -> Vec<Poset> {
    let mut current = vec![Poset::antichain(0)];
    for size in 1..=n {
        let mut next = Vec::new();
        for p in &current {
            let prev = size - 1;
            for down in 0u32..(1 << prev) {
                let in_down = |i: usize| down >> (i - 1) & 1 == 1;
                // ideal: closed downward
                if !(1..=prev).all(|j| !in_down(j) || (1..=prev).all(|i| !p.lt(i, j) || in_down(i))) {
                    continue;
                }
                for up in 0u32..(1 << prev) {
                    if up & down != 0 {
                        continue;
                    }
                    let in_up = |i: usize| up >> (i - 1) & 1 == 1;
                    if !(1..=prev).all(|i| !in_up(i) || (1..=prev).all(|j| !p.lt(i, j) || in_up(j))) {
                        continue;
                    }
                    if !(1..=prev).all(|d| !in_down(d) || (1..=prev).all(|u| !in_up(u) || p.lt(d, u))) {
                        continue;
                    }
                    let mut q = Poset::antichain(size);
                    for (i, j) in p.relations() {
                        q.set(i, j);
                    }
                    for i in 1..=prev {
                        if in_down(i) {
                            q.set(i, size);
                        }
                        if in_up(i) {
                            q.set(size, i);
                        }
                    }
                    next.push(q);
                }
            }
        }
        current = next;
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_extensions_examples() {
        let p = Poset::from_relations(3, &[(1, 2), (3, 2)]).unwrap();
        let ext: Vec<String> = p.linear_extensions().iter().map(|q| q.to_string()).collect();
        assert_eq!(ext, vec!["132", "312"]);
        assert_eq!(Poset::antichain(3).linear_extensions().len(), 6);
        let chain = Poset::from_relations(3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(chain.linear_extensions(), vec![Permutation::identity(3)]);
        assert!(chain.lt(1, 3));
        assert_eq!(chain.covers(), vec![(1, 2), (2, 3)]);
    }

    #[test]
    fn rejects_cycles() {
        assert_eq!(
            Poset::from_relations(2, &[(1, 2), (2, 1)]),
            Err(Error::CyclicRelation(1))
        );
    }

    #[test]
    fn labeled_poset_counts() {
        // OEIS A001035
        let counts: Vec<usize> = (0..=5).map(|n| all_posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 19, 219, 4231]);
    }

    #[test]
    fn generated_posets_are_strict_orders() {
        for p in all_posets(4) {
            for i in 1..=4 {
                assert!(!p.lt(i, i));
                for j in 1..=4 {
                    assert!(!(p.lt(i, j) && p.lt(j, i)));
                    for k in 1..=4 {
                        if p.lt(i, j) && p.lt(j, k) {
                            assert!(p.lt(i, k));
                        }
                    }
                }
            }
            for ext in p.linear_extensions() {
                assert!(p.is_refined_by(&Poset::chain(&ext)));
            }
        }
    }
}
