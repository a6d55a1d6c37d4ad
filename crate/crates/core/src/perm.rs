//! Small permutation toolkit over dense labels `0..n`.

use crate::error::{RibbonError, Result};

/// Checks that `map` is a bijection of `0..map.len()`.
pub fn validate(map: &[usize], name: &str) -> Result<()> {
    let n = map.len();
    let mut seen = vec![false; n];
    for (i, &j) in map.iter().enumerate() {
        if j >= n || seen[j] {
            return Err(RibbonError::InvalidPermutation(format!(
                "{name} is not a permutation of 0..{n} (at label {i})"
            )));
        }
        seen[j] = true;
    }
    Ok(())
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

pub fn inverse(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; map.len()];
    for (i, &j) in map.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// `compose(a, b)` applies `b` first, then `a`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

/// Orbit representative (minimal label) for every label.
pub fn orbit_reps(map: &[usize]) -> Vec<usize> {
    let n = map.len();
    let mut rep = vec![usize::MAX; n];
    for start in 0..n {
        if rep[start] != usize::MAX {
            continue;
        }
        let mut x = start;
        loop {
            rep[x] = start;
            x = map[x];
            if x == start {
                break;
            }
        }
    }
    rep
}

/// Cycles of `map`, each starting at its minimal label, sorted by that label.
pub fn cycles(map: &[usize]) -> Vec<Vec<usize>> {
    let n = map.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push(x);
            x = map[x];
        }
        out.push(cyc);
    }
    out
}

pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Vec<usize>> {
    let mut map: Vec<Option<usize>> = vec![None; n];
    for cyc in cycles {
        for (k, &x) in cyc.iter().enumerate() {
            let y = cyc[(k + 1) % cyc.len()];
            if x >= n || y >= n {
                return Err(RibbonError::InvalidPermutation(format!(
                    "label {} out of range 0..{n}",
                    x.max(y)
                )));
            }
            if map[x].is_some() {
                return Err(RibbonError::InvalidPermutation(format!(
                    "label {x} appears in two cycles"
                )));
            }
            map[x] = Some(y);
        }
    }
    let map: Vec<usize> = map
        .into_iter()
        .enumerate()
        .map(|(i, m)| m.unwrap_or(i))
        .collect();
    validate(&map, "cycle list")?;
    Ok(map)
}

pub fn num_cycles(map: &[usize]) -> usize {
    let n = map.len();
    let mut seen = vec![false; n];
    let mut count = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = map[x];
        }
    }
    count
}

/// Union-find over labels, used for components of the group generated by
/// several permutations.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
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

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_first() {
        let a = vec![1, 2, 0];
        let b = vec![0, 2, 1];
        assert_eq!(compose(&a, &b), vec![1, 0, 2]);
        assert_eq!(compose(&a, &inverse(&a)), identity(3));
    }

    #[test]
    fn cycles_round_trip() {
        let p = from_cycles(6, &[vec![0, 2, 4], vec![1, 3, 5]]).unwrap();
        assert_eq!(cycles(&p), vec![vec![0, 2, 4], vec![1, 3, 5]]);
        assert_eq!(num_cycles(&p), 2);
        assert!(from_cycles(3, &[vec![0, 1], vec![1, 2]]).is_err());
    }
}
