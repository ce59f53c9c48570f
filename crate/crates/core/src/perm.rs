//! Permutations of 0..n acting on the right, and brute-force closures for
//! the small groups met here (order 1512 on 28 points).

use std::collections::{HashSet, VecDeque};

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u32).collect())
    }

    /// `images[i]` is the image of i; `None` unless this is a bijection.
    pub fn from_images(images: Vec<u32>) -> Option<Perm> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let slot = seen.get_mut(x as usize)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }
}

/// All elements of ⟨gens⟩, or `None` if the group outgrows `limit`.
pub fn generate_group(gens: &[Perm], limit: usize) -> Option<Vec<Perm>> {
    let n = gens.first().map_or(0, Perm::degree);
    let id = Perm::identity(n);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return None;
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Some(elements)
}

/// Size of the orbit of `start` under the generators.
pub fn orbit_len(gens: &[Perm], start: usize) -> usize {
    let n = gens.first().map_or(0, Perm::degree);
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count
}

/// Whether ⟨gens⟩ is transitive on ordered pairs of distinct points.
pub fn is_doubly_transitive(gens: &[Perm]) -> bool {
    let n = gens.first().map_or(0, Perm::degree);
    if n < 2 {
        return false;
    }
    let idx = |a: usize, b: usize| a * n + b;
    let mut seen = vec![false; n * n];
    seen[idx(0, 1)] = true;
    let mut stack = vec![(0usize, 1usize)];
    let mut count = 1;
    while let Some((a, b)) = stack.pop() {
        for g in gens {
            let (x, y) = (g.apply(a), g.apply(b));
            if !seen[idx(x, y)] {
                seen[idx(x, y)] = true;
                count += 1;
                stack.push((x, y));
            }
        }
    }
    count == n * (n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_closure() {
        let cycle = Perm::from_images(vec![1, 2, 3, 0]).unwrap();
        let swap = Perm::from_images(vec![1, 0, 2, 3]).unwrap();
        let g = generate_group(&[cycle.clone(), swap.clone()], 100).unwrap();
        assert_eq!(g.len(), 24);
        assert!(is_doubly_transitive(&[cycle.clone(), swap]));
        assert!(!is_doubly_transitive(std::slice::from_ref(&cycle)));
        assert_eq!(orbit_len(std::slice::from_ref(&cycle), 2), 4);
        assert!(generate_group(&[cycle], 3).is_none());
    }

    #[test]
    fn composition_is_right_action() {
        let a = Perm::from_images(vec![1, 2, 0]).unwrap();
        let b = Perm::from_images(vec![0, 2, 1]).unwrap();
        let ab = a.then(&b);
        for i in 0..3 {
            assert_eq!(ab.apply(i), b.apply(a.apply(i)));
        }
        assert!(a.then(&a.inverse()).is_identity());
        assert!(Perm::from_images(vec![0, 0]).is_none());
    }
}
