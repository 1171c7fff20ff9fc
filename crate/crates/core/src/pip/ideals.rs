use fixedbitset::FixedBitSet;

use super::{Ideal, Pip, PipError};
use crate::Guard;

/// Hyperplanes a particle at an ideal can cross next.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AvailableMoves {
    /// Maximal elements of the ideal.
    pub removable: Vec<usize>,
    /// Minimal elements of the complement consistent with the ideal.
    pub addable: Vec<usize>,
}

impl AvailableMoves {
    /// All toggles, in index order.
    pub fn all(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.removable.iter().chain(&self.addable).copied().collect();
        all.sort_unstable();
        all
    }
}

impl Pip {
    /// Downward closed and free of inconsistent pairs. Does not require the
    /// PIP to be ready; on an unclosed PIP it checks the stored pairs only.
    pub fn is_consistent_ideal(&self, set: &Ideal) -> bool {
        set.members()
            .all(|p| self.below[p].is_subset(set.bits()) && self.conflicts[p].is_disjoint(set.bits()))
    }

    /// Name-based form of [`Pip::is_consistent_ideal`].
    pub fn is_consistent_ideal_named<S: AsRef<str>>(&self, members: &[S]) -> Result<bool, PipError> {
        Ok(self.is_consistent_ideal(&self.ideal(members)?))
    }

    /// Whether `p` can be added to the consistent ideal `ideal`.
    #[inline]
    pub fn can_add(&self, ideal: &Ideal, p: usize) -> bool {
        !ideal.contains(p)
            && self.below[p].is_subset(ideal.bits())
            && self.conflicts[p].is_disjoint(ideal.bits())
    }

    /// Whether `p` is a maximal element of `ideal`.
    #[inline]
    pub fn can_remove(&self, ideal: &Ideal, p: usize) -> bool {
        ideal.contains(p) && self.above[p].is_disjoint(ideal.bits())
    }

    /// The remote-control buttons available at a consistent ideal.
    pub fn available_moves(&self, ideal: &Ideal) -> Result<AvailableMoves, PipError> {
        self.ensure_ready()?;
        if !self.is_consistent_ideal(ideal) {
            return Err(PipError::NotConsistentIdeal);
        }
        let mut moves = AvailableMoves::default();
        for p in 0..self.len() {
            if self.can_remove(ideal, p) {
                moves.removable.push(p);
            } else if self.can_add(ideal, p) {
                moves.addable.push(p);
            }
        }
        Ok(moves)
    }

    /// Every consistent ideal, each exactly once.
    ///
    /// Depth-first over a linear extension (ties by name): each element in
    /// turn is first left out, then added when its lower set is present and
    /// it conflicts with nothing chosen so far. The empty ideal comes first.
    pub fn consistent_ideals(&self, guard: Guard) -> Result<Vec<Ideal>, PipError> {
        self.ensure_ready()?;
        let mut out = Vec::new();
        self.walk_ideals(guard, &mut |ideal| out.push(Ideal(ideal.clone())))?;
        Ok(out)
    }

    /// Number of consistent ideals, without materializing them.
    pub fn count_consistent_ideals(&self, guard: Guard) -> Result<u64, PipError> {
        self.ensure_ready()?;
        self.walk_ideals(guard, &mut |_| {})
    }

    fn walk_ideals(&self, guard: Guard, visit: &mut dyn FnMut(&FixedBitSet)) -> Result<u64, PipError> {
        struct Walk<'a> {
            pip: &'a Pip,
            order: Vec<usize>,
            current: FixedBitSet,
            count: u64,
            guard: Guard,
        }

        impl Walk<'_> {
            fn go(&mut self, depth: usize, visit: &mut dyn FnMut(&FixedBitSet)) -> Result<(), PipError> {
                if depth == self.order.len() {
                    self.count += 1;
                    if !self.guard.allows(self.count) {
                        return Err(PipError::GuardExceeded {
                            limit: self.guard.max_states,
                        });
                    }
                    visit(&self.current);
                    return Ok(());
                }
                let p = self.order[depth];
                self.go(depth + 1, visit)?;
                if self.pip.below[p].is_subset(&self.current)
                    && self.pip.conflicts[p].is_disjoint(&self.current)
                {
                    self.current.insert(p);
                    let result = self.go(depth + 1, visit);
                    self.current.set(p, false);
                    result?;
                }
                Ok(())
            }
        }

        let mut walk = Walk {
            pip: self,
            order: self.linear_extension(),
            current: FixedBitSet::with_capacity(self.len()),
            count: 0,
            guard,
        };
        walk.go(0, visit)?;
        Ok(walk.count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(pip: &Pip, els: &[usize]) -> Vec<String> {
        els.iter().map(|&e| pip.name(e).to_owned()).collect()
    }

    #[test]
    fn consistency_examples() {
        let chain = Pip::new(&["a", "b"], &[("a", "b")], &[]).unwrap();
        assert!(!chain.is_consistent_ideal_named(&["b"]).unwrap());
        assert!(chain.is_consistent_ideal_named::<&str>(&[]).unwrap());
        let conflict = Pip::new(&["a", "b"], &[], &[("a", "b")]).unwrap();
        assert!(!conflict.is_consistent_ideal_named(&["a", "b"]).unwrap());
        assert_eq!(
            conflict.is_consistent_ideal_named(&["q"]).unwrap_err(),
            PipError::UnknownElement("q".into())
        );
    }

    #[test]
    fn enumeration_examples() {
        let antichain = Pip::new(&["a", "b", "c"], &[], &[]).unwrap();
        assert_eq!(antichain.count_consistent_ideals(Guard::default()).unwrap(), 8);

        let chain = Pip::new(&["a", "b"], &[("a", "b")], &[]).unwrap();
        let ideals: Vec<_> = chain
            .consistent_ideals(Guard::default())
            .unwrap()
            .iter()
            .map(|i| chain.format_ideal(i))
            .collect();
        assert_eq!(ideals, vec!["{}", "{a}", "{a,b}"]);

        let conflict = Pip::new(&["a", "b"], &[], &[("a", "b")]).unwrap();
        let ideals: Vec<_> = conflict
            .consistent_ideals(Guard::default())
            .unwrap()
            .iter()
            .map(|i| conflict.format_ideal(i))
            .collect();
        assert_eq!(ideals, vec!["{}", "{b}", "{a}"]);
    }

    #[test]
    fn guard_stops_enumeration() {
        let antichain = Pip::new(&["a", "b", "c", "d"], &[], &[]).unwrap();
        assert_eq!(
            antichain.count_consistent_ideals(Guard::new(15)).unwrap_err(),
            PipError::GuardExceeded { limit: 15 }
        );
        assert_eq!(antichain.count_consistent_ideals(Guard::new(16)).unwrap(), 16);
    }

    #[test]
    fn unclosed_pip_refuses_enumeration() {
        let pip = Pip::new(&["a", "b", "c"], &[("a", "c")], &[("a", "b")]).unwrap();
        assert!(matches!(
            pip.consistent_ideals(Guard::default()),
            Err(PipError::NotReady(_))
        ));
    }

    #[test]
    fn available_moves_examples() {
        let chain = Pip::new(&["a", "b"], &[("a", "b")], &[]).unwrap();
        let m = chain.available_moves(&chain.ideal(&["a"]).unwrap()).unwrap();
        assert_eq!(names(&chain, &m.removable), vec!["a"]);
        assert_eq!(names(&chain, &m.addable), vec!["b"]);

        let conflict = Pip::new(&["a", "b"], &[], &[("a", "b")]).unwrap();
        let m = conflict
            .available_moves(&conflict.ideal(&["a"]).unwrap())
            .unwrap();
        assert_eq!(names(&conflict, &m.removable), vec!["a"]);
        assert!(m.addable.is_empty());

        let pip = Pip::new(&["a", "b", "c"], &[("a", "c")], &[]).unwrap();
        let m = pip.available_moves(&pip.empty_ideal()).unwrap();
        assert!(m.removable.is_empty());
        assert_eq!(names(&pip, &m.addable), vec!["a", "b"]);
    }

    #[test]
    fn available_moves_rejects_non_ideal() {
        let chain = Pip::new(&["a", "b"], &[("a", "b")], &[]).unwrap();
        assert_eq!(
            chain.available_moves(&chain.ideal(&["b"]).unwrap()).unwrap_err(),
            PipError::NotConsistentIdeal
        );
    }
}
