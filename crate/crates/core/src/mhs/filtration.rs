//! Finite filtrations by subspaces, stored only at their jumps.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{GaussRat, Matrix, Rat, Scalar, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `W_n ⊆ W_{n+1}`; below the first step the filtration is zero.
    Increasing,
    /// `F^{p+1} ⊆ F^p`; above the last step the filtration is zero.
    Decreasing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration<K> {
    ambient: usize,
    dir: Direction,
    steps: BTreeMap<i32, Subspace<K>>,
}

impl<K: Scalar> Filtration<K> {
    /// Checks monotonicity and exhaustiveness, then drops redundant steps.
    pub fn new(ambient: usize, dir: Direction, steps: BTreeMap<i32, Subspace<K>>) -> Result<Self> {
        let f = Filtration::unchecked(ambient, dir, steps);
        let issues = f.issues();
        if !issues.is_empty() {
            return Err(Error::Filtration(issues.join("; ")));
        }
        Ok(f.canonical())
    }

    /// Stores the steps as given. Use [`Self::issues`] before relying on it.
    pub fn unchecked(ambient: usize, dir: Direction, steps: BTreeMap<i32, Subspace<K>>) -> Self {
        Filtration {
            ambient,
            dir,
            steps,
        }
    }

    /// The filtration with a single jump to the full space at `at`.
    pub fn trivial(ambient: usize, dir: Direction, at: i32) -> Self {
        let mut steps = BTreeMap::new();
        if ambient > 0 {
            steps.insert(at, Subspace::full(ambient));
        }
        Filtration {
            ambient,
            dir,
            steps,
        }
    }

    /// Builds a filtration from its values on `lo..=hi`, outside of which it
    /// is assumed constant (zero or full).
    pub fn from_fn(
        ambient: usize,
        dir: Direction,
        lo: i32,
        hi: i32,
        f: impl Fn(i32) -> Subspace<K>,
    ) -> Self {
        let steps = (lo..=hi).map(|k| (k, f(k))).collect();
        Filtration::unchecked(ambient, dir, steps).canonical()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn direction(&self) -> Direction {
        self.dir
    }

    pub fn steps(&self) -> &BTreeMap<i32, Subspace<K>> {
        &self.steps
    }

    /// Indices where the filtration changes (for canonical filtrations).
    pub fn jumps(&self) -> Vec<i32> {
        self.steps.keys().copied().collect()
    }

    pub fn min_index(&self) -> Option<i32> {
        self.steps.keys().next().copied()
    }

    pub fn max_index(&self) -> Option<i32> {
        self.steps.keys().next_back().copied()
    }

    /// Range `lo..=hi` outside of which the filtration is constant, widened
    /// by one on each side.
    pub fn span_range(&self) -> (i32, i32) {
        match (self.min_index(), self.max_index()) {
            (Some(a), Some(b)) => (a - 1, b + 1),
            _ => (0, 0),
        }
    }

    pub fn get(&self, k: i32) -> Subspace<K> {
        let hit = match self.dir {
            Direction::Increasing => self.steps.range(..=k).next_back(),
            Direction::Decreasing => self.steps.range(k..).next(),
        };
        hit.map(|(_, s)| s.clone())
            .unwrap_or_else(|| Subspace::zero(self.ambient))
    }

    pub fn issues(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (k, s) in &self.steps {
            if s.ambient() != self.ambient {
                out.push(format!(
                    "step {k} lives in dimension {} instead of {}",
                    s.ambient(),
                    self.ambient
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        let entries: Vec<_> = self.steps.iter().collect();
        for pair in entries.windows(2) {
            let ((k0, s0), (k1, s1)) = (pair[0], pair[1]);
            match self.dir {
                Direction::Increasing if !s1.contains_subspace(s0) => {
                    out.push(format!("step {k0} is not contained in step {k1}"))
                }
                Direction::Decreasing if !s0.contains_subspace(s1) => {
                    out.push(format!("step {k1} is not contained in step {k0}"))
                }
                _ => {}
            }
        }
        if self.ambient > 0 {
            let extreme = match self.dir {
                Direction::Increasing => self.steps.values().next_back(),
                Direction::Decreasing => self.steps.values().next(),
            };
            if !extreme.is_some_and(Subspace::is_full) {
                out.push("filtration is not exhaustive".to_string());
            }
        }
        out
    }

    /// Drops steps that repeat their predecessor (or are zero at the open end).
    pub fn canonical(self) -> Self {
        let mut steps = BTreeMap::new();
        let mut prev = Subspace::zero(self.ambient);
        let ordered: Vec<(i32, Subspace<K>)> = match self.dir {
            Direction::Increasing => self.steps.into_iter().collect(),
            Direction::Decreasing => self.steps.into_iter().rev().collect(),
        };
        for (k, s) in ordered {
            if s != prev {
                prev = s.clone();
                steps.insert(k, s);
            }
        }
        Filtration {
            ambient: self.ambient,
            dir: self.dir,
            steps,
        }
    }

    /// Image of every step under `f`.
    pub fn image(&self, f: &Matrix<K>) -> Result<Self> {
        let mut steps = BTreeMap::new();
        for (k, s) in &self.steps {
            steps.insert(*k, s.image(f)?);
        }
        Ok(Filtration::unchecked(f.rows(), self.dir, steps).canonical())
    }

    /// Induced filtration on `sub`, in the pivot coordinates of `sub`.
    pub fn restrict(&self, sub: &Subspace<K>) -> Result<Self> {
        let mut steps = BTreeMap::new();
        for (k, s) in &self.steps {
            steps.insert(*k, sub.restrict(&s.intersect(sub)?)?);
        }
        Ok(Filtration::unchecked(sub.dim(), self.dir, steps).canonical())
    }

    pub fn dual(&self) -> Self {
        let (lo, hi) = self.span_range();
        match self.dir {
            // W^∨_n = ann(W_{-n-1})
            Direction::Increasing => {
                Filtration::from_fn(self.ambient, self.dir, -hi - 1, -lo - 1, |n| {
                    self.get(-n - 1).annihilator()
                })
            }
            // F^p(∨) = ann(F^{1-p})
            Direction::Decreasing => Filtration::from_fn(self.ambient, self.dir, 1 - hi, 1 - lo, |p| {
                self.get(1 - p).annihilator()
            }),
        }
    }

    /// `Σ_i A_i ⊗ B_{n-i}` on `K^a ⊗ K^b`.
    pub fn tensor(&self, other: &Self) -> Self {
        let ambient = self.ambient * other.ambient;
        if ambient == 0 {
            return Filtration::unchecked(ambient, self.dir, BTreeMap::new());
        }
        let (a0, a1) = self.span_range();
        let (b0, b1) = other.span_range();
        let keys = self.jumps();
        Filtration::from_fn(ambient, self.dir, a0 + b0, a1 + b1, |n| {
            let parts: Vec<Subspace<K>> = keys
                .iter()
                .map(|&i| self.get(i).tensor(&other.get(n - i)))
                .collect();
            Subspace::sum_all(ambient, &parts).expect("tensor steps share an ambient space")
        })
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a0, a1) = self.span_range();
        let (b0, b1) = other.span_range();
        Filtration::from_fn(
            self.ambient + other.ambient,
            self.dir,
            a0.min(b0),
            a1.max(b1),
            |n| self.get(n).direct_sum(&other.get(n)),
        )
    }
}

impl Filtration<Rat> {
    pub fn to_gauss(&self) -> Filtration<GaussRat> {
        Filtration {
            ambient: self.ambient,
            dir: self.dir,
            steps: self.steps.iter().map(|(k, s)| (*k, s.to_gauss())).collect(),
        }
    }
}

impl Filtration<GaussRat> {
    pub fn conj(&self) -> Self {
        Filtration {
            ambient: self.ambient,
            dir: self.dir,
            steps: self.steps.iter().map(|(k, s)| (*k, s.conj())).collect(),
        }
    }
}
