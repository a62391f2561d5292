//! Budgeted exact Hamilton search and the classical sufficient conditions.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, HamiltonCertificate};

/// Result of a budgeted exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    /// The search completed without a witness.
    Absent,
    /// The expansion budget ran out first; nothing is claimed.
    BudgetExhausted,
}

impl<T> Outcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Found(t) => Outcome::Found(f(t)),
            Outcome::Absent => Outcome::Absent,
            Outcome::BudgetExhausted => Outcome::BudgetExhausted,
        }
    }
}

/// Default node-expansion budget.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

/// A Hamilton cycle of `g`, proven absence, or budget exhaustion.
pub fn hamilton_cycle(g: &Graph, budget: u64) -> Outcome<HamiltonCertificate> {
    hamilton_cycle_where(g, budget, |_| true)
}

/// Like [`hamilton_cycle`], but keeps searching until `accept` approves a cycle.
pub fn hamilton_cycle_where(
    g: &Graph,
    budget: u64,
    accept: impl FnMut(&[usize]) -> bool,
) -> Outcome<HamiltonCertificate> {
    let n = g.order();
    if n < 3 {
        return Outcome::Absent;
    }
    let start = (0..n).min_by_key(|&v| (g.degree(v), v)).unwrap();
    Walker::new(g, start, start, true)
        .run(budget, accept)
        .map(|cycle| HamiltonCertificate { cycle })
}

/// A Hamilton path from `u` to `v`.
pub fn hamilton_path(g: &Graph, u: usize, v: usize, budget: u64) -> Result<Outcome<Vec<usize>>> {
    hamilton_path_where(g, u, v, budget, |_| true)
}

/// Like [`hamilton_path`], but keeps searching until `accept` approves a path.
pub fn hamilton_path_where(
    g: &Graph,
    u: usize,
    v: usize,
    budget: u64,
    accept: impl FnMut(&[usize]) -> bool,
) -> Result<Outcome<Vec<usize>>> {
    let n = g.order();
    if u >= n {
        return Err(Error::VertexOutOfRange(u));
    }
    if v >= n {
        return Err(Error::VertexOutOfRange(v));
    }
    if u == v {
        return Err(invalid("path endpoints must differ"));
    }
    Ok(Walker::new(g, u, v, false).run(budget, accept))
}

struct Walker<'a> {
    g: &'a Graph,
    term: usize,
    cycle: bool,
    visited: Vec<bool>,
    unv_deg: Vec<usize>,
    path: Vec<usize>,
    remaining: usize,
    mark: Vec<u32>,
    stamp: u32,
    queue: VecDeque<usize>,
}

impl<'a> Walker<'a> {
    fn new(g: &'a Graph, start: usize, term: usize, cycle: bool) -> Self {
        let n = g.order();
        let mut w = Walker {
            g,
            term,
            cycle,
            visited: vec![false; n],
            unv_deg: (0..n).map(|v| g.degree(v)).collect(),
            path: Vec::with_capacity(n + 1),
            remaining: n,
            mark: vec![0; n],
            stamp: 0,
            queue: VecDeque::new(),
        };
        w.visit(start);
        if !cycle {
            w.occupy(term);
        }
        w
    }

    fn occupy(&mut self, v: usize) {
        self.visited[v] = true;
        self.remaining -= 1;
        for &x in self.g.neighbors(v) {
            self.unv_deg[x] -= 1;
        }
    }

    fn release(&mut self, v: usize) {
        self.visited[v] = false;
        self.remaining += 1;
        for &x in self.g.neighbors(v) {
            self.unv_deg[x] += 1;
        }
    }

    fn visit(&mut self, v: usize) {
        self.occupy(v);
        self.path.push(v);
    }

    fn unvisit(&mut self) {
        let v = self.path.pop().unwrap();
        self.release(v);
    }

    fn cur(&self) -> usize {
        *self.path.last().unwrap()
    }

    fn usable(&self, w: usize) -> usize {
        let cur = self.cur();
        let mut u = self.unv_deg[w];
        if self.g.has_edge(w, cur) {
            u += 1;
        }
        if self.term != cur && self.g.has_edge(w, self.term) {
            u += 1;
        }
        u
    }

    /// Necessary conditions for the current partial path to extend.
    fn feasible(&mut self, prev: usize) -> bool {
        if self.remaining == 0 {
            return true;
        }
        let cur = self.cur();
        if self.unv_deg[self.term] == 0 || self.unv_deg[cur] == 0 {
            return false;
        }
        for &c in [prev, cur].iter() {
            for &x in self.g.neighbors(c) {
                if !self.visited[x] && self.usable(x) < 2 {
                    return false;
                }
            }
        }
        self.unvisited_connected_from(cur)
    }

    fn unvisited_connected_from(&mut self, cur: usize) -> bool {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.stamp = 1;
        }
        let stamp = self.stamp;
        let mut reached = 0;
        self.queue.clear();
        for &x in self.g.neighbors(cur) {
            if !self.visited[x] && self.mark[x] != stamp {
                self.mark[x] = stamp;
                self.queue.push_back(x);
            }
        }
        while let Some(u) = self.queue.pop_front() {
            reached += 1;
            for &x in self.g.neighbors(u) {
                if !self.visited[x] && self.mark[x] != stamp {
                    self.mark[x] = stamp;
                    self.queue.push_back(x);
                }
            }
        }
        reached == self.remaining
    }

    /// Next-vertex candidates: a single forced vertex, or all options by increasing usable degree.
    fn candidates(&self) -> Vec<usize> {
        let cur = self.cur();
        let mut c: Vec<(usize, usize)> = self
            .g
            .neighbors(cur)
            .iter()
            .filter(|&&x| !self.visited[x])
            .map(|&x| (self.usable(x), x))
            .collect();
        let root = self.cycle && self.path.len() == 1;
        if !root && self.remaining > 1 {
            let forced: Vec<usize> = c
                .iter()
                .filter(|&&(u, _)| u == 2)
                .map(|&(_, x)| x)
                .collect();
            match forced.len() {
                0 => {}
                1 => return forced,
                _ => return Vec::new(),
            }
        }
        c.sort_unstable();
        c.into_iter().map(|(_, x)| x).collect()
    }

    fn closes(&self) -> bool {
        self.remaining == 0
            && self.g.has_edge(self.cur(), self.term)
            && (!self.cycle || self.path.len() >= 3)
    }

    fn witness(&self) -> Vec<usize> {
        let mut w = self.path.clone();
        if !self.cycle {
            w.push(self.term);
        }
        w
    }

    fn run(mut self, budget: u64, mut accept: impl FnMut(&[usize]) -> bool) -> Outcome<Vec<usize>> {
        if !self.g.is_connected() {
            return Outcome::Absent;
        }
        if self.remaining == 0 {
            return if self.closes() && accept(&self.witness()) {
                Outcome::Found(self.witness())
            } else {
                Outcome::Absent
            };
        }
        if self.unv_deg[self.term] == 0 || self.unv_deg[self.cur()] == 0 {
            return Outcome::Absent;
        }
        let mut expansions = 0u64;
        let mut stack: Vec<(Vec<usize>, usize)> = vec![(self.candidates(), 0)];
        while let Some(top) = stack.last_mut() {
            if top.1 == top.0.len() {
                stack.pop();
                if !stack.is_empty() {
                    self.unvisit();
                }
                continue;
            }
            let w = top.0[top.1];
            top.1 += 1;
            expansions += 1;
            if expansions > budget {
                return Outcome::BudgetExhausted;
            }
            let prev = self.cur();
            self.visit(w);
            if self.remaining == 0 {
                if self.closes() {
                    let wit = self.witness();
                    if accept(&wit) {
                        return Outcome::Found(wit);
                    }
                }
                self.unvisit();
            } else if self.feasible(prev) {
                let c = self.candidates();
                stack.push((c, 0));
            } else {
                self.unvisit();
            }
        }
        Outcome::Absent
    }
}

/// The degree-sequence condition: for every `1 <= i < n/2`, `|S_i| <= i-1` or `|S_{n-i-1}| <= n-i-1`,
/// where `S_i` is the set of vertices of degree at most `i`.
pub fn chvatal_certifies(g: &Graph) -> bool {
    let n = g.order();
    if n < 3 {
        return false;
    }
    let s = |i: usize| (0..n).filter(|&v| g.degree(v) <= i).count();
    (1..n)
        .take_while(|&i| 2 * i < n)
        .all(|i| s(i) < i || s(n - i - 1) < n - i)
}

/// Regular, 2-connected, and valency at least `n/3`.
pub fn jackson_certifies(g: &Graph) -> bool {
    match g.regular_valency() {
        Some(k) => 3 * k >= g.order() && g.is_two_connected(),
        None => false,
    }
}
