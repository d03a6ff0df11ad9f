//! Conflict-driven clause learning with two watched literals, first-UIP
//! learning with recursive minimization, VSIDS branching, Luby restarts and
//! activity-based learned-clause reduction. Every learned clause and every
//! deletion is logged as a DRAT step when proof logging is on.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::proof::DratProof;
use super::{SolveOutcome, SolveStatus, SolverConfig, Stats};
use crate::cnf::{CnfFormula, Model};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Lit(u32);

impl Lit {
    #[inline]
    fn new(var: usize, negative: bool) -> Lit {
        Lit((var as u32) << 1 | negative as u32)
    }

    fn from_dimacs(l: i32) -> Lit {
        Lit::new(l.unsigned_abs() as usize - 1, l < 0)
    }

    fn to_dimacs(self) -> i32 {
        let v = (self.var() + 1) as i32;
        if self.is_negative() {
            -v
        } else {
            v
        }
    }

    #[inline]
    fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    fn is_negative(self) -> bool {
        self.0 & 1 == 1
    }

    #[inline]
    fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;
    #[inline]
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Value {
    True,
    False,
    Undef,
}

type ClauseRef = u32;
const NO_REASON: ClauseRef = u32::MAX;

struct Clause {
    lits: Vec<Lit>,
    learnt: bool,
    deleted: bool,
    activity: f32,
    lbd: u32,
}

#[derive(Clone, Copy)]
struct Watch {
    cref: ClauseRef,
    blocker: Lit,
}

/// Max-heap of variables keyed by activity.
struct VarOrder {
    heap: Vec<u32>,
    position: Vec<i32>,
}

impl VarOrder {
    fn new(n: usize) -> Self {
        VarOrder {
            heap: Vec::with_capacity(n),
            position: vec![-1; n],
        }
    }

    fn contains(&self, v: usize) -> bool {
        self.position[v] >= 0
    }

    fn insert(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.position[v] = self.heap.len() as i32;
        self.heap.push(v as u32);
        self.sift_up(self.heap.len() - 1, act);
    }

    fn pop(&mut self, act: &[f64]) -> Option<usize> {
        let top = *self.heap.first()? as usize;
        let last = self.heap.pop().unwrap();
        self.position[top] = -1;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.position[last as usize] = 0;
            self.sift_down(0, act);
        }
        Some(top)
    }

    fn bumped(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            self.sift_up(self.position[v] as usize, act);
        }
    }

    fn sift_up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            let pv = self.heap[parent];
            if act[pv as usize] >= act[v as usize] {
                break;
            }
            self.heap[i] = pv;
            self.position[pv as usize] = i as i32;
            i = parent;
        }
        self.heap[i] = v;
        self.position[v as usize] = i as i32;
    }

    fn sift_down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        let n = self.heap.len();
        loop {
            let left = 2 * i + 1;
            if left >= n {
                break;
            }
            let right = left + 1;
            let child =
                if right < n && act[self.heap[right] as usize] > act[self.heap[left] as usize] {
                    right
                } else {
                    left
                };
            let cv = self.heap[child];
            if act[cv as usize] <= act[v as usize] {
                break;
            }
            self.heap[i] = cv;
            self.position[cv as usize] = i as i32;
            i = child;
        }
        self.heap[i] = v;
        self.position[v as usize] = i as i32;
    }
}

/// `luby(y, i)`: the `i`-th element of the Luby sequence scaled by powers
/// of `y`.
fn luby(y: f64, mut x: u64) -> f64 {
    let mut size = 1u64;
    let mut seq = 0i32;
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    y.powi(seq)
}

pub(super) struct Solver {
    num_vars: usize,
    clauses: Vec<Clause>,
    learnts: Vec<ClauseRef>,
    watches: Vec<Vec<Watch>>,
    assigns: Vec<Value>,
    level: Vec<u32>,
    reason: Vec<ClauseRef>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f32,
    order: VarOrder,
    phase: Vec<bool>,
    seen: Vec<u8>,
    analyze_stack: Vec<Lit>,
    analyze_clear: Vec<Lit>,
    level_stamp: Vec<u64>,
    stamp: u64,
    max_learnts: f64,
    proof: Option<DratProof>,
    rng: Option<ChaCha8Rng>,
    config: SolverConfig,
    stats: Stats,
    trivially_unsat: bool,
}

impl Solver {
    pub(super) fn new(f: &CnfFormula, config: &SolverConfig) -> Solver {
        let n = f.num_vars;
        let mut s = Solver {
            num_vars: n,
            clauses: Vec::with_capacity(f.clauses.len()),
            learnts: Vec::new(),
            watches: vec![Vec::new(); 2 * n],
            assigns: vec![Value::Undef; n],
            level: vec![0; n],
            reason: vec![NO_REASON; n],
            trail: Vec::with_capacity(n),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: vec![0.0; n],
            var_inc: 1.0,
            cla_inc: 1.0,
            order: VarOrder::new(n),
            phase: vec![false; n],
            seen: vec![0; n],
            analyze_stack: Vec::new(),
            analyze_clear: Vec::new(),
            level_stamp: vec![0; n + 1],
            stamp: 0,
            max_learnts: 0.0,
            proof: config.proof.then(DratProof::new),
            rng: config.seed.map(ChaCha8Rng::seed_from_u64),
            config: config.clone(),
            stats: Stats::default(),
            trivially_unsat: false,
        };
        if let Some(rng) = s.rng.as_mut() {
            for a in s.activity.iter_mut() {
                *a = rng.gen::<f64>() * 1e-5;
            }
        }
        for v in 0..n {
            s.order.insert(v, &s.activity);
        }
        for clause in &f.clauses {
            s.add_input_clause(clause);
            if s.trivially_unsat {
                break;
            }
        }
        s.max_learnts = (s.clauses.len() as f64 / 3.0).max(s.config.min_learnts as f64);
        s
    }

    fn add_input_clause(&mut self, dimacs: &[i32]) {
        let mut lits: Vec<Lit> = dimacs.iter().map(|&l| Lit::from_dimacs(l)).collect();
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|p| p[0] == !p[1]) {
            return;
        }
        match lits.len() {
            0 => self.trivially_unsat = true,
            1 => match self.lit_value(lits[0]) {
                Value::False => self.trivially_unsat = true,
                Value::True => {}
                Value::Undef => self.enqueue(lits[0], NO_REASON),
            },
            _ => {
                self.attach(lits, false, 0);
            }
        }
    }

    fn attach(&mut self, lits: Vec<Lit>, learnt: bool, lbd: u32) -> ClauseRef {
        let cref = self.clauses.len() as ClauseRef;
        self.watches[(!lits[0]).index()].push(Watch {
            cref,
            blocker: lits[1],
        });
        self.watches[(!lits[1]).index()].push(Watch {
            cref,
            blocker: lits[0],
        });
        self.clauses.push(Clause {
            lits,
            learnt,
            deleted: false,
            activity: 0.0,
            lbd,
        });
        if learnt {
            self.learnts.push(cref);
        }
        cref
    }

    #[inline]
    fn lit_value(&self, l: Lit) -> Value {
        match self.assigns[l.var()] {
            Value::Undef => Value::Undef,
            Value::True if l.is_negative() => Value::False,
            Value::False if l.is_negative() => Value::True,
            v => v,
        }
    }

    #[inline]
    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    #[inline]
    fn enqueue(&mut self, l: Lit, reason: ClauseRef) {
        let v = l.var();
        debug_assert_eq!(self.assigns[v], Value::Undef);
        self.assigns[v] = if l.is_negative() {
            Value::False
        } else {
            Value::True
        };
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn propagate(&mut self) -> Option<ClauseRef> {
        let mut conflict = None;
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[p.index()]);
            let mut i = 0;
            let mut j = 0;
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.lit_value(w.blocker) == Value::True {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let cref = w.cref as usize;
                if self.clauses[cref].deleted {
                    continue;
                }
                let first = {
                    let lits = &mut self.clauses[cref].lits;
                    if lits[0] == false_lit {
                        lits.swap(0, 1);
                    }
                    lits[0]
                };
                let kept = Watch {
                    cref: w.cref,
                    blocker: first,
                };
                if first != w.blocker && self.lit_value(first) == Value::True {
                    ws[j] = kept;
                    j += 1;
                    continue;
                }
                let len = self.clauses[cref].lits.len();
                let mut moved = false;
                for k in 2..len {
                    let lk = self.clauses[cref].lits[k];
                    if self.lit_value(lk) != Value::False {
                        let lits = &mut self.clauses[cref].lits;
                        lits.swap(1, k);
                        self.watches[(!lk).index()].push(kept);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = kept;
                j += 1;
                if self.lit_value(first) == Value::False {
                    conflict = Some(w.cref);
                    self.qhead = self.trail.len();
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.enqueue(first, w.cref);
                }
            }
            ws.truncate(j);
            self.watches[p.index()] = ws;
            if conflict.is_some() {
                break;
            }
        }
        conflict
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in self.activity.iter_mut() {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.order.bumped(v, &self.activity);
    }

    fn bump_clause(&mut self, cref: ClauseRef) {
        let c = &mut self.clauses[cref as usize];
        if !c.learnt {
            return;
        }
        c.activity += self.cla_inc;
        if c.activity > 1e20 {
            for &lc in &self.learnts {
                self.clauses[lc as usize].activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    /// First-UIP analysis. Returns the learned clause (asserting literal
    /// first, a literal of the backjump level second) and the backjump level.
    fn analyze(&mut self, mut confl: ClauseRef) -> (Vec<Lit>, u32) {
        let mut learnt: Vec<Lit> = vec![Lit(0)];
        let mut path = 0usize;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        let current = self.decision_level();

        loop {
            self.bump_clause(confl);
            let len = self.clauses[confl as usize].lits.len();
            let start = usize::from(p.is_some());
            for k in start..len {
                let q = self.clauses[confl as usize].lits[k];
                let v = q.var();
                if self.seen[v] == 0 && self.level[v] > 0 {
                    self.seen[v] = 1;
                    self.bump_var(v);
                    if self.level[v] >= current {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var()] != 0 {
                    break;
                }
            }
            let lit = self.trail[index];
            p = Some(lit);
            confl = self.reason[lit.var()];
            self.seen[lit.var()] = 0;
            path -= 1;
            if path == 0 {
                break;
            }
        }
        learnt[0] = !p.unwrap();

        // Recursive minimization.
        self.analyze_clear.clear();
        self.analyze_clear.extend_from_slice(&learnt);
        self.stamp += 1;
        for &l in &learnt[1..] {
            self.level_stamp[self.level[l.var()] as usize] = self.stamp;
        }
        let mut kept = 1;
        for k in 1..learnt.len() {
            let l = learnt[k];
            if self.reason[l.var()] == NO_REASON || !self.redundant(l) {
                learnt[kept] = l;
                kept += 1;
            }
        }
        learnt.truncate(kept);
        for l in std::mem::take(&mut self.analyze_clear) {
            self.seen[l.var()] = 0;
        }

        let backjump = if learnt.len() == 1 {
            0
        } else {
            let mut best = 1;
            for k in 2..learnt.len() {
                if self.level[learnt[k].var()] > self.level[learnt[best].var()] {
                    best = k;
                }
            }
            learnt.swap(1, best);
            self.level[learnt[1].var()]
        };
        (learnt, backjump)
    }

    /// Whether `l` is implied by other literals already in the learned clause.
    fn redundant(&mut self, l: Lit) -> bool {
        self.analyze_stack.clear();
        self.analyze_stack.push(l);
        let top = self.analyze_clear.len();
        while let Some(q) = self.analyze_stack.pop() {
            let cref = self.reason[q.var()];
            let len = self.clauses[cref as usize].lits.len();
            for k in 1..len {
                let r = self.clauses[cref as usize].lits[k];
                let v = r.var();
                if self.seen[v] == 0 && self.level[v] > 0 {
                    let lvl = self.level[v] as usize;
                    if self.reason[v] != NO_REASON && self.level_stamp[lvl] == self.stamp {
                        self.seen[v] = 1;
                        self.analyze_stack.push(r);
                        self.analyze_clear.push(r);
                    } else {
                        for x in self.analyze_clear.drain(top..) {
                            self.seen[x.var()] = 0;
                        }
                        return false;
                    }
                }
            }
        }
        true
    }

    fn lbd(&mut self, lits: &[Lit]) -> u32 {
        self.stamp += 1;
        let mut count = 0;
        for l in lits {
            let lvl = self.level[l.var()] as usize;
            if self.level_stamp[lvl] != self.stamp {
                self.level_stamp[lvl] = self.stamp;
                count += 1;
            }
        }
        count
    }

    fn backtrack(&mut self, target: u32) {
        if self.decision_level() <= target {
            return;
        }
        let lim = self.trail_lim[target as usize];
        for k in (lim..self.trail.len()).rev() {
            let l = self.trail[k];
            let v = l.var();
            self.assigns[v] = Value::Undef;
            self.reason[v] = NO_REASON;
            self.phase[v] = !l.is_negative();
            self.order.insert(v, &self.activity);
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(target as usize);
        self.qhead = lim;
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        if let Some(rng) = self.rng.as_mut() {
            if !self.order.heap.is_empty() && rng.gen::<f64>() < self.config.random_var_freq {
                let v = self.order.heap[rng.gen_range(0..self.order.heap.len())] as usize;
                if self.assigns[v] == Value::Undef {
                    return Some(Lit::new(v, !self.phase[v]));
                }
            }
        }
        while let Some(v) = self.order.pop(&self.activity) {
            if self.assigns[v] == Value::Undef {
                return Some(Lit::new(v, !self.phase[v]));
            }
        }
        None
    }

    fn locked(&self, cref: ClauseRef) -> bool {
        let c = &self.clauses[cref as usize];
        let l = c.lits[0];
        self.lit_value(l) == Value::True && self.reason[l.var()] == cref
    }

    /// Deletes about half of the learned clauses with the lowest activity,
    /// keeping glue clauses (LBD <= 2), binaries and current reasons.
    fn reduce_db(&mut self) {
        let mut candidates: Vec<ClauseRef> = self.learnts.clone();
        candidates.sort_by(|&a, &b| {
            let ca = &self.clauses[a as usize];
            let cb = &self.clauses[b as usize];
            ca.activity
                .partial_cmp(&cb.activity)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        let target = candidates.len() / 2;
        let mut removed = 0;
        for &cref in &candidates {
            if removed >= target {
                break;
            }
            let c = &self.clauses[cref as usize];
            if c.lits.len() <= 2 || c.lbd <= 2 || self.locked(cref) {
                continue;
            }
            let lits = std::mem::take(&mut self.clauses[cref as usize].lits);
            if let Some(proof) = self.proof.as_mut() {
                proof.delete(lits.iter().map(|l| l.to_dimacs()).collect::<Vec<_>>());
            }
            self.clauses[cref as usize].deleted = true;
            self.stats.deleted_clauses += 1;
            removed += 1;
        }
        let clauses = &self.clauses;
        self.learnts.retain(|&c| !clauses[c as usize].deleted);
        // Drop stale watches eagerly so lazy removal never sees an empty clause.
        for ws in self.watches.iter_mut() {
            ws.retain(|w| !clauses[w.cref as usize].deleted);
        }
    }

    fn log_add(&mut self, lits: &[Lit]) {
        if let Some(proof) = self.proof.as_mut() {
            proof.add(lits.iter().map(|l| l.to_dimacs()).collect::<Vec<_>>());
        }
    }

    fn finish(
        &mut self,
        status: SolveStatus,
        model: Option<Model>,
        started: Instant,
    ) -> SolveOutcome {
        self.stats.wall_time = started.elapsed();
        let proof = if status == SolveStatus::Unsat {
            self.proof.take()
        } else {
            None
        };
        SolveOutcome {
            status,
            model,
            proof,
            stats: self.stats.clone(),
            reason: None,
            solver_output: None,
        }
    }

    fn unknown(&mut self, reason: String, started: Instant) -> SolveOutcome {
        let mut out = self.finish(SolveStatus::Unknown, None, started);
        out.reason = Some(reason);
        out
    }

    pub(super) fn solve(mut self, original: &CnfFormula) -> SolveOutcome {
        let started = Instant::now();
        if self.trivially_unsat || self.propagate().is_some() {
            self.log_add(&[]);
            return self.finish(SolveStatus::Unsat, None, started);
        }

        let mut restart_index = 0u64;
        let mut conflicts_until_restart = luby(2.0, 0) * self.config.restart_unit as f64;
        let mut conflicts_since_restart = 0u64;

        loop {
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                conflicts_since_restart += 1;
                if self.decision_level() == 0 {
                    self.log_add(&[]);
                    return self.finish(SolveStatus::Unsat, None, started);
                }
                let (learnt, backjump) = self.analyze(confl);
                self.backtrack(backjump);
                self.log_add(&learnt);
                self.stats.learned_clauses += 1;
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], NO_REASON);
                } else {
                    let lbd = self.lbd(&learnt);
                    let first = learnt[0];
                    let cref = self.attach(learnt, true, lbd);
                    self.bump_clause(cref);
                    self.enqueue(first, cref);
                }
                self.var_inc /= self.config.var_decay;
                self.cla_inc /= self.config.clause_decay;

                if self.stats.conflicts % 256 == 0 {
                    if let Some(limit) = self.config.timeout {
                        if started.elapsed() >= limit {
                            return self.unknown(format!("timeout after {limit:?}"), started);
                        }
                    }
                }
                if let Some(max) = self.config.max_conflicts {
                    if self.stats.conflicts >= max {
                        return self.unknown(format!("conflict limit {max} reached"), started);
                    }
                }
            } else {
                if conflicts_since_restart as f64 >= conflicts_until_restart {
                    self.backtrack(0);
                    self.stats.restarts += 1;
                    restart_index += 1;
                    conflicts_since_restart = 0;
                    conflicts_until_restart =
                        luby(2.0, restart_index) * self.config.restart_unit as f64;
                }
                if self.learnts.len() as f64 - self.trail.len() as f64 >= self.max_learnts {
                    self.reduce_db();
                    self.max_learnts *= 1.1;
                }
                match self.pick_branch() {
                    None => {
                        let model = Model::from_literals((0..self.num_vars).map(|v| {
                            let d = v as i64 + 1;
                            if self.assigns[v] == Value::True {
                                d
                            } else {
                                -d
                            }
                        }));
                        if !model.satisfies(original) {
                            return self
                                .unknown("internal error: model fails self-check".into(), started);
                        }
                        return self.finish(SolveStatus::Sat, Some(model), started);
                    }
                    Some(lit) => {
                        self.stats.decisions += 1;
                        self.trail_lim.push(self.trail.len());
                        self.enqueue(lit, NO_REASON);
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn luby_sequence() {
        let seq: Vec<f64> = (0..15).map(|i| luby(2.0, i)).collect();
        assert_eq!(
            seq,
            vec![1., 1., 2., 1., 1., 2., 4., 1., 1., 2., 1., 1., 2., 4., 8.]
        );
    }

    #[test]
    fn literal_round_trip() {
        for l in [1, -1, 7, -42] {
            assert_eq!(Lit::from_dimacs(l).to_dimacs(), l);
        }
        assert_eq!(!Lit::from_dimacs(3), Lit::from_dimacs(-3));
    }

    #[test]
    fn heap_orders_by_activity() {
        let act = vec![0.5, 3.0, 1.0, 2.0];
        let mut h = VarOrder::new(4);
        for v in 0..4 {
            h.insert(v, &act);
        }
        let order: Vec<usize> = std::iter::from_fn(|| h.pop(&act)).collect();
        assert_eq!(order, vec![1, 3, 2, 0]);
    }
}
