//! Tableau satisfiability for concepts with qualified number restrictions,
//! inverse roles, singleton nominals and the universal role.
//!
//! The input carries no TBox. Completion graphs are explored depth-first with
//! one cloned state per branch. `∀U.C` behaves like a TBox axiom `⊤ ⊑ C`, so
//! anywhere equality blocking is switched on once such a concept appears; a
//! model assembled from blocked nodes is re-checked by the oracle and an
//! unconfirmed model yields `Unknown`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::{Duration, Instant};

use crate::model::{negate, nnf, normalize_role, signature_of, ConceptExpr, Name, RoleExpr};
use crate::oracle::{eval_concept, Interpretation};

/// Limits on a single satisfiability check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_steps: u64,
    pub max_time: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_steps: 1_000_000,
            max_time: Duration::from_secs(5),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatResult {
    Satisfiable(Interpretation),
    Unsatisfiable,
    Unknown(String),
}

type Cid = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum TRole {
    Fwd(Name),
    Inv(Name),
    Universal,
    Empty,
}

impl TRole {
    fn from_expr(r: &RoleExpr) -> TRole {
        match normalize_role(r) {
            RoleExpr::Name(p) => TRole::Fwd(p),
            RoleExpr::Inverse(inner) => match *inner {
                RoleExpr::Name(p) => TRole::Inv(p),
                _ => unreachable!("normalized inverse wraps a name"),
            },
            RoleExpr::Universal => TRole::Universal,
            RoleExpr::Empty => TRole::Empty,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Top,
    Bottom,
    Atom(Name),
    NegAtom(Name),
    Nom(Name),
    NegNom(Name),
    And(Vec<Cid>),
    Or(Vec<Cid>),
    Exists(TRole, Cid),
    ForAll(TRole, Cid),
    AtLeast(u32, TRole, Cid),
    AtMost(u32, TRole, Cid),
}

/// Interned NNF sub-concepts.
#[derive(Default)]
struct Table {
    kinds: Vec<Kind>,
    index: HashMap<Kind, Cid>,
    /// NNF negation of every `≤`-filler, for the choose rule.
    neg: HashMap<Cid, Cid>,
    /// Complement of each literal.
    compl: HashMap<Cid, Cid>,
}

const TOP: Cid = 0;
const BOTTOM: Cid = 1;

impl Table {
    fn new() -> Self {
        let mut t = Table::default();
        t.put(Kind::Top);
        t.put(Kind::Bottom);
        t
    }

    fn put(&mut self, k: Kind) -> Cid {
        if let Some(&id) = self.index.get(&k) {
            return id;
        }
        let id = self.kinds.len() as Cid;
        self.kinds.push(k.clone());
        self.index.insert(k, id);
        id
    }

    fn intern(&mut self, c: &ConceptExpr) -> Cid {
        use ConceptExpr as C;
        let k = match c {
            C::Top => return TOP,
            C::Bottom => return BOTTOM,
            C::Name(a) => Kind::Atom(a.clone()),
            C::OneOf(a) => Kind::Nom(a.clone()),
            C::Not(inner) => match &**inner {
                C::Name(a) => Kind::NegAtom(a.clone()),
                C::OneOf(a) => Kind::NegNom(a.clone()),
                _ => return self.intern(&nnf(c)),
            },
            C::And(cs) => Kind::And(cs.iter().map(|d| self.intern(d)).collect()),
            C::Or(cs) => Kind::Or(cs.iter().map(|d| self.intern(d)).collect()),
            C::Exists(r, d) => Kind::Exists(TRole::from_expr(r), self.intern(d)),
            C::ForAll(r, d) => Kind::ForAll(TRole::from_expr(r), self.intern(d)),
            C::AtLeast(n, r, d) => Kind::AtLeast(*n, TRole::from_expr(r), self.intern(d)),
            C::AtMost(n, r, d) => {
                let f = self.intern(d);
                let nf = self.intern(&negate(d));
                self.neg.insert(f, nf);
                Kind::AtMost(*n, TRole::from_expr(r), f)
            }
        };
        self.put(k)
    }

    fn link_literals(&mut self) {
        for (id, k) in self.kinds.iter().enumerate() {
            let other = match k {
                Kind::Atom(a) => Kind::NegAtom(a.clone()),
                Kind::NegAtom(a) => Kind::Atom(a.clone()),
                Kind::Nom(a) => Kind::NegNom(a.clone()),
                Kind::NegNom(a) => Kind::Nom(a.clone()),
                _ => continue,
            };
            if let Some(&o) = self.index.get(&other) {
                self.compl.insert(id as Cid, o);
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Node {
    label: BTreeSet<Cid>,
    merged_into: Option<usize>,
    /// `≥n` concepts (n ≥ 2) whose successors were already generated here.
    ge_done: BTreeSet<Cid>,
}

#[derive(Clone, Debug)]
struct State {
    nodes: Vec<Node>,
    /// Edges `(from, P, to)`, and the same edges keyed by target.
    out: BTreeSet<(usize, Name, usize)>,
    inc: BTreeSet<(usize, Name, usize)>,
    /// Pairs `(x, y)` with `x < y` that must stay distinct.
    distinct: BTreeSet<(usize, usize)>,
    universal: BTreeSet<Cid>,
    global_done: BTreeSet<Cid>,
    clash: bool,
}

#[derive(Clone, Debug)]
enum Alt {
    Add(usize, Cid),
    Merge(usize, usize),
}

enum Expansion {
    Clash,
    Branch(Vec<Alt>),
    Complete,
}

fn ordered(x: usize, y: usize) -> (usize, usize) {
    (x.min(y), x.max(y))
}

impl State {
    fn new() -> Self {
        State {
            nodes: Vec::new(),
            out: BTreeSet::new(),
            inc: BTreeSet::new(),
            distinct: BTreeSet::new(),
            universal: BTreeSet::new(),
            global_done: BTreeSet::new(),
            clash: false,
        }
    }

    fn live(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| self.nodes[i].merged_into.is_none())
            .collect()
    }

    fn has(&self, x: usize, c: Cid) -> bool {
        c == TOP || self.nodes[x].label.contains(&c)
    }

    /// Returns the number of changes (0 or 1).
    fn add(&mut self, x: usize, c: Cid) -> u64 {
        if c == TOP {
            return 0;
        }
        if c == BOTTOM {
            self.clash = true;
        }
        self.nodes[x].label.insert(c) as u64
    }

    fn new_node(&mut self, c: Cid) -> usize {
        let id = self.nodes.len();
        let mut label: BTreeSet<Cid> = self.universal.clone();
        if c != TOP {
            label.insert(c);
        }
        if c == BOTTOM {
            self.clash = true;
        }
        self.nodes.push(Node {
            label,
            merged_into: None,
            ge_done: BTreeSet::new(),
        });
        id
    }

    fn add_edge(&mut self, x: usize, r: &TRole, y: usize) {
        match r {
            TRole::Fwd(p) => {
                self.out.insert((x, p.clone(), y));
                self.inc.insert((y, p.clone(), x));
            }
            TRole::Inv(p) => {
                self.out.insert((y, p.clone(), x));
                self.inc.insert((x, p.clone(), y));
            }
            TRole::Universal | TRole::Empty => unreachable!("no edges for constant roles"),
        }
    }

    fn neighbours(&self, x: usize, r: &TRole) -> BTreeSet<usize> {
        let scan = |set: &BTreeSet<(usize, Name, usize)>, p: &Name| {
            set.range((x, p.clone(), 0)..=(x, p.clone(), usize::MAX))
                .map(|e| e.2)
                .collect()
        };
        match r {
            TRole::Fwd(p) => scan(&self.out, p),
            TRole::Inv(p) => scan(&self.inc, p),
            TRole::Universal => self.live().into_iter().collect(),
            TRole::Empty => BTreeSet::new(),
        }
    }

    /// Merge `gone` into `keep`.
    fn merge(&mut self, keep: usize, gone: usize) {
        debug_assert_ne!(keep, gone);
        let label = std::mem::take(&mut self.nodes[gone].label);
        let done = std::mem::take(&mut self.nodes[gone].ge_done);
        self.nodes[keep].label.extend(label);
        self.nodes[keep].ge_done.extend(done);
        self.nodes[gone].merged_into = Some(keep);
        if self.nodes[keep].label.contains(&BOTTOM) {
            self.clash = true;
        }
        let sub = |v: usize| if v == gone { keep } else { v };
        let touched: Vec<_> = self
            .out
            .iter()
            .filter(|e| e.0 == gone || e.2 == gone)
            .cloned()
            .collect();
        for (a, p, b) in touched {
            self.out.remove(&(a, p.clone(), b));
            self.inc.remove(&(b, p.clone(), a));
            self.out.insert((sub(a), p.clone(), sub(b)));
            self.inc.insert((sub(b), p, sub(a)));
        }
        let pairs: Vec<_> = self
            .distinct
            .iter()
            .filter(|&&(a, b)| a == gone || b == gone)
            .cloned()
            .collect();
        for (a, b) in pairs {
            self.distinct.remove(&(a, b));
            let (a, b) = (sub(a), sub(b));
            if a == b {
                self.clash = true;
            } else {
                self.distinct.insert(ordered(a, b));
            }
        }
    }

    fn apply(&mut self, alt: &Alt) {
        match *alt {
            Alt::Add(x, c) => {
                self.add(x, c);
            }
            Alt::Merge(keep, gone) => self.merge(keep, gone),
        }
    }
}

struct Reasoner<'a> {
    table: Table,
    budget: &'a Budget,
    steps: u64,
    start: Instant,
}

impl Reasoner<'_> {
    fn tick(&mut self, n: u64) -> Result<(), String> {
        self.steps += n;
        if self.steps > self.budget.max_steps {
            return Err(format!("step budget of {} exhausted", self.budget.max_steps));
        }
        if self.start.elapsed() > self.budget.max_time {
            return Err(format!("time budget of {:?} exhausted", self.budget.max_time));
        }
        Ok(())
    }

    fn kind(&self, c: Cid) -> &Kind {
        &self.table.kinds[c as usize]
    }

    fn has_clash(&self, st: &State) -> bool {
        if st.clash {
            return true;
        }
        for x in st.live() {
            let label = &st.nodes[x].label;
            for &c in label {
                match self.kind(c) {
                    Kind::Bottom => return true,
                    Kind::Atom(_) | Kind::Nom(_) => {
                        if let Some(o) = self.table.compl.get(&c) {
                            if label.contains(o) {
                                return true;
                            }
                        }
                    }
                    Kind::Exists(TRole::Empty, _) => return true,
                    Kind::AtLeast(n, TRole::Empty, _) if *n >= 1 => return true,
                    _ => {}
                }
            }
        }
        false
    }

    /// Merge all nodes carrying the same nominal.
    fn o_rule(&mut self, st: &mut State) -> bool {
        let mut by_nominal: BTreeMap<Cid, Vec<usize>> = BTreeMap::new();
        for x in st.live() {
            for &c in &st.nodes[x].label {
                if matches!(self.kind(c), Kind::Nom(_)) {
                    by_nominal.entry(c).or_default().push(x);
                }
            }
        }
        for nodes in by_nominal.values() {
            if nodes.len() > 1 {
                let keep = nodes[0];
                for &gone in &nodes[1..] {
                    st.merge(keep, gone);
                }
                return true;
            }
        }
        false
    }

    fn deterministic(&mut self, st: &mut State) -> Result<bool, String> {
        let mut changes = 0u64;
        for x in st.live() {
            let label: Vec<Cid> = st.nodes[x].label.iter().copied().collect();
            for c in label {
                match self.kind(c).clone() {
                    Kind::And(cs) => {
                        for d in cs {
                            changes += st.add(x, d);
                        }
                    }
                    Kind::ForAll(TRole::Universal, d) => {
                        if d != TOP && st.universal.insert(d) {
                            changes += 1;
                        }
                    }
                    Kind::ForAll(TRole::Empty, _) => {}
                    Kind::ForAll(r, d) => {
                        for y in st.neighbours(x, &r) {
                            changes += st.add(y, d);
                        }
                    }
                    Kind::Exists(TRole::Universal, d) | Kind::AtLeast(1, TRole::Universal, d) => {
                        if !st.live().into_iter().any(|y| st.has(y, d)) {
                            st.new_node(d);
                            changes += 1;
                        }
                    }
                    Kind::AtLeast(n, TRole::Universal, d) if n >= 2 && st.global_done.insert(c) => {
                        let fresh: Vec<usize> = (0..n).map(|_| st.new_node(d)).collect();
                        for (i, &a) in fresh.iter().enumerate() {
                            for &b in &fresh[i + 1..] {
                                st.distinct.insert(ordered(a, b));
                            }
                        }
                        changes += 1;
                    }
                    _ => {}
                }
            }
        }
        let universal: Vec<Cid> = st.universal.iter().copied().collect();
        for x in st.live() {
            for &u in &universal {
                changes += st.add(x, u);
            }
        }
        self.tick(changes)?;
        Ok(changes > 0)
    }

    fn branching(&self, st: &State) -> Option<Vec<Alt>> {
        let live = st.live();
        for &x in &live {
            for &c in &st.nodes[x].label {
                if let Kind::Or(ds) = self.kind(c) {
                    if !ds.iter().any(|&d| st.has(x, d)) {
                        return Some(ds.iter().map(|&d| Alt::Add(x, d)).collect());
                    }
                }
            }
        }
        for &x in &live {
            for &c in &st.nodes[x].label {
                if let Kind::AtMost(_, r, d) = self.kind(c) {
                    let nd = self.table.neg[d];
                    for y in st.neighbours(x, r) {
                        if !st.has(y, *d) && !st.has(y, nd) {
                            return Some(vec![Alt::Add(y, *d), Alt::Add(y, nd)]);
                        }
                    }
                }
            }
        }
        for &x in &live {
            for &c in &st.nodes[x].label {
                if let Kind::AtMost(n, r, d) = self.kind(c) {
                    let s: Vec<usize> = st
                        .neighbours(x, r)
                        .into_iter()
                        .filter(|&y| st.has(y, *d))
                        .collect();
                    if s.len() > *n as usize {
                        let mut alts = Vec::new();
                        for i in 0..s.len() {
                            for j in i + 1..s.len() {
                                if !st.distinct.contains(&(s[i], s[j])) {
                                    alts.push(Alt::Merge(s[i], s[j]));
                                }
                            }
                        }
                        return Some(alts);
                    }
                }
            }
        }
        None
    }

    fn blocked(&self, st: &State) -> BTreeSet<usize> {
        let mut blocked = BTreeSet::new();
        if st.universal.is_empty() {
            return blocked;
        }
        let mut seen: BTreeSet<&BTreeSet<Cid>> = BTreeSet::new();
        for x in st.live() {
            let label = &st.nodes[x].label;
            if !seen.insert(label) {
                blocked.insert(x);
            }
        }
        blocked
    }

    fn generate(&mut self, st: &mut State) -> Result<bool, String> {
        let blocked = self.blocked(st);
        let mut changes = 0u64;
        for x in st.live() {
            if blocked.contains(&x) {
                continue;
            }
            let label: Vec<Cid> = st.nodes[x].label.iter().copied().collect();
            for c in label {
                match self.kind(c).clone() {
                    Kind::Exists(r @ (TRole::Fwd(_) | TRole::Inv(_)), d)
                    | Kind::AtLeast(1, r @ (TRole::Fwd(_) | TRole::Inv(_)), d) => {
                        if !st.neighbours(x, &r).into_iter().any(|y| st.has(y, d)) {
                            let y = st.new_node(d);
                            st.add_edge(x, &r, y);
                            changes += 1;
                        }
                    }
                    Kind::AtLeast(n, r @ (TRole::Fwd(_) | TRole::Inv(_)), d) if n >= 2 && st.nodes[x].ge_done.insert(c) => {
                        let fresh: Vec<usize> = (0..n).map(|_| st.new_node(d)).collect();
                        for (i, &a) in fresh.iter().enumerate() {
                            st.add_edge(x, &r, a);
                            for &b in &fresh[i + 1..] {
                                st.distinct.insert(ordered(a, b));
                            }
                        }
                        changes += 1;
                    }
                    _ => {}
                }
            }
        }
        self.tick(changes)?;
        Ok(changes > 0)
    }

    fn expand(&mut self, st: &mut State) -> Result<Expansion, String> {
        loop {
            self.tick(1)?;
            if self.has_clash(st) {
                return Ok(Expansion::Clash);
            }
            if self.o_rule(st) {
                continue;
            }
            if self.deterministic(st)? {
                continue;
            }
            if self.has_clash(st) {
                return Ok(Expansion::Clash);
            }
            if let Some(alts) = self.branching(st) {
                if alts.is_empty() {
                    return Ok(Expansion::Clash);
                }
                return Ok(Expansion::Branch(alts));
            }
            if self.generate(st)? {
                continue;
            }
            return Ok(Expansion::Complete);
        }
    }

    /// Read a model off a complete graph. Blocked nodes are first folded
    /// into their blockers; if that breaks a counting constraint they are
    /// kept apart and given copies of the blocker's edges instead. Either
    /// candidate must pass the oracle.
    fn model(&self, st: &State, c: &ConceptExpr) -> SatResult {
        let blocked = self.blocked(st);
        let folded = self.candidate(st, c, &blocked, true);
        if blocked.is_empty() || matches!(folded, SatResult::Satisfiable(_)) {
            return folded;
        }
        match self.candidate(st, c, &blocked, false) {
            SatResult::Satisfiable(i) => SatResult::Satisfiable(i),
            _ => folded,
        }
    }

    fn candidate(&self, st: &State, c: &ConceptExpr, blocked: &BTreeSet<usize>, fold: bool) -> SatResult {
        let live = st.live();
        // The first unblocked node with each label.
        let mut first: BTreeMap<&BTreeSet<Cid>, usize> = BTreeMap::new();
        for &x in &live {
            if !blocked.contains(&x) {
                first.entry(&st.nodes[x].label).or_insert(x);
            }
        }
        let blocker = |x: usize| first[&st.nodes[x].label];
        let mut element: BTreeMap<usize, usize> = BTreeMap::new();
        for &x in &live {
            if !fold || !blocked.contains(&x) {
                let next = element.len();
                element.insert(x, next);
            }
        }
        let at = |x: usize| {
            if fold && blocked.contains(&x) {
                element[&blocker(x)]
            } else {
                element[&x]
            }
        };

        let sig = signature_of(c);
        let mut i = Interpretation::empty_over(&sig, element.len());
        for (&x, &e) in &element {
            for &cid in &st.nodes[x].label {
                match self.kind(cid) {
                    Kind::Atom(a) => {
                        i.concept_ext.entry(a.clone()).or_default().insert(e);
                    }
                    Kind::Nom(a) => {
                        i.individual_ext.insert(a.clone(), e);
                    }
                    _ => {}
                }
            }
        }
        for (a, p, b) in &st.out {
            i.role_ext.entry(p.clone()).or_default().insert((at(*a), at(*b)));
        }
        if !fold {
            for &x in blocked {
                let y = blocker(x);
                let ex = element[&x];
                for (a, p, b) in &st.out {
                    let ext = i.role_ext.entry(p.clone()).or_default();
                    if *a == y {
                        ext.insert((ex, if *b == y { ex } else { at(*b) }));
                    }
                    if *b == y && *a != y {
                        ext.insert((at(*a), ex));
                    }
                }
            }
        }
        match eval_concept(c, &i) {
            Ok(ext) if ext.contains(&0) => SatResult::Satisfiable(i),
            Ok(_) => SatResult::Unknown("completion graph did not yield a model".into()),
            Err(e) => SatResult::Unknown(format!("model construction failed: {e}")),
        }
    }
}

/// Safety valve: global counting beyond a single witness is not supported.
fn unsupported(c: &ConceptExpr) -> Option<String> {
    let (mut at_most_u, mut at_least_u, mut any_at_most) = (false, false, false);
    c.visit(&mut |d| match d {
        ConceptExpr::AtMost(_, r, _) => {
            any_at_most = true;
            if normalize_role(r) == RoleExpr::Universal {
                at_most_u = true;
            }
        }
        ConceptExpr::AtLeast(n, r, _) if *n >= 2 && normalize_role(r) == RoleExpr::Universal => {
            at_least_u = true;
        }
        _ => {}
    });
    if at_most_u {
        Some("at-most restriction over the universal role".into())
    } else if at_least_u && any_at_most {
        Some("global at-least restriction combined with an at-most restriction".into())
    } else {
        None
    }
}

/// Decide satisfiability of `c`. The input is converted to NNF first.
///
/// A `Satisfiable` answer carries a finite model in which element 0 is an
/// instance of `c`.
pub fn is_satisfiable(c: &ConceptExpr, budget: &Budget) -> SatResult {
    let c = nnf(c);
    if let Some(reason) = unsupported(&c) {
        return SatResult::Unknown(reason);
    }
    let mut r = Reasoner {
        table: Table::new(),
        budget,
        steps: 0,
        start: Instant::now(),
    };
    let root = r.table.intern(&c);
    let individuals = signature_of(&c).individuals;
    let noms: Vec<Cid> = individuals
        .iter()
        .map(|a| r.table.intern(&ConceptExpr::OneOf(a.clone())))
        .collect();
    r.table.link_literals();

    let mut init = State::new();
    init.new_node(root);
    for n in noms {
        init.new_node(n);
    }
    let mut stack = vec![init];
    while let Some(mut st) = stack.pop() {
        match r.expand(&mut st) {
            Err(reason) => return SatResult::Unknown(reason),
            Ok(Expansion::Clash) => {}
            Ok(Expansion::Complete) => return r.model(&st, &c),
            Ok(Expansion::Branch(alts)) => {
                for alt in alts.iter().rev() {
                    let mut next = st.clone();
                    next.apply(alt);
                    stack.push(next);
                }
            }
        }
    }
    SatResult::Unsatisfiable
}
