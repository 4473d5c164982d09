use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exec::{self, Mode};
use crate::gf::{factorial, NetworkClass};

use super::graph::{NetworkGraph, Role};

/// Class predicate applied by the enumerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleClass {
    All,
    TreeChild,
    Normal,
}

impl From<NetworkClass> for OracleClass {
    fn from(c: NetworkClass) -> Self {
        match c {
            NetworkClass::Normal => OracleClass::Normal,
            NetworkClass::TreeChild => OracleClass::TreeChild,
        }
    }
}

impl fmt::Display for OracleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleClass::All => "all",
            OracleClass::TreeChild => "treechild",
            OracleClass::Normal => "normal",
        })
    }
}

impl FromStr for OracleClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(OracleClass::All);
        }
        s.parse::<NetworkClass>().map(OracleClass::from)
    }
}

pub const DEFAULT_CAP: usize = 9;

/// Hard ceiling: descendant sets are `u32` bitmasks and the search is
/// exponential well before this.
const MAX_VERTICES: usize = 13;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest `n` accepted; `n = cap + 2` is still run but flagged as slow.
    pub cap: usize,
    /// Allow both out-edges of a vertex to hit the same reticulation
    /// (only meaningful for [`OracleClass::All`]).
    pub allow_double_edges: bool,
    /// Count one role assignment and multiply by the number of assignments
    /// instead of visiting every assignment.
    pub symmetric: bool,
    pub mode: Mode,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { cap: DEFAULT_CAP, allow_double_edges: false, symmetric: true, mode: Mode::default() }
    }
}

/// Outcome of a count, with a flag when the run exceeded the default cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCount {
    pub count: BigInt,
    pub slow: bool,
}

/// Vertex counts per role, `None` when no network with `n` vertices and `k`
/// reticulations exists.
pub fn role_profile(n: usize, k: usize) -> Option<(usize, usize, usize)> {
    if n.is_multiple_of(2) {
        return None;
    }
    if n == 1 {
        return (k == 0).then_some((0, 0, 1));
    }
    let tree = (n - 3) / 2;
    let leaves = n.div_ceil(2).checked_sub(k)?;
    (leaves >= 1).then_some((tree, k, leaves))
}

/// Number of labeled networks on `n` vertices with `k` reticulations in
/// `class`, by exhaustive search.
pub fn enumerate_count(n: usize, k: usize, class: OracleClass) -> Result<BigInt> {
    Ok(enumerate_count_with(n, k, class, &OracleConfig::default())?.count)
}

pub fn enumerate_count_with(n: usize, k: usize, class: OracleClass, cfg: &OracleConfig) -> Result<OracleCount> {
    let slow = n > cfg.cap;
    if n > cfg.cap + 2 || n > MAX_VERTICES {
        return Err(Error::AboveCap { n, cap: cfg.cap });
    }
    let zero = OracleCount { count: BigInt::from(0), slow };
    let Some((t, r, l)) = role_profile(n, k) else {
        return Ok(zero);
    };
    if n == 1 {
        return Ok(OracleCount { count: BigInt::from(1), slow });
    }
    let search = Search { class, allow_double: cfg.allow_double_edges && class == OracleClass::All };
    let count = if cfg.symmetric {
        let roles = canonical_roles(t, r, l);
        let per = search.count(&roles, cfg.mode);
        let assignments = factorial(n) / (factorial(t) * factorial(r) * factorial(l));
        BigInt::from(per) * assignments
    } else {
        let all = role_assignments(n, t, r);
        let per: Vec<u128> = exec::map_slice(cfg.mode, &all, |roles| search.count(roles, Mode::Sequential));
        BigInt::from(per.iter().sum::<u128>())
    };
    Ok(OracleCount { count, slow })
}

/// Every network counted for the given class, each labeled assignment
/// visited explicitly. Intended for small `n`.
pub fn enumerate_networks(n: usize, k: usize, class: OracleClass, cfg: &OracleConfig) -> Result<Vec<NetworkGraph>> {
    if n > cfg.cap {
        return Err(Error::AboveCap { n, cap: cfg.cap });
    }
    let Some((t, r, _)) = role_profile(n, k) else {
        return Ok(Vec::new());
    };
    if n == 1 {
        return Ok(vec![NetworkGraph::from_edges(1, &[])?]);
    }
    let search = Search { class, allow_double: cfg.allow_double_edges && class == OracleClass::All };
    let all = role_assignments(n, t, r);
    let found: Vec<Vec<Vec<(usize, usize)>>> = exec::map_slice(cfg.mode, &all, |roles| search.collect(roles));
    found.into_iter().flatten().map(|e| NetworkGraph::from_edges(n, &e)).collect()
}

/// Networks whose roles follow the canonical order (root, tree vertices,
/// reticulations, leaves), with the number of role assignments each stands for.
pub fn enumerate_canonical(n: usize, k: usize, class: OracleClass, cfg: &OracleConfig) -> Result<(Vec<NetworkGraph>, BigInt)> {
    if n > cfg.cap + 2 || n > MAX_VERTICES {
        return Err(Error::AboveCap { n, cap: cfg.cap });
    }
    let Some((t, r, l)) = role_profile(n, k) else {
        return Ok((Vec::new(), BigInt::from(0)));
    };
    if n == 1 {
        return Ok((vec![NetworkGraph::from_edges(1, &[])?], BigInt::from(1)));
    }
    let search = Search { class, allow_double: cfg.allow_double_edges && class == OracleClass::All };
    let nets = search.collect(&canonical_roles(t, r, l)).into_iter().map(|e| NetworkGraph::from_edges(n, &e));
    let assignments = factorial(n) / (factorial(t) * factorial(r) * factorial(l));
    Ok((nets.collect::<Result<_>>()?, assignments))
}

fn canonical_roles(t: usize, r: usize, l: usize) -> Vec<Role> {
    let mut roles = vec![Role::Root];
    roles.extend(std::iter::repeat_n(Role::Tree, t));
    roles.extend(std::iter::repeat_n(Role::Reticulation, r));
    roles.extend(std::iter::repeat_n(Role::Leaf, l));
    roles
}

/// All role vectors with one root, `t` tree vertices and `r` reticulations.
fn role_assignments(n: usize, t: usize, r: usize) -> Vec<Vec<Role>> {
    fn rec(i: usize, t: usize, r: usize, l: usize, root: bool, cur: &mut Vec<Role>, out: &mut Vec<Vec<Role>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        let mut try_role = |role: Role, t: usize, r: usize, l: usize, root: bool| {
            cur[i] = role;
            rec(i + 1, t, r, l, root, cur, out);
        };
        if !root {
            try_role(Role::Root, t, r, l, true);
        }
        if t > 0 {
            try_role(Role::Tree, t - 1, r, l, root);
        }
        if r > 0 {
            try_role(Role::Reticulation, t, r - 1, l, root);
        }
        if l > 0 {
            try_role(Role::Leaf, t, r, l - 1, root);
        }
    }
    let l = n - 1 - t - r;
    let mut out = Vec::new();
    rec(0, t, r, l, false, &mut vec![Role::Leaf; n], &mut out);
    out
}

#[derive(Clone, Copy)]
struct Search {
    class: OracleClass,
    allow_double: bool,
}

#[derive(Clone)]
struct State {
    cap: Vec<u8>,
    desc: Vec<u32>,
    children: Vec<u32>,
    edges: Vec<(usize, usize)>,
}

impl Search {
    fn count(&self, roles: &[Role], mode: Mode) -> u128 {
        let (state, order) = self.start(roles);
        let Some(&first) = order.first() else {
            return 1;
        };
        // fan out over the first vertex's parent choices
        let choices = self.parent_choices(roles, &state, first);
        let per = exec::map_slice(mode, &choices, |ps| {
            let mut st = state.clone();
            if !self.attach(roles, &mut st, first, *ps) {
                return 0;
            }
            let mut total = 0u128;
            self.walk(roles, &order[1..], &mut st, &mut |_| total += 1);
            total
        });
        per.iter().sum()
    }

    fn collect(&self, roles: &[Role]) -> Vec<Vec<(usize, usize)>> {
        let (mut state, order) = self.start(roles);
        let mut out = Vec::new();
        self.walk(roles, &order, &mut state, &mut |st| out.push(st.edges.clone()));
        out
    }

    fn start(&self, roles: &[Role]) -> (State, Vec<usize>) {
        let n = roles.len();
        let state = State {
            cap: roles.iter().map(|r| r.degrees().1 as u8).collect(),
            desc: vec![0; n],
            children: vec![0; n],
            edges: Vec::with_capacity(n),
        };
        let order = (0..n).filter(|&v| roles[v] != Role::Root).collect();
        (state, order)
    }

    fn parent_choices(&self, roles: &[Role], st: &State, v: usize) -> Vec<(usize, usize)> {
        let n = roles.len();
        let ok = |p: usize| p != v && st.cap[p] > 0 && st.desc[v] & (1 << p) == 0;
        let mut out = Vec::new();
        if roles[v].degrees().0 == 1 {
            out.extend((0..n).filter(|&p| ok(p)).map(|p| (p, usize::MAX)));
        } else {
            for p in (0..n).filter(|&p| ok(p)) {
                if self.allow_double && st.cap[p] >= 2 {
                    out.push((p, p));
                }
                out.extend((p + 1..n).filter(|&q| ok(q)).map(|q| (p, q)));
            }
        }
        out
    }

    /// Add the parent edges of `v`; `false` if a class condition already fails.
    fn attach(&self, roles: &[Role], st: &mut State, v: usize, (p, q): (usize, usize)) -> bool {
        let mut ok = self.add_edge(roles, st, p, v);
        if q != usize::MAX {
            ok &= self.add_edge(roles, st, q, v);
        }
        ok
    }

    fn add_edge(&self, roles: &[Role], st: &mut State, p: usize, v: usize) -> bool {
        st.cap[p] -= 1;
        st.children[p] |= 1 << v;
        st.edges.push((p, v));
        let reach = (1u32 << v) | st.desc[v];
        for u in 0..roles.len() {
            if u == p || st.desc[u] & (1 << p) != 0 {
                st.desc[u] |= reach;
            }
        }
        if self.class == OracleClass::All || st.cap[p] != 0 {
            return true;
        }
        // p is complete: it needs a child that is not a reticulation
        let mut ch = st.children[p];
        while ch != 0 {
            let c = ch.trailing_zeros() as usize;
            if roles[c] != Role::Reticulation {
                return true;
            }
            ch &= ch - 1;
        }
        false
    }

    fn walk(&self, roles: &[Role], rest: &[usize], st: &mut State, found: &mut dyn FnMut(&State)) {
        let Some((&v, tail)) = rest.split_first() else {
            if self.accept(roles, st) {
                found(st);
            }
            return;
        };
        for ps in self.parent_choices(roles, st, v) {
            let mut next = st.clone();
            if self.attach(roles, &mut next, v, ps) {
                self.walk(roles, tail, &mut next, found);
            }
        }
    }

    fn accept(&self, roles: &[Role], st: &State) -> bool {
        if self.class != OracleClass::Normal {
            return true;
        }
        (0..roles.len()).all(|u| {
            let ch = st.children[u];
            let mut a = ch;
            while a != 0 {
                let v = a.trailing_zeros() as usize;
                a &= a - 1;
                let mut b = ch & !(1 << v);
                while b != 0 {
                    let w = b.trailing_zeros() as usize;
                    b &= b - 1;
                    if st.desc[w] & (1 << v) != 0 {
                        return false;
                    }
                }
            }
            true
        })
    }
}
