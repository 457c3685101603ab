//! Structural congruence decided through a canonical normal form.
//!
//! Two terms are congruent exactly when their canonical forms are
//! syntactically identical. The normal form:
//!
//! - resolves conditionals whose operands are closed;
//! - erases `eps` prefixes and expands path prefixes into atom chains;
//! - flattens `|` and `+` into sorted sequences with `0` dropped;
//! - composes nested relabellings, drops identity relabellings and
//!   relabellings of `0`, and distributes a relabelling over `+`;
//! - extrudes restrictions through `|` and ambient bodies to a prenex block
//!   (alpha-renaming as needed), drops unused binders, and orders the block
//!   by first use;
//! - renames bound names and variables to a canonical scheme (`v*` for
//!   ambients, `l*` for ports, `x*` for variables).
//!
//! Constants compare nominally at `unfold_depth = 0` (with their argument
//! canonical forms), except that a constant whose unfolding immediately
//! resolves a closed conditional is unfolded through the resolution, and
//! [`struct_congruent`] falls back to one surface unfolding when nominal
//! comparison fails. Relabelling is *not* pushed through `|`: with a
//! non-injective map, `(P|Q)[f]` and `P[f]|Q[f]` differ observably (the
//! right-hand side can synchronize on merged channels), so only sound
//! bookkeeping is applied.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::syntax::{
    all_idents, free_names, fresh_ident, rename_free_ambient, rename_free_port_base,
    rename_free_var, AmbientName, Capability, EnvError, Environment, Process, Value,
};

/// Budget for on-demand constant unfolding inside one normalization or
/// transition enumeration.
pub const DEFAULT_UNFOLD_BUDGET: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NormalizeError {
    #[error(transparent)]
    Env(#[from] EnvError),
    #[error("constant unfolding budget exhausted (recursion too deep or unguarded)")]
    UnfoldBudget,
    #[error("substitution failed while unfolding: {0}")]
    Subst(#[from] crate::syntax::SubstError),
}

/// A process in normal shape, keyed by a precomputed structural hash.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalForm {
    term: Process,
    hash: u64,
}

impl CanonicalForm {
    pub fn as_process(&self) -> &Process {
        &self.term
    }

    pub fn into_process(self) -> Process {
        self.term
    }

    pub fn stable_hash(&self) -> u64 {
        self.hash
    }
}

impl Hash for CanonicalForm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.hash);
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::parser::pretty_print(&self.term))
    }
}

fn structural_hash(p: &Process) -> u64 {
    use std::collections::hash_map::DefaultHasher;
    let mut h = DefaultHasher::new();
    p.hash(&mut h);
    h.finish()
}

/// Canonical bound-name stems. User identifiers may collide with these
/// spellings; the renamer skips clashing candidates.
const AMB_STEM: &str = "v";
const PORT_STEM: &str = "l";
const VAR_STEM: &str = "x";

/// Computes the canonical form of `p`. Constants unfold at most
/// `unfold_depth` times along any path (plus forced unfoldings that expose a
/// closed conditional guard).
pub fn normalize(
    p: &Process,
    env: &Environment,
    unfold_depth: usize,
) -> Result<CanonicalForm, NormalizeError> {
    let mut budget = DEFAULT_UNFOLD_BUDGET.max(unfold_depth.saturating_mul(4));
    let term = norm(p, env, unfold_depth, &mut budget)?;
    let term = canon(&term);
    let hash = structural_hash(&term);
    Ok(CanonicalForm { term, hash })
}

/// True iff the canonical forms coincide. When nominal comparison fails and a
/// side still carries surface constants, one round of surface unfolding is
/// forced before giving up.
pub fn struct_congruent(
    p: &Process,
    q: &Process,
    env: &Environment,
    unfold_depth: usize,
) -> Result<bool, NormalizeError> {
    let cp = normalize(p, env, unfold_depth)?;
    let cq = normalize(q, env, unfold_depth)?;
    if cp == cq {
        return Ok(true);
    }
    if has_surface_const(cp.as_process()) || has_surface_const(cq.as_process()) {
        let up = surface_normal_form(cp.as_process(), env)?;
        let uq = surface_normal_form(cq.as_process(), env)?;
        return Ok(up == uq);
    }
    Ok(false)
}

/// The unrestricted ambient names standing as top-level parallel components
/// of the canonical form: exactly the strong barbs.
pub fn top_level_ambients(
    p: &Process,
    env: &Environment,
) -> Result<BTreeSet<AmbientName>, NormalizeError> {
    let cf = surface_normal_form(p, env)?;
    let (binders, components) = split_prenex(cf.as_process());
    let bound: BTreeSet<&AmbientName> = binders
        .iter()
        .filter_map(|b| match b {
            Binder::Amb(n) => Some(n),
            Binder::Port(_) => None,
        })
        .collect();
    let mut out = BTreeSet::new();
    for c in components {
        if let Process::Amb(name, _) = c {
            if !bound.contains(name) {
                out.insert(name.clone());
            }
        }
    }
    Ok(out)
}

/// Canonical form with every constant at a *surface* position (top level,
/// under binders, parallel components, sum arms, relabel bodies, ambient
/// bodies) unfolded away. This is the view the semantic engines work on and
/// the key used for states of explored transition systems.
pub fn surface_normal_form(
    p: &Process,
    env: &Environment,
) -> Result<CanonicalForm, NormalizeError> {
    let mut budget = DEFAULT_UNFOLD_BUDGET;
    let mut term = norm(p, env, 0, &mut budget)?;
    while has_surface_const(&term) {
        term = unfold_surface(&term, env, &mut budget)?;
        term = norm(&term, env, 0, &mut budget)?;
    }
    let term = canon(&term);
    let hash = structural_hash(&term);
    Ok(CanonicalForm { term, hash })
}

fn has_surface_const(p: &Process) -> bool {
    match p {
        Process::Const(..) => true,
        Process::Par(a, b) | Process::Sum(a, b) => has_surface_const(a) || has_surface_const(b),
        Process::Amb(_, body)
        | Process::RestrictAmb(_, body)
        | Process::RestrictPort(_, body)
        | Process::Relabel(body, _) => has_surface_const(body),
        _ => false,
    }
}

fn unfold_surface(
    p: &Process,
    env: &Environment,
    budget: &mut usize,
) -> Result<Process, NormalizeError> {
    Ok(match p {
        Process::Const(name, args) => {
            if *budget == 0 {
                return Err(NormalizeError::UnfoldBudget);
            }
            *budget -= 1;
            env.unfold(name, args)?
        }
        Process::Par(a, b) => Process::par(
            unfold_surface(a, env, budget)?,
            unfold_surface(b, env, budget)?,
        ),
        Process::Sum(a, b) => Process::sum(
            unfold_surface(a, env, budget)?,
            unfold_surface(b, env, budget)?,
        ),
        Process::Amb(n, body) => Process::amb(n.clone(), unfold_surface(body, env, budget)?),
        Process::RestrictAmb(n, body) => {
            Process::restrict_amb(n.clone(), unfold_surface(body, env, budget)?)
        }
        Process::RestrictPort(base, body) => {
            Process::restrict_port(base.clone(), unfold_surface(body, env, budget)?)
        }
        Process::Relabel(body, map) => {
            Process::Relabel(Box::new(unfold_surface(body, env, budget)?), map.clone())
        }
        other => other.clone(),
    })
}

// ---------------------------------------------------------------------------
// Core rewriting
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Binder {
    Amb(AmbientName),
    Port(String),
}

/// Strips the prenex restriction block and flattens the parallel components
/// underneath it.
pub(crate) fn split_prenex(p: &Process) -> (Vec<Binder>, Vec<&Process>) {
    let mut binders = Vec::new();
    let mut cur = p;
    loop {
        match cur {
            Process::RestrictAmb(n, body) => {
                binders.push(Binder::Amb(n.clone()));
                cur = body;
            }
            Process::RestrictPort(b, body) => {
                binders.push(Binder::Port(b.clone()));
                cur = body;
            }
            _ => break,
        }
    }
    let mut components = Vec::new();
    collect_par(cur, &mut components);
    (binders, components)
}

fn collect_par<'a>(p: &'a Process, out: &mut Vec<&'a Process>) {
    match p {
        Process::Par(a, b) => {
            collect_par(a, out);
            collect_par(b, out);
        }
        other => out.push(other),
    }
}

fn collect_sum<'a>(p: &'a Process, out: &mut Vec<&'a Process>) {
    match p {
        Process::Sum(a, b) => {
            collect_sum(a, out);
            collect_sum(b, out);
        }
        other => out.push(other),
    }
}

pub(crate) fn rebuild_par(components: Vec<Process>) -> Process {
    let mut iter = components.into_iter().rev();
    let last = match iter.next() {
        Some(p) => p,
        None => return Process::Zero,
    };
    iter.fold(last, |acc, p| Process::par(p, acc))
}

fn rebuild_sum(arms: Vec<Process>) -> Process {
    let mut iter = arms.into_iter().rev();
    let last = match iter.next() {
        Some(p) => p,
        None => return Process::Zero,
    };
    iter.fold(last, |acc, p| Process::sum(p, acc))
}

pub(crate) fn rebuild_binders(binders: Vec<Binder>, body: Process) -> Process {
    binders.into_iter().rev().fold(body, |acc, b| match b {
        Binder::Amb(n) => Process::restrict_amb(n, acc),
        Binder::Port(p) => Process::restrict_port(p, acc),
    })
}

/// The rewriting workhorse: returns a term in normal shape except that bound
/// names keep whatever spelling extrusion gave them; the final [`canon`] pass
/// canonicalizes spellings and binder order.
fn norm(
    p: &Process,
    env: &Environment,
    unfold_depth: usize,
    budget: &mut usize,
) -> Result<Process, NormalizeError> {
    match p {
        Process::Zero => Ok(Process::Zero),
        Process::Const(name, args) => {
            let def = env
                .lookup(name)
                .ok_or_else(|| EnvError::UnboundConstant(name.clone()))?;
            if def.params.len() != args.len() {
                return Err(NormalizeError::Env(EnvError::ArityMismatch {
                    name: name.clone(),
                    expected: def.params.len(),
                    got: args.len(),
                }));
            }
            if unfold_depth > 0 {
                if *budget == 0 {
                    return Err(NormalizeError::UnfoldBudget);
                }
                *budget -= 1;
                let body = env.unfold(name, args)?;
                return norm(&body, env, unfold_depth - 1, budget);
            }
            // Forced unfolding when the body resolves to a conditional chain
            // with closed guards, so that dispatch-style recursion
            // canonicalizes to the selected branch.
            if args.iter().all(Value::is_closed) {
                let body = env.unfold(name, args)?;
                if let Some(resolved) = resolve_cond_chain(&body) {
                    if *budget == 0 {
                        return Err(NormalizeError::UnfoldBudget);
                    }
                    *budget -= 1;
                    return norm(&resolved, env, unfold_depth, budget);
                }
            }
            Ok(Process::Const(name.clone(), args.clone()))
        }
        Process::Cap(c, cont) => {
            let cont = norm(cont, env, unfold_depth, budget)?;
            Ok(c.atoms()
                .into_iter()
                .rev()
                .fold(cont, |acc, atom| Process::Cap(atom, Box::new(acc))))
        }
        Process::Input(port, var, cont) => Ok(Process::Input(
            port.clone(),
            var.clone(),
            Box::new(norm(cont, env, unfold_depth, budget)?),
        )),
        Process::Output(port, v, cont) => Ok(Process::Output(
            port.clone(),
            v.clone(),
            Box::new(norm(cont, env, unfold_depth, budget)?),
        )),
        Process::Tau(cont) => Ok(Process::Tau(Box::new(norm(cont, env, unfold_depth, budget)?))),
        Process::Amb(name, body) => {
            let body = norm(body, env, unfold_depth, budget)?;
            // Extrude restrictions out of the ambient body, renaming any
            // binder that collides with the ambient's own name.
            let (binders, components) = split_prenex(&body);
            let mut inner = rebuild_par(components.into_iter().cloned().collect::<Vec<_>>());
            if binders.is_empty() {
                return Ok(Process::amb(name.clone(), inner));
            }
            let mut avoid = all_idents(&inner);
            avoid.insert(name.base.clone());
            avoid.extend(name.ports.mentioned_bases());
            let mut out_binders = Vec::new();
            for b in binders {
                match b {
                    Binder::Amb(n) => {
                        if n == *name {
                            let fresh = AmbientName {
                                base: fresh_ident(&n.base, &avoid),
                                ports: n.ports.clone(),
                            };
                            avoid.insert(fresh.base.clone());
                            inner = rename_free_ambient(&inner, &n, &fresh);
                            out_binders.push(Binder::Amb(fresh));
                        } else {
                            out_binders.push(Binder::Amb(n));
                        }
                    }
                    Binder::Port(base) => out_binders.push(Binder::Port(base)),
                }
            }
            Ok(rebuild_binders(out_binders, Process::amb(name.clone(), inner)))
        }
        Process::Sum(..) => {
            let mut arms = Vec::new();
            collect_sum(p, &mut arms);
            let mut normed = Vec::new();
            for arm in arms {
                let n = norm(arm, env, unfold_depth, budget)?;
                let mut flat = Vec::new();
                collect_sum(&n, &mut flat);
                for a in flat {
                    if !a.is_zero() {
                        normed.push(a.clone());
                    }
                }
            }
            normed.sort();
            Ok(rebuild_sum(normed))
        }
        Process::Par(..) => {
            let mut parts = Vec::new();
            collect_par(p, &mut parts);
            let mut normed = Vec::new();
            for part in parts {
                let n = norm(part, env, unfold_depth, budget)?;
                let mut flat = Vec::new();
                collect_par(&n, &mut flat);
                for c in flat {
                    if !c.is_zero() {
                        normed.push(c.clone());
                    }
                }
            }
            // Hoist component prenexes to this level, alpha-renaming each
            // binder so it cannot capture names of the other components.
            let mut any_binders = false;
            let mut avoid = BTreeSet::new();
            for comp in &normed {
                let (bs, _) = split_prenex(comp);
                any_binders |= !bs.is_empty();
                avoid.extend(all_idents(comp));
            }
            if !any_binders {
                normed.sort();
                return Ok(rebuild_par(normed));
            }
            let mut hoisted = Vec::new();
            let mut bodies = Vec::new();
            for comp in &normed {
                let (bs, inner) = split_prenex(comp);
                let mut body = rebuild_par(inner.into_iter().cloned().collect());
                for b in bs {
                    match b {
                        Binder::Amb(n) => {
                            let fresh = AmbientName {
                                base: fresh_ident(&n.base, &avoid),
                                ports: n.ports.clone(),
                            };
                            avoid.insert(fresh.base.clone());
                            if fresh != n {
                                body = rename_free_ambient(&body, &n, &fresh);
                            }
                            hoisted.push(Binder::Amb(fresh));
                        }
                        Binder::Port(base) => {
                            let fresh = fresh_ident(&base, &avoid);
                            avoid.insert(fresh.clone());
                            if fresh != base {
                                body = rename_free_port_base(&body, &base, &fresh);
                            }
                            hoisted.push(Binder::Port(fresh));
                        }
                    }
                }
                bodies.push(body);
            }
            bodies.sort();
            // Re-normalize under the hoisted binders; the bodies are now
            // prenex-free so this terminates.
            norm(&rebuild_binders(hoisted, rebuild_par(bodies)), env, unfold_depth, budget)
        }
        Process::RestrictAmb(name, body) => {
            let body = norm(body, env, unfold_depth, budget)?;
            if !free_names(&body).contains_ambient(name) {
                return Ok(body);
            }
            Ok(Process::restrict_amb(name.clone(), body))
        }
        Process::RestrictPort(base, body) => {
            let body = norm(body, env, unfold_depth, budget)?;
            if !free_names(&body).contains_port_base(base) {
                return Ok(body);
            }
            Ok(Process::restrict_port(base.clone(), body))
        }
        Process::Relabel(body, map) => {
            let body = norm(body, env, unfold_depth, budget)?;
            if map.is_identity() || body.is_zero() {
                return Ok(body);
            }
            match body {
                Process::Relabel(inner, inner_map) => {
                    let composed = map.compose_after(&inner_map);
                    norm(&Process::Relabel(inner, composed), env, unfold_depth, budget)
                }
                Process::Sum(..) => {
                    let mut arms = Vec::new();
                    collect_sum(&body, &mut arms);
                    let relabelled = arms
                        .into_iter()
                        .map(|a| Process::Relabel(Box::new(a.clone()), map.clone()))
                        .collect::<Vec<_>>();
                    norm(&rebuild_sum(relabelled), env, unfold_depth, budget)
                }
                other => Ok(Process::Relabel(Box::new(other), map.clone())),
            }
        }
        Process::Cond(l, r, t, e) => {
            if l.is_closed() && r.is_closed() {
                let branch = if l == r { t } else { e };
                return norm(branch, env, unfold_depth, budget);
            }
            Ok(Process::Cond(
                l.clone(),
                r.clone(),
                Box::new(norm(t, env, unfold_depth, budget)?),
                Box::new(norm(e, env, unfold_depth, budget)?),
            ))
        }
    }
}

/// When `p` is a (chain of) conditionals with closed guards, the selected
/// branch; `None` if the head is anything else.
fn resolve_cond_chain(p: &Process) -> Option<Process> {
    match p {
        Process::Cond(l, r, t, e) if l.is_closed() && r.is_closed() => {
            let branch = if l == r { t } else { e };
            Some(resolve_cond_chain(branch).unwrap_or_else(|| (**branch).clone()))
        }
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Canonical renaming of bound names and binder ordering
// ---------------------------------------------------------------------------

/// Canonicalizes a prenex block: component interiors first, then component
/// order blind to binder spellings, binder order by first use, canonical
/// spellings, and a final sort. Iterated to a fixpoint (converges in a
/// round or two; bounded defensively).
fn canon(p: &Process) -> Process {
    let (binders, components) = split_prenex(p);
    if binders.is_empty() && components.len() == 1 {
        return canon_node(components[0]);
    }
    let mut binders = binders;
    let mut bodies: Vec<Process> = components.iter().map(|c| canon_node(c)).collect();

    for _round in 0..4 {
        // Sort components with all prenex-bound spellings collapsed.
        let keys: Vec<String> = bodies.iter().map(|b| blind_key(b, &binders)).collect();
        let mut order: Vec<usize> = (0..bodies.len()).collect();
        order.sort_by(|&i, &j| keys[i].cmp(&keys[j]).then_with(|| bodies[i].cmp(&bodies[j])));
        let sorted: Vec<Process> = order.iter().map(|&i| bodies[i].clone()).collect();

        // Rename binders in first-use order to canonical spellings.
        let use_order = binder_use_order(&sorted, &binders);
        let mut avoid: BTreeSet<String> = BTreeSet::new();
        for b in &sorted {
            avoid.extend(all_idents(b));
        }
        for b in &binders {
            match b {
                Binder::Amb(n) => {
                    avoid.remove(&n.base);
                }
                Binder::Port(base) => {
                    avoid.remove(base);
                }
            }
        }
        let mut renamed = sorted.clone();
        let mut new_binders = Vec::new();
        for &i in &use_order {
            match &binders[i] {
                Binder::Amb(n) => {
                    let base = pick_canonical(AMB_STEM, &avoid);
                    avoid.insert(base.clone());
                    let fresh = AmbientName { base, ports: n.ports.clone() };
                    if fresh != *n {
                        for body in renamed.iter_mut() {
                            *body = rename_free_ambient(body, n, &fresh);
                        }
                    }
                    new_binders.push(Binder::Amb(fresh));
                }
                Binder::Port(old) => {
                    let base = pick_canonical(PORT_STEM, &avoid);
                    avoid.insert(base.clone());
                    if base != *old {
                        for body in renamed.iter_mut() {
                            *body = rename_free_port_base(body, old, &base);
                        }
                    }
                    new_binders.push(Binder::Port(base));
                }
            }
        }
        renamed.sort();
        let stable = new_binders == binders && renamed == bodies;
        binders = new_binders;
        bodies = renamed;
        if stable {
            break;
        }
    }
    rebuild_binders(binders, rebuild_par(bodies))
}

fn pick_canonical(stem: &str, avoid: &BTreeSet<String>) -> String {
    let mut i = 0usize;
    loop {
        let candidate = format!("{stem}{i}");
        if !avoid.contains(&candidate) {
            return candidate;
        }
        i += 1;
    }
}

/// Sort key with every prenex-bound name collapsed to one token, so component
/// order cannot depend on binder spellings.
fn blind_key(p: &Process, binders: &[Binder]) -> String {
    let mut blinded = p.clone();
    for b in binders {
        match b {
            Binder::Amb(n) => {
                blinded = rename_free_ambient(
                    &blinded,
                    n,
                    &AmbientName { base: "\u{1}".into(), ports: n.ports.clone() },
                );
            }
            Binder::Port(base) => {
                blinded = rename_free_port_base(&blinded, base, "\u{1}");
            }
        }
    }
    format!("{blinded:?}")
}

/// Binder indices ordered by first use across the component sequence; unused
/// binders last. A port binder referenced by an ambient binder's decoration
/// is kept before it.
fn binder_use_order(bodies: &[Process], binders: &[Binder]) -> Vec<usize> {
    let mut first_use: Vec<Option<usize>> = vec![None; binders.len()];
    for (pos, b) in bodies.iter().enumerate() {
        let fns = free_names(b);
        for (i, binder) in binders.iter().enumerate() {
            if first_use[i].is_some() {
                continue;
            }
            let used = match binder {
                Binder::Amb(n) => fns.contains_ambient(n),
                Binder::Port(base) => fns.contains_port_base(base),
            };
            if used {
                first_use[i] = Some(pos);
            }
        }
    }
    let mut order: Vec<usize> = (0..binders.len()).collect();
    order.sort_by_key(|&i| (first_use[i].unwrap_or(usize::MAX), i));
    let mut changed = true;
    while changed {
        changed = false;
        for a in 0..order.len() {
            for b in (a + 1)..order.len() {
                if let (Binder::Amb(n), Binder::Port(base)) = (&binders[order[a]], &binders[order[b]])
                {
                    if n.ports.mentioned_bases().contains(base) {
                        order.swap(a, b);
                        changed = true;
                    }
                }
            }
        }
    }
    order
}

/// Canonicalizes the interior of one parallel component (no top prenex).
fn canon_node(p: &Process) -> Process {
    match p {
        Process::Zero => Process::Zero,
        Process::Const(name, args) => Process::Const(name.clone(), args.clone()),
        Process::Cap(c, cont) => {
            let cont = canon(cont);
            match c {
                Capability::Ploc(x) | Capability::Sloc(x) => {
                    let (fresh, cont) = canon_var_binder(x, cont);
                    let cap = match c {
                        Capability::Ploc(_) => Capability::Ploc(fresh),
                        _ => Capability::Sloc(fresh),
                    };
                    Process::Cap(cap, Box::new(cont))
                }
                _ => Process::Cap(c.clone(), Box::new(cont)),
            }
        }
        Process::Input(port, x, cont) => {
            let cont = canon(cont);
            let (fresh, cont) = canon_var_binder(x, cont);
            Process::Input(port.clone(), fresh, Box::new(cont))
        }
        Process::Output(port, v, cont) => {
            Process::Output(port.clone(), v.clone(), Box::new(canon(cont)))
        }
        Process::Tau(cont) => Process::Tau(Box::new(canon(cont))),
        Process::Amb(name, body) => Process::amb(name.clone(), canon(body)),
        Process::Sum(..) => {
            let mut arms = Vec::new();
            collect_sum(p, &mut arms);
            let mut canond: Vec<Process> = arms.iter().map(|a| canon(a)).collect();
            canond.sort();
            rebuild_sum(canond)
        }
        // A lone restriction (e.g. under a prefix) heads its own prenex block.
        Process::Par(..) | Process::RestrictAmb(..) | Process::RestrictPort(..) => canon(p),
        Process::Relabel(body, map) => Process::Relabel(Box::new(canon(body)), map.clone()),
        Process::Cond(l, r, t, e) => {
            Process::Cond(l.clone(), r.clone(), Box::new(canon(t)), Box::new(canon(e)))
        }
    }
}

/// Renames a variable binder to the least canonical `x<i>` spelling not free
/// in the continuation.
fn canon_var_binder(x: &str, cont: Process) -> (String, Process) {
    let mut avoid: BTreeSet<String> = crate::syntax::free_vars(&cont);
    avoid.remove(x);
    let fresh = pick_canonical(VAR_STEM, &avoid);
    if fresh == x {
        return (fresh, cont);
    }
    let renamed = rename_free_var(&cont, &x.to_string(), &fresh);
    (fresh, renamed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_process;
    use crate::syntax::PortName;

    fn env() -> Environment {
        Environment::new()
    }

    fn nf(text: &str) -> CanonicalForm {
        normalize(&parse_process(text).unwrap(), &env(), 0).unwrap()
    }

    fn congruent(a: &str, b: &str) -> bool {
        struct_congruent(&parse_process(a).unwrap(), &parse_process(b).unwrap(), &env(), 0)
            .unwrap()
    }

    #[test]
    fn zero_par_erased() {
        assert_eq!(nf("m[0] | 0"), nf("m[0]"));
    }

    #[test]
    fn par_comm_assoc() {
        assert!(congruent("m[0] | n[0]", "n[0] | m[0]"));
        assert!(congruent("(m[0] | n[0]) | k[0]", "m[0] | (n[0] | k[0])"));
    }

    #[test]
    fn sum_comm_assoc_zero() {
        assert!(congruent("in m.0 + in n.0", "in n.0 + in m.0"));
        assert!(congruent("(in m.0 + in n.0) + out m.0", "in m.0 + (in n.0 + out m.0)"));
        assert!(congruent("in m.0 + 0", "in m.0"));
    }

    #[test]
    fn epsilon_erased() {
        assert!(congruent("eps. m[0]", "m[0]"));
    }

    #[test]
    fn res_par_scope_extrusion() {
        assert!(congruent("new n in (m[0] | n[0])", "m[0] | new n in n[0]"));
    }

    #[test]
    fn res_res_reorder() {
        assert!(congruent(
            "new n in new m in (m[0] | n[0])",
            "new m in new n in (m[0] | n[0])"
        ));
    }

    #[test]
    fn res_amb_extrusion() {
        assert!(congruent("m[ new n in n[0] ]", "new n in m[ n[0] ]"));
    }

    #[test]
    fn res_amb_same_base_renames() {
        // m[ new m in m[0] ]: the inner binder must not collide with the
        // enclosing ambient when extruded.
        assert!(congruent("m[ new m in m[0] ]", "new k in m[ k[0] ]"));
    }

    #[test]
    fn zero_res_and_garbage_collection() {
        assert!(congruent("new n in 0", "0"));
        assert!(congruent("new n in m[0]", "m[0]"));
    }

    #[test]
    fn alpha_invariance_of_canonical_form() {
        assert_eq!(nf("new n in n[0]"), nf("new k in k[0]"));
    }

    #[test]
    fn distinct_free_names_not_congruent() {
        assert!(!congruent("n[0]", "m[0]"));
        let n_b = Process::amb(
            AmbientName::with_ports("n", [PortName::plain("b")]),
            Process::Zero,
        );
        let n_all = parse_process("n[0]").unwrap();
        assert!(!struct_congruent(&n_b, &n_all, &env(), 0).unwrap());
    }

    #[test]
    fn const_axiom() {
        let mut e = Environment::new();
        e.define("D", vec![], parse_process("m[0] | 0").unwrap()).unwrap();
        let d = Process::Const("D".into(), vec![]);
        let m = parse_process("m[0]").unwrap();
        assert!(struct_congruent(&d, &m, &e, 1).unwrap());
        // Nominal comparison falls back to a surface unfolding.
        assert!(struct_congruent(&d, &m, &e, 0).unwrap());
    }

    #[test]
    fn unbound_constant_reported() {
        let p = Process::Const("Nope".into(), vec![]);
        assert!(matches!(
            normalize(&p, &env(), 0),
            Err(NormalizeError::Env(EnvError::UnboundConstant(_)))
        ));
    }

    #[test]
    fn unguarded_recursion_exhausts_budget() {
        let mut e = Environment::new();
        e.define("D", vec![], parse_process("D | D").unwrap()).unwrap();
        let p = Process::Const("D".into(), vec![]);
        assert!(matches!(
            surface_normal_form(&p, &e),
            Err(NormalizeError::UnfoldBudget)
        ));
    }

    #[test]
    fn normalize_is_idempotent() {
        for text in [
            "new n in (m[0] | n[0] | 0)",
            "m[ new k in (k[0] | in n.0) ] | n[]",
            "a?(y). (y.0 | new q in q[0])",
            "(in m.0 + (out n.0 + 0)) | eps. 0",
            "new port a in (a!(m).0 | m{a}[0])",
        ] {
            let once = nf(text);
            let twice = normalize(once.as_process(), &env(), 0).unwrap();
            assert_eq!(once, twice, "not idempotent on {text}");
        }
    }

    #[test]
    fn top_level_ambients_are_strong_barbs() {
        let t = |text: &str| top_level_ambients(&parse_process(text).unwrap(), &env()).unwrap();
        assert_eq!(
            t("n[0] | m[0]"),
            BTreeSet::from([AmbientName::all("n"), AmbientName::all("m")])
        );
        assert!(t("new n in n[0]").is_empty());
        assert_eq!(t("m[ n[0] ]"), BTreeSet::from([AmbientName::all("m")]));
        // Constants unfold before barb extraction; port restrictions do not
        // hide ambient barbs (the private decoration port reports with its
        // canonical spelling).
        let mut e = Environment::new();
        e.define("D", vec![], parse_process("n[0]").unwrap()).unwrap();
        assert_eq!(
            top_level_ambients(&Process::Const("D".into(), vec![]), &e).unwrap(),
            BTreeSet::from([AmbientName::all("n")])
        );
        assert_eq!(
            t("new port a in m{a}[0]"),
            BTreeSet::from([AmbientName::with_ports("m", [PortName::plain("l0")])])
        );
    }

    #[test]
    fn closed_cond_resolves() {
        assert!(congruent("if m = m then n[0] else k[0]", "n[0]"));
        assert!(congruent("if m = k then n[0] else k[0]", "k[0]"));
        let open = parse_process("a?(x). if x = m then n[0] else 0").unwrap();
        let n = normalize(&open, &env(), 0).unwrap();
        assert!(matches!(n.as_process(), Process::Input(..)));
    }

    #[test]
    fn cond_dispatch_constant_resolves_on_closed_args() {
        let e = crate::parser::parse_definitions("Go(p) := if p = m then in n.0 else in m.0")
            .unwrap();
        let call = Process::Const("Go".into(), vec![Value::name("m")]);
        let want = parse_process("in n.0").unwrap();
        assert!(struct_congruent(&call, &want, &e, 0).unwrap());
        let other = Process::Const("Go".into(), vec![Value::name("k")]);
        assert!(struct_congruent(&other, &parse_process("in m.0").unwrap(), &e, 0).unwrap());
    }

    #[test]
    fn relabel_composes_and_clears_zero() {
        assert!(congruent("0[b/a]", "0"));
        // Composition keeps the outer map's own entries: anything the inner
        // body does on b is still mapped to c.
        assert!(congruent("m[a!(nil).0][b/a][c/b]", "m[a!(nil).0][c/a, c/b]"));
        // Not distributed over |.
        let p = nf("(a!(nil).0 | b?(y).0)[c/a, c/b]");
        assert!(matches!(p.as_process(), Process::Relabel(..)));
    }

    #[test]
    fn hash_consistency() {
        let a = nf("new n in (n[0] | m[0])");
        let b = nf("new k in (m[0] | k[0])");
        assert_eq!(a, b);
        assert_eq!(a.stable_hash(), b.stable_hash());
    }

    #[test]
    fn canonical_variable_renaming() {
        assert_eq!(nf("a?(y). b!(y). 0"), nf("a?(z). b!(z). 0"));
    }
}
