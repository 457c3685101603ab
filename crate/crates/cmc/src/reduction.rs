//! The one-step reduction relation: ambient movement (`in`/`out`) and
//! location queries (`ploc`/`sloc`), closed under restriction, parallel
//! composition, ambient nesting and structural rearrangement.
//!
//! Redex search runs on the canonical form and matches against the flattened
//! parallel multisets, so rearrangement closure needs no separate rewriting.
//! There is deliberately no reduction rule for communication; synchronization
//! lives in the transition semantics only.

use std::collections::BTreeSet;
use std::fmt;

use crate::congruence::{
    rebuild_binders, rebuild_par, split_prenex, surface_normal_form, CanonicalForm,
    NormalizeError,
};
use crate::syntax::{substitute, AmbTarget, AmbientName, Capability, Environment, Process, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RedexKind {
    RedIn,
    RedOut,
    RedPloc,
    RedSloc,
}

impl fmt::Display for RedexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RedexKind::RedIn => "in",
            RedexKind::RedOut => "out",
            RedexKind::RedPloc => "ploc",
            RedexKind::RedSloc => "sloc",
        };
        write!(f, "{s}")
    }
}

/// Names the axiom instance that fired. `mover` is the ambient that moves or
/// learns a name; `target` is the entered/exited ambient for movement, the
/// parent for `ploc`, and the witnessed sibling for `sloc`. `path` addresses
/// the enclosing multiset in the source canonical form as a chain of
/// component indices descending through ambient bodies.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RedexAnnotation {
    pub kind: RedexKind,
    pub mover: AmbientName,
    pub target: AmbientName,
    pub path: Vec<usize>,
}

impl fmt::Display for RedexAnnotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RedexKind::RedIn | RedexKind::RedOut => {
                write!(f, "{} {} {}", self.kind, self.mover.base, self.target.base)
            }
            RedexKind::RedPloc | RedexKind::RedSloc => {
                write!(f, "{}({} <- {})", self.kind, self.mover.base, self.target.base)
            }
        }
    }
}

/// Resolves a redex path against a canonical form: follows component indices
/// through ambient bodies and returns the addressed subterm (the whole term
/// for an empty path).
pub fn resolve_path<'a>(cf: &'a CanonicalForm, path: &[usize]) -> Option<&'a Process> {
    let mut cur: &Process = cf.as_process();
    for &idx in path {
        let (_, components) = split_prenex(cur);
        let comp = components.get(idx)?;
        match comp {
            Process::Amb(_, body) => cur = body,
            _ => return None,
        }
    }
    Some(cur)
}

/// All one-step reductions of `p`, as annotated canonical targets.
pub fn reductions(
    p: &Process,
    env: &Environment,
) -> Result<BTreeSet<(RedexAnnotation, CanonicalForm)>, NormalizeError> {
    let cf = surface_normal_form(p, env)?;
    let (binders, components) = split_prenex(cf.as_process());
    let components: Vec<Process> = components.into_iter().cloned().collect();
    let mut raw = Vec::new();
    search(&components, &mut Vec::new(), &mut raw);
    let mut out = BTreeSet::new();
    for (ann, inner) in raw {
        let rebuilt = rebuild_binders(binders.clone(), inner);
        let target = surface_normal_form(&rebuilt, env)?;
        out.insert((ann, target));
    }
    Ok(out)
}

/// One rewrite at the multiset addressed by the current path; results carry
/// the replacement multiset (still at that address).
fn search(
    components: &[Process],
    path: &mut Vec<usize>,
    out: &mut Vec<(RedexAnnotation, Process)>,
) {
    for (i, comp) in components.iter().enumerate() {
        let (mover_i, body_i) = match comp {
            Process::Amb(name, body) => (name, body),
            _ => continue,
        };
        let body_comps = par_components(body_i);

        // (in): m[ in n.P | Q ] | n[R]  ->  n[ m[P|Q] | R ]
        for (k, bc) in body_comps.iter().enumerate() {
            let (target, cont) = match bc {
                Process::Cap(Capability::In(AmbTarget::Name(n)), cont) => (n, cont),
                _ => continue,
            };
            for (j, other) in components.iter().enumerate() {
                if i == j {
                    continue;
                }
                if let Process::Amb(n_name, r_body) = other {
                    if n_name != target {
                        continue;
                    }
                    let mut mover_body: Vec<Process> = body_comps
                        .iter()
                        .enumerate()
                        .filter(|(kk, _)| *kk != k)
                        .map(|(_, c)| (*c).clone())
                        .collect();
                    mover_body.insert(0, (**cont).clone());
                    let moved = Process::amb(mover_i.clone(), rebuild_par(mover_body));
                    let new_target = Process::amb(
                        n_name.clone(),
                        Process::par(moved, (**r_body).clone()),
                    );
                    let mut rest: Vec<Process> = components
                        .iter()
                        .enumerate()
                        .filter(|(x, _)| *x != i && *x != j)
                        .map(|(_, c)| c.clone())
                        .collect();
                    rest.push(new_target);
                    out.push((
                        RedexAnnotation {
                            kind: RedexKind::RedIn,
                            mover: mover_i.clone(),
                            target: target.clone(),
                            path: path.clone(),
                        },
                        rebuild_par(rest),
                    ));
                }
            }
        }

        // (out): n[ m[out n.P | Q] | R ]  ->  m[P|Q] | n[R]
        for (k, bc) in body_comps.iter().enumerate() {
            let (inner_name, inner_body) = match bc {
                Process::Amb(name, body) => (name, body),
                _ => continue,
            };
            let inner_comps = par_components(inner_body);
            for (kk, ic) in inner_comps.iter().enumerate() {
                let cont = match ic {
                    Process::Cap(Capability::Out(AmbTarget::Name(n)), cont) if n == mover_i => {
                        cont
                    }
                    _ => continue,
                };
                let mut escaped_body: Vec<Process> = inner_comps
                    .iter()
                    .enumerate()
                    .filter(|(x, _)| *x != kk)
                    .map(|(_, c)| (*c).clone())
                    .collect();
                escaped_body.insert(0, (**cont).clone());
                let escaped = Process::amb(inner_name.clone(), rebuild_par(escaped_body));
                let remaining: Vec<Process> = body_comps
                    .iter()
                    .enumerate()
                    .filter(|(x, _)| *x != k)
                    .map(|(_, c)| (*c).clone())
                    .collect();
                let shrunk = Process::amb(mover_i.clone(), rebuild_par(remaining));
                let mut rest: Vec<Process> = components
                    .iter()
                    .enumerate()
                    .filter(|(x, _)| *x != i)
                    .map(|(_, c)| c.clone())
                    .collect();
                rest.push(escaped);
                rest.push(shrunk);
                out.push((
                    RedexAnnotation {
                        kind: RedexKind::RedOut,
                        mover: inner_name.clone(),
                        target: mover_i.clone(),
                        path: path.clone(),
                    },
                    rebuild_par(rest),
                ));
            }
        }

        // (ploc): m[ n[ploc(x).P | Q] | R ]  ->  m[ n[P{x<-m} | Q] | R ]
        for (k, bc) in body_comps.iter().enumerate() {
            let (child_name, child_body) = match bc {
                Process::Amb(name, body) => (name, body),
                _ => continue,
            };
            let child_comps = par_components(child_body);
            for (kk, cc) in child_comps.iter().enumerate() {
                let (var, cont) = match cc {
                    Process::Cap(Capability::Ploc(x), cont) => (x, cont),
                    _ => continue,
                };
                let substituted =
                    match substitute(cont, var, &Value::Name(mover_i.clone())) {
                        Ok(p) => p,
                        Err(_) => continue, // ill-typed use of the variable
                    };
                let mut new_child_body: Vec<Process> = child_comps
                    .iter()
                    .enumerate()
                    .filter(|(x, _)| *x != kk)
                    .map(|(_, c)| (*c).clone())
                    .collect();
                new_child_body.insert(0, substituted);
                let new_child = Process::amb(child_name.clone(), rebuild_par(new_child_body));
                let mut new_body: Vec<Process> = body_comps
                    .iter()
                    .enumerate()
                    .filter(|(x, _)| *x != k)
                    .map(|(_, c)| (*c).clone())
                    .collect();
                new_body.push(new_child);
                let new_parent = Process::amb(mover_i.clone(), rebuild_par(new_body));
                let mut rest: Vec<Process> = components
                    .iter()
                    .enumerate()
                    .filter(|(x, _)| *x != i)
                    .map(|(_, c)| c.clone())
                    .collect();
                rest.push(new_parent);
                out.push((
                    RedexAnnotation {
                        kind: RedexKind::RedPloc,
                        mover: child_name.clone(),
                        target: mover_i.clone(),
                        path: path.clone(),
                    },
                    rebuild_par(rest),
                ));
            }
        }

        // (sloc): m[P] | n[sloc(x).Q | S]  ->  m[P] | n[Q{x<-m} | S]
        // One reduction per distinct eligible sibling.
        for (k, bc) in body_comps.iter().enumerate() {
            let (var, cont) = match bc {
                Process::Cap(Capability::Sloc(x), cont) => (x, cont),
                _ => continue,
            };
            for (j, other) in components.iter().enumerate() {
                if i == j {
                    continue;
                }
                let sibling = match other {
                    Process::Amb(name, _) => name,
                    _ => continue,
                };
                let substituted = match substitute(cont, var, &Value::Name(sibling.clone())) {
                    Ok(p) => p,
                    Err(_) => continue,
                };
                let mut new_body: Vec<Process> = body_comps
                    .iter()
                    .enumerate()
                    .filter(|(x, _)| *x != k)
                    .map(|(_, c)| (*c).clone())
                    .collect();
                new_body.insert(0, substituted);
                let new_amb = Process::amb(mover_i.clone(), rebuild_par(new_body));
                let mut rest: Vec<Process> = components
                    .iter()
                    .enumerate()
                    .filter(|(x, _)| *x != i)
                    .map(|(_, c)| c.clone())
                    .collect();
                rest.push(new_amb);
                out.push((
                    RedexAnnotation {
                        kind: RedexKind::RedSloc,
                        mover: mover_i.clone(),
                        target: sibling.clone(),
                        path: path.clone(),
                    },
                    rebuild_par(rest),
                ));
            }
        }

        // Context closure under ambient nesting: rewrite inside this body.
        let mut inner_results = Vec::new();
        path.push(i);
        search(&body_comps.iter().map(|c| (*c).clone()).collect::<Vec<_>>(), path, &mut inner_results);
        path.pop();
        for (ann, new_body) in inner_results {
            let mut rest: Vec<Process> = components
                .iter()
                .enumerate()
                .filter(|(x, _)| *x != i)
                .map(|(_, c)| c.clone())
                .collect();
            rest.push(Process::amb(mover_i.clone(), new_body));
            out.push((ann, rebuild_par(rest)));
        }
    }
}

fn par_components(p: &Process) -> Vec<&Process> {
    let mut out = Vec::new();
    fn walk<'a>(p: &'a Process, out: &mut Vec<&'a Process>) {
        match p {
            Process::Par(a, b) => {
                walk(a, out);
                walk(b, out);
            }
            other => out.push(other),
        }
    }
    walk(p, &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReduceError {
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
    #[error("step budget exceeded after {} step(s)", partial.len())]
    BudgetExceeded { partial: Vec<(RedexAnnotation, CanonicalForm)> },
}

/// Repeatedly applies the canonically least available reduction until the
/// term is irreducible or `max_steps` is hit.
pub fn reduce_fully(
    p: &Process,
    env: &Environment,
    max_steps: usize,
) -> Result<Vec<(RedexAnnotation, CanonicalForm)>, ReduceError> {
    let mut trace = Vec::new();
    let mut current = surface_normal_form(p, env).map_err(NormalizeError::from)?;
    loop {
        let nexts = reductions(current.as_process(), env)?;
        let Some((ann, target)) = nexts.into_iter().next() else {
            return Ok(trace);
        };
        if trace.len() >= max_steps {
            return Err(ReduceError::BudgetExceeded { partial: trace });
        }
        current = target.clone();
        trace.push((ann, target));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::normalize;
    use crate::parser::parse_process;

    fn env() -> Environment {
        Environment::new()
    }

    fn red(text: &str) -> BTreeSet<(RedexAnnotation, CanonicalForm)> {
        reductions(&parse_process(text).unwrap(), &env()).unwrap()
    }

    fn targets(set: &BTreeSet<(RedexAnnotation, CanonicalForm)>) -> BTreeSet<CanonicalForm> {
        set.iter().map(|(_, cf)| cf.clone()).collect()
    }

    fn nf(text: &str) -> CanonicalForm {
        normalize(&parse_process(text).unwrap(), &env(), 0).unwrap()
    }

    #[test]
    fn zero_has_no_reductions() {
        assert!(red("0").is_empty());
    }

    #[test]
    fn red_in_basic() {
        let set = red("m[ in n. in k. 0 | out m. 0 ] | n[ k[0] ]");
        assert_eq!(
            targets(&set),
            BTreeSet::from([nf("n[ m[ in k.0 | out m.0 ] | k[0] ]")])
        );
        let (ann, _) = set.iter().next().unwrap();
        assert_eq!(ann.kind, RedexKind::RedIn);
        assert_eq!(ann.mover, AmbientName::all("m"));
        assert_eq!(ann.target, AmbientName::all("n"));
    }

    #[test]
    fn red_out_basic() {
        let set = red("n[ m[ out n. 0 | k[0] ] | x[0] ]");
        assert_eq!(targets(&set), BTreeSet::from([nf("m[ k[0] ] | n[ x[0] ]")]));
        let (ann, _) = set.iter().next().unwrap();
        assert_eq!(ann.kind, RedexKind::RedOut);
    }

    #[test]
    fn red_ploc_substitutes_parent() {
        let set = red("m[ n[ ploc(x). a!(x). 0 | k[0] ] ]");
        assert_eq!(
            targets(&set),
            BTreeSet::from([nf("m[ n[ a!(m). 0 | k[0] ] ]")])
        );
    }

    #[test]
    fn red_sloc_one_per_sibling() {
        let set = red("m[0] | k[0] | n[ sloc(x). a!(x). 0 ]");
        assert_eq!(
            targets(&set),
            BTreeSet::from([
                nf("m[0] | k[0] | n[ a!(m). 0 ]"),
                nf("m[0] | k[0] | n[ a!(k). 0 ]"),
            ])
        );
    }

    #[test]
    fn reduction_under_restriction_and_nesting() {
        // Closure under Op2 = {nu, |, amb}.
        let set = red("new n in (m[ in n.0 ] | n[0] | k[0])");
        assert_eq!(targets(&set), BTreeSet::from([nf("new n in (n[ m[0] ] | k[0])")]));
        let set2 = red("w[ m[ in n.0 ] | n[0] ]");
        assert_eq!(targets(&set2), BTreeSet::from([nf("w[ n[ m[0] ] ]")]));
    }

    #[test]
    fn congruent_terms_reduce_identically() {
        let a = red("(m[ in n.0 ] | 0) | n[0]");
        let b = red("n[0] | m[ eps. in n.0 ]");
        assert_eq!(targets(&a), targets(&b));
    }

    #[test]
    fn redex_paths_resolve() {
        let src = parse_process("w[ m[ in n.0 ] | n[0] ]").unwrap();
        let cf = surface_normal_form(&src, &env()).unwrap();
        for (ann, _) in reductions(&src, &env()).unwrap() {
            assert!(resolve_path(&cf, &ann.path).is_some());
        }
    }

    #[test]
    fn reduce_fully_runs_to_quiescence() {
        let trace = reduce_fully(
            &parse_process("m[ in n. out n. 0 ] | n[0]").unwrap(),
            &env(),
            10,
        )
        .unwrap();
        assert_eq!(trace.len(), 2);
        assert_eq!(trace[0].0.kind, RedexKind::RedIn);
        assert_eq!(trace[1].0.kind, RedexKind::RedOut);
        assert_eq!(trace[1].1, nf("m[0] | n[0]"));
        assert!(reduce_fully(&Process::Zero, &env(), 10).unwrap().is_empty());
    }

    #[test]
    fn reduce_fully_budget() {
        let e = crate::parser::parse_definitions("D := m[ in n. out n. D ] | n[0]").unwrap();
        let err = reduce_fully(&Process::Const("D".into(), vec![]), &e, 3).unwrap_err();
        match err {
            ReduceError::BudgetExceeded { partial } => assert_eq!(partial.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
    }
}
