//! Free ambient names, free port bases and free variables.
//!
//! A port base occurs wherever it is spelled: in prefix channels, relabelling
//! maps, values, and in the port-set decorations of ambient names (including
//! the decorations of binders). `new port a in P` binds all of these at once.
//! An ambient-name binder `new m{A} in P` binds exactly the decorated name
//! `m{A}`; a different decoration of the same base is a different name.

use std::collections::BTreeSet;

use super::{AmbTarget, AmbientName, Capability, Process, Value, Var};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FreeNames {
    pub ambients: BTreeSet<AmbientName>,
    pub port_bases: BTreeSet<String>,
}

impl FreeNames {
    pub fn contains_ambient(&self, name: &AmbientName) -> bool {
        self.ambients.contains(name)
    }

    pub fn contains_port_base(&self, base: &str) -> bool {
        self.port_bases.contains(base)
    }
}

/// The ambient names and port bases with a free occurrence in `p`.
pub fn free_names(p: &Process) -> FreeNames {
    let mut out = FreeNames::default();
    let mut bound_ambs = Vec::new();
    let mut bound_ports = Vec::new();
    scan(p, &mut bound_ambs, &mut bound_ports, &mut out);
    out
}

/// Just the free port bases of `p`.
pub fn free_port_bases(p: &Process) -> BTreeSet<String> {
    free_names(p).port_bases
}

/// The free (value/capability) variables of `p`.
pub fn free_vars(p: &Process) -> BTreeSet<Var> {
    let mut out = BTreeSet::new();
    let mut bound = Vec::new();
    scan_vars(p, &mut bound, &mut out);
    out
}

pub(crate) fn value_free_vars(v: &Value, bound: &[Var], out: &mut BTreeSet<Var>) {
    match v {
        Value::Var(x) => {
            if !bound.contains(x) {
                out.insert(x.clone());
            }
        }
        Value::Name(_) | Value::Nil => {}
        Value::Path(caps) => {
            for c in caps {
                cap_free_vars(c, bound, out);
            }
        }
        Value::Tuple(vs) => {
            for v in vs {
                value_free_vars(v, bound, out);
            }
        }
        Value::List(h, t) => {
            value_free_vars(h, bound, out);
            value_free_vars(t, bound, out);
        }
    }
}

pub(crate) fn cap_free_vars(c: &Capability, bound: &[Var], out: &mut BTreeSet<Var>) {
    match c {
        Capability::Var(x) => {
            if !bound.contains(x) {
                out.insert(x.clone());
            }
        }
        Capability::In(AmbTarget::Var(x)) | Capability::Out(AmbTarget::Var(x)) => {
            if !bound.contains(x) {
                out.insert(x.clone());
            }
        }
        Capability::In(_) | Capability::Out(_) | Capability::Epsilon => {}
        // ploc/sloc bind their variable in the prefix continuation, not here.
        Capability::Ploc(_) | Capability::Sloc(_) => {}
        Capability::Path(caps) => {
            for c in caps {
                cap_free_vars(c, bound, out);
            }
        }
    }
}

fn scan_vars(p: &Process, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
    match p {
        Process::Zero => {}
        Process::Const(_, args) => {
            for a in args {
                value_free_vars(a, bound, out);
            }
        }
        Process::Cap(c, cont) => {
            cap_free_vars(c, bound, out);
            let binder = match c {
                Capability::Ploc(x) | Capability::Sloc(x) => Some(x.clone()),
                _ => None,
            };
            if let Some(x) = binder {
                bound.push(x);
                scan_vars(cont, bound, out);
                bound.pop();
            } else {
                scan_vars(cont, bound, out);
            }
        }
        Process::Input(_, x, cont) => {
            bound.push(x.clone());
            scan_vars(cont, bound, out);
            bound.pop();
        }
        Process::Output(_, v, cont) => {
            value_free_vars(v, bound, out);
            scan_vars(cont, bound, out);
        }
        Process::Tau(cont) => scan_vars(cont, bound, out),
        Process::Amb(_, body) => scan_vars(body, bound, out),
        Process::Sum(a, b) | Process::Par(a, b) => {
            scan_vars(a, bound, out);
            scan_vars(b, bound, out);
        }
        Process::RestrictAmb(_, body)
        | Process::RestrictPort(_, body)
        | Process::Relabel(body, _) => scan_vars(body, bound, out),
        Process::Cond(l, r, t, e) => {
            value_free_vars(l, bound, out);
            value_free_vars(r, bound, out);
            scan_vars(t, bound, out);
            scan_vars(e, bound, out);
        }
    }
}

fn add_ambient(
    name: &AmbientName,
    bound_ambs: &[AmbientName],
    bound_ports: &[String],
    out: &mut FreeNames,
) {
    if !bound_ambs.contains(name) {
        out.ambients.insert(name.clone());
    }
    for base in name.ports.mentioned_bases() {
        if !bound_ports.contains(&base) {
            out.port_bases.insert(base);
        }
    }
}

fn add_port_base(base: &str, bound_ports: &[String], out: &mut FreeNames) {
    if !bound_ports.iter().any(|b| b == base) {
        out.port_bases.insert(base.to_string());
    }
}

pub(crate) fn cap_names(
    c: &Capability,
    bound_ambs: &[AmbientName],
    bound_ports: &[String],
    out: &mut FreeNames,
) {
    match c {
        Capability::In(AmbTarget::Name(n)) | Capability::Out(AmbTarget::Name(n)) => {
            add_ambient(n, bound_ambs, bound_ports, out)
        }
        Capability::In(AmbTarget::Var(_))
        | Capability::Out(AmbTarget::Var(_))
        | Capability::Ploc(_)
        | Capability::Sloc(_)
        | Capability::Epsilon
        | Capability::Var(_) => {}
        Capability::Path(caps) => {
            for c in caps {
                cap_names(c, bound_ambs, bound_ports, out);
            }
        }
    }
}

pub(crate) fn value_names(
    v: &Value,
    bound_ambs: &[AmbientName],
    bound_ports: &[String],
    out: &mut FreeNames,
) {
    match v {
        Value::Name(n) => add_ambient(n, bound_ambs, bound_ports, out),
        Value::Path(caps) => {
            for c in caps {
                cap_names(c, bound_ambs, bound_ports, out);
            }
        }
        Value::Tuple(vs) => {
            for v in vs {
                value_names(v, bound_ambs, bound_ports, out);
            }
        }
        Value::List(h, t) => {
            value_names(h, bound_ambs, bound_ports, out);
            value_names(t, bound_ambs, bound_ports, out);
        }
        Value::Nil | Value::Var(_) => {}
    }
}

fn scan(
    p: &Process,
    bound_ambs: &mut Vec<AmbientName>,
    bound_ports: &mut Vec<String>,
    out: &mut FreeNames,
) {
    match p {
        Process::Zero => {}
        Process::Const(_, args) => {
            for a in args {
                value_names(a, bound_ambs, bound_ports, out);
            }
        }
        Process::Cap(c, cont) => {
            cap_names(c, bound_ambs, bound_ports, out);
            scan(cont, bound_ambs, bound_ports, out);
        }
        Process::Input(port, _, cont) => {
            add_port_base(port, bound_ports, out);
            scan(cont, bound_ambs, bound_ports, out);
        }
        Process::Output(port, v, cont) => {
            add_port_base(port, bound_ports, out);
            value_names(v, bound_ambs, bound_ports, out);
            scan(cont, bound_ambs, bound_ports, out);
        }
        Process::Tau(cont) => scan(cont, bound_ambs, bound_ports, out),
        Process::Amb(name, body) => {
            add_ambient(name, bound_ambs, bound_ports, out);
            scan(body, bound_ambs, bound_ports, out);
        }
        Process::Sum(a, b) | Process::Par(a, b) => {
            scan(a, bound_ambs, bound_ports, out);
            scan(b, bound_ambs, bound_ports, out);
        }
        Process::RestrictAmb(name, body) => {
            // The binder's own decoration mentions its ports.
            for base in name.ports.mentioned_bases() {
                add_port_base(&base, bound_ports, out);
            }
            bound_ambs.push(name.clone());
            scan(body, bound_ambs, bound_ports, out);
            bound_ambs.pop();
        }
        Process::RestrictPort(base, body) => {
            bound_ports.push(base.clone());
            scan(body, bound_ambs, bound_ports, out);
            bound_ports.pop();
        }
        Process::Relabel(body, map) => {
            for base in map.mentioned_bases() {
                add_port_base(&base, bound_ports, out);
            }
            scan(body, bound_ambs, bound_ports, out);
        }
        Process::Cond(l, r, t, e) => {
            value_names(l, bound_ambs, bound_ports, out);
            value_names(r, bound_ambs, bound_ports, out);
            scan(t, bound_ambs, bound_ports, out);
            scan(e, bound_ambs, bound_ports, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::PortName;

    fn amb(base: &str) -> AmbientName {
        AmbientName::all(base)
    }

    #[test]
    fn zero_has_no_free_names() {
        let fns = free_names(&Process::Zero);
        assert!(fns.ambients.is_empty());
        assert!(fns.port_bases.is_empty());
    }

    #[test]
    fn ambient_and_capability_names_are_free() {
        let m = AmbientName::with_ports("m", [PortName::plain("a")]);
        let p = Process::amb(m.clone(), Process::cap(Capability::in_name("n"), Process::Zero));
        let fns = free_names(&p);
        assert!(fns.contains_ambient(&m));
        assert!(fns.contains_ambient(&amb("n")));
        assert!(fns.contains_port_base("a"));
    }

    #[test]
    fn restriction_removes_occurrences_in_scope() {
        // new n in ( m{a}[ in n.0 ] ): n is bound, m{a} and port a free.
        let m = AmbientName::with_ports("m", [PortName::plain("a")]);
        let inner = Process::amb(m.clone(), Process::cap(Capability::in_name("n"), Process::Zero));
        let p = Process::restrict_amb(amb("n"), inner);
        let fns = free_names(&p);
        assert!(!fns.contains_ambient(&amb("n")));
        assert!(fns.contains_ambient(&m));
        assert_eq!(fns.port_bases, ["a".to_string()].into());
    }

    #[test]
    fn differently_decorated_binder_does_not_capture() {
        // new n{a} in n[0]: the undecorated n stays free.
        let n_a = AmbientName::with_ports("n", [PortName::plain("a")]);
        let p = Process::restrict_amb(n_a, Process::amb(amb("n"), Process::Zero));
        let fns = free_names(&p);
        assert!(fns.contains_ambient(&amb("n")));
    }

    #[test]
    fn port_restriction_binds_decoration_occurrences() {
        let m = AmbientName::with_ports("m", [PortName::plain("a")]);
        let p = Process::restrict_port("a", Process::amb(m, Process::Zero));
        let fns = free_names(&p);
        assert!(!fns.contains_port_base("a"));
    }

    #[test]
    fn input_binds_variable_output_uses_it() {
        let p = Process::input(
            "a",
            "x",
            Process::output("b", Value::Var("x".into()), Process::Zero),
        );
        assert!(free_vars(&p).is_empty());
        let q = Process::output("b", Value::Var("x".into()), Process::Zero);
        assert_eq!(free_vars(&q), ["x".to_string()].into());
    }

    #[test]
    fn ploc_binds_its_variable() {
        let p = Process::cap(
            Capability::Ploc("x".into()),
            Process::output("a", Value::Var("x".into()), Process::Zero),
        );
        assert!(free_vars(&p).is_empty());
    }
}
