//! Capture-avoiding substitution of values for variables.
//!
//! A received value may land in three kinds of position: value expressions,
//! capability atoms (where a path value splices in flat, the empty path
//! vanishing), and `in`/`out` targets (which accept only names). A value whose
//! shape cannot occupy a site is a type mismatch; transition rules treat such
//! instantiations as simply absent.

use std::collections::BTreeSet;

use super::free::{value_free_vars, value_names};
use super::{
    fresh_ident, AmbTarget, AmbientName, Capability, FreeNames, Process, Value, Var,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubstError {
    #[error("value `{value}` cannot occupy a {site} position (variable `{var}`)")]
    TypeMismatch { var: Var, value: String, site: &'static str },
}

/// `p` with every free occurrence of `var` replaced by `v`, alpha-renaming
/// binders that would capture names or variables of `v`.
pub fn substitute(p: &Process, var: &Var, v: &Value) -> Result<Process, SubstError> {
    let mut v_vars = BTreeSet::new();
    value_free_vars(v, &[], &mut v_vars);
    let mut v_names = FreeNames::default();
    value_names(v, &[], &[], &mut v_names);
    let ctx = SubstCtx { var, v, v_vars, v_names };
    subst_proc(p, &ctx)
}

struct SubstCtx<'a> {
    var: &'a Var,
    v: &'a Value,
    v_vars: BTreeSet<Var>,
    v_names: FreeNames,
}

fn subst_proc(p: &Process, ctx: &SubstCtx<'_>) -> Result<Process, SubstError> {
    match p {
        Process::Zero => Ok(Process::Zero),
        Process::Const(name, args) => {
            let args = args
                .iter()
                .map(|a| subst_value(a, ctx))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Process::Const(name.clone(), args))
        }
        Process::Cap(c, cont) => {
            // ploc/sloc bind their variable in the continuation.
            if let Capability::Ploc(x) | Capability::Sloc(x) = c {
                let rebuild = |x: Var, cont: Process| match c {
                    Capability::Ploc(_) => {
                        Process::Cap(Capability::Ploc(x), Box::new(cont))
                    }
                    _ => Process::Cap(Capability::Sloc(x), Box::new(cont)),
                };
                if x == ctx.var {
                    return Ok(p.clone());
                }
                if ctx.v_vars.contains(x) {
                    let fresh = fresh_var_for(cont, ctx, x);
                    let renamed = rename_free_var(cont, x, &fresh);
                    return Ok(rebuild(fresh, subst_proc(&renamed, ctx)?));
                }
                return Ok(rebuild(x.clone(), subst_proc(cont, ctx)?));
            }
            let caps = subst_cap(c, ctx)?;
            let cont = subst_proc(cont, ctx)?;
            Ok(Process::prefix_caps(caps, cont))
        }
        Process::Input(port, x, cont) => {
            if x == ctx.var {
                return Ok(p.clone());
            }
            if ctx.v_vars.contains(x) {
                let fresh = fresh_var_for(cont, ctx, x);
                let renamed = rename_free_var(cont, x, &fresh);
                return Ok(Process::Input(
                    port.clone(),
                    fresh,
                    Box::new(subst_proc(&renamed, ctx)?),
                ));
            }
            Ok(Process::Input(port.clone(), x.clone(), Box::new(subst_proc(cont, ctx)?)))
        }
        Process::Output(port, val, cont) => Ok(Process::Output(
            port.clone(),
            subst_value(val, ctx)?,
            Box::new(subst_proc(cont, ctx)?),
        )),
        Process::Tau(cont) => Ok(Process::Tau(Box::new(subst_proc(cont, ctx)?))),
        Process::Amb(name, body) => {
            Ok(Process::Amb(name.clone(), Box::new(subst_proc(body, ctx)?)))
        }
        Process::Sum(a, b) => Ok(Process::Sum(
            Box::new(subst_proc(a, ctx)?),
            Box::new(subst_proc(b, ctx)?),
        )),
        Process::Par(a, b) => Ok(Process::Par(
            Box::new(subst_proc(a, ctx)?),
            Box::new(subst_proc(b, ctx)?),
        )),
        Process::RestrictAmb(name, body) => {
            if ctx.v_names.contains_ambient(name) {
                let avoid = avoid_idents(body, ctx);
                let fresh = AmbientName {
                    base: fresh_ident(&name.base, &avoid),
                    ports: name.ports.clone(),
                };
                let renamed = rename_free_ambient(body, name, &fresh);
                return Ok(Process::RestrictAmb(fresh, Box::new(subst_proc(&renamed, ctx)?)));
            }
            Ok(Process::RestrictAmb(name.clone(), Box::new(subst_proc(body, ctx)?)))
        }
        Process::RestrictPort(base, body) => {
            if ctx.v_names.contains_port_base(base) {
                let avoid = avoid_idents(body, ctx);
                let fresh = fresh_ident(base, &avoid);
                let renamed = rename_free_port_base(body, base, &fresh);
                return Ok(Process::RestrictPort(fresh, Box::new(subst_proc(&renamed, ctx)?)));
            }
            Ok(Process::RestrictPort(base.clone(), Box::new(subst_proc(body, ctx)?)))
        }
        Process::Relabel(body, map) => {
            Ok(Process::Relabel(Box::new(subst_proc(body, ctx)?), map.clone()))
        }
        Process::Cond(l, r, t, e) => Ok(Process::Cond(
            subst_value(l, ctx)?,
            subst_value(r, ctx)?,
            Box::new(subst_proc(t, ctx)?),
            Box::new(subst_proc(e, ctx)?),
        )),
    }
}

fn subst_value(val: &Value, ctx: &SubstCtx<'_>) -> Result<Value, SubstError> {
    match val {
        Value::Var(x) if x == ctx.var => Ok(ctx.v.clone()),
        Value::Var(_) | Value::Name(_) | Value::Nil => Ok(val.clone()),
        Value::Path(caps) => {
            let mut out = Vec::new();
            for c in caps {
                out.extend(subst_cap(c, ctx)?);
            }
            Ok(Value::Path(out))
        }
        Value::Tuple(vs) => Ok(Value::Tuple(
            vs.iter().map(|v| subst_value(v, ctx)).collect::<Result<Vec<_>, _>>()?,
        )),
        Value::List(h, t) => Ok(Value::cons(subst_value(h, ctx)?, subst_value(t, ctx)?)),
    }
}

/// Substitutes inside one capability atom, yielding the (possibly empty)
/// spliced atom sequence.
fn subst_cap(c: &Capability, ctx: &SubstCtx<'_>) -> Result<Vec<Capability>, SubstError> {
    match c {
        Capability::Var(x) if x == ctx.var => match ctx.v {
            Value::Path(caps) => Ok(caps.clone()),
            Value::Var(z) => Ok(vec![Capability::Var(z.clone())]),
            other => Err(SubstError::TypeMismatch {
                var: ctx.var.clone(),
                value: other.compact(),
                site: "capability",
            }),
        },
        Capability::Var(_) | Capability::Epsilon => Ok(vec![c.clone()]),
        Capability::In(t) => Ok(vec![Capability::In(subst_target(t, ctx)?)]),
        Capability::Out(t) => Ok(vec![Capability::Out(subst_target(t, ctx)?)]),
        // Binding forms are handled at the prefix level; inside a path they
        // cannot bind, so they pass through untouched.
        Capability::Ploc(_) | Capability::Sloc(_) => Ok(vec![c.clone()]),
        Capability::Path(caps) => {
            let mut out = Vec::new();
            for c in caps {
                out.extend(subst_cap(c, ctx)?);
            }
            Ok(out)
        }
    }
}

fn subst_target(t: &AmbTarget, ctx: &SubstCtx<'_>) -> Result<AmbTarget, SubstError> {
    match t {
        AmbTarget::Var(x) if x == ctx.var => match ctx.v {
            Value::Name(n) => Ok(AmbTarget::Name(n.clone())),
            Value::Var(z) => Ok(AmbTarget::Var(z.clone())),
            other => Err(SubstError::TypeMismatch {
                var: ctx.var.clone(),
                value: other.compact(),
                site: "ambient-name",
            }),
        },
        _ => Ok(t.clone()),
    }
}

fn fresh_var_for(cont: &Process, ctx: &SubstCtx<'_>, base: &str) -> Var {
    let avoid = avoid_idents(cont, ctx);
    fresh_ident(base, &avoid)
}

fn avoid_idents(body: &Process, ctx: &SubstCtx<'_>) -> BTreeSet<String> {
    let mut avoid = all_idents(body);
    avoid.extend(ctx.v_vars.iter().cloned());
    avoid.extend(ctx.v_names.ambients.iter().map(|n| n.base.clone()));
    avoid.extend(ctx.v_names.port_bases.iter().cloned());
    avoid.insert(ctx.var.clone());
    avoid
}

/// Every identifier spelling occurring anywhere in `p` (bound or free).
pub(crate) fn all_idents(p: &Process) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_idents(p, &mut out);
    out
}

fn ident_of_name(n: &AmbientName, out: &mut BTreeSet<String>) {
    out.insert(n.base.clone());
    out.extend(n.ports.mentioned_bases());
}

fn ident_of_cap(c: &Capability, out: &mut BTreeSet<String>) {
    match c {
        Capability::In(AmbTarget::Name(n)) | Capability::Out(AmbTarget::Name(n)) => {
            ident_of_name(n, out)
        }
        Capability::In(AmbTarget::Var(x))
        | Capability::Out(AmbTarget::Var(x))
        | Capability::Ploc(x)
        | Capability::Sloc(x)
        | Capability::Var(x) => {
            out.insert(x.clone());
        }
        Capability::Epsilon => {}
        Capability::Path(caps) => {
            for c in caps {
                ident_of_cap(c, out);
            }
        }
    }
}

fn ident_of_value(v: &Value, out: &mut BTreeSet<String>) {
    match v {
        Value::Name(n) => ident_of_name(n, out),
        Value::Path(caps) => {
            for c in caps {
                ident_of_cap(c, out);
            }
        }
        Value::Tuple(vs) => {
            for v in vs {
                ident_of_value(v, out);
            }
        }
        Value::List(h, t) => {
            ident_of_value(h, out);
            ident_of_value(t, out);
        }
        Value::Nil => {}
        Value::Var(x) => {
            out.insert(x.clone());
        }
    }
}

fn collect_idents(p: &Process, out: &mut BTreeSet<String>) {
    match p {
        Process::Zero => {}
        Process::Const(name, args) => {
            out.insert(name.clone());
            for a in args {
                ident_of_value(a, out);
            }
        }
        Process::Cap(c, cont) => {
            ident_of_cap(c, out);
            collect_idents(cont, out);
        }
        Process::Input(port, x, cont) => {
            out.insert(port.clone());
            out.insert(x.clone());
            collect_idents(cont, out);
        }
        Process::Output(port, v, cont) => {
            out.insert(port.clone());
            ident_of_value(v, out);
            collect_idents(cont, out);
        }
        Process::Tau(cont) => collect_idents(cont, out),
        Process::Amb(n, body) => {
            ident_of_name(n, out);
            collect_idents(body, out);
        }
        Process::Sum(a, b) | Process::Par(a, b) => {
            collect_idents(a, out);
            collect_idents(b, out);
        }
        Process::RestrictAmb(n, body) => {
            ident_of_name(n, out);
            collect_idents(body, out);
        }
        Process::RestrictPort(base, body) => {
            out.insert(base.clone());
            collect_idents(body, out);
        }
        Process::Relabel(body, map) => {
            out.extend(map.mentioned_bases());
            collect_idents(body, out);
        }
        Process::Cond(l, r, t, e) => {
            ident_of_value(l, out);
            ident_of_value(r, out);
            collect_idents(t, out);
            collect_idents(e, out);
        }
    }
}

/// Renames free occurrences of the exact decorated name `from` to `to`.
pub fn rename_free_ambient(p: &Process, from: &AmbientName, to: &AmbientName) -> Process {
    let ren_name = |n: &AmbientName| if n == from { to.clone() } else { n.clone() };
    let ren_target = |t: &AmbTarget| match t {
        AmbTarget::Name(n) => AmbTarget::Name(ren_name(n)),
        AmbTarget::Var(_) => t.clone(),
    };
    fn ren_cap(
        c: &Capability,
        ren_target: &impl Fn(&AmbTarget) -> AmbTarget,
    ) -> Capability {
        match c {
            Capability::In(t) => Capability::In(ren_target(t)),
            Capability::Out(t) => Capability::Out(ren_target(t)),
            Capability::Path(caps) => {
                Capability::Path(caps.iter().map(|c| ren_cap(c, ren_target)).collect())
            }
            other => other.clone(),
        }
    }
    fn ren_value(
        v: &Value,
        ren_name: &impl Fn(&AmbientName) -> AmbientName,
        ren_target: &impl Fn(&AmbTarget) -> AmbTarget,
    ) -> Value {
        match v {
            Value::Name(n) => Value::Name(ren_name(n)),
            Value::Path(caps) => {
                Value::Path(caps.iter().map(|c| ren_cap(c, ren_target)).collect())
            }
            Value::Tuple(vs) => {
                Value::Tuple(vs.iter().map(|v| ren_value(v, ren_name, ren_target)).collect())
            }
            Value::List(h, t) => Value::cons(
                ren_value(h, ren_name, ren_target),
                ren_value(t, ren_name, ren_target),
            ),
            Value::Nil | Value::Var(_) => v.clone(),
        }
    }
    match p {
        Process::Zero => Process::Zero,
        Process::Const(name, args) => Process::Const(
            name.clone(),
            args.iter().map(|a| ren_value(a, &ren_name, &ren_target)).collect(),
        ),
        Process::Cap(c, cont) => Process::Cap(
            ren_cap(c, &ren_target),
            Box::new(rename_free_ambient(cont, from, to)),
        ),
        Process::Input(port, x, cont) => Process::Input(
            port.clone(),
            x.clone(),
            Box::new(rename_free_ambient(cont, from, to)),
        ),
        Process::Output(port, v, cont) => Process::Output(
            port.clone(),
            ren_value(v, &ren_name, &ren_target),
            Box::new(rename_free_ambient(cont, from, to)),
        ),
        Process::Tau(cont) => Process::Tau(Box::new(rename_free_ambient(cont, from, to))),
        Process::Amb(n, body) => {
            Process::Amb(ren_name(n), Box::new(rename_free_ambient(body, from, to)))
        }
        Process::Sum(a, b) => Process::Sum(
            Box::new(rename_free_ambient(a, from, to)),
            Box::new(rename_free_ambient(b, from, to)),
        ),
        Process::Par(a, b) => Process::Par(
            Box::new(rename_free_ambient(a, from, to)),
            Box::new(rename_free_ambient(b, from, to)),
        ),
        Process::RestrictAmb(n, body) => {
            if n == from {
                // Shadowed.
                Process::RestrictAmb(n.clone(), body.clone())
            } else {
                Process::RestrictAmb(n.clone(), Box::new(rename_free_ambient(body, from, to)))
            }
        }
        Process::RestrictPort(base, body) => {
            Process::RestrictPort(base.clone(), Box::new(rename_free_ambient(body, from, to)))
        }
        Process::Relabel(body, map) => {
            Process::Relabel(Box::new(rename_free_ambient(body, from, to)), map.clone())
        }
        Process::Cond(l, r, t, e) => Process::Cond(
            ren_value(l, &ren_name, &ren_target),
            ren_value(r, &ren_name, &ren_target),
            Box::new(rename_free_ambient(t, from, to)),
            Box::new(rename_free_ambient(e, from, to)),
        ),
    }
}

/// Renames free occurrences of port base `from` to `to`, including inside
/// port-set decorations and relabelling maps.
pub fn rename_free_port_base(p: &Process, from: &str, to: &str) -> Process {
    use super::{PortName, PortSet, RelabelMap};
    let ren_base = |b: &str| if b == from { to.to_string() } else { b.to_string() };
    let ren_port = |p: &PortName| PortName { base: ren_base(&p.base), polarity: p.polarity };
    let ren_ports = |ps: &PortSet| match ps {
        PortSet::All => PortSet::All,
        PortSet::Finite(set) => PortSet::Finite(set.iter().map(ren_port).collect()),
    };
    let ren_name =
        |n: &AmbientName| AmbientName { base: n.base.clone(), ports: ren_ports(&n.ports) };
    let ren_target = |t: &AmbTarget| match t {
        AmbTarget::Name(n) => AmbTarget::Name(ren_name(n)),
        AmbTarget::Var(_) => t.clone(),
    };
    fn ren_cap(c: &Capability, rt: &impl Fn(&AmbTarget) -> AmbTarget) -> Capability {
        match c {
            Capability::In(t) => Capability::In(rt(t)),
            Capability::Out(t) => Capability::Out(rt(t)),
            Capability::Path(caps) => {
                Capability::Path(caps.iter().map(|c| ren_cap(c, rt)).collect())
            }
            other => other.clone(),
        }
    }
    fn ren_value(
        v: &Value,
        rn: &impl Fn(&AmbientName) -> AmbientName,
        rt: &impl Fn(&AmbTarget) -> AmbTarget,
    ) -> Value {
        match v {
            Value::Name(n) => Value::Name(rn(n)),
            Value::Path(caps) => Value::Path(caps.iter().map(|c| ren_cap(c, rt)).collect()),
            Value::Tuple(vs) => Value::Tuple(vs.iter().map(|v| ren_value(v, rn, rt)).collect()),
            Value::List(h, t) => Value::cons(ren_value(h, rn, rt), ren_value(t, rn, rt)),
            Value::Nil | Value::Var(_) => v.clone(),
        }
    }
    match p {
        Process::Zero => Process::Zero,
        Process::Const(name, args) => Process::Const(
            name.clone(),
            args.iter().map(|a| ren_value(a, &ren_name, &ren_target)).collect(),
        ),
        Process::Cap(c, cont) => Process::Cap(
            ren_cap(c, &ren_target),
            Box::new(rename_free_port_base(cont, from, to)),
        ),
        Process::Input(port, x, cont) => Process::Input(
            ren_base(port),
            x.clone(),
            Box::new(rename_free_port_base(cont, from, to)),
        ),
        Process::Output(port, v, cont) => Process::Output(
            ren_base(port),
            ren_value(v, &ren_name, &ren_target),
            Box::new(rename_free_port_base(cont, from, to)),
        ),
        Process::Tau(cont) => Process::Tau(Box::new(rename_free_port_base(cont, from, to))),
        Process::Amb(n, body) => {
            Process::Amb(ren_name(n), Box::new(rename_free_port_base(body, from, to)))
        }
        Process::Sum(a, b) => Process::Sum(
            Box::new(rename_free_port_base(a, from, to)),
            Box::new(rename_free_port_base(b, from, to)),
        ),
        Process::Par(a, b) => Process::Par(
            Box::new(rename_free_port_base(a, from, to)),
            Box::new(rename_free_port_base(b, from, to)),
        ),
        Process::RestrictAmb(n, body) => Process::RestrictAmb(
            ren_name(n),
            Box::new(rename_free_port_base(body, from, to)),
        ),
        Process::RestrictPort(base, body) => {
            if base == from {
                Process::RestrictPort(base.clone(), body.clone())
            } else {
                Process::RestrictPort(base.clone(), Box::new(rename_free_port_base(body, from, to)))
            }
        }
        Process::Relabel(body, map) => {
            let entries: Vec<(String, String)> = map
                .entries()
                .map(|(a, b)| (ren_base(a), ren_base(b)))
                .collect();
            Process::Relabel(
                Box::new(rename_free_port_base(body, from, to)),
                RelabelMap::new(entries),
            )
        }
        Process::Cond(l, r, t, e) => Process::Cond(
            ren_value(l, &ren_name, &ren_target),
            ren_value(r, &ren_name, &ren_target),
            Box::new(rename_free_port_base(t, from, to)),
            Box::new(rename_free_port_base(e, from, to)),
        ),
    }
}

/// Renames free occurrences of variable `from` to `to`.
pub fn rename_free_var(p: &Process, from: &Var, to: &Var) -> Process {
    // A variable is a value, so renaming is substitution by Value::Var, which
    // cannot fail on any site that held a variable.
    substitute(p, from, &Value::Var(to.clone())).expect("var-for-var substitution cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::free_vars;

    fn amb(base: &str) -> AmbientName {
        AmbientName::all(base)
    }

    #[test]
    fn substitute_capability_variable_with_single_cap() {
        // x.0 {x <- in n} = in n.0
        let p = Process::cap(Capability::Var("x".into()), Process::Zero);
        let v = Value::Path(vec![Capability::in_name("n")]);
        let got = substitute(&p, &"x".into(), &v).unwrap();
        assert_eq!(got, Process::cap(Capability::in_name("n"), Process::Zero));
    }

    #[test]
    fn substitute_splices_path_flat() {
        // u.C' {u <- out m.in n} = out m.in n.C'
        let cont = Process::cap(Capability::in_name("k"), Process::Zero);
        let p = Process::cap(Capability::Var("u".into()), cont.clone());
        let v = Value::Path(vec![Capability::out_name("m"), Capability::in_name("n")]);
        let got = substitute(&p, &"u".into(), &v).unwrap();
        let want = Process::cap(
            Capability::out_name("m"),
            Process::cap(Capability::in_name("n"), cont),
        );
        assert_eq!(got, want);
    }

    #[test]
    fn empty_path_splices_to_nothing() {
        let p = Process::cap(Capability::Var("u".into()), Process::Zero);
        let got = substitute(&p, &"u".into(), &Value::Path(vec![])).unwrap();
        assert_eq!(got, Process::Zero);
    }

    #[test]
    fn shadowed_binder_blocks_substitution() {
        // ploc(x). a!(x). 0 is unchanged under {x <- m}.
        let p = Process::cap(
            Capability::Ploc("x".into()),
            Process::output("a", Value::Var("x".into()), Process::Zero),
        );
        let got = substitute(&p, &"x".into(), &Value::name("m")).unwrap();
        assert_eq!(got, p);
    }

    #[test]
    fn name_substitutes_into_out_target() {
        let p = Process::cap(Capability::Out(AmbTarget::Var("p".into())), Process::Zero);
        let got = substitute(&p, &"p".into(), &Value::name("dr")).unwrap();
        assert_eq!(got, Process::cap(Capability::out_name("dr"), Process::Zero));
    }

    #[test]
    fn tuple_in_capability_position_is_type_mismatch() {
        let p = Process::cap(Capability::Var("x".into()), Process::Zero);
        let v = Value::Tuple(vec![Value::name("m"), Value::name("n")]);
        assert!(matches!(
            substitute(&p, &"x".into(), &v),
            Err(SubstError::TypeMismatch { .. })
        ));
    }

    #[test]
    fn restriction_binder_renamed_to_avoid_capture() {
        // (new n in a!(x). in n. 0) {x <- n} must not capture the incoming n.
        let body = Process::output(
            "a",
            Value::Var("x".into()),
            Process::cap(Capability::in_name("n"), Process::Zero),
        );
        let p = Process::restrict_amb(amb("n"), body);
        let got = substitute(&p, &"x".into(), &Value::name("n")).unwrap();
        match got {
            Process::RestrictAmb(binder, inner) => {
                assert_ne!(binder, amb("n"));
                // The output now mentions the free n, the in-capability the binder.
                match *inner {
                    Process::Output(_, Value::Name(n), cont) => {
                        assert_eq!(n, amb("n"));
                        assert_eq!(
                            *cont,
                            Process::cap(
                                Capability::In(AmbTarget::Name(binder)),
                                Process::Zero
                            )
                        );
                    }
                    other => panic!("unexpected body {other:?}"),
                }
            }
            other => panic!("expected restriction, got {other:?}"),
        }
    }

    #[test]
    fn substitute_identity_when_var_absent() {
        let p = Process::cap(Capability::in_name("n"), Process::Zero);
        assert_eq!(substitute(&p, &"x".into(), &Value::name("m")).unwrap(), p);
        assert!(free_vars(&p).is_empty());
    }

    #[test]
    fn input_binder_renamed_when_value_mentions_it() {
        // (a?(y). b!((x, y)). 0) {x <- y}: y must be renamed before x lands.
        let p = Process::input(
            "a",
            "y",
            Process::output(
                "b",
                Value::Tuple(vec![Value::Var("x".into()), Value::Var("y".into())]),
                Process::Zero,
            ),
        );
        let got = substitute(&p, &"x".into(), &Value::Var("y".into())).unwrap();
        match got {
            Process::Input(_, binder, cont) => {
                assert_ne!(binder, "y");
                match *cont {
                    Process::Output(_, Value::Tuple(vs), _) => {
                        assert_eq!(vs[0], Value::Var("y".into()));
                        assert_eq!(vs[1], Value::Var(binder));
                    }
                    other => panic!("unexpected {other:?}"),
                }
            }
            other => panic!("expected input, got {other:?}"),
        }
    }
}
