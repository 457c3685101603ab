//! Alpha equality: syntactic identity up to consistent renaming of bound
//! ambient names, bound port bases and bound variables.

use super::{AmbTarget, AmbientName, Capability, PortSet, Process, Value};

#[derive(Default)]
struct Ctx {
    ambs: Vec<(AmbientName, AmbientName)>,
    ports: Vec<(String, String)>,
    vars: Vec<(String, String)>,
}

impl Ctx {
    /// Both sides must refer to the same binder level, or both be free and
    /// spelled identically (after mapping decoration ports).
    fn amb_eq(&self, l: &AmbientName, r: &AmbientName) -> bool {
        for (bl, br) in self.ambs.iter().rev() {
            let hit_l = bl == l;
            let hit_r = br == r;
            if hit_l || hit_r {
                return hit_l && hit_r;
            }
        }
        l.base == r.base && self.ports_eq(&l.ports, &r.ports)
    }

    fn port_base_eq(&self, l: &str, r: &str) -> bool {
        for (bl, br) in self.ports.iter().rev() {
            let hit_l = bl == l;
            let hit_r = br == r;
            if hit_l || hit_r {
                return hit_l && hit_r;
            }
        }
        l == r
    }

    fn ports_eq(&self, l: &PortSet, r: &PortSet) -> bool {
        match (l, r) {
            (PortSet::All, PortSet::All) => true,
            (PortSet::Finite(ls), PortSet::Finite(rs)) => {
                if ls.len() != rs.len() {
                    return false;
                }
                // Bound port bases rename consistently, so mapping preserves
                // the sorted order only when spellings happen to align; match
                // as sets instead.
                ls.iter().all(|lp| {
                    rs.iter().any(|rp| {
                        lp.polarity == rp.polarity && self.port_base_eq(&lp.base, &rp.base)
                    })
                }) && rs.iter().all(|rp| {
                    ls.iter().any(|lp| {
                        lp.polarity == rp.polarity && self.port_base_eq(&lp.base, &rp.base)
                    })
                })
            }
            _ => false,
        }
    }

    fn var_eq(&self, l: &str, r: &str) -> bool {
        for (bl, br) in self.vars.iter().rev() {
            let hit_l = bl == l;
            let hit_r = br == r;
            if hit_l || hit_r {
                return hit_l && hit_r;
            }
        }
        l == r
    }

    fn target_eq(&self, l: &AmbTarget, r: &AmbTarget) -> bool {
        match (l, r) {
            (AmbTarget::Name(ln), AmbTarget::Name(rn)) => self.amb_eq(ln, rn),
            (AmbTarget::Var(lv), AmbTarget::Var(rv)) => self.var_eq(lv, rv),
            _ => false,
        }
    }

    fn cap_eq(&self, l: &Capability, r: &Capability) -> bool {
        match (l, r) {
            (Capability::In(lt), Capability::In(rt))
            | (Capability::Out(lt), Capability::Out(rt)) => self.target_eq(lt, rt),
            (Capability::Ploc(lv), Capability::Ploc(rv))
            | (Capability::Sloc(lv), Capability::Sloc(rv)) => self.var_eq(lv, rv),
            (Capability::Epsilon, Capability::Epsilon) => true,
            (Capability::Var(lv), Capability::Var(rv)) => self.var_eq(lv, rv),
            (Capability::Path(ls), Capability::Path(rs)) => {
                ls.len() == rs.len() && ls.iter().zip(rs).all(|(l, r)| self.cap_eq(l, r))
            }
            _ => false,
        }
    }

    fn value_eq(&self, l: &Value, r: &Value) -> bool {
        match (l, r) {
            (Value::Name(ln), Value::Name(rn)) => self.amb_eq(ln, rn),
            (Value::Path(ls), Value::Path(rs)) => {
                ls.len() == rs.len() && ls.iter().zip(rs).all(|(l, r)| self.cap_eq(l, r))
            }
            (Value::Tuple(ls), Value::Tuple(rs)) => {
                ls.len() == rs.len() && ls.iter().zip(rs).all(|(l, r)| self.value_eq(l, r))
            }
            (Value::List(lh, lt), Value::List(rh, rt)) => {
                self.value_eq(lh, rh) && self.value_eq(lt, rt)
            }
            (Value::Nil, Value::Nil) => true,
            (Value::Var(lv), Value::Var(rv)) => self.var_eq(lv, rv),
            _ => false,
        }
    }
}

fn proc_eq(ctx: &mut Ctx, l: &Process, r: &Process) -> bool {
    match (l, r) {
        (Process::Zero, Process::Zero) => true,
        (Process::Const(ln, la), Process::Const(rn, ra)) => {
            ln == rn
                && la.len() == ra.len()
                && la.iter().zip(ra).all(|(l, r)| ctx.value_eq(l, r))
        }
        (Process::Cap(lc, lp), Process::Cap(rc, rp)) => {
            match (lc, rc) {
                (Capability::Ploc(lx), Capability::Ploc(rx))
                | (Capability::Sloc(lx), Capability::Sloc(rx)) => {
                    ctx.vars.push((lx.clone(), rx.clone()));
                    let ok = proc_eq(ctx, lp, rp);
                    ctx.vars.pop();
                    ok
                }
                _ => ctx.cap_eq(lc, rc) && proc_eq(ctx, lp, rp),
            }
        }
        (Process::Input(lport, lx, lp), Process::Input(rport, rx, rp)) => {
            if !ctx.port_base_eq(lport, rport) {
                return false;
            }
            ctx.vars.push((lx.clone(), rx.clone()));
            let ok = proc_eq(ctx, lp, rp);
            ctx.vars.pop();
            ok
        }
        (Process::Output(lport, lv, lp), Process::Output(rport, rv, rp)) => {
            ctx.port_base_eq(lport, rport) && ctx.value_eq(lv, rv) && proc_eq(ctx, lp, rp)
        }
        (Process::Tau(lp), Process::Tau(rp)) => proc_eq(ctx, lp, rp),
        (Process::Amb(ln, lp), Process::Amb(rn, rp)) => {
            ctx.amb_eq(ln, rn) && proc_eq(ctx, lp, rp)
        }
        (Process::Sum(la, lb), Process::Sum(ra, rb))
        | (Process::Par(la, lb), Process::Par(ra, rb)) => {
            proc_eq(ctx, la, ra) && proc_eq(ctx, lb, rb)
        }
        (Process::RestrictAmb(ln, lp), Process::RestrictAmb(rn, rp)) => {
            // Decorations may mention bound ports, so compare them under the
            // current context; the bases are then identified.
            if !ctx.ports_eq(&ln.ports, &rn.ports) {
                return false;
            }
            ctx.ambs.push((ln.clone(), rn.clone()));
            let ok = proc_eq(ctx, lp, rp);
            ctx.ambs.pop();
            ok
        }
        (Process::RestrictPort(lb, lp), Process::RestrictPort(rb, rp)) => {
            ctx.ports.push((lb.clone(), rb.clone()));
            let ok = proc_eq(ctx, lp, rp);
            ctx.ports.pop();
            ok
        }
        (Process::Relabel(lp, lm), Process::Relabel(rp, rm)) => {
            let le: Vec<_> = lm.entries().collect();
            let re: Vec<_> = rm.entries().collect();
            le.len() == re.len()
                && le.iter().zip(&re).all(|((lf, lt), (rf, rt))| {
                    ctx.port_base_eq(lf, rf) && ctx.port_base_eq(lt, rt)
                })
                && proc_eq(ctx, lp, rp)
        }
        (Process::Cond(ll, lr, lt, le), Process::Cond(rl, rr, rt, re)) => {
            ctx.value_eq(ll, rl)
                && ctx.value_eq(lr, rr)
                && proc_eq(ctx, lt, rt)
                && proc_eq(ctx, le, re)
        }
        _ => false,
    }
}

/// True iff `p` and `q` are identical up to consistent renaming of bound
/// ambient names, bound port bases and bound variables.
pub fn alpha_equal(p: &Process, q: &Process) -> bool {
    let mut ctx = Ctx::default();
    proc_eq(&mut ctx, p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::PortName;

    fn amb(base: &str) -> AmbientName {
        AmbientName::all(base)
    }

    fn amb_b(base: &str) -> AmbientName {
        AmbientName::with_ports(base, [PortName::plain("b")])
    }

    #[test]
    fn bound_ambient_rename() {
        // (new n{b} in n{b}[0]) =α= (new k{b} in k{b}[0])
        let p = Process::restrict_amb(amb_b("n"), Process::amb(amb_b("n"), Process::Zero));
        let q = Process::restrict_amb(amb_b("k"), Process::amb(amb_b("k"), Process::Zero));
        assert!(alpha_equal(&p, &q));
    }

    #[test]
    fn bound_variable_rename() {
        // a?(x). ~x?... — variables in identical positions under renaming.
        let p = Process::input(
            "a",
            "x",
            Process::output("b", Value::Var("x".into()), Process::Zero),
        );
        let q = Process::input(
            "a",
            "z",
            Process::output("b", Value::Var("z".into()), Process::Zero),
        );
        assert!(alpha_equal(&p, &q));
    }

    #[test]
    fn free_decorated_names_differ() {
        let p = Process::amb(amb_b("n"), Process::Zero);
        let q = Process::amb(AmbientName::with_ports("n", [PortName::plain("c")]), Process::Zero);
        assert!(!alpha_equal(&p, &q));
        assert!(alpha_equal(&p, &p.clone()));
    }

    #[test]
    fn binder_correspondence_is_one_to_one() {
        // new n in n[0] vs new k in m[0] (m free): not alpha equal.
        let p = Process::restrict_amb(amb("n"), Process::amb(amb("n"), Process::Zero));
        let q = Process::restrict_amb(amb("k"), Process::amb(amb("m"), Process::Zero));
        assert!(!alpha_equal(&p, &q));
    }

    #[test]
    fn bound_port_renames_inside_decorations() {
        // new port l in m{l}[ l!(nil).0 ] =α= new port k in m{k}[ k!(nil).0 ]
        let mk = |port: &str| {
            Process::restrict_port(
                port,
                Process::amb(
                    AmbientName::with_ports("m", [PortName::plain(port)]),
                    Process::output(port, Value::Nil, Process::Zero),
                ),
            )
        };
        assert!(alpha_equal(&mk("l"), &mk("k")));
    }

    #[test]
    fn ploc_binder_renames() {
        let mk = |x: &str| {
            Process::cap(
                Capability::Ploc(x.into()),
                Process::output("a", Value::Var(x.into()), Process::Zero),
            )
        };
        assert!(alpha_equal(&mk("x"), &mk("y")));
        // ploc vs sloc differ
        let sloc = Process::cap(
            Capability::Sloc("x".into()),
            Process::output("a", Value::Var("x".into()), Process::Zero),
        );
        assert!(!alpha_equal(&mk("x"), &sloc));
    }
}
