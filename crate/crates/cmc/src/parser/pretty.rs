//! Pretty-printer. Output reparses to an alpha-equal term, using minimal
//! parentheses under the precedence `+` < `|` < prefixing.
//!
//! Two prints are normalizing by design: a `Path` capability prefix is
//! printed as its expanded chain of atomic prefixes, and an identity
//! relabelling is omitted (the parser builds neither shape).

use std::fmt::Write;

use super::{Definition, SourceFile};
use crate::syntax::{Capability, Process, Value};

/// Precedence levels: 0 sum/restriction, 1 par, 2 prefix, 3 atom.
fn level(p: &Process) -> u8 {
    match p {
        Process::Sum(..) | Process::RestrictAmb(..) | Process::RestrictPort(..) => 0,
        Process::Par(..) => 1,
        Process::Cap(..)
        | Process::Input(..)
        | Process::Output(..)
        | Process::Tau(..)
        | Process::Cond(..) => 2,
        Process::Zero | Process::Const(..) | Process::Amb(..) | Process::Relabel(..) => 3,
    }
}

pub fn pretty_print(p: &Process) -> String {
    let mut out = String::new();
    pp(&mut out, p, 0);
    out
}

/// Renders a source file: one definition per line, then the `system` line.
pub fn pretty_print_source(src: &SourceFile) -> String {
    let mut out = String::new();
    for Definition { name, params, body } in &src.definitions {
        out.push_str(name);
        if !params.is_empty() {
            out.push('(');
            out.push_str(&params.join(", "));
            out.push(')');
        }
        out.push_str(" := ");
        pp(&mut out, body, 0);
        out.push('\n');
    }
    if let Some(main) = &src.main {
        out.push_str("system ");
        pp(&mut out, main, 0);
        out.push('\n');
    }
    out
}

fn pp(out: &mut String, p: &Process, min: u8) {
    let wrap = level(p) < min;
    if wrap {
        out.push('(');
    }
    match p {
        Process::Zero => out.push('0'),
        Process::Const(name, args) => {
            out.push_str(name);
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    pv(out, a);
                }
                out.push(')');
            }
        }
        Process::Cap(c, cont) => {
            // Paths print expanded; the parser reads chains back as nested
            // single-capability prefixes.
            for atom in c.atoms() {
                let _ = write!(out, "{atom}. ");
            }
            if matches!(c, Capability::Epsilon) {
                out.push_str("eps. ");
            }
            pp(out, cont, 2);
        }
        Process::Input(port, var, cont) => {
            let _ = write!(out, "{port}?({var}). ");
            pp(out, cont, 2);
        }
        Process::Output(port, v, cont) => {
            let _ = write!(out, "{port}!(");
            pv(out, v);
            out.push_str("). ");
            pp(out, cont, 2);
        }
        Process::Tau(cont) => {
            out.push_str("tau. ");
            pp(out, cont, 2);
        }
        Process::Amb(name, body) => {
            let _ = write!(out, "{name}[");
            if !body.is_zero() {
                pp(out, body, 0);
            }
            out.push(']');
        }
        Process::Sum(a, b) => {
            pp(out, a, 1);
            out.push_str(" + ");
            pp(out, b, 0);
        }
        Process::Par(a, b) => {
            pp(out, a, 2);
            out.push_str(" | ");
            pp(out, b, 1);
        }
        Process::RestrictAmb(name, body) => {
            let _ = write!(out, "new {name} in ");
            pp(out, body, 0);
        }
        Process::RestrictPort(base, body) => {
            let _ = write!(out, "new port {base} in ");
            pp(out, body, 0);
        }
        Process::Relabel(body, map) => {
            if map.is_identity() {
                // Unprintable as brackets; semantically inert.
                pp(out, body, min.max(3));
            } else {
                pp(out, body, 3);
                let _ = write!(out, "{map}");
            }
        }
        Process::Cond(l, r, t, e) => {
            out.push_str("if ");
            pv(out, l);
            out.push_str(" = ");
            pv(out, r);
            out.push_str(" then ");
            pp(out, t, 2);
            out.push_str(" else ");
            pp(out, e, 2);
        }
    }
    if wrap {
        out.push(')');
    }
}

fn pv(out: &mut String, v: &Value) {
    match v {
        Value::Name(n) => {
            let _ = write!(out, "{n}");
        }
        Value::Var(x) => out.push_str(x),
        Value::Nil => out.push_str("nil"),
        Value::Path(caps) if caps.is_empty() => out.push_str("eps"),
        Value::Path(caps) => {
            for (i, c) in caps.iter().enumerate() {
                if i > 0 {
                    out.push('.');
                }
                let _ = write!(out, "{c}");
            }
        }
        Value::Tuple(vs) => {
            out.push('(');
            for (i, v) in vs.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                pv(out, v);
            }
            out.push(')');
        }
        Value::List(h, t) => {
            // Cons heads are atoms; parenthesize nested cons.
            if matches!(**h, Value::List(..)) {
                out.push('(');
                pv(out, h);
                out.push(')');
            } else {
                pv(out, h);
            }
            out.push(':');
            pv(out, t);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_process;
    use crate::syntax::{alpha_equal, AmbientName};

    fn roundtrip(p: &Process) {
        let text = pretty_print(p);
        let back = parse_process(&text)
            .unwrap_or_else(|e| panic!("reparse of `{text}` failed: {e}"));
        assert!(alpha_equal(p, &back), "`{text}` reparsed differently: {back:?}");
    }

    #[test]
    fn zero_prints_as_zero() {
        assert_eq!(pretty_print(&Process::Zero), "0");
    }

    #[test]
    fn right_nested_par_prints_flat() {
        let p = Process::par(
            Process::Const("A".into(), vec![]),
            Process::par(Process::Const("B".into(), vec![]), Process::Const("C".into(), vec![])),
        );
        assert_eq!(pretty_print(&p), "A | B | C");
        roundtrip(&p);
    }

    #[test]
    fn left_nested_par_keeps_structure() {
        let p = Process::par(
            Process::par(Process::Const("A".into(), vec![]), Process::Const("B".into(), vec![])),
            Process::Const("C".into(), vec![]),
        );
        assert_eq!(pretty_print(&p), "(A | B) | C");
        roundtrip(&p);
    }

    #[test]
    fn sum_inside_par_is_parenthesized() {
        let p = Process::par(
            Process::sum(Process::Zero, Process::Zero),
            Process::Zero,
        );
        assert_eq!(pretty_print(&p), "(0 + 0) | 0");
        roundtrip(&p);
    }

    #[test]
    fn restriction_scope_prints_greedy() {
        let p = Process::restrict_amb(
            AmbientName::all("n"),
            Process::par(Process::amb(AmbientName::all("n"), Process::Zero), Process::Zero),
        );
        assert_eq!(pretty_print(&p), "new n in n[] | 0");
        roundtrip(&p);
        let q = Process::par(
            Process::restrict_amb(AmbientName::all("n"), Process::Zero),
            Process::Zero,
        );
        assert_eq!(pretty_print(&q), "(new n in 0) | 0");
        roundtrip(&q);
    }

    #[test]
    fn prefix_chain_needs_no_parens() {
        let p = Process::cap(
            Capability::in_name("n"),
            Process::cap(Capability::out_name("m"), Process::Zero),
        );
        assert_eq!(pretty_print(&p), "in n. out m. 0");
        roundtrip(&p);
    }
}
