//! Line-oriented text form of a circuit.
//!
//! ```text
//! WIRE a input
//! WIRE t output
//! CX a t
//! MCX ~a b c t
//! ```
//! A `~` marks a negative control. `#` starts a comment.

use super::{Circuit, Control, Gate, WireRole};
use crate::error::{Error, Result};

pub fn emit_netlist(circuit: &Circuit) -> String {
    let mut s = String::new();
    for w in circuit.wires() {
        s.push_str(&format!("WIRE {} {}\n", w.name, w.role.name()));
    }
    for g in circuit.gates() {
        let op = match g.controls().len() {
            0 => "X",
            1 => "CX",
            2 => "CCX",
            _ => "MCX",
        };
        s.push_str(op);
        for c in g.controls() {
            s.push(' ');
            if !c.positive {
                s.push('~');
            }
            s.push_str(&circuit.wires()[c.wire].name);
        }
        s.push(' ');
        s.push_str(&circuit.wires()[g.target()].name);
        s.push('\n');
    }
    s
}

pub fn parse_netlist(text: &str) -> Result<Circuit> {
    let mut c = Circuit::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let err = |col: usize, msg: String| Error::Parse {
            line: ln + 1,
            column: col + 1,
            message: msg,
        };
        let toks: Vec<(usize, &str)> = line
            .split_whitespace()
            .map(|t| (t.as_ptr() as usize - line.as_ptr() as usize, t))
            .collect();
        let Some(&(col0, op)) = toks.first() else { continue };
        let args = &toks[1..];
        if op == "WIRE" {
            let [(_, name), (rc, role)] = args else {
                return Err(err(col0, "WIRE takes a name and a role".into()));
            };
            let role = WireRole::from_name(role)
                .ok_or_else(|| err(*rc, format!("unknown role '{role}'")))?;
            c.add_wire(*name, role).map_err(|e| err(col0, e.to_string()))?;
            continue;
        }
        let arity = match op {
            "X" => Some(0),
            "CX" => Some(1),
            "CCX" => Some(2),
            "MCX" => None,
            _ => return Err(err(col0, format!("unknown gate '{op}'"))),
        };
        if args.is_empty() || arity.is_some_and(|n| args.len() != n + 1) || (arity.is_none() && args.len() < 4) {
            return Err(err(col0, format!("wrong operand count for {op}")));
        }
        let lookup = |(col, name): (usize, &str)| -> Result<usize> {
            c.wire_index(name)
                .ok_or_else(|| err(col, format!("undeclared wire '{name}'")))
        };
        let (tcol, tname) = args[args.len() - 1];
        let target = lookup((tcol, tname))?;
        let mut controls = Vec::new();
        for &(col, tok) in &args[..args.len() - 1] {
            let (positive, name) = match tok.strip_prefix('~') {
                Some(rest) => (false, rest),
                None => (true, tok),
            };
            controls.push(Control::new(lookup((col, name))?, positive));
        }
        let gate = Gate::new(controls, target).map_err(|e| err(col0, e.to_string()))?;
        c.push(gate)?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "WIRE a input\nWIRE b input\nWIRE s step-output\nWIRE t output\n\
                    CCX a b s\nMCX ~a b s t\nCX s t\nX a\n";
        let c = parse_netlist(text).unwrap();
        assert_eq!(emit_netlist(&c), text);
        assert_eq!(parse_netlist(&emit_netlist(&c)).unwrap(), c);
    }

    #[test]
    fn diagnostics_point_at_token() {
        let e = parse_netlist("WIRE a input\nCX a  zz\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 2,
                column: 7,
                message: "undeclared wire 'zz'".into()
            }
        );
        assert!(matches!(parse_netlist("FOO a"), Err(Error::Parse { line: 1, column: 1, .. })));
        assert!(parse_netlist("WIRE a input\nWIRE b input\nCCX a b").is_err());
        assert!(parse_netlist("WIRE a bogus").is_err());
    }
}
