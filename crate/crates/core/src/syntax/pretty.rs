use std::fmt;

use super::{Term, TermKind, Ty};

// Precedence levels, loosest first.
const LAMBDA: u8 = 0;
const CONS: u8 = 1;
const SUM: u8 = 2;
const APP: u8 = 3;
const ATOM: u8 = 4;

fn write_ty(f: &mut fmt::Formatter<'_>, ty: &Ty, arrow_parens: bool) -> fmt::Result {
    match ty {
        Ty::Var(a) => f.write_str(a),
        Ty::Nat => f.write_str("Nat"),
        Ty::List(e) => {
            f.write_str("[")?;
            write_ty(f, e, false)?;
            f.write_str("]")
        }
        Ty::Pair(l, r) => {
            f.write_str("(")?;
            write_ty(f, l, false)?;
            f.write_str(", ")?;
            write_ty(f, r, false)?;
            f.write_str(")")
        }
        Ty::Arrow(d, c) => {
            if arrow_parens {
                f.write_str("(")?;
            }
            write_ty(f, d, true)?;
            f.write_str(" -> ")?;
            write_ty(f, c, false)?;
            if arrow_parens {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ty(f, self, false)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, t: &Term, prec: u8) -> fmt::Result {
    let level = match &t.kind {
        TermKind::Lam { .. } => LAMBDA,
        TermKind::Cons(..) => CONS,
        TermKind::Add(..) => SUM,
        TermKind::App(..) => APP,
        _ => ATOM,
    };
    let parens = level < prec;
    if parens {
        f.write_str("(")?;
    }
    match &t.kind {
        TermKind::Var(x) => f.write_str(x)?,
        TermKind::Nat(n) => write!(f, "{n}")?,
        TermKind::Nil(ty) => write!(f, "nil[{ty}]")?,
        TermKind::Lam { binder, ty, body } => {
            write!(f, "\\{binder}:{ty}. ")?;
            write_term(f, body, LAMBDA)?;
        }
        TermKind::Cons(h, tl) => {
            write_term(f, h, SUM)?;
            f.write_str(" : ")?;
            write_term(f, tl, CONS)?;
        }
        TermKind::Add(l, r) => {
            write_term(f, l, SUM)?;
            f.write_str(" + ")?;
            write_term(f, r, APP)?;
        }
        TermKind::App(g, a) => {
            write_term(f, g, APP)?;
            f.write_str(" ")?;
            write_term(f, a, ATOM)?;
        }
        TermKind::Pair(a, b) => {
            f.write_str("(")?;
            write_term(f, a, LAMBDA)?;
            f.write_str(", ")?;
            write_term(f, b, LAMBDA)?;
            f.write_str(")")?;
        }
        TermKind::NatCase {
            scrutinee,
            zero,
            binder,
            pos,
        } => {
            f.write_str("ncase ")?;
            write_term(f, scrutinee, LAMBDA)?;
            f.write_str(" {0 -> ")?;
            write_term(f, zero, LAMBDA)?;
            write!(f, "; {binder} -> ")?;
            write_term(f, pos, LAMBDA)?;
            f.write_str("}")?;
        }
        TermKind::ListCase {
            scrutinee,
            nil,
            head,
            tail,
            cons,
        } => {
            f.write_str("lcase ")?;
            write_term(f, scrutinee, LAMBDA)?;
            f.write_str(" {nil -> ")?;
            write_term(f, nil, LAMBDA)?;
            write!(f, "; {head}:{tail} -> ")?;
            write_term(f, cons, LAMBDA)?;
            f.write_str("}")?;
        }
        TermKind::PairCase {
            scrutinee,
            fst,
            snd,
            body,
        } => {
            f.write_str("pcase ")?;
            write_term(f, scrutinee, LAMBDA)?;
            write!(f, " {{({fst}, {snd}) -> ")?;
            write_term(f, body, LAMBDA)?;
            f.write_str("}")?;
        }
        TermKind::LFold { step, init, list } => {
            f.write_str("lfold(")?;
            write_term(f, step, LAMBDA)?;
            f.write_str(", ")?;
            write_term(f, init, LAMBDA)?;
            f.write_str(", ")?;
            write_term(f, list, LAMBDA)?;
            f.write_str(")")?;
        }
        TermKind::IFold { step, init, count } => {
            f.write_str("ifold(")?;
            write_term(f, step, LAMBDA)?;
            f.write_str(", ")?;
            write_term(f, init, LAMBDA)?;
            f.write_str(", ")?;
            write_term(f, count, LAMBDA)?;
            f.write_str(")")?;
        }
    }
    if parens {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self, LAMBDA)
    }
}
