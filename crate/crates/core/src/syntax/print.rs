use std::fmt;

use super::Formula;

// Binding strength, loosest first. Material sugar never appears in printed output.
const ARROW: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const PREFIX: u8 = 4;

fn write_at(f: &Formula, ctx: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let wrap = match f {
        Formula::Var(_) | Formula::Neg(_) | Formula::Box(_) | Formula::Diamond(_) => false,
        Formula::And(..) => ctx > AND,
        Formula::Or(..) => ctx > OR,
        Formula::Arrow(..) => ctx > ARROW,
    };
    if wrap {
        out.write_str("(")?;
    }
    match f {
        Formula::Var(name) => out.write_str(name)?,
        Formula::Neg(a) => {
            out.write_str("~")?;
            write_at(a, PREFIX, out)?;
        }
        Formula::Box(a) => {
            out.write_str("[]")?;
            write_at(a, PREFIX, out)?;
        }
        Formula::Diamond(a) => {
            out.write_str("<>")?;
            write_at(a, PREFIX, out)?;
        }
        // & and | associate to the left, -> to the right.
        Formula::And(a, b) => {
            write_at(a, AND, out)?;
            out.write_str(" & ")?;
            write_at(b, PREFIX, out)?;
        }
        Formula::Or(a, b) => {
            write_at(a, OR, out)?;
            out.write_str(" | ")?;
            write_at(b, AND, out)?;
        }
        Formula::Arrow(a, b) => {
            write_at(a, OR, out)?;
            out.write_str(" -> ")?;
            write_at(b, ARROW, out)?;
        }
    }
    if wrap {
        out.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(self, 0, out)
    }
}

#[cfg(test)]
mod tests {
    use crate::syntax::Formula;

    #[test]
    fn minimal_parentheses() {
        let p = Formula::var("p");
        let q = Formula::var("q");
        assert_eq!(p.clone().arrow(p.clone().neg()).neg().to_string(), "~(p -> ~p)");
        assert_eq!(p.clone().neg().or(q.clone()).to_string(), "~p | q");
        assert_eq!(p.clone().arrow(q.clone()).boxed().to_string(), "[](p -> q)");
        assert_eq!(
            p.clone().arrow(q.clone()).arrow(p.clone()).to_string(),
            "(p -> q) -> p"
        );
        assert_eq!(
            p.clone().arrow(q.clone().arrow(p.clone())).to_string(),
            "p -> q -> p"
        );
        assert_eq!(
            p.clone().or(q.clone().or(p.clone())).to_string(),
            "p | (q | p)"
        );
        assert_eq!(p.clone().or(q.clone()).and(p.clone()).to_string(), "(p | q) & p");
    }
}
