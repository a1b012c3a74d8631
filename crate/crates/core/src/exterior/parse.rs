//! Text grammar for forms.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "^" | "/") unary)*
//! unary   := ("-" | "+") unary | primary
//! primary := NAME | "e" DIGITS | scalar | "(" expr ")"
//! ```
//!
//! `^` between forms is the wedge product; a power on a scalar binds tighter
//! and is read by the scalar grammar.

use super::{AtomTable, ExteriorError, Form};
use crate::scalars::{Lexer, Rat, ScaledScalar, Token};

type SForm = Form<ScaledScalar>;

#[derive(Clone, Debug)]
enum Val {
    Scalar(ScaledScalar),
    Form(SForm),
}

impl Val {
    fn into_form(self) -> SForm {
        match self {
            Val::Scalar(s) => Form::scalar(s),
            Val::Form(f) => f,
        }
    }
}

pub fn parse_form(text: &str) -> Result<SForm, ExteriorError> {
    parse_form_with(text, &AtomTable::standard())
}

/// Parses against a custom atom table.
pub fn parse_form_with(text: &str, table: &AtomTable) -> Result<SForm, ExteriorError> {
    let mut lx = Lexer::new(text).map_err(ExteriorError::lift)?;
    let v = expr(&mut lx, table)?;
    if lx.peek() != &Token::End {
        return Err(syntax(&lx, format!("unexpected {:?}", lx.peek())));
    }
    Ok(v.into_form())
}

fn syntax(lx: &Lexer, msg: impl Into<String>) -> ExteriorError {
    ExteriorError::Syntax { pos: lx.pos(), msg: msg.into() }
}

fn add(a: Val, b: Val, negate: bool) -> Result<Val, ExteriorError> {
    Ok(match (a, b) {
        (Val::Scalar(x), Val::Scalar(y)) => Val::Scalar(if negate { &x - &y } else { &x + &y }),
        (a, b) => {
            let b = b.into_form();
            let b = if negate { -&b } else { b };
            Val::Form(a.into_form().try_add(&b)?)
        }
    })
}

fn mul(a: Val, b: Val) -> Val {
    match (a, b) {
        (Val::Scalar(x), Val::Scalar(y)) => Val::Scalar(&x * &y),
        (Val::Scalar(s), Val::Form(f)) | (Val::Form(f), Val::Scalar(s)) => Val::Form(f.scale(&s)),
        (Val::Form(f), Val::Form(g)) => Val::Form(f.wedge(&g)),
    }
}

fn expr(lx: &mut Lexer, table: &AtomTable) -> Result<Val, ExteriorError> {
    let mut acc = term(lx, table)?;
    loop {
        if lx.eat(&Token::Plus) {
            acc = add(acc, term(lx, table)?, false)?;
        } else if lx.eat(&Token::Minus) {
            acc = add(acc, term(lx, table)?, true)?;
        } else {
            return Ok(acc);
        }
    }
}

fn term(lx: &mut Lexer, table: &AtomTable) -> Result<Val, ExteriorError> {
    let mut acc = unary(lx, table)?;
    loop {
        if lx.eat(&Token::Star) {
            let rhs = unary(lx, table)?;
            if let (Val::Form(_), Val::Form(_)) = (&acc, &rhs) {
                return Err(syntax(lx, "use ^ for the wedge of two forms"));
            }
            acc = mul(acc, rhs);
        } else if lx.eat(&Token::Caret) {
            acc = mul(acc, unary(lx, table)?);
        } else if lx.eat(&Token::Slash) {
            let Val::Scalar(d) = unary(lx, table)? else {
                return Err(syntax(lx, "cannot divide by a form"));
            };
            let c = crate::scalars::parse::constant_of(lx, &d).map_err(ExteriorError::lift)?;
            acc = mul(acc, Val::Scalar(ScaledScalar::from_rat(Rat::from_integer(1.into()) / c)));
        } else {
            return Ok(acc);
        }
    }
}

fn unary(lx: &mut Lexer, table: &AtomTable) -> Result<Val, ExteriorError> {
    if lx.eat(&Token::Minus) {
        return Ok(match unary(lx, table)? {
            Val::Scalar(s) => Val::Scalar(-&s),
            Val::Form(f) => Val::Form(-&f),
        });
    }
    if lx.eat(&Token::Plus) {
        return unary(lx, table);
    }
    primary(lx, table)
}

fn basis_word(name: &str) -> Option<Vec<u8>> {
    let digits = name.strip_prefix('e')?;
    if digits.is_empty() || !digits.bytes().all(|b| (b'0'..=b'6').contains(&b)) {
        return None;
    }
    Some(digits.bytes().map(|b| b - b'0').collect())
}

fn primary(lx: &mut Lexer, table: &AtomTable) -> Result<Val, ExteriorError> {
    match lx.peek().clone() {
        Token::Ident(name) => {
            lx.next();
            if let Some(f) = table.form::<ScaledScalar>(&name) {
                return Ok(Val::Form(f));
            }
            if let Some(w) = basis_word(&name) {
                return Ok(Val::Form(Form::basis(&w)));
            }
            if crate::scalars::Sym::parse(&name).is_none() && name != "t" {
                return Err(ExteriorError::UnknownAtom(name));
            }
            crate::scalars::parse::scalar_ident(lx, &name).map(Val::Scalar).map_err(ExteriorError::lift)
        }
        Token::Num(n) => {
            lx.next();
            scalar_power(lx, ScaledScalar::from_rat(Rat::from_integer(n)))
        }
        Token::LParen => {
            lx.next();
            let v = expr(lx, table)?;
            lx.expect(&Token::RParen).map_err(ExteriorError::lift)?;
            match v {
                Val::Scalar(s) => scalar_power(lx, s),
                f => Ok(f),
            }
        }
        other => Err(syntax(lx, format!("unexpected {other:?}"))),
    }
}

fn scalar_power(lx: &mut Lexer, base: ScaledScalar) -> Result<Val, ExteriorError> {
    if lx.peek() != &Token::Caret || !matches!(lx.peek2(), Token::Num(_)) {
        return Ok(Val::Scalar(base));
    }
    lx.next();
    let (e, _) = lx.exponent().map_err(ExteriorError::lift)?;
    Ok(Val::Scalar(base.pow(*e.numer() as u32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::named_atom;
    use crate::scalars::{int, Sym};

    fn f(words: &[&[u8]]) -> SForm {
        let deg = words[0].len();
        words.iter().fold(SForm::zero(deg), |acc, w| &acc + &SForm::basis(w))
    }

    #[test]
    fn theta_wedge_dtheta() {
        let got = parse_form("theta^dtheta").unwrap();
        assert_eq!(got, f(&[&[0, 4, 1], &[0, 5, 2], &[0, 6, 3]]));
    }

    #[test]
    fn alpha1_expands() {
        assert_eq!(parse_form("alpha1").unwrap(), f(&[&[1, 5, 6], &[2, 6, 4], &[3, 4, 5]]));
    }

    #[test]
    fn repeated_basis_wedge_vanishes() {
        assert!(parse_form("e12 ^ e12").unwrap().is_zero());
    }

    #[test]
    fn scalars_and_powers() {
        let got = parse_form("f0^2*alpha - 3/2*(f1 + f2)*alpha3").unwrap();
        let a: SForm = named_atom("alpha").unwrap();
        let a3: SForm = named_atom("alpha3").unwrap();
        let f0 = ScaledScalar::sym(Sym::F0);
        let s = &ScaledScalar::sym(Sym::F1) + &ScaledScalar::sym(Sym::F2);
        let want = &a.scale(&f0.pow(2)) - &a3.scale(&s.scale(&crate::scalars::rat(3, 2)));
        assert_eq!(got, want);
        assert_eq!(parse_form("(2)^3").unwrap(), SForm::scalar(ScaledScalar::from_rat(int(8))));
    }

    #[test]
    fn errors_are_reported() {
        assert!(matches!(parse_form("beta"), Err(ExteriorError::UnknownAtom(_))));
        assert!(matches!(parse_form("alpha + theta"), Err(ExteriorError::DegreeMismatch { .. })));
        assert!(matches!(parse_form("alpha +"), Err(ExteriorError::Syntax { .. })));
        assert!(matches!(parse_form("e7"), Err(ExteriorError::UnknownAtom(_))));
        assert!(parse_form("alpha*alpha").is_err());
    }
}
