use serde_json::json;

use super::Form;
use crate::scalars::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderStyle {
    Plain,
    Latex,
    Json,
}

impl std::str::FromStr for RenderStyle {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(RenderStyle::Plain),
            "latex" => Ok(RenderStyle::Latex),
            "json" => Ok(RenderStyle::Json),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

pub fn render_form<C: Ring>(a: &Form<C>, style: RenderStyle) -> String {
    match style {
        RenderStyle::Json => render_json(a).to_string(),
        RenderStyle::Plain => render_text(a, |w| format!("e{w}"), "*", str::to_string),
        RenderStyle::Latex => render_text(a, |w| format!("e^{{{w}}}"), " \\, ", latex_scalar),
    }
}

/// JSON value `{"degree": p, "terms": [{"index": [..], "coeff": ".."}]}`.
pub fn render_json<C: Ring>(a: &Form<C>) -> serde_json::Value {
    let terms: Vec<_> = a
        .terms()
        .map(|(m, c)| json!({"index": m.indices().collect::<Vec<_>>(), "coeff": c.render()}))
        .collect();
    json!({"degree": a.degree(), "terms": terms})
}

/// Rewrites a plain scalar rendering for LaTeX: `f0^(1/2)*R0101` becomes
/// `f_{0}^{1/2} R_{0101}`.
pub(crate) fn latex_scalar(plain: &str) -> String {
    let b = plain.as_bytes();
    let mut out = String::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        match c {
            '*' => out.push(' '),
            '^' if b.get(i + 1) == Some(&b'(') => {
                let close = plain[i..].find(')').map_or(b.len(), |k| i + k);
                out.push_str(&format!("^{{{}}}", &plain[i + 2..close]));
                i = close + 1;
                continue;
            }
            '^' => {
                let end = (i + 1..b.len()).find(|&k| !b[k].is_ascii_digit()).unwrap_or(b.len());
                out.push_str(&format!("^{{{}}}", &plain[i + 1..end]));
                i = end;
                continue;
            }
            c if c.is_ascii_alphabetic() && (i == 0 || !b[i - 1].is_ascii_alphanumeric()) => {
                let end = (i..b.len()).find(|&k| !b[k].is_ascii_alphanumeric()).unwrap_or(b.len());
                let word = &plain[i..end];
                let split = word.find(|ch: char| ch.is_ascii_digit()).unwrap_or(word.len());
                let (name, sub) = word.split_at(split);
                out.push_str(name);
                if !sub.is_empty() {
                    out.push_str(&format!("_{{{sub}}}"));
                }
                i = end;
                continue;
            }
            c => out.push(c),
        }
        i += 1;
    }
    out
}

fn render_text<C: Ring>(a: &Form<C>, word: impl Fn(&str) -> String, times: &str, scalar: fn(&str) -> String) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in a.terms().enumerate() {
        let label = m.label();
        let coeff = scalar(&c.render());
        let compound = coeff.contains(" + ") || coeff.contains(" - ");
        let coeff = if compound { format!("({coeff})") } else { coeff };
        let piece = if label.is_empty() {
            coeff
        } else if *c == C::unit() {
            word(&label)
        } else if c.negated() == C::unit() {
            format!("-{}", word(&label))
        } else {
            format!("{coeff}{times}{}", word(&label))
        };
        if i == 0 {
            out.push_str(&piece);
        } else if let Some(rest) = piece.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&piece);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{named_atom, parse_form};
    use crate::scalars::ScaledScalar;

    #[test]
    fn plain_round_trip() {
        for text in ["alpha2", "sigma0", "-3/2*f0*t^(1/2)*alpha1 + (f1 - f2)*theta^dtheta", "0", "2*e0 - e3"] {
            let f = parse_form(text).unwrap();
            let s = render_form(&f, RenderStyle::Plain);
            assert_eq!(parse_form(&s).unwrap(), f, "{text} -> {s}");
        }
    }

    #[test]
    fn alpha2_has_a_fixed_rendering() {
        let a2: Form<ScaledScalar> = named_atom("alpha2").unwrap();
        assert_eq!(render_form(&a2, RenderStyle::Plain), "e126 - e135 + e234");
        assert_eq!(render_form(&a2, RenderStyle::Latex), "e^{126} - e^{135} + e^{234}");
    }

    #[test]
    fn latex_coefficients() {
        assert_eq!(latex_scalar("-q^(1/3)*f4^(-1)"), "-q^{1/3} f_{4}^{-1}");
        assert_eq!(latex_scalar("3/2*f0^2*R0101 + x"), "3/2 f_{0}^{2} R_{0101} + x");
        let f = parse_form("t^(1/2)*f1*e12").unwrap();
        assert_eq!(render_form(&f, RenderStyle::Latex), "f_{1} t^{1/2} \\, e^{12}");
    }

    #[test]
    fn json_shape() {
        let s0: Form<ScaledScalar> = named_atom("sigma0").unwrap();
        let v = render_json(&s0);
        assert_eq!(v["degree"], 3);
        assert_eq!(v["terms"].as_array().unwrap().len(), 7);
        assert_eq!(render_form(&Form::<ScaledScalar>::zero(2), RenderStyle::Plain), "0");
    }
}
