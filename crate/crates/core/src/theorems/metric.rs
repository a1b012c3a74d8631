use std::time::Instant;

use super::{as_poly, Certificate, Context, Verdict};
use crate::exterior::Form;
use crate::gwistor::{pairing_matrix, Convention, Frame};
use crate::scalars::{exp, int, parse_scalar, Gen, Poly, RadPrefactor, Rat, ScaledScalar, Sym};

fn matrix_render(rows: &[[Poly; 7]]) -> String {
    rows.iter()
        .map(|r| format!("[{}]", r.iter().map(|p| p.render()).collect::<Vec<_>>().join(", ")))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Symbolic pairing matrix against the block matrix `6 f4 t⁻¹ [f4², x, y; z]`,
/// the `σ0` specialization and the quartic `h`.
pub fn verify_metric(ctx: &Context) -> Verdict {
    let start = Instant::now();
    let mut c = Certificate::default();
    let f = &ctx.forms;
    let sigma = f.sigma::<ScaledScalar>(&std::array::from_fn(|i| ScaledScalar::sym(Sym::f(i))));
    let p = pairing_matrix(&sigma);
    let mut pp: Vec<[Poly; 7]> = Vec::new();
    for row in p.iter() {
        let mut r: [Poly; 7] = std::array::from_fn(|_| Poly::zero());
        for (j, e) in row.iter().enumerate() {
            match as_poly(e) {
                Ok(q) => r[j] = q,
                Err(err) => {
                    c.error("pairing matrix is polynomial", err);
                    return c.finish("metric", None, start);
                }
            }
        }
        pp.push(r);
    }
    let six_f4 = Poly::var(Sym::F4).scale(&int(6));
    let v = |s: Sym| Poly::derived(s).unwrap_or_else(|| Poly::var(s));
    let block = |i: usize, j: usize, off: &Poly| -> Poly {
        let body = match (i, j) {
            (0, 0) => Poly::var(Sym::F4).pow(2),
            (a, b) if a == b && a <= 3 => v(Sym::X),
            (a, b) if a == b => v(Sym::Y),
            (a, b) if a.abs_diff(b) == 3 && a.min(b) >= 1 => off.clone(),
            _ => Poly::zero(),
        };
        &six_f4 * &body
    };
    let group = |c: &mut Certificate, claim: &str, cells: &[(usize, usize)], off: &Poly| {
        let bad = cells.iter().find(|&&(i, j)| pp[i][j] != block(i, j, off));
        let (i, j) = bad.copied().unwrap_or(cells[0]);
        c.check(claim, format!("P{i}{j} = {}", pp[i][j].render()), block(i, j, off).render(), bad.is_none());
    };
    let z = v(Sym::Z);
    let diag_x: Vec<_> = (1..4).map(|i| (i, i)).collect();
    let diag_y: Vec<_> = (4..7).map(|i| (i, i)).collect();
    let mixed: Vec<_> = (1..4).flat_map(|i| [(i, i + 3), (i + 3, i)]).collect();
    let rest: Vec<_> = (0..7)
        .flat_map(|i| (0..7).map(move |j| (i, j)))
        .filter(|cell| cell.0 != cell.1 && !mixed.contains(cell))
        .collect();
    group(&mut c, "P00 = 6 f4^3", &[(0, 0)], &z);
    group(&mut c, "P_ii = 6 f4 x (i = 1, 2, 3)", &diag_x, &z);
    group(&mut c, "P_ii = 6 f4 y (i = 4, 5, 6)", &diag_y, &z);
    group(&mut c, "P_i(i+3) = 6 f4 z", &mixed, &z);
    group(&mut c, "remaining entries vanish", &rest, &z);
    group(&mut c, "P_i(i+3) = 3 f4 z", &mixed, &z.scale(&crate::scalars::rat(1, 2)));

    let s0 = pairing_matrix(&f.sigma0::<Rat>());
    let id: Vec<[Poly; 7]> = (0..7)
        .map(|i| std::array::from_fn(|j| if i == j { Poly::int(6) } else { Poly::zero() }))
        .collect();
    let s0p: Vec<[Poly; 7]> = s0.iter().map(|r| std::array::from_fn(|j| Poly::constant(r[j].clone()))).collect();
    c.check("sigma0 pairing = 6 * identity (metric = identity, m = 1)", matrix_render(&s0p), matrix_render(&id), s0p == id);

    let quartic = parse_scalar("3*f0*f1*f2*f3 - f0*f2^3 - f0^2*f3^2 - f3*f1^3")
        .and_then(|s| s.to_symbolic_poly())
        .expect("literal");
    c.polys("h = xy - z^2 expands to the quartic", &v(Sym::H), &quartic);
    c.finish("metric", None, start)
}

/// Orthonormal coframes: both compositions are the identity and the volume
/// is `m VolG`.
pub fn verify_frames(ctx: &Context) -> Verdict {
    let start = Instant::now();
    let mut c = Certificate::default();
    for (conv, gen) in [(Convention::Block, Gen::H), (Convention::Induced, Gen::Q)] {
        let fr = Frame::symbolic(conv);
        let name = conv.name();
        let defects = fr.round_trip_defects();
        let ok = defects.iter().all(|d| d.is_zero());
        c.check(
            format!("{name} frame: inverse formulas undo the coframe"),
            defects.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", "),
            "0, 0, 0, 0, 0, 0, 0",
            ok,
        );
        let back: Vec<Form<ScaledScalar>> =
            (0..7).map(|a| (&fr.to_tilde(&fr.coframe[a]) - &Form::basis(&[a as u8])).normalized()).collect();
        c.check(
            format!("{name} frame: coframe undoes the inverse formulas"),
            back.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", "),
            "0, 0, 0, 0, 0, 0, 0",
            back.iter().all(|d| d.is_zero()),
        );
        let m = ScaledScalar::term(RadPrefactor::single(gen, exp(1, 3)), Poly::var(Sym::F4));
        c.forms(
            format!("{name} frame: e~^0..6 = f4 {}^(1/3) VolG", gen.name()),
            &fr.volume(),
            &ctx.forms.vol_g::<ScaledScalar>().scale(&m),
        );
    }
    c.finish("frames", None, start)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_off_diagonal_is_twice_the_induced_one() {
        let v = verify_metric(&Context::default());
        assert!(!v.entry("P_i(i+3) = 6 f4 z").unwrap().equal);
        let ok = |claim: &str| v.entry(claim).unwrap().equal;
        assert!(ok("P_i(i+3) = 3 f4 z"));
        assert!(ok("P00 = 6 f4^3") && ok("P_ii = 6 f4 x (i = 1, 2, 3)") && ok("P_ii = 6 f4 y (i = 4, 5, 6)"));
        assert!(ok("remaining entries vanish") && ok("h = xy - z^2 expands to the quartic"));
        assert!(ok("sigma0 pairing = 6 * identity (metric = identity, m = 1)"));
    }

    #[test]
    fn frames_pass() {
        let v = verify_frames(&Context::default());
        assert!(v.passed, "{:?}", v.failures().collect::<Vec<_>>());
    }
}
