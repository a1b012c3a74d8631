use serde::Serialize;

use super::{Coeffs, Convention, GwistorError};
use crate::exterior::Form;
use crate::scalars::{exp, Gen, Poly, QuadNum, RadPrefactor, Ring, ScaledScalar, Surd, Sym};

/// `P[i][j]` = coefficient of `e0123456` in `(e_i ⌟ σ) ∧ (e_j ⌟ σ) ∧ σ`.
pub fn pairing_matrix<C: Ring>(sigma: &Form<C>) -> [[C; 7]; 7] {
    let c: Vec<Form<C>> = (0..7).map(|k| sigma.contract(k).expect("3-form")).collect();
    let mut p: [[C; 7]; 7] = std::array::from_fn(|_| std::array::from_fn(|_| C::nil()));
    for i in 0..7 {
        let ci_s = c[i].wedge(sigma);
        for j in i..7 {
            let v = c[j].wedge(&ci_s).top();
            p[i][j] = v.clone();
            p[j][i] = v;
        }
    }
    p
}

/// Sign data deciding whether `σ` is a positive 3-form.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stability {
    /// `f4 > 0`, `x > 0` and `q > 0`: the induced pairing is positive definite.
    pub stable: bool,
    /// `f4 > 0`, `x > 0` and `h > 0`. This is a strict subset of the stable set.
    pub block_region: bool,
    #[serde(serialize_with = "ser_quad")]
    pub f4: QuadNum,
    #[serde(serialize_with = "ser_quad")]
    pub x: QuadNum,
    #[serde(serialize_with = "ser_quad")]
    pub y: QuadNum,
    #[serde(serialize_with = "ser_quad")]
    pub z: QuadNum,
    #[serde(serialize_with = "ser_quad")]
    pub h: QuadNum,
    #[serde(serialize_with = "ser_quad")]
    pub q: QuadNum,
}

fn ser_quad<S: serde::Serializer>(q: &QuadNum, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.render())
}

impl Stability {
    pub fn holds(&self, conv: Convention) -> bool {
        match conv {
            Convention::Induced => self.stable,
            Convention::Block => self.block_region,
        }
    }
}

pub fn is_stable(c: &Coeffs) -> Result<Stability, GwistorError> {
    let f = c.values()?;
    let (f0, f1, f2, f3, f4) = (&f[0], &f[1], &f[2], &f[3], &f[4]);
    let x = &(f2 * f2) - &(f1 * f3);
    let y = &(f1 * f1) - &(f0 * f2);
    let z = &(f1 * f2) - &(f0 * f3);
    let h = &(&x * &y) - &(&z * &z);
    let q = &(&x * &y) - &(&z * &z).scale(&crate::scalars::rat(1, 4));
    let base = f4.is_positive() && x.is_positive();
    Ok(Stability {
        stable: base && q.is_positive(),
        block_region: base && h.is_positive(),
        f4: f4.clone(),
        x,
        y,
        z,
        h,
        q,
    })
}

/// Metric data of `σ`: the Gram matrix of the frame `e_a`, the volume factor
/// `m` with `Vol_σ = m VolG`, and the scale `t = f4/m`.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricData<C: Ring> {
    pub convention: Convention,
    pub g: [[C; 7]; 7],
    pub m: C,
    pub t: C,
    pub x: C,
    pub y: C,
    pub z: C,
    pub h: C,
    pub q: C,
}

/// Pieces shared by metric and frame formulas for a convention.
pub(crate) struct Parts {
    pub d_gen: Gen,
    pub d_sym: Sym,
    /// Mixed entry `w` of the block matrix (without `t`).
    pub w: Poly,
}

impl Parts {
    pub fn of(conv: Convention) -> Parts {
        match conv {
            Convention::Induced => Parts {
                d_gen: Gen::Q,
                d_sym: Sym::Q,
                w: Poly::var(Sym::Z).scale(&crate::scalars::rat(1, 2)),
            },
            Convention::Block => Parts { d_gen: Gen::H, d_sym: Sym::H, w: Poly::var(Sym::Z) },
        }
    }

    /// `t^e` where `t = D^(-1/3)`.
    pub fn t_pow(&self, conv: Convention, e: crate::scalars::Exp) -> RadPrefactor {
        match conv {
            Convention::Block => RadPrefactor::single(Gen::T, e),
            Convention::Induced => RadPrefactor::single(self.d_gen, -e / 3),
        }
    }
}

impl MetricData<ScaledScalar> {
    pub fn symbolic(conv: Convention) -> Self {
        let parts = Parts::of(conv);
        let t = parts.t_pow(conv, exp(1, 1));
        let entry = |body: Poly| ScaledScalar::term(t, body);
        let mut g: [[ScaledScalar; 7]; 7] = std::array::from_fn(|_| std::array::from_fn(|_| ScaledScalar::zero()));
        g[0][0] = entry(Poly::var(Sym::F4).pow(2));
        for i in 1..4 {
            g[i][i] = entry(Poly::var(Sym::X));
            g[i + 3][i + 3] = entry(Poly::var(Sym::Y));
            g[i][i + 3] = entry(parts.w.clone());
            g[i + 3][i] = entry(parts.w.clone());
        }
        let s = ScaledScalar::sym;
        MetricData {
            convention: conv,
            g,
            m: ScaledScalar::term(RadPrefactor::single(parts.d_gen, exp(1, 3)), Poly::var(Sym::F4)),
            t: ScaledScalar::pref(t),
            x: s(Sym::X),
            y: s(Sym::Y),
            z: s(Sym::Z),
            h: s(Sym::H),
            q: s(Sym::Q),
        }
    }

    /// Evaluates at exact coefficients.
    pub fn evaluate(&self, c: &Coeffs) -> Result<MetricData<Surd>, GwistorError> {
        let a = c.assignment()?;
        let ev = |s: &ScaledScalar| s.eval_surd(&a);
        let mut g: [[Surd; 7]; 7] = std::array::from_fn(|_| std::array::from_fn(|_| Surd::zero()));
        for i in 0..7 {
            for j in 0..7 {
                g[i][j] = ev(&self.g[i][j])?;
            }
        }
        Ok(MetricData {
            convention: self.convention,
            g,
            m: ev(&self.m)?,
            t: ev(&self.t)?,
            x: ev(&self.x)?,
            y: ev(&self.y)?,
            z: ev(&self.z)?,
            h: ev(&self.h)?,
            q: ev(&self.q)?,
        })
    }
}

/// Metric data at exact coefficients; fails when `σ` is not stable in the
/// chosen convention.
pub fn metric_data(c: &Coeffs, conv: Convention) -> Result<MetricData<Surd>, GwistorError> {
    let st = is_stable(c)?;
    if !st.holds(conv) {
        return Err(GwistorError::Unstable(format!(
            "f4 = {}, x = {}, q = {}, h = {}",
            st.f4.render(),
            st.x.render(),
            st.q.render(),
            st.h.render()
        )));
    }
    MetricData::symbolic(conv).evaluate(c)
}

/// `m` recovered from `m^9 = det(P/6)` in floating point, for cross-checks.
pub fn m_from_determinant(p: &[[f64; 7]; 7]) -> f64 {
    let mut a = *p;
    for row in a.iter_mut() {
        for v in row.iter_mut() {
            *v /= 6.0;
        }
    }
    let mut det = 1.0;
    for col in 0..7 {
        let piv = (col..7).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        if a[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..7 {
            let k = a[r][col] / a[col][col];
            for c in col..7 {
                a[r][c] -= k * a[col][c];
            }
        }
    }
    det.cbrt().cbrt()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::gwistor::{build_sigma, build_sigma_exact};
    use crate::scalars::{int, rat, Rat};

    fn rat_matrix(c: &Coeffs) -> [[Rat; 7]; 7] {
        let p = pairing_matrix(&build_sigma_exact(c).unwrap());
        p.map(|row| row.map(|v| v.as_rational().unwrap()))
    }

    #[test]
    fn sigma0_pairs_to_six_times_identity() {
        let p = rat_matrix(&Coeffs::sigma0());
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(p[i][j], if i == j { int(6) } else { int(0) });
            }
        }
    }

    #[test]
    fn mixed_entry_carries_half_of_z() {
        let c = Coeffs::from_rats(&[int(-1), rat(1, 2), int(1), int(0), int(1)]);
        let p = rat_matrix(&c);
        assert_eq!(p[0][0], int(6));
        assert_eq!(p[1][1], int(6));
        assert_eq!(p[4][4], rat(15, 2));
        assert_eq!(p[1][4], rat(3, 2));
        assert_eq!(p[2][5], rat(3, 2));
    }

    #[test]
    fn symbolic_pairing_is_six_f4_times_block_matrix() {
        let p = pairing_matrix(&build_sigma(&Coeffs::Symbolic).unwrap());
        let f4 = Poly::var(Sym::F4);
        let six_f4 = |b: Poly| ScaledScalar::from_poly(&b * &f4.scale(&int(6)));
        let md = MetricData::symbolic(Convention::Induced);
        for i in 0..7 {
            for j in 0..7 {
                let want = match (i, j) {
                    (0, 0) => six_f4(Poly::var(Sym::F4).pow(2)),
                    _ if i == j && i <= 3 => six_f4(Poly::var(Sym::X)),
                    _ if i == j => six_f4(Poly::var(Sym::Y)),
                    _ if i != 0 && j != 0 && (i as i32 - j as i32).abs() == 3 => six_f4(Parts::of(Convention::Induced).w),
                    _ => ScaledScalar::zero(),
                };
                assert!(ScaledScalar::scaled_equal(&p[i][j], &want), "P[{i}][{j}]");
                // G = P / (6m) as stated by the metric data.
                let g6m = &(&md.g[i][j] * &md.m) * &ScaledScalar::from_rat(int(6));
                assert!(ScaledScalar::scaled_equal(&p[i][j], &g6m), "G[{i}][{j}]");
            }
        }
    }

    #[test]
    fn stability_examples() {
        let s = is_stable(&Coeffs::sigma0()).unwrap();
        assert!(s.stable && s.block_region);
        let c = Coeffs::from_rats(&[int(-1), rat(1, 2), int(1), int(0), int(1)]);
        let s = is_stable(&c).unwrap();
        assert!(s.stable);
        assert_eq!(s.h, QuadNum::rational(int(1)));
        assert_eq!(s.q, QuadNum::rational(rat(19, 16)));
        let s = is_stable(&Coeffs::from_ints([1, 0, 1, 0, 1])).unwrap();
        assert!(!s.stable);
        assert_eq!(s.h, QuadNum::rational(int(-1)));
        // h = 0 but q > 0: stable although outside the block region.
        let s = is_stable(&Coeffs::from_ints([0, 1, 1, 0, 1])).unwrap();
        assert!(s.stable && !s.block_region);
        assert!(metric_data(&Coeffs::from_ints([1, 0, 1, 0, 1]), Convention::Induced).is_err());
    }

    #[test]
    fn metric_data_at_sigma0_is_flat() {
        let md = metric_data(&Coeffs::sigma0(), Convention::Induced).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                let want = if i == j { 1 } else { 0 };
                assert_eq!(md.g[i][j].as_rational(), Some(int(want)));
            }
        }
        assert_eq!(md.m.as_rational(), Some(int(1)));
        assert_eq!(md.t.as_rational(), Some(int(1)));
    }

    #[test]
    fn determinant_recovers_m() {
        let c = Coeffs::from_rats(&[int(-1), rat(1, 2), int(1), int(0), int(2)]);
        let p = rat_matrix(&c).map(|r| r.map(|v| crate::scalars::rat_to_f64(&v)));
        let md = metric_data(&c, Convention::Induced).unwrap();
        assert!((m_from_determinant(&p) - md.m.to_f64().unwrap()).abs() < 1e-12);
    }
}
