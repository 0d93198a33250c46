//! Subresultant polynomial remainder sequences: resultants of multivariate
//! polynomials with respect to one variable, with controlled coefficient
//! growth (all interior divisions are exact).

use num_traits::Zero;

use super::mpoly::MPoly;

/// Univariate view over the MPoly coefficient ring.
#[derive(Clone, Debug)]
struct UPoly {
    // index = degree; no trailing zeros
    c: Vec<MPoly>,
}

impl UPoly {
    fn new(mut c: Vec<MPoly>) -> Self {
        while c.len() > 1 && c.last().unwrap().is_zero() {
            c.pop();
        }
        if c.is_empty() {
            c.push(MPoly::zero(0));
        }
        UPoly { c }
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|p| p.is_zero())
    }

    fn deg(&self) -> usize {
        self.c.len() - 1
    }

    fn lc(&self) -> &MPoly {
        self.c.last().unwrap()
    }

    fn scale(&self, k: &MPoly) -> UPoly {
        UPoly::new(self.c.iter().map(|p| p * k).collect())
    }

    fn shift_mul(&self, k: &MPoly, sh: usize) -> UPoly {
        let nv = self.c[0].nvars();
        let mut v = vec![MPoly::zero(nv); sh];
        v.extend(self.c.iter().map(|p| p * k));
        UPoly::new(v)
    }

    fn sub(&self, rhs: &UPoly) -> UPoly {
        let nv = self.c[0].nvars();
        let n = self.c.len().max(rhs.c.len());
        let get = |u: &UPoly, i: usize| u.c.get(i).cloned().unwrap_or_else(|| MPoly::zero(nv));
        UPoly::new((0..n).map(|i| &get(self, i) - &get(rhs, i)).collect())
    }

    fn div_exact(&self, k: &MPoly) -> UPoly {
        UPoly::new(
            self.c
                .iter()
                .map(|p| p.div_exact(k).expect("subresultant division is exact"))
                .collect(),
        )
    }
}

/// Pseudo-remainder of `a` by `b` with the full multiplier `lc(b)^(δ+1)`.
fn prem(a: &UPoly, b: &UPoly) -> UPoly {
    let d = b.lc().clone();
    let delta = a.deg() as i64 - b.deg() as i64;
    assert!(delta >= 0);
    let mut r = a.clone();
    let mut e = delta + 1;
    while !r.is_zero() && r.deg() >= b.deg() {
        let s = b.shift_mul(r.lc(), r.deg() - b.deg());
        r = r.scale(&d).sub(&s);
        e -= 1;
        if r.is_zero() {
            break;
        }
    }
    // pad remaining powers of the multiplier
    let mut out = r;
    while e > 0 {
        out = out.scale(&d);
        e -= 1;
    }
    out
}

/// Resultant of `a` and `b` with respect to `var`, up to a harmless nonzero
/// rational factor (inputs are content-normalised first). Returns the zero
/// polynomial when the two share a factor involving `var`.
///
/// Dispatches to a direct formula when one operand is linear in `var` and to
/// evaluation/interpolation when only one other variable is involved; the
/// general case runs the subresultant PRS.
pub fn resultant(a: &MPoly, b: &MPoly, var: usize) -> MPoly {
    let pa = a.primitive();
    let pb = b.primitive();
    if pa.degree_in(var) == 1 || pb.degree_in(var) == 1 {
        let (lin, other) = if pa.degree_in(var) == 1 { (&pa, &pb) } else { (&pb, &pa) };
        return resultant_linear(lin, other, var).primitive();
    }
    let others: Vec<usize> = (0..a.nvars())
        .filter(|&v| v != var && (pa.contains_var(v) || pb.contains_var(v)))
        .collect();
    if others.len() == 1 {
        if let Some(r) = resultant_bivariate(&pa, &pb, var, others[0]) {
            return r.primitive();
        }
    }
    resultant_prs(&pa, &pb, var)
}

/// Direct formula when `lin = alpha*x + beta` is linear in `x`:
/// `Res = sum_i g_i (-beta)^i alpha^(n-i)` up to sign.
fn resultant_linear(lin: &MPoly, other: &MPoly, var: usize) -> MPoly {
    let nv = lin.nvars();
    let lv = lin.univariate_view(var);
    let (beta, alpha) = (lv[0].clone(), lv[1].clone());
    let g = other.univariate_view(var);
    let n = g.len() - 1;
    let neg_beta = -&beta;
    let mut acc = MPoly::zero(nv);
    let mut beta_pow = MPoly::one(nv);
    let mut alpha_pows = vec![MPoly::one(nv)];
    for _ in 0..n {
        alpha_pows.push(&alpha_pows.last().unwrap().clone() * &alpha);
    }
    for (i, gi) in g.iter().enumerate() {
        if !gi.is_zero() {
            acc = &acc + &(&(gi * &beta_pow) * &alpha_pows[n - i]);
        }
        if i < n {
            beta_pow = &beta_pow * &neg_beta;
        }
    }
    acc
}

/// Evaluation/interpolation resultant when exactly one other variable `y`
/// occurs: specialise y, take scalar resultants, interpolate. Returns `None`
/// when too many specialisations are degenerate.
fn resultant_bivariate(a: &MPoly, b: &MPoly, var: usize, y: usize) -> Option<MPoly> {
    use super::intpoly::int_resultant;
    use crate::algebra::rational::{rat_int, Rational};
    use num_bigint::BigInt;
    let nv = a.nvars();
    let dx_a = a.degree_in(var) as usize;
    let dx_b = b.degree_in(var) as usize;
    let dy_a = a.degree_in(y) as usize;
    let dy_b = b.degree_in(y) as usize;
    let bound = dx_a * dy_b + dx_b * dy_a;
    let ua = a.univariate_view(var);
    let ub = b.univariate_view(var);
    // inputs are integer-primitive; x-power coefficients as integer polys in y
    let as_y = |m: &MPoly| -> Vec<BigInt> {
        let mut v = vec![BigInt::from(0); m.degree_in(y) as usize + 1];
        for (mon, c) in m.terms() {
            assert!(num_traits::One::is_one(c.denom()), "integer-primitive input");
            v[mon[y] as usize] += c.numer();
        }
        v
    };
    let eval_y = |coeffs: &[BigInt], t: &BigInt| -> BigInt {
        let mut acc = BigInt::from(0);
        for c in coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    };
    let ya: Vec<Vec<BigInt>> = ua.iter().map(as_y).collect();
    let yb: Vec<Vec<BigInt>> = ub.iter().map(as_y).collect();

    let mut samples: Vec<(Rational, Rational)> = vec![];
    let mut t_iter = 0i64;
    let mut attempts = 0;
    while samples.len() <= bound {
        attempts += 1;
        if attempts > 4 * (bound as i32 + 8) {
            return None;
        }
        let ti = next_sample(&mut t_iter);
        let t = BigInt::from(ti);
        let fa: Vec<BigInt> = ya.iter().map(|c| eval_y(c, &t)).collect();
        let fb: Vec<BigInt> = yb.iter().map(|c| eval_y(c, &t)).collect();
        // skip degenerate specialisations (leading coefficient vanished)
        if num_traits::Zero::is_zero(fa.last().unwrap()) || num_traits::Zero::is_zero(fb.last().unwrap()) {
            continue;
        }
        let r = int_resultant(&fa, &fb);
        samples.push((rat_int(ti), Rational::from_integer(r)));
    }
    // Lagrange interpolation (Newton form) to a univariate in y
    let coeffs = newton_interpolate(&samples);
    let mut out = MPoly::zero(nv);
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            let mut mono = vec![0u16; nv];
            mono[y] = k as u16;
            out = &out + &MPoly::from_terms(nv, vec![(mono, c.clone())]);
        }
    }
    Some(out)
}

fn next_sample(state: &mut i64) -> i64 {
    // 0, 1, -1, 2, -2, ...
    let s = *state;
    *state += 1;
    if s == 0 {
        0
    } else if s % 2 == 1 {
        (s + 1) / 2
    } else {
        -(s / 2)
    }
}

fn newton_interpolate(samples: &[(crate::algebra::Rational, crate::algebra::Rational)]) -> Vec<crate::algebra::Rational> {
    use crate::algebra::rational::Rational;
    let n = samples.len();
    // divided differences
    let mut dd: Vec<Rational> = samples.iter().map(|(_, v)| v.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &samples[i].0 - &samples[i - j].0;
            dd[i] = num / den;
        }
    }
    // expand Newton form into monomial coefficients
    let mut coeffs = vec![Rational::zero(); n];
    let mut basis = vec![Rational::zero(); n];
    basis[0] = Rational::from_integer(1.into());
    let mut basis_len = 1;
    for (i, d) in dd.iter().enumerate() {
        for k in 0..basis_len {
            coeffs[k] += d * &basis[k];
        }
        if i + 1 < n {
            // basis *= (y - x_i)
            let xi = samples[i].0.clone();
            for k in (0..basis_len).rev() {
                let b = basis[k].clone();
                basis[k + 1] += &b;
                basis[k] = -(b * &xi);
            }
            basis_len += 1;
        }
    }
    while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
        coeffs.pop();
    }
    coeffs
}

/// Subresultant PRS over the multivariate coefficient ring.
fn resultant_prs(pa: &MPoly, pb: &MPoly, var: usize) -> MPoly {
    let nv = pa.nvars();
    let ua = UPoly::new(pa.univariate_view(var));
    let ub = UPoly::new(pb.univariate_view(var));
    if ua.is_zero() || ub.is_zero() {
        return MPoly::zero(nv);
    }
    let (mut f, mut g) = if ua.deg() >= ub.deg() { (ua, ub) } else { (ub, ua) };
    if g.deg() == 0 {
        // res(f, const) = const^deg(f)
        return g.lc().pow(f.deg() as u32);
    }
    let one = MPoly::one(nv);
    let mut h = one.clone();
    let mut s = one.clone();
    loop {
        let delta = (f.deg() - g.deg()) as u32;
        let r = prem(&f, &g);
        if r.is_zero() {
            // nonconstant common factor
            return MPoly::zero(nv);
        }
        let divisor = &s * &h.pow(delta);
        let next = r.div_exact(&divisor);
        f = g;
        s = f.lc().clone();
        h = if delta == 0 {
            h
        } else {
            // h <- s^delta / h^(delta-1)
            s.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant h update")
        };
        g = next;
        if g.deg() == 0 {
            break;
        }
    }
    // final correction: res = lc(g)^deg(f) / h^(deg(f) - 1)
    let p = f.deg() as u32;
    let num = g.lc().pow(p);
    if p <= 1 {
        return num.primitive();
    }
    num.div_exact(&h.pow(p - 1))
        .expect("subresultant final division")
        .primitive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn univariate_resultants() {
        // res(x^2 - 1, x - 2) ~ 3 (nonzero)
        let x = MPoly::var(1, 0);
        let a = &(&x * &x) - &MPoly::one(1);
        let b = &x - &MPoly::constant(1, rat(2, 1));
        let r = resultant(&a, &b, 0);
        assert!(r.is_constant() && !r.is_zero());
        // common root -> zero
        let c = &x - &MPoly::one(1);
        assert!(resultant(&a, &c, 0).is_zero());
    }

    #[test]
    fn eliminates_shared_root_exactly() {
        // a = x^2 + y^2 - 5, b = x*y - 2: eliminating x gives a poly in y
        // whose roots include y = 1, 2 (from (x,y) = (2,1),(1,2))
        let nv = 2;
        let x = MPoly::var(nv, 0);
        let y = MPoly::var(nv, 1);
        let a = &(&(&x * &x) + &(&y * &y)) - &MPoly::constant(nv, rat(5, 1));
        let b = &(&x * &y) - &MPoly::constant(nv, rat(2, 1));
        let r = resultant(&a, &b, 0);
        assert!(!r.contains_var(0));
        // r(y) vanishes at y = 1, 2, -1, -2
        for v in [1i64, 2, -1, -2] {
            let val = r.eval(&[crate::algebra::QuadExt::zero(), crate::algebra::QuadExt::from_i64(v)]);
            assert!(val.is_zero(), "y = {v}");
        }
        let val = r.eval(&[crate::algebra::QuadExt::zero(), crate::algebra::QuadExt::from_i64(3)]);
        assert!(!val.is_zero());
    }

    #[test]
    fn matches_sylvester_on_small_cases() {
        // res_x(a0 + a1 x, b0 + b1 x) = a0 b1 - a1 b0 up to sign/scale;
        // check the vanishing locus on a grid
        let nv = 3; // x, s, t
        let x = MPoly::var(nv, 0);
        let s = MPoly::var(nv, 1);
        let t = MPoly::var(nv, 2);
        // a = x^2 - s, b = x^2 + x - t
        let a = &(&x * &x) - &s;
        let b = &(&(&x * &x) + &x) - &t;
        let r = resultant(&a, &b, 0);
        assert!(!r.contains_var(0));
        // for any u: x = u gives s = u^2, t = u^2 + u on the locus
        for u in -4i64..=4 {
            let sv = crate::algebra::QuadExt::from_i64(u * u);
            let tv = crate::algebra::QuadExt::from_i64(u * u + u);
            let val = r.eval(&[crate::algebra::QuadExt::zero(), sv, tv]);
            assert!(val.is_zero(), "u = {u}");
        }
    }
}
