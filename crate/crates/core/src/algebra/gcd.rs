//! Multivariate gcd over ℚ by recursive primitive pseudo-remainder
//! sequences, and square-free parts built on it.

use super::sparse::SparsePoly;

/// Greatest common divisor, normalized to leading coefficient one.
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return SparsePoly::one(a.nvars());
    }
    let main = match main_variable(a, b) {
        Some(v) => v,
        None => return SparsePoly::one(a.nvars()),
    };
    let ca = content(a, main);
    let cb = content(b, main);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = primitive_gcd(pa, pb, main);
    (&c * &g).monic()
}

pub fn gcd_many<'a>(polys: impl IntoIterator<Item = &'a SparsePoly>) -> Option<SparsePoly> {
    let mut it = polys.into_iter();
    let mut g = it.next()?.monic();
    for p in it {
        if g.is_constant() && !g.is_zero() {
            break;
        }
        g = gcd(&g, p);
    }
    Some(g)
}

/// Product of the distinct irreducible factors, up to a scalar.
///
/// Uses `f / gcd(f, ∂f/∂x_0, …, ∂f/∂x_n)`, valid in characteristic zero.
pub fn squarefree_part(f: &SparsePoly) -> SparsePoly {
    if f.is_zero() || f.is_constant() {
        return f.monic();
    }
    let mut g = f.monic();
    for v in f.support_vars() {
        if g.is_constant() {
            break;
        }
        g = gcd(&g, &f.derivative(v));
    }
    f.div_exact(&g).expect("gcd divides").monic()
}

fn main_variable(a: &SparsePoly, b: &SparsePoly) -> Option<usize> {
    // the variable occurring in both with the smallest combined degree keeps
    // the pseudo-remainder sequence short
    let va = a.support_vars();
    let vb = b.support_vars();
    let common: Vec<usize> = va.iter().copied().filter(|v| vb.contains(v)).collect();
    if common.is_empty() {
        return None;
    }
    common.into_iter().min_by_key(|&v| a.degree_in(v) + b.degree_in(v))
}

/// gcd of the coefficients of `f` viewed as a polynomial in `var`.
fn content(f: &SparsePoly, var: usize) -> SparsePoly {
    let cs: Vec<SparsePoly> = f.coeffs_in(var).into_iter().filter(|c| !c.is_zero()).collect();
    let mut g = cs[0].monic();
    for c in &cs[1..] {
        if g.is_constant() {
            break;
        }
        g = gcd(&g, c);
    }
    g
}

fn primitive_part(f: &SparsePoly, var: usize) -> SparsePoly {
    let c = content(f, var);
    f.div_exact(&c).expect("content divides")
}

fn primitive_gcd(mut a: SparsePoly, mut b: SparsePoly, var: usize) -> SparsePoly {
    if a.degree_in(var) < b.degree_in(var) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_zero() {
            return primitive_part(&a, var).monic();
        }
        if b.degree_in(var) == 0 {
            return SparsePoly::one(a.nvars());
        }
        let r = pseudo_remainder(&a, &b, var);
        a = b;
        b = if r.is_zero() { r } else { primitive_part(&r, var).integer_primitive() };
    }
}

/// Pseudo-remainder of `a` by `b` with respect to `var`.
pub fn pseudo_remainder(a: &SparsePoly, b: &SparsePoly, var: usize) -> SparsePoly {
    let n = b.degree_in(var);
    let bc = b.coeffs_in(var);
    let lb = &bc[n as usize];
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= n {
        let m = r.degree_in(var);
        let lr = r.coeffs_in(var).swap_remove(m as usize);
        let mut shift = vec![0; a.nvars()];
        shift[var] = m - n;
        let t = &lr * &b.mul_monomial(&shift, &super::Rat::from_integer(1.into()));
        r = &(lb * &r) - &t;
    }
    r
}
