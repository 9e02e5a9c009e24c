//! Buchberger completion of a small generator set, used to decide ideal
//! membership when plain division by the generators leaves a remainder.

use std::collections::BTreeSet;

use super::param_poly::{pp_reduce, Monomial, ParamPoly, NVARS};

/// Completion stopped before reaching a Gröbner basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisLimitExceeded {
    pub basis_size: usize,
}

fn lcm(a: &Monomial, b: &Monomial) -> Monomial {
    let mut e = [0u16; NVARS];
    for (k, x) in e.iter_mut().enumerate() {
        *x = a.0[k].max(b.0[k]);
    }
    Monomial(e)
}

fn coprime(a: &Monomial, b: &Monomial) -> bool {
    a.0.iter().zip(b.0.iter()).all(|(x, y)| *x == 0 || *y == 0)
}

fn lead(p: &ParamPoly) -> Monomial {
    *p.leading_term().expect("nonzero polynomial").0
}

fn monic(p: &ParamPoly) -> ParamPoly {
    let (_, c) = p.leading_term().expect("nonzero polynomial");
    p.scale(&c.inv().expect("nonzero leading coefficient"))
}

fn s_polynomial(f: &ParamPoly, g: &ParamPoly) -> ParamPoly {
    let (lf, lg) = (lead(f), lead(g));
    let l = lcm(&lf, &lg);
    let a = f.mul_monomial(&lf.quotient_of(&l));
    let b = g.mul_monomial(&lg.quotient_of(&l));
    &a - &b
}

/// Reduced Gröbner basis of `generators` in the fixed term order, giving up
/// once the working basis holds more than `max_size` polynomials.
pub fn groebner_basis(generators: &[ParamPoly], max_size: usize) -> Result<Vec<ParamPoly>, BasisLimitExceeded> {
    let mut basis: Vec<ParamPoly> = generators.iter().filter(|g| !g.is_zero()).map(monic).collect();
    // pending pairs ordered by (lcm, i, j): normal selection strategy
    let mut pending: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((lcm(&lead(&basis[i]), &lead(&basis[j])), i, j));
        }
    }
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();

    while let Some((l, i, j)) = pending.pop_first() {
        done.insert((i, j));
        let (li, lj) = (lead(&basis[i]), lead(&basis[j]));
        if coprime(&li, &lj) {
            continue;
        }
        // chain criterion: some k has lm_k | lcm and both (i,k), (j,k) already handled
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chained = (0..basis.len()).any(|k| {
            k != i && k != j && lead(&basis[k]).divides(&l) && done.contains(&key(i, k)) && done.contains(&key(j, k))
        });
        if chained {
            continue;
        }
        let r = pp_reduce(&s_polynomial(&basis[i], &basis[j]), &basis).remainder;
        if r.is_zero() {
            continue;
        }
        if basis.len() >= max_size {
            return Err(BasisLimitExceeded { basis_size: basis.len() });
        }
        let r = monic(&r);
        let lr = lead(&r);
        let n = basis.len();
        basis.push(r);
        for k in 0..n {
            pending.insert((lcm(&lead(&basis[k]), &lr), k, n));
        }
    }
    Ok(interreduce(basis))
}

/// Drops redundant leading monomials and fully reduces every element.
fn interreduce(basis: Vec<ParamPoly>) -> Vec<ParamPoly> {
    let leads: Vec<Monomial> = basis.iter().map(lead).collect();
    let mut minimal: Vec<ParamPoly> = Vec::new();
    for (k, p) in basis.iter().enumerate() {
        let redundant = leads.iter().enumerate().any(|(m, lm)| {
            m != k && lm.divides(&leads[k]) && (*lm != leads[k] || m < k)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<ParamPoly> = minimal.iter().enumerate().filter(|(m, _)| *m != k).map(|(_, p)| p.clone()).collect();
        let (lm, lc) = minimal[k].leading_term().map(|(m, c)| (*m, c.clone())).unwrap();
        let mut tail = minimal[k].clone();
        tail.add_term(lm, &-lc.clone());
        let mut reduced = pp_reduce(&tail, &others).remainder;
        reduced.add_term(lm, &lc);
        out.push(monic(&reduced));
    }
    out.sort_by_key(lead);
    out
}

/// True when `p` has zero remainder modulo a Gröbner basis.
pub fn reduces_to_zero(p: &ParamPoly, basis: &[ParamPoly]) -> bool {
    pp_reduce(p, basis).remainder.is_zero()
}
