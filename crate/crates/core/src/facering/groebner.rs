use std::collections::BTreeSet;

use super::poly::{Monomial, Polynomial};
use crate::exactfield::Scalar;

/// Remainder of `p` on full reduction by `basis` (leading terms taken in
/// grevlex order). Unique when `basis` is a Gröbner basis.
pub fn normal_form(p: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let leads: Vec<(&Monomial, Scalar)> = basis
        .iter()
        .filter_map(|g| g.leading_term().map(|(x, c)| (x, c.inverse().unwrap())))
        .collect();
    let mut work = p.clone();
    let mut rem = Polynomial::zero();
    while let Some((x, c)) = work.pop_leading() {
        let hit = leads
            .iter()
            .zip(basis)
            .find_map(|((lm, inv), g)| lm.quotient(&x).map(|q| (q, inv, g)));
        match hit {
            Some((q, inv, g)) => {
                // the leading term cancels exactly; subtract the tail
                let factor = -(&c * inv);
                for (y, d) in g.terms().rev().skip(1) {
                    work.add_term(q.mul(y), &factor * d);
                }
            }
            None => rem.add_term(x, c),
        }
    }
    rem
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fx, fc) = f.leading_term().unwrap();
    let (gx, gc) = g.leading_term().unwrap();
    let l = fx.lcm(gx);
    let mut s = f
        .mul_monomial(&fx.quotient(&l).unwrap())
        .scale(&fc.inverse().unwrap());
    s.add_scaled(&-gc.inverse().unwrap(), &gx.quotient(&l).unwrap(), g);
    s
}

/// Reduced Gröbner basis under grevlex (`v_1 > ... > v_m`): monic, sorted
/// by leading monomial with lower degree first and, within a degree, the
/// larger leading monomial first.
pub fn groebner_basis(gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut g: Vec<Polynomial> = Vec::new();
    for p in gens {
        let r = normal_form(p, &g);
        if !r.is_zero() {
            g.push(r.monic());
        }
    }
    // Pending pairs keyed by (lcm, i, j) so the smallest lcm is taken first.
    let mut pending: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    let lm = |g: &Vec<Polynomial>, i: usize| g[i].leading_monomial().unwrap().clone();
    for j in 0..g.len() {
        for i in 0..j {
            pending.insert((lm(&g, i).lcm(&lm(&g, j)), i, j));
        }
    }
    let is_pending =
        |pending: &BTreeSet<(Monomial, usize, usize)>, g: &Vec<Polynomial>, a: usize, b: usize| {
            let (i, j) = (a.min(b), a.max(b));
            pending.contains(&(lm(g, i).lcm(&lm(g, j)), i, j))
        };
    while let Some((l, i, j)) = pending.pop_first() {
        let (li, lj) = (lm(&g, i), lm(&g, j));
        if li.is_coprime(&lj) {
            continue;
        }
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && lm(&g, k).divides(&l)
                && !is_pending(&pending, &g, i, k)
                && !is_pending(&pending, &g, j, k)
        });
        if chain {
            continue;
        }
        let r = normal_form(&s_polynomial(&g[i], &g[j]), &g);
        if !r.is_zero() {
            let r = r.monic();
            let lr = r.leading_monomial().unwrap().clone();
            let k = g.len();
            g.push(r);
            for a in 0..k {
                pending.insert((lm(&g, a).lcm(&lr), a, k));
            }
        }
    }
    reduce_basis(g)
}

/// Drops elements with redundant leading monomials, then fully reduces the
/// rest against each other.
fn reduce_basis(g: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let x = p.leading_monomial().unwrap();
        let redundant = g.iter().enumerate().any(|(j, q)| {
            let y = q.leading_monomial().unwrap();
            j != i && y.divides(x) && (y != x || j < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut reduced: Vec<Polynomial> = (0..minimal.len())
        .map(|i| {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| q.clone())
                .collect();
            normal_form(&minimal[i], &others).monic()
        })
        .collect();
    reduced.sort_by(|a, b| {
        let (x, y) = (a.leading_monomial().unwrap(), b.leading_monomial().unwrap());
        x.degree().cmp(&y.degree()).then_with(|| y.cmp(x))
    });
    reduced
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(c: &[i64]) -> Polynomial {
        Polynomial::linear(&c.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>())
    }

    fn mono(e: &[u16]) -> Polynomial {
        Polynomial::monomial(Monomial::from_exponents(e))
    }

    fn show(g: &[Polynomial]) -> Vec<String> {
        g.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn cp2_basis() {
        let g = groebner_basis(&[lin(&[1, 0, -1]), lin(&[0, 1, -1]), mono(&[1, 1, 1])]);
        assert_eq!(show(&g), ["v1 - v3", "v2 - v3", "v3^3"]);
        assert_eq!(normal_form(&mono(&[1, 1, 0]), &g).to_string(), "v3^2");
        assert!(normal_form(&mono(&[0, 0, 3]), &g).is_zero());
        assert_eq!(normal_form(&mono(&[0, 0, 0]), &g).to_string(), "1");
    }

    #[test]
    fn principal_and_square() {
        assert_eq!(show(&groebner_basis(&[mono(&[1, 0])])), ["v1"]);
        let g = groebner_basis(&[
            mono(&[1, 0, 1, 0]),
            mono(&[0, 1, 0, 1]),
            lin(&[1, 0, -1, 0]),
            lin(&[0, 1, 0, -1]),
        ]);
        assert_eq!(show(&g), ["v1 - v3", "v2 - v4", "v3^2", "v4^2"]);
    }

    #[test]
    fn generators_reduce_to_zero() {
        // normal_form(p * g) = 0 for all basis elements
        let gens = [
            lin(&[1, 2, -1, 0]),
            lin(&[0, 1, 1, -3]),
            mono(&[1, 1, 0, 0]),
            mono(&[0, 0, 1, 1]),
        ];
        let g = groebner_basis(&gens);
        for p in gens.iter().chain(&g) {
            assert!(normal_form(p, &g).is_zero());
            for q in [mono(&[1, 0, 0, 2]), lin(&[3, -1, 0, 1])] {
                assert!(normal_form(&p.mul(&q), &g).is_zero());
            }
        }
        // reduced: no term of any element is divisible by another's leading monomial
        for (i, p) in g.iter().enumerate() {
            for (j, q) in g.iter().enumerate() {
                if i != j {
                    let lq = q.leading_monomial().unwrap();
                    assert!(p.terms().all(|(x, _)| !lq.divides(x)));
                }
            }
        }
    }
}
