use crate::lattice::linalg::{self, Solution};
use crate::lattice::{DivisorClass, Rational};

/// Nonnegative coefficients expressing `cls` as a combination of
/// `generators`, or `None` if there are none.
///
/// By Carathéodory a point of a finitely generated cone lies in the cone
/// over a linearly independent subset of generators, so trying every such
/// subset with an exact solve is complete. Parametric inputs and classes
/// over a different basis are never members.
pub fn cone_membership(cls: &DivisorClass, generators: &[DivisorClass]) -> Option<Vec<Rational>> {
    let target = cls.constant_coeffs()?;
    let gens: Vec<Vec<Rational>> = generators
        .iter()
        .map(|g| (g.basis() == cls.basis()).then(|| g.constant_coeffs()).flatten())
        .collect::<Option<_>>()?;
    if target.iter().all(Rational::is_zero) {
        return Some(vec![Rational::ZERO; gens.len()]);
    }
    let n = target.len();
    for size in 1..=n.min(gens.len()) {
        for subset in subsets(gens.len(), size) {
            let rows: Vec<Vec<Rational>> =
                (0..n).map(|i| subset.iter().map(|&j| gens[j][i]).collect()).collect();
            if let Solution::Unique(x) = linalg::solve(&rows, &target) {
                if x.iter().all(|v| !v.is_negative()) {
                    let mut out = vec![Rational::ZERO; gens.len()];
                    for (&j, v) in subset.iter().zip(x) {
                        out[j] = v;
                    }
                    return Some(out);
                }
            }
        }
    }
    None
}

/// All `k`-element subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Basis;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn examples() {
        let b = Basis::of(&["H", "D"]);
        let gens = [DivisorClass::from_ints(&b, &[1, 0]), DivisorClass::from_ints(&b, &[0, 1])];
        assert_eq!(cone_membership(&gens[0], &gens), Some(q(&[1, 0])));
        assert_eq!(cone_membership(&DivisorClass::from_ints(&b, &[2, -3]), &gens), None);
        let b = Basis::of(&["h1", "h2"]);
        let gens = [DivisorClass::from_ints(&b, &[1, 0]), DivisorClass::from_ints(&b, &[0, 1])];
        assert_eq!(cone_membership(&DivisorClass::from_ints(&b, &[1, 1]), &gens), Some(q(&[1, 1])));
    }

    #[test]
    fn zero_and_redundant_generators() {
        let b = Basis::of(&["H", "D"]);
        let gens = [
            DivisorClass::from_ints(&b, &[1, -1]),
            DivisorClass::from_ints(&b, &[0, 1]),
            DivisorClass::from_ints(&b, &[1, 0]),
        ];
        assert_eq!(cone_membership(&DivisorClass::zero(&b), &gens), Some(q(&[0, 0, 0])));
        let got = cone_membership(&DivisorClass::from_ints(&b, &[3, -2]), &gens).unwrap();
        assert_eq!(got, q(&[3, 1, 0]));
        assert_eq!(cone_membership(&DivisorClass::from_ints(&b, &[-1, 0]), &gens), None);
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 3), Vec::<Vec<usize>>::new());
    }
}
