//! Semiconjugacies A o X = X o B, their completion to Y o X = B^d, and
//! diagrams W_{d-1} o h_d = A o W_d.

use super::{left_divide, max_common_right_factor, right_divide, Decomposition};
use crate::algebra::ratmap::RatMap;
use crate::classify::{classify, SpecialClass};
use crate::error::{pre, Error, Result};

/// Largest iterate tried when looking for a seed X o R = A^M.
pub const SEED_CAP: usize = 8;
/// Largest degree of A^M tried when looking for a seed.
pub const SEED_DEGREE_CAP: usize = 256;

/// A o X == X o B.
pub fn verify_semiconjugacy(a: &RatMap, x: &RatMap, b: &RatMap) -> bool {
    a.compose(x) == x.compose(b)
}

/// For a chain A = V_1 o U_1, U_i o V_i = V_{i+1} o U_{i+1}, returns
/// U = U_s o ... o U_1, V = V_1 o ... o V_s and s, after checking
/// V o U = A^s and U o V = A_s^s.
pub fn lemma1_assemble(path: &[Decomposition]) -> Result<(RatMap, RatMap, usize)> {
    let s = path.len();
    if s == 0 {
        return pre("chain of elementary transformations is empty");
    }
    for (i, w) in path.windows(2).enumerate() {
        if w[0].swapped() != w[1].compose() {
            return pre(format!("link {} does not continue the chain", i + 1));
        }
    }
    let u = path.iter().skip(1).fold(path[0].inner.clone(), |acc, d| d.inner.compose(&acc));
    let v = path.iter().rev().skip(1).fold(path[s - 1].outer.clone(), |acc, d| d.outer.compose(&acc));
    let a0 = path[0].compose();
    let a_s = path[s - 1].swapped();
    if v.compose(&u) != a0.iterate(s) || u.compose(&v) != a_s.iterate(s) {
        return Err(Error::TheoremViolation("assembled maps fail V o U = A^s or U o V = A_s^s".into()));
    }
    Ok((u, v, s))
}

/// Y and d with Y o X = B^d and X o Y = A^d, given A o X = X o B.
///
/// Descent: U_1 generates Q(B, X), so B = V_1 o U_1 and X = X_1 o U_1 with
/// A o X_1 = X_1 o (U_1 o V_1); repeat until deg X_s = 1 and take
/// Y = V o X_s^-1. A descent that stalls is reported as a theorem
/// violation when A is neither special nor generalized Lattes.
pub fn complete_semiconjugacy(a: &RatMap, x: &RatMap, b: &RatMap) -> Result<(RatMap, usize)> {
    if !verify_semiconjugacy(a, x, b) {
        return pre("A o X differs from X o B");
    }
    if x.degree() == 0 {
        return pre("X is constant");
    }
    if let Some(xi) = x.inverse() {
        return Ok((xi.compose(a), 1));
    }
    let mut path = Vec::new();
    let (mut cur_b, mut cur_x) = (b.clone(), x.clone());
    while cur_x.degree() > 1 && path.len() < x.degree() {
        let (u, v, xs) = max_common_right_factor(&cur_b, &cur_x);
        if u.degree() == 1 {
            break;
        }
        cur_b = u.compose(&v);
        cur_x = xs;
        path.push(Decomposition::new(v, u));
    }
    if cur_x.degree() != 1 {
        let level = path.len();
        return match classify(a)? {
            SpecialClass::NonSpecialNonGL => Err(Error::TheoremViolation(format!(
                "descent stalls at step {} with deg X = {}",
                level + 1,
                cur_x.degree()
            ))),
            c => pre(format!("descent stalls and A is {}", c.tag())),
        };
    }
    let (_, v, s) = lemma1_assemble(&path)?;
    let y = v.compose(&cur_x.inverse().unwrap());
    if y.compose(x) != b.iterate(s) || x.compose(&y) != a.iterate(s) {
        return Err(Error::TheoremViolation("completed semiconjugacy fails verification".into()));
    }
    Ok((y, s))
}

/// Least N <= d with A^N = X o R' and R = R' o A^(d-N).
pub fn normalize_left_factor(a: &RatMap, x: &RatMap, r: &RatMap, d: usize) -> Result<(usize, RatMap)> {
    if d == 0 || x.compose(r) != a.iterate(d) {
        return pre(format!("X o R is not A^{}", d));
    }
    for n in 1..=d {
        let tail = (d > n).then(|| a.iterate(d - n));
        for rp in left_divide(&a.iterate(n), x) {
            let back = tail.as_ref().map_or_else(|| rp.clone(), |t| rp.compose(t));
            if back == *r {
                return Ok((n, rp));
            }
        }
    }
    Err(Error::TheoremViolation("R is missing from the roots of X o R = A^d".into()))
}

/// Columns W_0..W_N and rungs h_1..h_N with W_{d-1} o h_d = A o W_d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub base: RatMap,
    pub columns: Vec<RatMap>,
    pub rungs: Vec<RatMap>,
}

impl Diagram {
    pub fn len(&self) -> usize {
        self.rungs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rungs.is_empty()
    }

    pub fn commutes(&self) -> bool {
        self.rungs
            .iter()
            .enumerate()
            .all(|(i, h)| self.columns[i].compose(h) == self.base.compose(&self.columns[i + 1]))
    }

    /// Q(h_d, W_d) = Q(z) for every rung.
    pub fn rungs_generate(&self) -> bool {
        self.rungs
            .iter()
            .enumerate()
            .all(|(i, h)| max_common_right_factor(h, &self.columns[i + 1]).0.degree() == 1)
    }

    /// deg W_d = deg W_0 for all d.
    pub fn is_good(&self) -> bool {
        let n = self.columns[0].degree();
        self.columns.iter().all(|w| w.degree() == n)
    }
}

/// Diagram of length n over A starting at W_0.
///
/// Seeded mode: when X o R = A^M for some M, the columns come from
/// w_d = max_common_right_factor(R, A^(M-d)) with W_d = A^(M-d) / w_d and
/// h_d = w_{d-1} / w_d. Otherwise each rung is taken as h_d = A with W_d
/// solving A o W_d = W_{d-1} o A and Q(A, W_d) = Q(z).
pub fn good_diagram_chain(a: &RatMap, w0: &RatMap, n: usize) -> Result<Diagram> {
    if a.degree() < 2 || w0.degree() == 0 || n == 0 {
        return pre("diagram needs deg A >= 2, nonconstant W_0 and positive length");
    }
    let d = match seed(a, w0) {
        Some((m, r)) => seeded(a, w0, &r, m, n)?,
        None => commuting_rungs(a, w0, n)?,
    };
    if !d.commutes() || !d.rungs_generate() {
        return Err(Error::TheoremViolation("diagram rung fails verification".into()));
    }
    Ok(d)
}

fn seed(a: &RatMap, x: &RatMap) -> Option<(usize, RatMap)> {
    let mut deg = 1;
    for m in 1..=SEED_CAP {
        deg *= a.degree();
        if deg > SEED_DEGREE_CAP {
            break;
        }
        if deg % x.degree() != 0 {
            continue;
        }
        if let Some(r) = left_divide(&a.iterate(m), x).into_iter().next() {
            return Some((m, r));
        }
    }
    None
}

fn seeded(a: &RatMap, w0: &RatMap, r: &RatMap, m: usize, n: usize) -> Result<Diagram> {
    let total = m.max(n);
    let r = if total > m { r.compose(&a.iterate(total - m)) } else { r.clone() };
    let mut columns = vec![w0.clone()];
    let mut rungs = Vec::new();
    let mut prev = r.clone();
    for d in 1..=n {
        let ad = if total > d { a.iterate(total - d) } else { RatMap::identity() };
        let (w, _, wd) = max_common_right_factor(&r, &ad);
        let h = right_divide(&prev, &w).ok_or_else(|| chain_error(d))?;
        columns.push(wd);
        rungs.push(h);
        prev = w;
    }
    Ok(Diagram { base: a.clone(), columns, rungs })
}

fn commuting_rungs(a: &RatMap, w0: &RatMap, n: usize) -> Result<Diagram> {
    let mut columns = vec![w0.clone()];
    let mut rungs = Vec::new();
    for d in 1..=n {
        let prev = &columns[d - 1];
        let mut roots = left_divide(&prev.compose(a), a);
        if let Some(i) = roots.iter().position(|w| w == prev) {
            roots.swap(0, i);
        }
        let w = roots
            .into_iter()
            .find(|w| max_common_right_factor(a, w).0.degree() == 1)
            .ok_or_else(|| chain_error(d))?;
        columns.push(w);
        rungs.push(a.clone());
    }
    Ok(Diagram { base: a.clone(), columns, rungs })
}

fn chain_error(level: usize) -> Error {
    Error::Inconclusive(format!("diagram cannot be extended at level {}", level))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Periodicity {
    pub start: usize,
    pub period: usize,
    /// (j, alpha_j) with W_{j+r} = W_j o alpha_j, for every j >= start
    /// where such a Mobius alpha_j exists over Q.
    pub witnesses: Vec<(usize, RatMap)>,
}

/// A Mobius alpha with f = g o alpha, if any.
pub fn right_mobius_equivalence(f: &RatMap, g: &RatMap) -> Option<RatMap> {
    if f.degree() != g.degree() {
        return None;
    }
    left_divide(f, g).into_iter().find(|m| m.degree() == 1)
}

/// Least (start, period) with W_{start+period} = W_start o alpha.
pub fn detect_periodicity(d: &Diagram) -> Option<Periodicity> {
    let n = d.len();
    for start in 0..n {
        for period in 1..=n - start {
            if right_mobius_equivalence(&d.columns[start + period], &d.columns[start]).is_none() {
                continue;
            }
            let witnesses = (start..=n - period)
                .filter_map(|j| right_mobius_equivalence(&d.columns[j + period], &d.columns[j]).map(|al| (j, al)))
                .collect();
            return Some(Periodicity { start, period, witnesses });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratmap::chebyshev;
    use crate::algebra::Poly;

    fn z(n: i64) -> RatMap {
        RatMap::monomial(n)
    }

    fn p(c: &[i64]) -> RatMap {
        RatMap::from_ints(c)
    }

    fn joukowski() -> RatMap {
        RatMap::new(Poly::from_ints(&[1, 0, 1]), Poly::from_ints(&[0, 1])).unwrap()
    }

    #[test]
    fn semiconjugacies() {
        assert!(verify_semiconjugacy(&z(2), &z(3), &z(2)));
        assert!(verify_semiconjugacy(&p(&[1, 2, 1]), &z(2), &p(&[1, 0, 1])));
        assert!(!verify_semiconjugacy(&z(2), &p(&[1, 1]), &z(2)));
    }

    #[test]
    fn lemma1() {
        let path = [Decomposition::new(z(2), p(&[1, 1]))];
        let (u, v, s) = lemma1_assemble(&path).unwrap();
        assert_eq!((u, v, s), (p(&[1, 1]), z(2), 1));
        assert!(lemma1_assemble(&[]).is_err());
        let path = [Decomposition::new(z(2), z(3)), Decomposition::new(z(3), z(2))];
        let (u, v, s) = lemma1_assemble(&path).unwrap();
        assert_eq!(s, 2);
        assert_eq!(u.compose(&v), z(6).iterate(2));
        let broken = [Decomposition::new(z(2), z(3)), Decomposition::new(z(2), p(&[1, 1]))];
        assert!(matches!(lemma1_assemble(&broken), Err(Error::Precondition(_))));
    }

    #[test]
    fn one_step_completion() {
        let (a, x, b) = (p(&[1, 2, 1]), z(2), p(&[1, 0, 1]));
        assert_eq!(complete_semiconjugacy(&a, &x, &b), Ok((p(&[1, 1]), 1)));
        let a = RatMap::from_ints(&[-2, 0, 1]).compose(&z(1));
        assert_eq!(complete_semiconjugacy(&a, &z(1), &a), Ok((a.clone(), 1)));
        assert!(complete_semiconjugacy(&a, &z(2), &a).is_err());
    }

    #[test]
    fn two_step_completion() {
        // B = V1 o U1, U1 o V1 = V2 o U2, A = U2 o V2, X = U2 o U1.
        let (u1, v1) = (joukowski(), z(2));
        let (u2, v2) = (joukowski(), p(&[-2, 0, 1]));
        assert_eq!(u1.compose(&v1), v2.compose(&u2));
        let b = v1.compose(&u1);
        let a = u2.compose(&v2);
        let x = u2.compose(&u1);
        assert!(verify_semiconjugacy(&a, &x, &b));
        let (y, d) = complete_semiconjugacy(&a, &x, &b).unwrap();
        assert_eq!(d, 2);
        assert_eq!(y.compose(&x), b.iterate(2));
        assert_eq!(x.compose(&y), a.iterate(2));
    }

    #[test]
    fn normalized_left_factors() {
        assert_eq!(normalize_left_factor(&z(2), &z(4), &z(4), 4), Ok((2, z(1))));
        let t = chebyshev;
        assert_eq!(normalize_left_factor(&t(2), &t(4), &t(4), 4), Ok((2, z(1))));
        let a = p(&[1, 3, 0, 1]);
        assert_eq!(normalize_left_factor(&a, &a, &a, 2), Ok((1, z(1))));
        assert!(normalize_left_factor(&a, &a, &a, 3).is_err());
    }

    #[test]
    fn diagrams() {
        let d = good_diagram_chain(&z(2), &z(3), 3).unwrap();
        assert_eq!(d.columns, vec![z(3); 4]);
        assert_eq!(d.rungs, vec![z(2); 3]);
        assert!(d.is_good());
        let d = good_diagram_chain(&chebyshev(2), &chebyshev(3), 2).unwrap();
        assert_eq!(d.columns, vec![chebyshev(3); 3]);
        assert_eq!(d.rungs, vec![chebyshev(2); 2]);
        let d = good_diagram_chain(&z(2), &z(2), 2).unwrap();
        assert_eq!(d.columns[1], z(1));
        assert!(!d.is_good());
    }

    #[test]
    fn periodicity() {
        let d = good_diagram_chain(&z(2), &z(3), 3).unwrap();
        let per = detect_periodicity(&d).unwrap();
        assert_eq!((per.start, per.period), (0, 1));
        assert_eq!(per.witnesses[0], (0, z(1)));
        // Degrees 4, 2, 1, 1, 1: constant from index 2 on.
        let d = good_diagram_chain(&z(2), &z(4), 4).unwrap();
        let degs: Vec<usize> = d.columns.iter().map(|w| w.degree()).collect();
        assert_eq!(degs, vec![4, 2, 1, 1, 1]);
        assert_eq!(detect_periodicity(&d).map(|p| (p.start, p.period)), Some((2, 1)));
        let short = good_diagram_chain(&z(2), &z(3), 1).unwrap();
        assert_eq!(detect_periodicity(&short).map(|p| p.period), Some(1));
    }
}
