use num_rational::BigRational;
use num_traits::One;

use super::{ArcJet, Coefficient, MultiPoly, SeriesOrder, TruncSeries};
use crate::error::{Error, Result};

/// A list of polynomials over one variable list, with zero and repeated
/// generators removed (first occurrence kept).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    vars: Vec<String>,
    generators: Vec<MultiPoly>,
}

impl PolySystem {
    pub fn new(vars: &[String], generators: Vec<MultiPoly>) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::ArityMismatch { expected: 1, found: 0 });
        }
        let mut kept: Vec<MultiPoly> = Vec::with_capacity(generators.len());
        for g in generators {
            if g.vars() != vars {
                return Err(Error::ArityMismatch { expected: vars.len(), found: g.nvars() });
            }
            if !g.is_zero() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        Ok(PolySystem { vars: vars.to_vec(), generators: kept })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Rendered generators, sorted; the deterministic form used for output.
    pub fn sorted_strings(&self) -> Vec<String> {
        let mut out: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        out.sort();
        out
    }
}

/// Substitutes series for the variables of `f`, truncating at the common
/// cap. `one` is the unit of the coefficient ring.
pub(crate) fn substitute<C: Coefficient>(f: &MultiPoly, comps: &[TruncSeries<C>], one: &C) -> TruncSeries<C> {
    let cap = comps.iter().map(TruncSeries::cap).min().unwrap_or(0);
    let zero = one.zero_like();
    let mut acc = TruncSeries::with_cap(Vec::new(), cap, &zero);
    // powers[j][k] = comps[j]^k, filled on demand
    let mut powers: Vec<Vec<TruncSeries<C>>> =
        comps.iter().map(|_| vec![TruncSeries::constant(one.clone(), cap)]).collect();
    for (m, c) in f.terms() {
        let mut term = TruncSeries::constant(one.scale(c), cap);
        for (j, &k) in m.iter().enumerate() {
            if k == 0 {
                continue;
            }
            while powers[j].len() <= k as usize {
                let next = powers[j].last().expect("seeded").mul(&comps[j]);
                powers[j].push(next);
            }
            term = term.mul(&powers[j][k as usize]);
        }
        acc = acc.add(&term);
    }
    acc
}

/// `f(γ(t))` modulo `t^(cap + 1)`.
///
/// ```
/// use motivic_core::poly::{compose, vars, ArcJet, MultiPoly};
///
/// let v = vars(&["x", "y"]);
/// let cusp = MultiPoly::parse("y^2 - x^3", &v).unwrap();
/// let arc = ArcJet::from_integer_rows(&[&[0, 0, 1], &[0, 0, 0, 1]], 7);
/// assert!(compose(&cusp, &arc).unwrap().is_zero());
/// ```
pub fn compose(f: &MultiPoly, arc: &ArcJet) -> Result<TruncSeries> {
    if f.nvars() != arc.arity() {
        return Err(Error::ArityMismatch { expected: f.nvars(), found: arc.arity() });
    }
    Ok(substitute(f, arc.components(), &BigRational::one()))
}

/// Name of the `i`-th jet coefficient of variable `j`: `a_i`, `b_i`, ...
pub fn jet_var_name(j: usize, i: usize) -> String {
    if j < 26 {
        format!("{}_{i}", (b'a' + j as u8) as char)
    } else {
        format!("v{j}_{i}")
    }
}

/// Equations of the `level`-th jet space: every coefficient of
/// `f(a_0 + a_1 t + ... + a_n t^n)` below `t^(n+1)`, for each generator `f`.
///
/// Jet variables are ordered variable-major: `a_0..a_n, b_0..b_n, ...`.
pub fn jet_equations(system: &PolySystem, level: usize) -> Result<PolySystem> {
    let n_vars = system.vars().len();
    let jet_vars: Vec<String> =
        (0..n_vars).flat_map(|j| (0..=level).map(move |i| jet_var_name(j, i))).collect();
    let comps: Vec<TruncSeries<MultiPoly>> = (0..n_vars)
        .map(|j| {
            TruncSeries::new((0..=level).map(|i| MultiPoly::var(&jet_vars, j * (level + 1) + i)).collect())
        })
        .collect();
    let one = MultiPoly::one(&jet_vars);
    let mut eqs = Vec::new();
    for f in system.generators() {
        let s = substitute(f, &comps, &one);
        eqs.extend(s.coeffs().iter().cloned());
    }
    PolySystem::new(&jet_vars, eqs)
}

fn determinant(m: &[Vec<MultiPoly>]) -> MultiPoly {
    match m.len() {
        1 => m[0][0].clone(),
        n => {
            let mut acc = m[0][0].zero_like();
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MultiPoly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, p)| p.clone()).collect()
                    })
                    .collect();
                let term = &m[0][col] * &determinant(&minor);
                acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

fn jacobian(fs: &[MultiPoly]) -> Vec<Vec<MultiPoly>> {
    fs.iter().map(|f| (0..f.nvars()).map(|i| f.derivative(i)).collect()).collect()
}

fn minors_of(jac: &[Vec<MultiPoly>], size: usize) -> Vec<MultiPoly> {
    let rows = jac.len();
    let cols = jac.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for rs in subsets(rows, size) {
        for cs in subsets(cols, size) {
            let sub: Vec<Vec<MultiPoly>> =
                rs.iter().map(|&r| cs.iter().map(|&c| jac[r][c].clone()).collect()).collect();
            out.push(determinant(&sub));
        }
    }
    out
}

/// The `(N - d) x (N - d)` minors of the Jacobian matrix of `fs`.
pub fn jacobian_minors(fs: &[MultiPoly], ambient: usize, dim: usize) -> Result<PolySystem> {
    let k =
        ambient.checked_sub(dim).filter(|k| *k >= 1).ok_or(Error::ArityMismatch { expected: 1, found: 0 })?;
    if fs.len() != k {
        return Err(Error::ArityMismatch { expected: k, found: fs.len() });
    }
    if let Some(f) = fs.iter().find(|f| f.nvars() != ambient) {
        return Err(Error::ArityMismatch { expected: ambient, found: f.nvars() });
    }
    PolySystem::new(fs[0].vars(), minors_of(&jacobian(fs), k))
}

/// Generators of `H_X` for a hypersurface `X = V(f)`: its partial
/// derivatives.
pub fn hypersurface_hx(f: &MultiPoly) -> Result<PolySystem> {
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    PolySystem::new(f.vars(), (0..f.nvars()).map(|i| f.derivative(i)).collect())
}

pub fn series_order(s: &TruncSeries) -> SeriesOrder {
    s.order()
}

/// Contact order of `arc` with `V(H)`: the `e` such that the arc lies in
/// `C_e`, or `AtLeast` when the cap is too small to see it.
pub fn arc_level(arc: &ArcJet, h: &PolySystem) -> Result<SeriesOrder> {
    let mut best = SeriesOrder::AtLeast(arc.cap() as i64 + 1);
    for g in h.generators() {
        best = best.min(compose(g, arc)?.order());
    }
    Ok(best)
}

/// Minimum order along `arc` of the `d x d` minors of the Jacobian of the
/// map `sigma`.
pub fn ord_jac_along(sigma: &[MultiPoly], arc: &ArcJet, d: usize) -> Result<SeriesOrder> {
    let source = sigma.first().map_or(arc.arity(), MultiPoly::nvars);
    if source != arc.arity() {
        return Err(Error::ArityMismatch { expected: source, found: arc.arity() });
    }
    if d == 0 || d > source || d > sigma.len() {
        return Err(Error::ArityMismatch { expected: source.min(sigma.len()), found: d });
    }
    let mut best = SeriesOrder::AtLeast(arc.cap() as i64 + 1);
    for minor in minors_of(&jacobian(sigma), d) {
        best = best.min(compose(&minor, arc)?.order());
    }
    Ok(best)
}

/// A Jacobian-matrix entry given as `numerator / denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalEntry {
    pub numerator: MultiPoly,
    pub denominator: MultiPoly,
}

impl RationalEntry {
    pub fn polynomial(p: MultiPoly) -> Self {
        let one = MultiPoly::one(p.vars());
        RationalEntry { numerator: p, denominator: one }
    }

    /// Order along the arc: order of the numerator minus order of the
    /// denominator.
    pub fn order_along(&self, arc: &ArcJet) -> Result<SeriesOrder> {
        let den = compose(&self.denominator, arc)?.order();
        let den = den.finite().ok_or(Error::IndeterminateAtCap { cap: arc.cap() })?;
        Ok(match compose(&self.numerator, arc)?.order() {
            SeriesOrder::Finite(v) => SeriesOrder::Finite(v - den),
            SeriesOrder::AtLeast(v) => SeriesOrder::AtLeast(v - den),
        })
    }
}

/// Minimum order along `arc` of the given Jacobian-matrix entries.
pub fn jacobian_entries_order(entries: &[RationalEntry], arc: &ArcJet) -> Result<SeriesOrder> {
    let mut best: Option<SeriesOrder> = None;
    for e in entries {
        let o = e.order_along(arc)?;
        best = Some(best.map_or(o, |b| b.min(o)));
    }
    match best {
        Some(SeriesOrder::Finite(v)) => Ok(SeriesOrder::Finite(v)),
        _ => Err(Error::IndeterminateAtCap { cap: arc.cap() }),
    }
}

/// Order of the Jacobian matrix of the chart map `f` (components in the `d`
/// chart variables) along `arc`: the minimum order of `∂f_j/∂x_i`.
pub fn jacobian_matrix_order(f: &[MultiPoly], arc: &ArcJet, d: usize) -> Result<SeriesOrder> {
    if let Some(bad) = f.iter().find(|p| p.nvars() != d) {
        return Err(Error::ArityMismatch { expected: d, found: bad.nvars() });
    }
    let entries: Vec<RationalEntry> =
        f.iter().flat_map(|p| (0..d).map(move |i| RationalEntry::polynomial(p.derivative(i)))).collect();
    jacobian_entries_order(&entries, arc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::vars;

    fn poly(text: &str, names: &[&str]) -> MultiPoly {
        MultiPoly::parse(text, &vars(names)).unwrap()
    }

    fn system(texts: &[&str], names: &[&str]) -> PolySystem {
        let v = vars(names);
        PolySystem::new(&v, texts.iter().map(|t| MultiPoly::parse(t, &v).unwrap()).collect()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let cusp = poly("y^2 - x^3", &["x", "y"]);
        let arc = ArcJet::from_integer_rows(&[&[1, 1], &[1, 1]], 3);
        let on_diag = compose(&cusp, &ArcJet::from_integer_rows(&[&[0, 1], &[0, 1]], 3)).unwrap();
        assert_eq!(on_diag, TruncSeries::from_integers(&[0, 0, 1, -1]));
        assert_eq!(on_diag.order(), SeriesOrder::Finite(2));
        let x = poly("x", &["x"]);
        let c = ArcJet::from_integer_rows(&[&[3, 7]], 1);
        assert_eq!(compose(&x, &c).unwrap(), TruncSeries::from_integers(&[3, 7]));
        assert!(matches!(compose(&x, &arc), Err(Error::ArityMismatch { expected: 1, found: 2 })));
    }

    #[test]
    fn cusp_jet_equations() {
        let eqs = jet_equations(&system(&["y^2 - x^3"], &["x", "y"]), 2).unwrap();
        let expected = system(
            &["b_0^2 - a_0^3", "2*b_0*b_1 - 3*a_0^2*a_1", "b_1^2 + 2*b_0*b_2 - 3*a_0^2*a_2 - 3*a_0*a_1^2"],
            &["a_0", "a_1", "a_2", "b_0", "b_1", "b_2"],
        );
        assert_eq!(eqs, expected);
    }

    #[test]
    fn linear_jet_equations() {
        let eqs = jet_equations(&system(&["x"], &["x"]), 1).unwrap();
        assert_eq!(eqs.sorted_strings(), ["a_0", "a_1"]);
        let eqs = jet_equations(&system(&["x - y"], &["x", "y"]), 0).unwrap();
        assert_eq!(eqs.sorted_strings(), ["a_0 - b_0"]);
    }

    #[test]
    fn minors_and_hx() {
        let cusp = poly("y^2 - x^3", &["x", "y"]);
        let m = jacobian_minors(std::slice::from_ref(&cusp), 2, 1).unwrap();
        assert_eq!(m, system(&["-3*x^2", "2*y"], &["x", "y"]));
        assert_eq!(hypersurface_hx(&cusp).unwrap(), m);

        let m = jacobian_minors(&[poly("x", &["x", "y"])], 2, 1).unwrap();
        assert_eq!(m.sorted_strings(), ["1"]);

        let sphere = poly("x^2 + y^2 + z^2 - 1", &["x", "y", "z"]);
        let m = jacobian_minors(&[sphere], 3, 2).unwrap();
        assert_eq!(m.sorted_strings(), ["2*x", "2*y", "2*z"]);

        let umbrella = poly("x^2 - z*y^2", &["x", "y", "z"]);
        assert_eq!(hypersurface_hx(&umbrella).unwrap(), system(&["2*x", "-2*z*y", "-y^2"], &["x", "y", "z"]));
        assert_eq!(hypersurface_hx(&poly("3", &["x"])), Err(Error::ConstantInput));
        assert!(jacobian_minors(&[], 2, 1).is_err());
    }

    #[test]
    fn two_by_two_minors() {
        let v = vars(&["x", "y", "z"]);
        let fs = [MultiPoly::parse("x*y", &v).unwrap(), MultiPoly::parse("z", &v).unwrap()];
        // rows (y, x, 0) and (0, 0, 1): minors y*0 - x*0, y*1 - 0, x*1 - 0
        let m = jacobian_minors(&fs, 3, 1).unwrap();
        assert_eq!(m.sorted_strings(), ["x", "y"]);
    }

    #[test]
    fn arc_levels() {
        let h = system(&["-3*x^2", "2*y"], &["x", "y"]);
        let arc = ArcJet::from_integer_rows(&[&[0, 0, 1], &[0, 0, 0, 1]], 6);
        assert_eq!(arc_level(&arc, &h).unwrap(), SeriesOrder::Finite(3));
        let still = ArcJet::from_integer_rows(&[&[0], &[0]], 5);
        assert_eq!(arc_level(&still, &h).unwrap(), SeriesOrder::AtLeast(6));
        let unit = system(&["1"], &["x", "y"]);
        let line = ArcJet::from_integer_rows(&[&[1, 1], &[1, 1]], 4);
        assert_eq!(arc_level(&line, &unit).unwrap(), SeriesOrder::Finite(0));
    }

    #[test]
    fn jacobian_orders() {
        let v = vars(&["x", "y"]);
        let chart = [MultiPoly::parse("x", &v).unwrap(), MultiPoly::parse("x*y", &v).unwrap()];
        for e in 1..5usize {
            let mut row = vec![0i64; e + 1];
            row[e] = 1;
            let arc = ArcJet::from_integer_rows(&[&row, &[3]], 8);
            assert_eq!(ord_jac_along(&chart, &arc, 2).unwrap(), SeriesOrder::Finite(e as i64));
        }

        let t = vars(&["t"]);
        let param = [MultiPoly::parse("t^2", &t).unwrap(), MultiPoly::parse("t^3", &t).unwrap()];
        let arc = ArcJet::from_integer_rows(&[&[0, 0, 0, 1]], 10);
        assert_eq!(ord_jac_along(&param, &arc, 1).unwrap(), SeriesOrder::Finite(3));

        let identity = [MultiPoly::var(&v, 0), MultiPoly::var(&v, 1)];
        let arc = ArcJet::from_integer_rows(&[&[0, 1], &[0, 0, 1]], 4);
        assert_eq!(ord_jac_along(&identity, &arc, 2).unwrap(), SeriesOrder::Finite(0));
        assert_eq!(jacobian_matrix_order(&identity, &arc, 2).unwrap(), SeriesOrder::Finite(0));
    }

    #[test]
    fn matrix_order_of_rational_entries() {
        let x = vars(&["x"]);
        let t = ArcJet::from_integer_rows(&[&[0, 1]], 6);
        let sq = [MultiPoly::parse("x^2", &x).unwrap()];
        assert_eq!(jacobian_matrix_order(&sq, &t, 1).unwrap(), SeriesOrder::Finite(1));
        let inv = RationalEntry { numerator: MultiPoly::one(&x), denominator: MultiPoly::var(&x, 0) };
        assert_eq!(jacobian_entries_order(&[inv], &t).unwrap(), SeriesOrder::Finite(-1));
        let flat = [MultiPoly::parse("x", &x).unwrap()];
        let still = ArcJet::from_integer_rows(&[&[0]], 3);
        let zero_entry = RationalEntry::polynomial(MultiPoly::zero(&x));
        assert_eq!(jacobian_entries_order(&[zero_entry], &still), Err(Error::IndeterminateAtCap { cap: 3 }));
        assert_eq!(jacobian_matrix_order(&flat, &still, 1).unwrap(), SeriesOrder::Finite(0));
    }
}
