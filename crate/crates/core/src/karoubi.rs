//! Jones–Wenzl projectors, the operators `z_n`, `U_n`, `D_n`, crossings, the
//! sl₂ lemma for these operators, and the quiver relations.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use crate::dtl::{expand, DtlAction, DtlParams, Evaluator, Expr, Jet, Macro, Status, WordComb};
use crate::error::{Error, Result};
use crate::ring::{Poly, Rational};
use crate::sl2core::Sl2;
use crate::statespace::{PolyMatrix, Prim};

/// Largest `n` for the recursive projector.
pub const JW_BOUND: usize = 8;
/// Largest `n` for the symmetrizer oracle.
pub const JW_BRUTE_BOUND: usize = 6;
/// Default bound for [`quiver_check`].
pub const QUIVER_BOUND: usize = 5;

/// The Karoubi object `P_n = (c^n, p_n)`.
#[derive(Clone, Debug)]
pub struct ProjectorObject {
    pub n: usize,
    pub expr: Expr,
    pub matrix: Arc<PolyMatrix>,
}

impl ProjectorObject {
    /// The projector as a formal combination of words.
    pub fn words(&self, limit: usize) -> Result<WordComb> {
        expand(&self.expr, limit)
    }

    pub fn is_idempotent(&self) -> bool {
        self.matrix.compose(&self.matrix).map(|m| m == *self.matrix).unwrap_or(false)
    }

    /// `cap_i ∘ p_n = 0` and `p_n ∘ cup_i = 0` at every adjacent pair.
    pub fn kills_turnbacks(&self) -> bool {
        let n = self.n;
        (0..n.saturating_sub(1)).all(|i| {
            let cap = Prim::Cap.matrix().embed(i, n - i - 2);
            let cup = Prim::Cup.matrix().embed(i, n - i - 2);
            cap.compose(&self.matrix).map(|m| m.is_zero()).unwrap_or(false)
                && self.matrix.compose(&cup).map(|m| m.is_zero()).unwrap_or(false)
        })
    }
}

fn standard_action() -> &'static DtlAction {
    static A: OnceLock<DtlAction> = OnceLock::new();
    A.get_or_init(|| DtlAction::new(DtlParams::zero()))
}

/// Matrix of `p_n` by the Wenzl recursion; cached.
pub fn jw_matrix(n: usize) -> Result<Arc<PolyMatrix>> {
    if n > JW_BOUND {
        return Err(Error::BoundExceeded {
            what: "jw n",
            value: n,
            bound: JW_BOUND,
        });
    }
    let jet = Evaluator::new(standard_action()).macro_jet(Macro::Jw(n))?;
    Ok(Arc::new(jet.value.clone()))
}

pub fn jw(n: usize) -> Result<ProjectorObject> {
    Ok(ProjectorObject {
        n,
        expr: Expr::Macro(Macro::Jw(n)),
        matrix: jw_matrix(n)?,
    })
}

/// Lexicographically first reduced word of a permutation given in one-line
/// notation (`w[pos] = value`), as zero-based generator indices `i` for
/// `s_{i+1}`, leftmost factor first.
pub fn lex_reduced_word(w: &[usize]) -> Vec<usize> {
    let mut w = w.to_vec();
    let mut out = Vec::new();
    while let Some(i) = left_descent(&w) {
        out.push(i);
        swap_values(&mut w, i);
    }
    out
}

fn left_descent(w: &[usize]) -> Option<usize> {
    let mut pos = vec![0; w.len()];
    for (p, &v) in w.iter().enumerate() {
        pos[v] = p;
    }
    (0..w.len().saturating_sub(1)).find(|&i| pos[i + 1] < pos[i])
}

fn swap_values(w: &mut [usize], i: usize) {
    for v in w.iter_mut() {
        if *v == i {
            *v = i + 1;
        } else if *v == i + 1 {
            *v = i;
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=k).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    q
                })
            })
            .collect();
    }
    out.sort();
    out
}

/// Matrix of `s_{i+1} = id − cupcap` on `n` strands.
pub fn crossing_matrix(i: usize, n: usize) -> PolyMatrix {
    let local = PolyMatrix::identity(2)
        .sub(&Prim::Cup.matrix().compose(&Prim::Cap.matrix()).expect("cupcap"))
        .expect("same shape");
    local.embed(i, n - i - 2)
}

/// `(1/n!) Σ_w w`, each permutation expanded along its lexicographically
/// first reduced word.
pub fn jw_bruteforce(n: usize) -> Result<PolyMatrix> {
    if n > JW_BRUTE_BOUND {
        return Err(Error::BoundExceeded {
            what: "jw_bruteforce n",
            value: n,
            bound: JW_BRUTE_BOUND,
        });
    }
    let perms = permutations(n);
    let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    // w = s_i · parent(w) with i the first letter of w's reduced word, so each
    // matrix is one sparse product away from its parent's.
    let mut children: Vec<Vec<(usize, usize)>> = vec![Vec::new(); perms.len()];
    let mut root = 0;
    for (k, w) in perms.iter().enumerate() {
        match left_descent(w) {
            None => root = k,
            Some(i) => {
                let mut parent = w.clone();
                swap_values(&mut parent, i);
                children[index[&parent]].push((k, i));
            }
        }
    }
    let gens: Vec<PolyMatrix> = (0..n.saturating_sub(1)).map(|i| crossing_matrix(i, n)).collect();
    let mut total = PolyMatrix::zero(n, n);
    let mut stack = vec![(root, PolyMatrix::identity(n))];
    while let Some((k, m)) = stack.pop() {
        total = total.add(&m)?;
        for &(c, i) in &children[k] {
            stack.push((c, gens[i].compose(&m)?));
        }
    }
    let fact: i64 = (1..=n as i64).product();
    Ok(total.scale_rational(&Rational::new(1, fact)))
}

/// Involution, far commutation and braid relations for `s_i` on `n` strands.
pub fn check_braid_relations(n: usize) -> bool {
    let s: Vec<PolyMatrix> = (0..n.saturating_sub(1)).map(|i| crossing_matrix(i, n)).collect();
    let c = |a: &PolyMatrix, b: &PolyMatrix| a.compose(b).expect("square");
    let id = PolyMatrix::identity(n);
    for i in 0..s.len() {
        if c(&s[i], &s[i]) != id {
            return false;
        }
        for j in i + 1..s.len() {
            if j == i + 1 {
                if c(&c(&s[i], &s[j]), &s[i]) != c(&c(&s[j], &s[i]), &s[j]) {
                    return false;
                }
            } else if c(&s[i], &s[j]) != c(&s[j], &s[i]) {
                return false;
            }
        }
    }
    true
}

pub fn z_expr(n: usize) -> Expr {
    Expr::Macro(Macro::Z(n))
}

/// `z_n = Σ (−1)^{i−1} dot_i` as words.
pub fn zn(n: usize) -> Result<WordComb> {
    if n == 0 {
        return Err(Error::Invalid("z_n needs n ≥ 1".into()));
    }
    expand(&z_expr(n), 1_000)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// Dot placement on the connecting cup of `U_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum UPlacement {
    Single(Side),
    /// `dot⊗id − id⊗dot` on the cup.
    Difference,
}

/// Dot placement and overall sign of the connecting cap of `D_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct DPlacement {
    pub side: Side,
    pub sign: i64,
}

impl Default for UPlacement {
    fn default() -> Self {
        UPlacement::Single(Side::Left)
    }
}

impl Default for DPlacement {
    fn default() -> Self {
        DPlacement {
            side: Side::Left,
            sign: 1,
        }
    }
}

fn dot_on(side: Side) -> Expr {
    match side {
        Side::Left => Expr::Prim(Prim::Dot).embed(0, 1),
        Side::Right => Expr::Prim(Prim::Dot).embed(1, 0),
    }
}

pub fn u_expr(n: usize, placement: UPlacement) -> Expr {
    if placement == UPlacement::default() {
        return Expr::Macro(Macro::U(n));
    }
    let cup = Expr::Prim(Prim::Cup);
    let local = match placement {
        UPlacement::Single(side) => Expr::stack(cup, dot_on(side)),
        UPlacement::Difference => Expr::stack(cup, Expr::difference(dot_on(Side::Left), dot_on(Side::Right))),
    };
    Expr::stack(
        Expr::Macro(Macro::Jw(n)),
        Expr::stack(local.embed(n, 0), Expr::Macro(Macro::Jw(n + 2))),
    )
}

pub fn d_expr(n: usize, placement: DPlacement) -> Expr {
    if placement == DPlacement::default() {
        return Expr::Macro(Macro::D(n));
    }
    let local = Expr::stack(dot_on(placement.side), Expr::Prim(Prim::Cap));
    Expr::scale(
        Poly::int(placement.sign * (n * (n - 1)) as i64),
        Expr::stack(
            Expr::stack(Expr::Macro(Macro::Jw(n)), local.embed(n - 2, 0)),
            Expr::Macro(Macro::Jw(n - 2)),
        ),
    )
}

/// A morphism between projector objects whose construction passed its
/// certification checks.
#[derive(Clone, Debug)]
pub struct CertifiedMorphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub expr: Expr,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenCheck {
    pub object: String,
    pub generator: String,
    pub a2: Rational,
    pub expected: String,
    pub status: Status,
}

fn jet_at(e: &Expr, a2: &Rational) -> Result<Jet> {
    let action = DtlAction::new(DtlParams::new(Rational::zero(), a2.clone()));
    Evaluator::new(&action).jet(e)
}

/// `e`, `f`, `h` images expected for `U`, `D` at `a1 = 0`, as multiples of the value.
fn eigen_u(a2: &Rational) -> [Poly; 3] {
    let one = Rational::one();
    [
        Poly::zero(),
        Poly::e1().scale(&(&one - a2)),
        Poly::constant(&(a2 * &Rational::from_int(2)) - &Rational::from_int(2)),
    ]
}

fn eigen_d(a2: &Rational) -> [Poly; 3] {
    let one = Rational::one();
    [
        Poly::zero(),
        Poly::e1().scale(&(&one + a2)),
        Poly::constant(&(a2 * &Rational::from_int(-2)) - &Rational::from_int(2)),
    ]
}

fn eigen_checks(name: &str, jet: &Jet, expected: &[Poly; 3], a2: &Rational) -> Vec<EigenCheck> {
    Sl2::ALL
        .iter()
        .map(|g| {
            let want = jet.value.scale(&expected[g.index()]);
            EigenCheck {
                object: name.to_string(),
                generator: g.name().into(),
                a2: a2.clone(),
                expected: format!("({})*{name}", expected[g.index()]),
                status: Status::from_bool(jet.derivative(*g) == want),
            }
        })
        .collect()
}

type CertKey = (bool, usize, String);

fn certified() -> &'static RwLock<HashSet<CertKey>> {
    static C: OnceLock<RwLock<HashSet<CertKey>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn certify(key: CertKey, run: impl FnOnce() -> Result<()>) -> Result<()> {
    if certified().read().expect("lock").contains(&key) {
        return Ok(());
    }
    run()?;
    certified().write().expect("lock").insert(key);
    Ok(())
}

/// Sample values of `a2`; the action is affine in `a2`, so two suffice.
const CERT_A2: [i64; 2] = [0, 1];

/// `U_n : P_n → P_{n+2}` with the default placement.
pub fn un(n: usize) -> Result<CertifiedMorphism> {
    un_with(n, UPlacement::default())
}

pub fn un_with(n: usize, placement: UPlacement) -> Result<CertifiedMorphism> {
    if n + 2 > JW_BOUND {
        return Err(Error::BoundExceeded {
            what: "U_n target strands",
            value: n + 2,
            bound: JW_BOUND,
        });
    }
    let expr = u_expr(n, placement);
    let name = format!("U_{n}");
    certify((true, n, format!("{placement:?}")), || {
        for a in CERT_A2 {
            let a2 = Rational::from_int(a);
            let jet = jet_at(&expr, &a2)?;
            if jet.value.is_zero() {
                return Err(Error::Certification(format!("{name} with {placement:?} is zero")));
            }
            if let Some(bad) = eigen_checks(&name, &jet, &eigen_u(&a2), &a2)
                .into_iter()
                .find(|c| !c.status.ok())
            {
                return Err(Error::Certification(format!(
                    "{name} with {placement:?}: {} image differs from {} at a2 = {a2}",
                    bad.generator, bad.expected
                )));
            }
        }
        Ok(())
    })?;
    Ok(CertifiedMorphism {
        name,
        source: n,
        target: n + 2,
        expr,
    })
}

/// `D_n : P_n → P_{n−2}` with the default placement.
pub fn dn(n: usize) -> Result<CertifiedMorphism> {
    dn_with(n, DPlacement::default())
}

pub fn dn_with(n: usize, placement: DPlacement) -> Result<CertifiedMorphism> {
    if n < 2 {
        return Err(Error::Invalid("D_n needs n ≥ 2".into()));
    }
    if n > JW_BOUND {
        return Err(Error::BoundExceeded {
            what: "D_n source strands",
            value: n,
            bound: JW_BOUND,
        });
    }
    let expr = d_expr(n, placement);
    let name = format!("D_{n}");
    certify((false, n, format!("{placement:?}")), || {
        for a in CERT_A2 {
            let a2 = Rational::from_int(a);
            let jet = jet_at(&expr, &a2)?;
            if jet.value.is_zero() {
                return Err(Error::Certification(format!("{name} with {placement:?} is zero")));
            }
            if let Some(bad) = eigen_checks(&name, &jet, &eigen_d(&a2), &a2)
                .into_iter()
                .find(|c| !c.status.ok())
            {
                return Err(Error::Certification(format!(
                    "{name} with {placement:?}: {} image differs from {} at a2 = {a2}",
                    bad.generator, bad.expected
                )));
            }
        }
        // The sign is pinned by the two quadratic quiver relations through P_n.
        let d = value(&expr)?.mod_e();
        let u = value(&u_expr(n - 2, UPlacement::default()))?.mod_e();
        let ud = u.compose(&d)?;
        let du = d.compose(&u)?;
        if ud != minus_z_squared(n)? || du != minus_z_squared(n - 2)? {
            return Err(Error::Certification(format!(
                "{name} with {placement:?} violates D U ≡ −z² or U D ≡ −z² mod (E1, E2)"
            )));
        }
        Ok(())
    })?;
    Ok(CertifiedMorphism {
        name,
        source: n,
        target: n - 2,
        expr,
    })
}

fn value(e: &Expr) -> Result<PolyMatrix> {
    Evaluator::new(standard_action()).value(e)
}

/// `p_n z_n p_n`, the operator `z_n` on `P_n`; zero for `n = 0`.
pub fn z_on_projector(n: usize) -> Result<PolyMatrix> {
    if n == 0 {
        return Ok(PolyMatrix::zero(0, 0));
    }
    let p = jw_matrix(n)?;
    let z = value(&z_expr(n))?;
    p.compose(&z)?.compose(&p)
}

fn minus_z_squared(n: usize) -> Result<PolyMatrix> {
    let z = z_on_projector(n)?.mod_e();
    Ok(z.compose(&z)?.neg())
}

/// The nine equalities of the sl₂ lemma at `a1 = 0` for `U_n`, `D_n`
/// (when `n ≥ 2`) and `z_n` (when `n ≥ 1`).
pub fn lemma_check(n: usize, a2: &Rational) -> Result<Vec<EigenCheck>> {
    let mut out = Vec::new();
    let u = un(n)?;
    out.extend(eigen_checks(&u.name, &jet_at(&u.expr, a2)?, &eigen_u(a2), a2));
    if n >= 2 {
        let d = dn(n)?;
        out.extend(eigen_checks(&d.name, &jet_at(&d.expr, a2)?, &eigen_d(a2), a2));
    }
    if n >= 1 {
        let jet = jet_at(&z_expr(n), a2)?;
        let odd = n % 2 == 1;
        let c = if odd { -1 } else { 0 };
        let id = PolyMatrix::identity(n);
        let checks = [
            ("e", id.scale(&Poly::int(c)), format!("{c}*id")),
            (
                "f",
                jet.value.scale(&Poly::e1()).add(&id.scale(&Poly::e2().scale(&Rational::from_int(c))))?,
                format!("E1*z_{n} + {c}*E2*id"),
            ),
            ("h", jet.value.scale(&Poly::int(-2)), format!("-2*z_{n}")),
        ];
        for (g, want, expected) in checks {
            let g = match g {
                "e" => Sl2::E,
                "f" => Sl2::F,
                _ => Sl2::H,
            };
            out.push(EigenCheck {
                object: format!("z_{n}"),
                generator: g.name().into(),
                a2: a2.clone(),
                expected,
                status: Status::from_bool(jet.derivative(g) == want),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct QuiverCheck {
    pub relation: String,
    pub n: usize,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuiverReport {
    pub n_max: usize,
    pub checks: Vec<QuiverCheck>,
}

impl QuiverReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status.ok())
    }
}

pub fn quiver_check(n_max: usize) -> Result<QuiverReport> {
    quiver_check_with(n_max, UPlacement::default(), DPlacement::default())
}

/// Checks the five quiver relations for all `n ≤ n_max` whose operators fit
/// within the projector bound. Placements are used as given, without
/// certification, so that wrong choices show up as failures.
pub fn quiver_check_with(n_max: usize, up: UPlacement, dp: DPlacement) -> Result<QuiverReport> {
    if n_max > QUIVER_BOUND {
        return Err(Error::BoundExceeded {
            what: "quiver n_max",
            value: n_max,
            bound: QUIVER_BOUND,
        });
    }
    let mut u: HashMap<usize, PolyMatrix> = HashMap::new();
    let mut d: HashMap<usize, PolyMatrix> = HashMap::new();
    let mut z: HashMap<usize, PolyMatrix> = HashMap::new();
    for k in 0..=n_max + 2 {
        if k + 2 <= JW_BOUND && k <= n_max {
            u.insert(k, value(&u_expr(k, up))?);
        }
        if k >= 2 {
            d.insert(k, value(&d_expr(k, dp))?);
        }
        z.insert(k, z_on_projector(k)?);
    }
    let mut checks = Vec::new();
    let mut push = |relation: &str, n: usize, ok: bool| {
        checks.push(QuiverCheck {
            relation: relation.into(),
            n,
            status: Status::from_bool(ok),
        })
    };
    for n in 0..=n_max {
        let zn = &z[&n];
        let zn_mod = zn.mod_e();
        let minus_z2 = zn_mod.compose(&zn_mod)?.neg();
        push(
            "D_{n+2} U_n = -z_n^2 mod (E1,E2)",
            n,
            d[&(n + 2)].mod_e().compose(&u[&n].mod_e())? == minus_z2,
        );
        if n >= 2 {
            push(
                "U_{n-2} D_n = -z_n^2 mod (E1,E2)",
                n,
                u[&(n - 2)].mod_e().compose(&d[&n].mod_e())? == minus_z2,
            );
            push(
                "z_n U_{n-2} = U_{n-2} z_{n-2}",
                n,
                zn.compose(&u[&(n - 2)])? == u[&(n - 2)].compose(&z[&(n - 2)])?,
            );
        }
        let mut power = PolyMatrix::identity(n);
        for _ in 0..=n {
            power = power.compose(&zn_mod)?;
        }
        push("z_n^{n+1} = 0 mod (E1,E2)", n, power.is_zero());
        push(
            "z_n D_{n+2} = D_{n+2} z_{n+2}",
            n,
            zn.compose(&d[&(n + 2)])? == d[&(n + 2)].compose(&z[&(n + 2)])?,
        );
    }
    Ok(QuiverReport { n_max, checks })
}

/// `e(p_n)`, `f(p_n)`, `h(p_n)` at the given parameters, as matrices.
pub fn projector_images(n: usize, params: &DtlParams) -> Result<[PolyMatrix; 3]> {
    let action = DtlAction::new(params.clone());
    let jet = Evaluator::new(&action).jet(&Expr::Macro(Macro::Jw(n)))?;
    Ok([
        jet.derivative(Sl2::E),
        jet.derivative(Sl2::F),
        jet.derivative(Sl2::H),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dtl::{evaluate_expr, parse_expr};

    #[test]
    fn small_projectors() {
        assert_eq!(*jw_matrix(1).unwrap(), PolyMatrix::identity(1));
        assert_eq!(*jw_matrix(0).unwrap(), PolyMatrix::identity(0));
        let p2 = evaluate_expr(&parse_expr("(id|id) - 1/2*(cap ; cup)").unwrap()).unwrap();
        assert_eq!(*jw_matrix(2).unwrap(), p2);
        assert!(matches!(jw(9), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn recursion_matches_symmetrizer() {
        for n in 0..=4 {
            assert_eq!(*jw_matrix(n).unwrap(), jw_bruteforce(n).unwrap(), "n = {n}");
        }
        assert!(jw_bruteforce(7).is_err());
    }

    #[test]
    fn projector_properties() {
        for n in 0..=5 {
            let p = jw(n).unwrap();
            assert!(p.is_idempotent() && p.kills_turnbacks(), "n = {n}");
        }
    }

    #[test]
    fn reduced_words() {
        assert_eq!(lex_reduced_word(&[0, 1, 2]), Vec::<usize>::new());
        assert_eq!(lex_reduced_word(&[2, 1, 0]), vec![0, 1, 0]);
        assert_eq!(permutations(4).len(), 24);
        for w in permutations(4) {
            let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| w[i] > w[j]).count();
            assert_eq!(lex_reduced_word(&w).len(), inversions);
        }
    }

    #[test]
    fn braid_relations() {
        for n in 0..=4 {
            assert!(check_braid_relations(n));
        }
    }

    #[test]
    fn jw3_kills_cup() {
        let cup = Prim::Cup.matrix().embed(0, 1);
        assert!(jw_bruteforce(3).unwrap().compose(&cup).unwrap().is_zero());
    }

    #[test]
    fn macro_bodies_match_placements() {
        let alt = u_expr(2, UPlacement::Single(Side::Right));
        assert_eq!(value(&alt).unwrap(), value(&u_expr(2, UPlacement::default())).unwrap());
        assert!(value(&u_expr(2, UPlacement::Difference)).unwrap().is_zero());
    }

    #[test]
    fn lemma_small() {
        for n in 0..=3 {
            for a2 in [Rational::zero(), Rational::new(1, 2), Rational::from_int(-3)] {
                for c in lemma_check(n, &a2).unwrap() {
                    assert!(c.status.ok(), "{c:?}");
                }
            }
        }
    }

    #[test]
    fn difference_placement_is_rejected() {
        assert!(matches!(un_with(1, UPlacement::Difference), Err(Error::Certification(_))));
    }

    #[test]
    fn flipped_d_sign_is_rejected() {
        let flipped = DPlacement { side: Side::Left, sign: -1 };
        assert!(matches!(dn_with(3, flipped), Err(Error::Certification(_))));
        let r = quiver_check_with(2, UPlacement::default(), flipped).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn quiver_small() {
        let r = quiver_check(2).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
    }

    #[test]
    fn f_kills_projectors_at_a1_zero() {
        for n in 0..=4 {
            let imgs = projector_images(n, &DtlParams::new(Rational::zero(), Rational::new(1, 2))).unwrap();
            assert!(imgs.iter().all(|m| m.is_zero()), "n = {n}");
        }
    }
}
