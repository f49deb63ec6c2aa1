//! Twisted projector objects `q^s P_n^{aE1}`, the `∗` action on morphisms
//! between them, and truncated Kirby-color directed systems.

use serde::Serialize;

use crate::dtl::{DtlAction, DtlParams, Evaluator, Expr, Jet, Status};
use crate::error::{Error, Result};
use crate::karoubi::{jw, un, ProjectorObject, JW_BOUND};
use crate::ring::{Poly, Rational};
use crate::sl2core::{check_flat_twist, Sl2, Sl2ActionSpec, TwistData};
use crate::statespace::PolyMatrix;

/// A projector object with a rank-one twist and a q-shift.
#[derive(Clone, Debug)]
pub struct TwistedObject {
    pub projector: ProjectorObject,
    pub twist: TwistData,
}

impl TwistedObject {
    pub fn new(n: usize, twist: TwistData) -> Result<Self> {
        if !check_flat_twist(&twist, &Sl2ActionSpec::base_ring())? {
            return Err(Error::Certification(format!("twist {} is not flat", twist.a)));
        }
        Ok(TwistedObject {
            projector: jw(n)?,
            twist,
        })
    }

    pub fn strands(&self) -> usize {
        self.projector.n
    }

    /// `q^{shift} P_n^{aE1}`.
    pub fn label(&self) -> String {
        format!("q^{} P_{}^({}*E1)", self.twist.q_shift, self.projector.n, self.twist.a)
    }
}

/// The twist `−(n/2)(1 − a2)` carried by level `n` of a Kirby color.
pub fn kirby_twist(n: usize, a2: &Rational) -> Rational {
    -(&Rational::new(n as i64, 2) * &(&Rational::one() - a2))
}

fn star_from_jet(g: Sl2, jet: &Jet, src: &TwistData, tgt: &TwistData) -> Result<PolyMatrix> {
    let diff = &tgt.a - &src.a;
    let d = jet.derivative(g);
    match g {
        Sl2::E => Ok(d),
        Sl2::F => d.add(&jet.value.scale(&Poly::e1().scale(&diff))),
        Sl2::H => d.add(&jet.value.scale_rational(&(-&diff * &Rational::from_int(2)))),
    }
}

fn jet_at(f: &Expr, a2: &Rational) -> Result<Jet> {
    let action = DtlAction::new(DtlParams::new(Rational::zero(), a2.clone()));
    Evaluator::new(&action).jet(f)
}

/// `g∗F` for `F: src → tgt` at the parameters `(0, a2)`.
pub fn star_act_twisted(
    g: Sl2,
    f: &Expr,
    src: &TwistedObject,
    tgt: &TwistedObject,
    a2: &Rational,
) -> Result<PolyMatrix> {
    let (s, t) = f.arity()?;
    if (s, t) != (src.strands(), tgt.strands()) {
        return Err(Error::Dimension(format!(
            "morphism {s}→{t} between objects on {} and {} strands",
            src.strands(),
            tgt.strands()
        )));
    }
    star_from_jet(g, &jet_at(f, a2)?, &src.twist, &tgt.twist)
}

/// A certified connecting map of a Kirby system, with its degree bookkeeping.
#[derive(Clone, Debug, Serialize)]
pub struct LevelMap {
    pub name: String,
    pub source_level: usize,
    pub intrinsic_degree: i64,
    pub shift_difference: i64,
    pub net_degree: i64,
    pub star: [Status; 3],
    #[serde(skip)]
    pub expr: Expr,
}

/// `q^{−n} P_n^{−(n/2)(1−a2)E1}` for `n = k, k+2, …, k+2J` with the maps `U_n`.
#[derive(Clone, Debug)]
pub struct KirbySystem {
    pub k: usize,
    pub a2: Rational,
    pub levels: Vec<TwistedObject>,
    pub maps: Vec<LevelMap>,
}

pub fn build_kirby(k: usize, levels: usize, a2: &Rational) -> Result<KirbySystem> {
    let top = k + 2 * levels;
    if top > JW_BOUND {
        return Err(Error::BoundExceeded {
            what: "Kirby top strand count",
            value: top,
            bound: JW_BOUND,
        });
    }
    let objects: Vec<TwistedObject> = (0..=levels)
        .map(|j| {
            let n = k + 2 * j;
            TwistedObject::new(n, TwistData::new(kirby_twist(n, a2), -(n as i64)))
        })
        .collect::<Result<_>>()?;
    let mut maps = Vec::new();
    for j in 0..levels {
        let (src, tgt) = (&objects[j], &objects[j + 1]);
        let u = un(src.strands())?;
        let jet = jet_at(&u.expr, a2)?;
        let mut star = [Status::Pass; 3];
        for g in Sl2::ALL {
            let m = star_from_jet(g, &jet, &src.twist, &tgt.twist)?;
            star[g.index()] = Status::from_bool(m.is_zero());
        }
        if let Some(g) = Sl2::ALL.iter().find(|g| !star[g.index()].ok()) {
            return Err(Error::Certification(format!(
                "level {j}: {g}∗{} ≠ 0 at a2 = {a2}",
                u.name
            )));
        }
        let intrinsic_degree = jet.value.homogeneous_degree().ok_or_else(|| {
            Error::Certification(format!("level {j}: {} is not homogeneous", u.name))
        })?;
        let shift_difference = tgt.twist.q_shift - src.twist.q_shift;
        maps.push(LevelMap {
            name: u.name,
            source_level: j,
            intrinsic_degree,
            shift_difference,
            net_degree: intrinsic_degree + shift_difference,
            star,
            expr: u.expr,
        });
    }
    Ok(KirbySystem {
        k,
        a2: a2.clone(),
        levels: objects,
        maps,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CompositeCheck {
    pub source_level: usize,
    pub nonzero: Status,
    pub star: [Status; 3],
}

impl CompositeCheck {
    pub fn passed(&self) -> bool {
        self.nonzero.ok() && self.star.iter().all(|s| s.ok())
    }
}

/// `U_{n+2} ∘ U_n` for every pair of consecutive maps: nonzero and
/// annihilated by the `∗` action.
pub fn composite_check(system: &KirbySystem) -> Result<Vec<CompositeCheck>> {
    let mut out = Vec::new();
    for w in system.maps.windows(2) {
        let j = w[0].source_level;
        let expr = Expr::stack(w[0].expr.clone(), w[1].expr.clone());
        let jet = jet_at(&expr, &system.a2)?;
        let (src, tgt) = (&system.levels[j].twist, &system.levels[j + 2].twist);
        let mut star = [Status::Pass; 3];
        for g in Sl2::ALL {
            star[g.index()] = Status::from_bool(star_from_jet(g, &jet, src, tgt)?.is_zero());
        }
        out.push(CompositeCheck {
            source_level: j,
            nonzero: Status::from_bool(!jet.value.is_zero()),
            star,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct KirbyReport {
    pub k: usize,
    pub a2: Rational,
    pub levels: Vec<String>,
    pub maps: Vec<LevelMap>,
    pub composites: Vec<CompositeCheck>,
    pub status: Status,
}

impl KirbySystem {
    pub fn report(&self) -> Result<KirbyReport> {
        let composites = composite_check(self)?;
        let ok = self.maps.iter().all(|m| m.star.iter().all(|s| s.ok()) && m.net_degree == 0)
            && composites.iter().all(|c| c.passed());
        Ok(KirbyReport {
            k: self.k,
            a2: self.a2.clone(),
            levels: self.levels.iter().map(|l| l.label()).collect(),
            maps: self.maps.clone(),
            composites,
            status: Status::from_bool(ok),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dtl::parse_expr;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn twists_follow_formula() {
        let s = build_kirby(0, 3, &Rational::zero()).unwrap();
        let a: Vec<Rational> = s.levels.iter().map(|l| l.twist.a.clone()).collect();
        assert_eq!(a, ["0", "-1", "-2", "-3"].map(r).to_vec());
        let s = build_kirby(1, 2, &r("1/2")).unwrap();
        let a: Vec<Rational> = s.levels.iter().map(|l| l.twist.a.clone()).collect();
        assert_eq!(a, ["-1/4", "-3/4", "-5/4"].map(r).to_vec());
        assert!(s.maps.iter().all(|m| m.net_degree == 0 && m.intrinsic_degree == 2));
    }

    #[test]
    fn single_level_is_trivial() {
        let s = build_kirby(0, 0, &r("3")).unwrap();
        assert_eq!(s.levels.len(), 1);
        assert!(s.maps.is_empty());
        assert!(composite_check(&s).unwrap().is_empty());
    }

    #[test]
    fn untwisted_dot() {
        let one = TwistedObject::new(1, TwistData::zero()).unwrap();
        let dot = parse_expr("dot").unwrap();
        let f = star_act_twisted(Sl2::F, &dot, &one, &one, &Rational::zero()).unwrap();
        assert_eq!(f, crate::dtl::evaluate_expr(&parse_expr("dot ; dot").unwrap()).unwrap());
    }

    #[test]
    fn wrong_twist_is_not_annihilated() {
        let a2 = Rational::zero();
        let src = TwistedObject::new(1, TwistData::zero()).unwrap();
        let tgt = TwistedObject::new(3, TwistData::zero()).unwrap();
        let u = un(1).unwrap();
        assert!(!star_act_twisted(Sl2::F, &u.expr, &src, &tgt, &a2).unwrap().is_zero());
        assert!(star_act_twisted(Sl2::F, &u.expr, &tgt, &src, &a2).is_err());
    }

    #[test]
    fn composites_certified() {
        let s = build_kirby(0, 2, &Rational::zero()).unwrap();
        let c = composite_check(&s).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[0].passed());
        assert!(s.report().unwrap().status.ok());
    }
}
