//! Crossingless matchings with at most one dot per component, the rank of
//! their evaluations, and normalization of matrices against them.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::word::{DiagramWord, WordComb};
use crate::error::{Error, Result};
use crate::linalg::{Eliminator, SparseVec};
use crate::ring::{Grading, Monomial, Poly, Rational};
use crate::statespace::{PolyMatrix, Prim, StateBasis};

/// Default bound on `n` for [`hom_rank`].
pub const HOM_RANK_BOUND: usize = 5;

/// Non-crossing perfect matchings of `points` arranged on a circle.
fn circle_matchings(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if points.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in (1..points.len()).step_by(2) {
        let inside = circle_matchings(&points[1..k]);
        let outside = circle_matchings(&points[k + 1..]);
        for a in &inside {
            for b in &outside {
                let mut m = vec![(points[0], points[k])];
                m.extend(a.iter().copied());
                m.extend(b.iter().copied());
                out.push(m);
            }
        }
    }
    out
}

/// Boundary point of a diagram `s → t`: bottom points first, then top.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Pt {
    Bottom(usize),
    Top(usize),
}

/// A crossingless matching `s → t` with one dot flag per component.
#[derive(Clone, Debug)]
pub struct DottedMatching {
    pub source: usize,
    pub target: usize,
    pairs: Vec<(Pt, Pt)>,
    pub dots: Vec<bool>,
}

fn decode(s: usize, i: usize) -> Pt {
    if i < s {
        Pt::Bottom(i)
    } else {
        Pt::Top(i - s)
    }
}

impl DottedMatching {
    pub fn components(&self) -> usize {
        self.pairs.len()
    }

    fn partner(&self, p: Pt) -> (usize, Pt) {
        for (k, &(a, b)) in self.pairs.iter().enumerate() {
            if a == p {
                return (k, b);
            }
            if b == p {
                return (k, a);
            }
        }
        unreachable!("every boundary point is matched")
    }

    /// A word realizing the diagram: bottom dots, caps, cups, top dots.
    pub fn to_word(&self) -> DiagramWord {
        let mut slices: Vec<Vec<Prim>> = Vec::new();
        // Dots on through strands and caps sit on their leftmost bottom
        // endpoint; dots on cups sit on their leftmost top endpoint.
        let mut bottom_dots = vec![Prim::Id; self.source];
        let mut top_dots = vec![Prim::Id; self.target];
        for (k, &(a, b)) in self.pairs.iter().enumerate() {
            if !self.dots[k] {
                continue;
            }
            match (a, b) {
                (Pt::Bottom(i), Pt::Bottom(j)) => bottom_dots[i.min(j)] = Prim::Dot,
                (Pt::Bottom(i), Pt::Top(_)) | (Pt::Top(_), Pt::Bottom(i)) => bottom_dots[i] = Prim::Dot,
                (Pt::Top(i), Pt::Top(j)) => top_dots[i.min(j)] = Prim::Dot,
            }
        }
        slices.push(bottom_dots);

        let mut strands: Vec<usize> = (0..self.source).collect();
        'caps: loop {
            for j in 0..strands.len().saturating_sub(1) {
                let (_, other) = self.partner(Pt::Bottom(strands[j]));
                if other == Pt::Bottom(strands[j + 1]) {
                    let mut slice = vec![Prim::Id; strands.len() - 2];
                    slice.insert(j, Prim::Cap);
                    slices.push(slice);
                    strands.drain(j..j + 2);
                    continue 'caps;
                }
            }
            break;
        }

        let mut tops: Vec<usize> = (0..self.target).collect();
        let mut cup_positions = Vec::new();
        'cups: loop {
            for j in 0..tops.len().saturating_sub(1) {
                let (_, other) = self.partner(Pt::Top(tops[j]));
                if other == Pt::Top(tops[j + 1]) {
                    cup_positions.push((j, tops.len() - 2));
                    tops.drain(j..j + 2);
                    continue 'cups;
                }
            }
            break;
        }
        for &(j, width) in cup_positions.iter().rev() {
            let mut slice = vec![Prim::Id; width];
            slice.insert(j, Prim::Cup);
            slices.push(slice);
        }
        slices.push(top_dots);
        DiagramWord::from_slices(self.source, slices).expect("planar matching")
    }
}

/// All dotted crossingless matchings `s → t`, in a fixed order.
pub fn spanning_set(s: usize, t: usize) -> Vec<DottedMatching> {
    if (s + t) % 2 == 1 {
        return Vec::new();
    }
    // Circle order: bottom left to right, then top right to left.
    let order: Vec<usize> = (0..s).chain((s..s + t).rev()).collect();
    let mut out = Vec::new();
    for m in circle_matchings(&order) {
        let pairs: Vec<(Pt, Pt)> = m.iter().map(|&(a, b)| (decode(s, a), decode(s, b))).collect();
        let c = pairs.len();
        for mask in 0..(1u32 << c) {
            out.push(DottedMatching {
                source: s,
                target: t,
                pairs: pairs.clone(),
                dots: (0..c).map(|k| mask >> k & 1 == 1).collect(),
            });
        }
    }
    out
}

fn specialized_vector(m: &PolyMatrix, e1: &Rational, e2: &Rational) -> SparseVec<(usize, usize)> {
    m.entries()
        .map(|(i, j, p)| ((i, j), p.eval_e(e1, e2)))
        .filter(|(_, x)| !x.is_zero())
        .collect()
}

/// Rank over ℚ(E1,E2) of the evaluated spanning set of `End(c^n)`, computed
/// at three random integer points that must agree.
pub fn hom_rank(n: usize) -> Result<usize> {
    hom_rank_bounded(n, HOM_RANK_BOUND)
}

pub fn hom_rank_bounded(n: usize, bound: usize) -> Result<usize> {
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "hom_rank n",
            value: n,
            bound,
        });
    }
    let mats: Vec<PolyMatrix> = spanning_set(n, n).iter().map(|d| d.to_word().evaluate()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
    for _ in 0..5 {
        let ranks: Vec<usize> = (0..3)
            .map(|_| {
                let e1 = Rational::from_int(rng.gen_range(-1000..=1000));
                let e2 = Rational::from_int(rng.gen_range(-1000..=1000));
                crate::linalg::rank(mats.iter().map(|m| specialized_vector(m, &e1, &e2)))
            })
            .collect();
        if ranks.iter().all(|r| *r == ranks[0]) {
            return Ok(ranks[0]);
        }
    }
    Err(Error::Certification(format!("hom_rank({n}): specializations disagree")))
}

/// E-monomials `E1^a E2^b` of canonical degree `d`.
fn e_monomials(d: i64) -> Vec<Monomial> {
    if d < 0 || d % 2 != 0 {
        return Vec::new();
    }
    (0..=d / 4)
        .map(|b| Monomial::e(((d - 4 * b) / 2) as i32, b as i32))
        .collect()
}

type EntryKey = (usize, usize, Monomial);

fn graded_pieces(m: &PolyMatrix) -> BTreeMap<i64, SparseVec<EntryKey>> {
    let (sb, tb) = (StateBasis::new(m.src()), StateBasis::new(m.tgt()));
    let mut out: BTreeMap<i64, SparseVec<EntryKey>> = BTreeMap::new();
    for (i, j, p) in m.entries() {
        for (mono, x) in p.terms() {
            let d = mono.degree(Grading::CANONICAL) + tb.q_degree(i) - sb.q_degree(j);
            out.entry(d).or_default().insert((i, j, *mono), x.clone());
        }
    }
    out
}

/// Writes a matrix as a ℚ[E1,E2]-combination of the dotted crossingless
/// matchings, degree by degree. The choice among equivalent expressions is
/// the first one found by elimination in spanning-set order.
pub fn normalize(m: &PolyMatrix) -> Result<WordComb> {
    let (s, t) = (m.src(), m.tgt());
    let basis: Vec<(DiagramWord, PolyMatrix, i64)> = spanning_set(s, t)
        .iter()
        .map(|d| {
            let w = d.to_word();
            let mat = w.evaluate();
            let deg = 2 * w.dots() as i64;
            (w, mat, deg)
        })
        .collect();
    let mut out = WordComb::zero(s, t);
    for (d, target) in graded_pieces(m) {
        let mut el = Eliminator::new();
        let mut unknowns = Vec::new();
        for (w, mat, deg) in &basis {
            for mu in e_monomials(d - deg) {
                let v: SparseVec<EntryKey> = mat
                    .entries()
                    .flat_map(|(i, j, p)| {
                        p.terms()
                            .iter()
                            .map(move |(x, c)| ((i, j, x.mul(&mu)), c.clone()))
                            .collect::<Vec<_>>()
                    })
                    .collect();
                el.insert(v);
                unknowns.push((w, mu));
            }
        }
        let sol = el.solve(&target).ok_or_else(|| {
            Error::Invalid(format!("degree-{d} part is not in the span of diagrams {s}→{t}"))
        })?;
        for (k, x) in sol {
            let (w, mu) = &unknowns[k];
            out.add_term(Poly::term(*mu, x), (*w).clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dtl::{evaluate_expr, parse_expr};

    #[test]
    fn spanning_set_sizes() {
        assert_eq!(spanning_set(0, 0).len(), 1);
        assert_eq!(spanning_set(1, 1).len(), 2);
        assert_eq!(spanning_set(2, 2).len(), 8);
        assert_eq!(spanning_set(0, 2).len(), 2);
        assert_eq!(spanning_set(3, 3).len(), 5 * 8);
        assert!(spanning_set(1, 2).is_empty());
    }

    #[test]
    fn words_have_right_arity() {
        for (s, t) in [(2, 2), (3, 1), (1, 3), (4, 2), (0, 4)] {
            for d in spanning_set(s, t) {
                let w = d.to_word();
                assert_eq!((w.source(), w.target()), (s, t));
                assert_eq!(w.dots(), d.dots.iter().filter(|x| **x).count());
            }
        }
    }

    #[test]
    fn small_ranks() {
        assert_eq!(hom_rank(0).unwrap(), 1);
        assert_eq!(hom_rank(1).unwrap(), 2);
        // Relation 3 and its left multiple by a dot give two independent
        // linear relations among the eight diagrams.
        assert_eq!(hom_rank(2).unwrap(), 6);
        assert!(matches!(hom_rank(6), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn second_relation_in_end_c2() {
        let lhs = parse_expr("dot|id ; cap ; cup ; dot|id").unwrap();
        let rhs = parse_expr("dot|dot - E2*(id|id) + E2*(cap ; cup)").unwrap();
        assert_eq!(evaluate_expr(&lhs).unwrap(), evaluate_expr(&rhs).unwrap());
    }

    #[test]
    fn normalize_double_dot() {
        let m = evaluate_expr(&parse_expr("dot ; dot").unwrap()).unwrap();
        let w = normalize(&m).unwrap();
        assert_eq!(w.to_string(), "E1*dot - E2*id");
    }

    #[test]
    fn normalize_reproduces_matrix() {
        for s in ["jw(3)", "u(1)", "dot|dot ; cap", "s(1,3) ; s(2,3)"] {
            let m = evaluate_expr(&parse_expr(s).unwrap()).unwrap();
            assert_eq!(normalize(&m).unwrap().evaluate(), m, "{s}");
        }
    }
}
