//! The state-space model `V_n = V_1^{⊗n}` over ℚ[E1, E2] with basis `{A1, A0}`
//! per strand. Matrices here are the equality oracle for diagram words.
//!
//! Basis words are indexed by bit strings with strand 1 as the most
//! significant bit and `A1 = 0`, `A0 = 1`, which is lexicographic order with
//! `A1 < A0`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{Poly, Rational};
use crate::sl2core::{Sl2, Sl2ActionSpec, TwistData};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct StateBasis {
    pub n: usize,
}

impl StateBasis {
    pub fn new(n: usize) -> Self {
        StateBasis { n }
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn label(&self, i: usize) -> String {
        if self.n == 0 {
            return "1".into();
        }
        (0..self.n)
            .map(|k| {
                if (i >> (self.n - 1 - k)) & 1 == 1 {
                    "A0"
                } else {
                    "A1"
                }
            })
            .collect::<Vec<_>>()
            .join("⊗")
    }

    pub fn count_a0(&self, i: usize) -> i64 {
        (i as u64).count_ones() as i64
    }

    /// `#A0 − #A1`.
    pub fn q_degree(&self, i: usize) -> i64 {
        2 * self.count_a0(i) - self.n as i64
    }

    /// `#A1 − #A0`.
    pub fn h_weight(&self, i: usize) -> i64 {
        -self.q_degree(i)
    }
}

/// A ℚ[E1, E2]-linear map `V_src → V_tgt`, stored as sparse rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    src: usize,
    tgt: usize,
    rows: Vec<Vec<(u32, Poly)>>,
}

impl PolyMatrix {
    pub fn zero(src: usize, tgt: usize) -> Self {
        PolyMatrix {
            src,
            tgt,
            rows: vec![Vec::new(); 1 << tgt],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMatrix::zero(n, n);
        for (i, row) in m.rows.iter_mut().enumerate() {
            row.push((i as u32, Poly::one()));
        }
        m
    }

    pub fn scalar(p: Poly) -> Self {
        let mut m = PolyMatrix::zero(0, 0);
        if !p.is_zero() {
            m.rows[0].push((0, p));
        }
        m
    }

    /// Builds from `(row, col, entry)` triples; duplicates are summed.
    pub fn from_entries<I: IntoIterator<Item = (usize, usize, Poly)>>(src: usize, tgt: usize, it: I) -> Self {
        let mut dense: Vec<std::collections::BTreeMap<u32, Poly>> = vec![Default::default(); 1 << tgt];
        for (r, c, p) in it {
            assert!(r < (1 << tgt) && c < (1 << src), "entry out of range");
            *dense[r].entry(c as u32).or_default() += &p;
        }
        PolyMatrix {
            src,
            tgt,
            rows: dense
                .into_iter()
                .map(|row| row.into_iter().filter(|(_, p)| !p.is_zero()).collect())
                .collect(),
        }
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn nrows(&self) -> usize {
        1 << self.tgt
    }

    pub fn ncols(&self) -> usize {
        1 << self.src
    }

    pub fn get(&self, r: usize, c: usize) -> Poly {
        match self.rows[r].binary_search_by_key(&(c as u32), |(j, _)| *j) {
            Ok(k) => self.rows[r][k].1.clone(),
            Err(_) => Poly::zero(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, p)| (i, *j as usize, p)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn same_shape(&self, other: &PolyMatrix) -> bool {
        self.src == other.src && self.tgt == other.tgt
    }

    fn check_shape(&self, other: &PolyMatrix) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "{}→{} vs {}→{}",
                self.src, self.tgt, other.src, other.tgt
            )))
        }
    }

    fn zip_rows(&self, other: &PolyMatrix, negate: bool) -> PolyMatrix {
        let rows = self
            .rows
            .iter()
            .zip(other.rows.iter())
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    let ka = a.get(i).map(|x| x.0).unwrap_or(u32::MAX);
                    let kb = b.get(j).map(|x| x.0).unwrap_or(u32::MAX);
                    if ka < kb {
                        out.push(a[i].clone());
                        i += 1;
                    } else if kb < ka {
                        let p = if negate { -&b[j].1 } else { b[j].1.clone() };
                        out.push((kb, p));
                        j += 1;
                    } else {
                        let p = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                        if !p.is_zero() {
                            out.push((ka, p));
                        }
                        i += 1;
                        j += 1;
                    }
                }
                out
            })
            .collect();
        PolyMatrix {
            src: self.src,
            tgt: self.tgt,
            rows,
        }
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_shape(other)?;
        Ok(self.zip_rows(other, false))
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_shape(other)?;
        Ok(self.zip_rows(other, true))
    }

    pub fn neg(&self) -> PolyMatrix {
        self.map_entries(|p| -p)
    }

    pub fn scale(&self, p: &Poly) -> PolyMatrix {
        if p.is_zero() {
            return PolyMatrix::zero(self.src, self.tgt);
        }
        self.map_entries(|x| x * p)
    }

    pub fn scale_rational(&self, c: &Rational) -> PolyMatrix {
        self.map_entries(|x| x.scale(c))
    }

    pub fn map_entries(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix {
            src: self.src,
            tgt: self.tgt,
            rows: self
                .rows
                .iter()
                .map(|row| {
                    row.iter()
                        .filter_map(|(j, p)| {
                            let q = f(p);
                            (!q.is_zero()).then_some((*j, q))
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Entries with `E1 = E2 = 0`.
    pub fn mod_e(&self) -> PolyMatrix {
        self.map_entries(Poly::mod_e)
    }

    /// Matrix product `self ∘ rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.src != rhs.tgt {
            return Err(Error::Dimension(format!(
                "cannot compose {}→{} after {}→{}",
                self.src, self.tgt, rhs.src, rhs.tgt
            )));
        }
        let ncols = rhs.ncols();
        let mut acc: Vec<Poly> = vec![Poly::zero(); ncols];
        let mut touched: Vec<u32> = Vec::new();
        let mut mark = vec![false; ncols];
        let mut rows = Vec::with_capacity(self.nrows());
        for row in &self.rows {
            for (k, a) in row {
                for (j, b) in &rhs.rows[*k as usize] {
                    let ju = *j as usize;
                    if !mark[ju] {
                        mark[ju] = true;
                        touched.push(*j);
                    }
                    acc[ju] += &(a * b);
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for &j in &touched {
                let ju = j as usize;
                mark[ju] = false;
                let p = std::mem::take(&mut acc[ju]);
                if !p.is_zero() {
                    out.push((j, p));
                }
            }
            touched.clear();
            rows.push(out);
        }
        Ok(PolyMatrix {
            src: rhs.src,
            tgt: self.tgt,
            rows,
        })
    }

    /// Tensor product `self ⊗ rhs`; `self` acts on the leftmost strands.
    pub fn tensor(&self, rhs: &PolyMatrix) -> PolyMatrix {
        let cbits = rhs.src;
        let mut rows = Vec::with_capacity(self.nrows() * rhs.nrows());
        for arow in &self.rows {
            for brow in &rhs.rows {
                let mut out = Vec::with_capacity(arow.len() * brow.len());
                for (ja, pa) in arow {
                    for (jb, pb) in brow {
                        out.push(((ja << cbits) | jb, pa * pb));
                    }
                }
                out.retain(|(_, p)| !p.is_zero());
                rows.push(out);
            }
        }
        PolyMatrix {
            src: self.src + rhs.src,
            tgt: self.tgt + rhs.tgt,
            rows,
        }
    }

    /// `id^{left} ⊗ self ⊗ id^{right}`.
    pub fn embed(&self, left: usize, right: usize) -> PolyMatrix {
        let mut rows = Vec::with_capacity(1 << (left + self.tgt + right));
        for l in 0..(1usize << left) {
            for row in &self.rows {
                for r in 0..(1usize << right) {
                    rows.push(
                        row.iter()
                            .map(|(j, p)| {
                                let col = (l << (self.src + right)) | ((*j as usize) << right) | r;
                                (col as u32, p.clone())
                            })
                            .collect(),
                    );
                }
            }
        }
        PolyMatrix {
            src: left + self.src + right,
            tgt: left + self.tgt + right,
            rows,
        }
    }

    pub fn transpose_entries(&self) -> Vec<Vec<(u32, Poly)>> {
        let mut cols = vec![Vec::new(); self.ncols()];
        for (i, j, p) in self.entries() {
            cols[j].push((i as u32, p.clone()));
        }
        cols
    }

    /// Applies `g` of the base ring entrywise.
    pub fn derive_entries(&self, g: Sl2, base: &Sl2ActionSpec) -> Result<PolyMatrix> {
        let mut rows = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let mut out = Vec::with_capacity(row.len());
            for (j, p) in row {
                let q = base.apply(g, p)?;
                if !q.is_zero() {
                    out.push((*j, q));
                }
            }
            rows.push(out);
        }
        Ok(PolyMatrix {
            src: self.src,
            tgt: self.tgt,
            rows,
        })
    }

    /// Degree `d` such that every entry satisfies `deg(entry) + deg(row) − deg(col) = d`.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let (sb, tb) = (StateBasis::new(self.src), StateBasis::new(self.tgt));
        let mut d = None;
        for (i, j, p) in self.entries() {
            for (m, _) in p.terms() {
                let x = m.degree(crate::ring::Grading::CANONICAL) + tb.q_degree(i) - sb.q_degree(j);
                match d {
                    None => d = Some(x),
                    Some(y) if y != x => return None,
                    _ => {}
                }
            }
        }
        d
    }

    /// Specializes `E1, E2` to rationals, giving a dense rational matrix.
    pub fn specialize(&self, e1: &Rational, e2: &Rational) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.ncols()]; self.nrows()];
        for (i, j, p) in self.entries() {
            out[i][j] = p.eval_e(e1, e2);
        }
        out
    }

    pub fn to_json(&self) -> MatrixDump {
        let (sb, tb) = (StateBasis::new(self.src), StateBasis::new(self.tgt));
        MatrixDump {
            source: self.src,
            target: self.tgt,
            rows: (0..self.nrows()).map(|i| tb.label(i)).collect(),
            cols: (0..self.ncols()).map(|j| sb.label(j)).collect(),
            entries: self
                .entries()
                .map(|(i, j, p)| (tb.label(i), sb.label(j), p.to_string()))
                .collect(),
        }
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tb = StateBasis::new(self.tgt);
        let sb = StateBasis::new(self.src);
        writeln!(f, "PolyMatrix {}→{} [", self.src, self.tgt)?;
        for (i, j, p) in self.entries() {
            writeln!(f, "  {} <- {}: {}", tb.label(i), sb.label(j), p)?;
        }
        write!(f, "]")
    }
}

/// JSON matrix dump with basis labels and canonical polynomial text.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MatrixDump {
    pub source: usize,
    pub target: usize,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<(String, String, String)>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum Prim {
    Id,
    Dot,
    Cup,
    Cap,
}

impl Prim {
    pub fn arity(self) -> (usize, usize) {
        match self {
            Prim::Id | Prim::Dot => (1, 1),
            Prim::Cup => (0, 2),
            Prim::Cap => (2, 0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Prim::Id => "id",
            Prim::Dot => "dot",
            Prim::Cup => "cup",
            Prim::Cap => "cap",
        }
    }

    /// The local matrix of the primitive.
    pub fn matrix(self) -> PolyMatrix {
        let p = |s: &str| s.parse::<Poly>().expect("literal");
        match self {
            Prim::Id => PolyMatrix::identity(1),
            // A1 ↦ A0, A0 ↦ E1·A0 − E2·A1
            Prim::Dot => PolyMatrix::from_entries(1, 1, [(1, 0, p("1")), (1, 1, p("E1")), (0, 1, p("-E2"))]),
            // 1 ↦ A0⊗A1 + A1⊗A0 − E1·A1⊗A1
            Prim::Cup => PolyMatrix::from_entries(0, 2, [(0b10, 0, p("1")), (0b01, 0, p("1")), (0b00, 0, p("-E1"))]),
            // A1A1 ↦ 0, A1A0 ↦ 1, A0A1 ↦ 1, A0A0 ↦ E1
            Prim::Cap => PolyMatrix::from_entries(2, 0, [(0, 0b01, p("1")), (0, 0b10, p("1")), (0, 0b11, p("E1"))]),
        }
    }
}

/// Matrix of a primitive at `position` inside `n` ambient source strands.
pub fn generator_matrix(gen: Prim, position: usize, n: usize) -> Result<PolyMatrix> {
    let (k, _) = gen.arity();
    if position + k > n || (gen == Prim::Cup && position > n) {
        return Err(Error::InvalidPosition {
            prim: gen.name(),
            position,
            strands: n,
        });
    }
    Ok(gen.matrix().embed(position, n - position - k))
}

/// The intrinsic action of `g` on `V_n`: a base-ring derivation plus the
/// ℚ[E1,E2]-linear part `basis_part` on basis words.
#[derive(Clone, Debug)]
pub struct IntrinsicAction {
    pub g: Sl2,
    pub n: usize,
    pub basis_part: PolyMatrix,
}

fn intrinsic_local(g: Sl2) -> PolyMatrix {
    let p = |s: &str| s.parse::<Poly>().expect("literal");
    match g {
        // e(A1) = 0, e(A0) = −A1
        Sl2::E => PolyMatrix::from_entries(1, 1, [(0, 1, p("-1"))]),
        // f(A1) = −½E1·A1, f(A0) = ½E1·A0 − E2·A1
        Sl2::F => PolyMatrix::from_entries(
            1,
            1,
            [(0, 0, p("-1/2*E1")), (1, 1, p("1/2*E1")), (0, 1, p("-E2"))],
        ),
        // h(A1) = A1, h(A0) = −A0
        Sl2::H => PolyMatrix::from_entries(1, 1, [(0, 0, p("1")), (1, 1, p("-1"))]),
    }
}

pub fn intrinsic_action_matrix(g: Sl2, n: usize) -> IntrinsicAction {
    let local = intrinsic_local(g);
    let mut basis_part = PolyMatrix::zero(n, n);
    for i in 0..n {
        basis_part = basis_part
            .add(&local.embed(i, n - i - 1))
            .expect("same shape");
    }
    IntrinsicAction { g, n, basis_part }
}

impl IntrinsicAction {
    /// Applies the action to a vector given as a single-column matrix `V_0 → V_n`.
    pub fn apply(&self, v: &PolyMatrix, base: &Sl2ActionSpec) -> Result<PolyMatrix> {
        if v.src() != 0 || v.tgt() != self.n {
            return Err(Error::Dimension("expected a vector in V_n".into()));
        }
        v.derive_entries(self.g, base)?
            .add(&self.basis_part.compose(v)?)
    }
}

/// `g∗F = g∘F − F∘g` with the intrinsic actions, plus twist corrections:
/// `f` gains `(a_tgt − a_src)·E1·F`, `h` gains `2(a_src − a_tgt)·F`.
pub fn commutator_star(
    g: Sl2,
    f: &PolyMatrix,
    source_twist: &TwistData,
    target_twist: &TwistData,
) -> Result<PolyMatrix> {
    let base = Sl2ActionSpec::base_ring();
    let gs = intrinsic_action_matrix(g, f.src());
    let gt = intrinsic_action_matrix(g, f.tgt());
    let mut out = f
        .derive_entries(g, &base)?
        .add(&gt.basis_part.compose(f)?)?
        .sub(&f.compose(&gs.basis_part)?)?;
    let diff = &target_twist.a - &source_twist.a;
    match g {
        Sl2::E => {}
        Sl2::F => out = out.add(&f.scale(&Poly::e1().scale(&diff)))?,
        Sl2::H => out = out.add(&f.scale_rational(&(-&diff * &Rational::from_int(2))))?,
    }
    Ok(out)
}

/// Applies `g` to every generator: convenience for bracket checks on matrices.
pub fn star(g: Sl2, f: &PolyMatrix) -> Result<PolyMatrix> {
    commutator_star(g, f, &TwistData::zero(), &TwistData::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn cup() -> PolyMatrix {
        generator_matrix(Prim::Cup, 0, 0).unwrap()
    }

    fn cap() -> PolyMatrix {
        generator_matrix(Prim::Cap, 0, 2).unwrap()
    }

    fn dot() -> PolyMatrix {
        generator_matrix(Prim::Dot, 0, 1).unwrap()
    }

    #[test]
    fn basis_gradings() {
        let b = StateBasis::new(2);
        assert_eq!(b.dim(), 4);
        assert_eq!(b.label(0b01), "A1⊗A0");
        assert_eq!(b.q_degree(0b00), -2);
        assert_eq!(b.h_weight(0b11), -2);
    }

    #[test]
    fn circle_and_dotted_circle() {
        assert_eq!(cap().compose(&cup()).unwrap(), PolyMatrix::scalar(p("2")));
        let dotted = cap().compose(&dot().tensor(&PolyMatrix::identity(1))).unwrap();
        assert_eq!(dotted.compose(&cup()).unwrap(), PolyMatrix::scalar(p("E1")));
    }

    #[test]
    fn dot_squared_relation() {
        let lhs = dot().compose(&dot()).unwrap();
        let rhs = dot()
            .scale(&p("E1"))
            .sub(&PolyMatrix::identity(1).scale(&p("E2")))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn zigzags_at_every_position() {
        for n in 1..=4 {
            for i in 0..n {
                // strand i bends: cup inserted right of it, then cap on (i, i+1)
                let right = generator_matrix(Prim::Cap, i, n + 2)
                    .unwrap()
                    .compose(&generator_matrix(Prim::Cup, i + 1, n).unwrap())
                    .unwrap();
                assert_eq!(right, PolyMatrix::identity(n), "n={n} i={i}");
                let left = generator_matrix(Prim::Cap, i + 1, n + 2)
                    .unwrap()
                    .compose(&generator_matrix(Prim::Cup, i, n).unwrap())
                    .unwrap();
                assert_eq!(left, PolyMatrix::identity(n), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn invalid_positions() {
        assert!(generator_matrix(Prim::Cap, 1, 2).is_err());
        assert!(generator_matrix(Prim::Dot, 3, 3).is_err());
        assert!(generator_matrix(Prim::Cup, 3, 3).is_ok());
        assert!(generator_matrix(Prim::Cup, 4, 3).is_err());
    }

    #[test]
    fn intrinsic_h_on_v1() {
        let h = intrinsic_action_matrix(Sl2::H, 1);
        assert_eq!(h.basis_part.get(0, 0), p("1"));
        assert_eq!(h.basis_part.get(1, 1), p("-1"));
        let e = intrinsic_action_matrix(Sl2::E, 0);
        assert!(e.basis_part.compose(&PolyMatrix::scalar(p("1"))).unwrap().is_zero());
    }

    #[test]
    fn f_kills_cup_image() {
        let base = Sl2ActionSpec::base_ring();
        let f = intrinsic_action_matrix(Sl2::F, 2);
        assert!(f.apply(&cup(), &base).unwrap().is_zero());
    }

    #[test]
    fn commutator_examples() {
        let z = TwistData::zero();
        assert_eq!(
            commutator_star(Sl2::H, &dot(), &z, &z).unwrap(),
            dot().scale(&p("-2"))
        );
        assert!(commutator_star(Sl2::E, &PolyMatrix::identity(3), &z, &z)
            .unwrap()
            .is_zero());
        assert!(commutator_star(Sl2::F, &cup(), &z, &z).unwrap().is_zero());
        assert_eq!(
            commutator_star(Sl2::F, &dot(), &z, &z).unwrap(),
            dot().compose(&dot()).unwrap()
        );
        assert_eq!(
            commutator_star(Sl2::E, &dot(), &z, &z).unwrap(),
            PolyMatrix::identity(1).neg()
        );
    }

    #[test]
    fn twist_corrections() {
        let src = TwistData::new(Rational::new(1, 2), 0);
        let tgt = TwistData::new(Rational::from_int(2), 0);
        let id = PolyMatrix::identity(1);
        // identity commutes, so only the corrections survive
        assert_eq!(
            commutator_star(Sl2::F, &id, &src, &tgt).unwrap(),
            id.scale(&p("3/2*E1"))
        );
        assert_eq!(
            commutator_star(Sl2::H, &id, &src, &tgt).unwrap(),
            id.scale(&p("-3"))
        );
    }

    #[test]
    fn dimension_mismatch() {
        assert!(dot().compose(&cup()).is_err());
        assert!(dot().add(&PolyMatrix::identity(2)).is_err());
    }

    #[test]
    fn json_dump_uses_labels() {
        let d = dot().to_json();
        assert_eq!(d.rows, vec!["A1", "A0"]);
        assert!(d.entries.contains(&("A0".into(), "A0".into(), "E1".into())));
    }
}
