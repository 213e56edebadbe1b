//! The decorated tile: the part of the `1/d`-scaled Farey tessellation that
//! meets the closed Γ₀(n) fundamental polygon, with each triangle classified
//! by how the side pairings fold it on the quotient orbifold.
//!
//! Requires `d | n` so that Γ₀(n) preserves the scaled tessellation. Edges
//! and faces are found by a breadth-first search from the triangle at the
//! left vertical side; an edge belongs to the tile exactly when its geodesic
//! meets the closed polygon, which is decided by exact rational arithmetic
//! (the only subtle case, an edge spanning the turning point of an odd
//! interval, compares the edge's arc against the order-3 fixed point).

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{build_farey_symbol, pairing_matrices, FareySymbol, IntervalLabel};
use crate::matrix::Mat2;
use crate::rational::Rational;
use crate::{farey, Error, Result};

/// How a tessellation triangle sits on the quotient orbifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TriangleType {
    /// Embeds without identifications.
    I,
    /// Two of its edges are identified with each other.
    II,
    /// One edge is folded onto itself at an order-2 point.
    IIIa,
    /// Two edges are folded onto themselves.
    IIIb,
    /// All three edges are folded onto themselves.
    IIIc,
    /// Fixed (as a set) by an order-3 element; folds around its center.
    IV,
}

/// One triangle of the decorated tile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TileFace {
    /// Vertices in increasing order (∞ last).
    pub vertices: [Rational; 3],
    pub kind: TriangleType,
}

/// The `1/d`-scaled tessellation restricted to the Γ₀(n) polygon.
#[derive(Debug, Clone, Serialize)]
pub struct DecoratedTile {
    pub n: u64,
    pub d: u64,
    pub symbol: FareySymbol,
    /// Tessellation edges meeting the closed polygon, lexicographically sorted.
    pub edges: Vec<(Rational, Rational)>,
    pub faces: Vec<TileFace>,
}

/// Data about one odd interval needed for the edge test: its span, its
/// mediant, and the order-3 fixed point `x_c + i·y_c` of its pairing as the
/// exact pair `(x_c, y_c^2)`.
struct OddInterval {
    u: Rational,
    w: Rational,
    m: Rational,
    center_x: Rational,
    center_y_sq: Rational,
}

struct Tiler {
    n: u64,
    d: u64,
    symbol: FareySymbol,
    mats: Vec<Mat2>,
    odds: Vec<OddInterval>,
}

fn sorted_face(mut v: [Rational; 3]) -> [Rational; 3] {
    v.sort();
    v
}

fn sorted_edge(a: &Rational, b: &Rational) -> (Rational, Rational) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

/// Homogeneous integer coordinates, with ∞ as (1, 0).
fn coords(v: &Rational) -> (BigInt, BigInt) {
    (v.num().clone(), v.den().clone())
}

impl Tiler {
    fn new(n: u64, d: u64) -> Result<Self> {
        if d == 0 || n % d != 0 {
            return Err(Error::ScaleDoesNotDivide(d, n));
        }
        let symbol = build_farey_symbol(n)?;
        let mats = pairing_matrices(&symbol)?;
        let mut odds = Vec::new();
        for i in 0..symbol.interval_count() {
            if symbol.labels()[i] != IntervalLabel::Odd {
                continue;
            }
            let (u, w) = symbol.interval(i);
            let m = farey::mediant(u, w)?;
            let phi = &mats[i];
            // Fixed point of the elliptic element: z = (a - d)/(2c) + i*sqrt(3)/(2|c|).
            let two_c = BigInt::from(2) * phi.c();
            let center_x = Rational::new(phi.a() - phi.d_entry(), two_c.clone())?;
            let center_y_sq = Rational::new(BigInt::from(3), &two_c * &two_c)?;
            odds.push(OddInterval {
                u: u.clone(),
                w: w.clone(),
                m,
                center_x,
                center_y_sq,
            });
        }
        Ok(Self { n, d, symbol, mats, odds })
    }

    /// Does the geodesic edge `{a, b}` of the scaled tessellation meet the
    /// closed fundamental polygon?
    fn edge_included(&self, a: &Rational, b: &Rational) -> Result<bool> {
        if a.is_infinite() || b.is_infinite() {
            // Vertical line: meets the polygon iff its foot lies in [0, 1].
            let f = if a.is_infinite() { b } else { a };
            return Ok(!f.is_infinite()
                && *f >= Rational::zero()
                && *f <= Rational::from_integer(1));
        }
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if *hi <= Rational::zero() || *lo >= Rational::from_integer(1) {
            // No tessellation edge crosses the vertical sides, so the arc is
            // wholly beyond one of them (unless it is degenerate-equal).
            return Ok(false);
        }
        // Locate a symbol interval containing the whole arc span.
        let verts = self.symbol.vertices();
        for i in 1..self.symbol.interval_count() - 1 {
            let (u, w) = (&verts[i], &verts[i + 1]);
            if !(u <= lo && hi <= w) {
                continue;
            }
            if lo == u && hi == w {
                return Ok(true); // the polygon side itself
            }
            match self.symbol.labels()[i] {
                IntervalLabel::Free(_) | IntervalLabel::Even => return Ok(false),
                IntervalLabel::Odd => {
                    let odd = self
                        .odds
                        .iter()
                        .find(|o| o.u == *u && o.w == *w)
                        .expect("odd interval recorded");
                    if *hi <= odd.m || *lo >= odd.m {
                        return Ok(false); // nested beside the turning point
                    }
                    // Spans the turning point: inside the polygon exactly
                    // when the arc passes above the order-3 fixed point.
                    let left = odd.center_x.checked_sub(lo)?;
                    let right = hi.checked_sub(&odd.center_x)?;
                    let height_sq = left.checked_mul(&right)?;
                    return Ok(height_sq > odd.center_y_sq);
                }
            }
        }
        // Not contained in any single interval: pokes above the floor.
        Ok(true)
    }

    /// Whether the walk may continue past this edge and still meet the
    /// polygon (false for the two vertical sides and free/even sides).
    fn edge_expandable(&self, a: &Rational, b: &Rational) -> bool {
        let inf = Rational::infinity();
        let zero = Rational::zero();
        let one = Rational::from_integer(1);
        if (a == &inf || b == &inf) && (a == &zero || b == &zero) {
            return false;
        }
        if (a == &inf || b == &inf) && (a == &one || b == &one) {
            return false;
        }
        for i in 1..self.symbol.interval_count() - 1 {
            if matches!(self.symbol.labels()[i], IntervalLabel::Free(_) | IntervalLabel::Even) {
                let (u, w) = self.symbol.interval(i);
                if (a == u && b == w) || (a == w && b == u) {
                    return false;
                }
            }
        }
        true
    }

    fn apply_to_vertex(m: &Mat2, v: &Rational) -> Result<Rational> {
        m.apply(v)
    }

    fn maps_edge_to_itself(m: &Mat2, e: &(Rational, Rational)) -> bool {
        match (Self::apply_to_vertex(m, &e.0), Self::apply_to_vertex(m, &e.1)) {
            (Ok(p), Ok(q)) => sorted_edge(&p, &q) == *e,
            _ => false,
        }
    }

    /// Are two (distinct) tile edges identified by some element of Γ₀(n) that
    /// also preserves the scaled tessellation? Decided by building the only
    /// candidate matrices sending one edge to the other and testing them.
    fn edges_equivalent(&self, e1: &(Rational, Rational), e2: &(Rational, Rational)) -> bool {
        let d_big = BigInt::from(self.d);
        let n_big = BigInt::from(self.n);
        let scaled = |v: &Rational| farey::scale(v, self.d);
        let m_of = |e: &(Rational, Rational)| -> Mat2 {
            let (p, q) = (coords(&scaled(&e.0)), coords(&scaled(&e.1)));
            Mat2::new(p.0, q.0, p.1, q.1)
        };
        let m1 = m_of(e1);
        let m2 = m_of(e2);
        let j = Mat2::from_i64(0, -1, 1, 0);
        for swap in [false, true] {
            for flip in [false, true] {
                let m1v = if flip { m1.negate_second_column() } else { m1.clone() };
                if !m1v.det().abs().is_one() {
                    continue;
                }
                let mut g = m2.clone();
                if swap {
                    g = g.mul(&j);
                }
                let g = g.mul(&m1v.inverse_unimodular());
                if !g.det().is_one() {
                    continue;
                }
                // Conjugate back to unscaled coordinates: entries A, B/d, C*d, D.
                if !(g.b() % &d_big).is_zero() {
                    continue;
                }
                if !((g.c() * &d_big) % &n_big).is_zero() {
                    continue;
                }
                return true;
            }
        }
        false
    }

    fn classify_face(&self, face: &[Rational; 3]) -> TriangleType {
        // Order 3: some odd pairing permutes the vertices.
        for (i, label) in self.symbol.labels().iter().enumerate() {
            if *label != IntervalLabel::Odd {
                continue;
            }
            let phi = &self.mats[i];
            let mapped: Result<Vec<Rational>> =
                face.iter().map(|v| Self::apply_to_vertex(phi, v)).collect();
            if let Ok(mut mapped) = mapped {
                mapped.sort();
                if mapped.as_slice() == face.as_slice() {
                    return TriangleType::IV;
                }
            }
        }
        let edges = [
            sorted_edge(&face[0], &face[1]),
            sorted_edge(&face[0], &face[2]),
            sorted_edge(&face[1], &face[2]),
        ];
        // Order 2: count edges folded onto themselves by an even pairing.
        let folded = edges
            .iter()
            .filter(|e| {
                self.symbol
                    .labels()
                    .iter()
                    .enumerate()
                    .any(|(i, l)| *l == IntervalLabel::Even && Self::maps_edge_to_itself(&self.mats[i], e))
            })
            .count();
        match folded {
            1 => return TriangleType::IIIa,
            2 => return TriangleType::IIIb,
            3 => return TriangleType::IIIc,
            _ => {}
        }
        // Two edges of the same triangle identified with each other.
        for i in 0..3 {
            for j in (i + 1)..3 {
                if self.edges_equivalent(&edges[i], &edges[j]) {
                    return TriangleType::II;
                }
            }
        }
        TriangleType::I
    }
}

const MAX_TILE_FACES: usize = 100_000;

/// Build the decorated tile of the `1/d`-scaled tessellation inside the
/// Γ₀(n) fundamental polygon (requires `d | n`).
pub fn decorated_tile(n: u64, d: u64) -> Result<DecoratedTile> {
    let tiler = Tiler::new(n, d)?;
    let seed = sorted_face([
        Rational::zero(),
        Rational::new(BigInt::one(), BigInt::from(d))?,
        Rational::infinity(),
    ]);
    let mut visited: HashSet<[Rational; 3]> = HashSet::new();
    let mut queue: VecDeque<[Rational; 3]> = VecDeque::new();
    let mut edges: BTreeSet<(Rational, Rational)> = BTreeSet::new();
    visited.insert(seed.clone());
    queue.push_back(seed);
    while let Some(face) = queue.pop_front() {
        if visited.len() > MAX_TILE_FACES {
            return Err(Error::WalkStuck);
        }
        let face_edges = [
            (face[0].clone(), face[1].clone(), face[2].clone()),
            (face[0].clone(), face[2].clone(), face[1].clone()),
            (face[1].clone(), face[2].clone(), face[0].clone()),
        ];
        for (a, b, opposite) in face_edges {
            if !tiler.edge_included(&a, &b)? {
                continue;
            }
            edges.insert(sorted_edge(&a, &b));
            if !tiler.edge_expandable(&a, &b) {
                continue;
            }
            let (med, sub) = farey::scaled_triangle_apexes(&a, &b, d)?;
            let apex = if med == opposite { sub } else { med };
            let neighbor = sorted_face([a.clone(), b.clone(), apex]);
            if visited.insert(neighbor.clone()) {
                queue.push_back(neighbor);
            }
        }
    }
    let mut faces: Vec<[Rational; 3]> = visited.into_iter().collect();
    faces.sort();
    let faces = faces
        .into_iter()
        .map(|f| {
            let kind = tiler.classify_face(&f);
            TileFace { vertices: f, kind }
        })
        .collect();
    Ok(DecoratedTile {
        n,
        d,
        symbol: tiler.symbol,
        edges: edges.into_iter().collect(),
        faces,
    })
}
