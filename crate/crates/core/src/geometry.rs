//! Exact rational points and the segment predicates built on them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `num/den` in lowest terms, denominator positive.
pub fn rational_to_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n.trim()).map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
    let d = BigInt::from_str(d.trim()).map_err(|e| format!("bad denominator in {s:?}: {e}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(n, d))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point {
            x: rat(x),
            y: rat(y),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// How two closed segments meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegmentContact {
    Disjoint,
    /// Interiors meet in exactly one point.
    ProperCrossing(Point),
    /// The only common point is an endpoint of both segments.
    SharedEndpoint,
    /// A single common point that is interior to at least one segment.
    Touch(Point),
    CollinearOverlap,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("degenerate segment of zero length at {0}")]
pub struct DegenerateSegment(pub Point);

/// Integer coordinates after scaling by a common denominator. The counter
/// runs on these so the hot loop never touches rationals.
pub(crate) trait Coord: Clone + Ord + Signed {}
impl Coord for i128 {}
impl Coord for BigInt {}

pub(crate) type IPoint<T> = [T; 2];

fn cross<T: Coord>(o: &IPoint<T>, a: &IPoint<T>, b: &IPoint<T>) -> T {
    (a[0].clone() - o[0].clone()) * (b[1].clone() - o[1].clone())
        - (a[1].clone() - o[1].clone()) * (b[0].clone() - o[0].clone())
}

fn sgn<T: Coord>(v: &T) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn between<T: Coord>(a: &T, b: &T, c: &T) -> bool {
    (a <= c && c <= b) || (b <= c && c <= a)
}

/// `p` is on segment `ab`, given that the three are collinear.
fn on_segment<T: Coord>(a: &IPoint<T>, b: &IPoint<T>, p: &IPoint<T>) -> bool {
    between(&a[0], &b[0], &p[0]) && between(&a[1], &b[1], &p[1])
}

/// Result of the integer classifier. Crossing and touch points are returned
/// as homogeneous `(x, y, w)` with `w > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum IContact<T> {
    Disjoint,
    Proper(T, T, T),
    Shared,
    Touch(T, T, T),
    Overlap,
}

pub(crate) fn classify<T: Coord>(
    p1: &IPoint<T>,
    p2: &IPoint<T>,
    q1: &IPoint<T>,
    q2: &IPoint<T>,
) -> IContact<T> {
    let d1 = sgn(&cross(q1, q2, p1));
    let d2 = sgn(&cross(q1, q2, p2));
    let d3 = sgn(&cross(p1, p2, q1));
    let d4 = sgn(&cross(p1, p2, q2));
    let one = T::one();
    let at = |p: &IPoint<T>| IContact::Touch(p[0].clone(), p[1].clone(), one.clone());
    let is_end = |p: &IPoint<T>, a: &IPoint<T>, b: &IPoint<T>| p == a || p == b;

    if d1 == 0 && d2 == 0 {
        // Collinear: project onto the dominant axis.
        let ax = if p1[0] != p2[0] { 0 } else { 1 };
        let (a0, a1) = if p1[ax] <= p2[ax] {
            (&p1[ax], &p2[ax])
        } else {
            (&p2[ax], &p1[ax])
        };
        let (b0, b1) = if q1[ax] <= q2[ax] {
            (&q1[ax], &q2[ax])
        } else {
            (&q2[ax], &q1[ax])
        };
        let lo = a0.max(b0);
        let hi = a1.min(b1);
        return match lo.cmp(hi) {
            std::cmp::Ordering::Greater => IContact::Disjoint,
            std::cmp::Ordering::Less => IContact::Overlap,
            std::cmp::Ordering::Equal => IContact::Shared,
        };
    }
    if d1 * d2 < 0 && d3 * d4 < 0 {
        let den = cross(&[T::zero(), T::zero()], &sub(p2, p1), &sub(q2, q1));
        let num = cross(&[T::zero(), T::zero()], &sub(q1, p1), &sub(q2, q1));
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num, den)
        };
        let x = p1[0].clone() * den.clone() + num.clone() * (p2[0].clone() - p1[0].clone());
        let y = p1[1].clone() * den.clone() + num * (p2[1].clone() - p1[1].clone());
        return IContact::Proper(x, y, den);
    }
    let mut contact: Option<&IPoint<T>> = None;
    if d1 == 0 && on_segment(q1, q2, p1) {
        contact = Some(p1);
    } else if d2 == 0 && on_segment(q1, q2, p2) {
        contact = Some(p2);
    } else if d3 == 0 && on_segment(p1, p2, q1) {
        contact = Some(q1);
    } else if d4 == 0 && on_segment(p1, p2, q2) {
        contact = Some(q2);
    }
    match contact {
        None => IContact::Disjoint,
        Some(c) if is_end(c, p1, p2) && is_end(c, q1, q2) => IContact::Shared,
        Some(c) => at(c),
    }
}

fn sub<T: Coord>(a: &IPoint<T>, b: &IPoint<T>) -> IPoint<T> {
    [a[0].clone() - b[0].clone(), a[1].clone() - b[1].clone()]
}

/// Least common multiple of all denominators.
pub(crate) fn common_denominator<'a>(points: impl Iterator<Item = &'a Point>) -> BigInt {
    let mut l = BigInt::one();
    for p in points {
        l = l.lcm(p.x.denom());
        l = l.lcm(p.y.denom());
    }
    l
}

pub(crate) fn scale(p: &Point, l: &BigInt) -> IPoint<BigInt> {
    [
        p.x.numer() * (l / p.x.denom()),
        p.y.numer() * (l / p.y.denom()),
    ]
}

pub(crate) fn unscale<T: Coord + Into<BigInt>>(x: T, y: T, w: T, l: &BigInt) -> Point {
    let w: BigInt = w.into() * l;
    Point::new(
        Rational::new(x.into(), w.clone()),
        Rational::new(y.into(), w),
    )
}

/// Exact classification of how segments `a1a2` and `b1b2` meet.
#[allow(clippy::result_large_err)]
pub fn segment_intersection(
    a1: &Point,
    a2: &Point,
    b1: &Point,
    b2: &Point,
) -> Result<SegmentContact, DegenerateSegment> {
    if a1 == a2 {
        return Err(DegenerateSegment(a1.clone()));
    }
    if b1 == b2 {
        return Err(DegenerateSegment(b1.clone()));
    }
    let l = common_denominator([a1, a2, b1, b2].into_iter());
    let [p1, p2, q1, q2] = [a1, a2, b1, b2].map(|p| scale(p, &l));
    Ok(match classify(&p1, &p2, &q1, &q2) {
        IContact::Disjoint => SegmentContact::Disjoint,
        IContact::Proper(x, y, w) => SegmentContact::ProperCrossing(unscale(x, y, w, &l)),
        IContact::Shared => SegmentContact::SharedEndpoint,
        IContact::Touch(x, y, w) => SegmentContact::Touch(unscale(x, y, w, &l)),
        IContact::Overlap => SegmentContact::CollinearOverlap,
    })
}
