use std::f64::consts::PI;

use crate::error::{Error, Result};

use super::point::{Point2, VertexId, EPS};

/// A path `h: [0,1] -> plane` discretized at uniform parameter spacing:
/// `samples[j]` is `h(j / (S-1))`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledPath {
    start: VertexId,
    end: VertexId,
    samples: Vec<Point2>,
}

impl SampledPath {
    /// Wraps an existing sample sequence after checking the intrinsic
    /// invariants. Use [`SampledPath::check_in`] to check it against a
    /// vertex table.
    pub fn from_samples(start: VertexId, end: VertexId, samples: Vec<Point2>) -> Result<Self> {
        if start == end {
            return Err(Error::SelfLoop(start));
        }
        if samples.len() < 2 {
            return Err(Error::TooFewSamples(samples.len()));
        }
        for p in &samples {
            p.check_finite()?;
        }
        for w in samples.windows(2) {
            if w[0].coincides(w[1]) {
                return Err(Error::CoincidentSamples {
                    x: w[1].x,
                    y: w[1].y,
                });
            }
        }
        Ok(SampledPath {
            start,
            end,
            samples,
        })
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self) -> VertexId {
        self.end
    }

    pub fn samples(&self) -> &[Point2] {
        &self.samples
    }

    pub fn sample_count(&self) -> usize {
        self.samples.len()
    }

    /// `h(0)`.
    pub fn first(&self) -> Point2 {
        self.samples[0]
    }

    /// `h(1)`.
    pub fn last(&self) -> Point2 {
        self.samples[self.samples.len() - 1]
    }

    /// Samples with `t` in the open interval (0, 1).
    pub fn interior_samples(&self) -> &[Point2] {
        &self.samples[1..self.samples.len() - 1]
    }

    pub fn param(&self, j: usize) -> f64 {
        j as f64 / (self.samples.len() - 1) as f64
    }

    pub fn length(&self) -> f64 {
        self.samples.windows(2).map(|w| w[0].dist(w[1])).sum()
    }

    /// The reverse path `t -> h(1 - t)`.
    pub fn reversed(&self) -> SampledPath {
        let mut samples = self.samples.clone();
        samples.reverse();
        SampledPath {
            start: self.end,
            end: self.start,
            samples,
        }
    }

    /// Checks the endpoint and no-vertex-on-interior invariants against the
    /// ambient vertex table.
    pub fn check_in(&self, lookup: &VertexLookup) -> Result<()> {
        let table = lookup.points();
        let coords = |v: VertexId| table.get(v.0).copied().ok_or(Error::UnknownVertex(v));
        if !self.first().coincides(coords(self.start)?) || !self.last().coincides(coords(self.end)?)
        {
            return Err(Error::DetachedEndpoint {
                start: self.start,
                end: self.end,
            });
        }
        for p in self.interior_samples() {
            if let Some(vertex) = lookup.find(*p) {
                return Err(Error::SampleOnVertex {
                    start: self.start,
                    end: self.end,
                    vertex,
                });
            }
        }
        Ok(())
    }
}

/// Builds the path from vertex `a` to vertex `b` through `waypoints`,
/// resampled to `samples` points uniformly spaced in arc length.
pub fn make_path(
    vertices: &[Point2],
    a: VertexId,
    b: VertexId,
    waypoints: &[Point2],
    samples: usize,
) -> Result<SampledPath> {
    let lookup = VertexLookup::new(vertices);
    make_path_in(&lookup, a, b, waypoints, samples)
}

pub(crate) fn make_path_in(
    lookup: &VertexLookup,
    a: VertexId,
    b: VertexId,
    waypoints: &[Point2],
    samples: usize,
) -> Result<SampledPath> {
    if a == b {
        return Err(Error::SelfLoop(a));
    }
    if samples < 2 {
        return Err(Error::TooFewSamples(samples));
    }
    let pa = lookup.point(a)?;
    let pb = lookup.point(b)?;
    let mut polyline = Vec::with_capacity(waypoints.len() + 2);
    polyline.push(pa);
    polyline.extend_from_slice(waypoints);
    polyline.push(pb);
    let path = SampledPath::from_samples(a, b, resample_polyline(&polyline, samples)?)?;
    path.check_in(lookup)?;
    Ok(path)
}

/// Resamples a polyline to `count` points at uniform arc-length spacing.
/// The first and last points are kept exactly.
pub fn resample_polyline(polyline: &[Point2], count: usize) -> Result<Vec<Point2>> {
    if count < 2 {
        return Err(Error::TooFewSamples(count));
    }
    if polyline.len() < 2 {
        return Err(Error::TooFewSamples(polyline.len()));
    }
    for p in polyline {
        p.check_finite()?;
    }
    let mut cumulative = Vec::with_capacity(polyline.len());
    cumulative.push(0.0);
    for w in polyline.windows(2) {
        let d = w[0].dist(w[1]);
        if d <= EPS {
            return Err(Error::CoincidentSamples {
                x: w[1].x,
                y: w[1].y,
            });
        }
        cumulative.push(cumulative[cumulative.len() - 1] + d);
    }
    let total = cumulative[cumulative.len() - 1];
    let mut out = Vec::with_capacity(count);
    out.push(polyline[0]);
    let mut seg = 0;
    for j in 1..count - 1 {
        let target = total * j as f64 / (count - 1) as f64;
        while seg + 1 < polyline.len() - 1 && cumulative[seg + 1] < target {
            seg += 1;
        }
        let span = cumulative[seg + 1] - cumulative[seg];
        let t = ((target - cumulative[seg]) / span).clamp(0.0, 1.0);
        out.push(polyline[seg].lerp(polyline[seg + 1], t));
    }
    out.push(polyline[polyline.len() - 1]);
    Ok(out)
}

/// Circular arc from vertex `a` to vertex `b` about `center`, along the
/// minor arc, sampled at `samples` points of uniform angular spacing.
pub fn make_arc_path(
    vertices: &[Point2],
    a: VertexId,
    b: VertexId,
    center: Point2,
    samples: usize,
) -> Result<SampledPath> {
    if a == b {
        return Err(Error::SelfLoop(a));
    }
    if samples < 2 {
        return Err(Error::TooFewSamples(samples));
    }
    let lookup = VertexLookup::new(vertices);
    let pa = lookup.point(a)?;
    let pb = lookup.point(b)?;
    let radius = pa.dist(center);
    let sweep = minor_sweep(center, pa, pb)?;
    let start_angle = (pa.y - center.y).atan2(pa.x - center.x);
    let mut pts = Vec::with_capacity(samples);
    for j in 0..samples {
        if j == 0 {
            pts.push(pa);
        } else if j == samples - 1 {
            pts.push(pb);
        } else {
            let theta = start_angle + sweep * j as f64 / (samples - 1) as f64;
            pts.push(Point2::new(
                center.x + radius * theta.cos(),
                center.y + radius * theta.sin(),
            ));
        }
    }
    let path = SampledPath::from_samples(a, b, pts)?;
    path.check_in(&lookup)?;
    Ok(path)
}

/// Signed sweep angle of the minor arc from `a` to `b` about `center`.
/// Antipodal endpoints have no unique minor arc and are rejected.
pub fn minor_sweep(center: Point2, a: Point2, b: Point2) -> Result<f64> {
    let ta = (a.y - center.y).atan2(a.x - center.x);
    let tb = (b.y - center.y).atan2(b.x - center.x);
    let mut sweep = tb - ta;
    while sweep > PI {
        sweep -= 2.0 * PI;
    }
    while sweep <= -PI {
        sweep += 2.0 * PI;
    }
    let radius = a.dist(center);
    // the arc endpoints are antipodal when the chord is (nearly) a diameter
    if (a.dist(b) - 2.0 * radius).abs() <= EPS {
        return Err(Error::Degenerate("antipodal arc endpoints"));
    }
    Ok(sweep)
}

/// Geometric realization `|h|` of a path: a 1-cell with the same endpoints
/// and polyline.
#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    endpoints: (VertexId, VertexId),
    polyline: Vec<Point2>,
}

impl Edge {
    /// Endpoints in ascending id order.
    pub fn endpoints(&self) -> (VertexId, VertexId) {
        self.endpoints
    }

    pub fn polyline(&self) -> &[Point2] {
        &self.polyline
    }

    /// Points of `Int(|h|)`, i.e. the samples with `t` in (0, 1).
    pub fn interior(&self) -> &[Point2] {
        &self.polyline[1..self.polyline.len() - 1]
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.endpoints.0 == v || self.endpoints.1 == v
    }
}

pub fn realize_path(path: &SampledPath) -> Edge {
    let (a, b) = (path.start(), path.end());
    Edge {
        endpoints: if a < b { (a, b) } else { (b, a) },
        polyline: path.samples().to_vec(),
    }
}

/// `[h]`: paths sharing initial and final vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct PathClass {
    start: VertexId,
    end: VertexId,
    representatives: Vec<SampledPath>,
}

impl PathClass {
    pub fn new(representatives: Vec<SampledPath>) -> Result<Self> {
        let first = representatives.first().ok_or(Error::EmptyClass)?;
        let (start, end) = (first.start(), first.end());
        for rep in &representatives {
            if rep.start() != start {
                return Err(Error::EndpointMismatch {
                    expected: start,
                    found: rep.start(),
                });
            }
            if rep.end() != end {
                return Err(Error::EndpointMismatch {
                    expected: end,
                    found: rep.end(),
                });
            }
        }
        Ok(PathClass {
            start,
            end,
            representatives,
        })
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self) -> VertexId {
        self.end
    }

    pub fn representatives(&self) -> &[SampledPath] {
        &self.representatives
    }

    pub fn representative(&self, i: usize) -> Option<&SampledPath> {
        self.representatives.get(i)
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn reversed(&self) -> PathClass {
        PathClass {
            start: self.end,
            end: self.start,
            representatives: self.representatives.iter().map(|p| p.reversed()).collect(),
        }
    }
}

/// Vertex coordinates sorted by `x` for tolerance lookups.
#[derive(Clone, Debug)]
pub struct VertexLookup {
    points: Vec<Point2>,
    by_x: Vec<(f64, usize)>,
}

impl VertexLookup {
    pub fn new(points: &[Point2]) -> Self {
        let mut by_x: Vec<(f64, usize)> =
            points.iter().enumerate().map(|(i, p)| (p.x, i)).collect();
        by_x.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        VertexLookup {
            points: points.to_vec(),
            by_x,
        }
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn point(&self, v: VertexId) -> Result<Point2> {
        self.points.get(v.0).copied().ok_or(Error::UnknownVertex(v))
    }

    /// Smallest-id vertex within [`EPS`] of `p`.
    pub fn find(&self, p: Point2) -> Option<VertexId> {
        let lo = self.by_x.partition_point(|(x, _)| *x < p.x - EPS);
        self.by_x[lo..]
            .iter()
            .take_while(|(x, _)| *x <= p.x + EPS)
            .filter(|(_, i)| self.points[*i].coincides(p))
            .map(|(_, i)| VertexId(*i))
            .min()
    }
}
