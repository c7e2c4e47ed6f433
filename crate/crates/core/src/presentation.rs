//! Free-group presentations `G(B, +)` of path cycles and triangulations,
//! word evaluation, and path homotopy systems.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::cycles::{extract_cycle, validate_cycle, BfsTree, PathCycle};
use crate::error::{Error, Result};
use crate::geometry::VertexId;
use crate::nerve::maximal_nucleus_complex;
use crate::triangulation::Triangulation;

/// One summand `k·g` of a relation word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub coeff: i64,
    pub generator: VertexId,
}

impl Term {
    pub fn new(coeff: i64, generator: VertexId) -> Self {
        Term { coeff, generator }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.coeff, self.generator)
    }
}

pub type Word = Vec<Term>;

/// A vertex set with its 1-skeleton and the vertex triples of its 2-cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubComplex {
    pub adjacency: BTreeMap<VertexId, BTreeSet<VertexId>>,
    pub triangles: Vec<[VertexId; 3]>,
}

impl SubComplex {
    pub fn full(t: &Triangulation) -> Self {
        SubComplex {
            adjacency: t.skeleton(),
            triangles: t.faces(),
        }
    }

    /// Closed star of `v`: its incident triangles with their edges and
    /// vertices.
    pub fn star(t: &Triangulation, v: VertexId) -> Result<Self> {
        let inc = t.incidence(v)?;
        let triangles: Vec<[VertexId; 3]> = inc
            .triangles
            .iter()
            .map(|&i| t.triangles()[i].vertices())
            .collect();
        let mut adjacency: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
        adjacency.entry(v).or_default();
        for e in &inc.edges {
            adjacency.entry(e.lo()).or_default().insert(e.hi());
            adjacency.entry(e.hi()).or_default().insert(e.lo());
        }
        for f in &triangles {
            for k in 0..3 {
                let (a, b) = (f[k], f[(k + 1) % 3]);
                adjacency.entry(a).or_default().insert(b);
                adjacency.entry(b).or_default().insert(a);
            }
        }
        Ok(SubComplex {
            adjacency,
            triangles,
        })
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency.keys().copied()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adjacency.contains_key(&v)
    }

    /// Whether every vertex, edge and triangle of `self` is in `other`.
    pub fn is_within(&self, other: &SubComplex) -> bool {
        let edges_in = self.adjacency.iter().all(|(v, ns)| {
            other
                .adjacency
                .get(v)
                .is_some_and(|theirs| ns.is_subset(theirs))
        });
        let tris: BTreeSet<[VertexId; 3]> = other.triangles.iter().map(|f| sorted(*f)).collect();
        edges_in && self.triangles.iter().all(|f| tris.contains(&sorted(*f)))
    }
}

fn sorted(mut f: [VertexId; 3]) -> [VertexId; 3] {
    f.sort_unstable();
    f
}

#[derive(Clone, Debug, PartialEq)]
pub enum Carrier {
    Cycle(PathCycle),
    Complex(SubComplex),
}

impl Carrier {
    pub fn vertices(&self) -> Vec<VertexId> {
        match self {
            Carrier::Cycle(c) => c.vertices(),
            Carrier::Complex(s) => s.vertices().collect(),
        }
    }
}

/// Basis `B`, one relation word per carrier vertex, and the carrier the
/// words are evaluated on.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    basis: Vec<VertexId>,
    relations: BTreeMap<VertexId, Word>,
    carrier: Carrier,
    witnesses: BTreeMap<VertexId, BfsTree>,
}

impl Presentation {
    pub fn basis(&self) -> &[VertexId] {
        &self.basis
    }

    pub fn generator(&self) -> VertexId {
        self.basis[0]
    }

    pub fn relations(&self) -> &BTreeMap<VertexId, Word> {
        &self.relations
    }

    pub fn relation(&self, v: VertexId) -> Option<&Word> {
        self.relations.get(&v)
    }

    /// Replaces the relation of `v`; evaluation is not re-checked here.
    pub fn set_relation(&mut self, v: VertexId, word: Word) {
        self.relations.insert(v, word);
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    /// Evaluates `word`. On a cycle the word starts at its first
    /// generator and walks the summed coefficients. On a complex it
    /// replays that many steps of the breadth-first witness from the
    /// generator toward `toward`.
    pub fn evaluate_word(&self, word: &[Term], toward: Option<VertexId>) -> Result<VertexId> {
        for term in word {
            if !self.basis.contains(&term.generator) {
                return Err(Error::ForeignGenerator(term.generator));
            }
        }
        let Some(first) = word.first() else {
            return Ok(self.generator());
        };
        let steps: i64 = word.iter().map(|t| t.coeff).sum();
        match &self.carrier {
            Carrier::Cycle(c) => {
                let i = c
                    .position(first.generator)
                    .ok_or(Error::ForeignGenerator(first.generator))?;
                Ok(c.walk(i, steps))
            }
            Carrier::Complex(_) => {
                let target = toward.ok_or(Error::MissingTarget)?;
                let route = self.witnesses[&first.generator]
                    .route(target)
                    .ok_or(Error::UnknownVertex(target))?;
                usize::try_from(steps)
                    .ok()
                    .and_then(|s| route.get(s).copied())
                    .ok_or(Error::StepsExceedWitness {
                        steps,
                        len: route.len() - 1,
                        target,
                    })
            }
        }
    }

    /// Evaluates the relation keyed by `v` toward `v`.
    pub fn evaluate_relation(&self, v: VertexId) -> Result<VertexId> {
        let word = self.relations.get(&v).ok_or(Error::UnknownVertex(v))?;
        self.evaluate_word(word, Some(v))
    }

    /// Every relation evaluates to its key.
    pub fn check(&self) -> Result<()> {
        for v in self.relations.keys() {
            let got = self.evaluate_relation(*v)?;
            if got != *v {
                return Err(Error::RelationMismatch { vertex: *v, got });
            }
        }
        Ok(())
    }
}

/// `v_{(g+k) mod n} = k·g` for `0 <= k < n`.
pub fn present_cycle(c: &PathCycle, g_index: usize) -> Result<Presentation> {
    let n = c.len();
    if g_index >= n {
        return Err(Error::IndexOutOfRange {
            index: g_index,
            len: n,
        });
    }
    let g = c.vertex(g_index);
    let relations = (0..n)
        .map(|k| (c.walk(g_index, k as i64), vec![Term::new(k as i64, g)]))
        .collect();
    Ok(Presentation {
        basis: vec![g],
        relations,
        carrier: Carrier::Cycle(c.clone()),
        witnesses: BTreeMap::new(),
    })
}

/// `v = k·g` with `k` the breadth-first edge distance from `g`.
pub fn present_triangulation(t: &Triangulation, g: VertexId) -> Result<Presentation> {
    if !t.contains_vertex(g) {
        return Err(Error::UnknownVertex(g));
    }
    present_subcomplex(SubComplex::full(t), g)
}

pub fn present_subcomplex(sub: SubComplex, g: VertexId) -> Result<Presentation> {
    if !sub.contains(g) {
        return Err(Error::UnknownVertex(g));
    }
    let tree = BfsTree::new(&sub.adjacency, g);
    let mut relations = BTreeMap::new();
    for v in sub.vertices() {
        let k = tree
            .depth(v)
            .ok_or_else(|| Error::InvalidComplex(format!("{v} is unreachable from {g}")))?;
        relations.insert(v, vec![Term::new(k as i64, g)]);
    }
    Ok(Presentation {
        basis: vec![g],
        relations,
        carrier: Carrier::Complex(sub),
        witnesses: BTreeMap::from([(g, tree)]),
    })
}

/// The full presentation, generated by the maximal nucleus, plus one
/// presentation per vertex star.
#[derive(Clone, Debug, PartialEq)]
pub struct HomotopySystem {
    complex: Triangulation,
    full: Presentation,
    stars: Vec<Presentation>,
}

impl HomotopySystem {
    pub fn complex(&self) -> &Triangulation {
        &self.complex
    }

    pub fn full(&self) -> &Presentation {
        &self.full
    }

    pub fn full_mut(&mut self) -> &mut Presentation {
        &mut self.full
    }

    pub fn stars(&self) -> &[Presentation] {
        &self.stars
    }

    pub fn stars_mut(&mut self) -> &mut [Presentation] {
        &mut self.stars
    }

    /// Number of presentations, the full one included.
    pub fn len(&self) -> usize {
        1 + self.stars.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Every star carrier lies inside the full carrier.
    pub fn carriers_nested(&self) -> bool {
        let Carrier::Complex(full) = &self.full.carrier else {
            return false;
        };
        self.stars.iter().all(|p| match &p.carrier {
            Carrier::Complex(s) => s.is_within(full),
            Carrier::Cycle(_) => false,
        })
    }
}

pub fn build_homotopy_system(t: &Triangulation) -> Result<HomotopySystem> {
    let nucleus = maximal_nucleus_complex(t).nucleus;
    let full = present_triangulation(t, nucleus)?;
    let stars = t
        .vertex_ids()
        .map(|v| present_subcomplex(SubComplex::star(t, v)?, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(HomotopySystem {
        complex: t.clone(),
        full,
        stars,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarrierRealization {
    pub generator: VertexId,
    pub vertices_hit: usize,
    pub cycles_recovered: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub full: CarrierRealization,
    pub stars: Vec<CarrierRealization>,
}

/// Re-derives every carrier's vertex set by evaluating its relations and
/// rebuilds each triangle boundary as a validated 1-cycle.
pub fn realize_system(s: &HomotopySystem) -> Result<Realization> {
    let realize = |p: &Presentation| -> Result<CarrierRealization> {
        p.check()?;
        let hit: BTreeSet<VertexId> = p
            .relations
            .keys()
            .map(|v| p.evaluate_relation(*v))
            .collect::<Result<_>>()?;
        let triangles = match &p.carrier {
            Carrier::Complex(sub) => sub.triangles.clone(),
            Carrier::Cycle(_) => Vec::new(),
        };
        let mut cycles_recovered = 0;
        for f in triangles {
            if let Some(v) = f.iter().find(|v| !hit.contains(v)) {
                return Err(Error::UnknownVertex(*v));
            }
            validate_cycle(&extract_cycle(&s.complex, &f)?)?;
            cycles_recovered += 1;
        }
        Ok(CarrierRealization {
            generator: p.generator(),
            vertices_hit: hit.len(),
            cycles_recovered,
        })
    };
    Ok(Realization {
        full: realize(&s.full)?,
        stars: s.stars.iter().map(realize).collect::<Result<_>>()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::boundary_cycle;
    use crate::fixtures;

    #[test]
    fn cycle_relations() {
        let t = fixtures::single_triangle();
        let c = boundary_cycle(&t.triangles()[0]);
        let p = present_cycle(&c, 0).unwrap();
        let g = c.vertex(0);
        assert_eq!(p.basis(), &[g]);
        for k in 0..3 {
            assert_eq!(p.relation(c.vertex(k)), Some(&vec![Term::new(k as i64, g)]));
        }
        p.check().unwrap();
        let two = [Term::new(1, g), Term::new(1, g)];
        assert_eq!(p.evaluate_word(&two, None), Ok(c.vertex(2)));
        assert_eq!(p.evaluate_word(&[], None), Ok(g));
        assert_eq!(
            p.evaluate_word(&[Term::new(1, VertexId(99))], None),
            Err(Error::ForeignGenerator(VertexId(99)))
        );
        assert_eq!(
            present_cycle(&c, 3).unwrap_err(),
            Error::IndexOutOfRange { index: 3, len: 3 }
        );
    }

    #[test]
    fn single_triangle_distances() {
        let t = fixtures::single_triangle();
        let p = present_triangulation(&t, VertexId(0)).unwrap();
        let coeffs: Vec<i64> = p.relations().values().map(|w| w[0].coeff).collect();
        assert_eq!(coeffs, vec![0, 1, 1]);
        p.check().unwrap();
        assert_eq!(
            p.evaluate_word(&[Term::new(1, VertexId(0))], None),
            Err(Error::MissingTarget)
        );
        assert_eq!(
            p.evaluate_word(&[Term::new(2, VertexId(0))], Some(VertexId(1))),
            Err(Error::StepsExceedWitness {
                steps: 2,
                len: 1,
                target: VertexId(1)
            })
        );
        assert_eq!(
            present_triangulation(&t, VertexId(3)).unwrap_err(),
            Error::UnknownVertex(VertexId(3))
        );
    }

    #[test]
    fn fish_is_generated_by_its_nucleus() {
        let fish = fixtures::fish();
        let s = build_homotopy_system(&fish).unwrap();
        assert_eq!(s.full().basis(), &[fixtures::FISH_P]);
        assert_eq!(s.len(), 13);
        assert!(s.carriers_nested());
        let r = realize_system(&s).unwrap();
        assert_eq!(r.full.vertices_hit, 12);
        assert_eq!(r.full.cycles_recovered, 12);
    }

    #[test]
    fn system_counts() {
        let s = build_homotopy_system(&fixtures::single_triangle()).unwrap();
        assert_eq!(s.stars().len(), 3);
        let r = realize_system(&s).unwrap();
        assert_eq!((r.full.vertices_hit, r.full.cycles_recovered), (3, 1));
        let fan = build_homotopy_system(&fixtures::hexagon_fan()).unwrap();
        assert_eq!(fan.full().generator(), fixtures::FAN_CENTER);
        assert_eq!(fan.stars().len(), 7);
        assert!(fan.carriers_nested());
    }

    #[test]
    fn corrupted_coefficient_is_reported() {
        let mut s = build_homotopy_system(&fixtures::hexagon_fan()).unwrap();
        let g = s.full().generator();
        s.full_mut()
            .set_relation(VertexId(0), vec![Term::new(0, g)]);
        assert_eq!(
            realize_system(&s),
            Err(Error::RelationMismatch {
                vertex: VertexId(0),
                got: g
            })
        );
    }
}
