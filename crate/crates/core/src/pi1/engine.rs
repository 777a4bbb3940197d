use serde::Serialize;

use crate::scalar::Scalar;
use crate::surface::MetricSurface;

use super::basis::{tree_cotree, SurfaceKind, TreeCotree};
use super::cover::{double_cover, DoubleCover};
use super::loops::EdgeLoop;
use super::word::{DehnReducer, Word};
use super::Pi1Error;

/// Why a loop is (or is not) contractible.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Certificate {
    /// Fully reduced word: empty iff trivial.
    ReducedWord(Word),
    /// Integral homology class on the torus.
    HomologyClass(Vec<i64>),
    /// The loop reverses orientation, so its lift to the orientable double
    /// cover does not close.
    OrientationReversing,
    /// Decided on the orientable double cover.
    Lifted(Box<Certificate>),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Contractibility {
    pub contractible: bool,
    pub certificate: Certificate,
}

#[derive(Clone, Debug)]
enum Reducer {
    Free,
    Trivial,
    Abelian(usize),
    Dehn(DehnReducer),
}

impl Reducer {
    fn shorten(&self, w: &mut Word) {
        match self {
            Reducer::Free => w.free_reduce(),
            Reducer::Trivial => w.0.clear(),
            Reducer::Abelian(n) => *w = abelian_normal_form(&w.exponent_sums(*n)),
            Reducer::Dehn(d) => d.reduce(w),
        }
    }

    fn decide(&self, w: &Word) -> (bool, Certificate) {
        match self {
            Reducer::Free => {
                let mut r = w.clone();
                r.cyclic_reduce();
                (r.is_empty(), Certificate::ReducedWord(r))
            }
            Reducer::Trivial => (true, Certificate::ReducedWord(Word::empty())),
            Reducer::Abelian(n) => {
                let h = w.exponent_sums(*n);
                (h.iter().all(|&x| x == 0), Certificate::HomologyClass(h))
            }
            Reducer::Dehn(d) => {
                let r = d.reduce_cyclic(w);
                (r.is_empty(), Certificate::ReducedWord(r))
            }
        }
    }
}

fn abelian_normal_form(sums: &[i64]) -> Word {
    let mut letters = Vec::new();
    for (k, &s) in sums.iter().enumerate() {
        let l = (k + 1) as i32;
        for _ in 0..s.unsigned_abs() {
            letters.push(if s > 0 { l } else { -l });
        }
    }
    Word(letters)
}

/// Words for one surface whose group is decided directly (free, sphere,
/// torus or hyperbolic orientable).
#[derive(Clone, Debug)]
struct WordEngine {
    basis: TreeCotree,
    reducer: Reducer,
    edge_words: Vec<Word>,
    ends: Vec<(usize, usize)>,
}

impl WordEngine {
    fn new<T: Scalar>(surface: &MetricSurface<T>) -> Result<Self, Pi1Error> {
        let basis = tree_cotree(surface);
        let reducer = match basis.presentation.kind {
            SurfaceKind::Free => Reducer::Free,
            SurfaceKind::Sphere => Reducer::Trivial,
            SurfaceKind::Torus => Reducer::Abelian(2),
            SurfaceKind::HyperbolicOrientable => {
                let r = basis
                    .presentation
                    .relator
                    .as_ref()
                    .expect("closed surface relator");
                Reducer::Dehn(
                    DehnReducer::new(r).map_err(|e| Pi1Error::SmallCancellation(e.to_string()))?,
                )
            }
            SurfaceKind::NonOrientable => Reducer::Free,
        };
        let edge_words = basis
            .edge_words
            .iter()
            .map(|w| {
                let mut w = w.clone();
                reducer.shorten(&mut w);
                w
            })
            .collect();
        let ends = surface.edges().iter().map(|e| (e.tail, e.head)).collect();
        Ok(WordEngine {
            basis,
            reducer,
            edge_words,
            ends,
        })
    }

    fn head(&self, (e, fwd): (usize, bool)) -> usize {
        let (t, h) = self.ends[e];
        if fwd {
            h
        } else {
            t
        }
    }

    fn step_word(&self, (e, fwd): (usize, bool)) -> Word {
        if fwd {
            self.edge_words[e].clone()
        } else {
            self.edge_words[e].inverse()
        }
    }
}

/// State of a walk from a fixed base vertex: where it currently is (in the
/// surface where words are read) and its reduced word.
#[derive(Clone, Debug, PartialEq)]
pub struct PathState {
    pub vertex: usize,
    pub word: Word,
}

/// Exact contractibility oracle for edge loops on one surface.
///
/// Surfaces with boundary use free reduction, the torus uses homology,
/// closed orientable surfaces of higher genus use Dehn's algorithm on the
/// one-vertex relator, and closed non-orientable surfaces are decided on
/// their orientable double cover.
#[derive(Clone, Debug)]
pub struct Pi1Engine<T> {
    base: WordEngine,
    lifted: Option<(Box<DoubleCover<T>>, WordEngine)>,
    kind: SurfaceKind,
}

impl<T: Scalar> Pi1Engine<T> {
    pub fn new(surface: &MetricSurface<T>) -> Result<Self, Pi1Error> {
        let base = WordEngine::new(surface)?;
        let kind = base.basis.presentation.kind;
        let lifted = if kind == SurfaceKind::NonOrientable {
            let dc = double_cover(surface)?;
            let inner = WordEngine::new(&dc.cover)?;
            Some((Box::new(dc), inner))
        } else {
            None
        };
        Ok(Pi1Engine { base, lifted, kind })
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn basis(&self) -> &TreeCotree {
        &self.base.basis
    }

    pub fn double_cover(&self) -> Option<&DoubleCover<T>> {
        self.lifted.as_ref().map(|(dc, _)| dc.as_ref())
    }

    /// `true` when the fundamental group is trivial.
    pub fn simply_connected(&self) -> bool {
        self.base.basis.generators.is_empty()
    }

    pub fn start(&self, vertex: usize) -> PathState {
        match &self.lifted {
            None => PathState {
                vertex,
                word: Word::empty(),
            },
            Some((dc, _)) => PathState {
                vertex: dc.vertex_lift[vertex],
                word: Word::empty(),
            },
        }
    }

    pub fn step(&self, state: &PathState, step: (usize, bool)) -> PathState {
        let (vertex, w, reducer) = match &self.lifted {
            None => {
                let e = &self.base;
                (e.head(step), e.step_word(step), &e.reducer)
            }
            Some((dc, inner)) => {
                let c = dc.lift_step(state.vertex, step);
                (inner.head(c), inner.step_word(c), &inner.reducer)
            }
        };
        let mut word = state.word.clone();
        word.push_word(&w);
        reducer.shorten(&mut word);
        PathState { vertex, word }
    }

    /// Decides whether `a · b⁻¹` is contractible, where `a` and `b` are walks
    /// from the same base vertex ending at the same base vertex.
    pub fn decide_pair(&self, a: &PathState, b: &PathState) -> Contractibility {
        let mut w = a.word.clone();
        w.push_inverse(&b.word);
        match &self.lifted {
            None => {
                let (c, cert) = self.base.reducer.decide(&w);
                Contractibility {
                    contractible: c,
                    certificate: cert,
                }
            }
            Some((_, inner)) => {
                if a.vertex != b.vertex {
                    return Contractibility {
                        contractible: false,
                        certificate: Certificate::OrientationReversing,
                    };
                }
                let (c, cert) = inner.reducer.decide(&w);
                Contractibility {
                    contractible: c,
                    certificate: Certificate::Lifted(Box::new(cert)),
                }
            }
        }
    }

    /// Exact contractibility of a closed edge loop.
    pub fn is_contractible(
        &self,
        surface: &MetricSurface<T>,
        lp: &EdgeLoop<T>,
    ) -> Result<Contractibility, Pi1Error> {
        self.check_loop(surface, lp)?;
        let Some(v) = lp.base(surface) else {
            return Ok(Contractibility {
                contractible: true,
                certificate: Certificate::ReducedWord(Word::empty()),
            });
        };
        let start = self.start(v);
        let mut st = start.clone();
        for &s in &lp.steps {
            st = self.step(&st, s);
        }
        Ok(self.decide_pair(&st, &start))
    }

    fn check_loop(&self, surface: &MetricSurface<T>, lp: &EdgeLoop<T>) -> Result<(), Pi1Error> {
        if surface.edge_count() != self.base.edge_words.len() {
            return Err(Pi1Error::LoopNotOnSurface(
                "engine built for another surface".into(),
            ));
        }
        EdgeLoop::new(surface, lp.steps.clone()).map(|_| ())
    }

    /// Freely reduced word of a loop in the base presentation's generators.
    pub fn loop_word(
        &self,
        surface: &MetricSurface<T>,
        lp: &EdgeLoop<T>,
    ) -> Result<Word, Pi1Error> {
        self.check_loop(surface, lp)?;
        Ok(loop_word_with(&self.base.basis, lp))
    }

    /// Exponent-sum vector of the loop's word.
    pub fn homology_class(
        &self,
        surface: &MetricSurface<T>,
        lp: &EdgeLoop<T>,
    ) -> Result<Vec<i64>, Pi1Error> {
        let n = self.base.basis.generators.len();
        Ok(self.loop_word(surface, lp)?.exponent_sums(n))
    }

    /// Integral first homology class vanishes.
    pub fn null_homologous(
        &self,
        surface: &MetricSurface<T>,
        lp: &EdgeLoop<T>,
    ) -> Result<bool, Pi1Error> {
        let h = self.homology_class(surface, lp)?;
        let n = h.len();
        let rel = self
            .base
            .basis
            .presentation
            .relator
            .as_ref()
            .map(|r| r.exponent_sums(n))
            .unwrap_or_else(|| vec![0; n]);
        // h must be an integer multiple of the relator's exponent vector.
        let pivot = rel.iter().position(|&x| x != 0);
        Ok(match pivot {
            None => h.iter().all(|&x| x == 0),
            Some(p) => {
                if h[p] % rel[p] != 0 {
                    false
                } else {
                    let t = h[p] / rel[p];
                    h.iter().zip(&rel).all(|(&a, &b)| a == t * b)
                }
            }
        })
    }

    /// Mod-2 homology class vanishes.
    pub fn null_homologous_mod2(
        &self,
        surface: &MetricSurface<T>,
        lp: &EdgeLoop<T>,
    ) -> Result<bool, Pi1Error> {
        Ok(self.homology_class(surface, lp)?.iter().all(|x| x % 2 == 0))
    }
}

/// Word of a loop in the generators of `basis`.
pub fn loop_word_with<T>(basis: &TreeCotree, lp: &EdgeLoop<T>) -> Word {
    let mut w = Word::empty();
    for &(e, fwd) in &lp.steps {
        if fwd {
            w.push_word(&basis.edge_words[e]);
        } else {
            w.push_inverse(&basis.edge_words[e]);
        }
    }
    w
}
