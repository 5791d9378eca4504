use std::collections::HashSet;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::frame::{Elem, Frame};

/// One query of a propositional container: it exists to the extent
/// `extent` and is answered to the extent `pred`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub label: String,
    pub extent: usize,
    pub pred: usize,
}

/// A propositional container over a frame.
///
/// Shapes carry an extent `E(a)`, the truth value at which the query `a`
/// exists, alongside the predicate `P(a)`. Shapes with `E(a) = ⊤` are
/// globally defined. Shapes are kept sorted by label.
#[derive(Clone, PartialEq, Eq)]
pub struct PropContainer {
    frame: Frame,
    shapes: Vec<Shape>,
}

impl fmt::Debug for PropContainer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .shapes
            .iter()
            .map(|s| {
                format!(
                    "{}: E={} P={}",
                    s.label,
                    self.frame.render_ix(s.extent),
                    self.frame.render_ix(s.pred)
                )
            })
            .collect();
        write!(f, "PropContainer[{}]", parts.join("; "))
    }
}

impl PropContainer {
    pub fn new<I, S>(frame: &Frame, shapes: I) -> Result<PropContainer>
    where
        I: IntoIterator<Item = (S, Elem, Elem)>,
        S: Into<String>,
    {
        let shapes = shapes
            .into_iter()
            .map(|(label, extent, pred)| {
                Ok(Shape {
                    label: label.into(),
                    extent: frame.index(extent)?,
                    pred: frame.index(pred)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        PropContainer::from_shapes(frame, shapes)
    }

    /// Globally defined container: every extent is `⊤`.
    pub fn global<I, S>(frame: &Frame, preds: I) -> Result<PropContainer>
    where
        I: IntoIterator<Item = (S, Elem)>,
        S: Into<String>,
    {
        let top = frame.top();
        PropContainer::new(frame, preds.into_iter().map(|(l, p)| (l, top, p)))
    }

    pub fn from_shapes(frame: &Frame, mut shapes: Vec<Shape>) -> Result<PropContainer> {
        let mut seen = HashSet::new();
        for s in &shapes {
            if s.extent >= frame.len() || s.pred >= frame.len() {
                return Err(Error::FrameMismatch);
            }
            if !seen.insert(s.label.clone()) {
                return Err(Error::DuplicateLabel(s.label.clone()));
            }
        }
        shapes.sort_by(|a, b| a.label.cmp(&b.label));
        Ok(PropContainer {
            frame: frame.clone(),
            shapes,
        })
    }

    pub fn empty(frame: &Frame) -> PropContainer {
        PropContainer {
            frame: frame.clone(),
            shapes: Vec::new(),
        }
    }

    /// A single global query with no answer: `P(a0) = ⊥`.
    pub fn counterexample(frame: &Frame) -> PropContainer {
        PropContainer::global(frame, [("a0", frame.bot())]).expect("own frame")
    }

    /// A single global query that is always answered: `P(a0) = ⊤`.
    pub fn realized(frame: &Frame) -> PropContainer {
        PropContainer::global(frame, [("a0", frame.top())]).expect("own frame")
    }

    /// The excluded-middle oracle: one global query per element `p`,
    /// answered by `p ∨ ¬p`.
    pub fn excluded_middle(frame: &Frame) -> PropContainer {
        let shapes = (0..frame.len())
            .map(|p| Shape {
                label: frame.render_ix(p),
                extent: frame.top_ix(),
                pred: frame.join_ix(p, frame.neg_ix(p)),
            })
            .collect();
        PropContainer::from_shapes(frame, shapes).expect("rendered labels are distinct")
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn shapes(&self) -> &[Shape] {
        &self.shapes
    }

    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    pub fn is_global(&self) -> bool {
        self.shapes.iter().all(|s| s.extent == self.frame.top_ix())
    }

    /// The container `P ∘ q` for a relabeling `q` given as, for each new
    /// shape, the index of the old shape it maps to.
    pub fn precompose(&self, q: &[usize]) -> Result<PropContainer> {
        let shapes = q
            .iter()
            .enumerate()
            .map(|(b, &a)| {
                let s = self
                    .shapes
                    .get(a)
                    .ok_or_else(|| Error::Format(format!("relabeling targets missing shape {a}")))?;
                Ok(Shape {
                    label: format!("b{b}"),
                    extent: s.extent,
                    pred: s.pred,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        PropContainer::from_shapes(&self.frame, shapes)
    }

    /// Uniformly random container with `1..=max_shapes` shapes and
    /// `P(a) <= E(a)`; about half the shapes are global.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, frame: &Frame, max_shapes: usize) -> PropContainer {
        let k = rng.random_range(1..=max_shapes.max(1));
        let n = frame.len();
        let shapes = (0..k)
            .map(|i| {
                let extent = if rng.random_bool(0.5) {
                    frame.top_ix()
                } else {
                    rng.random_range(0..n)
                };
                let below: Vec<usize> = (0..n).filter(|&p| frame.le_ix(p, extent)).collect();
                let pred = below[rng.random_range(0..below.len())];
                Shape {
                    label: format!("a{i}"),
                    extent,
                    pred,
                }
            })
            .collect();
        PropContainer::from_shapes(frame, shapes).expect("generated on this frame")
    }
}

/// `P(a) <= E(a)` for every shape.
pub fn validate_container(c: &PropContainer) -> bool {
    c.shapes.iter().all(|s| c.frame.le_ix(s.pred, s.extent))
}

/// Disjoint union; shape `x` of the `i`-th summand becomes `(i,x)`.
pub fn container_sum(frame: &Frame, cs: &[PropContainer]) -> Result<PropContainer> {
    let mut shapes = Vec::new();
    for (i, c) in cs.iter().enumerate() {
        if c.frame() != frame {
            return Err(Error::FrameMismatch);
        }
        shapes.extend(c.shapes.iter().map(|s| Shape {
            label: format!("({i},{})", s.label),
            extent: s.extent,
            pred: s.pred,
        }));
    }
    PropContainer::from_shapes(frame, shapes)
}

/// Every valid container with exactly `k` shapes `a0, a1, ...`.
pub fn all_containers(frame: &Frame, k: usize) -> Vec<PropContainer> {
    let n = frame.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|e| (0..n).filter(move |&p| frame.le_ix(p, e)).map(move |p| (e, p)))
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; k];
    loop {
        let shapes = choice
            .iter()
            .enumerate()
            .map(|(i, &c)| Shape {
                label: format!("a{i}"),
                extent: pairs[c].0,
                pred: pairs[c].1,
            })
            .collect();
        out.push(PropContainer::from_shapes(frame, shapes).expect("generated on this frame"));
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == k {
                return out;
            }
            choice[pos] += 1;
            if choice[pos] < pairs.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}
