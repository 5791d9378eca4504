//! JSON file formats.
//!
//! Frame elements are written as sorted label arrays; map keys that name
//! elements use the `{p,q}` rendering, and any form accepted by
//! [`Frame::parse_elem`] is read back.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::frame::{Frame, Poset, PosetSpec};
use crate::nucleus::Nucleus;
use crate::oracle::{PropContainer, Shape};
use crate::pca::weihrauch::{ExtWeihrauchPredicate, PartitionedAssemblyPredicate};
use crate::pca::{Signature, Term};
use crate::trees::{SetContainer, Tree};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

/// A poset given inline or as a path relative to the referring file.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum PosetRef {
    Path(PathBuf),
    Inline(PosetSpec),
}

impl PosetRef {
    pub fn resolve(&self, base: &Path) -> Result<Poset> {
        match self {
            PosetRef::Inline(spec) => Poset::from_spec(spec),
            PosetRef::Path(p) => load_poset(&base.join(p)),
        }
    }
}

fn parent(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new("."))
}

pub fn load_poset(path: &Path) -> Result<Poset> {
    Poset::from_spec(&read_json::<PosetSpec>(path)?)
}

/// Reuses `frame` when the referenced poset is the same, so that elements
/// from several files can be combined.
fn frame_for(r: &PosetRef, base: &Path, frame: Option<&Frame>) -> Result<Frame> {
    let poset = r.resolve(base)?;
    match frame {
        Some(f) if *f.poset() == poset => Ok(f.clone()),
        Some(_) => Err(Error::FrameMismatch),
        None => Frame::downsets(&poset),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ElemRepr {
    Labels(Vec<String>),
    Text(String),
}

impl ElemRepr {
    pub fn to_index(&self, frame: &Frame) -> Result<usize> {
        let e = match self {
            ElemRepr::Labels(ls) => frame.elem_of_labels(ls)?,
            ElemRepr::Text(t) => frame.parse_elem(t)?,
        };
        frame.index(e)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NucleusFile {
    pub frame: PosetRef,
    pub table: BTreeMap<String, ElemRepr>,
}

/// A possibly invalid table read from a nucleus file, as carrier indices.
pub fn load_table(path: &Path, frame: Option<&Frame>) -> Result<(Frame, Vec<usize>)> {
    let file: NucleusFile = read_json(path)?;
    let frame = frame_for(&file.frame, parent(path), frame)?;
    let mut table = vec![None; frame.len()];
    for (k, v) in &file.table {
        let x = frame.index(frame.parse_elem(k)?)?;
        table[x] = Some(v.to_index(&frame)?);
    }
    let got = table.iter().filter(|e| e.is_some()).count();
    let table = table
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::NotTotal {
            expected: frame.len(),
            got,
        })?;
    Ok((frame, table))
}

pub fn load_nucleus(path: &Path, frame: Option<&Frame>) -> Result<Nucleus> {
    let (frame, table) = load_table(path, frame)?;
    Nucleus::from_indices(&frame, table)
}

pub fn elem_json(frame: &Frame, ix: usize) -> Value {
    json!(frame.labels_ix(ix))
}

pub fn table_json(frame: &Frame, table: &[usize]) -> Value {
    let map: serde_json::Map<String, Value> = table
        .iter()
        .enumerate()
        .map(|(x, &y)| (frame.render_ix(x), elem_json(frame, y)))
        .collect();
    Value::Object(map)
}

/// The nucleus-file form of `j`, with the poset inlined.
pub fn nucleus_json(j: &Nucleus) -> Value {
    let spec = j.frame().poset().to_spec();
    json!({ "frame": spec, "table": table_json(j.frame(), j.table_ix()) })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ContainerFile {
    pub frame: PosetRef,
    pub shapes: Vec<String>,
    #[serde(default)]
    pub extent: BTreeMap<String, ElemRepr>,
    pub pred: BTreeMap<String, ElemRepr>,
}

pub fn load_container(path: &Path, frame: Option<&Frame>) -> Result<PropContainer> {
    let file: ContainerFile = read_json(path)?;
    let frame = frame_for(&file.frame, parent(path), frame)?;
    for key in file.extent.keys().chain(file.pred.keys()) {
        if !file.shapes.contains(key) {
            return Err(Error::UnknownLabel(key.clone()));
        }
    }
    let shapes = file
        .shapes
        .iter()
        .map(|a| {
            let extent = match file.extent.get(a) {
                Some(e) => e.to_index(&frame)?,
                None => frame.top_ix(),
            };
            let pred = file
                .pred
                .get(a)
                .ok_or_else(|| Error::Format(format!("shape `{a}` has no pred")))?
                .to_index(&frame)?;
            Ok(Shape {
                label: a.clone(),
                extent,
                pred,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    PropContainer::from_shapes(&frame, shapes)
}

pub fn container_json(c: &PropContainer) -> Value {
    let f = c.frame();
    let shapes: Vec<&str> = c.shapes().iter().map(|s| s.label.as_str()).collect();
    let extent: serde_json::Map<String, Value> =
        c.shapes().iter().map(|s| (s.label.clone(), elem_json(f, s.extent))).collect();
    let pred: serde_json::Map<String, Value> =
        c.shapes().iter().map(|s| (s.label.clone(), elem_json(f, s.pred))).collect();
    json!({ "frame": f.poset().to_spec(), "shapes": shapes, "extent": extent, "pred": pred })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SetContainerFile {
    pub shapes: Vec<String>,
    pub positions: BTreeMap<String, Vec<String>>,
}

pub fn load_set_container(path: &Path) -> Result<SetContainer> {
    let file: SetContainerFile = read_json(path)?;
    set_container_from(&file)
}

pub fn set_container_from(file: &SetContainerFile) -> Result<SetContainer> {
    for key in file.positions.keys() {
        if !file.shapes.contains(key) {
            return Err(Error::UnknownLabel(key.clone()));
        }
    }
    SetContainer::new(
        file.shapes
            .iter()
            .map(|a| (a.clone(), file.positions.get(a).cloned().unwrap_or_default())),
    )
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum TreeFile {
    Leaf { leaf: String },
    Node { node: String, children: BTreeMap<String, TreeFile> },
}

/// A tree with its value labels; value `i` of the tree is `values[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledTree {
    pub tree: Tree,
    pub values: Vec<String>,
}

pub fn tree_from(c: &SetContainer, file: &TreeFile) -> Result<LabelledTree> {
    fn collect(t: &TreeFile, out: &mut Vec<String>) {
        match t {
            TreeFile::Leaf { leaf } => out.push(leaf.clone()),
            TreeFile::Node { children, .. } => children.values().for_each(|k| collect(k, out)),
        }
    }
    fn build(c: &SetContainer, t: &TreeFile, values: &[String]) -> Result<Tree> {
        match t {
            TreeFile::Leaf { leaf } => Ok(Tree::Leaf(values.binary_search(leaf).expect("collected"))),
            TreeFile::Node { node, children } => {
                let a = c.shape_index(node).ok_or_else(|| Error::UnknownLabel(node.clone()))?;
                let ps = c.positions(a);
                if let Some(extra) = children.keys().find(|k| !ps.contains(k)) {
                    return Err(Error::InvalidTree(format!("`{extra}` is not a position of `{node}`")));
                }
                let kids = ps
                    .iter()
                    .map(|p| {
                        let k = children
                            .get(p)
                            .ok_or_else(|| Error::InvalidTree(format!("`{node}` has no child at `{p}`")))?;
                        build(c, k, values)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Tree::node(a, kids))
            }
        }
    }
    let mut values = Vec::new();
    collect(file, &mut values);
    values.sort();
    values.dedup();
    let tree = build(c, file, &values)?;
    Ok(LabelledTree { tree, values })
}

pub fn load_tree(path: &Path, c: &SetContainer) -> Result<LabelledTree> {
    tree_from(c, &read_json(path)?)
}

pub fn tree_json(c: &SetContainer, t: &Tree, values: &[String]) -> Value {
    match t {
        Tree::Leaf(v) => json!({ "leaf": values[*v] }),
        Tree::Node { shape, children } => {
            let kids: serde_json::Map<String, Value> = c
                .positions(*shape)
                .iter()
                .zip(children)
                .map(|(p, k)| (p.clone(), tree_json(c, k, values)))
                .collect();
            json!({ "node": c.shape(*shape), "children": kids })
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ConstantDecl {
    Atom(String),
    Rules {
        name: String,
        #[serde(default)]
        table: Vec<(String, String)>,
    },
}

/// `{"constants": ["p", {"name": "c", "table": [["u", "p"]]}],
/// "definitions": {"omega": "S I I (S I I)"}}`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SignatureFile {
    #[serde(default)]
    pub constants: Vec<ConstantDecl>,
    #[serde(default)]
    pub definitions: BTreeMap<String, String>,
}

/// Builds a signature on top of `I`. Definitions may refer to each other
/// in any order; rule keys are normalized within `fuel`.
pub fn signature_from(file: &SignatureFile, fuel: u64) -> Result<Signature> {
    let mut sig = Signature::standard();
    for c in &file.constants {
        match c {
            ConstantDecl::Atom(n) | ConstantDecl::Rules { name: n, .. } => sig.declare(n)?,
        }
    }
    let mut pending: Vec<(&String, &String)> = file.definitions.iter().collect();
    while let Some(&(name, src)) = pending.first() {
        let ready = pending.iter().position(|(_, src)| sig.parse(src).is_ok());
        match ready {
            Some(i) => {
                let (name, src) = pending.remove(i);
                sig.define(name, sig.parse(src)?)?;
            }
            None => {
                return Err(sig.parse(src).err().map_or_else(
                    || Error::Format(format!("definition `{name}` is unresolved")),
                    |e| Error::Format(format!("definition `{name}`: {e}")),
                ))
            }
        }
    }
    for c in &file.constants {
        if let ConstantDecl::Rules { name, table } = c {
            for (k, r) in table {
                let key = sig.parse(k)?;
                let key = sig
                    .eval(&key, fuel)
                    .value()
                    .cloned()
                    .ok_or_else(|| Error::Diverged(k.clone()))?;
                let result = sig.parse(r)?;
                sig.add_rule(name, key, result)?;
            }
        }
    }
    Ok(sig)
}

pub fn load_signature(path: &Path, fuel: u64) -> Result<Signature> {
    signature_from(&read_json(path)?, fuel)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PredicateEntry {
    pub instance: String,
    pub families: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PredicateFile {
    pub entries: Vec<PredicateEntry>,
}

pub fn predicate_from(sig: &Signature, fuel: u64, file: &PredicateFile) -> Result<ExtWeihrauchPredicate> {
    let entries = file
        .entries
        .iter()
        .map(|e| {
            Ok((
                sig.parse(&e.instance)?,
                e.families
                    .iter()
                    .map(|th| th.iter().map(|s| sig.parse(s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    ExtWeihrauchPredicate::new(sig, fuel, entries)
}

pub fn load_predicate(path: &Path, sig: &Signature, fuel: u64) -> Result<ExtWeihrauchPredicate> {
    predicate_from(sig, fuel, &read_json(path)?)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AssemblyFile {
    pub elements: Vec<String>,
    pub rho: BTreeMap<String, String>,
    #[serde(default)]
    pub pred: BTreeMap<String, Vec<String>>,
}

pub fn assembly_from(sig: &Signature, fuel: u64, file: &AssemblyFile) -> Result<PartitionedAssemblyPredicate> {
    for key in file.rho.keys().chain(file.pred.keys()) {
        if !file.elements.contains(key) {
            return Err(Error::UnknownLabel(key.clone()));
        }
    }
    let elements = file
        .elements
        .iter()
        .map(|x| {
            let r = file
                .rho
                .get(x)
                .ok_or_else(|| Error::Format(format!("element `{x}` has no realizer")))?;
            let answers = file.pred.get(x).map(Vec::as_slice).unwrap_or(&[]);
            Ok((
                x.clone(),
                sig.parse(r)?,
                answers.iter().map(|s| sig.parse(s)).collect::<Result<Vec<_>>>()?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    PartitionedAssemblyPredicate::new(sig, fuel, elements)
}

pub fn load_assembly(path: &Path, sig: &Signature, fuel: u64) -> Result<PartitionedAssemblyPredicate> {
    assembly_from(sig, fuel, &read_json(path)?)
}

/// A JSON array of term sources, normalized.
pub fn load_term_set(path: &Path, sig: &Signature, fuel: u64) -> Result<Vec<Term>> {
    let srcs: Vec<String> = read_json(path)?;
    srcs.iter()
        .map(|s| {
            let t = sig.parse(s)?;
            sig.eval(&t, fuel).value().cloned().ok_or_else(|| Error::Diverged(s.clone()))
        })
        .collect()
}
