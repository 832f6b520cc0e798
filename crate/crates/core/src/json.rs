//! Interchange helpers beyond the per-type serde implementations: DOT
//! rendering of Galois lattices and a wire format for ring homomorphisms
//! whose in-memory form (closures over carriers, field embeddings) has no
//! direct serialization.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hom::{HomMap, RingHom};
use crate::lattice::GaloisLattice;
use crate::ring::{RElem, StarRing};

/// Renders the Hasse diagram of a lattice as Graphviz DOT.
///
/// Solid edges are cover relations, drawn lower element to upper with
/// `rankdir=BT` so diagrams read bottom-up. Dashed arcs show the Galois
/// prime map; fixed points of the map are omitted (a self-loop carries no
/// information a reader could use), and a mutual pair `x' = y, y' = x` is
/// drawn once without arrowheads. Output is deterministic: nodes and
/// edges are emitted in ascending index order.
pub fn lattice_dot(l: &GaloisLattice) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, label) in l.labels().iter().enumerate() {
        let escaped = label.replace('\\', "\\\\").replace('"', "\\\"");
        out.push_str(&format!("  v{i} [label=\"{escaped}\"];\n"));
    }
    for (lo, hi) in l.covers() {
        out.push_str(&format!("  v{lo} -> v{hi};\n"));
    }
    for x in 0..l.size() as u32 {
        let y = l.prime(x);
        if y == x {
            continue;
        }
        let mutual = l.prime(y) == x;
        if mutual && y < x {
            continue; // drawn when the partner was visited
        }
        let arrow = if mutual { " [style=dashed, constraint=false, dir=none]" } else { " [style=dashed, constraint=false]" };
        out.push_str(&format!("  v{x} -> v{y}{arrow};\n"));
    }
    out.push_str("}\n");
    out
}

/// Discriminator for the named-map form of [`RingHomSpec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RingHomKind {
    Projection,
}

/// Wire format for ring homomorphisms: either an explicit graph
/// `{"map":[[a, h(a)], ...]}` with both columns in the ring element
/// format, or a named coordinate projection
/// `{"kind":"projection","component":0}` off a product ring.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingHomSpec {
    Named { kind: RingHomKind, component: usize },
    Graph { map: Vec<(RElem, RElem)> },
}

/// Instantiates a wire-format homomorphism between the given rings.
/// Structural fit is validated (total table into the target, projection
/// off a product onto the matching factor); algebraic laws are the
/// business of [`RingHom::check`].
pub fn ring_hom_from_spec(
    source: StarRing,
    target: StarRing,
    spec: RingHomSpec,
) -> Result<RingHom> {
    match spec {
        RingHomSpec::Named { kind: RingHomKind::Projection, component } => {
            RingHom::new(source, target, HomMap::Projection(component))
        }
        RingHomSpec::Graph { map } => RingHom::table(source, target, map),
    }
}

/// Serializable form of a homomorphism. Projections keep their name;
/// every other map is materialized as its graph over the source carrier,
/// which inherits the carrier enumeration cap.
pub fn ring_hom_to_spec(hom: &RingHom) -> Result<RingHomSpec> {
    match hom.map() {
        HomMap::Projection(component) => {
            Ok(RingHomSpec::Named { kind: RingHomKind::Projection, component: *component })
        }
        _ => {
            let mut map = Vec::new();
            for x in hom.source().carrier()? {
                let y = hom.apply(&x)?;
                map.push((x, y));
            }
            Ok(RingHomSpec::Graph { map })
        }
    }
}
