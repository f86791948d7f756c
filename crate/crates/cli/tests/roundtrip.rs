use std::sync::Arc;

use cshom::{
    EdgeColouredBipartiteGraph, FiniteGroup, FiniteSemigroup, ReesMatrixSemigroup, SandwichMatrix,
};
use cshom_cli::workspace::{RmsDecl, Workspace};
use proptest::prelude::*;

fn cyclic(n: usize) -> Arc<FiniteGroup> {
    let labels = (0..n).map(|k| format!("g{k}")).collect();
    Arc::new(FiniteGroup::from_fn(labels, |a, b| (a + b) % n).unwrap())
}

prop_compose! {
    fn rms_decl()(n in 1usize..5, rows in 1usize..4, cols in 1usize..4)
        (entries in proptest::collection::vec(0..n, rows * cols), n in Just(n), rows in Just(rows), cols in Just(cols))
        -> (usize, ReesMatrixSemigroup) {
        let m = SandwichMatrix::new(cyclic(n), rows, cols, entries).unwrap();
        (n, ReesMatrixSemigroup::new(m))
    }
}

prop_compose! {
    fn graph()(nl in 1usize..4, nr in 1usize..4, k in 1usize..4)
        (f in proptest::collection::vec(0..k, nl * nr), nl in Just(nl), nr in Just(nr), k in Just(k))
        -> EdgeColouredBipartiteGraph {
        EdgeColouredBipartiteGraph::new(
            (1..=nl).map(|x| x.to_string()).collect(),
            (1..=nr).map(|x| x.to_string()).collect(),
            (0..k).map(|c| format!("c{c}")).collect(),
            f,
        )
        .unwrap()
    }
}

proptest! {
    #[test]
    fn parse_inverts_serialize(
        (n, s) in rms_decl(),
        g in graph(),
        band in (1usize..4, 1usize..4),
        mono in (1usize..4, 1usize..4),
    ) {
        let mut ws = Workspace::default();
        ws.groups.push((format!("C{n}"), s.group().clone()));
        ws.semigroups.push(("B".into(), FiniteSemigroup::rectangular_band(band.0, band.1)));
        ws.semigroups.push(("M".into(), FiniteSemigroup::monogenic(mono.0, mono.1)));
        ws.rms.push(RmsDecl { name: "R".into(), group: format!("C{n}"), value: Arc::new(s) });
        ws.graphs.push(("G".into(), g));
        let text = ws.serialize();
        let back = Workspace::parse(&text).unwrap();
        prop_assert_eq!(&back, &ws);
        prop_assert_eq!(back.serialize(), text);
    }
}
