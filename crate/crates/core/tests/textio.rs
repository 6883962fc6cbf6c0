mod common;

use common::*;
use leavitt::graph::{FinPath, Graph, VertexId};
use leavitt::omega::OmegaPathSpec;
use leavitt::textio::{
    format_chen, format_element, format_graph, format_path, format_spec, parse_chen, parse_expr, parse_graph,
    parse_path, parse_spec,
};
use leavitt::Error;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn same_graph(a: &Graph, b: &Graph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && a.vertices().all(|v| a.vertex_name(v) == b.vertex_name(v))
        && a.edges().all(|e| {
            a.edge_name(e) == b.edge_name(e)
                && a.vertex_name(a.src(e)) == b.vertex_name(b.src(e))
                && a.vertex_name(a.rng(e)) == b.vertex_name(b.rng(e))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graphs_round_trip(seed in any::<u64>()) {
        let g = random_graph(&mut StdRng::seed_from_u64(seed), 6, 9);
        let text = format_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert!(same_graph(&g, &back));
        prop_assert_eq!(format_graph(&back), text);
    }

    #[test]
    fn elements_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 4, 7);
        let a = random_element(&g, &mut rng, 4, 3);
        let text = format_element(&g, &a);
        let parsed = parse_expr(&g, &text).unwrap();
        prop_assert!(parsed.warnings.is_empty(), "{:?}", parsed.warnings);
        prop_assert_eq!(parsed.element, a);
    }

    #[test]
    fn specs_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (g, cycles) = random_graph_with_cycle(&mut rng, 4, 7);
        let p = random_spec(&g, &cycles, &mut rng);
        prop_assert_eq!(parse_spec(&g, &format_spec(&g, &p)).unwrap(), p.clone());
        let c = p.canonicalize(&g).unwrap();
        prop_assert_eq!(parse_spec(&g, &format_spec(&g, &c)).unwrap().canonicalize(&g).unwrap(), c);
        let mu = p.prefix();
        prop_assert_eq!(parse_path(&g, &format_path(&g, mu)).unwrap(), mu.clone());
    }

    #[test]
    fn chen_elements_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (g, cycles) = random_graph_with_cycle(&mut rng, 4, 7);
        let p = random_spec(&g, &cycles, &mut rng);
        let terms = rng.gen_range(1..=4);
        let t = random_chen(&g, &p, &mut rng, terms);
        let back = parse_chen(&g, &format_chen(&g, &t)).unwrap();
        prop_assert_eq!(back.is_zero(), t.is_zero());
        if !t.is_zero() {
            prop_assert_eq!(back, t);
        }
    }
}

#[test]
fn rose_document() {
    let g = parse_graph("lpa-graph v1\nv; e: v -> v; f: v -> v\n").unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (1, 2));
    let lone = parse_graph("lpa-graph v1\nw\n").unwrap();
    assert!(lone.is_sink(VertexId(0)));
}

#[test]
fn undeclared_vertex_is_reported_on_its_line() {
    let err = parse_graph("lpa-graph v1\nv\ne: v -> w\n").unwrap_err();
    let Error::Parse { line, .. } = err else { panic!("{err:?}") };
    assert_eq!(line, 3);
}

#[test]
fn expression_examples() {
    let g = r2();
    let v = g.vertex("v").unwrap();
    assert_eq!(format_element(&g, &parse_expr(&g, "e* e").unwrap().element), "v");
    assert!(parse_expr(&g, "ef - e f").unwrap().element.is_zero());
    let mixed = parse_expr(&g, "1/2 e f* + v").unwrap().element;
    assert_eq!(mixed.len(), 2);
    assert_eq!(format_element(&g, &mixed), "v + 1/2 e f*");
    let e = FinPath::edge(&g, g.edge("e").unwrap());
    let spec = OmegaPathSpec::lasso(&g, e, FinPath::edge(&g, g.edge("f").unwrap())).unwrap();
    assert_eq!(format_spec(&g, &spec), "rat: e (f)^inf");
    assert_eq!(parse_spec(&g, "rat: v (e f)^inf").unwrap().src(), v);
}
