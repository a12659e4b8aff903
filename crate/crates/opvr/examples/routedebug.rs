use opvr::construct3::*;
use opvr::generate::*;
use opvr::partition::{partition_edges, planarize_by_deletion, Color};

fn main() {
    let g = gen_random(GenSpec::new(Model::Tric, 30, 1)).unwrap();
    let partition = partition_edges(&g).unwrap();
    let ga = &partition.graph;
    let red: Vec<bool> = partition.color.iter().map(|c| *c == Color::Red).collect();
    let skeleton = planarize_by_deletion(ga, &red);
    for pr in ga.crossing_pairs().unwrap() {
        let (rd, bl) = if partition.color[pr.edge_a] == Color::Red { (pr.edge_a, pr.edge_b) } else { (pr.edge_b, pr.edge_a) };
        if rd != 11 { continue; }
        let around: Vec<usize> = ga.topo.rot[pr.dummy].iter().map(|se| ga.endpoint_toward(pr.dummy, *se)).collect();
        println!("red {rd} {:?} blue {bl} {:?} around={around:?}", ga.edge_ends(rd), ga.edge_ends(bl));
        println!("red rot at endpoints:");
        for v in [ga.edge_ends(rd).0, ga.edge_ends(rd).1] {
            let rot: Vec<(usize, &str)> = ga.topo.rot[v].iter().map(|se| {
                let e = ga.seg_edge[se.seg];
                (e, if partition.color[e] == Color::Red { "R" } else { "B" })
            }).collect();
            println!("  v{v}(src): {rot:?}");
        }
        let _ = &skeleton;
    }
    match construct_opvr_3conn(&g) { Ok(_) => println!("ok"), Err(e) => println!("fail: {e}") }
}
