use opvr::partition::triangulate;

fn main() {
    let g = triangulate(&opvr::fixtures::two_pentagons_cut_vertex());
    let outer = &g.faces().walks[g.faces().outer];
    let s = g.topo.src(outer[0]);
    let t = g.topo.dst(outer[0]);
    println!("n={} m={} s={s} t={t}", g.node_count(), g.edge_count());
    for e in 0..g.edge_count() {
        let (a,b) = g.edge_ends(e);
        print!("({a},{b}) ");
    }
    println!();
    match opvr::construct3::st_number_debug(&g, s, t) {
        Ok(num) => println!("numbers: {:?}", num),
        Err(e) => println!("error: {e}"),
    }
}
