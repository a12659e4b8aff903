fn main() {
    // Lb3: k >= 2
    for n in [6, 13] {
        let g = opvr::generate::gen_lb3(n);
        let t = std::time::Instant::now();
        let res = opvr::ortho::optimize_vertex_complexity(&g).unwrap();
        println!("lb3({n}): vertices={} k={} reflex={} [{:?}]", g.real_count(), res.k, res.total_reflex, t.elapsed());
    }
    // Lb2: k >= n+1
    for n in [1, 2, 3, 4] {
        let g = opvr::generate::gen_lb2(n);
        let res = opvr::ortho::optimize_vertex_complexity(&g).unwrap();
        println!("lb2({n}): vertices={} k={} reflex={}", g.real_count(), res.k, res.total_reflex);
    }
    // a couple of random instances through the whole pipeline
    for seed in 0..3u64 {
        let g = opvr::generate::gen_random(opvr::generate::GenSpec::new(opvr::generate::Model::Tric, 20, seed)).unwrap();
        let res = opvr::ortho::optimize_vertex_complexity(&g).unwrap();
        let d = opvr::compact::compact(&res.rep).unwrap();
        let x = opvr::expansion::expand(&g);
        let o = opvr::drawing::extract_opvr(&d, &x, &g);
        let rep = opvr::drawing::validate_opvr(&o, &g).unwrap();
        println!("tric20 seed {seed}: n={} k={} valid={} grid={}x{}", g.real_count(), res.k, rep.is_clean(), d.width, d.height);
        if !rep.is_clean() { println!("  violations: {:?}", &rep.violations[..rep.violations.len().min(5)]); }
    }
}
