use opvr::construct3::construct_opvr_3conn;
use opvr::drawing::validate_opvr;
use opvr::generate::*;
use opvr::ortho::optimize_vertex_complexity;

fn main() {
    let mut fails = 0;
    for seed in 0..12u64 {
        let n = 12 + (seed as usize % 5) * 18;
        let g = match gen_random(GenSpec::new(Model::Tric, n, seed)) {
            Ok(g) => g,
            Err(e) => { println!("tric n={n} seed={seed}: GEN FAIL {e}"); fails += 1; continue; }
        };
        match construct_opvr_3conn(&g) {
            Ok(res) => {
                let rep = validate_opvr(&res.drawing, &g).unwrap();
                let opt = optimize_vertex_complexity(&g).unwrap();
                let ok = rep.is_clean() && res.complexity <= 12 && opt.k <= res.complexity as i64;
                println!("tric n={} seed={seed}: constructive={} optimal={} red_deg={} valid={}",
                    g.real_count(), res.complexity, opt.k, res.partition.max_red_degree, rep.is_clean());
                if !ok { fails += 1; if !rep.is_clean() { println!("  {:?}", &rep.violations[..rep.violations.len().min(3)]); } }
            }
            Err(e) => { println!("tric n={n} seed={seed}: CONSTRUCT FAIL {e}"); fails += 1; }
        }
    }
    for n in [6, 13] {
        let g = gen_lb3(n);
        match construct_opvr_3conn(&g) {
            Ok(res) => {
                let rep = validate_opvr(&res.drawing, &g).unwrap();
                println!("lb3({n}): constructive={} red={} valid={}", res.complexity, res.partition.max_red_degree, rep.is_clean());
                if !rep.is_clean() { fails += 1; println!("  {:?}", &rep.violations[..rep.violations.len().min(3)]); }
            }
            Err(e) => { println!("lb3({n}): CONSTRUCT FAIL {e}"); fails += 1; }
        }
    }
    println!("fails: {fails}");
}
