use revord::catalog::{forbidden, witness};
use revord::extract::{extract_forbidden, Budget};
fn main() {
    let k = "G3d".parse().unwrap();
    let p = forbidden(k);
    let w = witness(k);
    let cert = extract_forbidden(&p, &w.map, &w.pair.0, &w.pair.1, &Budget::default()).unwrap();
    println!("kind {} case {}", cert.kind, cert.provenance);
    for a in &cert.assumptions {
        println!("ASSUMED: {} => {}", a.query, a.answer);
    }
}
