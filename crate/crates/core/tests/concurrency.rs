use std::path::PathBuf;
use std::sync::Arc;
use std::thread;

use hyperembed::groebner::{Ideal, MonomialOrder};
use hyperembed::presentations::{read_certificate, verify_certificate};
use hyperembed::textio::parse_polynomial;
use hyperembed::VarSet;

fn certificates() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "cert"))
        .collect();
    paths.sort();
    paths
}

#[test]
fn certificates_replay_identically_in_parallel() {
    let paths = certificates();
    assert_eq!(paths.len(), 8);
    let sequential: Vec<String> = paths
        .iter()
        .map(|p| verify_certificate(&read_certificate(p).unwrap()).render())
        .collect();
    let parallel: Vec<String> = thread::scope(|s| {
        let handles: Vec<_> = paths
            .iter()
            .map(|p| s.spawn(move || verify_certificate(&read_certificate(p).unwrap()).render()))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    assert_eq!(sequential, parallel);
    let valid = sequential.iter().filter(|r| r.ends_with("verdict: valid\n")).count();
    assert_eq!(valid, 4);
}

#[test]
fn shared_ideal_gives_one_basis_per_order() {
    let r = VarSet::new(["x", "y", "z"]).unwrap();
    let gens = ["x^2*z - y^3*z^2 - 3*y^2*z + 2*x - 3*y - 1", "x*y*z - 1"]
        .iter()
        .map(|s| parse_polynomial(s, &r).unwrap())
        .collect();
    let ideal = Arc::new(Ideal::new(&r, gens).unwrap());
    let orders = [
        MonomialOrder::lex(&r),
        MonomialOrder::deglex(&r),
        MonomialOrder::degrevlex(&r),
    ];
    let results: Vec<Vec<_>> = thread::scope(|s| {
        let handles: Vec<_> = (0..12)
            .map(|i| {
                let ideal = Arc::clone(&ideal);
                let ord = orders[i % 3].clone();
                s.spawn(move || ideal.groebner(&ord).to_vec())
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for (i, basis) in results.iter().enumerate() {
        assert_eq!(basis, &results[i % 3]);
        assert_eq!(
            *basis,
            *Ideal::new(&r, ideal.generators().to_vec())
                .unwrap()
                .groebner(&orders[i % 3])
        );
    }
}
