use glink::qpoly::qbinom;
use glink::web::{moy_eval, SlicedWeb};

#[test]
fn documented_example_parses() {
    let w: SlicedWeb = "cup(2); split(1,1) idr(2); merge(1,1) idr(2); cap(2)".parse().unwrap();
    for n in 2..=4 {
        let digon = &qbinom(2, 1).unwrap() * &qbinom(n, 2).unwrap();
        assert_eq!(moy_eval(&w, n as u32).unwrap(), digon);
    }
    assert_eq!(w.to_string().parse::<SlicedWeb>().unwrap(), w);
}

#[test]
fn profile_errors() {
    assert!("cup(1); merge(1,1); split(1,1); cap(1)".parse::<SlicedWeb>().is_err());
    assert!("cup(1); bogus(1)".parse::<SlicedWeb>().is_err());
}
