use dngap::special::*;
fn main() {
    for x in [7.0, 11.086370019245084] {
        let v = bessel_jy(BesselOrder::integer(7), x).unwrap();
        println!("{x} {:?}", v);
    }
}
