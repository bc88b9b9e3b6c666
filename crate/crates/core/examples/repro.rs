use orddim::formula::{parse, eval_closed};
use orddim::model::ModelId;
use orddim::qe::eliminate;

fn main() {
    let m = ModelId::Wom { m: 2 };
    for src in [
        "E y. [0,0,0] < y & y < [0,1,0] & y < [-1,0,0]",
        "E y. [0,0,0] < y & y < [0,1,0] & y < [-1,0,0] & !(U2(y - [1,0,0]))",
        "E y. [0,0,0] < y & y < [-1,0,0] & !(U2(y - [1,0,0]))",
        "E y. [0,0,0] < y & y < [-1,0,0] & !(U2(y - [1,0,0])) & [0,-1,0] < y",
    ] {
        let f = parse(src, m).unwrap();
        let e = eliminate(&f, m).unwrap();
        println!("{src}\n  => {e} (={})", eval_closed(&e, m).unwrap());
    }
}
