//! Writes a random accepted scene document: `make_fixture t1|t2 SEED BOUND`.

use pappian::theorem::{random_scene_t1, random_scene_t2};
use pappian::FieldSpec;
use pappian_cli::Scene;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let seed: u64 = args[2].parse().expect("seed");
    let bound: u64 = args[3].parse().expect("bound");
    let scene: Scene = match args[1].as_str() {
        "t1" => random_scene_t1(seed, bound).expect("scene").scene.into(),
        _ => random_scene_t2(seed, bound, FieldSpec::Rationals).expect("scene").scene.into(),
    };
    print!("{}", scene.to_document().to_json());
}
