//! Shared fixtures for the `kernels` benchmarks.

use striphyp::{build_minorant, AnalyticMinorant, Functional, MinorantMode, TestFunction, Weight, WeightSequence};

pub fn weight() -> Weight {
    "power:s=0.5".parse().expect("catalog weight")
}

pub fn minorant(h: f64) -> AnalyticMinorant {
    build_minorant(&"linear".parse().expect("catalog weight"), 1.0, h, MinorantMode::Subadditive).expect("minorant")
}

pub fn gaussian() -> TestFunction {
    "gaussian:a=1,shift=0.5+0i".parse().expect("catalog test function")
}

pub fn functional() -> Functional {
    "atoms:[(0+0i,0,1),(1+0.1i,1,0.5),(-2+0i,2,1)]".parse().expect("functional")
}

pub fn sequence() -> WeightSequence {
    "factorial:s=1.5".parse().expect("catalog sequence")
}

#[cfg(test)]
mod tests {
    #[test]
    fn fixtures_build() {
        super::weight();
        super::minorant(1.0);
        super::gaussian();
        super::functional();
        super::sequence();
    }
}
