//! Built-in presentations, the Johnstone dcpo, products, and the fact
//! registry.

pub mod facts;
pub mod johnstone;
pub mod product;

use crate::error::{Error, Result};
use crate::ladder::LadderPoset;

pub const P1_SRC: &str = "poset P1 {
  base a b c d;
  ladder X;
  order { a < b; b < c; c < d; }
  rel { X <= c always; }
}
";

pub const P2_SRC: &str = "poset P2 {
  base top;
  ladder Y1 Y2;
  rel { Y1 <= top always; Y2 <= top always; }
}
";

pub const P3_SRC: &str = "poset P3 {
  base t;
  ladder Z;
  rel { Z <= t always; }
}
";

pub const ONE_SRC: &str = "poset one {
  base pt;
}
";

pub const OMEGA_SRC: &str = "poset omega {
  ladder X;
}
";

/// Names accepted by [`ladder_fixture`].
pub const LADDER_FIXTURES: [&str; 5] = ["P1", "P2", "P3", "one", "omega"];

pub fn ladder_fixture(name: &str) -> Result<LadderPoset> {
    let src = match name {
        "P1" => P1_SRC,
        "P2" => P2_SRC,
        "P3" => P3_SRC,
        "one" => ONE_SRC,
        "omega" => OMEGA_SRC,
        _ => return Err(Error::UnknownFixture(name.to_owned())),
    };
    crate::dsl::load(src)
}

pub fn p1() -> LadderPoset {
    ladder_fixture("P1").expect("fixture validates")
}

pub fn p2() -> LadderPoset {
    ladder_fixture("P2").expect("fixture validates")
}

pub fn p3() -> LadderPoset {
    ladder_fixture("P3").expect("fixture validates")
}

pub fn one_point() -> LadderPoset {
    ladder_fixture("one").expect("fixture validates")
}

/// A fixture of either backend.
#[derive(Debug, Clone)]
pub enum Fixture {
    Ladder(LadderPoset),
    Oracle(johnstone::Johnstone),
}

pub fn fixture(name: &str) -> Result<Fixture> {
    match name {
        "J" => Ok(Fixture::Oracle(johnstone::Johnstone)),
        n => ladder_fixture(n).map(Fixture::Ladder),
    }
}
