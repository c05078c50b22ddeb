//! Published reference values, kept as printed so that tests and the CLI can
//! compare against them.

use serde::Serialize;

use crate::error::Result;
use crate::invariants::{Q, T};
use crate::poly::MultiPoly;
use crate::root_system::{Family, LatticeKind};
use crate::tutte::TUTTE_VARS;

/// One row of the published weight-lattice table of arithmetic Tutte
/// polynomials. Type A rows are indexed by the number of coordinates.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct WeightRow {
    pub family: Family,
    pub n: usize,
    pub printed: &'static str,
    /// The printed row breaks off mid-polynomial; only its listed terms
    /// before the dangling fragment are reliable.
    pub truncated: bool,
}

impl WeightRow {
    pub fn label(&self) -> String {
        format!("{}{}", self.family, self.n)
    }

    pub fn citation(&self) -> String {
        format!("published weight-lattice table, row {}", self.label())
    }

    /// The printed polynomial. For a truncated row the trailing fragment
    /// (a bare constant after the last monomial) is dropped.
    pub fn polynomial(&self) -> Result<MultiPoly> {
        let text = if self.truncated {
            self.printed.rsplit_once('+').map(|(head, _)| head).unwrap_or(self.printed)
        } else {
            self.printed
        };
        MultiPoly::parse(text, &TUTTE_VARS)
    }
}

const fn row(family: Family, n: usize, printed: &'static str) -> WeightRow {
    WeightRow { family, n, printed, truncated: false }
}

pub const WEIGHT_TABLE: [WeightRow; 16] = [
    row(Family::A, 2, "1+x"),
    row(Family::A, 3, "4+x+x^2+3 y"),
    row(Family::A, 4, "15+5 x+3 x^2+x^3+20 y+4 x y+12 y^2+4 y^3"),
    row(
        Family::A,
        5,
        "96+6 x+11 x^2+6 x^3+x^4+150 y+20 x y+10 x^2 y+135 y^2+15 x y^2+95 y^3+5 x y^3+50 y^4+20 y^5+5 y^6",
    ),
    row(Family::B, 2, "3+4 x+x^2+4 y+2 y^2"),
    row(Family::B, 3, "24+17 x+6 x^2+x^3+38 y+10 x y+33 y^2+3 x y^2+22 y^3+12 y^4+6 y^5+2 y^6"),
    row(
        Family::B,
        4,
        "153+156 x+62 x^2+12 x^3+x^4+348 y+200 x y+28 x^2 y+438 y^2+132 x y^2+6 x^2 y^2+420 y^3+60 x y^3\
         +344 y^4+24 x y^4+260 y^5+12 x y^5+184 y^6+4 x y^6+120 y^7+72 y^8+40 y^9+20 y^10+8 y^11+2 y^12",
    ),
    WeightRow {
        family: Family::B,
        n: 5,
        printed: "1680+1409 x+580 x^2+150 x^3+20 x^4+x^5+4604 y+2436 x y+580 x^2 y+60 x^3 y+6910 y^2\
                  +2350 x y^2+330 x^2 y^2+10 x^3 y^2+7830y^3+1780 x y^3+150 x^2 y^3+7620 y^4+1200 x y^4\
                  +60 x^2 y^4+6846 y^5+804 x y^5+30 x^2 y^5+5844 y^6+506 x y^6+10 x^2 y^6+4780 y^7\
                  +300 x y^7+3780 y^8+180x y^8+2900 y^9+100 x y^9+2154 y^{10}+50 x y^{10}+1540 y^{11}\
                  +20 x y^{11}+1055y^{12}+5 x y^{12}+690 y^{13}+430 y^{14}+254 y^{15}+140 y^{16}+70 y^{17}+30",
        truncated: true,
    },
    row(Family::C, 2, "3+4 x+x^2+4 y+2 y^2"),
    row(Family::C, 3, "15+23 x+9 x^2+x^3+32 y+16 x y+30 y^2+6 x y^2+20 y^3+12 y^4+6 y^5+2 y^6"),
    row(
        Family::C,
        4,
        "105+176 x+86 x^2+16 x^3+x^4+296 y+240 x y+40 x^2 y+396 y^2+168 x y^2+12 x^2 y^2+376 y^3+88 x y^3\
         +304 y^4+48 x y^4+232 y^5+24 x y^5+168 y^6+8 x y^6+112 y^7+70 y^8+40 y^9+20 y^{10}+8 y^{11}+2 y^{12}",
    ),
    row(
        Family::C,
        5,
        "945+1689 x+950 x^2+230 x^3+25 x^4+x^5+3264 y+3376 x y+960 x^2 y+80 x^3 y+5540 y^2+3500 x y^2\
         +540 x^2 y^2+20 x^3 y^2+6640 y^3+2720 x y^3+240 x^2 y^3+6600 y^4+1920 x y^4+120 x^2 y^4+5956 y^5\
         +1344 x y^5+60 x^2 y^5+5084 y^6+896 x y^6+20 x^2 y^6+4160 y^7+560 x y^7+3310 y^8+350 x y^8\
         +2580 y^9+200 x y^9+1952 y^{10}+100 x y^{10}+1420 y^{11}+40 x y^{11}+990 y^{12}+10 x y^{12}\
         +660 y^{13}+420 y^{14}+252 y^15+140 y^16+70 y^17+30 y^18+10 y^19+2 y^20",
    ),
    row(Family::D, 2, "1+2x+x^2"),
    row(Family::D, 3, "15+5 x+3 x^2+x^3+20 y+4 x y+12 y^2+4 y^3"),
    row(
        Family::D,
        4,
        "57+88 x+38 x^2+8 x^3+x^4+160 y+112 x y+16 x^2 y+216 y^2+72 x y^2+200 y^3+24 x y^3+140 y^4\
         +80 y^5+40 y^6+16 y^7+4 y^8",
    ),
    row(
        Family::D,
        5,
        "915+629 x+270 x^2+90 x^3+15 x^4+x^5+2384 y+1096 x y+320 x^2 y+40 x^3 y+3540 y^2+1080 x y^2\
         +180 x^2 y^2+4060 y^3+840 x y^3+60 x^2 y^3+3930 y^4+510 x y^4+3376 y^5+264 x y^5+2644 y^6\
         +116 x y^6+1920 y^7+40 x y^7+1310 y^8+10 x y^8+840 y^9+504 y^{10}+280 y^{11}+140 y^{12}\
         +60 y^{13}+20 y^{14}+4 y^{15}",
    ),
];

/// One row of the published weight-lattice table of characteristic and
/// Ehrhart polynomials.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CharacteristicRow {
    pub family: Family,
    pub n: usize,
    pub characteristic: &'static str,
    pub ehrhart: &'static str,
}

impl CharacteristicRow {
    pub fn label(&self) -> String {
        format!("{}{}", self.family, self.n)
    }

    pub fn citation(&self) -> String {
        format!("published characteristic/Ehrhart table, row {}", self.label())
    }

    pub fn characteristic_poly(&self) -> Result<MultiPoly> {
        MultiPoly::parse(self.characteristic, &Q)
    }

    pub fn ehrhart_poly(&self) -> Result<MultiPoly> {
        MultiPoly::parse(self.ehrhart, &T)
    }
}

const fn crow(family: Family, n: usize, characteristic: &'static str, ehrhart: &'static str) -> CharacteristicRow {
    CharacteristicRow { family, n, characteristic, ehrhart }
}

pub const CHARACTERISTIC_TABLE: [CharacteristicRow; 16] = [
    crow(Family::A, 2, "-2+q", "1+2t"),
    crow(Family::A, 3, "6-3q+q^2", "1+3t+9t^2"),
    crow(Family::A, 4, "-24+14q-6q^2+q^3", "1+6t+18t^2+64t^3"),
    crow(Family::A, 5, "120-50q+35q^2-10q^3+q^4", "1+10t+45t^2+110t^3+625t^4"),
    crow(Family::B, 2, "8-6q+q^2", "1+6t+14t^2"),
    crow(Family::B, 3, "-48+32q-9q^2+q^3", "1+9t+45t^2+174t^3"),
    crow(Family::B, 4, "384-320q+104q^2-16q^3+q^4", "1+16t+138t^2+820t^3+3106t^4"),
    crow(Family::B, 5, "-3840+3104q-1160q^2+240q^3-25q^4+q^5", "1+25t+310t^2+2530t^3+15365t^4+72290t^5"),
    crow(Family::C, 2, "8-6q+q^2", "1+6t+14t^2"),
    crow(Family::C, 3, "-48+44q-12q^2+q^3", "1+12t+66t^2+172t^3"),
    crow(Family::C, 4, "384-400q+140q^2-20q^3+q^4", "1+20t+192t^2+1080t^3+3036t^4"),
    crow(Family::C, 5, "-3840+4384q-1800q^2+340q^3-30q^4+q^5", "1+30t+440t^2+4040t^3+23580t^4+69976t^5"),
    crow(Family::D, 2, "4-4q+q^2", "1+4t+4t^2"),
    crow(Family::D, 3, "-24+14q-6q^2+q^3", "1+6t+18t^2+64t^3"),
    crow(Family::D, 4, "192-192q+68q^2-12q^3+q^4", "1+12t+84t^2+432t^3+1272t^4"),
    crow(Family::D, 5, "-1920+1504q-640q^2+160q^3-20q^4+q^5", "1+20t+200t^2+1320t^3+6700t^4+31488t^5"),
];

/// The worked C₂ example, in one lattice.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct WorkedExample {
    pub lattice: LatticeKind,
    pub tutte: &'static str,
    pub ehrhart: &'static str,
    pub lattice_points: u64,
    pub interior_points: u64,
}

impl WorkedExample {
    pub fn citation(&self) -> String {
        format!("worked C2 example, {} lattice", self.lattice)
    }

    pub fn tutte_poly(&self) -> Result<MultiPoly> {
        MultiPoly::parse(self.tutte, &TUTTE_VARS)
    }

    pub fn ehrhart_poly(&self) -> Result<MultiPoly> {
        MultiPoly::parse(self.ehrhart, &T)
    }
}

pub const WORKED_C2: [WorkedExample; 2] = [
    WorkedExample {
        lattice: LatticeKind::Integer,
        tutte: "x^2+2y^2+4x+4y+3",
        ehrhart: "14t^2+6t+1",
        lattice_points: 21,
        interior_points: 9,
    },
    WorkedExample {
        lattice: LatticeKind::Root,
        tutte: "x^2+y^2+2x+2y+1",
        ehrhart: "7t^2+4t+1",
        lattice_points: 12,
        interior_points: 4,
    },
];

/// The integer-lattice Ehrhart polynomial of C₂ as printed, with t² in
/// place of t in the middle term.
pub const WORKED_C2_PRINTED_EHRHART: &str = "14t^2+6t^2+1";

pub fn weight_row(family: Family, n: usize) -> Option<&'static WeightRow> {
    WEIGHT_TABLE.iter().find(|r| r.family == family && r.n == n)
}

pub fn characteristic_row(family: Family, n: usize) -> Option<&'static CharacteristicRow> {
    CHARACTERISTIC_TABLE.iter().find(|r| r.family == family && r.n == n)
}
