//! Published decomposition cofactors of the jet coefficients, kept as the
//! typeset text and read with the expression parser.

use crate::error::BautinError;
use crate::symbolic::{parse_param_poly, parse_quasi_trig, ParamPoly, QuasiTrigPoly};

pub const ALPHA0: &str = "-2 pi";

pub const BETA0: &str = "-(2 pi)/3";

pub const BETA1: &str = "-(2 pi)/9 (9 a2^2-9 b2 a2-6 c2 a2-27 pi b1 a2+27 b2^2+21 c2^2+18 b1^2+ \
20 c1^2+6 b2 c2-27 b2 pi a1-9 a1 b1)";

pub const GAMMA0: &str = "-(5 pi)/4";

pub const GAMMA1: &str = "-(pi)/72 (300 a2^2-558 b2 a2-240 c2 a2-384 pi b1 a2+528 b2^2+204 c2^2- \
36 a1^2+288 b1^2+188 c1^2+168 b2 c2-384 b2 pi a1-18 a1 b1+ 48 a1 c1+24 b1 c1)";

pub const GAMMA2: &str = "-(pi)/1080 (2160 a2^4-360 b2 a2^3-1296 c2 a2^3-25920 pi b1 a2^3+ \
17100 b2^2 a2^2+27864 c2^2 a2^2+21600 pi^2 b1^2 a2^2+10260 b1^2 a2^2+ \
24648 c1^2 a2^2+7236 b2 c2 a2^2-25920 b2 pi a1 a2^2-8280 a1 b1 a2^2+ \
34560 b2 pi b1 a2^2+17280 c2 pi b1 a2^2-4752 a1 c1 a2^2- \
1740 b1 c1 a2^2-34200 b2^3 a2-19824 c2^3 a2-34560 pi b1^3 a2- \
37368 b2 c2^2 a2+4680 b2 a1^2 a2-144 c2 a1^2 a2-33480 b2 b1^2 a2- \
9954 c2 b1^2 a2+17280 pi a1 b1^2 a2-38472 b2 c1^2 a2- \
20976 c2 c1^2 a2-38400 pi b1 c1^2 a2-22806 b2^2 c2 a2+ \
34560 b2^2 pi a1 a2+17280 b2 c2 pi a1 a2+5040 b2 a1 b1 a2+ \
8280 c2 a1 b1 a2+43200 b2 pi^2 a1 b1 a2-60480 b2^2 pi b1 a2- \
41280 c2^2 pi b1 a2-17280 b2 c2 pi b1 a2-7608 b2 a1 c1 a2- \
1440 c2 a1 c1 a2-14628 b2 b1 c1 a2-2112 c2 b1 c1 a2+36900 b2^4+ \
13040 c2^4+14580 b1^4+11200 c1^4+16152 b2 c2^3-9720 a1 b1^3+ \
2640 a1 c1^3+1320 b1 c1^3+70758 b2^2 c2^2-4140 b2^2 a1^2+648 c2^2 a1^2+ \
2124 b2 c2 a1^2+21600 b2^2 pi^2 a1^2+50760 b2^2 b1^2+42498 c2^2 b1^2- \
1620 a1^2 b1^2-25596 b2 c2 b1^2-34560 b2 pi a1 b1^2+67074 b2^2 c1^2+ \
24000 c2^2 c1^2+120 a1^2 c1^2+41670 b1^2 c1^2+15288 b2 c2 c1^2- \
38400 b2 pi a1 c1^2-17400 a1 b1 c1^2+30996 b2^3 c2-60480 b2^3 pi a1- \
41280 b2 c2^2 pi a1-17280 b2^2 c2 pi a1+1080 a1^3 b1+17280 b2 pi a1^2 b1- \
11880 b2^2 a1 b1-19080 c2^2 a1 b1+540 b2 c2 a1 b1-720 a1^3 c1- \
11220 b1^3 c1+3690 a1 b1^2 c1+1950 b2^2 a1 c1+2448 c2^2 a1 c1+ \
1344 b2 c2 a1 c1+44028 b2^2 b1 c1+1224 c2^2 b1 c1+1500 a1^2 b1 c1+ \
1368 b2 c2 b1 c1)";

/// Closed form of the second variational coefficient.
pub const V2: &str = "(1/3)(-3 a2 + 3 b2 + c2) + a2 cos(theta) - b2 cos(theta) - (1/3) c2 cos(3 theta) + \
a1 sin(theta) + b1 sin(theta) + (1/3) c1 sin(3 theta)";

#[derive(Clone, Debug, PartialEq)]
pub struct AppendixCofactors {
    pub alpha0: ParamPoly,
    pub beta0: ParamPoly,
    pub beta1: ParamPoly,
    pub gamma0: ParamPoly,
    pub gamma1: ParamPoly,
    pub gamma2: ParamPoly,
}

fn read(name: &'static str, src: &str) -> Result<ParamPoly, BautinError> {
    parse_param_poly(src).map_err(|source| BautinError::Transcription { name, source })
}

impl AppendixCofactors {
    pub fn load() -> Result<Self, BautinError> {
        Ok(Self {
            alpha0: read("alpha0", ALPHA0)?,
            beta0: read("beta0", BETA0)?,
            beta1: read("beta1", BETA1)?,
            gamma0: read("gamma0", GAMMA0)?,
            gamma1: read("gamma1", GAMMA1)?,
            gamma2: read("gamma2", GAMMA2)?,
        })
    }

    /// `(name, polynomial)` pairs in a fixed order.
    pub fn named(&self) -> [(&'static str, &ParamPoly); 6] {
        [
            ("alpha0", &self.alpha0),
            ("beta0", &self.beta0),
            ("beta1", &self.beta1),
            ("gamma0", &self.gamma0),
            ("gamma1", &self.gamma1),
            ("gamma2", &self.gamma2),
        ]
    }
}

pub fn v2_closed_form() -> QuasiTrigPoly {
    parse_quasi_trig(V2).expect("closed form of v2 parses")
}
