//! Serialization of reduced problems.
//!
//! * [`PrimalSdpData`]: `min cᵀd  s.t.  Ay = b, Q_k ⪰ 0` with
//!   `y = [d; vec(Q_1); …]`, built from a reduced Gram or program system.
//! * SDPA sparse (`.dat-s`) text via [`export_sdpa_sparse`].
//! * JSON reduction reports and SOS-program documents.
//!
//! Rationals travel through JSON as `"num/den"` strings.

mod primal;
mod program_json;
mod report;
mod sdpa;

pub use primal::{to_primal_form, Column, PrimalSdpData, PrimalSource, RowEntry};
pub use program_json::{parse_program_json, program_to_json};
pub use report::{
    export_report_json, input_digest, parse_report_json, ConstraintSummary, InitKind, Method, ReductionReport,
    RemovedMonomial, ReportStatus,
};
pub use sdpa::{export_sdpa_sparse, format_real};

/// `"num/den"` string form for a single rational.
pub mod rational_str {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use crate::poly::{parse_rational, Coefficient};

    pub fn to_string(c: &Coefficient) -> String {
        format!("{}/{}", c.numer(), c.denom())
    }

    pub fn serialize<S: Serializer>(c: &Coefficient, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_string(c))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Coefficient, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// `"num/den"` strings for a list of rationals.
pub mod rational_vec {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use crate::poly::{parse_rational, Coefficient};

    pub fn serialize<S: Serializer>(v: &[Coefficient], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(super::rational_str::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Coefficient>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}
