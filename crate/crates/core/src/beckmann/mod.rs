//! Branch points, ramification types and specialization behaviour of covers of the
//! projective line given by a bivariate polynomial or a rational function.

mod cover;
mod ramification;
mod search;
mod specialization;
mod wreath;

pub use cover::{BranchPoint, Cover, GroupHint, Presentation, BUILTIN_COVERS};
pub use ramification::{
    abhyankar_index, branch_points, pullback_type, ramification_indices, RamEntry,
    RamificationType,
};
pub use search::{
    specialize_search, specialize_search_with, universally_ramified_bound, DiscSupport,
    ResidueLock, SearchOptions, SearchResult, UrBound,
};
pub use specialization::{
    bad_prime_superset, intersection_multiplicity, predict_inertia, specialization_discriminant,
    unramified_check, BadPrimes, PrimeReport, SpecializationReport, Verdict,
};
pub use wreath::{wreath_cover_poly, WreathCover};

use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BeckmannError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("cover file: {0}")]
    Parse(String),
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("polynomial is inseparable in X")]
    Inseparable,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0} is a branch point")]
    IsBranchPoint(String),
    #[error("malformed ramification type: {0}")]
    Malformed(String),
    #[error("{0} is not a prime below 2^63")]
    BadPrime(String),
}

pub(crate) mod ser {
    use std::collections::{BTreeMap, BTreeSet};
    use std::fmt::Display;

    use serde::ser::{SerializeMap, SerializeSeq};
    use serde::{Serialize, Serializer};

    pub fn display<T: Display, S: Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn display_opt<T: Display, S: Serializer>(x: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.collect_str(x),
            None => s.serialize_none(),
        }
    }

    pub fn display_seq<'a, T, I, S>(xs: I, s: S) -> Result<S::Ok, S::Error>
    where
        T: Display + 'a,
        I: IntoIterator<Item = &'a T>,
        S: Serializer,
    {
        let xs: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&x)?;
        }
        seq.end()
    }

    pub fn display_set<T: Display, S: Serializer>(xs: &BTreeSet<T>, s: S) -> Result<S::Ok, S::Error> {
        display_seq(xs, s)
    }

    pub fn display_vec<T: Display, S: Serializer>(xs: &[T], s: S) -> Result<S::Ok, S::Error> {
        display_seq(xs, s)
    }

    pub fn display_keys<K: Display, V: Serialize, S: Serializer>(
        m: &BTreeMap<K, V>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(m.len()))?;
        for (k, v) in m {
            map.serialize_entry(&k.to_string(), v)?;
        }
        map.end()
    }
}
