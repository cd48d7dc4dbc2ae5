//! Every identity family as a list of side templates, written out exactly as
//! the displays read (no side is derived from another by code).

use super::template::SideTemplate;
use super::{FamilyId, IdentityFamily, T14Variant};
use crate::exact::Var;

const T1: [&str; 6] = [
    "multi; ; B[k](w1*y1) B[l](w2*y2) B[m](w3*y3); w1^(l+m) w2^(k+m) w3^(k+l)",
    "multi; ; B[k](w1*y1) B[l](w3*y2) B[m](w2*y3); w1^(l+m) w3^(k+m) w2^(k+l)",
    "multi; ; B[k](w2*y1) B[l](w1*y2) B[m](w3*y3); w2^(l+m) w1^(k+m) w3^(k+l)",
    "multi; ; B[k](w2*y1) B[l](w3*y2) B[m](w1*y3); w2^(l+m) w3^(k+m) w1^(k+l)",
    "multi; ; B[k](w3*y1) B[l](w1*y2) B[m](w2*y3); w3^(l+m) w1^(k+m) w2^(k+l)",
    "multi; ; B[k](w3*y1) B[l](w2*y2) B[m](w1*y3); w3^(l+m) w2^(k+m) w1^(k+l)",
];

const T2: [&str; 6] = [
    "multi; ; B[k](w1*y1) B[l](w2*y2) S[m](w3); w1^(l+m) w2^(k+m) w3^(k+l-1)",
    "multi; ; B[k](w1*y1) B[l](w3*y2) S[m](w2); w1^(l+m) w3^(k+m) w2^(k+l-1)",
    "multi; ; B[k](w2*y1) B[l](w1*y2) S[m](w3); w2^(l+m) w1^(k+m) w3^(k+l-1)",
    "multi; ; B[k](w2*y1) B[l](w3*y2) S[m](w1); w2^(l+m) w3^(k+m) w1^(k+l-1)",
    "multi; ; B[k](w3*y1) B[l](w2*y2) S[m](w1); w3^(l+m) w2^(k+m) w1^(k+l-1)",
    "multi; ; B[k](w3*y1) B[l](w1*y2) S[m](w2); w3^(l+m) w1^(k+m) w2^(k+l-1)",
];

const T5: [&str; 6] = [
    "binom; i<w1; B[k](w3*y1) B[n-k](w2*y2 + w2/w1*i); w1^(n-1) w3^(n-k) w2^(k)",
    "binom; i<w1; B[k](w2*y1) B[n-k](w3*y2 + w3/w1*i); w1^(n-1) w2^(n-k) w3^(k)",
    "binom; i<w2; B[k](w3*y1) B[n-k](w1*y2 + w1/w2*i); w2^(n-1) w3^(n-k) w1^(k)",
    "binom; i<w2; B[k](w1*y1) B[n-k](w3*y2 + w3/w2*i); w2^(n-1) w1^(n-k) w3^(k)",
    "binom; i<w3; B[k](w2*y1) B[n-k](w1*y2 + w1/w3*i); w3^(n-1) w2^(n-k) w1^(k)",
    "binom; i<w3; B[k](w1*y1) B[n-k](w2*y2 + w2/w3*i); w3^(n-1) w1^(n-k) w2^(k)",
];

const T8: [&str; 3] = [
    "multi; ; B[k](w1*y1) S[l](w2) S[m](w3); w1^(l+m) w2^(k+m-1) w3^(k+l-1)",
    "multi; ; B[k](w2*y1) S[l](w3) S[m](w1); w2^(l+m) w3^(k+m-1) w1^(k+l-1)",
    "multi; ; B[k](w3*y1) S[l](w1) S[m](w2); w3^(l+m) w1^(k+m-1) w2^(k+l-1)",
];

const T11: [&str; 6] = [
    "binom; i<w1; B[k](w2*y1 + w2/w1*i) S[n-k](w3); w1^(n-1) w2^(n-k) w3^(k-1)",
    "binom; i<w1; B[k](w3*y1 + w3/w1*i) S[n-k](w2); w1^(n-1) w3^(n-k) w2^(k-1)",
    "binom; i<w2; B[k](w1*y1 + w1/w2*i) S[n-k](w3); w2^(n-1) w1^(n-k) w3^(k-1)",
    "binom; i<w2; B[k](w3*y1 + w3/w2*i) S[n-k](w1); w2^(n-1) w3^(n-k) w1^(k-1)",
    "binom; i<w3; B[k](w1*y1 + w1/w3*i) S[n-k](w2); w3^(n-1) w1^(n-k) w2^(k-1)",
    "binom; i<w3; B[k](w2*y1 + w2/w3*i) S[n-k](w1); w3^(n-1) w2^(n-k) w1^(k-1)",
];

const T14_HEAD: [&str; 2] = [
    "single; i<w1, j<w2; B[n](w3*y1 + w3/w1*i + w3/w2*j); w1^(n-1) w2^(n-1)",
    "single; i<w2, j<w3; B[n](w1*y1 + w1/w2*i + w1/w3*j); w2^(n-1) w3^(n-1)",
];
const T14_THIRD_LITERAL: &str = "single; i<w3, j<w1; B[n](w2*y1 + w2/w3*i + w2/w3*j); w3^(n-1) w1^(n-1)";
const T14_THIRD_PATTERN: &str = "single; i<w3, j<w1; B[n](w2*y1 + w2/w3*i + w2/w1*j); w3^(n-1) w1^(n-1)";

const T16: [&str; 2] = [
    "multi; ; B[k](w1*y1) B[l](w2*y1) B[m](w3*y1); w3^(k) w1^(l) w2^(m)",
    "multi; ; B[k](w1*y1) B[l](w3*y1) B[m](w2*y1); w2^(k) w1^(l) w3^(m)",
];

const T17: [&str; 2] = [
    "multi; ; S[k](w1) S[l](w2) S[m](w3); w3^(k-1) w1^(l-1) w2^(m-1)",
    "multi; ; S[k](w1) S[l](w3) S[m](w2); w2^(k-1) w1^(l-1) w3^(m-1)",
];

const C3: [&str; 6] = [
    "binom; ; B[k](w1*y1) B[n-k](w2*y2); w1^(n-k) w2^(k)",
    "binom; ; B[k](w2*y1) B[n-k](w1*y2); w2^(n-k) w1^(k)",
    "multi; ; B[k](y1) B[l](w2*y2) S[m](w1); w2^(k+m) w1^(k+l-1)",
    "multi; ; B[k](w2*y1) B[l](y2) S[m](w1); w2^(l+m) w1^(k+l-1)",
    "multi; ; B[k](y1) B[l](w1*y2) S[m](w2); w1^(k+m) w2^(k+l-1)",
    "multi; ; B[k](w1*y1) B[l](y2) S[m](w2); w1^(l+m) w2^(k+l-1)",
];

const C4: [&str; 3] = [
    "binom; ; B[k](w1*y1) B[n-k](y2); w1^(n-k)",
    "binom; ; B[k](y1) B[n-k](w1*y2); w1^(k)",
    "multi; ; B[k](y1) B[l](y2) S[m](w1); w1^(k+l-1)",
];

const C6: [&str; 6] = [
    "binom; ; B[k](w1*y1) B[n-k](w2*y2); w1^(n-k) w2^(k)",
    "binom; ; B[k](w2*y1) B[n-k](w1*y2); w2^(n-k) w1^(k)",
    "binom; i<w1; B[k](y1) B[n-k](w2*y2 + w2/w1*i); w1^(n-1) w2^(k)",
    "binom; i<w1; B[k](w2*y1) B[n-k](y2 + i/w1); w1^(n-1) w2^(n-k)",
    "binom; i<w2; B[k](y1) B[n-k](w1*y2 + w1/w2*i); w2^(n-1) w1^(k)",
    "binom; i<w2; B[k](w1*y1) B[n-k](y2 + i/w2); w2^(n-1) w1^(n-k)",
];

const C7: [&str; 3] = [
    "binom; ; B[k](y1) B[n-k](w1*y2); w1^(k)",
    "binom; ; B[k](y2) B[n-k](w1*y1); w1^(k)",
    "binom; i<w1; B[k](y1) B[n-k](y2 + i/w1); w1^(n-1)",
];

const C9: [&str; 3] = [
    "binom; ; B[k](w1*y1) S[n-k](w2); w1^(n-k) w2^(k-1)",
    "binom; ; B[k](w2*y1) S[n-k](w1); w2^(n-k) w1^(k-1)",
    "multi; ; B[k](y1) S[l](w1) S[m](w2); w1^(k+m-1) w2^(k+l-1)",
];

const C10: [&str; 2] = ["single; ; B[n](w1*y1); ", "binom; ; B[k](y1) S[n-k](w1); w1^(k-1)"];

const C12: [&str; 6] = [
    "single; i<w1; B[n](w2*y1 + w2/w1*i); w1^(n-1)",
    "single; i<w2; B[n](w1*y1 + w1/w2*i); w2^(n-1)",
    "binom; ; B[k](w2*y1) S[n-k](w1); w2^(n-k) w1^(k-1)",
    "binom; ; B[k](w1*y1) S[n-k](w2); w1^(n-k) w2^(k-1)",
    "binom; i<w1; B[k](y1 + i/w1) S[n-k](w2); w1^(n-1) w2^(k-1)",
    "binom; i<w2; B[k](y1 + i/w2) S[n-k](w1); w2^(n-1) w1^(k-1)",
];

const C13: [&str; 3] = [
    "single; ; B[n](w1*y1); ",
    "single; i<w1; B[n](y1 + i/w1); w1^(n-1)",
    "binom; ; B[k](y1) S[n-k](w1); w1^(k-1)",
];

const C15: [&str; 3] = [
    "single; j<w1; B[n](w2*y1 + w2/w1*j); w1^(n-1)",
    "single; i<w2; B[n](w1*y1 + w1/w2*i); w2^(n-1)",
    "single; i<w1, j<w2; B[n](y1 + i/w1 + j/w2); w1^(n-1) w2^(n-1)",
];

const C18: [&str; 2] = [
    "binom; ; S[k](w2) S[n-k](w1); w1^(k)",
    "binom; ; S[k](w1) S[n-k](w2); w2^(k)",
];

const INTRO: [&str; 8] = [
    "binom; ; B[k](w1*y1) S[n-k](w2); w1^(n-k) w2^(k-1)",
    "binom; ; B[k](w2*y1) S[n-k](w1); w2^(n-k) w1^(k-1)",
    "single; i<w1; B[n](w2*y1 + w2/w1*i); w1^(n-1)",
    "single; i<w2; B[n](w1*y1 + w1/w2*i); w2^(n-1)",
    "multi; ; B[k](y1) S[l](w1) S[m](w2); w1^(k+m-1) w2^(k+l-1)",
    "binom; i<w1; B[k](y1 + i/w1) S[n-k](w2); w1^(n-1) w2^(k-1)",
    "binom; i<w2; B[k](y1 + i/w2) S[n-k](w1); w2^(n-1) w1^(k-1)",
    "single; i<w1, j<w2; B[n](y1 + i/w1 + j/w2); w1^(n-1) w2^(n-1)",
];

/// Raw displays that differ from a theorem side only by renaming the
/// summation indices.
pub(crate) const T8_RELABELED: [&str; 3] = [
    "multi; ; B[k](w1*y1) S[l](w3) S[m](w2); w1^(l+m) w3^(k+m-1) w2^(k+l-1)",
    "multi; ; B[k](w2*y1) S[l](w1) S[m](w3); w2^(l+m) w1^(k+m-1) w3^(k+l-1)",
    "multi; ; B[k](w3*y1) S[l](w2) S[m](w1); w3^(l+m) w2^(k+m-1) w1^(k+l-1)",
];

pub(crate) const T17_RELABELED: [&str; 4] = [
    "multi; ; S[k](w2) S[l](w3) S[m](w1); w1^(k-1) w2^(l-1) w3^(m-1)",
    "multi; ; S[k](w3) S[l](w1) S[m](w2); w2^(k-1) w3^(l-1) w1^(m-1)",
    "multi; ; S[k](w3) S[l](w2) S[m](w1); w1^(k-1) w3^(l-1) w2^(m-1)",
    "multi; ; S[k](w2) S[l](w1) S[m](w3); w3^(k-1) w2^(l-1) w1^(m-1)",
];

pub(crate) fn parse_all(sources: &[&str]) -> Vec<SideTemplate> {
    sources
        .iter()
        .map(|s| SideTemplate::parse(s).unwrap_or_else(|e| panic!("registry template: {e}")))
        .collect()
}

fn build(id: FamilyId, sources: &[&str], weight_arity: u8) -> IdentityFamily {
    let sides = parse_all(sources);
    let mut y_vars: Vec<Var> = sides.iter().flat_map(|s| s.variables()).collect();
    y_vars.sort();
    y_vars.dedup();
    IdentityFamily {
        id,
        sides,
        y_vars,
        weight_arity,
    }
}

pub(crate) fn t14(variant: T14Variant) -> IdentityFamily {
    let third = match variant {
        T14Variant::Literal => T14_THIRD_LITERAL,
        T14Variant::PatternCompleted => T14_THIRD_PATTERN,
    };
    build(FamilyId::T14, &[T14_HEAD[0], T14_HEAD[1], third], 3)
}

pub(crate) fn lookup(id: FamilyId) -> IdentityFamily {
    use FamilyId::*;
    match id {
        T1 => build(id, &self::T1, 3),
        T2 => build(id, &self::T2, 3),
        T5 => build(id, &self::T5, 3),
        T8 => build(id, &self::T8, 3),
        T11 => build(id, &self::T11, 3),
        T14 => t14(T14Variant::PatternCompleted),
        T16 => build(id, &self::T16, 3),
        T17 => build(id, &self::T17, 3),
        C3 => build(id, &self::C3, 2),
        C4 => build(id, &self::C4, 1),
        C6 => build(id, &self::C6, 2),
        C7 => build(id, &self::C7, 1),
        C9 => build(id, &self::C9, 2),
        C10 => build(id, &self::C10, 1),
        C12 => build(id, &self::C12, 2),
        C13 => build(id, &self::C13, 1),
        C15 => build(id, &self::C15, 2),
        C18 => build(id, &self::C18, 2),
        Intro => build(id, &self::INTRO, 2),
    }
}
