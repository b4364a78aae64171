//! Stable citation anchors attached to computed outcomes and report records.

pub const CLOSED_FORM: &str = "jet/closed-form-coefficients";
pub const EXPANSION: &str = "jet/tangent-expansion";
pub const SPECIAL_CASES: &str = "jet/special-cases";
pub const VANISHING_COEFFICIENTS: &str = "jet/coefficients-vanish-above-m-plus-1";
pub const NEXT_TO_DIAGONAL: &str = "jet/coefficients-rank-m-plus-1";
pub const DIAGONAL: &str = "jet/coefficients-rank-m";
pub const BELOW_DIAGONAL: &str = "jet/coefficients-rank-m-minus-1";
pub const ALTERNATING_SUMS: &str = "jet/alternating-binomial-sums";
pub const EQUAL_RANK_RELATION: &str = "jet/equal-rank-sectional-relation";
pub const PLUCKER: &str = "plucker/plane-curve-codegree";

pub const HQF_CLOSED_FORM: &str = "hqf/closed-form";
pub const HQF_RECURSION: &str = "hqf/divisor-recursion";
pub const HQF_FOURFOLD: &str = "hqf/fourfold-rewrite";
pub const HQF_SINGULAR_FIBERS: &str = "hqf/singular-fibers";

pub const SCROLL_DEFECT: &str = "defect/scroll-n-minus-2m";
pub const DISCRIMINANT_IRREDUCIBLE: &str = "discriminant/incidence-image-irreducible";
pub const EQUAL_RANK_EXCEPTION: &str = "defect/equal-rank-exception";
pub const EQUAL_RANK_LOW_DIMENSION: &str = "defect/equal-rank-exception-low-dimension";
pub const CODEGREE_DICTIONARY: &str = "defect/codegree-vanishing";
pub const MAXIMAL_DEFECT: &str = "classify/defect-n-projective-space";
pub const DEFECT_N_MINUS_1: &str = "classify/defect-n-minus-1-excluded";
pub const SCROLL_OVER_CURVE: &str = "classify/defect-n-minus-2-scroll-over-curve";
pub const DEFECT_N_MINUS_3: &str = "classify/defect-n-minus-3-excluded";
pub const PICARD_ONE_GRASSMANNIAN: &str = "classify/defect-n-minus-4-picard-one";
pub const RANK_FROM_TOP_CHERN: &str = "rank/top-chern-one-forces-equal-rank";
pub const CONORMAL_DEF0: &str = "conormal/def0-n-minus-m";
pub const CONORMAL_TANGENT_DEVELOPABLE: &str = "conormal/tangent-developable";
