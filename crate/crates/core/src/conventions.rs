//! Orientation, sign, smoothing, and grading conventions.
//!
//! Every module imports its conventions from here; nothing else in the crate
//! hard-codes a sign rule.
//!
//! # PD codes
//!
//! A crossing `X[a,b,c,d]` lists its four arc labels counterclockwise,
//! starting from the incoming under-strand. The under-strand runs `a -> c`.
//! The over-strand joins `b` and `d`; along each component label `x` is
//! followed by `x+1` (wrapping inside the component's label range), which
//! fixes the over-strand direction.
//!
//! # Crossing sign
//!
//! A crossing is **positive** when the over-strand runs from position `b` to
//! position `d`, negative when it runs `d -> b`. With this rule the diagram
//! `X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]` has writhe `+3` and is the positive
//! (right-handed) trefoil. Public knot tables that use the opposite sign rule
//! (KnotTheory, KnotInfo) therefore describe the mirror image under this
//! crate's reading; catalog records note this where it matters.
//!
//! # Smoothings
//!
//! The 0-smoothing (Kauffman `A`-smoothing) joins positions `(a,d)` and
//! `(b,c)`; the 1-smoothing joins `(a,b)` and `(c,d)`. At a positive crossing
//! the 0-smoothing is the oriented resolution.
//!
//! # Polynomials
//!
//! * Kauffman bracket: `<D> = sum A^(#0 - #1) d^(circles - 1)`, `d = -A^2 - A^-2`.
//! * Jones: `V(t) = (-A^3)^(-writhe) <D>` with `A = t^(-1/4)`.
//! * Unnormalized Jones: `J(q) = (q + q^-1) V(q^2)`; the positive trefoil gives
//!   `q + q^3 + q^5 - q^9`.
//!
//! # Khovanov gradings
//!
//! A generator at cube vertex `s` with circle labels in `{1, x}` has
//! homological degree `|s| - n_-` and quantum degree
//! `#1 - #x + |s| + n_+ - 2 n_-`. The unknot sits at `(0, ±1)`. The
//! deformation parameter `t` (with `x^2 = t`) has quantum degree `-4`.
//!
//! # Rasmussen s
//!
//! `s = s_min + 1 = s_max - 1` where `s_min < s_max` are the quantum degrees of
//! the two free generators of homology over `Q[t]` in homological degree 0.
//! The positive trefoil has `s = +2`.

/// Position of the incoming under-strand.
pub const UNDER_IN: usize = 0;
/// Position of the outgoing under-strand.
pub const UNDER_OUT: usize = 2;

/// Sign of a crossing given whether the over-strand enters at position `b`.
pub fn sign_from_over_entry(over_enters_at_b: bool) -> i8 {
    if over_enters_at_b {
        1
    } else {
        -1
    }
}

/// Position where the over-strand enters, for a crossing of the given sign.
pub fn over_in(sign: i8) -> usize {
    if sign > 0 {
        1
    } else {
        3
    }
}

/// Position where the over-strand leaves, for a crossing of the given sign.
pub fn over_out(sign: i8) -> usize {
    if sign > 0 {
        3
    } else {
        1
    }
}

/// Position pairs joined by the given smoothing (0 or 1).
pub const SMOOTHING: [[(usize, usize); 2]; 2] = [[(0, 3), (1, 2)], [(0, 1), (2, 3)]];

/// Quantum degree of the deformation parameter `t`.
pub const T_QDEG: i64 = -4;
