//! Exact clique counting and extremal verification for graphs with a
//! minimum-degree constraint.
//!
//! Write `delta = (1 - beta) n` and `p = ceil(1/beta) - 1`, so graphs with
//! minimum degree `delta` are forced to contain cliques on `p + 1` vertices
//! but not necessarily on `p + 2`. This crate provides, all in exact rational
//! arithmetic:
//!
//! - bit-row graphs with deterministic clique enumeration ([`graph`],
//!   [`cliques`]);
//! - the clique-degree calculus `D`, `D_-`, `D_+`, heaviness and the derived
//!   slack functions ([`cliques`]);
//! - the extremal-count polynomial `g_r(beta)`, its identities, and the
//!   coefficient functions of the near-Turán regime ([`formulas`]);
//! - construction of and membership tests for the conjectured extremal
//!   family ([`construction`]);
//! - verifiers for every inequality in the underlying analysis, reporting
//!   exact slack and equality cases ([`verify`]);
//! - ground-truth machinery: exhaustive minimum-clique search over small
//!   graphs, seeded random graphs of given minimum degree, and isomorphism
//!   testing ([`oracle`]);
//! - a random-graph verification campaign runner ([`campaign`]).
//!
//! ```
//! use mindeg_cliques::prelude::*;
//!
//! // the octahedron is the extremal graph for triangles at n = 6, delta = 4
//! let g = build_extremal(6, &rat(1, 3))?;
//! let stats = count_cliques(&g, 4)?;
//! assert_eq!(stats.k(3), 8);
//! assert_eq!(stats.k(4), 0);
//! assert!(is_member_of_family(&g, &rat(1, 3))?);
//! # Ok::<(), mindeg_cliques::Error>(())
//! ```

pub mod campaign;
pub mod cliques;
pub mod construction;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod graph6;
pub mod oracle;
pub mod rational;
pub mod report;
pub mod verify;

pub use error::{Error, Result};

/// One-stop imports for the common API surface.
pub mod prelude {
    pub use crate::cliques::{
        classify_bad_4cliques, clique_degree, clique_table, count_cliques, degree_record, eta,
        eta_tilde, is_heavy_free, widetilde_d, CliqueStats, CliqueTable,
    };
    pub use crate::construction::{
        build_extremal, extremal_params, is_member_of_family, k3_reg_min_bruteforce,
        triangle_free_regular, ExtremalParams, Feasibility,
    };
    pub use crate::error::{Error, Result};
    pub use crate::formulas::{
        check_identity_g, coefficient_table, epsilon_p_lower_bound, g_r, p_from_beta,
        predicted_k_r, r_of_beta, varphi, GIdentity,
    };
    pub use crate::graph::{Graph, VertexSet};
    pub use crate::graph6::{parse_graph6, serialize_graph6};
    pub use crate::oracle::{
        are_isomorphic, brute_force_k_r, check_extremal_uniqueness, random_graph_min_degree,
        BruteForceOptions, DegreeMode, SearchResult,
    };
    pub use crate::rational::{parse_rational, rat, rat_int, Rational};
    pub use crate::report::VerificationReport;
    pub use crate::verify::*;
}

#[cfg(doctest)]
mod book {
    //! The guide chapters double as doc-tests so the book's snippets stay in
    //! sync with the library.
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    pub mod graphs {}
    #[doc = include_str!("../../../book/src/clique-calculus.md")]
    pub mod clique_calculus {}
    #[doc = include_str!("../../../book/src/extremal-family.md")]
    pub mod extremal_family {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    pub mod polynomials {}
    #[doc = include_str!("../../../book/src/verification.md")]
    pub mod verification {}
    #[doc = include_str!("../../../book/src/search.md")]
    pub mod search {}
}
