//! Z_3^n-equivariant triangulations of tori, coned torus blocks, complex
//! projective spaces and toric manifolds over simple polytopes, together
//! with the exact checks that certify them.

pub mod block;
pub mod homology;
pub mod polytope;
pub mod simplicial;
pub mod toric;
pub mod torus;
