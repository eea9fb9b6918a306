#pragma once

#include <cstdint>

#include "piconelab/experiments.hpp"

namespace piconelab {

struct IdentityPair {
    NamedField u;
    NamedField v;
};

/// The standard admissible (u, v) corpora: u >= 0 (strictly positive in the
/// interior), v > 0 and -lap v > 0 on the whole domain.
std::vector<IdentityPair> identity_corpus_1d(); ///< on (0, 1)
std::vector<IdentityPair> identity_corpus_2d(); ///< on (0, 1)^2

Domain corpus_domain_1d();
Domain corpus_domain_2d();

/// Boundary-vanishing corpus for the Hardy experiment.
std::vector<NamedField> hardy_corpus(const Domain& dom);

/// Positive superharmonic-Laplacian candidates swept by the Sturm experiment.
std::vector<NamedField> sturm_candidates(const Domain& dom);

/// Deterministic uniform interior points, identical across platforms (the
/// generator maps raw 64-bit draws to doubles directly). Points keep a
/// 1e-3 relative margin from the boundary.
std::vector<Point> random_interior_points(const Domain& dom, int count, std::uint64_t seed);

} // namespace piconelab
