#pragma once

/**
 * @file random.hpp
 * @brief Seeded generators for jets, points and programs used by the
 * property suites.
 */

#include <cstdint>
#include <random>
#include <vector>

#include "jetlie/jet.hpp"
#include "jetlie/program.hpp"

namespace jetlie {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// Uniform in [-scale, scale].
double uniform(Rng& rng, double scale = 1.0);

std::vector<double> random_vector(Rng& rng, std::size_t n, double scale = 1.0);

/// Uniform in the closed ball of radius @p radius (rejection sampling).
std::vector<double> random_ball_point(Rng& rng, std::size_t n, double radius);

/// Every coefficient uniform in [-scale, scale].
JetScalar random_jet(Rng& rng, int order, double scale = 1.0);
JetVector random_jet_vector(Rng& rng, int order, std::size_t dim, double scale = 1.0);

/// Random polynomial map R^arity -> R^codim built from +, -, * and small
/// integer constants; total degree stays at most 2^depth.
SmoothProgram random_polynomial_program(Rng& rng, int arity, int codim, int depth = 3);

/// Random map using every primitive, arranged so that arguments stay inside
/// the domains of log, sqrt and division for all real inputs.
SmoothProgram random_transcendental_program(Rng& rng, int arity, int codim, int depth = 3);

}  // namespace jetlie
