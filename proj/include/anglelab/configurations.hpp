#pragma once

#include "anglelab/geometry.hpp"
#include "anglelab/numeric.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace anglelab {

inline constexpr std::size_t kDefaultPointCap = 1'000'000;
inline constexpr std::size_t kDefaultTripleCap = 50'000'000;

/// Points (e^{j beta} cos(j beta), e^{j beta} sin(j beta)) for j = 1..n on the
/// logarithmic spiral r = e^theta, stored in Cartesian form. The polar
/// parameters (n, beta) are retained for index arithmetic on the spiral's
/// rotate-and-dilate self-maps.
struct SpiralConfig {
    std::size_t n = 0;
    Real beta;
    unsigned precision_bits = kDefaultPrecisionBits;
    std::vector<RealPoint2> points;
};

/// The full integer grid {0,...,r}^d in lexicographic order.
struct LatticeConfig {
    std::int64_t r = 0;
    int d = 1;
    std::vector<LatticePoint> points;
};

/// Grid points with squared norm equal to `level`; they lie on a common
/// sphere, so no three are collinear.
struct ShellConfig {
    std::int64_t r = 0;
    int d = 1;
    std::int64_t level = 0;
    std::vector<LatticePoint> points;
    Rational mean_bound;                            // (r+1)^d / (d r^2 + 1)
    std::map<std::int64_t, std::size_t> level_sizes;  // occupied levels only
};

/// Vertices of the unit-circumradius regular n-gon, vertex k at angle 2 pi k/n.
struct NgonConfig {
    std::size_t n = 0;
    unsigned precision_bits = kDefaultPrecisionBits;
    std::vector<RealPoint2> points;
};

/// Seeded random orthonormal 2-frame in dimension d. Orthonormality holds to
/// within 2^(8-precision_bits).
struct ProjectionFrame {
    int d = 0;
    unsigned precision_bits = kDefaultPrecisionBits;
    std::uint64_t seed = 0;
    unsigned retries_used = 0;
    std::vector<Real> e1, e2;
};

/// Planar image of a lattice configuration under a generic projection,
/// together with the frame and the source it came from.
struct ProjectedConfig {
    ProjectionFrame frame;
    std::vector<RealPoint2> points;
    std::string source_kind;  // "grid", "shell" or "lattice"
    std::int64_t source_r = 0;
    int source_d = 0;
    std::optional<std::int64_t> source_level;
    std::vector<LatticePoint> source_points;
    std::optional<bool> source_collinear_free;  // unset when too large to check
};

/// Free-form planar points loaded from a file; exact when every coordinate is
/// rational.
struct PlanarConfig {
    bool exact = false;
    unsigned precision_bits = kDefaultPrecisionBits;
    std::vector<RationalPoint2> rational_points;  // exact only
    std::vector<RealPoint2> real_points;          // always populated
};

using Configuration =
    std::variant<SpiralConfig, LatticeConfig, ShellConfig, NgonConfig, ProjectedConfig,
                 PlanarConfig>;

std::string config_kind(const Configuration& config);
std::size_t config_size(const Configuration& config);

SpiralConfig spiral_config(std::size_t n, const Real& beta, unsigned bits);

/// Default beta = 1/n at the requested precision.
Real default_spiral_beta(std::size_t n, unsigned bits);

/// Points of the index triple shifted by k: the rotate-and-dilate map with
/// alpha = k*beta restricted to configuration points. Indices are 1-based.
std::array<RealPoint2, 3> f_alpha_index_shift(const SpiralConfig& config,
                                              const std::array<long, 3>& triple, long k);

LatticeConfig grid(std::int64_t r, int d, std::size_t point_cap = kDefaultPointCap);

/// The level of maximum shell size (ties toward the smaller level). The
/// winner's size is at least the mean bound (r+1)^d / (d r^2 + 1).
ShellConfig best_shell(std::int64_t r, int d, std::size_t point_cap = kDefaultPointCap);

NgonConfig regular_ngon(std::size_t n, unsigned bits);

struct ProjectionOptions {
    unsigned max_retries = 16;
    unsigned precision_bits = kDefaultPrecisionBits;
    double gp_margin = 1e-12;  // image general-position margin when required
    std::size_t triple_cap = kDefaultTripleCap;
    std::size_t quad_cap = kDefaultTripleCap;
    int threads = 0;
};

/// Projects d-dimensional points (d >= 3) onto a seeded random orthonormal
/// 2-frame. Redraws the frame until the image is injective and, when the
/// source has no three collinear points, the image passes the numeric
/// general-position report. Throws RetriesExhausted with the last failure.
ProjectedConfig generic_projection(const std::vector<LatticePoint>& source_points,
                                   std::uint64_t seed, const ProjectionOptions& options = {});

/// Planar real points of any configuration (rational coordinates are
/// converted at the configuration's precision). Throws InvalidParameter for
/// lattice configurations of dimension > 2.
std::vector<RealPoint2> planar_points(const Configuration& config);

/// Exact rational planar points, when the configuration has them
/// (2-dimensional lattice configurations and exact planar files).
std::optional<std::vector<RationalPoint2>> rational_planar_points(const Configuration& config);

unsigned config_precision_bits(const Configuration& config);

}  // namespace anglelab
