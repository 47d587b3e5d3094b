#include "anglelab/configurations.hpp"

#include "anglelab/errors.hpp"
#include "anglelab/rng.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace anglelab {

std::string config_kind(const Configuration& config) {
    struct Visitor {
        std::string operator()(const SpiralConfig&) const { return "spiral"; }
        std::string operator()(const LatticeConfig&) const { return "grid"; }
        std::string operator()(const ShellConfig&) const { return "shell"; }
        std::string operator()(const NgonConfig&) const { return "ngon"; }
        std::string operator()(const ProjectedConfig&) const { return "projected"; }
        std::string operator()(const PlanarConfig&) const { return "points"; }
    };
    return std::visit(Visitor{}, config);
}

std::size_t config_size(const Configuration& config) {
    return std::visit(
        [](const auto& c) -> std::size_t {
            if constexpr (requires { c.points.size(); }) {
                return c.points.size();
            } else {
                return c.real_points.size();
            }
        },
        config);
}

Real default_spiral_beta(std::size_t n, unsigned bits) {
    if (n == 0) throw InvalidParameter("n must be positive");
    PrecisionGuard guard(bits);
    return Real(1) / Real(static_cast<unsigned long>(n));
}

SpiralConfig spiral_config(std::size_t n, const Real& beta, unsigned bits) {
    if (n < 3) throw InvalidParameter("spiral needs n >= 3, got n = " + std::to_string(n));
    if (!(beta > 0)) throw InvalidParameter("beta must be positive");
    PrecisionGuard guard(bits);

    SpiralConfig config;
    config.n = n;
    config.beta = at_precision(beta, bits);
    config.precision_bits = bits;
    config.points.reserve(n);
    for (std::size_t j = 1; j <= n; ++j) {
        const Real theta = config.beta * static_cast<unsigned long>(j);
        const Real radius = exp(theta);
        config.points.push_back(RealPoint2{radius * cos(theta), radius * sin(theta), bits});
    }
    return config;
}

std::array<RealPoint2, 3> f_alpha_index_shift(const SpiralConfig& config,
                                              const std::array<long, 3>& triple, long k) {
    std::array<RealPoint2, 3> out;
    for (std::size_t i = 0; i < 3; ++i) {
        const long j = triple[i];
        if (j < 1 || j > static_cast<long>(config.n)) {
            throw IndexOutOfRange("triple index " + std::to_string(j) + " outside [1, " +
                                  std::to_string(config.n) + "]");
        }
        const long shifted = j + k;
        if (shifted < 1 || shifted > static_cast<long>(config.n)) {
            throw IndexOutOfRange("shifted index " + std::to_string(shifted) + " outside [1, " +
                                  std::to_string(config.n) + "]");
        }
        out[i] = config.points[static_cast<std::size_t>(shifted - 1)];
    }
    return out;
}

namespace {

std::size_t checked_grid_size(std::int64_t r, int d, std::size_t cap) {
    if (r < 0) throw InvalidParameter("grid needs r >= 0");
    if (d < 1) throw InvalidParameter("grid needs d >= 1");
    const BigInt total = pow(BigInt(r + 1), d);
    if (total > cap) {
        std::ostringstream os;
        os << "grid with (r+1)^d = " << total << " points exceeds the cap of " << cap;
        throw TooLarge(os.str());
    }
    return static_cast<std::size_t>(total);
}

}  // namespace

LatticeConfig grid(std::int64_t r, int d, std::size_t point_cap) {
    const std::size_t total = checked_grid_size(r, d, point_cap);

    LatticeConfig config;
    config.r = r;
    config.d = d;
    config.points.reserve(total);
    LatticePoint current(static_cast<std::size_t>(d), 0);
    while (true) {
        config.points.push_back(current);
        int pos = d - 1;
        while (pos >= 0 && current[static_cast<std::size_t>(pos)] == r) {
            current[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++current[static_cast<std::size_t>(pos)];
    }
    return config;
}

ShellConfig best_shell(std::int64_t r, int d, std::size_t point_cap) {
    const LatticeConfig base = grid(r, d, point_cap);

    std::map<std::int64_t, std::size_t> sizes;
    for (const auto& p : base.points) {
        std::int64_t f = 0;
        for (const auto v : p) f += v * v;
        ++sizes[f];
    }
    std::int64_t best_level = 0;
    std::size_t best_size = 0;
    for (const auto& [level, size] : sizes) {
        if (size > best_size) {  // map order makes ties resolve to the smallest level
            best_size = size;
            best_level = level;
        }
    }

    ShellConfig config;
    config.r = r;
    config.d = d;
    config.level = best_level;
    config.mean_bound = Rational(pow(BigInt(r + 1), d), BigInt(d) * r * r + 1);
    config.level_sizes = std::move(sizes);
    for (const auto& p : base.points) {
        std::int64_t f = 0;
        for (const auto v : p) f += v * v;
        if (f == best_level) config.points.push_back(p);
    }
    // A maximizer is at least the mean over all d r^2 + 1 levels.
    if (Rational(static_cast<std::int64_t>(config.points.size())) < config.mean_bound) {
        throw Error("internal: best shell smaller than the mean bound");
    }
    return config;
}

NgonConfig regular_ngon(std::size_t n, unsigned bits) {
    if (n < 3) throw InvalidParameter("ngon needs n >= 3, got n = " + std::to_string(n));
    PrecisionGuard guard(bits);

    NgonConfig config;
    config.n = n;
    config.precision_bits = bits;
    config.points.reserve(n);
    const Real two_pi = 2 * real_pi(bits);
    for (std::size_t k = 0; k < n; ++k) {
        const Real theta = two_pi * static_cast<unsigned long>(k) / static_cast<unsigned long>(n);
        config.points.push_back(RealPoint2{cos(theta), sin(theta), bits});
    }
    return config;
}

namespace {

// Exact-value comparison of projected points, for the injectivity check.
bool image_injective(const std::vector<RealPoint2>& image, std::pair<std::size_t, std::size_t>& clash) {
    std::vector<std::size_t> order(image.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (image[a].x != image[b].x) return image[a].x < image[b].x;
        return image[a].y < image[b].y;
    });
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const auto a = order[i], b = order[i + 1];
        if (image[a].x == image[b].x && image[a].y == image[b].y) {
            clash = {std::min(a, b), std::max(a, b)};
            return false;
        }
    }
    return true;
}

}  // namespace

ProjectedConfig generic_projection(const std::vector<LatticePoint>& source_points,
                                   std::uint64_t seed, const ProjectionOptions& options) {
    if (source_points.size() < 2) {
        throw InvalidParameter("projection needs at least 2 source points");
    }
    const std::size_t d = source_points.front().size();
    if (d < 3) throw InvalidParameter("projection needs source dimension >= 3");
    for (const auto& p : source_points) {
        if (p.size() != d) throw DimensionMismatch("source points have mixed dimensions");
    }
    {
        std::set<LatticePoint> unique(source_points.begin(), source_points.end());
        if (unique.size() != source_points.size()) {
            throw InvalidParameter("source points must be pairwise distinct");
        }
    }

    const unsigned bits = options.precision_bits;
    PrecisionGuard guard(bits);

    std::optional<bool> collinear_free;
    if (binomial3(source_points.size()) <= options.triple_cap) {
        collinear_free = !find_collinear_triple(source_points, options.triple_cap).has_value();
    }

    SplitMix64 rng(seed);
    std::string last_failure = "no attempt made";
    for (unsigned attempt = 0; attempt <= options.max_retries; ++attempt) {
        std::vector<Real> g1(d), g2(d);
        for (std::size_t i = 0; i < d; ++i) g1[i] = Real(rng.next_gaussian());
        for (std::size_t i = 0; i < d; ++i) g2[i] = Real(rng.next_gaussian());

        Real n1 = 0;
        for (const auto& v : g1) n1 += v * v;
        if (n1 == 0) {
            last_failure = "zero draw for the first frame vector";
            continue;
        }
        n1 = sqrt(n1);
        std::vector<Real> e1(d), e2(d);
        for (std::size_t i = 0; i < d; ++i) e1[i] = g1[i] / n1;

        Real proj = 0;
        for (std::size_t i = 0; i < d; ++i) proj += g2[i] * e1[i];
        Real n2 = 0;
        for (std::size_t i = 0; i < d; ++i) {
            e2[i] = g2[i] - proj * e1[i];
            n2 += e2[i] * e2[i];
        }
        if (n2 == 0) {
            last_failure = "second frame vector parallel to the first";
            continue;
        }
        n2 = sqrt(n2);
        for (std::size_t i = 0; i < d; ++i) e2[i] /= n2;

        std::vector<RealPoint2> image;
        image.reserve(source_points.size());
        for (const auto& p : source_points) {
            Real x = 0, y = 0;
            for (std::size_t i = 0; i < d; ++i) {
                x += e1[i] * p[i];
                y += e2[i] * p[i];
            }
            image.push_back(RealPoint2{std::move(x), std::move(y), bits});
        }

        std::pair<std::size_t, std::size_t> clash;
        if (!image_injective(image, clash)) {
            last_failure = "image not injective: points " + std::to_string(clash.first) + " and " +
                           std::to_string(clash.second) + " coincide";
            continue;
        }

        if (collinear_free.value_or(false)) {
            const std::uint64_t quads = source_points.size() < 4
                                            ? 0
                                            : binomial3(source_points.size()) *
                                                  (source_points.size() - 3) / 4;
            if (quads <= options.quad_cap) {
                const auto gp = general_position_numeric(image, bits, options.gp_margin,
                                                         options.threads);
                if (!gp.ok) {
                    std::ostringstream os;
                    os << "image fails the general-position margin " << options.gp_margin
                       << " (collinearity margin " << gp.min_collinearity_margin
                       << ", concyclicity margin " << gp.min_concyclicity_margin << ")";
                    last_failure = os.str();
                    continue;
                }
            }
        }

        ProjectedConfig out;
        out.frame.d = static_cast<int>(d);
        out.frame.precision_bits = bits;
        out.frame.seed = seed;
        out.frame.retries_used = attempt;
        out.frame.e1 = std::move(e1);
        out.frame.e2 = std::move(e2);
        out.points = std::move(image);
        out.source_kind = "lattice";
        out.source_d = static_cast<int>(d);
        out.source_r = 0;
        for (const auto& p : source_points) {
            for (const auto v : p) out.source_r = std::max(out.source_r, v);
        }
        out.source_points = source_points;
        out.source_collinear_free = collinear_free;
        return out;
    }
    throw RetriesExhausted("projection retries exhausted; last failure: " + last_failure);
}

std::vector<RealPoint2> planar_points(const Configuration& config) {
    struct Visitor {
        std::vector<RealPoint2> operator()(const SpiralConfig& c) const { return c.points; }
        std::vector<RealPoint2> operator()(const NgonConfig& c) const { return c.points; }
        std::vector<RealPoint2> operator()(const ProjectedConfig& c) const { return c.points; }
        std::vector<RealPoint2> operator()(const PlanarConfig& c) const { return c.real_points; }
        std::vector<RealPoint2> operator()(const LatticeConfig& c) const {
            return lattice_to_planar(c.points, c.d);
        }
        std::vector<RealPoint2> operator()(const ShellConfig& c) const {
            return lattice_to_planar(c.points, c.d);
        }
        static std::vector<RealPoint2> lattice_to_planar(const std::vector<LatticePoint>& pts,
                                                         int d) {
            if (d > 2) {
                throw InvalidParameter(
                    "lattice configuration of dimension > 2 has no planar points; project it "
                    "first");
            }
            PrecisionGuard guard(kDefaultPrecisionBits);
            std::vector<RealPoint2> out;
            out.reserve(pts.size());
            for (const auto& p : pts) {
                const long x = static_cast<long>(p[0]);
                const long y = d == 2 ? static_cast<long>(p[1]) : 0L;
                out.push_back(RealPoint2{Real(x), Real(y), kDefaultPrecisionBits});
            }
            return out;
        }
    };
    return std::visit(Visitor{}, config);
}

std::optional<std::vector<RationalPoint2>> rational_planar_points(const Configuration& config) {
    if (const auto* planar = std::get_if<PlanarConfig>(&config)) {
        if (planar->exact) return planar->rational_points;
        return std::nullopt;
    }
    const std::vector<LatticePoint>* pts = nullptr;
    int d = 0;
    if (const auto* g = std::get_if<LatticeConfig>(&config)) {
        pts = &g->points;
        d = g->d;
    } else if (const auto* s = std::get_if<ShellConfig>(&config)) {
        pts = &s->points;
        d = s->d;
    }
    if (pts == nullptr || d > 2) return std::nullopt;
    std::vector<RationalPoint2> out;
    out.reserve(pts->size());
    for (const auto& p : *pts) {
        out.push_back(RationalPoint2{Rational(p[0]), Rational(d == 2 ? p[1] : 0)});
    }
    return out;
}

unsigned config_precision_bits(const Configuration& config) {
    struct Visitor {
        unsigned operator()(const SpiralConfig& c) const { return c.precision_bits; }
        unsigned operator()(const NgonConfig& c) const { return c.precision_bits; }
        unsigned operator()(const ProjectedConfig& c) const { return c.frame.precision_bits; }
        unsigned operator()(const PlanarConfig& c) const { return c.precision_bits; }
        unsigned operator()(const LatticeConfig&) const { return kDefaultPrecisionBits; }
        unsigned operator()(const ShellConfig&) const { return kDefaultPrecisionBits; }
    };
    return std::visit(Visitor{}, config);
}

}  // namespace anglelab
