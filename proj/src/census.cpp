#include "anglelab/census.hpp"

#include "anglelab/detail/parallel.hpp"
#include "anglelab/errors.hpp"
#include "anglelab/rng.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace anglelab {

namespace {

using detail::resolve_threads;
using detail::run_workers;

void check_triple_cap(std::size_t triples, std::size_t cap) {
    if (triples > cap) {
        throw TooLarge("triple enumeration of " + std::to_string(triples) +
                       " exceeds the cap of " + std::to_string(cap));
    }
}

struct DegenerateWitness {
    std::array<std::size_t, 3> triple;

    bool lex_less(const DegenerateWitness& other) const {
        return std::lexicographical_compare(triple.begin(), triple.end(), other.triple.begin(),
                                            other.triple.end());
    }
};

void finalize_histogram(CensusReport& report) {
    report.distinct_count = report.classes.size();
    report.max_multiplicity = 0;
    report.multiplicity_histogram.clear();
    for (const auto& cls : report.classes) {
        ++report.multiplicity_histogram[cls.multiplicity];
        report.max_multiplicity = std::max(report.max_multiplicity, cls.multiplicity);
    }
}

void finalize_interclass_gap(CensusReport& report) {
    if (report.classes.size() < 2) {
        report.min_interclass_gap = std::nullopt;
        return;
    }
    Real best = report.classes[1].lo - report.classes[0].hi;
    for (std::size_t i = 2; i < report.classes.size(); ++i) {
        const Real gap = report.classes[i].lo - report.classes[i - 1].hi;
        if (gap < best) best = gap;
    }
    report.min_interclass_gap = to_double(best);
}

// Enumerates triples (i < j < k) of [0, n); when pinned, only those with
// i == 0. Workers take the outer index round-robin.
template <class Body>
void for_each_triple(std::size_t n, bool pinned, int nthreads, Body body) {
    run_workers(nthreads, [&](int t, int count) {
        if (pinned) {
            // Outer loop over j for balance; i is fixed at 0.
            for (std::size_t j = 1 + static_cast<std::size_t>(t); j + 1 < n;
                 j += static_cast<std::size_t>(count)) {
                for (std::size_t k = j + 1; k < n; ++k) body(t, 0, j, k);
            }
        } else {
            for (std::size_t i = static_cast<std::size_t>(t); i + 2 < n;
                 i += static_cast<std::size_t>(count)) {
                for (std::size_t j = i + 1; j + 1 < n; ++j) {
                    for (std::size_t k = j + 1; k < n; ++k) body(t, i, j, k);
                }
            }
        }
    });
}

struct KeyLess {
    bool operator()(const AngleKey& a, const AngleKey& b) const { return angle_key_less(a, b); }
};

CensusReport census_exact_impl(const std::vector<RationalPoint2>& points, bool pinned,
                               const CensusOptions& options) {
    const std::size_t n = points.size();
    if (n < 3) throw InvalidParameter("census needs at least 3 points");
    const std::size_t triples = pinned ? binomial2(n - 1) : binomial3(n);
    check_triple_cap(triples, options.triple_cap);

    const int nthreads = resolve_threads(options.threads);
    struct Local {
        std::map<AngleKey, std::size_t, KeyLess> counts;
        std::size_t degenerate = 0;
        std::optional<DegenerateWitness> first_degenerate;
    };
    std::vector<Local> locals(static_cast<std::size_t>(nthreads));

    for_each_triple(n, pinned, nthreads, [&](int t, std::size_t i, std::size_t j, std::size_t k) {
        auto& local = locals[static_cast<std::size_t>(t)];
        try {
            const auto keys = angle_keys_of_triple(points[i], points[j], points[k]);
            for (const auto& key : keys) ++local.counts[key];
        } catch (const DegenerateAngle&) {
            ++local.degenerate;
            DegenerateWitness witness{{i, j, k}};
            if (!local.first_degenerate || witness.lex_less(*local.first_degenerate)) {
                local.first_degenerate = witness;
            }
        }
    });

    std::map<AngleKey, std::size_t, KeyLess> merged;
    std::size_t degenerate = 0;
    std::optional<DegenerateWitness> first_degenerate;
    for (auto& local : locals) {
        for (const auto& [key, count] : local.counts) merged[key] += count;
        degenerate += local.degenerate;
        if (local.first_degenerate &&
            (!first_degenerate || local.first_degenerate->lex_less(*first_degenerate))) {
            first_degenerate = local.first_degenerate;
        }
    }

    if (degenerate > 0 && !options.lenient) {
        const auto& w = first_degenerate->triple;
        std::ostringstream os;
        os << "collinear triple (" << w[0] << ", " << w[1] << ", " << w[2]
           << ") in strict census";
        throw DegenerateTriple(os.str());
    }

    CensusReport report;
    report.n_points = n;
    report.mode = "exact";
    report.tolerance = std::nullopt;
    report.triples_enumerated = triples;
    report.degenerate_skipped = degenerate;
    report.precision_bits = kDefaultPrecisionBits;
    report.pinned = pinned;
    report.classes.reserve(merged.size());
    for (const auto& [key, count] : merged) {  // map order is ascending angle order
        AngleClass cls;
        cls.representative = angle_from_key(key, kDefaultPrecisionBits);
        cls.lo = cls.representative;
        cls.hi = cls.representative;
        cls.multiplicity = count;
        cls.key = key;
        report.classes.push_back(std::move(cls));
    }
    finalize_histogram(report);
    finalize_interclass_gap(report);
    return report;
}

CensusReport census_numeric_impl(const std::vector<RealPoint2>& points, unsigned bits, bool pinned,
                                 const CensusOptions& options) {
    const std::size_t n = points.size();
    if (n < 3) throw InvalidParameter("census needs at least 3 points");
    if (options.tolerance <= 0) throw InvalidParameter("tolerance must be positive");
    const std::size_t triples = pinned ? binomial2(n - 1) : binomial3(n);
    check_triple_cap(triples, options.triple_cap);

    PrecisionGuard guard(bits);
    const int nthreads = resolve_threads(options.threads);
    struct Local {
        std::vector<Real> values;
        std::size_t degenerate = 0;
        std::optional<DegenerateWitness> first_degenerate;
    };
    std::vector<Local> locals(static_cast<std::size_t>(nthreads));

    for_each_triple(n, pinned, nthreads, [&](int t, std::size_t i, std::size_t j, std::size_t k) {
        auto& local = locals[static_cast<std::size_t>(t)];
        try {
            auto values = angle_values_of_triple(points[i], points[j], points[k], bits);
            for (auto& v : values) local.values.push_back(std::move(v.radians));
        } catch (const DegenerateAngle&) {
            ++local.degenerate;
            DegenerateWitness witness{{i, j, k}};
            if (!local.first_degenerate || witness.lex_less(*local.first_degenerate)) {
                local.first_degenerate = witness;
            }
        }
    });

    std::vector<Real> values;
    std::size_t degenerate = 0;
    std::optional<DegenerateWitness> first_degenerate;
    for (auto& local : locals) {
        values.insert(values.end(), std::make_move_iterator(local.values.begin()),
                      std::make_move_iterator(local.values.end()));
        degenerate += local.degenerate;
        if (local.first_degenerate &&
            (!first_degenerate || local.first_degenerate->lex_less(*first_degenerate))) {
            first_degenerate = local.first_degenerate;
        }
    }

    if (degenerate > 0 && !options.lenient) {
        const auto& w = first_degenerate->triple;
        std::ostringstream os;
        os << "degenerate triple (" << w[0] << ", " << w[1] << ", " << w[2]
           << ") in strict census";
        throw DegenerateTriple(os.str());
    }

    // Global sort makes the single-linkage merge independent of the worker
    // count and of input point order up to exactly equal values.
    std::sort(values.begin(), values.end());

    CensusReport report;
    report.n_points = n;
    report.mode = "numeric";
    report.tolerance = options.tolerance;
    report.triples_enumerated = triples;
    report.degenerate_skipped = degenerate;
    report.precision_bits = bits;
    report.pinned = pinned;

    const Real tol(options.tolerance);
    std::size_t run_start = 0;
    for (std::size_t i = 1; i <= values.size(); ++i) {
        if (i == values.size() || values[i] - values[i - 1] >= tol) {
            AngleClass cls;
            cls.representative = values[run_start];
            cls.lo = values[run_start];
            cls.hi = values[i - 1];
            cls.multiplicity = i - run_start;
            report.classes.push_back(std::move(cls));
            run_start = i;
        }
    }
    finalize_histogram(report);
    finalize_interclass_gap(report);
    return report;
}

}  // namespace

CensusReport census_bruteforce(const std::vector<RationalPoint2>& points,
                               const CensusOptions& options) {
    return census_exact_impl(points, /*pinned=*/false, options);
}

CensusReport census_bruteforce(const std::vector<RealPoint2>& points, unsigned bits,
                               const CensusOptions& options) {
    return census_numeric_impl(points, bits, /*pinned=*/false, options);
}

CensusReport census_pinned(const std::vector<RealPoint2>& points, unsigned bits,
                           const CensusOptions& options) {
    auto report = census_numeric_impl(points, bits, /*pinned=*/true, options);
    if (report.distinct_count > 3 * binomial2(report.n_points - 1)) {
        throw Error("internal: pinned census exceeded 3*C(n-1,2) distinct angles");
    }
    return report;
}

CensusReport census_pinned_spiral(const SpiralConfig& config, const CensusOptions& options) {
    return census_pinned(config.points, config.precision_bits, options);
}

ReducedTriple reduce_triple(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c) {
    if (a.size() != b.size() || a.size() != c.size()) {
        throw DimensionMismatch("triple points have mismatched dimensions");
    }
    ReducedTriple out{{a, b, c}};
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::int64_t m = std::min({a[i], b[i], c[i]});
        out.points[0][i] -= m;
        out.points[1][i] -= m;
        out.points[2][i] -= m;
    }
    return out;
}

std::size_t count_translation_classes(const std::vector<LatticePoint>& points,
                                      std::size_t ordered_triple_cap) {
    if (points.empty()) return 0;
    const std::size_t n = points.size();
    const auto ordered = static_cast<std::uint64_t>(n) * n * n;
    if (n > 3'000'000 || ordered > ordered_triple_cap) {
        throw TooLarge("ordered triple enumeration of " + std::to_string(n) +
                       "^3 exceeds the cap");
    }
    const std::size_t d = points.front().size();

    // Reduced coordinates stay within [0, span]; pack them into a single
    // mixed-radix key when it fits 64 bits.
    std::int64_t span = 0;
    for (const auto& p : points) {
        if (p.size() != d) throw DimensionMismatch("points have mixed dimensions");
        for (const auto v : p) span = std::max(span, v < 0 ? -v : v);
    }
    const auto radix = static_cast<std::uint64_t>(2 * span + 1);
    const bool packable = 3.0 * static_cast<double>(d) * std::log2(static_cast<double>(radix)) < 63.0;

    std::unordered_set<std::uint64_t> packed;
    std::set<ReducedTriple> unpacked;
    for (const auto& a : points) {
        for (const auto& b : points) {
            for (const auto& c : points) {
                const auto reduced = reduce_triple(a, b, c);
                if (packable) {
                    std::uint64_t key = 0;
                    for (std::size_t i = 0; i < d; ++i) {
                        key = key * radix + static_cast<std::uint64_t>(reduced.points[0][i]);
                        key = key * radix + static_cast<std::uint64_t>(reduced.points[1][i]);
                        key = key * radix + static_cast<std::uint64_t>(reduced.points[2][i]);
                    }
                    packed.insert(key);
                } else {
                    unpacked.insert(reduced);
                }
            }
        }
    }
    return packable ? packed.size() : unpacked.size();
}

BigInt n_r_d(std::int64_t r, int d) {
    if (r < 0) throw InvalidParameter("r must be >= 0");
    if (d < 1) throw InvalidParameter("d must be >= 1");
    const BigInt base = BigInt(3) * r * r + BigInt(3) * r + 1;  // (r+1)^3 - r^3
    return pow(base, d);
}

namespace {

struct LatticeHash {
    std::size_t operator()(const LatticePoint& p) const {
        std::size_t h = 1469598103934665603ULL;
        for (const auto v : p) {
            h ^= static_cast<std::size_t>(v) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

}  // namespace

ProjectionPropertyReport verify_projection_property(const std::vector<LatticePoint>& source,
                                                    const ProjectionFrame& frame,
                                                    std::size_t trials, std::uint64_t seed) {
    const std::size_t n = source.size();
    if (n < 2) throw InvalidParameter("need at least 2 source points");
    const std::size_t d = source.front().size();
    if (static_cast<int>(d) != frame.d) {
        throw DimensionMismatch("frame dimension does not match the source points");
    }
    if (trials == 0) throw InvalidParameter("trials must be positive");

    PrecisionGuard guard(frame.precision_bits);

    std::unordered_map<LatticePoint, std::size_t, LatticeHash> index;
    index.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) index.emplace(source[i], i);

    // A nontrivial quadruple exists iff some nonzero difference vector is
    // shared by two distinct ordered pairs.
    {
        bool exists = false;
        std::unordered_map<LatticePoint, std::pair<std::size_t, std::size_t>, LatticeHash> seen;
        for (std::size_t i = 0; i < n && !exists; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                LatticePoint diff(d);
                for (std::size_t c = 0; c < d; ++c) diff[c] = source[i][c] - source[j][c];
                auto [it, inserted] = seen.emplace(std::move(diff), std::make_pair(i, j));
                if (!inserted && it->second != std::make_pair(i, j)) {
                    exists = true;
                    break;
                }
            }
        }
        if (!exists) {
            throw NoQuadruplesFound("no difference-equal quadruple exists in the source");
        }
    }

    std::vector<std::array<Real, 2>> image(n);
    for (std::size_t i = 0; i < n; ++i) {
        Real x = 0, y = 0;
        for (std::size_t c = 0; c < d; ++c) {
            x += frame.e1[c] * source[i][c];
            y += frame.e2[c] * source[i][c];
        }
        image[i] = {std::move(x), std::move(y)};
    }

    // Explicit return type: sqrt(...) alone would yield an expression
    // template referencing the dead locals.
    const auto planar_dist = [&](std::size_t a, std::size_t b) -> Real {
        const Real dx = image[a][0] - image[b][0];
        const Real dy = image[a][1] - image[b][1];
        return sqrt(dx * dx + dy * dy);
    };

    SplitMix64 rng(seed);
    ProjectionPropertyReport report;
    Real worst(-1);
    std::size_t found = 0;
    // Existence is established above, so sampling terminates; the cap only
    // guards against pathological rejection rates.
    std::uint64_t attempts = 0;
    const std::uint64_t attempt_cap = std::max<std::uint64_t>(1'000'000, trials * 10'000ULL);
    while (found < trials) {
        if (++attempts > attempt_cap) {
            throw RetriesExhausted("sampling failed to hit difference-equal quadruples");
        }
        const auto i1 = static_cast<std::size_t>(rng.next_below(n));
        const auto i2 = static_cast<std::size_t>(rng.next_below(n));
        const auto i3 = static_cast<std::size_t>(rng.next_below(n));
        if (i1 == i2) continue;  // zero difference is excluded
        LatticePoint p4(d);
        for (std::size_t c = 0; c < d; ++c) {
            p4[c] = source[i3][c] - (source[i1][c] - source[i2][c]);
        }
        const auto it = index.find(p4);
        if (it == index.end()) continue;
        const std::size_t i4 = it->second;
        if (i1 == i3 && i2 == i4) continue;  // same ordered pair twice
        ++found;

        const Real d1 = planar_dist(i1, i2);
        const Real d2 = planar_dist(i3, i4);
        const Real hi = d1 > d2 ? d1 : d2;
        const Real rel = hi == 0 ? Real(0) : abs(d1 - d2) / hi;
        if (rel > worst) {
            worst = rel;
            report.worst_quadruple = {i1, i2, i3, i4};
        }
    }
    report.trials = found;
    report.max_relative_error = to_double(worst);
    return report;
}

}  // namespace anglelab
