#include "anglelab/subset.hpp"

#include "anglelab/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace anglelab {

std::optional<IndexTriplePair> find_equivalent_triples(const std::vector<long>& q, long n) {
    if (n < 1) throw InvalidInput("n must be positive");
    std::set<long> elements;
    for (const long v : q) {
        if (v < 1 || v > n) {
            throw InvalidInput("subset element " + std::to_string(v) + " outside [1, " +
                               std::to_string(n) + "]");
        }
        elements.insert(v);
    }
    if (elements.size() < 3) return std::nullopt;

    const std::vector<long> sorted(elements.begin(), elements.end());
    // Pairs sharing a difference automatically have distinct first and
    // distinct second elements, so any three of them form valid triples.
    std::map<long, std::vector<std::pair<long, long>>> buckets;  // diff -> (x, y), x > y
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            buckets[sorted[j] - sorted[i]].emplace_back(sorted[j], sorted[i]);
        }
    }
    for (auto& [diff, pairs] : buckets) {  // ascending difference
        if (pairs.size() < 3) continue;
        std::sort(pairs.begin(), pairs.end());  // three smallest first elements
        IndexTriplePair out;
        for (std::size_t i = 0; i < 3; ++i) {
            out.s[i] = pairs[i].first;
            out.t[i] = pairs[i].second;
        }
        out.shift = diff;
        return out;
    }
    return std::nullopt;
}

std::optional<RepeatedAngleWitness> repeated_angle_witness(const SpiralConfig& config,
                                                           const std::vector<long>& subset,
                                                           double tolerance) {
    if (tolerance <= 0) throw InvalidParameter("tolerance must be positive");
    const auto pair = find_equivalent_triples(subset, static_cast<long>(config.n));
    if (!pair) return std::nullopt;

    const unsigned bits = config.precision_bits;
    PrecisionGuard guard(bits);
    const auto point = [&](long j) { return config.points[static_cast<std::size_t>(j - 1)]; };

    RepeatedAngleWitness witness;
    witness.pair = *pair;
    bool seeded = false;
    for (int pos = 0; pos < 3; ++pos) {
        const int a = (pos + 1) % 3, b = (pos + 2) % 3;
        const Real angle_s =
            angle_value(point(pair->s[static_cast<std::size_t>(pos)]),
                        point(pair->s[static_cast<std::size_t>(a)]),
                        point(pair->s[static_cast<std::size_t>(b)]), bits)
                .radians;
        const Real angle_t =
            angle_value(point(pair->t[static_cast<std::size_t>(pos)]),
                        point(pair->t[static_cast<std::size_t>(a)]),
                        point(pair->t[static_cast<std::size_t>(b)]), bits)
                .radians;
        const Real disc = abs(angle_s - angle_t);
        if (!seeded || disc < witness.discrepancy) {
            seeded = true;
            witness.angle_s = angle_s;
            witness.angle_t = angle_t;
            witness.discrepancy = disc;
            witness.vertex_position = pos;
        }
    }
    if (witness.discrepancy > Real(tolerance)) {
        std::ostringstream os;
        os << "witness discrepancy " << real_str(witness.discrepancy) << " exceeds tolerance "
           << tolerance << "; raise precision_bits";
        throw WitnessDiscrepancyTooLarge(os.str());
    }
    return witness;
}

long rgen_threshold(long n) {
    if (n < 1) throw InvalidParameter("n must be positive");
    const auto target = 2 * static_cast<unsigned long long>(n) - 1;
    long m = 0;
    while (binomial2(static_cast<std::uint64_t>(m)) < target) ++m;
    if (m > rgen_threshold_bound(n)) {
        throw Error("internal: threshold exceeded its closed-form bound");
    }
    return m;
}

long rgen_threshold_bound(long n) {
    if (n < 1) throw InvalidParameter("n must be positive");
    // Smallest k with (2k-1)^2 >= 16n, i.e. k >= sqrt(n)*2 + 1/2.
    long k = 1;
    while (true) {
        const auto side = static_cast<unsigned long long>(2 * k - 1);
        if (side * side >= 16 * static_cast<unsigned long long>(n)) return k;
        ++k;
    }
}

namespace {

// Cached vertex-angle triples; the search and the certificate census use the
// same values at the same precision, so their distinctness verdicts agree.
struct TripleAngles {
    std::array<Real, 3> values;
    bool degenerate = false;
};

class SearchContext {
public:
    SearchContext(const std::vector<RealPoint2>& points, unsigned bits, double tolerance)
        : points_(points), bits_(bits), tolerance_(tolerance), tol_real_(tolerance) {}

    const TripleAngles& angles(std::size_t i, std::size_t j, std::size_t k) {
        const std::size_t n = points_.size();
        const std::size_t key = (i * n + j) * n + k;
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        TripleAngles entry;
        try {
            auto vals = angle_values_of_triple(points_[i], points_[j], points_[k], bits_);
            for (std::size_t v = 0; v < 3; ++v) entry.values[v] = std::move(vals[v].radians);
        } catch (const DegenerateAngle&) {
            entry.degenerate = true;
        }
        return cache_.emplace(key, std::move(entry)).first->second;
    }

    // All 3*C(m,3) angles of the subset pairwise distinct (gaps >= tolerance)?
    bool all_distinct(const std::vector<std::size_t>& subset) {
        scratch_.clear();
        for (std::size_t a = 0; a + 2 < subset.size(); ++a) {
            for (std::size_t b = a + 1; b + 1 < subset.size(); ++b) {
                for (std::size_t c = b + 1; c < subset.size(); ++c) {
                    const auto& entry = angles(subset[a], subset[b], subset[c]);
                    if (entry.degenerate) return false;
                    for (const auto& v : entry.values) scratch_.push_back(&v);
                }
            }
        }
        std::sort(scratch_.begin(), scratch_.end(),
                  [](const Real* a, const Real* b) { return *a < *b; });
        for (std::size_t i = 1; i < scratch_.size(); ++i) {
            if (*scratch_[i] - *scratch_[i - 1] < tol_real_) return false;
        }
        return true;
    }

    CensusReport certify(const std::vector<std::size_t>& subset) const {
        CensusReport report;
        report.mode = "numeric";
        report.tolerance = tolerance_;
        report.n_points = subset.size();
        report.precision_bits = bits_;
        if (subset.size() < 3) return report;  // no angles: trivially distinct
        std::vector<RealPoint2> pts;
        pts.reserve(subset.size());
        for (const auto i : subset) pts.push_back(points_[i]);
        CensusOptions options;
        options.tolerance = tolerance_;
        return census_bruteforce(pts, bits_, options);
    }

private:
    const std::vector<RealPoint2>& points_;
    unsigned bits_;
    double tolerance_;
    Real tol_real_;
    std::map<std::size_t, TripleAngles> cache_;
    std::vector<const Real*> scratch_;
};

SubsetSearchResult finish(SearchContext& ctx, const std::vector<std::size_t>& subset,
                          bool exhausted, std::size_t tested) {
    SubsetSearchResult result;
    result.indices.reserve(subset.size());
    for (const auto i : subset) result.indices.push_back(static_cast<long>(i) + 1);
    std::sort(result.indices.begin(), result.indices.end());
    result.certificate = ctx.certify(subset);
    result.budget_exhausted = exhausted;
    result.candidates_tested = tested;
    if (result.certificate.max_multiplicity > 1) {
        throw Error("internal: subset certificate has a repeated angle");
    }
    return result;
}

}  // namespace

SubsetSearchResult search_distinct_angle_subset(const std::vector<RealPoint2>& points,
                                                unsigned bits, SubsetSearchStrategy strategy,
                                                std::size_t budget, double tolerance) {
    const std::size_t n = points.size();
    if (n < 2) throw InvalidParameter("subset search needs at least 2 points");
    if (tolerance <= 0) throw InvalidParameter("tolerance must be positive");
    PrecisionGuard guard(bits);
    SearchContext ctx(points, bits, tolerance);

    if (strategy == SubsetSearchStrategy::greedy) {
        std::vector<std::size_t> subset;
        std::size_t tested = 0;
        bool exhausted = false;
        std::vector<std::size_t> candidate;
        for (std::size_t i = 0; i < n; ++i) {
            if (tested >= budget) {
                exhausted = true;
                break;
            }
            ++tested;
            candidate = subset;
            candidate.push_back(i);
            if (ctx.all_distinct(candidate)) subset = candidate;
        }
        return finish(ctx, subset, exhausted, tested);
    }

    if (n > 15) {
        throw InvalidParameter("exhaustive subset search is limited to n <= 15");
    }
    std::size_t tested = 0;
    for (std::size_t size = n; size >= 3; --size) {
        // Lexicographic combinations of the given size; the first success is
        // the lexicographically smallest maximum subset.
        std::vector<std::size_t> comb(size);
        for (std::size_t i = 0; i < size; ++i) comb[i] = i;
        while (true) {
            if (tested >= budget) {
                return finish(ctx, {0, 1}, true, tested);
            }
            ++tested;
            if (ctx.all_distinct(comb)) {
                return finish(ctx, comb, false, tested);
            }
            bool advanced = false;
            for (std::size_t pos = size; pos-- > 0;) {
                if (comb[pos] < pos + n - size) {
                    ++comb[pos];
                    for (std::size_t i = pos + 1; i < size; ++i) comb[i] = comb[i - 1] + 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
    }
    // No size >= 3 works; any two points are trivially distinct.
    return finish(ctx, {0, 1}, false, tested);
}

}  // namespace anglelab
