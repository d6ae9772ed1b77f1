#include "wnnsel/neighbors.hpp"

#include <algorithm>
#include <cmath>

namespace wnnsel {

void DistanceRequest::validate() const {
    if (q != 1 && q != 2) fail(ErrorCode::invalid_config, "q must be 1 or 2");
    if (!(omega >= 0.0)) fail(ErrorCode::invalid_config, "omega must be nonnegative");
    if (association == nullptr) {
        fail(ErrorCode::invalid_config, "distance request needs an association matrix");
    }
}

std::size_t smc_distance(const CategoricalMatrix& z, std::size_t i, std::size_t j) {
    std::size_t count = 0;
    for (std::size_t s = 0; s < z.cols(); ++s) {
        const Code a = z.at(i, s);
        const Code b = z.at(j, s);
        if (a == kMissing || b == kMissing) continue;
        if (a != b) ++count;
    }
    return count;
}

double minkowski_cat(const DummyMatrix& zd, std::size_t i, std::size_t j, int q) {
    if (q != 1 && q != 2) fail(ErrorCode::invalid_config, "q must be 1 or 2");
    // A mismatching one-hot block contributes |1-0|^q at exactly two dummy
    // positions, so the block sum is 2 for either q.
    std::size_t mismatches = 0;
    for (std::size_t s = 0; s < zd.attributes(); ++s) {
        const Code a = zd.code(i, s);
        const Code b = zd.code(j, s);
        if (a == kMissing || b == kMissing) continue;
        if (a != b) ++mismatches;
    }
    const double sum = 2.0 * static_cast<double>(mismatches);
    return q == 1 ? sum : std::sqrt(sum);
}

double d_cat_sel(const DummyMatrix& zd, const MissingMask& mask, std::size_t i, std::size_t j,
                 const DistanceRequest& req) {
    req.validate();
    const std::size_t p = zd.attributes();
    if (req.association->size != p) {
        fail(ErrorCode::wrong_shape, "association matrix size does not match attribute count");
    }
    std::size_t valid = 0;
    double sum = 0.0;
    for (std::size_t l = 0; l < p; ++l) {
        if (!mask.observed(i, l) || !mask.observed(j, l)) continue;
        ++valid;
        if (zd.code(i, l) != zd.code(j, l)) {
            // Two unit differences per mismatching block, each weighted by
            // C(delta_sl) = |delta_sl|^omega.
            sum += 2.0 * std::pow(std::abs(req.association->at(req.target_attribute, l)),
                                  req.omega);
        }
    }
    if (valid == 0) {
        fail(ErrorCode::no_overlap, "rows " + std::to_string(i) + " and " + std::to_string(j) +
                                        " share no observed attributes");
    }
    const double scaled = sum / static_cast<double>(valid);
    return req.q == 1 ? scaled : std::sqrt(scaled);
}

double kernel_value(KernelKind kind, double u) {
    switch (kind) {
        case KernelKind::gaussian: return std::exp(-0.5 * u * u);
        case KernelKind::triangular: return std::max(0.0, 1.0 - u);
    }
    fail(ErrorCode::invalid_config, "unknown kernel");
}

namespace detail {

void sort_candidates(std::vector<Candidate>& candidates) {
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.row < b.row;  // deterministic order among ties
    });
}

}  // namespace detail

NeighborWeights neighbor_weights(std::vector<Candidate> candidates, double lambda,
                                 KernelKind kind) {
    return neighbor_weights_with(std::move(candidates), lambda,
                                 [kind](double u) { return kernel_value(kind, u); });
}

}  // namespace wnnsel
