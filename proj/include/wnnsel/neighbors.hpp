#pragma once

#include <cstddef>
#include <vector>

#include "wnnsel/association.hpp"
#include "wnnsel/types.hpp"

namespace wnnsel {

enum class KernelKind { gaussian, triangular };

/// Parameters of the attribute-weighted selective distance: the distance is
/// specific to the attribute being imputed, whose association row supplies
/// the per-attribute weights |delta_sl|^omega.
struct DistanceRequest {
    std::size_t target_attribute = 0;
    int q = 1;  // Minkowski order, 1 or 2
    double omega = 0.0;
    const AssociationMatrix* association = nullptr;

    void validate() const;
};

/// Number of attributes observed in both rows and their values differ;
/// attribute pairs with any missing member are skipped.
std::size_t smc_distance(const CategoricalMatrix& z, std::size_t i, std::size_t j);

/// Minkowski distance on the dummy representation, restricted to blocks
/// observed in both rows.
double minkowski_cat(const DummyMatrix& zd, std::size_t i, std::size_t j, int q);

/// Attribute-weighted selective distance between rows i and j:
///   ( (1/a_ij) sum_l sum_c |z_ilc - z_jlc|^q 1{o_il=1} 1{o_jl=1} |delta_sl|^omega )^(1/q)
/// with a_ij the count of attributes observed in both rows. Throws a
/// no-overlap error when a_ij = 0.
double d_cat_sel(const DummyMatrix& zd, const MissingMask& mask, std::size_t i, std::size_t j,
                 const DistanceRequest& req);

/// gaussian: exp(-u^2/2); triangular: max(0, 1-u). Any positive constant
/// factor cancels in weight normalization.
double kernel_value(KernelKind kind, double u);

struct Candidate {
    std::size_t row = 0;
    double distance = 0.0;
};

/// Kernel weights over a candidate list, sorted by ascending distance.
struct NeighborWeights {
    std::vector<std::size_t> neighbor_rows;
    std::vector<double> distances;  // nondecreasing
    std::vector<double> weights;    // nonnegative, sum to 1
};

/// w_j = K(d_j/lambda) / sum_h K(d_h/lambda). If every kernel value is zero
/// (compact support, or underflow far in the Gaussian tail) the nearest
/// candidate receives weight 1.
NeighborWeights neighbor_weights(std::vector<Candidate> candidates, double lambda,
                                 KernelKind kind);

/// Same, with an arbitrary kernel. Weights are invariant under rescaling the
/// kernel by a positive constant.
template <typename Kernel>
NeighborWeights neighbor_weights_with(std::vector<Candidate> candidates, double lambda,
                                      Kernel&& kernel);

namespace detail {

void sort_candidates(std::vector<Candidate>& candidates);

// Shared weight computation over already-sorted distances; mirrors the
// neighbor_weights contract including the all-zero fallback.
template <typename Kernel>
void kernel_weights_into(const std::vector<double>& sorted_distances, double lambda,
                         Kernel&& kernel, std::vector<double>& out) {
    out.assign(sorted_distances.size(), 0.0);
    double total = 0.0;
    for (std::size_t h = 0; h < sorted_distances.size(); ++h) {
        const double k = kernel(sorted_distances[h] / lambda);
        out[h] = k;
        total += k;
    }
    if (total <= 0.0) {
        out.assign(sorted_distances.size(), 0.0);
        out[0] = 1.0;  // list is sorted, slot 0 is the nearest row
        return;
    }
    for (double& w : out) w /= total;
}

}  // namespace detail

template <typename Kernel>
NeighborWeights neighbor_weights_with(std::vector<Candidate> candidates, double lambda,
                                      Kernel&& kernel) {
    if (candidates.empty()) {
        fail(ErrorCode::no_candidates, "neighbor_weights requires at least one candidate");
    }
    if (!(lambda > 0.0)) {
        fail(ErrorCode::invalid_config, "lambda must be positive");
    }
    detail::sort_candidates(candidates);
    NeighborWeights out;
    out.neighbor_rows.reserve(candidates.size());
    out.distances.reserve(candidates.size());
    for (const Candidate& c : candidates) {
        out.neighbor_rows.push_back(c.row);
        out.distances.push_back(c.distance);
    }
    detail::kernel_weights_into(out.distances, lambda, kernel, out.weights);
    return out;
}

}  // namespace wnnsel
