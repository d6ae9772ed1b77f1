#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "wnnsel/association.hpp"
#include "wnnsel/neighbors.hpp"
#include "wnnsel/types.hpp"

namespace wnnsel {

enum class Method { wnnsel_cat, wnnsel_dum, mode, knn_cat };

// Row-level distances for the equal-category-count kNN baseline.
enum class RowDistance { cohen, pcc, smc };

struct ImputationConfig {
    Method method = Method::wnnsel_cat;
    KernelKind kernel = KernelKind::gaussian;
    int q = 1;
    double lambda = 1.0;
    double omega = 2.0;
    // Neighbors entering the weighted estimate; nullopt means all available
    // candidates, the recommended setting where lambda does the tuning.
    std::optional<std::size_t> neighbor_count;
    AssociationMeasure association_measure = AssociationMeasure::cramers_v;
    RowDistance knn_distance = RowDistance::smc;
    std::uint64_t seed = 0;

    void validate() const;
};

struct ProbabilityVector {
    std::vector<double> values;  // length k_s, nonnegative, sum 1
};

struct ImputedCell {
    CellRef cell;
    Code value = kMissing;
    ProbabilityVector probabilities;
};

struct Diagnostics {
    std::size_t column_mode_fallbacks = 0;  // cells with no usable neighbors
    std::size_t global_mode_fallbacks = 0;
    std::size_t argmax_ties = 0;
    std::size_t mode_ties = 0;
    std::size_t all_missing_rows = 0;
    std::size_t short_neighbor_sets = 0;  // 5-NN initial pass with < 5 candidates
    std::size_t zero_variance_pairs = 0;  // degenerate dummy-correlation pairs

    Diagnostics& operator+=(const Diagnostics& other);
    friend bool operator==(const Diagnostics&, const Diagnostics&) = default;
};

struct ImputationResult {
    CategoricalMatrix completed;
    std::vector<ImputedCell> cells;  // ordered by (row, col)
    Diagnostics diagnostics;
};

/// Replaces every missing cell. Cells are imputed independently from the
/// originally observed data only (freshly imputed values never become
/// neighbors), so the result is invariant to scan order and thread count and
/// fully determined by (data, config, config.seed).
ImputationResult impute_matrix(const CategoricalMatrix& z, const ImputationConfig& config,
                               std::size_t threads = 0);

/// Column-mode baseline; ties between equally frequent categories are broken
/// uniformly at random, one draw per column.
ImputationResult mode_impute(const CategoricalMatrix& z, std::uint64_t seed);

/// Inverse-distance weighted k-nearest-neighbor baseline. Applicable only
/// when every attribute has the same number of categories.
ImputationResult knn_cat_impute(const CategoricalMatrix& z, std::size_t k, RowDistance distance,
                                std::uint64_t seed = 0, std::size_t threads = 0);

/// Unweighted 5-nearest-neighbor fill (SMC distance, mode of the neighbors),
/// used as the initial completion step of cross-validation.
CategoricalMatrix initial_impute_5nn(const CategoricalMatrix& z, std::uint64_t seed,
                                     Diagnostics* diagnostics = nullptr);

/// Single-cell operations behind impute_matrix; exposed for direct testing.
/// A cell with no usable neighbor falls back to the column mode (then global
/// mode), recorded in *diagnostics when given.
std::pair<Code, ProbabilityVector> impute_cell_wnnsel_cat(
    const CategoricalMatrix& z, const DummyMatrix& zd, const MissingMask& mask,
    const AssociationMatrix& association, std::size_t i, std::size_t s,
    const ImputationConfig& config, Diagnostics* diagnostics = nullptr);

std::pair<Code, ProbabilityVector> impute_cell_wnnsel_dum(
    const DummyMatrix& zd, const MissingMask& mask, const DummyCorrelation& correlation,
    std::size_t i, std::size_t s, const ImputationConfig& config,
    Diagnostics* diagnostics = nullptr);

namespace detail {

// Candidate rows and their distances for one target cell. For the dummy
// variant each target dummy column has its own distance vector (row-major:
// distances[c * rows.size() + idx]).
struct CellCandidates {
    std::vector<std::size_t> rows;
    std::vector<double> distances;
    std::size_t per_column = 1;  // 1 for the categorical variant, k_s for dummy
};

// Shared machinery between impute_matrix and cross-validation: association
// (or dummy-correlation) weights are prepared once per omega, then candidate
// distances are reused across every lambda of the grid.
class WnnselEngine {
public:
    // With a null override the association (or dummy correlation) is computed
    // from z itself, which is the impute_matrix behavior.
    WnnselEngine(const CategoricalMatrix& z, const ImputationConfig& config,
                 std::size_t threads, const AssociationMatrix* association_override = nullptr,
                 const DummyCorrelation* correlation_override = nullptr);

    // Re-derives the powered weight tables; distances must be recomputed.
    void set_omega(double omega);

    CellCandidates candidates(std::size_t i, std::size_t s) const;

    // Kernel-weighted decision for one cell at the given bandwidth. Pure:
    // identical inputs yield identical outcomes regardless of call order.
    struct Outcome {
        Code value = kMissing;
        ProbabilityVector probabilities;
        bool column_mode_fallback = false;
        bool global_mode_fallback = false;
        bool tie = false;
    };
    Outcome decide(const CellCandidates& cand, double lambda, std::size_t i,
                   std::size_t s) const;

    const Diagnostics& preparation_diagnostics() const { return prep_diagnostics_; }
    const AssociationMatrix& association() const { return association_; }

private:
    const CategoricalMatrix& z_;
    ImputationConfig config_;
    DummyMatrix zd_;
    MissingMask mask_;
    AssociationMatrix association_;   // categorical variant
    DummyCorrelation correlation_;    // dummy variant
    std::vector<double> powered_;     // |assoc|^omega (p x p) or |corr|^omega (D x D)
    std::vector<Code> column_modes_;  // fallback values, one seeded draw per column
    std::vector<std::uint8_t> column_mode_was_tie_;
    std::vector<std::uint8_t> column_mode_was_global_;
    std::vector<std::vector<double>> column_frequencies_;
    Diagnostics prep_diagnostics_;
};

}  // namespace detail

}  // namespace wnnsel
