#include "wnnsel/imputation.hpp"

#include <algorithm>
#include <cmath>

#include "wnnsel/parallel.hpp"
#include "wnnsel/rng.hpp"

namespace wnnsel {

void ImputationConfig::validate() const {
    if (q != 1 && q != 2) fail(ErrorCode::invalid_config, "q must be 1 or 2");
    if (!(lambda > 0.0)) fail(ErrorCode::invalid_config, "lambda must be positive");
    if (!(omega >= 0.0)) fail(ErrorCode::invalid_config, "omega must be nonnegative");
    if (neighbor_count && *neighbor_count < 1) {
        fail(ErrorCode::invalid_config, "neighbor count must be at least 1");
    }
    if (method == Method::knn_cat && !neighbor_count) {
        fail(ErrorCode::invalid_config, "knn_cat requires an explicit neighbor count");
    }
}

Diagnostics& Diagnostics::operator+=(const Diagnostics& other) {
    column_mode_fallbacks += other.column_mode_fallbacks;
    global_mode_fallbacks += other.global_mode_fallbacks;
    argmax_ties += other.argmax_ties;
    mode_ties += other.mode_ties;
    all_missing_rows += other.all_missing_rows;
    short_neighbor_sets += other.short_neighbor_sets;
    zero_variance_pairs += other.zero_variance_pairs;
    return *this;
}

namespace {

void require_observed_columns(const CategoricalMatrix& z) {
    for (std::size_t s = 0; s < z.cols(); ++s) {
        bool any = false;
        for (std::size_t i = 0; i < z.rows() && !any; ++i) any = z.observed(i, s);
        if (!any) {
            fail(ErrorCode::column_degenerate,
                 "column '" + z.attribute(s).name + "' has no observed values");
        }
    }
}

std::size_t count_all_missing_rows(const CategoricalMatrix& z) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < z.rows(); ++i) {
        bool any = false;
        for (std::size_t s = 0; s < z.cols() && !any; ++s) any = z.observed(i, s);
        if (!any) ++count;
    }
    return count;
}

// Argmax over scores with seeded uniform tie-breaking (bitwise-equal maxima).
Code seeded_argmax(const std::vector<double>& scores, Rng& rng, bool* tie) {
    double best = scores[0];
    for (double v : scores) best = std::max(best, v);
    std::vector<std::size_t> winners;
    for (std::size_t c = 0; c < scores.size(); ++c) {
        if (scores[c] == best) winners.push_back(c);
    }
    if (tie) *tie = winners.size() > 1;
    const std::size_t pick =
        winners.size() == 1 ? winners[0] : winners[rng.below(winners.size())];
    return static_cast<Code>(pick + 1);
}

struct ColumnFallback {
    Code value = kMissing;
    bool tie = false;      // the mode draw was between equally frequent categories
    bool global = false;   // column had no observed values
    std::vector<double> frequencies;  // observed distribution; one-hot when global
};

// Per-column fallback used when a cell has no usable neighbor: the seeded
// column mode, or (for a column with nothing observed) the most frequent code
// over the whole matrix that is valid for this column.
ColumnFallback column_fallback(const CategoricalMatrix& z, std::size_t s, std::uint64_t seed) {
    const std::size_t k = z.categories(s);
    ColumnFallback out;
    out.frequencies.assign(k, 0.0);
    std::size_t observed = 0;
    for (std::size_t i = 0; i < z.rows(); ++i) {
        const Code v = z.at(i, s);
        if (v == kMissing) continue;
        ++observed;
        out.frequencies[static_cast<std::size_t>(v - 1)] += 1.0;
    }
    if (observed > 0) {
        Rng rng(derive_seed(seed, streams::column_mode, s));
        out.value = seeded_argmax(out.frequencies, rng, &out.tie);
        for (double& f : out.frequencies) f /= static_cast<double>(observed);
        return out;
    }

    out.global = true;
    std::vector<double> code_counts(k, 0.0);
    for (std::size_t i = 0; i < z.rows(); ++i) {
        for (std::size_t l = 0; l < z.cols(); ++l) {
            const Code v = z.at(i, l);
            if (v != kMissing && static_cast<std::size_t>(v) <= k) {
                code_counts[static_cast<std::size_t>(v - 1)] += 1.0;
            }
        }
    }
    Rng rng(derive_seed(seed, streams::column_mode, s));
    out.value = seeded_argmax(code_counts, rng, &out.tie);
    out.frequencies.assign(k, 0.0);
    out.frequencies[static_cast<std::size_t>(out.value - 1)] = 1.0;
    return out;
}

// Kernel weights over possibly unsorted distances. When every kernel value is
// zero the candidate with the smallest (distance, row) gets weight 1, matching
// the neighbor_weights contract.
void weights_with_fallback(const std::vector<std::size_t>& rows, const double* distances,
                           std::size_t count, double lambda, KernelKind kind,
                           std::vector<double>& out) {
    out.assign(count, 0.0);
    double total = 0.0;
    for (std::size_t h = 0; h < count; ++h) {
        const double k = kernel_value(kind, distances[h] / lambda);
        out[h] = k;
        total += k;
    }
    if (total <= 0.0) {
        std::size_t nearest = 0;
        for (std::size_t h = 1; h < count; ++h) {
            if (distances[h] < distances[nearest] ||
                (distances[h] == distances[nearest] && rows[h] < rows[nearest])) {
                nearest = h;
            }
        }
        out.assign(count, 0.0);
        out[nearest] = 1.0;
        return;
    }
    for (double& w : out) w /= total;
}

}  // namespace

namespace detail {

WnnselEngine::WnnselEngine(const CategoricalMatrix& z, const ImputationConfig& config,
                           std::size_t threads, const AssociationMatrix* association_override,
                           const DummyCorrelation* correlation_override)
    : z_(z), config_(config), zd_(encode_dummies(z)), mask_(MissingMask::of(z)) {
    config_.validate();
    if (config_.method == Method::wnnsel_dum) {
        correlation_ = correlation_override ? *correlation_override
                                            : dummy_pearson_matrix(zd_, mask_, threads);
        prep_diagnostics_.zero_variance_pairs = correlation_.zero_variance_pairs;
    } else {
        association_ = association_override
                           ? *association_override
                           : association_matrix(z_, config_.association_measure, threads);
    }

    const std::size_t p = z_.cols();
    column_modes_.resize(p);
    column_mode_was_tie_.assign(p, 0);
    column_mode_was_global_.assign(p, 0);
    column_frequencies_.resize(p);
    for (std::size_t s = 0; s < p; ++s) {
        ColumnFallback fb = column_fallback(z_, s, config_.seed);
        column_modes_[s] = fb.value;
        column_mode_was_tie_[s] = fb.tie ? 1 : 0;
        column_mode_was_global_[s] = fb.global ? 1 : 0;
        column_frequencies_[s] = std::move(fb.frequencies);
    }

    set_omega(config_.omega);
}

void WnnselEngine::set_omega(double omega) {
    config_.omega = omega;
    if (config_.method == Method::wnnsel_dum) {
        const std::size_t d = correlation_.size;
        powered_.resize(d * d);
        for (std::size_t idx = 0; idx < d * d; ++idx) {
            powered_[idx] = std::pow(std::abs(correlation_.values[idx]), omega);
        }
    } else {
        const std::size_t p = association_.size;
        powered_.resize(p * p);
        for (std::size_t idx = 0; idx < p * p; ++idx) {
            powered_[idx] = std::pow(std::abs(association_.values[idx]), omega);
        }
    }
}

CellCandidates WnnselEngine::candidates(std::size_t i, std::size_t s) const {
    const std::size_t n = z_.rows();
    const std::size_t p = z_.cols();
    CellCandidates out;

    if (config_.method == Method::wnnsel_dum) {
        // One weighted Euclidean distance per target dummy column (s, c);
        // a mismatching block contributes the two powered weights of the
        // differing dummy positions.
        const std::size_t ks = zd_.block_size(s);
        const std::size_t d = correlation_.size;
        out.per_column = ks;
        std::vector<double> acc(ks);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || !mask_.observed(j, s)) continue;
            std::fill(acc.begin(), acc.end(), 0.0);
            std::size_t valid_dummies = 0;
            for (std::size_t l = 0; l < p; ++l) {
                if (!mask_.observed(i, l) || !mask_.observed(j, l)) continue;
                valid_dummies += zd_.block_size(l);
                const Code ci = zd_.code(i, l);
                const Code cj = zd_.code(j, l);
                if (ci == cj) continue;
                const std::size_t col_i = zd_.column_of(l, ci);
                const std::size_t col_j = zd_.column_of(l, cj);
                for (std::size_t c = 0; c < ks; ++c) {
                    const std::size_t target = zd_.block_offset(s) + c;
                    acc[c] += powered_[target * d + col_i] + powered_[target * d + col_j];
                }
            }
            if (valid_dummies == 0) continue;  // no shared observed attribute
            out.rows.push_back(j);
            for (std::size_t c = 0; c < ks; ++c) {
                out.distances.push_back(std::sqrt(acc[c] / static_cast<double>(valid_dummies)));
            }
        }
        // distances laid out per candidate; transpose to per-column slices
        if (!out.rows.empty()) {
            std::vector<double> by_column(out.distances.size());
            const std::size_t m = out.rows.size();
            for (std::size_t idx = 0; idx < m; ++idx) {
                for (std::size_t c = 0; c < ks; ++c) {
                    by_column[c * m + idx] = out.distances[idx * ks + c];
                }
            }
            out.distances = std::move(by_column);
        }
        return out;
    }

    const double* weight_row = &powered_[s * p];
    std::vector<Candidate> cand;
    cand.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i || !mask_.observed(j, s)) continue;
        std::size_t valid = 0;
        double acc = 0.0;
        for (std::size_t l = 0; l < p; ++l) {
            if (!mask_.observed(i, l) || !mask_.observed(j, l)) continue;
            ++valid;
            if (zd_.code(i, l) != zd_.code(j, l)) acc += 2.0 * weight_row[l];
        }
        if (valid == 0) continue;
        const double scaled = acc / static_cast<double>(valid);
        cand.push_back({j, config_.q == 1 ? scaled : std::sqrt(scaled)});
    }
    sort_candidates(cand);
    if (config_.neighbor_count && cand.size() > *config_.neighbor_count) {
        cand.resize(*config_.neighbor_count);
    }
    out.per_column = 1;
    out.rows.reserve(cand.size());
    out.distances.reserve(cand.size());
    for (const Candidate& c : cand) {
        out.rows.push_back(c.row);
        out.distances.push_back(c.distance);
    }
    return out;
}

WnnselEngine::Outcome WnnselEngine::decide(const CellCandidates& cand, double lambda,
                                           std::size_t i, std::size_t s) const {
    Outcome out;
    const std::size_t ks = z_.categories(s);
    Rng rng(derive_seed(config_.seed, streams::cell, i, s));

    if (cand.rows.empty()) {
        out.value = column_modes_[s];
        out.probabilities.values = column_frequencies_[s];
        out.column_mode_fallback = true;
        out.global_mode_fallback = column_mode_was_global_[s] != 0;
        out.tie = column_mode_was_tie_[s] != 0;
        return out;
    }

    const std::size_t m = cand.rows.size();
    std::vector<double> weights;
    std::vector<double> pi(ks, 0.0);

    if (config_.method == Method::wnnsel_dum) {
        // Estimate each target column with its own weights, then standardize.
        std::vector<std::size_t> order;
        for (std::size_t c = 0; c < ks; ++c) {
            const double* dist_c = &cand.distances[c * m];
            const std::size_t limit =
                config_.neighbor_count ? std::min(*config_.neighbor_count, m) : m;
            if (limit < m) {
                order.resize(m);
                for (std::size_t idx = 0; idx < m; ++idx) order[idx] = idx;
                std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                    if (dist_c[a] != dist_c[b]) return dist_c[a] < dist_c[b];
                    return cand.rows[a] < cand.rows[b];
                });
                order.resize(limit);
                std::vector<std::size_t> rows;
                std::vector<double> dists;
                rows.reserve(limit);
                dists.reserve(limit);
                for (std::size_t idx : order) {
                    rows.push_back(cand.rows[idx]);
                    dists.push_back(dist_c[idx]);
                }
                weights_with_fallback(rows, dists.data(), limit, lambda, KernelKind::gaussian,
                                      weights);
                for (std::size_t h = 0; h < limit; ++h) {
                    if (zd_.code(rows[h], s) == static_cast<Code>(c + 1)) pi[c] += weights[h];
                }
            } else {
                weights_with_fallback(cand.rows, dist_c, m, lambda, KernelKind::gaussian,
                                      weights);
                for (std::size_t h = 0; h < m; ++h) {
                    if (zd_.code(cand.rows[h], s) == static_cast<Code>(c + 1)) {
                        pi[c] += weights[h];
                    }
                }
            }
        }
        double total = 0.0;
        for (double v : pi) total += v;
        if (total <= 0.0) {
            out.value = column_modes_[s];
            out.probabilities.values = column_frequencies_[s];
            out.column_mode_fallback = true;
            out.global_mode_fallback = column_mode_was_global_[s] != 0;
            out.tie = column_mode_was_tie_[s] != 0;
            return out;
        }
        for (double& v : pi) v /= total;
    } else {
        weights_with_fallback(cand.rows, cand.distances.data(), m, lambda, config_.kernel,
                              weights);
        for (std::size_t h = 0; h < m; ++h) {
            pi[static_cast<std::size_t>(zd_.code(cand.rows[h], s) - 1)] += weights[h];
        }
    }

    out.value = seeded_argmax(pi, rng, &out.tie);
    out.probabilities.values = std::move(pi);
    return out;
}

}  // namespace detail

namespace {

using detail::CellCandidates;
using detail::WnnselEngine;

ImputationResult impute_wnnsel(const CategoricalMatrix& z, const ImputationConfig& config,
                               std::size_t threads) {
    const std::vector<CellRef> missing = z.missing_cells();
    ImputationResult result;
    result.completed = z;
    result.diagnostics.all_missing_rows = count_all_missing_rows(z);
    if (missing.empty()) return result;

    WnnselEngine engine(z, config, threads);
    result.diagnostics += engine.preparation_diagnostics();

    std::vector<WnnselEngine::Outcome> outcomes(missing.size());
    parallel_for(missing.size(), threads, [&](std::size_t idx) {
        const auto [i, s] = missing[idx];
        outcomes[idx] = engine.decide(engine.candidates(i, s), config.lambda, i, s);
    });

    result.cells.reserve(missing.size());
    for (std::size_t idx = 0; idx < missing.size(); ++idx) {
        const auto [i, s] = missing[idx];
        WnnselEngine::Outcome& o = outcomes[idx];
        result.completed.set(i, s, o.value);
        if (o.column_mode_fallback) ++result.diagnostics.column_mode_fallbacks;
        if (o.global_mode_fallback) ++result.diagnostics.global_mode_fallbacks;
        if (o.tie) {
            if (o.column_mode_fallback) ++result.diagnostics.mode_ties;
            else ++result.diagnostics.argmax_ties;
        }
        result.cells.push_back({missing[idx], o.value, std::move(o.probabilities)});
    }
    return result;
}

}  // namespace

ImputationResult impute_matrix(const CategoricalMatrix& z, const ImputationConfig& config,
                               std::size_t threads) {
    config.validate();
    z.validate();
    require_observed_columns(z);

    switch (config.method) {
        case Method::mode: return mode_impute(z, config.seed);
        case Method::knn_cat:
            return knn_cat_impute(z, *config.neighbor_count, config.knn_distance, config.seed,
                                  threads);
        case Method::wnnsel_cat:
        case Method::wnnsel_dum: return impute_wnnsel(z, config, threads);
    }
    fail(ErrorCode::invalid_config, "unknown imputation method");
}

ImputationResult mode_impute(const CategoricalMatrix& z, std::uint64_t seed) {
    z.validate();
    for (std::size_t s = 0; s < z.cols(); ++s) {
        bool any = false;
        for (std::size_t i = 0; i < z.rows() && !any; ++i) any = z.observed(i, s);
        if (!any) {
            fail(ErrorCode::column_degenerate,
                 "column '" + z.attribute(s).name + "' has no observed values to take a mode of");
        }
    }

    ImputationResult result;
    result.completed = z;
    result.diagnostics.all_missing_rows = count_all_missing_rows(z);

    std::vector<ColumnFallback> fallbacks;
    fallbacks.reserve(z.cols());
    for (std::size_t s = 0; s < z.cols(); ++s) fallbacks.push_back(column_fallback(z, s, seed));

    for (const CellRef& cell : z.missing_cells()) {
        const ColumnFallback& fb = fallbacks[cell.col];
        result.completed.set(cell.row, cell.col, fb.value);
        if (fb.tie) ++result.diagnostics.mode_ties;
        result.cells.push_back({cell, fb.value, {fb.frequencies}});
    }
    return result;
}

ImputationResult knn_cat_impute(const CategoricalMatrix& z, std::size_t k, RowDistance distance,
                                std::uint64_t seed, std::size_t threads) {
    z.validate();
    require_observed_columns(z);
    if (k < 1) fail(ErrorCode::invalid_config, "k must be at least 1");
    const std::size_t shared_k = z.cols() ? z.categories(0) : 0;
    for (std::size_t s = 1; s < z.cols(); ++s) {
        if (z.categories(s) != shared_k) {
            fail(ErrorCode::method_not_applicable,
                 "knn_cat requires every attribute to have the same number of categories");
        }
    }

    const std::size_t n = z.rows();
    const std::size_t p = z.cols();
    const std::vector<CellRef> missing = z.missing_cells();

    ImputationResult result;
    result.completed = z;
    result.diagnostics.all_missing_rows = count_all_missing_rows(z);
    if (missing.empty()) return result;

    std::vector<ColumnFallback> fallbacks;
    fallbacks.reserve(p);
    for (std::size_t s = 0; s < p; ++s) fallbacks.push_back(column_fallback(z, s, seed));

    // 1 - association between the paired values of the two rows, computed on
    // their shared_k x shared_k agreement table; degenerate tables count as
    // association 0.
    auto row_distance = [&](std::size_t i, std::size_t j, bool& usable) -> double {
        usable = false;
        if (distance == RowDistance::smc) {
            std::size_t overlap = 0;
            for (std::size_t l = 0; l < p; ++l) {
                if (z.observed(i, l) && z.observed(j, l)) ++overlap;
            }
            if (overlap == 0) return 0.0;
            usable = true;
            return static_cast<double>(smc_distance(z, i, j));
        }
        ContingencyTable t;
        t.rows = shared_k;
        t.cols = shared_k;
        t.counts.assign(shared_k * shared_k, 0);
        t.row_totals.assign(shared_k, 0);
        t.col_totals.assign(shared_k, 0);
        for (std::size_t l = 0; l < p; ++l) {
            const Code a = z.at(i, l);
            const Code b = z.at(j, l);
            if (a == kMissing || b == kMissing) continue;
            const std::size_t r = static_cast<std::size_t>(a - 1);
            const std::size_t c = static_cast<std::size_t>(b - 1);
            ++t.counts[r * shared_k + c];
            ++t.row_totals[r];
            ++t.col_totals[c];
            ++t.grand_total;
        }
        if (t.grand_total == 0) return 0.0;
        usable = true;
        double assoc = 0.0;
        try {
            assoc = distance == RowDistance::cohen ? cohens_kappa(t) : pcc(t);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::degenerate_margin && e.code() != ErrorCode::empty_table) {
                throw;
            }
            assoc = 0.0;
        }
        return 1.0 - assoc;
    };

    struct Outcome {
        Code value = kMissing;
        ProbabilityVector probabilities;
        bool fallback = false;
        bool global = false;
        bool tie = false;
    };
    std::vector<Outcome> outcomes(missing.size());

    parallel_for(missing.size(), threads, [&](std::size_t idx) {
        const auto [i, s] = missing[idx];
        std::vector<Candidate> cand;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || !z.observed(j, s)) continue;
            bool usable = false;
            const double d = row_distance(i, j, usable);
            if (usable) cand.push_back({j, d});
        }
        Outcome& o = outcomes[idx];
        if (cand.empty()) {
            const ColumnFallback& fb = fallbacks[s];
            o = {fb.value, {fb.frequencies}, true, fb.global, fb.tie};
            return;
        }
        detail::sort_candidates(cand);
        if (cand.size() > k) cand.resize(k);

        // Inverse-distance weights; exact matches take all the weight.
        std::vector<double> weights(cand.size(), 0.0);
        bool any_exact = false;
        for (const Candidate& c : cand) any_exact = any_exact || c.distance == 0.0;
        if (any_exact) {
            std::size_t exact = 0;
            for (const Candidate& c : cand) exact += c.distance == 0.0 ? 1 : 0;
            for (std::size_t h = 0; h < cand.size(); ++h) {
                if (cand[h].distance == 0.0) weights[h] = 1.0 / static_cast<double>(exact);
            }
        } else {
            double total = 0.0;
            for (std::size_t h = 0; h < cand.size(); ++h) {
                weights[h] = 1.0 / cand[h].distance;
                total += weights[h];
            }
            for (double& w : weights) w /= total;
        }

        std::vector<double> scores(z.categories(s), 0.0);
        for (std::size_t h = 0; h < cand.size(); ++h) {
            scores[static_cast<std::size_t>(z.at(cand[h].row, s) - 1)] += weights[h];
        }
        Rng rng(derive_seed(seed, streams::cell, i, s));
        o.value = seeded_argmax(scores, rng, &o.tie);
        o.probabilities.values = std::move(scores);
    });

    for (std::size_t idx = 0; idx < missing.size(); ++idx) {
        Outcome& o = outcomes[idx];
        result.completed.set(missing[idx].row, missing[idx].col, o.value);
        if (o.fallback) ++result.diagnostics.column_mode_fallbacks;
        if (o.global) ++result.diagnostics.global_mode_fallbacks;
        if (o.tie) {
            if (o.fallback) ++result.diagnostics.mode_ties;
            else ++result.diagnostics.argmax_ties;
        }
        result.cells.push_back({missing[idx], o.value, std::move(o.probabilities)});
    }
    return result;
}

CategoricalMatrix initial_impute_5nn(const CategoricalMatrix& z, std::uint64_t seed,
                                     Diagnostics* diagnostics) {
    z.validate();
    const std::size_t n = z.rows();
    const std::vector<CellRef> missing = z.missing_cells();
    CategoricalMatrix out = z;
    if (missing.empty()) return out;

    struct Outcome {
        Code value = kMissing;
        bool short_set = false;
        bool fallback = false;
        bool tie = false;
    };
    std::vector<Outcome> outcomes(missing.size());

    parallel_for(missing.size(), 0, [&](std::size_t idx) {
        const auto [i, s] = missing[idx];
        std::vector<Candidate> cand;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || !z.observed(j, s)) continue;
            std::size_t overlap = 0;
            for (std::size_t l = 0; l < z.cols() && overlap == 0; ++l) {
                if (z.observed(i, l) && z.observed(j, l)) overlap = 1;
            }
            if (overlap == 0) continue;
            cand.push_back({j, static_cast<double>(smc_distance(z, i, j))});
        }
        Outcome& o = outcomes[idx];
        if (cand.empty()) {
            const ColumnFallback fb = column_fallback(z, s, seed);
            o = {fb.value, false, true, fb.tie};
            return;
        }
        detail::sort_candidates(cand);
        if (cand.size() < 5) o.short_set = true;
        if (cand.size() > 5) cand.resize(5);

        std::vector<double> counts(z.categories(s), 0.0);
        for (const Candidate& c : cand) {
            counts[static_cast<std::size_t>(z.at(c.row, s) - 1)] += 1.0;
        }
        Rng rng(derive_seed(seed, streams::initial_5nn, i, s));
        o.value = seeded_argmax(counts, rng, &o.tie);
    });

    for (std::size_t idx = 0; idx < missing.size(); ++idx) {
        out.set(missing[idx].row, missing[idx].col, outcomes[idx].value);
        if (diagnostics) {
            if (outcomes[idx].short_set) ++diagnostics->short_neighbor_sets;
            if (outcomes[idx].fallback) ++diagnostics->column_mode_fallbacks;
            if (outcomes[idx].tie) ++diagnostics->argmax_ties;
        }
    }
    return out;
}

namespace {

void record_cell_diagnostics(const WnnselEngine::Outcome& outcome, Diagnostics* diagnostics) {
    if (!diagnostics) return;
    if (outcome.column_mode_fallback) ++diagnostics->column_mode_fallbacks;
    if (outcome.global_mode_fallback) ++diagnostics->global_mode_fallbacks;
    if (outcome.tie) {
        if (outcome.column_mode_fallback) ++diagnostics->mode_ties;
        else ++diagnostics->argmax_ties;
    }
}

CategoricalMatrix matrix_from_codes(const DummyMatrix& zd) {
    std::vector<AttributeSpec> attrs(zd.attributes());
    for (std::size_t s = 0; s < zd.attributes(); ++s) {
        attrs[s].name = "v" + std::to_string(s + 1);
        attrs[s].num_categories = zd.block_size(s);
    }
    CategoricalMatrix z(attrs, zd.rows());
    for (std::size_t i = 0; i < zd.rows(); ++i) {
        for (std::size_t s = 0; s < zd.attributes(); ++s) {
            z.set(i, s, zd.code(i, s));
        }
    }
    return z;
}

}  // namespace

std::pair<Code, ProbabilityVector> impute_cell_wnnsel_cat(
    const CategoricalMatrix& z, const DummyMatrix& zd, const MissingMask& mask,
    const AssociationMatrix& association, std::size_t i, std::size_t s,
    const ImputationConfig& config, Diagnostics* diagnostics) {
    (void)zd;   // re-derived from z inside the engine so the views always agree
    (void)mask;
    ImputationConfig c = config;
    c.method = Method::wnnsel_cat;
    WnnselEngine engine(z, c, 1, &association, nullptr);
    const auto outcome = engine.decide(engine.candidates(i, s), c.lambda, i, s);
    record_cell_diagnostics(outcome, diagnostics);
    return {outcome.value, outcome.probabilities};
}

std::pair<Code, ProbabilityVector> impute_cell_wnnsel_dum(
    const DummyMatrix& zd, const MissingMask& mask, const DummyCorrelation& correlation,
    std::size_t i, std::size_t s, const ImputationConfig& config, Diagnostics* diagnostics) {
    (void)mask;
    const CategoricalMatrix z = matrix_from_codes(zd);
    ImputationConfig c = config;
    c.method = Method::wnnsel_dum;
    WnnselEngine engine(z, c, 1, nullptr, &correlation);
    const auto outcome = engine.decide(engine.candidates(i, s), c.lambda, i, s);
    record_cell_diagnostics(outcome, diagnostics);
    return {outcome.value, outcome.probabilities};
}

}  // namespace wnnsel
