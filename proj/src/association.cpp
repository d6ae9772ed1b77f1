#include "wnnsel/association.hpp"

#include <algorithm>
#include <cmath>

#include "wnnsel/parallel.hpp"

namespace wnnsel {

namespace {

void require_positive_margins(const ContingencyTable& t) {
    if (t.grand_total == 0) fail(ErrorCode::empty_table, "contingency table is empty");
    for (std::size_t i = 0; i < t.rows; ++i) {
        if (t.row_totals[i] == 0) {
            fail(ErrorCode::degenerate_margin,
                 "row " + std::to_string(i + 1) + " of contingency table has zero total");
        }
    }
    for (std::size_t j = 0; j < t.cols; ++j) {
        if (t.col_totals[j] == 0) {
            fail(ErrorCode::degenerate_margin,
                 "column " + std::to_string(j + 1) + " of contingency table has zero total");
        }
    }
}

void require_square(const ContingencyTable& t, const char* what) {
    if (t.rows != t.cols) {
        fail(ErrorCode::wrong_shape, std::string(what) + " requires k_s = k_l; table is " +
                                         std::to_string(t.rows) + "x" + std::to_string(t.cols));
    }
}

}  // namespace

ContingencyTable contingency_table(const CategoricalMatrix& z, std::size_t s, std::size_t l) {
    if (s == l || s >= z.cols() || l >= z.cols()) {
        fail(ErrorCode::wrong_shape, "contingency table needs two distinct valid attributes");
    }
    ContingencyTable t;
    t.rows = z.categories(s);
    t.cols = z.categories(l);
    t.counts.assign(t.rows * t.cols, 0);
    t.row_totals.assign(t.rows, 0);
    t.col_totals.assign(t.cols, 0);
    for (std::size_t i = 0; i < z.rows(); ++i) {
        const Code a = z.at(i, s);
        const Code b = z.at(i, l);
        if (a == kMissing || b == kMissing) continue;
        const std::size_t r = static_cast<std::size_t>(a - 1);
        const std::size_t c = static_cast<std::size_t>(b - 1);
        ++t.counts[r * t.cols + c];
        ++t.row_totals[r];
        ++t.col_totals[c];
        ++t.grand_total;
    }
    if (t.grand_total == 0) {
        fail(ErrorCode::empty_table, "no pairwise-complete rows for attributes " +
                                         std::to_string(s) + " and " + std::to_string(l));
    }
    return t;
}

double chi_square(const ContingencyTable& t) {
    require_positive_margins(t);
    const double n = static_cast<double>(t.grand_total);
    double sum = 0.0;
    for (std::size_t i = 0; i < t.rows; ++i) {
        for (std::size_t j = 0; j < t.cols; ++j) {
            const double expected =
                static_cast<double>(t.row_totals[i]) * static_cast<double>(t.col_totals[j]) / n;
            const double diff = static_cast<double>(t.at(i, j)) - expected;
            sum += diff * diff / expected;
        }
    }
    return sum;
}

double phi(const ContingencyTable& t) {
    if (t.rows != 2 || t.cols != 2) {
        fail(ErrorCode::wrong_shape, "phi coefficient requires a 2x2 table");
    }
    return std::sqrt(chi_square(t) / static_cast<double>(t.grand_total));
}

double pcc(const ContingencyTable& t) {
    require_square(t, "Pearson's corrected contingency coefficient");
    const double chi2 = chi_square(t);
    const double n = static_cast<double>(t.grand_total);
    const double k = static_cast<double>(t.rows);
    const double c = std::sqrt(chi2 / (chi2 + n));
    return c / std::sqrt((k - 1.0) / k);
}

double cohens_kappa(const ContingencyTable& t) {
    require_square(t, "Cohen's kappa");
    require_positive_margins(t);
    const double n = static_cast<double>(t.grand_total);
    double p0 = 0.0;
    double pe = 0.0;
    for (std::size_t i = 0; i < t.rows; ++i) {
        p0 += static_cast<double>(t.at(i, i)) / n;
        pe += static_cast<double>(t.row_totals[i]) * static_cast<double>(t.col_totals[i]) / (n * n);
    }
    if (pe >= 1.0) {
        fail(ErrorCode::degenerate_margin, "kappa undefined: expected agreement is 1");
    }
    return (p0 - pe) / (1.0 - pe);
}

double cramers_v(const ContingencyTable& t) {
    // n is the number of pairwise-complete observations (the standard
    // estimator; consistent with the chi-square definition above).
    const double chi2 = chi_square(t);
    const double n = static_cast<double>(t.grand_total);
    const double d = static_cast<double>(std::min(t.rows, t.cols) - 1);
    if (d <= 0.0) {
        fail(ErrorCode::degenerate_margin, "Cramer's V undefined for a 1-level attribute");
    }
    return std::sqrt((chi2 / n) / d);
}

double association(const ContingencyTable& t, AssociationMeasure measure) {
    switch (measure) {
        case AssociationMeasure::cramers_v: return cramers_v(t);
        case AssociationMeasure::phi: return phi(t);
        case AssociationMeasure::pcc: return pcc(t);
        case AssociationMeasure::cohens_kappa: return cohens_kappa(t);
    }
    fail(ErrorCode::invalid_config, "unknown association measure");
}

AssociationMatrix association_matrix(const CategoricalMatrix& z, AssociationMeasure measure,
                                     std::size_t threads) {
    const std::size_t p = z.cols();
    AssociationMatrix m;
    m.size = p;
    m.measure = measure;
    m.values.assign(p * p, 0.0);
    for (std::size_t s = 0; s < p; ++s) m.values[s * p + s] = 1.0;

    // One computation per unordered pair, mirrored to both triangles.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t s = 0; s < p; ++s) {
        for (std::size_t l = s + 1; l < p; ++l) pairs.emplace_back(s, l);
    }
    parallel_for(pairs.size(), threads, [&](std::size_t idx) {
        const auto [s, l] = pairs[idx];
        double value = 0.0;
        try {
            value = association(contingency_table(z, s, l), measure);
        } catch (const Error& e) {
            switch (e.code()) {
                case ErrorCode::empty_table:
                case ErrorCode::degenerate_margin:
                    value = 0.0;  // no evidence of association, no weight
                    break;
                default:
                    throw;
            }
        }
        m.values[s * p + l] = value;
        m.values[l * p + s] = value;
    });
    return m;
}

DummyCorrelation dummy_pearson_matrix(const DummyMatrix& zd, const MissingMask& mask,
                                      std::size_t threads) {
    const std::size_t d = zd.total_columns();
    const std::size_t p = zd.attributes();
    const std::size_t n = zd.rows();

    DummyCorrelation out;
    out.size = d;
    out.values.assign(d * d, 0.0);
    for (std::size_t a = 0; a < d; ++a) out.values[a * d + a] = 1.0;

    // Attribute index of each dummy column.
    std::vector<std::size_t> owner(d);
    for (std::size_t s = 0; s < p; ++s) {
        for (std::size_t c = 0; c < zd.block_size(s); ++c) owner[zd.block_offset(s) + c] = s;
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = a + 1; b < d; ++b) pairs.emplace_back(a, b);
    }
    std::vector<std::uint8_t> degenerate(pairs.size(), 0);

    parallel_for(pairs.size(), threads, [&](std::size_t idx) {
        const auto [a, b] = pairs[idx];
        const std::size_t sa = owner[a];
        const std::size_t sb = owner[b];

        std::size_t count = 0;
        double mean_a = 0.0;
        double mean_b = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!mask.observed(i, sa) || !mask.observed(i, sb)) continue;
            ++count;
            mean_a += zd.entry(i, a);
            mean_b += zd.entry(i, b);
        }
        if (count < 2) {
            degenerate[idx] = 1;
            return;
        }
        mean_a /= static_cast<double>(count);
        mean_b /= static_cast<double>(count);

        double cov = 0.0;
        double var_a = 0.0;
        double var_b = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!mask.observed(i, sa) || !mask.observed(i, sb)) continue;
            const double da = static_cast<double>(zd.entry(i, a)) - mean_a;
            const double db = static_cast<double>(zd.entry(i, b)) - mean_b;
            cov += da * db;
            var_a += da * da;
            var_b += db * db;
        }
        if (var_a <= 0.0 || var_b <= 0.0) {
            degenerate[idx] = 1;
            return;
        }
        const double r = cov / std::sqrt(var_a * var_b);
        out.values[a * d + b] = r;
        out.values[b * d + a] = r;
    });

    for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
        if (degenerate[idx]) ++out.zero_variance_pairs;
    }
    return out;
}

}  // namespace wnnsel
