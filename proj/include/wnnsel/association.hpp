#pragma once

#include <cstddef>
#include <vector>

#include "wnnsel/types.hpp"

namespace wnnsel {

/// Cross-tabulation of two attributes over pairwise-complete rows (both cells
/// observed).
struct ContingencyTable {
    std::size_t rows = 0;  // k_s
    std::size_t cols = 0;  // k_l
    std::vector<std::size_t> counts;  // row-major n_ij
    std::vector<std::size_t> row_totals;
    std::vector<std::size_t> col_totals;
    std::size_t grand_total = 0;

    std::size_t at(std::size_t i, std::size_t j) const { return counts[i * cols + j]; }
};

enum class AssociationMeasure { cramers_v, phi, pcc, cohens_kappa };

/// p x p symmetric matrix of attribute associations; diagonal fixed at 1.
struct AssociationMatrix {
    std::size_t size = 0;
    std::vector<double> values;  // row-major
    AssociationMeasure measure = AssociationMeasure::cramers_v;

    double at(std::size_t s, std::size_t l) const { return values[s * size + l]; }
};

ContingencyTable contingency_table(const CategoricalMatrix& z, std::size_t s, std::size_t l);

// chi^2 = sum_ij (n_ij - n_i. n_.j / n)^2 / (n_i. n_.j / n). Requires every
// row and column total positive.
double chi_square(const ContingencyTable& t);

double phi(const ContingencyTable& t);           // 2x2 only
double pcc(const ContingencyTable& t);           // square tables only
double cohens_kappa(const ContingencyTable& t);  // square tables only
double cramers_v(const ContingencyTable& t);     // any shape, in [0,1]

double association(const ContingencyTable& t, AssociationMeasure measure);

/// Computes the chosen measure for every unordered pair; degenerate pairs
/// (empty table, zero margin) contribute 0 so they carry no distance weight.
AssociationMatrix association_matrix(const CategoricalMatrix& z,
                                     AssociationMeasure measure = AssociationMeasure::cramers_v,
                                     std::size_t threads = 1);

/// Pearson correlations between all dummy columns, each pair computed over
/// rows where both underlying attributes are observed.
struct DummyCorrelation {
    std::size_t size = 0;  // total dummy columns
    std::vector<double> values;
    std::size_t zero_variance_pairs = 0;  // pairs zeroed for lack of variance

    double at(std::size_t a, std::size_t b) const { return values[a * size + b]; }
};

DummyCorrelation dummy_pearson_matrix(const DummyMatrix& zd, const MissingMask& mask,
                                      std::size_t threads = 1);

}  // namespace wnnsel
