#include "wnnsel/types.hpp"

#include <algorithm>
#include <unordered_set>

namespace wnnsel {

void AttributeSpec::validate() const {
    if (num_categories < 2) {
        fail(ErrorCode::degenerate_column,
             "attribute '" + name + "' has " + std::to_string(num_categories) +
                 " categories; at least 2 required");
    }
    if (!labels.empty()) {
        if (labels.size() != num_categories) {
            fail(ErrorCode::schema,
                 "attribute '" + name + "' has " + std::to_string(labels.size()) +
                     " labels for " + std::to_string(num_categories) + " categories");
        }
        std::unordered_set<std::string> seen(labels.begin(), labels.end());
        if (seen.size() != labels.size()) {
            fail(ErrorCode::schema, "attribute '" + name + "' has duplicate labels");
        }
    }
}

CategoricalMatrix::CategoricalMatrix(std::vector<AttributeSpec> attributes, std::size_t rows)
    : attributes_(std::move(attributes)),
      rows_(rows),
      cells_(rows * attributes_.size(), kMissing) {}

void CategoricalMatrix::set(std::size_t i, std::size_t s, Code value) {
    if (value != kMissing &&
        (value < 1 || static_cast<std::size_t>(value) > attributes_[s].num_categories)) {
        fail(ErrorCode::schema, "code " + std::to_string(value) + " out of range 1.." +
                                    std::to_string(attributes_[s].num_categories) +
                                    " for attribute '" + attributes_[s].name + "'");
    }
    cells_[i * cols() + s] = value;
}

std::size_t CategoricalMatrix::missing_count() const {
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), kMissing));
}

std::vector<CellRef> CategoricalMatrix::missing_cells() const {
    std::vector<CellRef> out;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t s = 0; s < cols(); ++s) {
            if (!observed(i, s)) out.push_back({i, s});
        }
    }
    return out;
}

void CategoricalMatrix::validate() const {
    for (const auto& spec : attributes_) spec.validate();
    if (cells_.size() != rows_ * cols()) {
        fail(ErrorCode::wrong_shape, "cell storage does not match declared dimensions");
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t s = 0; s < cols(); ++s) {
            const Code v = at(i, s);
            if (v == kMissing) continue;
            if (v < 1 || static_cast<std::size_t>(v) > attributes_[s].num_categories) {
                fail(ErrorCode::schema,
                     "cell (" + std::to_string(i) + "," + std::to_string(s) +
                         ") holds out-of-range code " + std::to_string(v));
            }
        }
    }
}

MissingMask MissingMask::of(const CategoricalMatrix& z) {
    MissingMask m;
    m.rows_ = z.rows();
    m.cols_ = z.cols();
    m.entries_.resize(m.rows_ * m.cols_);
    for (std::size_t i = 0; i < m.rows_; ++i) {
        for (std::size_t s = 0; s < m.cols_; ++s) {
            m.entries_[i * m.cols_ + s] = z.observed(i, s) ? 1 : 0;
        }
    }
    return m;
}

DummyMatrix encode_dummies(const CategoricalMatrix& z) {
    DummyMatrix d;
    d.rows_ = z.rows();
    const std::size_t p = z.cols();
    d.offsets_.resize(p + 1);
    d.offsets_[0] = 0;
    for (std::size_t s = 0; s < p; ++s) {
        d.offsets_[s + 1] = d.offsets_[s] + z.categories(s);
    }
    d.entries_.assign(d.rows_ * d.total_columns(), 0);
    d.codes_.resize(d.rows_ * p);
    for (std::size_t i = 0; i < d.rows_; ++i) {
        for (std::size_t s = 0; s < p; ++s) {
            const Code v = z.at(i, s);
            d.codes_[i * p + s] = v;
            if (v != kMissing) {
                d.entries_[i * d.total_columns() + d.column_of(s, v)] = 1;
            }
        }
    }
    return d;
}

CategoricalMatrix decode_dummies(const DummyMatrix& zd,
                                 const std::vector<AttributeSpec>& attributes) {
    CategoricalMatrix z(attributes, zd.rows());
    for (std::size_t i = 0; i < zd.rows(); ++i) {
        for (std::size_t s = 0; s < zd.attributes(); ++s) {
            Code found = kMissing;
            for (std::size_t c = 0; c < zd.block_size(s); ++c) {
                if (zd.entry(i, zd.block_offset(s) + c) != 0) {
                    found = static_cast<Code>(c + 1);
                    break;
                }
            }
            z.set(i, s, found);
        }
    }
    return z;
}

}  // namespace wnnsel
