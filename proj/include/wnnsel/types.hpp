#pragma once

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

#include "wnnsel/error.hpp"

namespace wnnsel {

// Category codes are 1-based (1..k_s); 0 is the missing sentinel and never a
// valid category. Display labels are a presentation concern handled by the
// CSV layer.
using Code = std::int32_t;
inline constexpr Code kMissing = 0;

struct CellRef {
    std::size_t row = 0;
    std::size_t col = 0;

    friend bool operator==(const CellRef&, const CellRef&) = default;
    friend auto operator<=>(const CellRef&, const CellRef&) = default;
};

struct AttributeSpec {
    std::string name;
    std::size_t num_categories = 0;
    std::vector<std::string> labels;  // empty, or exactly num_categories distinct entries

    void validate() const;
};

/// n x p integer-coded categorical data with an explicit missing sentinel.
/// Instances are treated as immutable once fully built; construction and
/// mutation are single-threaded, reads may be concurrent.
class CategoricalMatrix {
public:
    CategoricalMatrix() = default;
    CategoricalMatrix(std::vector<AttributeSpec> attributes, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return attributes_.size(); }

    Code at(std::size_t i, std::size_t s) const { return cells_[i * cols() + s]; }
    bool observed(std::size_t i, std::size_t s) const { return at(i, s) != kMissing; }

    void set(std::size_t i, std::size_t s, Code value);
    void set_missing(std::size_t i, std::size_t s) { cells_[i * cols() + s] = kMissing; }

    const AttributeSpec& attribute(std::size_t s) const { return attributes_[s]; }
    const std::vector<AttributeSpec>& attributes() const { return attributes_; }
    std::size_t categories(std::size_t s) const { return attributes_[s].num_categories; }

    std::size_t missing_count() const;
    std::vector<CellRef> missing_cells() const;

    // Checks every invariant (attribute specs, cell ranges); throws on violation.
    void validate() const;

    friend bool operator==(const CategoricalMatrix&, const CategoricalMatrix&) = default;

private:
    std::vector<AttributeSpec> attributes_;
    std::size_t rows_ = 0;
    std::vector<Code> cells_;  // row-major, kMissing or 1..k_s
};

/// Binary observedness mask: entry(i,s) == 1 iff cell (i,s) is observed.
class MissingMask {
public:
    MissingMask() = default;
    static MissingMask of(const CategoricalMatrix& z);

    bool observed(std::size_t i, std::size_t s) const { return entries_[i * cols_ + s] != 0; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> entries_;
};

/// One-hot expansion of a CategoricalMatrix. Block (i,s) is one-hot when the
/// cell is observed and all-zero when it is missing. Keeps the category codes
/// alongside the 0/1 entries so block comparisons don't have to scan dummies.
class DummyMatrix {
public:
    DummyMatrix() = default;

    std::size_t rows() const { return rows_; }
    std::size_t attributes() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t total_columns() const { return offsets_.empty() ? 0 : offsets_.back(); }

    // First dummy-column index of attribute s; block s spans
    // [block_offset(s), block_offset(s) + block_size(s)).
    std::size_t block_offset(std::size_t s) const { return offsets_[s]; }
    std::size_t block_size(std::size_t s) const { return offsets_[s + 1] - offsets_[s]; }

    std::uint8_t entry(std::size_t i, std::size_t column) const {
        return entries_[i * total_columns() + column];
    }

    // Underlying category code of block (i,s); kMissing for an all-zero block.
    Code code(std::size_t i, std::size_t s) const { return codes_[i * attributes() + s]; }

    // Maps dummy column (s, category c) to its flat column index.
    std::size_t column_of(std::size_t s, Code c) const {
        return offsets_[s] + static_cast<std::size_t>(c - 1);
    }

    friend DummyMatrix encode_dummies(const CategoricalMatrix& z);

private:
    std::size_t rows_ = 0;
    std::vector<std::size_t> offsets_;  // p + 1 entries, cumulative block starts
    std::vector<std::uint8_t> entries_;
    std::vector<Code> codes_;
};

DummyMatrix encode_dummies(const CategoricalMatrix& z);

/// Block-argmax decoding; inverse of encode_dummies on observed cells.
CategoricalMatrix decode_dummies(const DummyMatrix& zd,
                                 const std::vector<AttributeSpec>& attributes);

}  // namespace wnnsel
