#pragma once

#include "tiltlab/linalg.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tiltlab {

/// Tags a contiguous run of basis vectors with the hom-space it came from,
/// e.g. {"E^(X)", 0, offset, size}.
struct BlockInfo {
    std::string name;
    int degree = 0;
    std::size_t offset = 0;
    std::size_t size = 0;
    bool operator==(const BlockInfo &) const = default;
};

using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

/// A finite-dimensional associative algebra given by structure constants.
/// basis_i * basis_j = sum_k c_ijk basis_k; for endomorphism-style algebras
/// the product x * y means "x then y".
class AlgebraWithBasis {
  public:
    AlgebraWithBasis() = default;
    AlgebraWithBasis(FieldSpec field, std::vector<std::string> labels);

    [[nodiscard]] const FieldSpec &field() const { return field_; }
    [[nodiscard]] std::size_t dim() const { return labels_.size(); }
    [[nodiscard]] const std::vector<std::string> &labels() const { return labels_; }
    [[nodiscard]] const Vec &unit() const { return unit_; }
    [[nodiscard]] const std::vector<BlockInfo> &blocks() const { return blocks_; }

    void set_unit(Vec unit);
    void set_product(std::size_t i, std::size_t j, const Vec &coords);
    void add_block(BlockInfo block) { blocks_.push_back(std::move(block)); }

    [[nodiscard]] const SparseVec &product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
    [[nodiscard]] Vec basis_product(std::size_t i, std::size_t j) const;
    [[nodiscard]] Vec basis_vector(std::size_t i) const;
    /// Bilinear product through the structure constants.
    [[nodiscard]] Vec multiply(const Vec &x, const Vec &y) const;
    /// Matrix of y -> x * y.
    [[nodiscard]] Mat left_multiplication(const Vec &x) const;

    friend bool operator==(const AlgebraWithBasis &a, const AlgebraWithBasis &b) {
        return a.field_ == b.field_ && a.labels_ == b.labels_ && a.unit_ == b.unit_ && a.table_ == b.table_ &&
               a.blocks_ == b.blocks_;
    }

  private:
    FieldSpec field_;
    std::vector<std::string> labels_;
    Vec unit_;
    std::vector<SparseVec> table_;
    std::vector<BlockInfo> blocks_;
};

struct AlgebraReport {
    bool ok = true;
    std::vector<std::string> failures;
};

/// Checks associativity on every basis triple and both unit laws.
AlgebraReport validate_algebra(const AlgebraWithBasis &a);

/// Convenience constructor of a product map from a dense table.
AlgebraWithBasis algebra_from_table(const FieldSpec &field, std::vector<std::string> labels,
                                    const std::vector<std::vector<Vec>> &table, Vec unit);

} // namespace tiltlab
