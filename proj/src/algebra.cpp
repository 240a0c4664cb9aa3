#include "tiltlab/algebra.hpp"

#include <sstream>

namespace tiltlab {

AlgebraWithBasis::AlgebraWithBasis(FieldSpec field, std::vector<std::string> labels)
    : field_(field), labels_(std::move(labels)), unit_(zero_vec(field, labels_.size())),
      table_(labels_.size() * labels_.size()) {}

void AlgebraWithBasis::set_unit(Vec unit) {
    if (unit.size() != dim())
        throw DimensionError("unit length mismatch");
    unit_ = std::move(unit);
}

void AlgebraWithBasis::set_product(std::size_t i, std::size_t j, const Vec &coords) {
    if (coords.size() != dim() || i >= dim() || j >= dim())
        throw DimensionError("structure constant shape mismatch");
    SparseVec sv;
    for (std::size_t k = 0; k < coords.size(); ++k)
        if (!coords[k].is_zero())
            sv.emplace_back(k, coords[k]);
    table_[i * dim() + j] = std::move(sv);
}

Vec AlgebraWithBasis::basis_product(std::size_t i, std::size_t j) const {
    Vec out = zero_vec(field_, dim());
    for (const auto &[k, c] : product(i, j))
        out[k] = c;
    return out;
}

Vec AlgebraWithBasis::basis_vector(std::size_t i) const {
    Vec e = zero_vec(field_, dim());
    e[i] = Scalar::one(field_);
    return e;
}

Vec AlgebraWithBasis::multiply(const Vec &x, const Vec &y) const {
    if (x.size() != dim() || y.size() != dim())
        throw DimensionError("algebra_multiply: coordinate length mismatch");
    Vec out = zero_vec(field_, dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        if (x[i].is_zero())
            continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (y[j].is_zero())
                continue;
            Scalar c = x[i] * y[j];
            for (const auto &[k, s] : product(i, j))
                out[k] += c * s;
        }
    }
    return out;
}

Mat AlgebraWithBasis::left_multiplication(const Vec &x) const {
    Mat m(field_, dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j)
        m.set_col(j, multiply(x, basis_vector(j)));
    return m;
}

AlgebraReport validate_algebra(const AlgebraWithBasis &a) {
    AlgebraReport report;
    const std::size_t n = a.dim();
    auto fail = [&](const std::string &msg) {
        report.ok = false;
        if (report.failures.size() < 50)
            report.failures.push_back(msg);
    };
    auto times_basis_right = [&](const SparseVec &x, std::size_t k) {
        Vec out = zero_vec(a.field(), n);
        for (const auto &[i, c] : x)
            for (const auto &[m, s] : a.product(i, k))
                out[m] += c * s;
        return out;
    };
    auto times_basis_left = [&](std::size_t i, const SparseVec &y) {
        Vec out = zero_vec(a.field(), n);
        for (const auto &[j, c] : y)
            for (const auto &[m, s] : a.product(i, j))
                out[m] += c * s;
        return out;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto &ij = a.product(i, j);
            for (std::size_t k = 0; k < n; ++k) {
                if (times_basis_right(ij, k) != times_basis_left(i, a.product(j, k))) {
                    std::ostringstream os;
                    os << "associativity fails on basis triple (" << i << "," << j << "," << k << ")";
                    fail(os.str());
                }
            }
        }
    for (std::size_t i = 0; i < n; ++i) {
        auto e = a.basis_vector(i);
        if (a.multiply(a.unit(), e) != e)
            fail("left unit law fails on basis element " + std::to_string(i));
        if (a.multiply(e, a.unit()) != e)
            fail("right unit law fails on basis element " + std::to_string(i));
    }
    return report;
}

AlgebraWithBasis algebra_from_table(const FieldSpec &field, std::vector<std::string> labels,
                                    const std::vector<std::vector<Vec>> &table, Vec unit) {
    AlgebraWithBasis a(field, std::move(labels));
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            a.set_product(i, j, table[i][j]);
    a.set_unit(std::move(unit));
    return a;
}

} // namespace tiltlab
