#pragma once

#include "tiltlab/scalar.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace tiltlab {

using Vec = std::vector<Scalar>;

class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

Vec zero_vec(const FieldSpec &field, std::size_t n);
bool is_zero(const Vec &v);
Vec add(const Vec &a, const Vec &b);
Vec sub(const Vec &a, const Vec &b);
Vec scale(const Scalar &c, const Vec &v);
/// a += c * b
void axpy(Vec &a, const Scalar &c, const Vec &b);
Vec concat(const Vec &a, const Vec &b);

/// Dense row-major matrix over an exact field. Matrices act on column
/// vectors, so the matrix of "f then g" is Mat(g) * Mat(f).
class Mat {
  public:
    Mat() = default;
    Mat(FieldSpec field, std::size_t rows, std::size_t cols);

    static Mat identity(const FieldSpec &field, std::size_t n);
    static Mat from_rows(const FieldSpec &field, std::size_t cols, const std::vector<Vec> &rows);
    static Mat from_columns(const FieldSpec &field, std::size_t rows, const std::vector<Vec> &cols);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] const FieldSpec &field() const { return field_; }

    Scalar &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    [[nodiscard]] Vec row(std::size_t r) const;
    [[nodiscard]] Vec col(std::size_t c) const;
    void set_row(std::size_t r, const Vec &v);
    void set_col(std::size_t c, const Vec &v);

    [[nodiscard]] Mat transpose() const;
    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] Vec apply(const Vec &v) const;
    /// Copies `block` into this matrix with its top-left corner at (r0, c0).
    void place(std::size_t r0, std::size_t c0, const Mat &block);
    [[nodiscard]] Mat slice(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    friend Mat operator*(const Mat &a, const Mat &b);
    friend Mat operator+(const Mat &a, const Mat &b);
    friend Mat operator-(const Mat &a, const Mat &b);
    friend Mat operator*(const Scalar &c, const Mat &a);
    friend bool operator==(const Mat &a, const Mat &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    FieldSpec field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

Mat hstack(const Mat &a, const Mat &b);
Mat vstack(const Mat &a, const Mat &b);
Mat block_diagonal(const Mat &a, const Mat &b);

struct RrefResult {
    Mat reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form with leftmost pivots.
RrefResult rref(const Mat &m);
std::size_t rank(const Mat &m);

/// A subspace of field^n stored as the nonzero rows of its reduced
/// row-echelon basis, so equal subspaces compare equal structurally.
class SubspaceBasis {
  public:
    SubspaceBasis() = default;
    SubspaceBasis(FieldSpec field, std::size_t ambient);
    static SubspaceBasis span(const FieldSpec &field, std::size_t ambient, const std::vector<Vec> &vectors);
    static SubspaceBasis full(const FieldSpec &field, std::size_t ambient);

    [[nodiscard]] std::size_t ambient() const { return ambient_; }
    [[nodiscard]] std::size_t dim() const { return rows_.size(); }
    [[nodiscard]] const std::vector<Vec> &vectors() const { return rows_; }
    [[nodiscard]] const std::vector<std::size_t> &pivots() const { return pivots_; }
    [[nodiscard]] const FieldSpec &field() const { return field_; }

    [[nodiscard]] bool contains(const Vec &v) const;
    [[nodiscard]] bool contains(const SubspaceBasis &other) const;
    /// Coordinates of v in the stored echelon basis; nullopt if v is not in the span.
    [[nodiscard]] std::optional<Vec> coordinates(const Vec &v) const;
    /// v minus its projection along the standard complement; zero iff v is in the span.
    [[nodiscard]] Vec residue(const Vec &v) const;

    /// Standard quotient: complement spanned by the unit vectors at non-pivot
    /// columns. project(v) gives the coordinates of v + U in that complement.
    [[nodiscard]] std::vector<std::size_t> complement_columns() const;
    [[nodiscard]] Vec project(const Vec &v) const;
    [[nodiscard]] Mat projection_matrix() const;

    friend bool operator==(const SubspaceBasis &a, const SubspaceBasis &b) {
        return a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
    }

  private:
    FieldSpec field_;
    std::size_t ambient_ = 0;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

/// Null space of m (vectors v with m v = 0).
SubspaceBasis kernel(const Mat &m);
/// Column space of m.
SubspaceBasis image(const Mat &m);

SubspaceBasis intersect(const SubspaceBasis &a, const SubspaceBasis &b);
SubspaceBasis sum(const SubspaceBasis &a, const SubspaceBasis &b);
/// {v : m v in a}.
SubspaceBasis preimage(const Mat &m, const SubspaceBasis &a);

/// Quotient of a subspace `outer` by a subspace `inner` contained in it.
/// Coordinates are canonical: they depend only on the two subspaces.
class Quotient {
  public:
    Quotient(const SubspaceBasis &outer, const SubspaceBasis &inner);
    [[nodiscard]] std::size_t dim() const { return reps_.size(); }
    /// Representatives in `outer` of the quotient basis.
    [[nodiscard]] const std::vector<Vec> &representatives() const { return reps_; }
    /// Coordinates of v + inner; nullopt if v is not in outer.
    [[nodiscard]] std::optional<Vec> coordinates(const Vec &v) const;
    [[nodiscard]] const SubspaceBasis &outer() const { return outer_; }
    [[nodiscard]] const SubspaceBasis &inner() const { return inner_; }

  private:
    SubspaceBasis outer_;
    SubspaceBasis inner_;
    SubspaceBasis image_; // inner_.project(outer_) in echelon form
    std::vector<Vec> reps_;
};

/// Solves A x = b for many right-hand sides. Returns the solution with all
/// free variables zero (least-pivot deterministic choice).
class Solver {
  public:
    explicit Solver(const Mat &a);
    [[nodiscard]] std::optional<Vec> solve(const Vec &b) const;
    [[nodiscard]] std::size_t rank() const { return rank_; }
    [[nodiscard]] std::size_t unknowns() const { return cols_; }

  private:
    FieldSpec field_;
    std::size_t rows_ = 0, cols_ = 0, rank_ = 0;
    Mat transform_; // E with E * A = rref(A)
    std::vector<std::size_t> pivots_;
};

/// Solves A X = B column by column; nullopt if any column is inconsistent.
std::optional<Mat> solve_matrix(const Mat &a, const Mat &b);

} // namespace tiltlab
