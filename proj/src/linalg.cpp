#include "tiltlab/linalg.hpp"

#include <string>

namespace tiltlab {

namespace {

void require(bool ok, const char *what) {
    if (!ok)
        throw DimensionError(what);
}

} // namespace

Vec zero_vec(const FieldSpec &field, std::size_t n) { return Vec(n, Scalar::zero(field)); }

bool is_zero(const Vec &v) {
    for (const auto &x : v)
        if (!x.is_zero())
            return false;
    return true;
}

Vec add(const Vec &a, const Vec &b) {
    require(a.size() == b.size(), "vector length mismatch");
    Vec out = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] += b[i];
    return out;
}

Vec sub(const Vec &a, const Vec &b) {
    require(a.size() == b.size(), "vector length mismatch");
    Vec out = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] -= b[i];
    return out;
}

Vec scale(const Scalar &c, const Vec &v) {
    Vec out = v;
    for (auto &x : out)
        x *= c;
    return out;
}

void axpy(Vec &a, const Scalar &c, const Vec &b) {
    require(a.size() == b.size(), "vector length mismatch");
    if (c.is_zero())
        return;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!b[i].is_zero())
            a[i] += c * b[i];
}

Vec concat(const Vec &a, const Vec &b) {
    Vec out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

Mat::Mat(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(field)) {}

Mat Mat::identity(const FieldSpec &field, std::size_t n) {
    Mat m(field, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = Scalar::one(field);
    return m;
}

Mat Mat::from_rows(const FieldSpec &field, std::size_t cols, const std::vector<Vec> &rows) {
    Mat m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        m.set_row(r, rows[r]);
    return m;
}

Mat Mat::from_columns(const FieldSpec &field, std::size_t rows, const std::vector<Vec> &cols) {
    Mat m(field, rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        m.set_col(c, cols[c]);
    return m;
}

Vec Mat::row(std::size_t r) const {
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vec Mat::col(std::size_t c) const {
    Vec v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v.push_back((*this)(r, c));
    return v;
}

void Mat::set_row(std::size_t r, const Vec &v) {
    require(v.size() == cols_, "row length mismatch");
    for (std::size_t c = 0; c < cols_; ++c)
        (*this)(r, c) = v[c];
}

void Mat::set_col(std::size_t c, const Vec &v) {
    require(v.size() == rows_, "column length mismatch");
    for (std::size_t r = 0; r < rows_; ++r)
        (*this)(r, c) = v[r];
}

Mat Mat::transpose() const {
    Mat t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

bool Mat::is_zero() const { return tiltlab::is_zero(data_); }

Vec Mat::apply(const Vec &v) const {
    require(v.size() == cols_, "matrix-vector shape mismatch");
    Vec out = zero_vec(field_, rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
        if (v[c].is_zero())
            continue;
        for (std::size_t r = 0; r < rows_; ++r)
            if (!(*this)(r, c).is_zero())
                out[r] += (*this)(r, c) * v[c];
    }
    return out;
}

void Mat::place(std::size_t r0, std::size_t c0, const Mat &block) {
    require(r0 + block.rows_ <= rows_ && c0 + block.cols_ <= cols_, "block does not fit");
    for (std::size_t r = 0; r < block.rows_; ++r)
        for (std::size_t c = 0; c < block.cols_; ++c)
            (*this)(r0 + r, c0 + c) = block(r, c);
}

Mat Mat::slice(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    require(r0 + nr <= rows_ && c0 + nc <= cols_, "slice out of range");
    Mat out(field_, nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c)
            out(r, c) = (*this)(r0 + r, c0 + c);
    return out;
}

Mat operator*(const Mat &a, const Mat &b) {
    require(a.cols_ == b.rows_, "matrix product shape mismatch");
    Mat out(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar &aik = a(i, k);
            if (aik.is_zero())
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero())
                    out(i, j) += aik * b(k, j);
        }
    return out;
}

Mat operator+(const Mat &a, const Mat &b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix sum shape mismatch");
    Mat out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i)
        out.data_[i] += b.data_[i];
    return out;
}

Mat operator-(const Mat &a, const Mat &b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix difference shape mismatch");
    Mat out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i)
        out.data_[i] -= b.data_[i];
    return out;
}

Mat operator*(const Scalar &c, const Mat &a) {
    Mat out = a;
    for (auto &x : out.data_)
        x *= c;
    return out;
}

Mat hstack(const Mat &a, const Mat &b) {
    require(a.rows() == b.rows(), "hstack row mismatch");
    Mat out(a.field(), a.rows(), a.cols() + b.cols());
    out.place(0, 0, a);
    out.place(0, a.cols(), b);
    return out;
}

Mat vstack(const Mat &a, const Mat &b) {
    require(a.cols() == b.cols(), "vstack column mismatch");
    Mat out(a.field(), a.rows() + b.rows(), a.cols());
    out.place(0, 0, a);
    out.place(a.rows(), 0, b);
    return out;
}

Mat block_diagonal(const Mat &a, const Mat &b) {
    Mat out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    out.place(0, 0, a);
    out.place(a.rows(), a.cols(), b);
    return out;
}

RrefResult rref(const Mat &m) {
    RrefResult res;
    res.reduced = m;
    Mat &a = res.reduced;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < a.cols() && lead < a.rows(); ++c) {
        std::size_t pr = lead;
        while (pr < a.rows() && a(pr, c).is_zero())
            ++pr;
        if (pr == a.rows())
            continue;
        if (pr != lead)
            for (std::size_t k = 0; k < a.cols(); ++k)
                std::swap(a(pr, k), a(lead, k));
        Scalar inv = a(lead, c).inverse();
        for (std::size_t k = c; k < a.cols(); ++k)
            a(lead, k) *= inv;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == lead || a(r, c).is_zero())
                continue;
            Scalar f = a(r, c);
            for (std::size_t k = c; k < a.cols(); ++k)
                if (!a(lead, k).is_zero())
                    a(r, k) -= f * a(lead, k);
        }
        res.pivots.push_back(c);
        ++lead;
    }
    res.rank = lead;
    return res;
}

std::size_t rank(const Mat &m) { return rref(m).rank; }

SubspaceBasis::SubspaceBasis(FieldSpec field, std::size_t ambient) : field_(field), ambient_(ambient) {}

SubspaceBasis SubspaceBasis::span(const FieldSpec &field, std::size_t ambient, const std::vector<Vec> &vectors) {
    SubspaceBasis s(field, ambient);
    if (vectors.empty())
        return s;
    auto r = rref(Mat::from_rows(field, ambient, vectors));
    for (std::size_t i = 0; i < r.rank; ++i)
        s.rows_.push_back(r.reduced.row(i));
    s.pivots_ = r.pivots;
    return s;
}

SubspaceBasis SubspaceBasis::full(const FieldSpec &field, std::size_t ambient) {
    SubspaceBasis s(field, ambient);
    for (std::size_t i = 0; i < ambient; ++i) {
        Vec v = zero_vec(field, ambient);
        v[i] = Scalar::one(field);
        s.rows_.push_back(std::move(v));
        s.pivots_.push_back(i);
    }
    return s;
}

Vec SubspaceBasis::residue(const Vec &v) const {
    require(v.size() == ambient_, "subspace ambient mismatch");
    Vec r = v;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        Scalar c = r[pivots_[k]];
        if (!c.is_zero())
            axpy(r, -c, rows_[k]);
    }
    return r;
}

bool SubspaceBasis::contains(const Vec &v) const { return is_zero(residue(v)); }

bool SubspaceBasis::contains(const SubspaceBasis &other) const {
    require(other.ambient_ == ambient_, "subspace ambient mismatch");
    for (const auto &v : other.rows_)
        if (!contains(v))
            return false;
    return true;
}

std::optional<Vec> SubspaceBasis::coordinates(const Vec &v) const {
    if (!contains(v))
        return std::nullopt;
    Vec c;
    c.reserve(rows_.size());
    for (auto p : pivots_)
        c.push_back(v[p]);
    return c;
}

std::vector<std::size_t> SubspaceBasis::complement_columns() const {
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t c = 0; c < ambient_; ++c) {
        if (k < pivots_.size() && pivots_[k] == c)
            ++k;
        else
            out.push_back(c);
    }
    return out;
}

Vec SubspaceBasis::project(const Vec &v) const {
    Vec r = residue(v);
    Vec out;
    for (auto c : complement_columns())
        out.push_back(r[c]);
    return out;
}

Mat SubspaceBasis::projection_matrix() const {
    auto cols = complement_columns();
    Mat p(field_, cols.size(), ambient_);
    for (std::size_t j = 0; j < ambient_; ++j) {
        Vec e = zero_vec(field_, ambient_);
        e[j] = Scalar::one(field_);
        p.set_col(j, project(e));
    }
    return p;
}

SubspaceBasis kernel(const Mat &m) {
    auto r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots)
        is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        Vec v = zero_vec(m.field(), m.cols());
        v[f] = Scalar::one(m.field());
        for (std::size_t k = 0; k < r.rank; ++k)
            v[r.pivots[k]] = -r.reduced(k, f);
        basis.push_back(std::move(v));
    }
    return SubspaceBasis::span(m.field(), m.cols(), basis);
}

SubspaceBasis image(const Mat &m) {
    std::vector<Vec> cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        cols.push_back(m.col(c));
    return SubspaceBasis::span(m.field(), m.rows(), cols);
}

SubspaceBasis intersect(const SubspaceBasis &a, const SubspaceBasis &b) {
    require(a.ambient() == b.ambient(), "intersect: ambient mismatch");
    const auto &f = a.field();
    if (a.dim() == 0 || b.dim() == 0)
        return SubspaceBasis(f, a.ambient());
    // x in a ∩ b  <=>  x = A s = B t ; solve [A | -B] (s,t) = 0
    Mat m(f, a.ambient(), a.dim() + b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        m.set_col(i, a.vectors()[i]);
    for (std::size_t j = 0; j < b.dim(); ++j)
        m.set_col(a.dim() + j, scale(-Scalar::one(f), b.vectors()[j]));
    auto ker = kernel(m);
    std::vector<Vec> out;
    for (const auto &st : ker.vectors()) {
        Vec x = zero_vec(f, a.ambient());
        for (std::size_t i = 0; i < a.dim(); ++i)
            axpy(x, st[i], a.vectors()[i]);
        out.push_back(std::move(x));
    }
    return SubspaceBasis::span(f, a.ambient(), out);
}

SubspaceBasis sum(const SubspaceBasis &a, const SubspaceBasis &b) {
    require(a.ambient() == b.ambient(), "sum: ambient mismatch");
    auto all = a.vectors();
    all.insert(all.end(), b.vectors().begin(), b.vectors().end());
    return SubspaceBasis::span(a.field(), a.ambient(), all);
}

SubspaceBasis preimage(const Mat &m, const SubspaceBasis &a) {
    require(m.rows() == a.ambient(), "preimage: shape mismatch");
    // v with m v in a  <=>  projection of m v onto the complement vanishes
    return kernel(a.projection_matrix() * m);
}

Quotient::Quotient(const SubspaceBasis &outer, const SubspaceBasis &inner) : outer_(outer), inner_(inner) {
    if (!outer.contains(inner))
        throw DimensionError("quotient: inner subspace not contained in outer");
    const auto &f = outer.field();
    std::vector<Vec> projected;
    for (const auto &v : outer.vectors())
        projected.push_back(inner.project(v));
    std::size_t qdim = inner.ambient() - inner.dim();
    image_ = SubspaceBasis::span(f, qdim, projected);
    // lift each echelon row of the image to a combination of outer's basis
    Mat p(f, qdim, outer.dim());
    for (std::size_t j = 0; j < outer.dim(); ++j)
        p.set_col(j, projected[j]);
    Solver solver(p);
    for (const auto &row : image_.vectors()) {
        auto coeffs = solver.solve(row);
        Vec rep = zero_vec(f, outer.ambient());
        for (std::size_t j = 0; j < outer.dim(); ++j)
            axpy(rep, (*coeffs)[j], outer.vectors()[j]);
        reps_.push_back(std::move(rep));
    }
}

std::optional<Vec> Quotient::coordinates(const Vec &v) const {
    if (!outer_.contains(v))
        return std::nullopt;
    return image_.coordinates(inner_.project(v));
}

Solver::Solver(const Mat &a) : field_(a.field()), rows_(a.rows()), cols_(a.cols()) {
    auto r = rref(hstack(a, Mat::identity(a.field(), a.rows())));
    // pivots inside the A-part only
    for (auto p : r.pivots)
        if (p < cols_)
            pivots_.push_back(p);
    rank_ = pivots_.size();
    transform_ = r.reduced.slice(0, cols_, rows_, rows_);
}

std::optional<Vec> Solver::solve(const Vec &b) const {
    require(b.size() == rows_, "solver: rhs length mismatch");
    Vec c = transform_.apply(b);
    for (std::size_t i = rank_; i < rows_; ++i)
        if (!c[i].is_zero())
            return std::nullopt;
    Vec x = zero_vec(field_, cols_);
    for (std::size_t k = 0; k < rank_; ++k)
        x[pivots_[k]] = c[k];
    return x;
}

std::optional<Mat> solve_matrix(const Mat &a, const Mat &b) {
    require(a.rows() == b.rows(), "solve_matrix: row mismatch");
    Solver s(a);
    Mat x(a.field(), a.cols(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        auto col = s.solve(b.col(j));
        if (!col)
            return std::nullopt;
        x.set_col(j, *col);
    }
    return x;
}

} // namespace tiltlab
