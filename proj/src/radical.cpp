#include "tiltlab/presentation.hpp"

#include <random>

namespace tiltlab {

namespace {

using Poly = std::vector<Scalar>; // coefficients, lowest degree first

Mat columns(const FieldSpec &f, const std::vector<Vec> &cols, std::size_t rows) {
    Mat m(f, rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        m.set_col(c, cols[c]);
    return m;
}

Scalar eval(const Poly &p, const Scalar &x) {
    Scalar acc = Scalar::zero(x.field());
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

std::vector<mpz_class> divisors(mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> out;
    for (mpz_class d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n)
                out.push_back(n / d);
        }
    return out;
}

// some root in the ground field, if one can be found
std::optional<Scalar> find_root(const Poly &p) {
    const auto f = p.back().field();
    if (p.front().is_zero())
        return Scalar::zero(f);
    if (!f.is_rational()) {
        if (f.p > 200000)
            return std::nullopt;
        for (long r = 0; r < static_cast<long>(f.p); ++r)
            if (eval(p, Scalar(f, r)).is_zero())
                return Scalar(f, r);
        return std::nullopt;
    }
    // rational root theorem on the integer multiple
    mpz_class lcm = 1;
    for (const auto &c : p)
        lcm = lcm * c.rational().get_den() / gcd(lcm, c.rational().get_den());
    mpz_class a0 = mpq_class(p.front().rational() * lcm).get_num();
    mpz_class an = mpq_class(p.back().rational() * lcm).get_num();
    const mpz_class limit("1000000000000");
    if (abs(a0) > limit || abs(an) > limit)
        return std::nullopt;
    for (const auto &num : divisors(a0))
        for (const auto &den : divisors(an))
            for (int sign : {1, -1}) {
                Scalar r(f, mpq_class(sign * num, den));
                if (eval(p, r).is_zero())
                    return r;
            }
    return std::nullopt;
}

// computations inside the semisimple quotient S = A / J
class Splitter {
  public:
    explicit Splitter(const AlgebraWithBasis &s) : s_(s), f_(s.field()) {
        const std::size_t n = s.dim();
        // center: z with z b = b z for all basis b
        Mat comm(f_, n * n, n);
        for (std::size_t z = 0; z < n; ++z)
            for (std::size_t b = 0; b < n; ++b) {
                auto d = sub(s.basis_product(z, b), s.basis_product(b, z));
                for (std::size_t k = 0; k < n; ++k)
                    comm(b * n + k, z) = d[k];
            }
        center_ = kernel(comm).vectors();
    }

    std::vector<Vec> split_all() {
        std::vector<Vec> out;
        split(s_.unit(), out);
        return out;
    }

  private:
    Vec corner(const Vec &e, const Vec &x) const { return s_.multiply(s_.multiply(e, x), e); }

    std::size_t corner_dim(const Vec &e) const {
        std::vector<Vec> vs;
        for (std::size_t b = 0; b < s_.dim(); ++b)
            vs.push_back(corner(e, s_.basis_vector(b)));
        return SubspaceBasis::span(f_, s_.dim(), vs).dim();
    }

    Poly min_poly(const Vec &e, const Vec &x) const {
        std::vector<Vec> powers{e};
        while (true) {
            Vec next = s_.multiply(powers.back(), x);
            auto a = columns(f_, powers, s_.dim());
            Mat b(f_, s_.dim(), 1);
            b.set_col(0, next);
            if (auto c = solve_matrix(a, b)) {
                Poly p;
                for (std::size_t i = 0; i < powers.size(); ++i)
                    p.push_back(-(*c)(i, 0));
                p.push_back(Scalar::one(f_));
                return p;
            }
            powers.push_back(next);
        }
    }

    // nontrivial idempotent of eSe from x, if x has a rational eigenvalue and is not scalar
    std::optional<Vec> idempotent_from(const Vec &e, const Vec &x) const {
        auto m = min_poly(e, x);
        if (m.size() < 3)
            return std::nullopt;
        auto root = find_root(m);
        if (!root)
            return std::nullopt;
        // q = m / (t - root) by synthetic division
        Poly q(m.size() - 1, Scalar::zero(f_));
        Scalar carry = Scalar::zero(f_);
        for (std::size_t k = m.size() - 1; k >= 1; --k) {
            carry = m[k] + carry * *root;
            q[k - 1] = carry;
        }
        Vec acc = zero_vec(f_, s_.dim());
        for (auto it = q.rbegin(); it != q.rend(); ++it) {
            acc = s_.multiply(acc, x);
            axpy(acc, *it, e);
        }
        return scale(eval(q, *root).inverse(), acc);
    }

    void split(const Vec &e, std::vector<Vec> &out) {
        if (corner_dim(e) <= 1) {
            out.push_back(e);
            return;
        }
        std::vector<Vec> candidates;
        for (const auto &z : center_)
            candidates.push_back(corner(e, z));
        const std::size_t n = s_.dim();
        for (std::size_t b = 0; b < n; ++b)
            candidates.push_back(corner(e, s_.basis_vector(b)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                candidates.push_back(corner(e, s_.basis_product(i, j)));
                if (i < j)
                    candidates.push_back(corner(e, add(s_.basis_vector(i), s_.basis_vector(j))));
            }
        std::mt19937 rng(7);
        std::uniform_int_distribution<long> coef(-3, 3);
        for (int k = 0; k < 300; ++k) {
            Vec v = zero_vec(f_, n);
            for (auto &c : v)
                c = Scalar(f_, coef(rng));
            candidates.push_back(corner(e, v));
        }
        for (const auto &x : candidates)
            if (auto e1 = idempotent_from(e, x)) {
                split(*e1, out);
                split(sub(e, *e1), out);
                return;
            }
        throw NonSplitSemisimpleQuotient("no element with an eigenvalue in the ground field splits a corner of dimension " +
                                         std::to_string(corner_dim(e)));
    }

    const AlgebraWithBasis &s_;
    FieldSpec f_;
    std::vector<Vec> center_;
};

} // namespace

SubspaceBasis radical(const AlgebraWithBasis &a) {
    const auto &f = a.field();
    const std::size_t n = a.dim();
    if (!f.is_rational() && f.p <= n)
        throw UnsupportedCharacteristic("trace-form radical needs characteristic 0 or p > " + std::to_string(n));
    // tr(L_{e_k}) = sum_m coefficient of e_m in e_k e_m
    Vec traces = zero_vec(f, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m)
            for (const auto &[idx, c] : a.product(k, m))
                if (idx == m)
                    traces[k] += c;
    Mat gram(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (const auto &[idx, c] : a.product(i, j))
                gram(i, j) += c * traces[idx];
    auto j = kernel(gram);
    for (const auto &x : j.vectors())
        for (std::size_t b = 0; b < n; ++b)
            if (!j.contains(a.multiply(x, a.basis_vector(b))) || !j.contains(a.multiply(a.basis_vector(b), x)))
                throw std::logic_error("trace-form radical is not an ideal");
    radical_powers(a, j); // throws if not nilpotent
    return j;
}

std::vector<SubspaceBasis> radical_powers(const AlgebraWithBasis &a, const SubspaceBasis &j) {
    std::vector<SubspaceBasis> out{j};
    while (out.back().dim() > 0) {
        std::vector<Vec> prods;
        for (const auto &x : out.back().vectors())
            for (const auto &y : j.vectors())
                prods.push_back(a.multiply(x, y));
        auto next = SubspaceBasis::span(a.field(), a.dim(), prods);
        if (next.dim() >= out.back().dim())
            throw std::logic_error("radical is not nilpotent");
        out.push_back(std::move(next));
    }
    return out;
}

std::vector<Vec> primitive_idempotents(const AlgebraWithBasis &a) {
    const auto &f = a.field();
    const std::size_t n = a.dim();
    if (n == 0)
        return {};
    auto j = radical(a);
    Quotient q(SubspaceBasis::full(f, n), j);
    const auto &reps = q.representatives();
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < reps.size(); ++k)
        labels.push_back("s" + std::to_string(k));
    AlgebraWithBasis s(f, labels);
    for (std::size_t x = 0; x < reps.size(); ++x)
        for (std::size_t y = 0; y < reps.size(); ++y)
            s.set_product(x, y, *q.coordinates(a.multiply(reps[x], reps[y])));
    s.set_unit(*q.coordinates(a.unit()));

    auto bars = Splitter(s).split_all();

    // lift one at a time inside the complement of those already lifted
    std::vector<Vec> out;
    Vec rest = a.unit();
    const Scalar two(f, 2L), three(f, 3L);
    for (std::size_t k = 0; k + 1 < bars.size(); ++k) {
        Vec x = zero_vec(f, n);
        for (std::size_t i = 0; i < reps.size(); ++i)
            if (!bars[k][i].is_zero())
                axpy(x, bars[k][i], reps[i]);
        Vec y = a.multiply(a.multiply(rest, x), rest);
        for (int it = 0; a.multiply(y, y) != y; ++it) {
            if (it > 64)
                throw std::logic_error("idempotent lifting did not converge");
            auto y2 = a.multiply(y, y);
            y = sub(scale(three, y2), scale(two, a.multiply(y2, y)));
        }
        rest = sub(rest, y);
        out.push_back(std::move(y));
    }
    out.push_back(rest);

    Vec total = zero_vec(f, n);
    for (std::size_t i = 0; i < out.size(); ++i) {
        total = add(total, out[i]);
        for (std::size_t k = 0; k < out.size(); ++k) {
            auto p = a.multiply(out[i], out[k]);
            if (i == k ? p != out[i] : !is_zero(p))
                throw std::logic_error("lifted idempotents are not orthogonal idempotents");
        }
    }
    if (total != a.unit())
        throw std::logic_error("lifted idempotents do not sum to the unit");
    return out;
}

} // namespace tiltlab
