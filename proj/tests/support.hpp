#pragma once

#include "tiltlab/rep.hpp"

#include <string>
#include <vector>

namespace support {

using namespace tiltlab;

inline const FieldSpec QQ = FieldSpec::rationals();

inline Mat mat(const FieldSpec &f, std::vector<std::vector<long>> rows, std::size_t cols = 0) {
    if (!rows.empty())
        cols = rows[0].size();
    Mat m(f, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = Scalar(f, rows[r][c]);
    return m;
}

inline Vec vec(const FieldSpec &f, std::vector<long> xs) {
    Vec v;
    for (auto x : xs)
        v.emplace_back(f, x);
    return v;
}

inline Relation monomial(const FieldSpec &f, std::vector<std::size_t> arrows) {
    return {RelationTerm{Scalar::one(f), std::move(arrows)}};
}

/// Linear quiver 1 -> 2 -> ... -> n.
inline Quiver linear_quiver(std::size_t n) {
    std::vector<std::string> vs;
    std::vector<Arrow> as;
    for (std::size_t i = 1; i <= n; ++i)
        vs.push_back(std::to_string(i));
    for (std::size_t i = 0; i + 1 < n; ++i)
        as.push_back({"a" + std::to_string(i + 1), i, i + 1});
    return Quiver(vs, as);
}

/// All paths of length two as monomial relations: the radical squares to zero.
inline RelationSet rad_square_zero(const Quiver &q, const FieldSpec &f) {
    RelationSet r;
    for (const auto &p : enumerate_paths(q, 2))
        r.generators.push_back(monomial(f, p.arrows));
    return r;
}

/// 1 -a1-> 2 -a2-> 3 -a3-> 4 -a4-> 5 with a loop b at 4, radical square zero.
inline Quiver worked_quiver() {
    return Quiver({"1", "2", "3", "4", "5"},
                  {{"a1", 0, 1}, {"a2", 1, 2}, {"a3", 2, 3}, {"a4", 3, 4}, {"b", 3, 3}});
}

inline PathAlgebraPtr worked_algebra(const FieldSpec &f = QQ) {
    auto q = worked_quiver();
    return PathAlgebra::build(q, rad_square_zero(q, f), 1, f);
}

/// Dual numbers k[x]/(x^2) as a one-vertex quiver with a loop.
inline PathAlgebraPtr dual_numbers(const FieldSpec &f = QQ) {
    Quiver q({"1"}, {{"x", 0, 0}});
    return PathAlgebra::build(q, rad_square_zero(q, f), 1, f);
}

/// 0 -> Omega(I(4)) -> P -> I(4) -> 0 for the worked algebra, P = P(3) + P(4).
inline ExactTriple worked_triple(const PathAlgebraPtr &alg) {
    auto y = injective(alg, 3);
    auto pc = projective_cover_syzygy(y);
    ExactTriple t{pc.omega, pc.cover, y, pc.inclusion, pc.epi, {}};
    t.witness.summands_of_m = {projective(alg, 2), projective(alg, 3)};
    t.witness.decomposition = {0, 1};
    return t;
}

} // namespace support
