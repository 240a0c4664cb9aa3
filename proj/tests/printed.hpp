#pragma once

// The two quivers with relations printed for the worked example, written in
// this library's path order. The printed words compose in the opposite order,
// so every arrow i -> j becomes j -> i and every relation word is reversed.

#include "support.hpp"
#include "tiltlab/presentation.hpp"

#include <algorithm>
#include <numeric>

namespace printed {

using namespace tiltlab;

struct Target {
    Quiver quiver;
    RelationSet relations;
    PathAlgebraPtr algebra;
};

/// End(M + P(M)): beta arrows 1<->2, 1<->3 with relations
/// b12 b21 = b13 b31, b21 b12 = 0, b31 b12 = 0.
inline Target beta(const FieldSpec &f = support::QQ) {
    Quiver q({"1", "2", "3"}, {{"g12", 0, 1}, {"g21", 1, 0}, {"g13", 0, 2}, {"g31", 2, 0}});
    auto one = Scalar::one(f);
    auto g = [&](const std::string &n) { return q.arrow_index(n); };
    RelationSet r;
    r.generators.push_back({{one, {g("g12"), g("g21")}}, {-one, {g("g13"), g("g31")}}});
    r.generators.push_back({{one, {g("g21"), g("g12")}}});
    r.generators.push_back({{one, {g("g21"), g("g13")}}});
    return {q, r, PathAlgebra::build(q, r, 4, f)};
}

/// Hatted End(Omega(M) + P(M)): delta arrows 2->1, 1->3, 3->1 with
/// d21 d13 = d13 d31 = 0.
inline Target delta(const FieldSpec &f = support::QQ) {
    Quiver q({"1", "2", "3"}, {{"e12", 0, 1}, {"e31", 2, 0}, {"e13", 0, 2}});
    auto one = Scalar::one(f);
    auto g = [&](const std::string &n) { return q.arrow_index(n); };
    RelationSet r;
    r.generators.push_back({{one, {g("e31"), g("e12")}}});
    r.generators.push_back({{one, {g("e13"), g("e31")}}});
    return {q, r, PathAlgebra::build(q, r, 4, f)};
}

/// A vertex relabelling carrying arrow counts (and Cartan entries) of p onto t.
inline std::optional<std::vector<std::size_t>> matching_permutation(const Presentation &p, const Presentation &t,
                                                                    bool with_cartan = true) {
    const std::size_t n = p.quiver.num_vertices();
    if (n != t.quiver.num_vertices())
        return std::nullopt;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t k = 0; k < n && ok; ++k)
                ok = p.arrows_between(i, k) == t.arrows_between(perm[i], perm[k]) &&
                     (!with_cartan || p.cartan[i][k] == t.cartan[perm[i]][perm[k]]);
        if (ok)
            return perm;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

/// The target quiver with the Cartan matrix of its path basis, for vertex matching.
inline Presentation direct(const Target &t) {
    Presentation p;
    p.quiver = t.quiver;
    const std::size_t n = t.quiver.num_vertices();
    p.cartan.assign(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            p.cartan[i][j] = t.algebra->basis_between(i, j).size();
    return p;
}

/// Printed relations not found in the computed relation space. Arrows are
/// matched through the vertex relabelling (one arrow per vertex pair), and
/// since they are fixed only up to scalars a printed relation counts as found
/// when the relation space meets the span of its paths in a vector supported
/// on every printed path.
inline std::vector<std::string> missing_relations(const Presentation &p, const Target &t,
                                                  const std::vector<std::size_t> &perm) {
    const auto &f = p.field;
    std::vector<std::size_t> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        inv[perm[i]] = i;
    auto ours = [&](std::size_t ta) -> std::optional<std::size_t> {
        const auto &a = t.quiver.arrow(ta);
        for (std::size_t b = 0; b < p.quiver.num_arrows(); ++b)
            if (p.quiver.arrow(b).source == inv[a.source] && p.quiver.arrow(b).target == inv[a.target])
                return b;
        return std::nullopt;
    };
    std::vector<std::string> missing;
    for (std::size_t r = 0; r < t.relations.generators.size(); ++r) {
        const auto &rel = t.relations.generators[r];
        auto [src, tgt] = relation_endpoints(t.quiver, rel);
        std::vector<Path> paths;
        for (std::size_t len = 2; len <= p.max_rel_deg; ++len)
            for (const auto &path : enumerate_paths(p.quiver, len))
                if (path.source == inv[src] && path.target == inv[tgt])
                    paths.push_back(path);
        auto index = [&](const std::vector<std::size_t> &w) -> std::optional<std::size_t> {
            for (std::size_t k = 0; k < paths.size(); ++k)
                if (paths[k].arrows == w)
                    return k;
            return std::nullopt;
        };
        std::vector<Vec> generators;
        for (const auto &g : p.relations.generators) {
            if (relation_endpoints(p.quiver, g) != std::make_pair(inv[src], inv[tgt]))
                continue;
            Vec v = zero_vec(f, paths.size());
            for (const auto &term : g)
                v[*index(term.arrows)] += term.coeff;
            generators.push_back(v);
        }
        std::vector<Vec> units;
        std::vector<std::size_t> idx;
        bool mapped = true;
        for (const auto &term : rel) {
            std::vector<std::size_t> w;
            for (auto a : term.arrows)
                if (auto b = ours(a))
                    w.push_back(*b);
                else
                    mapped = false;
            auto k = mapped ? index(w) : std::nullopt;
            if (!k) {
                mapped = false;
                break;
            }
            idx.push_back(*k);
            Vec u = zero_vec(f, paths.size());
            u[*k] = Scalar::one(f);
            units.push_back(u);
        }
        bool found = false;
        if (mapped) {
            auto meet = intersect(SubspaceBasis::span(f, paths.size(), generators),
                                  SubspaceBasis::span(f, paths.size(), units));
            for (const auto &v : meet.vectors())
                found = found || std::all_of(idx.begin(), idx.end(), [&](std::size_t k) { return !v[k].is_zero(); });
        }
        if (!found)
            missing.push_back(std::to_string(r));
    }
    return missing;
}

} // namespace printed
