#pragma once

#include "tiltlab/admissible.hpp"
#include "tiltlab/rep.hpp"

#include <random>
#include <string>
#include <vector>

namespace gen {

using namespace tiltlab;
using Rng = std::mt19937_64;

inline std::size_t uniform(Rng &rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng &rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline Scalar small_scalar(Rng &rng, const FieldSpec &f) {
    return Scalar(f, static_cast<long>(uniform(rng, 0, 4)) - 2);
}

/// Random quiver on 2..max_vertices vertices with arrows going forward, an
/// occasional loop, and relations forcing rad^3 = 0 plus some random zero
/// relations of length two. Sometimes a commutativity relation is added.
inline PathAlgebraPtr random_algebra(Rng &rng, const FieldSpec &f, std::size_t max_vertices = 4,
                                     bool allow_loops = true, bool allow_commutativity = true) {
    const std::size_t n = uniform(rng, 2, max_vertices);
    std::vector<std::string> names;
    for (std::size_t v = 0; v < n; ++v)
        names.push_back(std::to_string(v + 1));
    std::vector<Arrow> arrows;
    auto add = [&](std::size_t s, std::size_t t) {
        arrows.push_back({"c" + std::to_string(arrows.size() + 1), s, t});
    };
    for (std::size_t v = 0; v + 1 < n; ++v)
        add(v, v + 1); // keep the quiver connected
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 2; t < n; ++t)
            if (coin(rng, 0.3))
                add(s, t);
    bool loop = false;
    if (allow_loops && coin(rng, 0.25)) {
        auto v = uniform(rng, 0, n - 1);
        add(v, v);
        loop = true;
    }
    Quiver q(names, arrows);
    RelationSet rels;
    auto one = Scalar::one(f);
    for (const auto &p : enumerate_paths(q, 3))
        rels.generators.push_back({RelationTerm{one, p.arrows}});
    auto twos = enumerate_paths(q, 2);
    std::vector<bool> killed(twos.size(), false);
    for (std::size_t k = 0; k < twos.size(); ++k) {
        const auto &p = twos[k];
        bool has_loop = false;
        for (auto a : p.arrows)
            has_loop = has_loop || arrows[a].source == arrows[a].target;
        if ((loop && has_loop) || coin(rng, 0.4)) {
            rels.generators.push_back({RelationTerm{one, p.arrows}});
            killed[k] = true;
        }
    }
    // one commutativity relation between two surviving parallel paths
    for (std::size_t i = 0; allow_commutativity && i < twos.size() && coin(rng, 0.5); ++i)
        for (std::size_t j = i + 1; j < twos.size(); ++j) {
            if (killed[i] || killed[j])
                continue;
            const auto &p = twos[i], &r = twos[j];
            if (arrows[p.arrows.front()].source == arrows[r.arrows.front()].source &&
                arrows[p.arrows.back()].target == arrows[r.arrows.back()].target) {
                rels.generators.push_back({RelationTerm{one, p.arrows}, RelationTerm{-one, r.arrows}});
                i = twos.size();
                break;
            }
        }
    return PathAlgebra::build(q, rels, 2, f);
}

/// Random representation with small vertex dimensions satisfying the
/// relations, found by rejection.
inline QuiverRep random_rep(Rng &rng, const PathAlgebraPtr &alg, std::size_t max_total, int tries = 200) {
    const auto &q = alg->quiver();
    const auto &f = alg->field();
    for (int attempt = 0; attempt < tries; ++attempt) {
        std::vector<std::size_t> dims(q.num_vertices());
        std::size_t total = 0;
        for (auto &d : dims) {
            d = uniform(rng, 0, 2);
            total += d;
        }
        if (total == 0 || total > max_total)
            continue;
        std::vector<Mat> maps;
        for (const auto &a : q.arrows()) {
            Mat m(f, dims[a.target], dims[a.source]);
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c)
                    m(r, c) = coin(rng, 0.5) ? small_scalar(rng, f) : Scalar::zero(f);
            maps.push_back(std::move(m));
        }
        QuiverRep rep(alg, dims, maps);
        if (validate_rep(rep).ok)
            return rep;
    }
    return simple(alg, uniform(rng, 0, q.num_vertices() - 1));
}

/// Cokernel of a random map between free modules; always a module.
inline QuiverRep random_cokernel(Rng &rng, const PathAlgebraPtr &alg) {
    const std::size_t n = alg->quiver().num_vertices();
    std::vector<std::size_t> top{uniform(rng, 0, n - 1)};
    if (coin(rng, 0.4))
        top.push_back(uniform(rng, 0, n - 1));
    std::vector<std::size_t> rel{uniform(rng, 0, n - 1)};
    auto p = free_module(alg, top), r = free_module(alg, rel);
    auto basis = hom_basis(r, p);
    ModuleMap map = zero_map(r, p);
    for (const auto &b : basis)
        map = add(map, scale(small_scalar(rng, alg->field()), b));
    return kernel_cokernel(map).coker;
}

struct TheoremInstance {
    ExactTriple triple;
    QuiverRep m;
    AdmissibleSet phi;
};

/// 0 -> Omega(Y) -> P(Y) -> Y -> 0 with M = P(Y) plus a random projective,
/// and with `with_extra` also a random non-projective summand.
inline TheoremInstance syzygy_instance(Rng &rng, const PathAlgebraPtr &alg, const AdmissibleSet &phi,
                                       bool with_extra = false) {
    auto y = random_cokernel(rng, alg);
    if (y.total_dim() == 0)
        y = simple(alg, 0);
    auto pc = projective_cover_syzygy(y);
    std::vector<std::size_t> verts = pc.vertices;
    const std::size_t extra = uniform(rng, 0, 2);
    for (std::size_t k = 0; k < extra; ++k)
        verts.push_back(uniform(rng, 0, alg->quiver().num_vertices() - 1));
    AddWitness w;
    for (auto v : verts)
        w.summands_of_m.push_back(projective(alg, v));
    for (std::size_t k = 0; k < pc.vertices.size(); ++k)
        w.decomposition.push_back(k);
    auto m = free_module(alg, verts);
    if (with_extra) {
        auto z = random_rep(rng, alg, 4);
        w.summands_of_m.push_back(z);
        m = direct_sum({m, z}).sum;
    }
    ExactTriple t{pc.omega, pc.cover, y, pc.inclusion, pc.epi, w};
    return {t, m, phi};
}

} // namespace gen
