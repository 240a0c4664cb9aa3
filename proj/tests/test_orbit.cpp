#include "oracles.hpp"
#include "support.hpp"
#include "tiltlab/orbit.hpp"

#include <doctest.h>
#include <random>

using namespace tiltlab;
using namespace support;

namespace {

// all F_p-linear combinations of a list of maps
std::vector<ModuleMap> all_combinations(const std::vector<ModuleMap> &basis, const ModuleMap &zero, long p) {
    std::vector<ModuleMap> out{zero};
    for (const auto &b : basis) {
        std::vector<ModuleMap> next;
        for (const auto &m : out)
            for (long c = 0; c < p; ++c)
                next.push_back(add(m, scale(Scalar(zero.source.field(), c), b)));
        out = next;
    }
    return out;
}

bool in_span(const std::vector<ModuleMap> &gens, const ModuleMap &f) {
    std::vector<Vec> flat;
    for (const auto &g : gens)
        flat.push_back(g.flatten());
    return SubspaceBasis::span(f.source.field(), f.flatten().size(), flat).contains(f.flatten());
}

std::size_t log_p(std::size_t n, std::size_t p) {
    std::size_t k = 0;
    while (n > 1) {
        n /= p;
        ++k;
    }
    return k;
}

} // namespace

TEST_CASE("admissible sets") {
    CHECK(is_admissible({0, 3, 4}));
    CHECK(is_admissible({0, 1, 2, 3, 4}));
    CHECK(is_admissible({0}));
    CHECK_FALSE(is_admissible({0, 1, 2, 4}));
    CHECK(admissibility_witness({0, 1, 2, 4}) == std::vector<int>{1, 1, 2});
    CHECK_FALSE(is_admissible({1, 2}));
    CHECK_THROWS(AdmissibleSet({0, 1, 2, 4}));
    CHECK(AdmissibleSet({0, 3, 4}).nonzero() == std::vector<int>{3, 4});

    auto all = oracle::subsets_with_zero(6);
    CHECK(all.size() == 64);
    for (const auto &s : all)
        CHECK(is_admissible(s) == oracle::admissible_by_definition(s));
}

TEST_CASE("closure of admissible sets under scaling and powers") {
    for (const auto &s : oracle::subsets_with_zero(6)) {
        if (!is_admissible(s))
            continue;
        for (int m : s) {
            std::set<int> scaled;
            for (int x : s)
                scaled.insert(m * x);
            CHECK(is_admissible(scaled));
        }
    }
    for (const auto &s : oracle::subsets_with_zero(5))
        for (int m = 3; m <= 4; ++m) {
            std::set<int> powers;
            for (int x : s) {
                int p = 1;
                for (int k = 0; k < m; ++k)
                    p *= x;
                powers.insert(p);
            }
            CHECK(is_admissible(powers));
        }
}

TEST_CASE("graded hom spaces") {
    auto alg = worked_algebra();
    auto t = worked_triple(alg);
    AdmissibleSet phi({0, 1});
    auto g = graded_hom(t.y, t.x, phi);
    CHECK(g.blocks.at(0).size() == hom_basis(t.y, t.x).size());
    CHECK(g.blocks.at(1).size() == ext_space(t.y, t.x, 1).size());
    CHECK(g.dim() == g.blocks.at(0).size() + g.blocks.at(1).size());
    auto p = graded_hom(projective(alg, 3), t.y, AdmissibleSet({0, 3, 4}));
    CHECK(p.blocks.at(3).empty());
    CHECK(p.blocks.at(4).empty());
}

TEST_CASE("graded composition truncates outside Phi") {
    auto alg = worked_algebra();
    auto s4 = simple(alg, 3);
    AdmissibleSet phi({0, 3});
    auto e3 = ext_space(s4, s4, 3);
    REQUIRE(e3.size() == 1);
    GradedMorphism f{{{3, e3[0]}}};
    auto h = graded_compose(f, f, phi);
    CHECK(h.components.empty());

    auto id = ext_space(s4, s4, 0);
    REQUIRE(id.size() == 1);
    GradedMorphism one{{{0, id[0]}}};
    auto same = graded_compose(f, one, phi);
    REQUIRE(same.components.count(3));
    CHECK(same.components.at(3).coords == e3[0].coords);

    // with 6 in Phi the cross term survives
    auto h6 = graded_compose(f, f, AdmissibleSet({0, 3, 6}));
    REQUIRE(h6.components.count(6));
    CHECK_FALSE(is_zero(h6.components.at(6).coords));
}

TEST_CASE("graded associativity over an admissible set") {
    auto alg = worked_algebra();
    ExtEngine engine(alg);
    Object obj{engine.add_module(simple(alg, 3)), engine.add_module(simple(alg, 4)),
               engine.add_module(injective(alg, 3))};
    std::vector<int> degrees{0, 3, 4};
    HomLayout l(engine, obj, obj, degrees);
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> d(-2, 2);
    auto random = [&] {
        Vec v;
        for (std::size_t k = 0; k < l.dim(); ++k)
            v.emplace_back(QQ, d(rng));
        return v;
    };
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random(), g = random(), h = random();
        auto left = graded_product(engine, l, l, l, graded_product(engine, l, l, l, f, g), h);
        auto right = graded_product(engine, l, l, l, f, graded_product(engine, l, l, l, g, h));
        CHECK(left == right);
    }
    auto id = graded_identity(engine, l);
    auto f = random();
    CHECK(graded_product(engine, l, l, l, id, f) == f);
    CHECK(graded_product(engine, l, l, l, f, id) == f);
}

TEST_CASE("hatted subspaces in degree zero against enumeration over GF(3)") {
    auto f3 = FieldSpec::prime(3);
    auto alg = worked_algebra(f3);
    auto t = worked_triple(alg);
    auto m = t.m1;
    AdmissibleSet phi;
    TheoremSetup s(t, m, phi);

    auto count = [&](const QuiverRep &u, const QuiverRep &v, auto &&member) {
        std::size_t n = 0;
        for (const auto &h : all_combinations(hom_basis(u, v), zero_map(u, v), 3))
            n += member(h) ? 1 : 0;
        return n;
    };
    std::vector<ModuleMap> alpha_then, then_beta, m1_then_beta, alpha_then_m1;
    for (const auto &h : hom_basis(t.m1, t.m1)) {
        alpha_then.push_back(compose(t.alpha, h));
        then_beta.push_back(compose(h, t.beta));
    }
    auto end_x = count(t.x, t.x, [&](const ModuleMap &h) { return in_span(alpha_then, compose(h, t.alpha)); });
    auto end_y = count(t.y, t.y, [&](const ModuleMap &h) { return in_span(then_beta, compose(t.beta, h)); });
    std::vector<ModuleMap> via_alpha, via_beta;
    for (const auto &h : hom_basis(t.m1, m))
        via_alpha.push_back(compose(t.alpha, h));
    for (const auto &h : hom_basis(m, t.m1))
        via_beta.push_back(compose(h, t.beta));
    auto x_to_m = count(t.x, m, [&](const ModuleMap &h) { return in_span(via_alpha, h); });
    auto m_to_y = count(m, t.y, [&](const ModuleMap &h) { return in_span(via_beta, h); });

    CHECK(s.hatted(HattedKind::EndX, 0).dim() == log_p(end_x, 3));
    CHECK(s.hatted(HattedKind::EndY, 0).dim() == log_p(end_y, 3));
    CHECK(s.hatted(HattedKind::XtoM, 0).dim() == log_p(x_to_m, 3));
    CHECK(s.hatted(HattedKind::MtoY, 0).dim() == log_p(m_to_y, 3));
    CHECK(s.hatted(HattedKind::EndX, 0).dim() == 1);
    // identities are always hatted
    CHECK(s.hatted(HattedKind::EndX, 0).contains(s.engine().identity_coords(s.x)));
    CHECK(s.hatted(HattedKind::EndY, 0).contains(s.engine().identity_coords(s.y)));
}

TEST_CASE("hatted subspaces saturate on split sequences and vanish for X = 0") {
    auto alg = worked_algebra();
    AdmissibleSet phi({0, 1, 2});
    auto split = split_triple(simple(alg, 3), injective(alg, 3));
    auto m = split.m1;
    TheoremSetup s(split, m, phi);
    for (int d : phi.elements()) {
        auto &e = s.engine();
        CHECK(s.hatted(HattedKind::EndX, d).dim() == e.ext_dim(s.x, s.x, d));
        CHECK(s.hatted(HattedKind::EndY, d).dim() == e.ext_dim(s.y, s.y, d));
        CHECK(s.hatted(HattedKind::XtoM, d).dim() == e.ext_dim(s.x, s.m, d));
        CHECK(s.hatted(HattedKind::MtoY, d).dim() == e.ext_dim(s.m, s.y, d));
        CHECK(s.hatted(HattedKind::XtoY, d).dim() == e.ext_dim(s.x, s.y, d));
    }

    auto y = injective(alg, 3);
    auto zero = QuiverRep::zero(alg);
    ExactTriple t{zero, y, y, zero_map(zero, y), identity_map(y), {}};
    TheoremSetup z(t, y, phi);
    for (int d : phi.elements()) {
        CHECK(z.hatted(HattedKind::EndX, d).dim() == 0);
        CHECK(z.hatted(HattedKind::XtoM, d).dim() == 0);
        CHECK(z.hatted(HattedKind::XtoY, d).dim() == 0);
    }
    auto hs = hatted_subspace(HattedKind::EndY, t, y, phi);
    CHECK(hs.per_degree.size() == 3);
}

TEST_CASE("subrings of the worked example") {
    auto alg = worked_algebra();
    auto t = worked_triple(alg);
    for (auto phi : {AdmissibleSet(), AdmissibleSet({0, 1}), AdmissibleSet({0, 2})}) {
        CAPTURE(phi.to_string());
        TheoremSetup s(t, t.m1, phi);
        auto r = build_subrings(s);
        for (const auto *ring : {&r.lambda1, &r.lambda2, &r.gamma})
            CHECK(validate_algebra(ring->algebra).ok);
        auto &e = s.engine();
        std::size_t expect1 = 0;
        for (int d : phi.elements())
            expect1 += s.hatted(HattedKind::EndX, d).dim() + s.hatted(HattedKind::XtoM, d).dim() +
                       e.ext_dim(s.m, s.x, d) + e.ext_dim(s.m, s.m, d);
        CHECK(r.lambda1.algebra.dim() == expect1);

        // structure constants agree with the ambient graded composition
        for (const auto *ring : {&r.lambda1, &r.lambda2}) {
            const auto &a = ring->algebra;
            const auto &l = ring->layout;
            for (std::size_t i = 0; i < a.dim(); ++i)
                for (std::size_t j = 0; j < a.dim(); ++j) {
                    auto amb = graded_product(e, l, l, l, ring->to_ambient(a.basis_vector(i)),
                                              ring->to_ambient(a.basis_vector(j)));
                    CHECK(ring->to_ambient(a.basis_product(i, j)) == amb);
                }
            CHECK(ring->to_ambient(a.unit()) == graded_identity(e, l));
            CHECK(ring->from_ambient(graded_identity(e, l)) == a.unit());
        }
    }
    TheoremSetup s(t, t.m1, AdmissibleSet());
    auto r = build_subrings(s);
    CHECK(r.lambda1.algebra.dim() == 8);
    CHECK(r.lambda3.has_value());
}

TEST_CASE("split sequence with X = Y = M gives full rings") {
    auto alg = worked_algebra();
    auto m = injective(alg, 3);
    auto split = split_triple(m, m);
    TheoremSetup s(split, m, AdmissibleSet());
    auto r = build_subrings(s);
    auto &e = s.engine();
    auto d = e.ext_dim(s.m, s.m, 0);
    CHECK(r.lambda1.algebra.dim() == 4 * d);
    CHECK(r.lambda2.algebra.dim() == 4 * d);
    CHECK(r.gamma.algebra.dim() == 9 * d);
    REQUIRE(r.lambda3.has_value());
    CHECK(r.lambda3->algebra.dim() == 9 * d);
}
