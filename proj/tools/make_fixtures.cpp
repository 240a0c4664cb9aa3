// Writes the shipped problem files. Usage: make_fixtures OUT_DIR

#include "tiltlab/problem.hpp"

#include <fstream>
#include <iostream>

using namespace tiltlab;

namespace {

ProblemSpec base(const FieldSpec &f) {
    ProblemSpec s;
    s.field = f;
    // 1 -> 2 -> 3 -> 4 -> 5 with a loop at 4, radical square zero
    s.quiver = Quiver({"1", "2", "3", "4", "5"},
                      {{"a1", 0, 1}, {"a2", 1, 2}, {"a3", 2, 3}, {"a4", 3, 4}, {"b", 3, 3}});
    for (const auto &p : enumerate_paths(s.quiver, 2))
        s.relations.generators.push_back({{Scalar::one(f), p.arrows}});
    s.max_path_len = 1;
    s.algebra = PathAlgebra::build(s.quiver, s.relations, s.max_path_len, f);
    return s;
}

// 0 -> Omega(I(4)) -> P(3) + P(4) -> I(4) -> 0 with M = P(3) + P(4)
ProblemSpec worked(const FieldSpec &f = FieldSpec::rationals()) {
    auto s = base(f);
    auto y = injective(s.algebra, 3);
    auto pc = projective_cover_syzygy(y);
    s.modules = {{"X", pc.omega}, {"M1", pc.cover}, {"Y", y},
                 {"P3", projective(s.algebra, 2)}, {"P4", projective(s.algebra, 3)}};
    s.summands_of_m = {"P3", "P4"};
    s.m1_decomposition = {"P3", "P4"};
    s.alpha = {"X", "M1", pc.inclusion.maps};
    s.beta = {"M1", "Y", pc.epi.maps};
    return s;
}

// 0 -> P(5) -> P(5) + S(1) -> S(1) -> 0
ProblemSpec split() {
    auto s = base(FieldSpec::rationals());
    auto x = projective(s.algebra, 4);
    auto y = simple(s.algebra, 0);
    auto t = split_triple(x, y);
    s.modules = {{"X", x}, {"Y", y}, {"M1", t.m1}};
    s.summands_of_m = {"X", "Y"};
    s.m1_decomposition = {"X", "Y"};
    s.alpha = {"X", "M1", t.alpha.maps};
    s.beta = {"M1", "Y", t.beta.maps};
    return s;
}

// alpha vanishes at the first vertex where it is nonzero, so the sequence is not exact
ProblemSpec corrupted_alpha() {
    auto s = worked();
    for (auto &m : s.alpha.maps)
        if (!m.is_zero()) {
            m = Mat(m.field(), m.rows(), m.cols());
            break;
        }
    return s;
}

ProblemSpec hypothesis_violation() {
    auto s = worked();
    s.phi = {0, 1};
    return s;
}

} // namespace

int main(int argc, char **argv) {
    if (argc != 2) {
        std::cerr << "usage: make_fixtures OUT_DIR\n";
        return 2;
    }
    const std::filesystem::path dir = argv[1];
    std::filesystem::create_directories(dir);
    const std::vector<std::pair<std::string, ProblemSpec>> files{{"example_s4.json", worked()},
                                                                 {"example_s4_gf7.json", worked(FieldSpec::prime(7))},
                                                                 {"split.json", split()},
                                                                 {"corrupted_alpha.json", corrupted_alpha()},
                                                                 {"hypothesis_violation.json", hypothesis_violation()}};
    for (const auto &[name, spec] : files) {
        std::ofstream out(dir / name, std::ios::binary);
        out << serialize_problem(spec);
        if (!out) {
            std::cerr << "cannot write " << (dir / name).string() << "\n";
            return 2;
        }
    }
    return 0;
}
