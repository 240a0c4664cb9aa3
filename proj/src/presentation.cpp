#include "tiltlab/presentation.hpp"
#include "tiltlab/homological.hpp"

#include <algorithm>
#include <numeric>

namespace tiltlab {

namespace {

SubspaceBasis sandwich(const AlgebraWithBasis &a, const Vec &e, const std::vector<Vec> &xs, const Vec &g) {
    std::vector<Vec> vs;
    for (const auto &x : xs)
        vs.push_back(a.multiply(a.multiply(e, x), g));
    return SubspaceBasis::span(a.field(), a.dim(), vs);
}

std::vector<Vec> basis_of(const AlgebraWithBasis &a) {
    std::vector<Vec> out;
    for (std::size_t b = 0; b < a.dim(); ++b)
        out.push_back(a.basis_vector(b));
    return out;
}

std::string word(const Quiver &q, const std::vector<std::size_t> &arrows) {
    std::string s;
    for (std::size_t k = 0; k < arrows.size(); ++k)
        s += (k ? "*" : "") + q.arrow(arrows[k]).name;
    return s;
}

} // namespace

std::size_t Presentation::arrows_between(std::size_t i, std::size_t j) const {
    std::size_t n = 0;
    for (const auto &a : quiver.arrows())
        n += a.source == i && a.target == j;
    return n;
}

std::size_t Presentation::relation_space_dim() const {
    std::size_t n = 0;
    for (const auto &row : relation_dims)
        for (auto d : row)
            n += d;
    return n;
}

std::vector<std::size_t> Presentation::multiplicities() const {
    std::vector<std::size_t> m;
    for (const auto &c : basic_classes)
        m.push_back(c.size());
    return m;
}

Presentation present_basic(const AlgebraWithBasis &a, std::size_t max_rel_deg) {
    Presentation p;
    const auto &f = a.field();
    p.field = f;
    p.dim = a.dim();
    p.idempotents = primitive_idempotents(a);
    auto j = radical(a);
    auto powers = radical_powers(a, j);
    p.loewy_length = powers.size();
    const auto all = basis_of(a);

    // e and g are isomorphic iff e A g is not inside J
    std::vector<std::size_t> cls(p.idempotents.size(), SIZE_MAX);
    for (std::size_t i = 0; i < p.idempotents.size(); ++i) {
        if (cls[i] != SIZE_MAX)
            continue;
        cls[i] = p.basic_classes.size();
        p.basic_classes.push_back({i});
        for (std::size_t k = i + 1; k < p.idempotents.size(); ++k)
            if (cls[k] == SIZE_MAX && !j.contains(sandwich(a, p.idempotents[i], all, p.idempotents[k]))) {
                cls[k] = cls[i];
                p.basic_classes.back().push_back(k);
            }
    }
    const std::size_t c = p.basic_classes.size();
    std::vector<Vec> reps;
    for (const auto &group : p.basic_classes)
        reps.push_back(p.idempotents[group.front()]);

    p.cartan.assign(c, std::vector<std::size_t>(c, 0));
    for (std::size_t x = 0; x < c; ++x)
        for (std::size_t y = 0; y < c; ++y) {
            p.cartan[x][y] = sandwich(a, reps[x], all, reps[y]).dim();
            p.basic_dim += p.cartan[x][y];
        }

    // arrows: a complement of e J^2 g inside e J g
    std::vector<std::string> names;
    for (std::size_t v = 0; v < c; ++v)
        names.push_back(std::to_string(v + 1));
    std::vector<Arrow> arrows;
    std::vector<Vec> arrow_elems;
    const auto &j2 = powers.size() > 1 ? powers[1] : SubspaceBasis(f, a.dim());
    for (std::size_t x = 0; x < c; ++x)
        for (std::size_t y = 0; y < c; ++y) {
            auto ej = sandwich(a, reps[x], j.vectors(), reps[y]);
            auto chosen = sandwich(a, reps[x], j2.vectors(), reps[y]);
            std::size_t count = 0;
            for (const auto &v : ej.vectors()) {
                if (chosen.contains(v))
                    continue;
                auto next = chosen.vectors();
                next.push_back(v);
                chosen = SubspaceBasis::span(f, a.dim(), next);
                std::string name = "b" + names[x] + names[y];
                if (++count > 1)
                    name += "_" + std::to_string(count);
                arrows.push_back({name, x, y});
                arrow_elems.push_back(v);
            }
        }
    p.quiver = Quiver(names, arrows);

    // relations: kernel of paths of length 2..D into A, per vertex pair
    p.max_rel_deg = std::max(max_rel_deg, p.loewy_length);
    p.relation_dims.assign(c, std::vector<std::size_t>(c, 0));
    std::vector<std::vector<std::vector<Path>>> paths(c, std::vector<std::vector<Path>>(c));
    std::vector<std::vector<std::vector<Vec>>> values(c, std::vector<std::vector<Vec>>(c));
    for (std::size_t len = 2; len <= p.max_rel_deg; ++len)
        for (const auto &path : enumerate_paths(p.quiver, len)) {
            Vec v = arrow_elems[path.arrows.front()];
            for (std::size_t k = 1; k < path.arrows.size(); ++k)
                v = a.multiply(v, arrow_elems[path.arrows[k]]);
            paths[path.source][path.target].push_back(path);
            values[path.source][path.target].push_back(std::move(v));
        }
    for (std::size_t x = 0; x < c; ++x)
        for (std::size_t y = 0; y < c; ++y) {
            const auto &vals = values[x][y];
            if (vals.empty())
                continue;
            Mat m(f, a.dim(), vals.size());
            for (std::size_t k = 0; k < vals.size(); ++k)
                m.set_col(k, vals[k]);
            auto ker = kernel(m);
            p.relation_dims[x][y] = ker.dim();
            for (const auto &kv : ker.vectors()) {
                Relation r;
                for (std::size_t k = 0; k < kv.size(); ++k)
                    if (!kv[k].is_zero())
                        r.push_back({kv[k], paths[x][y][k].arrows});
                p.relations.generators.push_back(std::move(r));
            }
        }
    try {
        p.relations_complete = presented_algebra(p)->dim() == p.basic_dim;
    } catch (const std::exception &) {
        p.relations_complete = false;
    }
    return p;
}

PathAlgebraPtr presented_algebra(const Presentation &p) {
    std::size_t bound = p.loewy_length > 1 ? p.loewy_length - 1 : 1;
    return PathAlgebra::build(p.quiver, p.relations, bound, p.field);
}

std::string GlobalDimension::to_string() const {
    return bounded ? std::to_string(value) : "AtLeast(" + std::to_string(value) + ")";
}

GlobalDimension global_dimension(const PathAlgebraPtr &alg, std::size_t cap, std::size_t size_budget) {
    GlobalDimension g{true, 0};
    ExtEngine engine(alg);
    for (std::size_t v = 0; v < alg->quiver().num_vertices(); ++v) {
        const auto id = engine.add_module(simple(alg, v));
        for (std::size_t d = 1;; ++d) {
            const auto &r = engine.resolution(id, std::min(d, cap));
            if (r.complete) {
                g.value = std::max(g.value, r.depth);
                break;
            }
            if (d >= cap)
                return {false, cap};
            if (r.terms.back().total_dim() > size_budget)
                return {false, std::max(g.value, r.terms.size() - 1), true};
        }
    }
    return g;
}

GlobalDimension global_dimension(const Presentation &p, std::size_t cap, std::size_t size_budget) {
    if (!p.relations_complete)
        throw std::runtime_error("presentation relations do not cut out the basic algebra; raise max_rel_deg");
    return global_dimension(presented_algebra(p), cap, size_budget);
}

GlobalDimension global_dimension(const AlgebraWithBasis &a, std::size_t cap, std::size_t size_budget) {
    return global_dimension(present_basic(a), cap, size_budget);
}

bool InvariantReport::all_match() const {
    return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck &c) { return c.match; });
}

InvariantReport invariants_compare(const Presentation &p1, const Presentation &p2) {
    InvariantReport r;
    auto num = [](std::size_t a, std::size_t b) { return std::to_string(a) + " vs " + std::to_string(b); };
    const std::size_t n = p1.quiver.num_vertices();
    r.checks.push_back({"vertices", n == p2.quiver.num_vertices(), num(n, p2.quiver.num_vertices())});
    r.checks.push_back({"arrows", p1.quiver.num_arrows() == p2.quiver.num_arrows(),
                        num(p1.quiver.num_arrows(), p2.quiver.num_arrows())});
    r.checks.push_back({"basic_dimension", p1.basic_dim == p2.basic_dim, num(p1.basic_dim, p2.basic_dim)});
    r.checks.push_back({"dimension", p1.dim == p2.dim, num(p1.dim, p2.dim)});
    r.checks.push_back({"relation_space_dim", p1.relation_space_dim() == p2.relation_space_dim(),
                        num(p1.relation_space_dim(), p2.relation_space_dim())});
    r.checks.push_back({"loewy_length", p1.loewy_length == p2.loewy_length, num(p1.loewy_length, p2.loewy_length)});

    // a common vertex permutation carrying arrow counts and Cartan entries
    bool arrows_ok = false, cartan_ok = false, both_ok = false;
    if (n == p2.quiver.num_vertices() && n <= 8) {
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            bool ar = true, ca = true;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k) {
                    ar = ar && p1.arrows_between(i, k) == p2.arrows_between(perm[i], perm[k]);
                    ca = ca && p1.cartan[i][k] == p2.cartan[perm[i]][perm[k]];
                }
            arrows_ok = arrows_ok || ar;
            cartan_ok = cartan_ok || ca;
            both_ok = both_ok || (ar && ca);
        } while (!both_ok && std::next_permutation(perm.begin(), perm.end()));
    }
    r.checks.push_back({"arrow_counts_per_pair", arrows_ok, arrows_ok ? "match up to relabelling" : "no relabelling matches"});
    r.checks.push_back({"cartan", cartan_ok, cartan_ok ? "match up to relabelling" : "no relabelling matches"});
    r.checks.push_back({"arrows_and_cartan_jointly", both_ok, both_ok ? "one relabelling matches both" : "no common relabelling"});
    return r;
}

nlohmann::json to_json(const Presentation &p) {
    using nlohmann::json;
    json arrows = json::array();
    for (const auto &a : p.quiver.arrows())
        arrows.push_back({{"name", a.name}, {"source", p.quiver.vertices()[a.source]}, {"target", p.quiver.vertices()[a.target]}});
    json rels = json::array();
    for (const auto &r : p.relations.generators) {
        json terms = json::array();
        for (const auto &t : r)
            terms.push_back({{"coeff", t.coeff.to_string()}, {"path", word(p.quiver, t.arrows)}});
        rels.push_back(terms);
    }
    return {{"vertices", p.quiver.vertices()},
            {"arrows", arrows},
            {"relations", rels},
            {"max_rel_deg", p.max_rel_deg},
            {"dim", p.dim},
            {"basic_dim", p.basic_dim},
            {"loewy_length", p.loewy_length},
            {"cartan", p.cartan},
            {"basic_classes", p.basic_classes},
            {"relation_dims", p.relation_dims},
            {"relation_space_dim", p.relation_space_dim()},
            {"relations_complete", p.relations_complete}};
}

nlohmann::json to_json(const InvariantReport &r) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto &c : r.checks)
        j[c.name] = {{"match", c.match}, {"detail", c.detail}};
    j["all_match"] = r.all_match();
    return j;
}

std::string presentation_dot(const Presentation &p, const std::string &name) { return quiver_to_dot(p.quiver, name); }

} // namespace tiltlab
