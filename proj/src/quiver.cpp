#include "tiltlab/quiver.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tiltlab {

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    std::set<std::string> seen(vertices_.begin(), vertices_.end());
    if (seen.size() != vertices_.size())
        throw std::invalid_argument("duplicate vertex name");
    std::set<std::string> arrow_names;
    for (const auto &a : arrows_) {
        if (!arrow_names.insert(a.name).second)
            throw std::invalid_argument("duplicate arrow name '" + a.name + "'");
        if (a.source >= vertices_.size() || a.target >= vertices_.size())
            throw std::invalid_argument("arrow '" + a.name + "' has an undeclared endpoint");
    }
}

std::size_t Quiver::vertex_index(const std::string &name) const {
    auto it = std::find(vertices_.begin(), vertices_.end(), name);
    if (it == vertices_.end())
        throw std::invalid_argument("unknown vertex '" + name + "'");
    return static_cast<std::size_t>(it - vertices_.begin());
}

std::size_t Quiver::arrow_index(const std::string &name) const {
    for (std::size_t a = 0; a < arrows_.size(); ++a)
        if (arrows_[a].name == name)
            return a;
    throw std::invalid_argument("unknown arrow '" + name + "'");
}

std::vector<std::size_t> Quiver::arrows_from(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < arrows_.size(); ++a)
        if (arrows_[a].source == v)
            out.push_back(a);
    return out;
}

std::vector<std::size_t> Quiver::arrows_into(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < arrows_.size(); ++a)
        if (arrows_[a].target == v)
            out.push_back(a);
    return out;
}

std::optional<Path> concatenate(const Path &p, const Path &q) {
    if (p.target != q.source)
        return std::nullopt;
    Path out{p.source, q.target, p.arrows};
    out.arrows.insert(out.arrows.end(), q.arrows.begin(), q.arrows.end());
    return out;
}

std::string path_name(const Quiver &q, const Path &p) {
    if (p.arrows.empty())
        return "e" + q.vertices()[p.source];
    std::string out;
    for (std::size_t i = 0; i < p.arrows.size(); ++i) {
        if (i)
            out += "*";
        out += q.arrow(p.arrows[i]).name;
    }
    return out;
}

std::pair<std::size_t, std::size_t> relation_endpoints(const Quiver &q, const Relation &r) {
    if (r.empty())
        throw InvalidRelation("empty relation");
    std::optional<std::pair<std::size_t, std::size_t>> ends;
    for (const auto &term : r) {
        if (term.arrows.size() < 2)
            throw InvalidRelation("relation term of length < 2");
        for (auto a : term.arrows)
            if (a >= q.num_arrows())
                throw InvalidRelation("relation uses an unknown arrow");
        for (std::size_t i = 0; i + 1 < term.arrows.size(); ++i)
            if (q.arrow(term.arrows[i]).target != q.arrow(term.arrows[i + 1]).source)
                throw InvalidRelation("relation term is not a path");
        std::pair<std::size_t, std::size_t> e{q.arrow(term.arrows.front()).source, q.arrow(term.arrows.back()).target};
        if (ends && *ends != e)
            throw InvalidRelation("relation terms do not share source and target");
        ends = e;
    }
    return *ends;
}

std::vector<Path> enumerate_paths(const Quiver &q, std::size_t length) {
    std::vector<Path> current;
    for (std::size_t v = 0; v < q.num_vertices(); ++v)
        current.push_back(Path::trivial(v));
    for (std::size_t l = 0; l < length; ++l) {
        std::vector<Path> next;
        for (const auto &p : current)
            for (auto a : q.arrows_from(p.target)) {
                Path n = p;
                n.arrows.push_back(a);
                n.target = q.arrow(a).target;
                next.push_back(std::move(n));
            }
        current = std::move(next);
    }
    std::sort(current.begin(), current.end(), [](const Path &a, const Path &b) {
        return std::tie(a.arrows, a.source) < std::tie(b.arrows, b.source);
    });
    return current;
}

std::shared_ptr<const PathAlgebra> PathAlgebra::build(const Quiver &q, const RelationSet &r, std::size_t max_path_len,
                                                      const FieldSpec &field) {
    if (max_path_len < 1)
        throw std::invalid_argument("max_path_len must be at least 1");
    std::vector<std::pair<std::size_t, std::size_t>> ends;
    for (const auto &rel : r.generators) {
        ends.push_back(relation_endpoints(q, rel));
        for (const auto &term : rel)
            if (term.coeff.field() != field)
                throw InvalidRelation("relation coefficient lies in a different field");
    }

    const std::size_t top = max_path_len + 1;
    std::vector<std::vector<Path>> by_length;
    for (std::size_t l = 0; l <= top; ++l)
        by_length.push_back(enumerate_paths(q, l));

    // columns: longest paths first so that pivots (reducible paths) are as long as possible
    std::vector<Path> columns;
    for (std::size_t l = top + 1; l-- > 0;)
        columns.insert(columns.end(), by_length[l].begin(), by_length[l].end());
    std::map<Path, std::size_t> column_of;
    for (std::size_t c = 0; c < columns.size(); ++c)
        column_of[columns[c]] = c;

    std::vector<Vec> ideal_rows;
    for (std::size_t g = 0; g < r.generators.size(); ++g) {
        const auto &rel = r.generators[g];
        std::size_t min_len = top + 1;
        for (const auto &t : rel)
            min_len = std::min(min_len, t.arrows.size());
        if (min_len > top)
            continue;
        auto [s, t] = ends[g];
        for (std::size_t lp = 0; lp + min_len <= top; ++lp)
            for (const auto &p : by_length[lp]) {
                if (p.target != s)
                    continue;
                for (std::size_t lq = 0; lp + min_len + lq <= top; ++lq)
                    for (const auto &qq : by_length[lq]) {
                        if (qq.source != t)
                            continue;
                        Vec row = zero_vec(field, columns.size());
                        bool nonzero = false;
                        for (const auto &term : rel) {
                            std::size_t len = lp + term.arrows.size() + lq;
                            if (len > top)
                                continue;
                            Path full{p.source, qq.target, p.arrows};
                            full.arrows.insert(full.arrows.end(), term.arrows.begin(), term.arrows.end());
                            full.arrows.insert(full.arrows.end(), qq.arrows.begin(), qq.arrows.end());
                            row[column_of.at(full)] += term.coeff;
                            nonzero = true;
                        }
                        if (nonzero)
                            ideal_rows.push_back(std::move(row));
                    }
            }
    }

    auto reduced = rref(Mat::from_rows(field, columns.size(), ideal_rows));
    std::vector<bool> is_pivot(columns.size(), false);
    for (auto pc : reduced.pivots)
        is_pivot[pc] = true;

    std::shared_ptr<PathAlgebra> alg(new PathAlgebra());
    alg->quiver_ = q;
    alg->relations_ = r;
    alg->field_ = field;
    alg->max_path_len_ = max_path_len;

    std::vector<Path> normal;
    for (std::size_t c = 0; c < columns.size(); ++c)
        if (!is_pivot[c]) {
            if (columns[c].length() == top)
                throw NilpotencyBoundExceeded("path " + path_name(q, columns[c]) + " of length " +
                                              std::to_string(top) + " does not reduce to zero; raise max_path_len");
            normal.push_back(columns[c]);
        }
    std::sort(normal.begin(), normal.end(), [](const Path &a, const Path &b) {
        if (a.length() != b.length())
            return a.length() < b.length();
        return std::tie(a.arrows, a.source) < std::tie(b.arrows, b.source);
    });
    alg->basis_ = normal;
    const std::size_t nv = q.num_vertices();
    alg->between_.assign(nv * nv, {});
    alg->local_index_.resize(normal.size());
    alg->trivial_.assign(nv, 0);
    for (std::size_t b = 0; b < normal.size(); ++b) {
        alg->basis_lookup_[normal[b]] = b;
        auto &bucket = alg->between_[normal[b].source * nv + normal[b].target];
        alg->local_index_[b] = bucket.size();
        bucket.push_back(b);
        if (normal[b].arrows.empty())
            alg->trivial_[normal[b].source] = b;
    }
    for (std::size_t k = 0; k < reduced.rank; ++k) {
        std::size_t pc = reduced.pivots[k];
        SparseVec nf;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (is_pivot[c] || reduced.reduced(k, c).is_zero())
                continue;
            nf.emplace_back(alg->basis_lookup_.at(columns[c]), -reduced.reduced(k, c));
        }
        std::sort(nf.begin(), nf.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
        if (columns[pc].length() == top && !nf.empty())
            throw NilpotencyBoundExceeded("path " + path_name(q, columns[pc]) + " of length " + std::to_string(top) +
                                          " does not reduce to zero; raise max_path_len");
        alg->reducible_[columns[pc]] = std::move(nf);
    }
    return alg;
}

Vec PathAlgebra::reduce(const Path &p) const {
    Vec out = zero_vec(field_, dim());
    if (p.length() > max_path_len_ + 1)
        return out;
    if (auto it = basis_lookup_.find(p); it != basis_lookup_.end()) {
        out[it->second] = Scalar::one(field_);
        return out;
    }
    auto it = reducible_.find(p);
    if (it == reducible_.end())
        throw std::invalid_argument("reduce: not a path of the quiver");
    for (const auto &[b, c] : it->second)
        out[b] = c;
    return out;
}

AlgebraWithBasis PathAlgebra::algebra() const {
    std::vector<std::string> labels;
    for (const auto &p : basis_)
        labels.push_back(path_name(quiver_, p));
    AlgebraWithBasis a(field_, labels);
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) {
            auto cat = concatenate(basis_[i], basis_[j]);
            if (cat)
                a.set_product(i, j, reduce(*cat));
        }
    Vec unit = zero_vec(field_, dim());
    for (auto t : trivial_)
        unit[t] = Scalar::one(field_);
    a.set_unit(unit);
    return a;
}

std::string quiver_to_dot(const Quiver &q, const std::string &graph_name) {
    std::ostringstream os;
    os << "digraph \"" << graph_name << "\" {\n";
    for (const auto &v : q.vertices())
        os << "  \"" << v << "\";\n";
    for (const auto &a : q.arrows())
        os << "  \"" << q.vertices()[a.source] << "\" -> \"" << q.vertices()[a.target] << "\" [label=\"" << a.name
           << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace tiltlab
