#include "tiltlab/rep.hpp"

#include <sstream>

namespace tiltlab {

namespace {

void same_algebra(const QuiverRep &a, const QuiverRep &b) {
    if (a.algebra() != b.algebra())
        throw std::invalid_argument("modules over different algebras");
}

/// Coordinates of reduce(path) restricted to the basis paths from v to w.
Vec local_coords(const PathAlgebra &alg, const Vec &full, std::size_t v, std::size_t w) {
    const auto &idx = alg.basis_between(v, w);
    Vec out;
    out.reserve(idx.size());
    for (auto b : idx)
        out.push_back(full[b]);
    return out;
}

} // namespace

QuiverRep::QuiverRep(PathAlgebraPtr algebra, std::vector<std::size_t> dims, std::vector<Mat> arrow_maps)
    : algebra_(std::move(algebra)), dims_(std::move(dims)), arrow_maps_(std::move(arrow_maps)) {
    const auto &q = algebra_->quiver();
    if (dims_.size() != q.num_vertices() || arrow_maps_.size() != q.num_arrows())
        throw DimensionError("representation does not match the quiver");
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        const auto &m = arrow_maps_[a];
        if (m.rows() != dims_[q.arrow(a).target] || m.cols() != dims_[q.arrow(a).source])
            throw DimensionError("arrow map '" + q.arrow(a).name + "' has the wrong shape");
        if (m.field() != algebra_->field())
            throw DimensionError("arrow map '" + q.arrow(a).name + "' lies in the wrong field");
    }
}

QuiverRep QuiverRep::zero(PathAlgebraPtr algebra) {
    const auto &q = algebra->quiver();
    std::vector<Mat> maps;
    for (std::size_t a = 0; a < q.num_arrows(); ++a)
        maps.emplace_back(algebra->field(), 0, 0);
    return QuiverRep(algebra, std::vector<std::size_t>(q.num_vertices(), 0), std::move(maps));
}

std::size_t QuiverRep::total_dim() const {
    std::size_t n = 0;
    for (auto d : dims_)
        n += d;
    return n;
}

Mat QuiverRep::path_action(const Path &p) const {
    Mat m = Mat::identity(field(), dims_[p.source]);
    for (auto a : p.arrows)
        m = arrow_maps_[a] * m;
    return m;
}

bool ModuleMap::is_zero() const {
    for (const auto &m : maps)
        if (!m.is_zero())
            return false;
    return true;
}

Vec ModuleMap::flatten() const {
    Vec out;
    for (const auto &m : maps)
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                out.push_back(m(r, c));
    return out;
}

RepReport validate_rep(const QuiverRep &m) {
    RepReport report;
    const auto &alg = *m.algebra();
    const auto &q = alg.quiver();
    for (std::size_t g = 0; g < alg.relations().generators.size(); ++g) {
        const auto &rel = alg.relations().generators[g];
        auto [s, t] = relation_endpoints(q, rel);
        Mat acc(m.field(), m.dim(t), m.dim(s));
        for (const auto &term : rel)
            acc = acc + term.coeff * m.path_action(Path{s, t, term.arrows});
        if (!acc.is_zero()) {
            std::string desc;
            for (const auto &term : rel)
                desc += (desc.empty() ? "" : " + ") + term.coeff.to_string() + "*" + path_name(q, Path{s, t, term.arrows});
            report.ok = false;
            report.failures.push_back("relation " + std::to_string(g) + " (" + desc + ") does not vanish");
        }
    }
    // paths longer than the verified bound must act as zero as well
    for (const auto &p : enumerate_paths(q, alg.max_path_len() + 1))
        if (!m.path_action(p).is_zero()) {
            report.ok = false;
            report.failures.push_back("path " + path_name(q, p) + " beyond the nilpotency bound acts nontrivially");
        }
    return report;
}

bool is_homomorphism(const ModuleMap &f) {
    const auto &q = f.source.algebra()->quiver();
    if (f.maps.size() != q.num_vertices())
        return false;
    for (std::size_t v = 0; v < q.num_vertices(); ++v)
        if (f.maps[v].rows() != f.target.dim(v) || f.maps[v].cols() != f.source.dim(v))
            return false;
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        auto s = q.arrow(a).source, t = q.arrow(a).target;
        if (!(f.target.arrow_map(a) * f.maps[s] == f.maps[t] * f.source.arrow_map(a)))
            return false;
    }
    return true;
}

ModuleMap identity_map(const QuiverRep &m) {
    ModuleMap f{m, m, {}};
    for (auto d : m.dims())
        f.maps.push_back(Mat::identity(m.field(), d));
    return f;
}

ModuleMap zero_map(const QuiverRep &m, const QuiverRep &n) {
    same_algebra(m, n);
    ModuleMap f{m, n, {}};
    for (std::size_t v = 0; v < m.dims().size(); ++v)
        f.maps.emplace_back(m.field(), n.dim(v), m.dim(v));
    return f;
}

ModuleMap compose(const ModuleMap &f, const ModuleMap &g) {
    if (!(f.target.dims() == g.source.dims()))
        throw DimensionError("compose: target of f differs from source of g");
    ModuleMap h{f.source, g.target, {}};
    for (std::size_t v = 0; v < f.maps.size(); ++v)
        h.maps.push_back(g.maps[v] * f.maps[v]);
    return h;
}

ModuleMap add(const ModuleMap &f, const ModuleMap &g) {
    ModuleMap h = f;
    for (std::size_t v = 0; v < f.maps.size(); ++v)
        h.maps[v] = f.maps[v] + g.maps[v];
    return h;
}

ModuleMap scale(const Scalar &c, const ModuleMap &f) {
    ModuleMap h = f;
    for (auto &m : h.maps)
        m = c * m;
    return h;
}

ModuleMap from_flat(const QuiverRep &source, const QuiverRep &target, const Vec &flat) {
    ModuleMap f = zero_map(source, target);
    std::size_t k = 0;
    for (auto &m : f.maps)
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                m(r, c) = flat.at(k++);
    if (k != flat.size())
        throw DimensionError("from_flat: length mismatch");
    return f;
}

DirectSum direct_sum(const std::vector<QuiverRep> &parts) {
    if (parts.empty())
        throw std::invalid_argument("direct_sum of an empty list");
    const auto &alg = parts.front().algebra();
    const auto &q = alg->quiver();
    const auto &f = alg->field();
    for (const auto &p : parts)
        same_algebra(p, parts.front());
    std::vector<std::size_t> dims(q.num_vertices(), 0);
    for (const auto &p : parts)
        for (std::size_t v = 0; v < dims.size(); ++v)
            dims[v] += p.dim(v);
    std::vector<Mat> maps;
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        Mat m(f, dims[q.arrow(a).target], dims[q.arrow(a).source]);
        std::size_t r0 = 0, c0 = 0;
        for (const auto &p : parts) {
            m.place(r0, c0, p.arrow_map(a));
            r0 += p.dim(q.arrow(a).target);
            c0 += p.dim(q.arrow(a).source);
        }
        maps.push_back(std::move(m));
    }
    DirectSum out{QuiverRep(alg, dims, std::move(maps)), {}, {}};
    std::vector<std::size_t> offset(q.num_vertices(), 0);
    for (const auto &p : parts) {
        ModuleMap inj = zero_map(p, out.sum), proj = zero_map(out.sum, p);
        for (std::size_t v = 0; v < dims.size(); ++v) {
            inj.maps[v].place(offset[v], 0, Mat::identity(f, p.dim(v)));
            proj.maps[v].place(0, offset[v], Mat::identity(f, p.dim(v)));
            offset[v] += p.dim(v);
        }
        out.injections.push_back(std::move(inj));
        out.projections.push_back(std::move(proj));
    }
    return out;
}

ModuleMap block_map(const DirectSum &source, const DirectSum &target, const std::vector<std::vector<ModuleMap>> &blocks) {
    ModuleMap out = zero_map(source.sum, target.sum);
    for (std::size_t p = 0; p < source.projections.size(); ++p)
        for (std::size_t q = 0; q < target.injections.size(); ++q)
            out = add(out, compose(compose(source.projections[p], blocks[p][q]), target.injections[q]));
    return out;
}

std::vector<ModuleMap> hom_basis(const QuiverRep &m, const QuiverRep &n) {
    same_algebra(m, n);
    const auto &q = m.algebra()->quiver();
    const auto &f = m.field();
    std::vector<std::size_t> offset(q.num_vertices() + 1, 0);
    for (std::size_t v = 0; v < q.num_vertices(); ++v)
        offset[v + 1] = offset[v] + n.dim(v) * m.dim(v);
    auto var = [&](std::size_t v, std::size_t r, std::size_t c) { return offset[v] + r * m.dim(v) + c; };

    std::vector<Vec> equations;
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        auto s = q.arrow(a).source, t = q.arrow(a).target;
        const Mat &na = n.arrow_map(a), &ma = m.arrow_map(a);
        // (N_a F_s - F_t M_a)_{ij} = 0
        for (std::size_t i = 0; i < n.dim(t); ++i)
            for (std::size_t j = 0; j < m.dim(s); ++j) {
                Vec eq = zero_vec(f, offset.back());
                for (std::size_t k = 0; k < n.dim(s); ++k)
                    eq[var(s, k, j)] += na(i, k);
                for (std::size_t k = 0; k < m.dim(t); ++k)
                    eq[var(t, i, k)] -= ma(k, j);
                equations.push_back(std::move(eq));
            }
    }
    SubspaceBasis solutions = equations.empty() ? SubspaceBasis::full(f, offset.back())
                                                : kernel(Mat::from_rows(f, offset.back(), equations));
    std::vector<ModuleMap> out;
    for (const auto &sol : solutions.vectors())
        out.push_back(from_flat(m, n, sol));
    return out;
}

KernelCokernel kernel_cokernel(const ModuleMap &f) {
    const auto &alg = f.source.algebra();
    const auto &q = alg->quiver();
    const auto &fld = alg->field();
    std::vector<Mat> ker_basis, coker_proj, coker_complement;
    std::vector<std::size_t> ker_dims, coker_dims;
    for (std::size_t v = 0; v < q.num_vertices(); ++v) {
        auto k = kernel(f.maps[v]);
        ker_basis.push_back(Mat::from_columns(fld, f.source.dim(v), k.vectors()));
        ker_dims.push_back(k.dim());
        auto im = image(f.maps[v]);
        coker_proj.push_back(im.projection_matrix());
        auto cols = im.complement_columns();
        Mat comp(fld, f.target.dim(v), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            comp(cols[j], j) = Scalar::one(fld);
        coker_complement.push_back(std::move(comp));
        coker_dims.push_back(cols.size());
    }
    std::vector<Mat> ker_arrows, coker_arrows;
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        auto s = q.arrow(a).source, t = q.arrow(a).target;
        auto x = solve_matrix(ker_basis[t], f.source.arrow_map(a) * ker_basis[s]);
        if (!x)
            throw std::logic_error("kernel is not a submodule; the map is not a homomorphism");
        ker_arrows.push_back(*x);
        coker_arrows.push_back(coker_proj[t] * f.target.arrow_map(a) * coker_complement[s]);
    }
    KernelCokernel out;
    out.ker = QuiverRep(alg, ker_dims, std::move(ker_arrows));
    out.inclusion = ModuleMap{out.ker, f.source, ker_basis};
    out.coker = QuiverRep(alg, coker_dims, std::move(coker_arrows));
    out.projection = ModuleMap{f.target, out.coker, coker_proj};
    return out;
}

QuiverRep projective(const PathAlgebraPtr &alg, std::size_t v) {
    const auto &q = alg->quiver();
    std::vector<std::size_t> dims;
    for (std::size_t w = 0; w < q.num_vertices(); ++w)
        dims.push_back(alg->count_between(v, w));
    std::vector<Mat> maps;
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        auto s = q.arrow(a).source, t = q.arrow(a).target;
        Mat m(alg->field(), dims[t], dims[s]);
        const auto &src = alg->basis_between(v, s);
        for (std::size_t j = 0; j < src.size(); ++j) {
            auto cat = concatenate(alg->basis()[src[j]], Path{s, t, {a}});
            m.set_col(j, local_coords(*alg, alg->reduce(*cat), v, t));
        }
        maps.push_back(std::move(m));
    }
    return QuiverRep(alg, dims, std::move(maps));
}

QuiverRep injective(const PathAlgebraPtr &alg, std::size_t v) {
    const auto &q = alg->quiver();
    std::vector<std::size_t> dims;
    for (std::size_t w = 0; w < q.num_vertices(); ++w)
        dims.push_back(alg->count_between(w, v));
    std::vector<Mat> maps;
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        auto s = q.arrow(a).source, t = q.arrow(a).target;
        Mat m(alg->field(), dims[t], dims[s]);
        const auto &tgt = alg->basis_between(t, v);
        // row q (path t->v), column b (path s->v): coefficient of b in a*q
        for (std::size_t i = 0; i < tgt.size(); ++i) {
            auto cat = concatenate(Path{s, t, {a}}, alg->basis()[tgt[i]]);
            m.set_row(i, local_coords(*alg, alg->reduce(*cat), s, v));
        }
        maps.push_back(std::move(m));
    }
    return QuiverRep(alg, dims, std::move(maps));
}

QuiverRep simple(const PathAlgebraPtr &alg, std::size_t v) {
    const auto &q = alg->quiver();
    std::vector<std::size_t> dims(q.num_vertices(), 0);
    dims[v] = 1;
    std::vector<Mat> maps;
    for (std::size_t a = 0; a < q.num_arrows(); ++a)
        maps.emplace_back(alg->field(), dims[q.arrow(a).target], dims[q.arrow(a).source]);
    return QuiverRep(alg, dims, std::move(maps));
}

QuiverRep free_module(const PathAlgebraPtr &alg, const std::vector<std::size_t> &vertices) {
    if (vertices.empty())
        return QuiverRep::zero(alg);
    std::vector<QuiverRep> parts;
    for (auto v : vertices)
        parts.push_back(projective(alg, v));
    return direct_sum(parts).sum;
}

std::size_t generator_index(const PathAlgebra &alg, const std::vector<std::size_t> &vertices, std::size_t s) {
    std::size_t v = vertices[s], offset = 0;
    for (std::size_t t = 0; t < s; ++t)
        offset += alg.count_between(vertices[t], v);
    return offset + alg.local_index(alg.trivial_basis_index(v));
}

ModuleMap map_from_projective(const std::vector<std::size_t> &vertices, const QuiverRep &target,
                              const std::vector<Vec> &images) {
    const auto &alg = target.algebra();
    const auto &q = alg->quiver();
    if (images.size() != vertices.size())
        throw DimensionError("map_from_projective: one image per summand required");
    QuiverRep source = free_module(alg, vertices);
    ModuleMap f = zero_map(source, target);
    for (std::size_t w = 0; w < q.num_vertices(); ++w) {
        std::size_t col = 0;
        for (std::size_t s = 0; s < vertices.size(); ++s)
            for (auto b : alg->basis_between(vertices[s], w))
                f.maps[w].set_col(col++, target.path_action(alg->basis()[b]).apply(images[s]));
    }
    return f;
}

std::vector<Vec> generator_images(const std::vector<std::size_t> &vertices, const ModuleMap &f) {
    const auto &alg = *f.source.algebra();
    std::vector<Vec> out;
    for (std::size_t s = 0; s < vertices.size(); ++s)
        out.push_back(f.maps[vertices[s]].col(generator_index(alg, vertices, s)));
    return out;
}

std::vector<SubspaceBasis> radical_subspaces(const QuiverRep &m) {
    const auto &q = m.algebra()->quiver();
    std::vector<SubspaceBasis> out;
    for (std::size_t v = 0; v < q.num_vertices(); ++v) {
        std::vector<Vec> gens;
        for (auto a : q.arrows_into(v)) {
            const auto &am = m.arrow_map(a);
            for (std::size_t c = 0; c < am.cols(); ++c)
                gens.push_back(am.col(c));
        }
        out.push_back(SubspaceBasis::span(m.field(), m.dim(v), gens));
    }
    return out;
}

std::vector<std::size_t> top_dims(const QuiverRep &m) {
    std::vector<std::size_t> out;
    auto rad = radical_subspaces(m);
    for (std::size_t v = 0; v < rad.size(); ++v)
        out.push_back(m.dim(v) - rad[v].dim());
    return out;
}

ProjectiveCover projective_cover_syzygy(const QuiverRep &m) {
    auto rad = radical_subspaces(m);
    ProjectiveCover pc;
    std::vector<Vec> images;
    for (std::size_t v = 0; v < rad.size(); ++v)
        for (auto c : rad[v].complement_columns()) {
            Vec e = zero_vec(m.field(), m.dim(v));
            e[c] = Scalar::one(m.field());
            images.push_back(std::move(e));
            pc.vertices.push_back(v);
        }
    pc.epi = map_from_projective(pc.vertices, m, images);
    pc.cover = pc.epi.source;
    auto kc = kernel_cokernel(pc.epi);
    pc.omega = kc.ker;
    pc.inclusion = kc.inclusion;
    return pc;
}

TripleReport check_exact_triple(const ExactTriple &t) {
    TripleReport r;
    auto issue = [&](const std::string &code, const std::string &msg) {
        r.ok = false;
        r.issues.push_back({code, msg});
    };
    const auto &alg = t.x.algebra();
    if (t.m1.algebra() != alg || t.y.algebra() != alg) {
        issue("ShapeMismatch", "modules live over different algebras");
        return r;
    }
    const auto &q = alg->quiver();
    auto shape_ok = [&](const ModuleMap &f, const QuiverRep &s, const QuiverRep &tg, const char *name) {
        bool ok = f.maps.size() == q.num_vertices() && f.source.dims() == s.dims() && f.target.dims() == tg.dims();
        if (ok)
            for (std::size_t v = 0; v < q.num_vertices(); ++v)
                ok = ok && f.maps[v].rows() == tg.dim(v) && f.maps[v].cols() == s.dim(v);
        if (!ok)
            issue("ShapeMismatch", std::string(name) + " has the wrong shape");
        return ok;
    };
    bool shapes = shape_ok(t.alpha, t.x, t.m1, "alpha");
    shapes = shape_ok(t.beta, t.m1, t.y, "beta") && shapes;
    if (!shapes)
        return r;
    ModuleMap alpha{t.x, t.m1, t.alpha.maps}, beta{t.m1, t.y, t.beta.maps};
    if (!is_homomorphism(alpha))
        issue("NotHomomorphism", "alpha does not commute with the arrow maps");
    if (!is_homomorphism(beta))
        issue("NotHomomorphism", "beta does not commute with the arrow maps");
    for (std::size_t v = 0; v < q.num_vertices(); ++v) {
        const auto &vn = q.vertices()[v];
        if (rank(alpha.maps[v]) != t.x.dim(v))
            issue("NotExact", "alpha is not injective at vertex " + vn);
        if (rank(beta.maps[v]) != t.y.dim(v))
            issue("NotExact", "beta is not surjective at vertex " + vn);
        if (!(beta.maps[v] * alpha.maps[v]).is_zero())
            issue("NotExact", "alpha then beta is nonzero at vertex " + vn);
        if (t.x.dim(v) + t.y.dim(v) != t.m1.dim(v))
            issue("NotExact", "image of alpha differs from kernel of beta at vertex " + vn);
    }

    const auto &w = t.witness;
    if (w.decomposition.empty()) {
        if (t.m1.total_dim() != 0)
            issue("NotInAddM", "empty decomposition declared for a nonzero M1");
        return r;
    }
    std::vector<QuiverRep> parts;
    for (auto idx : w.decomposition) {
        if (idx >= w.summands_of_m.size()) {
            issue("NotInAddM", "decomposition names an undeclared summand");
            return r;
        }
        parts.push_back(w.summands_of_m[idx]);
    }
    auto sum = direct_sum(parts).sum;
    if (sum.dims() != t.m1.dims()) {
        issue("NotInAddM", "M1 dimensions differ from the declared direct sum");
        return r;
    }
    if (w.base_change) {
        if (w.base_change->size() != q.num_vertices()) {
            issue("NotInAddM", "base change needs one matrix per vertex");
            return r;
        }
        ModuleMap iso{sum, t.m1, *w.base_change};
        bool ok = true;
        for (std::size_t v = 0; v < q.num_vertices(); ++v) {
            const auto &b = iso.maps[v];
            ok = ok && b.rows() == t.m1.dim(v) && b.cols() == sum.dim(v) && rank(b) == sum.dim(v);
        }
        if (!ok || !is_homomorphism(iso))
            issue("NotInAddM", "declared base change is not an isomorphism onto M1");
    } else if (!(sum == t.m1)) {
        issue("NotInAddM", "M1 is not structurally equal to the declared direct sum");
    }
    return r;
}

ApproximationResult approximation_check(const ExactTriple &t, const QuiverRep &m) {
    const auto &f = t.x.field();
    auto span_dim = [&](const std::vector<ModuleMap> &maps, std::size_t ambient) {
        std::vector<Vec> flat;
        for (const auto &g : maps)
            flat.push_back(g.flatten());
        return SubspaceBasis::span(f, ambient, flat).dim();
    };
    ApproximationResult out;
    {
        std::vector<ModuleMap> images;
        for (const auto &h : hom_basis(t.m1, m))
            images.push_back(compose(t.alpha, h));
        auto target = hom_basis(t.x, m);
        std::size_t ambient = zero_map(t.x, m).flatten().size();
        out.left_ok = span_dim(images, ambient) == target.size();
    }
    {
        std::vector<ModuleMap> images;
        for (const auto &h : hom_basis(m, t.m1))
            images.push_back(compose(h, t.beta));
        auto target = hom_basis(m, t.y);
        std::size_t ambient = zero_map(m, t.y).flatten().size();
        out.right_ok = span_dim(images, ambient) == target.size();
    }
    return out;
}

std::optional<ModuleMap> induced_cokernel_map(const ModuleMap &beta, const ModuleMap &v) {
    ModuleMap h = zero_map(beta.target, beta.target);
    for (std::size_t k = 0; k < beta.maps.size(); ++k) {
        // h_k beta_k = beta_k v_k  <=>  beta_k^T h_k^T = (beta_k v_k)^T
        auto x = solve_matrix(beta.maps[k].transpose(), (beta.maps[k] * v.maps[k]).transpose());
        if (!x)
            return std::nullopt;
        h.maps[k] = x->transpose();
    }
    if (!is_homomorphism(h))
        return std::nullopt;
    return h;
}

ExactTriple split_triple(const QuiverRep &x, const QuiverRep &y) {
    auto ds = direct_sum({x, y});
    ExactTriple t;
    t.x = x;
    t.y = y;
    t.m1 = ds.sum;
    t.alpha = ds.injections[0];
    t.beta = ds.projections[1];
    t.witness.summands_of_m = {x, y};
    t.witness.decomposition = {0, 1};
    return t;
}

} // namespace tiltlab
