#include "tiltlab/homological.hpp"

namespace tiltlab {

namespace {

const std::vector<std::size_t> kNoTop;

/// Matrix sending a cochain (generator images in y for the free module with
/// the given tops) to the image of the element u of that free module at vertex w.
Mat evaluation_matrix(const PathAlgebra &alg, const std::vector<std::size_t> &tops, std::size_t w, const Vec &u,
                      const QuiverRep &y) {
    std::size_t cols = 0;
    for (auto v : tops)
        cols += y.dim(v);
    Mat out(alg.field(), y.dim(w), cols);
    std::size_t pos = 0, col = 0;
    for (auto v : tops) {
        const auto &paths = alg.basis_between(v, w);
        Mat block(alg.field(), y.dim(w), y.dim(v));
        for (auto b : paths) {
            const Scalar &c = u.at(pos++);
            if (!c.is_zero())
                block = block + c * y.path_action(alg.basis()[b]);
        }
        out.place(0, col, block);
        col += y.dim(v);
    }
    if (pos != u.size())
        throw DimensionError("evaluation_matrix: element does not match the free module");
    return out;
}

std::vector<Vec> split_images(const std::vector<std::size_t> &tops, const QuiverRep &y, const Vec &cochain) {
    std::vector<Vec> out;
    std::size_t pos = 0;
    for (auto v : tops) {
        out.emplace_back(cochain.begin() + static_cast<long>(pos), cochain.begin() + static_cast<long>(pos + y.dim(v)));
        pos += y.dim(v);
    }
    if (pos != cochain.size())
        throw DimensionError("cochain length does not match the resolution term");
    return out;
}

// column of d : P -> Q at the vertex of generator s of P
Vec generator_value(const PathAlgebra &alg, const std::vector<std::size_t> &tops, std::size_t s, const ModuleMap &d) {
    return d.maps[tops[s]].col(generator_index(alg, tops, s));
}

} // namespace

Vec ExtSpace::coordinates(const Vec &cocycle) const {
    auto c = quotient.coordinates(cocycle);
    if (!c)
        throw std::logic_error("cochain is not a cocycle in degree " + std::to_string(degree));
    return *c;
}

ExtEngine::ExtEngine(PathAlgebraPtr algebra) : algebra_(std::move(algebra)), zero_(QuiverRep::zero(algebra_)) {}

std::size_t ExtEngine::add_module(const QuiverRep &m) {
    if (m.algebra() != algebra_)
        throw std::invalid_argument("module lives over a different algebra");
    modules_.push_back(m);
    resolutions_.emplace_back();
    return modules_.size() - 1;
}

void ExtEngine::extend(std::size_t id, std::size_t depth) {
    auto &r = resolutions_.at(id);
    if (r.terms.empty()) {
        auto pc = projective_cover_syzygy(modules_[id]);
        r.module = modules_[id];
        r.terms = {pc.cover};
        r.tops = {pc.vertices};
        r.augmentation = pc.epi;
        r.last_syzygy = pc.omega;
        r.last_inclusion = pc.inclusion;
        r.depth = 0;
        r.complete = pc.omega.total_dim() == 0;
    }
    while (r.depth < depth && !r.complete) {
        auto pc = projective_cover_syzygy(r.last_syzygy);
        r.differentials.push_back(tiltlab::compose(pc.epi, r.last_inclusion));
        r.terms.push_back(pc.cover);
        r.tops.push_back(pc.vertices);
        r.last_syzygy = pc.omega;
        r.last_inclusion = pc.inclusion;
        ++r.depth;
        r.complete = pc.omega.total_dim() == 0;
    }
}

const ProjResolution &ExtEngine::resolution(std::size_t id, std::size_t depth) {
    extend(id, depth);
    return resolutions_[id];
}

const QuiverRep &ExtEngine::term(std::size_t id, std::size_t k) {
    extend(id, k);
    const auto &r = resolutions_[id];
    return k < r.terms.size() ? r.terms[k] : zero_;
}

const std::vector<std::size_t> &ExtEngine::top(std::size_t id, std::size_t k) {
    extend(id, k);
    const auto &r = resolutions_[id];
    return k < r.tops.size() ? r.tops[k] : kNoTop;
}

const Mat &ExtEngine::coboundary(std::size_t x, std::size_t y, int k) {
    auto key = std::make_tuple(x, y, k);
    if (auto it = coboundary_.find(key); it != coboundary_.end())
        return it->second;
    const auto &alg = *algebra_;
    const auto &yy = modules_.at(y);
    const auto src = top(x, static_cast<std::size_t>(k));
    const auto tgt = top(x, static_cast<std::size_t>(k) + 1);
    std::size_t cols = 0, rows = 0;
    for (auto v : src)
        cols += yy.dim(v);
    for (auto v : tgt)
        rows += yy.dim(v);
    Mat delta(alg.field(), rows, cols);
    std::size_t row = 0;
    if (!tgt.empty()) {
        const auto &d = resolutions_[x].differentials[static_cast<std::size_t>(k)];
        for (std::size_t s = 0; s < tgt.size(); ++s) {
            auto ev = evaluation_matrix(alg, src, tgt[s], generator_value(alg, tgt, s, d), yy);
            delta.place(row, 0, ev);
            row += yy.dim(tgt[s]);
        }
    }
    return coboundary_.emplace(key, std::move(delta)).first->second;
}

const ExtSpace &ExtEngine::ext(std::size_t x, std::size_t y, int i) {
    if (i < 0)
        throw std::invalid_argument("negative Ext degree");
    auto key = std::make_tuple(x, y, i);
    if (auto it = ext_.find(key); it != ext_.end())
        return it->second;
    const auto &f = algebra_->field();
    const Mat &delta = coboundary(x, y, i);
    SubspaceBasis z = kernel(delta);
    SubspaceBasis b = i == 0 ? SubspaceBasis(f, delta.cols()) : image(coboundary(x, y, i - 1));
    ExtSpace space{i, delta.cols(), z, Quotient(z, b)};
    return ext_.emplace(key, std::move(space)).first->second;
}

ModuleMap ExtEngine::cochain_map(std::size_t x, std::size_t y, int i, const Vec &cochain) {
    const auto &tops = top(x, static_cast<std::size_t>(i));
    return map_from_projective(tops, modules_.at(y), split_images(tops, modules_.at(y), cochain));
}

Vec ExtEngine::map_cochain(std::size_t x, int i, const ModuleMap &f) {
    Vec out;
    for (const auto &img : generator_images(top(x, static_cast<std::size_t>(i)), f))
        out = concat(out, img);
    return out;
}

Vec ExtEngine::representative(std::size_t x, std::size_t y, int i, const Vec &coords) {
    const auto &e = ext(x, y, i);
    Vec out = zero_vec(algebra_->field(), e.cochain_dim);
    for (std::size_t a = 0; a < coords.size(); ++a)
        if (!coords[a].is_zero())
            axpy(out, coords[a], e.representatives()[a]);
    return out;
}

Vec ExtEngine::hom_coords(std::size_t x, std::size_t y, const ModuleMap &f) {
    extend(x, 1);
    auto cochain = map_cochain(x, 0, tiltlab::compose(resolutions_[x].augmentation, f));
    return ext(x, y, 0).coordinates(cochain);
}

ModuleMap ExtEngine::hom_map(std::size_t x, std::size_t y, const Vec &coords) {
    extend(x, 1);
    auto g = cochain_map(x, y, 0, representative(x, y, 0, coords));
    const auto &aug = resolutions_[x].augmentation;
    ModuleMap h = zero_map(modules_[x], modules_[y]);
    for (std::size_t v = 0; v < h.maps.size(); ++v) {
        auto sol = solve_matrix(aug.maps[v].transpose(), g.maps[v].transpose());
        if (!sol)
            throw std::logic_error("degree-0 cocycle does not factor through the augmentation");
        h.maps[v] = sol->transpose();
    }
    return h;
}

Vec ExtEngine::identity_coords(std::size_t x) { return hom_coords(x, x, identity_map(modules_.at(x))); }

Vec ExtEngine::preimage_at(std::size_t id, std::size_t k, std::size_t v, const Vec &b) {
    auto key = std::make_tuple(id, k, v);
    auto it = solvers_.find(key);
    if (it == solvers_.end()) {
        extend(id, k);
        const auto &r = resolutions_[id];
        const ModuleMap *d = nullptr;
        if (k == 0)
            d = &r.augmentation;
        else if (k - 1 < r.differentials.size())
            d = &r.differentials[k - 1];
        Mat m = d ? d->maps[v] : Mat(algebra_->field(), b.size(), 0);
        it = solvers_.emplace(key, Solver(m)).first;
    }
    auto sol = it->second.solve(b);
    if (!sol)
        throw LiftFailed("chain map lift failed in degree " + std::to_string(k));
    return *sol;
}

std::vector<Vec> ExtEngine::lift(std::size_t x, std::size_t y, int i, const Vec &cocycle, int depth) {
    const auto &alg = *algebra_;
    std::vector<Vec> out;
    const auto ui = static_cast<std::size_t>(i);
    {
        const auto tops = top(x, ui);
        auto images = split_images(tops, modules_.at(y), cocycle);
        Vec f0;
        for (std::size_t s = 0; s < tops.size(); ++s)
            f0 = concat(f0, preimage_at(y, 0, tops[s], images[s]));
        out.push_back(std::move(f0));
    }
    for (int k = 0; k < depth; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        const auto src_tops = top(x, ui + uk);
        const auto next_tops = top(x, ui + uk + 1);
        const QuiverRep target = term(y, uk);
        Vec next;
        if (!next_tops.empty()) {
            const ModuleMap d = resolutions_[x].differentials[ui + uk];
            for (std::size_t s = 0; s < next_tops.size(); ++s) {
                auto v = next_tops[s];
                Vec w = evaluation_matrix(alg, src_tops, v, generator_value(alg, next_tops, s, d), target)
                            .apply(out.back());
                next = concat(next, preimage_at(y, uk + 1, v, w));
            }
        }
        out.push_back(std::move(next));
    }
    return out;
}

const ExtEngine::ProductTable &ExtEngine::product_table(std::size_t x, std::size_t y, std::size_t z, int i, int j) {
    auto key = std::make_tuple(x, y, z, i, j);
    if (auto it = tables_.find(key); it != tables_.end())
        return it->second;
    const auto &alg = *algebra_;
    const auto &ef = ext(x, y, i);
    const auto &eg = ext(y, z, j);
    const auto &eh = ext(x, z, i + j);
    const auto uj = static_cast<std::size_t>(j);
    const auto tops_x = top(x, static_cast<std::size_t>(i + j));
    const auto tops_y = top(y, uj);
    const QuiverRep pj = term(y, uj);
    ProductTable table(ef.dim(), std::vector<Vec>(eg.dim()));
    for (std::size_t a = 0; a < ef.dim(); ++a) {
        auto chain = lift(x, y, i, ef.representatives()[a], j);
        auto images = split_images(tops_x, pj, chain.back());
        std::vector<Mat> evals;
        for (std::size_t s = 0; s < tops_x.size(); ++s)
            evals.push_back(evaluation_matrix(alg, tops_y, tops_x[s], images[s], modules_.at(z)));
        for (std::size_t b = 0; b < eg.dim(); ++b) {
            Vec cochain;
            for (const auto &ev : evals)
                cochain = concat(cochain, ev.apply(eg.representatives()[b]));
            if (cochain.empty())
                cochain = zero_vec(alg.field(), eh.cochain_dim);
            table[a][b] = eh.coordinates(cochain);
        }
    }
    return tables_.emplace(key, std::move(table)).first->second;
}

Vec ExtEngine::compose(std::size_t x, std::size_t y, std::size_t z, int i, int j, const Vec &f, const Vec &g) {
    const auto &table = product_table(x, y, z, i, j);
    Vec out = zero_vec(algebra_->field(), ext(x, z, i + j).dim());
    for (std::size_t a = 0; a < f.size(); ++a) {
        if (f[a].is_zero())
            continue;
        for (std::size_t b = 0; b < g.size(); ++b)
            if (!g[b].is_zero())
                axpy(out, f[a] * g[b], table[a][b]);
    }
    return out;
}

Vec ExtEngine::connecting_class(std::size_t x, std::size_t y, const ModuleMap &alpha, const ModuleMap &beta) {
    const auto &alg = *algebra_;
    extend(y, 2);
    const auto &r = resolutions_[y];
    const auto tops0 = top(y, 0);
    const auto tops1 = top(y, 1);
    // phi0 : P_0(y) -> M1 with phi0 then beta = augmentation
    Vec phi0;
    for (std::size_t s = 0; s < tops0.size(); ++s) {
        auto sol = Solver(beta.maps[tops0[s]]).solve(generator_value(alg, tops0, s, r.augmentation));
        if (!sol)
            throw LiftFailed("augmentation does not lift through beta");
        phi0 = concat(phi0, *sol);
    }
    Vec w;
    for (std::size_t s = 0; s < tops1.size(); ++s) {
        auto v = tops1[s];
        Vec u = evaluation_matrix(alg, tops0, v, generator_value(alg, tops1, s, r.differentials[0]), beta.source)
                    .apply(phi0);
        auto sol = Solver(alpha.maps[v]).solve(u);
        if (!sol)
            throw LiftFailed("boundary does not factor through alpha");
        w = concat(w, *sol);
    }
    const auto &e = ext(y, x, 1);
    if (w.empty())
        w = zero_vec(alg.field(), e.cochain_dim);
    return e.coordinates(w);
}

ProjResolution proj_resolution(const QuiverRep &m, std::size_t depth) {
    ExtEngine engine(m.algebra());
    auto id = engine.add_module(m);
    return engine.resolution(id, depth);
}

std::vector<ExtClass> ext_space(const QuiverRep &x, const QuiverRep &y, int i) {
    ExtEngine engine(x.algebra());
    auto ix = engine.add_module(x), iy = engine.add_module(y);
    const auto &e = engine.ext(ix, iy, i);
    std::vector<ExtClass> out;
    for (std::size_t a = 0; a < e.dim(); ++a) {
        Vec coords = zero_vec(x.field(), e.dim());
        coords[a] = Scalar::one(x.field());
        out.push_back({x, y, i, engine.cochain_map(ix, iy, i, e.representatives()[a]), coords});
    }
    return out;
}

ExtClass yoneda_compose(const ExtClass &f, const ExtClass &g) {
    if (!(f.target == g.source))
        throw std::invalid_argument("yoneda_compose: target of f differs from source of g");
    ExtEngine engine(f.source.algebra());
    auto x = engine.add_module(f.source), y = engine.add_module(f.target), z = engine.add_module(g.target);
    // normalize from the cocycles so that hand-built classes are accepted
    Vec fc = engine.ext(x, y, f.degree).coordinates(engine.map_cochain(x, f.degree, f.cocycle));
    Vec gc = engine.ext(y, z, g.degree).coordinates(engine.map_cochain(y, g.degree, g.cocycle));
    Vec h = engine.compose(x, y, z, f.degree, g.degree, fc, gc);
    int d = f.degree + g.degree;
    return {f.source, g.target, d, engine.cochain_map(x, z, d, engine.representative(x, z, d, h)), h};
}

HypothesisReport hypothesis_check(const ExactTriple &t, const QuiverRep &m, const AdmissibleSet &phi) {
    HypothesisReport report;
    ExtEngine engine(m.algebra());
    auto im = engine.add_module(m), ix = engine.add_module(t.x), iy = engine.add_module(t.y);
    for (int i : phi.nonzero()) {
        if (auto d = engine.ext_dim(im, ix, i)) {
            report.ok = false;
            report.violations.push_back({"Ext(M,X)", i, d});
        }
        if (auto d = engine.ext_dim(iy, im, i)) {
            report.ok = false;
            report.violations.push_back({"Ext(Y,M)", i, d});
        }
    }
    return report;
}

} // namespace tiltlab
