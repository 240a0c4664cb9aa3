#include "tiltlab/orbit.hpp"

namespace tiltlab {

HomLayout::HomLayout(ExtEngine &engine, Object source, Object target, std::vector<int> degrees)
    : source_(std::move(source)), target_(std::move(target)), degrees_(std::move(degrees)) {
    for (int d : degrees_)
        for (std::size_t r = 0; r < source_.size(); ++r)
            for (std::size_t c = 0; c < target_.size(); ++c) {
                auto n = engine.ext_dim(source_[r], target_[c], d);
                blocks_.push_back({d, r, c, dim_, n});
                dim_ += n;
            }
}

std::optional<HomLayout::Block> HomLayout::find(int degree, std::size_t row, std::size_t col) const {
    for (const auto &b : blocks_)
        if (b.degree == degree && b.row == row && b.col == col)
            return b;
    return std::nullopt;
}

Vec HomLayout::extract(const Vec &v, const Block &b) const {
    return Vec(v.begin() + static_cast<long>(b.offset), v.begin() + static_cast<long>(b.offset + b.size));
}

Vec graded_product(ExtEngine &engine, const HomLayout &lf, const HomLayout &lg, const HomLayout &lh, const Vec &f,
                   const Vec &g) {
    if (lf.target() != lg.source() || lh.source() != lf.source() || lh.target() != lg.target())
        throw std::invalid_argument("graded_product: objects do not match");
    const auto &field = engine.algebra()->field();
    Vec h = zero_vec(field, lh.dim());
    for (const auto &bf : lf.blocks()) {
        Vec fb = lf.extract(f, bf);
        if (is_zero(fb))
            continue;
        for (const auto &bg : lg.blocks()) {
            if (bg.row != bf.col)
                continue;
            auto bh = lh.find(bf.degree + bg.degree, bf.row, bg.col);
            if (!bh || bh->size == 0)
                continue;
            Vec gb = lg.extract(g, bg);
            if (is_zero(gb))
                continue;
            Vec prod = engine.compose(lf.source()[bf.row], lf.target()[bf.col], lg.target()[bg.col], bf.degree,
                                      bg.degree, fb, gb);
            for (std::size_t k = 0; k < prod.size(); ++k)
                h[bh->offset + k] += prod[k];
        }
    }
    return h;
}

Vec graded_identity(ExtEngine &engine, const HomLayout &l) {
    if (l.source() != l.target())
        throw std::invalid_argument("graded_identity: not an endomorphism layout");
    Vec out = zero_vec(engine.algebra()->field(), l.dim());
    for (std::size_t r = 0; r < l.source().size(); ++r) {
        auto b = l.find(0, r, r);
        if (!b)
            throw std::invalid_argument("graded_identity: degree 0 missing");
        auto id = engine.identity_coords(l.source()[r]);
        for (std::size_t k = 0; k < id.size(); ++k)
            out[b->offset + k] = id[k];
    }
    return out;
}

std::size_t GradedHom::dim() const {
    std::size_t n = 0;
    for (const auto &[d, b] : blocks)
        n += b.size();
    return n;
}

GradedHom graded_hom(const QuiverRep &u, const QuiverRep &v, const AdmissibleSet &phi) {
    GradedHom out{u, v, phi, {}};
    for (int i : phi.elements())
        out.blocks[i] = ext_space(u, v, i);
    return out;
}

GradedMorphism graded_compose(const GradedMorphism &f, const GradedMorphism &g, const AdmissibleSet &phi) {
    GradedMorphism h;
    for (const auto &[i, fi] : f.components)
        for (const auto &[j, gj] : g.components) {
            if (!phi.contains(i) || !phi.contains(j))
                throw std::invalid_argument("graded_compose: component outside Phi");
            if (!phi.contains(i + j))
                continue;
            auto p = yoneda_compose(fi, gj);
            auto it = h.components.find(i + j);
            if (it == h.components.end()) {
                h.components.emplace(i + j, p);
            } else {
                it->second.coords = add(it->second.coords, p.coords);
                it->second.cocycle = add(it->second.cocycle, p.cocycle);
            }
        }
    return h;
}

std::string to_string(HattedKind k) {
    switch (k) {
    case HattedKind::EndX:
        return "EndX";
    case HattedKind::EndY:
        return "EndY";
    case HattedKind::XtoM:
        return "XtoM";
    case HattedKind::MtoY:
        return "MtoY";
    case HattedKind::XtoY:
        return "XtoY";
    }
    return "?";
}

TheoremSetup::TheoremSetup(const ExactTriple &t, const QuiverRep &m, const AdmissibleSet &phi)
    : engine_(std::make_unique<ExtEngine>(t.x.algebra())), triple_(t), phi_(phi) {
    x = engine_->add_module(t.x);
    m1 = engine_->add_module(t.m1);
    y = engine_->add_module(t.y);
    this->m = engine_->add_module(m);
    alpha = engine_->hom_coords(x, m1, t.alpha);
    beta = engine_->hom_coords(m1, y, t.beta);
}

std::vector<int> TheoremSetup::degrees() const { return {phi_.elements().begin(), phi_.elements().end()}; }

SubspaceBasis TheoremSetup::span_of(std::size_t u, std::size_t v, int i, const std::vector<Vec> &vectors) {
    return SubspaceBasis::span(engine_->algebra()->field(), engine_->ext_dim(u, v, i), vectors);
}

const SubspaceBasis &TheoremSetup::hatted(HattedKind kind, int i) {
    auto key = std::make_pair(kind, i);
    if (auto it = hatted_.find(key); it != hatted_.end())
        return it->second;
    auto &e = *engine_;
    const auto &f = e.algebra()->field();
    auto unit = [&](std::size_t n, std::size_t k) {
        Vec v = zero_vec(f, n);
        v[k] = Scalar::one(f);
        return v;
    };
    // images of the basis of Ext^i(u, v) under a linear map
    auto images = [&](std::size_t u, std::size_t v, auto &&fn) {
        std::vector<Vec> out;
        auto n = e.ext_dim(u, v, i);
        for (std::size_t k = 0; k < n; ++k)
            out.push_back(fn(unit(n, k)));
        return out;
    };
    SubspaceBasis result;
    switch (kind) {
    case HattedKind::EndX: {
        // t alpha[i] lies in alpha Ext^i(M1, M1)
        auto target = span_of(x, m1, i, images(m1, m1, [&](const Vec &s) { return e.compose(x, m1, m1, 0, i, alpha, s); }));
        auto cols = images(x, x, [&](const Vec &t) { return e.compose(x, x, m1, i, 0, t, alpha); });
        result = preimage(Mat::from_columns(f, e.ext_dim(x, m1, i), cols), target);
        break;
    }
    case HattedKind::EndY: {
        auto target = span_of(m1, y, i, images(m1, m1, [&](const Vec &s) { return e.compose(m1, m1, y, i, 0, s, beta); }));
        auto cols = images(y, y, [&](const Vec &t) { return e.compose(m1, y, y, 0, i, beta, t); });
        result = preimage(Mat::from_columns(f, e.ext_dim(m1, y, i), cols), target);
        break;
    }
    case HattedKind::XtoM:
        result = span_of(x, m, i, images(m1, m, [&](const Vec &s) { return e.compose(x, m1, m, 0, i, alpha, s); }));
        break;
    case HattedKind::MtoY:
        result = span_of(m, y, i, images(m, m1, [&](const Vec &s) { return e.compose(m, m1, y, i, 0, s, beta); }));
        break;
    case HattedKind::XtoY: {
        auto via_alpha = span_of(x, y, i, images(m1, y, [&](const Vec &s) { return e.compose(x, m1, y, 0, i, alpha, s); }));
        auto via_beta = span_of(x, y, i, images(x, m1, [&](const Vec &s) { return e.compose(x, m1, y, i, 0, s, beta); }));
        result = intersect(via_alpha, via_beta);
        break;
    }
    }
    return hatted_.emplace(key, std::move(result)).first->second;
}

HattedSubspace TheoremSetup::hatted_subspace(HattedKind kind) {
    HattedSubspace out{kind, {}, {}};
    for (int i : phi_.elements()) {
        const auto &h = hatted(kind, i);
        out.per_degree.emplace(i, h);
        out.ambient_dims[i] = h.ambient();
    }
    return out;
}

HattedSubspace hatted_subspace(HattedKind kind, const ExactTriple &t, const QuiverRep &m, const AdmissibleSet &phi) {
    TheoremSetup s(t, m, phi);
    return s.hatted_subspace(kind);
}

Vec Subring::to_ambient(const Vec &coords) const {
    Vec out = zero_vec(algebra.field(), layout.dim());
    for (const auto &p : pieces) {
        auto b = layout.find(p.degree, p.row, p.col);
        for (std::size_t k = 0; k < p.space.dim(); ++k) {
            const auto &c = coords.at(p.offset + k);
            if (c.is_zero())
                continue;
            const auto &v = p.space.vectors()[k];
            for (std::size_t q = 0; q < v.size(); ++q)
                out[b->offset + q] += c * v[q];
        }
    }
    return out;
}

std::optional<Vec> Subring::from_ambient(const Vec &v) const {
    Vec out = zero_vec(algebra.field(), algebra.dim());
    Vec rest = v;
    for (const auto &p : pieces) {
        auto b = layout.find(p.degree, p.row, p.col);
        auto c = p.space.coordinates(layout.extract(v, *b));
        if (!c)
            return std::nullopt;
        for (std::size_t k = 0; k < c->size(); ++k)
            out[p.offset + k] = (*c)[k];
        for (std::size_t q = 0; q < b->size; ++q)
            rest[b->offset + q] = Scalar::zero(algebra.field());
    }
    if (!is_zero(rest))
        return std::nullopt;
    return out;
}

Subring materialize_subring(TheoremSetup &s, const Object &object, const std::vector<PieceSpec> &specs) {
    auto &e = s.engine();
    const auto &f = e.algebra()->field();
    Subring ring;
    ring.layout = HomLayout(e, object, object, s.degrees());
    std::vector<std::string> labels;
    std::vector<BlockInfo> infos;
    for (const auto &spec : specs)
        for (int d : s.degrees()) {
            SubspaceBasis space = spec.hat ? s.hatted(*spec.hat, d)
                                           : SubspaceBasis::full(f, e.ext_dim(object[spec.row], object[spec.col], d));
            ring.pieces.push_back({spec.name, d, spec.row, spec.col, space, labels.size()});
            infos.push_back({spec.name, d, labels.size(), space.dim()});
            for (std::size_t k = 0; k < space.dim(); ++k)
                labels.push_back(spec.name + "[" + std::to_string(d) + "]#" + std::to_string(k));
        }
    auto piece_at = [&](int d, std::size_t r, std::size_t c) -> const Subring::Piece * {
        for (const auto &p : ring.pieces)
            if (p.degree == d && p.row == r && p.col == c)
                return &p;
        return nullptr;
    };
    AlgebraWithBasis alg(f, labels);
    for (const auto &b : infos)
        alg.add_block(b);
    for (const auto &p : ring.pieces)
        for (const auto &q : ring.pieces) {
            if (p.col != q.row || !s.phi().contains(p.degree + q.degree))
                continue;
            const auto *t = piece_at(p.degree + q.degree, p.row, q.col);
            if (!t)
                throw ClosureFailure("no block declared for " + p.name + " times " + q.name);
            for (std::size_t a = 0; a < p.space.dim(); ++a)
                for (std::size_t b = 0; b < q.space.dim(); ++b) {
                    Vec prod = e.compose(object[p.row], object[p.col], object[q.col], p.degree, q.degree,
                                         p.space.vectors()[a], q.space.vectors()[b]);
                    auto c = t->space.coordinates(prod);
                    if (!c)
                        throw ClosureFailure("product " + labels[p.offset + a] + " * " + labels[q.offset + b] +
                                             " leaves " + t->name + "[" + std::to_string(t->degree) + "]");
                    Vec full = zero_vec(f, labels.size());
                    for (std::size_t k = 0; k < c->size(); ++k)
                        full[t->offset + k] = (*c)[k];
                    alg.set_product(p.offset + a, q.offset + b, full);
                }
        }
    Vec unit = zero_vec(f, labels.size());
    for (std::size_t r = 0; r < object.size(); ++r) {
        const auto *p = piece_at(0, r, r);
        auto c = p ? p->space.coordinates(e.identity_coords(object[r])) : std::nullopt;
        if (!c)
            throw ClosureFailure("identity of summand " + std::to_string(r) + " is not in the subring");
        for (std::size_t k = 0; k < c->size(); ++k)
            unit[p->offset + k] = (*c)[k];
    }
    alg.set_unit(unit);
    ring.algebra = std::move(alg);
    return ring;
}

Subrings build_subrings(TheoremSetup &s) {
    using K = HattedKind;
    const Object o1{s.x, s.m}, o2{s.y, s.m}, og{s.x, s.m, s.y};
    Subrings out;
    out.lambda1 = materialize_subring(s, o1,
                                      {{"E^(X)", 0, 0, K::EndX},
                                       {"E^(X,M)", 0, 1, K::XtoM},
                                       {"E(M,X)", 1, 0, std::nullopt},
                                       {"E(M)", 1, 1, std::nullopt}});
    out.lambda2 = materialize_subring(s, o2,
                                      {{"E^(Y)", 0, 0, K::EndY},
                                       {"E(Y,M)", 0, 1, std::nullopt},
                                       {"E^(M,Y)", 1, 0, K::MtoY},
                                       {"E(M)", 1, 1, std::nullopt}});
    const char *names[] = {"X", "M", "Y"};
    std::vector<PieceSpec> full;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c)
            full.push_back({r == c ? std::string("E(") + names[r] + ")"
                                   : std::string("E(") + names[r] + "," + names[c] + ")",
                            r, c, std::nullopt});
    out.gamma = materialize_subring(s, og, full);
    std::vector<PieceSpec> three = full;
    three[0] = {"E^(X)", 0, 0, K::EndX};
    three[1] = {"E^(X,M)", 0, 1, K::XtoM};
    three[2] = {"E^(X,Y)", 0, 2, K::XtoY};
    three[5] = {"E^(M,Y)", 1, 2, K::MtoY};
    three[8] = {"E^(Y)", 2, 2, K::EndY};
    try {
        out.lambda3 = materialize_subring(s, og, three);
    } catch (const ClosureFailure &err) {
        out.lambda3_failure = err.what();
    }
    return out;
}

} // namespace tiltlab
