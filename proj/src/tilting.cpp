#include "tiltlab/tilting.hpp"

namespace tiltlab {

namespace {

// matrix of a linear map given on unit vectors
template <class F> Mat linear_map(const FieldSpec &f, std::size_t in, std::size_t out, F &&fn) {
    Mat m(f, out, in);
    for (std::size_t k = 0; k < in; ++k) {
        Vec e = zero_vec(f, in);
        e[k] = Scalar::one(f);
        m.set_col(k, fn(e));
    }
    return m;
}

void put_block(Vec &v, const HomLayout &l, int degree, std::size_t row, std::size_t col, const Vec &block) {
    auto b = l.find(degree, row, col);
    if (!b || b->size != block.size())
        throw DimensionError("block does not fit the layout");
    for (std::size_t k = 0; k < block.size(); ++k)
        v[b->offset + k] = block[k];
}

std::pair<Vec, Vec> split(const Vec &uv, std::size_t n) {
    return {Vec(uv.begin(), uv.begin() + static_cast<long>(n)), Vec(uv.begin() + static_cast<long>(n), uv.end())};
}

} // namespace

TiltingData build_tilting(std::shared_ptr<TheoremSetup> setup, Subrings rings) {
    TiltingData td;
    td.setup = std::move(setup);
    td.rings = std::move(rings);
    auto &s = *td.setup;
    auto &e = s.engine();
    const auto &f = e.algebra()->field();
    auto degrees = s.degrees();
    std::vector<int> shifted;
    for (int d : degrees)
        shifted.push_back(d + 1);
    td.X = {s.x};
    td.N = {s.m1, s.m};
    td.Wbar = {s.y, s.m};
    td.xx = HomLayout(e, td.X, td.X, degrees);
    td.nn = HomLayout(e, td.N, td.N, degrees);
    td.xn = HomLayout(e, td.X, td.N, degrees);
    td.nx = HomLayout(e, td.N, td.X, degrees);
    td.nw = HomLayout(e, td.N, td.Wbar, degrees);
    td.ww = HomLayout(e, td.Wbar, td.Wbar, degrees);
    td.wx1 = HomLayout(e, td.Wbar, td.X, shifted);
    td.wx = HomLayout(e, td.Wbar, td.X, {1});

    td.alphabar = zero_vec(f, td.xn.dim());
    put_block(td.alphabar, td.xn, 0, 0, 0, s.alpha);
    td.betabar = zero_vec(f, td.nw.dim());
    put_block(td.betabar, td.nw, 0, 0, 0, s.beta);
    put_block(td.betabar, td.nw, 0, 1, 1, e.identity_coords(s.m));
    td.wbar = zero_vec(f, td.wx.dim());
    put_block(td.wbar, td.wx, 1, 0, 0, e.connecting_class(s.x, s.y, s.triple().alpha, s.triple().beta));

    std::vector<Vec> us;
    for (int d : degrees)
        for (const auto &h : s.hatted(HattedKind::EndX, d).vectors()) {
            Vec u = zero_vec(f, td.xx.dim());
            put_block(u, td.xx, d, 0, 0, h);
            us.push_back(std::move(u));
        }
    td.u_space = SubspaceBasis::span(f, td.xx.dim(), us);
    return td;
}

TiltingData build_tilting(const ExactTriple &t, const QuiverRep &m, const AdmissibleSet &phi) {
    auto setup = std::make_shared<TheoremSetup>(t, m, phi);
    auto rings = build_subrings(*setup);
    return build_tilting(setup, std::move(rings));
}

ChainHomSpace chain_hom_space(TiltingData &td, int shift) {
    auto &e = td.setup->engine();
    const auto &f = e.algebra()->field();
    ChainHomSpace out;
    out.shift = shift;
    if (shift == 1) {
        // maps X -> N in S, i.e. classes factoring through alpha, modulo homotopies
        auto through_alpha = linear_map(f, td.nn.dim(), td.xn.dim(), [&](const Vec &s) {
            return graded_product(e, td.xn, td.nn, td.xn, td.alphabar, s);
        });
        std::vector<Vec> u_alpha;
        for (const auto &u : td.u_space.vectors())
            u_alpha.push_back(graded_product(e, td.xx, td.xn, td.xn, u, td.alphabar));
        out.cycles = image(through_alpha);
        out.boundaries = sum(out.cycles, SubspaceBasis::span(f, td.xn.dim(), u_alpha));
    } else if (shift == -1) {
        auto constraints = vstack(linear_map(f, td.nx.dim(), td.xx.dim(),
                                             [&](const Vec &t) {
                                                 return graded_product(e, td.xn, td.nx, td.xx, td.alphabar, t);
                                             }),
                                  linear_map(f, td.nx.dim(), td.nn.dim(), [&](const Vec &t) {
                                      return graded_product(e, td.nx, td.xn, td.nn, t, td.alphabar);
                                  }));
        out.cycles = kernel(constraints);
        out.boundaries = SubspaceBasis(f, td.nx.dim());
    } else if (shift == 0) {
        const std::size_t nu = td.u_space.dim(), nv = td.nn.dim(), dx = td.xx.dim();
        auto u_of = [&](const Vec &a) {
            Vec u = zero_vec(f, dx);
            for (std::size_t k = 0; k < nu; ++k)
                if (!a[k].is_zero())
                    axpy(u, a[k], td.u_space.vectors()[k]);
            return u;
        };
        // (a, v) -> alphabar v - u(a) alphabar
        auto compat = linear_map(f, nu + nv, td.xn.dim(), [&](const Vec &av) {
            auto [a, v] = split(av, nu);
            return sub(graded_product(e, td.xn, td.nn, td.xn, td.alphabar, v),
                       graded_product(e, td.xx, td.xn, td.xn, u_of(a), td.alphabar));
        });
        std::vector<Vec> pairs;
        const auto compatible = kernel(compat);
        for (const auto &av : compatible.vectors()) {
            auto [a, v] = split(av, nu);
            pairs.push_back(concat(u_of(a), v));
        }
        out.cycles = SubspaceBasis::span(f, dx + nv, pairs);
        std::vector<Vec> homotopies;
        for (std::size_t k = 0; k < td.nx.dim(); ++k) {
            Vec t = zero_vec(f, td.nx.dim());
            t[k] = Scalar::one(f);
            homotopies.push_back(concat(graded_product(e, td.xn, td.nx, td.xx, td.alphabar, t),
                                        graded_product(e, td.nx, td.xn, td.nn, t, td.alphabar)));
        }
        out.boundaries = SubspaceBasis::span(f, dx + nv, homotopies);
    } else {
        throw std::invalid_argument("chain_hom_space: shift must be -1, 0 or 1");
    }
    if (!out.cycles.contains(out.boundaries))
        throw ClosureFailure("null-homotopic maps are not chain maps for shift " + std::to_string(shift));
    out.quotient.emplace(out.cycles, out.boundaries);
    out.dim = out.quotient->dim();
    out.representatives = out.quotient->representatives();
    return out;
}

ChainEndo EndRing::representative(const TiltingData &td, std::size_t k) const {
    auto [u, v] = split(space.representatives.at(k), td.xx.dim());
    return {u, v};
}

Vec EndRing::coordinates(const ChainEndo &e) const {
    auto c = space.quotient->coordinates(concat(e.u, e.v));
    if (!c)
        throw ClosureFailure("pair is not a chain map");
    return *c;
}

EndRing end_ring_of_tilting(TiltingData &td) { return end_ring_from_space(td, chain_hom_space(td, 0)); }

EndRing end_ring_from_space(TiltingData &td, ChainHomSpace space) {
    auto &e = td.setup->engine();
    const auto &f = e.algebra()->field();
    EndRing out;
    out.space = std::move(space);
    const std::size_t n = out.space.dim;
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < n; ++k)
        labels.push_back("T#" + std::to_string(k));
    AlgebraWithBasis alg(f, labels);
    std::vector<ChainEndo> reps;
    for (std::size_t k = 0; k < n; ++k)
        reps.push_back(out.representative(td, k));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            ChainEndo p{graded_product(e, td.xx, td.xx, td.xx, reps[a].u, reps[b].u),
                        graded_product(e, td.nn, td.nn, td.nn, reps[a].v, reps[b].v)};
            alg.set_product(a, b, out.coordinates(p));
        }
    ChainEndo one{graded_identity(e, td.xx), graded_identity(e, td.nn)};
    alg.set_unit(out.coordinates(one));
    out.algebra = std::move(alg);
    return out;
}

Vec psi_map(TiltingData &td, const ChainEndo &c) {
    auto &e = td.setup->engine();
    const auto &f = e.algebra()->field();
    if (!td.psi_solver) {
        auto a = linear_map(f, td.ww.dim(), td.nw.dim() + td.wx1.dim(), [&](const Vec &h) {
            return concat(graded_product(e, td.nw, td.ww, td.nw, td.betabar, h),
                          graded_product(e, td.ww, td.wx, td.wx1, h, td.wbar));
        });
        td.psi_solver = std::make_shared<const Solver>(a);
        td.psi_nullity = td.ww.dim() - td.psi_solver->rank();
    }
    if (td.psi_nullity != 0)
        throw NonUniqueSolution("psi is not determined: the joint system has a " + std::to_string(td.psi_nullity) +
                                "-dimensional kernel");
    Vec rhs = concat(graded_product(e, td.nn, td.nw, td.nw, c.v, td.betabar),
                     graded_product(e, td.wx, td.xx, td.wx1, td.wbar, c.u));
    auto h = td.psi_solver->solve(rhs);
    if (!h)
        throw NoSolution("no h with betabar h = v betabar and h wbar = wbar u");
    return *h;
}

PsiReport check_psi(TiltingData &td, const EndRing &end) {
    PsiReport r;
    const auto &lam = td.rings.lambda2;
    const auto &f = lam.algebra.field();
    const std::size_t n = end.algebra.dim();
    r.matrix = Mat(f, lam.algebra.dim(), n);
    try {
        for (const auto &b : end.space.boundaries.vectors()) {
            auto [u, v] = split(b, td.xx.dim());
            if (!is_zero(psi_map(td, {u, v})))
                throw NoSolution("a null-homotopic pair has nonzero image");
        }
        r.well_defined = true;
        r.lands_in_lambda2 = true;
        for (std::size_t k = 0; k < n; ++k) {
            auto h = psi_map(td, end.representative(td, k));
            auto c = lam.from_ambient(h);
            if (!c) {
                r.lands_in_lambda2 = false;
                r.failure = "psi of basis element " + std::to_string(k) + " is not in lambda2";
                return r;
            }
            r.matrix.set_col(k, *c);
        }
    } catch (const std::exception &err) {
        r.well_defined = false;
        r.failure = err.what();
        return r;
    }
    r.bijective = r.matrix.rows() == n && rank(r.matrix) == n;
    r.multiplicative = true;
    for (std::size_t a = 0; a < n && r.multiplicative; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            auto lhs = r.matrix.apply(end.algebra.basis_product(a, b));
            auto rhs = lam.algebra.multiply(r.matrix.col(a), r.matrix.col(b));
            if (lhs != rhs) {
                r.multiplicative = false;
                r.failure = "psi(e" + std::to_string(a) + " e" + std::to_string(b) + ") differs from the product of images";
                break;
            }
        }
    r.unital = r.matrix.apply(end.algebra.unit()) == lam.algebra.unit();
    if (!r.unital && r.failure.empty())
        r.failure = "psi does not preserve the unit";
    if (!r.bijective && r.failure.empty())
        r.failure = "psi is not bijective";
    return r;
}

} // namespace tiltlab
