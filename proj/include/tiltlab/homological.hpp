#pragma once

#include "tiltlab/admissible.hpp"
#include "tiltlab/rep.hpp"

#include <map>
#include <memory>
#include <tuple>

namespace tiltlab {

class LiftFailed : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Minimal projective resolution ... -> P_1 -> P_0 -> module.
/// differentials[k] is d_{k+1} : P_{k+1} -> P_k.
struct ProjResolution {
    QuiverRep module;
    std::vector<QuiverRep> terms;
    std::vector<std::vector<std::size_t>> tops; // vertices of the summands of each P_k
    std::vector<ModuleMap> differentials;
    ModuleMap augmentation;
    std::size_t depth = 0;
    bool complete = false;
    // inclusion of the last computed syzygy into the last term
    QuiverRep last_syzygy;
    ModuleMap last_inclusion;
};

ProjResolution proj_resolution(const QuiverRep &m, std::size_t depth);

struct ExtClass {
    QuiverRep source;
    QuiverRep target;
    int degree = 0;
    ModuleMap cocycle; // P_degree(source) -> target
    Vec coords;
};

/// Ext^i(x, y) as cohomology of Hom(P_*(x), y), where a cochain on P_i is
/// stored as the concatenated images of the generators of P_i.
struct ExtSpace {
    int degree = 0;
    std::size_t cochain_dim = 0;
    SubspaceBasis cocycles;
    Quotient quotient;

    [[nodiscard]] std::size_t dim() const { return quotient.dim(); }
    /// Throws std::logic_error if the cochain is not a cocycle.
    [[nodiscard]] Vec coordinates(const Vec &cocycle) const;
    [[nodiscard]] const std::vector<Vec> &representatives() const { return quotient.representatives(); }
};

/// Caches resolutions, Ext spaces and Yoneda product tables for a fixed set
/// of registered modules over one algebra.
class ExtEngine {
  public:
    explicit ExtEngine(PathAlgebraPtr algebra);

    std::size_t add_module(const QuiverRep &m);
    [[nodiscard]] const QuiverRep &module(std::size_t id) const { return modules_.at(id); }
    [[nodiscard]] std::size_t num_modules() const { return modules_.size(); }
    [[nodiscard]] const PathAlgebraPtr &algebra() const { return algebra_; }

    const ProjResolution &resolution(std::size_t id, std::size_t depth);
    /// P_k of the resolution of module id (the zero module past completion).
    const QuiverRep &term(std::size_t id, std::size_t k);
    const std::vector<std::size_t> &top(std::size_t id, std::size_t k);

    const ExtSpace &ext(std::size_t x, std::size_t y, int i);
    std::size_t ext_dim(std::size_t x, std::size_t y, int i) { return ext(x, y, i).dim(); }

    /// Cochain (generator images) to the map P_i(x) -> y and back.
    ModuleMap cochain_map(std::size_t x, std::size_t y, int i, const Vec &cochain);
    Vec map_cochain(std::size_t x, int i, const ModuleMap &f);
    /// Representative cocycle of the class with the given coordinates.
    Vec representative(std::size_t x, std::size_t y, int i, const Vec &coords);

    /// Degree-0 identification Ext^0(x, y) = Hom(x, y).
    Vec hom_coords(std::size_t x, std::size_t y, const ModuleMap &f);
    ModuleMap hom_map(std::size_t x, std::size_t y, const Vec &coords);
    Vec identity_coords(std::size_t x);

    /// table[a][b] = coordinates of (basis a of Ext^i(x,y)) then (basis b of Ext^j(y,z)).
    using ProductTable = std::vector<std::vector<Vec>>;
    const ProductTable &product_table(std::size_t x, std::size_t y, std::size_t z, int i, int j);
    /// Yoneda product "f then g" in coordinates.
    Vec compose(std::size_t x, std::size_t y, std::size_t z, int i, int j, const Vec &f, const Vec &g);

    /// Class in Ext^1(y, x) of the exact sequence 0 -> x -alpha-> m1 -beta-> y -> 0.
    Vec connecting_class(std::size_t x, std::size_t y, const ModuleMap &alpha, const ModuleMap &beta);

  private:
    void extend(std::size_t id, std::size_t depth);
    const Mat &coboundary(std::size_t x, std::size_t y, int k);
    /// Chain map lift of a cocycle P_i(x) -> y; entry k holds the generator
    /// images of F_k : P_{i+k}(x) -> P_k(y), for k <= depth.
    std::vector<Vec> lift(std::size_t x, std::size_t y, int i, const Vec &cocycle, int depth);
    /// Least-pivot preimage under d_k of module id (k = 0: the augmentation) at vertex v.
    Vec preimage_at(std::size_t id, std::size_t k, std::size_t v, const Vec &b);

    PathAlgebraPtr algebra_;
    std::vector<QuiverRep> modules_;
    std::vector<ProjResolution> resolutions_;
    std::map<std::tuple<std::size_t, std::size_t, int>, ExtSpace> ext_;
    std::map<std::tuple<std::size_t, std::size_t, int>, Mat> coboundary_;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t, int, int>, ProductTable> tables_;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Solver> solvers_;
    QuiverRep zero_;
};

/// Basis of Ext^i(x, y) with cocycle representatives.
std::vector<ExtClass> ext_space(const QuiverRep &x, const QuiverRep &y, int i);
ExtClass yoneda_compose(const ExtClass &f, const ExtClass &g);

struct HypothesisViolation {
    std::string which; // "Ext(M,X)" or "Ext(Y,M)"
    int degree = 0;
    std::size_t dim = 0;
};

struct HypothesisReport {
    bool ok = true;
    std::vector<HypothesisViolation> violations;
};

HypothesisReport hypothesis_check(const ExactTriple &t, const QuiverRep &m, const AdmissibleSet &phi);

} // namespace tiltlab
