#pragma once

#include "tiltlab/quiver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tiltlab {

/// A right module over a path algebra, i.e. a representation of its quiver:
/// one vector space per vertex and one matrix per arrow (target x source).
class QuiverRep {
  public:
    QuiverRep() = default;
    QuiverRep(PathAlgebraPtr algebra, std::vector<std::size_t> dims, std::vector<Mat> arrow_maps);
    static QuiverRep zero(PathAlgebraPtr algebra);

    [[nodiscard]] const PathAlgebraPtr &algebra() const { return algebra_; }
    [[nodiscard]] const FieldSpec &field() const { return algebra_->field(); }
    [[nodiscard]] const std::vector<std::size_t> &dims() const { return dims_; }
    [[nodiscard]] std::size_t dim(std::size_t v) const { return dims_[v]; }
    [[nodiscard]] std::size_t total_dim() const;
    [[nodiscard]] const Mat &arrow_map(std::size_t a) const { return arrow_maps_[a]; }
    [[nodiscard]] const std::vector<Mat> &arrow_maps() const { return arrow_maps_; }
    /// Matrix of the action of a path (source space -> target space).
    [[nodiscard]] Mat path_action(const Path &p) const;

    friend bool operator==(const QuiverRep &a, const QuiverRep &b) {
        return a.algebra_ == b.algebra_ && a.dims_ == b.dims_ && a.arrow_maps_ == b.arrow_maps_;
    }

  private:
    PathAlgebraPtr algebra_;
    std::vector<std::size_t> dims_;
    std::vector<Mat> arrow_maps_;
};

/// A homomorphism given by one matrix per vertex (target dim x source dim).
struct ModuleMap {
    QuiverRep source;
    QuiverRep target;
    std::vector<Mat> maps;

    [[nodiscard]] bool is_zero() const;
    /// Concatenation of all vertex matrices, row-major, in vertex order.
    [[nodiscard]] Vec flatten() const;
    friend bool operator==(const ModuleMap &a, const ModuleMap &b) {
        return a.source == b.source && a.target == b.target && a.maps == b.maps;
    }
};

struct RepReport {
    bool ok = true;
    std::vector<std::string> failures;
};

RepReport validate_rep(const QuiverRep &m);
bool is_homomorphism(const ModuleMap &f);

ModuleMap identity_map(const QuiverRep &m);
ModuleMap zero_map(const QuiverRep &m, const QuiverRep &n);
/// "f then g".
ModuleMap compose(const ModuleMap &f, const ModuleMap &g);
ModuleMap add(const ModuleMap &f, const ModuleMap &g);
ModuleMap scale(const Scalar &c, const ModuleMap &f);
ModuleMap from_flat(const QuiverRep &source, const QuiverRep &target, const Vec &flat);

struct DirectSum {
    QuiverRep sum;
    std::vector<ModuleMap> injections;
    std::vector<ModuleMap> projections;
};
DirectSum direct_sum(const std::vector<QuiverRep> &parts);
/// Block map between direct sums: blocks[p][q] : source_p -> target_q.
ModuleMap block_map(const DirectSum &source, const DirectSum &target, const std::vector<std::vector<ModuleMap>> &blocks);

/// Basis of Hom(m, n) by solving the intertwining equations.
std::vector<ModuleMap> hom_basis(const QuiverRep &m, const QuiverRep &n);

struct KernelCokernel {
    QuiverRep ker;
    ModuleMap inclusion;
    QuiverRep coker;
    ModuleMap projection;
};
KernelCokernel kernel_cokernel(const ModuleMap &f);

QuiverRep projective(const PathAlgebraPtr &alg, std::size_t v);
QuiverRep injective(const PathAlgebraPtr &alg, std::size_t v);
QuiverRep simple(const PathAlgebraPtr &alg, std::size_t v);

/// Direct sum of indecomposable projectives P(v) for v in `vertices`.
QuiverRep free_module(const PathAlgebraPtr &alg, const std::vector<std::size_t> &vertices);
/// Index of the generator e_{v_s} of summand s inside the vertex-v_s space.
std::size_t generator_index(const PathAlgebra &alg, const std::vector<std::size_t> &vertices, std::size_t s);
/// The unique map from free_module(vertices) sending generator s to images[s].
ModuleMap map_from_projective(const std::vector<std::size_t> &vertices, const QuiverRep &target,
                              const std::vector<Vec> &images);
/// Images of the generators under a map out of free_module(vertices).
std::vector<Vec> generator_images(const std::vector<std::size_t> &vertices, const ModuleMap &f);

/// Per-vertex radical rad(m) = sum of images of incoming arrows.
std::vector<SubspaceBasis> radical_subspaces(const QuiverRep &m);
/// dim of top(m) at each vertex.
std::vector<std::size_t> top_dims(const QuiverRep &m);

struct ProjectiveCover {
    QuiverRep cover;
    std::vector<std::size_t> vertices; // summands P(v) of the cover
    ModuleMap epi;
    QuiverRep omega;
    ModuleMap inclusion;
};
ProjectiveCover projective_cover_syzygy(const QuiverRep &m);

/// M1 is declared isomorphic to the direct sum of the listed summands of M,
/// optionally through an explicit per-vertex isomorphism sum -> M1.
struct AddWitness {
    std::vector<QuiverRep> summands_of_m;
    std::vector<std::size_t> decomposition;
    std::optional<std::vector<Mat>> base_change;
};

struct ExactTriple {
    QuiverRep x, m1, y;
    ModuleMap alpha, beta;
    AddWitness witness;
};

struct Issue {
    std::string code; // NotExact, NotInAddM, ShapeMismatch, NotHomomorphism
    std::string message;
};

struct TripleReport {
    bool ok = true;
    std::vector<Issue> issues;
};

TripleReport check_exact_triple(const ExactTriple &t);

struct ApproximationResult {
    bool left_ok = false;
    bool right_ok = false;
};
ApproximationResult approximation_check(const ExactTriple &t, const QuiverRep &m);

/// For an epimorphism beta : A -> B and an endomorphism v of A preserving
/// ker(beta), the endomorphism h of B with (beta then h) = (v then beta).
std::optional<ModuleMap> induced_cokernel_map(const ModuleMap &beta, const ModuleMap &v);

/// Split exact triple 0 -> X -> X (+) Y -> Y -> 0 with canonical maps; the
/// middle term is recorded as the sum of the two given summands.
ExactTriple split_triple(const QuiverRep &x, const QuiverRep &y);

} // namespace tiltlab
