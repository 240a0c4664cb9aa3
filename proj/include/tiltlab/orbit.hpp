#pragma once

#include "tiltlab/homological.hpp"

#include <optional>

namespace tiltlab {

class ClosureFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Direct sum of registered modules, listed by engine id.
using Object = std::vector<std::size_t>;

/// Coordinates of the graded hom space from one object to another: one
/// block Ext^degree(source[row], target[col]) per (degree, row, col).
class HomLayout {
  public:
    struct Block {
        int degree;
        std::size_t row, col;
        std::size_t offset, size;
    };

    HomLayout() = default;
    HomLayout(ExtEngine &engine, Object source, Object target, std::vector<int> degrees);

    [[nodiscard]] const Object &source() const { return source_; }
    [[nodiscard]] const Object &target() const { return target_; }
    [[nodiscard]] const std::vector<int> &degrees() const { return degrees_; }
    [[nodiscard]] const std::vector<Block> &blocks() const { return blocks_; }
    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] std::optional<Block> find(int degree, std::size_t row, std::size_t col) const;
    [[nodiscard]] Vec extract(const Vec &v, const Block &b) const;

  private:
    Object source_, target_;
    std::vector<int> degrees_;
    std::vector<Block> blocks_;
    std::size_t dim_ = 0;
};

/// Product "f then g" of graded morphisms; components whose degree is not
/// among the result layout's degrees are dropped.
Vec graded_product(ExtEngine &engine, const HomLayout &lf, const HomLayout &lg, const HomLayout &lh, const Vec &f,
                   const Vec &g);
/// Graded identity of an object inside a layout from the object to itself.
Vec graded_identity(ExtEngine &engine, const HomLayout &l);

/// Free-standing graded hom space and composition.
struct GradedHom {
    QuiverRep source, target;
    AdmissibleSet phi;
    std::map<int, std::vector<ExtClass>> blocks;
    [[nodiscard]] std::size_t dim() const;
};

struct GradedMorphism {
    std::map<int, ExtClass> components;
};

GradedHom graded_hom(const QuiverRep &u, const QuiverRep &v, const AdmissibleSet &phi);
GradedMorphism graded_compose(const GradedMorphism &f, const GradedMorphism &g, const AdmissibleSet &phi);

enum class HattedKind { EndX, EndY, XtoM, MtoY, XtoY };
std::string to_string(HattedKind k);

struct HattedSubspace {
    HattedKind kind;
    std::map<int, SubspaceBasis> per_degree; // inside the Ext coordinates of the block
    std::map<int, std::size_t> ambient_dims;
};

/// The exact triple, the module M and Phi registered in one engine.
class TheoremSetup {
  public:
    TheoremSetup(const ExactTriple &t, const QuiverRep &m, const AdmissibleSet &phi);

    ExtEngine &engine() { return *engine_; }
    [[nodiscard]] const AdmissibleSet &phi() const { return phi_; }
    [[nodiscard]] const ExactTriple &triple() const { return triple_; }
    [[nodiscard]] std::vector<int> degrees() const;

    std::size_t x = 0, m1 = 0, y = 0, m = 0;
    Vec alpha, beta; // degree-0 coordinates

    /// Hatted subspace of one degree, cached.
    const SubspaceBasis &hatted(HattedKind kind, int degree);
    HattedSubspace hatted_subspace(HattedKind kind);

  private:
    SubspaceBasis span_of(std::size_t u, std::size_t v, int i, const std::vector<Vec> &vectors);
    std::unique_ptr<ExtEngine> engine_;
    ExactTriple triple_;
    AdmissibleSet phi_;
    std::map<std::pair<HattedKind, int>, SubspaceBasis> hatted_;
};

HattedSubspace hatted_subspace(HattedKind kind, const ExactTriple &t, const QuiverRep &m, const AdmissibleSet &phi);

/// A subring of E^Phi(object) spanned by chosen subspaces of its blocks.
struct Subring {
    AlgebraWithBasis algebra;
    HomLayout layout; // ambient graded endomorphism space
    struct Piece {
        std::string name;
        int degree;
        std::size_t row, col;
        SubspaceBasis space; // inside the Ext block
        std::size_t offset;  // first basis index in the algebra
    };
    std::vector<Piece> pieces;

    /// Algebra coordinates to ambient layout coordinates.
    [[nodiscard]] Vec to_ambient(const Vec &coords) const;
    /// Ambient coordinates to algebra coordinates; nullopt if outside the subring.
    [[nodiscard]] std::optional<Vec> from_ambient(const Vec &v) const;
};

struct PieceSpec {
    std::string name;
    std::size_t row, col;
    std::optional<HattedKind> hat; // nullopt: the full block
};

/// Materializes the structure constants; throws ClosureFailure when a
/// product leaves the declared span or the identity is missing.
Subring materialize_subring(TheoremSetup &s, const Object &object, const std::vector<PieceSpec> &pieces);

struct Subrings {
    Subring lambda1, lambda2, gamma;
    std::optional<Subring> lambda3;
    std::string lambda3_failure; // empty when the 3x3 ring is closed
};

Subrings build_subrings(TheoremSetup &s);

} // namespace tiltlab
