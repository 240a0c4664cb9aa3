#pragma once

#include "tiltlab/algebra.hpp"
#include "tiltlab/quiver.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace tiltlab {

class UnsupportedCharacteristic : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class NonSplitSemisimpleQuotient : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Jacobson radical as the radical of the trace form; needs characteristic
/// 0 or p > dim. Verified to be a nilpotent two-sided ideal.
SubspaceBasis radical(const AlgebraWithBasis &a);

/// J, J^2, ... down to and including the first zero power.
std::vector<SubspaceBasis> radical_powers(const AlgebraWithBasis &a, const SubspaceBasis &j);

/// Complete set of orthogonal primitive idempotents summing to the unit.
std::vector<Vec> primitive_idempotents(const AlgebraWithBasis &a);

struct Presentation {
    FieldSpec field;
    Quiver quiver;
    RelationSet relations;
    std::size_t max_rel_deg = 0;
    std::size_t dim = 0;       // of the original algebra
    std::size_t basic_dim = 0; // of e A e with one idempotent per class
    std::size_t loewy_length = 0;
    std::vector<std::vector<std::size_t>> cartan;        // dim e_i A e_j over classes
    std::vector<std::vector<std::size_t>> basic_classes; // idempotent indices per vertex
    std::vector<Vec> idempotents;
    std::vector<std::vector<std::size_t>> relation_dims; // kernel dimension per (i, j)
    bool relations_complete = false; // the presented path algebra has dimension basic_dim

    [[nodiscard]] std::size_t arrows_between(std::size_t i, std::size_t j) const;
    [[nodiscard]] std::size_t relation_space_dim() const;
    [[nodiscard]] std::vector<std::size_t> multiplicities() const;
};

/// Gabriel quiver of the basic algebra with relations up to max_rel_deg
/// (raised to the Loewy length when that is larger, so long paths are killed).
Presentation present_basic(const AlgebraWithBasis &a, std::size_t max_rel_deg = 3);

/// The path algebra kQ/I of a presentation.
PathAlgebraPtr presented_algebra(const Presentation &p);

struct GlobalDimension {
    bool bounded = false;
    std::size_t value = 0;     // exact value, or a lower bound when unbounded
    bool size_limited = false; // stopped before the cap because a term outgrew the size budget
    [[nodiscard]] std::string to_string() const;
};

/// Maximum projective dimension of the simples, resolving each for at most
/// `cap` steps. A resolution whose terms grow beyond `size_budget` in total
/// dimension is abandoned; the minimal resolution's length so far is still a
/// valid lower bound.
GlobalDimension global_dimension(const Presentation &p, std::size_t cap, std::size_t size_budget = 400);
GlobalDimension global_dimension(const AlgebraWithBasis &a, std::size_t cap, std::size_t size_budget = 400);
GlobalDimension global_dimension(const PathAlgebraPtr &alg, std::size_t cap, std::size_t size_budget = 400);

struct InvariantCheck {
    std::string name;
    bool match = false;
    std::string detail;
};

struct InvariantReport {
    std::vector<InvariantCheck> checks;
    [[nodiscard]] bool all_match() const;
};

/// Vertex count, arrow counts and Cartan matrix up to a common vertex
/// permutation, dimensions and relation-space dimension.
InvariantReport invariants_compare(const Presentation &p1, const Presentation &p2);

nlohmann::json to_json(const Presentation &p);
nlohmann::json to_json(const InvariantReport &r);
std::string presentation_dot(const Presentation &p, const std::string &name);

} // namespace tiltlab
