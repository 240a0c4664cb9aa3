#pragma once

#include "tiltlab/algebra.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace tiltlab {

struct Arrow {
    std::string name;
    std::size_t source = 0;
    std::size_t target = 0;
    bool operator==(const Arrow &) const = default;
};

class Quiver {
  public:
    Quiver() = default;
    Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

    [[nodiscard]] std::size_t num_vertices() const { return vertices_.size(); }
    [[nodiscard]] std::size_t num_arrows() const { return arrows_.size(); }
    [[nodiscard]] const std::vector<std::string> &vertices() const { return vertices_; }
    [[nodiscard]] const std::vector<Arrow> &arrows() const { return arrows_; }
    [[nodiscard]] const Arrow &arrow(std::size_t a) const { return arrows_.at(a); }
    [[nodiscard]] std::size_t vertex_index(const std::string &name) const;
    [[nodiscard]] std::size_t arrow_index(const std::string &name) const;
    [[nodiscard]] std::vector<std::size_t> arrows_from(std::size_t v) const;
    [[nodiscard]] std::vector<std::size_t> arrows_into(std::size_t v) const;

    bool operator==(const Quiver &) const = default;

  private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
};

/// A path read left to right: arrows[0] is traversed first. A trivial path
/// has no arrows and source == target.
struct Path {
    std::size_t source = 0;
    std::size_t target = 0;
    std::vector<std::size_t> arrows;

    [[nodiscard]] std::size_t length() const { return arrows.size(); }
    static Path trivial(std::size_t v) { return {v, v, {}}; }
    auto operator<=>(const Path &) const = default;
};

/// Concatenation "p then q"; nullopt if the endpoints do not match.
std::optional<Path> concatenate(const Path &p, const Path &q);
std::string path_name(const Quiver &q, const Path &p);

struct RelationTerm {
    Scalar coeff;
    std::vector<std::size_t> arrows;
    bool operator==(const RelationTerm &) const = default;
};
using Relation = std::vector<RelationTerm>;

struct RelationSet {
    std::vector<Relation> generators;
    bool operator==(const RelationSet &) const = default;
};

class InvalidRelation : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class NilpotencyBoundExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Checks endpoint homogeneity and length >= 2; returns (source, target).
std::pair<std::size_t, std::size_t> relation_endpoints(const Quiver &q, const Relation &r);

/// All paths of the given exact length, in lexicographic arrow order.
std::vector<Path> enumerate_paths(const Quiver &q, std::size_t length);

/// kQ/I where I is generated by the relations, with a basis of path normal
/// forms. Built by linear elimination inside paths of length <= bound + 1.
class PathAlgebra {
  public:
    static std::shared_ptr<const PathAlgebra> build(const Quiver &q, const RelationSet &r, std::size_t max_path_len,
                                                    const FieldSpec &field);

    [[nodiscard]] const Quiver &quiver() const { return quiver_; }
    [[nodiscard]] const RelationSet &relations() const { return relations_; }
    [[nodiscard]] const FieldSpec &field() const { return field_; }
    [[nodiscard]] std::size_t max_path_len() const { return max_path_len_; }
    [[nodiscard]] std::size_t dim() const { return basis_.size(); }
    [[nodiscard]] const std::vector<Path> &basis() const { return basis_; }
    /// Basis indices of the normal-form paths from v to w.
    [[nodiscard]] const std::vector<std::size_t> &basis_between(std::size_t v, std::size_t w) const {
        return between_[v * quiver_.num_vertices() + w];
    }
    /// Position of basis element b inside basis_between(source, target).
    [[nodiscard]] std::size_t local_index(std::size_t b) const { return local_index_[b]; }
    /// Number of basis paths starting at v and ending at w.
    [[nodiscard]] std::size_t count_between(std::size_t v, std::size_t w) const {
        return basis_between(v, w).size();
    }
    [[nodiscard]] std::size_t trivial_basis_index(std::size_t v) const { return trivial_[v]; }

    /// Normal form of an arbitrary path as coordinates in the basis.
    [[nodiscard]] Vec reduce(const Path &p) const;
    /// Structure-constant algebra with product "then" (concatenation).
    [[nodiscard]] AlgebraWithBasis algebra() const;

  private:
    PathAlgebra() = default;

    Quiver quiver_;
    RelationSet relations_;
    FieldSpec field_;
    std::size_t max_path_len_ = 0;
    std::vector<Path> basis_;
    std::vector<std::vector<std::size_t>> between_;
    std::vector<std::size_t> local_index_;
    std::vector<std::size_t> trivial_;
    std::map<Path, std::size_t> basis_lookup_;
    std::map<Path, SparseVec> reducible_; // path -> normal form
};

using PathAlgebraPtr = std::shared_ptr<const PathAlgebra>;

/// DOT rendering: one node per vertex, one labelled edge per arrow.
std::string quiver_to_dot(const Quiver &q, const std::string &graph_name);

} // namespace tiltlab
