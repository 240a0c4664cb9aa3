#pragma once

#include "tiltlab/rep.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tiltlab {

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A structurally invalid problem; `field` is a JSON pointer into the document.
class ValidationError : public std::runtime_error {
  public:
    ValidationError(std::string field, std::string reason, std::size_t line);
    [[nodiscard]] const std::string &field() const { return field_; }
    [[nodiscard]] const std::string &reason() const { return reason_; }
    [[nodiscard]] std::size_t line() const { return line_; }

  private:
    std::string field_, reason_;
    std::size_t line_;
};

class IOError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ProblemOptions {
    std::size_t max_rel_deg = 3;
    std::size_t gldim_cap = 12;
    bool allow_unchecked_hypotheses = false;
    bool operator==(const ProblemOptions &) const = default;
};

struct NamedMap {
    std::string source, target;
    std::vector<Mat> maps; // one per vertex, target dim x source dim
};

struct ProblemSpec {
    FieldSpec field;
    Quiver quiver;
    RelationSet relations;
    std::size_t max_path_len = 1;
    PathAlgebraPtr algebra;
    std::map<std::string, QuiverRep> modules;
    std::vector<std::string> summands_of_m;
    std::vector<std::string> m1_decomposition; // names from summands_of_m, with repetition
    std::optional<std::vector<Mat>> base_change; // direct sum -> M1, per vertex
    NamedMap alpha, beta;
    std::set<int> phi{0};
    ProblemOptions options;

    /// 0 -> X -> M1 -> Y -> 0 with its add(M) witness.
    [[nodiscard]] ExactTriple triple() const;
    /// The direct sum of summands_of_m.
    [[nodiscard]] QuiverRep theorem_m() const;
};

/// Structural equality: algebras are compared by quiver, relations, field and bound.
bool operator==(const ProblemSpec &a, const ProblemSpec &b);

ProblemSpec parse_problem(const std::string &text);
ProblemSpec load_problem(const std::filesystem::path &path);
nlohmann::json to_json(const ProblemSpec &spec);
std::string serialize_problem(const ProblemSpec &spec);

struct RunRequest {
    std::string command; // check, subrings, verify, present, gldim
    std::string algebra_name = "lambda2"; // for present: A, lambda1, lambda2, gamma
    std::optional<std::set<int>> phi;
    std::optional<std::size_t> cap;
    bool allow_unchecked_hypotheses = false;
    std::filesystem::path out_dir = ".";
};

struct RunResult {
    int exit_code = 0; // 0 iff every requested verdict holds
    nlohmann::json summary;
    std::vector<std::filesystem::path> artifacts;
};

/// Runs one command and writes its artifacts; mathematical failures are
/// reported in the artifacts and the exit code, never thrown.
RunResult run(const ProblemSpec &spec, const RunRequest &req);

} // namespace tiltlab
