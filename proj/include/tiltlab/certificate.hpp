#pragma once

#include "tiltlab/tilting.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>

namespace tiltlab {

struct CertificateOptions {
    bool allow_unchecked_hypotheses = false;
    bool include_timing = false; // off by default so repeated runs are byte-identical
};

/// block name -> degree -> dimension
using BlockTable = std::map<std::string, std::map<int, std::size_t>>;

BlockTable block_table(const AlgebraWithBasis &a);

struct EquivalenceCertificate {
    std::string input_digest;
    std::string field;
    std::string phi;

    std::map<std::string, bool> checks;
    std::vector<Issue> issues;

    HypothesisReport hypotheses;
    bool hypotheses_overridden = false;
    bool unverified_hypotheses = false;

    std::map<std::string, BlockTable> block_dimensions;
    std::size_t dim_lambda1 = 0, dim_lambda2 = 0, dim_end_T = 0;
    std::optional<std::size_t> self_orth_plus_dim, self_orth_minus_dim;
    bool self_orth_plus = false, self_orth_minus = false;
    bool psi_well_defined = false, psi_bijective = false, psi_multiplicative = false, psi_unital = false;
    std::string psi_failure;
    std::optional<std::size_t> dim_lambda3;
    std::string lambda3_failure;
    std::string generation_note;

    std::optional<nlohmann::json> presentation_invariants;
    std::optional<double> timing_ms;
    bool verdict = false;

    [[nodiscard]] std::vector<std::string> failed_checks() const;
    [[nodiscard]] bool failed(const std::string &check) const;
};

/// Tilting checks on already built data; never throws on mathematical failure.
EquivalenceCertificate verify_equivalence(TiltingData &td);

/// Whole pipeline from raw input: admissibility, exactness, hypotheses,
/// subrings, tilting checks. Failures are recorded as named checks.
EquivalenceCertificate certify(const ExactTriple &t, const QuiverRep &m, const std::set<int> &phi,
                               const CertificateOptions &opts = {}, const std::string &digest = "");

nlohmann::json to_json(const EquivalenceCertificate &c);
std::string fnv1a64_hex(const std::string &bytes);

} // namespace tiltlab
