#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tiltlab {

/// A finite subset of the naturals containing 0 and satisfying
/// i+j in S <=> j+k in S whenever i+j+k in S.
class AdmissibleSet {
  public:
    AdmissibleSet() : elements_{0} {}
    /// Throws std::invalid_argument unless the set is admissible.
    explicit AdmissibleSet(const std::set<int> &elements);

    [[nodiscard]] const std::set<int> &elements() const { return elements_; }
    [[nodiscard]] bool contains(int i) const { return elements_.count(i) > 0; }
    [[nodiscard]] int max() const { return *elements_.rbegin(); }
    [[nodiscard]] std::vector<int> nonzero() const;
    [[nodiscard]] std::string to_string() const;
    bool operator==(const AdmissibleSet &) const = default;

  private:
    std::set<int> elements_;
};

bool is_admissible(const std::set<int> &s);
/// First violating triple (i, j, k) or an empty vector; {-1} if 0 is missing.
std::vector<int> admissibility_witness(const std::set<int> &s);

} // namespace tiltlab
