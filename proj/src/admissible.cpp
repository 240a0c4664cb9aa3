#include "tiltlab/admissible.hpp"

namespace tiltlab {

std::vector<int> admissibility_witness(const std::set<int> &s) {
    if (!s.count(0))
        return {-1};
    for (int x : s)
        if (x < 0)
            return {-1};
    for (int i : s)
        for (int j : s)
            for (int k : s) {
                if (!s.count(i + j + k))
                    continue;
                if (s.count(i + j) != s.count(j + k))
                    return {i, j, k};
            }
    return {};
}

bool is_admissible(const std::set<int> &s) { return admissibility_witness(s).empty(); }

AdmissibleSet::AdmissibleSet(const std::set<int> &elements) : elements_(elements) {
    auto w = admissibility_witness(elements_);
    if (w.size() == 1)
        throw std::invalid_argument("admissible set must contain 0 and only naturals");
    if (!w.empty())
        throw std::invalid_argument("set " + to_string() + " is not admissible: i=" + std::to_string(w[0]) +
                                    ", j=" + std::to_string(w[1]) + ", k=" + std::to_string(w[2]));
}

std::vector<int> AdmissibleSet::nonzero() const {
    std::vector<int> out;
    for (int i : elements_)
        if (i != 0)
            out.push_back(i);
    return out;
}

std::string AdmissibleSet::to_string() const {
    std::string out = "{";
    for (int i : elements_)
        out += (out.size() > 1 ? "," : "") + std::to_string(i);
    return out + "}";
}

} // namespace tiltlab
