#include "tiltlab/admissible.hpp"
#include "tiltlab/certificate.hpp"
#include "tiltlab/presentation.hpp"
#include "tiltlab/problem.hpp"

#include <fstream>

namespace tiltlab {

using nlohmann::json;

namespace {

class Runner {
  public:
    Runner(const ProblemSpec &spec, const RunRequest &req) : spec_(spec), req_(req) {
        phi_ = req.phi.value_or(spec.phi);
        cap_ = req.cap.value_or(spec.options.gldim_cap);
        allow_ = req.allow_unchecked_hypotheses || spec.options.allow_unchecked_hypotheses;
        ProblemSpec effective = spec;
        effective.phi = phi_;
        effective.options.gldim_cap = cap_;
        effective.options.allow_unchecked_hypotheses = allow_;
        digest_ = fnv1a64_hex(serialize_problem(effective));
    }

    RunResult go() {
        const auto &c = req_.command;
        static const std::set<std::string> commands{"check", "subrings", "verify", "present", "gldim"};
        if (!commands.count(c))
            throw std::invalid_argument("unknown command '" + c + "'");
        static const std::set<std::string> names{"A", "lambda1", "lambda2", "gamma"};
        if (c == "present" && !names.count(req_.algebra_name))
            throw std::invalid_argument("unknown algebra '" + req_.algebra_name +
                                        "' (expected A, lambda1, lambda2 or gamma)");
        try {
            if (c == "check")
                check();
            else if (c == "subrings")
                subrings();
            else if (c == "verify")
                verify();
            else if (c == "present")
                present();
            else
                gldim();
        } catch (const IOError &) {
            throw;
        } catch (const std::exception &e) {
            fail_with(e.what());
        }
        result_.summary["command"] = c;
        result_.exit_code = result_.summary.value("verdict", false) ? 0 : 1;
        return std::move(result_);
    }

  private:
    void fail_with(const std::string &what) {
        result_.summary["verdict"] = false;
        result_.summary["error"] = what;
        write(req_.command + ".json", result_.summary);
    }

    void write(const std::string &name, const std::string &content) {
        std::error_code ec;
        std::filesystem::create_directories(req_.out_dir, ec);
        const auto path = req_.out_dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out || !(out << content) || !out.flush())
            throw IOError("cannot write " + path.string());
        if (std::find(result_.artifacts.begin(), result_.artifacts.end(), path) == result_.artifacts.end())
            result_.artifacts.push_back(path);
    }

    void write(const std::string &name, const json &j) { write(name, j.dump(2) + "\n"); }

    Subrings rings() {
        TheoremSetup s(spec_.triple(), spec_.theorem_m(), AdmissibleSet(phi_));
        return build_subrings(s);
    }

    json emit_presentation(const std::string &name, const AlgebraWithBasis &a) {
        auto p = present_basic(a, spec_.options.max_rel_deg);
        write("presentation_" + name + ".json", to_json(p));
        write("quiver_" + name + ".dot", presentation_dot(p, name));
        return {{"dim", p.dim},
                {"basic_dim", p.basic_dim},
                {"vertices", p.quiver.num_vertices()},
                {"arrows", p.quiver.num_arrows()},
                {"cartan", p.cartan},
                {"relations_complete", p.relations_complete}};
    }

    void check() {
        json j;
        json issues = json::array();
        const auto witness = admissibility_witness(phi_);
        j["checks"]["phi_admissible"] = witness.empty();
        if (!witness.empty())
            issues.push_back({{"code", "InadmissiblePhi"}, {"witness", witness}});
        const auto t = spec_.triple();
        bool exact = true, in_add = true;
        for (const auto &issue : check_exact_triple(t).issues) {
            (issue.code == "NotInAddM" ? in_add : exact) = false;
            issues.push_back({{"code", issue.code}, {"message", issue.message}});
        }
        j["checks"]["exactness"] = exact;
        j["checks"]["add_witness"] = in_add;
        if (witness.empty() && exact && in_add) {
            auto h = hypothesis_check(t, spec_.theorem_m(), AdmissibleSet(phi_));
            j["checks"]["hypotheses"] = h.ok;
            for (const auto &v : h.violations)
                issues.push_back({{"code", "HypothesisViolation"}, {"which", v.which}, {"degree", v.degree}, {"dim", v.dim}});
        }
        bool verdict = true;
        for (const auto &[k, v] : j["checks"].items())
            verdict = verdict && v.get<bool>();
        j["issues"] = issues;
        j["phi"] = phi_;
        j["input_digest"] = digest_;
        j["verdict"] = verdict;
        write("check.json", j);
        result_.summary = j;
    }

    void subrings() {
        auto r = rings();
        json j;
        bool verdict = true;
        for (auto [name, ring] : {std::pair{"lambda1", &r.lambda1}, std::pair{"lambda2", &r.lambda2}}) {
            auto panel = emit_presentation(name, ring->algebra);
            verdict = verdict && panel["relations_complete"].get<bool>();
            json blocks = json::object();
            for (const auto &[block, degrees] : block_table(ring->algebra))
                for (const auto &[d, n] : degrees)
                    blocks[block][std::to_string(d)] = n;
            j[name] = {{"dim", ring->algebra.dim()}, {"blocks", blocks}, {"presentation", panel}};
        }
        j["lambda3"] = r.lambda3 ? json{{"closed", true}, {"dim", r.lambda3->algebra.dim()}}
                                 : json{{"closed", false}, {"failure", r.lambda3_failure}};
        j["phi"] = phi_;
        j["input_digest"] = digest_;
        j["verdict"] = verdict;
        write("subrings.json", j);
        result_.summary = j;
    }

    void verify() {
        CertificateOptions opts;
        opts.allow_unchecked_hypotheses = allow_;
        auto c = certify(spec_.triple(), spec_.theorem_m(), phi_, opts, digest_);
        auto j = to_json(c);
        write("certificate.json", j);
        result_.summary = {{"verdict", c.verdict}, {"failed_checks", c.failed_checks()}, {"input_digest", digest_}};
    }

    void present() {
        const auto &name = req_.algebra_name;
        json panel;
        if (name == "A") {
            panel = emit_presentation(name, spec_.algebra->algebra());
        } else {
            auto r = rings();
            const auto &ring = name == "lambda1" ? r.lambda1 : name == "lambda2" ? r.lambda2 : r.gamma;
            panel = emit_presentation(name, ring.algebra);
        }
        result_.summary = {{"algebra", name}, {"presentation", panel}, {"verdict", panel["relations_complete"]}};
    }

    void gldim() {
        auto r = rings();
        auto a = global_dimension(spec_.algebra, cap_);
        auto g1 = global_dimension(r.lambda1.algebra, cap_);
        auto g2 = global_dimension(r.lambda2.algebra, cap_);
        json j = {{"cap", cap_}, {"A", a.to_string()}, {"lambda1", g1.to_string()}, {"lambda2", g2.to_string()},
                  {"size_limited", a.size_limited || g1.size_limited || g2.size_limited}};
        bool holds = true;
        if (g1.bounded && g2.bounded) {
            const long d = static_cast<long>(g1.value) - static_cast<long>(g2.value);
            holds = d >= -1 && d <= 1;
            j["bound"] = {{"applicable", true}, {"holds", holds}};
        } else {
            j["bound"] = {{"applicable", false}, {"holds", true}};
        }
        j["input_digest"] = digest_;
        j["verdict"] = holds;
        write("gldim.json", j);
        result_.summary = j;
    }

    const ProblemSpec &spec_;
    const RunRequest &req_;
    std::set<int> phi_;
    std::size_t cap_ = 12;
    bool allow_ = false;
    std::string digest_;
    RunResult result_;
};

} // namespace

RunResult run(const ProblemSpec &spec, const RunRequest &req) { return Runner(spec, req).go(); }

} // namespace tiltlab
