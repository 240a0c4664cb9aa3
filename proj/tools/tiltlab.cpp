#include "tiltlab/problem.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

std::set<int> parse_phi(const std::string &text) {
    std::set<int> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        const int v = std::stoi(item, &used);
        if (used != item.size() || v < 0)
            throw std::invalid_argument("bad --phi entry '" + item + "'");
        out.insert(v);
    }
    if (out.empty())
        throw std::invalid_argument("--phi is empty");
    return out;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"tiltlab: derived equivalences from exact sequences, checked in exact arithmetic"};
    app.require_subcommand(1);

    std::string problem, out_dir = ".", phi_text, algebra = "lambda2";
    std::size_t cap = 0;
    bool allow = false;

    const std::vector<std::pair<std::string, std::string>> commands{
        {"check", "exactness, add(M) witness, hypotheses and admissibility"},
        {"subrings", "build both subrings, their block dimensions and presentations"},
        {"verify", "full equivalence certificate"},
        {"present", "quiver with relations of A, lambda1, lambda2 or gamma"},
        {"gldim", "global dimensions and the bound between the two subrings"}};
    for (const auto &[name, help] : commands) {
        auto *sub = app.add_subcommand(name, help);
        sub->add_option("problem", problem, "problem file (JSON)")->required()->check(CLI::ExistingFile);
        if (name == "present")
            sub->add_option("algebra", algebra, "A, lambda1, lambda2 or gamma")
                ->check(CLI::IsMember({"A", "lambda1", "lambda2", "gamma"}));
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--phi", phi_text, "override Phi, e.g. 0,3,4");
        sub->add_option("--cap", cap, "global dimension cap");
        sub->add_flag("--allow-unchecked-hypotheses", allow, "continue when the Ext-vanishing hypotheses fail");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        tiltlab::RunRequest req;
        req.command = app.get_subcommands().front()->get_name();
        req.algebra_name = algebra;
        req.out_dir = out_dir;
        req.allow_unchecked_hypotheses = allow;
        if (!phi_text.empty())
            req.phi = parse_phi(phi_text);
        if (cap > 0)
            req.cap = cap;
        auto spec = tiltlab::load_problem(problem);
        auto result = tiltlab::run(spec, req);
        std::cout << result.summary.dump(2) << "\n";
        for (const auto &a : result.artifacts)
            std::cerr << "wrote " << a.string() << "\n";
        return result.exit_code;
    } catch (const tiltlab::ValidationError &e) {
        std::cerr << problem << ":" << e.line() << ": " << e.field() << ": " << e.reason() << "\n";
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
}
