#include "support.hpp"
#include "tiltlab/problem.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace tiltlab;

namespace {

const std::filesystem::path fixtures = TILTLAB_FIXTURES;

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

nlohmann::json fixture_json(const std::string &name) { return nlohmann::json::parse(slurp(fixtures / name)); }

std::filesystem::path scratch(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / ("tiltlab_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

ValidationError validation_error(const nlohmann::json &j) {
    try {
        parse_problem(j.dump(2));
    } catch (const ValidationError &e) {
        return e;
    }
    FAIL("no ValidationError");
    throw;
}

} // namespace

TEST_CASE("problem files round trip") {
    for (auto name : {"example_s4.json", "example_s4_gf7.json", "split.json", "corrupted_alpha.json",
                      "hypothesis_violation.json"}) {
        CAPTURE(name);
        auto text = slurp(fixtures / name);
        auto spec = parse_problem(text);
        CHECK(serialize_problem(spec) == text);
        CHECK(parse_problem(serialize_problem(spec)) == spec);
    }
    auto spec = load_problem(fixtures / "example_s4.json");
    CHECK(spec.quiver.num_vertices() == 5);
    CHECK(spec.algebra->dim() == 10);
    CHECK(spec.phi == std::set<int>{0});
    CHECK(spec.theorem_m().total_dim() == spec.modules.at("M1").total_dim());
    CHECK(check_exact_triple(spec.triple()).ok);

    auto other = spec;
    other.phi = {0, 3, 4};
    CHECK_FALSE(other == spec);
    other = spec;
    other.alpha.maps[3](0, 0) = Scalar(spec.field, 5L);
    CHECK_FALSE(other == spec);
}

TEST_CASE("problem validation names the offending field") {
    auto j = fixture_json("example_s4.json");

    auto no_beta = j;
    no_beta.erase("beta");
    auto e = validation_error(no_beta);
    CHECK(e.field() == "/beta");
    CHECK(e.reason() == "missing");

    auto bad_phi = j;
    bad_phi["phi"] = {0, 1, 2, 4};
    e = validation_error(bad_phi);
    CHECK(e.field() == "/phi");
    CHECK(e.reason() == "not admissible");

    auto ok_phi = j;
    ok_phi["phi"] = {0, 3, 4};
    CHECK(parse_problem(ok_phi.dump()).phi == std::set<int>{0, 3, 4});

    auto unknown = j;
    unknown["alpha"]["source"] = "Z";
    CHECK(validation_error(unknown).field() == "/alpha/source");

    auto shape = j;
    shape["alpha"]["maps"][3] = {{"1"}};
    CHECK(validation_error(shape).field() == "/alpha/maps/3");

    auto scalar = j;
    scalar["alpha"]["maps"][3][0][0] = "1/0";
    CHECK(validation_error(scalar).field() == "/alpha/maps/3/0/0");

    auto not_summand = j;
    not_summand["M1_decomposition"]["summands"] = {"P3", "Y"};
    CHECK(validation_error(not_summand).field() == "/M1_decomposition/summands/1");

    // the loop at vertex 4 must square to zero
    auto not_module = j;
    not_module["modules"]["Y"]["arrows"]["b"] = nlohmann::json::array({nlohmann::json::array({"0", "1"}), nlohmann::json::array({"1", "0"})});
    auto n = validation_error(not_module);
    CHECK(n.field() == "/modules/Y");

    auto extra = j;
    extra["colour"] = "blue";
    CHECK(validation_error(extra).field() == "/colour");

    CHECK_THROWS_AS(parse_problem("{\"field\": \"Q\","), ParseError);
    CHECK_THROWS_AS(load_problem(fixtures / "no_such_file.json"), IOError);
}

TEST_CASE("validation errors are anchored to a line") {
    auto text = slurp(fixtures / "example_s4.json");
    auto at = text.find("\"phi\"");
    REQUIRE(at != std::string::npos);
    const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(at), '\n'));
    text.replace(text.find("[0]", at), 3, "[0, 1, 2, 4]");
    try {
        parse_problem(text);
        FAIL("accepted");
    } catch (const ValidationError &e) {
        CHECK(e.line() == line);
    }
}

TEST_CASE("run: commands and exit codes") {
    auto spec = load_problem(fixtures / "example_s4.json");

    RunRequest req;
    req.command = "verify";
    req.out_dir = scratch("verify");
    auto r = run(spec, req);
    CHECK(r.exit_code == 0);
    CHECK(r.summary["verdict"] == true);
    REQUIRE(std::filesystem::exists(req.out_dir / "certificate.json"));
    auto cert = nlohmann::json::parse(slurp(req.out_dir / "certificate.json"));
    CHECK(cert["verdict"] == true);
    const auto first = slurp(req.out_dir / "certificate.json");
    run(spec, req);
    CHECK(slurp(req.out_dir / "certificate.json") == first);

    req.command = "check";
    req.out_dir = scratch("check");
    r = run(load_problem(fixtures / "split.json"), req);
    CHECK(r.exit_code == 0);
    for (const auto &[k, v] : r.summary["checks"].items())
        CHECK_MESSAGE(v == true, k);

    req.command = "verify";
    req.out_dir = scratch("corrupted");
    r = run(load_problem(fixtures / "corrupted_alpha.json"), req);
    CHECK(r.exit_code == 1);
    CHECK(r.summary["failed_checks"] == nlohmann::json::array({"exactness"}));

    r = run(load_problem(fixtures / "hypothesis_violation.json"), req);
    CHECK(r.exit_code == 1);
    CHECK(r.summary["failed_checks"] == nlohmann::json::array({"hypotheses"}));

    req.phi = std::set<int>{0, 1, 2, 4};
    r = run(spec, req);
    CHECK(r.exit_code == 1);
    CHECK(r.summary["failed_checks"] == nlohmann::json::array({"phi_admissible"}));
    req.phi.reset();

    req.command = "present";
    req.algebra_name = "lambda1";
    req.out_dir = scratch("present");
    r = run(spec, req);
    CHECK(r.exit_code == 0);
    CHECK(std::filesystem::exists(req.out_dir / "presentation_lambda1.json"));
    CHECK(slurp(req.out_dir / "quiver_lambda1.dot").find("digraph") != std::string::npos);
    CHECK(r.summary["presentation"]["basic_dim"] == 8);

    req.command = "subrings";
    req.out_dir = scratch("subrings");
    r = run(spec, req);
    CHECK(r.exit_code == 0);
    CHECK(r.summary["lambda1"]["dim"] == 8);
    CHECK(r.summary["lambda2"]["dim"] == 11);
    CHECK(std::filesystem::exists(req.out_dir / "quiver_lambda2.dot"));

    req.command = "gldim";
    req.out_dir = scratch("gldim");
    req.cap = 6;
    r = run(spec, req);
    CHECK(r.exit_code == 0);
    CHECK(r.summary["lambda1"] == "2");
    CHECK(r.summary["lambda2"] == "3");
    CHECK(r.summary["A"] == "AtLeast(6)");

    req.command = "frobnicate";
    CHECK_THROWS_AS(run(spec, req), std::invalid_argument);
}
