#include "tiltlab/problem.hpp"
#include "tiltlab/admissible.hpp"

#include <fstream>
#include <sstream>

namespace tiltlab {

using nlohmann::json;

ValidationError::ValidationError(std::string field, std::string reason, std::size_t line)
    : std::runtime_error("line " + std::to_string(line) + ": " + (field.empty() ? "/" : field) + ": " + reason),
      field_(std::move(field)), reason_(std::move(reason)), line_(line) {}

namespace {

// Line of the innermost object key named along the pointer; array indices
// do not move the anchor.
std::size_t line_of(const std::string &text, const std::string &pointer) {
    std::size_t pos = 0;
    std::stringstream tokens(pointer);
    std::string token;
    while (std::getline(tokens, token, '/')) {
        if (token.empty() || token.find_first_not_of("0123456789") == std::string::npos)
            continue;
        const std::string quoted = "\"" + token + "\"";
        for (std::size_t at = text.find(quoted, pos); at != std::string::npos; at = text.find(quoted, at + 1)) {
            auto next = text.find_first_not_of(" \t\r\n", at + quoted.size());
            if (next != std::string::npos && text[next] == ':') {
                pos = at;
                break;
            }
        }
    }
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

class Reader {
  public:
    explicit Reader(const std::string &text) : text_(text) {}

    [[noreturn]] void fail(const std::string &ptr, const std::string &reason) const {
        throw ValidationError(ptr, reason, line_of(text_, ptr));
    }

    const json &member(const json &j, const std::string &ptr, const std::string &key) const {
        if (!j.contains(key))
            fail(ptr + "/" + key, "missing");
        return j.at(key);
    }

    void expect(const json &j, const std::string &ptr, json::value_t type, const char *what) const {
        if (j.type() != type && !(type == json::value_t::number_unsigned && j.is_number_integer() && j.get<long long>() >= 0))
            fail(ptr, std::string("expected ") + what);
    }

    void only_keys(const json &j, const std::string &ptr, std::initializer_list<const char *> keys) const {
        expect(j, ptr, json::value_t::object, "an object");
        for (const auto &[k, v] : j.items())
            if (std::none_of(keys.begin(), keys.end(), [&](const char *x) { return k == x; }))
                fail(ptr + "/" + k, "unknown key");
    }

    std::string str(const json &j, const std::string &ptr) const {
        expect(j, ptr, json::value_t::string, "a string");
        return j.get<std::string>();
    }

    std::size_t natural(const json &j, const std::string &ptr) const {
        expect(j, ptr, json::value_t::number_unsigned, "a non-negative integer");
        return j.get<std::size_t>();
    }

    const json &array(const json &j, const std::string &ptr) const {
        expect(j, ptr, json::value_t::array, "an array");
        return j;
    }

    Scalar scalar(const FieldSpec &f, const json &j, const std::string &ptr) const {
        try {
            if (j.is_number_integer())
                return Scalar(f, j.get<long>());
            if (j.is_string())
                return Scalar::parse(f, j.get<std::string>());
        } catch (const std::exception &e) {
            fail(ptr, e.what());
        }
        fail(ptr, "expected a scalar string");
    }

    Mat matrix(const FieldSpec &f, const json &j, const std::string &ptr, std::size_t rows, std::size_t cols) const {
        array(j, ptr);
        if (j.size() != rows)
            fail(ptr, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
        Mat m(f, rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            const auto rp = ptr + "/" + std::to_string(r);
            array(j[r], rp);
            if (j[r].size() != cols)
                fail(rp, "expected " + std::to_string(cols) + " entries, got " + std::to_string(j[r].size()));
            for (std::size_t c = 0; c < cols; ++c)
                m(r, c) = scalar(f, j[r][c], rp + "/" + std::to_string(c));
        }
        return m;
    }

  private:
    const std::string &text_;
};

json matrix_json(const Mat &m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(m(r, c).to_string());
        rows.push_back(row);
    }
    return rows;
}

json maps_json(const std::vector<Mat> &maps) {
    json out = json::array();
    for (const auto &m : maps)
        out.push_back(matrix_json(m));
    return out;
}

Quiver read_quiver(const Reader &rd, const json &j) {
    rd.only_keys(j, "/quiver", {"vertices", "arrows"});
    std::vector<std::string> vertices;
    const auto &vs = rd.array(rd.member(j, "/quiver", "vertices"), "/quiver/vertices");
    for (std::size_t k = 0; k < vs.size(); ++k) {
        auto name = rd.str(vs[k], "/quiver/vertices/" + std::to_string(k));
        if (std::find(vertices.begin(), vertices.end(), name) != vertices.end())
            rd.fail("/quiver/vertices/" + std::to_string(k), "duplicate vertex '" + name + "'");
        vertices.push_back(name);
    }
    auto vertex = [&](const json &x, const std::string &ptr) {
        auto name = rd.str(x, ptr);
        auto it = std::find(vertices.begin(), vertices.end(), name);
        if (it == vertices.end())
            rd.fail(ptr, "unknown vertex '" + name + "'");
        return static_cast<std::size_t>(it - vertices.begin());
    };
    std::vector<Arrow> arrows;
    const json empty = json::array();
    const auto &as = j.contains("arrows") ? rd.array(j.at("arrows"), "/quiver/arrows") : empty;
    for (std::size_t k = 0; k < as.size(); ++k) {
        const auto ptr = "/quiver/arrows/" + std::to_string(k);
        rd.only_keys(as[k], ptr, {"name", "source", "target"});
        Arrow a{rd.str(rd.member(as[k], ptr, "name"), ptr + "/name"),
                vertex(rd.member(as[k], ptr, "source"), ptr + "/source"),
                vertex(rd.member(as[k], ptr, "target"), ptr + "/target")};
        for (const auto &b : arrows)
            if (b.name == a.name)
                rd.fail(ptr + "/name", "duplicate arrow '" + a.name + "'");
        arrows.push_back(a);
    }
    return Quiver(vertices, arrows);
}

RelationSet read_relations(const Reader &rd, const json &j, const Quiver &q, const FieldSpec &f) {
    RelationSet out;
    rd.array(j, "/relations");
    for (std::size_t k = 0; k < j.size(); ++k) {
        const auto ptr = "/relations/" + std::to_string(k);
        Relation r;
        for (std::size_t t = 0; t < rd.array(j[k], ptr).size(); ++t) {
            const auto tp = ptr + "/" + std::to_string(t);
            rd.only_keys(j[k][t], tp, {"coeff", "path"});
            RelationTerm term{rd.scalar(f, rd.member(j[k][t], tp, "coeff"), tp + "/coeff"), {}};
            const auto &path = rd.array(rd.member(j[k][t], tp, "path"), tp + "/path");
            for (std::size_t a = 0; a < path.size(); ++a) {
                auto name = rd.str(path[a], tp + "/path/" + std::to_string(a));
                try {
                    term.arrows.push_back(q.arrow_index(name));
                } catch (const std::exception &) {
                    rd.fail(tp + "/path/" + std::to_string(a), "unknown arrow '" + name + "'");
                }
            }
            r.push_back(std::move(term));
        }
        try {
            relation_endpoints(q, r);
        } catch (const std::exception &e) {
            rd.fail(ptr, e.what());
        }
        out.generators.push_back(std::move(r));
    }
    return out;
}

QuiverRep read_module(const Reader &rd, const json &j, const std::string &ptr, const PathAlgebraPtr &alg) {
    const auto &q = alg->quiver();
    const auto &f = alg->field();
    rd.only_keys(j, ptr, {"dims", "arrows"});
    const auto &ds = rd.array(rd.member(j, ptr, "dims"), ptr + "/dims");
    if (ds.size() != q.num_vertices())
        rd.fail(ptr + "/dims", "expected " + std::to_string(q.num_vertices()) + " entries");
    std::vector<std::size_t> dims;
    for (std::size_t v = 0; v < ds.size(); ++v)
        dims.push_back(rd.natural(ds[v], ptr + "/dims/" + std::to_string(v)));
    std::vector<Mat> maps;
    for (const auto &a : q.arrows())
        maps.emplace_back(f, dims[a.target], dims[a.source]);
    if (j.contains("arrows")) {
        rd.expect(j.at("arrows"), ptr + "/arrows", json::value_t::object, "an object keyed by arrow name");
        for (const auto &[name, m] : j.at("arrows").items()) {
            std::size_t a = 0;
            try {
                a = q.arrow_index(name);
            } catch (const std::exception &) {
                rd.fail(ptr + "/arrows/" + name, "unknown arrow");
            }
            maps[a] = rd.matrix(f, m, ptr + "/arrows/" + name, dims[q.arrow(a).target], dims[q.arrow(a).source]);
        }
    }
    QuiverRep rep(alg, dims, maps);
    auto report = validate_rep(rep);
    if (!report.ok)
        rd.fail(ptr, report.failures.front());
    return rep;
}

NamedMap read_map(const Reader &rd, const json &j, const std::string &ptr, const ProblemSpec &s) {
    rd.only_keys(j, ptr, {"source", "target", "maps"});
    NamedMap m;
    auto module = [&](const char *key) -> const QuiverRep & {
        auto name = rd.str(rd.member(j, ptr, key), ptr + "/" + key);
        auto it = s.modules.find(name);
        if (it == s.modules.end())
            rd.fail(ptr + "/" + key, "unknown module '" + name + "'");
        (std::string(key) == "source" ? m.source : m.target) = name;
        return it->second;
    };
    const auto &src = module("source");
    const auto &tgt = module("target");
    const auto &ms = rd.array(rd.member(j, ptr, "maps"), ptr + "/maps");
    if (ms.size() != s.quiver.num_vertices())
        rd.fail(ptr + "/maps", "expected one matrix per vertex");
    for (std::size_t v = 0; v < ms.size(); ++v)
        m.maps.push_back(rd.matrix(s.field, ms[v], ptr + "/maps/" + std::to_string(v), tgt.dim(v), src.dim(v)));
    return m;
}

// two-space indentation with arrays of scalars kept on one line
void pretty(const json &j, std::string &out, int depth) {
    const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
    const std::string close(2 * static_cast<std::size_t>(depth), ' ');
    if (j.is_object() && !j.empty()) {
        out += "{\n";
        std::size_t k = 0;
        for (const auto &[key, v] : j.items()) {
            out += pad + json(key).dump() + ": ";
            pretty(v, out, depth + 1);
            out += ++k < j.size() ? ",\n" : "\n";
        }
        out += close + "}";
    } else if (j.is_array() && !j.empty() && std::any_of(j.begin(), j.end(), [](const json &x) { return x.is_structured(); })) {
        out += "[\n";
        for (std::size_t k = 0; k < j.size(); ++k) {
            out += pad;
            pretty(j[k], out, depth + 1);
            out += k + 1 < j.size() ? ",\n" : "\n";
        }
        out += close + "]";
    } else {
        out += j.dump(-1, ' ', false);
        if (j.is_array())
            for (std::size_t at = 0; (at = out.find("\",\"", at)) != std::string::npos; at += 4)
                out.replace(at, 3, "\", \"");
    }
}

} // namespace

ExactTriple ProblemSpec::triple() const {
    const auto &x = modules.at(alpha.source);
    const auto &m1 = modules.at(alpha.target);
    const auto &y = modules.at(beta.target);
    ExactTriple t{x, m1, y, {x, m1, alpha.maps}, {m1, y, beta.maps}, {}};
    for (const auto &name : summands_of_m)
        t.witness.summands_of_m.push_back(modules.at(name));
    for (const auto &name : m1_decomposition)
        t.witness.decomposition.push_back(
            static_cast<std::size_t>(std::find(summands_of_m.begin(), summands_of_m.end(), name) - summands_of_m.begin()));
    t.witness.base_change = base_change;
    return t;
}

QuiverRep ProblemSpec::theorem_m() const {
    std::vector<QuiverRep> parts;
    for (const auto &name : summands_of_m)
        parts.push_back(modules.at(name));
    return direct_sum(parts).sum;
}

bool operator==(const ProblemSpec &a, const ProblemSpec &b) {
    if (a.field != b.field || !(a.quiver == b.quiver) || !(a.relations == b.relations) ||
        a.max_path_len != b.max_path_len || a.summands_of_m != b.summands_of_m ||
        a.m1_decomposition != b.m1_decomposition || a.base_change != b.base_change || a.phi != b.phi ||
        !(a.options == b.options) || a.modules.size() != b.modules.size())
        return false;
    for (const auto &[name, m] : a.modules) {
        auto it = b.modules.find(name);
        if (it == b.modules.end() || m.dims() != it->second.dims() || m.arrow_maps() != it->second.arrow_maps())
            return false;
    }
    auto same = [](const NamedMap &x, const NamedMap &y) {
        return x.source == y.source && x.target == y.target && x.maps == y.maps;
    };
    return same(a.alpha, b.alpha) && same(a.beta, b.beta);
}

ProblemSpec parse_problem(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(e.what());
    }
    Reader rd(text);
    rd.only_keys(j, "", {"field", "quiver", "relations", "max_path_len", "modules", "summands_of_M",
                         "M1_decomposition", "alpha", "beta", "phi", "options"});
    ProblemSpec s;
    try {
        s.field = FieldSpec::parse(rd.str(rd.member(j, "", "field"), "/field"));
    } catch (const ValidationError &) {
        throw;
    } catch (const std::exception &e) {
        rd.fail("/field", e.what());
    }
    s.quiver = read_quiver(rd, rd.member(j, "", "quiver"));
    if (j.contains("relations"))
        s.relations = read_relations(rd, j.at("relations"), s.quiver, s.field);
    s.max_path_len = rd.natural(rd.member(j, "", "max_path_len"), "/max_path_len");
    try {
        s.algebra = PathAlgebra::build(s.quiver, s.relations, s.max_path_len, s.field);
    } catch (const std::exception &e) {
        rd.fail("/max_path_len", e.what());
    }

    const auto &mods = rd.member(j, "", "modules");
    rd.expect(mods, "/modules", json::value_t::object, "an object keyed by module name");
    for (const auto &[name, m] : mods.items())
        s.modules.emplace(name, read_module(rd, m, "/modules/" + name, s.algebra));

    const auto &sm = rd.array(rd.member(j, "", "summands_of_M"), "/summands_of_M");
    if (sm.empty())
        rd.fail("/summands_of_M", "at least one summand is needed");
    for (std::size_t k = 0; k < sm.size(); ++k) {
        auto name = rd.str(sm[k], "/summands_of_M/" + std::to_string(k));
        if (!s.modules.count(name))
            rd.fail("/summands_of_M/" + std::to_string(k), "unknown module '" + name + "'");
        s.summands_of_m.push_back(name);
    }

    s.alpha = read_map(rd, rd.member(j, "", "alpha"), "/alpha", s);
    s.beta = read_map(rd, rd.member(j, "", "beta"), "/beta", s);
    if (s.beta.source != s.alpha.target)
        rd.fail("/beta/source", "must equal alpha's target '" + s.alpha.target + "'");

    const auto &dec = rd.member(j, "", "M1_decomposition");
    rd.only_keys(dec, "/M1_decomposition", {"summands", "base_change"});
    const auto &ds = rd.array(rd.member(dec, "/M1_decomposition", "summands"), "/M1_decomposition/summands");
    std::vector<std::size_t> sum_dims(s.quiver.num_vertices(), 0);
    for (std::size_t k = 0; k < ds.size(); ++k) {
        const auto ptr = "/M1_decomposition/summands/" + std::to_string(k);
        auto name = rd.str(ds[k], ptr);
        if (std::find(s.summands_of_m.begin(), s.summands_of_m.end(), name) == s.summands_of_m.end())
            rd.fail(ptr, "'" + name + "' is not a summand of M");
        for (std::size_t v = 0; v < sum_dims.size(); ++v)
            sum_dims[v] += s.modules.at(name).dim(v);
        s.m1_decomposition.push_back(name);
    }
    if (dec.contains("base_change")) {
        const auto &bc = rd.array(dec.at("base_change"), "/M1_decomposition/base_change");
        if (bc.size() != s.quiver.num_vertices())
            rd.fail("/M1_decomposition/base_change", "expected one matrix per vertex");
        const auto &m1 = s.modules.at(s.alpha.target);
        std::vector<Mat> maps;
        for (std::size_t v = 0; v < bc.size(); ++v)
            maps.push_back(rd.matrix(s.field, bc[v], "/M1_decomposition/base_change/" + std::to_string(v), m1.dim(v),
                                     sum_dims[v]));
        s.base_change = std::move(maps);
    }

    if (j.contains("phi")) {
        const auto &ph = rd.array(j.at("phi"), "/phi");
        s.phi.clear();
        for (std::size_t k = 0; k < ph.size(); ++k)
            s.phi.insert(static_cast<int>(rd.natural(ph[k], "/phi/" + std::to_string(k))));
        if (!is_admissible(s.phi))
            rd.fail("/phi", "not admissible");
    }

    if (j.contains("options")) {
        const auto &o = j.at("options");
        rd.only_keys(o, "/options", {"max_rel_deg", "gldim_cap", "allow_unchecked_hypotheses"});
        if (o.contains("max_rel_deg"))
            s.options.max_rel_deg = rd.natural(o.at("max_rel_deg"), "/options/max_rel_deg");
        if (o.contains("gldim_cap"))
            s.options.gldim_cap = rd.natural(o.at("gldim_cap"), "/options/gldim_cap");
        if (o.contains("allow_unchecked_hypotheses")) {
            rd.expect(o.at("allow_unchecked_hypotheses"), "/options/allow_unchecked_hypotheses",
                      json::value_t::boolean, "a boolean");
            s.options.allow_unchecked_hypotheses = o.at("allow_unchecked_hypotheses").get<bool>();
        }
    }
    return s;
}

ProblemSpec load_problem(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IOError("cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

json to_json(const ProblemSpec &s) {
    const auto &q = s.quiver;
    json arrows = json::array();
    for (const auto &a : q.arrows())
        arrows.push_back({{"name", a.name}, {"source", q.vertices()[a.source]}, {"target", q.vertices()[a.target]}});
    json relations = json::array();
    for (const auto &r : s.relations.generators) {
        json terms = json::array();
        for (const auto &t : r) {
            json path = json::array();
            for (auto a : t.arrows)
                path.push_back(q.arrow(a).name);
            terms.push_back({{"coeff", t.coeff.to_string()}, {"path", path}});
        }
        relations.push_back(terms);
    }
    json modules = json::object();
    for (const auto &[name, m] : s.modules) {
        json am = json::object();
        for (std::size_t a = 0; a < q.num_arrows(); ++a)
            am[q.arrow(a).name] = matrix_json(m.arrow_map(a));
        modules[name] = {{"dims", m.dims()}, {"arrows", am}};
    }
    json dec = {{"summands", s.m1_decomposition}};
    if (s.base_change)
        dec["base_change"] = maps_json(*s.base_change);
    auto named = [](const NamedMap &m) {
        return json{{"source", m.source}, {"target", m.target}, {"maps", maps_json(m.maps)}};
    };
    return {{"field", s.field.to_string()},
            {"quiver", {{"vertices", q.vertices()}, {"arrows", arrows}}},
            {"relations", relations},
            {"max_path_len", s.max_path_len},
            {"modules", modules},
            {"summands_of_M", s.summands_of_m},
            {"M1_decomposition", dec},
            {"alpha", named(s.alpha)},
            {"beta", named(s.beta)},
            {"phi", s.phi},
            {"options",
             {{"max_rel_deg", s.options.max_rel_deg},
              {"gldim_cap", s.options.gldim_cap},
              {"allow_unchecked_hypotheses", s.options.allow_unchecked_hypotheses}}}};
}

std::string serialize_problem(const ProblemSpec &s) {
    std::string out;
    pretty(to_json(s), out, 0);
    return out + "\n";
}

} // namespace tiltlab
