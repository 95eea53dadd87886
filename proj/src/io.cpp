#include "ztower/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace ztower::io {

namespace {

std::string join_issues(const std::vector<InputIssue> &issues) {
    std::string s;
    for (const auto &i : issues) {
        if (!s.empty())
            s += "; ";
        s += i.pointer.empty() ? i.message : i.pointer + ": " + i.message;
    }
    return s;
}

std::string escape_key(const std::string &key) {
    std::string out;
    for (char c : key) {
        if (c == '~')
            out += "~0";
        else if (c == '/')
            out += "~1";
        else
            out += c;
    }
    return out;
}

std::string child(const std::string &ptr, std::size_t index) {
    return ptr + "/" + std::to_string(index);
}

class Reader {
  public:
    std::vector<InputIssue> issues;

    void fail(const std::string &ptr, const std::string &msg) { issues.push_back({ptr, msg}); }

    std::optional<BigInt> integer(const json &j, const std::string &ptr) {
        if (j.is_number_integer())
            return j.is_number_unsigned() ? BigInt(std::to_string(j.get<std::uint64_t>()))
                                          : BigInt(std::to_string(j.get<std::int64_t>()));
        if (j.is_string()) {
            if (auto v = parse_bigint(j.get<std::string>()))
                return v;
            fail(ptr, "not a decimal integer string");
            return std::nullopt;
        }
        fail(ptr, "expected an integer or a decimal string");
        return std::nullopt;
    }

    std::optional<unsigned long> small_nonnegative(const json &j, const std::string &ptr) {
        auto v = integer(j, ptr);
        if (!v)
            return std::nullopt;
        if (*v < 0 || !v->fits_ulong_p() || *v > 1000000) {
            fail(ptr, "expected a small nonnegative integer");
            return std::nullopt;
        }
        return v->get_ui();
    }

    std::optional<PadicScalar> voltage(const json &j, const std::string &ptr, unsigned p) {
        if (!j.is_object()) {
            auto v = integer(j, ptr);
            if (!v)
                return std::nullopt;
            return PadicScalar::exact(p, *v);
        }
        if (!j.contains("digits") || !j["digits"].is_array()) {
            fail(ptr + "/digits", "truncated voltage needs a digits array");
            return std::nullopt;
        }
        if (!j.contains("precision")) {
            fail(ptr + "/precision", "truncated voltage needs a precision");
            return std::nullopt;
        }
        auto precision = small_nonnegative(j["precision"], ptr + "/precision");
        if (!precision)
            return std::nullopt;
        if (*precision == 0) {
            fail(ptr + "/precision", "precision must be at least 1");
            return std::nullopt;
        }
        const auto &digits = j["digits"];
        if (digits.size() > *precision) {
            fail(ptr + "/digits", "more digits than the stated precision");
            return std::nullopt;
        }
        BigInt value = 0, place = 1;
        bool ok = true;
        for (std::size_t i = 0; i < digits.size(); ++i) {
            auto d = small_nonnegative(digits[i], child(ptr + "/digits", i));
            if (!d) {
                ok = false;
                continue;
            }
            if (*d >= p) {
                fail(child(ptr + "/digits", i), "digit " + std::to_string(*d) + " is not below p = " +
                                                    std::to_string(p));
                ok = false;
                continue;
            }
            value += place * *d;
            place *= p;
        }
        if (!ok)
            return std::nullopt;
        return PadicScalar::truncated(p, value, static_cast<unsigned>(*precision));
    }

    std::optional<std::string> name(const json &j, const std::string &ptr) {
        if (!j.is_string()) {
            fail(ptr, "expected a string");
            return std::nullopt;
        }
        return j.get<std::string>();
    }
};

} // namespace

InputError::InputError(std::vector<InputIssue> issues)
    : Error(ErrorKind::InvalidInput, join_issues(issues)), issues_(std::move(issues)) {}

InputDocument parse_input(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw InputError({InputIssue{"", e.what()}});
    }
    Reader rd;
    InputDocument doc;
    if (!j.is_object())
        throw InputError({InputIssue{"", "top level must be an object"}});

    if (!j.contains("p")) {
        rd.fail("/p", "missing");
    } else if (auto p = rd.small_nonnegative(j["p"], "/p")) {
        if (!is_prime(*p))
            rd.fail("/p", std::to_string(*p) + " is not prime");
        else
            doc.p = static_cast<unsigned>(*p);
    }
    if (!rd.issues.empty())
        throw InputError(rd.issues);

    std::set<std::string> names;
    if (!j.contains("vertices") || !j["vertices"].is_array() || j["vertices"].empty()) {
        rd.fail("/vertices", "expected a nonempty array of names");
    } else {
        for (std::size_t i = 0; i < j["vertices"].size(); ++i)
            if (auto n = rd.name(j["vertices"][i], child("/vertices", i))) {
                if (!names.insert(*n).second)
                    rd.fail(child("/vertices", i), "duplicate vertex name '" + *n + "'");
                doc.vertices.push_back(*n);
            }
    }

    std::set<std::string> edge_ids;
    if (!j.contains("edges") || !j["edges"].is_array()) {
        rd.fail("/edges", "expected an array");
    } else {
        for (std::size_t i = 0; i < j["edges"].size(); ++i) {
            const auto &e = j["edges"][i];
            const auto ptr = child("/edges", i);
            if (!e.is_object()) {
                rd.fail(ptr, "expected an object");
                continue;
            }
            EdgeSpec spec{"e" + std::to_string(i), {}, {}, PadicScalar::exact(doc.p, 0)};
            bool ok = true;
            if (e.contains("id")) {
                if (auto id = rd.name(e["id"], ptr + "/id"))
                    spec.id = *id;
                else
                    ok = false;
            }
            if (!edge_ids.insert(spec.id).second) {
                rd.fail(ptr + "/id", "duplicate edge id '" + spec.id + "'");
                ok = false;
            }
            for (const char *end : {"from", "to"}) {
                if (!e.contains(end)) {
                    rd.fail(ptr + "/" + end, "missing");
                    ok = false;
                    continue;
                }
                auto n = rd.name(e[end], ptr + "/" + end);
                if (!n) {
                    ok = false;
                } else if (!names.count(*n)) {
                    rd.fail(ptr + "/" + end, "unknown vertex '" + *n + "'");
                    ok = false;
                } else {
                    (std::string(end) == "from" ? spec.from : spec.to) = *n;
                }
            }
            if (!e.contains("voltage")) {
                rd.fail(ptr + "/voltage", "missing");
                ok = false;
            } else if (auto v = rd.voltage(e["voltage"], ptr + "/voltage", doc.p)) {
                spec.voltage = *v;
            } else {
                ok = false;
            }
            if (ok)
                doc.edges.push_back(std::move(spec));
        }
    }

    if (j.contains("ramification")) {
        const auto &r = j["ramification"];
        if (!r.is_object()) {
            rd.fail("/ramification", "expected an object mapping vertex names to k");
        } else {
            for (const auto &[key, value] : r.items()) {
                const auto ptr = "/ramification/" + escape_key(key);
                if (!names.count(key)) {
                    rd.fail(ptr, "unknown vertex '" + key + "'");
                    continue;
                }
                if (auto k = rd.small_nonnegative(value, ptr))
                    doc.ramification[key] = static_cast<unsigned>(*k);
            }
        }
    }
    if (!rd.issues.empty())
        throw InputError(rd.issues);
    return doc;
}

InputDocument load_input(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw InputError({InputIssue{"", "cannot open " + path.string()}});
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_input(buf.str());
}

VoltageGraph to_voltage_graph(const InputDocument &doc) {
    SerreGraph base;
    for (const auto &v : doc.vertices)
        base.add_vertex(v);
    std::vector<PadicScalar> oriented;
    for (const auto &e : doc.edges) {
        base.add_edge(*base.find(e.from), *base.find(e.to));
        oriented.push_back(e.voltage);
    }
    std::vector<Ramification> ram;
    for (const auto &v : doc.vertices) {
        auto it = doc.ramification.find(v);
        ram.push_back(it == doc.ramification.end() ? Ramification::unramified()
                                                   : Ramification::ramified(it->second));
    }
    return VoltageGraph::from_orientation(std::move(base), doc.p, oriented, std::move(ram));
}

// -------------------------------------------------------------- level output

namespace {

json edge_label(const LevelEdge &lab, const std::vector<std::string> &edge_ids) {
    return {{"edge", edge_ids.at(lab.base / 2)}, {"reversed", lab.base % 2 == 1},
            {"sigma", lab.sigma}};
}

} // namespace

json level_to_json(const LevelGraph &level, const VoltageGraph &vg,
                   const std::vector<std::string> &edge_ids) {
    json vertices = json::array();
    for (VertexId w = 0; w < level.graph.vertex_count(); ++w) {
        const auto &lab = level.vertex_labels[w];
        vertices.push_back({{"name", level.graph.name(w)},
                            {"base", vg.base().name(lab.base)},
                            {"residue", lab.residue}});
    }
    json edges = json::array();
    for (EdgeId e : level.graph.orientation()) {
        const auto inv = level.graph.inverse(e);
        json entry = edge_label(level.edge_labels[e], edge_ids);
        entry["from"] = level.graph.name(level.graph.origin(e));
        entry["to"] = level.graph.name(level.graph.terminus(e));
        entry["inverse"] = edge_label(level.edge_labels[inv], edge_ids);
        edges.push_back(std::move(entry));
    }
    return {{"p", level.p},          {"level", level.n},       {"modulus", level.modulus},
            {"vertices", vertices}, {"edges", edges}};
}

LevelGraph level_from_json(const json &doc, const VoltageGraph &vg,
                           const std::vector<std::string> &edge_ids) {
    std::vector<InputIssue> issues;
    try {
        LevelGraph level;
        level.p = doc.at("p").get<unsigned>();
        level.n = doc.at("level").get<unsigned>();
        level.modulus = doc.at("modulus").get<std::uint64_t>();
        if (level.p != vg.prime())
            throw InputError({InputIssue{"/p", "prime differs from the voltage graph"}});

        const SerreGraph &base = vg.base();
        std::vector<std::string> names;
        level.fiber_size.assign(base.vertex_count(), 0);
        const auto &vs = doc.at("vertices");
        for (std::size_t i = 0; i < vs.size(); ++i) {
            auto b = base.find(vs[i].at("base").get<std::string>());
            if (!b)
                throw InputError({{child("/vertices", i) + "/base", "unknown base vertex"}});
            level.vertex_labels.push_back({*b, vs[i].at("residue").get<std::uint64_t>()});
            names.push_back(vs[i].at("name").get<std::string>());
            ++level.fiber_size[*b];
        }
        std::size_t offset = 0;
        for (VertexId v = 0; v < base.vertex_count(); ++v) {
            level.fiber_offset.push_back(offset);
            offset += level.fiber_size[v];
        }
        for (VertexId w = 0; w < level.vertex_labels.size(); ++w) {
            const auto &lab = level.vertex_labels[w];
            if (level.vertex_index(lab.base, lab.residue) != w || lab.residue >= level.fiber_size[lab.base])
                throw InputError({{child("/vertices", w), "vertices are not in canonical order"}});
        }

        std::map<std::string, std::size_t> edge_pos;
        for (std::size_t i = 0; i < edge_ids.size(); ++i)
            edge_pos[edge_ids[i]] = i;
        auto resolve = [&](const json &lab, const std::string &ptr) -> LevelEdge {
            auto it = edge_pos.find(lab.at("edge").get<std::string>());
            if (it == edge_pos.end())
                throw InputError({{ptr + "/edge", "unknown base edge"}});
            return {2 * it->second + (lab.at("reversed").get<bool>() ? 1 : 0),
                    lab.at("sigma").get<std::uint64_t>()};
        };
        const std::size_t total = base.edge_count() * level.modulus;
        std::vector<DirectedEdge> edges(total, {0, 0, total});
        level.edge_labels.assign(total, {});
        std::vector<bool> filled(total, false);
        const auto &es = doc.at("edges");
        for (std::size_t i = 0; i < es.size(); ++i) {
            const auto ptr = child("/edges", i);
            auto fwd = resolve(es[i], ptr);
            auto bwd = resolve(es[i].at("inverse"), ptr + "/inverse");
            auto from = std::find(names.begin(), names.end(), es[i].at("from").get<std::string>());
            auto to = std::find(names.begin(), names.end(), es[i].at("to").get<std::string>());
            if (from == names.end() || to == names.end())
                throw InputError({{ptr, "unknown endpoint"}});
            const EdgeId a = level.edge_index(fwd.base, fwd.sigma);
            const EdgeId b = level.edge_index(bwd.base, bwd.sigma);
            if (a >= total || b >= total || filled[a] || filled[b])
                throw InputError({{ptr, "edge label out of range or repeated"}});
            const VertexId o = static_cast<VertexId>(from - names.begin());
            const VertexId t = static_cast<VertexId>(to - names.begin());
            edges[a] = {o, t, b};
            edges[b] = {t, o, a};
            level.edge_labels[a] = fwd;
            level.edge_labels[b] = bwd;
            filled[a] = filled[b] = true;
        }
        if (std::find(filled.begin(), filled.end(), false) != filled.end())
            throw InputError({InputIssue{"/edges", "edge list does not cover every (edge, sigma) label"}});
        level.graph = SerreGraph(std::move(names), std::move(edges));
        return level;
    } catch (const json::exception &e) {
        throw InputError({InputIssue{"", e.what()}});
    }
}

std::string level_to_dot(const LevelGraph &level, const VoltageGraph &vg,
                         const std::vector<std::string> &edge_ids) {
    (void)vg;
    std::ostringstream out;
    out << "graph X" << level.n << " {\n";
    for (VertexId w = 0; w < level.graph.vertex_count(); ++w)
        out << "  \"" << level.graph.name(w) << "\";\n";
    for (EdgeId e : level.graph.orientation()) {
        const auto &lab = level.edge_labels[e];
        out << "  \"" << level.graph.name(level.graph.origin(e)) << "\" -- \""
            << level.graph.name(level.graph.terminus(e)) << "\" [label=\""
            << edge_ids.at(lab.base / 2) << (lab.base % 2 ? "~" : "") << "," << lab.sigma
            << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

// ------------------------------------------------------------- report output

json char_series_to_json(const CharSeries &f) {
    json out;
    out["exact"] = f.exact;
    out["p_precision"] = f.series.p_precision();
    out["t_precision"] = f.series.t_precision();
    json series = json::array();
    std::vector<BigInt> shown;
    if (f.exact) {
        shown = f.exact_coefficients;
        out["unit_shift"] = f.normal_form->unit_shift;
        json poly = json::array();
        const auto &g = f.normal_form->poly.coefficients();
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g[i] != 0)
                poly.push_back({i, to_string(g[i])});
        out["poly"] = poly;
        json laurent = json::array();
        for (const auto &[k, c] : f.laurent->terms())
            laurent.push_back({k, to_string(c)});
        out["laurent"] = laurent;
    } else {
        for (std::size_t i = 0; i < f.series.t_precision(); ++i)
            shown.push_back(f.series.signed_coefficient(i));
        out["unit_shift"] = nullptr;
        out["poly"] = nullptr;
    }
    for (const auto &c : shown)
        series.push_back(to_string(c));
    out["series"] = series;
    out["display"] = format_series(shown, 6, true);
    return out;
}

json invariants_to_json(const Invariants &inv) {
    return {{"mu", inv.mu},
            {"lambda_f", inv.lambda_f},
            {"lambda_pic", inv.lambda_pic},
            {"certified", inv.certified},
            {"note", inv.note}};
}

json level_data_to_json(const LevelData &level) {
    return {{"n", level.n},
            {"vertices", level.vertices},
            {"edges", level.edges},
            {"connected", level.connected},
            {"kappa", to_string(level.kappa)},
            {"ordp", level.ordp}};
}

json report_to_json(const VerificationReport &report) {
    const auto &iw = report.iwasawa;
    json out;
    out["f"] = char_series_to_json(iw.f);
    out.update(invariants_to_json(iw.inv));
    out["nu"] = iw.fit.nu;
    out["n0"] = iw.fit.n0;
    out["growth_ok"] = iw.fit.growth_ok;
    json levels = json::array();
    for (const auto &l : iw.levels)
        levels.push_back(level_data_to_json(l));
    out["levels"] = levels;
    const auto &c = report.checks;
    out["checks"] = {{"connectedness_criterion", c.connectedness_criterion},
                     {"levels_connected", c.levels_connected},
                     {"cover_axioms", c.cover_axioms},
                     {"laplacian_compatibility", c.laplacian_compatibility},
                     {"kappa_divisibility", c.kappa_divisibility},
                     {"immersions", c.immersions},
                     {"factorization", c.factorization},
                     {"constant_term_zero", c.constant_term_zero}};
    out["warnings"] = report.warnings;
    out["passed"] = report.passed();
    return out;
}

} // namespace ztower::io
