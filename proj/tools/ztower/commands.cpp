#include "commands.hpp"

#include <fstream>
#include <limits>
#include <ostream>

#include "ztower/io.hpp"
#include "ztower/oracle.hpp"
#include "ztower/picard.hpp"
#include "ztower/pipeline.hpp"

namespace ztower::cli {

namespace {

struct Loaded {
    io::InputDocument doc;
    VoltageGraph vg;
    std::vector<std::string> edge_ids;
};

// Parses and validates the input; prints the problem and returns nullopt on failure.
std::optional<Loaded> load(const std::filesystem::path &file, Streams streams) {
    try {
        auto doc = io::load_input(file);
        auto vg = io::to_voltage_graph(doc);
        std::vector<std::string> ids;
        for (const auto &e : doc.edges)
            ids.push_back(e.id);
        return Loaded{std::move(doc), std::move(vg), std::move(ids)};
    } catch (const io::InputError &e) {
        for (const auto &issue : e.issues())
            streams.err << "error: " << (issue.pointer.empty() ? "" : issue.pointer + ": ")
                        << issue.message << "\n";
    } catch (const Error &e) {
        streams.err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    }
    return std::nullopt;
}

int computation_error(const Error &e, Streams streams) {
    streams.err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kComputationFailure;
}

} // namespace

int validate(const std::filesystem::path &file, Streams streams) {
    auto loaded = load(file, streams);
    if (!loaded) {
        streams.out << io::json{{"valid", false}}.dump() << "\n";
        return kValidationFailure;
    }
    const auto &vg = loaded->vg;
    auto crit = connectedness_criterion(vg);
    io::json sums = io::json::array();
    for (const auto &s : crit.cycle_sums)
        sums.push_back(s.to_string());
    io::json report = {{"valid", true},
                       {"p", vg.prime()},
                       {"vertices", vg.base().vertex_count()},
                       {"edges", vg.base().undirected_edge_count()},
                       {"exact_voltages", vg.all_voltages_exact()},
                       {"graph_issues", validate(vg.base())},
                       {"antisymmetric", true},
                       {"base_connected", true},
                       {"cycle_sums", sums},
                       {"criterion", crit.generates()}};
    streams.out << report.dump(2) << "\n";
    return kSuccess;
}

int tower(const std::filesystem::path &file, const TowerOptions &opts, Streams streams) {
    auto loaded = load(file, streams);
    if (!loaded)
        return kValidationFailure;
    if (opts.emit && *opts.emit != "dot" && *opts.emit != "json") {
        streams.err << "error: --emit must be dot or json\n";
        return kValidationFailure;
    }
    try {
        if (opts.emit)
            std::filesystem::create_directories(opts.out_dir);
        for (unsigned n = 0; n <= opts.levels; ++n) {
            auto level = build_level(loaded->vg, n);
            streams.out << "level " << n << ": vertices " << level.graph.vertex_count()
                        << ", edges " << level.graph.undirected_edge_count() << ", connected "
                        << (is_connected(level.graph) ? "yes" : "no") << "\n";
            if (!opts.emit)
                continue;
            auto path = opts.out_dir / ("level_" + std::to_string(n) + "." + *opts.emit);
            std::ofstream f(path);
            if (*opts.emit == "json")
                f << io::level_to_json(level, loaded->vg, loaded->edge_ids).dump(2) << "\n";
            else
                f << io::level_to_dot(level, loaded->vg, loaded->edge_ids);
            if (!f)
                throw Error(ErrorKind::InvalidInput, "cannot write " + path.string());
        }
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::InsufficientPrecision)
            streams.err << "error: voltage precision is insufficient for the requested level\n";
        return computation_error(e, streams);
    }
    return kSuccess;
}

int kappa(const std::filesystem::path &file, unsigned level, bool group, Streams streams) {
    auto loaded = load(file, streams);
    if (!loaded)
        return kValidationFailure;
    const unsigned p = loaded->vg.prime();
    try {
        auto x = build_level(loaded->vg, level);
        auto k = ztower::kappa(x.graph);
        streams.out << "kappa = " << to_string(k) << "\n";
        streams.out << "ord_" << p << " = " << valuation(k, p).value_or(0) << "\n";
        if (group) {
            auto g = picard_group(x.graph);
            auto part = p_part(g, p);
            streams.out << "invariant factors:";
            for (const auto &d : g.invariant_factors)
                streams.out << " " << to_string(d);
            streams.out << "\n" << p << "-part valuations:";
            for (auto v : part.factor_valuations)
                streams.out << " " << v;
            streams.out << " (total " << part.total << ")\n";
        }
    } catch (const Error &e) {
        return computation_error(e, streams);
    }
    return kSuccess;
}

int invariants(const std::filesystem::path &file, SeriesPrecision precision, Streams streams) {
    auto loaded = load(file, streams);
    if (!loaded)
        return kValidationFailure;
    try {
        auto f = char_series(loaded->vg, precision);
        auto inv = ztower::invariants(loaded->vg, precision);
        if (f.exact) {
            const auto &nf = *f.normal_form;
            std::string poly = format_series(nf.poly.coefficients(),
                                             std::numeric_limits<std::size_t>::max());
            streams.out << "f = " << (nf.unit_shift == 0 ? poly
                                                         : "u^" + std::to_string(nf.unit_shift) +
                                                               " * (" + poly + ")")
                        << "\n";
            streams.out << "series = " << format_series(f.exact_coefficients, 6, true) << "\n";
        } else {
            std::vector<BigInt> shown;
            for (std::size_t i = 0; i < f.series.t_precision(); ++i)
                shown.push_back(f.series.signed_coefficient(i));
            streams.out << "series = " << format_series(shown, 6, true) << " (mod "
                        << loaded->vg.prime() << "^" << f.series.p_precision() << ", T^"
                        << f.series.t_precision() << ")\n";
        }
        streams.out << "mu = " << inv.mu << "\n";
        streams.out << "lambda_f = " << inv.lambda_f << "\n";
        streams.out << "lambda_pic = " << inv.lambda_pic << "\n";
        streams.out << "certified = " << (inv.certified ? "yes" : "no") << " (" << inv.note << ")\n";
    } catch (const Error &e) {
        return computation_error(e, streams);
    }
    return kSuccess;
}

int verify(const std::filesystem::path &file, unsigned max_level, bool strict,
           SeriesPrecision precision, Streams streams) {
    auto loaded = load(file, streams);
    if (!loaded)
        return kValidationFailure;
    try {
        auto report = run_verification(loaded->vg, max_level, precision);
        streams.out << io::report_to_json(report).dump(2) << "\n";
        for (const auto &w : report.warnings)
            streams.err << "warning: " << w << "\n";
        if (!report.passed()) {
            streams.err << "error: verification failed\n";
            return kComputationFailure;
        }
        if (strict && !report.iwasawa.inv.certified)
            return kUncertified;
        return kSuccess;
    } catch (const StageError &e) {
        streams.out << io::json{{"error", e.what()}, {"stage", e.stage()}}.dump(2) << "\n";
        streams.err << "error: stage " << e.stage() << " failed: " << e.what() << "\n";
        if (e.stage() == "input" || e.stage() == "connectivity")
            return kValidationFailure;
        return kComputationFailure;
    }
}

int oracle(const std::filesystem::path &file, unsigned level, Streams streams) {
    auto loaded = load(file, streams);
    if (!loaded)
        return kValidationFailure;
    try {
        auto x = build_level(loaded->vg, level);
        auto brute = oracle::brute_force_spanning_trees(x.graph);
        auto k = ztower::kappa(x.graph);
        streams.out << "kappa = " << to_string(k) << "\n";
        streams.out << "brute force = " << to_string(brute) << "\n";
        streams.out << (k == brute ? "match" : "MISMATCH") << "\n";
        return k == brute ? kSuccess : kComputationFailure;
    } catch (const Error &e) {
        return computation_error(e, streams);
    }
}

} // namespace ztower::cli
