#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char **argv) {
    using namespace ztower;
    CLI::App app{"Branched Z_p-towers of graphs: spanning trees, sandpile groups and Iwasawa invariants"};
    app.require_subcommand(1);
    std::string file;
    cli::Streams streams{std::cout, std::cerr};
    int status = cli::kSuccess;

    auto *validate = app.add_subcommand("validate", "Check an input document and the connectedness criterion");
    validate->add_option("file", file, "Input JSON")->required();
    validate->callback([&] { status = cli::validate(file, streams); });

    cli::TowerOptions tower_opts;
    std::string emit;
    auto *tower = app.add_subcommand("tower", "Build levels 0..n of the tower");
    tower->add_option("file", file, "Input JSON")->required();
    tower->add_option("--levels", tower_opts.levels, "Highest level")->required();
    tower->add_option("--emit", emit, "Write each level as dot or json")
        ->check(CLI::IsMember({"dot", "json"}));
    tower->add_option("--out", tower_opts.out_dir, "Output directory for --emit");
    tower->callback([&] {
        if (!emit.empty())
            tower_opts.emit = emit;
        status = cli::tower(file, tower_opts, streams);
    });

    unsigned level = 0;
    bool group = false;
    auto *kappa = app.add_subcommand("kappa", "Spanning-tree count of one level");
    kappa->add_option("file", file, "Input JSON")->required();
    kappa->add_option("--level", level, "Level n")->required();
    kappa->add_flag("--group", group, "Also print the invariant factors of Pic^0");
    kappa->callback([&] { status = cli::kappa(file, level, group, streams); });

    SeriesPrecision precision;
    auto add_precision = [&](CLI::App *sub) {
        sub->add_option("--t-prec", precision.t_terms, "T-adic precision M")
            ->check(CLI::Range(std::size_t{1}, kMaxTermsForCertification));
        sub->add_option("--p-prec", precision.p_digits, "p-adic precision N")
            ->check(CLI::Range(1u, 100000u));
    };
    auto *inv = app.add_subcommand("invariants", "Characteristic series and mu/lambda");
    inv->add_option("file", file, "Input JSON")->required();
    add_precision(inv);
    inv->callback([&] { status = cli::invariants(file, precision, streams); });

    unsigned max_level = 0;
    bool strict = false;
    auto *verify = app.add_subcommand("verify", "Full pipeline with growth-law check; JSON report");
    verify->add_option("file", file, "Input JSON")->required();
    verify->add_option("--max-level", max_level, "Highest level")->required();
    verify->add_flag("--strict", strict, "Exit 4 when mu/lambda are not certified");
    add_precision(verify);
    verify->callback([&] { status = cli::verify(file, max_level, strict, precision, streams); });

    auto *oracle = app.add_subcommand("oracle", "Brute-force spanning-tree count of one level");
    oracle->add_option("file", file, "Input JSON")->required();
    oracle->add_option("--level", level, "Level n")->required();
    oracle->callback([&] { status = cli::oracle(file, level, streams); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        // --help is reported as a ParseError with code 0
        return app.exit(e) == 0 ? cli::kSuccess : cli::kUsage;
    }
    return status;
}
