#include "ztower/pipeline.hpp"

#include <future>
#include <memory>

#include "ztower/picard.hpp"

namespace ztower {

bool VerificationReport::properties_ok() const {
    const auto &c = checks;
    return c.levels_connected && c.cover_axioms && c.laplacian_compatibility &&
           c.kappa_divisibility && c.immersions && c.factorization && c.constant_term_zero;
}

namespace {

template <class F> auto stage(const char *name, F &&body) {
    try {
        return body();
    } catch (const StageError &) {
        throw;
    } catch (const Error &e) {
        throw StageError(name, e);
    }
}

} // namespace

VerificationReport run_verification(const VoltageGraph &vg, unsigned max_level,
                                    SeriesPrecision precision) {
    if (max_level < 2)
        throw StageError("input", Error(ErrorKind::InvalidInput, "--max-level must be at least 2"));
    VerificationReport report;
    auto &checks = report.checks;

    checks.connectedness_criterion =
        stage("criterion", [&] { return connectedness_criterion(vg).generates(); });
    if (!checks.connectedness_criterion)
        report.warnings.push_back("cycle sums do not generate Z_p; connectivity checked per level");

    std::vector<std::shared_ptr<const LevelGraph>> levels = stage("tower", [&] {
        std::vector<std::future<std::shared_ptr<const LevelGraph>>> jobs;
        for (unsigned n = 0; n <= max_level; ++n)
            jobs.push_back(std::async(std::launch::async, [&vg, n] {
                return std::make_shared<const LevelGraph>(build_level(vg, n));
            }));
        std::vector<std::shared_ptr<const LevelGraph>> out;
        for (auto &j : jobs)
            out.push_back(j.get());
        return out;
    });

    stage("connectivity", [&] {
        for (const auto &l : levels)
            if (!is_connected(l->graph))
                throw Error(ErrorKind::Disconnected, "level " + std::to_string(l->n) +
                                                         " is disconnected");
        checks.levels_connected = true;
        return 0;
    });

    auto &iw = report.iwasawa;
    iw.levels = stage("kappa", [&] {
        std::vector<std::future<LevelData>> jobs;
        for (const auto &l : levels)
            jobs.push_back(std::async(std::launch::async, [l] { return level_data(*l); }));
        std::vector<LevelData> out;
        for (auto &j : jobs)
            out.push_back(j.get());
        return out;
    });

    stage("series", [&] {
        iw.f = char_series(vg, precision);
        iw.inv = invariants(vg, precision);
        if (!iw.inv.certified)
            report.warnings.push_back("mu/lambda not certified: " + iw.inv.note);
        iw.fit = fit_growth(iw.levels, vg.prime(), iw.inv.mu, iw.inv.lambda_pic);
        checks.factorization = factorization_check(vg, precision).ok;
        checks.constant_term_zero = constant_term_zero(iw.f);
        return 0;
    });

    stage("covers", [&] {
        checks.cover_axioms = checks.laplacian_compatibility = true;
        auto check = [&](const CoverMap &c) {
            checks.cover_axioms = checks.cover_axioms && verify_cover(c).ok();
            checks.laplacian_compatibility =
                checks.laplacian_compatibility && check_laplacian_compatibility(c).all_ok;
        };
        for (unsigned n = 0; n < max_level; ++n) {
            check(projection(vg, levels[n + 1], levels[n]));
            if (n + 1 > 1)
                check(projection(vg, levels[n + 1], levels[0]));
        }
        return 0;
    });

    stage("divisibility", [&] {
        checks.kappa_divisibility = true;
        for (std::size_t n = 0; n + 1 < iw.levels.size(); ++n)
            if (!mpz_divisible_p(iw.levels[n + 1].kappa.get_mpz_t(), iw.levels[n].kappa.get_mpz_t()))
                checks.kappa_divisibility = false;
        return 0;
    });

    stage("immersions", [&] {
        checks.immersions = true;
        for (unsigned n = 0; n <= max_level; ++n)
            checks.immersions = checks.immersions && verify_immersion(vg, n).ok();
        return 0;
    });

    return report;
}

} // namespace ztower
