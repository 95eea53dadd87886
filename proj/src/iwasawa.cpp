#include "ztower/iwasawa.hpp"

#include <algorithm>
#include <future>

#include "ztower/picard.hpp"

namespace ztower {

namespace {

std::vector<VertexId> char_vertex_order(const VoltageGraph &vg, std::size_t &unramified) {
    std::vector<VertexId> order;
    for (VertexId v = 0; v < vg.base().vertex_count(); ++v)
        if (!vg.ramification(v).is_ramified())
            order.push_back(v);
    unramified = order.size();
    for (VertexId v = 0; v < vg.base().vertex_count(); ++v)
        if (vg.ramification(v).is_ramified())
            order.push_back(v);
    return order;
}

// Assembles D - B(T) over a ring R given ρ, ω and integer embeddings.
template <class R, class Rho, class Omega, class Const>
Matrix<R> assemble(const VoltageGraph &vg, const std::vector<VertexId> &order,
                   std::size_t unramified, Rho &&rho, Omega &&omega, Const &&constant) {
    const SerreGraph &g = vg.base();
    const std::size_t s = order.size();
    std::vector<std::size_t> position(s);
    for (std::size_t i = 0; i < s; ++i)
        position[order[i]] = i;
    Matrix<R> m(s, s, constant(0));
    for (std::size_t j = 0; j < s; ++j) {
        const VertexId vj = order[j];
        if (j < unramified) {
            m(j, j) = constant(static_cast<long>(valency(g, vj)));
            // b_ij = Σ_{o(e) = v_j, t(e) = v_i} ρ(α(e)); loops give ρ(α) + ρ(-α).
            for (EdgeId e : g.star(vj)) {
                const std::size_t i = position[g.terminus(e)];
                m(i, j) = m(i, j) - rho(vg.voltage(e));
            }
        } else {
            m(j, j) = omega(*vg.ramification(vj).k);
        }
    }
    return m;
}

} // namespace

CharMatrix build_char_matrix(const VoltageGraph &vg, SeriesPrecision precision) {
    CharMatrix cm;
    cm.vertex_order = char_vertex_order(vg, cm.unramified_count);
    const unsigned p = vg.prime();
    if (vg.all_voltages_exact()) {
        cm.entries = assemble<LaurentU>(
            vg, cm.vertex_order, cm.unramified_count,
            [](const PadicScalar &a) {
                if (!a.value().fits_slong_p())
                    throw Error(ErrorKind::InvalidInput, "voltage too large for an exponent of u");
                return LaurentU::monomial(a.value().get_si());
            },
            [p](unsigned k) { return omega_poly(p, k); },
            [](long c) { return LaurentU::constant(c); });
    } else {
        const unsigned n = precision.p_digits;
        const std::size_t m = precision.t_terms;
        cm.entries = assemble<TruncatedSeries>(
            vg, cm.vertex_order, cm.unramified_count,
            [m, n](const PadicScalar &a) { return binomial_series(a, m, n); },
            [p, m, n](unsigned k) { return laurent_to_series(omega_poly(p, k), p, m, n); },
            [p, m, n](long c) { return TruncatedSeries::constant(p, n, m, BigInt(c)); });
    }
    return cm;
}

LaurentU determinant(const Matrix<LaurentU> &a) {
    const std::size_t s = a.rows();
    // Clear negative exponents row by row: row i = u^{c_i} P_i(u).
    long total_shift = 0;
    Matrix<IntPoly> polys(s, s, IntPoly());
    for (std::size_t i = 0; i < s; ++i) {
        long c = 0;
        for (std::size_t j = 0; j < s; ++j)
            if (!a(i, j).is_zero())
                c = std::min(c, a(i, j).min_exponent());
        total_shift += c;
        for (std::size_t j = 0; j < s; ++j) {
            if (a(i, j).is_zero())
                continue;
            std::vector<BigInt> coeffs(static_cast<std::size_t>(a(i, j).max_exponent() - c) + 1,
                                       BigInt(0));
            for (const auto &[k, v] : a(i, j).terms())
                coeffs[static_cast<std::size_t>(k - c)] = v;
            polys(i, j) = IntPoly(std::move(coeffs));
        }
    }
    const IntPoly zero, one = IntPoly::constant(1);
    IntPoly det = s <= 3 ? determinant_cofactor(polys, zero, one)
                         : determinant_bareiss(polys, zero, one, [](const IntPoly &x,
                                                                    const IntPoly &y) {
                               return divexact(x, y);
                           });
    return from_poly_in_u(det, total_shift);
}

TruncatedSeries determinant(const Matrix<TruncatedSeries> &a) {
    if (a.rows() == 0)
        throw Error(ErrorKind::InvalidInput, "empty matrix has no ring to take a determinant in");
    const auto &proto = a(0, 0);
    auto zero = TruncatedSeries(proto.prime(), proto.p_precision(), proto.t_precision());
    auto one = TruncatedSeries::constant(proto.prime(), proto.p_precision(), proto.t_precision(), 1);
    return a.rows() <= 3 ? determinant_cofactor(a, zero, one) : determinant_berkowitz(a, zero, one);
}

CharSeries char_series(const CharMatrix &m, unsigned p, SeriesPrecision precision) {
    CharSeries f;
    f.p = p;
    f.exact = m.exact();
    if (f.exact) {
        LaurentU det = determinant(std::get<0>(m.entries));
        if (det.is_zero())
            throw Error(ErrorKind::ZeroSeries, "det(D - B(T)) is identically 0");
        f.normal_form = to_unit_times_poly(det);
        f.exact_coefficients = exact_series(det, precision.t_terms);
        f.series = TruncatedSeries::from_coefficients(p, precision.p_digits, precision.t_terms,
                                                      f.exact_coefficients);
        f.laurent = std::move(det);
    } else {
        f.series = determinant(std::get<1>(m.entries));
        if (f.series.is_zero())
            throw Error(ErrorKind::ZeroSeries,
                        "det(D - B(T)) indistinguishable from 0 at this precision");
    }
    return f;
}

CharSeries char_series(const VoltageGraph &vg, SeriesPrecision precision) {
    return char_series(build_char_matrix(vg, precision), vg.prime(), precision);
}

Invariants invariants_of(const CharSeries &f, std::optional<std::size_t> lambda_bound) {
    MuLambda ml = f.exact ? mu_lambda(f.normal_form->poly, f.p) : mu_lambda(f.series, lambda_bound);
    Invariants inv;
    inv.mu = ml.mu;
    inv.lambda_f = ml.lambda;
    inv.lambda_pic = static_cast<long>(ml.lambda) - 1;
    inv.certified = ml.certified;
    inv.t_terms_used = f.exact ? 0 : f.series.t_precision();
    inv.note = ml.note;
    return inv;
}

Invariants invariants(const VoltageGraph &vg, SeriesPrecision precision) {
    Invariants inv = invariants_of(char_series(vg, precision));
    if (vg.all_voltages_exact())
        return inv;
    SeriesPrecision attempt = precision;
    while (!inv.certified && attempt.t_terms < kMaxTermsForCertification) {
        attempt.t_terms = std::min(attempt.t_terms * 2, kMaxTermsForCertification);
        try {
            inv = invariants_of(char_series(vg, attempt));
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::InsufficientPrecision)
                throw;
            inv.note += "; stopped doubling at " + std::to_string(attempt.t_terms) +
                        " terms: " + e.what();
            break;
        }
    }
    return inv;
}

FactorizationCheck factorization_check(const VoltageGraph &vg, SeriesPrecision precision) {
    CharMatrix cm = build_char_matrix(vg, precision);
    std::vector<std::size_t> block(cm.unramified_count);
    for (std::size_t i = 0; i < block.size(); ++i)
        block[i] = i;
    FactorizationCheck r;
    r.exact = cm.exact();
    const unsigned p = vg.prime();
    if (r.exact) {
        const auto &m = std::get<0>(cm.entries);
        LaurentU product = determinant(m.principal(block));
        for (std::size_t i = cm.unramified_count; i < cm.size(); ++i)
            product = product * omega_poly(p, *vg.ramification(cm.vertex_order[i]).k);
        r.full = determinant(m);
        r.product = product;
        r.ok = *r.full == *r.product;
    } else {
        const auto &m = std::get<1>(cm.entries);
        const unsigned n = precision.p_digits;
        const std::size_t t = precision.t_terms;
        auto product = block.empty() ? TruncatedSeries::constant(p, n, t, 1)
                                     : determinant(m.principal(block));
        for (std::size_t i = cm.unramified_count; i < cm.size(); ++i)
            product = product *
                      laurent_to_series(omega_poly(p, *vg.ramification(cm.vertex_order[i]).k), p, t, n);
        r.ok = determinant(m) == product;
    }
    return r;
}

bool constant_term_zero(const CharSeries &f) {
    if (f.exact)
        return f.exact_coefficients.empty() || f.exact_coefficients[0] == 0;
    return f.series.coefficient(0) == 0;
}

LevelData level_data(const LevelGraph &level) {
    LevelData d;
    d.n = level.n;
    d.vertices = level.graph.vertex_count();
    d.edges = level.graph.undirected_edge_count();
    d.connected = is_connected(level.graph);
    if (!d.connected)
        return d;
    d.kappa = kappa(level.graph);
    d.ordp = valuation(d.kappa, level.p).value_or(0);
    return d;
}

GrowthFit fit_growth(const std::vector<LevelData> &levels, unsigned p, unsigned mu,
                     long lambda_pic) {
    if (levels.empty())
        throw Error(ErrorKind::InvalidInput, "no levels to fit");
    auto main_term = [&](unsigned n) {
        long long pn = 1;
        for (unsigned i = 0; i < n; ++i)
            pn *= p;
        return static_cast<long long>(mu) * pn + static_cast<long long>(lambda_pic) * n;
    };
    GrowthFit fit;
    const auto &top = levels.back();
    fit.nu = static_cast<long long>(top.ordp) - main_term(top.n);
    std::size_t first = levels.size() - 1;
    while (first > 0) {
        const auto &l = levels[first - 1];
        if (static_cast<long long>(l.ordp) != main_term(l.n) + fit.nu)
            break;
        --first;
    }
    fit.n0 = levels[first].n;
    fit.growth_ok = levels.size() >= 2 && fit.n0 + 1 <= top.n;
    return fit;
}

IwasawaReport verify_growth(const VoltageGraph &vg, unsigned max_level, SeriesPrecision precision) {
    if (max_level < 2)
        throw Error(ErrorKind::InvalidInput, "growth verification needs at least levels 0..2");
    std::vector<std::future<LevelData>> jobs;
    for (unsigned n = 0; n <= max_level; ++n)
        jobs.push_back(std::async(std::launch::async, [&vg, n] { return level_data(build_level(vg, n)); }));
    std::vector<LevelData> levels;
    for (auto &j : jobs)
        levels.push_back(j.get());
    for (const auto &l : levels)
        if (!l.connected)
            throw Error(ErrorKind::Disconnected, "level " + std::to_string(l.n) + " is disconnected");
    IwasawaReport r{char_series(vg, precision), invariants(vg, precision), std::move(levels), {}};
    r.fit = fit_growth(r.levels, vg.prime(), r.inv.mu, r.inv.lambda_pic);
    return r;
}

} // namespace ztower
