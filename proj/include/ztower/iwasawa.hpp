#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ztower/matrix.hpp"
#include "ztower/padic.hpp"
#include "ztower/tower.hpp"

namespace ztower {

struct SeriesPrecision {
    unsigned p_digits = 16;   // N: coefficients known mod p^N
    std::size_t t_terms = 32; // M: series known mod T^M
};

/// Cap for the automatic T-precision doubling on the truncated route.
inline constexpr std::size_t kMaxTermsForCertification = 512;

/// D - B(T) with vertices ordered unramified first, then ramified.
struct CharMatrix {
    std::vector<VertexId> vertex_order;
    std::size_t unramified_count = 0;
    std::variant<Matrix<LaurentU>, Matrix<TruncatedSeries>> entries;

    bool exact() const noexcept { return entries.index() == 0; }
    std::size_t size() const noexcept { return vertex_order.size(); }
};

/// The exact route is used iff every voltage is an exact integer; `precision`
/// only matters on the truncated route.
CharMatrix build_char_matrix(const VoltageGraph &vg, SeriesPrecision precision = {});

/// Determinants over the two coefficient rings.
LaurentU determinant(const Matrix<LaurentU> &a);
TruncatedSeries determinant(const Matrix<TruncatedSeries> &a);

/// f(T) = det(D - B(T)).
struct CharSeries {
    bool exact = false;
    unsigned p = 2;
    /// Exact route only.
    std::optional<LaurentU> laurent;
    std::optional<UnitTimesPoly> normal_form;
    std::vector<BigInt> exact_coefficients;
    /// Both routes: f modulo (p^N, T^M).
    TruncatedSeries series{2, 1, 1};
};

/// Throws ZeroSeries if the determinant vanishes (at the working precision).
CharSeries char_series(const VoltageGraph &vg, SeriesPrecision precision = {});
CharSeries char_series(const CharMatrix &m, unsigned p, SeriesPrecision precision = {});

struct Invariants {
    unsigned mu = 0;
    std::size_t lambda_f = 0;
    long lambda_pic = 0; // λ(f) - 1
    bool certified = false;
    std::size_t t_terms_used = 0;
    std::string note;
};

Invariants invariants_of(const CharSeries &f, std::optional<std::size_t> lambda_bound = std::nullopt);

/// μ and λ of the tower's Picard module. On the truncated route the T-precision
/// is doubled (up to kMaxTermsForCertification) until the result is certified.
Invariants invariants(const VoltageGraph &vg, SeriesPrecision precision = {});

struct FactorizationCheck {
    bool ok = false;
    bool exact = false;
    std::optional<LaurentU> full, product; // exact route
};

/// det(D - B) = Π_{ramified} ω_{k_i} · det(unramified principal block), both
/// sides computed separately.
FactorizationCheck factorization_check(const VoltageGraph &vg, SeriesPrecision precision = {});

bool constant_term_zero(const CharSeries &f);

struct LevelData {
    unsigned n = 0;
    std::size_t vertices = 0;
    std::size_t edges = 0; // geometric edges
    bool connected = false;
    BigInt kappa = 0;
    unsigned ordp = 0;
};

LevelData level_data(const LevelGraph &level);

struct GrowthFit {
    long long nu = 0;
    unsigned n0 = 0;
    bool growth_ok = false;
};

/// ν from the top level, n0 the onset of exact agreement of
/// ord_p κ(X_n) = μ p^n + λ n + ν; growth_ok iff the last two levels conform.
GrowthFit fit_growth(const std::vector<LevelData> &levels, unsigned p, unsigned mu, long lambda_pic);

struct IwasawaReport {
    CharSeries f;
    Invariants inv;
    std::vector<LevelData> levels;
    GrowthFit fit;
};

/// Requires max_level >= 2; throws Disconnected if some level is disconnected.
IwasawaReport verify_growth(const VoltageGraph &vg, unsigned max_level,
                            SeriesPrecision precision = {});

} // namespace ztower
