#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ztower/bigint.hpp"
#include "ztower/error.hpp"

namespace ztower {

/// An element of Z_p: either an exact integer or a residue known mod p^N.
class PadicScalar {
  public:
    static PadicScalar exact(unsigned p, BigInt value);
    /// `digits` >= 1; the residue is reduced into [0, p^digits).
    static PadicScalar truncated(unsigned p, const BigInt &residue, unsigned digits);

    unsigned prime() const noexcept { return p_; }
    bool is_exact() const noexcept { return !digits_.has_value(); }
    /// std::nullopt for exact values.
    std::optional<unsigned> precision() const noexcept { return digits_; }
    /// Exact value, or the canonical residue in [0, p^N).
    const BigInt &value() const noexcept { return value_; }

    /// Residue mod p^digits. Throws InsufficientPrecision if not determined.
    BigInt reduce(unsigned digits) const;
    /// Same as reduce(), returned as a machine word (p^digits must fit).
    std::uint64_t reduce_word(unsigned digits) const;

    /// True iff the value is a p-adic unit (determined by a single digit).
    bool is_unit() const;

    /// Converts to a truncated residue of the given precision.
    PadicScalar truncate(unsigned digits) const;

    PadicScalar operator-() const;
    friend PadicScalar operator+(const PadicScalar &a, const PadicScalar &b);
    friend PadicScalar operator-(const PadicScalar &a, const PadicScalar &b) { return a + (-b); }
    friend bool operator==(const PadicScalar &a, const PadicScalar &b);

    std::string to_string() const;

  private:
    PadicScalar(unsigned p, BigInt value, std::optional<unsigned> digits)
        : p_(p), value_(std::move(value)), digits_(digits) {}

    unsigned p_ = 2;
    BigInt value_;
    std::optional<unsigned> digits_;
};

/// Element of Z_p[[T]] known modulo (p^N, T^M). Coefficients are stored as
/// canonical residues in [0, p^N).
class TruncatedSeries {
  public:
    TruncatedSeries(unsigned p, unsigned p_digits, std::size_t t_terms);
    static TruncatedSeries from_coefficients(unsigned p, unsigned p_digits, std::size_t t_terms,
                                             const std::vector<BigInt> &coeffs);
    static TruncatedSeries constant(unsigned p, unsigned p_digits, std::size_t t_terms,
                                    const BigInt &c);

    unsigned prime() const noexcept { return p_; }
    unsigned p_precision() const noexcept { return n_; }
    std::size_t t_precision() const noexcept { return coeffs_.size(); }
    const BigInt &modulus() const noexcept { return modulus_; }
    const std::vector<BigInt> &coefficients() const noexcept { return coeffs_; }
    const BigInt &coefficient(std::size_t i) const { return coeffs_.at(i); }
    /// Coefficient lifted to (-p^N/2, p^N/2], for display.
    BigInt signed_coefficient(std::size_t i) const;

    bool is_zero() const;
    /// Reduces to a coarser precision (each bound must not exceed the current one).
    TruncatedSeries reduced(unsigned p_digits, std::size_t t_terms) const;

    TruncatedSeries operator-() const;
    friend TruncatedSeries operator+(const TruncatedSeries &a, const TruncatedSeries &b);
    friend TruncatedSeries operator-(const TruncatedSeries &a, const TruncatedSeries &b);
    friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b);
    friend bool operator==(const TruncatedSeries &a, const TruncatedSeries &b);

  private:
    void normalize();

    unsigned p_;
    unsigned n_;
    BigInt modulus_;
    std::vector<BigInt> coeffs_;
};

/// Dense univariate integer polynomial, no trailing zero coefficients.
class IntPoly {
  public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs);
    static IntPoly constant(const BigInt &c) { return IntPoly({c}); }

    const std::vector<BigInt> &coefficients() const noexcept { return coeffs_; }
    BigInt coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }

    /// P(x) -> P(1 + x).
    IntPoly taylor_shift_one() const;

    IntPoly operator-() const;
    friend IntPoly operator+(const IntPoly &a, const IntPoly &b);
    friend IntPoly operator-(const IntPoly &a, const IntPoly &b);
    friend IntPoly operator*(const IntPoly &a, const IntPoly &b);
    friend bool operator==(const IntPoly &, const IntPoly &) = default;

  private:
    void trim();
    std::vector<BigInt> coeffs_;
};

/// Exact quotient a / b in Z[x]; throws InvalidInput if b does not divide a.
IntPoly divexact(const IntPoly &a, const IntPoly &b);

/// Finite sum of c_k u^k with u = 1 + T, exponents of either sign.
class LaurentU {
  public:
    LaurentU() = default;
    static LaurentU constant(const BigInt &c) { return monomial(0, c); }
    static LaurentU monomial(long exponent, const BigInt &c = 1);

    const std::map<long, BigInt> &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    long min_exponent() const;
    long max_exponent() const;
    BigInt coefficient(long exponent) const;

    LaurentU operator-() const;
    friend LaurentU operator+(const LaurentU &a, const LaurentU &b);
    friend LaurentU operator-(const LaurentU &a, const LaurentU &b);
    friend LaurentU operator*(const LaurentU &a, const LaurentU &b);
    friend bool operator==(const LaurentU &, const LaurentU &) = default;

    std::string to_string() const;

  private:
    void add_term(long exponent, const BigInt &c);
    std::map<long, BigInt> terms_;
};

/// A LaurentU written as u^unit_shift * g(T) with g an integer polynomial in T.
struct UnitTimesPoly {
    long unit_shift = 0;
    IntPoly poly;
};

UnitTimesPoly to_unit_times_poly(const LaurentU &f);

/// Polynomial in u with nonnegative exponents -> LaurentU.
LaurentU from_poly_in_u(const IntPoly &poly, long shift = 0);

/// omega_k = u^(p^k) - 1.
LaurentU omega_poly(unsigned p, unsigned k);

/// Exact integer T-coefficients 0..terms-1 of the expansion of f.
std::vector<BigInt> exact_series(const LaurentU &f, std::size_t terms);

TruncatedSeries laurent_to_series(const LaurentU &f, unsigned p, std::size_t t_terms,
                                  unsigned p_digits);

/// Extra p-digits a truncated exponent needs so that binom(a, i), i < t_terms,
/// is determined modulo p^N.
unsigned binomial_guard_digits(unsigned p, std::size_t t_terms);

/// (1 + T)^a modulo (p^N, T^M).
TruncatedSeries binomial_series(const PadicScalar &a, std::size_t t_terms, unsigned p_digits);

struct MuLambda {
    unsigned mu = 0;
    std::size_t lambda = 0;
    bool certified = false;
    std::string note;
};

/// Exact route: μ and λ of an integer polynomial in T. Always certified.
MuLambda mu_lambda(const IntPoly &g, unsigned p);
/// Exact route through the unit-times-polynomial normal form.
MuLambda mu_lambda(const LaurentU &f, unsigned p);
/// Truncated route. `lambda_bound`, when given, is a caller guarantee that the
/// true λ does not exceed it.
MuLambda mu_lambda(const TruncatedSeries &f, std::optional<std::size_t> lambda_bound = std::nullopt);

/// "4T + 6T^2 - T^3"; at most `max_terms` nonzero terms, then "+ ...".
std::string format_series(const std::vector<BigInt> &coeffs, std::size_t max_terms = 8,
                          bool trailing_ellipsis = false);

} // namespace ztower
