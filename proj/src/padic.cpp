#include "ztower/padic.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace ztower {

// ---------------------------------------------------------------- PadicScalar

PadicScalar PadicScalar::exact(unsigned p, BigInt value) {
    if (!is_prime(p))
        throw Error(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
    return PadicScalar(p, std::move(value), std::nullopt);
}

PadicScalar PadicScalar::truncated(unsigned p, const BigInt &residue, unsigned digits) {
    if (!is_prime(p))
        throw Error(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
    if (digits == 0)
        throw Error(ErrorKind::InvalidInput, "truncated p-adic needs at least one digit");
    return PadicScalar(p, mod_floor(residue, power(p, digits)), digits);
}

BigInt PadicScalar::reduce(unsigned digits) const {
    if (digits_ && *digits_ < digits)
        throw Error(ErrorKind::InsufficientPrecision,
                    "value known mod " + std::to_string(p_) + "^" + std::to_string(*digits_) +
                        ", needed mod " + std::to_string(p_) + "^" + std::to_string(digits));
    return mod_floor(value_, power(p_, digits));
}

std::uint64_t PadicScalar::reduce_word(unsigned digits) const {
    BigInt r = reduce(digits);
    if (!r.fits_ulong_p())
        throw Error(ErrorKind::InvalidInput, "modulus too large for a machine word");
    return r.get_ui();
}

bool PadicScalar::is_unit() const { return reduce(1) != 0; }

PadicScalar PadicScalar::truncate(unsigned digits) const {
    return truncated(p_, reduce(digits), digits);
}

PadicScalar PadicScalar::operator-() const {
    if (is_exact())
        return PadicScalar(p_, -value_, std::nullopt);
    return truncated(p_, -value_, *digits_);
}

PadicScalar operator+(const PadicScalar &a, const PadicScalar &b) {
    if (a.p_ != b.p_)
        throw Error(ErrorKind::PrimeMismatch, "adding p-adics over different primes");
    if (a.is_exact() && b.is_exact())
        return PadicScalar(a.p_, a.value_ + b.value_, std::nullopt);
    unsigned digits = std::min(a.digits_.value_or(std::numeric_limits<unsigned>::max()),
                               b.digits_.value_or(std::numeric_limits<unsigned>::max()));
    return PadicScalar::truncated(a.p_, a.value_ + b.value_, digits);
}

bool operator==(const PadicScalar &a, const PadicScalar &b) {
    return a.p_ == b.p_ && a.digits_ == b.digits_ && a.value_ == b.value_;
}

std::string PadicScalar::to_string() const {
    if (is_exact())
        return ztower::to_string(value_);
    return ztower::to_string(value_) + " mod " + std::to_string(p_) + "^" + std::to_string(*digits_);
}

// ------------------------------------------------------------ TruncatedSeries

TruncatedSeries::TruncatedSeries(unsigned p, unsigned p_digits, std::size_t t_terms)
    : p_(p), n_(p_digits), modulus_(power(p, p_digits)), coeffs_(t_terms, BigInt(0)) {
    if (!is_prime(p))
        throw Error(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
    if (p_digits == 0 || t_terms == 0)
        throw Error(ErrorKind::InvalidInput, "series precision must be at least 1 in p and T");
}

TruncatedSeries TruncatedSeries::from_coefficients(unsigned p, unsigned p_digits,
                                                   std::size_t t_terms,
                                                   const std::vector<BigInt> &coeffs) {
    TruncatedSeries s(p, p_digits, t_terms);
    for (std::size_t i = 0; i < t_terms && i < coeffs.size(); ++i)
        s.coeffs_[i] = coeffs[i];
    s.normalize();
    return s;
}

TruncatedSeries TruncatedSeries::constant(unsigned p, unsigned p_digits, std::size_t t_terms,
                                          const BigInt &c) {
    return from_coefficients(p, p_digits, t_terms, {c});
}

void TruncatedSeries::normalize() {
    for (auto &c : coeffs_)
        c = mod_floor(c, modulus_);
}

BigInt TruncatedSeries::signed_coefficient(std::size_t i) const {
    return mod_symmetric(coeffs_.at(i), modulus_);
}

bool TruncatedSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigInt &c) { return c == 0; });
}

TruncatedSeries TruncatedSeries::reduced(unsigned p_digits, std::size_t t_terms) const {
    if (p_digits > n_ || t_terms > coeffs_.size())
        throw Error(ErrorKind::InsufficientPrecision, "cannot raise the precision of a series");
    return from_coefficients(p_, p_digits, t_terms, coeffs_);
}

namespace {

void check_compatible(const TruncatedSeries &a, const TruncatedSeries &b) {
    if (a.prime() != b.prime())
        throw Error(ErrorKind::PrimeMismatch, "series over different primes");
}

} // namespace

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries r = *this;
    for (auto &c : r.coeffs_)
        c = -c;
    r.normalize();
    return r;
}

TruncatedSeries operator+(const TruncatedSeries &a, const TruncatedSeries &b) {
    check_compatible(a, b);
    TruncatedSeries r(a.p_, std::min(a.n_, b.n_), std::min(a.t_precision(), b.t_precision()));
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i)
        r.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
    r.normalize();
    return r;
}

TruncatedSeries operator-(const TruncatedSeries &a, const TruncatedSeries &b) {
    check_compatible(a, b);
    TruncatedSeries r(a.p_, std::min(a.n_, b.n_), std::min(a.t_precision(), b.t_precision()));
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i)
        r.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
    r.normalize();
    return r;
}

TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b) {
    check_compatible(a, b);
    TruncatedSeries r(a.p_, std::min(a.n_, b.n_), std::min(a.t_precision(), b.t_precision()));
    const std::size_t m = r.coeffs_.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (a.coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; i + j < m; ++j)
            if (b.coeffs_[j] != 0)
                r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    r.normalize();
    return r;
}

bool operator==(const TruncatedSeries &a, const TruncatedSeries &b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
}

// -------------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void IntPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

IntPoly IntPoly::taylor_shift_one() const {
    // Horner in (1 + x).
    std::vector<BigInt> g;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        g.push_back(0);
        for (std::size_t i = g.size() - 1; i > 0; --i)
            g[i] += g[i - 1];
        g[0] += *it;
    }
    return IntPoly(std::move(g));
}

IntPoly IntPoly::operator-() const {
    IntPoly r = *this;
    for (auto &c : r.coeffs_)
        c = -c;
    return r;
}

IntPoly operator+(const IntPoly &a, const IntPoly &b) {
    std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()), BigInt(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i)
        c[i] += b.coeffs_[i];
    return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly &a, const IntPoly &b) { return a + (-b); }

IntPoly operator*(const IntPoly &a, const IntPoly &b) {
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return IntPoly(std::move(c));
}

IntPoly divexact(const IntPoly &a, const IntPoly &b) {
    if (b.is_zero())
        throw Error(ErrorKind::InvalidInput, "polynomial division by zero");
    if (a.is_zero())
        return {};
    // Long division from the low end: b has a nonzero lowest coefficient after
    // stripping common powers of x, which keeps the quotient exact whenever
    // the division is.
    std::size_t shift = 0;
    while (b.coefficient(shift) == 0)
        ++shift;
    std::vector<BigInt> rem = a.coefficients();
    for (std::size_t i = 0; i < shift; ++i)
        if (rem[i] != 0)
            throw Error(ErrorKind::InvalidInput, "inexact polynomial division");
    rem.erase(rem.begin(), rem.begin() + static_cast<long>(shift));
    std::vector<BigInt> den(b.coefficients().begin() + static_cast<long>(shift),
                            b.coefficients().end());
    if (rem.size() < den.size())
        throw Error(ErrorKind::InvalidInput, "inexact polynomial division");
    std::vector<BigInt> q(rem.size() - den.size() + 1, BigInt(0));
    const BigInt &lead = den.front();
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (rem[i] == 0)
            continue;
        if (!mpz_divisible_p(rem[i].get_mpz_t(), lead.get_mpz_t()))
            throw Error(ErrorKind::InvalidInput, "inexact polynomial division");
        BigInt qi;
        mpz_divexact(qi.get_mpz_t(), rem[i].get_mpz_t(), lead.get_mpz_t());
        for (std::size_t j = 0; j < den.size(); ++j)
            rem[i + j] -= qi * den[j];
        q[i] = std::move(qi);
    }
    for (std::size_t i = q.size(); i < rem.size(); ++i)
        if (rem[i] != 0)
            throw Error(ErrorKind::InvalidInput, "inexact polynomial division");
    return IntPoly(std::move(q));
}

// ------------------------------------------------------------------- LaurentU

LaurentU LaurentU::monomial(long exponent, const BigInt &c) {
    LaurentU r;
    r.add_term(exponent, c);
    return r;
}

void LaurentU::add_term(long exponent, const BigInt &c) {
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

long LaurentU::min_exponent() const {
    if (terms_.empty())
        throw Error(ErrorKind::ZeroSeries, "zero Laurent polynomial has no exponents");
    return terms_.begin()->first;
}

long LaurentU::max_exponent() const {
    if (terms_.empty())
        throw Error(ErrorKind::ZeroSeries, "zero Laurent polynomial has no exponents");
    return terms_.rbegin()->first;
}

BigInt LaurentU::coefficient(long exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? BigInt(0) : it->second;
}

LaurentU LaurentU::operator-() const {
    LaurentU r = *this;
    for (auto &[k, c] : r.terms_)
        c = -c;
    return r;
}

LaurentU operator+(const LaurentU &a, const LaurentU &b) {
    LaurentU r = a;
    for (const auto &[k, c] : b.terms_)
        r.add_term(k, c);
    return r;
}

LaurentU operator-(const LaurentU &a, const LaurentU &b) { return a + (-b); }

LaurentU operator*(const LaurentU &a, const LaurentU &b) {
    LaurentU r;
    for (const auto &[i, x] : a.terms_)
        for (const auto &[j, y] : b.terms_)
            r.add_term(i + j, x * y);
    return r;
}

std::string LaurentU::to_string() const {
    if (terms_.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto &[k, c] = *it;
        BigInt mag = abs(c);
        if (first)
            out << (c < 0 ? "-" : "");
        else
            out << (c < 0 ? " - " : " + ");
        first = false;
        if (k == 0) {
            out << mag.get_str();
            continue;
        }
        if (mag != 1)
            out << mag.get_str() << "*";
        out << "u";
        if (k != 1)
            out << "^" << k;
    }
    return out.str();
}

UnitTimesPoly to_unit_times_poly(const LaurentU &f) {
    if (f.is_zero())
        return {0, IntPoly()};
    const long shift = f.min_exponent();
    std::vector<BigInt> in_u(static_cast<std::size_t>(f.max_exponent() - shift) + 1, BigInt(0));
    for (const auto &[k, c] : f.terms())
        in_u[static_cast<std::size_t>(k - shift)] = c;
    return {shift, IntPoly(std::move(in_u)).taylor_shift_one()};
}

LaurentU from_poly_in_u(const IntPoly &poly, long shift) {
    LaurentU r;
    for (std::size_t i = 0; i < poly.coefficients().size(); ++i)
        r = r + LaurentU::monomial(static_cast<long>(i) + shift, poly.coefficients()[i]);
    return r;
}

LaurentU omega_poly(unsigned p, unsigned k) {
    BigInt e = power(p, k);
    if (!e.fits_slong_p())
        throw Error(ErrorKind::InvalidInput, "omega exponent p^k too large");
    return LaurentU::monomial(e.get_si()) - LaurentU::constant(1);
}

std::vector<BigInt> exact_series(const LaurentU &f, std::size_t terms) {
    std::vector<BigInt> out(terms, BigInt(0));
    for (const auto &[k, c] : f.terms()) {
        // u^k = sum_i binom(k, i) T^i, binom extended to negative k.
        BigInt exponent(k);
        BigInt b;
        for (std::size_t i = 0; i < terms; ++i) {
            mpz_bin_ui(b.get_mpz_t(), exponent.get_mpz_t(), i);
            if (b == 0 && k >= 0)
                break;
            out[i] += c * b;
        }
    }
    return out;
}

TruncatedSeries laurent_to_series(const LaurentU &f, unsigned p, std::size_t t_terms,
                                  unsigned p_digits) {
    return TruncatedSeries::from_coefficients(p, p_digits, t_terms, exact_series(f, t_terms));
}

unsigned binomial_guard_digits(unsigned p, std::size_t t_terms) {
    return static_cast<unsigned>(t_terms / (p - 1)) + 2;
}

TruncatedSeries binomial_series(const PadicScalar &a, std::size_t t_terms, unsigned p_digits) {
    const unsigned p = a.prime();
    if (!a.is_exact()) {
        const unsigned needed = p_digits + binomial_guard_digits(p, t_terms);
        if (*a.precision() < needed)
            throw Error(ErrorKind::InsufficientPrecision,
                        "exponent known to " + std::to_string(*a.precision()) + " digits; " +
                            std::to_string(needed) + " needed for " + std::to_string(t_terms) +
                            " terms mod " + std::to_string(p) + "^" + std::to_string(p_digits));
    }
    // binom(a, i) = binom(a, i-1) * (a - i + 1) / i, exact over Z for the
    // integer representative; reduction happens once at the end.
    const BigInt &rep = a.value();
    std::vector<BigInt> coeffs(t_terms, BigInt(0));
    BigInt c = 1;
    for (std::size_t i = 0; i < t_terms; ++i) {
        if (i > 0) {
            c *= rep - static_cast<unsigned long>(i - 1);
            mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(i));
        }
        coeffs[i] = c;
    }
    return TruncatedSeries::from_coefficients(p, p_digits, t_terms, coeffs);
}

// ----------------------------------------------------------------- μ and λ

MuLambda mu_lambda(const IntPoly &g, unsigned p) {
    if (g.is_zero())
        throw Error(ErrorKind::ZeroSeries, "series is identically 0");
    MuLambda r;
    std::optional<unsigned> best;
    for (std::size_t i = 0; i < g.coefficients().size(); ++i) {
        auto v = valuation(g.coefficients()[i], p);
        if (v && (!best || *v < *best)) {
            best = v;
            r.lambda = i;
        }
    }
    r.mu = *best;
    r.certified = true;
    r.note = "exact";
    return r;
}

MuLambda mu_lambda(const LaurentU &f, unsigned p) {
    return mu_lambda(to_unit_times_poly(f).poly, p);
}

MuLambda mu_lambda(const TruncatedSeries &f, std::optional<std::size_t> lambda_bound) {
    const unsigned n = f.p_precision();
    unsigned best = n;
    std::size_t index = 0;
    for (std::size_t i = 0; i < f.t_precision(); ++i) {
        auto v = valuation(f.coefficient(i), f.prime());
        if (v && *v < best) {
            best = *v;
            index = i;
        }
    }
    if (best >= n)
        throw Error(ErrorKind::ZeroSeries, "series indistinguishable from 0 at this precision");
    MuLambda r{best, index, false, {}};
    if (best == 0) {
        r.certified = true;
        r.note = "unit coefficient visible";
    } else if (lambda_bound && *lambda_bound < f.t_precision()) {
        r.certified = true;
        r.note = "certified by external lambda bound " + std::to_string(*lambda_bound);
    } else {
        r.note = "mu > 0 and no lambda bound: coefficients beyond T^" +
                 std::to_string(f.t_precision() - 1) + " may have smaller valuation";
    }
    return r;
}

std::string format_series(const std::vector<BigInt> &coeffs, std::size_t max_terms,
                          bool trailing_ellipsis) {
    std::ostringstream out;
    std::size_t shown = 0;
    bool truncated = false;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const BigInt &c = coeffs[i];
        if (c == 0)
            continue;
        if (shown == max_terms) {
            truncated = true;
            break;
        }
        BigInt mag = abs(c);
        if (shown == 0)
            out << (c < 0 ? "-" : "");
        else
            out << (c < 0 ? " - " : " + ");
        if (i == 0 || mag != 1)
            out << mag.get_str();
        if (i >= 1)
            out << "T";
        if (i >= 2)
            out << "^" << i;
        ++shown;
    }
    if (shown == 0)
        out << "0";
    if (truncated || trailing_ellipsis)
        out << " + ...";
    return out.str();
}

} // namespace ztower
