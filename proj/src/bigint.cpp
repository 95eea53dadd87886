#include "ztower/bigint.hpp"
#include "ztower/error.hpp"

namespace ztower {

const char *to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidInput: return "invalid input";
    case ErrorKind::EmptyGraph: return "empty graph";
    case ErrorKind::Disconnected: return "disconnected graph";
    case ErrorKind::UnknownVertex: return "unknown vertex";
    case ErrorKind::MissingWeight: return "missing weight";
    case ErrorKind::PrimeMismatch: return "prime mismatch";
    case ErrorKind::InsufficientPrecision: return "insufficient precision";
    case ErrorKind::ZeroSeries: return "zero series";
    case ErrorKind::LevelMismatch: return "level mismatch";
    case ErrorKind::SupportMismatch: return "support mismatch";
    case ErrorKind::CapExceeded: return "cap exceeded";
    case ErrorKind::Indeterminate: return "indeterminate";
    }
    return "unknown error";
}

std::optional<unsigned> valuation(const BigInt &x, unsigned p) {
    if (x == 0)
        return std::nullopt;
    BigInt rest;
    BigInt prime(p);
    auto count = mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t());
    return static_cast<unsigned>(count);
}

BigInt power(unsigned long base, unsigned long exponent) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exponent);
    return r;
}

BigInt mod_floor(const BigInt &x, const BigInt &m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

BigInt mod_symmetric(const BigInt &x, const BigInt &m) {
    BigInt r = mod_floor(x, m);
    if (2 * r > m)
        r -= m;
    return r;
}

bool is_prime(unsigned long p) {
    if (p < 2)
        return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

std::string to_string(const BigInt &x) { return x.get_str(10); }

std::optional<BigInt> parse_bigint(const std::string &text) {
    std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
    if (start == text.size())
        return std::nullopt;
    for (std::size_t i = start; i < text.size(); ++i)
        if (text[i] < '0' || text[i] > '9')
            return std::nullopt;
    BigInt r;
    if (r.set_str(text[0] == '+' ? text.substr(1) : text, 10) != 0)
        return std::nullopt;
    return r;
}

} // namespace ztower
