#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace ztower {

using BigInt = mpz_class;

/// p-adic valuation of a nonzero integer; std::nullopt for zero.
std::optional<unsigned> valuation(const BigInt &x, unsigned p);

BigInt power(unsigned long base, unsigned long exponent);

/// Least nonnegative residue of x modulo m (m > 0).
BigInt mod_floor(const BigInt &x, const BigInt &m);

/// Residue in (-m/2, m/2].
BigInt mod_symmetric(const BigInt &x, const BigInt &m);

bool is_prime(unsigned long p);

std::string to_string(const BigInt &x);

/// Parses an optionally signed decimal string; std::nullopt on malformed input.
std::optional<BigInt> parse_bigint(const std::string &text);

} // namespace ztower
