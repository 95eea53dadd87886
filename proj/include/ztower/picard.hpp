#pragma once

#include <vector>

#include "ztower/bigint.hpp"
#include "ztower/graph.hpp"
#include "ztower/matrix.hpp"
#include "ztower/tower.hpp"

namespace ztower {

/// Exact determinant by fraction-free elimination.
BigInt determinant(const Matrix<BigInt> &a);

/// Determinant of the Laplacian with row and column `deleted` removed.
BigInt reduced_laplacian_determinant(const SerreGraph &graph, VertexId deleted);

/// Number of spanning trees (Kirchhoff). Throws Disconnected / EmptyGraph.
BigInt kappa(const SerreGraph &graph);

/// Diagonal of the Smith normal form: nonnegative, d_1 | d_2 | ..., zeros last.
std::vector<BigInt> smith_normal_form(Matrix<BigInt> a);

struct PicardGroup {
    /// Nontrivial invariant factors d_1 | d_2 | ... (all > 1).
    std::vector<BigInt> invariant_factors;
    BigInt order = 1;
};

/// Pic^0 ≅ ⊕ Z/d_i from the Smith form of the full Laplacian.
PicardGroup picard_group(const SerreGraph &graph);

struct PPart {
    std::vector<unsigned> factor_valuations; // ord_p of each invariant factor
    unsigned total = 0;                      // ord_p of the order
};

PPart p_part(const PicardGroup &group, unsigned p);

/// Integer combination of vertices, stored densely by vertex index.
class Divisor {
  public:
    explicit Divisor(std::size_t vertex_count) : coeffs_(vertex_count, BigInt(0)) {}
    static Divisor vertex(std::size_t vertex_count, VertexId v, const BigInt &c = 1);

    std::size_t size() const noexcept { return coeffs_.size(); }
    BigInt &operator[](VertexId v) { return coeffs_.at(v); }
    const BigInt &operator[](VertexId v) const { return coeffs_.at(v); }
    BigInt degree() const;

    friend Divisor operator+(const Divisor &a, const Divisor &b);
    friend bool operator==(const Divisor &, const Divisor &) = default;

  private:
    std::vector<BigInt> coeffs_;
};

/// L(D) with L(v) = val(v) v - Σ_{e ∈ E_v} t(e).
Divisor apply_laplacian(const SerreGraph &graph, const Divisor &d);

/// f_*: w -> f(w).
Divisor pushforward_star(const CoverMap &cover, const Divisor &d);
/// f_r: w -> m_w f(w), using the cover's declared ramification indices.
Divisor pushforward_ram(const CoverMap &cover, const Divisor &d);

struct CompatibilityReport {
    std::vector<bool> vertex_ok;
    bool all_ok = true;
};

/// Checks L_target ∘ f_r = f_* ∘ L_source on every source vertex.
CompatibilityReport check_laplacian_compatibility(const CoverMap &cover);

} // namespace ztower
