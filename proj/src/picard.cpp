#include "ztower/picard.hpp"

#include <algorithm>

namespace ztower {

BigInt determinant(const Matrix<BigInt> &a) {
    return determinant_bareiss(a, BigInt(0), BigInt(1), [](const BigInt &x, const BigInt &y) {
        BigInt q;
        mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        return q;
    });
}

BigInt reduced_laplacian_determinant(const SerreGraph &graph, VertexId deleted) {
    if (deleted >= graph.vertex_count())
        throw Error(ErrorKind::UnknownVertex, "vertex " + std::to_string(deleted) + " out of range");
    return determinant(laplacian_matrix(graph).minor(deleted, deleted));
}

BigInt kappa(const SerreGraph &graph) {
    if (!is_connected(graph))
        throw Error(ErrorKind::Disconnected, "spanning trees of a disconnected graph");
    return reduced_laplacian_determinant(graph, 0);
}

namespace {

// a(row, *) -= q * a(pivot_row, *) on columns [from, cols)
void row_submul(Matrix<BigInt> &a, std::size_t row, std::size_t pivot_row, const BigInt &q,
                std::size_t from) {
    for (std::size_t j = from; j < a.cols(); ++j)
        if (a(pivot_row, j) != 0)
            a(row, j) -= q * a(pivot_row, j);
}

void col_submul(Matrix<BigInt> &a, std::size_t col, std::size_t pivot_col, const BigInt &q,
                std::size_t from) {
    for (std::size_t i = from; i < a.rows(); ++i)
        if (a(i, pivot_col) != 0)
            a(i, col) -= q * a(i, pivot_col);
}

bool move_min_pivot(Matrix<BigInt> &a, std::size_t t) {
    std::size_t bi = a.rows(), bj = a.cols();
    for (std::size_t i = t; i < a.rows(); ++i)
        for (std::size_t j = t; j < a.cols(); ++j)
            if (a(i, j) != 0 && (bi == a.rows() || mpz_cmpabs(a(i, j).get_mpz_t(), a(bi, bj).get_mpz_t()) < 0)) {
                bi = i;
                bj = j;
            }
    if (bi == a.rows())
        return false;
    a.swap_rows(t, bi);
    a.swap_cols(t, bj);
    return true;
}

} // namespace

std::vector<BigInt> smith_normal_form(Matrix<BigInt> a) {
    const std::size_t limit = std::min(a.rows(), a.cols());
    std::vector<BigInt> diag;
    std::size_t t = 0;
    for (; t < limit; ++t) {
        if (!move_min_pivot(a, t))
            break;
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < a.rows(); ++i) {
                if (a(i, t) == 0)
                    continue;
                BigInt q = a(i, t) / a(t, t);
                row_submul(a, i, t, q, t);
                dirty |= a(i, t) != 0;
            }
            for (std::size_t j = t + 1; j < a.cols(); ++j) {
                if (a(t, j) == 0)
                    continue;
                BigInt q = a(t, j) / a(t, t);
                col_submul(a, j, t, q, t);
                dirty |= a(t, j) != 0;
            }
            if (dirty) {
                move_min_pivot(a, t);
                continue;
            }
            // Row and column are clear; enforce a(t,t) | rest.
            bool fixed = true;
            for (std::size_t i = t + 1; i < a.rows() && fixed; ++i)
                for (std::size_t j = t + 1; j < a.cols(); ++j)
                    if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                        row_submul(a, t, i, BigInt(-1), t);
                        fixed = false;
                        break;
                    }
            if (fixed)
                break;
        }
        diag.push_back(abs(a(t, t)));
    }
    for (; t < limit; ++t)
        diag.push_back(0);
    return diag;
}

PicardGroup picard_group(const SerreGraph &graph) {
    if (graph.vertex_count() == 0)
        throw Error(ErrorKind::EmptyGraph, "empty graph");
    auto diag = smith_normal_form(laplacian_matrix(graph));
    auto zeros = std::count(diag.begin(), diag.end(), BigInt(0));
    if (zeros != 1)
        throw Error(ErrorKind::Disconnected,
                    "Laplacian has " + std::to_string(zeros) + " zero invariant factors");
    PicardGroup g;
    for (const auto &d : diag)
        if (d > 1) {
            g.invariant_factors.push_back(d);
            g.order *= d;
        }
    return g;
}

PPart p_part(const PicardGroup &group, unsigned p) {
    PPart r;
    for (const auto &d : group.invariant_factors) {
        unsigned v = valuation(d, p).value_or(0);
        r.factor_valuations.push_back(v);
        r.total += v;
    }
    return r;
}

Divisor Divisor::vertex(std::size_t vertex_count, VertexId v, const BigInt &c) {
    Divisor d(vertex_count);
    d[v] = c;
    return d;
}

BigInt Divisor::degree() const {
    BigInt s = 0;
    for (const auto &c : coeffs_)
        s += c;
    return s;
}

Divisor operator+(const Divisor &a, const Divisor &b) {
    if (a.size() != b.size())
        throw Error(ErrorKind::SupportMismatch, "divisors on different vertex sets");
    Divisor r = a;
    for (std::size_t i = 0; i < b.size(); ++i)
        r.coeffs_[i] += b.coeffs_[i];
    return r;
}

Divisor apply_laplacian(const SerreGraph &graph, const Divisor &d) {
    if (d.size() != graph.vertex_count())
        throw Error(ErrorKind::SupportMismatch, "divisor does not live on this graph");
    Divisor r(graph.vertex_count());
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
        if (d[v] == 0)
            continue;
        r[v] += d[v] * static_cast<unsigned long>(valency(graph, v));
        for (EdgeId e : graph.star(v))
            r[graph.terminus(e)] -= d[v];
    }
    return r;
}

namespace {

Divisor pushforward(const CoverMap &cover, const Divisor &d, bool weighted) {
    if (d.size() != cover.source->graph.vertex_count())
        throw Error(ErrorKind::SupportMismatch, "divisor is not supported on the cover's source");
    Divisor r(cover.target->graph.vertex_count());
    for (VertexId w = 0; w < d.size(); ++w) {
        if (d[w] == 0)
            continue;
        if (weighted)
            r[cover.vertex_map[w]] += d[w] * static_cast<unsigned long>(cover.ramification_index[w]);
        else
            r[cover.vertex_map[w]] += d[w];
    }
    return r;
}

} // namespace

Divisor pushforward_star(const CoverMap &cover, const Divisor &d) {
    return pushforward(cover, d, false);
}

Divisor pushforward_ram(const CoverMap &cover, const Divisor &d) {
    return pushforward(cover, d, true);
}

CompatibilityReport check_laplacian_compatibility(const CoverMap &cover) {
    const auto &src = cover.source->graph;
    const auto &dst = cover.target->graph;
    CompatibilityReport r;
    for (VertexId w = 0; w < src.vertex_count(); ++w) {
        auto point = Divisor::vertex(src.vertex_count(), w);
        bool ok = apply_laplacian(dst, pushforward_ram(cover, point)) ==
                  pushforward_star(cover, apply_laplacian(src, point));
        r.vertex_ok.push_back(ok);
        r.all_ok = r.all_ok && ok;
    }
    return r;
}

} // namespace ztower
