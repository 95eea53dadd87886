#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ztower/graph.hpp"
#include "ztower/padic.hpp"

namespace ztower {

/// Inertia at a base vertex: the closed subgroup I_v of Z_p, which is either
/// {0} (unramified) or p^k Z_p.
struct Ramification {
    std::optional<unsigned> k;

    static Ramification unramified() { return {}; }
    static Ramification ramified(unsigned k) { return {k}; }
    bool is_ramified() const noexcept { return k.has_value(); }
    /// Exponent e of the fiber size p^e at level n.
    unsigned fiber_exponent(unsigned n) const noexcept { return k ? std::min(n, *k) : n; }

    friend bool operator==(const Ramification &, const Ramification &) = default;
};

/// Base graph with a Z_p-valued voltage on every directed edge and
/// ramification data at every vertex.
class VoltageGraph {
  public:
    /// Validates: p prime, base graph valid and connected, one voltage per
    /// directed edge with voltage(ē) = -voltage(e), one ramification per vertex.
    VoltageGraph(SerreGraph base, unsigned p, std::vector<PadicScalar> voltage,
                 std::vector<Ramification> ramification);

    /// Voltages given only on the canonical orientation (one per geometric
    /// edge, in orientation order); inverses get the negation.
    static VoltageGraph from_orientation(SerreGraph base, unsigned p,
                                         const std::vector<PadicScalar> &oriented_voltage,
                                         std::vector<Ramification> ramification);

    const SerreGraph &base() const noexcept { return base_; }
    unsigned prime() const noexcept { return p_; }
    const std::vector<PadicScalar> &voltages() const noexcept { return voltage_; }
    const PadicScalar &voltage(EdgeId e) const { return voltage_.at(e); }
    const std::vector<Ramification> &ramification() const noexcept { return ramification_; }
    const Ramification &ramification(VertexId v) const { return ramification_.at(v); }
    bool all_voltages_exact() const;

    /// Same voltages, every vertex unramified.
    VoltageGraph unramified() const;
    /// Voltages replaced by truncated residues of the given precision.
    VoltageGraph truncated(unsigned digits) const;

  private:
    SerreGraph base_;
    unsigned p_;
    std::vector<PadicScalar> voltage_;
    std::vector<Ramification> ramification_;
};

struct LevelVertex {
    VertexId base = 0;
    std::uint64_t residue = 0; // mod p^fiber_exponent

    friend bool operator==(const LevelVertex &, const LevelVertex &) = default;
};

struct LevelEdge {
    EdgeId base = 0;
    std::uint64_t sigma = 0; // mod p^n

    friend bool operator==(const LevelEdge &, const LevelEdge &) = default;
};

/// X_n = X(Z/p^n, I_n, α_n). Vertex (v, r) has index offset(v) + r; directed
/// edge (e, σ) has index e * p^n + σ.
struct LevelGraph {
    unsigned n = 0;
    unsigned p = 2;
    std::uint64_t modulus = 1; // p^n
    SerreGraph graph;
    std::vector<LevelVertex> vertex_labels;
    std::vector<LevelEdge> edge_labels;
    std::vector<std::size_t> fiber_offset; // per base vertex
    std::vector<std::uint64_t> fiber_size; // per base vertex

    VertexId vertex_index(VertexId base, std::uint64_t residue) const {
        return fiber_offset.at(base) + residue % fiber_size.at(base);
    }
    EdgeId edge_index(EdgeId base, std::uint64_t sigma) const {
        return base * modulus + sigma % modulus;
    }
};

/// Largest level whose modulus p^n fits comfortably in a machine word.
unsigned max_supported_level(unsigned p);

LevelGraph build_level(const VoltageGraph &vg, unsigned n);

/// Vertex and edge maps of a graph morphism together with the ramification
/// index declared for each source vertex.
struct CoverMap {
    std::shared_ptr<const LevelGraph> source;
    std::shared_ptr<const LevelGraph> target;
    std::vector<VertexId> vertex_map;
    std::vector<EdgeId> edge_map;
    std::vector<std::uint64_t> ramification_index;
};

/// m_w = |I_{v,from} ∩ ker(Z/p^from -> Z/p^to)| for a vertex over v.
std::uint64_t expected_ramification_index(const Ramification &ram, unsigned p, unsigned from,
                                          unsigned to);

/// The natural cover X_from -> X_to (from >= to) reducing labels mod p^to.
CoverMap projection(const VoltageGraph &vg, unsigned from, unsigned to);
CoverMap projection(const VoltageGraph &vg, std::shared_ptr<const LevelGraph> source,
                    std::shared_ptr<const LevelGraph> target);

/// outer ∘ inner; ramification indices multiply.
CoverMap compose(const CoverMap &outer, const CoverMap &inner);

struct CoverReport {
    bool is_morphism = false;
    bool surjective = false;
    bool is_branched_cover = false;
    std::uint64_t degree = 0;
    bool valency_law_ok = false;
    bool degree_law_ok = false;
    /// Declared indices agree with the fiber counts.
    bool declared_indices_ok = false;
    /// Fiber-counted index per source vertex (0 where not constant over the star).
    std::vector<std::uint64_t> measured_index;
    std::vector<std::string> issues;

    bool ok() const {
        return is_morphism && is_branched_cover && valency_law_ok && degree_law_ok &&
               declared_indices_ok;
    }
};

CoverReport verify_cover(const CoverMap &cover);

enum class Criterion { Generates, DoesNotGenerate };

struct ConnectednessReport {
    Criterion outcome = Criterion::DoesNotGenerate;
    std::vector<PadicScalar> cycle_sums;
    bool generates() const noexcept { return outcome == Criterion::Generates; }
};

/// Whether the image of π_1 under the voltage generates Z_p, i.e. some
/// fundamental cycle sum is a p-adic unit. Sufficient for every level of the
/// (branched) tower to be connected.
ConnectednessReport connectedness_criterion(const VoltageGraph &vg);

struct ImmersionReport {
    bool is_morphism = false;
    bool edge_bijective = false;
    bool star_injective = false;
    std::size_t source_vertices = 0;
    std::size_t target_vertices = 0;
    /// Per base vertex: number of X_n^unr vertices collapsing onto each X_n vertex.
    std::vector<std::uint64_t> collapse;

    bool ok() const { return is_morphism && edge_bijective && star_injective; }
};

/// Builds ι_n : X_n^unr -> X_n, (v, σ) -> (v, σ + I_v), (e, σ) -> (e, σ) and checks it.
ImmersionReport verify_immersion(const VoltageGraph &vg, unsigned n);

/// Translation by τ ∈ Z/p^n: (v, r) -> (v, r + τ), (e, σ) -> (e, σ + τ).
CoverMap translation(std::shared_ptr<const LevelGraph> level, std::uint64_t tau);

} // namespace ztower
