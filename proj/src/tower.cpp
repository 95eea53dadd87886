#include "ztower/tower.hpp"

#include <algorithm>
#include <limits>

namespace ztower {

VoltageGraph::VoltageGraph(SerreGraph base, unsigned p, std::vector<PadicScalar> voltage,
                           std::vector<Ramification> ramification)
    : base_(std::move(base)), p_(p), voltage_(std::move(voltage)),
      ramification_(std::move(ramification)) {
    if (!is_prime(p_))
        throw Error(ErrorKind::InvalidInput, std::to_string(p_) + " is not prime");
    if (auto issues = validate(base_); !issues.empty())
        throw Error(ErrorKind::InvalidInput, "invalid base graph: " + issues.front());
    if (!is_connected(base_))
        throw Error(ErrorKind::Disconnected, "base graph is disconnected");
    if (voltage_.size() != base_.edge_count())
        throw Error(ErrorKind::MissingWeight, "voltage count does not match directed edge count");
    if (ramification_.size() != base_.vertex_count())
        throw Error(ErrorKind::InvalidInput, "ramification count does not match vertex count");
    for (EdgeId e = 0; e < base_.edge_count(); ++e) {
        if (voltage_[e].prime() != p_)
            throw Error(ErrorKind::PrimeMismatch, "voltage on edge " + std::to_string(e) +
                                                      " uses a different prime");
        if (!(voltage_[base_.inverse(e)] == -voltage_[e]))
            throw Error(ErrorKind::InvalidInput,
                        "voltage is not antisymmetric on edge " + std::to_string(e));
    }
}

VoltageGraph VoltageGraph::from_orientation(SerreGraph base, unsigned p,
                                            const std::vector<PadicScalar> &oriented_voltage,
                                            std::vector<Ramification> ramification) {
    auto orient = base.orientation();
    if (oriented_voltage.size() != orient.size())
        throw Error(ErrorKind::MissingWeight, "need one voltage per geometric edge");
    std::vector<PadicScalar> full(base.edge_count(), PadicScalar::exact(p, 0));
    for (std::size_t i = 0; i < orient.size(); ++i) {
        full[orient[i]] = oriented_voltage[i];
        full[base.inverse(orient[i])] = -oriented_voltage[i];
    }
    return VoltageGraph(std::move(base), p, std::move(full), std::move(ramification));
}

bool VoltageGraph::all_voltages_exact() const {
    return std::all_of(voltage_.begin(), voltage_.end(),
                       [](const PadicScalar &a) { return a.is_exact(); });
}

VoltageGraph VoltageGraph::unramified() const {
    return VoltageGraph(base_, p_, voltage_,
                        std::vector<Ramification>(base_.vertex_count(), Ramification::unramified()));
}

VoltageGraph VoltageGraph::truncated(unsigned digits) const {
    std::vector<PadicScalar> t;
    t.reserve(voltage_.size());
    for (const auto &a : voltage_)
        t.push_back(a.truncate(digits));
    return VoltageGraph(base_, p_, std::move(t), ramification_);
}

unsigned max_supported_level(unsigned p) {
    unsigned n = 0;
    std::uint64_t m = 1;
    while (m <= (std::numeric_limits<std::uint64_t>::max() >> 2) / p) {
        m *= p;
        ++n;
    }
    return n;
}

namespace {

std::uint64_t word_power(unsigned p, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i)
        r *= p;
    return r;
}

} // namespace

LevelGraph build_level(const VoltageGraph &vg, unsigned n) {
    const unsigned p = vg.prime();
    if (n > max_supported_level(p))
        throw Error(ErrorKind::InvalidInput, "level " + std::to_string(n) + " too large for p = " +
                                                 std::to_string(p));
    const SerreGraph &base = vg.base();
    LevelGraph level;
    level.n = n;
    level.p = p;
    level.modulus = word_power(p, n);

    std::vector<std::string> names;
    for (VertexId v = 0; v < base.vertex_count(); ++v) {
        level.fiber_offset.push_back(level.vertex_labels.size());
        auto size = word_power(p, vg.ramification(v).fiber_exponent(n));
        level.fiber_size.push_back(size);
        for (std::uint64_t r = 0; r < size; ++r) {
            level.vertex_labels.push_back({v, r});
            names.push_back(base.name(v) + ":" + std::to_string(r));
        }
    }

    std::vector<DirectedEdge> edges;
    edges.reserve(base.edge_count() * level.modulus);
    level.edge_labels.reserve(base.edge_count() * level.modulus);
    for (EdgeId e = 0; e < base.edge_count(); ++e) {
        const std::uint64_t shift = vg.voltage(e).reduce_word(n);
        for (std::uint64_t sigma = 0; sigma < level.modulus; ++sigma) {
            const std::uint64_t moved = (sigma + shift) % level.modulus;
            edges.push_back({level.vertex_index(base.origin(e), sigma),
                             level.vertex_index(base.terminus(e), moved),
                             level.edge_index(base.inverse(e), moved)});
            level.edge_labels.push_back({e, sigma});
        }
    }
    level.graph = SerreGraph(std::move(names), std::move(edges));
    return level;
}

std::uint64_t expected_ramification_index(const Ramification &ram, unsigned p, unsigned from,
                                          unsigned to) {
    // |I_{v,from}| = p^(from - min(from, k)), |ker| = p^(from - to); both are
    // subgroups of a cyclic group, so the intersection is the smaller one.
    const unsigned inertia = from - ram.fiber_exponent(from);
    return word_power(p, std::min(inertia, from - to));
}

CoverMap projection(const VoltageGraph &vg, std::shared_ptr<const LevelGraph> source,
                    std::shared_ptr<const LevelGraph> target) {
    if (source->n < target->n)
        throw Error(ErrorKind::LevelMismatch, "projection must go down the tower");
    if (source->p != vg.prime() || target->p != vg.prime() ||
        source->fiber_size.size() != vg.base().vertex_count() ||
        target->fiber_size.size() != vg.base().vertex_count())
        throw Error(ErrorKind::LevelMismatch, "levels were not built from this voltage graph");
    CoverMap c;
    const auto &src = *source;
    const auto &dst = *target;
    c.vertex_map.reserve(src.vertex_labels.size());
    c.ramification_index.reserve(src.vertex_labels.size());
    for (const auto &lab : src.vertex_labels) {
        c.vertex_map.push_back(dst.vertex_index(lab.base, lab.residue));
        c.ramification_index.push_back(
            expected_ramification_index(vg.ramification(lab.base), vg.prime(), src.n, dst.n));
    }
    c.edge_map.reserve(src.edge_labels.size());
    for (const auto &lab : src.edge_labels)
        c.edge_map.push_back(dst.edge_index(lab.base, lab.sigma));
    c.source = std::move(source);
    c.target = std::move(target);
    return c;
}

CoverMap projection(const VoltageGraph &vg, unsigned from, unsigned to) {
    if (from < to)
        throw Error(ErrorKind::LevelMismatch, "projection must go down the tower");
    auto src = std::make_shared<const LevelGraph>(build_level(vg, from));
    auto dst = std::make_shared<const LevelGraph>(build_level(vg, to));
    return projection(vg, std::move(src), std::move(dst));
}

CoverMap compose(const CoverMap &outer, const CoverMap &inner) {
    if (inner.target->graph.vertex_count() != outer.source->graph.vertex_count() ||
        inner.target->n != outer.source->n)
        throw Error(ErrorKind::LevelMismatch, "maps are not composable");
    CoverMap c;
    c.source = inner.source;
    c.target = outer.target;
    for (std::size_t w = 0; w < inner.vertex_map.size(); ++w) {
        c.vertex_map.push_back(outer.vertex_map[inner.vertex_map[w]]);
        c.ramification_index.push_back(inner.ramification_index[w] *
                                       outer.ramification_index[inner.vertex_map[w]]);
    }
    for (EdgeId e : inner.edge_map)
        c.edge_map.push_back(outer.edge_map[e]);
    return c;
}

namespace {

bool check_morphism(const SerreGraph &src, const SerreGraph &dst,
                    const std::vector<VertexId> &vmap, const std::vector<EdgeId> &emap,
                    std::vector<std::string> &issues) {
    if (vmap.size() != src.vertex_count() || emap.size() != src.edge_count()) {
        issues.push_back("map sizes do not match the source graph");
        return false;
    }
    for (auto v : vmap)
        if (v >= dst.vertex_count()) {
            issues.push_back("vertex image out of range");
            return false;
        }
    for (auto e : emap)
        if (e >= dst.edge_count()) {
            issues.push_back("edge image out of range");
            return false;
        }
    bool ok = true;
    for (EdgeId e = 0; e < src.edge_count(); ++e) {
        const EdgeId fe = emap[e];
        if (vmap[src.origin(e)] != dst.origin(fe) || vmap[src.terminus(e)] != dst.terminus(fe) ||
            dst.inverse(fe) != emap[src.inverse(e)]) {
            if (ok)
                issues.push_back("morphism axiom fails at edge " + std::to_string(e));
            ok = false;
        }
    }
    return ok;
}

} // namespace

CoverReport verify_cover(const CoverMap &cover) {
    CoverReport r;
    const SerreGraph &src = cover.source->graph;
    const SerreGraph &dst = cover.target->graph;
    r.is_morphism = check_morphism(src, dst, cover.vertex_map, cover.edge_map, r.issues);
    if (!r.is_morphism)
        return r;

    std::vector<bool> hit_v(dst.vertex_count(), false), hit_e(dst.edge_count(), false);
    for (auto v : cover.vertex_map)
        hit_v[v] = true;
    for (auto e : cover.edge_map)
        hit_e[e] = true;
    r.surjective = std::all_of(hit_v.begin(), hit_v.end(), [](bool b) { return b; }) &&
                   std::all_of(hit_e.begin(), hit_e.end(), [](bool b) { return b; });
    if (!r.surjective)
        r.issues.push_back("map is not surjective");

    // Position of every target edge inside the star of its origin.
    std::vector<std::size_t> star_pos(dst.edge_count(), 0);
    for (VertexId v = 0; v < dst.vertex_count(); ++v) {
        auto star = dst.star(v);
        for (std::size_t i = 0; i < star.size(); ++i)
            star_pos[star[i]] = i;
    }

    bool constant = true;
    r.valency_law_ok = true;
    r.declared_indices_ok = cover.ramification_index.size() == src.vertex_count();
    r.measured_index.assign(src.vertex_count(), 0);
    for (VertexId w = 0; w < src.vertex_count(); ++w) {
        const VertexId v = cover.vertex_map[w];
        const auto target_star = dst.star(v);
        std::vector<std::uint64_t> counts(target_star.size(), 0);
        for (EdgeId e : src.star(w))
            ++counts[star_pos[cover.edge_map[e]]];
        std::uint64_t m = counts.empty() ? (r.declared_indices_ok ? cover.ramification_index[w] : 0)
                                         : counts.front();
        if (std::any_of(counts.begin(), counts.end(), [m](auto c) { return c != m; })) {
            constant = false;
            m = 0;
            r.issues.push_back("edge-star fibers not of constant size at vertex " +
                               src.name(w));
        }
        r.measured_index[w] = m;
        if (src.star(w).size() != m * target_star.size()) {
            r.valency_law_ok = false;
            r.issues.push_back("valency law fails at vertex " + src.name(w));
        }
        if (r.declared_indices_ok && cover.ramification_index[w] != m)
            r.declared_indices_ok = false;
    }
    if (!r.declared_indices_ok)
        r.issues.push_back("declared ramification indices differ from fiber counts");
    r.is_branched_cover = r.surjective && constant;

    // d(v) = Σ_{w over v} m_w must be independent of v and equal |f^{-1}(e)|.
    std::vector<std::uint64_t> d(dst.vertex_count(), 0);
    for (VertexId w = 0; w < src.vertex_count(); ++w)
        d[cover.vertex_map[w]] += r.measured_index[w];
    std::vector<std::uint64_t> edge_fiber(dst.edge_count(), 0);
    for (auto e : cover.edge_map)
        ++edge_fiber[e];
    r.degree = d.empty() ? 0 : d.front();
    r.degree_law_ok = std::all_of(d.begin(), d.end(), [&](auto x) { return x == r.degree; });
    for (EdgeId e = 0; e < dst.edge_count(); ++e)
        if (edge_fiber[e] != d[dst.origin(e)])
            r.degree_law_ok = false;
    if (!r.degree_law_ok)
        r.issues.push_back("degree law fails");
    return r;
}

ConnectednessReport connectedness_criterion(const VoltageGraph &vg) {
    ConnectednessReport r;
    auto tree = spanning_tree(vg.base());
    r.cycle_sums = fundamental_cycle_sums<PadicScalar>(
        vg.base(), tree, std::span<const PadicScalar>(vg.voltages()),
        PadicScalar::exact(vg.prime(), 0));
    r.outcome = std::any_of(r.cycle_sums.begin(), r.cycle_sums.end(),
                            [](const PadicScalar &s) { return s.is_unit(); })
                    ? Criterion::Generates
                    : Criterion::DoesNotGenerate;
    return r;
}

ImmersionReport verify_immersion(const VoltageGraph &vg, unsigned n) {
    const LevelGraph branched = build_level(vg, n);
    const LevelGraph plain = build_level(vg.unramified(), n);
    ImmersionReport r;
    r.source_vertices = plain.graph.vertex_count();
    r.target_vertices = branched.graph.vertex_count();

    std::vector<VertexId> vmap;
    for (const auto &lab : plain.vertex_labels)
        vmap.push_back(branched.vertex_index(lab.base, lab.residue));
    std::vector<EdgeId> emap;
    for (const auto &lab : plain.edge_labels)
        emap.push_back(branched.edge_index(lab.base, lab.sigma));
    std::vector<std::string> issues;
    r.is_morphism = check_morphism(plain.graph, branched.graph, vmap, emap, issues);

    std::vector<bool> hit(branched.graph.edge_count(), false);
    bool injective = emap.size() == branched.graph.edge_count();
    for (auto e : emap) {
        if (e >= hit.size() || hit[e])
            injective = false;
        else
            hit[e] = true;
    }
    r.edge_bijective = injective && std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });

    r.star_injective = r.is_morphism;
    for (VertexId w = 0; r.star_injective && w < plain.graph.vertex_count(); ++w) {
        std::vector<EdgeId> images;
        for (EdgeId e : plain.graph.star(w))
            images.push_back(emap[e]);
        std::sort(images.begin(), images.end());
        if (std::adjacent_find(images.begin(), images.end()) != images.end())
            r.star_injective = false;
    }

    for (VertexId v = 0; v < vg.base().vertex_count(); ++v)
        r.collapse.push_back(plain.fiber_size[v] / branched.fiber_size[v]);
    return r;
}

CoverMap translation(std::shared_ptr<const LevelGraph> level, std::uint64_t tau) {
    CoverMap c;
    for (const auto &lab : level->vertex_labels) {
        c.vertex_map.push_back(level->vertex_index(lab.base, lab.residue + tau));
        c.ramification_index.push_back(1);
    }
    for (const auto &lab : level->edge_labels)
        c.edge_map.push_back(level->edge_index(lab.base, lab.sigma + tau));
    c.source = level;
    c.target = std::move(level);
    return c;
}

} // namespace ztower
