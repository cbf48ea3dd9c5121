/*
 * Copyright 2026 The opg-solve Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Random open games and diagrams. Sampling goes through the raw 64-bit
// output of mt19937_64 only, so a seed gives the same file on every
// platform and standard library.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "opg/dsl.hpp"

namespace opg {

using Rng = std::mt19937_64;

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) { return n == 0 ? 0 : rng() % n; }
inline std::uint32_t uniform_in(Rng& rng, std::uint32_t lo, std::uint32_t hi)
{
    return lo + static_cast<std::uint32_t>(uniform_below(rng, std::uint64_t{hi} - lo + 1));
}
inline double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct AtomSpec {
    std::uint32_t nodes = 4;         // non-interface nodes
    std::uint32_t max_outdegree = 2; // per node, including entrances
    Priority max_priority = 4;       // M
};

struct RandomSpec {
    AtomSpec atom;
    std::uint32_t max_arity = 1; // bound on each interface list of a fresh atom
    std::uint32_t depth = 1;     // every leaf of the term sits at this depth
    double duplicate_rate = 0.0;
    bool exit_free = false;      // no exits anywhere; terms use sums only
    std::uint64_t seed = 0;
    std::string diagram_name = "d";
};

class UnsatisfiableSpec : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One random atom of the given type. Entrances never receive edges, exits
/// only get their implicit self-loop, and a node that drew no successor gets
/// a 1 self-loop.
inline OpgDef random_atom(Rng& rng, const AtomSpec& spec, const InterfaceType& type, std::string name)
{
    if (spec.max_priority < 2 || spec.max_priority % 2 != 0)
        throw UnsatisfiableSpec("max priority must be even and at least 2");
    const std::uint32_t entrances = type.dom_r + type.cod_l;
    const std::uint32_t exits = type.cod_r + type.dom_l;
    if (spec.nodes == 0 && entrances + exits > 0)
        throw UnsatisfiableSpec("atoms without nodes cannot have interface nodes");
    if (entrances > 0 && spec.max_outdegree == 0)
        throw UnsatisfiableSpec("entrances need an outdegree of at least 1");

    OpgDef d;
    d.name = std::move(name);
    d.type = type;
    d.maxprio = spec.max_priority;

    std::vector<std::string> targets;
    for (std::uint32_t k = 1; k <= spec.nodes; ++k) {
        std::string n = "v" + std::to_string(k);
        d.nodes.push_back({n, uniform_below(rng, 2) ? Player::Forall : Player::Exists});
        targets.push_back(n);
    }
    for (std::uint32_t k = 1; k <= type.cod_r; ++k)
        targets.push_back("out.r" + std::to_string(k));
    for (std::uint32_t k = 1; k <= type.dom_l; ++k)
        targets.push_back("out.l" + std::to_string(k));

    auto add_edges = [&](const std::string& source, std::uint32_t degree) {
        // Partial Fisher-Yates over the target list.
        std::vector<std::size_t> idx(targets.size());
        for (std::size_t k = 0; k < idx.size(); ++k)
            idx[k] = k;
        degree = std::min<std::uint32_t>(degree, static_cast<std::uint32_t>(idx.size()));
        for (std::uint32_t k = 0; k < degree; ++k) {
            std::size_t j = k + uniform_below(rng, idx.size() - k);
            std::swap(idx[k], idx[j]);
            d.edges.push_back({source, targets[idx[k]], uniform_in(rng, 0, spec.max_priority)});
        }
        return degree;
    };

    for (std::uint32_t k = 1; k <= type.dom_r; ++k)
        add_edges("in.r" + std::to_string(k), uniform_in(rng, 1, spec.max_outdegree));
    for (std::uint32_t k = 1; k <= type.cod_l; ++k)
        add_edges("in.l" + std::to_string(k), uniform_in(rng, 1, spec.max_outdegree));
    for (std::uint32_t k = 0; k < spec.nodes; ++k) {
        const std::string& n = d.nodes[k].name;
        if (add_edges(n, uniform_in(rng, 0, spec.max_outdegree)) == 0)
            d.edges.push_back({n, n, 1});
    }
    return d;
}

namespace detail {

struct Dom {
    std::uint32_t r = 0, l = 0;
    bool operator==(const Dom&) const = default;
    bool zero() const { return r == 0 && l == 0; }
};

struct GenTerm {
    TermAst term;
    Dom dom, cod;
};

class DiagramGenerator {
public:
    DiagramGenerator(const RandomSpec& spec) : spec_(spec), rng_(spec.seed) {}

    SourceFile run()
    {
        GenTerm t = gen(spec_.depth, std::nullopt);
        SourceFile f;
        for (auto& a : pool_)
            f.opgs.push_back(std::move(a.def));
        f.diagrams.push_back({spec_.diagram_name, std::move(t.term)});
        return f;
    }

private:
    struct PoolAtom {
        OpgDef def;
        Dom dom, cod;
    };

    bool duplicate() { return spec_.duplicate_rate > 0 && uniform_unit(rng_) < spec_.duplicate_rate; }

    std::uint32_t arity() { return uniform_in(rng_, 0, spec_.max_arity); }

    // Fresh domains carry at least one rightward entrance when the arity allows.
    Dom random_dom()
    {
        std::uint32_t r = uniform_in(rng_, std::min(1u, spec_.max_arity), spec_.max_arity);
        return Dom{r, spec_.exit_free ? 0u : arity()};
    }

    // k with req == k * dom(a) for the first pooled atom a that admits one.
    std::optional<std::pair<Dom, std::uint32_t>> multiple_of_pool(Dom req) const
    {
        for (const auto& a : pool_) {
            if (a.dom.zero())
                continue;
            std::uint32_t k = a.dom.r ? req.r / a.dom.r : req.l / a.dom.l;
            if (k >= 1 && Dom{k * a.dom.r, k * a.dom.l} == req)
                return std::pair{a.dom, k};
        }
        return std::nullopt;
    }

    GenTerm leaf(std::optional<Dom> req)
    {
        std::vector<std::size_t> fits;
        for (std::size_t k = 0; k < pool_.size(); ++k)
            if (!req || pool_[k].dom == *req)
                fits.push_back(k);
        if (!fits.empty() && duplicate()) {
            const auto& a = pool_[fits[uniform_below(rng_, fits.size())]];
            return {TermAst::ref(a.def.name), a.dom, a.cod};
        }
        Dom dom = req ? *req : random_dom();
        Dom cod = duplicate() ? dom : Dom{arity(), arity()};
        if (spec_.exit_free)
            cod.r = 0;
        InterfaceType type{dom.r, dom.l, cod.r, cod.l};
        std::string name = "A" + std::to_string(pool_.size() + 1);
        pool_.push_back({random_atom(rng_, spec_.atom, type, name), dom, cod});
        return {TermAst::ref(name), dom, cod};
    }

    GenTerm gen(std::uint32_t depth, std::optional<Dom> req)
    {
        if (depth == 0)
            return leaf(req);
        bool sum = spec_.exit_free || uniform_below(rng_, 2) == 0;
        std::optional<std::pair<Dom, std::uint32_t>> mult;
        if (req && spec_.duplicate_rate > 0)
            mult = multiple_of_pool(*req);
        // A requirement that is k copies of a pooled domain can only be met
        // by reuse if sums split it down to single copies in time.
        if (mult && mult->second > (1u << (depth - 1)))
            sum = true;
        // A single copy cannot be split by a sum without an empty side, which
        // would need a fresh atom.
        if (mult && mult->second == 1 && !spec_.exit_free)
            sum = false;
        if (!sum) {
            GenTerm l = gen(depth - 1, req);
            GenTerm r = gen(depth - 1, l.cod);
            return {TermAst::seq(std::move(l.term), std::move(r.term)), l.dom, r.cod};
        }
        std::optional<Dom> lreq, rreq;
        if (req) {
            Dom left;
            if (mult && mult->second >= 2) {
                std::uint32_t k = mult->second / 2;
                left = Dom{k * mult->first.r, k * mult->first.l};
            } else {
                left = Dom{uniform_in(rng_, 0, req->r), uniform_in(rng_, 0, req->l)};
            }
            lreq = left;
            rreq = Dom{req->r - left.r, req->l - left.l};
        }
        GenTerm l = gen(depth - 1, lreq);
        GenTerm r = gen(depth - 1, rreq);
        return {TermAst::sum(std::move(l.term), std::move(r.term)), Dom{l.dom.r + r.dom.r, l.dom.l + r.dom.l},
                Dom{l.cod.r + r.cod.r, l.cod.l + r.cod.l}};
    }

    RandomSpec spec_;
    Rng rng_;
    std::vector<PoolAtom> pool_;
};

} // namespace detail

/// A random file holding one diagram (named spec.diagram_name) and the
/// atoms it uses. Deterministic in the spec, seed included.
inline SourceFile generate_random(const RandomSpec& spec)
{
    if (spec.atom.max_priority < 2 || spec.atom.max_priority % 2 != 0)
        throw UnsatisfiableSpec("max priority must be even and at least 2");
    if (spec.atom.nodes == 0 && spec.max_arity > 0)
        throw UnsatisfiableSpec("atoms without nodes cannot have interface nodes");
    if (spec.duplicate_rate < 0 || spec.duplicate_rate > 1)
        throw UnsatisfiableSpec("duplicate rate must lie in [0,1]");
    if (spec.depth > 16)
        throw UnsatisfiableSpec("depth above 16");
    return detail::DiagramGenerator(spec).run();
}

} // namespace opg
