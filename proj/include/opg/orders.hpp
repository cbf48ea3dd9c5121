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

// Priorities, domain elements, results and queries, together with the
// orders the solvers are built from:
//
//   sub-priority order   M-1 < M-3 < ... < 1 < 0 < 2 < ... < M
//   domain order         bot < (o, m) < top, (o, m) ordered per exit
//   upper preorder       T1 <= T2 iff every d2 in T2 is above some d1 in T1
//   query order          pointwise, with bot below every priority
//
// Every type in here is an immutable value.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace opg {

using Priority = std::uint32_t;

class PrioritySpace {
public:
    explicit PrioritySpace(Priority max_priority) : max_(max_priority)
    {
        if (max_ < 2 || max_ % 2 != 0)
            throw std::invalid_argument("maximum priority must be even and >= 2, got " +
                                        std::to_string(max_));
    }

    Priority max() const { return max_; }
    bool contains(Priority p) const { return p <= max_; }
    /// Number of values a query may assign to one exit: M+1 priorities plus bot.
    std::uint64_t query_radix() const { return std::uint64_t{max_} + 2; }

    /// Smallest admissible space holding every priority up to `p`.
    static PrioritySpace covering(Priority p)
    {
        Priority m = std::max<Priority>(p, 2);
        return PrioritySpace(m % 2 == 0 ? m : m + 1);
    }

    bool operator==(const PrioritySpace&) const = default;

private:
    Priority max_;
};

inline std::int64_t subpriority_key(Priority m)
{
    return m % 2 == 0 ? std::int64_t{m} : -std::int64_t{m};
}

inline std::strong_ordering cmp_subpriority(Priority m1, Priority m2)
{
    return subpriority_key(m1) <=> subpriority_key(m2);
}

inline bool leq_subpriority(Priority m1, Priority m2)
{
    return subpriority_key(m1) <= subpriority_key(m2);
}

inline Priority max_priority(Priority m1, Priority m2) { return std::max(m1, m2); }

/// Least priority m' with max(m, m') even, in the sub-priority order.
inline Priority dual_priority(Priority m)
{
    if (m % 2 == 1)
        return m + 1;
    return m == 0 ? 0 : m - 1;
}

enum class Direction : std::uint8_t { Rightward, Leftward };

inline char direction_letter(Direction d) { return d == Direction::Rightward ? 'r' : 'l'; }

/// Exit identified by its interface position (1-based), never by node id.
struct ExitRef {
    Direction direction = Direction::Rightward;
    std::uint32_t index = 1;

    auto operator<=>(const ExitRef&) const = default;
};

struct EntranceRef {
    Direction direction = Direction::Rightward;
    std::uint32_t index = 1;

    auto operator<=>(const EntranceRef&) const = default;
};

inline std::string to_string(ExitRef o)
{
    return std::string("out.") + direction_letter(o.direction) + std::to_string(o.index);
}

inline std::string to_string(EntranceRef i)
{
    return std::string("in.") + direction_letter(i.direction) + std::to_string(i.index);
}

/// Value of a play: bot, top, or (exit, largest priority seen before the exit).
///
/// The defaulted three-way comparison is the canonical serialization order:
/// bot first, then exit elements by (direction, index, priority), then top.
class DomainElement {
public:
    enum class Kind : std::uint8_t { Bot, Exit, Top };

    static DomainElement bot() { return DomainElement(Kind::Bot, {}, 0); }
    static DomainElement top() { return DomainElement(Kind::Top, {}, 0); }
    static DomainElement at(ExitRef exit, Priority priority)
    {
        return DomainElement(Kind::Exit, exit, priority);
    }

    Kind kind() const { return kind_; }
    bool is_bot() const { return kind_ == Kind::Bot; }
    bool is_top() const { return kind_ == Kind::Top; }
    bool is_exit() const { return kind_ == Kind::Exit; }
    ExitRef exit() const { return exit_; }
    Priority priority() const { return priority_; }

    auto operator<=>(const DomainElement&) const = default;

private:
    DomainElement(Kind k, ExitRef e, Priority p) : kind_(k), exit_(e), priority_(p) {}

    Kind kind_;
    ExitRef exit_;
    Priority priority_;
};

inline std::string to_string(const DomainElement& d)
{
    switch (d.kind()) {
    case DomainElement::Kind::Bot: return "bot";
    case DomainElement::Kind::Top: return "top";
    case DomainElement::Kind::Exit: break;
    }
    return "(" + to_string(d.exit()) + "," + std::to_string(d.priority()) + ")";
}

/// Domain order. Elements on different exits are unordered.
inline std::partial_ordering cmp_domain(const DomainElement& d1, const DomainElement& d2)
{
    if (d1 == d2)
        return std::partial_ordering::equivalent;
    if (d1.is_bot() || d2.is_top())
        return std::partial_ordering::less;
    if (d2.is_bot() || d1.is_top())
        return std::partial_ordering::greater;
    if (d1.exit() != d2.exit())
        return std::partial_ordering::unordered;
    return cmp_subpriority(d1.priority(), d2.priority());
}

inline bool leq_domain(const DomainElement& d1, const DomainElement& d2)
{
    return std::is_lteq(cmp_domain(d1, d2));
}

/// Upper preorder on arbitrary finite sets of domain elements.
inline bool leq_upper(std::span<const DomainElement> lower, std::span<const DomainElement> upper)
{
    return std::all_of(upper.begin(), upper.end(), [&](const DomainElement& d2) {
        return std::any_of(lower.begin(), lower.end(),
                           [&](const DomainElement& d1) { return leq_domain(d1, d2); });
    });
}

/// A result: non-empty antichain of domain elements, stored in canonical order.
///
/// Since bot and top are the least and greatest elements, a result holding
/// either of them is a singleton, and a result holds at most one element per
/// exit.
class ResultSet {
public:
    /// Minimal elements of a non-empty set.
    static ResultSet minimal_elements(std::span<const DomainElement> ds)
    {
        if (ds.empty())
            throw std::invalid_argument("minimal_elements: empty input");
        std::vector<DomainElement> out;
        for (const auto& d : ds) {
            bool dominated = std::any_of(ds.begin(), ds.end(), [&](const DomainElement& e) {
                return cmp_domain(e, d) == std::partial_ordering::less;
            });
            if (!dominated)
                out.push_back(d);
        }
        return ResultSet(std::move(out));
    }

    /// Wraps a set that must already be an antichain.
    static ResultSet from_antichain(std::vector<DomainElement> ds)
    {
        if (ds.empty())
            throw std::invalid_argument("result must be non-empty");
        ResultSet r(std::move(ds));
        for (std::size_t a = 0; a < r.elems_.size(); ++a)
            for (std::size_t b = 0; b < r.elems_.size(); ++b)
                if (a != b && leq_domain(r.elems_[a], r.elems_[b]))
                    throw std::invalid_argument("result is not an antichain: " + to_string(r.elems_[a]) +
                                                " <= " + to_string(r.elems_[b]));
        return r;
    }

    static ResultSet top() { return ResultSet({DomainElement::top()}); }
    static ResultSet bot() { return ResultSet({DomainElement::bot()}); }

    std::span<const DomainElement> elements() const { return elems_; }
    std::size_t size() const { return elems_.size(); }
    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }

    bool is_top() const { return elems_.size() == 1 && elems_.front().is_top(); }
    bool is_bot() const { return elems_.size() == 1 && elems_.front().is_bot(); }

    auto operator<=>(const ResultSet&) const = default;

private:
    explicit ResultSet(std::vector<DomainElement> ds) : elems_(std::move(ds))
    {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    }

    std::vector<DomainElement> elems_;
};

inline ResultSet minimal_elements(std::span<const DomainElement> ds)
{
    return ResultSet::minimal_elements(ds);
}

inline std::string to_string(const ResultSet& r)
{
    std::string s = "{";
    for (std::size_t k = 0; k < r.size(); ++k) {
        if (k)
            s += ",";
        s += to_string(r.elements()[k]);
    }
    return s + "}";
}

inline std::ostream& operator<<(std::ostream& os, const ResultSet& r) { return os << to_string(r); }
inline std::ostream& operator<<(std::ostream& os, const DomainElement& d) { return os << to_string(d); }

/// Result order (upper preorder restricted to results, a partial order).
inline bool leq_upper(const ResultSet& r1, const ResultSet& r2)
{
    return leq_upper(r1.elements(), r2.elements());
}

/// Maximal results under the result order, deduplicated, in canonical order.
inline std::vector<ResultSet> maximal_results(std::span<const ResultSet> s)
{
    if (s.empty())
        throw std::invalid_argument("maximal_results: empty input");
    std::vector<ResultSet> sorted(s.begin(), s.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<ResultSet> out;
    for (const auto& r : sorted) {
        bool dominated = std::any_of(sorted.begin(), sorted.end(), [&](const ResultSet& other) {
            return other != r && leq_upper(r, other);
        });
        if (!dominated)
            out.push_back(r);
    }
    return out;
}

/// Lower preorder on antichains of results.
inline bool leq_lower(std::span<const ResultSet> s1, std::span<const ResultSet> s2)
{
    return std::all_of(s1.begin(), s1.end(), [&](const ResultSet& r1) {
        return std::any_of(s2.begin(), s2.end(), [&](const ResultSet& r2) { return leq_upper(r1, r2); });
    });
}

/// Per-exit query value: a priority, or nullopt for bot.
using QueryValue = std::optional<Priority>;

/// Extended order on priorities plus bot: bot is least.
inline std::strong_ordering cmp_query_value(QueryValue a, QueryValue b)
{
    if (!a || !b)
        return a.has_value() <=> b.has_value();
    return cmp_subpriority(*a, *b);
}

/// Total map from exits to priority-or-bot, stored densely by exit position.
class Query {
public:
    Query() = default;
    Query(std::vector<ExitRef> exits, std::vector<QueryValue> values)
        : exits_(std::move(exits)), values_(std::move(values))
    {
        if (exits_.size() != values_.size())
            throw std::invalid_argument("query: exit and value counts differ");
    }

    static Query all_bot(std::vector<ExitRef> exits)
    {
        std::vector<QueryValue> values(exits.size());
        return Query(std::move(exits), std::move(values));
    }

    std::span<const ExitRef> exits() const { return exits_; }
    std::span<const QueryValue> values() const { return values_; }
    std::size_t size() const { return exits_.size(); }

    QueryValue operator[](ExitRef o) const
    {
        auto it = std::find(exits_.begin(), exits_.end(), o);
        if (it == exits_.end())
            throw std::out_of_range("query has no exit " + to_string(o));
        return values_[static_cast<std::size_t>(it - exits_.begin())];
    }

    bool operator==(const Query&) const = default;

private:
    std::vector<ExitRef> exits_;
    std::vector<QueryValue> values_;
};

/// "[out.r1=bot,out.r2=2]".
inline std::string to_string(const Query& q)
{
    std::string s = "[";
    for (std::size_t k = 0; k < q.size(); ++k) {
        if (k)
            s += ",";
        s += to_string(q.exits()[k]) + "=" + (q.values()[k] ? std::to_string(*q.values()[k]) : "bot");
    }
    return s + "]";
}

/// Query order; throws when the exit sets differ.
inline std::partial_ordering cmp_query(const Query& q1, const Query& q2)
{
    if (!std::equal(q1.exits().begin(), q1.exits().end(), q2.exits().begin(), q2.exits().end()))
        throw std::invalid_argument("cmp_query: queries range over different exits");
    bool any_less = false;
    bool any_greater = false;
    for (std::size_t k = 0; k < q1.size(); ++k) {
        auto c = cmp_query_value(q1.values()[k], q2.values()[k]);
        any_less |= c < 0;
        any_greater |= c > 0;
    }
    if (any_less && any_greater)
        return std::partial_ordering::unordered;
    if (any_less)
        return std::partial_ordering::less;
    if (any_greater)
        return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

/// The result a query certifies when its loop game is won.
inline ResultSet dual_query(const Query& q)
{
    std::vector<DomainElement> out;
    for (std::size_t k = 0; k < q.size(); ++k)
        if (auto v = q.values()[k])
            out.push_back(DomainElement::at(q.exits()[k], dual_priority(*v)));
    if (out.empty())
        return ResultSet::top();
    return ResultSet::from_antichain(std::move(out));
}

/// Inverse of dual_query. Results mentioning bot have no preimage.
inline Query query_from_result(const ResultSet& r, std::span<const ExitRef> exits)
{
    std::vector<ExitRef> ex(exits.begin(), exits.end());
    if (r.is_top())
        return Query::all_bot(std::move(ex));
    std::vector<QueryValue> values(ex.size());
    for (const auto& d : r) {
        if (!d.is_exit())
            throw std::invalid_argument("query_from_result: " + to_string(r) + " is not the dual of a query");
        auto it = std::find(ex.begin(), ex.end(), d.exit());
        if (it == ex.end())
            throw std::invalid_argument("query_from_result: unknown exit " + to_string(d.exit()));
        // dual_priority is an involution on priorities, with 0 fixed.
        values[static_cast<std::size_t>(it - ex.begin())] = dual_priority(d.priority());
    }
    return Query(std::move(ex), std::move(values));
}

} // namespace opg
