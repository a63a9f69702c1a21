#pragma once

// Ground-truth checkers for the structural facts the reconstructor relies
// on. Everything here sees the real graph and uses brute force plus exact
// rational arithmetic — no sampling, no floating-point comparisons — so a
// failure is a genuine counterexample, not noise. Used by tests, the
// acceptance suite, and the `check` CLI subcommand.

#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "oracle.hpp"
#include "reconstruct.hpp"
#include "tree_decomposition.hpp"

namespace tlrecon {

// exact fraction with cross-multiplied comparisons (no overflow at our sizes)
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

struct PropertyReport {
    std::string property;
    long long instances_checked = 0;
    // (instance descriptor, counterexample) pairs
    std::vector<std::pair<std::string, std::string>> failures;

    bool ok() const { return failures.empty(); }

    void absorb(const PropertyReport& other) {
        instances_checked += other.instances_checked;
        failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    }
};

// fraction of two-element pairs {a,b} of A such that v lies on some
// shortest a-b path (endpoints count as on the path)
inline Rational exact_betweenness(const Graph& g, const VertexSet& a, Vertex v) {
    if (a.size() < 2) throw std::invalid_argument("exact_betweenness: need |A| >= 2");
    if (!g.is_connected()) throw std::invalid_argument("exact_betweenness: graph must be connected");
    std::vector<int> dv = bfs_vector(g, v);
    std::vector<std::vector<int>> rows(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) rows[i] = bfs_vector(g, a[i]);
    long long hits = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            int dab = rows[i][static_cast<std::size_t>(a[j])];
            if (dv[static_cast<std::size_t>(a[i])] + dv[static_cast<std::size_t>(a[j])] == dab)
                ++hits;
        }
    long long pairs = static_cast<long long>(a.size()) * (static_cast<long long>(a.size()) - 1) / 2;
    return {hits, pairs};
}

// exact boundary layers around a: layers[i-1] = vertices at distance i,
// for i in [1, 3k]; the reference construction tests compare against
inline RecursionState exact_state(const Graph& g, const VertexSet& a, int k) {
    if (k < 1) throw std::invalid_argument("exact_state: need k >= 1");
    RecursionState st;
    st.a = a;
    st.layers.assign(static_cast<std::size_t>(3 * k), {});
    std::vector<int> dist = bfs_multi_vector(g, a, -1);
    for (Vertex v = 0; v < g.n(); ++v) {
        int d = dist[static_cast<std::size_t>(v)];
        if (d >= 1 && d <= 3 * k) st.layers[static_cast<std::size_t>(d - 1)].push_back(v);
    }
    return st;
}

namespace detail {

inline long long pow_ll(int base, int exp) {
    long long p = 1;
    for (int i = 0; i < exp; ++i) {
        p *= base;
        if (p > (1LL << 40)) throw std::overflow_error("pow_ll: exponent too large for checks");
    }
    return p;
}

inline std::string set_str(const VertexSet& s) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << "}";
    return os.str();
}

}  // namespace detail

// Some vertex of the whole graph has betweenness at least 1/(2(delta^k+1))
// when treelength <= k and max degree <= delta. Witness certifies the
// treelength hypothesis; comparison is exact.
inline PropertyReport check_betweenness_bound(const Graph& g, const TreeDecomposition& witness,
                                              int k, int delta) {
    ValidityReport vr = validate_decomposition(g, witness);
    if (!vr.ok()) throw std::invalid_argument("check_betweenness_bound: invalid witness");
    if (decomposition_length(g, witness) > k)
        throw std::invalid_argument("check_betweenness_bound: witness longer than k");
    PropertyReport rep{"betweenness-bound", 1, {}};
    if (g.n() < 2) return rep;  // no pairs to speak of
    VertexSet all = range_set(g.n());
    Rational best(0, 1);
    for (Vertex v = 0; v < g.n(); ++v) {
        Rational b = exact_betweenness(g, all, v);
        if (best < b) best = b;
    }
    Rational bound(1, 2 * (detail::pow_ll(delta, k) + 1));
    if (best < bound)
        rep.failures.emplace_back("n=" + std::to_string(g.n()),
                                  "max betweenness " + best.str() + " < bound " + bound.str());
    return rep;
}

// Every shortest path between vertices of a connected set A stays within
// distance floor(3k/2) of A. Checked in contrapositive: any z farther out
// strictly lengthens every a-b route through it.
inline PropertyReport check_path_confinement(const Graph& g, int k, const VertexSet& a) {
    if (connected_components(g, a).size() != 1)
        throw std::invalid_argument("check_path_confinement: A must induce a connected subgraph");
    PropertyReport rep{"path-confinement", 0, {}};
    const int half = (3 * k) / 2;
    std::vector<int> to_a = bfs_multi_vector(g, a, -1);
    std::vector<std::vector<int>> rows(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) rows[i] = bfs_vector(g, a[i]);
    for (Vertex z = 0; z < g.n(); ++z) {
        if (to_a[static_cast<std::size_t>(z)] <= half) continue;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = i + 1; j < a.size(); ++j) {
                ++rep.instances_checked;
                int through = rows[i][static_cast<std::size_t>(z)] +
                              rows[j][static_cast<std::size_t>(z)];
                int direct = rows[i][static_cast<std::size_t>(a[j])];
                if (through <= direct)
                    rep.failures.emplace_back(
                        "A=" + detail::set_str(a),
                        "z=" + std::to_string(z) + " a=" + std::to_string(a[i]) +
                            " b=" + std::to_string(a[j]) + " detour " + std::to_string(through) +
                            " <= direct " + std::to_string(direct));
            }
    }
    return rep;
}

// true iff every component of g[A∖S] has size <= beta * |A|
inline bool separator_balanced_check(const Graph& g, const VertexSet& a, const VertexSet& s,
                                     double beta) {
    for (const VertexSet& block : connected_components(g, difference_sets(a, s)))
        if (static_cast<double>(block.size()) > beta * static_cast<double>(a.size()))
            return false;
    return true;
}

// Every candidate center z near A whose exact betweenness reaches half the
// domain maximum yields a balanced ball separator: components of A minus
// the radius-floor(3k/2) ball around z stay below alpha(delta,k) * |A|.
// The balance inequality is checked in integers: alpha^2 = (4q-1)/(4q)
// with q = delta^k + 1, so size <= alpha|A| iff 4q * size^2 <= (4q-1)|A|^2.
inline PropertyReport check_ball_separator(const Graph& g, const TreeDecomposition& witness,
                                           int k, int delta, const VertexSet& a) {
    ValidityReport vr = validate_decomposition(g, witness);
    if (!vr.ok()) throw std::invalid_argument("check_ball_separator: invalid witness");
    if (decomposition_length(g, witness) > k)
        throw std::invalid_argument("check_ball_separator: witness longer than k");
    if (connected_components(g, a).size() != 1)
        throw std::invalid_argument("check_ball_separator: A must induce a connected subgraph");
    PropertyReport rep{"ball-separator", 0, {}};
    if (a.size() < 2) return rep;

    const int half = (3 * k) / 2;
    const VertexSet near = neighborhood_closed(g, a, k);
    const VertexSet domain = neighborhood_closed(g, a, half);
    Rational p(0, 1);
    for (Vertex v : near) {
        Rational b = exact_betweenness(g, a, v);
        if (p < b) p = b;
    }
    const long long q = detail::pow_ll(delta, k) + 1;
    for (Vertex z : domain) {
        Rational pz = exact_betweenness(g, a, z);
        if (Rational(2 * pz.num, pz.den) < p) continue;  // below p/2
        ++rep.instances_checked;
        VertexSet ball = neighborhood_closed(g, {z}, half);
        for (const VertexSet& block : connected_components(g, difference_sets(a, ball))) {
            __int128 lhs = static_cast<__int128>(4 * q) *
                           static_cast<__int128>(block.size()) *
                           static_cast<__int128>(block.size());
            __int128 rhs = static_cast<__int128>(4 * q - 1) *
                           static_cast<__int128>(a.size()) * static_cast<__int128>(a.size());
            if (lhs > rhs)
                rep.failures.emplace_back(
                    "A=" + detail::set_str(a),
                    "z=" + std::to_string(z) + " component size " +
                        std::to_string(block.size()) + " exceeds alpha*" +
                        std::to_string(a.size()));
        }
    }
    return rep;
}

// Some bag of a valid decomposition halves A: all components of g[A∖bag]
// have size <= |A|/2. Cross-checks the exhaustive search and the balance
// predicate against each other.
inline PropertyReport check_bag_separator(const Graph& g, const TreeDecomposition& witness,
                                          const VertexSet& a) {
    PropertyReport rep{"bag-separator", 1, {}};
    int node = -1;
    try {
        node = bag_half_separator(g, witness, a);
    } catch (const std::logic_error& e) {
        rep.failures.emplace_back("A=" + detail::set_str(a), e.what());
        return rep;
    }
    const VertexSet& bag = witness.bags[static_cast<std::size_t>(node)];
    if (!separator_balanced_check(g, a, bag, 0.5))
        rep.failures.emplace_back("A=" + detail::set_str(a),
                                  "bag node " + std::to_string(node) +
                                      " fails the half-balance recheck");
    return rep;
}

// The query-driven component split agrees with the real component structure:
// build the exact state for A, take the ball separator around z, and compare
// partition_components against ground-truth connected components of A∖S.
inline PropertyReport check_partition_equivalence(const Graph& g, int k, const VertexSet& a,
                                                  Vertex z) {
    PropertyReport rep{"partition-equivalence", 1, {}};
    RecursionState st = exact_state(g, a, k);
    CountingOracle oracle(g, static_cast<std::uint64_t>(g.n()) * static_cast<std::uint64_t>(g.n()));
    VertexSet s = compute_separator(oracle, st, z);
    std::vector<VertexSet> got = partition_components(oracle, st, s);
    std::vector<VertexSet> want = connected_components(g, difference_sets(a, s));
    if (got != want) {
        std::ostringstream os;
        os << "query partition has " << got.size() << " blocks, truth has " << want.size();
        rep.failures.emplace_back("A=" + detail::set_str(a) + " z=" + std::to_string(z), os.str());
    }
    return rep;
}

}  // namespace tlrecon
