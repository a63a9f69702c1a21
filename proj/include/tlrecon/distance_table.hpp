#pragma once

// Symmetric distance lookups keyed by unordered vertex pairs. Batch
// queries against the oracle return one of these; the reconstruction
// steps then read distances out of it without touching the oracle again.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "graph.hpp"

namespace tlrecon {

// Packs an unordered vertex pair into one 64-bit key.
inline std::uint64_t pair_key(Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

class DistanceTable {
public:
    // Stores d(u,v). Distances are hop counts: nonnegative, zero iff u == v.
    void set(Vertex u, Vertex v, int d) {
        if (d < 0) throw std::invalid_argument("DistanceTable: negative distance");
        if ((u == v) != (d == 0))
            throw std::invalid_argument("DistanceTable: zero distance iff equal endpoints");
        d_[pair_key(u, v)] = d;
    }

    bool contains(Vertex u, Vertex v) const { return d_.count(pair_key(u, v)) != 0; }

    int at(Vertex u, Vertex v) const {
        auto it = d_.find(pair_key(u, v));
        if (it == d_.end())
            throw std::out_of_range("DistanceTable: pair (" + std::to_string(u) + "," +
                                    std::to_string(v) + ") not recorded");
        return it->second;
    }

    std::size_t size() const { return d_.size(); }

    bool empty() const { return d_.empty(); }

    // Absorbs all entries of another table (overlaps must agree; they do by
    // construction because every entry comes from the same oracle).
    void merge(const DistanceTable& other) {
        for (const auto& [key, dist] : other.d_) d_[key] = dist;
    }

private:
    std::unordered_map<std::uint64_t, int> d_;
};

}  // namespace tlrecon
