#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

#include "indexlab/graph.hpp"

namespace indexlab {

namespace detail {

// Edge slot index for i < j among the C(n,2) undirected pairs.
inline std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

}  // namespace detail

/// All isomorphism classes of undirected graphs on exactly n vertices
/// (n <= 7), one representative each, via canonical edge-mask minimization
/// over all vertex permutations. Counts: 1, 2, 4, 11, 34, 156, 1044.
inline std::vector<Graph> undirected_graph_classes(std::size_t n) {
    if (n == 0 || n > 7) throw CapExceeded("undirected_graph_classes: n must be 1..7");
    std::size_t m = n * (n - 1) / 2;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    // for each permutation, where each edge slot goes
    std::vector<std::vector<std::uint8_t>> remap;
    do {
        std::vector<std::uint8_t> map(m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                map[detail::pair_index(i, j, n)] =
                    static_cast<std::uint8_t>(detail::pair_index(perm[i], perm[j], n));
        remap.push_back(std::move(map));
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<std::uint32_t> canon;
    std::vector<bool> seen(std::size_t{1} << m, false);
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
        if (seen[mask]) continue;
        std::uint32_t best = mask;
        for (const auto& map : remap) {
            std::uint32_t img = 0;
            std::uint32_t rest = mask;
            while (rest != 0) {
                unsigned b = static_cast<unsigned>(std::countr_zero(rest));
                rest &= rest - 1;
                img |= (std::uint32_t{1} << map[b]);
            }
            seen[img] = true;
            best = std::min(best, img);
        }
        canon.push_back(best);
    }
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());

    std::vector<Graph> out;
    out.reserve(canon.size());
    for (std::uint32_t mask : canon) {
        Graph g(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if ((mask >> detail::pair_index(i, j, n)) & 1) g.add_undirected_edge(i, j);
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace indexlab
