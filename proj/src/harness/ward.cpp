#include <limits>
#include <numeric>

#include "ustat/harness.hpp"

namespace ustat {

namespace {

struct WardState {
    std::size_t dim;
    std::vector<double> centroid;  // slot-major
    std::vector<double> size;
    std::vector<bool> active;

    double cost(std::size_t a, std::size_t b) const {
        double d2 = 0.0;
        const double* ca = centroid.data() + a * dim;
        const double* cb = centroid.data() + b * dim;
        for (std::size_t t = 0; t < dim; ++t) {
            const double d = ca[t] - cb[t];
            d2 += d * d;
        }
        return size[a] * size[b] / (size[a] + size[b]) * d2;
    }
};

std::uint32_t find_root(std::vector<std::uint32_t>& parent, std::uint32_t x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

Partition snapshot(std::vector<std::uint32_t>& parent, std::uint32_t clusters) {
    const std::size_t n = parent.size();
    std::vector<std::uint32_t> id(n, std::numeric_limits<std::uint32_t>::max());
    std::vector<std::uint32_t> labels(n);
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = find_root(parent, static_cast<std::uint32_t>(i));
        if (id[r] == std::numeric_limits<std::uint32_t>::max()) id[r] = next++;
        labels[i] = id[r];
    }
    return Partition(std::move(labels), clusters);
}

}  // namespace

NestedPartitions agglomerative_ward(const Sample& sample, std::size_t max_models) {
    const std::size_t n = sample.size();
    require(n >= 2, ErrorCode::InvalidArgument, "agglomerative clustering needs at least two points");
    if (max_models == 0 || max_models > n) max_models = n;

    WardState st{sample.dim(), sample.values(), std::vector<double>(n, 1.0), std::vector<bool>(n, true)};
    std::vector<std::size_t> nn(n);
    std::vector<double> nn_cost(n);
    auto refresh = [&](std::size_t a) {
        nn_cost[a] = std::numeric_limits<double>::infinity();
        nn[a] = a;
        for (std::size_t b = 0; b < n; ++b) {
            if (b == a || !st.active[b]) continue;
            const double c = st.cost(a, b);
            if (c < nn_cost[a]) {
                nn_cost[a] = c;
                nn[a] = b;
            }
        }
    };
    for (std::size_t a = 0; a < n; ++a) refresh(a);

    std::vector<std::pair<std::uint32_t, std::uint32_t>> merges;
    merges.reserve(n - 1);
    for (std::size_t step = 0; step + 1 < n; ++step) {
        std::size_t best_i = n, best_j = n;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < n; ++a) {
            if (!st.active[a]) continue;
            const std::size_t lo = std::min(a, nn[a]);
            const std::size_t hi = std::max(a, nn[a]);
            if (nn_cost[a] < best || (nn_cost[a] == best && std::pair(lo, hi) < std::pair(best_i, best_j))) {
                best = nn_cost[a];
                best_i = lo;
                best_j = hi;
            }
        }
        const std::size_t i = best_i, j = best_j;
        merges.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));

        const double total = st.size[i] + st.size[j];
        for (std::size_t t = 0; t < st.dim; ++t) {
            st.centroid[i * st.dim + t] =
                (st.size[i] * st.centroid[i * st.dim + t] + st.size[j] * st.centroid[j * st.dim + t]) / total;
        }
        st.size[i] = total;
        st.active[j] = false;

        refresh(i);
        for (std::size_t k = 0; k < n; ++k) {
            if (!st.active[k] || k == i) continue;
            if (nn[k] == i || nn[k] == j) {
                refresh(k);
                continue;
            }
            const double c = st.cost(k, i);
            if (c < nn_cost[k] || (c == nn_cost[k] && i < nn[k])) {
                nn_cost[k] = c;
                nn[k] = i;
            }
        }
    }

    NestedPartitions out(max_models);
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0u);
    std::size_t clusters = n;
    std::size_t done = 0;
    auto apply = [&](const std::pair<std::uint32_t, std::uint32_t>& m) {
        const auto a = find_root(parent, m.first);
        const auto b = find_root(parent, m.second);
        parent[std::max(a, b)] = std::min(a, b);
        --clusters;
    };
    while (clusters > max_models) apply(merges[done++]);
    while (true) {
        out[clusters - 1] = snapshot(parent, static_cast<std::uint32_t>(clusters));
        if (clusters == 1) break;
        apply(merges[done++]);
    }
    return out;
}

}  // namespace ustat
