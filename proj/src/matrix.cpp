#include "amot/matrix.hpp"

namespace amot {

std::vector<std::vector<int>> subsets(int n, int d) {
    std::vector<std::vector<int>> out;
    if (d < 0 || d > n) return out;
    std::vector<int> cur(d);
    for (int i = 0; i < d; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = d - 1;
        while (i >= 0 && cur[i] == n - d + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < d; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

}  // namespace amot
