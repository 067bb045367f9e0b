// Sweep of the guaranteed monochromatic-triangle count over complete hosts:
// exact minima, the resulting robustness values, and the upper-bound
// constants they induce.

#include <cstdio>

#include "blowram/bounds.hpp"
#include "blowram/search.hpp"

using namespace blowram;

int main() {
    const Graph k3 = Graph::complete(3);
    std::printf("%4s %8s %8s %12s %16s\n", "n", "copies", "min", "robustness", "ln c");
    for (int n = 3; n <= 7; ++n) {
        const Graph host = Graph::complete(n);
        RobustnessResult rob = robustness(host, k3, 2);
        std::string ln_c = "-";
        if (rob.value > 0)
            ln_c = rat_to_string(
                upper_constant_from(rob.value, k3.vertex_count(), k3.edge_count(), 2).ln_c);
        std::printf("%4d %8lld %8lld %12s %16s\n", n, rob.mult_1, rob.mult_r,
                    rat_to_string(rob.value).c_str(), ln_c.c_str());
    }
    return 0;
}
