// Two parties: every Bell inequality, which ones are trivial, and which vertices saturate them.

#include <cstdio>

#include "belltomo/belltomo.hpp"

using namespace belltomo;

int main() {
  const int n = 2;
  const auto vertices = classical_vertices(n);
  std::printf("%-5s %-16s %-16s %s\n", "k", "c", "a", "tight vertices");
  for (const BellInequality& b : all_inequalities(n)) {
    char c[32] = {}, a[32] = {};
    int pc = 0, pa = 0;
    for (int v : b.c) pc += std::snprintf(c + pc, sizeof c - pc, "%+d ", v);
    for (int v : b.a) pa += std::snprintf(a + pa, sizeof a - pa, "%+d ", v);
    int tight = 0;
    for (const auto& v : vertices) {
      const CorrelationVector e(n, std::vector<double>(v.begin(), v.end()));
      if (margin(e, b) == 0.0) ++tight;
    }
    std::printf("%-5llu %-16s %-16s %d%s\n", static_cast<unsigned long long>(b.index), c, a, tight,
                b.trivial ? "  (trivial)" : "");
  }
  return 0;
}
