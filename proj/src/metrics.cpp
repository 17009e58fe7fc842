#include "scord/metrics.hpp"

#include <set>
#include <stdexcept>

namespace scord {

int shd(const CausalGraph& est, const Dag& truth) {
  if (est.d != truth.d) throw std::invalid_argument("shd: graphs differ in node count");
  std::set<std::pair<int, int>> e(est.edges.begin(), est.edges.end());
  std::set<std::pair<int, int>> t(truth.edges.begin(), truth.edges.end());
  int dist = 0;
  for (int i = 0; i < truth.d; ++i) {
    for (int j = i + 1; j < truth.d; ++j) {
      const int e_state = e.count({i, j}) ? 1 : (e.count({j, i}) ? 2 : 0);
      const int t_state = t.count({i, j}) ? 1 : (t.count({j, i}) ? 2 : 0);
      if (e_state != t_state) ++dist;
    }
  }
  return dist;
}

}  // namespace scord
