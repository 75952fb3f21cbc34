#include "betaot/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <sstream>

#include "betaot/errors.hpp"

namespace betaot {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Successive shortest paths on the bipartite transport network with integer
// supplies: every source ships n units, every sink takes m units, so the
// flow divided by m*n is a coupling with marginals 1/m and 1/n.
Matrix transport_flow(const Matrix& c) {
  const std::size_t m = c.rows(), n = c.cols();
  const std::size_t src = m + n, snk = m + n + 1, nodes = m + n + 2;
  const auto supply = static_cast<std::int64_t>(n), demand = static_cast<std::int64_t>(m);

  std::vector<std::int64_t> flow(m * n, 0), out(m, 0), in(n, 0);
  std::vector<double> pot(nodes, 0.0), dist(nodes);
  std::vector<std::size_t> prev(nodes);
  std::vector<char> done(nodes);

  for (std::size_t j = 0; j < n; ++j) {
    double lo = kInf;
    for (std::size_t i = 0; i < m; ++i) lo = std::min(lo, c(i, j));
    pot[m + j] = lo;
  }
  pot[snk] = *std::min_element(pot.begin() + m, pot.begin() + m + n);

  std::int64_t shipped = 0;
  const std::int64_t total = supply * static_cast<std::int64_t>(m);
  while (shipped < total) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(done.begin(), done.end(), 0);
    dist[src] = 0.0;
    auto relax = [&](std::size_t u, std::size_t v, double cost) {
      const double nd = dist[u] + std::max(0.0, cost + pot[u] - pot[v]);
      if (nd < dist[v]) {
        dist[v] = nd;
        prev[v] = u;
      }
    };
    for (;;) {
      std::size_t u = nodes;
      for (std::size_t v = 0; v < nodes; ++v)
        if (!done[v] && dist[v] < kInf && (u == nodes || dist[v] < dist[u])) u = v;
      if (u == nodes) break;
      done[u] = 1;
      if (u == src) {
        for (std::size_t i = 0; i < m; ++i)
          if (out[i] < supply) relax(u, i, 0.0);
      } else if (u < m) {
        for (std::size_t j = 0; j < n; ++j) relax(u, m + j, c(u, j));
        if (out[u] > 0) relax(u, src, 0.0);
      } else if (u < m + n) {
        const std::size_t j = u - m;
        for (std::size_t i = 0; i < m; ++i)
          if (flow[i * n + j] > 0) relax(u, i, -c(i, j));
        if (in[j] < demand) relax(u, snk, 0.0);
      } else if (u == snk) {
        for (std::size_t j = 0; j < n; ++j)
          if (in[j] > 0) relax(u, m + j, 0.0);
      }
    }
    if (!(dist[snk] < kInf)) throw NumericalError("exact_ot: transport network disconnected");
    for (std::size_t v = 0; v < nodes; ++v) pot[v] += std::min(dist[v], dist[snk]);

    // Bottleneck along the path, then push.
    std::int64_t push = std::numeric_limits<std::int64_t>::max();
    for (std::size_t v = snk; v != src; v = prev[v]) {
      const std::size_t u = prev[v];
      if (u == src) push = std::min(push, supply - out[v]);
      else if (v == snk) push = std::min(push, demand - in[u - m]);
      else if (u >= m && v < m) push = std::min(push, flow[v * n + (u - m)]);
    }
    for (std::size_t v = snk; v != src; v = prev[v]) {
      const std::size_t u = prev[v];
      if (u == src) out[v] += push;
      else if (v == snk) in[u - m] += push;
      else if (u < m && v >= m) flow[u * n + (v - m)] += push;
      else flow[v * n + (u - m)] -= push;
    }
    shipped += push;
  }

  Matrix plan(m, n);
  const double scale = 1.0 / static_cast<double>(total);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) plan(i, j) = static_cast<double>(flow[i * n + j]) * scale;
  return plan;
}

}  // namespace

Assignment linear_assignment(const Matrix& cost) {
  const std::size_t n = cost.rows();
  if (cost.cols() != n) throw InputError("linear_assignment: cost matrix must be square");
  // 1-based potentials; p[j] is the row matched to column j, 0 = free.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  Assignment a;
  a.col_of_row.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) a.col_of_row[p[j] - 1] = j - 1;
  for (std::size_t i = 0; i < n; ++i) a.cost += cost(i, a.col_of_row[i]);
  return a;
}

ExactSolution exact_ot(const CostMatrix& cost) {
  const std::size_t m = cost.rows(), n = cost.cols();
  if (m == 0 || n == 0) throw InputError("exact_ot: empty cost matrix");
  if (m * n > kExactOtMaxEntries) {
    std::ostringstream os;
    os << "exact_ot: " << m << " x " << n << " exceeds the oracle limit of " << kExactOtMaxEntries
       << " entries";
    throw InputError(os.str());
  }
  ExactSolution sol;
  if (m == n) {
    const Assignment a = linear_assignment(cost.gamma());
    sol.plan = Matrix(n, n);
    const double w = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) sol.plan(i, a.col_of_row[i]) = w;
  } else {
    sol.plan = transport_flow(cost.gamma());
  }
  double s = 0.0;
  const auto p = sol.plan.values();
  const auto g = cost.gamma().values();
  for (std::size_t k = 0; k < p.size(); ++k) s += p[k] * g[k];
  sol.value = s;
  return sol;
}

}  // namespace betaot
