#include "ams/markov.hpp"

#include <algorithm>
#include <functional>

#include "ams/errors.hpp"

namespace ams {

bool structurally_positive(const Scalar& x) {
  if (x.exact()) return sgn(x.rational()) > 0;
  return x.to_double() > 0.0;
}

Adjacency support_graph(const Matrix& p) {
  Adjacency adj(p.rows());
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (structurally_positive(p(i, j))) adj[i].push_back(j);
    }
  }
  return adj;
}

std::vector<std::vector<std::size_t>> strongly_connected_components(const Adjacency& adj) {
  const std::size_t n = adj.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  std::size_t counter = 0;

  // Iterative Tarjan: frames hold (vertex, next edge position).
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < adj[v].size()) {
        std::size_t w = adj[v][pos++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) {
        std::size_t parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != done);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

void require_stochastic(const Matrix& p) {
  if (!p.square()) throw InvariantViolation("transition matrix is not square");
  if (!is_row_stochastic(p)) throw InvariantViolation("transition matrix is not row-stochastic");
}

bool ClassDecomposition::is_closed_state(std::size_t s) const {
  return std::binary_search(closed.begin(), closed.end(), scc_of[s]);
}

ClassDecomposition decompose(const Matrix& p) {
  require_stochastic(p);
  const std::size_t n = p.rows();
  ClassDecomposition d;
  Adjacency adj = support_graph(p);
  d.sccs = strongly_connected_components(adj);
  d.scc_of.assign(n, 0);
  for (std::size_t c = 0; c < d.sccs.size(); ++c) {
    for (std::size_t s : d.sccs[c]) d.scc_of[s] = c;
  }
  for (std::size_t c = 0; c < d.sccs.size(); ++c) {
    bool closed = true;
    for (std::size_t s : d.sccs[c]) {
      for (std::size_t t : adj[s]) closed = closed && d.scc_of[t] == c;
    }
    if (closed) d.closed.push_back(c);
  }

  // Stationary law of each closed class: pi (P_CC - I) = 0 with one equation
  // swapped for the normalization.
  for (std::size_t c : d.closed) {
    const auto& members = d.sccs[c];
    const std::size_t m = members.size();
    Matrix a(m, m);
    Vector b(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        a(i, j) = p(members[j], members[i]);
        if (i == j) a(i, j) -= Scalar(1);
      }
    }
    for (std::size_t j = 0; j < m; ++j) a(m - 1, j) = 1;
    b[m - 1] = 1;
    Vector pi = solve(a, b);
    Vector full(n);
    for (std::size_t i = 0; i < m; ++i) full[members[i]] = pi[i];
    d.classdist.push_back(std::move(full));
  }

  const std::size_t k = d.closed.size();
  d.absorb = Matrix(n, k);
  std::vector<std::size_t> transient;
  std::vector<std::size_t> closed_slot(d.sccs.size(), k);
  for (std::size_t c = 0; c < k; ++c) closed_slot[d.closed[c]] = c;
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t slot = closed_slot[d.scc_of[s]];
    if (slot == k) {
      transient.push_back(s);
    } else {
      d.absorb(s, slot) = 1;
    }
  }
  if (!transient.empty()) {
    // (I - P_TT) H = P_TC 1
    const std::size_t t = transient.size();
    Matrix a(t, t);
    Matrix rhs(t, k);
    for (std::size_t i = 0; i < t; ++i) {
      for (std::size_t j = 0; j < t; ++j) {
        a(i, j) = -p(transient[i], transient[j]);
        if (i == j) a(i, j) += Scalar(1);
      }
      for (std::size_t s = 0; s < n; ++s) {
        std::size_t slot = closed_slot[d.scc_of[s]];
        if (slot != k) rhs(i, slot) += p(transient[i], s);
      }
    }
    Matrix h = solve(a, rhs);
    for (std::size_t i = 0; i < t; ++i) {
      for (std::size_t c = 0; c < k; ++c) d.absorb(transient[i], c) = h(i, c);
    }
  }
  return d;
}

Matrix cesaro_limit(const ClassDecomposition& d, std::size_t n) {
  Matrix pi(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < d.closed.size(); ++c) {
      const Scalar& h = d.absorb(i, c);
      if (h.exact() && sgn(h.rational()) == 0) continue;
      for (std::size_t s : d.sccs[d.closed[c]]) pi(i, s) += h * d.classdist[c][s];
    }
  }
  return pi;
}

Matrix cesaro_limit(const Matrix& p) { return cesaro_limit(decompose(p), p.rows()); }

}  // namespace ams
