#include "ams/source.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <mutex>
#include <set>
#include <unordered_map>

#include "ams/errors.hpp"
#include "ams/pattern.hpp"

namespace ams {

struct FsmSource::Cache {
  std::once_flag once;
  ClassDecomposition decomposition;
  Matrix cesaro;
};

FsmSource::FsmSource(Alphabet alphabet, std::vector<Symbol> labels, Vector init, Matrix trans,
                     std::vector<std::string> state_names)
    : alphabet_(std::move(alphabet)),
      labels_(std::move(labels)),
      init_(std::move(init)),
      trans_(std::move(trans)),
      names_(std::move(state_names)),
      cache_(std::make_shared<Cache>()) {
  const std::size_t n = labels_.size();
  if (n == 0) throw InvariantViolation("source needs at least one state");
  if (init_.size() != n || trans_.rows() != n || trans_.cols() != n) {
    throw InvariantViolation("source state count mismatch");
  }
  for (Symbol a : labels_) {
    if (a >= alphabet_.size()) throw AlphabetMismatch("state label outside the alphabet");
  }
  if (!is_probability_vector(init_)) throw InvariantViolation("initial law is not a distribution");
  require_stochastic(trans_);
  if (names_.empty()) {
    for (std::size_t s = 0; s < n; ++s) names_.push_back("s" + std::to_string(s));
  }
  if (names_.size() != n) throw InvariantViolation("state name count mismatch");
}

bool FsmSource::exact() const { return all_exact(init_) && trans_.exact(); }

const ClassDecomposition& FsmSource::decomposition() const {
  std::call_once(cache_->once, [this] {
    cache_->decomposition = decompose(trans_);
    cache_->cesaro = cesaro_limit(cache_->decomposition, num_states());
  });
  return cache_->decomposition;
}

const Matrix& FsmSource::cesaro() const {
  decomposition();
  return cache_->cesaro;
}

FsmSource FsmSource::with_init(Vector init) const {
  FsmSource out(*this);
  if (init.size() != num_states() || !is_probability_vector(init)) {
    throw InvariantViolation("initial law is not a distribution");
  }
  out.init_ = std::move(init);
  return out;
}

FsmSource FsmSource::relabel(Alphabet alphabet, std::vector<Symbol> labels) const {
  return FsmSource(std::move(alphabet), std::move(labels), init_, trans_, names_);
}

FsmSource FsmSource::to_mode(Arith mode) const {
  return FsmSource(alphabet_, labels_, ams::to_mode(init_, mode), trans_.to_mode(mode), names_);
}

namespace {

Vector mask(const FsmSource& src, Vector v, Symbol a) {
  for (std::size_t s = 0; s < v.size(); ++s) {
    if (src.label(s) != a) v[s] = 0;
  }
  return v;
}

Vector advance(const FsmSource& src, const Vector& alpha, Symbol a) {
  return mask(src, alpha * src.trans(), a);
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Sums the mass of words[lo, hi), which share their first t symbols and
// have forward vector alpha after those symbols.
void accumulate(const FsmSource& src, const std::vector<const Word*>& words, std::size_t lo,
                std::size_t hi, std::size_t t, const Vector& alpha, Scalar& total) {
  if (t == words[lo]->size()) {
    total += sum(alpha);
    return;
  }
  std::size_t i = lo;
  while (i < hi) {
    Symbol a = (*words[i])[t];
    std::size_t j = i;
    while (j < hi && (*words[j])[t] == a) ++j;
    Vector next = t == 0 ? mask(src, src.init(), a) : advance(src, alpha, a);
    if (std::any_of(next.begin(), next.end(), structurally_positive)) {
      accumulate(src, words, i, j, t + 1, next, total);
    }
    i = j;
  }
}

}  // namespace

Vector forward(const FsmSource& src, const Word& w) {
  if (!src.alphabet().contains(w)) throw AlphabetMismatch("word outside the source alphabet");
  if (w.empty()) return src.init();
  Vector alpha = mask(src, src.init(), w[0]);
  for (std::size_t t = 1; t < w.size(); ++t) alpha = advance(src, alpha, w[t]);
  return alpha;
}

Scalar cyl_prob(const FsmSource& src, const Word& w) { return sum(forward(src, w)); }

Scalar event_prob(const FsmSource& src, const CylinderEvent& e) {
  require_same(src.alphabet(), e.alphabet(), "event_prob");
  Scalar total;
  if (e.is_empty()) return total;
  std::vector<const Word*> words;
  words.reserve(e.words().size());
  for (const auto& w : e.words()) words.push_back(&w);
  accumulate(src, words, 0, words.size(), 0, src.init(), total);
  return total;
}

FsmSource shifted_source(const FsmSource& src, std::size_t n) {
  Vector v = src.init();
  for (std::size_t k = 0; k < n; ++k) v = v * src.trans();
  return src.with_init(std::move(v));
}

FsmSource stationary_mean(const FsmSource& src) { return src.with_init(src.init() * src.cesaro()); }

// ---------------------------------------------------------------------------
// Measure equivalence

namespace {

// Incremental row-echelon basis. Rows are kept reduced against earlier pivots.
class Basis {
 public:
  explicit Basis(std::size_t dim) : dim_(dim) {}

  bool insert(Vector v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Scalar& c = v[pivots_[r]];
      if (c.is_zero()) continue;
      Scalar f = c / rows_[r][pivots_[r]];
      for (std::size_t j = 0; j < dim_; ++j) v[j] -= f * rows_[r][j];
    }
    std::size_t p = dim_;
    double best = 0;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (v[j].exact() ? sgn(v[j].rational()) != 0 : std::fabs(v[j].to_double()) > best) {
        if (v[j].exact()) {
          p = j;
          break;
        }
        best = std::fabs(v[j].to_double());
        p = j;
      }
    }
    if (p == dim_ || v[p].is_zero()) return false;
    pivots_.push_back(p);
    rows_.push_back(std::move(v));
    return true;
  }

 private:
  std::size_t dim_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

Equivalence are_equivalent(const FsmSource& a, const FsmSource& b) {
  require_same(a.alphabet(), b.alphabet(), "are_equivalent");
  const std::size_t n1 = a.num_states();
  const std::size_t n = n1 + b.num_states();
  const std::size_t sigma = a.alphabet().size();

  auto split = [&](const Vector& v) {
    return std::pair<Vector, Vector>{Vector(v.begin(), v.begin() + static_cast<long>(n1)),
                                     Vector(v.begin() + static_cast<long>(n1), v.end())};
  };
  auto join = [&](const Vector& x, const Vector& y) {
    Vector v = x;
    v.insert(v.end(), y.begin(), y.end());
    return v;
  };
  // beta(wa) = beta(w) D_a P, so that mu(w) = sum beta(w) for each half.
  auto step = [&](const Vector& v, Symbol s) {
    auto [x, y] = split(v);
    return join(mask(a, x, s) * a.trans(), mask(b, y, s) * b.trans());
  };
  auto gap = [&](const Vector& v) {
    auto [x, y] = split(v);
    return sum(x) - sum(y);
  };

  Basis basis(n);
  std::deque<std::pair<Word, Vector>> queue;
  Vector root = join(a.init(), b.init());
  basis.insert(root);
  queue.emplace_back(Word{}, std::move(root));
  while (!queue.empty()) {
    auto [w, v] = std::move(queue.front());
    queue.pop_front();
    for (Symbol s = 0; s < sigma; ++s) {
      Vector next = step(v, s);
      Word wn = w;
      wn.push_back(s);
      if (!gap(next).is_zero()) return {false, wn};
      if (basis.insert(next)) queue.emplace_back(std::move(wn), std::move(next));
    }
  }
  return {true, std::nullopt};
}

std::optional<Word> stationarity_witness(const FsmSource& src) {
  return are_equivalent(src, shifted_source(src, 1)).witness;
}

bool is_stationary(const FsmSource& src) { return !stationarity_witness(src).has_value(); }

// ---------------------------------------------------------------------------
// Recurrence

namespace {

// Product of the source chain with the pattern automaton of E, explored from
// the successors of the points (s, node(w)) at which a word of E has just been
// emitted. Match states are absorbing targets and are not expanded.
struct HittingProblem {
  struct Start {
    Scalar mass;
    std::size_t s;
    std::size_t node;
  };
  std::vector<Start> starts;
  std::unordered_map<std::size_t, std::size_t> id;  // s * |nodes| + node -> index
  std::vector<std::size_t> state_of, node_of;
  std::vector<bool> match;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> succ;
  std::vector<bool> one;   // hit probability is 1
  std::vector<bool> zero;  // the match set is unreachable
  std::size_t nodes = 0;

  HittingProblem(const FsmSource& src, const CylinderEvent& e) {
    PatternAutomaton ac(src.alphabet().size(), e.words());
    nodes = ac.size();
    const std::size_t n = src.num_states();
    for (const auto& w : e.words()) {
      Vector alpha = forward(src, w);
      std::size_t node = ac.run(w);
      for (std::size_t s = 0; s < n; ++s) {
        if (structurally_positive(alpha[s])) starts.push_back({alpha[s], s, node});
      }
    }
    std::deque<std::size_t> queue;
    auto visit = [&](std::size_t s, std::size_t node) {
      std::size_t key = s * nodes + node;
      auto [it, fresh] = id.emplace(key, state_of.size());
      if (fresh) {
        state_of.push_back(s);
        node_of.push_back(node);
        match.push_back(ac.accepting(node));
        succ.emplace_back();
        if (!ac.accepting(node)) queue.push_back(it->second);
      }
      return it->second;
    };
    auto successors = [&](std::size_t s, std::size_t node) {
      std::vector<std::pair<std::size_t, Scalar>> out;
      for (std::size_t t = 0; t < n; ++t) {
        const Scalar& p = src.trans()(s, t);
        if (structurally_positive(p)) out.emplace_back(visit(t, ac.next(node, src.label(t))), p);
      }
      return out;
    };
    start_succ.reserve(starts.size());
    for (const auto& st : starts) start_succ.push_back(successors(st.s, st.node));
    while (!queue.empty()) {
      std::size_t z = queue.front();
      queue.pop_front();
      auto out = successors(state_of[z], node_of[z]);
      succ[z] = std::move(out);
    }
    classify();
  }

  std::vector<std::vector<std::pair<std::size_t, Scalar>>> start_succ;

  void classify() {
    const std::size_t m = state_of.size();
    std::vector<std::vector<std::size_t>> pred(m);
    for (std::size_t z = 0; z < m; ++z) {
      for (const auto& [t, p] : succ[z]) pred[t].push_back(z);
    }
    // Which states can reach a match at all.
    std::vector<bool> reaches(m, false);
    std::deque<std::size_t> queue;
    for (std::size_t z = 0; z < m; ++z) {
      if (match[z]) {
        reaches[z] = true;
        queue.push_back(z);
      }
    }
    while (!queue.empty()) {
      std::size_t z = queue.front();
      queue.pop_front();
      for (std::size_t y : pred[z]) {
        if (!reaches[y]) {
          reaches[y] = true;
          queue.push_back(y);
        }
      }
    }
    zero.assign(m, false);
    // States that can slip into the never-match set without matching first.
    std::vector<bool> leaky(m, false);
    for (std::size_t z = 0; z < m; ++z) {
      if (!reaches[z]) {
        zero[z] = true;
        leaky[z] = true;
        queue.push_back(z);
      }
    }
    while (!queue.empty()) {
      std::size_t z = queue.front();
      queue.pop_front();
      for (std::size_t y : pred[z]) {
        if (!leaky[y] && !match[y]) {
          leaky[y] = true;
          queue.push_back(y);
        }
      }
    }
    one.assign(m, false);
    for (std::size_t z = 0; z < m; ++z) one[z] = !leaky[z];
  }

  // Hitting probabilities g(z), solving only on states with 0 < g < 1.
  Vector hitting() const {
    const std::size_t m = state_of.size();
    Vector g(m);
    std::vector<std::size_t> unknown;
    std::vector<std::size_t> slot(m, m);
    for (std::size_t z = 0; z < m; ++z) {
      if (one[z]) {
        g[z] = 1;
      } else if (!zero[z]) {
        slot[z] = unknown.size();
        unknown.push_back(z);
      }
    }
    if (unknown.empty()) return g;
    const std::size_t u = unknown.size();
    Matrix a = Matrix::identity(u);
    Vector rhs(u);
    for (std::size_t i = 0; i < u; ++i) {
      for (const auto& [t, p] : succ[unknown[i]]) {
        if (one[t]) {
          rhs[i] += p;
        } else if (slot[t] != m) {
          a(i, slot[t]) -= p;
        }
      }
    }
    Vector x = solve(a, rhs);
    for (std::size_t i = 0; i < u; ++i) g[unknown[i]] = x[i];
    return g;
  }
};

}  // namespace

Scalar recurrence_defect(const FsmSource& src, const CylinderEvent& e) {
  require_same(src.alphabet(), e.alphabet(), "recurrence_defect");
  Scalar defect;
  if (e.is_empty()) return defect;
  HittingProblem hp(src, e);
  Vector g = hp.hitting();
  for (std::size_t i = 0; i < hp.starts.size(); ++i) {
    Scalar h;
    for (const auto& [t, p] : hp.start_succ[i]) h += p * g[t];
    defect += hp.starts[i].mass * (Scalar(1) - h);
  }
  return defect;
}

bool recurrence_defect_is_zero(const FsmSource& src, const CylinderEvent& e) {
  require_same(src.alphabet(), e.alphabet(), "recurrence_defect");
  if (e.is_empty()) return true;
  HittingProblem hp(src, e);
  for (const auto& out : hp.start_succ) {
    for (const auto& [t, p] : out) {
      if (!hp.one[t]) return false;
    }
  }
  return true;
}

WordVerdict is_recurrent(const FsmSource& src, std::size_t depth) {
  if (depth == 0) throw InvariantViolation("recurrence depth must be >= 1");
  WordVerdict v{true, depth, std::nullopt};
  for (const auto& w : support(src, depth)) {
    if (!recurrence_defect_is_zero(src, CylinderEvent::singleton(src.alphabet(), w))) {
      v.holds = false;
      v.witness = w;
      break;
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Supports and domination

std::vector<Word> support_from(const FsmSource& src, const std::vector<bool>& start,
                               std::size_t depth) {
  const std::size_t n = src.num_states();
  const std::size_t sigma = src.alphabet().size();
  Adjacency adj = support_graph(src.trans());
  std::vector<Word> out;
  Word w;
  // DFS over (word, set of possible current states).
  std::function<void(const std::vector<bool>&)> grow = [&](const std::vector<bool>& cur) {
    if (w.size() == depth) return;
    std::vector<bool> reach(n, false);
    if (w.empty()) {
      reach = start;
    } else {
      for (std::size_t s = 0; s < n; ++s) {
        if (!cur[s]) continue;
        for (std::size_t t : adj[s]) reach[t] = true;
      }
    }
    for (Symbol a = 0; a < sigma; ++a) {
      std::vector<bool> next(n, false);
      bool any = false;
      for (std::size_t s = 0; s < n; ++s) {
        if (reach[s] && src.label(s) == a) next[s] = any = true;
      }
      if (!any) continue;
      w.push_back(a);
      out.push_back(w);
      grow(next);
      w.pop_back();
    }
  };
  grow(std::vector<bool>(n, false));
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

std::vector<Word> support(const FsmSource& src, std::size_t depth) {
  std::vector<bool> start(src.num_states());
  for (std::size_t s = 0; s < start.size(); ++s) start[s] = structurally_positive(src.init()[s]);
  return support_from(src, start, depth);
}

std::vector<Word> asymptotic_support(const FsmSource& src, std::size_t depth) {
  const std::size_t n = src.num_states();
  Adjacency adj = support_graph(src.trans());
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue;
  for (std::size_t s = 0; s < n; ++s) {
    if (structurally_positive(src.init()[s])) {
      seen[s] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    std::size_t s = queue.front();
    queue.pop_front();
    for (std::size_t t : adj[s]) {
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  const auto& d = src.decomposition();
  std::vector<bool> start(n, false);
  for (std::size_t s = 0; s < n; ++s) start[s] = seen[s] && d.is_closed_state(s);
  return support_from(src, start, depth);
}

namespace {

WordVerdict inclusion(const std::vector<Word>& sub, const std::vector<Word>& super,
                      std::size_t depth) {
  std::set<Word> allowed(super.begin(), super.end());
  for (const auto& w : sub) {
    if (allowed.count(w) == 0) return {false, depth, w};
  }
  return {true, depth, std::nullopt};
}

}  // namespace

WordVerdict dominates(const FsmSource& eta, const FsmSource& mu, std::size_t depth) {
  require_same(eta.alphabet(), mu.alphabet(), "dominates");
  return inclusion(support(mu, depth), support(eta, depth), depth);
}

WordVerdict asymptotically_dominates(const FsmSource& eta, const FsmSource& mu,
                                     std::size_t depth) {
  require_same(eta.alphabet(), mu.alphabet(), "asymptotically_dominates");
  if (!is_stationary(eta)) {
    throw PreconditionError("asymptotic domination needs a stationary dominating measure");
  }
  return inclusion(asymptotic_support(mu, depth), support(eta, depth), depth);
}

ErgodicVerdict is_ergodic(const FsmSource& src) {
  const auto& d = src.decomposition();
  ErgodicVerdict v;
  for (std::size_t c = 0; c < d.closed.size(); ++c) {
    Scalar mass;
    for (std::size_t s = 0; s < src.num_states(); ++s) mass += src.init()[s] * d.absorb(s, c);
    if (structurally_positive(mass)) ++v.charged_classes;
  }
  v.ergodic = v.charged_classes <= 1;
  v.caveat = !v.ergodic;
  return v;
}

// ---------------------------------------------------------------------------
// Convergence evidence

ConvergenceEvidence convergence_evidence(const FsmSource& src, std::size_t depth,
                                         std::size_t n1, std::size_t n2) {
  if (n1 == 0 || n2 <= n1) throw InvariantViolation("need 0 < n1 < n2");
  const std::size_t n = src.num_states();
  const std::size_t sigma = src.alphabet().size();
  check_enumeration_budget(sigma, depth);
  std::vector<double> p(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) p[i * n + j] = src.trans()(i, j).to_double();
  }
  auto mult = [&](const std::vector<double>& v) {
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out[j] += v[i] * p[i * n + j];
    }
    return out;
  };

  std::vector<double> v(n), acc(n, 0.0), part1(n), part2(n), mean(n);
  for (std::size_t s = 0; s < n; ++s) v[s] = src.init()[s].to_double();
  for (std::size_t k = 0; k < n2; ++k) {
    for (std::size_t s = 0; s < n; ++s) acc[s] += v[s];
    if (k + 1 == n1) {
      for (std::size_t s = 0; s < n; ++s) part1[s] = acc[s] / static_cast<double>(n1);
    }
    v = mult(v);
  }
  for (std::size_t s = 0; s < n; ++s) part2[s] = acc[s] / static_cast<double>(n2);
  Vector exact_mean = stationary_mean(src).init();
  for (std::size_t s = 0; s < n; ++s) mean[s] = exact_mean[s].to_double();

  ConvergenceEvidence ev;
  ev.n1 = n1;
  ev.n2 = n2;
  // Forward on the three initial laws at once, over every word up to depth.
  std::function<void(std::size_t, const std::vector<double>&, const std::vector<double>&,
                     const std::vector<double>&)>
      walk = [&](std::size_t t, const std::vector<double>& x1, const std::vector<double>& x2,
                 const std::vector<double>& xm) {
        if (t == depth) return;
        std::vector<double> y1 = t == 0 ? x1 : mult(x1);
        std::vector<double> y2 = t == 0 ? x2 : mult(x2);
        std::vector<double> ym = t == 0 ? xm : mult(xm);
        for (Symbol a = 0; a < sigma; ++a) {
          std::vector<double> z1(n, 0.0), z2(n, 0.0), zm(n, 0.0);
          double s1 = 0, s2 = 0, sm = 0;
          for (std::size_t s = 0; s < n; ++s) {
            if (src.label(s) != a) continue;
            z1[s] = y1[s];
            z2[s] = y2[s];
            zm[s] = ym[s];
            s1 += y1[s];
            s2 += y2[s];
            sm += ym[s];
          }
          double d1 = std::fabs(s1 - sm);
          double d2 = std::fabs(s2 - sm);
          ev.dev1 += d1;
          ev.dev2 += d2;
          ev.max_dev1 = std::max(ev.max_dev1, d1);
          ev.max_dev2 = std::max(ev.max_dev2, d2);
          if (s1 > 0 || s2 > 0 || sm > 0) walk(t + 1, z1, z2, zm);
        }
      };
  walk(0, part1, part2, mean);
  ev.converged = ev.dev1 < 1e-12;
  ev.constant = ev.converged ? 0.0
                             : std::max(static_cast<double>(n1) * ev.dev1,
                                        static_cast<double>(n2) * ev.dev2);
  return ev;
}

SourceVerdict classify_source(const FsmSource& src, std::size_t depth) {
  SourceVerdict v;
  v.stationary_witness = stationarity_witness(src);
  v.stationary = !v.stationary_witness.has_value();
  v.recurrent = is_recurrent(src, depth);
  v.evidence = convergence_evidence(src, depth);
  v.ams = true;
  v.ergodic = is_ergodic(src);
  if (v.stationary && !v.recurrent.holds) {
    throw HierarchyViolation("stationary source reported non-recurrent");
  }
  return v;
}

}  // namespace ams
