#include "ams/channel.hpp"

#include <algorithm>

#include "ams/errors.hpp"

namespace ams {

FsmChannel::FsmChannel(Alphabet in, Alphabet out, Vector init, std::vector<Scalar> kernel,
                       std::vector<std::string> state_names)
    : in_(std::move(in)),
      out_(std::move(out)),
      init_(std::move(init)),
      kernel_(std::move(kernel)),
      names_(std::move(state_names)) {
  const std::size_t nq = init_.size();
  if (nq == 0) throw InvariantViolation("channel needs at least one state");
  if (!is_probability_vector(init_)) throw InvariantViolation("channel initial law is not a distribution");
  if (kernel_.size() != nq * in_.size() * out_.size() * nq) {
    throw InvariantViolation("channel kernel size mismatch");
  }
  for (std::size_t q = 0; q < nq; ++q) {
    for (Symbol a = 0; a < in_.size(); ++a) {
      Scalar total;
      for (Symbol b = 0; b < out_.size(); ++b) {
        for (std::size_t q2 = 0; q2 < nq; ++q2) {
          const Scalar& p = k(q, a, b, q2);
          if (p.negative()) throw InvariantViolation("negative channel kernel entry");
          total += p;
        }
      }
      if (!total.is_one()) {
        throw InvariantViolation("channel kernel K(" + std::to_string(q) + "," + in_.token(a) +
                                 ") does not sum to 1");
      }
    }
  }
  if (names_.empty()) {
    for (std::size_t q = 0; q < nq; ++q) names_.push_back("q" + std::to_string(q));
  }
  if (names_.size() != nq) throw InvariantViolation("channel state name count mismatch");
}

bool FsmChannel::exact() const { return all_exact(init_) && all_exact(kernel_); }

FsmChannel FsmChannel::to_mode(Arith mode) const {
  return FsmChannel(in_, out_, ams::to_mode(init_, mode), ams::to_mode(kernel_, mode), names_);
}

FsmChannel FsmChannel::with_init(Vector init) const {
  return FsmChannel(in_, out_, std::move(init), kernel_, names_);
}

Word LassoInput::prefix(std::size_t n) const {
  if (cycle.empty()) throw InvariantViolation("lasso input needs a nonempty cycle");
  Word w;
  w.reserve(n);
  std::size_t p = 0;
  for (std::size_t t = 0; t < n; ++t) {
    w.push_back(at_position(p));
    p = next_position(p);
  }
  return w;
}

Scalar channel_cyl_prob(const FsmChannel& ch, const Word& w, const Word& v) {
  if (w.size() < v.size()) throw PreconditionError("channel evaluation needs |w| >= |v|");
  if (!ch.in_alphabet().contains(w) || !ch.out_alphabet().contains(v)) {
    throw AlphabetMismatch("channel evaluation outside the channel alphabets");
  }
  const std::size_t nq = ch.num_states();
  Vector f = ch.init();
  for (std::size_t t = 0; t < v.size(); ++t) {
    Vector g(nq);
    for (std::size_t q = 0; q < nq; ++q) {
      if (!structurally_positive(f[q])) continue;
      for (std::size_t q2 = 0; q2 < nq; ++q2) g[q2] += f[q] * ch.k(q, w[t], v[t], q2);
    }
    f = std::move(g);
  }
  return sum(f);
}

FsmSource channel_output_measure(const FsmChannel& ch, const LassoInput& x) {
  if (x.cycle.empty()) throw InvariantViolation("lasso input needs a nonempty cycle");
  if (!ch.in_alphabet().contains(x.stem) || !ch.in_alphabet().contains(x.cycle)) {
    throw AlphabetMismatch("lasso input outside the channel input alphabet");
  }
  const std::size_t np = x.positions();
  const std::size_t nq = ch.num_states();
  const std::size_t nb = ch.out_alphabet().size();
  const std::size_t n = np * nq * nb;
  auto id = [&](std::size_t p, std::size_t q, Symbol b) { return (p * nq + q) * nb + b; };

  std::vector<Symbol> labels(n);
  std::vector<std::string> names(n);
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t q = 0; q < nq; ++q) {
      for (Symbol b = 0; b < nb; ++b) {
        labels[id(p, q, b)] = b;
        names[id(p, q, b)] = "(" + std::to_string(p) + "," + ch.state_names()[q] + "," +
                             ch.out_alphabet().token(b) + ")";
      }
    }
  }
  Vector init(n);
  Symbol x0 = x.at_position(0);
  for (std::size_t q = 0; q < nq; ++q) {
    if (!structurally_positive(ch.init()[q])) continue;
    for (Symbol b = 0; b < nb; ++b) {
      for (std::size_t q2 = 0; q2 < nq; ++q2) init[id(0, q2, b)] += ch.init()[q] * ch.k(q, x0, b, q2);
    }
  }
  Matrix trans(n, n);
  for (std::size_t p = 0; p < np; ++p) {
    std::size_t p2 = x.next_position(p);
    Symbol a = x.at_position(p2);
    for (std::size_t q = 0; q < nq; ++q) {
      for (Symbol b = 0; b < nb; ++b) {
        for (Symbol b2 = 0; b2 < nb; ++b2) {
          for (std::size_t q2 = 0; q2 < nq; ++q2) trans(id(p, q, b), id(p2, q2, b2)) = ch.k(q, a, b2, q2);
        }
      }
    }
  }
  return FsmSource(ch.out_alphabet(), std::move(labels), std::move(init), std::move(trans),
                   std::move(names));
}

JointSource hookup_projected(const FsmSource& src, const FsmChannel& ch,
                             const std::vector<Symbol>& input_of_label) {
  if (input_of_label.size() != src.alphabet().size()) {
    throw AlphabetMismatch("input projection does not cover the source alphabet");
  }
  for (Symbol a : input_of_label) {
    if (a >= ch.in_alphabet().size()) throw AlphabetMismatch("projection outside channel input");
  }
  const std::size_t ns = src.num_states();
  const std::size_t nq = ch.num_states();
  const std::size_t nb = ch.out_alphabet().size();
  const std::size_t n = ns * nq * nb;
  auto id = [&](std::size_t s, std::size_t q, Symbol b) { return (s * nq + q) * nb + b; };
  auto feed = [&](std::size_t s) { return input_of_label[src.label(s)]; };

  Alphabet joint_alphabet = Alphabet::product(src.alphabet(), ch.out_alphabet());
  std::vector<Symbol> labels(n);
  std::vector<std::string> names(n);
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t q = 0; q < nq; ++q) {
      for (Symbol b = 0; b < nb; ++b) {
        labels[id(s, q, b)] = static_cast<Symbol>(src.label(s) * nb + b);
        names[id(s, q, b)] = "(" + src.state_names()[s] + "," + ch.state_names()[q] + "," +
                             ch.out_alphabet().token(b) + ")";
      }
    }
  }
  Vector init(n);
  for (std::size_t s = 0; s < ns; ++s) {
    if (!structurally_positive(src.init()[s])) continue;
    for (std::size_t q = 0; q < nq; ++q) {
      if (!structurally_positive(ch.init()[q])) continue;
      Scalar w = src.init()[s] * ch.init()[q];
      for (Symbol b = 0; b < nb; ++b) {
        for (std::size_t q2 = 0; q2 < nq; ++q2) init[id(s, q2, b)] += w * ch.k(q, feed(s), b, q2);
      }
    }
  }
  Matrix trans(n, n);
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t s2 = 0; s2 < ns; ++s2) {
      const Scalar& p = src.trans()(s, s2);
      if (!structurally_positive(p)) continue;
      for (std::size_t q = 0; q < nq; ++q) {
        for (Symbol b2 = 0; b2 < nb; ++b2) {
          for (std::size_t q2 = 0; q2 < nq; ++q2) {
            const Scalar& kk = ch.k(q, feed(s2), b2, q2);
            if (!structurally_positive(kk)) continue;
            Scalar pk = p * kk;
            for (Symbol b = 0; b < nb; ++b) trans(id(s, q, b), id(s2, q2, b2)) = pk;
          }
        }
      }
    }
  }
  FsmSource joint(joint_alphabet, std::move(labels), std::move(init), std::move(trans),
                  std::move(names));
  return JointSource{std::move(joint), src.alphabet(), ch.out_alphabet()};
}

JointSource hookup(const FsmSource& src, const FsmChannel& ch) {
  require_same(src.alphabet(), ch.in_alphabet(), "hookup");
  std::vector<Symbol> identity(src.alphabet().size());
  for (Symbol a = 0; a < identity.size(); ++a) identity[a] = a;
  return hookup_projected(src, ch, identity);
}

FsmSource input_marginal(const JointSource& joint) {
  std::vector<Symbol> labels;
  for (Symbol l : joint.source.labels()) labels.push_back(joint.input_of(l));
  return joint.source.relabel(joint.input, std::move(labels));
}

FsmSource output_marginal(const JointSource& joint) {
  std::vector<Symbol> labels;
  for (Symbol l : joint.source.labels()) labels.push_back(joint.output_of(l));
  return joint.source.relabel(joint.output, std::move(labels));
}

FsmChannel cascade(const FsmChannel& ch1, const FsmChannel& ch2) {
  require_same(ch1.out_alphabet(), ch2.in_alphabet(), "cascade");
  const std::size_t n1 = ch1.num_states();
  const std::size_t n2 = ch2.num_states();
  const std::size_t na = ch1.in_alphabet().size();
  const std::size_t nb = ch1.out_alphabet().size();
  const std::size_t nc = ch2.out_alphabet().size();
  const std::size_t n = n1 * n2;
  Vector init(n);
  std::vector<std::string> names(n);
  for (std::size_t q1 = 0; q1 < n1; ++q1) {
    for (std::size_t q2 = 0; q2 < n2; ++q2) {
      init[q1 * n2 + q2] = ch1.init()[q1] * ch2.init()[q2];
      names[q1 * n2 + q2] = "(" + ch1.state_names()[q1] + "," + ch2.state_names()[q2] + ")";
    }
  }
  std::vector<Scalar> kernel(n * na * nc * n);
  auto at = [&](std::size_t q, Symbol a, Symbol c, std::size_t q2) {
    return ((q * na + a) * nc + c) * n + q2;
  };
  for (std::size_t q1 = 0; q1 < n1; ++q1) {
    for (Symbol a = 0; a < na; ++a) {
      for (Symbol b = 0; b < nb; ++b) {
        for (std::size_t r1 = 0; r1 < n1; ++r1) {
          const Scalar& k1 = ch1.k(q1, a, b, r1);
          if (!structurally_positive(k1)) continue;
          for (std::size_t q2 = 0; q2 < n2; ++q2) {
            for (Symbol c = 0; c < nc; ++c) {
              for (std::size_t r2 = 0; r2 < n2; ++r2) {
                const Scalar& k2 = ch2.k(q2, b, c, r2);
                if (!structurally_positive(k2)) continue;
                kernel[at(q1 * n2 + q2, a, c, r1 * n2 + r2)] += k1 * k2;
              }
            }
          }
        }
      }
    }
  }
  return FsmChannel(ch1.in_alphabet(), ch2.out_alphabet(), std::move(init), std::move(kernel),
                    std::move(names));
}

FsmChannel markov_channel(const Alphabet& in, const Alphabet& out,
                          const std::vector<Matrix>& per_symbol,
                          const std::vector<Symbol>& labels, const Vector& init) {
  if (per_symbol.size() != in.size()) {
    throw InvariantViolation("markov channel needs one matrix per input symbol");
  }
  const std::size_t nz = labels.size();
  for (const auto& m : per_symbol) {
    if (m.rows() != nz || m.cols() != nz) {
      throw InvariantViolation("markov channel matrices disagree on the state set");
    }
    require_stochastic(m);
  }
  for (Symbol b : labels) {
    if (b >= out.size()) throw AlphabetMismatch("markov channel label outside output alphabet");
  }
  const std::size_t nb = out.size();
  std::vector<Scalar> kernel(nz * in.size() * nb * nz);
  for (std::size_t z = 0; z < nz; ++z) {
    for (Symbol a = 0; a < in.size(); ++a) {
      for (std::size_t z2 = 0; z2 < nz; ++z2) {
        kernel[((z * in.size() + a) * nb + labels[z2]) * nz + z2] = per_symbol[a](z, z2);
      }
    }
  }
  std::vector<std::string> names;
  for (std::size_t z = 0; z < nz; ++z) names.push_back("z" + std::to_string(z));
  return FsmChannel(in, out, init, std::move(kernel), std::move(names));
}

// ---------------------------------------------------------------------------
// Conditional tables

std::optional<Scalar> ConditionalKernelTable::entry(const Word& w, const Word& v) const {
  auto it = entries.find({w, v});
  if (it == entries.end()) return std::nullopt;
  return it->second;
}

bool operator==(const ConditionalKernelTable& a, const ConditionalKernelTable& b) {
  return a.input == b.input && a.output == b.output && a.depth == b.depth &&
         a.flags == b.flags && a.entries == b.entries;
}

bool table_is_coherent(const ConditionalKernelTable& t) {
  const std::size_t nb = t.output.size();
  for (const auto& [key, value] : t.entries) {
    const auto& [w, v] = key;
    if (value.negative() || value > Scalar(1)) return false;
    if (v.empty() && !value.is_one()) return false;
    if (v.size() == w.size()) continue;
    Scalar total;
    Word vb = v;
    vb.push_back(0);
    for (Symbol b = 0; b < nb; ++b) {
      vb.back() = b;
      auto e = t.entry(w, vb);
      if (!e) return false;
      total += *e;
    }
    if (!(total == value)) return false;
  }
  return true;
}

namespace {

struct TableRow {
  bool flagged = false;
  std::vector<std::pair<Word, Scalar>> cells;
};

// joint([w] x [v]) for |v| <= |w|: input constrained on all of w, output on v.
Scalar rectangle_prob(const JointSource& joint, const Word& w, const Word& v) {
  const FsmSource& js = joint.source;
  const std::size_t n = js.num_states();
  auto allowed = [&](std::size_t s, std::size_t t) {
    Symbol l = js.label(s);
    if (joint.input_of(l) != w[t]) return false;
    return t >= v.size() || joint.output_of(l) == v[t];
  };
  Vector alpha(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (allowed(s, 0)) alpha[s] = js.init()[s];
  }
  for (std::size_t t = 1; t < w.size(); ++t) {
    Vector next = alpha * js.trans();
    for (std::size_t s = 0; s < n; ++s) {
      if (!allowed(s, t)) next[s] = 0;
    }
    alpha = std::move(next);
  }
  return sum(alpha);
}

TableRow table_row(const JointSource& joint, const FsmSource& mu, const Word& w) {
  TableRow row;
  Scalar mass = cyl_prob(mu, w);
  if (!structurally_positive(mass)) {
    row.flagged = true;
    return row;
  }
  const std::size_t nb = joint.output.size();
  for (std::size_t k = 0; k <= w.size(); ++k) {
    if (k == 0) {
      row.cells.emplace_back(Word{}, rectangle_prob(joint, w, Word{}) / mass);
      continue;
    }
    for_each_word(nb, k, [&](const Word& v) {
      row.cells.emplace_back(v, rectangle_prob(joint, w, v) / mass);
    });
  }
  return row;
}

ConditionalKernelTable assemble(const JointSource& joint, std::size_t depth,
                                const std::vector<Word>& inputs, std::vector<TableRow>& rows) {
  ConditionalKernelTable t{joint.input, joint.output, depth, {}, {}};
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (rows[i].flagged) {
      t.flags.insert(inputs[i]);
      continue;
    }
    for (auto& [v, value] : rows[i].cells) t.entries.emplace(std::make_pair(inputs[i], v), std::move(value));
  }
  return t;
}

void check_table_args(const JointSource& joint, const FsmSource& mu, std::size_t depth) {
  require_same(joint.input, mu.alphabet(), "conditional_table");
  if (depth == 0) throw InvariantViolation("table depth must be >= 1");
  check_enumeration_budget(joint.input.size() * joint.output.size(), depth);
}

}  // namespace

ConditionalKernelTable conditional_table_serial(const JointSource& joint, const FsmSource& mu,
                                                std::size_t depth) {
  check_table_args(joint, mu, depth);
  std::vector<Word> inputs = words_up_to(joint.input.size(), depth);
  std::vector<TableRow> rows(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) rows[i] = table_row(joint, mu, inputs[i]);
  return assemble(joint, depth, inputs, rows);
}

ConditionalKernelTable conditional_table(const JointSource& joint, const FsmSource& mu,
                                         std::size_t depth) {
  check_table_args(joint, mu, depth);
  std::vector<Word> inputs = words_up_to(joint.input.size(), depth);
  std::vector<TableRow> rows(inputs.size());
  const long count = static_cast<long>(inputs.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    rows[static_cast<std::size_t>(i)] = table_row(joint, mu, inputs[static_cast<std::size_t>(i)]);
  }
  return assemble(joint, depth, inputs, rows);
}

namespace {

void require_stationary_input(const FsmSource& src, const char* what) {
  if (!is_stationary(src)) throw PreconditionError(std::string(what) + " needs a stationary source");
}

}  // namespace

ConditionalKernelTable nu_i_table(const FsmSource& src, const FsmChannel& ch, std::size_t i,
                                  std::size_t depth) {
  require_stationary_input(src, "nu_i_table");
  JointSource joint = hookup(src, ch);
  joint.source = shifted_source(joint.source, i);
  return conditional_table(joint, src, depth);
}

JointSource hookup_stationary_mean(const FsmSource& src, const FsmChannel& ch) {
  JointSource joint = hookup(src, ch);
  joint.source = stationary_mean(joint.source);
  return joint;
}

ConditionalKernelTable quasi_stationary_mean(const FsmSource& src, const FsmChannel& ch,
                                             std::size_t depth) {
  require_stationary_input(src, "quasi_stationary_mean");
  return conditional_table(hookup_stationary_mean(src, ch), src, depth);
}

FsmSource kernel_stationary_mean(const FsmChannel& ch, const LassoInput& x) {
  return stationary_mean(channel_output_measure(ch, x));
}

std::optional<std::pair<Word, Word>> channel_difference(const FsmChannel& a,
                                                        const FsmChannel& b, std::size_t depth) {
  require_same(a.in_alphabet(), b.in_alphabet(), "channel_difference");
  require_same(a.out_alphabet(), b.out_alphabet(), "channel_difference");
  std::optional<std::pair<Word, Word>> diff;
  for (std::size_t m = 1; m <= depth && !diff; ++m) {
    for_each_word(a.in_alphabet().size(), m, [&](const Word& w) {
      if (diff) return;
      for_each_word(a.out_alphabet().size(), m, [&](const Word& v) {
        if (diff) return;
        if (!(channel_cyl_prob(a, w, v) == channel_cyl_prob(b, w, v))) diff.emplace(w, v);
      });
    });
  }
  return diff;
}

}  // namespace ams
