#include "ams/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "ams/catalog.hpp"
#include "ams/classify.hpp"
#include "ams/errors.hpp"
#include "ams/oracle.hpp"
#include "ams/random.hpp"

namespace ams {

namespace {

struct Trial {
  TrialStatus status = TrialStatus::pass;
  std::string detail;
  io::json instance = io::json::object();

  void require(bool ok, const std::string& why) {
    if (!ok && status != TrialStatus::fail) {
      status = TrialStatus::fail;
      detail = why;
    }
  }
  void vacuous(const std::string& why) {
    status = TrialStatus::vacuous;
    detail = why;
  }
};

using TrialFn = std::function<Trial(SplitMix64&, std::size_t)>;

std::string fixed(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(6) << x;
  return os.str();
}

Alphabet binary() { return letters(2); }

std::size_t states(SplitMix64& rng, std::size_t max) { return 1 + rng.below(max); }

/// Every lasso with stem <= 1 and cycle <= 2 whose prefix through one pass of
/// the cycle plus `depth` symbols has positive source mass.
std::vector<LassoInput> supported_lassos(const FsmSource& src, std::size_t depth) {
  const std::size_t k = src.alphabet().size();
  std::vector<LassoInput> out;
  for (const Word& stem : words_up_to(k, 1)) {
    for (const Word& cycle : words_up_to(k, 2)) {
      if (cycle.empty()) continue;
      LassoInput x{stem, cycle};
      if (cyl_prob(src, x.prefix(x.positions() + depth)).positive()) out.push_back(x);
    }
  }
  return out;
}

std::string lasso_text(const Alphabet& a, const LassoInput& x) {
  return a.format(x.stem) + "(" + a.format(x.cycle) + ")";
}

FsmChannel any_channel(SplitMix64& rng, const Alphabet& in, const Alphabet& out) {
  switch (rng.below(4)) {
    case 0: return random_stationary_channel(rng, in, out, states(rng, 2));
    case 1: return random_markov_channel(rng, in, out, states(rng, 3));
    case 2: return random_dense_channel(rng, in, out, states(rng, 2));
    default: return random_channel(rng, in, out, states(rng, 2));
  }
}

/// Joint law on (A x B) x C of src through ch1 then ch2.
JointSource triple_hookup(const FsmSource& src, const FsmChannel& ch1, const FsmChannel& ch2) {
  JointSource first = hookup(src, ch1);
  std::vector<Symbol> feed(first.source.alphabet().size());
  for (std::size_t z = 0; z < feed.size(); ++z) feed[z] = first.output_of(static_cast<Symbol>(z));
  return hookup_projected(first.source, ch2, feed);
}

// ---------------------------------------------------------------------------

Trial stationary_hookup(SplitMix64& rng, std::size_t depth) {
  Trial t;
  FsmChannel ch = random_stationary_channel(rng, binary(), binary(), states(rng, 3));
  FsmSource src = random_stationary_source(rng, binary(), states(rng, 3));
  t.instance = {{"source", io::source_to_json(src)}, {"channel", io::channel_to_json(ch)}};
  JointSource j = hookup(src, ch);
  auto w = stationarity_witness(j.source);
  t.require(!w, "hookup moves under the shift on " + (w ? j.source.alphabet().format(*w) : ""));
  // The depth-bounded view of the same fact.
  FsmSource shifted = shifted_source(j.source, 1);
  for (const Word& z : words_up_to(j.source.alphabet().size(), depth)) {
    if (z.empty()) continue;
    if (!(cyl_prob(j.source, z) == cyl_prob(shifted, z))) {
      t.require(false, "cylinder " + j.source.alphabet().format(z) + " differs after one shift");
      break;
    }
  }
  return t;
}

Trial prop1(SplitMix64& rng, std::size_t) {
  Trial t;
  FsmChannel ch = rng.bernoulli(0.5) ? random_stationary_channel(rng, binary(), binary(), states(rng, 2))
                                     : random_channel(rng, binary(), binary(), states(rng, 2));
  FsmSource src = rng.bernoulli(0.5) ? random_stationary_source(rng, binary(), states(rng, 3))
                                     : random_source_over(rng, binary(), states(rng, 3));
  t.instance = {{"source", io::source_to_json(src)}, {"channel", io::channel_to_json(ch)}};
  JointSource j = hookup(src, ch);
  if (!is_stationary(j.source)) {
    t.vacuous("hookup not stationary");
    return t;
  }
  t.require(is_stationary(src), "stationary hookup over a non-stationary source");
  t.require(is_stationary(input_marginal(j)), "input marginal not stationary");
  return t;
}

Trial prop2(SplitMix64& rng, std::size_t depth) {
  Trial t;
  FsmSource src = random_recurrent_source(rng, binary(), states(rng, 3));
  FsmChannel ch = random_channel(rng, binary(), binary(), states(rng, 2));
  t.instance = {{"source", io::source_to_json(src)}, {"channel", io::channel_to_json(ch)}};
  bool joint = is_channel_recurrent_wrt(ch, src, depth).holds;
  bool pointwise = true;
  std::string where;
  for (const auto& x : supported_lassos(src, depth)) {
    if (!is_recurrent(channel_output_measure(ch, x), depth).holds) {
      pointwise = false;
      where = lasso_text(src.alphabet(), x);
      break;
    }
  }
  t.detail = std::string("joint=") + (joint ? "recurrent" : "not recurrent") +
             ", lasso outputs=" + (pointwise ? "recurrent" : "not recurrent at " + where);
  if (joint != pointwise) t.status = TrialStatus::fail;
  return t;
}

Trial prop3(SplitMix64& rng, std::size_t depth) {
  Trial t;
  FsmChannel ch = any_channel(rng, binary(), binary());
  std::vector<NamedSource> battery = stationary_battery(binary(), rng.next(), 3);
  battery.push_back({"general", random_source_over(rng, binary(), states(rng, 3))});
  t.instance = {{"channel", io::channel_to_json(ch)}};
  try {
    ChannelVerdict v = classify_channel(ch, battery, depth);
    t.detail = "verdicts=" + std::to_string(v.sources.size());
  } catch (const HierarchyViolation& e) {
    t.require(false, e.what());
  }
  return t;
}

Trial prop5(SplitMix64& rng, std::size_t depth) {
  Trial t;
  FsmSource src = random_stationary_source(rng, binary(), states(rng, 3));
  FsmChannel ch = rng.bernoulli(0.5) ? random_dense_channel(rng, binary(), binary(), states(rng, 2))
                                     : random_channel(rng, binary(), binary(), states(rng, 2));
  t.instance = {{"source", io::source_to_json(src)}, {"channel", io::channel_to_json(ch)}};
  for (const auto& x : supported_lassos(src, depth)) {
    if (!is_recurrent(channel_output_measure(ch, x), depth).holds) {
      t.vacuous("output on " + lasso_text(src.alphabet(), x) + " is not recurrent");
      return t;
    }
  }
  ChannelCheck rec = is_channel_recurrent_wrt(ch, src, depth);
  t.require(rec.holds, "hookup not recurrent on rectangle (" +
                           (rec.witness ? src.alphabet().format(rec.witness->first) + ", " +
                                              ch.out_alphabet().format(rec.witness->second)
                                        : std::string()) +
                           ")");
  t.require(is_channel_ams_wrt(ch, src, depth).holds, "hookup not AMS");
  return t;
}

Trial prop7(SplitMix64& rng, std::size_t depth) {
  Trial t;
  FsmSource src = random_stationary_source(rng, binary(), states(rng, 3));
  FsmChannel ch = any_channel(rng, binary(), binary());
  t.instance = {{"source", io::source_to_json(src)}, {"channel", io::channel_to_json(ch)}};
  for (const auto& x : supported_lassos(src, depth)) {
    FsmSource out = channel_output_measure(ch, x);
    t.require(asymptotically_dominates(stationary_mean(out), out, depth).holds,
              "output on " + lasso_text(src.alphabet(), x) + " is not AMS");
  }
  AmsCheck ams = is_channel_ams_wrt(ch, src, depth);
  t.require(ams.holds, "hookup not AMS");
  if (t.status == TrialStatus::pass) t.detail = "C=" + fixed(ams.evidence.constant);
  return t;
}

std::string rect_text(const Alphabet& a, const Alphabet& b, const std::optional<Rectangle>& r) {
  return r ? "(" + a.format(r->first) + ", " + b.format(r->second) + ")" : "()";
}

Trial prop8(SplitMix64& rng, std::size_t depth) {
  Trial t;
  FsmSource src = random_stationary_source(rng, binary(), states(rng, 3));
  FsmChannel ch1 = random_stationary_channel(rng, binary(), binary(), states(rng, 2));
  FsmChannel ch2 = random_stationary_channel(rng, binary(), binary(), states(rng, 2));
  t.instance = {{"source", io::source_to_json(src)},
                {"first", io::channel_to_json(ch1)},
                {"second", io::channel_to_json(ch2)}};
  if (!is_quasi_stationary_wrt(ch1, src, depth).holds) {
    t.vacuous("first channel not quasi-stationary");
    return t;
  }
  FsmSource middle = output_marginal(hookup(src, ch1));
  if (!is_quasi_stationary_wrt(ch2, middle, depth).holds) {
    t.vacuous("second channel not quasi-stationary");
    return t;
  }
  ChannelCheck qs = is_quasi_stationary_wrt(cascade(ch1, ch2), src, depth);
  t.require(qs.holds, "cascade moves under the shift on " +
                          rect_text(binary(), binary(), qs.witness));
  return t;
}

Trial prop9(SplitMix64& rng, std::size_t depth) {
  Trial t;
  FsmSource src = random_recurrent_source(rng, binary(), states(rng, 3));
  FsmChannel ch1 = random_dense_channel(rng, binary(), binary(), states(rng, 2));
  FsmChannel ch2 = rng.bernoulli(0.5) ? catalog::copy()
                                      : random_dense_channel(rng, binary(), binary(), 1);
  t.instance = {{"source", io::source_to_json(src)},
                {"first", io::channel_to_json(ch1)},
                {"second", io::channel_to_json(ch2)}};
  FsmSource middle = output_marginal(hookup(src, ch1));
  if (is_recurrent(middle, depth).holds && !is_channel_recurrent_wrt(ch2, middle, depth).holds) {
    t.vacuous("second channel not recurrent");
    return t;
  }
  ChannelCheck rec = is_channel_recurrent_wrt(cascade(ch1, ch2), src, depth);
  t.require(rec.holds, "positive defect on " + rect_text(binary(), binary(), rec.witness));
  return t;
}

Trial prop10(SplitMix64& rng, std::size_t depth) {
  Trial t;
  FsmSource src = random_recurrent_source(rng, binary(), states(rng, 3));
  FsmChannel ch1 = random_dense_channel(rng, binary(), binary(), states(rng, 2));
  FsmChannel ch2 = random_dense_channel(rng, binary(), binary(), states(rng, 2));
  t.instance = {{"source", io::source_to_json(src)},
                {"first", io::channel_to_json(ch1)},
                {"second", io::channel_to_json(ch2)}};
  JointSource tri = triple_hookup(src, ch1, ch2);
  JointSource tri_mean_input = triple_hookup(stationary_mean(src), ch1, ch2);
  FsmSource dominating = stationary_mean(tri_mean_input.source);
  WordVerdict first = dominates(tri_mean_input.source, tri.source, depth);
  WordVerdict second = dominates(dominating, tri_mean_input.source, depth);
  t.require(first.holds, "triple hookup not dominated by the one driven by the source mean");
  t.require(second.holds, "driven triple hookup not dominated by its stationary mean");
  t.require(is_stationary(dominating), "dominating measure not stationary");
  FsmChannel c = cascade(ch1, ch2);
  ChannelCheck rec = is_channel_recurrent_wrt(c, src, depth);
  t.require(rec.holds, "cascade not recurrent on " + rect_text(binary(), binary(), rec.witness));
  t.require(is_channel_ams_wrt(c, src, depth).holds, "cascade not AMS");
  return t;
}

Trial prop11(SplitMix64& rng, std::size_t depth) {
  Trial t;
  FsmSource src = random_source_over(rng, binary(), states(rng, 3));
  FsmChannel ch1 = any_channel(rng, binary(), binary());
  FsmChannel ch2 = any_channel(rng, binary(), binary());
  t.instance = {{"source", io::source_to_json(src)},
                {"first", io::channel_to_json(ch1)},
                {"second", io::channel_to_json(ch2)}};
  AmsCheck ams = is_channel_ams_wrt(cascade(ch1, ch2), src, depth);
  t.require(ams.holds, "cascade hookup not asymptotically dominated by its stationary mean");
  JointSource tri = triple_hookup(src, ch1, ch2);
  t.require(asymptotically_dominates(stationary_mean(tri.source), tri.source, depth).holds,
            "triple hookup not asymptotically dominated by its stationary mean");
  if (t.status == TrialStatus::pass) t.detail = "C=" + fixed(ams.evidence.constant);
  return t;
}

Trial prop13(SplitMix64& rng, std::size_t depth) {
  constexpr std::size_t kN = 512;
  Trial t;
  FsmSource src = random_stationary_source(rng, binary(), states(rng, 3));
  FsmChannel ch = rng.bernoulli(0.5) ? random_dense_channel(rng, binary(), binary(), states(rng, 2))
                                     : random_channel(rng, binary(), binary(), states(rng, 2));
  t.instance = {{"source", io::source_to_json(src)}, {"channel", io::channel_to_json(ch)}};
  ConditionalKernelTable exact = quasi_stationary_mean(src, ch, depth);
  ConditionalKernelTable partial = oracle::nu_cesaro_partial(
      src.to_mode(Arith::floating), ch.to_mode(Arith::floating), kN, depth);
  double worst = 0;
  for (const auto& [key, value] : exact.entries) {
    auto p = partial.entry(key.first, key.second);
    if (!p) {
      t.require(false, "partial table lacks an entry");
      return t;
    }
    worst = std::max(worst, std::abs(p->to_double() - value.to_double()));
  }
  t.require(worst <= 2.0 / kN, "deviation " + fixed(worst) + " exceeds 2/n");
  if (t.status == TrialStatus::pass) t.detail = "max deviation " + fixed(worst);
  return t;
}

Trial lemma1(SplitMix64& rng, std::size_t depth) {
  Trial t;
  SourceOptions opt;
  opt.max_alphabet = 3;
  FsmSource src = random_source(rng, opt);
  t.instance = {{"source", io::source_to_json(src)}};
  FsmSource mean = stationary_mean(src);
  WordVerdict dom = dominates(mean, src, depth);
  WordVerdict rec = is_recurrent(src, depth);
  t.require(dom.holds == rec.holds,
            std::string("dominated=") + (dom.holds ? "true" : "false") +
                " but recurrent=" + (rec.holds ? "true" : "false"));
  t.require(asymptotically_dominates(mean, src, depth).holds, "not asymptotically dominated");
  return t;
}

Trial lemma7(SplitMix64& rng, std::size_t depth) {
  Trial t;
  FsmSource eta = random_source_over(rng, binary(), states(rng, 3));
  // A law charging a subset of eta's initial support is dominated by eta.
  Vector d = random_distribution(rng, eta.num_states());
  Vector init(eta.num_states());
  for (std::size_t s = 0; s < init.size(); ++s) {
    if (eta.init()[s].positive()) init[s] = d[s];
  }
  if (sum(init).is_zero()) {
    for (std::size_t s = 0; s < init.size(); ++s) init[s] = eta.init()[s];
  }
  Scalar total = sum(init);
  for (auto& x : init) x /= total;
  FsmSource mu = eta.with_init(init);
  FsmChannel ch = any_channel(rng, binary(), binary());
  t.instance = {{"eta", io::source_to_json(eta)},
                {"mu", io::source_to_json(mu)},
                {"channel", io::channel_to_json(ch)}};
  if (!dominates(eta, mu, depth).holds) {
    t.vacuous("mu not dominated");
    return t;
  }
  WordVerdict v = dominates(hookup(eta, ch).source, hookup(mu, ch).source, depth);
  t.require(v.holds, "hookup dominance fails");
  return t;
}

Trial lemma8(SplitMix64& rng, std::size_t depth) {
  Trial t;
  FsmSource mu = random_source_over(rng, binary(), states(rng, 3));
  FsmChannel nu = random_channel(rng, binary(), binary(), states(rng, 2));
  FsmChannel nu2 = random_channel(rng, binary(), binary(), states(rng, 2));
  t.instance = {{"source", io::source_to_json(mu)},
                {"nu", io::channel_to_json(nu)},
                {"nu_prime", io::channel_to_json(nu2)}};
  bool hookups = dominates(hookup(mu, nu2).source, hookup(mu, nu).source, depth).holds;
  bool kernels = true;
  for (std::size_t m = 1; m <= depth && kernels; ++m) {
    for_each_word(2, m, [&](const Word& w) {
      if (!kernels || !structurally_positive(cyl_prob(mu, w))) return;
      for_each_word(2, m, [&](const Word& v) {
        if (structurally_positive(channel_cyl_prob(nu, w, v)) &&
            !structurally_positive(channel_cyl_prob(nu2, w, v))) {
          kernels = false;
        }
      });
    });
  }
  t.detail = std::string("hookup dominance=") + (hookups ? "true" : "false") +
             ", kernel dominance=" + (kernels ? "true" : "false");
  if (hookups != kernels) t.status = TrialStatus::fail;
  return t;
}

// Ergodic recurrent source over `a`; retries a bounded number of times.
std::optional<FsmSource> ergodic_recurrent_source(SplitMix64& rng, const Alphabet& a) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    FsmSource s = random_recurrent_source(rng, a, states(rng, 3));
    if (is_ergodic(s).ergodic) return s;
  }
  return std::nullopt;
}

Trial prop15(SplitMix64& rng, std::size_t depth) {
  Trial t;
  auto src = ergodic_recurrent_source(rng, binary());
  FsmChannel ch = random_dense_channel(rng, binary(), binary(), states(rng, 2));
  if (!src) {
    t.vacuous("no ergodic source drawn");
    return t;
  }
  t.instance = {{"source", io::source_to_json(*src)}, {"channel", io::channel_to_json(ch)}};
  try {
    IdentityReport r = check_qs_mean_identity(ch, *src, depth);
    t.require(r.passed, r.notes.empty() ? "identity fails" : r.notes.front());
  } catch (const PreconditionError& e) {
    t.vacuous(e.what());
  }
  return t;
}

Trial prop16(SplitMix64& rng, std::size_t depth) {
  Trial t;
  Alphabet four = letters(4);
  auto lo = ergodic_recurrent_source(rng, binary());
  auto hi = ergodic_recurrent_source(rng, binary());
  FsmChannel ch = random_dense_channel(rng, four, binary(), states(rng, 2));
  if (!lo || !hi) {
    t.vacuous("no ergodic source drawn");
    return t;
  }
  std::vector<Symbol> up = hi->labels();
  for (auto& l : up) l = static_cast<Symbol>(l + 2);
  FsmSource a = lo->relabel(four, lo->labels());
  FsmSource b = hi->relabel(four, up);
  t.instance = {{"first", io::source_to_json(a)},
                {"second", io::source_to_json(b)},
                {"channel", io::channel_to_json(ch)}};
  IdentityReport r = check_qs_mean_singularity(ch, a, b, depth);
  t.require(r.passed, r.notes.empty() ? "supports meet" : r.notes.front());
  return t;
}

struct Entry {
  TheoremInfo info;
  TrialFn fn;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      {{"lemma1", "random sources", "dominated by the stationary mean iff recurrent; asymptotically dominated always"}, lemma1},
      {{"lemma7", "mu << eta", "mu nu << eta nu"}, lemma7},
      {{"lemma8", "random source and two channels", "hookup dominance iff kernel dominance on positive inputs"}, lemma8},
      {{"prop1", "stationary hookup", "stationary source"}, prop1},
      {{"prop2", "recurrent source", "hookup recurrent iff every supported lasso output is recurrent"}, prop2},
      {{"prop3", "random channels over a stationary battery", "no hierarchy inversion"}, prop3},
      {{"prop5", "stationary source, recurrent lasso outputs", "R-AMS hookup"}, prop5},
      {{"prop7", "stationary source, AMS lasso outputs", "AMS hookup"}, prop7},
      {{"prop8", "two quasi-stationary channels", "quasi-stationary cascade"}, prop8},
      {{"prop9", "second channel recurrent (copy or dense memoryless), dense first channel", "recurrent cascade"}, prop9},
      {{"prop10", "two dense channels, recurrent source", "domination chain and R-AMS cascade"}, prop10},
      {{"prop11", "two channels, any source", "AMS cascade"}, prop11},
      {{"prop13", "stationary source", "Cesaro mean of nu_i tables within 2/512 of the quasi-stationary mean"}, prop13},
      {{"prop15", "ergodic R-AMS source and channel", "quasi-stationary means agree for mu and its mean"}, prop15},
      {{"prop16", "sources with singular stationary means", "quasi-stationary mean hookups singular"}, prop16},
      {{"stationary-hookup", "stationary channel and source", "stationary hookup"}, stationary_hookup},
  };
  return table;
}

const Entry& find(const std::string& id) {
  for (const auto& e : entries()) {
    if (e.info.id == id) return e;
  }
  throw InvariantViolation("unknown theorem id '" + id + "'");
}

TrialOutcome run_trial(const Entry& e, std::size_t index, std::size_t depth, std::uint64_t seed) {
  TrialOutcome out;
  out.index = index;
  SplitMix64 rng = SplitMix64::derive(seed, index);
  Trial t;
  try {
    t = e.fn(rng, depth);
  } catch (const std::exception& ex) {
    t.status = TrialStatus::error;
    t.detail = ex.what();
  }
  out.status = t.status;
  out.detail = t.detail;
  if (!out.ok()) out.counterexample = std::move(t.instance);
  return out;
}

TheoremCheckReport blank(const std::string& id, std::size_t trials, std::size_t depth,
                         std::uint64_t seed) {
  find(id);
  TheoremCheckReport r;
  r.theorem = id;
  r.trials = trials;
  r.depth = depth;
  r.seed = seed;
  r.outcomes.resize(trials);
  return r;
}

}  // namespace

std::string status_name(TrialStatus s) {
  switch (s) {
    case TrialStatus::pass: return "pass";
    case TrialStatus::vacuous: return "vacuous";
    case TrialStatus::fail: return "fail";
    case TrialStatus::error: return "error";
  }
  return "error";
}

std::size_t TheoremCheckReport::count(TrialStatus s) const {
  return static_cast<std::size_t>(std::count_if(outcomes.begin(), outcomes.end(),
                                                [s](const TrialOutcome& o) { return o.status == s; }));
}

bool TheoremCheckReport::passed() const {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const TrialOutcome& o) { return o.ok(); });
}

io::json TheoremCheckReport::to_json() const {
  io::json j;
  j["theorem"] = theorem;
  j["trials"] = trials;
  j["depth"] = depth;
  j["seed"] = seed;
  j["passed"] = count(TrialStatus::pass);
  j["vacuous"] = count(TrialStatus::vacuous);
  j["failed"] = count(TrialStatus::fail);
  j["errors"] = count(TrialStatus::error);
  io::json arr = io::json::array();
  for (const auto& o : outcomes) {
    io::json e;
    e["trial"] = o.index;
    e["status"] = status_name(o.status);
    if (!o.detail.empty()) e["detail"] = o.detail;
    arr.push_back(e);
  }
  j["outcomes"] = arr;
  return j;
}

const std::vector<TheoremInfo>& theorem_registry() {
  static const std::vector<TheoremInfo> infos = [] {
    std::vector<TheoremInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

bool is_registered(const std::string& id) {
  for (const auto& e : entries()) {
    if (e.info.id == id) return true;
  }
  return false;
}

TheoremCheckReport run_theorem_suite(const std::string& id, std::size_t trials, std::size_t depth,
                                     std::uint64_t seed) {
  TheoremCheckReport r = blank(id, trials, depth, seed);
  const Entry& e = find(id);
  const long n = static_cast<long>(trials);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    r.outcomes[static_cast<std::size_t>(i)] = run_trial(e, static_cast<std::size_t>(i), depth, seed);
  }
  return r;
}

TheoremCheckReport run_theorem_suite_serial(const std::string& id, std::size_t trials,
                                            std::size_t depth, std::uint64_t seed) {
  TheoremCheckReport r = blank(id, trials, depth, seed);
  const Entry& e = find(id);
  for (std::size_t i = 0; i < trials; ++i) r.outcomes[i] = run_trial(e, i, depth, seed);
  return r;
}

}  // namespace ams
