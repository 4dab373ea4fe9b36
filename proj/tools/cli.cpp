#include "cli.hpp"

#include <omp.h>

#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "ams/classify.hpp"
#include "ams/errors.hpp"
#include "ams/model_io.hpp"
#include "ams/oracle.hpp"
#include "ams/theorems.hpp"

namespace ams::cli {

namespace {

using io::json;

struct Common {
  bool exact = false;
  bool floating = false;
  bool as_json = false;
  int jobs = 0;
  std::size_t depth = 3;
  std::string out;

  Arith mode() const {
    if (exact) return Arith::exact;
    if (floating) return Arith::floating;
    return default_arith();
  }
};

// Six significant digits keep reports stable across libm versions.
double rounded(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return std::stod(buf);
}

std::string stem_of(const std::string& path) { return std::filesystem::path(path).stem().string(); }

json optional_word(const Alphabet& a, const std::optional<Word>& w) {
  return w ? json(a.format(*w)) : json(nullptr);
}

json optional_rect(const Alphabet& in, const Alphabet& out, const std::optional<Rectangle>& r) {
  if (!r) return nullptr;
  return {{"input", in.format(r->first)}, {"output", out.format(r->second)}};
}

json check_json(const ChannelCheck& c, const Alphabet& in, const Alphabet& out) {
  return {{"holds", c.holds}, {"witness", optional_rect(in, out, c.witness)}};
}

json evidence_json(const ConvergenceEvidence& e) {
  return {{"n1", e.n1},
          {"n2", e.n2},
          {"dev1", rounded(e.dev1)},
          {"dev2", rounded(e.dev2)},
          {"ratio", rounded(e.ratio())},
          {"constant", rounded(e.constant)},
          {"converged", e.converged}};
}

json ergodic_json(const ErgodicVerdict& e) {
  return {{"ergodic", e.ergodic}, {"charged_classes", e.charged_classes}, {"caveat", e.caveat}};
}

json source_verdict_json(const std::string& id, const FsmSource& src, const SourceVerdict& v,
                         std::size_t depth) {
  const Alphabet& a = src.alphabet();
  json j;
  j["kind"] = "source_verdict";
  j["id"] = id;
  j["depth"] = depth;
  j["stationary"] = {{"holds", v.stationary}, {"witness", optional_word(a, v.stationary_witness)}};
  j["recurrent"] = {{"holds", v.recurrent.holds}, {"witness", optional_word(a, v.recurrent.witness)}};
  j["ams"] = v.ams;
  j["convergence"] = evidence_json(v.evidence);
  j["ergodic"] = ergodic_json(v.ergodic);
  return j;
}

json channel_verdict_json(const FsmChannel& ch, const ChannelVerdict& v) {
  const Alphabet& in = ch.in_alphabet();
  const Alphabet& out = ch.out_alphabet();
  json j;
  j["kind"] = "channel_verdict";
  j["depth"] = v.depth;
  j["stationary"] = check_json(v.stationary, in, out);
  json arr = json::array();
  for (const auto& e : v.sources) {
    json s;
    s["id"] = e.id;
    s["quasi_stationary"] = e.quasi_stationary ? check_json(*e.quasi_stationary, in, out) : json(nullptr);
    s["recurrent"] = e.recurrent ? check_json(*e.recurrent, in, out) : json(nullptr);
    s["r_ams"] = e.r_ams ? json(*e.r_ams) : json(nullptr);
    s["ams"] = {{"holds", e.ams.holds},
                {"dominated", e.ams.dominated.holds},
                {"convergence", evidence_json(e.ams.evidence)}};
    s["ergodic"] = e.ergodic ? ergodic_json(*e.ergodic) : json(nullptr);
    s["rejections"] = e.rejections;
    arr.push_back(s);
  }
  j["sources"] = arr;
  return j;
}

std::string yes(bool b) { return b ? "true" : "false"; }

std::string text(const json& j) {
  if (j.is_null()) return "n/a";
  if (j.is_boolean()) return yes(j.get<bool>());
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

std::string check_text(const char* name, const json& c) {
  if (c.is_null()) return std::string(name) + "=n/a";
  std::string s = std::string(name) + "=" + yes(c["holds"].get<bool>());
  if (!c["witness"].is_null()) {
    const json& w = c["witness"];
    s += w.is_string() ? " witness \"" + w.get<std::string>() + "\""
                       : " witness (" + text(w["input"]) + ", " + text(w["output"]) + ")";
  }
  return s;
}

void print_source_verdict(std::ostream& os, const json& v) {
  os << "source " << text(v["id"]) << " (depth " << v["depth"].get<std::size_t>() << ")\n"
     << "  " << check_text("stationary", v["stationary"]) << "\n"
     << "  " << check_text("recurrent", v["recurrent"]) << "\n"
     << "  ams=" << text(v["ams"]) << " C=" << text(v["convergence"]["constant"])
     << " ratio=" << text(v["convergence"]["ratio"]) << "\n"
     << "  ergodic=" << text(v["ergodic"]["ergodic"]) << " classes="
     << text(v["ergodic"]["charged_classes"]) << "\n";
}

void print_channel_verdict(std::ostream& os, const json& v) {
  os << "channel (depth " << v["depth"].get<std::size_t>() << ")\n"
     << "  " << check_text("stationary", v["stationary"]) << "\n";
  for (const auto& s : v["sources"]) {
    os << "source " << text(s["id"]) << "\n"
       << "  " << check_text("quasi_stationary", s["quasi_stationary"]) << "\n"
       << "  " << check_text("recurrent", s["recurrent"]) << "\n"
       << "  r_ams=" << text(s["r_ams"]) << " ams=" << text(s["ams"]["holds"])
       << " C=" << text(s["ams"]["convergence"]["constant"]) << "\n"
       << "  ergodic=" << (s["ergodic"].is_null() ? "n/a" : text(s["ergodic"]["ergodic"])) << "\n";
    for (const auto& r : s["rejections"]) os << "  rejected " << text(r) << "\n";
  }
}

FsmSource load_source(const std::string& path, Arith mode, std::ostream& err) {
  std::vector<std::string> warnings;
  FsmSource s = io::source_from_json(io::read_json_file(path), mode, &warnings);
  for (const auto& w : warnings) err << "warning: " << path << ": " << w << "\n";
  return s;
}

FsmChannel load_channel(const std::string& path, Arith mode, std::ostream& err) {
  std::vector<std::string> warnings;
  FsmChannel c = io::channel_from_json(io::read_json_file(path), mode, &warnings);
  for (const auto& w : warnings) err << "warning: " << path << ": " << w << "\n";
  return c;
}

// Model documents go to --out when given, else to stdout.
void emit(const Common& c, const json& doc, std::ostream& out) {
  if (c.out.empty()) {
    out << io::dump(doc);
  } else {
    io::write_json_file(c.out, doc);
  }
}

void add_common(CLI::App* app, Common& c, bool with_out) {
  auto* ex = app->add_flag("--exact", c.exact, "Exact rational arithmetic");
  auto* fl = app->add_flag("--float", c.floating, "Double arithmetic");
  ex->excludes(fl);
  app->add_flag("--json", c.as_json, "Machine-readable output");
  app->add_option("--jobs", c.jobs, "Worker threads (default: OpenMP default)")->check(CLI::PositiveNumber);
  app->add_option("--depth", c.depth, "Cylinder depth")->check(CLI::PositiveNumber);
  if (with_out) app->add_option("--out", c.out, "Output file");
}

struct Options {
  Common common;
  std::string channel, first, second, theorem, out_dir = "counterexamples";
  std::vector<std::string> sources;
  std::optional<std::uint64_t> seed;
  std::size_t trials = 50, horizon = 3, samples = 10000;
  bool list = false;
};

int cmd_classify(const Options& o, std::ostream& out, std::ostream& err) {
  const Common& c = o.common;
  const Arith mode = c.mode();
  if (o.channel.empty()) {
    if (o.sources.empty()) {
      err << "classify: give --channel, --source, or both\n";
      return kParseError;
    }
    json all = json::array();
    for (const auto& path : o.sources) {
      FsmSource src = load_source(path, mode, err);
      all.push_back(source_verdict_json(stem_of(path), src, classify_source(src, c.depth), c.depth));
    }
    if (c.as_json) {
      out << io::dump(all.size() == 1 ? all[0] : all);
    } else {
      for (const auto& v : all) print_source_verdict(out, v);
    }
    return kOk;
  }

  FsmChannel ch = load_channel(o.channel, mode, err);
  std::vector<NamedSource> named;
  if (o.sources.empty()) {
    if (!o.seed) {
      err << "classify: the default battery is random; pass --seed\n";
      return kParseError;
    }
    named = stationary_battery(ch.in_alphabet(), *o.seed);
    if (mode == Arith::floating) {
      for (auto& s : named) s.source = s.source.to_mode(mode);
    }
  } else {
    for (const auto& path : o.sources) named.push_back({stem_of(path), load_source(path, mode, err)});
  }
  json v = channel_verdict_json(ch, classify_channel(ch, named, c.depth));
  if (c.as_json) {
    out << io::dump(v);
  } else {
    print_channel_verdict(out, v);
  }
  return kOk;
}

std::string single_source(const Options& o, const char* cmd, std::ostream& err) {
  if (o.sources.size() != 1) {
    err << cmd << ": exactly one --source is required\n";
    return {};
  }
  return o.sources[0];
}

int cmd_mean(const Options& o, std::ostream& out, std::ostream& err) {
  std::string path = single_source(o, "mean", err);
  if (path.empty()) return kParseError;
  emit(o.common, io::source_to_json(stationary_mean(load_source(path, o.common.mode(), err))), out);
  return kOk;
}

int cmd_qsmean(const Options& o, std::ostream& out, std::ostream& err) {
  std::string path = single_source(o, "qsmean", err);
  if (path.empty()) return kParseError;
  const Arith mode = o.common.mode();
  FsmSource src = load_source(path, mode, err);
  FsmChannel ch = load_channel(o.channel, mode, err);
  emit(o.common, io::table_to_json(quasi_stationary_mean(src, ch, o.common.depth)), out);
  return kOk;
}

int cmd_hookup(const Options& o, std::ostream& out, std::ostream& err) {
  std::string path = single_source(o, "hookup", err);
  if (path.empty()) return kParseError;
  const Arith mode = o.common.mode();
  emit(o.common, io::joint_to_json(hookup(load_source(path, mode, err), load_channel(o.channel, mode, err))),
       out);
  return kOk;
}

int cmd_cascade(const Options& o, std::ostream& out, std::ostream& err) {
  const Arith mode = o.common.mode();
  emit(o.common, io::channel_to_json(cascade(load_channel(o.first, mode, err), load_channel(o.second, mode, err))),
       out);
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  const Common& c = o.common;
  if (o.list) {
    for (const auto& t : theorem_registry()) {
      out << t.id << ": " << t.hypothesis << " => " << t.conclusion << "\n";
    }
    return kOk;
  }
  if (o.theorem.empty() || !o.seed) {
    err << "check: --theorem and --seed are required\n";
    return kParseError;
  }
  if (!is_registered(o.theorem)) {
    err << "check: unknown theorem '" << o.theorem << "' (see check --list)\n";
    return kParseError;
  }
  TheoremCheckReport r = run_theorem_suite(o.theorem, o.trials, c.depth, *o.seed);
  if (c.as_json) {
    out << io::dump(r.to_json());
  } else {
    out << r.theorem << ": " << r.trials << " trials, depth " << r.depth << ", seed " << r.seed << "\n"
        << "  pass " << r.count(TrialStatus::pass) << ", vacuous " << r.count(TrialStatus::vacuous)
        << ", fail " << r.count(TrialStatus::fail) << ", error " << r.count(TrialStatus::error) << "\n";
    for (const auto& t : r.outcomes) {
      if (!t.ok()) out << "  trial " << t.index << " " << status_name(t.status) << ": " << t.detail << "\n";
    }
  }
  if (r.passed()) return kOk;
  std::filesystem::create_directories(o.out_dir);
  for (const auto& t : r.outcomes) {
    if (t.ok()) continue;
    json doc;
    doc["theorem"] = r.theorem;
    doc["trial"] = t.index;
    doc["seed"] = r.seed;
    doc["depth"] = r.depth;
    doc["status"] = status_name(t.status);
    doc["detail"] = t.detail;
    doc["instance"] = t.counterexample;
    std::string file = (std::filesystem::path(o.out_dir) /
                        (r.theorem + "-trial" + std::to_string(t.index) + ".json")).string();
    io::write_json_file(file, doc);
  }
  err << "check: counterexamples written to " << o.out_dir << "\n";
  return kCheckFailed;
}

int cmd_sample(const Options& o, std::ostream& out, std::ostream& err) {
  std::string path = single_source(o, "sample", err);
  if (path.empty()) return kParseError;
  if (!o.seed) {
    err << "sample: --seed is required\n";
    return kParseError;
  }
  FsmSource src = load_source(path, o.common.mode(), err);
  oracle::EmpiricalTable t = oracle::monte_carlo(src, o.horizon, o.samples, *o.seed);
  const Alphabet& a = src.alphabet();
  if (o.common.as_json) {
    json j;
    j["kind"] = "empirical";
    j["horizon"] = t.horizon;
    j["samples"] = t.samples;
    j["seed"] = t.seed;
    json entries = json::array();
    for (const auto& [w, n] : t.counts) {
      entries.push_back({{"word", a.format(w)},
                         {"count", n},
                         {"frequency", rounded(t.frequency(w))},
                         {"half_width", rounded(t.half_width(w))}});
    }
    j["entries"] = entries;
    emit(o.common, j, out);
  } else {
    out << "horizon " << t.horizon << ", samples " << t.samples << ", seed " << t.seed << "\n";
    for (const auto& [w, n] : t.counts) {
      out << "  " << a.format(w) << " " << n << " " << rounded(t.frequency(w)) << " +- "
          << rounded(t.half_width(w)) << "\n";
    }
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"AMS sources and channels on finite-state models", "ams"};
  app.require_subcommand(1);
  Options o;

  auto* classify = app.add_subcommand("classify", "Place a channel or sources in the AMS hierarchy");
  add_common(classify, o.common, false);
  classify->add_option("--channel", o.channel, "Channel model file")->check(CLI::ExistingFile);
  classify->add_option("--source", o.sources, "Source model file (repeatable)")->check(CLI::ExistingFile);
  classify->add_option("--seed", o.seed, "Seed for the default source battery");

  auto* mean = app.add_subcommand("mean", "Stationary mean of a source");
  add_common(mean, o.common, true);
  mean->add_option("--source", o.sources, "Source model file")->required()->check(CLI::ExistingFile);

  auto* qsmean = app.add_subcommand("qsmean", "Quasi-stationary mean table of a channel");
  add_common(qsmean, o.common, true);
  qsmean->add_option("--channel", o.channel, "Channel model file")->required()->check(CLI::ExistingFile);
  qsmean->add_option("--source", o.sources, "Source model file")->required()->check(CLI::ExistingFile);

  auto* hook = app.add_subcommand("hookup", "Joint input/output source");
  add_common(hook, o.common, true);
  hook->add_option("--channel", o.channel, "Channel model file")->required()->check(CLI::ExistingFile);
  hook->add_option("--source", o.sources, "Source model file")->required()->check(CLI::ExistingFile);

  auto* casc = app.add_subcommand("cascade", "Series composition of two channels");
  add_common(casc, o.common, true);
  casc->add_option("--first", o.first, "First channel")->required()->check(CLI::ExistingFile);
  casc->add_option("--second", o.second, "Second channel")->required()->check(CLI::ExistingFile);

  auto* check = app.add_subcommand("check", "Randomized theorem check");
  add_common(check, o.common, false);
  check->add_option("--theorem", o.theorem, "Theorem id, e.g. prop8");
  check->add_option("--trials", o.trials, "Number of trials")->check(CLI::PositiveNumber);
  check->add_option("--seed", o.seed, "Master seed");
  check->add_option("--out", o.out_dir, "Directory for counterexample files");
  check->add_flag("--list", o.list, "List registered theorems");

  auto* sample = app.add_subcommand("sample", "Monte Carlo cylinder frequencies");
  add_common(sample, o.common, true);
  sample->add_option("--source", o.sources, "Source model file")->required()->check(CLI::ExistingFile);
  sample->add_option("--horizon", o.horizon, "Trajectory length")->check(CLI::PositiveNumber);
  sample->add_option("--samples", o.samples, "Number of trajectories")->check(CLI::PositiveNumber);
  sample->add_option("--seed", o.seed, "Master seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    if (e.get_name() == "CallForHelp") {
      out << sub->help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kParseError;
  }

  if (o.common.jobs > 0) omp_set_num_threads(o.common.jobs);
  try {
    if (classify->parsed()) return cmd_classify(o, out, err);
    if (mean->parsed()) return cmd_mean(o, out, err);
    if (qsmean->parsed()) return cmd_qsmean(o, out, err);
    if (hook->parsed()) return cmd_hookup(o, out, err);
    if (casc->parsed()) return cmd_cascade(o, out, err);
    if (check->parsed()) return cmd_check(o, out, err);
    if (sample->parsed()) return cmd_sample(o, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const Error& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kInvariantViolation;
  } catch (const io::json::exception& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvariantViolation;
  }
  return kParseError;
}

}  // namespace ams::cli
