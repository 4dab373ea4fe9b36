#include "ams/model_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "ams/errors.hpp"

namespace ams::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::string text(const json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::string integer_text(const json& j) {
  if (j.is_number_integer()) return j.dump();
  if (j.is_string()) return j.get<std::string>();
  throw ParseError("num/den must be integers or integer strings");
}

struct StateTable {
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;

  std::size_t at(const json& j) const {
    if (j.is_number_unsigned()) {
      auto i = j.get<std::size_t>();
      if (i >= names.size()) throw ParseError("state index out of range");
      return i;
    }
    auto it = index.find(text(j, "state reference"));
    if (it == index.end()) throw ParseError("unknown state '" + j.get<std::string>() + "'");
    return it->second;
  }
};

StateTable read_states(const json& arr, const char* prefix) {
  if (!arr.is_array() || arr.empty()) throw ParseError("states must be a nonempty array");
  StateTable t;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string name = arr[i].is_object() && arr[i].contains("name")
                           ? text(arr[i]["name"], "state name")
                           : prefix + std::to_string(i);
    if (!t.index.emplace(name, i).second) throw ParseError("duplicate state '" + name + "'");
    t.names.push_back(name);
  }
  return t;
}

Symbol symbol(const Alphabet& a, const json& j) {
  std::string tok = text(j, "symbol");
  const auto& toks = a.tokens();
  auto it = std::find(toks.begin(), toks.end(), tok);
  if (it == toks.end()) throw ParseError("symbol '" + tok + "' is not in the alphabet");
  return static_cast<Symbol>(it - toks.begin());
}

Vector read_vector(const json& j, Arith mode) {
  if (!j.is_array()) throw ParseError("expected an array of probabilities");
  Vector v;
  for (const auto& x : j) v.push_back(scalar_from_json(x, mode));
  return v;
}

// Float rows within the slack of 1 are rescaled; anything else is left for
// the model constructors to reject.
void renormalize(Vector& row, const std::string& what, std::vector<std::string>* warnings) {
  if (row.empty() || row.front().exact()) return;
  double total = 0;
  for (const auto& x : row) total += x.to_double();
  if (total == 1.0 || total <= 0) return;
  if (std::abs(total - 1.0) > kNormalizationSlack) {
    std::ostringstream os;
    os.precision(17);
    os << what << " sums to " << total;
    throw InvariantViolation(os.str());
  }
  for (auto& x : row) x = Scalar(x.to_double() / total);
  if (warnings) warnings->push_back(what + " renormalized");
}

}  // namespace

json scalar_to_json(const Scalar& x) {
  if (x.exact()) return x.str();
  return x.to_double();
}

Scalar scalar_from_json(const json& j, Arith mode) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>(), mode);
  if (j.is_number()) {
    // The literal text keeps decimals exact in rational mode.
    return Scalar::parse(j.is_number_float() ? json(j.get<double>()).dump() : j.dump(), mode);
  }
  if (j.is_object() && j.contains("num") && j.contains("den")) {
    return Scalar::parse(integer_text(j["num"]) + "/" + integer_text(j["den"]), mode);
  }
  throw ParseError("unreadable probability " + j.dump());
}

json alphabet_to_json(const Alphabet& a) {
  json arr = json::array();
  for (std::size_t i = 0; i < a.size(); ++i) arr.push_back(a.token(static_cast<Symbol>(i)));
  return arr;
}

Alphabet alphabet_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("alphabet must be a nonempty array");
  std::vector<std::string> tokens;
  for (const auto& t : j) tokens.push_back(text(t, "alphabet token"));
  try {
    return Alphabet(tokens);
  } catch (const InvariantViolation& e) {
    throw ParseError(e.what());
  }
}

json source_to_json(const FsmSource& src) {
  json j;
  j["kind"] = "source";
  j["alphabet"] = alphabet_to_json(src.alphabet());
  json states = json::array();
  for (std::size_t s = 0; s < src.num_states(); ++s) {
    states.push_back({{"name", src.state_names()[s]}, {"label", src.alphabet().token(src.label(s))}});
  }
  j["states"] = states;
  json init = json::array();
  for (const auto& x : src.init()) init.push_back(scalar_to_json(x));
  j["init"] = init;
  json trans = json::array();
  for (std::size_t i = 0; i < src.num_states(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < src.num_states(); ++k) row.push_back(scalar_to_json(src.trans()(i, k)));
    trans.push_back(row);
  }
  j["trans"] = trans;
  return j;
}

json joint_to_json(const JointSource& joint) {
  json j = source_to_json(joint.source);
  j["input_alphabet"] = alphabet_to_json(joint.input);
  j["output_alphabet"] = alphabet_to_json(joint.output);
  return j;
}

json channel_to_json(const FsmChannel& ch) {
  json j;
  j["kind"] = "channel";
  j["in_alphabet"] = alphabet_to_json(ch.in_alphabet());
  j["out_alphabet"] = alphabet_to_json(ch.out_alphabet());
  json states = json::array();
  for (const auto& n : ch.state_names()) states.push_back({{"name", n}});
  j["states"] = states;
  json init = json::array();
  for (const auto& x : ch.init()) init.push_back(scalar_to_json(x));
  j["init"] = init;
  json kernel = json::array();
  const auto& names = ch.state_names();
  for (std::size_t q = 0; q < ch.num_states(); ++q) {
    for (Symbol a = 0; a < ch.in_alphabet().size(); ++a) {
      for (Symbol b = 0; b < ch.out_alphabet().size(); ++b) {
        for (std::size_t q2 = 0; q2 < ch.num_states(); ++q2) {
          const Scalar& p = ch.k(q, a, b, q2);
          if (p.is_zero()) continue;
          kernel.push_back({{"state", names[q]},
                            {"in", ch.in_alphabet().token(a)},
                            {"out", ch.out_alphabet().token(b)},
                            {"next", names[q2]},
                            {"prob", scalar_to_json(p)}});
        }
      }
    }
  }
  j["kernel"] = kernel;
  return j;
}

json table_to_json(const ConditionalKernelTable& t) {
  json j;
  j["kind"] = "table";
  j["input_alphabet"] = alphabet_to_json(t.input);
  j["output_alphabet"] = alphabet_to_json(t.output);
  j["depth"] = t.depth;
  json entries = json::array();
  for (const auto& [key, value] : t.entries) {
    entries.push_back({{"input", t.input.format(key.first)},
                       {"output", t.output.format(key.second)},
                       {"value", scalar_to_json(value)}});
  }
  j["entries"] = entries;
  json flags = json::array();
  for (const auto& w : t.flags) flags.push_back(t.input.format(w));
  j["flags"] = flags;
  return j;
}

FsmSource source_from_json(const json& j, Arith mode, std::vector<std::string>* warnings) {
  Alphabet a = alphabet_from_json(field(j, "alphabet"));
  const json& sj = field(j, "states");
  StateTable st = read_states(sj, "s");
  const std::size_t n = st.names.size();
  std::vector<Symbol> labels;
  for (const auto& s : sj) labels.push_back(symbol(a, field(s, "label")));

  Vector init = read_vector(field(j, "init"), mode);
  if (init.size() != n) throw ParseError("init has the wrong length");
  renormalize(init, "init", warnings);

  const json& tj = field(j, "trans");
  if (!tj.is_array()) throw ParseError("trans must be an array");
  std::vector<Vector> rows;
  if (tj.size() == n && n > 0 && tj[0].is_array()) {
    for (const auto& r : tj) rows.push_back(read_vector(r, mode));
  } else if (tj.size() == n * n) {
    Vector flat = read_vector(tj, mode);
    for (std::size_t i = 0; i < n; ++i) {
      rows.emplace_back(flat.begin() + static_cast<long>(i * n),
                        flat.begin() + static_cast<long>((i + 1) * n));
    }
  } else {
    throw ParseError("trans must be n rows of n entries or n*n entries");
  }
  Matrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw ParseError("trans row " + std::to_string(i) + " has the wrong length");
    renormalize(rows[i], "trans row " + std::to_string(i), warnings);
    for (std::size_t k = 0; k < n; ++k) p(i, k) = rows[i][k];
  }
  return FsmSource(a, labels, init, p, st.names);
}

FsmChannel channel_from_json(const json& j, Arith mode, std::vector<std::string>* warnings) {
  Alphabet in = alphabet_from_json(field(j, "in_alphabet"));
  Alphabet out = alphabet_from_json(field(j, "out_alphabet"));
  StateTable st = read_states(field(j, "states"), "q");
  const std::size_t nq = st.names.size();
  Vector init = read_vector(field(j, "init"), mode);
  if (init.size() != nq) throw ParseError("init has the wrong length");
  renormalize(init, "init", warnings);

  const std::size_t na = in.size(), nb = out.size();
  std::vector<Scalar> kernel(nq * na * nb * nq, mode == Arith::exact ? Scalar(0) : Scalar(0.0));
  const json& kj = field(j, "kernel");
  if (!kj.is_array()) throw ParseError("kernel must be an array");
  for (const auto& e : kj) {
    std::size_t q = st.at(field(e, "state"));
    Symbol a = symbol(in, field(e, "in"));
    Symbol b = symbol(out, field(e, "out"));
    std::size_t q2 = st.at(field(e, "next"));
    kernel[((q * na + a) * nb + b) * nq + q2] += scalar_from_json(field(e, "prob"), mode);
  }
  if (mode == Arith::floating) {
    for (std::size_t q = 0; q < nq; ++q) {
      for (Symbol a = 0; a < na; ++a) {
        auto first = kernel.begin() + static_cast<long>((q * na + a) * nb * nq);
        Vector row(first, first + static_cast<long>(nb * nq));
        renormalize(row, "kernel row (" + st.names[q] + ", " + in.token(a) + ")", warnings);
        std::copy(row.begin(), row.end(), first);
      }
    }
  }
  return FsmChannel(in, out, init, std::move(kernel), st.names);
}

Model model_from_json(const json& j, Arith mode, std::vector<std::string>* warnings) {
  std::string kind = text(field(j, "kind"), "kind");
  if (kind == "source") return source_from_json(j, mode, warnings);
  if (kind == "channel") return channel_from_json(j, mode, warnings);
  throw ParseError("kind must be 'source' or 'channel', got '" + kind + "'");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << dump(j);
}

}  // namespace ams::io
