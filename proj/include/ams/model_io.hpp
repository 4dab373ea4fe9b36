// JSON model files and report serialization.
//
// Exact probabilities are written as "num/den" strings; float ones as JSON
// numbers. On input every probability may be a "p/q" string, a decimal
// string, a JSON number or an object {"num": p, "den": q}.

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "ams/channel.hpp"

namespace ams::io {

using json = nlohmann::ordered_json;

/// Float models may miss normalization by this much; they are renormalized
/// and a warning is recorded.
inline constexpr double kNormalizationSlack = 1e-12;

json scalar_to_json(const Scalar& x);
Scalar scalar_from_json(const json& j, Arith mode);

json alphabet_to_json(const Alphabet& a);
Alphabet alphabet_from_json(const json& j);

json source_to_json(const FsmSource& src);
json channel_to_json(const FsmChannel& ch);
/// A composed source over A x B, with the factor alphabets recorded.
json joint_to_json(const JointSource& joint);
json table_to_json(const ConditionalKernelTable& t);

using Model = std::variant<FsmSource, FsmChannel>;

/// Throws ParseError on malformed documents and InvariantViolation when the
/// parsed numbers do not form a valid model. Warnings go to `warnings`.
Model model_from_json(const json& j, Arith mode, std::vector<std::string>* warnings = nullptr);
FsmSource source_from_json(const json& j, Arith mode, std::vector<std::string>* warnings = nullptr);
FsmChannel channel_from_json(const json& j, Arith mode,
                             std::vector<std::string>* warnings = nullptr);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);
/// Two-space indented document with a trailing newline.
std::string dump(const json& j);

}  // namespace ams::io
