#pragma once

#include <json.hpp>

#include "gbundle/bundle.hpp"
#include "gbundle/examples.hpp"
#include "gbundle/ricci.hpp"
#include "gbundle/symmetry.hpp"
#include "gbundle/walks.hpp"

namespace gbundle {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

// Big integers are written as decimal strings to stay exact.
Json to_json(const BigInt& value);
Json to_json(const Path& path);
Json to_json(const Permutation& p);
Json to_json(const ProjectionPair& p);
Json to_json(const TrivialityResult& r);
Json to_json(const SeparationReport& r);
Json to_json(const Frame& f);
Json to_json(const FrameCertificate& c);
Json to_json(const FourLoopCheck& c);
Json to_json(const AutomorphismGroup& g);
Json to_json(const LocallyAbelianReport& r);
Json to_json(const ExampleSpec& spec);
Json to_json(const ExpectedProperties& p);

// Missing keys stay unset. Throws Error(kParse) on wrong types.
ExpectedProperties expected_from_json(const Json& card);

}  // namespace gbundle
