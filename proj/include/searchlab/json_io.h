#pragma once

#include <json.hpp>

#include "searchlab/coverage.h"
#include "searchlab/encodings.h"
#include "searchlab/invariance.h"
#include "searchlab/reconstruct.h"
#include "searchlab/samplers.h"
#include "searchlab/wl.h"

namespace searchlab {

using Json = nlohmann::ordered_json;

Json to_json(const SampleSet &set);
SampleSet sample_set_from_json(const Json &j);

// {"shape": [rows, cols], "data": [[...], ...]} in row-major order.
Json to_json(const BinaryMatrix &m);
Json to_json(const PosEncoding &pe);

Json to_json(const BoundResult &bound);
Json to_json(const Verdict &verdict);
Json to_json(const ReconstructionReport &report);
Json to_json(const CoverTimeReport &report);
Json to_json(const EdgeInclusion &inclusion);

// Blocks as sorted node lists.
Json to_json(const Partition &partition);

}  // namespace searchlab
