#pragma once

#include <string>

#include "norbrack/hoermander.hpp"
#include "norbrack/oneform_span.hpp"

namespace norbrack {

/// [{"coeff": c, "a": [N reals], "b": [N reals]}, ...]
std::string decomposition_to_json(const ABDecomposition& decomposition);
ABDecomposition decomposition_from_json(const std::string& text);

/// {"n", "K", "m", "rank", "full", "sigma_min", "sigma_max", "rank_tol"}
std::string span_report_to_json(const SpanReport& report);

} // namespace norbrack
