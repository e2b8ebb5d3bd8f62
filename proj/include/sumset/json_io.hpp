#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sumset/conv.hpp"
#include "sumset/group.hpp"
#include "sumset/gset.hpp"
#include "sumset/search.hpp"
#include "sumset/structure.hpp"
#include "sumset/subgroup.hpp"
#include "sumset/verify.hpp"

namespace sumset {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Text specs shared by the CLI and the test drivers
// ---------------------------------------------------------------------------

/// Group descriptor: "12" (cyclic), "2x3x4" or "2,3,4" (direct product).
/// Throws InvalidSpecError on anything else.
std::vector<std::int64_t> parse_factor_list(const std::string& spec);

/// parse_factor_list + make_group.
GroupPtr parse_group_spec(const std::string& spec);

/// Exact rational: "3/4", "-1/6", or a plain integer "2". Throws
/// InvalidSpecError on malformed input or a zero denominator.
Rat parse_rational(const std::string& spec);

/// Set descriptor, three forms:
///   "1,3,5"          flat element indices;
///   "(0,1),(1,2)"    coordinate tuples, one entry per group factor;
///   "0x2a"           hex bitmask, bit i = element i (any length).
/// The empty string denotes the empty set. Throws InvalidSpecError on
/// malformed input or out-of-range elements.
GSet parse_set_spec(const GroupPtr& g, const std::string& spec);

// ---------------------------------------------------------------------------
// One-way JSON views (output only)
// ---------------------------------------------------------------------------

Json rational_json(const Rat& r);
Json gset_json(const GSet& s);
Json subgroup_json(const Subgroup& k);
Json certificate_json(const KneserCertificate& cert);
Json hom_json(const SubgroupHom& hom);
Json progression_json(const CyclicProgression& prog);
Json cover_json(const ProgressionCover& cover);
Json qp_decomposition_json(const QPDecomposition& dec);
Json classification_json(const ClassificationResult& result);
Json tame_report_json(const TamePairReport& report);
Json scan_row_json(const ScanRow& row);
Json delta_scan_json(const DeltaScanResult& result);
Json verify_report_json(const VerifyReport& report);
Json niveau_json(const NiveauReport& report);
Json semicontinuity_json(const SemicontinuityWitness& witness);
Json convolution_json(const ConvolutionTable& table);

} // namespace sumset
