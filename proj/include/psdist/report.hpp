#pragma once

#include <complex>
#include <ostream>
#include <string>

#include "json.hpp"

#include "psdist/expsums.hpp"
#include "psdist/gamma_engine.hpp"
#include "psdist/ps_primes.hpp"
#include "psdist/rational_approx.hpp"
#include "psdist/record_search.hpp"

namespace psdist {

/// Insertion-ordered so that serialized reports keep a fixed key order.
using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "psdist";
inline constexpr const char* kToolVersion = "1.0.0";

Json to_json(std::complex<double> z);
Json to_json(const ParamSet& p);
Json to_json(const GammaReport& r);
Json to_json(const EnvelopeAudit& audit);
Json to_json(const ExpSumReport& r);
Json to_json(const VaughanParts& v);
Json to_json(const PsCount& c);
Json to_json(const ConvergentList& list);
Json to_json(const DirichletApprox& d);
Json to_json(const SearchRecord& r);
Json to_json(const SearchSummary& s);

std::string to_string(CfTermination t);

/// Shortest round-trip decimal for a double ("nan"/"inf" spelled out).
std::string format_double(double x);

// CSV layouts. Column sets are fixed; see README.
//   records: p,n,dist,score,is_record
//   ladder:  N,gamma_sum,discrepancy_ratio,envelope,envelope_ratio
inline constexpr const char* kRecordCsvHeader = "p,n,dist,score,is_record";
inline constexpr const char* kLadderCsvHeader = "N,gamma_sum,discrepancy_ratio,envelope,envelope_ratio";

void write_record_csv(std::ostream& out, const SearchRecord& r);
void write_ladder_csv(std::ostream& out, const EnvelopeAudit& audit);

}  // namespace psdist
