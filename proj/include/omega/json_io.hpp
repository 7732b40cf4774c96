#pragma once

#include <json.hpp>

#include "omega/classify.hpp"
#include "omega/duality.hpp"
#include "omega/ideals.hpp"
#include "omega/matrix.hpp"
#include "omega/seq.hpp"
#include "omega/seqspace.hpp"
#include "omega/setexpr.hpp"
#include "omega/summability.hpp"

namespace omega {

using Json = nlohmann::json;

// Inputs. Malformed documents raise InvalidSpec.
Rational rational_from_json(const Json& j);
SetExpr set_from_json(const Json& j);
MatrixSpec matrix_from_json(const Json& j);
IdealSpec ideal_from_json(const Json& j);
Seq seq_from_json(const Json& j);
SeqEntries entries_from_json(const Json& j);
DualPair pair_from_json(const Json& j);
HorizonParams params_from_json(const Json& j);

// Canonical encodings; rationals are "p/q" strings in lowest terms.
Json to_json(const Rational& q);
Json to_json(const SetExpr& s);
Json to_json(const MatrixSpec& a);
Json to_json(const IdealSpec& ideal);
Json to_json(const Seq& x);
Json to_json(const SeqEntries& entries);
Json to_json(const DualPair& p);

Json trace_json(const Trace& t);

// Reports. Traces are included only when with_trace is set.
Json to_json(const TriState& t, bool with_trace = false);
Json to_json(const TallnessReport& r, bool with_trace = false);
Json to_json(const TallSubset& w, bool with_trace = false);
Json to_json(const SpaceReport& r);
Json to_json(const IndicatorReport& r);
Json to_json(const TransformMembership& r, bool with_trace = false);
Json to_json(const Seminorms& s);
Json to_json(const BoundednessReport& r);
Json to_json(const Subfamily& f);
Json to_json(const AdversaryTrace& t, bool with_trace = false);
Json to_json(const BKCounterexample& r);
Json to_json(const FKReport& r, bool with_trace = false);
Json to_json(const NoninclusionReport& r);

}  // namespace omega
