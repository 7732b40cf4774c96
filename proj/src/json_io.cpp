#include "omega/json_io.hpp"

#include "omega/error.hpp"

namespace omega {

namespace {

[[noreturn]] void bad(const std::string& detail) { fail(ErrorKind::InvalidSpec, detail); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object with field \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
  return *it;
}

std::uint64_t u64(const Json& j, const std::string& what) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return j.get<std::uint64_t>();
  bad(what + " must be a nonnegative integer");
}

std::string str(const Json& j, const std::string& what) {
  if (!j.is_string()) bad(what + " must be a string");
  return j.get<std::string>();
}

std::string kind_of(const Json& j) { return str(field(j, "kind"), "kind"); }

std::vector<std::uint64_t> u64_list(const Json& j, const std::string& what) {
  if (!j.is_array()) bad(what + " must be an array");
  std::vector<std::uint64_t> out;
  for (const auto& e : j) out.push_back(u64(e, what + " entry"));
  return out;
}

std::vector<Rational> rational_list(const Json& j, const std::string& what) {
  if (!j.is_array()) bad(what + " must be an array");
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

Json rational_list_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_json(q));
  return out;
}

template <class T>
Json list_json(const std::vector<T>& v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(e);
  return out;
}

std::vector<SetExpr> set_list(const Json& j) {
  if (!j.is_array()) bad("set arguments must be an array");
  std::vector<SetExpr> out;
  for (const auto& e : j) out.push_back(set_from_json(e));
  return out;
}

WeightSpec weights_from_json(const Json& j) {
  WeightSpec f;
  std::string rule = str(field(j, "rule"), "weight rule");
  if (rule == "harmonic") f.tail = WeightSpec::Rule::Harmonic;
  else if (rule == "constant") f.tail = WeightSpec::Rule::Constant;
  else if (rule == "alternating") f.tail = WeightSpec::Rule::Alternating;
  else if (rule == "zeroAfter") f.tail = WeightSpec::Rule::ZeroAfter;
  else bad("unknown weight rule \"" + rule + "\"");
  if (f.tail == WeightSpec::Rule::Constant || f.tail == WeightSpec::Rule::Alternating)
    f.c = rational_from_json(field(j, "c"));
  if (j.contains("table")) f.table = rational_list(j["table"], "weight table");
  return f;
}

Json weights_json(const WeightSpec& f) {
  Json j = {{"rule", to_string(f.tail)}};
  if (f.tail == WeightSpec::Rule::Constant || f.tail == WeightSpec::Rule::Alternating)
    j["c"] = to_json(f.c);
  if (!f.table.empty()) j["table"] = rational_list_json(f.table);
  return j;
}

BlockSpec blocks_from_json(const Json& j) {
  BlockSpec b;
  std::string rule = str(field(j, "rule"), "block rule");
  if (rule == "linear") b.tail = BlockSpec::Rule::Linear;
  else if (rule == "constant") {
    b.tail = BlockSpec::Rule::Constant;
    b.L = u64(field(j, "L"), "L");
  } else bad("unknown block rule \"" + rule + "\"");
  if (j.contains("table")) b.table = u64_list(j["table"], "block table");
  return b;
}

Json blocks_json(const BlockSpec& b) {
  Json j = {{"rule", to_string(b.tail)}};
  if (b.tail == BlockSpec::Rule::Constant) j["L"] = b.L;
  if (!b.table.empty()) j["table"] = b.table;
  return j;
}

BlockSubmeasureSpec submeasure_from_json(const Json& j, BlockSpec blocks) {
  BlockSubmeasureSpec phi;
  phi.blocks = std::move(blocks);
  std::string kind = kind_of(j);
  if (kind == "normalizedCounting") {
    phi.kind = BlockSubmeasureSpec::Kind::NormalizedCounting;
    return phi;
  }
  if (kind == "weightedSum") phi.kind = BlockSubmeasureSpec::Kind::WeightedSum;
  else if (kind == "weightedMax") phi.kind = BlockSubmeasureSpec::Kind::WeightedMax;
  else bad("unknown submeasure kind \"" + kind + "\"");
  const Json& w = field(j, "weights");
  std::string rule = str(field(w, "rule"), "submeasure weight rule");
  if (rule == "inverseLength") phi.weight = BlockSubmeasureSpec::Weight::InverseLength;
  else if (rule == "constant") {
    phi.weight = BlockSubmeasureSpec::Weight::Constant;
    phi.c = rational_from_json(field(w, "c"));
  } else bad("unknown submeasure weight rule \"" + rule + "\"");
  return phi;
}

Json submeasure_json(const BlockSubmeasureSpec& phi) {
  Json j = {{"kind", to_string(phi.kind)}};
  if (phi.kind == BlockSubmeasureSpec::Kind::NormalizedCounting) return j;
  if (phi.weight == BlockSubmeasureSpec::Weight::InverseLength)
    j["weights"] = {{"rule", "inverseLength"}};
  else
    j["weights"] = {{"rule", "constant"}, {"c", to_json(phi.c)}};
  return j;
}

}  // namespace

// ---------------------------------------------------------------------------
// Inputs

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_unsigned()) return from_u64(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Rational(BigInt(std::to_string(j.get<std::int64_t>())));
  bad("rationals are encoded as \"p/q\" strings or integers");
}

SetExpr set_from_json(const Json& j) {
  std::string kind = kind_of(j);
  if (kind == "finite") return SetExpr::finite(u64_list(field(j, "elems"), "elems"));
  if (kind == "ap") return SetExpr::arith_prog(u64(field(j, "a"), "a"), u64(field(j, "d"), "d"));
  if (kind == "range") return SetExpr::range(u64(field(j, "lo"), "lo"), u64(field(j, "hi"), "hi"));
  if (kind == "sparse") {
    std::string rule = str(field(j, "rule"), "sparse rule");
    if (rule == "squares") return SetExpr::sparse(SparseRule::Squares);
    if (rule == "powersOfTwo") return SetExpr::sparse(SparseRule::PowersOfTwo);
    if (rule == "factorials") return SetExpr::sparse(SparseRule::Factorials);
    bad("unknown sparse rule \"" + rule + "\"");
  }
  if (kind == "nu2") {
    auto k = u64(field(j, "k"), "k");
    if (k > 62) bad("nu2 level must be <= 62");
    return SetExpr::nu2_level(static_cast<std::uint32_t>(k));
  }
  if (kind == "union") return SetExpr::set_union(set_list(field(j, "args")));
  if (kind == "intersect") return SetExpr::intersect(set_list(field(j, "args")));
  if (kind == "complement") return SetExpr::complement(set_from_json(field(j, "arg")));
  bad("unknown set kind \"" + kind + "\"");
}

MatrixSpec matrix_from_json(const Json& j) {
  std::string kind = kind_of(j);
  if (kind == "cesaro") return MatrixSpec::cesaro();
  if (kind == "identity") return MatrixSpec::identity();
  if (kind == "rows") {
    const Json& rows = field(j, "rows");
    if (!rows.is_array() || rows.empty()) bad("rows must be a nonempty array");
    std::vector<std::vector<Rational>> table;
    for (const auto& r : rows) table.push_back(rational_list(r, "matrix row"));
    std::string tail = j.contains("tail") ? str(j["tail"], "tail") : "repeatLast";
    if (tail == "repeatLast") return MatrixSpec::explicit_rows(std::move(table), MatrixSpec::Tail::RepeatLast);
    if (tail == "cesaroTail") return MatrixSpec::explicit_rows(std::move(table), MatrixSpec::Tail::CesaroTail);
    bad("unknown matrix tail \"" + tail + "\"");
  }
  bad("unknown matrix kind \"" + kind + "\"");
}

IdealSpec ideal_from_json(const Json& j) {
  std::string kind = kind_of(j);
  IdealSpec out = [&]() {
    if (kind == "fin") return IdealSpec::fin();
    if (kind == "densityZero") return IdealSpec::density_zero();
    if (kind == "matrix") return IdealSpec::matrix(matrix_from_json(field(j, "matrix")));
    if (kind == "summable") return IdealSpec::summable(weights_from_json(field(j, "f")));
    if (kind == "genDensity")
      return IdealSpec::gen_density(
          submeasure_from_json(field(j, "submeasure"), blocks_from_json(field(j, "blocks"))));
    if (kind == "lacunary") return IdealSpec::lacunary(blocks_from_json(field(j, "lengths")));
    if (kind == "fubiniEmptyFin") return IdealSpec::fubini_empty_fin();
    if (kind == "restriction")
      return IdealSpec::restriction(ideal_from_json(field(j, "base")), set_from_json(field(j, "set")));
    bad("unknown ideal kind \"" + kind + "\"");
  }();
  out.validate();
  return out;
}

SeqEntries entries_from_json(const Json& j) {
  if (!j.is_array()) bad("sequence entries must be an array of [index, value] pairs");
  SeqEntries out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) bad("sequence entry must be [index, value]");
    out.emplace_back(u64(e[0], "sequence index"), rational_from_json(e[1]));
  }
  return out;
}

Seq seq_from_json(const Json& j) {
  std::string kind = kind_of(j);
  if (kind == "finiteSupport") return Seq::finite_support(entries_from_json(field(j, "entries")));
  if (kind == "named") {
    std::string rule = str(field(j, "rule"), "named rule");
    if (rule == "constant") return Seq::constant(rational_from_json(field(j, "c")));
    if (rule == "unit") return Seq::unit(u64(field(j, "k"), "k"));
    if (rule == "powersOfTwo") return Seq::powers_of_two();
    if (rule == "identity") return Seq::identity();
    if (rule == "harmonic") return Seq::harmonic();
    bad("unknown named sequence \"" + rule + "\"");
  }
  if (kind == "overlay")
    return Seq::overlay(seq_from_json(field(j, "base")), entries_from_json(field(j, "patch")));
  if (kind == "masked") return Seq::masked(seq_from_json(field(j, "base")), set_from_json(field(j, "set")));
  if (kind == "scaled")
    return Seq::scaled(rational_from_json(field(j, "factor")), seq_from_json(field(j, "base")));
  bad("unknown sequence kind \"" + kind + "\"");
}

DualPair pair_from_json(const Json& j) {
  const Json& b = field(j, "B");
  Seq y = seq_from_json(field(j, "y"));
  std::string kind = kind_of(b);
  if (kind == "diagonal") {
    if (b.contains("scale") && str(b["scale"], "scale") != "2^n") bad("diagonal scale must be \"2^n\"");
    return {BFamily::diagonal(), y};
  }
  if (kind == "positiveWitness") return {BFamily::positive_witness(set_from_json(field(b, "set"))), y};
  if (kind == "explicit") {
    const Json& els = field(b, "elements");
    if (!els.is_array()) bad("elements must be an array");
    std::vector<SeqEntries> elements;
    for (const auto& e : els) elements.push_back(entries_from_json(e));
    return {BFamily::explicit_list(std::move(elements)), y};
  }
  bad("unknown B kind \"" + kind + "\"");
}

HorizonParams params_from_json(const Json& j) {
  HorizonParams p;
  if (j.contains("N")) p.N = u64(j["N"], "N");
  if (j.contains("rows")) p.rows = u64(j["rows"], "rows");
  if (j.contains("eps")) p.eps = rational_from_json(j["eps"]);
  if (j.contains("recurrence")) p.recurrence = rational_from_json(j["recurrence"]);
  p.validate();
  return p;
}

// ---------------------------------------------------------------------------
// Canonical encodings

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const SetExpr& s) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, set_node::Finite>) return {{"kind", "finite"}, {"elems", v.elems}};
        else if constexpr (std::is_same_v<T, set_node::Range>) return {{"kind", "range"}, {"lo", v.lo}, {"hi", v.hi}};
        else if constexpr (std::is_same_v<T, set_node::ArithProg>) return {{"kind", "ap"}, {"a", v.a}, {"d", v.d}};
        else if constexpr (std::is_same_v<T, set_node::Sparse>) return {{"kind", "sparse"}, {"rule", to_string(v.rule)}};
        else if constexpr (std::is_same_v<T, set_node::Nu2Level>) return {{"kind", "nu2"}, {"k", v.k}};
        else if constexpr (std::is_same_v<T, set_node::Complement>) return {{"kind", "complement"}, {"arg", to_json(*v.arg)}};
        else {
          Json args = Json::array();
          for (const auto& a : v.args) args.push_back(to_json(a));
          return {{"kind", std::is_same_v<T, set_node::Union> ? "union" : "intersect"}, {"args", args}};
        }
      },
      s.node());
}

Json to_json(const MatrixSpec& a) {
  switch (a.kind()) {
    case MatrixSpec::Kind::Cesaro: return {{"kind", "cesaro"}};
    case MatrixSpec::Kind::Identity: return {{"kind", "identity"}};
    case MatrixSpec::Kind::ExplicitRows: break;
  }
  Json rows = Json::array();
  for (const auto& r : a.rows()) rows.push_back(rational_list_json(r));
  return {{"kind", "rows"},
          {"rows", rows},
          {"tail", a.tail() == MatrixSpec::Tail::RepeatLast ? "repeatLast" : "cesaroTail"}};
}

Json to_json(const IdealSpec& ideal) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        using namespace ideal_node;
        if constexpr (std::is_same_v<T, Fin>) return {{"kind", "fin"}};
        else if constexpr (std::is_same_v<T, DensityZero>) return {{"kind", "densityZero"}};
        else if constexpr (std::is_same_v<T, Matrix>) return {{"kind", "matrix"}, {"matrix", to_json(v.a)}};
        else if constexpr (std::is_same_v<T, Summable>) return {{"kind", "summable"}, {"f", weights_json(v.f)}};
        else if constexpr (std::is_same_v<T, GenDensity>)
          return {{"kind", "genDensity"}, {"blocks", blocks_json(v.phi.blocks)}, {"submeasure", submeasure_json(v.phi)}};
        else if constexpr (std::is_same_v<T, Lacunary>) return {{"kind", "lacunary"}, {"lengths", blocks_json(v.theta)}};
        else if constexpr (std::is_same_v<T, FubiniEmptyFin>) return {{"kind", "fubiniEmptyFin"}};
        else return {{"kind", "restriction"}, {"base", to_json(*v.base)}, {"set", to_json(v.e)}};
      },
      ideal.node());
}

Json to_json(const SeqEntries& entries) {
  Json out = Json::array();
  for (const auto& [i, v] : entries) out.push_back(Json::array({i, to_json(v)}));
  return out;
}

Json to_json(const Seq& x) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        using namespace seq_node;
        if constexpr (std::is_same_v<T, FiniteSupport>) {
          return {{"kind", "finiteSupport"}, {"entries", to_json(v.entries)}};
        } else if constexpr (std::is_same_v<T, Named>) {
          switch (v.rule) {
            case NamedRule::Constant: return {{"kind", "named"}, {"rule", "constant"}, {"c", to_json(v.c)}};
            case NamedRule::Unit: return {{"kind", "named"}, {"rule", "unit"}, {"k", v.k}};
            case NamedRule::PowersOfTwo: return {{"kind", "named"}, {"rule", "powersOfTwo"}};
            case NamedRule::Identity: return {{"kind", "named"}, {"rule", "identity"}};
            case NamedRule::Harmonic: return {{"kind", "named"}, {"rule", "harmonic"}};
          }
          return {};
        } else if constexpr (std::is_same_v<T, Overlay>) {
          return {{"kind", "overlay"}, {"base", to_json(*v.base)}, {"patch", to_json(v.patch)}};
        } else if constexpr (std::is_same_v<T, Masked>) {
          return {{"kind", "masked"}, {"base", to_json(*v.base)}, {"set", to_json(v.set)}};
        } else {
          return {{"kind", "scaled"}, {"factor", to_json(v.factor)}, {"base", to_json(*v.base)}};
        }
      },
      x.node());
}

Json to_json(const DualPair& p) {
  Json b;
  switch (p.B.kind()) {
    case BFamily::Kind::Diagonal: b = {{"kind", "diagonal"}, {"scale", "2^n"}}; break;
    case BFamily::Kind::PositiveWitness: b = {{"kind", "positiveWitness"}, {"set", to_json(*p.B.set())}}; break;
    case BFamily::Kind::Explicit: {
      Json els = Json::array();
      for (const auto& e : p.B.elements()) els.push_back(to_json(e));
      b = {{"kind", "explicit"}, {"elements", els}};
      break;
    }
  }
  return {{"B", b}, {"y", to_json(p.y)}};
}

// ---------------------------------------------------------------------------
// Reports

Json trace_json(const Trace& t) {
  Json out = Json::array();
  for (const auto& [n, v] : t) out.push_back(Json::array({n, v}));
  return out;
}

Json to_json(const TriState& t, bool with_trace) {
  Json j = {{"verdict", to_string(t.verdict)}, {"certificate", t.certificate}};
  if (with_trace) j["trace"] = trace_json(t.trace);
  return j;
}

Json to_json(const TallnessReport& r, bool with_trace) {
  Json j = {{"verdict", to_string(r.verdict)}, {"criterion", r.criterion}};
  if (r.witness) j["witness"] = to_json(*r.witness);
  if (r.delta) j["delta"] = to_json(*r.delta);
  if (with_trace) j["trace"] = trace_json(r.trace);
  return j;
}

Json to_json(const TallSubset& w, bool with_trace) {
  Json j = {{"elems", w.elems}, {"rule", w.rule}, {"certificate", w.certificate}};
  if (with_trace) j["trace"] = trace_json(w.trace);
  return j;
}

namespace {
Json flag_json(const SpaceFlag& f) {
  return {{"verdict", to_string(f.verdict)}, {"certificate", f.certificate}};
}
}  // namespace

Json to_json(const SpaceReport& r) {
  Json j = {{"c00", flag_json(r.c00)}, {"c0", flag_json(r.c0)}, {"c", flag_json(r.c)},
            {"linf", flag_json(r.linf)}};
  if (r.limit) j["limit"] = to_json(*r.limit);
  if (r.bound) j["bound"] = to_json(*r.bound);
  return j;
}

Json to_json(const IndicatorReport& r) {
  Json j = {{"verdict", to_string(r.verdict)}, {"certificate", r.certificate}};
  if (r.limit) j["limit"] = to_json(*r.limit);
  return j;
}

Json to_json(const TransformMembership& r, bool with_trace) {
  Json j = to_json(r.result, with_trace);
  if (r.limit) j["limit"] = to_json(*r.limit);
  if (r.candidate) j["candidate"] = to_json(*r.candidate);
  return j;
}

Json to_json(const Seminorms& s) {
  return {{"p", to_json(s.p)}, {"q", to_json(s.q)}, {"stabilized", s.stabilized}};
}

Json to_json(const BoundednessReport& r) {
  return {{"passed", r.passed},
          {"bound", to_json(r.bound)},
          {"maxPairing", to_json(r.max_pairing)},
          {"F", r.F},
          {"declaredSet", to_string(r.declared_set)}};
}

Json to_json(const Subfamily& f) {
  Json els = Json::array();
  for (const auto& e : f.elements) els.push_back(to_json(e));
  return {{"indices", f.indices}, {"elements", els}};
}

Json to_json(const AdversaryTrace& t, bool with_trace) {
  Json j = {{"recursion", to_string(t.mode)},
            {"scan", t.scan},
            {"m", t.m},
            {"s", t.s},
            {"k", t.k},
            {"sTilde", t.s_tilde},
            {"repaired", list_json(std::vector<bool>(t.repaired.begin(), t.repaired.end()))},
            {"t", t.t},
            {"kappa", rational_list_json(t.kappa)},
            {"S", t.S},
            {"SRule", t.S_rule},
            {"SCertificate", t.S_certificate},
            {"v", to_json(t.v)},
            {"pairings", rational_list_json(t.pairings)}};
  if (t.first_case) j["firstCase"] = *t.first_case;
  if (with_trace) j["STrace"] = trace_json(t.S_trace);
  return j;
}

Json to_json(const BKCounterexample& r) {
  Json refs = Json::array();
  for (const auto& d : r.refutations)
    refs.push_back({{"C", to_json(d.C)}, {"n", d.n}, {"x", to_json(d.x_value)}, {"bound", to_json(d.bound)}});
  Json j = {{"x", to_json(r.x)},
            {"SPrefix", r.S_prefix},
            {"support", to_json(r.support)},
            {"ratioExact", r.ratio_exact},
            {"refutations", refs}};
  if (r.S) j["S"] = to_json(*r.S);
  return j;
}

Json to_json(const FKReport& r, bool with_trace) {
  Json j = {{"verdict", to_string(r.verdict)}, {"criterion", r.criterion}};
  if (r.witness_set) {
    j["witness"] = to_json(*r.witness_set);
    j["positivePairings"] = rational_list_json(r.positive_pairings);
    j["growthOk"] = r.growth_ok;
  }
  if (r.adversary) j["adversary"] = to_json(*r.adversary, with_trace);
  return j;
}

Json to_json(const NoninclusionReport& r) {
  Json ladder = Json::array();
  for (const auto& e : r.ladder)
    ladder.push_back({{"M", to_json(e.M)}, {"excluded", e.excluded}, {"certified", e.certified}});
  return {{"x", to_json(r.x)},
          {"S", to_json(r.S)},
          {"SPrime", to_json(r.S_prime)},
          {"supportInI", to_json(r.support_in_I)},
          {"SPrimeInJ", to_json(r.S_prime_in_J)},
          {"ladder", ladder},
          {"decided", r.decided}};
}

}  // namespace omega
