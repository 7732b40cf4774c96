// omega-ideals: command-line front end to the omega library.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "omega/classify.hpp"
#include "omega/duality.hpp"
#include "omega/error.hpp"
#include "omega/json_io.hpp"
#include "omega/seqspace.hpp"
#include "omega/summability.hpp"

using namespace omega;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kUndecided = 3, kConstruction = 4 };

struct Options {
  std::string ideal, set, seq, matrix, pair, y, tall_ideal, nontall_ideal, v, exceed;
  std::string out;
  std::string N, rows, eps, recurrence;
  std::string M = "1";
  std::uint64_t steps = 20, depth = 64, count = 4, scan = 1000, n = 0;
  bool require_decision = false;
  bool paper_literal = false;
  bool dual = false;
};

Json load_json(const std::string& text, const std::string& what) {
  if (text.empty()) fail(ErrorKind::InvalidSpec, "missing --" + what);
  std::string body = text;
  if (text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) fail(ErrorKind::InvalidSpec, "cannot read " + text.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return Json::parse(body);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::InvalidSpec, "--" + what + ": " + e.what());
  }
}

HorizonParams params_of(const Options& o) {
  HorizonParams p;
  auto as_u64 = [](const std::string& s, const char* name) {
    try {
      std::size_t pos = 0;
      auto v = std::stoull(s, &pos);
      if (pos != s.size() || s[0] == '-') throw std::invalid_argument(s);
      return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidSpec, std::string("--") + name + " must be a nonnegative integer");
    }
  };
  if (!o.N.empty()) p.N = as_u64(o.N, "N");
  if (!o.rows.empty()) p.rows = as_u64(o.rows, "rows");
  if (!o.eps.empty()) p.eps = parse_rational(o.eps);
  if (!o.recurrence.empty()) p.recurrence = parse_rational(o.recurrence);
  p.validate();
  return p;
}

void write_csv(const std::string& path, const Trace& t) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) fail(ErrorKind::InvalidSpec, "cannot write " + path);
  out << "n,value\n";
  char buf[64];
  for (const auto& [n, v] : t) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << n << ',' << buf << '\n';
  }
}

void write_csv(const std::string& path, const ExactTrace& t) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) fail(ErrorKind::InvalidSpec, "cannot write " + path);
  out << "n,value\n";
  for (const auto& [n, v] : t) out << n << ',' << to_string(v) << '\n';
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

int emit_error(const std::string& error, const std::string& detail, int code) {
  emit(Json{{"error", error}, {"detail", detail}});
  return code;
}

int decided(const Options& o, bool is_decided) {
  return o.require_decision && !is_decided ? kUndecided : kOk;
}

// Subcommands. Each returns the exit code after emitting its document.

int cmd_member(const Options& o) {
  auto p = params_of(o);
  auto ideal = ideal_from_json(load_json(o.ideal, "ideal"));
  auto set = set_from_json(load_json(o.set, "set"));
  TriState t = o.dual ? dual_member(ideal, set, p) : member(ideal, set, p);
  write_csv(o.out, t.trace);
  emit(to_json(t));
  return decided(o, t.verdict != Verdict::Unknown);
}

int cmd_tall(const Options& o) {
  auto p = params_of(o);
  auto r = is_tall(ideal_from_json(load_json(o.ideal, "ideal")), p);
  write_csv(o.out, r.trace);
  emit(to_json(r));
  return decided(o, r.verdict != Tallness::Unknown);
}

int cmd_fk(const Options& o) {
  auto p = params_of(o);
  auto r = fk_classify(ideal_from_json(load_json(o.ideal, "ideal")), p, o.depth, o.steps);
  if (r.adversary) write_csv(o.out, r.adversary->S_trace);
  emit(to_json(r));
  return decided(o, r.verdict != FKClass::Undecided);
}

int cmd_density(const Options& o) {
  auto p = params_of(o);
  auto t = density_trace(ideal_from_json(load_json(o.ideal, "ideal")),
                         set_from_json(load_json(o.set, "set")), p.rows);
  write_csv(o.out, t);
  Json values = Json::array();
  for (const auto& [n, v] : t) values.push_back(Json::array({n, to_json(v)}));
  emit(Json{{"rows", p.rows}, {"values", values}});
  return kOk;
}

int cmd_witness_positive(const Options& o) {
  params_of(o);
  auto s = set_from_json(load_json(o.set, "set"));
  DualPair pr = positive_witness(s, o.depth);
  auto elems = pr.B.prefix(o.depth + 1);
  Json pairings = Json::array();
  bool growth = true;
  for (std::uint64_t n = 0; n <= o.depth; ++n) {
    Rational q = pair(elems[n], pr.y);
    growth &= q >= from_u64(n + 1);
    pairings.push_back(to_json(q));
  }
  Json j = {{"pair", to_json(pr)},
            {"depth", o.depth},
            {"last", to_json(elems.back())},
            {"pairings", pairings},
            {"growthOk", growth}};
  if (!o.v.empty()) {
    auto ideal = ideal_from_json(load_json(o.ideal, "ideal"));
    auto v = seq_from_json(load_json(o.v, "v"));
    auto a = set_from_json(load_json(o.exceed, "exceed"));
    j["boundedness"] = to_json(verify_boundedness(pr, v, ideal, parse_rational(o.M), a, o.depth));
  }
  emit(j);
  return kOk;
}

DualPair default_pair(const Options& o) {
  if (!o.pair.empty()) return pair_from_json(load_json(o.pair, "pair"));
  return {BFamily::diagonal(), Seq::constant(Rational(1))};
}

int cmd_witness_adversary(const Options& o) {
  auto p = params_of(o);
  auto ideal = ideal_from_json(load_json(o.ideal, "ideal"));
  auto tr = adversary_construct(ideal, default_pair(o), o.steps, p,
                                o.paper_literal ? RecursionMode::PaperLiteral : RecursionMode::Corrected);
  write_csv(o.out, tr.S_trace);
  emit(to_json(tr));
  return kOk;
}

int cmd_subfamily(const Options& o) {
  params_of(o);
  auto f = select_unbounded_subfamily(default_pair(o), o.count, o.scan);
  emit(to_json(f));
  return kOk;
}

int cmd_noninclusion(const Options& o) {
  auto p = params_of(o);
  auto r = noninclusion_witness(ideal_from_json(load_json(o.tall_ideal, "tall-ideal")),
                                ideal_from_json(load_json(o.nontall_ideal, "nontall-ideal")), p);
  emit(to_json(r));
  return decided(o, r.decided);
}

int cmd_matrix_check(const Options& o) {
  auto p = params_of(o);
  auto a = matrix_from_json(load_json(o.matrix, "matrix"));
  TriState reg = check_regularity(a, p);
  TriState pr = pringsheim_zero_estimate(a, p);
  write_csv(o.out, pr.trace);
  emit(Json{{"regularity", to_json(reg)}, {"pringsheim", to_json(pr)}});
  return decided(o, reg.verdict != Verdict::Unknown && pr.verdict != Verdict::Unknown);
}

int cmd_matrix_transform(const Options& o) {
  auto p = params_of(o);
  auto a = matrix_from_json(load_json(o.matrix, "matrix"));
  auto x = seq_from_json(load_json(o.seq, "seq"));
  auto y = transform_prefix(a, x, p.rows);
  Json values = Json::array();
  ExactTrace csv;
  for (std::uint64_t n = 0; n < y.size(); ++n) {
    values.push_back(to_json(y[n]));
    csv.emplace_back(n, y[n]);
  }
  write_csv(o.out, csv);
  Json j = {{"rows", p.rows}, {"values", values}};
  bool ok = true;
  if (!o.ideal.empty()) {
    auto m = cA_membership_estimate(a, ideal_from_json(load_json(o.ideal, "ideal")), x, p);
    j["cA"] = to_json(m);
    ok = m.result.verdict != Verdict::Unknown;
  }
  emit(j);
  return decided(o, ok);
}

int cmd_seminorm(const Options& o) {
  auto p = params_of(o);
  auto s = eval_seminorms(matrix_from_json(load_json(o.matrix, "matrix")),
                          seq_from_json(load_json(o.seq, "seq")), o.n, p);
  emit(to_json(s));
  return kOk;
}

int cmd_classify_indicator(const Options& o) {
  auto p = params_of(o);
  auto r = classify_indicator(ideal_from_json(load_json(o.ideal, "ideal")),
                              set_from_json(load_json(o.set, "set")), p);
  emit(to_json(r));
  return decided(o, r.verdict != IndicatorClass::Unknown);
}

int cmd_classify_space(const Options& o) {
  auto p = params_of(o);
  auto r = classify_space(ideal_from_json(load_json(o.ideal, "ideal")),
                          seq_from_json(load_json(o.seq, "seq")), p);
  emit(to_json(r));
  bool all = r.c00.verdict != Verdict::Unknown && r.c0.verdict != Verdict::Unknown &&
             r.c.verdict != Verdict::Unknown && r.linf.verdict != Verdict::Unknown;
  return decided(o, all);
}

int cmd_bk(const Options& o) {
  auto p = params_of(o);
  auto r = bk_counterexample(ideal_from_json(load_json(o.ideal, "ideal")),
                             seq_from_json(load_json(o.y, "y")), p);
  emit(to_json(r));
  return kOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSpec:
    case ErrorKind::UnsupportedFamily: return kInvalid;
    default: return kConstruction;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ideal convergence, tallness and duality witnesses on omega", "omega-ideals"};
  app.require_subcommand(1);
  Options o;
  std::function<int(const Options&)> action;

  struct Spec {
    const char* name;
    const char* help;
    int (*fn)(const Options&);
    std::vector<std::string> inputs;
  };
  const std::vector<Spec> specs = {
      {"member", "Decide membership of a set in an ideal", cmd_member, {"ideal", "set"}},
      {"tall", "Decide tallness of an ideal", cmd_tall, {"ideal"}},
      {"fk-classify", "Decide whether c00(I) admits a weaker FK topology", cmd_fk, {"ideal"}},
      {"density", "Exact functional trace of a set under an ideal", cmd_density, {"ideal", "set"}},
      {"witness-positive", "Positive-side witness pair (B, y)", cmd_witness_positive, {"set", "ideal", "v", "exceed"}},
      {"witness-adversary", "Adversary construction against a pair (B, y)", cmd_witness_adversary, {"ideal", "pair"}},
      {"subfamily", "Select x_0, x_1, ... in B with |x_j . y| >= 2^j", cmd_subfamily, {"pair"}},
      {"noninclusion", "Sequence in c00(I) outside linf(J)", cmd_noninclusion, {"tall-ideal", "nontall-ideal"}},
      {"matrix-check", "Regularity and Pringsheim-null checks", cmd_matrix_check, {"matrix"}},
      {"matrix-transform", "Transform prefix Ax, with c_A(I) membership when --ideal is given", cmd_matrix_transform, {"matrix", "seq", "ideal"}},
      {"seminorm", "Seminorms p_n and q_n", cmd_seminorm, {"matrix", "seq"}},
      {"classify-indicator", "Convergence of an indicator sequence", cmd_classify_indicator, {"ideal", "set"}},
      {"classify-space", "Membership in c00(I), c0(I), c(I), linf(I)", cmd_classify_space, {"ideal", "seq"}},
      {"bk-counterexample", "Sequence in c0(I) not dominated by y", cmd_bk, {"ideal", "y"}},
  };
  const std::map<std::string, std::string*> input_fields = {
      {"ideal", &o.ideal}, {"set", &o.set}, {"seq", &o.seq}, {"matrix", &o.matrix},
      {"pair", &o.pair}, {"y", &o.y}, {"tall-ideal", &o.tall_ideal},
      {"nontall-ideal", &o.nontall_ideal}, {"v", &o.v}, {"exceed", &o.exceed}};

  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    for (const auto& in : s.inputs)
      sub->add_option("--" + in, *input_fields.at(in), "JSON document, inline or @file");
    sub->add_option("--N", o.N, "index horizon");
    sub->add_option("--rows", o.rows, "trace length");
    sub->add_option("--eps", o.eps, "tolerance, p/q");
    sub->add_option("--recurrence", o.recurrence, "persistence fraction, p/q");
    sub->add_option("--out", o.out, "CSV trace output path");
    sub->add_flag("--require-decision", o.require_decision, "exit 3 on Unknown");
    std::string name = s.name;
    if (name == "member") sub->add_flag("--dual", o.dual, "decide the complement instead");
    if (name == "fk-classify" || name == "witness-adversary")
      sub->add_option("--steps", o.steps, "adversary steps");
    if (name == "fk-classify" || name == "witness-positive")
      sub->add_option("--depth", o.depth, "positive witness depth");
    if (name == "witness-positive") sub->add_option("--M", o.M, "level M for the boundedness check");
    if (name == "witness-adversary") sub->add_flag("--paper-literal", o.paper_literal, "use the displayed recursion");
    if (name == "subfamily") {
      sub->add_option("--count", o.count, "number of elements");
      sub->add_option("--scan", o.scan, "scan limit");
    }
    if (name == "seminorm") sub->add_option("--n", o.n, "row index");
    sub->callback([&action, fn = s.fn] { action = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error("UsageError", e.what(), kUsage);
  }

  try {
    return action(o);
  } catch (const Error& e) {
    return emit_error(std::string(to_string(e.kind())), e.what(), exit_code_for(e.kind()));
  } catch (const std::exception& e) {
    return emit_error("InternalError", e.what(), kConstruction);
  }
}
